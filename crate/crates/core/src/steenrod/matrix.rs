//! Square matrices over `F_p` and the finite groups they generate.

use std::collections::{BTreeSet, VecDeque};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::check_prime;
use crate::linalg::mod_inverse;

/// Largest matrix group enumerated by [`MatrixGroup::generate`].
pub const MAX_MATRIX_GROUP_ORDER: usize = 100_000;

/// Row `i` holds the image of the `i`-th generator: `x_i ↦ Σ_j w[i][j] x_j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FpMatrix {
    p: u32,
    n: usize,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn new(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        check_prime(p)?;
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("matrix must be square and nonempty".into()));
        }
        let entries = rows.iter().flatten().map(|&x| x.rem_euclid(p as i64) as u32).collect();
        Ok(FpMatrix { p, n, entries })
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        FpMatrix { p, n, entries }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (n, p) = (self.n, self.p as u64);
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: u64 = (0..n).map(|k| self.get(i, k) as u64 * other.get(k, j) as u64).sum();
                entries[i * n + j] = (s % p) as u32;
            }
        }
        FpMatrix { p: self.p, n, entries }
    }

    pub fn determinant(&self) -> u32 {
        let p = self.p as u64;
        let n = self.n;
        let mut m: Vec<Vec<u64>> = self.rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect();
        let mut det = 1u64;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
            if r != c {
                m.swap(r, c);
                det = (p - det) % p;
            }
            det = det * m[c][c] % p;
            let inv = mod_inverse(m[c][c], p).unwrap();
            for r in c + 1..n {
                let f = m[r][c] * inv % p;
                for k in c..n {
                    m[r][k] = (m[r][k] + p * p - f * m[c][k] % p) % p;
                }
            }
        }
        det as u32
    }

    pub fn is_invertible(&self) -> bool {
        self.determinant() != 0
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.p, self.n)
    }

    /// Multiplicative order; `None` for singular matrices.
    pub fn order(&self) -> Option<usize> {
        if !self.is_invertible() {
            return None;
        }
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
        }
        Some(k)
    }

    /// Characteristic polynomial `det(t·I − w)`, coefficients from the leading
    /// term down, by the division-free Berkowitz recursion.
    pub fn characteristic_polynomial(&self) -> Vec<u32> {
        let p = self.p as u64;
        let n = self.n;
        let a = |i: usize, j: usize| self.get(i, j) as u64;
        let mut poly: Vec<u64> = vec![1];
        for k in (0..n).rev() {
            // Block [[a_kk, R], [C, A1]] with A1 the trailing principal minor.
            let m = n - k;
            let rest: Vec<usize> = (k + 1..n).collect();
            let mut column = vec![1u64, (p - a(k, k)) % p];
            let mut v: Vec<u64> = rest.iter().map(|&i| a(i, k)).collect();
            for _ in 0..m.saturating_sub(1) {
                let rv: u64 = rest.iter().zip(&v).map(|(&j, &x)| a(k, j) * x % p).sum::<u64>() % p;
                column.push((p - rv) % p);
                v = rest.iter().map(|&i| rest.iter().zip(&v).map(|(&j, &x)| a(i, j) * x % p).sum::<u64>() % p).collect();
            }
            let mut next = vec![0u64; m + 1];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, &c) in poly.iter().enumerate() {
                    if i >= j && i - j < column.len() {
                        *slot = (*slot + column[i - j] * c) % p;
                    }
                }
            }
            poly = next;
        }
        poly.into_iter().map(|c| c as u32).collect()
    }

    pub fn to_json(&self) -> Value {
        json!(self.rows())
    }
}

/// A finite subgroup of `GL(n, p)` given by generators, with its elements
/// enumerated in breadth-first order from the identity.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    p: u32,
    n: usize,
    generators: Vec<FpMatrix>,
    elements: Vec<FpMatrix>,
}

impl MatrixGroup {
    pub fn generate(p: u32, n: usize, generators: Vec<FpMatrix>) -> Result<Self> {
        check_prime(p)?;
        for g in &generators {
            if g.p != p || g.n != n {
                return Err(Error::InvalidMatrix(format!("expected {n}×{n} matrices over F_{p}")));
            }
            if !g.is_invertible() {
                return Err(Error::SingularMatrix);
            }
        }
        let id = FpMatrix::identity(p, n);
        let mut seen: BTreeSet<FpMatrix> = BTreeSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_MATRIX_GROUP_ORDER {
                        return Err(Error::OrderBoundExceeded { bound: MAX_MATRIX_GROUP_ORDER });
                    }
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(MatrixGroup { p, n, generators, elements })
    }

    pub fn trivial(p: u32, n: usize) -> Result<Self> {
        Self::generate(p, n, Vec::new())
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[FpMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[FpMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements
            .iter()
            .map(|g| g.order().expect("group elements are invertible"))
            .fold(1, num_integer::lcm)
    }

    /// Errors unless `|W|` is invertible in `F_p`.
    pub fn check_coprime(&self) -> Result<()> {
        if self.order().is_multiple_of(self.p as usize) {
            return Err(Error::PrimeDividesOrder { p: self.p, order: self.order() });
        }
        Ok(())
    }

    /// Matrices separated by blank lines; rows of whitespace-separated
    /// integers; `#` starts a comment.
    pub fn parse(p: u32, text: &str) -> Result<Self> {
        let mut blocks: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                if !blocks.last().unwrap().is_empty() {
                    blocks.push(Vec::new());
                }
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| Error::InvalidMatrix(format!("bad entry {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            blocks.last_mut().unwrap().push(row);
        }
        blocks.retain(|b| !b.is_empty());
        let mats = blocks.iter().map(|b| FpMatrix::new(p, b)).collect::<Result<Vec<_>>>()?;
        let n = mats.first().map(FpMatrix::size).ok_or_else(|| Error::InvalidMatrix("no matrices".into()))?;
        Self::generate(p, n, mats)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "prime": self.p,
            "rank": self.n,
            "order": self.order(),
            "generators": self.generators.iter().map(FpMatrix::to_json).collect::<Vec<_>>(),
        })
    }
}
