//! Exact linear algebra over `Z/ℓ^a`, `F_p` and `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Modular inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// The chain ring `Z/ℓ^a`.
#[derive(Debug, Clone, Copy)]
pub struct ChainRing {
    pub prime: u64,
    pub exponent: u32,
    pub modulus: u64,
}

impl ChainRing {
    pub fn new(prime: u64, exponent: u32) -> Self {
        ChainRing { prime, exponent, modulus: prime.pow(exponent) }
    }

    pub fn valuation(&self, x: u64) -> u32 {
        let mut x = x % self.modulus;
        if x == 0 {
            return self.exponent;
        }
        let mut v = 0;
        while x.is_multiple_of(self.prime) {
            x /= self.prime;
            v += 1;
        }
        v
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    fn sub_mul(&self, a: u64, c: u64, b: u64) -> u64 {
        // a - c*b
        let cb = self.mul(c, b);
        (a + self.modulus - cb) % self.modulus
    }

    /// Diagonalizes `rows` (m × n) in place by row and column operations.
    ///
    /// Returns pivot valuations in pivot order and, when `track` is set, the
    /// n × n column transform `Q` (as columns) with `rows_orig · Q = P⁻¹ · D`.
    fn diagonalize(&self, rows: &mut [Vec<u64>], ncols: usize, track: bool) -> (Vec<u32>, Vec<Vec<u64>>) {
        let m = rows.len();
        let mut q_cols: Vec<Vec<u64>> = if track {
            (0..ncols).map(|j| (0..ncols).map(|i| u64::from(i == j)).collect()).collect()
        } else {
            Vec::new()
        };
        let mut vals = Vec::new();
        let mut t = 0;
        while t < m.min(ncols) {
            // pivot of least valuation in the remaining block
            let mut best: Option<(u32, usize, usize)> = None;
            'scan: for (i, row) in rows.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let v = self.valuation(x);
                        if best.is_none_or(|(bv, _, _)| v < bv) {
                            best = Some((v, i, j));
                            if v == 0 {
                                break 'scan;
                            }
                        }
                    }
                }
            }
            let Some((s, pi, pj)) = best else { break };
            rows.swap(t, pi);
            if pj != t {
                for row in rows.iter_mut() {
                    row.swap(t, pj);
                }
                if track {
                    q_cols.swap(t, pj);
                }
            }
            let ls = self.prime.pow(s);
            // normalize pivot to ℓ^s
            let unit = rows[t][t] / ls;
            let uinv = mod_inverse(unit % self.modulus, self.modulus).expect("unit part invertible");
            for x in rows[t].iter_mut() {
                *x = self.mul(*x, uinv);
            }
            let pivot_row = rows[t].clone();
            for row in rows.iter_mut().skip(t + 1) {
                let e = row[t];
                if e != 0 {
                    let c = e / ls;
                    for (x, &p) in row.iter_mut().zip(&pivot_row).skip(t) {
                        *x = self.sub_mul(*x, c, p);
                    }
                }
            }
            for j in t + 1..ncols {
                let e = rows[t][j];
                if e != 0 {
                    let c = e / ls;
                    rows[t][j] = 0;
                    if track {
                        let (left, right) = q_cols.split_at_mut(j);
                        let qt = &left[t];
                        for (x, &y) in right[0].iter_mut().zip(qt) {
                            *x = self.sub_mul(*x, c, y);
                        }
                    }
                }
            }
            vals.push(s);
            t += 1;
        }
        (vals, q_cols)
    }

    /// `log_ℓ` of the size of the submodule spanned by `gens` in `(Z/ℓ^a)^n`.
    pub fn span_log_size(&self, gens: &[Vec<u64>], n: usize) -> u32 {
        if gens.is_empty() {
            return 0;
        }
        let mut rows = gens.to_vec();
        let (vals, _) = self.diagonalize(&mut rows, n, false);
        vals.iter().map(|&s| self.exponent - s).sum()
    }

    /// Generators of `{ x : A x = 0 }` for `A` given by `rows` (m × n).
    pub fn kernel_generators(&self, rows: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
        let mut work = rows.to_vec();
        let (vals, q) = self.diagonalize(&mut work, n, true);
        let mut gens = Vec::new();
        for (t, col) in q.into_iter().enumerate() {
            let scale = match vals.get(t) {
                Some(&0) => continue,
                Some(&s) => self.prime.pow(self.exponent - s),
                None => 1,
            };
            gens.push(col.into_iter().map(|x| self.mul(x, scale)).collect());
        }
        gens
    }
}

/// Reduced row echelon form over `F_p`; returns pivot columns.
pub fn rref_mod_p(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else { continue };
        rows.swap(r, pr);
        let inv = mod_inverse(rows[r][c], p).unwrap();
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&prow) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{ x : A x = 0 }` over `F_p`, in canonical (RREF-derived) form.
pub fn nullspace_mod_p(rows: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let pivots = rref_mod_p(&mut m, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f] % p) % p;
            }
            v
        })
        .collect()
}

/// Rank over `F_p`.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    rref_mod_p(&mut m, p).len()
}

/// Affine solution set `x0 + span(basis)` of `A x = b` over `Q`, or `None`
/// if inconsistent.
pub fn solve_affine_q(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    n: usize,
) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let mut rows: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x0 = vec![BigRational::zero(); n];
    for (i, &pc) in pivots.iter().enumerate() {
        x0[pc] = rows[i][n].clone();
    }
    let basis = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][f].clone();
            }
            v
        })
        .collect();
    Some((x0, basis))
}

/// Rank over `Q`.
pub fn rank_q(rows: &[Vec<BigRational>]) -> usize {
    let n = rows.first().map_or(0, Vec::len);
    let zeros = vec![BigRational::zero(); rows.len()];
    match solve_affine_q(rows, &zeros, n) {
        Some((_, basis)) => n - basis.len(),
        None => unreachable!("homogeneous systems are consistent"),
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
