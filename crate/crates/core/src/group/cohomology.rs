//! Low-degree cohomology `H^k(W; M)` from inhomogeneous bar cochains.
//!
//! Cochains of degree k are functions `W^k → M`. The complex is localized at
//! each prime dividing the exponent of `M` and the subquotient
//! `ker δ^k / im δ^{k-1}` is measured over the chain ring `Z/ℓ^a`.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use super::{Elem, Group, GroupHom};
use crate::error::{Error, Result};
use crate::linalg::ChainRing;

/// Bound on `|W|^(k+1) · rank(M)`, the row count of the largest coboundary matrix.
pub const COCHAIN_BOUND: usize = 5000;

/// A finite abelian group in invariant-factor form `Z/d_1 ⊕ … ⊕ Z/d_r`
/// with `d_1 | d_2 | … | d_r` and every `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants(pub Vec<u64>);

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    /// From prime-power cyclic factors, grouped by prime.
    fn from_primary(parts: &BTreeMap<u64, Vec<u64>>) -> Self {
        let mut lists: Vec<Vec<u64>> = parts
            .values()
            .map(|v| {
                let mut v = v.clone();
                v.sort_unstable_by(|a, b| b.cmp(a));
                v
            })
            .collect();
        let len = lists.iter().map(Vec::len).max().unwrap_or(0);
        let mut out: Vec<u64> = (0..len)
            .map(|i| lists.iter_mut().map(|l| l.get(i).copied().unwrap_or(1)).product())
            .collect();
        out.reverse();
        AbelianInvariants(out)
    }
}

/// A finite abelian group `⊕ Z/n_i` with a left action of `W` by matrices.
#[derive(Debug, Clone)]
pub struct GModule {
    group: Arc<Group>,
    carrier: Vec<u64>,
    /// Action matrix of every element of `group`, indexed by element.
    matrices: Vec<Vec<Vec<i64>>>,
}

impl GModule {
    /// `action[k]` is the matrix of `group.generators()[k]`; entry `(i, j)`
    /// is the image of the j-th basis vector in coordinate i.
    pub fn new(group: Arc<Group>, carrier: Vec<u64>, action: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let r = carrier.len();
        if carrier.iter().any(|&n| n < 2) {
            return Err(Error::InvalidModule("cyclic factors must have order ≥ 2".into()));
        }
        if action.len() != group.generators().len() {
            return Err(Error::InvalidModule("one matrix per generator required".into()));
        }
        for m in &action {
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(Error::InvalidModule("matrix shape does not match carrier".into()));
            }
            for i in 0..r {
                for j in 0..r {
                    if (m[i][j] * carrier[j] as i64).rem_euclid(carrier[i] as i64) != 0 {
                        return Err(Error::InvalidModule(format!(
                            "entry ({i},{j}) is not a homomorphism Z/{} → Z/{}",
                            carrier[j], carrier[i]
                        )));
                    }
                }
            }
        }
        let reduce = |m: Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            m.into_iter()
                .enumerate()
                .map(|(i, row)| row.into_iter().map(|x| x.rem_euclid(carrier[i] as i64)).collect())
                .collect()
        };
        let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| (0..r).map(|k| a[i][k] * b[k][j]).sum::<i64>().rem_euclid(carrier[i] as i64))
                        .collect()
                })
                .collect()
        };
        let identity: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let gens: Vec<Elem> =
            group.generators().iter().map(|g| group.index_of(g).expect("generator")).collect();
        let action: Vec<Vec<Vec<i64>>> = action.into_iter().map(reduce).collect();
        let mut matrices: Vec<Option<Vec<Vec<i64>>>> = vec![None; group.order()];
        matrices[0] = Some(identity);
        let mut queue = VecDeque::from([Group::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            let mx = matrices[x as usize].clone().unwrap();
            for (&g, a) in gens.iter().zip(&action) {
                let y = group.mul(g, x);
                let my = mul(a, &mx);
                match &matrices[y as usize] {
                    None => {
                        matrices[y as usize] = Some(my);
                        queue.push_back(y);
                    }
                    Some(prev) if *prev != my => {
                        return Err(Error::InvalidModule("action does not respect group relations".into()))
                    }
                    Some(_) => {}
                }
            }
        }
        let matrices: Vec<Vec<Vec<i64>>> = matrices.into_iter().map(|m| m.unwrap()).collect();
        let module = GModule { group, carrier, matrices };
        if !module.acts_bijectively() {
            return Err(Error::InvalidModule("an action matrix is not invertible".into()));
        }
        Ok(module)
    }

    /// `M` with trivial `W`-action.
    pub fn trivial(group: Arc<Group>, carrier: Vec<u64>) -> Result<Self> {
        let r = carrier.len();
        let id: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let action = vec![id; group.generators().len()];
        Self::new(group, carrier, action)
    }

    /// The abelian group `S` with `W ≤ Aut(S)` acting naturally.
    ///
    /// `w` must be closed under composition; the acting group is `W` as a
    /// permutation group on the elements of `S`.
    pub fn from_automorphisms(w: &[GroupHom], s: &Arc<Group>) -> Result<Self> {
        if !s.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let w_group = super::auto::aut_set_group(s, w)?;
        let (basis, orders, coords) = abelian_basis(s);
        let action = w_group
            .generators()
            .iter()
            .map(|perm| {
                let r = basis.len();
                let mut m = vec![vec![0i64; r]; r];
                for (j, &b) in basis.iter().enumerate() {
                    let image = perm.apply(b as usize);
                    for (i, &c) in coords[image].iter().enumerate() {
                        m[i][j] = c as i64;
                    }
                }
                m
            })
            .collect();
        Self::new(w_group, orders, action)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn carrier(&self) -> &[u64] {
        &self.carrier
    }

    pub fn carrier_order(&self) -> u64 {
        self.carrier.iter().product()
    }

    pub fn matrix(&self, w: Elem) -> &Vec<Vec<i64>> {
        &self.matrices[w as usize]
    }

    fn apply(&self, w: Elem, v: &[u64]) -> Vec<u64> {
        let m = &self.matrices[w as usize];
        (0..self.carrier.len())
            .map(|i| {
                let s: i64 = (0..v.len()).map(|j| m[i][j] * v[j] as i64).sum();
                s.rem_euclid(self.carrier[i] as i64) as u64
            })
            .collect()
    }

    fn acts_bijectively(&self) -> bool {
        let total = self.carrier_order();
        if total > 1 << 20 {
            return true;
        }
        let all: Vec<Vec<u64>> = enumerate_vectors(&self.carrier);
        self.group.generators().iter().all(|g| {
            let g = self.group.index_of(g).unwrap();
            let mut images: Vec<Vec<u64>> = all.iter().map(|v| self.apply(g, v)).collect();
            images.sort();
            images.dedup();
            images.len() as u64 == total
        })
    }

    /// Fixed points `M^W`, by enumeration.
    pub fn fixed_point_count(&self) -> u64 {
        enumerate_vectors(&self.carrier)
            .iter()
            .filter(|v| (0..self.group.order() as Elem).all(|w| self.apply(w, v) == **v))
            .count() as u64
    }
}

fn enumerate_vectors(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &n in orders {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..n).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// A basis of the abelian group `s`: generators, their orders, and the
/// coordinate vector of every element.
pub(crate) fn abelian_basis(s: &Arc<Group>) -> (Vec<Elem>, Vec<u64>, Vec<Vec<u64>>) {
    let n = s.order();
    let mut by_order: Vec<Elem> = (1..n as Elem).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(s.element_order(x)), x));

    fn search(s: &Group, cands: &[Elem], chosen: &mut Vec<Elem>, span: Vec<Elem>) -> bool {
        if span.len() == s.order() {
            return true;
        }
        for &x in cands {
            if span.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = chosen.clone();
            gens.push(x);
            let next = s.generate(&gens);
            if next.len() == span.len() * s.element_order(x) {
                chosen.push(x);
                if search(s, cands, chosen, next) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    let mut basis = Vec::new();
    let found = search(s, &by_order, &mut basis, vec![Group::IDENTITY]);
    debug_assert!(found);
    let orders: Vec<u64> = basis.iter().map(|&b| s.element_order(b) as u64).collect();
    let mut coords = vec![Vec::new(); n];
    for v in enumerate_vectors(&orders) {
        let mut x = Group::IDENTITY;
        for (&b, &k) in basis.iter().zip(&v) {
            for _ in 0..k {
                x = s.mul(x, b);
            }
        }
        coords[x as usize] = v;
    }
    (basis, orders, coords)
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn v_l(mut n: u64, l: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(l) {
        n /= l;
        v += 1;
    }
    v
}

/// Integer coboundary `δ^k` as sparse rows over coordinates `(tuple, i)`.
///
/// Row `(g_1..g_{k+1}, i)` of `δf` is
/// `g_1·f(g_2..) + Σ_s (-1)^s f(.., g_s g_{s+1}, ..) + (-1)^{k+1} f(g_1..g_k)`.
fn coboundary(m: &GModule, k: usize) -> Vec<Vec<(usize, i64)>> {
    let w = m.group.order();
    let r = m.carrier.len();
    let rows_tuples = w.pow(k as u32 + 1);
    let mut rows = Vec::with_capacity(rows_tuples * r);
    let mut tuple = vec![0 as Elem; k + 1];
    for t in 0..rows_tuples {
        let mut x = t;
        for slot in tuple.iter_mut().rev() {
            *slot = (x % w) as Elem;
            x /= w;
        }
        let encode = |v: &[Elem]| v.iter().fold(0usize, |acc, &g| acc * w + g as usize);
        let tail = encode(&tuple[1..]);
        let head = encode(&tuple[..k]);
        let merged: Vec<usize> = (0..k)
            .map(|s| {
                let mut v: Vec<Elem> = tuple.clone();
                let prod = m.group.mul(v[s], v[s + 1]);
                v.splice(s..s + 2, [prod]);
                encode(&v)
            })
            .collect();
        let a = m.matrix(tuple[0]);
        for i in 0..r {
            let mut row: BTreeMap<usize, i64> = BTreeMap::new();
            for (j, &aij) in a[i].iter().enumerate() {
                *row.entry(tail * r + j).or_default() += aij;
            }
            for (s, &mi) in merged.iter().enumerate() {
                let sign = if (s + 1) % 2 == 0 { 1 } else { -1 };
                *row.entry(mi * r + i).or_default() += sign;
            }
            let sign = if (k + 1).is_multiple_of(2) { 1 } else { -1 };
            *row.entry(head * r + i).or_default() += sign;
            rows.push(row.into_iter().filter(|&(_, v)| v != 0).collect());
        }
    }
    rows
}

/// `H^k(W; M)` for `k ≤ 3`, in invariant-factor form.
pub fn group_cohomology(m: &GModule, k: usize) -> Result<AbelianInvariants> {
    if k > 3 {
        return Err(Error::DegreeUnsupported(k));
    }
    let w = m.group.order();
    let r = m.carrier.len();
    if r == 0 {
        return Ok(AbelianInvariants(Vec::new()));
    }
    if w.pow(k as u32 + 1) * r > COCHAIN_BOUND {
        return Err(Error::OrderBoundExceeded { bound: COCHAIN_BOUND });
    }
    let n = w.pow(k as u32) * r;
    let next = coboundary(m, k);
    let prev = if k > 0 { Some(coboundary(m, k - 1)) } else { None };
    let exponent = m.carrier.iter().fold(1u64, |acc, &x| num_integer::lcm(acc, x));

    let mut primary: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for (l, a) in factorize(exponent) {
        let ring = ChainRing::new(l, a);
        let coord_val = |idx: usize| v_l(m.carrier[idx % r], l);
        // kernel of δ^k, rows rescaled so each condition lives mod ℓ^a
        let b_rows: Vec<Vec<u64>> = next
            .iter()
            .enumerate()
            .map(|(ri, row)| {
                let scale = l.pow(a - coord_val(ri)) as i64;
                let mut dense = vec![0u64; n];
                for &(c, v) in row {
                    dense[c] = ring.reduce(v * scale);
                }
                dense
            })
            .filter(|row| row.iter().any(|&x| x != 0))
            .collect();
        let kernel = ring.kernel_generators(&b_rows, n);
        // image of δ^{k-1} plus the carrier relations
        let mut image: Vec<Vec<u64>> = Vec::new();
        if let Some(prev) = &prev {
            // rows of δ^{k-1} are indexed by C^k, columns by C^{k-1}
            let cols = n / w;
            let mut gens = vec![vec![0u64; n]; cols];
            for (ri, row) in prev.iter().enumerate() {
                for &(c, v) in row {
                    gens[c][ri] = ring.reduce(v);
                }
            }
            image.extend(gens.into_iter().filter(|g| g.iter().any(|&x| x != 0)));
        }
        for idx in 0..n {
            let mut g = vec![0u64; n];
            g[idx] = ring.reduce(l.pow(coord_val(idx).min(a)) as i64);
            if g[idx] != 0 {
                image.push(g);
            }
        }
        let image_log = ring.span_log_size(&image, n);
        let h: Vec<u32> = (0..=a)
            .map(|j| {
                let scale = l.pow(j);
                let mut gens: Vec<Vec<u64>> = kernel
                    .iter()
                    .map(|v| v.iter().map(|&x| ring.reduce((x * scale) as i64)).collect())
                    .collect();
                gens.extend(image.iter().cloned());
                ring.span_log_size(&gens, n) - image_log
            })
            .collect();
        let mut factors = Vec::new();
        for j in 0..a as usize {
            let at_least = h[j] - h[j + 1];
            let at_least_next = if j + 1 < a as usize { h[j + 1] - h[j + 2] } else { 0 };
            for _ in 0..(at_least - at_least_next) {
                factors.push(l.pow(j as u32 + 1));
            }
        }
        if !factors.is_empty() {
            primary.insert(l, factors);
        }
    }
    Ok(AbelianInvariants::from_primary(&primary))
}
