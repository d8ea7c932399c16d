//! Explicit bifree bisets: an independent model used to check the
//! double-coset formulas.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{BasisPair, BurnsideElement, LocalCoeff};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};

/// A finite `(T, S)`-biset on points `0..n`.
#[derive(Clone, Debug)]
pub struct ExplicitBiset {
    left: Arc<Group>,
    right: Arc<Group>,
    points: usize,
    /// `left_action[t * n + x] = t·x`.
    left_action: Vec<u32>,
    /// `right_action[s * n + x] = x·s`.
    right_action: Vec<u32>,
}

impl ExplicitBiset {
    /// Checks the action axioms, that the actions commute and that both are free.
    pub fn new(
        left: Arc<Group>,
        right: Arc<Group>,
        points: usize,
        left_action: Vec<u32>,
        right_action: Vec<u32>,
    ) -> Result<Self> {
        let n = points;
        if left_action.len() != left.order() * n || right_action.len() != right.order() * n {
            return Err(Error::InvalidModule("action tables have the wrong size".into()));
        }
        if left_action.iter().chain(&right_action).any(|&x| x as usize >= n) {
            return Err(Error::InvalidModule("action leaves the point set".into()));
        }
        let l = |t: Elem, x: u32| left_action[t as usize * n + x as usize];
        let r = |s: Elem, x: u32| right_action[s as usize * n + x as usize];
        for x in 0..n as u32 {
            if l(Group::IDENTITY, x) != x || r(Group::IDENTITY, x) != x {
                return Err(Error::InvalidModule("identity acts nontrivially".into()));
            }
            for a in 0..left.order() as Elem {
                if a != Group::IDENTITY && l(a, x) == x {
                    return Err(Error::NotFree(format!("left element {} fixes point {x}", left.element(a))));
                }
                for b in 0..left.order() as Elem {
                    if l(a, l(b, x)) != l(left.mul(a, b), x) {
                        return Err(Error::InvalidModule("left action is not a group action".into()));
                    }
                }
            }
            for a in 0..right.order() as Elem {
                if a != Group::IDENTITY && r(a, x) == x {
                    return Err(Error::NotFree(format!("right element {} fixes point {x}", right.element(a))));
                }
                for b in 0..right.order() as Elem {
                    if r(b, r(a, x)) != r(right.mul(a, b), x) {
                        return Err(Error::InvalidModule("right action is not a group action".into()));
                    }
                }
                for t in 0..left.order() as Elem {
                    if l(t, r(a, x)) != r(a, l(t, x)) {
                        return Err(Error::InvalidModule("left and right actions do not commute".into()));
                    }
                }
            }
        }
        Ok(ExplicitBiset { left, right, points, left_action, right_action })
    }

    fn unchecked(left: Arc<Group>, right: Arc<Group>, points: usize, left_action: Vec<u32>, right_action: Vec<u32>) -> Self {
        ExplicitBiset { left, right, points, left_action, right_action }
    }

    pub fn left(&self) -> &Arc<Group> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Group> {
        &self.right
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn act_left(&self, t: Elem, x: u32) -> u32 {
        self.left_action[t as usize * self.points + x as usize]
    }

    pub fn act_right(&self, x: u32, s: Elem) -> u32 {
        self.right_action[s as usize * self.points + x as usize]
    }

    /// The elements `points` of `ambient` with `T` and `S` acting by left and
    /// right multiplication through the given embeddings.
    pub fn from_ambient(
        ambient: &Group,
        points: &[Elem],
        left: &Arc<Group>,
        left_embedding: &[Elem],
        right: &Arc<Group>,
        right_embedding: &[Elem],
    ) -> Result<Self> {
        let n = points.len();
        let find = |g: Elem| -> Result<u32> {
            points.binary_search(&g).map(|i| i as u32).map_err(|_| Error::NotContained)
        };
        let mut la = Vec::with_capacity(left.order() * n);
        for &t in left_embedding {
            for &x in points {
                la.push(find(ambient.mul(t, x))?);
            }
        }
        let mut ra = Vec::with_capacity(right.order() * n);
        for &s in right_embedding {
            for &x in points {
                ra.push(find(ambient.mul(x, s))?);
            }
        }
        Self::new(left.clone(), right.clone(), n, la, ra)
    }

    /// `T ×_{(P,φ)} S = T × S / (tφ(p), s) ~ (t, ps)`.
    pub fn from_pair(s: &Arc<Group>, t: &Arc<Group>, pair: &BasisPair) -> Self {
        let ns = s.order();
        let canon = |a: Elem, b: Elem| -> usize {
            pair.subgroup
                .iter()
                .zip(&pair.images)
                .map(|(&p, &fp)| t.mul(a, fp) as usize * ns + s.mul(s.inv(p), b) as usize)
                .min()
                .unwrap()
        };
        let mut reps: Vec<usize> = (0..t.order() as Elem)
            .flat_map(|a| (0..ns as Elem).map(move |b| (a, b)))
            .map(|(a, b)| canon(a, b))
            .collect();
        reps.sort_unstable();
        reps.dedup();
        let n = reps.len();
        let index = |code: usize| reps.binary_search(&code).unwrap() as u32;
        let mut la = Vec::with_capacity(t.order() * n);
        for g in 0..t.order() as Elem {
            for &code in &reps {
                let (a, b) = ((code / ns) as Elem, (code % ns) as Elem);
                la.push(index(canon(t.mul(g, a), b)));
            }
        }
        let mut ra = Vec::with_capacity(ns * n);
        for g in 0..ns as Elem {
            for &code in &reps {
                let (a, b) = ((code / ns) as Elem, (code % ns) as Elem);
                ra.push(index(canon(a, s.mul(b, g))));
            }
        }
        Self::unchecked(t.clone(), s.clone(), n, la, ra)
    }

    /// Disjoint union of the bisets of an element with nonnegative integer
    /// coefficients.
    pub fn from_element(x: &BurnsideElement) -> Result<Self> {
        let terms = x
            .integer_terms()
            .ok_or_else(|| Error::InvalidModule("coefficients must be nonnegative integers".into()))?;
        let mut out = ExplicitBiset::unchecked(x.target.clone(), x.source.clone(), 0, Vec::new(), Vec::new());
        for (pair, count) in terms {
            let piece = Self::from_pair(&x.source, &x.target, &pair);
            for _ in 0..count {
                out = out.disjoint_union(&piece);
            }
        }
        Ok(out)
    }

    fn disjoint_union(&self, other: &Self) -> Self {
        let (n1, n2) = (self.points, other.points);
        let n = n1 + n2;
        let merge = |a: &[u32], b: &[u32], k: usize| -> Vec<u32> {
            let mut out = Vec::with_capacity(k * n);
            for g in 0..k {
                out.extend_from_slice(&a[g * n1..(g + 1) * n1]);
                out.extend(b[g * n2..(g + 1) * n2].iter().map(|&x| x + n1 as u32));
            }
            out
        };
        Self::unchecked(
            self.left.clone(),
            self.right.clone(),
            n,
            merge(&self.left_action, &other.left_action, self.left.order()),
            merge(&self.right_action, &other.right_action, self.right.order()),
        )
    }

    /// `self ×_T first` for a `(T, S)`-biset `first` and `(U, T)`-biset `self`.
    pub fn balanced_product(&self, first: &Self) -> Result<Self> {
        if self.right != first.left {
            return Err(Error::GroupMismatch("balanced product over different groups".into()));
        }
        let t = &self.right;
        let nx = first.points;
        let canon = |y: u32, x: u32| -> usize {
            (0..t.order() as Elem)
                .map(|g| self.act_right(y, t.inv(g)) as usize * nx + first.act_left(g, x) as usize)
                .min()
                .unwrap()
        };
        let mut reps: Vec<usize> = (0..self.points as u32)
            .flat_map(|y| (0..nx as u32).map(move |x| (y, x)))
            .map(|(y, x)| canon(y, x))
            .collect();
        reps.sort_unstable();
        reps.dedup();
        let n = reps.len();
        let index = |code: usize| reps.binary_search(&code).unwrap() as u32;
        let split = |code: usize| ((code / nx) as u32, (code % nx) as u32);
        let mut la = Vec::with_capacity(self.left.order() * n);
        for u in 0..self.left.order() as Elem {
            for &code in &reps {
                let (y, x) = split(code);
                la.push(index(canon(self.act_left(u, y), x)));
            }
        }
        let mut ra = Vec::with_capacity(first.right.order() * n);
        for s in 0..first.right.order() as Elem {
            for &code in &reps {
                let (y, x) = split(code);
                ra.push(index(canon(y, first.act_right(x, s))));
            }
        }
        Ok(Self::unchecked(self.left.clone(), first.right.clone(), n, la, ra))
    }

    /// `(T1 × T2, S1 × S2)`-biset on `X1 × X2`.
    pub fn cartesian_product(&self, other: &Self) -> Result<Self> {
        let left = Group::direct_product(&self.left, &other.left)?;
        let right = Group::direct_product(&self.right, &other.right)?;
        let (n1, n2) = (self.points, other.points);
        let n = n1 * n2;
        let mut la = Vec::with_capacity(left.order() * n);
        for a in 0..self.left.order() as Elem {
            for b in 0..other.left.order() as Elem {
                for x in 0..n1 as u32 {
                    for y in 0..n2 as u32 {
                        la.push(self.act_left(a, x) * n2 as u32 + other.act_left(b, y));
                    }
                }
            }
        }
        let mut ra = Vec::with_capacity(right.order() * n);
        for a in 0..self.right.order() as Elem {
            for b in 0..other.right.order() as Elem {
                for x in 0..n1 as u32 {
                    for y in 0..n2 as u32 {
                        ra.push(self.act_right(x, a) * n2 as u32 + other.act_right(y, b));
                    }
                }
            }
        }
        Ok(Self::unchecked(left, right, n, la, ra))
    }

    /// Orbit decomposition: each `(T, S)`-orbit with least point `x0`
    /// contributes `[P, φ]` with `P = { s : x0·s ∈ T·x0 }` and `φ(s)·x0 = x0·s`.
    pub fn decompose(&self, prime: u32) -> Result<BurnsideElement> {
        crate::group::check_prime(prime)?;
        let (t, s) = (&self.left, &self.right);
        let mut seen = vec![false; self.points];
        let mut out = BurnsideElement::zero(s, t, prime);
        for x0 in 0..self.points as u32 {
            if seen[x0 as usize] {
                continue;
            }
            let left_orbit: BTreeMap<u32, Elem> =
                (0..t.order() as Elem).map(|g| (self.act_left(g, x0), g)).collect();
            if left_orbit.len() != t.order() {
                return Err(Error::NotFree(format!("left stabilizer of point {x0} is nontrivial")));
            }
            let mut sub = Vec::new();
            let mut images = Vec::new();
            for g in 0..s.order() as Elem {
                let y = self.act_right(x0, g);
                for &z in left_orbit.keys() {
                    seen[self.act_right(z, g) as usize] = true;
                }
                if let Some(&u) = left_orbit.get(&y) {
                    sub.push(g);
                    images.push(u);
                }
            }
            out.add_pair(&sub, &images, LocalCoeff::one());
        }
        Ok(out)
    }
}
