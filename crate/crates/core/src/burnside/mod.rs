//! The p-local double Burnside module `A(S, T)` of bifree bisets.
//!
//! A basis element `[P, φ]` with `P ≤ S` and `φ: P → T` injective stands for
//! the biset `T ×_{(P,φ)} S`, which models the stable map `Bφ ∘ tr_P`.
//! Pairs are stored in canonical form under
//! `(P, φ) ~ (sPs⁻¹, c_t ∘ φ ∘ c_{s⁻¹})`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec;
use crate::group::{Elem, Group, GroupHom, Subgroup};

mod biset;
mod coeff;
mod frobenius;
mod idempotent;

pub use biset::ExplicitBiset;
pub use coeff::LocalCoeff;
pub use frobenius::{verify_classical_frobenius, verify_diag_commute, verify_frobenius_reciprocity, FrobeniusReport};
pub use idempotent::{
    characteristic_idempotent, idempotent_uniqueness, is_f_stable, seed_element, CharacteristicIdempotent,
    ModelReport, StabilityReport, UniquenessReport, DEFAULT_PRECISION, ITERATION_CAP,
};

/// `[P, φ]`: the sorted elements of `P ≤ S` and their images in `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisPair {
    subgroup: Vec<Elem>,
    images: Vec<Elem>,
}

impl BasisPair {
    pub fn subgroup(&self) -> &[Elem] {
        &self.subgroup
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    /// Least representative of the class of `(sub, images)`.
    pub fn canonical(s: &Group, t: &Group, sub: &[Elem], images: &[Elem]) -> BasisPair {
        let mut best_sub: Option<Vec<Elem>> = None;
        let mut movers = Vec::new();
        for x in 0..s.order() as Elem {
            let mut c: Vec<Elem> = sub.iter().map(|&y| s.conj(x, y)).collect();
            c.sort_unstable();
            match best_sub.as_ref().map(|b| c.cmp(b)) {
                None | Some(Ordering::Less) => {
                    best_sub = Some(c);
                    movers = vec![x];
                }
                Some(Ordering::Equal) => movers.push(x),
                Some(Ordering::Greater) => {}
            }
        }
        let best_sub = best_sub.expect("S is nonempty");
        let mut best: Option<Vec<Elem>> = None;
        let mut moved = vec![0; sub.len()];
        let mut cand = vec![0; sub.len()];
        for &x in &movers {
            for (k, &y) in sub.iter().enumerate() {
                let pos = best_sub.binary_search(&s.conj(x, y)).expect("conjugate subgroup");
                moved[pos] = images[k];
            }
            for tt in 0..t.order() as Elem {
                for (c, &m) in cand.iter_mut().zip(&moved) {
                    *c = t.conj(tt, m);
                }
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand.clone());
                }
            }
        }
        BasisPair { subgroup: best_sub, images: best.expect("T is nonempty") }
    }
}

impl PartialOrd for BasisPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasisPair {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.subgroup.len(), &self.subgroup, &self.images).cmp(&(
            other.subgroup.len(),
            &other.subgroup,
            &other.images,
        ))
    }
}

/// An element of `A(S, T) ⊗ Z_(p)`.
#[derive(Clone)]
pub struct BurnsideElement {
    source: Arc<Group>,
    target: Arc<Group>,
    prime: u32,
    terms: BTreeMap<BasisPair, LocalCoeff>,
}

fn same_group(a: &Arc<Group>, b: &Arc<Group>, what: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GroupMismatch(what.to_string()))
    }
}

/// `P` as a group in its own right together with `S`, where `P` is the
/// whole group when it is one.
fn own_group(p: &Subgroup) -> Arc<Group> {
    if p.order() == p.group().order() {
        p.group().clone()
    } else {
        p.to_group()
    }
}

impl BurnsideElement {
    pub fn zero(source: &Arc<Group>, target: &Arc<Group>, prime: u32) -> Self {
        BurnsideElement { source: source.clone(), target: target.clone(), prime, terms: BTreeMap::new() }
    }

    /// `[P, φ]` for `P ≤ source` and an injective `φ` given by the images of
    /// the elements of `P`.
    pub fn basis(p_sub: &Subgroup, images: &[Elem], target: &Arc<Group>, prime: u32) -> Result<Self> {
        crate::group::check_prime(prime)?;
        let codomain = target.whole();
        let phi = GroupHom::new(p_sub.clone(), codomain, images.to_vec())?;
        if !phi.is_injective() {
            return Err(Error::NotInjective);
        }
        let mut x = Self::zero(p_sub.group(), target, prime);
        x.add_pair(p_sub.elements(), images, LocalCoeff::one());
        Ok(x)
    }

    pub(crate) fn add_pair(&mut self, sub: &[Elem], images: &[Elem], c: LocalCoeff) {
        let pair = BasisPair::canonical(&self.source, &self.target, sub, images);
        self.add_term(pair, c);
    }

    fn add_term(&mut self, pair: BasisPair, c: LocalCoeff) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(pair) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c).expect("coefficients share a prime");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `[S, id]`.
    pub fn identity(s: &Arc<Group>, prime: u32) -> Self {
        let mut x = Self::zero(s, s, prime);
        let all: Vec<Elem> = (0..s.order() as Elem).collect();
        x.add_pair(&all, &all, LocalCoeff::one());
        x
    }

    /// `tr_P = [P ≤ S, id_P]` in `A(S, P)`.
    pub fn transfer(p_sub: &Subgroup, prime: u32) -> Self {
        let target = own_group(p_sub);
        let images: Vec<Elem> = if Arc::ptr_eq(&target, p_sub.group()) {
            p_sub.elements().to_vec()
        } else {
            (0..p_sub.order() as Elem).collect()
        };
        let mut x = Self::zero(p_sub.group(), &target, prime);
        x.add_pair(p_sub.elements(), &images, LocalCoeff::one());
        x
    }

    /// `Bφ = [P, φ]` in `A(P, T)` where `T` is the group containing the codomain.
    pub fn b_map(phi: &GroupHom, prime: u32) -> Result<Self> {
        if !phi.is_injective() {
            return Err(Error::NotInjective);
        }
        let source = own_group(phi.domain());
        let target = phi.codomain().group().clone();
        let all: Vec<Elem> = (0..source.order() as Elem).collect();
        let images: Vec<Elem> = if Arc::ptr_eq(&source, phi.domain().group()) {
            all.iter().map(|&x| phi.images()[phi.domain().position(x).unwrap()]).collect()
        } else {
            phi.images().to_vec()
        };
        let mut x = Self::zero(&source, &target, prime);
        x.add_pair(&all, &images, LocalCoeff::one());
        Ok(x)
    }

    /// `Δ_S = [S, s ↦ (s, s)]` in `A(S, S × S)`.
    pub fn diagonal(s: &Arc<Group>, prime: u32) -> Result<Self> {
        let target = Group::direct_product(s, s)?;
        let n = s.order() as Elem;
        let all: Vec<Elem> = (0..n).collect();
        let images: Vec<Elem> = all.iter().map(|&i| i * n + i).collect();
        let mut x = Self::zero(s, &target, prime);
        x.add_pair(&all, &images, LocalCoeff::one());
        Ok(x)
    }

    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Group> {
        &self.target
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn terms(&self) -> &BTreeMap<BasisPair, LocalCoeff> {
        &self.terms
    }

    pub fn coefficient(&self, pair: &BasisPair) -> LocalCoeff {
        self.terms.get(pair).cloned().unwrap_or_else(LocalCoeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every coefficient is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.terms.values().all(LocalCoeff::is_exact)
    }

    fn check_same_module(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        same_group(&self.source, &other.source, "sources differ")?;
        same_group(&self.target, &other.target, "targets differ")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_module(other)?;
        let mut out = self.clone();
        for (pair, c) in &other.terms {
            out.add_term(pair.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LocalCoeff::integer(-1))?)
    }

    pub fn scale(&self, c: &LocalCoeff) -> Result<Self> {
        let mut out = Self::zero(&self.source, &self.target, self.prime);
        for (pair, d) in &self.terms {
            out.add_term(pair.clone(), d.mul(c)?);
        }
        Ok(out)
    }

    /// Reduces every coefficient modulo `p^precision`.
    pub fn to_residue(&self, precision: u32) -> Result<Self> {
        let mut out = Self::zero(&self.source, &self.target, self.prime);
        for (pair, c) in &self.terms {
            out.add_term(pair.clone(), c.to_residue(self.prime, precision)?);
        }
        Ok(out)
    }

    /// `self ∘ first` for `first ∈ A(S, T)` and `self ∈ A(T, U)`.
    pub fn compose(&self, first: &Self) -> Result<Self> {
        if self.prime != first.prime {
            return Err(Error::PrimeMismatch(self.prime, first.prime));
        }
        same_group(&first.target, &self.source, "composition requires a.target = b.source")?;
        let (s, t, u) = (&first.source, &first.target, &self.target);
        let pairs: Vec<(&BasisPair, &LocalCoeff, &BasisPair, &LocalCoeff)> = self
            .terms
            .iter()
            .flat_map(|(b, cb)| first.terms.iter().map(move |(a, ca)| (b, cb, a, ca)))
            .collect();
        let pieces = exec::map(&pairs, |&(b, _, a, _)| compose_pairs(s, t, u, b, a));
        let mut out = Self::zero(s, u, self.prime);
        for ((_, cb, _, ca), list) in pairs.iter().zip(pieces) {
            let c = cb.mul(ca)?;
            for pair in list {
                out.add_term(pair, c.clone());
            }
        }
        Ok(out)
    }

    /// `self ⊠ other ∈ A(S1 × S2, T1 × T2)`.
    pub fn external_product(&self, other: &Self) -> Result<Self> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        let source = Group::direct_product(&self.source, &other.source)?;
        let target = Group::direct_product(&self.target, &other.target)?;
        let (n2, m2) = (other.source.order() as Elem, other.target.order() as Elem);
        let pairs: Vec<(&BasisPair, &LocalCoeff, &BasisPair, &LocalCoeff)> = self
            .terms
            .iter()
            .flat_map(|(a, ca)| other.terms.iter().map(move |(b, cb)| (a, ca, b, cb)))
            .collect();
        let products = exec::map(&pairs, |&(a, _, b, _)| {
            let mut sub = Vec::with_capacity(a.subgroup.len() * b.subgroup.len());
            let mut images = Vec::with_capacity(sub.capacity());
            for (&x, &fx) in a.subgroup.iter().zip(&a.images) {
                for (&y, &fy) in b.subgroup.iter().zip(&b.images) {
                    sub.push(x * n2 + y);
                    images.push(fx * m2 + fy);
                }
            }
            BasisPair::canonical(&source, &target, &sub, &images)
        });
        let mut out = Self::zero(&source, &target, self.prime);
        for ((_, ca, _, cb), pair) in pairs.iter().zip(products) {
            out.add_term(pair, ca.mul(cb)?);
        }
        Ok(out)
    }

    /// `ε(x) = Σ c·[S:P]`.
    pub fn augmentation(&self) -> LocalCoeff {
        let n = self.source.order();
        let mut sum = LocalCoeff::zero();
        for (pair, c) in &self.terms {
            let index = LocalCoeff::integer((n / pair.subgroup.len()) as i64);
            sum = sum.add(&c.mul(&index).expect("same prime")).expect("same prime");
        }
        sum
    }

    /// The opposite biset: `[P, φ]ᵒᵖ = [φ(P), φ⁻¹] ∈ A(T, S)`.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.target, &self.source, self.prime);
        for (pair, c) in &self.terms {
            let mut swapped: Vec<(Elem, Elem)> = pair.images.iter().copied().zip(pair.subgroup.iter().copied()).collect();
            swapped.sort_unstable();
            let (sub, images): (Vec<Elem>, Vec<Elem>) = swapped.into_iter().unzip();
            out.add_pair(&sub, &images, c.clone());
        }
        out
    }

    /// Drops the terms with trivial `P`, the image in the pointed module.
    pub fn pointed(&self) -> Self {
        let mut out = self.clone();
        out.terms.retain(|pair, _| pair.subgroup.len() > 1);
        out
    }

    /// Whether some term has trivial `P`.
    pub fn has_trivial_terms(&self) -> bool {
        self.terms.keys().any(|pair| pair.subgroup.len() == 1)
    }

    /// `{source, target, prime, terms: [...]}` with subgroup indices into the
    /// sorted subgroup list of the source.
    pub fn to_json(&self) -> Result<Value> {
        let subgroups = self.source.subgroups()?;
        let gens = |g: &Group| -> Vec<String> { g.generators().iter().map(|x| x.to_string()).collect() };
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(pair, c)| {
                let index = subgroups.iter().position(|h| h.elements() == pair.subgroup.as_slice());
                let p = &subgroups[index.expect("canonical subgroup is listed")];
                let phi_images: Vec<String> = p
                    .generators()
                    .iter()
                    .map(|&x| {
                        let k = pair.subgroup.binary_search(&x).unwrap();
                        self.target.element(pair.images[k]).to_string()
                    })
                    .collect();
                let mut term = json!({
                    "subgroup_index": index,
                    "subgroup_generators": p.generators().iter().map(|&x| self.source.element(x).to_string()).collect::<Vec<_>>(),
                    "phi_images": phi_images,
                });
                if let (Value::Object(t), Value::Object(f)) = (&mut term, c.to_json_fields()) {
                    t.extend(f);
                }
                term
            })
            .collect();
        Ok(json!({
            "source": { "order": self.source.order(), "generators": gens(&self.source) },
            "target": { "order": self.target.order(), "generators": gens(&self.target) },
            "prime": self.prime,
            "terms": terms,
        }))
    }

    /// Coefficients as exact rationals, if every one is exact.
    pub(crate) fn exact_terms(&self) -> Option<Vec<(BasisPair, num_rational::BigRational)>> {
        self.terms.iter().map(|(p, c)| c.as_exact().map(|q| (p.clone(), q.clone()))).collect()
    }

    /// Nonnegative integer coefficients, if all coefficients are such.
    pub(crate) fn integer_terms(&self) -> Option<Vec<(BasisPair, usize)>> {
        self.terms
            .iter()
            .map(|(p, c)| {
                let q = c.as_exact()?;
                if !q.is_integer() || c.is_negative() {
                    return None;
                }
                Some((p.clone(), q.to_integer().to_usize()?))
            })
            .collect()
    }
}

/// `[Q, ψ] ∘ [P, φ] = Σ_{x ∈ Q\T/φ(P)} [P_x, p ↦ ψ(xφ(p)x⁻¹)]` with
/// `P_x = { p ∈ P : xφ(p)x⁻¹ ∈ Q }`.
fn compose_pairs(s: &Group, t: &Group, u: &Group, b: &BasisPair, a: &BasisPair) -> Vec<BasisPair> {
    let mut seen = vec![false; t.order()];
    let mut out = Vec::new();
    for x in 0..t.order() as Elem {
        if seen[x as usize] {
            continue;
        }
        for &q in &b.subgroup {
            let qx = t.mul(q, x);
            for &y in &a.images {
                seen[t.mul(qx, y) as usize] = true;
            }
        }
        let mut sub = Vec::new();
        let mut images = Vec::new();
        for (&p, &fp) in a.subgroup.iter().zip(&a.images) {
            let z = t.conj(x, fp);
            if let Ok(k) = b.subgroup.binary_search(&z) {
                sub.push(p);
                images.push(b.images[k]);
            }
        }
        out.push(BasisPair::canonical(s, u, &sub, &images));
    }
    out
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime && self.source == other.source && self.target == other.target && self.terms == other.terms
    }
}

impl Eq for BurnsideElement {}

impl std::fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(pair, c)| format!("{c}·[{:?}, {:?}]", pair.subgroup, pair.images))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
