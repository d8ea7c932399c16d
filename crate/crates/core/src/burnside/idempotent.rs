//! Characteristic idempotents of saturated fusion systems.
//!
//! The seed `ξ` is the Burnside class of a realizing group `G` as an
//! `(S, S)`-biset, divided by its augmentation `[G:S]`. The idempotent is
//! the p-adic limit of `ξ^{k!}`, computed in `A(S, S) ⊗ Z/p^m` and lifted
//! back to `Z_(p)` by rational reconstruction when possible.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{own_group, BasisPair, BurnsideElement, ExplicitBiset, LocalCoeff};
use crate::error::{Error, Result};
use crate::exec;
use crate::fusion::{FusionSystem, Origin};
use crate::group::{semidirect_product, Elem, Group, GroupHom, Subgroup};
use crate::linalg::{rank_q, solve_affine_q};

pub const DEFAULT_PRECISION: u32 = 16;
/// Bound on the number of steps `t ← t^{k+1}`.
pub const ITERATION_CAP: usize = 64;

#[derive(Debug, Clone)]
pub struct CharacteristicIdempotent {
    pub omega: BurnsideElement,
    /// Whether `omega` has exact coefficients verified to satisfy `ω∘ω = ω`.
    pub exact: bool,
    /// Steps of the limit iteration until `t∘t = t` modulo `p^precision`.
    pub iterations: usize,
    pub precision: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub support_in_f: bool,
    pub checks: usize,
    pub failure: Option<String>,
}

/// Solution space of {support in F, stability, `ε = 1`} in one model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    /// Number of admissible basis pairs `[P, φ]`.
    pub unknowns: usize,
    pub affine_dimension: usize,
    /// Whether no nonzero direction `h` of the affine space satisfies
    /// `ωh + hω = h`, so `ω` is an isolated idempotent there. `None` when
    /// `ω` is only known modulo `p^m`.
    pub locally_isolated: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub omega_in_solution_space: bool,
    pub idempotent: bool,
    /// All `[P, φ]` with `φ ∈ Hom_F(P, S)`, right stability only.
    pub unpointed: ModelReport,
    /// Nontrivial `P` only, computing modulo the terms with trivial `P`.
    pub pointed: ModelReport,
    /// All `[P, φ]`, stability on both sides.
    pub two_sided: ModelReport,
}

/// `S` as a group, with the map from its element indices to the parent.
fn s_group(f: &FusionSystem) -> Arc<Group> {
    own_group(f.s())
}

fn to_s(f: &FusionSystem, parent: &[Elem]) -> Vec<Elem> {
    parent.iter().map(|&x| f.s().position(x).expect("element of S") as Elem).collect()
}

/// `ξ = [G as (S,S)-biset] / [G:S]`.
pub fn seed_element(f: &FusionSystem) -> Result<BurnsideElement> {
    let s = s_group(f);
    let p = f.prime();
    let biset = match f.origin() {
        Origin::Group(h) => {
            ExplicitBiset::from_ambient(h.group(), h.elements(), &s, f.s().elements(), &s, f.s().elements())?
        }
        Origin::Abelian(w) => {
            let sd = semidirect_product(w, f.s().group())?;
            let points: Vec<Elem> = (0..sd.group.order() as Elem).collect();
            ExplicitBiset::from_ambient(&sd.group, &points, &s, &sd.embedding, &s, &sd.embedding)?
        }
        Origin::Abstract => return Err(Error::NotRealized),
    };
    let x = biset.decompose(p)?;
    let eps = x.augmentation();
    let inv = eps.inverse(p).map_err(|_| Error::NotSylow { p })?;
    x.scale(&inv)
}

fn power(x: &BurnsideElement, mut e: usize) -> Result<BurnsideElement> {
    let mut base = x.clone();
    let mut acc: Option<BurnsideElement> = None;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.compose(&base)?,
            });
        }
        e >>= 1;
        if e > 0 {
            base = base.compose(&base)?;
        }
    }
    Ok(acc.expect("positive exponent"))
}

/// `ω = lim ξ^{k!}` with exact reconstruction when it verifies.
pub fn characteristic_idempotent(f: &FusionSystem, precision: u32) -> Result<CharacteristicIdempotent> {
    if precision == 0 {
        return Err(Error::Precision("precision must be at least 1".into()));
    }
    let xi = seed_element(f)?;
    let mut t = xi.to_residue(precision)?;
    let mut iterations = 0;
    loop {
        iterations += 1;
        if t.compose(&t)? == t {
            break;
        }
        if iterations >= ITERATION_CAP {
            return Err(Error::NoConvergence(ITERATION_CAP));
        }
        t = power(&t, iterations + 1)?;
    }
    let mut exact = BurnsideElement::zero(t.source(), t.target(), t.prime());
    let recovered = t.terms().iter().all(|(pair, c)| match c.recover() {
        Some(q) => {
            exact.add_term(pair.clone(), LocalCoeff::Exact(q));
            true
        }
        None => false,
    });
    if recovered && exact.compose(&exact)? == exact && exact.augmentation() == LocalCoeff::one() {
        return Ok(CharacteristicIdempotent { omega: exact, exact: true, iterations, precision });
    }
    Ok(CharacteristicIdempotent { omega: t, exact: false, iterations, precision })
}

/// Checks `(P, φ)` pairs: `x ∘ Bi_P = x ∘ Bφ` for every `φ ∈ Hom_F(P, S)`.
struct StabilityChecks {
    s: Arc<Group>,
    checks: Vec<(usize, BurnsideElement, BurnsideElement)>,
}

impl StabilityChecks {
    fn new(f: &FusionSystem) -> Result<Self> {
        let s = s_group(f);
        let whole = s.whole();
        let top = f.top();
        let mut checks = Vec::new();
        for (i, q) in f.subgroups().iter().enumerate() {
            let p_sub: Subgroup = s.subgroup_from_elements(to_s(f, q.elements()))?;
            let incl = BurnsideElement::b_map(&GroupHom::inclusion(&p_sub, &whole)?, f.prime())?;
            for phi in f.hom_images(i, top) {
                let hom = GroupHom::new(p_sub.clone(), whole.clone(), to_s(f, phi))?;
                let b = BurnsideElement::b_map(&hom, f.prime())?;
                if b != incl {
                    checks.push((i, incl.clone(), b));
                }
            }
        }
        Ok(StabilityChecks { s, checks })
    }
}

fn f_pairs(f: &FusionSystem, s: &Group) -> BTreeSet<BasisPair> {
    let top = f.top();
    let mut out = BTreeSet::new();
    for (i, q) in f.subgroups().iter().enumerate() {
        let sub = to_s(f, q.elements());
        for phi in f.hom_images(i, top) {
            out.insert(BasisPair::canonical(s, s, &sub, &to_s(f, phi)));
        }
    }
    out
}

/// F-stability of `x ∈ A(S, S)`, with support in `F` checked separately.
pub fn is_f_stable(x: &BurnsideElement, f: &FusionSystem) -> Result<StabilityReport> {
    let checks = StabilityChecks::new(f)?;
    if x.source() != &checks.s || x.target() != &checks.s {
        return Err(Error::GroupMismatch("element must lie in A(S, S)".into()));
    }
    let allowed = f_pairs(f, &checks.s);
    if let Some(bad) = x.terms().keys().find(|pair| !allowed.contains(pair)) {
        return Ok(StabilityReport {
            stable: false,
            support_in_f: false,
            checks: 0,
            failure: Some(format!("term [{:?}, {:?}] is not an F-morphism", bad.subgroup(), bad.images())),
        });
    }
    let results = exec::map(&checks.checks, |(i, incl, b)| -> Result<Option<String>> {
        let lhs = x.compose(incl)?;
        let rhs = x.compose(b)?;
        Ok((!lhs.sub(&rhs)?.is_zero()).then(|| {
            let images: Vec<Elem> = b.terms().keys().next().map(|k| k.images().to_vec()).unwrap_or_default();
            format!("x∘Bi_P ≠ x∘Bφ at subgroup {i} with φ = {images:?}")
        }))
    });
    let mut failure = None;
    for r in results {
        if let Some(msg) = r? {
            failure.get_or_insert(msg);
        }
    }
    Ok(StabilityReport { stable: failure.is_none(), support_in_f: true, checks: checks.checks.len(), failure })
}

fn coordinates(x: &BurnsideElement) -> Result<BTreeMap<BasisPair, BigRational>> {
    x.exact_terms()
        .map(|v| v.into_iter().collect())
        .ok_or_else(|| Error::Precision("exact coefficients required".into()))
}

struct Model {
    pointed: bool,
    two_sided: bool,
}

impl Model {
    fn reduce(&self, x: BurnsideElement) -> BurnsideElement {
        if self.pointed {
            x.pointed()
        } else {
            x
        }
    }
}

fn solve_model(
    checks: &StabilityChecks,
    pairs: &BTreeSet<BasisPair>,
    omega: &BurnsideElement,
    model: Model,
) -> Result<ModelReport> {
    let s = &checks.s;
    let p = omega.prime();
    let unknowns: Vec<&BasisPair> = pairs.iter().filter(|pair| !model.pointed || pair.subgroup().len() > 1).collect();
    let n = unknowns.len();
    let basis_elements: Vec<BurnsideElement> = unknowns
        .iter()
        .map(|pair| {
            let mut e = BurnsideElement::zero(s, s, p);
            e.add_term((*pair).clone(), LocalCoeff::one());
            e
        })
        .collect();

    // Row keys: (check, side, pair).
    let columns = exec::map(&basis_elements, |u| -> Result<Vec<BTreeMap<BasisPair, BigRational>>> {
        let mut out = Vec::new();
        for (_, incl, b) in &checks.checks {
            out.push(coordinates(&model.reduce(u.compose(incl)?.sub(&u.compose(b)?)?))?);
            if model.two_sided {
                let left = incl.transpose().compose(u)?.sub(&b.transpose().compose(u)?)?;
                out.push(coordinates(&model.reduce(left))?);
            }
        }
        Ok(out)
    });
    let mut rows: BTreeMap<(usize, BasisPair), Vec<BigRational>> = BTreeMap::new();
    for (k, col) in columns.into_iter().enumerate() {
        for (c, coords) in col?.into_iter().enumerate() {
            for (pair, q) in coords {
                rows.entry((c, pair)).or_insert_with(|| vec![BigRational::zero(); n])[k] = q;
            }
        }
    }
    let mut a: Vec<Vec<BigRational>> = rows.into_values().collect();
    let mut b = vec![BigRational::zero(); a.len()];
    a.push(
        unknowns
            .iter()
            .map(|pair| BigRational::from_integer(((s.order() / pair.subgroup().len()) as i64).into()))
            .collect(),
    );
    b.push(BigRational::one());
    let (_, directions) = solve_affine_q(&a, &b, n).ok_or(Error::SingularMatrix)?;

    let locally_isolated = if omega.is_exact() {
        let images = exec::map(&basis_elements, |u| -> Result<BTreeMap<BasisPair, BigRational>> {
            let l = omega.compose(u)?.add(&u.compose(omega)?)?.sub(u)?;
            coordinates(&model.reduce(l))
        });
        let images: Vec<BTreeMap<BasisPair, BigRational>> = images.into_iter().collect::<Result<_>>()?;
        let keys: BTreeSet<&BasisPair> = images.iter().flat_map(|m| m.keys()).collect();
        let vectors: Vec<Vec<BigRational>> = directions
            .iter()
            .map(|h| {
                keys.iter()
                    .map(|key| {
                        h.iter()
                            .zip(&images)
                            .filter_map(|(hk, m)| m.get(*key).map(|q| hk * q))
                            .fold(BigRational::zero(), |acc, x| acc + x)
                    })
                    .collect()
            })
            .collect();
        Some(directions.is_empty() || rank_q(&vectors) == directions.len())
    } else {
        None
    };
    Ok(ModelReport { unknowns: n, affine_dimension: directions.len(), locally_isolated })
}

/// Solves {support in F, F-stability, ε = 1} over `Q` in three models and
/// tests whether `ω` is an isolated idempotent of each solution space.
pub fn idempotent_uniqueness(f: &FusionSystem, omega: &BurnsideElement) -> Result<UniquenessReport> {
    let checks = StabilityChecks::new(f)?;
    let pairs = f_pairs(f, &checks.s);
    let idempotent = omega.compose(omega)?.sub(omega)?.is_zero();
    let stability = is_f_stable(omega, f)?;
    let omega_in_solution_space = stability.stable && omega.augmentation().sub(&LocalCoeff::one())?.is_zero();
    Ok(UniquenessReport {
        omega_in_solution_space,
        idempotent,
        unpointed: solve_model(&checks, &pairs, omega, Model { pointed: false, two_sided: false })?,
        pointed: solve_model(&checks, &pairs, omega, Model { pointed: true, two_sided: false })?,
        two_sided: solve_model(&checks, &pairs, omega, Model { pointed: false, two_sided: true })?,
    })
}
