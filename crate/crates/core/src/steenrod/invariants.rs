//! Invariant rings `H*(BV)^W`, the averaging splitting and its properties.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use super::algebra::{AlgebraPresentation, GradedElement, Monomial};
use super::matrix::MatrixGroup;
use super::ops::{gl_action, steenrod, SteenrodOp};
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{mod_inverse, nullspace_mod_p, rref_mod_p};

/// Default degree bound for invariant computations.
pub const DEFAULT_MAX_DEGREE: u32 = 12;

/// A subspace of `F_p^N` kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub(crate) struct Subspace {
    p: u64,
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub(crate) fn new(p: u64, dim: usize, vectors: Vec<Vec<u64>>) -> Self {
        let mut rows: Vec<Vec<u64>> = vectors.into_iter().filter(|v| v.iter().any(|&x| x % p != 0)).collect();
        let pivots = if rows.is_empty() { Vec::new() } else { rref_mod_p(&mut rows, p) };
        Subspace { p, dim, rows, pivots }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        v
    }

    pub(crate) fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub(crate) fn insert(&mut self, v: Vec<u64>) {
        let mut vectors = std::mem::take(&mut self.rows);
        vectors.push(v);
        *self = Subspace::new(self.p, self.dim, vectors);
    }

    pub(crate) fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

fn algebra_of(group: &MatrixGroup) -> Result<AlgebraPresentation> {
    AlgebraPresentation::new(group.prime(), group.rank())
}

fn check_algebra(group: &MatrixGroup, e: &GradedElement) -> Result<()> {
    let alg = e.algebra();
    if alg.prime() != group.prime() || alg.rank() != group.rank() {
        return Err(Error::InvalidMatrix(format!(
            "group acts on rank {} at p = {}, element lives in rank {} at p = {}",
            group.rank(),
            group.prime(),
            alg.rank(),
            alg.prime()
        )));
    }
    Ok(())
}

/// `(1/|W|) Σ_{w ∈ W} w·e`.
pub fn reynolds(group: &MatrixGroup, e: &GradedElement) -> Result<GradedElement> {
    group.check_coprime()?;
    check_algebra(group, e)?;
    let images = exec::map(group.elements(), |w| gl_action(w, e));
    let mut sum = GradedElement::zero(e.algebra(), e.degree());
    for image in images {
        sum = sum.add(&image?)?;
    }
    let p = group.prime() as u64;
    let inv = mod_inverse(group.order() as u64 % p, p).expect("order is prime to p");
    Ok(sum.scale(inv as u32))
}

/// Whether every generator of `group` fixes `e`.
pub fn is_invariant(group: &MatrixGroup, e: &GradedElement) -> Result<bool> {
    check_algebra(group, e)?;
    for g in group.generators() {
        if gl_action(g, e)? != *e {
            return Ok(false);
        }
    }
    Ok(true)
}

fn elements_from_rows(alg: AlgebraPresentation, d: u32, basis: &[Monomial], rows: &[Vec<u64>]) -> Vec<GradedElement> {
    rows.iter().map(|r| GradedElement::from_vector(alg, d, basis, r)).collect()
}

/// Basis of the degree-`d` fixed space from the kernels of `w − 1` over the
/// generators, in reduced echelon form on the monomial basis.
pub fn fixed_space_basis(group: &MatrixGroup, d: u32) -> Result<Vec<GradedElement>> {
    let alg = algebra_of(group)?;
    let monos = alg.monomials(d);
    let n = monos.len();
    let p = group.prime() as u64;
    let mut equations = Vec::new();
    for g in group.generators() {
        let columns: Vec<Vec<u64>> = monos
            .iter()
            .map(|m| Ok(gl_action(g, &GradedElement::from_monomial(alg, m.clone(), 1))?.to_vector(&monos)))
            .collect::<Result<_>>()?;
        for i in 0..n {
            equations.push((0..n).map(|k| (columns[k][i] + p - u64::from(i == k)) % p).collect());
        }
    }
    let kernel = Subspace::new(p, n, nullspace_mod_p(&equations, n, p));
    Ok(elements_from_rows(alg, d, &monos, kernel.rows()))
}

/// Basis of the image of the averaging operator in degree `d`, in reduced
/// echelon form on the monomial basis.
pub fn reynolds_image_basis(group: &MatrixGroup, d: u32) -> Result<Vec<GradedElement>> {
    let alg = algebra_of(group)?;
    let monos = alg.monomials(d);
    let p = group.prime() as u64;
    let images = monos
        .iter()
        .map(|m| Ok(reynolds(group, &GradedElement::from_monomial(alg, m.clone(), 1))?.to_vector(&monos)))
        .collect::<Result<Vec<_>>>()?;
    let span = Subspace::new(p, monos.len(), images);
    Ok(elements_from_rows(alg, d, &monos, span.rows()))
}

/// Invariants of degree `d`: the fixed-space solve, cross-checked against
/// the image of the averaging operator.
pub fn invariant_basis(group: &MatrixGroup, d: u32) -> Result<Vec<GradedElement>> {
    group.check_coprime()?;
    let kernel = fixed_space_basis(group, d)?;
    let image = reynolds_image_basis(group, d)?;
    if kernel != image {
        return Err(Error::InvalidModule(format!(
            "fixed space (dim {}) and averaging image (dim {}) differ in degree {d}",
            kernel.len(),
            image.len()
        )));
    }
    Ok(kernel)
}

/// `H*(BV)^W` truncated at a degree bound.
#[derive(Clone, Debug)]
pub struct InvariantRing {
    algebra: AlgebraPresentation,
    group: MatrixGroup,
    degree_bound: u32,
    basis_per_degree: Vec<Vec<GradedElement>>,
}

impl InvariantRing {
    pub fn new(group: &MatrixGroup, degree_bound: u32) -> Result<Self> {
        group.check_coprime()?;
        let algebra = algebra_of(group)?;
        let basis_per_degree = exec::map_range(degree_bound as usize + 1, |d| invariant_basis(group, d as u32))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Ok(InvariantRing { algebra, group: group.clone(), degree_bound, basis_per_degree })
    }

    pub fn algebra(&self) -> AlgebraPresentation {
        self.algebra
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn basis(&self, d: u32) -> Result<&[GradedElement]> {
        self.basis_per_degree
            .get(d as usize)
            .map(Vec::as_slice)
            .ok_or(Error::DegreeBoundExceeded { degree: d, bound: self.degree_bound })
    }

    pub fn bases(&self) -> &[Vec<GradedElement>] {
        &self.basis_per_degree
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.basis_per_degree.iter().map(Vec::len).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.to_json(),
            "max_degree": self.degree_bound,
            "dimensions": self.dimensions(),
            "bases": self.basis_per_degree.iter().map(|b| b.iter().map(GradedElement::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// The splitting `t*` under test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    /// `(1/|W|) Σ_w w`.
    Reynolds,
    /// The averaging operator with the leading monomial of every output of
    /// two or more terms removed; a deliberately broken control.
    DropLeadingTerm,
}

/// Averaging images of all monomials up to a bound, applied by linearity.
struct SplittingTable {
    splitting: Splitting,
    images: Vec<BTreeMap<Monomial, GradedElement>>,
}

impl SplittingTable {
    fn new(group: &MatrixGroup, alg: AlgebraPresentation, bound: u32, splitting: Splitting) -> Result<Self> {
        let images = exec::map_range(bound as usize + 1, |d| {
            alg.monomials(d as u32)
                .into_iter()
                .map(|m| {
                    let image = reynolds(group, &GradedElement::from_monomial(alg, m.clone(), 1))?;
                    Ok((m, image))
                })
                .collect::<Result<BTreeMap<_, _>>>()
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        Ok(SplittingTable { splitting, images })
    }

    fn apply(&self, e: &GradedElement) -> Result<GradedElement> {
        let table = &self.images[e.degree() as usize];
        let mut out = GradedElement::zero(e.algebra(), e.degree());
        for (m, &c) in e.terms() {
            out = out.add(&table[m].scale(c))?;
        }
        if self.splitting == Splitting::DropLeadingTerm && out.terms().len() >= 2 {
            let (m, c) = out.terms().iter().next_back().map(|(m, &c)| (m.clone(), c)).unwrap();
            let p = e.algebra().prime();
            out.add_term(m, p - c);
        }
        Ok(out)
    }
}

/// Outcome of one family of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub holds: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

impl PropertyCheck {
    fn merge(parts: Vec<(usize, Option<String>)>) -> Self {
        let checked = parts.iter().map(|(c, _)| c).sum();
        let witness = parts.into_iter().find_map(|(_, w)| w);
        PropertyCheck { holds: witness.is_none(), checked, witness }
    }
}

/// The splitting properties for `f* : H*(BV)^W → H*(BV)` and `t*`:
/// `t* f* = 1` (I), linearity over invariants (II), commuting with Steenrod
/// operations (III), and `f*` being a map of unstable algebras (IV).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohReport {
    pub prime: u32,
    pub rank: usize,
    pub group_order: usize,
    pub max_degree: u32,
    pub invariant_dimensions: Vec<usize>,
    pub coh_i: PropertyCheck,
    pub coh_ii: PropertyCheck,
    pub coh_iii: PropertyCheck,
    pub coh_iv: PropertyCheck,
    pub passed: bool,
}

/// Checks the splitting properties of the averaging operator in all degrees
/// up to `max_degree`.
pub fn verify_coh_properties(group: &MatrixGroup, max_degree: u32) -> Result<CohReport> {
    verify_coh_properties_with(group, max_degree, Splitting::Reynolds)
}

/// As [`verify_coh_properties`] for a chosen splitting. Every instance with
/// source and target degree at most `max_degree` is checked.
pub fn verify_coh_properties_with(group: &MatrixGroup, max_degree: u32, splitting: Splitting) -> Result<CohReport> {
    let ring = InvariantRing::new(group, max_degree)?;
    let alg = ring.algebra();
    let p = alg.prime();
    let table = SplittingTable::new(group, alg, max_degree, splitting)?;
    let t = |e: &GradedElement| table.apply(e);
    let degrees = max_degree as usize + 1;
    let monomials: Vec<Vec<GradedElement>> = (0..degrees)
        .map(|d| alg.monomials(d as u32).into_iter().map(|m| GradedElement::from_monomial(alg, m, 1)).collect())
        .collect();
    let per_degree = |f: &(dyn Fn(u32) -> Result<(usize, Option<String>)> + Sync)| -> Result<PropertyCheck> {
        let parts = exec::map_range(degrees, |d| f(d as u32)).into_iter().collect::<Result<Vec<_>>>()?;
        Ok(PropertyCheck::merge(parts))
    };

    let coh_i = per_degree(&|d| {
        let mut checked = 0;
        for a in ring.basis(d)? {
            checked += 1;
            let ta = t(a)?;
            if ta != *a {
                return Ok((checked, Some(format!("t*(f*({a})) = {ta} in degree {d}"))));
            }
        }
        Ok((checked, None))
    })?;

    let coh_ii = per_degree(&|d1| {
        let mut checked = 0;
        for a in ring.basis(d1)? {
            for d2 in 0..=max_degree - d1 {
                for b in &monomials[d2 as usize] {
                    checked += 1;
                    let lhs = t(&a.mul(b)?)?;
                    let rhs = a.mul(&t(b)?)?;
                    if lhs != rhs {
                        return Ok((checked, Some(format!("a = {a}, b = {b}: t*(a·b) = {lhs} but a·t*(b) = {rhs}"))));
                    }
                }
            }
        }
        Ok((checked, None))
    })?;

    let coh_iii = per_degree(&|d| {
        let mut checked = 0;
        for b in &monomials[d as usize] {
            for op in SteenrodOp::nontrivial_up_to(p, d, max_degree) {
                checked += 1;
                let lhs = t(&steenrod(op, b)?)?;
                let rhs = steenrod(op, &t(b)?)?;
                if lhs != rhs {
                    return Ok((checked, Some(format!("{op} on {b}: t*({op} b) = {lhs} but {op} t*(b) = {rhs}"))));
                }
            }
        }
        Ok((checked, None))
    })?;

    let coh_iv = per_degree(&|d1| {
        let mut checked = 0;
        for a in ring.basis(d1)? {
            for d2 in d1..=max_degree - d1 {
                for b in ring.basis(d2)? {
                    checked += 1;
                    let ab = a.mul(b)?;
                    if !is_invariant(group, &ab)? {
                        return Ok((checked, Some(format!("product {a} · {b} = {ab} is not invariant"))));
                    }
                }
            }
            for op in SteenrodOp::nontrivial_up_to(p, d1, max_degree) {
                checked += 1;
                let image = steenrod(op, a)?;
                if !is_invariant(group, &image)? {
                    return Ok((checked, Some(format!("{op}({a}) = {image} is not invariant"))));
                }
            }
        }
        Ok((checked, None))
    })?;

    let passed = coh_i.holds && coh_ii.holds && coh_iii.holds && coh_iv.holds;
    Ok(CohReport {
        prime: p,
        rank: alg.rank(),
        group_order: group.order(),
        max_degree,
        invariant_dimensions: ring.dimensions(),
        coh_i,
        coh_ii,
        coh_iii,
        coh_iv,
        passed,
    })
}

/// Every monomial of `H*(BV)` in degrees `0..=bound`.
pub fn full_cohomology(alg: AlgebraPresentation, bound: u32) -> Vec<Vec<GradedElement>> {
    (0..=bound)
        .map(|d| alg.monomials(d).into_iter().map(|m| GradedElement::from_monomial(alg, m, 1)).collect())
        .collect()
}

fn span_in_degree(alg: AlgebraPresentation, d: u32, elements: &[GradedElement]) -> (Vec<Monomial>, Subspace) {
    let monos = alg.monomials(d);
    let vectors = elements.iter().map(|e| e.to_vector(&monos)).collect();
    let span = Subspace::new(alg.prime() as u64, monos.len(), vectors);
    (monos, span)
}

/// `θ̃R` for a subalgebra `R ⊆ H*(BV)` given by spanning sets in degrees
/// `0..=D`: the intersection with `F_p[x_1..x_n]` at odd `p`, and `R`
/// itself at `p = 2`. Output bases are in reduced echelon form.
pub fn theta_tilde(alg: AlgebraPresentation, bases: &[Vec<GradedElement>]) -> Result<Vec<Vec<GradedElement>>> {
    for (d, basis) in bases.iter().enumerate() {
        if let Some(e) = basis.iter().find(|e| e.algebra() != alg || e.degree() != d as u32) {
            return Err(Error::NotSubalgebra(format!("{e} listed in degree {d}")));
        }
    }
    let spans: Vec<(Vec<Monomial>, Subspace)> =
        bases.iter().enumerate().map(|(d, b)| span_in_degree(alg, d as u32, b)).collect();
    match spans.first() {
        Some((monos, span)) if span.contains(&alg.one().to_vector(monos)) => {}
        _ => return Err(Error::NotSubalgebra("1 is missing".into())),
    }
    let bound = bases.len() - 1;
    let closure = exec::map_range(bound + 1, |d1| -> Result<()> {
        for d2 in d1..=bound.saturating_sub(d1) {
            let (monos, span) = &spans[d1 + d2];
            for a in &bases[d1] {
                for b in &bases[d2] {
                    let ab = a.mul(b)?;
                    if !span.contains(&ab.to_vector(monos)) {
                        return Err(Error::NotSubalgebra(format!("{a} · {b} = {ab} leaves the span in degree {}", d1 + d2)));
                    }
                }
            }
        }
        Ok(())
    });
    closure.into_iter().collect::<Result<Vec<_>>>()?;
    let p = alg.prime() as u64;
    Ok(spans
        .iter()
        .enumerate()
        .map(|(d, (monos, span))| {
            if !alg.is_odd() {
                return elements_from_rows(alg, d as u32, monos, span.rows());
            }
            let rows = span.rows();
            let exterior: Vec<usize> = (0..monos.len()).filter(|&i| !monos[i].is_polynomial()).collect();
            let equations: Vec<Vec<u64>> = exterior.iter().map(|&i| rows.iter().map(|r| r[i]).collect()).collect();
            let combos = nullspace_mod_p(&equations, rows.len(), p);
            let vectors = combos
                .iter()
                .map(|c| {
                    (0..monos.len())
                        .map(|i| c.iter().zip(rows).map(|(&ci, r)| ci * r[i] % p).sum::<u64>() % p)
                        .collect()
                })
                .collect();
            let part = Subspace::new(p, monos.len(), vectors);
            elements_from_rows(alg, d as u32, monos, part.rows())
        })
        .collect())
}

/// Spanning data for one degree of a generation certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCertificate {
    pub degree: u32,
    pub module_dimension: usize,
    /// Dimension spanned by products of lower generators with the ring.
    pub spanned_by_lower: usize,
    pub new_generators: usize,
}

/// Module generators of `θ̃H*(BV)` over `θ̃(H*(BV)^W)` up to a degree bound.
#[derive(Clone, Debug)]
pub struct GenerationWitness {
    pub max_degree: u32,
    pub generators: Vec<GradedElement>,
    pub certificate: Vec<DegreeCertificate>,
    /// No generator above half the bound; otherwise the bound may be too
    /// small to see the generating set stabilize.
    pub stabilized: bool,
}

impl GenerationWitness {
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(GradedElement::degree).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_degree": self.max_degree,
            "generator_degrees": self.generator_degrees(),
            "generators": self.generators.iter().map(GradedElement::to_json).collect::<Vec<_>>(),
            "certificate": self.certificate,
            "stabilized": self.stabilized,
        })
    }
}

/// Greedy degreewise spanning of `θ̃H*(BV)` by products of the ring
/// `θ̃(H*(BV)^W)` with generators found so far; monomials outside the span
/// become new generators.
pub fn finite_generation_witness(group: &MatrixGroup, max_degree: u32) -> Result<GenerationWitness> {
    let ring = InvariantRing::new(group, max_degree)?;
    let alg = ring.algebra();
    let theta_ring = theta_tilde(alg, ring.bases())?;
    let p = alg.prime() as u64;
    let mut generators: Vec<GradedElement> = Vec::new();
    let mut certificate = Vec::new();
    for d in 0..=max_degree {
        let monos = if alg.is_odd() { alg.polynomial_monomials(d) } else { alg.monomials(d) };
        let mut vectors = Vec::new();
        for g in &generators {
            for r in &theta_ring[(d - g.degree()) as usize] {
                vectors.push(r.mul(g)?.to_vector(&monos));
            }
        }
        let mut span = Subspace::new(p, monos.len(), vectors);
        let spanned_by_lower = span.rank();
        let mut new_generators = 0;
        for (i, m) in monos.iter().enumerate() {
            let mut unit = vec![0; monos.len()];
            unit[i] = 1;
            if !span.contains(&unit) {
                span.insert(unit);
                generators.push(GradedElement::from_monomial(alg, m.clone(), 1));
                new_generators += 1;
            }
        }
        if span.rank() != monos.len() {
            return Err(Error::InvalidModule(format!("degree {d} not spanned")));
        }
        certificate.push(DegreeCertificate { degree: d, module_dimension: monos.len(), spanned_by_lower, new_generators });
    }
    let stabilized = generators.iter().all(|g| 2 * g.degree() <= max_degree);
    Ok(GenerationWitness { max_degree, generators, certificate, stabilized })
}
