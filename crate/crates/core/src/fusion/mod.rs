//! Fusion systems over finite p-groups.
//!
//! Morphism sets are stored extensionally: for every ordered pair of
//! subgroups `(P, Q)` of `S` the set of image tuples `φ(x)` aligned with
//! the sorted elements of `P`. Subgroups are referred to by their index in
//! the canonical subgroup list of `S`.

mod enumerate;
mod saturation;

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec;
use crate::group::{check_prime, Elem, Group, GroupHom, Subgroup};

pub use enumerate::{enumerate_saturated_fusion_systems, AbelianClassification};
pub use saturation::{AxiomIFailure, AxiomIIFailure, SaturationReport};

/// Where a fusion system came from.
#[derive(Debug, Clone)]
pub enum Origin {
    /// `F_S(H)` for a subgroup `H` of the parent group containing `S`.
    Group(Subgroup),
    /// `F_S(W ⋉ S)` for an abelian `S`, given by the automorphisms in `W`.
    Abelian(Vec<GroupHom>),
    Abstract,
}

#[derive(Clone)]
pub struct FusionSystem {
    p: u32,
    s: Subgroup,
    subgroups: Vec<Subgroup>,
    /// Indexed by `i * n + j` for the pair `(subgroups[i], subgroups[j])`.
    homs: Vec<BTreeSet<Vec<Elem>>>,
    origin: Origin,
}

/// A failed fusion-system axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub domain: usize,
    pub codomain: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Some `S`-conjugation is missing from `Hom_F(P, Q)`.
    MissingConjugation,
    NotHomomorphism,
    NotInjective,
    /// A morphism does not factor as an `F`-isomorphism followed by an inclusion.
    NoIsoFactorization,
    MissingIdentity,
    NotClosedUnderComposition,
    NotClosedUnderRestriction,
}

#[derive(Debug, Clone, Serialize)]
pub struct FusionCheck {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

fn check_p_subgroup(s: &Subgroup, p: u32) -> Result<()> {
    check_prime(p)?;
    if !s.is_p_group(p) {
        return Err(Error::NotPGroup { p });
    }
    Ok(())
}

impl FusionSystem {
    fn empty(p: u32, s: &Subgroup, origin: Origin) -> Result<Self> {
        let subgroups = s.subgroups()?;
        let n = subgroups.len();
        Ok(FusionSystem { p, s: s.clone(), subgroups, homs: vec![BTreeSet::new(); n * n], origin })
    }

    /// Fills every `Hom(P, Q)` from isomorphisms listed per domain.
    fn from_isos(p: u32, s: &Subgroup, isos: Vec<BTreeSet<Vec<Elem>>>, origin: Origin) -> Result<Self> {
        let mut f = Self::empty(p, s, origin)?;
        let n = f.subgroups.len();
        for (i, set) in isos.into_iter().enumerate() {
            for images in set {
                let image = f.image_index(&images).expect("image of an isomorphism is a subgroup");
                for k in 0..n {
                    if f.subgroups[image].is_subgroup_of(&f.subgroups[k]) {
                        f.homs[i * n + k].insert(images.clone());
                    }
                }
            }
        }
        Ok(f)
    }

    /// The smallest fusion system over `s` containing all `S`-conjugations
    /// and the given injective maps.
    pub fn generated_by(p: u32, s: &Subgroup, maps: &[GroupHom]) -> Result<Self> {
        check_p_subgroup(s, p)?;
        let base = Self::empty(p, s, Origin::Abstract)?;
        let mut seeds = Vec::new();
        for m in maps {
            if !m.is_injective() {
                return Err(Error::NotInjective);
            }
            let i = base.index_of(m.domain()).ok_or(Error::NotContained)?;
            if m.images().iter().any(|&y| !s.contains(y)) {
                return Err(Error::NotContained);
            }
            seeds.push((i, m.images().to_vec()));
        }
        let isos = base.close(seeds);
        Self::from_isos(p, s, isos, Origin::Abstract)
    }

    /// Closes `S`-conjugations plus `seeds` under inverses, restriction and
    /// composition of isomorphisms.
    fn close(&self, seeds: Vec<(usize, Vec<Elem>)>) -> Vec<BTreeSet<Vec<Elem>>> {
        let n = self.subgroups.len();
        let g = self.s.group();
        let subs_of: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&r| self.subgroups[r].is_subgroup_of(&self.subgroups[i])).collect())
            .collect();
        let mut isos: Vec<BTreeSet<Vec<Elem>>> = vec![BTreeSet::new(); n];
        let mut into: Vec<Vec<(usize, Vec<Elem>)>> = vec![Vec::new(); n];
        let mut queue: VecDeque<(usize, Vec<Elem>)> = VecDeque::new();
        for (i, p) in self.subgroups.iter().enumerate() {
            for &x in self.s.elements() {
                queue.push_back((i, p.elements().iter().map(|&y| g.conj(x, y)).collect()));
            }
        }
        queue.extend(seeds);
        while let Some((i, f)) = queue.pop_front() {
            if isos[i].contains(&f) {
                continue;
            }
            isos[i].insert(f.clone());
            let j = self.image_index(&f).expect("isomorphism image");
            into[j].push((i, f.clone()));
            let pi = &self.subgroups[i];
            let pj = &self.subgroups[j];
            let mut inv = vec![0; f.len()];
            for (k, &y) in f.iter().enumerate() {
                inv[pj.position(y).unwrap()] = pi.elements()[k];
            }
            queue.push_back((j, inv));
            for &r in &subs_of[i] {
                let restricted = self.subgroups[r].elements().iter().map(|&x| f[pi.position(x).unwrap()]).collect();
                queue.push_back((r, restricted));
            }
            for h in &isos[j] {
                queue.push_back((i, f.iter().map(|&y| h[pj.position(y).unwrap()]).collect()));
            }
            for (src, h) in &into[i] {
                queue.push_back((*src, h.iter().map(|&y| f[pi.position(y).unwrap()]).collect()));
            }
        }
        isos
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> &Subgroup {
        &self.s
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn index_of(&self, p: &Subgroup) -> Option<usize> {
        if p.group() != self.s.group() {
            return None;
        }
        self.subgroups.binary_search(p).ok()
    }

    /// Index of the subgroup with the given (unsorted) element set.
    pub(crate) fn find(&self, elements: &[Elem]) -> Option<usize> {
        let mut v = elements.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.len() != elements.len() {
            return None;
        }
        self.subgroups
            .binary_search_by(|h| (h.order(), h.elements()).cmp(&(v.len(), &v[..])))
            .ok()
    }

    fn image_index(&self, images: &[Elem]) -> Option<usize> {
        self.find(images)
    }

    /// Index of `S` itself.
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Image tuples of `Hom_F(subgroups[i], subgroups[j])`.
    pub fn hom_images(&self, i: usize, j: usize) -> &BTreeSet<Vec<Elem>> {
        &self.homs[i * self.subgroups.len() + j]
    }

    pub fn contains(&self, i: usize, j: usize, images: &[Elem]) -> bool {
        self.hom_images(i, j).contains(images)
    }

    /// `Hom_F(P, Q)` as group homomorphisms.
    pub fn homs(&self, p: &Subgroup, q: &Subgroup) -> Result<Vec<GroupHom>> {
        let i = self.index_of(p).ok_or(Error::NotContained)?;
        let j = self.index_of(q).ok_or(Error::NotContained)?;
        self
            .hom_images(i, j)
            .iter()
            .map(|im| GroupHom::new(p.clone(), q.clone(), im.clone()))
            .collect::<Result<Vec<_>>>()
    }

    /// `Aut_F(P)`.
    pub fn automorphisms(&self, p: &Subgroup) -> Result<Vec<GroupHom>> {
        self.homs(p, p)
    }

    pub fn morphism_count(&self) -> usize {
        self.homs.iter().map(BTreeSet::len).sum()
    }

    /// Adds a raw morphism without closing; used to build malformed inputs.
    pub fn insert_morphism(&mut self, i: usize, j: usize, images: Vec<Elem>) -> bool {
        let n = self.subgroups.len();
        self.homs[i * n + j].insert(images)
    }

    pub fn remove_morphism(&mut self, i: usize, j: usize, images: &[Elem]) -> bool {
        let n = self.subgroups.len();
        self.homs[i * n + j].remove(images)
    }

    /// Transports the system along an injective map `iso: S → S'`.
    pub fn transport(&self, iso: &GroupHom) -> Result<FusionSystem> {
        if iso.domain() != &self.s || !iso.is_injective() {
            return Err(Error::GroupMismatch("transport needs an injective map out of S".into()));
        }
        let target = iso.image();
        let mut out = Self::empty(self.p, &target, Origin::Abstract)?;
        let n = self.subgroups.len();
        let map = |x: Elem| iso.apply(x).expect("element of S");
        let new_index: Vec<usize> = self
            .subgroups
            .iter()
            .map(|h| out.find(&h.elements().iter().map(|&x| map(x)).collect::<Vec<_>>()).unwrap())
            .collect();
        for i in 0..n {
            let new_p = &out.subgroups[new_index[i]];
            for j in 0..n {
                for im in self.hom_images(i, j) {
                    let mut new_im = vec![0; im.len()];
                    for (k, &x) in self.subgroups[i].elements().iter().enumerate() {
                        new_im[new_p.position(map(x)).unwrap()] = map(im[k]);
                    }
                    let nn = out.subgroups.len();
                    out.homs[new_index[i] * nn + new_index[j]].insert(new_im);
                }
            }
        }
        Ok(out)
    }

    /// The morphism data, for equality and ordering of systems over the same `S`.
    pub fn key(&self) -> &[BTreeSet<Vec<Elem>>] {
        &self.homs
    }

    /// Partition of subgroup indices into `F`-isomorphism classes.
    pub fn f_conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.subgroups.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = (i..n)
                .filter(|&j| {
                    self.subgroups[j].order() == self.subgroups[i].order() && !self.hom_images(i, j).is_empty()
                })
                .collect();
            for &j in &members {
                class_of[j] = classes.len();
            }
            classes.push(members);
        }
        classes
    }

    /// The class of `subgroups[i]`.
    pub fn f_conjugates(&self, i: usize) -> Vec<usize> {
        let order = self.subgroups[i].order();
        (0..self.subgroups.len())
            .filter(|&j| self.subgroups[j].order() == order && !self.hom_images(i, j).is_empty())
            .collect()
    }

    pub(crate) fn centralizer_orders(&self) -> Vec<usize> {
        self.subgroups.iter().map(|h| self.s.centralizer_of(h).order()).collect()
    }

    pub(crate) fn normalizer_orders(&self) -> Vec<usize> {
        self.subgroups.iter().map(|h| self.s.normalizer_of(h).order()).collect()
    }

    pub fn is_fully_centralized(&self, p: &Subgroup) -> Result<bool> {
        let i = self.index_of(p).ok_or(Error::NotContained)?;
        let c = |j: usize| self.s.centralizer_of(&self.subgroups[j]).order();
        Ok(self.f_conjugates(i).into_iter().all(|j| c(i) >= c(j)))
    }

    pub fn is_fully_normalized(&self, p: &Subgroup) -> Result<bool> {
        let i = self.index_of(p).ok_or(Error::NotContained)?;
        let nz = |j: usize| self.s.normalizer_of(&self.subgroups[j]).order();
        Ok(self.f_conjugates(i).into_iter().all(|j| nz(i) >= nz(j)))
    }

    /// Subgroups `P` such that `C_S(P') ≤ P'` for every `F`-conjugate `P'`.
    pub fn centric_subgroups(&self) -> Vec<Subgroup> {
        let self_centralizing: Vec<bool> = self
            .subgroups
            .iter()
            .map(|h| self.s.centralizer_of(h).is_subgroup_of(h))
            .collect();
        (0..self.subgroups.len())
            .filter(|&i| self.f_conjugates(i).into_iter().all(|j| self_centralizing[j]))
            .map(|i| self.subgroups[i].clone())
            .collect()
    }

    /// Checks the fusion-system axioms, reporting every violation found.
    pub fn is_fusion_system(&self) -> FusionCheck {
        let n = self.subgroups.len();
        let g = self.s.group();
        let per_domain = exec::map_range(n, |i| {
            let mut out = Vec::new();
            let pi = &self.subgroups[i];
            let violation = |kind, j: usize, detail: String| Violation { kind, domain: i, codomain: j, detail };
            if !self.contains(i, i, pi.elements()) {
                out.push(violation(ViolationKind::MissingIdentity, i, "identity missing".into()));
            }
            for j in 0..n {
                let qj = &self.subgroups[j];
                for &x in self.s.elements() {
                    let c: Vec<Elem> = pi.elements().iter().map(|&y| g.conj(x, y)).collect();
                    if c.iter().all(|&y| qj.contains(y)) && !self.contains(i, j, &c) {
                        out.push(violation(
                            ViolationKind::MissingConjugation,
                            j,
                            format!("conjugation by {} missing", g.element(x)),
                        ));
                        break;
                    }
                }
                for im in self.hom_images(i, j) {
                    if im.len() != pi.order() || im.iter().any(|&y| !qj.contains(y)) {
                        out.push(violation(ViolationKind::NotHomomorphism, j, "image outside codomain".into()));
                        continue;
                    }
                    if GroupHom::new(pi.clone(), qj.clone(), im.clone()).is_err() {
                        out.push(violation(ViolationKind::NotHomomorphism, j, format!("{im:?}")));
                        continue;
                    }
                    let Some(k) = self.image_index(im) else {
                        out.push(violation(ViolationKind::NotInjective, j, format!("{im:?}")));
                        continue;
                    };
                    let pk = &self.subgroups[k];
                    let mut inv = vec![0; im.len()];
                    for (t, &y) in im.iter().enumerate() {
                        inv[pk.position(y).unwrap()] = pi.elements()[t];
                    }
                    if !self.contains(i, k, im) || !self.contains(k, i, &inv) {
                        out.push(violation(ViolationKind::NoIsoFactorization, j, format!("{im:?}")));
                    }
                    for r in 0..n {
                        let pr = &self.subgroups[r];
                        if r != i && pr.is_subgroup_of(pi) {
                            let res: Vec<Elem> =
                                pr.elements().iter().map(|&x| im[pi.position(x).unwrap()]).collect();
                            if !self.contains(r, j, &res) {
                                out.push(violation(
                                    ViolationKind::NotClosedUnderRestriction,
                                    j,
                                    format!("restriction to subgroup {r}"),
                                ));
                            }
                        }
                    }
                    for l in 0..n {
                        for psi in self.hom_images(j, l) {
                            if psi.len() != qj.order() {
                                continue;
                            }
                            let comp: Vec<Elem> = im.iter().map(|&y| psi[qj.position(y).unwrap()]).collect();
                            if !self.contains(i, l, &comp) {
                                out.push(violation(
                                    ViolationKind::NotClosedUnderComposition,
                                    l,
                                    format!("composite through subgroup {j}"),
                                ));
                            }
                        }
                    }
                }
            }
            out
        });
        let violations: Vec<Violation> = per_domain.into_iter().flatten().collect();
        FusionCheck { valid: violations.is_empty(), violations }
    }

    /// Serializes subgroups by canonical index and morphisms by generator images.
    pub fn to_json(&self) -> Value {
        let g = self.s.group();
        let name = |x: Elem| g.element(x).to_string();
        let subgroups: Vec<Value> = self
            .subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| {
                json!({
                    "index": i,
                    "order": h.order(),
                    "generators": h.generators().into_iter().map(name).collect::<Vec<_>>(),
                })
            })
            .collect();
        let n = self.subgroups.len();
        let mut morphisms = Vec::new();
        for i in 0..n {
            let pi = &self.subgroups[i];
            let gens = pi.generators();
            for j in 0..n {
                let set = self.hom_images(i, j);
                if set.is_empty() {
                    continue;
                }
                let maps: Vec<Vec<String>> = set
                    .iter()
                    .map(|im| gens.iter().map(|&x| name(im[pi.position(x).unwrap()])).collect())
                    .collect();
                morphisms.push(json!({ "domain": i, "codomain": j, "maps": maps }));
            }
        }
        json!({
            "prime": self.p,
            "order": self.s.order(),
            "subgroups": subgroups,
            "morphisms": morphisms,
        })
    }
}

impl PartialEq for FusionSystem {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.homs == other.homs
    }
}

impl Eq for FusionSystem {}

impl std::fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FusionSystem(p = {}, |S| = {}, {} subgroups, {} morphisms)",
            self.p,
            self.s.order(),
            self.subgroups.len(),
            self.morphism_count()
        )
    }
}

/// Morphisms induced by conjugation with elements of `h` on subgroups of `s`.
fn conjugation_isos(s: &Subgroup, subgroups: &[Subgroup], h: &Subgroup) -> Vec<BTreeSet<Vec<Elem>>> {
    let g = s.group();
    exec::map(subgroups, |p| {
        h.elements()
            .iter()
            .map(|&x| p.elements().iter().map(|&y| g.conj(x, y)).collect::<Vec<Elem>>())
            .filter(|im| im.iter().all(|&y| s.contains(y)))
            .collect()
    })
}

/// `F_S(G)`: morphisms are the conjugations by elements of `G`.
pub fn fusion_of_group(g: &Arc<Group>, s: &Subgroup, p: u32) -> Result<FusionSystem> {
    if s.group() != g {
        return Err(Error::NotContained);
    }
    fusion_of_subgroup(&g.whole(), s, p)
}

/// `F_S(H)` for a subgroup `H ≥ S` of the parent group.
pub fn fusion_of_subgroup(h: &Subgroup, s: &Subgroup, p: u32) -> Result<FusionSystem> {
    check_p_subgroup(s, p)?;
    if !s.is_subgroup_of(h) {
        return Err(Error::NotContained);
    }
    let subgroups = s.subgroups()?;
    let isos = conjugation_isos(s, &subgroups, h);
    FusionSystem::from_isos(p, s, isos, Origin::Group(h.clone()))
}

/// The inner fusion system `F_S(S)`.
pub fn inner_fusion(s: &Subgroup, p: u32) -> Result<FusionSystem> {
    fusion_of_subgroup(s, s, p)
}

/// `F_S(W ⋉ S)` for abelian `S`, built directly from the restrictions of `W`.
pub fn fusion_abelian(w: &[GroupHom], s: &Arc<Group>, p: u32) -> Result<FusionSystem> {
    check_prime(p)?;
    if !s.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let whole = s.whole();
    check_p_subgroup(&whole, p)?;
    crate::group::aut_set_group(s, w)?;
    if w.len().is_multiple_of(p as usize) {
        return Err(Error::PrimeDividesOrder { p, order: w.len() });
    }
    let subgroups = whole.subgroups()?;
    let isos: Vec<BTreeSet<Vec<Elem>>> = exec::map(&subgroups, |q| {
        w.iter()
            .map(|a| q.elements().iter().map(|&x| a.apply(x).unwrap()).collect())
            .collect()
    });
    FusionSystem::from_isos(p, &whole, isos, Origin::Abelian(w.to_vec()))
}

#[cfg(test)]
mod tests;
