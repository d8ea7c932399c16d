//! Centric linking systems of finite groups.
//!
//! A morphism `P → Q` is a coset `g·C'_G(P)` with `gPg⁻¹ ≤ Q`, stored by
//! its least element. Composition multiplies representatives and
//! re-canonicalizes.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec;
use crate::fusion::{fusion_of_group, FusionSystem, SaturationReport};
use crate::group::{p_part, AbelianInvariants, Elem, GModule, Group, GroupHom, Subgroup};

#[derive(Clone)]
pub struct LinkingSystem {
    fusion: FusionSystem,
    group: Arc<Group>,
    /// Indices into `fusion.subgroups()`.
    objects: Vec<usize>,
    /// `C'_G(P)` for each object.
    c_prime: Vec<Subgroup>,
    /// Canonical coset representatives, indexed by `a * m + b`.
    morphisms: Vec<BTreeSet<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub domain: usize,
    pub codomain: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub holds: bool,
    /// Number of instances checked.
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl AxiomReport {
    fn from_results(results: Vec<(usize, Option<Counterexample>)>) -> Self {
        let checked = results.iter().map(|r| r.0).sum();
        let counterexample = results.into_iter().find_map(|r| r.1);
        AxiomReport { holds: counterexample.is_none(), checked, counterexample }
    }
}

impl LinkingSystem {
    pub fn fusion(&self) -> &FusionSystem {
        &self.fusion
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// Objects as subgroups of `S`.
    pub fn objects(&self) -> Vec<Subgroup> {
        self.objects.iter().map(|&i| self.fusion.subgroups()[i].clone()).collect()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn object(&self, a: usize) -> &Subgroup {
        &self.fusion.subgroups()[self.objects[a]]
    }

    pub fn p_prime_centralizer(&self, a: usize) -> &Subgroup {
        &self.c_prime[a]
    }

    /// Canonical representatives of `Mor(objects[a], objects[b])`.
    pub fn morphisms(&self, a: usize, b: usize) -> &BTreeSet<Elem> {
        &self.morphisms[a * self.objects.len() + b]
    }

    /// Deletes a morphism; used to build corrupted inputs.
    pub fn remove_morphism(&mut self, a: usize, b: usize, rep: Elem) -> bool {
        let m = self.objects.len();
        self.morphisms[a * m + b].remove(&rep)
    }

    /// Least element of `g·C'_G(P)`.
    pub fn canonical(&self, a: usize, g: Elem) -> Elem {
        self.c_prime[a].elements().iter().map(|&c| self.group.mul(g, c)).min().unwrap()
    }

    /// `f ∘ e` for `e: P_a → P_b` and `f: P_b → P_c`.
    pub fn compose(&self, a: usize, f: Elem, e: Elem) -> Elem {
        self.canonical(a, self.group.mul(f, e))
    }

    /// `δ_P(g)` for `g ∈ P`.
    pub fn delta(&self, a: usize, g: Elem) -> Elem {
        self.canonical(a, g)
    }

    /// `π(f)` as image tuple aligned with the elements of `P_a`.
    pub fn pi(&self, a: usize, f: Elem) -> Vec<Elem> {
        self.object(a).elements().iter().map(|&x| self.group.conj(f, x)).collect()
    }

    /// (A): `Z(P)` acts freely on `Mor(P, Q)` by precomposition and `π`
    /// induces a bijection `Mor(P, Q)/Z(P) → Hom_F(P, Q)`.
    pub fn verify_axiom_a(&self) -> AxiomReport {
        let m = self.objects.len();
        let results = exec::map_range(m * m, |idx| {
            let (a, b) = (idx / m, idx % m);
            let p = self.object(a);
            let z = p.center();
            let mor = self.morphisms(a, b);
            let fail = |detail: String| Some(Counterexample { domain: a, codomain: b, detail });
            let mut fibers: BTreeMap<Vec<Elem>, BTreeSet<Elem>> = BTreeMap::new();
            for &f in mor {
                let orbit: BTreeSet<Elem> = z.elements().iter().map(|&x| self.compose(a, f, self.delta(a, x))).collect();
                if orbit.len() != z.order() {
                    return (mor.len(), fail(format!("Z(P) orbit of size {} not {}", orbit.len(), z.order())));
                }
                if let Some(&missing) = orbit.iter().find(|o| !mor.contains(o)) {
                    return (mor.len(), fail(format!("Z(P) moves a morphism outside Mor(P,Q): {}", self.group.element(missing))));
                }
                fibers.entry(self.pi(a, f)).or_default().insert(f);
            }
            let homs = self.fusion.hom_images(self.objects[a], self.objects[b]);
            if fibers.keys().ne(homs.iter()) {
                return (
                    mor.len(),
                    fail(format!("π hits {} of {} morphisms in Hom_F(P,Q)", fibers.len(), homs.len())),
                );
            }
            if let Some(bad) = fibers.values().find(|f| f.len() != z.order()) {
                return (mor.len(), fail(format!("π fiber of size {} but |Z(P)| = {}", bad.len(), z.order())));
            }
            (mor.len(), None)
        });
        AxiomReport::from_results(results)
    }

    /// (B): `π(δ_P(g)) = c_g` for every `g ∈ P`.
    pub fn verify_axiom_b(&self) -> AxiomReport {
        let results = exec::map_range(self.objects.len(), |a| {
            let p = self.object(a);
            for &g in p.elements() {
                let c: Vec<Elem> = p.elements().iter().map(|&x| self.group.conj(g, x)).collect();
                if self.pi(a, self.delta(a, g)) != c || !self.morphisms(a, a).contains(&self.delta(a, g)) {
                    let detail = format!("π(δ({})) ≠ c_g", self.group.element(g));
                    return (p.order(), Some(Counterexample { domain: a, codomain: a, detail }));
                }
            }
            (p.order(), None)
        });
        AxiomReport::from_results(results)
    }

    /// (C): `f ∘ δ_P(g) = δ_Q(π(f)(g)) ∘ f` for all `f ∈ Mor(P, Q)`, `g ∈ P`.
    pub fn verify_axiom_c(&self) -> AxiomReport {
        let m = self.objects.len();
        let results = exec::map_range(m * m, |idx| {
            let (a, b) = (idx / m, idx % m);
            let p = self.object(a);
            let mut checked = 0;
            for &f in self.morphisms(a, b) {
                let image = self.pi(a, f);
                for (k, &g) in p.elements().iter().enumerate() {
                    checked += 1;
                    let left = self.compose(a, f, self.delta(a, g));
                    let right = self.compose(a, self.delta(b, image[k]), f);
                    if left != right {
                        let detail = format!(
                            "square fails for f = {}, g = {}",
                            self.group.element(f),
                            self.group.element(g)
                        );
                        return (checked, Some(Counterexample { domain: a, codomain: b, detail }));
                    }
                }
            }
            (checked, None)
        });
        AxiomReport::from_results(results)
    }

    /// Checks that composition does not depend on coset representatives.
    pub fn composition_well_defined(&self) -> bool {
        let m = self.objects.len();
        (0..m).all(|a| {
            (0..m).all(|b| {
                (0..m).all(|c| {
                    self.morphisms(a, b).iter().all(|&e| {
                        self.morphisms(b, c).iter().all(|&f| {
                            let base = self.compose(a, f, e);
                            self.morphisms(a, c).contains(&base)
                                && self.c_prime[a].elements().iter().all(|&x| {
                                    self.c_prime[b].elements().iter().all(|&y| {
                                        let e2 = self.group.mul(e, x);
                                        let f2 = self.group.mul(f, y);
                                        self.compose(a, f2, e2) == base
                                    })
                                })
                        })
                    })
                })
            })
        })
    }

    /// Category data: objects, coset representatives, δ and π tables.
    pub fn to_json(&self) -> Value {
        let g = &self.group;
        let name = |x: Elem| g.element(x).to_string();
        let m = self.objects.len();
        let objects: Vec<Value> = (0..m)
            .map(|a| {
                let p = self.object(a);
                json!({
                    "subgroup_index": self.objects[a],
                    "generators": p.generators().into_iter().map(name).collect::<Vec<_>>(),
                    "p_prime_centralizer_order": self.c_prime[a].order(),
                    "delta": p.elements().iter().map(|&x| json!([name(x), name(self.delta(a, x))])).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut morphisms = Vec::new();
        for a in 0..m {
            let gens = self.object(a).generators();
            let pos: Vec<usize> = gens.iter().map(|&x| self.object(a).position(x).unwrap()).collect();
            for b in 0..m {
                let list: Vec<Value> = self
                    .morphisms(a, b)
                    .iter()
                    .map(|&f| {
                        let im = self.pi(a, f);
                        json!({
                            "representative": name(f),
                            "coset_size": self.c_prime[a].order(),
                            "pi": pos.iter().map(|&k| name(im[k])).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                if !list.is_empty() {
                    morphisms.push(json!({ "domain": a, "codomain": b, "morphisms": list }));
                }
            }
        }
        json!({ "prime": self.fusion.prime(), "objects": objects, "morphisms": morphisms })
    }
}

impl std::fmt::Debug for LinkingSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinkingSystem({} objects)", self.objects.len())
    }
}

/// `L_S^c(G)` for a Sylow `p`-subgroup `S` of `G`.
pub fn linking_of_group(g: &Arc<Group>, s: &Subgroup, p: u32) -> Result<LinkingSystem> {
    if s.order() != p_part(g.order(), p) || !s.is_p_group(p) {
        return Err(Error::NotSylow { p });
    }
    let fusion = fusion_of_group(g, s, p)?;
    let f_centric: BTreeSet<usize> =
        fusion.centric_subgroups().iter().map(|h| fusion.index_of(h).unwrap()).collect();
    let mut objects = Vec::new();
    let mut c_prime = Vec::new();
    for (i, h) in fusion.subgroups().iter().enumerate() {
        let p_centric = g.is_p_centric(h, p)?;
        if p_centric != f_centric.contains(&i) {
            return Err(Error::MalformedFusionSystem(format!(
                "p-centric and F-centric disagree at subgroup {i}"
            )));
        }
        if p_centric {
            objects.push(i);
            c_prime.push(g.p_prime_centralizer(h, p)?);
        }
    }
    let m = objects.len();
    let mut l = LinkingSystem { fusion, group: g.clone(), objects, c_prime, morphisms: Vec::new() };
    l.morphisms = exec::map_range(m * m, |idx| {
        let (a, b) = (idx / m, idx % m);
        g.transporter(l.object(a), l.object(b))
            .expect("subgroups of G")
            .into_iter()
            .map(|x| l.canonical(a, x))
            .collect()
    });
    Ok(l)
}

#[derive(Debug, Clone, Serialize)]
pub struct PlfgReport {
    pub prime: u32,
    pub sylow_order: usize,
    pub objects: usize,
    pub saturation: SaturationReport,
    pub axiom_a: AxiomReport,
    pub axiom_b: AxiomReport,
    pub axiom_c: AxiomReport,
    pub passed: bool,
}

/// Checks that `(S, F_S(G), L_S^c(G))` is a p-local finite group.
pub fn verify_plfg(g: &Arc<Group>, p: u32) -> Result<PlfgReport> {
    let s = g.sylow(p)?;
    let l = linking_of_group(g, &s, p)?;
    let saturation = l.fusion.is_saturated()?;
    let axiom_a = l.verify_axiom_a();
    let axiom_b = l.verify_axiom_b();
    let axiom_c = l.verify_axiom_c();
    let passed = saturation.saturated && axiom_a.holds && axiom_b.holds && axiom_c.holds;
    Ok(PlfgReport {
        prime: p,
        sylow_order: s.order(),
        objects: l.object_count(),
        saturation,
        axiom_a,
        axiom_b,
        axiom_c,
        passed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    pub h2: AbelianInvariants,
    pub vanishes: bool,
}

/// `H²(W; S)` for abelian `S` and a p'-group `W ≤ Aut(S)`.
pub fn obstruction_vanishing(w: &[GroupHom], s: &Arc<Group>, p: u32) -> Result<ObstructionReport> {
    crate::group::check_prime(p)?;
    if !s.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if w.len().is_multiple_of(p as usize) {
        return Err(Error::PrimeDividesOrder { p, order: w.len() });
    }
    let module = GModule::from_automorphisms(w, s)?;
    let h2 = crate::group::group_cohomology(&module, 2)?;
    Ok(ObstructionReport { vanishes: h2.is_trivial(), h2 })
}
