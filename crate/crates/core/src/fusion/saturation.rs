//! Saturation axioms I and II, and the abelian simplification.

use std::collections::BTreeSet;

use serde::Serialize;

use super::FusionSystem;
use crate::error::{Error, Result};
use crate::exec;
use crate::group::{p_part, Elem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomIFailure {
    pub subgroup: usize,
    pub generators: Vec<String>,
    pub fully_centralized: bool,
    pub aut_s_order: usize,
    pub aut_f_order: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomIIFailure {
    pub domain: usize,
    /// Images of the domain's generators.
    pub images: Vec<String>,
    pub n_phi_order: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    pub saturated: bool,
    pub axiom_i_failures: Vec<AxiomIFailure>,
    pub axiom_ii_failures: Vec<AxiomIIFailure>,
}

impl FusionSystem {
    /// `Aut_S(P)` as image tuples: conjugations by `N_S(P)` restricted to `P`.
    fn aut_s(&self, i: usize) -> BTreeSet<Vec<Elem>> {
        let p = &self.subgroups[i];
        let g = self.s.group();
        self.s
            .normalizer_of(p)
            .elements()
            .iter()
            .map(|&x| p.elements().iter().map(|&y| g.conj(x, y)).collect())
            .collect()
    }

    fn fully_flags(&self) -> (Vec<bool>, Vec<bool>) {
        let c = self.centralizer_orders();
        let nz = self.normalizer_orders();
        let n = self.subgroups.len();
        let mut centralized = vec![false; n];
        let mut normalized = vec![false; n];
        for class in self.f_conjugacy_classes() {
            let max_c = class.iter().map(|&j| c[j]).max().unwrap();
            let max_n = class.iter().map(|&j| nz[j]).max().unwrap();
            for &j in &class {
                centralized[j] = c[j] == max_c;
                normalized[j] = nz[j] == max_n;
            }
        }
        (centralized, normalized)
    }

    /// Checks axioms I and II exhaustively.
    ///
    /// Axiom II uses `N_φ = { g ∈ N_S(P) : φ c_g φ⁻¹ ∈ Aut_S(φ(P)) }`.
    pub fn is_saturated(&self) -> Result<SaturationReport> {
        let check = self.is_fusion_system();
        if !check.valid {
            return Err(Error::MalformedFusionSystem(format!(
                "{} axiom violations, first: {:?}",
                check.violations.len(),
                check.violations[0]
            )));
        }
        let n = self.subgroups.len();
        let (centralized, normalized) = self.fully_flags();
        let g = self.s.group();
        let name = |x: Elem| g.element(x).to_string();

        let axiom_i_failures: Vec<AxiomIFailure> = (0..n)
            .filter(|&i| normalized[i])
            .filter_map(|i| {
                let aut_s = self.aut_s(i).len();
                let aut_f = self.hom_images(i, i).len();
                let sylow = aut_s == p_part(aut_f, self.p);
                if centralized[i] && sylow {
                    return None;
                }
                let reason = if !centralized[i] {
                    "fully normalized but not fully centralized".to_string()
                } else {
                    format!(
                        "Aut_S(P) has order {aut_s} but |Aut_F(P)| = {aut_f} with {}-part {}",
                        self.p,
                        p_part(aut_f, self.p)
                    )
                };
                Some(AxiomIFailure {
                    subgroup: i,
                    generators: self.subgroups[i].generators().into_iter().map(name).collect(),
                    fully_centralized: centralized[i],
                    aut_s_order: aut_s,
                    aut_f_order: aut_f,
                    reason,
                })
            })
            .collect();

        let top = self.top();
        let aut_s_all: Vec<BTreeSet<Vec<Elem>>> = (0..n).map(|i| self.aut_s(i)).collect();
        let axiom_ii_failures: Vec<AxiomIIFailure> = exec::map_range(n, |i| {
            let p = &self.subgroups[i];
            let mut out = Vec::new();
            for phi in self.hom_images(i, top) {
                let j = self.find(phi).expect("injective image");
                if !centralized[j] {
                    continue;
                }
                let q = &self.subgroups[j];
                // φ c_g φ⁻¹ on φ(P): φ(x) ↦ φ(g x g⁻¹)
                let n_phi: Vec<Elem> = self
                    .s
                    .normalizer_of(p)
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&x| {
                        let mut m = vec![0; q.order()];
                        for (k, &y) in p.elements().iter().enumerate() {
                            m[q.position(phi[k]).unwrap()] = phi[p.position(g.conj(x, y)).unwrap()];
                        }
                        aut_s_all[j].contains(&m)
                    })
                    .collect();
                let k = self.find(&n_phi).expect("N_φ is a subgroup");
                let nk = &self.subgroups[k];
                let extends = self.hom_images(k, top).iter().any(|psi| {
                    p.elements().iter().enumerate().all(|(t, &x)| psi[nk.position(x).unwrap()] == phi[t])
                });
                if !extends {
                    out.push(AxiomIIFailure {
                        domain: i,
                        images: p.generators().iter().map(|&x| name(phi[p.position(x).unwrap()])).collect(),
                        n_phi_order: nk.order(),
                        reason: format!("no extension to N_φ of order {}", nk.order()),
                    });
                }
            }
            out
        })
        .into_iter()
        .flatten()
        .collect();

        Ok(SaturationReport {
            saturated: axiom_i_failures.is_empty() && axiom_ii_failures.is_empty(),
            axiom_i_failures,
            axiom_ii_failures,
        })
    }

    /// Saturation for abelian `S`: `Aut_F(S)` is a p'-group and every
    /// morphism is a restriction of an element of `Aut_F(S)`.
    pub fn is_saturated_abelian(&self) -> Result<bool> {
        if !self.s.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let top = self.top();
        let auts = self.hom_images(top, top);
        if auts.len().is_multiple_of(self.p as usize) {
            return Ok(false);
        }
        let s = &self.s;
        Ok((0..self.subgroups.len()).all(|i| {
            let p = &self.subgroups[i];
            self.hom_images(i, top).iter().all(|phi| {
                auts.iter().any(|a| {
                    p.elements().iter().enumerate().all(|(t, &x)| a[s.position(x).unwrap()] == phi[t])
                })
            })
        }))
    }
}
