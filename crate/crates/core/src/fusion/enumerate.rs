//! Classification of saturated fusion systems over small abelian p-groups,
//! computed twice: by exhaustive search and from subgroups of `Aut(S)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::{fusion_abelian, FusionSystem};
use crate::error::{Error, Result};
use crate::group::{automorphism_group, automorphisms, auts_of_subgroup, p_part, Elem, Group, GroupHom, Subgroup};

/// Largest `|S|` accepted by the exhaustive search.
pub const SEARCH_ORDER_LIMIT: usize = 8;
/// Node budget for the exhaustive search.
pub const SEARCH_NODE_LIMIT: usize = 2_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct AbelianClassification {
    pub prime: u32,
    #[serde(skip)]
    pub systems: Vec<FusionSystem>,
    /// `|W|` for the subgroup `W ≤ Aut(S)` realizing each system.
    pub w_orders: Vec<usize>,
    pub brute_force_count: usize,
    pub from_subgroups_count: usize,
    pub agree: bool,
    /// Number of systems up to transport along `Aut(S)`.
    pub up_to_isomorphism: usize,
    pub nodes_explored: usize,
}

/// All injective maps `P → S`, as image tuples aligned with `P`.
pub(crate) fn injective_maps(s: &Subgroup, p: &Subgroup) -> Vec<Vec<Elem>> {
    let g = s.group();
    let gens = p.generators();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| {
            let o = g.element_order(x);
            s.elements().iter().copied().filter(|&y| g.element_order(y) == o).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let imgs: Vec<Elem> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
        if let Some(images) = crate::group::extend_on_generators(g, p, g, &gens, &imgs) {
            let distinct: BTreeSet<Elem> = images.iter().copied().collect();
            if distinct.len() == images.len() {
                out.push(images);
            }
        }
        let mut k = choice.len();
        loop {
            if k == 0 {
                out.sort();
                out.dedup();
                return out;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

struct Search<'a> {
    base: &'a FusionSystem,
    candidates: Vec<(usize, Vec<Elem>)>,
    first_proper: usize,
    nodes: usize,
    found: Vec<FusionSystem>,
}

impl Search<'_> {
    fn run(
        &mut self,
        idx: usize,
        chosen: &mut Vec<(usize, Vec<Elem>)>,
        closure: &[BTreeSet<Vec<Elem>>],
        excluded: &mut Vec<usize>,
    ) -> Result<()> {
        self.nodes += 1;
        if self.nodes > SEARCH_NODE_LIMIT {
            return Err(Error::SearchBound(format!("more than {SEARCH_NODE_LIMIT} search nodes")));
        }
        let mut k = idx;
        while k < self.candidates.len() && closure[self.candidates[k].0].contains(&self.candidates[k].1) {
            k += 1;
        }
        let top = self.base.top();
        if k >= self.first_proper {
            // Aut_F(S) is now fixed; axiom I at S can be decided.
            let aut_f = closure[top].len();
            if p_part(aut_f, self.base.p) != self.base.aut_s_order_top() {
                return Ok(());
            }
        }
        if k == self.candidates.len() {
            let f = FusionSystem::from_isos(
                self.base.p,
                &self.base.s,
                closure.to_vec(),
                super::Origin::Abstract,
            )?;
            if f.is_saturated()?.saturated {
                self.found.push(f);
            }
            return Ok(());
        }
        chosen.push(self.candidates[k].clone());
        let next = self.base.close(chosen.clone());
        let allowed = excluded.iter().all(|&e| !next[self.candidates[e].0].contains(&self.candidates[e].1));
        if allowed {
            self.run(k + 1, chosen, &next, excluded)?;
        }
        chosen.pop();
        excluded.push(k);
        self.run(k + 1, chosen, closure, excluded)?;
        excluded.pop();
        Ok(())
    }
}

impl FusionSystem {
    fn aut_s_order_top(&self) -> usize {
        self.s.normalizer_of(&self.s).order() / self.s.centralizer_of(&self.s).order()
    }
}

/// Canonical representative key of `f` under transport along `Aut(S)`.
fn iso_class_key(f: &FusionSystem, auts: &[GroupHom]) -> Result<Vec<BTreeSet<Vec<Elem>>>> {
    let mut best: Option<Vec<BTreeSet<Vec<Elem>>>> = None;
    for a in auts {
        let t = f.transport(a)?;
        let key = t.key().to_vec();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    Ok(best.expect("Aut(S) contains the identity"))
}

/// Saturated fusion systems over the abelian p-group `s`.
///
/// The exhaustive search over morphism sets and the list
/// `{ F_S(W ⋉ S) : W ≤ Aut(S), p ∤ |W| }` are computed independently;
/// `agree` records whether they coincide exactly.
pub fn enumerate_saturated_fusion_systems(s: &Arc<Group>, p: u32) -> Result<AbelianClassification> {
    crate::group::check_prime(p)?;
    if !s.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if s.order() > SEARCH_ORDER_LIMIT {
        return Err(Error::SearchBound(format!("|S| = {} exceeds {SEARCH_ORDER_LIMIT}", s.order())));
    }
    let whole = s.whole();
    let base = FusionSystem::generated_by(p, &whole, &[])?;
    let top = base.top();
    let mut candidates: Vec<(usize, Vec<Elem>)> = Vec::new();
    let mut order: Vec<usize> = (0..base.subgroups.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(base.subgroups[i].order()), i));
    for &i in &order {
        for images in injective_maps(&whole, &base.subgroups[i]) {
            if !base.contains(i, top, &images) {
                candidates.push((i, images));
            }
        }
    }
    let first_proper = candidates.iter().position(|(i, _)| *i != top).unwrap_or(candidates.len());
    let initial: Vec<BTreeSet<Vec<Elem>>> = base.close(Vec::new());
    let mut search = Search { base: &base, candidates, first_proper, nodes: 0, found: Vec::new() };
    search.run(0, &mut Vec::new(), &initial, &mut Vec::new())?;
    let nodes = search.nodes;
    let mut brute = search.found;
    brute.sort_by(|a, b| a.key().cmp(b.key()));

    let aut_group = automorphism_group(s)?;
    let mut from_w: Vec<(FusionSystem, usize)> = Vec::new();
    for w in aut_group.subgroups()? {
        if w.order() % p as usize == 0 {
            continue;
        }
        let auts = auts_of_subgroup(s, &w);
        from_w.push((fusion_abelian(&auts, s, p)?, w.order()));
    }
    from_w.sort_by(|a, b| a.0.key().cmp(b.0.key()));

    let agree = brute.len() == from_w.len() && brute.iter().zip(&from_w).all(|(a, (b, _))| a == b);
    let auts = automorphisms(s)?;
    let mut classes = BTreeSet::new();
    for (f, _) in &from_w {
        classes.insert(iso_class_key(f, &auts)?);
    }
    Ok(AbelianClassification {
        prime: p,
        brute_force_count: brute.len(),
        from_subgroups_count: from_w.len(),
        agree,
        up_to_isomorphism: classes.len(),
        nodes_explored: nodes,
        w_orders: from_w.iter().map(|(_, o)| *o).collect(),
        systems: from_w.into_iter().map(|(f, _)| f).collect(),
    })
}
