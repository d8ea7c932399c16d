//! Automorphism groups and semidirect products.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::hom::extend_on_generators;
use super::{Elem, Group, GroupHom, Perm, Subgroup};
use crate::error::{Error, Result};

/// All automorphisms of `s`, sorted by image tuple.
pub fn automorphisms(s: &Arc<Group>) -> Result<Vec<GroupHom>> {
    if s.order() > s.order_bound() {
        return Err(Error::OrderBoundExceeded { bound: s.order_bound() });
    }
    let whole = s.whole();
    let gens = whole.generators();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let o = s.element_order(g);
            (0..s.order() as Elem).filter(|&x| s.element_order(x) == o).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let imgs: Vec<Elem> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
        if let Some(images) = extend_on_generators(s, &whole, s, &gens, &imgs) {
            let distinct: BTreeSet<Elem> = images.iter().copied().collect();
            if distinct.len() == images.len() {
                out.push(GroupHom::from_parts(whole.clone(), whole.clone(), images));
            }
        }
        for k in (0..choice.len()).rev() {
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        break;
    }
    out.sort();
    Ok(out)
}

/// An automorphism of `s` as a permutation of the element indices of `s`.
pub(crate) fn aut_to_perm(a: &GroupHom) -> Perm {
    Perm::from_images(a.images().to_vec()).expect("automorphism is a bijection")
}

/// The permutation group of degree |S| formed by a closed set of automorphisms.
pub(crate) fn aut_set_group(s: &Arc<Group>, auts: &[GroupHom]) -> Result<Arc<Group>> {
    let perms: Vec<Perm> = auts.iter().map(aut_to_perm).collect();
    let set: BTreeSet<&Perm> = perms.iter().collect();
    for a in &perms {
        for b in &perms {
            if !set.contains(&a.compose(b)) {
                return Err(Error::NotClosed);
            }
        }
    }
    if !set.contains(&Perm::identity(s.order())) {
        return Err(Error::NotClosed);
    }
    Group::from_elements(s.order(), perms)
}

/// The subgroup of `Aut(S)` generated by `gens`, sorted by image tuple.
pub fn generated_automorphisms(s: &Arc<Group>, gens: &[GroupHom]) -> Result<Vec<GroupHom>> {
    for a in gens {
        if a.domain().group() != s || a.domain().order() != s.order() || a.codomain().order() != s.order() || !a.is_injective() {
            return Err(Error::GroupMismatch("generators must be automorphisms of S".into()));
        }
    }
    let perms: Vec<Perm> = gens.iter().map(aut_to_perm).collect();
    let w = Group::with_bound(s.order(), perms, s.order_bound().max(s.order()))?;
    let mut out = auts_of_subgroup(s, &w.whole());
    out.sort();
    Ok(out)
}

/// Aut(S) as a permutation group on the element indices of `s`.
pub fn automorphism_group(s: &Arc<Group>) -> Result<Arc<Group>> {
    aut_set_group(s, &automorphisms(s)?)
}

/// Converts a subgroup of [`automorphism_group`] back into automorphisms.
pub(crate) fn auts_of_subgroup(s: &Arc<Group>, w: &Subgroup) -> Vec<GroupHom> {
    let whole = s.whole();
    w.elements()
        .iter()
        .map(|&e| {
            let images = w.group().element(e).images().to_vec();
            GroupHom::from_parts(whole.clone(), whole.clone(), images)
        })
        .collect()
}

/// `W ⋉ S` realized on the elements of `S`: `s` acts by left translation,
/// `w ∈ W` by applying the automorphism.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub group: Arc<Group>,
    /// Element of `group` for each element of `S` (left translation).
    pub embedding: Vec<Elem>,
    /// Element of `group` for each automorphism in the order given.
    pub complement: Vec<Elem>,
}

impl SemidirectProduct {
    /// The copy of `S` inside the product.
    pub fn normal_subgroup(&self) -> Subgroup {
        self.group
            .subgroup_from_elements(self.embedding.clone())
            .expect("translations form a subgroup")
    }
}

pub fn semidirect_product(w: &[GroupHom], s: &Arc<Group>) -> Result<SemidirectProduct> {
    for a in w {
        if a.domain().group() != s || a.domain().order() != s.order() || !a.is_injective() {
            return Err(Error::GroupMismatch("W must consist of automorphisms of S".into()));
        }
    }
    let w_group = aut_set_group(s, w)?;
    let n = s.order();
    let translation = |x: Elem| -> Perm {
        Perm::from_images((0..n as Elem).map(|y| s.mul(x, y)).collect()).unwrap()
    };
    let mut gens: Vec<Perm> = s.whole().generators().into_iter().map(translation).collect();
    gens.extend(w_group.generators().iter().cloned());
    let group = Group::with_bound(n, gens, s.order_bound().max(n * w.len()))?;
    let embedding = (0..n as Elem)
        .map(|x| group.index_of(&translation(x)).expect("translation in product"))
        .collect();
    let complement = w
        .iter()
        .map(|a| group.index_of(&aut_to_perm(a)).expect("automorphism in product"))
        .collect();
    Ok(SemidirectProduct { group, embedding, complement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;

    #[test]
    fn automorphism_counts() {
        let v4 = parse_group("(1 2)(3 4); (1 3)(2 4)", 4).unwrap();
        let z3 = parse_group("(1 2 3)", 3).unwrap();
        let z2 = parse_group("(1 2)", 2).unwrap();
        assert_eq!(automorphisms(&v4).unwrap().len(), 6);
        assert_eq!(automorphisms(&z3).unwrap().len(), 2);
        assert_eq!(automorphisms(&z2).unwrap().len(), 1);
        let d8 = parse_group("(1 2 3 4); (1 3)", 4).unwrap();
        assert_eq!(automorphisms(&d8).unwrap().len(), 8);
    }

    #[test]
    fn semidirect_examples() {
        let z3 = parse_group("(1 2 3)", 3).unwrap();
        let aut = automorphisms(&z3).unwrap();
        let sd = semidirect_product(&aut, &z3).unwrap();
        assert_eq!(sd.group.order(), 6);
        assert!(!sd.group.is_abelian());

        let id = vec![GroupHom::identity(&z3.whole())];
        assert_eq!(semidirect_product(&id, &z3).unwrap().group.order(), 3);

        let v4 = parse_group("(1 2)(3 4); (1 3)(2 4)", 4).unwrap();
        let aut_group = automorphism_group(&v4).unwrap();
        let c3 = aut_group.subgroups().unwrap().into_iter().find(|w| w.order() == 3).unwrap();
        let sd = semidirect_product(&auts_of_subgroup(&v4, &c3), &v4).unwrap();
        assert_eq!(sd.group.order(), 12);
        // A4 has no subgroup of order 6
        assert!(sd.group.subgroups().unwrap().iter().all(|h| h.order() != 6));
    }

    #[test]
    fn non_closed_w_is_rejected() {
        let v4 = parse_group("(1 2)(3 4); (1 3)(2 4)", 4).unwrap();
        let aut = automorphisms(&v4).unwrap();
        let order3 = aut
            .iter()
            .find(|a| {
                let p = aut_to_perm(a);
                p.compose(&p).compose(&p).is_identity() && !p.is_identity()
            })
            .unwrap()
            .clone();
        let w = vec![GroupHom::identity(&v4.whole()), order3];
        assert_eq!(semidirect_product(&w, &v4).unwrap_err(), Error::NotClosed);
    }
}
