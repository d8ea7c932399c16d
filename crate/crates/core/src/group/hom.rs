use std::collections::VecDeque;
use std::fmt;

use super::{Elem, Group, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism between subgroups, stored as the image of every domain
/// element (aligned with `domain.elements()`), verified at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupHom {
    domain: Subgroup,
    codomain: Subgroup,
    images: Vec<Elem>,
}

impl GroupHom {
    /// Checks that `images` defines a homomorphism `domain → codomain`.
    pub fn new(domain: Subgroup, codomain: Subgroup, images: Vec<Elem>) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::NotHomomorphism("image list has the wrong length".into()));
        }
        if let Some(&bad) = images.iter().find(|&&y| !codomain.contains(y)) {
            return Err(Error::NotHomomorphism(format!("image {bad} outside codomain")));
        }
        let g = domain.group();
        let h = codomain.group();
        for (i, &a) in domain.elements().iter().enumerate() {
            for (j, &b) in domain.elements().iter().enumerate() {
                let ab = domain.position(g.mul(a, b)).expect("domain closed");
                if images[ab] != h.mul(images[i], images[j]) {
                    return Err(Error::NotHomomorphism(format!(
                        "f({}·{}) ≠ f({})·f({})",
                        g.element(a),
                        g.element(b),
                        g.element(a),
                        g.element(b)
                    )));
                }
            }
        }
        Ok(GroupHom { domain, codomain, images })
    }

    /// Extends generator images to the whole domain, checking every relation.
    pub fn from_generator_images(
        domain: Subgroup,
        codomain: Subgroup,
        gens: &[Elem],
        gen_images: &[Elem],
    ) -> Result<Self> {
        let images = extend_on_generators(domain.group(), &domain, codomain.group(), gens, gen_images)
            .ok_or_else(|| Error::NotHomomorphism("generator images violate a relation".into()))?;
        if domain.group().generate(gens) != domain.elements() {
            return Err(Error::NotHomomorphism("generators do not generate the domain".into()));
        }
        Self::new(domain, codomain, images)
    }

    /// Unchecked constructor for maps produced by trusted internal code.
    pub(crate) fn from_parts(domain: Subgroup, codomain: Subgroup, images: Vec<Elem>) -> Self {
        debug_assert_eq!(images.len(), domain.order());
        GroupHom { domain, codomain, images }
    }

    pub fn identity(p: &Subgroup) -> Self {
        GroupHom { domain: p.clone(), codomain: p.clone(), images: p.elements().to_vec() }
    }

    /// Inclusion `P → Q` for `P ≤ Q`.
    pub fn inclusion(p: &Subgroup, q: &Subgroup) -> Result<Self> {
        if !p.is_subgroup_of(q) {
            return Err(Error::NotContained);
        }
        Ok(GroupHom { domain: p.clone(), codomain: q.clone(), images: p.elements().to_vec() })
    }

    /// `c_g: P → Q, x ↦ g x g⁻¹`, requiring `gPg⁻¹ ≤ Q`.
    pub fn conjugation(g: Elem, p: &Subgroup, q: &Subgroup) -> Result<Self> {
        let grp = p.group();
        let images: Vec<Elem> = p.elements().iter().map(|&x| grp.conj(g, x)).collect();
        if images.iter().any(|&y| !q.contains(y)) {
            return Err(Error::NotContained);
        }
        Ok(GroupHom { domain: p.clone(), codomain: q.clone(), images })
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn codomain(&self) -> &Subgroup {
        &self.codomain
    }

    /// Images aligned with `domain().elements()`.
    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, x: Elem) -> Option<Elem> {
        self.domain.position(x).map(|i| self.images[i])
    }

    pub fn is_injective(&self) -> bool {
        let mut v = self.images.clone();
        v.sort_unstable();
        v.dedup();
        v.len() == self.images.len()
    }

    pub fn image(&self) -> Subgroup {
        let mut v = self.images.clone();
        v.sort_unstable();
        v.dedup();
        self.codomain
            .group()
            .subgroup_from_elements(v)
            .expect("image of a homomorphism is a subgroup")
    }

    /// Images of the domain's canonical generators.
    pub fn generator_images(&self) -> Vec<(Elem, Elem)> {
        self.domain
            .generators()
            .into_iter()
            .map(|g| (g, self.apply(g).expect("generator in domain")))
            .collect()
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.codomain.group() != self.domain.group() {
            return Err(Error::GroupMismatch("composition across different groups".into()));
        }
        let images = first
            .images
            .iter()
            .map(|&y| self.apply(y).ok_or(Error::NotContained))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupHom { domain: first.domain.clone(), codomain: self.codomain.clone(), images })
    }

    pub fn restrict(&self, sub: &Subgroup) -> Result<GroupHom> {
        if !sub.is_subgroup_of(&self.domain) {
            return Err(Error::NotContained);
        }
        let images = sub.elements().iter().map(|&x| self.apply(x).unwrap()).collect();
        Ok(GroupHom { domain: sub.clone(), codomain: self.codomain.clone(), images })
    }

    pub fn with_codomain(&self, codomain: &Subgroup) -> Result<GroupHom> {
        if self.images.iter().any(|&y| !codomain.contains(y)) {
            return Err(Error::NotContained);
        }
        Ok(GroupHom { domain: self.domain.clone(), codomain: codomain.clone(), images: self.images.clone() })
    }

    /// Inverse of an injective map onto its image.
    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_injective() {
            return Err(Error::NotInjective);
        }
        let img = self.image();
        let mut images = vec![0; img.order()];
        for (i, &y) in self.images.iter().enumerate() {
            images[img.position(y).unwrap()] = self.domain.elements()[i];
        }
        Ok(GroupHom { domain: img, codomain: self.domain.clone(), images })
    }
}

impl PartialOrd for GroupHom {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by domain, then lexicographically by image tuple.
impl Ord for GroupHom {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.domain
            .cmp(&other.domain)
            .then_with(|| self.images.cmp(&other.images))
            .then_with(|| self.codomain.cmp(&other.codomain))
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.domain.group();
        let h = self.codomain.group();
        let parts: Vec<String> = self
            .generator_images()
            .iter()
            .map(|&(a, b)| format!("{} ↦ {}", g.element(a), h.element(b)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Breadth-first extension of generator images; `None` if some relation fails.
pub(crate) fn extend_on_generators(
    g: &Group,
    domain: &Subgroup,
    h: &Group,
    gens: &[Elem],
    gen_images: &[Elem],
) -> Option<Vec<Elem>> {
    let mut img: Vec<Option<Elem>> = vec![None; domain.order()];
    let id_pos = domain.position(Group::IDENTITY)?;
    img[id_pos] = Some(Group::IDENTITY);
    let mut queue = VecDeque::from([Group::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        let fx = img[domain.position(x)?]?;
        for (&s, &fs) in gens.iter().zip(gen_images) {
            let y = g.mul(s, x);
            let fy = h.mul(fs, fx);
            let pos = domain.position(y)?;
            match img[pos] {
                None => {
                    img[pos] = Some(fy);
                    queue.push_back(y);
                }
                Some(prev) if prev != fy => return None,
                Some(_) => {}
            }
        }
    }
    img.into_iter().collect()
}
