//! Finite permutation groups with full element enumeration.
//!
//! A [`Group`] stores its elements sorted lexicographically by image tuple,
//! so element indices are canonical and the identity is always index 0.
//! Subgroups are sorted index sets into their parent group.

mod auto;
mod cohomology;
mod hom;
mod parse;
mod perm;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

pub(crate) use auto::{aut_set_group, auts_of_subgroup};
pub use auto::{automorphism_group, automorphisms, generated_automorphisms, semidirect_product, SemidirectProduct};
pub use cohomology::{group_cohomology, AbelianInvariants, GModule};
pub(crate) use hom::extend_on_generators;
pub use hom::GroupHom;
pub use parse::{parse_generators, parse_group, parse_group_bounded, parse_perm, GroupFile};
pub use perm::Perm;

use crate::error::{Error, Result};
use crate::exec;

/// Default bound on group orders accepted by constructors.
pub const DEFAULT_ORDER_BOUND: usize = 2000;

/// Index of an element in its group's canonical element list.
pub type Elem = u32;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: u32) -> usize {
    let p = p as usize;
    let mut r = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// A finite permutation group.
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, Elem>,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    bound: usize,
    subgroup_sets: OnceLock<Vec<Vec<Elem>>>,
}

impl Group {
    /// The group generated by `generators`, with the default order bound.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Arc<Group>> {
        Self::with_bound(degree, generators, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(degree: usize, generators: Vec<Perm>, bound: usize) -> Result<Arc<Group>> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::GroupMismatch(format!(
                    "generator {g} has degree {} not {degree}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > bound {
                        return Err(Error::OrderBoundExceeded { bound });
                    }
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Perm> = seen.into_iter().collect();
        Self::from_closed_set(degree, generators, elements, bound)
    }

    /// Builds a group from an element set already known to be closed.
    ///
    /// Closure is still verified while the multiplication table is built.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<Arc<Group>> {
        let bound = elements.len().max(DEFAULT_ORDER_BOUND);
        let mut group = Self::from_closed_set(degree, Vec::new(), elements, bound)?;
        let gens: Vec<Perm> = group
            .canonical_generators(&(0..group.order() as Elem).collect::<Vec<_>>())
            .into_iter()
            .map(|e| group.elements[e as usize].clone())
            .collect();
        Arc::get_mut(&mut group).expect("fresh Arc").generators = gens;
        Ok(group)
    }

    fn from_closed_set(
        degree: usize,
        generators: Vec<Perm>,
        mut elements: Vec<Perm>,
        bound: usize,
    ) -> Result<Arc<Group>> {
        if elements.len() > bound {
            return Err(Error::OrderBoundExceeded { bound });
        }
        elements.sort();
        elements.dedup();
        let index: HashMap<Perm, Elem> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as Elem)).collect();
        let n = elements.len();
        let rows: Vec<Option<Vec<Elem>>> = exec::map_range(n, |a| {
            elements
                .iter()
                .map(|b| index.get(&elements[a].compose(b)).copied())
                .collect()
        });
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            table.extend(row.ok_or_else(|| {
                Error::GroupMismatch("element set is not closed under composition".into())
            })?);
        }
        let inverse = elements
            .iter()
            .map(|p| {
                index.get(&p.inverse()).copied().ok_or_else(|| {
                    Error::GroupMismatch("element set is not closed under inverses".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if n == 0 || !elements[0].is_identity() {
            return Err(Error::GroupMismatch("identity missing".into()));
        }
        Ok(Arc::new(Group {
            degree,
            generators,
            elements,
            index,
            table,
            inverse,
            bound,
            subgroup_sets: OnceLock::new(),
        }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn order_bound(&self) -> usize {
        self.bound
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, e: Elem) -> &Perm {
        &self.elements[e as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<Elem> {
        self.index.get(p).copied()
    }

    pub const IDENTITY: Elem = 0;

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != Self::IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order() as Elem;
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of the subgroup generated by `seeds`, sorted.
    pub fn generate(&self, seeds: &[Elem]) -> Vec<Elem> {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut out = vec![Self::IDENTITY];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &g in seeds {
                let y = self.mul(g, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    /// Greedy generating set of the subgroup with the given (sorted) elements:
    /// scan in canonical order, keep anything not yet generated.
    pub fn canonical_generators(&self, elements: &[Elem]) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = vec![Self::IDENTITY];
        for &x in elements {
            if current.binary_search(&x).is_err() {
                gens.push(x);
                current = self.generate(&gens);
                if current.len() == elements.len() {
                    break;
                }
            }
        }
        gens
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup { group: self.clone(), elements: (0..self.order() as Elem).collect() }
    }

    pub fn trivial(self: &Arc<Self>) -> Subgroup {
        Subgroup { group: self.clone(), elements: vec![Self::IDENTITY] }
    }

    /// The subgroup generated by elements given by index.
    pub fn subgroup(self: &Arc<Self>, gens: &[Elem]) -> Subgroup {
        Subgroup { group: self.clone(), elements: self.generate(gens) }
    }

    /// The subgroup generated by permutations, which must lie in the group.
    pub fn subgroup_from_perms(self: &Arc<Self>, gens: &[Perm]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|p| self.index_of(p).ok_or(Error::NotContained))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup(&idx))
    }

    /// Wraps a sorted element set, checking closure.
    pub fn subgroup_from_elements(self: &Arc<Self>, mut elements: Vec<Elem>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&e| e as usize >= self.order()) {
            return Err(Error::NotContained);
        }
        let closed = elements.first() == Some(&Self::IDENTITY)
            && elements.iter().all(|&a| {
                elements.iter().all(|&b| elements.binary_search(&self.mul(a, b)).is_ok())
            });
        if !closed {
            return Err(Error::GroupMismatch("element set is not a subgroup".into()));
        }
        Ok(Subgroup { group: self.clone(), elements })
    }

    fn subgroup_sets(&self) -> &Vec<Vec<Elem>> {
        self.subgroup_sets.get_or_init(|| self.enumerate_subgroups())
    }

    /// Cyclic extension: start from the cyclic subgroups and repeatedly join
    /// a subgroup with a cyclic subgroup not contained in it.
    fn enumerate_subgroups(&self) -> Vec<Vec<Elem>> {
        let n = self.order() as Elem;
        let mut cyclic: HashMap<Vec<Elem>, Elem> = HashMap::new();
        for g in 0..n {
            cyclic.entry(self.generate(&[g])).or_insert(g);
        }
        let cyclic_gens: Vec<Elem> = {
            let mut v: Vec<_> = cyclic.iter().map(|(s, &g)| (s.clone(), g)).collect();
            v.sort();
            v.into_iter().map(|(_, g)| g).collect()
        };
        let mut all: HashSet<Vec<Elem>> = cyclic.keys().cloned().collect();
        let mut frontier: Vec<(Vec<Elem>, Vec<Elem>)> =
            cyclic.into_iter().map(|(s, g)| (s, vec![g])).collect();
        frontier.sort();
        while !frontier.is_empty() {
            let joins = exec::flat_map(&frontier, |(set, gens)| {
                cyclic_gens
                    .iter()
                    .filter(|&&g| set.binary_search(&g).is_err())
                    .map(|&g| {
                        let mut ng = gens.clone();
                        ng.push(g);
                        (self.generate(&ng), ng)
                    })
                    .collect()
            });
            let mut next = Vec::new();
            for (set, gens) in joins {
                if all.insert(set.clone()) {
                    next.push((set, gens));
                }
            }
            next.sort();
            frontier = next;
        }
        let mut out: Vec<Vec<Elem>> = all.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// All subgroups, sorted by (order, element set).
    pub fn subgroups(self: &Arc<Self>) -> Result<Vec<Subgroup>> {
        if self.order() > self.bound {
            return Err(Error::OrderBoundExceeded { bound: self.bound });
        }
        Ok(self
            .subgroup_sets()
            .iter()
            .map(|s| Subgroup { group: self.clone(), elements: s.clone() })
            .collect())
    }

    fn check_owner(self: &Arc<Self>, p: &Subgroup) -> Result<()> {
        if p.group.as_ref() == self.as_ref() {
            Ok(())
        } else {
            Err(Error::NotContained)
        }
    }

    /// C_G(P)
    pub fn centralizer(self: &Arc<Self>, p: &Subgroup) -> Result<Subgroup> {
        self.check_owner(p)?;
        let els = (0..self.order() as Elem)
            .filter(|&g| p.elements.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        Ok(Subgroup { group: self.clone(), elements: els })
    }

    /// N_G(P)
    pub fn normalizer(self: &Arc<Self>, p: &Subgroup) -> Result<Subgroup> {
        self.check_owner(p)?;
        let els = (0..self.order() as Elem)
            .filter(|&g| p.elements.iter().all(|&x| p.contains(self.conj(g, x))))
            .collect();
        Ok(Subgroup { group: self.clone(), elements: els })
    }

    /// N_G(P, Q) = { g : gPg⁻¹ ≤ Q }
    pub fn transporter(self: &Arc<Self>, p: &Subgroup, q: &Subgroup) -> Result<Vec<Elem>> {
        self.check_owner(p)?;
        self.check_owner(q)?;
        Ok((0..self.order() as Elem)
            .filter(|&g| p.elements.iter().all(|&x| q.contains(self.conj(g, x))))
            .collect())
    }

    /// The canonically least Sylow `p`-subgroup (trivial if `p ∤ |G|`).
    pub fn sylow(self: &Arc<Self>, p: u32) -> Result<Subgroup> {
        check_prime(p)?;
        let target = p_part(self.order(), p);
        if target == 1 {
            return Ok(self.trivial());
        }
        self.subgroups()?
            .into_iter()
            .find(|s| s.order() == target)
            .ok_or_else(|| Error::GroupMismatch("no Sylow subgroup found".into()))
    }

    /// Whether `P` is a `p`-subgroup whose centre is Sylow in `C_G(P)`.
    pub fn is_p_centric(self: &Arc<Self>, p_sub: &Subgroup, p: u32) -> Result<bool> {
        if !p_sub.is_p_group(p) {
            return Ok(false);
        }
        let c = self.centralizer(p_sub)?;
        Ok(p_sub.center().order() == p_part(c.order(), p))
    }

    /// C'_G(P): the p'-part of C_G(P) for p-centric P, so that
    /// C_G(P) = Z(P) × C'_G(P).
    pub fn p_prime_centralizer(self: &Arc<Self>, p_sub: &Subgroup, p: u32) -> Result<Subgroup> {
        check_prime(p)?;
        self.check_owner(p_sub)?;
        if !p_sub.is_p_group(p) {
            return Err(Error::NotPGroup { p });
        }
        let c = self.centralizer(p_sub)?;
        let z = p_sub.center();
        if z.order() != p_part(c.order(), p) {
            return Err(Error::NotCentric {
                p,
                reason: format!("|Z(P)| = {} but |C_G(P)|_p = {}", z.order(), p_part(c.order(), p)),
            });
        }
        let pp: Vec<Elem> = c
            .elements
            .iter()
            .copied()
            .filter(|&g| !self.element_order(g).is_multiple_of(p as usize))
            .collect();
        let sub = self.subgroup_from_elements(pp).map_err(|_| Error::NotCentric {
            p,
            reason: "p'-elements of C_G(P) do not form a subgroup".into(),
        })?;
        let meet = sub.elements.iter().filter(|&&g| z.contains(g)).count();
        if meet != 1 || sub.order() * z.order() != c.order() {
            return Err(Error::NotCentric { p, reason: "C_G(P) does not split as Z(P) × C'".into() });
        }
        Ok(sub)
    }

    /// Direct product on the disjoint union of the point sets.
    ///
    /// Element `(a, b)` has index `a * |H| + b`.
    pub fn direct_product(a: &Arc<Group>, b: &Arc<Group>) -> Result<Arc<Group>> {
        let mut elements = Vec::with_capacity(a.order() * b.order());
        for x in &a.elements {
            for y in &b.elements {
                elements.push(x.concat(y));
            }
        }
        let bound = elements.len().max(a.bound).max(b.bound);
        let shift = a.degree();
        let mut gens: Vec<Perm> =
            a.generators.iter().map(|g| g.concat(&Perm::identity(b.degree()))).collect();
        gens.extend(b.generators.iter().map(|g| {
            let mut v: Vec<u32> = (0..shift as u32).collect();
            v.extend(g.images().iter().map(|&i| i + shift as u32));
            Perm::from_images(v).expect("shifted permutation")
        }));
        Self::from_closed_set(a.degree + b.degree, gens, elements, bound)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.degree == other.degree && self.elements == other.elements)
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(degree {}, order {}, gens {:?})", self.degree, self.order(), self.generators)
    }
}

/// A subgroup given by its sorted element indices in a parent group.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<Group>,
    elements: Vec<Elem>,
}

impl Subgroup {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Position of `x` within the sorted element list.
    pub fn position(&self, x: Elem) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.group;
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        p_part(self.order(), p) == self.order()
    }

    /// `gPg⁻¹`
    pub fn conjugate(&self, g: Elem) -> Subgroup {
        let mut els: Vec<Elem> = self.elements.iter().map(|&x| self.group.conj(g, x)).collect();
        els.sort_unstable();
        Subgroup { group: self.group.clone(), elements: els }
    }

    /// Z(P)
    pub fn center(&self) -> Subgroup {
        let g = &self.group;
        let els = self
            .elements
            .iter()
            .copied()
            .filter(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
            .collect();
        Subgroup { group: self.group.clone(), elements: els }
    }

    /// Canonical generating set (greedy over the sorted elements).
    pub fn generators(&self) -> Vec<Elem> {
        self.group.canonical_generators(&self.elements)
    }

    /// The subgroup as a group in its own right, on the same points.
    ///
    /// Element `i` of the result is element `self.elements()[i]` of the parent.
    pub fn to_group(&self) -> Arc<Group> {
        let perms: Vec<Perm> = self.elements.iter().map(|&e| self.group.element(e).clone()).collect();
        let gens: Vec<Perm> = self.generators().iter().map(|&e| self.group.element(e).clone()).collect();
        Group::from_closed_set(self.group.degree, gens, perms, self.group.bound)
            .expect("subgroup element set is closed")
    }

    /// All subgroups of this subgroup, as subgroups of the parent, sorted
    /// like [`Group::subgroups`].
    pub fn subgroups(&self) -> Result<Vec<Subgroup>> {
        if self.order() == self.group.order() {
            return self.group.subgroups();
        }
        let inner = self.to_group();
        Ok(inner
            .subgroups()?
            .into_iter()
            .map(|h| Subgroup {
                group: self.group.clone(),
                elements: h.elements.iter().map(|&i| self.elements[i as usize]).collect(),
            })
            .collect())
    }

    /// `C_H(P)` where `H` is this subgroup.
    pub fn centralizer_of(&self, p: &Subgroup) -> Subgroup {
        let g = &self.group;
        let els = self
            .elements
            .iter()
            .copied()
            .filter(|&h| p.elements.iter().all(|&x| g.mul(h, x) == g.mul(x, h)))
            .collect();
        Subgroup { group: self.group.clone(), elements: els }
    }

    /// `N_H(P)` where `H` is this subgroup.
    pub fn normalizer_of(&self, p: &Subgroup) -> Subgroup {
        let g = &self.group;
        let els = self
            .elements
            .iter()
            .copied()
            .filter(|&h| p.elements.iter().all(|&x| p.contains(g.conj(h, x))))
            .collect();
        Subgroup { group: self.group.clone(), elements: els }
    }

    /// Distinct conjugates `gPg⁻¹` for `g` in `ambient`, sorted.
    pub fn conjugacy_class_in(&self, ambient: &Subgroup) -> Vec<Subgroup> {
        let mut seen: Vec<Subgroup> = ambient.elements.iter().map(|&g| self.conjugate(g)).collect();
        seen.sort();
        seen.dedup();
        seen
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.group == other.group
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical ordering: by order, then by sorted element set.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elements
            .len()
            .cmp(&other.elements.len())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|&e| self.group.element(e).to_string()).collect();
        write!(f, "<{}> (order {})", gens.join(", "), self.order())
    }
}
