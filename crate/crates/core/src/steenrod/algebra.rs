//! `H*(BV; F_p)` for `V = (Z/p)^n` as a graded-commutative algebra.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::check_prime;

/// Largest supported rank; exterior subsets are stored as `u32` masks.
pub const MAX_RANK: usize = 16;

/// At odd `p`: exterior `y_i` in degree 1 and polynomial `x_i = β y_i` in
/// degree 2. At `p = 2`: polynomial `x_i` in degree 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraPresentation {
    p: u32,
    n: usize,
}

/// `y_S x^a`, with `S` a bit mask (always empty at `p = 2`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exterior: u32,
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exterior: 0, exponents: vec![0; n] }
    }

    pub fn is_polynomial(&self) -> bool {
        self.exterior == 0
    }
}

impl AlgebraPresentation {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        check_prime(p)?;
        if n == 0 || n > MAX_RANK {
            return Err(Error::InvalidMatrix(format!("rank {n} outside 1..={MAX_RANK}")));
        }
        Ok(AlgebraPresentation { p, n })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    /// Degree of the polynomial generators.
    pub fn polynomial_degree(&self) -> u32 {
        if self.is_odd() {
            2
        } else {
            1
        }
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.exterior.count_ones() + self.polynomial_degree() * m.exponents.iter().sum::<u32>()
    }

    /// All monomials of degree `d`, in ascending order.
    pub fn monomials(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let masks: Vec<u32> = if self.is_odd() { (0..1u32 << self.n).collect() } else { vec![0] };
        let pd = self.polynomial_degree();
        for mask in masks {
            let e = mask.count_ones();
            if e > d || !(d - e).is_multiple_of(pd) {
                continue;
            }
            let total = (d - e) / pd;
            let mut exps = vec![0u32; self.n];
            compositions(total, 0, &mut exps, &mut |a| {
                out.push(Monomial { exterior: mask, exponents: a.to_vec() })
            });
        }
        out.sort();
        out
    }

    /// Monomials of degree `d` with no exterior factor.
    pub fn polynomial_monomials(&self, d: u32) -> Vec<Monomial> {
        self.monomials(d).into_iter().filter(Monomial::is_polynomial).collect()
    }

    pub fn one(&self) -> GradedElement {
        GradedElement::from_monomial(*self, Monomial::one(self.n), 1)
    }

    /// The polynomial generator `x_i` (0-based).
    pub fn x(&self, i: usize) -> Result<GradedElement> {
        if i >= self.n {
            return Err(Error::InvalidMatrix(format!("generator index {i} out of range")));
        }
        let mut m = Monomial::one(self.n);
        m.exponents[i] = 1;
        Ok(GradedElement::from_monomial(*self, m, 1))
    }

    /// The exterior generator `y_i` (odd `p` only).
    pub fn y(&self, i: usize) -> Result<GradedElement> {
        if !self.is_odd() {
            return Err(Error::InvalidModule("no exterior generators at p = 2".into()));
        }
        if i >= self.n {
            return Err(Error::InvalidMatrix(format!("generator index {i} out of range")));
        }
        let mut m = Monomial::one(self.n);
        m.exterior = 1 << i;
        Ok(GradedElement::from_monomial(*self, m, 1))
    }
}

/// Calls `f` on every exponent vector in `out[pos..]` summing to `total`.
pub(crate) fn compositions(total: u32, pos: usize, out: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if pos + 1 == out.len() {
        out[pos] = total;
        f(out);
        return;
    }
    for k in 0..=total {
        out[pos] = k;
        compositions(total - k, pos + 1, out, f);
    }
    out[pos] = 0;
}

/// Sign of `y_S · y_T` rewritten as `y_{S∪T}`, or `None` if they overlap.
pub(crate) fn exterior_sign(s: u32, t: u32) -> Option<bool> {
    if s & t != 0 {
        return None;
    }
    let mut swaps = 0;
    for j in 0..32 {
        if t >> j & 1 == 1 {
            swaps += (s >> (j + 1)).count_ones();
        }
    }
    Some(swaps % 2 == 1)
}

/// A homogeneous element of `H*(BV)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    algebra: AlgebraPresentation,
    degree: u32,
    terms: BTreeMap<Monomial, u32>,
}

impl GradedElement {
    pub fn zero(algebra: AlgebraPresentation, degree: u32) -> Self {
        GradedElement { algebra, degree, terms: BTreeMap::new() }
    }

    pub fn from_monomial(algebra: AlgebraPresentation, m: Monomial, coeff: u32) -> Self {
        let degree = algebra.degree_of(&m);
        let mut out = Self::zero(algebra, degree);
        out.add_term(m, coeff);
        out
    }

    /// Builds an element from `(monomial, coefficient)` pairs, all of degree `degree`.
    pub fn from_terms(
        algebra: AlgebraPresentation,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, u32)>,
    ) -> Result<Self> {
        let mut out = Self::zero(algebra, degree);
        for (m, c) in terms {
            if m.exponents.len() != algebra.n || (!algebra.is_odd() && m.exterior != 0) || m.exterior >> algebra.n != 0 {
                return Err(Error::InvalidModule("monomial does not belong to the algebra".into()));
            }
            if algebra.degree_of(&m) != degree {
                return Err(Error::InvalidModule(format!("monomial of degree {} in degree {degree}", algebra.degree_of(&m))));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// Coordinates on `basis` (a list of degree-`d` monomials) back to an element.
    pub fn from_vector(algebra: AlgebraPresentation, degree: u32, basis: &[Monomial], v: &[u64]) -> Self {
        let mut out = Self::zero(algebra, degree);
        for (m, &c) in basis.iter().zip(v) {
            out.add_term(m.clone(), c as u32);
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: u32) {
        let p = self.algebra.p;
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn algebra(&self) -> AlgebraPresentation {
        self.algebra
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coordinates on a monomial basis of the same degree.
    pub fn to_vector(&self, basis: &[Monomial]) -> Vec<u64> {
        basis.iter().map(|m| self.coefficient(m) as u64).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::InvalidModule("elements of different algebras".into()));
        }
        if self.degree != other.degree {
            return Err(Error::InvalidModule(format!("degree {} vs {}", self.degree, other.degree)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.algebra.p - 1))
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.algebra, self.degree);
        for (m, &v) in &self.terms {
            out.add_term(m.clone(), (v as u64 * c as u64 % self.algebra.p as u64) as u32);
        }
        out
    }

    /// Graded-commutative product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::InvalidModule("elements of different algebras".into()));
        }
        let p = self.algebra.p as u64;
        let mut out = Self::zero(self.algebra, self.degree + other.degree);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let Some(neg) = exterior_sign(a.exterior, b.exterior) else { continue };
                let mut c = ca as u64 * cb as u64 % p;
                if neg {
                    c = (p - c) % p;
                }
                let exponents = a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect();
                out.add_term(Monomial { exterior: a.exterior | b.exterior, exponents }, c as u32);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = self.algebra.one();
        for _ in 0..k {
            out = out.mul(self).expect("same algebra");
        }
        out
    }

    /// `{"degree", "terms": [{exterior_mask, exponents, coeff}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| json!({ "exterior_mask": m.exterior, "exponents": m.exponents, "coeff": c }))
            .collect();
        json!({ "degree": self.degree, "terms": terms })
    }
}

impl std::fmt::Display for GradedElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = |i: usize| if self.algebra.n <= 3 { ["x", "y", "z"][i].to_string() } else { format!("x{}", i + 1) };
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            for i in 0..self.algebra.n {
                if m.exterior >> i & 1 == 1 {
                    factors.push(format!("y{}", i + 1));
                }
            }
            for (i, &e) in m.exponents.iter().enumerate() {
                let v = if self.algebra.is_odd() { format!("x{}", i + 1) } else { names(i) };
                match e {
                    0 => {}
                    1 => factors.push(v),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            let body = if factors.is_empty() { "1".to_string() } else { factors.join("") };
            if *c == 1 {
                write!(f, "{body}")?;
            } else {
                write!(f, "{c}{body}")?;
            }
        }
        Ok(())
    }
}
