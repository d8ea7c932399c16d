//! Linear substitutions and Steenrod operations on `H*(BV)`.

use super::algebra::{compositions, GradedElement, Monomial};
use super::matrix::FpMatrix;
use crate::error::{Error, Result};

/// A Steenrod operation: `β` and `P^i` at odd `p`, `Sq^i` at `p = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SteenrodOp {
    Bockstein,
    P(u32),
    Sq(u32),
}

impl SteenrodOp {
    /// Degree shift at prime `p`.
    pub fn degree(&self, p: u32) -> u32 {
        match *self {
            SteenrodOp::Bockstein => 1,
            SteenrodOp::P(i) => 2 * i * (p - 1),
            SteenrodOp::Sq(i) => i,
        }
    }

    /// Operations that can be nonzero on a class of degree `d` with target
    /// degree at most `bound`, excluding the identity operations.
    pub fn nontrivial_up_to(p: u32, d: u32, bound: u32) -> Vec<SteenrodOp> {
        let mut out = Vec::new();
        if p == 2 {
            out.extend((1..=d).map(SteenrodOp::Sq));
        } else {
            out.push(SteenrodOp::Bockstein);
            out.extend((1..=d / 2).map(SteenrodOp::P));
        }
        out.retain(|op| d + op.degree(p) <= bound);
        out
    }
}

impl std::fmt::Display for SteenrodOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SteenrodOp::Bockstein => write!(f, "β"),
            SteenrodOp::P(i) => write!(f, "P^{i}"),
            SteenrodOp::Sq(i) => write!(f, "Sq^{i}"),
        }
    }
}

/// Binomial coefficient modulo `p` by Lucas' theorem.
pub(crate) fn binomial_mod(mut n: u32, mut k: u32, p: u32) -> u32 {
    let mut out = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * (a - i) as u64 / (i + 1) as u64;
        }
        out = out * (c % p as u64) % p as u64;
        n /= p;
        k /= p;
    }
    out as u32
}

/// Substitution `x_i ↦ Σ_j w[i][j] x_j` and, at odd `p`, the same on the
/// `y_i`. A ring endomorphism commuting with `β`.
pub fn gl_action(w: &FpMatrix, e: &GradedElement) -> Result<GradedElement> {
    let alg = e.algebra();
    if w.prime() != alg.prime() || w.size() != alg.rank() {
        return Err(Error::InvalidMatrix(format!(
            "expected a {}×{} matrix over F_{}",
            alg.rank(),
            alg.rank(),
            alg.prime()
        )));
    }
    if !w.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let n = alg.rank();
    let linear = |odd_exterior: bool, i: usize| -> GradedElement {
        let mut out = GradedElement::zero(alg, if odd_exterior { 1 } else { alg.polynomial_degree() });
        for j in 0..n {
            let mut m = Monomial::one(n);
            if odd_exterior {
                m.exterior = 1 << j;
            } else {
                m.exponents[j] = 1;
            }
            out.add_term(m, w.get(i, j));
        }
        out
    };
    let ys: Vec<GradedElement> = if alg.is_odd() { (0..n).map(|i| linear(true, i)).collect() } else { Vec::new() };
    let xs: Vec<GradedElement> = (0..n).map(|i| linear(false, i)).collect();
    let mut powers: Vec<Vec<GradedElement>> = xs.iter().map(|x| vec![alg.one(), x.clone()]).collect();
    let mut out = GradedElement::zero(alg, e.degree());
    for (m, &c) in e.terms() {
        let mut image = alg.one();
        for (i, y) in ys.iter().enumerate() {
            if m.exterior >> i & 1 == 1 {
                image = image.mul(y)?;
            }
        }
        for (i, &k) in m.exponents.iter().enumerate() {
            while powers[i].len() <= k as usize {
                let next = powers[i].last().unwrap().mul(&xs[i])?;
                powers[i].push(next);
            }
            image = image.mul(&powers[i][k as usize])?;
        }
        out = out.add(&image.scale(c))?;
    }
    Ok(out)
}

/// Applies a Steenrod operation. `P^i` and `β` are defined at odd `p`,
/// `Sq^i` at `p = 2`; `P^0` and `Sq^0` are the identity.
pub fn steenrod(op: SteenrodOp, e: &GradedElement) -> Result<GradedElement> {
    let alg = e.algebra();
    let p = alg.prime();
    let n = alg.rank();
    match op {
        SteenrodOp::Sq(_) if alg.is_odd() => {
            return Err(Error::InvalidModule(format!("Sq operations are defined at p = 2, not p = {p}")))
        }
        SteenrodOp::P(_) | SteenrodOp::Bockstein if !alg.is_odd() => {
            return Err(Error::InvalidModule("use Sq operations at p = 2".into()))
        }
        _ => {}
    }
    let mut out = GradedElement::zero(alg, e.degree() + op.degree(p));
    for (m, &c) in e.terms() {
        match op {
            SteenrodOp::Bockstein => {
                // β(y_{s0} ⋯ y_{sk} x^a) = Σ_j (−1)^j x_{sj} y_{S∖sj} x^a.
                let bits: Vec<usize> = (0..n).filter(|&i| m.exterior >> i & 1 == 1).collect();
                for (j, &s) in bits.iter().enumerate() {
                    let mut t = m.clone();
                    t.exterior &= !(1 << s);
                    t.exponents[s] += 1;
                    let coeff = if j % 2 == 0 { c } else { p - c };
                    out.add_term(t, coeff);
                }
            }
            SteenrodOp::P(i) | SteenrodOp::Sq(i) => {
                // Total operation x ↦ x + x^p on generators, y ↦ y; Cartan gives
                // P^i(x^a) = Σ Π_j C(a_j, i_j) x_j^{a_j + (p−1) i_j}.
                let step = if alg.is_odd() { p - 1 } else { 1 };
                let mut parts = vec![0u32; n];
                compositions(i, 0, &mut parts, &mut |split| {
                    let mut coeff = c as u64;
                    for (a, &k) in m.exponents.iter().zip(split) {
                        coeff = coeff * binomial_mod(*a, k, p) as u64 % p as u64;
                    }
                    if coeff != 0 {
                        let exponents = m.exponents.iter().zip(split).map(|(a, k)| a + step * k).collect();
                        out.add_term(Monomial { exterior: m.exterior, exponents }, coeff as u32);
                    }
                });
            }
        }
    }
    Ok(out)
}
