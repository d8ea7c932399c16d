//! Molien series with Brauer-lifted eigenvalues.
//!
//! Eigenvalues of `w ∈ W` lie in `F_q^×` with `q = p^k ≡ 1 mod exp(W)`.
//! Writing them as powers of a fixed primitive element `g` and sending
//! `g^e ↦ exp(2πi e/(q−1))` lifts them to complex roots of unity; the
//! averaged series then counts invariants because `p ∤ |W|`.

use num_complex::Complex64;

use super::matrix::MatrixGroup;
use crate::error::{Error, Result};

/// Largest field `F_q` built for the eigenvalue lift.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// `F_q` with elements encoded as base-`p` digit vectors and multiplication
/// through discrete-log tables.
struct FiniteField {
    p: u64,
    q: u64,
    exp: Vec<u64>,
    log: Vec<u64>,
}

impl FiniteField {
    fn new(p: u64, k: u32) -> Result<Self> {
        let q = p.pow(k);
        if q > MAX_FIELD_SIZE {
            return Err(Error::SearchBound(format!("field of size {q} for the eigenvalue lift")));
        }
        let digits = |mut x: u64| -> Vec<u64> {
            (0..k)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let encode = |v: &[u64]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        // Search monic f of degree k for which x has order q − 1.
        for tail in 0..q {
            let f = digits(tail);
            if k > 0 && f[0] == 0 && q > 2 {
                continue;
            }
            let times_x = |v: &[u64]| -> Vec<u64> {
                let top = v[k as usize - 1];
                let mut out = vec![0; k as usize];
                for i in (1..k as usize).rev() {
                    out[i] = v[i - 1];
                }
                for i in 0..k as usize {
                    out[i] = (out[i] + p * p - top * f[i] % p) % p;
                }
                out
            };
            let one = {
                let mut v = vec![0; k as usize];
                v[0] = 1;
                v
            };
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut log = vec![u64::MAX; q as usize];
            let mut cur = one.clone();
            let mut ok = true;
            for e in 0..q - 1 {
                let code = encode(&cur);
                if code == 0 || log[code as usize] != u64::MAX {
                    ok = false;
                    break;
                }
                log[code as usize] = e;
                exp.push(code);
                cur = if k == 1 { vec![cur[0] * Self::prim_root(p) % p] } else { times_x(&cur) };
            }
            if ok && cur == one {
                return Ok(FiniteField { p, q, exp, log });
            }
            if k == 1 {
                break;
            }
        }
        Err(Error::SearchBound(format!("no primitive polynomial of degree {k} over F_{p}")))
    }

    /// Least primitive root modulo a prime `p`.
    fn prim_root(p: u64) -> u64 {
        (1..p.max(2))
            .find(|&g| {
                let mut x = 1;
                (1..p - 1).all(|_| {
                    x = x * g % p;
                    x != 1
                })
            })
            .unwrap_or(1)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    /// Eigenvalue exponents (discrete logs) of a polynomial over `F_p` that
    /// splits into units of `F_q`.
    fn unit_roots(&self, poly: &[u32]) -> Option<Vec<u64>> {
        let mut coeffs: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
        let mut roots = Vec::new();
        for e in 0..self.q - 1 {
            let lambda = self.exp[e as usize];
            loop {
                if coeffs.len() <= 1 {
                    break;
                }
                // Synthetic division by (t − λ).
                let mut quotient = Vec::with_capacity(coeffs.len() - 1);
                let mut acc = 0;
                for &c in &coeffs {
                    acc = self.add(self.mul(acc, lambda), c);
                    quotient.push(acc);
                }
                if quotient.pop() != Some(0) {
                    break;
                }
                roots.push(e);
                coeffs = quotient;
            }
        }
        (coeffs.len() == 1).then_some(roots)
    }
}

fn series_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Invariant dimensions in degrees `0..=bound` predicted by Molien's formula:
/// `(1/|W|) Σ 1/det(1 − w̃ z)` at `p = 2` and
/// `(1/|W|) Σ det(1 + w̃ z)/det(1 − w̃ z²)` at odd `p`.
pub fn molien_series(group: &MatrixGroup, bound: u32) -> Result<Vec<u64>> {
    group.check_coprime()?;
    let p = group.prime() as u64;
    let exponent = group.exponent() as u64;
    let mut k = 1;
    while (p.pow(k) - 1) % exponent != 0 {
        k += 1;
        if p.checked_pow(k).is_none_or(|q| q > MAX_FIELD_SIZE) {
            return Err(Error::SearchBound(format!("splitting field for exponent {exponent}")));
        }
    }
    let field = FiniteField::new(p, k)?;
    let len = bound as usize + 1;
    let zero = Complex64::new(0.0, 0.0);
    let mut total = vec![zero; len];
    let odd = p != 2;
    for w in group.elements() {
        let poly = w.characteristic_polynomial();
        let roots = field
            .unit_roots(&poly)
            .ok_or_else(|| Error::InvalidMatrix("eigenvalues outside the splitting field".into()))?;
        let mut series = vec![zero; len];
        series[0] = Complex64::new(1.0, 0.0);
        for &e in &roots {
            let lambda = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / (field.q - 1) as f64);
            let step = if odd { 2 } else { 1 };
            let mut geometric = vec![zero; len];
            let mut power = Complex64::new(1.0, 0.0);
            for d in (0..len).step_by(step) {
                geometric[d] = power;
                power *= lambda;
            }
            series = series_mul(&series, &geometric);
            if odd && len > 1 {
                let mut linear = vec![zero; len];
                linear[0] = Complex64::new(1.0, 0.0);
                linear[1] = lambda;
                series = series_mul(&series, &linear);
            }
        }
        for (t, s) in total.iter_mut().zip(&series) {
            *t += s;
        }
    }
    let order = group.order() as f64;
    total
        .iter()
        .enumerate()
        .map(|(d, z)| {
            let v = z / order;
            let r = v.re.round();
            if (v.re - r).abs() > 1e-6 || v.im.abs() > 1e-6 || r < 0.0 {
                Err(Error::InvalidModule(format!("Molien coefficient {v} in degree {d} is not a count")))
            } else {
                Ok(r as u64)
            }
        })
        .collect()
}
