//! Frobenius reciprocity relations between transfers, diagonals and idempotents.

use serde::Serialize;

use super::{own_group, BurnsideElement};
use crate::error::{Error, Result};
use crate::group::{GroupHom, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    /// `(ω⊠ω)∘Δ = (ω⊠1)∘Δ∘ω`.
    pub reciprocity: bool,
    /// The same relation precomposed with `ω`.
    pub after_omega: bool,
}

fn equal(a: &BurnsideElement, b: &BurnsideElement) -> Result<bool> {
    Ok(a.sub(b)?.is_zero())
}

/// `(1 ⊠ tr_P) ∘ Δ_S = (Bi_P ⊠ 1) ∘ Δ_P ∘ tr_P` in `A(S, S × P)`.
pub fn verify_classical_frobenius(p_sub: &Subgroup, prime: u32) -> Result<bool> {
    let s = p_sub.group();
    let pg = own_group(p_sub);
    let tr = BurnsideElement::transfer(p_sub, prime);
    let lhs = BurnsideElement::identity(s, prime)
        .external_product(&tr)?
        .compose(&BurnsideElement::diagonal(s, prime)?)?;
    let incl = BurnsideElement::b_map(&GroupHom::inclusion(p_sub, &s.whole())?, prime)?;
    let rhs = incl
        .external_product(&BurnsideElement::identity(&pg, prime))?
        .compose(&BurnsideElement::diagonal(&pg, prime)?.compose(&tr)?)?;
    equal(&lhs, &rhs)
}

/// `Δ_S ∘ Bφ = (Bφ ⊠ Bφ) ∘ Δ_P` in `A(P, S × S)`.
pub fn verify_diag_commute(phi: &GroupHom, prime: u32) -> Result<bool> {
    let b = BurnsideElement::b_map(phi, prime)?;
    let lhs = BurnsideElement::diagonal(b.target(), prime)?.compose(&b)?;
    let rhs = b.external_product(&b)?.compose(&BurnsideElement::diagonal(b.source(), prime)?)?;
    equal(&lhs, &rhs)
}

/// Frobenius reciprocity for an idempotent `ω ∈ A(S, S)`.
pub fn verify_frobenius_reciprocity(omega: &BurnsideElement) -> Result<FrobeniusReport> {
    let s = omega.source();
    if omega.target() != s {
        return Err(Error::GroupMismatch("ω must lie in A(S, S)".into()));
    }
    let p = omega.prime();
    let delta = BurnsideElement::diagonal(s, p)?;
    let lhs = omega.external_product(omega)?.compose(&delta)?;
    let rhs = omega
        .external_product(&BurnsideElement::identity(s, p))?
        .compose(&delta.compose(omega)?)?;
    let reciprocity = equal(&lhs, &rhs)?;
    let after_omega = equal(&lhs.compose(omega)?, &rhs.compose(omega)?)?;
    Ok(FrobeniusReport { reciprocity, after_omega })
}
