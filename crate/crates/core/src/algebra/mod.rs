//! The multivector core of Cl(B) for an arbitrary bilinear form.

pub mod blade;
pub mod form;
pub mod multivector;
pub mod ops;

pub use blade::{cbasis, Blade, GradeFilter};
pub use form::{split_form, BilinearForm, FormPart, Side};
pub use multivector::Multivector;
pub use ops::{
    cliexpand, clieval, clifford_monomial, cmul, cmul_chain, cmulg, conjugation, contract,
    grade_involution, reversion, wedge, wexp,
};

use crate::error::Result;
use crate::scalar::Ring;

/// Symbolic inverse in Cl(B), computed from the minimal polynomial of `u`:
/// if `p(u) = 0` with nonzero constant term `c0`, then
/// `u^{-1} = -(u^{d-1} + ... + c1)/c0`, which is two-sided because it is a
/// polynomial in `u`. A vanishing constant term exhibits `u` as a zero
/// divisor, hence not invertible.
pub fn cinv<R: Ring>(u: &Multivector<R>, form: &BilinearForm<R>) -> Result<Multivector<R>> {
    let coeffs = crate::solve::climinpoly(u, form)?;
    let c0 = coeffs[0].clone();
    let c0_inv = c0.inv().ok_or(crate::error::Error::NotInvertible)?;
    // q(u) with p(x) = x q(x) + c0  =>  u^{-1} = -q(u)/c0
    let mut acc = Multivector::zero(u.dim());
    let mut power = Multivector::one(u.dim());
    for c in &coeffs[1..] {
        acc = acc.add(&power.scale(c));
        power = cmul(&power, u, form);
    }
    Ok(acc.scale(&c0_inv.neg()))
}
