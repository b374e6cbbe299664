//! Größencharakter fingerprints of ideals.
//!
//! For an imaginary field with w torsion units, an ideal 𝔞 = (a) carries
//! μ_𝔞 = (a/|a|)^w, well-defined because every associate differs by a w-th
//! root of unity. For a real field with fundamental unit ε,
//! μ_𝔞 = exp(2πi·F) with F = ln|σ₁(a)/σ₂(a)| / (2 ln ε); multiplying a by
//! ±ε shifts F by exactly ∓… an integer, so again only 𝔞 matters.
//!
//! Classes beyond the principal one are reached through the anchor 𝔞₀ ∈ 𝒞⁻¹:
//! μ_𝔞 is evaluated on a generator of 𝔞·𝔞₀, and λ^m(𝔞𝔞₀) = μ_𝔞^m. Since a
//! Dirichlet polynomial over a fixed class carries the constant factor
//! λ^m(𝔞₀) in front of every term, that factor cancels from every ratio we
//! measure; the term data stores arg μ_𝔞 directly.
//!
//! Both parameterizations of the angular position are exposed: the argument
//! arg μ ∈ [0, 2π) and the scale-free exponent F ∈ [0, 1) with
//! arg μ = 2πF mod 2π. (The two are kept strictly consistent; window
//! specifications in radians act on arg μ.)

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::field::{QuadraticField, QuadraticInt, Signature};
use crate::ideals::{Ideal, IdealClassContext};
use crate::{Error, Result};

/// A point on the unit circle with its principal argument in [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacterValue {
    pub value: Complex64,
    pub arg: f64,
}

impl CharacterValue {
    fn from_arg(arg: f64) -> Self {
        let arg = arg.rem_euclid(TAU);
        CharacterValue { value: Complex64::from_polar(1.0, arg), arg }
    }

    fn from_complex_normalized(z: Complex64) -> Self {
        let n = z.norm();
        let value = z / n;
        CharacterValue { value, arg: value.arg().rem_euclid(TAU) }
    }
}

/// μ for a generator in an imaginary field: exact integer powering a^w
/// followed by a single normalization, so the rounding error is one
/// division regardless of w.
pub fn mu_imaginary(field: &QuadraticField, a: &QuadraticInt) -> Result<CharacterValue> {
    if field.signature != Signature::Imaginary {
        return Err(Error::InvalidParameter("mu_imaginary needs an imaginary field".into()));
    }
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let w = field.w.unwrap();
    let aw = field.pow(a, w)?;
    Ok(CharacterValue::from_complex_normalized(field.embed_complex(&aw)))
}

/// The scale-free exponent F(a) = ln|σ₁(a)/σ₂(a)| / (2 ln ε) for a real
/// field, computed from exact integer data (no subtractive cancellation
/// near the asymptotes).
pub fn real_exponent(field: &QuadraticField, a: &QuadraticInt) -> Result<f64> {
    if field.signature != Signature::Real {
        return Err(Error::InvalidParameter("real_exponent needs a real field".into()));
    }
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let log_ratio = field.log_embedding_ratio(a)?;
    Ok(log_ratio / (2.0 * field.log_epsilon()))
}

/// μ for a generator in a real field: exp(2πi·F).
pub fn mu_real(field: &QuadraticField, a: &QuadraticInt) -> Result<CharacterValue> {
    let f = real_exponent(field, a)?;
    Ok(CharacterValue::from_arg(TAU * f.rem_euclid(1.0)))
}

/// μ of a generator, dispatching on the signature.
pub fn mu_of_generator(field: &QuadraticField, a: &QuadraticInt) -> Result<CharacterValue> {
    match field.signature {
        Signature::Imaginary => mu_imaginary(field, a),
        Signature::Real => mu_real(field, a),
    }
}

/// μ_𝔞 for an ideal 𝔞 ∈ 𝒞, through a generator of 𝔞·𝔞₀.
pub fn mu_of_ideal(
    field: &QuadraticField,
    ctx: &IdealClassContext,
    ideal: &Ideal,
) -> Result<CharacterValue> {
    let g = ctx.anchored_generator(field, ideal)?;
    mu_of_generator(field, &g)
}

/// λ^m(𝔞𝔞₀) = μ_𝔞^m, computed by angle multiplication (m·arg mod 2π), not
/// repeated complex powering, so the error stays one rounding for large |m|.
pub fn lambda_m(
    field: &QuadraticField,
    ctx: &IdealClassContext,
    ideal: &Ideal,
    m: i64,
) -> Result<CharacterValue> {
    let mu = mu_of_ideal(field, ctx, ideal)?;
    Ok(lambda_from_mu(&mu, m))
}

/// μ^m by exact angle arithmetic.
pub fn lambda_from_mu(mu: &CharacterValue, m: i64) -> CharacterValue {
    // (m · arg) mod 2π with the product reduced before the trig call
    let a = (m as f64 * mu.arg).rem_euclid(TAU);
    CharacterValue::from_arg(a)
}
