//! Exact arithmetic for real and imaginary quadratic fields ℚ(√d).
//!
//! Elements are stored in the single coordinate system `(u + v√Δ)/2` with
//! `u ≡ vΔ (mod 2)`, where Δ is the field discriminant (Δ = d for
//! d ≡ 1 mod 4, Δ = 4d otherwise). This covers both integral-basis cases
//! with one code path, and every ring operation is checked 128-bit integer
//! arithmetic: overflow is a loud [`Error::Overflow`], never a wrap.
//!
//! Real fields carry a fundamental unit ε with σ₁(ε) > 1, computed by the
//! continued-fraction (PQa) expansion of √d, resp. (1+√d)/2 for d ≡ 1 mod 4.
//! The unit tests cross-check it against a brute-force minimal solution of
//! the norm-form equation u² − dv² = ±4.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::sieve::{gcd_i128, is_square_u128, is_squarefree};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Signature {
    Imaginary,
    Real,
}

/// An element `(u + v√Δ)/2` of the maximal order, in canonical coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticInt {
    pub u: i128,
    pub v: i128,
}

impl QuadraticInt {
    pub const ZERO: QuadraticInt = QuadraticInt { u: 0, v: 0 };
    pub const ONE: QuadraticInt = QuadraticInt { u: 2, v: 0 };

    pub fn new(u: i128, v: i128) -> Self {
        QuadraticInt { u, v }
    }

    /// The rational integer n as an element.
    pub fn from_int(n: i128) -> Self {
        QuadraticInt { u: 2 * n, v: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.u == 0 && self.v == 0
    }

    pub fn is_rational_one(&self) -> bool {
        self.u == 2 && self.v == 0
    }
}

/// The field ℚ(√d) with its discriminant, signature and unit data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticField {
    pub d: i64,
    pub discriminant: i64,
    pub signature: Signature,
    /// Unit-group order (imaginary only): 4 for Δ=−4, 6 for Δ=−3, else 2.
    pub w: Option<u32>,
    /// Fundamental unit with σ₁(ε) > 1 (real only).
    pub fundamental_unit: Option<QuadraticInt>,
    /// N(ε) = ±1 (real only).
    pub unit_norm: Option<i32>,
}

fn checked_mul(a: i128, b: i128, what: &'static str) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn checked_add(a: i128, b: i128, what: &'static str) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

impl QuadraticField {
    /// Construct ℚ(√d). Rejects non-squarefree or degenerate d; computes the
    /// fundamental unit for real d.
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::BadFieldParameter(d));
        }
        let dm4 = ((d % 4) + 4) % 4;
        let discriminant = if dm4 == 1 { d } else { 4 * d };
        if d < 0 {
            let w = match discriminant {
                -4 => 4,
                -3 => 6,
                _ => 2,
            };
            Ok(QuadraticField {
                d,
                discriminant,
                signature: Signature::Imaginary,
                w: Some(w),
                fundamental_unit: None,
                unit_norm: None,
            })
        } else {
            let eps = fundamental_unit(d)?;
            let unit_norm = {
                let n = (eps.u * eps.u - discriminant as i128 * eps.v * eps.v) / 4;
                n as i32
            };
            Ok(QuadraticField {
                d,
                discriminant,
                signature: Signature::Real,
                w: None,
                fundamental_unit: Some(eps),
                unit_norm: Some(unit_norm),
            })
        }
    }

    pub fn is_imaginary(&self) -> bool {
        self.signature == Signature::Imaginary
    }

    /// ω_K = (Δ + √Δ)/2, the second basis element of the maximal order.
    pub fn omega(&self) -> QuadraticInt {
        QuadraticInt::new(self.discriminant as i128, 1)
    }

    /// Exact norm N((u+v√Δ)/2) = (u² − Δv²)/4.
    pub fn norm(&self, a: &QuadraticInt) -> Result<i128> {
        let delta = self.discriminant as i128;
        let u2 = checked_mul(a.u, a.u, "norm")?;
        let dv = checked_mul(delta, checked_mul(a.v, a.v, "norm")?, "norm")?;
        Ok((u2 - dv) / 4)
    }

    /// Trace Tr((u+v√Δ)/2) = u.
    pub fn trace(&self, a: &QuadraticInt) -> i128 {
        a.u
    }

    pub fn conj(&self, a: &QuadraticInt) -> QuadraticInt {
        QuadraticInt::new(a.u, -a.v)
    }

    pub fn neg(&self, a: &QuadraticInt) -> QuadraticInt {
        QuadraticInt::new(-a.u, -a.v)
    }

    pub fn add(&self, a: &QuadraticInt, b: &QuadraticInt) -> Result<QuadraticInt> {
        Ok(QuadraticInt::new(
            checked_add(a.u, b.u, "add")?,
            checked_add(a.v, b.v, "add")?,
        ))
    }

    /// Exact product. With a = (u₁+v₁√Δ)/2, b = (u₂+v₂√Δ)/2:
    /// ab = ((u₁u₂ + Δv₁v₂)/2 + (u₁v₂+u₂v₁)/2 · √Δ)/2; both halves are integral.
    pub fn mul(&self, a: &QuadraticInt, b: &QuadraticInt) -> Result<QuadraticInt> {
        let delta = self.discriminant as i128;
        let uu = checked_mul(a.u, b.u, "mul")?;
        let dvv = checked_mul(delta, checked_mul(a.v, b.v, "mul")?, "mul")?;
        let uv = checked_add(
            checked_mul(a.u, b.v, "mul")?,
            checked_mul(a.v, b.u, "mul")?,
            "mul",
        )?;
        let u = checked_add(uu, dvv, "mul")? / 2;
        let v = uv / 2;
        debug_assert_eq!((uu + dvv) % 2, 0);
        debug_assert_eq!(uv % 2, 0);
        Ok(QuadraticInt::new(u, v))
    }

    /// Multiply by an integer.
    pub fn scale(&self, a: &QuadraticInt, k: i128) -> Result<QuadraticInt> {
        Ok(QuadraticInt::new(
            checked_mul(a.u, k, "scale")?,
            checked_mul(a.v, k, "scale")?,
        ))
    }

    pub fn pow(&self, a: &QuadraticInt, e: u32) -> Result<QuadraticInt> {
        let mut acc = QuadraticInt::ONE;
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Both real embeddings (σ₁(a), σ₂(a)) for a real field. The smaller
    /// embedding is recovered from the exact norm, so no catastrophic
    /// cancellation occurs even when a is nearly parallel to an asymptote.
    pub fn embed_real(&self, a: &QuadraticInt) -> (f64, f64) {
        let sq = (self.discriminant as f64).sqrt();
        if a.is_zero() {
            return (0.0, 0.0);
        }
        let s1 = (a.u as f64 + a.v as f64 * sq) / 2.0;
        let s2 = (a.u as f64 - a.v as f64 * sq) / 2.0;
        (s1, s2)
    }

    /// |σ₁(a)| and |σ₂(a)| computed stably: the larger of the two is
    /// (|u| + |v|√Δ)/2 with no cancellation, the smaller is |N(a)| divided
    /// by the larger.
    pub fn embed_abs_stable(&self, a: &QuadraticInt) -> Result<(f64, f64)> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let sq = (self.discriminant as f64).sqrt();
        let big = (a.u.unsigned_abs() as f64 + a.v.unsigned_abs() as f64 * sq) / 2.0;
        let n = self.norm(a)?;
        if n == 0 {
            return Err(Error::Singular("element of norm 0".into()));
        }
        let small = (n.unsigned_abs() as f64) / big;
        // which embedding is the big one: σ₁ = (u+v√Δ)/2 has the aligned
        // signs exactly when u·v ≥ 0
        if a.u == 0 || a.v == 0 || (a.u > 0) == (a.v > 0) {
            Ok((big, small))
        } else {
            Ok((small, big))
        }
    }

    /// ln|σ₁(a)| − ln|σ₂(a)|, exact-input, cancellation-free.
    pub fn log_embedding_ratio(&self, a: &QuadraticInt) -> Result<f64> {
        let n = self.norm(a)?;
        if n == 0 {
            return Err(Error::Singular("element of norm 0".into()));
        }
        let sq = (self.discriminant as f64).sqrt();
        let big = (a.u.unsigned_abs() as f64 + a.v.unsigned_abs() as f64 * sq) / 2.0;
        // |σ_big| = big, |σ_small| = |N|/big, so ln|σbig/σsmall| = 2 ln big − ln|N|
        let r = 2.0 * big.ln() - (n.unsigned_abs() as f64).ln();
        if a.u == 0 || a.v == 0 || (a.u > 0) == (a.v > 0) {
            Ok(r)
        } else {
            Ok(-r)
        }
    }

    /// Complex embedding σ₁(a) for an imaginary field.
    pub fn embed_complex(&self, a: &QuadraticInt) -> Complex64 {
        let sq = ((-self.discriminant) as f64).sqrt();
        Complex64::new(a.u as f64 / 2.0, a.v as f64 * sq / 2.0)
    }

    /// σ₁(ε) as a float (real fields).
    pub fn epsilon_value(&self) -> f64 {
        let eps = self.fundamental_unit.expect("real field");
        let (s1, _) = self.embed_real(&eps);
        s1
    }

    /// ln σ₁(ε), the regulator of the maximal order.
    pub fn log_epsilon(&self) -> f64 {
        let eps = self.fundamental_unit.expect("real field");
        self.log_embedding_ratio(&eps).expect("unit has norm ±1") / 2.0
    }

    /// The torsion units of an imaginary field (w of them), as elements.
    pub fn roots_of_unity(&self) -> Vec<QuadraticInt> {
        match self.discriminant {
            -4 => vec![
                QuadraticInt::ONE,
                QuadraticInt::new(0, 1),  // i   = (0 + 1·√−4)/2
                QuadraticInt::new(-2, 0), // −1
                QuadraticInt::new(0, -1), // −i
            ],
            -3 => vec![
                QuadraticInt::ONE,
                QuadraticInt::new(1, 1),   // ζ₆ = (1+√−3)/2
                QuadraticInt::new(-1, 1),  // ζ₆²
                QuadraticInt::new(-2, 0),  // −1
                QuadraticInt::new(-1, -1), // ζ₆⁴
                QuadraticInt::new(1, -1),  // ζ₆⁵
            ],
            _ => vec![QuadraticInt::ONE, QuadraticInt::new(-2, 0)],
        }
    }
}

/// Fundamental unit of the maximal order of ℚ(√d), d ≥ 2 squarefree, as an
/// element (u+v√Δ)/2 with σ₁(ε) > 1 minimal.
///
/// PQa continued-fraction expansion of α₀ = (P₀+√d)/Q₀ with (P₀,Q₀) = (0,1)
/// for d ≡ 2,3 mod 4 and (1,2) for d ≡ 1 mod 4. Writing G_k = Q₀A_k − P₀B_k
/// for the convergent numerators A_k/B_k, one has
/// G_k² − d·B_k² = (−1)^{k+1} Q₀ Q_{k+1}; the first return Q_{k+1} = Q₀
/// yields the fundamental solution of |G² − dB²| = Q₀², i.e. the
/// fundamental unit (G + B√d)/Q₀.
pub fn fundamental_unit(d: i64) -> Result<QuadraticInt> {
    if d < 2 || !is_squarefree(d) {
        return Err(Error::BadFieldParameter(d));
    }
    let dm4 = d % 4;
    let (p0, q0): (i128, i128) = if dm4 == 1 { (1, 2) } else { (0, 1) };
    let d128 = d as i128;
    let sqrt_d = crate::sieve::isqrt_u128(d as u128) as i128;

    let (mut p, mut q) = (p0, q0);
    // convergents A_k/B_k of α₀: A_{-2}=0, A_{-1}=1, B_{-2}=1, B_{-1}=0
    let (mut a_prev, mut a_cur): (i128, i128) = (0, 1);
    let (mut b_prev, mut b_cur): (i128, i128) = (1, 0);
    for _ in 0..100_000 {
        // a_k = floor((p + √d)/q), valid for q of either sign
        let num = p + sqrt_d;
        let ak = if q > 0 {
            num.div_euclid(q)
        } else {
            // floor((p+√d)/q) with q<0: use exact flooring against √d
            (-(num.div_euclid(-q))) - if num.rem_euclid(-q) != 0 { 1 } else { 0 }
        };
        let a_next = checked_add(
            checked_mul(ak, a_cur, "fundamental_unit")?,
            a_prev,
            "fundamental_unit",
        )?;
        let b_next = checked_add(
            checked_mul(ak, b_cur, "fundamental_unit")?,
            b_prev,
            "fundamental_unit",
        )?;
        a_prev = a_cur;
        a_cur = a_next;
        b_prev = b_cur;
        b_cur = b_next;

        let p_next = ak * q - p;
        let q_next = (d128 - p_next * p_next) / q;
        p = p_next;
        q = q_next;

        if q == q0 {
            // unit (G + B√d)/Q₀ with G = Q₀·A − P₀·B
            let g = checked_mul(q0, a_cur, "fundamental_unit")?
                - checked_mul(p0, b_cur, "fundamental_unit")?;
            let b = b_cur;
            // convert to (u+v√Δ)/2 coordinates
            let (u, v) = if dm4 == 1 {
                // (G + B√d)/2 directly
                (g, b)
            } else {
                // G + B√d with Δ = 4d, √Δ = 2√d: (2G + B·√Δ)/2
                (2 * g, b)
            };
            let unit = QuadraticInt::new(u, v);
            let n = (u * u - if dm4 == 1 { d128 } else { 4 * d128 } * v * v) / 4;
            debug_assert!(n == 1 || n == -1, "PQa produced a non-unit");
            return Ok(unit);
        }
    }
    Err(Error::Overflow("fundamental_unit: period not found"))
}

/// Brute-force minimal unit: scan v = 1, 2, … for u² = dv² ± 4 a perfect
/// square with (u+v√d)/2 in the maximal order. Returns raw (u, v) meaning
/// (u + v√d)/2. Independent oracle for [`fundamental_unit`]; practical for
/// d up to a few hundred.
pub fn fundamental_unit_bruteforce(d: i64, v_cap: i128) -> Option<(i128, i128)> {
    let d128 = d as i128;
    let dm4 = d % 4;
    for v in 1..=v_cap {
        for s in [-4i128, 4] {
            let t = d128 * v * v + s;
            if t < 0 {
                continue;
            }
            if let Some(u) = is_square_u128(t as u128) {
                let u = u as i128;
                // ring condition: u ≡ v (mod 2) if d≡1(4), else u, v even
                let ok = if dm4 == 1 {
                    (u - v) % 2 == 0
                } else {
                    u % 2 == 0 && v % 2 == 0
                };
                if ok && u > 0 {
                    return Some((u, v));
                }
            }
        }
    }
    None
}

/// Gcd of the coordinates, used for primitivity checks.
pub fn content(a: &QuadraticInt) -> i128 {
    gcd_i128(a.u, a.v)
}
