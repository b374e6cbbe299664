//! Smooth weights for the thin region: the radial factor ψ₁, the angular
//! factor ψ₂, their product Ψ(𝔞) = ψ₁(𝒩𝔞)·ψ₂(arg μ_𝔞), and the transforms
//! feeding the Dirichlet-polynomial machinery.
//!
//! ψ₁ is the indicator of [x−y+Δ₁/2, x−Δ₁/2] mollified by a C^∞ bump of
//! width Δ₁: it is 1 on [x−y+Δ₁, x−Δ₁], 0 outside (x−y, x), and its first
//! derivative stays below 4/Δ₁.
//!
//! ψ₂ is the 2π-periodic indicator of [φ₀+Δ₂/2, φ₀+φ−Δ₂/2] convolved r
//! times with a box of width Δ₂/r. That makes every Fourier coefficient a
//! closed-form product
//!
//! ```text
//! ψ̂₂(m) = e^{−im(φ₀+φ/2)} · sin(m(φ−Δ₂)/2)/(πm) · sinc(mΔ₂/(2r))^r
//! ```
//!
//! with ψ̂₂(0) = (φ−Δ₂)/2π exactly, support exactly [φ₀, φ₀+φ], plateau
//! [φ₀+Δ₂, φ₀+φ−Δ₂], and |ψ̂₂(m)| ≤ min(φ, 2/(π|m|), (2/(π|m|))·(2r/(|m|Δ₂))^r)
//! provably — each box factor is at most min(1, 2r/(|m|Δ₂)).
//!
//! Derived scale constants: Δ₁ = y·x^{−η}, Δ₂ = φ·x^{−η}, r = ⌊2/η⌋+1,
//! M = ⌊Δ₂⁻¹x^η⌋+1, T₁ = x^{1+η}/Δ₁, T₀ = exp(ln^{1/3} x).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chars::mu_of_ideal;
use crate::field::QuadraticField;
use crate::ideals::{Ideal, IdealClassContext};
use crate::regions::angle_in_window;
use crate::{Error, Result};

/// Scale constants of the smoothing: Δ₁ = y·x^{−η}, Δ₂ = φ·x^{−η},
/// r = ⌊2/η⌋ + 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothingParams {
    pub eta: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub r: u32,
}

impl SmoothingParams {
    pub fn new(x: f64, y: f64, phi: f64, eta: f64) -> Result<Self> {
        if !(eta > 0.0) || eta >= 1.0 {
            return Err(Error::InvalidParameter(format!("eta = {eta} out of (0,1)")));
        }
        let delta1 = y * x.powf(-eta);
        let delta2 = phi * x.powf(-eta);
        let r = (2.0 / eta).floor() as u32 + 1;
        if !(delta1 < y / 2.0) {
            return Err(Error::InvalidParameter(format!(
                "Δ₁ = {delta1} ≥ y/2 = {} (x^η = {} < 2); raise η or x",
                y / 2.0,
                x.powf(eta)
            )));
        }
        if !(delta2 < phi / 2.0) {
            return Err(Error::InvalidParameter(format!(
                "Δ₂ = {delta2} ≥ φ/2 = {}; raise η or x",
                phi / 2.0
            )));
        }
        Ok(SmoothingParams { eta, delta1, delta2, r })
    }
}

/// Truncation scales: Fourier cut M, line-integral cuts T₀ < T₁.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationParams {
    pub m_cut: i64,
    pub t0: f64,
    pub t1: f64,
}

impl TruncationParams {
    pub fn new(x: f64, params: &SmoothingParams) -> Result<Self> {
        let m_cut = (x.powf(params.eta) / params.delta2).floor() as i64 + 1;
        let t1 = x.powf(1.0 + params.eta) / params.delta1;
        let t0 = (x.ln().powf(1.0 / 3.0)).exp();
        if !(t0 < t1) {
            return Err(Error::InvalidParameter(format!("T₀ = {t0} ≥ T₁ = {t1}")));
        }
        Ok(TruncationParams { m_cut, t0, t1 })
    }
}

// ---------------------------------------------------------------------------
// the C^∞ edge profile
// ---------------------------------------------------------------------------

/// Normalized CDF of the standard bump exp(−1/(1−s²)) on [−1, 1], tabulated
/// once with Gauss–Legendre panels and interpolated by cubic Hermite (the
/// density is known exactly, so each cell uses true endpoint slopes).
#[derive(Debug, Clone)]
struct BumpCdf {
    values: Vec<f64>,
    step: f64,
    total: f64,
}

fn bump(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - s * s)).exp()
    }
}

// 16-point Gauss–Legendre nodes/weights on [−1, 1]
const GL16_X: [f64; 8] = [
    0.0950125098376374,
    0.2816035507792589,
    0.4580167776572274,
    0.6178762444026438,
    0.7554044083550030,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL16_W: [f64; 8] = [
    0.1894506104550685,
    0.1826034150449236,
    0.1691565193950025,
    0.1495959888165767,
    0.1246289712555339,
    0.0951585116824928,
    0.0622535239386479,
    0.0271524594117541,
];

fn gl16<F: Fn(f64) -> f64>(a: f64, b: f64, f: &F) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..8 {
        acc += GL16_W[i] * (f(mid + half * GL16_X[i]) + f(mid - half * GL16_X[i]));
    }
    acc * half
}

impl BumpCdf {
    fn build() -> Self {
        let n = 4096usize;
        let step = 2.0 / n as f64;
        let mut values = Vec::with_capacity(n + 1);
        values.push(0.0);
        let mut acc = 0.0;
        for i in 0..n {
            let a = -1.0 + i as f64 * step;
            acc += gl16(a, a + step, &bump);
            values.push(acc);
        }
        let total = acc;
        BumpCdf { values, step, total }
    }

    /// S(z) ∈ [0, 1] for z ∈ [−1, 1], clamped outside.
    fn eval(&self, z: f64) -> f64 {
        if z <= -1.0 {
            return 0.0;
        }
        if z >= 1.0 {
            return 1.0;
        }
        let pos = (z + 1.0) / self.step;
        let i = (pos.floor() as usize).min(self.values.len() - 2);
        let t = pos - i as f64;
        let z0 = -1.0 + i as f64 * self.step;
        let z1 = z0 + self.step;
        let (v0, v1) = (self.values[i], self.values[i + 1]);
        let (d0, d1) = (bump(z0) * self.step, bump(z1) * self.step);
        // cubic Hermite on the cell
        let t2 = t * t;
        let t3 = t2 * t;
        let h = (2.0 * t3 - 3.0 * t2 + 1.0) * v0
            + (t3 - 2.0 * t2 + t) * d0
            + (-2.0 * t3 + 3.0 * t2) * v1
            + (t3 - t2) * d1;
        (h / self.total).clamp(0.0, 1.0)
    }

    /// S′(z) = bump(z)/∫bump.
    fn derivative(&self, z: f64) -> f64 {
        bump(z) / self.total
    }
}

// ---------------------------------------------------------------------------
// ψ₁
// ---------------------------------------------------------------------------

/// The radial weight: 1 on [x−y+Δ₁, x−Δ₁], 0 outside (x−y, x), C^∞ edges.
#[derive(Debug, Clone)]
pub struct Psi1 {
    pub x: f64,
    pub y: f64,
    pub delta1: f64,
    edge: BumpCdf,
}

impl Psi1 {
    pub fn new(x: f64, y: f64, delta1: f64) -> Result<Self> {
        if !(delta1 > 0.0) || !(delta1 < y / 2.0) {
            return Err(Error::InvalidParameter(format!(
                "Δ₁ = {delta1} outside (0, y/2)"
            )));
        }
        Ok(Psi1 { x, y, delta1, edge: BumpCdf::build() })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let lo = self.x - self.y;
        if t <= lo || t >= self.x {
            return 0.0;
        }
        if t >= lo + self.delta1 && t <= self.x - self.delta1 {
            return 1.0;
        }
        if t < lo + self.delta1 {
            self.edge.eval(2.0 * (t - lo) / self.delta1 - 1.0)
        } else {
            self.edge.eval(2.0 * (self.x - t) / self.delta1 - 1.0)
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let lo = self.x - self.y;
        if t <= lo || t >= self.x {
            return 0.0;
        }
        let scale = 2.0 / self.delta1;
        if t < lo + self.delta1 {
            self.edge.derivative(2.0 * (t - lo) / self.delta1 - 1.0) * scale
        } else if t > self.x - self.delta1 {
            -self.edge.derivative(2.0 * (self.x - t) / self.delta1 - 1.0) * scale
        } else {
            0.0
        }
    }

    /// ∫ψ₁ = y − Δ₁, exact by edge symmetry.
    pub fn integral(&self) -> f64 {
        self.y - self.delta1
    }

    /// Mellin transform ψ̂₁(s) = ∫ ψ₁(t) t^{s−1} dt by composite
    /// Gauss–Legendre, with panel counts tied to the oscillation rate
    /// |Im s|/x and the edge width, refined until the relative change is
    /// below `tol`.
    pub fn mellin(&self, s: Complex64, tol: f64) -> Result<Complex64> {
        let lo = self.x - self.y;
        let tau = s.im.abs();
        let base_edge = 12usize;
        let mut level = 0u32;
        let mut prev: Option<Complex64> = None;
        loop {
            let mult = 1usize << level;
            // edges: enough panels for the bump and the oscillation across Δ₁
            let edge_panels =
                (base_edge + (tau * self.delta1 / self.x / TAU * 6.0) as usize) * mult;
            // plateau: ≥ 6 panels per oscillation wavelength 2πx/τ
            let plateau_span = self.y - 2.0 * self.delta1;
            let plateau_panels = ((tau * plateau_span / self.x / TAU * 6.0) as usize + 8) * mult;
            let f = |t: f64| -> Complex64 {
                // t^{s−1} = e^{(s−1)·ln t}
                let w = (s - Complex64::new(1.0, 0.0)) * t.ln();
                self.eval(t) * w.exp()
            };
            let mut acc = Complex64::new(0.0, 0.0);
            let mut add_panels = |a: f64, b: f64, k: usize| {
                let k = k.max(1);
                let h = (b - a) / k as f64;
                for i in 0..k {
                    let pa = a + i as f64 * h;
                    acc += gl16_c(pa, pa + h, &f);
                }
            };
            add_panels(lo, lo + self.delta1, edge_panels);
            add_panels(lo + self.delta1, self.x - self.delta1, plateau_panels);
            add_panels(self.x - self.delta1, self.x, edge_panels);
            if let Some(p) = prev {
                let scale = acc.norm().max(self.integral() * (self.x).powf(s.re - 1.0) * 1e-6);
                if (acc - p).norm() <= tol * scale {
                    return Ok(acc);
                }
            }
            prev = Some(acc);
            level += 1;
            if level > 6 {
                return Err(Error::QuadratureFailure(format!(
                    "Mellin transform at s = {s} did not converge"
                )));
            }
        }
    }
}

fn gl16_c<F: Fn(f64) -> Complex64>(a: f64, b: f64, f: &F) -> Complex64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..8 {
        acc += GL16_W[i] * (f(mid + half * GL16_X[i]) + f(mid - half * GL16_X[i]));
    }
    acc * half
}

// ---------------------------------------------------------------------------
// ψ₂
// ---------------------------------------------------------------------------

/// The angular weight: 2π-periodic, 1 on [φ₀+Δ₂, φ₀+φ−Δ₂], 0 off
/// [φ₀, φ₀+φ], closed-form Fourier coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Psi2 {
    pub phi0: f64,
    pub phi: f64,
    pub delta2: f64,
    pub r: u32,
}

impl Psi2 {
    pub fn new(phi0: f64, phi: f64, delta2: f64, r: u32) -> Result<Self> {
        if !(phi > 0.0) || phi >= TAU {
            return Err(Error::InvalidParameter(format!("phi = {phi} out of (0, 2π)")));
        }
        if !(delta2 > 0.0) || !(delta2 < phi / 2.0) {
            return Err(Error::InvalidParameter(format!(
                "Δ₂ = {delta2} outside (0, φ/2)"
            )));
        }
        if r < 2 {
            return Err(Error::InvalidParameter("r must be ≥ 2".into()));
        }
        Ok(Psi2 { phi0, phi, delta2, r })
    }

    /// ψ̂₂(m), exactly (φ−Δ₂)/2π at m = 0.
    pub fn coefficient(&self, m: i64) -> Complex64 {
        if m == 0 {
            return Complex64::new((self.phi - self.delta2) / TAU, 0.0);
        }
        let mf = m as f64;
        let half_len = (self.phi - self.delta2) / 2.0;
        let interval = (mf * half_len).sin() / (PI * mf);
        let z = mf * self.delta2 / (2.0 * self.r as f64);
        let box_factor = sinc(z).powi(self.r as i32);
        let phase = Complex64::from_polar(1.0, -mf * (self.phi0 + self.phi / 2.0));
        phase * interval * box_factor
    }

    /// The three-way coefficient bound min(φ, 2/(π|m|), (2/(π|m|))·(2r/(|m|Δ₂))^r),
    /// computed in logs so huge powers saturate to ∞ instead of overflowing.
    pub fn coefficient_bound(&self, m: i64) -> f64 {
        if m == 0 {
            return self.phi;
        }
        let am = m.unsigned_abs() as f64;
        let two_over = 2.0 / (PI * am);
        let ratio = 2.0 * self.r as f64 / (am * self.delta2);
        let powered = (self.r as f64 * ratio.ln()).exp(); // may be inf; fine under min
        self.phi.min(two_over).min(two_over * powered)
    }

    /// Index from which the coefficient tail sums below `tol`:
    /// Σ_{m≥m₀} (2/(πm))(2r/(mΔ₂))^r ≤ (2/(πr))·(2r/(m₀Δ₂))^r ≤ tol.
    pub fn tail_start(&self, tol: f64) -> i64 {
        let r = self.r as f64;
        let base = 2.0 * r / self.delta2;
        let m0 = base * (PI * r * tol / 2.0).powf(-1.0 / r);
        (m0.ceil() as i64).max(1)
    }

    /// Pointwise value. Support and plateau are decided exactly from the
    /// geometry; transition values come from the Fourier series summed well
    /// past its decay point and clamped to [0, 1].
    pub fn eval(&self, t: f64) -> f64 {
        let pos = (t - self.phi0).rem_euclid(TAU);
        if pos > self.phi {
            return 0.0;
        }
        if pos >= self.delta2 && pos <= self.phi - self.delta2 {
            return 1.0;
        }
        let m_far = self.tail_start(1e-12);
        let mut acc = self.coefficient(0).re;
        // e^{imt} recurrence
        let rot = Complex64::from_polar(1.0, t);
        let mut e = Complex64::new(1.0, 0.0);
        for m in 1..=m_far {
            e *= rot;
            acc += 2.0 * (self.coefficient(m) * e).re;
        }
        acc.clamp(0.0, 1.0)
    }

    /// Max over the sample angles of |Σ_{|m|>m_cut} ψ̂₂(m)e^{imt}|, i.e. the
    /// truncation error of the Fourier series cut at m_cut.
    pub fn truncation_error(&self, m_cut: i64, samples: &[f64]) -> f64 {
        let m_far = self.tail_start(1e-13).max(m_cut + 1);
        let mut worst = 0.0f64;
        for &t in samples {
            let rot = Complex64::from_polar(1.0, t);
            let mut e = Complex64::from_polar(1.0, m_cut as f64 * t);
            let mut acc = Complex64::new(0.0, 0.0);
            for m in (m_cut + 1)..=m_far {
                e *= rot;
                acc += self.coefficient(m) * e;
            }
            // the negative-m half is the conjugate: the tail sums to 2·Re
            worst = worst.max((2.0 * acc.re).abs());
        }
        worst
    }
}

fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-8 {
        1.0 - z * z / 6.0
    } else {
        z.sin() / z
    }
}

// ---------------------------------------------------------------------------
// Ψ
// ---------------------------------------------------------------------------

/// Ψ(𝔞) = ψ₁(𝒩𝔞)·ψ₂(arg μ_𝔞), the smooth minorant of the region indicator.
#[derive(Debug, Clone)]
pub struct SmoothWeight {
    pub psi1: Psi1,
    pub psi2: Psi2,
}

impl SmoothWeight {
    /// Build both factors for the region (x, y, φ₀, φ) at smoothing scale η.
    pub fn for_region(
        x: f64,
        y: f64,
        phi0: f64,
        phi: f64,
        eta: f64,
    ) -> Result<(Self, SmoothingParams)> {
        let params = SmoothingParams::new(x, y, phi, eta)?;
        let psi1 = Psi1::new(x, y, params.delta1)?;
        let psi2 = Psi2::new(phi0, phi, params.delta2, params.r)?;
        Ok((SmoothWeight { psi1, psi2 }, params))
    }

    pub fn eval(&self, norm: f64, arg_mu: f64) -> f64 {
        let p1 = self.psi1.eval(norm);
        if p1 == 0.0 {
            return 0.0;
        }
        p1 * self.psi2.eval(arg_mu)
    }

    /// Ψ(𝔞) through the ideal's character fingerprint.
    pub fn eval_ideal(
        &self,
        field: &QuadraticField,
        ctx: &IdealClassContext,
        ideal: &Ideal,
    ) -> Result<f64> {
        let mu = mu_of_ideal(field, ctx, ideal)?;
        Ok(self.eval(ideal.norm() as f64, mu.arg))
    }

    /// The region indicator I_𝒜 that Ψ minorizes.
    pub fn indicator(&self, norm: f64, arg_mu: f64) -> f64 {
        let in_norm = self.psi1.x - self.psi1.y <= norm && norm <= self.psi1.x;
        if in_norm && angle_in_window(arg_mu, self.psi2.phi0, self.psi2.phi) {
            1.0
        } else {
            0.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn params_derivation_and_validation() {
        // valid at x = 10⁷, η = 0.05 (x^η ≈ 2.24)
        let x = 1e7f64;
        let y = x.powf(0.765);
        let p = SmoothingParams::new(x, y, 0.5, 0.05).unwrap();
        assert_eq!(p.r, 41);
        assert!((p.delta1 - y * x.powf(-0.05)).abs() < 1e-9);
        // degenerate at x = 10⁶, η = 0.05: x^η < 2 ⟹ Δ₁ ≥ y/2
        let x = 1e6f64;
        let y = x.powf(0.765);
        assert!(matches!(
            SmoothingParams::new(x, y, 0.5, 0.05),
            Err(Error::InvalidParameter(_))
        ));
        // η = 0.1 restores validity
        assert!(SmoothingParams::new(x, y, 0.5, 0.1).is_ok());
    }

    #[test]
    fn truncation_params() {
        let x = 1e6f64;
        let y = x.powf(0.765);
        let p = SmoothingParams::new(x, y, 0.5, 0.1).unwrap();
        let t = TruncationParams::new(x, &p).unwrap();
        assert!(t.t0 < t.t1);
        assert!(t.m_cut >= 1);
        let expect_m = (x.powf(0.1) / p.delta2).floor() as i64 + 1;
        assert_eq!(t.m_cut, expect_m);
    }

    #[test]
    fn psi1_plateau_support_and_edges() {
        let x = 1000.0;
        let y = 300.0;
        let d1 = 40.0;
        let p = Psi1::new(x, y, d1).unwrap();
        assert_eq!(p.eval(x - y / 2.0), 1.0);
        assert_eq!(p.eval(x + 1.0), 0.0);
        assert_eq!(p.eval(x - y), 0.0);
        assert_eq!(p.eval(x), 0.0);
        // grid sweep: 0 ≤ ψ₁ ≤ 1, plateau exact, support exact
        for i in 0..=10_000 {
            let t = x - y - 10.0 + (y + 20.0) * i as f64 / 10_000.0;
            let v = p.eval(t);
            assert!((0.0..=1.0).contains(&v));
            if t >= x - y + d1 && t <= x - d1 {
                assert_eq!(v, 1.0);
            }
            if t <= x - y || t >= x {
                assert_eq!(v, 0.0);
            }
        }
        // rising edge is monotone
        let mut last = -1.0;
        for i in 0..=500 {
            let t = x - y + d1 * i as f64 / 500.0;
            let v = p.eval(t);
            assert!(v >= last - 1e-14);
            last = v;
        }
    }

    #[test]
    fn psi1_derivative_bound() {
        // |ψ₁′| ≤ C·Δ₁⁻¹ with C ≤ 4, checked on a 10⁴ grid by both the
        // analytic derivative and finite differences
        let x = 5000.0;
        let y = 1200.0;
        let d1 = 150.0;
        let p = Psi1::new(x, y, d1).unwrap();
        let bound = 4.0 / d1;
        let h = 1e-4;
        for i in 0..=10_000 {
            let t = x - y + y * i as f64 / 10_000.0;
            let dv = p.derivative(t);
            assert!(dv.abs() <= bound, "analytic |ψ₁′({t})| = {dv}");
            let fd = (p.eval(t + h) - p.eval(t - h)) / (2.0 * h);
            assert!(fd.abs() <= bound * 1.0001, "fd |ψ₁′({t})| = {fd}");
            assert!((fd - dv).abs() < 2e-4, "fd vs analytic at {t}");
        }
    }

    #[test]
    fn psi1_integral_exact() {
        let p = Psi1::new(2000.0, 600.0, 80.0).unwrap();
        // numeric check of ∫ψ₁ = y − Δ₁
        let mut acc = 0.0;
        let n = 40_000;
        let (a, b) = (p.x - p.y, p.x);
        for i in 0..n {
            let t = a + (b - a) * (i as f64 + 0.5) / n as f64;
            acc += p.eval(t) * (b - a) / n as f64;
        }
        assert!((acc - p.integral()).abs() < 1e-3, "{acc} vs {}", p.integral());
    }

    #[test]
    fn psi2_mean_and_plateau() {
        let p = Psi2::new(0.7, 0.1, 1e-3, 41).unwrap();
        let c0 = p.coefficient(0).re;
        assert!((c0 - (0.1 - 1e-3) / TAU).abs() < 1e-15);
        assert_eq!(p.eval(0.7 + 0.05), 1.0);
        assert_eq!(p.eval(0.7 - 0.01), 0.0);
        assert_eq!(p.eval(0.7 + 0.11), 0.0);
        // wrap-around plateau
        let p = Psi2::new(TAU - 0.05, 0.1, 1e-3, 41).unwrap();
        assert_eq!(p.eval(0.0), 1.0);
    }

    #[test]
    fn psi2_bound_eq11_holds_everywhere() {
        // |ψ̂₂(m)| ≤ min(φ, 2/π|m|, (2/π|m|)(2r/(|m|Δ₂))^r) for |m| ≤ 10⁵
        let p = Psi2::new(0.3, 0.1, 1e-3, 41).unwrap();
        for m in 1..=100_000i64 {
            let c = p.coefficient(m).norm();
            let b = p.coefficient_bound(m);
            assert!(c <= b * (1.0 + 1e-12), "m={m}: |ψ̂₂| = {c} > bound {b}");
        }
    }

    #[test]
    fn psi2_series_matches_pointwise() {
        // the transition evaluator is a genuine function: series at plateau
        // and support points reproduces the exact values
        let p = Psi2::new(1.0, 0.6, 0.12, 11).unwrap();
        let m_far = p.tail_start(1e-12);
        let series = |t: f64| -> f64 {
            let rot = Complex64::from_polar(1.0, t);
            let mut e = Complex64::new(1.0, 0.0);
            let mut acc = p.coefficient(0).re;
            for _m in 1..=m_far {
                e *= rot;
                acc += 2.0 * (p.coefficient(_m) * e).re;
            }
            acc
        };
        for i in 0..200 {
            let t = i as f64 * TAU / 200.0;
            let direct = p.eval(t);
            let s = series(t);
            assert!((direct - s.clamp(0.0, 1.0)).abs() < 1e-9, "t={t}: {direct} vs {s}");
        }
    }

    #[test]
    fn psi2_parseval() {
        let p = Psi2::new(0.4, 0.8, 0.1, 21).unwrap();
        // Σ|ψ̂₂(m)|² over |m| ≤ m_far vs (1/2π)∫ψ₂²
        let m_far = p.tail_start(1e-13);
        let mut sum = p.coefficient(0).norm_sqr();
        for m in 1..=m_far {
            sum += 2.0 * p.coefficient(m).norm_sqr();
        }
        let mut integral = 0.0;
        let n = 200_000;
        for i in 0..n {
            let t = p.phi0 + p.phi * (i as f64 + 0.5) / n as f64;
            let v = p.eval(t);
            integral += v * v * p.phi / n as f64;
        }
        let rhs = integral / TAU;
        assert!(
            (sum - rhs).abs() <= 1e-6 * rhs,
            "Parseval: Σ|ĉ|² = {sum}, (1/2π)∫ψ₂² = {rhs}"
        );
    }

    #[test]
    fn truncation_error_decreases_and_m0_shape() {
        let p = Psi2::new(0.2, 0.5, 0.05, 21).unwrap();
        let samples: Vec<f64> = (0..256).map(|i| i as f64 * TAU / 256.0).collect();
        let e_m = |m: i64| p.truncation_error(m, &samples);
        // M = 0: error ≈ max |ψ₂ − mean| ≈ 1 − ψ̂₂(0) at plateau points
        let e0 = e_m(0);
        let plateau_gap = 1.0 - p.coefficient(0).re;
        assert!((e0 - plateau_gap).abs() < 0.15, "e0 = {e0}, gap = {plateau_gap}");
        // doubling M decreases the error monotonically to ~0; the sharp
        // drop starts past the box-decay onset 2r/Δ₂ = 840
        let mut last = e0;
        for m in [8i64, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096] {
            let e = e_m(m);
            assert!(e <= last * 1.05, "error rose at M={m}: {e} vs {last}");
            last = e;
        }
        assert!(last < 1e-6, "error at M=4096 should be tiny, got {last}");
    }

    #[test]
    fn mellin_basics() {
        let x = 2000.0;
        let y = 700.0;
        let p = Psi1::new(x, y, 90.0).unwrap();
        // ψ̂₁(1) = ∫ψ₁ ∈ [y−2Δ₁, y]
        let v = p.mellin(Complex64::new(1.0, 0.0), 1e-9).unwrap();
        assert!(v.im.abs() < 1e-9);
        assert!(v.re >= y - 180.0 && v.re <= y);
        assert!((v.re - p.integral()).abs() < 1e-6 * y);
        // conjugate symmetry
        let s = Complex64::new(0.5, 7.3);
        let a = p.mellin(s, 1e-9).unwrap();
        let b = p.mellin(s.conj(), 1e-9).unwrap();
        assert!((a.conj() - b).norm() < 1e-8 * a.norm().max(1e-12));
    }

    #[test]
    fn mellin_decay_at_t1() {
        // |ψ̂₁(1/2+iT₁)| well below |ψ̂₁(1/2)|; needs x^η comfortably > 1
        // for T₁ to sit in the decay regime of the edge transform
        let x = 1_000_000.0f64;
        let y = x.powf(0.765);
        let params = SmoothingParams::new(x, y, 0.5, 0.2).unwrap();
        let p = Psi1::new(x, y, params.delta1).unwrap();
        let t = TruncationParams::new(x, &params).unwrap();
        let at0 = p.mellin(Complex64::new(0.5, 0.0), 1e-8).unwrap().norm();
        let at_t1 = p.mellin(Complex64::new(0.5, t.t1), 1e-6).unwrap().norm();
        assert!(
            at_t1 <= 1e-3 * at0,
            "|ψ̂₁(1/2+iT₁)| = {at_t1} vs |ψ̂₁(1/2)| = {at0}"
        );
    }

    #[test]
    fn psi_minorizes_indicator() {
        let x = 50_000.0f64;
        let y = x.powf(0.8);
        let (w, _) = SmoothWeight::for_region(x, y, 1.2, 0.9, 0.2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let n = rng.gen_range((x - 2.0 * y)..(x + y));
            let a = rng.gen_range(0.0..TAU);
            let psi = w.eval(n, a);
            let ind = w.indicator(n, a);
            assert!(psi >= 0.0 && psi <= 1.0);
            assert!(psi <= ind + 1e-15, "Ψ({n},{a}) = {psi} > I = {ind}");
        }
    }

    #[test]
    fn psi_on_ideals() {
        let field = QuadraticField::new(-1).unwrap();
        let ctx = IdealClassContext::principal(&field).unwrap();
        let x = 5000.0f64;
        let (w, _) = SmoothWeight::for_region(x, 2000.0, 0.3, 1.0, 0.2).unwrap();
        let pids =
            crate::ideals::enumerate_prime_ideals(&field, None, 2500, 5000, 1 << 22).unwrap();
        let mut nonzero = 0;
        for pid in &pids {
            let v = w.eval_ideal(&field, &ctx, &pid.ideal).unwrap();
            assert!((0.0..=1.0).contains(&v));
            let mu = mu_of_ideal(&field, &ctx, &pid.ideal).unwrap();
            assert!(v <= w.indicator(pid.norm() as f64, mu.arg) + 1e-15);
            if v > 0.0 {
                nonzero += 1;
            }
        }
        assert!(nonzero > 10, "smooth weight should hit some ideals");
    }
}
