//! Dirichlet polynomials over ideal streams and the measurements built on
//! them: the line-integral main terms, the error functional
//!
//! ```text
//! E = Σ_{0<|m|≤M} ∫_{−T₁}^{T₁} |F(1/2 + it, λ^m)| dt,
//! F(s, λ^m) = Σ_{𝔞∈𝒞, c₁x ≤ 𝒩𝔞 ≤ c₂x} c(𝔞) λ^m(𝔞) 𝒩(𝔞)^{−s},
//! ```
//!
//! and the thin/wide ratio law
//!
//! ```text
//! Σ_{𝔞∈𝒜} c(𝔞)Ψ(𝔞) ≈ (∫ψ₁)(2π·ψ̂₂(0)) / (2π y₁) · Σ_{𝔞∈ℬ} c(𝔞)
//!                  = (y−Δ₁)(φ−Δ₂) / (2π y₁) · Σ_{𝔞∈ℬ} c(𝔞),
//! ```
//!
//! everything by direct summation over exact ideal streams — these are
//! measurements of the asymptotic claims, not proofs. The constant anchor
//! factor λ^m(𝔞₀) shared by every term of a class is dropped throughout: it
//! has modulus 1 and cancels from E, from |F|, and from every ratio.
//!
//! Term data is (𝒩𝔞, arg μ_𝔞, c(𝔞)); summation is compensated (Kahan) so
//! grid evaluations stay reproducible at fixed order.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chars::{mu_of_generator, mu_of_ideal};
use crate::field::QuadraticField;
use crate::ideals::{enumerate_ideals_h1, enumerate_prime_ideals, IdealClassContext};
use crate::regions::{BSetSpec, RegionSpec};
use crate::smoothing::{Psi1, SmoothingParams, SmoothWeight, TruncationParams};
use crate::{Error, Result};

/// A coefficient family c(𝔞) with its divisor-bound exponent D
/// (|c(𝔞)| ≤ τ(𝔞)^D).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CoefficientModel {
    /// c ≡ 1 (D = 0).
    One,
    /// c ≡ 0.
    Zero,
    /// c(𝔞) = “is 𝒩𝔞 odd” — a cheap non-constant divisor-bounded family
    /// for exercising sweeps (D = 0).
    OddNorm,
}

impl CoefficientModel {
    pub fn eval(&self, norm: u64) -> f64 {
        match self {
            CoefficientModel::One => 1.0,
            CoefficientModel::Zero => 0.0,
            CoefficientModel::OddNorm => {
                if norm % 2 == 1 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn divisor_exponent(&self) -> f64 {
        0.0
    }

    pub fn name(&self) -> &'static str {
        match self {
            CoefficientModel::One => "one",
            CoefficientModel::Zero => "zero",
            CoefficientModel::OddNorm => "odd-norm",
        }
    }
}

/// One term: norm, angular fingerprint, coefficient.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IdealTerm {
    pub norm: u64,
    pub arg_mu: f64,
    pub coef: f64,
}

/// F(s, λ^m) as a concrete finite term list over a norm window.
#[derive(Debug, Clone)]
pub struct DirichletPolynomial {
    pub terms: Vec<IdealTerm>,
    pub window: (f64, f64),
}

impl DirichletPolynomial {
    /// All ideals of the (h = 1) field with norm in [lo, hi].
    pub fn over_ideals_h1(
        field: &QuadraticField,
        model: CoefficientModel,
        lo: f64,
        hi: f64,
        cap: usize,
    ) -> Result<Self> {
        let stream = enumerate_ideals_h1(field, lo, hi, cap)?;
        let mut terms = Vec::with_capacity(stream.len());
        for (gen, norm) in stream {
            let mu = mu_of_generator(field, &gen)?;
            terms.push(IdealTerm { norm, arg_mu: mu.arg, coef: model.eval(norm) });
        }
        Ok(DirichletPolynomial { terms, window: (lo, hi) })
    }

    /// Prime ideals of the class with norm in [lo, hi] (any class number).
    pub fn over_prime_ideals(
        field: &QuadraticField,
        ctx: &IdealClassContext,
        model: CoefficientModel,
        lo: u64,
        hi: u64,
        sieve_cap: u64,
    ) -> Result<Self> {
        let pids = enumerate_prime_ideals(field, Some(ctx), lo, hi, sieve_cap)?;
        let mut terms = Vec::with_capacity(pids.len());
        for pid in &pids {
            let mu = mu_of_ideal(field, ctx, &pid.ideal)?;
            let norm = pid.norm() as u64;
            terms.push(IdealTerm { norm, arg_mu: mu.arg, coef: model.eval(norm) });
        }
        Ok(DirichletPolynomial { terms, window: (lo as f64, hi as f64) })
    }

    /// A hand-built polynomial (toy inputs, tests).
    pub fn from_terms(terms: Vec<IdealTerm>, window: (f64, f64)) -> Self {
        DirichletPolynomial { terms, window }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// F(s, λ^m) = Σ c(𝔞) e^{i·m·arg μ_𝔞} 𝒩𝔞^{−s}, Kahan-compensated.
    pub fn eval(&self, m: i64, s: Complex64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut comp = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            if t.coef == 0.0 {
                continue;
            }
            let ln_n = (t.norm as f64).ln();
            let angle = (m as f64 * t.arg_mu).rem_euclid(TAU) - s.im * ln_n;
            let magnitude = t.coef * (-s.re * ln_n).exp();
            let term = Complex64::from_polar(magnitude.abs(), angle)
                * if magnitude < 0.0 { -1.0 } else { 1.0 };
            let yk = term - comp;
            let tk = sum + yk;
            comp = (tk - sum) - yk;
            sum = tk;
        }
        sum
    }

    /// |F(1/2+it, λ^m)| over a uniform t-grid, with a per-term rotation
    /// recurrence (one complex multiply per term per node).
    pub fn abs_on_critical_grid(&self, m: i64, ts_start: f64, ts_step: f64, n: usize) -> Vec<f64> {
        let mut acc = vec![Complex64::new(0.0, 0.0); n];
        for t in &self.terms {
            if t.coef == 0.0 {
                continue;
            }
            let ln_n = (t.norm as f64).ln();
            let mag = t.coef / (t.norm as f64).sqrt();
            let start_angle = (m as f64 * t.arg_mu).rem_euclid(TAU) - ts_start * ln_n;
            let mut z = Complex64::from_polar(mag.abs(), start_angle)
                * if mag < 0.0 { -1.0 } else { 1.0 };
            let rot = Complex64::from_polar(1.0, -ts_step * ln_n);
            for a in acc.iter_mut() {
                *a += z;
                z *= rot;
            }
        }
        acc.into_iter().map(|z| z.norm()).collect()
    }
}

/// Grid spacing fine enough to resolve the oscillation of 𝒩^{−it} across
/// the window: π / (2 ln(c₂x)).
pub fn max_grid_step(c2x: f64) -> f64 {
    std::f64::consts::PI / (2.0 * c2x.ln())
}

/// E and its comparison ratio E/√x, trapezoid-approximated.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ErrorSumReport {
    pub e_value: f64,
    pub e_over_sqrt_x: f64,
    pub m_cut: i64,
    pub t1: f64,
    pub grid_points: usize,
}

/// E = Σ_{0<|m|≤M} ∫_{−T₁}^{T₁} |F(1/2+it, λ^m)| dt. The integrand for
/// (−m, −t) mirrors (m, t), so only m > 0 is computed and doubled.
pub fn error_sum_e(
    poly: &DirichletPolynomial,
    m_cut: i64,
    t1: f64,
    grid_step: f64,
    x_scale: f64,
) -> Result<ErrorSumReport> {
    let h_max = max_grid_step(poly.window.1);
    if grid_step > h_max * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "grid step {grid_step} too coarse to resolve oscillation; need ≤ {h_max}"
        )));
    }
    if m_cut < 0 {
        return Err(Error::InvalidParameter("m_cut must be ≥ 0".into()));
    }
    let n = ((2.0 * t1) / grid_step).ceil() as usize + 1;
    if n > 40_000_000 {
        return Err(Error::CapacityExceeded(format!("E grid of {n} points")));
    }
    let ms: Vec<i64> = (1..=m_cut).collect();
    let integrals: Vec<f64> = ms
        .par_iter()
        .map(|&m| {
            let vals = poly.abs_on_critical_grid(m, -t1, grid_step, n);
            trapezoid(&vals, grid_step)
        })
        .collect();
    // fixed-order reduction; + 0.0 turns the empty sum's −0.0 into +0.0
    let e_value = 2.0 * integrals.iter().sum::<f64>() + 0.0;
    Ok(ErrorSumReport {
        e_value,
        e_over_sqrt_x: e_value / x_scale.sqrt(),
        m_cut,
        t1,
        grid_points: n,
    })
}

fn trapezoid(vals: &[f64], h: f64) -> f64 {
    if vals.len() < 2 {
        return 0.0;
    }
    let inner: f64 = vals[1..vals.len() - 1].iter().sum();
    h * (inner + 0.5 * (vals[0] + vals[vals.len() - 1]))
}

/// 𝐌_𝒜 = (ψ̂₂(0)/2πi) ∫_{1/2−iT}^{1/2+iT} F(s, λ⁰) ψ̂₁(s) ds by trapezoid
/// quadrature along the critical line (ds = i·dt).
pub fn main_term_ma(
    poly: &DirichletPolynomial,
    psi1: &Psi1,
    psi2_mean: f64,
    t_limit: f64,
    grid_step: f64,
) -> Result<Complex64> {
    let h_max = max_grid_step(poly.window.1);
    if grid_step > h_max * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "grid step {grid_step} too coarse; need ≤ {h_max}"
        )));
    }
    let n = ((2.0 * t_limit) / grid_step).ceil() as usize + 1;
    let ts: Vec<f64> = (0..n).map(|i| -t_limit + i as f64 * grid_step).collect();
    let vals: Vec<Complex64> = ts
        .par_iter()
        .map(|&t| {
            let s = Complex64::new(0.5, t);
            let f = poly.eval(0, s);
            let m = psi1.mellin(s, 1e-8)?;
            Ok(f * m)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 1..vals.len() {
        acc += 0.5 * (vals[i] + vals[i - 1]) * grid_step;
    }
    Ok(acc * psi2_mean / TAU)
}

/// The plain-kernel variant of the main term,
/// (w/2πi)∫_{1/2−iT₀}^{1/2+iT₀} F(s,λ⁰) x^{s−1} ds with weight w — used with
/// w = φy/2π for the 𝒜 shape and w = y₁ for 𝐌_ℬ.
pub fn main_term_plain_kernel(
    poly: &DirichletPolynomial,
    weight: f64,
    x: f64,
    t_limit: f64,
    grid_step: f64,
) -> Result<Complex64> {
    let h_max = max_grid_step(poly.window.1);
    if grid_step > h_max * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "grid step {grid_step} too coarse; need ≤ {h_max}"
        )));
    }
    let n = ((2.0 * t_limit) / grid_step).ceil() as usize + 1;
    let ln_x = x.ln();
    let ts: Vec<f64> = (0..n).map(|i| -t_limit + i as f64 * grid_step).collect();
    let vals: Vec<Complex64> = ts
        .par_iter()
        .map(|&t| {
            let s = Complex64::new(0.5, t);
            let f = poly.eval(0, s);
            // x^{s−1} = e^{(s−1)·ln x}
            let kernel = ((s - Complex64::new(1.0, 0.0)) * ln_x).exp();
            f * kernel
        })
        .collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 1..vals.len() {
        acc += 0.5 * (vals[i] + vals[i - 1]) * grid_step;
    }
    Ok(acc * weight / TAU)
}

/// Termwise Mellin-inversion oracle for 𝐌_𝒜: as T → ∞ the line integral
/// collapses to ψ̂₂(0)·Σ c(𝔞)·ψ₁(𝒩𝔞).
pub fn ma_termwise_oracle(poly: &DirichletPolynomial, psi1: &Psi1, psi2_mean: f64) -> f64 {
    let mut acc = 0.0;
    let mut comp = 0.0;
    for t in &poly.terms {
        let term = t.coef * psi1.eval(t.norm as f64) * psi2_mean;
        let yk = term - comp;
        let tk = acc + yk;
        comp = (tk - acc) - yk;
        acc = tk;
    }
    acc
}

/// The spectral-side diagnostics A₁ = max_{0<|m|≤M} |ψ̂₂(m)| and
/// A₂ = sup_{|t|≤T₁} |ψ̂₁(1/2+it)| (grid-sampled).
pub fn spectral_diagnostics(
    psi2: &crate::smoothing::Psi2,
    psi1: &Psi1,
    m_cut: i64,
    t1: f64,
) -> Result<(f64, f64)> {
    let mut a1 = 0.0f64;
    for m in 1..=m_cut {
        a1 = a1.max(psi2.coefficient(m).norm());
    }
    let mut a2 = 0.0f64;
    let samples = 64;
    for i in 0..=samples {
        let t = t1 * i as f64 / samples as f64;
        a2 = a2.max(psi1.mellin(Complex64::new(0.5, t), 1e-6)?.norm());
    }
    Ok((a1, a2))
}

// ---------------------------------------------------------------------------
// ratio law
// ---------------------------------------------------------------------------

/// Outcome of one thin/wide comparison. Two right-hand sides are carried:
/// the smoothing-corrected factor (y−Δ₁)(φ−Δ₂)/(2πy₁), which removes the
/// finite-Δ mass deficit and leaves only arithmetic noise, and the
/// asymptotic factor φy/(2πy₁) of the ratio law itself, whose deviation is
/// dominated by the deterministic Δ-corrections 1 − (1−x^{−η})² and so
/// exhibits the (1+o(1)) convergence as x grows.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RatioReport {
    pub lhs: f64,
    pub wide_sum: f64,
    pub factor: f64,
    pub rhs: f64,
    /// |lhs/rhs − 1| against the smoothing-corrected factor.
    pub deviation: f64,
    pub factor_asymptotic: f64,
    /// |lhs/(factor_asymptotic·wide_sum) − 1|.
    pub deviation_asymptotic: f64,
    pub thin_terms: usize,
    pub wide_terms: usize,
}

fn finish_ratio(
    lhs: f64,
    wide_sum: f64,
    factor: f64,
    factor_asymptotic: f64,
    thin: usize,
    wide: usize,
) -> RatioReport {
    let rhs = factor * wide_sum;
    let dev = |rhs: f64| {
        if lhs == 0.0 && rhs == 0.0 {
            0.0
        } else {
            (lhs / rhs - 1.0).abs()
        }
    };
    RatioReport {
        lhs,
        wide_sum,
        factor,
        rhs,
        deviation: dev(rhs),
        factor_asymptotic,
        deviation_asymptotic: dev(factor_asymptotic * wide_sum),
        thin_terms: thin,
        wide_terms: wide,
    }
}

/// Direct-summation check of
/// Σ_{𝒜} c·Ψ = (y−Δ₁)(φ−Δ₂)/(2πy₁) · Σ_{ℬ} c · (1+o(1)):
/// the left side sums the smooth weight over the thin region, the right
/// side counts the wide window; the factor uses ∫ψ₁ = y−Δ₁ and
/// 2π·ψ̂₂(0) = φ−Δ₂ exactly.
pub fn ratio_check(
    field: &QuadraticField,
    region: &RegionSpec,
    bset: &BSetSpec,
    eta: f64,
    model: CoefficientModel,
    cap: usize,
) -> Result<RatioReport> {
    let (weight, params) = SmoothWeight::for_region(
        region.x,
        region.y,
        region.phi0,
        region.phi,
        eta,
    )?;
    let thin = enumerate_ideals_h1(field, region.x - region.y, region.x, cap)?;
    let mut lhs = 0.0;
    let mut comp = 0.0;
    for (gen, norm) in &thin {
        let c = model.eval(*norm);
        if c == 0.0 {
            continue;
        }
        let mu = mu_of_generator(field, gen)?;
        let term = c * weight.eval(*norm as f64, mu.arg);
        let yk = term - comp;
        let tk = lhs + yk;
        comp = (tk - lhs) - yk;
        lhs = tk;
    }
    let wide = enumerate_ideals_h1(field, bset.x - bset.y1, bset.x, cap)?;
    let wide_sum: f64 = wide.iter().map(|(_, n)| model.eval(*n)).sum();
    let factor =
        (region.y - params.delta1) * (region.phi - params.delta2) / (TAU * bset.y1);
    let factor_asymptotic = region.y * region.phi / (TAU * bset.y1);
    Ok(finish_ratio(lhs, wide_sum, factor, factor_asymptotic, thin.len(), wide.len()))
}

/// Bilinear variant: pairs (𝔞, 𝔟) with 𝒩𝔞 ≤ x^η,
/// Σ c(𝔞)Ψ(𝔞𝔟) vs factor·Σ c(𝔞)·#{𝔟 : 𝔞𝔟 ∈ ℬ}. Uses μ-multiplicativity:
/// arg μ(𝔞𝔟) = arg μ(𝔞) + arg μ(𝔟) mod 2π.
pub fn ratio_check_bilinear(
    field: &QuadraticField,
    region: &RegionSpec,
    bset: &BSetSpec,
    eta: f64,
    model: CoefficientModel,
    cap: usize,
) -> Result<RatioReport> {
    let (weight, params) = SmoothWeight::for_region(
        region.x,
        region.y,
        region.phi0,
        region.phi,
        eta,
    )?;
    let short_hi = region.x.powf(eta);
    let short = enumerate_ideals_h1(field, 1.0, short_hi, cap)?;
    let mut lhs = 0.0;
    let mut rhs_sum = 0.0;
    let mut thin_terms = 0usize;
    let mut wide_terms = 0usize;
    for (a_gen, a_norm) in &short {
        let c = model.eval(*a_norm);
        if c == 0.0 {
            continue;
        }
        let a_arg = mu_of_generator(field, a_gen)?.arg;
        let af = *a_norm as f64;
        // thin side: 𝒩(𝔞𝔟) ∈ [x−y, x]
        let co = enumerate_ideals_h1(
            field,
            (region.x - region.y) / af,
            region.x / af,
            cap,
        )?;
        for (b_gen, b_norm) in &co {
            let b_arg = mu_of_generator(field, b_gen)?.arg;
            let prod_norm = af * *b_norm as f64;
            let prod_arg = (a_arg + b_arg).rem_euclid(TAU);
            lhs += c * weight.eval(prod_norm, prod_arg);
            thin_terms += 1;
        }
        // wide side: 𝒩(𝔞𝔟) ∈ [x−y₁, x]
        let wide = enumerate_ideals_h1(field, (bset.x - bset.y1) / af, bset.x / af, cap)?;
        rhs_sum += c * wide.len() as f64;
        wide_terms += wide.len();
    }
    let factor =
        (region.y - params.delta1) * (region.phi - params.delta2) / (TAU * bset.y1);
    let factor_asymptotic = region.y * region.phi / (TAU * bset.y1);
    Ok(finish_ratio(lhs, rhs_sum, factor, factor_asymptotic, thin_terms, wide_terms))
}

/// Everything a sweep row reports, CSV-ready.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub x: f64,
    pub y: f64,
    pub phi: f64,
    pub y1: f64,
    pub m_cut: i64,
    pub t0: f64,
    pub t1: f64,
    pub e_value: f64,
    pub e_over_sqrt_x: f64,
    /// The B solving E/√x = exp(−B·(ln x)^{1/4}) — reported, never asserted.
    pub implied_b: f64,
    pub a1: f64,
    pub a2: f64,
    pub ma_re: f64,
    pub ma_im: f64,
    pub ma_t0_re: f64,
    pub ma_t0_im: f64,
    pub mb_re: f64,
    pub mb_im: f64,
    pub truncation_difference: f64,
    pub ratio_deviation: f64,
}

/// One full sweep at scale x: builds the window polynomial, measures E, the
/// main terms at both truncations, the wide-window main term, and the ratio
/// deviation. The t-range for E is capped and the total work is bounded
/// (terms × grid × m); oversized requests fail loudly.
#[allow(clippy::too_many_arguments)]
pub fn dirichlet_sweep(
    field: &QuadraticField,
    x: f64,
    phi0: f64,
    phi: f64,
    eta: f64,
    y1: f64,
    model: CoefficientModel,
    cap: usize,
) -> Result<SweepRow> {
    let y = x.powf(crate::regions::THETA1);
    let region = RegionSpec::new(x, y, phi0, phi)?;
    let bset = BSetSpec::with_width(x, y1)?;
    let params = SmoothingParams::new(x, y, phi, eta)?;
    let trunc = TruncationParams::new(x, &params)?;
    let psi1 = Psi1::new(x, y, params.delta1)?;
    let psi2 = crate::smoothing::Psi2::new(phi0, phi, params.delta2, params.r)?;
    let (c1, c2) = (0.5, 2.0);
    let poly = DirichletPolynomial::over_ideals_h1(field, model, c1 * x, c2 * x, cap)?;
    let step = max_grid_step(c2 * x) * 0.9;
    let t_for_e = trunc.t1.min(2_000.0);
    let m_for_e = trunc.m_cut.min(64);
    let work = poly.len() as f64 * (2.0 * t_for_e / step) * m_for_e as f64;
    if work > 4e9 {
        return Err(Error::CapacityExceeded(format!(
            "sweep at x = {x} needs ~{work:.1e} term-evaluations; reduce x (≤ ~3·10⁴ is \
             comfortable) or the m- and t-ranges"
        )));
    }
    let e = error_sum_e(&poly, m_for_e, t_for_e, step, x)?;
    let (a1, a2) = spectral_diagnostics(&psi2, &psi1, m_for_e, t_for_e)?;
    let ma = main_term_ma(&poly, &psi1, psi2.coefficient(0).re, t_for_e, step)?;
    let ma_t0 = main_term_plain_kernel(&poly, phi * y / TAU, x, trunc.t0, step)?;
    let mb = main_term_plain_kernel(&poly, bset.y1, x, trunc.t0, step)?;
    let ratio = ratio_check(field, &region, &bset, eta, model, cap)?;
    Ok(SweepRow {
        x,
        y,
        phi,
        y1: bset.y1,
        m_cut: trunc.m_cut,
        t0: trunc.t0,
        t1: trunc.t1,
        e_value: e.e_value,
        e_over_sqrt_x: e.e_over_sqrt_x,
        implied_b: -e.e_over_sqrt_x.ln() / x.ln().powf(0.25),
        a1,
        a2,
        ma_re: ma.re,
        ma_im: ma.im,
        ma_t0_re: ma_t0.re,
        ma_t0_im: ma_t0.im,
        mb_re: mb.re,
        mb_im: mb.im,
        truncation_difference: (ma - ma_t0).norm(),
        ratio_deviation: ratio.deviation,
    })
}

/// |𝐌_𝒜(T₁, ψ̂₁-kernel) − 𝐌_𝒜(T₀, plain kernel)| / (φy) at scale x, both
/// main terms evaluated on the same norm-window polynomial (the window is
/// the support of ψ₁ plus slack, which is all the main term sees).
pub fn truncation_difference_at(
    field: &QuadraticField,
    x: f64,
    phi: f64,
    eta: f64,
    cap: usize,
) -> Result<f64> {
    let y = x.powf(crate::regions::THETA1);
    let params = SmoothingParams::new(x, y, phi, eta)?;
    let trunc = TruncationParams::new(x, &params)?;
    let psi1 = Psi1::new(x, y, params.delta1)?;
    let psi2 = crate::smoothing::Psi2::new(0.0, phi, params.delta2, params.r)?;
    let pad = 2.0 * params.delta1;
    let poly = DirichletPolynomial::over_ideals_h1(
        field,
        CoefficientModel::One,
        x - y - pad,
        x + pad,
        cap,
    )?;
    let step = max_grid_step(x + pad) * 0.9;
    let t1 = trunc.t1.min(2_000.0);
    let ma = main_term_ma(&poly, &psi1, psi2.coefficient(0).re, t1, step)?;
    let ma_t0 = main_term_plain_kernel(&poly, phi * y / TAU, x, trunc.t0, step)?;
    Ok((ma - ma_t0).norm() / (phi * y))
}
