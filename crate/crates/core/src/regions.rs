//! Thin target regions and their geometry.
//!
//! A [`RegionSpec`] pairs a norm window `x−y ≤ 𝒩(𝔞) ≤ x` with an angular
//! window `arg μ_𝔞 ∈ [φ₀, φ₀+φ) mod 2π` (half-open internally, so circle
//! partitions are disjoint; the boundary has measure zero). The exponents
//! θ₁ = 0.765 and θ₂ = 0.235 mark the proven thinness regime
//! y ≥ x^θ₁, φ ≥ x^{−θ₂}.
//!
//! For indefinite forms the angular position is the scale-free exponent
//! F(ξ,η) = ln|σ₁(f)/σ₂(f)| / (2 ln ε), and an [`FRegionSpec`] describes
//! 𝒮(x,y,ω,φ) = {x−y ≤ Q(ξ,η) ≤ x, ω ≤ F(ξ,η) ≤ ω+φ}, a pair of antipodal
//! patches between two hyperbolas. A window [ω, ω+φ] in F corresponds to the
//! wedge between lines of slopes η/ξ = −2a/(b + √Δ·coth(ω·ln ε)) and the
//! same at ω+φ; on the Q < 0 side the coth becomes tanh. The simple form
//! ξ² − dη² specializes to the bounds (1/√d)·tanh resp. coth for −η/ξ, with
//! asymptotes η/ξ = ±1/√d.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::chars::mu_of_ideal;
use crate::field::QuadraticField;
use crate::ideals::{Ideal, IdealClassContext};
use crate::{Error, Result};

/// Thinness exponent of the norm window: y ≥ x^θ₁.
pub const THETA1: f64 = 0.765;
/// Thinness exponent of the angular window: φ ≥ x^{−θ₂}.
pub const THETA2: f64 = 0.235;

/// Norm window × angular window in arg-μ space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub x: f64,
    pub y: f64,
    pub phi0: f64,
    pub phi: f64,
}

impl RegionSpec {
    pub fn new(x: f64, y: f64, phi0: f64, phi: f64) -> Result<Self> {
        if !(x > 0.0) || !(y > 0.0) || y > x || !(phi > 0.0) || phi >= TAU {
            return Err(Error::InvalidParameter(format!(
                "region (x={x}, y={y}, phi={phi}) out of range"
            )));
        }
        Ok(RegionSpec { x, y, phi0, phi })
    }

    /// The theorem-regime region at scale x: y = x^θ₁, φ = x^{−θ₂}.
    pub fn theorem_regime(x: f64, phi0: f64) -> Result<Self> {
        Self::new(x, x.powf(THETA1), phi0, x.powf(-THETA2))
    }

    /// y ≥ x^θ₁ and φ ≥ x^{−θ₂}.
    pub fn in_theorem_regime(&self) -> bool {
        self.y >= self.x.powf(THETA1) - 1e-9 && self.phi >= self.x.powf(-THETA2) - 1e-12
    }

    pub fn norm_contains(&self, n: i128) -> bool {
        let nf = n as f64;
        self.x - self.y <= nf && nf <= self.x
    }
}

/// Is `angle` in the half-open window [φ₀, φ₀+φ) mod 2π?
pub fn angle_in_window(angle: f64, phi0: f64, phi: f64) -> bool {
    (angle - phi0).rem_euclid(TAU) < phi
}

/// Membership of an ideal in the region: norm window and arg μ window.
/// The ideal must lie in the class of `ctx`.
pub fn contains_ideal(
    region: &RegionSpec,
    field: &QuadraticField,
    ctx: &IdealClassContext,
    ideal: &Ideal,
) -> Result<bool> {
    if !region.norm_contains(ideal.norm()) {
        return Ok(false);
    }
    let mu = mu_of_ideal(field, ctx, ideal)?;
    Ok(angle_in_window(mu.arg, region.phi0, region.phi))
}

/// The coarse volume heuristic φ·y/(h·ln x) for the number of prime ideals
/// in the region.
///
/// Note: this treats the angular coordinate as having unit total mass; with
/// arg μ uniform on [0, 2π) the equidistribution prediction is this value
/// divided by 2π — see [`equidistributed_prime_count`]. Both are reported
/// by the experiment harness.
pub fn expected_prime_count(region: &RegionSpec, h: u32) -> f64 {
    region.phi * region.y / (h as f64 * region.x.ln())
}

/// Equidistribution prediction: (φ/2π) · y/(h·ln x) prime ideals, i.e. the
/// prime-ideal count of the norm window spread uniformly over the circle.
pub fn equidistributed_prime_count(region: &RegionSpec, h: u32) -> f64 {
    expected_prime_count(region, h) / TAU
}

/// Wide comparison window ℬ: norms in [x−y₁, x], all angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BSetSpec {
    pub x: f64,
    pub y1: f64,
}

impl BSetSpec {
    /// Default width y₁ = x/2. The asymptotic choice x·exp(−3·ln^{1/3} x)
    /// only dominates theorem-regime y for x beyond ~10²⁰, so desk-scale
    /// runs treat y₁ as free; the ratio law is scale-free in y₁.
    pub fn new(x: f64) -> Self {
        BSetSpec { x, y1: x / 2.0 }
    }

    pub fn with_width(x: f64, y1: f64) -> Result<Self> {
        if !(y1 > 0.0) || y1 > x {
            return Err(Error::InvalidParameter(format!("y1 = {y1} out of (0, x]")));
        }
        Ok(BSetSpec { x, y1 })
    }

    /// The asymptotic width x·exp(−3·ln^{1/3} x).
    pub fn asymptotic_width(x: f64) -> f64 {
        x * (-3.0 * x.ln().powf(1.0 / 3.0)).exp()
    }

    pub fn norm_contains(&self, n: i128) -> bool {
        let nf = n as f64;
        self.x - self.y1 <= nf && nf <= self.x
    }
}

// ---------------------------------------------------------------------------
// hyperbola sector geometry for indefinite forms
// ---------------------------------------------------------------------------

/// Region 𝒮(x, y, ω, φ) in F-space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FRegionSpec {
    pub x: f64,
    pub y: f64,
    pub omega: f64,
    pub phi: f64,
}

impl FRegionSpec {
    pub fn new(x: f64, y: f64, omega: f64, phi: f64) -> Result<Self> {
        if !(x > 0.0) || !(y > 0.0) || y > x || !(phi > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "F-region (x={x}, y={y}, phi={phi}) out of range"
            )));
        }
        Ok(FRegionSpec { x, y, omega, phi })
    }

    /// The arg-μ parameterization of the same angular window:
    /// φ₀ = 2πω mod 2π, width 2πφ.
    pub fn arg_mu_window(&self) -> (f64, f64) {
        ((TAU * self.omega).rem_euclid(TAU), TAU * self.phi)
    }
}

/// The geometry of an indefinite form aξ² + bξη + cη² of discriminant
/// Δ = b² − 4ac > 0, with the regulator ln ε of ℚ(√Δ) attached.
#[derive(Debug, Clone, Copy)]
pub struct IndefiniteGeometry {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub delta: i64,
    pub log_eps: f64,
}

impl IndefiniteGeometry {
    pub fn new(a: i64, b: i64, c: i64, log_eps: f64) -> Result<Self> {
        let delta = b as i128 * b as i128 - 4 * a as i128 * c as i128;
        if delta <= 0 || crate::sieve::is_square_u128(delta as u128).is_some() {
            return Err(Error::InvalidParameter(
                "form is not indefinite of nonsquare discriminant".into(),
            ));
        }
        if a <= 0 {
            return Err(Error::InvalidParameter("need a > 0 (reduce the form first)".into()));
        }
        Ok(IndefiniteGeometry { a, b, c, delta: delta as i64, log_eps })
    }

    pub fn q(&self, xi: f64, eta: f64) -> f64 {
        self.a as f64 * xi * xi + self.b as f64 * xi * eta + self.c as f64 * eta * eta
    }

    pub fn q_int(&self, m: i64, n: i64) -> i128 {
        let (m, n) = (m as i128, n as i128);
        self.a as i128 * m * m + self.b as i128 * m * n + self.c as i128 * n * n
    }

    /// Embeddings of f(ξ,η) = aξ + η(b∓√Δ)/2: returns (σ₁, σ₂).
    pub fn f_embeddings(&self, xi: f64, eta: f64) -> (f64, f64) {
        let sq = (self.delta as f64).sqrt();
        let s1 = self.a as f64 * xi + eta * (self.b as f64 - sq) / 2.0;
        let s2 = self.a as f64 * xi + eta * (self.b as f64 + sq) / 2.0;
        (s1, s2)
    }

    /// F(ξ,η) = ln|σ₁(f)/σ₂(f)| / (2 ln ε); errors on the asymptotes
    /// (Q = 0) and at the origin.
    pub fn f_value(&self, xi: f64, eta: f64) -> Result<f64> {
        let (s1, s2) = self.f_embeddings(xi, eta);
        if s1 == 0.0 || s2 == 0.0 {
            return Err(Error::Singular(format!(
                "F undefined on the asymptotes: f({xi}, {eta}) has a zero embedding"
            )));
        }
        Ok((s1 / s2).abs().ln() / (2.0 * self.log_eps))
    }

    /// Asymptote slopes η/ξ = 2a/(−b ± √Δ) of the hyperbolas Q = const.
    pub fn asymptote_slopes(&self) -> (f64, f64) {
        let sq = (self.delta as f64).sqrt();
        (
            2.0 * self.a as f64 / (-self.b as f64 + sq),
            2.0 * self.a as f64 / (-self.b as f64 - sq),
        )
    }

    /// Slopes η/ξ of the two lines bounding the F-window wedge on the
    /// Q > 0 side: s = −2a/(b + √Δ·coth(t·ln ε)) at t = ω and ω + φ.
    /// At t = 0 the coth pole gives slope 0… the line degenerates to the
    /// ξ-axis direction: −2a/(±∞) = 0.
    pub fn sector_slopes(&self, omega: f64, phi: f64) -> (f64, f64) {
        (self.boundary_slope(omega), self.boundary_slope(omega + phi))
    }

    fn boundary_slope(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        let sq = (self.delta as f64).sqrt();
        let ct = 1.0 / (t * self.log_eps).tanh();
        -2.0 * self.a as f64 / (self.b as f64 + sq * ct)
    }
}

/// Slope data for the simple form ξ² − dη²: bounds for −η/ξ on both branches
/// and the asymptote slope 1/√d.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimpleSectorSlopes {
    /// tanh-branch bounds for −η/ξ (Q > 0 side; intersects the hyperbolas).
    pub tanh_lo: f64,
    pub tanh_hi: f64,
    /// coth-branch values at ω and ω+φ (Q < 0 side; misses the hyperbolas).
    /// Decreasing in the window parameter; the pair wraps through ∞ when
    /// 0 ∈ (ω, ω+φ).
    pub coth_at_start: f64,
    pub coth_at_end: f64,
    /// 1/√d.
    pub asymptote: f64,
}

/// Sector slopes for Q = ξ² − dη² with fundamental unit value ε = e^L:
/// (1/√d)·tanh(ωL) ≤ −η/ξ ≤ (1/√d)·tanh((ω+φ)L) on the intersecting branch,
/// coth in place of tanh on the other.
pub fn sector_slopes_simple(d: i64, omega: f64, phi: f64, log_eps: f64) -> SimpleSectorSlopes {
    let sq = (d as f64).sqrt();
    let tanh = |t: f64| (t * log_eps).tanh() / sq;
    let coth = |t: f64| {
        if t == 0.0 {
            f64::INFINITY
        } else {
            1.0 / ((t * log_eps).tanh() * sq)
        }
    };
    SimpleSectorSlopes {
        tanh_lo: tanh(omega),
        tanh_hi: tanh(omega + phi),
        coth_at_start: coth(omega),
        coth_at_end: coth(omega + phi),
        asymptote: 1.0 / sq,
    }
}

/// Sector slopes for a general reduced form per the coth formula; the
/// asymptotes come from the points (−b ± √Δ, 2a).
pub fn sector_slopes_general(
    geom: &IndefiniteGeometry,
    omega: f64,
    phi: f64,
) -> ((f64, f64), (f64, f64)) {
    (geom.sector_slopes(omega, phi), geom.asymptote_slopes())
}

/// Membership of (ξ,η) in {F ∈ [ω, ω+φ]} decided purely by the tanh/coth
/// slope inequalities for the simple form ξ² − dη² (no logarithms).
pub fn slope_membership_simple(
    d: i64,
    omega: f64,
    phi: f64,
    log_eps: f64,
    xi: f64,
    eta: f64,
) -> Option<bool> {
    let q = xi * xi - d as f64 * eta * eta;
    if q == 0.0 || (xi == 0.0 && eta == 0.0) {
        return None;
    }
    let s = sector_slopes_simple(d, omega, phi, log_eps);
    let u = -eta / xi; // ±∞ on the η-axis is handled by the comparisons below
    if q > 0.0 {
        Some(s.tanh_lo <= u && u <= s.tanh_hi)
    } else {
        // coth branch: decreasing in the parameter, pole at 0
        let (start, end) = (s.coth_at_start, s.coth_at_end);
        if omega > 0.0 || omega + phi < 0.0 {
            // no pole inside: interval between the (sorted) endpoints
            let (lo, hi) = if start <= end { (start, end) } else { (end, start) };
            Some(lo <= u && u <= hi)
        } else if omega == 0.0 {
            Some(u >= end)
        } else if omega + phi == 0.0 {
            Some(u <= start)
        } else {
            // ω < 0 < ω+φ: complement of the open interval (start, end)
            Some(u <= start || u >= end)
        }
    }
}

/// Membership decided through F itself (the definition).
pub fn f_membership(
    geom: &IndefiniteGeometry,
    omega: f64,
    phi: f64,
    xi: f64,
    eta: f64,
) -> Option<bool> {
    match geom.f_value(xi, eta) {
        Ok(f) => Some(omega <= f && f <= omega + phi),
        Err(_) => None,
    }
}

/// One connected component of 𝒮(x,y,ω,φ): σ₁(f) > 0 and σ₂(f) > 0
/// (the antipodal component is its negation).
pub fn s1_contains(geom: &IndefiniteGeometry, region: &FRegionSpec, m: i64, n: i64) -> bool {
    if m == 0 && n == 0 {
        return false;
    }
    let q = geom.q_int(m, n);
    let qf = q as f64;
    if qf < region.x - region.y || qf > region.x {
        return false;
    }
    let (s1, s2) = geom.f_embeddings(m as f64, n as f64);
    if s1 <= 0.0 || s2 <= 0.0 {
        return false;
    }
    let f = (s1 / s2).ln() / (2.0 * geom.log_eps);
    region.omega <= f && f <= region.omega + region.phi
}

/// Integer points of the component 𝒮₁(x,y,ω,φ), by a column scan: the
/// bounding ξ-range comes from the corner images of the (q, F) rectangle,
/// each column is cut to the ≤ 2 intervals allowed by the hyperbola
/// window, and every candidate is filtered through [`s1_contains`].
/// The antipodal component 𝒮₂ is {−p : p ∈ 𝒮₁}.
pub fn lattice_points_in_s1(
    geom: &IndefiniteGeometry,
    region: &FRegionSpec,
    cap: usize,
) -> Result<Vec<(i64, i64)>> {
    if geom.c >= 0 {
        return Err(Error::InvalidParameter(
            "column enumeration requires c < 0 (reduce the form first)".into(),
        ));
    }
    let (a, b, c) = (geom.a as f64, geom.b as f64, geom.c as f64);
    let sq = (geom.delta as f64).sqrt();
    let el = geom.log_eps;
    // (q, F) ↦ (ξ, η): σ₁ = √(aq)·e^{FL}, σ₂ = √(aq)·e^{−FL}
    let point = |q: f64, fv: f64| -> (f64, f64) {
        let s1 = (a * q).sqrt() * (fv * el).exp();
        let s2 = (a * q).sqrt() * (-fv * el).exp();
        let eta = (s2 - s1) / sq;
        let xi = (s1 + s2 - b * eta) / (2.0 * a);
        (xi, eta)
    };
    let mut xi_lo = f64::INFINITY;
    let mut xi_hi = f64::NEG_INFINITY;
    let f_ends = [region.omega, region.omega + region.phi];
    let q_ends = [region.x - region.y, region.x];
    let mut track = |xi: f64| {
        xi_lo = xi_lo.min(xi);
        xi_hi = xi_hi.max(xi);
    };
    for &q in &q_ends {
        for &fv in &f_ends {
            track(point(q, fv).0);
        }
        // interior critical point of ξ along F: e^{2FL} = (√Δ−b)/(√Δ+b)
        let fc = ((sq - b) / (sq + b)).ln() / (2.0 * el);
        if fc > f_ends[0] && fc < f_ends[1] {
            track(point(q, fc).0);
        }
    }
    let m_lo = xi_lo.floor() as i64 - 1;
    let m_hi = xi_hi.ceil() as i64 + 1;
    let mut out = Vec::new();
    for m in m_lo..=m_hi {
        if m == 0 {
            continue; // wedge lines have finite slope: no interior points on ξ=0
        }
        let mf = m as f64;
        // Q(m, η) = cη² + bmη + am²: c < 0 for a reduced indefinite form,
        // so Q ≥ x−y holds between roots and Q ≤ x outside roots
        let (alpha, beta) = match quad_roots(c, b * mf, a * mf * mf - (region.x - region.y)) {
            Some(r) => r,
            None => continue, // Q < x−y on the whole column
        };
        let inner = quad_roots(c, b * mf, a * mf * mf - region.x);
        let segments: Vec<(f64, f64)> = match inner {
            None => vec![(alpha, beta)],
            Some((g, dl)) => vec![(alpha, g), (dl, beta)],
        };
        // wedge cut: η between the boundary-line values at ξ = m
        let (sl1, sl2) = geom.sector_slopes(region.omega, region.phi);
        let (w_lo, w_hi) = ((sl1 * mf).min(sl2 * mf), (sl1 * mf).max(sl2 * mf));
        for (lo, hi) in segments {
            let lo = lo.max(w_lo) - 1.0;
            let hi = hi.min(w_hi) + 1.0;
            if hi < lo {
                continue;
            }
            let n_lo = lo.floor() as i64;
            let n_hi = hi.ceil() as i64;
            if (n_hi - n_lo) as i128 + out.len() as i128 > cap as i128 {
                return Err(Error::CapacityExceeded(format!(
                    "lattice enumeration exceeds cap {cap}"
                )));
            }
            for n in n_lo..=n_hi {
                if s1_contains(geom, region, m, n) {
                    out.push((m, n));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Real roots of Aη² + Bη + C = 0 with A < 0, sorted ascending;
/// None when there are none.
fn quad_roots(a: f64, b: f64, c: f64) -> Option<(f64, f64)> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    let sd = disc.sqrt();
    let r1 = (-b + sd) / (2.0 * a);
    let r2 = (-b - sd) / (2.0 * a);
    Some(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
}
