//! One source of truth for an experiment: a JSON config file, overridden
//! field-by-field by CLI flags. Every derived constant is echoed into the
//! report header so a run is reproducible from its own output.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub d: Option<i64>,
    /// Form coefficients (a, b, c).
    pub form: Option<[i64; 3]>,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub phi: Option<f64>,
    pub phi0: Option<f64>,
    pub omega: Option<f64>,
    pub y1: Option<f64>,
    pub eta: Option<f64>,
    pub delta: Option<f64>,
    pub trials: Option<u32>,
    pub targets: Option<u32>,
    pub seed: Option<u64>,
    pub sieve_cap: Option<u64>,
    pub enumeration_cap: Option<u64>,
    pub m_max: Option<i64>,
    pub bilinear: Option<bool>,
    pub out_csv: Option<PathBuf>,
    pub out_json: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
    }

    /// Fill unset fields from `base` (flags win over file).
    pub fn or_else_from(mut self, base: ExperimentConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => {
                $(if self.$f.is_none() { self.$f = base.$f; })*
            };
        }
        take!(
            d, form, x, y, phi, phi0, omega, y1, eta, delta, trials, targets, seed,
            sieve_cap, enumeration_cap, m_max, bilinear, out_csv, out_json
        );
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0x5eed_cafe_0001)
    }

    pub fn sieve_cap(&self) -> u64 {
        self.sieve_cap.unwrap_or(1 << 28)
    }

    pub fn enumeration_cap(&self) -> usize {
        self.enumeration_cap.unwrap_or(1 << 26) as usize
    }

    pub fn eta(&self) -> f64 {
        self.eta.unwrap_or(0.05)
    }

    /// Angular anchor: φ₀ directly, or the F-space position ω through
    /// φ₀ = 2πω mod 2π.
    pub fn phi0(&self) -> f64 {
        self.phi0.unwrap_or_else(|| {
            self.omega
                .map(|w| (std::f64::consts::TAU * w).rem_euclid(std::f64::consts::TAU))
                .unwrap_or(0.0)
        })
    }
}

/// Derive a per-trial RNG stream from (seed, index): splitmix-style mixing
/// so trials are independent and the whole run is reproducible.
pub fn trial_rng(seed: u64, index: u64) -> rand_chacha::ChaCha12Rng {
    use rand::SeedableRng;
    let mut z = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    rand_chacha::ChaCha12Rng::seed_from_u64(z)
}
