//! Sontag's single-input sigmoidal network.
//!
//! Two hidden units with activation
//! `φ(t) = atan(t)/π + cos(t)/(α(1+t²)) + 1/2` receive `w·x` and `−w·x`; an
//! output perceptron with unit weights and threshold one fires when
//! `φ(wx) + φ(−wx) ≥ 1`. The arctangent terms cancel, leaving
//! `ρ(x) = 2cos(wx)/(α(1+w²x²))`, so the binary output is exactly the sign
//! test `cos(wx) ≥ 0`.

mod arcs;
mod search;

pub use arcs::{feasible_weights, ArcSet, WeightArc};
pub use search::{
    rationally_independent_points, shatter_census, shatter_search, Census, SearchConfig,
    SearchStatus, ShatterOutcome,
};

use alloc::format;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math;

pub const DEFAULT_ALPHA: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct SontagParams {
    w: f64,
    alpha: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    w: f64,
    #[serde(default = "default_alpha")]
    alpha: f64,
}

fn default_alpha() -> f64 {
    DEFAULT_ALPHA
}

impl TryFrom<RawParams> for SontagParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        SontagParams::new(raw.w, raw.alpha)
    }
}

impl SontagParams {
    pub fn new(w: f64, alpha: f64) -> Result<Self> {
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::InvalidConcept(format!("weight {w} must be finite and non-negative")));
        }
        if !(alpha >= math::TAU) || !alpha.is_finite() {
            return Err(Error::InvalidConcept(format!("alpha {alpha} must be at least 2π")));
        }
        Ok(SontagParams { w, alpha })
    }

    pub fn with_weight(w: f64) -> Result<Self> {
        Self::new(w, DEFAULT_ALPHA)
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// The activation sigmoid.
#[inline]
pub fn phi(x: f64, alpha: f64) -> f64 {
    math::atan(x) / math::PI + math::cos(x) / (alpha * (1.0 + x * x)) + 0.5
}

/// Closed form of the hidden-layer sum minus the output threshold.
#[inline]
pub fn rho(x: f64, w: f64, alpha: f64) -> f64 {
    let t = w * x;
    2.0 * math::cos(t) / (alpha * (1.0 + t * t))
}

/// Threshold unit; fires at equality.
#[inline]
pub fn eta(t: f64) -> bool {
    t >= 0.0
}

/// `φ(wx) + φ(−wx) − 1`, evaluated through the two hidden units.
#[inline]
pub fn hidden_excess(x: f64, w: f64, alpha: f64) -> f64 {
    phi(w * x, alpha) + phi(-w * x, alpha) - 1.0
}

/// Binary output `η(ρ(x))`.
#[inline]
pub fn net_output(x: f64, params: &SontagParams) -> bool {
    eta(rho(x, params.w, params.alpha))
}

/// Binary output computed through the hidden units rather than the closed
/// form. Agrees with [`net_output`] away from zeros of `cos(wx)`.
pub fn layered_output(x: f64, params: &SontagParams) -> bool {
    eta(hidden_excess(x, params.w, params.alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn phi_values() {
        assert!((phi(0.0, 100.0) - 0.51).abs() < 1e-15);
        let big = phi(1e6, 100.0);
        assert!((big - (1.0 - 1.0 / (math::PI * 1e6))).abs() <= 1e-9);
    }

    #[test]
    fn phi_stays_in_unit_interval() {
        let n = 1_000_000;
        for i in 0..=n {
            let x = -1e4 + 2e4 * i as f64 / n as f64;
            let y = phi(x, 100.0);
            assert!(y > 0.0 && y < 1.0, "phi({x}) = {y}");
        }
    }

    #[test]
    fn rho_values() {
        for w in [0.0, 0.5, 3.0, 1e3] {
            assert_eq!(rho(0.0, w, 100.0), 0.02);
        }
        // wx = π/2
        assert!(rho(math::FRAC_PI_2, 1.0, 100.0).abs() < 1e-17);
        assert!(rho(1.0, math::FRAC_PI_2, 100.0).abs() < 1e-17);
    }

    #[test]
    fn hidden_units_match_closed_form() {
        for &w in &[0.1, 1.0, 5.0, 100.0] {
            for i in 0..25_000 {
                let x = -100.0 + 200.0 * i as f64 / 24_999.0;
                assert!((hidden_excess(x, w, 100.0) - rho(x, w, 100.0)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn outputs() {
        let p = SontagParams::with_weight(1.0).unwrap();
        assert!(net_output(0.0, &p));
        assert!(!net_output(math::PI, &p));
        let zero = SontagParams::with_weight(0.0).unwrap();
        let mut rng = crate::stream::rng(0);
        for _ in 0..100 {
            assert!(net_output(rng.random::<f64>() * 1e3, &zero));
        }
    }

    #[test]
    fn sign_law_dual_path() {
        let mut rng = crate::stream::rng(1);
        for _ in 0..100_000 {
            let x: f64 = rng.random_range(-1e3..1e3);
            let w: f64 = rng.random_range(0.0..1e3);
            let p = SontagParams::new(w, 100.0).unwrap();
            assert_eq!(net_output(x, &p), math::cos(w * x) >= 0.0);
        }
    }

    #[test]
    fn params_validation() {
        assert!(SontagParams::new(1.0, 6.0).is_err());
        assert!(SontagParams::new(-1.0, 100.0).is_err());
        assert!(SontagParams::new(f64::NAN, 100.0).is_err());
        assert!(SontagParams::new(0.0, math::TAU).is_ok());
    }
}
