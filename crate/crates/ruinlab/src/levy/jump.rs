//! Jump-size laws of the log price.
//!
//! All laws live natively in log space, `y = ln(1 + x)` where `x` is the
//! relative price jump. Any real `y` maps back to `x = e^y - 1 > -1`, so
//! laws written in y space can never place mass at or below the `x = -1`
//! barrier. Inputs given in x space are converted once, at construction,
//! and only for the atom-based families where the conversion is exact.

use serde::{Deserialize, Serialize};

use super::LevyError;

/// Truncation function `h(y) = y` on `[-1, 1]`, zero outside.
pub fn h_trunc(y: f64) -> f64 {
    if y.abs() <= 1.0 {
        y
    } else {
        0.0
    }
}

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

fn normal_cdf(z: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-z / SQRT_2)
}

fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / SQRT_2PI
}

/// `sinh(x)/x`, stable near zero.
fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

/// Parametric jump-size law in y space.
///
/// Each family provides sampling, the exponential moment `E[e^{-qY}]`
/// (infinite outside an open domain), and the truncated means that enter
/// the drift transform and the Levy exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum JumpLaw {
    /// Point mass at `y`.
    Point { at: f64 },
    /// Two atoms: `y1` with probability `p1`, `y2` with the rest.
    TwoPoint { y1: f64, p1: f64, y2: f64 },
    /// Exponential with the given rate; `negate` flips the support to
    /// `(-inf, 0)`, i.e. downward price jumps.
    Exponential { rate: f64, negate: bool },
    /// Uniform on `(lo, hi)`.
    Uniform { lo: f64, hi: f64 },
    /// Gaussian with the given mean and standard deviation.
    Normal { mean: f64, sd: f64 },
}

impl JumpLaw {
    pub fn validate(&self) -> Result<(), LevyError> {
        let bad = |msg: &str| Err(LevyError::InvalidJumpLaw(msg.to_string()));
        match *self {
            JumpLaw::Point { at } => {
                if !at.is_finite() {
                    return bad("point law: atom must be finite");
                }
            }
            JumpLaw::TwoPoint { y1, p1, y2 } => {
                if !y1.is_finite() || !y2.is_finite() {
                    return bad("two-point law: atoms must be finite");
                }
                if !(0.0..=1.0).contains(&p1) {
                    return bad("two-point law: p1 must lie in [0, 1]");
                }
            }
            JumpLaw::Exponential { rate, .. } => {
                if !(rate > 0.0 && rate.is_finite()) {
                    return bad("exponential law: rate must be positive and finite");
                }
            }
            JumpLaw::Uniform { lo, hi } => {
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return bad("uniform law: need finite lo < hi");
                }
            }
            JumpLaw::Normal { sd, mean } => {
                if !(sd > 0.0 && sd.is_finite() && mean.is_finite()) {
                    return bad("normal law: need finite mean and sd > 0");
                }
            }
        }
        Ok(())
    }

    /// Reinterprets parameters given in x space (relative price jumps) as a
    /// y-space law. Exact for the atom families; the continuous families are
    /// not closed under `x -> ln(1+x)` and are rejected.
    pub fn from_x_space(law: &JumpLaw) -> Result<JumpLaw, LevyError> {
        let atom = |x: f64| -> Result<f64, LevyError> {
            if x <= -1.0 {
                Err(LevyError::JumpMassBelowBarrier { x })
            } else {
                Ok(x.ln_1p())
            }
        };
        match *law {
            JumpLaw::Point { at } => Ok(JumpLaw::Point { at: atom(at)? }),
            JumpLaw::TwoPoint { y1, p1, y2 } => Ok(JumpLaw::TwoPoint {
                y1: atom(y1)?,
                p1,
                y2: atom(y2)?,
            }),
            _ => Err(LevyError::XSpaceUnsupported),
        }
    }

    /// Maps an atom-based y-space law back to x-space parameters.
    pub fn to_x_space(&self) -> Result<JumpLaw, LevyError> {
        match *self {
            JumpLaw::Point { at } => Ok(JumpLaw::Point { at: at.exp_m1() }),
            JumpLaw::TwoPoint { y1, p1, y2 } => Ok(JumpLaw::TwoPoint {
                y1: y1.exp_m1(),
                p1,
                y2: y2.exp_m1(),
            }),
            _ => Err(LevyError::XSpaceUnsupported),
        }
    }

    /// Support interval in y space (closed hull).
    pub fn support(&self) -> (f64, f64) {
        match *self {
            JumpLaw::Point { at } => (at, at),
            JumpLaw::TwoPoint { y1, y2, .. } => (y1.min(y2), y1.max(y2)),
            JumpLaw::Exponential { negate: false, .. } => (0.0, f64::INFINITY),
            JumpLaw::Exponential { negate: true, .. } => (f64::NEG_INFINITY, 0.0),
            JumpLaw::Uniform { lo, hi } => (lo, hi),
            JumpLaw::Normal { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// True when the law puts positive mass on `(0, inf)` in y space,
    /// equivalently on `(0, inf)` in x space.
    pub fn charges_positive(&self) -> bool {
        match *self {
            JumpLaw::Point { at } => at > 0.0,
            JumpLaw::TwoPoint { y1, p1, y2 } => (y1 > 0.0 && p1 > 0.0) || (y2 > 0.0 && p1 < 1.0),
            JumpLaw::Exponential { negate, .. } => !negate,
            JumpLaw::Uniform { hi, .. } => hi > 0.0,
            JumpLaw::Normal { .. } => true,
        }
    }

    /// True when the law puts positive mass on `(-inf, 0)` in y space,
    /// equivalently on `(-1, 0)` in x space.
    pub fn charges_negative(&self) -> bool {
        match *self {
            JumpLaw::Point { at } => at < 0.0,
            JumpLaw::TwoPoint { y1, p1, y2 } => (y1 < 0.0 && p1 > 0.0) || (y2 < 0.0 && p1 < 1.0),
            JumpLaw::Exponential { negate, .. } => negate,
            JumpLaw::Uniform { lo, .. } => lo < 0.0,
            JumpLaw::Normal { .. } => true,
        }
    }

    /// Open interval of `q` for which `E[e^{-qY}]` is finite.
    pub fn exp_moment_domain(&self) -> (f64, f64) {
        match *self {
            JumpLaw::Exponential { rate, negate: false } => (-rate, f64::INFINITY),
            JumpLaw::Exponential { rate, negate: true } => (f64::NEG_INFINITY, rate),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// `E[e^{-qY}]`; `+inf` at or beyond the domain boundary.
    pub fn exp_moment_neg(&self, q: f64) -> f64 {
        match *self {
            JumpLaw::Point { at } => (-q * at).exp(),
            JumpLaw::TwoPoint { y1, p1, y2 } => {
                p1 * (-q * y1).exp() + (1.0 - p1) * (-q * y2).exp()
            }
            JumpLaw::Exponential { rate, negate: false } => {
                if q > -rate {
                    rate / (rate + q)
                } else {
                    f64::INFINITY
                }
            }
            JumpLaw::Exponential { rate, negate: true } => {
                if q < rate {
                    rate / (rate - q)
                } else {
                    f64::INFINITY
                }
            }
            JumpLaw::Uniform { lo, hi } => {
                let mid = 0.5 * (lo + hi);
                let half = 0.5 * (hi - lo);
                (-q * mid).exp() * sinhc(q * half)
            }
            JumpLaw::Normal { mean, sd } => (-q * mean + 0.5 * q * q * sd * sd).exp(),
        }
    }

    /// `E[h(Y)]` with `h` the unit truncation.
    pub fn mean_h(&self) -> f64 {
        match *self {
            JumpLaw::Point { at } => h_trunc(at),
            JumpLaw::TwoPoint { y1, p1, y2 } => p1 * h_trunc(y1) + (1.0 - p1) * h_trunc(y2),
            JumpLaw::Exponential { rate, negate } => {
                // int_0^1 t rate e^{-rate t} dt
                let m = (1.0 - (-rate).exp()) / rate - (-rate).exp();
                if negate {
                    -m
                } else {
                    m
                }
            }
            JumpLaw::Uniform { lo, hi } => {
                let a = lo.max(-1.0);
                let b = hi.min(1.0);
                if b <= a {
                    0.0
                } else {
                    0.5 * (b * b - a * a) / (hi - lo)
                }
            }
            JumpLaw::Normal { mean, sd } => {
                let za = (-1.0 - mean) / sd;
                let zb = (1.0 - mean) / sd;
                mean * (normal_cdf(zb) - normal_cdf(za)) - sd * (normal_pdf(zb) - normal_pdf(za))
            }
        }
    }

    /// `E[h(e^Y - 1)]`, the truncated mean of the x-space jump. Since
    /// `e^y - 1 > -1`, the truncation bites only at `y = ln 2`.
    pub fn mean_h_x(&self) -> f64 {
        const LN2: f64 = std::f64::consts::LN_2;
        let hx = |y: f64| h_trunc(y.exp_m1());
        match *self {
            JumpLaw::Point { at } => hx(at),
            JumpLaw::TwoPoint { y1, p1, y2 } => p1 * hx(y1) + (1.0 - p1) * hx(y2),
            JumpLaw::Exponential { rate, negate: true } => {
                // E[e^{-T} - 1], all mass below ln 2.
                rate / (rate + 1.0) - 1.0
            }
            JumpLaw::Exponential { rate, negate: false } => {
                // int_0^{ln2} (e^t - 1) rate e^{-rate t} dt
                let e1 = if (rate - 1.0).abs() < 1e-12 {
                    // rate == 1: integrand of the first part is constant 1
                    rate * LN2
                } else {
                    rate / (1.0 - rate) * (((1.0 - rate) * LN2).exp() - 1.0)
                };
                let e2 = (-rate * LN2).exp() - 1.0;
                e1 + e2
            }
            JumpLaw::Uniform { lo, hi } => {
                let b = hi.min(LN2);
                if b <= lo {
                    0.0
                } else {
                    ((b.exp() - b) - (lo.exp() - lo)) / (hi - lo)
                }
            }
            JumpLaw::Normal { mean, sd } => {
                // E[(e^Y - 1) 1_{Y <= ln 2}] via the lognormal partial mean.
                let zb = (LN2 - mean) / sd;
                (mean + 0.5 * sd * sd).exp() * normal_cdf(zb - sd) - normal_cdf(zb)
            }
        }
    }

    /// Mean of `Y` (finite for every supported family).
    pub fn mean(&self) -> f64 {
        match *self {
            JumpLaw::Point { at } => at,
            JumpLaw::TwoPoint { y1, p1, y2 } => p1 * y1 + (1.0 - p1) * y2,
            JumpLaw::Exponential { rate, negate } => {
                if negate {
                    -1.0 / rate
                } else {
                    1.0 / rate
                }
            }
            JumpLaw::Uniform { lo, hi } => 0.5 * (lo + hi),
            JumpLaw::Normal { mean, .. } => mean,
        }
    }

    pub fn sample<R: rand::Rng>(&self, rng: &mut R) -> f64 {
        use rand::RngExt;
        match *self {
            JumpLaw::Point { at } => at,
            JumpLaw::TwoPoint { y1, p1, y2 } => {
                if rng.random::<f64>() < p1 {
                    y1
                } else {
                    y2
                }
            }
            JumpLaw::Exponential { rate, negate } => {
                let e = -(1.0 - rng.random::<f64>()).ln() / rate;
                if negate {
                    -e
                } else {
                    e
                }
            }
            JumpLaw::Uniform { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
            JumpLaw::Normal { mean, sd } => {
                let z: f64 = rng.sample(rand_distr::StandardNormal);
                mean + sd * z
            }
        }
    }
}
