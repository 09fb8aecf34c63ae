//! Cumulants: the per-unit-time Levy exponent wrapped with its domain, and
//! the cumulant of `V` observed at the first claim time,
//! `H(q) = ln E[e^{-q V_{T_1}}] = ln M_T(psi(q))`.

use serde::Serialize;

use super::interarrival::InterarrivalLaw;
use super::triplet::LogPriceLaw;
use super::LevyError;

/// Which stage of the composition `H = ln M_T(psi(q))` failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CumulantStage {
    LevyExponent,
    InterarrivalMgf,
}

/// The Levy exponent `q -> psi(q)` of a log-price law together with its
/// effective domain.
#[derive(Debug, Clone)]
pub struct CumulantFn {
    law: LogPriceLaw,
    domain: (f64, f64),
}

impl CumulantFn {
    pub fn new(law: LogPriceLaw) -> Self {
        let domain = law.effective_domain();
        CumulantFn { law, domain }
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn law(&self) -> &LogPriceLaw {
        &self.law
    }

    pub fn psi(&self, q: f64) -> Result<f64, LevyError> {
        if q <= self.domain.0 || q >= self.domain.1 {
            return Err(LevyError::OutsideDomain { q, lo: self.domain.0, hi: self.domain.1 });
        }
        Ok(self.law.levy_exponent_unchecked(q))
    }
}

/// `H(q) = ln E[e^{-q V_{T_1}}]`, assembled by composing the Levy exponent
/// with the interarrival moment generating function.
pub fn cumulant_h(
    law: &LogPriceLaw,
    interarrival: &InterarrivalLaw,
    q: f64,
) -> Result<f64, LevyError> {
    let psi = law.levy_exponent(q).map_err(|e| LevyError::CumulantComposition {
        stage: CumulantStage::LevyExponent,
        source: Box::new(e),
    })?;
    let mgf = interarrival.mgf(psi).map_err(|e| LevyError::CumulantComposition {
        stage: CumulantStage::InterarrivalMgf,
        source: Box::new(e),
    })?;
    Ok(mgf.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::{JumpComponent, JumpLaw, JumpSpace, LevyTriplet};

    fn gbm_03_02() -> LogPriceLaw {
        LevyTriplet::gbm(0.3, 0.2).log_price_law()
    }

    #[test]
    fn h_examples() {
        let law = gbm_03_02();
        let exp1 = InterarrivalLaw::Exponential { rate: 1.0 };
        // H(0) = 0 always.
        assert_eq!(cumulant_h(&law, &exp1, 0.0).unwrap(), 0.0);
        // q = 2: psi = 0 so H = ln M(0) = 0.
        assert!(cumulant_h(&law, &exp1, 2.0).unwrap().abs() < 1e-14);
        // q = 1: psi = -0.1, H = ln(1/1.1).
        let h = cumulant_h(&law, &exp1, 1.0).unwrap();
        let expect = (1.0f64 / 1.1).ln();
        assert!((h - expect).abs() < 1e-12);
        assert!((expect + 0.095310).abs() < 1e-6);
    }

    #[test]
    fn h_zero_for_every_family() {
        let law = gbm_03_02();
        let families = [
            InterarrivalLaw::Exponential { rate: 2.0 },
            InterarrivalLaw::Gamma { shape: 2.0, scale: 0.5 },
            InterarrivalLaw::Deterministic { value: 1.3 },
            InterarrivalLaw::Uniform { lo: 0.2, hi: 2.0 },
        ];
        for f in &families {
            assert_eq!(cumulant_h(&law, f, 0.0).unwrap(), 0.0, "{f:?}");
        }
    }

    #[test]
    fn sign_of_h_matches_sign_of_psi() {
        // T > 0 a.s. forces E[e^{T psi}] >< 1 exactly as psi >< 0.
        let comp = JumpComponent::new(
            1.0,
            JumpLaw::Uniform { lo: -0.5, hi: 0.8 },
            JumpSpace::Y,
        )
        .unwrap();
        let law = LevyTriplet::new(0.25, 0.1, vec![comp], None)
            .unwrap()
            .log_price_law();
        let families = [
            InterarrivalLaw::Exponential { rate: 1.0 },
            InterarrivalLaw::Gamma { shape: 1.7, scale: 0.6 },
            InterarrivalLaw::Deterministic { value: 0.8 },
            InterarrivalLaw::Uniform { lo: 0.0, hi: 2.5 },
        ];
        for f in &families {
            for i in 0..60 {
                let q = -1.0 + 0.08 * i as f64;
                let psi = match law.levy_exponent(q) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                let h = match cumulant_h(&law, f, q) {
                    Ok(h) => h,
                    Err(_) => continue, // psi outside the MGF domain
                };
                if psi == 0.0 {
                    assert!(h.abs() < 1e-14);
                } else {
                    assert_eq!(h.signum(), psi.signum(), "{f:?} q={q} psi={psi} h={h}");
                }
            }
        }
    }

    #[test]
    fn composition_error_identifies_stage() {
        // psi(q) huge positive lands beyond the exponential MGF boundary.
        let law = gbm_03_02();
        let exp1 = InterarrivalLaw::Exponential { rate: 1.0 };
        let err = cumulant_h(&law, &exp1, 8.0).unwrap_err();
        match err {
            LevyError::CumulantComposition { stage, .. } => {
                assert_eq!(stage, CumulantStage::InterarrivalMgf)
            }
            other => panic!("unexpected error {other:?}"),
        }

        // q outside the jump-law domain fails at the exponent stage.
        let neg = JumpComponent::new(
            1.0,
            JumpLaw::Exponential { rate: 0.7, negate: true },
            JumpSpace::Y,
        )
        .unwrap();
        let law = LevyTriplet::new(0.3, 0.1, vec![neg], None)
            .unwrap()
            .log_price_law();
        let err = cumulant_h(&law, &exp1, 0.9).unwrap_err();
        match err {
            LevyError::CumulantComposition { stage, .. } => {
                assert_eq!(stage, CumulantStage::LevyExponent)
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn cumulant_fn_guards_domain() {
        let neg = JumpComponent::new(
            1.0,
            JumpLaw::Exponential { rate: 1.2, negate: true },
            JumpSpace::Y,
        )
        .unwrap();
        let law = LevyTriplet::new(0.3, 0.1, vec![neg], None)
            .unwrap()
            .log_price_law();
        let c = CumulantFn::new(law);
        assert_eq!(c.domain(), (f64::NEG_INFINITY, 1.2));
        assert!(c.psi(1.1).is_ok());
        assert!(c.psi(1.2).is_err());
        assert_eq!(c.psi(0.0).unwrap(), 0.0);
    }

    #[test]
    fn psi_is_convex_on_a_grid() {
        let comp = JumpComponent::new(
            0.6,
            JumpLaw::Normal { mean: 0.1, sd: 0.4 },
            JumpSpace::Y,
        )
        .unwrap();
        let law = LevyTriplet::new(0.2, 0.15, vec![comp], None)
            .unwrap()
            .log_price_law();
        let psi = |q: f64| law.levy_exponent(q).unwrap();
        for i in 0..25 {
            for j in (i + 1)..25 {
                let q1 = -2.0 + 0.3 * i as f64;
                let q2 = -2.0 + 0.3 * j as f64;
                for &theta in &[0.25, 0.5, 0.75] {
                    let mid = theta * q1 + (1.0 - theta) * q2;
                    assert!(
                        psi(mid) <= theta * psi(q1) + (1.0 - theta) * psi(q2) + 1e-9,
                        "convexity violated at ({q1}, {q2}, {theta})"
                    );
                }
            }
        }
    }
}
