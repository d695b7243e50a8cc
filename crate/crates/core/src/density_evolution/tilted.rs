//! Graph reduction: the accumulators of an ARA (or the lower accumulator of an
//! IRA) ensemble are absorbed into rational "tilted" degree distributions.
//!
//! ```text
//! λ̃(x) = (p / (1 - (1-p) L(x)))² λ(x)      L̃(x) = p L(x) / (1 - (1-p) L(x))
//! ρ̃(x) = ((1-p) / (1 - p R(x)))² ρ(x)      R̃(x) = (1-p) R(x) / (1 - p R(x))
//! ```
//!
//! The only zero denominators occur at `x = 1` with `p ∈ {0, 1}`, where the
//! numerator vanishes as well; those points take their limit from the left.

use super::curves::CurvePoint;
use crate::degree_dist::{EdgeDist, Ensemble, NodeDist};
use crate::error::{check_unit, Error, Result};
use crate::numeric::inverse_clamped;

#[derive(Clone, Debug)]
pub struct TiltedEnsemble {
    lambda: EdgeDist,
    rho: EdgeDist,
    left: NodeDist,
    right: NodeDist,
    p: f64,
}

impl TiltedEnsemble {
    pub fn new(ensemble: &Ensemble, p: f64) -> Result<Self> {
        check_unit("p", p)?;
        Ok(Self {
            lambda: ensemble.lambda().clone(),
            rho: ensemble.rho().clone(),
            left: ensemble.left().clone(),
            right: ensemble.right().clone(),
            p,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `λ̃(x)`.
    #[inline]
    pub fn lambda_t(&self, x: f64) -> f64 {
        let den = 1.0 - (1.0 - self.p) * self.left.at(x);
        if den <= 0.0 {
            return 0.0;
        }
        let g = self.p / den;
        g * g * self.lambda.at(x)
    }

    /// `ρ̃(x)`.
    #[inline]
    pub fn rho_t(&self, x: f64) -> f64 {
        let den = 1.0 - self.p * self.right.at(x);
        if den <= 0.0 {
            return 0.0;
        }
        let h = (1.0 - self.p) / den;
        h * h * self.rho.at(x)
    }

    /// `L̃(x)`.
    #[inline]
    pub fn left_t(&self, x: f64) -> f64 {
        let l = self.left.at(x);
        let den = 1.0 - (1.0 - self.p) * l;
        if den <= 0.0 {
            return 0.0;
        }
        self.p * l / den
    }

    /// `R̃(x)`.
    #[inline]
    pub fn right_t(&self, x: f64) -> f64 {
        let r = self.right.at(x);
        let den = 1.0 - self.p * r;
        if den <= 0.0 {
            return 0.0;
        }
        (1.0 - self.p) * r / den
    }

    /// `λ̃'(x)` by the product rule.
    pub fn lambda_t_derivative(&self, x: f64) -> f64 {
        let l = self.left.at(x);
        let den = 1.0 - (1.0 - self.p) * l;
        if den <= 0.0 {
            return f64::INFINITY;
        }
        let g = self.p / den;
        let log_g = (1.0 - self.p) * self.left.derivative(x) / den;
        g * g * (self.lambda.derivative(x) + 2.0 * self.lambda.at(x) * log_g)
    }

    /// `ρ̃'(x)` by the product rule.
    pub fn rho_t_derivative(&self, x: f64) -> f64 {
        let r = self.right.at(x);
        let den = 1.0 - self.p * r;
        if den <= 0.0 {
            return f64::INFINITY;
        }
        let h = (1.0 - self.p) / den;
        let log_h = self.p * self.right.derivative(x) / den;
        h * h * (self.rho.derivative(x) + 2.0 * self.rho.at(x) * log_h)
    }

    /// `λ̃'(0) = p² λ_2` when there are no degree-1 nodes.
    pub fn lambda_t_slope_at_zero(&self) -> f64 {
        self.lambda_t_derivative(0.0)
    }

    /// Second-order coefficient of `L̃` at zero, `p (L_2 + (1-p) L_1²)`.
    pub fn left_t_degree2(&self) -> f64 {
        let l1 = self.left.coeff(1);
        self.p * (self.left.coeff(2) + (1.0 - self.p) * l1 * l1)
    }

    /// Samples `c̃(x) = 1 - ρ̃(1-x)` and `ṽ(x) = λ̃^{-1}(x)` on `[0, 1]`.
    pub fn curves(&self, samples: usize) -> Result<Vec<CurvePoint>> {
        if samples < 2 {
            return Err(Error::InvalidParameter("need at least two samples".into()));
        }
        let last = (samples - 1) as f64;
        Ok((0..samples)
            .map(|k| {
                let x = k as f64 / last;
                CurvePoint {
                    x,
                    c: 1.0 - self.rho_t(1.0 - x),
                    v: inverse_clamped(|t| self.lambda_t(t), x),
                }
            })
            .collect())
    }
}
