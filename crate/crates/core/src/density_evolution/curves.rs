use serde::Serialize;

use crate::degree_dist::EdgeDist;
use crate::error::{check_unit, Error, Result};
use crate::numeric::inverse_clamped;

/// One sample of the check curve `c` and the variable curve `v`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub c: f64,
    pub v: f64,
}

/// Samples `c(x) = 1 - ρ(1-x)` and `v(x) = λ^{-1}(x/p)` (1 above `p`) on a
/// uniform grid of `samples` points over `[0, 1]`.
///
/// Decoding succeeds exactly when `c < v` on `(0, p]`.
pub fn condition_curves(
    lambda: &EdgeDist,
    rho: &EdgeDist,
    p: f64,
    samples: usize,
) -> Result<Vec<CurvePoint>> {
    check_unit("p", p)?;
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least two samples".into()));
    }
    let last = (samples - 1) as f64;
    Ok((0..samples)
        .map(|k| {
            let x = k as f64 / last;
            let c = 1.0 - rho.at(1.0 - x);
            let v = if x >= p {
                1.0
            } else {
                inverse_clamped(|t| lambda.at(t), x / p)
            };
            CurvePoint { x, c, v }
        })
        .collect())
}

/// Smallest sampled `v - c` over `x ∈ (0, upper]`, positive when the curves
/// leave an open tunnel.
pub fn curves_predict_success(points: &[CurvePoint], upper: f64) -> (bool, f64) {
    let gap = points
        .iter()
        .filter(|pt| pt.x > 0.0 && pt.x <= upper)
        .map(|pt| pt.v - pt.c)
        .fold(f64::INFINITY, f64::min);
    (gap > 0.0, gap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_tunnel() {
        let l = EdgeDist::regular(3).unwrap();
        let r = EdgeDist::regular(6).unwrap();
        let pts = condition_curves(&l, &r, 0.4, 513).unwrap();
        assert_eq!(pts[0].c, 0.0);
        assert_eq!(pts.last().unwrap().c, 1.0);
        let at_p = condition_curves(&l, &r, 0.5, 3).unwrap();
        assert_eq!(at_p[1].x, 0.5);
        assert_eq!(at_p[1].v, 1.0);
        let (open, gap) = curves_predict_success(&pts, 0.4);
        assert!(open, "gap {gap}");
        let above = condition_curves(&l, &r, 0.45, 513).unwrap();
        assert!(!curves_predict_success(&above, 0.45).0);
        assert!(condition_curves(&l, &r, 0.4, 1).is_err());
    }

    #[test]
    fn curves_are_monotone() {
        let l = EdgeDist::from_pairs(&[(2, 0.3), (3, 0.4), (8, 0.3)]).unwrap();
        let r = EdgeDist::from_pairs(&[(5, 0.5), (7, 0.5)]).unwrap();
        let pts = condition_curves(&l, &r, 0.35, 200).unwrap();
        assert!(pts.windows(2).all(|w| w[1].c >= w[0].c && w[1].v >= w[0].v));
    }
}
