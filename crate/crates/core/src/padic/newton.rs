use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::scalar::valuation_of;
use super::{check_prime, IntPolynomial, PadicError};

/// One edge of a Newton polygon. A segment of slope `s` and length `l` accounts for
/// `l` roots of valuation `-s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(with = "crate::serde_num::rational")]
    pub slope: BigRational,
    pub length: usize,
    /// Abscissa where the segment starts.
    pub start: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// (slope, length) pairs, the compact form used in reports and tests.
    pub fn slopes(&self) -> Vec<(BigRational, usize)> {
        self.segments.iter().map(|s| (s.slope.clone(), s.length)).collect()
    }

    /// Largest denominator among the slopes (1 for an empty polygon).
    pub fn max_denominator(&self) -> u64 {
        self.segments
            .iter()
            .map(|s| u64::try_from(s.slope.denom().clone()).unwrap_or(u64::MAX))
            .max()
            .unwrap_or(1)
    }
}

/// Lower convex hull of the points (i, v_p(a_i)) over nonzero coefficients.
pub fn newton_polygon(f: &IntPolynomial, p: u64) -> Result<NewtonPolygon, PadicError> {
    check_prime(p)?;
    newton_polygon_of(f.coeffs(), p)
}

pub(crate) fn newton_polygon_of(coeffs: &[BigInt], p: u64) -> Result<NewtonPolygon, PadicError> {
    let points: Vec<(usize, i64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, valuation_of(c, p) as i64))
        .collect();
    if points.is_empty() {
        return Err(PadicError::ZeroPolynomial);
    }
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point if it lies on or above the chord from (x1,y1) to pt
            let lhs = (y2 - y1) as i128 * (pt.0 - x1) as i128;
            let rhs = (pt.1 - y1) as i128 * (x2 - x1) as i128;
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let (x1, y1) = w[0];
            let (x2, y2) = w[1];
            Segment {
                slope: BigRational::new(BigInt::from(y2 - y1), BigInt::from((x2 - x1) as i64)),
                length: x2 - x1,
                start: x1,
            }
        })
        .collect();
    Ok(NewtonPolygon { segments })
}
