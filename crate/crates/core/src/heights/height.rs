use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::is_root_of_unity;
use super::isolate::isolate_roots;
use super::{AlgebraicNumber, HeightError};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A Weil height: exactly zero (decided by Kronecker's theorem) or a certified interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Height {
    Zero,
    Interval { lo: f64, hi: f64 },
}

impl Height {
    pub fn is_zero(&self) -> bool {
        matches!(self, Height::Zero)
    }

    pub fn lo(&self) -> f64 {
        match *self {
            Height::Zero => 0.0,
            Height::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> f64 {
        match *self {
            Height::Zero => 0.0,
            Height::Interval { hi, .. } => hi,
        }
    }

    pub fn midpoint(&self) -> f64 {
        (self.lo() + self.hi()) / 2.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo() <= x && x <= self.hi()
    }
}

/// h(α) = (log|a_d| + Σ log max(1, |z|)) / d over the complex roots z of the minimal
/// polynomial. The returned interval has half-width at most `tol`; roots of unity and
/// 0 give `Height::Zero`.
pub fn weil_height(a: &AlgebraicNumber, tol: f64) -> Result<Height, HeightError> {
    let d = a.degree() as f64;
    Ok(match log_mahler_measure(a, tol * d)? {
        Height::Zero => Height::Zero,
        Height::Interval { lo, hi } => Height::Interval { lo: lo / d, hi: hi / d },
    })
}

/// log M(f) = log|a_d| + Σ log max(1, |z|), which is d · h(α).
pub fn log_mahler_measure(a: &AlgebraicNumber, tol: f64) -> Result<Height, HeightError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(HeightError::BadInput(format!("tolerance must be positive, got {tol}")));
    }
    let f = a.minpoly();
    if f.degree() == 1 && f.coeffs()[0].is_zero() {
        return Ok(Height::Zero);
    }
    if is_root_of_unity(a) {
        return Ok(Height::Zero);
    }
    let lead = f.leading().abs().to_f64().filter(|x| x.is_finite()).ok_or_else(|| {
        HeightError::BadInput("leading coefficient exceeds the double range".into())
    })?;
    let log_lead = lead.ln();
    let disks = isolate_roots(f)?;
    let mut components: BTreeMap<usize, (usize, f64, f64)> = BTreeMap::new();
    for disk in &disks {
        let m = disk.center.norm();
        let e = components.entry(disk.component).or_insert((0, f64::INFINITY, 0.0));
        e.0 += 1;
        e.1 = e.1.min(m - disk.radius);
        e.2 = e.2.max(m + disk.radius);
    }
    let (mut lo, mut hi) = (log_lead, log_lead);
    for (k, rmin, rmax) in components.values() {
        lo += *k as f64 * rmin.max(1.0).ln();
        hi += *k as f64 * rmax.max(1.0).ln();
    }
    // libm logarithms and the summation are accurate to a few ulps
    let slack = 16.0 * f64::EPSILON * (hi.abs() + disks.len() as f64 + 1.0);
    let (lo, hi) = ((lo - slack).max(0.0), hi + slack);
    let achieved = (hi - lo) / 2.0;
    if achieved > tol {
        return Err(HeightError::RootFindingFailed { achieved });
    }
    Ok(Height::Interval { lo, hi })
}
