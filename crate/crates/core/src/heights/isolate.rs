//! Complex root isolation with a posteriori error bounds.
//!
//! Approximations come from the Aberth iteration in double precision. For pairwise
//! distinct approximations z_1, …, z_d of a degree-d polynomial with leading coefficient
//! a, the disks |z − z_i| ≤ d |W_i| with W_i = f(z_i) / (a ∏_{j≠i} (z_i − z_j)) cover
//! all roots, and each connected component made of k disks holds exactly k roots
//! (Braess–Hadeler). The radii below also absorb the rounding error of evaluating f.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::HeightError;
use crate::padic::IntPolynomial;

const MAX_ITERATIONS: usize = 2000;
const EPS: f64 = f64::EPSILON;

/// A disk known to contain `multiplicity` roots, counted together with the other disks of
/// the same component (`component` index).
#[derive(Clone, Debug, PartialEq)]
pub struct RootDisk {
    pub center: Complex64,
    pub radius: f64,
    pub component: usize,
}

fn float_coeffs(f: &IntPolynomial) -> Result<Vec<f64>, HeightError> {
    f.coeffs()
        .iter()
        .map(|c| c.to_f64().filter(|x| x.is_finite()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| HeightError::BadInput("coefficients exceed the double range".into()))
}

// f(z) and the bound Σ|c_k||z|^k used for the rounding error.
fn eval_with_abs(c: &[f64], z: Complex64) -> (Complex64, f64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut a = 0.0;
    let r = z.norm();
    for &ck in c.iter().rev() {
        v = v * z + ck;
        a = a * r + ck.abs();
    }
    (v, a)
}

fn eval_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        dv = dv * z + v;
        v = v * z + ck;
    }
    (v, dv)
}

fn aberth(c: &[f64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let lead = c[d].abs();
    // Cauchy bound on root moduli
    let radius = 1.0 + c[..d].iter().map(|x| x.abs() / lead).fold(0.0, f64::max);
    let start = radius.min(1e150);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(start, 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (v, dv) = eval_with_derivative(c, z[i]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / dv;
            let sum: Complex64 = (0..d).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 4.0 * EPS {
            break;
        }
    }
    z
}

/// Certified disks around every complex root of f.
pub fn isolate_roots(f: &IntPolynomial) -> Result<Vec<RootDisk>, HeightError> {
    let c = float_coeffs(f)?;
    let d = c.len() - 1;
    let z = if d == 1 { vec![Complex64::new(-c[0] / c[1], 0.0)] } else { aberth(&c) };
    // γ covers the conversion of the coefficients and the Horner recurrence
    let gamma = 4.0 * (d as f64 + 2.0) * EPS;
    let mut disks = Vec::with_capacity(d);
    for i in 0..d {
        let (v, abs) = eval_with_abs(&c, z[i]);
        let mut denom = c[d].abs();
        for j in (0..d).filter(|&j| j != i) {
            denom *= (z[i] - z[j]).norm();
        }
        if denom == 0.0 || !denom.is_finite() || !v.is_finite() {
            return Err(HeightError::RootFindingFailed { achieved: f64::INFINITY });
        }
        let w = (v.norm() + gamma * abs) / denom;
        let radius = d as f64 * w * (1.0 + 8.0 * d as f64 * EPS) + EPS * z[i].norm();
        disks.push(RootDisk { center: z[i], radius, component: i });
    }
    // merge overlapping disks into components (union-find by relabelling)
    for i in 0..d {
        for j in i + 1..d {
            let (a, b) = (&disks[i], &disks[j]);
            if (a.center - b.center).norm() <= a.radius + b.radius {
                let (keep, drop) = (a.component.min(b.component), a.component.max(b.component));
                for disk in disks.iter_mut() {
                    if disk.component == drop {
                        disk.component = keep;
                    }
                }
            }
        }
    }
    Ok(disks)
}
