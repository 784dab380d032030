//! Residue degrees and ramification indices of the p-adic places of Q[x]/(f).
//!
//! Simple irreducible factors of f mod p lift to unramified places (Hensel). Repeated
//! linear factors are resolved by looking at f(a + y): each Newton polygon edge of
//! slope -h/e (lowest terms) with a squarefree residual polynomial contributes one
//! place per irreducible residual factor, with ramification e and residue degree equal
//! to the factor degree. A repeated residual root with e = 1 moves the centre to
//! a + b p^h and the analysis recurses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::fp::{self, FpPoly};
use super::newton::newton_polygon_of;
use super::scalar::{pow_p, valuation_of};
use super::{check_prime, IntPolynomial, PadicError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Place {
    pub residue_degree: u32,
    pub ramification_index: u32,
}

impl Place {
    pub fn is_degree_one(&self) -> bool {
        self.residue_degree == 1 && self.ramification_index == 1
    }

    pub fn is_unramified(&self) -> bool {
        self.ramification_index == 1
    }

    pub fn local_degree(&self) -> u32 {
        self.residue_degree * self.ramification_index
    }
}

/// A group of roots whose place structure was not determined at the given budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnresolvedCluster {
    /// Number of roots (in an algebraic closure) covered by the cluster.
    pub roots: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceAnalysis {
    pub prime: u64,
    pub places: Vec<Place>,
    pub unresolved: Vec<UnresolvedCluster>,
}

impl PlaceAnalysis {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Maximum recursion depth of the recentring step.
pub const DEFAULT_CLUSTER_DEPTH: u32 = 64;

/// Places of Q[x]/(f) above p; errors if some cluster could not be resolved.
pub fn residue_degrees(f: &IntPolynomial, p: u64) -> Result<Vec<Place>, PadicError> {
    let analysis = analyze_places(f, p, DEFAULT_CLUSTER_DEPTH)?;
    if let Some(u) = analysis.unresolved.first() {
        return Err(PadicError::UnresolvedPlace { roots: u.roots, reason: u.reason.clone() });
    }
    Ok(analysis.places)
}

/// Full place analysis that reports unresolved clusters instead of failing.
pub fn analyze_places(f: &IntPolynomial, p: u64, max_depth: u32) -> Result<PlaceAnalysis, PadicError> {
    check_prime(p)?;
    f.require_squarefree()?;
    let g = f.primitive_part().monic_transform();
    let mut out = PlaceAnalysis { prime: p, places: Vec::new(), unresolved: Vec::new() };
    let gbar = fp::reduce(g.coeffs(), p);
    for (factor, mult) in fp::squarefree_factorization(&gbar, p) {
        if mult == 1 {
            for d in fp::factor_degrees(&factor, p) {
                out.places.push(Place { residue_degree: d as u32, ramification_index: 1 });
            }
            continue;
        }
        let roots = fp::roots(&factor, p);
        for &a in &roots {
            cluster(&g, p, BigInt::from(a), BigRational::zero(), mult, max_depth, &mut out);
        }
        let nonlinear = factor.len() - 1 - roots.len();
        if nonlinear > 0 {
            out.unresolved.push(UnresolvedCluster {
                roots: nonlinear * mult,
                reason: format!("repeated irreducible factor of degree > 1 with multiplicity {mult} mod {p}"),
            });
        }
    }
    out.places.sort();
    Ok(out)
}

// Roots of g with v(x - center) > threshold; there are `count` of them.
fn cluster(
    g: &IntPolynomial,
    p: u64,
    center: BigInt,
    threshold: BigRational,
    count: usize,
    depth: u32,
    out: &mut PlaceAnalysis,
) {
    if depth == 0 {
        out.unresolved.push(UnresolvedCluster { roots: count, reason: "recentring depth exhausted".into() });
        return;
    }
    let mut shifted = g.taylor_shift(&center);
    // squarefree input: the centre is at most a simple root
    let mut count = count;
    if shifted[0].is_zero() {
        out.places.push(Place { residue_degree: 1, ramification_index: 1 });
        shifted.remove(0);
        count -= 1;
        if count == 0 {
            return;
        }
    }
    let np = match newton_polygon_of(&shifted, p) {
        Ok(np) => np,
        Err(_) => {
            out.unresolved.push(UnresolvedCluster { roots: count, reason: "zero shifted polynomial".into() });
            return;
        }
    };
    let mut covered = 0;
    for seg in np.segments.iter().filter(|s| -&s.slope > threshold) {
        covered += seg.length;
        let lambda = -&seg.slope;
        let h = lambda.numer().to_u64().unwrap_or(0);
        let e = lambda.denom().to_usize().unwrap_or(1);
        let residual = residual_polynomial(&shifted, p, seg.start, seg.length, &lambda);
        let sff = fp::squarefree_factorization(&residual, p);
        for (factor, mult) in sff {
            if mult == 1 {
                for d in fp::factor_degrees(&factor, p) {
                    out.places.push(Place { residue_degree: d as u32, ramification_index: e as u32 });
                }
                continue;
            }
            let roots = fp::roots(&factor, p);
            let nonlinear = factor.len() - 1 - roots.len();
            if e == 1 {
                for &b in &roots {
                    let next = &center + BigInt::from(b) * pow_p(p, h as u32);
                    cluster(g, p, next, lambda.clone(), mult, depth - 1, out);
                }
            } else if !roots.is_empty() {
                out.unresolved.push(UnresolvedCluster {
                    roots: roots.len() * mult * e,
                    reason: format!("repeated residual root on a ramified edge (e = {e})"),
                });
            }
            if nonlinear > 0 {
                out.unresolved.push(UnresolvedCluster {
                    roots: nonlinear * mult * e,
                    reason: "repeated nonlinear residual factor".into(),
                });
            }
        }
    }
    if covered != count {
        out.unresolved.push(UnresolvedCluster {
            roots: count.abs_diff(covered),
            reason: format!("cluster size mismatch: expected {count}, Newton polygon gives {covered}"),
        });
    }
}

/// Residual polynomial of the edge starting at `start` of length `len` with root valuation `lambda`.
fn residual_polynomial(coeffs: &[BigInt], p: u64, start: usize, len: usize, lambda: &BigRational) -> FpPoly {
    let e = lambda.denom().to_usize().unwrap();
    let h = lambda.numer().to_i64().unwrap();
    let v0 = valuation_of(&coeffs[start], p) as i64;
    let pb = BigInt::from(p);
    let mut out = Vec::with_capacity(len / e + 1);
    for j in 0..=(len / e) {
        let c = &coeffs[start + j * e];
        let target = v0 - j as i64 * h;
        if c.is_zero() || (valuation_of(c, p) as i64) != target {
            out.push(0);
        } else {
            let u = c / pow_p(p, target as u32);
            out.push(u.mod_floor(&pb).to_u64().unwrap());
        }
    }
    fp::trim(&mut out);
    out
}

/// Shorthand used in reports: `f` is the residue degree, `e` the ramification index.
pub fn describe(places: &[Place]) -> String {
    places
        .iter()
        .map(|pl| format!("(f={}, e={})", pl.residue_degree, pl.ramification_index))
        .collect::<Vec<_>>()
        .join(", ")
}
