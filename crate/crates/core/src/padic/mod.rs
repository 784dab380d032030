//! Finite-precision arithmetic over Z_p and Q_p for odd primes.

mod factor;
mod fp;
mod newton;
mod places;
mod poly;
mod roots;
mod scalar;
mod series;

use thiserror::Error;

pub use factor::{factor_mod_p, is_irreducible, RECOMBINATION_BUDGET};
pub use newton::{newton_polygon, NewtonPolygon, Segment};
pub use places::{analyze_places, describe, residue_degrees, Place, PlaceAnalysis, UnresolvedCluster, DEFAULT_CLUSTER_DEPTH};
pub use poly::IntPolynomial;
pub use roots::{default_depth_budget, root_residue, zp_roots, zp_roots_with_budget};
pub use scalar::{valuation_of, PadicScalar};
pub use series::{padic_dth_root, teichmuller, teichmuller_split};


/// F_p polynomial helpers shared with other modules.
pub mod fp_poly {
    pub use super::fp::*;
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("p = 2 is not supported; the prime must be odd")]
    EvenPrime,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must have degree at least one")]
    ConstantPolynomial,
    #[error("polynomial {0} is not squarefree over Q")]
    NotSquarefree(String),
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
    #[error("precision must be positive")]
    ZeroPrecision,
    #[error("value is not a p-adic unit")]
    NotAUnit,
    #[error("value is not p-adically integral")]
    NotIntegral,
    #[error("division by a value that is zero at the working precision")]
    DivisionByZero,
    #[error("operands live over different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
    #[error("lifting tree did not separate the roots within depth {budget}")]
    PrecisionExhausted { budget: u32 },
    #[error("{roots} root(s) form a place whose residue degree was not certified: {reason}")]
    UnresolvedPlace { roots: usize, reason: String },
    #[error("outside the convergence domain: {0}")]
    OutsideConvergenceDomain(String),
    #[error("residue is zero mod p")]
    ZeroResidue,
    #[error("irreducibility not decided: {0}")]
    IrreducibilityUndecided(String),
    #[error("exponent must be positive")]
    ZeroExponent,
}

/// Checks that `p` is an odd prime below 2^32.
pub fn check_prime(p: u64) -> Result<(), PadicError> {
    if p == 2 {
        return Err(PadicError::EvenPrime);
    }
    if p < 3 || p > u32::MAX as u64 || !is_prime(p) {
        return Err(PadicError::NotPrime(p));
    }
    Ok(())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
