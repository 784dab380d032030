//! Absolute logarithmic Weil heights of algebraic numbers given by minimal polynomials.

mod bounds;
mod cyclotomic;
mod height;
mod isolate;

use thiserror::Error;

use crate::padic::{is_irreducible, IntPolynomial, PadicError};

pub use bounds::{kummer_sequence, lambda_bound, KummerTerm, LambdaBound};
pub use cyclotomic::{cyclotomic_polynomial, is_root_of_unity, totient};
pub use height::{log_mahler_measure, weil_height, Height, DEFAULT_TOLERANCE};
pub use isolate::{isolate_roots, RootDisk};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeightError {
    #[error("{0} is reducible over Q")]
    NotIrreducible(String),
    #[error("root isolation failed: achieved error {achieved:e}")]
    RootFindingFailed { achieved: f64 },
    #[error("{b} is a perfect {p}-th power")]
    PerfectPowerInput { b: u64, p: u64 },
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// An algebraic number, represented by its minimal polynomial (primitive, positive
/// leading coefficient, irreducible over Q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    minpoly: IntPolynomial,
}

impl AlgebraicNumber {
    pub fn new(f: &IntPolynomial) -> Result<Self, HeightError> {
        let g = f.primitive_part();
        if !is_irreducible(&g)? {
            return Err(HeightError::NotIrreducible(g.to_string()));
        }
        Ok(AlgebraicNumber { minpoly: g })
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }
}

impl std::str::FromStr for AlgebraicNumber {
    type Err = HeightError;
    fn from_str(s: &str) -> Result<Self, HeightError> {
        AlgebraicNumber::new(&s.parse()?)
    }
}
