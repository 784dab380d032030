use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::HeightError;
use crate::padic::check_prime;

/// The uniform lower bound log(p/2) / (2 p^λ).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaBound {
    pub p: u64,
    pub lambda: u32,
    pub value: f64,
}

impl fmt::Display for LambdaBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log({}/2)/(2*{}^{}) = {:.12}", self.p, self.p, self.lambda, self.value)
    }
}

pub fn lambda_bound(p: u64, lambda: u32) -> Result<LambdaBound, HeightError> {
    check_prime(p)?;
    let denom = 2.0 * (p as f64).powi(lambda as i32);
    Ok(LambdaBound { p, lambda, value: (p as f64 / 2.0).ln() / denom })
}

/// h(b^{1/p^n}) = coefficient · log b.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KummerTerm {
    pub n: u32,
    #[serde(with = "crate::serde_num::rational")]
    pub coefficient: BigRational,
    pub value: f64,
}

fn is_perfect_power(b: u64, p: u64) -> bool {
    let guess = (b as f64).powf(1.0 / p as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).any(|r| {
        let mut acc: u128 = 1;
        for _ in 0..p {
            acc = acc.saturating_mul(r as u128);
            if acc > b as u128 {
                return false;
            }
        }
        acc == b as u128
    })
}

/// Heights of b^{1/p^n} for n = 1..=n_max. For b ≥ 2 not a p-th power, x^{p^n} − b is
/// irreducible, its roots all have modulus b^{1/p^n} > 1, and h = log(b)/p^n.
pub fn kummer_sequence(b: u64, p: u64, n_max: u32) -> Result<Vec<KummerTerm>, HeightError> {
    check_prime(p)?;
    if b < 2 {
        return Err(HeightError::BadInput(format!("base must be at least 2, got {b}")));
    }
    if is_perfect_power(b, p) {
        return Err(HeightError::PerfectPowerInput { b, p });
    }
    let log_b = (b as f64).ln();
    Ok((1..=n_max)
        .map(|n| {
            let coefficient = BigRational::new(BigInt::one(), BigInt::from(p).pow(n));
            let value = log_b * coefficient.to_f64().unwrap_or(0.0);
            KummerTerm { n, coefficient, value }
        })
        .collect())
}
