use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{check_prime, PadicError};

/// A p-adic number known to finite precision.
///
/// A nonzero value is `p^valuation * unit` with `unit` a residue mod `p^precision`
/// prime to p. A value that is zero to the known precision has `valuation = None`
/// and then `precision` is the absolute precision: the value is divisible by
/// `p^precision` and nothing more is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicScalar {
    prime: u64,
    valuation: Option<i64>,
    #[serde(with = "crate::serde_num::int")]
    unit: BigInt,
    precision: u32,
}

pub(crate) fn pow_p(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// v_p of a nonzero integer.
pub fn valuation_of(x: &BigInt, p: u64) -> u32 {
    assert!(!x.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        y = q;
        v += 1;
    }
}

/// v_p(x), capped at `cap` (used when x is only known mod p^cap).
pub fn valuation_capped(x: &BigInt, p: u64, cap: u32) -> u32 {
    if x.is_zero() {
        return cap;
    }
    valuation_of(x, p).min(cap)
}

pub(crate) fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

impl PadicScalar {
    /// The integer `x` to absolute precision `abs_precision` (i.e. known mod p^abs_precision).
    pub fn from_integer(x: &BigInt, p: u64, abs_precision: u32) -> Result<Self, PadicError> {
        check_prime(p)?;
        if abs_precision == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        let m = pow_p(p, abs_precision);
        let r = x.mod_floor(&m);
        if r.is_zero() {
            return Ok(Self::zero(p, abs_precision));
        }
        let v = valuation_of(&r, p);
        let unit_prec = abs_precision - v;
        let unit = (x / pow_p(p, v)).mod_floor(&pow_p(p, unit_prec));
        Ok(PadicScalar { prime: p, valuation: Some(v as i64), unit, precision: unit_prec })
    }

    pub fn from_i64(x: i64, p: u64, abs_precision: u32) -> Result<Self, PadicError> {
        Self::from_integer(&BigInt::from(x), p, abs_precision)
    }

    /// `p^valuation * unit` with the unit known to `precision` digits.
    pub fn new(p: u64, valuation: i64, unit: &BigInt, precision: u32) -> Result<Self, PadicError> {
        check_prime(p)?;
        if precision == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        let m = pow_p(p, precision);
        let u = unit.mod_floor(&m);
        if (&u % BigInt::from(p)).is_zero() {
            return Err(PadicError::NotAUnit);
        }
        Ok(PadicScalar { prime: p, valuation: Some(valuation), unit: u, precision })
    }

    pub fn zero(p: u64, abs_precision: u32) -> Self {
        PadicScalar { prime: p, valuation: None, unit: BigInt::zero(), precision: abs_precision }
    }

    pub fn one(p: u64, precision: u32) -> Self {
        PadicScalar { prime: p, valuation: Some(0), unit: BigInt::one(), precision }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `None` when the value is zero at the known precision.
    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    /// Number of known digits of the unit part (absolute precision for zero).
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Absolute precision: the value is known modulo p^absolute_precision.
    pub fn absolute_precision(&self) -> i64 {
        match self.valuation {
            Some(v) => v + self.precision as i64,
            None => self.precision as i64,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn is_unit(&self) -> bool {
        self.valuation == Some(0)
    }

    /// Representative in [0, p^abs) for an integral value; errors on negative valuation.
    pub fn to_integer(&self) -> Result<BigInt, PadicError> {
        match self.valuation {
            None => Ok(BigInt::zero()),
            Some(v) if v < 0 => Err(PadicError::NotIntegral),
            Some(v) => Ok(&self.unit * pow_p(self.prime, v as u32)),
        }
    }

    /// Residue mod p of an integral value.
    pub fn residue(&self) -> Result<u64, PadicError> {
        let x = self.to_integer()?;
        Ok((x % BigInt::from(self.prime)).try_into().unwrap())
    }

    fn same_prime(&self, other: &Self) -> Result<(), PadicError> {
        if self.prime != other.prime {
            return Err(PadicError::PrimeMismatch(self.prime, other.prime));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        self.same_prime(other)?;
        let p = self.prime;
        let abs = self.absolute_precision().min(other.absolute_precision());
        let vmin = [self.valuation, other.valuation].into_iter().flatten().min();
        let Some(vmin) = vmin else {
            return Ok(Self::zero(p, abs.max(1) as u32));
        };
        let vmin = vmin.min(abs);
        // work with integers scaled by p^-vmin
        let lift = |s: &Self| match s.valuation {
            None => BigInt::zero(),
            Some(v) => &s.unit * pow_p(p, (v - vmin) as u32),
        };
        let sum = lift(self) + lift(other);
        let digits = (abs - vmin) as u32;
        let m = pow_p(p, digits);
        let r = sum.mod_floor(&m);
        if r.is_zero() || digits == 0 {
            return Ok(Self::zero_abs(p, abs));
        }
        let extra = valuation_of(&r, p);
        let prec = digits - extra;
        let unit = (r / pow_p(p, extra)).mod_floor(&pow_p(p, prec));
        Ok(PadicScalar { prime: p, valuation: Some(vmin + extra as i64), unit, precision: prec })
    }

    fn zero_abs(p: u64, abs: i64) -> Self {
        // negative absolute precision cannot be represented; clamp
        Self::zero(p, abs.max(0) as u32)
    }

    pub fn neg(&self) -> Self {
        match self.valuation {
            None => self.clone(),
            Some(_) => {
                let m = pow_p(self.prime, self.precision);
                PadicScalar { unit: (-&self.unit).mod_floor(&m), ..self.clone() }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        self.same_prime(other)?;
        let p = self.prime;
        match (self.valuation, other.valuation) {
            (Some(a), Some(b)) => {
                let prec = self.precision.min(other.precision);
                let m = pow_p(p, prec);
                Ok(PadicScalar { prime: p, valuation: Some(a + b), unit: (&self.unit * &other.unit).mod_floor(&m), precision: prec })
            }
            (None, Some(b)) => Ok(Self::zero_abs(p, self.precision as i64 + b)),
            (Some(a), None) => Ok(Self::zero_abs(p, other.precision as i64 + a)),
            (None, None) => Ok(Self::zero_abs(p, self.precision as i64 + other.precision as i64)),
        }
    }

    pub fn inv(&self) -> Result<Self, PadicError> {
        let v = self.valuation.ok_or(PadicError::DivisionByZero)?;
        let m = pow_p(self.prime, self.precision);
        let u = inverse_mod(&self.unit, &m).expect("unit part is invertible");
        Ok(PadicScalar { prime: self.prime, valuation: Some(-v), unit: u, precision: self.precision })
    }

    pub fn div(&self, other: &Self) -> Result<Self, PadicError> {
        self.same_prime(other)?;
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: u64) -> Result<Self, PadicError> {
        let mut result = Self::one(self.prime, self.precision.max(1));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(result)
    }

    /// Drops digits so the unit has at most `precision` digits.
    pub fn truncate(&self, precision: u32) -> Self {
        match self.valuation {
            None => Self::zero(self.prime, self.precision.min(precision)),
            Some(_) => {
                let prec = self.precision.min(precision).max(1);
                PadicScalar { unit: self.unit.mod_floor(&pow_p(self.prime, prec)), precision: prec, ..self.clone() }
            }
        }
    }

    /// Equality as elements of Z_p modulo the smaller absolute precision.
    pub fn congruent(&self, other: &Self) -> Result<bool, PadicError> {
        Ok(self.sub(other)?.is_zero())
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => write!(f, "O({}^{})", self.prime, self.precision),
            Some(0) => write!(f, "{} + O({}^{})", self.unit, self.prime, self.precision),
            Some(v) => write!(f, "{}^{} * {} + O({}^{})", self.prime, v, self.unit, self.prime, v + self.precision as i64),
        }
    }
}

impl PartialOrd for PadicScalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PadicScalar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.prime, self.valuation.map(|v| -v).unwrap_or(i64::MIN), &self.unit, self.precision).cmp(&(
            other.prime,
            other.valuation.map(|v| -v).unwrap_or(i64::MIN),
            &other.unit,
            other.precision,
        ))
    }
}
