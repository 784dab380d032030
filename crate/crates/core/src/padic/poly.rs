use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::PadicError;
use crate::serde_num::Int;

/// Polynomial with integer coefficients, stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Int>", into = "Vec<Int>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial of degree at least one. Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self, PadicError> {
        trim(&mut coeffs);
        if coeffs.is_empty() {
            return Err(PadicError::ZeroPolynomial);
        }
        if coeffs.len() < 2 {
            return Err(PadicError::ConstantPolynomial);
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self, PadicError> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty")
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPolynomial {
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_mod(&self, x: &BigInt, m: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * x + c).mod_floor(m);
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Formal derivative as a raw coefficient vector (it may be constant).
    pub fn derivative_coeffs(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect()
    }

    /// Coefficients of f(x + a).
    pub fn taylor_shift(&self, a: &BigInt) -> Vec<BigInt> {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        c
    }

    /// gcd(f, f') has degree zero over the rationals.
    pub fn is_squarefree(&self) -> bool {
        let f = to_rational(&self.coeffs);
        let df = to_rational(&self.derivative_coeffs());
        rat_poly_gcd(&f, &df).len() <= 1
    }

    pub fn require_squarefree(&self) -> Result<(), PadicError> {
        if self.is_squarefree() {
            Ok(())
        } else {
            Err(PadicError::NotSquarefree(self.to_string()))
        }
    }

    /// Resultant Res(f, g), via the Euclidean remainder sequence over Q.
    pub fn resultant(&self, g: &IntPolynomial) -> BigInt {
        let r = rat_resultant(&to_rational(&self.coeffs), &to_rational(&g.coeffs));
        debug_assert!(r.is_integer());
        r.to_integer()
    }

    /// disc(f) = (−1)^{d(d−1)/2} Res(f, f′) / lc(f).
    pub fn discriminant(&self) -> BigInt {
        let d = self.degree();
        let df = to_rational(&self.derivative_coeffs());
        let r = rat_resultant(&to_rational(&self.coeffs), &df) / BigRational::from_integer(self.leading().clone());
        let r = r.to_integer();
        if (d * (d - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// The monic integral polynomial a^{d-1} f(x/a) where a is the leading coefficient.
    /// Its roots are a times the roots of f.
    pub fn monic_transform(&self) -> IntPolynomial {
        let a = self.leading().clone();
        let d = self.degree();
        let mut out = Vec::with_capacity(d + 1);
        let mut pow = BigInt::one();
        for i in (0..=d).rev() {
            // coefficient c_i gets a^{d-1-i}, i < d; leading becomes 1
            if i == d {
                out.push(BigInt::one());
            } else {
                out.push(&self.coeffs[i] * &pow);
                pow *= &a;
            }
        }
        out.reverse();
        IntPolynomial { coeffs: out }
    }
}

impl TryFrom<Vec<Int>> for IntPolynomial {
    type Error = PadicError;
    fn try_from(v: Vec<Int>) -> Result<Self, PadicError> {
        IntPolynomial::new(v.into_iter().map(|c| c.0).collect())
    }
}

impl From<IntPolynomial> for Vec<Int> {
    fn from(p: IntPolynomial) -> Vec<Int> {
        p.coeffs.into_iter().map(Int).collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            if !a.is_one() || i == 0 {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = PadicError;

    /// Accepts "x^3-x^2-4x+3", "2*x^2 + 1", or a bracketed coefficient list
    /// "[3,-4,-1,1]" (constant term first).
    fn from_str(s: &str) -> Result<Self, PadicError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.starts_with('[') {
            let inner = s
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| PadicError::Parse(s.clone()))?;
            let coeffs = inner
                .split(',')
                .map(|t| t.parse::<BigInt>().map_err(|_| PadicError::Parse(s.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            return IntPolynomial::new(coeffs);
        }
        parse_expression(&s)
    }
}

fn parse_expression(s: &str) -> Result<IntPolynomial, PadicError> {
    let err = || PadicError::Parse(s.to_string());
    if s.is_empty() {
        return Err(err());
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff = if i > start { s[start..i].parse::<BigInt>().map_err(|_| err())? } else { BigInt::one() };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(err());
                }
                exp = s[es..i].parse().map_err(|_| err())?;
            }
        } else if i == start {
            return Err(err());
        }
        if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            return Err(err());
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += sign * coeff;
    }
    IntPolynomial::new(coeffs)
}

pub(crate) fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Remainder of a by b over Q (b nonzero, trimmed).
pub(crate) fn rat_poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let q = &r[r.len() - 1] / lead;
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &q * bc;
        }
        trim(&mut r);
    }
    r
}

fn rat_resultant(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigRational::zero();
    }
    let mut acc = BigRational::one();
    loop {
        let (m, n) = (a.len() - 1, b.len() - 1);
        if n == 0 {
            return acc * num_traits::pow(b[0].clone(), m);
        }
        let r = rat_poly_rem(&a, &b);
        if r.is_empty() {
            return BigRational::zero();
        }
        let k = r.len() - 1;
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b[n].clone(), m - k);
        a = b;
        b = r;
    }
}

/// Monic gcd over Q. Returns an empty vector only if both inputs vanish.
pub(crate) fn rat_poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rat_poly_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in x.iter_mut() {
            *c = &*c / &l;
        }
    }
    x
}
