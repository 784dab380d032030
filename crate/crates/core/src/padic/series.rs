use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::{inverse_mod, pow_p};
use super::{check_prime, PadicError, PadicScalar};

fn v_p_u64(mut d: u64, p: u64) -> u32 {
    let mut v = 0;
    while d.is_multiple_of(p) {
        d /= p;
        v += 1;
    }
    v
}

/// The d-th root w of a unit u with w ≡ 1 mod p.
///
/// Domain: u ≡ 1 mod p^(v_p(d)+1). Each p-th root costs one digit, so the result
/// carries `u.precision() - v_p(d)` digits.
pub fn padic_dth_root(u: &PadicScalar, d: u64) -> Result<PadicScalar, PadicError> {
    let p = u.prime();
    check_prime(p)?;
    if d == 0 {
        return Err(PadicError::ZeroExponent);
    }
    if !u.is_unit() {
        return Err(PadicError::OutsideConvergenceDomain(format!("{u} is not a unit")));
    }
    let n = u.precision();
    let v = v_p_u64(d, p);
    let x = u.to_integer()?;
    if n <= v {
        return Err(PadicError::OutsideConvergenceDomain(format!(
            "precision {n} too small for a {d}-th root at {p}"
        )));
    }
    if !is_one_mod(&x, p, v + 1) {
        return Err(PadicError::OutsideConvergenceDomain(format!("{u} is not 1 mod {p}^{}", v + 1)));
    }
    let d0 = d / p.pow(v);
    let mut w = prime_to_p_root(&x, d0, p, n);
    let mut prec = n;
    for _ in 0..v {
        w = pth_root(&w, p, prec);
        prec -= 1;
    }
    PadicScalar::from_integer(&w, p, prec)
}

// w ≡ 1 mod p with w^d = x mod p^n, p ∤ d, x ≡ 1 mod p.
fn prime_to_p_root(x: &BigInt, d: u64, p: u64, n: u32) -> BigInt {
    let m = pow_p(p, n);
    if d == 1 {
        return x.mod_floor(&m);
    }
    let db = BigInt::from(d);
    let mut w = BigInt::one();
    // Newton: w <- w - (w^d - x) / (d w^(d-1)); quadratic convergence from w ≡ 1 mod p
    let mut correct = 1u32;
    while correct < n {
        let wd1 = w.modpow(&BigInt::from(d - 1), &m);
        let fw = (&wd1 * &w - x).mod_floor(&m);
        let deriv = (&db * &wd1).mod_floor(&m);
        let inv = inverse_mod(&deriv, &m).expect("d w^(d-1) is a unit");
        w = (&w - fw * inv).mod_floor(&m);
        correct *= 2;
    }
    w
}

// p-th root of x ≡ 1 mod p^2 known mod p^n, returned mod p^(n-1), digit by digit:
// (w + t p^j)^p ≡ w^p + t p^(j+1) mod p^(j+2) for j ≥ 1.
fn pth_root(x: &BigInt, p: u64, n: u32) -> BigInt {
    let m = pow_p(p, n);
    let pb = BigInt::from(p);
    let mut w = BigInt::one();
    for j in 1..n.saturating_sub(1) {
        let diff = (x - w.modpow(&pb, &m)).mod_floor(&m);
        let t = (diff / pow_p(p, j + 1)).mod_floor(&pb);
        w += t * pow_p(p, j);
    }
    w.mod_floor(&pow_p(p, n - 1))
}

/// Teichmüller representative of the residue `a`: the (p-1)-st root of unity ≡ a mod p.
pub fn teichmuller(a: u64, p: u64, precision: u32) -> Result<PadicScalar, PadicError> {
    check_prime(p)?;
    if a.is_multiple_of(p) {
        return Err(PadicError::ZeroResidue);
    }
    if precision == 0 {
        return Err(PadicError::ZeroPrecision);
    }
    let m = pow_p(p, precision);
    let pb = BigInt::from(p);
    let mut x = BigInt::from(a % p);
    // each application of x -> x^p gains one correct digit
    for _ in 0..precision {
        x = x.modpow(&pb, &m);
    }
    PadicScalar::from_integer(&x, p, precision)
}

/// Splits a unit u = ω(u) · u₁ with ω the Teichmüller lift and u₁ ≡ 1 mod p.
pub fn teichmuller_split(u: &PadicScalar) -> Result<(PadicScalar, PadicScalar), PadicError> {
    if !u.is_unit() {
        return Err(PadicError::NotAUnit);
    }
    let omega = teichmuller(u.residue()?, u.prime(), u.precision())?;
    let one_unit = u.div(&omega)?;
    Ok((omega, one_unit))
}

pub(crate) fn is_one_mod(x: &BigInt, p: u64, k: u32) -> bool {
    (x - BigInt::one()).mod_floor(&pow_p(p, k)).is_zero()
}
