//! Exact root-of-unity detection: an irreducible f of degree d has only roots of unity
//! as roots iff f divides x^m − 1 for some m with φ(m) = d. Since φ(m) ≥ √(m/2), only
//! m ≤ 2d² need be tried.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::AlgebraicNumber;
use crate::padic::fp_poly as fp;
use crate::padic::IntPolynomial;

// Filtering primes for the modular pre-check; a nonzero remainder mod q rules m out exactly.
const FILTER_PRIMES: [u64; 2] = [2_147_483_647, 4_294_967_291];

pub fn totient(mut m: u64) -> u64 {
    let mut out = m;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            while m.is_multiple_of(q) {
                m /= q;
            }
            out -= out / q;
        }
        q += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Whether the number is a root of unity (all conjugates on the unit circle and integral).
pub fn is_root_of_unity(a: &AlgebraicNumber) -> bool {
    let f = a.minpoly();
    if !f.is_monic() {
        return false;
    }
    let d = f.degree() as u64;
    (1..=2 * d * d + 2).filter(|&m| totient(m) == d).any(|m| divides_x_pow_minus_one(f, m))
}

fn divides_x_pow_minus_one(f: &IntPolynomial, m: u64) -> bool {
    for &q in &FILTER_PRIMES {
        let fq = fp::reduce(f.coeffs(), q);
        if fp::powmod_poly(&vec![0, 1], m as u128, &fq, q) != vec![1] {
            return false;
        }
    }
    x_pow_mod(f, m) == [BigInt::one()]
}

// x^m mod the monic f over Z, trimmed.
fn x_pow_mod(f: &IntPolynomial, m: u64) -> Vec<BigInt> {
    let mulmod = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        let mut prod = vec![BigInt::zero(); (a.len() + b.len()).saturating_sub(1)];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        reduce_monic(prod, f.coeffs())
    };
    let mut result = reduce_monic(vec![BigInt::one()], f.coeffs());
    let mut base = reduce_monic(vec![BigInt::zero(), BigInt::one()], f.coeffs());
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &base);
        }
        base = mulmod(&base, &base);
        e >>= 1;
    }
    result
}

fn reduce_monic(mut r: Vec<BigInt>, f: &[BigInt]) -> Vec<BigInt> {
    let d = f.len() - 1;
    while r.len() > d {
        let c = r.pop().expect("nonempty");
        let shift = r.len() - d;
        for j in 0..d {
            r[shift + j] -= &c * &f[j];
        }
    }
    while r.last().is_some_and(Zero::is_zero) {
        r.pop();
    }
    r
}

/// Φ_m, by dividing x^m − 1 by Φ_k for every proper divisor k of m.
pub fn cyclotomic_polynomial(m: u64) -> IntPolynomial {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for k in (1..m).filter(|k| m.is_multiple_of(*k)) {
        let phi_k = cyclotomic_polynomial(k);
        num = exact_div_monic(&num, phi_k.coeffs());
    }
    IntPolynomial::new(num).expect("degree φ(m) ≥ 1")
}

fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for shift in (0..q.len()).rev() {
        let c = r[shift + db].clone();
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &c * bc;
        }
        q[shift] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}
