//! Irreducibility over Q.
//!
//! First the factor-degree patterns of f mod several primes are intersected: if no proper
//! subset sum survives, f is irreducible. Otherwise the factorization mod the prime with
//! the fewest factors is Hensel-lifted past a coefficient bound and subsets of the lifted
//! factors are tried as divisors over Z (Zassenhaus).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp::{self, FpPoly};
use super::scalar::pow_p;
use super::{is_prime, IntPolynomial, PadicError};

/// Upper limit on the number of candidate subsets in the recombination step.
pub const RECOMBINATION_BUDGET: u64 = 1 << 20;

const PATTERN_PRIMES: usize = 24;

/// Whether f is irreducible over Q. Constant multiples are ignored.
pub fn is_irreducible(f: &IntPolynomial) -> Result<bool, PadicError> {
    let g = f.primitive_part();
    let d = g.degree();
    if d == 1 {
        return Ok(true);
    }
    if g.coeffs()[0].is_zero() || !g.is_squarefree() {
        return Ok(false);
    }
    // Gauss: f is irreducible over Q iff its monic transform is irreducible over Z
    let m = g.monic_transform();
    let good = good_primes(&m, PATTERN_PRIMES);
    let mut possible: Option<BTreeSet<usize>> = None;
    let mut best: Option<(u64, usize)> = None;
    for &p in &good {
        let degs = fp::factor_degrees(&fp::reduce(m.coeffs(), p), p);
        let sums = subset_sums(&degs, d);
        possible = Some(match possible {
            None => sums,
            Some(s) => s.intersection(&sums).copied().collect(),
        });
        if best.is_none_or(|(_, r)| degs.len() < r) {
            best = Some((p, degs.len()));
        }
        if possible.as_ref().is_some_and(|s| s.iter().all(|&k| k == 0 || k == d)) {
            return Ok(true);
        }
    }
    let (p, _) = best.ok_or_else(|| PadicError::IrreducibilityUndecided("no good prime found".into()))?;
    let allowed = possible.unwrap_or_default();
    zassenhaus_has_factor(&m, p, &allowed).map(|found| !found)
}

fn good_primes(m: &IntPolynomial, count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 3;
    while out.len() < count && p < 100_000 {
        if is_prime(p) {
            let r = fp::reduce(m.coeffs(), p);
            if r.len() == m.coeffs().len() && fp::gcd(&r, &fp::derivative(&r, p), p).len() == 1 {
                out.push(p);
            }
        }
        p += 2;
    }
    out
}

fn subset_sums(degs: &[usize], d: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; d + 1];
    reach[0] = true;
    for &k in degs {
        for s in (k..=d).rev() {
            if reach[s - k] {
                reach[s] = true;
            }
        }
    }
    (0..=d).filter(|&s| reach[s]).collect()
}

/// Complete factorization of a monic squarefree polynomial over F_p into monic irreducibles.
pub fn factor_mod_p(f: &FpPoly, p: u64) -> Vec<FpPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::new();
    for (k, g) in fp::distinct_degree(f, p) {
        equal_degree(&g, k, p, &mut rng, &mut out);
    }
    out
}

fn equal_degree(g: &FpPoly, k: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = g.len() - 1;
    if n == k {
        out.push(fp::monic(g, p));
        return;
    }
    loop {
        let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        fp::trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        // a^((p^k - 1)/2) = (a · a^p · … · a^(p^(k-1)))^((p-1)/2)
        let mut frob = a.clone();
        let mut norm = fp::rem(&a, g, p);
        for _ in 1..k {
            frob = fp::powmod_poly(&frob, p as u128, g, p);
            norm = fp::rem(&fp::mul(&norm, &frob, p), g, p);
        }
        let t = fp::powmod_poly(&norm, ((p - 1) / 2) as u128, g, p);
        let d = fp::gcd(g, &fp::sub(&t, &vec![1], p), p);
        if d.len() > 1 && d.len() < g.len() {
            let e = fp::divrem(g, &d, p).0;
            equal_degree(&d, k, p, rng, out);
            equal_degree(&e, k, p, rng, out);
            return;
        }
    }
}

// s, t with s a + t b = 1 over F_p, for coprime a, b.
fn bezout(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], vec![]);
    let (mut t0, mut t1): (FpPoly, FpPoly) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp::divrem(&r0, &r1, p);
        let s2 = fp::sub(&s0, &fp::mul(&q, &s1, p), p);
        let t2 = fp::sub(&t0, &fp::mul(&q, &t1, p), p);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    let c = fp::inv(r0[0], p);
    let scale = |v: &FpPoly| v.iter().map(|&x| fp::mulmod(x, c, p)).collect::<FpPoly>();
    (scale(&s0), scale(&t0))
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn symmetric(v: &mut [BigInt], m: &BigInt) {
    let half = m >> 1;
    for c in v.iter_mut() {
        *c = c.mod_floor(m);
        if *c > half {
            *c -= m;
        }
    }
}

fn lift_fp(v: &FpPoly) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Exact quotient of a by the monic b over Z, if b divides a.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for shift in (0..q.len()).rev() {
        let c = r[shift + db].clone();
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[shift + j] -= &c * bc;
            }
        }
        q[shift] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

// Lifts f ≡ g h mod p (g, h monic, coprime) to mod p^k.
fn hensel_lift(f: &[BigInt], g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> Vec<BigInt> {
    let (s, t) = bezout(g, h, p);
    let mut gz = lift_fp(g);
    let mut hz = lift_fp(h);
    for j in 1..k {
        let pj = pow_p(p, j);
        let prod = zmul(&gz, &hz);
        let e: Vec<BigInt> = f.iter().zip(prod.iter()).map(|(a, b)| (a - b) / &pj).collect();
        let e = fp::reduce(&e, p);
        if e.is_empty() {
            continue;
        }
        let gbar = fp::reduce(&gz, p);
        let hbar = fp::reduce(&hz, p);
        let (q, big_g) = fp::divrem(&fp::mul(&e, &t, p), &gbar, p);
        let big_h = fp::add(&fp::mul(&e, &s, p), &fp::mul(&hbar, &q, p), p);
        let big_h = fp::rem(&big_h, &hbar, p);
        for (i, c) in big_g.iter().enumerate() {
            gz[i] += BigInt::from(*c) * &pj;
        }
        for (i, c) in big_h.iter().enumerate() {
            hz[i] += BigInt::from(*c) * &pj;
        }
    }
    gz
}

/// Whether the monic squarefree m has a proper factor over Z whose degree lies in `allowed`.
fn zassenhaus_has_factor(m: &IntPolynomial, p: u64, allowed: &BTreeSet<usize>) -> Result<bool, PadicError> {
    let d = m.degree();
    let f = m.coeffs();
    let factors = factor_mod_p(&fp::reduce(f, p), p);
    let r = factors.len();
    // Mignotte: coefficients of a factor of degree ≤ d are at most 2^d ‖f‖₂
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << (d + 1)) * (norm2.sqrt() + 1u32);
    let mut k = 1u32;
    while pow_p(p, k) <= bound {
        k += 1;
    }
    let modulus = pow_p(p, k);
    let lifted: Vec<Vec<BigInt>> = factors
        .iter()
        .map(|g| {
            let h = fp::divrem(&fp::reduce(f, p), g, p).0;
            let mut z = hensel_lift(f, g, &h, p, k);
            symmetric(&mut z, &modulus);
            z
        })
        .collect();
    let mut tried: u64 = 0;
    for size in 1..=r / 2 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| factors[i].len() - 1).sum();
            if deg < d && allowed.contains(&deg) {
                tried += 1;
                if tried > RECOMBINATION_BUDGET {
                    return Err(PadicError::IrreducibilityUndecided(format!(
                        "{r} modular factors mod {p} exceed the recombination budget"
                    )));
                }
                let mut cand = lifted[idx[0]].clone();
                for &i in &idx[1..] {
                    cand = zmul(&cand, &lifted[i]);
                    symmetric(&mut cand, &modulus);
                }
                if (f[0].is_zero() || (&f[0] % &cand[0]).is_zero())
                    && zdiv_exact(f, &cand).is_some() {
                        return Ok(true);
                    }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
    }
    Ok(false)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn irr(c: &[i64]) -> bool {
        is_irreducible(&IntPolynomial::from_i64s(c).unwrap()).unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(irr(&[-1, -1, 1]));
        assert!(irr(&[3, -4, -1, 1]));
        assert!(!irr(&[-1, 0, 1]));
        assert!(!irr(&[0, 1, 1]));
        assert!(irr(&[-2, 0, 0, 1]));
    }

    #[test]
    fn never_irreducible_mod_p() {
        // x^4 + 1 splits mod every prime but is irreducible over Q
        assert!(irr(&[1, 0, 0, 0, 1]));
        // x^4 - 10x^2 + 1, the minimal polynomial of √2 + √3
        assert!(irr(&[1, 0, -10, 0, 1]));
        // (x^2 - 2)(x^2 - 3)
        assert!(!irr(&[6, 0, -5, 0, 1]));
        // (x^2 + 1)(x^2 + x + 1) has matching patterns everywhere
        assert!(!irr(&[1, 1, 2, 1, 1]));
    }

    #[test]
    fn non_monic_and_kummer() {
        assert!(irr(&[1, 0, 3]));
        assert!(!irr(&[-1, 0, 4]));
        let mut c = vec![0i64; 28];
        c[0] = -2;
        c[27] = 1;
        assert!(irr(&c));
        let mut c = vec![0i64; 10];
        c[0] = -8;
        c[9] = 1;
        assert!(!irr(&c));
    }

    #[test]
    fn modular_factorization_multiplies_back() {
        let f = fp::reduce(&[1, 0, 0, 0, 0, 0, 0, 0, 1].map(BigInt::from), 17);
        let fs = factor_mod_p(&f, 17);
        let prod = fs.iter().fold(vec![1u64], |a, b| fp::mul(&a, b, 17));
        assert_eq!(prod, f);
        assert!(fs.iter().all(|g| fp::factor_degrees(g, 17).len() == 1));
    }
}
