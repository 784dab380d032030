//! Dense polynomials over F_p for odd primes below 2^32, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub type FpPoly = Vec<u64>;

pub fn reduce(coeffs: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let mut v: FpPoly = coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    trim(&mut v);
    v
}

pub fn trim(v: &mut FpPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn degree(v: &FpPoly) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powmod(a, p - 2, p)
}

pub fn eval(f: &FpPoly, x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

pub fn add(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

pub fn monic(a: &FpPoly, p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let li = inv(l, p);
            a.iter().map(|&c| mulmod(c, li, p)).collect()
        }
    }
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let db = b.len() - 1;
    let li = inv(b[db], p);
    let mut r = a.clone();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = mulmod(r[r.len() - 1], li, p);
        q[shift] = c;
        for (j, &bc) in b.iter().enumerate() {
            let t = mulmod(c, bc, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    divrem(a, b, p).1
}

pub fn gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn derivative(a: &FpPoly, p: u64) -> FpPoly {
    let mut out: FpPoly = a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect();
    trim(&mut out);
    out
}

/// base^e mod m.
pub fn powmod_poly(base: &FpPoly, mut e: u128, m: &FpPoly, p: u64) -> FpPoly {
    let mut result: FpPoly = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// Squarefree factorization: list of (factor, multiplicity) with monic squarefree,
/// pairwise coprime factors.
pub fn squarefree_factorization(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let f = monic(f, p);
    let mut out = Vec::new();
    sff_rec(&f, 1, p, &mut out);
    out.sort_by_key(|(_, m)| *m);
    out
}

fn sff_rec(f: &FpPoly, mult: usize, p: u64, out: &mut Vec<(FpPoly, usize)>) {
    if f.len() <= 1 {
        return;
    }
    let df = derivative(f, p);
    if df.is_empty() {
        // f is a p-th power; over F_p the p-th root just drops to every p-th coefficient
        let root: FpPoly = f.iter().step_by(p as usize).copied().collect();
        sff_rec(&root, mult * p as usize, p, out);
        return;
    }
    let mut c = gcd(f, &df, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if z.len() > 1 {
            push_factor(out, monic(&z, p), i * mult, p);
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if c.len() > 1 {
        let root: FpPoly = c.iter().step_by(p as usize).copied().collect();
        sff_rec(&monic(&root, p), mult * p as usize, p, out);
    }
}

fn push_factor(out: &mut Vec<(FpPoly, usize)>, f: FpPoly, m: usize, p: u64) {
    match out.iter_mut().find(|(_, mm)| *mm == m) {
        Some(entry) => entry.0 = mul(&entry.0, &f, p),
        None => out.push((f, m)),
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// (k, product of all irreducible factors of degree k).
pub fn distinct_degree(f: &FpPoly, p: u64) -> Vec<(usize, FpPoly)> {
    let mut out = Vec::new();
    let mut rest = monic(f, p);
    let x: FpPoly = vec![0, 1];
    let mut h = x.clone();
    let mut k = 0;
    while rest.len() > 1 {
        k += 1;
        if 2 * k > rest.len() - 1 {
            let d = rest.len() - 1;
            out.push((d, rest.clone()));
            break;
        }
        h = powmod_poly(&h, p as u128, &rest, p);
        let g = gcd(&rest, &sub(&h, &x, p), p);
        if g.len() > 1 {
            rest = divrem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
            out.push((k, g));
        }
    }
    out
}

/// Degrees of the irreducible factors (with repetition) of a monic squarefree polynomial.
pub fn factor_degrees(f: &FpPoly, p: u64) -> Vec<usize> {
    let mut out = Vec::new();
    for (k, g) in distinct_degree(f, p) {
        let count = (g.len() - 1) / k;
        out.extend(std::iter::repeat_n(k, count));
    }
    out
}

/// All roots in F_p of a nonzero polynomial, sorted, without multiplicity.
pub fn roots(f: &FpPoly, p: u64) -> Vec<u64> {
    let f = monic(f, p);
    if f.len() <= 1 {
        return Vec::new();
    }
    let x: FpPoly = vec![0, 1];
    let xp = powmod_poly(&x, p as u128, &f, p);
    let mut g = gcd(&f, &sub(&xp, &x, p), p);
    let mut out = Vec::new();
    if g.len() > 1 && g[0] == 0 {
        out.push(0);
        g = divrem(&g, &x, p).0;
    }
    split_roots(&g, p, &mut out, 1);
    out.sort_unstable();
    out
}

// g is a product of distinct linear factors (x - a), a != 0.
fn split_roots(g: &FpPoly, p: u64, out: &mut Vec<u64>, mut shift: u64) {
    match g.len() {
        0 | 1 => {}
        2 => {
            let a = mulmod(p - g[0], inv(g[1], p), p);
            out.push(a);
        }
        _ => loop {
            // gcd(g, (x + s)^((p-1)/2) - 1) splits g for most s
            let xs: FpPoly = vec![shift % p, 1];
            let h = powmod_poly(&xs, ((p - 1) / 2) as u128, g, p);
            let d = gcd(g, &sub(&h, &vec![1], p), p);
            shift += 1;
            if d.len() > 1 && d.len() < g.len() {
                let e = divrem(g, &d, p).0;
                split_roots(&d, p, out, shift);
                split_roots(&e, p, out, shift);
                return;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_small_polys() {
        // x^2 - 10x + 17 mod 17 = x (x - 10)
        assert_eq!(roots(&vec![0, 7, 1], 17), vec![0, 10]);
        assert_eq!(roots(&vec![1, 0, 1], 3), Vec::<u64>::new());
        // x^3 - 9x^2 - 26x + 37 mod 37
        let f = reduce(&[37, -26, -9, 1].map(BigInt::from), 37);
        assert_eq!(roots(&f, 37), vec![0, 23]);
    }

    #[test]
    fn squarefree_split() {
        // x (x - 23)^2 mod 37
        let f = reduce(&[37, -26, -9, 1].map(BigInt::from), 37);
        let sff = squarefree_factorization(&f, 37);
        assert_eq!(sff.len(), 2);
        assert_eq!(sff[0], (vec![0, 1], 1));
        assert_eq!(sff[1], (vec![37 - 23, 1], 2));
    }

    #[test]
    fn squarefree_with_pth_power() {
        // (x+1)^3 (x+2) mod 3: derivative of the cube vanishes
        let p = 3;
        let c = mul(&mul(&vec![1, 1], &vec![1, 1], p), &vec![1, 1], p);
        let f = mul(&c, &vec![2, 1], p);
        let sff = squarefree_factorization(&f, p);
        assert_eq!(sff, vec![(vec![2, 1], 1), (vec![1, 1], 3)]);
    }

    #[test]
    fn distinct_degree_counts() {
        // x (x^2 + 5x - 5) mod 17: quadratic has nonresidue discriminant 45 = 11
        let f = reduce(&[-17, -5, 5, 1].map(BigInt::from), 17);
        assert_eq!(factor_degrees(&f, 17), vec![1, 2]);
        // x^4 + 1 mod 3 splits into two quadratics
        assert_eq!(factor_degrees(&vec![1, 0, 0, 0, 1], 3), vec![2, 2]);
    }
}
