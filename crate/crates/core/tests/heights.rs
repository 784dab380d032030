use bogocert::heights::{kummer_sequence, lambda_bound, weil_height, AlgebraicNumber, Height};
use bogocert::padic::IntPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c).unwrap()
}

fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// exact division by a monic polynomial
fn div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0; a.len() - db];
    for s in (0..q.len()).rev() {
        let c = r[s + db];
        for (j, y) in b.iter().enumerate() {
            r[s + j] -= c * y;
        }
        q[s] = c;
    }
    assert!(r.iter().all(|&x| x == 0));
    q
}

fn mobius(mut n: u64) -> i32 {
    let mut mu = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Φ_m = ∏_{d | m} (x^d − 1)^{μ(m/d)}.
fn cyclotomic(m: u64) -> Vec<i64> {
    let xd = |d: u64| {
        let mut v = vec![0; d as usize + 1];
        v[0] = -1;
        v[d as usize] = 1;
        v
    };
    let divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut num = vec![1];
    for &d in &divisors {
        if mobius(m / d) == 1 {
            num = mul(&num, &xd(d));
        }
    }
    for &d in &divisors {
        if mobius(m / d) == -1 {
            num = div(&num, &xd(d));
        }
    }
    num
}

fn h(c: &[i64], tol: f64) -> Height {
    weil_height(&AlgebraicNumber::new(&poly(c)).unwrap(), tol).unwrap()
}

#[test]
fn fifty_cyclotomic_polynomials_have_height_zero() {
    for m in 1..=50u64 {
        let f = cyclotomic(m);
        assert_eq!(h(&f, 1e-9), Height::Zero, "Φ_{m}");
        // a negated variable gives another root of unity
        let g: Vec<i64> = f.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { *c }).collect();
        assert_eq!(h(&g, 1e-9), Height::Zero, "Φ_{m}(-x)");
    }
}

fn is_square(n: i64) -> bool {
    let r = (n as f64).sqrt().round() as i64;
    r * r == n
}

/// Minimal polynomials with heights known in closed form.
fn closed_form_cases() -> Vec<(Vec<i64>, f64)> {
    let mut out = Vec::new();
    // (b x − a), h = log max(|a|, |b|)
    for (a, b) in [(2i64, 1i64), (3, 2), (-7, 5), (11, 3), (1, 9), (-13, 4), (100, 7), (5, 12)] {
        out.push((vec![-a, b], (a.abs().max(b) as f64).ln()));
    }
    // x^d − b, b not a perfect power: all roots have modulus b^{1/d}
    for (d, b) in [(2, 2), (3, 2), (4, 3), (5, 6), (7, 5), (9, 2), (12, 7), (6, 10)] {
        let mut c = vec![0; d + 1];
        c[0] = -b;
        c[d] = 1;
        out.push((c, (b as f64).ln() / d as f64));
    }
    // x^2 − a x − 1: M = (a + √(a² + 4)) / 2
    for a in 1..=12 {
        let m = (a as f64 + ((a * a + 4) as f64).sqrt()) / 2.0;
        out.push((vec![-1, -a, 1], m.ln() / 2.0));
    }
    // x^2 − a x + 1, a ≥ 3: M = (a + √(a² − 4)) / 2
    for a in 3..=12 {
        let m = (a as f64 + ((a * a - 4) as f64).sqrt()) / 2.0;
        out.push((vec![1, -a, 1], m.ln() / 2.0));
    }
    // b x² − c, c/b not a square: M = max(b, c)
    for (b, c) in [(2, 3), (3, 5), (5, 2), (7, 3), (2, 7), (3, 10), (6, 5), (10, 3), (11, 2), (5, 13), (13, 6), (3, 14)] {
        assert!(i64::gcd(&b, &c) == 1 && !is_square(b * c));
        out.push((vec![-c, 0, b], (b.max(c) as f64).ln() / 2.0));
    }
    out
}

#[test]
fn fifty_closed_form_heights() {
    let cases = closed_form_cases();
    assert_eq!(cases.len(), 50);
    for (c, want) in cases {
        for tol in [1e-9, 1e-10] {
            let got = h(&c, tol);
            assert!(got.contains(want), "{c:?}: {got:?} should contain {want}");
            assert!(got.hi() - got.lo() <= 2.0 * tol);
        }
    }
}

#[test]
fn lehmer_polynomial() {
    // log of Lehmer's number, 1.17628081825991750...
    let f = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1];
    let got = h(&f, 1e-12);
    assert!(got.contains(1.1762808182599175f64.ln() / 10.0), "{got:?}");
}

#[test]
fn kummer_tower_heights() {
    let terms = kummer_sequence(2, 3, 3).unwrap();
    for t in &terms {
        let d = 3usize.pow(t.n);
        let mut c = vec![0; d + 1];
        c[0] = -2;
        c[d] = 1;
        let got = h(&c, 1e-10);
        assert!(got.contains(t.value), "n = {}: {got:?} vs {}", t.n, t.value);
        assert_eq!(*t.coefficient.denom(), BigInt::from(d));
    }
}

#[test]
fn kummer_tower_violates_every_uniform_bound() {
    for lambda in 0..6 {
        let bound = lambda_bound(3, lambda).unwrap().value;
        let seq = kummer_sequence(2, 3, 20).unwrap();
        assert!(seq.iter().any(|t| t.value > 0.0 && t.value < bound), "λ = {lambda}");
    }
}

#[test]
fn reducible_input_is_rejected() {
    assert!(AlgebraicNumber::new(&poly(&[-1, 0, 1])).is_err());
    assert!(AlgebraicNumber::new(&poly(&[1, 0, 0, 0, 1])).is_ok());
}
