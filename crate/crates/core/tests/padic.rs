use bogocert::padic::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c).unwrap()
}

/// ∏ (x − r) with ascending coefficients.
fn planted(roots: &[i64]) -> Vec<i64> {
    let mut c = vec![1i64];
    for &r in roots {
        let mut next = vec![0; c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= r * a;
        }
        c = next;
    }
    c
}

fn v_p(mut x: i64, p: i64) -> i64 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn slope_multiset(f: &IntPolynomial, p: u64) -> Vec<BigRational> {
    let mut out = Vec::new();
    for (s, len) in newton_polygon(f, p).unwrap().slopes() {
        out.extend(std::iter::repeat_n(-s, len));
    }
    out.sort();
    out
}

#[test]
fn newton_polygon_examples() {
    let q = |n: i64| BigRational::from_integer(n.into());
    assert_eq!(slope_multiset(&poly(&[17, -10, 1]), 17), vec![q(0), q(1)]);
    assert_eq!(slope_multiset(&poly(&[-1, 1]), 7), vec![q(0)]);
    assert_eq!(slope_multiset(&poly(&[25, -2, -5, 1]), 5), vec![q(0), q(0), q(2)]);
    assert!(matches!(IntPolynomial::from_i64s(&[0]), Err(PadicError::ZeroPolynomial)));
}

#[test]
fn zp_root_examples() {
    let roots = zp_roots(&poly(&[17, -10, 1]), 17, 1).unwrap();
    let mut res: Vec<u64> = roots.iter().map(|r| r.residue().unwrap()).collect();
    res.sort();
    assert_eq!(res, vec![0, 10]);
    assert!(zp_roots(&poly(&[1, 0, 1]), 3, 10).unwrap().is_empty());
    let one = zp_roots(&poly(&[-3, -8, 1, 1]), 3, 10).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].residue().unwrap(), 0);
    assert!(matches!(zp_roots(&poly(&[1, 0, 1]), 2, 5), Err(PadicError::EvenPrime)));
}

#[test]
fn residue_degree_examples() {
    let shape = |c: &[i64], p| {
        let mut v: Vec<_> = residue_degrees(&poly(c), p).unwrap().iter().map(|pl| (pl.residue_degree, pl.ramification_index)).collect();
        v.sort();
        v
    };
    assert_eq!(shape(&[3, -4, -1, 1], 3), vec![(1, 1), (2, 1)]);
    assert_eq!(shape(&[37, -26, -9, 1], 37), vec![(1, 1), (2, 1)]);
    assert_eq!(shape(&[-5, 1], 7), vec![(1, 1)]);
}

#[test]
fn root_and_teichmuller_examples() {
    let u = PadicScalar::from_i64(6, 5, 2).unwrap();
    assert_eq!(padic_dth_root(&u, 2).unwrap().to_integer().unwrap(), BigInt::from(16));
    let one = PadicScalar::one(7, 5);
    assert_eq!(padic_dth_root(&one, 12).unwrap().to_integer().unwrap(), BigInt::one());
    let u = PadicScalar::from_i64(4, 3, 6).unwrap();
    assert!(matches!(padic_dth_root(&u, 3), Err(PadicError::OutsideConvergenceDomain(_))));

    assert_eq!(teichmuller(2, 5, 2).unwrap().to_integer().unwrap(), BigInt::from(7));
    for p in [3u64, 5, 7, 11] {
        assert_eq!(teichmuller(p - 1, p, 6).unwrap().to_integer().unwrap(), BigInt::from(p.pow(6) - 1));
        assert_eq!(teichmuller(1, p, 6).unwrap().to_integer().unwrap(), BigInt::one());
    }
    assert!(teichmuller(5, 5, 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Slopes against the valuations of planted integer roots.
    #[test]
    fn newton_slopes_match_planted_roots(
        p in prop::sample::select(vec![3i64, 5, 7]),
        roots in prop::collection::btree_set((-200i64..200).prop_filter("nonzero", |r| *r != 0), 1..=4),
    ) {
        let roots: Vec<i64> = roots.into_iter().collect();
        let f = poly(&planted(&roots));
        let mut want: Vec<BigRational> = roots.iter().map(|&r| BigRational::from_integer(v_p(r, p).into())).collect();
        want.sort();
        prop_assert_eq!(slope_multiset(&f, p as u64), want);
    }

    /// Every planted root is found, each returned root satisfies f ≡ 0, and the degree-one
    /// places are exactly the Z_p roots.
    #[test]
    fn zp_roots_recover_planted_roots(
        p in prop::sample::select(vec![3u64, 5, 7]),
        roots in prop::collection::btree_set(-60i64..60, 1..=4),
        extra in prop::sample::select(vec![vec![1i64], vec![1, 0, 1], vec![2, 0, 1], vec![3, 1, 1]]),
    ) {
        let roots: Vec<i64> = roots.into_iter().collect();
        let mut c = planted(&roots);
        // an extra factor without rational roots
        let mut prod = vec![0i64; c.len() + extra.len() - 1];
        for (i, a) in c.iter().enumerate() {
            for (j, b) in extra.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        c = prod;
        let f = poly(&c);
        prop_assume!(f.is_squarefree());
        let n = 12;
        let found = zp_roots(&f, p, n).unwrap();
        let pn = BigInt::from(p).pow(n);
        for r in &roots {
            let target = PadicScalar::from_i64(*r, p, n).unwrap();
            prop_assert!(found.iter().any(|x| x.congruent(&target).unwrap()), "root {} missing", r);
        }
        for x in &found {
            let m = BigInt::from(p).pow(x.absolute_precision().min(n as i64) as u32);
            prop_assert!(f.eval_mod(&x.to_integer().unwrap(), &m).is_zero());
            prop_assert!(m <= pn);
        }
        let places = residue_degrees(&f, p).unwrap();
        prop_assert_eq!(places.iter().filter(|pl| pl.is_degree_one()).count(), found.len());
        let local: u32 = places.iter().map(|pl| pl.local_degree()).sum();
        prop_assert_eq!(local as usize, f.degree());
    }

    #[test]
    fn teichmuller_lifts(p in prop::sample::select(vec![3u64, 5, 7, 11, 13]), a in 1u64..1000, n in 1u32..10) {
        prop_assume!(a % p != 0);
        let w = teichmuller(a, p, n).unwrap();
        prop_assert_eq!(w.residue().unwrap(), a % p);
        prop_assert!(w.pow(p - 1).unwrap().congruent(&PadicScalar::one(p, n)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dth_roots_power_back(
        p in prop::sample::select(vec![3u64, 5, 7]),
        d in 1u64..30,
        t in 0i64..1_000_000,
    ) {
        let n = 8u32;
        let vd = { let mut x = d; let mut v = 0; while x % p == 0 { x /= p; v += 1; } v };
        // in-domain unit: 1 + p^(v_p(d)+1) t
        let u_int = BigInt::one() + BigInt::from(p).pow(vd + 1) * t;
        let u = PadicScalar::from_integer(&u_int, p, n).unwrap();
        let w = padic_dth_root(&u, d).unwrap();
        prop_assert_eq!(w.residue().unwrap(), 1);
        prop_assert!(w.pow(d).unwrap().congruent(&u).unwrap());
    }
}
