use bogocert::herbrand::{
    compose_check, cyclotomic_filtration, cyclotomic_relative, quotient_filtration, verify_bound1, Bound1Verdict,
    LevelStatus, TowerData,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn r(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// |G_t| for Gal(Q_p(μ_{p^n})/Q_p) in closed form: (p−1)p^{n−1} up to t = 0, then p^{n−k}
/// on (p^{k−1} − 1, p^k − 1].
fn closed_order(p: u64, n: u32, t: &BigRational) -> u64 {
    if *t <= BigRational::zero() {
        return (p - 1) * p.pow(n - 1);
    }
    (1..=n).find(|&k| *t <= r(p.pow(k) - 1)).map_or(1, |k| p.pow(n - k))
}

/// φ(u) = ∫_0^u |G_t| / |G_0| dt, exact, integrating piece by piece.
fn closed_phi(p: u64, n: u32, u: &BigRational) -> BigRational {
    let g0 = r(closed_order(p, n, &BigRational::zero()));
    let mut breaks: Vec<BigRational> = (0..=n).map(|k| r(p.pow(k) - 1)).collect();
    breaks.retain(|b| b < u);
    breaks.push(u.clone());
    let mut acc = BigRational::zero();
    for w in breaks.windows(2) {
        let mid = (&w[0] + &w[1]) / r(2);
        acc += (&w[1] - &w[0]) * r(closed_order(p, n, &mid)) / &g0;
    }
    acc
}

fn random_rationals(seed: u64, count: usize, max: i64) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| q(rng.gen_range(0..max * 97), rng.gen_range(1..97))).collect()
}

#[test]
fn cyclotomic_jumps_match_closed_forms() {
    for p in [3u64, 5] {
        for n in 1..=5u32 {
            let g = cyclotomic_filtration(p, n).unwrap();
            let lower: Vec<u64> = (0..n).map(|k| p.pow(k) - 1).collect();
            assert_eq!(g.lower_jumps(), lower, "p={p} n={n}");
            let upper: Vec<BigRational> = (0..n as u64).map(r).collect();
            assert_eq!(g.upper_jumps(), upper, "p={p} n={n}");
            assert_eq!(g.order(), (p - 1) * p.pow(n - 1));
        }
    }
}

#[test]
fn phi_matches_integral_and_psi_inverts() {
    for p in [3u64, 5] {
        for n in 1..=5u32 {
            let g = cyclotomic_filtration(p, n).unwrap();
            let max = p.pow(n) as i64 + 3;
            for u in random_rationals(p * 100 + n as u64, 100, max) {
                let v = g.phi(&u).unwrap();
                assert_eq!(v, closed_phi(p, n, &u), "p={p} n={n} u={u}");
                assert_eq!(g.psi(&v).unwrap(), u);
            }
        }
    }
}

#[test]
fn composition_on_adjacent_subtowers() {
    for p in [3u64, 5] {
        for n in 2..=5u32 {
            {
                let m = n - 1;
                let whole = cyclotomic_filtration(p, n).unwrap();
                let sub = cyclotomic_relative(p, n, m).unwrap();
                let quot = cyclotomic_filtration(p, m).unwrap();
                assert!(compose_check(&sub, &quot, &whole).unwrap(), "p={p} {m}<{n}");
                assert_eq!(quotient_filtration(&whole, &sub).unwrap(), quot);
            }
        }
    }
}

#[test]
fn moved_jump_breaks_composition() {
    let whole = cyclotomic_filtration(3, 3).unwrap();
    let sub = cyclotomic_relative(3, 3, 2).unwrap();
    let quot = cyclotomic_filtration(3, 2).unwrap();
    let bad = quot.with_jump_moved(1, 3).unwrap();
    assert!(!compose_check(&sub, &bad, &whole).unwrap());
}

#[test]
fn bound1_on_cyclotomic_towers() {
    for p in [3u64, 5] {
        for j0 in [0u64, 1] {
            let t = TowerData::cyclotomic(p, 1..=5, BigRational::one()).unwrap();
            let t = TowerData { levels: t.levels.into_iter().filter(|l| l.n as u64 > j0).collect(), ..t };
            let rep = verify_bound1(&t, j0).unwrap();
            assert_eq!(rep.verdict, Bound1Verdict::Pass, "p={p} j0={j0}");
            let c = rep.bound.c_bound.clone();
            assert!(q(1, p as i64 - 1) >= c);
            for l in rep.levels.iter().filter(|l| l.status == LevelStatus::Pass) {
                assert!(l.ratio >= c);
                // the ratio approaches 1/(p−1) from below and never reaches it
                assert!(l.ratio < q(1, p as i64 - 1));
            }
        }
    }
}
