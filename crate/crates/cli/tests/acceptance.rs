//! Acceptance suite: one PASS/FAIL line per criterion, with wall-clock time.
//!
//! Criteria whose literal statement cannot hold are still run faithfully. They print FAIL,
//! and the suite checks that the failure is exactly the analysed deviation, so that any
//! other change in behaviour is caught. The process exits non-zero on any unexpected
//! outcome.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use bogocert::certifier::{find_places, ApValuation, Certificate, PlaceClass, ScanReport, Verdict};
use bogocert::heights::{kummer_sequence, lambda_bound, log_mahler_measure, weil_height, AlgebraicNumber, Height};
use bogocert::herbrand::{
    compose_check, cyclotomic_filtration, cyclotomic_relative, verify_bound1, Bound1Verdict, LevelStatus, TowerData,
};
use bogocert::matgroup::*;
use bogocert::padic::IntPolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: usize = DEFAULT_ELEMENT_BUDGET;

struct Line {
    id: &'static str,
    pass: bool,
    /// False when the outcome differs from the pinned expectation.
    expected: bool,
    detail: String,
    limit: Duration,
    elapsed: Duration,
}

fn line(id: &'static str, pass: bool, detail: String) -> Line {
    Line { id, pass, expected: pass, detail, limit: Duration::MAX, elapsed: Duration::ZERO }
}

fn pinned_fail(id: &'static str, matches_analysis: bool, detail: String) -> Line {
    Line { id, pass: false, expected: matches_analysis, detail, limit: Duration::MAX, elapsed: Duration::ZERO }
}

fn timed(limit_secs: u64, f: impl FnOnce() -> Vec<Line>) -> Vec<Line> {
    let t = Instant::now();
    let mut lines = f();
    let elapsed = t.elapsed();
    for l in &mut lines {
        l.elapsed = elapsed;
        l.limit = Duration::from_secs(limit_secs);
        if elapsed > l.limit {
            l.detail += &format!("; exceeded the {limit_secs} s budget");
            if l.pass {
                l.pass = false;
                l.expected = false;
            }
        }
    }
    lines
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["bogocert"];
    argv.extend_from_slice(args);
    let code = bogocert_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn r(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------- criterion 1

fn criterion_1() -> Vec<Line> {
    let forms = bogocert_cli::fixtures::newforms().unwrap();
    let mut problems = Vec::new();
    let mut slowest = Duration::ZERO;
    for (label, p) in [("43.2.a.b", 17), ("53.2.a.b", 17), ("71.2.a.a", 3), ("71.2.a.a", 5), ("71.2.a.b", 3), ("71.2.a.b", 37)] {
        let t = Instant::now();
        let (code, json) = cli(&["--offline", "certify", "--label", label, "--p", &p.to_string(), "--no-store"]);
        slowest = slowest.max(t.elapsed());
        let cert: Certificate = serde_json::from_str(&json).unwrap();
        if code != 0 || cert.verdict != Verdict::BCertified {
            problems.push(format!("{label}@{p}: {}", cert.verdict.code()));
        }
        let places = find_places(forms.get(label).unwrap(), p, 20).unwrap();
        let one: Vec<_> = places.iter().filter(|pl| pl.residue_degree == 1).collect();
        let ok = if label == "43.2.a.b" {
            let vals: Vec<_> = one.iter().map(|pl| pl.ap_valuation).collect();
            places.len() == 2
                && vals.len() == 2
                && vals.contains(&Some(ApValuation::Exact(0)))
                && vals.contains(&Some(ApValuation::Exact(1)))
        } else {
            places.len() == 2
                && one.len() == 1
                && one[0].classification == PlaceClass::Supersingular
                && places.iter().any(|pl| pl.residue_degree == 2 && pl.ramification_index == 1)
        };
        if !ok {
            problems.push(format!("{label}@{p}: place structure"));
        }
    }
    if slowest > Duration::from_secs(1) {
        problems.push(format!("slowest call {slowest:?}"));
    }
    let detail = if problems.is_empty() {
        format!("6/6 B_CERTIFIED, place structure exact, slowest {:.0} ms", slowest.as_secs_f64() * 1e3)
    } else {
        problems.join("; ")
    };
    vec![line("1", problems.is_empty(), detail)]
}

// ---------------------------------------------------------------- criterion 2

const LEVEL_ONE: [&str; 6] = ["1.12.a.a", "1.16.a.a", "1.18.a.a", "1.20.a.a", "1.22.a.a", "1.26.a.a"];
const LEVEL_SIX: [&str; 8] = ["6.12.a.b", "6.12.a.c", "6.16.a.a", "6.16.a.b", "6.18.a.a", "6.18.a.c", "6.20.a.b", "6.20.a.c"];
const LEVEL_EIGHT: [&str; 8] = ["8.8.a.b", "8.10.a.b", "8.12.a.a", "8.14.a.a", "8.16.a.b", "8.16.a.c", "8.18.a.a", "8.20.a.a"];
/// Listed as rational-coefficient forms, but their coefficient fields are quadratic.
const QUADRATIC_IN_LIST: [&str; 3] = ["8.16.a.c", "8.18.a.a", "8.20.a.a"];

fn certified_pairs(report: &ScanReport) -> BTreeSet<(String, u64)> {
    report.certified_pairs().into_iter().collect()
}

fn scan(max_degree: &str) -> BTreeSet<(String, u64)> {
    let table = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/regularity.json");
    let args = [
        "--offline", "scan", "--levels", "1,6,8", "--primes", "5,7", "--regularity-table", table, "--max-field-degree", max_degree,
        "--json",
    ];
    let (code, json) = cli(&args);
    assert_eq!(code, 0);
    certified_pairs(&serde_json::from_str(&json).unwrap())
}

fn criterion_2() -> Vec<Line> {
    let forms = bogocert_cli::fixtures::newforms().unwrap();
    let mut expected: BTreeSet<(String, u64)> = BTreeSet::new();
    for l in LEVEL_ONE {
        expected.insert((l.into(), 5));
        expected.insert((l.into(), 7));
    }
    for l in LEVEL_SIX.iter().chain(&LEVEL_EIGHT) {
        expected.insert((l.to_string(), 5));
    }
    let got = scan("1");
    let missing: Vec<_> = expected.difference(&got).map(|(l, p)| format!("{l}@{p}")).collect();
    let extra: Vec<_> = got.difference(&expected).map(|(l, p)| format!("{l}@{p}")).collect();
    if missing.is_empty() && extra.is_empty() {
        return vec![line("2", true, format!("{} certificates, exactly the listed labels", got.len()))];
    }
    let degrees: Vec<String> = QUADRATIC_IN_LIST
        .iter()
        .map(|l| format!("{l} has degree {}", forms.get(l).map_or(0, |f| f.field_poly.degree())))
        .collect();
    let pinned: Vec<String> = QUADRATIC_IN_LIST.iter().map(|l| format!("{l}@5")).collect();
    let all_quadratic = QUADRATIC_IN_LIST.iter().all(|l| forms.get(l).is_some_and(|f| f.field_poly.degree() == 2));
    // admitting quadratic fields certifies 8.18.a.a; 5 is inert in the other two fields
    let wide = scan("2");
    let wide_listed: Vec<_> =
        QUADRATIC_IN_LIST.iter().filter(|l| wide.contains(&(l.to_string(), 5))).map(|l| l.to_string()).collect();
    let wide_extra: Vec<_> = wide.difference(&expected).map(|(l, p)| format!("{l}@{p}")).collect();
    let detail = format!(
        "{} of {} listed pairs certified; missing {} ({}); extra {:?}; with --max-field-degree 2 the listed quadratic forms certified are {:?}, extra {:?}",
        expected.len() - missing.len(),
        expected.len(),
        missing.join(" "),
        degrees.join(", "),
        extra,
        wide_listed,
        wide_extra,
    );
    vec![pinned_fail("2", missing == pinned && extra.is_empty() && all_quadratic, detail)]
}

// ---------------------------------------------------------------- criteria 3, 4, 7

fn group(lv: Level, gens: Vec<MatModPN>) -> FiniteLevelGroup {
    FiniteLevelGroup::new(lv, gens).unwrap().enumerate(CAP).unwrap()
}

fn sl2_gens(lv: &Level) -> Vec<MatModPN> {
    vec![lv.matrix(&[1, 1, 0, 1]).unwrap(), lv.matrix(&[1, 0, 1, 1]).unwrap()]
}

fn full_congruence(lv: &Level, a: u32) -> Vec<MatModPN> {
    vec![lv.elementary(0, 1, a), lv.elementary(1, 0, a), lv.elementary(0, 0, a), lv.elementary(1, 1, a)]
}

fn special_congruence(lv: &Level, a: u32) -> Vec<MatModPN> {
    let t = 1 + lv.pk(a);
    let tinv = inverse_mod_u64(t, lv.modulus()).unwrap();
    vec![lv.elementary(0, 1, a), lv.elementary(1, 0, a), lv.matrix(&[t as i64, 0, 0, tinv as i64]).unwrap()]
}

/// Γ_2(p^a) mod p^n by filtering SL_2(Z/p^n), independently of any generating set.
fn kernel_by_filter(sl: &FiniteLevelGroup, a: u32) -> FiniteLevelGroup {
    sl.subgroup_where(|x| x.is_congruent_to_one(a)).unwrap()
}

fn criterion_3() -> Vec<Line> {
    let lv = Level::new(3, 3, 2).unwrap();
    let sl = group(lv, sl2_gens(&lv));
    let g = kernel_by_filter(&sl, 1);
    let d = commutator_subgroup(&g).unwrap();
    let target = kernel_by_filter(&sl, 2);
    let same = d.same_elements(&target).unwrap();
    let by_gens = d.same_elements(&group(lv, special_congruence(&lv, 2))).unwrap();
    let detail =
        format!("|Γ_2(3)| = {}, |[Γ_2(3), Γ_2(3)]| = {}, |Γ_2(9)| = {} mod 27", g.order().unwrap(), d.order().unwrap(), target.order().unwrap());
    vec![line("3", same && by_gens, detail)]
}

fn criterion_4() -> Vec<Line> {
    let lv = Level::new(3, 4, 2).unwrap();
    let gt = group(lv, full_congruence(&lv, 1));
    let g = group(lv, special_congruence(&lv, 1));
    let mut ok = gt.order().unwrap() == 3usize.pow(12) && g.order().unwrap() == 3usize.pow(9);
    let mut orders = Vec::new();
    for k in 1..lv.n {
        let qt = gt.kernel_count(k).unwrap() / gt.kernel_count(k + 1).unwrap();
        let q = g.kernel_count(k).unwrap() / g.kernel_count(k + 1).unwrap();
        orders.push(format!("k={k}: {qt}/{q}"));
        ok &= qt == 81 && q == 27;
        ok &= graded_piece(&gt, k).unwrap().same_space(&LieShadow::full(3, 2, k));
        ok &= graded_piece(&g, k).unwrap().same_space(&LieShadow::trace_zero(3, 2, k));
    }
    vec![line("4", ok, format!("mod 81, graded orders {} with shadows gl_2 / sl_2", orders.join(", ")))]
}

fn criterion_7() -> Vec<Line> {
    let lv = Level::new(3, 3, 2).unwrap();
    let mut fails = Vec::new();
    let sl = group(lv, sl2_gens(&lv));
    let mut gl_gens = sl2_gens(&lv);
    gl_gens.push(lv.matrix(&[2, 0, 0, 1]).unwrap());
    let gl = group(lv, gl_gens);
    let torus = group(
        lv,
        vec![lv.matrix(&[2, 0, 0, 1]).unwrap(), lv.matrix(&[1, 0, 0, 2]).unwrap(), lv.matrix(&[0, 1, 1, 0]).unwrap()],
    );
    let borel = group(
        lv,
        vec![lv.matrix(&[2, 0, 0, 1]).unwrap(), lv.matrix(&[1, 0, 0, 2]).unwrap(), lv.matrix(&[1, 1, 0, 1]).unwrap()],
    );
    for (name, g, want) in [
        ("SL2", &sl, Classification::ContainsSl2),
        ("GL2", &gl, Classification::ContainsSl2),
        ("torus normalizer", &torus, Classification::TorusNormalizer),
        ("Borel", &borel, Classification::Borel),
    ] {
        let got = classify_2dim(g).unwrap().verdict;
        if got != want {
            fails.push(format!("{name}: {}", got.as_str()));
        }
    }
    let mut ext_gens = sl2_gens(&lv);
    ext_gens.push(lv.matrix(&[4, 0, 0, 1]).unwrap());
    if !matches!(slgl_check(&group(lv, ext_gens)).unwrap(), SlGlVerdict::OpenCertified { .. }) {
        fails.push("slgl on SL2 + diag(4,1)".into());
    }
    if slgl_check(&sl).unwrap() != SlGlVerdict::FailsDet {
        fails.push("slgl on SL2".into());
    }
    if riehm_probe(&sl, &[lv.scalar(-1)]).unwrap() != RiehmVerdict::Scalar {
        fails.push("riehm on ±I".into());
    }
    let nc = normal_closure(&[lv.elementary(0, 1, 1)], &sl).unwrap();
    if !matches!(riehm_probe(&sl, nc.generators()).unwrap(), RiehmVerdict::OpenInG { .. }) {
        fails.push("riehm on the normal closure of 1+3E12".into());
    }
    let detail = if fails.is_empty() { "4 classifications, 2 slgl, 2 riehm verdicts as expected".into() } else { fails.join("; ") };
    vec![line("7", fails.is_empty(), detail)]
}

// ---------------------------------------------------------------- criterion 5

/// Lower ramification data of Gal(Q_p(μ_{p^n})/Q_p) straight from the Galois action:
/// σ_a moves ζ to ζ^a, and i(σ_a) = v_π(ζ^{a−1} − 1) = p^{v_p(a−1)} for a ≠ 1.
/// Returns the i-values of the non-identity elements.
fn oracle_i_values(p: u64, n: u32) -> Vec<u64> {
    let q = p.pow(n);
    (2..q)
        .filter(|a| a % p != 0)
        .map(|a| {
            let mut k = 0;
            let mut m = a - 1;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            p.pow(k)
        })
        .collect()
}

/// G_t = {σ : i(σ) ≥ t + 1}, so the jumps are exactly the values i(σ) − 1.
fn oracle_lower_jumps(i_values: &[u64]) -> Vec<u64> {
    let set: BTreeSet<u64> = i_values.iter().map(|i| i - 1).collect();
    set.into_iter().collect()
}

/// Pieces (lo, hi, |G_t|/|G_0|) of the step function on [0, ∞); hi = None for the tail.
fn oracle_steps(i_values: &[u64]) -> Vec<(BigRational, Option<BigRational>, BigRational)> {
    let g0 = i_values.len() as u64 + 1;
    // |G_j| = #{σ : i(σ) ≥ j + 1}, constant on (previous jump, j]
    let size = |j: u64| BigRational::new((1 + i_values.iter().filter(|&&i| i > j).count() as u64).into(), g0.into());
    let jumps = oracle_lower_jumps(i_values);
    let mut pieces = vec![(BigRational::zero(), Some(r(jumps[0])), BigRational::one())];
    for w in jumps.windows(2) {
        pieces.push((r(w[0]), Some(r(w[1])), size(w[1])));
    }
    pieces.push((r(*jumps.last().unwrap()), None, BigRational::new(1.into(), g0.into())));
    pieces
}

/// φ(u) = ∫_0^u |G_t|/|G_0| dt for u ≥ 0.
fn oracle_phi(pieces: &[(BigRational, Option<BigRational>, BigRational)], u: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for (lo, hi, height) in pieces {
        if u <= lo {
            break;
        }
        let end = hi.as_ref().map_or(u.clone(), |h| h.min(u).clone());
        acc += (end - lo) * height;
    }
    acc
}

fn criterion_5() -> Vec<Line> {
    let mut rng = ChaCha8Rng::seed_from_u64(2005);
    let mut fails = Vec::new();
    let mut literal_holds = true;
    let mut min_gap = None::<BigRational>;
    for p in [3u64, 5] {
        for n in 1..=5u32 {
            let g = cyclotomic_filtration(p, n).unwrap();
            let i_values = oracle_i_values(p, n);
            let oracle = oracle_lower_jumps(&i_values);
            let pieces = oracle_steps(&i_values);
            if g.lower_jumps() != oracle || oracle != (0..n).map(|k| p.pow(k) - 1).collect::<Vec<_>>() {
                fails.push(format!("lower jumps p={p} n={n}"));
            }
            if g.upper_jumps() != (0..n as u64).map(r).collect::<Vec<_>>() {
                fails.push(format!("upper jumps p={p} n={n}"));
            }
            for _ in 0..100 {
                let u = BigRational::new(rng.gen_range(0..(p.pow(n) as i64 + 3) * 64).into(), rng.gen_range(1..64i64).into());
                let v = g.phi(&u).unwrap();
                if v != oracle_phi(&pieces, &u) || g.psi(&v).unwrap() != u {
                    fails.push(format!("phi/psi p={p} n={n} u={u}"));
                    break;
                }
            }
            if n >= 2 {
                let sub = cyclotomic_relative(p, n, n - 1).unwrap();
                let quot = cyclotomic_filtration(p, n - 1).unwrap();
                if !compose_check(&sub, &quot, &g).unwrap() {
                    fails.push(format!("composition p={p} {}<{n}", n - 1));
                }
            }
        }
        let top = BigRational::new(1.into(), (p as i64 - 1).into());
        for j0 in [0u64, 1] {
            let tower = TowerData::cyclotomic(p, (j0 as u32 + 1)..=5, BigRational::one()).unwrap();
            let rep = verify_bound1(&tower, j0).unwrap();
            let c = &rep.bound.c_bound;
            if rep.verdict != Bound1Verdict::Pass || top < *c {
                fails.push(format!("bound1 p={p} j0={j0}"));
            }
            for l in rep.levels.iter().filter(|l| l.status == LevelStatus::Pass) {
                if l.ratio < *c {
                    fails.push(format!("ratio below C at p={p} j0={j0} n={}", l.n));
                }
                literal_holds &= l.ratio >= top;
                let gap = &top - &l.ratio;
                if min_gap.as_ref().is_none_or(|m| gap < *m) {
                    min_gap = Some(gap);
                }
            }
        }
    }
    let main = if fails.is_empty() {
        "p∈{3,5}, n≤5: jumps, 1000 ψ∘φ round trips, 8 compositions, bound1 Pass with 1/(p−1) ≥ C".to_string()
    } else {
        fails.join("; ")
    };
    let gap = min_gap.map_or("none".into(), |g| g.to_string());
    let literal = format!(
        "literal clause \"ratio ≥ 1/(p−1)\": ratios (p^(n−1)−1)/((p−1)p^(n−1)) approach 1/(p−1) from below (smallest gap {gap})"
    );
    vec![line("5", fails.is_empty(), main), pinned_fail("5*", !literal_holds, literal)]
}

// ---------------------------------------------------------------- criterion 6

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Φ_m by repeated exact division: x^m − 1 divided by Φ_d for every proper divisor d.
fn cyclotomic_poly(m: usize) -> Vec<i64> {
    let mut f = vec![0i64; m + 1];
    f[0] = -1;
    f[m] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let g = cyclotomic_poly(d);
        let mut rem = f.clone();
        let dg = g.len() - 1;
        let mut q = vec![0; f.len() - dg];
        for s in (0..q.len()).rev() {
            let c = rem[s + dg];
            for (j, y) in g.iter().enumerate() {
                rem[s + j] -= c * y;
            }
            q[s] = c;
        }
        assert!(rem.iter().all(|&x| x == 0));
        f = q;
    }
    debug_assert!(poly_mul(&f, &[1]) == f);
    f
}

fn criterion_6() -> Vec<Line> {
    let tol = 1e-9;
    let golden = AlgebraicNumber::new(&"x^2-x-1".parse::<IntPolynomial>().unwrap()).unwrap();
    let h = weil_height(&golden, tol).unwrap();
    let m = log_mahler_measure(&golden, tol).unwrap();
    let in_window = |h: &Height| matches!(h, Height::Interval { lo, hi } if *lo >= 0.481211 && *hi <= 0.481213);
    // log((1+√5)/2), halved by the degree
    let phi_oracle = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    let h_is_normalized = (h.midpoint() - phi_oracle / 2.0).abs() < 1e-9 && in_window(&m);

    let mut cyclo_ok = 0;
    for k in 1..=20 {
        let f = IntPolynomial::from_i64s(&cyclotomic_poly(k)).unwrap();
        if matches!(weil_height(&AlgebraicNumber::new(&f).unwrap(), tol), Ok(Height::Zero)) {
            cyclo_ok += 1;
        }
    }
    let kummer = kummer_sequence(2, 3, 4).unwrap();
    let kummer_ok = kummer.len() == 4
        && kummer.iter().enumerate().all(|(i, t)| t.coefficient == BigRational::new(1.into(), BigInt::from(3u64.pow(i as u32 + 1))));
    let lb = lambda_bound(3, 1).unwrap();
    let lb_oracle = 1.5f64.ln() / 6.0;
    let lb_ok = lb.value >= 0.067577 && lb.value <= 0.067579 && (lb.value - lb_oracle).abs() < 1e-12;
    // negative control: the Kummer tower drops below every fixed bound
    let below = kummer_sequence(2, 3, 8).unwrap().iter().any(|t| t.value < lb.value);

    let others = cyclo_ok == 20 && kummer_ok && lb_ok && below;
    let detail = format!(
        "weil_height(x^2-x-1) = {:.6} ∉ [0.481211, 0.481213]; the window holds log M = {:.6} = 2h; \
         cyclotomic exact zero {cyclo_ok}/20; kummer_sequence(2,3,4) exact {kummer_ok}; lambda_bound(3,1) = {:.7} {}; \
         Kummer negative control below bound {below}",
        h.midpoint(),
        m.midpoint(),
        lb.value,
        if lb_ok { "in window" } else { "outside window" },
    );
    if in_window(&h) && others {
        return vec![line("6", true, detail)];
    }
    vec![pinned_fail("6", !in_window(&h) && h_is_normalized && others, detail)]
}

// ---------------------------------------------------------------- criterion 8

/// Random subgroup of GL_2(Z/27): one to three generators from structured families, so that
/// the groups range from cyclic to all of GL_2.
fn random_group(rng: &mut ChaCha8Rng, lv: &Level) -> FiniteLevelGroup {
    let q = lv.modulus() as i64;
    let unit = |rng: &mut ChaCha8Rng| loop {
        let u = rng.gen_range(1..q);
        if u % 3 != 0 {
            return u;
        }
    };
    let mut gens = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let e = match rng.gen_range(0..6) {
            0 => [unit(rng), 0, 0, unit(rng)],
            1 => [unit(rng), rng.gen_range(0..q), 0, unit(rng)],
            2 => [0, unit(rng), unit(rng), 0],
            3 => {
                let s = unit(rng);
                [s, 0, 0, s]
            }
            4 => [1 + 3 * rng.gen_range(0..9), 3 * rng.gen_range(0..9), 3 * rng.gen_range(0..9), 1 + 3 * rng.gen_range(0..9)],
            _ => loop {
                let m = [rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q)];
                if (m[0] * m[3] - m[1] * m[2]).rem_euclid(3) != 0 {
                    break m;
                }
            },
        };
        gens.push(lv.matrix(&e).unwrap());
    }
    // χ = det^e is a character on any subgroup
    let e = rng.gen_range(1..=6u32);
    let q = lv.modulus();
    let chi: Vec<u64> = gens.iter().map(|g| (0..e).fold(1, |acc, _| acc * g.det() % q)).collect();
    FiniteLevelGroup::new(*lv, gens).unwrap().with_character(chi).unwrap()
}

fn criterion_8() -> Vec<Line> {
    let lv = Level::new(3, 3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let (mut ce_cert, mut ce_lost, mut cls_cert, mut cls_lost, mut refined, mut shadow_inconclusive) = (0, 0, 0, 0, 0, 0);
    // only verdicts without a level caveat are certificates
    let certified = |r: &ClassifyReport| !r.caveats.iter().any(|c| matches!(c, Caveat::InconclusiveAtLevel { .. }));
    let mut flips = Vec::new();
    for i in 0..100 {
        let g3 = random_group(&mut rng, &lv).enumerate(CAP).unwrap();
        let g2 = g3.reduce(2).unwrap().enumerate(CAP).unwrap();
        let (c2, c3) = (ce_check(&g2).unwrap(), ce_check(&g3).unwrap());
        if c2.is_certified() {
            ce_cert += 1;
            if !c3.is_certified() {
                ce_lost += 1;
                flips.push(format!("#{i} ce"));
            }
        }
        let (k2, k3) = (classify_2dim(&g2).unwrap(), classify_2dim(&g3).unwrap());
        if k2.verdict == Classification::FiniteShadow {
            shadow_inconclusive += 1;
        }
        if certified(&k2) {
            cls_cert += 1;
            if !certified(&k3) || k3.verdict != k2.verdict {
                cls_lost += 1;
                flips.push(format!("#{i} classify {} -> {}", k2.verdict.as_str(), k3.verdict.as_str()));
            }
        } else if k2.verdict != k3.verdict {
            refined += 1;
        }
    }
    let detail = format!(
        "100 groups mod 27 vs mod 9: ce certified at n=2 in {ce_cert}, lost at n=3 in {ce_lost}; \
         classification certified at n=2 in {cls_cert}, lost at n=3 in {cls_lost}; \
         finite_shadow at n=2 in {shadow_inconclusive}; caveated verdicts refined at n=3 in {refined}{}",
        if flips.is_empty() { String::new() } else { format!(" ({})", flips.join(", ")) }
    );
    vec![line("8", flips.is_empty(), detail)]
}

type Criterion = fn() -> Vec<Line>;

fn main() {
    let criteria: Vec<(u64, Criterion)> = vec![
        (10, criterion_1),
        (10, criterion_2),
        (60, criterion_3),
        (10, criterion_4),
        (1, criterion_5),
        (5, criterion_6),
        (120, criterion_7),
        (300, criterion_8),
    ];
    let mut unexpected = Vec::new();
    for (limit, f) in criteria {
        for l in timed(limit, f) {
            let status = if l.pass { "PASS" } else { "FAIL" };
            let note = if l.pass || !l.expected { "" } else { " [analysed deviation]" };
            println!("criterion {:<3} {status} ({:.2} s){note}: {}", l.id, l.elapsed.as_secs_f64(), l.detail);
            if !l.expected {
                unexpected.push(l.id);
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
