use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::filtration::{rat, LowerFiltration};
use super::oracle::cyclotomic_filtration;
use super::HerbrandError;

pub const TOWER_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerLevel {
    pub n: u32,
    pub filtration: LowerFiltration,
    /// [G : G_n], if known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_index: Option<u64>,
}

/// Ramification data of the finite layers Q_n = G/G_n of a p-adic Lie tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerData {
    pub schema_version: u32,
    pub p: u64,
    /// Ramification index of the base field over Q_p.
    pub e: u64,
    /// Residue degree of the base field.
    pub f: u64,
    /// Exponent A with [G_n : G_{n+1}] = p^A in the stable range.
    #[serde(rename = "A")]
    pub a: u64,
    /// Sen constant, supplied by the caller.
    #[serde(with = "crate::serde_num::rational")]
    pub c: BigRational,
    pub levels: Vec<TowerLevel>,
}

impl TowerData {
    pub fn validate(&self) -> Result<(), HerbrandError> {
        crate::padic::check_prime(self.p)?;
        if self.schema_version != TOWER_SCHEMA_VERSION {
            return Err(HerbrandError::InvalidTower(format!("unsupported schema_version {}", self.schema_version)));
        }
        if self.e == 0 || self.f == 0 || self.a == 0 || self.c.is_negative() {
            return Err(HerbrandError::InvalidTower("e, f, A must be positive and c ≥ 0".into()));
        }
        for w in self.levels.windows(2) {
            if w[1].n <= w[0].n {
                return Err(HerbrandError::InvalidTower("levels must be listed by increasing n".into()));
            }
            if w[1].filtration.order() < w[0].filtration.order() {
                return Err(HerbrandError::InvalidTower(format!("e_n decreases at n = {}", w[1].n)));
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self, HerbrandError> {
        let t: TowerData = serde_json::from_str(s).map_err(|e| HerbrandError::InvalidTower(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn level(&self, n: u32) -> Option<&TowerLevel> {
        self.levels.iter().find(|l| l.n == n)
    }

    /// The cyclotomic tower Q_p(μ_{p^n}), n in `ns`, with the given Sen constant.
    pub fn cyclotomic(p: u64, ns: impl IntoIterator<Item = u32>, c: BigRational) -> Result<Self, HerbrandError> {
        let levels = ns
            .into_iter()
            .map(|n| {
                Ok(TowerLevel {
                    n,
                    filtration: cyclotomic_filtration(p, n)?,
                    lie_index: Some(if n == 0 { 1 } else { (p - 1) * p.pow(n - 1) }),
                })
            })
            .collect::<Result<_, HerbrandError>>()?;
        Ok(TowerData { schema_version: TOWER_SCHEMA_VERSION, p, e: 1, f: 1, a: 1, c, levels })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SenBound {
    pub j0: u64,
    pub k0: u64,
    /// C = e / p^{f A (k0 + 1 + ⌈2c/e⌉)}.
    #[serde(with = "crate::serde_num::rational")]
    pub c_bound: BigRational,
}

fn ceil_rat(x: &BigRational) -> u64 {
    x.ceil().to_integer().to_u64().expect("nonnegative")
}

/// k0 = min{k ≥ 1 : kA ≥ f(j0 + 1)} and the resulting lower bound C.
pub fn sen_bound(p: u64, e: u64, f: u64, a: u64, c: &BigRational, j0: u64) -> SenBound {
    let k0 = (f * (j0 + 1)).div_ceil(a).max(1);
    let extra = ceil_rat(&(c * rat(2) / rat(e)));
    let exponent = f * a * (k0 + 1 + extra);
    let denom = BigInt::from(p).pow(exponent as u32);
    SenBound { j0, k0, c_bound: BigRational::new(BigInt::from(e), denom) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelStatus {
    Pass,
    Fail,
    /// j0 > s(n) − 2: the estimate is only argued for j0 ≤ s(n) − 2.
    OutsideProofRange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRatio {
    pub n: u32,
    /// s(n), the number of lower jumps.
    pub jumps: usize,
    /// r_{s(n) − j0} (jumps indexed from 1).
    pub jump: u64,
    pub e_n: u64,
    #[serde(with = "crate::serde_num::rational")]
    pub ratio: BigRational,
    pub status: LevelStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound1Verdict {
    Pass,
    Fail,
    /// Only tame jumps: not a tower of positive dimension.
    OutOfModel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound1Report {
    pub bound: SenBound,
    pub levels: Vec<LevelRatio>,
    pub verdict: Bound1Verdict,
    /// min(ratio) − C over the levels in range.
    #[serde(with = "crate::serde_num::rational_opt")]
    pub margin: Option<BigRational>,
}

/// Checks r^n_{s(n) − j0} / e_n ≥ C on every level of the tower.
pub fn verify_bound1(tower: &TowerData, j0: u64) -> Result<Bound1Report, HerbrandError> {
    tower.validate()?;
    let bound = sen_bound(tower.p, tower.e, tower.f, tower.a, &tower.c, j0);
    if tower.levels.len() < 2 {
        return Err(HerbrandError::InvalidTower("need at least two levels".into()));
    }
    let mut levels = Vec::new();
    for lvl in &tower.levels {
        let s = lvl.filtration.jump_count();
        if (s as u64) <= j0 {
            return Err(HerbrandError::InsufficientJumps(lvl.n));
        }
        let idx = s - j0 as usize; // 1-based
        let jump = lvl.filtration.lower_jumps()[idx - 1];
        let e_n = lvl.filtration.order();
        let ratio = BigRational::new(BigInt::from(jump), BigInt::from(e_n));
        let status = if j0 + 2 > s as u64 {
            LevelStatus::OutsideProofRange
        } else if ratio >= bound.c_bound {
            LevelStatus::Pass
        } else {
            LevelStatus::Fail
        };
        levels.push(LevelRatio { n: lvl.n, jumps: s, jump, e_n, ratio, status });
    }
    let in_range: Vec<&LevelRatio> = levels.iter().filter(|l| l.status != LevelStatus::OutsideProofRange).collect();
    let margin = in_range.iter().map(|l| &l.ratio - &bound.c_bound).min();
    let verdict = if tower.levels.iter().all(|l| l.filtration.is_tame()) {
        Bound1Verdict::OutOfModel
    } else if !in_range.is_empty() && in_range.iter().all(|l| l.status == LevelStatus::Pass) {
        Bound1Verdict::Pass
    } else {
        Bound1Verdict::Fail
    };
    Ok(Bound1Report { bound, levels, verdict, margin })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexBound {
    pub n: u32,
    pub j0: u64,
    pub t_n: u64,
    pub e_n: u64,
    /// e_n / t_n, absent when t_n = 0.
    #[serde(with = "crate::serde_num::rational_opt")]
    pub ratio: Option<BigRational>,
}

/// t_n = r^n_{s(n) − j0} with j0 = A(1 + ⌈2c/e⌉), jumps indexed from 1.
pub fn indexbound_tn(tower: &TowerData, n: u32) -> Result<IndexBound, HerbrandError> {
    tower.validate()?;
    let lvl = tower.level(n).ok_or(HerbrandError::InvalidTower(format!("no level {n}")))?;
    let j0 = tower.a * (1 + ceil_rat(&(&tower.c * rat(2) / rat(tower.e))));
    let s = lvl.filtration.jump_count() as u64;
    if s <= j0 {
        return Err(HerbrandError::InsufficientJumps(n));
    }
    let t_n = lvl.filtration.lower_jumps()[(s - j0 - 1) as usize];
    let e_n = lvl.filtration.order();
    let ratio = (t_n > 0).then(|| BigRational::new(BigInt::from(e_n), BigInt::from(t_n)));
    Ok(IndexBound { n, j0, t_n, e_n, ratio })
}

/// Parses "a/b" or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational, HerbrandError> {
    crate::serde_num::parse_rational(s).ok_or_else(|| HerbrandError::Parse(s.trim().to_string()))
}

/// Exact rational rendered as "a" or "a/b".
pub fn fmt_rational(x: &BigRational) -> String {
    crate::serde_num::format_rational(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sen_bound_examples() {
        let b = sen_bound(3, 1, 1, 1, &q(1, 1), 0);
        assert_eq!((b.k0, b.c_bound.clone()), (1, q(1, 81)));
        assert_eq!(sen_bound(3, 1, 1, 1, &q(0, 1), 0).c_bound, q(1, 9));
        assert!(sen_bound(3, 1, 1, 1, &q(1, 1), 3).c_bound < b.c_bound);
    }

    #[test]
    fn cyclotomic_ratios() {
        let t = TowerData::cyclotomic(3, 2..=4, q(1, 1)).unwrap();
        let r = verify_bound1(&t, 0).unwrap();
        let ratios: Vec<_> = r.levels.iter().map(|l| l.ratio.clone()).collect();
        assert_eq!(ratios, vec![q(2, 6), q(8, 18), q(26, 54)]);
        assert_eq!(r.verdict, Bound1Verdict::Pass);
        assert!(matches!(verify_bound1(&t, 2), Err(HerbrandError::InsufficientJumps(2))));
    }

    #[test]
    fn tame_tower_is_out_of_model() {
        let t = TowerData::cyclotomic(3, [0, 1], q(1, 1)).unwrap();
        // level 0 has no jumps at all
        assert!(matches!(verify_bound1(&t, 0), Err(HerbrandError::InsufficientJumps(0))));
        let mut t = TowerData::cyclotomic(3, [1], q(1, 1)).unwrap();
        t.levels.push(t.levels[0].clone());
        t.levels[1].n = 2;
        let r = verify_bound1(&t, 0).unwrap();
        assert_eq!(r.verdict, Bound1Verdict::OutOfModel);
        assert_eq!(r.levels[0].ratio, q(0, 1));
    }

    #[test]
    fn index_bound() {
        let t = TowerData::cyclotomic(3, 1..=5, q(1, 1)).unwrap();
        let b = indexbound_tn(&t, 5).unwrap();
        assert_eq!((b.j0, b.t_n, b.e_n), (3, 2, 162));
        assert_eq!(b.ratio, Some(q(81, 1)));
        assert!(matches!(indexbound_tn(&t, 3), Err(HerbrandError::InsufficientJumps(3))));
        let t0 = TowerData::cyclotomic(3, 1..=5, q(0, 1)).unwrap();
        let b0 = indexbound_tn(&t0, 5).unwrap();
        assert_eq!((b0.j0, b0.t_n), (1, 26));
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("7/3").unwrap(), q(7, 3));
        assert_eq!(parse_rational("-2").unwrap(), q(-2, 1));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(fmt_rational(&q(6, 3)), "2");
    }
}
