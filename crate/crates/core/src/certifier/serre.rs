use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Exponents (a, b) of the mod-p cyclotomic character on the semisimplified reduction,
/// in the reducible case, with the condition a ≢ b mod (p−1)/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerreExponents {
    pub a: u64,
    pub b: u64,
    pub condition_holds: bool,
}

/// Weight-k crystalline convention (0, (k−1) mod (p−1)), normalized so 0 ≤ a ≤ b ≤ p−2.
pub fn serre_red_exponents(k: u32, p: u64) -> SerreExponents {
    assert!(p >= 3, "p must be an odd prime");
    let b = (k as u64 + p - 2) % (p - 1);
    exponents_condition(0, b, p)
}

pub(crate) fn exponents_condition(a: u64, b: u64, p: u64) -> SerreExponents {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let half = (p - 1) / 2;
    SerreExponents { a, b, condition_holds: half == 0 || a % half != b % half }
}

/// n₀ ≥ 1, n₁ ≥ 1 and gcd(n₀, n₁) = 1.
pub fn check_serre_b(n0: u64, n1: u64) -> bool {
    n0 >= 1 && n1 >= 1 && n0.gcd(&n1) == 1
}

/// k₁ ≠ k₂ and k₁ ≠ −k₂.
pub fn hts_check(k1: i64, k2: i64) -> bool {
    k1 != k2 && k1 != -k2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents() {
        assert_eq!(serre_red_exponents(12, 5), SerreExponents { a: 0, b: 3, condition_holds: true });
        assert_eq!(serre_red_exponents(2, 5), SerreExponents { a: 0, b: 1, condition_holds: true });
        assert_eq!(serre_red_exponents(6, 5), SerreExponents { a: 0, b: 1, condition_holds: true });
        assert!(!exponents_condition(0, 2, 5).condition_holds);
        for k in 2..60 {
            for p in [3u64, 5, 7, 11, 13] {
                let e = serre_red_exponents(k, p);
                assert!(e.a <= e.b && e.b <= p - 2);
            }
        }
    }

    #[test]
    fn small_checks() {
        assert!(check_serre_b(1, 1));
        assert!(!check_serre_b(2, 2));
        assert!(check_serre_b(2, 3));
        assert!(!check_serre_b(0, 1));
        assert!(hts_check(0, 11));
        assert!(!hts_check(1, -1));
        assert!(!hts_check(0, 0));
    }
}
