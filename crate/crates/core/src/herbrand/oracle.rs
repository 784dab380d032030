//! Lower filtrations of Q_p(μ_{p^n})/Q_p and of its subextensions, computed from the
//! action on a uniformizer: i(σ_a) = v_L(ζ^a − ζ) = p^{v_p(a−1)} for a ≢ 1 mod p^n, and
//! σ_a ∈ G[i] iff i(σ_a) ≥ i + 1.

use std::collections::BTreeMap;

use super::filtration::{Jump, LowerFiltration};
use super::HerbrandError;
use crate::padic::check_prime;

fn v_p(mut x: u64, p: u64) -> u32 {
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Builds the filtration of the group {σ_a : a ≡ 1 mod p^m} ⊆ Gal(Q_p(μ_{p^n})/Q_p)
/// (m = 0 is the whole group) by counting i(σ_a) over all residues a.
fn filtration_from_counts(p: u64, n: u32, m: u32) -> LowerFiltration {
    let q = p.pow(n);
    let pm = p.pow(m);
    // multiset of i(σ) over non-identity elements; None stands for the identity
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut order = 0;
    for a in 1..q {
        if a % p == 0 || !(a + q - 1).is_multiple_of(pm) {
            continue;
        }
        order += 1;
        if a == 1 {
            continue;
        }
        let i = p.pow(v_p(a - 1, p));
        *counts.entry(i).or_insert(0) += 1;
    }
    // |G[i]| = 1 + #{σ ≠ 1 : i(σ) ≥ i + 1}; it drops right after i = t − 1 for each value t
    let mut jumps = Vec::new();
    let mut remaining = order;
    for (&t, &c) in &counts {
        remaining -= c;
        jumps.push(Jump { r: t - 1, order_after: remaining });
    }
    LowerFiltration::new(order, jumps).expect("oracle filtration is valid")
}

/// Lower filtration of Gal(Q_p(μ_{p^n})/Q_p).
pub fn cyclotomic_filtration(p: u64, n: u32) -> Result<LowerFiltration, HerbrandError> {
    check_prime(p)?;
    if n == 0 {
        return Ok(LowerFiltration::unramified());
    }
    Ok(filtration_from_counts(p, n, 0))
}

/// Lower filtration of Gal(Q_p(μ_{p^n})/Q_p(μ_{p^m})), m ≤ n (same lower numbering as the
/// full group, restricted to the subgroup).
pub fn cyclotomic_relative(p: u64, n: u32, m: u32) -> Result<LowerFiltration, HerbrandError> {
    check_prime(p)?;
    if m > n {
        return Err(HerbrandError::InvalidFiltration(format!("subfield level {m} above {n}")));
    }
    if n == 0 {
        return Ok(LowerFiltration::unramified());
    }
    Ok(filtration_from_counts(p, n, m))
}
