use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::HerbrandError;

/// A drop of the lower filtration: G[r] ⊋ G[r + ε], with |G[r + ε]| = `order_after`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Jump {
    pub r: u64,
    pub order_after: u64,
}

/// Lower ramification filtration i ↦ h_i = |G[i]| of a finite Galois group, as a step
/// function. `order` is h_0 (the inertia order e).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFiltration", into = "RawFiltration")]
pub struct LowerFiltration {
    order: u64,
    jumps: Vec<Jump>,
}

#[derive(Serialize, Deserialize)]
struct RawFiltration {
    order: u64,
    jumps: Vec<Jump>,
}

impl TryFrom<RawFiltration> for LowerFiltration {
    type Error = HerbrandError;
    fn try_from(r: RawFiltration) -> Result<Self, Self::Error> {
        LowerFiltration::new(r.order, r.jumps)
    }
}

impl From<LowerFiltration> for RawFiltration {
    fn from(f: LowerFiltration) -> Self {
        RawFiltration { order: f.order, jumps: f.jumps }
    }
}

pub(crate) fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LowerFiltration {
    pub fn new(order: u64, jumps: Vec<Jump>) -> Result<Self, HerbrandError> {
        if order == 0 {
            return Err(HerbrandError::InvalidFiltration("order must be positive".into()));
        }
        let mut prev_order = order;
        let mut prev_r: Option<u64> = None;
        for j in &jumps {
            if prev_r.is_some_and(|r| j.r <= r) {
                return Err(HerbrandError::InvalidFiltration("jumps must be strictly increasing".into()));
            }
            if j.order_after == 0 || j.order_after >= prev_order || !prev_order.is_multiple_of(j.order_after) {
                return Err(HerbrandError::InvalidFiltration(format!(
                    "order {} after jump {} must be a proper divisor of {prev_order}",
                    j.order_after, j.r
                )));
            }
            prev_order = j.order_after;
            prev_r = Some(j.r);
        }
        Ok(LowerFiltration { order, jumps })
    }

    pub fn unramified() -> Self {
        LowerFiltration { order: 1, jumps: Vec::new() }
    }

    /// h_0 = e.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    /// Lower jumps r_1 < … < r_s.
    pub fn lower_jumps(&self) -> Vec<u64> {
        self.jumps.iter().map(|j| j.r).collect()
    }

    /// s, the number of jumps.
    pub fn jump_count(&self) -> usize {
        self.jumps.len()
    }

    /// |G[u]| for real u ≥ 0 (G[u] = G[⌈u⌉]).
    pub fn order_at(&self, u: &BigRational) -> u64 {
        let mut h = self.order;
        for j in &self.jumps {
            if *u > rat(j.r) {
                h = j.order_after;
            } else {
                break;
            }
        }
        h
    }

    /// Order remaining after every jump.
    pub fn final_order(&self) -> u64 {
        self.jumps.last().map_or(self.order, |j| j.order_after)
    }

    /// Whether all jumps are at 0 (tamely ramified or unramified).
    pub fn is_tame(&self) -> bool {
        self.jumps.iter().all(|j| j.r == 0)
    }

    // Breakpoints with the slope h/h0 on the interval ending at each one; the last slope
    // continues to infinity.
    fn pieces(&self) -> Vec<(BigRational, BigRational)> {
        let h0 = rat(self.order);
        let mut out = Vec::new();
        let mut h = self.order;
        for j in &self.jumps {
            out.push((rat(j.r), rat(h) / &h0));
            h = j.order_after;
        }
        out.push((BigRational::zero(), rat(h) / &h0)); // sentinel slope after the last jump
        out
    }

    /// Herbrand φ(u) = ∫_0^u |G[t]|/|G[0]| dt.
    pub fn phi(&self, u: &BigRational) -> Result<BigRational, HerbrandError> {
        if u.is_negative() {
            return Err(HerbrandError::NegativeArgument);
        }
        let pieces = self.pieces();
        let (ends, last) = pieces.split_at(pieces.len() - 1);
        let mut acc = BigRational::zero();
        let mut start = BigRational::zero();
        for (end, slope) in ends {
            if u <= end {
                return Ok(acc + (u - &start) * slope);
            }
            acc += (end - &start) * slope;
            start = end.clone();
        }
        Ok(acc + (u - &start) * &last[0].1)
    }

    /// ψ = φ⁻¹.
    pub fn psi(&self, v: &BigRational) -> Result<BigRational, HerbrandError> {
        if v.is_negative() {
            return Err(HerbrandError::NegativeArgument);
        }
        let pieces = self.pieces();
        let (ends, last) = pieces.split_at(pieces.len() - 1);
        let mut acc = BigRational::zero();
        let mut start = BigRational::zero();
        for (end, slope) in ends {
            let next = &acc + (end - &start) * slope;
            if *v <= next {
                return Ok(&start + (v - &acc) / slope);
            }
            acc = next;
            start = end.clone();
        }
        Ok(&start + (v - &acc) / &last[0].1)
    }

    /// Upper jumps φ(r_i).
    pub fn upper_jumps(&self) -> Vec<BigRational> {
        self.jumps.iter().map(|j| self.phi(&rat(j.r)).expect("nonnegative")).collect()
    }

    /// The same filtration with one jump moved (used for negative controls).
    pub fn with_jump_moved(&self, index: usize, new_r: u64) -> Result<Self, HerbrandError> {
        let mut jumps = self.jumps.clone();
        let j = jumps.get_mut(index).ok_or(HerbrandError::InvalidFiltration("no such jump".into()))?;
        j.r = new_r;
        LowerFiltration::new(self.order, jumps)
    }
}

/// φ_{L/F} = φ_{K/F} ∘ φ_{L/K}, checked on every breakpoint of either side, the midpoints
/// between consecutive breakpoints and one point beyond the last. Both sides are piecewise
/// linear with breakpoints in that set, so this decides equality.
pub fn compose_check(
    sub: &LowerFiltration,
    quot: &LowerFiltration,
    whole: &LowerFiltration,
) -> Result<bool, HerbrandError> {
    if whole.order() != sub.order() * quot.order() {
        return Err(HerbrandError::IncompatibleOrders {
            whole: whole.order(),
            sub: sub.order(),
            quot: quot.order(),
        });
    }
    let mut points: Vec<BigRational> = vec![BigRational::zero()];
    points.extend(whole.jumps().iter().map(|j| rat(j.r)));
    points.extend(sub.jumps().iter().map(|j| rat(j.r)));
    for j in quot.jumps() {
        points.push(sub.psi(&rat(j.r))?);
    }
    points.sort();
    points.dedup();
    let last = points.last().cloned().unwrap_or_else(BigRational::zero);
    let mut probes = points.clone();
    for w in points.windows(2) {
        probes.push((&w[0] + &w[1]) / rat(2));
    }
    probes.push(last + BigRational::one());
    for u in probes {
        if whole.phi(&u)? != quot.phi(&sub.phi(&u)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lower filtration of G/H from that of G and of H (H[u] = G[u] ∩ H), by Herbrand's theorem:
/// (G/H)[v] = G[u]H/H with v = φ_H(u).
pub fn quotient_filtration(whole: &LowerFiltration, sub: &LowerFiltration) -> Result<LowerFiltration, HerbrandError> {
    let ratio = |u: &BigRational| -> Result<u64, HerbrandError> {
        let g = whole.order_at(u);
        let h = sub.order_at(u);
        if !g.is_multiple_of(h) {
            return Err(HerbrandError::NotNormalData(format!("|H[{u}]| = {h} does not divide |G[{u}]| = {g}")));
        }
        Ok(g / h)
    };
    let zero = BigRational::zero();
    let order = ratio(&zero)?;
    let mut breaks: Vec<u64> = whole.lower_jumps();
    breaks.extend(sub.lower_jumps());
    breaks.sort_unstable();
    breaks.dedup();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut jumps = Vec::new();
    let mut current = order;
    for r in breaks {
        let after = ratio(&(rat(r) + &half))?;
        if after != current {
            let v = sub.phi(&rat(r))?;
            if !v.is_integer() {
                return Err(HerbrandError::NotNormalData(format!("quotient jump at non-integer {v}")));
            }
            let v = v.to_integer().to_u64().expect("nonnegative");
            jumps.push(Jump { r: v, order_after: after });
            current = after;
        }
    }
    LowerFiltration::new(order, jumps).map_err(|e| HerbrandError::NotNormalData(e.to_string()))
}
