use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::group::{normal_closure, FiniteLevelGroup, DEFAULT_ELEMENT_BUDGET};
use super::lie::graded_piece;
use super::mat::{inverse_mod_u64, mul_mod, pow_mod, Level, MatModPN};
use super::MatGroupError;
use crate::padic::{padic_dth_root, teichmuller, PadicScalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum SlGlVerdict {
    /// G ∩ SL_d ⊇ Γ_d(p^m) and det(G) ⊇ 1 + p^m, both mod p^n.
    OpenCertified { m: u32 },
    FailsSl,
    FailsDet,
}

/// Finite-level openness test in GL_d: an SL leg and a determinant leg.
pub fn slgl_check(g: &FiniteLevelGroup) -> Result<SlGlVerdict, MatGroupError> {
    let lv = g.level();
    let p = lv.p as u128;
    let n = lv.n;
    let q = lv.modulus();
    let d2 = (lv.d * lv.d) as u32;
    // depth of each SL element, and the set of determinants
    let mut sl_depth_counts = vec![0u128; n as usize + 1];
    let mut dets = HashSet::new();
    for x in g.elements()? {
        let det = x.det();
        dets.insert(det);
        if det == 1 % q {
            sl_depth_counts[x.congruence_depth() as usize] += 1;
        }
    }
    let at_least = |counts: &[u128], m: u32| counts[m as usize..].iter().sum::<u128>();
    let m_sl = (1..n).find(|&m| at_least(&sl_depth_counts, m) == p.pow((d2 - 1) * (n - m)));
    let Some(m_sl) = m_sl else {
        return Ok(SlGlVerdict::FailsSl);
    };
    let mut det_depth_counts = vec![0u128; n as usize + 1];
    for &det in &dets {
        let depth = super::mat::valuation_capped((det + q - 1) % q, lv.p as u64, n);
        det_depth_counts[depth as usize] += 1;
    }
    let m_det = (1..n).find(|&m| at_least(&det_depth_counts, m) == p.pow(n - m));
    match m_det {
        None => Ok(SlGlVerdict::FailsDet),
        Some(m_det) => Ok(SlGlVerdict::OpenCertified { m: m_sl.max(m_det) }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcReport {
    pub holds: bool,
    pub depth: u32,
    pub local_dim: usize,
    pub closure_dim: usize,
    pub global_dim: usize,
}

impl NcReport {
    pub fn verdict(&self) -> &'static str {
        if self.holds {
            "nc_holds_at_k"
        } else {
            "nc_fails_at_k"
        }
    }
}

/// Compares the shadow of the normal closure of D's depth-k layer with the global shadow.
pub fn nc_check(global: &FiniteLevelGroup, local_gens: &[MatModPN], k: u32) -> Result<NcReport, MatGroupError> {
    let lv = global.level();
    for h in local_gens {
        if !global.contains(h)? {
            return Err(MatGroupError::NotInGroup(h.to_string()));
        }
    }
    let local = FiniteLevelGroup::new(lv, local_gens.to_vec())?.enumerate(global.order()?)?;
    let layer = local.subgroup_where(|x| x.is_congruent_to_one(k))?;
    let local_shadow = graded_piece(&layer, k)?;
    let closure = normal_closure(layer.generators(), global)?;
    let closure_shadow = graded_piece(&closure, k)?;
    let global_shadow = graded_piece(global, k)?;
    Ok(NcReport {
        holds: closure_shadow.same_space(&global_shadow),
        depth: k,
        local_dim: local_shadow.dim(),
        closure_dim: closure_shadow.dim(),
        global_dim: global_shadow.dim(),
    })
}

/// Character values on all elements, extended from the generators along BFS words.
/// Every edge of the Cayley graph is checked, so an inconsistent assignment is reported.
pub fn character_table(g: &FiniteLevelGroup) -> Result<HashMap<u128, u64>, MatGroupError> {
    let chi = g.character().ok_or(MatGroupError::MissingCharacter)?;
    let lv = g.level();
    let q = lv.modulus();
    g.order()?;
    let mut table: HashMap<u128, u64> = HashMap::new();
    let id = lv.identity();
    table.insert(id.key(), 1 % q);
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let cx = table[&x.key()];
        for (s, &cs) in g.generators().iter().zip(chi) {
            let y = x.mul(s);
            let cy = mul_mod(cx, cs, q);
            match table.get(&y.key()) {
                Some(&old) if old != cy => {
                    return Err(MatGroupError::InconsistentCharacter(y.to_string()));
                }
                Some(_) => {}
                None => {
                    table.insert(y.key(), cy);
                    queue.push(y);
                }
            }
        }
        i += 1;
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum CeVerdict {
    /// A central element whose character value g satisfies g^{p−1} ≢ 1 mod p^n.
    CeCertified { witness: Vec<i64>, value: u64 },
    Inconclusive { level: u32 },
}

impl CeVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, CeVerdict::CeCertified { .. })
    }
}

pub fn ce_check(g: &FiniteLevelGroup) -> Result<CeVerdict, MatGroupError> {
    let table = character_table(g)?;
    let lv = g.level();
    let q = lv.modulus();
    let p = lv.p as u64;
    let mut center = g.center()?;
    // deterministic choice of witness
    center.sort_by_key(|z| z.key());
    for z in center {
        let value = table[&z.key()];
        if pow_mod(value, p - 1, q) != 1 % q {
            return Ok(CeVerdict::CeCertified { witness: z.to_i64s(), value });
        }
    }
    Ok(CeVerdict::Inconclusive { level: lv.n })
}

/// g ↦ g · χ(g), with χ^d = χ₁⁻¹ where det = χ₀ χ₁ (Teichmüller times principal unit).
/// The result lives at level n − v_p(d).
pub fn twist_element(g: &MatModPN) -> Result<MatModPN, MatGroupError> {
    let lv = g.level();
    let p = lv.p as u64;
    let det = g.det();
    let omega = teichmuller(det % p, p, lv.n)?;
    let omega = omega.to_integer()?.to_u64().expect("fits");
    // χ₁⁻¹ = χ₀ / det
    let det_inv = inverse_mod_u64(det, lv.modulus()).ok_or(MatGroupError::NotInvertible)?;
    let chi1_inv = mul_mod(omega, det_inv, lv.modulus());
    let u = PadicScalar::from_integer(&BigInt::from(chi1_inv), p, lv.n)?;
    let root = padic_dth_root(&u, lv.d as u64)?;
    let level = Level::new(lv.p, root.precision(), lv.d)?;
    let c = root.to_integer()?.to_u64().expect("fits");
    Ok(g.reduce(level.n).scale(c))
}

/// Constant-determinant twist: the group generated by the twisted generators.
pub fn constant_det_twist(g: &FiniteLevelGroup) -> Result<FiniteLevelGroup, MatGroupError> {
    let gens: Vec<MatModPN> = g.generators().iter().map(twist_element).collect::<Result<_, _>>()?;
    let level = match gens.first() {
        Some(x) => x.level(),
        None => g.level(),
    };
    let cap = g.order().unwrap_or(DEFAULT_ELEMENT_BUDGET).max(1);
    FiniteLevelGroup::new(level, gens)?.enumerate(cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum RiehmVerdict {
    Scalar,
    /// H ⊇ G ∩ (1 + p^m M_d) ≠ 1 mod p^n.
    OpenInG { m: u32 },
    /// Neither alternative is visible at this level.
    Inconclusive { level: u32 },
}

/// Scalar-or-open dichotomy for a normal subgroup H of G, tested at level n.
pub fn riehm_probe(g: &FiniteLevelGroup, h_gens: &[MatModPN]) -> Result<RiehmVerdict, MatGroupError> {
    let lv = g.level();
    let h = FiniteLevelGroup::new(lv, h_gens.to_vec())?.enumerate(g.order()?)?;
    for x in h_gens {
        if !g.contains(x)? {
            return Err(MatGroupError::NotInGroup(x.to_string()));
        }
    }
    if !h.is_normal_in(g)? {
        return Err(MatGroupError::NotNormal);
    }
    if h.elements()?.all(|x| x.is_scalar()) {
        return Ok(RiehmVerdict::Scalar);
    }
    for m in 1..lv.n {
        let layer: Vec<MatModPN> = g.elements()?.filter(|x| x.is_congruent_to_one(m)).collect();
        if layer.len() > 1 && layer.iter().all(|x| h.contains(x).unwrap_or(false)) {
            return Ok(RiehmVerdict::OpenInG { m });
        }
    }
    Ok(RiehmVerdict::Inconclusive { level: lv.n })
}
