use std::collections::HashMap;

use super::mat::{Level, MatModPN};
use super::MatGroupError;

/// Default element budget for enumeration.
pub const DEFAULT_ELEMENT_BUDGET: usize = 5_000_000;

/// Enumerated element set with canonical keys, in discovery order.
#[derive(Clone, Debug)]
struct Elements {
    keys: Vec<u128>,
    index: HashMap<u128, u32>,
}

impl Elements {
    fn trivial(level: &Level) -> Self {
        let id = level.identity().key();
        let mut index = HashMap::new();
        index.insert(id, 0);
        Elements { keys: vec![id], index }
    }

    fn insert(&mut self, key: u128, cap: usize) -> Result<bool, MatGroupError> {
        if self.index.contains_key(&key) {
            return Ok(false);
        }
        if self.keys.len() >= cap {
            return Err(MatGroupError::CapExceeded(cap));
        }
        self.index.insert(key, self.keys.len() as u32);
        self.keys.push(key);
        Ok(true)
    }
}

/// A subgroup of GL_d(Z/p^n) given by generators, optionally enumerated.
#[derive(Clone, Debug)]
pub struct FiniteLevelGroup {
    level: Level,
    generators: Vec<MatModPN>,
    elements: Option<Elements>,
    /// Character values mod p^n on the generators, if supplied.
    character: Option<Vec<u64>>,
}

impl FiniteLevelGroup {
    pub fn new(level: Level, generators: Vec<MatModPN>) -> Result<Self, MatGroupError> {
        for g in &generators {
            if g.level() != level {
                return Err(MatGroupError::BadMatrix(format!("generator {g} is not at level {level:?}")));
            }
            if !g.is_invertible() {
                return Err(MatGroupError::NotInvertible);
            }
        }
        Ok(FiniteLevelGroup { level, generators, elements: None, character: None })
    }

    /// Attaches character values (one unit residue per generator).
    pub fn with_character(mut self, values: Vec<u64>) -> Result<Self, MatGroupError> {
        if values.len() != self.generators.len() {
            return Err(MatGroupError::BadCharacter(format!(
                "{} values for {} generators",
                values.len(),
                self.generators.len()
            )));
        }
        let q = self.level.modulus();
        let values: Vec<u64> = values.into_iter().map(|v| v % q).collect();
        if values.iter().any(|v| v % self.level.p as u64 == 0) {
            return Err(MatGroupError::BadCharacter("character values must be units".into()));
        }
        self.character = Some(values);
        Ok(self)
    }

    /// Enumerates the closure of the generators (BFS over right multiplication).
    pub fn enumerate(mut self, cap: usize) -> Result<Self, MatGroupError> {
        if self.elements.is_some() {
            return Ok(self);
        }
        let mut elems = Elements::trivial(&self.level);
        let mut i = 0;
        while i < elems.keys.len() {
            let x = self.level.from_key(elems.keys[i]);
            for s in &self.generators {
                elems.insert(x.mul(s).key(), cap)?;
            }
            i += 1;
        }
        self.elements = Some(elems);
        Ok(self)
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn generators(&self) -> &[MatModPN] {
        &self.generators
    }

    pub fn character(&self) -> Option<&[u64]> {
        self.character.as_deref()
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    fn elems(&self) -> Result<&Elements, MatGroupError> {
        self.elements.as_ref().ok_or(MatGroupError::NotEnumerated)
    }

    pub fn order(&self) -> Result<usize, MatGroupError> {
        Ok(self.elems()?.keys.len())
    }

    pub fn contains(&self, m: &MatModPN) -> Result<bool, MatGroupError> {
        Ok(self.elems()?.index.contains_key(&m.key()))
    }

    /// Elements in discovery order.
    pub fn elements(&self) -> Result<impl Iterator<Item = MatModPN> + '_, MatGroupError> {
        let lv = self.level;
        Ok(self.elems()?.keys.iter().map(move |&k| lv.from_key(k)))
    }

    /// Canonical keys, sorted (for set comparisons).
    pub fn sorted_keys(&self) -> Result<Vec<u128>, MatGroupError> {
        let mut keys = self.elems()?.keys.clone();
        keys.sort_unstable();
        Ok(keys)
    }

    pub fn same_elements(&self, other: &FiniteLevelGroup) -> Result<bool, MatGroupError> {
        if self.level != other.level || self.order()? != other.order()? {
            return Ok(false);
        }
        let idx = &other.elems()?.index;
        Ok(self.elems()?.keys.iter().all(|k| idx.contains_key(k)))
    }

    /// Number of elements congruent to 1 mod p^m.
    pub fn kernel_count(&self, m: u32) -> Result<usize, MatGroupError> {
        Ok(self.elements()?.filter(|g| g.is_congruent_to_one(m)).count())
    }

    /// Subgroup of elements satisfying a predicate that cuts out a subgroup
    /// (e.g. a congruence layer). Generators are chosen greedily.
    pub fn subgroup_where<F>(&self, pred: F) -> Result<FiniteLevelGroup, MatGroupError>
    where
        F: Fn(&MatModPN) -> bool,
    {
        let mut closure = Closure::new(self.level, usize::MAX);
        for g in self.elements()? {
            if pred(&g) {
                closure.add_generator(g)?;
            }
        }
        Ok(closure.into_group())
    }

    /// Center: elements commuting with every generator.
    pub fn center(&self) -> Result<Vec<MatModPN>, MatGroupError> {
        Ok(self
            .elements()?
            .filter(|z| self.generators.iter().all(|s| z.mul(s) == s.mul(z)))
            .collect())
    }

    /// Whether this (enumerated) group is normalized by every generator of `g`.
    pub fn is_normal_in(&self, g: &FiniteLevelGroup) -> Result<bool, MatGroupError> {
        for s in g.generators() {
            for h in &self.generators {
                if !self.contains(&h.conjugate_by(s))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Image of the group mod p^m, m ≤ n.
    pub fn reduce(&self, m: u32) -> Result<FiniteLevelGroup, MatGroupError> {
        let lv = Level::new(self.level.p, m.min(self.level.n), self.level.d)?;
        let gens = self.generators.iter().map(|g| g.reduce(lv.n)).collect();
        let mut g = FiniteLevelGroup::new(lv, gens)?;
        if let Some(chi) = &self.character {
            g = g.with_character(chi.clone())?;
        }
        Ok(g)
    }
}

/// Incremental closure: adding a generator only multiplies old elements by the new
/// generator and the new elements by everything.
pub(crate) struct Closure {
    level: Level,
    cap: usize,
    gens: Vec<MatModPN>,
    elems: Elements,
}

impl Closure {
    pub(crate) fn new(level: Level, cap: usize) -> Self {
        Closure { level, cap, gens: Vec::new(), elems: Elements::trivial(&level) }
    }

    pub(crate) fn contains(&self, m: &MatModPN) -> bool {
        self.elems.index.contains_key(&m.key())
    }

    /// Returns false if `t` was already in the group.
    pub(crate) fn add_generator(&mut self, t: MatModPN) -> Result<bool, MatGroupError> {
        if self.contains(&t) {
            return Ok(false);
        }
        self.gens.push(t);
        let old = self.elems.keys.len();
        for i in 0..old {
            let x = self.level.from_key(self.elems.keys[i]);
            self.elems.insert(x.mul(&t).key(), self.cap)?;
        }
        let mut i = old;
        while i < self.elems.keys.len() {
            let x = self.level.from_key(self.elems.keys[i]);
            for s in &self.gens {
                self.elems.insert(x.mul(s).key(), self.cap)?;
            }
            i += 1;
        }
        Ok(true)
    }

    pub(crate) fn into_group(self) -> FiniteLevelGroup {
        FiniteLevelGroup { level: self.level, generators: self.gens, elements: Some(self.elems), character: None }
    }
}

/// Closure of `gens` inside GL_d(Z/p^n).
pub fn enumerate_group(
    gens: &[MatModPN],
    p: u32,
    n: u32,
    d: usize,
    cap: usize,
) -> Result<FiniteLevelGroup, MatGroupError> {
    let level = Level::new(p, n, d)?;
    FiniteLevelGroup::new(level, gens.to_vec())?.enumerate(cap)
}

/// Whether every matrix ≡ 1 mod p^m lies in G, by counting |G ∩ K_m| = p^{d²(n−m)}.
pub fn contains_congruence(g: &FiniteLevelGroup, m: u32) -> Result<bool, MatGroupError> {
    let lv = g.level();
    if m >= lv.n {
        return Err(MatGroupError::DepthOutOfRange { k: m, n: lv.n });
    }
    if m == 0 {
        return Ok(g.order()? as u128 == lv.gl_order());
    }
    let expected = (lv.p as u128).pow((lv.d * lv.d) as u32 * (lv.n - m));
    Ok(g.kernel_count(m)? as u128 == expected)
}

/// Smallest subgroup of G containing H and stable under conjugation by G.
pub fn normal_closure(h_gens: &[MatModPN], g: &FiniteLevelGroup) -> Result<FiniteLevelGroup, MatGroupError> {
    g.elems()?;
    for h in h_gens {
        if !g.contains(h)? {
            return Err(MatGroupError::NotInGroup(h.to_string()));
        }
    }
    let mut closure = Closure::new(g.level(), g.order()?);
    let mut pending: Vec<MatModPN> = h_gens.to_vec();
    while let Some(h) = pending.pop() {
        if closure.add_generator(h)? {
            for s in g.generators() {
                pending.push(h.conjugate_by(s));
            }
        }
    }
    Ok(closure.into_group())
}

/// Closure of all commutators [g, h]: the normal closure of the generator commutators.
pub fn commutator_subgroup(g: &FiniteLevelGroup) -> Result<FiniteLevelGroup, MatGroupError> {
    g.elems()?;
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            comms.push(a.commutator(b));
        }
    }
    normal_closure(&comms, g)
}
