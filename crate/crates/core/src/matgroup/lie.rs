use serde::{Deserialize, Serialize};

use super::group::FiniteLevelGroup;
use super::mat::{inverse_mod_u64, valuation_capped, Level, MatModPN};
use super::MatGroupError;

/// F_p-span of {(g − 1)/p^k mod p : g ∈ G, g ≡ 1 mod p^k}, as reduced row echelon vectors
/// of length d² (row-major matrix entries).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieShadow {
    pub p: u32,
    pub d: usize,
    pub depth: u32,
    pub basis: Vec<Vec<u64>>,
}

impl LieShadow {
    pub fn zero(p: u32, d: usize, depth: u32) -> Self {
        LieShadow { p, d, depth, basis: Vec::new() }
    }

    pub fn span(p: u32, d: usize, depth: u32, vectors: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let mut s = Self::zero(p, d, depth);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// gl_d(F_p).
    pub fn full(p: u32, d: usize, depth: u32) -> Self {
        Self::span(p, d, depth, (0..d * d).map(|i| unit_vector(d * d, i)))
    }

    /// Trace-zero matrices.
    pub fn trace_zero(p: u32, d: usize, depth: u32) -> Self {
        let mut vs = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    vs.push(unit_vector(d * d, i * d + j));
                }
            }
        }
        for i in 1..d {
            let mut v = vec![0; d * d];
            v[0] = 1;
            v[i * d + i] = p as u64 - 1;
            vs.push(v);
        }
        Self::span(p, d, depth, vs)
    }

    pub fn scalars(p: u32, d: usize, depth: u32) -> Self {
        let mut v = vec![0; d * d];
        for i in 0..d {
            v[i * d + i] = 1;
        }
        Self::span(p, d, depth, [v])
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn pivot(v: &[u64]) -> Option<usize> {
        v.iter().position(|&x| x != 0)
    }

    // Reduces v against the basis; returns the remainder.
    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let p = self.p as u64;
        for b in &self.basis {
            let piv = Self::pivot(b).expect("nonzero basis vector");
            let c = v[piv];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
        v
    }

    /// Adds a vector; returns true if the dimension grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let p = self.p as u64;
        let v: Vec<u64> = v.into_iter().map(|x| x % p).collect();
        let mut r = self.reduce(v);
        let Some(piv) = Self::pivot(&r) else {
            return false;
        };
        let inv = inverse_mod_u64(r[piv], p).expect("nonzero mod p");
        for x in r.iter_mut() {
            *x = *x * inv % p;
        }
        // keep the basis fully reduced
        for b in self.basis.iter_mut() {
            let c = b[piv];
            if c != 0 {
                for (x, y) in b.iter_mut().zip(&r) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
        self.basis.push(r);
        self.basis.sort_by_key(|b| Self::pivot(b));
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let p = self.p as u64;
        Self::pivot(&self.reduce(v.iter().map(|x| x % p).collect())).is_none()
    }

    pub fn contains_space(&self, other: &LieShadow) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Equality as subspaces (depth is ignored).
    pub fn same_space(&self, other: &LieShadow) -> bool {
        self.dim() == other.dim() && self.contains_space(other)
    }

    pub fn contains_trace_zero(&self) -> bool {
        self.contains_space(&Self::trace_zero(self.p, self.d, self.depth))
    }

    pub fn is_scalar_line(&self) -> bool {
        self.dim() == 1 && self.contains_space(&Self::scalars(self.p, self.d, self.depth))
    }

    /// Closure under the commutator bracket [X, Y] = XY − YX.
    pub fn bracket_closure(&self) -> LieShadow {
        let mut out = self.clone();
        loop {
            let mut grew = false;
            let basis = out.basis.clone();
            for (i, x) in basis.iter().enumerate() {
                for y in &basis[i + 1..] {
                    grew |= out.insert(bracket(x, y, self.d, self.p as u64));
                }
            }
            if !grew {
                return out;
            }
        }
    }
}

fn unit_vector(len: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; len];
    v[i] = 1;
    v
}

pub(crate) fn bracket(x: &[u64], y: &[u64], d: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0; d * d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = 0;
            for k in 0..d {
                acc += x[i * d + k] * y[k * d + j] + (p - 1) * (y[i * d + k] * x[k * d + j] % p);
            }
            out[i * d + j] = acc % p;
        }
    }
    out
}

/// (g − 1)/p^k mod p for g ≡ 1 mod p^k.
pub fn layer_vector(g: &MatModPN, k: u32) -> Vec<u64> {
    let lv = g.level();
    let id = lv.identity();
    let pk = lv.pk(k);
    let p = lv.p as u64;
    g.sub(&id).entries().iter().map(|&x| (x / pk) % p).collect()
}

pub fn graded_piece(g: &FiniteLevelGroup, k: u32) -> Result<LieShadow, MatGroupError> {
    let lv = g.level();
    if k == 0 || k >= lv.n {
        return Err(MatGroupError::DepthOutOfRange { k, n: lv.n });
    }
    let mut shadow = LieShadow::zero(lv.p, lv.d, k);
    let full = lv.d * lv.d;
    for x in g.elements()? {
        if x.is_congruent_to_one(k) {
            shadow.insert(layer_vector(&x, k));
            if shadow.dim() == full {
                break;
            }
        }
    }
    Ok(shadow)
}

fn v_p(mut k: u64, p: u64) -> u32 {
    let mut v = 0;
    while k.is_multiple_of(p) {
        k /= p;
        v += 1;
    }
    v
}

// Number of series terms that can be nonzero mod p^n when the argument is ≡ 0 mod p.
fn term_bound(n: u32) -> u64 {
    2 * n as u64 + 2
}

// Evaluates Σ_{k=1}^{K} c_k A^k where c_k = sign_k / denom_k, exactly mod p^n, by working
// mod p^{n + extra} and dividing out the p-part of each denominator.
fn series(a: &MatModPN, coeff: impl Fn(u64) -> (bool, u64), extra: u32) -> Result<MatModPN, MatGroupError> {
    let lv = a.level();
    let p = lv.p as u64;
    let wide = Level::new(lv.p, lv.n + extra, lv.d)?;
    let lifted = wide.matrix(&a.to_i64s())?;
    let mut acc = lv.scalar(0);
    let mut power = wide.identity();
    for k in 1..=term_bound(lv.n) {
        power = power.mul(&lifted);
        let (negative, denom) = coeff(k);
        let vd = v_p(denom, p);
        let unit = denom / p.pow(vd);
        let pv = p.pow(vd);
        let uinv = inverse_mod_u64(unit % lv.modulus(), lv.modulus()).expect("unit");
        let entries: Vec<i64> = power
            .entries()
            .iter()
            .map(|&x| {
                debug_assert_eq!(x % pv, 0);
                let y = ((x / pv) as u128 * uinv as u128 % lv.modulus() as u128) as i64;
                if negative {
                    -y
                } else {
                    y
                }
            })
            .collect();
        acc = acc.add(&lv.matrix(&entries)?);
    }
    Ok(acc)
}

/// log(M) = Σ (−1)^{k+1} (M − 1)^k / k for M ≡ 1 mod p, p odd.
pub fn truncated_log(m: &MatModPN) -> Result<MatModPN, MatGroupError> {
    if !m.is_congruent_to_one(1) {
        return Err(MatGroupError::NotProP);
    }
    let lv = m.level();
    let p = lv.p as u64;
    let extra = (1..=term_bound(lv.n)).map(|k| v_p(k, p)).max().unwrap_or(0);
    let a = m.sub(&lv.identity());
    series(&a, |k| (k % 2 == 0, k), extra)
}

/// exp(X) = Σ X^k / k! for X ≡ 0 mod p, p odd.
pub fn truncated_exp(x: &MatModPN) -> Result<MatModPN, MatGroupError> {
    let lv = x.level();
    if x.entries().iter().any(|&e| valuation_capped(e, lv.p as u64, lv.n) == 0) {
        return Err(MatGroupError::NotProP);
    }
    let p = lv.p as u64;
    let kmax = term_bound(lv.n);
    let extra: u32 = (1..=kmax).map(|k| v_p(k, p)).sum();
    // k! overflows u64 quickly, so pass the denominator through its p-part and unit part
    let modulus = lv.modulus();
    let facts: Vec<(u32, u64)> = (0..=kmax)
        .scan((0u32, 1u64), |st, k| {
            if k > 0 {
                st.0 += v_p(k, p);
                let u = k / p.pow(v_p(k, p));
                st.1 = ((st.1 as u128 * u as u128) % modulus as u128) as u64;
            }
            Some(*st)
        })
        .collect();
    let wide = Level::new(lv.p, lv.n + extra, lv.d)?;
    let lifted = wide.matrix(&x.to_i64s())?;
    let mut acc = lv.identity();
    let mut power = wide.identity();
    for &(vk, uk) in facts.iter().skip(1) {
        power = power.mul(&lifted);
        let pv = p.pow(vk);
        let uinv = inverse_mod_u64(uk, modulus).expect("unit");
        let entries: Vec<i64> = power
            .entries()
            .iter()
            .map(|&e| ((e / pv) as u128 * uinv as u128 % modulus as u128) as i64)
            .collect();
        acc = acc.add(&lv.matrix(&entries)?);
    }
    Ok(acc)
}
