use std::fmt;

use serde::{Deserialize, Serialize};

use super::MatGroupError;

/// Largest supported matrix size.
pub const MAX_DIM: usize = 3;

/// A d×d matrix with entries mod p^n (d ≤ 3), stored row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatModPN {
    p: u32,
    n: u32,
    d: u8,
    q: u64,
    e: [u64; MAX_DIM * MAX_DIM],
}

/// Ring parameters shared by all matrices of a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Level {
    pub p: u32,
    pub n: u32,
    pub d: usize,
}

impl Level {
    pub fn new(p: u32, n: u32, d: usize) -> Result<Self, MatGroupError> {
        crate::padic::check_prime(p as u64)?;
        if n == 0 {
            return Err(MatGroupError::BadLevel("n must be at least 1".into()));
        }
        if d == 0 || d > MAX_DIM {
            return Err(MatGroupError::BadLevel(format!("matrix size {d} outside 1..={MAX_DIM}")));
        }
        let level = Level { p, n, d };
        let q = level.modulus() as u128;
        // keys are base-q numbers with d^2 digits and products are taken in u128
        let digits = (d * d) as u32;
        if q.checked_pow(digits).is_none() || q > u32::MAX as u128 {
            return Err(MatGroupError::BadLevel(format!("p^n = {q} too large for d = {d}")));
        }
        Ok(level)
    }

    pub fn modulus(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }

    pub fn pk(&self, k: u32) -> u64 {
        (self.p as u64).pow(k)
    }

    pub fn identity(&self) -> MatModPN {
        let mut e = [0; 9];
        for i in 0..self.d {
            e[i * self.d + i] = 1 % self.modulus();
        }
        MatModPN { p: self.p, n: self.n, d: self.d as u8, q: self.modulus(), e }
    }

    pub fn scalar(&self, a: i64) -> MatModPN {
        let q = self.modulus() as i64;
        let mut e = [0; 9];
        for i in 0..self.d {
            e[i * self.d + i] = a.rem_euclid(q) as u64;
        }
        MatModPN { p: self.p, n: self.n, d: self.d as u8, q: self.modulus(), e }
    }

    /// Matrix from row-major integer entries, reduced mod p^n.
    pub fn matrix(&self, entries: &[i64]) -> Result<MatModPN, MatGroupError> {
        if entries.len() != self.d * self.d {
            return Err(MatGroupError::BadMatrix(format!(
                "expected {} entries, got {}",
                self.d * self.d,
                entries.len()
            )));
        }
        let q = self.modulus() as i64;
        let mut e = [0; 9];
        for (slot, &x) in e.iter_mut().zip(entries) {
            *slot = x.rem_euclid(q) as u64;
        }
        Ok(MatModPN { p: self.p, n: self.n, d: self.d as u8, q: self.modulus(), e })
    }

    /// 1 + p^k E_ij.
    pub fn elementary(&self, i: usize, j: usize, k: u32) -> MatModPN {
        let mut m = self.identity();
        let idx = i * self.d + j;
        m.e[idx] = (m.e[idx] + self.pk(k)) % self.modulus();
        m
    }

    pub fn from_key(&self, key: u128) -> MatModPN {
        let q = self.modulus() as u128;
        let mut e = [0; 9];
        let mut k = key;
        for i in (0..self.d * self.d).rev() {
            e[i] = (k % q) as u64;
            k /= q;
        }
        MatModPN { p: self.p, n: self.n, d: self.d as u8, q: self.modulus(), e }
    }

    /// |GL_d(Z/p^n)|.
    pub fn gl_order(&self) -> u128 {
        let p = self.p as u128;
        let d = self.d as u32;
        let mut gl_fp: u128 = 1;
        for i in 0..d {
            gl_fp *= p.pow(d) - p.pow(i);
        }
        gl_fp * p.pow(d * d * (self.n - 1))
    }
}

impl MatModPN {
    pub fn level(&self) -> Level {
        Level { p: self.p, n: self.n, d: self.d as usize }
    }

    pub fn dim(&self) -> usize {
        self.d as usize
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.e[i * self.d as usize + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.e[..(self.d as usize).pow(2)]
    }

    pub fn key(&self) -> u128 {
        let q = self.q as u128;
        self.entries().iter().fold(0u128, |acc, &x| acc * q + x as u128)
    }

    pub fn mul(&self, other: &MatModPN) -> MatModPN {
        let d = self.d as usize;
        let q = self.q as u128;
        let mut e = [0; 9];
        for i in 0..d {
            for j in 0..d {
                let mut acc: u128 = 0;
                for k in 0..d {
                    acc += self.e[i * d + k] as u128 * other.e[k * d + j] as u128;
                }
                e[i * d + j] = (acc % q) as u64;
            }
        }
        MatModPN { e, ..*self }
    }

    pub fn add(&self, other: &MatModPN) -> MatModPN {
        let mut e = self.e;
        for (x, y) in e.iter_mut().zip(other.e.iter()) {
            *x = (*x + *y) % self.q;
        }
        MatModPN { e, ..*self }
    }

    pub fn sub(&self, other: &MatModPN) -> MatModPN {
        let mut e = self.e;
        for (x, y) in e.iter_mut().zip(other.e.iter()) {
            *x = (*x + self.q - *y) % self.q;
        }
        MatModPN { e, ..*self }
    }

    pub fn scale(&self, c: u64) -> MatModPN {
        let mut e = self.e;
        for x in e.iter_mut() {
            *x = ((*x as u128 * c as u128) % self.q as u128) as u64;
        }
        MatModPN { e, ..*self }
    }

    pub fn det(&self) -> u64 {
        let q = self.q as i128;
        let a = |i: usize, j: usize| self.entry(i, j) as i128;
        let v = match self.d {
            1 => a(0, 0),
            2 => a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0),
            _ => {
                a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                    + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
            }
        };
        v.rem_euclid(q) as u64
    }

    pub fn trace(&self) -> u64 {
        (0..self.d as usize).map(|i| self.entry(i, i)).sum::<u64>() % self.q
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_multiple_of(self.p as u64)
    }

    pub fn inverse(&self) -> Result<MatModPN, MatGroupError> {
        let det = self.det();
        let dinv = inverse_mod_u64(det, self.q).ok_or(MatGroupError::NotInvertible)?;
        let d = self.d as usize;
        let q = self.q as i128;
        let a = |i: usize, j: usize| self.entry(i, j) as i128;
        let mut adj = [0i128; 9];
        match d {
            1 => adj[0] = 1,
            2 => {
                adj[0] = a(1, 1);
                adj[1] = -a(0, 1);
                adj[2] = -a(1, 0);
                adj[3] = a(0, 0);
            }
            _ => {
                for i in 0..3 {
                    for j in 0..3 {
                        // cofactor C_ji goes to position (i, j)
                        let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
                        let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
                        let minor = a(rows[0], cols[0]) * a(rows[1], cols[1]) - a(rows[0], cols[1]) * a(rows[1], cols[0]);
                        adj[i * 3 + j] = if (i + j) % 2 == 0 { minor } else { -minor };
                    }
                }
            }
        }
        let mut e = [0; 9];
        for k in 0..d * d {
            e[k] = ((adj[k].rem_euclid(q) as u128 * dinv as u128) % self.q as u128) as u64;
        }
        Ok(MatModPN { e, ..*self })
    }

    pub fn conjugate_by(&self, g: &MatModPN) -> MatModPN {
        let gi = g.inverse().expect("group element");
        g.mul(self).mul(&gi)
    }

    pub fn commutator(&self, other: &MatModPN) -> MatModPN {
        let ai = self.inverse().expect("group element");
        let bi = other.inverse().expect("group element");
        self.mul(other).mul(&ai).mul(&bi)
    }

    pub fn pow(&self, mut e: u64) -> MatModPN {
        let mut result = self.level().identity();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Largest k ≤ n with self ≡ 1 mod p^k.
    pub fn congruence_depth(&self) -> u32 {
        let id = self.level().identity();
        let diff = self.sub(&id);
        diff.entries().iter().map(|&x| valuation_capped(x, self.p as u64, self.n)).min().unwrap_or(self.n)
    }

    pub fn is_congruent_to_one(&self, k: u32) -> bool {
        self.congruence_depth() >= k
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.d as usize;
        (0..d).all(|i| (0..d).all(|j| if i == j { self.entry(i, i) == self.entry(0, 0) } else { self.entry(i, j) == 0 }))
    }

    /// Reduction to level p^m (m ≤ n).
    pub fn reduce(&self, m: u32) -> MatModPN {
        let q = (self.p as u64).pow(m);
        let mut e = self.e;
        for x in e.iter_mut() {
            *x %= q;
        }
        MatModPN { n: m, q, e, ..*self }
    }

    /// Row-major entries as signed integers in [0, p^n).
    pub fn to_i64s(&self) -> Vec<i64> {
        self.entries().iter().map(|&x| x as i64).collect()
    }
}

impl fmt::Debug for MatModPN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MatModPN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d as usize;
        write!(f, "[")?;
        for i in 0..d {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..d {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "] mod {}^{}", self.p, self.n)
    }
}

pub(crate) fn valuation_capped(x: u64, p: u64, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut v = 0;
    let mut y = x;
    while y.is_multiple_of(p) && v < cap {
        y /= p;
        v += 1;
    }
    v
}

pub fn inverse_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}
