use serde::{Deserialize, Serialize};

use super::group::FiniteLevelGroup;
use super::lie::{graded_piece, LieShadow};
use super::mat::MatModPN;
use super::MatGroupError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    ContainsSl2,
    TorusNormalizer,
    ScalarAlmost,
    FiniteShadow,
    Borel,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::ContainsSl2 => "contains_sl2",
            Classification::TorusNormalizer => "torus_normalizer",
            Classification::ScalarAlmost => "scalar_almost",
            Classification::FiniteShadow => "finite_shadow",
            Classification::Borel => "borel",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Caveat {
    /// The verdict is about the level-n shadow only; the exact group may differ.
    InconclusiveAtLevel { n: u32 },
    /// Scalar-almost versus finite image is not decidable at any finite level.
    SmallShadowDichotomyOpen,
    /// The shadow itself misses trace zero; its bracket closure does not.
    ViaBracketClosure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub verdict: Classification,
    pub shadow_depth: u32,
    pub shadow_dim: usize,
    /// Number of lines over F_{p²} stable under the whole shadow.
    pub invariant_lines: usize,
    pub caveats: Vec<Caveat>,
}

/// Elements of F_{p²} = F_p(√ν) as pairs (a, b) = a + b√ν.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Fp2 {
    a: u64,
    b: u64,
}

struct Field {
    p: u64,
    nu: u64,
}

impl Field {
    fn new(p: u64) -> Self {
        let nu = (2..p).find(|&x| !(1..p).any(|y| y * y % p == x)).expect("odd prime has a non-residue");
        Field { p, nu }
    }
    fn c(&self, a: u64) -> Fp2 {
        Fp2 { a: a % self.p, b: 0 }
    }
    fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: (x.a + y.a) % self.p, b: (x.b + y.b) % self.p }
    }
    fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: (x.a + self.p - y.a) % self.p, b: (x.b + self.p - y.b) % self.p }
    }
    fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p;
        Fp2 { a: (x.a * y.a + self.nu * (x.b * y.b % p)) % p, b: (x.a * y.b + x.b * y.a) % p }
    }
    fn all(&self) -> impl Iterator<Item = Fp2> + '_ {
        (0..self.p).flat_map(move |a| (0..self.p).map(move |b| Fp2 { a, b }))
    }
}

/// Projective points [x : y] of P¹(F_{p²}).
fn projective_line(f: &Field) -> Vec<(Fp2, Fp2)> {
    let mut pts = vec![(f.c(0), f.c(1))];
    pts.extend(f.all().map(|t| (f.c(1), t)));
    pts
}

// Whether the 2×2 matrix with entries m (mod p) maps the line through v to itself.
fn stabilizes(f: &Field, m: &[u64], v: (Fp2, Fp2)) -> bool {
    let (x, y) = v;
    let mx = f.add(f.mul(f.c(m[0]), x), f.mul(f.c(m[1]), y));
    let my = f.add(f.mul(f.c(m[2]), x), f.mul(f.c(m[3]), y));
    f.sub(f.mul(x, my), f.mul(y, mx)) == f.c(0)
}

fn same_line(f: &Field, u: (Fp2, Fp2), v: (Fp2, Fp2)) -> bool {
    f.sub(f.mul(u.0, v.1), f.mul(u.1, v.0)) == f.c(0)
}

fn apply(f: &Field, m: &[u64], v: (Fp2, Fp2)) -> (Fp2, Fp2) {
    let (x, y) = v;
    (
        f.add(f.mul(f.c(m[0]), x), f.mul(f.c(m[1]), y)),
        f.add(f.mul(f.c(m[2]), x), f.mul(f.c(m[3]), y)),
    )
}

/// Lines over F_{p²} that are eigenlines of every matrix in the shadow.
pub fn common_eigenlines(shadow: &LieShadow) -> usize {
    invariant_lines(shadow).len()
}

fn invariant_lines(shadow: &LieShadow) -> Vec<(Fp2, Fp2)> {
    let f = Field::new(shadow.p as u64);
    projective_line(&f)
        .into_iter()
        .filter(|&v| shadow.basis.iter().all(|m| stabilizes(&f, m, v)))
        .collect()
}

fn swaps_lines(g: &MatModPN, lines: &[(Fp2, Fp2)], p: u64) -> bool {
    let f = Field::new(p);
    let m: Vec<u64> = g.entries().iter().map(|x| x % p).collect();
    let image = apply(&f, &m, lines[0]);
    same_line(&f, image, lines[1])
}

/// Classification of a 2-dimensional group from its deepest shadow V_{n−1}.
pub fn classify_2dim(g: &FiniteLevelGroup) -> Result<ClassifyReport, MatGroupError> {
    let lv = g.level();
    if lv.d != 2 {
        return Err(MatGroupError::WrongDimension(lv.d));
    }
    if lv.n < 2 {
        return Err(MatGroupError::DepthOutOfRange { k: 1, n: lv.n });
    }
    let depth = lv.n - 1;
    let shadow = graded_piece(g, depth)?;
    let caveat = Caveat::InconclusiveAtLevel { n: lv.n };
    let report = |verdict, lines, caveats| ClassifyReport {
        verdict,
        shadow_depth: depth,
        shadow_dim: shadow.dim(),
        invariant_lines: lines,
        caveats,
    };
    if shadow.contains_trace_zero() {
        return Ok(report(Classification::ContainsSl2, 0, vec![]));
    }
    if shadow.dim() == 0 {
        return Ok(report(Classification::FiniteShadow, 0, vec![caveat, Caveat::SmallShadowDichotomyOpen]));
    }
    if shadow.is_scalar_line() {
        return Ok(report(Classification::ScalarAlmost, 0, vec![caveat, Caveat::SmallShadowDichotomyOpen]));
    }
    let lines = invariant_lines(&shadow);
    match lines.len() {
        0 => {
            // a non-scalar subalgebra of gl_2 without common eigenlines generates sl_2
            if shadow.bracket_closure().contains_trace_zero() {
                Ok(report(Classification::ContainsSl2, 0, vec![Caveat::ViaBracketClosure]))
            } else {
                Ok(report(Classification::Borel, 0, vec![caveat, Caveat::ViaBracketClosure]))
            }
        }
        2 => {
            // G normalizes its shadow and so permutes the two lines
            let p = lv.p as u64;
            let verdict = if g.generators().iter().any(|s| swaps_lines(s, &lines, p)) {
                Classification::TorusNormalizer
            } else {
                Classification::Borel
            };
            Ok(report(verdict, 2, vec![caveat]))
        }
        k => Ok(report(Classification::Borel, k, vec![caveat])),
    }
}
