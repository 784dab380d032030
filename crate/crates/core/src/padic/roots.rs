use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::fp;
use super::newton::newton_polygon;
use super::scalar::{inverse_mod, pow_p, valuation_capped};
use super::{check_prime, IntPolynomial, PadicError, PadicScalar};

/// Lifting-tree depth budget: 4 (1 + max slope denominator) N.
pub fn default_depth_budget(f: &IntPolynomial, p: u64, precision: u32) -> Result<u32, PadicError> {
    let np = newton_polygon(f, p)?;
    let den = np.max_denominator().min(u32::MAX as u64 / 8) as u32;
    Ok(4 * (1 + den) * precision.max(1))
}

/// All roots of `f` in Z_p to `precision` digits, each counted once. Roots that agree
/// mod p^precision are returned to the depth at which they separate.
pub fn zp_roots(f: &IntPolynomial, p: u64, precision: u32) -> Result<Vec<PadicScalar>, PadicError> {
    let budget = default_depth_budget(f, p, precision)?;
    zp_roots_with_budget(f, p, precision, budget)
}

pub fn zp_roots_with_budget(
    f: &IntPolynomial,
    p: u64,
    precision: u32,
    budget: u32,
) -> Result<Vec<PadicScalar>, PadicError> {
    check_prime(p)?;
    if precision == 0 {
        return Err(PadicError::ZeroPrecision);
    }
    f.require_squarefree()?;
    // remove the p-part of the content so that f mod p is nonzero
    let content = f.content();
    let g = if (&content % BigInt::from(p)).is_zero() {
        let c = pow_p(p, super::scalar::valuation_of(&content, p));
        IntPolynomial::new(f.coeffs().iter().map(|x| x / &c).collect())?
    } else {
        f.clone()
    };
    let df = g.derivative_coeffs();
    let dpoly = |x: &BigInt, m: &BigInt| -> BigInt {
        let mut acc = BigInt::zero();
        for c in df.iter().rev() {
            acc = (acc * x + c).mod_floor(m);
        }
        acc
    };

    let fbar = fp::reduce(g.coeffs(), p);
    let mut stack: Vec<(BigInt, u32)> = fp::roots(&fbar, p).into_iter().rev().map(|r| (BigInt::from(r), 1)).collect();
    let mut found = Vec::new();
    while let Some((r, j)) = stack.pop() {
        if j > budget {
            return Err(PadicError::PrecisionExhausted { budget });
        }
        let pj = pow_p(p, j);
        let dv = dpoly(&r, &pj);
        let k = valuation_capped(&dv, p, j);
        if k < j {
            // f' has constant valuation k on the ball r + p^j Z_p; a root exists in the
            // ball iff v(f(r)) >= j + k, and it is then unique
            let m = pow_p(p, j + k);
            if g.eval_mod(&r, &m).is_zero() {
                // refine at least to depth j so that distinct roots stay distinct
                found.push(newton_refine(&g, &df, p, r, k, precision.max(j)));
            }
        } else {
            for t in 0..p {
                let child = &r + &pj * BigInt::from(t);
                if g.eval_mod(&child, &(&pj * BigInt::from(p))).is_zero() {
                    stack.push((child, j + 1));
                }
            }
        }
    }
    // order by p-adic digits, lowest first, so the order is stable under refinement
    found.sort_by_cached_key(|r| digits(&r.to_integer().unwrap(), p));
    Ok(found)
}

// Newton iteration from a point where v(f') = k and v(f) > 2k; returns the root mod p^precision.
fn newton_refine(g: &IntPolynomial, df: &[BigInt], p: u64, mut x: BigInt, k: u32, precision: u32) -> PadicScalar {
    let work = pow_p(p, precision + 2 * k + 1);
    let pk = pow_p(p, k);
    let target = precision + k;
    loop {
        let fx = g.eval_mod(&x, &work);
        if valuation_capped(&fx, p, target) >= target {
            break;
        }
        let mut dfx = BigInt::zero();
        for c in df.iter().rev() {
            dfx = (dfx * &x + c).mod_floor(&work);
        }
        let modulus = pow_p(p, precision + k + 1);
        let unit = inverse_mod(&(&dfx / &pk), &modulus).expect("f'(x)/p^k is a unit");
        let step = (&fx / &pk) * unit;
        x = (x - step).mod_floor(&work);
    }
    let m = pow_p(p, precision);
    PadicScalar::from_integer(&x.mod_floor(&m), p, precision).expect("valid prime")
}

fn digits(x: &BigInt, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    let mut y = x.clone();
    while !y.is_zero() {
        let (q, r) = y.div_mod_floor(&pb);
        out.push(r.to_u64().unwrap());
        y = q;
    }
    out
}

/// Residue of a root as a small integer (for reports).
pub fn root_residue(root: &PadicScalar) -> u64 {
    root.to_integer().ok().and_then(|x| (x % BigInt::from(root.prime())).to_u64()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rs: &[PadicScalar]) -> Vec<BigInt> {
        rs.iter().map(|r| r.to_integer().unwrap()).collect()
    }

    #[test]
    fn quadratic_at_17() {
        let f = IntPolynomial::from_i64s(&[17, -10, 1]).unwrap();
        let roots = zp_roots(&f, 17, 1).unwrap();
        assert_eq!(roots.len(), 2);
        let residues: Vec<u64> = roots.iter().map(root_residue).collect();
        assert_eq!(residues, vec![0, 10]);
        let deep = zp_roots(&f, 17, 6).unwrap();
        let m = pow_p(17, 6);
        for r in ints(&deep) {
            assert!(f.eval_mod(&r, &m).is_zero());
        }
        assert_eq!(deep[0].valuation(), Some(1));
    }

    #[test]
    fn no_roots_and_double_residue() {
        let f = IntPolynomial::from_i64s(&[1, 0, 1]).unwrap();
        assert!(zp_roots(&f, 3, 5).unwrap().is_empty());
        // x^3 + x^2 - 8x - 3 = x (x - 1)^2 mod 3; only the simple residue lifts
        let g = IntPolynomial::from_i64s(&[-3, -8, 1, 1]).unwrap();
        let roots = zp_roots(&g, 3, 8).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(root_residue(&roots[0]), 0);
    }

    #[test]
    fn roots_needing_branching() {
        // (x - 1)(x - 10) at p = 3: both roots are 1 mod 3 and split only mod 9
        let f = IntPolynomial::from_i64s(&[10, -11, 1]).unwrap();
        let roots = zp_roots(&f, 3, 4).unwrap();
        assert_eq!(ints(&roots), vec![BigInt::from(1), BigInt::from(10)]);
    }

    #[test]
    fn non_monic_and_content() {
        // 3x - 2 has the root 2/3, not in Z_3; 5x - 2 has root 2/5 in Z_3
        let f = IntPolynomial::from_i64s(&[-2, 3]).unwrap();
        assert!(zp_roots(&f, 3, 3).unwrap().is_empty());
        let g = IntPolynomial::from_i64s(&[-6, 15]).unwrap();
        let r = zp_roots(&g, 3, 3).unwrap();
        assert_eq!(r.len(), 1);
        let x = r[0].to_integer().unwrap();
        assert!(((x * BigInt::from(5) - BigInt::from(2)) % BigInt::from(27)).is_zero());
    }

    #[test]
    fn depth_budget_exhaustion() {
        // roots 1 and 1 + 3^6 need depth 7 to separate
        let a = BigInt::from(730);
        let f = IntPolynomial::new(vec![a.clone(), -(&a + BigInt::from(1)), BigInt::from(1)]).unwrap();
        assert!(matches!(zp_roots_with_budget(&f, 3, 2, 3), Err(PadicError::PrecisionExhausted { budget: 3 })));
        assert_eq!(zp_roots_with_budget(&f, 3, 2, 20).unwrap().len(), 2);
    }
}
