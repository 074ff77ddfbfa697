//! Rational roots of polynomials over ℚ.
//!
//! Real roots of the squarefree part are isolated with a Sturm sequence to
//! intervals short enough that each holds at most one candidate `y / lc` with
//! `y` an integer; the single candidate is then checked by substitution. No
//! integer factorization is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ArithError, Poly, Rat};

/// All rational roots of `p`, sorted ascending, without multiplicity.
pub fn rational_roots(p: &Poly) -> Result<Vec<Rat>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mut roots = Vec::new();
    let mut q = p.squarefree_part();
    if q.is_constant() {
        return Ok(roots);
    }
    // Strip the root at zero so the bound below stays tight.
    if q.coeff(0).is_zero() {
        roots.push(Rat::zero());
        q = q.div_exact(&Poly::t());
    }
    if q.degree() == Some(1) {
        roots.push(-q.coeff(0) / q.coeff(1));
    } else if !q.is_constant() {
        isolate_and_check(&q, &mut roots);
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn isolate_and_check(q: &Poly, roots: &mut Vec<Rat>) {
    let (_, prim) = q.content_primitive();
    let lc = prim.last().unwrap().clone();
    let zq = Poly::from_int_coeffs(&prim);
    let sturm = sturm_sequence(&zq);
    // Cauchy bound.
    let lc_abs = Rat::from_integer(lc.abs());
    let bound = prim[..prim.len() - 1]
        .iter()
        .map(|c| Rat::from_integer(c.abs()) / &lc_abs)
        .fold(Rat::zero(), |a, b| if b > a { b } else { a })
        + Rat::one();
    let width_limit = Rat::new(BigInt::one(), lc.abs());
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&sturm, &lo) - sign_changes(&sturm, &hi);
        if count == 0 {
            continue;
        }
        if count == 1 && &hi - &lo < width_limit {
            check_interval(&zq, &lc, &lo, &hi, roots);
            continue;
        }
        let mid: Rat = (&lo + &hi) / Rat::from_integer(2.into());
        if zq.eval(&mid).is_zero() {
            roots.push(mid.clone());
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
}

/// Check the integer `y` in `(lc*lo, lc*hi]` as the root `y/lc`.
fn check_interval(zq: &Poly, lc: &BigInt, lo: &Rat, hi: &Rat, roots: &mut Vec<Rat>) {
    let lcr = Rat::from_integer(lc.abs());
    let a = lo * &lcr;
    let b = hi * &lcr;
    let mut y = a.floor().to_integer() + BigInt::one();
    let top = b.floor().to_integer();
    while y <= top {
        let cand = Rat::new(y.clone(), lc.abs());
        if zq.eval(&cand).is_zero() {
            roots.push(cand);
        }
        y += 1;
    }
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // Positive rescaling keeps coefficients small without touching signs.
        let (c, prim) = r.content_primitive();
        let prim = Poly::from_int_coeffs(&prim);
        seq.push(if c.is_positive() { -&prim } else { prim });
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &Rat) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Lowest common multiple of rational denominators.
pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        assert_eq!(rational_roots(&p(&[0, -1, 1])).unwrap(), vec![q(0, 1), q(1, 1)]);
        assert_eq!(rational_roots(&p(&[-1, 2])).unwrap(), vec![q(1, 2)]);
        assert!(rational_roots(&p(&[1, 0, 1])).unwrap().is_empty());
        assert_eq!(rational_roots(&Poly::zero()), Err(ArithError::ZeroInput));
    }

    #[test]
    fn mixed_roots() {
        // (3t - 2)(t + 5)(t^2 - 2)(2t + 7)^2
        let f = &(&(&p(&[-2, 3]) * &p(&[5, 1])) * &p(&[-2, 0, 1])) * &p(&[7, 2]).pow(2);
        assert_eq!(rational_roots(&f).unwrap(), vec![q(-5, 1), q(-7, 2), q(2, 3)]);
    }

    #[test]
    fn close_roots() {
        // (100t - 1)(101t - 1)
        let f = &p(&[-1, 100]) * &p(&[-1, 101]);
        assert_eq!(rational_roots(&f).unwrap(), vec![q(1, 101), q(1, 100)]);
    }
}
