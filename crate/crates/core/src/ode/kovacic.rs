//! Rational solutions of `w' + w² = r` over ℚ(t) with `t' = 1`.
//!
//! Local exponents at each pole and at infinity give finitely many
//! candidates `θ`; for each, a polynomial `P` with
//! `P'' + 2θP' + (θ' + θ² - r)P = 0` yields `w = θ + P'/P`.

use num_traits::{One, Signed, Zero};

use crate::arith::{nullspace, rat_sqrt, split_denominator, Poly, Rat, RatFunc};

use super::SolveStatus;

/// Largest polynomial degree tried for `P`.
const MAX_DEGREE: i64 = 4096;

/// Rational solutions of the normal-form equation.
#[derive(Clone, Debug, Default)]
pub(crate) struct NormalSolutions {
    /// Solutions from one-dimensional kernels, plus the distinguished
    /// lowest-degree member of a two-dimensional kernel.
    pub isolated: Vec<RatFunc>,
    /// `θ + P'/P` for the two further members of a two-dimensional kernel.
    pub family: Option<[RatFunc; 2]>,
    pub status: Option<SolveStatus>,
}

/// One admissible choice at a place: a `θ` contribution and an exponent.
#[derive(Clone, Debug)]
struct Choice {
    part: RatFunc,
    alpha: Rat,
}

fn half() -> Rat {
    Rat::new(1.into(), 2.into())
}

fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Power series of `n/d` at 0 to `k` terms; `d(0) ≠ 0`.
fn series(n: &Poly, d: &Poly, k: usize) -> Vec<Rat> {
    let d0 = d.coeff(0);
    let mut out: Vec<Rat> = Vec::with_capacity(k);
    for i in 0..k {
        let mut acc = n.coeff(i);
        for j in 1..=i {
            acc -= d.coeff(j) * &out[i - j];
        }
        out.push(acc / &d0);
    }
    out
}

/// Square root of a power series with a rational-square leading term.
fn series_sqrt(s: &[Rat]) -> Option<Vec<Rat>> {
    let a0 = rat_sqrt(&s[0])?;
    let mut a = vec![a0.clone()];
    for k in 1..s.len() {
        let mut acc = s[k].clone();
        for i in 1..k {
            acc -= &a[i] * &a[k - i];
        }
        a.push(acc / (q(2) * &a0));
    }
    Some(a)
}

/// Exponents `1/2 ± √(1+4b)/2`, if rational.
fn quadratic_alphas(b: &Rat) -> Option<Vec<Rat>> {
    let s = rat_sqrt(&(q(1) + q(4) * b))?;
    let mut v = vec![half() + &s * half()];
    if !s.is_zero() {
        v.push(half() - &s * half());
    }
    Some(v)
}

enum Local {
    Choices(Vec<Choice>),
    /// No rational solution can exist.
    Impossible,
}

fn pole_choices(r: &RatFunc, c: &Rat, order: u32) -> Local {
    let lin = Poly::linear_root(c);
    if order == 1 {
        return Local::Choices(vec![Choice { part: RatFunc::new(Poly::one(), lin).unwrap(), alpha: q(1) }]);
    }
    if order % 2 == 1 {
        return Local::Impossible;
    }
    let num = r.num().shift(c);
    let den = r.den().shift(c);
    let d0 = den.div_exact(&Poly::t().pow(order));
    let nu = (order / 2) as usize;
    if nu == 1 {
        let b = series(&num, &d0, 1).remove(0);
        return match quadratic_alphas(&b) {
            None => Local::Impossible,
            Some(al) => Local::Choices(
                al.into_iter()
                    .map(|a| Choice { part: RatFunc::new(Poly::constant(a.clone()), lin.clone()).unwrap(), alpha: a })
                    .collect(),
            ),
        };
    }
    let s = series(&num, &d0, nu);
    let Some(a) = series_sqrt(&s) else { return Local::Impossible };
    // [√r]_c = Σ_{i=0}^{ν-2} a_i (x-c)^{-(ν-i)}
    let mut sq = RatFunc::zero();
    for (i, ai) in a.iter().enumerate().take(nu - 1) {
        let term = RatFunc::new(Poly::constant(ai.clone()), lin.pow((nu - i) as u32)).unwrap();
        sq = &sq + &term;
    }
    let last = &a[nu - 1];
    let nu_half = q(nu as i64) * half();
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        let alpha = q(sign) * last + &nu_half;
        let part = &sq.scale(&q(sign)) + &RatFunc::new(Poly::constant(alpha.clone()), lin.clone()).unwrap();
        out.push(Choice { part, alpha });
    }
    Local::Choices(out)
}

fn infinity_choices(r: &RatFunc) -> Local {
    if r.is_zero() {
        return Local::Choices(vec![
            Choice { part: RatFunc::zero(), alpha: q(0) },
            Choice { part: RatFunc::zero(), alpha: q(1) },
        ]);
    }
    let o = -r.degree().unwrap();
    if o > 2 {
        return Local::Choices(vec![
            Choice { part: RatFunc::zero(), alpha: q(0) },
            Choice { part: RatFunc::zero(), alpha: q(1) },
        ]);
    }
    if o == 2 {
        let b = r.num().lc() / r.den().lc();
        return match quadratic_alphas(&b) {
            None => Local::Impossible,
            Some(al) => Local::Choices(al.into_iter().map(|a| Choice { part: RatFunc::zero(), alpha: a }).collect()),
        };
    }
    if o % 2 != 0 {
        return Local::Impossible;
    }
    let nu = (-o / 2) as usize;
    let rev = |p: &Poly| Poly::from_coeffs(p.coeffs().iter().rev().cloned().collect());
    let s = series(&rev(r.num()), &rev(r.den()), nu + 2);
    let Some(a) = series_sqrt(&s) else { return Local::Impossible };
    // [√r]_∞ = Σ_{i=0}^{ν} a_i x^{ν-i}
    let sq = RatFunc::from_poly(Poly::from_coeffs((0..=nu).map(|k| a[nu - k].clone()).collect()));
    let nu_half = q(nu as i64) * half();
    let mut out = Vec::new();
    for sign in [1i64, -1] {
        out.push(Choice { part: sq.scale(&q(sign)), alpha: q(sign) * &a[nu + 1] - &nu_half });
    }
    Local::Choices(out)
}

/// Kernel of `P ↦ P'' + 2θP' + (θ' + θ² - r)P` on polynomials of degree ≤ d.
fn poly_kernel(theta: &RatFunc, r: &RatFunc, d: usize) -> Vec<Poly> {
    let qf = &(&theta.d_dt() + &(theta * theta)) - r;
    let l = lcm(theta.den(), qf.den());
    let tn = theta.num() * &l.div_exact(theta.den());
    let qn = qf.num() * &l.div_exact(qf.den());
    let cols: Vec<Poly> = (0..=d)
        .map(|k| {
            let kk = q(k as i64);
            let mut acc = &Poly::monomial(Rat::one(), k) * &qn;
            if k >= 1 {
                acc = &acc + &(&Poly::monomial(q(2) * &kk, k - 1) * &tn);
            }
            if k >= 2 {
                acc = &acc + &(&Poly::monomial(&kk * (&kk - q(1)), k - 2) * &l);
            }
            acc
        })
        .collect();
    let rows_n = cols.iter().map(|c| c.degree().map_or(0, |x| x + 1)).max().unwrap_or(0);
    let rows: Vec<Vec<Rat>> = (0..rows_n).map(|j| cols.iter().map(|c| c.coeff(j)).collect()).collect();
    nullspace(rows, d + 1).into_iter().map(Poly::from_coeffs).collect()
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    (a * &b.div_exact(&a.gcd(b))).monic()
}

fn w_of(theta: &RatFunc, p: &Poly) -> RatFunc {
    theta + &RatFunc::new(p.derivative(), p.clone()).unwrap()
}

/// All rational `w` with `w' + w² = r`, within `budget` exponent choices.
pub(crate) fn normal_form_solutions(r: &RatFunc, budget: usize) -> NormalSolutions {
    let mut out = NormalSolutions::default();
    let mut places: Vec<Vec<Choice>> = Vec::new();
    for (g, m) in split_denominator(r.den()) {
        if g.degree() == Some(1) {
            let c = -g.coeff(0);
            match pole_choices(r, &c, m) {
                Local::Choices(ch) => places.push(ch),
                Local::Impossible => return out,
            }
        } else if m == 1 {
            let deg = q(g.degree().unwrap() as i64);
            places.push(vec![Choice { part: RatFunc::new(g.derivative(), g.clone()).unwrap(), alpha: deg }]);
        } else if m % 2 == 1 {
            return out;
        } else {
            out.status = Some(SolveStatus::BestEffort);
        }
    }
    let inf = match infinity_choices(r) {
        Local::Choices(ch) => ch,
        Local::Impossible => return out,
    };
    places.push(inf);

    let total: usize = places.iter().map(|p| p.len()).try_fold(1usize, |a, b| a.checked_mul(b)).unwrap_or(usize::MAX);
    if total > budget {
        out.status = Some(SolveStatus::BudgetExceeded);
        return out;
    }
    let mut seen: Vec<RatFunc> = Vec::new();
    let mut idx = vec![0usize; places.len()];
    loop {
        let inf_choice = &places[places.len() - 1][idx[places.len() - 1]];
        let mut d = inf_choice.alpha.clone();
        let mut theta = inf_choice.part.clone();
        for (k, p) in places[..places.len() - 1].iter().enumerate() {
            let ch = &p[idx[k]];
            d -= &ch.alpha;
            theta = &theta + &ch.part;
        }
        if d.is_integer() && !d.is_negative() && d.to_integer() <= MAX_DEGREE.into() {
            let deg: usize = d.to_integer().try_into().unwrap();
            let ker = poly_kernel(&theta, r, deg);
            match ker.len() {
                0 => {}
                1 => push_new(&mut seen, &mut out.isolated, w_of(&theta, &ker[0])),
                _ => {
                    let (pa, pb) = (&ker[0], &ker[1]);
                    push_new(&mut seen, &mut out.isolated, w_of(&theta, pa));
                    if out.family.is_none() {
                        let f1 = w_of(&theta, pb);
                        let f2 = w_of(&theta, &(pb + pa));
                        seen.push(f1.clone());
                        seen.push(f2.clone());
                        out.family = Some([f1, f2]);
                    }
                }
            }
        } else if d.is_integer() && !d.is_negative() {
            out.status = Some(SolveStatus::BudgetExceeded);
        }
        // Advance the mixed-radix counter.
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < places[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn push_new(seen: &mut Vec<RatFunc>, out: &mut Vec<RatFunc>, w: RatFunc) {
    if !seen.contains(&w) {
        seen.push(w.clone());
        out.push(w);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    fn check(r: &RatFunc, sols: &NormalSolutions) {
        let all = sols.isolated.iter().chain(sols.family.iter().flatten());
        for w in all {
            assert_eq!(&w.d_dt() + &(w * w), *r, "w = {w}");
        }
    }

    #[test]
    fn zero_potential() {
        let r = RatFunc::zero();
        let s = normal_form_solutions(&r, 100);
        check(&r, &s);
        assert_eq!(s.isolated, vec![RatFunc::zero()]);
        assert_eq!(s.family, Some([rf(&[1], &[0, 1]), rf(&[1], &[1, 1])]));
    }

    #[test]
    fn airy_has_none() {
        let s = normal_form_solutions(&RatFunc::t(), 100);
        assert!(s.isolated.is_empty() && s.family.is_none());
    }

    #[test]
    fn high_order_pole() {
        // w = 1/t^2 + 1/t: w' + w^2 = 1/t^4 + 2/t^3 - 1/t^2 ... built directly
        let w = rf(&[1, 1], &[0, 0, 1]);
        let r = &w.d_dt() + &(&w * &w);
        let s = normal_form_solutions(&r, 100);
        check(&r, &s);
        assert!(s.isolated.contains(&w) || s.family.iter().flatten().any(|x| *x == w));
    }

    #[test]
    fn polynomial_potential() {
        // w = t: r = 1 + t^2
        let w = RatFunc::t();
        let r = &w.d_dt() + &(&w * &w);
        let s = normal_form_solutions(&r, 100);
        check(&r, &s);
        assert!(s.isolated.contains(&w));
    }
}
