//! Exact solvers for first-order linear and Riccati equations over ℚ(t).

mod kovacic;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{lcm_denominators, logderiv_residues, product_of_powers, rational_roots, Rat, RatFunc};
use crate::quat::{DerivationSpec, QuatAlgebra, RiccatiEq};
use crate::tower::{Extension, Tower, TowerElem, TowerStep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OdeError {
    #[error("only t' = 1 is supported by this solver")]
    UnsupportedDerivation,
    #[error("coefficients must lie in Q(t)")]
    NotBaseField,
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// How far a search result can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    /// Every solution of the requested kind was found.
    Complete,
    /// Some poles fell outside the supported class; solutions may be missing.
    BestEffort,
    /// The work budget ran out before the search finished.
    BudgetExceeded,
}

/// `θ` with `θ^n = f`, solving `Y' = aY`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalSolution {
    pub n: u32,
    pub f: RatFunc,
}

impl RadicalSolution {
    /// Adjoin `θ` to `tw` (no step when `n = 1`).
    pub fn adjoin(&self, tw: &Arc<Tower>, name: &str) -> Result<Extension, crate::tower::TowerError> {
        if self.n == 1 {
            return Ok(Extension::trivial(tw.from_base(&self.f)));
        }
        tw.adjoin(TowerStep::Radical { n: self.n as usize, f: tw.from_base(&self.f), name: name.into() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiccatiSolutionSet {
    pub isolated: Vec<RatFunc>,
    /// Two members of a one-parameter family of rational solutions.
    pub family: Option<[RatFunc; 2]>,
    /// For a homogeneous linear equation, a radical solution.
    pub radical: Option<RadicalSolution>,
    pub status: SolveStatus,
}

impl RiccatiSolutionSet {
    fn empty() -> Self {
        RiccatiSolutionSet { isolated: Vec::new(), family: None, radical: None, status: SolveStatus::Complete }
    }

    /// Every rational solution listed, isolated first.
    pub fn all(&self) -> Vec<RatFunc> {
        self.isolated.iter().chain(self.family.iter().flatten()).cloned().collect()
    }
}

/// Minimal `n ≥ 1` and `f` with `n·a = f'/f`, or `None`.
pub fn logderiv_multiple(a: &RatFunc, t_prime: &RatFunc) -> Result<Option<(u32, RatFunc)>, OdeError> {
    if !t_prime.is_one() {
        return Err(OdeError::UnsupportedDerivation);
    }
    let parts = logderiv_residues(a);
    if !parts.is_pure_log_derivative() {
        return Ok(None);
    }
    let n = lcm_denominators(parts.terms.iter().map(|(_, r)| r));
    let Ok(n32) = u32::try_from(&n) else { return Ok(None) };
    let nr = Rat::from_integer(n);
    let powers: Vec<_> = parts
        .terms
        .iter()
        .map(|(g, r)| {
            let e: BigInt = (r * &nr).to_integer();
            (g.clone(), i64::try_from(&e).expect("exponent fits"))
        })
        .collect();
    Ok(Some((n32, product_of_powers(&powers))))
}

/// Minimal-index radical solution of `Y' = aY` with `n ≤ n_max`.
pub fn solve_linear_radical(a: &RatFunc, t_prime: &RatFunc, n_max: u32) -> Result<Option<RadicalSolution>, OdeError> {
    Ok(logderiv_multiple(a, t_prime)?.filter(|(n, _)| *n <= n_max).map(|(n, f)| RadicalSolution { n, f }))
}

fn riccati_residual(a0: &RatFunc, a1: &RatFunc, a2: &RatFunc, x: &RatFunc) -> RatFunc {
    &x.d_dt() - &(&(a0 + &(a1 * x)) + &(a2 * &(x * x)))
}

/// Rational solutions of `X' = a0 + a1·X + a2·X²` over ℚ(t), `t' = 1`.
pub fn riccati_rational_solutions(eq: &RiccatiEq, n_max: u32, budget: usize) -> Result<RiccatiSolutionSet, OdeError> {
    if !eq.tower().t_prime().is_one() {
        return Err(OdeError::UnsupportedDerivation);
    }
    let (a0, a1, a2) = eq.base_coeffs().ok_or(OdeError::NotBaseField)?;
    riccati_rational_base(&a0, &a1, &a2, n_max, budget)
}

/// [`riccati_rational_solutions`] on bare coefficients.
pub fn riccati_rational_base(
    a0: &RatFunc,
    a1: &RatFunc,
    a2: &RatFunc,
    n_max: u32,
    budget: usize,
) -> Result<RiccatiSolutionSet, OdeError> {
    let one = RatFunc::one();
    let mut out = RiccatiSolutionSet::empty();
    if a2.is_zero() {
        if a0.is_zero() {
            // X' = a1·X: 0 and, when a1 is a log-derivative, c·f.
            out.isolated.push(RatFunc::zero());
            if let Some(rs) = solve_linear_radical(a1, &one, n_max)? {
                if rs.n == 1 {
                    out.family = Some([rs.f.clone(), rs.f.scale(&Rat::from_integer(2.into()))]);
                }
                out.radical = Some(rs);
            }
            return Ok(out);
        }
        // X = 1/Y turns X' = a0 + a1·X into Y' = -a1·Y - a0·Y².
        let inner = riccati_rational_base(&RatFunc::zero(), &-a1, &-a0, n_max, budget)?;
        let inv = |v: &Vec<RatFunc>| v.iter().filter(|y| !y.is_zero()).map(|y| y.inv().unwrap()).collect::<Vec<_>>();
        out.isolated = inv(&inner.isolated);
        if let Some(fam) = &inner.family {
            if fam.iter().all(|y| !y.is_zero()) {
                out.family = Some([fam[0].inv().unwrap(), fam[1].inv().unwrap()]);
            } else {
                out.isolated.extend(inv(&fam.to_vec()));
            }
        }
        out.status = inner.status;
        sort_and_check(&mut out, a0, a1, a2);
        return Ok(out);
    }
    // y'' + p·y' + q·y = 0 with X = -y'/(a2·y); w = y'/y + p/2 solves w' + w² = r.
    let a2d = a2.d_dt();
    let p = -&(a1 + &a2d.checked_div(a2).unwrap());
    let q = a0 * a2;
    let half = Rat::new(1.into(), 2.into());
    let r = &(&p.d_dt().scale(&half) + &(&p * &p).scale(&Rat::new(1.into(), 4.into()))) - &q;
    let sols = kovacic::normal_form_solutions(&r, budget);
    let hp = p.scale(&half);
    let to_x = |w: &RatFunc| -&(w - &hp).checked_div(a2).unwrap();
    out.isolated = sols.isolated.iter().map(to_x).collect();
    out.family = sols.family.map(|[f, g]| [to_x(&f), to_x(&g)]);
    out.status = sols.status.unwrap_or(SolveStatus::Complete);
    sort_and_check(&mut out, a0, a1, a2);
    Ok(out)
}

fn sort_and_check(out: &mut RiccatiSolutionSet, a0: &RatFunc, a1: &RatFunc, a2: &RatFunc) {
    for x in out.all() {
        assert!(riccati_residual(a0, a1, a2, &x).is_zero(), "solver produced a non-solution {x}");
    }
    out.isolated.sort_by_key(|x| x.render());
    out.isolated.dedup();
    if out.family.is_none() && out.isolated.len() >= 3 {
        let fam = [out.isolated[1].clone(), out.isolated[2].clone()];
        out.isolated.drain(1..3);
        out.family = Some(fam);
    }
}

/// `±η` solving the splitting equation when `ϑ ∈ k·v` (`η² = β`) or
/// `ϑ ∈ k·uv` (`η² = -β`).
#[derive(Clone, Debug)]
pub struct PatternSolution {
    pub ext: Extension,
    pub eta: TowerElem,
    pub solutions: [TowerElem; 2],
}

pub fn riccati_pattern_solutions(
    eq: &RiccatiEq,
    alg: &QuatAlgebra,
    spec: &DerivationSpec,
) -> Option<PatternSolution> {
    let sq = if spec.a1.is_zero() && spec.a3.is_zero() && !spec.a2.is_zero() {
        alg.beta.clone()
    } else if spec.a1.is_zero() && spec.a2.is_zero() && !spec.a3.is_zero() {
        -&alg.beta
    } else {
        return None;
    };
    let tw = eq.tower();
    let ext = match sq.sqrt() {
        Some(r) => Extension::trivial(tw.from_base(&r)),
        None => {
            let name = fresh_name(tw, "eta");
            tw.adjoin(TowerStep::Radical { n: 2, f: tw.from_base(&sq), name }).ok()?
        }
    };
    let eq2 = eq.map(|e| ext.carry(e));
    let eta = ext.generator.clone();
    let sols = [eta.clone(), -&eta];
    if sols.iter().all(|s| eq2.is_solution(s)) {
        Some(PatternSolution { ext, eta, solutions: sols })
    } else {
        None
    }
}

/// `base`, or `base` with a numeric suffix, not yet used in `tw`.
pub fn fresh_name(tw: &Tower, base: &str) -> String {
    if tw.find(base).is_none() {
        return base.into();
    }
    (2..).map(|i| format!("{base}{i}")).find(|n| tw.find(n).is_none()).unwrap()
}

/// Zeros and poles of `f` under `t' = α0 + α1·t + α2·t²`, each checked
/// against `X' = α0 + α1·X + α2·X²` as a constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPoleReport {
    pub points: Vec<(Rat, bool)>,
    pub all_verified: bool,
}

pub fn zeropole_oracle(t_prime: &RatFunc, f: &RatFunc, n: i64) -> Result<ZeroPoleReport, OdeError> {
    let tp = t_prime
        .as_poly()
        .filter(|p| p.degree().is_none_or(|d| d <= 2))
        .ok_or_else(|| OdeError::Precondition("t' must be a polynomial of degree at most 2".into()))?;
    let (c0, c1, c2) = (tp.coeff(0), tp.coeff(1), tp.coeff(2));
    let half = Rat::new(1.into(), 2.into());
    let rate = RatFunc::from_poly(crate::arith::Poly::from_coeffs(vec![&c1 * &half, c2.clone()]))
        .scale(&Rat::from_integer(n.into()));
    if f.is_zero() || f.derive(t_prime) != &rate * f {
        return Err(OdeError::Precondition("f' = n(α1/2 + α2 t) f does not hold".into()));
    }
    let mut points = Vec::new();
    for p in [f.num(), f.den()] {
        for g in rational_roots(p).expect("nonzero") {
            let rhs = &(&c0 + &(&c1 * &g)) + &(&c2 * &(&g * &g));
            points.push((g, rhs.is_zero()));
        }
    }
    let all_verified = points.iter().all(|(_, ok)| *ok);
    Ok(ZeroPoleReport { points, all_verified })
}

#[cfg(test)]
mod tests;
