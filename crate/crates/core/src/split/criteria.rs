//! Finite-splitting witnesses and algebraic non-splitting tests for
//! `d = d_(u,v) + ∂_{a·u}` over ℚ(t), `t' = 1`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{Poly, Rat, RatFunc};
use crate::quat::{DerivationSpec, QuatAlgebra};
use crate::tower::{Tower, TowerStep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CriteriaError {
    #[error("q = n·α·(γ0² - α·γ1²) vanishes")]
    ZeroQ,
    #[error("γ0 and γ1 are both zero")]
    ZeroWitness,
    #[error("n must be at least 1")]
    BadIndex,
    #[error("θ is zero")]
    ZeroTheta,
    #[error("α must be a polynomial of odd degree")]
    EvenDegree,
}

/// `θ = c·(γ0 + ξγ1)/(γ0 - ξγ1)` with `a = θ'/(nξθ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteWitness {
    #[serde(serialize_with = "ser_poly")]
    pub gamma0: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub gamma1: Poly,
    pub n: u32,
    #[serde(serialize_with = "crate::io::ser_rat")]
    pub c: Rat,
}

fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `2(deg g - deg f) < deg α + 3`.
    A,
    /// Some factor `h` of `α` has `h² | g`.
    B,
}

/// How conditions (a) and (b) combine.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CriteriaMode {
    #[default]
    Disjunction,
    Conjunction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Verdict {
    FinitelySplit { witness: FiniteWitness },
    NotSplitByAlgebraic { conditions: Vec<Condition> },
    NoVerdict,
    Note { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriteriaVerdict {
    pub verdict: Verdict,
    pub evidence: Vec<String>,
}

impl CriteriaVerdict {
    /// True for verdicts that rule splitting out.
    pub fn is_negative(&self) -> bool {
        matches!(self.verdict, Verdict::NotSplitByAlgebraic { .. })
    }
}

/// `p = 2α(γ0γ1' - γ0'γ1) + α'γ0γ1` and `q1 = α(γ0² - αγ1²)`.
fn witness_pq(alpha: &Poly, g0: &Poly, g1: &Poly) -> (Poly, Poly) {
    let two = Rat::from_integer(2.into());
    let p = &(alpha * &(&(g0 * &g1.derivative()) - &(&g0.derivative() * g1))).scale(&two)
        + &(&alpha.derivative() * &(g0 * g1));
    let q1 = alpha * &(&(g0 * g0) - &(alpha * &(g1 * g1)));
    (p, q1)
}

/// Whether `a = p/q` for the witness `(γ0, γ1, n)`; `c` does not enter.
pub fn finite_split_witness_check(
    alpha: &Poly,
    a: &RatFunc,
    g0: &Poly,
    g1: &Poly,
    n: u32,
    _c: &Rat,
) -> Result<bool, CriteriaError> {
    if g0.is_zero() && g1.is_zero() {
        return Err(CriteriaError::ZeroWitness);
    }
    if n == 0 {
        return Err(CriteriaError::BadIndex);
    }
    let (p, q1) = witness_pq(alpha, g0, g1);
    if q1.is_zero() {
        return Err(CriteriaError::ZeroQ);
    }
    let q = q1.scale(&Rat::from_integer(n.into()));
    Ok(a == &RatFunc::new(p, q).expect("q nonzero"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum SearchOutcome {
    Found { witness: FiniteWitness },
    /// Every candidate within the bounds was tried.
    Exhausted,
    BudgetExceeded,
}

/// Integer polynomials of degree `≤ bound` with coefficients in `-2..=2`.
fn small_polys(bound: usize) -> Vec<Poly> {
    let mut out = vec![Vec::<i64>::new()];
    for _ in 0..=bound {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-2..=2).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    let mut polys: Vec<Poly> = out.iter().map(|v| Poly::from_ints(v)).collect();
    polys.sort_by_key(|p| p.degree().map_or(0, |d| d + 1));
    polys.dedup();
    polys
}

fn is_normalized(g0: &Poly, g1: &Poly) -> bool {
    let cs: Vec<&Rat> = g0.coeffs().iter().chain(g1.coeffs()).collect();
    let Some(first) = cs.iter().find(|c| !c.is_zero()) else { return false };
    if first.is_negative() {
        return false;
    }
    let g = cs.iter().fold(num_bigint::BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c.numer()));
    g == num_bigint::BigInt::from(1)
}

/// Enumerate small witnesses `(γ0, γ1, n)` for `a`.
pub fn finite_split_search(alpha: &Poly, a: &RatFunc, degree_bound: usize, n_max: u32, budget: usize) -> SearchOutcome {
    let one = Rat::from_integer(1.into());
    if a.is_zero() {
        let witness = FiniteWitness { gamma0: Poly::one(), gamma1: Poly::zero(), n: 1, c: one };
        return SearchOutcome::Found { witness };
    }
    let polys = small_polys(degree_bound);
    let deg = |p: &Poly| p.degree().map_or(0, |d| d + 1);
    let mut spent = 0;
    for level in 0..=degree_bound + 1 {
        let upto = polys.partition_point(|p| deg(p) <= level);
        for g0 in &polys[..upto] {
            for g1 in &polys[..upto] {
                if deg(g0).max(deg(g1)) != level || !is_normalized(g0, g1) {
                    continue;
                }
                if spent >= budget {
                    return SearchOutcome::BudgetExceeded;
                }
                spent += 1;
                let (p, q1) = witness_pq(alpha, g0, g1);
                if p.is_zero() || q1.is_zero() {
                    continue;
                }
                let ratio = RatFunc::new(p, q1).expect("nonzero").checked_div(a).expect("a nonzero");
                let Some(n) = ratio.as_rat() else { continue };
                if !n.is_integer() || !n.is_positive() || n > Rat::from_integer(n_max.into()) {
                    continue;
                }
                let n = u32::try_from(n.to_integer()).expect("bounded by n_max");
                let witness = FiniteWitness { gamma0: g0.clone(), gamma1: g1.clone(), n, c: one };
                return SearchOutcome::Found { witness };
            }
        }
    }
    SearchOutcome::Exhausted
}

/// For `θ = g0 + ξ·g1` with `ξ² = α`: whether `θ'/θ ∈ ξ·k`, and whether
/// `N(θ) = g0² - α·g1²` is constant, each computed on its own.
pub fn norm_constant_check(alpha: &RatFunc, g0: &RatFunc, g1: &RatFunc) -> Result<(bool, bool), CriteriaError> {
    let norm = &(g0 * g0) - &(alpha * &(g1 * g1));
    if g0.is_zero() && g1.is_zero() {
        return Err(CriteriaError::ZeroTheta);
    }
    let norm_constant = norm.d_dt().is_zero();
    let tw = Tower::standard();
    let logderiv_in_xi_k = match alpha.sqrt() {
        // ξ ∈ k: ξk = k, and θ'/θ always lies there.
        Some(_) => true,
        None => {
            let ext = tw
                .adjoin(TowerStep::Radical { n: 2, f: tw.from_base(alpha), name: "xi".into() })
                .expect("nonzero radicand");
            let xi = &ext.generator;
            let th = &ext.tower.from_base(g0) + &(xi * &ext.tower.from_base(g1));
            if th.is_zero() {
                return Err(CriteriaError::ZeroTheta);
            }
            let l = th.derive().checked_div(&th).expect("θ nonzero");
            l.checked_div(xi).expect("ξ nonzero").as_base().is_some()
        }
    };
    Ok((logderiv_in_xi_k, norm_constant))
}

/// Algebraic non-splitting test for `a = f/g` over odd-degree `α`.
pub fn nonsplit_algebraic_check(alpha: &Poly, a: &RatFunc, mode: CriteriaMode) -> Result<CriteriaVerdict, CriteriaError> {
    let m = alpha.degree().ok_or(CriteriaError::EvenDegree)?;
    if m % 2 == 0 {
        return Err(CriteriaError::EvenDegree);
    }
    if a.is_zero() {
        return Ok(CriteriaVerdict { verdict: Verdict::NoVerdict, evidence: vec!["a = 0".into()] });
    }
    let (f, g) = (a.num(), a.den());
    let (df, dg) = (f.deg_i(), g.deg_i());
    let mut evidence = Vec::new();
    let cond_a = 2 * (dg - df) < m as i64 + 3;
    evidence.push(format!(
        "(a) deg g - deg f = {} {} {}/2 = (deg alpha + 3)/2",
        dg - df,
        if cond_a { "<" } else { ">=" },
        m + 3
    ));
    let h = alpha.gcd(g).gcd(&g.derivative());
    let cond_b = !h.is_constant();
    if cond_b {
        evidence.push(format!("(b) h = {h} divides alpha and h^2 divides g = {g}"));
    } else {
        evidence.push(format!("(b) no factor h of alpha has h^2 dividing g = {g}"));
    }
    let conditions: Vec<Condition> =
        [(cond_a, Condition::A), (cond_b, Condition::B)].into_iter().filter(|(on, _)| *on).map(|(_, c)| c).collect();
    let fires = match mode {
        CriteriaMode::Disjunction => !conditions.is_empty(),
        CriteriaMode::Conjunction => conditions.len() == 2,
    };
    let verdict = if fires { Verdict::NotSplitByAlgebraic { conditions } } else { Verdict::NoVerdict };
    Ok(CriteriaVerdict { verdict, evidence })
}

fn wrap(p: &Poly) -> String {
    if p.term_count() > 1 || p.lc() < Rat::zero() {
        format!("({p})")
    } else {
        p.to_string()
    }
}

/// Every applicable criterion for a problem, in a fixed order.
pub fn analyze_criteria(
    alg: &QuatAlgebra,
    spec: &DerivationSpec,
    mode: CriteriaMode,
    degree_bound: usize,
    n_max: u32,
    budget: usize,
) -> Vec<CriteriaVerdict> {
    if alg.t_prime().is_zero() {
        let message = if spec.is_zero() {
            "t' = 0 and the derivation is trivial on Q: splitting reduces to the algebra itself".into()
        } else {
            "t' = 0: splitting over the constants requires a division-algebra test, which is not attempted".into()
        };
        return vec![CriteriaVerdict { verdict: Verdict::Note { message }, evidence: vec![] }];
    }
    let shape_ok = alg.t_prime().is_one() && spec.a2.is_zero() && spec.a3.is_zero();
    let alpha = alg.alpha.as_poly().filter(|p| p.degree().is_some_and(|d| d % 2 == 1));
    let (Some(alpha), true) = (alpha, shape_ok) else {
        let message = "criteria need t' = 1, an odd-degree polynomial alpha and a derivation of the form d_(u,v) + a*u".into();
        return vec![CriteriaVerdict { verdict: Verdict::Note { message }, evidence: vec![] }];
    };
    // ϑ = a1·u gives a = a1 in the shape d_(u,v) + ∂_{a·u}.
    let a = &spec.a1;
    let mut out = Vec::new();
    match finite_split_search(alpha, a, degree_bound, n_max, budget) {
        SearchOutcome::Found { witness } => {
            let (g0, g1) = (&witness.gamma0, &witness.gamma1);
            let xi_term = if g1.is_one() { "xi".to_string() } else { format!("{}*xi", wrap(g1)) };
            let evidence = vec![format!(
                "a = theta'/(n*xi*theta) with theta = ({0} + {1})/({0} - {1}), n = {2}",
                g0, xi_term, witness.n
            )];
            out.push(CriteriaVerdict { verdict: Verdict::FinitelySplit { witness }, evidence });
        }
        SearchOutcome::Exhausted => out.push(CriteriaVerdict {
            verdict: Verdict::NoVerdict,
            evidence: vec![format!("no witness with degree <= {degree_bound} and n <= {n_max}")],
        }),
        SearchOutcome::BudgetExceeded => out.push(CriteriaVerdict {
            verdict: Verdict::NoVerdict,
            evidence: vec![format!("witness search stopped after {budget} candidates")],
        }),
    }
    out.push(nonsplit_algebraic_check(alpha, a, mode).expect("odd degree checked"));
    out
}
