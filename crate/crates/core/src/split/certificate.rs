//! Splitting certificates: a tower `L ⊇ k`, two Riccati solutions, a
//! multiplier `μ` and the matrix `F ∈ SL_2(L)` with `F' = PF`.

use std::sync::Arc;

use crate::arith::rat;
use crate::io::parse_tower_expr;
use crate::ode::{
    fresh_name, riccati_pattern_solutions, riccati_rational_solutions, solve_linear_radical, SolveStatus,
};
use crate::quat::{resolve_xi, DerivationSpec, Mat2, QuatAlgebra, QuatError, RiccatiEq};
use crate::tower::{Extension, StepInfo, Tower, TowerElem, TowerError, TowerStep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error(transparent)]
    Quat(#[from] QuatError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error("hint `{hint}`: {msg}")]
    Hint { hint: String, msg: String },
    #[error("internal verification failed: {0}")]
    Internal(String),
    #[error("{0}")]
    Riccati(String),
}

/// A tower step the caller knows analytically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hint {
    Radical { n: usize, expr: String },
    Primitive { expr: String },
    HyperExp { expr: String },
    /// Skip the solvers and adjoin generic Riccati generators.
    RiccatiAuto,
}

impl Hint {
    /// `radical:n:expr`, `primitive:expr`, `hyperexp:expr` or `riccati:auto`.
    pub fn parse(s: &str) -> Result<Hint, String> {
        let s = s.trim();
        if s == "riccati:auto" {
            return Ok(Hint::RiccatiAuto);
        }
        let (kind, rest) = s.split_once(':').ok_or_else(|| format!("malformed hint `{s}`"))?;
        match kind.trim() {
            "radical" => {
                let (n, expr) = rest.split_once(':').ok_or_else(|| format!("malformed hint `{s}`"))?;
                let n = n.trim().parse().map_err(|_| format!("bad radical index in `{s}`"))?;
                Ok(Hint::Radical { n, expr: expr.trim().into() })
            }
            "primitive" => Ok(Hint::Primitive { expr: rest.trim().into() }),
            "hyperexp" => Ok(Hint::HyperExp { expr: rest.trim().into() }),
            _ => Err(format!("unknown hint kind in `{s}`")),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Hint::Radical { n, expr } => format!("radical:{n}:{expr}"),
            Hint::Primitive { expr } => format!("primitive:{expr}"),
            Hint::HyperExp { expr } => format!("hyperexp:{expr}"),
            Hint::RiccatiAuto => "riccati:auto".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SplitOptions {
    pub n_max: u32,
    pub budget: usize,
    pub hints: Vec<Hint>,
}

impl Default for SplitOptions {
    fn default() -> Self {
        SplitOptions { n_max: 16, budget: 10_000, hints: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCertificate {
    pub algebra: QuatAlgebra,
    pub spec: DerivationSpec,
    pub tower: Arc<Tower>,
    pub xi: TowerElem,
    pub p: Mat2,
    pub lambda1: TowerElem,
    pub lambda2: TowerElem,
    pub mu: TowerElem,
    pub f: Mat2,
    pub verified: bool,
    pub trdeg: usize,
    pub notes: Vec<String>,
}

/// `[[λ1μ, λ2/(μ(λ1-λ2))], [μ, 1/(μ(λ1-λ2))]]`.
pub fn build_f(lambda1: &TowerElem, lambda2: &TowerElem, mu: &TowerElem) -> Result<Mat2, TowerError> {
    let s = (mu * &(lambda1 - lambda2)).inv()?;
    Ok(Mat2::new(lambda1 * mu, lambda2 * &s, mu.clone(), s))
}

/// The tower under construction together with every element that must
/// follow it through later extensions.
struct State {
    tw: Arc<Tower>,
    xi: TowerElem,
    eq: RiccatiEq,
    sols: Vec<TowerElem>,
}

impl State {
    fn apply(&mut self, ext: &Extension) {
        self.xi = ext.carry(&self.xi);
        self.eq = self.eq.map(|e| ext.carry(e));
        self.sols = self.sols.iter().map(|s| ext.carry(s)).collect();
        self.tw = ext.tower.clone();
    }

    fn push(&mut self, x: TowerElem) {
        debug_assert!(self.eq.is_solution(&x));
        if self.sols.len() < 2 && !self.sols.contains(&x) {
            self.sols.push(x);
        }
    }

    fn done(&self) -> bool {
        self.sols.len() >= 2
    }
}

/// Build and verify a splitting certificate.
pub fn construct_certificate(
    alg: &QuatAlgebra,
    spec: &DerivationSpec,
    opts: &SplitOptions,
) -> Result<SplitCertificate, SplitError> {
    let base = alg.base_tower();
    let ext = resolve_xi(alg, &base)?;
    let xi = ext.generator.clone();
    let eq = alg.build_riccati(spec, &xi)?;
    let mut st = State { tw: ext.tower.clone(), xi, eq, sols: Vec::new() };
    let mut notes = Vec::new();
    let mut mu: Option<TowerElem> = None;
    let auto = opts.hints.contains(&Hint::RiccatiAuto);

    if !auto && st.eq.a0.is_zero() && st.eq.a2c.is_zero() {
        // X' = c·X: ρ and 2ρ for a nonzero solution ρ.
        let c = st.eq.a1c.clone();
        let radical = c
            .as_base()
            .and_then(|cb| solve_linear_radical(&cb, alg.t_prime(), opts.n_max).ok().flatten());
        if let Some(rs) = radical {
            let ext = rs.adjoin(&st.tw, &fresh_name(&st.tw, "theta"))?;
            st.apply(&ext);
            let rho = ext.generator.clone();
            st.push(rho.clone());
            st.push(rho.scale(&rat(2, 1)));
        } else {
            // ν' = -(c/2)ν makes ν⁻² a solution, and ν the multiplier.
            let w = c.scale(&rat(-1, 2));
            let ext = st.tw.adjoin(TowerStep::HyperExp { w, name: fresh_name(&st.tw, "mu") })?;
            st.apply(&ext);
            let nu = ext.generator.clone();
            let rho = nu.pow(-2)?;
            st.push(rho.clone());
            st.push(rho.scale(&rat(2, 1)));
            mu = Some(nu);
        }
    }

    let mut rational_count = None;
    if !auto && !st.done() && alg.t_prime().is_one() && st.eq.base_coeffs().is_some() {
        let set = riccati_rational_solutions(&st.eq, opts.n_max, opts.budget)
            .map_err(|e| SplitError::Riccati(e.to_string()))?;
        match set.status {
            SolveStatus::Complete => {}
            SolveStatus::BestEffort => notes.push("rational Riccati search was best-effort; solutions may be missing".into()),
            SolveStatus::BudgetExceeded => notes.push(format!("rational Riccati search stopped at budget {}", opts.budget)),
        }
        let all = set.all();
        rational_count = Some((all.len(), all.iter().map(|x| x.render()).collect::<Vec<_>>()));
        for x in all {
            st.push(st.tw.from_base(&x));
        }
    }

    if !auto && !st.done() {
        if let Some(pat) = riccati_pattern_solutions(&st.eq, alg, spec) {
            st.apply(&pat.ext);
            for s in pat.solutions {
                st.push(s);
            }
        }
    }

    if !auto && !st.done() {
        apply_hints(&mut st, &opts.hints)?;
    }

    for k in st.sols.len()..2 {
        let name = fresh_name(&st.tw, &format!("lambda{}", k + 1));
        let step = TowerStep::RiccatiGen {
            a0: st.eq.a0.clone(),
            a1: st.eq.a1c.clone(),
            a2: st.eq.a2c.clone(),
            name,
        };
        let ext = st.tw.adjoin(step)?;
        st.apply(&ext);
        st.push(ext.generator.clone());
    }
    if let Some((1, ref shown)) = rational_count {
        if st.tw.tr_degree() > 0 {
            notes.push(format!(
                "the rational Riccati solver found only {{{}}}; the second solution lies in a transcendental extension",
                shown.join(", ")
            ));
        }
    }

    let mu = match mu {
        Some(m) => m.lift_into(&st.tw)?,
        None => {
            let l1 = st.sols[0].clone();
            let rate = alg.build_mu_rate(spec, &st.xi, &l1)?;
            let (ext, m) = find_mu(&st.tw, &rate, alg, opts.n_max)?;
            st.apply(&ext);
            m
        }
    };
    let (l1, l2) = (st.sols[0].clone(), st.sols[1].clone());
    let f = build_f(&l1, &l2, &mu)?;
    let p = alg.build_p(spec, &st.xi)?;
    if !f.det().is_one() {
        return Err(SplitError::Internal("det F != 1".into()));
    }
    if f.derive() != p.mul(&f) {
        return Err(SplitError::Internal("F' != PF".into()));
    }
    let trdeg = st.tw.tr_degree();
    if trdeg > 3 {
        return Err(SplitError::Internal(format!("transcendence degree {trdeg} exceeds 3")));
    }
    Ok(SplitCertificate {
        algebra: alg.clone(),
        spec: spec.clone(),
        tower: st.tw,
        xi: st.xi,
        p,
        lambda1: l1,
        lambda2: l2,
        mu,
        f,
        verified: true,
        trdeg,
        notes,
    })
}

/// A solution `μ ≠ 0` of `μ' = rate·μ`, adjoining a step when needed.
fn find_mu(
    tw: &Arc<Tower>,
    rate: &TowerElem,
    alg: &QuatAlgebra,
    n_max: u32,
) -> Result<(Extension, TowerElem), SplitError> {
    if rate.is_zero() {
        return Ok((Extension::trivial(tw.one()), tw.one()));
    }
    if let Some(r) = rate.as_base() {
        if let Ok(Some(rs)) = solve_linear_radical(&r, alg.t_prime(), n_max) {
            let ext = rs.adjoin(tw, &fresh_name(tw, "mu"))?;
            let m = ext.generator.clone();
            return Ok((ext, m));
        }
    }
    for i in 0..tw.depth() {
        if let (_, StepInfo::HyperExp { w }) = tw.step_info(i) {
            if w.lift_into(tw)? == *rate {
                let g = tw.generator(i);
                return Ok((Extension::trivial(g.clone()), g));
            }
        }
    }
    let ext = tw.adjoin(TowerStep::HyperExp { w: rate.clone(), name: fresh_name(tw, "mu") })?;
    let m = ext.generator.clone();
    Ok((ext, m))
}

/// Adjoin hint steps and look for solutions built from their generators.
/// The tower is left unchanged when no hint produces a new solution.
fn apply_hints(st: &mut State, hints: &[Hint]) -> Result<(), SplitError> {
    let steps: Vec<&Hint> = hints.iter().filter(|h| **h != Hint::RiccatiAuto).collect();
    if steps.is_empty() {
        return Ok(());
    }
    let saved = (st.tw.clone(), st.xi.clone(), st.eq.clone(), st.sols.clone());
    let mut gens = Vec::new();
    for h in steps {
        let bad = |msg: String| SplitError::Hint { hint: h.render(), msg };
        let (step, expr) = match h {
            Hint::Radical { n, expr } => (0, (expr, *n)),
            Hint::Primitive { expr } => (1, (expr, 0)),
            Hint::HyperExp { expr } => (2, (expr, 0)),
            Hint::RiccatiAuto => unreachable!(),
        };
        let v = parse_tower_expr(&st.tw, expr.0).map_err(|e| bad(e.to_string()))?;
        let step = match step {
            0 => TowerStep::Radical { n: expr.1, f: v, name: fresh_name(&st.tw, "rho") },
            1 => TowerStep::Primitive { w: v, name: fresh_name(&st.tw, "ell") },
            _ => TowerStep::HyperExp { w: v, name: fresh_name(&st.tw, "eps") },
        };
        let ext = st.tw.adjoin(step).map_err(|e| bad(e.to_string()))?;
        st.apply(&ext);
        gens = gens.iter().map(|g| ext.carry(g)).collect();
        gens.push(ext.generator.clone());
    }
    let before = st.sols.len();
    let mut cands = Vec::new();
    for g in &gens {
        cands.push(g.clone());
        cands.push(-g);
        if let Ok(gi) = g.inv() {
            cands.push(gi.clone());
            cands.push(-&gi);
        }
    }
    // Reduction of order: λ = λ1 + 1/Y with Y' = -(a1 + 2a2λ1)Y - a2.
    if let Some(l1) = st.sols.first().cloned() {
        let a = -&(&st.eq.a1c + &(&st.eq.a2c * &l1).scale(&rat(2, 1)));
        let b = -&st.eq.a2c;
        for g in &gens {
            let gd = g.derive();
            if a.is_zero() && !gd.is_zero() {
                if let Ok(k) = b.checked_div(&gd) {
                    if k.is_constant() {
                        if let Ok(yi) = (&k * g).inv() {
                            cands.push(&l1 + &yi);
                        }
                    }
                }
            }
        }
    }
    for c in cands {
        if !st.done() && st.eq.is_solution(&c) {
            st.push(c);
        }
    }
    if st.sols.len() == before {
        (st.tw, st.xi, st.eq, st.sols) = saved;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum VerifyFailure {
    XiNotRoot,
    /// The stored `P` differs from the one rebuilt from the problem.
    PMismatch,
    Singular,
    /// `(F' - PF)` is nonzero at this 1-based entry.
    Entry { row: usize, col: usize },
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyFailure::XiNotRoot => f.write_str("xi^2 != alpha"),
            VerifyFailure::PMismatch => f.write_str("stored P does not match the problem"),
            VerifyFailure::Singular => f.write_str("F is singular (det F = 0)"),
            VerifyFailure::Entry { row, col } => write!(f, "F' != PF at entry ({row},{col})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub failure: Option<VerifyFailure>,
    pub det: TowerElem,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Recheck a certificate from its problem data.
pub fn verify_certificate(cert: &SplitCertificate) -> VerifyReport {
    let tw = &cert.tower;
    let det = cert.f.det();
    let fail = |f| VerifyReport { failure: Some(f), det: det.clone() };
    let p = match cert.algebra.build_p(&cert.spec, &cert.xi) {
        Ok(p) => p,
        Err(_) => return fail(VerifyFailure::XiNotRoot),
    };
    if p != cert.p {
        return fail(VerifyFailure::PMismatch);
    }
    if det.is_zero() {
        return fail(VerifyFailure::Singular);
    }
    let lhs = cert.f.derive();
    let rhs = p.mul(&cert.f);
    for i in 0..2 {
        for j in 0..2 {
            if lhs.get(i, j) != rhs.get(i, j) {
                return fail(VerifyFailure::Entry { row: i + 1, col: j + 1 });
            }
        }
    }
    debug_assert!(Arc::ptr_eq(tw, cert.f.tower()) || **tw == **cert.f.tower());
    VerifyReport { failure: None, det }
}

/// Riccati solutions read off `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSolutions {
    /// `f11/f21` and `f12/f22`, each solving the splitting equation.
    pub ratios: Vec<TowerElem>,
    /// When `a2 = a3 = 0`: `f11`, `f12`, solving `X' = P11·X`.
    pub eigen: Option<Vec<TowerElem>>,
}

/// Solutions of the splitting equation obtained from a verified `F`.
pub fn riccati_from_f(cert: &SplitCertificate) -> Result<FSolutions, SplitError> {
    let linear = cert.spec.a2.is_zero() && cert.spec.a3.is_zero();
    let eq = crate::quat::riccati_of_p(&cert.p);
    let f = &cert.f;
    let mut ratios = Vec::new();
    for j in 0..2 {
        let den = f.get(1, j);
        if den.is_zero() {
            if linear {
                continue;
            }
            return Err(SplitError::Internal(format!("f2{} = 0", j + 1)));
        }
        let x = f.get(0, j).checked_div(den)?;
        if !eq.is_solution(&x) {
            return Err(SplitError::Internal(format!("f1{0}/f2{0} does not solve {1}", j + 1, eq.render())));
        }
        ratios.push(x);
    }
    let eigen = linear.then(|| {
        let p11 = cert.p.get(0, 0);
        let sols = vec![f.get(0, 0).clone(), f.get(0, 1).clone()];
        debug_assert!(sols.iter().all(|x| x.derive() == p11 * x));
        sols
    });
    Ok(FSolutions { ratios, eigen })
}

/// Transcendence degree of the certificate tower over ℚ(t).
pub fn trdeg_report(cert: &SplitCertificate) -> usize {
    let d = cert.tower.tr_degree();
    assert!(d <= 3, "certificate tower has transcendence degree {d}");
    d
}
