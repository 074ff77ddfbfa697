//! Standard derivations: anticommuting eigen-elements `ũ, ṽ` of `d` with
//! `ũ², ṽ² ∈ k^×`.

use serde::Serialize;

use crate::arith::RatFunc;
use crate::ode::{logderiv_multiple, riccati_rational_base, SolveStatus};
use crate::quat::{DerivationSpec, Mat2, QuatAlgebra, QuatElem};
use crate::tower::TowerElem;

use super::{SplitCertificate, SplitError};

const NAMES: [&str; 3] = ["u", "v", "uv"];

/// Coordinates on `u, v, uv`.
pub type Pure = [RatFunc; 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum StandardReport {
    Standard { u: String, v: String },
    NotStandard { evidence: String },
    Inconclusive { reason: String },
}

/// `M` with `d(x) = x' + M·x` on pure coordinates.
fn pure_matrix(alg: &QuatAlgebra, spec: &DerivationSpec) -> [[RatFunc; 3]; 3] {
    let tw = alg.base_tower();
    let mut m: [[RatFunc; 3]; 3] = Default::default();
    for j in 0..3 {
        let d = alg.apply_derivation(spec, &QuatElem::basis(&tw, j + 1));
        for (i, row) in m.iter_mut().enumerate() {
            row[j] = d.c[i + 1].as_base().expect("base coefficients");
        }
    }
    m
}

fn to_quat(alg: &QuatAlgebra, b: &Pure) -> QuatElem {
    let tw = alg.base_tower();
    QuatElem::new(tw.zero(), tw.from_base(&b[0]), tw.from_base(&b[1]), tw.from_base(&b[2]))
}

/// `xy + yx = 2·form(x, y)` for pure quaternions.
fn form(alg: &QuatAlgebra, x: &Pure, y: &Pure) -> RatFunc {
    let ab = &alg.alpha * &alg.beta;
    &(&(&alg.alpha * &(&x[0] * &y[0])) + &(&alg.beta * &(&x[1] * &y[1]))) - &(&ab * &(&x[2] * &y[2]))
}

/// `λ` with `d(x) = λx`, if any.
fn eigenvalue(alg: &QuatAlgebra, spec: &DerivationSpec, x: &QuatElem) -> Option<TowerElem> {
    let d = alg.apply_derivation(spec, x);
    let i = (1..4).find(|&i| !x.c[i].is_zero())?;
    let lam = d.c[i].checked_div(&x.c[i]).ok()?;
    (d == x.scale(&lam)).then_some(lam)
}

pub fn render_pure(b: &Pure) -> String {
    let terms: Vec<String> = b
        .iter()
        .zip(NAMES)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| if c.is_one() { n.to_string() } else if c.is_atomic() { format!("{c}*{n}") } else { format!("({c})*{n}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// A pure eigen-element, possibly with a free constant `c` multiplying its
/// component along the decoupled basis vector.
#[derive(Clone, Debug)]
struct Candidate {
    fixed: Pure,
    free: Option<Pure>,
}

/// Search for a standard pair `(ũ, ṽ)`.
pub fn standard_analyze(alg: &QuatAlgebra, spec: &DerivationSpec, budget: usize) -> StandardReport {
    let inconclusive = |reason: &str| StandardReport::Inconclusive { reason: reason.into() };
    if !alg.t_prime().is_one() {
        return inconclusive("eigen-element search needs t' = 1");
    }
    let m = pure_matrix(alg, spec);
    let Some(i) = (0..3).find(|&i| (0..3).all(|j| j == i || (m[i][j].is_zero() && m[j][i].is_zero()))) else {
        return inconclusive("no basis direction decouples from the other two");
    };
    let (j, k) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let embed = |ci: RatFunc, cj: RatFunc, ck: RatFunc| {
        let mut b: Pure = Default::default();
        b[i] = ci;
        b[j] = cj;
        b[k] = ck;
        b
    };
    let (a11, a12, a21, a22) = (&m[j][j], &m[j][k], &m[k][j], &m[k][k]);
    // X = b_j/b_k solves X' = -a12 + (a22 - a11)X + a21·X².
    let set = match riccati_rational_base(&-a12, &(a22 - a11), a21, 16, budget) {
        Ok(s) => s,
        Err(e) => return inconclusive(&e.to_string()),
    };
    if set.status != SolveStatus::Complete {
        return inconclusive(&format!("plane Riccati search incomplete ({:?})", set.status));
    }
    let family = set.family.is_some();
    // Plane directions w with d(w) = λ_w·w.
    let mut plane: Vec<(RatFunc, RatFunc, RatFunc)> = set
        .all()
        .into_iter()
        .map(|x| {
            let lam = &(a21 * &x) + a22;
            (x, RatFunc::one(), lam)
        })
        .collect();
    if a21.is_zero() {
        plane.insert(0, (RatFunc::one(), RatFunc::zero(), a11.clone()));
    }
    let zero = RatFunc::zero;
    let mut cands = vec![Candidate { fixed: embed(RatFunc::one(), zero(), zero()), free: None }];
    for (x, y, lam) in &plane {
        let w = embed(zero(), x.clone(), y.clone());
        let rate = lam - &m[i][i];
        let r = match logderiv_multiple(&rate, alg.t_prime()) {
            Ok(Some((1, f))) => Some(f),
            _ => None,
        };
        cands.push(Candidate { fixed: w.clone(), free: r.map(|r| embed(r, zero(), zero())) });
    }
    let nonnull = |b: &Pure| !form(alg, b, b).is_zero();
    // Concrete eigen-elements: each fixed part, plus fixed + free for c = 1.
    let mut concrete: Vec<Pure> = Vec::new();
    for c in &cands {
        concrete.push(c.fixed.clone());
        if let Some(f) = &c.free {
            concrete.push(add(&c.fixed, f));
        }
    }
    let mut tries = 0usize;
    for (a, x) in cands.iter().enumerate() {
        for y in &cands[a + 1..] {
            for (xv, yv) in pair_choices(alg, x, y) {
                tries += 1;
                if tries > budget {
                    return inconclusive("pair search budget exhausted");
                }
                if nonnull(&xv) && nonnull(&yv) && form(alg, &xv, &yv).is_zero() {
                    if let Some(r) = verify_pair(alg, spec, &xv, &yv) {
                        return r;
                    }
                }
            }
        }
    }
    if family || cands.iter().any(|c| c.free.is_some()) {
        return inconclusive("a one-parameter family of eigen-directions was not searched exhaustively");
    }
    let lines: Vec<String> = concrete.iter().filter(|b| nonnull(b)).map(render_pure).collect();
    let evidence = match lines.as_slice() {
        [one] => format!("every eigen-element with nonzero square lies in k*{one}"),
        _ => format!("no two eigen-elements with nonzero square anticommute (eigen-lines: {})", lines.join(", ")),
    };
    StandardReport::NotStandard { evidence }
}

fn add(a: &Pure, b: &Pure) -> Pure {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

fn scale(a: &Pure, c: &RatFunc) -> Pure {
    [&a[0] * c, &a[1] * c, &a[2] * c]
}

/// Concrete pairs from two candidates, solving for the free constants when
/// orthogonality pins them down.
fn pair_choices(alg: &QuatAlgebra, x: &Candidate, y: &Candidate) -> Vec<(Pure, Pure)> {
    let mut out = vec![(x.fixed.clone(), y.fixed.clone())];
    let solve = |fixed: &Pure, free: &Pure, other: &Pure| -> Option<Pure> {
        let num = form(alg, fixed, other);
        let den = form(alg, free, other);
        let c = (-&num).checked_div(&den).ok()?;
        (c.is_constant() && !c.is_zero()).then(|| add(fixed, &scale(free, &c)))
    };
    if let Some(f) = &x.free {
        out.push((add(&x.fixed, f), y.fixed.clone()));
        if let Some(xv) = solve(&x.fixed, f, &y.fixed) {
            out.push((xv, y.fixed.clone()));
        }
    }
    if let Some(f) = &y.free {
        out.push((x.fixed.clone(), add(&y.fixed, f)));
        if let Some(yv) = solve(&y.fixed, f, &x.fixed) {
            out.push((x.fixed.clone(), yv));
        }
    }
    out
}

fn verify_pair(alg: &QuatAlgebra, spec: &DerivationSpec, x: &Pure, y: &Pure) -> Option<StandardReport> {
    let (qx, qy) = (to_quat(alg, x), to_quat(alg, y));
    eigenvalue(alg, spec, &qx)?;
    eigenvalue(alg, spec, &qy)?;
    let xy = alg.mul(&qx, &qy);
    let yx = alg.mul(&qy, &qx);
    let sq = |q: &QuatElem| {
        let s = alg.mul(q, q);
        (s.c[1..].iter().all(|c| c.is_zero()) && !s.c[0].is_zero()).then_some(())
    };
    sq(&qx)?;
    sq(&qy)?;
    xy.add(&yx).is_zero().then(|| StandardReport::Standard { u: render_pure(x), v: render_pure(y) })
}

/// `U = F·diag(θ, -θ)·F⁻¹`, `V = F·[[0, θ], [θ, 0]]·F⁻¹` and their preimages.
#[derive(Clone, Debug)]
pub struct StandardPair {
    pub u_mat: Mat2,
    pub v_mat: Mat2,
    pub u: QuatElem,
    pub v: QuatElem,
}

/// A standard pair over the certificate tower from a nonzero `θ` whose
/// logarithmic derivative lies in that tower.
pub fn standardize_from_split(cert: &SplitCertificate, theta: &TowerElem) -> Result<StandardPair, SplitError> {
    let tw = &cert.tower;
    if theta.is_zero() {
        return Err(SplitError::Internal("theta is zero".into()));
    }
    let z = tw.zero();
    let f = &cert.f;
    let fi = f.inv()?;
    let u_mat = f.mul(&Mat2::new(theta.clone(), z.clone(), z.clone(), -theta)).mul(&fi);
    let v_mat = f.mul(&Mat2::new(z.clone(), theta.clone(), theta.clone(), z)).mul(&fi);
    let th2 = Mat2::identity(tw).scale(&(theta * theta));
    let rate = theta.derive().checked_div(theta)?;
    let checks = [
        (u_mat.mul(&u_mat) == th2, "U^2 = theta^2"),
        (v_mat.mul(&v_mat) == th2, "V^2 = theta^2"),
        (v_mat.mul(&u_mat) == u_mat.mul(&v_mat).neg(), "VU = -UV"),
        (u_mat.d_p(&cert.p) == u_mat.scale(&rate), "d_P(U) = (theta'/theta)U"),
        (v_mat.d_p(&cert.p) == v_mat.scale(&rate), "d_P(V) = (theta'/theta)V"),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(SplitError::Internal(format!("{what} fails")));
    }
    let alg = &cert.algebra;
    let u = alg.phi_inv(&cert.xi, &u_mat)?;
    let v = alg.phi_inv(&cert.xi, &v_mat)?;
    if !alg.mul(&v, &u).add(&alg.mul(&u, &v)).is_zero() {
        return Err(SplitError::Internal("pulled-back pair does not anticommute".into()));
    }
    Ok(StandardPair { u_mat, v_mat, u, v })
}
