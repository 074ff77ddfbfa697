//! Quaternion algebras (α, β) over ℚ(t) with derivations.

mod mat;

use std::fmt;
use std::sync::Arc;

use crate::arith::{rat, RatFunc};
use crate::tower::{DiffBase, Extension, Tower, TowerElem, TowerError, TowerStep};

pub use mat::Mat2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuatError {
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error("xi does not square to alpha")]
    XiNotRoot,
    #[error("lambda does not solve the splitting Riccati equation")]
    NotASolution,
    #[error(transparent)]
    Tower(#[from] TowerError),
}

/// `(α, β)` over a differential base: `u² = α`, `v² = β`, `vu = -uv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatAlgebra {
    pub alpha: RatFunc,
    pub beta: RatFunc,
    pub base: DiffBase,
}

/// The inner part `ϑ = a1·u + a2·v + a3·uv` of `d = d_(u,v) + ∂_ϑ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DerivationSpec {
    pub a1: RatFunc,
    pub a2: RatFunc,
    pub a3: RatFunc,
}

impl DerivationSpec {
    pub fn new(a1: RatFunc, a2: RatFunc, a3: RatFunc) -> Self {
        DerivationSpec { a1, a2, a3 }
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }
}

/// Coordinates on the basis `1, u, v, uv`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuatElem {
    pub c: [TowerElem; 4],
}

impl QuatElem {
    pub fn new(c0: TowerElem, c1: TowerElem, c2: TowerElem, c3: TowerElem) -> Self {
        QuatElem { c: [c0, c1, c2, c3] }
    }

    pub fn zero(tw: &Arc<Tower>) -> Self {
        QuatElem::new(tw.zero(), tw.zero(), tw.zero(), tw.zero())
    }

    /// The basis element `e_i` (0: 1, 1: u, 2: v, 3: uv).
    pub fn basis(tw: &Arc<Tower>, i: usize) -> Self {
        let mut q = QuatElem::zero(tw);
        q.c[i] = tw.one();
        q
    }

    pub fn tower(&self) -> &Arc<Tower> {
        self.c[0].tower()
    }

    pub fn add(&self, o: &QuatElem) -> QuatElem {
        QuatElem { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }

    pub fn sub(&self, o: &QuatElem) -> QuatElem {
        QuatElem { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }

    pub fn scale(&self, k: &TowerElem) -> QuatElem {
        QuatElem { c: std::array::from_fn(|i| &self.c[i] * k) }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn conj(&self) -> QuatElem {
        let c = &self.c;
        QuatElem::new(c[0].clone(), -&c[1], -&c[2], -&c[3])
    }

    pub fn map(&self, f: impl Fn(&TowerElem) -> TowerElem) -> QuatElem {
        QuatElem { c: std::array::from_fn(|i| f(&self.c[i])) }
    }
}

impl fmt::Debug for QuatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.c;
        write!(f, "({}) + ({})u + ({})v + ({})uv", c[0], c[1], c[2], c[3])
    }
}

/// `X' = a0 + a1c·X + a2c·X²`.
#[derive(Clone, PartialEq, Eq)]
pub struct RiccatiEq {
    pub a0: TowerElem,
    pub a1c: TowerElem,
    pub a2c: TowerElem,
}

impl RiccatiEq {
    pub fn tower(&self) -> &Arc<Tower> {
        self.a0.tower()
    }

    /// `x' - (a0 + a1c·x + a2c·x²)`.
    pub fn residual(&self, x: &TowerElem) -> TowerElem {
        let rhs = &(&self.a0 + &(&self.a1c * x)) + &(&self.a2c * &(x * x));
        &x.derive() - &rhs
    }

    pub fn is_solution(&self, x: &TowerElem) -> bool {
        self.residual(x).is_zero()
    }

    /// Coefficients in ℚ(t), when all three lie there.
    pub fn base_coeffs(&self) -> Option<(RatFunc, RatFunc, RatFunc)> {
        Some((self.a0.as_base()?, self.a1c.as_base()?, self.a2c.as_base()?))
    }

    pub fn map(&self, f: impl Fn(&TowerElem) -> TowerElem) -> RiccatiEq {
        RiccatiEq { a0: f(&self.a0), a1c: f(&self.a1c), a2c: f(&self.a2c) }
    }

    pub fn render(&self) -> String {
        let mut terms = Vec::new();
        for (c, x) in [(&self.a2c, "X^2"), (&self.a1c, "X"), (&self.a0, "")] {
            if c.is_zero() {
                continue;
            }
            terms.push(render_term(c, x));
        }
        if terms.is_empty() {
            return "X' = 0".into();
        }
        let mut out = String::from("X' = ");
        for (k, s) in terms.iter().enumerate() {
            if k == 0 {
                out.push_str(s);
            } else if let Some(rest) = s.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(s);
            }
        }
        out
    }
}

/// `c·x` written as `x`, `-x`, `3*x`, `x/(4*t)`, `(t + 1)*x`.
fn render_term(c: &TowerElem, x: &str) -> String {
    if x.is_empty() {
        return c.render();
    }
    if c.is_one() {
        return x.into();
    }
    if (-c).is_one() {
        return format!("-{x}");
    }
    if let Some(r) = c.as_base() {
        if r.is_atomic() {
            let s = r.render();
            return match s.split_once('/') {
                Some((n, d)) => match n {
                    "1" => format!("{x}/{d}"),
                    "-1" => format!("-{x}/{d}"),
                    _ => format!("{n}*{x}/{d}"),
                },
                None => format!("{s}*{x}"),
            };
        }
        return format!("({})*{x}", r.render());
    }
    let s = c.render();
    if s.contains(" + ") || s.contains(" - ") {
        format!("({s})*{x}")
    } else {
        format!("{s}*{x}")
    }
}

impl fmt::Display for RiccatiEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RiccatiEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl QuatAlgebra {
    pub fn new(alpha: RatFunc, beta: RatFunc, base: DiffBase) -> Result<Self, QuatError> {
        if alpha.is_zero() {
            return Err(QuatError::ZeroAlpha);
        }
        if beta.is_zero() {
            return Err(QuatError::ZeroBeta);
        }
        Ok(QuatAlgebra { alpha, beta, base })
    }

    pub fn t_prime(&self) -> &RatFunc {
        &self.base.t_prime
    }

    pub fn base_tower(&self) -> Arc<Tower> {
        Tower::new(self.base.clone())
    }

    /// `α'/2α`.
    pub fn half_log_alpha(&self) -> RatFunc {
        log_rate(&self.alpha, self.t_prime(), 2)
    }

    /// `β'/2β`.
    pub fn half_log_beta(&self) -> RatFunc {
        log_rate(&self.beta, self.t_prime(), 2)
    }

    pub fn mul(&self, x: &QuatElem, y: &QuatElem) -> QuatElem {
        let tw = x.tower();
        let al = tw.from_base(&self.alpha);
        let be = tw.from_base(&self.beta);
        let ab = &al * &be;
        let (a, b) = (&x.c, &y.c);
        let c0 = &(&(&(&a[0] * &b[0]) + &(&al * &(&a[1] * &b[1]))) + &(&be * &(&a[2] * &b[2])))
            - &(&ab * &(&a[3] * &b[3]));
        let c1 = &(&(&(&a[0] * &b[1]) + &(&a[1] * &b[0])) - &(&be * &(&a[2] * &b[3])))
            + &(&be * &(&a[3] * &b[2]));
        let c2 = &(&(&(&a[0] * &b[2]) + &(&a[2] * &b[0])) + &(&al * &(&a[1] * &b[3])))
            - &(&al * &(&a[3] * &b[1]));
        let c3 = &(&(&(&a[0] * &b[3]) + &(&a[3] * &b[0])) + &(&a[1] * &b[2])) - &(&a[2] * &b[1]);
        QuatElem::new(c0, c1, c2, c3)
    }

    /// Reduced norm `c0² - αc1² - βc2² + αβc3²`.
    pub fn norm(&self, x: &QuatElem) -> TowerElem {
        let tw = x.tower();
        let al = tw.from_base(&self.alpha);
        let be = tw.from_base(&self.beta);
        let c = &x.c;
        let sq = |e: &TowerElem| e * e;
        &(&(&sq(&c[0]) - &(&al * &sq(&c[1]))) - &(&be * &sq(&c[2]))) + &(&(&al * &be) * &sq(&c[3]))
    }

    /// `(N(x), conj(x))`.
    pub fn norm_conj(&self, x: &QuatElem) -> (TowerElem, QuatElem) {
        (self.norm(x), x.conj())
    }

    /// `ϑ = a1·u + a2·v + a3·uv` in the tower `tw`.
    pub fn theta(&self, spec: &DerivationSpec, tw: &Arc<Tower>) -> QuatElem {
        QuatElem::new(tw.zero(), tw.from_base(&spec.a1), tw.from_base(&spec.a2), tw.from_base(&spec.a3))
    }

    /// `d(x)` for `d = d_(u,v) + ∂_ϑ`, with coordinates differentiated in
    /// their tower.
    pub fn apply_derivation(&self, spec: &DerivationSpec, x: &QuatElem) -> QuatElem {
        let tw = x.tower();
        let ra = tw.from_base(&self.half_log_alpha());
        let rb = tw.from_base(&self.half_log_beta());
        let c = &x.c;
        let std = QuatElem::new(
            c[0].derive(),
            &c[1].derive() + &(&ra * &c[1]),
            &c[2].derive() + &(&rb * &c[2]),
            &c[3].derive() + &(&(&ra + &rb) * &c[3]),
        );
        let th = self.theta(spec, tw);
        std.add(&self.mul(x, &th).sub(&self.mul(&th, x)))
    }

    fn check_xi(&self, xi: &TowerElem) -> Result<(), QuatError> {
        if xi * xi == xi.tower().from_base(&self.alpha) {
            Ok(())
        } else {
            Err(QuatError::XiNotRoot)
        }
    }

    /// `Φ(x)` with `u ↦ diag(ξ, -ξ)`, `v ↦ [[0, β], [1, 0]]`.
    pub fn phi_map(&self, xi: &TowerElem, x: &QuatElem) -> Result<Mat2, QuatError> {
        self.check_xi(xi)?;
        let be = xi.tower().from_base(&self.beta);
        let c = &x.c;
        let cx = &c[1] * xi;
        let dx = &c[3] * xi;
        Ok(Mat2::new(&c[0] + &cx, &be * &(&c[2] + &dx), &c[2] - &dx, &c[0] - &cx))
    }

    /// Inverse of [`phi_map`](Self::phi_map).
    pub fn phi_inv(&self, xi: &TowerElem, m: &Mat2) -> Result<QuatElem, QuatError> {
        self.check_xi(xi)?;
        let tw = xi.tower();
        let half = tw.from_rat(rat(1, 2));
        let inv2xi = xi.scale(&rat(2, 1)).inv()?;
        let ib = tw.from_base(&self.beta.inv().map_err(|_| QuatError::ZeroBeta)?);
        let [[m11, m12], [m21, m22]] = &m.m;
        let s = &(m12 * &ib);
        Ok(QuatElem::new(
            &(m11 + m22) * &half,
            &(m11 - m22) * &inv2xi,
            &(s + m21) * &half,
            &(s - m21) * &inv2xi,
        ))
    }

    /// The matrix `P` with `Φ(d(x)) = Φ(x)' + Φ(x)·P - P·Φ(x)`.
    pub fn build_p(&self, spec: &DerivationSpec, xi: &TowerElem) -> Result<Mat2, QuatError> {
        self.check_xi(xi)?;
        let tw = xi.tower();
        let q = tw.from_base(&log_rate(&self.beta, self.t_prime(), 4));
        let be = tw.from_base(&self.beta);
        let a1 = tw.from_base(&spec.a1);
        let a2 = tw.from_base(&spec.a2);
        let a3 = tw.from_base(&spec.a3);
        let p11 = &(&a1 * xi) + &q;
        let a3x = &a3 * xi;
        Ok(Mat2::new(p11.clone(), &(&a2 + &a3x) * &be, &a2 - &a3x, -&p11))
    }

    /// `X' = (a2 + a3ξ)β + 2(a1ξ + β'/4β)X - (a2 - a3ξ)X²`.
    pub fn build_riccati(&self, spec: &DerivationSpec, xi: &TowerElem) -> Result<RiccatiEq, QuatError> {
        let p = self.build_p(spec, xi)?;
        Ok(riccati_of_p(&p))
    }

    /// `(a2 - a3ξ)λ1 - (a1ξ + β'/4β)`, the rate of μ.
    pub fn build_mu_rate(
        &self,
        spec: &DerivationSpec,
        xi: &TowerElem,
        lambda1: &TowerElem,
    ) -> Result<TowerElem, QuatError> {
        let p = self.build_p(spec, xi)?;
        let p = p.map_entries(|e| e.lift_into(lambda1.tower()).expect("prefix tower"));
        if !riccati_of_p(&p).is_solution(lambda1) {
            return Err(QuatError::NotASolution);
        }
        Ok(mu_rate(&p, lambda1))
    }
}

/// The splitting equation `X' = P12 + (P11 - P22)X - P21·X²`.
pub fn riccati_of_p(p: &Mat2) -> RiccatiEq {
    RiccatiEq { a0: p.m[0][1].clone(), a1c: &p.m[0][0] - &p.m[1][1], a2c: -&p.m[1][0] }
}

/// `P21·λ1 - P11`.
pub fn mu_rate(p: &Mat2, lambda1: &TowerElem) -> TowerElem {
    &(&p.m[1][0] * lambda1) - &p.m[0][0]
}

/// `f'/(k·f)`.
pub fn log_rate(f: &RatFunc, t_prime: &RatFunc, k: i64) -> RatFunc {
    f.derive(t_prime).checked_div(&f.scale(&rat(k, 1))).expect("nonzero")
}

/// Resolve `ξ` with `ξ² = α` over `tw`: the in-field root with positive
/// leading coefficient, or a radical step named `xi`.
pub fn resolve_xi(alg: &QuatAlgebra, tw: &Arc<Tower>) -> Result<Extension, QuatError> {
    if let Some(r) = alg.alpha.sqrt() {
        return Ok(Extension::trivial(tw.from_base(&r)));
    }
    Ok(tw.adjoin(TowerStep::Radical { n: 2, f: tw.from_base(&alg.alpha), name: "xi".into() })?)
}

#[cfg(test)]
mod tests;
