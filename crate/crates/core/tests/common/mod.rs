#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quatsplit::arith::{rat, Poly, Rat, RatFunc};
use quatsplit::io::parse_expr;
use quatsplit::quat::{resolve_xi, DerivationSpec, QuatAlgebra, QuatElem};
use quatsplit::split::{construct_certificate, Hint, SplitCertificate, SplitOptions};
use quatsplit::tower::{DiffBase, Tower, TowerElem, TowerStep};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn e(s: &str) -> RatFunc {
    parse_expr(s).unwrap()
}

pub fn rand_rat(r: &mut impl Rng) -> Rat {
    rat(r.gen_range(-5..=5), r.gen_range(1..=4))
}

pub fn rand_poly(r: &mut impl Rng, max_deg: usize) -> Poly {
    let d = r.gen_range(0..=max_deg);
    Poly::from_coeffs((0..=d).map(|_| rand_rat(r)).collect())
}

pub fn rand_nonzero_poly(r: &mut impl Rng, max_deg: usize) -> Poly {
    loop {
        let p = rand_poly(r, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn rand_ratfunc(r: &mut impl Rng, max_deg: usize) -> RatFunc {
    RatFunc::new(rand_poly(r, max_deg), rand_nonzero_poly(r, max_deg)).unwrap()
}

pub fn rand_nonzero_ratfunc(r: &mut impl Rng, max_deg: usize) -> RatFunc {
    RatFunc::new(rand_nonzero_poly(r, max_deg), rand_nonzero_poly(r, max_deg)).unwrap()
}

/// Sum of base coefficients times small powers of the generators.
pub fn rand_tower_elem(r: &mut impl Rng, tw: &Arc<Tower>) -> TowerElem {
    let mut x = tw.from_base(&rand_ratfunc(r, 2));
    for _ in 0..2 {
        let mut m = tw.from_base(&rand_nonzero_ratfunc(r, 1));
        for i in 0..tw.depth() {
            m = &m * &tw.generator(i).pow_u(r.gen_range(0..=2));
        }
        x = &x + &m;
    }
    x
}

pub fn base_alg(alpha: &str, beta: &str, t_prime: &str) -> QuatAlgebra {
    QuatAlgebra::new(e(alpha), e(beta), DiffBase::new(e(t_prime))).unwrap()
}

pub fn spec(a: [&str; 3]) -> DerivationSpec {
    DerivationSpec::new(e(a[0]), e(a[1]), e(a[2]))
}

pub fn certificate(alg: &QuatAlgebra, s: &DerivationSpec, hints: Vec<Hint>) -> SplitCertificate {
    construct_certificate(alg, s, &SplitOptions { hints, ..Default::default() }).unwrap()
}

pub fn radical8() -> (QuatAlgebra, DerivationSpec) {
    (base_alg("1", "t", "1"), spec(["-1/(8*t)", "0", "0"]))
}

pub fn log_case() -> (QuatAlgebra, DerivationSpec) {
    (base_alg("1", "t", "1"), spec(["-1/(4*t)", "-1/(2*t)", "1/(2*t)"]))
}

pub fn airy() -> (QuatAlgebra, DerivationSpec) {
    (base_alg("1", "t", "1"), spec(["-1/(4*t)", "-1", "0"]))
}

pub fn sqrt_pattern() -> (QuatAlgebra, DerivationSpec) {
    (base_alg("t", "t", "1"), spec(["0", "1", "0"]))
}

/// Differential towers exercising every step kind.
pub fn tower_contexts() -> Vec<(&'static str, Arc<Tower>)> {
    let base = |tp: &str| Tower::new(DiffBase::new(e(tp)));
    let mut out = vec![("Q(t), t' = 1", base("1")), ("Q(t), t' = t^2", base("t^2"))];
    let b = base("1");
    let rad = b.adjoin(TowerStep::Radical { n: 8, f: b.t(), name: "theta".into() }).unwrap().tower;
    out.push(("radical", rad));
    let b = base("1");
    let w = b.from_base(&e("1/t"));
    out.push(("primitive", b.adjoin(TowerStep::Primitive { w, name: "ell".into() }).unwrap().tower));
    let b = base("t^2");
    let w = b.from_base(&e("1 + t"));
    out.push(("hyperexponential over t' = t^2", b.adjoin(TowerStep::HyperExp { w, name: "mu".into() }).unwrap().tower));
    let (a, s) = sqrt_pattern();
    out.push(("radical then hyperexponential", certificate(&a, &s, vec![]).tower.clone()));
    let (a, s) = (base_alg("t", "t^2 + 1", "1"), spec(["1", "t", "0"]));
    out.push(("Riccati generators", certificate(&a, &s, vec![Hint::RiccatiAuto]).tower.clone()));
    out
}

/// `(xy)' = x'y + xy'` on random pairs in each tower.
pub fn leibniz_towers(pairs: usize) -> Result<(), String> {
    let mut r = rng(11);
    for (name, tw) in tower_contexts() {
        for _ in 0..pairs {
            let x = rand_tower_elem(&mut r, &tw);
            let y = rand_tower_elem(&mut r, &tw);
            let lhs = (&x * &y).derive();
            let rhs = &(&x.derive() * &y) + &(&x * &y.derive());
            if lhs != rhs {
                return Err(format!("{name}: ({})({})", x.render(), y.render()));
            }
        }
    }
    Ok(())
}

pub fn rand_quat(r: &mut impl Rng, tw: &Arc<Tower>) -> QuatElem {
    QuatElem::new(
        tw.from_base(&rand_ratfunc(r, 1)),
        tw.from_base(&rand_ratfunc(r, 1)),
        tw.from_base(&rand_ratfunc(r, 1)),
        tw.from_base(&rand_ratfunc(r, 1)),
    )
}

pub fn quat_contexts() -> Vec<(&'static str, QuatAlgebra, DerivationSpec)> {
    let mut out = Vec::new();
    for (name, (a, s)) in [
        ("radical example", radical8()),
        ("log example", log_case()),
        ("airy example", airy()),
        ("sqrt pattern", sqrt_pattern()),
    ] {
        out.push((name, a, s));
    }
    out.push(("generic", base_alg("t", "t^2 + 1", "1"), spec(["1", "t", "0"])));
    out.push(("t' = t^2", base_alg("t", "t^3 - t", "t^2"), spec(["1/t", "t", "1"])));
    out
}

/// `d(xy) = d(x)y + x·d(y)` for the derivation on the quaternion algebra.
pub fn leibniz_quaternions(pairs: usize) -> Result<(), String> {
    let mut r = rng(12);
    for (name, alg, s) in quat_contexts() {
        let tw = alg.base_tower();
        for _ in 0..pairs {
            let x = rand_quat(&mut r, &tw);
            let y = rand_quat(&mut r, &tw);
            let lhs = alg.apply_derivation(&s, &alg.mul(&x, &y));
            let rhs = alg.mul(&alg.apply_derivation(&s, &x), &y).add(&alg.mul(&x, &alg.apply_derivation(&s, &y)));
            if lhs != rhs {
                return Err(format!("{name}: Leibniz fails"));
            }
        }
    }
    Ok(())
}

/// Φ is multiplicative, invertible, and carries `d` to `M ↦ M' + MP - PM`.
pub fn phi_intertwining(samples: usize) -> Result<(), String> {
    let mut r = rng(13);
    for (name, alg, s) in quat_contexts() {
        let ext = resolve_xi(&alg, &alg.base_tower()).map_err(|e| e.to_string())?;
        let xi = ext.generator;
        let tw = xi.tower().clone();
        let p = alg.build_p(&s, &xi).map_err(|e| e.to_string())?;
        let mut elems: Vec<QuatElem> = (0..4).map(|i| QuatElem::basis(&tw, i)).collect();
        elems.extend((0..samples).map(|_| rand_quat(&mut r, &tw)));
        for (k, x) in elems.iter().enumerate() {
            let fx = alg.phi_map(&xi, x).unwrap();
            if alg.phi_map(&xi, &alg.apply_derivation(&s, x)).unwrap() != fx.d_p(&p) {
                return Err(format!("{name}: d does not intertwine on element {k}"));
            }
            if alg.phi_inv(&xi, &fx).unwrap() != *x {
                return Err(format!("{name}: phi_inv does not invert on element {k}"));
            }
            let y = &elems[(k + 1) % elems.len()];
            if alg.phi_map(&xi, &alg.mul(x, y)).unwrap() != fx.mul(&alg.phi_map(&xi, y).unwrap()) {
                return Err(format!("{name}: phi is not multiplicative on element {k}"));
            }
        }
    }
    Ok(())
}

/// `parse(render(x)) = x`.
pub fn parser_round_trip(count: usize) -> Result<(), String> {
    let mut r = rng(14);
    for _ in 0..count {
        let x = rand_ratfunc(&mut r, 4);
        let s = x.render();
        match parse_expr(&s) {
            Ok(y) if y == x => {}
            Ok(y) => return Err(format!("{s} parsed as {}", y.render())),
            Err(e) => return Err(format!("{s}: {e}")),
        }
    }
    Ok(())
}

/// `a = p/(n·q1)` with `p = 2α(γ0γ1' - γ0'γ1) + α'γ0γ1`, `q1 = α(γ0² - αγ1²)`.
pub fn witness_a(alpha: &Poly, g0: &Poly, g1: &Poly, n: u32) -> Option<RatFunc> {
    let (a, x, y) = (RatFunc::from_poly(alpha.clone()), RatFunc::from_poly(g0.clone()), RatFunc::from_poly(g1.clone()));
    let p = &(&a * &(&(&x * &y.d_dt()) - &(&x.d_dt() * &y))).scale(&rat(2, 1)) + &(&a.d_dt() * &(&x * &y));
    let q = (&a * &(&(&x * &x) - &(&a * &(&y * &y)))).scale(&rat(n as i64, 1));
    p.checked_div(&q).ok()
}

/// On `θ = g0 + ξg1`: "θ'/θ ∈ ξk" agrees with "N(θ) constant", for
/// Hilbert-90 quotients (where both hold) and for generic samples.
pub fn norm_equivalence(samples: usize) -> Result<(), String> {
    use quatsplit::split::norm_constant_check;
    let mut r = rng(15);
    let alphas = [e("t"), e("t^3 - t"), e("t^2 + 1")];
    for k in 0..samples {
        let alpha = &alphas[k % alphas.len()];
        let (g0, g1, quotient) = if k % 2 == 0 {
            let c = RatFunc::from_rat(rand_rat(&mut r));
            let c = if c.is_zero() { RatFunc::one() } else { c };
            let x = RatFunc::from_poly(rand_nonzero_poly(&mut r, 2));
            let y = RatFunc::from_poly(rand_nonzero_poly(&mut r, 2));
            let n = &(&x * &x) - &(alpha * &(&y * &y));
            let g0 = (&c * &(&(&x * &x) + &(alpha * &(&y * &y)))).checked_div(&n).unwrap();
            let g1 = (&c * &(&x * &y).scale(&rat(2, 1))).checked_div(&n).unwrap();
            (g0, g1, true)
        } else {
            (rand_ratfunc(&mut r, 2), rand_nonzero_ratfunc(&mut r, 2), false)
        };
        let (ld, nc) = norm_constant_check(alpha, &g0, &g1).map_err(|e| e.to_string())?;
        let norm = &(&g0 * &g0) - &(alpha * &(&g1 * &g1));
        let nc_oracle = norm.d_dt().is_zero();
        if ld != nc || nc != nc_oracle || (quotient && !nc) {
            return Err(format!("sample {k}: g0 = {}, g1 = {}: ({ld}, {nc}), oracle {nc_oracle}", g0.render(), g1.render()));
        }
    }
    Ok(())
}

/// Entrywise `F' = PF` and `det F = 1`, computed here rather than by the
/// library verifier.
pub fn check_certificate(c: &SplitCertificate) -> Result<(), String> {
    let lhs = c.f.derive();
    let rhs = c.p.mul(&c.f);
    for i in 0..2 {
        for j in 0..2 {
            if lhs.get(i, j) != rhs.get(i, j) {
                return Err(format!("F' != PF at ({}, {})", i + 1, j + 1));
            }
        }
    }
    if !c.f.det().is_one() {
        return Err(format!("det F = {}", c.f.det().render()));
    }
    Ok(())
}

/// Random instances with `α, β ∈ {t, t²+1, 1, t³-t}` and polynomial `a_i`
/// of degree at most 2.
pub fn random_certificates(count: usize) -> Result<usize, String> {
    let mut r = rng(16);
    let choices = ["t", "t^2 + 1", "1", "t^3 - t"];
    let mut fallbacks = 0;
    for k in 0..count {
        let alpha = choices[r.gen_range(0..4)];
        let beta = choices[r.gen_range(0..4)];
        let a: Vec<RatFunc> = (0..3)
            .map(|_| {
                let d = r.gen_range(0..=2);
                RatFunc::from_poly(Poly::from_ints(&(0..=d).map(|_| r.gen_range(-2..=2)).collect::<Vec<_>>()))
            })
            .collect();
        let alg = base_alg(alpha, beta, "1");
        let s = DerivationSpec::new(a[0].clone(), a[1].clone(), a[2].clone());
        let label = format!("#{k} ({alpha}, {beta}) a = ({}, {}, {})", a[0], a[1], a[2]);
        let c = construct_certificate(&alg, &s, &SplitOptions::default()).map_err(|e| format!("{label}: {e}"))?;
        check_certificate(&c).map_err(|e| format!("{label}: {e}"))?;
        if !c.verified || c.trdeg > 3 || c.trdeg != c.tower.tr_degree() {
            return Err(format!("{label}: verified {} trdeg {}", c.verified, c.trdeg));
        }
        let names = c.tower.step_names();
        if names.contains(&"lambda1") && names.contains(&"lambda2") {
            fallbacks += 1;
            if c.trdeg != 3 {
                return Err(format!("{label}: fallback with trdeg {}", c.trdeg));
            }
        }
    }
    Ok(fallbacks)
}
