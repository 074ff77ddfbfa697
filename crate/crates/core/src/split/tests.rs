use super::*;
use crate::arith::{rat, Poly, RatFunc};
use crate::quat::{DerivationSpec, Mat2, QuatAlgebra};
use crate::tower::DiffBase;

fn rf(n: &[i64], d: &[i64]) -> RatFunc {
    RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
}

fn alg(a: RatFunc, b: RatFunc) -> QuatAlgebra {
    QuatAlgebra::new(a, b, DiffBase::new(RatFunc::one())).unwrap()
}

pub(super) fn radical8() -> SplitCertificate {
    let q = alg(RatFunc::one(), RatFunc::t());
    let s = DerivationSpec::new(rf(&[-1], &[0, 8]), RatFunc::zero(), RatFunc::zero());
    construct_certificate(&q, &s, &SplitOptions::default()).unwrap()
}

pub(super) fn log_case() -> SplitCertificate {
    let q = alg(RatFunc::one(), RatFunc::t());
    let s = DerivationSpec::new(rf(&[-1], &[0, 4]), rf(&[-1], &[0, 2]), rf(&[1], &[0, 2]));
    let opts = SplitOptions { hints: vec![Hint::Primitive { expr: "1/t".into() }], ..Default::default() };
    construct_certificate(&q, &s, &opts).unwrap()
}

#[test]
fn radical_certificate() {
    let c = radical8();
    assert_eq!(c.tower.depth(), 1);
    assert_eq!(c.tower.render_step(0), "theta: radical n=8 of t");
    let th = c.tower.generator(0);
    let thi = th.inv().unwrap();
    assert_eq!(c.lambda1, th.pow_u(2));
    assert_eq!(c.lambda2, th.pow_u(2).scale(&rat(2, 1)));
    assert_eq!(c.mu, thi);
    let want = Mat2::new(th.clone(), th.scale(&rat(-2, 1)), thi.clone(), -&thi);
    assert_eq!(c.f, want);
    assert!(c.f.det().is_one());
    let e = c.tower.from_base(&rf(&[1], &[0, 8]));
    assert_eq!(c.p, Mat2::new(e.clone(), c.tower.zero(), c.tower.zero(), -&e));
    assert!(c.verified);
    assert_eq!(c.trdeg, 0);
}

#[test]
fn log_hint_certificate() {
    let c = log_case();
    assert_eq!(c.trdeg, 1);
    let l = c.tower.generator_by_name("ell").unwrap();
    assert_eq!(l.derive(), c.tower.from_base(&rf(&[1], &[0, 1])));
    assert!(c.lambda1.is_zero());
    assert_eq!(c.lambda2, -&l.inv().unwrap());
    assert!(c.mu.is_one());
    let tw = &c.tower;
    assert_eq!(c.f, Mat2::new(tw.zero(), -&tw.one(), tw.one(), l));
    assert!(c.notes.iter().any(|n| n.contains("{0}")), "{:?}", c.notes);
}

#[test]
fn pattern_certificate() {
    let q = alg(RatFunc::t(), RatFunc::t());
    let s = DerivationSpec::new(RatFunc::zero(), RatFunc::one(), RatFunc::zero());
    let c = construct_certificate(&q, &s, &SplitOptions::default()).unwrap();
    let xi = &c.xi;
    assert_eq!(&(xi * xi), &c.tower.t());
    let rate = c.mu.derive().checked_div(&c.mu).unwrap();
    assert_eq!(rate, xi - &c.tower.from_base(&rf(&[1], &[0, 4])));
    assert_eq!(c.trdeg, 1);
    assert!(c.verified);
}

#[test]
fn generic_fallback() {
    let q = alg(RatFunc::t(), rf(&[1, 0, 1], &[1]));
    let s = DerivationSpec::new(RatFunc::one(), RatFunc::t(), RatFunc::zero());
    let opts = SplitOptions { hints: vec![Hint::RiccatiAuto], ..Default::default() };
    let c = construct_certificate(&q, &s, &opts).unwrap();
    assert_eq!(c.trdeg, 3);
    assert_eq!(c.tower.step_names(), vec!["xi", "lambda1", "lambda2", "mu"]);
}

#[test]
fn hint_syntax() {
    assert_eq!(Hint::parse("radical:8:t").unwrap(), Hint::Radical { n: 8, expr: "t".into() });
    assert_eq!(Hint::parse(" primitive: 1/t").unwrap(), Hint::Primitive { expr: "1/t".into() });
    assert_eq!(Hint::parse("riccati:auto").unwrap(), Hint::RiccatiAuto);
    assert!(Hint::parse("log:t").is_err());
    for h in ["radical:3:t^2", "hyperexp:xi", "primitive:1/t"] {
        assert_eq!(Hint::parse(h).unwrap().render(), h);
    }
}

#[test]
fn verification() {
    let c = radical8();
    assert!(verify_certificate(&c).passed());
    let th = c.tower.generator(0);
    let mut bad = c.clone();
    bad.f.m[0][0] = th.pow_u(2);
    assert_eq!(verify_certificate(&bad).failure, Some(VerifyFailure::Entry { row: 1, col: 1 }));
    bad.f.m[0][0] = c.tower.zero();
    bad.f.m[0][1] = c.tower.zero();
    assert_eq!(verify_certificate(&bad).failure, Some(VerifyFailure::Singular));
    let mut bad = c.clone();
    bad.xi = c.tower.t();
    assert_eq!(verify_certificate(&bad).failure, Some(VerifyFailure::XiNotRoot));
}

#[test]
fn solutions_from_f() {
    let c = radical8();
    let s = riccati_from_f(&c).unwrap();
    let th2 = c.tower.generator(0).pow_u(2);
    assert_eq!(s.ratios, vec![th2.clone(), th2.scale(&rat(2, 1))]);
    assert_eq!(s.eigen.unwrap().len(), 2);

    let c = log_case();
    let s = riccati_from_f(&c).unwrap();
    let l = c.tower.generator_by_name("ell").unwrap();
    assert_eq!(s.ratios, vec![c.tower.zero(), -&l.inv().unwrap()]);
    assert!(s.eigen.is_none());

    let q = alg(RatFunc::one(), RatFunc::one());
    let zero = DerivationSpec::default();
    let mut c = construct_certificate(&q, &zero, &SplitOptions::default()).unwrap();
    c.f = Mat2::identity(&c.tower);
    assert!(c.p.is_zero());
    let s = riccati_from_f(&c).unwrap();
    assert_eq!(s.ratios, vec![c.tower.zero()]);
    assert_eq!(s.eigen.unwrap(), vec![c.tower.one(), c.tower.zero()]);
}

#[test]
fn trdeg_values() {
    assert_eq!(trdeg_report(&radical8()), 0);
    assert_eq!(trdeg_report(&log_case()), 1);
}

#[test]
fn standard_examples() {
    let q = alg(RatFunc::one(), RatFunc::t());
    let s = DerivationSpec::new(rf(&[-1], &[0, 8]), RatFunc::zero(), RatFunc::zero());
    match standard_analyze(&q, &s, 10_000) {
        StandardReport::NotStandard { evidence } => assert!(evidence.ends_with("k*u"), "{evidence}"),
        other => panic!("{other:?}"),
    }
    let r = standard_analyze(&q, &DerivationSpec::default(), 10_000);
    assert_eq!(r, StandardReport::Standard { u: "u".into(), v: "v".into() });
    let mixed = DerivationSpec::new(RatFunc::one(), RatFunc::t(), RatFunc::zero());
    assert!(matches!(standard_analyze(&q, &mixed, 10_000), StandardReport::Inconclusive { .. }));
}

#[test]
fn standardize_examples() {
    let c = radical8();
    let pair = standardize_from_split(&c, &c.mu).unwrap();
    let th = c.tower.generator(0);
    // U² = μ² = t^(-1/4).
    let mu2 = th.pow(-2).unwrap();
    assert_eq!(pair.u_mat.mul(&pair.u_mat), Mat2::identity(&c.tower).scale(&mu2));
    let q = &c.algebra;
    assert!(q.mul(&pair.u, &pair.v).add(&q.mul(&pair.v, &pair.u)).is_zero());

    let q = alg(RatFunc::one(), RatFunc::one());
    let mut c = construct_certificate(&q, &DerivationSpec::default(), &SplitOptions::default()).unwrap();
    c.f = Mat2::identity(&c.tower);
    let tw = c.tower.clone();
    let pair = standardize_from_split(&c, &tw.one()).unwrap();
    assert_eq!(pair.u_mat, Mat2::new(tw.one(), tw.zero(), tw.zero(), -&tw.one()));
    assert_eq!(pair.v_mat, Mat2::new(tw.zero(), tw.one(), tw.one(), tw.zero()));
}
