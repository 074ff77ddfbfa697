use super::*;
use crate::arith::Poly;

fn rf(n: &[i64], d: &[i64]) -> RatFunc {
    RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
}

fn alg(a: RatFunc, b: RatFunc) -> QuatAlgebra {
    QuatAlgebra::new(a, b, DiffBase::new(RatFunc::one())).unwrap()
}

fn spec(a1: RatFunc, a2: RatFunc, a3: RatFunc) -> DerivationSpec {
    DerivationSpec::new(a1, a2, a3)
}

#[test]
fn products() {
    let q = alg(rf(&[2, 1], &[1]), RatFunc::t());
    let tw = q.base_tower();
    let (u, v, uv) = (QuatElem::basis(&tw, 1), QuatElem::basis(&tw, 2), QuatElem::basis(&tw, 3));
    assert_eq!(q.mul(&u, &v), uv);
    assert_eq!(q.mul(&v, &u), uv.scale(&tw.from_rat(rat(-1, 1))));
    let ab = &q.alpha * &q.beta;
    assert_eq!(q.mul(&uv, &uv), QuatElem::basis(&tw, 0).scale(&tw.from_base(&-ab)));

    let q = alg(RatFunc::one(), RatFunc::t());
    let tw = q.base_tower();
    let s = QuatElem::basis(&tw, 1).add(&QuatElem::basis(&tw, 2));
    assert_eq!(q.mul(&s, &s), QuatElem::basis(&tw, 0).scale(&tw.from_base(&rf(&[1, 1], &[1]))));
}

#[test]
fn norm_and_conj() {
    let q = alg(rf(&[0, 3], &[1]), rf(&[1], &[0, 1]));
    let tw = q.base_tower();
    let u = QuatElem::basis(&tw, 1);
    assert_eq!(q.norm(&u), tw.from_base(&-&q.alpha));
    let uv = QuatElem::basis(&tw, 3);
    assert_eq!(uv.conj(), uv.scale(&tw.from_rat(rat(-1, 1))));
    let x = QuatElem::new(tw.t(), tw.one(), tw.from_rat(rat(2, 1)), tw.from_base(&rf(&[1], &[1, 1])));
    let (n, c) = q.norm_conj(&x);
    assert_eq!(q.mul(&x, &c), QuatElem::basis(&tw, 0).scale(&n));
}

#[test]
fn derivation_examples() {
    let q = alg(rf(&[1, 0, 1], &[1]), RatFunc::t());
    let tw = q.base_tower();
    let u = QuatElem::basis(&tw, 1);
    let d = q.apply_derivation(&DerivationSpec::default(), &u);
    assert_eq!(d, u.scale(&tw.from_base(&q.half_log_alpha())));
    assert!(q.apply_derivation(&DerivationSpec::default(), &QuatElem::basis(&tw, 0)).is_zero());

    let q = alg(RatFunc::one(), RatFunc::from_int(3));
    let tw = q.base_tower();
    let s = spec(RatFunc::zero(), RatFunc::one(), RatFunc::zero());
    let d = q.apply_derivation(&s, &QuatElem::basis(&tw, 1));
    assert_eq!(d, QuatElem::basis(&tw, 3).scale(&tw.from_rat(rat(2, 1))));
}

#[test]
fn phi_images() {
    let q = alg(RatFunc::t(), rf(&[1, 1], &[1]));
    let tw = q.base_tower();
    let ext = resolve_xi(&q, &tw).unwrap();
    let (tw, xi) = (ext.tower.clone(), ext.generator.clone());
    let be = tw.from_base(&q.beta);
    let u = q.phi_map(&xi, &QuatElem::basis(&tw, 1)).unwrap();
    assert_eq!(u, Mat2::new(xi.clone(), tw.zero(), tw.zero(), -&xi));
    let uv = q.phi_map(&xi, &QuatElem::basis(&tw, 3)).unwrap();
    assert_eq!(uv, Mat2::new(tw.zero(), &xi * &be, -&xi, tw.zero()));
    let v = q.phi_map(&xi, &QuatElem::basis(&tw, 2)).unwrap();
    assert!(u.mul(&v).add(&v.mul(&u)).is_zero());
    let x = QuatElem::new(tw.t(), xi.clone(), tw.one(), &xi + &tw.t());
    assert_eq!(q.phi_inv(&xi, &q.phi_map(&xi, &x).unwrap()).unwrap(), x);
    assert_eq!(q.phi_map(&tw.t(), &x), Err(QuatError::XiNotRoot));
}

#[test]
fn p_matrix() {
    let q = alg(RatFunc::one(), RatFunc::t());
    let tw = q.base_tower();
    let xi = tw.one();
    let p = q.build_p(&spec(rf(&[-1], &[0, 8]), RatFunc::zero(), RatFunc::zero()), &xi).unwrap();
    let e = tw.from_base(&rf(&[1], &[0, 8]));
    assert_eq!(p, Mat2::new(e.clone(), tw.zero(), tw.zero(), -&e));
    assert!(p.trace().is_zero());
    let p0 = q.build_p(&DerivationSpec::default(), &xi).unwrap();
    let b = tw.from_base(&rf(&[1], &[0, 4]));
    assert_eq!(p0, Mat2::new(b.clone(), tw.zero(), tw.zero(), -&b));
}

#[test]
fn riccati_examples() {
    let q = alg(RatFunc::one(), RatFunc::t());
    let tw = q.base_tower();
    let xi = tw.one();
    let cases = [
        (spec(rf(&[-1], &[0, 8]), RatFunc::zero(), RatFunc::zero()), "X' = X/(4*t)"),
        (spec(rf(&[-1], &[0, 4]), rf(&[-1], &[0, 2]), rf(&[1], &[0, 2])), "X' = X^2/t"),
        (spec(rf(&[-1], &[0, 4]), RatFunc::from_int(-1), RatFunc::zero()), "X' = X^2 - t"),
    ];
    for (s, want) in cases {
        assert_eq!(q.build_riccati(&s, &xi).unwrap().render(), want);
    }
}

#[test]
fn mu_rates() {
    let q = alg(RatFunc::one(), RatFunc::t());
    let tw = q.base_tower();
    let s = spec(rf(&[-1], &[0, 8]), RatFunc::zero(), RatFunc::zero());
    let ext = tw.adjoin(TowerStep::Radical { n: 4, f: tw.t(), name: "theta".into() }).unwrap();
    let xi = ext.tower.one();
    let rate = q.build_mu_rate(&s, &xi, &ext.generator).unwrap();
    assert_eq!(rate, ext.tower.from_base(&rf(&[-1], &[0, 8])));
    assert_eq!(q.build_mu_rate(&s, &xi, &ext.tower.t()), Err(QuatError::NotASolution));

    let q = alg(RatFunc::t(), RatFunc::t());
    let ext = resolve_xi(&q, &q.base_tower()).unwrap();
    let (tw, xi) = (ext.tower.clone(), ext.generator.clone());
    let s = spec(RatFunc::zero(), RatFunc::one(), RatFunc::zero());
    let rate = q.build_mu_rate(&s, &xi, &xi).unwrap();
    assert_eq!(rate, &xi - &tw.from_base(&rf(&[1], &[0, 4])));

    let q = alg(RatFunc::one(), rf(&[1, 1], &[1]));
    let tw = q.base_tower();
    let s = spec(RatFunc::t(), RatFunc::zero(), RatFunc::zero());
    let r = q.build_riccati(&s, &tw.one()).unwrap();
    assert!(r.is_solution(&tw.zero()));
    let p = q.build_p(&s, &tw.one()).unwrap();
    assert_eq!(q.build_mu_rate(&s, &tw.one(), &tw.zero()).unwrap(), -p.get(0, 0));
}
