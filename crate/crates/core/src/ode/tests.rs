use super::*;
use crate::arith::{rat, Poly};
use crate::quat::QuatAlgebra;
use crate::tower::DiffBase;

fn rf(n: &[i64], d: &[i64]) -> RatFunc {
    RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
}

fn one() -> RatFunc {
    RatFunc::one()
}

#[test]
fn logderiv_examples() {
    assert_eq!(logderiv_multiple(&rf(&[1], &[0, 4]), &one()).unwrap(), Some((4, RatFunc::t())));
    assert_eq!(logderiv_multiple(&rf(&[2], &[0, 1]), &one()).unwrap(), Some((1, rf(&[0, 0, 1], &[1]))));
    assert_eq!(logderiv_multiple(&one(), &one()).unwrap(), None);
    assert_eq!(logderiv_multiple(&one(), &RatFunc::t()), Err(OdeError::UnsupportedDerivation));
}

#[test]
fn logderiv_minimal() {
    // a = 1/(6t) + 1/(4(t-1)): lcm 12
    let a = &rf(&[1], &[0, 6]) + &rf(&[1], &[-4, 4]);
    let (n, f) = logderiv_multiple(&a, &one()).unwrap().unwrap();
    assert_eq!(n, 12);
    assert_eq!(f.d_dt(), &(&a * &f).scale(&rat(12, 1)) * &RatFunc::one());
    for m in 1..n {
        let ma = a.scale(&rat(m as i64, 1));
        assert!(logderiv_residues(&ma).terms.iter().any(|(_, r)| !r.is_integer()));
    }
}

#[test]
fn linear_radical() {
    let a = rf(&[-1], &[0, 8]);
    let s = solve_linear_radical(&a, &one(), 16).unwrap().unwrap();
    assert_eq!(s, RadicalSolution { n: 8, f: rf(&[1], &[0, 1]) });
    let tw = Tower::standard();
    let ext = s.adjoin(&tw, "theta").unwrap();
    let th = &ext.generator;
    assert_eq!(th.derive(), th * &ext.tower.from_base(&a));
    assert_eq!(solve_linear_radical(&a, &one(), 7).unwrap(), None);

    let s = solve_linear_radical(&rf(&[1], &[0, 2]), &one(), 16).unwrap().unwrap();
    assert_eq!(s, RadicalSolution { n: 2, f: RatFunc::t() });
    assert_eq!(solve_linear_radical(&RatFunc::t(), &one(), 16).unwrap(), None);
}

#[test]
fn riccati_examples() {
    let z = RatFunc::zero();
    let s = riccati_rational_base(&z, &z, &rf(&[1], &[0, 1]), 16, 10_000).unwrap();
    assert_eq!(s.isolated, vec![z.clone()]);
    assert!(s.family.is_none());
    assert_eq!(s.status, SolveStatus::Complete);

    let s = riccati_rational_base(&-&RatFunc::t(), &z, &one(), 16, 10_000).unwrap();
    assert!(s.all().is_empty());
    assert_eq!(s.status, SolveStatus::Complete);

    let s = riccati_rational_base(&z, &z, &-&one(), 16, 10_000).unwrap();
    assert_eq!(s.isolated, vec![z.clone()]);
    assert_eq!(s.family, Some([rf(&[1], &[0, 1]), rf(&[1], &[1, 1])]));
}

#[test]
fn riccati_linear_cases() {
    let z = RatFunc::zero();
    let s = riccati_rational_base(&z, &rf(&[1], &[0, 4]), &z, 16, 100).unwrap();
    assert_eq!(s.isolated, vec![z.clone()]);
    assert_eq!(s.radical, Some(RadicalSolution { n: 4, f: RatFunc::t() }));
    // X' = 1: X = t + c
    let s = riccati_rational_base(&one(), &z, &z, 16, 100).unwrap();
    for x in s.all() {
        assert_eq!(x.d_dt(), one());
    }
    assert!(s.all().len() >= 2);
}

#[test]
fn riccati_with_rational_poles() {
    // X = 1/(t-1) + t solves X' = a0 + a1 X + a2 X^2 for a0 chosen to fit.
    let x = &rf(&[1], &[-1, 1]) + &RatFunc::t();
    let a1 = rf(&[0, 1], &[1]);
    let a2 = rf(&[1], &[0, 1]);
    let a0 = &(&x.d_dt() - &(&a1 * &x)) - &(&a2 * &(&x * &x));
    let s = riccati_rational_base(&a0, &a1, &a2, 16, 10_000).unwrap();
    assert!(s.all().contains(&x), "{:?}", s);
}

fn alg(beta: RatFunc) -> QuatAlgebra {
    QuatAlgebra::new(RatFunc::t(), beta, DiffBase::new(one())).unwrap()
}

#[test]
fn pattern_examples() {
    let q = alg(RatFunc::t());
    let spec = DerivationSpec::new(RatFunc::zero(), one(), RatFunc::zero());
    let xi = crate::quat::resolve_xi(&q, &q.base_tower()).unwrap();
    let eq = q.build_riccati(&spec, &xi.generator).unwrap();
    let p = riccati_pattern_solutions(&eq, &q, &spec).unwrap();
    assert_eq!(p.eta, p.ext.carry(&xi.generator));
    assert_eq!(p.ext.tower.depth(), 1);

    let q = alg(rf(&[0, 0, 1], &[1]));
    let xi = crate::quat::resolve_xi(&q, &q.base_tower()).unwrap();
    let eq = q.build_riccati(&spec, &xi.generator).unwrap();
    let p = riccati_pattern_solutions(&eq, &q, &spec).unwrap();
    assert_eq!(p.eta.as_base(), Some(RatFunc::t()));

    let other = DerivationSpec::new(one(), one(), RatFunc::zero());
    let eq = q.build_riccati(&other, &xi.generator).unwrap();
    assert!(riccati_pattern_solutions(&eq, &q, &other).is_none());
}

#[test]
fn zeropole() {
    let tp = rf(&[0, 0, 1], &[1]);
    let f = rf(&[0, 0, 0, 1], &[1]);
    let rep = zeropole_oracle(&tp, &f, 3).unwrap();
    assert_eq!(rep.points, vec![(rat(0, 1), true)]);
    assert!(rep.all_verified);
    let rep = zeropole_oracle(&tp, &rf(&[5], &[1]), 0).unwrap();
    assert!(rep.points.is_empty() && rep.all_verified);
    assert!(zeropole_oracle(&tp, &RatFunc::t(), 3).is_err());
}
