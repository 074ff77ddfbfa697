mod common;

use common::*;
use quatsplit::arith::{rat, Poly};
use quatsplit::ode::zeropole_oracle;
use quatsplit::split::{finite_split_witness_check, nonsplit_algebraic_check, CriteriaMode, Verdict};
use rand::Rng;

#[test]
fn leibniz_in_towers() {
    leibniz_towers(100).unwrap();
}

#[test]
fn leibniz_on_quaternions() {
    leibniz_quaternions(100).unwrap();
}

#[test]
fn phi_intertwines() {
    phi_intertwining(50).unwrap();
}

#[test]
fn parser_round_trips() {
    parser_round_trip(200).unwrap();
}

#[test]
fn zeropole_on_t_squared() {
    let tp = e("t^2");
    for n in [-4i64, -1, 1, 2, 5] {
        let f = e("t").pow(n).unwrap().scale(&rat(3, 7));
        let rep = zeropole_oracle(&tp, &f, n).unwrap();
        assert_eq!(rep.points, vec![(rat(0, 1), true)]);
        assert!(rep.all_verified);
    }
    assert!(zeropole_oracle(&tp, &e("t + 1"), 1).is_err());
}

#[test]
fn norm_checks_agree() {
    norm_equivalence(100).unwrap();
}

#[test]
fn witnesses_block_nonsplit_verdicts() {
    let mut r = rng(17);
    let alphas = [e("t"), e("t^3 - t"), e("t^3 + 2"), e("2*t^5 - t")];
    let mut checked = 0;
    while checked < 40 {
        let alpha = alphas[r.gen_range(0..alphas.len())].as_poly().unwrap().clone();
        let g0 = Poly::from_ints(&(0..r.gen_range(1..=3)).map(|_| r.gen_range(-2..=2)).collect::<Vec<_>>());
        let g1 = Poly::from_ints(&(0..r.gen_range(1..=3)).map(|_| r.gen_range(-2..=2)).collect::<Vec<_>>());
        let n = r.gen_range(1..=3);
        let Some(a) = witness_a(&alpha, &g0, &g1, n) else { continue };
        if a.is_zero() {
            continue;
        }
        assert!(finite_split_witness_check(&alpha, &a, &g0, &g1, n, &rat(1, 1)).unwrap());
        let v = nonsplit_algebraic_check(&alpha, &a, CriteriaMode::Disjunction).unwrap();
        assert_eq!(v.verdict, Verdict::NoVerdict, "alpha = {alpha}, gamma = ({g0}, {g1}), a = {a}: {:?}", v.evidence);
        checked += 1;
    }
}

#[test]
fn randomized_certificates() {
    random_certificates(25).unwrap();
}
