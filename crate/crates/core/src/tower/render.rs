//! Canonical text forms of tower elements and steps.

use num_traits::Zero;

use crate::arith::Poly;

use super::{StepKind, Tower, Value};

/// Render a value of depth `d`; the result parses back with the tower's
/// generator names.
pub(crate) fn render_value(tower: &Tower, d: usize, v: &Value) -> String {
    let terms = terms(tower, d, v);
    if terms.is_empty() {
        return "0".into();
    }
    join(&terms)
}

fn join(terms: &[String]) -> String {
    let mut out = String::new();
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

/// Top-level summands of the rendering of `v`.
fn terms(tower: &Tower, d: usize, v: &Value) -> Vec<String> {
    match v {
        Value::Base(r) => match r.as_poly() {
            _ if r.is_zero() => Vec::new(),
            Some(p) => p
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| Poly::monomial(c.clone(), k).render_var("t"))
                .collect(),
            None => vec![r.render()],
        },
        Value::Alg(c) => poly_terms(tower, d, c),
        Value::Frac(num, den) => {
            if den.len() == 1 {
                return poly_terms(tower, d, num);
            }
            let n = poly_terms(tower, d, num);
            let ns = if n.len() > 1 { format!("({})", join(&n)) } else { join(&n) };
            let dt = poly_terms(tower, d, den);
            let ds = join(&dt);
            let bare = ds.chars().all(|ch| ch.is_alphanumeric() || ch == '_');
            vec![if bare { format!("{ns}/{ds}") } else { format!("{ns}/({ds})") }]
        }
    }
}

/// Terms of `Σ c_i x^i` in descending powers of the level-`d` generator.
fn poly_terms(tower: &Tower, d: usize, c: &[Value]) -> Vec<String> {
    let name = &tower.steps()[d - 1].name;
    let f = tower.field();
    let mut out = Vec::new();
    for (i, ci) in c.iter().enumerate().rev() {
        if f.is_zero(d - 1, ci) {
            continue;
        }
        let m = match i {
            0 => String::new(),
            1 => name.clone(),
            _ => format!("{name}^{i}"),
        };
        let sub = terms(tower, d - 1, ci);
        if m.is_empty() {
            out.extend(sub);
        } else if f.is_one(d - 1, ci) {
            out.push(m);
        } else if f.is_one(d - 1, &f.neg(d - 1, ci)) {
            out.push(format!("-{m}"));
        } else if sub.len() == 1 {
            out.push(format!("{}*{m}", sub[0]));
        } else {
            out.push(format!("({})*{m}", join(&sub)));
        }
    }
    out
}

/// `name: radical n=8 of t`, `name: primitive w=...`, `name: hyperexp w=...`,
/// `name: riccati a0=...; a1=...; a2=...`.
pub(crate) fn render_step(tower: &Tower, i: usize) -> String {
    let s = &tower.steps()[i];
    let r = |v: &Value| render_value(tower, i, v);
    match &s.kind {
        StepKind::Radical { n, f } => format!("{}: radical n={} of {}", s.name, n, r(f)),
        StepKind::Primitive { w } => format!("{}: primitive w={}", s.name, r(w)),
        StepKind::HyperExp { w } => format!("{}: hyperexp w={}", s.name, r(w)),
        StepKind::RiccatiGen { a0, a1, a2 } => {
            format!("{}: riccati a0={}; a1={}; a2={}", s.name, r(a0), r(a1), r(a2))
        }
    }
}
