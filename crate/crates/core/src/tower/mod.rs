//! Differential field towers over ℚ(t).

mod render;
mod value;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;

use crate::arith::{Rat, RatFunc};

pub(crate) use value::{Field, Rule, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error("zero radicand")]
    ZeroRadicand,
    #[error("radical index must be at least 2")]
    BadIndex,
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("elements belong to different towers")]
    TowerMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible")]
    NotInvertible,
}

/// The base differential field ℚ(t) with `t' = t_prime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffBase {
    pub generator_name: String,
    pub t_prime: RatFunc,
}

impl DiffBase {
    pub fn new(t_prime: RatFunc) -> Self {
        DiffBase { generator_name: "t".into(), t_prime }
    }
}

/// Kind of an adjoined generator, with its data one level down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum StepKind {
    Radical { n: usize, f: Value },
    Primitive { w: Value },
    HyperExp { w: Value },
    RiccatiGen { a0: Value, a1: Value, a2: Value },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Step {
    pub name: String,
    pub kind: StepKind,
    pub rule: Rule,
}

/// A step to adjoin, with data in the current tower.
#[derive(Clone, Debug)]
pub enum TowerStep {
    Radical { n: usize, f: TowerElem, name: String },
    Primitive { w: TowerElem, name: String },
    HyperExp { w: TowerElem, name: String },
    RiccatiGen { a0: TowerElem, a1: TowerElem, a2: TowerElem, name: String },
}

/// A public view of an adjoined step.
#[derive(Clone, Debug, PartialEq)]
pub enum StepInfo {
    Radical { n: usize, f: TowerElem },
    Primitive { w: TowerElem },
    HyperExp { w: TowerElem },
    RiccatiGen { a0: TowerElem, a1: TowerElem, a2: TowerElem },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    base: DiffBase,
    steps: Vec<Step>,
    rules: Vec<Rule>,
}

impl Tower {
    pub fn new(base: DiffBase) -> Arc<Tower> {
        Arc::new(Tower { base, steps: Vec::new(), rules: Vec::new() })
    }

    /// ℚ(t) with `t' = 1`.
    pub fn standard() -> Arc<Tower> {
        Tower::new(DiffBase::new(RatFunc::one()))
    }

    pub fn base(&self) -> &DiffBase {
        &self.base
    }

    pub fn t_prime(&self) -> &RatFunc {
        &self.base.t_prime
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub(crate) fn field(&self) -> Field<'_> {
        Field { t_prime: &self.base.t_prime, rules: &self.rules }
    }

    pub(crate) fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn step_names(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.name.as_str()).collect()
    }

    /// Number of non-radical steps.
    pub fn tr_degree(&self) -> usize {
        self.steps.iter().filter(|s| !matches!(s.kind, StepKind::Radical { .. })).count()
    }

    /// Sub-tower of the first `k` steps.
    pub fn prefix(&self, k: usize) -> Arc<Tower> {
        Arc::new(Tower {
            base: self.base.clone(),
            steps: self.steps[..k].to_vec(),
            rules: self.rules[..k].to_vec(),
        })
    }

    /// Information about step `i` (0-based), with data in the prefix tower.
    pub fn step_info(&self, i: usize) -> (String, StepInfo) {
        let pre = self.prefix(i);
        let e = |v: &Value| TowerElem { tower: pre.clone(), value: v.clone() };
        let s = &self.steps[i];
        let info = match &s.kind {
            StepKind::Radical { n, f } => StepInfo::Radical { n: *n, f: e(f) },
            StepKind::Primitive { w } => StepInfo::Primitive { w: e(w) },
            StepKind::HyperExp { w } => StepInfo::HyperExp { w: e(w) },
            StepKind::RiccatiGen { a0, a1, a2 } => {
                StepInfo::RiccatiGen { a0: e(a0), a1: e(a1), a2: e(a2) }
            }
        };
        (s.name.clone(), info)
    }

    /// Index of the step named `name`.
    pub fn find(&self, name: &str) -> Option<usize> {
        self.steps.iter().position(|s| s.name == name)
    }

    /// The generator of step `i` as an element of this tower.
    pub fn generator(self: &Arc<Self>, i: usize) -> TowerElem {
        let f = self.field();
        let g = match &self.rules[i] {
            Rule::Algebraic { n, .. } => {
                let mut c = vec![f.zero(i); *n];
                c[1] = f.one(i);
                Value::Alg(c)
            }
            Rule::Transcendental { .. } => Value::Frac(vec![f.zero(i), f.one(i)], vec![f.one(i)]),
        };
        TowerElem { tower: self.clone(), value: f.lift(g, i + 1, self.depth()) }
    }

    pub fn generator_by_name(self: &Arc<Self>, name: &str) -> Option<TowerElem> {
        self.find(name).map(|i| self.generator(i))
    }

    pub fn zero(self: &Arc<Self>) -> TowerElem {
        TowerElem { tower: self.clone(), value: self.field().zero(self.depth()) }
    }

    pub fn one(self: &Arc<Self>) -> TowerElem {
        self.from_base(&RatFunc::one())
    }

    pub fn from_base(self: &Arc<Self>, r: &RatFunc) -> TowerElem {
        TowerElem { tower: self.clone(), value: self.field().lift_base(self.depth(), r) }
    }

    pub fn from_rat(self: &Arc<Self>, c: Rat) -> TowerElem {
        self.from_base(&RatFunc::from_rat(c))
    }

    pub fn t(self: &Arc<Self>) -> TowerElem {
        self.from_base(&RatFunc::t())
    }

    /// Adjoin a step, merging radicals over an identical (or reciprocal)
    /// radicand into a single generator of index `lcm(n, m)`.
    pub fn adjoin(self: &Arc<Self>, step: TowerStep) -> Result<Extension, TowerError> {
        let name = match &step {
            TowerStep::Radical { name, .. }
            | TowerStep::Primitive { name, .. }
            | TowerStep::HyperExp { name, .. }
            | TowerStep::RiccatiGen { name, .. } => name.clone(),
        };
        let check = |e: &TowerElem| {
            if Arc::ptr_eq(&e.tower, self) || *e.tower == **self {
                Ok(())
            } else {
                Err(TowerError::TowerMismatch)
            }
        };
        match &step {
            TowerStep::Radical { f, .. } => check(f)?,
            TowerStep::Primitive { w, .. } | TowerStep::HyperExp { w, .. } => check(w)?,
            TowerStep::RiccatiGen { a0, a1, a2, .. } => {
                check(a0)?;
                check(a1)?;
                check(a2)?;
            }
        }
        if let TowerStep::Radical { n, f, .. } = &step {
            if f.is_zero() {
                return Err(TowerError::ZeroRadicand);
            }
            if *n < 2 {
                return Err(TowerError::BadIndex);
            }
            if let Some(ext) = self.try_merge(*n, f)? {
                return Ok(ext);
            }
        }
        if name == self.base.generator_name || self.find(&name).is_some() {
            return Err(TowerError::DuplicateName(name));
        }
        let d = self.depth();
        let fld = self.field();
        let (kind, rule) = match step {
            TowerStep::Radical { n, f, .. } => {
                let fv = f.value;
                let rate = fld
                    .div(d, &fld.derive(d, &fv), &fld.mul(d, &fld.lift_base(d, &RatFunc::from_int(n as i64)), &fv))
                    .expect("nonzero radicand");
                (StepKind::Radical { n, f: fv.clone() }, Rule::Algebraic { n, radicand: fv, rate })
            }
            TowerStep::Primitive { w, .. } => {
                let image = trim(&fld, d, vec![w.value.clone()]);
                (StepKind::Primitive { w: w.value }, Rule::Transcendental { image })
            }
            TowerStep::HyperExp { w, .. } => {
                let image = trim(&fld, d, vec![fld.zero(d), w.value.clone()]);
                (StepKind::HyperExp { w: w.value }, Rule::Transcendental { image })
            }
            TowerStep::RiccatiGen { a0, a1, a2, .. } => {
                let image = trim(&fld, d, vec![a0.value.clone(), a1.value.clone(), a2.value.clone()]);
                (
                    StepKind::RiccatiGen { a0: a0.value, a1: a1.value, a2: a2.value },
                    Rule::Transcendental { image },
                )
            }
        };
        let mut steps = self.steps.clone();
        let mut rules = self.rules.clone();
        steps.push(Step { name, kind, rule: rule.clone() });
        rules.push(rule);
        let tower = Arc::new(Tower { base: self.base.clone(), steps, rules });
        let generator = tower.generator(d);
        Ok(Extension { tower, generator, carry: Carry::Lift { from: d } })
    }

    fn try_merge(self: &Arc<Self>, m: usize, f: &TowerElem) -> Result<Option<Extension>, TowerError> {
        let fld = self.field();
        let d = self.depth();
        for (i, s) in self.steps.iter().enumerate() {
            let StepKind::Radical { n, f: fi } = &s.kind else { continue };
            let lifted = fld.lift(fi.clone(), i, d);
            let reciprocal = if lifted == f.value {
                false
            } else if fld.mul(d, &lifted, &f.value) == fld.one(d) {
                true
            } else {
                continue;
            };
            let big = n.lcm(&m);
            let factor = big / n;
            let tower = if factor == 1 {
                self.clone()
            } else {
                Arc::new(self.remap_radical(i, big, factor))
            };
            let carry = if factor == 1 { Carry::Same } else { Carry::Remap { level: i, factor } };
            let phi = tower.generator(i);
            let mut g = phi.pow_u(big / m);
            if reciprocal {
                g = g.inv()?;
            }
            return Ok(Some(Extension { tower, generator: g, carry }));
        }
        Ok(None)
    }

    /// Tower with radical step `level` raised to index `big = n·factor`; all
    /// stored data above that level is re-embedded.
    fn remap_radical(&self, level: usize, big: usize, factor: usize) -> Tower {
        let mut steps = self.steps.clone();
        let mut rules: Vec<Rule> = self.rules.clone();
        let StepKind::Radical { f, .. } = &self.steps[level].kind else { unreachable!() };
        let f = f.clone();
        let fld = Field { t_prime: &self.base.t_prime, rules: &self.rules[..level] };
        let rate = fld
            .div(level, &fld.derive(level, &f), &fld.mul(level, &fld.lift_base(level, &RatFunc::from_int(big as i64)), &f))
            .expect("nonzero radicand");
        steps[level].kind = StepKind::Radical { n: big, f: f.clone() };
        let rule = Rule::Algebraic { n: big, radicand: f, rate };
        steps[level].rule = rule.clone();
        rules[level] = rule;
        let old = self.field();
        let re = |v: &Value, depth: usize| remap_value(&old, v, depth, level, factor);
        for j in level + 1..steps.len() {
            let kind = match &self.steps[j].kind {
                StepKind::Radical { n, f } => StepKind::Radical { n: *n, f: re(f, j) },
                StepKind::Primitive { w } => StepKind::Primitive { w: re(w, j) },
                StepKind::HyperExp { w } => StepKind::HyperExp { w: re(w, j) },
                StepKind::RiccatiGen { a0, a1, a2 } => {
                    StepKind::RiccatiGen { a0: re(a0, j), a1: re(a1, j), a2: re(a2, j) }
                }
            };
            let rule = match &self.rules[j] {
                Rule::Algebraic { n, radicand, rate } => {
                    Rule::Algebraic { n: *n, radicand: re(radicand, j), rate: re(rate, j) }
                }
                Rule::Transcendental { image } => {
                    Rule::Transcendental { image: image.iter().map(|v| re(v, j)).collect() }
                }
            };
            steps[j].kind = kind;
            steps[j].rule = rule.clone();
            rules[j] = rule;
        }
        Tower { base: self.base.clone(), steps, rules }
    }

    /// Canonical one-line description of step `i`.
    pub fn render_step(&self, i: usize) -> String {
        render::render_step(self, i)
    }
}

fn trim(f: &Field<'_>, d: usize, mut v: Vec<Value>) -> Vec<Value> {
    while v.last().is_some_and(|x| f.is_zero(d, x)) {
        v.pop();
    }
    v
}

/// Re-embed a value when radical level `level` (0-based step) has its index
/// multiplied by `factor`: the old generator becomes `φ^factor`.
fn remap_value(old: &Field<'_>, v: &Value, d: usize, level: usize, factor: usize) -> Value {
    if d <= level {
        return v.clone();
    }
    match v {
        Value::Base(_) => v.clone(),
        Value::Alg(c) if d == level + 1 => {
            let z = old.zero(level);
            let mut out = vec![z; c.len() * factor];
            for (j, cj) in c.iter().enumerate() {
                out[j * factor] = cj.clone();
            }
            Value::Alg(out)
        }
        Value::Alg(c) => Value::Alg(c.iter().map(|x| remap_value(old, x, d - 1, level, factor)).collect()),
        Value::Frac(n, den) => Value::Frac(
            n.iter().map(|x| remap_value(old, x, d - 1, level, factor)).collect(),
            den.iter().map(|x| remap_value(old, x, d - 1, level, factor)).collect(),
        ),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Carry {
    Same,
    Lift { from: usize },
    Remap { level: usize, factor: usize },
}

/// Result of adjoining a step: the new tower, the requested generator as an
/// element of it, and a map carrying elements of the old tower across.
#[derive(Clone, Debug)]
pub struct Extension {
    pub tower: Arc<Tower>,
    pub generator: TowerElem,
    carry: Carry,
}

impl Extension {
    /// An extension that adds nothing; `generator` is an existing element.
    pub fn trivial(generator: TowerElem) -> Extension {
        Extension { tower: generator.tower().clone(), generator, carry: Carry::Same }
    }

    /// Image of an element of the tower this extension was built from.
    pub fn carry(&self, x: &TowerElem) -> TowerElem {
        let value = match &self.carry {
            Carry::Same => x.value.clone(),
            Carry::Lift { from } => self.tower.field().lift(x.value.clone(), *from, from + 1),
            Carry::Remap { level, factor } => {
                remap_value(&x.tower.field(), &x.value, x.tower.depth(), *level, *factor)
            }
        };
        TowerElem { tower: self.tower.clone(), value }
    }

    /// True when the step was merged into an existing radical.
    pub fn merged(&self) -> bool {
        !matches!(self.carry, Carry::Lift { .. })
    }
}

/// An element of a differential tower, in normal form.
#[derive(Clone)]
pub struct TowerElem {
    tower: Arc<Tower>,
    pub(crate) value: Value,
}

impl TowerElem {
    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    fn same(&self, other: &TowerElem) -> Result<(), TowerError> {
        if Arc::ptr_eq(&self.tower, &other.tower) || self.tower == other.tower {
            Ok(())
        } else {
            Err(TowerError::TowerMismatch)
        }
    }

    fn d(&self) -> usize {
        self.tower.depth()
    }

    fn wrap(&self, value: Value) -> TowerElem {
        TowerElem { tower: self.tower.clone(), value }
    }

    pub fn is_zero(&self) -> bool {
        self.tower.field().is_zero(self.d(), &self.value)
    }

    pub fn is_one(&self) -> bool {
        self.tower.field().is_one(self.d(), &self.value)
    }

    pub fn checked_add(&self, o: &TowerElem) -> Result<TowerElem, TowerError> {
        self.same(o)?;
        Ok(self.wrap(self.tower.field().add(self.d(), &self.value, &o.value)))
    }

    pub fn checked_sub(&self, o: &TowerElem) -> Result<TowerElem, TowerError> {
        self.same(o)?;
        Ok(self.wrap(self.tower.field().sub(self.d(), &self.value, &o.value)))
    }

    pub fn checked_mul(&self, o: &TowerElem) -> Result<TowerElem, TowerError> {
        self.same(o)?;
        Ok(self.wrap(self.tower.field().mul(self.d(), &self.value, &o.value)))
    }

    pub fn checked_div(&self, o: &TowerElem) -> Result<TowerElem, TowerError> {
        self.same(o)?;
        Ok(self.wrap(self.tower.field().div(self.d(), &self.value, &o.value)?))
    }

    pub fn inv(&self) -> Result<TowerElem, TowerError> {
        Ok(self.wrap(self.tower.field().inv(self.d(), &self.value)?))
    }

    pub fn pow_u(&self, e: usize) -> TowerElem {
        let f = self.tower.field();
        let d = self.d();
        let mut acc = f.one(d);
        let mut base = self.value.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = f.mul(d, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = f.mul(d, &base, &base);
            }
        }
        self.wrap(acc)
    }

    pub fn pow(&self, e: i64) -> Result<TowerElem, TowerError> {
        let p = self.pow_u(e.unsigned_abs() as usize);
        if e < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    pub fn scale(&self, c: &Rat) -> TowerElem {
        self * &self.tower.from_rat(c.clone())
    }

    pub fn derive(&self) -> TowerElem {
        self.wrap(self.tower.field().derive(self.d(), &self.value))
    }

    pub fn is_constant(&self) -> bool {
        self.derive().is_zero()
    }

    /// Equality of normal forms; errors when the towers differ.
    pub fn normalize_equals(&self, o: &TowerElem) -> Result<bool, TowerError> {
        self.same(o)?;
        Ok(self.value == o.value)
    }

    /// The element as a member of ℚ(t), when it lies there.
    pub fn as_base(&self) -> Option<RatFunc> {
        match self.tower.field().project(self.d(), &self.value, 0)? {
            Value::Base(r) => Some(r),
            _ => None,
        }
    }

    /// The element as a member of the first `k` steps, when it lies there.
    pub fn project(&self, k: usize) -> Option<TowerElem> {
        let v = self.tower.field().project(self.d(), &self.value, k)?;
        Some(TowerElem { tower: self.tower.prefix(k), value: v })
    }

    /// Embed an element of a prefix of this tower.
    pub fn lift_into(&self, tower: &Arc<Tower>) -> Result<TowerElem, TowerError> {
        let k = self.d();
        if k > tower.depth() || *tower.prefix(k) != *self.tower {
            return Err(TowerError::TowerMismatch);
        }
        Ok(TowerElem { tower: tower.clone(), value: tower.field().lift(self.value.clone(), k, tower.depth()) })
    }

    /// `x·σ(x)` where σ negates the generator of the top step, which must be
    /// a square root; `None` otherwise.
    pub fn quadratic_norm(&self) -> Option<TowerElem> {
        let d = self.d();
        let Some(Rule::Algebraic { n: 2, .. }) = self.tower.rules.last() else { return None };
        let f = self.tower.field();
        let Value::Alg(c) = &self.value else { return None };
        let conj = Value::Alg(vec![c[0].clone(), f.neg(d - 1, &c[1])]);
        let prod = f.mul(d, &self.value, &conj);
        let down = f.project(d, &prod, d - 1)?;
        Some(TowerElem { tower: self.tower.prefix(d - 1), value: down })
    }

    /// Canonical text form in `t` and the generator names.
    pub fn render(&self) -> String {
        render::render_value(&self.tower, self.d(), &self.value)
    }
}

impl PartialEq for TowerElem {
    fn eq(&self, other: &Self) -> bool {
        self.same(other).is_ok() && self.value == other.value
    }
}

impl Eq for TowerElem {}

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TowerElem({})", self.render())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &TowerElem {
            type Output = TowerElem;
            fn $m(self, rhs: &TowerElem) -> TowerElem {
                self.$checked(rhs).expect("tower mismatch")
            }
        }
        impl $tr for TowerElem {
            type Output = TowerElem;
            fn $m(self, rhs: TowerElem) -> TowerElem {
                (&self).$checked(&rhs).expect("tower mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        self.wrap(self.tower.field().neg(self.d(), &self.value))
    }
}

impl Neg for TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        -&self
    }
}
