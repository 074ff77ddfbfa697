//! Recursive element representation for differential towers.
//!
//! An element at depth `d` is either a base element of ℚ(t) (`d = 0`), a
//! reduced vector `Σ c_i θ^i` (`0 <= i < n`) over depth `d-1` when step `d`
//! is a radical `θ^n = f`, or a reduced fraction of polynomials in the step
//! generator over depth `d-1` with a monic denominator. Each level has a
//! unique normal form, so structural equality decides field equality.

use crate::arith::RatFunc;

use super::TowerError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Value {
    Base(RatFunc),
    Alg(Vec<Value>),
    Frac(Vec<Value>, Vec<Value>),
}

/// How the generator of one step differentiates, with data one level down.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Rule {
    /// `θ^n = radicand`, `θ' = rate·θ`.
    Algebraic { n: usize, radicand: Value, rate: Value },
    /// `x' = Σ image[i]·x^i`, with `x` transcendental over the level below.
    Transcendental { image: Vec<Value> },
}

type UPoly = Vec<Value>;

/// Field operations over a tower prefix.
#[derive(Clone, Copy)]
pub(crate) struct Field<'a> {
    pub t_prime: &'a RatFunc,
    pub rules: &'a [Rule],
}

impl<'a> Field<'a> {
    pub fn zero(&self, d: usize) -> Value {
        match d {
            0 => Value::Base(RatFunc::zero()),
            _ => match &self.rules[d - 1] {
                Rule::Algebraic { n, .. } => Value::Alg(vec![self.zero(d - 1); *n]),
                Rule::Transcendental { .. } => Value::Frac(Vec::new(), vec![self.one(d - 1)]),
            },
        }
    }

    pub fn one(&self, d: usize) -> Value {
        self.lift_base(d, &RatFunc::one())
    }

    pub fn lift_base(&self, d: usize, r: &RatFunc) -> Value {
        self.lift(Value::Base(r.clone()), 0, d)
    }

    /// Embed a value of depth `from` into depth `to >= from`.
    pub fn lift(&self, v: Value, from: usize, to: usize) -> Value {
        let mut v = v;
        for d in from + 1..=to {
            v = match &self.rules[d - 1] {
                Rule::Algebraic { n, .. } => {
                    if self.is_zero(d - 1, &v) {
                        self.zero(d)
                    } else {
                        let mut c = vec![self.zero(d - 1); *n];
                        c[0] = v;
                        Value::Alg(c)
                    }
                }
                Rule::Transcendental { .. } => {
                    if self.is_zero(d - 1, &v) {
                        self.zero(d)
                    } else {
                        Value::Frac(vec![v], vec![self.one(d - 1)])
                    }
                }
            };
        }
        v
    }

    /// Project to depth `to <= d` when the value lies in that subfield.
    pub fn project(&self, d: usize, v: &Value, to: usize) -> Option<Value> {
        if d == to {
            return Some(v.clone());
        }
        let down = match v {
            Value::Base(_) => return None,
            Value::Alg(c) => {
                if c[1..].iter().all(|x| self.is_zero(d - 1, x)) {
                    c[0].clone()
                } else {
                    return None;
                }
            }
            Value::Frac(num, den) => {
                if den.len() == 1 && num.len() <= 1 {
                    num.first().cloned().unwrap_or_else(|| self.zero(d - 1))
                } else {
                    return None;
                }
            }
        };
        self.project(d - 1, &down, to)
    }

    pub fn is_zero(&self, _d: usize, v: &Value) -> bool {
        match v {
            Value::Base(r) => r.is_zero(),
            Value::Alg(c) => c.iter().all(|x| self.is_zero(0, x)),
            Value::Frac(num, _) => num.is_empty(),
        }
    }

    pub fn is_one(&self, d: usize, v: &Value) -> bool {
        *v == self.one(d)
    }

    pub fn add(&self, d: usize, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Base(x), Value::Base(y)) => Value::Base(x + y),
            (Value::Alg(x), Value::Alg(y)) => {
                Value::Alg(x.iter().zip(y).map(|(p, q)| self.add(d - 1, p, q)).collect())
            }
            (Value::Frac(n1, d1), Value::Frac(n2, d2)) => {
                let c = d - 1;
                if n1.is_empty() {
                    return b.clone();
                }
                if n2.is_empty() {
                    return a.clone();
                }
                if d1 == d2 {
                    return self.frac(c, self.padd(c, n1, n2), d1.clone());
                }
                let g = self.pgcd(c, d1, d2);
                if g.len() == 1 {
                    let num = self.padd(c, &self.pmul(c, n1, d2), &self.pmul(c, n2, d1));
                    return self.frac_reduced(c, num, self.pmul(c, d1, d2));
                }
                // Only factors of g can cancel.
                let e1 = self.pdiv_exact(c, d1, &g);
                let e2 = self.pdiv_exact(c, d2, &g);
                let num = self.padd(c, &self.pmul(c, n1, &e2), &self.pmul(c, n2, &e1));
                if num.is_empty() {
                    return self.zero(d);
                }
                let h = self.pgcd(c, &num, &g);
                let num = self.pdiv_exact(c, &num, &h);
                let den = self.pmul(c, &self.pmul(c, &e1, &e2), &self.pdiv_exact(c, &g, &h));
                self.frac_reduced(c, num, den)
            }
            _ => panic!("depth mismatch in tower arithmetic"),
        }
    }

    pub fn neg(&self, d: usize, a: &Value) -> Value {
        match a {
            Value::Base(x) => Value::Base(-x),
            Value::Alg(x) => Value::Alg(x.iter().map(|p| self.neg(d - 1, p)).collect()),
            Value::Frac(n, den) => Value::Frac(self.pneg(d - 1, n), den.clone()),
        }
    }

    pub fn sub(&self, d: usize, a: &Value, b: &Value) -> Value {
        self.add(d, a, &self.neg(d, b))
    }

    pub fn mul(&self, d: usize, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Base(x), Value::Base(y)) => Value::Base(x * y),
            (Value::Alg(x), Value::Alg(y)) => {
                let c = d - 1;
                let prod = self.pmul(c, x, y);
                Value::Alg(self.reduce_radical(d, prod))
            }
            (Value::Frac(n1, d1), Value::Frac(n2, d2)) => {
                let c = d - 1;
                if n1.is_empty() || n2.is_empty() {
                    return self.zero(d);
                }
                // Cross-cancel before multiplying to keep the gcd small.
                let g1 = self.pgcd(c, n1, d2);
                let g2 = self.pgcd(c, n2, d1);
                let (n1, d2) = (self.pdiv_exact(c, n1, &g1), self.pdiv_exact(c, d2, &g1));
                let (n2, d1) = (self.pdiv_exact(c, n2, &g2), self.pdiv_exact(c, d1, &g2));
                let num = self.pmul(c, &n1, &n2);
                let den = self.pmul(c, &d1, &d2);
                self.frac_reduced(c, num, den)
            }
            _ => panic!("depth mismatch in tower arithmetic"),
        }
    }

    pub fn inv(&self, d: usize, a: &Value) -> Result<Value, TowerError> {
        if self.is_zero(d, a) {
            return Err(TowerError::DivisionByZero);
        }
        match a {
            Value::Base(x) => Ok(Value::Base(x.inv().map_err(|_| TowerError::DivisionByZero)?)),
            Value::Alg(x) => {
                let c = d - 1;
                let Rule::Algebraic { n, radicand, .. } = &self.rules[d - 1] else {
                    unreachable!()
                };
                let mut p = x.clone();
                self.ptrim(c, &mut p);
                let mut m = vec![self.zero(c); n + 1];
                m[0] = self.neg(c, radicand);
                m[*n] = self.one(c);
                let (g, s, _) = self.pext(c, &p, &m);
                if g.len() != 1 {
                    return Err(TowerError::NotInvertible);
                }
                let mut s = s;
                s.resize(*n, self.zero(c));
                Ok(Value::Alg(s))
            }
            Value::Frac(num, den) => {
                let c = d - 1;
                let lc_inv = self.inv(c, num.last().unwrap())?;
                Ok(Value::Frac(self.pscale(c, den, &lc_inv), self.pscale(c, num, &lc_inv)))
            }
        }
    }

    pub fn div(&self, d: usize, a: &Value, b: &Value) -> Result<Value, TowerError> {
        Ok(self.mul(d, a, &self.inv(d, b)?))
    }

    pub fn derive(&self, d: usize, a: &Value) -> Value {
        match a {
            Value::Base(x) => Value::Base(x.derive(self.t_prime)),
            Value::Alg(x) => {
                let c = d - 1;
                let Rule::Algebraic { rate, .. } = &self.rules[d - 1] else { unreachable!() };
                Value::Alg(
                    x.iter()
                        .enumerate()
                        .map(|(i, ci)| {
                            let di = self.derive(c, ci);
                            if i == 0 || self.is_zero(c, ci) {
                                di
                            } else {
                                let k = self.lift_base(c, &RatFunc::from_int(i as i64));
                                let extra = self.mul(c, &self.mul(c, &k, rate), ci);
                                self.add(c, &di, &extra)
                            }
                        })
                        .collect(),
                )
            }
            Value::Frac(num, den) => {
                let c = d - 1;
                let dn = self.pderive(d, num);
                if den.len() == 1 {
                    return self.frac_reduced(c, dn, den.clone());
                }
                let dd = self.pderive(d, den);
                let top = self.psub(c, &self.pmul(c, &dn, den), &self.pmul(c, num, &dd));
                // Any cancellation divides gcd(den, den').
                if self.pgcd(c, den, &dd).len() == 1 {
                    self.frac_reduced(c, top, self.pmul(c, den, den))
                } else {
                    self.frac(c, top, self.pmul(c, den, den))
                }
            }
        }
    }

    // --- radical levels ---

    fn reduce_radical(&self, d: usize, mut p: UPoly) -> UPoly {
        let c = d - 1;
        let Rule::Algebraic { n, radicand, .. } = &self.rules[d - 1] else { unreachable!() };
        while p.len() > *n {
            let top = p.pop().unwrap();
            let k = p.len() - n;
            if !self.is_zero(c, &top) {
                p[k] = self.add(c, &p[k], &self.mul(c, &top, radicand));
            }
        }
        p.resize(*n, self.zero(c));
        p
    }

    // --- transcendental levels ---

    /// Derivative of a polynomial in the generator of level `d`.
    fn pderive(&self, d: usize, p: &UPoly) -> UPoly {
        let c = d - 1;
        let Rule::Transcendental { image } = &self.rules[d - 1] else { unreachable!() };
        let coeff_part: UPoly = p.iter().map(|x| self.derive(c, x)).collect();
        let mut coeff_part = coeff_part;
        self.ptrim(c, &mut coeff_part);
        let chain = self.pmul(c, &self.pformal(c, p), image);
        self.padd(c, &coeff_part, &chain)
    }

    /// Reduce `num/den` to lowest terms with monic denominator.
    fn frac(&self, c: usize, num: UPoly, den: UPoly) -> Value {
        if num.is_empty() {
            return Value::Frac(Vec::new(), vec![self.one(c)]);
        }
        let g = self.pgcd(c, &num, &den);
        if g.len() > 1 {
            let num = self.pdiv_exact(c, &num, &g);
            let den = self.pdiv_exact(c, &den, &g);
            return self.frac_reduced(c, num, den);
        }
        self.frac_reduced(c, num, den)
    }

    /// Make the denominator monic; `num` and `den` must already be coprime.
    fn frac_reduced(&self, c: usize, num: UPoly, den: UPoly) -> Value {
        if num.is_empty() {
            return Value::Frac(Vec::new(), vec![self.one(c)]);
        }
        let lc = den.last().unwrap();
        if self.is_one(c, lc) {
            return Value::Frac(num, den);
        }
        let inv = self.inv(c, lc).expect("nonzero leading coefficient");
        Value::Frac(self.pscale(c, &num, &inv), self.pscale(c, &den, &inv))
    }

    // --- univariate polynomials with coefficients at depth c ---

    fn ptrim(&self, c: usize, p: &mut UPoly) {
        while p.last().is_some_and(|x| self.is_zero(c, x)) {
            p.pop();
        }
    }

    fn padd(&self, c: usize, a: &UPoly, b: &UPoly) -> UPoly {
        let n = a.len().max(b.len());
        let mut out: UPoly = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => self.add(c, x, y),
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.ptrim(c, &mut out);
        out
    }

    fn pneg(&self, c: usize, a: &UPoly) -> UPoly {
        a.iter().map(|x| self.neg(c, x)).collect()
    }

    fn psub(&self, c: usize, a: &UPoly, b: &UPoly) -> UPoly {
        self.padd(c, a, &self.pneg(c, b))
    }

    fn pmul(&self, c: usize, a: &UPoly, b: &UPoly) -> UPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(c); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero(c, x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if self.is_zero(c, y) {
                    continue;
                }
                out[i + j] = self.add(c, &out[i + j], &self.mul(c, x, y));
            }
        }
        self.ptrim(c, &mut out);
        out
    }

    fn pscale(&self, c: usize, a: &UPoly, k: &Value) -> UPoly {
        let mut out: UPoly = a.iter().map(|x| self.mul(c, x, k)).collect();
        self.ptrim(c, &mut out);
        out
    }

    fn pformal(&self, c: usize, a: &UPoly) -> UPoly {
        let mut out: UPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| self.mul(c, &self.lift_base(c, &RatFunc::from_int(i as i64)), x))
            .collect();
        self.ptrim(c, &mut out);
        out
    }

    fn pdivrem(&self, c: usize, a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let lc_inv = self.inv(c, &b[db]).expect("nonzero leading coefficient");
        let mut q = vec![self.zero(c); r.len() - db];
        for k in (0..q.len()).rev() {
            let coef = self.mul(c, &r[k + db], &lc_inv);
            if !self.is_zero(c, &coef) {
                for (j, bj) in b.iter().enumerate() {
                    r[k + j] = self.sub(c, &r[k + j], &self.mul(c, &coef, bj));
                }
            }
            q[k] = coef;
        }
        r.truncate(db);
        self.ptrim(c, &mut r);
        self.ptrim(c, &mut q);
        (q, r)
    }

    fn pdiv_exact(&self, c: usize, a: &UPoly, b: &UPoly) -> UPoly {
        if b.len() == 1 && self.is_one(c, &b[0]) {
            return a.clone();
        }
        let (q, r) = self.pdivrem(c, a, b);
        debug_assert!(r.is_empty());
        q
    }

    fn pmonic(&self, c: usize, a: &UPoly) -> UPoly {
        match a.last() {
            None => Vec::new(),
            Some(lc) if self.is_one(c, lc) => a.clone(),
            Some(lc) => self.pscale(c, a, &self.inv(c, lc).expect("nonzero")),
        }
    }

    fn pgcd(&self, c: usize, a: &UPoly, b: &UPoly) -> UPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        if x.len() == 1 || y.len() == 1 {
            if x.is_empty() || y.is_empty() {
                return self.pmonic(c, if x.is_empty() { &y } else { &x });
            }
            return vec![self.one(c)];
        }
        y = self.pmonic(c, &y);
        while !y.is_empty() {
            let (_, r) = self.pdivrem(c, &x, &y);
            if r.len() == 1 {
                return vec![self.one(c)];
            }
            x = std::mem::replace(&mut y, self.pmonic(c, &r));
        }
        x
    }

    /// `(g, s, u)` with `s·a + u·b = g`, `g` monic.
    fn pext(&self, c: usize, a: &UPoly, b: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![self.one(c)], Vec::new());
        let (mut u0, mut u1) = (Vec::new(), vec![self.one(c)]);
        while !r1.is_empty() {
            let (q, r) = self.pdivrem(c, &r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.psub(c, &s0, &self.pmul(c, &q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let u = self.psub(c, &u0, &self.pmul(c, &q, &u1));
            u0 = std::mem::replace(&mut u1, u);
        }
        if r0.is_empty() {
            return (r0, s0, u0);
        }
        let inv = self.inv(c, r0.last().unwrap()).expect("nonzero");
        (self.pscale(c, &r0, &inv), self.pscale(c, &s0, &inv), self.pscale(c, &u0, &inv))
    }
}
