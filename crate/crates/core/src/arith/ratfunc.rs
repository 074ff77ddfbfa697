//! Elements of ℚ(t) as reduced fractions with monic denominators.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ArithError, Poly, Rat};

/// A reduced fraction `num/den` of polynomials over ℚ.
///
/// `gcd(num, den) = 1`, `den` is monic, and zero is `0/1`, so structural
/// equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Normalize `num/den`; fails when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let inv = den.lc().recip();
        Ok(RatFunc { num: num.scale(&inv), den: den.scale(&inv) })
    }

    fn from_coprime(num: Poly, den: Poly) -> Self {
        let inv = den.lc().recip();
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_rat(Rat::one())
    }

    pub fn t() -> Self {
        RatFunc::from_poly(Poly::t())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn from_rat(c: Rat) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc::from_rat(Rat::from_integer(c.into()))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn as_rat(&self) -> Option<Rat> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn is_constant(&self) -> bool {
        self.as_rat().is_some()
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i64) -> Result<Self, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// `d/dt`.
    pub fn d_dt(&self) -> Self {
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Derivative under the base derivation `t' = t_prime`.
    pub fn derive(&self, t_prime: &RatFunc) -> Self {
        if t_prime.is_one() {
            self.d_dt()
        } else {
            &self.d_dt() * t_prime
        }
    }

    /// Evaluate at a rational point that is not a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// `deg(num) - deg(den)`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.deg_i() - self.den.deg_i())
    }

    /// Square root inside ℚ(t), when one exists; the returned root has a
    /// positive leading coefficient.
    pub fn sqrt(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return Some(RatFunc::zero());
        }
        let n = super::squarefree_factor(&self.num).ok()?;
        let d = super::squarefree_factor(&self.den).ok()?;
        let c = rat_sqrt(&n.content)?;
        let mut num = Poly::constant(c);
        for (f, m) in &n.factors {
            if m % 2 != 0 {
                return None;
            }
            num = &num * &f.pow(m / 2);
        }
        let mut den = Poly::one();
        for (f, m) in &d.factors {
            if m % 2 != 0 {
                return None;
            }
            den = &den * &f.pow(m / 2);
        }
        RatFunc::new(num, den).ok()
    }

    /// Canonical text form, accepted back by the expression parser.
    pub fn render(&self) -> String {
        self.render_var("t")
    }

    pub fn render_var(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.render_var(var);
        }
        // Scale to integer-coefficient numerator and denominator.
        let (dc, dprim) = self.den.content_primitive();
        let (nc, nprim) = self.num.content_primitive();
        let c = nc / dc;
        let nstr = Poly::from_int_coeffs(&nprim).scale(&Rat::from_integer(c.numer().clone()));
        let dpoly = Poly::from_int_coeffs(&dprim).scale(&Rat::from_integer(c.denom().clone()));
        let ns = nstr.render_var(var);
        let ds = dpoly.render_var(var);
        let ns = if nstr.term_count() > 1 { format!("({ns})") } else { ns };
        let d_single = dpoly.term_count() == 1 && (dpoly.degree() == Some(0) || dpoly.lc().is_one());
        let ds = if d_single { ds } else { format!("({ds})") };
        format!("{ns}/{ds}")
    }

    /// True when the rendered form has no top-level sum, so it can be
    /// followed by `*x` without parentheses.
    pub fn is_atomic(&self) -> bool {
        self.num.term_count() <= 1
    }
}

/// Exact square root of a nonnegative rational, when it is a square.
pub fn rat_sqrt(c: &Rat) -> Option<Rat> {
    if c.is_negative() {
        return None;
    }
    let n = int_sqrt(c.numer())?;
    let d = int_sqrt(c.denom())?;
    Some(Rat::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self.render())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        if self.den.is_constant() || rhs.den.is_constant() {
            let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::new(n, &self.den * &rhs.den).unwrap();
        }
        let g = self.den.gcd(&rhs.den);
        let (d1, d2) = (self.den.div_exact(&g), rhs.den.div_exact(&g));
        let n = &(&self.num * &d2) + &(&rhs.num * &d1);
        if n.is_zero() {
            return RatFunc::zero();
        }
        let h = n.gcd(&g);
        let (n, g) = if h.is_one() { (n, g) } else { (n.div_exact(&h), g.div_exact(&h)) };
        RatFunc::from_coprime(n, &(&d1 * &d2) * &g)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cut = |p: &Poly, g: &Poly| if g.is_one() { p.clone() } else { p.div_exact(g) };
        let n = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let d = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        RatFunc::from_coprime(n, d)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), RatFunc::from_poly(p(&[1, 1])));
        let half_t = RatFunc::from_poly(Poly::t().scale(&Rat::new(1.into(), 2.into())));
        assert_eq!(rf(&[0, 2], &[4]), half_t);
        let z = rf(&[0], &[0, 0, 0, 1]);
        assert!(z.is_zero());
        assert!(z.den().is_one());
        assert!(RatFunc::new(p(&[1]), Poly::zero()).is_err());
    }

    #[test]
    fn arith_examples() {
        let inv_t = rf(&[1], &[0, 1]);
        assert_eq!(&inv_t + &inv_t, rf(&[2], &[0, 1]));
        let x = rf(&[1], &[-1, 1]);
        assert_eq!(&x * &RatFunc::from_poly(p(&[-1, 1])), RatFunc::one());
        assert_eq!(inv_t.checked_div(&RatFunc::zero()), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn render_forms() {
        assert_eq!(rf(&[-1], &[0, 8]).render(), "-1/(8*t)");
        assert_eq!(rf(&[1, 0, 1], &[0, 1]).render(), "(t^2 + 1)/t");
        assert_eq!(rf(&[1], &[0, 1, -1]).render(), "-1/(t^2 - t)");
        assert_eq!(rf(&[3], &[2]).render(), "3/2");
    }

    #[test]
    fn sqrt_in_field() {
        assert_eq!(rf(&[0, 0, 4], &[1]).sqrt(), Some(rf(&[0, 2], &[1])));
        assert_eq!(rf(&[0, 1], &[1]).sqrt(), None);
        assert_eq!(RatFunc::one().sqrt(), Some(RatFunc::one()));
        assert_eq!(rf(&[-1], &[1]).sqrt(), None);
    }
}
