//! Partial fractions, Hermite reduction, and logarithmic-derivative residues.

use super::{rational_roots, squarefree_factor, Poly, Rat, RatFunc};

/// `numerators[j-1] / factor^j` summed over `j = 1..=multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalPart {
    pub factor: Poly,
    pub multiplicity: u32,
    pub numerators: Vec<Poly>,
}

impl PrincipalPart {
    pub fn to_ratfunc(&self) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (j, n) in self.numerators.iter().enumerate() {
            let den = self.factor.pow(j as u32 + 1);
            acc = &acc + &RatFunc::new(n.clone(), den).unwrap();
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub polynomial: Poly,
    pub parts: Vec<PrincipalPart>,
}

impl PartialFractions {
    pub fn sum(&self) -> RatFunc {
        self.parts
            .iter()
            .fold(RatFunc::from_poly(self.polynomial.clone()), |acc, p| &acc + &p.to_ratfunc())
    }
}

/// Denominator factors of `den`, squarefree-split and then refined by
/// rational roots: linear factors first, then the rational-root-free rest.
pub fn split_denominator(den: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if den.is_constant() {
        return out;
    }
    let sf = squarefree_factor(den).expect("nonzero denominator");
    for (g, m) in sf.factors {
        let mut rest = g.clone();
        for r in rational_roots(&g).expect("nonzero") {
            let lin = Poly::linear_root(&r);
            rest = rest.div_exact(&lin);
            out.push((lin, m));
        }
        if !rest.is_constant() {
            out.push((rest.monic(), m));
        }
    }
    out
}

/// Partial fraction decomposition keyed by the factors of
/// [`split_denominator`].
pub fn partial_fractions(f: &RatFunc) -> PartialFractions {
    let (poly, rem) = f.num().div_rem(f.den());
    let mut parts = Vec::new();
    if rem.is_zero() {
        return PartialFractions { polynomial: poly, parts };
    }
    let den = f.den();
    for (g, m) in split_denominator(den) {
        let dk = g.pow(m);
        let other = den.div_exact(&dk);
        // rem/den = A/dk + B/other with A = rem * other^{-1} mod dk.
        let (_, s, _) = other.ext_gcd(&dk);
        let a = (&rem * &s).rem(&dk);
        // g-adic expansion: a = Σ c_j g^j
        let mut numerators = vec![Poly::zero(); m as usize];
        let mut cur = a;
        for j in 0..m as usize {
            let (q, r) = cur.div_rem(&g);
            numerators[m as usize - 1 - j] = r;
            cur = q;
        }
        parts.push(PrincipalPart { factor: g, multiplicity: m, numerators });
    }
    PartialFractions { polynomial: poly, parts }
}

/// Hermite reduction of a proper fraction `a/d`: returns `(g, h)` with
/// `a/d = g' + h`, where `h` has a squarefree denominator.
pub fn hermite_reduce(a: &Poly, d: &Poly) -> (RatFunc, RatFunc) {
    let sf = squarefree_factor(d).expect("nonzero denominator");
    let mut g = RatFunc::zero();
    let mut a = a.scale(&sf.content.recip());
    let mut dd = d.monic();
    for (v, i) in sf.factors.iter().filter(|(_, i)| *i >= 2) {
        let u = dd.div_exact(&v.pow(*i));
        for j in (1..*i).rev() {
            let jr = Rat::from_integer(j.into());
            let (b, c) = Poly::diophantine(&(&u * &v.derivative()), v, &a.scale(&(-jr.recip())));
            g = &g + &RatFunc::new(b.clone(), v.pow(j)).unwrap();
            a = &(-&c.scale(&jr)) - &(&u * &b.derivative());
        }
        dd = &u * v;
    }
    (g, RatFunc::new(a, dd).unwrap())
}

/// Decomposition `input = polynomial_part + Σ residue·f'/f + reduced_remainder`.
///
/// Terms carry the rational residues of the simple-pole part found by the
/// Rothstein–Trager resultant; double poles and irrational residues stay in
/// the remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDerivParts {
    pub polynomial_part: Poly,
    pub terms: Vec<(Poly, Rat)>,
    pub reduced_remainder: RatFunc,
}

impl LogDerivParts {
    pub fn reconstruct(&self) -> RatFunc {
        let mut acc = RatFunc::from_poly(self.polynomial_part.clone());
        for (f, r) in &self.terms {
            acc = &acc + &RatFunc::new(f.derivative().scale(r), f.clone()).unwrap();
        }
        &acc + &self.reduced_remainder
    }

    /// True when the input is exactly `Σ residue·f'/f`.
    pub fn is_pure_log_derivative(&self) -> bool {
        self.polynomial_part.is_zero() && self.reduced_remainder.is_zero()
    }
}

pub fn logderiv_residues(a: &RatFunc) -> LogDerivParts {
    let (poly, rem) = a.num().div_rem(a.den());
    let mut terms = Vec::new();
    if !rem.is_zero() {
        let (_, h) = hermite_reduce(&rem, a.den());
        if !h.is_zero() {
            let s = h.num().clone();
            let d = h.den().clone();
            let dp = d.derivative();
            let res = rothstein_trager_resultant(&s, &d);
            for r in rational_roots(&res).unwrap_or_default() {
                let g = d.gcd(&(&s - &dp.scale(&r)));
                if !g.is_constant() {
                    terms.push((g, r));
                }
            }
        }
    }
    let mut logs = RatFunc::zero();
    for (f, r) in &terms {
        logs = &logs + &RatFunc::new(f.derivative().scale(r), f.clone()).unwrap();
    }
    let reduced_remainder = &(a - &RatFunc::from_poly(poly.clone())) - &logs;
    LogDerivParts { polynomial_part: poly, terms, reduced_remainder }
}

/// `res_t(d, s - z d')` as a polynomial in `z`, by evaluation at
/// `deg d + 1` points and Newton interpolation.
fn rothstein_trager_resultant(s: &Poly, d: &Poly) -> Poly {
    let n = d.degree().unwrap_or(0);
    let dp = d.derivative();
    let xs: Vec<Rat> = (0..=n as i64).map(|k| Rat::from_integer(k.into())).collect();
    let ys: Vec<Rat> = xs.iter().map(|z| d.resultant(&(s - &dp.scale(z)))).collect();
    interpolate(&xs, &ys)
}

/// Newton interpolation through the points `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Poly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = Poly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &Poly::linear_root(&xs[i])) + &Poly::constant(coef[i].clone());
    }
    p
}

/// `Π f^e` for integer exponents.
pub(crate) fn product_of_powers(terms: &[(Poly, i64)]) -> RatFunc {
    let mut num = Poly::one();
    let mut den = Poly::one();
    for (f, e) in terms {
        if *e >= 0 {
            num = &num * &f.pow(*e as u32);
        } else {
            den = &den * &f.pow((-*e) as u32);
        }
    }
    RatFunc::new(num, den).unwrap()
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

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn partial_fraction_examples() {
        let pf = partial_fractions(&rf(&[1], &[0, -1, 1]));
        assert!(pf.polynomial.is_zero());
        let parts: Vec<RatFunc> = pf.parts.iter().map(|p| p.to_ratfunc()).collect();
        assert!(parts.contains(&rf(&[-1], &[0, 1])));
        assert!(parts.contains(&rf(&[1], &[-1, 1])));

        let pf = partial_fractions(&rf(&[1, 0, 1], &[0, 1]));
        assert_eq!(pf.polynomial, p(&[0, 1]));
        assert_eq!(pf.parts[0].to_ratfunc(), rf(&[1], &[0, 1]));

        let pf = partial_fractions(&rf(&[1], &[0, 0, 1]));
        assert!(pf.polynomial.is_zero());
        assert_eq!(pf.parts.len(), 1);
        assert_eq!(pf.parts[0].multiplicity, 2);
        assert_eq!(pf.parts[0].numerators, vec![Poly::zero(), Poly::one()]);
    }

    #[test]
    fn partial_fractions_resum() {
        let f = rf(&[3, -1, 0, 2, 5, 1], &[0, 0, 2, -3, -1, 0, 1]);
        assert_eq!(partial_fractions(&f).sum(), f);
    }

    #[test]
    fn hermite_identity() {
        let a = p(&[1, 2, 0, 1]);
        let d = &p(&[0, 1]).pow(3) * &p(&[1, 0, 1]).pow(2);
        let (g, h) = hermite_reduce(&a, &d);
        let lhs = RatFunc::new(a, d).unwrap();
        assert_eq!(&g.d_dt() + &h, lhs);
        assert!(h.den().gcd(&h.den().derivative()).is_constant());
    }

    #[test]
    fn logderiv_examples() {
        let parts = logderiv_residues(&rf(&[1], &[0, 4]));
        assert!(parts.polynomial_part.is_zero());
        assert_eq!(parts.terms, vec![(p(&[0, 1]), q(1, 4))]);
        assert!(parts.reduced_remainder.is_zero());

        let parts = logderiv_residues(&rf(&[0, 2], &[1, 0, 1]));
        assert_eq!(parts.terms, vec![(p(&[1, 0, 1]), q(1, 1))]);
        assert!(parts.reduced_remainder.is_zero());

        let parts = logderiv_residues(&rf(&[1], &[0, 0, 1]));
        assert!(parts.terms.is_empty());
        assert_eq!(parts.reduced_remainder, rf(&[1], &[0, 0, 1]));
    }

    #[test]
    fn irrational_residues_stay_in_remainder() {
        // 1/(t^2 - 2) has residues ±1/(2√2)
        let a = rf(&[1], &[-2, 0, 1]);
        let parts = logderiv_residues(&a);
        assert!(parts.terms.is_empty());
        assert_eq!(parts.reconstruct(), a);
    }
}
