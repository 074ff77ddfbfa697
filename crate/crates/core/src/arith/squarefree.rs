use serde::Serialize;

use super::{ArithError, Poly, Rat};

/// `content * Π factor^multiplicity`, factors monic, squarefree and pairwise coprime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquarefreeFactorization {
    #[serde(serialize_with = "crate::io::ser_rat")]
    pub content: Rat,
    #[serde(serialize_with = "crate::io::ser_poly_mults")]
    pub factors: Vec<(Poly, u32)>,
}

impl SquarefreeFactorization {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.content.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }
}

/// Yun's squarefree decomposition.
pub fn squarefree_factor(p: &Poly) -> Result<SquarefreeFactorization, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let content = p.lc();
    let mut factors = Vec::new();
    if p.is_constant() {
        return Ok(SquarefreeFactorization { content, factors });
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0);
    let c = df.div_exact(&a0);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        b = b.div_exact(&a);
        let c = d.div_exact(&a);
        d = &c - &b.derivative();
        if !a.is_constant() {
            factors.push((a, i));
        }
        i += 1;
    }
    Ok(SquarefreeFactorization { content, factors })
}
