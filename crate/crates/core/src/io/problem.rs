//! Problem files:
//!
//! ```toml
//! [field]
//! t_prime = "1"
//!
//! [algebra]
//! alpha = "1"
//! beta = "t"
//!
//! [derivation]
//! a1 = "-1/(8*t)"
//! a2 = "0"
//! a3 = "0"
//!
//! [hints]
//! steps = ["primitive:1/t"]
//! ```

use std::path::Path;

use crate::arith::RatFunc;
use crate::quat::{DerivationSpec, QuatAlgebra};
use crate::split::Hint;
use crate::tower::DiffBase;

use super::parse::{parse_expr, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProblemError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("malformed problem file: {0}")]
    Syntax(String),
    #[error("missing section [{0}]")]
    MissingSection(String),
    #[error("missing key `{key}` in [{section}]")]
    MissingKey { section: String, key: String },
    #[error("`{key}` must be a string")]
    NotAString { key: String },
    #[error("cannot parse `{key}`: {err}")]
    Expr { key: String, err: ParseError },
    #[error("{0} must be nonzero")]
    Zero(&'static str),
    #[error("bad hint: {0}")]
    Hint(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub t_prime: RatFunc,
    pub alpha: RatFunc,
    pub beta: RatFunc,
    pub derivation: DerivationSpec,
    pub hints: Vec<Hint>,
}

impl ProblemSpec {
    pub fn algebra(&self) -> QuatAlgebra {
        QuatAlgebra::new(self.alpha.clone(), self.beta.clone(), DiffBase::new(self.t_prime.clone()))
            .expect("validated on load")
    }
}

pub fn load_problem(path: impl AsRef<Path>) -> Result<ProblemSpec, ProblemError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ProblemError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse_problem(&text)
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec, ProblemError> {
    let doc: toml::Table = text.parse().map_err(|e: toml::de::Error| ProblemError::Syntax(e.message().to_string()))?;
    let section = |name: &str| {
        doc.get(name).and_then(|v| v.as_table()).ok_or_else(|| ProblemError::MissingSection(name.into()))
    };
    let expr = |sec: &str, key: &str| -> Result<RatFunc, ProblemError> {
        let v = section(sec)?
            .get(key)
            .ok_or_else(|| ProblemError::MissingKey { section: sec.into(), key: key.into() })?;
        let s = v.as_str().ok_or_else(|| ProblemError::NotAString { key: key.into() })?;
        parse_expr(s).map_err(|err| ProblemError::Expr { key: key.into(), err })
    };
    let t_prime = expr("field", "t_prime")?;
    let alpha = expr("algebra", "alpha")?;
    let beta = expr("algebra", "beta")?;
    if alpha.is_zero() {
        return Err(ProblemError::Zero("alpha"));
    }
    if beta.is_zero() {
        return Err(ProblemError::Zero("beta"));
    }
    let derivation = DerivationSpec::new(expr("derivation", "a1")?, expr("derivation", "a2")?, expr("derivation", "a3")?);
    let mut hints = Vec::new();
    if let Some(h) = doc.get("hints") {
        let steps = h
            .as_table()
            .and_then(|t| t.get("steps"))
            .and_then(|s| s.as_array())
            .ok_or_else(|| ProblemError::Hint("[hints] needs `steps = [...]`".into()))?;
        for s in steps {
            let s = s.as_str().ok_or_else(|| ProblemError::NotAString { key: "steps".into() })?;
            hints.push(Hint::parse(s).map_err(ProblemError::Hint)?);
        }
    }
    Ok(ProblemSpec { t_prime, alpha, beta, derivation, hints })
}
