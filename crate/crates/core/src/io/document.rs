//! JSON certificate documents.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::quat::{DerivationSpec, Mat2, QuatAlgebra};
use crate::split::SplitCertificate;
use crate::tower::{DiffBase, StepInfo, Tower, TowerElem, TowerStep};

use super::parse::{parse_expr, parse_tower_expr};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unsupported schema_version {0}")]
    Schema(u32),
    #[error("`{field}`: {msg}")]
    Field { field: String, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemDoc {
    pub t_prime: String,
    pub alpha: String,
    pub beta: String,
    pub a1: String,
    pub a2: String,
    pub a3: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepDoc {
    Radical { name: String, n: usize, f: String },
    Primitive { name: String, w: String },
    Hyperexp { name: String, w: String },
    Riccati { name: String, a0: String, a1: String, a2: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: u32,
    pub problem: ProblemDoc,
    pub tower: Vec<StepDoc>,
    pub tower_display: Vec<String>,
    pub xi: String,
    pub p: [[String; 2]; 2],
    pub lambda1: String,
    pub lambda2: String,
    pub mu: String,
    pub f: [[String; 2]; 2],
    pub verified: bool,
    pub trdeg: usize,
    pub notes: Vec<String>,
}

fn mat_doc(m: &Mat2) -> [[String; 2]; 2] {
    [[m.m[0][0].render(), m.m[0][1].render()], [m.m[1][0].render(), m.m[1][1].render()]]
}

pub fn emit_certificate(cert: &SplitCertificate) -> CertificateDocument {
    let a = &cert.algebra;
    let s = &cert.spec;
    let problem = ProblemDoc {
        t_prime: a.t_prime().render(),
        alpha: a.alpha.render(),
        beta: a.beta.render(),
        a1: s.a1.render(),
        a2: s.a2.render(),
        a3: s.a3.render(),
    };
    let tw = &cert.tower;
    let tower = (0..tw.depth())
        .map(|i| {
            let (name, info) = tw.step_info(i);
            match info {
                StepInfo::Radical { n, f } => StepDoc::Radical { name, n, f: f.render() },
                StepInfo::Primitive { w } => StepDoc::Primitive { name, w: w.render() },
                StepInfo::HyperExp { w } => StepDoc::Hyperexp { name, w: w.render() },
                StepInfo::RiccatiGen { a0, a1, a2 } => {
                    StepDoc::Riccati { name, a0: a0.render(), a1: a1.render(), a2: a2.render() }
                }
            }
        })
        .collect();
    CertificateDocument {
        schema_version: SCHEMA_VERSION,
        problem,
        tower,
        tower_display: (0..tw.depth()).map(|i| tw.render_step(i)).collect(),
        xi: cert.xi.render(),
        p: mat_doc(&cert.p),
        lambda1: cert.lambda1.render(),
        lambda2: cert.lambda2.render(),
        mu: cert.mu.render(),
        f: mat_doc(&cert.f),
        verified: cert.verified,
        trdeg: cert.trdeg,
        notes: cert.notes.clone(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn certificate_json(cert: &SplitCertificate) -> String {
    let mut s = serde_json::to_string_pretty(&emit_certificate(cert)).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_certificate_json(text: &str) -> Result<SplitCertificate, DocumentError> {
    let doc: CertificateDocument = serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))?;
    load_certificate(&doc)
}

/// Rebuild a certificate, replaying its tower steps.
pub fn load_certificate(doc: &CertificateDocument) -> Result<SplitCertificate, DocumentError> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(DocumentError::Schema(doc.schema_version));
    }
    let field_err = |field: &str, msg: String| DocumentError::Field { field: field.into(), msg };
    let base = |field: &str, s: &str| parse_expr(s).map_err(|e| field_err(field, e.to_string()));
    let pr = &doc.problem;
    let algebra = QuatAlgebra::new(
        base("problem.alpha", &pr.alpha)?,
        base("problem.beta", &pr.beta)?,
        DiffBase::new(base("problem.t_prime", &pr.t_prime)?),
    )
    .map_err(|e| field_err("problem", e.to_string()))?;
    let spec = DerivationSpec::new(base("problem.a1", &pr.a1)?, base("problem.a2", &pr.a2)?, base("problem.a3", &pr.a3)?);
    let mut tw = algebra.base_tower();
    for (i, step) in doc.tower.iter().enumerate() {
        let field = format!("tower[{i}]");
        let e = |s: &str| parse_tower_expr(&tw, s).map_err(|err| field_err(&field, err.to_string()));
        let st = match step {
            StepDoc::Radical { name, n, f } => TowerStep::Radical { n: *n, f: e(f)?, name: name.clone() },
            StepDoc::Primitive { name, w } => TowerStep::Primitive { w: e(w)?, name: name.clone() },
            StepDoc::Hyperexp { name, w } => TowerStep::HyperExp { w: e(w)?, name: name.clone() },
            StepDoc::Riccati { name, a0, a1, a2 } => {
                TowerStep::RiccatiGen { a0: e(a0)?, a1: e(a1)?, a2: e(a2)?, name: name.clone() }
            }
        };
        let ext = tw.adjoin(st).map_err(|err| field_err(&field, err.to_string()))?;
        if ext.merged() {
            return Err(field_err(&field, "step merges with an earlier radical".into()));
        }
        tw = ext.tower;
    }
    let tw: Arc<Tower> = tw;
    let el = |field: &str, s: &str| -> Result<TowerElem, DocumentError> {
        parse_tower_expr(&tw, s).map_err(|e| field_err(field, e.to_string()))
    };
    let mat = |field: &str, m: &[[String; 2]; 2]| -> Result<Mat2, DocumentError> {
        Ok(Mat2::new(el(field, &m[0][0])?, el(field, &m[0][1])?, el(field, &m[1][0])?, el(field, &m[1][1])?))
    };
    Ok(SplitCertificate {
        algebra,
        spec,
        tower: tw.clone(),
        xi: el("xi", &doc.xi)?,
        p: mat("p", &doc.p)?,
        lambda1: el("lambda1", &doc.lambda1)?,
        lambda2: el("lambda2", &doc.lambda2)?,
        mu: el("mu", &doc.mu)?,
        f: mat("f", &doc.f)?,
        verified: doc.verified,
        trdeg: doc.trdeg,
        notes: doc.notes.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::split::{construct_certificate, Hint, SplitOptions};

    fn cert(alpha: &str, beta: &str, a: [&str; 3], hints: Vec<Hint>) -> SplitCertificate {
        let alg = QuatAlgebra::new(parse_expr(alpha).unwrap(), parse_expr(beta).unwrap(), DiffBase::new(parse_expr("1").unwrap()))
            .unwrap();
        let spec = DerivationSpec::new(parse_expr(a[0]).unwrap(), parse_expr(a[1]).unwrap(), parse_expr(a[2]).unwrap());
        construct_certificate(&alg, &spec, &SplitOptions { hints, ..Default::default() }).unwrap()
    }

    #[test]
    fn round_trips() {
        let cases = [
            cert("1", "t", ["-1/(8*t)", "0", "0"], vec![]),
            cert("1", "t", ["-1/(4*t)", "-1/(2*t)", "1/(2*t)"], vec![Hint::Primitive { expr: "1/t".into() }]),
            cert("t", "t", ["0", "1", "0"], vec![]),
            cert("t", "t^2 + 1", ["1", "t", "0"], vec![Hint::RiccatiAuto]),
        ];
        for c in cases {
            let json = certificate_json(&c);
            let back = parse_certificate_json(&json).unwrap();
            assert_eq!(back, c, "{json}");
            assert_eq!(certificate_json(&back), json);
        }
    }

    #[test]
    fn document_fields() {
        let c = cert("1", "t", ["-1/(8*t)", "0", "0"], vec![]);
        let v: serde_json::Value = serde_json::from_str(&certificate_json(&c)).unwrap();
        assert_eq!(v["trdeg"], 0);
        assert_eq!(v["verified"], true);
        assert_eq!(v["tower_display"][0], "theta: radical n=8 of t");
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert!(certificate_json(&c).starts_with("{\n  \"schema_version\": 1,\n  \"problem\""));

        let bad = certificate_json(&c).replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert_eq!(parse_certificate_json(&bad), Err(DocumentError::Schema(9)));
        assert!(matches!(parse_certificate_json("{"), Err(DocumentError::Json(_))));
    }
}
