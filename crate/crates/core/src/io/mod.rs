use serde::Serializer;

use crate::arith::{Poly, Rat};

pub fn ser_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn ser_poly_mults<S: Serializer>(v: &[(Poly, u32)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (p, m) in v {
        seq.serialize_element(&(p.to_string(), m))?;
    }
    seq.end()
}

pub mod parse;

pub use parse::{parse_expr, parse_tower_expr, ParseError};

pub mod problem;

pub use problem::{load_problem, parse_problem, ProblemError, ProblemSpec};

pub mod document;

pub use document::{
    certificate_json, emit_certificate, load_certificate, parse_certificate_json, CertificateDocument, DocumentError,
    SCHEMA_VERSION,
};

pub mod commands;

pub use commands::{run_command, Command, CommandOutput, Flags};
