//! Command dispatch shared by the binary and the tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::ode::{riccati_pattern_solutions, riccati_rational_solutions, SolveStatus};
use crate::quat::{resolve_xi, Mat2};
use crate::split::{
    analyze_criteria, construct_certificate, standard_analyze, verify_certificate, CriteriaMode, SplitCertificate,
    SplitOptions, StandardReport, Verdict,
};

use super::document::{certificate_json, parse_certificate_json};
use super::problem::{load_problem, ProblemSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Split,
    Verify,
    Riccati,
    Standard,
    Criteria,
}

#[derive(Clone, Debug)]
pub struct Flags {
    pub n_max: u32,
    pub degree_bound: usize,
    pub budget: usize,
    pub json: bool,
    pub out: Option<PathBuf>,
    pub conjunction: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { n_max: 16, degree_bound: 4, budget: 10_000, json: false, out: None, conjunction: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(code: i32, stdout: String) -> Self {
        CommandOutput { code, stdout, stderr: String::new() }
    }

    fn err(code: i32, msg: impl std::fmt::Display) -> Self {
        CommandOutput { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Exit codes: 0 success or pass, 1 failure or negative verdict, 2 usage error.
pub fn run_command(cmd: Command, input: &Path, flags: &Flags) -> CommandOutput {
    let out = match cmd {
        Command::Verify => verify(input, flags),
        _ => match load_problem(input) {
            Err(e) => return CommandOutput::err(2, e),
            Ok(p) => match cmd {
                Command::Split => split(&p, flags),
                Command::Riccati => riccati(&p, flags),
                Command::Standard => standard(&p, flags),
                Command::Criteria => criteria(&p, flags),
                Command::Verify => unreachable!(),
            },
        },
    };
    if let (Some(path), 0 | 1) = (&flags.out, out.code) {
        if cmd != Command::Split {
            if let Err(e) = std::fs::write(path, &out.stdout) {
                return CommandOutput::err(2, format!("cannot write {}: {e}", path.display()));
            }
        }
    }
    out
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn mat_text(m: &Mat2) -> String {
    format!("[[{}, {}], [{}, {}]]", m.m[0][0], m.m[0][1], m.m[1][0], m.m[1][1])
}

pub fn certificate_text(c: &SplitCertificate) -> String {
    let mut s = String::new();
    let tw = &c.tower;
    let _ = writeln!(s, "base: Q(t), t' = {}", tw.t_prime());
    if tw.depth() == 0 {
        let _ = writeln!(s, "tower: Q(t)");
    } else {
        let _ = writeln!(s, "tower:");
        for i in 0..tw.depth() {
            let _ = writeln!(s, "  {}", tw.render_step(i));
        }
    }
    let _ = writeln!(s, "xi = {}", c.xi);
    let _ = writeln!(s, "P = {}", mat_text(&c.p));
    let _ = writeln!(s, "lambda1 = {}", c.lambda1);
    let _ = writeln!(s, "lambda2 = {}", c.lambda2);
    let _ = writeln!(s, "mu = {}", c.mu);
    let _ = writeln!(s, "F = {}", mat_text(&c.f));
    let _ = writeln!(s, "det F = {}", c.f.det());
    let _ = writeln!(s, "verified: {}", c.verified);
    let _ = writeln!(s, "trdeg: {}", c.trdeg);
    for n in &c.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn split(p: &ProblemSpec, flags: &Flags) -> CommandOutput {
    let opts = SplitOptions { n_max: flags.n_max, budget: flags.budget, hints: p.hints.clone() };
    let cert = match construct_certificate(&p.algebra(), &p.derivation, &opts) {
        Ok(c) => c,
        Err(e) => return CommandOutput::err(1, e),
    };
    let json = certificate_json(&cert);
    if let Some(path) = &flags.out {
        if let Err(e) = std::fs::write(path, &json) {
            return CommandOutput::err(2, format!("cannot write {}: {e}", path.display()));
        }
    }
    let code = if cert.verified { 0 } else { 1 };
    CommandOutput::ok(code, if flags.json { json } else { certificate_text(&cert) })
}

fn verify(path: &Path, flags: &Flags) -> CommandOutput {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return CommandOutput::err(2, format!("cannot read {}: {e}", path.display())),
    };
    let cert = match parse_certificate_json(&text) {
        Ok(c) => c,
        Err(e) => return CommandOutput::err(2, e),
    };
    let report = verify_certificate(&cert);
    let code = if report.passed() { 0 } else { 1 };
    let stdout = if flags.json {
        to_json(&json!({
            "passed": report.passed(),
            "failure": report.failure.as_ref().map(|f| f.to_string()),
            "det": report.det.render(),
        }))
    } else {
        match &report.failure {
            None => format!("pass\ndet F = {}\n", report.det),
            Some(f) => format!("fail: {f}\n"),
        }
    };
    CommandOutput::ok(code, stdout)
}

fn status_str(s: SolveStatus) -> &'static str {
    match s {
        SolveStatus::Complete => "complete",
        SolveStatus::BestEffort => "best_effort",
        SolveStatus::BudgetExceeded => "inconclusive",
    }
}

fn riccati(p: &ProblemSpec, flags: &Flags) -> CommandOutput {
    let alg = p.algebra();
    let xi = match resolve_xi(&alg, &alg.base_tower()) {
        Ok(e) => e.generator,
        Err(e) => return CommandOutput::err(1, e),
    };
    let eq = alg.build_riccati(&p.derivation, &xi).expect("xi resolved");
    let mut solutions = Vec::new();
    let mut family = None;
    let mut radical = None;
    let status = if alg.t_prime().is_one() && eq.base_coeffs().is_some() {
        let set = riccati_rational_solutions(&eq, flags.n_max, flags.budget).expect("base coefficients");
        solutions = set.isolated.iter().map(|x| x.render()).collect();
        family = set.family.map(|f| [f[0].render(), f[1].render()]);
        radical = set.radical.map(|r| json!({ "n": r.n, "f": r.f.render() }));
        status_str(set.status)
    } else {
        "unsupported"
    };
    let algebraic: Vec<String> = riccati_pattern_solutions(&eq, &alg, &p.derivation)
        .filter(|pat| pat.ext.tower.depth() > eq.tower().depth() || solutions.is_empty())
        .map(|pat| {
            let tw = &pat.ext.tower;
            let steps: Vec<String> = (eq.tower().depth()..tw.depth()).map(|i| tw.render_step(i)).collect();
            let mut out: Vec<String> = pat.solutions.iter().map(|x| x.render()).collect();
            if !steps.is_empty() {
                out.iter_mut().for_each(|s| *s = format!("{s} ({})", steps.join("; ")));
            }
            out
        })
        .unwrap_or_default();
    let stdout = if flags.json {
        to_json(&json!({
            "equation": eq.render(),
            "status": status,
            "solutions": solutions,
            "family": family,
            "radical": radical,
            "algebraic": algebraic,
        }))
    } else {
        let mut s = format!("{}\nstatus: {status}\nsolutions: [{}]\n", eq.render(), solutions.join(", "));
        if let Some([a, b]) = &family {
            let _ = writeln!(s, "family: [{a}, {b}]");
        }
        if !algebraic.is_empty() {
            let _ = writeln!(s, "algebraic: [{}]", algebraic.join(", "));
        }
        if let Some(r) = &radical {
            let _ = writeln!(s, "radical: Y^{} = {}", r["n"], r["f"].as_str().unwrap_or_default());
        }
        s
    };
    CommandOutput::ok(0, stdout)
}

fn standard(p: &ProblemSpec, flags: &Flags) -> CommandOutput {
    let report = standard_analyze(&p.algebra(), &p.derivation, flags.budget);
    let code = if matches!(report, StandardReport::NotStandard { .. }) { 1 } else { 0 };
    let stdout = if flags.json {
        to_json(&report)
    } else {
        match &report {
            StandardReport::Standard { u, v } => format!("standard: u~ = {u}, v~ = {v}\n"),
            StandardReport::NotStandard { evidence } => format!("not standard: {evidence}\n"),
            StandardReport::Inconclusive { reason } => format!("inconclusive: {reason}\n"),
        }
    };
    CommandOutput::ok(code, stdout)
}

fn criteria(p: &ProblemSpec, flags: &Flags) -> CommandOutput {
    let mode = if flags.conjunction { CriteriaMode::Conjunction } else { CriteriaMode::Disjunction };
    let verdicts =
        analyze_criteria(&p.algebra(), &p.derivation, mode, flags.degree_bound, flags.n_max, flags.budget);
    let code = if verdicts.iter().any(|v| v.is_negative()) { 1 } else { 0 };
    let stdout = if flags.json {
        to_json(&verdicts)
    } else {
        let mut s = String::new();
        for v in &verdicts {
            let head = match &v.verdict {
                Verdict::FinitelySplit { witness } => {
                    format!("finitely split: gamma0 = {}, gamma1 = {}, n = {}", witness.gamma0, witness.gamma1, witness.n)
                }
                Verdict::NotSplitByAlgebraic { conditions } => {
                    let c: Vec<String> = conditions.iter().map(|c| format!("{c:?}").to_lowercase()).collect();
                    format!("not split by any algebraic extension: condition {}", c.join(", "))
                }
                Verdict::NoVerdict => "no verdict".into(),
                Verdict::Note { message } => format!("note: {message}"),
            };
            let _ = writeln!(s, "{head}");
            for e in &v.evidence {
                let _ = writeln!(s, "  {e}");
            }
        }
        s
    };
    CommandOutput::ok(code, stdout)
}
