//! Splitting certificates, splitting criteria and standard derivations.

mod criteria;

pub use criteria::{
    analyze_criteria, finite_split_search, finite_split_witness_check, nonsplit_algebraic_check,
    norm_constant_check, Condition, CriteriaError, CriteriaMode, CriteriaVerdict, FiniteWitness, SearchOutcome,
    Verdict,
};

mod certificate;

pub use certificate::{
    build_f, construct_certificate, riccati_from_f, trdeg_report, verify_certificate, FSolutions, Hint,
    SplitCertificate, SplitError, SplitOptions, VerifyFailure, VerifyReport,
};

#[cfg(test)]
mod tests;

mod standard;

pub use standard::{render_pure, standard_analyze, standardize_from_split, Pure, StandardPair, StandardReport};
