//! Plain-text reports: one key-value pair per line, no timestamps, so runs
//! with identical configuration are byte-identical and diffable.

use hermita_core::{EquivalenceReport, Sign, Symmetry};

use crate::format::{matrix_to_dto, side_name};

pub fn epsilon_name(epsilon: Option<Sign>) -> String {
    match epsilon {
        Some(e) => e.to_string(),
        None => "none".to_string(),
    }
}

pub fn symmetry_name(symmetry: Symmetry) -> &'static str {
    match symmetry {
        Symmetry::Hermitian => "hermitian",
        Symmetry::SkewHermitian => "skew-hermitian",
        Symmetry::SesquilinearOnly => "sesquilinear-only",
    }
}

pub fn render_equivalence_report(report: &EquivalenceReport) -> String {
    let witness = match &report.witness {
        Some(matrix) => serde_json::to_string(&matrix_to_dto(matrix))
            .expect("matrix encodings always serialize"),
        None => "none".to_string(),
    };
    format!(
        "input_side: {}\noutput_side: {}\ninput_epsilon: {}\noutput_epsilon: {}\nwitness: {}\nexact_roundtrip: {}\n",
        side_name(report.input_side),
        side_name(report.output_side),
        epsilon_name(report.input_epsilon),
        epsilon_name(report.output_epsilon),
        witness,
        report.exact_roundtrip,
    )
}
