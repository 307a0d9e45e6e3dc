//! Command implementations. Pure string-in/string-out so they can be tested
//! without touching the filesystem; `main` does the IO.

use hermita_core::{
    extract_gram, lift_form, morita_lift, morita_reduce, scale_form, sesquilinearity_holds,
    EquivalenceReport, Form, GramEvaluator, Involution, Side,
};

use crate::error::CliError;
use crate::format::{
    form_to_file, form_to_file_with_hints, parse_form, render_form_file, side_name,
};
use crate::fuzz::{run_fuzz, FuzzConfig};
use crate::report::{epsilon_name, render_equivalence_report, symmetry_name};

pub struct CommandOutput {
    /// JSON text of the produced form file, when the command produces one.
    pub form_file: Option<String>,
    /// Key-value report text, when the command produces one.
    pub report: Option<String>,
    /// Set when an invariant the command asserts did not hold; callers
    /// should exit with the invariant-violation status.
    pub violation: Option<String>,
}

impl CommandOutput {
    fn form_only(text: String) -> Self {
        CommandOutput {
            form_file: Some(text),
            report: None,
            violation: None,
        }
    }
}

/// `scale`: (M_n(D), ∗) → (M_n(D), −ᵗ). The output file carries S so that
/// downstream commands can unscale or reduce against the same involution.
pub fn scale(input: &str) -> Result<CommandOutput, CliError> {
    let parsed = parse_form(input)?;
    let spec_s = parsed
        .form
        .involution()
        .map(|spec| spec.s().clone())
        .ok_or(CliError::Math(hermita_core::Error::SideMismatch))?;
    let scaled = scale_form(&parsed.form)?;
    let file = form_to_file_with_hints(&scaled, scaled.n(), Some(&spec_s));
    Ok(CommandOutput::form_only(render_form_file(&file)))
}

/// `reduce`: down to (D, −). Accepts a ∗-side form (scale, then extract) or
/// a −ᵗ-side form (extract only), so `scale | reduce` equals `reduce`.
pub fn reduce(input: &str, strict: bool) -> Result<CommandOutput, CliError> {
    let parsed = parse_form(input)?;
    let (reduced, report, hint_s) = match parsed.form.side() {
        Side::OverMnDStar => {
            let spec_s = parsed.form.involution().expect("star side").s().clone();
            let (reduced, report) = morita_reduce(&parsed.form, strict)?;
            (reduced, report, Some(spec_s))
        }
        Side::OverMnDBarT => {
            let gram = extract_gram(&GramEvaluator::new(&parsed.form), strict)?;
            let reduced = Form::over_d(gram, parsed.form.epsilon())?;
            let lifted = lift_form(&reduced, parsed.form.n())?;
            let report = EquivalenceReport {
                input_side: Side::OverMnDBarT,
                output_side: Side::OverD,
                input_epsilon: parsed.form.epsilon(),
                output_epsilon: reduced.epsilon(),
                witness: None,
                exact_roundtrip: lifted == parsed.form,
            };
            (reduced, report, parsed.hint_s)
        }
        Side::OverD => return Err(CliError::Math(hermita_core::Error::SideMismatch)),
    };
    let file = form_to_file_with_hints(&reduced, parsed.form.n(), hint_s.as_ref());
    Ok(CommandOutput {
        form_file: Some(render_form_file(&file)),
        report: Some(render_equivalence_report(&report)),
        violation: None,
    })
}

/// `lift`: from (D, −) to the ∗ side carried by the file's hints; without
/// an S hint the involution defaults to S = I_n (plain bar-transpose).
pub fn lift(input: &str) -> Result<CommandOutput, CliError> {
    let parsed = parse_form(input)?;
    if parsed.form.side() != Side::OverD {
        return Err(CliError::Math(hermita_core::Error::SideMismatch));
    }
    let spec = match parsed.hint_s {
        Some(s) => Involution::from_matrix(s)?,
        None => Involution::standard(parsed.form.descriptor(), parsed.hint_n),
    };
    let lifted = morita_lift(&parsed.form, &spec)?;
    let file = form_to_file(&lifted);
    Ok(CommandOutput::form_only(render_form_file(&file)))
}

/// `roundtrip`: there and back again, asserting exact equality of Gram
/// matrix, ε and side.
pub fn roundtrip(input: &str, strict: bool) -> Result<CommandOutput, CliError> {
    let parsed = parse_form(input)?;
    let report = match parsed.form.side() {
        Side::OverMnDStar => morita_reduce(&parsed.form, strict)?.1,
        Side::OverD => {
            let spec = match &parsed.hint_s {
                Some(s) => Involution::from_matrix(s.clone())?,
                None => Involution::standard(parsed.form.descriptor(), parsed.hint_n),
            };
            let lifted = morita_lift(&parsed.form, &spec)?;
            let (back, _) = morita_reduce(&lifted, strict)?;
            EquivalenceReport {
                input_side: Side::OverD,
                output_side: Side::OverD,
                input_epsilon: parsed.form.epsilon(),
                output_epsilon: back.epsilon(),
                witness: None,
                exact_roundtrip: back == parsed.form,
            }
        }
        Side::OverMnDBarT => {
            let gram = extract_gram(&GramEvaluator::new(&parsed.form), strict)?;
            let reduced = Form::over_d(gram, parsed.form.epsilon())?;
            let back = lift_form(&reduced, parsed.form.n())?;
            EquivalenceReport {
                input_side: Side::OverMnDBarT,
                output_side: Side::OverMnDBarT,
                input_epsilon: parsed.form.epsilon(),
                output_epsilon: back.epsilon(),
                witness: None,
                exact_roundtrip: back == parsed.form,
            }
        }
    };
    let violation = (!report.exact_roundtrip)
        .then(|| "roundtrip: exact_roundtrip is false".to_string());
    Ok(CommandOutput {
        form_file: None,
        report: Some(render_equivalence_report(&report)),
        violation,
    })
}

const VERIFY_PROBE_SEED: u64 = 0xA11CE;

/// `verify`: symmetry class, sesquilinearity probes and a nonsingularity
/// check for a single form.
pub fn verify(input: &str) -> Result<CommandOutput, CliError> {
    let parsed = parse_form(input)?;
    let form = &parsed.form;
    let symmetry = form.check_symmetry();
    let sesquilinear = sesquilinearity_holds(form, 20, VERIFY_PROBE_SEED)?;
    let nonsingular = form.is_nonsingular()?;
    let report = format!(
        "command: verify\nside: {}\nk: {}\nn: {}\nepsilon: {}\nsymmetry: {}\nsesquilinearity: {}\nnonsingular: {}\n",
        side_name(form.side()),
        form.k(),
        form.n(),
        epsilon_name(form.epsilon()),
        symmetry_name(symmetry),
        if sesquilinear { "pass" } else { "fail" },
        nonsingular,
    );
    let violation =
        (!sesquilinear).then(|| "verify: sesquilinearity probes failed".to_string());
    Ok(CommandOutput {
        form_file: None,
        report: Some(report),
        violation,
    })
}

/// `fuzz`: the randomized invariant suite.
pub fn fuzz(seed: u64, trials: u32, strict: bool) -> Result<CommandOutput, CliError> {
    let outcome = run_fuzz(&FuzzConfig {
        seed,
        trials,
        strict,
    });
    let violation = (outcome.failures > 0).then(|| {
        format!(
            "fuzz: {} invariant(s) failed with seed {}",
            outcome.failures, seed
        )
    });
    Ok(CommandOutput {
        form_file: None,
        report: Some(outcome.text),
        violation,
    })
}
