//! The JSON form-file format.
//!
//! One document per file:
//!
//! ```json
//! {
//!   "algebra": {"kind": "quaternion", "a": "-1", "b": "-1"},
//!   "side": "MnD_star",
//!   "n": 2,
//!   "k": 2,
//!   "epsilon": 1,
//!   "S": [[["1","0","0","0"], ...], ...],
//!   "gram": [[["1","0","0","0"], ...], ...]
//! }
//! ```
//!
//! Matrices are arrays of rows; each entry is an array of rational strings
//! of the kind-appropriate length (1, 2 or 4). `S` is required for side
//! `MnD_star`. On side `D` (and on `MnD_bar_t`, where the form itself does
//! not depend on S) an `n` > 1 and an `S` act as lift hints: `reduce` writes
//! them so that `lift` can rebuild the matrix-algebra side they came from.

use serde::{Deserialize, Serialize};

use hermita_core::{AlgebraDescriptor, Form, Involution, Matrix, Rational, Side, Sign};

use crate::error::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgebraDto {
    Rational,
    Quadratic { d: i64 },
    Quaternion { a: String, b: String },
}

pub type MatrixDto = Vec<Vec<Vec<String>>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormFile {
    pub algebra: AlgebraDto,
    pub side: String,
    pub n: usize,
    pub k: usize,
    pub epsilon: Option<i8>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<MatrixDto>,
    pub gram: MatrixDto,
}

/// A parsed form plus the lift hints the file carried.
#[derive(Debug)]
pub struct ParsedForm {
    pub form: Form,
    pub hint_n: usize,
    pub hint_s: Option<Matrix>,
}

pub fn side_name(side: Side) -> &'static str {
    match side {
        Side::OverD => "D",
        Side::OverMnDBarT => "MnD_bar_t",
        Side::OverMnDStar => "MnD_star",
    }
}

fn parse_rational(text: &str) -> Result<Rational, CliError> {
    text.parse::<Rational>().map_err(CliError::from)
}

pub fn descriptor_to_dto(descriptor: &AlgebraDescriptor) -> AlgebraDto {
    match descriptor {
        AlgebraDescriptor::Rational => AlgebraDto::Rational,
        AlgebraDescriptor::Quadratic { d } => AlgebraDto::Quadratic { d: *d },
        AlgebraDescriptor::Quaternion { a, b } => AlgebraDto::Quaternion {
            a: a.to_string(),
            b: b.to_string(),
        },
    }
}

pub fn descriptor_from_dto(dto: &AlgebraDto) -> Result<AlgebraDescriptor, CliError> {
    match dto {
        AlgebraDto::Rational => Ok(AlgebraDescriptor::rational()),
        AlgebraDto::Quadratic { d } => Ok(AlgebraDescriptor::quadratic(*d)?),
        AlgebraDto::Quaternion { a, b } => Ok(AlgebraDescriptor::quaternion(
            parse_rational(a)?,
            parse_rational(b)?,
        )?),
    }
}

pub fn matrix_to_dto(matrix: &Matrix) -> MatrixDto {
    (1..=matrix.rows())
        .map(|i| {
            (1..=matrix.cols())
                .map(|j| {
                    matrix
                        .entry(i, j)
                        .coords()
                        .iter()
                        .map(ToString::to_string)
                        .collect()
                })
                .collect()
        })
        .collect()
}

pub fn matrix_from_dto(
    descriptor: &AlgebraDescriptor,
    dto: &MatrixDto,
) -> Result<Matrix, CliError> {
    if dto.is_empty() || dto.iter().any(|row| row.len() != dto[0].len()) || dto[0].is_empty() {
        return Err(CliError::Parse("matrix must be a nonempty rectangle".into()));
    }
    let mut rows = Vec::with_capacity(dto.len());
    for row in dto {
        let mut out_row = Vec::with_capacity(row.len());
        for entry in row {
            if entry.len() != descriptor.dim() {
                return Err(CliError::Parse(format!(
                    "element has {} coordinates, expected {}",
                    entry.len(),
                    descriptor.dim()
                )));
            }
            let coords = entry
                .iter()
                .map(|c| parse_rational(c))
                .collect::<Result<Vec<_>, _>>()?;
            out_row.push(descriptor.element(coords)?);
        }
        rows.push(out_row);
    }
    Ok(Matrix::from_rows(descriptor.clone(), rows)?)
}

fn epsilon_from_dto(value: Option<i8>) -> Result<Option<Sign>, CliError> {
    match value {
        None => Ok(None),
        Some(v) => Sign::from_value(v as i64)
            .map(Some)
            .ok_or_else(|| CliError::Parse("epsilon must be 1, -1 or null".into())),
    }
}

pub fn parse_form(text: &str) -> Result<ParsedForm, CliError> {
    let file: FormFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let descriptor = descriptor_from_dto(&file.algebra)?;
    let epsilon = epsilon_from_dto(file.epsilon)?;
    if file.n == 0 {
        return Err(CliError::Parse("n must be at least 1".into()));
    }
    if file.gram.len() != file.k || file.gram.iter().any(|row| row.len() != file.k) {
        return Err(CliError::Parse("gram must be a k x k matrix".into()));
    }
    let gram = matrix_from_dto(&descriptor, &file.gram)?;
    let s = file
        .s
        .as_ref()
        .map(|dto| {
            if dto.len() != file.n || dto.iter().any(|row| row.len() != file.n) {
                return Err(CliError::Parse("S must be an n x n matrix".into()));
            }
            matrix_from_dto(&descriptor, dto)
        })
        .transpose()?;

    match file.side.as_str() {
        "D" => Ok(ParsedForm {
            form: Form::over_d(gram, epsilon)?,
            hint_n: file.n,
            hint_s: s,
        }),
        "MnD_bar_t" => Ok(ParsedForm {
            form: Form::over_mnd_bar_t(gram, epsilon, file.n)?,
            hint_n: file.n,
            hint_s: s,
        }),
        "MnD_star" => {
            let s = s.ok_or_else(|| {
                CliError::Parse("S is required for side MnD_star".into())
            })?;
            let spec = Involution::from_matrix(s)?;
            Ok(ParsedForm {
                hint_n: file.n,
                hint_s: Some(spec.s().clone()),
                form: Form::over_mnd_star(gram, epsilon, spec)?,
            })
        }
        other => Err(CliError::Parse(format!("unknown side {other:?}"))),
    }
}

/// Renders a form, carrying explicit lift hints. `hint_s` is written for
/// sides that do not own an involution so pipelines can round-trip.
pub fn form_to_file_with_hints(form: &Form, hint_n: usize, hint_s: Option<&Matrix>) -> FormFile {
    let s = match form.involution() {
        Some(spec) => Some(matrix_to_dto(spec.s())),
        None => hint_s.map(matrix_to_dto),
    };
    FormFile {
        algebra: descriptor_to_dto(form.descriptor()),
        side: side_name(form.side()).to_string(),
        n: match form.side() {
            Side::OverD => hint_n,
            _ => form.n(),
        },
        k: form.k(),
        epsilon: form.epsilon().map(|e| e.value() as i8),
        s,
        gram: matrix_to_dto(form.gram()),
    }
}

pub fn form_to_file(form: &Form) -> FormFile {
    form_to_file_with_hints(form, form.n(), None)
}

pub fn render_form_file(file: &FormFile) -> String {
    let mut text = serde_json::to_string_pretty(file).expect("form files always serialize");
    text.push('\n');
    text
}
