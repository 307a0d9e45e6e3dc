//! The equivalences between forms over (M_n(D), ∗), (M_n(D), −ᵗ) and (D, −).
//!
//! Three arrows, each explicit and exact:
//!
//! * scaling — h ↦ S⁻¹h turns a form over (M_n(D), ad_S) into one over
//!   (M_n(D), −ᵗ), multiplying the hermitian sign by ε₀;
//! * reduction — [`extract_gram`] recovers the k×k Gram matrix over D of a
//!   form over (M_n(D), −ᵗ) from black-box evaluations, giving a form over
//!   (D, −) with the same sign;
//! * lift — the inverse of both, with the same Gram matrix.
//!
//! The composites [`morita_reduce`] and [`morita_lift`] are mutually inverse
//! on the nose. Both directions respect isometries, orthogonal sums and
//! hyperbolic forms; [`transport_hyperbolic`] exhibits the hyperbolic case
//! with an explicit congruence witness.
//!
//! Since λS defines the same involution as S for every nonzero rational λ,
//! the scaling arrow is not canonical: reducing against λS multiplies the
//! reduced Gram matrix by λ⁻¹. Reports record the sides and signs; callers
//! comparing reductions must compare them against the same S.

use crate::error::{Error, Result};
use crate::form::{Form, FormEvaluator, GramEvaluator, Side};
use crate::involution::Involution;
use crate::matrix::Matrix;
use crate::sign::Sign;

/// Outcome bookkeeping for a reduction, lift or transport.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub input_side: Side,
    pub output_side: Side,
    pub input_epsilon: Option<Sign>,
    pub output_epsilon: Option<Sign>,
    /// Congruence witness, when the operation produces one.
    pub witness: Option<Matrix>,
    pub exact_roundtrip: bool,
}

/// h ↦ S⁻¹h: relabels a form over (M_n(D), ad_S) as a form over
/// (M_n(D), −ᵗ). In the S·x̄ᵗ·B·y parameterization the Gram matrix is
/// unchanged; an ε-hermitian input comes out ε₀ε-hermitian (checked on the
/// result), a plain sesquilinear input stays plain sesquilinear.
pub fn scale_form(form: &Form) -> Result<Form> {
    let spec = form.involution().ok_or(Error::SideMismatch)?;
    Form::over_mnd_bar_t(
        form.gram().clone(),
        form.epsilon().map(|e| e * spec.epsilon0()),
        spec.n(),
    )
}

/// The inverse of [`scale_form`]: h ↦ Sh against the given involution.
/// Exact round trip: `unscale_form(&scale_form(f)?, f.involution())` has
/// the same Gram matrix, ε and side as `f`.
pub fn unscale_form(form: &Form, spec: &Involution) -> Result<Form> {
    if form.side() != Side::OverMnDBarT {
        return Err(Error::SideMismatch);
    }
    if form.n() != spec.n() {
        return Err(Error::ShapeMismatch);
    }
    if form.descriptor() != spec.descriptor() {
        return Err(Error::DescriptorMismatch);
    }
    // the ε-condition transfers exactly: B̄ᵗ = ε₀(ε₀ε)·B held on the −ᵗ side
    Ok(Form::trusted_star(
        form.gram().clone(),
        form.epsilon().map(|e| e * spec.epsilon0()),
        spec.clone(),
    ))
}

/// Recovers the Gram matrix B of a sesquilinear form over (M_n(D), −ᵗ) on
/// D^{k×n} from evaluations alone: B[i, j] is read off the probe
/// h(e_{i,min(i,n)}, e_{j,min(j,n)}) at position (min(i,n), min(j,n)) — the
/// probe h(e_ii, e_jj) with its single nonzero entry at (i, j) whenever
/// i, j ≤ n. Every probe is checked to have that shape. Verification probes
/// h(e_if, e_jg) = B[i,j]·E_fg run for f, g ≤ min(n, 2) by default and over
/// the full range under `strict`; a genuinely sesquilinear evaluator always
/// passes, so a failure reports [`Error::InconsistentEvaluator`].
pub fn extract_gram<E: FormEvaluator + ?Sized>(h: &E, strict: bool) -> Result<Matrix> {
    let (k, n) = (h.k(), h.n());
    if k == 0 || n == 0 {
        return Err(Error::ShapeMismatch);
    }
    let desc = h.descriptor().clone();
    let mut gram = Matrix::zeros(&desc, k, k);
    for i in 1..=k {
        for j in 1..=k {
            let fi = i.min(n);
            let fj = j.min(n);
            let x = Matrix::unit(&desc, k, n, i, fi)?;
            let y = Matrix::unit(&desc, k, n, j, fj)?;
            let probe = h.evaluate(&x, &y)?;
            if probe.shape() != (n, n) || probe.descriptor() != &desc {
                return Err(Error::InconsistentEvaluator);
            }
            for r in 1..=n {
                for c in 1..=n {
                    if (r, c) != (fi, fj) && !probe.entry(r, c).is_zero() {
                        return Err(Error::InconsistentEvaluator);
                    }
                }
            }
            gram.set_entry(i, j, probe.entry(fi, fj).clone());
        }
    }

    let range = if strict { n } else { n.min(2) };
    for i in 1..=k {
        for j in 1..=k {
            for f in 1..=range {
                for g in 1..=range {
                    let x = Matrix::unit(&desc, k, n, i, f)?;
                    let y = Matrix::unit(&desc, k, n, j, g)?;
                    let probe = h.evaluate(&x, &y)?;
                    let expected = Matrix::unit(&desc, n, n, f, g)?
                        .scale_left(gram.entry(i, j))?;
                    if probe != expected {
                        return Err(Error::InconsistentEvaluator);
                    }
                }
            }
        }
    }
    Ok(gram)
}

/// Lifts a form φ on Dᵏ to the form h(x, y) = x̄ᵗ·B·y on D^{k×n} with the
/// same Gram matrix B and the same ε.
pub fn lift_form(phi: &Form, n: usize) -> Result<Form> {
    if phi.side() != Side::OverD {
        return Err(Error::SideMismatch);
    }
    Form::over_mnd_bar_t(phi.gram().clone(), phi.epsilon(), n)
}

/// Reduction from (M_n(D), ad_S) all the way down to (D, −): scaling
/// followed by Gram extraction against a Gram-backed evaluator of the
/// scaled form. The output sign is ε₀·ε. The report records the signs and
/// whether lifting back reproduced the input exactly.
pub fn morita_reduce(form: &Form, strict: bool) -> Result<(Form, EquivalenceReport)> {
    let spec = form.involution().ok_or(Error::SideMismatch)?.clone();
    let scaled = scale_form(form)?;
    let gram = extract_gram(&GramEvaluator::new(&scaled), strict)?;
    let reduced = Form::over_d(gram, scaled.epsilon())?;
    let lifted = morita_lift(&reduced, &spec)?;
    let report = EquivalenceReport {
        input_side: Side::OverMnDStar,
        output_side: Side::OverD,
        input_epsilon: form.epsilon(),
        output_epsilon: reduced.epsilon(),
        witness: None,
        exact_roundtrip: lifted == *form,
    };
    Ok((reduced, report))
}

/// The inverse of [`morita_reduce`]: lift to D^{k×n} and unscale against the
/// given involution. The output sign is again ε₀·ε.
pub fn morita_lift(phi: &Form, spec: &Involution) -> Result<Form> {
    unscale_form(&lift_form(phi, spec.n())?, spec)
}

/// The congruence witness diag(1, S) per hyperbolic block, as a
/// 2n·rank square matrix: it carries the scaled hyperbolic Gram blocks
/// [[0, S⁻¹], [εS⁻¹, 0]] exactly onto the standard blocks [[0, 1], [ε₀ε, 0]],
/// because Q̄ᵗ·[[0, S⁻¹], [εS⁻¹, 0]]·Q = [[0, 1], [ε₀ε, 0]] when S̄ᵗ = ε₀S.
pub fn hyperbolic_scaling_witness(spec: &Involution, rank: usize) -> Matrix {
    let n = spec.n();
    let block = Matrix::identity(spec.descriptor(), n)
        .block_diag(spec.s())
        .expect("matching descriptors by construction");
    let mut out = block.clone();
    for _ in 1..rank {
        out = out
            .block_diag(&block)
            .expect("matching descriptors by construction");
    }
    out
}

/// Transports the rank-`rank` ε-hermitian hyperbolic form over
/// (M_n(D), ad_S) through scaling and the witness congruence onto the
/// standard ε₀ε-hermitian hyperbolic form over (M_n(D), −ᵗ). The report
/// carries the witness; `exact_roundtrip` records that the transported form
/// landed exactly on the standard hyperbolic form.
pub fn transport_hyperbolic(
    spec: &Involution,
    rank: usize,
    epsilon: Sign,
) -> Result<(Form, EquivalenceReport)> {
    let source = Form::hyperbolic_star(spec, rank, epsilon)?;
    let scaled = scale_form(&source)?;
    let witness = hyperbolic_scaling_witness(spec, rank);
    let carried = scaled.congruence(&witness)?;
    let target = Form::hyperbolic_bar_t(
        spec.descriptor(),
        spec.n(),
        rank,
        epsilon * spec.epsilon0(),
    )?;
    let report = EquivalenceReport {
        input_side: Side::OverMnDStar,
        output_side: Side::OverMnDBarT,
        input_epsilon: Some(epsilon),
        output_epsilon: carried.epsilon(),
        witness: Some(witness),
        exact_roundtrip: carried == target,
    };
    Ok((carried, report))
}
