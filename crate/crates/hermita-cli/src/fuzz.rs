//! Randomized invariant suite over all three algebra families.
//!
//! Every invariant the form and equivalence machinery promises is probed on
//! random data: random descriptors from the fixed grid (ℚ; ℚ(√d) for
//! d ∈ {−1, 2, 5}; quaternions (−1, −1), (−1, −3), (2, 5)), module sizes
//! n, k ∈ {1, 2, 3}, both involution signs where the family admits them.
//! Output is deterministic in the seed: per-invariant generators are
//! derived from (seed, invariant index) and trials run in order. Draws that
//! fail to produce an invertible matrix after bounded retries are recorded
//! as skips rather than silently redrawn forever.

use hermita_core::algebra::AlgebraDescriptor;
use hermita_core::involution::{random_involution, Involution};
use hermita_core::matrix::{random_invertible, random_matrix, Matrix};
use hermita_core::morita::{
    extract_gram, morita_lift, morita_reduce, transport_hyperbolic,
};
use hermita_core::{
    epsilon_symmetry_holds, sesquilinearity_holds, Form, GramEvaluator, Rational, Side, Sign,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u32,
    pub strict: bool,
}

pub struct FuzzOutcome {
    pub text: String,
    pub failures: usize,
    pub skips: usize,
}

enum Verdict {
    Pass,
    Skip(&'static str),
    Fail(String),
}

const INVERTIBLE_TRIES: u32 = 32;

fn families() -> Vec<AlgebraDescriptor> {
    vec![
        AlgebraDescriptor::rational(),
        AlgebraDescriptor::quadratic(-1).unwrap(),
        AlgebraDescriptor::quadratic(2).unwrap(),
        AlgebraDescriptor::quadratic(5).unwrap(),
        AlgebraDescriptor::quaternion_i64(-1, -1).unwrap(),
        AlgebraDescriptor::quaternion_i64(-1, -3).unwrap(),
        AlgebraDescriptor::quaternion_i64(2, 5).unwrap(),
    ]
}

struct Draw {
    desc: AlgebraDescriptor,
    n: usize,
    k: usize,
    epsilon: Sign,
}

fn draw(rng: &mut ChaCha8Rng) -> Draw {
    let fams = families();
    let desc = fams[rng.gen_range(0..fams.len())].clone();
    Draw {
        desc,
        n: rng.gen_range(1..=3),
        k: rng.gen_range(1..=3),
        epsilon: if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus },
    }
}

/// A random involution on M_n(D). Over ℚ a skew matrix of odd size is
/// always singular, so the sign is pinned to +1 there.
fn draw_involution(rng: &mut ChaCha8Rng, desc: &AlgebraDescriptor, n: usize) -> Option<Involution> {
    let epsilon0 = if *desc == AlgebraDescriptor::rational() && n % 2 == 1 {
        Sign::Plus
    } else if rng.gen::<bool>() {
        Sign::Plus
    } else {
        Sign::Minus
    };
    random_involution(desc, n, epsilon0, rng, INVERTIBLE_TRIES)
}

fn gram_closed_form(rng: &mut ChaCha8Rng, _strict: bool) -> Verdict {
    // evaluate() against the entrywise expansion
    // h(x, y)[f, g] = Σ_{p,q} conj(x[p,f])·B[p,q]·y[q,g]
    let t = draw(rng);
    let form = match Form::random_bar_t(&t.desc, t.n, t.k, None, rng.gen()) {
        Ok(f) => f,
        Err(e) => return Verdict::Fail(format!("form construction: {e}")),
    };
    for _ in 0..2 {
        let x = random_matrix(&t.desc, t.k, t.n, rng);
        let y = random_matrix(&t.desc, t.k, t.n, rng);
        let fast = form.evaluate(&x, &y).expect("conforming shapes");
        let mut slow = Matrix::zeros(&t.desc, t.n, t.n);
        for f in 1..=t.n {
            for g in 1..=t.n {
                let mut acc = t.desc.zero();
                for p in 1..=t.k {
                    for q in 1..=t.k {
                        let term = x
                            .entry(p, f)
                            .conj()
                            .mul(form.gram().entry(p, q))
                            .and_then(|v| v.mul(y.entry(q, g)))
                            .expect("shared descriptor");
                        acc = acc.add(&term).expect("shared descriptor");
                    }
                }
                slow.set_entry(f, g, acc);
            }
        }
        if fast != slow {
            return Verdict::Fail("closed form disagrees with entrywise expansion".into());
        }
    }
    Verdict::Pass
}

fn epsilon_symmetry(rng: &mut ChaCha8Rng, _strict: bool) -> Verdict {
    let t = draw(rng);
    let form = match rng.gen_range(0..3) {
        0 => Form::random_over_d(&t.desc, t.k, Some(t.epsilon), rng.gen()),
        1 => Form::random_bar_t(&t.desc, t.n, t.k, Some(t.epsilon), rng.gen()),
        _ => {
            let Some(spec) = draw_involution(rng, &t.desc, t.n) else {
                return Verdict::Skip("no invertible involution draw");
            };
            Form::random_star(&spec, t.k, Some(t.epsilon), rng.gen())
        }
    };
    let form = match form {
        Ok(f) => f,
        Err(e) => return Verdict::Fail(format!("form construction: {e}")),
    };
    match epsilon_symmetry_holds(&form, 4, rng.gen()) {
        Ok(true) => Verdict::Pass,
        Ok(false) => Verdict::Fail("h(y,x) = ε·h(x,y)^σ failed".into()),
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

fn sesquilinearity(rng: &mut ChaCha8Rng, _strict: bool) -> Verdict {
    let t = draw(rng);
    let epsilon = if rng.gen::<bool>() { None } else { Some(t.epsilon) };
    let form = match rng.gen_range(0..3) {
        0 => Form::random_over_d(&t.desc, t.k, epsilon, rng.gen()),
        1 => Form::random_bar_t(&t.desc, t.n, t.k, epsilon, rng.gen()),
        _ => {
            let Some(spec) = draw_involution(rng, &t.desc, t.n) else {
                return Verdict::Skip("no invertible involution draw");
            };
            Form::random_star(&spec, t.k, epsilon, rng.gen())
        }
    };
    let form = match form {
        Ok(f) => f,
        Err(e) => return Verdict::Fail(format!("form construction: {e}")),
    };
    match sesquilinearity_holds(&form, 4, rng.gen()) {
        Ok(true) => Verdict::Pass,
        Ok(false) => Verdict::Fail("sesquilinearity chain failed".into()),
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

fn congruence_sum_compat(rng: &mut ChaCha8Rng, _strict: bool) -> Verdict {
    let t = draw(rng);
    let k2 = rng.gen_range(1..=3);
    let f = Form::random_over_d(&t.desc, t.k, Some(t.epsilon), rng.gen())
        .expect("symmetrized gram");
    let g = Form::random_over_d(&t.desc, k2, Some(t.epsilon), rng.gen())
        .expect("symmetrized gram");
    let Some(qf) = random_invertible(&t.desc, t.k, rng, INVERTIBLE_TRIES) else {
        return Verdict::Skip("no invertible draw");
    };
    let Some(qg) = random_invertible(&t.desc, k2, rng, INVERTIBLE_TRIES) else {
        return Verdict::Skip("no invertible draw");
    };
    let left = f
        .orthogonal_sum(&g)
        .and_then(|sum| sum.congruence(&qf.block_diag(&qg)?));
    let right = f
        .congruence(&qf)
        .and_then(|fc| fc.orthogonal_sum(&g.congruence(&qg)?));
    match (left, right) {
        (Ok(l), Ok(r)) if l == r => Verdict::Pass,
        (Ok(_), Ok(_)) => Verdict::Fail("congruence does not commute with ⊥".into()),
        (Err(e), _) | (_, Err(e)) => Verdict::Fail(e.to_string()),
    }
}

fn sum_functoriality(rng: &mut ChaCha8Rng, strict: bool) -> Verdict {
    let t = draw(rng);
    let Some(spec) = draw_involution(rng, &t.desc, t.n) else {
        return Verdict::Skip("no invertible involution draw");
    };
    let k2 = rng.gen_range(1..=3);
    let f = Form::random_star(&spec, t.k, Some(t.epsilon), rng.gen()).expect("twisted gram");
    let g = Form::random_star(&spec, k2, Some(t.epsilon), rng.gen()).expect("twisted gram");
    let sum = f.orthogonal_sum(&g).expect("same side and spec");
    let (sum_reduced, _) = match morita_reduce(&sum, strict) {
        Ok(v) => v,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    let (fr, _) = morita_reduce(&f, strict).expect("reduce");
    let (gr, _) = morita_reduce(&g, strict).expect("reduce");
    let blocks = fr.orthogonal_sum(&gr).expect("same side");
    if sum_reduced == blocks {
        Verdict::Pass
    } else {
        Verdict::Fail("reduce(f ⊥ g) ≠ reduce(f) ⊥ reduce(g)".into())
    }
}

fn isometry_transport(rng: &mut ChaCha8Rng, strict: bool) -> Verdict {
    let t = draw(rng);
    let epsilon = if rng.gen::<bool>() { None } else { Some(t.epsilon) };
    let f = Form::random_bar_t(&t.desc, t.n, t.k, epsilon, rng.gen()).expect("gram");
    let Some(q) = random_invertible(&t.desc, t.k, rng, INVERTIBLE_TRIES) else {
        return Verdict::Skip("no invertible draw");
    };
    let g = f.congruence(&q).expect("invertible");
    let bf = extract_gram(&GramEvaluator::new(&f), strict).expect("gram-backed");
    let bg = extract_gram(&GramEvaluator::new(&g), strict).expect("gram-backed");
    let law = q
        .bar_transpose()
        .mul(&bf)
        .and_then(|m| m.mul(&q))
        .expect("conforming");
    if bg == law {
        Verdict::Pass
    } else {
        Verdict::Fail("extract(congruence(f, Q)) ≠ Q̄ᵗ·extract(f)·Q".into())
    }
}

fn hyperbolic_witness(rng: &mut ChaCha8Rng, _strict: bool) -> Verdict {
    let t = draw(rng);
    let Some(spec) = draw_involution(rng, &t.desc, t.n) else {
        return Verdict::Skip("no invertible involution draw");
    };
    let rank = rng.gen_range(1..=2);
    match transport_hyperbolic(&spec, rank, t.epsilon) {
        Ok((_, report)) if report.exact_roundtrip => {
            if report.output_epsilon == Some(t.epsilon * spec.epsilon0()) {
                Verdict::Pass
            } else {
                Verdict::Fail("hyperbolic transport has the wrong sign".into())
            }
        }
        Ok(_) => Verdict::Fail("witness congruence missed the standard block".into()),
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

fn sign_law(rng: &mut ChaCha8Rng, strict: bool) -> Verdict {
    let t = draw(rng);
    let Some(spec) = draw_involution(rng, &t.desc, t.n) else {
        return Verdict::Skip("no invertible involution draw");
    };
    let f = Form::random_star(&spec, t.k, Some(t.epsilon), rng.gen()).expect("twisted gram");
    let (reduced, report) = match morita_reduce(&f, strict) {
        Ok(v) => v,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    let expected = Some(t.epsilon * spec.epsilon0());
    if reduced.epsilon() == expected
        && report.output_epsilon == expected
        && report.input_epsilon == Some(t.epsilon)
        && reduced.check_symmetry().epsilon() == expected
    {
        Verdict::Pass
    } else {
        Verdict::Fail(format!(
            "output epsilon {:?}, expected ε₀·ε = {:?}",
            reduced.epsilon(),
            expected
        ))
    }
}

fn lambda_rescaling(rng: &mut ChaCha8Rng, strict: bool) -> Verdict {
    let t = draw(rng);
    let Some(spec) = draw_involution(rng, &t.desc, t.n) else {
        return Verdict::Skip("no invertible involution draw");
    };
    let f = Form::random_star(&spec, t.k, Some(t.epsilon), rng.gen()).expect("twisted gram");
    let lambdas = [
        Rational::from(2),
        Rational::from(3),
        Rational::from_integers(-1, 2).unwrap(),
    ];
    let lambda = &lambdas[rng.gen_range(0..lambdas.len())];
    let lambda_inv = lambda.inv().expect("nonzero");

    let rescaled_spec = match Involution::from_matrix(spec.s().scale_rational(lambda)) {
        Ok(s) => s,
        Err(e) => return Verdict::Fail(format!("λS must stay a valid involution: {e}")),
    };
    if rescaled_spec.epsilon0() != spec.epsilon0() {
        return Verdict::Fail("λS changed ε₀".into());
    }
    // same involution as maps
    for _ in 0..3 {
        let x = random_matrix(&t.desc, t.n, t.n, rng);
        if rescaled_spec.apply(&x) != spec.apply(&x) {
            return Verdict::Fail("ad_{λS} ≠ ad_S as maps".into());
        }
    }
    // the same form parameterized against λS has Gram λ⁻¹B, and reduces to λ⁻¹ times the reduction
    let same_form = Form::over_mnd_star(
        f.gram().scale_rational(&lambda_inv),
        f.epsilon(),
        rescaled_spec,
    )
    .expect("epsilon status is preserved under central rescaling");
    let (reduced, _) = morita_reduce(&f, strict).expect("reduce");
    let (rescaled_reduced, _) = morita_reduce(&same_form, strict).expect("reduce");
    if rescaled_reduced.gram() == &reduced.gram().scale_rational(&lambda_inv) {
        Verdict::Pass
    } else {
        Verdict::Fail("reduced Gram did not rescale by λ⁻¹".into())
    }
}

fn roundtrip_star(rng: &mut ChaCha8Rng, strict: bool) -> Verdict {
    let t = draw(rng);
    let Some(spec) = draw_involution(rng, &t.desc, t.n) else {
        return Verdict::Skip("no invertible involution draw");
    };
    let f = Form::random_star(&spec, t.k, Some(t.epsilon), rng.gen()).expect("twisted gram");
    let (reduced, report) = match morita_reduce(&f, strict) {
        Ok(v) => v,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    let back = morita_lift(&reduced, &spec).expect("lift");
    if report.exact_roundtrip && back == f {
        Verdict::Pass
    } else {
        Verdict::Fail("lift ∘ reduce ≠ id".into())
    }
}

fn roundtrip_d(rng: &mut ChaCha8Rng, strict: bool) -> Verdict {
    let t = draw(rng);
    let Some(spec) = draw_involution(rng, &t.desc, t.n) else {
        return Verdict::Skip("no invertible involution draw");
    };
    let epsilon = if rng.gen::<bool>() { None } else { Some(t.epsilon) };
    let phi = Form::random_over_d(&t.desc, t.k, epsilon, rng.gen()).expect("gram");
    let lifted = match morita_lift(&phi, &spec) {
        Ok(f) => f,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    if lifted.side() != Side::OverMnDStar {
        return Verdict::Fail("lift landed on the wrong side".into());
    }
    let (back, _) = match morita_reduce(&lifted, strict) {
        Ok(v) => v,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    if back == phi {
        Verdict::Pass
    } else {
        Verdict::Fail("reduce ∘ lift ≠ id".into())
    }
}

fn prop2_consistency(rng: &mut ChaCha8Rng, strict: bool) -> Verdict {
    // Gram-backed evaluators never trip the probe checks, and extraction
    // recovers the stored Gram matrix exactly.
    let t = draw(rng);
    let epsilon = if rng.gen::<bool>() { None } else { Some(t.epsilon) };
    let form = Form::random_bar_t(&t.desc, t.n, t.k, epsilon, rng.gen()).expect("gram");
    match extract_gram(&GramEvaluator::new(&form), strict) {
        Ok(extracted) if &extracted == form.gram() => Verdict::Pass,
        Ok(_) => Verdict::Fail("extraction returned a different Gram matrix".into()),
        Err(e) => Verdict::Fail(format!("extraction rejected an honest evaluator: {e}")),
    }
}

type Invariant = (&'static str, fn(&mut ChaCha8Rng, bool) -> Verdict);

const INVARIANTS: &[Invariant] = &[
    ("gram_closed_form", gram_closed_form),
    ("epsilon_symmetry", epsilon_symmetry),
    ("sesquilinearity", sesquilinearity),
    ("congruence_sum_compat", congruence_sum_compat),
    ("sum_functoriality", sum_functoriality),
    ("isometry_transport", isometry_transport),
    ("hyperbolic_witness", hyperbolic_witness),
    ("sign_law", sign_law),
    ("lambda_rescaling", lambda_rescaling),
    ("roundtrip_star", roundtrip_star),
    ("roundtrip_d", roundtrip_d),
    ("prop2_consistency", prop2_consistency),
];

pub fn run_fuzz(config: &FuzzConfig) -> FuzzOutcome {
    let mut text = format!(
        "command: fuzz\nseed: {}\ntrials: {}\nstrict: {}\n",
        config.seed, config.trials, config.strict
    );
    let mut failures = 0usize;
    let mut skips = 0usize;
    for (index, (name, invariant)) in INVARIANTS.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(
            config
                .seed
                .wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        );
        let mut verdict_line = format!("{name}: pass\n");
        for trial in 0..config.trials {
            match invariant(&mut rng, config.strict) {
                Verdict::Pass => {}
                Verdict::Skip(_) => skips += 1,
                Verdict::Fail(detail) => {
                    failures += 1;
                    verdict_line = format!(
                        "{name}: FAIL (trial {trial}, seed {}: {detail})\n",
                        config.seed
                    );
                    break;
                }
            }
        }
        text.push_str(&verdict_line);
    }
    text.push_str(&format!("skipped_trials: {skips}\n"));
    text.push_str(&format!("invariants_failed: {failures}\n"));
    FuzzOutcome {
        text,
        failures,
        skips,
    }
}
