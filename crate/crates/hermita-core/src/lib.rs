//! Exact hermitian Morita machinery over ℚ.
//!
//! The crate represents division algebras D over ℚ with their standard
//! involutions, dense matrices over D, and sesquilinear or ε-hermitian
//! forms on Dᵏ and D^{k×n} — and makes the equivalences between forms over
//! (M_n(D), ∗), (M_n(D), −ᵗ) and (D, −) computable, exactly, with no
//! floating point anywhere.
//!
//! The arithmetic core is `no_std` (alloc only); IO, file formats and the
//! command-line front end live in the companion `hermita-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod form;
pub mod involution;
pub mod matrix;
pub mod morita;
pub mod rational;
pub mod sign;

pub use algebra::{AlgebraDescriptor, AlgebraElement};
pub use error::{Error, Result};
pub use form::{
    epsilon_symmetry_holds, sesquilinearity_holds, Form, FormEvaluator, GramEvaluator, Side,
    Symmetry,
};
pub use involution::Involution;
pub use matrix::Matrix;
pub use morita::{
    extract_gram, lift_form, morita_lift, morita_reduce, scale_form, transport_hyperbolic,
    unscale_form, EquivalenceReport,
};
pub use rational::Rational;
pub use sign::Sign;
