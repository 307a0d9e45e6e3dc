//! The adjoint involution X ↦ S·X̄ᵗ·S⁻¹ on M_n(D).
//!
//! `S` is the matrix of a nonsingular ε₀-hermitian form, so S̄ᵗ = ε₀S with
//! ε₀ = ±1. The sign is detected from S, never supplied: a wrong declared
//! sign would poison every sign computed downstream. S itself is kept
//! verbatim even though λS defines the same involution for every nonzero
//! rational λ; outputs that depend on S (not just on the involution) say so
//! in their documentation.

use rand::Rng;

use crate::algebra::AlgebraDescriptor;
use crate::error::{Error, Result};
use crate::matrix::{random_matrix, Matrix};
use crate::sign::Sign;

#[derive(Debug, Clone)]
pub struct Involution {
    s: Matrix,
    s_inv: Matrix,
    epsilon0: Sign,
}

impl PartialEq for Involution {
    fn eq(&self, other: &Self) -> bool {
        // s determines s_inv and epsilon0
        self.s == other.s
    }
}

impl Eq for Involution {}

impl Involution {
    /// Builds the adjoint involution of the form with matrix `S`, detecting
    /// ε₀ from S̄ᵗ = ε₀S and caching S⁻¹.
    pub fn from_matrix(s: Matrix) -> Result<Self> {
        if !s.is_square() {
            return Err(Error::ShapeMismatch);
        }
        let bt = s.bar_transpose();
        let epsilon0 = if bt == s {
            Sign::Plus
        } else if bt == s.neg() {
            Sign::Minus
        } else {
            return Err(Error::NotEpsilonHermitian);
        };
        let s_inv = s.inverse()?;
        Ok(Involution { s, s_inv, epsilon0 })
    }

    /// S = I_n: the involution is plain bar-transpose, with ε₀ = +1.
    pub fn standard(descriptor: &AlgebraDescriptor, n: usize) -> Self {
        Self::from_matrix(Matrix::identity(descriptor, n))
            .expect("the identity matrix is hermitian and invertible")
    }

    pub fn n(&self) -> usize {
        self.s.rows()
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn s_inv(&self) -> &Matrix {
        &self.s_inv
    }

    pub fn epsilon0(&self) -> Sign {
        self.epsilon0
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        self.s.descriptor()
    }

    /// X ↦ S·X̄ᵗ·S⁻¹ on n×n matrices.
    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        if x.shape() != (self.n(), self.n()) {
            return Err(Error::ShapeMismatch);
        }
        if x.descriptor() != self.descriptor() {
            return Err(Error::DescriptorMismatch);
        }
        self.s.mul(&x.bar_transpose())?.mul(&self.s_inv)
    }
}

/// Draws random ε₀-hermitian invertible matrices S = M ± M̄ᵗ until one works.
/// Returns `None` after `tries` failures; over ℚ a skew-symmetric matrix of
/// odd size is always singular, so that combination never succeeds.
pub fn random_involution<R: Rng + ?Sized>(
    descriptor: &AlgebraDescriptor,
    n: usize,
    epsilon0: Sign,
    rng: &mut R,
    tries: u32,
) -> Option<Involution> {
    for _ in 0..tries {
        let m = random_matrix(descriptor, n, n, rng);
        let s = match epsilon0 {
            Sign::Plus => m.add(&m.bar_transpose()),
            Sign::Minus => m.sub(&m.bar_transpose()),
        }
        .expect("shapes agree by construction");
        if s.is_zero() {
            continue;
        }
        if let Ok(spec) = Involution::from_matrix(s) {
            debug_assert_eq!(spec.epsilon0(), epsilon0);
            return Some(spec);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> AlgebraDescriptor {
        AlgebraDescriptor::rational()
    }

    fn hamilton() -> AlgebraDescriptor {
        AlgebraDescriptor::quaternion_i64(-1, -1).unwrap()
    }

    fn symplectic() -> Involution {
        Involution::from_matrix(Matrix::from_i64_rows(&q(), &[&[0, 1], &[-1, 0]]).unwrap())
            .unwrap()
    }

    #[test]
    fn epsilon_detection() {
        for desc in [q(), hamilton()] {
            let spec = Involution::standard(&desc, 3);
            assert_eq!(spec.epsilon0(), Sign::Plus);
        }
        assert_eq!(symplectic().epsilon0(), Sign::Minus);

        let diag = Matrix::from_i64_rows(&hamilton(), &[&[1, 0], &[0, -1]]).unwrap();
        let spec = Involution::from_matrix(diag).unwrap();
        assert_eq!(spec.epsilon0(), Sign::Plus);

        // skew-hermitian over a quaternion algebra: S = [i]
        let h = hamilton();
        let s = Matrix::new(h.clone(), 1, 1, vec![h.basis(1).unwrap()]).unwrap();
        assert_eq!(Involution::from_matrix(s).unwrap().epsilon0(), Sign::Minus);
    }

    #[test]
    fn rejects_bad_matrices() {
        let not_pm = Matrix::from_i64_rows(&q(), &[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(
            Involution::from_matrix(not_pm),
            Err(Error::NotEpsilonHermitian)
        );
        let singular = Matrix::from_i64_rows(&q(), &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(Involution::from_matrix(singular), Err(Error::Singular));
        let rect = Matrix::zeros(&q(), 2, 3);
        assert_eq!(Involution::from_matrix(rect), Err(Error::ShapeMismatch));
    }

    #[test]
    fn standard_involution_is_bar_transpose() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let spec = Involution::standard(&hamilton(), 2);
        let x = random_matrix(&hamilton(), 2, 2, &mut rng);
        assert_eq!(spec.apply(&x).unwrap(), x.bar_transpose());
    }

    #[test]
    fn symplectic_adjoint_worked_example() {
        // S·Xᵗ·S⁻¹ for S = [[0,1],[−1,0]], X = [[1,2],[3,4]], checked by hand
        let x = Matrix::from_i64_rows(&q(), &[&[1, 2], &[3, 4]]).unwrap();
        let expected = Matrix::from_i64_rows(&q(), &[&[4, -2], &[-3, 1]]).unwrap();
        assert_eq!(symplectic().apply(&x).unwrap(), expected);
    }

    #[test]
    fn involution_axioms_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for desc in [q(), AlgebraDescriptor::quadratic(-1).unwrap(), hamilton()] {
            for epsilon0 in [Sign::Plus, Sign::Minus] {
                for n in 1..=3 {
                    let Some(spec) = random_involution(&desc, n, epsilon0, &mut rng, 64) else {
                        continue; // e.g. skew over ℚ with n odd
                    };
                    for _ in 0..20 {
                        let x = random_matrix(&desc, n, n, &mut rng);
                        let y = random_matrix(&desc, n, n, &mut rng);
                        // order 2
                        assert_eq!(spec.apply(&spec.apply(&x).unwrap()).unwrap(), x);
                        // anti-automorphism
                        assert_eq!(
                            spec.apply(&x.mul(&y).unwrap()).unwrap(),
                            spec.apply(&y).unwrap().mul(&spec.apply(&x).unwrap()).unwrap()
                        );
                        // fixes central rational scalars
                        let c = Matrix::identity(&desc, n)
                            .scale_rational(&Rational::from_integers(5, 3).unwrap());
                        assert_eq!(spec.apply(&c).unwrap(), c);
                    }
                }
            }
        }
    }

    #[test]
    fn rescaling_s_gives_the_same_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for desc in [q(), hamilton()] {
            let spec = random_involution(&desc, 2, Sign::Plus, &mut rng, 64).unwrap();
            for lambda in [
                Rational::from(2),
                Rational::from(3),
                Rational::from_integers(-1, 2).unwrap(),
            ] {
                let scaled =
                    Involution::from_matrix(spec.s().scale_rational(&lambda)).unwrap();
                assert_eq!(scaled.epsilon0(), spec.epsilon0());
                for _ in 0..10 {
                    let x = random_matrix(&desc, 2, 2, &mut rng);
                    assert_eq!(scaled.apply(&x).unwrap(), spec.apply(&x).unwrap());
                }
            }
        }
    }
}
