//! Division algebras over ℚ with their standard involutions.
//!
//! Three families are supported: ℚ itself, quadratic fields ℚ(√d), and
//! quaternion algebras (a, b) with i² = a, j² = b, ij = −ji. Elements are
//! coordinate vectors over ℚ; the involution is the identity, √d ↦ −√d, and
//! quaternion conjugation respectively.
//!
//! Whether a quaternion descriptor really is a division algebra is not
//! decided up front. Inversion fails with [`Error::NotDivision`] the moment
//! a nonzero element of reduced norm zero is hit.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraDescriptor {
    /// The base field ℚ; the involution is the identity.
    Rational,
    /// ℚ(√d) for a squarefree integer d ∉ {0, 1}.
    Quadratic { d: i64 },
    /// The quaternion algebra (a, b) with i² = a, j² = b, ij = −ji = k.
    Quaternion { a: Rational, b: Rational },
}

impl AlgebraDescriptor {
    pub fn rational() -> Self {
        AlgebraDescriptor::Rational
    }

    /// ℚ(√d). `d` must be squarefree and different from 0 and 1, so that the
    /// extension has degree 2.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::InvalidDescriptor("d must differ from 0 and 1"));
        }
        if !is_squarefree(d) {
            return Err(Error::InvalidDescriptor("d must be squarefree"));
        }
        Ok(AlgebraDescriptor::Quadratic { d })
    }

    /// The quaternion algebra (a, b); both parameters must be nonzero.
    pub fn quaternion(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidDescriptor(
                "quaternion parameters must be nonzero",
            ));
        }
        Ok(AlgebraDescriptor::Quaternion { a, b })
    }

    pub fn quaternion_i64(a: i64, b: i64) -> Result<Self> {
        Self::quaternion(Rational::from(a), Rational::from(b))
    }

    /// Coordinate dimension over ℚ: 1, 2 or 4.
    pub fn dim(&self) -> usize {
        match self {
            AlgebraDescriptor::Rational => 1,
            AlgebraDescriptor::Quadratic { .. } => 2,
            AlgebraDescriptor::Quaternion { .. } => 4,
        }
    }

    pub fn is_commutative(&self) -> bool {
        !matches!(self, AlgebraDescriptor::Quaternion { .. })
    }

    pub fn zero(&self) -> AlgebraElement {
        self.scalar(Rational::zero())
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(Rational::one())
    }

    /// Embeds q ∈ ℚ as q·1.
    pub fn scalar(&self, q: Rational) -> AlgebraElement {
        let mut coords = vec![Rational::zero(); self.dim()];
        coords[0] = q;
        AlgebraElement {
            descriptor: self.clone(),
            coords,
        }
    }

    pub fn scalar_i64(&self, q: i64) -> AlgebraElement {
        self.scalar(Rational::from(q))
    }

    /// The idx-th basis element (0-based): 1, then √d for the quadratic
    /// case, or i, j, k for quaternions.
    pub fn basis(&self, idx: usize) -> Result<AlgebraElement> {
        if idx >= self.dim() {
            return Err(Error::IndexOutOfRange);
        }
        let mut coords = vec![Rational::zero(); self.dim()];
        coords[idx] = Rational::one();
        Ok(AlgebraElement {
            descriptor: self.clone(),
            coords,
        })
    }

    /// Builds an element from its coordinate vector, which must have the
    /// kind-appropriate length.
    pub fn element(&self, coords: Vec<Rational>) -> Result<AlgebraElement> {
        if coords.len() != self.dim() {
            return Err(Error::ShapeMismatch);
        }
        Ok(AlgebraElement {
            descriptor: self.clone(),
            coords,
        })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<AlgebraElement> {
        self.element(coords.iter().map(|&c| Rational::from(c)).collect())
    }
}

fn is_squarefree(d: i64) -> bool {
    let mut m = d.unsigned_abs();
    let mut p: u64 = 2;
    while p.checked_mul(p).is_some_and(|sq| sq <= m) {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// An element of D in coordinates over ℚ.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    descriptor: AlgebraDescriptor,
    coords: Vec<Rational>,
}

impl AlgebraElement {
    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.descriptor
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Rational::is_zero)
    }

    /// True iff the element lies in the center of its algebra. Commutative
    /// algebras are their own center; a quaternion is central iff its i, j, k
    /// coordinates vanish.
    pub fn is_central(&self) -> bool {
        self.descriptor.is_commutative() || self.coords[1..].iter().all(Rational::is_zero)
    }

    fn same_descriptor(&self, other: &Self) -> Result<()> {
        if self.descriptor == other.descriptor {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_descriptor(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(x, y)| x + y)
            .collect();
        Ok(AlgebraElement {
            descriptor: self.descriptor.clone(),
            coords,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            descriptor: self.descriptor.clone(),
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }

    /// Multiplies by a central rational scalar.
    pub fn scale(&self, q: &Rational) -> Self {
        AlgebraElement {
            descriptor: self.descriptor.clone(),
            coords: self.coords.iter().map(|x| x * q).collect(),
        }
    }

    /// The product in D; order matters in the quaternion case.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_descriptor(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.descriptor.zero());
        }
        let x = &self.coords;
        let y = &other.coords;
        let coords = match &self.descriptor {
            AlgebraDescriptor::Rational => vec![&x[0] * &y[0]],
            AlgebraDescriptor::Quadratic { d } => {
                let d = Rational::from(*d);
                // (x0 + x1√d)(y0 + y1√d) = x0y0 + d·x1y1 + (x0y1 + x1y0)√d
                vec![
                    &x[0] * &y[0] + d * (&x[1] * &y[1]),
                    &x[0] * &y[1] + &x[1] * &y[0],
                ]
            }
            AlgebraDescriptor::Quaternion { a, b } => {
                let ab = a * b;
                let x0y0 = &x[0] * &y[0];
                let x1y1 = &x[1] * &y[1];
                let x2y2 = &x[2] * &y[2];
                let x3y3 = &x[3] * &y[3];
                let x0y1 = &x[0] * &y[1];
                let x1y0 = &x[1] * &y[0];
                let x2y3 = &x[2] * &y[3];
                let x3y2 = &x[3] * &y[2];
                let x0y2 = &x[0] * &y[2];
                let x2y0 = &x[2] * &y[0];
                let x1y3 = &x[1] * &y[3];
                let x3y1 = &x[3] * &y[1];
                let x0y3 = &x[0] * &y[3];
                let x3y0 = &x[3] * &y[0];
                let x1y2 = &x[1] * &y[2];
                let x2y1 = &x[2] * &y[1];
                vec![
                    x0y0 + a * x1y1 + b * x2y2 - &ab * x3y3,
                    x0y1 + x1y0 - b * x2y3 + b * x3y2,
                    x0y2 + x2y0 + a * x1y3 - a * x3y1,
                    x0y3 + x3y0 + x1y2 - x2y1,
                ]
            }
        };
        Ok(AlgebraElement {
            descriptor: self.descriptor.clone(),
            coords,
        })
    }

    /// The standard involution of the algebra: identity on ℚ, √d ↦ −√d,
    /// quaternion conjugation.
    pub fn conj(&self) -> Self {
        let mut coords = self.coords.clone();
        for c in coords.iter_mut().skip(1) {
            *c = -&*c;
        }
        AlgebraElement {
            descriptor: self.descriptor.clone(),
            coords,
        }
    }

    /// x·conj(x) ∈ ℚ: the square on ℚ, the field norm on ℚ(√d), the reduced
    /// norm x0² − a·x1² − b·x2² + ab·x3² on quaternions.
    pub fn norm(&self) -> Rational {
        let x = &self.coords;
        match &self.descriptor {
            AlgebraDescriptor::Rational => &x[0] * &x[0],
            AlgebraDescriptor::Quadratic { d } => {
                &x[0] * &x[0] - Rational::from(*d) * (&x[1] * &x[1])
            }
            AlgebraDescriptor::Quaternion { a, b } => {
                &x[0] * &x[0] - a * (&x[1] * &x[1]) - b * (&x[2] * &x[2])
                    + (a * b) * (&x[3] * &x[3])
            }
        }
    }

    /// Two-sided inverse, computed as conj(x)·N(x)⁻¹.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.descriptor {
            AlgebraDescriptor::Rational => {
                Ok(self.descriptor.scalar(self.coords[0].inv()?))
            }
            _ => {
                let norm = self.norm();
                if norm.is_zero() {
                    return Err(Error::NotDivision);
                }
                Ok(self.conj().scale(&norm.inv()?))
            }
        }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        write!(f, "(")?;
        for (idx, c) in self.coords.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A random element with small coordinates, deterministic from the generator
/// state. Numerators lie in [−9, 9] and denominators in [1, 3].
pub fn random_element<R: Rng + ?Sized>(
    descriptor: &AlgebraDescriptor,
    rng: &mut R,
) -> AlgebraElement {
    let coords = (0..descriptor.dim())
        .map(|_| {
            let n = rng.gen_range(-9i64..=9);
            let d = rng.gen_range(1i64..=3);
            Rational::from_integers(n, d).unwrap()
        })
        .collect();
    AlgebraElement {
        descriptor: descriptor.clone(),
        coords,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hamilton() -> AlgebraDescriptor {
        AlgebraDescriptor::quaternion_i64(-1, -1).unwrap()
    }

    #[test]
    fn descriptor_validation() {
        assert!(AlgebraDescriptor::quadratic(-1).is_ok());
        assert!(AlgebraDescriptor::quadratic(2).is_ok());
        assert!(AlgebraDescriptor::quadratic(5).is_ok());
        assert!(AlgebraDescriptor::quadratic(6).is_ok());
        assert!(AlgebraDescriptor::quadratic(0).is_err());
        assert!(AlgebraDescriptor::quadratic(1).is_err());
        assert!(AlgebraDescriptor::quadratic(4).is_err());
        assert!(AlgebraDescriptor::quadratic(12).is_err());
        assert!(AlgebraDescriptor::quadratic(-4).is_err());
        assert!(AlgebraDescriptor::quaternion_i64(0, -1).is_err());
        assert!(AlgebraDescriptor::quaternion_i64(-1, 0).is_err());
    }

    #[test]
    fn quaternion_defining_relations() {
        let q = hamilton();
        let i = q.basis(1).unwrap();
        let j = q.basis(2).unwrap();
        let k = q.basis(3).unwrap();
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&i).unwrap(), k.neg());
        assert_eq!(i.mul(&i).unwrap(), q.scalar_i64(-1));
        assert_eq!(j.mul(&j).unwrap(), q.scalar_i64(-1));
        assert_eq!(k.mul(&k).unwrap(), q.scalar_i64(-1));
    }

    #[test]
    fn general_quaternion_relations() {
        let q = AlgebraDescriptor::quaternion_i64(2, 5).unwrap();
        let i = q.basis(1).unwrap();
        let j = q.basis(2).unwrap();
        let k = q.basis(3).unwrap();
        assert_eq!(i.mul(&i).unwrap(), q.scalar_i64(2));
        assert_eq!(j.mul(&j).unwrap(), q.scalar_i64(5));
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&i).unwrap(), k.neg());
        // k² = −ab
        assert_eq!(k.mul(&k).unwrap(), q.scalar_i64(-10));
    }

    #[test]
    fn quadratic_difference_of_squares() {
        let q5 = AlgebraDescriptor::quadratic(5).unwrap();
        let x = q5.element_i64(&[1, 1]).unwrap();
        let y = q5.element_i64(&[1, -1]).unwrap();
        assert_eq!(x.mul(&y).unwrap(), q5.scalar_i64(-4));
    }

    #[test]
    fn conjugation_examples() {
        let q = AlgebraDescriptor::rational();
        let x = q.scalar(Rational::from_integers(3, 2).unwrap());
        assert_eq!(x.conj(), x);

        let q5 = AlgebraDescriptor::quadratic(5).unwrap();
        let y = q5.element_i64(&[1, 2]).unwrap();
        assert_eq!(y.conj(), q5.element_i64(&[1, -2]).unwrap());

        let h = hamilton();
        let z = h.element_i64(&[1, 1, 1, 1]).unwrap();
        assert_eq!(z.conj(), h.element_i64(&[1, -1, -1, -1]).unwrap());
    }

    #[test]
    fn inversion_examples() {
        let h = hamilton();
        let x = h.element_i64(&[1, 1, 0, 0]).unwrap();
        // N(1 + i) = 2, so (1 + i)⁻¹ = (1 − i)/2
        let expected = h
            .element(vec![
                Rational::from_integers(1, 2).unwrap(),
                Rational::from_integers(-1, 2).unwrap(),
                Rational::zero(),
                Rational::zero(),
            ])
            .unwrap();
        assert_eq!(x.inv().unwrap(), expected);

        let q2 = AlgebraDescriptor::quadratic(2).unwrap();
        let s = q2.element_i64(&[0, 1]).unwrap();
        let expected = q2
            .element(vec![Rational::zero(), Rational::from_integers(1, 2).unwrap()])
            .unwrap();
        assert_eq!(s.inv().unwrap(), expected);

        // Split algebra: N(1 + i) = 1 − 1 = 0 in (1, 1)
        let split = AlgebraDescriptor::quaternion_i64(1, 1).unwrap();
        let zd = split.element_i64(&[1, 1, 0, 0]).unwrap();
        assert_eq!(zd.inv(), Err(Error::NotDivision));

        assert_eq!(hamilton().zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn centrality_and_embedding() {
        let h = hamilton();
        assert_eq!(h.scalar_i64(1), h.element_i64(&[1, 0, 0, 0]).unwrap());
        assert!(!h.basis(1).unwrap().is_central());
        assert!(h.scalar_i64(7).is_central());
        let q5 = AlgebraDescriptor::quadratic(5).unwrap();
        assert!(q5.element_i64(&[1, 2]).unwrap().is_central());

        let i = h.basis(1).unwrap();
        let j = h.basis(2).unwrap();
        assert_eq!(i.add(&j).unwrap(), h.element_i64(&[0, 1, 1, 0]).unwrap());
    }

    #[test]
    fn descriptor_mismatch_is_an_error() {
        let a = hamilton().one();
        let b = AlgebraDescriptor::rational().one();
        assert_eq!(a.add(&b), Err(Error::DescriptorMismatch));
        assert_eq!(a.mul(&b), Err(Error::DescriptorMismatch));
    }

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

    #[test]
    fn involution_and_norm_properties_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for desc in families() {
            for _ in 0..200 {
                let x = random_element(&desc, &mut rng);
                let y = random_element(&desc, &mut rng);
                let z = random_element(&desc, &mut rng);

                // conj is an anti-automorphism of order 2
                assert_eq!(
                    x.mul(&y).unwrap().conj(),
                    y.conj().mul(&x.conj()).unwrap()
                );
                assert_eq!(x.conj().conj(), x);

                // conj fixes the rational subfield
                let q = desc.scalar(Rational::from_integers(3, 7).unwrap());
                assert_eq!(q.conj(), q);

                // multiplicativity of the norm
                assert_eq!(x.mul(&y).unwrap().norm(), &x.norm() * &y.norm());

                // associativity
                assert_eq!(
                    x.mul(&y).unwrap().mul(&z).unwrap(),
                    x.mul(&y.mul(&z).unwrap()).unwrap()
                );

                // two-sided inverse where defined
                if !x.is_zero() {
                    if let Ok(xi) = x.inv() {
                        assert!(x.mul(&xi).unwrap().is_one());
                        assert!(xi.mul(&x).unwrap().is_one());
                    }
                }
            }
        }
    }
}
