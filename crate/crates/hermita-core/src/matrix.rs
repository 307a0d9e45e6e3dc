//! Dense rectangular matrices over a division algebra D.
//!
//! Entries are stored row-major; all public indices are 1-based, matching
//! the e_{ij} conventions of the forms built on top. Row reduction uses
//! left row operations only, which keeps it valid over a noncommutative
//! coefficient algebra.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::algebra::{random_element, AlgebraDescriptor, AlgebraElement};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    descriptor: AlgebraDescriptor,
    entries: Vec<AlgebraElement>,
}

impl Matrix {
    /// Builds a matrix from row-major entries. All entries must share the
    /// descriptor and the shape must be nonempty.
    pub fn new(
        descriptor: AlgebraDescriptor,
        rows: usize,
        cols: usize,
        entries: Vec<AlgebraElement>,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch);
        }
        if entries.iter().any(|e| e.descriptor() != &descriptor) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(Matrix {
            rows,
            cols,
            descriptor,
            entries,
        })
    }

    pub fn from_rows(
        descriptor: AlgebraDescriptor,
        rows: Vec<Vec<AlgebraElement>>,
    ) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::ShapeMismatch);
        }
        let ncols = rows[0].len();
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch);
        }
        Self::new(
            descriptor,
            nrows,
            ncols,
            rows.into_iter().flatten().collect(),
        )
    }

    /// Scalar-entried matrix from integer rows; handy for fixtures.
    pub fn from_i64_rows(descriptor: &AlgebraDescriptor, rows: &[&[i64]]) -> Result<Self> {
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|&v| descriptor.scalar_i64(v)).collect())
            .collect();
        Self::from_rows(descriptor.clone(), converted)
    }

    pub fn zeros(descriptor: &AlgebraDescriptor, rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix shape must be nonempty");
        Matrix {
            rows,
            cols,
            descriptor: descriptor.clone(),
            entries: vec![descriptor.zero(); rows * cols],
        }
    }

    pub fn identity(descriptor: &AlgebraDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(descriptor, n, n);
        for idx in 1..=n {
            m.set_entry(idx, idx, descriptor.one());
        }
        m
    }

    /// The unit matrix e_{ij}: 1 in the (i, j) position, zeroes elsewhere.
    /// Indices are 1-based.
    pub fn unit(
        descriptor: &AlgebraDescriptor,
        rows: usize,
        cols: usize,
        i: usize,
        j: usize,
    ) -> Result<Self> {
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(Error::IndexOutOfRange);
        }
        let mut m = Self::zeros(descriptor, rows, cols);
        m.set_entry(i, j, descriptor.one());
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.descriptor
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "matrix index ({i}, {j}) out of range for {}x{}",
            self.rows,
            self.cols
        );
        (i - 1) * self.cols + (j - 1)
    }

    /// 1-based entry access.
    pub fn entry(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[self.idx(i, j)]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: AlgebraElement) {
        assert!(
            value.descriptor() == &self.descriptor,
            "entry descriptor does not match the matrix"
        );
        let idx = self.idx(i, j);
        self.entries[idx] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgebraElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (1..=self.rows).all(|i| {
                (1..=self.cols).all(|j| {
                    if i == j {
                        self.entry(i, j).is_one()
                    } else {
                        self.entry(i, j).is_zero()
                    }
                })
            })
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
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| x.add(y))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            descriptor: self.descriptor.clone(),
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            descriptor: self.descriptor.clone(),
            entries: self.entries.iter().map(AlgebraElement::neg).collect(),
        }
    }

    /// Multiplies every entry by `c` on the left.
    pub fn scale_left(&self, c: &AlgebraElement) -> Result<Self> {
        if c.descriptor() != &self.descriptor {
            return Err(Error::DescriptorMismatch);
        }
        let entries = self
            .entries
            .iter()
            .map(|e| c.mul(e))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            descriptor: self.descriptor.clone(),
            entries,
        })
    }

    /// Multiplies every entry by a central rational scalar.
    pub fn scale_rational(&self, q: &Rational) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            descriptor: self.descriptor.clone(),
            entries: self.entries.iter().map(|e| e.scale(q)).collect(),
        }
    }

    /// Matrix product. Each entry is Σ_t self[i,t]·other[t,j] with the left
    /// factor from `self`; over a noncommutative algebra the order is part
    /// of the meaning.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_descriptor(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch);
        }
        let mut out = Matrix::zeros(&self.descriptor, self.rows, other.cols);
        for i in 1..=self.rows {
            for j in 1..=other.cols {
                let mut acc = self.descriptor.zero();
                for t in 1..=self.cols {
                    let a = self.entry(i, t);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.entry(t, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                out.set_entry(i, j, acc);
            }
        }
        Ok(out)
    }

    /// The involution X ↦ X̄ᵗ: result[j, i] = conj(self[i, j]).
    pub fn bar_transpose(&self) -> Self {
        let mut out = Matrix::zeros(&self.descriptor, self.cols, self.rows);
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                out.set_entry(j, i, self.entry(i, j).conj());
            }
        }
        out
    }

    /// diag(self, other) as a block matrix.
    pub fn block_diag(&self, other: &Self) -> Result<Self> {
        self.same_descriptor(other)?;
        let mut out = Matrix::zeros(
            &self.descriptor,
            self.rows + other.rows,
            self.cols + other.cols,
        );
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                out.set_entry(i, j, self.entry(i, j).clone());
            }
        }
        for i in 1..=other.rows {
            for j in 1..=other.cols {
                out.set_entry(self.rows + i, self.cols + j, other.entry(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Two-sided inverse by Gauss–Jordan elimination with left row
    /// operations only. The pivot is the first row whose entry in the
    /// current column is invertible; exact arithmetic needs no magnitude
    /// heuristics. A column with nonzero entries but no invertible one
    /// exposes a zero divisor and fails with [`Error::NotDivision`].
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch);
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Matrix::identity(&self.descriptor, n);

        for col in 1..=n {
            let mut pivot: Option<(usize, AlgebraElement)> = None;
            let mut saw_nonzero = false;
            for row in col..=n {
                let e = work.entry(row, col);
                if e.is_zero() {
                    continue;
                }
                saw_nonzero = true;
                match e.inv() {
                    Ok(e_inv) => {
                        pivot = Some((row, e_inv));
                        break;
                    }
                    Err(Error::NotDivision) => continue,
                    Err(other) => return Err(other),
                }
            }
            let (pivot_row, pivot_inv) = match pivot {
                Some(p) => p,
                None if saw_nonzero => return Err(Error::NotDivision),
                None => return Err(Error::Singular),
            };
            if pivot_row != col {
                work.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            // row_col ← pivot⁻¹ · row_col
            for j in 1..=n {
                work.set_entry(col, j, pivot_inv.mul(work.entry(col, j))?);
                inv.set_entry(col, j, pivot_inv.mul(inv.entry(col, j))?);
            }
            // row_r ← row_r − c · row_col for every other row
            for row in 1..=n {
                if row == col {
                    continue;
                }
                let c = work.entry(row, col).clone();
                if c.is_zero() {
                    continue;
                }
                for j in 1..=n {
                    let w = work.entry(row, j).sub(&c.mul(work.entry(col, j))?)?;
                    work.set_entry(row, j, w);
                    let v = inv.entry(row, j).sub(&c.mul(inv.entry(col, j))?)?;
                    inv.set_entry(row, j, v);
                }
            }
        }

        // Row operations with invertible pivots are invertible, so a
        // completed elimination yields a two-sided inverse; verify anyway.
        assert!(
            self.mul(&inv)?.is_identity() && inv.mul(self)?.is_identity(),
            "row reduction produced a one-sided inverse"
        );
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for j in 0..self.cols {
            self.entries.swap((r1 - 1) * self.cols + j, (r2 - 1) * self.cols + j);
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 1..=self.rows {
            if i > 1 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 1..=self.cols {
                if j > 1 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.entry(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A random matrix with small entries, deterministic from the generator.
pub fn random_matrix<R: Rng + ?Sized>(
    descriptor: &AlgebraDescriptor,
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> Matrix {
    let entries = (0..rows * cols)
        .map(|_| random_element(descriptor, rng))
        .collect();
    Matrix {
        rows,
        cols,
        descriptor: descriptor.clone(),
        entries,
    }
}

/// Draws random n×n matrices until one is invertible. Returns `None` after
/// `tries` failures (singular draws, or zero divisors in a split algebra).
pub fn random_invertible<R: Rng + ?Sized>(
    descriptor: &AlgebraDescriptor,
    n: usize,
    rng: &mut R,
    tries: u32,
) -> Option<Matrix> {
    for _ in 0..tries {
        let m = random_matrix(descriptor, n, n, rng);
        if m.inverse().is_ok() {
            return Some(m);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> AlgebraDescriptor {
        AlgebraDescriptor::rational()
    }

    fn hamilton() -> AlgebraDescriptor {
        AlgebraDescriptor::quaternion_i64(-1, -1).unwrap()
    }

    #[test]
    fn unit_matrix_shape_and_errors() {
        let e12 = Matrix::unit(&q(), 2, 2, 1, 2).unwrap();
        assert_eq!(e12, Matrix::from_i64_rows(&q(), &[&[0, 1], &[0, 0]]).unwrap());
        assert_eq!(Matrix::unit(&q(), 2, 2, 3, 1), Err(Error::IndexOutOfRange));
        assert_eq!(Matrix::unit(&q(), 2, 2, 1, 0), Err(Error::IndexOutOfRange));
    }

    #[test]
    fn unit_matrix_product_identity_exhaustive() {
        // e_{if}·E_{fl} = e_{il} for all valid indices, k, n ≤ 4
        for desc in [q(), hamilton()] {
            for k in 1..=4 {
                for n in 1..=4 {
                    for i in 1..=k {
                        for f in 1..=n {
                            for l in 1..=n {
                                let e_if = Matrix::unit(&desc, k, n, i, f).unwrap();
                                let e_fl = Matrix::unit(&desc, n, n, f, l).unwrap();
                                let e_il = Matrix::unit(&desc, k, n, i, l).unwrap();
                                assert_eq!(e_if.mul(&e_fl).unwrap(), e_il);
                                // e_{if} = e_{ii}·E_{if} needs i ≤ n
                                if i <= n {
                                    let e_ii = Matrix::unit(&desc, k, n, i, i).unwrap();
                                    let big_e_if = Matrix::unit(&desc, n, n, i, f).unwrap();
                                    assert_eq!(e_ii.mul(&big_e_if).unwrap(), e_if);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unit_matrix_picks_rows_and_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for desc in [q(), hamilton()] {
            let n = 3;
            let c = random_matrix(&desc, n, n, &mut rng);
            for i in 1..=n {
                for j in 1..=n {
                    let e_ij = Matrix::unit(&desc, n, n, i, j).unwrap();
                    // E_{ij}·C puts row j of C into row i
                    let picked = e_ij.mul(&c).unwrap();
                    for r in 1..=n {
                        for s in 1..=n {
                            let expected = if r == i { c.entry(j, s) } else { &desc.zero() };
                            assert_eq!(picked.entry(r, s), expected);
                        }
                    }
                    // C·E_{ij} puts column i of C into column j
                    let picked = c.mul(&e_ij).unwrap();
                    for r in 1..=n {
                        for s in 1..=n {
                            let expected = if s == j { c.entry(r, i) } else { &desc.zero() };
                            assert_eq!(picked.entry(r, s), expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_respects_order() {
        let h = hamilton();
        let i = Matrix::new(h.clone(), 1, 1, vec![h.basis(1).unwrap()]).unwrap();
        let j = Matrix::new(h.clone(), 1, 1, vec![h.basis(2).unwrap()]).unwrap();
        let k = Matrix::new(h.clone(), 1, 1, vec![h.basis(3).unwrap()]).unwrap();
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&i).unwrap(), k.neg());
    }

    #[test]
    fn identity_and_additive_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_matrix(&hamilton(), 3, 3, &mut rng);
        let id = Matrix::identity(&hamilton(), 3);
        assert_eq!(id.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&id).unwrap(), x);
        assert!(x.add(&x.neg()).unwrap().is_zero());
        assert_eq!(x.scale_left(&hamilton().one()).unwrap(), x);
    }

    #[test]
    fn scale_left_uses_left_multiplication() {
        let h = hamilton();
        let jm = Matrix::new(h.clone(), 1, 1, vec![h.basis(2).unwrap()]).unwrap();
        let scaled = jm.scale_left(&h.basis(1).unwrap()).unwrap();
        assert_eq!(scaled.entry(1, 1), &h.basis(3).unwrap()); // i·j = k
    }

    #[test]
    fn bar_transpose_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for desc in [q(), AlgebraDescriptor::quadratic(5).unwrap(), hamilton()] {
            let a = random_matrix(&desc, 2, 3, &mut rng);
            let b = random_matrix(&desc, 3, 2, &mut rng);
            assert_eq!(a.bar_transpose().shape(), (3, 2));
            assert_eq!(a.bar_transpose().bar_transpose(), a);
            // anti-automorphism
            assert_eq!(
                a.mul(&b).unwrap().bar_transpose(),
                b.bar_transpose().mul(&a.bar_transpose()).unwrap()
            );
        }
        // over ℚ it is the plain transpose
        let m = Matrix::from_i64_rows(&q(), &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(
            m.bar_transpose(),
            Matrix::from_i64_rows(&q(), &[&[1, 3], &[2, 4]]).unwrap()
        );
    }

    #[test]
    fn bar_transpose_of_unit_matrix() {
        let e = Matrix::unit(&hamilton(), 2, 3, 1, 2).unwrap();
        assert_eq!(e.bar_transpose(), Matrix::unit(&hamilton(), 3, 2, 2, 1).unwrap());
    }

    #[test]
    fn inverse_examples() {
        let h = hamilton();
        assert_eq!(
            Matrix::identity(&h, 3).inverse().unwrap(),
            Matrix::identity(&h, 3)
        );

        // diag(i, j)⁻¹ = diag(−i, −j)
        let mut m = Matrix::zeros(&h, 2, 2);
        m.set_entry(1, 1, h.basis(1).unwrap());
        m.set_entry(2, 2, h.basis(2).unwrap());
        let mut expected = Matrix::zeros(&h, 2, 2);
        expected.set_entry(1, 1, h.basis(1).unwrap().neg());
        expected.set_entry(2, 2, h.basis(2).unwrap().neg());
        assert_eq!(m.inverse().unwrap(), expected);

        // [[1, i], [j, k]] is invertible; the two-sided identity is checked
        // inside inverse() itself
        let m = Matrix::from_rows(
            h.clone(),
            vec![
                vec![h.one(), h.basis(1).unwrap()],
                vec![h.basis(2).unwrap(), h.basis(3).unwrap()],
            ],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn inverse_error_paths() {
        let m = Matrix::from_i64_rows(&q(), &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(m.inverse(), Err(Error::Singular));
        let rect = Matrix::zeros(&q(), 2, 3);
        assert_eq!(rect.inverse(), Err(Error::ShapeMismatch));

        // In the split algebra (1, 1), the column of 1 + i has nonzero
        // entries but no invertible pivot.
        let split = AlgebraDescriptor::quaternion_i64(1, 1).unwrap();
        let z = split.element_i64(&[1, 1, 0, 0]).unwrap();
        let m = Matrix::new(split, 1, 1, vec![z]).unwrap();
        assert_eq!(m.inverse(), Err(Error::NotDivision));
    }

    #[test]
    fn shape_and_descriptor_errors() {
        let a = Matrix::zeros(&q(), 2, 3);
        let b = Matrix::zeros(&q(), 2, 3);
        assert_eq!(a.mul(&b), Err(Error::ShapeMismatch));
        let c = Matrix::zeros(&hamilton(), 3, 2);
        assert_eq!(a.mul(&c), Err(Error::DescriptorMismatch));
        assert_eq!(a.add(&c), Err(Error::DescriptorMismatch));
    }

    #[test]
    fn associativity_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for desc in [q(), AlgebraDescriptor::quadratic(-1).unwrap(), hamilton()] {
            for _ in 0..25 {
                let a = random_matrix(&desc, 2, 3, &mut rng);
                let b = random_matrix(&desc, 3, 2, &mut rng);
                let c = random_matrix(&desc, 2, 2, &mut rng);
                assert_eq!(
                    a.mul(&b).unwrap().mul(&c).unwrap(),
                    a.mul(&b.mul(&c).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn random_inverse_is_two_sided() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for desc in [q(), AlgebraDescriptor::quadratic(2).unwrap(), hamilton()] {
            for n in 1..=3 {
                for _ in 0..20 {
                    let m = random_invertible(&desc, n, &mut rng, 64).unwrap();
                    let inv = m.inverse().unwrap();
                    assert!(m.mul(&inv).unwrap().is_identity());
                    assert!(inv.mul(&m).unwrap().is_identity());
                }
            }
        }
    }
}
