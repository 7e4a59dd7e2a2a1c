use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::field::{FieldSpec, Scalar};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Largest subspace `elements` will enumerate.
pub const ENUMERATION_BOUND: u64 = 1 << 20;

/// A linear subspace of `F^n` stored by its reduced row-echelon basis, so
/// equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of vectors of length `ambient`; panics on other lengths.
    pub fn span<I>(field: &FieldSpec, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let rows: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        Self::from_matrix(&Matrix::from_rows_with_width(field, ambient, rows))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let r = m.rref();
        let rows = r.matrix.row_vectors().into_iter().take(r.rank).collect();
        Subspace {
            ambient: m.cols(),
            basis: Matrix::from_rows_with_width(m.field(), m.cols(), rows),
            pivots: r.pivots,
        }
    }

    /// Standard basis vectors at `indices`.
    pub fn coordinate(field: &FieldSpec, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::span(
            field,
            ambient,
            indices.into_iter().map(|i| unit_vector(field, ambient, i)),
        )
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if n != self.ambient {
            return Err(Error::Dimension {
                expected: self.ambient,
                found: n,
            });
        }
        Ok(())
    }

    /// Canonical representative of `v + self`: zero at every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in self.basis.row(r).iter().enumerate() {
                if !f.is_zero(b) {
                    out[j] = f.sub(&out[j], &f.mul(&c, b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Coefficients of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given basis coefficients.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count mismatch");
        let f = self.field();
        let mut out = vec![f.zero(); self.ambient];
        for (r, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (j, b) in self.basis.row(r).iter().enumerate() {
                out[j] = f.add(&out[j], &f.mul(c, b));
            }
        }
        out
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other.ambient)?;
        Ok(other.basis_vectors().iter().all(|v| self.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)))
    }

    /// Intersection via the kernel of `[U^T | -V^T]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(f, self.ambient));
        }
        let minus_one = f.from_int(-1);
        let stacked = self.basis.transpose().hstack(&other.basis.transpose().scale(&minus_one));
        let kernel = stacked.kernel();
        let a = self.dim();
        let vectors = kernel
            .basis_vectors()
            .into_iter()
            .map(|k| self.combine(&k[..a]));
        Ok(Subspace::span(f, self.ambient, vectors))
    }

    /// Coordinates outside the pivot set; a canonical complement basis.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of `v + self` in the quotient, indexed like
    /// [`Subspace::complement_indices`].
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce(v);
        self.complement_indices().into_iter().map(|i| r[i].clone()).collect()
    }

    /// Image under `m`, whose column count must equal the ambient dimension.
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "shape mismatch in image");
        Subspace::span(
            m.field(),
            m.rows(),
            self.basis_vectors().iter().map(|v| m.mul_vec(v)),
        )
    }

    /// Copy of this subspace inside `F^total`, shifted to start at `offset`.
    pub fn embed(&self, offset: usize, total: usize) -> Subspace {
        assert!(offset + self.ambient <= total, "embedding out of range");
        let f = self.field();
        Subspace::span(
            f,
            total,
            self.basis_vectors().into_iter().map(|v| {
                let mut w = vec![f.zero(); total];
                for (i, x) in v.into_iter().enumerate() {
                    w[offset + i] = x;
                }
                w
            }),
        )
    }

    /// `self × other` inside `F^(a+b)`.
    pub fn product(&self, other: &Subspace) -> Subspace {
        let total = self.ambient + other.ambient;
        self.embed(0, total)
            .sum(&other.embed(self.ambient, total))
            .expect("equal ambient")
    }

    /// Restriction to the coordinate block `offset..offset+len`; callers use
    /// it on subspaces that live inside that block.
    pub fn restrict(&self, offset: usize, len: usize) -> Subspace {
        Subspace::span(
            self.field(),
            len,
            self.basis_vectors()
                .into_iter()
                .map(|v| v[offset..offset + len].to_vec()),
        )
    }

    /// Every element of the subspace over a finite field.
    pub fn elements(&self) -> Result<Vec<Vec<Scalar>>> {
        let f = self.field();
        let q = f
            .size()
            .ok_or_else(|| Error::Unsupported(format!("enumeration over infinite field {f}")))?;
        let count = (q as u128).checked_pow(self.dim() as u32).unwrap_or(u128::MAX);
        if count > ENUMERATION_BOUND as u128 {
            return Err(Error::TooLarge {
                size: count,
                bound: ENUMERATION_BOUND as u128,
            });
        }
        let count = count as u64;
        Ok((0..count)
            .map(|mut idx| {
                let coeffs: Vec<Scalar> = (0..self.dim())
                    .map(|_| {
                        let c = f.element_at(idx % q);
                        idx /= q;
                        c
                    })
                    .collect();
                self.combine(&coeffs)
            })
            .collect())
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Subspace", 3)?;
        st.serialize_field("ambient", &self.ambient)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", &self.basis)?;
        st.end()
    }
}

pub fn unit_vector(field: &FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn v(f: &FieldSpec, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn span_arithmetic() {
        let f = q();
        let u = Subspace::span(&f, 2, [v(&f, &[1, 0])]);
        let w = Subspace::span(&f, 2, [v(&f, &[1, 1])]);
        assert!(u.intersect(&w).unwrap().is_zero());
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert_eq!(u.sum(&Subspace::zero(&f, 2)).unwrap(), u);
        assert!(u.sum(&w).unwrap().is_full());
        assert!(u.sum(&Subspace::zero(&f, 3)).is_err());
    }

    #[test]
    fn canonical_equality() {
        let f = q();
        let a = Subspace::span(&f, 3, [v(&f, &[1, 2, 3]), v(&f, &[0, 1, 1])]);
        let b = Subspace::span(&f, 3, [v(&f, &[1, 3, 4]), v(&f, &[2, 5, 7])]);
        assert_eq!(a, b);
    }

    #[test]
    fn reduce_and_quotient() {
        let f = q();
        let s = Subspace::span(&f, 3, [v(&f, &[1, 1, 0])]);
        assert_eq!(s.complement_indices(), vec![1, 2]);
        assert_eq!(s.reduce(&v(&f, &[2, 0, 5])), v(&f, &[0, -2, 5]));
        assert_eq!(s.quotient_coordinates(&v(&f, &[1, 1, 0])), v(&f, &[0, 0]));
        assert_eq!(s.coordinates(&v(&f, &[3, 3, 0])), Some(v(&f, &[3])));
    }

    #[test]
    fn enumerate_finite() {
        let f = FieldSpec::prime(3).unwrap();
        let s = Subspace::span(&f, 3, [v(&f, &[1, 0, 1]), v(&f, &[0, 1, 1])]);
        let els = s.elements().unwrap();
        assert_eq!(els.len(), 9);
        assert!(els.iter().all(|e| s.contains(e)));
    }
}
