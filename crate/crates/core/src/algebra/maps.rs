use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{FieldSpec, Matrix, Scalar};

use super::{Algebra, Element};

/// An additive map `x ↦ L·x + D·∂x` between coordinate spaces, where `∂`
/// applies the field derivation to every coordinate.
///
/// Plain linear maps have no `D` part. The `D` part lets derivation-built
/// maps over Q(t), which are additive but not Q(t)-linear, be represented
/// exactly. Over fields without a derivation `D` is always absent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AdditiveMap {
    linear: Matrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    derivative: Option<Matrix>,
}

impl AdditiveMap {
    pub fn linear(m: Matrix) -> Self {
        AdditiveMap {
            linear: m,
            derivative: None,
        }
    }

    /// `x ↦ L·x + D·∂x`; panics when the shapes differ.
    pub fn differential(linear: Matrix, derivative: Matrix) -> Self {
        assert_eq!(
            (linear.rows(), linear.cols()),
            (derivative.rows(), derivative.cols()),
            "shape mismatch between linear and derivative parts"
        );
        let keep = linear.field().has_derivation() && !derivative.is_zero();
        AdditiveMap {
            linear,
            derivative: keep.then_some(derivative),
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        Self::linear(Matrix::identity(field, n))
    }

    pub fn zero(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Self::linear(Matrix::zeros(field, rows, cols))
    }

    pub fn field(&self) -> &FieldSpec {
        self.linear.field()
    }
    pub fn rows(&self) -> usize {
        self.linear.rows()
    }
    pub fn cols(&self) -> usize {
        self.linear.cols()
    }
    pub fn linear_part(&self) -> &Matrix {
        &self.linear
    }
    pub fn derivative_part(&self) -> Option<&Matrix> {
        self.derivative.as_ref()
    }
    pub fn is_linear(&self) -> bool {
        self.derivative.is_none()
    }

    fn derivative_or_zero(&self) -> Matrix {
        self.derivative
            .clone()
            .unwrap_or_else(|| Matrix::zeros(self.field(), self.rows(), self.cols()))
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = self.linear.mul_vec(v);
        if let Some(d) = &self.derivative {
            let dv: Vec<Scalar> = v.iter().map(|x| f.derive(x)).collect();
            for (o, x) in out.iter_mut().zip(d.mul_vec(&dv)) {
                *o = f.add(o, &x);
            }
        }
        out
    }

    pub fn apply_element(&self, a: &Element) -> Element {
        Element::new(self.apply(a.coords()))
    }

    pub fn add(&self, other: &AdditiveMap) -> AdditiveMap {
        AdditiveMap::differential(
            self.linear.add(&other.linear),
            self.derivative_or_zero().add(&other.derivative_or_zero()),
        )
    }

    pub fn sub(&self, other: &AdditiveMap) -> AdditiveMap {
        let minus = self.field().from_int(-1);
        AdditiveMap::differential(
            self.linear.sub(&other.linear),
            self.derivative_or_zero().add(&other.derivative_or_zero().scale(&minus)),
        )
    }

    /// `self ∘ inner`. With derivative parts `D1`, `D2` the composite is
    /// again first order only when `D1·D2 = 0` and `D1·∂D2 = 0`; other
    /// composites are rejected.
    pub fn compose(&self, inner: &AdditiveMap) -> Result<AdditiveMap> {
        if self.cols() != inner.rows() {
            return Err(Error::Dimension {
                expected: self.cols(),
                found: inner.rows(),
            });
        }
        let (l1, l2) = (&self.linear, &inner.linear);
        let Some(d1) = &self.derivative else {
            return Ok(AdditiveMap::differential(l1.mul(l2), l1.mul(&inner.derivative_or_zero())));
        };
        let d2 = inner.derivative_or_zero();
        if !d1.mul(&d2).is_zero() || !d1.mul(&d2.derive()).is_zero() {
            return Err(Error::Unsupported(
                "composite of derivative parts is not first order".into(),
            ));
        }
        let linear = l1.mul(l2).add(&d1.mul(&l2.derive()));
        let derivative = l1.mul(&d2).add(&d1.mul(l2));
        Ok(AdditiveMap::differential(linear, derivative))
    }

    /// `self^n` for square maps.
    pub fn pow(&self, n: u64) -> Result<AdditiveMap> {
        let mut acc = AdditiveMap::identity(self.field(), self.rows());
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Two-sided inverse. Linear maps are inverted exactly. For `L + D∂`
    /// with `N = L⁻¹D` satisfying `N·N = 0` and `N·∂N = 0` the inverse is
    /// `(1 − N∂)L⁻¹`; other differential maps yield `None` even if invertible.
    pub fn inverse(&self) -> Option<AdditiveMap> {
        let l_inv = self.linear.inverse()?;
        let Some(d) = &self.derivative else {
            return Some(AdditiveMap::linear(l_inv));
        };
        let n = l_inv.mul(d);
        if !n.mul(&n).is_zero() || !n.mul(&n.derive()).is_zero() {
            return None;
        }
        let minus = self.field().from_int(-1);
        let linear = l_inv.sub(&n.mul(&l_inv.derive()));
        let derivative = n.mul(&l_inv).scale(&minus);
        Some(AdditiveMap::differential(linear, derivative))
    }

    pub fn is_identity(&self) -> bool {
        self.is_linear() && self.linear.is_square() && self.linear == Matrix::identity(self.field(), self.rows())
    }
}

/// Whether `f` is multiplicative, checked on basis pairs.
///
/// A linear map is a homomorphism iff `f(b_i·b_j) = f(b_i)·f(b_j)` for all
/// basis pairs. For `f = L + D∂` the domain must have derivation-constant
/// structure constants; then four bilinear identities on basis pairs
/// (`L(ab) = La·Lb`, `D(a'b) = Da'·Lb`, `D(ab') = La·Db'`, `Da'·Db' = 0`)
/// are checked, which together imply multiplicativity.
pub fn verify_homomorphism(domain: &Algebra, codomain: &Algebra, f: &AdditiveMap) -> bool {
    if f.cols() != domain.dim() || f.rows() != codomain.dim() {
        return false;
    }
    if domain.field() != codomain.field() || domain.field() != f.field() {
        return false;
    }
    let n = domain.dim();
    let l = f.linear_part();
    let cols_l: Vec<Vec<Scalar>> = l.columns();
    let pairs_ok = |pre: &Matrix, left: &[Vec<Scalar>], right: &[Vec<Scalar>]| {
        (0..n).all(|i| {
            (0..n).all(|j| pre.mul_vec(domain.basis_product(i, j).coords()) == codomain.mul_vec(&left[i], &right[j]))
        })
    };
    let Some(d) = f.derivative_part() else {
        return pairs_ok(l, &cols_l, &cols_l);
    };
    if !domain.has_constant_structure() {
        return false;
    }
    let cols_d = d.columns();
    let zero = vec![f.field().zero(); codomain.dim()];
    let dd_ok = (0..n).all(|i| (0..n).all(|j| codomain.mul_vec(&cols_d[i], &cols_d[j]) == zero));
    pairs_ok(l, &cols_l, &cols_l) && pairs_ok(d, &cols_d, &cols_l) && pairs_ok(d, &cols_l, &cols_d)
        && dd_ok
}

/// A homomorphism of `a` to itself with a two-sided inverse.
pub fn verify_automorphism(a: &Algebra, f: &AdditiveMap) -> bool {
    verify_homomorphism(a, a, f) && f.inverse().is_some()
}

#[cfg(test)]
mod tests {
    use super::super::AlgebraBuilder;
    use super::*;

    fn h3(f: &FieldSpec) -> Algebra {
        let mut b = AlgebraBuilder::new(f, vec!["X".into(), "Y".into(), "Z".into()]);
        b.add_int(0, 1, 2, 1).add_int(1, 0, 2, -1);
        b.build()
    }

    #[test]
    fn identity_and_swap() {
        let f = FieldSpec::rationals();
        let h = h3(&f);
        assert!(verify_automorphism(&h, &AdditiveMap::identity(&f, 3)));
        let swap = Matrix::from_ints(&f, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(!verify_homomorphism(&h, &h, &AdditiveMap::linear(swap)));
        let swap_neg = Matrix::from_ints(&f, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]);
        assert!(verify_automorphism(&h, &AdditiveMap::linear(swap_neg)));
    }

    #[test]
    fn differential_inverse() {
        let f = FieldSpec::rational_functions_q();
        // (r, m) ↦ (r, m + ∂r) on a 2-dimensional space
        let l = Matrix::identity(&f, 2);
        let d = Matrix::from_ints(&f, &[&[0, 0], &[1, 0]]);
        let sigma = AdditiveMap::differential(l, d);
        let inv = sigma.inverse().unwrap();
        let t = f.generator().unwrap();
        let v = vec![f.mul(&t, &t), f.from_int(3)];
        assert_eq!(inv.apply(&sigma.apply(&v)), v);
        assert!(sigma.compose(&inv).unwrap().is_identity());
        let sq = sigma.compose(&sigma).unwrap();
        assert_eq!(sq.apply(&v)[1], f.add(&f.from_int(3), &f.times(4, &t)));
    }
}
