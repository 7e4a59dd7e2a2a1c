//! Derivation spaces, derivations vanishing on given elements, the entrywise
//! lift `δ̂` of the field derivation to matrix-embedded algebras, and the
//! scalar derivation `α ↦ ∂α · x₀` into a module annihilator.

use serde::Serialize;

use crate::algebra::{AdditiveMap, Algebra, Element};
use crate::constructions::Construction;
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar, Subspace};
use crate::exec::Execution;
use crate::invariants::annihilator_full;

/// Largest dimension accepted by [`derivation_space`]; the system has `dim³` rows.
pub const DERIVATION_DIM_LIMIT: usize = 15;

/// Rows of the Leibniz system `D(b_i b_j) = b_i·D(b_j) + D(b_i)·b_j` for a
/// fixed `i`, over unknowns `D[k][l]` at index `k*dim + l`.
fn leibniz_rows(a: &Algebra, i: usize) -> Vec<Vec<Scalar>> {
    let f = a.field();
    let n = a.dim();
    let mut rows = Vec::new();
    for j in 0..n {
        let mut eqs = vec![vec![f.zero(); n * n]; n];
        let add = |k: usize, idx: usize, c: &Scalar, eqs: &mut Vec<Vec<Scalar>>| {
            eqs[k][idx] = f.add(&eqs[k][idx], c);
        };
        // D(b_i b_j)_k = Σ_l c_ijl D[k][l]
        for (l, c) in a.basis_product_terms(i, j) {
            for k in 0..n {
                add(k, k * n + l, c, &mut eqs);
            }
        }
        // − (b_i · D b_j)_k = − Σ_l D[l][j] c_ilk
        for l in 0..n {
            for (k, c) in a.basis_product_terms(i, l) {
                add(*k, l * n + j, &f.neg(c), &mut eqs);
            }
            // − (D b_i · b_j)_k = − Σ_l D[l][i] c_ljk
            for (k, c) in a.basis_product_terms(l, j) {
                add(*k, l * n + i, &f.neg(c), &mut eqs);
            }
        }
        rows.extend(eqs.into_iter().filter(|r| r.iter().any(|x| !f.is_zero(x))));
    }
    rows
}

fn leibniz_system(a: &Algebra, exec: Execution) -> Matrix {
    let n = a.dim();
    let blocks = exec.map(n, |i| leibniz_rows(a, i));
    let rows: Vec<Vec<Scalar>> = blocks.into_iter().flatten().collect();
    Matrix::from_rows_with_width(a.field(), n * n, rows)
}

fn check_dim(a: &Algebra) -> Result<()> {
    if a.dim() > DERIVATION_DIM_LIMIT {
        return Err(Error::TooLarge {
            size: a.dim() as u128,
            bound: DERIVATION_DIM_LIMIT as u128,
        });
    }
    Ok(())
}

/// Der(A) as a subspace of `F^(dim²)`, entry `D[k][l]` at `k*dim + l`.
pub fn derivation_space(a: &Algebra) -> Result<Subspace> {
    derivation_space_with(a, Execution::default())
}

pub fn derivation_space_with(a: &Algebra, exec: Execution) -> Result<Subspace> {
    check_dim(a)?;
    Ok(leibniz_system(a, exec).kernel())
}

/// Derivations `D` with `D(s) = 0` for every `s`.
pub fn derivations_vanishing_on(a: &Algebra, s: &[Element]) -> Result<Subspace> {
    check_dim(a)?;
    let f = a.field();
    let n = a.dim();
    let mut m = leibniz_system(a, Execution::default());
    for e in s {
        if e.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: e.len(),
            });
        }
        let mut rows = vec![vec![f.zero(); n * n]; n];
        for (k, row) in rows.iter_mut().enumerate() {
            for (l, x) in e.coords().iter().enumerate() {
                row[k * n + l] = x.clone();
            }
        }
        m = m.vstack(&Matrix::from_rows_with_width(f, n * n, rows));
    }
    Ok(m.kernel())
}

/// The `dim × dim` matrix of a vector in a derivation space.
pub fn derivation_matrix(a: &Algebra, v: &[Scalar]) -> Matrix {
    let n = a.dim();
    assert_eq!(v.len(), n * n, "derivation vector length");
    let rows = (0..n).map(|k| v[k * n..(k + 1) * n].to_vec()).collect();
    Matrix::from_rows_with_width(a.field(), n, rows)
}

/// Whether the linear map `m` satisfies the Leibniz rule on all basis pairs.
pub fn is_derivation(a: &Algebra, m: &Matrix) -> bool {
    let n = a.dim();
    if m.rows() != n || m.cols() != n {
        return false;
    }
    let cols = m.columns();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = m.mul_vec(a.basis_product(i, j).coords());
            let rhs = a.mul_vec(a.basis(i).coords(), &cols[j]);
            let rhs2 = a.mul_vec(&cols[i], a.basis(j).coords());
            let f = a.field();
            lhs.iter().zip(rhs.iter().zip(&rhs2)).all(|(l, (r, s))| *l == f.add(r, s))
        })
    })
}

/// Result of applying `δ̂` to an element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HatLift {
    /// The lift lies in the algebra; coordinates in its basis.
    InAlgebra { element: Element },
    /// The embedding has non-constant entries, so only the raw matrix is returned.
    Matrix { matrix: Matrix },
}

/// `δ̂(a)`: the field derivation applied to every entry of the matrix image.
pub fn hat_lift(c: &Construction, a: &Element) -> Result<HatLift> {
    let e = c.require_embedding()?;
    let f = c.algebra.field();
    if !f.has_derivation() {
        return Err(Error::precondition(format!("{f} has no derivation")));
    }
    if a.len() != c.algebra.dim() {
        return Err(Error::Dimension {
            expected: c.algebra.dim(),
            found: a.len(),
        });
    }
    let lifted = e.image(a.coords()).derive();
    if e.has_constant_entries() {
        let coords = e
            .preimage(&lifted)
            .ok_or_else(|| Error::InvalidAlgebra("lift of a constant embedding left the algebra".into()))?;
        Ok(HatLift::InAlgebra {
            element: Element::new(coords),
        })
    } else {
        Ok(HatLift::Matrix { matrix: lifted })
    }
}

/// `δ̂` as an additive map `g → g` when the embedding has constant entries.
pub fn hat_map(c: &Construction) -> Result<AdditiveMap> {
    let e = c.require_embedding()?;
    let f = c.algebra.field();
    if !f.has_derivation() {
        return Err(Error::precondition(format!("{f} has no derivation")));
    }
    if !e.has_constant_entries() {
        return Err(Error::hypothesis(
            "constant embedding",
            "the derivation does not vanish on the embedding coefficients",
        ));
    }
    let n = c.algebra.dim();
    Ok(AdditiveMap::differential(Matrix::zeros(f, n, n), Matrix::identity(f, n)))
}

/// `δ(α) = ∂α · x₀` from the scalar ring of a triangular ring into `M`.
/// `x0` is given in module coordinates and must lie in `ann(M) \ {0}`.
pub fn scalar_to_delta(c: &Construction, x0: &Element) -> Result<AdditiveMap> {
    let t = c.require_triangular()?;
    let f = t.field();
    if !f.has_derivation() {
        return Err(Error::precondition(format!("{f} has no derivation")));
    }
    let one = vec![f.one()];
    let scalar_ring = t.ring_dim() == 1
        && t.ring.mul_vec(&one, &one) == one
        && (0..t.module_dim()).all(|j| {
            let m = crate::exactmath::unit_vector(f, t.module_dim(), j);
            t.action.act_left(&one, &m) == m && t.action.act_right(&m, &one) == m
        });
    if !scalar_ring {
        return Err(Error::precondition("ring part is not the scalar field acting by scalars"));
    }
    if x0.len() != t.module_dim() {
        return Err(Error::Dimension {
            expected: t.module_dim(),
            found: x0.len(),
        });
    }
    if x0.coords().iter().all(|x| f.is_zero(x)) {
        return Err(Error::hypothesis("x0 in ann(M)", "x0 is zero"));
    }
    if !annihilator_full(&t.module).contains(x0.coords()) {
        return Err(Error::hypothesis("x0 in ann(M)", "x0 does not annihilate M"));
    }
    let d = Matrix::from_columns(f, t.module_dim(), &[x0.coords().to_vec()]);
    Ok(AdditiveMap::differential(Matrix::zeros(f, t.module_dim(), 1), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        field_algebra, heisenberg, matrix_lie, trivial_mult, triangular, two_dim_lie, BilinearAction,
    };
    use crate::exactmath::FieldSpec;

    #[test]
    fn derivation_dimensions() {
        let q = FieldSpec::rationals();
        assert_eq!(derivation_space(&trivial_mult(&q, 2).algebra).unwrap().dim(), 4);
        let two = two_dim_lie(&q).algebra;
        assert_eq!(derivation_space(&two).unwrap().dim(), 2);
        let h = heisenberg(&q, 1).unwrap().algebra;
        let der = derivation_space(&h).unwrap();
        assert_eq!(der.dim(), 6);
        for v in der.basis_vectors() {
            assert!(is_derivation(&h, &derivation_matrix(&h, &v)));
        }
        let vanish = derivations_vanishing_on(&h, &[h.basis(0)]).unwrap();
        assert_eq!(vanish.dim(), 3);
        assert!(der.contains_subspace(&vanish).unwrap());
        let both = derivations_vanishing_on(&two, &[two.basis(0), two.basis(1)]).unwrap();
        assert!(both.is_zero());
    }

    #[test]
    fn hat_lift_heisenberg() {
        let f = FieldSpec::rational_functions_q();
        let h = heisenberg(&f, 1).unwrap();
        let t = f.generator().unwrap();
        let a = Element::new(vec![t.clone(), f.mul(&t, &t), f.zero()]);
        let HatLift::InAlgebra { element } = hat_lift(&h, &a).unwrap() else {
            panic!("expected an algebra element");
        };
        assert_eq!(element.coords(), &[f.one(), f.times(2, &t), f.zero()]);
        let map = hat_map(&h).unwrap();
        assert_eq!(map.apply(a.coords()), element.coords());
        let gl = matrix_lie(&f, 2).unwrap();
        assert!(matches!(hat_lift(&gl, &gl.algebra.basis(0)).unwrap(), HatLift::InAlgebra { .. }));
    }

    #[test]
    fn scalar_delta() {
        let f = FieldSpec::rational_functions_q();
        let v = trivial_mult(&f, 2).algebra;
        let lam = triangular(&field_algebra(&f), &v, &BilinearAction::scalar(&f, 2)).unwrap();
        let x0 = Element::new(vec![f.one(), f.zero()]);
        let d = scalar_to_delta(&lam, &x0).unwrap();
        let t = f.generator().unwrap();
        assert_eq!(d.apply(std::slice::from_ref(&t)), x0.coords());
        assert_eq!(d.apply(&[f.from_int(7)]), vec![f.zero(), f.zero()]);
        assert_eq!(d.apply(&[f.mul(&t, &t)]), vec![f.times(2, &t), f.zero()]);
    }
}
