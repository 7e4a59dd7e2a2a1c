//! Annihilators, centers, power ideals and central series, and the
//! annihilator formula and analysis chain of triangular rings.

use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::constructions::{semidirect_double, s_of, Construction, TriangularParts};
use crate::error::{Error, Result};
use crate::exactmath::{unit_vector, FieldSpec, Matrix, Scalar, Subspace};

fn stacked_kernel(field: &FieldSpec, cols: usize, blocks: impl IntoIterator<Item = Matrix>) -> Subspace {
    let mut acc: Option<Matrix> = None;
    for b in blocks {
        acc = Some(match acc {
            None => b,
            Some(a) => a.vstack(&b),
        });
    }
    match acc {
        Some(m) => m.kernel(),
        None => Subspace::full(field, cols),
    }
}

/// `{r : r·s = 0 = s·r for all s ∈ S}`.
pub fn annihilator(a: &Algebra, s: &Subspace) -> Subspace {
    let blocks = s
        .basis_vectors()
        .into_iter()
        .flat_map(|v| [a.right_mult_matrix(&v), a.left_mult_matrix(&v)]);
    stacked_kernel(a.field(), a.dim(), blocks)
}

/// ann(A).
pub fn annihilator_full(a: &Algebra) -> Subspace {
    annihilator(a, &a.full_space())
}

/// `{x : [x, b] = 0 for all b}`, the kernel of all right multiplications.
pub fn center_lie(g: &Algebra) -> Subspace {
    let blocks = (0..g.dim()).map(|i| g.right_mult_matrix(g.basis(i).coords()));
    stacked_kernel(g.field(), g.dim(), blocks)
}

/// Left-normed power `S^k`: `S^1 = S`, `S^{k+1} = S^k · S`.
pub fn subspace_power(a: &Algebra, s: &Subspace, k: usize) -> Subspace {
    assert!(k >= 1, "powers start at 1");
    let mut p = s.clone();
    for _ in 1..k {
        if p.is_zero() {
            break;
        }
        p = a.product_space(&p, s);
    }
    p
}

/// `A^k` with left-normed products.
pub fn power_ideal(a: &Algebra, k: usize) -> Subspace {
    subspace_power(a, &a.full_space(), k)
}

/// Least `k` with `S^k = 0`, searching up to `dim + 1`.
pub fn nilpotency_of(a: &Algebra, s: &Subspace) -> Option<usize> {
    let mut p = s.clone();
    for k in 1..=a.dim() + 1 {
        if p.is_zero() {
            return Some(k);
        }
        p = a.product_space(&p, s);
    }
    None
}

/// `g = g_1 ⊇ g_2 = [g_1, g] ⊇ ...` until it stabilises.
pub fn lower_central(g: &Algebra) -> Vec<Subspace> {
    let full = g.full_space();
    let mut series = vec![full.clone()];
    loop {
        let next = g.product_space(series.last().expect("nonempty"), &full);
        if &next == series.last().expect("nonempty") {
            return series;
        }
        let done = next.is_zero();
        series.push(next);
        if done {
            return series;
        }
    }
}

/// `g ⊇ [g, g] ⊇ [[g, g], [g, g]] ⊇ ...` until it stabilises.
pub fn derived_series(g: &Algebra) -> Vec<Subspace> {
    let mut series = vec![g.full_space()];
    loop {
        let last = series.last().expect("nonempty");
        let next = g.product_space(last, last);
        if &next == last {
            return series;
        }
        let done = next.is_zero();
        series.push(next);
        if done {
            return series;
        }
    }
}

/// Matrix of `r ↦ r·s` (`left = true`) or `r ↦ s·r` as a map `R → M`.
fn action_on(t: &TriangularParts, s: &[Scalar], left: bool) -> Matrix {
    let f = t.field();
    let cols: Vec<Vec<Scalar>> = (0..t.ring_dim())
        .map(|i| {
            let r = unit_vector(f, t.ring_dim(), i);
            if left {
                t.action.act_left(&r, s)
            } else {
                t.action.act_right(s, &r)
            }
        })
        .collect();
    Matrix::from_columns(f, t.module_dim(), &cols)
}

/// Matrix of `m ↦ r·m` (`left = true`) or `m ↦ m·r` as a map `M → M`.
fn action_by(t: &TriangularParts, r: &[Scalar], left: bool) -> Matrix {
    let f = t.field();
    let cols: Vec<Vec<Scalar>> = (0..t.module_dim())
        .map(|j| {
            let m = unit_vector(f, t.module_dim(), j);
            if left {
                t.action.act_left(r, &m)
            } else {
                t.action.act_right(&m, r)
            }
        })
        .collect();
    Matrix::from_columns(f, t.module_dim(), &cols)
}

/// `ann_R(S) = {r : r·s = 0 = s·r for s ∈ S}` for `S ⊆ M`.
pub fn ring_annihilator_of(t: &TriangularParts, s: &Subspace) -> Subspace {
    let blocks = s
        .basis_vectors()
        .into_iter()
        .flat_map(|v| [action_on(t, &v, true), action_on(t, &v, false)]);
    stacked_kernel(t.field(), t.ring_dim(), blocks)
}

/// `ann_M(R) = {m : r·m = 0 = m·r for all r}`.
pub fn module_annihilator_of_ring(t: &TriangularParts) -> Subspace {
    let f = t.field();
    let blocks = (0..t.ring_dim()).flat_map(|i| {
        let r = unit_vector(f, t.ring_dim(), i);
        [action_by(t, &r, true), action_by(t, &r, false)]
    });
    stacked_kernel(f, t.module_dim(), blocks)
}

/// The annihilators of a triangular ring's parts, each in its own part's coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossAnnihilators {
    /// ann(R) ⊆ R.
    pub ann_r: Subspace,
    /// ann_R(M) ⊆ R.
    pub ann_r_m: Subspace,
    /// ann_M(R) ⊆ M.
    pub ann_m_r: Subspace,
    /// ann_R(ann(M)) ⊆ R.
    pub ann_r_ann_m: Subspace,
    /// ann(M) ⊆ M.
    pub ann_m: Subspace,
}

pub fn cross_annihilators(c: &Construction) -> Result<CrossAnnihilators> {
    let t = c.require_triangular()?;
    let ann_m = annihilator_full(&t.module);
    Ok(CrossAnnihilators {
        ann_r: annihilator_full(&t.ring),
        ann_r_m: ring_annihilator_of(t, &t.module.full_space()),
        ann_m_r: module_annihilator_of_ring(t),
        ann_r_ann_m: ring_annihilator_of(t, &ann_m),
        ann_m,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangularAnnihilatorReport {
    /// ann(R) = ann_R(M) = ann_R(ann(M)).
    pub hypothesis_holds: bool,
    pub parts: CrossAnnihilators,
    /// ann(R) × (ann(M) ∩ ann_M(R)).
    pub formula: Subspace,
    pub brute_force: Subspace,
    /// Whether the two sides agree, asserted only when the hypothesis holds.
    pub sides_equal: bool,
}

impl TriangularAnnihilatorReport {
    /// False only when the hypothesis holds and the sides differ.
    pub fn consistent(&self) -> bool {
        !self.hypothesis_holds || self.sides_equal
    }
}

pub fn check_triangular_annihilator(c: &Construction) -> Result<TriangularAnnihilatorReport> {
    let t = c.require_triangular()?;
    let parts = cross_annihilators(c)?;
    let hypothesis_holds = parts.ann_r == parts.ann_r_m && parts.ann_r_m == parts.ann_r_ann_m;
    let module_side = parts.ann_m.intersect(&parts.ann_m_r)?;
    let formula = parts.ann_r.product(&module_side);
    let brute_force = annihilator_full(&c.algebra);
    let sides_equal = formula == brute_force;
    debug_assert_eq!(formula.ambient_dim(), t.total_dim());
    Ok(TriangularAnnihilatorReport {
        hypothesis_holds,
        parts,
        formula,
        brute_force,
        sides_equal,
    })
}

/// Stacked `x ↦ (a_1·x, x·a_1, ..., a_s·x, x·a_s)` over a family.
fn multiplication_stack(a: &Algebra, family: &[Vec<Scalar>], left: bool, right: bool) -> Vec<Matrix> {
    family
        .iter()
        .flat_map(|v| {
            let mut out = Vec::new();
            if left {
                out.push(a.left_mult_matrix(v));
            }
            if right {
                out.push(a.right_mult_matrix(v));
            }
            out
        })
        .collect()
}

fn stack(field: &FieldSpec, cols: usize, blocks: &[Matrix]) -> Matrix {
    blocks
        .iter()
        .cloned()
        .reduce(|a, b| a.vstack(&b))
        .unwrap_or_else(|| Matrix::zeros(field, 0, cols))
}

/// Sum of the images of `blocks` restricted to `domain`.
fn images_on(field: &FieldSpec, n: usize, blocks: &[Matrix], domain: &Subspace) -> Subspace {
    blocks.iter().fold(Subspace::zero(field, n), |acc, m| {
        acc.sum(&domain.image(m)).expect("same ambient")
    })
}

/// Kernel of the stacked maps restricted to `domain`.
fn kernel_on(field: &FieldSpec, n: usize, blocks: &[Matrix], domain: &Subspace) -> Subspace {
    let k = stack(field, n, blocks).kernel();
    k.intersect(domain).expect("same ambient")
}

/// The two-step chain `Λ ⊇ Λ₁ ⊇ ann(Λ)` of a triangular ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub hypothesis_holds: bool,
    /// `b_j = (0, m_j)` for the stored basis `m_j` of ann(M).
    pub f1_family: Vec<Element>,
    /// kernel of f₁.
    pub lambda1: Subspace,
    /// ann_Λ({0} × ann(M)) computed directly.
    pub lambda1_direct: Subspace,
    /// ann_R(ann(M)) × M.
    pub lambda1_formula: Subspace,
    /// Sum of the images of the maps making up f₁.
    pub f1_image: Subspace,
    /// The basis of Λ, used as the family `a_j` with ann(Λ) = ∩ ann(a_j).
    pub f2_family_size: usize,
    /// kernel of f₂ on Λ₁.
    pub ann_lambda: Subspace,
    pub ann_lambda_direct: Subspace,
    pub f2_image: Subspace,
    /// `{0} × M`.
    pub module: Subspace,
}

impl ChainReport {
    pub fn kernel_identities_hold(&self) -> bool {
        self.lambda1 == self.lambda1_direct && self.ann_lambda == self.ann_lambda_direct
    }

    pub fn images_in_module(&self) -> bool {
        self.module.contains_subspace(&self.f1_image).unwrap_or(false)
            && self.module.contains_subspace(&self.f2_image).unwrap_or(false)
    }

    pub fn lambda1_matches_formula(&self) -> bool {
        self.lambda1 == self.lambda1_formula
    }
}

pub fn analysis_chain(c: &Construction) -> Result<ChainReport> {
    let t = c.require_triangular()?;
    let a = &c.algebra;
    let f = a.field();
    let n = a.dim();
    let parts = cross_annihilators(c)?;
    let hypothesis_holds = parts.ann_r == parts.ann_r_m && parts.ann_r_m == parts.ann_r_ann_m;
    let module = t.module_subspace(&t.module.full_space());

    let family: Vec<Vec<Scalar>> = parts.ann_m.basis_vectors().iter().map(|m| t.embed_module(m)).collect();
    let f1 = multiplication_stack(a, &family, true, true);
    let full = a.full_space();
    let lambda1 = kernel_on(f, n, &f1, &full);
    let embedded_ann_m = t.module_subspace(&parts.ann_m);
    let lambda1_direct = annihilator(a, &embedded_ann_m);
    let lambda1_formula = parts.ann_r_ann_m.product(&t.module.full_space());
    let f1_image = images_on(f, n, &f1, &full);

    let basis: Vec<Vec<Scalar>> = (0..n).map(|i| unit_vector(f, n, i)).collect();
    let f2 = multiplication_stack(a, &basis, true, true);
    let ann_lambda = kernel_on(f, n, &f2, &lambda1);
    let ann_lambda_direct = annihilator_full(a);
    let f2_image = images_on(f, n, &f2, &lambda1);

    Ok(ChainReport {
        hypothesis_holds,
        f1_family: family.into_iter().map(Element::new).collect(),
        lambda1,
        lambda1_direct,
        lambda1_formula,
        f1_image,
        f2_family_size: basis.len(),
        ann_lambda,
        ann_lambda_direct,
        f2_image,
        module,
    })
}

/// Whether `z` alone detects the center: `C(z) = z(B)` and `[z, B] = z(B)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingleZ {
    pub name: String,
    pub centralizer_is_center: bool,
    pub bracket_is_center: bool,
}

/// The chain `S ⊇ S₁ ⊇ S₂ = ann(S)` for `S = S(B ⋉ B⁺)`.
///
/// Coordinates of `S = g × g` with `g = B × B⁺` are `((x1, x2), (x3, x4))`.
/// f₁ multiplies by `((0, z), (0, 0))` and `((0, 0), (0, z))`, f₂ by
/// `((z, 0), (0, 0))` and `((0, 0), (z, 0))`, for every `z` in the family of
/// non-central basis elements of `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SChainReport {
    pub s_dim: usize,
    pub z_family: Vec<String>,
    pub single_z: Vec<SingleZ>,
    pub s1: Subspace,
    /// (z(B) × B) × (z(B) × B).
    pub s1_formula: Subspace,
    pub f1_image: Subspace,
    /// `𝒜 = ((0, 0), (0, z(B)))`.
    pub target: Subspace,
    pub s2: Subspace,
    pub ann_s: Subspace,
    /// z(g) × z(g).
    pub ann_formula: Subspace,
    pub f2_image: Subspace,
}

impl SChainReport {
    pub fn identities_hold(&self) -> bool {
        self.s1 == self.s1_formula
            && self.s2 == self.ann_s
            && self.ann_s == self.ann_formula
            && self.target.contains_subspace(&self.f1_image).unwrap_or(false)
            && self.target.contains_subspace(&self.f2_image).unwrap_or(false)
    }

    pub fn images_equal_target(&self) -> bool {
        self.f1_image == self.target && self.f2_image == self.target
    }
}

/// Builds `S(B ⋉ B⁺)` for a 2-step nilpotent `B` and computes its chain.
pub fn s_analysis_chain(b: &Algebra) -> Result<(Construction, SChainReport)> {
    let g = semidirect_double(b)?;
    let s = s_of(&g.algebra)?;
    let report = s_chain_report(b, &s.algebra)?;
    Ok((s, report))
}

fn s_chain_report(b: &Algebra, s: &Algebra) -> Result<SChainReport> {
    let f = b.field();
    let n = b.dim();
    if s.dim() != 4 * n {
        return Err(Error::Dimension {
            expected: 4 * n,
            found: s.dim(),
        });
    }
    let zb = center_lie(b);
    let family: Vec<usize> = (0..n).filter(|&i| !zb.contains(b.basis(i).coords())).collect();
    if family.is_empty() {
        return Err(Error::precondition("B is abelian; no non-central z exists"));
    }
    let single_z = family
        .iter()
        .map(|&z| {
            let ad = b.right_mult_matrix(b.basis(z).coords());
            SingleZ {
                name: b.names()[z].clone(),
                centralizer_is_center: ad.kernel() == zb,
                bracket_is_center: b.full_space().image(&ad) == zb,
            }
        })
        .collect();
    let at = |offset: usize, z: usize| unit_vector(f, 4 * n, offset + z);
    let f1_family: Vec<Vec<Scalar>> = family.iter().flat_map(|&z| [at(n, z), at(3 * n, z)]).collect();
    let f2_family: Vec<Vec<Scalar>> = family.iter().flat_map(|&z| [at(0, z), at(2 * n, z)]).collect();
    // S is commutative, so right multiplication suffices.
    let f1 = multiplication_stack(s, &f1_family, false, true);
    let f2 = multiplication_stack(s, &f2_family, false, true);
    let full = s.full_space();
    let s1 = kernel_on(f, 4 * n, &f1, &full);
    let s2 = kernel_on(f, 4 * n, &f2, &s1);
    let whole_b = b.full_space();
    let zg = zb.product(&zb);
    let s1_formula = zb.product(&whole_b).product(&zb.product(&whole_b));
    let zero_b = Subspace::zero(f, n);
    let target = zero_b.product(&zero_b).product(&zero_b.product(&zb));
    Ok(SChainReport {
        s_dim: 4 * n,
        z_family: family.iter().map(|&i| b.names()[i].clone()).collect(),
        single_z,
        f1_image: images_on(f, 4 * n, &f1, &full),
        f2_image: images_on(f, 4 * n, &f2, &s1),
        s1,
        s1_formula,
        target,
        s2,
        ann_s: annihilator_full(s),
        ann_formula: zg.product(&zg),
        })
}
