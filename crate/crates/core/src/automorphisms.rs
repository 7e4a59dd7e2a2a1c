//! Automorphisms lifted from derivations and from maps on a maximal ideal,
//! orbit analysis of cosets, and the witness procedures assembling them.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{verify_automorphism, AdditiveMap, Algebra, Element};
use crate::constructions::{
    field_algebra, heisenberg, local_sum, s_of, semidirect_double, trivial_mult, triangular, BilinearAction,
    Construction, CENTER, MAXIMAL_IDEAL, SPLIT,
};
use crate::derivations::{derivation_matrix, derivation_space, hat_map, scalar_to_delta};
use crate::error::{Error, Result};
use crate::exactmath::{unit_vector, FieldSpec, Matrix, Scalar, Subspace};
use crate::invariants::{annihilator, annihilator_full, center_lie, subspace_power};

fn hypothesis(clause: &str, detail: impl Into<String>) -> Error {
    Error::hypothesis(clause, detail)
}

/// Whether `σ(v) = v` for every `v ∈ S`. Over a field with a derivation the
/// check also covers `g·v` for the generator `g`, which pins down `D·v = 0`.
pub fn fixes_pointwise(sigma: &AdditiveMap, s: &Subspace) -> bool {
    let f = s.field();
    let g = f.generator().filter(|_| f.has_derivation());
    s.basis_vectors().iter().all(|v| {
        sigma.apply(v) == *v
            && g.as_ref().is_none_or(|g| {
                let gv: Vec<Scalar> = v.iter().map(|x| f.mul(g, x)).collect();
                sigma.apply(&gv) == gv
            })
    })
}

fn image_columns(m: &AdditiveMap) -> Vec<Vec<Scalar>> {
    let mut cols = m.linear_part().columns();
    if let Some(d) = m.derivative_part() {
        cols.extend(d.columns());
    }
    cols
}

/// `σ(r, m) = (r, m + δ(r))` for an additive `δ: R → ann(M)` satisfying
/// `δ(rr') = r·δ(r') + δ(r)·r'`.
pub fn lift_aut_triangular(c: &Construction, delta: &AdditiveMap) -> Result<AdditiveMap> {
    let t = c.require_triangular()?;
    let f = t.field();
    let (rd, md) = (t.ring_dim(), t.module_dim());
    if delta.rows() != md || delta.cols() != rd {
        return Err(Error::Dimension {
            expected: md * rd,
            found: delta.rows() * delta.cols(),
        });
    }
    let ann_m = annihilator_full(&t.module);
    for col in image_columns(delta) {
        if !ann_m.contains(&col) {
            return Err(hypothesis("image of delta in ann(M)", "delta has a value outside ann(M)"));
        }
    }
    if !delta.is_linear() && !c.algebra.has_constant_structure() {
        return Err(hypothesis(
            "constant structure constants",
            "a non-linear delta needs derivation-constant structure constants",
        ));
    }
    let l = delta.linear_part();
    let d = delta.derivative_part();
    let lcols = l.columns();
    let dcols = d.map(Matrix::columns);
    let names = t.ring.names();
    for i in 0..rd {
        for j in 0..rd {
            let ri = unit_vector(f, rd, i);
            let rj = unit_vector(f, rd, j);
            let prod = t.ring.basis_product(i, j);
            let fail = || {
                hypothesis(
                    "derivation rule",
                    format!("delta({} * {}) differs from the Leibniz expansion", names[i], names[j]),
                )
            };
            let lhs = l.mul_vec(prod.coords());
            let left = t.action.act_left(&ri, &lcols[j]);
            let right = t.action.act_right(&lcols[i], &rj);
            let rhs: Vec<Scalar> = left.iter().zip(&right).map(|(a, b)| f.add(a, b)).collect();
            if lhs != rhs {
                return Err(fail());
            }
            if let (Some(d), Some(dcols)) = (d, &dcols) {
                let lhs = d.mul_vec(prod.coords());
                if lhs != t.action.act_right(&dcols[i], &rj) || lhs != t.action.act_left(&ri, &dcols[j]) {
                    return Err(fail());
                }
            }
        }
    }
    let n = rd + md;
    let block = |m: &Matrix| {
        let mut out = Matrix::zeros(f, n, n);
        for r in 0..md {
            for col in 0..rd {
                out.set(rd + r, col, m.get(r, col).clone());
            }
        }
        out
    };
    let linear = Matrix::identity(f, n).add(&block(l));
    let derivative = d.map_or_else(|| Matrix::zeros(f, n, n), block);
    Ok(AdditiveMap::differential(linear, derivative))
}

/// `R = split ⊕ m` data of a local-tagged construction, with `m`-coordinates
/// taken in the stored basis of `m`.
#[derive(Debug, Clone)]
pub struct LocalData {
    pub m: Subspace,
    pub split: Subspace,
    /// ann(m) ⊆ m, in m-coordinates.
    pub ann: Subspace,
    /// m², in m-coordinates.
    pub m2: Subspace,
    /// Columns: split basis then m basis, in R-coordinates.
    pub frame: Matrix,
    frame_inv: Matrix,
}

impl LocalData {
    pub fn new(c: &Construction) -> Result<Self> {
        let a = &c.algebra;
        let f = a.field();
        let m = c.require_subspace(MAXIMAL_IDEAL)?.clone();
        let split = c.require_subspace(SPLIT)?.clone();
        let mut cols = split.basis_vectors();
        cols.extend(m.basis_vectors());
        let frame = Matrix::from_columns(f, a.dim(), &cols);
        let frame_inv = frame
            .inverse()
            .ok_or_else(|| Error::precondition("split and maximal ideal do not span the ring"))?;
        let to_m = |s: &Subspace| {
            Subspace::span(
                f,
                m.dim(),
                s.basis_vectors().iter().map(|v| m.coordinates(v).expect("inside m")),
            )
        };
        let ann_r = annihilator(a, &m).intersect(&m)?;
        let m2 = subspace_power(a, &m, 2);
        Ok(LocalData {
            ann: to_m(&ann_r),
            m2: to_m(&m2),
            m,
            split,
            frame,
            frame_inv,
        })
    }

    pub fn m_dim(&self) -> usize {
        self.m.dim()
    }

    /// `(split coordinates, m coordinates)` of an element of R.
    pub fn decompose(&self, x: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let c = self.frame_inv.mul_vec(x);
        let s = self.split.dim();
        (c[..s].to_vec(), c[s..].to_vec())
    }

    /// R-coordinates of an element of m given in m-coordinates.
    pub fn from_m(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.m.combine(v)
    }

    /// Matrix of `π: m → m/ann(m)` in quotient coordinates.
    pub fn quotient_matrix(&self) -> Matrix {
        let f = self.m.field();
        let d = self.m_dim();
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| self.ann.quotient_coordinates(&unit_vector(f, d, j)))
            .collect();
        Matrix::from_columns(f, d - self.ann.dim(), &cols)
    }

    /// Matrix of the inclusion `ann(m) → m` from ann-coordinates.
    pub fn ann_inclusion(&self) -> Matrix {
        self.ann.basis().transpose()
    }
}

/// `σ(α + a) = α + g(a)` for a linear bijection `g` of m with `g − id`
/// valued in ann(m) and `g = id` on m².
pub fn lift_aut_local_g(c: &Construction, g: &Matrix) -> Result<AdditiveMap> {
    let ld = LocalData::new(c)?;
    lift_local_with(c, &ld, g)
}

fn lift_local_with(c: &Construction, ld: &LocalData, g: &Matrix) -> Result<AdditiveMap> {
    let f = c.algebra.field();
    let d = ld.m_dim();
    if g.rows() != d || g.cols() != d {
        return Err(Error::Dimension {
            expected: d,
            found: g.rows(),
        });
    }
    if !g.is_invertible() {
        return Err(hypothesis("g bijective", "g is singular on m"));
    }
    let diff = g.sub(&Matrix::identity(f, d));
    for (j, col) in diff.columns().into_iter().enumerate() {
        if !ld.ann.contains(&col) {
            return Err(hypothesis(
                "g - id maps m into ann(m)",
                format!("g(m_{}) - m_{} lies outside ann(m)", j + 1, j + 1),
            ));
        }
    }
    for v in ld.m2.basis_vectors() {
        if g.mul_vec(&v) != v {
            return Err(hypothesis("g is the identity on m^2", "g moves an element of m^2"));
        }
    }
    let s = ld.split.dim();
    let n = c.algebra.dim();
    let mut block = Matrix::identity(f, n);
    for r in 0..d {
        for col in 0..d {
            block.set(s + r, s + col, g.get(r, col).clone());
        }
    }
    let sigma = AdditiveMap::linear(ld.frame.mul(&block).mul(&ld.frame_inv));
    if !verify_automorphism(&c.algebra, &sigma) {
        return Err(Error::InvalidAlgebra("lifted map is not an automorphism".into()));
    }
    Ok(sigma)
}

/// `g = id + ι∘f∘π` on m for `f: m/ann(m) → ann(m)`.
pub fn local_f_to_g(c: &Construction, f: &Matrix) -> Result<Matrix> {
    let ld = LocalData::new(c)?;
    g_from_f(&ld, f)
}

fn g_from_f(ld: &LocalData, f: &Matrix) -> Result<Matrix> {
    let d = ld.m_dim();
    let a = ld.ann.dim();
    if f.rows() != a || f.cols() != d - a {
        return Err(Error::Dimension {
            expected: a * (d - a),
            found: f.rows() * f.cols(),
        });
    }
    let pi = ld.quotient_matrix();
    let w = ld.m2.sum(&ld.ann)?;
    for v in w.basis_vectors() {
        if f.mul_vec(&pi.mul_vec(&v)).iter().any(|x| !f.field().is_zero(x)) {
            return Err(hypothesis(
                "f vanishes on (m^2 + ann(m))/ann(m)",
                "f is nonzero on the image of m^2",
            ));
        }
    }
    let field = f.field();
    Ok(Matrix::identity(field, d).add(&ld.ann_inclusion().mul(f).mul(&pi)))
}

/// `σ(α + a) = α + a + f(a + ann(m))` for `f` vanishing on `(m² + ann(m))/ann(m)`.
pub fn lift_aut_local_f(c: &Construction, f: &Matrix) -> Result<AdditiveMap> {
    let ld = LocalData::new(c)?;
    let g = g_from_f(&ld, f)?;
    lift_local_with(c, &ld, &g)
}

/// An automorphism of the moving family together with the shift it applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MovingAutomorphism {
    /// The element of ann(m), in R-coordinates, added to `a`.
    pub shift: Element,
    pub sigma: AdditiveMap,
}

/// For each `b ∈ ann(m)` an automorphism `σ_b` with `σ_b(a) = a + b`,
/// built from `f_b: m/ann(m) → ann(m)` sending `a + ann(m)` to `b`.
pub fn moving_family(c: &Construction, a: &Element) -> Result<Vec<MovingAutomorphism>> {
    let ld = LocalData::new(c)?;
    let field = c.algebra.field();
    let (_, am) = ld.decompose(a.coords());
    let pi = ld.quotient_matrix();
    let q = pi.rows();
    let abar = pi.mul_vec(&am);
    let w = ld.m2.sum(&ld.ann)?.image(&pi);
    if w.contains(&abar) {
        return Err(hypothesis(
            "a outside m^2 + ann(m)",
            "a + ann(m) lies in the image of m^2",
        ));
    }
    let mut cols = w.basis_vectors();
    cols.push(abar.clone());
    let spanned = Subspace::span(field, q, cols.clone());
    cols.extend(spanned.complement_indices().into_iter().map(|i| unit_vector(field, q, i)));
    let frame_inv = Matrix::from_columns(field, q, &cols).inverse().expect("completed basis");
    let pos = w.dim();
    let shifts = ld.ann.elements()?;
    shifts
        .into_iter()
        .map(|b_m| {
            let b_ann = ld.ann.coordinates(&b_m).expect("inside ann");
            let mut target = vec![vec![field.zero(); ld.ann.dim()]; q];
            target[pos] = b_ann;
            let t = Matrix::from_columns(field, ld.ann.dim(), &target);
            let f = t.mul(&frame_inv);
            let sigma = lift_aut_local_f(c, &f)?;
            Ok(MovingAutomorphism {
                shift: Element::new(ld.from_m(&b_m)),
                sigma,
            })
        })
        .collect()
}

/// Extends partial data to an automorphism fixing `fixed` and sending each
/// `b` to `b'`: a basis of ⟨m², fixed⟩, then the `b` independent over it,
/// then ann(m), then a completion; `g − id` is the prescribed difference on
/// the chosen `b` and zero on the rest. `None` when the data is inconsistent.
pub fn build_fixing_automorphism(
    c: &Construction,
    fixed: &[Element],
    pairs: &[(Element, Element)],
) -> Result<Option<AdditiveMap>> {
    let ld = LocalData::new(c)?;
    let a = &c.algebra;
    let field = a.field();
    let d = ld.m_dim();
    let ann_r = ld.ann.basis_vectors();
    let mut diffs = Vec::new();
    let mut sources = Vec::new();
    for (i, (b, b2)) in pairs.iter().enumerate() {
        let diff = a.sub(b2, b);
        let (split, dm) = ld.decompose(diff.coords());
        if split.iter().any(|x| !field.is_zero(x)) || !ld.ann.contains(&dm) {
            return Err(hypothesis("b' - b in ann(m)", format!("pair {} differs outside ann(m)", i + 1)));
        }
        diffs.push(dm);
        sources.push(ld.decompose(b.coords()).1);
    }
    let fixed_m: Vec<Vec<Scalar>> = fixed.iter().map(|e| ld.decompose(e.coords()).1).collect();
    let base = ld.m2.sum(&Subspace::span(field, d, fixed_m))?;
    let mut cols = base.basis_vectors();
    let mut targets = vec![vec![field.zero(); d]; cols.len()];
    let mut current = base.clone();
    for (u, dm) in sources.iter().zip(&diffs) {
        if !current.contains(u) {
            cols.push(u.clone());
            targets.push(dm.clone());
            current = current.sum(&Subspace::span(field, d, [u.clone()]))?;
        }
    }
    for v in ann_r {
        if !current.contains(&v) {
            cols.push(v.clone());
            targets.push(vec![field.zero(); d]);
            current = current.sum(&Subspace::span(field, d, [v]))?;
        }
    }
    for i in current.complement_indices() {
        cols.push(unit_vector(field, d, i));
        targets.push(vec![field.zero(); d]);
    }
    let frame = Matrix::from_columns(field, d, &cols);
    let h = Matrix::from_columns(field, d, &targets).mul(&frame.inverse().expect("completed basis"));
    for (u, dm) in sources.iter().zip(&diffs) {
        if h.mul_vec(u) != *dm {
            return Ok(None);
        }
    }
    let g = Matrix::identity(field, d).add(&h);
    match lift_local_with(c, &ld, &g) {
        Ok(sigma) => Ok(Some(sigma)),
        Err(Error::Hypothesis { clause, .. }) if clause == "g bijective" => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub base: Element,
    pub modulo: Subspace,
    /// `σ⁰(a), ..., σᴺ(a)`.
    pub iterates: Vec<Element>,
    pub distinct_cosets: usize,
    /// Least `k ≥ 1` with `σᵏ(a) ≡ a`, if seen within the bound.
    pub period: Option<usize>,
}

/// Iterates `σ` on `a` and counts distinct cosets modulo a subspace.
pub fn orbit(algebra: &Algebra, sigma: &AdditiveMap, a: &Element, modulo: &Subspace, n: usize) -> Result<OrbitReport> {
    if !verify_automorphism(algebra, sigma) {
        return Err(Error::precondition("map is not an automorphism"));
    }
    if a.len() != algebra.dim() || modulo.ambient_dim() != algebra.dim() {
        return Err(Error::Dimension {
            expected: algebra.dim(),
            found: a.len(),
        });
    }
    let mut iterates = vec![a.clone()];
    for _ in 0..n {
        let next = sigma.apply_element(iterates.last().expect("nonempty"));
        iterates.push(next);
    }
    let reps: Vec<Vec<Scalar>> = iterates.iter().map(|x| modulo.reduce(x.coords())).collect();
    let distinct_cosets = reps.iter().collect::<HashSet<_>>().len();
    let period = (1..reps.len()).find(|&k| reps[k] == reps[0]);
    Ok(OrbitReport {
        base: a.clone(),
        modulo: modulo.clone(),
        iterates,
        distinct_cosets,
        period,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Vector,
    Lie,
    SRing,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::Vector => "vector",
            WitnessKind::Lie => "lie",
            WitnessKind::SRing => "s_ring",
        }
    }
}

#[derive(Debug, Clone)]
pub struct WitnessParams {
    /// Orbit bound N.
    pub n: usize,
    /// Dimension of V for the vector kind.
    pub dim: usize,
    /// Heisenberg parameter for the Lie and S-ring kinds.
    pub heisenberg_n: usize,
    pub seed: u64,
    /// Elements (in the construction's coordinates) the automorphism must fix;
    /// their coordinates must be derivation constants.
    pub fixed: Vec<Vec<Scalar>>,
}

impl Default for WitnessParams {
    fn default() -> Self {
        WitnessParams {
            n: 50,
            dim: 2,
            heisenberg_n: 1,
            seed: 0,
            fixed: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Claim {
    pub fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        Claim {
            name: name.into(),
            holds,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub kind: WitnessKind,
    pub field: String,
    pub characteristic: u64,
    pub bound: usize,
    pub construction_dim: usize,
    pub base: String,
    pub modulo_dim: usize,
    pub claims: Vec<Claim>,
    pub distinct_cosets: usize,
    pub period: Option<usize>,
    /// The outcome the characteristic predicts.
    pub expected: String,
    pub holds: bool,
}

/// Field for a witness: `Q(t)` / `GF(p)(t)` for the derivation kinds,
/// `Q` / `GF(p)` for the S-ring kind.
pub fn witness_field(kind: WitnessKind, characteristic: u64) -> Result<FieldSpec> {
    match (kind, characteristic) {
        (WitnessKind::SRing, 0) => Ok(FieldSpec::rationals()),
        (WitnessKind::SRing, p) => FieldSpec::prime(p),
        (_, 0) => Ok(FieldSpec::rational_functions_q()),
        (_, p) => FieldSpec::rational_functions_fp(p),
    }
}

fn expectation(p: u64, n: usize, orbit: &OrbitReport) -> (String, bool) {
    if p == 0 {
        (
            format!("{} distinct cosets", n + 1),
            orbit.distinct_cosets == n + 1 && orbit.period.is_none(),
        )
    } else if (p as usize) <= n {
        (
            format!("period {p} with {p} distinct cosets"),
            orbit.period == Some(p as usize) && orbit.distinct_cosets == p as usize,
        )
    } else {
        (
            format!("{} distinct cosets below the period {p}", n + 1),
            orbit.distinct_cosets == n + 1,
        )
    }
}

fn fixed_claims(field: &FieldSpec, sigma: &AdditiveMap, fixed: &[Vec<Scalar>], dim: usize) -> Result<Vec<Claim>> {
    let mut claims = Vec::new();
    for (i, v) in fixed.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: v.len(),
            });
        }
        if !v.iter().all(|x| field.is_constant(x)) {
            return Err(hypothesis(
                "constant parameters",
                format!("parameter {} has non-constant coordinates", i + 1),
            ));
        }
        claims.push(Claim::new(
            "fixes parameter",
            sigma.apply(v) == *v,
            format!("parameter {}", i + 1),
        ));
    }
    Ok(claims)
}

pub fn witness(kind: WitnessKind, characteristic: u64, params: &WitnessParams) -> Result<WitnessReport> {
    let field = witness_field(kind, characteristic)?;
    match kind {
        WitnessKind::Vector => vector_witness(&field, params),
        WitnessKind::Lie => lie_witness(&field, params),
        WitnessKind::SRing => s_ring_witness(&field, params),
    }
}

fn vector_witness(f: &FieldSpec, params: &WitnessParams) -> Result<WitnessReport> {
    if params.dim == 0 {
        return Err(Error::precondition("V needs dimension at least 1"));
    }
    let v = trivial_mult(f, params.dim).algebra;
    let lam = triangular(&field_algebra(f), &v, &BilinearAction::scalar(f, params.dim))?;
    let a = &lam.algebra;
    let x0 = Element::new(unit_vector(f, params.dim, 0));
    let delta = scalar_to_delta(&lam, &x0)?;
    let sigma = lift_aut_triangular(&lam, &delta)?;
    let t = lam.triangular.as_ref().expect("triangular");
    let mut claims = vec![
        Claim::new("automorphism", verify_automorphism(a, &sigma), "σ(r, m) = (r, m + ∂r·v1)"),
        Claim::new(
            "fixes {0} x M",
            fixes_pointwise(&sigma, &t.module_subspace(&v.full_space())),
            "module part fixed pointwise",
        ),
    ];
    let unit = a.find_unit();
    claims.push(Claim::new(
        "fixes 1",
        unit.as_ref().is_some_and(|u| sigma.apply_element(u) == *u),
        "unit (1, 0)",
    ));
    claims.extend(fixed_claims(f, &sigma, &params.fixed, a.dim())?);
    let base = Element::new(t.embed_ring(&[f.generator().expect("t")]));
    let modulo = annihilator_full(a);
    let orb = orbit(a, &sigma, &base, &modulo, params.n)?;
    finish(WitnessKind::Vector, f, params.n, a, &base, &modulo, claims, orb)
}

/// Candidates for `b` with `δ̂(b) ∉ z(g)`: basis elements, pairwise sums,
/// `t` times basis elements, then random `t`-linear combinations.
fn claim_one_candidates(g: &Algebra, seed: u64) -> Vec<Vec<Scalar>> {
    let f = g.field();
    let n = g.dim();
    let mut out: Vec<Vec<Scalar>> = (0..n).map(|i| unit_vector(f, n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit_vector(f, n, i);
            v[j] = f.one();
            out.push(v);
        }
    }
    let t = f.generator().unwrap_or_else(|| f.one());
    for i in 0..n {
        let mut v = vec![f.zero(); n];
        v[i] = t.clone();
        out.push(v);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        out.push(
            (0..n)
                .map(|_| {
                    let c0 = f.from_int(rng.gen_range(-3..=3));
                    let c1 = f.from_int(rng.gen_range(-3..=3));
                    f.add(&c0, &f.mul(&c1, &t))
                })
                .collect(),
        );
    }
    out
}

fn lie_witness(f: &FieldSpec, params: &WitnessParams) -> Result<WitnessReport> {
    let h = heisenberg(f, params.heisenberg_n)?;
    let g = &h.algebra;
    let lam = semidirect_double(g)?;
    let a = &lam.algebra;
    let hat = hat_map(&h)?;
    let zg = center_lie(g);
    let b = claim_one_candidates(g, params.seed)
        .into_iter()
        .find(|b| !zg.contains(&hat.apply(b)))
        .ok_or_else(|| hypothesis("claim 1", "no element b with hat-lift outside z(g)"))?;
    let db = hat.apply(&b);
    let sigma = lift_aut_triangular(&lam, &hat)?;
    let t = lam.triangular.as_ref().expect("triangular");
    let mut claims = vec![
        Claim::new(
            "claim 1",
            true,
            format!("b = {}, hat-lift {} outside z(g)", g.format_element(&Element::new(b.clone())), g.format_element(&Element::new(db.clone()))),
        ),
        Claim::new("automorphism", verify_automorphism(a, &sigma), "σ(r, m) = (r, m + δ̂(r))"),
        Claim::new(
            "fixes {0} x M",
            fixes_pointwise(&sigma, &t.module_subspace(&g.full_space())),
            "module part fixed pointwise",
        ),
    ];
    let first_fail = (1..=params.n).find(|&k| zg.contains(&db.iter().map(|x| f.times(k as i64, x)).collect::<Vec<_>>()));
    claims.push(Claim::new(
        "claim 2",
        first_fail.is_none(),
        match first_fail {
            None => format!("k·δ̂(b) outside z(g) for k = 1..{}", params.n),
            Some(k) => format!("{k}·δ̂(b) lies in z(g)"),
        },
    ));
    claims.extend(fixed_claims(f, &sigma, &params.fixed, a.dim())?);
    let base = Element::new(t.embed_ring(&b));
    let modulo = lam.require_subspace(CENTER)?.clone();
    let orb = orbit(a, &sigma, &base, &modulo, params.n)?;
    finish(WitnessKind::Lie, f, params.n, a, &base, &modulo, claims, orb)
}

fn s_ring_witness(f: &FieldSpec, params: &WitnessParams) -> Result<WitnessReport> {
    let hb = heisenberg(f, params.heisenberg_n)?;
    let b = &hb.algebra;
    let nb = b.dim();
    let g = semidirect_double(b)?;
    let s = s_of(&g.algebra)?;
    let r = local_sum(f, &s.algebra)?;
    let ra = &r.algebra;
    let zb = center_lie(b);
    let der = derivation_space(b)?;
    let (d, ai) = der
        .basis_vectors()
        .iter()
        .map(|v| derivation_matrix(b, v))
        .find_map(|d| (0..nb).find(|&i| !zb.contains(&d.column(i))).map(|i| (d, i)))
        .ok_or_else(|| hypothesis("moving derivation", "every derivation maps into z(B)"))?;
    let sigma_g = lift_aut_triangular(&g, &AdditiveMap::linear(d))?;
    let gd = g.algebra.dim();
    let mut tau = Matrix::identity(f, ra.dim());
    let lin = sigma_g.linear_part();
    for copy in 0..2 {
        let off = 1 + copy * gd;
        for i in 0..gd {
            for j in 0..gd {
                tau.set(off + i, off + j, lin.get(i, j).clone());
            }
        }
    }
    let tau = AdditiveMap::linear(tau);
    let zero_b = Subspace::zero(f, nb);
    let target = zero_b.product(&zero_b).product(&zero_b.product(&zb)).embed(1, ra.dim());
    let ann_s = annihilator_full(&s.algebra);
    let mut claims = vec![
        Claim::new("lie automorphism", verify_automorphism(&g.algebra, &sigma_g), "σ on B ⋉ B⁺"),
        Claim::new("automorphism", verify_automorphism(ra, &tau), "τ(α + (c, d)) = α + (σc, σd)"),
        Claim::new("fixes target subgroup", fixes_pointwise(&tau, &target), "((0, 0), (0, z(B))) fixed"),
    ];
    claims.extend(fixed_claims(f, &tau, &params.fixed, ra.dim())?);
    let base = Element::new(unit_vector(f, ra.dim(), 1 + ai));
    let modulo = ann_s.embed(1, ra.dim());
    let orb = orbit(ra, &tau, &base, &modulo, params.n)?;
    finish(WitnessKind::SRing, f, params.n, ra, &base, &modulo, claims, orb)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    kind: WitnessKind,
    f: &FieldSpec,
    n: usize,
    a: &Algebra,
    base: &Element,
    modulo: &Subspace,
    mut claims: Vec<Claim>,
    orb: OrbitReport,
) -> Result<WitnessReport> {
    let p = f.characteristic();
    let (expected, ok) = expectation(p, n, &orb);
    claims.push(Claim::new(
        "orbit",
        ok,
        match orb.period {
            Some(k) => format!("{} distinct cosets, period {k}", orb.distinct_cosets),
            None => format!("{} distinct cosets, no return within N = {n}", orb.distinct_cosets),
        },
    ));
    // In characteristic p the second claim is expected to fail at k = p.
    let holds = claims.iter().all(|c| c.holds || (p != 0 && c.name == "claim 2"));
    Ok(WitnessReport {
        kind,
        field: f.to_string(),
        characteristic: p,
        bound: n,
        construction_dim: a.dim(),
        base: a.format_element(base),
        modulo_dim: modulo.dim(),
        claims,
        distinct_cosets: orb.distinct_cosets,
        period: orb.period,
        expected,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::truncated_poly;

    fn gf3_cubic() -> Construction {
        truncated_poly(&FieldSpec::prime(3).unwrap(), 3).unwrap()
    }

    #[test]
    fn local_g_and_f_agree() {
        let c = gf3_cubic();
        let f = c.algebra.field().clone();
        // m-coordinates (x, x^2); g(a x + b x^2) = a x + (a + b) x^2
        let g = Matrix::from_ints(&f, &[&[1, 0], &[1, 1]]);
        let s1 = lift_aut_local_g(&c, &g).unwrap();
        let x = c.algebra.basis(1);
        assert_eq!(s1.apply_element(&x), c.algebra.element_from_ints(&[0, 1, 1]));
        let fm = Matrix::from_ints(&f, &[&[1]]);
        let s2 = lift_aut_local_f(&c, &fm).unwrap();
        assert_eq!(s1, s2);
        let bad = Matrix::from_ints(&f, &[&[1, 0], &[0, 2]]);
        let err = lift_aut_local_g(&c, &bad).unwrap_err();
        assert!(err.to_string().contains("identity on m^2"), "{err}");
    }

    #[test]
    fn fixing_builder() {
        let c = gf3_cubic();
        let a = &c.algebra;
        let x = a.basis(1);
        let target = a.element_from_ints(&[0, 1, 1]);
        let s = build_fixing_automorphism(&c, &[], &[(x.clone(), target.clone())]).unwrap().unwrap();
        assert_eq!(s.apply_element(&x), target);
        let other = a.element_from_ints(&[0, 1, 2]);
        assert!(build_fixing_automorphism(&c, &[], &[(x.clone(), target), (x.clone(), other)]).unwrap().is_none());
        assert!(build_fixing_automorphism(&c, &[], &[]).unwrap().unwrap().is_identity());
        assert!(build_fixing_automorphism(&c, &[], &[(x.clone(), a.basis(0))]).is_err());
    }

    #[test]
    fn moving_family_is_distinct() {
        let c = gf3_cubic();
        let x = c.algebra.basis(1);
        let fam = moving_family(&c, &x).unwrap();
        assert_eq!(fam.len(), 3);
        let distinct: HashSet<_> = fam.iter().map(|m| m.sigma.clone()).collect();
        assert_eq!(distinct.len(), 3);
        for m in &fam {
            assert_eq!(m.sigma.apply_element(&x), c.algebra.add(&x, &m.shift));
        }
    }

    #[test]
    fn witnesses() {
        let p = WitnessParams {
            n: 20,
            ..WitnessParams::default()
        };
        for kind in [WitnessKind::Vector, WitnessKind::Lie, WitnessKind::SRing] {
            let r0 = witness(kind, 0, &p).unwrap();
            assert!(r0.holds, "{r0:?}");
            assert_eq!(r0.distinct_cosets, 21);
            let r5 = witness(kind, 5, &p).unwrap();
            assert!(r5.holds, "{r5:?}");
            assert_eq!(r5.period, Some(5));
        }
    }
}
