//! Factories for the algebras studied by the crate: triangular rings
//! Λ(R, M), semidirect sums, Heisenberg algebras, truncated polynomial and
//! matrix algebras, the commutative rings S(h), and local sums F ⊕ m.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{
    disjoint_names, indexed_names, AdditiveMap, Algebra, AlgebraBuilder, AlgebraFile, EmbeddingTag, StructureConstant,
    Tags, TriangularTag,
};
use crate::derivations::is_derivation;
use crate::error::{Error, Result};
use crate::exactmath::{FieldSpec, Matrix, Scalar, Subspace};
use crate::invariants::center_lie;

/// Subspace tag for `{0} × M` in a triangular ring.
pub const MODULE: &str = "module";
pub const MAXIMAL_IDEAL: &str = "maximal_ideal";
/// The coefficient field `F·1` of a local sum `F ⊕ m`.
pub const SPLIT: &str = "split";
pub const CENTER: &str = "center";
pub const ANNIHILATOR: &str = "annihilator";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    Field,
    Triangular,
    SemidirectDouble,
    SemidirectRho,
    Heisenberg,
    TwoDimLie,
    TrivialMult,
    TruncatedPoly,
    NullQuadratic,
    MatrixAlgebra,
    MatrixLie,
    SOf,
    LocalSum,
    DirectProduct,
    Loaded,
}

impl ConstructionKind {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::Field => "field",
            ConstructionKind::Triangular => "triangular",
            ConstructionKind::SemidirectDouble => "semidirect_double",
            ConstructionKind::SemidirectRho => "semidirect_rho",
            ConstructionKind::Heisenberg => "heisenberg",
            ConstructionKind::TwoDimLie => "two_dim_lie",
            ConstructionKind::TrivialMult => "trivial_mult",
            ConstructionKind::TruncatedPoly => "truncated_poly",
            ConstructionKind::NullQuadratic => "null_quadratic",
            ConstructionKind::MatrixAlgebra => "matrix_algebra",
            ConstructionKind::MatrixLie => "matrix_lie",
            ConstructionKind::SOf => "s_of",
            ConstructionKind::LocalSum => "local_sum",
            ConstructionKind::DirectProduct => "direct_product",
            ConstructionKind::Loaded => "loaded",
        }
    }

    fn from_name(s: &str) -> ConstructionKind {
        use ConstructionKind::*;
        [
            Field,
            Triangular,
            SemidirectDouble,
            SemidirectRho,
            Heisenberg,
            TwoDimLie,
            TrivialMult,
            TruncatedPoly,
            NullQuadratic,
            MatrixAlgebra,
            MatrixLie,
            SOf,
            LocalSum,
            DirectProduct,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .unwrap_or(Loaded)
    }
}

/// Left and right actions of a ring R on a module M. An entry `(i, j, k, c)`
/// of `left` means `r_i · m_j` contains `c · m_k`; `right` entries
/// `(i, j, k, c)` mean `m_j · r_i` contains `c · m_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearAction {
    field: FieldSpec,
    ring_dim: usize,
    module_dim: usize,
    left: Vec<StructureConstant>,
    right: Vec<StructureConstant>,
}

impl BilinearAction {
    pub fn new(
        field: &FieldSpec,
        ring_dim: usize,
        module_dim: usize,
        left: Vec<StructureConstant>,
        right: Vec<StructureConstant>,
    ) -> Result<Self> {
        for sc in left.iter().chain(&right) {
            if sc.i >= ring_dim || sc.j >= module_dim || sc.k >= module_dim {
                return Err(Error::IndexOutOfRange {
                    i: sc.i,
                    j: sc.j,
                    k: sc.k,
                    dim: module_dim,
                });
            }
        }
        let keep = |v: Vec<StructureConstant>| v.into_iter().filter(|sc| !field.is_zero(&sc.coeff)).collect();
        Ok(BilinearAction {
            field: field.clone(),
            ring_dim,
            module_dim,
            left: keep(left),
            right: keep(right),
        })
    }

    pub fn zero(field: &FieldSpec, ring_dim: usize, module_dim: usize) -> Self {
        BilinearAction {
            field: field.clone(),
            ring_dim,
            module_dim,
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    /// The field (a 1-dimensional ring with basis 1) acting by scalars.
    pub fn scalar(field: &FieldSpec, module_dim: usize) -> Self {
        let unit = |j| StructureConstant {
            i: 0,
            j,
            k: j,
            coeff: field.one(),
        };
        BilinearAction {
            field: field.clone(),
            ring_dim: 1,
            module_dim,
            left: (0..module_dim).map(unit).collect(),
            right: (0..module_dim).map(unit).collect(),
        }
    }

    /// A Lie algebra acting on its additive copy by brackets.
    pub fn adjoint(g: &Algebra) -> Self {
        let left = g.constants().to_vec();
        let right = g
            .constants()
            .iter()
            .map(|sc| StructureConstant {
                i: sc.j,
                j: sc.i,
                k: sc.k,
                coeff: sc.coeff.clone(),
            })
            .collect();
        BilinearAction {
            field: g.field().clone(),
            ring_dim: g.dim(),
            module_dim: g.dim(),
            left,
            right,
        }
    }

    /// `r_a · y = ρ(a)(y)` and `y · r_a = −ρ(a)(y)`, one matrix per ring basis element.
    pub fn from_operators(field: &FieldSpec, module_dim: usize, rho: &[Matrix]) -> Self {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (a, m) in rho.iter().enumerate() {
            for j in 0..module_dim {
                for k in 0..module_dim {
                    let c = m.get(k, j);
                    if field.is_zero(c) {
                        continue;
                    }
                    left.push(StructureConstant {
                        i: a,
                        j,
                        k,
                        coeff: c.clone(),
                    });
                    right.push(StructureConstant {
                        i: a,
                        j,
                        k,
                        coeff: field.neg(c),
                    });
                }
            }
        }
        BilinearAction {
            field: field.clone(),
            ring_dim: rho.len(),
            module_dim,
            left,
            right,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn ring_dim(&self) -> usize {
        self.ring_dim
    }
    pub fn module_dim(&self) -> usize {
        self.module_dim
    }
    pub fn left_entries(&self) -> &[StructureConstant] {
        &self.left
    }
    pub fn right_entries(&self) -> &[StructureConstant] {
        &self.right
    }

    fn act(&self, entries: &[StructureConstant], r: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.module_dim];
        for sc in entries {
            let (x, y) = (&r[sc.i], &m[sc.j]);
            if f.is_zero(x) || f.is_zero(y) {
                continue;
            }
            out[sc.k] = f.add(&out[sc.k], &f.mul(&f.mul(x, y), &sc.coeff));
        }
        out
    }

    /// `r · m`.
    pub fn act_left(&self, r: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        self.act(&self.left, r, m)
    }

    /// `m · r`.
    pub fn act_right(&self, m: &[Scalar], r: &[Scalar]) -> Vec<Scalar> {
        self.act(&self.right, r, m)
    }
}

/// Matrix images of the basis, e.g. Heisenberg basis elements as matrix units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixEmbedding {
    pub size: usize,
    pub images: Vec<Matrix>,
}

impl MatrixEmbedding {
    /// `Σ a_i E_i`.
    pub fn image(&self, a: &[Scalar]) -> Matrix {
        let field = self.images[0].field();
        let mut out = Matrix::zeros(field, self.size, self.size);
        for (c, m) in a.iter().zip(&self.images) {
            if !field.is_zero(c) {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    /// Coordinates of a matrix in the span of the images.
    pub fn preimage(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        let field = m.field();
        let cols: Vec<Vec<Scalar>> = self.images.iter().map(|e| e.entries().to_vec()).collect();
        let system = Matrix::from_columns(field, self.size * self.size, &cols);
        let x = system.solve(m.entries())?;
        (system.mul_vec(&x) == m.entries()).then_some(x)
    }

    /// Whether every image entry is a constant of the field derivation.
    pub fn has_constant_entries(&self) -> bool {
        self.images
            .iter()
            .all(|m| m.entries().iter().all(|x| m.field().is_constant(x)))
    }
}

/// The pieces of a triangular ring Λ(R, M) on the basis `R ++ M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularParts {
    pub ring: Algebra,
    pub module: Algebra,
    pub action: BilinearAction,
}

impl TriangularParts {
    pub fn ring_dim(&self) -> usize {
        self.ring.dim()
    }
    pub fn module_dim(&self) -> usize {
        self.module.dim()
    }
    pub fn total_dim(&self) -> usize {
        self.ring.dim() + self.module.dim()
    }
    pub fn field(&self) -> &FieldSpec {
        self.ring.field()
    }

    /// `(r, 0)`.
    pub fn embed_ring(&self, r: &[Scalar]) -> Vec<Scalar> {
        let mut v = r.to_vec();
        v.extend(std::iter::repeat_n(self.field().zero(), self.module_dim()));
        v
    }

    /// `(0, m)`.
    pub fn embed_module(&self, m: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.ring_dim()];
        v.extend_from_slice(m);
        v
    }

    pub fn ring_part<'a>(&self, v: &'a [Scalar]) -> &'a [Scalar] {
        &v[..self.ring_dim()]
    }

    pub fn module_part<'a>(&self, v: &'a [Scalar]) -> &'a [Scalar] {
        &v[self.ring_dim()..]
    }

    /// `S × {0}` for `S ⊆ R`.
    pub fn ring_subspace(&self, s: &Subspace) -> Subspace {
        s.embed(0, self.total_dim())
    }

    /// `{0} × S` for `S ⊆ M`.
    pub fn module_subspace(&self, s: &Subspace) -> Subspace {
        s.embed(self.ring_dim(), self.total_dim())
    }

    /// Recovers R, M and the actions from an algebra whose first `ring_dim`
    /// basis vectors span a subring and whose remaining ones span an ideal.
    pub fn from_algebra(a: &Algebra, ring_dim: usize) -> Result<Self> {
        let n = a.dim();
        if ring_dim > n {
            return Err(Error::Dimension {
                expected: n,
                found: ring_dim,
            });
        }
        let md = n - ring_dim;
        let f = a.field();
        let mut ring = AlgebraBuilder::new(f, a.names()[..ring_dim].to_vec());
        let mut module = AlgebraBuilder::new(f, a.names()[ring_dim..].to_vec());
        let mut left = Vec::new();
        let mut right = Vec::new();
        for sc in a.constants() {
            let (i_r, j_r, k_r) = (sc.i < ring_dim, sc.j < ring_dim, sc.k < ring_dim);
            match (i_r, j_r) {
                (true, true) if k_r => {
                    ring.add(sc.i, sc.j, sc.k, &sc.coeff);
                }
                (true, true) => {
                    return Err(Error::hypothesis(
                        "ring part closed",
                        format!("product of basis {} and {} leaves the ring part", sc.i, sc.j),
                    ))
                }
                _ if k_r => {
                    return Err(Error::hypothesis(
                        "module part is an ideal",
                        format!("product of basis {} and {} leaves the module part", sc.i, sc.j),
                    ))
                }
                (false, false) => {
                    module.add(sc.i - ring_dim, sc.j - ring_dim, sc.k - ring_dim, &sc.coeff);
                }
                (true, false) => left.push(StructureConstant {
                    i: sc.i,
                    j: sc.j - ring_dim,
                    k: sc.k - ring_dim,
                    coeff: sc.coeff.clone(),
                }),
                (false, true) => right.push(StructureConstant {
                    i: sc.j,
                    j: sc.i - ring_dim,
                    k: sc.k - ring_dim,
                    coeff: sc.coeff.clone(),
                }),
            }
        }
        Ok(TriangularParts {
            ring: ring.build(),
            module: module.build(),
            action: BilinearAction::new(f, ring_dim, md, left, right)?,
        })
    }
}

/// An algebra together with the data of the construction that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub algebra: Algebra,
    pub kind: ConstructionKind,
    pub subspaces: BTreeMap<String, Subspace>,
    pub triangular: Option<TriangularParts>,
    pub embedding: Option<MatrixEmbedding>,
}

impl Construction {
    pub fn plain(algebra: Algebra, kind: ConstructionKind) -> Self {
        Construction {
            algebra,
            kind,
            subspaces: BTreeMap::new(),
            triangular: None,
            embedding: None,
        }
    }

    fn with_subspace(mut self, name: &str, s: Subspace) -> Self {
        self.subspaces.insert(name.to_string(), s);
        self
    }

    pub fn subspace(&self, name: &str) -> Option<&Subspace> {
        self.subspaces.get(name)
    }

    pub fn require_subspace(&self, name: &str) -> Result<&Subspace> {
        self.subspace(name)
            .ok_or_else(|| Error::precondition(format!("construction has no {name} tag")))
    }

    pub fn require_triangular(&self) -> Result<&TriangularParts> {
        self.triangular
            .as_ref()
            .ok_or_else(|| Error::precondition("construction is not a triangular ring"))
    }

    pub fn require_embedding(&self) -> Result<&MatrixEmbedding> {
        self.embedding
            .as_ref()
            .ok_or_else(|| Error::precondition("construction has no matrix embedding"))
    }

    pub fn to_file(&self) -> AlgebraFile {
        let mut file = AlgebraFile::from_algebra(&self.algebra);
        file.tags = Tags {
            kind: Some(self.kind.name().to_string()),
            subspaces: self
                .subspaces
                .iter()
                .map(|(k, s)| (k.clone(), s.basis().to_strings()))
                .collect(),
            triangular: self.triangular.as_ref().map(|t| TriangularTag {
                ring_dim: t.ring_dim(),
            }),
            embedding: self.embedding.as_ref().map(|e| EmbeddingTag {
                size: e.size,
                images: e.images.iter().map(Matrix::to_strings).collect(),
            }),
        };
        file
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_json()
    }

    /// Rebuilds a construction from a file, re-deriving the triangular parts
    /// and validating tags.
    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let algebra = file.to_algebra()?;
        let kind = file
            .tags
            .kind
            .as_deref()
            .map_or(ConstructionKind::Loaded, ConstructionKind::from_name);
        let mut subspaces = BTreeMap::new();
        for name in file.tags.subspaces.keys() {
            let s = file.subspace(name)?.expect("key present");
            subspaces.insert(name.clone(), s);
        }
        let triangular = match &file.tags.triangular {
            Some(t) => Some(TriangularParts::from_algebra(&algebra, t.ring_dim)?),
            None => None,
        };
        let embedding = file
            .embedding_matrices()?
            .map(|(size, images)| MatrixEmbedding { size, images });
        if let Some(e) = &embedding {
            if e.images.len() != algebra.dim() {
                return Err(Error::Format("embedding has the wrong number of images".into()));
            }
        }
        Ok(Construction {
            algebra,
            kind,
            subspaces,
            triangular,
            embedding,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&AlgebraFile::parse(text)?)
    }
}

/// The field as a 1-dimensional algebra with basis `1`.
pub fn field_algebra(field: &FieldSpec) -> Algebra {
    let mut b = AlgebraBuilder::new(field, vec!["1".into()]);
    b.add_int(0, 0, 0, 1);
    b.build()
}

/// Λ(R, M): product `(r1, m1)(r2, m2) = (r1 r2, r1·m2 + m1·r2 + m1 m2)`.
pub fn triangular(ring: &Algebra, module: &Algebra, action: &BilinearAction) -> Result<Construction> {
    let f = ring.field();
    if module.field() != f || action.field() != f {
        return Err(Error::FieldMismatch(f.to_string(), module.field().to_string()));
    }
    if action.ring_dim() != ring.dim() || action.module_dim() != module.dim() {
        return Err(Error::Dimension {
            expected: ring.dim() + module.dim(),
            found: action.ring_dim() + action.module_dim(),
        });
    }
    let rd = ring.dim();
    let names = disjoint_names(ring.names(), module.names(), "+");
    let mut b = AlgebraBuilder::new(f, names);
    for sc in ring.constants() {
        b.add(sc.i, sc.j, sc.k, &sc.coeff);
    }
    for sc in module.constants() {
        b.add(rd + sc.i, rd + sc.j, rd + sc.k, &sc.coeff);
    }
    for sc in action.left_entries() {
        b.add(sc.i, rd + sc.j, rd + sc.k, &sc.coeff);
    }
    for sc in action.right_entries() {
        b.add(rd + sc.j, sc.i, rd + sc.k, &sc.coeff);
    }
    let algebra = b.build();
    let parts = TriangularParts {
        ring: ring.clone(),
        module: module.renamed(algebra.names()[rd..].to_vec())?,
        action: action.clone(),
    };
    let module_space = parts.module_subspace(&module.full_space());
    Ok(Construction {
        algebra,
        kind: ConstructionKind::Triangular,
        subspaces: BTreeMap::from([(MODULE.to_string(), module_space)]),
        triangular: Some(parts),
        embedding: None,
    })
}

fn require_lie(g: &Algebra, what: &str) -> Result<()> {
    if !g.axioms().lie {
        return Err(Error::precondition(format!("{what} is not a Lie algebra")));
    }
    Ok(())
}

/// g ⋉ g⁺ = Λ(g, g⁺) with the adjoint action; tags z(g) × z(g).
pub fn semidirect_double(g: &Algebra) -> Result<Construction> {
    require_lie(g, "input")?;
    let mut c = triangular(g, &g.underlying_module(), &BilinearAction::adjoint(g))?;
    c.kind = ConstructionKind::SemidirectDouble;
    let z = center_lie(g);
    let zz = z.product(&z);
    if center_lie(&c.algebra) != zz {
        return Err(Error::InvalidAlgebra("center of g ⋉ g⁺ differs from z(g) × z(g)".into()));
    }
    Ok(c.with_subspace(CENTER, zz))
}

/// g1 ⋉_ρ g2 with bracket `([a,b], [x,y] + ρ(a)y − ρ(b)x)`; `rho[i]` is the
/// matrix of `ρ(b_i)` on g2.
pub fn semidirect_rho(g1: &Algebra, g2: &Algebra, rho: &[Matrix]) -> Result<Construction> {
    require_lie(g1, "acting algebra")?;
    require_lie(g2, "module algebra")?;
    let f = g1.field();
    if g2.field() != f {
        return Err(Error::FieldMismatch(f.to_string(), g2.field().to_string()));
    }
    if rho.len() != g1.dim() {
        return Err(Error::Dimension {
            expected: g1.dim(),
            found: rho.len(),
        });
    }
    for (i, m) in rho.iter().enumerate() {
        if m.rows() != g2.dim() || m.cols() != g2.dim() {
            return Err(Error::Dimension {
                expected: g2.dim(),
                found: m.rows(),
            });
        }
        if !is_derivation(g2, m) {
            return Err(Error::hypothesis(
                "action by derivations",
                format!("image of {} is not a derivation", g1.names()[i]),
            ));
        }
    }
    // ρ([b_i, b_j]) = [ρ(b_i), ρ(b_j)]
    for i in 0..g1.dim() {
        for j in 0..g1.dim() {
            let mut lhs = Matrix::zeros(f, g2.dim(), g2.dim());
            for (k, c) in g1.basis_product_terms(i, j) {
                lhs = lhs.add(&rho[*k].scale(c));
            }
            let rhs = rho[i].mul(&rho[j]).sub(&rho[j].mul(&rho[i]));
            if lhs != rhs {
                return Err(Error::hypothesis(
                    "action is a Lie homomorphism",
                    format!(
                        "rho([{}, {}]) differs from [rho({}), rho({})]",
                        g1.names()[i],
                        g1.names()[j],
                        g1.names()[i],
                        g1.names()[j]
                    ),
                ));
            }
        }
    }
    let action = BilinearAction::from_operators(f, g2.dim(), rho);
    let mut c = triangular(g1, g2, &action)?;
    c.kind = ConstructionKind::SemidirectRho;
    Ok(c)
}

/// h_{2n+1} on `p_1..p_n, q_1..q_n, z` with `[p_i, q_i] = z`, embedded in
/// `(n+2) × (n+2)` matrices as `p_i = e_{1,i+1}`, `q_i = e_{i+1,n+2}`,
/// `z = e_{1,n+2}`. For `n = 1` the basis is named `X, Y, Z`.
pub fn heisenberg(field: &FieldSpec, n: usize) -> Result<Construction> {
    if n == 0 {
        return Err(Error::precondition("Heisenberg algebra needs n >= 1"));
    }
    let names: Vec<String> = if n == 1 {
        vec!["X".into(), "Y".into(), "Z".into()]
    } else {
        let mut v: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
        v.extend((1..=n).map(|i| format!("q{i}")));
        v.push("z".into());
        v
    };
    let z = 2 * n;
    let mut b = AlgebraBuilder::new(field, names);
    for i in 0..n {
        b.add_int(i, n + i, z, 1);
        b.add_int(n + i, i, z, -1);
    }
    let algebra = b.build();
    let size = n + 2;
    let unit = |r: usize, c: usize| {
        let mut m = Matrix::zeros(field, size, size);
        m.set(r, c, field.one());
        m
    };
    let mut images: Vec<Matrix> = (0..n).map(|i| unit(0, i + 1)).collect();
    images.extend((0..n).map(|i| unit(i + 1, n + 1)));
    images.push(unit(0, n + 1));
    let center = Subspace::coordinate(field, 2 * n + 1, [z]);
    let mut c = Construction::plain(algebra, ConstructionKind::Heisenberg).with_subspace(CENTER, center);
    c.embedding = Some(MatrixEmbedding { size, images });
    Ok(c)
}

/// The non-abelian 2-dimensional Lie algebra, `[x, y] = x`.
pub fn two_dim_lie(field: &FieldSpec) -> Construction {
    let mut b = AlgebraBuilder::new(field, vec!["x".into(), "y".into()]);
    b.add_int(0, 1, 0, 1).add_int(1, 0, 0, -1);
    let algebra = b.build();
    let derived = Subspace::coordinate(field, 2, [0]);
    Construction::plain(algebra, ConstructionKind::TwoDimLie).with_subspace("derived", derived)
}

/// `n`-dimensional space with zero product.
pub fn trivial_mult(field: &FieldSpec, n: usize) -> Construction {
    let names = (1..=n).map(|i| format!("v{i}")).collect();
    Construction::plain(Algebra::zero_product(field, names), ConstructionKind::TrivialMult)
}

fn local_tags(c: Construction, dim: usize) -> Construction {
    let field = c.algebra.field().clone();
    c.with_subspace(MAXIMAL_IDEAL, Subspace::coordinate(&field, dim, 1..dim))
        .with_subspace(SPLIT, Subspace::coordinate(&field, dim, [0]))
}

/// `F[x]/(x^n)` on `1, x, ..., x^{n-1}`.
pub fn truncated_poly(field: &FieldSpec, n: usize) -> Result<Construction> {
    if n == 0 {
        return Err(Error::precondition("truncation degree must be at least 1"));
    }
    let names = (0..n)
        .map(|e| match e {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{e}"),
        })
        .collect();
    let mut b = AlgebraBuilder::new(field, names);
    for i in 0..n {
        for j in 0..n - i {
            b.add_int(i, j, i + j, 1);
        }
    }
    Ok(local_tags(Construction::plain(b.build(), ConstructionKind::TruncatedPoly), n))
}

/// `GF(p)[y_1..y_m]/(y_i y_j)` on `1, y_1, ..., y_m`.
pub fn null_quadratic(p: u64, m: usize) -> Result<Construction> {
    let field = FieldSpec::prime(p)?;
    let mut names = vec!["1".to_string()];
    names.extend((1..=m).map(|i| format!("y{i}")));
    let mut b = AlgebraBuilder::new(&field, names);
    b.add_int(0, 0, 0, 1);
    for i in 1..=m {
        b.add_int(0, i, i, 1).add_int(i, 0, i, 1);
    }
    Ok(local_tags(Construction::plain(b.build(), ConstructionKind::NullQuadratic), m + 1))
}

fn matrix_units(field: &FieldSpec, n: usize) -> (Vec<String>, Vec<Matrix>) {
    let mut names = Vec::new();
    let mut images = Vec::new();
    for r in 0..n {
        for c in 0..n {
            names.push(if n < 10 {
                format!("e{}{}", r + 1, c + 1)
            } else {
                format!("e{}_{}", r + 1, c + 1)
            });
            let mut m = Matrix::zeros(field, n, n);
            m.set(r, c, field.one());
            images.push(m);
        }
    }
    (names, images)
}

/// Full matrix algebra on matrix units `e_rc`, index `r*n + c`.
pub fn matrix_algebra(field: &FieldSpec, n: usize) -> Result<Construction> {
    if n == 0 {
        return Err(Error::precondition("matrix size must be at least 1"));
    }
    let (names, images) = matrix_units(field, n);
    let mut b = AlgebraBuilder::new(field, names);
    for (a, c) in (0..n).flat_map(|a| (0..n).map(move |c| (a, c))) {
        for d in 0..n {
            // e_ac e_cd = e_ad
            b.add_int(a * n + c, c * n + d, a * n + d, 1);
        }
    }
    let mut con = Construction::plain(b.build(), ConstructionKind::MatrixAlgebra);
    con.embedding = Some(MatrixEmbedding { size: n, images });
    Ok(con)
}

/// gl_n with the commutator bracket.
pub fn matrix_lie(field: &FieldSpec, n: usize) -> Result<Construction> {
    let assoc = matrix_algebra(field, n)?;
    let a = &assoc.algebra;
    let mut b = AlgebraBuilder::new(field, a.names().to_vec());
    let minus = field.from_int(-1);
    for sc in a.constants() {
        b.add(sc.i, sc.j, sc.k, &sc.coeff);
        b.add(sc.j, sc.i, sc.k, &field.mul(&minus, &sc.coeff));
    }
    let mut con = Construction::plain(b.build(), ConstructionKind::MatrixLie);
    con.embedding = assoc.embedding;
    Ok(con)
}

/// The ring on `h × h` with `(a1, a2)(b1, b2) = (0, [a1, b2] + [b1, a2])`,
/// built without checking that `h` is 2-step nilpotent.
pub fn s_product(h: &Algebra) -> Algebra {
    let n = h.dim();
    let f = h.field();
    let mut names: Vec<String> = h.names().iter().map(|x| format!("({x},0)")).collect();
    names.extend(h.names().iter().map(|x| format!("(0,{x})")));
    let mut b = AlgebraBuilder::new(f, names);
    for sc in h.constants() {
        // (e_i, 0)(0, e_j) = (0, [e_i, e_j]); (0, e_j)(e_i, 0) = (0, [e_i, e_j])
        b.add(sc.i, n + sc.j, n + sc.k, &sc.coeff);
        b.add(n + sc.j, sc.i, n + sc.k, &sc.coeff);
    }
    b.build()
}

/// S(h) for a 2-step nilpotent Lie algebra `h`; tags z(h) × z(h).
pub fn s_of(h: &Algebra) -> Result<Construction> {
    require_lie(h, "input")?;
    if !h.axioms().two_step_nilpotent {
        return Err(Error::precondition("input is not 2-step nilpotent"));
    }
    let algebra = s_product(h);
    let ax = algebra.axioms();
    if !ax.commutative || !ax.associative {
        return Err(Error::InvalidAlgebra("S(h) is not commutative and associative".into()));
    }
    let z = center_lie(h);
    Ok(Construction::plain(algebra, ConstructionKind::SOf).with_subspace(ANNIHILATOR, z.product(&z)))
}

/// F ⊕ m = Λ(F, m) with F acting by scalars; a local ring with maximal
/// ideal `{0} × m`.
pub fn local_sum(field: &FieldSpec, m: &Algebra) -> Result<Construction> {
    if m.field() != field {
        return Err(Error::FieldMismatch(field.to_string(), m.field().to_string()));
    }
    let ax = m.axioms();
    if !ax.commutative || !ax.associative {
        return Err(Error::precondition("m is not commutative and associative"));
    }
    if ax.nilpotency_index.is_none() {
        return Err(Error::precondition("m is not nilpotent"));
    }
    let mut c = triangular(&field_algebra(field), m, &BilinearAction::scalar(field, m.dim()))?;
    c.kind = ConstructionKind::LocalSum;
    let maximal = c.require_subspace(MODULE)?.clone();
    let split = Subspace::coordinate(field, c.algebra.dim(), [0]);
    Ok(c.with_subspace(MAXIMAL_IDEAL, maximal).with_subspace(SPLIT, split))
}

/// A × B.
pub fn direct_product(a: &Algebra, b: &Algebra) -> Result<Construction> {
    let algebra = a.direct_product(b)?;
    Ok(Construction::plain(algebra, ConstructionKind::DirectProduct))
}

/// The projection `Λ → R` and inclusion `M → Λ` of a triangular ring, as maps.
pub fn triangular_maps(t: &TriangularParts) -> (AdditiveMap, AdditiveMap) {
    let f = t.field();
    let (rd, md) = (t.ring_dim(), t.module_dim());
    let mut proj = Matrix::zeros(f, rd, rd + md);
    for i in 0..rd {
        proj.set(i, i, f.one());
    }
    let mut incl = Matrix::zeros(f, rd + md, md);
    for j in 0..md {
        incl.set(rd + j, j, f.one());
    }
    (AdditiveMap::linear(proj), AdditiveMap::linear(incl))
}

/// `n` names `prefix1..prefixn`.
pub fn numbered_names(prefix: &str, n: usize) -> Vec<String> {
    let mut v = indexed_names(prefix, n + 1);
    v.remove(0);
    v
}
