//! Finite-dimensional algebras given by structure constants.

mod maps;
mod serial;

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{unit_vector, FieldSpec, Matrix, Scalar, Subspace};
use crate::exec::Execution;

pub use maps::{verify_automorphism, verify_homomorphism, AdditiveMap};
pub use serial::{AlgebraFile, EmbeddingTag, Tags, TriangularTag};

/// One entry of the structure tensor: `b_i · b_j` contains `coeff · b_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Scalar,
}

/// Coordinates of an element in the basis of some algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element(Vec<Scalar>);

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element(coords)
    }
    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }
    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Scalar>> for Element {
    fn from(v: Vec<Scalar>) -> Self {
        Element(v)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }
}

/// Which axiom a basis tuple violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Commutativity,
    Anticommutativity,
    Associativity,
    Alternating,
    Jacobi,
    TwoStepNilpotency,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub basis: Vec<usize>,
}

/// Axioms checked on basis tuples; bilinearity extends them to all elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub commutative: bool,
    pub anticommutative: bool,
    pub associative: bool,
    /// `x·x = 0` for all `x`.
    pub alternating: bool,
    pub jacobi: bool,
    /// Alternating and Jacobi.
    pub lie: bool,
    /// All products of three elements vanish, in both bracketings.
    pub two_step_nilpotent: bool,
    pub unit: Option<Element>,
    /// Least `k` with the left-normed power `A^k = 0`.
    pub nilpotency_index: Option<usize>,
    /// First violating basis tuple for each failed axiom.
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone)]
pub struct Algebra {
    field: FieldSpec,
    names: Vec<String>,
    constants: Vec<StructureConstant>,
    /// `table[i * dim + j]` lists the nonzero `(k, c)` of `b_i · b_j`.
    table: Vec<Vec<(usize, Scalar)>>,
    axioms: OnceLock<AxiomReport>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.names == other.names && self.constants == other.constants
    }
}

impl Eq for Algebra {}

/// Accumulates structure constants, summing repeated entries.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    field: FieldSpec,
    names: Vec<String>,
    entries: Vec<Scalar>,
}

impl AlgebraBuilder {
    pub fn new(field: &FieldSpec, names: Vec<String>) -> Self {
        let n = names.len();
        AlgebraBuilder {
            field: field.clone(),
            names,
            entries: vec![field.zero(); n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Adds `c · b_k` to `b_i · b_j`.
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: &Scalar) -> &mut Self {
        let n = self.dim();
        assert!(i < n && j < n && k < n, "structure constant index out of range");
        let idx = (i * n + j) * n + k;
        self.entries[idx] = self.field.add(&self.entries[idx], c);
        self
    }

    pub fn add_int(&mut self, i: usize, j: usize, k: usize, c: i64) -> &mut Self {
        let c = self.field.from_int(c);
        self.add(i, j, k, &c)
    }

    /// Adds the vector `v` to `b_i · b_j`.
    pub fn add_product(&mut self, i: usize, j: usize, v: &[Scalar]) -> &mut Self {
        for (k, c) in v.iter().enumerate() {
            if !self.field.is_zero(c) {
                self.add(i, j, k, c);
            }
        }
        self
    }

    /// Panics when basis names repeat.
    pub fn build(&self) -> Algebra {
        let n = self.dim();
        let mut constants = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &self.entries[(i * n + j) * n + k];
                    if !self.field.is_zero(c) {
                        constants.push(StructureConstant {
                            i,
                            j,
                            k,
                            coeff: c.clone(),
                        });
                    }
                }
            }
        }
        Algebra::new(&self.field, self.names.clone(), constants).expect("builder output is valid")
    }
}

/// `prefix0, prefix1, ...`.
pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Concatenates two name lists, appending `suffix` to clashing names of the
/// second list until all names are distinct.
pub fn disjoint_names(first: &[String], second: &[String], suffix: &str) -> Vec<String> {
    let mut seen: HashSet<String> = first.iter().cloned().collect();
    let mut out = first.to_vec();
    for name in second {
        let mut candidate = name.clone();
        while seen.contains(&candidate) {
            candidate.push_str(suffix);
        }
        seen.insert(candidate.clone());
        out.push(candidate);
    }
    out
}

impl Algebra {
    /// Validates indices, coefficients and uniqueness of entries and names.
    pub fn new(field: &FieldSpec, names: Vec<String>, mut constants: Vec<StructureConstant>) -> Result<Self> {
        let dim = names.len();
        let mut seen_names = HashSet::new();
        for name in &names {
            if name.is_empty() {
                return Err(Error::InvalidAlgebra("empty basis name".into()));
            }
            if !seen_names.insert(name.as_str()) {
                return Err(Error::InvalidAlgebra(format!("duplicate basis name {name:?}")));
            }
        }
        let mut seen = HashSet::new();
        for sc in &constants {
            let (i, j, k) = (sc.i, sc.j, sc.k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::IndexOutOfRange { i, j, k, dim });
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::DuplicateEntry { i, j, k });
            }
            if !field.contains(&sc.coeff) {
                return Err(Error::InvalidAlgebra(format!(
                    "coefficient of ({i}, {j}, {k}) is not an element of {field}"
                )));
            }
            if field.is_zero(&sc.coeff) {
                return Err(Error::ZeroCoefficient { i, j, k });
            }
        }
        constants.sort_by_key(|sc| (sc.i, sc.j, sc.k));
        let mut table = vec![Vec::new(); dim * dim];
        for sc in &constants {
            table[sc.i * dim + sc.j].push((sc.k, sc.coeff.clone()));
        }
        Ok(Algebra {
            field: field.clone(),
            names,
            constants,
            table,
            axioms: OnceLock::new(),
        })
    }

    /// The algebra with all products zero.
    pub fn zero_product(field: &FieldSpec, names: Vec<String>) -> Self {
        Algebra::new(field, names, Vec::new()).expect("valid names")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn constants(&self) -> &[StructureConstant] {
        &self.constants
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same structure constants under new basis names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Algebra> {
        if names.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: names.len(),
            });
        }
        Algebra::new(&self.field, names, self.constants.clone())
    }

    /// Same basis, product erased.
    pub fn underlying_module(&self) -> Algebra {
        Algebra::zero_product(&self.field, self.names.clone())
    }

    /// Whether every structure constant is killed by the field derivation.
    pub fn has_constant_structure(&self) -> bool {
        self.constants.iter().all(|sc| self.field.is_constant(&sc.coeff))
    }

    pub fn zero(&self) -> Element {
        Element(vec![self.field.zero(); self.dim()])
    }

    pub fn basis(&self, i: usize) -> Element {
        Element(unit_vector(&self.field, self.dim(), i))
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        (0..self.dim()).map(|i| self.basis(i)).collect()
    }

    /// Validates length and field membership of `coords`.
    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        if let Some(bad) = coords.iter().find(|x| !self.field.contains(x)) {
            return Err(Error::InvalidAlgebra(format!("coordinate {bad:?} is not in {}", self.field)));
        }
        Ok(Element(coords))
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> Element {
        assert_eq!(coords.len(), self.dim(), "coordinate count mismatch");
        Element(coords.iter().map(|&x| self.field.from_int(x)).collect())
    }

    /// Parses comma-separated coordinate literals.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coords = s
            .split(',')
            .map(|part| self.field.parse(part.trim()))
            .collect::<Result<Vec<_>>>()?;
        self.element(coords)
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        a.0.iter().all(|x| self.field.is_zero(x))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        assert_eq!(a.len(), b.len(), "element length mismatch");
        Element(a.0.iter().zip(&b.0).map(|(x, y)| self.field.add(x, y)).collect())
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        assert_eq!(a.len(), b.len(), "element length mismatch");
        Element(a.0.iter().zip(&b.0).map(|(x, y)| self.field.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &Element) -> Element {
        Element(a.0.iter().map(|x| self.field.neg(x)).collect())
    }

    pub fn scale(&self, c: &Scalar, a: &Element) -> Element {
        Element(a.0.iter().map(|x| self.field.mul(c, x)).collect())
    }

    /// `b_i · b_j` as sparse `(k, c)` pairs.
    pub fn basis_product_terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        let mut out = vec![self.field.zero(); self.dim()];
        for (k, c) in self.basis_product_terms(i, j) {
            out[*k] = c.clone();
        }
        Element(out)
    }

    /// Bilinear product on coordinate vectors; panics on length mismatch.
    pub fn mul_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        assert!(a.len() == n && b.len() == n, "element length mismatch");
        let f = &self.field;
        let mut out = vec![f.zero(); n];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let terms = &self.table[i * n + j];
                if terms.is_empty() {
                    continue;
                }
                let xy = f.mul(x, y);
                for (k, c) in terms {
                    out[*k] = f.add(&out[*k], &f.mul(&xy, c));
                }
            }
        }
        out
    }

    /// Product of two elements; panics on length mismatch.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        Element(self.mul_vec(&a.0, &b.0))
    }

    /// Product of two elements, rejecting elements of another dimension.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        for x in [a, b] {
            if x.len() != self.dim() {
                return Err(Error::Dimension {
                    expected: self.dim(),
                    found: x.len(),
                });
            }
        }
        Ok(self.mul(a, b))
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul_vec(a, &unit_vector(&self.field, self.dim(), j)))
            .collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul_vec(&unit_vector(&self.field, self.dim(), j), a))
            .collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// Cached axiom report.
    pub fn axioms(&self) -> &AxiomReport {
        self.axioms.get_or_init(|| self.check_axioms_with(Execution::default()))
    }

    pub fn check_axioms(&self) -> AxiomReport {
        self.axioms().clone()
    }

    /// Computes the axiom report, quantifying over basis pairs and triples.
    pub fn check_axioms_with(&self, exec: Execution) -> AxiomReport {
        let n = self.dim();
        let b = self.basis_elements();
        let mut violations = Vec::new();

        let pair_fail = |pred: &(dyn Fn(usize, usize) -> bool + Sync)| -> Option<Vec<usize>> {
            exec.find_first(n * n, |idx| !pred(idx / n, idx % n))
                .map(|idx| vec![idx / n, idx % n])
        };
        let triple_fail = |pred: &(dyn Fn(usize, usize, usize) -> bool + Sync)| -> Option<Vec<usize>> {
            exec.find_first(n * n * n, |idx| !pred(idx / (n * n), (idx / n) % n, idx % n))
                .map(|idx| vec![idx / (n * n), (idx / n) % n, idx % n])
        };

        let commutative = pair_fail(&|i, j| self.table[i * n + j] == self.table[j * n + i]);
        let anticommutative = pair_fail(&|i, j| {
            self.is_zero(&self.add(&self.basis_product(i, j), &self.basis_product(j, i)))
        });
        let alternating = anticommutative
            .clone()
            .or_else(|| exec.find_first(n, |i| !self.table[i * n + i].is_empty()).map(|i| vec![i, i]));
        let associative = triple_fail(&|i, j, k| {
            self.mul(&self.basis_product(i, j), &b[k]) == self.mul(&b[i], &self.basis_product(j, k))
        });
        let jacobi = triple_fail(&|i, j, k| {
            let s1 = self.mul(&b[i], &self.basis_product(j, k));
            let s2 = self.mul(&b[j], &self.basis_product(k, i));
            let s3 = self.mul(&b[k], &self.basis_product(i, j));
            self.is_zero(&self.add(&self.add(&s1, &s2), &s3))
        });
        let two_step = triple_fail(&|i, j, k| {
            self.is_zero(&self.mul(&self.basis_product(i, j), &b[k]))
                && self.is_zero(&self.mul(&b[i], &self.basis_product(j, k)))
        });

        for (axiom, witness) in [
            (Axiom::Commutativity, &commutative),
            (Axiom::Anticommutativity, &anticommutative),
            (Axiom::Associativity, &associative),
            (Axiom::Alternating, &alternating),
            (Axiom::Jacobi, &jacobi),
            (Axiom::TwoStepNilpotency, &two_step),
        ] {
            if let Some(basis) = witness {
                violations.push(Violation {
                    axiom,
                    basis: basis.clone(),
                });
            }
        }

        AxiomReport {
            commutative: commutative.is_none(),
            anticommutative: anticommutative.is_none(),
            associative: associative.is_none(),
            alternating: alternating.is_none(),
            jacobi: jacobi.is_none(),
            lie: alternating.is_none() && jacobi.is_none(),
            two_step_nilpotent: two_step.is_none(),
            unit: self.find_unit(),
            nilpotency_index: self.nilpotency_index(),
            violations,
        }
    }

    /// The two-sided unit, found by solving `u·b_j = b_j = b_j·u`.
    pub fn find_unit(&self) -> Option<Element> {
        let n = self.dim();
        let f = &self.field;
        if n == 0 {
            return None;
        }
        let mut rows = Vec::with_capacity(2 * n * n);
        let mut rhs = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                // coefficient of b_k in u·b_j and in b_j·u, as linear forms in u
                let left: Vec<Scalar> = (0..n).map(|i| self.coefficient(i, j, k)).collect();
                let right: Vec<Scalar> = (0..n).map(|i| self.coefficient(j, i, k)).collect();
                let target = if j == k { f.one() } else { f.zero() };
                rows.push(left);
                rhs.push(target.clone());
                rows.push(right);
                rhs.push(target);
            }
        }
        Matrix::from_rows_with_width(f, n, rows).solve(&rhs).map(Element)
    }

    /// Structure constant `c_{ijk}`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table[i * self.dim() + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }

    /// Span of all `u·v` with `u ∈ U`, `v ∈ V`.
    pub fn product_space(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let ub = u.basis_vectors();
        let vb = v.basis_vectors();
        let products = ub
            .iter()
            .flat_map(|x| vb.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.mul_vec(x, y));
        Subspace::span(&self.field, self.dim(), products)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(&self.field, self.dim())
    }

    /// Left-normed powers `A^1 = A`, `A^{k+1} = A^k · A`, until zero or stable.
    fn nilpotency_index(&self) -> Option<usize> {
        let full = self.full_space();
        let mut power = full.clone();
        for k in 1..=self.dim() + 1 {
            if power.is_zero() {
                return Some(k);
            }
            let next = self.product_space(&power, &full);
            if next == power {
                return None;
            }
            power = next;
        }
        None
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        if s.ambient_dim() != self.dim() {
            return false;
        }
        s.basis_vectors().iter().all(|v| {
            (0..self.dim()).all(|i| {
                let e = unit_vector(&self.field, self.dim(), i);
                s.contains(&self.mul_vec(v, &e)) && s.contains(&self.mul_vec(&e, v))
            })
        })
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.ambient_dim() == self.dim() && s.contains_subspace(&self.product_space(s, s)).unwrap_or(false)
    }

    /// `A/I` on the non-pivot coordinates of `I`, with the projection.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(Algebra, AdditiveMap)> {
        if ideal.ambient_dim() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: ideal.ambient_dim(),
            });
        }
        if !self.is_ideal(ideal) {
            return Err(Error::precondition("subspace is not an ideal"));
        }
        let comp = ideal.complement_indices();
        let names = comp.iter().map(|&i| self.names[i].clone()).collect();
        let mut builder = AlgebraBuilder::new(&self.field, names);
        for (a, &i) in comp.iter().enumerate() {
            for (b, &j) in comp.iter().enumerate() {
                let image = ideal.quotient_coordinates(self.basis_product(i, j).coords());
                builder.add_product(a, b, &image);
            }
        }
        let columns: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|i| ideal.quotient_coordinates(&unit_vector(&self.field, self.dim(), i)))
            .collect();
        let projection = Matrix::from_columns(&self.field, comp.len(), &columns);
        Ok((builder.build(), AdditiveMap::linear(projection)))
    }

    /// The subalgebra on the stored basis of `s`, with the inclusion map.
    pub fn subalgebra(&self, s: &Subspace) -> Result<(Algebra, AdditiveMap)> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: s.ambient_dim(),
            });
        }
        let basis = s.basis_vectors();
        let names = s.pivots().iter().map(|&p| self.names[p].clone()).collect();
        let mut builder = AlgebraBuilder::new(&self.field, names);
        for (a, x) in basis.iter().enumerate() {
            for (b, y) in basis.iter().enumerate() {
                let coords = s
                    .coordinates(&self.mul_vec(x, y))
                    .ok_or_else(|| Error::precondition("subspace is not closed under the product"))?;
                builder.add_product(a, b, &coords);
            }
        }
        let inclusion = s.basis().transpose();
        Ok((builder.build(), AdditiveMap::linear(inclusion)))
    }

    /// Block-diagonal product `A × B`.
    pub fn direct_product(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let n = self.dim();
        let names = disjoint_names(&self.names, &other.names, "'");
        let mut constants = self.constants.clone();
        constants.extend(other.constants.iter().map(|sc| StructureConstant {
            i: sc.i + n,
            j: sc.j + n,
            k: sc.k + n,
            coeff: sc.coeff.clone(),
        }));
        Algebra::new(&self.field, names, constants)
    }

    /// The same algebra on a new basis given by the columns of `basis`
    /// (old coordinates), with the given names.
    pub fn change_basis(&self, basis: &Matrix, names: Vec<String>) -> Result<Algebra> {
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::precondition("new basis is not invertible"))?;
        if names.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: names.len(),
            });
        }
        let cols = basis.columns();
        let mut builder = AlgebraBuilder::new(&self.field, names);
        for (a, x) in cols.iter().enumerate() {
            for (b, y) in cols.iter().enumerate() {
                builder.add_product(a, b, &inv.mul_vec(&self.mul_vec(x, y)));
            }
        }
        Ok(builder.build())
    }

    /// Restriction of scalars from GF(p^k) to GF(p): basis `g^s*b_i` at
    /// index `i*k + s`. Prime-field algebras are returned unchanged.
    pub fn restrict_scalars(&self) -> Result<Algebra> {
        let f = &self.field;
        let k = match f.degree() {
            Some(1) => return Ok(self.clone()),
            Some(k) if f.is_finite() => k,
            _ => return Err(Error::Unsupported(format!("restriction of scalars from {f}"))),
        };
        let base = f.prime_subfield();
        let g = f.generator().expect("extension field has a generator");
        let powers: Vec<Scalar> = (0..k as u64).map(|s| f.pow(&g, s)).collect();
        let mut names = Vec::new();
        for name in &self.names {
            for s in 0..k {
                names.push(match s {
                    0 => name.clone(),
                    1 => format!("g*{name}"),
                    _ => format!("g^{s}*{name}"),
                });
            }
        }
        let mut builder = AlgebraBuilder::new(&base, names);
        for sc in &self.constants {
            for s in 0..k {
                for u in 0..k {
                    let c = f.mul(&f.mul(&powers[s], &powers[u]), &sc.coeff);
                    for (r, digit) in f.prime_coordinates(&c).into_iter().enumerate() {
                        if digit != 0 {
                            builder.add(sc.i * k + s, sc.j * k + u, sc.k * k + r, &base.from_int(digit as i64));
                        }
                    }
                }
            }
        }
        Ok(builder.build())
    }

    /// Human-readable element, e.g. `t*X + 2*Y`.
    pub fn format_element(&self, a: &Element) -> String {
        let terms: Vec<String> = a
            .0
            .iter()
            .zip(&self.names)
            .filter(|(c, _)| !self.field.is_zero(c))
            .map(|(c, name)| {
                if self.field.is_one(c) {
                    name.clone()
                } else {
                    let s = c.to_string();
                    if s.contains(['+', '-']) && !(s.starts_with('-') && !s[1..].contains(['+', '-'])) {
                        format!("({s})*{name}")
                    } else {
                        format!("{s}*{name}")
                    }
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra over {} with basis {}", self.field, self.names.join(", "))?;
        for sc in &self.constants {
            writeln!(
                f,
                "  {} * {} += {} {}",
                self.names[sc.i], self.names[sc.j], sc.coeff, self.names[sc.k]
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h3(f: &FieldSpec) -> Algebra {
        let mut b = AlgebraBuilder::new(f, vec!["X".into(), "Y".into(), "Z".into()]);
        b.add_int(0, 1, 2, 1).add_int(1, 0, 2, -1);
        b.build()
    }

    fn truncated(f: &FieldSpec, n: usize) -> Algebra {
        let mut b = AlgebraBuilder::new(f, indexed_names("x", n));
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    b.add_int(i, j, i + j, 1);
                }
            }
        }
        b.build()
    }

    #[test]
    fn heisenberg_products() {
        let f = FieldSpec::rationals();
        let h = h3(&f);
        assert_eq!(h.mul(&h.basis(0), &h.basis(1)), h.basis(2));
        assert_eq!(h.mul(&h.basis(1), &h.basis(0)), h.neg(&h.basis(2)));
        assert!(h.is_zero(&h.mul(&h.zero(), &h.basis(1))));
        let r = h.axioms();
        assert!(r.lie && r.two_step_nilpotent && r.anticommutative);
        assert!(r.unit.is_none());
        assert!(!r.commutative);
    }

    #[test]
    fn truncated_polynomial_axioms() {
        let f = FieldSpec::rationals();
        let a = truncated(&f, 3);
        let r = a.axioms();
        assert!(r.commutative && r.associative && !r.lie);
        assert_eq!(r.unit, Some(a.basis(0)));
        assert_eq!(r.nilpotency_index, None);
    }

    #[test]
    fn trivial_product_axioms() {
        let f = FieldSpec::rationals();
        let v = Algebra::zero_product(&f, indexed_names("v", 3));
        let r = v.axioms();
        assert!(r.commutative && r.associative && r.lie);
        assert_eq!(r.nilpotency_index, Some(2));
    }

    #[test]
    fn ideals_and_quotients() {
        let f = FieldSpec::rationals();
        let a = truncated(&f, 3);
        let x = Subspace::coordinate(&f, 3, [1, 2]);
        let x2 = Subspace::coordinate(&f, 3, [2]);
        assert!(a.is_ideal(&x) && a.is_ideal(&x2));
        assert!(a.is_ideal(&Subspace::zero(&f, 3)));
        let (q, _) = a.quotient(&x2).unwrap();
        assert_eq!(q.renamed(indexed_names("x", 2)).unwrap(), truncated(&f, 2));
        let h = h3(&f);
        assert!(!h.is_ideal(&Subspace::coordinate(&f, 3, [0])));
        let (ab, _) = h.quotient(&Subspace::coordinate(&f, 3, [2])).unwrap();
        assert!(ab.constants().is_empty());
        assert!(h.quotient(&Subspace::coordinate(&f, 3, [0])).is_err());
    }

    #[test]
    fn strict_constructor_rejects_bad_tensors() {
        let f = FieldSpec::rationals();
        let sc = |i, j, k| StructureConstant {
            i,
            j,
            k,
            coeff: f.one(),
        };
        let names = indexed_names("e", 2);
        assert_eq!(
            Algebra::new(&f, names.clone(), vec![sc(0, 1, 1), sc(0, 1, 1)]),
            Err(Error::DuplicateEntry { i: 0, j: 1, k: 1 })
        );
        assert!(matches!(
            Algebra::new(&f, names.clone(), vec![sc(0, 2, 1)]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(Algebra::new(&f, vec!["a".into(), "a".into()], vec![]).is_err());
    }

    #[test]
    fn direct_product_unit() {
        let f = FieldSpec::prime(2).unwrap();
        let a = truncated(&f, 2);
        let p = a.direct_product(&a).unwrap();
        assert_eq!(p.axioms().unit, Some(p.element_from_ints(&[1, 0, 1, 0])));
        assert_eq!(p.names()[2], "x0'");
    }
}
