//! Element-level brute force over prime fields, written against plain `u64`
//! arithmetic so it shares nothing with the library beyond reading constants.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strucalg::algebra::indexed_names;
use strucalg::constructions::{
    field_algebra, heisenberg, local_sum, matrix_algebra, matrix_lie, null_quadratic, semidirect_double, trivial_mult,
    truncated_poly, two_dim_lie, Construction, ConstructionKind,
};
use strucalg::{Algebra, AlgebraBuilder, FieldSpec, Scalar};

pub type Vector = Vec<u64>;

pub struct Oracle {
    pub p: u64,
    pub d: usize,
    /// `table[i][j]` is `b_i · b_j` as a coordinate vector.
    table: Vec<Vec<Vector>>,
    pub elements: Vec<Vector>,
}

impl Oracle {
    pub fn new(a: &Algebra) -> Self {
        let f = a.field();
        assert_eq!(f.degree(), Some(1), "oracle needs a prime field");
        let p = f.characteristic();
        let d = a.dim();
        let table = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).map(|k| f.index_of(&a.coefficient(i, j, k))).collect())
                    .collect()
            })
            .collect();
        let total = p.pow(d as u32);
        let elements = (0..total)
            .map(|mut n| {
                (0..d)
                    .map(|_| {
                        let c = n % p;
                        n /= p;
                        c
                    })
                    .collect()
            })
            .collect();
        Oracle { p, d, table, elements }
    }

    pub fn zero(&self) -> Vector {
        vec![0; self.d]
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vector {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.p).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Vector {
        x.iter().map(|a| (self.p - a) % self.p).collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vector {
        let mut out = vec![0; self.d];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                let c = a * b % self.p;
                if c == 0 {
                    continue;
                }
                for (k, t) in self.table[i][j].iter().enumerate() {
                    out[k] = (out[k] + c * t) % self.p;
                }
            }
        }
        out
    }

    fn is_zero(x: &[u64]) -> bool {
        x.iter().all(|&c| c == 0)
    }

    pub fn annihilator(&self) -> BTreeSet<Vector> {
        self.elements
            .iter()
            .filter(|x| {
                self.elements
                    .iter()
                    .all(|y| Self::is_zero(&self.mul(x, y)) && Self::is_zero(&self.mul(y, x)))
            })
            .cloned()
            .collect()
    }

    pub fn commutative(&self) -> bool {
        self.pairs().all(|(x, y)| self.mul(x, y) == self.mul(y, x))
    }

    pub fn anticommutative(&self) -> bool {
        self.pairs().all(|(x, y)| self.mul(x, y) == self.neg(&self.mul(y, x)))
    }

    pub fn alternating(&self) -> bool {
        self.elements.iter().all(|x| Self::is_zero(&self.mul(x, x)))
    }

    pub fn associative(&self) -> bool {
        self.triples()
            .all(|(x, y, z)| self.mul(&self.mul(x, y), z) == self.mul(x, &self.mul(y, z)))
    }

    pub fn jacobi(&self) -> bool {
        self.triples().all(|(x, y, z)| {
            let s = self.add(
                &self.add(&self.mul(x, &self.mul(y, z)), &self.mul(y, &self.mul(z, x))),
                &self.mul(z, &self.mul(x, y)),
            );
            Self::is_zero(&s)
        })
    }

    pub fn two_step(&self) -> bool {
        self.triples().all(|(x, y, z)| {
            Self::is_zero(&self.mul(&self.mul(x, y), z)) && Self::is_zero(&self.mul(x, &self.mul(y, z)))
        })
    }

    pub fn unit(&self) -> Option<Vector> {
        self.elements
            .iter()
            .find(|e| self.elements.iter().all(|x| self.mul(e, x) == *x && self.mul(x, e) == *x))
            .cloned()
    }

    /// Additive closure of a set of vectors.
    pub fn span(&self, gens: impl IntoIterator<Item = Vector>) -> BTreeSet<Vector> {
        let gens: Vec<Vector> = gens.into_iter().collect();
        let mut set: BTreeSet<Vector> = BTreeSet::from([self.zero()]);
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = self.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Least `k` with `A^k = 0` for left-normed powers.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut power: BTreeSet<Vector> = self.elements.iter().cloned().collect();
        for k in 1..=self.d + 1 {
            if power.iter().all(|x| Self::is_zero(x)) {
                return Some(k);
            }
            power = self.span(power.iter().flat_map(|x| self.elements.iter().map(move |y| self.mul(x, y))));
        }
        None
    }

    pub fn units(&self, one: &[u64]) -> BTreeSet<Vector> {
        self.elements
            .iter()
            .filter(|x| self.elements.iter().any(|y| self.mul(x, y) == one && self.mul(y, x) == one))
            .cloned()
            .collect()
    }

    /// Commutative, associative, unital, nonzero, and the non-units form an additive group.
    pub fn local(&self) -> Option<BTreeSet<Vector>> {
        if !self.commutative() || !self.associative() {
            return None;
        }
        let one = self.unit()?;
        if Self::is_zero(&one) {
            return None;
        }
        let units = self.units(&one);
        let non_units: BTreeSet<Vector> = self.elements.iter().filter(|x| !units.contains(*x)).cloned().collect();
        let closed = non_units
            .iter()
            .all(|x| non_units.iter().all(|y| non_units.contains(&self.add(x, y))));
        closed.then_some(non_units)
    }

    fn pairs(&self) -> impl Iterator<Item = (&Vector, &Vector)> {
        self.elements.iter().flat_map(move |x| self.elements.iter().map(move |y| (x, y)))
    }

    fn triples(&self) -> impl Iterator<Item = (&Vector, &Vector, &Vector)> {
        self.pairs().flat_map(move |(x, y)| self.elements.iter().map(move |z| (x, y, z)))
    }
}

/// Library scalars to residues.
pub fn residues(f: &FieldSpec, v: &[Scalar]) -> Vector {
    v.iter().map(|c| f.index_of(c)).collect()
}

/// A random structure-constant algebra with the given density of nonzero entries.
pub fn random_algebra(p: u64, d: usize, seed: u64) -> Algebra {
    let f = FieldSpec::prime(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = AlgebraBuilder::new(&f, indexed_names("e", d));
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if rng.gen_bool(0.3) {
                    b.add_int(i, j, k, rng.gen_range(1..p as i64));
                }
            }
        }
    }
    b.build()
}

/// A random alternating algebra, Lie or not.
pub fn random_alternating(p: u64, d: usize, seed: u64) -> Algebra {
    let f = FieldSpec::prime(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = AlgebraBuilder::new(&f, indexed_names("e", d));
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..d {
                if rng.gen_bool(0.4) {
                    let c = rng.gen_range(1..p as i64);
                    b.add_int(i, j, k, c).add_int(j, i, k, -c);
                }
            }
        }
    }
    b.build()
}

/// Algebras over GF(2) and GF(3) with at most 81 elements.
pub fn small_corpus() -> Vec<(String, Construction)> {
    let gf2 = FieldSpec::prime(2).unwrap();
    let gf3 = FieldSpec::prime(3).unwrap();
    let mut out: Vec<(String, Construction)> = Vec::new();
    let mut push = |name: String, c: Construction| out.push((name, c));
    for (f, tag) in [(&gf2, "GF(2)"), (&gf3, "GF(3)")] {
        push(format!("field {tag}"), Construction::plain(field_algebra(f), ConstructionKind::Field));
        push(format!("heisenberg {tag}"), heisenberg(f, 1).unwrap());
        push(format!("two_dim_lie {tag}"), two_dim_lie(f));
        push(format!("trivial_mult(2) {tag}"), trivial_mult(f, 2));
        push(format!("truncated_poly(2) {tag}"), truncated_poly(f, 2).unwrap());
        push(format!("truncated_poly(3) {tag}"), truncated_poly(f, 3).unwrap());
        push(format!("matrix_algebra(2) {tag}"), matrix_algebra(f, 2).unwrap());
        push(format!("matrix_lie(2) {tag}"), matrix_lie(f, 2).unwrap());
        let tp = truncated_poly(f, 3).unwrap();
        let m = tp.subspace(strucalg::constructions::MAXIMAL_IDEAL).unwrap().clone();
        let (m_alg, _) = tp.algebra.subalgebra(&m).unwrap();
        push(format!("local_sum(x,x^2) {tag}"), local_sum(f, &m_alg).unwrap());
    }
    push("truncated_poly(4) GF(2)".into(), truncated_poly(&gf2, 4).unwrap());
    push("truncated_poly(6) GF(2)".into(), truncated_poly(&gf2, 6).unwrap());
    push("trivial_mult(4) GF(3)".into(), trivial_mult(&gf3, 4));
    push("semidirect_double(h3) GF(2)".into(), semidirect_double(&heisenberg(&gf2, 1).unwrap().algebra).unwrap());
    for k in 1..=5 {
        push(format!("null_quadratic(2, {k})"), null_quadratic(2, k).unwrap());
    }
    for k in 1..=3 {
        push(format!("null_quadratic(3, {k})"), null_quadratic(3, k).unwrap());
    }
    let prod = field_algebra(&gf3)
        .direct_product(&truncated_poly(&gf3, 2).unwrap().algebra)
        .unwrap();
    push("GF(3) x GF(3)[x]/(x^2)".into(), Construction::plain(prod, ConstructionKind::DirectProduct));
    for seed in 0..6 {
        push(format!("random GF(2) dim 4 seed {seed}"), Construction::plain(random_algebra(2, 4, seed), ConstructionKind::Loaded));
        push(format!("random GF(3) dim 3 seed {seed}"), Construction::plain(random_algebra(3, 3, seed), ConstructionKind::Loaded));
        push(
            format!("random alternating GF(3) dim 4 seed {seed}"),
            Construction::plain(random_alternating(3, 4, seed), ConstructionKind::Loaded),
        );
        push(
            format!("random alternating GF(2) dim 5 seed {seed}"),
            Construction::plain(random_alternating(2, 5, seed), ConstructionKind::Loaded),
        );
    }
    out
}

fn subspace_set(f: &FieldSpec, s: &strucalg::Subspace) -> BTreeSet<Vector> {
    s.elements().unwrap().iter().map(|v| residues(f, v)).collect()
}

/// Every disagreement between the library and the brute-force oracle.
pub fn oracle_mismatches(c: &Construction) -> Vec<String> {
    use strucalg::finite::FiniteRing;
    use strucalg::invariants::{annihilator_full, center_lie};
    use strucalg::local_rings::{is_local, is_local_finite};

    let a = &c.algebra;
    let f = a.field();
    let o = Oracle::new(a);
    let ax = a.axioms();
    let mut out = Vec::new();
    let mut cmp = |what: &str, lib: String, oracle: String| {
        if lib != oracle {
            out.push(format!("{what}: library {lib}, oracle {oracle}"));
        }
    };
    let ann = o.annihilator();
    cmp("annihilator", format!("{:?}", subspace_set(f, &annihilator_full(a))), format!("{ann:?}"));
    let alternating = o.alternating();
    let jacobi = o.jacobi();
    cmp("commutative", ax.commutative.to_string(), o.commutative().to_string());
    cmp("anticommutative", ax.anticommutative.to_string(), o.anticommutative().to_string());
    cmp("associative", ax.associative.to_string(), o.associative().to_string());
    cmp("alternating", ax.alternating.to_string(), alternating.to_string());
    cmp("jacobi", ax.jacobi.to_string(), jacobi.to_string());
    cmp("lie", ax.lie.to_string(), (alternating && jacobi).to_string());
    cmp("two-step", ax.two_step_nilpotent.to_string(), o.two_step().to_string());
    let unit = o.unit();
    cmp(
        "unit",
        format!("{:?}", ax.unit.as_ref().map(|u| residues(f, u.coords()))),
        format!("{unit:?}"),
    );
    cmp("nilpotency", format!("{:?}", ax.nilpotency_index), format!("{:?}", o.nilpotency_index()));
    if ax.lie {
        cmp("center", format!("{:?}", subspace_set(f, &center_lie(a))), format!("{ann:?}"));
    }
    let local = o.local();
    if ax.associative {
        let ring = FiniteRing::from_algebra(a).unwrap();
        let lib = is_local_finite(&ring).map(|r| r.is_local).unwrap_or(false);
        cmp("is_local (finite ring)", lib.to_string(), local.is_some().to_string());
    }
    if let Some(m) = c.subspace(strucalg::constructions::MAXIMAL_IDEAL) {
        let expected = local.as_ref().is_some_and(|nu| *nu == subspace_set(f, m));
        cmp("is_local (tagged m)", is_local(a, m).is_local.to_string(), expected.to_string());
    }
    out
}
