//! Local rings: the locality test, characteristic, multiplicative
//! representatives, idempotent decomposition, Cohen splits, the
//! interpretable field on ann(m) of a truncated-polynomial ring, and the
//! criterion `m = ann(m)`.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::automorphisms::{Claim, LocalData};
use crate::constructions::{
    local_sum, triangular, truncated_poly, Construction, ConstructionKind, MAXIMAL_IDEAL, MODULE, SPLIT,
};
use crate::constructions::TriangularParts;
use crate::error::{Error, Result};
use crate::exactmath::{unit_vector, FieldSpec, Matrix, Scalar, Subspace};
use crate::finite::{FiniteRing, Residues};
use crate::invariants::nilpotency_of;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalReport {
    pub clauses: Vec<Claim>,
    pub nilpotency: Option<usize>,
    /// Size of R/m over a finite field, else its dimension over the scalars.
    pub residue: String,
    pub is_local: bool,
}

impl LocalReport {
    fn finish(clauses: Vec<Claim>, nilpotency: Option<usize>, residue: String) -> Self {
        let is_local = clauses.iter().all(|c| c.holds);
        LocalReport {
            clauses,
            nilpotency,
            residue,
            is_local,
        }
    }

    pub fn failed(&self) -> Vec<&str> {
        self.clauses.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect()
    }
}

/// Inverse of `x` in a unital associative algebra, by solving `x·y = 1`.
fn algebra_inverse(a: &Algebra, unit: &Element, x: &[Scalar]) -> Option<Vec<Scalar>> {
    let y = a.left_mult_matrix(x).solve(unit.coords())?;
    (a.mul_vec(&y, x) == unit.coords()).then_some(y)
}

fn residue_is_field(q: &Algebra) -> (bool, String) {
    let f = q.field();
    if q.dim() == 0 {
        return (false, "R/m is zero".into());
    }
    let Some(unit) = q.find_unit() else {
        return (false, "R/m has no unit".into());
    };
    if !q.axioms().commutative || !q.axioms().associative {
        return (false, "R/m is not commutative and associative".into());
    }
    if f.is_finite() {
        match q.full_space().elements() {
            Ok(elems) => {
                let bad = elems
                    .iter()
                    .find(|x| x.iter().any(|c| !f.is_zero(c)) && algebra_inverse(q, &unit, x).is_none());
                match bad {
                    None => (true, format!("{} classes, every nonzero class invertible", elems.len())),
                    Some(x) => (false, format!("{} is not invertible", q.format_element(&Element::new(x.clone())))),
                }
            }
            Err(e) => (false, e.to_string()),
        }
    } else if q.dim() == 1 {
        (true, "one-dimensional with invertible generator".into())
    } else {
        (false, "not decided: infinite residue ring of dimension above 1".into())
    }
}

/// Whether `m` is a nilpotent ideal with field quotient in a commutative unital algebra.
pub fn is_local(a: &Algebra, m: &Subspace) -> LocalReport {
    let ax = a.axioms();
    let mut clauses = vec![Claim::new(
        "commutative unital",
        ax.commutative && ax.associative && ax.unit.is_some(),
        "commutative, associative, with unit",
    )];
    let ideal = m.ambient_dim() == a.dim() && a.is_ideal(m);
    let proper = ax.unit.as_ref().is_none_or(|u| !m.contains(u.coords()));
    clauses.push(Claim::new("m is an ideal", ideal && proper, "proper two-sided ideal"));
    let nil = if ideal { nilpotency_of(a, m) } else { None };
    clauses.push(Claim::new(
        "m nilpotent",
        nil.is_some(),
        match nil {
            Some(k) => format!("m^{k} = 0"),
            None => "no power of m vanishes".into(),
        },
    ));
    let (field, detail, residue) = if ideal && proper {
        match a.quotient(m) {
            Ok((q, _)) => {
                let (ok, d) = residue_is_field(&q);
                let residue = match a.field().size() {
                    Some(s) => format!("{}", (s as u128).pow(q.dim() as u32)),
                    None => format!("dimension {}", q.dim()),
                };
                (ok, d, residue)
            }
            Err(e) => (false, e.to_string(), String::new()),
        }
    } else {
        (false, "m is not a proper ideal".into(), String::new())
    };
    clauses.push(Claim::new("R/m is a field", field, detail));
    LocalReport::finish(clauses, nil, residue)
}

/// Locality of a finite ring: the non-units form a nilpotent ideal.
pub fn is_local_finite(r: &FiniteRing) -> Result<LocalReport> {
    let unital = r.one().is_some();
    let mut clauses = vec![Claim::new(
        "commutative unital",
        r.is_commutative() && r.is_associative() && unital,
        "commutative, associative, with unit",
    )];
    if !unital {
        return Ok(LocalReport::finish(clauses, None, String::new()));
    }
    let m = r.non_units()?;
    let closed = r.subgroup(&m)?.len() == m.len();
    let ideal = closed && {
        let elems = r.elements()?;
        let set: HashSet<&Residues> = m.iter().collect();
        (0..r.dim()).all(|i| m.iter().all(|x| set.contains(&r.mul(&r.basis(i), x))))
            && !elems.is_empty()
    };
    clauses.push(Claim::new("m is an ideal", ideal, format!("{} non-units", m.len())));
    let bound = 64 - (r.size() as u64).leading_zeros() as usize + 1;
    let nil = if ideal { r.nilpotency_of(&m, bound)? } else { None };
    clauses.push(Claim::new(
        "m nilpotent",
        nil.is_some(),
        match nil {
            Some(k) => format!("m^{k} = 0"),
            None => "no power of m vanishes".into(),
        },
    ));
    clauses.push(Claim::new(
        "R/m is a field",
        ideal,
        "every element outside m is a unit",
    ));
    let residue = (r.size() / m.len() as u128).to_string();
    Ok(LocalReport::finish(clauses, nil, residue))
}

/// Additive order of 1: the scalar characteristic for a unital algebra.
pub fn characteristic(a: &Algebra) -> Result<u64> {
    if a.find_unit().is_none() {
        return Err(Error::precondition("algebra has no unit"));
    }
    Ok(a.field().characteristic())
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..).find(|d| n.is_multiple_of(*d) || d * d > n).map_or(n, |d| if n.is_multiple_of(d) { d } else { n })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representative {
    pub class: String,
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Teichmuller {
    pub p: u64,
    pub n: u32,
    /// Elements of X = {b^(p^n)}, in index order.
    pub set: Vec<Residues>,
    pub display: Vec<String>,
    pub representatives: Vec<Representative>,
    pub unique: bool,
    pub closed: bool,
    pub powers_at_every_level: bool,
    pub multiplicative: bool,
}

impl Teichmuller {
    pub fn holds(&self) -> bool {
        self.unique && self.closed && self.powers_at_every_level && self.multiplicative
    }
}

/// The set `X = {b^(p^n)}` of multiplicative representatives in a finite local ring with `m^n = 0`.
pub fn mult_representatives(r: &FiniteRing, n: u32) -> Result<Teichmuller> {
    let local = is_local_finite(r)?;
    if !local.is_local {
        return Err(Error::precondition(format!("ring is not local: {}", local.failed().join(", "))));
    }
    let ch = r.characteristic().expect("unital");
    let p = smallest_prime_factor(ch);
    if ch != p.pow(ch.ilog(p)) {
        return Err(Error::precondition(format!("characteristic {ch} is not a prime power")));
    }
    let m = r.non_units()?;
    match local.nilpotency {
        Some(k) if k <= n as usize => {}
        _ => return Err(Error::hypothesis("m^n = 0", format!("m^{n} is nonzero"))),
    }
    let elems = r.elements()?;
    let frob = |x: &[u64], k: u32| -> Result<Residues> {
        let mut y = x.to_vec();
        for _ in 0..k {
            y = r.pow(&y, p)?;
        }
        Ok(y)
    };
    let class_of = |x: &[u64]| -> u64 { m.iter().map(|y| r.index_of(&r.add(x, y))).min().expect("0 in m") };
    let mut xs: BTreeSet<u64> = BTreeSet::new();
    for b in &elems {
        xs.insert(r.index_of(&frob(b, n)?));
    }
    let set: Vec<Residues> = xs.iter().map(|&i| r.element_at(i)).collect();
    let mut by_class: HashMap<u64, Vec<u64>> = HashMap::new();
    for x in &set {
        by_class.entry(class_of(x)).or_default().push(r.index_of(x));
    }
    let classes = r.size() / m.len() as u128;
    let unique = by_class.len() as u128 == classes && by_class.values().all(|v| v.len() == 1);
    if !unique {
        return Err(Error::hypothesis(
            "unique multiplicative representative",
            format!("{} classes meet X in {} elements", classes, set.len()),
        ));
    }
    let closed = set.iter().all(|x| set.iter().all(|y| xs.contains(&r.index_of(&r.mul(x, y)))));
    let mut powers_at_every_level = true;
    for k in 0..=n {
        let level: HashSet<u64> = elems.iter().map(|b| frob(b, k).map(|y| r.index_of(&y))).collect::<Result<_>>()?;
        powers_at_every_level &= xs.iter().all(|i| level.contains(i));
    }
    let rep = |class: u64| r.element_at(by_class[&class][0]);
    let multiplicative = set.iter().all(|x| {
        set.iter().all(|y| {
            let xy = r.mul(x, y);
            rep(class_of(&xy)) == xy
        })
    });
    let mut representatives: Vec<(u64, Representative)> = by_class
        .iter()
        .map(|(&c, v)| {
            (
                c,
                Representative {
                    class: r.format(&r.element_at(c)),
                    element: r.format(&r.element_at(v[0])),
                },
            )
        })
        .collect();
    representatives.sort_by_key(|(c, _)| *c);
    Ok(Teichmuller {
        p,
        n,
        display: set.iter().map(|x| r.format(x)).collect(),
        set,
        representatives: representatives.into_iter().map(|(_, r)| r).collect(),
        unique,
        closed,
        powers_at_every_level,
        multiplicative,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub unit: Residues,
    pub unit_display: String,
    /// Elements of R·u, in index order.
    pub elements: Vec<Residues>,
    pub size: usize,
    pub is_local: bool,
    pub is_field: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub idempotents: usize,
    pub factors: Vec<Factor>,
    pub orthogonal: bool,
    pub sum_is_one: bool,
    pub reassembly_bijective: bool,
    pub reassembly_multiplicative: bool,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.orthogonal && self.sum_is_one && self.reassembly_bijective && self.reassembly_multiplicative
    }
}

fn factor_units(r: &FiniteRing, u: &[u64], elems: &[Residues]) -> usize {
    elems.iter().filter(|x| elems.iter().any(|y| r.mul(x, y) == u)).count()
}

/// Primitive orthogonal idempotents and the factors `R·uᵢ`.
pub fn idempotent_decomposition(r: &FiniteRing) -> Result<Decomposition> {
    let one = r.one().ok_or_else(|| Error::precondition("ring has no unit"))?;
    if !r.is_commutative() || !r.is_associative() {
        return Err(Error::precondition("ring is not commutative and associative"));
    }
    let elems = r.elements()?;
    let idem = r.idempotents()?;
    let atoms: Vec<Residues> = idem
        .iter()
        .filter(|e| !r.is_zero(e) && idem.iter().all(|f| {
            let fe = r.mul(f, e);
            r.is_zero(&fe) || fe == **e
        }))
        .cloned()
        .collect();
    let orthogonal = atoms
        .iter()
        .enumerate()
        .all(|(i, a)| atoms.iter().enumerate().all(|(j, b)| i == j || r.is_zero(&r.mul(a, b))));
    let sum_is_one = atoms.iter().fold(r.zero(), |acc, a| r.add(&acc, a)) == one;
    let factors: Vec<Factor> = atoms
        .iter()
        .map(|u| {
            let mut set: Vec<Residues> = elems
                .iter()
                .map(|a| r.mul(a, u))
                .collect::<HashSet<_>>()
                .into_iter()
                .collect();
            set.sort_by_key(|x| r.index_of(x));
            let units = factor_units(r, u, &set);
            let non_units: Vec<Residues> = set
                .iter()
                .filter(|x| !set.iter().any(|y| r.mul(x, y) == *u))
                .cloned()
                .collect();
            let nu: HashSet<&Residues> = non_units.iter().collect();
            let is_local = non_units.iter().all(|x| non_units.iter().all(|y| nu.contains(&r.add(x, y))));
            Factor {
                unit_display: r.format(u),
                unit: u.clone(),
                size: set.len(),
                is_field: units + 1 == set.len(),
                is_local,
                elements: set,
            }
        })
        .collect();
    let images: HashSet<Vec<Residues>> = elems
        .iter()
        .map(|a| atoms.iter().map(|u| r.mul(a, u)).collect())
        .collect();
    let product: u128 = factors.iter().map(|f| f.size as u128).product();
    let reassembly_bijective = images.len() == elems.len() && product == r.size();
    let pairs: Vec<(Residues, Residues)> = if elems.len() <= 1024 {
        elems.iter().flat_map(|a| elems.iter().map(move |b| (a.clone(), b.clone()))).collect()
    } else {
        (0..r.dim())
            .flat_map(|i| (0..r.dim()).map(move |j| (r.basis(i), r.basis(j))))
            .collect()
    };
    let reassembly_multiplicative = pairs.iter().all(|(a, b)| {
        let ab = r.mul(a, b);
        atoms
            .iter()
            .all(|u| r.mul(&ab, u) == r.mul(&r.mul(a, u), &r.mul(b, u)) && r.mul(&r.add(a, b), u) == r.add(&r.mul(a, u), &r.mul(b, u)))
    });
    Ok(Decomposition {
        idempotents: idem.len(),
        factors,
        orthogonal,
        sum_is_one,
        reassembly_bijective,
        reassembly_multiplicative,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CohenReport {
    pub clauses: Vec<Claim>,
    pub passes: bool,
    /// The multiplication of the retagged Λ(k, m) equals R's in the new basis.
    pub retag_matches: Option<bool>,
    #[serde(skip)]
    pub retagged: Option<Construction>,
}

fn basis_names(a: &Algebra, vectors: &[Vec<Scalar>], prefix: &str) -> Vec<String> {
    let f = a.field();
    vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let ones: Vec<usize> = (0..v.len()).filter(|&j| !f.is_zero(&v[j])).collect();
            if ones.len() == 1 && f.is_one(&v[ones[0]]) {
                a.names()[ones[0]].clone()
            } else {
                format!("{prefix}{}", i + 1)
            }
        })
        .collect()
}

/// Checks that `k` is a subfield complementing the maximal ideal and mapping
/// onto the residue field, then retags R as Λ(k, m).
pub fn cohen_split_check(c: &Construction, k: &Subspace) -> Result<CohenReport> {
    let a = &c.algebra;
    let f = a.field();
    let m = c.require_subspace(MAXIMAL_IDEAL)?;
    let unit = a.find_unit().ok_or_else(|| Error::precondition("ring has no unit"))?;
    if k.ambient_dim() != a.dim() {
        return Err(Error::Dimension {
            expected: a.dim(),
            found: k.ambient_dim(),
        });
    }
    let mut clauses = vec![
        Claim::new("k contains 1", k.contains(unit.coords()), "unit of R lies in k"),
        Claim::new("k closed under multiplication", a.is_subalgebra(k), "k·k ⊆ k"),
    ];
    let samples: Vec<Vec<Scalar>> = match k.elements() {
        Ok(all) => all,
        Err(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let mut v = k.basis_vectors();
            for _ in 0..32 {
                let coeffs: Vec<Scalar> = (0..k.dim()).map(|_| f.random(&mut rng)).collect();
                v.push(k.combine(&coeffs));
            }
            v
        }
    };
    let bad = samples
        .iter()
        .filter(|x| x.iter().any(|c| !f.is_zero(c)))
        .find(|x| algebra_inverse(a, &unit, x).is_none_or(|y| !k.contains(&y)));
    clauses.push(Claim::new(
        "k closed under inversion",
        bad.is_none(),
        match bad {
            None => format!("{} nonzero elements checked", samples.len().saturating_sub(1)),
            Some(x) => format!("{} has no inverse in k", a.format_element(&Element::new(x.clone()))),
        },
    ));
    let meet = k.intersect(m)?;
    let sum = k.sum(m)?;
    clauses.push(Claim::new("k ∩ m = 0", meet.is_zero(), format!("dim {}", meet.dim())));
    clauses.push(Claim::new("k + m = R", sum.is_full(), format!("dim {} of {}", sum.dim(), a.dim())));
    let (q, pi) = a.quotient(m)?;
    let images = Subspace::span(f, q.dim(), k.basis_vectors().iter().map(|v| pi.apply(v)));
    let kb = k.basis_vectors();
    let hom = kb.iter().all(|x| {
        kb.iter()
            .all(|y| pi.apply(&a.mul_vec(x, y)) == q.mul_vec(&pi.apply(x), &pi.apply(y)))
    }) && q.find_unit().is_some_and(|u| pi.apply(unit.coords()) == u.coords());
    let iso = hom && images.is_full() && k.dim() == q.dim();
    clauses.push(Claim::new(
        "k → R/m is an isomorphism",
        iso,
        format!("image of dimension {} in R/m of dimension {}", images.dim(), q.dim()),
    ));
    let passes = clauses.iter().all(|c| c.holds);
    let (retagged, retag_matches) = if passes {
        let mb = m.basis_vectors();
        let mut cols = kb.clone();
        cols.extend(mb.iter().cloned());
        let mut names = basis_names(a, &kb, "k");
        names.extend(basis_names(a, &mb, "m"));
        let changed = a.change_basis(&Matrix::from_columns(f, a.dim(), &cols), names)?;
        let parts = TriangularParts::from_algebra(&changed, k.dim())?;
        let mut out = triangular(&parts.ring, &parts.module, &parts.action)?;
        let matches = out.algebra == changed;
        let module = out.require_subspace(MODULE)?.clone();
        out.subspaces.insert(MAXIMAL_IDEAL.into(), module);
        out.subspaces.insert(SPLIT.into(), Subspace::coordinate(f, a.dim(), 0..k.dim()));
        (Some(out), Some(matches))
    } else {
        (None, None)
    };
    Ok(CohenReport {
        clauses,
        passes,
        retag_matches,
        retagged,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubfieldSearch {
    pub candidates: usize,
    /// Displays of the passing candidates' elements.
    pub passing: Vec<Vec<String>>,
}

/// Tests every subring generated by 1 and one element as a Cohen complement.
pub fn finite_subfield_search(r: &FiniteRing) -> Result<SubfieldSearch> {
    let one = r.one().ok_or_else(|| Error::precondition("ring has no unit"))?;
    let elems = r.elements()?;
    let m: HashSet<Residues> = r.non_units()?.into_iter().collect();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut passing = Vec::new();
    for a in &elems {
        let mut s = r.subgroup(&[one.clone(), a.clone()])?;
        loop {
            let next = r.subgroup(&r.product_set(&s, &s)?.into_iter().chain(s.iter().cloned()).collect::<Vec<_>>())?;
            if next.len() == s.len() {
                break;
            }
            s = next;
        }
        let key: Vec<u64> = s.iter().map(|x| r.index_of(x)).collect();
        if !seen.insert(key) {
            continue;
        }
        let is_field = s.iter().all(|x| r.is_zero(x) || s.iter().any(|y| r.mul(x, y) == one));
        let meet_zero = s.iter().all(|x| r.is_zero(x) || !m.contains(x));
        let spans = s.len() as u128 * m.len() as u128 == r.size();
        if is_field && meet_zero && spans {
            passing.push(s.iter().map(|x| r.format(x)).collect());
        }
    }
    Ok(SubfieldSearch {
        candidates: seen.len(),
        passing,
    })
}

/// `R = GF(p) ⊕ m` where `m = (x)` in `F[x]/(x³)` viewed over GF(p).
pub fn ring2_example(f: &FieldSpec) -> Result<Construction> {
    if !f.is_finite() {
        return Err(Error::precondition(format!("{f} is not finite")));
    }
    let t = truncated_poly(f, 3)?;
    let m = t.require_subspace(MAXIMAL_IDEAL)?;
    let (malg, _) = t.algebra.subalgebra(m)?;
    let malg = malg.renamed(vec!["x".into(), "x^2".into()])?;
    local_sum(&f.prime_subfield(), &malg.restrict_scalars()?)
}

/// Multiplication by `x` on m, in m-coordinates.
pub fn ring2_h(c: &Construction) -> Result<Matrix> {
    let a = &c.algebra;
    let ld = LocalData::new(c)?;
    let xi = a.index_of("x").ok_or_else(|| Error::precondition("ring has no basis element x"))?;
    let x = a.basis(xi);
    let cols: Vec<Vec<Scalar>> = (0..ld.m_dim())
        .map(|j| {
            let v = ld.from_m(&unit_vector(a.field(), ld.m_dim(), j));
            ld.decompose(&a.mul_vec(x.coords(), &v)).1
        })
        .collect();
    Ok(Matrix::from_columns(a.field(), ld.m_dim(), &cols))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterpField {
    pub size: usize,
    pub preimage_pairs_checked: u64,
    pub well_defined: bool,
    pub axioms: Vec<Claim>,
    pub unit: String,
    pub multiplicative_order: usize,
    pub cyclic_generator: Option<String>,
    pub isomorphic_to_field: bool,
}

impl InterpField {
    pub fn holds(&self) -> bool {
        self.well_defined && self.axioms.iter().all(|c| c.holds) && self.cyclic_generator.is_some() && self.isomorphic_to_field
    }
}

/// Largest ann(m) for which all preimage pairs are enumerated.
pub const INTERP_BOUND: usize = 64;

/// `a ⊙ b = a'·b'` on ann(m) for preimages `a', b'` under `h`, with the
/// field axioms and the isomorphism `αx² ↦ α` onto F checked exhaustively.
pub fn interp_field(c: &Construction, h: &Matrix, f: &FieldSpec) -> Result<InterpField> {
    let a = &c.algebra;
    let base = a.field();
    let ld = LocalData::new(c)?;
    let d = ld.m_dim();
    if !base.is_finite() || base.degree() != Some(1) || f.characteristic() != base.characteristic() {
        return Err(Error::hypothesis("ring shape", format!("R must be over GF({})", f.characteristic())));
    }
    if h.rows() != d || h.cols() != d {
        return Err(Error::Dimension { expected: d, found: h.rows() });
    }
    if Subspace::full(base, d).image(h) != ld.ann {
        return Err(Error::hypothesis("h maps onto ann(m)", "image of h differs from ann(m)"));
    }
    if h.kernel() != ld.ann {
        return Err(Error::hypothesis("kernel of h is ann(m)", "kernel of h differs from ann(m)"));
    }
    let k = f.degree().expect("finite");
    let x2: Vec<usize> = (0..k)
        .map(|s| {
            let name = match s {
                0 => "x^2".to_string(),
                1 => "g*x^2".to_string(),
                _ => format!("g^{s}*x^2"),
            };
            a.index_of(&name)
                .ok_or_else(|| Error::hypothesis("ring shape", format!("missing basis element {name}")))
        })
        .collect::<Result<_>>()?;
    let ann = ld.ann.elements()?;
    let q = ann.len();
    if q > INTERP_BOUND {
        return Err(Error::TooLarge {
            size: q as u128,
            bound: INTERP_BOUND as u128,
        });
    }
    let index: HashMap<Vec<Scalar>, usize> = ann.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let preimages: Vec<Vec<Vec<Scalar>>> = ann
        .iter()
        .map(|v| {
            let y0 = h.solve(v).expect("h maps onto ann(m)");
            ann.iter().map(|z| y0.iter().zip(z).map(|(s, t)| base.add(s, t)).collect()).collect()
        })
        .collect();
    let mul_m = |y: &[Scalar], z: &[Scalar]| ld.decompose(&a.mul_vec(&ld.from_m(y), &ld.from_m(z))).1;
    let mut table = vec![vec![0usize; q]; q];
    let mut well_defined = true;
    let mut checked = 0u64;
    for i in 0..q {
        for j in 0..q {
            let mut value: Option<usize> = None;
            for y in &preimages[i] {
                for z in &preimages[j] {
                    checked += 1;
                    let prod = mul_m(y, z);
                    match (index.get(&prod), value) {
                        (None, _) => well_defined = false,
                        (Some(&v), None) => value = Some(v),
                        (Some(&v), Some(w)) if v != w => well_defined = false,
                        _ => {}
                    }
                }
            }
            table[i][j] = value.unwrap_or(0);
        }
    }
    let add = |i: usize, j: usize| -> usize {
        let s: Vec<Scalar> = ann[i].iter().zip(&ann[j]).map(|(x, y)| base.add(x, y)).collect();
        index[&s]
    };
    let zero = index[&vec![base.zero(); d]];
    let all3 = |p: &dyn Fn(usize, usize, usize) -> bool| (0..q).all(|i| (0..q).all(|j| (0..q).all(|l| p(i, j, l))));
    let unit = (0..q).find(|&e| e != zero && (0..q).all(|i| table[e][i] == i && table[i][e] == i));
    let mut axioms = vec![
        Claim::new("commutative", (0..q).all(|i| (0..q).all(|j| table[i][j] == table[j][i])), "a⊙b = b⊙a"),
        Claim::new("associative", all3(&|i, j, l| table[table[i][j]][l] == table[i][table[j][l]]), "(a⊙b)⊙c = a⊙(b⊙c)"),
        Claim::new("distributive", all3(&|i, j, l| table[i][add(j, l)] == add(table[i][j], table[i][l])), "a⊙(b+c) = a⊙b + a⊙c"),
        Claim::new("unit", unit.is_some(), "nonzero e with e⊙a = a"),
    ];
    let inverses = unit.is_some_and(|e| (0..q).all(|i| i == zero || (0..q).any(|j| table[i][j] == e)));
    axioms.push(Claim::new("inverses", inverses, "every nonzero element invertible"));
    let order_of = |g: usize, e: usize| -> usize {
        let mut x = g;
        let mut n = 1;
        while x != e && n <= q {
            x = table[x][g];
            n += 1;
        }
        n
    };
    let cyclic_generator = unit.and_then(|e| {
        (0..q)
            .filter(|&g| g != zero)
            .find(|&g| order_of(g, e) == q - 1)
            .map(|g| a.format_element(&Element::new(ld.from_m(&ann[g]))))
    });
    let phi: Vec<Scalar> = ann
        .iter()
        .map(|v| {
            let r = ld.from_m(v);
            let digits: Vec<u64> = x2.iter().map(|&i| base.index_of(&r[i])).collect();
            f.from_prime_coordinates(&digits)
        })
        .collect();
    let bijective = phi.iter().collect::<HashSet<_>>().len() == q && f.size() == Some(q as u64);
    let isomorphic_to_field = bijective
        && (0..q).all(|i| {
            (0..q).all(|j| phi[table[i][j]] == f.mul(&phi[i], &phi[j]) && phi[add(i, j)] == f.add(&phi[i], &phi[j]))
        });
    Ok(InterpField {
        size: q,
        preimage_pairs_checked: checked,
        well_defined,
        axioms,
        unit: unit.map_or_else(String::new, |e| a.format_element(&Element::new(ld.from_m(&ann[e])))),
        multiplicative_order: q - 1,
        cyclic_generator,
        isomorphic_to_field,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsmReport {
    pub m_dim: usize,
    pub ann_dim: usize,
    pub m2_plus_ann_dim: usize,
    /// Codimension of m² + ann(m) in m.
    pub codim: usize,
    /// `m = ann(m)`.
    pub criterion_holds: bool,
}

/// Compares m with ann(m) in a local-sum tagged ring.
pub fn asm_criterion(c: &Construction) -> Result<AsmReport> {
    if c.kind != ConstructionKind::LocalSum && c.subspace(SPLIT).is_none() {
        return Err(Error::precondition("ring is not tagged as a local sum"));
    }
    let ld = LocalData::new(c)?;
    let w = ld.m2.sum(&ld.ann)?;
    Ok(AsmReport {
        m_dim: ld.m_dim(),
        ann_dim: ld.ann.dim(),
        m2_plus_ann_dim: w.dim(),
        codim: ld.m_dim() - w.dim(),
        criterion_holds: ld.ann.dim() == ld.m_dim(),
    })
}
