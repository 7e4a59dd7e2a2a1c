//! The group `x * y = x + y + ½[x, y]` on a two-step nilpotent Lie algebra,
//! its axiom checks, and recovery of the Lie algebra from the group.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AdditiveMap, Algebra, Element, StructureConstant};
use crate::error::{Error, Result};
use crate::exactmath::Scalar;
use crate::exec::Execution;
use crate::invariants::center_lie;

/// Largest group enumerated by the exhaustive check.
pub const EXHAUSTIVE_BOUND: u64 = 20_000;
/// Largest group for which the full multiplication table is precomputed.
pub const STAR_TABLE_BOUND: u64 = 4_096;
/// Star powers are compared with sums up to this exponent.
pub const POWER_BOUND: u64 = 10;

#[derive(Debug, Clone)]
pub struct BchGroup {
    lie: Algebra,
    half: Scalar,
}

impl BchGroup {
    pub fn new(lie: &Algebra) -> Result<Self> {
        let f = lie.field();
        if f.characteristic() == 2 {
            return Err(Error::precondition("½ unavailable in characteristic 2"));
        }
        let ax = lie.axioms();
        if !ax.lie {
            return Err(Error::hypothesis("Lie algebra", "product is not a Lie bracket"));
        }
        if !ax.two_step_nilpotent {
            return Err(Error::hypothesis("two-step nilpotent", "[[x, y], z] is not identically zero"));
        }
        let half = f.inv(&f.from_int(2)).expect("characteristic is not 2");
        Ok(BchGroup { lie: lie.clone(), half })
    }

    pub fn lie(&self) -> &Algebra {
        &self.lie
    }

    pub fn identity(&self) -> Element {
        self.lie.zero()
    }

    pub fn star(&self, x: &Element, y: &Element) -> Element {
        let a = &self.lie;
        let br = a.scale(&self.half, &a.mul(x, y));
        a.add(&a.add(x, y), &br)
    }

    pub fn inverse(&self, x: &Element) -> Element {
        self.lie.neg(x)
    }

    /// `x * y * x⁻¹ * y⁻¹`.
    pub fn group_commutator(&self, x: &Element, y: &Element) -> Element {
        let xy = self.star(x, y);
        self.star(&self.star(&xy, &self.inverse(x)), &self.inverse(y))
    }

    /// The `n`-fold star power.
    pub fn power(&self, x: &Element, n: u64) -> Element {
        (0..n).fold(self.identity(), |acc, _| self.star(&acc, x))
    }

    /// Addition read off from the group: `x * y * (−½ [x, y]_G)`.
    pub fn recovered_sum(&self, x: &Element, y: &Element) -> Element {
        let a = &self.lie;
        let c = self.group_commutator(x, y);
        let f = a.field();
        self.star(&self.star(x, y), &a.scale(&f.neg(&self.half), &c))
    }

    /// Bracket read off from the group: the group commutator.
    pub fn recovered_bracket(&self, x: &Element, y: &Element) -> Element {
        self.group_commutator(x, y)
    }

    /// The Lie algebra rebuilt from recovered brackets of basis elements.
    pub fn recover_lie(&self) -> Result<Algebra> {
        let a = &self.lie;
        let f = a.field();
        let n = a.dim();
        let mut constants = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = self.recovered_bracket(&a.basis(i), &a.basis(j));
                for (k, coeff) in c.coords().iter().enumerate() {
                    if !f.is_zero(coeff) {
                        constants.push(StructureConstant {
                            i,
                            j,
                            k,
                            coeff: coeff.clone(),
                        });
                    }
                }
            }
        }
        Algebra::new(f, a.names().to_vec(), constants)
    }

    /// Whether `σ(x * y) = σ(x) * σ(y)` on basis pairs and on `samples` random pairs.
    pub fn preserves_star(&self, sigma: &AdditiveMap, samples: usize, seed: u64) -> bool {
        let pairs = self.test_pairs(samples, seed);
        pairs.iter().all(|(x, y)| {
            sigma.apply_element(&self.star(x, y)) == self.star(&sigma.apply_element(x), &sigma.apply_element(y))
        })
    }

    fn random_element(&self, rng: &mut ChaCha8Rng) -> Element {
        let f = self.lie.field();
        Element::new((0..self.lie.dim()).map(|_| f.random(rng)).collect())
    }

    /// Basis pairs followed by `samples` seeded random pairs.
    fn test_pairs(&self, samples: usize, seed: u64) -> Vec<(Element, Element)> {
        let a = &self.lie;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<(Element, Element)> = (0..a.dim())
            .flat_map(|i| (0..a.dim()).map(move |j| (i, j)))
            .map(|(i, j)| (a.basis(i), a.basis(j)))
            .collect();
        for _ in 0..samples {
            out.push((self.random_element(&mut rng), self.random_element(&mut rng)));
        }
        out
    }

    /// Number of group elements over a finite field.
    pub fn order(&self) -> Option<u64> {
        let q = self.lie.field().size()?;
        q.checked_pow(self.lie.dim() as u32)
    }

    fn element_at(&self, mut idx: u64) -> Element {
        let f = self.lie.field();
        let q = f.size().expect("finite field");
        Element::new(
            (0..self.lie.dim())
                .map(|_| {
                    let c = f.element_at(idx % q);
                    idx /= q;
                    c
                })
                .collect(),
        )
    }

    fn index_of(&self, x: &Element) -> u64 {
        let f = self.lie.field();
        let q = f.size().expect("finite field");
        x.coords().iter().rev().fold(0, |acc, c| acc * q + f.index_of(c))
    }

    fn enumerate(&self) -> Result<Vec<Element>> {
        let n = self.order().ok_or_else(|| Error::Unsupported("enumeration over an infinite field".into()))?;
        if n > EXHAUSTIVE_BOUND {
            return Err(Error::TooLarge {
                size: n as u128,
                bound: EXHAUSTIVE_BOUND as u128,
            });
        }
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    /// Central elements of the group, by enumeration.
    pub fn group_center(&self) -> Result<Vec<Element>> {
        let elems = self.enumerate()?;
        let gens: Vec<Element> = self.lie.basis_elements();
        let keep = Execution::default().filter(elems.len(), |i| {
            let x = &elems[i];
            gens.iter().all(|g| self.star(x, g) == self.star(g, x))
        });
        Ok(keep.into_iter().map(|i| elems[i].clone()).collect())
    }

    /// Whether the group center equals the Lie center as sets.
    pub fn center_matches(&self) -> Result<bool> {
        let group: HashSet<Element> = self.group_center()?.into_iter().collect();
        let lie: HashSet<Element> = center_lie(&self.lie).elements()?.into_iter().map(Element::new).collect();
        Ok(group == lie)
    }

    pub fn check_group(&self, mode: CheckMode) -> Result<GroupReport> {
        self.check_group_with(mode, Execution::default())
    }

    pub fn check_group_with(&self, mode: CheckMode, exec: Execution) -> Result<GroupReport> {
        match mode {
            CheckMode::Exhaustive => self.check_exhaustive(exec),
            CheckMode::Random { samples, seed } => Ok(self.check_random(samples, seed)),
        }
    }

    fn check_exhaustive(&self, exec: Execution) -> Result<GroupReport> {
        let elems = self.enumerate()?;
        let n = elems.len();
        let mut rep = GroupReport::new("exhaustive", Some(n as u64));
        let zero = self.identity();
        rep.identity = exec.all(n, |i| self.star(&elems[i], &zero) == elems[i] && self.star(&zero, &elems[i]) == elems[i]);
        rep.inverses = exec.all(n, |i| {
            let inv = self.inverse(&elems[i]);
            self.star(&elems[i], &inv) == zero && self.star(&inv, &elems[i]) == zero
        });
        rep.powers_equal_sums = exec.all(n, |i| self.powers_ok(&elems[i]));
        if (n as u64) <= STAR_TABLE_BOUND {
            let table: Vec<Vec<u32>> = exec.map(n, |i| {
                elems.iter().map(|y| self.index_of(&self.star(&elems[i], y)) as u32).collect()
            });
            rep.commutator_is_bracket = exec.all(n, |i| {
                (0..n).all(|j| self.group_commutator(&elems[i], &elems[j]) == self.lie.mul(&elems[i], &elems[j]))
            });
            let bad = exec.find_map_first(n, |a| {
                let row = &table[a];
                (0..n).find_map(|b| {
                    let ab = row[b] as usize;
                    (0..n)
                        .find(|&c| table[ab][c] != row[table[b][c] as usize])
                        .map(|c| (a, b, c))
                })
            });
            rep.associative = bad.is_none();
            if let Some((a, b, c)) = bad {
                rep.counterexample = Some(self.describe(&[&elems[a], &elems[b], &elems[c]]));
            }
        } else {
            rep.commutator_is_bracket = self.commutators_ok(&self.test_pairs(0, 0));
            let bad = exec.find_map_first(n, |a| {
                (0..n).find_map(|b| {
                    let ab = self.star(&elems[a], &elems[b]);
                    (0..n)
                        .find(|&c| self.star(&ab, &elems[c]) != self.star(&elems[a], &self.star(&elems[b], &elems[c])))
                        .map(|c| (a, b, c))
                })
            });
            rep.associative = bad.is_none();
            if let Some((a, b, c)) = bad {
                rep.counterexample = Some(self.describe(&[&elems[a], &elems[b], &elems[c]]));
            }
        }
        rep.triples_checked = (n as u64).pow(3);
        Ok(rep)
    }

    fn check_random(&self, samples: usize, seed: u64) -> GroupReport {
        let mut rep = GroupReport::new("random", self.order());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples: Vec<[Element; 3]> = (0..samples)
            .map(|_| {
                [
                    self.random_element(&mut rng),
                    self.random_element(&mut rng),
                    self.random_element(&mut rng),
                ]
            })
            .collect();
        let zero = self.identity();
        rep.identity = triples.iter().all(|[x, ..]| self.star(x, &zero) == *x && self.star(&zero, x) == *x);
        rep.inverses = triples.iter().all(|[x, ..]| {
            let inv = self.inverse(x);
            self.star(x, &inv) == zero && self.star(&inv, x) == zero
        });
        rep.powers_equal_sums = triples.iter().all(|[x, ..]| self.powers_ok(x));
        rep.commutator_is_bracket = self.commutators_ok(&self.test_pairs(samples, seed ^ 0x9e37_79b9));
        let bad = triples
            .iter()
            .find(|[x, y, z]| self.star(&self.star(x, y), z) != self.star(x, &self.star(y, z)));
        rep.associative = bad.is_none();
        rep.counterexample = bad.map(|[x, y, z]| self.describe(&[x, y, z]));
        rep.triples_checked = samples as u64;
        rep
    }

    fn powers_ok(&self, x: &Element) -> bool {
        let a = &self.lie;
        let mut p = self.identity();
        let mut s = self.identity();
        (1..=POWER_BOUND).all(|_| {
            p = self.star(&p, x);
            s = a.add(&s, x);
            p == s
        })
    }

    fn commutators_ok(&self, pairs: &[(Element, Element)]) -> bool {
        pairs.iter().all(|(x, y)| self.group_commutator(x, y) == self.lie.mul(x, y))
    }

    fn describe(&self, xs: &[&Element]) -> String {
        let parts: Vec<String> = xs.iter().map(|x| self.lie.format_element(x)).collect();
        format!("({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub mode: String,
    pub order: Option<u64>,
    pub triples_checked: u64,
    pub associative: bool,
    pub identity: bool,
    pub inverses: bool,
    /// `x * ⋯ * x = x + ⋯ + x` up to [`POWER_BOUND`] factors.
    pub powers_equal_sums: bool,
    pub commutator_is_bracket: bool,
    pub counterexample: Option<String>,
}

impl GroupReport {
    fn new(mode: &str, order: Option<u64>) -> Self {
        GroupReport {
            mode: mode.into(),
            order,
            triples_checked: 0,
            associative: false,
            identity: false,
            inverses: false,
            powers_equal_sums: false,
            commutator_is_bracket: false,
            counterexample: None,
        }
    }

    pub fn holds(&self) -> bool {
        self.associative && self.identity && self.inverses && self.powers_equal_sums && self.commutator_is_bracket
    }
}
