//! Finite rings on `Z/n₁ ⊕ ⋯ ⊕ Z/n_d` with integer structure constants.
//! Covers rings such as `Z/p^s` that are not algebras over a field, and
//! finite-field algebras after restriction of scalars.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Largest ring enumerated element by element.
pub const FINITE_BOUND: u64 = 1 << 16;

pub type Residues = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteRing {
    names: Vec<String>,
    moduli: Vec<u64>,
    /// `table[i][j][k]`: coefficient of `e_k` in `e_i e_j`, reduced mod `n_k`.
    table: Vec<Vec<Vec<u64>>>,
    #[serde(skip)]
    unit: OnceLock<Option<Residues>>,
}

impl FiniteRing {
    /// Validates that every product is compatible with the additive orders:
    /// `n_i (e_i e_j) = 0` and `n_j (e_i e_j) = 0`.
    pub fn new(names: Vec<String>, moduli: Vec<u64>, table: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let d = moduli.len();
        if names.len() != d || table.len() != d || table.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
            return Err(Error::Dimension {
                expected: d,
                found: table.len(),
            });
        }
        if moduli.iter().any(|&n| n < 2) {
            return Err(Error::InvalidAlgebra("additive orders must be at least 2".into()));
        }
        let mut table = table;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = table[i][j][k] % moduli[k];
                    table[i][j][k] = c;
                    for n in [moduli[i], moduli[j]] {
                        if !(c as u128 * n as u128).is_multiple_of(moduli[k] as u128) {
                            return Err(Error::InvalidAlgebra(format!(
                                "product {}*{} is incompatible with the additive orders",
                                names[i], names[j]
                            )));
                        }
                    }
                }
            }
        }
        Ok(FiniteRing {
            names,
            moduli,
            table,
            unit: OnceLock::new(),
        })
    }

    /// `Z/n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        FiniteRing::new(vec!["1".into()], vec![n], vec![vec![vec![1]]])
    }

    /// A finite-field algebra viewed as a ring on `GF(p)^d` after restriction of scalars.
    pub fn from_algebra(a: &Algebra) -> Result<Self> {
        let f = a.field();
        if !f.is_finite() {
            return Err(Error::Unsupported(format!("finite ring from an algebra over {f}")));
        }
        let r = a.restrict_scalars()?;
        let p = f.characteristic();
        let d = r.dim();
        let bf = r.field();
        let mut table = vec![vec![vec![0; d]; d]; d];
        for sc in r.constants() {
            table[sc.i][sc.j][sc.k] = bf.index_of(&sc.coeff);
        }
        FiniteRing::new(r.names().to_vec(), vec![p; d], table)
    }

    pub fn product(&self, other: &FiniteRing) -> Result<Self> {
        let d1 = self.dim();
        let d = d1 + other.dim();
        let mut names = self.names.clone();
        names.extend(other.names.iter().map(|n| format!("{n}'")));
        let mut moduli = self.moduli.clone();
        moduli.extend(&other.moduli);
        let mut table = vec![vec![vec![0; d]; d]; d];
        for (row, src) in table.iter_mut().zip(&self.table) {
            for (cell, s) in row.iter_mut().zip(src) {
                cell[..d1].copy_from_slice(s);
            }
        }
        for i in 0..other.dim() {
            for j in 0..other.dim() {
                table[d1 + i][d1 + j][d1..].copy_from_slice(&other.table[i][j]);
            }
        }
        FiniteRing::new(names, moduli, table)
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn size(&self) -> u128 {
        self.moduli.iter().map(|&n| n as u128).product()
    }

    fn require_enumerable(&self) -> Result<u64> {
        let s = self.size();
        if s > FINITE_BOUND as u128 {
            return Err(Error::TooLarge {
                size: s,
                bound: FINITE_BOUND as u128,
            });
        }
        Ok(s as u64)
    }

    pub fn zero(&self) -> Residues {
        vec![0; self.dim()]
    }

    pub fn basis(&self, i: usize) -> Residues {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Residues {
        a.iter().zip(b).zip(&self.moduli).map(|((x, y), n)| (x + y) % n).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Residues {
        a.iter().zip(&self.moduli).map(|(x, n)| (n - x) % n).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Residues {
        self.add(a, &self.neg(b))
    }

    pub fn times(&self, k: u64, a: &[u64]) -> Residues {
        a.iter()
            .zip(&self.moduli)
            .map(|(x, n)| ((*x as u128 * k as u128) % *n as u128) as u64)
            .collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Residues {
        let d = self.dim();
        let mut out = vec![0u128; d];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let ab = x as u128 * y as u128;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.table[i][j][k];
                    if c != 0 {
                        *o = (*o + ab % self.moduli[k] as u128 * c as u128) % self.moduli[k] as u128;
                    }
                }
            }
        }
        out.into_iter().map(|x| x as u64).collect()
    }

    pub fn pow(&self, a: &[u64], e: u64) -> Result<Residues> {
        let one = self.one().ok_or_else(|| Error::precondition("ring has no unit"))?;
        let mut acc = one;
        let mut base = a.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Mixed-radix index, first coordinate least significant.
    pub fn index_of(&self, a: &[u64]) -> u64 {
        a.iter().zip(&self.moduli).rev().fold(0, |acc, (x, n)| acc * n + x)
    }

    pub fn element_at(&self, mut idx: u64) -> Residues {
        self.moduli
            .iter()
            .map(|n| {
                let x = idx % n;
                idx /= n;
                x
            })
            .collect()
    }

    pub fn elements(&self) -> Result<Vec<Residues>> {
        let n = self.require_enumerable()?;
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    pub fn format(&self, a: &[u64]) -> String {
        if self.dim() == 1 {
            return a[0].to_string();
        }
        let terms: Vec<String> = a
            .iter()
            .zip(&self.names)
            .filter(|(x, _)| **x != 0)
            .map(|(x, n)| if *x == 1 { n.clone() } else { format!("{x}*{n}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Coordinates of an element of the algebra this ring was restricted from.
    pub fn from_element(&self, a: &Algebra, x: &Element) -> Residues {
        let f = a.field();
        x.coords().iter().flat_map(|c| f.prime_coordinates(c)).collect()
    }

    fn basis_all(&self, pred: impl Fn(usize, usize, usize) -> bool) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| pred(i, j, k))))
    }

    /// Checked on generators; the product is biadditive.
    pub fn is_commutative(&self) -> bool {
        self.basis_all(|i, j, _| self.table[i][j] == self.table[j][i])
    }

    pub fn is_associative(&self) -> bool {
        self.basis_all(|i, j, k| {
            let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
            self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
        })
    }

    /// The unit, found by search over the ring and cached.
    pub fn one(&self) -> Option<Residues> {
        self.unit.get_or_init(|| self.find_unit()).clone()
    }

    fn find_unit(&self) -> Option<Residues> {
        let n = self.require_enumerable().ok()?;
        let gens: Vec<Residues> = (0..self.dim()).map(|i| self.basis(i)).collect();
        Execution::default()
            .find_first(n as usize, |idx| {
                let u = self.element_at(idx as u64);
                gens.iter().all(|g| self.mul(&u, g) == *g && self.mul(g, &u) == *g)
            })
            .map(|idx| self.element_at(idx as u64))
    }

    /// Additive order of the unit.
    pub fn characteristic(&self) -> Option<u64> {
        let one = self.one()?;
        Some(
            one.iter()
                .zip(&self.moduli)
                .map(|(x, n)| n / x.gcd(n))
                .fold(1, |acc, o| acc.lcm(&o)),
        )
    }

    pub fn is_unit(&self, a: &[u64], one: &[u64], elems: &[Residues]) -> bool {
        elems.iter().any(|b| self.mul(a, b) == one && self.mul(b, a) == one)
    }

    pub fn inverse(&self, a: &[u64]) -> Result<Option<Residues>> {
        let one = self.one().ok_or_else(|| Error::precondition("ring has no unit"))?;
        let elems = self.elements()?;
        Ok(elems.into_iter().find(|b| self.mul(a, b) == one && self.mul(b, a) == one))
    }

    pub fn units(&self) -> Result<Vec<Residues>> {
        let one = self.one().ok_or_else(|| Error::precondition("ring has no unit"))?;
        let elems = self.elements()?;
        let keep = Execution::default().filter(elems.len(), |i| self.is_unit(&elems[i], &one, &elems));
        Ok(keep.into_iter().map(|i| elems[i].clone()).collect())
    }

    pub fn non_units(&self) -> Result<Vec<Residues>> {
        let units: HashSet<Residues> = self.units()?.into_iter().collect();
        Ok(self.elements()?.into_iter().filter(|x| !units.contains(x)).collect())
    }

    pub fn idempotents(&self) -> Result<Vec<Residues>> {
        let elems = self.elements()?;
        Ok(elems.into_iter().filter(|e| self.mul(e, e) == *e).collect())
    }

    /// Additive subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[Residues]) -> Result<Vec<Residues>> {
        self.require_enumerable()?;
        let mut seen: HashSet<Residues> = HashSet::new();
        let mut out = vec![self.zero()];
        seen.insert(self.zero());
        let mut i = 0;
        while i < out.len() {
            let x = out[i].clone();
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_by_key(|x| self.index_of(x));
        Ok(out)
    }

    /// Additive subgroup generated by all products `a b` with `a ∈ s`, `b ∈ t`.
    pub fn product_set(&self, s: &[Residues], t: &[Residues]) -> Result<Vec<Residues>> {
        let mut gens: HashSet<Residues> = HashSet::new();
        for a in s {
            for b in t {
                gens.insert(self.mul(a, b));
            }
        }
        let mut gens: Vec<Residues> = gens.into_iter().collect();
        gens.sort_by_key(|x| self.index_of(x));
        self.subgroup(&gens)
    }

    /// Least `k` with `s^k = 0`, up to `bound`.
    pub fn nilpotency_of(&self, s: &[Residues], bound: usize) -> Result<Option<usize>> {
        let mut power = s.to_vec();
        for k in 1..=bound {
            if power.iter().all(|x| self.is_zero(x)) {
                return Ok(Some(k));
            }
            power = self.product_set(&power, s)?;
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::truncated_poly;
    use crate::exactmath::FieldSpec;

    #[test]
    fn cyclic_rings() {
        let z9 = FiniteRing::cyclic(9).unwrap();
        assert_eq!(z9.characteristic(), Some(9));
        assert_eq!(z9.units().unwrap().len(), 6);
        let z6 = FiniteRing::cyclic(6).unwrap();
        let idem: Vec<u64> = z6.idempotents().unwrap().into_iter().map(|x| x[0]).collect();
        assert_eq!(idem, vec![0, 1, 3, 4]);
        assert!(FiniteRing::new(vec!["a".into()], vec![4], vec![vec![vec![1]]]).is_ok());
        let bad = FiniteRing::new(
            vec!["a".into(), "b".into()],
            vec![2, 4],
            vec![vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn restricted_algebra() {
        let f = FieldSpec::galois(3, 2).unwrap();
        let c = truncated_poly(&f, 2).unwrap();
        let r = FiniteRing::from_algebra(&c.algebra).unwrap();
        assert_eq!(r.size(), 81);
        assert_eq!(r.characteristic(), Some(3));
        assert_eq!(r.units().unwrap().len(), 72);
        let m = r.non_units().unwrap();
        assert_eq!(r.nilpotency_of(&m, 5).unwrap(), Some(2));
        let x = c.algebra.basis(1);
        assert_eq!(r.from_element(&c.algebra, &x), r.basis(2));
    }
}
