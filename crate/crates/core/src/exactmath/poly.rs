//! Dense univariate polynomials over Q and GF(p).
//!
//! Polynomials are coefficient vectors, lowest degree first, with no trailing
//! zeros; the zero polynomial is the empty vector.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficient field of a polynomial ring. The `poly_*` methods implement
/// the ring operations once for both coefficient fields.
pub trait Coeffs: Clone + Debug + Send + Sync {
    type C: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    fn integer(&self, n: u64) -> Self::C;
    fn is_zero(&self, a: &Self::C) -> bool;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn sub(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    /// Panics on zero.
    fn inv(&self, a: &Self::C) -> Self::C;

    fn poly_trim(&self, mut a: Vec<Self::C>) -> Vec<Self::C> {
        while a.last().is_some_and(|c| self.is_zero(c)) {
            a.pop();
        }
        a
    }

    fn poly_constant(&self, c: Self::C) -> Vec<Self::C> {
        self.poly_trim(vec![c])
    }

    fn poly_is_one(&self, a: &[Self::C]) -> bool {
        a.len() == 1 && a[0] == self.one()
    }

    fn poly_add(&self, a: &[Self::C], b: &[Self::C]) -> Vec<Self::C> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => self.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.poly_trim(out)
    }

    fn poly_neg(&self, a: &[Self::C]) -> Vec<Self::C> {
        a.iter().map(|c| self.neg(c)).collect()
    }

    fn poly_sub(&self, a: &[Self::C], b: &[Self::C]) -> Vec<Self::C> {
        self.poly_add(a, &self.poly_neg(b))
    }

    fn poly_scale(&self, c: &Self::C, a: &[Self::C]) -> Vec<Self::C> {
        if self.is_zero(c) {
            return Vec::new();
        }
        self.poly_trim(a.iter().map(|x| self.mul(c, x)).collect())
    }

    fn poly_mul(&self, a: &[Self::C], b: &[Self::C]) -> Vec<Self::C> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.poly_trim(out)
    }

    /// Quotient and remainder; panics when `b` is zero.
    fn poly_divrem(&self, a: &[Self::C], b: &[Self::C]) -> (Vec<Self::C>, Vec<Self::C>) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = self.inv(b.last().unwrap());
        let mut q = vec![self.zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = self.mul(r.last().unwrap(), &lead_inv);
            for (i, y) in b.iter().enumerate() {
                r[shift + i] = self.sub(&r[shift + i], &self.mul(&c, y));
            }
            q[shift] = c;
            r.pop();
            r = self.poly_trim(r);
        }
        (self.poly_trim(q), r)
    }

    fn poly_rem(&self, a: &[Self::C], b: &[Self::C]) -> Vec<Self::C> {
        self.poly_divrem(a, b).1
    }

    /// Splits off the leading coefficient: `a = lead * monic`.
    fn poly_monic(&self, a: &[Self::C]) -> (Self::C, Vec<Self::C>) {
        match a.last() {
            None => (self.zero(), Vec::new()),
            Some(lead) => {
                let inv = self.inv(lead);
                (lead.clone(), self.poly_scale(&inv, a))
            }
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    fn poly_gcd(&self, a: &[Self::C], b: &[Self::C]) -> Vec<Self::C> {
        if (a.len() == 1 && !b.is_empty()) || (b.len() == 1 && !a.is_empty()) {
            return vec![self.one()];
        }
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        self.poly_monic(&x).1
    }

    /// Inverse of `a` modulo `m`, if it exists.
    fn poly_inv_mod(&self, a: &[Self::C], m: &[Self::C]) -> Option<Vec<Self::C>> {
        let (mut r0, mut r1) = (m.to_vec(), self.poly_rem(a, m));
        let (mut s0, mut s1): (Vec<Self::C>, Vec<Self::C>) = (Vec::new(), vec![self.one()]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = self.inv(&r0[0]);
        Some(self.poly_rem(&self.poly_scale(&c, &s0), m))
    }

    fn poly_derivative(&self, a: &[Self::C]) -> Vec<Self::C> {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.mul(&self.integer(i as u64), c))
            .collect();
        self.poly_trim(out)
    }

    fn poly_mulmod(&self, a: &[Self::C], b: &[Self::C], m: &[Self::C]) -> Vec<Self::C> {
        self.poly_rem(&self.poly_mul(a, b), m)
    }

    fn poly_powmod(&self, a: &[Self::C], mut e: u64, m: &[Self::C]) -> Vec<Self::C> {
        let mut base = self.poly_rem(a, m);
        let mut acc = self.poly_rem(&[self.one()], m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mulmod(&acc, &base, m);
            }
            base = self.poly_mulmod(&base, &base, m);
            e >>= 1;
        }
        acc
    }
}

/// Coefficients in Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct QCoeffs;

impl Coeffs for QCoeffs {
    type C = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn integer(&self, n: u64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }

    /// Primitive remainder sequence over Z, which avoids the coefficient
    /// growth of Euclid over Q.
    fn poly_gcd(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if (a.len() == 1 && !b.is_empty()) || (b.len() == 1 && !a.is_empty()) {
            return vec![BigRational::one()];
        }
        let (mut x, mut y) = (primitive_part(a), primitive_part(b));
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = primitive_int(pseudo_rem(&x, &y));
            x = std::mem::replace(&mut y, r);
        }
        match x.last() {
            None => Vec::new(),
            Some(lead) => {
                let lead = lead.clone();
                x.into_iter().map(|c| BigRational::new(c, lead.clone())).collect()
            }
        }
    }
}

/// Integer multiple of `a` with coprime coefficients.
fn primitive_part(a: &[BigRational]) -> Vec<BigInt> {
    let l = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive_int(a.iter().map(|c| c.numer() * (&l / c.denom())).collect())
}

fn primitive_int(a: Vec<BigInt>) -> Vec<BigInt> {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return a;
    }
    a.into_iter().map(|c| c / &g).collect()
}

/// Remainder of `lead(b)^k · a` by `b` over Z; `b` nonzero.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lead = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty").clone();
        for x in r.iter_mut() {
            *x *= lead;
        }
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Coefficients in GF(p), `p < 2^32`, stored as residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpCoeffs(pub u64);

impl Coeffs for FpCoeffs {
    type C = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn integer(&self, n: u64) -> u64 {
        n % self.0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        let g = (*a as i128).extended_gcd(&(self.0 as i128));
        debug_assert_eq!(g.gcd, 1);
        g.x.rem_euclid(self.0 as i128) as u64
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a polynomial over GF(p).
pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let fp = FpCoeffs(p);
    let (_, f) = fp.poly_monic(f);
    let k = match f.len() {
        0 | 1 => return false,
        n => n - 1,
    };
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    // frob[i] = x^(p^i) mod f
    let mut frob = vec![fp.poly_rem(&x, &f)];
    for i in 1..=k {
        let next = fp.poly_powmod(&frob[i - 1], p, &f);
        frob.push(next);
    }
    if frob[k] != frob[0] {
        return false;
    }
    prime_divisors(k as u64).into_iter().all(|q| {
        let h = fp.poly_sub(&frob[k / q as usize], &x);
        fp.poly_is_one(&fp.poly_gcd(&h, &f))
    })
}

/// Lexicographically least monic irreducible polynomial of degree `k` over
/// GF(p), comparing coefficients from the highest degree down. Returned
/// lowest degree first.
pub fn least_irreducible(p: u64, k: usize) -> Vec<u64> {
    let mut digits = vec![0u64; k];
    loop {
        // digits[0] is the coefficient of x^(k-1)
        let mut f: Vec<u64> = digits.iter().rev().copied().collect();
        f.push(1);
        if is_irreducible(p, &f) {
            return f;
        }
        let mut pos = k;
        loop {
            assert!(pos > 0, "no irreducible polynomial of degree {k} over GF({p})");
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn divrem_reconstructs() {
        let f = QCoeffs;
        let a = vec![q(1, 1), q(0, 1), q(-3, 1), q(2, 1)];
        let b = vec![q(1, 2), q(1, 1)];
        let (qq, r) = f.poly_divrem(&a, &b);
        assert_eq!(f.poly_add(&f.poly_mul(&qq, &b), &r), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = FpCoeffs(5);
        // (x+1)(x+2) and (x+1)(x+3)
        let a = f.poly_mul(&[1, 1], &[2, 1]);
        let b = f.poly_mul(&[1, 1], &[3, 1]);
        assert_eq!(f.poly_gcd(&a, &b), vec![1, 1]);
    }

    #[test]
    fn rational_gcd_matches_common_factor() {
        let f = QCoeffs;
        // (t - 1/3)(t + 2/3) and (t - 1/3)(3t + 5/7)
        let common = vec![q(-1, 3), q(1, 1)];
        let a = f.poly_mul(&common, &[q(2, 3), q(1, 1)]);
        let b = f.poly_mul(&common, &[q(5, 7), q(3, 1)]);
        assert_eq!(f.poly_gcd(&a, &b), common);
        assert_eq!(f.poly_gcd(&a, &[]), f.poly_monic(&a).1);
        assert!(f.poly_gcd(&[], &[]).is_empty());
        assert_eq!(f.poly_gcd(&[q(2, 1), q(1, 1)], &[q(3, 1), q(1, 1)]), vec![q(1, 1)]);
    }

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(3, &[1, 0, 1]));
        assert!(!is_irreducible(2, &[1, 0, 1]));
        assert!(is_irreducible(2, &[1, 1, 1]));
        assert!(!is_irreducible(2, &[1, 1, 1, 1]));
        assert!(is_irreducible(2, &[1, 1, 0, 0, 1]));
        // x^4 + x^2 + 1 = (x^2+x+1)^2 over GF(2)
        assert!(!is_irreducible(2, &[1, 0, 1, 0, 1]));
    }

    #[test]
    fn least_irreducibles() {
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(least_irreducible(5, 1), vec![0, 1]);
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducibles of degree 4 over GF(2) is 3
        let count = (0u64..16)
            .filter(|bits| {
                let mut f: Vec<u64> = (0..4).map(|i| (bits >> i) & 1).collect();
                f.push(1);
                is_irreducible(2, &f)
            })
            .count();
        assert_eq!(count, 3);
    }

    #[test]
    fn inverse_mod() {
        let f = FpCoeffs(3);
        let m = vec![1, 0, 1];
        for a in [vec![1], vec![0, 1], vec![2, 1], vec![1, 2]] {
            let inv = f.poly_inv_mod(&a, &m).unwrap();
            assert_eq!(f.poly_mulmod(&a, &inv, &m), vec![1]);
        }
    }
}
