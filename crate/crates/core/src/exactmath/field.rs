//! Exact scalar fields: Q, GF(p), GF(p^k) and the rational-function fields
//! Q(t), GF(p)(t) with their derivation d/dt.
//!
//! A [`FieldSpec`] is a field context: scalars carry only their payload and
//! all arithmetic goes through the field that owns them.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly::{is_irreducible, is_prime, least_irreducible, Coeffs, FpCoeffs};
use super::zpoly;
use crate::error::{Error, Result};

pub const MAX_GALOIS_DEGREE: usize = 8;
const PRIME_BOUND: u64 = 1 << 32;

/// Coefficient field of a rational-function field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseField {
    Rationals,
    Prime { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime { p: u64 },
    /// GF(p^k) as GF(p)[g]/(modulus); the modulus is monic, lowest degree first.
    Galois { p: u64, modulus: Vec<u64> },
    RationalFunctions { base: BaseField },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub struct FieldSpec {
    kind: FieldKind,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FieldRepr {
    Rationals,
    Prime {
        p: u64,
    },
    Galois {
        p: u64,
        k: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u64>>,
    },
    RationalFunctions {
        base: BaseField,
    },
}

impl TryFrom<FieldRepr> for FieldSpec {
    type Error = Error;

    fn try_from(repr: FieldRepr) -> Result<Self> {
        match repr {
            FieldRepr::Rationals => Ok(FieldSpec::rationals()),
            FieldRepr::Prime { p } => FieldSpec::prime(p),
            FieldRepr::Galois { p, k, modulus: None } => FieldSpec::galois(p, k),
            FieldRepr::Galois {
                p,
                k,
                modulus: Some(m),
            } => {
                if m.len() != k + 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus has {} coefficients, expected {}",
                        m.len(),
                        k + 1
                    )));
                }
                FieldSpec::galois_with_modulus(p, m)
            }
            FieldRepr::RationalFunctions { base } => FieldSpec::rational_functions(base),
        }
    }
}

impl From<FieldSpec> for FieldRepr {
    fn from(f: FieldSpec) -> Self {
        match f.kind {
            FieldKind::Rationals => FieldRepr::Rationals,
            FieldKind::Prime { p } => FieldRepr::Prime { p },
            FieldKind::Galois { p, modulus } => FieldRepr::Galois {
                p,
                k: modulus.len() - 1,
                modulus: Some(modulus),
            },
            FieldKind::RationalFunctions { base } => FieldRepr::RationalFunctions { base },
        }
    }
}

/// Rational function in lowest terms. Over Q the coefficients are integers
/// with jointly coprime contents and a positive leading denominator
/// coefficient; over GF(p) the denominator is monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RatFn {
    Q {
        num: Vec<BigInt>,
        den: Vec<BigInt>,
    },
    Fp {
        num: Vec<u64>,
        den: Vec<u64>,
    },
}

/// A field element in canonical form; equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular(u64),
    /// Residue polynomial in the generator `g`, lowest degree first, trimmed.
    Galois(Vec<u64>),
    Function(RatFn),
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if p >= PRIME_BOUND {
        return Err(Error::InvalidField(format!("prime {p} exceeds 2^32")));
    }
    Ok(())
}

fn rf_normalize<F: Coeffs>(f: &F, num: Vec<F::C>, den: Vec<F::C>) -> (Vec<F::C>, Vec<F::C>) {
    assert!(!den.is_empty(), "rational function with zero denominator");
    if num.is_empty() {
        return (Vec::new(), vec![f.one()]);
    }
    let g = f.poly_gcd(&num, &den);
    let (num, den) = if f.poly_is_one(&g) {
        (num, den)
    } else {
        (f.poly_divrem(&num, &g).0, f.poly_divrem(&den, &g).0)
    };
    let (lead, den) = f.poly_monic(&den);
    let inv = f.inv(&lead);
    (f.poly_scale(&inv, &num), den)
}

type Frac<C> = (Vec<C>, Vec<C>);

fn exact_div<F: Coeffs>(f: &F, a: &[F::C], g: &[F::C]) -> Vec<F::C> {
    if f.poly_is_one(g) {
        a.to_vec()
    } else {
        f.poly_divrem(a, g).0
    }
}

/// Sum of reduced fractions with monic denominators, cancelling only against
/// the common part of the denominators.
fn rf_add<F: Coeffs>(f: &F, a: (&[F::C], &[F::C]), b: (&[F::C], &[F::C])) -> Frac<F::C> {
    if a.0.is_empty() {
        return (b.0.to_vec(), b.1.to_vec());
    }
    if b.0.is_empty() {
        return (a.0.to_vec(), a.1.to_vec());
    }
    if a.1 == b.1 {
        let num = f.poly_add(a.0, b.0);
        if num.is_empty() {
            return (num, vec![f.one()]);
        }
        if f.poly_is_one(a.1) {
            return (num, a.1.to_vec());
        }
        return rf_normalize(f, num, a.1.to_vec());
    }
    let g = f.poly_gcd(a.1, b.1);
    let (a1, b1) = (exact_div(f, a.1, &g), exact_div(f, b.1, &g));
    let num = f.poly_add(&f.poly_mul(a.0, &b1), &f.poly_mul(b.0, &a1));
    if num.is_empty() {
        return (Vec::new(), vec![f.one()]);
    }
    let den = f.poly_mul(&f.poly_mul(&a1, &b1), &g);
    if f.poly_is_one(&g) {
        return (num, den);
    }
    let h = f.poly_gcd(&num, &g);
    (exact_div(f, &num, &h), exact_div(f, &den, &h))
}

/// Product of reduced fractions with monic denominators by cross cancellation.
fn rf_mul<F: Coeffs>(f: &F, a: (&[F::C], &[F::C]), b: (&[F::C], &[F::C])) -> Frac<F::C> {
    if a.0.is_empty() || b.0.is_empty() {
        return (Vec::new(), vec![f.one()]);
    }
    let g1 = f.poly_gcd(a.0, b.1);
    let g2 = f.poly_gcd(b.0, a.1);
    let num = f.poly_mul(&exact_div(f, a.0, &g1), &exact_div(f, b.0, &g2));
    let den = f.poly_mul(&exact_div(f, a.1, &g2), &exact_div(f, b.1, &g1));
    (num, den)
}

/// `(p/q)' = (p'·(q/g) - p·(q'/g)) / (q·(q/g))` with `g = gcd(q, q')`.
fn rf_derive<F: Coeffs>(f: &F, a: (&[F::C], &[F::C])) -> Frac<F::C> {
    let (p, q) = a;
    let dq = f.poly_derivative(q);
    if dq.is_empty() {
        return rf_normalize(f, f.poly_derivative(p), q.to_vec());
    }
    let g = f.poly_gcd(q, &dq);
    let rad = exact_div(f, q, &g);
    let num = f.poly_sub(&f.poly_mul(&f.poly_derivative(p), &rad), &f.poly_mul(p, &exact_div(f, &dq, &g)));
    rf_normalize(f, num, f.poly_mul(q, &rad))
}

impl RatFn {
    pub fn is_zero(&self) -> bool {
        match self {
            RatFn::Q { num, .. } => num.is_empty(),
            RatFn::Fp { num, .. } => num.is_empty(),
        }
    }
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec {
            kind: FieldKind::Rationals,
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(FieldSpec {
            kind: FieldKind::Prime { p },
        })
    }

    /// GF(p^k) with the lexicographically least monic irreducible modulus.
    pub fn galois(p: u64, k: usize) -> Result<Self> {
        check_prime(p)?;
        if k == 0 || k > MAX_GALOIS_DEGREE {
            return Err(Error::InvalidField(format!(
                "extension degree {k} outside 1..={MAX_GALOIS_DEGREE}"
            )));
        }
        Ok(FieldSpec {
            kind: FieldKind::Galois {
                p,
                modulus: least_irreducible(p, k),
            },
        })
    }

    /// GF(p^k) with an explicit monic irreducible modulus, lowest degree first.
    pub fn galois_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        let k = modulus.len().saturating_sub(1);
        if k == 0 || k > MAX_GALOIS_DEGREE {
            return Err(Error::InvalidField(format!(
                "extension degree {k} outside 1..={MAX_GALOIS_DEGREE}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient not reduced mod p".into()));
        }
        if modulus[k] != 1 {
            return Err(Error::InvalidField("modulus is not monic".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over GF({p})"
            )));
        }
        Ok(FieldSpec {
            kind: FieldKind::Galois { p, modulus },
        })
    }

    pub fn rational_functions(base: BaseField) -> Result<Self> {
        if let BaseField::Prime { p } = base {
            check_prime(p)?;
        }
        Ok(FieldSpec {
            kind: FieldKind::RationalFunctions { base },
        })
    }

    /// Q(t).
    pub fn rational_functions_q() -> Self {
        FieldSpec {
            kind: FieldKind::RationalFunctions {
                base: BaseField::Rationals,
            },
        }
    }

    /// GF(p)(t).
    pub fn rational_functions_fp(p: u64) -> Result<Self> {
        Self::rational_functions(BaseField::Prime { p })
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn characteristic(&self) -> u64 {
        match &self.kind {
            FieldKind::Rationals => 0,
            FieldKind::Prime { p } | FieldKind::Galois { p, .. } => *p,
            FieldKind::RationalFunctions { base } => match base {
                BaseField::Rationals => 0,
                BaseField::Prime { p } => *p,
            },
        }
    }

    /// Degree over the prime field, `None` for transcendental extensions.
    pub fn degree(&self) -> Option<usize> {
        match &self.kind {
            FieldKind::Rationals | FieldKind::Prime { .. } => Some(1),
            FieldKind::Galois { modulus, .. } => Some(modulus.len() - 1),
            FieldKind::RationalFunctions { .. } => None,
        }
    }

    /// Number of elements, `None` for infinite fields.
    pub fn cardinality(&self) -> Option<BigUint> {
        match &self.kind {
            FieldKind::Prime { p } => Some(BigUint::from(*p)),
            FieldKind::Galois { p, modulus } => Some(BigUint::from(*p).pow(modulus.len() as u32 - 1)),
            _ => None,
        }
    }

    /// Number of elements when finite and below 2^64.
    pub fn size(&self) -> Option<u64> {
        self.cardinality().and_then(|c| c.to_u64())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, FieldKind::Prime { .. } | FieldKind::Galois { .. })
    }

    /// Whether the field carries the nonzero derivation d/dt.
    pub fn has_derivation(&self) -> bool {
        matches!(self.kind, FieldKind::RationalFunctions { .. })
    }

    /// The prime subfield, Q or GF(p).
    pub fn prime_subfield(&self) -> FieldSpec {
        match self.characteristic() {
            0 => FieldSpec::rationals(),
            p => FieldSpec {
                kind: FieldKind::Prime { p },
            },
        }
    }

    /// The field of constants of the coefficient ring: Q or GF(p) for
    /// rational functions, the field itself otherwise.
    pub fn coefficient_field(&self) -> FieldSpec {
        match &self.kind {
            FieldKind::RationalFunctions { base } => match base {
                BaseField::Rationals => FieldSpec::rationals(),
                BaseField::Prime { p } => FieldSpec {
                    kind: FieldKind::Prime { p: *p },
                },
            },
            _ => self.clone(),
        }
    }

    fn fp(&self) -> FpCoeffs {
        FpCoeffs(self.characteristic())
    }

    fn mismatch(&self, a: &Scalar) -> ! {
        panic!("scalar {a:?} does not belong to {self}")
    }

    /// Whether `a` is a canonical element of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (&self.kind, a) {
            (FieldKind::Rationals, Scalar::Rational(_)) => true,
            (FieldKind::Prime { p }, Scalar::Modular(x)) => x < p,
            (FieldKind::Galois { p, modulus }, Scalar::Galois(c)) => {
                c.len() < modulus.len() && c.iter().all(|x| x < p) && c.last() != Some(&0)
            }
            (FieldKind::RationalFunctions { base }, Scalar::Function(f)) => match (base, f) {
                (BaseField::Rationals, RatFn::Q { num, den }) => zpoly::is_canonical(num, den),
                (BaseField::Prime { p }, RatFn::Fp { num, den }) => {
                    let fp = FpCoeffs(*p);
                    num.iter().chain(den.iter()).all(|x| x < p)
                        && num.last() != Some(&0)
                        && den.last() == Some(&1)
                        && fp.poly_is_one(&fp.poly_gcd(num, den))
                }
                _ => false,
            },
            _ => false,
        }
    }

    pub fn zero(&self) -> Scalar {
        match &self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::zero()),
            FieldKind::Prime { .. } => Scalar::Modular(0),
            FieldKind::Galois { .. } => Scalar::Galois(Vec::new()),
            FieldKind::RationalFunctions { base } => Scalar::Function(match base {
                BaseField::Rationals => RatFn::Q {
                    num: Vec::new(),
                    den: vec![BigInt::one()],
                },
                BaseField::Prime { .. } => RatFn::Fp {
                    num: Vec::new(),
                    den: vec![1],
                },
            }),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        let modp = |p: u64| n.mod_floor(&BigInt::from(p)).to_u64().unwrap();
        match &self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Prime { p } => Scalar::Modular(modp(*p)),
            FieldKind::Galois { p, .. } => Scalar::Galois(self.fp().poly_constant(modp(*p))),
            FieldKind::RationalFunctions { base } => Scalar::Function(match base {
                BaseField::Rationals => RatFn::Q {
                    num: zpoly::trim(vec![n.clone()]),
                    den: vec![BigInt::one()],
                },
                BaseField::Prime { p } => RatFn::Fp {
                    num: FpCoeffs(*p).poly_constant(modp(*p)),
                    den: vec![1],
                },
            }),
        }
    }

    /// The image of a rational number; fails when the denominator vanishes
    /// in positive characteristic.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        self.div(&num, &den)
    }

    /// The transcendental `t` of a rational-function field or the generator
    /// `g` of a Galois field.
    pub fn generator(&self) -> Option<Scalar> {
        match &self.kind {
            FieldKind::Galois { p, modulus } => {
                let fp = FpCoeffs(*p);
                Some(Scalar::Galois(fp.poly_rem(&[0, 1], modulus)))
            }
            FieldKind::RationalFunctions { base } => Some(Scalar::Function(match base {
                BaseField::Rationals => RatFn::Q {
                    num: vec![BigInt::zero(), BigInt::one()],
                    den: vec![BigInt::one()],
                },
                BaseField::Prime { .. } => RatFn::Fp {
                    num: vec![0, 1],
                    den: vec![1],
                },
            })),
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular(x) => *x == 0,
            Scalar::Galois(c) => c.is_empty(),
            Scalar::Function(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.kind, a, b) {
            (FieldKind::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (FieldKind::Prime { p }, Scalar::Modular(x), Scalar::Modular(y)) => Scalar::Modular((x + y) % p),
            (FieldKind::Galois { .. }, Scalar::Galois(x), Scalar::Galois(y)) => {
                Scalar::Galois(self.fp().poly_add(x, y))
            }
            (FieldKind::RationalFunctions { .. }, Scalar::Function(x), Scalar::Function(y)) => {
                Scalar::Function(match (x, y) {
                    (RatFn::Q { num: n1, den: d1 }, RatFn::Q { num: n2, den: d2 }) => {
                        let (num, den) = zpoly::frac_add((n1, d1), (n2, d2));
                        RatFn::Q { num, den }
                    }
                    (RatFn::Fp { num: n1, den: d1 }, RatFn::Fp { num: n2, den: d2 }) => {
                        let (num, den) = rf_add(&self.fp(), (n1, d1), (n2, d2));
                        RatFn::Fp { num, den }
                    }
                    _ => self.mismatch(b),
                })
            }
            _ => self.mismatch(if self.contains(a) { b } else { a }),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Modular(x) => Scalar::Modular((self.characteristic() - x) % self.characteristic()),
            Scalar::Galois(c) => Scalar::Galois(self.fp().poly_neg(c)),
            Scalar::Function(RatFn::Q { num, den }) => Scalar::Function(RatFn::Q {
                num: zpoly::neg(num),
                den: den.clone(),
            }),
            Scalar::Function(RatFn::Fp { num, den }) => Scalar::Function(RatFn::Fp {
                num: self.fp().poly_neg(num),
                den: den.clone(),
            }),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&self.kind, a, b) {
            (FieldKind::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (FieldKind::Prime { p }, Scalar::Modular(x), Scalar::Modular(y)) => Scalar::Modular(x * y % p),
            (FieldKind::Galois { modulus, .. }, Scalar::Galois(x), Scalar::Galois(y)) => {
                Scalar::Galois(self.fp().poly_mulmod(x, y, modulus))
            }
            (FieldKind::RationalFunctions { .. }, Scalar::Function(x), Scalar::Function(y)) => {
                Scalar::Function(match (x, y) {
                    (RatFn::Q { num: n1, den: d1 }, RatFn::Q { num: n2, den: d2 }) => {
                        let (num, den) = zpoly::frac_mul((n1, d1), (n2, d2));
                        RatFn::Q { num, den }
                    }
                    (RatFn::Fp { num: n1, den: d1 }, RatFn::Fp { num: n2, den: d2 }) => {
                        let (num, den) = rf_mul(&self.fp(), (n1, d1), (n2, d2));
                        RatFn::Fp { num, den }
                    }
                    _ => self.mismatch(b),
                })
            }
            _ => self.mismatch(if self.contains(a) { b } else { a }),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (&self.kind, a) {
            (FieldKind::Rationals, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (FieldKind::Prime { .. }, Scalar::Modular(x)) => Scalar::Modular(self.fp().inv(x)),
            (FieldKind::Galois { modulus, .. }, Scalar::Galois(x)) => {
                Scalar::Galois(self.fp().poly_inv_mod(x, modulus).expect("modulus is irreducible"))
            }
            (FieldKind::RationalFunctions { .. }, Scalar::Function(f)) => Scalar::Function(match f {
                RatFn::Q { num, den } => {
                    let (num, den) = zpoly::frac_inv((num, den));
                    RatFn::Q { num, den }
                }
                RatFn::Fp { num, den } => {
                    let (num, den) = rf_normalize(&self.fp(), den.clone(), num.clone());
                    RatFn::Fp { num, den }
                }
            }),
            _ => self.mismatch(a),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The multiple `n·a`.
    pub fn times(&self, n: i64, a: &Scalar) -> Scalar {
        self.mul(&self.from_int(n), a)
    }

    /// The field derivation: d/dt on rational functions, zero elsewhere.
    pub fn derive(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Function(RatFn::Q { num, den }) => {
                let (num, den) = zpoly::frac_derive((num, den));
                Scalar::Function(RatFn::Q { num, den })
            }
            Scalar::Function(RatFn::Fp { num, den }) => {
                let (num, den) = rf_derive(&self.fp(), (num, den));
                Scalar::Function(RatFn::Fp { num, den })
            }
            _ => self.zero(),
        }
    }

    /// Whether `a` is killed by the field derivation.
    pub fn is_constant(&self, a: &Scalar) -> bool {
        self.is_zero(&self.derive(a))
    }

    /// The `index`-th element of a finite field in the enumeration order
    /// used throughout the crate (base-p digits are coefficients of g^e).
    pub fn element_at(&self, index: u64) -> Scalar {
        match &self.kind {
            FieldKind::Prime { p } => {
                assert!(index < *p, "index {index} out of range");
                Scalar::Modular(index)
            }
            FieldKind::Galois { p, modulus } => {
                let k = modulus.len() - 1;
                let mut digits = Vec::with_capacity(k);
                let mut rest = index;
                for _ in 0..k {
                    digits.push(rest % p);
                    rest /= p;
                }
                assert!(rest == 0, "index {index} out of range");
                Scalar::Galois(self.fp().poly_trim(digits))
            }
            _ => panic!("element_at on infinite field {self}"),
        }
    }

    /// Inverse of [`FieldSpec::element_at`].
    pub fn index_of(&self, a: &Scalar) -> u64 {
        match a {
            Scalar::Modular(x) => *x,
            Scalar::Galois(c) => {
                let p = self.characteristic();
                c.iter().rev().fold(0, |acc, d| acc * p + d)
            }
            _ => panic!("index_of on infinite field {self}"),
        }
    }

    /// Coordinates of a GF(p^k) element over GF(p) (length k); a prime-field
    /// element yields one coordinate.
    pub fn prime_coordinates(&self, a: &Scalar) -> Vec<u64> {
        match (&self.kind, a) {
            (FieldKind::Prime { .. }, Scalar::Modular(x)) => vec![*x],
            (FieldKind::Galois { modulus, .. }, Scalar::Galois(c)) => {
                let mut out = c.clone();
                out.resize(modulus.len() - 1, 0);
                out
            }
            _ => panic!("prime_coordinates on {self}"),
        }
    }

    pub fn from_prime_coordinates(&self, coords: &[u64]) -> Scalar {
        match &self.kind {
            FieldKind::Prime { p } => Scalar::Modular(coords[0] % p),
            FieldKind::Galois { p, .. } => {
                Scalar::Galois(self.fp().poly_trim(coords.iter().map(|c| c % p).collect()))
            }
            _ => panic!("from_prime_coordinates on {self}"),
        }
    }

    /// Embeds an element of the prime subfield.
    pub fn embed_prime(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(r) => self.from_rational(r).expect("characteristic 0"),
            Scalar::Modular(x) => self.from_int(*x as i64),
            _ => panic!("embed_prime of non-prime-field scalar {a:?}"),
        }
    }

    /// Uniform over finite fields; small-height elements otherwise.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        let small_q = |rng: &mut R| {
            let n: i64 = rng.gen_range(-9..=9);
            let d: i64 = rng.gen_range(1..=5);
            BigRational::new(n.into(), d.into())
        };
        match &self.kind {
            FieldKind::Rationals => Scalar::Rational(small_q(rng)),
            FieldKind::Prime { p } => Scalar::Modular(rng.gen_range(0..*p)),
            FieldKind::Galois { p, modulus } => {
                let c = (0..modulus.len() - 1).map(|_| rng.gen_range(0..*p)).collect();
                Scalar::Galois(self.fp().poly_trim(c))
            }
            FieldKind::RationalFunctions { base } => {
                let num_deg = rng.gen_range(0..=2usize);
                let den_deg = rng.gen_range(0..=1usize);
                Scalar::Function(match base {
                    BaseField::Rationals => {
                        let num: Vec<BigRational> = (0..=num_deg).map(|_| small_q(rng)).collect();
                        let mut den: Vec<BigRational> = (0..den_deg).map(|_| small_q(rng)).collect();
                        den.push(BigRational::one());
                        let (n1, d1) = zpoly::from_rational_poly(&num);
                        let (n2, d2) = zpoly::from_rational_poly(&den);
                        let (num, den) = zpoly::frac_mul((&n1, &d1), (&d2, &n2));
                        RatFn::Q { num, den }
                    }
                    BaseField::Prime { p } => {
                        let fp = FpCoeffs(*p);
                        let num = fp.poly_trim((0..=num_deg).map(|_| rng.gen_range(0..*p)).collect());
                        let mut den: Vec<u64> = (0..den_deg).map(|_| rng.gen_range(0..*p)).collect();
                        den.push(1);
                        let (num, den) = rf_normalize(&fp, num, den);
                        RatFn::Fp { num, den }
                    }
                })
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// Parses a scalar literal: an arithmetic expression in integers, `+ - * / ^`,
    /// parentheses, and the variable `t` (rational functions) or `g` (GF(p^k)).
    pub fn parse(&self, input: &str) -> Result<Scalar> {
        let tokens = tokenize(input)?;
        let mut parser = Parser {
            field: self,
            tokens,
            pos: 0,
            input,
        };
        let value = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(value)
    }

    /// Canonical literal, accepted by [`FieldSpec::parse`].
    pub fn format(&self, a: &Scalar) -> String {
        a.to_string()
    }
}

/// Parses the display form: `Q`, `GF(p)`, `GF(p^k)`, `Q(t)`, `GF(p)(t)`.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidField(format!("unknown field {s:?}"));
        let num = |x: &str| x.parse::<u64>().map_err(|_| bad());
        match s.as_str() {
            "Q" => return Ok(FieldSpec::rationals()),
            "Q(t)" => return Ok(FieldSpec::rational_functions_q()),
            _ => {}
        }
        if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(")(t)")) {
            return FieldSpec::rational_functions_fp(num(inner)?);
        }
        let inner = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        match inner.split_once('^') {
            Some((p, k)) => FieldSpec::galois(num(p)?, num(k)? as usize),
            None => FieldSpec::prime(num(inner)?),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime { p } => write!(f, "GF({p})"),
            FieldKind::Galois { p, modulus } => write!(f, "GF({p}^{})", modulus.len() - 1),
            FieldKind::RationalFunctions { base } => match base {
                BaseField::Rationals => write!(f, "Q(t)"),
                BaseField::Prime { p } => write!(f, "GF({p})(t)"),
            },
        }
    }
}

/// Terms are `(exponent, negative, magnitude)`, highest exponent first.
fn write_poly(out: &mut String, terms: &[(usize, bool, String)], var: &str) {
    if terms.is_empty() {
        out.push('0');
        return;
    }
    for (idx, (e, neg, mag)) in terms.iter().enumerate() {
        if *neg {
            out.push('-');
        } else if idx > 0 {
            out.push('+');
        }
        if *e == 0 {
            out.push_str(mag);
            continue;
        }
        if mag != "1" {
            out.push_str(mag);
            out.push('*');
        }
        out.push_str(var);
        if *e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

fn q_terms(c: &[BigRational]) -> Vec<(usize, bool, String)> {
    c.iter()
        .enumerate()
        .rev()
        .filter(|(_, x)| !x.is_zero())
        .map(|(e, x)| (e, x.is_negative(), x.abs().to_string()))
        .collect()
}

fn fp_terms(c: &[u64]) -> Vec<(usize, bool, String)> {
    c.iter()
        .enumerate()
        .rev()
        .filter(|(_, x)| **x != 0)
        .map(|(e, x)| (e, false, x.to_string()))
        .collect()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        match self {
            Scalar::Rational(r) => s = r.to_string(),
            Scalar::Modular(x) => s = x.to_string(),
            Scalar::Galois(c) => write_poly(&mut s, &fp_terms(c), "g"),
            Scalar::Function(rf) => {
                let (num, den, den_is_one) = match rf {
                    RatFn::Q { num, den } => {
                        let (num, den) = zpoly::to_monic(num, den);
                        (q_terms(&num), q_terms(&den), den.len() == 1)
                    }
                    RatFn::Fp { num, den } => (fp_terms(num), fp_terms(den), den.len() == 1),
                };
                if den_is_one {
                    write_poly(&mut s, &num, "t");
                } else {
                    s.push('(');
                    write_poly(&mut s, &num, "t");
                    s.push_str(")/(");
                    write_poly(&mut s, &den, "t");
                    s.push(')');
                }
            }
        }
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            tokens.push(Token::Num(digits.parse().expect("ascii digits")));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            tokens.push(Token::Ident(chars[start..i].iter().collect()));
            continue;
        }
        tokens.push(match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            _ => {
                return Err(Error::Scalar {
                    input: input.to_string(),
                    message: format!("unexpected character {c:?}"),
                })
            }
        });
        i += 1;
    }
    if tokens.is_empty() {
        return Err(Error::Scalar {
            input: input.to_string(),
            message: "empty literal".into(),
        });
    }
    Ok(tokens)
}

struct Parser<'a> {
    field: &'a FieldSpec,
    tokens: Vec<Token>,
    pos: usize,
    input: &'a str,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Scalar {
            input: self.input.to_string(),
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.field.add(&acc, &rhs);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.field.sub(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.field.mul(&acc, &rhs);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self
                        .field
                        .div(&acc, &rhs)
                        .map_err(|_| self.error("division by zero"))?;
                }
                // implicit product, as in "2t" or "3(t+1)"
                Some(Token::Ident(_)) | Some(Token::LParen) => {
                    let rhs = self.power()?;
                    acc = self.field.mul(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(self.field.neg(&v))
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.peek() {
            Some(Token::Num(n)) => n.to_u64().ok_or_else(|| self.error("exponent too large"))?,
            _ => return Err(self.error("expected integer exponent")),
        };
        self.pos += 1;
        let base = if negative {
            self.field.inv(&base).ok_or_else(|| self.error("division by zero"))?
        } else {
            base
        };
        Ok(self.field.pow(&base, e))
    }

    fn atom(&mut self) -> Result<Scalar> {
        let tok = self.peek().cloned().ok_or_else(|| self.error("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Token::Num(n) => Ok(self.field.from_bigint(&n)),
            Token::Ident(name) => {
                let expected = match self.field.kind() {
                    FieldKind::RationalFunctions { .. } => "t",
                    FieldKind::Galois { .. } => "g",
                    _ => return Err(self.error(&format!("unknown symbol {name:?}"))),
                };
                if name != expected {
                    return Err(self.error(&format!("unknown symbol {name:?}, expected {expected:?}")));
                }
                Ok(self.field.generator().expect("field has a generator"))
            }
            Token::LParen => {
                let v = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt() -> FieldSpec {
        FieldSpec::rational_functions_q()
    }

    #[test]
    fn field_names_round_trip() {
        for f in [
            FieldSpec::rationals(),
            qt(),
            FieldSpec::prime(7).unwrap(),
            FieldSpec::galois(3, 2).unwrap(),
            FieldSpec::rational_functions_fp(5).unwrap(),
        ] {
            assert_eq!(f.to_string().parse::<FieldSpec>().unwrap(), f);
        }
        assert!("GF(4)".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn derive_examples() {
        let f = qt();
        let t2 = f.parse("t^2").unwrap();
        assert_eq!(f.derive(&t2), f.parse("2*t").unwrap());
        assert_eq!(f.derive(&f.from_int(7)), f.zero());
        let inv_t = f.parse("1/t").unwrap();
        assert_eq!(f.derive(&inv_t), f.parse("-1/t^2").unwrap());
        assert_eq!(f.derive(&inv_t).to_string(), "(-1)/(t^2)");
    }

    #[test]
    fn canonical_literals() {
        let q = FieldSpec::rationals();
        assert_eq!(q.parse("2/4").unwrap().to_string(), "1/2");
        assert_eq!(q.parse("-6/4").unwrap().to_string(), "-3/2");
        let f = qt();
        let x = f.parse("(t^2-1)/(2*t+2)").unwrap();
        assert_eq!(x.to_string(), "1/2*t-1/2");
        let y = f.parse("t^2 - 1/2*t + 3").unwrap();
        assert_eq!(y.to_string(), "t^2-1/2*t+3");
        assert_eq!(f.parse(&y.to_string()).unwrap(), y);
        let z = f.parse("(t+1)/(2*t^2)").unwrap();
        assert_eq!(z.to_string(), "(1/2*t+1/2)/(t^2)");
        assert_eq!(f.parse(&z.to_string()).unwrap(), z);
    }

    #[test]
    fn galois_literals() {
        let f = FieldSpec::galois(3, 2).unwrap();
        let g = f.generator().unwrap();
        // modulus g^2 + 1
        assert_eq!(f.mul(&g, &g), f.from_int(-1));
        assert_eq!(f.parse("g^2+1").unwrap(), f.zero());
        let x = f.parse("2*g+1").unwrap();
        assert_eq!(x.to_string(), "2*g+1");
        assert_eq!(f.parse(&x.to_string()).unwrap(), x);
        assert_eq!(f.parse("g^8").unwrap(), f.one());
    }

    #[test]
    fn parse_errors() {
        let q = FieldSpec::rationals();
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("t").is_err());
        assert!(q.parse("").is_err());
        assert!(q.parse("(1").is_err());
        assert!(FieldSpec::prime(5).unwrap().parse("1/5").is_err());
    }

    #[test]
    fn enumeration_round_trip() {
        let f = FieldSpec::galois(2, 3).unwrap();
        for i in 0..8 {
            assert_eq!(f.index_of(&f.element_at(i)), i);
        }
    }

    #[test]
    fn invalid_fields() {
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::galois(2, 9).is_err());
        assert!(FieldSpec::galois_with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::galois_with_modulus(3, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn serde_round_trip() {
        for f in [
            FieldSpec::rationals(),
            FieldSpec::prime(7).unwrap(),
            FieldSpec::galois(3, 2).unwrap(),
            FieldSpec::rational_functions_fp(5).unwrap(),
            qt(),
        ] {
            let s = serde_json::to_string(&f).unwrap();
            let back: FieldSpec = serde_json::from_str(&s).unwrap();
            assert_eq!(back, f);
        }
        let f: FieldSpec = serde_json::from_str(r#"{"kind":"galois","p":2,"k":2}"#).unwrap();
        assert_eq!(f, FieldSpec::galois_with_modulus(2, vec![1, 1, 1]).unwrap());
        assert!(serde_json::from_str::<FieldSpec>(r#"{"kind":"prime","p":4}"#).is_err());
    }

    #[test]
    fn frobenius_constants() {
        let f = FieldSpec::rational_functions_fp(5).unwrap();
        let x = f.parse("(t^2+3)/(t+4)").unwrap();
        assert!(f.is_constant(&f.pow(&x, 5)));
        assert!(!f.is_constant(&x));
    }
}
