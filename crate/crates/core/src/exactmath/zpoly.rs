//! Dense polynomials over Z and the fraction arithmetic of Q(t) built on them.
//!
//! A fraction `num/den` is canonical when the polynomials are coprime in
//! Q[t], the contents of `num` and `den` are jointly coprime and the leading
//! coefficient of `den` is positive. Zero is `[] / [1]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (x, y) in out.iter_mut().zip(short) {
        *x += y;
    }
    trim(out)
}

pub fn neg(a: &[BigInt]) -> ZPoly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    add(a, &neg(b))
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn derivative(a: &[BigInt]) -> ZPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn div_scalar(a: ZPoly, c: &BigInt) -> ZPoly {
    if c.is_one() {
        return a;
    }
    a.into_iter().map(|x| x / c).collect()
}

/// `a` divided by its content.
pub fn primitive(a: ZPoly) -> ZPoly {
    let g = content(&a);
    if g.is_zero() {
        return a;
    }
    div_scalar(a, &g)
}

/// Remainder of `lead(b)^k · a` by `b`; `b` nonzero.
pub fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let lead = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty").clone();
        if !lead.is_one() {
            for x in r.iter_mut() {
                *x *= lead;
            }
        }
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        r.pop();
        r = trim(r);
    }
    r
}

/// Primitive gcd with positive leading coefficient; zero when both are zero.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if (a.len() == 1 && !b.is_empty()) || (b.len() == 1 && !a.is_empty()) {
        return vec![BigInt::one()];
    }
    let (mut x, mut y) = (primitive(a.to_vec()), primitive(b.to_vec()));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive(pseudo_rem(&x, &y));
        x = std::mem::replace(&mut y, r);
    }
    if x.last().is_some_and(Signed::is_negative) {
        x = neg(&x);
    }
    x
}

fn is_one(a: &[BigInt]) -> bool {
    a.len() == 1 && a[0].is_one()
}

/// Exact quotient by a primitive divisor of `a` in Q[t].
pub fn div_exact(a: &[BigInt], g: &[BigInt]) -> ZPoly {
    if is_one(g) {
        return a.to_vec();
    }
    let lead = g.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); r.len() + 1 - g.len()];
    while r.len() >= g.len() {
        let shift = r.len() - g.len();
        let c = r.last().expect("nonempty") / lead;
        for (i, y) in g.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    trim(q)
}

pub type Frac = (ZPoly, ZPoly);

fn zero_frac() -> Frac {
    (Vec::new(), vec![BigInt::one()])
}

/// Removes the common content and makes the denominator's lead positive,
/// assuming the polynomials are already coprime.
fn fix_content(num: ZPoly, den: ZPoly) -> Frac {
    if num.is_empty() {
        return zero_frac();
    }
    let mut c = content(&num).gcd(&content(&den));
    if den.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    (div_scalar(num, &c), div_scalar(den, &c))
}

pub fn normalize(num: ZPoly, den: ZPoly) -> Frac {
    assert!(!den.is_empty(), "rational function with zero denominator");
    if num.is_empty() {
        return zero_frac();
    }
    let g = gcd(&num, &den);
    fix_content(div_exact(&num, &g), div_exact(&den, &g))
}

pub fn is_canonical(num: &[BigInt], den: &[BigInt]) -> bool {
    if num.is_empty() {
        return is_one(den);
    }
    num.last().is_some_and(|c| !c.is_zero())
        && den.last().is_some_and(Signed::is_positive)
        && content(num).gcd(&content(den)).is_one()
        && is_one(&gcd(num, den))
}

/// The fraction equal to a polynomial with rational coefficients.
pub fn from_rational_poly(a: &[BigRational]) -> Frac {
    let l = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = trim(a.iter().map(|c| c.numer() * (&l / c.denom())).collect());
    fix_content(num, vec![l])
}

/// Numerator and denominator rescaled so the denominator is monic.
pub fn to_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigRational>, Vec<BigRational>) {
    let lead = den.last().expect("nonzero denominator");
    let scale = |p: &[BigInt]| p.iter().map(|c| BigRational::new(c.clone(), lead.clone())).collect();
    (scale(num), scale(den))
}

/// Sum, cancelling only against the common part of the denominators.
pub fn frac_add(a: (&[BigInt], &[BigInt]), b: (&[BigInt], &[BigInt])) -> Frac {
    if a.0.is_empty() {
        return (b.0.to_vec(), b.1.to_vec());
    }
    if b.0.is_empty() {
        return (a.0.to_vec(), a.1.to_vec());
    }
    let g = gcd(a.1, b.1);
    let (a1, b1) = (div_exact(a.1, &g), div_exact(b.1, &g));
    let num = add(&mul(a.0, &b1), &mul(b.0, &a1));
    if num.is_empty() {
        return zero_frac();
    }
    let den = mul(&mul(&a1, &b1), &g);
    let h = gcd(&num, &g);
    fix_content(div_exact(&num, &h), div_exact(&den, &h))
}

/// Product with cross-cancellation.
pub fn frac_mul(a: (&[BigInt], &[BigInt]), b: (&[BigInt], &[BigInt])) -> Frac {
    if a.0.is_empty() || b.0.is_empty() {
        return zero_frac();
    }
    let g1 = gcd(a.0, b.1);
    let g2 = gcd(b.0, a.1);
    let num = mul(&div_exact(a.0, &g1), &div_exact(b.0, &g2));
    let den = mul(&div_exact(a.1, &g2), &div_exact(b.1, &g1));
    fix_content(num, den)
}

pub fn frac_inv(a: (&[BigInt], &[BigInt])) -> Frac {
    assert!(!a.0.is_empty(), "inverse of zero");
    fix_content(a.1.to_vec(), a.0.to_vec())
}

/// `(p/q)' = (p'·(q/g) - p·(q'/g)) / (q·(q/g))` with `g = gcd(q, q')`,
/// which is reduced in characteristic 0.
pub fn frac_derive(a: (&[BigInt], &[BigInt])) -> Frac {
    let (p, q) = a;
    let dq = derivative(q);
    if dq.is_empty() {
        return fix_content(derivative(p), q.to_vec());
    }
    let g = gcd(q, &dq);
    let rad = div_exact(q, &g);
    let num = sub(&mul(&derivative(p), &rad), &mul(p, &div_exact(&dq, &g)));
    fix_content(num, mul(q, &rad))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_of_products_is_common_factor() {
        // (2t + 1)(t - 3) and (2t + 1)(t + 5)
        let g = gcd(&z(&[-3, -5, 2]), &z(&[5, 11, 2]));
        assert_eq!(g, z(&[1, 2]));
        assert_eq!(div_exact(&z(&[-3, -5, 2]), &g), z(&[-3, 1]));
    }

    #[test]
    fn normalize_fixes_sign_and_content() {
        // (4t + 2) / (-6t^2 - 3t) = -2 / (3t)
        assert_eq!(normalize(z(&[2, 4]), z(&[0, -3, -6])), (z(&[-2]), z(&[0, 3])));
        assert_eq!(normalize(z(&[6]), z(&[4])), (z(&[3]), z(&[2])));
    }

    #[test]
    fn sum_and_derivative() {
        // 1/t + 1/(t+1) = (2t + 1)/(t^2 + t)
        let s = frac_add((&z(&[1]), &z(&[0, 1])), (&z(&[1]), &z(&[1, 1])));
        assert_eq!(s, (z(&[1, 2]), z(&[0, 1, 1])));
        // (1/t^2)' = -2/t^3
        assert_eq!(frac_derive((&z(&[1]), &z(&[0, 0, 1]))), (z(&[-2]), z(&[0, 0, 0, 1])));
    }
}
