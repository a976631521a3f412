//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! [`IntPoly`] is the currency of the whole crate. Coefficients are stored in
//! ascending order and the representation is canonical: the last stored
//! coefficient is never zero, and the zero polynomial has no coefficients.

mod factored;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use factored::FactoredPoly;
pub use parse::{parse_poly, ParsePolyError};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// `t^k - 1`
    pub fn t_pow_minus_one(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[k] += 1;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial mapped to 0. Only use where zero has
    /// been ruled out or does not matter.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Lowest power of `t` with a nonzero coefficient.
    pub fn trailing_power(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Removes the largest power of `t` dividing the polynomial.
    pub fn strip_t_power(&self) -> (usize, IntPoly) {
        let k = self.trailing_power();
        (k, IntPoly { coeffs: self.coeffs[k..].to_vec() })
    }

    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divides every coefficient by `c`; the caller guarantees divisibility.
    pub fn div_scalar_exact(&self, c: &BigInt) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|a| a / c).collect() }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self) -> IntPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `f(t^n)`.
    pub fn inflate(&self, n: usize) -> IntPoly {
        assert!(n >= 1, "inflate by zero");
        if n == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// If every exponent with a nonzero coefficient is divisible by `n`,
    /// returns `g` with `g(t^n) = self`.
    pub fn deflate(&self, n: usize) -> Option<IntPoly> {
        if n == 1 {
            return Some(self.clone());
        }
        if self.coeffs.iter().enumerate().any(|(i, c)| i % n != 0 && !c.is_zero()) {
            return None;
        }
        Some(IntPoly { coeffs: self.coeffs.iter().step_by(n).cloned().collect() })
    }

    /// `f(-t)`.
    pub fn negate_variable(&self) -> IntPoly {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// `t^deg f(1/t)`; trailing zeros of the input are dropped.
    pub fn reciprocal(&self) -> IntPoly {
        let (_, stripped) = self.strip_t_power();
        let mut coeffs = stripped.coeffs;
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    /// Palindromic up to sign: `t^deg f(1/t) = ±f` (after removing powers of `t`).
    pub fn is_palindromic_up_to_sign(&self) -> bool {
        let (_, s) = self.strip_t_power();
        let r = s.reciprocal();
        r == s || r == -&s
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        if c.is_one() {
            self.clone()
        } else {
            self.div_scalar_exact(&c)
        }
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    /// Sum of squares of the coefficients.
    pub fn norm2_sq(&self) -> BigUint {
        self.coeffs.iter().map(|c| c.magnitude() * c.magnitude()).sum()
    }

    pub fn norm1(&self) -> BigUint {
        self.coeffs.iter().map(|c| c.magnitude().clone()).sum()
    }

    pub fn max_abs_coeff(&self) -> BigUint {
        self.coeffs.iter().map(|c| c.magnitude().clone()).max().unwrap_or_default()
    }

    /// Division by a divisor whose leading coefficient is ±1, or more
    /// generally exact division: returns `None` unless `divisor` divides
    /// `self` in `Z[t]`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let m = divisor.coeffs.len();
        if n < m {
            return None;
        }
        // Cheap necessary condition on the constant terms.
        if divisor.trailing_power() > self.trailing_power() {
            return None;
        }
        let lead = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            let c = &rem[i + m - 1];
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &q * d;
                }
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// Pseudo-remainder of `self` by `divisor`: `lc(divisor)^k * self mod divisor`.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero());
        let m = divisor.coeffs.len();
        let lead = divisor.coeffs.last().unwrap().clone();
        let mut rem = self.coeffs.clone();
        while rem.len() >= m {
            let top = rem.pop().unwrap();
            let shift = rem.len() + 1 - m;
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            if !top.is_zero() {
                for (j, d) in divisor.coeffs[..m - 1].iter().enumerate() {
                    rem[shift + j] -= &top * d;
                }
            }
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
        }
        IntPoly::new(rem)
    }

    /// Greatest common divisor in `Z[t]`, primitive with positive leading
    /// coefficient times the gcd of the contents.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    /// Splits `f` as `sign * content * primitive` with positive content and a
    /// primitive part with positive leading coefficient.
    pub fn content_primitive(&self) -> Result<(BigInt, IntPoly, i8)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let content = self.content();
        let sign: i8 = if self.leading().is_negative() { -1 } else { 1 };
        let signed = if sign < 0 { -content.clone() } else { content.clone() };
        Ok((content, self.div_scalar_exact(&signed), sign))
    }

    /// Formats in descending symbolic form, e.g. `4t^6 - 17t^5 + 4`.
    pub fn to_symbolic(&self) -> String {
        format!("{self}")
    }

    /// Ascending comma-separated coefficient list, e.g. `4,-17,4`.
    pub fn to_coeff_list(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == Sign::Minus;
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.magnitude();
            let unit = mag.is_one();
            if i == 0 || !unit {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl FromStr for IntPoly {
    type Err = ParsePolyError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_poly(s)
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_poly(&s).map_err(serde::de::Error::custom)
    }
}

/// Orders by degree, then by the ascending coefficient sequence.
impl Ord for IntPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPoly::new(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        IntPoly::new(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly::new(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Product of a list of polynomials.
pub fn product<'a, I: IntoIterator<Item = &'a IntPoly>>(items: I) -> IntPoly {
    items.into_iter().fold(IntPoly::one(), |acc, p| &acc * p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn canonical_form_trims_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn inflate_examples() {
        assert_eq!(p(&[1, -1, 1]).inflate(1), p(&[1, -1, 1]));
        assert_eq!(p(&[1, -3, 1]).inflate(2), p(&[1, 0, -3, 0, 1]));
        assert_eq!(p(&[-4, 5, -3, 1]).inflate(2), p(&[-4, 0, 5, 0, -3, 0, 1]));
    }

    #[test]
    fn content_primitive_examples() {
        let (c, pp, s) = p(&[-12, 0, 6]).content_primitive().unwrap();
        assert_eq!((c, pp, s), (BigInt::from(6), p(&[-2, 0, 1]), 1));
        let (c, pp, s) = p(&[1, -1]).content_primitive().unwrap();
        assert_eq!((c, pp, s), (BigInt::from(1), p(&[-1, 1]), -1));
        let k = p(&[4, -17, 38, -51, 38, -17, 4]);
        let (c, pp, s) = k.content_primitive().unwrap();
        assert_eq!((c, &pp, s), (BigInt::from(1), &k, 1));
        assert!(matches!(IntPoly::zero().content_primitive(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, -1, 1]);
        let b = p(&[-1, 1, 1]);
        let prod = &a * &b;
        assert_eq!(prod, p(&[1, 0, -3, 0, 1]));
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[1, 3])), None);
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[-1, 1]);
        let b = p(&[2, 1]);
        let c = p(&[1, 0, 1]);
        let g = (&(&a * &b) * &c.scale(&BigInt::from(3))).gcd(&(&a * &c).scale(&BigInt::from(6)));
        assert_eq!(g, (&a * &c).scale(&BigInt::from(3)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[4, -17, 38, -51, 38, -17, 4]).to_string(), "4t^6 - 17t^5 + 38t^4 - 51t^3 + 38t^2 - 17t + 4");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(p(&[-1]).to_string(), "-1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn palindromic_detection() {
        assert!(p(&[1, -1, 1]).is_palindromic_up_to_sign());
        assert!(p(&[-1, 1]).is_palindromic_up_to_sign());
        assert!(!p(&[1, -3, 2]).is_palindromic_up_to_sign());
        assert!(p(&[0, 0, 1, -1, 1]).is_palindromic_up_to_sign());
    }
}
