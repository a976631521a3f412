//! Power tests for algebraic numbers given by their minimal polynomial.
//!
//! A root `α` of an irreducible `f` of degree `d` is a `k`-th power in `Q(α)`
//! exactly when `f(t^k)` has an irreducible factor of degree `d`. Before any
//! factorization two cheap necessary conditions are tried: `α` must be a
//! `k`-th power in every residue field at good primes, and the degree `d` must
//! be a subset sum of modular factor degrees of `f(t^k)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, primes_from};
use crate::cyclotomic::{cyclotomic_tag, CyclotomicTag};
use crate::error::{Error, Result};
use crate::factor::{degree_set_filter, find_factor_of_degree};
use crate::modp::{distinct_degree, ModPoly};
use crate::poly::IntPoly;

/// `E(α)`: the largest `E` with `α = θ^E` for some `θ ∈ Q(α)`, or the order
/// `m` when `α` is a primitive `m`-th root of unity (where `E` is taken as 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EValue {
    Finite(u64),
    CyclotomicZero(u64),
}

impl EValue {
    /// The numeric value, with roots of unity mapped to 0.
    pub fn value(&self) -> u64 {
        match self {
            EValue::Finite(e) => *e,
            EValue::CyclotomicZero(_) => 0,
        }
    }
}

impl std::fmt::Display for EValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EValue::Finite(e) => write!(f, "{e}"),
            EValue::CyclotomicZero(m) => write!(f, "0 (Phi_{m})"),
        }
    }
}

fn is_exact_power(x: &BigInt, e: u32) -> bool {
    let r = x.nth_root(e);
    &r.pow(e) == x
}

/// `E` of the rational `numerator / denominator`: the largest `e` such that
/// both parts are `e`-th powers, odd when the rational is negative.
pub fn rational_power_index(numerator: &BigInt, denominator: &BigInt) -> Result<EValue> {
    if !denominator.is_positive() {
        return Err(Error::Input(format!("denominator must be positive, got {denominator}")));
    }
    if !num_integer::Integer::gcd(numerator, denominator).is_one() {
        return Err(Error::Input(format!("{numerator}/{denominator} is not in lowest terms")));
    }
    if numerator.is_zero() || (numerator.magnitude().is_one() && denominator.is_one()) {
        return Err(Error::TrivialRational(format!("{numerator}/{denominator}")));
    }
    let negative = numerator.is_negative();
    let num = numerator.abs();
    let bits = num.bits().max(denominator.bits()) as u32;
    for e in (2..=bits).rev() {
        if negative && e % 2 == 0 {
            continue;
        }
        if is_exact_power(&num, e) && is_exact_power(denominator, e) {
            return Ok(EValue::Finite(e as u64));
        }
    }
    Ok(EValue::Finite(1))
}

const RESIDUE_PRIMES_SCANNED: usize = 400;
const RESIDUE_PRIMES_INFORMATIVE: usize = 12;

/// Necessary condition for a root of `f` to be a `k`-th power, checked in the
/// residue fields of good primes `ℓ` (`ℓ` not dividing the leading or constant
/// coefficient, `f mod ℓ` squarefree). Returns `false` only when `α` is
/// certainly not a `k`-th power.
pub fn power_residue_filter(f: &IntPoly, k: u64) -> bool {
    if k <= 1 || f.deg() == 0 {
        return true;
    }
    let mut informative = 0;
    for l in primes_from(3).take(RESIDUE_PRIMES_SCANNED) {
        let fl = ModPoly::from_int_poly(f, l);
        if fl.deg() != f.deg() || fl.coeff(0) == 0 || !fl.is_squarefree() {
            continue;
        }
        let mut useful = false;
        for (block, i) in distinct_degree(&fl.monic()) {
            let order = BigUint::from(l).pow(i as u32) - 1u32;
            let g = num_integer::Integer::gcd(&order, &BigUint::from(k));
            if g.is_one() {
                continue;
            }
            useful = true;
            let e = &order / &g;
            if !ModPoly::x(l).pow_mod(&e, &block).is_one() {
                return false;
            }
        }
        if useful {
            informative += 1;
            if informative >= RESIDUE_PRIMES_INFORMATIVE {
                break;
            }
        }
    }
    true
}

/// Whether a root of the irreducible `f` is a `k`-th power in its own field.
pub fn root_is_power(f: &IntPoly, k: u64) -> Result<bool> {
    if k <= 1 {
        return Ok(true);
    }
    if !power_residue_filter(f, k) {
        return Ok(false);
    }
    let k = usize::try_from(k).map_err(|_| Error::Input(format!("exponent {k} too large")))?;
    let g = f.inflate(k);
    if !degree_set_filter(&g, f.deg(), 3) {
        return Ok(false);
    }
    Ok(find_factor_of_degree(&g, f.deg())?.is_some())
}

/// Largest `r` such that a root of `f` is a `p^r`-th power.
pub fn power_index(f: &IntPoly, p: u64) -> Result<u32> {
    if f.deg() < 2 {
        return Err(Error::DegreeTooSmall(f.deg()));
    }
    if let CyclotomicTag::Cyclotomic(m) = cyclotomic_tag(f) {
        return Err(Error::Cyclotomic(m));
    }
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    // A p^(r+1)-th power is a p^r-th power, so the first failure is final.
    let mut r = 0u32;
    let mut q = p;
    while root_is_power(f, q)? {
        r += 1;
        q = q
            .checked_mul(p)
            .ok_or_else(|| Error::Internal(format!("power index of {f} at {p} overflows")))?;
    }
    Ok(r)
}

/// The rational root of a primitive linear `a t + b` as `(numerator, denominator)`.
pub(crate) fn linear_root(f: &IntPoly) -> (BigInt, BigInt) {
    let a = f.leading();
    let b = f.constant_term();
    if a.is_negative() {
        (b, -a)
    } else {
        (-b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn rational_examples() {
        assert_eq!(rational_power_index(&big(1), &big(4)).unwrap(), EValue::Finite(2));
        assert_eq!(rational_power_index(&big(-8), &big(1)).unwrap(), EValue::Finite(3));
        assert_eq!(rational_power_index(&big(6), &big(1)).unwrap(), EValue::Finite(1));
        assert_eq!(rational_power_index(&big(-64), &big(1)).unwrap(), EValue::Finite(3));
        assert_eq!(rational_power_index(&big(64), &big(729)).unwrap(), EValue::Finite(6));
        assert_eq!(rational_power_index(&big(-1), &big(32)).unwrap(), EValue::Finite(5));
        assert!(rational_power_index(&big(-1), &big(1)).is_err());
        assert!(rational_power_index(&big(0), &big(1)).is_err());
        assert!(rational_power_index(&big(2), &big(4)).is_err());
    }

    #[test]
    fn power_index_examples() {
        assert_eq!(power_index(&p(&[1, -3, 1]), 2).unwrap(), 1);
        assert_eq!(power_index(&p(&[-1, -1, 1]), 2).unwrap(), 0);
        assert_eq!(power_index(&p(&[1, -3, 1]), 5).unwrap(), 0);
        // t^2 - 7t + 1 has root ((1 + sqrt5)/2)^4.
        assert_eq!(power_index(&p(&[1, -7, 1]), 2).unwrap(), 2);
        assert!(matches!(power_index(&p(&[1, -1, 1]), 2), Err(Error::Cyclotomic(6))));
        assert!(matches!(power_index(&p(&[1, -3, 1]), 4), Err(Error::CompositeModulus(4))));
    }

    #[test]
    fn residue_filter_is_sound_on_true_powers() {
        // Roots of t^2 - 3t + 1 are squares, of t^2 - 4t - 1 are cubes.
        assert!(power_residue_filter(&p(&[1, -3, 1]), 2));
        assert!(power_residue_filter(&p(&[-1, -4, 1]), 3));
        assert!(!power_residue_filter(&p(&[-1, -1, 1]), 2));
    }
}
