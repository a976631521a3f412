//! Polynomials over a prime field `F_p` with `p < 2^32`, and their
//! factorization (squarefree split, distinct-degree, Cantor-Zassenhaus).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_prime, pow_mod};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Large word prime used for cheap divisibility screens.
pub const WORD_PRIME: u64 = 4_294_967_291;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl std::fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModPoly(mod {}: {:?})", self.p, self.coeffs)
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

impl ModPoly {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        debug_assert!(p >= 2 && p < (1 << 32));
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn from_i64s(coeffs: &[i64], p: u64) -> Self {
        Self::new(coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect(), p)
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        Self::new(f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect(), p)
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Lift with coefficients in `(-p/2, p/2]`.
    pub fn to_int_poly_symmetric(&self) -> IntPoly {
        let half = self.p / 2;
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|&c| if c > half { BigInt::from(c) - BigInt::from(self.p) } else { BigInt::from(c) })
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(vec![1], p)
    }

    pub fn x(p: u64) -> Self {
        Self::new(vec![0, 1], p)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = ((acc as u128 * x as u128 + c as u128) % self.p as u128) as u64;
        }
        acc
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        let p = self.p;
        Self::new(self.coeffs.iter().map(|&a| ((a as u128 * c as u128) % p as u128) as u64).collect(), p)
    }

    pub fn add(&self, other: &ModPoly) -> ModPoly {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| (self.coeff(i) + other.coeff(i)) % p).collect(), p)
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| (self.coeff(i) + p - other.coeff(i)) % p).collect(), p)
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a as u128 * b as u128;
            }
        }
        Self::new(acc.into_iter().map(|c| (c % p) as u64).collect(), self.p)
    }

    pub fn div_rem(&self, divisor: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.p;
        let m = divisor.coeffs.len();
        if self.coeffs.len() < m {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(divisor.lead(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - m + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + m - 1];
            if c == 0 {
                continue;
            }
            let q = ((c as u128 * inv as u128) % p as u128) as u64;
            quot[i] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let sub = ((q as u128 * d as u128) % p as u128) as u64;
                rem[i + j] = (rem[i + j] + p - sub) % p;
            }
        }
        rem.truncate(m - 1);
        (Self::new(quot, p), Self::new(rem, p))
    }

    pub fn rem(&self, divisor: &ModPoly) -> ModPoly {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics in debug builds if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &ModPoly) -> ModPoly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> ModPoly {
        let p = self.p;
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| ((i as u128 * c as u128) % p as u128) as u64).collect(),
            p,
        )
    }

    pub fn mul_mod(&self, other: &ModPoly, modulus: &ModPoly) -> ModPoly {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, exp: &BigUint, modulus: &ModPoly) -> ModPoly {
        let mut result = Self::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..exp.bits()).rev() {
            result = result.mul_mod(&result, modulus);
            if exp.bit(i) {
                result = result.mul_mod(&base, modulus);
            }
        }
        result
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    /// `g` with `g(t)^p = self`, valid when `self' = 0`.
    fn pth_root(&self) -> ModPoly {
        // Coefficients in F_p are their own p-th roots.
        let p = self.p as usize;
        Self::new(self.coeffs.iter().step_by(p).copied().collect(), self.p)
    }
}

/// Matrix of `t^(p*j) mod f` for `j < deg f`; applying it raises an element
/// of `F_p[t]/(f)` to the `p`-th power.
pub struct Frobenius {
    modulus: ModPoly,
    rows: Vec<Vec<u64>>,
}

impl Frobenius {
    pub fn new(f: &ModPoly) -> Self {
        let p = f.p;
        let d = f.deg();
        let xp = ModPoly::x(p).pow_mod(&BigUint::from(p), f);
        let mut rows = Vec::with_capacity(d);
        let mut cur = ModPoly::one(p).rem(f);
        for _ in 0..d {
            let mut row = cur.coeffs.clone();
            row.resize(d, 0);
            rows.push(row);
            cur = cur.mul_mod(&xp, f);
        }
        Frobenius { modulus: f.clone(), rows }
    }

    /// `h^p mod f` for `h` already reduced mod `f`.
    pub fn apply(&self, h: &ModPoly) -> ModPoly {
        let p = self.modulus.p as u128;
        let d = self.rows.len();
        let mut acc = vec![0u128; d];
        for (j, &c) in h.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (a, &q) in acc.iter_mut().zip(&self.rows[j]) {
                *a += c as u128 * q as u128;
                if *a >= 1u128 << 126 {
                    *a %= p;
                }
            }
        }
        ModPoly::new(acc.into_iter().map(|c| (c % p) as u64).collect(), self.modulus.p)
    }
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs
/// `(product of all irreducible factors of degree i, i)`.
pub fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let frob = Frobenius::new(f);
    let x = ModPoly::x(p).rem(f);
    let mut h = x.clone();
    let mut rest = f.monic();
    let mut i = 0;
    while rest.deg() >= 2 * (i + 1) {
        i += 1;
        h = frob.apply(&h);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            rest = rest.div_exact(&g);
            out.push((g, i));
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Degrees of the irreducible factors of a squarefree polynomial.
pub fn factor_degrees(f: &ModPoly) -> Vec<usize> {
    let mut degs = Vec::new();
    for (g, i) in distinct_degree(f) {
        degs.extend(std::iter::repeat(i).take(g.deg() / i));
    }
    degs
}

fn random_poly(rng: &mut ChaCha8Rng, deg_below: usize, p: u64) -> ModPoly {
    ModPoly::new((0..deg_below).map(|_| rng.gen_range(0..p)).collect(), p)
}

/// Splits a monic squarefree product of irreducibles of common degree `e`.
pub fn equal_degree(g: &ModPoly, e: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let p = g.p;
    if g.deg() == e {
        return vec![g.monic()];
    }
    let frob = Frobenius::new(g);
    let mut pending = vec![g.monic()];
    let mut done = Vec::new();
    while let Some(cur) = pending.pop() {
        if cur.deg() == e {
            done.push(cur);
            continue;
        }
        loop {
            let a = random_poly(rng, g.deg(), p).rem(g);
            if a.deg() == 0 {
                continue;
            }
            // Work modulo g so the shared Frobenius matrix applies.
            let b = if p == 2 {
                // Trace from F_{2^e} down to F_2.
                let mut acc = a.clone();
                let mut pw = a.clone();
                for _ in 1..e {
                    pw = pw.mul_mod(&pw, g);
                    acc = acc.add(&pw);
                }
                acc
            } else {
                // a^((p^e - 1)/2) = (a * a^p * ... * a^(p^(e-1)))^((p-1)/2)
                let mut norm = a.clone();
                let mut pw = a.clone();
                for _ in 1..e {
                    pw = frob.apply(&pw);
                    norm = norm.mul_mod(&pw, g);
                }
                norm.pow_mod(&BigUint::from((p - 1) / 2), g).sub(&ModPoly::one(p))
            };
            let d = cur.gcd(&b.rem(&cur));
            if d.deg() > 0 && d.deg() < cur.deg() {
                let other = cur.div_exact(&d);
                pending.push(d);
                pending.push(other.monic());
                break;
            }
        }
    }
    done.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
    done
}

/// Squarefree decomposition over `F_p`: monic `(part, multiplicity)` pairs.
pub fn squarefree_mod_p(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out);
    out.sort_by_key(|(g, m)| (*m, g.coeffs.clone()));
    out
}

fn sqf_rec(f: &ModPoly, scale: u32, out: &mut Vec<(ModPoly, u32)>) {
    if f.deg() == 0 {
        return;
    }
    let p = f.p;
    let df = f.derivative();
    if df.is_zero() {
        sqf_rec(&f.pth_root(), scale * p as u32, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.deg() > 0 {
            out.push((z, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if c.deg() > 0 {
        sqf_rec(&c.pth_root(), scale * p as u32, out);
    }
}

pub(crate) fn seed_from(f: &IntPoly, extra: u64) -> u64 {
    // FNV-1a over the decimal coefficients keeps the seed platform independent.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ extra.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for c in f.coeffs() {
        for b in c.to_string().bytes().chain(std::iter::once(b',')) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

pub(crate) fn rng_for(f: &ModPoly, seed: u64) -> ChaCha8Rng {
    let mut h = seed ^ f.p.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for &c in &f.coeffs {
        h = (h ^ c).wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// Complete factorization over `F_p`: monic irreducible factors with
/// multiplicities, plus the leading coefficient. The factor list is sorted by
/// `(degree, coefficients)`.
pub fn factor_mod_p_with_unit(f: &ModPoly, seed: u64) -> Result<(u64, Vec<(ModPoly, u32)>)> {
    let p = f.p;
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = rng_for(f, seed);
    let mut out = Vec::new();
    for (part, mult) in squarefree_mod_p(f) {
        for (block, e) in distinct_degree(&part) {
            for g in equal_degree(&block, e, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then_with(|| a.coeffs.cmp(&b.coeffs)));
    Ok((f.lead(), out))
}

pub fn factor_mod_p(f: &ModPoly) -> Result<Vec<(ModPoly, u32)>> {
    factor_mod_p_with_unit(f, 0).map(|(_, fs)| fs)
}

/// Big-integer `p^e`.
pub fn big_pow(p: u64, e: usize) -> BigUint {
    num_traits::pow(BigUint::from(p), e)
}

impl ModPoly {
    /// `self(t^k)`.
    pub fn inflate(&self, k: usize) -> ModPoly {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![0u64; self.deg() * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        ModPoly::new(coeffs, self.p)
    }
}

impl From<(&IntPoly, u64)> for ModPoly {
    fn from((f, p): (&IntPoly, u64)) -> Self {
        ModPoly::from_int_poly(f, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(fs: &[(ModPoly, u32)], p: u64) -> ModPoly {
        let mut acc = ModPoly::one(p);
        for (g, m) in fs {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }

    #[test]
    fn small_examples() {
        let f = ModPoly::from_i64s(&[1, 0, 1], 5);
        let fs = factor_mod_p(&f).unwrap();
        assert_eq!(fs, vec![(ModPoly::from_i64s(&[2, 1], 5), 1), (ModPoly::from_i64s(&[3, 1], 5), 1)]);
        let g = ModPoly::from_i64s(&[1, 0, 1], 3);
        assert_eq!(factor_mod_p(&g).unwrap(), vec![(g.clone(), 1)]);
        let h = ModPoly::from_i64s(&[1, 0, -3, 0, 1], 7);
        let degs: Vec<usize> = factor_mod_p(&h).unwrap().iter().map(|(g, _)| g.deg()).collect();
        assert_eq!(degs, vec![2, 2]);
        assert!(matches!(factor_mod_p(&ModPoly::new(vec![1, 1], 9)), Err(Error::CompositeModulus(9))));
    }

    /// Brute force: all monic polynomials of degree <= 2 over F_7 dividing
    /// t^4 - 3t^2 + 1; the irreducible ones have degree exactly 2.
    #[test]
    fn brute_force_degrees_mod_7() {
        let p = 7;
        let h = ModPoly::from_i64s(&[1, 0, -3, 0, 1], p);
        let mut linear = 0;
        let mut quadratic_divisors = Vec::new();
        for a in 0..p {
            if h.rem(&ModPoly::new(vec![a, 1], p)).is_zero() {
                linear += 1;
            }
            for b in 0..p {
                let q = ModPoly::new(vec![b, a, 1], p);
                if h.rem(&q).is_zero() {
                    quadratic_divisors.push(q);
                }
            }
        }
        assert_eq!(linear, 0);
        assert_eq!(quadratic_divisors.len(), 2);
    }

    #[test]
    fn repeated_factors_and_char_two() {
        for p in [2u64, 3, 5, 13] {
            let a = ModPoly::from_i64s(&[1, 1], p);
            let b = ModPoly::from_i64s(&[1, 1, 1], p);
            let c = ModPoly::from_i64s(&[1, 0, 1, 1], p);
            let f = a.mul(&a).mul(&a).mul(&b).mul(&b).mul(&c).scale(if p > 2 { 2 } else { 1 });
            let (u, fs) = factor_mod_p_with_unit(&f, 7).unwrap();
            assert_eq!(product(&fs, p).scale(u), f, "p = {p}");
            for (g, _) in &fs {
                assert_eq!(factor_degrees(g).len(), 1, "factor {g:?} not irreducible");
            }
        }
    }

    #[test]
    fn ddf_degree_counts() {
        // t^15 - 1 over F_2: Phi_1 Phi_3 Phi_5 Phi_15 -> degrees 1, 2, 4, 4, 4
        let f = ModPoly::from_i64s(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1], 2);
        let mut degs = factor_degrees(&f);
        degs.sort();
        assert_eq!(degs, vec![1, 2, 4, 4, 4]);
    }
}
