//! Murasugi's congruence as a periodicity screen.
//!
//! If a knot with Alexander polynomial `Δ` has period `q = p^r`, then for some
//! linking number `λ` and quotient polynomial `D`,
//! `Δ ≡ ± t^a D(t)^q (1 + t + ... + t^{λ-1})^{q-1} (mod p)`. Over `F_p`,
//! `D(t)^q = D(t^q)`, so `D` is read off by exact division. Passing the screen
//! is necessary, not sufficient, for periodicity.

use std::cell::OnceCell;

use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::factor::factor_over_z;
use crate::modp::ModPoly;
use crate::poly::{FactoredPoly, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MurasugiHit {
    pub q: u64,
    pub lambda: u64,
    /// `D` with coefficients in `[0, p)`, normalized so `D(1) ≡ 1 (mod p)`.
    pub quotient: IntPoly,
    pub shift: u32,
    pub sign: i8,
    /// Some integer divisor `W` of `Δ` with `W(1) = ±1` reduces to `±D` mod `p`.
    pub divides: bool,
    pub divisor: Option<IntPoly>,
}

/// `(1 + t + ... + t^{λ-1})^{q-1}` over `F_p`.
fn linking_factor(lambda: u64, q: u64, p: u64) -> ModPoly {
    let s = ModPoly::new(vec![1; lambda as usize], p);
    (1..q).fold(ModPoly::one(p), |acc, _| acc.mul(&s))
}

fn check_alexander_like(delta: &IntPoly) -> Result<()> {
    if delta.is_zero() || delta.constant_term() == 0.into() {
        return Err(Error::NotAlexander(format!("{delta} vanishes at t = 0")));
    }
    let v = delta.eval_one();
    if v != 1.into() && v != (-1).into() {
        return Err(Error::NotAlexander(format!("value at t = 1 is {v}")));
    }
    Ok(())
}

/// First sub-product `W` of the factorization (deterministic order) with
/// `W ≡ ±target (mod p)` and `W(1) = ±1`.
fn find_divisor(fac: &FactoredPoly, target: &ModPoly) -> Option<IntPoly> {
    let want = target.deg();
    let neg = target.scale(target.modulus() - 1);
    let parts: Vec<(&IntPoly, u32)> = fac.factors.iter().map(|(f, a)| (f, *a)).collect();
    let mut budget: u64 = 1 << 20;

    fn go(
        parts: &[(&IntPoly, u32)],
        acc: IntPoly,
        want: usize,
        target: &ModPoly,
        neg: &ModPoly,
        budget: &mut u64,
    ) -> Option<IntPoly> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let Some(((f, a), rest)) = parts.split_first() else {
            if acc.deg() != want {
                return None;
            }
            let r = ModPoly::from_int_poly(&acc, target.modulus());
            let v = acc.eval_one();
            let unit = v == 1.into() || v == (-1).into();
            return (unit && (r == *target || r == *neg)).then_some(acc);
        };
        let mut cur = acc;
        for e in 0..=*a {
            if e > 0 {
                cur = &cur * *f;
            }
            if cur.deg() > want {
                break;
            }
            if let Some(w) = go(rest, cur.clone(), want, target, neg, budget) {
                return Some(w);
            }
        }
        None
    }

    go(&parts, IntPoly::one(), want, target, &neg, &mut budget)
}

/// Independent re-check of a hit: builds the right-hand side with naive
/// powering of `D` (no Frobenius shortcut) and compares with `Δ mod p`.
pub fn recheck_hit(delta: &IntPoly, hit: &MurasugiHit) -> bool {
    let Some((p, _)) = prime_power(hit.q) else {
        return false;
    };
    let reduce = |c: &num_bigint::BigInt| -> u64 {
        let m = c % num_bigint::BigInt::from(p);
        let m = if m < 0.into() { m + p } else { m };
        u64::try_from(m).unwrap()
    };
    let mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    };
    let d: Vec<u64> = hit.quotient.coeffs().iter().map(reduce).collect();
    if d.is_empty() {
        return false;
    }
    let mut rhs = vec![if hit.sign < 0 { p - 1 } else { 1 } % p];
    for _ in 0..hit.q {
        rhs = mul(&rhs, &d);
    }
    let s = vec![1u64; hit.lambda as usize];
    for _ in 1..hit.q {
        rhs = mul(&rhs, &s);
    }
    let mut shifted = vec![0u64; hit.shift as usize];
    shifted.extend(rhs);
    while shifted.last() == Some(&0) {
        shifted.pop();
    }
    let mut lhs: Vec<u64> = delta.coeffs().iter().map(reduce).collect();
    while lhs.last() == Some(&0) {
        lhs.pop();
    }
    lhs == shifted
}

fn screen(delta: &IntPoly, q: u64, fac: &OnceCell<FactoredPoly>) -> Result<Vec<MurasugiHit>> {
    let (p, _) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    check_alexander_like(delta)?;
    let dp = ModPoly::from_int_poly(delta, p);
    let mut hits = Vec::new();
    if dp.is_zero() {
        return Ok(hits);
    }
    let deg = delta.deg() as u64;
    let mut lambda = 1u64;
    while (lambda - 1) * (q - 1) <= deg {
        let s = linking_factor(lambda, q, p);
        lambda += 1;
        if s.deg() > dp.deg() {
            continue;
        }
        let (quot, rem) = dp.div_rem(&s);
        if !rem.is_zero() {
            continue;
        }
        let shift = quot.coeffs().iter().take_while(|&&c| c == 0).count();
        let rest = ModPoly::new(quot.coeffs()[shift..].to_vec(), p);
        if rest.coeffs().iter().enumerate().any(|(i, &c)| c != 0 && i as u64 % q != 0) {
            continue;
        }
        let mut d = ModPoly::new(rest.coeffs().iter().step_by(q as usize).copied().collect(), p);
        let sign = match d.eval(1) {
            1 => 1i8,
            v if v == p - 1 => {
                d = d.scale(p - 1);
                -1
            }
            _ => continue,
        };
        let divisor = {
            let fac = match fac.get() {
                Some(f) => f,
                None => {
                    let f = factor_over_z(delta)?;
                    let _ = fac.set(f);
                    fac.get().unwrap()
                }
            };
            find_divisor(fac, &d)
        };
        let hit = MurasugiHit {
            q,
            lambda: lambda - 1,
            quotient: d.to_int_poly(),
            shift: shift as u32,
            sign,
            divides: divisor.is_some(),
            divisor,
        };
        if !recheck_hit(delta, &hit) {
            return Err(Error::Internal(format!("Murasugi hit {hit:?} failed re-verification")));
        }
        hits.push(hit);
    }
    Ok(hits)
}

/// All congruence solutions for `Δ` at the prime power `q`.
pub fn murasugi_screen(delta: &IntPoly, q: u64) -> Result<Vec<MurasugiHit>> {
    screen(delta, q, &OnceCell::new())
}

/// As [`murasugi_screen`], reusing a known factorization of `Δ`.
pub fn murasugi_screen_factored(delta: &IntPoly, fac: &FactoredPoly, q: u64) -> Result<Vec<MurasugiHit>> {
    screen(delta, q, &OnceCell::from(fac.clone()))
}

/// Prime powers `q` examined by [`murasugi_screen_all`]: `2 ≤ q ≤ max(deg Δ + 1, 2)`.
pub fn screened_prime_powers(delta: &IntPoly) -> Vec<u64> {
    let top = (delta.deg() as u64 + 1).max(2);
    (2..=top).filter(|&q| prime_power(q).is_some()).collect()
}

pub fn murasugi_screen_all(delta: &IntPoly) -> Result<Vec<MurasugiHit>> {
    check_alexander_like(delta)?;
    let fac = OnceCell::new();
    let mut out = Vec::new();
    for q in screened_prime_powers(delta) {
        out.extend(screen(delta, q, &fac)?);
    }
    Ok(out)
}

/// [`murasugi_screen_all`] with a known factorization.
pub fn murasugi_screen_all_factored(delta: &IntPoly, fac: &FactoredPoly) -> Result<Vec<MurasugiHit>> {
    check_alexander_like(delta)?;
    let cell = OnceCell::from(fac.clone());
    let mut out = Vec::new();
    for q in screened_prime_powers(delta) {
        out.extend(screen(delta, q, &cell)?);
    }
    Ok(out)
}
