//! Quadratic Hensel lifting of a modular factorization.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::modp::ModPoly;
use crate::poly::IntPoly;

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

pub(crate) fn symmetric(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half: BigInt = m >> 1;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mul_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    reduce(&(a * b), m)
}

/// Division by a monic `h` modulo `m`.
fn div_rem_monic(a: &IntPoly, h: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    debug_assert!(h.leading().is_one());
    let n = a.coeffs().len();
    let k = h.coeffs().len();
    if n < k {
        return (IntPoly::zero(), reduce(a, m));
    }
    let mut rem: Vec<BigInt> = a.coeffs().iter().map(|c| c.mod_floor(m)).collect();
    let mut quot = vec![BigInt::zero(); n - k + 1];
    for i in (0..quot.len()).rev() {
        let q = rem[i + k - 1].mod_floor(m);
        if q.is_zero() {
            continue;
        }
        for (j, d) in h.coeffs().iter().enumerate() {
            rem[i + j] = (&rem[i + j] - &q * d).mod_floor(m);
        }
        quot[i] = q;
    }
    rem.truncate(k - 1);
    (IntPoly::new(quot), IntPoly::new(rem))
}

/// Extended Euclid over `F_p`: `(s, t)` with `s a + t b = 1`, `deg s < deg b`.
fn bezout_mod_p(a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly) {
    let p = a.modulus();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
    let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t2);
    }
    debug_assert_eq!(r0.deg(), 0, "inputs not coprime mod p");
    let inv = crate::arith::pow_mod(r0.lead(), p - 2, p);
    let s = s0.scale(inv);
    let t = t0.scale(inv);
    let (q, s_red) = s.div_rem(b);
    (s_red, t.add(&q.mul(a)))
}

fn lift_int(f: &ModPoly) -> IntPoly {
    f.to_int_poly()
}

/// Lifts `f = g h (mod p)` with `h` monic to a factorization modulo `p^(2^j) >= bound`.
fn lift_pair(f: &IntPoly, g: &ModPoly, h: &ModPoly, bound: &BigUint) -> (IntPoly, IntPoly, BigInt) {
    let p = g.modulus();
    let (s0, t0) = bezout_mod_p(g, h);
    let mut m = BigInt::from(p);
    let (mut g, mut h) = (lift_int(g), lift_int(h));
    let (mut s, mut t) = (lift_int(&s0), lift_int(&t0));
    let target = BigInt::from(bound.clone());
    while m <= target {
        let m2 = &m * &m;
        let e = reduce(&(f - &(&g * &h)), &m2);
        let (q, r) = div_rem_monic(&mul_mod(&s, &e, &m2), &h, &m2);
        let g_new = reduce(&(&(&g + &(&t * &e)) + &(&q * &g)), &m2);
        let h_new = reduce(&(&h + &r), &m2);
        let b = reduce(&(&(&(&s * &g_new) + &(&t * &h_new)) - &IntPoly::one()), &m2);
        let (c, d) = div_rem_monic(&mul_mod(&s, &b, &m2), &h_new, &m2);
        s = reduce(&(&s - &d), &m2);
        t = reduce(&(&(&t - &(&t * &b)) - &(&c * &g_new)), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (g, h, m)
}

/// Lifts the monic modular factors of `f` (with `f = lc * prod factors mod p`)
/// to monic factors modulo some `p^k > bound`. Returns the factors and `p^k`.
pub(crate) fn hensel_lift(f: &IntPoly, factors: &[ModPoly], bound: &BigUint) -> (Vec<IntPoly>, BigInt) {
    let p = factors[0].modulus();
    let lc_mod = ModPoly::from_int_poly(&IntPoly::constant(f.leading()), p);
    let lc = lc_mod.lead();
    if factors.len() == 1 {
        let mut m = BigInt::from(p);
        let target = BigInt::from(bound.clone());
        while m <= target {
            m = &m * &m;
        }
        let inv = f.leading().modinv(&m).expect("leading coefficient is a unit");
        return (vec![reduce(&f.scale(&inv), &m)], m);
    }
    let mut lifted = Vec::with_capacity(factors.len());
    let mut cur = f.clone();
    let mut modulus = BigInt::one();
    for (i, u) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            // The remaining cofactor carries lc(f); make it monic.
            let lead = cur.leading();
            let inv = lead.modinv(&modulus).expect("leading coefficient is a unit");
            lifted.push(reduce(&cur.scale(&inv), &modulus));
            break;
        }
        let rest = factors[i + 1..].iter().fold(ModPoly::one(p).scale(lc), |acc, v| acc.mul(v));
        let (g, h, m) = lift_pair(&cur, &rest, u, bound);
        lifted.push(h);
        cur = g;
        modulus = m;
    }
    (lifted, modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts_reproduce_input() {
        // (t^2 - t - 1)(t^2 + t - 1) with leading coefficient 3 folded in.
        let f = (&IntPoly::from_i64s(&[-1, -1, 1]) * &IntPoly::from_i64s(&[-1, 1, 1])).scale(&BigInt::from(3));
        let p = 7u64;
        let fp = ModPoly::from_int_poly(&f, p);
        let facs = crate::modp::factor_mod_p(&fp).unwrap();
        let mods: Vec<ModPoly> = facs.into_iter().map(|(g, _)| g).collect();
        let (lifted, m) = hensel_lift(&f, &mods, &BigUint::from(10_000u32));
        assert!(m > BigInt::from(10_000));
        let prod = lifted.iter().fold(IntPoly::constant(f.leading()), |acc, u| mul_mod(&acc, u, &m));
        assert_eq!(reduce(&prod, &m), reduce(&f, &m));
    }
}
