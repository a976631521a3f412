//! Witness construction and exact verification of `Δ(t^n) = ±∏ g(ζ_n^i t)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{hartley_profile, is_n_hartley, BoundMode, EValue, HartleyProfile};
use crate::arith::{prime_factors, valuation};
use crate::cyclotomic::cyclotomic;
use crate::error::{Error, Result};
use crate::factor::find_factor_of_degree;
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub n: u64,
    pub witness: IntPoly,
    pub sign: i8,
    pub verified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub holds: bool,
    /// `±1` when `holds`.
    pub sign: Option<i8>,
}

/// `∏_{ω^n = 1} g(ω t)` via power sums, or `None` if some coefficient is not
/// an integer (impossible for integer `g`; kept as a consistency check).
///
/// With `g = c ∏ (t - β_j)` this equals `c^n (-1)^{(n+1) d} ∏ (t^n - β_j^n)`.
/// The `γ_j = c β_j` are the roots of the monic integer `c^{d-1} g(u / c)`,
/// whose power sums give the coefficients of `∏ (T - γ_j^n)`.
pub fn witness_product(g: &IntPoly, n: u64) -> Option<IntPoly> {
    assert!(n >= 1);
    if g.is_zero() {
        return Some(IntPoly::zero());
    }
    let n = n as usize;
    let d = g.deg();
    let c = g.leading();
    if d == 0 {
        return Some(IntPoly::constant(c.pow(n as u32)));
    }
    // e[i] is the coefficient of u^{d-i} in the monic transform.
    let mut e = vec![BigInt::one(); d + 1];
    let mut cpow = BigInt::one();
    for i in 1..=d {
        e[i] = g.coeff(d - i) * &cpow;
        cpow *= &c;
    }
    let total = n * d;
    let mut power_sums = vec![BigInt::zero(); total + 1];
    power_sums[0] = BigInt::from(d);
    for m in 1..=total {
        let mut s = if m <= d { &e[m] * BigInt::from(m) } else { BigInt::zero() };
        for i in 1..=m.saturating_sub(1).min(d) {
            s += &e[i] * &power_sums[m - i];
        }
        power_sums[m] = -s;
    }
    // Elementary symmetric functions of γ_j^n from the power sums Q_k = P_{kn}.
    let mut el = vec![BigInt::one(); d + 1];
    for k in 1..=d {
        let mut s = BigInt::zero();
        for i in 1..=k {
            let term = &el[k - i] * &power_sums[i * n];
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        let (q, r) = s.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return None;
        }
        el[k] = q;
    }
    let overall_negative = ((n + 1) * d) % 2 == 1;
    let cn = c.pow(n as u32);
    let mut coeffs = vec![BigInt::zero(); n * d + 1];
    for j in 0..=d {
        // Coefficient of T^j in H is (-1)^{d-j} el[d-j]; scale by c^{n(1 - d + j)}.
        let mut h = el[d - j].clone();
        if (d - j) % 2 == 1 {
            h = -h;
        }
        let value = if j + 1 >= d {
            h * cn.pow((j + 1 - d) as u32)
        } else {
            let den = cn.pow((d - 1 - j) as u32);
            let (q, r) = h.div_rem(&den);
            if !r.is_zero() {
                return None;
            }
            q
        };
        coeffs[n * j] = if overall_negative { -value } else { value };
    }
    Some(IntPoly::new(coeffs))
}

/// The same product computed literally: multiply `g(y^i t)` for `i < n` with
/// coefficients in `Z[y]/(y^n - 1)`, then reduce each coefficient modulo
/// `Φ_n(y)` and require it to be an integer.
pub fn witness_product_ring(g: &IntPoly, n: u64) -> Option<IntPoly> {
    assert!(n >= 1);
    let nn = n as usize;
    if g.is_zero() {
        return Some(IntPoly::zero());
    }
    // acc[k] is the coefficient of t^k, a vector of length n indexed by powers of y.
    let mut acc: Vec<Vec<BigInt>> = vec![{
        let mut one = vec![BigInt::zero(); nn];
        one[0] = BigInt::one();
        one
    }];
    for i in 0..nn {
        let mut next = vec![vec![BigInt::zero(); nn]; acc.len() + g.deg()];
        for (k, gk) in g.coeffs().iter().enumerate() {
            if gk.is_zero() {
                continue;
            }
            let shift = (i * k) % nn;
            for (a, coeff) in acc.iter().enumerate() {
                let target = &mut next[a + k];
                for (y, v) in coeff.iter().enumerate() {
                    if !v.is_zero() {
                        target[(y + shift) % nn] += v * gk;
                    }
                }
            }
        }
        acc = next;
    }
    let phi = cyclotomic(n);
    let mut out = Vec::with_capacity(acc.len());
    for coeff in acc {
        let r = IntPoly::new(coeff).pseudo_rem(&phi);
        if r.deg() > 0 {
            return None;
        }
        out.push(r.coeff(0));
    }
    Some(IntPoly::new(out))
}

fn compare(delta: &IntPoly, n: u64, product: Option<IntPoly>) -> WitnessCheck {
    let target = delta.inflate(n as usize);
    match product {
        Some(p) if p == target => WitnessCheck { holds: true, sign: Some(1) },
        Some(p) if p == -&target => WitnessCheck { holds: true, sign: Some(-1) },
        _ => WitnessCheck { holds: false, sign: None },
    }
}

/// Checks `Δ(t^n) = ±∏_{i<n} g(ζ_n^i t)` exactly.
pub fn verify_witness(delta: &IntPoly, n: u64, g: &IntPoly) -> WitnessCheck {
    if n == 0 || g.deg() != delta.deg() {
        return WitnessCheck { holds: false, sign: None };
    }
    compare(delta, n, witness_product(g, n))
}

/// [`verify_witness`] through the quotient ring `Z[y]/Φ_n(y)` directly.
pub fn verify_witness_ring(delta: &IntPoly, n: u64, g: &IntPoly) -> WitnessCheck {
    if n == 0 || g.deg() != delta.deg() {
        return WitnessCheck { holds: false, sign: None };
    }
    compare(delta, n, witness_product_ring(g, n))
}

/// Least representative of `g` under the substitutions `t -> ζ_n^j t` that
/// keep integer coefficients and under negation: positive leading
/// coefficient, then lexicographically least ascending coefficient list.
pub fn canonicalize_witness(g: &IntPoly, n: u64) -> IntPoly {
    if g.is_zero() {
        return g.clone();
    }
    let support: Vec<u64> = (0..g.coeffs().len() as u64).filter(|&k| !g.coeff(k as usize).is_zero()).collect();
    let mut best: Option<IntPoly> = None;
    for j in 0..n {
        if !support.iter().all(|&k| (2 * j * k) % n == 0) {
            continue;
        }
        let rotated = IntPoly::new(
            g.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| if ((2 * j * k as u64) / n) % 2 == 1 { -c } else { c.clone() })
                .collect(),
        );
        let candidate = if rotated.leading().is_negative() { -rotated } else { rotated };
        if best.as_ref().map_or(true, |b| candidate.coeffs() < b.coeffs()) {
            best = Some(candidate);
        }
    }
    best.expect("j = 0 always qualifies")
}

/// Builds and verifies a witness for `Δ` at `n`.
pub fn construct_witness(delta: &IntPoly, n: u64, mode: BoundMode) -> Result<WitnessCertificate> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    let profile = hartley_profile(delta, mode)?;
    construct_witness_with_profile(delta, &profile, n)
}

/// As [`construct_witness`], reusing a profile already computed for `Δ`.
pub fn construct_witness_with_profile(delta: &IntPoly, profile: &HartleyProfile, n: u64) -> Result<WitnessCertificate> {
    if !is_n_hartley(profile, n)? {
        return Err(Error::NotHartley(n));
    }
    let nn = n as usize;
    let mut g = IntPoly::monomial(BigInt::one(), profile.t_power as usize);
    for fd in &profile.factor_data {
        let f = &fd.factor;
        let mut s = 1u64;
        for p in prime_factors(n) {
            let room = match fd.e {
                EValue::Finite(e) => valuation(e, p),
                EValue::CyclotomicZero(m) if m % p == 0 => 0,
                EValue::CyclotomicZero(_) => u32::MAX,
            };
            s *= p.pow(room.min(valuation(n, p)));
        }
        // Φ_m(t^s) with gcd(s, m) = 1 has Φ_m itself as a factor.
        let w = if s == 1 || matches!(fd.e, EValue::CyclotomicZero(_)) {
            f.clone()
        } else {
            find_factor_of_degree(&f.inflate(s as usize), f.deg())?.ok_or_else(|| {
                Error::Internal(format!("{f}(t^{s}) has no factor of degree {} despite E", f.deg()))
            })?
        };
        let numer = fd.multiplicity as u64 * s;
        if numer % n != 0 {
            return Err(Error::Internal(format!("multiplicity {} * {s} not divisible by {n}", fd.multiplicity)));
        }
        g = &g * &w.inflate(nn / s as usize).pow((numer / n) as u32);
    }
    let g = canonicalize_witness(&g, n);
    let check = verify_witness(delta, n, &g);
    if !check.holds {
        return Err(Error::Internal(format!("constructed witness {g} fails at n = {n}")));
    }
    Ok(WitnessCertificate { n, witness: g, sign: check.sign.unwrap(), verified: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    const H: BoundMode = BoundMode::Heuristic;

    #[test]
    fn product_routes_agree() {
        let gs = [p(&[-1, -1, 1]), p(&[2, -1, -1, 1]), p(&[1, 0, 3, -2]), p(&[0, 1, 1]), p(&[5]), p(&[-1, 2, 0, 0, 3])];
        for g in &gs {
            for n in 1..=7 {
                assert_eq!(witness_product(g, n), witness_product_ring(g, n), "{g} at {n}");
            }
        }
    }

    #[test]
    fn verify_examples() {
        let k = p(&[4, -17, 38, -51, 38, -17, 4]);
        let h1 = p(&[2, -1, -1, 1]);
        let h2 = p(&[1, -1, -1, 2]);
        let g = &h1 * &h2;
        assert_eq!(verify_witness(&k, 2, &g), WitnessCheck { holds: true, sign: Some(1) });
        let f1 = p(&[-4, 5, -3, 1]);
        assert_eq!(verify_witness(&f1, 2, &h1), WitnessCheck { holds: true, sign: Some(-1) });
        assert!(verify_witness(&p(&[1, -3, 1]), 2, &p(&[-1, -1, 1])).holds);
        assert!(!verify_witness(&p(&[-1, -1, 1]), 2, &p(&[-1, -1, 1])).holds);
        assert_eq!(verify_witness_ring(&f1, 2, &h1), verify_witness(&f1, 2, &h1));
    }

    #[test]
    fn construct_examples() {
        let c = construct_witness(&p(&[1, -3, 1]), 2, H).unwrap();
        assert_eq!(c.witness, p(&[-1, -1, 1]));
        assert_eq!(c.sign, 1);
        let c = construct_witness(&p(&[-1, -1, 1]).pow(2), 2, H).unwrap();
        assert_eq!(c.witness, p(&[-1, 0, -1, 0, 1]));
        let c = construct_witness(&p(&[-1, 1]), 2, H).unwrap();
        assert_eq!((c.witness, c.sign), (p(&[-1, 1]), -1));
        assert!(matches!(construct_witness(&p(&[-1, -1, 1]), 2, H), Err(Error::NotHartley(2))));
    }

    #[test]
    fn canonical_rotation() {
        assert_eq!(canonicalize_witness(&p(&[-1, 1, 1]), 2), p(&[-1, -1, 1]));
        // Odd n admits no nontrivial integral rotation of t + 1.
        assert_eq!(canonicalize_witness(&p(&[1, 1]), 3), p(&[1, 1]));
    }
}
