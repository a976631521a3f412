//! n-Hartley polynomials: `E` values, the per-prime cap profile, and witnesses.
//!
//! `Δ` is n-Hartley when `Δ(t^n) = ±∏_{i<n} g(ζ_n^i t)` for an integer
//! polynomial `g`. Writing `Δ = ±∏ f_i^{a_i}`, this holds iff for every prime
//! `p`, `v_p(n) ≤ min_i (v_p(a_i) + s_i(p))`, where `s_i(p) = v_p(E(f_i))` for
//! non-cyclotomic `f_i`, and for `f_i = Φ_m` it is 0 if `p | m`, unbounded
//! otherwise.

mod bound;
mod knot;
mod power;
mod witness;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{divisors, prime_factors, primes_up_to, valuation};
use crate::cyclotomic::{cyclotomic_tag, CyclotomicTag};
use crate::error::{Error, Result};
use crate::factor::factor_over_z;
use crate::poly::{FactoredPoly, IntPoly};

pub use bound::{
    m_min_log2, min_measure_search, prime_bound, recompute_mmin_entry, table_search_ceiling, voutier_log2,
    BoundMode, MinMeasureSearch, LEHMER_LOG2, MMIN_LOG2_GRID, MMIN_TABLE_MAX_DEGREE,
};
pub use knot::{hartley_knot_check, normalize_alexander, KnotCheckReport, WitnessDiagnostics};
pub use power::{power_index, power_residue_filter, rational_power_index, root_is_power, EValue};
pub use witness::{
    canonicalize_witness, construct_witness, construct_witness_with_profile, verify_witness, verify_witness_ring,
    witness_product, witness_product_ring, WitnessCertificate, WitnessCheck,
};

/// `E` of a root of the irreducible primitive `f`.
pub fn e_of_irreducible(f: &IntPoly, mode: BoundMode) -> Result<EValue> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_primitive() {
        return Err(Error::NotPrimitive(f.content().to_string()));
    }
    if !factor_over_z(f)?.is_irreducible() {
        return Err(Error::Reducible);
    }
    e_value(f, mode)
}

/// [`e_of_irreducible`] without the irreducibility check.
pub(crate) fn e_value(f: &IntPoly, mode: BoundMode) -> Result<EValue> {
    if let CyclotomicTag::Cyclotomic(m) = cyclotomic_tag(f) {
        return Ok(EValue::CyclotomicZero(m));
    }
    match f.deg() {
        0 => Err(Error::DegreeTooSmall(0)),
        1 => {
            let (num, den) = power::linear_root(f);
            rational_power_index(&num, &den)
        }
        _ => {
            let bound = prime_bound(f, mode)?;
            let mut e = 1u64;
            for p in primes_up_to(bound) {
                e *= p.pow(power_index(f, p)?);
            }
            if e > 1 && !root_is_power(f, e)? {
                return Err(Error::Internal(format!("E = {e} for {f} failed recertification")));
            }
            Ok(EValue::Finite(e))
        }
    }
}

/// Ceiling on `v_p(n)`; `Infinite` imposes no constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cap {
    Finite(u32),
    Infinite,
}

impl Cap {
    fn add(self, k: u32) -> Cap {
        match self {
            Cap::Finite(c) => Cap::Finite(c + k),
            Cap::Infinite => Cap::Infinite,
        }
    }

    pub fn allows(self, v: u32) -> bool {
        match self {
            Cap::Finite(c) => v <= c,
            Cap::Infinite => true,
        }
    }
}

impl fmt::Display for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cap::Finite(c) => write!(f, "{c}"),
            Cap::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Cap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cap::Finite(c) => s.serialize_u32(*c),
            Cap::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Cap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(c) => Ok(Cap::Finite(c)),
            Raw::Text(s) if s == "inf" => Ok(Cap::Infinite),
            Raw::Text(s) => Err(serde::de::Error::custom(format!("bad cap `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorData {
    pub factor: IntPoly,
    pub multiplicity: u32,
    pub e: EValue,
}

impl FactorData {
    /// `s(p)`: the contribution of the root's own power structure at `p`.
    fn slack(&self, p: u64) -> Cap {
        match self.e {
            EValue::Finite(e) => Cap::Finite(valuation(e, p)),
            EValue::CyclotomicZero(m) if m % p == 0 => Cap::Finite(0),
            EValue::CyclotomicZero(_) => Cap::Infinite,
        }
    }

    fn cap(&self, p: u64) -> Cap {
        self.slack(p).add(valuation(self.multiplicity as u64, p))
    }
}

/// Finite description of every `n` for which `Δ` is n-Hartley.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HartleyProfile {
    pub mode: BoundMode,
    /// False when the exponent bound rests on Lehmer's conjecture.
    pub rigorous: bool,
    /// Power of `t` stripped from `Δ` (no constraint).
    pub t_power: u32,
    pub factor_data: Vec<FactorData>,
    /// Caps at every prime where some factor is constrained; other primes get `default_cap`.
    pub caps: BTreeMap<u64, Cap>,
    pub default_cap: Cap,
    /// `gcd(a_i E_i)` over the factors with cyclotomic factors contributing 0;
    /// `None` for cyclotomic products.
    pub e_delta: Option<u64>,
    /// Set when `e_delta` disagrees with the cap-based answer (mixed products).
    pub gcd_discrepancy: bool,
}

impl HartleyProfile {
    pub fn cap(&self, p: u64) -> Cap {
        self.caps.get(&p).copied().unwrap_or(self.default_cap)
    }

    pub fn has_non_cyclotomic_factor(&self) -> bool {
        self.factor_data.iter().any(|fd| matches!(fd.e, EValue::Finite(_)))
    }

    /// `∏ p^cap(p)` when the set is finite.
    pub fn cap_product(&self) -> Option<u64> {
        if self.default_cap != Cap::Finite(0) {
            return None;
        }
        self.caps.iter().try_fold(1u64, |acc, (&p, &c)| match c {
            Cap::Finite(k) => acc.checked_mul(p.checked_pow(k)?),
            Cap::Infinite => None,
        })
    }
}

/// Builds the profile from a factorization of a primitive polynomial.
pub fn profile_from_factorization(fac: &FactoredPoly, mode: BoundMode) -> Result<HartleyProfile> {
    let mut t_power = 0;
    let mut factor_data = Vec::new();
    for (f, a) in &fac.factors {
        if *f == IntPoly::t() {
            t_power = *a;
            continue;
        }
        factor_data.push(FactorData { factor: f.clone(), multiplicity: *a, e: e_value(f, mode)? });
    }
    let mut primes = BTreeSet::new();
    for fd in &factor_data {
        primes.extend(prime_factors(fd.multiplicity as u64));
        match fd.e {
            EValue::Finite(e) => primes.extend(prime_factors(e)),
            EValue::CyclotomicZero(m) => primes.extend(prime_factors(m)),
        }
    }
    let caps: BTreeMap<u64, Cap> = primes
        .into_iter()
        .map(|p| (p, factor_data.iter().map(|fd| fd.cap(p)).min().unwrap_or(Cap::Infinite)))
        .collect();
    let non_cyclotomic: Vec<&FactorData> =
        factor_data.iter().filter(|fd| matches!(fd.e, EValue::Finite(_))).collect();
    let default_cap = if non_cyclotomic.is_empty() { Cap::Infinite } else { Cap::Finite(0) };
    let e_delta = (!non_cyclotomic.is_empty()).then(|| {
        non_cyclotomic
            .iter()
            .fold(0u64, |g, fd| num_integer::Integer::gcd(&g, &(fd.multiplicity as u64 * fd.e.value())))
    });
    let mut profile = HartleyProfile {
        mode,
        rigorous: mode.is_rigorous(),
        t_power,
        factor_data,
        caps,
        default_cap,
        e_delta,
        gcd_discrepancy: false,
    };
    profile.gcd_discrepancy = match (profile.e_delta, profile.cap_product()) {
        (Some(e), Some(n)) => e != n,
        _ => false,
    };
    Ok(profile)
}

fn require_primitive(delta: &IntPoly) -> Result<()> {
    if delta.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let c = delta.content();
    if !c.is_one() {
        return Err(Error::NotPrimitive(c.to_string()));
    }
    Ok(())
}

/// The cap profile of a primitive `Δ`.
pub fn hartley_profile(delta: &IntPoly, mode: BoundMode) -> Result<HartleyProfile> {
    require_primitive(delta)?;
    profile_from_factorization(&factor_over_z(delta)?, mode)
}

pub fn is_n_hartley(profile: &HartleyProfile, n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    Ok(prime_factors(n).into_iter().all(|p| profile.cap(p).allows(valuation(n, p))))
}

/// The set of `n ≥ 2` for which the profile's polynomial is n-Hartley.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HartleySet {
    pub finite: bool,
    /// All members when finite; members up to the requested limit otherwise.
    pub members: Vec<u64>,
    pub rule: String,
}

impl fmt::Display for HartleySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = self.members.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ");
        if self.finite {
            write!(f, "{{{list}}}")
        } else {
            let sep = if self.members.is_empty() { "" } else { ", " };
            write!(f, "{{{list}{sep}...}} ({})", self.rule)
        }
    }
}

fn infinite_rule(profile: &HartleyProfile) -> String {
    let coprime: u64 = profile.caps.iter().filter(|(_, c)| **c == Cap::Finite(0)).map(|(p, _)| *p).product();
    let mut parts = Vec::new();
    if coprime > 1 {
        parts.push(format!("gcd(n,{coprime})=1"));
    }
    for (p, c) in &profile.caps {
        if let Cap::Finite(k) = c {
            if *k > 0 {
                parts.push(format!("v_{p}(n)<={k}"));
            }
        }
    }
    if parts.is_empty() {
        "all n".to_string()
    } else {
        parts.join(" and ")
    }
}

pub fn hartley_set(profile: &HartleyProfile, limit: u64) -> HartleySet {
    match profile.cap_product() {
        Some(n) => HartleySet {
            finite: true,
            members: divisors(n).into_iter().filter(|&d| d >= 2).collect(),
            rule: if n == 1 { "none".to_string() } else { format!("n | {n}") },
        },
        None => HartleySet {
            finite: false,
            members: (2..=limit).filter(|&n| is_n_hartley(profile, n).unwrap_or(false)).collect(),
            rule: infinite_rule(profile),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyclotomic;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    const H: BoundMode = BoundMode::Heuristic;

    #[test]
    fn e_examples() {
        assert_eq!(e_of_irreducible(&p(&[1, -1, 1]), H).unwrap(), EValue::CyclotomicZero(6));
        assert_eq!(e_of_irreducible(&p(&[1, -3, 1]), H).unwrap(), EValue::Finite(2));
        assert_eq!(e_of_irreducible(&p(&[-1, -1, 1]), H).unwrap(), EValue::Finite(1));
        assert_eq!(e_of_irreducible(&p(&[-1, -4, 1]), H).unwrap(), EValue::Finite(3));
        assert_eq!(e_of_irreducible(&p(&[-1, 4]), H).unwrap(), EValue::Finite(2));
        assert_eq!(e_of_irreducible(&p(&[8, 1]), H).unwrap(), EValue::Finite(3));
        assert!(matches!(e_of_irreducible(&p(&[1, 0, -3, 0, 1]), H), Err(Error::Reducible)));
        assert!(matches!(e_of_irreducible(&p(&[2, 0, 2]), H), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn profile_examples() {
        let phi6 = hartley_profile(&cyclotomic(6), H).unwrap();
        assert_eq!(phi6.default_cap, Cap::Infinite);
        assert_eq!(phi6.caps, BTreeMap::from([(2, Cap::Finite(0)), (3, Cap::Finite(0))]));
        assert_eq!(phi6.e_delta, None);

        let f = hartley_profile(&p(&[1, -3, 1]), H).unwrap();
        assert_eq!(f.default_cap, Cap::Finite(0));
        assert_eq!(f.caps, BTreeMap::from([(2, Cap::Finite(1))]));
        assert_eq!(f.e_delta, Some(2));
        assert!(!f.gcd_discrepancy);

        let sq = hartley_profile(&p(&[-1, -1, 1]).pow(2), H).unwrap();
        assert_eq!(sq.caps, BTreeMap::from([(2, Cap::Finite(1))]));
        assert!(hartley_profile(&p(&[2, 4]), H).is_err());
    }

    #[test]
    fn decision_examples() {
        let k = p(&[4, -17, 38, -51, 38, -17, 4]);
        assert!(is_n_hartley(&hartley_profile(&k, H).unwrap(), 2).unwrap());
        let phi6 = hartley_profile(&cyclotomic(6), H).unwrap();
        assert!(!is_n_hartley(&phi6, 2).unwrap());
        assert!(is_n_hartley(&phi6, 5).unwrap());
        let f = hartley_profile(&p(&[1, -3, 1]), H).unwrap();
        assert!(!is_n_hartley(&f, 4).unwrap());
        assert!(matches!(is_n_hartley(&f, 1), Err(Error::InvalidN(1))));
    }

    #[test]
    fn set_examples() {
        let f = hartley_profile(&p(&[1, -3, 1]), H).unwrap();
        assert_eq!(hartley_set(&f, 100).members, vec![2]);
        assert_eq!(hartley_set(&f, 100).to_string(), "{2}");
        let phi6 = hartley_set(&hartley_profile(&cyclotomic(6), H).unwrap(), 10);
        assert_eq!(phi6.members, vec![5, 7]);
        assert_eq!(phi6.rule, "gcd(n,6)=1");
        let mixed = &p(&[1, -3, 1]) * &cyclotomic(5);
        assert_eq!(hartley_set(&hartley_profile(&mixed, H).unwrap(), 100).members, vec![2]);
        let none = hartley_set(&hartley_profile(&p(&[-1, -1, 1]), H).unwrap(), 10);
        assert!(none.finite && none.members.is_empty());
    }

    #[test]
    fn mixed_product_discrepancy() {
        // Phi_3 * (t^2 - 4t - 1): E = 3 for the second factor, but Phi_3 caps p = 3 at 0.
        let f = &cyclotomic(3) * &p(&[-1, -4, 1]);
        let prof = hartley_profile(&f, H).unwrap();
        assert_eq!(prof.e_delta, Some(3));
        assert_eq!(prof.cap(3), Cap::Finite(0));
        assert!(prof.gcd_discrepancy);
        assert!(!is_n_hartley(&prof, 3).unwrap());
    }

    #[test]
    fn t_factors_are_free() {
        let f = &p(&[0, 0, 1]) * &p(&[1, -3, 1]);
        let prof = hartley_profile(&f, H).unwrap();
        assert_eq!(prof.t_power, 2);
        assert_eq!(hartley_set(&prof, 10).members, vec![2]);
    }

    #[test]
    fn cap_serde_round_trip() {
        let caps = vec![Cap::Finite(3), Cap::Infinite];
        let s = serde_json::to_string(&caps).unwrap();
        assert_eq!(s, r#"[3,"inf"]"#);
        assert_eq!(serde_json::from_str::<Vec<Cap>>(&s).unwrap(), caps);
    }
}
