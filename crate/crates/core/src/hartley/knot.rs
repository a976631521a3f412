//! Knot-level use: normalize an Alexander polynomial and check the n-Hartley
//! condition with a sign-corrected witness.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{construct_witness_with_profile, hartley_profile, is_n_hartley, verify_witness, BoundMode, WitnessCertificate};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Strips powers of `t` and fixes the sign so the constant term is positive,
/// after checking `Δ(1) = ±1` and symmetry.
pub fn normalize_alexander(delta: &IntPoly) -> Result<IntPoly> {
    if delta.is_zero() {
        return Err(Error::NotAlexander("zero polynomial".into()));
    }
    let (_, d) = delta.strip_t_power();
    let at_one = d.eval_one();
    if !at_one.magnitude().is_one() {
        return Err(Error::NotAlexander(format!("value at t = 1 is {at_one}")));
    }
    if !d.is_palindromic_up_to_sign() {
        return Err(Error::NotAlexander(format!("{d} is not palindromic")));
    }
    Ok(if d.constant_term().is_negative() { -d } else { d })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDiagnostics {
    /// `g(1) = ±1`.
    pub unit_at_one: bool,
    pub palindromic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotCheckReport {
    pub normalized: IntPoly,
    pub n: u64,
    pub n_hartley: bool,
    pub witness: Option<WitnessCertificate>,
    /// Informational only; a different witness may behave differently.
    pub diagnostics: Option<WitnessDiagnostics>,
    pub mode: BoundMode,
    pub rigorous: bool,
}

pub fn hartley_knot_check(delta: &IntPoly, n: u64, mode: BoundMode) -> Result<KnotCheckReport> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    let normalized = normalize_alexander(delta)?;
    let profile = hartley_profile(&normalized, mode)?;
    let n_hartley = is_n_hartley(&profile, n)?;
    let mut witness = None;
    let mut diagnostics = None;
    if n_hartley {
        let mut cert = construct_witness_with_profile(&normalized, &profile, n)?;
        if cert.sign < 0 && n % 2 == 1 {
            // For odd n, replacing g by -g flips the sign of the product.
            let flipped = -&cert.witness;
            let check = verify_witness(&normalized, n, &flipped);
            if check.sign != Some(1) {
                return Err(Error::Internal(format!("negated witness for n = {n} did not give sign +1")));
            }
            cert.witness = flipped;
            cert.sign = 1;
        }
        let g = &cert.witness;
        diagnostics = Some(WitnessDiagnostics {
            unit_at_one: g.eval_one().magnitude().is_one(),
            palindromic: g.is_palindromic_up_to_sign(),
        });
        witness = Some(cert);
    }
    Ok(KnotCheckReport { normalized, n, n_hartley, witness, diagnostics, mode, rigorous: mode.is_rigorous() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn knot_examples() {
        let k = p(&[4, -17, 38, -51, 38, -17, 4]);
        let r = hartley_knot_check(&k, 2, BoundMode::Heuristic).unwrap();
        assert!(r.n_hartley);
        assert!(r.witness.as_ref().unwrap().verified);
        assert!(!r.rigorous);
        let trefoil = hartley_knot_check(&p(&[1, -1, 1]), 5, BoundMode::Heuristic).unwrap();
        assert!(trefoil.n_hartley);
        assert_eq!(trefoil.witness.unwrap().sign, 1);
        // The figure-eight polynomial is symmetric with value -1 at t = 1.
        let fig8 = hartley_knot_check(&p(&[1, -3, 1]), 2, BoundMode::Heuristic).unwrap();
        assert!(fig8.n_hartley);
        assert!(matches!(hartley_knot_check(&p(&[-1, -1, 1]), 2, BoundMode::Heuristic), Err(Error::NotAlexander(_))));
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_alexander(&p(&[0, -1, 1, -1])).unwrap(), p(&[1, -1, 1]));
        assert!(normalize_alexander(&p(&[1, 2])).is_err());
        assert!(normalize_alexander(&IntPoly::zero()).is_err());
    }
}
