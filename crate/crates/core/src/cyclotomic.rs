//! Cyclotomic polynomials: generation, recognition and peeling.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, euler_phi, mobius};
use crate::poly::{FactoredPoly, IntPoly};

/// Largest `phi(m)` kept in the shared table.
pub const TABLE_MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CyclotomicTag {
    NotCyclotomic,
    Cyclotomic(u64),
}

/// The `m`-th cyclotomic polynomial, from `prod_{d | m} (1 - t^d)^{mu(m/d)}`
/// evaluated as a power series truncated at degree `phi(m)`.
pub fn cyclotomic(m: u64) -> IntPoly {
    assert!(m >= 1);
    if m == 1 {
        return IntPoly::from_i64s(&[-1, 1]);
    }
    let deg = euler_phi(m) as usize;
    let mut series = vec![BigInt::zero(); deg + 1];
    series[0] = BigInt::one();
    let divs = divisors(m);
    // Multiplications first keep intermediate coefficients small.
    for &d in &divs {
        if mobius(m / d) == 1 {
            let d = d as usize;
            for i in (d..=deg).rev() {
                let prev = series[i - d].clone();
                series[i] -= prev;
            }
        }
    }
    for &d in &divs {
        if mobius(m / d) == -1 {
            let d = d as usize;
            for i in d..=deg {
                let prev = series[i - d].clone();
                series[i] += prev;
            }
        }
    }
    IntPoly::new(series)
}

/// All `m` with `phi(m) <= max_deg`, in increasing order. Uses
/// `phi(m) >= sqrt(m / 2)`, so `m <= 2 max_deg^2` suffices.
pub fn orders_up_to_degree(max_deg: usize) -> Vec<u64> {
    let bound = 2 * (max_deg as u64) * (max_deg as u64) + 2;
    (1..=bound).filter(|&m| euler_phi(m) as usize <= max_deg).collect()
}

struct Table {
    entries: Vec<(u64, IntPoly)>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut entries: Vec<(u64, IntPoly)> =
            orders_up_to_degree(TABLE_MAX_DEGREE).into_iter().map(|m| (m, cyclotomic(m))).collect();
        entries.sort_by_key(|(m, p)| (p.deg(), *m));
        Table { entries }
    })
}

/// `(m, Phi_m)` for every `m` with `phi(m) <= max_deg`; served from the shared
/// table when possible.
pub fn cyclotomics_up_to_degree(max_deg: usize) -> Vec<(u64, IntPoly)> {
    if max_deg <= TABLE_MAX_DEGREE {
        table().entries.iter().filter(|(_, p)| p.deg() <= max_deg).cloned().collect()
    } else {
        orders_up_to_degree(max_deg).into_iter().map(|m| (m, cyclotomic(m))).collect()
    }
}

/// Recognizes `Phi_m` among irreducible, primitive polynomials with positive
/// leading coefficient.
pub fn cyclotomic_tag(f: &IntPoly) -> CyclotomicTag {
    let Some(d) = f.degree() else {
        return CyclotomicTag::NotCyclotomic;
    };
    if d == 0 || !f.leading().is_one() {
        return CyclotomicTag::NotCyclotomic;
    }
    let c0 = f.constant_term();
    if !(c0.is_one() || c0 == BigInt::from(-1)) {
        return CyclotomicTag::NotCyclotomic;
    }
    if d <= TABLE_MAX_DEGREE {
        for (m, phi) in &table().entries {
            if phi.deg() == d && phi == f {
                return CyclotomicTag::Cyclotomic(*m);
            }
        }
        return CyclotomicTag::NotCyclotomic;
    }
    for m in orders_up_to_degree(d) {
        if euler_phi(m) as usize == d && cyclotomic(m) == *f {
            return CyclotomicTag::Cyclotomic(m);
        }
    }
    CyclotomicTag::NotCyclotomic
}

/// True when every irreducible factor is cyclotomic (the empty product counts).
pub fn is_cyclotomic_product(f: &FactoredPoly) -> bool {
    f.factors.iter().all(|(g, _)| matches!(cyclotomic_tag(g), CyclotomicTag::Cyclotomic(_)))
}

/// Divides out every cyclotomic factor of degree at most `max_deg`. Returns
/// the cofactor and `(m, multiplicity)` pairs.
pub fn peel_cyclotomic(f: &IntPoly, max_deg: usize) -> (IntPoly, Vec<(u64, u32)>) {
    let mut rest = f.clone();
    let mut found = Vec::new();
    if rest.deg() == 0 {
        return (rest, found);
    }
    let modulus = crate::modp::WORD_PRIME;
    for (m, phi) in cyclotomics_up_to_degree(max_deg.min(rest.deg())) {
        if phi.deg() > rest.deg() {
            break;
        }
        let mut mult = 0;
        loop {
            if phi.deg() > rest.deg() {
                break;
            }
            // Word-size screen before the exact division.
            let rm = crate::modp::ModPoly::from_int_poly(&rest, modulus);
            let pm = crate::modp::ModPoly::from_int_poly(&phi, modulus);
            if !rm.rem(&pm).is_zero() {
                break;
            }
            match rest.div_exact(&phi) {
                Some(q) => {
                    rest = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            found.push((m, mult));
        }
    }
    (rest, found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn known_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        // Phi_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
        assert_eq!(cyclotomic(105).deg(), 48);
    }

    #[test]
    fn tag_examples() {
        assert_eq!(cyclotomic_tag(&p(&[1, -1, 1])), CyclotomicTag::Cyclotomic(6));
        assert_eq!(cyclotomic_tag(&p(&[-1, 1])), CyclotomicTag::Cyclotomic(1));
        assert_eq!(cyclotomic_tag(&p(&[1, -3, 1])), CyclotomicTag::NotCyclotomic);
        assert_eq!(cyclotomic_tag(&cyclotomic(331)), CyclotomicTag::Cyclotomic(331));
    }

    #[test]
    fn tag_soundness_product_of_divisors() {
        for m in 1..=60u64 {
            let phi = cyclotomic(m);
            assert_eq!(cyclotomic_tag(&phi), CyclotomicTag::Cyclotomic(m));
            let prod = divisors(m).into_iter().fold(IntPoly::one(), |acc, d| &acc * &cyclotomic(d));
            assert_eq!(prod, IntPoly::t_pow_minus_one(m as usize));
            assert!(IntPoly::t_pow_minus_one(m as usize).div_exact(&phi).is_some());
        }
    }

    #[test]
    fn peel_finds_multiplicities() {
        let f = &(&cyclotomic(6).pow(2) * &cyclotomic(3)) * &p(&[1, -3, 1]);
        let (rest, found) = peel_cyclotomic(&f, 64);
        assert_eq!(rest, p(&[1, -3, 1]));
        assert_eq!(found, vec![(3, 1), (6, 2)]);
    }

    #[test]
    fn product_detection() {
        let f = FactoredPoly::from_parts(1, BigInt::one(), vec![(cyclotomic(3), 1), (cyclotomic(6), 1)]);
        assert_eq!(f.expand(), p(&[1, 0, 1, 0, 1]));
        assert!(is_cyclotomic_product(&f));
        let g = FactoredPoly::from_parts(1, BigInt::one(), vec![(p(&[1, -3, 1]), 1)]);
        assert!(!is_cyclotomic_product(&g));
        assert!(is_cyclotomic_product(&FactoredPoly::from_parts(1, BigInt::one(), vec![])));
    }
}
