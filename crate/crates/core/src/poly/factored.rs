use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::IntPoly;

/// `sign * content * prod factor^multiplicity`, with primitive irreducible
/// factors of positive leading coefficient, sorted by `(degree, coefficients)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredPoly {
    pub sign: i8,
    #[serde(with = "crate::serde_bigint")]
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl FactoredPoly {
    /// Sorts the factors and merges duplicates.
    pub fn from_parts(sign: i8, content: BigInt, mut factors: Vec<(IntPoly, u32)>) -> Self {
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(IntPoly, u32)> = Vec::with_capacity(factors.len());
        for (f, m) in factors {
            match merged.last_mut() {
                Some((g, k)) if *g == f => *k += m,
                _ => merged.push((f, m)),
            }
        }
        FactoredPoly { sign, content, factors: merged }
    }

    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(if self.sign < 0 { -self.content.clone() } else { self.content.clone() });
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.content.is_one() && self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn num_factors(&self) -> usize {
        self.factors.iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn has_factor_of_degree(&self, d: usize) -> bool {
        self.factors.iter().any(|(f, _)| f.deg() == d)
    }
}
