#![allow(dead_code)]

use freeperiod::cyclotomic::cyclotomic;
use freeperiod::{FactoredPoly, IntPoly};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Deserialize;

pub fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

/// Irreducible polynomials certified by sympy (see data/gen_oracles.py).
pub fn pool() -> Vec<IntPoly> {
    let raw: Vec<Vec<i64>> = serde_json::from_str(include_str!("../data/irreducible_pool.json")).unwrap();
    raw.iter().map(|c| p(c)).collect()
}

#[derive(Debug, Deserialize)]
pub struct EOracle {
    pub coeffs: Vec<i64>,
    /// `n <= 12` with a degree-d factor of `f(t^n)`.
    pub hartley_n: Vec<u64>,
    pub e12: u64,
}

pub fn e_oracle() -> Vec<EOracle> {
    serde_json::from_str(include_str!("../data/e_oracle.json")).unwrap()
}

/// A product of known irreducibles with its expected factorization.
pub fn random_product<R: Rng>(rng: &mut R, pool: &[IntPoly]) -> (IntPoly, FactoredPoly) {
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    let k = rng.gen_range(1..=4);
    for f in pool.choose_multiple(rng, k) {
        factors.push((f.clone(), rng.gen_range(1..=2)));
    }
    if rng.gen_bool(0.3) {
        factors.push((cyclotomic(rng.gen_range(1..=30)), rng.gen_range(1..=2)));
    }
    if rng.gen_bool(0.15) {
        factors.push((IntPoly::t(), rng.gen_range(1..=3)));
    }
    let sign: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
    let content = BigInt::from(rng.gen_range(1..=12));
    let expected = FactoredPoly::from_parts(sign, content, factors);
    (expected.expand(), expected)
}

/// `log2 M(f)` in floating point from Durand-Kerner roots.
pub fn log2_mahler_numeric(f: &IntPoly) -> f64 {
    let c: Vec<f64> = f.coeffs_i64().unwrap().iter().map(|&a| a as f64).collect();
    let d = c.len() - 1;
    let lead = c[d];
    if d == 0 {
        return lead.abs().log2();
    }
    let monic: Vec<f64> = c.iter().map(|a| a / lead).collect();
    let eval = |z: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for a in monic.iter().rev() {
            acc = (acc.0 * z.0 - acc.1 * z.1 + a, acc.0 * z.1 + acc.1 * z.0);
        }
        acc
    };
    let mut roots: Vec<(f64, f64)> = (0..d).map(|k| {
        let th = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64;
        (0.9 * th.cos(), 0.9 * th.sin())
    }).collect();
    for _ in 0..2000 {
        for i in 0..d {
            let num = eval(roots[i]);
            let mut den = (1.0, 0.0);
            for j in 0..d {
                if i != j {
                    let diff = (roots[i].0 - roots[j].0, roots[i].1 - roots[j].1);
                    den = (den.0 * diff.0 - den.1 * diff.1, den.0 * diff.1 + den.1 * diff.0);
                }
            }
            let n2 = den.0 * den.0 + den.1 * den.1;
            let q = ((num.0 * den.0 + num.1 * den.1) / n2, (num.1 * den.0 - num.0 * den.1) / n2);
            roots[i] = (roots[i].0 - q.0, roots[i].1 - q.1);
        }
    }
    lead.abs().log2() + roots.iter().map(|r| (r.0 * r.0 + r.1 * r.1).sqrt().max(1.0).log2()).sum::<f64>()
}
