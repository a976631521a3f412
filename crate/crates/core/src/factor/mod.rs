//! Factorization of integer polynomials into irreducibles.
//!
//! Pipeline: content and sign, powers of `t`, Yun squarefree decomposition,
//! removal of small cyclotomic factors, then per squarefree part a good prime
//! is chosen, the modular factorization is Hensel-lifted past twice the
//! Mignotte bound and recombined by Zassenhaus subset search.

mod hensel;

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{binomial, primes_from};
use crate::cyclotomic::{cyclotomic, peel_cyclotomic, TABLE_MAX_DEGREE};
use crate::error::{Error, Result};
use crate::modp::{distinct_degree, equal_degree, factor_degrees, rng_for, seed_from, ModPoly};
use crate::poly::{FactoredPoly, IntPoly};

pub use crate::modp::factor_mod_p;

const CANDIDATE_PRIMES: usize = 6;
const MAX_PRIME_ATTEMPTS: usize = 400;

/// Yun squarefree decomposition of a nonzero polynomial. Parts are primitive
/// with positive leading coefficient, pairwise coprime, with strictly
/// increasing multiplicities; `f = ± content * prod part^mult`.
pub fn squarefree_decompose(f: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.primitive_part();
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    if squarefree_by_reduction(&f) {
        return Ok(vec![(f, 1)]);
    }
    let df = f.derivative();
    let b = f.gcd(&df).primitive_part();
    let mut c = f.div_exact(&b).expect("gcd divides f");
    let mut d = &df.div_exact(&b).expect("gcd divides f'") - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1u32;
    while c.deg() > 0 {
        let a = c.gcd(&d).primitive_part();
        c = c.div_exact(&a).expect("gcd divides c");
        d = &d.div_exact(&a).expect("gcd divides d") - &c.derivative();
        if a.deg() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

/// Sufficient test: squarefree modulo a prime not dividing the leading coefficient.
fn squarefree_by_reduction(f: &IntPoly) -> bool {
    primes_from(3)
        .take(8)
        .map(|p| ModPoly::from_int_poly(f, p))
        .any(|fp| fp.deg() == f.deg() && fp.is_squarefree())
}

/// Primes `p` for which `f mod p` keeps its degree and stays squarefree.
fn good_primes(f: &IntPoly, start: u64) -> impl Iterator<Item = (u64, ModPoly)> + '_ {
    primes_from(start)
        .take(MAX_PRIME_ATTEMPTS)
        .filter_map(move |p| {
            let fp = ModPoly::from_int_poly(f, p);
            (fp.deg() == f.deg() && fp.is_squarefree()).then_some((p, fp))
        })
}

/// Subset sums of a degree multiset, as a bitmap indexed by degree.
fn subset_sums(degs: &[usize], total: usize) -> Vec<bool> {
    let mut reach = vec![false; total + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=total).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Sound rejection test: `false` only if no factor of degree `target` can
/// exist, judged from the factor degrees modulo `trials` good primes.
pub fn degree_set_filter(f: &IntPoly, target: usize, trials: usize) -> bool {
    let n = f.deg();
    if target == 0 || target == n {
        return true;
    }
    if target > n {
        return false;
    }
    for (_, fp) in good_primes(f, 3).take(trials) {
        if !subset_sums(&factor_degrees(&fp), n)[target] {
            return false;
        }
    }
    true
}

fn mignotte_bound(f: &IntPoly) -> BigUint {
    let n = f.deg() as u64;
    let norm = f.norm2_sq().sqrt() + BigUint::one();
    let lc = f.leading().magnitude().clone();
    binomial(n, n / 2) * norm * lc
}

/// Factors a primitive squarefree polynomial with positive leading
/// coefficient and nonzero constant term. Output factors are primitive with
/// positive leading coefficient (unsorted).
fn factor_squarefree(f: &IntPoly, seed: u64) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    // Survey several primes: fewest modular factors wins, and the degree
    // sets constrain which recombination degrees are possible at all.
    let mut allowed: Option<Vec<bool>> = None;
    let mut best: Option<(usize, u64, ModPoly)> = None;
    for (p, fp) in good_primes(f, 3).take(CANDIDATE_PRIMES) {
        let degs = factor_degrees(&fp);
        let sums = subset_sums(&degs, n);
        allowed = Some(match allowed {
            None => sums,
            Some(a) => a.iter().zip(&sums).map(|(x, y)| *x && *y).collect(),
        });
        if best.as_ref().map_or(true, |(c, _, _)| degs.len() < *c) {
            best = Some((degs.len(), p, fp));
        }
        if degs.len() == 1 {
            return vec![f.clone()];
        }
    }
    let allowed = allowed.expect("some good prime exists for a squarefree polynomial");
    if !(1..n).any(|d| allowed[d]) {
        return vec![f.clone()];
    }
    let (_, _, fp) = best.unwrap();
    let mut rng = rng_for(&fp, seed);
    let monic = fp.monic();
    let mut modular = Vec::new();
    for (block, e) in distinct_degree(&monic) {
        modular.extend(equal_degree(&block, e, &mut rng));
    }
    let bound = mignotte_bound(f) * 2u32;
    let (lifted, modulus) = hensel::hensel_lift(f, &modular, &bound);
    recombine(f, lifted, &modulus, &allowed)
}

/// Zassenhaus recombination: smallest subsets first, in lexicographic order
/// of the (sorted) modular factors.
fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, modulus: &BigInt, allowed: &[bool]) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| lifted[i].deg()).sum();
            if allowed.get(deg).copied().unwrap_or(false) {
                if let Some(g) = try_subset(&rest, &lifted, &idx, modulus) {
                    rest = rest.div_exact(&g).expect("verified divisor");
                    found.push(g);
                    let chosen: BTreeSet<usize> = idx.iter().copied().collect();
                    lifted = lifted
                        .into_iter()
                        .enumerate()
                        .filter(|(i, _)| !chosen.contains(i))
                        .map(|(_, u)| u)
                        .collect();
                    continue 'outer;
                }
            }
            // Next combination of `size` indices out of `r`.
            let mut k = size;
            loop {
                if k == 0 {
                    size += 1;
                    continue 'outer;
                }
                k -= 1;
                if idx[k] < r - size + k {
                    idx[k] += 1;
                    for j in k + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if rest.deg() > 0 {
        found.push(rest.primitive_part());
    }
    found
}

fn try_subset(rest: &IntPoly, lifted: &[IntPoly], idx: &[usize], modulus: &BigInt) -> Option<IntPoly> {
    let lc = rest.leading();
    // Constant-term screen before forming the whole product.
    let mut c0 = lc.clone();
    for &i in idx {
        c0 = (&c0 * lifted[i].constant_term()) % modulus;
    }
    let c0 = hensel::symmetric(&IntPoly::constant(c0), modulus).constant_term();
    let target = &lc * rest.constant_term();
    if c0.is_zero() || !(&target % &c0).is_zero() {
        return None;
    }
    let mut g = IntPoly::constant(lc);
    for &i in idx {
        g = hensel::symmetric(&(&g * &lifted[i]), modulus);
    }
    let g = g.primitive_part();
    rest.div_exact(&g).map(|_| g)
}

/// Complete factorization over the integers.
pub fn factor_over_z(f: &IntPoly) -> Result<FactoredPoly> {
    factor_over_z_seeded(f, 0)
}

/// As [`factor_over_z`]; `seed` only perturbs the randomized modular
/// splitting, never the result.
pub fn factor_over_z_seeded(f: &IntPoly, seed: u64) -> Result<FactoredPoly> {
    let (content, prim, sign) = f.content_primitive()?;
    let (tpow, core) = prim.strip_t_power();
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    if tpow > 0 {
        factors.push((IntPoly::t(), tpow as u32));
    }
    let seed = seed_from(&core, seed);
    for (part, mult) in squarefree_decompose(&core)? {
        let (rest, cyclos) = peel_cyclotomic(&part, TABLE_MAX_DEGREE);
        for (m, _) in cyclos {
            factors.push((cyclotomic(m), mult));
        }
        if rest.deg() > 0 {
            for g in factor_squarefree(&rest.primitive_part(), seed) {
                factors.push((g, mult));
            }
        }
    }
    Ok(FactoredPoly::from_parts(sign, content, factors))
}

/// The least (in factor order) irreducible factor of degree `d`, if any.
pub fn find_factor_of_degree(f: &IntPoly, d: usize) -> Result<Option<IntPoly>> {
    let fac = factor_over_z(f)?;
    Ok(fac.factors.into_iter().map(|(g, _)| g).find(|g| g.deg() == d))
}

/// True when `f` has exactly one irreducible factor, with multiplicity one.
pub fn is_irreducible(f: &IntPoly) -> Result<bool> {
    let fac = factor_over_z(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}
