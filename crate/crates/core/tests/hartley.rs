mod common;

use common::{e_oracle, p, pool};
use freeperiod::arith::{gcd, valuation};
use freeperiod::cyclotomic::cyclotomic;
use freeperiod::factor::find_factor_of_degree;
use freeperiod::hartley::{
    construct_witness, e_of_irreducible, hartley_profile, is_n_hartley, verify_witness, verify_witness_ring,
    BoundMode, Cap, EValue,
};
use freeperiod::IntPoly;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const H: BoundMode = BoundMode::Heuristic;

/// Pool entries plus the oracle polynomials with nontrivial E.
fn rich_pool() -> Vec<IntPoly> {
    let mut out = pool();
    out.extend(e_oracle().iter().filter(|c| c.e12 > 1 && c.coeffs.len() <= 5).map(|c| p(&c.coeffs)));
    out.extend((1..=12).map(cyclotomic));
    out
}

/// A primitive product of 1 to 3 pool entries, sometimes with a cyclotomic factor.
fn random_delta(rng: &mut ChaCha8Rng, pool: &[IntPoly]) -> IntPoly {
    let mut f = IntPoly::one();
    let k = rng.gen_range(1..=3);
    let picks: Vec<IntPoly> = pool.choose_multiple(rng, k).cloned().collect();
    for g in &picks {
        if g.deg() <= 4 {
            f = &f * &g.pow(rng.gen_range(1..=2));
        }
    }
    if f.is_one() || rng.gen_bool(0.25) {
        f = &f * &cyclotomic(rng.gen_range(1..=12));
    }
    f
}

#[test]
fn e_matches_oracle() {
    let corpus = e_oracle();
    assert!(corpus.len() >= 50);
    for case in &corpus {
        let f = p(&case.coeffs);
        assert_eq!(e_of_irreducible(&f, H).unwrap(), EValue::Finite(case.e12), "{f}");
        let profile = hartley_profile(&f, H).unwrap();
        for n in 2..=12 {
            assert_eq!(is_n_hartley(&profile, n).unwrap(), case.hartley_n.contains(&n), "{f} at n = {n}");
        }
    }
}

#[test]
fn e_is_certified() {
    for case in e_oracle() {
        let f = p(&case.coeffs);
        let d = f.deg();
        let e = case.e12;
        assert!(find_factor_of_degree(&f.inflate(e as usize), d).unwrap().is_some());
        for q in [2u64, 3, 5] {
            if e * q <= 24 {
                assert!(find_factor_of_degree(&f.inflate((e * q) as usize), d).unwrap().is_none(), "{f} at {}", e * q);
            }
        }
    }
}

#[test]
fn coherence() {
    let pool = rich_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut positives = 0;
    for _ in 0..500 {
        let delta = random_delta(&mut rng, &pool);
        let profile = hartley_profile(&delta, H).unwrap();
        let irreducible = freeperiod::factor::is_irreducible(&delta).unwrap();
        for n in 2..=12u64 {
            if is_n_hartley(&profile, n).unwrap() {
                positives += 1;
                let cert = construct_witness(&delta, n, H).unwrap();
                assert!(cert.verified);
                let ring = verify_witness_ring(&delta, n, &cert.witness);
                assert!(ring.holds, "{delta} n = {n}");
                assert_eq!(ring.sign, Some(cert.sign));
            } else if irreducible {
                assert!(find_factor_of_degree(&delta.inflate(n as usize), delta.deg()).unwrap().is_none());
            }
        }
    }
    assert!(positives >= 100, "only {positives} positive cases");
}

#[test]
fn caps_are_monotone() {
    let pool = rich_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..80 {
        let delta = random_delta(&mut rng, &pool);
        let profile = hartley_profile(&delta, H).unwrap();
        for n in 2..=30u64 {
            if is_n_hartley(&profile, n).unwrap() {
                for m in 2..n {
                    if n % m == 0 {
                        assert!(is_n_hartley(&profile, m).unwrap(), "{delta}: {n} but not {m}");
                    }
                }
            }
        }
    }
}

#[test]
fn power_law_at_two() {
    for case in e_oracle().iter().filter(|c| c.coeffs.len() <= 4) {
        let f = p(&case.coeffs);
        let v = valuation(case.e12, 2);
        for s in 0..=3u32 {
            let profile = hartley_profile(&f.pow(1 << s), H).unwrap();
            assert_eq!(profile.cap(2), Cap::Finite(v + s), "{f} power 2^{s}");
        }
    }
}

#[test]
fn gcd_formula_agrees_without_cyclotomic_factors() {
    let pool: Vec<IntPoly> =
        pool().into_iter().filter(|g| freeperiod::cyclotomic::cyclotomic_tag(g) == freeperiod::cyclotomic::CyclotomicTag::NotCyclotomic).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..60 {
        let mut f = IntPoly::one();
        let mut expected = 0u64;
        let k = rng.gen_range(1..=3);
        let picks: Vec<IntPoly> = pool.choose_multiple(&mut rng, k).cloned().collect();
        for g in &picks {
            let a = rng.gen_range(1..=4u32);
            f = &f * &g.pow(a);
            let e = e_of_irreducible(g, H).unwrap().value();
            expected = gcd(expected, a as u64 * e);
        }
        let profile = hartley_profile(&f, H).unwrap();
        assert_eq!(profile.e_delta, Some(expected));
        assert_eq!(profile.cap_product(), Some(expected));
        assert!(!profile.gcd_discrepancy);
    }
}

#[test]
fn odd_n_sign_normalizes() {
    let mut seen = 0;
    for m in 1..=30u64 {
        let phi = cyclotomic(m);
        for n in [3u64, 5, 7, 9, 11] {
            if gcd(n, m) != 1 {
                continue;
            }
            for delta in [phi.clone(), -&phi] {
                let cert = construct_witness(&delta, n, H).unwrap();
                let neg = verify_witness(&delta, n, &(-&cert.witness));
                assert!(neg.holds);
                assert_eq!(neg.sign, Some(-cert.sign));
                seen += (cert.sign < 0) as usize;
            }
        }
    }
    for case in e_oracle() {
        let f = -&p(&case.coeffs);
        for &n in case.hartley_n.iter().filter(|&&n| n % 2 == 1 && n > 1) {
            let cert = construct_witness(&f, n, H).unwrap();
            let neg = verify_witness(&f, n, &(-&cert.witness));
            assert_eq!(neg.sign, Some(-cert.sign));
            if cert.sign < 0 {
                assert_eq!(neg.sign, Some(1));
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}
