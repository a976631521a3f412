use freeperiod::hartley::BoundMode;
use freeperiod::lspace::{
    enumerate_candidates, survey_records, survey_with_config, Candidate, FilterConfig, SurveyConfig, SurveyReport,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_candidate(c: &Candidate) {
    let e = &c.exponents;
    assert_eq!(e[0], 2 * c.genus);
    assert_eq!(*e.last().unwrap(), 0);
    assert!(e.len() % 2 == 1);
    for j in 0..e.len() {
        assert_eq!(e[j] + e[e.len() - 1 - j], 2 * c.genus);
    }
    assert_eq!(c.poly.eval_one(), 1.into());
    for (i, a) in c.poly.coeffs_i64().unwrap().into_iter().enumerate() {
        let want = match e.iter().position(|&b| b as usize == i) {
            Some(j) if j % 2 == 0 => 1,
            Some(_) => -1,
            None => 0,
        };
        assert_eq!(a, want);
    }
}

#[test]
fn enumeration_counts() {
    let counts: Vec<usize> = (1..=16).map(|g| enumerate_candidates(g, FilterConfig::default()).count()).collect();
    for (i, n) in counts.iter().enumerate() {
        assert_eq!(*n, (1usize << (i + 1)) - 1);
    }
}

#[test]
fn candidate_invariants() {
    for c in enumerate_candidates(10, FilterConfig::default()) {
        check_candidate(&c);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let g = rng.gen_range(11..=16);
        check_candidate(&Candidate::from_mask(g, rng.gen_range(0..1u64 << (g - 1))));
    }
}

#[test]
fn deterministic_and_partition_invariant() {
    let cfg = SurveyConfig::new(8, BoundMode::Heuristic, FilterConfig::default());
    let a = survey_with_config(cfg.clone()).unwrap();
    let b = survey_with_config(cfg.clone()).unwrap();
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());

    let mut cands: Vec<Candidate> = enumerate_candidates(8, FilterConfig::default()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    cands.shuffle(&mut rng);
    let mut merged = Vec::new();
    let mut rest = &cands[..];
    while !rest.is_empty() {
        let k = rng.gen_range(1..=rest.len().min(40));
        merged.extend(survey_records(&rest[..k], cfg.mode, cfg.hartley_limit).unwrap());
        rest = &rest[k..];
    }
    let c = SurveyReport::from_records(cfg, merged);
    assert_eq!(c.to_json().unwrap(), a.to_json().unwrap());
}

#[test]
fn aggregates_match_records() {
    let r = survey_with_config(SurveyConfig::new(9, BoundMode::Heuristic, FilterConfig::default())).unwrap();
    let a = &r.aggregates;
    assert_eq!(a.candidates, r.records.len());
    assert_eq!(a.cyclotomic_products + a.non_cyclotomic_products, a.candidates);
    assert_eq!(a.hartley_exceptions.len(), r.records.iter().filter(|x| x.hartley_any && !x.cyclotomic_product).count());
    // Every cyclotomic product is n-Hartley for the n coprime to its orders.
    assert_eq!(a.hartley_any, a.cyclotomic_products + a.hartley_exceptions.len());
    for (q, keys) in &a.murasugi_exceptions {
        assert_eq!(keys.len(), a.murasugi_by_q.get(q).map_or(0, |c| c.divides_non_cyclotomic));
    }
    let keys: Vec<_> = r.records.iter().map(|x| x.key()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn filtered_survey() {
    let f = FilterConfig { top_gap_1: true };
    let r = survey_with_config(SurveyConfig::new(7, BoundMode::Heuristic, f)).unwrap();
    assert_eq!(r.records.len(), 64);
    assert!(r.records.iter().all(|x| x.exponents[0] - x.exponents[1] == 1));
    assert_eq!(r.config.filters, f);
}
