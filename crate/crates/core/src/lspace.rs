//! Candidate Alexander polynomials of L-space knots and the survey over them.
//!
//! A candidate of genus `g` is `Σ (−1)^j t^{b_j}` with `2g = b_0 > b_1 > ... > b_{2k} = 0`,
//! symmetric exponents and alternating signs. The free choice is a subset of
//! `{g+1, ..., 2g−1}`; the rest is forced by symmetry and the middle exponent `g`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::is_cyclotomic_product;
use crate::error::{Error, Result};
use crate::factor::factor_over_z;
use crate::hartley::{hartley_set, profile_from_factorization, BoundMode, Cap, HartleySet};
use crate::murasugi::{murasugi_screen_all_factored, MurasugiHit};
use crate::poly::IntPoly;

pub const REPORT_VERSION: u32 = 1;

/// Members listed for sets that are infinite.
pub const DEFAULT_HARTLEY_LIMIT: u64 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub genus: u32,
    /// Strictly decreasing, from `2g` to `0`.
    pub exponents: Vec<u32>,
    pub poly: IntPoly,
}

impl Candidate {
    pub fn from_exponents(exponents: Vec<u32>) -> Result<Candidate> {
        let ok = exponents.len() % 2 == 1
            && exponents.last() == Some(&0)
            && exponents.windows(2).all(|w| w[0] > w[1])
            && exponents[0] % 2 == 0
            && exponents.iter().zip(exponents.iter().rev()).all(|(a, b)| a + b == exponents[0]);
        if !ok || exponents[0] == 0 {
            return Err(Error::Input(format!("{exponents:?} is not a symmetric alternating exponent sequence")));
        }
        let mut c = vec![0i64; exponents[0] as usize + 1];
        for (j, &e) in exponents.iter().enumerate() {
            c[e as usize] = if j % 2 == 0 { 1 } else { -1 };
        }
        Ok(Candidate { genus: exponents[0] / 2, exponents, poly: IntPoly::from_i64s(&c) })
    }

    /// The candidate of genus `g` whose exponents above `g` are `{2g} ∪ top`,
    /// with bit `i` of `mask` selecting `g + 1 + i`.
    pub fn from_mask(g: u32, mask: u64) -> Candidate {
        let mut exps = vec![2 * g];
        exps.extend((0..g.saturating_sub(1)).rev().filter(|i| mask >> i & 1 == 1).map(|i| g + 1 + i));
        let upper = exps.len();
        exps.push(g);
        for k in (0..upper).rev() {
            exps.push(2 * g - exps[k]);
        }
        Candidate::from_exponents(exps).expect("mask construction is symmetric")
    }

    pub fn key(&self) -> CandidateKey {
        CandidateKey { genus: self.genus, exponents: self.exponents.clone() }
    }
}

/// Canonical ordering key: `(genus, exponents)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateKey {
    pub genus: u32,
    pub exponents: Vec<u32>,
}

impl fmt::Display for CandidateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        f.write_str(&e.join(" "))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterConfig {
    /// Require `b_0 − b_1 = 1`.
    pub top_gap_1: bool,
}

impl FilterConfig {
    pub fn accepts(&self, c: &Candidate) -> bool {
        !self.top_gap_1 || c.exponents.len() > 1 && c.exponents[0] - c.exponents[1] == 1
    }

    /// Parses a comma-separated filter list; `none` and the empty string mean no filters.
    pub fn parse(spec: &str) -> Result<FilterConfig> {
        let mut cfg = FilterConfig::default();
        for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match name {
                "top-gap-1" => cfg.top_gap_1 = true,
                "none" => {}
                other => return Err(Error::Input(format!("unknown filter `{other}`"))),
            }
        }
        Ok(cfg)
    }
}

impl fmt::Display for FilterConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.top_gap_1 { "top-gap-1" } else { "none" })
    }
}

/// All candidates with genus `1..=g_max` passing `filters`, in canonical order.
pub fn enumerate_candidates(g_max: u32, filters: FilterConfig) -> impl Iterator<Item = Candidate> {
    (1..=g_max)
        .flat_map(|g| {
            let n = 1u64 << (g - 1);
            // Mask order agrees with the lexicographic order of exponent sequences.
            (0..n).map(move |mask| Candidate::from_mask(g, mask))
        })
        .filter(move |c| filters.accepts(c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSummary {
    pub e_delta: Option<u64>,
    pub caps: BTreeMap<u64, Cap>,
    pub default_cap: Cap,
    pub gcd_discrepancy: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub genus: u32,
    pub exponents: Vec<u32>,
    pub poly: IntPoly,
    pub cyclotomic_product: bool,
    pub factors: Vec<(IntPoly, u32)>,
    pub profile: ProfileSummary,
    pub hartley_set: HartleySet,
    /// n-Hartley for some `n ≥ 2`.
    pub hartley_any: bool,
    pub murasugi_hits: Vec<MurasugiHit>,
}

impl SurveyRecord {
    pub fn key(&self) -> CandidateKey {
        CandidateKey { genus: self.genus, exponents: self.exponents.clone() }
    }

    /// Prime powers with a hit whose quotient lifts to a divisor of `Δ`.
    pub fn divides_qs(&self) -> Vec<u64> {
        let mut qs: Vec<u64> = self.murasugi_hits.iter().filter(|h| h.divides).map(|h| h.q).collect();
        qs.dedup();
        qs
    }

    pub fn flags(&self) -> String {
        let mut f = vec![if self.cyclotomic_product { "cyclotomic" } else { "noncyclotomic" }.to_string()];
        if self.hartley_any {
            f.push("hartley".into());
        }
        if self.profile.gcd_discrepancy {
            f.push("gcd-discrepancy".into());
        }
        if !self.cyclotomic_product {
            f.extend(self.divides_qs().into_iter().map(|q| format!("murasugi-q{q}")));
        }
        f.join(";")
    }
}

pub fn survey_candidate(c: &Candidate, mode: BoundMode, hartley_limit: u64) -> Result<SurveyRecord> {
    let fac = factor_over_z(&c.poly)?;
    let cyclotomic_product = is_cyclotomic_product(&fac);
    let profile = profile_from_factorization(&fac, mode)?;
    let set = hartley_set(&profile, hartley_limit);
    let hartley_any = !set.members.is_empty() || !set.finite;
    let murasugi_hits = murasugi_screen_all_factored(&c.poly, &fac)?;
    Ok(SurveyRecord {
        genus: c.genus,
        exponents: c.exponents.clone(),
        poly: c.poly.clone(),
        cyclotomic_product,
        factors: fac.factors,
        profile: ProfileSummary {
            e_delta: profile.e_delta,
            caps: profile.caps,
            default_cap: profile.default_cap,
            gcd_discrepancy: profile.gcd_discrepancy,
        },
        hartley_set: set,
        hartley_any,
        murasugi_hits,
    })
}

/// Processes a batch of candidates in parallel on the current rayon pool.
pub fn survey_records(candidates: &[Candidate], mode: BoundMode, hartley_limit: u64) -> Result<Vec<SurveyRecord>> {
    candidates.par_iter().map(|c| survey_candidate(c, mode, hartley_limit)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyConfig {
    pub g_max: u32,
    pub mode: BoundMode,
    pub rigorous: bool,
    pub filters: FilterConfig,
    pub hartley_limit: u64,
}

impl SurveyConfig {
    pub fn new(g_max: u32, mode: BoundMode, filters: FilterConfig) -> SurveyConfig {
        SurveyConfig { g_max, mode, rigorous: mode.is_rigorous(), filters, hartley_limit: DEFAULT_HARTLEY_LIMIT }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MurasugiCounts {
    /// Candidates with at least one congruence solution.
    pub congruence: usize,
    pub congruence_non_cyclotomic: usize,
    /// Candidates with a solution whose quotient lifts to a divisor.
    pub divides: usize,
    pub divides_non_cyclotomic: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyAggregates {
    pub candidates: usize,
    pub cyclotomic_products: usize,
    pub non_cyclotomic_products: usize,
    /// n-Hartley for some `n ≥ 2`, over all candidates.
    pub hartley_any: usize,
    /// Non-cyclotomic candidates that are n-Hartley for some `n ≥ 2`.
    pub hartley_exceptions: Vec<CandidateKey>,
    pub gcd_discrepancies: usize,
    pub murasugi_by_q: BTreeMap<u64, MurasugiCounts>,
    /// Non-cyclotomic candidates with a dividing Murasugi solution, by `q`.
    /// The entry for `q = 2` is always present.
    pub murasugi_exceptions: BTreeMap<u64, Vec<CandidateKey>>,
}

impl SurveyAggregates {
    pub fn from_records(records: &[SurveyRecord]) -> SurveyAggregates {
        let mut murasugi_by_q: BTreeMap<u64, MurasugiCounts> = BTreeMap::new();
        let mut murasugi_exceptions: BTreeMap<u64, Vec<CandidateKey>> = BTreeMap::from([(2, Vec::new())]);
        for r in records {
            let mut qs: Vec<(u64, bool)> = Vec::new();
            for h in &r.murasugi_hits {
                match qs.last_mut() {
                    Some((q, d)) if *q == h.q => *d |= h.divides,
                    _ => qs.push((h.q, h.divides)),
                }
            }
            for (q, divides) in qs {
                let c = murasugi_by_q.entry(q).or_default();
                c.congruence += 1;
                c.divides += divides as usize;
                if !r.cyclotomic_product {
                    c.congruence_non_cyclotomic += 1;
                    if divides {
                        c.divides_non_cyclotomic += 1;
                        murasugi_exceptions.entry(q).or_default().push(r.key());
                    }
                }
            }
        }
        let cyclotomic_products = records.iter().filter(|r| r.cyclotomic_product).count();
        SurveyAggregates {
            candidates: records.len(),
            cyclotomic_products,
            non_cyclotomic_products: records.len() - cyclotomic_products,
            hartley_any: records.iter().filter(|r| r.hartley_any).count(),
            hartley_exceptions: records.iter().filter(|r| r.hartley_any && !r.cyclotomic_product).map(SurveyRecord::key).collect(),
            gcd_discrepancies: records.iter().filter(|r| r.profile.gcd_discrepancy).count(),
            murasugi_by_q,
            murasugi_exceptions,
        }
    }

    pub fn q2_exceptions(&self) -> &[CandidateKey] {
        self.murasugi_exceptions.get(&2).map(Vec::as_slice).unwrap_or(&[])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub version: u32,
    pub config: SurveyConfig,
    pub aggregates: SurveyAggregates,
    pub records: Vec<SurveyRecord>,
}

impl SurveyReport {
    /// Sorts records canonically and recomputes the aggregates; the input may
    /// be the concatenation of independently processed batches in any order.
    pub fn from_records(config: SurveyConfig, mut records: Vec<SurveyRecord>) -> SurveyReport {
        records.sort_by(|a, b| (a.genus, &a.exponents).cmp(&(b.genus, &b.exponents)));
        let aggregates = SurveyAggregates::from_records(&records);
        SurveyReport { version: REPORT_VERSION, config, aggregates, records }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<SurveyReport> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["genus", "exponents", "flags", "hartley_set", "murasugi_hits"])?;
        for r in &self.records {
            let hits: Vec<String> = r
                .murasugi_hits
                .iter()
                .map(|h| format!("q{}:l{}{}", h.q, h.lambda, if h.divides { ":div" } else { "" }))
                .collect();
            w.write_record([
                r.genus.to_string(),
                r.key().to_string(),
                r.flags(),
                r.hartley_set.to_string(),
                hits.join(" "),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Internal(e.to_string()))
    }
}

pub fn survey(g_max: u32, mode: BoundMode, filters: FilterConfig) -> Result<SurveyReport> {
    survey_with_config(SurveyConfig::new(g_max, mode, filters))
}

pub fn survey_with_config(config: SurveyConfig) -> Result<SurveyReport> {
    if config.g_max == 0 {
        return Err(Error::Input("max genus must be at least 1".into()));
    }
    if config.g_max > 31 {
        return Err(Error::Input(format!("max genus {} is too large to enumerate", config.g_max)));
    }
    let candidates: Vec<Candidate> = enumerate_candidates(config.g_max, config.filters).collect();
    let records = survey_records(&candidates, config.mode, config.hartley_limit)?;
    Ok(SurveyReport::from_records(config, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyclotomic;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn small_genus_candidates() {
        let g1: Vec<_> = enumerate_candidates(1, FilterConfig::default()).collect();
        assert_eq!(g1.len(), 1);
        assert_eq!(g1[0].poly, p(&[1, -1, 1]));
        let g2: Vec<IntPoly> = enumerate_candidates(2, FilterConfig::default()).skip(1).map(|c| c.poly).collect();
        assert_eq!(g2, vec![p(&[1, 0, -1, 0, 1]), p(&[1, -1, 1, -1, 1])]);
    }

    #[test]
    fn counts_and_invariants() {
        for g in 1..=10u32 {
            let all: Vec<Candidate> = enumerate_candidates(g, FilterConfig::default()).collect();
            assert_eq!(all.len(), (1usize << g) - 1);
            for w in all.windows(2) {
                assert!(w[0].key() < w[1].key());
            }
        }
        for c in enumerate_candidates(10, FilterConfig::default()) {
            let poly = &c.poly;
            assert_eq!(poly.deg() as u32, 2 * c.genus);
            assert!(poly.is_palindromic_up_to_sign());
            assert_eq!(poly.reciprocal(), *poly);
            assert_eq!(poly.eval_one(), 1.into());
            let nz: Vec<i64> = poly.coeffs_i64().unwrap().into_iter().filter(|&a| a != 0).collect();
            assert!(nz.len() % 2 == 1);
            assert!(nz.iter().enumerate().all(|(j, &a)| a == if j % 2 == 0 { 1 } else { -1 }));
        }
    }

    #[test]
    fn top_gap_filter() {
        let f = FilterConfig { top_gap_1: true };
        let kept: Vec<Candidate> = enumerate_candidates(6, f).collect();
        assert!(kept.iter().all(|c| c.exponents[1] == c.exponents[0] - 1));
        // Genus 1 always qualifies; otherwise the top exponent choice is fixed.
        assert_eq!(kept.len(), 1 + (2..=6).map(|g| 1usize << (g - 2)).sum::<usize>());
        assert_eq!(FilterConfig::parse("top-gap-1").unwrap(), f);
        assert!(FilterConfig::parse("bogus").is_err());
    }

    #[test]
    fn exponent_validation() {
        assert!(Candidate::from_exponents(vec![4, 3, 1, 0]).is_err());
        assert!(Candidate::from_exponents(vec![4, 3, 0]).is_err());
        assert_eq!(Candidate::from_exponents(vec![4, 2, 0]).unwrap().poly, p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn genus_one_survey() {
        let r = survey(1, BoundMode::Heuristic, FilterConfig::default()).unwrap();
        assert_eq!(r.records.len(), 1);
        let rec = &r.records[0];
        assert!(rec.cyclotomic_product);
        assert_eq!(rec.factors, vec![(cyclotomic(6), 1)]);
        assert_eq!(rec.hartley_set.rule, "gcd(n,6)=1");
        assert!(r.aggregates.hartley_exceptions.is_empty());
        assert!(r.aggregates.q2_exceptions().is_empty());
    }

    #[test]
    fn report_round_trips_and_partitions() {
        let cfg = SurveyConfig::new(6, BoundMode::Heuristic, FilterConfig::default());
        let whole = survey_with_config(cfg.clone()).unwrap();
        assert_eq!(whole.aggregates.candidates, 63);
        assert_eq!(SurveyReport::from_json(&whole.to_json().unwrap()).unwrap(), whole);

        let cands: Vec<Candidate> = enumerate_candidates(6, FilterConfig::default()).collect();
        let mut merged = Vec::new();
        for chunk in cands.rchunks(7) {
            merged.extend(survey_records(chunk, cfg.mode, cfg.hartley_limit).unwrap());
        }
        assert_eq!(SurveyReport::from_records(cfg, merged), whole);
        assert!(whole.to_csv().unwrap().starts_with("genus,exponents,flags,hartley_set,murasugi_hits\n"));
    }
}
