//! Upper bounds on `E(α)` from the Mahler measure.
//!
//! If `α = θ^E` with `θ` not a root of unity then `M(α) = M(θ)^E`, so
//! `E ≤ log M(α) / m_min(d)` where `m_min(d)` is a lower bound for the log
//! measure of non-cyclotomic algebraic numbers of degree `d`.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{cyclotomic_tag, is_cyclotomic_product, CyclotomicTag};
use crate::error::{Error, Result};
use crate::factor::factor_over_z;
use crate::mahler::{log2_mahler_interval, log_mahler_upper, LOG_GRID};
use crate::poly::IntPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// Proven lower bounds on the Mahler measure.
    Rigorous,
    /// Lehmer's conjectured minimum; not a theorem.
    #[default]
    Heuristic,
}

impl BoundMode {
    pub fn is_rigorous(&self) -> bool {
        matches!(self, BoundMode::Rigorous)
    }
}

impl std::fmt::Display for BoundMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundMode::Rigorous => "rigorous",
            BoundMode::Heuristic => "heuristic",
        })
    }
}

impl std::str::FromStr for BoundMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rigorous" => Ok(BoundMode::Rigorous),
            "heuristic" => Ok(BoundMode::Heuristic),
            other => Err(Error::Input(format!("unknown bound mode `{other}`"))),
        }
    }
}

/// `log2(1.17628081825991750654)` rounded down to the grid.
pub const LEHMER_LOG2: Ratio<i64> = Ratio::new_raw(245_610, LOG_GRID);

/// Lower bounds on `log2 M(f)` over integer polynomials `f` of degree `d` with
/// `M(f) > 1`, as grid numerators indexed by `d`. Produced by the `mmin-table`
/// binary (exhaustive search with certified Graeffe intervals).
pub const MMIN_LOG2_GRID: [i64; 7] = [0, 1_048_576, 727_634, 424_838, 424_735, 424_573, 424_130];

/// Largest degree covered by [`MMIN_LOG2_GRID`].
pub const MMIN_TABLE_MAX_DEGREE: usize = 6;

/// Voutier's lower bound `(1/4) (ln ln d / ln d)^3` on `ln M`, converted to
/// `log2` and rounded down; `None` when it is not positive.
pub fn voutier_log2(d: usize) -> Option<Ratio<i64>> {
    if d < 3 {
        return None;
    }
    let ld = (d as f64).ln();
    let v = 0.25 * (ld.ln() / ld).powi(3) / std::f64::consts::LN_2;
    let n = (v * (1.0 - 1e-9) * LOG_GRID as f64).floor() as i64;
    (n > 0).then(|| Ratio::new(n, LOG_GRID))
}

/// The lower bound on the log measure used for degree `d` under `mode`.
pub fn m_min_log2(d: usize, mode: BoundMode) -> Ratio<i64> {
    match mode {
        BoundMode::Heuristic => LEHMER_LOG2,
        BoundMode::Rigorous => {
            let table = (d <= MMIN_TABLE_MAX_DEGREE).then(|| Ratio::new(MMIN_LOG2_GRID[d], LOG_GRID));
            match (table, voutier_log2(d)) {
                (Some(a), Some(b)) => a.max(b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => unreachable!("Voutier's bound is positive for d > 6"),
            }
        }
    }
}

/// `B` with `E(α) ≤ B` for the roots of the irreducible non-cyclotomic `f`.
pub fn prime_bound(f: &IntPoly, mode: BoundMode) -> Result<u64> {
    let d = f.deg();
    if f.is_zero() || d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    if let CyclotomicTag::Cyclotomic(m) = cyclotomic_tag(f) {
        return Err(Error::Cyclotomic(m));
    }
    let q = log_mahler_upper(f)? / m_min_log2(d, mode);
    Ok(q.floor().to_integer().max(1) as u64)
}

/// Result of an exhaustive small-measure search at one degree.
#[derive(Debug, Clone)]
pub struct MinMeasureSearch {
    pub degree: usize,
    /// Certified lower bound on `log2 M` over all degree-`d` polynomials with `M > 1`.
    pub lower_log2: Ratio<i64>,
    /// A polynomial of least measure found (if any had measure at most the ceiling).
    pub minimizer: Option<IntPoly>,
    pub examined: u64,
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Floating-point estimate of the lower bound `||G||_2 / sqrt(C(2d, d))` on
/// `M`, after `steps` Graeffe iterations. Used only for pruning.
fn float_lower_measure(coeffs: &[f64], steps: u32) -> f64 {
    let d = coeffs.len() - 1;
    let mut g: Vec<f64> = coeffs.to_vec();
    let mut log_scale = 0.0f64;
    for _ in 0..steps {
        let mut h = vec![0.0; d + 1];
        // (-1)^d (E(x)^2 - x O(x)^2) on coefficient vectors.
        for i in 0..=d {
            for j in 0..=d {
                if (i + j) % 2 == 0 {
                    let k = (i + j) / 2;
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    h[k] += sign * g[i] * g[j];
                }
            }
        }
        let scale = h.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        log_scale = 2.0 * log_scale + scale.ln();
        g = h.iter().map(|x| x / scale).collect();
    }
    let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    let ln_lower = (norm.ln() + log_scale - 0.5 * binom(2 * d, d).ln()) / (1u64 << steps) as f64;
    ln_lower.exp()
}

/// Exhaustive search over monic degree-`d` integer polynomials with constant
/// term `±1` and coefficient bounds `|a_i| ≤ C(d, i) * ceiling`, for the least
/// Mahler measure exceeding 1. Polynomials that are not monic or have
/// `|a_0| ≥ 2` have `M ≥ 2`, so with `ceiling < 2` the result bounds every
/// degree-`d` polynomial of measure greater than 1.
pub fn min_measure_search(d: usize, ceiling: f64) -> Result<MinMeasureSearch> {
    if d == 0 || !(1.0..2.0).contains(&ceiling) {
        return Err(Error::Input(format!("search needs d >= 1 and 1 <= ceiling < 2 (got {d}, {ceiling})")));
    }
    let bounds: Vec<i64> = (0..=d).map(|i| (binom(d, i) * ceiling).floor() as i64).collect();
    let mut coeffs: Vec<i64> = bounds.iter().map(|b| -b).collect();
    coeffs[0] = -1;
    coeffs[d] = 1;
    let ceiling_log2 = Ratio::new((ceiling.log2() * LOG_GRID as f64).floor() as i64, LOG_GRID);
    let mut lower = ceiling_log2;
    let mut best: Option<(Ratio<i64>, IntPoly)> = None;
    let mut examined = 0u64;
    loop {
        examined += 1;
        let fl: Vec<f64> = coeffs.iter().map(|&c| c as f64).collect();
        if float_lower_measure(&fl, 8) <= ceiling * (1.0 + 1e-6) {
            let f = IntPoly::from_i64s(&coeffs);
            let fac = factor_over_z(&f)?;
            if !is_cyclotomic_product(&fac) {
                let (lo, hi) = log2_mahler_interval(&f, 12)?;
                lower = lower.min(lo);
                if best.as_ref().map_or(true, |(h, _)| hi < *h) {
                    best = Some((hi, f));
                }
            }
        }
        // Odometer over a_0 ∈ {-1, 1} and a_i ∈ [-bound_i, bound_i].
        let mut i = 0;
        loop {
            if i == d {
                let minimizer = best.map(|(_, f)| f);
                return Ok(MinMeasureSearch { degree: d, lower_log2: lower, minimizer, examined });
            }
            if i == 0 {
                if coeffs[0] == -1 {
                    coeffs[0] = 1;
                    break;
                }
                coeffs[0] = -1;
            } else if coeffs[i] < bounds[i] {
                coeffs[i] += 1;
                break;
            } else {
                coeffs[i] = -bounds[i];
            }
            i += 1;
        }
    }
}

/// The ceiling used to generate the table at degree `d`: just above the
/// golden ratio for `d = 2`, just above the smallest Pisot number otherwise.
pub fn table_search_ceiling(d: usize) -> f64 {
    if d == 2 {
        1.6181
    } else {
        1.3248
    }
}

/// Recomputes the table entry for degree `d` (`d = 1` is `log2 2`, since a
/// rational `a/b ≠ ±1, 0` in lowest terms has measure `max(|a|, |b|) ≥ 2`).
pub fn recompute_mmin_entry(d: usize) -> Result<i64> {
    if d == 1 {
        return Ok(LOG_GRID);
    }
    let s = min_measure_search(d, table_search_ceiling(d))?;
    let r = s.lower_log2;
    // Snap down onto the grid.
    Ok(Integer::div_floor(&(*r.numer() * LOG_GRID), r.denom()))
}
