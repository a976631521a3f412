//! Exact upper (and Graeffe-refined two-sided) bounds on the Mahler measure.
//!
//! Everything is computed from integer data: `log2` of a big integer is read
//! off its top 64 bits and widened by a margin far larger than the `f64`
//! rounding error, then snapped outward onto a dyadic grid.

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Denominator of the dyadic grid on which log bounds are reported.
pub const LOG_GRID: i64 = 1 << 20;

const MARGIN: f64 = 1e-9;

/// Lower and upper `f64` bounds on `log2(n)` for `n > 0`.
pub fn log2_bounds(n: &BigUint) -> (f64, f64) {
    assert!(!n.is_zero(), "log of zero");
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let top = (n >> shift).to_u64().unwrap();
    let lo = shift as f64 + (top as f64).log2() - MARGIN;
    // Below 2^64 the top bits are the whole number.
    let top_hi = if shift == 0 { top as f64 } else { top as f64 + 1.0 };
    let hi = shift as f64 + top_hi.log2() + MARGIN;
    (lo.max(0.0), hi)
}

fn ceil_to_grid(x: f64) -> Ratio<i64> {
    Ratio::new((x * LOG_GRID as f64).ceil() as i64, LOG_GRID)
}

fn floor_to_grid(x: f64) -> Ratio<i64> {
    Ratio::new((x * LOG_GRID as f64).floor() as i64, LOG_GRID)
}

/// Rational `q` with `M(f) <= 2^q`, from Landau's inequality `M(f) <= ||f||_2`.
pub fn log_mahler_upper(f: &IntPoly) -> Result<Ratio<i64>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (_, hi) = log2_bounds(&f.norm2_sq());
    Ok(ceil_to_grid(hi / 2.0))
}

/// One Graeffe root-squaring step: the result has the squares of the roots
/// of `f` as roots, and `M(graeffe(f)) = M(f)^2`.
pub fn graeffe(f: &IntPoly) -> IntPoly {
    let even = IntPoly::new(f.coeffs().iter().step_by(2).cloned().collect());
    let odd = IntPoly::new(f.coeffs().iter().skip(1).step_by(2).cloned().collect());
    let g = &(&even * &even) - &(&odd * &odd).shift(1);
    if f.deg() % 2 == 1 {
        -g
    } else {
        g
    }
}

/// Two-sided dyadic bounds `(lo, hi)` with `lo <= log2 M(f) <= hi`, after
/// `iterations` Graeffe steps. Uses `||g||_2 / sqrt(C(2d, d)) <= M(g) <= ||g||_2`.
pub fn log2_mahler_interval(f: &IntPoly, iterations: u32) -> Result<(Ratio<i64>, Ratio<i64>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (_, f) = f.strip_t_power();
    let d = f.deg() as u64;
    let mut g = f.clone();
    for _ in 0..iterations {
        g = graeffe(&g);
    }
    let scale = (1u64 << iterations) as f64;
    let (lo_n, hi_n) = log2_bounds(&g.norm2_sq());
    let (_, hi_binom) = log2_bounds(&binomial(2 * d, d));
    let mut lo = (lo_n - hi_binom) / 2.0 / scale;
    let lead: BigInt = f.leading().abs();
    let (lo_lead, _) = log2_bounds(lead.magnitude());
    lo = lo.max(lo_lead).max(0.0);
    let hi = hi_n / 2.0 / scale;
    Ok((floor_to_grid(lo), ceil_to_grid(hi)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn as_f64(q: Ratio<i64>) -> f64 {
        *q.numer() as f64 / *q.denom() as f64
    }

    #[test]
    fn landau_examples() {
        let q = as_f64(log_mahler_upper(&p(&[1, -3, 1])).unwrap());
        assert!(q.exp2() >= 11f64.sqrt());
        assert!(q < 1.7298);
        assert!(as_f64(log_mahler_upper(&p(&[0, 1])).unwrap()) >= 0.0);
        let k = p(&[4, -17, 38, -51, 38, -17, 4]);
        assert_eq!(k.norm2_sq(), BigUint::from(6099u32));
        assert!(as_f64(log_mahler_upper(&k).unwrap()).exp2() >= 6099f64.sqrt());
        assert!(log_mahler_upper(&IntPoly::zero()).is_err());
    }

    #[test]
    fn graeffe_squares_roots() {
        // (t - 2)(t + 3) -> (x - 4)(x - 9)
        assert_eq!(graeffe(&p(&[-6, 1, 1])), p(&[36, -13, 1]));
        assert_eq!(graeffe(&p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn interval_brackets_golden_ratio() {
        let (lo, hi) = log2_mahler_interval(&p(&[-1, -1, 1]), 12).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(as_f64(lo) <= golden.log2() && golden.log2() <= as_f64(hi));
        assert!(as_f64(hi) - as_f64(lo) < 1e-3);
    }

    #[test]
    fn landau_dominates_scaled_cyclotomic_products() {
        for lead in 1..6i64 {
            let f = (&crate::cyclotomic::cyclotomic(6) * &crate::cyclotomic::cyclotomic(5)).scale(&BigInt::from(lead));
            assert!(as_f64(log_mahler_upper(&f).unwrap()) >= (lead as f64).log2());
        }
    }
}
