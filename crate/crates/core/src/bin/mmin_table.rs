//! Regenerates `MMIN_LOG2_GRID`: for each degree, an exhaustive search for
//! the least Mahler measure above 1, reported as a certified lower bound on
//! its base-2 logarithm (numerator over `LOG_GRID`).

use freeperiod::hartley::{min_measure_search, table_search_ceiling, MMIN_TABLE_MAX_DEGREE};
use freeperiod::mahler::LOG_GRID;

fn main() {
    let mut entries = vec![0i64, LOG_GRID];
    for d in 2..=MMIN_TABLE_MAX_DEGREE {
        let ceiling = table_search_ceiling(d);
        let s = min_measure_search(d, ceiling).expect("search");
        let r = s.lower_log2;
        let grid = (*r.numer() * LOG_GRID).div_euclid(*r.denom());
        let who = s.minimizer.map(|f| f.to_string()).unwrap_or_else(|| "-".into());
        eprintln!("d = {d}: ceiling {ceiling}, examined {}, minimizer {who}, lower {grid}/{LOG_GRID}", s.examined);
        entries.push(grid);
    }
    println!("pub const MMIN_LOG2_GRID: [i64; {}] = {:?};", entries.len(), entries);
}
