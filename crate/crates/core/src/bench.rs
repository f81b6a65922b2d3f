//! Operation counts and timings of `Sq^i(c)` for `c` of degree `i + k`,
//! closed formula versus the composite `AW (t SHI)^k` pipeline.
//!
//! Both are evaluated on the top simplex of `Δ^{2i+k}`, which needs no face
//! table.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::chains::Cochain;
use crate::diagonal::{sq_slow_value, sq_value, term_count};
use crate::error::Result;
use crate::simplicial::{Counting, StandardSimplex};

/// Largest `m = 2i + k` at which the composite pipeline is run.
pub const DEFAULT_SLOW_LIMIT: usize = 10;

pub const TIMING_RUNS: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub i: usize,
    pub k: usize,
    pub summands: u64,
    pub face_ops: u64,
    pub bound: u64,
    /// Faces applied by an instrumented evaluation of the closed formula.
    pub measured_face_ops: u64,
    /// Faces applied by an instrumented evaluation of the composite pipeline.
    pub slow_face_ops: Option<u64>,
    pub wall_time_fast: f64,
    pub wall_time_slow: Option<f64>,
}

impl BenchRecord {
    pub fn summand_bound(&self) -> u64 {
        (self.i as u64 + 1).pow(self.k as u32)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BenchOptions {
    pub slow_limit: usize,
    pub timing: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { slow_limit: DEFAULT_SLOW_LIMIT, timing: true }
    }
}

/// `2i(i+1)^k`.
pub fn face_bound(i: usize, k: usize) -> u64 {
    2 * i as u64 * (i as u64 + 1).pow(k as u32)
}

fn setup(i: usize, k: usize) -> Result<(StandardSimplex, Cochain)> {
    let j = i + k;
    let delta = StandardSimplex::new(2 * i + k)?;
    let mut c = Cochain::zero(j);
    c.toggle(delta.simplex((1u64 << (j + 1)) - 1).generator());
    Ok((delta, c))
}

/// Faces applied while evaluating `Sq^i(c)` on the top simplex of `Δ^{2i+k}` by the closed formula.
pub fn measured_fast_face_ops(i: usize, k: usize) -> Result<u64> {
    let (delta, c) = setup(i, k)?;
    let counting = Counting::new(&delta);
    sq_value(&counting, i, &c, &delta.top());
    Ok(counting.face_count())
}

/// The same for the composite pipeline.
pub fn measured_slow_face_ops(i: usize, k: usize) -> Result<u64> {
    let (delta, c) = setup(i, k)?;
    let counting = Counting::new(&delta);
    sq_slow_value(&counting, i, &c, &delta.top());
    Ok(counting.face_count())
}

fn median_seconds(mut run: impl FnMut()) -> f64 {
    let mut times: Vec<Duration> = (0..TIMING_RUNS)
        .map(|_| {
            let t = Instant::now();
            run();
            t.elapsed()
        })
        .collect();
    times.sort();
    times[TIMING_RUNS / 2].as_secs_f64()
}

pub fn bench_record(i: usize, k: usize, options: BenchOptions) -> Result<BenchRecord> {
    let count = term_count(i, i + k);
    let (delta, c) = setup(i, k)?;
    let top = delta.top();
    let run_slow = 2 * i + k <= options.slow_limit;
    let slow_face_ops = if run_slow { Some(measured_slow_face_ops(i, k)?) } else { None };
    let (wall_time_fast, wall_time_slow) = if options.timing {
        let fast = median_seconds(|| {
            std::hint::black_box(sq_value(&delta, i, &c, &top));
        });
        let slow = run_slow.then(|| {
            median_seconds(|| {
                std::hint::black_box(sq_slow_value(&delta, i, &c, &top));
            })
        });
        (fast, slow)
    } else {
        (0.0, None)
    };
    Ok(BenchRecord {
        i,
        k,
        summands: count.summands,
        face_ops: count.face_ops,
        bound: face_bound(i, k),
        measured_face_ops: measured_fast_face_ops(i, k)?,
        slow_face_ops,
        wall_time_fast,
        wall_time_slow,
    })
}

/// Records for `1 <= i <= max_i`, `0 <= k <= max_k`, in that order.
pub fn run_bench(max_i: usize, max_k: usize, options: BenchOptions) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::new();
    for i in 1..=max_i {
        for k in 0..=max_k {
            out.push(bench_record(i, k, options)?);
        }
    }
    Ok(out)
}

pub const CSV_HEADER: &str =
    "i,k,summands,face_ops,bound,measured_face_ops,slow_face_ops,wall_time_fast,wall_time_slow";

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut s = String::new();
    writeln!(s, "{CSV_HEADER}").unwrap();
    let opt = |v: Option<String>| v.unwrap_or_default();
    for r in records {
        writeln!(
            s,
            "{},{},{},{},{},{},{},{:.9},{}",
            r.i,
            r.k,
            r.summands,
            r.face_ops,
            r.bound,
            r.measured_face_ops,
            opt(r.slow_face_ops.map(|v| v.to_string())),
            r.wall_time_fast,
            opt(r.wall_time_slow.map(|v| format!("{v:.9}"))),
        )
        .unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_without_timing() {
        let r = bench_record(2, 1, BenchOptions { slow_limit: 5, timing: false }).unwrap();
        assert_eq!(r.face_ops, r.measured_face_ops);
        assert!(r.slow_face_ops.is_some());
        assert_eq!(r.bound, 12);
    }

    #[test]
    fn csv_shape() {
        let rs = run_bench(1, 1, BenchOptions { slow_limit: 0, timing: false }).unwrap();
        let csv = to_csv(&rs);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("1,0,1,2,2,2,,"));
    }
}
