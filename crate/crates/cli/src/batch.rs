//! Parallel classification of many classes. Math calls are pure, so the
//! fan-out is embarrassingly parallel; results are collected in input
//! order, making the output independent of the parallelism degree.

use num_bigint::BigInt;
use rayon::prelude::*;

use avfq::arith::IntPoly;
use avfq::weil::WeilPoly;
use avfq::Result as CoreResult;

use crate::report::{build_report, ClassReport, ReportOptions};

#[derive(Clone, Debug)]
pub struct BatchInput {
    pub label: Option<String>,
    pub q: BigInt,
    pub poly: Vec<BigInt>,
}

/// Classifies every input; the first error (in input order) aborts.
pub fn run_batch(
    inputs: &[BatchInput],
    opts: &ReportOptions,
    jobs: Option<usize>,
) -> CoreResult<Vec<ClassReport>> {
    let work = |item: &BatchInput| -> CoreResult<ClassReport> {
        let w = WeilPoly::validate(IntPoly::new(item.poly.clone()), item.q.clone())?;
        let mut o = opts.clone();
        o.label = item.label.clone();
        build_report(w, &o)
    };
    let results: Vec<CoreResult<ClassReport>> = match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .expect("thread pool");
            pool.install(|| inputs.par_iter().map(work).collect())
        }
        None => inputs.par_iter().map(work).collect(),
    };
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_is_order_preserving_and_parallel_independent() {
        let inputs: Vec<BatchInput> = [
            (2i64, vec![2i64, 1, 1]),
            (3, vec![3, 0, 1]),
            (2, vec![2, -1, 1]),
            (5, vec![5, 2, 1]),
        ]
        .iter()
        .map(|(q, poly)| BatchInput {
            label: None,
            q: BigInt::from(*q),
            poly: poly.iter().map(|&c| BigInt::from(c)).collect(),
        })
        .collect();
        let opts = ReportOptions::default();
        let serial = run_batch(&inputs, &opts, Some(1)).unwrap();
        let parallel = run_batch(&inputs, &opts, Some(4)).unwrap();
        assert_eq!(serial.len(), 4);
        for (a, b) in serial.iter().zip(&parallel) {
            assert_eq!(
                serde_json::to_value(strip_timings(a)).unwrap(),
                serde_json::to_value(strip_timings(b)).unwrap()
            );
        }
    }

    fn strip_timings(r: &ClassReport) -> serde_json::Value {
        let mut v = serde_json::to_value(r).unwrap();
        v.as_object_mut().unwrap().remove("timings");
        v
    }
}
