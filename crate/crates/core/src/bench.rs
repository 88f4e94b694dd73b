//! Empirical scaling measurements for the distance computations.
//!
//! For each depth in a range, two perfect random trees are generated from
//! seeds derived deterministically from (seed, depth), the requested
//! distance is computed `trials` times after one discarded warmup, and the
//! median wall time is recorded. Consecutive depths double n (for k = 2),
//! so the median-to-median ratio estimates the growth exponent without
//! depending on the machine: about 4 per step for the quadratic best
//! match, about 2 for the expected-linear canonicalization distance on
//! random labels.
//!
//! Computations far shorter than a scheduler quantum cannot be timed one
//! at a time: a single preemption swallows the whole measurement. Each
//! timed sample therefore repeats the computation enough times to last
//! a few milliseconds and reports the per-computation average. The
//! repetition count is sized from the fastest of three warmup runs — a
//! preempted warmup would otherwise undersize the samples and reintroduce
//! the noise. Long computations keep one repetition per sample and a
//! single warmup.
//!
//! Trials are interleaved round-robin across the depths rather than
//! depth by depth. Machine-load drift (a neighbor process, thermal
//! throttling) then slows every depth's samples about equally and
//! cancels out of the medians' ratios, which are the quantity callers
//! gate on.
//!
//! Rows time the ordinary library entry points, never a special
//! benchmarking path, and carry the computed value so callers can check
//! that timing runs compute the same numbers as everyone else.

use std::ops::RangeInclusive;
use std::time::Instant;

use crate::best_match::{d_bm, d_bm_star};
use crate::error::TreeError;
use crate::left_regular::d_lr;
use crate::ordered::Metric;
use crate::tree::{random_perfect_tree, Label, LabelAlphabet, LabeledTree, WeightScheme};
use crate::value::Value;

/// Minimum trials per depth; medians over fewer are too noisy to gate on.
pub const MIN_TRIALS: usize = 5;

/// Minimum intended duration of one timed sample. Samples shorter than
/// this repeat the computation and average, so preemptions distort a
/// fraction of a sample rather than a multiple of it.
const TARGET_SAMPLE_NS: u128 = 4_000_000;

/// Upper bound on repetitions per sample, so a pathologically fast (or
/// mistimed) warmup cannot make samples take seconds.
const MAX_REPETITIONS: u128 = 10_000;

/// One depth's measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingRow {
    pub metric: Metric,
    pub depth: usize,
    /// Exact vertex count (k^(depth+1) - 1)/(k - 1); the generated trees
    /// are perfect, so completion adds nothing.
    pub n: usize,
    pub arity: usize,
    pub trials: usize,
    /// Per-computation median over the timed trials, upper median for even
    /// counts. Sub-millisecond computations are repeated within a trial
    /// and averaged, so this stays a per-computation figure.
    pub median_ns: u128,
    /// median_ns relative to the previous depth; absent on the first row.
    pub ratio: Option<f64>,
    /// The distance computed during timing, for cross-checking against
    /// untimed calls.
    pub value: Value,
}

impl ScalingRow {
    pub const CSV_HEADER: &'static str = "metric,depth,n,arity,trials,median_ns,ratio";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.metric.name(),
            self.depth,
            self.n,
            self.arity,
            self.trials,
            self.median_ns,
            self.ratio.map(|r| format!("{r:.4}")).unwrap_or_default()
        )
    }
}

/// Knobs for [`run_scaling_with`].
#[derive(Clone, Debug)]
pub struct ScalingOptions {
    pub metric: Metric,
    pub depths: RangeInclusive<usize>,
    pub arity: usize,
    pub seed: u64,
    pub trials: usize,
    /// Give every vertex the same label. Subtree comparisons then never
    /// short-circuit, steering the canonicalization toward its worst case.
    pub adversarial_labels: bool,
    /// Lock probability for generated vertices; only the lock-respecting
    /// metric reads locks.
    pub lock_probability: f64,
}

/// Measures `metric` over `depths` with default generation settings:
/// uniform labels from {X, Y, Z}, locks on roughly half the internal
/// vertices when the metric respects them.
pub fn run_scaling(
    metric: Metric,
    depths: RangeInclusive<usize>,
    arity: usize,
    seed: u64,
    trials: usize,
) -> Result<Vec<ScalingRow>, TreeError> {
    run_scaling_with(&ScalingOptions {
        metric,
        depths,
        arity,
        seed,
        trials,
        adversarial_labels: false,
        lock_probability: if metric.respects_locks() { 0.5 } else { 0.0 },
    })
}

pub fn run_scaling_with(options: &ScalingOptions) -> Result<Vec<ScalingRow>, TreeError> {
    let compute: fn(
        &LabeledTree,
        &LabeledTree,
        &LabelAlphabet,
        &WeightScheme,
    ) -> Result<Value, TreeError> = match options.metric {
        Metric::BestMatch => |a, b, al, w| Ok(d_bm(a, b, al, w)?.value),
        Metric::BestMatchStar => |a, b, al, w| Ok(d_bm_star(a, b, al, w)?.value),
        Metric::LeftRegular => |a, b, al, w| Ok(d_lr(a, b, al, w)?.value),
        other => {
            return Err(TreeError::UnsupportedScalingMetric(
                other.name().to_string(),
            ))
        }
    };
    if options.trials < MIN_TRIALS {
        return Err(TreeError::TooFewTrials(options.trials));
    }
    let (lo, hi) = (*options.depths.start(), *options.depths.end());
    if lo > hi {
        return Err(TreeError::BadDepthRange);
    }
    let alphabet = if options.adversarial_labels {
        LabelAlphabet::new(vec![Label::new("X").unwrap()])
    } else {
        LabelAlphabet::new(
            ["X", "Y", "Z"]
                .iter()
                .map(|s| Label::new(*s).unwrap())
                .collect(),
        )
    }
    .expect("fixed alphabets are valid");
    let weights = WeightScheme::Constant;

    struct DepthState {
        depth: usize,
        n: usize,
        t1: LabeledTree,
        t2: LabeledTree,
        value: Value,
        repetitions: usize,
        times: Vec<u128>,
    }

    // Generate, warm up, and size the repetition count per depth first.
    let mut states = Vec::new();
    for depth in lo..=hi {
        let t1 = random_perfect_tree(
            derive_seed(options.seed, depth, 0),
            depth,
            options.arity,
            &alphabet,
            options.lock_probability,
        )?;
        let t2 = random_perfect_tree(
            derive_seed(options.seed, depth, 1),
            depth,
            options.arity,
            &alphabet,
            options.lock_probability,
        )?;

        let warmup_started = Instant::now();
        let value = compute(&t1, &t2, &alphabet, &weights)?; // warmup, discarded
        let mut cost_ns = warmup_started.elapsed().as_nanos().max(1);
        // Cheap computations get amortized over many repetitions per
        // sample. Size that count from the fastest of three warmups: one
        // preempted timing would otherwise undersize every sample at this
        // depth. Expensive computations run once per sample, and one
        // warmup is enough to know that.
        if cost_ns < TARGET_SAMPLE_NS {
            for _ in 0..2 {
                let started = Instant::now();
                let again = compute(&t1, &t2, &alphabet, &weights)?;
                std::hint::black_box(&again);
                cost_ns = cost_ns.min(started.elapsed().as_nanos().max(1));
            }
        }
        let repetitions = (TARGET_SAMPLE_NS / cost_ns + 1).min(MAX_REPETITIONS) as usize;

        states.push(DepthState {
            depth,
            n: t1.vertex_count(),
            t1,
            t2,
            value,
            repetitions,
            times: Vec::with_capacity(options.trials),
        });
    }

    // One sample per depth per round, so load drift spreads evenly.
    for _ in 0..options.trials {
        for state in &mut states {
            let start = Instant::now();
            for _ in 0..state.repetitions {
                let again = compute(&state.t1, &state.t2, &alphabet, &weights)?;
                std::hint::black_box(&again);
                debug_assert_eq!(again, state.value);
            }
            state
                .times
                .push(start.elapsed().as_nanos() / state.repetitions as u128);
        }
    }

    let mut rows = Vec::new();
    let mut previous: Option<u128> = None;
    for state in &mut states {
        state.times.sort_unstable();
        let median_ns = state.times[state.times.len() / 2];
        let ratio = previous
            .filter(|&p| p > 0)
            .map(|p| median_ns as f64 / p as f64);
        previous = Some(median_ns);

        rows.push(ScalingRow {
            metric: options.metric,
            depth: state.depth,
            n: state.n,
            arity: options.arity,
            trials: options.trials,
            median_ns,
            ratio,
            value: state.value,
        });
    }
    Ok(rows)
}

/// SplitMix64-style mixing so per-depth, per-side generator seeds are
/// independent of each other while fully determined by the run seed.
pub(crate) fn derive_seed(seed: u64, depth: usize, side: u64) -> u64 {
    let mut z = seed
        ^ (depth as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ side.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
