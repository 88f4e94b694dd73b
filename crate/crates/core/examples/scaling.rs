//! Empirical time scaling: how the cost of each distance grows as trees
//! double in size.
//!
//! Run with `cargo run --example scaling --release` (release mode keeps
//! the timings representative; it works in debug too, just slower).
//!
//! Each depth step doubles the vertex count of the perfect binary inputs,
//! so the ratio between consecutive median times estimates the growth
//! exponent machine-independently: about 4 per step for the quadratic
//! best match, about 2 for the canonicalization distance on random
//! labels. Rows carry the computed value too, as a check that the timed
//! runs compute the same numbers as ordinary calls.

use treemetric::{run_scaling_with, Metric, ScalingOptions, ScalingRow};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{}", ScalingRow::CSV_HEADER);

    for metric in [Metric::BestMatch, Metric::LeftRegular] {
        let rows = run_scaling_with(&ScalingOptions {
            metric,
            depths: 5..=8,
            arity: 2,
            seed: 17,
            trials: 9,
            adversarial_labels: false,
            lock_probability: 0.0,
        })?;
        for row in &rows {
            println!("{}", row.csv_row());
        }
    }

    // The canonicalization worst case: identical labels everywhere force
    // every subtree comparison to run to full length, steering the cost
    // toward its n log n bound instead of the random-label expected
    // linear time.
    let adversarial = run_scaling_with(&ScalingOptions {
        metric: Metric::LeftRegular,
        depths: 5..=8,
        arity: 2,
        seed: 17,
        trials: 9,
        adversarial_labels: true,
        lock_probability: 0.0,
    })?;
    println!("# same metric, all labels identical (worst case):");
    for row in &adversarial {
        println!("{}", row.csv_row());
    }

    Ok(())
}
