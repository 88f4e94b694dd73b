//! Differential testing in miniature: the fast recursion against the
//! brute-force enumeration it must agree with.
//!
//! Run with `cargo run --example random_oracle`.
//!
//! The best-match recursion minimizes child matchings per vertex pair;
//! the oracle instead materializes every reordering of both trees and
//! takes the minimum ordered distance over all pairs. Same number, no
//! shared code. The oracle is exponential, so it only exists for small
//! trees — which is exactly where subtle recursion bugs live.

use treemetric::{
    complete, d_bm, d_bm_star, enumerate_embeddings, joint_completion_params, oracle_bm,
    random_label_metric, random_tree, LabelAlphabet, WeightScheme,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = LabelAlphabet::from_order_text("X\nY\nZ")?;
    let weights = WeightScheme::Constant;

    // One pair in detail: seeded, so this prints the same thing every run.
    let t1 = random_tree(11, 3, 2, &base, 0.3)?;
    let t2 = random_tree(12, 3, 2, &base, 0.3)?;
    println!("tree 1: {t1}");
    println!("tree 2: {t2}");

    let (level, arity) = joint_completion_params(&t1, &t2);
    let c1 = complete(&t1, level, arity)?;
    let reorderings_ignoring_locks = enumerate_embeddings(&c1, false)?.len();
    let reorderings_respecting_locks = enumerate_embeddings(&c1, true)?.len();
    println!(
        "tree 1 has {reorderings_ignoring_locks} distinct reorderings, \
         {reorderings_respecting_locks} with locks respected"
    );

    let fast = d_bm(&t1, &t2, &base, &weights)?.value;
    let slow = oracle_bm(&t1, &t2, &base, &weights, false)?;
    println!("recursion: {fast}, enumeration: {slow}");

    let fast_star = d_bm_star(&t1, &t2, &base, &weights)?.value;
    let slow_star = oracle_bm(&t1, &t2, &base, &weights, true)?;
    println!("lock-respecting recursion: {fast_star}, enumeration: {slow_star}");
    println!();

    // Now in bulk, alternating lock probability and label metric. A
    // randomized label metric (random positive edge weights closed under
    // shortest paths) exercises the recursion away from the trivial
    // 0-or-1 label distances.
    let trials = 60;
    let mut checked = 0;
    for t in 0..trials {
        let alphabet = if t % 2 == 0 {
            base.clone()
        } else {
            random_label_metric(&base, 9000 + t)
        };
        let lock_probability = if t % 3 == 0 { 0.4 } else { 0.0 };
        let a = random_tree(2 * t, 3, 2, &alphabet, lock_probability)?;
        let b = random_tree(2 * t + 1, 3, 2, &alphabet, lock_probability)?;

        let recursion = d_bm(&a, &b, &alphabet, &weights)?.value;
        let enumeration = oracle_bm(&a, &b, &alphabet, &weights, false)?;
        assert_eq!(recursion, enumeration, "disagreement on {a} vs {b}");

        let recursion_star = d_bm_star(&a, &b, &alphabet, &weights)?.value;
        let enumeration_star = oracle_bm(&a, &b, &alphabet, &weights, true)?;
        assert_eq!(
            recursion_star, enumeration_star,
            "lock disagreement on {a} vs {b}"
        );
        checked += 1;
    }
    println!("{checked} random pairs checked, recursion and enumeration agree");

    Ok(())
}
