//! Every distance on one pair of trees, side by side.
//!
//! Run with `cargo run --example distances`.
//!
//! The pair is small enough to follow by hand: a seven-vertex tree and a
//! three-vertex tree. Both are padded to a common perfect binary shape
//! with the null label `N` before the completion-based distances apply;
//! the two baselines work on the raw trees instead.

use treemetric::{
    complete, d_bm, d_bu, d_lr, d_ot, d_st, joint_completion_params, parse_tree, LabelAlphabet,
    WeightScheme,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t1 = parse_tree("X(Y,Z(Y,Z))")?;
    let t2 = parse_tree("Y(Y)")?;

    // The label order matters only to the canonical-form distance `lr`;
    // here it is Z < Y < X, with the null label N greatest automatically.
    let alphabet = LabelAlphabet::from_order_text("Z\nY\nX")?;
    let weights = WeightScheme::Constant;

    println!("tree 1: {t1}");
    println!("tree 2: {t2}");

    // The joint completion shape: deep and wide enough for both trees.
    let (level, arity) = joint_completion_params(&t1, &t2);
    let c1 = complete(&t1, level, arity)?;
    let c2 = complete(&t2, level, arity)?;
    println!("completed to level {level}, arity {arity}:");
    println!("  {}", c1.to_text());
    println!("  {}", c2.to_text());
    println!();

    // Position by position on the completed trees. Order-sensitive: it
    // sees `X(Y,Z)` and `X(Z,Y)` as different trees.
    println!(
        "{}   (position by position)",
        d_ot(&c1, &c2, &alphabet, &weights)?
    );

    // Minimum of the ordered distance over all child reorderings of both
    // trees. This is the crate's main metric.
    println!(
        "{}   (best reordering)",
        d_bm(&t1, &t2, &alphabet, &weights)?
    );

    // Ordered distance between canonical forms. An upper bound for the
    // best match that only needs one pass per tree; its value depends on
    // the chosen label order.
    println!(
        "{}   (canonical forms)",
        d_lr(&t1, &t2, &alphabet, &weights)?
    );

    // Largest common forest and largest common subtree, each normalized
    // to 1 - f / max(n1, n2). Exact fractions, no completion.
    println!("{}  (largest common forest)", d_bu(&t1, &t2)?);
    println!("{}  (largest common subtree)", d_st(&t1, &t2)?);
    println!();

    // Depth-discounted weights: level l costs (1/4)^l instead of 1, so
    // disagreements near the root dominate. Arithmetic stays exact.
    let quartering = WeightScheme::exponential(treemetric::Value::new(1, 4))
        .expect("1/4 is a valid positive base");
    let discounted = d_bm(&t1, &t2, &alphabet, &quartering)?;
    println!("{discounted}   (best reordering, level weight (1/4)^l)");
    println!(
        "  exact: {}, decimal: {}",
        discounted.value_text(),
        discounted.value_f64()
    );

    Ok(())
}
