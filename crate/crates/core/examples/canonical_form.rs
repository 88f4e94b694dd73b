//! Canonical forms: reducing trees that differ only by child order to one
//! representative.
//!
//! Run with `cargo run --example canonical_form`.
//!
//! Left-regularization completes a tree and then, level by level from the
//! bottom, sorts every vertex's child subtrees ascending in the label
//! order. Trees reachable from each other by child swaps end up
//! byte-identical, so canonical-form equality is a constant-time
//! equivalence check after one pass per tree.

use treemetric::{
    d_bm, joint_completion_params, left_regularize, left_regularize_traced, parse_tree,
    LabelAlphabet, WeightScheme,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alphabet = LabelAlphabet::from_order_text("Z\nY\nX")?;

    // Two trees that are reorderings of one another, and one that is not.
    let a = parse_tree("X(Y,Z(Y,Z))")?;
    let b = parse_tree("X(Z(Z,Y),Y)")?;
    let c = parse_tree("X(Y,Z(Y,Y))")?;

    let (level, arity) = joint_completion_params(&a, &b);
    let canon_a = left_regularize(&a, &alphabet, arity, level)?;
    let canon_b = left_regularize(&b, &alphabet, arity, level)?;
    let canon_c = left_regularize(&c, &alphabet, arity, level)?;

    println!("order: {}", alphabet.order_description());
    println!("{a}  ->  {}", canon_a.to_text());
    println!("{b}  ->  {}", canon_b.to_text());
    println!("{c}  ->  {}", canon_c.to_text());
    println!();
    println!(
        "canonical forms of the first two equal: {}",
        canon_a == canon_b
    );
    println!(
        "canonical forms of first and third equal: {}",
        canon_a == canon_c
    );

    // The zero set of the best-match metric is exactly canonical-form
    // equality, so the two agree here by construction.
    let w = WeightScheme::Constant;
    println!(
        "best-match distances: {} and {}",
        d_bm(&a, &b, &alphabet, &w)?.value_text(),
        d_bm(&a, &c, &alphabet, &w)?.value_text(),
    );
    println!();

    // A deeper tree, traced: one line per level pass, bottom to top. Each
    // pass sorts the child blocks at that level; the label string is the
    // breadth-first reading of the current form.
    let deep = parse_tree("W(X(W(W,W),W(W,W)),Z(Z(S,S),Z(Z,Z)))")?;
    let deep_alphabet = LabelAlphabet::from_order_text("Z\nX\nW\nS")?;
    let (canon, trace) = left_regularize_traced(&deep, &deep_alphabet, 2, 3)?;
    println!("regularizing {deep}");
    println!("under order {}:", deep_alphabet.order_description());
    for step in &trace.levels {
        println!("  after level {} pass: {}", step.level, step.label_text());
    }
    println!("canonical form: {}", canon.to_text());

    Ok(())
}
