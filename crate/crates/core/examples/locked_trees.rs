//! Lock marks: vertices whose child order is fixed, and what that does to
//! the distance.
//!
//! Run with `cargo run --example locked_trees`.
//!
//! A `*` after an internal vertex's label pins its child order: swaps are
//! allowed only at unlocked vertices. The lock-respecting distance
//! minimizes over this restricted reordering set. It stays symmetric and
//! zero exactly on semi-equivalent trees, but the triangle inequality can
//! fail — two trees can both be semi-equivalent to a third yet far from
//! each other, so the value is a semimetric, not a metric.

use treemetric::{
    best_match_witness, d_bm, d_bm_star, parse_tree, semi_equivalent, LabelAlphabet, WeightScheme,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alphabet = LabelAlphabet::from_order_text("Z\nY\nX")?;
    let weights = WeightScheme::Constant;

    // An unlocked tree and two fully locked reorderings of it.
    let free = parse_tree("X(Y,Z(X,Y))")?;
    let locked_one = parse_tree("X*(Y,Z*(Y,X))")?;
    let locked_two = parse_tree("X*(Z*(X,Y),Y)")?;

    println!("free tree:       {free}");
    println!("locked tree one: {locked_one}");
    println!("locked tree two: {locked_two}");
    println!();

    // The unlocked tree can still be reordered freely against a locked
    // partner, so it reaches both locked trees at cost zero.
    let star = |a, b| -> Result<_, treemetric::TreeError> {
        Ok(d_bm_star(a, b, &alphabet, &weights)?.value_text())
    };
    println!("lock-respecting distances:");
    println!("  free vs locked one: {}", star(&free, &locked_one)?);
    println!("  free vs locked two: {}", star(&free, &locked_two)?);

    // The two locked trees disagree at every position and neither may
    // swap anything, so the distance is the full position count that
    // differs: the triangle inequality fails, 0 + 0 < 6.
    println!(
        "  locked one vs locked two: {}",
        star(&locked_one, &locked_two)?
    );
    println!();
    println!(
        "semi-equivalent: free/one {}, free/two {}, one/two {}",
        semi_equivalent(&free, &locked_one)?,
        semi_equivalent(&free, &locked_two)?,
        semi_equivalent(&locked_one, &locked_two)?,
    );
    println!();

    // Ignoring the locks, the same pair is at distance zero.
    println!(
        "same pair without lock enforcement: {}",
        d_bm(&locked_one, &locked_two, &alphabet, &weights)?.value_text()
    );
    println!();

    // The witness: the reordering of the first tree that attains the
    // lock-respecting value against the second. With every vertex locked
    // nothing may move, so the witness is the first tree itself (padded),
    // and the value 6 is just the positionwise disagreement count.
    let (value, witness) = best_match_witness(&locked_one, &locked_two, &alphabet, &weights, true)?;
    println!(
        "witness for locked one vs locked two: {}",
        witness.to_text()
    );
    println!("attained value: {value}");

    Ok(())
}
