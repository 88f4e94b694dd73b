//! Customizing the label universe: total orders, label metrics from CSV,
//! and depth weights.
//!
//! Run with `cargo run --example label_metrics`.
//!
//! Distances are parameterized three ways. The total order on labels
//! decides how canonical forms sort (it changes `lr` values, nothing
//! else). The label metric prices each label substitution (the default
//! charges 1 for any change). The weight scheme prices each level (the
//! default charges every level equally).

use treemetric::{d_bm, d_lr, parse_tree, LabelAlphabet, Value, WeightScheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t1 = parse_tree("X(Y,Z(Y,Z))")?;
    let t2 = parse_tree("Y(Y)")?;
    let constant = WeightScheme::Constant;

    // The same pair under two label orders: the best match is order-blind
    // while the canonical-form distance is not, because sorting children
    // under different orders can pair up different vertices.
    for order in ["Z\nY\nX", "X\nY\nZ"] {
        let alphabet = LabelAlphabet::from_order_text(order)?;
        println!(
            "order {}: bm = {}, lr = {}",
            alphabet.order_description(),
            d_bm(&t1, &t2, &alphabet, &constant)?.value_text(),
            d_lr(&t1, &t2, &alphabet, &constant)?.value_text(),
        );
    }
    println!();

    // A label metric from a CSV table: row and column headers are labels,
    // cell (a, b) is the substitution cost. It must be a real metric
    // (symmetric, zero only on the diagonal, triangle inequality); the
    // constructor validates and rejects anything else. Unlisted pairs
    // against the null label N keep the default cost 1.
    let table = "\
        ,X,Y,Z\n\
        X,0,1,2\n\
        Y,1,0,1\n\
        Z,2,1,0\n";
    let weighted_labels = LabelAlphabet::from_order_text("Z\nY\nX")?.with_metric_csv(table)?;
    let cheap = LabelAlphabet::from_order_text("Z\nY\nX")?;
    let all_x = parse_tree("X(X,X)")?;
    let all_z = parse_tree("Z(Z,Z)")?;
    println!(
        "X(X,X) vs Z(Z,Z), trivial costs: bm = {}",
        d_bm(&all_x, &all_z, &cheap, &constant)?.value_text()
    );
    println!(
        "X(X,X) vs Z(Z,Z), X<->Z costs 2: bm = {}",
        d_bm(&all_x, &all_z, &weighted_labels, &constant)?.value_text()
    );
    println!();

    // Depth weights: level l costs base^l. A base below one makes
    // disagreements near the root dominate; exact rational arithmetic
    // keeps the results precise fractions.
    for base in [Value::new(1, 2), Value::new(1, 4)] {
        let scheme = WeightScheme::exponential(base).expect("positive base");
        let report = d_bm(&t1, &t2, &cheap, &scheme)?;
        println!(
            "weights ({}/{})^l: bm = {} ({})",
            base.numer(),
            base.denom(),
            report.value_text(),
            report.value_f64(),
        );
    }

    // A symmetric-looking table with a broken triangle is refused.
    let broken = "\
        ,X,Y,Z\n\
        X,0,1,9\n\
        Y,1,0,1\n\
        Z,9,1,0\n";
    let error = LabelAlphabet::from_order_text("Z\nY\nX")?
        .with_metric_csv(broken)
        .unwrap_err();
    println!();
    println!("broken table rejected: {error}");

    Ok(())
}
