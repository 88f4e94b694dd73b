//! The common-structure baselines: largest common forest and largest
//! common subtree, with the actual matchings they found.
//!
//! Run with `cargo run --example common_subtrees`.
//!
//! Both baselines treat trees as unordered and uncompleted. "Subtree"
//! means a vertex with all of its descendants; matching goes through
//! order-free canonical codes. The distances normalize the matched vertex
//! count f to 1 - f / max(n1, n2), so 0 means isomorphic and 1 means not
//! even a leaf label in common.

use treemetric::{
    canonical_code, d_bu, d_st, largest_common_forest, largest_common_subtree, parse_tree,
    LabeledTree,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t1 = parse_tree("Z(X,Y(Z(X,Y)))")?;
    let t2 = parse_tree("X(Y,Z(X(X,X)))")?;

    println!("tree 1: {t1}   (canonical code {})", canonical_code(&t1));
    println!("tree 2: {t2}   (canonical code {})", canonical_code(&t2));
    println!();

    // The forest: vertex-disjoint subtrees of tree 1 matched to
    // isomorphic, vertex-disjoint subtrees of tree 2, maximizing the
    // total vertex count. Pairs are preorder indices.
    let forest = largest_common_forest(&t1, &t2)?;
    println!(
        "largest common forest covers {} vertices per side:",
        forest.f
    );
    for &(i, j) in &forest.matched_pairs {
        println!(
            "  subtree at preorder {} of tree 1  <->  preorder {} of tree 2   ({})",
            i,
            j,
            subtree_text(&t1, i),
        );
    }
    println!("{}", d_bu(&t1, &t2)?);
    println!();

    // The single largest matched pair, a coarser but cheaper signal.
    let subtree = largest_common_subtree(&t1, &t2)?;
    println!("largest common subtree size: {}", subtree.f);
    for &(i, j) in &subtree.matched_pairs {
        println!(
            "  subtree at preorder {} of tree 1  <->  preorder {} of tree 2   ({})",
            i,
            j,
            subtree_text(&t1, i),
        );
    }
    println!("{}", d_st(&t1, &t2)?);
    println!();

    // The forest is finer than the subtree: scattered shared pieces all
    // count toward the forest but only the single largest block counts
    // toward the subtree, so the forest-based distance never exceeds the
    // subtree-based one.
    println!(
        "forest matched {} >= subtree matched {}",
        forest.f, subtree.f
    );

    Ok(())
}

/// Renders the subtree rooted at the given preorder index.
fn subtree_text(tree: &LabeledTree, index: usize) -> String {
    let vertex = tree
        .preorder()
        .nth(index)
        .expect("index from a matching is valid");
    let mut text = String::new();
    write_vertex(vertex, &mut text);
    text
}

fn write_vertex(v: &treemetric::Vertex, out: &mut String) {
    out.push_str(v.label().as_str());
    if !v.children().is_empty() {
        out.push('(');
        for (i, child) in v.children().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write_vertex(child, out);
        }
        out.push(')');
    }
}
