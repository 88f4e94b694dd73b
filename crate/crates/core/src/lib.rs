//! Distances, semimetrics, and canonical forms for rooted labeled trees.
//!
//! Trees are written in a small text format: a vertex is a label, an
//! optional `*` lock mark, and an optional parenthesized child list, so
//! `X(Y,Z(Y,Z))` is a root labeled X whose second child is another
//! branching vertex. Distances are defined on level-m completions, the
//! tree padded to a perfect k-ary shape with null-labeled (`N`) vertices,
//! which gives every vertex a position and makes trees of different sizes
//! comparable.
//!
//! ```
//! use treemetric::{d_bm, d_lr, parse_tree, LabelAlphabet, WeightScheme};
//!
//! let a = parse_tree("X(Y,Z(Y,Z))")?;
//! let b = parse_tree("Y(Y)")?;
//! // Ascending label order Z < Y < X; N joins automatically as greatest.
//! let alphabet = LabelAlphabet::from_order_text("Z\nY\nX")?;
//! let w = WeightScheme::Constant;
//! assert_eq!(d_bm(&a, &b, &alphabet, &w)?.value_text(), "4");
//! assert_eq!(d_lr(&a, &b, &alphabet, &w)?.value_text(), "5");
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The distances, from most to least order-sensitive:
//!
//! - [`d_ot`]: positionwise comparison of two completed trees of the same
//!   shape; everything else reduces to it.
//! - [`d_bm`]: minimum of `d_ot` over all planar embeddings of both
//!   trees; a metric on unordered trees, quadratic in the vertex count.
//! - [`d_bm_star`]: the same minimum with lock marks respected; a
//!   semimetric (the triangle inequality genuinely fails).
//! - [`d_lr`]: `d_ot` between left-regularized canonical forms; an upper
//!   bound for `d_bm` at near-linear expected cost, dependent on the
//!   chosen total order on labels.
//! - [`d_bu`], [`d_st`]: common-structure baselines on the raw
//!   (uncompleted) trees.
//!
//! All arithmetic is exact rational; see [`Value`]. Random generation and
//! benchmark runs are deterministic for fixed seeds. The [`oracle`]
//! module holds an exponential brute-force reference against which the
//! best-match recursion is certified, and [`cli`] exposes every
//! capability as a command-line tool.

pub mod bench;
pub mod best_match;
pub mod cli;
pub mod error;
pub mod left_regular;
pub mod oracle;
pub mod ordered;
pub mod overlap;
pub mod tree;
pub mod value;

pub use bench::{run_scaling, run_scaling_with, ScalingOptions, ScalingRow};
pub use best_match::{
    best_match_completed, best_match_witness, d_bm, d_bm_star, equivalent, semi_equivalent,
};
pub use error::{AlphabetError, ParseError, TreeError};
pub use left_regular::{
    d_lr, left_regularize, left_regularize_traced, lex_compare, RegularizationTrace,
};
pub use oracle::{enumerate_embeddings, oracle_bm, random_label_metric};
pub use ordered::{d_ot, DistanceReport, Metric};
pub use overlap::{
    canonical_code, d_bu, d_st, largest_common_forest, largest_common_subtree,
    CommonStructureResult,
};
pub use tree::{
    complete, joint_completion_params, label_string, parse_tree, random_perfect_tree, random_tree,
    CompletedTree, Label, LabelAlphabet, LabeledTree, Vertex, WeightScheme,
};
pub use value::Value;
