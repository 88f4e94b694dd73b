//! Property tests: structural laws that must hold for every input, checked
//! on randomly generated (and automatically shrunk) trees.
//!
//! The generators build tree text and parse it, so failures shrink to
//! small readable counterexamples. Depth stays at or below 3 and arity at
//! 2 to keep the brute-force comparisons exhaustive.

use std::cmp::Ordering;

use proptest::prelude::*;
use treemetric::{
    best_match_witness, canonical_code, complete, d_bm, d_bm_star, d_bu, d_lr, d_ot, d_st,
    joint_completion_params, largest_common_forest, largest_common_subtree, left_regularize,
    lex_compare, oracle_bm, parse_tree, CompletedTree, Label, LabelAlphabet, LabeledTree, Value,
    WeightScheme,
};

fn alphabet() -> LabelAlphabet {
    LabelAlphabet::from_order_text("X\nY\nZ").unwrap()
}

fn weight_schemes() -> [WeightScheme; 2] {
    [
        WeightScheme::Constant,
        WeightScheme::exponential(Value::new(1, 2)).unwrap(),
    ]
}

/// Tree text of depth at most `max_depth` over labels {X, Y, Z} with
/// binary branching; lock marks on internal vertices when `locks`.
fn arb_tree_text(max_depth: u32, locks: bool) -> BoxedStrategy<String> {
    let leaf = prop::sample::select(&["X", "Y", "Z"][..])
        .prop_map(str::to_string)
        .boxed();
    leaf.prop_recursive(max_depth, 24, 2, move |inner| {
        (
            prop::sample::select(&["X", "Y", "Z"][..]),
            any::<bool>(),
            prop::collection::vec(inner, 1..=2),
        )
            .prop_map(move |(label, lock_bit, children)| {
                let mark = if locks && lock_bit { "*" } else { "" };
                format!("{label}{mark}({})", children.join(","))
            })
            .boxed()
    })
    .boxed()
}

fn arb_tree(max_depth: u32, locks: bool) -> impl Strategy<Value = LabeledTree> {
    arb_tree_text(max_depth, locks)
        .prop_map(|text| parse_tree(&text).expect("generated text is valid by construction"))
}

/// Child swaps at positions chosen by the given indices; ignores locks.
fn apply_swaps(tree: &LabeledTree, picks: &[prop::sample::Index]) -> LabeledTree {
    let mut current = tree.clone();
    for pick in picks {
        let candidates: Vec<Vec<usize>> = current
            .preorder_paths()
            .into_iter()
            .filter(|(_, v)| v.children().len() == 2)
            .map(|(path, _)| path)
            .collect();
        if candidates.is_empty() {
            break;
        }
        let path = &candidates[pick.index(candidates.len())];
        current = current.swap_children(path, 0, 1).unwrap();
    }
    current
}

/// Breadth-first labels of the subtree rooted at (level, index) of a
/// completed tree.
fn subtree_labels(tree: &CompletedTree, level: usize, index: usize) -> Vec<Label> {
    let k = tree.arity();
    let mut out = Vec::new();
    for down in 0..=(tree.depth() - level) {
        let width = k.pow(down as u32);
        for offset in 0..width {
            out.push(
                tree.label_at(level + down, index * width + offset)
                    .unwrap()
                    .clone(),
            );
        }
    }
    out
}

proptest! {
    /// Serialization and parsing invert each other, lock marks included.
    #[test]
    fn tree_text_round_trips(tree in arb_tree(3, true)) {
        prop_assert_eq!(parse_tree(&tree.to_text()).unwrap(), tree);
    }

    /// Completion yields a perfect tree of the joint shape whose non-null
    /// labels are exactly the input's labels, in the same multiset.
    #[test]
    fn completion_pads_without_losing_labels(tree in arb_tree(3, true)) {
        let (m, k) = joint_completion_params(&tree, &tree);
        let completed = complete(&tree, m, k).unwrap();
        prop_assert_eq!(completed.depth(), m);
        prop_assert_eq!(completed.arity(), k);
        prop_assert_eq!(completed.vertex_count(), (k.pow(m as u32 + 1) - 1) / (k - 1));

        let mut kept: Vec<&str> = completed
            .labels()
            .iter()
            .filter(|l| !l.is_null())
            .map(Label::as_str)
            .collect();
        kept.sort_unstable();
        let mut original: Vec<&str> =
            tree.preorder().map(|v| v.label().as_str()).collect();
        original.sort_unstable();
        prop_assert_eq!(kept, original);
    }

    /// Every distance is nonnegative, symmetric, and zero on identical
    /// inputs, under constant and exponential weights alike.
    #[test]
    fn distances_are_symmetric_nonnegative_and_reflexive(
        a in arb_tree(3, false),
        b in arb_tree(3, false),
    ) {
        let al = alphabet();
        for w in &weight_schemes() {
            for f in [d_bm, d_bm_star, d_lr] {
                let ab = f(&a, &b, &al, w).unwrap().value;
                let ba = f(&b, &a, &al, w).unwrap().value;
                prop_assert_eq!(ab, ba);
                prop_assert!(ab >= Value::from_integer(0));
                prop_assert_eq!(f(&a, &a, &al, w).unwrap().value, Value::from_integer(0));
            }
        }
        for f in [d_bu, d_st] {
            let ab = f(&a, &b).unwrap().value;
            prop_assert_eq!(ab, f(&b, &a).unwrap().value);
            prop_assert!(ab >= Value::from_integer(0));
            prop_assert_eq!(f(&a, &a).unwrap().value, Value::from_integer(0));
        }
    }

    /// Child swaps never change the order-insensitive distances, and a
    /// tree is at distance zero from any reordering of itself.
    #[test]
    fn swaps_do_not_move_order_insensitive_distances(
        tree in arb_tree(3, false),
        other in arb_tree(3, false),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4),
    ) {
        let al = alphabet();
        let w = WeightScheme::Constant;
        let shuffled = apply_swaps(&tree, &picks);

        prop_assert_eq!(d_bm(&tree, &shuffled, &al, &w).unwrap().value, Value::from_integer(0));
        prop_assert_eq!(d_lr(&tree, &shuffled, &al, &w).unwrap().value, Value::from_integer(0));

        prop_assert_eq!(
            d_bm(&shuffled, &other, &al, &w).unwrap().value,
            d_bm(&tree, &other, &al, &w).unwrap().value
        );
        prop_assert_eq!(
            d_lr(&shuffled, &other, &al, &w).unwrap().value,
            d_lr(&tree, &other, &al, &w).unwrap().value
        );
        prop_assert_eq!(
            d_bu(&shuffled, &other).unwrap().value,
            d_bu(&tree, &other).unwrap().value
        );
        prop_assert_eq!(
            d_st(&shuffled, &other).unwrap().value,
            d_st(&tree, &other).unwrap().value
        );
        prop_assert_eq!(canonical_code(&shuffled), canonical_code(&tree));
    }

    /// Locks only remove candidate matchings, so the lock-respecting
    /// value is at least the unrestricted one; without lock marks the two
    /// coincide.
    #[test]
    fn locks_never_decrease_the_best_match(
        a in arb_tree(3, true),
        b in arb_tree(3, true),
    ) {
        let al = alphabet();
        for w in &weight_schemes() {
            let plain = d_bm(&a, &b, &al, w).unwrap().value;
            let locked = d_bm_star(&a, &b, &al, w).unwrap().value;
            prop_assert!(locked >= plain);
        }
    }

    /// On inputs without lock marks the lock-respecting variant computes
    /// the plain best match.
    #[test]
    fn without_locks_the_variants_agree(
        a in arb_tree(3, false),
        b in arb_tree(3, false),
    ) {
        let al = alphabet();
        let w = WeightScheme::Constant;
        prop_assert_eq!(
            d_bm_star(&a, &b, &al, &w).unwrap().value,
            d_bm(&a, &b, &al, &w).unwrap().value
        );
    }

    /// The best match never exceeds the position-by-position distance of
    /// the jointly completed trees: the identity is one of its matchings.
    #[test]
    fn best_match_is_bounded_by_the_ordered_distance(
        a in arb_tree(3, false),
        b in arb_tree(3, false),
    ) {
        let al = alphabet();
        for w in &weight_schemes() {
            let (m, k) = joint_completion_params(&a, &b);
            let ordered = d_ot(
                &complete(&a, m, k).unwrap(),
                &complete(&b, m, k).unwrap(),
                &al,
                w,
            )
            .unwrap()
            .value;
            prop_assert!(d_bm(&a, &b, &al, w).unwrap().value <= ordered);
        }
    }

    /// The canonical-form distance never undercuts the best match.
    #[test]
    fn canonical_form_distance_bounds_the_best_match(
        a in arb_tree(3, false),
        b in arb_tree(3, false),
    ) {
        let al = alphabet();
        for w in &weight_schemes() {
            prop_assert!(
                d_lr(&a, &b, &al, w).unwrap().value >= d_bm(&a, &b, &al, w).unwrap().value
            );
        }
    }

    /// The recursion and the brute-force enumeration minimum agree, with
    /// and without lock marks. This is the independent route to the same
    /// number: enumeration minimizes over whole reordering sets and never
    /// shares code with the per-vertex recursion.
    #[test]
    fn recursion_matches_enumeration(
        a in arb_tree(3, true),
        b in arb_tree(3, true),
    ) {
        let al = alphabet();
        let w = WeightScheme::Constant;
        prop_assert_eq!(
            d_bm(&a, &b, &al, &w).unwrap().value,
            oracle_bm(&a, &b, &al, &w, false).unwrap()
        );
        prop_assert_eq!(
            d_bm_star(&a, &b, &al, &w).unwrap().value,
            oracle_bm(&a, &b, &al, &w, true).unwrap()
        );
    }

    /// In the canonical form every vertex's child subtrees ascend in the
    /// label order, and canonicalizing a canonical form changes nothing.
    #[test]
    fn canonical_forms_are_sorted_and_idempotent(tree in arb_tree(3, false)) {
        let al = alphabet();
        let (m, k) = joint_completion_params(&tree, &tree);
        let canon = left_regularize(&tree, &al, k, m).unwrap();

        for level in 0..m {
            for index in 0..k.pow(level as u32) {
                let children: Vec<Vec<Label>> = (0..k)
                    .map(|j| subtree_labels(&canon, level + 1, k * index + j))
                    .collect();
                for pair in children.windows(2) {
                    prop_assert_ne!(
                        lex_compare(&pair[0], &pair[1], &al).unwrap(),
                        Ordering::Greater,
                        "children out of order at level {} index {}",
                        level,
                        index
                    );
                }
            }
        }

        let again = left_regularize(&canon.to_labeled_tree(), &al, k, m).unwrap();
        prop_assert_eq!(again.labels(), canon.labels());
    }

    /// The reordering the best match reports really attains the reported
    /// value against the second tree's completion.
    #[test]
    fn reported_witness_attains_the_value(
        a in arb_tree(3, true),
        b in arb_tree(3, true),
    ) {
        let al = alphabet();
        let w = WeightScheme::Constant;
        for respect_locks in [false, true] {
            let (value, witness) =
                best_match_witness(&a, &b, &al, &w, respect_locks).unwrap();
            let (m, k) = joint_completion_params(&a, &b);
            let target = complete(&b, m, k).unwrap();
            prop_assert_eq!(d_ot(&witness, &target, &al, &w).unwrap().value, value);
        }
    }

    /// Unordered isomorphism, the zero set of the forest baseline, and
    /// canonical-code equality are one relation.
    #[test]
    fn baseline_zero_is_unordered_isomorphism(
        a in arb_tree(3, false),
        b in arb_tree(3, false),
    ) {
        let same_code = canonical_code(&a) == canonical_code(&b);
        let bu_zero = d_bu(&a, &b).unwrap().value == Value::from_integer(0);
        prop_assert_eq!(same_code, bu_zero);
    }

    /// The forest result is internally consistent: f counts the matched
    /// vertices, pairs are disjoint, and a single common subtree never
    /// beats the forest.
    #[test]
    fn common_structure_results_are_consistent(
        a in arb_tree(3, false),
        b in arb_tree(3, false),
    ) {
        let forest = largest_common_forest(&a, &b).unwrap();
        let subtree = largest_common_subtree(&a, &b).unwrap();
        prop_assert!(forest.f >= subtree.f);
        prop_assert!(forest.f <= a.vertex_count().min(b.vertex_count()));

        let sizes: Vec<usize> = a.preorder().map(|v| v.size()).collect();
        let total: usize = forest.matched_pairs.iter().map(|&(i, _)| sizes[i]).sum();
        prop_assert_eq!(total, forest.f);

        // Matched subtrees of the first tree are vertex-disjoint: their
        // preorder ranges [i, i + size) never overlap.
        let mut ranges: Vec<(usize, usize)> =
            forest.matched_pairs.iter().map(|&(i, _)| (i, i + sizes[i])).collect();
        ranges.sort_unstable();
        for pair in ranges.windows(2) {
            prop_assert!(pair[0].1 <= pair[1].0, "overlapping matches");
        }
    }

    /// Changing one label moves the best match by at most that label's
    /// distance to its replacement, which is 1 under the trivial metric.
    #[test]
    fn single_relabel_moves_the_best_match_by_at_most_one(
        a in arb_tree(3, false),
        b in arb_tree(3, false),
        pick in any::<prop::sample::Index>(),
    ) {
        let al = alphabet();
        let w = WeightScheme::Constant;
        let paths = a.preorder_paths();
        let (path, vertex) = &paths[pick.index(paths.len())];
        let cycle = ["X", "Y", "Z"];
        let position = cycle.iter().position(|l| *l == vertex.label().as_str()).unwrap();
        let replacement = Label::new(cycle[(position + 1) % cycle.len()]).unwrap();
        let path = path.clone();
        drop(paths);
        let mutated = a.relabel(&path, replacement).unwrap();

        let before = d_bm(&a, &b, &al, &w).unwrap().value;
        let after = d_bm(&mutated, &b, &al, &w).unwrap().value;
        let delta = if after > before { after - before } else { before - after };
        prop_assert!(delta <= Value::from_integer(1));
    }

    /// Triangle inequality for the two metrics, under both weight
    /// schemes. (The lock-respecting variant is exempt by design; the
    /// release gate pins its concrete violating triple.)
    #[test]
    fn metrics_satisfy_the_triangle_inequality(
        a in arb_tree(2, false),
        b in arb_tree(2, false),
        c in arb_tree(2, false),
    ) {
        let al = alphabet();
        for w in &weight_schemes() {
            for f in [d_bm, d_lr] {
                let ab = f(&a, &b, &al, w).unwrap().value;
                let bc = f(&b, &c, &al, w).unwrap().value;
                let ac = f(&a, &c, &al, w).unwrap().value;
                prop_assert!(ac <= ab + bc);
            }
        }
    }

    /// Zero distance is exactly equality of canonical forms, for both the
    /// best match and the canonical-form distance.
    #[test]
    fn zero_distance_is_canonical_equality(
        a in arb_tree(3, false),
        b in arb_tree(3, false),
    ) {
        let al = alphabet();
        let w = WeightScheme::Constant;
        let (m, k) = {
            let (ma, ka) = joint_completion_params(&a, &b);
            (ma, ka)
        };
        let same = left_regularize(&a, &al, k, m).unwrap()
            == left_regularize(&b, &al, k, m).unwrap();
        prop_assert_eq!(d_bm(&a, &b, &al, &w).unwrap().value == Value::from_integer(0), same);
        prop_assert_eq!(d_lr(&a, &b, &al, &w).unwrap().value == Value::from_integer(0), same);
    }
}
