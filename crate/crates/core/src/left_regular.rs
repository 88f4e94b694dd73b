//! Left-regularization: the canonical planar embedding of an unordered
//! tree, and the distance defined through it.
//!
//! The canonical form completes the tree, then walks levels m-1 down to 0
//! and sorts every vertex's child subtrees ascending by their label
//! strings (breadth-first label sequences compared under the total order).
//! Two trees are transformable into each other by swaps exactly when their
//! canonical forms coincide, so the ordered distance between canonical
//! forms is a metric on equivalence classes. It is an upper bound for the
//! best-match distance and much cheaper: subtree comparisons stop at the
//! first differing position, which on random labels usually means after
//! one vertex.
//!
//! The value depends on the chosen total order, which is why
//! [`DistanceReport`] records it.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::error::TreeError;
use crate::ordered::{ot_ranks, DistanceReport, Metric};
use crate::tree::{
    check_completion_params, joint_completion_params, label_text, CompletedTree, Label,
    LabelAlphabet, LabeledTree, Vertex, WeightScheme,
};

/// Lexicographic comparison of two equal-length label sequences under the
/// alphabet's total order: the first differing position decides.
pub fn lex_compare(
    s1: &[Label],
    s2: &[Label],
    alphabet: &LabelAlphabet,
) -> Result<Ordering, TreeError> {
    if s1.len() != s2.len() {
        return Err(TreeError::LengthMismatch(s1.len(), s2.len()));
    }
    for (a, b) in s1.iter().zip(s2) {
        match alphabet.rank(a)?.cmp(&alphabet.rank(b)?) {
            Ordering::Equal => continue,
            decided => return Ok(decided),
        }
    }
    Ok(Ordering::Equal)
}

/// The canonical form's label string after each level pass, outermost last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularizationTrace {
    pub levels: Vec<LevelSnapshot>,
}

/// Breadth-first labels of the whole tree right after the children of
/// every vertex on `level` were sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSnapshot {
    pub level: usize,
    pub labels: Vec<Label>,
}

impl LevelSnapshot {
    pub fn label_text(&self) -> String {
        label_text(&self.labels)
    }
}

/// Completes `tree` to a perfect k-ary tree of depth m and sorts every
/// vertex's child subtrees ascending by label string. Lock marks are
/// ignored and absent from the result; the canonical form exists only for
/// fully unordered trees.
pub fn left_regularize(
    tree: &LabeledTree,
    alphabet: &LabelAlphabet,
    k: usize,
    m: usize,
) -> Result<CompletedTree, TreeError> {
    let ranks = regularize_to_ranks(tree, alphabet, k, m, None)?;
    Ok(ranks_to_completed(&ranks, alphabet, k, m))
}

/// [`left_regularize`] plus the label string recorded after each level
/// pass, for step-by-step inspection.
pub fn left_regularize_traced(
    tree: &LabeledTree,
    alphabet: &LabelAlphabet,
    k: usize,
    m: usize,
) -> Result<(CompletedTree, RegularizationTrace), TreeError> {
    let mut raw = Vec::new();
    let ranks = regularize_to_ranks(tree, alphabet, k, m, Some(&mut raw))?;
    let levels = raw
        .into_iter()
        .map(|(level, ranks)| LevelSnapshot {
            level,
            labels: ranks
                .iter()
                .map(|&r| alphabet.label_of_rank(r).clone())
                .collect(),
        })
        .collect();
    Ok((
        ranks_to_completed(&ranks, alphabet, k, m),
        RegularizationTrace { levels },
    ))
}

/// Ordered distance between the left-regularized forms of the two trees,
/// completed to their joint level and arity.
pub fn d_lr(
    t1: &LabeledTree,
    t2: &LabeledTree,
    alphabet: &LabelAlphabet,
    weights: &WeightScheme,
) -> Result<DistanceReport, TreeError> {
    let (m, k) = joint_completion_params(t1, t2);
    let r1 = regularize_to_ranks(t1, alphabet, k, m, None)?;
    let r2 = regularize_to_ranks(t2, alphabet, k, m, None)?;
    let value = ot_ranks(k, m, &r1, &r2, alphabet, weights);
    Ok(DistanceReport {
        metric: Metric::LeftRegular,
        value,
        completion_level: Some(m),
        arity: Some(k),
        weights: Some(weights.clone()),
        order: Some(alphabet.order_description()),
        label_metric: Some(alphabet.metric_id().to_string()),
    })
}

// ---------------------------------------------------------------------------

/// Completed tree in pointer form for cheap subtree reordering: every
/// internal node has exactly k children, and a swap moves one pointer.
struct RegNode {
    rank: u16,
    children: Vec<RegNode>,
}

fn regularize_to_ranks(
    tree: &LabeledTree,
    alphabet: &LabelAlphabet,
    k: usize,
    m: usize,
    mut trace: Option<&mut Vec<(usize, Vec<u16>)>>,
) -> Result<Vec<u16>, TreeError> {
    let n = check_completion_params(tree, m, k)?;
    let null_rank = alphabet.rank(&Label::null())?;

    fn build(
        v: Option<&Vertex>,
        level: usize,
        m: usize,
        k: usize,
        alphabet: &LabelAlphabet,
        null_rank: u16,
    ) -> Result<RegNode, TreeError> {
        let rank = match v {
            Some(v) => alphabet.rank(v.label())?,
            None => null_rank,
        };
        let children = if level < m {
            (0..k)
                .map(|j| {
                    build(
                        v.and_then(|v| v.children().get(j)),
                        level + 1,
                        m,
                        k,
                        alphabet,
                        null_rank,
                    )
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            Vec::new()
        };
        Ok(RegNode { rank, children })
    }

    let mut root = build(Some(tree.root()), 0, m, k, alphabet, null_rank)?;

    // Sort children level by level from the bottom. When a vertex on level
    // l is processed, its children's subtrees are already canonical, so
    // the sorted result is canonical too. The sort is stable: equal label
    // strings keep their relative order.
    for level in (0..m).rev() {
        sort_children_at_level(&mut root, 0, level);
        if let Some(trace) = trace.as_deref_mut() {
            let mut ranks = Vec::with_capacity(n);
            linearize(&root, &mut ranks);
            trace.push((level, ranks));
        }
    }

    let mut ranks = Vec::with_capacity(n);
    linearize(&root, &mut ranks);
    Ok(ranks)
}

fn sort_children_at_level(node: &mut RegNode, current: usize, target: usize) {
    if current == target {
        node.children.sort_by(compare_subtrees);
        return;
    }
    for child in &mut node.children {
        sort_children_at_level(child, current + 1, target);
    }
}

/// Label-string comparison of two perfect subtrees of the same depth,
/// walking both in breadth-first lockstep and stopping at the first
/// differing rank.
fn compare_subtrees(a: &RegNode, b: &RegNode) -> Ordering {
    let mut queue: VecDeque<(&RegNode, &RegNode)> = VecDeque::new();
    queue.push_back((a, b));
    while let Some((x, y)) = queue.pop_front() {
        match x.rank.cmp(&y.rank) {
            Ordering::Equal => {}
            decided => return decided,
        }
        queue.extend(x.children.iter().zip(y.children.iter()));
    }
    Ordering::Equal
}

fn linearize(root: &RegNode, out: &mut Vec<u16>) {
    let mut queue: VecDeque<&RegNode> = VecDeque::new();
    queue.push_back(root);
    while let Some(node) = queue.pop_front() {
        out.push(node.rank);
        queue.extend(node.children.iter());
    }
}

fn ranks_to_completed(
    ranks: &[u16],
    alphabet: &LabelAlphabet,
    k: usize,
    m: usize,
) -> CompletedTree {
    let labels = ranks
        .iter()
        .map(|&r| alphabet.label_of_rank(r).clone())
        .collect();
    CompletedTree::from_parts(k, m, labels, vec![false; ranks.len()])
}
