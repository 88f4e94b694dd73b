//! The best-match distance: the minimum ordered distance over all pairs of
//! planar embeddings of two trees, and its lock-respecting variant.
//!
//! Both are computed by one recursion over positions of the completed
//! trees. At roots r1, r2 on level l the value is
//!
//! ```text
//! c(l) * d(label(r1), label(r2))
//!   + min over child permutations pi of sum_j BM(child_j(r1), child_pi(j)(r2))
//! ```
//!
//! with the child matrix of k*k subtree distances computed once per vertex
//! pair. When locks are respected and both current roots carry a lock mark,
//! only the identity correspondence is allowed, which is what makes the
//! lock-aware variant a semimetric rather than a metric: the triangle
//! inequality genuinely fails on locked inputs.
//!
//! There is deliberately no memoization. The recursion touches each pair of
//! same-level subtrees exactly once, so its running time follows the
//! g(m+1) = k^2 g(m) + O(k!) recurrence that the scaling harness in
//! [`crate::bench`] verifies empirically; a cache would change exactly the
//! behavior being measured.

use itertools::Itertools;

use crate::error::TreeError;
use crate::ordered::{DistanceReport, Metric};
use crate::tree::{
    complete, joint_completion_params, level_offset, CompletedTree, LabelAlphabet, LabeledTree,
    WeightScheme,
};
use crate::value::{zero, Value};

/// Minimum ordered distance over all embeddings of both trees. Lock marks
/// are ignored. Trees are completed internally to their joint level and
/// arity.
pub fn d_bm(
    t1: &LabeledTree,
    t2: &LabeledTree,
    alphabet: &LabelAlphabet,
    weights: &WeightScheme,
) -> Result<DistanceReport, TreeError> {
    best_match(t1, t2, alphabet, weights, false)
}

/// Lock-respecting best match: embeddings may only differ from the input
/// by swaps at unlocked vertices. Symmetric and zero exactly on
/// semi-equivalent pairs, but not a metric.
pub fn d_bm_star(
    t1: &LabeledTree,
    t2: &LabeledTree,
    alphabet: &LabelAlphabet,
    weights: &WeightScheme,
) -> Result<DistanceReport, TreeError> {
    best_match(t1, t2, alphabet, weights, true)
}

fn best_match(
    t1: &LabeledTree,
    t2: &LabeledTree,
    alphabet: &LabelAlphabet,
    weights: &WeightScheme,
    respect_locks: bool,
) -> Result<DistanceReport, TreeError> {
    let (m, k) = joint_completion_params(t1, t2);
    let c1 = complete(t1, m, k)?;
    let c2 = complete(t2, m, k)?;
    let value = best_match_completed(&c1, &c2, alphabet, weights, respect_locks)?;
    Ok(DistanceReport {
        metric: if respect_locks {
            Metric::BestMatchStar
        } else {
            Metric::BestMatch
        },
        value,
        completion_level: Some(m),
        arity: Some(k),
        weights: Some(weights.clone()),
        order: None,
        label_metric: Some(alphabet.metric_id().to_string()),
    })
}

/// The same minimum on already-completed trees of identical shape. Exposed
/// for callers that build positional trees directly.
pub fn best_match_completed(
    t1: &CompletedTree,
    t2: &CompletedTree,
    alphabet: &LabelAlphabet,
    weights: &WeightScheme,
    respect_locks: bool,
) -> Result<Value, TreeError> {
    crate::ordered::check_same_shape(t1, t2)?;
    let r1 = alphabet.resolve(t1)?;
    let r2 = alphabet.resolve(t2)?;
    let rec = Recursion {
        k: t1.arity(),
        m: t1.depth(),
        r1: &r1,
        r2: &r2,
        locks1: t1.locks(),
        locks2: t2.locks(),
        per_level: weights.per_level(t1.depth()),
        alphabet,
        respect_locks,
    };
    Ok(rec.subtree_distance(0, 0, 0))
}

/// The best-match value together with one correspondence achieving it,
/// returned as a reordering of the first tree's completion whose
/// positionwise distance to the second tree's completion equals the value.
///
/// Deterministic: at every vertex pair the child correspondences are tried
/// in lexicographic order starting from the identity, and the first
/// minimum wins, so ties keep the input child order.
pub fn best_match_witness(
    t1: &LabeledTree,
    t2: &LabeledTree,
    alphabet: &LabelAlphabet,
    weights: &WeightScheme,
    respect_locks: bool,
) -> Result<(Value, CompletedTree), TreeError> {
    let (m, k) = joint_completion_params(t1, t2);
    let c1 = complete(t1, m, k)?;
    let c2 = complete(t2, m, k)?;
    let r1 = alphabet.resolve(&c1)?;
    let r2 = alphabet.resolve(&c2)?;
    let rec = Recursion {
        k,
        m,
        r1: &r1,
        r2: &r2,
        locks1: c1.locks(),
        locks2: c2.locks(),
        per_level: weights.per_level(m),
        alphabet,
        respect_locks,
    };
    let mut placed = vec![0u16; r1.len()];
    let value = rec.fill_witness(0, 0, 0, &mut placed);
    let labels = placed
        .iter()
        .map(|&r| alphabet.label_of_rank(r).clone())
        .collect();
    let witness = CompletedTree::from_parts(k, m, labels, vec![false; r1.len()]);
    Ok((value, witness))
}

struct Recursion<'a> {
    k: usize,
    m: usize,
    r1: &'a [u16],
    r2: &'a [u16],
    locks1: &'a [bool],
    locks2: &'a [bool],
    per_level: Vec<Value>,
    alphabet: &'a LabelAlphabet,
    respect_locks: bool,
}

impl Recursion<'_> {
    /// Distance between the subtree at flat position p1 of the first tree
    /// and flat position p2 of the second, both rooted on `level`.
    fn subtree_distance(&self, level: usize, p1: usize, p2: usize) -> Value {
        let root_term = self.per_level[level] * self.alphabet.d_rank(self.r1[p1], self.r2[p2]);
        if level == self.m {
            return root_term;
        }
        let k = self.k;
        let base = level_offset(k, level + 1);
        let start = level_offset(k, level);
        let c1 = base + (p1 - start) * k;
        let c2 = base + (p2 - start) * k;

        if self.respect_locks && self.locks1[p1] && self.locks2[p2] {
            // Both roots locked: the child order on each side is fixed, so
            // only the identity correspondence remains.
            let mut sum = zero();
            for j in 0..k {
                sum += self.subtree_distance(level + 1, c1 + j, c2 + j);
            }
            return root_term + sum;
        }

        // All k^2 child subtree pairs, each computed once.
        let mut sub = vec![zero(); k * k];
        for i in 0..k {
            for j in 0..k {
                sub[i * k + j] = self.subtree_distance(level + 1, c1 + i, c2 + j);
            }
        }
        root_term + min_assignment(&sub, k)
    }

    /// Like `subtree_distance`, but records which first-tree vertex lands
    /// on each second-tree position by writing its label rank into `out`.
    fn fill_witness(&self, level: usize, p1: usize, p2: usize, out: &mut [u16]) -> Value {
        out[p2] = self.r1[p1];
        let root_term = self.per_level[level] * self.alphabet.d_rank(self.r1[p1], self.r2[p2]);
        if level == self.m {
            return root_term;
        }
        let k = self.k;
        let base = level_offset(k, level + 1);
        let start = level_offset(k, level);
        let c1 = base + (p1 - start) * k;
        let c2 = base + (p2 - start) * k;

        if self.respect_locks && self.locks1[p1] && self.locks2[p2] {
            let mut sum = root_term;
            for j in 0..k {
                sum += self.fill_witness(level + 1, c1 + j, c2 + j, out);
            }
            return sum;
        }

        let mut sub = vec![zero(); k * k];
        for i in 0..k {
            for j in 0..k {
                sub[i * k + j] = self.subtree_distance(level + 1, c1 + i, c2 + j);
            }
        }
        // Strict comparison keeps the first minimum, and the identity is
        // generated first, so ties preserve the input order. `pi` maps the
        // second tree's child slot j to the first tree's child pi[j].
        let mut best: Option<(Value, Vec<usize>)> = None;
        for pi in (0..k).permutations(k) {
            let total = pi
                .iter()
                .enumerate()
                .map(|(j, &i)| sub[i * k + j])
                .fold(zero(), |a, b| a + b);
            if best.as_ref().map_or(true, |(v, _)| total < *v) {
                best = Some((total, pi));
            }
        }
        let (total, pi) = best.expect("k >= 2, so there is at least one permutation");
        for (j, &i) in pi.iter().enumerate() {
            self.fill_witness(level + 1, c1 + i, c2 + j, out);
        }
        root_term + total
    }
}

/// Minimum over all k! child correspondences of the matrix of child
/// subtree distances.
fn min_assignment(sub: &[Value], k: usize) -> Value {
    if k == 2 {
        let keep = sub[0] + sub[3];
        let swap = sub[1] + sub[2];
        return keep.min(swap);
    }
    (0..k)
        .permutations(k)
        .map(|pi| {
            pi.iter()
                .enumerate()
                .map(|(i, &j)| sub[i * k + j])
                .fold(zero(), |a, b| a + b)
        })
        .min()
        .expect("k >= 2, so there is at least one permutation")
}

/// Whether one tree can be transformed into the other by child swaps,
/// ignoring lock marks; equivalently, whether their best-match distance
/// vanishes. The label metric cannot affect the answer, so the trivial one
/// is used.
pub fn equivalent(t1: &LabeledTree, t2: &LabeledTree) -> Result<bool, TreeError> {
    let alphabet = LabelAlphabet::inferred_from(&[t1, t2]).map_err(|_| TreeError::EmptyAlphabet)?;
    Ok(d_bm(t1, t2, &alphabet, &WeightScheme::Constant)?.value == zero())
}

/// Whether both trees reach a common plain tree using swaps at unlocked
/// vertices only; equivalently, whether the lock-respecting best match
/// vanishes.
pub fn semi_equivalent(t1: &LabeledTree, t2: &LabeledTree) -> Result<bool, TreeError> {
    let alphabet = LabelAlphabet::inferred_from(&[t1, t2]).map_err(|_| TreeError::EmptyAlphabet)?;
    Ok(d_bm_star(t1, t2, &alphabet, &WeightScheme::Constant)?.value == zero())
}
