//! Brute-force references that certify the fast paths on small trees.
//!
//! The embedding enumerator materializes every tree reachable by child
//! swaps, and the reference distance takes the plain minimum of the
//! ordered distance over the cross product of the two embedding sets. That
//! is the defining formula of the best-match distances with nothing
//! clever in between, which is the point: wherever the enumerations are
//! feasible, the recursion in [`crate::best_match`] must agree exactly.
//!
//! Deliberately not taken: enumerating embeddings of only one tree and
//! comparing against the other's canonical form. That shortcut changes
//! the semantics under lock marks, and the oracle stays maximally dumb.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::TreeError;
use crate::ordered::ot_ranks;
use crate::tree::{
    complete, joint_completion_params, CompletedTree, Label, LabelAlphabet, LabeledTree,
    WeightScheme,
};
use crate::value::{from_int, Value};

/// Default depth bound for enumeration; embedding counts grow as
/// 2^(internal vertices).
pub const EMBEDDING_DEPTH_CAP: usize = 4;

/// Every tree reachable from the input by child swaps, the input included,
/// each exactly once. With `respect_locks`, swaps happen at unlocked
/// vertices only and lock marks travel with their subtrees.
pub fn enumerate_embeddings(
    tree: &CompletedTree,
    respect_locks: bool,
) -> Result<Vec<CompletedTree>, TreeError> {
    enumerate_embeddings_capped(tree, respect_locks, EMBEDDING_DEPTH_CAP)
}

/// [`enumerate_embeddings`] with an explicit depth cap.
pub fn enumerate_embeddings_capped(
    tree: &CompletedTree,
    respect_locks: bool,
    cap: usize,
) -> Result<Vec<CompletedTree>, TreeError> {
    if tree.arity() > 3 {
        return Err(TreeError::ArityAboveEnumerationCap(tree.arity()));
    }
    if tree.depth() > cap {
        return Err(TreeError::DepthAboveEnumerationCap {
            depth: tree.depth(),
            cap,
        });
    }
    let k = tree.arity();
    let mut seen: HashSet<CompletedTree> = HashSet::new();
    let mut queue: Vec<CompletedTree> = vec![tree.clone()];
    seen.insert(tree.clone());
    let mut next = 0;
    while next < queue.len() {
        let current = queue[next].clone();
        next += 1;
        for level in 0..current.depth() {
            for index in 0..k.pow(level as u32) {
                if respect_locks && current.locked_at(level, index).expect("in range") {
                    continue;
                }
                for i in 0..k {
                    for j in (i + 1)..k {
                        let swapped = current.swap_children(level, index, i, j)?;
                        if seen.insert(swapped.clone()) {
                            queue.push(swapped);
                        }
                    }
                }
            }
        }
    }
    Ok(queue)
}

/// Reference best-match value: min over both embedding sets of the ordered
/// distance. Equals the recursive computation by definition; exponentially
/// slower.
pub fn oracle_bm(
    t1: &LabeledTree,
    t2: &LabeledTree,
    alphabet: &LabelAlphabet,
    weights: &WeightScheme,
    respect_locks: bool,
) -> Result<Value, TreeError> {
    let (m, k) = joint_completion_params(t1, t2);
    let c1 = complete(t1, m, k)?;
    let c2 = complete(t2, m, k)?;
    let e1 = enumerate_embeddings(&c1, respect_locks)?;
    let e2 = enumerate_embeddings(&c2, respect_locks)?;
    let r1: Vec<Vec<u16>> = e1
        .iter()
        .map(|t| alphabet.resolve(t))
        .collect::<Result<_, _>>()?;
    let r2: Vec<Vec<u16>> = e2
        .iter()
        .map(|t| alphabet.resolve(t))
        .collect::<Result<_, _>>()?;
    let mut best: Option<Value> = None;
    for a in &r1 {
        for b in &r2 {
            let d = ot_ranks(k, m, a, b, alphabet, weights);
            if best.map_or(true, |v| d < v) {
                best = Some(d);
            }
        }
    }
    Ok(best.expect("embedding sets contain at least the inputs"))
}

/// A randomized label metric that still satisfies the metric axioms:
/// uniform integer weights in 1..=4 on the complete graph over the
/// alphabet, closed under shortest paths. Keeps the alphabet's order.
pub fn random_label_metric(alphabet: &LabelAlphabet, seed: u64) -> LabelAlphabet {
    let labels: Vec<Label> = alphabet.labels().to_vec();
    let n = labels.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = vec![from_int(0); n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let weight = from_int(rng.gen_range(1..=4));
            w[i * n + j] = weight;
            w[j * n + i] = weight;
        }
    }
    for via in 0..n {
        for i in 0..n {
            for j in 0..n {
                let through = w[i * n + via] + w[via * n + j];
                if i != j && through < w[i * n + j] {
                    w[i * n + j] = through;
                }
            }
        }
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            entries.push((labels[i].clone(), labels[j].clone(), w[i * n + j]));
        }
    }
    alphabet
        .clone()
        .with_metric_entries(&entries, format!("random({seed})"))
        .expect("shortest-path closure of positive weights is a metric")
}
