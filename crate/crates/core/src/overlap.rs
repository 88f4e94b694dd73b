//! Common-substructure baselines: the largest common forest and the
//! largest common subtree of two trees, and the distances
//! 1 - f/max(n1,n2) built on them.
//!
//! "Subtree" always means a vertex together with all of its descendants.
//! Both measures treat trees as unordered (matching goes through
//! order-free canonical codes) and work on trees as given, without
//! completion: padding would distort both f and the vertex counts.
//!
//! The forest search is exact and meant for small inputs. It enumerates,
//! over vertices of the first tree in preorder, the choice between leaving
//! the vertex unmatched and matching its whole subtree to an isomorphic
//! unused subtree of the second tree, with memoization on (position,
//! used-vertex set). That is exponential in the worst case but instant at
//! the tree sizes the baselines exist for; anything larger is refused
//! rather than silently approximated.

use std::collections::HashMap;

use crate::error::TreeError;
use crate::ordered::{DistanceReport, Metric};
use crate::tree::{LabeledTree, Vertex};
use crate::value::Value;

/// Vertex-count guard for the exhaustive forest search; the used-vertex
/// set is a u64 bitmask.
pub const SEARCH_GUARD: usize = 64;

/// A matching of complete subtrees between two trees.
///
/// `matched_pairs` holds preorder indices (see
/// [`LabeledTree::preorder`]) of the matched subtree roots. The matched
/// subtrees are vertex-disjoint within each tree and pairwise isomorphic
/// as rooted unordered labeled trees; `f` is the total number of matched
/// vertices per side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonStructureResult {
    pub f: usize,
    pub matched_pairs: Vec<(usize, usize)>,
}

/// A string code equal for two trees exactly when they are isomorphic as
/// rooted unordered labeled trees: own label plus the sorted multiset of
/// child codes.
pub fn canonical_code(tree: &LabeledTree) -> String {
    vertex_code(tree.root())
}

fn vertex_code(v: &Vertex) -> String {
    if v.is_leaf() {
        return v.label().as_str().to_string();
    }
    let mut child_codes: Vec<String> = v.children().iter().map(vertex_code).collect();
    child_codes.sort_unstable();
    format!("{}({})", v.label(), child_codes.join(","))
}

/// Preorder-indexed view of one tree: subtree sizes and codes per vertex.
struct Indexed {
    n: usize,
    size: Vec<usize>,
    code: Vec<String>,
}

fn index_tree(tree: &LabeledTree) -> Indexed {
    let vertices: Vec<&Vertex> = tree.preorder().collect();
    let n = vertices.len();
    let size: Vec<usize> = vertices.iter().map(|v| v.size()).collect();
    let code: Vec<String> = vertices.iter().map(|v| vertex_code(v)).collect();
    Indexed { n, size, code }
}

/// Maximizes the total vertex count over collections of vertex-disjoint
/// complete subtrees of `t1` matched bijectively, by canonical code, to
/// vertex-disjoint complete subtrees of `t2`.
pub fn largest_common_forest(
    t1: &LabeledTree,
    t2: &LabeledTree,
) -> Result<CommonStructureResult, TreeError> {
    for tree in [t1, t2] {
        let n = tree.vertex_count();
        if n > SEARCH_GUARD {
            return Err(TreeError::SearchTooLarge {
                vertices: n,
                guard: SEARCH_GUARD,
            });
        }
    }
    let a = index_tree(t1);
    let b = index_tree(t2);

    // Subtrees are contiguous preorder ranges, so the used-vertex set of a
    // subtree of t2 rooted at j is a run of bits starting at j.
    let mask_of = |j: usize| -> u64 {
        let width = b.size[j];
        if width == 64 {
            u64::MAX
        } else {
            ((1u64 << width) - 1) << j
        }
    };
    let mut candidates: HashMap<&str, Vec<usize>> = HashMap::new();
    for j in 0..b.n {
        candidates.entry(b.code[j].as_str()).or_default().push(j);
    }

    struct Search<'a> {
        a: &'a Indexed,
        candidates: &'a HashMap<&'a str, Vec<usize>>,
        mask_of: &'a dyn Fn(usize) -> u64,
        memo: HashMap<(usize, u64), usize>,
    }

    impl Search<'_> {
        fn best(&mut self, i: usize, used: u64) -> usize {
            if i == self.a.n {
                return 0;
            }
            if let Some(&v) = self.memo.get(&(i, used)) {
                return v;
            }
            // Leave vertex i out of the matching; its descendants stay
            // individually available.
            let mut best = self.best(i + 1, used);
            if let Some(js) = self.candidates.get(self.a.code[i].as_str()) {
                for &j in js {
                    let mask = (self.mask_of)(j);
                    if mask & used == 0 {
                        let with = self.a.size[i] + self.best(i + self.a.size[i], used | mask);
                        best = best.max(with);
                    }
                }
            }
            self.memo.insert((i, used), best);
            best
        }
    }

    let mut search = Search {
        a: &a,
        candidates: &candidates,
        mask_of: &mask_of,
        memo: HashMap::new(),
    };
    let f = search.best(0, 0);

    // Replay the optimal decisions to produce one witness matching,
    // preferring a match over a skip for determinism.
    let mut matched_pairs = Vec::new();
    let mut i = 0;
    let mut used = 0u64;
    while i < a.n {
        let target = search.best(i, used);
        let mut advanced = false;
        if let Some(js) = candidates.get(a.code[i].as_str()) {
            for &j in js {
                let mask = mask_of(j);
                if mask & used == 0 && a.size[i] + search.best(i + a.size[i], used | mask) == target
                {
                    matched_pairs.push((i, j));
                    used |= mask;
                    i += a.size[i];
                    advanced = true;
                    break;
                }
            }
        }
        if !advanced {
            i += 1;
        }
    }
    debug_assert_eq!(
        matched_pairs.iter().map(|&(i, _)| a.size[i]).sum::<usize>(),
        f
    );

    Ok(CommonStructureResult { f, matched_pairs })
}

/// The single largest pair of isomorphic complete subtrees; f = 0 when the
/// trees share nothing, not even a leaf label.
pub fn largest_common_subtree(
    t1: &LabeledTree,
    t2: &LabeledTree,
) -> Result<CommonStructureResult, TreeError> {
    let a = index_tree(t1);
    let b = index_tree(t2);
    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..a.n {
        for j in 0..b.n {
            if a.code[i] == b.code[j] {
                let candidate = (a.size[i], i, j);
                if best.map_or(true, |(f, bi, bj)| {
                    candidate.0 > f || (candidate.0 == f && (i, j) < (bi, bj))
                }) {
                    best = Some(candidate);
                }
            }
        }
    }
    Ok(match best {
        Some((f, i, j)) => CommonStructureResult {
            f,
            matched_pairs: vec![(i, j)],
        },
        None => CommonStructureResult {
            f: 0,
            matched_pairs: Vec::new(),
        },
    })
}

/// 1 - f/max(n1,n2) with f the largest common forest size.
pub fn d_bu(t1: &LabeledTree, t2: &LabeledTree) -> Result<DistanceReport, TreeError> {
    let f = largest_common_forest(t1, t2)?.f;
    Ok(normalized_report(Metric::BottomUp, f, t1, t2))
}

/// 1 - f/max(n1,n2) with f the largest common subtree size.
pub fn d_st(t1: &LabeledTree, t2: &LabeledTree) -> Result<DistanceReport, TreeError> {
    let f = largest_common_subtree(t1, t2)?.f;
    Ok(normalized_report(Metric::Subtree, f, t1, t2))
}

fn normalized_report(
    metric: Metric,
    f: usize,
    t1: &LabeledTree,
    t2: &LabeledTree,
) -> DistanceReport {
    let n = t1.vertex_count().max(t2.vertex_count());
    DistanceReport {
        metric,
        value: Value::new((n - f) as i128, n as i128),
        completion_level: None,
        arity: None,
        weights: None,
        order: None,
        label_metric: None,
    }
}
