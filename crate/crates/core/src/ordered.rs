//! The ordered tree distance: a weighted sum of label distances over
//! positionally corresponding vertices of two completed trees with the same
//! shape. Every other distance in this crate reduces to it.

use std::fmt;

use crate::error::TreeError;
use crate::tree::{level_offset, pow_usize, CompletedTree, LabelAlphabet, WeightScheme};
use crate::value::{self, Value};

/// One of the distances this crate computes. The short names double as CLI
/// tokens and CSV fields.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Metric {
    /// Positionwise distance between completed trees of the same shape.
    Ordered,
    /// Minimum ordered distance over all planar embeddings of both trees.
    BestMatch,
    /// Best match restricted by lock marks; a semimetric.
    BestMatchStar,
    /// Ordered distance between left-regularized canonical forms.
    LeftRegular,
    /// 1 - f/max(n1,n2) with f the largest common forest.
    BottomUp,
    /// 1 - f/max(n1,n2) with f the largest common subtree.
    Subtree,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Ordered => "ot",
            Metric::BestMatch => "bm",
            Metric::BestMatchStar => "bmstar",
            Metric::LeftRegular => "lr",
            Metric::BottomUp => "bu",
            Metric::Subtree => "st",
        }
    }

    /// Whether lock marks influence the value. Every other metric ignores
    /// them.
    pub fn respects_locks(self) -> bool {
        matches!(self, Metric::BestMatchStar)
    }

    /// Whether the value depends on the total order on labels.
    pub fn order_sensitive(self) -> bool {
        matches!(self, Metric::LeftRegular)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A computed distance together with everything that determined it.
///
/// Completion level, arity, and weights apply to the completion-based
/// distances and are `None` for the common-structure baselines, which work
/// on raw vertex counts. The total order is recorded only when it can
/// change the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub metric: Metric,
    pub value: Value,
    pub completion_level: Option<usize>,
    pub arity: Option<usize>,
    pub weights: Option<WeightScheme>,
    pub order: Option<String>,
    pub label_metric: Option<String>,
}

impl DistanceReport {
    pub fn value_text(&self) -> String {
        value::format_value(&self.value)
    }

    pub fn value_f64(&self) -> f64 {
        value::value_to_f64(&self.value)
    }
}

impl fmt::Display for DistanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.metric, self.value_text())
    }
}

/// The ordered tree distance between two completed trees of identical
/// arity and depth: sum over positions p of c(depth(p)) * d(l1(p), l2(p)).
///
/// Zero exactly when the label strings agree. Lock marks are ignored.
pub fn d_ot(
    t1: &CompletedTree,
    t2: &CompletedTree,
    alphabet: &LabelAlphabet,
    weights: &WeightScheme,
) -> Result<DistanceReport, TreeError> {
    check_same_shape(t1, t2)?;
    let r1 = alphabet.resolve(t1)?;
    let r2 = alphabet.resolve(t2)?;
    let value = ot_ranks(t1.arity(), t1.depth(), &r1, &r2, alphabet, weights);
    Ok(DistanceReport {
        metric: Metric::Ordered,
        value,
        completion_level: Some(t1.depth()),
        arity: Some(t1.arity()),
        weights: Some(weights.clone()),
        order: None,
        label_metric: Some(alphabet.metric_id().to_string()),
    })
}

pub(crate) fn check_same_shape(t1: &CompletedTree, t2: &CompletedTree) -> Result<(), TreeError> {
    if t1.arity() != t2.arity() || t1.depth() != t2.depth() {
        return Err(TreeError::ShapeMismatch {
            k1: t1.arity(),
            m1: t1.depth(),
            k2: t2.arity(),
            m2: t2.depth(),
        });
    }
    Ok(())
}

/// Core sum over resolved label ranks. Shared by the ordered, best-match,
/// and left-regular entry points so no distance takes a divergent path.
pub(crate) fn ot_ranks(
    k: usize,
    m: usize,
    r1: &[u16],
    r2: &[u16],
    alphabet: &LabelAlphabet,
    weights: &WeightScheme,
) -> Value {
    let per_level = weights.per_level(m);
    let mut total = value::zero();
    for level in 0..=m {
        let start = level_offset(k, level);
        let end = start + pow_usize(k, level);
        let w = per_level[level];
        for p in start..end {
            if r1[p] != r2[p] {
                total += w * alphabet.d_rank(r1[p], r2[p]);
            }
        }
    }
    total
}
