//! Tree data model: labels, the label alphabet (total order plus label
//! metric), rooted labeled trees with optional lock marks, level-m
//! completion to perfect k-ary shape, label strings, subtree swaps, and
//! seeded random generation.
//!
//! All values are immutable after construction. Transformations return new
//! trees, so values can be shared and sent across threads freely.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlphabetError, ParseError, TreeError};
use crate::value::{self, Value};

/// The reserved null label used for vertices added by completion.
pub const NULL_LABEL: &str = "N";

/// Hard cap on tree arity. Best-match distances enumerate all k!
/// child correspondences per vertex, so arity is kept small.
pub const MAX_ARITY: usize = 8;

/// Upper bound on completed-tree size; completion refuses to allocate more
/// vertices than this.
pub const COMPLETION_GUARD: usize = 1 << 22;

const MAX_ALPHABET: usize = 256;

// ---------------------------------------------------------------------------
// Labels

/// A vertex label: a nonempty token over `[A-Za-z0-9_]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Label(String);

impl Label {
    /// Returns `None` if the token is empty or contains a character outside
    /// `[A-Za-z0-9_]`.
    pub fn new(token: impl Into<String>) -> Option<Label> {
        let token = token.into();
        if token.is_empty() || !token.bytes().all(is_label_byte) {
            return None;
        }
        Some(Label(token))
    }

    /// The null label `N`.
    pub fn null() -> Label {
        Label(NULL_LABEL.to_string())
    }

    pub fn is_null(&self) -> bool {
        self.0 == NULL_LABEL
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_label_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

// ---------------------------------------------------------------------------
// Label alphabet: total order + label metric

/// The label universe: an ordered list of labels (ascending under the total
/// order, always including the null label `N`) together with a metric on
/// labels.
///
/// The metric is validated at construction: symmetric, zero exactly on the
/// diagonal, and satisfying the triangle inequality. The default metric is
/// trivial (1 between distinct labels).
#[derive(Clone, Debug)]
pub struct LabelAlphabet {
    members: Vec<Label>,
    rank_of: HashMap<String, u16>,
    metric: Vec<Value>,
    metric_id: String,
    null_rank: u16,
}

impl LabelAlphabet {
    /// Builds an alphabet whose total order is the given label order,
    /// ascending. `N` is appended as the greatest element if absent. The
    /// metric is trivial.
    pub fn new(ordered: Vec<Label>) -> Result<LabelAlphabet, AlphabetError> {
        let mut members = ordered;
        if !members.iter().any(Label::is_null) {
            members.push(Label::null());
        }
        if members.len() > MAX_ALPHABET {
            return Err(AlphabetError::TooLarge(members.len(), MAX_ALPHABET));
        }
        let mut rank_of = HashMap::new();
        for (i, label) in members.iter().enumerate() {
            if rank_of
                .insert(label.as_str().to_string(), i as u16)
                .is_some()
            {
                return Err(AlphabetError::Duplicate(label.as_str().to_string()));
            }
        }
        let null_rank = rank_of[NULL_LABEL];
        let metric = trivial_metric(members.len());
        Ok(LabelAlphabet {
            members,
            rank_of,
            metric,
            metric_id: "trivial".to_string(),
            null_rank,
        })
    }

    /// Parses an order file: one label per line, ascending under the total
    /// order. Blank lines and `#` comments are skipped.
    pub fn from_order_text(text: &str) -> Result<LabelAlphabet, AlphabetError> {
        let mut labels = Vec::new();
        for line in text.lines() {
            let token = line.trim();
            if token.is_empty() || token.starts_with('#') {
                continue;
            }
            let label =
                Label::new(token).ok_or_else(|| AlphabetError::BadLabel(token.to_string()))?;
            labels.push(label);
        }
        if labels.is_empty() {
            return Err(AlphabetError::Empty);
        }
        LabelAlphabet::new(labels)
    }

    /// Infers an alphabet from the labels occurring in the given trees,
    /// ordered ascending by token with `N` greatest. This is the default
    /// order when no order file is supplied.
    pub fn inferred_from(trees: &[&LabeledTree]) -> Result<LabelAlphabet, AlphabetError> {
        let mut tokens: Vec<&str> = trees
            .iter()
            .flat_map(|t| t.preorder())
            .map(|v| v.label().as_str())
            .filter(|s| *s != NULL_LABEL)
            .collect();
        tokens.sort_unstable();
        tokens.dedup();
        let labels = tokens
            .into_iter()
            .map(|t| Label::new(t).expect("labels in a tree are already validated"))
            .collect();
        LabelAlphabet::new(labels)
    }

    /// Replaces the metric with entries from a CSV table: first row and
    /// first column are labels, cell (a,b) = d(a,b). Every pair of non-null
    /// members must be covered; entries for `N` default to 1 against all
    /// other labels. The result is re-validated.
    pub fn with_metric_csv(self, text: &str) -> Result<LabelAlphabet, AlphabetError> {
        let mut rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = rows.next().ok_or(AlphabetError::Empty)?;
        let columns: Vec<&str> = header.split(',').skip(1).map(str::trim).collect();
        for token in &columns {
            if !self.rank_of.contains_key(*token) {
                return Err(AlphabetError::UnknownLabel(token.to_string()));
            }
        }
        let n = self.members.len();
        let mut seen = vec![false; n * n];
        let mut metric = trivial_metric(n);
        for row in rows {
            let mut cells = row.split(',').map(str::trim);
            let row_label = cells.next().unwrap_or("");
            let Some(&a) = self.rank_of.get(row_label) else {
                return Err(AlphabetError::UnknownLabel(row_label.to_string()));
            };
            let mut count = 0;
            for (token, cell) in columns.iter().zip(&mut cells) {
                let b = self.rank_of[*token];
                let v = value::parse_value(cell).ok_or_else(|| {
                    AlphabetError::BadEntry(
                        row_label.to_string(),
                        token.to_string(),
                        cell.to_string(),
                    )
                })?;
                metric[a as usize * n + b as usize] = v;
                seen[a as usize * n + b as usize] = true;
                count += 1;
            }
            if count != columns.len() {
                return Err(AlphabetError::MalformedTable(format!(
                    "row {row_label:?} has {count} cells, header has {}",
                    columns.len()
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if seen[a * n + b] || a == b {
                    continue;
                }
                // Unseen off-diagonal pairs are only acceptable against N,
                // where the trivial default of 1 applies.
                if a != self.null_rank as usize && b != self.null_rank as usize {
                    return Err(AlphabetError::MissingEntry(
                        self.members[a].as_str().to_string(),
                        self.members[b].as_str().to_string(),
                    ));
                }
            }
        }
        self.replace_metric(metric, "table".to_string())
    }

    /// Replaces the metric with explicit symmetric entries, validating the
    /// result. Pairs not listed keep the trivial default. Used for
    /// programmatic metrics (randomized testing, custom weights).
    pub fn with_metric_entries(
        self,
        entries: &[(Label, Label, Value)],
        metric_id: String,
    ) -> Result<LabelAlphabet, AlphabetError> {
        let n = self.members.len();
        let mut metric = trivial_metric(n);
        for (a, b, v) in entries {
            let ra = *self
                .rank_of
                .get(a.as_str())
                .ok_or_else(|| AlphabetError::UnknownLabel(a.as_str().to_string()))?
                as usize;
            let rb = *self
                .rank_of
                .get(b.as_str())
                .ok_or_else(|| AlphabetError::UnknownLabel(b.as_str().to_string()))?
                as usize;
            metric[ra * n + rb] = *v;
            metric[rb * n + ra] = *v;
        }
        self.replace_metric(metric, metric_id)
    }

    fn replace_metric(
        mut self,
        metric: Vec<Value>,
        metric_id: String,
    ) -> Result<LabelAlphabet, AlphabetError> {
        validate_metric(&self.members, &metric)?;
        self.metric = metric;
        self.metric_id = metric_id;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// All members, ascending under the total order. Includes `N`.
    pub fn labels(&self) -> &[Label] {
        &self.members
    }

    /// Members excluding `N`, the candidates for random generation.
    pub fn non_null_labels(&self) -> Vec<Label> {
        self.members
            .iter()
            .filter(|l| !l.is_null())
            .cloned()
            .collect()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.rank_of.contains_key(label.as_str())
    }

    /// Position in the ascending order; the comparison key for label and
    /// label-string comparisons.
    pub fn rank(&self, label: &Label) -> Result<u16, TreeError> {
        self.rank_of
            .get(label.as_str())
            .copied()
            .ok_or_else(|| TreeError::UnknownLabel(label.as_str().to_string()))
    }

    pub fn label_of_rank(&self, rank: u16) -> &Label {
        &self.members[rank as usize]
    }

    /// Compares two labels under the total order.
    pub fn cmp_labels(&self, a: &Label, b: &Label) -> Result<Ordering, TreeError> {
        Ok(self.rank(a)?.cmp(&self.rank(b)?))
    }

    /// The label metric d(a,b).
    pub fn d(&self, a: &Label, b: &Label) -> Result<Value, TreeError> {
        Ok(self.d_rank(self.rank(a)?, self.rank(b)?))
    }

    #[inline]
    pub(crate) fn d_rank(&self, a: u16, b: u16) -> Value {
        self.metric[a as usize * self.members.len() + b as usize]
    }

    /// Largest pairwise label distance; bounds the effect of a single label
    /// change at a vertex.
    pub fn diameter(&self) -> Value {
        self.metric
            .iter()
            .copied()
            .max()
            .unwrap_or_else(value::zero)
    }

    pub fn metric_id(&self) -> &str {
        &self.metric_id
    }

    /// Human-readable order, e.g. `Z<Y<X<N`.
    pub fn order_description(&self) -> String {
        self.members
            .iter()
            .map(Label::as_str)
            .collect::<Vec<_>>()
            .join("<")
    }

    pub(crate) fn resolve(&self, tree: &CompletedTree) -> Result<Vec<u16>, TreeError> {
        tree.labels.iter().map(|l| self.rank(l)).collect()
    }
}

fn trivial_metric(n: usize) -> Vec<Value> {
    let mut metric = vec![value::one(); n * n];
    for i in 0..n {
        metric[i * n + i] = value::zero();
    }
    metric
}

fn validate_metric(members: &[Label], metric: &[Value]) -> Result<(), AlphabetError> {
    let n = members.len();
    let name = |i: usize| members[i].as_str().to_string();
    for a in 0..n {
        if metric[a * n + a] != value::zero() {
            return Err(AlphabetError::NonzeroDiagonal(name(a)));
        }
        for b in (a + 1)..n {
            let ab = metric[a * n + b];
            if ab != metric[b * n + a] {
                return Err(AlphabetError::Asymmetric(name(a), name(b)));
            }
            if ab == value::zero() {
                return Err(AlphabetError::ZeroOffDiagonal(name(a), name(b)));
            }
            if !value::is_nonnegative(&ab) {
                return Err(AlphabetError::BadEntry(
                    name(a),
                    name(b),
                    value::format_value(&ab),
                ));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if metric[a * n + c] > metric[a * n + b] + metric[b * n + c] {
                    return Err(AlphabetError::TriangleViolation(name(a), name(b), name(c)));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Depth weights

/// The per-depth weight coefficient applied to label distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightScheme {
    /// c(depth) = 1.
    Constant,
    /// c(depth) = base^depth with base > 0; bases below 1 emphasize
    /// differences near the root.
    Exponential { base: Value },
}

impl WeightScheme {
    /// Returns `None` unless `base > 0`.
    pub fn exponential(base: Value) -> Option<WeightScheme> {
        if base > value::zero() {
            Some(WeightScheme::Exponential { base })
        } else {
            None
        }
    }

    pub fn weight(&self, depth: usize) -> Value {
        match self {
            WeightScheme::Constant => value::one(),
            WeightScheme::Exponential { base } => value::pow_value(base, depth),
        }
    }

    /// Weights for depths `0..=m`.
    pub(crate) fn per_level(&self, m: usize) -> Vec<Value> {
        (0..=m).map(|d| self.weight(d)).collect()
    }

    pub fn describe(&self) -> String {
        match self {
            WeightScheme::Constant => "constant".to_string(),
            WeightScheme::Exponential { base } => {
                format!("exp({})", value::format_value(base))
            }
        }
    }
}

impl Default for WeightScheme {
    fn default() -> Self {
        WeightScheme::Constant
    }
}

// ---------------------------------------------------------------------------
// Rooted labeled trees

/// One vertex of a [`LabeledTree`]: a label, an optional lock mark, and an
/// ordered child list.
///
/// A lock mark fixes the child order of this vertex under the swap
/// transformations; leaves are never locked.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Vertex {
    label: Label,
    locked: bool,
    children: Vec<Vertex>,
}

impl Vertex {
    pub fn label(&self) -> &Label {
        &self.label
    }

    pub fn locked(&self) -> bool {
        self.locked
    }

    pub fn children(&self) -> &[Vertex] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Vertex count of the subtree rooted here.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Vertex::size).sum::<usize>()
    }

    fn depth(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    fn max_branching(&self) -> usize {
        self.children
            .iter()
            .map(Vertex::max_branching)
            .max()
            .unwrap_or(0)
            .max(self.children.len())
    }

    fn write_text(&self, out: &mut String) {
        out.push_str(self.label.as_str());
        if self.locked {
            out.push('*');
        }
        if !self.children.is_empty() {
            out.push('(');
            for (i, child) in self.children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                child.write_text(out);
            }
            out.push(')');
        }
    }
}

/// A rooted tree where every vertex carries a label and internal vertices
/// may carry a lock mark.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabeledTree {
    root: Vertex,
}

impl LabeledTree {
    pub fn root(&self) -> &Vertex {
        &self.root
    }

    /// Depth of the deepest vertex; a single vertex has depth 0.
    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    pub fn vertex_count(&self) -> usize {
        self.root.size()
    }

    pub fn max_branching(&self) -> usize {
        self.root.max_branching()
    }

    pub fn has_locks(&self) -> bool {
        self.preorder().any(|v| v.locked)
    }

    /// Preorder traversal (a vertex before its children, children left to
    /// right). Preorder indices identify vertices in
    /// [`crate::overlap::CommonStructureResult`].
    pub fn preorder(&self) -> impl Iterator<Item = &Vertex> {
        let mut stack = vec![&self.root];
        std::iter::from_fn(move || {
            let v = stack.pop()?;
            for child in v.children.iter().rev() {
                stack.push(child);
            }
            Some(v)
        })
    }

    /// Preorder traversal paired with root-to-vertex paths (sequences of
    /// child indices). Paths address vertices in [`Self::swap_children`]
    /// and [`Self::relabel`].
    pub fn preorder_paths(&self) -> Vec<(Vec<usize>, &Vertex)> {
        let mut out = Vec::with_capacity(self.vertex_count());
        let mut stack = vec![(Vec::new(), &self.root)];
        while let Some((path, v)) = stack.pop() {
            for (i, child) in v.children.iter().enumerate().rev() {
                let mut p = path.clone();
                p.push(i);
                stack.push((p, child));
            }
            out.push((path, v));
        }
        out
    }

    fn vertex_mut(&mut self, path: &[usize]) -> Result<&mut Vertex, TreeError> {
        let mut v = &mut self.root;
        for &i in path {
            v = v
                .children
                .get_mut(i)
                .ok_or_else(|| TreeError::NoSuchVertex {
                    path: path.to_vec(),
                })?;
        }
        Ok(v)
    }

    /// Exchanges the i-th and j-th child subtrees of the vertex at `path`,
    /// labels and lock marks moving with them. Everything else is untouched.
    pub fn swap_children(
        &self,
        path: &[usize],
        i: usize,
        j: usize,
    ) -> Result<LabeledTree, TreeError> {
        let mut tree = self.clone();
        let v = tree.vertex_mut(path)?;
        let n = v.children.len();
        for index in [i, j] {
            if index >= n {
                return Err(TreeError::ChildIndexOutOfRange { index, children: n });
            }
        }
        v.children.swap(i, j);
        Ok(tree)
    }

    /// Returns a copy with the vertex at `path` relabeled.
    pub fn relabel(&self, path: &[usize], label: Label) -> Result<LabeledTree, TreeError> {
        let mut tree = self.clone();
        tree.vertex_mut(path)?.label = label;
        Ok(tree)
    }

    /// Serializes to the tree text format; `parse_tree` inverts this
    /// exactly. Trees containing `N` serialize fine but will not re-parse,
    /// since `N` is reserved in input.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.root.write_text(&mut out);
        out
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for LabeledTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tree(s)
    }
}

// ---------------------------------------------------------------------------
// Parsing

/// Parses the tree text format:
///
/// ```text
/// tree     := label lock? children?
/// lock     := '*'
/// children := '(' tree (',' tree)* ')'
/// label    := [A-Za-z0-9_]+
/// ```
///
/// Whitespace between tokens is ignored. The label `N` is reserved for
/// completion and rejected, as is a lock mark on a leaf.
pub fn parse_tree(text: &str) -> Result<LabeledTree, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(ParseError::Empty);
    }
    let root = p.vertex()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(ParseError::TrailingInput { position: p.pos });
    }
    Ok(LabeledTree { root })
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn vertex(&mut self) -> Result<Vertex, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b) if is_label_byte(b)) {
            self.pos += 1;
        }
        if self.pos == start {
            let found = self.peek().map(char::from).unwrap_or('\0');
            return if found == '\0' {
                Err(ParseError::Syntax {
                    position: start,
                    expected: "a label",
                })
            } else {
                Err(ParseError::BadLabel {
                    position: start,
                    found,
                })
            };
        }
        let token =
            std::str::from_utf8(&self.bytes[start..self.pos]).expect("label bytes are ascii");
        if token == NULL_LABEL {
            return Err(ParseError::ReservedLabel { position: start });
        }
        let label = Label(token.to_string());

        self.skip_ws();
        let mut locked = false;
        let mut lock_pos = 0;
        if self.peek() == Some(b'*') {
            locked = true;
            lock_pos = self.pos;
            self.pos += 1;
            self.skip_ws();
        }

        let mut children = Vec::new();
        if self.peek() == Some(b'(') {
            let open_pos = self.pos;
            self.pos += 1;
            loop {
                children.push(self.vertex()?);
                self.skip_ws();
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => {
                        return Err(ParseError::Syntax {
                            position: self.pos,
                            expected: "',' or ')'",
                        })
                    }
                }
            }
            if children.len() > MAX_ARITY {
                return Err(ParseError::TooManyChildren {
                    position: open_pos,
                    found: children.len(),
                    max: MAX_ARITY,
                });
            }
        }

        if locked && children.is_empty() {
            return Err(ParseError::LockOnLeaf { position: lock_pos });
        }
        Ok(Vertex {
            label,
            locked,
            children,
        })
    }
}

// ---------------------------------------------------------------------------
// Level-m completion

/// A perfect k-ary tree of depth m with positional vertex addressing:
/// level l holds k^l vertices, indexed left to right, stored in
/// breadth-first order.
///
/// Vertices added by completion carry the null label `N` and are never
/// locked.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CompletedTree {
    arity: usize,
    depth: usize,
    labels: Vec<Label>,
    locked: Vec<bool>,
}

impl CompletedTree {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Total vertex count, (k^(m+1) - 1) / (k - 1).
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Labels in breadth-first order (level by level, left to right).
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn locks(&self) -> &[bool] {
        &self.locked
    }

    fn flat(&self, level: usize, index: usize) -> Result<usize, TreeError> {
        if level > self.depth || index >= pow_usize(self.arity, level) {
            return Err(TreeError::NoSuchPosition { level, index });
        }
        Ok(level_offset(self.arity, level) + index)
    }

    pub fn label_at(&self, level: usize, index: usize) -> Result<&Label, TreeError> {
        Ok(&self.labels[self.flat(level, index)?])
    }

    pub fn locked_at(&self, level: usize, index: usize) -> Result<bool, TreeError> {
        Ok(self.locked[self.flat(level, index)?])
    }

    /// The label string as display text. Single-character labels are
    /// concatenated (`XYZNNYZ`); longer labels are space-separated.
    pub fn label_text(&self) -> String {
        label_text(&self.labels)
    }

    /// Exchanges the child subtrees at child positions i and j of the
    /// vertex at (level, index), block-swapping every deeper level.
    pub fn swap_children(
        &self,
        level: usize,
        index: usize,
        i: usize,
        j: usize,
    ) -> Result<CompletedTree, TreeError> {
        self.flat(level, index)?;
        if level >= self.depth {
            return Err(TreeError::ChildIndexOutOfRange {
                index: i.max(j),
                children: 0,
            });
        }
        let k = self.arity;
        for child in [i, j] {
            if child >= k {
                return Err(TreeError::ChildIndexOutOfRange {
                    index: child,
                    children: k,
                });
            }
        }
        let mut out = self.clone();
        if i == j {
            return Ok(out);
        }
        for lv in (level + 1)..=self.depth {
            let width = pow_usize(k, lv - level - 1);
            let base = level_offset(k, lv);
            let a = base + (index * k + i) * width;
            let b = base + (index * k + j) * width;
            for off in 0..width {
                out.labels.swap(a + off, b + off);
                out.locked.swap(a + off, b + off);
            }
        }
        Ok(out)
    }

    /// Labels of the subtree rooted at (level, index), in breadth-first
    /// order of that subtree.
    pub fn subtree_labels(&self, level: usize, index: usize) -> Result<Vec<Label>, TreeError> {
        self.flat(level, index)?;
        let k = self.arity;
        let mut out = Vec::new();
        for lv in level..=self.depth {
            let width = pow_usize(k, lv - level);
            let base = level_offset(k, lv) + index * width;
            out.extend_from_slice(&self.labels[base..base + width]);
        }
        Ok(out)
    }

    /// Internal constructor for modules that assemble positional trees
    /// directly; inputs are trusted to be consistent.
    pub(crate) fn from_parts(
        arity: usize,
        depth: usize,
        labels: Vec<Label>,
        locked: Vec<bool>,
    ) -> CompletedTree {
        debug_assert_eq!(labels.len(), locked.len());
        debug_assert_eq!(labels.len() as u128, completed_size(arity, depth));
        CompletedTree {
            arity,
            depth,
            labels,
            locked,
        }
    }

    /// Builds a perfect tree directly from a breadth-first label sequence.
    /// The length must be (k^(m+1) - 1) / (k - 1) for some m. All vertices
    /// are unlocked.
    pub fn from_labels(labels: Vec<Label>, arity: usize) -> Result<CompletedTree, TreeError> {
        check_arity(arity)?;
        let mut total = 0usize;
        let mut level_size = 1usize;
        let mut depth = 0usize;
        loop {
            total += level_size;
            if total == labels.len() {
                break;
            }
            if total > labels.len() {
                return Err(TreeError::NotPerfect {
                    count: labels.len(),
                    arity,
                });
            }
            level_size *= arity;
            depth += 1;
        }
        let locked = vec![false; labels.len()];
        Ok(CompletedTree {
            arity,
            depth,
            labels,
            locked,
        })
    }

    /// Builds a perfect tree from one-character-per-label text, e.g.
    /// `"ZSS"` for a 2-ary depth-1 tree.
    pub fn from_label_text(text: &str, arity: usize) -> Result<CompletedTree, TreeError> {
        let labels = text
            .chars()
            .map(|c| {
                Label::new(c.to_string()).ok_or_else(|| TreeError::UnknownLabel(c.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CompletedTree::from_labels(labels, arity)
    }

    /// Converts back to pointer form, keeping every vertex including the
    /// null-labeled ones. Lock marks are preserved.
    pub fn to_labeled_tree(&self) -> LabeledTree {
        fn build(t: &CompletedTree, level: usize, index: usize) -> Vertex {
            let flat = level_offset(t.arity, level) + index;
            let children = if level < t.depth {
                (0..t.arity)
                    .map(|j| build(t, level + 1, index * t.arity + j))
                    .collect()
            } else {
                Vec::new()
            };
            Vertex {
                label: t.labels[flat].clone(),
                locked: t.locked[flat],
                children,
            }
        }
        LabeledTree {
            root: build(self, 0, 0),
        }
    }

    /// Serializes to the tree text format (including `N` vertices).
    pub fn to_text(&self) -> String {
        self.to_labeled_tree().to_text()
    }
}

pub(crate) fn label_text(labels: &[Label]) -> String {
    if labels.iter().all(|l| l.as_str().len() == 1) {
        labels.iter().map(Label::as_str).collect()
    } else {
        labels
            .iter()
            .map(Label::as_str)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub(crate) fn check_arity(arity: usize) -> Result<(), TreeError> {
    if arity < 2 {
        return Err(TreeError::ArityTooSmall(arity));
    }
    if arity > MAX_ARITY {
        return Err(TreeError::ArityAboveCap {
            arity,
            max: MAX_ARITY,
        });
    }
    Ok(())
}

pub(crate) fn pow_usize(base: usize, exp: usize) -> usize {
    base.pow(exp as u32)
}

/// Flat index of the first vertex at `level` in breadth-first order:
/// (k^level - 1) / (k - 1).
pub(crate) fn level_offset(k: usize, level: usize) -> usize {
    (pow_usize(k, level) - 1) / (k - 1)
}

/// Vertex count of a perfect k-ary tree of depth m, as u128 to survive the
/// guard check before allocation.
fn completed_size(k: usize, m: usize) -> u128 {
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=m {
        total += level;
        level *= k as u128;
    }
    total
}

/// Validates completion parameters for `tree` and returns the resulting
/// vertex count. Shared by [`complete`] and the canonicalization pass.
pub(crate) fn check_completion_params(
    tree: &LabeledTree,
    m: usize,
    k: usize,
) -> Result<usize, TreeError> {
    check_arity(k)?;
    let depth = tree.depth();
    if m < depth {
        return Err(TreeError::LevelBelowDepth { level: m, depth });
    }
    let branching = tree.max_branching();
    if k < branching {
        return Err(TreeError::ArityBelowBranching {
            arity: k,
            observed: branching,
        });
    }
    let size = completed_size(k, m);
    if size > COMPLETION_GUARD as u128 {
        return Err(TreeError::CompletionTooLarge {
            level: m,
            arity: k,
            vertices: size,
            guard: COMPLETION_GUARD,
        });
    }
    Ok(size as usize)
}

/// Pads `tree` to a perfect k-ary tree of depth m. Original vertices keep
/// their labels, left-to-right child order, and lock marks; missing
/// children are appended on the right as null-labeled unlocked vertices.
pub fn complete(tree: &LabeledTree, m: usize, k: usize) -> Result<CompletedTree, TreeError> {
    let n = check_completion_params(tree, m, k)?;
    let mut labels = vec![Label::null(); n];
    let mut locked = vec![false; n];

    fn place(
        v: &Vertex,
        level: usize,
        index: usize,
        k: usize,
        m: usize,
        labels: &mut [Label],
        locked: &mut [bool],
    ) {
        let flat = level_offset(k, level) + index;
        labels[flat] = v.label.clone();
        locked[flat] = v.locked;
        for (j, child) in v.children.iter().enumerate() {
            place(child, level + 1, index * k + j, k, m, labels, locked);
        }
    }
    place(&tree.root, 0, 0, k, m, &mut labels, &mut locked);

    Ok(CompletedTree {
        arity: k,
        depth: m,
        labels,
        locked,
    })
}

/// Completion parameters shared by two trees: the smallest level and arity
/// that fit both. Arity never drops below 2.
pub fn joint_completion_params(t1: &LabeledTree, t2: &LabeledTree) -> (usize, usize) {
    let m = t1.depth().max(t2.depth());
    let k = t1.max_branching().max(t2.max_branching()).max(2);
    (m, k)
}

/// The breadth-first label sequence of a completed tree.
pub fn label_string(tree: &CompletedTree) -> Vec<Label> {
    tree.labels.to_vec()
}

// ---------------------------------------------------------------------------
// Random trees

/// Generates a random tree, deterministically for a fixed seed.
///
/// Distribution: every vertex draws a uniform label from the alphabet
/// (excluding `N`); below `max_depth`, each of the k potential children
/// exists independently with probability 1/2, except that the root is
/// forced to keep at least one child when `max_depth > 0`; each internal
/// vertex is locked with probability `lock_probability`.
///
/// Per vertex the draws happen in a fixed order (label, child flags,
/// forced-child index if needed, lock), then children are generated left
/// to right. This order is part of the determinism contract.
pub fn random_tree(
    seed: u64,
    max_depth: usize,
    k: usize,
    alphabet: &LabelAlphabet,
    lock_probability: f64,
) -> Result<LabeledTree, TreeError> {
    random_tree_impl(seed, max_depth, k, alphabet, lock_probability, false)
}

/// Like [`random_tree`], but every potential child exists, producing a
/// perfect k-ary tree of exactly `depth`. Completion of the result is a
/// no-op, which keeps benchmark vertex counts exact.
pub fn random_perfect_tree(
    seed: u64,
    depth: usize,
    k: usize,
    alphabet: &LabelAlphabet,
    lock_probability: f64,
) -> Result<LabeledTree, TreeError> {
    random_tree_impl(seed, depth, k, alphabet, lock_probability, true)
}

fn random_tree_impl(
    seed: u64,
    max_depth: usize,
    k: usize,
    alphabet: &LabelAlphabet,
    lock_probability: f64,
    perfect: bool,
) -> Result<LabeledTree, TreeError> {
    check_arity(k)?;
    let labels = alphabet.non_null_labels();
    if labels.is_empty() {
        return Err(TreeError::EmptyAlphabet);
    }
    let size = completed_size(k, max_depth);
    if size > COMPLETION_GUARD as u128 {
        return Err(TreeError::CompletionTooLarge {
            level: max_depth,
            arity: k,
            vertices: size,
            guard: COMPLETION_GUARD,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = lock_probability.clamp(0.0, 1.0);

    fn gen(
        rng: &mut ChaCha8Rng,
        depth_left: usize,
        k: usize,
        labels: &[Label],
        p: f64,
        perfect: bool,
        at_root: bool,
    ) -> Vertex {
        let label = labels[rng.gen_range(0..labels.len())].clone();
        let mut flags = vec![false; k];
        if depth_left > 0 {
            for flag in flags.iter_mut() {
                *flag = perfect || rng.gen_bool(0.5);
            }
            if at_root && flags.iter().all(|f| !f) {
                flags[rng.gen_range(0..k)] = true;
            }
        }
        let has_children = flags.iter().any(|f| *f);
        let locked = has_children && rng.gen_bool(p);
        let children = flags
            .into_iter()
            .filter(|f| *f)
            .map(|_| gen(rng, depth_left - 1, k, labels, p, perfect, false))
            .collect();
        Vertex {
            label,
            locked,
            children,
        }
    }

    let root = gen(&mut rng, max_depth, k, &labels, p, perfect, true);
    Ok(LabeledTree { root })
}

// ---------------------------------------------------------------------------
