//! Command-line surface. Every subcommand is a thin wrapper over the
//! library entry points, so the CLI can never disagree with the test
//! suite about a value.
//!
//! Exit codes: 0 on success, 1 on usage, parse, or validation errors,
//! 2 when `oracle-check` finds a counterexample. Incompatible but
//! harmless flag combinations (an order file for an order-free metric,
//! lock marks for a lock-ignoring one) warn on standard error and
//! proceed.

use std::ffi::OsString;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::builder::PossibleValue;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{derive_seed, run_scaling_with, ScalingOptions, ScalingRow, MIN_TRIALS};
use crate::best_match::{best_match_completed, best_match_witness, d_bm, d_bm_star};
use crate::error::TreeError;
use crate::left_regular::{left_regularize, left_regularize_traced};
use crate::oracle::{oracle_bm, EMBEDDING_DEPTH_CAP};
use crate::ordered::{d_ot, DistanceReport, Metric};
use crate::overlap::{d_bu, d_st};
use crate::tree::{
    complete, joint_completion_params, parse_tree, random_perfect_tree, random_tree, Label,
    LabelAlphabet, LabeledTree, WeightScheme,
};
use crate::value::{format_value, parse_value, value_to_f64, Value};

/// Entry point for the binary: parses `args` (including the program name)
/// and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests exit 0; everything else is a
            // usage error.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Dist(args) => args.config().and_then(|c| cmd_dist(&c)),
        Command::Matrix(args) => args.config().and_then(|c| cmd_matrix(&c, &args.dir)),
        Command::Regularize(args) => cmd_regularize(&args.config(), &args.tree, args.trace),
        Command::Complete(args) => cmd_complete(&args.config(), &args.tree),
        Command::Gen(args) => cmd_gen(args),
        Command::OracleCheck(args) => cmd_oracle_check(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}

type CliResult<T> = Result<T, String>;

/// Everything one invocation computed its settings from, assembled from
/// the command line before any work starts.
#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub metric: Option<Metric>,
    pub tree_paths: Vec<PathBuf>,
    pub order: Option<PathBuf>,
    pub label_metric: Option<PathBuf>,
    pub weights: WeightScheme,
    pub level: Option<usize>,
    pub arity: Option<usize>,
    pub output: Option<PathBuf>,
    pub float: bool,
    pub witness: bool,
}

#[derive(Parser)]
#[command(
    name = "treemetric",
    version,
    about = "Distances, semimetrics, and canonical forms for rooted labeled trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one distance between two tree files
    Dist(DistArgs),
    /// Pairwise distance matrix over every .tree file in a directory
    Matrix(MatrixArgs),
    /// Left-regularized canonical form of a tree
    Regularize(RegularizeArgs),
    /// Pad a tree to a perfect k-ary tree of a given depth
    Complete(CompleteArgs),
    /// Generate a random tree deterministically from a seed
    Gen(GenArgs),
    /// Cross-check the best-match recursion against brute-force enumeration
    OracleCheck(OracleCheckArgs),
    /// Measure how distance computations scale with depth
    Bench(BenchArgs),
}

impl ValueEnum for Metric {
    fn value_variants<'a>() -> &'a [Self] {
        &[
            Metric::Ordered,
            Metric::BestMatch,
            Metric::BestMatchStar,
            Metric::LeftRegular,
            Metric::BottomUp,
            Metric::Subtree,
        ]
    }

    fn to_possible_value(&self) -> Option<PossibleValue> {
        Some(PossibleValue::new(self.name()).help(match self {
            Metric::Ordered => "positionwise distance between completed trees",
            Metric::BestMatch => "minimum ordered distance over embeddings of both trees",
            Metric::BestMatchStar => "best match restricted by lock marks (semimetric)",
            Metric::LeftRegular => "ordered distance between canonical forms",
            Metric::BottomUp => "1 - f/max(n1,n2) with f the largest common forest",
            Metric::Subtree => "1 - f/max(n1,n2) with f the largest common subtree",
        }))
    }
}

#[derive(Args, Clone)]
struct AlphabetArgs {
    /// Label order file: one label per line, ascending; N is appended as
    /// the greatest element if absent
    #[arg(long, value_name = "FILE")]
    order: Option<PathBuf>,

    /// Label distance table as CSV with a label header row and column;
    /// unlisted pairs involving N default to 1
    #[arg(long, value_name = "FILE")]
    label_metric: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct CompletionArgs {
    /// Completion level (default: depth of the deepest input tree)
    #[arg(long, value_name = "M")]
    level: Option<usize>,

    /// Arity k (default: widest branching observed, at least 2)
    #[arg(long, value_name = "K")]
    arity: Option<usize>,
}

#[derive(Args)]
struct DistArgs {
    /// Which distance to compute
    #[arg(long, value_enum)]
    metric: Metric,

    /// First tree file
    tree1: PathBuf,
    /// Second tree file
    tree2: PathBuf,

    #[command(flatten)]
    alphabet: AlphabetArgs,
    #[command(flatten)]
    completion: CompletionArgs,

    /// Level weights: "constant" or "exp:BASE" with BASE a positive
    /// integer, fraction, or decimal
    #[arg(long, value_name = "SCHEME")]
    weights: Option<String>,

    /// Print the value as a decimal instead of an exact fraction
    #[arg(long)]
    float: bool,

    /// Also print one optimal reordering of the first tree (bm and
    /// bmstar only)
    #[arg(long)]
    witness: bool,
}

impl DistArgs {
    fn config(&self) -> CliResult<RunConfig> {
        Ok(RunConfig {
            metric: Some(self.metric),
            tree_paths: vec![self.tree1.clone(), self.tree2.clone()],
            order: self.alphabet.order.clone(),
            label_metric: self.alphabet.label_metric.clone(),
            weights: parse_weights(self.weights.as_deref())?,
            level: self.completion.level,
            arity: self.completion.arity,
            output: None,
            float: self.float,
            witness: self.witness,
        })
    }
}

#[derive(Args)]
struct MatrixArgs {
    /// Which distance to compute
    #[arg(long, value_enum)]
    metric: Metric,

    /// Directory containing at least two .tree files
    dir: PathBuf,

    #[command(flatten)]
    alphabet: AlphabetArgs,
    #[command(flatten)]
    completion: CompletionArgs,

    /// Level weights: "constant" or "exp:BASE"
    #[arg(long, value_name = "SCHEME")]
    weights: Option<String>,

    /// Print values as decimals instead of exact fractions
    #[arg(long)]
    float: bool,

    /// Write the CSV here instead of standard output
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

impl MatrixArgs {
    fn config(&self) -> CliResult<RunConfig> {
        Ok(RunConfig {
            metric: Some(self.metric),
            tree_paths: Vec::new(),
            order: self.alphabet.order.clone(),
            label_metric: self.alphabet.label_metric.clone(),
            weights: parse_weights(self.weights.as_deref())?,
            level: self.completion.level,
            arity: self.completion.arity,
            output: self.output.clone(),
            float: self.float,
            witness: false,
        })
    }
}

#[derive(Args)]
struct RegularizeArgs {
    /// Tree file to canonicalize
    tree: PathBuf,

    /// Label order file; default is ascending label text with N greatest
    #[arg(long, value_name = "FILE")]
    order: Option<PathBuf>,

    #[command(flatten)]
    completion: CompletionArgs,

    /// Print the label string after each level pass
    #[arg(long)]
    trace: bool,
}

impl RegularizeArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            order: self.order.clone(),
            level: self.completion.level,
            arity: self.completion.arity,
            ..RunConfig::default()
        }
    }
}

#[derive(Args)]
struct CompleteArgs {
    /// Tree file to pad
    tree: PathBuf,

    #[command(flatten)]
    completion: CompletionArgs,
}

impl CompleteArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            level: self.completion.level,
            arity: self.completion.arity,
            ..RunConfig::default()
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// RNG seed; equal seeds give identical trees
    #[arg(long)]
    seed: u64,

    /// Maximum depth (exact depth with --perfect)
    #[arg(long)]
    depth: usize,

    /// Arity
    #[arg(long, default_value_t = 2)]
    arity: usize,

    /// Comma-separated labels to draw from; their order matters for
    /// reproducibility
    #[arg(long, default_value = "X,Y,Z")]
    labels: String,

    /// Probability that an internal vertex is locked
    #[arg(long, default_value_t = 0.0, value_name = "P")]
    lock_prob: f64,

    /// Keep every position down to the given depth (perfect k-ary tree)
    #[arg(long)]
    perfect: bool,

    /// Write the tree here instead of standard output
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleCheckArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of random pairs to test
    #[arg(long, default_value_t = 100)]
    trials: usize,

    /// Maximum generated depth; enumeration caps at 4
    #[arg(long, default_value_t = 3)]
    max_depth: usize,

    /// Arity of generated trees; enumeration supports 2 and 3
    #[arg(long, default_value_t = 2)]
    arity: usize,

    /// Also generate lock marks and check the lock-respecting variant
    #[arg(long)]
    locks: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// bm, bmstar, or lr
    #[arg(long, value_enum)]
    metric: Metric,

    /// Inclusive depth range, e.g. 4..8
    #[arg(long, value_name = "A..B")]
    depths: String,

    #[arg(long, default_value_t = 2)]
    arity: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Timed runs per depth
    #[arg(long, default_value_t = MIN_TRIALS)]
    trials: usize,

    /// Give every vertex the same label, the worst case for comparisons
    /// that normally stop at the first difference
    #[arg(long)]
    adversarial: bool,

    /// Lock probability for generated vertices (default: 0.5 for bmstar,
    /// 0 otherwise)
    #[arg(long, value_name = "P")]
    lock_prob: Option<f64>,

    /// Write the CSV here instead of standard output
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// Subcommand implementations

pub fn cmd_dist(config: &RunConfig) -> CliResult<i32> {
    let metric = config.metric.expect("dist always selects a metric");
    let t1 = parse_tree_file(&config.tree_paths[0])?;
    let t2 = parse_tree_file(&config.tree_paths[1])?;
    let alphabet = load_alphabet(config, &[&t1, &t2])?;
    warn_incompatible(
        config,
        &[
            (config.tree_paths[0].as_path(), &t1),
            (config.tree_paths[1].as_path(), &t2),
        ],
    );
    let report = compute_report(
        metric,
        &t1,
        &t2,
        &alphabet,
        &config.weights,
        config.level,
        config.arity,
    )
    .map_err(|e| e.to_string())?;
    print_report(&report, config.float);
    if config.witness && matches!(metric, Metric::BestMatch | Metric::BestMatchStar) {
        let (_, witness) = best_match_witness(
            &t1,
            &t2,
            &alphabet,
            &config.weights,
            metric.respects_locks(),
        )
        .map_err(|e| e.to_string())?;
        println!("  witness: {}", witness.to_text());
    }
    Ok(0)
}

pub fn cmd_matrix(config: &RunConfig, dir: &Path) -> CliResult<i32> {
    let metric = config.metric.expect("matrix always selects a metric");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "tree"))
        .collect();
    files.sort();
    if files.len() < 2 {
        return Err(format!(
            "{}: need at least two .tree files, found {}",
            dir.display(),
            files.len()
        ));
    }
    let mut names = Vec::new();
    let mut trees = Vec::new();
    for path in &files {
        names.push(
            path.file_name()
                .expect("listed entries have names")
                .to_string_lossy()
                .into_owned(),
        );
        trees.push(parse_tree_file(path)?);
    }
    let refs: Vec<&LabeledTree> = trees.iter().collect();
    let alphabet = load_alphabet(config, &refs)?;
    let named: Vec<(&Path, &LabeledTree)> = files
        .iter()
        .map(PathBuf::as_path)
        .zip(trees.iter())
        .collect();
    warn_incompatible(config, &named);

    // One shared completion shape across the whole matrix, so every cell
    // uses the same parameters.
    let level = config
        .level
        .unwrap_or_else(|| trees.iter().map(LabeledTree::depth).max().unwrap_or(0));
    let arity = config.arity.unwrap_or_else(|| {
        trees
            .iter()
            .map(LabeledTree::max_branching)
            .max()
            .unwrap_or(0)
            .max(2)
    });

    let n = trees.len();
    let mut cells = vec![vec![crate::value::zero(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let value = compute_report(
                metric,
                &trees[i],
                &trees[j],
                &alphabet,
                &config.weights,
                Some(level),
                Some(arity),
            )
            .map_err(|e| format!("{} vs {}: {e}", names[i], names[j]))?
            .value;
            cells[i][j] = value;
            cells[j][i] = value;
        }
    }

    let mut out = String::new();
    for name in &names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for i in 0..n {
        out.push_str(&names[i]);
        for j in 0..n {
            out.push(',');
            out.push_str(&render_value(&cells[i][j], config.float));
        }
        out.push('\n');
    }
    write_output(&config.output, &out)?;
    Ok(0)
}

pub fn cmd_regularize(config: &RunConfig, path: &Path, trace: bool) -> CliResult<i32> {
    let tree = parse_tree_file(path)?;
    let alphabet = load_alphabet(config, &[&tree])?;
    if tree.has_locks() {
        eprintln!(
            "warning: lock marks in {} are ignored by regularization",
            path.display()
        );
    }
    let m = config.level.unwrap_or_else(|| tree.depth());
    let k = config.arity.unwrap_or_else(|| tree.max_branching().max(2));
    let canonical = if trace {
        let (canonical, steps) =
            left_regularize_traced(&tree, &alphabet, k, m).map_err(|e| e.to_string())?;
        for snapshot in &steps.levels {
            println!(
                "after level {} pass: {}",
                snapshot.level,
                snapshot.label_text()
            );
        }
        canonical
    } else {
        left_regularize(&tree, &alphabet, k, m).map_err(|e| e.to_string())?
    };
    println!("{}", canonical.to_text());
    println!("labels: {}", canonical.label_text());
    println!("order: {}", alphabet.order_description());
    Ok(0)
}

pub fn cmd_complete(config: &RunConfig, path: &Path) -> CliResult<i32> {
    let tree = parse_tree_file(path)?;
    let m = config.level.unwrap_or_else(|| tree.depth());
    let k = config.arity.unwrap_or_else(|| tree.max_branching().max(2));
    let completed = complete(&tree, m, k).map_err(|e| e.to_string())?;
    println!("{}", completed.to_text());
    println!("labels: {}", completed.label_text());
    Ok(0)
}

fn cmd_gen(args: &GenArgs) -> CliResult<i32> {
    let labels = args
        .labels
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Label::new(s).ok_or_else(|| format!("bad label {s:?}")))
        .collect::<CliResult<Vec<_>>>()?;
    let alphabet = LabelAlphabet::new(labels).map_err(|e| e.to_string())?;
    let tree = if args.perfect {
        random_perfect_tree(args.seed, args.depth, args.arity, &alphabet, args.lock_prob)
    } else {
        random_tree(args.seed, args.depth, args.arity, &alphabet, args.lock_prob)
    }
    .map_err(|e| e.to_string())?;
    write_output(&args.output, &format!("{}\n", tree.to_text()))?;
    Ok(0)
}

fn cmd_oracle_check(args: &OracleCheckArgs) -> CliResult<i32> {
    if args.max_depth > EMBEDDING_DEPTH_CAP {
        return Err(format!(
            "--max-depth {} exceeds the enumeration cap {EMBEDDING_DEPTH_CAP}",
            args.max_depth
        ));
    }
    let alphabet = LabelAlphabet::from_order_text("X\nY\nZ").expect("fixed alphabet is valid");
    let weights = WeightScheme::Constant;
    let lock_probability = if args.locks { 0.4 } else { 0.0 };
    let variants: &[bool] = if args.locks { &[false, true] } else { &[false] };
    for trial in 0..args.trials {
        let t1 = random_tree(
            derive_seed(args.seed, trial, 0),
            args.max_depth,
            args.arity,
            &alphabet,
            lock_probability,
        )
        .map_err(|e| e.to_string())?;
        let t2 = random_tree(
            derive_seed(args.seed, trial, 1),
            args.max_depth,
            args.arity,
            &alphabet,
            lock_probability,
        )
        .map_err(|e| e.to_string())?;
        for &respect_locks in variants {
            let fast = if respect_locks {
                d_bm_star(&t1, &t2, &alphabet, &weights)
            } else {
                d_bm(&t1, &t2, &alphabet, &weights)
            }
            .map_err(|e| e.to_string())?
            .value;
            let slow = oracle_bm(&t1, &t2, &alphabet, &weights, respect_locks)
                .map_err(|e| e.to_string())?;
            if fast != slow {
                let variant = if respect_locks { "bmstar" } else { "bm" };
                println!("counterexample at trial {trial} ({variant}):");
                println!("  tree 1: {}", t1.to_text());
                println!("  tree 2: {}", t2.to_text());
                println!(
                    "  recursion: {}, enumeration: {}",
                    format_value(&fast),
                    format_value(&slow)
                );
                return Ok(2);
            }
        }
    }
    println!("{} trials, recursion and enumeration agree", args.trials);
    Ok(0)
}

fn cmd_bench(args: &BenchArgs) -> CliResult<i32> {
    let depths = parse_depths(&args.depths)?;
    let options = ScalingOptions {
        metric: args.metric,
        depths,
        arity: args.arity,
        seed: args.seed,
        trials: args.trials,
        adversarial_labels: args.adversarial,
        lock_probability: args.lock_prob.unwrap_or(if args.metric.respects_locks() {
            0.5
        } else {
            0.0
        }),
    };
    let rows = run_scaling_with(&options).map_err(|e| e.to_string())?;
    let mut out = String::from(ScalingRow::CSV_HEADER);
    out.push('\n');
    for row in &rows {
        out.push_str(&row.csv_row());
        out.push('\n');
    }
    write_output(&args.output, &out)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// Shared plumbing

/// Computes one distance through the same library entry points the test
/// suite uses. `level` and `arity` override the joint completion
/// parameters for the completion-based distances; the common-structure
/// baselines ignore them.
fn compute_report(
    metric: Metric,
    t1: &LabeledTree,
    t2: &LabeledTree,
    alphabet: &LabelAlphabet,
    weights: &WeightScheme,
    level: Option<usize>,
    arity: Option<usize>,
) -> Result<DistanceReport, TreeError> {
    match metric {
        Metric::BottomUp => return d_bu(t1, t2),
        Metric::Subtree => return d_st(t1, t2),
        _ => {}
    }
    let (jm, jk) = joint_completion_params(t1, t2);
    let m = level.unwrap_or(jm);
    let k = arity.unwrap_or(jk);
    match metric {
        Metric::Ordered => {
            let c1 = complete(t1, m, k)?;
            let c2 = complete(t2, m, k)?;
            d_ot(&c1, &c2, alphabet, weights)
        }
        Metric::BestMatch | Metric::BestMatchStar => {
            let c1 = complete(t1, m, k)?;
            let c2 = complete(t2, m, k)?;
            let value = best_match_completed(&c1, &c2, alphabet, weights, metric.respects_locks())?;
            Ok(DistanceReport {
                metric,
                value,
                completion_level: Some(m),
                arity: Some(k),
                weights: Some(weights.clone()),
                order: None,
                label_metric: Some(alphabet.metric_id().to_string()),
            })
        }
        Metric::LeftRegular => {
            let f1 = left_regularize(t1, alphabet, k, m)?;
            let f2 = left_regularize(t2, alphabet, k, m)?;
            let mut report = d_ot(&f1, &f2, alphabet, weights)?;
            report.metric = Metric::LeftRegular;
            report.order = Some(alphabet.order_description());
            Ok(report)
        }
        Metric::BottomUp | Metric::Subtree => unreachable!("handled above"),
    }
}

fn print_report(report: &DistanceReport, float: bool) {
    println!("{} = {}", report.metric, render_value(&report.value, float));
    if let Some(m) = report.completion_level {
        println!("  completion level: {m}");
    }
    if let Some(k) = report.arity {
        println!("  arity: {k}");
    }
    if let Some(w) = &report.weights {
        println!("  weights: {}", w.describe());
    }
    if let Some(order) = &report.order {
        println!("  order: {order}");
    }
    if let Some(id) = &report.label_metric {
        println!("  label metric: {id}");
    }
}

fn render_value(v: &Value, float: bool) -> String {
    if float {
        value_to_f64(v).to_string()
    } else {
        format_value(v)
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_tree_file(path: &Path) -> CliResult<LabeledTree> {
    parse_tree(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(target: &Option<PathBuf>, content: &str) -> CliResult<()> {
    match target {
        Some(path) => fs::write(path, content).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_alphabet(config: &RunConfig, trees: &[&LabeledTree]) -> CliResult<LabelAlphabet> {
    let base = match &config.order {
        Some(path) => LabelAlphabet::from_order_text(&read_file(path)?)
            .map_err(|e| format!("{}: {e}", path.display()))?,
        None => LabelAlphabet::inferred_from(trees).map_err(|e| e.to_string())?,
    };
    match &config.label_metric {
        Some(path) => base
            .with_metric_csv(&read_file(path)?)
            .map_err(|e| format!("{}: {e}", path.display())),
        None => Ok(base),
    }
}

fn warn_incompatible(config: &RunConfig, trees: &[(&Path, &LabeledTree)]) {
    let Some(metric) = config.metric else { return };
    if !metric.respects_locks() {
        for (path, tree) in trees {
            if tree.has_locks() {
                eprintln!(
                    "warning: lock marks in {} are ignored by metric {metric}",
                    path.display()
                );
            }
        }
    }
    if config.order.is_some() && !metric.order_sensitive() {
        eprintln!("warning: --order does not affect metric {metric}");
    }
    if matches!(metric, Metric::BottomUp | Metric::Subtree) {
        if config.level.is_some() || config.arity.is_some() {
            eprintln!("warning: --level and --arity do not affect metric {metric}");
        }
        if !matches!(config.weights, WeightScheme::Constant) {
            eprintln!("warning: --weights does not affect metric {metric}");
        }
    }
    if config.witness && !matches!(metric, Metric::BestMatch | Metric::BestMatchStar) {
        eprintln!("warning: --witness applies only to bm and bmstar");
    }
}

fn parse_weights(spec: Option<&str>) -> CliResult<WeightScheme> {
    match spec {
        None | Some("constant") => Ok(WeightScheme::Constant),
        Some(s) => match s.strip_prefix("exp:") {
            Some(rest) => {
                let base = parse_value(rest).ok_or_else(|| {
                    format!("bad weight base {rest:?}; expected an integer, fraction, or decimal")
                })?;
                WeightScheme::exponential(base)
                    .ok_or_else(|| format!("weight base must be positive, got {rest}"))
            }
            None => Err(format!(
                "unknown weight scheme {s:?}; use \"constant\" or \"exp:BASE\""
            )),
        },
    }
}

/// Parses an inclusive depth range: `4..8` (or `4..=8`) measures depths
/// 4 through 8.
fn parse_depths(spec: &str) -> CliResult<RangeInclusive<usize>> {
    let normalized = spec.replace("..=", "..");
    let (a, b) = normalized
        .split_once("..")
        .ok_or_else(|| format!("bad depth range {spec:?}; expected A..B"))?;
    let lo: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad depth range {spec:?}; expected A..B"))?;
    let hi: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("bad depth range {spec:?}; expected A..B"))?;
    Ok(lo..=hi)
}
