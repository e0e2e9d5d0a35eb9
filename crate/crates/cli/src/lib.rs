//! The `tripconf` command line: argument parsing and the subcommands, kept
//! apart from `main` so tests can drive them in-process.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tripconf::generator::{
    generate_pair, perturb_leaf_swaps, random_binary_tree, GeneratorConfig, Shape,
};
use tripconf::{
    enumerate_bruteforce, enumerate_conflicts, parse_newick, parse_newick_with_taxa,
    serialize_newick, CollectingSink, ConflictTriple, Instrumentation, TaxonId, TaxonSet, Tree,
};

/// Trees above this many leaves are not checked against the cubic oracle
/// unless `--oracle` is given.
pub const ORACLE_LIMIT: usize = 300;

const DIFF_SAMPLE: usize = 10;

#[derive(Parser, Debug)]
#[command(
    name = "tripconf",
    version,
    about = "Enumerate the conflict triples of two rooted binary trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every triple resolved differently by the two trees.
    Conflicts(ConflictsArgs),
    /// Print the number of conflict triples.
    Count(CountArgs),
    /// Compare the fast enumerator with the brute-force oracle.
    Check(CheckArgs),
    /// Time the enumerator on generated tree pairs.
    Bench(BenchArgs),
    /// Print a generated tree, and optionally a perturbed copy.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
pub struct PairArgs {
    /// Newick file with the first tree.
    pub p: PathBuf,
    /// Newick file with the second tree, on the same taxa.
    pub q: PathBuf,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Tsv,
    Json,
}

#[derive(Args, Debug)]
pub struct ConflictsArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Sort the output lines.
    #[arg(long)]
    pub sorted: bool,
    /// Print a summary line to stderr.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long)]
    pub stats: bool,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// First tree; without files, pairs are generated.
    #[arg(requires = "q")]
    pub p: Option<PathBuf>,
    pub q: Option<PathBuf>,
    /// Run the oracle even on large trees.
    #[arg(long)]
    pub oracle: bool,
    /// Number of generated pairs.
    #[arg(long, default_value_t = 100)]
    pub pairs: u64,
    #[arg(long, default_value_t = 30)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Seed of the first generated pair; pair `i` uses `seed + i`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "uniform", value_parser = parse_shape)]
    pub shape: Shape,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Leaf counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1024")]
    pub n: Vec<usize>,
    /// Leaf-swap counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "4")]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instances per (n, k); instance `i` uses `seed + i`.
    #[arg(long, default_value_t = 1)]
    pub reps: u64,
    #[arg(long, default_value = "uniform", value_parser = parse_shape)]
    pub shape: Shape,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "uniform", value_parser = parse_shape)]
    pub shape: Shape,
    /// Also print a copy with this many leaf-label swaps.
    #[arg(long)]
    pub k: Option<usize>,
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    s.parse()
}

#[derive(Debug)]
pub enum Failure {
    Io(PathBuf, io::Error),
    Tree(Option<PathBuf>, tripconf::Error),
    Usage(String),
    Mismatch,
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        use tripconf::Error as E;
        match self {
            Failure::Mismatch => 1,
            Failure::Tree(_, E::TaxonMismatch(_) | E::NonBinary { .. }) => 3,
            Failure::Io(..) | Failure::Tree(..) | Failure::Usage(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Tree(Some(path), e) => write!(f, "{}: {e}", path.display()),
            Failure::Tree(None, e) => write!(f, "{e}"),
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Mismatch => f.write_str("fast enumerator and oracle disagree"),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (program name first) and runs the subcommand. Returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Conflicts(a) => conflicts(&a, out, err),
        Command::Count(a) => count(&a, out, err),
        Command::Check(a) => check(&a, out, err),
        Command::Bench(a) => bench(&a, out),
        Command::Gen(a) => gen(&a, out),
    };
    let result = result.and_then(|()| out.flush().map_err(|e| Failure::Io("<stdout>".into(), e)));
    match result {
        Ok(()) => 0,
        Err(Failure::Io(_, e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(f) => {
            if !matches!(f, Failure::Mismatch) {
                let _ = writeln!(err, "tripconf: {f}");
            }
            f.exit_code()
        }
    }
}

fn stdout_err(e: io::Error) -> Failure {
    Failure::Io("<stdout>".into(), e)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

/// Both trees, with taxon ids assigned from the first.
pub fn load_pair(p: &Path, q: &Path) -> Result<(Tree, Tree, TaxonSet), Failure> {
    let (p_text, q_text) = (read(p)?, read(q)?);
    let (pt, taxa) = parse_newick(&p_text).map_err(|e| Failure::Tree(Some(p.to_owned()), e))?;
    let qt =
        parse_newick_with_taxa(&q_text, &taxa).map_err(|e| Failure::Tree(Some(q.to_owned()), e))?;
    Ok((pt, qt, taxa))
}

/// Orders the names of a triple's taxa; lines compare equal across input order.
struct Labels<'a> {
    taxa: &'a TaxonSet,
    rank: Vec<u32>,
}

impl<'a> Labels<'a> {
    fn new(taxa: &'a TaxonSet) -> Self {
        let mut order: Vec<usize> = (0..taxa.len()).collect();
        order.sort_by(|&a, &b| taxa.names()[a].cmp(&taxa.names()[b]));
        let mut rank = vec![0; taxa.len()];
        for (r, &t) in order.iter().enumerate() {
            rank[t] = r as u32;
        }
        Self { taxa, rank }
    }

    fn names(&self, t: &ConflictTriple) -> [&'a str; 3] {
        let mut ids = t.taxa();
        ids.sort_by_key(|x| self.rank[x.index()]);
        ids.map(|x: TaxonId| self.taxa.name(x))
    }
}

fn stats_line(n: usize, stats: &Instrumentation) -> String {
    format!(
        "n={n}\td={}\tframes_opened={}\tnodes_touched={}",
        stats.triples_emitted, stats.frames_opened, stats.nodes_touched
    )
}

#[derive(Serialize)]
struct JsonStats {
    frames_opened: u64,
    equal_frames: u64,
    partition_frames: u64,
    nodes_touched: u64,
    max_root_conflicts: u64,
    budget_violations: u64,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    n: usize,
    d: u64,
    conflicts: Vec<[&'a str; 3]>,
    stats: JsonStats,
}

fn conflicts(a: &ConflictsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (p, q, taxa) = load_pair(&a.pair.p, &a.pair.q)?;
    let labels = Labels::new(&taxa);
    let tree_err = |e| Failure::Tree(None, e);

    let stats = if a.format == Format::Text && !a.sorted {
        // stream; a closed pipe only stops the printing
        let mut failed: Option<io::Error> = None;
        let mut sink = |t: ConflictTriple| {
            if failed.is_none() {
                let [x, y, z] = labels.names(&t);
                if let Err(e) = writeln!(out, "{x}\t{y}\t{z}") {
                    failed = Some(e);
                }
            }
        };
        let stats = enumerate_conflicts(&p, &q, &mut sink).map_err(tree_err)?;
        if let Some(e) = failed {
            return Err(stdout_err(e));
        }
        stats
    } else {
        let mut sink = CollectingSink::default();
        let stats = enumerate_conflicts(&p, &q, &mut sink).map_err(tree_err)?;
        let mut lines: Vec<[&str; 3]> = sink.triples.iter().map(|t| labels.names(t)).collect();
        if a.sorted {
            lines.sort_unstable();
        }
        match a.format {
            Format::Json => {
                let report = JsonReport {
                    n: p.num_leaves(),
                    d: stats.triples_emitted,
                    conflicts: lines,
                    stats: JsonStats {
                        frames_opened: stats.frames_opened,
                        equal_frames: stats.equal_frames,
                        partition_frames: stats.partition_frames,
                        nodes_touched: stats.nodes_touched,
                        max_root_conflicts: stats.max_root_conflicts,
                        budget_violations: stats.budget_violations,
                    },
                };
                serde_json::to_writer(&mut *out, &report).map_err(|e| stdout_err(e.into()))?;
                writeln!(out).map_err(stdout_err)?;
            }
            Format::Text | Format::Tsv => {
                if a.format == Format::Tsv {
                    writeln!(out, "taxon_1\ttaxon_2\ttaxon_3").map_err(stdout_err)?;
                }
                for [x, y, z] in lines {
                    writeln!(out, "{x}\t{y}\t{z}").map_err(stdout_err)?;
                }
            }
        }
        stats
    };
    if a.stats {
        let _ = writeln!(err, "{}", stats_line(p.num_leaves(), &stats));
    }
    Ok(())
}

fn count(a: &CountArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (p, q, _) = load_pair(&a.pair.p, &a.pair.q)?;
    let stats = enumerate_conflicts(&p, &q, &mut |_| {}).map_err(|e| Failure::Tree(None, e))?;
    writeln!(out, "{}", stats.triples_emitted).map_err(stdout_err)?;
    if a.stats {
        let _ = writeln!(err, "{}", stats_line(p.num_leaves(), &stats));
    }
    Ok(())
}

/// How the fast result of one pair compares with the reference.
#[derive(Debug, Default)]
pub struct Comparison {
    pub duplicates: Vec<ConflictTriple>,
    /// Reported by the reference only.
    pub missing: Vec<ConflictTriple>,
    /// Reported by the fast enumerator only.
    pub extra: Vec<ConflictTriple>,
    pub d: u64,
    pub oracle_used: bool,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.duplicates.is_empty() && self.missing.is_empty() && self.extra.is_empty()
    }
}

fn collect(p: &Tree, q: &Tree) -> Result<(BTreeSet<ConflictTriple>, Vec<ConflictTriple>), Failure> {
    let mut sink = CollectingSink::default();
    enumerate_conflicts(p, q, &mut sink).map_err(|e| Failure::Tree(None, e))?;
    let mut set = BTreeSet::new();
    let duplicates = sink
        .triples
        .into_iter()
        .filter(|&t| !set.insert(t))
        .collect();
    Ok((set, duplicates))
}

/// Compares the fast enumerator with the oracle, or, above
/// [`ORACLE_LIMIT`] leaves without `force_oracle`, with itself on the
/// swapped pair.
pub fn compare(p: &Tree, q: &Tree, force_oracle: bool) -> Result<Comparison, Failure> {
    let (fast, duplicates) = collect(p, q)?;
    let oracle_used = force_oracle || p.num_leaves() <= ORACLE_LIMIT;
    let reference = if oracle_used {
        enumerate_bruteforce(p, q).map_err(|e| Failure::Tree(None, e))?
    } else {
        collect(q, p)?.0
    };
    Ok(Comparison {
        duplicates,
        missing: reference.difference(&fast).copied().collect(),
        extra: fast.difference(&reference).copied().collect(),
        d: fast.len() as u64,
        oracle_used,
    })
}

fn report_diff(out: &mut dyn Write, what: &str, c: &Comparison, taxa: &TaxonSet) -> io::Result<()> {
    let labels = Labels::new(taxa);
    writeln!(
        out,
        "mismatch\t{what}\tmissing={}\textra={}\tduplicates={}",
        c.missing.len(),
        c.extra.len(),
        c.duplicates.len()
    )?;
    let kinds = [
        ("missing", &c.missing),
        ("extra", &c.extra),
        ("duplicate", &c.duplicates),
    ];
    for (kind, list) in kinds {
        for t in list.iter().take(DIFF_SAMPLE) {
            let [x, y, z] = labels.names(t);
            writeln!(out, "{kind}\t{x}\t{y}\t{z}")?;
        }
    }
    Ok(())
}

fn check(a: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let mut jobs: Vec<(String, Tree, Tree, TaxonSet)> = Vec::new();
    match (&a.p, &a.q) {
        (Some(p), Some(q)) => {
            let (pt, qt, taxa) = load_pair(p, q)?;
            jobs.push((format!("{} {}", p.display(), q.display()), pt, qt, taxa));
        }
        _ => {
            if a.n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            for i in 0..a.pairs {
                let cfg = GeneratorConfig::new(a.n, a.seed.wrapping_add(i), a.shape, a.k);
                let (p, q) = generate_pair(&cfg);
                let what = format!(
                    "seed={} n={} k={} shape={}",
                    cfg.seed, cfg.n, cfg.swaps, cfg.shape
                );
                jobs.push((what, p, q, TaxonSet::numbered(a.n)));
            }
        }
    }
    let (mut total, mut skipped, mut bad) = (0u64, 0u64, 0u64);
    for (what, p, q, taxa) in &jobs {
        let c = compare(p, q, a.oracle)?;
        total += c.d;
        skipped += u64::from(!c.oracle_used);
        if !c.agrees() {
            bad += 1;
            report_diff(out, what, &c, taxa).map_err(stdout_err)?;
        }
    }
    if skipped > 0 {
        let _ = writeln!(
            err,
            "tripconf: {skipped} pair(s) above {ORACLE_LIMIT} leaves checked for symmetry only; pass --oracle to force"
        );
    }
    if bad > 0 {
        let _ = writeln!(err, "tripconf: {bad} of {} pair(s) disagree", jobs.len());
        return Err(Failure::Mismatch);
    }
    writeln!(out, "ok\tpairs={}\tconflicts={total}", jobs.len()).map_err(stdout_err)
}

/// One benchmark instance.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub seed: u64,
    pub shape: Shape,
    pub n: usize,
    pub k: usize,
    pub d: u64,
    pub nodes_touched: u64,
    pub frames_opened: u64,
    pub wall_ms: f64,
}

impl BenchRow {
    pub fn ratio(&self) -> f64 {
        self.nodes_touched as f64 / (self.n as f64 + self.d as f64)
    }
}

pub fn bench_instance(cfg: &GeneratorConfig) -> BenchRow {
    let (p, q) = generate_pair(cfg);
    let start = Instant::now();
    let stats = enumerate_conflicts(&p, &q, &mut |_| {}).expect("generated trees share their taxa");
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    BenchRow {
        seed: cfg.seed,
        shape: cfg.shape,
        n: cfg.n,
        k: cfg.swaps,
        d: stats.triples_emitted,
        nodes_touched: stats.nodes_touched,
        frames_opened: stats.frames_opened,
        wall_ms,
    }
}

fn bench(a: &BenchArgs, out: &mut dyn Write) -> Outcome {
    if a.n.contains(&0) {
        return Err(Failure::Usage("--n values must be at least 1".into()));
    }
    writeln!(
        out,
        "seed\tshape\tn\tk\td\tnodes_touched\tframes_opened\twall_ms\tratio"
    )
    .map_err(stdout_err)?;
    for &n in &a.n {
        for &k in &a.k {
            for i in 0..a.reps {
                let r =
                    bench_instance(&GeneratorConfig::new(n, a.seed.wrapping_add(i), a.shape, k));
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}\t{:.4}",
                    r.seed,
                    r.shape,
                    r.n,
                    r.k,
                    r.d,
                    r.nodes_touched,
                    r.frames_opened,
                    r.wall_ms,
                    r.ratio()
                )
                .map_err(stdout_err)?;
                out.flush().map_err(stdout_err)?;
            }
        }
    }
    Ok(())
}

fn gen(a: &GenArgs, out: &mut dyn Write) -> Outcome {
    if a.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let taxa = TaxonSet::numbered(a.n);
    let p = random_binary_tree(&GeneratorConfig::new(a.n, a.seed, a.shape, 0));
    writeln!(out, "{}", serialize_newick(&p, &taxa)).map_err(stdout_err)?;
    if let Some(k) = a.k {
        let q = perturb_leaf_swaps(&p, k, a.seed);
        writeln!(out, "{}", serialize_newick(&q, &taxa)).map_err(stdout_err)?;
    }
    Ok(())
}
