//! Command-line front end: validation, component building and export,
//! congruence decisions, class enumeration, the tensor-to-quasi-tensor
//! graph rewrite, and the quotient sweep.
//!
//! Exit codes compose in scripts: 0 = yes / success, 1 = no / violations /
//! counterexample, 2 = input error, 3 = resource cap exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qckit::cache::{ComponentCache, PairCache};
use qckit::congruence::{self, QuotientOutcome};
use qckit::graphs::{self, ComponentGraph, DEFAULT_VERTEX_CAP};
use qckit::transform;
use qckit::{Error, ProductMode, QuasiCrystal, Word};

const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qckit",
    version,
    about = "Quasi-crystal toolkit: word crystals, plactic and hypoplactic congruences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Which base quasi-crystal to work over.
#[derive(Clone, Debug)]
enum BaseSpec {
    A(usize),
    C(usize),
    File(PathBuf),
}

impl FromStr for BaseSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| format!("expected A:<n>, C:<n>, or file:<path>, got {s:?}"))?;
        match kind {
            "A" | "a" => rest
                .parse()
                .map(BaseSpec::A)
                .map_err(|_| format!("bad rank in {s:?}")),
            "C" | "c" => rest
                .parse()
                .map(BaseSpec::C)
                .map_err(|_| format!("bad rank in {s:?}")),
            "file" => Ok(BaseSpec::File(PathBuf::from(rest))),
            _ => Err(format!("unknown base kind {kind:?}")),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Tensor,
    Qtensor,
}

impl From<Mode> for ProductMode {
    fn from(m: Mode) -> ProductMode {
        match m {
            Mode::Tensor => ProductMode::Tensor,
            Mode::Qtensor => ProductMode::QuasiTensor,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Base quasi-crystal: A:<n>, C:<n>, or file:<path> (JSON schema)
    #[arg(long)]
    base: BaseSpec,
    /// Cap on vertices per component construction
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    vertex_cap: usize,
}

#[derive(Args)]
struct CacheArgs {
    /// Cache directory (ignored when QCK_CACHE_DIR is set, which wins)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Disable the persistent cache for this invocation
    #[arg(long)]
    no_cache: bool,
}

impl CacheArgs {
    fn dir(&self) -> Option<PathBuf> {
        if self.no_cache {
            return None;
        }
        if let Ok(env) = std::env::var("QCK_CACHE_DIR") {
            return Some(PathBuf::from(env));
        }
        Some(
            self.cache_dir
                .clone()
                .unwrap_or_else(|| std::env::temp_dir().join("qckit-cache")),
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the seminormality axioms of the base; exit 0 iff none fail
    Validate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Build the component of a word and print it (text, DOT, or JSON)
    Component {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Mode::Tensor)]
        mode: Mode,
        /// Word literal, e.g. "1 2 -2" (or "122" over single-digit alphabets)
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Decide whether two words are congruent; exit 0 = yes, 1 = no
    Decide {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Mode::Tensor)]
        mode: Mode,
        #[command(flatten)]
        cache: CacheArgs,
        /// First word literal
        #[arg(allow_hyphen_values = true)]
        u: String,
        /// Second word literal
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Partition all words up to a length bound into congruence classes
    Enumerate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Mode::Tensor)]
        mode: Mode,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Rewrite the tensor component of a word into its quasi-tensor form
    Transform {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Check that tensor congruence implies quasi-tensor congruence up to a
    /// length bound; prints HOLDS or the first counterexample pair
    Quotient {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        max_len: usize,
        #[command(flatten)]
        cache: CacheArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::CapExceeded { .. } => ExitCode::from(EXIT_CAP),
                _ => ExitCode::from(EXIT_INPUT),
            }
        }
    }
}

fn load_base(spec: &BaseSpec) -> Result<QuasiCrystal, Error> {
    match spec {
        BaseSpec::A(n) => QuasiCrystal::standard_a(*n),
        BaseSpec::C(n) => QuasiCrystal::standard_c(*n),
        BaseSpec::File(path) => {
            let text = std::fs::read_to_string(path)?;
            QuasiCrystal::from_json(&text)
        }
    }
}

/// Like [`load_base`] but without the axiom gate, for `validate`.
fn load_base_unvalidated(spec: &BaseSpec) -> Result<QuasiCrystal, Error> {
    match spec {
        BaseSpec::A(n) => QuasiCrystal::standard_a(*n),
        BaseSpec::C(n) => QuasiCrystal::standard_c(*n),
        BaseSpec::File(path) => {
            let text = std::fs::read_to_string(path)?;
            QuasiCrystal::parse_json(&text)
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Validate { common, output } => cmd_validate(&common, output),
        Command::Component {
            common,
            mode,
            word,
            output,
            cache,
        } => cmd_component(&common, mode.into(), &word, output, &cache),
        Command::Decide {
            common,
            mode,
            cache,
            u,
            v,
        } => cmd_decide(&common, mode.into(), &cache, &u, &v),
        Command::Enumerate {
            common,
            mode,
            max_len,
            output,
        } => cmd_enumerate(&common, mode.into(), max_len, output),
        Command::Transform {
            common,
            word,
            output,
        } => cmd_transform(&common, &word, output),
        Command::Quotient {
            common,
            max_len,
            cache,
        } => cmd_quotient(&common, max_len, &cache),
    }
}

fn cmd_validate(common: &CommonArgs, output: Output) -> Result<u8, Error> {
    let base = load_base_unvalidated(&common.base)?;
    let report = base.validate_seminormal();
    match output {
        Output::Text => {
            if report.is_empty() {
                println!(
                    "valid: {} ({} elements, seminormal quasi-crystal)",
                    base.label(),
                    base.len()
                );
            } else {
                for v in &report.violations {
                    println!(
                        "violation: condition={} element={} index={}: {}",
                        v.condition, v.element, v.index, v.detail
                    );
                }
            }
        }
        Output::Json => {
            let doc = serde_json::json!({
                "base": base.label(),
                "valid": report.is_empty(),
                "violations": report.violations,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Output::Dot => {
            return Err(Error::Parse("validate has no DOT output".into()));
        }
    }
    Ok(if report.is_empty() { EXIT_OK } else { EXIT_NO })
}

fn graph_text(base: &QuasiCrystal, g: &ComponentGraph, heading: &str) -> String {
    let mut out = String::new();
    let quoted = |w: &Word| format!("\"{}\"", w.display(base));
    let _ = writeln!(
        out,
        "{heading} mode={} root={}: {} vertices, {} edges, {} loops",
        g.mode(),
        quoted(g.root()),
        g.vertex_count(),
        g.edge_count(),
        g.loop_count()
    );
    let order = g.sorted_vertex_ids();
    for &v in &order {
        let vd = &g.vertices()[v];
        let mut eps = String::new();
        let mut phi = String::new();
        for (i, (e, p)) in g.index_set().iter().zip(&vd.stats) {
            let _ = write!(eps, "{}{i}:{e}", if eps.is_empty() { "" } else { " " });
            let _ = write!(phi, "{}{i}:{p}", if phi.is_empty() { "" } else { " " });
        }
        let _ = writeln!(
            out,
            "vertex {} wt={} eps={{{eps}}} phi={{{phi}}}",
            quoted(&vd.word),
            vd.weight
        );
    }
    let place: std::collections::HashMap<usize, usize> =
        order.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut edges: Vec<(usize, usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (place[&e.from], e.label, place[&e.to]))
        .collect();
    edges.sort_unstable();
    for (from, label, to) in edges {
        let _ = writeln!(
            out,
            "edge {} -{label}-> {}",
            quoted(&g.vertices()[order[from]].word),
            quoted(&g.vertices()[order[to]].word)
        );
    }
    let mut loops: Vec<(usize, usize)> = g.loops().iter().map(|&(v, l)| (place[&v], l)).collect();
    loops.sort_unstable();
    for (v, label) in loops {
        let _ = writeln!(out, "loop {} label {label}", quoted(&g.vertices()[order[v]].word));
    }
    out
}

fn print_graph(base: &QuasiCrystal, g: &ComponentGraph, output: Output, heading: &str) {
    match output {
        Output::Text => print!("{}", graph_text(base, g, heading)),
        Output::Dot => print!("{}", graphs::export_dot(base, g)),
        Output::Json => print!("{}", graphs::export_json(base, g)),
    }
}

fn cmd_component(
    common: &CommonArgs,
    mode: ProductMode,
    word: &str,
    output: Output,
    cache: &CacheArgs,
) -> Result<u8, Error> {
    let base = load_base(&common.base)?;
    let word = Word::parse(&base, word)?;
    let store = cache.dir().and_then(|dir| match ComponentCache::open(&dir) {
        Ok(c) => Some(c),
        Err(err) => {
            eprintln!("warning: cache at {} unavailable: {err}", dir.display());
            None
        }
    });
    let graph = match store.as_ref().and_then(|c| c.lookup(&base, mode, &word)) {
        Some(hit) => hit,
        None => {
            let g = graphs::component(mode, &base, &word, common.vertex_cap)?;
            if let Some(c) = &store {
                if let Err(err) = c.store(&base, mode, &g) {
                    eprintln!("warning: could not write cache entry: {err}");
                }
            }
            g
        }
    };
    print_graph(&base, &graph, output, "component");
    Ok(EXIT_OK)
}

fn cmd_decide(
    common: &CommonArgs,
    mode: ProductMode,
    cache: &CacheArgs,
    u: &str,
    v: &str,
) -> Result<u8, Error> {
    let base = load_base(&common.base)?;
    let u = Word::parse(&base, u)?;
    let v = Word::parse(&base, v)?;
    let mut pairs = match cache.dir() {
        Some(dir) => PairCache::open(&dir).unwrap_or_else(|err| {
            eprintln!("warning: cache at {} unavailable: {err}", dir.display());
            PairCache::off()
        }),
        None => PairCache::off(),
    };
    let verdict = congruence::decide_equiv(&base, mode, &u, &v, common.vertex_cap, &mut pairs)?;
    println!("{}", if verdict { "equivalent" } else { "not equivalent" });
    Ok(if verdict { EXIT_OK } else { EXIT_NO })
}

fn cmd_enumerate(
    common: &CommonArgs,
    mode: ProductMode,
    max_len: usize,
    output: Output,
) -> Result<u8, Error> {
    let base = load_base(&common.base)?;
    let classes = congruence::enumerate_classes(&base, mode, max_len, common.vertex_cap)?;
    match output {
        Output::Text => {
            for class in &classes {
                let members: Vec<String> = class
                    .members
                    .iter()
                    .map(|m| format!("\"{}\"", m.display(&base)))
                    .collect();
                println!(
                    "\"{}\"\t{}",
                    class.representative.display(&base),
                    members.join(",")
                );
            }
        }
        Output::Json => {
            let doc: Vec<serde_json::Value> = classes
                .iter()
                .map(|class| {
                    serde_json::json!({
                        "representative": class.representative.display(&base),
                        "members": class.members.iter().map(|m| m.display(&base)).collect::<Vec<_>>(),
                        "mode": class.mode.as_str(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Output::Dot => return Err(Error::Parse("enumerate has no DOT output".into())),
    }
    Ok(EXIT_OK)
}

fn cmd_transform(common: &CommonArgs, word: &str, output: Output) -> Result<u8, Error> {
    let base = load_base(&common.base)?;
    let word = Word::parse(&base, word)?;
    let tensor_graph = graphs::component(ProductMode::Tensor, &base, &word, common.vertex_cap)?;
    let rewritten = transform::transform_graph(&base, &tensor_graph)?;
    print_graph(&base, &rewritten, output, "transform");
    Ok(EXIT_OK)
}

fn cmd_quotient(common: &CommonArgs, max_len: usize, cache: &CacheArgs) -> Result<u8, Error> {
    let base = load_base(&common.base)?;
    let mut pairs = match cache.dir() {
        Some(dir) => PairCache::open(&dir).unwrap_or_else(|err| {
            eprintln!("warning: cache at {} unavailable: {err}", dir.display());
            PairCache::off()
        }),
        None => PairCache::off(),
    };
    match congruence::verify_quotient_inclusion(&base, max_len, common.vertex_cap, &mut pairs)? {
        QuotientOutcome::Holds => {
            println!("HOLDS");
            Ok(EXIT_OK)
        }
        QuotientOutcome::Counterexample(u, v) => {
            println!(
                "counterexample: (\"{}\", \"{}\")",
                u.display(&base),
                v.display(&base)
            );
            Ok(EXIT_NO)
        }
    }
}
