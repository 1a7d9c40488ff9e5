use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use normlab_core::corpus::{self, CorpusManifest, DiskCache, NamedGroup};
use normlab_core::harness::{self, Harness, Overrides, RunHeader};
use normlab_core::norm::{hf_norm, int_x, norm_series};
use normlab_core::report::describe_generators;
use normlab_core::series::{self, chief_series, hypercentre, psi_p};
use normlab_core::{classes, ClassExpr, Error, Group, Limits, PrimeSet, Subgroup};

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "norm-lab", version, about = "Norms, hypercentres and formation checks on finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural summary of one group.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Compute one subgroup-valued quantity.
    Compute {
        quantity: Quantity,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        params: Params,
        /// List the elements of the result.
        #[arg(long)]
        emit_elements: bool,
    },
    /// Run proposition checks over a corpus.
    Verify(VerifyArgs),
    /// List the proposition registry.
    Props,
}

#[derive(Subcommand)]
enum GroupAction {
    Info {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Norm,
    NormSeries,
    Hypercentre,
    Residual,
    Radical,
    Int,
    Psi,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Args, Clone, Default)]
struct Source {
    /// A group from the built-in catalog.
    #[arg(long, conflicts_with_all = ["builtin_corpus", "corpus"])]
    builtin: Option<String>,
    /// Use the whole built-in catalog.
    #[arg(long, conflicts_with = "corpus")]
    builtin_corpus: bool,
    /// Corpus manifest (JSON or JSONL).
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Restrict to one named group of the corpus.
    #[arg(long)]
    group: Option<String>,
    /// Largest group order accepted.
    #[arg(long)]
    cap: Option<usize>,
    /// Largest number of subgroups enumerated per group.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct Params {
    #[arg(long = "F")]
    f: Option<String>,
    #[arg(long = "H")]
    h: Option<String>,
    #[arg(long = "X")]
    x: Option<String>,
    #[arg(long)]
    pi: Option<String>,
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    params: Params,
    /// Proposition ids, comma separated, or `all`.
    #[arg(long, default_value = "all")]
    props: String,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "NORMLAB_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

/// Command failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_budget() { EXIT_BUDGET } else { EXIT_CONFIG },
            message: e.to_string(),
        }
    }
}

fn config_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Group {
            action: GroupAction::Info { source },
        } => cmd_group_info(&source),
        Command::Compute {
            quantity,
            source,
            params,
            emit_elements,
        } => cmd_compute(quantity, &source, &params, emit_elements),
        Command::Verify(args) => cmd_verify(&args),
        Command::Props => cmd_props(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("norm-lab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

// ---- inputs -------------------------------------------------------------------

fn limits(source: &Source, manifest: Option<&CorpusManifest>) -> Limits {
    let mut l = manifest.map(|m| m.limits()).unwrap_or_default();
    if let Some(c) = source.cap {
        l.order_cap = c;
    }
    if let Some(b) = source.budget {
        l.subgroup_budget = b;
    }
    l
}

fn read_manifest(path: &PathBuf) -> Result<CorpusManifest, Failure> {
    let text = fs::read_to_string(path).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
    corpus::parse_manifest(&text).map_err(|e| config_error(format!("{}: {e}", path.display())))
}

/// The corpus named by the flags; the built-in catalog when none is given.
fn load_corpus(source: &Source) -> Result<Vec<NamedGroup>, Failure> {
    let mut manifest = match (&source.builtin, &source.corpus) {
        (Some(name), _) => {
            let cat = corpus::builtin_catalog();
            let d = cat
                .get(name)
                .ok_or_else(|| config_error(format!("unknown built-in group {name:?}")))?
                .clone();
            CorpusManifest {
                groups: vec![d],
                ..CorpusManifest::default()
            }
        }
        (None, Some(path)) => read_manifest(path)?,
        (None, None) => corpus::builtin_catalog(),
    };
    if let Some(name) = &source.group {
        manifest.groups.retain(|d| &d.name == name);
        if manifest.groups.is_empty() {
            return Err(config_error(format!("unknown group {name:?}")));
        }
    }
    let lim = limits(source, Some(&manifest));
    manifest
        .groups
        .iter()
        .map(|d| {
            Ok(NamedGroup {
                name: d.name.clone(),
                group: Arc::new(corpus::load_group(d, lim)?),
            })
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(Failure::from)
}

fn single_group(source: &Source) -> Result<NamedGroup, Failure> {
    let mut groups = load_corpus(source)?;
    if groups.len() != 1 {
        return Err(config_error("select one group with --builtin NAME or --corpus FILE --group NAME"));
    }
    Ok(groups.remove(0))
}

fn class_arg(text: &Option<String>, flag: &str) -> Result<Option<ClassExpr>, Failure> {
    text.as_deref()
        .map(|t| ClassExpr::parse(t).map_err(|e| config_error(format!("--{flag}: {e}"))))
        .transpose()
}

fn required_class(text: &Option<String>, flag: &str) -> Result<ClassExpr, Failure> {
    class_arg(text, flag)?.ok_or_else(|| config_error(format!("--{flag} is required")))
}

fn pi_arg(text: &Option<String>) -> Result<Option<PrimeSet>, Failure> {
    text.as_deref()
        .map(|t| classes::parse_prime_set(t).map_err(|e| config_error(format!("--pi: {e}"))))
        .transpose()
}

// ---- commands -----------------------------------------------------------------

fn orders(subgroups: &[Subgroup]) -> String {
    let v: Vec<usize> = subgroups.iter().map(Subgroup::order).collect();
    format!("{v:?}")
}

fn cmd_group_info(source: &Source) -> CmdResult {
    let named = single_group(source)?;
    let g = &named.group;
    let lattice = g.lattice()?;
    let chief = chief_series(g, &g.whole())?;
    let fitting = classes::radical(g, &ClassExpr::nilpotent())?;
    println!("group: {}", named.name);
    println!("id: {}", g.id());
    println!("order: {}", g.order());
    println!("primes: {:?}", g.primes());
    println!("subgroups: {}", lattice.len());
    println!("conjugacy classes of subgroups: {}", lattice.class_representatives().len());
    println!("normal subgroup orders: {}", orders(g.normal_subgroups()));
    println!("chief factor orders: {:?}", chief.factor_orders());
    println!("frattini order: {}", g.frattini_subgroup()?.order());
    println!("centre order: {}", g.center().order());
    println!("fitting subgroup order: {}", fitting.order());
    match series::fitting_length(g)? {
        Some(l) => println!("fitting length: {l}"),
        None => println!("fitting length: none (not solvable)"),
    }
    Ok(0)
}

fn print_subgroup(g: &Group, label: &str, s: &Subgroup, emit_elements: bool) {
    println!("{label}: order {}", s.order());
    println!("  generators: [{}]", describe_generators(g, s).join(", "));
    if emit_elements {
        let elems: Vec<String> = s.elements().into_iter().map(|x| g.describe_element(x)).collect();
        println!("  elements: [{}]", elems.join(", "));
    }
}

fn cmd_compute(q: Quantity, source: &Source, params: &Params, emit_elements: bool) -> CmdResult {
    let named = single_group(source)?;
    let g = &named.group;
    let pi = || -> Result<PrimeSet, Failure> { Ok(pi_arg(&params.pi)?.unwrap_or(PrimeSet::All)) };
    let h = || -> Result<ClassExpr, Failure> { Ok(class_arg(&params.h, "H")?.unwrap_or_else(ClassExpr::trivial)) };
    match q {
        Quantity::Norm => {
            let s = hf_norm(g, &h()?, &required_class(&params.f, "F")?)?;
            print_subgroup(g, "norm", &s, emit_elements);
        }
        Quantity::NormSeries => {
            let ns = norm_series(g, &h()?, &required_class(&params.f, "F")?)?;
            for (i, s) in ns.terms.iter().enumerate() {
                print_subgroup(g, &format!("term {i}"), s, emit_elements);
            }
        }
        Quantity::Hypercentre => {
            let s = hypercentre(g, &pi()?, &required_class(&params.f, "F")?)?;
            print_subgroup(g, "hypercentre", &s, emit_elements);
        }
        Quantity::Residual => {
            let s = classes::residual(g, &required_class(&params.f, "F")?)?;
            print_subgroup(g, "residual", &s, emit_elements);
        }
        Quantity::Radical => {
            let s = classes::radical(g, &required_class(&params.h, "H")?)?;
            print_subgroup(g, "radical", &s, emit_elements);
        }
        Quantity::Int => {
            let s = int_x(g, &required_class(&params.x, "X")?)?;
            print_subgroup(g, "int", &s, emit_elements);
        }
        Quantity::Psi => {
            let p = params.p.ok_or_else(|| config_error("--p is required"))?;
            if !normlab_core::primes::is_prime(p) {
                return Err(config_error(format!("--p: {p} is not prime")));
            }
            let s = psi_p(g, p)?;
            print_subgroup(g, &format!("psi_{p}"), &s, emit_elements);
        }
    }
    Ok(0)
}

fn cmd_props() -> CmdResult {
    for p in harness::registry() {
        let scope = match p.scope {
            harness::Scope::Group => "group",
            harness::Scope::Corpus => "corpus",
        };
        println!("{:<8} {:<6} {}", p.id, scope, p.statement);
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let props = harness::resolve_props(&args.props).map_err(Failure::from)?;
    let overrides = Overrides {
        h: class_arg(&args.params.h, "H")?,
        f: class_arg(&args.params.f, "F")?,
        pi: pi_arg(&args.params.pi)?,
        p: args.params.p,
    };
    if props.is_empty() {
        return Ok(0);
    }
    let corpus = load_corpus(&args.source)?;
    let start = Instant::now();
    if let Some(dir) = &args.cache_dir {
        let cache = DiskCache::new(dir);
        for named in &corpus {
            if let Err(e) = cache.warm_lattice(&named.group) {
                if !e.is_budget() {
                    log::warn!("cache for {}: {e}", named.name);
                }
            }
        }
    }
    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let h = Harness::new(corpus, overrides);
    let reports = h.run(&props, jobs)?;
    let header = RunHeader {
        tool: "norm-lab".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        elapsed_ms: start.elapsed().as_millis(),
    };
    let text = match args.format {
        Format::Json => harness::render_json(&header, &reports) + "\n",
        Format::Csv => harness::render_csv(&reports)?,
        Format::Md => harness::render_markdown(&reports),
    };
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| config_error(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    let summary = harness::summarize(&reports);
    eprintln!(
        "{} checks: {} pass, {} skip, {} fail",
        summary.total, summary.counts.pass, summary.counts.skip, summary.counts.fail
    );
    Ok(if summary.counts.fail > 0 { EXIT_FAIL } else { 0 })
}
