//! Command-line front end: image files, reports, and exit codes.
//!
//! Exit codes: 0 success (frozen, certified), 1 refuted, 2 search budget
//! exhausted, 3 inconclusive certificate, 64 usage error, 65 bad input data.

pub mod document;
pub mod render;

use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use freezeset::analysis::analyze;
use freezeset::certifier::{certify_freezing, Certificate};
use freezeset::lattice::{format_point_list, parse_point_list};
use freezeset::oracle::{MinimizeOptions, Oracle, Outcome, SearchBudget, SearchOptions, DEFAULT_NODE_BUDGET, EXCLUDABLE_CAP};
use freezeset::{fixtures, DigitalImage, PointSet, SelfMap};

use document::{parse_image, LoadedImage, SourceFormat, GRID_CONVENTION};

pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

/// Environment variable overriding the default node budget.
pub const BUDGET_ENV: &str = "FREEZE_BUDGET";

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("search budget exhausted after {0} nodes")]
    Budget(u64),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<freezeset::Error> for CliError {
    fn from(e: freezeset::Error) -> Self {
        match e {
            freezeset::Error::BudgetExhausted(n) => CliError::Budget(n),
            freezeset::Error::ZeroBudget => CliError::Usage(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "freezeset", version, about = "Freezing sets of digital images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ImageArgs {
    /// Image file (JSON or ASCII grid) or a built-in name: kite, diamond,
    /// square-c1, square-c2, staircase.
    #[arg(long)]
    image: String,
    /// Adjacency `u` for grid files; overrides the value in JSON files.
    #[arg(long)]
    adjacency: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Node budget per search (default: $FREEZE_BUDGET or 10,000,000).
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Disable the pulling filter.
    #[arg(long)]
    no_pulling: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree-one points, articulation points, extrema, boundary, bounds.
    Analyze {
        #[command(flatten)]
        image: ImageArgs,
    },
    /// Decide whether a set freezes the image.
    Verify {
        #[command(flatten)]
        image: ImageArgs,
        #[arg(long)]
        set: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Try to certify a freezing set by propagation.
    Certify {
        #[command(flatten)]
        image: ImageArgs,
        #[arg(long)]
        set: String,
    },
    /// All minimum-size freezing sets.
    Minimize {
        #[command(flatten)]
        image: ImageArgs,
        /// Only consider boundary points.
        #[arg(long)]
        boundary_only: bool,
        /// Do not force in degree-one points and justified extrema, nor
        /// drop articulation points.
        #[arg(long)]
        no_theorem_pruning: bool,
        #[arg(long, default_value_t = freezeset::oracle::DEFAULT_MAX_POOL)]
        max_pool: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Whether a set is excludable, by deciding every subset.
    Excludable {
        #[command(flatten)]
        image: ImageArgs,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = EXCLUDABLE_CAP)]
        cap: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Count continuous self-maps fixing a set, with a sample.
    EnumMaps {
        #[command(flatten)]
        image: ImageArgs,
        #[arg(long, default_value = "")]
        set: String,
        /// Number of maps to list.
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Draw a planar image, highlighting a set.
    Render {
        #[command(flatten)]
        image: ImageArgs,
        #[arg(long, default_value = "")]
        set: String,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum RenderFormat {
    Ascii,
    Svg,
}

/// Runs one command line (including the program name) using the process
/// environment for [`BUDGET_ENV`].
pub fn run_command<I, S>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with_budget_env(argv, std::env::var(BUDGET_ENV).ok())
}

/// [`run_command`] with an explicit value standing in for [`BUDGET_ENV`].
pub fn run_with_budget_env<I, S>(argv: I, budget_env: Option<String>) -> CommandOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli.command, budget_env.as_deref()) {
        Ok((code, stdout)) => CommandOutput {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => CommandOutput {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn builtin(name: &str) -> Option<DigitalImage> {
    Some(match name {
        "kite" => fixtures::kite(),
        "diamond" => fixtures::diamond(),
        "square-c1" => fixtures::square(1),
        "square-c2" => fixtures::square(2),
        "staircase" => fixtures::staircase(),
        _ => return None,
    })
}

fn load(args: &ImageArgs) -> Result<LoadedImage, CliError> {
    let path = Path::new(&args.image);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", args.image)))?;
        let mut loaded = parse_image(&text, args.adjacency)?;
        if loaded.name.is_none() {
            loaded.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        return Ok(loaded);
    }
    let mut image = builtin(&args.image).ok_or_else(|| CliError::Usage(format!("no such file or built-in image: {}", args.image)))?;
    if let Some(u) = args.adjacency {
        image = DigitalImage::new(image.dim(), u, image.points().iter().cloned())?;
    }
    Ok(LoadedImage {
        image,
        name: Some(args.image.clone()),
        format: SourceFormat::Builtin,
    })
}

fn parse_set(image: &DigitalImage, text: &str) -> Result<PointSet, CliError> {
    let points = parse_point_list(text).map_err(|e| CliError::Usage(format!("--set: {e}")))?;
    Ok(image.point_set(&points)?)
}

fn budget(search: &SearchArgs, env: Option<&str>) -> Result<SearchBudget, CliError> {
    let nodes = match (search.budget, env) {
        (Some(n), _) => n,
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be a positive integer, got {v:?}")))?,
        (None, None) => DEFAULT_NODE_BUDGET,
    };
    Ok(SearchBudget::nodes(nodes)?)
}

fn oracle<'a>(image: &'a DigitalImage, search: &SearchArgs) -> Result<Oracle<'a>, CliError> {
    if search.threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let options = SearchOptions {
        pulling_pruning: !search.no_pulling,
        threads: search.threads,
    };
    Ok(Oracle::with_options(image, options)?)
}

fn pts(image: &DigitalImage, set: &PointSet) -> String {
    format_point_list(image.points_of(set).iter())
}

fn pts_json(image: &DigitalImage, set: &PointSet) -> Value {
    Value::Array(image.points_of(set).iter().map(|p| json!(p.coords())).collect())
}

fn map_json(image: &DigitalImage, f: &SelfMap) -> Value {
    Value::Array(
        (0..f.len())
            .map(|i| json!([image.point(i).coords(), image.point(f.get(i)).coords()]))
            .collect(),
    )
}

/// Text of the moved points of `f`, as `p->f(p)` pairs.
fn moves(image: &DigitalImage, f: &SelfMap) -> String {
    (0..f.len())
        .filter(|&i| f.get(i) != i)
        .map(|i| format!("{}->{}", image.point(i), image.point(f.get(i))))
        .collect::<Vec<_>>()
        .join(" ")
}

fn header(loaded: &LoadedImage) -> String {
    let x = &loaded.image;
    format!(
        "# image: {} ({}), dim {}, c_{}, {} points\n# coordinates: {}\n",
        loaded.name.as_deref().unwrap_or("(unnamed)"),
        loaded.format.label(),
        x.dim(),
        x.adjacency(),
        x.len(),
        GRID_CONVENTION
    )
}

fn header_json(loaded: &LoadedImage) -> Value {
    let x = &loaded.image;
    json!({
        "name": loaded.name,
        "source": loaded.format.label(),
        "dim": x.dim(),
        "adjacency": x.adjacency(),
        "size": x.len(),
        "grid_convention": GRID_CONVENTION,
    })
}

/// Text or JSON report, joined with its header.
struct Report {
    text: String,
    json: Value,
}

fn execute(command: Command, env: Option<&str>) -> Result<(i32, String), CliError> {
    let (args, code, report, loaded) = match command {
        Command::Analyze { image } => {
            let loaded = load(&image)?;
            let r = analyze_cmd(&loaded.image)?;
            (image, 0, r, loaded)
        }
        Command::Verify { image, set, search } => {
            let loaded = load(&image)?;
            let (code, r) = verify_cmd(&loaded.image, &set, &search, env)?;
            (image, code, r, loaded)
        }
        Command::Certify { image, set } => {
            let loaded = load(&image)?;
            let (code, r) = certify_cmd(&loaded.image, &set)?;
            (image, code, r, loaded)
        }
        Command::Minimize {
            image,
            boundary_only,
            no_theorem_pruning,
            max_pool,
            search,
        } => {
            let loaded = load(&image)?;
            let x = &loaded.image;
            let mut opts = MinimizeOptions {
                restrict_to_boundary: boundary_only,
                max_pool,
                ..MinimizeOptions::default()
            };
            if no_theorem_pruning {
                opts = opts.without_theorem_pruning(x.len());
            }
            let r = minimize_cmd(x, &opts, &search, env)?;
            (image, 0, r, loaded)
        }
        Command::Excludable { image, set, cap, search } => {
            let loaded = load(&image)?;
            let r = excludable_cmd(&loaded.image, &set, cap, &search, env)?;
            (image, 0, r, loaded)
        }
        Command::EnumMaps { image, set, limit, search } => {
            let loaded = load(&image)?;
            let r = enum_maps_cmd(&loaded.image, &set, limit, &search, env)?;
            (image, 0, r, loaded)
        }
        Command::Render { image, set, format } => {
            let loaded = load(&image)?;
            let x = &loaded.image;
            let highlight = parse_set(x, &set)?;
            let drawing = match format {
                RenderFormat::Ascii => render::ascii(x, &highlight)?,
                RenderFormat::Svg => render::svg(x, &highlight)?,
            };
            if format == RenderFormat::Svg && !image.json {
                return Ok((0, drawing));
            }
            let r = Report {
                json: json!({ "format": format!("{format:?}").to_lowercase(), "drawing": drawing }),
                text: drawing,
            };
            (image, 0, r, loaded)
        }
    };
    let out = if args.json {
        let mut doc = json!({ "image": header_json(&loaded) });
        if let (Value::Object(d), Value::Object(r)) = (&mut doc, report.json) {
            d.extend(r);
        }
        serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
    } else {
        header(&loaded) + &report.text
    };
    Ok((code, out))
}

fn analyze_cmd(x: &DigitalImage) -> Result<Report, CliError> {
    let r = analyze(x)?;
    let mut text = String::new();
    text += &format!("D1: {}\n", pts(x, &r.d1));
    text += &format!("W: {}\n", pts(x, &r.w));
    text += "extrema:\n";
    for e in &r.extrema {
        text += &format!(
            "  {} {} of coordinate {}, justifying neighbor {} ({})\n",
            e.point,
            e.direction,
            e.index,
            e.justifying_neighbor,
            if e.justified { "in X" } else { "not in X" }
        );
    }
    text += &format!("T: {}\n", pts(x, &r.t));
    text += &format!("Bd: {}\n", pts(x, &r.bd));
    text += &format!("lower bound: {}\n", r.lower_bound);
    match (r.upper_bound, r.upper_bound_omitted) {
        (Some(u), _) => text += &format!("upper bound: {u}\n"),
        (None, Some(why)) => text += &format!("upper bound: omitted ({why})\n"),
        (None, None) => {}
    }
    if !r.w_interior.is_empty() {
        text += &format!("articulation points off the boundary: {}\n", pts(x, &r.w_interior));
    }
    let extrema: Vec<Value> = r
        .extrema
        .iter()
        .map(|e| {
            json!({
                "point": e.point.coords(),
                "index": e.index,
                "direction": e.direction.to_string(),
                "justifying_neighbor": e.justifying_neighbor.coords(),
                "justified": e.justified,
            })
        })
        .collect();
    let json = json!({
        "d1": pts_json(x, &r.d1),
        "w": pts_json(x, &r.w),
        "extrema": extrema,
        "t": pts_json(x, &r.t),
        "bd": pts_json(x, &r.bd),
        "lower_bound": r.lower_bound,
        "upper_bound": r.upper_bound,
        "upper_bound_omitted": r.upper_bound_omitted.map(|w| w.to_string()),
        "w_interior": pts_json(x, &r.w_interior),
    });
    Ok(Report { text, json })
}

fn verify_cmd(x: &DigitalImage, set: &str, search: &SearchArgs, env: Option<&str>) -> Result<(i32, Report), CliError> {
    let a = parse_set(x, set)?;
    let v = oracle(x, search)?.verify_freezing(&a, budget(search, env)?)?;
    let (code, verdict) = match &v.outcome {
        Outcome::Frozen => (0, "frozen"),
        Outcome::Refuted(_) => (EXIT_REFUTED, "refuted"),
        Outcome::BudgetExhausted => (EXIT_BUDGET, "budget-exhausted"),
    };
    let mut text = format!("set: {}\nverdict: {verdict}\nnodes: {}\n", pts(x, &a), v.nodes_explored);
    let mut json = json!({
        "set": pts_json(x, &a),
        "verdict": verdict,
        "nodes": v.nodes_explored,
    });
    if let Some(f) = v.witness() {
        text += &format!("witness moves: {}\n", moves(x, f));
        text += &format!("witness fixed points: {}\n", pts(x, &f.fixed_points()));
        json["witness"] = map_json(x, f);
    }
    Ok((code, Report { text, json }))
}

fn certify_cmd(x: &DigitalImage, set: &str) -> Result<(i32, Report), CliError> {
    let a = parse_set(x, set)?;
    let cert = certify_freezing(x, &a)?;
    let trace = cert.trace();
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            let list = |v: &[usize]| Value::Array(v.iter().map(|&i| json!(x.point(i).coords())).collect());
            json!({ "rule": s.rule.id(), "premises": list(&s.premises), "forced": list(&s.forced) })
        })
        .collect();
    let rules: Vec<&str> = trace.rules_used().iter().map(|r| r.id()).collect();
    let (code, outcome) = if cert.is_certified() {
        (0, "certified")
    } else {
        (EXIT_INCONCLUSIVE, "inconclusive")
    };
    let mut text = format!("set: {}\ncertificate: {outcome}\nrules used: {}\ntrace:\n", pts(x, &a), rules.join(" "));
    text += &trace.to_text(x);
    let mut json = json!({ "set": pts_json(x, &a), "certificate": outcome, "rules_used": rules, "trace": steps });
    if let Certificate::Inconclusive { closure, .. } = &cert {
        text += &format!("closure: {}\nunforced: {}\n", pts(x, closure), pts(x, &closure.complement()));
        json["closure"] = pts_json(x, closure);
    }
    Ok((code, Report { text, json }))
}

fn minimize_cmd(x: &DigitalImage, opts: &MinimizeOptions, search: &SearchArgs, env: Option<&str>) -> Result<Report, CliError> {
    let r = oracle(x, search)?.minimum_freezing_sets(opts, budget(search, env)?)?;
    let size = r.cardinality().map_or("none".to_string(), |k| k.to_string());
    let mut text = format!(
        "restricted to boundary: {}\nincluded: {}\nexcluded: {}\npool: {}\nminimum size: {size}\nsets: {}\n",
        opts.restrict_to_boundary,
        pts(x, &r.include),
        pts(x, &r.exclude),
        pts(x, &r.pool),
        r.sets.len()
    );
    for s in &r.sets {
        text += &format!("  {}\n", pts(x, s));
    }
    text += &format!("queries: {}\nnodes: {}\n", r.queries, r.nodes_explored);
    let json = json!({
        "restricted_to_boundary": opts.restrict_to_boundary,
        "included": pts_json(x, &r.include),
        "excluded": pts_json(x, &r.exclude),
        "pool": pts_json(x, &r.pool),
        "minimum_size": r.cardinality(),
        "sets": r.sets.iter().map(|s| pts_json(x, s)).collect::<Vec<_>>(),
        "queries": r.queries,
        "nodes": r.nodes_explored,
    });
    Ok(Report { text, json })
}

fn excludable_cmd(x: &DigitalImage, set: &str, cap: usize, search: &SearchArgs, env: Option<&str>) -> Result<Report, CliError> {
    let w = parse_set(x, set)?;
    let table = oracle(x, search)?.freezing_table(cap, budget(search, env)?)?;
    let excludable = table.is_excludable(&w);
    let mut text = format!("set: {}\nexcludable: {}\nfreezing subsets: {}\nqueries: {}\n", pts(x, &w), excludable, table.frozen_sets().count(), table.queries);
    let mut json = json!({
        "set": pts_json(x, &w),
        "excludable": excludable,
        "freezing_subsets": table.frozen_sets().count(),
        "queries": table.queries,
    });
    let counterexample = table.frozen_sets().find(|a| {
        let rest = a.difference(&w);
        !rest.is_empty() && !table.is_frozen(&rest)
    });
    if let Some(a) = counterexample {
        text += &format!("counterexample: {} freezes but {} does not\n", pts(x, &a), pts(x, &a.difference(&w)));
        json["counterexample"] = pts_json(x, &a);
    }
    Ok(Report { text, json })
}

fn enum_maps_cmd(x: &DigitalImage, set: &str, limit: usize, search: &SearchArgs, env: Option<&str>) -> Result<Report, CliError> {
    let a = parse_set(x, set)?;
    let o = oracle(x, search)?;
    let count = o.count_continuous_maps(&a, budget(search, env)?)?;
    let sample = o.enumerate_continuous_maps(&a, limit)?;
    let mut text = format!("fixed: {}\ncontinuous maps: {count}\nsample ({} shown):\n", pts(x, &a), sample.maps.len());
    for f in &sample.maps {
        let images: Vec<_> = (0..f.len()).map(|i| x.point(f.get(i)).clone()).collect();
        text += &format!("  {}\n", format_point_list(&images));
    }
    let json = json!({
        "fixed": pts_json(x, &a),
        "count": count,
        "sample": sample.maps.iter().map(|f| map_json(x, f)).collect::<Vec<_>>(),
    });
    Ok(Report { text, json })
}
