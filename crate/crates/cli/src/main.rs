//! Command-line classifier for squarefree isogeny classes of abelian
//! varieties over finite fields.
//!
//! Exit codes: 0 success, 2 validation error (bad input or a polynomial
//! failing the Weil conditions), 3 cross-method oracle disagreement (an
//! internal consistency failure, never expected), 1 other failures
//! (network, i/o).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use avfq::arith::IntPoly;
use avfq::weil::{enumerate_elliptic_classes, ClassData, WeilPoly};
use avfq::Error as CoreError;

use avfq_cli::batch::{run_batch, BatchInput};
use avfq_cli::lmfdb::{self, default_fixtures_dir, LmfdbClient, LmfdbConfig};
use avfq_cli::report::{build_report, render_text, OrderScope, ReportOptions};
use avfq_cli::table1::{render_rows, table1_row, Table1Source};

#[derive(Parser)]
#[command(
    name = "avfq",
    version,
    about = "Exact classification of squarefree isogeny classes of abelian varieties over F_q"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify one isogeny class from its Weil polynomial.
    Analyze(AnalyzeArgs),
    /// Enumerate the squarefree elliptic (g = 1) classes over F_q.
    Enumerate(EnumerateArgs),
    /// Rich/cyclic statistics per (q, g), as in the published table.
    Table1(Table1Args),
    /// Fetch isogeny-class records (network, disk cache, or fixtures).
    Fetch(FetchArgs),
    /// Classify many classes in parallel.
    Batch(BatchArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Base field size (prime power).
    #[arg(long)]
    q: String,
    /// Ascending coefficients of h, comma separated: a0,a1,...,a2g.
    #[arg(long)]
    poly: String,
    /// Report groups over F_{q^n}.
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Which endomorphism orders to report: all | maximal | frobenius.
    #[arg(long, default_value = "all")]
    orders: String,
    /// Emit the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Attach a label to the report (defaults to the LMFDB-style label).
    #[arg(long)]
    label: Option<String>,
    /// Ideal-search depth m (enumerates m*O_K <= I <= O_K); default derived
    /// from the conductor.
    #[arg(long)]
    depth: Option<u32>,
    /// Candidate cap for overorder/sublattice enumeration.
    #[arg(long, default_value_t = avfq::order::DEFAULT_ENUM_CAP)]
    cap: usize,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    q: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Table1Args {
    /// Comma-separated list of genera.
    #[arg(long, default_value = "1")]
    g: String,
    /// Comma-separated list of base field sizes.
    #[arg(long, default_value = "2,3,4,5")]
    q: String,
    /// builtin | lmfdb  (builtin supports g = 1 only; lmfdb honors
    /// --offline to use committed fixtures).
    #[arg(long, default_value = "builtin")]
    source: String,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    net: NetArgs,
    /// Maximum records fetched per (g, q).
    #[arg(long, default_value_t = 20000)]
    limit: usize,
}

#[derive(Args)]
struct FetchArgs {
    #[arg(long)]
    g: usize,
    #[arg(long)]
    q: String,
    #[arg(long, default_value_t = 20000)]
    limit: usize,
    #[command(flatten)]
    net: NetArgs,
}

#[derive(Args)]
struct BatchArgs {
    /// JSON file: either {"data": [...]} or a bare array of records with
    /// fields label (optional), q, poly (ascending coefficients).
    #[arg(long, conflicts_with_all = ["g", "q"])]
    input: Option<PathBuf>,
    /// Fetch inputs for this genus instead of reading a file.
    #[arg(long, requires = "q")]
    g: Option<usize>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long, default_value_t = 20000)]
    limit: usize,
    /// Worker threads (default: rayon's choice).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value = "all")]
    orders: String,
    #[arg(long, default_value_t = avfq::order::DEFAULT_ENUM_CAP)]
    cap: usize,
    /// Write the JSON array here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    net: NetArgs,
}

#[derive(Args)]
struct NetArgs {
    /// TOML config overriding the LMFDB endpoint and field names.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = ".avfq_cache")]
    cache_dir: PathBuf,
    /// Serve committed fixtures instead of touching the network.
    #[arg(long)]
    offline: bool,
    #[arg(long)]
    fixtures_dir: Option<PathBuf>,
}

impl NetArgs {
    fn client(&self) -> Result<LmfdbClient, CliFailure> {
        let config = match &self.config {
            Some(path) => LmfdbConfig::from_toml_file(path).map_err(CliFailure::Lmfdb)?,
            None => LmfdbConfig::default(),
        };
        Ok(LmfdbClient::new(
            config,
            self.cache_dir.clone(),
            self.fixtures_dir
                .clone()
                .unwrap_or_else(default_fixtures_dir),
            self.offline,
        ))
    }
}

enum CliFailure {
    Core(CoreError),
    Lmfdb(lmfdb::LmfdbError),
    Usage(String),
    Io(String),
}

impl From<CoreError> for CliFailure {
    fn from(e: CoreError) -> Self {
        CliFailure::Core(e)
    }
}

impl CliFailure {
    fn exit_code(&self) -> u8 {
        match self {
            CliFailure::Core(CoreError::OracleDisagreement(_)) => 3,
            CliFailure::Core(_) | CliFailure::Usage(_) => 2,
            CliFailure::Lmfdb(_) | CliFailure::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliFailure::Core(e) => format!("error: {e}"),
            CliFailure::Lmfdb(e) => format!("error: {e}"),
            CliFailure::Usage(m) => format!("error: {m}"),
            CliFailure::Io(m) => format!("error: {m}"),
        }
    }
}

fn parse_bigint(s: &str, what: &str) -> Result<BigInt, CliFailure> {
    s.trim()
        .parse()
        .map_err(|_| CliFailure::Usage(format!("{what} is not an integer: {s}")))
}

fn parse_poly(s: &str) -> Result<IntPoly, CliFailure> {
    let coeffs: Result<Vec<BigInt>, CliFailure> = s
        .split(',')
        .map(|c| parse_bigint(c, "polynomial coefficient"))
        .collect();
    Ok(IntPoly::new(coeffs?))
}

fn parse_scope(s: &str) -> Result<OrderScope, CliFailure> {
    match s {
        "all" => Ok(OrderScope::All),
        "maximal" => Ok(OrderScope::Maximal),
        "frobenius" => Ok(OrderScope::Frobenius),
        other => Err(CliFailure::Usage(format!(
            "--orders must be all|maximal|frobenius, got {other}"
        ))),
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<BigInt>, CliFailure> {
    s.split(',').map(|x| parse_bigint(x, what)).collect()
}

fn main() -> ExitCode {
    // Die quietly when a pipe closes early (e.g. `avfq enumerate | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn run() -> Result<(), CliFailure> {
    match Cli::parse().cmd {
        Cmd::Analyze(a) => cmd_analyze(a),
        Cmd::Enumerate(a) => cmd_enumerate(a),
        Cmd::Table1(a) => cmd_table1(a),
        Cmd::Fetch(a) => cmd_fetch(a),
        Cmd::Batch(a) => cmd_batch(a),
    }
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<(), CliFailure> {
    let q = parse_bigint(&a.q, "q")?;
    let h = parse_poly(&a.poly)?;
    let w = WeilPoly::validate(h, q)?;
    let opts = ReportOptions {
        n: a.n,
        orders: parse_scope(&a.orders)?,
        label: a.label,
        search_depth: a.depth,
        enum_cap: a.cap,
    };
    let rep = build_report(w, &opts)?;
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&rep).expect("serializable")
        );
    } else {
        print!("{}", render_text(&rep));
    }
    Ok(())
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<(), CliFailure> {
    let q = parse_bigint(&a.q, "q")?;
    let classes = enumerate_elliptic_classes(&q)?;
    #[derive(serde::Serialize)]
    struct Row {
        label: String,
        q: String,
        poly: Vec<String>,
        n_points: String,
        cyclic: bool,
        rich: bool,
    }
    let mut rows = Vec::with_capacity(classes.len());
    for w in classes {
        let poly: Vec<BigInt> = (0..=2).map(|i| w.h().coeff(i)).collect();
        let c = ClassData::new(w.clone())?;
        rows.push(Row {
            label: lmfdb::lmfdb_label(1, w.q(), &poly),
            q: w.q().to_string(),
            poly: poly.iter().map(|x| x.to_string()).collect(),
            n_points: w.n_points().to_string(),
            cyclic: c.cyclic_verdicts()?.value()?,
            rich: c.rich_verdicts()?.value()?,
        });
    }
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&rows).expect("serializable")
        );
    } else {
        println!("{} squarefree elliptic classes over F_{}", rows.len(), q);
        for r in rows {
            println!(
                "  {:<12} h=[{}] N={} cyclic={} rich={}",
                r.label,
                r.poly.join(","),
                r.n_points,
                r.cyclic,
                r.rich
            );
        }
    }
    Ok(())
}

fn cmd_table1(a: Table1Args) -> Result<(), CliFailure> {
    let qs = parse_list(&a.q, "q")?;
    let gs: Result<Vec<usize>, CliFailure> = a
        .g
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| CliFailure::Usage(format!("bad genus: {x}")))
        })
        .collect();
    let gs = gs?;
    let source = match a.source.as_str() {
        "builtin" => Table1Source::Builtin,
        "lmfdb" => Table1Source::Lmfdb,
        other => {
            return Err(CliFailure::Usage(format!(
                "--source must be builtin|lmfdb, got {other}"
            )))
        }
    };
    let client = if source == Table1Source::Lmfdb {
        Some(a.net.client()?)
    } else {
        None
    };
    let mut rows = Vec::new();
    for q in &qs {
        for g in &gs {
            rows.push(table1_row(q, *g, source, client.as_ref(), a.limit)?);
        }
    }
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&rows).expect("serializable")
        );
    } else {
        print!("{}", render_rows(&rows));
    }
    Ok(())
}

fn cmd_fetch(a: FetchArgs) -> Result<(), CliFailure> {
    let q = parse_bigint(&a.q, "q")?;
    let client = a.net.client()?;
    let records = client.fetch(a.g, &q, a.limit).map_err(CliFailure::Lmfdb)?;
    #[derive(serde::Serialize)]
    struct Out {
        label: String,
        g: usize,
        q: String,
        poly: Vec<String>,
    }
    let out: Vec<Out> = records
        .iter()
        .map(|r| Out {
            label: r.label.clone(),
            g: r.g,
            q: r.q.to_string(),
            poly: r.poly.iter().map(|c| c.to_string()).collect(),
        })
        .collect();
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("serializable")
    );
    Ok(())
}

fn cmd_batch(a: BatchArgs) -> Result<(), CliFailure> {
    let inputs: Vec<BatchInput> = if let Some(path) = &a.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliFailure::Io(format!("{}: {e}", path.display())))?;
        parse_batch_file(&text)?
    } else if let (Some(g), Some(q)) = (a.g, a.q.as_deref()) {
        let q = parse_bigint(q, "q")?;
        let client = a.net.client()?;
        client
            .fetch(g, &q, a.limit)
            .map_err(CliFailure::Lmfdb)?
            .into_iter()
            .map(|r| BatchInput {
                label: Some(r.label),
                q: r.q,
                poly: r.poly,
            })
            .collect()
    } else {
        return Err(CliFailure::Usage(
            "batch needs --input FILE or --g G --q Q".into(),
        ));
    };
    let opts = ReportOptions {
        n: a.n,
        orders: parse_scope(&a.orders)?,
        label: None,
        search_depth: None,
        enum_cap: a.cap,
    };
    let reports = run_batch(&inputs, &opts, a.jobs)?;
    let json = serde_json::to_string_pretty(&reports).expect("serializable");
    match &a.output {
        Some(path) => std::fs::write(path, json)
            .map_err(|e| CliFailure::Io(format!("{}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    Ok(())
}

fn parse_batch_file(text: &str) -> Result<Vec<BatchInput>, CliFailure> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CliFailure::Usage(format!("batch input is not JSON: {e}")))?;
    let arr = value
        .get("data")
        .and_then(|d| d.as_array())
        .or_else(|| value.as_array())
        .ok_or_else(|| {
            CliFailure::Usage("batch input must be an array or {\"data\": []}".into())
        })?;
    let mut out = Vec::with_capacity(arr.len());
    for (i, item) in arr.iter().enumerate() {
        let label = item
            .get("label")
            .and_then(|l| l.as_str())
            .map(|s| s.to_string());
        let q = item
            .get("q")
            .ok_or_else(|| CliFailure::Usage(format!("record {i}: missing q")))?;
        let q = json_bigint(q).ok_or_else(|| CliFailure::Usage(format!("record {i}: bad q")))?;
        let poly = item
            .get("poly")
            .and_then(|p| p.as_array())
            .ok_or_else(|| CliFailure::Usage(format!("record {i}: missing poly array")))?;
        let poly: Option<Vec<BigInt>> = poly.iter().map(json_bigint).collect();
        let poly = poly.ok_or_else(|| CliFailure::Usage(format!("record {i}: bad poly entry")))?;
        out.push(BatchInput { label, q, poly });
    }
    Ok(out)
}

fn json_bigint(v: &serde_json::Value) -> Option<BigInt> {
    if let Some(n) = v.as_i64() {
        return Some(BigInt::from(n));
    }
    v.as_str().and_then(|s| s.parse().ok())
}
