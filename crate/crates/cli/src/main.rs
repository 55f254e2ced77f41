use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use scid_core::bounds::{self, ScidParams};
use scid_core::cert::{self, canonical_json, Certificate, MalformedInput, Provenance, Verification};
use scid_core::construct::{self, ConstructionKind};
use scid_core::gf::Field;
use scid_core::par::Execution;
use scid_core::search::{self, SearchParams, SearchSpace};
use scid_core::spectrum;

#[derive(Parser)]
#[command(name = "scid", version, about = "Constructions, bounds and exhaustive checks for subspace families with constant intersection dimension")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family and print its certificate
    Construct(ConstructArgs),
    /// Re-check a certificate or a bare family (file path, or stdin when omitted or "-")
    Verify {
        path: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Sums in [2k, nk] realized by the constructions
    Spectrum {
        #[command(flatten)]
        p: FieldParams,
        #[arg(long)]
        json: bool,
    },
    /// Every applicable upper bound and the best one
    Bounds {
        #[command(flatten)]
        p: Params,
        #[arg(long)]
        json: bool,
    },
    /// Maximize dim S + dim I over SCIDs in a small ambient space
    Search(SearchArgs),
}

#[derive(Args, Clone, Copy)]
struct Params {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
}

#[derive(Args, Clone, Copy)]
struct FieldParams {
    #[command(flatten)]
    p: Params,
    #[arg(long)]
    q: u32,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    kind: ConstructionKind,
    #[command(flatten)]
    p: FieldParams,
    #[arg(long)]
    eps: Option<usize>,
    #[arg(long)]
    eta: Option<usize>,
    /// Re-verify the certificate before printing it
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    p: FieldParams,
    /// Ambient dimension; defaults to k + (n-1)t, which holds every SCID
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, conflicts_with = "random")]
    exhaustive: bool,
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    iters: u64,
    /// Worker threads; 1 runs sequentially
    #[arg(long)]
    jobs: Option<usize>,
}

/// Failure carrying the exit code and a message for stderr.
struct Failure(u8, String);

fn usage(msg: impl ToString) -> Failure {
    Failure(2, msg.to_string())
}

fn field(q: u32) -> Result<Field, Failure> {
    Field::with_order(q).map_err(|e| usage(format!("q = {q}: {e}")))
}

fn timestamp() -> String {
    std::env::var("SOURCE_DATE_EPOCH").unwrap_or_else(|_| {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        secs.to_string()
    })
}

fn command_line() -> String {
    let mut args = std::env::args();
    args.next();
    std::iter::once("scid".to_string()).chain(args).collect::<Vec<_>>().join(" ")
}

fn construct(a: ConstructArgs) -> Result<(), Failure> {
    let FieldParams { p: Params { n, k, t }, q } = a.p;
    let f = field(q)?;
    let c = construct::build(a.kind, n, k, t, &f, a.eta, a.eps).map_err(usage)?;
    let prov = Provenance { command: command_line(), seed: None, timestamp: timestamp() };
    let cert = Certificate::from_construction(&c, prov).map_err(|e| Failure(1, e.to_string()))?;
    let text = cert.to_canonical_json();
    if a.check {
        let v = cert::verify_document(&text).map_err(|e| Failure(1, e.to_string()))?;
        if !v.ok {
            return Err(Failure(1, format!("self-check failed: {}", canonical_json(&v))));
        }
    }
    println!("{text}");
    Ok(())
}

fn print_verification(v: &Verification) {
    if v.ok {
        println!("ok: {} verifies, sum {}", v.input, v.sum.unwrap_or(0));
        return;
    }
    println!("FAILED: {} does not verify", v.input);
    for p in &v.problems {
        println!("  {p}");
    }
    for m in &v.mismatches {
        println!("  {}: stored {} recomputed {}", m.path, m.stored, m.recomputed);
    }
}

fn verify(path: Option<PathBuf>, json: bool) -> Result<(), Failure> {
    let text = match path.filter(|p| p.as_os_str() != "-") {
        Some(p) => std::fs::read_to_string(&p).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(usage)?;
            s
        }
    };
    let v = cert::verify_document(&text).map_err(|e: MalformedInput| usage(e))?;
    if json {
        println!("{}", canonical_json(&v));
    } else {
        print_verification(&v);
    }
    if v.ok {
        Ok(())
    } else {
        Err(Failure(1, "verification failed".into()))
    }
}

fn spectrum(p: FieldParams, json: bool) -> Result<(), Failure> {
    let f = field(p.q)?;
    let r = spectrum::spectrum(p.p.n, p.p.k, p.p.t, &f).map_err(usage)?;
    if json {
        println!("{}", canonical_json(&r));
    } else {
        print!("{}", spectrum::render_table(&r));
    }
    Ok(())
}

fn bounds(p: Params, json: bool) -> Result<(), Failure> {
    let params = ScidParams::new(p.n, p.k, p.t).map_err(usage)?;
    let r = bounds::best_bound(params);
    if json {
        println!("{}", canonical_json(&r));
    } else {
        print!("{}", bounds::render_table(&r));
    }
    Ok(())
}

fn search(a: SearchArgs) -> Result<(), Failure> {
    let FieldParams { p: Params { n, k, t }, q } = a.p;
    let f = field(q)?;
    ScidParams::new(n, k, t).map_err(usage)?;
    let d = a.d.unwrap_or_else(|| search::default_ambient(n, k, t));
    let exec = if a.jobs == Some(1) { Execution::Sequential } else { Execution::Parallel };
    let run = || {
        if a.random {
            search::random_scid_search_with(n, k, t, &f, d, a.seed, a.iters, exec)
        } else {
            SearchSpace::new(n, k, t, &f, d, exec).map(|s| s.max_sum(exec))
        }
    };
    let result = match a.jobs {
        Some(j) if j > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(usage)?
            .install(run),
        Some(0) => return Err(usage("--jobs must be at least 1")),
        _ => run(),
    }
    .map_err(usage)?;
    let params = SearchParams { n, k, t, q, d };
    println!("{}", canonical_json(&result.to_json(params)));
    if result.bound_violations > 0 {
        return Err(Failure(1, format!("{} SCIDs exceed the best bound {}", result.bound_violations, result.upper_bound)));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify { path, json } => verify(path, json),
        Command::Spectrum { p, json } => spectrum(p, json),
        Command::Bounds { p, json } => bounds(p, json),
        Command::Search(a) => search(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
