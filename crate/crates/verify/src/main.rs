use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use towercoh::cohomology::{CohomologyTable, Engine};
use towercoh::tower::TowerSpace;
use towercoh::{Error, Limits};
use verify::collection_file::parse_collection;
use verify::report::{sum_json, Value, EXIT_FAILED, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
use verify::scenarios;

#[derive(Parser)]
#[command(name = "verify", about = "Exact equivariant cohomology on Grassmann-bundle towers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named scenario, or `all`.
    Run {
        scenario: String,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Worker threads.
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        /// Write `ms` as 0 so reports are byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
    },
    /// List the registered scenarios.
    List,
    /// Cohomology of one bundle expression.
    Query {
        /// Tower, e.g. "point(V=4); G(2,V); P(S^2 S1)".
        #[arg(long)]
        space: String,
        /// Bundle expression, e.g. "dual(S1) * O(-H2)".
        #[arg(long)]
        expr: String,
        /// Tensor the bundle with this expression first.
        #[arg(long)]
        twist: Option<String>,
        /// Compute Ext^•(expr, EXT) instead.
        #[arg(long)]
        ext: Option<String>,
        /// Also print the Euler characteristic.
        #[arg(long)]
        euler: bool,
        /// Tensor every group with det V^k.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        det_twist: i32,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Check a collection file.
    Check {
        /// Collection file: a tower line, an optional header, one object per line.
        #[arg(long)]
        collection: String,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Worker threads.
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidArgument(_) | Error::Validation(_) => EXIT_USAGE,
        Error::ResourceLimit(_) => EXIT_RESOURCE,
        _ => EXIT_FAILED,
    }
}

fn fail(e: Error) -> i32 {
    eprintln!("error: {e}");
    error_code(&e)
}

fn engine() -> Result<Engine, Error> {
    Ok(Engine::new(Limits::from_env()?))
}

fn print_table(t: &CohomologyTable) {
    if t.is_zero() {
        println!("all cohomology vanishes");
    }
    for (d, s) in t.groups() {
        let dim = s.total_dim().map(|n| n.to_string()).unwrap_or_else(|e| e.to_string());
        println!("H^{d} = {s}   (dim {dim})");
    }
}

fn run(scenario: &str, json: bool, jobs: usize, no_timing: bool) -> i32 {
    let eng = match engine() {
        Ok(e) => e,
        Err(e) => return fail(e),
    };
    match scenarios::run(scenario, &eng, jobs) {
        None => {
            eprintln!("unknown scenario {scenario:?}; known: all, {}", scenarios::names().join(", "));
            EXIT_USAGE
        }
        Some(Err(e)) => fail(e),
        Some(Ok(report)) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report.to_json(!no_timing)).expect("JSON values serialize"));
            } else {
                print!("{}", report.to_text());
            }
            report.exit_code()
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn query(space: &str, expr: &str, twist: Option<&str>, ext: Option<&str>, euler: bool, det_twist: i32, json: bool) -> Result<i32, Error> {
    let eng = engine()?;
    let x = TowerSpace::parse(space)?;
    let mut e = x.expr(expr)?;
    if let Some(t) = twist {
        e = e.tensor(x.expr(t)?);
    }
    let table = match ext {
        Some(other) => eng.ext_table(&e, &x.expr(other)?, &x)?,
        None => eng.cohomology(&e, &x)?,
    }
    .det_twist(det_twist);
    let chi = if euler { Some(table.euler()?) } else { None };
    if json {
        let mut out = json!({ "space": x.to_string(), "expr": e.to_string(), "table": Value::Table(table.clone()).to_json() });
        if let Some(c) = &chi {
            out["euler"] = json!({ "module": sum_json(c), "dim": c.total_dim()?.to_string() });
        }
        println!("{}", serde_json::to_string_pretty(&out).expect("JSON values serialize"));
    } else {
        println!("{x}  ⊢  {e}");
        print_table(&table);
        if let Some(c) = &chi {
            println!("χ = {c}   (dim {})", c.total_dim()?);
        }
    }
    Ok(EXIT_OK)
}

fn check(path: &str, json: bool, jobs: usize) -> Result<i32, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))?;
    let (x, spec) = parse_collection(&text)?;
    let eng = engine()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let report = pool.install(|| eng.check_collection(&spec, &x))?;
    let verdict = |t: &Result<CohomologyTable, Error>| match t {
        Ok(t) => Value::Table(t.clone()).to_json(),
        Err(e) => json!({ "error": e.to_string() }),
    };
    if json {
        let objects: Vec<_> = report
            .objects
            .iter()
            .map(|o| json!({ "object": spec.objects[o.object].expr.to_string(), "exceptional": o.exceptional, "ext": verdict(&o.table) }))
            .collect();
        let pairs: Vec<_> = report
            .pairs
            .iter()
            .map(|p| json!({ "later": report.labels[p.later], "earlier": report.labels[p.earlier], "vanishes": p.vanishes, "hom": verdict(&p.table) }))
            .collect();
        let out = json!({ "space": x.to_string(), "items": report.labels, "objects": objects, "pairs": pairs, "ok": report.all_ok() });
        println!("{}", serde_json::to_string_pretty(&out).expect("JSON values serialize"));
    } else {
        for o in &report.objects {
            let e = &spec.objects[o.object].expr;
            match &o.table {
                Ok(t) => println!("{} exceptional {e}: Ext^• = {t}", if o.exceptional { "PASS " } else { "FAIL " }),
                Err(err) => println!("ERROR exceptional {e}: {err}"),
            }
        }
        for p in &report.pairs {
            let (l, r) = (&report.labels[p.later], &report.labels[p.earlier]);
            match &p.table {
                Ok(t) => println!("{} Hom^•({l}, {r}) = {t}", if p.vanishes { "PASS " } else { "FAIL " }),
                Err(err) => println!("ERROR Hom^•({l}, {r}): {err}"),
            }
        }
        let failed = report.objects.iter().filter(|o| !o.exceptional).count() + report.pairs.iter().filter(|p| !p.vanishes).count();
        println!("{} items, {} pairs, {failed} failures", report.items.len(), report.pairs.len());
    }
    let resource = report.pairs.iter().any(|p| matches!(p.table, Err(Error::ResourceLimit(_))))
        || report.objects.iter().any(|o| matches!(o.table, Err(Error::ResourceLimit(_))));
    Ok(if report.all_ok() {
        EXIT_OK
    } else if resource {
        EXIT_RESOURCE
    } else {
        EXIT_FAILED
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run { scenario, json, jobs, no_timing } => run(&scenario, json, jobs, no_timing),
        Command::List => {
            for s in scenarios::SCENARIOS {
                println!("{:<18} {}", s.name, s.description);
            }
            EXIT_OK
        }
        Command::Query { space, expr, twist, ext, euler, det_twist, json } => {
            query(&space, &expr, twist.as_deref(), ext.as_deref(), euler, det_twist, json).unwrap_or_else(fail)
        }
        Command::Check { collection, json, jobs } => check(&collection, json, jobs).unwrap_or_else(fail),
    };
    ExitCode::from(code as u8)
}
