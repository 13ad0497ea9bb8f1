//! Command-line front end. Output goes to the returned string (stdout),
//! diagnostics to stderr; exit codes are 0 on success, 1 on a verification
//! failure and 2 on usage or schema errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::HodgeDiamond;
use crate::engine::{Engine, MiddleTerms, PrimConvention, SplitPlan};
use crate::error::HodgeError;
use crate::io;
use crate::variety::{AmbientSpec, CiSpec, Fill};
use crate::verify::{run_verify, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hodge-ci", version, about = "Hodge numbers of complete intersections by degeneration")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full Hodge diamond of a complete intersection.
    Diamond(SpecArgs),
    /// Limit mixed Hodge structure on the middle cohomology of a degeneration.
    Mhs(SpecArgs),
    /// The memoized recursion DAG.
    Trace(SpecArgs),
    /// Cross-check the recursion against classical oracles over a range.
    Verify(VerifyArgs),
    /// Middle Hodge numbers of the hypersurfaces of degree 1..=max-degree.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Use the full H^0 of a point set as its primitive part.
    FullH0,
}

#[derive(Debug, Args)]
pub struct AmbientArgs {
    /// Built-in ambient, `P<N>`.
    #[arg(long, default_value = "P4", conflicts_with = "ambient_file")]
    pub ambient: String,
    /// Custom ambient file (JSON tower of linear sections).
    #[arg(long)]
    pub ambient_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[command(flatten)]
    pub ambient: AmbientArgs,
    /// Multidegree, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub degrees: Vec<u32>,
    /// Split `d1,d2` of the largest degree for the top degeneration.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub split: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    pub max_degree: u32,
    #[arg(long, default_value_t = 5)]
    pub max_ambient_dim: usize,
    /// Deliberately break the engine to watch verification fail.
    #[arg(long, value_enum)]
    pub inject_fault: Option<Fault>,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub ambient: AmbientArgs,
    #[arg(long, default_value_t = 6)]
    pub max_degree: u32,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(err: impl std::fmt::Display) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {err}\n") }
    }
}

fn load_ambient(args: &AmbientArgs) -> Result<AmbientSpec, HodgeError> {
    match &args.ambient_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| HodgeError::Schema(format!("{}: {e}", path.display())))?;
            io::parse_ambient_file(&text).map_err(|e| match e {
                HodgeError::Schema(m) => HodgeError::Schema(format!("{}: {m}", path.display())),
                other => other,
            })
        }
        None => io::parse_ambient_shorthand(&args.ambient),
    }
}

/// Validated inputs of a spec-based command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: CiSpec,
    pub split: Option<(u32, u32)>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_args(args: &SpecArgs) -> Result<Self, HodgeError> {
        let ambient = Arc::new(load_ambient(&args.ambient)?);
        let spec = CiSpec::new(ambient, args.degrees.clone())?;
        let split = match args.split.as_deref() {
            None => None,
            Some(&[d1, d2]) => {
                let d = spec.degrees.iter().copied().max().unwrap_or(0);
                if d1 == 0 || d2 == 0 || d1 + d2 != d {
                    return Err(HodgeError::Specification(format!(
                        "--split {d1},{d2} must add up to the largest degree {d}"
                    )));
                }
                Some((d1, d2))
            }
            Some(other) => {
                return Err(HodgeError::Specification(format!(
                    "--split takes two degrees, got {other:?}"
                )))
            }
        };
        Ok(Self { spec, split, format: args.format })
    }

    fn plan(&self) -> Result<SplitPlan, HodgeError> {
        match self.split {
            Some((d1, d2)) => SplitPlan::new(&self.spec, d1, d2),
            None => SplitPlan::canonical(&self.spec),
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Diamond(a) => RunConfig::from_args(&a).and_then(|c| cmd_diamond(&c)),
        Command::Mhs(a) => RunConfig::from_args(&a).and_then(|c| cmd_mhs(&c)),
        Command::Trace(a) => RunConfig::from_args(&a).and_then(|c| cmd_trace(&c)),
        Command::Table(a) => cmd_table(&a),
        Command::Verify(a) => return cmd_verify(&a),
    };
    match result {
        Ok(s) => Outcome::ok(s),
        Err(e) => Outcome::usage(e),
    }
}

fn render_diamond(d: &HodgeDiamond, format: Format) -> String {
    match format {
        Format::Pretty => io::render_diamond(d),
        Format::Json => io::diamond_to_json(d) + "\n",
        Format::Csv => io::diamond_to_csv(d),
    }
}

pub fn cmd_diamond(cfg: &RunConfig) -> Result<String, HodgeError> {
    let engine = Engine::new();
    let diamond = match cfg.split {
        Some(_) => Arc::new(engine.diamond_via(&cfg.plan()?)?),
        None => engine.compute_diamond(&cfg.spec)?,
    };
    let mut out = String::new();
    if cfg.format == Format::Pretty {
        writeln!(out, "{} (dim {}, euler characteristic {})", cfg.spec, diamond.dim(), diamond.euler_characteristic()?).unwrap();
    }
    out.push_str(&render_diamond(&diamond, cfg.format));
    Ok(out)
}

const TERM_NAMES: [&str; 5] = ["I2 prim", "V_d1 prim", "V_d2 prim", "I3(-1)", "I2 prim(-1)"];

fn render_terms(plan: &SplitPlan, terms: &MiddleTerms) -> Result<String, HodgeError> {
    let n = plan.dim() as i32;
    let sum = terms.sum()?;
    let mut out = format!(
        "middle formula for {} via {} = {} + {}\n",
        plan.hypersurface, plan.d, plan.d1, plan.d2
    );
    writeln!(out, "  {:>7} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}", "(p,q)", TERM_NAMES[0], TERM_NAMES[1], TERM_NAMES[2], TERM_NAMES[3], TERM_NAMES[4], "h^{p,q}").unwrap();
    for p in (0..=n).rev() {
        let q = n - p;
        let vals = terms.as_array().map(|t| t.get(p, q));
        writeln!(
            out,
            "  {:>7} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
            format!("({p},{q})"),
            vals[0], vals[1], vals[2], vals[3], vals[4],
            sum.get(p, q)
        )
        .unwrap();
    }
    Ok(out)
}

fn terms_json(plan: &SplitPlan, terms: &MiddleTerms) -> serde_json::Value {
    let n = plan.dim() as i32;
    let rows: Vec<_> = (0..=n)
        .rev()
        .map(|p| {
            let q = n - p;
            json!({ "p": p, "q": q, "terms": terms.as_array().map(|t| t.get(p, q)) })
        })
        .collect();
    json!({ "split": [plan.d1, plan.d2], "names": TERM_NAMES, "rows": rows })
}

pub fn cmd_mhs(cfg: &RunConfig) -> Result<String, HodgeError> {
    let engine = Engine::new();
    let plan = cfg.plan()?;
    let mhs = engine.assemble_amhs(&plan)?;
    let terms = engine.middle_terms(&plan)?;
    let smooth = engine.compute_diamond(&cfg.spec)?.middle();
    let graded = mhs.graded_f_dims()?;
    match cfg.format {
        Format::Json => {
            let mut v = serde_json::to_value(io::mhs_json(&mhs)).expect("mhs serializes");
            v["graded_f"] = json!(graded.iter().collect::<Vec<_>>());
            v["hodge"] = json!(smooth.iter().collect::<Vec<_>>());
            v["breakdown"] = terms_json(&plan, &terms);
            Ok(v.to_string() + "\n")
        }
        Format::Csv => {
            let mut out = String::from("weight,p,q,value\n");
            for (w, d) in mhs.pieces() {
                for (p, q, v) in d.iter() {
                    writeln!(out, "{w},{p},{q},{v}").unwrap();
                }
            }
            Ok(out)
        }
        Format::Pretty => {
            let mut out = io::render_mhs(&mhs)?;
            let gr: Vec<String> = graded.iter().rev().map(|(p, d)| format!("Gr_F^{p}={d}")).collect();
            writeln!(out, "  Hodge filtration: {}", gr.join(" ")).unwrap();
            writeln!(out, "  smooth fiber: {}", io::render_table(&smooth)).unwrap();
            out.push_str(&render_terms(&plan, &terms)?);
            Ok(out)
        }
    }
}

pub fn cmd_trace(cfg: &RunConfig) -> Result<String, HodgeError> {
    let engine = Engine::new();
    let trace = engine.trace(&cfg.spec)?;
    let top = match cfg.split {
        Some(_) => {
            let plan = cfg.plan()?;
            let terms = engine.middle_terms(&plan)?;
            Some((plan, terms))
        }
        None => None,
    };
    if cfg.format == Format::Json {
        let nodes: Vec<_> = trace
            .nodes
            .iter()
            .map(|(k, e)| {
                let fill = if *k == trace.root {
                    top.as_ref().map(|(p, _)| Fill::Middle { d: p.d, d1: p.d1, d2: p.d2 }).unwrap_or(e.fill.clone())
                } else {
                    e.fill.clone()
                };
                json!({
                    "key": k.to_string(),
                    "ambient": k.ambient,
                    "shift": k.shift,
                    "degrees": k.degrees,
                    "dim": e.dim,
                    "fill": fill.to_string(),
                    "children": e.children.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut v = json!({ "root": trace.root.to_string(), "depth": trace.depth(), "nodes": nodes });
        if let Some((plan, terms)) = &top {
            v["breakdown"] = terms_json(plan, terms);
        }
        return Ok(v.to_string() + "\n");
    }
    let mut out = format!("{} nodes, depth {}\n", trace.nodes.len(), trace.depth());
    for (k, e) in &trace.nodes {
        let mark = if *k == trace.root { "*" } else { " " };
        let fill = match (&top, *k == trace.root) {
            (Some((p, _)), true) => Fill::Middle { d: p.d, d1: p.d1, d2: p.d2 }.to_string(),
            _ => e.fill.to_string(),
        };
        let children: Vec<String> = e.children.iter().map(|c| c.to_string()).collect();
        write!(out, "{mark} {k:<20} dim {:<2} {fill}", e.dim).unwrap();
        if !children.is_empty() {
            write!(out, "  <- {}", children.join(" ")).unwrap();
        }
        out.push('\n');
    }
    if let Some((plan, terms)) = &top {
        out.push_str(&render_terms(plan, terms)?);
    }
    Ok(out)
}

pub fn cmd_table(args: &TableArgs) -> Result<String, HodgeError> {
    let ambient = Arc::new(load_ambient(&args.ambient)?);
    let engine = Engine::new();
    let n = ambient.dim() as i32 - 1;
    let mut rows = Vec::new();
    for d in 1..=args.max_degree {
        let spec = CiSpec::new(ambient.clone(), vec![d])?;
        let middle = engine.compute_diamond(&spec)?.middle();
        rows.push((d, (0..=n).rev().map(|p| middle.get(p, n - p)).collect::<Vec<_>>()));
    }
    let header: Vec<String> = (0..=n).rev().map(|p| format!("h^{{{p},{}}}", n - p)).collect();
    Ok(match args.format {
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|(d, hs)| json!({ "degree": d, "middle": hs })).collect();
            json!({ "ambient": ambient.id(), "dim": n, "rows": v }).to_string() + "\n"
        }
        Format::Csv => {
            let mut out = format!("degree,{}\n", header.join(","));
            for (d, hs) in &rows {
                let cells: Vec<String> = hs.iter().map(|h| h.to_string()).collect();
                writeln!(out, "{d},{}", cells.join(",")).unwrap();
            }
            out
        }
        Format::Pretty => {
            let mut out = format!("hypersurfaces in {}: middle Hodge numbers\n", ambient.id());
            writeln!(out, "{:>6} {}", "degree", header.iter().map(|h| format!("{h:>14}")).collect::<String>()).unwrap();
            for (d, hs) in &rows {
                writeln!(out, "{d:>6} {}", hs.iter().map(|h| format!("{h:>14}")).collect::<String>()).unwrap();
            }
            out
        }
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> Outcome {
    if args.max_degree < 1 || args.max_ambient_dim < 1 {
        return Outcome::usage("verify ranges must be positive");
    }
    let cfg = VerifyConfig {
        max_degree: args.max_degree,
        max_ambient_dim: args.max_ambient_dim,
        convention: match args.inject_fault {
            Some(Fault::FullH0) => PrimConvention::FullH0,
            None => PrimConvention::Reduced,
        },
    };
    let report = run_verify(&cfg);
    let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    let stdout = match args.format {
        Format::Json => serde_json::to_string(&report).expect("report serializes") + "\n",
        Format::Csv => {
            let mut out = String::from("check,cases,failures\n");
            for c in &report.checks {
                writeln!(out, "{},{},{}", c.name, c.cases, c.failures.len()).unwrap();
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for c in &report.checks {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {:<20} {} cases", c.name, c.cases).unwrap();
                for f in c.failures.iter().take(5) {
                    writeln!(out, "     {f}").unwrap();
                }
            }
            out
        }
    };
    let stderr = if code == EXIT_OK { String::new() } else { "verification failed\n".into() };
    Outcome { code, stdout, stderr }
}
