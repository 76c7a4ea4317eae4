//! `heisvir`: batch front end for the `heisvir-core` engine.
//!
//! Every command prints a short plain-text summary; `--json PATH` also writes
//! a machine-readable report. Exit status: 0 success, 2 parse error,
//! 3 proof violation, 4 search exhausted, 1 anything else.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heisvir_core::decide::{decide_with_samples, Witness};
use heisvir_core::reduction::{reduce_dense, reduce_discrete};
use heisvir_core::singular::singular_search;
use heisvir_core::{
    bracket, transport_highest_weight, AlgebraElement, Error, FieldScalar, Generator, HighestWeight,
    OrderClass, OrderKind, OrderedGroup, ReductionTrace, VectorSampler, Verdict, VermaModule, DEFAULT_MAX_LEVEL,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "heisvir", version, about = "Verma modules over generalized Heisenberg-Virasoro algebras")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Built-in group: int, zsqrt2-real, zsqrt2-lex.
    #[arg(long, global = true, default_value = "int")]
    group: String,
    /// Radicand d of ℚ(√d) for a custom group (with --generator).
    #[arg(long, global = true)]
    radicand: Option<u64>,
    /// Generator of a custom group, e.g. `1` or `1/2+√2`. Repeatable.
    #[arg(long = "generator", global = true)]
    generators: Vec<String>,
    /// Order on the group; overrides the preset's order.
    #[arg(long, global = true, value_enum)]
    order: Option<OrderArg>,
    /// Highest weight `h,hI,c,cI,cLI`.
    #[arg(long, global = true, default_value = "0,0,0,0,0")]
    hw: String,
    /// Write a JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    /// Real-number order (same as `real`).
    Natural,
    Real,
    Lex,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two algebra elements.
    Bracket { u: String, v: String },
    /// Action of a generator on a module vector.
    Act { generator: String, vector: String },
    /// Dimensions of the level spaces along the minimal positive element.
    Basis {
        #[arg(long, default_value_t = 5)]
        max_level: i64,
        /// Also list the monomials.
        #[arg(long)]
        list: bool,
    },
    /// Highest weight seen by ℒ[ℤ] through θ_x.
    Transport { x: String },
    /// Singular-vector kernels level by level.
    Singular {
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: i64,
    },
    /// Reduce a weight vector by raising operators (dense: to b·v_h; discrete: into U(ℒ[ℤa])v_h).
    Reduce {
        /// Vector literal; sampled from --seed when omitted.
        vector: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Irreducibility verdict.
    Decide {
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Dense irreducible case: reduce this many sampled vectors as evidence.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

struct Report {
    summary: String,
    json: Value,
}

fn group_from(opts: &GlobalOpts) -> Result<OrderedGroup, Error> {
    let kind = opts.order.map(|o| match o {
        OrderArg::Natural | OrderArg::Real => OrderKind::RealEmbedding,
        OrderArg::Lex => OrderKind::Lexicographic,
    });
    if !opts.generators.is_empty() {
        let generators = opts.generators.iter().map(|g| g.parse()).collect::<Result<Vec<FieldScalar>, _>>()?;
        let radicand = opts
            .radicand
            .unwrap_or_else(|| generators.iter().map(FieldScalar::radicand).max().unwrap_or(1));
        return OrderedGroup::new(radicand, generators, kind.unwrap_or(OrderKind::RealEmbedding));
    }
    let preset = OrderedGroup::preset(&opts.group)
        .ok_or_else(|| Error::Parse { input: opts.group.clone(), message: "unknown group preset".into() })?;
    match kind {
        Some(k) if k != preset.kind() => OrderedGroup::new(preset.radicand(), preset.generators().to_vec(), k),
        _ => Ok(preset),
    }
}

fn group_json(group: &OrderedGroup) -> Value {
    json!({
        "radicand": group.radicand(),
        "generators": group.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "basis": group.basis().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "order": group.kind(),
        "class": match group.classify() {
            OrderClass::Dense => json!("dense"),
            OrderClass::Discrete(a) => json!({"discrete": a.to_string()}),
        },
    })
}

fn trace_json(trace: &ReductionTrace) -> Value {
    serde_json::to_value(&trace.steps).expect("trace steps serialize")
}

fn module_from(opts: &GlobalOpts) -> Result<VermaModule, Error> {
    let hw: HighestWeight = opts.hw.parse()?;
    VermaModule::new(group_from(opts)?, hw)
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Bracket { u, v } => {
            let (a, b): (AlgebraElement, AlgebraElement) = (u.parse()?, v.parse()?);
            let r = bracket(&a, &b)?;
            Ok(Report {
                summary: r.to_string(),
                json: json!({"command": "bracket", "u": a.to_string(), "v": b.to_string(),
                             "result": r.to_string(), "terms": r}),
            })
        }
        Command::Act { generator, vector } => {
            let m = module_from(opts)?;
            let g: Generator = generator.parse()?;
            let v = m.parse_vector(vector)?;
            let r = m.act(&g, &v)?;
            Ok(Report {
                summary: r.to_string(),
                json: json!({"command": "act", "group": group_json(m.group()), "hw": m.hw().to_string(),
                             "generator": g.to_string(), "vector": v.to_string(),
                             "result": r.to_string(), "terms": r}),
            })
        }
        Command::Basis { max_level, list } => {
            let m = module_from(opts)?;
            if *max_level < 1 {
                return Err(Error::Precondition("--max-level must be at least 1".into()));
            }
            let mut levels = Vec::new();
            let mut lines = Vec::new();
            for n in 1..=*max_level {
                let basis = m.basis_at_level(n)?;
                lines.push(format!("level {n}: {}", basis.len()));
                if *list {
                    lines.extend(basis.iter().map(|b| format!("  {b}")));
                }
                levels.push(json!({"level": n, "dimension": basis.len(),
                    "monomials": basis.iter().map(ToString::to_string).collect::<Vec<_>>()}));
            }
            Ok(Report {
                summary: lines.join("\n"),
                json: json!({"command": "basis", "group": group_json(m.group()), "levels": levels}),
            })
        }
        Command::Transport { x } => {
            let group = group_from(opts)?;
            let hw: HighestWeight = opts.hw.parse()?;
            let x = group.element(x.parse()?)?;
            let t = transport_highest_weight(&x, &hw)?;
            Ok(Report {
                summary: t.to_string(),
                json: json!({"command": "transport", "group": group_json(&group), "x": x.to_string(),
                             "hw": hw.to_string(), "result": t.to_string()}),
            })
        }
        Command::Singular { max_level } => {
            let m = module_from(opts)?;
            let a = match m.group().classify() {
                OrderClass::Discrete(a) => a,
                OrderClass::Dense => return Err(Error::Precondition("singular search needs a discrete order".into())),
            };
            let levels = singular_search(&m, &a, *max_level)?;
            let lines: Vec<String> = levels
                .iter()
                .map(|l| {
                    let vs: Vec<String> = l.kernel.iter().map(ToString::to_string).collect();
                    format!("level {} (dim {}): kernel {}", l.level, l.dimension(), if vs.is_empty() {
                        "0".to_string()
                    } else {
                        vs.join("; ")
                    })
                })
                .collect();
            let json_levels: Vec<Value> = levels
                .iter()
                .map(|l| json!({"level": l.level, "dimension": l.dimension(),
                    "kernel": l.kernel.iter().map(ToString::to_string).collect::<Vec<_>>()}))
                .collect();
            Ok(Report {
                summary: lines.join("\n"),
                json: json!({"command": "singular", "group": group_json(m.group()), "hw": m.hw().to_string(),
                             "a": a.to_string(), "levels": json_levels}),
            })
        }
        Command::Reduce { vector, seed } => {
            let m = module_from(opts)?;
            let u = match vector {
                Some(text) => m.parse_vector(text)?,
                None => VectorSampler::new(&m, *seed).next_vector()?,
            };
            let (trace, extra, summary) = if m.group().is_dense() {
                let r = reduce_dense(&m, &u)?;
                let summary = format!("{} reached {} in {} steps", u, r.trace.outcome, r.trace.len());
                (r.trace, json!({"scalar": r.scalar.to_string(), "detours": r.detours}), summary)
            } else {
                let r = reduce_discrete(&m, &u)?;
                let summary = format!("{} reached {} in {} steps", u, r.trace.outcome, r.trace.len());
                (r.trace, json!({"a": r.a.to_string()}), summary)
            };
            Ok(Report {
                summary,
                json: json!({"command": "reduce", "group": group_json(m.group()), "hw": m.hw().to_string(),
                             "input": trace.input.to_string(), "outcome": trace.outcome.to_string(),
                             "details": extra, "trace": trace_json(&trace)}),
            })
        }
        Command::Decide { max_level, seed, samples } => {
            let m = module_from(opts)?;
            let d = decide_with_samples(&m, *max_level, *seed, *samples)?;
            let mut report = json!({"command": "decide", "group": group_json(m.group()), "hw": m.hw().to_string(),
                                    "verdict": d.verdict.name()});
            match &d.verdict {
                Verdict::Irreducible { reason } => report["reason"] = json!(reason),
                Verdict::Reducible { witness, level } => {
                    report["witness"] = json!(witness.vector().to_string());
                    if let Witness::ProperSubmodule { description, .. } = witness {
                        report["reason"] = json!(description);
                    }
                    if let Some(n) = level {
                        report["level"] = json!(n);
                    }
                }
                Verdict::UnknownUpToLevel { level } => report["level"] = json!(level),
                Verdict::ClaimedReducibleNoWitness { note } => report["note"] = json!(note),
            }
            report["trace"] = json!(d.traces.iter().map(trace_json).collect::<Vec<_>>());
            Ok(Report { summary: d.verdict.to_string(), json: report })
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::ProofViolation { .. } => 3,
        Error::SearchExhausted { .. } | Error::StripExhausted { .. } => 4,
        _ => 1,
    }
}

fn write_json(path: &PathBuf, value: &Value) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    std::fs::write(path, text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            println!("{}", report.summary);
            if let Some(path) = &cli.opts.json {
                if let Err(e) = write_json(path, &report.json) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            let mut report = json!({"error": e.to_string(), "exit": exit_code(&e)});
            if let Some(trace) = e.trace() {
                eprintln!("trace from {}:", trace.input);
                for step in &trace.steps {
                    eprintln!("  {:?} {} -> {}", step.phase, step.generator(), step.digest);
                }
                eprintln!("  ended at {}", trace.outcome);
                report["trace"] = trace_json(trace);
                report["outcome"] = json!(trace.outcome.to_string());
            }
            if let Some(path) = &cli.opts.json {
                let _ = write_json(path, &report);
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
