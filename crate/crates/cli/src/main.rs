use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mfkit::catalog::RingId;
use mfkit::decomp::{mf_decompose_with, DecompConfig};
use mfkit::funcat::{dim_vector_reports, named_functor, Window};
use mfkit::matfac::{MatFac, MatFacJson};
use mfkit_cli::report::{cell, Report, Status};
use mfkit_cli::{emit, suites, usage, Context, Params, UsageError};
use serde::Serialize;

const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "mfkit", version, about = "Matrix factorization verification suites")]
struct Cli {
    /// Characteristic of the coefficient field.
    #[arg(long, global = true, env = "MFKIT_FIELD_CHAR", default_value_t = mfkit::field::DEFAULT_PRIME)]
    field_char: u32,
    /// Number of truncation orders tried before a trace is Undetermined.
    #[arg(long, global = true, env = "MFKIT_TRUNC_BUDGET", default_value_t = 10)]
    trunc_budget: u32,
    /// Largest catalog parameter; each command has its own default.
    #[arg(long, global = true, env = "MFKIT_WINDOW")]
    window: Option<u32>,
    #[arg(long, global = true, env = "MFKIT_SEED", default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true, env = "MFKIT_OUT")]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "MFKIT_FORMAT", value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List or run verification suites.
    Suites {
        #[command(subcommand)]
        action: SuitesAction,
    },
    /// Catalog entries as JSON.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Decompose a factorization read from JSON.
    Decompose {
        /// Input file, `-` for stdin.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Evaluate functors on a window.
    Functor {
        #[command(subcommand)]
        action: FunctorAction,
    },
    /// Check AR sequences.
    Ar {
        #[command(subcommand)]
        action: ArAction,
    },
    /// Hom-dimension tables and AR quivers.
    Emit {
        #[arg(value_enum)]
        kind: EmitKind,
        #[arg(long, value_parser = parse_ring)]
        ring: RingId,
    },
}

#[derive(Subcommand)]
enum SuitesAction {
    List,
    /// Run one suite, or `all`.
    Run { id: String },
}

#[derive(Subcommand)]
enum CatalogAction {
    Dump {
        #[arg(long, value_parser = parse_ring)]
        ring: RingId,
        #[arg(long, default_value_t = 4)]
        max_n: u32,
    },
}

#[derive(Subcommand)]
enum FunctorAction {
    /// Dimension vector of a named functor: H<n>, H1', S<n> over ainf1, G1 over dinf2.
    Eval {
        #[arg(long, value_parser = parse_ring)]
        ring: RingId,
        #[arg(long)]
        functor: String,
    },
}

#[derive(Subcommand)]
enum ArAction {
    Verify {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitKind {
    Homdim,
    Quiver,
}

fn parse_ring(s: &str) -> std::result::Result<RingId, String> {
    s.parse::<RingId>().map_err(|e| e.to_string())
}

struct Output {
    path: Option<PathBuf>,
}

impl Output {
    fn write(&self, text: &str) -> Result<()> {
        match &self.path {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn json<T: Serialize>(&self, v: &T) -> Result<()> {
        self.write(&(serde_json::to_string_pretty(v)? + "\n"))
    }
}

fn summarize(r: &Report) {
    for a in r.assertions.iter().filter(|a| a.status != Status::Pass) {
        eprintln!("{} {:?}: {}", r.suite, a.status, a.id);
        if !a.detail.is_empty() {
            eprintln!("    {}", a.detail);
        }
    }
    eprintln!(
        "{}: {} pass, {} fail, {} undetermined ({} ms)",
        r.suite,
        r.count(Status::Pass),
        r.count(Status::Fail),
        r.count(Status::Undetermined),
        r.elapsed_ms
    );
}

fn require(format: Option<Format>, allowed: &[Format], default: Format) -> Result<Format> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(usage("output format not supported by this command"))
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn run(cli: Cli) -> Result<u8> {
    let ctx = Context::new(Params {
        field_char: cli.field_char,
        trunc_budget: cli.trunc_budget,
        window: cli.window,
        seed: cli.seed,
    })?;
    let out = Output { path: cli.out };
    let fmt = cli.format;
    match cli.command {
        Command::Suites { action: SuitesAction::List } => {
            let f = require(fmt, &[Format::Json, Format::Csv], Format::Csv)?;
            if f == Format::Json {
                let list: Vec<_> = suites::SUITES
                    .iter()
                    .map(|s| serde_json::json!({"id": s.id, "summary": s.summary}))
                    .collect();
                out.json(&list)?;
            } else {
                let text: String = suites::SUITES.iter().map(|s| format!("{}\t{}\n", s.id, s.summary)).collect();
                out.write(&text)?;
            }
            Ok(0)
        }
        Command::Suites { action: SuitesAction::Run { id } } => {
            require(fmt, &[Format::Json], Format::Json)?;
            let ids: Vec<&str> = if id == "all" {
                suites::SUITES.iter().map(|s| s.id).collect()
            } else {
                vec![suites::find(&id)?.id]
            };
            let mut reports = Vec::new();
            for id in ids {
                let r = suites::run_suite(&ctx, id)?;
                summarize(&r);
                reports.push(r);
            }
            let worst = reports.iter().map(Report::status).max().unwrap_or(Status::Pass);
            if reports.len() == 1 {
                out.json(&reports[0])?;
            } else {
                out.json(&reports)?;
            }
            Ok(worst.exit_code() as u8)
        }
        Command::Catalog { action: CatalogAction::Dump { ring, max_n } } => {
            require(fmt, &[Format::Json], Format::Json)?;
            out.json(&ctx.cat.dump(ring, max_n))?;
            Ok(0)
        }
        Command::Decompose { input } => {
            require(fmt, &[Format::Json], Format::Json)?;
            let j: MatFacJson = serde_json::from_str(&read_input(&input)?).map_err(|e| usage(format!("bad factorization JSON: {e}")))?;
            let m = MatFac::from_json(&j).map_err(|e| usage(e.to_string()))?;
            let cfg = DecompConfig {
                seed: ctx.params.seed,
                ..DecompConfig::default()
            };
            let r = mf_decompose_with(&m, &cfg)?;
            out.json(&r.to_json())?;
            Ok(0)
        }
        Command::Functor { action: FunctorAction::Eval { ring, functor } } => {
            let f = require(fmt, &[Format::Json, Format::Csv], Format::Json)?;
            let func = named_functor(&ctx.cat, ring, &functor).map_err(|e| usage(e.to_string()))?;
            let w = Window::standard(&ctx.cat, ring, ctx.window_or(emit::default_window(ring).max(4)));
            let reps = dim_vector_reports(&func, &w, &ctx.cfg)?;
            let dims: Vec<String> = reps.iter().map(cell).collect();
            let undetermined = dims.iter().filter(|d| *d == "?").count();
            if f == Format::Json {
                out.json(&serde_json::json!({"functor": functor, "ring": ring, "labels": w.labels(), "dims": dims}))?;
            } else {
                let text: String = w.labels().iter().zip(&dims).map(|(l, d)| format!("{l},{d}\n")).collect();
                out.write(&format!("label,dim\n{text}"))?;
            }
            Ok(if undetermined > 0 { 2 } else { 0 })
        }
        Command::Ar { action: ArAction::Verify { n } } => {
            require(fmt, &[Format::Json], Format::Json)?;
            let r = suites::ar_report(&ctx, n)?;
            summarize(&r);
            out.json(&r)?;
            Ok(r.status().exit_code() as u8)
        }
        Command::Emit { kind: EmitKind::Homdim, ring } => {
            let f = require(fmt, &[Format::Json, Format::Csv], Format::Csv)?;
            let t = emit::hom_table(&ctx, ring)?;
            match f {
                Format::Json => out.json(&t)?,
                _ => out.write(&t.to_csv())?,
            }
            if t.undetermined > 0 {
                eprintln!("{} undetermined cells rendered as ?", t.undetermined);
                return Ok(2);
            }
            Ok(0)
        }
        Command::Emit { kind: EmitKind::Quiver, ring } => {
            let f = require(fmt, &[Format::Json, Format::Csv, Format::Dot], Format::Dot)?;
            let q = emit::quiver(&ctx, ring)?;
            match f {
                Format::Json => out.json(&q)?,
                Format::Csv => out.write(&q.to_csv())?,
                Format::Dot => out.write(&q.to_dot())?,
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
