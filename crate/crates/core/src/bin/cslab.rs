use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;

use cslab::algebra::Algebra;
use cslab::csl::{csl_check, semiprimary_structure, AlgebraAnalysis};
use cslab::spec_file::{is_module_document, load_algebra, load_module};
use cslab::subcat::quasi_csl_check;
use cslab::{corpus, Error, Guard};

/// Gabriel quivers and converse-of-Schur checks for finite-dimensional algebras.
///
/// An ALGEBRA argument is a path to a JSON document, or `corpus:NAME` for
/// one of the bundled algebras (e.g. `corpus:u2_f2.json`).
#[derive(Parser)]
#[command(name = "cslab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebra (associativity, unit) or a module (module axioms).
    Validate {
        path: String,
        /// Print the validation report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Compute simples, Ext¹ dimensions and the Gabriel quiver.
    Quiver {
        algebra: String,
        /// Write Graphviz DOT here (`-` for stdout).
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        guard: Option<u64>,
    },
    /// Check the converse of Schur's lemma on modules up to a given length.
    Csl {
        algebra: String,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        /// Enumerate modules even when a witness already settles the question.
        #[arg(long)]
        force_exhaustive: bool,
        #[arg(long)]
        guard: Option<u64>,
    },
    /// Decompose the algebra as a product of matrix rings over local rings.
    Structure {
        algebra: String,
        #[arg(long)]
        guard: Option<u64>,
    },
    /// Quasi-simple objects among monomorphisms of GF(p)[t]/(t^n)-modules.
    Subcat {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long)]
        guard: Option<u64>,
    },
}

fn guard(flag: Option<u64>) -> Guard {
    flag.map(Guard).unwrap_or_else(Guard::from_env)
}

fn read_algebra(arg: &str) -> cslab::Result<Algebra> {
    match arg.strip_prefix("corpus:") {
        Some(name) => corpus::load(name),
        None => load_algebra(arg)?.validated(),
    }
}

fn analyse(arg: &str, g: Guard) -> cslab::Result<AlgebraAnalysis> {
    AlgebraAnalysis::new(Arc::new(read_algebra(arg)?), g)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn emit(target: &Path, text: &str) -> cslab::Result<()> {
    if target == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        std::fs::write(target, text).map_err(|source| Error::Io { path: target.display().to_string(), source })
    }
}

fn validate(path: &str, json: bool) -> cslab::Result<u8> {
    if path.strip_prefix("corpus:").is_none() {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
        if is_module_document(&text) {
            return match load_module(path) {
                Ok(m) => {
                    println!("ok: module of dimension {} over {}", m.dim(), m.algebra().label());
                    Ok(0)
                }
                Err(e @ (Error::InvalidModule(_) | Error::NotActionClosed)) => {
                    println!("FAIL: {e}");
                    Ok(1)
                }
                Err(e) => Err(e),
            };
        }
    }
    let algebra = match path.strip_prefix("corpus:") {
        Some(name) => cslab::spec_file::parse_algebra(corpus::text(name)?, name, &corpus::CorpusResolver)?,
        None => load_algebra(path)?,
    };
    let report = algebra.validate();
    if json {
        print!("{}", to_json(&report));
    } else {
        println!("{}", report.describe());
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn quiver(arg: &str, dot: Option<PathBuf>, json: Option<PathBuf>, g: Guard) -> cslab::Result<u8> {
    let an = analyse(arg, g)?;
    let q = &an.quiver;
    let report = q.report();
    let quiet = dot.as_deref() == Some(Path::new("-")) || json.as_deref() == Some(Path::new("-"));
    if !quiet {
        println!("algebra {} (GF({}), dimension {})", report.label, report.p, report.algebra_dim);
        for v in &report.vertices {
            println!("  {}: dim {}, End dim {}", v.name, v.dim, v.end_dim);
        }
        println!("ext dims:");
        for row in &report.ext_dims {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            println!("  {}", cells.join(" "));
        }
        for a in &report.arrows {
            println!("  arrow {} -> {} (ext dim {})", a.source, a.target, a.ext_dim);
        }
        println!("totally disconnected: {}", report.totally_disconnected);
        println!("{}", report.conclusion);
    }
    if let Some(path) = dot {
        emit(&path, &q.to_dot())?;
    }
    if let Some(path) = json {
        emit(&path, &to_json(&report))?;
    }
    Ok(0)
}

fn run(cli: Cli) -> cslab::Result<u8> {
    match cli.command {
        Command::Validate { path, json } => validate(&path, json),
        Command::Quiver { algebra, dot, json, guard: g } => quiver(&algebra, dot, json, guard(g)),
        Command::Csl { algebra, max_length, force_exhaustive, guard: g } => {
            let an = analyse(&algebra, guard(g))?;
            let report = csl_check(&an, max_length, force_exhaustive)?;
            print!("{}", to_json(&report));
            Ok(report.exit_code() as u8)
        }
        Command::Structure { algebra, guard: g } => {
            let report = semiprimary_structure(&analyse(&algebra, guard(g))?)?;
            print!("{}", to_json(&report));
            Ok(if report.matches_quiver && report.dimension_check { 0 } else { 1 })
        }
        Command::Subcat { p, n, max_dim, guard: g } => {
            let report = quasi_csl_check(p, n, max_dim, guard(g))?;
            print!("{}", to_json(&report));
            let c = &report.claims;
            let ok = c.semisimple_pairs_are_basic_sums
                && c.non_semisimple_pairs_have_t_nilpotent
                && c.quasi_csl_holds
                && report.finlen_agreement
                && report.realizations_ok;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::GuardExceeded { .. } => 2,
                Error::TheoremViolation(_) => 1,
                _ => 3,
            })
        }
    }
}
