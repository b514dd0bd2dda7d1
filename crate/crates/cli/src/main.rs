use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use arranger_core::arrangement::{
    affine_equiv_check, build_psi_arrangement, characteristic_polynomial, intersection_lattice, is_nest,
    supersolvable_mchain, LatticeGuard,
};
use arranger_core::io::{
    audit_to_json, certificate_to_json, multi_certificate_to_json, obstruction_to_json, parse_int_graph,
    parse_set_graph,
};
use arranger_core::logderiv::{addition_deletion_audit, decide_freeness, FreenessCertificate};
use arranger_core::multiarr::decide_multi_freeness;
use arranger_core::sweep::{parse_weight_pool, run_sweep, SweepConfig};
use arranger_core::wgraph::SetGraph;
use arranger_core::Error;

const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID_INPUT: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(name = "arranger")]
#[command(about = "Freeness and supersolvability certificates for ψ-graphical arrangements")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide freeness and emit a certificate
    Check { input: PathBuf },
    /// Print the derivation basis of a free arrangement
    Basis { input: PathBuf },
    /// Characteristic polynomial from the intersection lattice
    Charpoly { input: PathBuf },
    /// Maximal chain of modular flats, or null
    Ssolv { input: PathBuf },
    /// Addition-deletion audit along one edge
    Audit {
        input: PathBuf,
        /// Edge as `i,j` (1-based vertices)
        #[arg(long)]
        edge: String,
    },
    /// Multiarrangement pipeline for integer weights
    Multi { input: PathBuf },
    /// Nest test and N-Ish affine equivalence
    Nish { input: PathBuf },
    /// Agreement sweep over all small labeled graphs
    Sweep {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        /// Weight sets, e.g. "∅,{0},{1},{0,1}"
        #[arg(long, default_value = "∅,{0},{1},{0,1}")]
        weights: String,
        /// Size of the random lattice subsample
        #[arg(long, default_value_t = 300)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GuardExceeded { .. } => EXIT_GUARD,
            Error::Verification(_) => EXIT_FAILURE,
            _ => EXIT_INVALID_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INVALID_INPUT,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_graph(path: &Path) -> CliResult<SetGraph> {
    Ok(parse_set_graph(&read(path)?)?)
}

fn parse_edge(s: &str, n: usize) -> CliResult<(usize, usize)> {
    let bad = || Failure {
        code: EXIT_INVALID_INPUT,
        message: format!("--edge expects `i,j` with 1 <= i, j <= {n}, got {s:?}"),
    };
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b == 0 || a > n || b > n {
        return Err(bad());
    }
    Ok((a - 1, b - 1))
}

/// Returns the JSON document and a one-line summary.
fn run(cli: Cli) -> CliResult<(Value, String)> {
    match cli.command {
        Command::Check { input } => {
            let g = load_graph(&input)?;
            let cert = decide_freeness(&g)?;
            let summary = match &cert {
                FreenessCertificate::Free { exponents, .. } => format!("free, exponents {exponents:?}"),
                FreenessCertificate::NotFree { obstruction, .. } => format!("not free: {}", obstruction.kind()),
            };
            Ok((certificate_to_json(&cert, g.num_vertices()), summary))
        }
        Command::Basis { input } => {
            let g = load_graph(&input)?;
            let space = build_psi_arrangement(&g).space().clone();
            match decide_freeness(&g)? {
                FreenessCertificate::Free { ordering, basis, .. } => {
                    let shown: Vec<String> = basis.iter().map(|d| d.display(&space)).collect();
                    let summary = format!("{} basis derivations", shown.len());
                    Ok((json!({"ordering": ordering.one_based(), "basis": shown}), summary))
                }
                FreenessCertificate::NotFree { obstruction, .. } => Ok((
                    json!({"basis": null, "obstruction": obstruction_to_json(&obstruction)}),
                    format!("not free: {}", obstruction.kind()),
                )),
            }
        }
        Command::Charpoly { input } => {
            let g = load_graph(&input)?;
            let lat = intersection_lattice(&build_psi_arrangement(&g), &LatticeGuard::from_env()?)?;
            let chi = characteristic_polynomial(&lat);
            let summary = format!("chi(q) = {chi}");
            Ok((
                json!({
                    "coefficients": chi.descending(),
                    "polynomial": chi.to_string(),
                    "rank_counts": lat.rank_counts(),
                }),
                summary,
            ))
        }
        Command::Ssolv { input } => {
            let g = load_graph(&input)?;
            let a = build_psi_arrangement(&g);
            let lat = intersection_lattice(&a, &LatticeGuard::from_env()?)?;
            let chain = supersolvable_mchain(&lat).map(|c| {
                c.iter()
                    .map(|&x| {
                        let f = lat.flat(x);
                        json!({"rank": f.rank(), "members": f.members.iter().map(|m| m + 1).collect::<Vec<_>>()})
                    })
                    .collect::<Vec<_>>()
            });
            let summary = if chain.is_some() { "supersolvable" } else { "not supersolvable" };
            Ok((
                json!({"hyperplanes": a.displayed_forms(), "mchain": chain}),
                summary.to_string(),
            ))
        }
        Command::Audit { input, edge } => {
            let g = load_graph(&input)?;
            let (u, v) = parse_edge(&edge, g.num_vertices())?;
            match addition_deletion_audit(&g, u, v) {
                Ok(r) => {
                    let summary = format!("subset_holds = {}", r.subset_holds);
                    let mut doc = audit_to_json(&r);
                    doc["status"] = json!("conclusive");
                    Ok((doc, summary))
                }
                Err(Error::AuditInconclusive(reason)) => Ok((
                    json!({"edge": [u + 1, v + 1], "status": "inconclusive", "reason": reason}),
                    "audit inconclusive".to_string(),
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Multi { input } => {
            let g = parse_int_graph(&read(&input)?)?;
            let cert = decide_multi_freeness(&g)?;
            let summary = if cert.is_free() { "multiarrangement free" } else { "multiarrangement not free" };
            Ok((multi_certificate_to_json(&cert), summary.to_string()))
        }
        Command::Nish { input } => {
            let g = load_graph(&input)?;
            let nest = is_nest(g.weights()).map(|w| w.iter().map(|v| v + 1).collect::<Vec<_>>());
            let affine = match affine_equiv_check(&g) {
                Ok(b) => Some(b),
                Err(Error::NotComplete) => None,
                Err(e) => return Err(e.into()),
            };
            let free = decide_freeness(&g)?.is_free();
            let summary = format!("nest: {}, free: {free}", nest.is_some());
            Ok((
                json!({
                    "complete": g.is_complete(),
                    "nest": nest,
                    "affine_equivalent": affine,
                    "free": free,
                }),
                summary,
            ))
        }
        Command::Sweep {
            max_vertices,
            weights,
            samples,
            seed,
        } => {
            let cfg = SweepConfig {
                max_vertices,
                pool: parse_weight_pool(&weights)?,
                samples,
                seed,
            };
            let report = run_sweep(&cfg, &LatticeGuard::from_env()?)?;
            let summary = format!(
                "{} instances, {} disagreements; subsample {}/{} agree",
                report.instances, report.disagreement_count, report.sample_agreeing, report.sample_size
            );
            Ok((report.to_json(&cfg), summary))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((doc, summary)) => {
            let text = serde_json::to_string_pretty(&doc).expect("serializable");
            // A closed pipe (e.g. `| head`) is not an error worth a panic.
            if let Err(e) = writeln!(io::stdout().lock(), "{text}") {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_FAILURE);
                }
            }
            eprintln!("{summary}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
