//! `sendov`: property suites, certified inequality claims, extremal search,
//! and Mahler measures for degree-9 critical-point geometry.
//!
//! Exit codes: 0 success, 1 usage or i/o error, 2 check failure,
//! 3 conjecture-critical finding, 4 certification inconclusive or refuted.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::Serialize;

use sendov_core::certify::{run_claim, ClaimReport, CLAIM_IDS};
use sendov_core::mahler::{mahler_quadrature, MeasureReport};
use sendov_core::metrics::SendovInstance;
use sendov_core::poly::{Polynomial, C64};
use sendov_core::search::extremal_search;
use sendov_core::suite::{emit_report, run_check_suite, SuiteConfig, DEFAULT_IDENTITY_TOL};

#[derive(Parser)]
#[command(name = "sendov", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the property suites over generated instances and emit a report
    /// (JSON body plus CSV row sidecar).
    Check {
        /// Polynomial degree of the generated instances.
        #[arg(long, default_value_t = 9)]
        n: usize,
        /// Number of instances.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Pass threshold for identity residuals.
        #[arg(long, default_value_t = DEFAULT_IDENTITY_TOL)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
        /// Run the suite on a single instance loaded from this JSON file
        /// instead of generating instances.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Worker threads (0 = all cores). Output is identical either way.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Certify the registered positivity claims by interval branch-and-bound.
    Certify {
        /// Comma-separated claim ids (default: all of C1..C8).
        #[arg(long, value_delimiter = ',')]
        claims: Vec<String>,
        #[arg(long, default_value_t = 48)]
        max_depth: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Multistart extremal search for configurations maximizing the
    /// farthest zero-to-critical distance.
    Search {
        #[arg(long, default_value_t = 9)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Mahler measure of a polynomial (quadrature vs closed form), plus the
    /// same report for the scaled polynomial p(z * rho^m).
    Measure {
        /// Polynomial JSON: {"coeffs": [[re, im], ...]} ascending.
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        #[arg(long, default_value_t = 0.25)]
        m: f64,
        #[arg(long, default_value_t = 4096)]
        nodes: usize,
    },
}

#[derive(Serialize)]
struct CertifyOutput {
    max_depth: u32,
    claims: Vec<ClaimReport>,
}

#[derive(Serialize)]
struct MeasureOutput {
    mahler: MeasureReport,
    scaled: ScaledMeasure,
}

#[derive(Serialize)]
struct ScaledMeasure {
    rho: f64,
    m: f64,
    report: MeasureReport,
}

fn main() -> ExitCode {
    // usage errors exit with 1 (clap's default of 2 is reserved for check
    // failures here); --help/--version keep exiting 0
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if err.exit_code() == 0 => {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Check {
            n,
            count,
            seed,
            tol,
            out,
            instance,
            workers,
        } => {
            if workers > 0 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build_global()
                    .context("building worker pool")?;
            }
            let injected = match instance {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    Some(SendovInstance::from_json(&text)?)
                }
                None => None,
            };
            let count = if injected.is_some() { 1 } else { count };
            let config = SuiteConfig {
                seed,
                n,
                count,
                tol,
            };
            let output = run_check_suite(&config, injected)?;
            emit_report(&output, &out)?;
            for agg in &output.report.aggregates {
                println!(
                    "{:32} runs {:6} passes {:6} failures {:3} vacuous {:6} worst {:.3e}",
                    agg.check_id,
                    agg.runs,
                    agg.passes,
                    agg.failures,
                    agg.vacuous,
                    agg.worst_residual
                );
            }
            for finding in &output.report.findings {
                println!(
                    "CONJECTURE-CRITICAL {} instance {:?}: {}",
                    finding.check_id, finding.instance, finding.detail
                );
            }
            if output.report.has_critical_findings() {
                Ok(ExitCode::from(3))
            } else if output.report.has_failures() {
                Ok(ExitCode::from(2))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Certify {
            claims,
            max_depth,
            out,
        } => {
            let ids: Vec<String> = if claims.is_empty() {
                CLAIM_IDS.iter().map(|s| s.to_string()).collect()
            } else {
                claims
            };
            let mut reports = Vec::new();
            for id in &ids {
                let started = std::time::Instant::now();
                let report = run_claim(id, max_depth)?;
                println!(
                    "{id}: {} ({} parts, {} boxes, {:.2}s)",
                    if report.certified {
                        "certified"
                    } else {
                        "NOT certified"
                    },
                    report.parts.len(),
                    report.parts.iter().map(|p| p.boxes).sum::<u64>(),
                    started.elapsed().as_secs_f64()
                );
                for part in &report.parts {
                    if !part.detail.is_empty() {
                        println!("    {}: {}", part.claim, part.detail);
                    }
                }
                reports.push(report);
            }
            let all_ok = reports.iter().all(|r| r.certified);
            let body = serde_json::to_string_pretty(&CertifyOutput {
                max_depth,
                claims: reports,
            })?;
            std::fs::write(&out, body).with_context(|| format!("writing {}", out.display()))?;
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            })
        }
        Command::Search {
            n,
            restarts,
            seed,
            out,
        } => {
            let result = extremal_search(n, restarts, seed)?;
            println!(
                "best I = {:.12} over {} restarts (a index {}, longest empty arc {:.6})",
                result.best_i, result.restarts, result.best_a_index, result.longest_empty_arc
            );
            let body = serde_json::to_string_pretty(&result)?;
            std::fs::write(&out, body).with_context(|| format!("writing {}", out.display()))?;
            if result.conjecture_flag {
                println!("CONJECTURE-CRITICAL: best I exceeds 1 + 1e-6");
                Ok(ExitCode::from(3))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Measure {
            poly,
            rho,
            m,
            nodes,
        } => {
            let text = std::fs::read_to_string(&poly)
                .with_context(|| format!("reading {}", poly.display()))?;
            let p: Polynomial = serde_json::from_str(&text)?;
            let base = mahler_quadrature(&p, nodes)?;
            let scaled_poly = p.compose_affine(C64::new(rho.powf(m), 0.0), C64::new(0.0, 0.0));
            let scaled = mahler_quadrature(&scaled_poly, nodes)?;
            let out = MeasureOutput {
                mahler: base,
                scaled: ScaledMeasure {
                    rho,
                    m,
                    report: scaled,
                },
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
