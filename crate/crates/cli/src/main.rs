//! Command-line front end: bound tables, Hilbert tables, spectrahedron
//! analyses, exact certificates, and the named example registry.
//!
//! Exit codes: 0 success or expectation match, 1 expectation mismatch,
//! 2 usage or parse error, 3 solver failure.

use clap::{Parser, Subcommand};
use gramsos::analyze::{analyze, certificate_search, SpectraReport};
use gramsos::bounds::{table_n, table_n_text, TABLE_CASES};
use gramsos::gram::{expand_sos, SosDecomposition};
use gramsos::ideals::{hilbert_table_monomial, hilbert_table_poly, IdealGens, MonomialIdeal};
use gramsos::monomial::Monomial;
use gramsos::poly::parse_poly;
use gramsos::registry::{get as get_example, registry, Expected};
use gramsos::sdp::SdpOptions;
use gramsos::Error;

const EXIT_OK: i32 = 0;
const EXIT_MISMATCH: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_SOLVER: i32 = 3;

#[derive(Parser)]
#[command(name = "gramsos", version, about = "Gram-spectrahedron and Hilbert-function analyses")]
struct Cli {
    /// Output format: text or json
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Seed for every stochastic component
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank bounds N(n,d,2d)-1 with ambient dimensions and Pythagoras numbers
    Bounds {
        /// Number of variables
        #[arg(short)]
        n: Option<usize>,
        /// Total (even) degree 2d
        #[arg(long)]
        deg: Option<usize>,
        /// Emit the full summary table
        #[arg(long)]
        table: bool,
    },
    /// Hilbert function table of an ideal given by generators
    Hilbert {
        /// Number of variables
        #[arg(short)]
        n: usize,
        /// Comma-separated generators (monomials or equal-degree polynomials)
        gens: String,
        /// Largest degree to tabulate
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
    /// Spectrahedron analysis of a decomposition (file or registry key)
    Analyze {
        /// Input file: first line `n=<int>`, then one polynomial per line
        file: Option<String>,
        /// Analyze a registered example instead of a file
        #[arg(long)]
        example: Option<String>,
        /// Also construct an exact dual certificate
        #[arg(long)]
        certify: bool,
        /// Print the exact expansion of the decomposition
        #[arg(long = "dump-f")]
        dump_f: bool,
        /// Number of random probe objectives
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        /// Relative eigenvalue cutoff for numeric ranks
        #[arg(long = "tol-eig")]
        tol_eig: Option<f64>,
        /// Feasibility tolerance of the solver
        #[arg(long = "tol-feas")]
        tol_feas: Option<f64>,
    },
    /// Registry operations
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    /// List all registered example keys
    List,
    /// Run one registered example and compare with its published verdict
    Run { key: String },
    /// Run every registered example
    RunAll,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn classify_error(e: &Error) -> i32 {
    match e {
        Error::Solver(_) | Error::SearchFailed(_) | Error::CertificateInvalid(_) => EXIT_SOLVER,
        _ => EXIT_USAGE,
    }
}

fn run(cli: Cli) -> i32 {
    let json = match cli.format.as_str() {
        "json" => true,
        "text" => false,
        other => {
            eprintln!("unknown format '{}'; use text or json", other);
            return EXIT_USAGE;
        }
    };
    match cli.cmd {
        Cmd::Bounds { n, deg, table } => cmd_bounds(n, deg, table, json),
        Cmd::Hilbert { n, gens, kmax } => cmd_hilbert(n, &gens, kmax, json),
        Cmd::Analyze {
            file,
            example,
            certify,
            dump_f,
            restarts,
            tol_eig,
            tol_feas,
        } => {
            let mut opts = SdpOptions {
                seed: cli.seed,
                ..SdpOptions::default()
            };
            if let Some(t) = tol_eig {
                opts.tol_rank = t;
            }
            if let Some(t) = tol_feas {
                opts.eps_feas = t;
            }
            cmd_analyze(
                file.as_deref(),
                example.as_deref(),
                certify,
                dump_f,
                restarts,
                &opts,
                json,
            )
        }
        Cmd::Examples { action } => {
            let opts = SdpOptions {
                seed: cli.seed,
                ..SdpOptions::default()
            };
            match action {
                ExamplesAction::List => {
                    for e in registry() {
                        println!("{}  {}", e.key, e.description);
                    }
                    EXIT_OK
                }
                ExamplesAction::Run { key } => run_examples(&[key], &opts, json),
                ExamplesAction::RunAll => {
                    let keys: Vec<String> =
                        registry().iter().map(|e| e.key.to_string()).collect();
                    run_examples(&keys, &opts, json)
                }
            }
        }
    }
}

fn cmd_bounds(n: Option<usize>, deg: Option<usize>, table: bool, json: bool) -> i32 {
    let cases: Vec<(usize, usize)> = if table {
        TABLE_CASES.to_vec()
    } else {
        match (n, deg) {
            (Some(n), Some(d)) => vec![(n, d)],
            _ => {
                eprintln!("need either --table or both -n and --deg");
                return EXIT_USAGE;
            }
        }
    };
    match table_n(&cases) {
        Ok(rows) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else {
                print!("{}", table_n_text(&rows));
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{}", e);
            EXIT_USAGE
        }
    }
}

fn cmd_hilbert(n: usize, gens: &str, kmax: usize, json: bool) -> i32 {
    let parts: Vec<&str> = gens
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let polys: Vec<_> = match parts.iter().map(|s| parse_poly(s, n)).collect() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{}", e);
            return EXIT_USAGE;
        }
    };
    // monomial generators (any degrees) go through the monomial machinery;
    // otherwise all generators must share one degree
    let table = if polys.iter().all(|p| p.num_terms() == 1) {
        let monos: Vec<Monomial> = polys
            .iter()
            .map(|p| p.leading_monomial().unwrap().clone())
            .collect();
        match MonomialIdeal::new(n, monos) {
            Ok(ideal) => hilbert_table_monomial(&ideal, kmax),
            Err(e) => {
                eprintln!("{}", e);
                return EXIT_USAGE;
            }
        }
    } else {
        let d = polys[0].degree();
        match IdealGens::new(n, d, polys) {
            Ok(ideal) => hilbert_table_poly(&ideal, kmax),
            Err(e) => {
                eprintln!("{}", e);
                return EXIT_USAGE;
            }
        }
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&table.to_json()).unwrap());
    } else {
        print!("{}", table.to_text());
    }
    EXIT_OK
}

fn read_input_file(path: &str) -> Result<SosDecomposition, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path, e))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let first = lines.next().ok_or_else(|| "empty input file".to_string())?;
    let n: usize = first
        .trim()
        .strip_prefix("n=")
        .ok_or_else(|| "first line must be n=<int>".to_string())?
        .trim()
        .parse()
        .map_err(|e| format!("bad variable count: {}", e))?;
    let mut polys = Vec::new();
    for line in lines {
        polys.push(parse_poly(line, n).map_err(|e| e.to_string())?);
    }
    SosDecomposition::new(polys).map_err(|e| e.to_string())
}

fn print_report(report: &SpectraReport) {
    println!("t_star            = {:.3e}", report.t_star);
    println!("boundary          = {:?}", report.boundary_status);
    println!("sphere minimum    = {:.6e}", report.sphere_min);
    println!("strictly positive = {}", report.strictly_positive);
    println!("max rank          = {}", report.max_rank);
    println!("unique point      = {}", report.unique_point);
    println!("seed              = {}", report.seed);
}

fn matches_expected(report: &SpectraReport, exp: &Expected) -> bool {
    report.on_boundary == exp.on_boundary
        && report.strictly_positive == exp.strictly_positive
        && report.max_rank == exp.max_rank
        && report.unique_point == exp.unique_point
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    file: Option<&str>,
    example: Option<&str>,
    certify: bool,
    dump_f: bool,
    restarts: usize,
    opts: &SdpOptions,
    json: bool,
) -> i32 {
    let (decomposition, expected) = match (file, example) {
        (None, Some(key)) => match get_example(key) {
            Ok(e) => (e.decomposition, Some(e.expected)),
            Err(e) => {
                eprintln!("{}", e);
                return EXIT_USAGE;
            }
        },
        (Some(path), None) => match read_input_file(path) {
            Ok(d) => (d, None),
            Err(e) => {
                eprintln!("{}", e);
                return EXIT_USAGE;
            }
        },
        _ => {
            eprintln!("need exactly one of an input file or --example");
            return EXIT_USAGE;
        }
    };
    if dump_f {
        println!("f = {}", expand_sos(&decomposition));
    }
    let report = match analyze(&decomposition, opts, restarts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}", e);
            return classify_error(&e);
        }
    };
    let certificate = if certify {
        let n = decomposition.n;
        let probes: Vec<Monomial> = (0..n)
            .map(|i| Monomial::var_pow(n, i, decomposition.d as u32))
            .collect();
        match certificate_search(&decomposition.polys, &probes) {
            Ok(cert) => Some(cert),
            Err(e) => {
                eprintln!("{}", e);
                return classify_error(&e);
            }
        }
    } else {
        None
    };
    if json {
        let mut doc = report.to_json();
        if let Some(cert) = &certificate {
            doc["certificate"] = cert.to_json();
        }
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        print_report(&report);
        if let Some(cert) = &certificate {
            print!("{}", cert.transcript());
        }
    }
    match expected {
        Some(exp) if !matches_expected(&report, &exp) => {
            eprintln!(
                "mismatch: expected boundary={} positive={} rank={} unique={}",
                exp.on_boundary, exp.strictly_positive, exp.max_rank, exp.unique_point
            );
            EXIT_MISMATCH
        }
        _ => EXIT_OK,
    }
}

fn run_examples(keys: &[String], opts: &SdpOptions, json: bool) -> i32 {
    let mut all_match = true;
    let mut rows = Vec::new();
    for key in keys {
        let e = match get_example(key) {
            Ok(e) => e,
            Err(err) => {
                eprintln!("{}", err);
                return EXIT_USAGE;
            }
        };
        match analyze(&e.decomposition, opts, 8) {
            Ok(report) => {
                let ok = matches_expected(&report, &e.expected);
                all_match &= ok;
                rows.push((key.clone(), e.expected, report, ok));
            }
            Err(err) => {
                eprintln!("{}: {}", key, err);
                return classify_error(&err);
            }
        }
    }
    if json {
        let v: Vec<serde_json::Value> = rows
            .iter()
            .map(|(key, exp, report, ok)| {
                serde_json::json!({
                    "key": key,
                    "expected": exp,
                    "computed": report.to_json(),
                    "match": ok,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!(
            "{:<10} {:>9} {:>7} {:>9} {:>7}  {}",
            "key", "boundary", "rank", "unique", "match", "(expected rank/unique)"
        );
        for (key, exp, report, ok) in &rows {
            println!(
                "{:<10} {:>9} {:>7} {:>9} {:>7}  ({}/{})",
                key,
                report.on_boundary,
                report.max_rank,
                report.unique_point,
                if *ok { "yes" } else { "NO" },
                exp.max_rank,
                exp.unique_point
            );
        }
    }
    if all_match {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}
