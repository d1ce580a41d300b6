//! `qmzv` — exact q-series expansions of q-analogues of multiple zeta
//! values, their quasi-shuffle products, bracket/Okounkov basis
//! conversions, derivative representations, identity verification and
//! exact relation finding.
//!
//! Exit codes: 0 success, 1 usage or malformed input, 2 inadmissible
//! index/argument, 3 product-closure failure, 4 refuted identity or failed
//! internal verification, 5 no solution.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qmzv_core::{
    brackets_to_oz, custom_family_from_json, d_bracket_representation, d_oz_representation,
    indices_up_to_weight, lincomb_expand, lincomb_to_brackets, lincomb_to_json, relation_find,
    verify_identity_flagged, zq_expand, Basis, DExpr, Error, IdentityJson, IdentityStatus, Index,
    LinComb, LinCombJson, PolyFamily, QSeries, Result, StuffleAlgebra,
};

#[derive(Parser)]
#[command(
    name = "qmzv",
    version,
    about = "Exact arithmetic for q-analogues of multiple zeta values",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Highest power of q carried by every expansion (coefficients a_0..a_N).
    /// Falls back to the QMZV_PRECISION environment variable, then 100.
    #[arg(long, global = true)]
    terms: Option<usize>,

    /// Output format: human-readable table or canonical JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Expand Z_Q(index) as an exact power series in q.
    Expand {
        /// Family name (eulerian | okounkov | monomial) or path to a custom
        /// family JSON file.
        #[arg(long, default_value = "eulerian")]
        family: String,
        /// Comma-separated index, e.g. "2,3"; empty for the constant 1.
        #[arg(long, default_value = "")]
        index: String,
    },
    /// Multiply two values, either as raw series or via the quasi-shuffle
    /// product.
    Product {
        #[arg(long, default_value = "eulerian")]
        family: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum)]
        mode: ProductMode,
        /// In stuffle mode, also expand the combination and compare it with
        /// the series product coefficient by coefficient.
        #[arg(long)]
        check: bool,
    },
    /// Rewrite Okounkov values over brackets or vice versa.
    Convert {
        #[arg(long, value_enum)]
        direction: Direction,
        /// Single index to convert (exclusive with --lincomb-file).
        #[arg(long, conflicts_with = "lincomb_file")]
        index: Option<String>,
        /// JSON file holding a combination to convert.
        #[arg(long)]
        lincomb_file: Option<PathBuf>,
    },
    /// Represent the derivative q·d/dq of a single value over its basis.
    #[command(group(ArgGroup::new("target").required(true).args(["oz", "bracket"])))]
    Derive {
        /// d Z(k) written over Okounkov values (entries all ≥ 2).
        #[arg(long)]
        oz: Option<u32>,
        /// d [k] written over brackets, from one splitting of the closed
        /// formula.
        #[arg(long)]
        bracket: Option<u32>,
        /// Splitting "s1,s2" with s1+s2 = k+2 for --bracket (default "1,k+1").
        #[arg(long, requires = "bracket")]
        split: Option<String>,
    },
    /// Check an identity file by exact coefficient comparison.
    Verify {
        /// JSON file: {"lhs": {"d": bool, "lincomb": ...}, "rhs": ...,
        /// "conjectural": bool?}.
        #[arg(long)]
        file: PathBuf,
    },
    /// Solve for an exact linear combination of all indices up to a weight
    /// bound that reproduces a target series.
    FindRelation {
        /// Target: an index as "Z(2,3)" (okounkov), "[2,1]" (brackets) or
        /// "T(2,2)" (monomial), optionally prefixed by "d " for its
        /// derivative.
        #[arg(long)]
        target: String,
        /// Candidate pool: every index of the candidate basis with weight up
        /// to this bound.
        #[arg(long)]
        max_weight: u32,
        /// Basis of the candidate pool (default okounkov).
        #[arg(long, default_value = "okounkov")]
        basis: String,
        /// Run even when the precision is below twice the candidate count.
        #[arg(long)]
        force: bool,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum ProductMode {
    Series,
    Stuffle,
}

#[derive(Copy, Clone, ValueEnum)]
enum Direction {
    OzToBrackets,
    BracketsToOz,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Stable mapping from error kinds to documented exit codes.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Malformed { .. } => 1,
        Error::UnsupportedIndex { .. }
        | Error::NotRepresentable { .. }
        | Error::DegreeTooHigh { .. }
        | Error::NonzeroConstantTerm { .. }
        | Error::VanishesAtOne { .. }
        | Error::OutOfRange { .. }
        | Error::BasisMismatch { .. }
        | Error::UnknownBasis { .. } => 2,
        Error::ClosureFailure { .. } => 3,
        Error::VerificationFailure { .. } | Error::CancellationFailure { .. } => 4,
        Error::NoSolution { .. } => 5,
    }
}

fn resolve_precision(flag: Option<usize>) -> Result<usize> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var("QMZV_PRECISION") {
            Ok(text) => text.trim().parse().map_err(|_| Error::Malformed {
                what: format!("QMZV_PRECISION=`{text}` is not a nonnegative integer"),
            })?,
            Err(_) => 100,
        },
    };
    if n < 1 {
        return Err(Error::OutOfRange {
            what: "precision must be at least 1".into(),
        });
    }
    Ok(n)
}

/// A built-in family name, or a path to a custom family JSON file.
fn resolve_family(selector: &str) -> Result<PolyFamily> {
    if let Ok(basis) = Basis::parse(selector) {
        return PolyFamily::for_basis(&basis);
    }
    let path = Path::new(selector);
    if path.exists() {
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("custom");
        return custom_family_from_json(name, &read_file(path)?);
    }
    Err(Error::UnknownBasis {
        name: selector.to_string(),
    })
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Malformed {
        what: format!("cannot read {}: {e}", path.display()),
    })
}

fn parse_index(text: &str) -> Result<Index> {
    text.parse()
}

#[derive(Serialize)]
struct SeriesOutput {
    precision: usize,
    coefficients: Vec<String>,
}

fn print_series(series: &QSeries, format: Format) {
    match format {
        Format::Table => {
            for (n, c) in series.coeffs().iter().enumerate() {
                println!("{n}: {}", qmzv_core::rational_string(c));
            }
        }
        Format::Json => {
            let out = SeriesOutput {
                precision: series.precision(),
                coefficients: series
                    .coeffs()
                    .iter()
                    .map(qmzv_core::rational_string)
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
}

fn print_lincomb(lc: &LinComb, format: Format) {
    match format {
        Format::Table => println!("{lc}"),
        Format::Json => println!("{}", lincomb_to_json(lc)),
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let precision = resolve_precision(cli.terms)?;
    match &cli.command {
        Command::Expand { family, index } => {
            let family = resolve_family(family)?;
            let idx = parse_index(index)?;
            let series = zq_expand(&family, &idx, precision)?;
            print_series(&series, cli.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Product {
            family,
            left,
            right,
            mode,
            check,
        } => {
            let family = resolve_family(family)?;
            let l = parse_index(left)?;
            let r = parse_index(right)?;
            match mode {
                ProductMode::Series => {
                    let series =
                        &zq_expand(&family, &l, precision)? * &zq_expand(&family, &r, precision)?;
                    print_series(&series, cli.format);
                    Ok(ExitCode::SUCCESS)
                }
                ProductMode::Stuffle => {
                    let algebra = StuffleAlgebra::new(family.clone());
                    let combination = algebra.stuffle_product(&l, &r)?;
                    let verified_to = if *check {
                        let direct = &zq_expand(&family, &l, precision)?
                            * &zq_expand(&family, &r, precision)?;
                        let expanded = lincomb_expand(&family, &combination, precision)?;
                        if let Some(e) =
                            (0..=precision).find(|&i| direct.coeff(i) != expanded.coeff(i))
                        {
                            return Err(Error::VerificationFailure {
                                context: format!(
                                    "quasi-shuffle expansion of ({l}) · ({r}) against the series product"
                                ),
                                exponent: e,
                            });
                        }
                        Some(precision)
                    } else {
                        None
                    };
                    match cli.format {
                        Format::Table => {
                            println!("{combination}");
                            if let Some(n) = verified_to {
                                println!("check: matches the series product to q^{n}");
                            }
                        }
                        Format::Json => {
                            #[derive(Serialize)]
                            struct ProductOutput {
                                combination: LinCombJson,
                                #[serde(skip_serializing_if = "Option::is_none")]
                                verified_to: Option<usize>,
                            }
                            let out = ProductOutput {
                                combination: LinCombJson::from_lincomb(&combination),
                                verified_to,
                            };
                            println!("{}", serde_json::to_string_pretty(&out).unwrap());
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Convert {
            direction,
            index,
            lincomb_file,
        } => {
            let input: LinComb = match (index, lincomb_file) {
                (Some(text), None) => {
                    let idx = parse_index(text)?;
                    let basis = match direction {
                        Direction::OzToBrackets => Basis::Okounkov,
                        Direction::BracketsToOz => Basis::Eulerian,
                    };
                    LinComb::term(basis, qmzv_core::rat_int(1), idx)
                }
                (None, Some(path)) => qmzv_core::lincomb_from_json(&read_file(path)?)?,
                _ => {
                    return Err(Error::Malformed {
                        what: "pass exactly one of --index or --lincomb-file".into(),
                    })
                }
            };
            let output = match direction {
                Direction::OzToBrackets => {
                    lincomb_to_brackets(&PolyFamily::okounkov(), &input)?
                }
                Direction::BracketsToOz => brackets_to_oz(&input)?,
            };
            print_lincomb(&output, cli.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Derive { oz, bracket, split } => {
            let representation = match (oz, bracket) {
                (Some(k), None) => d_oz_representation(*k)?,
                (None, Some(k)) => {
                    let (s1, s2) = match split {
                        Some(text) => {
                            let parts = parse_index(text)?;
                            match parts.entries() {
                                &[s1, s2] => (s1, s2),
                                _ => {
                                    return Err(Error::Malformed {
                                        what: format!(
                                            "--split takes exactly two entries, got `{text}`"
                                        ),
                                    })
                                }
                            }
                        }
                        None => (1, k + 1),
                    };
                    d_bracket_representation(k + 2, s1, s2)?
                }
                _ => unreachable!("clap enforces exactly one of --oz/--bracket"),
            };
            print_lincomb(&representation, cli.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file } => {
            let doc = IdentityJson::parse(&read_file(file)?)?;
            let lhs: DExpr = doc.lhs.to_dexpr()?;
            let rhs = doc.rhs.to_lincomb()?;
            let record = verify_identity_flagged(&lhs, &rhs, precision, doc.conjectural)?;
            match cli.format {
                Format::Table => println!("{}", record.status_label()),
                Format::Json => {
                    #[derive(Serialize)]
                    struct VerifyOutput {
                        status: &'static str,
                        checked_precision: usize,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        mismatch_exponent: Option<usize>,
                        label: String,
                    }
                    let (status, mismatch) = match &record.status {
                        IdentityStatus::Verified => ("verified", None),
                        IdentityStatus::Conjectural => ("conjectural", None),
                        IdentityStatus::Refuted { exponent } => ("refuted", Some(*exponent)),
                    };
                    let out = VerifyOutput {
                        status,
                        checked_precision: record.checked_precision,
                        mismatch_exponent: mismatch,
                        label: record.status_label(),
                    };
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            if matches!(record.status, IdentityStatus::Refuted { .. }) {
                Ok(ExitCode::from(4))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::FindRelation {
            target,
            max_weight,
            basis,
            force,
        } => {
            let candidate_family = resolve_family(basis)?;
            let (derived, target_family, idx) = parse_target(target)?;
            let mut series = zq_expand(&target_family, &idx, precision)?;
            if derived {
                series = series.q_derive();
            }
            let candidates = indices_up_to_weight(&candidate_family, *max_weight);
            if !force && precision < 2 * candidates.len() {
                return Err(Error::OutOfRange {
                    what: format!(
                        "precision {precision} is below the safety margin of 2 × {} candidates = {}; raise --terms or pass --force",
                        candidates.len(),
                        2 * candidates.len()
                    ),
                });
            }
            let outcome = relation_find(&candidate_family, &series, &candidates, precision, *force)?;
            match cli.format {
                Format::Table => {
                    println!("{}", outcome.combination);
                    if outcome.kernel_dim > 0 {
                        println!(
                            "kernel dimension: {} (the candidate pool is linearly dependent; the combination is one valid representative)",
                            outcome.kernel_dim
                        );
                    }
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct RelationOutput {
                        combination: LinCombJson,
                        rank: usize,
                        kernel_dim: usize,
                        checked_precision: usize,
                    }
                    let out = RelationOutput {
                        combination: LinCombJson::from_lincomb(&outcome.combination),
                        rank: outcome.rank,
                        kernel_dim: outcome.kernel_dim,
                        checked_precision: outcome.checked_precision,
                    };
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Parses a find-relation target: an optional `d ` prefix, then an index
/// written with its family's delimiters — `Z(...)` Okounkov, `[...]`
/// brackets, `T(...)` monomial.
fn parse_target(text: &str) -> Result<(bool, PolyFamily, Index)> {
    let trimmed = text.trim();
    let (derived, rest) = match trimmed.strip_prefix("d ").or_else(|| trimmed.strip_prefix("d\t"))
    {
        Some(rest) => (true, rest.trim()),
        None => (false, trimmed),
    };
    let (family, inner) = if let Some(inner) = rest
        .strip_prefix("Z(")
        .and_then(|t| t.strip_suffix(')'))
    {
        (PolyFamily::okounkov(), inner)
    } else if let Some(inner) = rest.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        (PolyFamily::eulerian(), inner)
    } else if let Some(inner) = rest
        .strip_prefix("T(")
        .and_then(|t| t.strip_suffix(')'))
    {
        (PolyFamily::monomial(), inner)
    } else {
        return Err(Error::Malformed {
            what: format!(
                "target `{text}` is not of the form [optional d] Z(...), [...] or T(...)"
            ),
        });
    };
    Ok((derived, family, parse_index(inner)?))
}
