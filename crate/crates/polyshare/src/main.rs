//! Thin command-line front end over the library; every subcommand parses
//! flags, calls one library pipeline and serializes the result.
//!
//! Exit codes: 0 on success, 1 on domain failures (incompatible family, no
//! extension vector, unauthorized subset), 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use polyshare::enumerate::{build_table, conjecture_scan, enumerate_deltas, GTransform};
use polyshare::error::Error;
use polyshare::represent::BetaSearchFailure;
use polyshare::scheme::{assign_vectors, InstanceFile, ParticipantId, SchemeInstance, ShareBundle};
use polyshare::{
    check_compatibility, classify_instance, default_prime, realize_delta, verify_port,
    DeltaFamily, HierarchyReport, OrderType, Partition, SubsetMask, UniformPolymatroid,
    DEFAULT_BETA_TRIES,
};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "polyshare", version, about = "Multipartite access structures from uniform polymatroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a family is compatible with a polymatroid.
    CheckCompat {
        /// Increment sequence, e.g. 2,1,0,0 (the trailing zero entry is implicit).
        #[arg(long)]
        g: String,
        /// Minimal sets, e.g. "{1};{2,3}".
        #[arg(long)]
        delta: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Minimal authorized vectors of the access structure.
    MinGamma {
        #[arg(long)]
        g: String,
        #[arg(long)]
        delta: String,
        /// Block sizes, e.g. 3,3,3; defaults to g0+1 everywhere.
        #[arg(long)]
        blocks: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Hierarchical preorder, its order type and maximal chain length.
    Hierarchy {
        #[arg(long)]
        g: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        blocks: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Composite pipeline: compatibility, structure, classification.
    Classify {
        #[arg(long)]
        g: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        blocks: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The full classification grid for m blocks.
    Table {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Monotone-family classes up to block relabeling.
    EnumerateDelta {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare hierarchical preorders across same-signature sequences.
    ConjectureScan {
        #[arg(long)]
        m: usize,
        /// Comma-separated transforms, e.g. add1,scale2.
        #[arg(long, default_value = "add1,scale2")]
        amplify: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Build a representation and search for an extension vector.
    Represent {
        #[arg(long)]
        g: String,
        #[arg(long)]
        delta: String,
        /// Field modulus, or `auto` for the smallest prime above 2^m.
        #[arg(long, default_value = "auto")]
        prime: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BETA_TRIES)]
        tries: usize,
    },
    /// Synthesize a verified scheme and deal shares for a secret.
    Share {
        #[arg(long)]
        g: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        blocks: String,
        #[arg(long)]
        secret: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "auto")]
        prime: String,
        #[arg(long, default_value_t = DEFAULT_BETA_TRIES)]
        tries: usize,
        /// Write the reusable instance description here.
        #[arg(long)]
        instance_out: Option<PathBuf>,
        /// Write the share bundle here.
        #[arg(long)]
        bundle_out: Option<PathBuf>,
    },
    /// Pool shares of a participant subset and recover the secret.
    Reconstruct {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        bundle: PathBuf,
        /// Participants as block.index, e.g. "1.1,2.2".
        #[arg(long)]
        set: String,
    },
}

enum Failure {
    Usage(String),
    Domain(Value),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(value)) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
            ExitCode::from(1)
        }
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: Error) -> Failure {
    let mut value = json!({
        "schema_version": SCHEMA_VERSION,
        "error": error_kind(&e),
        "message": e.to_string(),
    });
    match &e {
        Error::Incompatible(v) => {
            value["witness"] = witness_json(v);
        }
        Error::BetaNotFound(BetaSearchFailure::TriesExhausted {
            tries,
            dim_intersection,
            covering,
            ..
        }) => {
            value["tries"] = json!(tries);
            value["dim_intersection"] = json!(dim_intersection);
            value["covering"] = json!(covering.iter().map(mask_list).collect::<Vec<_>>());
        }
        _ => {}
    }
    Failure::Domain(value)
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Incompatible(_) => "incompatible",
        Error::BetaNotFound(_) => "beta-not-found",
        Error::Unauthorized => "unauthorized",
        _ => "domain-error",
    }
}

fn witness_json(v: &polyshare::CompatibilityViolation) -> Value {
    json!({ "condition": v.condition, "X": mask_list(&v.x), "Y": mask_list(&v.y) })
}

fn mask_list(mask: &SubsetMask) -> Vec<usize> {
    mask.members().map(|i| i + 1).collect()
}

fn delta_lists(d: &DeltaFamily) -> Vec<Vec<usize>> {
    d.min_sets().iter().map(mask_list).collect()
}

fn parse_g(s: &str) -> Result<UniformPolymatroid, Failure> {
    let values: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse()).collect();
    let values = values.map_err(|_| Failure::Usage(format!("bad increment sequence `{s}`")))?;
    UniformPolymatroid::from_increments(values).map_err(usage)
}

fn parse_delta(s: &str, m: usize) -> Result<DeltaFamily, Failure> {
    DeltaFamily::parse(s, m).map_err(usage)
}

fn parse_blocks(s: &str, m: usize) -> Result<Partition, Failure> {
    let values: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse()).collect();
    let values = values.map_err(|_| Failure::Usage(format!("bad block sizes `{s}`")))?;
    if values.len() != m {
        return Err(Failure::Usage(format!("expected {m} block sizes, got {}", values.len())));
    }
    Partition::new(values).map_err(usage)
}

fn parse_prime(s: &str, m: usize) -> Result<u64, Failure> {
    if s == "auto" {
        return Ok(default_prime(m));
    }
    s.parse().map_err(|_| Failure::Usage(format!("bad prime `{s}`")))
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn order_type_fields(value: &mut Value, order_type: &OrderType, m: usize) {
    value["type"] = json!(order_type.name());
    if let Some((superior, inferior)) = order_type.layers() {
        value["X"] = json!(mask_list(&superior));
        value["Y"] = json!(mask_list(&inferior));
    }
    if let Ok(code) = order_type.table_code(m) {
        value["code"] = json!(code);
    }
}

fn hierarchy_json(report: &HierarchyReport, m: usize) -> Value {
    let mut value = json!({
        "schema_version": SCHEMA_VERSION,
        "relation": report.relation.rows(),
        "maxChain": report.max_chain,
    });
    order_type_fields(&mut value, &report.order_type, m);
    value
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::CheckCompat { g, delta, format } => {
            let z = parse_g(&g)?;
            let d = parse_delta(&delta, z.m())?;
            match check_compatibility(&z, &d) {
                Ok(()) => {
                    match format {
                        Format::Json | Format::Csv => emit(&json!({
                            "schema_version": SCHEMA_VERSION,
                            "compatible": true,
                        })),
                        Format::Text => println!("compatible"),
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(Error::Incompatible(v)) => {
                    match format {
                        Format::Json | Format::Csv => emit(&json!({
                            "schema_version": SCHEMA_VERSION,
                            "compatible": false,
                            "witness": witness_json(&v),
                        })),
                        Format::Text => println!("incompatible: {v}"),
                    }
                    Ok(ExitCode::from(1))
                }
                Err(e) => Err(domain(e)),
            }
        }

        Command::MinGamma { g, delta, blocks, format } => {
            let z = parse_g(&g)?;
            let d = parse_delta(&delta, z.m())?;
            let blocks = blocks.map(|b| parse_blocks(&b, z.m())).transpose()?;
            let gamma = polyshare::AccessStructure::build(&z, &d, blocks).map_err(domain)?;
            match format {
                Format::Json => emit(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "m": z.m(),
                    "block_sizes": gamma.block_sizes().sizes(),
                    "min_vectors": gamma.min_vectors().iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    for v in gamma.min_vectors() {
                        println!(
                            "{}",
                            v.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
                        );
                    }
                }
                Format::Text => {
                    for v in gamma.min_vectors() {
                        println!("{v}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Hierarchy { g, delta, blocks, format } => {
            let z = parse_g(&g)?;
            let d = parse_delta(&delta, z.m())?;
            let blocks = blocks.map(|b| parse_blocks(&b, z.m())).transpose()?;
            let report = classify_instance(&z, &d, blocks).map_err(domain)?;
            match format {
                Format::Json | Format::Csv => emit(&hierarchy_json(&report, z.m())),
                Format::Text => {
                    for row in report.relation.rows() {
                        println!(
                            "{}",
                            row.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()
                        );
                    }
                    println!("type: {}", report.order_type.name());
                    if let Some((x, y)) = report.order_type.layers() {
                        println!("X: {x}");
                        println!("Y: {y}");
                    }
                    if let Ok(code) = report.order_type.table_code(z.m()) {
                        println!("code: {code}");
                    }
                    println!("max chain: {}", report.max_chain);
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Classify { g, delta, blocks, format } => {
            let z = parse_g(&g)?;
            let d = parse_delta(&delta, z.m())?;
            let blocks = blocks.map(|b| parse_blocks(&b, z.m())).transpose()?;
            match classify_instance(&z, &d, blocks) {
                Ok(report) => {
                    let mut value = json!({
                        "schema_version": SCHEMA_VERSION,
                        "compatible": true,
                        "maxChain": report.max_chain,
                    });
                    order_type_fields(&mut value, &report.order_type, z.m());
                    match format {
                        Format::Json | Format::Csv => emit(&value),
                        Format::Text => {
                            let code = report
                                .order_type
                                .table_code(z.m())
                                .unwrap_or_else(|_| report.order_type.name());
                            println!("compatible; type {} ({code})", report.order_type.name());
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(Error::Incompatible(v)) => {
                    match format {
                        Format::Json | Format::Csv => emit(&json!({
                            "schema_version": SCHEMA_VERSION,
                            "compatible": false,
                            "witness": witness_json(&v),
                        })),
                        Format::Text => println!("incompatible: {v}"),
                    }
                    Ok(ExitCode::from(1))
                }
                Err(e) => Err(domain(e)),
            }
        }

        Command::Table { m, format } => {
            let table = build_table(m).map_err(usage)?;
            match format {
                Format::Json => {
                    let rows: Vec<Value> = table
                        .rows
                        .iter()
                        .zip(&table.cells)
                        .map(|(d, cells)| {
                            json!({
                                "min_delta": delta_lists(d),
                                "cells": cells.iter().map(|c| c.symbol(m)).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    emit(&json!({
                        "schema_version": SCHEMA_VERSION,
                        "m": m,
                        "columns": table.columns.iter().map(|z| z.increments().to_vec()).collect::<Vec<_>>(),
                        "rows": rows,
                    }));
                }
                Format::Csv => {
                    let header: Vec<String> = std::iter::once("min_delta".to_string())
                        .chain(table.columns.iter().map(|z| {
                            z.increments()
                                .iter()
                                .map(|v| v.to_string())
                                .collect::<Vec<_>>()
                                .join(".")
                        }))
                        .collect();
                    println!("{}", header.join(","));
                    for (d, cells) in table.rows.iter().zip(&table.cells) {
                        let mut line = vec![format!("\"{d}\"")];
                        line.extend(cells.iter().map(|c| c.symbol(m)));
                        println!("{}", line.join(","));
                    }
                }
                Format::Text => {
                    let label_width = table
                        .rows
                        .iter()
                        .map(|d| d.to_string().len())
                        .max()
                        .unwrap_or(0)
                        .max(8);
                    for gi in 0..m {
                        let cells: Vec<String> = table
                            .columns
                            .iter()
                            .map(|z| format!("{:>2}", z.increment(gi)))
                            .collect();
                        println!("{:>3} {:<label_width$} {}", "", format!("g{gi}"), cells.join(" "));
                    }
                    for (i, (d, cells)) in table.rows.iter().zip(&table.cells).enumerate() {
                        let symbols: Vec<String> =
                            cells.iter().map(|c| format!("{:>2}", c.symbol(m))).collect();
                        println!(
                            "{:>3} {:<label_width$} {}",
                            i + 1,
                            d.to_string(),
                            symbols.join(" ")
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::EnumerateDelta { m, format } => {
            let classes = enumerate_deltas(m).map_err(usage)?;
            match format {
                Format::Json | Format::Csv => {
                    emit(&json!({
                        "schema_version": SCHEMA_VERSION,
                        "m": m,
                        "count": classes.len(),
                        "classes": classes
                            .iter()
                            .map(|c| json!({
                                "min_delta": delta_lists(&c.representative),
                                "orbit_size": c.orbit_size,
                            }))
                            .collect::<Vec<_>>(),
                    }));
                }
                Format::Text => {
                    for (i, c) in classes.iter().enumerate() {
                        println!("{:>3}: {} (orbit {})", i + 1, c.representative, c.orbit_size);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::ConjectureScan { m, amplify, format } => {
            let transforms: Vec<GTransform> = amplify
                .split(',')
                .map(|t| GTransform::parse(t).map_err(usage))
                .collect::<Result<_, _>>()?;
            let report = conjecture_scan(m, &transforms).map_err(domain)?;
            match format {
                Format::Json | Format::Csv => {
                    let mut value = serde_json::to_value(&report).expect("serializable");
                    value["schema_version"] = json!(SCHEMA_VERSION);
                    emit(&value);
                }
                Format::Text => {
                    println!(
                        "m={} transforms={} pairs_compared={} mismatches={} compatibility_disagreements={}",
                        report.m,
                        report.transforms.join(","),
                        report.pairs_compared,
                        report.mismatches.len(),
                        report.compatibility_disagreements.len()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Represent { g, delta, prime, seed, tries } => {
            let z = parse_g(&g)?;
            let d = parse_delta(&delta, z.m())?;
            let p = parse_prime(&prime, z.m())?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (ext, path) = realize_delta(&z, &d, p, tries, &mut rng).map_err(domain)?;
            verify_port(&ext, &d).map_err(domain)?;
            emit(&json!({
                "schema_version": SCHEMA_VERSION,
                "p": p,
                "ambient_dim": ext.base.ambient_dim(),
                "path": path.label(),
                "seed": seed,
                "eval_points": ext.base.eval_points(),
                "block_bases": ext.base.block_bases().iter().map(|b| b.columns()).collect::<Vec<_>>(),
                "beta": ext.beta,
                "realized_min_delta": delta_lists(&ext.realized_delta),
                "port": { "verified": true, "subsets_checked": 1usize << z.m() },
            }));
            Ok(ExitCode::SUCCESS)
        }

        Command::Share {
            g,
            delta,
            blocks,
            secret,
            seed,
            prime,
            tries,
            instance_out,
            bundle_out,
        } => {
            let z = parse_g(&g)?;
            let d = parse_delta(&delta, z.m())?;
            let blocks = parse_blocks(&blocks, z.m())?;
            let p = parse_prime(&prime, z.m())?;
            let mut master = ChaCha8Rng::seed_from_u64(seed);
            let (ext, _) = realize_delta(&z, &d, p, tries, &mut master).map_err(domain)?;
            let assign_seed: u64 = master.gen();
            let distribute_seed: u64 = master.gen();
            let instance = assign_vectors(&ext, &blocks, assign_seed, 2000).map_err(domain)?;
            let bundle = instance.distribute(secret, distribute_seed).map_err(domain)?;

            let file = instance.to_file();
            if let Some(path) = &instance_out {
                file.save(path)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            if let Some(path) = &bundle_out {
                bundle
                    .save(path)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let labeled: Vec<Value> = instance
                .participants()
                .iter()
                .zip(&bundle.shares)
                .map(|(id, &share)| json!({ "participant": id.to_string(), "value": share }))
                .collect();
            emit(&json!({
                "schema_version": SCHEMA_VERSION,
                "instance": serde_json::to_value(&file).expect("serializable"),
                "bundle": {
                    "p": bundle.p,
                    "secret": bundle.secret,
                    "seed": bundle.seed,
                    "shares": labeled,
                },
            }));
            Ok(ExitCode::SUCCESS)
        }

        Command::Reconstruct { instance, bundle, set } => {
            let file = InstanceFile::load(&instance).map_err(usage)?;
            let scheme = SchemeInstance::from_file(&file).map_err(domain)?;
            let bundle = ShareBundle::load(&bundle).map_err(usage)?;
            if bundle.p != scheme.field().modulus() {
                return Err(Failure::Usage(format!(
                    "bundle modulus {} does not match instance modulus {}",
                    bundle.p,
                    scheme.field().modulus()
                )));
            }
            if bundle.shares.len() != scheme.total_participants() {
                return Err(Failure::Usage(format!(
                    "bundle has {} shares for {} participants",
                    bundle.shares.len(),
                    scheme.total_participants()
                )));
            }
            let subset: Vec<ParticipantId> = set
                .split(',')
                .map(|s| ParticipantId::parse(s).map_err(usage))
                .collect::<Result<_, _>>()?;
            let shares = scheme.shares_for(&bundle, &subset).map_err(usage)?;
            let secret = scheme.reconstruct(&subset, &shares).map_err(domain)?;
            emit(&json!({
                "schema_version": SCHEMA_VERSION,
                "set": subset.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "secret": secret,
            }));
            Ok(ExitCode::SUCCESS)
        }
    }
}
