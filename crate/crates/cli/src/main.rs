use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cleansdim_core::clean::{CleanGraph, Variant};
use cleansdim_core::export::{self, Which};
use cleansdim_core::graph::diameter;
use cleansdim_core::ring::{
    build_ring_with, catalog, BuildOptions, FiniteRing, RingElement, RingSpec,
};
use cleansdim_core::solver::{sdim_with_oracle, DEFAULT_ORACLE_BOUND, MAX_ORACLE_BOUND};
use cleansdim_core::srg::{strong_resolving_graph, verify_srg_structure};
use cleansdim_core::theory::registry::Registry;
use cleansdim_core::theory::report::{to_json, write_csv, Summary};
use cleansdim_core::theory::{run_verification, ClaimStatus, Inventory, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "cleansdim",
    version,
    about = "Clean graphs of finite commutative rings and their strong metric dimension"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Order, idempotents, units and local structure of a ring.
    RingInfo {
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build Cl(R) or Cl2(R) and print its basic shape.
    Graph {
        spec: String,
        #[arg(long, default_value = "cl")]
        variant: Variant,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Strong resolving graph of Cl(R) or Cl2(R) with the structure check.
    Srg {
        spec: String,
        #[arg(long, default_value = "cl")]
        variant: Variant,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Strong metric dimension, from the SR-graph and, on small graphs, the brute-force oracle.
    Sdim {
        spec: String,
        #[arg(long, default_value = "cl")]
        variant: Variant,
        #[arg(long, env = "CLEANSDIM_ORACLE_BOUND", default_value_t = DEFAULT_ORACLE_BOUND,
              value_parser = parse_oracle_bound)]
        oracle_bound: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check closed forms against computation over a suite or given rings.
    Verify {
        /// table1, products-small or all. Defaults to all when no --ring is given.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long)]
        ring: Vec<String>,
        /// Writes report.json and report.csv here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, env = "CLEANSDIM_ORACLE_BOUND", default_value_t = DEFAULT_ORACLE_BOUND,
              value_parser = parse_oracle_bound)]
        oracle_bound: usize,
        /// Expected-mismatch registry (JSON) replacing the built-in one.
        #[arg(long)]
        registry: Option<PathBuf>,
    },
    /// Write a graph as DOT or JSON.
    Export {
        spec: String,
        #[arg(long, default_value = "cl")]
        which: Which,
        #[arg(long, value_enum, default_value = "dot")]
        format: ExportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the named rings and default product battery.
    Catalog,
}

fn parse_oracle_bound(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if !(4..=MAX_ORACLE_BOUND).contains(&v) {
        return Err(format!(
            "oracle bound must be between 4 and {MAX_ORACLE_BOUND}"
        ));
    }
    Ok(v)
}

fn load(spec: &str) -> Result<(String, FiniteRing), String> {
    let parsed: RingSpec = spec.parse().map_err(|e| format!("{e}\n  {spec}"))?;
    let ring = build_ring_with(&parsed, &BuildOptions::default()).map_err(|e| e.to_string())?;
    Ok((parsed.to_string(), ring))
}

fn list(ring: &FiniteRing, xs: &[RingElement]) -> String {
    xs.iter()
        .map(|&x| ring.name(x))
        .collect::<Vec<_>>()
        .join(", ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ring_info(spec: &str, format: Format) -> Result<ExitCode, String> {
    let (name, r) = load(spec)?;
    let inv = Inventory::of(&r).map_err(|e| e.to_string())?;
    let classes = r.classify_units();
    let names = |xs: &[RingElement]| {
        xs.iter()
            .map(|&x| r.name(x).to_string())
            .collect::<Vec<_>>()
    };
    match format {
        Format::Json => {
            let doc = json!({
                "ring": name,
                "inventory": inv,
                "idempotents": names(r.idempotents()),
                "orthogonal_idempotents": names(&r.max_orthogonal_idempotents()),
                "units": names(r.units()),
                "involutory_units": names(&classes.involutory),
                "non_involutory_units": names(&classes.non_involutory),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            println!("ring: {name}");
            println!("order: {}", inv.order);
            println!(
                "idempotents ({}): {}",
                inv.idempotents,
                list(&r, r.idempotents())
            );
            println!("  |Id*|: {}", inv.nontrivial_idempotents);
            println!(
                "  largest orthogonal family ({}): {}",
                inv.orthogonal_idempotents,
                list(&r, &r.max_orthogonal_idempotents())
            );
            println!("units ({}): {}", inv.units, list(&r, r.units()));
            println!(
                "  U' ({}): {}",
                classes.involutory.len(),
                list(&r, &classes.involutory)
            );
            println!(
                "  U'' ({}): {}",
                classes.non_involutory.len(),
                list(&r, &classes.non_involutory)
            );
            println!("local: {}", yes_no(inv.is_local));
            println!("field: {}", yes_no(inv.is_field));
            println!("reduced: {}", yes_no(inv.is_reduced));
            println!("local factors n: {}", inv.local_factors);
        }
        Format::Dot => return Err("dot output is only available for graph, srg and export".into()),
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_graph(g: &CleanGraph, r: &FiniteRing, ring: &str, which: Which, format: Format) {
    match format {
        Format::Dot => print!(
            "{}",
            export::to_dot(g, r, &format!("{}({ring})", which.name()))
        ),
        Format::Json => print!("{}", export::to_json(g, r, ring, which.name())),
        Format::Text => unreachable!(),
    }
}

fn graph(spec: &str, variant: Variant, format: Format) -> Result<ExitCode, String> {
    let (name, r) = load(spec)?;
    let g = variant.build(&r);
    let which = match variant {
        Variant::Cl => Which::Cl,
        Variant::Cl2 => Which::Cl2,
    };
    if let Format::Text = format {
        println!("ring: {name}");
        println!("graph: {variant}");
        println!("vertices: {}", g.order());
        println!("edges: {}", g.edge_count());
        println!("connected: {}", yes_no(g.is_connected()));
        println!("complete: {}", yes_no(g.is_complete()));
        println!("diameter: {}", diameter(&g));
    } else {
        emit_graph(&g, &r, &name, which, format);
    }
    Ok(ExitCode::SUCCESS)
}

fn srg(spec: &str, variant: Variant, format: Format) -> Result<ExitCode, String> {
    let (name, r) = load(spec)?;
    let g = variant.build(&r);
    let sr = strong_resolving_graph(&g).map_err(|e| format!("{variant}({name}): {e}"))?;
    let which = match variant {
        Variant::Cl => Which::ClSrg,
        Variant::Cl2 => Which::Cl2Srg,
    };
    if let Format::Text = format {
        let report = verify_srg_structure(&r);
        let outcome = match variant {
            Variant::Cl => report.cl,
            Variant::Cl2 => report.cl2,
        };
        println!("ring: {name}");
        println!("graph: {variant}");
        println!("vertices: {}", g.order());
        println!("mmd pairs: {}", sr.mmd_pairs.len());
        println!("boundary: {}", sr.boundary.len());
        println!("sr-graph edges: {}", sr.srg.edge_count());
        println!("structure: {outcome}");
    } else {
        emit_graph(&sr.srg, &r, &name, which, format);
    }
    Ok(ExitCode::SUCCESS)
}

fn sdim(spec: &str, variant: Variant, bound: usize, format: Format) -> Result<ExitCode, String> {
    let (name, r) = load(spec)?;
    let g = variant.build(&r);
    let rep = sdim_with_oracle(&g, bound).map_err(|e| format!("{variant}({name}): {e}"))?;
    let agree = rep.oracle_size().is_none_or(|o| o == rep.sdim);
    let method = match (rep.oracle_ran, agree) {
        (false, _) => "srg",
        (true, true) => "both-agree",
        (true, false) => "disagree",
    };
    let render = |xs: &[usize]| {
        xs.iter()
            .map(|&i| g.label(i).render(&r))
            .collect::<Vec<_>>()
            .join(" ")
    };
    match format {
        Format::Json => {
            let doc = json!({ "ring": name, "variant": variant, "method": method, "report": rep });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            println!("ring: {name}");
            println!("graph: {variant} ({} vertices)", rep.vertices);
            println!("sdim: {}", rep.sdim);
            println!("method: {method}");
            println!(
                "sr-graph: {} vertices, {} edges, alpha {}, beta {}",
                rep.srg_vertices, rep.srg_edges, rep.alpha_srg, rep.beta_srg
            );
            println!("vertex cover: {}", render(&rep.vertex_cover));
            match &rep.resolving_set {
                Some(set) => println!("oracle resolving set ({}): {}", set.len(), render(set)),
                None => println!(
                    "oracle: skipped ({} vertices > bound {bound})",
                    rep.vertices
                ),
            }
        }
        Format::Dot => return Err("dot output is only available for graph, srg and export".into()),
    }
    Ok(if agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn verify(
    suites: &[String],
    rings: &[String],
    out_dir: Option<&Path>,
    jobs: Option<usize>,
    oracle_bound: usize,
    registry: Option<&Path>,
) -> Result<ExitCode, String> {
    let mut specs = Vec::new();
    let suites: Vec<String> = if suites.is_empty() && rings.is_empty() {
        vec!["all".into()]
    } else {
        suites.to_vec()
    };
    for s in &suites {
        specs.extend(catalog::suite(s).ok_or_else(|| {
            format!("unknown suite `{s}` (expected table1, products-small or all)")
        })?);
    }
    for r in rings {
        specs.push(r.parse::<RingSpec>().map_err(|e| format!("{e}\n  {r}"))?);
    }
    specs.sort_by_key(|s| s.to_string());
    specs.dedup_by_key(|s| s.to_string());
    if jobs == Some(0) {
        return Err("--jobs must be at least 1".into());
    }
    let registry = match registry {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Registry::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => Registry::builtin(),
    };
    let opts = VerifyOptions {
        oracle_bound,
        jobs,
        registry,
        ..VerifyOptions::default()
    };
    let reports = run_verification(&specs, &opts);

    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        let json = to_json(&reports).map_err(|e| e.to_string())?;
        let json_path = dir.join("report.json");
        fs::write(&json_path, json + "\n").map_err(|e| format!("{}: {e}", json_path.display()))?;
        let csv_path = dir.join("report.csv");
        let file =
            fs::File::create(&csv_path).map_err(|e| format!("{}: {e}", csv_path.display()))?;
        write_csv(&reports, file).map_err(|e| format!("{}: {e}", csv_path.display()))?;
    }

    // Write errors (closed pipe) are ignored; the exit code still reports the outcome.
    let mut out = std::io::stdout().lock();
    for rep in &reports {
        if let Some(e) = &rep.error {
            let _ = writeln!(out, "{}: ERROR {e}", rep.ring);
            continue;
        }
        let count = |s: ClaimStatus| rep.claims.iter().filter(|c| c.status == s).count();
        let _ = writeln!(
            out,
            "{}: {} match, {} mismatch, {} skipped",
            rep.ring,
            count(ClaimStatus::Match),
            count(ClaimStatus::Mismatch),
            count(ClaimStatus::Skipped)
        );
        for c in rep
            .claims
            .iter()
            .filter(|c| c.status == ClaimStatus::Mismatch)
        {
            let tag = if c.registered {
                "registered"
            } else {
                "UNREGISTERED"
            };
            let witness = c.witness.as_deref().unwrap_or("");
            let _ = writeln!(out, "  MISMATCH {} ({tag}): {witness}", c.id);
        }
    }
    let s = Summary::of(&reports);
    let _ = writeln!(
        out,
        "summary: {} rings, {} match, {} registered mismatch, {} unregistered mismatch, {} skipped, {} errors",
        reports.len(),
        s.matched,
        s.registered,
        s.mismatched,
        s.skipped,
        s.errors
    );
    Ok(if !s.passed() {
        ExitCode::from(1)
    } else if s.errors > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn export_cmd(
    spec: &str,
    which: Which,
    format: ExportFormat,
    output: Option<&Path>,
) -> Result<ExitCode, String> {
    let (name, r) = load(spec)?;
    let g = which
        .build(&r)
        .map_err(|e| format!("{}({name}): {e}", which.name()))?;
    let text = match format {
        ExportFormat::Dot => export::to_dot(&g, &r, &format!("{}({name})", which.name())),
        ExportFormat::Json => export::to_json(&g, &r, &name, which.name()),
    };
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn catalog_cmd() -> Result<ExitCode, String> {
    let mut out = std::io::stdout().lock();
    for e in catalog::catalog() {
        let kind = match e.kind {
            catalog::CatalogKind::Local => "local",
            catalog::CatalogKind::Product => "product",
        };
        let r =
            build_ring_with(&e.spec, &BuildOptions::default()).map_err(|err| err.to_string())?;
        let shown = match catalog::lookup(e.name.trim_start_matches("local8/")) {
            Some(underlying) if kind == "local" => format!("{}  = {underlying}", e.name),
            _ => e.name.clone(),
        };
        if writeln!(out, "{kind:<8} {:>3}  {shown}", r.order()).is_err() {
            break;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::RingInfo { spec, format } => ring_info(spec, *format),
        Command::Graph {
            spec,
            variant,
            format,
        } => graph(spec, *variant, *format),
        Command::Srg {
            spec,
            variant,
            format,
        } => srg(spec, *variant, *format),
        Command::Sdim {
            spec,
            variant,
            oracle_bound,
            format,
        } => sdim(spec, *variant, *oracle_bound, *format),
        Command::Verify {
            suite,
            ring,
            out_dir,
            jobs,
            oracle_bound,
            registry,
        } => verify(
            suite,
            ring,
            out_dir.as_deref(),
            *jobs,
            *oracle_bound,
            registry.as_deref(),
        ),
        Command::Export {
            spec,
            which,
            format,
            output,
        } => export_cmd(spec, *which, *format, output.as_deref()),
        Command::Catalog => catalog_cmd(),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
