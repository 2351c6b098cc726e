use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use knotquiver::catalog::{Catalog, CodeFormat};
use knotquiver::cohomology::{is_cocycle, CoeffGroup};
use knotquiver::homset::{chain_vector, colorings};
use knotquiver::job::{run_batch, run_job, CocycleSpec, EndoSpec, JobConfig, LinkRef, Output, QuandleSpec};
use knotquiver::polynomials::{four_polynomials, DEFAULT_PATH_LIMIT};
use knotquiver::quiver::RepQuiver;
use knotquiver::{EndoMap, Error};

#[derive(Parser)]
#[command(name = "knotquiver", version, about = "Quandle cocycle quiver invariants of knots and links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quandle axioms, cocycles, endomorphisms and diagram.
    Check(JobArgs),
    /// List colorings and their 2-chains.
    Homset(JobArgs),
    /// Cocycle invariants of the link.
    CocycleInvariant(JobArgs),
    /// The quiver representation as JSON.
    Quiver(JobArgs),
    /// The four polynomial invariants.
    Invariants {
        #[command(flatten)]
        job: JobArgs,
        /// Recompute from a quiver JSON file instead of a link.
        #[arg(long)]
        from_quiver: Option<PathBuf>,
    },
    /// The four polynomials for many links.
    Batch {
        #[command(flatten)]
        job: JobArgs,
        /// Comma-separated catalog names, or `classical`.
        #[arg(long)]
        links: Option<String>,
    },
    /// List catalog names.
    Catalog,
}

#[derive(Args, Clone, Default)]
struct JobArgs {
    /// JSON job file; other flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Catalog name, or a diagram code when --format is given.
    #[arg(long)]
    link: Option<String>,
    /// Code format of an inline --link: pd or gauss.
    #[arg(long)]
    format: Option<CodeFormat>,
    /// Builtin quandle (core:M, alexander:M:T, trivial:N, z2bq, swap3, s3) or table file.
    #[arg(long)]
    quandle: Option<String>,
    /// Coefficient group: Z or Zm.
    #[arg(long)]
    group: Option<CoeffGroup>,
    /// JSON list of value vectors, `h2-generators` or `none`.
    #[arg(long)]
    cocycles: Option<String>,
    /// JSON list of 1-based image vectors, `all` or `identity`.
    #[arg(long)]
    endos: Option<String>,
    /// Use the mirror image.
    #[arg(long)]
    mirror: bool,
    /// Reverse these components (comma-separated, 0-based).
    #[arg(long, value_delimiter = ',')]
    reverse: Vec<usize>,
    /// Accept explicit cochains that fail the cocycle condition.
    #[arg(long)]
    unchecked: bool,
    #[arg(long)]
    path_limit: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl JobArgs {
    fn config(&self, outputs: Vec<Output>) -> anyhow::Result<JobConfig> {
        let mut cfg = match &self.config {
            Some(p) => JobConfig::from_file(p).with_context(|| format!("reading {}", p.display()))?,
            None => JobConfig::from_json(r#"{"quandle": "core:3", "group": "Z"}"#)?,
        };
        if self.config.is_none() && self.quandle.is_none() {
            bail!("--quandle or --config is required");
        }
        if let Some(l) = &self.link {
            cfg.link = Some(match self.format {
                Some(format) => LinkRef::Inline { format, code: l.clone() },
                None => LinkRef::Named(l.clone()),
            });
        }
        if let Some(q) = &self.quandle {
            cfg.quandle = QuandleSpec::Builtin(q.clone());
        }
        if let Some(g) = self.group {
            cfg.group = g;
        }
        if let Some(c) = &self.cocycles {
            cfg.cocycles = match serde_json::from_str::<Vec<Vec<i64>>>(c) {
                Ok(v) => CocycleSpec::Explicit(v),
                Err(_) => CocycleSpec::Keyword(c.clone()),
            };
        }
        if let Some(e) = &self.endos {
            cfg.endos = match serde_json::from_str::<Vec<Vec<usize>>>(e) {
                Ok(v) => EndoSpec::Explicit(v),
                Err(_) => EndoSpec::Keyword(e.clone()),
            };
        }
        cfg.mirror |= self.mirror;
        if !self.reverse.is_empty() {
            cfg.reverse = self.reverse.clone();
        }
        if self.unchecked {
            cfg.check_cocycles = false;
        }
        if self.path_limit.is_some() {
            cfg.path_limit = self.path_limit;
        }
        if !outputs.is_empty() {
            cfg.outputs = outputs;
        }
        Ok(cfg)
    }

    fn emit(&self, text: String) -> anyhow::Result<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn check(args: &JobArgs, catalog: &Catalog) -> anyhow::Result<bool> {
    let cfg = args.config(vec![])?;
    let x = cfg.biquandle()?;
    let mut problems = Vec::new();
    for v in x.check_axioms() {
        problems.push(v.to_string());
    }
    if problems.is_empty() {
        if let CocycleSpec::Explicit(vs) = &cfg.cocycles {
            for v in vs {
                let phi = knotquiver::Cocycle::new(cfg.group, v.clone());
                match is_cocycle(&phi, &x) {
                    Ok(true) => {}
                    Ok(false) => problems.push(format!("{phi} is not a 2-cocycle")),
                    Err(e) => problems.push(e.to_string()),
                }
            }
        }
        if let EndoSpec::Explicit(vs) = &cfg.endos {
            for v in vs {
                match EndoMap::from_one_based(v) {
                    Ok(e) if e.images().len() == x.order() && x.is_endomorphism(&e) => {}
                    Ok(e) => problems.push(format!("{e} is not an endomorphism")),
                    Err(err) => problems.push(err.to_string()),
                }
            }
        }
    }
    if let Some(l) = &cfg.link {
        match l.resolve(catalog) {
            Ok(d) => problems.extend(d.validate().iter().map(|v| v.to_string())),
            Err(e) => problems.push(e.to_string()),
        }
    }
    let text = if args.json {
        json(&serde_json::json!({ "ok": problems.is_empty(), "problems": problems }))?
    } else if problems.is_empty() {
        "ok\n".to_string()
    } else {
        problems.iter().map(|p| format!("{p}\n")).collect()
    };
    args.emit(text)?;
    Ok(problems.is_empty())
}

fn homset(args: &JobArgs, catalog: &Catalog) -> anyhow::Result<()> {
    let cfg = args.config(vec![])?;
    let x = cfg.biquandle()?;
    let link = cfg.link.as_ref().context("--link is required")?;
    let mut d = link.resolve(catalog)?;
    if cfg.mirror {
        d = d.mirror();
    }
    if !cfg.reverse.is_empty() {
        d = d.reverse_components(&cfg.reverse)?;
    }
    let rows: Vec<(Vec<usize>, Vec<i64>)> = colorings(&d, &x)
        .iter()
        .map(|c| (c.one_based(), chain_vector(c, &d, &x).coords().to_vec()))
        .collect();
    let text = if args.json {
        let items: Vec<_> = rows.iter().map(|(c, v)| serde_json::json!({ "coloring": c, "chain": v })).collect();
        json(&serde_json::json!({ "link": link.label(), "count": rows.len(), "colorings": items }))?
    } else {
        let mut s = format!("{}: {} colorings\n", link.label(), rows.len());
        for (c, v) in &rows {
            s += &format!("{c:?}  {v:?}\n");
        }
        s
    };
    args.emit(text)
}

fn single(args: &JobArgs, catalog: &Catalog, outputs: Vec<Output>) -> anyhow::Result<()> {
    let cfg = args.config(outputs)?;
    let report = run_job(&cfg, catalog)?;
    let text = match (&report.quiver, cfg.outputs.as_slice()) {
        (Some(q), [Output::Quiver]) => q.to_json() + "\n",
        _ if args.json => json(&report)?,
        _ => report.to_text(),
    };
    args.emit(text)
}

fn from_quiver(args: &JobArgs, path: &PathBuf) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let q = RepQuiver::from_json(&text)?;
    let (four, paths) = four_polynomials(&q, args.path_limit.unwrap_or(DEFAULT_PATH_LIMIT))?;
    let text = if args.json {
        json(&serde_json::json!({ "polynomials": four, "maximal_paths": paths.len() }))?
    } else {
        format!(
            "edge characteristic: {}\nedge matrix:         {}\npath characteristic: {}\npath matrix:         {}\nmaximal paths: {}\n",
            four.edge_char,
            four.edge_matrix,
            four.path_char,
            four.path_matrix,
            paths.len()
        )
    };
    args.emit(text)
}

fn batch(args: &JobArgs, links: Option<&str>, catalog: &Catalog) -> anyhow::Result<bool> {
    let cfg = args.config(vec![])?;
    let refs: Vec<LinkRef> = match links {
        Some("classical") => catalog.classical_links().into_iter().map(|n| LinkRef::Named(n.into())).collect(),
        Some("") => Vec::new(),
        Some(list) => list.split(',').map(|n| LinkRef::Named(n.trim().into())).collect(),
        None => cfg.links.clone(),
    };
    let report = run_batch(&refs, &cfg, catalog)?;
    let text = if args.json {
        json(&serde_json::json!({ "rows": report.rows, "classes": report.classes() }))?
    } else {
        let mut s = report.to_text();
        s += "\npath matrix classes\n";
        for (poly, names) in report.classes() {
            s += &format!("{poly} | {}\n", names.join(", "));
        }
        s
    };
    args.emit(text)?;
    Ok(!report.has_errors())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let catalog = Catalog::builtin();
    match &cli.command {
        Command::Check(a) => check(a, &catalog),
        Command::Homset(a) => homset(a, &catalog).map(|_| true),
        Command::CocycleInvariant(a) => single(a, &catalog, vec![Output::Counting, Output::CocycleInvariant]).map(|_| true),
        Command::Quiver(a) => single(a, &catalog, vec![Output::Quiver]).map(|_| true),
        Command::Invariants { job, from_quiver: Some(p) } => from_quiver(job, p).map(|_| true),
        Command::Invariants { job, from_quiver: None } => single(job, &catalog, vec![]).map(|_| true),
        Command::Batch { job, links } => batch(job, links.as_deref(), &catalog),
        Command::Catalog => {
            for n in catalog.names() {
                println!("{n}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::PathLimit(_)) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
