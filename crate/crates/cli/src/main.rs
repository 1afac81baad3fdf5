//! `ns`: builds the Norton–Sakuma algebras, enumerates their idempotents and
//! associative subalgebras, and checks the published tables.
//!
//! Exit codes: 0 success, 1 internal error, 2 verification mismatch, 64 usage.

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use ns_core::assoc::CliqueRegistry;
use ns_core::catalog::{build, check_axioms, NsType};
use ns_core::idempotent::enumerate;
use ns_core::idempotent::search::{SearchConfig, SearchRegistry, DEFAULT_SEED};
use ns_core::report::{self, pretty, Format, TypeSummary};
use ns_core::verify::{run, verify, Pipeline, Status};

const EXIT_MISMATCH: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "ns", version, about = "Idempotents and associative subalgebras of the Norton–Sakuma algebras")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,

    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug)]
struct RunArgs {
    /// Emit JSON (schema 1)
    #[arg(long, global = true, conflicts_with_all = ["markdown", "csv"])]
    json: bool,

    /// Emit markdown tables
    #[arg(long, global = true, conflicts_with = "csv")]
    markdown: bool,

    /// Emit CSV
    #[arg(long, global = true)]
    csv: bool,

    /// Seed of the random Newton starts
    #[arg(long, global = true, env = "NS_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Newton residual tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Number of random starts (default 200·2ⁿ)
    #[arg(long, global = true)]
    starts: Option<usize>,

    /// Idempotent search strategy (see `ns strategies`)
    #[arg(long, global = true, default_value = "multistart-newton")]
    strategy: String,

    /// Clique enumerator for associative subalgebras (see `ns strategies`)
    #[arg(long, global = true, default_value = "bron-kerbosch")]
    enumerator: String,
}

impl RunArgs {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.markdown {
            Format::Markdown
        } else if self.csv {
            Format::Csv
        } else {
            Format::Table
        }
    }

    fn search(&self) -> SearchConfig {
        let mut cfg = SearchConfig { seed: self.seed, starts: self.starts, ..SearchConfig::default() };
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        cfg
    }

    fn pipeline(&self, t: NsType) -> Result<Pipeline> {
        run(t, &self.strategy, &self.enumerator, &self.search()).with_context(|| format!("pipeline for {t}"))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one algebra and check M1 on all basis triples and M3–M5 on its axes
    Build { r#type: NsType },
    /// Export structure data for other tools
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// List all idempotents with their certification
    Idempotents {
        r#type: NsType,
        /// Aligned text table (the default)
        #[arg(long)]
        table: bool,
    },
    /// Spectra of the idempotents
    Spectra {
        r#type: NsType,
        /// One row per orbit, in the layout of the published tables
        #[arg(long)]
        orbit_representatives: bool,
    },
    /// Orbits of the automorphism group on the idempotents
    Orbits { r#type: NsType },
    /// Associative subalgebras spanned by orthogonal idempotents
    Assoc {
        r#type: NsType,
        /// Only the maximal ones
        #[arg(long)]
        maximal: bool,
    },
    /// Check every published count, table and claim
    VerifyPaper {
        /// Restrict to these types (default: all)
        #[arg(long = "type")]
        types: Vec<NsType>,
        /// List passing checks as well
        #[arg(long)]
        verbose: bool,
    },
    /// Registered search strategies and clique enumerators
    Strategies,
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// The completed structure constants and Gram matrix as JSON
    Export { r#type: NsType },
}

fn emit(table: &report::Table, doc: impl FnOnce() -> Result<serde_json::Value>, f: Format) -> Result<()> {
    let text = match f {
        Format::Json => pretty(&doc()?),
        _ => table.render(f)?,
    };
    print!("{text}");
    Ok(())
}

fn execute(cli: &Cli) -> Result<u8> {
    let f = cli.run.format();
    match &cli.command {
        Command::Build { r#type } => {
            let entry = build(*r#type)?;
            let axioms = check_axioms(&entry)?;
            emit(&report::build_table(&entry, &axioms), || Ok(report::build_document(&entry, &axioms)), f)?;
            return Ok(if axioms.passed() { 0 } else { EXIT_MISMATCH });
        }
        Command::Catalog { action: CatalogAction::Export { r#type } } => {
            let entry = build(*r#type)?;
            print!("{}", pretty(&serde_json::to_value(entry.spec().as_ref())?));
        }
        Command::Idempotents { r#type, .. } => {
            let entry = build(*r#type)?;
            let set = enumerate(&entry, &cli.run.strategy, &cli.run.search())?;
            emit(&report::idempotents_table(&set), || Ok(report::idempotents_document(&set)), f)?;
        }
        Command::Spectra { r#type, orbit_representatives } => {
            let p = cli.run.pipeline(*r#type)?;
            emit(&report::spectra_table(&p, *orbit_representatives)?, || Ok(report::spectra_document(&p, *orbit_representatives)?), f)?;
        }
        Command::Orbits { r#type } => {
            let entry = build(*r#type)?;
            let set = enumerate(&entry, &cli.run.strategy, &cli.run.search())?;
            emit(&report::orbits_table(&set), || Ok(report::orbits_document(&set)), f)?;
        }
        Command::Assoc { r#type, maximal } => {
            let p = cli.run.pipeline(*r#type)?;
            emit(&report::assoc_table(&p.assoc, *maximal), || Ok(report::assoc_document(&p.assoc, *maximal)), f)?;
        }
        Command::VerifyPaper { types, verbose } => {
            let types = if types.is_empty() { NsType::ALL.to_vec() } else { types.clone() };
            let mut summaries = Vec::new();
            for t in types {
                let p = cli.run.pipeline(t)?;
                let checks = verify(&p)?;
                summaries.push(TypeSummary::new(&p, checks));
            }
            emit(&report::verify_table(&summaries, *verbose), || Ok(report::verify_document(&summaries)), f)?;
            let failed = summaries.iter().flat_map(|s| &s.checks).any(|c| c.status == Status::Fail);
            return Ok(if failed { EXIT_MISMATCH } else { 0 });
        }
        Command::Strategies => {
            let mut t = report::Table::new("Registered strategies", &["Kind", "Name", "Description"]);
            let search = SearchRegistry::default();
            for n in search.names() {
                t.push(vec!["idempotent search".into(), n.into(), search.get(n)?.describe().into()]);
            }
            let cliques = CliqueRegistry::default();
            for n in cliques.names() {
                t.push(vec!["clique enumerator".into(), n.into(), cliques.get(n)?.describe().into()]);
            }
            print!("{}", t.render(f)?);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    // unknown strategy names are usage errors, not internal ones
    let known = SearchRegistry::default().names().contains(&cli.run.strategy.as_str()) && CliqueRegistry::default().names().contains(&cli.run.enumerator.as_str());
    if !known {
        eprintln!("error: unknown strategy; run `ns strategies` for the registered names");
        return ExitCode::from(EXIT_USAGE);
    }
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
