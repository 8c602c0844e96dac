//! Command line workbench for partition categories, their word groups and intertwiner checks.
//!
//! Every subcommand produces a report that renders as text or JSON and carries an
//! [`Outcome`] that becomes the exit code: 0 pass, 1 fail, 2 inconclusive at the bounds.

pub mod commands;
pub mod config;
pub mod facts;
pub mod report;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use partcat::{RelationKind, Seed, Z2Word};

pub use config::{Format, RunConfig, Settings};
pub use report::{render, Outcome, Report};

use commands::*;

#[derive(Debug, Parser)]
#[command(name = "partcat", version, about = "Experiments with categories of partitions")]
pub struct Cli {
    #[command(flatten)]
    pub settings: Settings,
    /// TOML file with defaults for the bound flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a category and summarise it.
    Closure {
        #[arg(long = "gen")]
        gens: Vec<String>,
        /// List one representative per rotation class.
        #[arg(long)]
        list: bool,
    },
    /// Decide membership of a partition, with a certificate.
    Member {
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long)]
        target: String,
    },
    /// Remove repeated neighbours from the one-row form.
    Simplify {
        partition: String,
        /// Reduce until no neighbours repeat.
        #[arg(long)]
        full: bool,
    },
    /// The group word of a partition.
    Word {
        partition: String,
        /// Letter index for each block, comma separated.
        #[arg(long, value_delimiter = ',')]
        labelling: Option<Vec<u32>>,
    },
    /// Close a subgroup, given by words or as the image of a category.
    Subgroup {
        #[arg(long = "word")]
        words: Vec<String>,
        /// Words are in the free letters x1, x2, ...
        #[arg(long)]
        free: bool,
        /// Only products and inverses.
        #[arg(long)]
        no_invariant: bool,
        /// Partitions whose category is mapped to a subgroup.
        #[arg(long = "gen", conflicts_with = "words")]
        gens: Vec<String>,
        /// Compare with an oracle (trivial, parity, expN) on all words at the bound.
        #[arg(long)]
        compare: Option<String>,
        #[arg(long)]
        list: bool,
        /// Check closure under products, inverses and endomorphisms at the bound.
        #[arg(long)]
        defects: bool,
        #[arg(long = "query")]
        queries: Vec<String>,
    },
    /// Check both composites of the correspondence at the bounds.
    Roundtrip {
        /// Start from a subgroup oracle: trivial, parity or expN.
        #[arg(long, conflicts_with = "gens")]
        oracle: Option<String>,
        /// Start from the category of these partitions.
        #[arg(long = "gen")]
        gens: Vec<String>,
    },
    /// Enumerate the quotient of the free product of order-two groups.
    Quotient {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long = "relator")]
        relators: Vec<String>,
        /// Use the dihedral kernel of order 2s instead of relators.
        #[arg(long, conflicts_with = "relators")]
        dihedral: Option<usize>,
        /// Word length for the relator closure (default: the larger of the
        /// length bound and twice the longest relator).
        #[arg(long)]
        closure_length: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        max_cosets: usize,
    },
    /// Check relations and intertwiners of an integer representation.
    Intertwiner {
        /// counterexample, diagonal:N, random:N:DIM:SEED or a file.
        #[arg(long, default_value = "counterexample")]
        rep: String,
        #[arg(long = "partition")]
        partitions: Vec<String>,
        /// Relation kinds to check (i, ii, iii, iv), comma separated.
        #[arg(long = "relation", value_delimiter = ',')]
        relations: Vec<String>,
        #[arg(long)]
        budget: Option<usize>,
        /// Also compare with the transposed representation.
        #[arg(long)]
        transpose: bool,
        /// Search for letter choices whose projection product fails.
        #[arg(long)]
        word_projection: bool,
    },
    /// Replay the pinned facts corpus, or a corpus file.
    Facts {
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Only facts whose id starts with one of these prefixes.
        #[arg(long)]
        only: Vec<String>,
    },
}

/// A rendered report and its outcome.
#[derive(Debug)]
pub struct Rendered {
    pub text: String,
    pub outcome: Outcome,
}

fn finish<R: Report>(r: &R, cfg: &RunConfig) -> Rendered {
    Rendered {
        text: render(r, cfg.format),
        outcome: r.outcome(),
    }
}

/// Runs a parsed command line and renders its report.
pub fn run(cli: Cli) -> Result<Rendered> {
    let cfg = RunConfig::resolve(cli.settings, cli.config.as_deref())?;
    let command = cli.command;
    cfg.install(|| dispatch(&cfg, command))?
}

fn dispatch(cfg: &RunConfig, command: Command) -> Result<Rendered> {
    Ok(match command {
        Command::Closure { gens, list } => finish(&cmd_closure(cfg, &parse_partitions(&gens)?, list)?, cfg),
        Command::Member { gens, target } => finish(
            &cmd_member(cfg, &parse_partitions(&gens)?, &parse_partition(&target)?)?,
            cfg,
        ),
        Command::Simplify { partition, full } => finish(&cmd_simplify(&parse_partition(&partition)?, full)?, cfg),
        Command::Word { partition, labelling } => {
            finish(&cmd_word(&parse_partition(&partition)?, labelling.as_deref())?, cfg)
        }
        Command::Subgroup {
            words,
            free,
            no_invariant,
            gens,
            compare,
            list,
            defects,
            queries,
        } => {
            let source = if gens.is_empty() {
                SubgroupSource::Words {
                    words,
                    free,
                    invariant: !no_invariant,
                }
            } else {
                SubgroupSource::Category(parse_partitions(&gens)?)
            };
            let req = SubgroupRequest {
                source,
                compare,
                list,
                defects,
                queries,
            };
            finish(&cmd_subgroup(cfg, &req)?, cfg)
        }
        Command::Roundtrip { oracle, gens } => {
            let seed = match oracle {
                Some(o) => Seed::Oracle(parse_oracle(&o)?),
                None => Seed::Category(parse_partitions(&gens)?),
            };
            finish(&cmd_roundtrip(cfg, &seed)?, cfg)
        }
        Command::Quotient {
            n,
            relators,
            dihedral,
            closure_length,
            max_cosets,
        } => {
            let source = match dihedral {
                Some(s) => QuotientSource::Dihedral(s),
                None => QuotientSource::Relators {
                    letters: n,
                    relators: relators
                        .iter()
                        .map(|r| Z2Word::parse(r).with_context(|| format!("bad relator {r:?}")))
                        .collect::<Result<_>>()?,
                },
            };
            finish(&cmd_quotient(cfg, &source, closure_length, max_cosets)?, cfg)
        }
        Command::Intertwiner {
            rep,
            partitions,
            relations,
            budget,
            transpose,
            word_projection,
        } => {
            let mut req = IntertwinerRequest::new(&rep);
            if !partitions.is_empty() {
                req.partitions = parse_partitions(&partitions)?;
            }
            if !relations.is_empty() {
                req.relations = relations
                    .iter()
                    .map(|r| RelationKind::parse(r).with_context(|| format!("unknown relation kind {r:?}")))
                    .collect::<Result<_>>()?;
            }
            if let Some(b) = budget {
                req.budget = b;
            }
            req.transpose = transpose;
            req.word_projection = word_projection;
            finish(&cmd_intertwiner(&req)?, cfg)
        }
        Command::Facts { corpus, only } => {
            let report = match corpus {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("cannot read corpus {}", path.display()))?;
                    facts::cmd_facts(cfg, &path.display().to_string(), &text, &only)?
                }
                None => facts::cmd_facts(cfg, "built-in corpus", facts::BUILTIN_CORPUS, &only)?,
            };
            finish(&report, cfg)
        }
    })
}

/// Parses `args`, runs, and writes the report to `--out` or returns it for printing.
pub fn run_args<I, T>(args: I) -> Result<Rendered>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let out = cli.settings.out.clone();
    let mut r = run(cli)?;
    if let Some(path) = out {
        std::fs::write(&path, &r.text).with_context(|| format!("cannot write {}", path.display()))?;
        r.text = String::new();
    }
    Ok(r)
}
