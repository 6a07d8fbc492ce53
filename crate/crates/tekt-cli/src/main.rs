//! Command line front end: compute K-groups, enumerate pairs, build
//! restriction maps, run verification sweeps, and query the example catalog.
//!
//! Exit codes: 0 when every check passed, 1 when at least one verification
//! failed, 2 on usage or validation errors.

mod doc;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use doc::{KGroupSide, KGroupsRecord, PairEntry, ReportDocument, RestrictionRecord, ResultRecord};
use tekt::catalog::catalog_entries;
use tekt::ktheory::{
    classify_pairs, compute_kgroups_closed, compute_kgroups_mv, KGroupPair, PointPair,
};
use tekt::report::{MatrixRecord, ModuleRecord};
use tekt::restriction::{
    rest_k0_closed, rest_k1_closed, verify_restriction_agreement, RestrictionContext,
};
use tekt::sweeps::{instances, Instance, Suite};
use tekt::tduality::{dual_pair, duality_constants};

#[derive(Parser)]
#[command(
    name = "tekt",
    version,
    about = "Exact verification of twisted equivariant K-theory for cyclic group actions on the circle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for verification sweeps.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Kgroups,
    Restriction,
    Duality,
    Constants,
    Abelian,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Kgroups => Suite::KGroups,
            SuiteArg::Restriction => Suite::Restriction,
            SuiteArg::Duality => Suite::Duality,
            SuiteArg::Constants => Suite::Constants,
            SuiteArg::Abelian => Suite::Abelian,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the K-groups of the pair (E_k, twist) by both routes.
    Kgroups {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        twist: u64,
    },
    /// Enumerate all valid pairs for a group order, with their duals.
    Pairs {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Build the restriction maps along Z_m ⊆ Z_n and verify both
    /// constructions agree.
    Restrict {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        twist: u64,
    },
    /// Run a verification suite over all instances up to a bound.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long = "max-n", value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        /// Randomized finite abelian samples (abelian suite only).
        #[arg(long, default_value_t = 200)]
        samples: u64,
        /// Seed for the randomized samples.
        #[arg(long, default_value_t = 24157817)]
        seed: u64,
    },
    /// Evaluate the duality constants for a pair.
    Constants {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        twist: u64,
    },
    /// Dump the stored example catalog.
    Catalog {
        #[arg(long = "max-k", default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        max_k: u64,
        #[arg(long, default_value_t = 2)]
        grid: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");

    let results = match build_results(&cli.command, cli.jobs as usize) {
        Ok(results) => results,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };

    let document = ReportDocument::new(command_echo, results);
    let mut rendered = match cli.format {
        Format::Json => document.to_json(),
        Format::Table => document.to_table(),
    };
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    match &cli.out {
        Some(path) => {
            if let Err(err) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {err}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }

    exit_code(&document)
}

/// 0 when everything passed, 1 when at least one verification failed.
fn exit_code(document: &ReportDocument) -> ExitCode {
    if document.summary.failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn build_results(command: &Command, jobs: usize) -> Result<Vec<ResultRecord>, String> {
    match command {
        Command::Kgroups { n, k, twist } => {
            let pair = PointPair::new(*n, *k, *twist).map_err(|e| e.to_string())?;
            Ok(vec![kgroups_record(&pair)])
        }
        Command::Pairs { n } => Ok(classify_pairs(*n)
            .iter()
            .map(|pair| {
                ResultRecord::Pair(PairEntry {
                    pair: pair.into(),
                    dual: (&dual_pair(pair)).into(),
                })
            })
            .collect()),
        Command::Restrict { n, m, k, twist } => {
            let ctx = RestrictionContext::new(*n, *m, *k, *twist).map_err(|e| e.to_string())?;
            let k0 = rest_k0_closed(&ctx).map_err(|e| e.to_string())?;
            let k1 = rest_k1_closed(&ctx).map_err(|e| e.to_string())?;
            Ok(vec![ResultRecord::Restriction(RestrictionRecord {
                n: *n,
                m: *m,
                k: *k,
                ell: *twist,
                k0_map: MatrixRecord::of(k0.matrix()),
                k1_map: MatrixRecord::of(k1.matrix()),
                report: verify_restriction_agreement(&ctx),
            })])
        }
        Command::Verify {
            suite,
            max_n,
            samples,
            seed,
        } => {
            let mut items = instances((*suite).into(), *max_n, *samples, *seed);
            items.sort_by_key(Instance::sort_key);
            let reports = run_instances(&items, jobs);
            Ok(reports
                .into_iter()
                .map(ResultRecord::Verification)
                .collect())
        }
        Command::Constants { n, k, twist } => {
            let pair = PointPair::new(*n, *k, *twist).map_err(|e| e.to_string())?;
            let constants = duality_constants(&pair).map_err(|e| e.to_string())?;
            Ok(vec![ResultRecord::Constants(constants)])
        }
        Command::Catalog { max_k, grid } => Ok(catalog_entries(*max_k, *grid)
            .into_iter()
            .map(ResultRecord::Catalog)
            .collect()),
    }
}

/// Fans instances out to a worker pool; the output order is the input
/// order, so results are independent of the parallelism degree.
fn run_instances(items: &[Instance], jobs: usize) -> Vec<tekt::report::VerificationReport> {
    if jobs <= 1 {
        items.iter().map(Instance::run).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool")
            .install(|| items.par_iter().map(Instance::run).collect())
    }
}

fn kgroups_record(pair: &PointPair) -> ResultRecord {
    let mv = compute_kgroups_mv(pair);
    let closed = compute_kgroups_closed(pair);
    let routes_agree = mv.same_invariant_factors(&closed);
    let side = |groups: &KGroupPair| KGroupSide {
        k0: ModuleRecord::of(&groups.k0),
        k1: ModuleRecord::of(&groups.k1),
        provenance: groups.provenance,
    };
    ResultRecord::Kgroups(KGroupsRecord {
        pair: pair.into(),
        mv: side(&mv),
        closed: side(&closed),
        routes_agree,
    })
}
