use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hermcodes_core::codes::DEFAULT_CLASS_BUDGET;
use hermcodes_core::forms::DEFAULT_EVAL_BUDGET;
use hermcodes_core::oracle::DEFAULT_MAX_RETAINED;
use hermcodes_core::Shard;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "hermcodes", version)]
#[command(about = "Functional codes on Hermitian cones over GF(q^2): parameters, oracles, witnesses")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Characteristic of the base field
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,

    /// q = p^e; arithmetic happens in GF(q^2)
    #[arg(long, global = true, default_value_t = 1)]
    pub e: u32,

    /// Ambient projective dimension
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Degree of the forms
    #[arg(long, global = true)]
    pub d: Option<u32>,

    /// Cap on form evaluations (forms x points)
    #[arg(long, global = true, default_value_t = DEFAULT_EVAL_BUDGET)]
    pub eval_budget: u64,

    /// Cap on scalar classes for exhaustive minimum distance
    #[arg(long, global = true, default_value_t = DEFAULT_CLASS_BUDGET)]
    pub class_budget: u64,

    /// Maximizing forms kept in oracle reports
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_RETAINED)]
    pub max_retained: usize,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Substitute conjectured values where proven ones are unknown
    #[arg(long, global = true)]
    pub assume_conjecture: bool,

    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Hyperplanes visited by sampled section checks
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,

    /// Worker threads (defaults to all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Field,
    Projective,
    Hermitian,
    Forms,
    Codes,
    Bounds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarietyChoice {
    /// The rank-n cone with vertex [0:...:0:1]
    Cone,
    /// The non-degenerate variety of the identity matrix
    Nondegenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Points,
    Generator,
    Weights,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Closed-form and computed [m, k, dmin]
    Params,
    /// Run an invariant suite
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Exhaustive maximum of |X ∩ V(F)| over degree-d forms
    Oracle {
        /// Part of the form space to scan, as index/total
        #[arg(long, default_value = "0/1")]
        shard: String,
        #[arg(long, value_enum, default_value = "cone")]
        variety: VarietyChoice,
    },
    /// Combine oracle reports over disjoint shards
    Merge {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
    },
    /// Build an extremal form and its minimum-weight codeword
    Construct,
    /// Write points, generator matrix or weight distribution
    Export {
        #[arg(long, value_enum)]
        what: ExportKind,
    },
}

/// Validated settings shared by every command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub p: u32,
    pub e: u32,
    pub n: Option<usize>,
    pub d: Option<u32>,
    pub eval_budget: u64,
    pub class_budget: u64,
    pub max_retained: usize,
    pub shard: Shard,
    pub out: Option<PathBuf>,
    pub assume_conjecture: bool,
    pub seed: u64,
    pub samples: usize,
}

impl RunConfig {
    pub fn new(common: &Common, shard: Shard) -> Result<Self, CliError> {
        let cfg = RunConfig {
            p: common.p,
            e: common.e,
            n: common.n,
            d: common.d,
            eval_budget: common.eval_budget,
            class_budget: common.class_budget,
            max_retained: common.max_retained,
            shard,
            out: common.out.clone(),
            assume_conjecture: common.assume_conjecture,
            seed: common.seed,
            samples: common.samples,
        };
        if let Some(d) = cfg.d {
            let q = (cfg.p as u64).checked_pow(cfg.e).unwrap_or(u64::MAX);
            if d == 0 || d as u64 > q {
                return Err(CliError::invalid(format!(
                    "--d must satisfy 1 <= d <= q = {q}, got {d}"
                )));
            }
        }
        if cfg.n == Some(0) {
            return Err(CliError::invalid("--n must be at least 1"));
        }
        Ok(cfg)
    }

    pub fn require_n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| CliError::invalid("this command needs --n"))
    }

    pub fn require_d(&self) -> Result<u32, CliError> {
        self.d.ok_or_else(|| CliError::invalid("this command needs --d"))
    }

    pub fn policy(&self) -> hermcodes_core::bounds::ConjecturePolicy {
        if self.assume_conjecture {
            hermcodes_core::bounds::ConjecturePolicy::Assume
        } else {
            hermcodes_core::bounds::ConjecturePolicy::Strict
        }
    }
}
