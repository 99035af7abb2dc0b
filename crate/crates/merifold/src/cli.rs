//! Argument grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

/// Folding tools for free groups, graphs of groups and satellite knot groups.
#[derive(Debug, Parser)]
#[command(name = "merifold", version)]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for per-move JSONL traces.
    #[arg(long, global = true)]
    pub trace: Option<PathBuf>,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Free-group words.
    Word {
        #[command(subcommand)]
        op: WordOp,
    },
    /// Subgroup graphs (Stallings foldings).
    Sg {
        #[command(subcommand)]
        op: SgOp,
    },
    /// The Whitehead pattern group and its graph of groups.
    Pattern {
        #[command(subcommand)]
        op: PatternOp,
    },
    /// Braid and cable space groups.
    Braid {
        #[command(subcommand)]
        op: BraidOp,
    },
    /// Satellite knot groups over a torus-knot companion.
    Satellite {
        #[command(subcommand)]
        op: SatelliteOp,
    },
    /// Bridge number of a satellite.
    Bridge(BridgeArgs),
}

#[derive(Debug, Subcommand)]
pub enum WordOp {
    /// Free reduction.
    Reduce {
        word: String,
        #[arg(long, default_value_t = 2)]
        rank: u32,
    },
    Inverse {
        word: String,
        #[arg(long, default_value_t = 2)]
        rank: u32,
    },
    /// Conjugacy test; reports a conjugator `c` with `c a c^-1 = b`.
    Conj {
        a: String,
        b: String,
        #[arg(long, default_value_t = 2)]
        rank: u32,
    },
    /// Cyclic reduction and the canonical rotation.
    Cyclic {
        word: String,
        #[arg(long, default_value_t = 2)]
        rank: u32,
    },
}

#[derive(Debug, Args)]
pub struct Gens {
    /// Comma-separated generators.
    #[arg(short = 'H', long = "gens")]
    pub h: String,
    #[arg(long, default_value_t = 2)]
    pub rank: u32,
}

#[derive(Debug, Subcommand)]
pub enum SgOp {
    /// Folded core graph, basis and rank.
    Graph(Gens),
    Member {
        #[command(flatten)]
        gens: Gens,
        word: String,
    },
    /// Nontrivial intersections `H ∩ g K g^-1`, one per double coset.
    Intersect {
        #[command(flatten)]
        gens: Gens,
        /// Comma-separated generators of `K`.
        #[arg(short = 'K', long = "other")]
        k: String,
    },
    Normalizer(Gens),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Alpha,
    Omega,
}

#[derive(Debug, Subcommand)]
pub enum PatternOp {
    /// Intersections of `U_α` with conjugates of `U_ω`.
    Conjsep,
    /// Peripheral-intersection decision for one case, e.g. `--case 2a`.
    Lemma {
        #[arg(long)]
        case: String,
        #[arg(long)]
        word: String,
    },
    /// Boundary subgroup graph and its normalizer.
    Subgroup {
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Membership in `U_α` against the normal-form shape.
    Star { word: String },
    /// Britton reduction of a word in `x1, x2, l`.
    Britton { word: String },
    /// Fold meridian conjugates into a good A-graph.
    Goodify {
        /// `x1:<A-path>` or `x2:<A-path>`; a bare A-path means `x1`.
        #[arg(long = "meridian", required = true)]
        meridians: Vec<String>,
    },
    /// Random good A-graphs (seeded by MERIFOLD_SEED).
    Sample {
        #[arg(long, default_value_t = 3)]
        pieces: usize,
        #[arg(long, default_value_t = 3)]
        max_full: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    /// `n,m` for the cable space.
    #[arg(long)]
    pub cable: Option<String>,
    /// Braid word in `s<i>`, `S<i>`.
    #[arg(long)]
    pub braid: Option<String>,
    #[arg(short = 'n', long = "n")]
    pub n: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum BraidOp {
    /// Artin action on the free group.
    Action {
        braid: String,
        #[arg(short = 'n', long = "n")]
        n: u32,
    },
    /// Meridional basis and peripheral table for conjugates of `x1`.
    C1 {
        #[command(flatten)]
        space: SpaceArgs,
        /// Conjugator in `x<i>`, `t`, `T`.
        #[arg(long = "conj", required = true)]
        conjugators: Vec<String>,
    },
    /// Whether an element commutes with the meridian `x1`.
    Centralizer {
        #[command(flatten)]
        space: SpaceArgs,
        element: String,
    },
}

#[derive(Debug, Args)]
pub struct SatelliteArgs {
    /// `whitehead`, `cable:n,m` or `braid` (with `--braid` and `-n`).
    #[arg(long)]
    pub pattern: String,
    #[arg(long)]
    pub braid: Option<String>,
    #[arg(short = 'n', long = "n")]
    pub n: Option<u32>,
    /// `torus:p,q`.
    #[arg(long, default_value = "torus:2,3")]
    pub companion: String,
}

#[derive(Debug, Subcommand)]
pub enum SatelliteOp {
    /// Fold meridians `p x1 p^-1` into a folded A-graph.
    Fold {
        #[command(flatten)]
        space: SatelliteArgs,
        /// A-path `word ( '|' e|E word )*`.
        #[arg(long = "meridian", required = true)]
        meridians: Vec<String>,
        /// Also write the report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Directory for initial.dot and final.dot.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Conjugator length for the tameness certificate.
        #[arg(long, default_value_t = 2)]
        len: usize,
    },
    /// Reduced form of an A-path.
    Reduce {
        #[command(flatten)]
        space: SatelliteArgs,
        path: String,
    },
}

#[derive(Debug, Args)]
pub struct BridgeArgs {
    /// `whitehead` or `braid`.
    #[arg(long)]
    pub pattern: String,
    #[arg(short = 'n', long = "n")]
    pub n: Option<usize>,
    #[arg(long)]
    pub b1: usize,
}
