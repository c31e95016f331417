//! `finbase`: batch front end for word, identity, monoid, derivation and
//! finite-basis computations.
//!
//! Exit status is 0 when a result was computed, 1 when a yes/no question
//! was answered negatively and 2 on malformed input.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use input::Syntax;

#[derive(Parser, Debug)]
#[command(name = "finbase", version, about = "Identities, finite monoids and finite-basis decisions")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads. Accepted for scripting compatibility; every operation
    /// currently runs on one thread.
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    jobs: usize,
    /// Read a digit suffix as an exponent, so that `a2ta` is `a a t a`.
    #[arg(long, global = true)]
    compact_powers: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Word structure.
    #[command(subcommand)]
    Word(WordCmd),
    /// Identity classification.
    #[command(subcommand)]
    Identity(IdentityCmd),
    /// Finite monoids and their identities.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Derivations and traces.
    #[command(subcommand)]
    Derive(DeriveCmd),
    /// Simon congruences.
    #[command(subcommand)]
    Jm(JmCmd),
    /// Finite-basis classification of `A0^1 × S(W)`.
    #[command(subcommand)]
    Fb(FbCmd),
}

#[derive(Subcommand, Debug)]
enum WordCmd {
    /// Blocks between linear letters, or between first/last occurrences.
    Blocks {
        word: String,
        /// Cut at every first or last occurrence instead of at linear letters.
        #[arg(long)]
        first_last: bool,
    },
    /// Whether the word is compact (in `x`, or in the pair `x,y`).
    Compact {
        word: String,
        #[arg(long, value_name = "X[,Y]")]
        vars: Option<String>,
    },
    /// Scattered subwords of length at most `m`.
    Subwords {
        word: String,
        #[arg(long, short)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum IdentityCmd {
    /// Every structural property flag.
    Classify {
        identity: String,
        /// Parameter for the `P_n` and `n`-limited flags.
        #[arg(long, short)]
        n: Option<usize>,
    },
    /// Unstable pairs of a balanced identity.
    Pairs { identity: String },
}

#[derive(Subcommand, Debug)]
enum MonoidCmd {
    /// Print the multiplication table of a monoid as JSON.
    Build {
        /// a01, trivial, s2..s4, sw:WORDS, a JSON file, or a `*`-product of these.
        spec: Option<String>,
        /// Build `S(W)` from a word list (file or inline, comma separated).
        #[arg(long, value_name = "FILE|inline")]
        words: Option<String>,
    },
    /// Whether a monoid satisfies an identity.
    Satisfies { monoid: String, identity: String },
    /// Whether a word is an isoterm, among sides up to length `--bound`.
    Isoterm {
        monoid: String,
        word: String,
        #[arg(long, value_name = "L")]
        bound: Option<usize>,
    },
    /// Whether `{x, y}` is b-unstable in a word.
    BUnstable { monoid: String, word: String, x: String, y: String },
    /// The direct product of two monoids.
    Product { left: String, right: String },
}

#[derive(Args, Debug, Clone)]
struct TraceOut {
    /// Write the trace as JSON lines (`-` for standard output).
    #[arg(long, value_name = "FILE")]
    emit_trace: Option<String>,
}

#[derive(Subcommand, Debug)]
enum DeriveCmd {
    /// Bounded search for a derivation from a rule set.
    Search {
        identity: String,
        /// Comma-separated rule names (sigma1, sigma-mu, sigma2,
        /// square-shift, middle-erase, dup, ins, ins-dual, xy3, omega, j3).
        #[arg(long)]
        rules: Vec<String>,
        /// Additional rule, as an identity.
        #[arg(long)]
        rule: Vec<String>,
        /// Longest word visited; defaults to the longer side plus two.
        #[arg(long)]
        max_len: Option<usize>,
        /// Rewrites explored from each side.
        #[arg(long, default_value_t = 12)]
        max_depth: usize,
        #[command(flatten)]
        out: TraceOut,
    },
    /// Derivation of a block-balanced identity from `{σ1, σμ, σ2}`.
    BlockBalanced {
        identity: String,
        #[command(flatten)]
        out: TraceOut,
    },
    /// Derivation of a block-balanced `P1,2` identity from `{σ1, σ2}`.
    P12 {
        identity: String,
        #[command(flatten)]
        out: TraceOut,
    },
    /// Derivation of an identity of `J3` from its finite basis.
    J3 {
        identity: String,
        #[command(flatten)]
        out: TraceOut,
    },
    /// Compact normal form of a 2-limited word.
    Compact {
        word: String,
        #[command(flatten)]
        out: TraceOut,
    },
    /// Re-validate a stored trace.
    Replay {
        file: String,
        /// Also require every step to come from these rules.
        #[arg(long)]
        rules: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum JmCmd {
    /// Whether both sides have the same scattered subwords of length ≤ m.
    Check {
        #[arg(long, short)]
        m: usize,
        identity: String,
    },
}

#[derive(Subcommand, Debug)]
enum FbCmd {
    /// The adjacency condition on `W`.
    CheckW12 {
        #[arg(long, value_name = "FILE|inline")]
        words: Option<String>,
        /// Include the family `{aᵏbᵏ : k > 0}`.
        #[arg(long)]
        symbolic: bool,
    },
    /// Decide whether `A0^1 × S(W)` is finitely based.
    Decide {
        #[arg(long, value_name = "FILE|inline")]
        words: Option<String>,
        #[arg(long)]
        symbolic: bool,
    },
    /// The `k`-th member of the alternating chain and its verdict.
    Chain { k: usize },
    /// Check the hypotheses of a sufficient condition on a monoid.
    Hypotheses {
        /// fbs3, fbtlem1, fbtlem or abtab.
        theorem: String,
        monoid: String,
        /// Exponent or period search bound.
        #[arg(long, value_name = "L", default_value_t = 6)]
        bound: usize,
        /// The exponent `m` for fbtlem.
        #[arg(long, short, default_value_t = 2)]
        m: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let syntax = Syntax { compact_powers: cli.compact_powers };
    match commands::run(&cli.command, syntax) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.human);
                if !out.human.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(if out.positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
