use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "bwtcat",
    version,
    about = "BWT run counts, extremal word families and edit sensitivity"
)]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

/// Exactly one of a literal word or a file of raw bytes.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct WordSource {
    /// The word, taken byte for byte
    pub word: Option<String>,
    /// Read the word from a file, byte for byte
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the BWT of a word with its run count and run-length encoding
    Transform {
        #[command(flatten)]
        source: WordSource,
        /// Strip one trailing newline (and a preceding carriage return) from --input
        #[arg(long)]
        trim: bool,
        /// Transform w$ instead of the rotations of w
        #[arg(long)]
        dollar: bool,
    },
    /// Generate a word from one of the built-in families
    Generate {
        #[arg(value_enum)]
        family: Family,
        /// Family parameters: order for fibonacci/standard/central/revfib/lyndonrot, k for wk, i and e for tfam
        #[arg(required = true, num_args = 1..=2)]
        params: Vec<usize>,
        /// Also print length, r and r_dollar
        #[arg(long)]
        stats: bool,
        /// Directive sequence d_0,d_1,... for the standard family (default: all ones)
        #[arg(long, value_delimiter = ',')]
        directive: Option<Vec<u64>>,
    },
    /// Apply one edit and report r and r_dollar before and after
    Edit {
        #[command(flatten)]
        source: WordSource,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        pos: usize,
        /// Symbol to insert or substitute (a single byte)
        #[arg(long = "char")]
        sym: Option<String>,
    },
    /// Try every single edit of a word and summarise the extremes
    Scan {
        #[command(flatten)]
        source: WordSource,
        #[arg(long, value_enum, default_value_t = AlphabetArg::WordAlphabet)]
        alphabet: AlphabetArg,
        /// Summarise r_dollar instead of r in text output
        #[arg(long)]
        dollar: bool,
        /// Evaluate edits on all cores
        #[arg(long)]
        parallel: bool,
    },
    /// Run the closed-form checks
    Verify {
        /// Check identifier, e.g. wk.bwt; all checks when omitted
        #[arg(long)]
        check: Option<String>,
        /// Parameter k, as a single value or an inclusive range A..B
        #[arg(long, default_value = "6..10")]
        k: String,
        /// For tfam: the number of blocks i (with --k as the exponent)
        #[arg(long)]
        i: Option<usize>,
    },
    /// Print a block table
    Report {
        #[arg(value_enum)]
        table: Table,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Fibonacci,
    Standard,
    Central,
    Wk,
    Tfam,
    Revfib,
    Lyndonrot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Insert,
    Delete,
    Substitute,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlphabetArg {
    WordAlphabet,
    WordAlphabetPlusFresh,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Table2,
}
