//! `pph`: build, query, verify and inspect parameterized position heap indexes.
//!
//! Exit codes: 0 on success (including empty answers), 1 on usage errors,
//! 2 on input or validation errors, 3 on internal invariant violations and
//! failed verification runs.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pph::oracle::{cross_check, CheckConfig, Fault, InstanceLimits};
use pph::trie::parse_strings;
use pph::{export_dot, Builder, DotTarget, Index, InputTrie, Stats};

#[derive(Parser)]
#[command(name = "pph", version, about = "Parameterized pattern matching over string sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a strings file or a trie file.
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Strings)]
        format: Format,
        #[arg(long)]
        output: PathBuf,
        /// Use the definitional heap construction.
        #[arg(long)]
        naive: bool,
    },
    /// Report every input-trie node whose string starts with a p-match of the pattern.
    Query {
        #[arg(long)]
        index: PathBuf,
        /// The pattern, or `-` to read one pattern per line from stdin.
        #[arg(long)]
        pattern: String,
        /// Print (string, offset) pairs instead of node ids.
        #[arg(long, conflicts_with = "count_only")]
        expand: bool,
        /// Print only the number of matching nodes.
        #[arg(long)]
        count_only: bool,
    },
    /// Cross-check both constructions and all queries against brute force.
    Verify {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        sigma_max: usize,
        #[arg(long, default_value_t = 2)]
        pi_max: usize,
        #[arg(long, default_value_t = 6)]
        len_max: usize,
        #[arg(long, default_value_t = 6)]
        strings_max: usize,
        /// Every pattern up to this length is queried.
        #[arg(long, default_value_t = 4)]
        pattern_len_max: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Write a Graphviz drawing of the trie, the pCST or the heap.
    Export {
        #[arg(long)]
        index: PathBuf,
        #[arg(long, value_enum)]
        what: What,
        /// Output file, or `-` for stdout.
        #[arg(long)]
        output: PathBuf,
    },
    /// Print size and shape statistics.
    Stats {
        #[arg(long)]
        index: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Strings,
    Trie,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Trie,
    Pcst,
    Heap,
}

impl From<What> for DotTarget {
    fn from(w: What) -> Self {
        match w {
            What::Trie => DotTarget::Trie,
            What::Pcst => DotTarget::Pcst,
            What::Heap => DotTarget::Heap,
        }
    }
}

/// A failed verification run; reported with exit code 3.
#[derive(Debug)]
struct VerifyFailed;

impl std::fmt::Display for VerifyFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerifyFailed {}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let internal = e.is::<VerifyFailed>() || e.downcast_ref::<pph::Error>().is_some_and(|e| e.is_internal());
            eprintln!("error: {e:#}");
            ExitCode::from(if internal { 3 } else { 2 })
        }
    }
}

fn run(command: Command) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Build { input, format, output, naive } => {
            let text = read(&input)?;
            let trie = match format {
                Format::Strings => {
                    let (alphabet, strings) = parse_strings(&text)?;
                    InputTrie::from_strings(alphabet, &strings)?
                }
                Format::Trie => InputTrie::from_text(&text)?,
            };
            let builder = if naive { Builder::Naive } else { Builder::Fast };
            let (index, build) = Index::build(trie, builder)?;
            index.save(&output)?;
            writeln!(out, "{}", Stats::of(&index, build))?;
        }
        Command::Query { index, pattern, expand, count_only } => {
            let index = Index::load(&index)?;
            if pattern == "-" {
                for line in io::stdin().lock().lines() {
                    let line = line.context("reading patterns from stdin")?;
                    let p = line.trim();
                    if p.is_empty() {
                        continue;
                    }
                    writeln!(out, "# {p}")?;
                    answer(&mut out, &index, p, expand, count_only)?;
                }
            } else {
                answer(&mut out, &index, &pattern, expand, count_only)?;
            }
        }
        Command::Verify { samples, seed, sigma_max, pi_max, len_max, strings_max, pattern_len_max, inject_fault } => {
            if sigma_max + pi_max == 0 || len_max == 0 || strings_max == 0 {
                anyhow::bail!(pph::Error::Validation {
                    line: None,
                    msg: "limits must allow at least one symbol, string and position".into()
                });
            }
            let config = CheckConfig {
                samples,
                seed,
                limits: InstanceLimits { sigma_max, pi_max, strings_max, len_max },
                pattern_len_max,
                exact: false,
                fault: inject_fault.then_some(Fault::CorruptMrp),
            };
            let report = cross_check(&config);
            write!(out, "{report}")?;
            if !report.passed() {
                return Err(VerifyFailed.into());
            }
        }
        Command::Export { index, what, output } => {
            let index = Index::load(&index)?;
            let dot = export_dot(&index, what.into());
            if output == Path::new("-") {
                out.write_all(dot.as_bytes())?;
            } else {
                fs::write(&output, dot).with_context(|| format!("writing {}", output.display()))?;
            }
        }
        Command::Stats { index } => {
            let index = Index::load(&index)?;
            writeln!(out, "{}", Stats::of(&index, None))?;
        }
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| pph::Error::Io { path: path.to_owned(), source: e }.into())
}

fn answer(out: &mut impl Write, index: &Index, pattern: &str, expand: bool, count_only: bool) -> Result<()> {
    let result = index.query_str(pattern, expand).with_context(|| format!("pattern {pattern:?}"))?;
    if count_only {
        writeln!(out, "{}", result.pocc())?;
    } else if let Some(pairs) = &result.expanded {
        for (s, offset) in pairs {
            writeln!(out, "s{s} {offset}")?;
        }
    } else {
        for v in &result.trie_hits {
            writeln!(out, "{v}")?;
        }
    }
    Ok(())
}
