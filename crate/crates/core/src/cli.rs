//! Command-line entry point: `run`, `matrix` and `list`.
//!
//! Exit codes: 0 success, 1 falsification or matrix difference, 2 gave up,
//! 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};

use crate::corpus::{Bindings, Family};
use crate::error::UsageError;
use crate::gen::Seed;
use crate::killmatrix::{compare_matrix, run_matrix, ExhaustiveDomain, IntDomain, KillMatrix, Mode};
use crate::runner::{exit_code, format_json, format_text, run_suite, Suite, TestParams};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(name = "propcheck", about = "Property-based testing of a small function corpus")]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatrixMode {
    Random,
    Exhaustive,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run property suites and report each result.
    Run {
        /// Suite to run (repeatable), or `all`.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        /// Only run properties whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
        /// Root seed; chosen from the clock and printed when omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        min_success: u64,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        max_discard_ratio: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Bind a variant in place of its family's reference implementation.
        #[arg(long = "variant", value_name = "NAME")]
        variants: Vec<String>,
        /// Evaluate sum_rec with real recursion and a frame limit.
        #[arg(long)]
        native_recursion: bool,
    },
    /// Evaluate a family's properties against its variants.
    Matrix {
        /// One of max, sum, count, codec, codec_bij.
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value_t = MatrixMode::Exhaustive)]
        mode: MatrixMode,
        /// Interval for 32-bit integer slots.
        #[arg(long, value_name = "LO..HI", allow_hyphen_values = true, value_parser = parse_i32_range)]
        domain: Option<(i32, i32)>,
        /// Explicit value set for 32-bit integer slots; overrides --domain.
        #[arg(long, value_name = "CSV", allow_hyphen_values = true, value_delimiter = ',')]
        int_values: Option<Vec<i32>>,
        /// Element values for integer list slots.
        #[arg(long, value_name = "CSV", allow_hyphen_values = true, value_delimiter = ',')]
        list_values: Option<Vec<i32>>,
        /// Longest integer list enumerated.
        #[arg(long)]
        max_list_len: Option<usize>,
        /// Interval for arbitrary-precision integer slots.
        #[arg(long, value_name = "LO..HI", allow_hyphen_values = true, value_parser = parse_i64_range)]
        big_domain: Option<(i64, i64)>,
        /// Longest bit list enumerated.
        #[arg(long)]
        max_bits_len: Option<usize>,
        /// Restrict to these variants (repeatable); default is all.
        #[arg(long = "variant", value_name = "NAME")]
        variants: Vec<String>,
        /// Root seed for random mode.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        min_success: u64,
        /// Expected matrix document to diff against.
        #[arg(long, value_name = "PATH")]
        expected: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Evaluate sum_rec with real recursion and a frame limit.
        #[arg(long)]
        native_recursion: bool,
    },
    /// List suites, properties and variants.
    List,
}

fn parse_range<T: std::str::FromStr + PartialOrd>(s: &str) -> Result<(T, T), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let lo: T = lo.trim().parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: T = hi.trim().parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok((lo, hi))
}

fn parse_i32_range(s: &str) -> Result<(i32, i32), String> {
    parse_range(s)
}

fn parse_i64_range(s: &str) -> Result<(i64, i64), String> {
    parse_range(s)
}

fn clock_seed() -> u64 {
    let now = SystemTime::now().duration_since(UNIX_EPOCH).unwrap_or_default();
    now.as_secs().wrapping_mul(1_000_000_007) ^ u64::from(now.subsec_nanos())
}

fn usage(err: impl std::fmt::Display) -> u8 {
    eprintln!("error: {err}");
    EXIT_USAGE
}

/// Parses `args` (including the program name) and runs the command,
/// writing reports to `out`. Returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = match Invocation::try_parse_from(args) {
        Ok(inv) => inv,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            eprint!("{e}");
            return EXIT_USAGE;
        }
    };
    let result = match inv.command {
        Command::Run {
            suites,
            filter,
            seed,
            min_success,
            max_discard_ratio,
            format,
            variants,
            native_recursion,
        } => {
            let mut params = TestParams::with_seed(Seed::from_u64(0));
            params.min_success = min_success as usize;
            params.max_discard_ratio = max_discard_ratio as usize;
            let opts = RunOptions {
                suites,
                filter,
                seed: seed.unwrap_or_else(clock_seed),
                params,
                format,
                variants,
                native_recursion,
            };
            cmd_run(&opts, out)
        }
        Command::Matrix {
            family,
            mode,
            domain,
            int_values,
            list_values,
            max_list_len,
            big_domain,
            max_bits_len,
            variants,
            seed,
            min_success,
            expected,
            format,
            native_recursion,
        } => {
            let mut d = ExhaustiveDomain::default();
            if let Some((lo, hi)) = domain {
                d.ints = IntDomain::Range(lo, hi);
            }
            if let Some(v) = int_values {
                d.ints = IntDomain::Values(v);
            }
            if let Some(v) = list_values {
                d.list_values = v;
            }
            if let Some(n) = max_list_len {
                d.max_list_len = n;
            }
            if let Some((lo, hi)) = big_domain {
                d.bigint_lo = lo;
                d.bigint_hi = hi;
            }
            if let Some(n) = max_bits_len {
                d.max_bits_len = n;
            }
            let seed = seed.unwrap_or_else(clock_seed);
            let mode = match mode {
                MatrixMode::Exhaustive => Mode::Exhaustive(d),
                MatrixMode::Random => {
                    let mut params = TestParams::with_seed(Seed::from_u64(seed));
                    params.min_success = min_success as usize;
                    Mode::Random(params)
                }
            };
            let opts = MatrixOptions { family, mode, seed, variants, expected, format, native_recursion };
            cmd_matrix(&opts, out)
        }
        Command::List => cmd_list(out),
    };
    result.unwrap_or_else(usage)
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub suites: Vec<String>,
    pub filter: Option<String>,
    pub seed: u64,
    /// `root_seed` is overwritten from `seed`.
    pub params: TestParams,
    pub format: Format,
    pub variants: Vec<String>,
    pub native_recursion: bool,
}

fn bindings_for(variants: &[String], native_recursion: bool) -> Result<Bindings, UsageError> {
    let mut b = Bindings::default();
    for v in variants {
        let mut matched = false;
        for family in Family::ALL {
            if family.variant_names().contains(&v.as_str()) {
                family.rebind(&mut b, v, native_recursion)?;
                matched = true;
            }
        }
        if !matched {
            return Err(UsageError::UnknownVariant { family: "any".into(), variant: v.clone() });
        }
    }
    Ok(b)
}

fn selected_suites(names: &[String], bindings: &Bindings) -> Result<Vec<Suite>, UsageError> {
    if names.is_empty() || names.iter().any(|n| n == "all") {
        return Ok(crate::corpus::suites(bindings));
    }
    names
        .iter()
        .map(|n| n.parse::<Family>().map(|f| f.suite(bindings)).map_err(|_| UsageError::UnknownSuite(n.clone())))
        .collect()
}

/// Runs the selected suites and writes the report; returns the exit code.
pub fn cmd_run(opts: &RunOptions, out: &mut dyn Write) -> Result<u8, UsageError> {
    let bindings = bindings_for(&opts.variants, opts.native_recursion)?;
    let mut suites = selected_suites(&opts.suites, &bindings)?;
    if let Some(f) = &opts.filter {
        for s in &mut suites {
            s.properties.retain(|p| p.name().contains(f.as_str()));
        }
    }
    let mut params = opts.params;
    params.root_seed = Seed::from_u64(opts.seed);
    let results: Vec<_> = suites.iter().flat_map(|s| run_suite(s, &params)).collect();
    match opts.format {
        Format::Text => {
            let mut text = format!("seed: {}\n", opts.seed);
            for r in &results {
                for line in format_text(r) {
                    text.push_str(&line);
                    text.push('\n');
                }
            }
            write_all(out, &text);
        }
        Format::Json => write_all(out, &(format_json(&results) + "\n")),
    }
    Ok(exit_code(&results) as u8)
}

#[derive(Clone, Debug)]
pub struct MatrixOptions {
    pub family: String,
    pub mode: Mode,
    /// Raw seed echoed in random-mode output; `Mode::Random` holds the
    /// derived [`Seed`].
    pub seed: u64,
    pub variants: Vec<String>,
    pub expected: Option<std::path::PathBuf>,
    pub format: Format,
    pub native_recursion: bool,
}

pub fn cmd_matrix(opts: &MatrixOptions, out: &mut dyn Write) -> Result<u8, UsageError> {
    let family: Family = opts.family.parse()?;
    let variants: Vec<&str> = if opts.variants.is_empty() {
        family.variant_names().to_vec()
    } else {
        opts.variants.iter().map(String::as_str).collect()
    };
    let expected = match &opts.expected {
        Some(path) => {
            let doc = std::fs::read_to_string(path)
                .map_err(|e| UsageError::InvalidDocument(format!("{}: {e}", path.display())))?;
            Some(KillMatrix::from_json(&doc)?)
        }
        None => None,
    };
    let mut matrix = run_matrix(family, &variants, &opts.mode, opts.native_recursion)?;
    if matrix.seed.is_some() {
        matrix.seed = Some(opts.seed);
    }
    let diff = match &expected {
        Some(e) => Some(compare_matrix(&matrix, e)?),
        None => None,
    };
    match opts.format {
        Format::Text => {
            let mut text = matrix.render_text();
            if let Some(diff) = &diff {
                if diff.is_empty() {
                    text.push_str("expected: exact match\n");
                } else {
                    text.push_str(&format!("expected: {} differing cells\n", diff.len()));
                    for d in diff {
                        text.push_str(&format!("  {d}\n"));
                    }
                }
            }
            write_all(out, &text);
        }
        Format::Json => {
            let doc = match &diff {
                Some(diff) => serde_json::to_string_pretty(&serde_json::json!({
                    "matrix": matrix,
                    "diff": diff,
                }))
                .expect("serializes"),
                None => matrix.to_json(),
            };
            write_all(out, &(doc + "\n"));
        }
    }
    Ok(match diff {
        Some(d) if !d.is_empty() => EXIT_FAILED,
        _ => EXIT_OK,
    })
}

pub fn cmd_list(out: &mut dyn Write) -> Result<u8, UsageError> {
    let bindings = Bindings::default();
    let mut text = String::new();
    for family in Family::ALL {
        let suite = family.suite(&bindings);
        text.push_str(&format!("{} -- {}\n", family.name(), family.topic()));
        text.push_str(&format!("  variants: {}\n", family.variant_names().join(", ")));
        for p in &suite.properties {
            let shape = match p.arity() {
                0 => "claim".to_owned(),
                n => format!("forAll/{n}"),
            };
            text.push_str(&format!("  {}.{}  [{shape}]\n", family.name(), p.name()));
        }
    }
    write_all(out, &text);
    Ok(EXIT_OK)
}

fn write_all(out: &mut dyn Write, text: &str) {
    // A closed stdout is not worth a panic.
    let _ = out.write_all(text.as_bytes());
}
