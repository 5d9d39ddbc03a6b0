//! Command-line front end. Every command is a thin adapter over the library.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use crate::checker::{check_proof, compile_proof};
use crate::codec::{self, Decoded, GoedelNumber, SymbolTable, DEFAULT_DIGIT_CAP};
use crate::enumerator::{self, Budget, StreamKind};
use crate::lemmas;
use crate::par::Exec;
use crate::predicates::Kernel;
use crate::reader::{self, FormulaFile, ProofScript};
use crate::syntax::Formula;

/// Environment variable naming the default symbol-table file.
pub const TABLE_ENV: &str = "GOEDELKIT_TABLE";

#[derive(Debug, Parser)]
#[command(name = "goedelkit", version, about = "Goedel numbering, proof predicates and proof search")]
pub struct Cli {
    /// Symbol-table override file (`symbol = code` lines).
    #[arg(long, global = true, value_name = "CFG")]
    pub table: Option<PathBuf>,
    /// Run without worker threads.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Goedel number of a formula file.
    Encode {
        file: PathBuf,
        /// Also print the integer when it has at most this many digits.
        #[arg(long, value_name = "DIGIT_CAP")]
        materialize: Option<usize>,
        /// Number the file's symbols as written, without re-spelling.
        #[arg(long)]
        raw: bool,
    },
    /// Print the expression (or sequence) a factored number codes.
    Decode { number: String },
    /// Check a proof script line by line and with the proof predicate.
    CheckProof { file: PathBuf },
    /// Check that a script refutes a formula.
    CheckRefutation {
        file: PathBuf,
        #[arg(long, value_name = "FORMULA_FILE")]
        of: PathBuf,
    },
    /// Stream theorems or refutations found within a budget.
    Enumerate {
        #[arg(long, value_enum, default_value_t = Kind::Pf)]
        kind: Kind,
        #[arg(long, default_value_t = Budget::default().max_steps)]
        steps: usize,
        #[arg(long, default_value_t = Budget::default().max_depth)]
        depth: usize,
        #[arg(long, default_value_t = Budget::default().max_formula_size)]
        size: usize,
    },
    /// Look for a proof or refutation of a formula.
    Search {
        file: PathBuf,
        #[arg(long, default_value_t = Budget::default().max_steps)]
        steps: usize,
        #[arg(long, default_value_t = Budget::default().max_depth)]
        depth: usize,
        #[arg(long, default_value_t = Budget::default().max_formula_size)]
        size: usize,
        /// Print the witness script after the verdict.
        #[arg(long)]
        script: bool,
    },
    /// Run the lemma checks over a directory of scripts.
    Lemmas {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Factor an integer over consecutive primes.
    Factor {
        integer: String,
        #[arg(long, default_value_t = DEFAULT_DIGIT_CAP)]
        digits: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Pf,
    Rf,
}

/// Exit status: success, domain-level negative, usage or input error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Negative = 1,
    Usage = 2,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_formula_file(path: &Path) -> anyhow::Result<FormulaFile> {
    reader::parse_formula_file_any(&read(path)?).with_context(|| path.display().to_string())
}

fn load_formula(path: &Path) -> anyhow::Result<Formula> {
    reader::parse_formula_file(&read(path)?).with_context(|| path.display().to_string())
}

fn load_proof(path: &Path) -> anyhow::Result<ProofScript> {
    reader::parse_proof(&read(path)?).with_context(|| path.display().to_string())
}

fn table(cli: &Cli) -> anyhow::Result<SymbolTable> {
    let path = cli.table.clone().or_else(|| std::env::var_os(TABLE_ENV).map(PathBuf::from));
    match path {
        Some(p) => SymbolTable::load(&p),
        None => Ok(SymbolTable::canonical()),
    }
}

/// Formula files found in a corpus directory, paired with their `α`:
/// `name.paproof` with `name.pafml` if present, else its last line.
pub fn load_corpus(dir: &Path) -> anyhow::Result<Vec<(String, ProofScript, Formula)>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "paproof"))
        .collect();
    paths.sort();
    let mut out = Vec::with_capacity(paths.len());
    for p in paths {
        let script = load_proof(&p)?;
        let alpha_path = p.with_extension("pafml");
        let alpha = if alpha_path.exists() {
            load_formula(&alpha_path)?
        } else {
            script.last_formula().cloned().context("empty script")?
        };
        let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        out.push((name, script, alpha));
    }
    Ok(out)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<Exit> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let kernel = Kernel::new(table(cli)?, Default::default());
    let tbl = &kernel.table;
    match &cli.command {
        Command::Encode { file, materialize, raw } => {
            let g = match load_formula_file(file)? {
                FormulaFile::Raw(symbols) => codec::encode_symbols(&symbols, tbl)?,
                FormulaFile::Formula(f) if *raw => codec::encode_symbols(&crate::syntax::flatten(&f), tbl)?,
                FormulaFile::Formula(f) => codec::encode_formula(&f, tbl)?,
            };
            writeln!(out, "{g}")?;
            if let Some(cap) = materialize {
                match g.materialize(*cap) {
                    Ok(n) => writeln!(out, "{n}")?,
                    Err(e) => writeln!(out, "# {e}")?,
                }
            }
            Ok(Exit::Ok)
        }
        Command::Decode { number } => {
            let g: GoedelNumber = number.parse()?;
            match codec::decode(&g, tbl)? {
                Decoded::Expression(e) => writeln!(out, "{}", reader::render_expression(&e))?,
                Decoded::Sequence(lines) => {
                    for (i, e) in lines.iter().enumerate() {
                        writeln!(out, "{}: {}", i + 1, reader::render_expression(e))?;
                    }
                }
            }
            Ok(Exit::Ok)
        }
        Command::CheckProof { file } => {
            let script = load_proof(file)?;
            let report = check_proof(&script, &kernel.axioms);
            write!(out, "{report}")?;
            let x = compile_proof(&script, tbl)?;
            let v = codec::encode_formula(script.last_formula().context("empty script")?, tbl)?;
            let holds = kernel.pf(&x, &v);
            writeln!(out, "PF holds: {}", yes_no(holds))?;
            Ok(if holds { Exit::Ok } else { Exit::Negative })
        }
        Command::CheckRefutation { file, of } => {
            let script = load_proof(file)?;
            let alpha = load_formula(of)?;
            let report = check_proof(&script, &kernel.axioms);
            write!(out, "{report}")?;
            let x = compile_proof(&script, tbl)?;
            let holds = kernel.rf(&x, &codec::encode_formula(&alpha, tbl)?);
            writeln!(out, "RF holds: {}", yes_no(holds))?;
            Ok(if holds { Exit::Ok } else { Exit::Negative })
        }
        Command::Enumerate { kind, steps, depth, size } => {
            let budget = Budget::new(*steps, *depth, *size);
            let mut emitted = 0usize;
            match kind {
                Kind::Pf => {
                    let mut s = enumerator::enumerate_theorems(&kernel, budget, exec);
                    for e in s.by_ref() {
                        writeln!(out, "{}", e.record(StreamKind::Pf))?;
                        emitted += 1;
                    }
                    writeln!(out, "# emitted={emitted} rejected={} steps={}", s.stats().rejected, s.steps())?;
                }
                Kind::Rf => {
                    let mut s = enumerator::enumerate_refutations(&kernel, budget, exec);
                    for e in s.by_ref() {
                        writeln!(out, "{}", e.record(StreamKind::Rf))?;
                        emitted += 1;
                    }
                    writeln!(out, "# emitted={emitted} rejected={}", s.rejected())?;
                }
            }
            Ok(Exit::Ok)
        }
        Command::Search { file, steps, depth, size, script } => {
            let alpha = load_formula(file)?;
            let verdict = enumerator::search(&kernel, &alpha, Budget::new(*steps, *depth, *size), exec);
            writeln!(out, "{verdict}")?;
            if *script {
                if let enumerator::SearchVerdict::Proved { script, .. } | enumerator::SearchVerdict::Refuted { script, .. } =
                    &verdict
                {
                    write!(out, "{}", reader::render_proof(script))?;
                }
            }
            Ok(if verdict.witness().is_some() { Exit::Ok } else { Exit::Negative })
        }
        Command::Lemmas { corpus, json } => {
            let items: Vec<_> = load_corpus(corpus)?.into_iter().map(|(_, s, a)| (s, a)).collect();
            let summary = lemmas::run_corpus(&kernel, &items, exec);
            if *json {
                writeln!(out, "{}", serde_json::to_string_pretty(&summary.to_json())?)?;
            } else {
                write!(out, "{}", summary.render_text())?;
            }
            Ok(if summary.passed() { Exit::Ok } else { Exit::Negative })
        }
        Command::Factor { integer, digits } => {
            let n: num_bigint::BigUint = match integer.trim().parse() {
                Ok(n) => n,
                Err(_) => bail!("not a decimal integer: {integer:?}"),
            };
            match codec::factorize(&n, *digits) {
                Ok(g) => {
                    writeln!(out, "{g}")?;
                    Ok(Exit::Ok)
                }
                Err(codec::CodecError::NotASequence) => {
                    writeln!(out, "NotASequence")?;
                    Ok(Exit::Negative)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

/// Run with explicit arguments and output streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return if code == 0 { 0 } else { Exit::Usage as i32 };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code as i32,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            Exit::Usage as i32
        }
    }
}

pub fn main() -> std::process::ExitCode {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::ExitCode::from(code as u8)
}
