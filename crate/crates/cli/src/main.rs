use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use hopfoid::doublegpd::{core_groupoid_square, validate_double, DoubleGroupoid};
use hopfoid::generators::{named_groupoid, pair_double, small_corpus, trivial_double, CorpusSpec};
use hopfoid::groupoid::validate_groupoid;
use hopfoid::hopfoid::{build_double, build_hopfoid, check_hopfoid, roundtrip_double, roundtrip_hopfoid, Hopfoid};
use hopfoid::json::{Decoded, Document, Kind};
use hopfoid::report::CheckReport;

/// Double groupoids and hopfoids over finite sets: validation, cores,
/// both constructions and round trips.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on
/// unreadable input or a document of the wrong kind.
#[derive(Parser)]
#[command(name = "hopfoid", version)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Write the primary output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of a groupoid, double groupoid or hopfoid.
    Validate { path: PathBuf },
    /// Core groupoid of a double groupoid.
    Core { path: PathBuf },
    /// Hopfoid of a double groupoid.
    Hopfoid { path: PathBuf },
    /// Double groupoid of a hopfoid.
    Double { path: PathBuf },
    /// Rebuild a double groupoid or hopfoid through the other side and compare.
    Roundtrip { path: PathBuf },
    /// Hopfoid axiom report.
    Check { path: PathBuf },
    /// Generate examples: `trivial <GROUP>`, `pair <GROUP>` or `corpus`.
    Gen {
        family: GenFamily,
        /// Z<n>, S3, pair<n> or triv<n>; not used for `corpus`.
        group: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 36)]
        max_size: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFamily {
    Trivial,
    Pair,
    Corpus,
}

/// Errors that are the input's fault rather than the mathematics'.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn load(path: &Path) -> Result<Decoded, InputError> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc = Document::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(doc.decode().with_context(|| format!("decoding {}", path.display()))?)
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Groupoid => "groupoid",
        Kind::DoubleGroupoid => "double-groupoid",
        Kind::Hopfoid => "hopfoid",
    }
}

fn wrong_kind(found: Kind, wanted: &str) -> InputError {
    InputError(anyhow!("expected a {wanted} document, found a {}", kind_name(found)))
}

fn load_double(path: &Path) -> Result<DoubleGroupoid, InputError> {
    match load(path)? {
        Decoded::DoubleGroupoid(d) => Ok(*d),
        other => Err(wrong_kind(other.kind(), "double-groupoid")),
    }
}

fn load_hopfoid(path: &Path) -> Result<Hopfoid, InputError> {
    match load(path)? {
        Decoded::Hopfoid(h) => Ok(*h),
        other => Err(wrong_kind(other.kind(), "hopfoid")),
    }
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialise")
}

struct Output<'a> {
    format: Format,
    out: Option<&'a Path>,
}

impl Output<'_> {
    fn emit(&self, text: &str) -> Result<(), InputError> {
        match self.out {
            Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?,
            None => {
                let mut stdout = io::stdout().lock();
                match writeln!(stdout, "{text}") {
                    Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                    other => other?,
                }
            }
        }
        Ok(())
    }

    fn report(&self, report: &CheckReport) -> Result<Outcome, InputError> {
        let text = match self.format {
            Format::Json => pretty(&serde_json::to_value(report)?),
            Format::Text => report.render_text().trim_end().to_owned(),
        };
        self.emit(&text)?;
        Ok(if report.passed() { Outcome::Pass } else { Outcome::Fail })
    }

    /// Documents are always JSON; text mode adds a summary on stderr.
    fn document(&self, doc: &Document, summary: String) -> Result<Outcome, InputError> {
        self.emit(&doc.encode())?;
        if self.format == Format::Text {
            eprintln!("{summary}");
        }
        Ok(Outcome::Pass)
    }
}

fn failure_report(subject: &str, name: &str, err: impl std::fmt::Display) -> CheckReport {
    let mut report = CheckReport::new(subject);
    report.record(name, "construction succeeds", Err(err.to_string()));
    report
}

fn run(cli: Cli) -> Result<Outcome, InputError> {
    let output = Output {
        format: cli.format,
        out: cli.out.as_deref(),
    };
    match cli.command {
        Command::Validate { path } => {
            let report = match load(&path)? {
                Decoded::Groupoid(g) => validate_groupoid(&g),
                Decoded::DoubleGroupoid(d) => validate_double(&d),
                Decoded::Hopfoid(h) => check_hopfoid(&h),
            };
            output.report(&report)
        }
        Command::Core { path } => {
            let d = load_double(&path)?;
            match core_groupoid_square(&d) {
                Ok(core) => output.document(
                    &Document::groupoid(&core),
                    format!(
                        "core of {}: {} arrows over {} objects",
                        d.squares(),
                        core.n_arrows(),
                        core.n_objects()
                    ),
                ),
                Err(err) => output.report(&failure_report("core", "core groupoid", err)),
            }
        }
        Command::Hopfoid { path } => {
            let d = load_double(&path)?;
            match build_hopfoid(&d) {
                Ok(h) => output.document(
                    &Document::hopfoid(&h),
                    format!("hopfoid on {} over {} core squares", h.carrier, h.base.len()),
                ),
                Err(err) => output.report(&failure_report("hopfoid", "forward construction", err)),
            }
        }
        Command::Double { path } => {
            let h = load_hopfoid(&path)?;
            match build_double(&h) {
                Ok(d) => output.document(
                    &Document::double(&d),
                    format!(
                        "double groupoid on {}: |V| = {}, |H| = {}, |M| = {}",
                        d.squares(),
                        d.right.n_arrows(),
                        d.bottom.n_arrows(),
                        d.right.n_objects()
                    ),
                ),
                Err(err) => output.report(&failure_report("double groupoid", "reverse construction", err)),
            }
        }
        Command::Roundtrip { path } => {
            let report = match load(&path)? {
                Decoded::DoubleGroupoid(d) => roundtrip_double(&d),
                Decoded::Hopfoid(h) => roundtrip_hopfoid(&h),
                other => return Err(wrong_kind(other.kind(), "double-groupoid or hopfoid")),
            };
            output.report(&report)
        }
        Command::Check { path } => output.report(&check_hopfoid(&load_hopfoid(&path)?)),
        Command::Gen {
            family,
            group,
            seed,
            max_size,
        } => generate(&output, family, group, seed, max_size),
    }
}

fn generate(
    output: &Output,
    family: GenFamily,
    group: Option<String>,
    seed: u64,
    max_size: usize,
) -> Result<Outcome, InputError> {
    if family == GenFamily::Corpus {
        let spec = CorpusSpec {
            seed,
            max_size,
            ..CorpusSpec::default()
        };
        let corpus = small_corpus(&spec)?;
        let Some(dir) = output.out else {
            let listing: Vec<Value> = corpus
                .iter()
                .map(|(name, d)| serde_json::json!({"name": name, "squares": d.n_squares()}))
                .collect();
            output.emit(&pretty(&Value::Array(listing)))?;
            return Ok(Outcome::Pass);
        };
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, d) in &corpus {
            let file: String = name
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
                .collect();
            let path = dir.join(format!("{}.json", file.trim_end_matches('_')));
            fs::write(&path, Document::double(d).encode() + "\n").with_context(|| format!("writing {}", path.display()))?;
        }
        eprintln!("wrote {} double groupoids to {}", corpus.len(), dir.display());
        return Ok(Outcome::Pass);
    }
    let name = group.ok_or_else(|| InputError(anyhow!("a group or groupoid name is required")))?;
    let g = named_groupoid(&name)?;
    let d = match family {
        GenFamily::Trivial => trivial_double(&g)?,
        GenFamily::Pair => pair_double(&g)?,
        GenFamily::Corpus => unreachable!(),
    };
    if d.n_squares() > max_size {
        return Err(InputError(anyhow!("{} squares exceed --max-size {max_size}", d.n_squares())));
    }
    output.document(&Document::double(&d), format!("double groupoid on {}", d.squares()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(InputError(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
