//! Command-line front end: `analyze`, `enumerate` and `verify`.
//!
//! Exit codes: 0 when every asserted check passes, 1 for usage or input
//! errors, 2 when an inequality is falsified (or, for `verify`, the check
//! `h_i >= h_{d-i} >= 0` fails).

pub mod json;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use birkhoff_core::facenum::decompose;
use birkhoff_core::poset::{self, enumerate_classes, Poset, ENUMERATION_LIMIT};
use birkhoff_core::verify::{analyze_poset, batch_verify, BatchConfig, OracleMode, TheoremVerdict, BATCH_GATE};
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::json::{verdict_name, AnalysisDocument, BatchDocument, Int, PosetDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FALSIFIED: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: String,
        source: birkhoff_core::Error,
    },
    #[error(transparent)]
    Core(#[from] birkhoff_core::Error),
    #[error("{0} (pass --force to lift the gate)")]
    Gate(birkhoff_core::Error),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "birkhoff", version, about = "Chain counts of distributive lattices J(P)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyse J(P) for one poset file.
    Analyze {
        /// Poset file: `n <count>` then `a < b` lines, or a JSON object
        /// with `n` and `covers`.
        file: PathBuf,
        /// Cross-check against the explicit order complex and its boundary.
        #[arg(long)]
        oracle: bool,
        /// Show the basis decomposition of the f-vector.
        #[arg(long)]
        decompose: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List one poset per isomorphism class on N elements.
    Enumerate {
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every check over all posets with 1..=N elements.
    Verify {
        #[arg(long = "n-max")]
        n_max: usize,
        /// Worker threads, or `max` for all cores.
        #[arg(long, default_value = "max", value_parser = parse_jobs)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Allow N past the default gate.
        #[arg(long)]
        force: bool,
    },
}

/// `max` maps to 0, which the worker pool reads as "all cores".
fn parse_jobs(s: &str) -> Result<usize, String> {
    if s == "max" {
        return Ok(0);
    }
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer or `max`, got {s:?}")),
        Ok(k) => Ok(k),
    }
}

/// Parses and runs one invocation, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn execute(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Analyze {
            file,
            oracle,
            decompose,
            format,
        } => cmd_analyze(file, *oracle, *decompose, *format, out),
        Command::Enumerate { n, out: path, format } => cmd_enumerate(*n, path.as_ref(), *format, out, err),
        Command::Verify {
            n_max,
            jobs,
            format,
            force,
        } => {
            if *force && *n_max > BATCH_GATE {
                writeln!(
                    err,
                    "warning: --force lifts the n-max gate of {BATCH_GATE}; expect long runtimes"
                )?;
            }
            let config = BatchConfig {
                n_max: *n_max,
                jobs: *jobs,
                force: *force,
            };
            cmd_verify(&config, *format, out, err).map_err(|e| match e {
                CliError::Core(birkhoff_core::Error::Size { what, limit, actual }) if !*force => {
                    CliError::Gate(birkhoff_core::Error::Size { what, limit, actual })
                }
                other => other,
            })
        }
    }
}

/// Reads a poset in either the line format or the JSON form.
pub fn read_poset(input: &str) -> Result<Poset, birkhoff_core::Error> {
    if input.trim_start().starts_with('{') {
        let doc: PosetDoc = serde_json::from_str(input).map_err(|e| birkhoff_core::Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let covers: Vec<(usize, usize)> = doc.covers.iter().map(|&[a, b]| (a, b)).collect();
        Poset::from_covers(doc.n, &covers)
    } else {
        poset::parse_text(input)
    }
}

pub fn analysis_document(
    poset: &Poset,
    oracle: bool,
    with_decomposition: bool,
) -> Result<(AnalysisDocument, TheoremVerdict), birkhoff_core::Error> {
    let mode = if oracle {
        OracleMode::Required
    } else {
        OracleMode::Off
    };
    let analysis = analyze_poset(poset, mode)?;
    let dec = match (&analysis.h, with_decomposition) {
        (Some(h), true) => Some(decompose(h)),
        _ => None,
    };
    Ok((AnalysisDocument::new(poset, &analysis, dec.as_ref()), analysis.verdict))
}

pub fn cmd_analyze(
    file: &PathBuf,
    oracle: bool,
    with_decomposition: bool,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let path = file.display().to_string();
    let input = std::fs::read_to_string(file).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let poset = read_poset(&input).map_err(|source| CliError::Input { path, source })?;
    let (doc, verdict) = analysis_document(&poset, oracle, with_decomposition)?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serialisable"))?,
        Format::Text => out.write_all(render_analysis(&doc).as_bytes())?,
    }
    Ok(if verdict == TheoremVerdict::Falsified {
        EXIT_FALSIFIED
    } else {
        EXIT_OK
    })
}

fn join(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn render_analysis(doc: &AnalysisDocument) -> String {
    let mut s = String::new();
    let covers: Vec<String> = doc.poset.covers.iter().map(|[a, b]| format!("{a}<{b}")).collect();
    let _ = writeln!(s, "poset        n = {}, covers [{}]", doc.poset.n, covers.join(" "));
    let _ = writeln!(
        s,
        "lattice      {} ideals, d = {}, {}",
        doc.lattice.ideal_count,
        doc.lattice.d,
        if doc.lattice.boolean { "boolean" } else { "not boolean" }
    );
    let _ = writeln!(s, "c-vector     {}", join(&doc.c_vector));
    let _ = writeln!(s, "f-vector     {}", join(&doc.f_vector));
    let _ = writeln!(s, "h-vector     {}", join(&doc.h_vector));
    let _ = writeln!(s, "g-vector     {}", join(&doc.g_vector));
    let _ = writeln!(s, "palindromic  {}", doc.dehn_sommerville);
    if let Some(w) = &doc.window {
        let _ = writeln!(
            s,
            "window       delta = {}, epsilon = {}, descent_start = {}, peak window [{}, {}]",
            w.delta, w.epsilon, w.descent_start, w.peak_window[0], w.peak_window[1]
        );
    }
    match &doc.theorem {
        Some(t) => {
            let _ = writeln!(
                s,
                "theorem      {} (rising {}, falling {})",
                t.verdict,
                if t.ascending_ok { "ok" } else { "FAILS" },
                if t.descending_ok { "ok" } else { "FAILS" }
            );
            for v in &t.violations {
                let _ = writeln!(s, "  violation  {} at index {}", v.kind, v.index);
            }
            let _ = writeln!(
                s,
                "unimodal     {}{}",
                t.unimodal,
                if t.unimodal {
                    String::new()
                } else {
                    format!(" (valleys {:?})", t.unimodality_violations)
                }
            );
        }
        None => {
            let _ = writeln!(s, "theorem      {}", verdict_name(TheoremVerdict::Vacuous));
        }
    }
    let _ = writeln!(s, "prop4        {}", doc.prop4);
    if let Some(o) = &doc.oracle {
        let _ = writeln!(
            s,
            "oracle       f = {} ({}), pure {}",
            join(&o.f_vector_bruteforce),
            if o.matches { "matches" } else { "MISMATCH" },
            o.pure
        );
        match &o.boundary {
            Some(b) => {
                let _ = writeln!(
                    s,
                    "boundary     f = {}, h_i - h_(d-i) = {}, g = {}: {}",
                    join(&b.boundary_f_vector),
                    join(&b.h_differences),
                    join(&b.boundary_g_vector),
                    if b.holds { "holds" } else { "FAILS" }
                );
            }
            None => {
                let _ = writeln!(s, "boundary     not applicable");
            }
        }
    }
    if let Some(dec) = &doc.decomposition {
        let _ = writeln!(s, "decomposition");
        for t in &dec.terms {
            let _ = writeln!(s, "  {:>6} * {}^{} = {}", t.coefficient.to_string(), t.basis, t.i, join(&t.vector));
        }
        let _ = writeln!(
            s,
            "  sum {}{}",
            join(&dec.sum),
            if dec.has_negative_coefficient {
                " (negative coefficients)"
            } else {
                ""
            }
        );
    }
    s
}

pub fn cmd_enumerate(
    n: usize,
    path: Option<&PathBuf>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    if n > ENUMERATION_LIMIT {
        return Err(birkhoff_core::Error::Size {
            what: "poset size for enumeration",
            limit: ENUMERATION_LIMIT,
            actual: n,
        }
        .into());
    }
    let classes = enumerate_classes(n)?;
    let body = match format {
        Format::Text => {
            let records: Vec<String> = classes
                .iter()
                .map(|(key, p)| format!("# key {key}\n{}", poset::to_text(p)))
                .collect();
            records.join("\n")
        }
        Format::Json => {
            let docs: Vec<PosetDoc> = classes.iter().map(|(_, p)| PosetDoc::from(p)).collect();
            serde_json::to_string_pretty(&docs).expect("serialisable") + "\n"
        }
    };
    match path {
        Some(p) => std::fs::write(p, body).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        })?,
        None => out.write_all(body.as_bytes())?,
    }
    writeln!(err, "{} posets on {n} elements", classes.len())?;
    Ok(EXIT_OK)
}

/// Splits an `enumerate` text file back into posets.
pub fn read_poset_records(input: &str) -> Result<Vec<Poset>, birkhoff_core::Error> {
    let mut posets = Vec::new();
    let mut start_line = 0;
    let mut current = String::new();
    let mut has_header = false;
    for (i, line) in input.lines().enumerate() {
        let trimmed = line.trim_start();
        let boundary = trimmed.starts_with("n ") || trimmed.starts_with("# key");
        if boundary && has_header {
            posets.push(parse_record(&current, start_line)?);
            current.clear();
            has_header = false;
        }
        if current.is_empty() {
            start_line = i;
        }
        has_header |= trimmed.starts_with("n ");
        current.push_str(line);
        current.push('\n');
    }
    if !current.trim().is_empty() {
        posets.push(parse_record(&current, start_line)?);
    }
    Ok(posets)
}

fn parse_record(text: &str, offset: usize) -> Result<Poset, birkhoff_core::Error> {
    poset::parse_text(text).map_err(|e| match e {
        birkhoff_core::Error::Parse { line, message } => birkhoff_core::Error::Parse {
            line: line + offset,
            message,
        },
        other => other,
    })
}

pub fn render_batch(doc: &BatchDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n_max                       {}", doc.n_max);
    let _ = writeln!(s, "posets tested               {} {:?}", doc.posets_tested, doc.classes_per_n);
    let _ = writeln!(
        s,
        "lattices                    {} boolean, {} not boolean, {} with a simplex order complex",
        doc.lattices_boolean, doc.lattices_nonboolean, doc.simplex_lattices
    );
    let _ = writeln!(s, "theorem passes              {}", doc.theorem_passes);
    let _ = writeln!(s, "boolean d <= 2 (recorded)   {}", doc.theorem_informational);
    let _ = writeln!(
        s,
        "falsifications              {} ({} with f_0 > d)",
        doc.falsifications, doc.falsifications_exceeding_simplex
    );
    let _ = writeln!(s, "prop4 failures              {}", doc.prop4_failures);
    let _ = writeln!(
        s,
        "prop2 failures              {} ({} with f_0 > d)",
        doc.prop2_failures, doc.prop2_failures_exceeding_simplex
    );
    let _ = writeln!(s, "sphere/ball failures        {}", doc.dichotomy_failures);
    let _ = writeln!(s, "euler failures              {}", doc.euler_failures);
    let _ = writeln!(s, "decomposition failures      {}", doc.decomposition_failures);
    let _ = writeln!(
        s,
        "oracle                      {} checked, {} mismatches, {} impure",
        doc.oracle_checked, doc.oracle_mismatches, doc.purity_failures
    );
    let _ = writeln!(
        s,
        "boundary relation           {} checked, {} failures",
        doc.boundary_checked, doc.boundary_failures
    );
    let _ = writeln!(
        s,
        "unimodal                    {} of {}",
        doc.unimodal_count, doc.posets_tested
    );
    for x in &doc.nonunimodal_examples {
        let _ = writeln!(
            s,
            "  not unimodal  key {} d = {} valleys {:?} (rising to {}, falling from {})",
            x.key, x.d, x.valleys, x.epsilon, x.descent_start
        );
    }
    for r in &doc.reproducers {
        let kinds: Vec<String> = r.violations.iter().map(|v| format!("{}@{}", v.kind, v.index)).collect();
        let covers: Vec<String> = r.poset.covers.iter().map(|[a, b]| format!("{a}<{b}")).collect();
        let _ = writeln!(
            s,
            "  FALSIFIED  key {} n = {} covers [{}] c = {} {}{}",
            r.key,
            r.poset.n,
            covers.join(" "),
            join(&r.c_vector),
            kinds.join(" "),
            if r.exceeds_simplex { "" } else { " (f_0 = d)" }
        );
    }
    s
}

pub fn cmd_verify(
    config: &BatchConfig,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let report = batch_verify(config)?;
    let doc = BatchDocument::from(&report);
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serialisable"))?,
        Format::Text => out.write_all(render_batch(&doc).as_bytes())?,
    }
    if report.passed() {
        return Ok(EXIT_OK);
    }
    for r in &doc.reproducers {
        writeln!(
            err,
            "falsified: key {} c = {}",
            r.key,
            join(&r.c_vector)
        )?;
    }
    if report.prop4_failures > 0 {
        writeln!(err, "prop4 failed on {} lattices", report.prop4_failures)?;
    }
    Ok(EXIT_FALSIFIED)
}
