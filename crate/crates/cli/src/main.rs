//! `subrack`: verify the p-group conjugation-rack statements on concrete
//! groups, inspect single classes, and list the built-in catalog.
//!
//! Exit codes: 0 all applicable claims hold, 1 a claim failed, 2 input could
//! not be parsed or validated, 3 a class exceeded the enumeration cap under
//! `--strict` (or in `analyze`).

mod input;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use subrack_core::catalog::CATALOG;
use subrack_core::formats::{carrier_entries, AnalysisExport, ComplexExport, PosetExport, FORMAT_VERSION};
use subrack_core::verify::{analyze_class, verify_group, VerifyOptions};
use subrack_core::{is_homology_sphere, ConjClass, FiniteGroup, Verdict};

use input::GroupSource;

const EXIT_CLAIM_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "subrack", version, about = "Subrack posets of conjugacy classes in finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every statement on every conjugacy class of a group.
    Verify(VerifyArgs),
    /// Orbits, subrack poset, order complex and homology of one class, as JSON.
    Analyze(AnalyzeArgs),
    /// List the built-in groups.
    Catalog {
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Tuning {
    /// Classes larger than this are not enumerated (at most 24).
    #[arg(long, default_value_t = 20)]
    max_class_size: usize,
    /// Boundary matrices at or below this many nonzero rows and columns go
    /// straight to dense Smith normal form.
    #[arg(long, default_value_t = subrack_core::homology::DEFAULT_DENSIFY_THRESHOLD)]
    densify_threshold: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: GroupSource,
    #[command(flatten)]
    tuning: Tuning,
    /// Write the JSON report here (`-` for stdout, replacing the text report).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Exit with code 3 if any class exceeded the enumeration cap.
    #[arg(long)]
    strict: bool,
    /// Also evaluate generation and connectedness on nilpotent groups that
    /// are not p-groups.
    #[arg(long)]
    experimental_nilpotent: bool,
    /// Record per-class timings (makes the JSON report non-reproducible).
    #[arg(long)]
    timings: bool,
    /// Process classes one at a time.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: GroupSource,
    #[command(flatten)]
    tuning: Tuning,
    /// Zero-based class index, in the order used by `verify`.
    #[arg(long, conflicts_with = "class_rep", required_unless_present = "class_rep")]
    class_index: Option<usize>,
    /// Label of any element of the class.
    #[arg(long)]
    class_rep: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Catalog { json } => cmd_catalog(json),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

/// Writes to stdout; a closed pipe (as in `subrack catalog | head`) is not an
/// error.
fn emit(text: &str) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let (group, name) = args.source.load()?;
    let opts = VerifyOptions {
        max_class_size: args.tuning.max_class_size,
        densify_threshold: args.tuning.densify_threshold,
        experimental_nilpotent: args.experimental_nilpotent,
        record_timings: args.timings,
        parallel: !args.sequential,
    };
    let report = verify_group(&group, &name, &opts);

    let json_to_stdout = args.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if let Some(path) = &args.json {
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        if json_to_stdout {
            emit(&text)?;
        } else {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    if !json_to_stdout {
        emit(&report.render_text())?;
    }

    if let Verdict::Fails { witness } = &report.overall {
        eprintln!("FALSIFIED: {witness}");
        return Ok(ExitCode::from(EXIT_CLAIM_FAILED));
    }
    if args.strict && report.any_cap_exceeded() {
        eprintln!("enumeration cap exceeded (--strict)");
        return Ok(ExitCode::from(EXIT_CAP));
    }
    Ok(ExitCode::SUCCESS)
}

fn select_class(group: &FiniteGroup, args: &AnalyzeArgs) -> anyhow::Result<(usize, ConjClass)> {
    let classes = group.conjugacy_classes();
    if let Some(i) = args.class_index {
        let n = classes.len();
        return classes
            .into_iter()
            .enumerate()
            .nth(i)
            .with_context(|| format!("unknown class: index {i} out of range (group has {n} classes)"));
    }
    let label = args.class_rep.as_deref().expect("clap requires a selector");
    let element = group.find_label(label).with_context(|| format!("unknown class: no element labelled {label:?}"))?;
    Ok(classes.into_iter().enumerate().find(|(_, c)| c.members.contains(element)).expect("classes partition G"))
}

fn cmd_analyze(args: AnalyzeArgs) -> anyhow::Result<ExitCode> {
    let (group, name) = args.source.load()?;
    let (class_index, class) = select_class(&group, &args)?;
    let opts = VerifyOptions {
        max_class_size: args.tuning.max_class_size,
        densify_threshold: args.tuning.densify_threshold,
        ..VerifyOptions::default()
    };
    let a = analyze_class(&group, &class, &opts);
    let m = a.orbits.m();
    let sphere_degree = m as isize - 2;
    let export = AnalysisExport {
        format: FORMAT_VERSION,
        group: name,
        class_index,
        representative: group.label(class.representative),
        carrier: carrier_entries(&group, &a.rack),
        m,
        orbits: a.orbits.orbits.iter().map(|o| o.to_vec()).collect(),
        poset: a.poset.as_ref().ok().map(PosetExport::new),
        complex: a.complex.as_ref().map(ComplexExport::new),
        homology: a.homology.clone(),
        sphere_degree,
        is_sphere: a.homology.as_ref().map(|h| is_homology_sphere(h, sphere_degree)),
        error: a.poset.as_ref().err().map(|e| e.to_string()),
    };
    emit(&(serde_json::to_string_pretty(&export)? + "\n"))?;
    if export.error.is_some() {
        return Ok(ExitCode::from(EXIT_CAP));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog(json: bool) -> anyhow::Result<ExitCode> {
    if json {
        let entries: Vec<serde_json::Value> = CATALOG
            .iter()
            .map(|e| serde_json::json!({"name": e.name, "order": e.order, "description": e.description}))
            .collect();
        emit(&(serde_json::to_string_pretty(&entries)? + "\n"))?;
    } else {
        let table: String =
            CATALOG.iter().map(|e| format!("{:<8} {:>3}  {}\n", e.name, e.order, e.description)).collect();
        emit(&table)?;
    }
    Ok(ExitCode::SUCCESS)
}
