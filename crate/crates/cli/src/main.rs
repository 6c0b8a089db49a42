//! `errds`: validate, transform, reverse and round-trip ER models.
//!
//! Exit codes: 0 success, 1 warnings only, 2 model or schema errors,
//! 3 I/O errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use errds::diagnostic::{has_errors, SourceMap};
use errds::er_text::parse_er_with_spans;
use errds::validate::validate_notation_with;
use errds::{
    ddl, emit_er, emit_rds, parse_rds, reverse_transform, roundtrip, transform_model, Diagnostic,
    ErSource, Identifier, RdsSource, Severity, TransformConfig, TransformError,
};

const EXIT_OK: u8 = 0;
const EXIT_WARNINGS: u8 = 1;
const EXIT_ERRORS: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "errds",
    version,
    about = "ER model to annotated relational schema compiler"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an .er file against the notation rules.
    Validate { input: PathBuf },
    /// Compile an .er file into an .rds schema.
    Transform {
        input: PathBuf,
        #[command(flatten)]
        opts: TransformOpts,
        /// Write the step trace to standard error.
        #[arg(long)]
        trace: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recover the ER model from an .rds schema.
    Reverse {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Transform, reverse and transform again; exit 0 iff nothing was lost.
    Roundtrip {
        input: PathBuf,
        #[command(flatten)]
        opts: TransformOpts,
    },
    /// Project an .rds schema onto CREATE TABLE statements.
    Ddl {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TransformOpts {
    /// Relation that receives the FK of a 1:1 relationship type, as
    /// `<Relationship>=<Participant>`. Repeatable.
    #[arg(long = "sog-choice", value_name = "REL=PARTICIPANT")]
    sog_choice: Vec<String>,
    /// Accept 1:N relationship types with subtype participants.
    #[arg(long)]
    extensions: bool,
}

impl TransformOpts {
    fn config(&self) -> Result<TransformConfig, String> {
        let mut choices = Vec::new();
        for c in &self.sog_choice {
            let (rel, who) = c
                .split_once('=')
                .filter(|(r, p)| !r.is_empty() && !p.is_empty())
                .ok_or_else(|| format!("--sog-choice expects REL=PARTICIPANT, got `{c}`"))?;
            choices.push((Identifier::new(rel.trim()), Identifier::new(who.trim())));
        }
        let mut cfg = if choices.is_empty() {
            TransformConfig::default()
        } else {
            TransformConfig::explicit(choices)
        };
        cfg.extensions = self.extensions;
        Ok(cfg)
    }
}

struct Failure(u8);

type CmdResult = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: error: cannot read: {e}", path.display());
        Failure(EXIT_IO)
    })
}

fn write_out(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    let result = match output {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    result.map_err(|e| {
        eprintln!("error: cannot write output: {e}");
        Failure(EXIT_IO)
    })
}

fn report(path: &Path, diags: &[Diagnostic], spans: Option<&SourceMap>) {
    let name = path.display().to_string();
    for d in diags {
        eprintln!("{}", d.render(&name, spans));
    }
}

fn exit_for(diags: &[Diagnostic]) -> u8 {
    if has_errors(diags) {
        EXIT_ERRORS
    } else if diags.iter().any(|d| d.severity == Severity::Warning) {
        EXIT_WARNINGS
    } else {
        EXIT_OK
    }
}

fn load_er(path: &Path) -> Result<(errds::ErModel, SourceMap), Failure> {
    let text = read(path)?;
    parse_er_with_spans(&ErSource::new(path.display().to_string(), text)).map_err(|diags| {
        report(path, &diags, None);
        Failure(EXIT_ERRORS)
    })
}

fn load_rds(path: &Path) -> Result<errds::RelationalSchema, Failure> {
    let text = read(path)?;
    parse_rds(&RdsSource::new(path.display().to_string(), text)).map_err(|diags| {
        report(path, &diags, None);
        Failure(EXIT_ERRORS)
    })
}

fn config(opts: &TransformOpts) -> Result<TransformConfig, Failure> {
    opts.config().map_err(|msg| {
        eprintln!("error: {msg}");
        Failure(EXIT_ERRORS)
    })
}

fn transform_failure(path: &Path, err: TransformError, spans: &SourceMap) -> Failure {
    match err {
        TransformError::PrerequisiteFailed(diags) => report(path, &diags, Some(spans)),
        other => eprintln!("{}: error[XFORM]: {other}", path.display()),
    }
    Failure(EXIT_ERRORS)
}

fn cmd_validate(input: &Path) -> CmdResult {
    let (model, spans) = load_er(input)?;
    let diags = errds::validate_notation(&model);
    report(input, &diags, Some(&spans));
    Ok(exit_for(&diags))
}

fn cmd_transform(
    input: &Path,
    opts: &TransformOpts,
    trace: bool,
    output: Option<&Path>,
) -> CmdResult {
    let (model, spans) = load_er(input)?;
    let cfg = config(opts)?;
    let (schema, steps) =
        transform_model(&model, &cfg).map_err(|e| transform_failure(input, e, &spans))?;
    let warnings = validate_notation_with(&model, cfg.extensions);
    report(input, &warnings, Some(&spans));
    if trace {
        eprint!("{}", steps.render());
    }
    write_out(output, &emit_rds(&schema))?;
    Ok(exit_for(&warnings))
}

fn cmd_reverse(input: &Path, output: Option<&Path>) -> CmdResult {
    let schema = load_rds(input)?;
    let reversal = reverse_transform(&schema).map_err(|diags| {
        report(input, &diags, None);
        Failure(EXIT_ERRORS)
    })?;
    report(input, &reversal.notes, None);
    write_out(output, &emit_er(&reversal.model))?;
    Ok(exit_for(&reversal.notes))
}

fn cmd_roundtrip(input: &Path, opts: &TransformOpts) -> CmdResult {
    let (model, spans) = load_er(input)?;
    let cfg = config(opts)?;
    let report_ = roundtrip(&model, &cfg).map_err(|e| {
        match e {
            errds::roundtrip::RoundTripError::Forward(t) => {
                return transform_failure(input, t, &spans)
            }
            errds::roundtrip::RoundTripError::Reverse(diags) => report(input, &diags, None),
            errds::roundtrip::RoundTripError::Reforward(t) => {
                eprintln!(
                    "{}: error[XFORM]: re-transforming the recovered model: {t}",
                    input.display()
                )
            }
        }
        Failure(EXIT_ERRORS)
    })?;
    if report_.is_clean() {
        println!(
            "roundtrip ok: {} relation(s), recovered model matches the source",
            report_.schema.relations.len()
        );
        Ok(EXIT_OK)
    } else {
        println!("roundtrip FAILED for {}", input.display());
        for line in report_.describe_failures() {
            println!("{line}");
        }
        Ok(EXIT_ERRORS)
    }
}

fn cmd_ddl(input: &Path, output: Option<&Path>) -> CmdResult {
    let schema = load_rds(input)?;
    let out = ddl::emit_ddl(&schema);
    for fk in &out.unresolved {
        eprintln!("{}: warning: unresolved foreign key {fk}", input.display());
    }
    write_out(output, &out.text)?;
    Ok(if out.unresolved.is_empty() {
        EXIT_OK
    } else {
        EXIT_WARNINGS
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { input } => cmd_validate(input),
        Command::Transform {
            input,
            opts,
            trace,
            output,
        } => cmd_transform(input, opts, *trace, output.as_deref()),
        Command::Reverse { input, output } => cmd_reverse(input, output.as_deref()),
        Command::Roundtrip { input, opts } => cmd_roundtrip(input, opts),
        Command::Ddl { input, output } => cmd_ddl(input, output.as_deref()),
    };
    ExitCode::from(match result {
        Ok(code) | Err(Failure(code)) => code,
    })
}
