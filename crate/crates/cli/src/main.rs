use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ldlab::error::Error;
use ldlab::instances::corpus::seed_corpus;
use ldlab::instances::generate::{
    gen_group_hopf, gen_lukasiewicz, gen_matrix_compact, mutate, with_identity, with_interior,
};
use ldlab::instances::instance::Instance;
use ldlab::instances::schema::{InstanceFile, Mutation};
use ldlab::instances::search::search;
use ldlab::report::CheckReport;
use ldlab::suite;

#[derive(Parser)]
#[command(name = "ldlab", version, about = "Checkers for linearly distributive and star-autonomous structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the report (or produced file) here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a human-readable table instead of the canonical report.
    #[arg(long)]
    summary: bool,
}

#[derive(Args)]
struct Input {
    file: PathBuf,
    /// Comma-separated objects to quantify over, by label or index.
    #[arg(long)]
    scope: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Star,
    Lindist,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance against its axioms.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Comma-separated axiom groups or ids.
        #[arg(long, value_delimiter = ',')]
        axioms: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Write the Eilenberg–Moore category of the instance's comonad.
    Lift {
        #[command(flatten)]
        input: Input,
        /// Where to write the coalgebra instance.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        summary: bool,
    },
    /// Translate between the linearly distributive and star-autonomous forms.
    Translate {
        #[command(flatten)]
        input: Input,
        /// Side to produce; defaults to the side the file lacks.
        #[arg(long, value_enum)]
        to: Option<Side>,
        /// Where to write the translated instance.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        summary: bool,
    },
    /// Run both comonad axiomatizations and compare their verdicts.
    Coincide {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the lifting axioms with the Hopf comonad axioms when ⋆ = ⋄.
    Compact {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Write a generated instance, or the regression corpus.
    Generate {
        /// lukasiewicz, matrix-compact or group-hopf.
        name: Option<String>,
        /// Comma-separated key=value parameters, e.g. n=3 or p=2,m=2.
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write every corpus instance and its manifest into this directory.
        #[arg(long)]
        seed_corpus: Option<PathBuf>,
    },
    /// Classify the interior comonads of a thin instance.
    Search {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Record a mutation on an instance file.
    Mutate {
        file: PathBuf,
        /// A mutation name such as zero-nu, or its JSON descriptor.
        mutation: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit status for an error: schema and parameter problems are 2, missing
/// structure and failed preconditions (a non-compact ambient included) 3,
/// anything else an axiom failure.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Schema(_) | Error::InvalidParameter(_) | Error::Kernel(_) => 2,
        Error::MissingStructure(_) | Error::Precondition { .. } | Error::NotStrict(_) | Error::NotCompact { .. } => 3,
        _ => 1,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    if let Error::NotCompact { pairs, .. } = &e {
        for (a, b) in pairs {
            eprintln!("  {a}: {b}");
        }
    }
    ExitCode::from(exit_code(&e))
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("{}: {e}", path.display()))
}

fn read_file(path: &Path) -> Result<InstanceFile, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    InstanceFile::parse(&text)
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| io_error(path, e))
}

fn enum_bound() -> Result<Option<u128>, Error> {
    match std::env::var("LDLAB_MAX_ENUM") {
        Ok(v) => {
            v.trim().parse().map(Some).map_err(|_| {
                Error::InvalidParameter(format!("LDLAB_MAX_ENUM must be a non-negative integer, got {v:?}"))
            })
        }
        Err(_) => Ok(None),
    }
}

fn load(input: &Input) -> Result<Instance, Error> {
    let mut inst = Instance::from_file(&read_file(&input.file)?)?;
    if let Some(bound) = enum_bound()? {
        inst = inst.with_enum_bound(bound);
    }
    if let Some(spec) = &input.scope {
        let objects = inst.backend.objects();
        let mut picked = Vec::new();
        for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let by_label = objects.as_ref().and_then(|os| os.iter().copied().find(|&o| inst.backend.label(o) == tok));
            let obj =
                match by_label {
                    Some(o) => o,
                    None => tok.parse().ok().filter(|&o| inst.backend.contains(o)).ok_or_else(|| {
                        Error::InvalidParameter(format!("scope object {tok:?} is not in the backend"))
                    })?,
                };
            if !picked.contains(&obj) {
                picked.push(obj);
            }
        }
        inst.scope.objects = picked;
    }
    Ok(inst)
}

/// Prints or writes the report and turns its verdict into the exit code.
fn emit(report: &CheckReport, output: &Output) -> Result<ExitCode, Error> {
    let text = report.to_canonical_json();
    match &output.out {
        Some(path) => write(path, &text)?,
        None if !output.summary => print!("{text}"),
        None => {}
    }
    if output.summary {
        print!("{}", report.summary());
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn emit_file(file: &InstanceFile, report: &CheckReport, out: &Path, summary: bool) -> Result<ExitCode, Error> {
    write(out, &file.to_json())?;
    let output = Output { out: None, summary };
    emit(report, &output)
}

fn params(list: &[String]) -> Result<BTreeMap<String, String>, Error> {
    list.iter()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::InvalidParameter(format!("parameter {kv:?} is not key=value")))
        })
        .collect()
}

fn param<T: std::str::FromStr>(ps: &BTreeMap<String, String>, key: &str, default: Option<T>) -> Result<T, Error> {
    match ps.get(key) {
        Some(v) => v.parse().map_err(|_| Error::InvalidParameter(format!("{key}={v} is not valid"))),
        None => default.ok_or_else(|| Error::InvalidParameter(format!("missing parameter {key}"))),
    }
}

fn generate(name: &str, list: &[String]) -> Result<InstanceFile, Error> {
    let ps = params(list)?;
    let known: &[&str] = match name {
        "lukasiewicz" => &["n", "comonad", "g"],
        "matrix-compact" => &["p", "dmax", "comonad"],
        "group-hopf" => &["p", "m"],
        other => return Err(Error::InvalidParameter(format!("unknown generator {other:?}"))),
    };
    if let Some(k) = ps.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(Error::InvalidParameter(format!("{name} takes no parameter {k}")));
    }
    let file = match name {
        "lukasiewicz" => gen_lukasiewicz(param(&ps, "n", Some(3))?)?,
        "matrix-compact" => gen_matrix_compact(param(&ps, "p", Some(2))?, param(&ps, "dmax", Some(2))?)?,
        _ => return gen_group_hopf(param(&ps, "p", Some(2))?, param(&ps, "m", Some(2))?),
    };
    match ps.get("comonad").map(String::as_str) {
        None | Some("none") => Ok(file),
        Some("identity") => Ok(with_identity(file)),
        Some("interior") if name == "lukasiewicz" => {
            let g = ps.get("g").ok_or_else(|| Error::InvalidParameter("comonad=interior needs g".into()))?;
            let g = g
                .split(':')
                .map(|x| x.parse().map_err(|_| Error::InvalidParameter(format!("g entry {x:?} is not an index"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(with_interior(file, g))
        }
        Some(other) => Err(Error::InvalidParameter(format!("comonad={other} is not available for {name}"))),
    }
}

fn parse_mutation(text: &str) -> Result<Mutation, Error> {
    let json = if text.trim_start().starts_with('{') { text.to_string() } else { format!("{{\"op\": {text:?}}}") };
    serde_json::from_str(&json).map_err(|e| Error::Schema(format!("mutation descriptor: {e}")))
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate { input, axioms, output } => emit(&suite::validate(&load(&input)?, &axioms)?, &output),
        Command::Lift { input, out, summary } => {
            let em = suite::lift(&load(&input)?)?;
            emit_file(&em.file, &em.report, &out, summary)
        }
        Command::Translate { input, to, out, summary } => {
            let to = to.map(|s| match s {
                Side::Star => suite::Target::Star,
                Side::Lindist => suite::Target::Lindist,
            });
            let (file, report) = suite::translate(&load(&input)?, to)?;
            emit_file(&file, &report, &out, summary)
        }
        Command::Coincide { input, output } => emit(&suite::coincide(&load(&input)?)?, &output),
        Command::Compact { input, output } => emit(&suite::compact(&load(&input)?)?, &output),
        Command::Search { input, output } => emit(&search(&load(&input)?)?, &output),
        Command::Generate { name, params, out, seed_corpus: dir } => {
            if let Some(dir) = dir {
                let m = seed_corpus(&dir)?;
                println!("wrote {} instances and manifest.json to {}", m.entries.len(), dir.display());
                if name.is_none() {
                    return Ok(ExitCode::SUCCESS);
                }
            }
            let name = name.ok_or_else(|| Error::InvalidParameter("generate needs a name or --seed-corpus".into()))?;
            let text = generate(&name, &params)?.to_json();
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mutate { file, mutation, out } => {
            let mutated = mutate(&read_file(&file)?, parse_mutation(&mutation)?)?;
            let text = mutated.to_json();
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(fail)
}
