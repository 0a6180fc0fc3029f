use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use perfect_cover::covering::{class_of, covering_number};
use perfect_cover::structure::{star_series, StructureOptions};
use perfect_cover::textfmt::{format_group, load_group, parse_family_text};
use perfect_cover::{
    catalog, construct, verify_json, ConstructOptions, Error, Permutation, VerifyOptions,
    DEFAULT_BUDGET, DEFAULT_CAP,
};

#[derive(Parser)]
#[command(
    name = "perfect-cover",
    version,
    about = "Perfect groups surjecting onto families of finite groups"
)]
struct Cli {
    /// Largest group the enumeration-based routines may list.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the star series, level and generator count of a group.
    Analyze {
        /// Group file or `catalog:NAME`.
        group: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a certificate for a family file.
    Construct {
        family: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Output path; stdout when omitted.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Re-check a certificate from scratch.
    Verify {
        certificate: PathBuf,
        /// Check certificates written by a different version.
        #[arg(long)]
        force: bool,
    },
    /// Covering numbers of conjugacy classes of a simple group.
    Cover {
        group: String,
        /// Only the class of this element, in cycle notation.
        #[arg(long)]
        element: Option<String>,
    },
    /// List the built-in groups, or print one as a group file.
    Catalog { name: Option<String> },
}

/// Exit status 1: the input was understood but rejected.
struct Rejected(String);

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. }) | Some(Error::Input(_)) | Some(Error::DegreeMismatch { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    if let Err(e) = io::stdout().lock().write_all(out.as_bytes()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(1);
        }
    }
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Rejected(msg))) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: &Cli, out: &mut String) -> anyhow::Result<Result<(), Rejected>> {
    match &cli.command {
        Command::Analyze { group, seed } => {
            let (name, g) = load_group(group, None)?;
            let opts = StructureOptions {
                cap: cli.cap,
                seed: *seed,
                ..StructureOptions::default()
            };
            let report = star_series(&g, &opts)?;
            writeln!(
                out,
                "group {name} degree={} order={}",
                g.degree(),
                g.order()
            )?;
            writeln!(out, "{report}")?;
            writeln!(out, "abelianization={:?}", report.abelianization_invariants)?;
        }
        Command::Construct {
            family,
            seed,
            budget,
            output,
        } => {
            let text = read(family)?;
            let spec = parse_family_text(&text, family.parent().or(Some(Path::new("."))))?;
            let opts = ConstructOptions {
                seed: *seed,
                budget: *budget,
                cap: cli.cap,
            };
            let built = construct(&spec.members, spec.d, spec.k, &opts)?;
            let json = built.certificate.to_json();
            match output {
                Some(path) => {
                    fs::write(path, &json)
                        .with_context(|| format!("cannot write {}", path.display()))?;
                    eprintln!(
                        "wrote {}: |Gamma|={} on {} points, {} generators",
                        path.display(),
                        built.gamma.order(),
                        built.gamma.degree(),
                        built.gamma.generators().len()
                    );
                }
                None => write!(out, "{json}")?,
            }
        }
        Command::Verify { certificate, force } => {
            let text = read(certificate)?;
            let opts = VerifyOptions {
                force: *force,
                cap: cli.cap,
            };
            let report = verify_json(&text, &opts)?;
            writeln!(out, "{report}")?;
            if let Some(f) = report.failure() {
                return Ok(Err(Rejected(format!("failed step: {}", f.step))));
            }
        }
        Command::Cover { group, element } => {
            let (name, g) = load_group(group, None)?;
            let reps = match element {
                Some(e) => {
                    let x = Permutation::parse_cycles(g.degree(), e)?;
                    if !g.contains(&x) {
                        return Ok(Err(Rejected(format!("{x} is not in {name}"))));
                    }
                    vec![x]
                }
                None => g
                    .conjugacy_classes(cli.cap)?
                    .into_iter()
                    .filter(|c| !c[0].is_identity())
                    .map(|c| c[0].clone())
                    .collect(),
            };
            writeln!(out, "group {name} order={}", g.order())?;
            for x in reps {
                let class = class_of(&g, &x);
                let c = covering_number(&g, &class, cli.cap)?;
                let sizes: Vec<String> = c.power_sizes.iter().map(usize::to_string).collect();
                writeln!(
                    out,
                    "class {x} size={} e={} powers={}",
                    c.set_size,
                    c.e,
                    sizes.join(",")
                )?;
            }
        }
        Command::Catalog { name } => match name {
            Some(n) => {
                let entry = catalog::get(n)
                    .ok_or_else(|| Error::Input(format!("unknown catalog group {n:?}")))?;
                write!(
                    out,
                    "# {}: {}\n{}",
                    entry.name,
                    entry.provenance,
                    format_group(&entry.group())
                )?;
            }
            None => {
                for e in catalog::entries() {
                    writeln!(
                        out,
                        "{:<8} degree={:<3} order={:<6} {}",
                        e.name, e.degree, e.order, e.provenance
                    )?;
                }
            }
        },
    }
    Ok(Ok(()))
}
