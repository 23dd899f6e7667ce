use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use atomforge::classify::{self, Mode, SymmetryGroup};
use atomforge::counting::{count_atoms_pformula, count_atoms_recurrence};
use atomforge::diagram::{parse_diagram, DiagramError};
use atomforge::enumeration::{enumerate_diagrams, Colorings};
use atomforge::localmodel::build_local_model;
use atomforge::parallel::{build_pool, thread_limit_from_env};
use atomforge::render::diagram_svg;
use atomforge::surface::{build_atom, find_full_ways, SurfaceError, SurfaceInvariants};

#[derive(Parser)]
#[command(
    name = "atomforge",
    version,
    about = "Chord diagrams of boundary saddle levels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of atoms with parameter k.
    Count {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
    },
    /// List every diagram with parameter k, one per line.
    Enumerate {
        #[arg(long)]
        k: usize,
        /// Only diagrams with exactly this many chords.
        #[arg(long)]
        chords: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Emit both base colours for every chord set.
        #[arg(long)]
        both_colorings: bool,
    },
    /// Surface invariants of the atom, or of the closed-up surface.
    Invariants {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        close_up: bool,
    },
    /// Classes of optimal functions on the oriented surface of a genus with
    /// one boundary circle.
    Classify {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        mode: Mode,
        /// One representative per line followed by the summary.
        #[arg(long)]
        jsonl: bool,
        #[arg(long, default_value_t = classify::DEFAULT_GROUP)]
        group: SymmetryGroup,
    },
    /// Canonical form of a diagram.
    Canon {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        mode: Mode,
        #[arg(long, default_value_t = classify::DEFAULT_GROUP)]
        group: SymmetryGroup,
    },
    /// Local model Re(x+iy)^k.
    Local {
        #[arg(long)]
        k: usize,
    },
    /// Write an SVG drawing of a diagram.
    Render {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Recurrence,
    Pformula,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

/// Domain failure: exit status 1 with a one-line JSON reason on stderr.
struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        Failure {
            kind,
            message: message.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new("io", e)
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        Failure::new("invalid_diagram", e)
    }
}

impl From<SurfaceError> for Failure {
    fn from(e: SurfaceError) -> Self {
        let kind = match e {
            SurfaceError::NotCloseable { .. } => "not_closeable",
            SurfaceError::InconsistentCounts { .. } => "inconsistent_counts",
        };
        Failure::new(kind, e)
    }
}

impl From<classify::ClassifyError> for Failure {
    fn from(e: classify::ClassifyError) -> Self {
        use classify::ClassifyError as E;
        let kind = match e {
            E::ProfileMismatch { .. } => "profile_mismatch",
            E::InconsistentCriteria { .. } => "inconsistent_criteria",
            E::Unsupported(_) => "unsupported",
            E::GenusOutOfRange(_) => "genus_out_of_range",
        };
        Failure::new(kind, e)
    }
}

fn invariants_json(inv: &SurfaceInvariants) -> Value {
    let mut v = json!({
        "orientable": inv.orientable,
        "euler": inv.euler_characteristic,
        "boundary": inv.boundary_components,
    });
    match (inv.genus(), inv.crosscap_number()) {
        (Some(g), _) => v["genus"] = json!(g),
        (_, Some(c)) => v["crosscap"] = json!(c),
        _ => {}
    }
    v
}

fn print_json(out: &mut impl Write, v: &Value) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("json value"))
}

fn run(cmd: Command, out: &mut impl Write) -> Result<(), Failure> {
    match cmd {
        Command::Count { k, method } => {
            let n = match method {
                Method::Recurrence => count_atoms_recurrence(k),
                Method::Pformula => count_atoms_pformula(k),
            }
            .map_err(|e| Failure::new("invalid_k", e))?;
            writeln!(out, "{n}")?;
        }
        Command::Enumerate {
            k,
            chords,
            format,
            both_colorings,
        } => {
            if k == 0 || k > atomforge::diagram::MAX_K {
                return Err(Failure::new(
                    "invalid_k",
                    format!("k must lie in 1..={}", atomforge::diagram::MAX_K),
                ));
            }
            let colorings = if both_colorings {
                Colorings::Both
            } else {
                Colorings::Positive
            };
            for d in enumerate_diagrams(k, chords, colorings) {
                match format {
                    Format::Text => writeln!(out, "{d}")?,
                    Format::Jsonl => print_json(out, &d.to_json())?,
                }
            }
        }
        Command::Invariants { diagram, close_up } => {
            let diagram = parse_diagram(&diagram)?;
            let atom = build_atom(&diagram);
            let ways = find_full_ways(&diagram).len();
            let mut v = if close_up {
                let closed = atom.close_up()?;
                let mut v = invariants_json(&closed.invariants());
                v["closed"] = json!(true);
                v
            } else {
                let mut v = invariants_json(&atom.invariants());
                v["closed"] = json!(false);
                v["closeable"] = json!(atom.close_up().is_ok());
                v
            };
            v["diagram"] = json!(diagram.encode());
            v["full_ways"] = json!(ways);
            print_json(out, &v)?;
        }
        Command::Classify {
            genus,
            mode,
            jsonl,
            group,
        } => {
            let catalog = classify::classify_with(genus, true, mode, group)?;
            if jsonl {
                for (index, d) in catalog.classes.iter().enumerate() {
                    print_json(
                        out,
                        &json!({
                            "index": index,
                            "diagram": d.encode(),
                            "canonical": classify::canonical_form_in(d, mode, group),
                        }),
                    )?;
                }
            }
            print_json(
                out,
                &serde_json::to_value(catalog.summary()).expect("summary"),
            )?;
        }
        Command::Canon {
            diagram,
            mode,
            group,
        } => {
            let diagram = parse_diagram(&diagram)?;
            writeln!(
                out,
                "{}",
                classify::canonical_form_in(&diagram, mode, group)
            )?;
        }
        Command::Local { k } => {
            if k == 0 {
                return Err(Failure::new("invalid_k", "k must be at least 1"));
            }
            let m = build_local_model(k);
            let mut v = serde_json::to_value(&m).expect("local model");
            v["polynomial"] = json!(m.polynomial());
            print_json(out, &v)?;
        }
        Command::Render { diagram, out: path } => {
            let diagram = parse_diagram(&diagram)?;
            std::fs::write(&path, diagram_svg(&diagram))?;
            writeln!(out, "{}", path.display())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limit = match thread_limit_from_env() {
        Ok(limit) => limit,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let pool = match build_pool(limit) {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut out = BufWriter::new(io::stdout());
    let result = pool.install(|| run(cli.command, &mut out));
    let result = result.and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // downstream closed the pipe (e.g. `| head`)
        Err(f) if f.kind == "io" && f.message.contains("Broken pipe") => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", json!({"error": f.kind, "message": f.message}));
            ExitCode::from(1)
        }
    }
}
