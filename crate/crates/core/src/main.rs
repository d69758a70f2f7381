use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use noncoop::decompose::{classify, decompose, Classification};
use noncoop::io::{
    fixture_hash, parse_decomposition, parse_tileset, render_ascii, render_svg,
    serialize_decomposition, ClassificationLine, DecompositionDocument, Provenance,
};
use noncoop::model::{
    check_directed, grow_to_terminal, pos, DirectednessReport, TileAssemblySystem, Window,
};

#[derive(Parser)]
#[command(
    name = "noncoop",
    about = "Simulate and analyze temperature-1 tile assembly systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grow the terminal assembly inside a window and render it.
    Simulate {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        radius: i64,
        /// Print an ASCII rendering (default).
        #[arg(long)]
        ascii: bool,
        /// Write an SVG rendering to the given path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Decide window-exact directedness.
    CheckDirected {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        radius: i64,
        #[arg(long, default_value_t = 100_000)]
        max_tiles: usize,
    },
    /// Classify the terminal assembly (finite / periodic / aperiodic).
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        radius: i64,
        #[arg(long, default_value_t = 64)]
        bound: i64,
        #[arg(long)]
        margin: Option<i64>,
    },
    /// Compute the finite description and write it out.
    Decompose {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        radius: i64,
        #[arg(long, default_value_t = 64)]
        bound: i64,
        #[arg(long)]
        margin: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a decomposition file against fresh simulation.
    Verify {
        file: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
        #[arg(long)]
        radius: Option<i64>,
    },
}

fn default_margin(radius: i64) -> i64 {
    (radius / 4).clamp(2, 6)
}

fn load(file: &PathBuf) -> Result<(TileAssemblySystem, String), String> {
    let text = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let system = parse_tileset(&text).map_err(|e| e.to_string())?;
    Ok((system, text))
}

fn classification_summary(c: &Classification) -> String {
    match c {
        Classification::Finite { tiles } => format!("FINITE tiles={tiles}"),
        Classification::SimplyPeriodic { v, .. } => {
            format!("SIMPLY_PERIODIC v=({},{})", v.x, v.y)
        }
        Classification::BiPeriodic { u, v, .. } => {
            format!("BI_PERIODIC u=({},{}) v=({},{})", u.x, u.y, v.x, v.y)
        }
        Classification::Aperiodic { .. } => "APERIODIC".to_string(),
    }
}

enum CliError {
    Parse(String),
    Analysis(String),
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Simulate {
            file,
            radius,
            ascii,
            svg,
        } => {
            let (t, _) = load(&file).map_err(CliError::Parse)?;
            let w = Window::new(pos(0, 0), radius);
            let growth = grow_to_terminal(&t, w);
            println!(
                "grew {} tiles (seed {})",
                growth.assembly.len(),
                t.seed.len()
            );
            let svg_requested = svg.is_some();
            if let Some(path) = svg {
                let out = render_svg(&t.tile_set, &growth.assembly, w);
                fs::write(&path, out)
                    .map_err(|e| CliError::Analysis(format!("{}: {e}", path.display())))?;
                println!("wrote {}", path.display());
            }
            if ascii || !svg_requested {
                print!("{}", render_ascii(&t.tile_set, &growth.assembly, w));
            }
            Ok(())
        }
        Command::CheckDirected {
            file,
            radius,
            max_tiles,
        } => {
            let (t, _) = load(&file).map_err(CliError::Parse)?;
            let w = Window::new(pos(0, 0), radius);
            match check_directed(&t, w, max_tiles) {
                Ok(DirectednessReport::Directed) => {
                    println!("DIRECTED");
                    Ok(())
                }
                Ok(DirectednessReport::NotDirected {
                    position,
                    type_a,
                    type_b,
                    ..
                }) => {
                    println!(
                        "NOT_DIRECTED conflict at {position}: {} vs {}",
                        t.tile_set.name(type_a),
                        t.tile_set.name(type_b)
                    );
                    Ok(())
                }
                Err(e) => Err(CliError::Analysis(e.to_string())),
            }
        }
        Command::Classify {
            file,
            radius,
            bound,
            margin,
        } => {
            let (t, _) = load(&file).map_err(CliError::Parse)?;
            let w = Window::new(pos(0, 0), radius);
            let m = margin.unwrap_or_else(|| default_margin(radius));
            let c = classify(&t, w, m, bound).map_err(|e| CliError::Analysis(e.to_string()))?;
            println!("{}", classification_summary(&c));
            Ok(())
        }
        Command::Decompose {
            file,
            radius,
            bound,
            margin,
            out,
        } => {
            let (t, text) = load(&file).map_err(CliError::Parse)?;
            let w = Window::new(pos(0, 0), radius);
            let m = margin.unwrap_or_else(|| default_margin(radius));
            let (class, ca) =
                decompose(&t, w, m, bound).map_err(|e| CliError::Analysis(e.to_string()))?;
            let sd = noncoop::decompose::to_semilinear(&ca, &t.tile_set)
                .map_err(|e| CliError::Analysis(e.to_string()))?;
            let doc = DecompositionDocument {
                classification: ClassificationLine::of(&class),
                sets: sd,
                provenance: Provenance {
                    window: w,
                    margin: m,
                    bound,
                    fixture_hash: fixture_hash(&text),
                },
            };
            let serialized = serialize_decomposition(&doc);
            println!(
                "{} complexity={} linear_sets={}",
                classification_summary(&class),
                ca.complexity(),
                doc.sets.sets.len()
            );
            match out {
                Some(path) => {
                    fs::write(&path, serialized)
                        .map_err(|e| CliError::Analysis(format!("{}: {e}", path.display())))?;
                    println!("wrote {}", path.display());
                }
                None => print!("{serialized}"),
            }
            Ok(())
        }
        Command::Verify {
            file,
            decomposition,
            radius,
        } => {
            let (t, _) = load(&file).map_err(CliError::Parse)?;
            let doc_text = fs::read_to_string(&decomposition)
                .map_err(|e| CliError::Parse(format!("{}: {e}", decomposition.display())))?;
            let doc = parse_decomposition(&doc_text).map_err(|e| CliError::Parse(e.to_string()))?;
            let w = match radius {
                Some(r) => Window::new(doc.provenance.window.center, r),
                None => doc.provenance.window,
            };
            let m = doc.provenance.margin;
            let terminal = grow_to_terminal(&t, w).assembly;
            let evaluated = doc
                .sets
                .evaluate(&t.tile_set, w)
                .map_err(|e| CliError::Analysis(e.to_string()))?;
            let inner = w.inner(m);
            for p in inner.iter() {
                if evaluated.get(p) != terminal.get(p) {
                    return Err(CliError::Analysis(format!("verification failed at {p}")));
                }
            }
            println!("VERIFIED window={} margin={m}", w.radius);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Analysis(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(2)
        }
    }
}
