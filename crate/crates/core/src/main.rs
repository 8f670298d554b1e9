use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rauzy4::automaton::{
    build_automaton, check_equal, export_dot, export_edges, reachable_subautomaton, PairWord,
};
use rauzy4::expansions::{greedy_expand, parse_decimal, EventuallyPeriodicWord};
use rauzy4::render::{render, target_layers, Projection, RenderConfig, RenderTarget, Window};
use rauzy4::tiling::tiling_report;
use rauzy4::verify::{run_all, VerifyOptions, DEFAULT_SEED};
use rauzy4::RootData;

#[derive(Parser)]
#[command(
    name = "rauzy4",
    version,
    about = "Rauzy fractal of x^4 - x^3 - x^2 - x - 1"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Edges,
    Stats,
}

#[derive(Clone, Copy, ValueEnum)]
enum CloudFormat {
    Ppm,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy β-expansion of a nonnegative decimal.
    Expand {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 20)]
        digits: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two eventually periodic α-expansions have equal value.
    /// Words are written `index=K pre=DIGITS per=DIGITS`.
    CheckEqual { left: String, right: String },
    /// Export the equality automaton.
    Automaton {
        #[arg(long, value_enum, default_value = "stats")]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render E, boundary, X, Y or piece:c0,c1,c2,c3.
    Render {
        target: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, default_value_t = 512)]
        width: usize,
        #[arg(long, default_value_t = 512)]
        height: usize,
        /// r-re, r-im, re-im or all
        #[arg(long, default_value = "re-im")]
        projection: String,
        /// xmin,xmax,ymin,ymax; fitted to the data when absent
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_enum, default_value = "ppm")]
        format: CloudFormat,
        #[arg(long)]
        out: PathBuf,
    },
    /// Occupancy of translates of E and their observed contacts.
    Tiling {
        #[arg(long, default_value_t = 1)]
        radius: i64,
        /// Cells per axis of the coarsest grid; two halvings follow.
        #[arg(long, default_value_t = 8)]
        grid: usize,
        /// Enumeration depth for contacts.
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
    /// Run the acceptance suite.
    Verify {
        /// IFS depth of the relation checks.
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Replacement for the transcribed edge list.
        #[arg(long)]
        annexe_edges: Option<PathBuf>,
        /// Replacement for the transcribed state labels.
        #[arg(long)]
        annexe_states: Option<PathBuf>,
    },
}

/// Failure of a command: `Usage` exits with 2, `Check` with 1.
enum Failure {
    Usage(String),
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| format!("{}: {e}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn parse_word(s: &str) -> Result<EventuallyPeriodicWord, Failure> {
    let w: EventuallyPeriodicWord = s.parse()?;
    if !w.is_admissible() {
        return Err(Failure::Usage(format!("{s:?} contains 1111")));
    }
    Ok(w)
}

fn parse_window(s: &str) -> Result<Window, Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()?;
    match v[..] {
        [x0, x1, y0, y1] => Ok(Window::new((x0, x1), (y0, y1))?),
        _ => Err(Failure::Usage(format!("window {s:?} needs four numbers"))),
    }
}

/// `out` itself for one image, else `out` with the plane inserted before
/// the extension.
fn image_path(out: &Path, plane: Option<&str>) -> PathBuf {
    match plane {
        None => out.to_path_buf(),
        Some(p) => {
            let stem = out
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let ext = out
                .extension()
                .map(|e| format!(".{}", e.to_string_lossy()))
                .unwrap_or_default();
            out.with_file_name(format!("{stem}.{p}{ext}"))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let roots = RootData::standard();
    match cli.command {
        Command::Expand { x, digits, out } => {
            let d = greedy_expand(&parse_decimal(&x)?, digits)?;
            writeln!(sink(&out)?, "{d}")?;
        }
        Command::CheckEqual { left, right } => {
            let p = PairWord::new(parse_word(&left)?, parse_word(&right)?)?;
            let equal = check_equal(&p, &build_automaton());
            println!("{}", if equal { "equal" } else { "different" });
            if !equal {
                return Err(Failure::Check);
            }
        }
        Command::Automaton { format, out } => {
            let aut = build_automaton();
            let text = match format {
                GraphFormat::Dot => export_dot(&aut),
                GraphFormat::Edges => export_edges(&aut),
                GraphFormat::Stats => format!(
                    "states={}\nedges={}\nreachable={}\n",
                    aut.states().len(),
                    aut.edges().len(),
                    reachable_subautomaton(&aut).states().len()
                ),
            };
            sink(&out)?.write_all(text.as_bytes())?;
        }
        Command::Render {
            target,
            depth,
            width,
            height,
            projection,
            window,
            format,
            out,
        } => {
            let target: RenderTarget = target.parse()?;
            let projection: Projection = projection.parse()?;
            let window = window.as_deref().map(parse_window).transpose()?;
            let cfg = RenderConfig::new(depth, width, height, projection, window)?;
            match format {
                CloudFormat::Csv => {
                    let layers = target_layers(target, depth, roots)?;
                    let cloud = layers
                        .into_iter()
                        .map(|l| l.cloud)
                        .reduce(|a, b| a.union(&b))
                        .ok_or_else(|| Failure::Usage("nothing to write".into()))?;
                    cloud.write_csv(sink(&Some(out))?)?;
                }
                CloudFormat::Ppm => {
                    let images = render(target, &cfg, roots)?;
                    let planes = cfg.projection.planes();
                    let many = images.len() > 1;
                    for ((i, j), (_, img)) in planes.into_iter().zip(images) {
                        let name = Projection::Plane(i, j).to_string();
                        let path = image_path(&out, many.then_some(name.as_str()));
                        img.write_ppm(sink(&Some(path))?)?;
                    }
                }
            }
        }
        Command::Tiling {
            radius,
            grid,
            depth,
        } => {
            if radius < 0 || grid == 0 {
                return Err(Failure::Usage(
                    "radius must be nonnegative and grid positive".into(),
                ));
            }
            print!("{}", tiling_report(radius, grid, depth, roots));
        }
        Command::Verify {
            depth,
            seed,
            annexe_edges,
            annexe_states,
        } => {
            let mut opts = VerifyOptions {
                relation_depth: depth,
                seed,
                ..VerifyOptions::default()
            };
            if let Some(p) = annexe_edges {
                opts.annexe_edges =
                    std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
            }
            if let Some(p) = annexe_states {
                opts.annexe_states =
                    std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
            }
            let results = run_all(&opts);
            let failed = results.iter().filter(|r| !r.pass).count();
            for r in &results {
                println!("{r}");
            }
            println!("SUMMARY {} passed, {failed} failed", results.len() - failed);
            if failed > 0 {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
