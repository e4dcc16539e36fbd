use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use sweep_planner::ann_planner::{Outcome, WeightVector};
use sweep_planner::cli_harness::{
    evaluate, generate_maps, load_map_file, parse_point, parse_sector, parse_weights, render_ppm,
    render_trace, run_batch, write_csv, write_generated, GenerateParams, MapLoadOptions,
    PlannerOptions, TraceDocument,
};
use sweep_planner::grid_world::Point;

#[derive(Parser)]
#[command(name = "sweep-planner", version, about = "Sensor-sweep neural path planner on occupancy grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan on one map; exit 0 on success, 2 when no path was found.
    Run {
        #[arg(long)]
        map: PathBuf,
        /// Trace JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// PPM render output.
        #[arg(long)]
        render: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        scale: usize,
        #[command(flatten)]
        load: LoadFlags,
        #[command(flatten)]
        planner: PlannerFlags,
    },
    /// Plan on every .txt/.pgm map in a directory and emit a CSV summary.
    Batch {
        #[arg(long)]
        map_dir: PathBuf,
        /// CSV output (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        load: LoadFlags,
        #[command(flatten)]
        planner: PlannerFlags,
    },
    /// Write seeded random solvable ASCII maps.
    Generate {
        #[arg(long, default_value_t = 32)]
        width: usize,
        #[arg(long, default_value_t = 32)]
        height: usize,
        #[arg(long, default_value_t = 0.2)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a stored trace over its map as a PPM image.
    Render {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        scale: usize,
        #[command(flatten)]
        load: LoadFlags,
    },
}

#[derive(Args)]
struct LoadFlags {
    /// Gray values below this are obstacles (PGM maps).
    #[arg(long, default_value_t = 128)]
    pgm_threshold: u8,
    #[arg(long, value_parser = parse_point)]
    start: Option<Point>,
    #[arg(long, value_parser = parse_point)]
    goal: Option<Point>,
}

impl LoadFlags {
    fn options(&self) -> MapLoadOptions {
        MapLoadOptions { pgm_threshold: self.pgm_threshold, start: self.start, goal: self.goal }
    }
}

#[derive(Args)]
struct PlannerFlags {
    /// Slide distance x in pixels.
    #[arg(long)]
    range: Option<f64>,
    /// Bar rotation step in degrees.
    #[arg(long, allow_hyphen_values = true)]
    delta_alpha: Option<f64>,
    /// Learning rate, strictly between 0 and 1.
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<f64>,
    /// Initial weights w1,w2,w3,w4.
    #[arg(long, value_parser = parse_weights, allow_hyphen_values = true)]
    w0: Option<WeightVector>,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long)]
    no_backtrack: bool,
    /// Swept sector lo:hi in degrees.
    #[arg(long, value_parser = parse_sector, allow_hyphen_values = true)]
    sector: Option<(f64, f64)>,
}

impl PlannerFlags {
    fn options(&self) -> PlannerOptions {
        PlannerOptions {
            range: self.range,
            delta_alpha: self.delta_alpha,
            eta: self.eta,
            w0: self.w0,
            max_steps: self.max_steps,
            no_backtrack: self.no_backtrack,
            sector: self.sector,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn execute(command: Command) -> Result<ExitCode> {
    match command {
        Command::Run { map, out, render, scale, load, planner } => {
            let opts = planner.options();
            opts.validate()?;
            let grid = load_map_file(&map, &load.options())?;
            let cfg = opts.resolve(&grid);
            let (trace, metrics) = evaluate(&grid, &cfg)?;
            if let Some(path) = out {
                let doc = TraceDocument::new(&grid, &cfg, &trace, &metrics);
                std::fs::write(&path, doc.to_json())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = render {
                std::fs::write(&path, render_ppm(&grid, &trace.positions, scale))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            println!("{}", serde_json::to_string(&metrics)?);
            Ok(match trace.outcome {
                Outcome::Success => ExitCode::SUCCESS,
                Outcome::NoPathFound | Outcome::Trapped => ExitCode::from(2),
            })
        }
        Command::Batch { map_dir, out, load, planner } => {
            let opts = planner.options();
            opts.validate()?;
            let rows = run_batch(&map_dir, &load.options(), &opts)?;
            for row in &rows {
                if let Some(err) = &row.error {
                    eprintln!("{}: {err}", row.map);
                }
            }
            match out {
                Some(path) => {
                    let file = std::fs::File::create(&path)
                        .with_context(|| format!("creating {}", path.display()))?;
                    write_csv(file, &rows)?;
                }
                None => write_csv(std::io::stdout().lock(), &rows)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate { width, height, density, seed, count, out } => {
            let maps = generate_maps(&GenerateParams { width, height, density, seed, count })?;
            for path in write_generated(&maps, &out)? {
                println!("{}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { trace, map, out, scale, load } => {
            if scale == 0 {
                bail!("--scale must be >= 1");
            }
            let text = std::fs::read_to_string(&trace)
                .with_context(|| format!("reading {}", trace.display()))?;
            let doc = TraceDocument::from_json(&text)?;
            let grid = load_map_file(&map, &load.options())?;
            std::fs::write(&out, render_trace(&grid, &doc, scale)?)
                .with_context(|| format!("writing {}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
