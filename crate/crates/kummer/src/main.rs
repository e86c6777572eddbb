use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kummer::pipeline::{fixed_locus_listing, run_stages, Options, Stages};
use kummer::report::{write_annulus_csv, write_mu_csv};
use kummer::{bundled, parse_construction, ConstructionSpec, KummerError, Report};

/// Certify Kummer-type constructions on flat tori.
///
/// SPEC is a path to a `.spec` file, or `bundled:NAME` for one of the shipped
/// examples (`bundled:example-primary`, `bundled:example-half-length`).
#[derive(Parser, Debug)]
#[command(name = "kummer", version)]
struct Cli {
    /// Also write the full report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Multiply every numeric tolerance by this factor.
    #[arg(long, global = true, value_name = "FACTOR", default_value_t = 1.0)]
    tolerance_scale: f64,

    /// Abort group closure beyond this many elements.
    #[arg(long, global = true, value_name = "N")]
    max_group_order: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full pipeline.
    Verify { spec: String },
    /// List fixed components of one element or of every element.
    FixedLocus {
        spec: String,
        #[arg(long, value_name = "NAME")]
        element: Option<String>,
    },
    /// Orbits of singular components and the simple-connectedness heuristic.
    Census { spec: String },
    /// Spin lifting obstruction of the generators.
    Spin { spec: String },
    /// Orbifold and resolved Betti numbers.
    Betti { spec: String },
    /// Curvature scans; writes the annulus CSV to PATH and the μ CSV next to it.
    CurvatureScan {
        spec: String,
        #[arg(long, value_name = "PATH")]
        csv: PathBuf,
    },
    /// F-structure checks on the spec's atlas.
    FStructure { spec: String },
    /// Print a bundled spec file.
    Bundled { name: String },
}

fn load(spec: &str) -> Result<ConstructionSpec, KummerError> {
    if let Some(name) = spec.strip_prefix("bundled:") {
        return bundled::load(name).ok_or_else(|| KummerError::Usage(format!("no bundled spec named {name:?}")));
    }
    parse_construction(Path::new(spec))
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> KummerError + '_ {
    move |source| KummerError::Io { path: path.display().to_string(), source }
}

/// `scan.csv` → `scan.mu.csv`.
fn mu_path(csv: &Path) -> PathBuf {
    let stem = csv.file_stem().map_or_else(|| "scan".into(), |s| s.to_string_lossy().into_owned());
    csv.with_file_name(format!("{stem}.mu.csv"))
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>) -> Result<(), KummerError> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
    f(&mut w).and_then(|_| w.flush()).map_err(io_err(path))
}

fn run(cli: Cli) -> Result<Report, KummerError> {
    if !(cli.tolerance_scale > 0.0) {
        return Err(KummerError::Usage(String::from("--tolerance-scale must be positive")));
    }
    let mut opts = Options { tolerance_scale: cli.tolerance_scale, ..Options::default() };
    if let Some(n) = cli.max_group_order {
        opts.max_group_order = n;
    }
    let only = |f: fn(&mut Stages)| {
        let mut s = Stages::NONE;
        f(&mut s);
        s
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();

    let (spec, stages) = match &cli.command {
        Command::Verify { spec } => (load(spec)?, Stages::ALL),
        Command::FixedLocus { spec, .. } => (load(spec)?, only(|s| s.lattice = true)),
        Command::Census { spec } => (load(spec)?, only(|s| s.census = true)),
        Command::Spin { spec } => (load(spec)?, only(|s| s.spin = true)),
        Command::Betti { spec } => (load(spec)?, only(|s| s.cohomology = true)),
        Command::CurvatureScan { spec, .. } => {
            let spec = load(spec)?;
            if spec.gluing.is_none() {
                return Err(KummerError::Usage(format!("{} has no [gluing] section", spec.name)));
            }
            (spec, only(|s| s.curvature = true))
        }
        Command::FStructure { spec } => {
            let spec = load(spec)?;
            if spec.atlas.is_none() {
                return Err(KummerError::Usage(format!("{} declares no atlas", spec.name)));
            }
            (spec, only(|s| s.f_structure = true))
        }
        Command::Bundled { name } => {
            let text = bundled::find(name).ok_or_else(|| KummerError::Usage(format!("no bundled spec named {name:?}")))?;
            out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>")))?;
            std::process::exit(0);
        }
    };

    let output = run_stages(&spec, stages, &opts)?;
    let stdout_err = io_err(Path::new("<stdout>"));
    match &cli.command {
        Command::FixedLocus { element, .. } => {
            let group = output.group.as_ref().expect("lattice stage builds the group");
            let mut text = String::new();
            for (name, comps) in fixed_locus_listing(group, element.as_deref())? {
                text += &format!("{name}: {} component(s)\n", comps.len());
                for c in comps {
                    let p: Vec<String> = c.basepoint().iter().map(ToString::to_string).collect();
                    text += &format!("  dim {} at ({}) along {:?}\n", c.dimension(), p.join(", "), c.directions());
                }
            }
            out.write_all(text.as_bytes()).map_err(stdout_err)?;
        }
        Command::CurvatureScan { csv, .. } => {
            let c = output.curvature.as_ref().expect("curvature stage ran");
            write_file(csv, |w| write_annulus_csv(w, &c.glue))?;
            write_file(&mu_path(csv), |w| write_mu_csv(w, &c.mu))?;
            output.report.write_text(&mut out).map_err(stdout_err)?;
        }
        _ => output.report.write_text(&mut out).map_err(stdout_err)?,
    }
    if let Some(path) = &cli.json {
        write_file(path, |w| w.write_all(output.report.to_json().as_bytes()))?;
    }
    Ok(output.report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) if report.passed() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
