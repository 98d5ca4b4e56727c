use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotdensity::census::{load_census, CensusEntry};
use knotdensity::diagram::{celtic_grid, cycle_of_tangles, parse_braid, parse_dt_str, parse_pd, weaving_knot};
use knotdensity::kashaev::{kashaev_invariant, DEFAULT_PRECISION, KASHAEV_N_CAP};
use knotdensity::khovanov::{Field, KH_CROSSING_CAP};
use knotdensity::spectra::{
    density_record, format_real, maximality_sweep, verify_crossing_drop, verify_det_density_bound,
    verify_jones_density_bound, verify_kh_vol, verify_vol_det, Family, RecordOptions, SequenceReport,
    VerificationReport,
};
use knotdensity::{Diagram, KnotError, Tangle};

#[derive(Parser)]
#[command(name = "knotdens", version, about = "Knot invariants and density spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant, Jones, Khovanov rank, Kashaev values and densities of one diagram.
    Invariants {
        #[command(flatten)]
        input: DiagramInput,
        /// Knot name used in the output.
        #[arg(long, default_value = "K")]
        name: String,
        /// Also compute ⟨K⟩_N for N = 2..=this value.
        #[arg(long)]
        kashaev: Option<usize>,
        /// Ingested hyperbolic volume, for the volume density.
        #[arg(long)]
        volume: Option<f64>,
        #[arg(long, default_value = "q")]
        field: Field,
        /// Crossing cap for the Khovanov computation.
        #[arg(long, default_value_t = KH_CROSSING_CAP)]
        max_crossings: usize,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision_bits: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Print a PD code for a member of a diagram family.
    Generate {
        #[command(subcommand)]
        family: GenerateFamily,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Determinant densities along a family.
    Sweep {
        #[arg(long, value_enum)]
        family: SweepFamily,
        /// Weaving: p values (e.g. `3` or `3..5`).
        #[arg(long, default_value = "3")]
        p: String,
        /// Weaving: q values.
        #[arg(long, default_value = "3..30")]
        q: String,
        /// Celtic grid size, twist count or cycle length.
        #[arg(long, default_value = "1..10")]
        n: String,
        /// Cycle seed tangle: `single`, `vertical:K` or `horizontal:K`.
        #[arg(long, default_value = "vertical:3")]
        tangle: String,
        #[command(flatten)]
        output: Output,
    },
    /// Check a conjecture over every row of a census table.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[arg(long)]
        table: PathBuf,
        /// Rows with more crossings are skipped (Khovanov cap for kh-vol).
        #[arg(long)]
        max_crossings: Option<usize>,
        #[arg(long, default_value = "q")]
        field: Field,
        #[command(flatten)]
        output: Output,
    },
    /// |⟨K⟩_N| and quantum densities for N = 2..=n-max.
    Kashaev {
        #[command(flatten)]
        input: OptionalDiagramInput,
        #[arg(long, default_value = "K")]
        name: String,
        /// Census table; every knot with at most --max-crossings crossings is swept.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision_bits: u32,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DiagramInput {
    /// PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".
    #[arg(long)]
    pd: Option<String>,
    /// DT code, e.g. "4 6 8 2".
    #[arg(long)]
    dt: Option<String>,
    /// Braid word, e.g. "2: s1 s1 s1".
    #[arg(long)]
    braid: Option<String>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalDiagramInput {
    #[arg(long)]
    pd: Option<String>,
    #[arg(long)]
    dt: Option<String>,
    #[arg(long)]
    braid: Option<String>,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum GenerateFamily {
    Weaving {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    Celtic {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    Cycle {
        #[arg(long, default_value = "vertical:3")]
        tangle: String,
        #[arg(long)]
        n: usize,
    },
    Twist {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFamily {
    Weaving,
    Celtic,
    Twist,
    Cycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    DetDensity,
    JonesDensity,
    VolDet,
    KhVol,
    CrossingDrop,
}

enum Failure {
    Input(KnotError),
    Output(std::io::Error),
}

impl From<KnotError> for Failure {
    fn from(e: KnotError) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Output(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Output(e.into())
    }
}

fn read_diagram(pd: &Option<String>, dt: &Option<String>, braid: &Option<String>) -> Result<Diagram, KnotError> {
    match (pd, dt, braid) {
        (Some(p), _, _) => parse_pd(p),
        (_, Some(d), _) => parse_dt_str(d),
        (_, _, Some(b)) => Diagram::from_braid(&parse_braid(b)?),
        _ => Err(KnotError::Syntax("give one of --pd, --dt or --braid".into())),
    }
}

/// `a..b` (inclusive), `a` or a comma list.
fn parse_range(text: &str) -> Result<Vec<usize>, KnotError> {
    let bad = || KnotError::Syntax(format!("bad range `{text}`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(num).collect()
}

fn parse_tangle(text: &str) -> Result<Tangle, KnotError> {
    let bad = || KnotError::Syntax(format!("bad tangle `{text}`; use single, vertical:K or horizontal:K"));
    match text.split_once(':') {
        None if text == "single" => Ok(Tangle::single_crossing()),
        Some(("vertical", k)) => Tangle::vertical_twist(k.parse().map_err(|_| bad())?),
        Some(("horizontal", k)) => Tangle::horizontal_twist(k.parse().map_err(|_| bad())?),
        _ => Err(bad()),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn summary(r: &VerificationReport) -> String {
    format!(
        "{}: {} passed, {} violations, {} skipped, min margin {} ({})",
        r.check,
        r.passed,
        r.violations,
        r.skipped,
        r.min_margin.map(format_real).unwrap_or_else(|| "n/a".into()),
        r.min_margin_knot.as_deref().unwrap_or("n/a")
    )
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Invariants { input, name, kashaev, volume, field, max_crossings, precision_bits, output } => {
            let d = read_diagram(&input.pd, &input.dt, &input.braid)?;
            if let Some(n) = kashaev {
                if !(2..=KASHAEV_N_CAP).contains(&n) {
                    return Err(KnotError::Domain(format!("--kashaev must lie in 2..={KASHAEV_N_CAP}")).into());
                }
            }
            let opts = RecordOptions {
                field,
                kh_cap: max_crossings,
                kashaev_n_max: kashaev,
                precision: precision_bits,
                volume,
            };
            let record = density_record(&name, &d, &opts)?;
            let text = match output.format {
                Format::Json => serde_json::to_string_pretty(&record)? + "\n",
                Format::Csv => {
                    let mut s = format!("{}\n{}\n", knotdensity::spectra::DensityRecord::CSV_HEADER, record.to_csv_row());
                    if let Some(j) = &record.jones {
                        s.push_str(&format!("# jones {j}\n"));
                    }
                    for k in &record.kashaev {
                        s.push_str(&format!("# kashaev N={} abs={}\n", k.n, format_real(k.abs)));
                    }
                    for n in &record.notes {
                        s.push_str(&format!("# note {n}\n"));
                    }
                    s
                }
            };
            emit(&output.out, &text)?;
            Ok(true)
        }
        Command::Generate { family, out } => {
            let d = match family {
                GenerateFamily::Weaving { p, q } => weaving_knot(p, q)?,
                GenerateFamily::Celtic { m, n } => celtic_grid(m, n)?,
                GenerateFamily::Cycle { tangle, n } => cycle_of_tangles(&parse_tangle(&tangle)?, n)?,
                GenerateFamily::Twist { k } => Family::Twist.diagram(k)?,
            };
            emit(&out, &format!("{}\n", d.to_pd()))?;
            Ok(true)
        }
        Command::Sweep { family, p, q, n, tangle, output } => {
            let reports: Vec<SequenceReport> = match family {
                SweepFamily::Weaving => {
                    let qs = parse_range(&q)?;
                    parse_range(&p)?
                        .into_iter()
                        .map(|p| maximality_sweep(&Family::Weaving { p }, &qs))
                        .collect::<Result<_, _>>()?
                }
                SweepFamily::Celtic => vec![maximality_sweep(&Family::Celtic, &parse_range(&n)?)?],
                SweepFamily::Twist => vec![maximality_sweep(&Family::Twist, &parse_range(&n)?)?],
                SweepFamily::Cycle => {
                    vec![maximality_sweep(&Family::Cycle(parse_tangle(&tangle)?), &parse_range(&n)?)?]
                }
            };
            let text = match output.format {
                Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
                Format::Csv => {
                    let mut s = String::new();
                    for (i, r) in reports.iter().enumerate() {
                        let csv = r.to_csv();
                        s.push_str(if i == 0 { &csv } else { csv.split_once('\n').map_or("", |x| x.1) });
                    }
                    for r in &reports {
                        s.push_str(&format!(
                            "# {} limit {} target {}\n",
                            r.family,
                            r.limit.map(format_real).unwrap_or_else(|| "n/a".into()),
                            format_real(r.target)
                        ));
                    }
                    s
                }
            };
            emit(&output.out, &text)?;
            Ok(true)
        }
        Command::Verify { check, table, max_crossings, field, output } => {
            let entries = load_census(&table)?;
            let cap = max_crossings.unwrap_or(usize::MAX);
            let within: Vec<CensusEntry> = entries.into_iter().filter(|e| e.crossings <= cap).collect();
            let report = match check {
                Check::DetDensity => verify_det_density_bound(&within),
                Check::JonesDensity => verify_jones_density_bound(&within),
                Check::VolDet => verify_vol_det(&within),
                Check::KhVol => verify_kh_vol(&within, field, max_crossings.unwrap_or(KH_CROSSING_CAP)),
                Check::CrossingDrop => verify_crossing_drop(&within, max_crossings.unwrap_or(9)),
            };
            let text = match output.format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Csv => report.to_csv(),
            };
            emit(&output.out, &text)?;
            eprintln!("{}", summary(&report));
            Ok(report.is_pass())
        }
        Command::Kashaev { input, name, table, max_crossings, n_max, precision_bits, output } => {
            if !(2..=KASHAEV_N_CAP).contains(&n_max) {
                return Err(KnotError::Domain(format!("--n-max must lie in 2..={KASHAEV_N_CAP}")).into());
            }
            let knots: Vec<(String, Diagram)> = match table {
                Some(path) => load_census(&path)?
                    .into_iter()
                    .filter(|e| e.crossings <= max_crossings)
                    .map(|e| Ok((e.name.clone(), e.diagram()?)))
                    .collect::<Result<_, KnotError>>()?,
                None => vec![(name.clone(), read_diagram(&input.pd, &input.dt, &input.braid)?)],
            };
            let mut rows = Vec::new();
            for (name, d) in &knots {
                for n in 2..=n_max {
                    let v = kashaev_invariant(d, n, precision_bits).map_err(|e| e.context(name, "kashaev"))?;
                    let density = v.density().ok().map(|f| f.to_f64());
                    rows.push(serde_json::json!({
                        "knot": name,
                        "n": n,
                        "abs": v.abs.to_f64(),
                        "density": density,
                    }));
                }
            }
            let text = match output.format {
                Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
                Format::Csv => {
                    let mut s = String::from("knot,N,abs,density\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{},{},{},{}\n",
                            r["knot"].as_str().unwrap_or_default(),
                            r["n"],
                            format_real(r["abs"].as_f64().unwrap_or(f64::NAN)),
                            r["density"].as_f64().map(format_real).unwrap_or_else(|| "undefined".into())
                        ));
                    }
                    s
                }
            };
            emit(&output.out, &text)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Output(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
