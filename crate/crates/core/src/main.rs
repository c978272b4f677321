use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use jacobi_scattering::circle::{self, CircleFunction};
use jacobi_scattering::closed_form::{example2, example4, Example};
use jacobi_scattering::inverse::{inverse, validate_data};
use jacobi_scattering::jacobi::{self, DEFAULT_N_MAX};
use jacobi_scattering::reconstruct::{
    geronimus, jacobi_from_spectral, szego_transform_o, verblunsky,
};
use jacobi_scattering::scattering::{self, forward, ScatteringData};
use jacobi_scattering::spectral::{SpectralMeasure, MASS_TOL};
use jacobi_scattering::Error;

const REPORT_SCHEMA: &str = "jacobi-scattering/roundtrip";
const REPORT_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "jacobi-scattering",
    version,
    about = "Direct and inverse scattering for Jacobi matrices"
)]
#[command(after_help = "\
CSV columns:
  forward      j,theta,re_s,im_s        (samples of s on the grid)
  reconstruct  n,a_n,b_n                (n = 1..=nmax)
  example      quantity,n,computed,expected,deviation,tol,status

Exit codes: 0 success, 1 numerical tolerance failure, 2 input error.")]
struct Cli {
    /// log2 of the number of grid points on the circle
    #[arg(long, global = true, default_value_t = circle::DEFAULT_GRID_LOG2,
          value_parser = clap::value_parser!(u32).range(3..=24))]
    grid_log2: u32,
    /// Truncation length for recurrences and reconstructed parameters
    #[arg(long, global = true, default_value_t = DEFAULT_N_MAX)]
    nmax: usize,
    /// Tolerance for round-trip and table comparisons
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Output format; `example` prints a text table unless this is given
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral measure JSON to scattering data JSON
    Forward {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Scattering data JSON to normalized spectral measure JSON
    Inverse {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Spectral measure JSON to Jacobi parameters
    Reconstruct {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Inverse then forward on scattering data; writes a versioned report
    Roundtrip {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the full pipeline on a closed-form case and compare
    Example {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        id: u8,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        z1: Option<f64>,
        #[arg(long)]
        mu1: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Failure modes mapped to exit codes.
enum Failure {
    Input(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resolution { .. }
            | Error::Truncation { .. }
            | Error::Pole { .. }
            | Error::Degenerate { .. } => Failure::Numeric(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult<()> {
    let result = match path {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    result.map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Numeric(e.to_string()))
}

fn on_grid(f: &CircleFunction, grid: u32) -> CliResult<CircleFunction> {
    if f.grid_log2() == grid {
        Ok(f.clone())
    } else {
        Ok(f.resample(grid)?)
    }
}

fn measure_on_grid(m: SpectralMeasure, grid: u32) -> CliResult<SpectralMeasure> {
    if m.grid_log2() == grid {
        return Ok(m);
    }
    let log_rho0 = on_grid(m.log_rho0(), grid)?;
    Ok(SpectralMeasure::new(
        m.gamma1(),
        m.gamma2(),
        log_rho0,
        m.masses().to_vec(),
    )?)
}

fn data_on_grid(mut d: ScatteringData, grid: u32) -> CliResult<ScatteringData> {
    d.s = on_grid(&d.s, grid)?;
    Ok(d)
}

fn json_only(cli: &Cli, what: &str) -> CliResult<()> {
    if cli.format == Some(Format::Csv) {
        return Err(Failure::Input(format!(
            "{what} has no CSV form; use --format json"
        )));
    }
    Ok(())
}

fn cmd_forward(cli: &Cli, input: &Path, output: Option<&Path>) -> CliResult<()> {
    let m = measure_on_grid(read_json(input)?, cli.grid_log2)?;
    let data = forward(&m)?;
    if cli.format == Some(Format::Csv) {
        let mut out = String::from("j,theta,re_s,im_s\n");
        let n = data.s.len();
        for (j, s) in data.s.samples().iter().enumerate() {
            let theta = std::f64::consts::TAU * j as f64 / n as f64;
            out.push_str(&format!("{j},{theta:.17e},{:.17e},{:.17e}\n", s.re, s.im));
        }
        return write_out(output, &out);
    }
    write_out(output, &to_json(&data)?)
}

fn cmd_inverse(cli: &Cli, input: &Path, output: Option<&Path>) -> CliResult<()> {
    json_only(cli, "a spectral measure")?;
    let data = data_on_grid(read_json(input)?, cli.grid_log2)?;
    write_out(output, &to_json(&inverse(&data)?)?)
}

fn cmd_reconstruct(cli: &Cli, input: &Path, output: Option<&Path>) -> CliResult<()> {
    let m = measure_on_grid(read_json(input)?, cli.grid_log2)?;
    let params = jacobi_from_spectral(&m, cli.nmax)?;
    if cli.format == Some(Format::Csv) {
        return write_out(output, &params.to_csv(cli.nmax));
    }
    write_out(output, &to_json(&params.materialize(cli.nmax))?)
}

/// Exit status is 1 when any tolerance check fails, 2 when the data is not admissible.
fn cmd_roundtrip(cli: &Cli, input: &Path, output: Option<&Path>) -> CliResult<()> {
    json_only(cli, "the round-trip report")?;
    let data = data_on_grid(read_json(input)?, cli.grid_log2)?;
    let tolerances = json!({ "s": cli.tol, "mu_relative": cli.tol, "mass": MASS_TOL });
    let admissibility = match validate_data(&data) {
        Ok(r) => r,
        Err(Error::Admissibility(item)) => {
            let report = json!({
                "schema": REPORT_SCHEMA,
                "version": REPORT_VERSION,
                "grid_log2": cli.grid_log2,
                "tolerances": tolerances,
                "admissible": false,
                "violation": { "item": item.item(), "message": item.to_string() },
                "pass": false,
            });
            write_out(output, &to_json(&report)?)?;
            return Err(Failure::Input(format!(
                "inadmissible scattering data: {item}"
            )));
        }
        Err(e) => return Err(e.into()),
    };
    let measure = inverse(&data)?;
    let back = forward(&measure)?;
    let s_dev = back.s.max_deviation(&data.s)?;
    let mu_dev: Vec<f64> = back
        .mus
        .iter()
        .zip(&data.mus)
        .map(|(x, y)| (x - y).abs() / y)
        .collect();
    let mass_dev = (measure.total_mass() - 1.0).abs();
    let pass_s = s_dev <= cli.tol;
    let pass_mu = mu_dev.iter().all(|d| *d <= cli.tol);
    let pass_mass = mass_dev <= MASS_TOL;
    let pass = pass_s && pass_mu && pass_mass;
    let report = json!({
        "schema": REPORT_SCHEMA,
        "version": REPORT_VERSION,
        "grid_log2": cli.grid_log2,
        "tolerances": tolerances,
        "admissible": true,
        "admissibility": admissibility,
        "max_s_deviation": s_dev,
        "mu_relative_deviation": mu_dev,
        "mass_deviation": mass_dev,
        "checks": { "s": pass_s, "mu": pass_mu, "mass": pass_mass },
        "pass": pass,
    });
    write_out(output, &to_json(&report)?)?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Numeric("round trip outside tolerance".into()))
    }
}

#[derive(Serialize)]
struct Row {
    quantity: String,
    n: Option<usize>,
    computed: f64,
    expected: f64,
    deviation: f64,
    /// `None` marks a reference row that does not enter the verdict.
    tol: Option<f64>,
}

impl Row {
    fn new(
        quantity: &str,
        n: Option<usize>,
        computed: f64,
        expected: f64,
        tol: Option<f64>,
    ) -> Self {
        Row {
            quantity: quantity.to_owned(),
            n,
            computed,
            expected,
            deviation: (computed - expected).abs(),
            tol,
        }
    }

    fn status(&self) -> &'static str {
        match self.tol {
            None => "ref",
            Some(t) if self.deviation <= t => "ok",
            Some(_) => "FAIL",
        }
    }
}

fn build_example(
    id: u8,
    a: Option<f64>,
    b: Option<f64>,
    z1: Option<f64>,
    mu1: Option<f64>,
) -> CliResult<Example> {
    let given = |name: &str, v: Option<f64>, default: f64, allowed: bool| -> CliResult<f64> {
        match (v, allowed) {
            (Some(_), false) => Err(Failure::Input(format!(
                "--{name} does not apply to example {id}"
            ))),
            (v, _) => Ok(v.unwrap_or(default)),
        }
    };
    let ex = match id {
        1 | 2 => {
            let a = given("a", a, 0.5, true)?;
            given("b", b, 0.0, false)?;
            given("z1", z1, 0.0, false)?;
            given("mu1", mu1, 0.0, false)?;
            if id == 1 {
                Example::One { a }
            } else {
                Example::Two { a }
            }
        }
        3 => {
            given("z1", z1, 0.0, false)?;
            given("mu1", mu1, 0.0, false)?;
            Example::Three {
                a: given("a", a, 0.3, true)?,
                b: given("b", b, 0.6, true)?,
            }
        }
        _ => {
            given("a", a, 0.0, false)?;
            given("b", b, 0.0, false)?;
            Example::Four {
                z1: given("z1", z1, 0.5, true)?,
                mu1: given("mu1", mu1, 1.0, true)?,
            }
        }
    };
    ex.validate().map_err(|e| Failure::Input(e.to_string()))?;
    Ok(ex)
}

fn example_rows(cli: &Cli, ex: Example) -> CliResult<Vec<Row>> {
    let grid = cli.grid_log2;
    let tol = cli.tol;
    let mut rows = Vec::new();

    // forward map of the closed-form measure against the closed-form s
    let measure = ex.measure(grid)?;
    let data = forward(&measure)?;
    let closed_s = CircleFunction::from_fn(grid, |t| ex.s(t))?;
    rows.push(Row::new(
        "max |s - closed form|",
        None,
        data.s.max_deviation(&closed_s)?,
        0.0,
        Some(tol),
    ));

    // inverse map of the closed-form data, then reconstruction
    let data = ex.scattering_data(grid)?;
    let rebuilt = inverse(&data)?;
    let params = jacobi_from_spectral(&rebuilt, cli.nmax)?;
    let closed = ex.params()?;

    if ex.alpha(0).is_some() {
        let seq = verblunsky(&szego_transform_o(&rebuilt)?, 2 * 21 + 3)?;
        for n in 0..=20 {
            rows.push(Row::new(
                "alpha",
                Some(n),
                seq.alphas[n],
                ex.alpha(n).unwrap_or(0.0),
                Some(tol),
            ));
        }
        let from_alphas = geronimus(&seq)?;
        let tol_params = if matches!(ex, Example::Two { .. }) {
            tol.max(1e-7)
        } else {
            tol
        };
        for n in 1..=21 {
            rows.push(Row::new(
                "b",
                Some(n),
                from_alphas.b(n),
                closed.b(n),
                Some(tol_params),
            ));
            rows.push(Row::new(
                "a^2",
                Some(n),
                from_alphas.a(n).powi(2),
                closed.a(n).powi(2),
                Some(tol_params),
            ));
        }
        if let Example::Two { a } = ex {
            rows.push(Row::new(
                "alpha_20 from formula",
                Some(20),
                example2::alpha(a, 20),
                ex.alpha(20).unwrap(),
                Some(tol),
            ));
        }
        return Ok(rows);
    }

    let Example::Four { z1, mu1 } = ex else {
        unreachable!()
    };
    let t = tol.max(1e-6);
    let sigma = rebuilt.masses()[0].sigma;
    rows.push(Row::new(
        "sigma1",
        None,
        sigma,
        example4::sigma1(z1, mu1),
        Some(t),
    ));
    rows.push(Row::new(
        "epsilon",
        None,
        sigma / rebuilt.ac_mass(),
        example4::epsilon(z1, mu1),
        Some(t),
    ));
    let cmp = scattering::compare_normalizing_constants(&closed, &rebuilt, 0, cli.nmax)?;
    rows.push(Row::new("m1 (Jost solution)", None, cmp.m, mu1, Some(t)));
    rows.push(Row::new(
        "sigma1 * sum s_n(z1)^2",
        None,
        scattering::mass_identity(&params, &rebuilt, 0, cli.nmax)?,
        1.0,
        Some(t),
    ));
    let phi0 = jacobi::jost_solution(&params, Complex64::new(0.3, 0.0), cli.nmax)?;
    rows.push(Row::new(
        "phi_0(0.3)",
        None,
        phi0.values[0].re,
        example4::jost_function(z1, mu1, 0.3),
        Some(t),
    ));
    rows.push(Row::new(
        "a^2 (insertion formula)",
        Some(1),
        params.a(1).powi(2),
        example4::a1_sq(z1, mu1),
        Some(t),
    ));
    rows.push(Row::new(
        "a^2 (displayed form)",
        Some(1),
        params.a(1).powi(2),
        example4::a1_sq_displayed(z1, mu1),
        None,
    ));
    for n in 2..=15 {
        rows.push(Row::new(
            "a^2",
            Some(n),
            params.a(n).powi(2),
            example4::a_sq(z1, mu1, n),
            Some(t),
        ));
    }
    for n in 1..=15 {
        let expected = example4::params(z1, mu1, n).1;
        let label = if n < 3 { "b (from V_n)" } else { "b" };
        rows.push(Row::new(label, Some(n), params.b(n), expected, Some(t)));
    }
    Ok(rows)
}

fn cmd_example(cli: &Cli, ex: Example, output: Option<&Path>) -> CliResult<()> {
    let rows = example_rows(cli, ex)?;
    let pass = rows.iter().all(|r| r.status() != "FAIL");
    let text = match cli.format {
        Some(Format::Json) => to_json(&json!({ "example": ex.id(), "rows": rows, "pass": pass }))?,
        Some(Format::Csv) => {
            let mut out = String::from("quantity,n,computed,expected,deviation,tol,status\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{:.17e},{:.17e},{:.3e},{},{}\n",
                    r.quantity,
                    r.n.map(|n| n.to_string()).unwrap_or_default(),
                    r.computed,
                    r.expected,
                    r.deviation,
                    r.tol.map(|t| format!("{t:e}")).unwrap_or_default(),
                    r.status()
                ));
            }
            out
        }
        None => {
            let mut out = format!("example {} ({:?})\n", ex.id(), ex);
            out.push_str(&format!(
                "{:<26} {:>3} {:>22} {:>22} {:>10}  {}\n",
                "quantity", "n", "computed", "expected", "deviation", "status"
            ));
            for r in &rows {
                out.push_str(&format!(
                    "{:<26} {:>3} {:>22.15e} {:>22.15e} {:>10.2e}  {}\n",
                    r.quantity,
                    r.n.map(|n| n.to_string()).unwrap_or_default(),
                    r.computed,
                    r.expected,
                    r.deviation,
                    r.status()
                ));
            }
            out.push_str(if pass {
                "all checks within tolerance\n"
            } else {
                "some checks FAILED\n"
            });
            out
        }
    };
    write_out(output, &text)?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Numeric(format!(
            "example {} outside tolerance",
            ex.id()
        )))
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(Failure::Input(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    if cli.nmax < 2 {
        return Err(Failure::Input("--nmax must be at least 2".into()));
    }
    match &cli.command {
        Command::Forward { input, output } => cmd_forward(cli, input, output.as_deref()),
        Command::Inverse { input, output } => cmd_inverse(cli, input, output.as_deref()),
        Command::Reconstruct { input, output } => cmd_reconstruct(cli, input, output.as_deref()),
        Command::Roundtrip { input, output } => cmd_roundtrip(cli, input, output.as_deref()),
        Command::Example {
            id,
            a,
            b,
            z1,
            mu1,
            output,
        } => {
            let ex = build_example(*id, *a, *b, *z1, *mu1)?;
            cmd_example(cli, ex, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
