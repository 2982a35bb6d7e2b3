//! Command-line surface of the toolkit: norms, fractional derivatives,
//! Carleson constants, Volterra-type operators, family expansion and
//! the experiment harness.
//!
//! Exit codes: 0 on success (and on verified brackets), 1 on a failed
//! assertion or I/O error, 2 on usage, parse or admissibility errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::process::ExitCode;

use qpbeta::calculus::{op_ig, op_mg, volterra_tg, FracDerivParams};
use qpbeta::family::make_family;
use qpbeta::geometry::PointGrid;
use qpbeta::quad::QuadConfig;
use qpbeta::series::TaylorSeries;
use qpbeta::spaces::{
    bmo_beta_seminorm, carleson_box_constant, carleson_mobius_constant, growth_seminorm,
    morrey_carleson_constant, morrey_norm, q_circle_difference_form, q_circle_seminorm,
    q_disc_box_seminorm, q_disc_mobius_norm, Density, NormResult,
};
use qpbeta::verify::run_experiment;
use qpbeta::{ArcGrid, FamilyMember, FamilySpec, SpaceParams, TheoremContext};

#[derive(Parser)]
#[command(
    name = "qpbeta",
    about = "Numerical toolkit for analytic Q-type spaces on the unit disc and circle",
    version
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Radial subdivision per graded band
    #[arg(long, global = true, default_value_t = 8)]
    levels: usize,
    /// Angular cell count on the full circle
    #[arg(long, global = true, default_value_t = 64)]
    angles: usize,
    /// Geometric grading ratio towards the boundary
    #[arg(long, global = true, default_value_t = 0.5)]
    grade: f64,
    /// Innermost resolved boundary distance
    #[arg(long, global = true, default_value_t = 1e-6)]
    eps_min: f64,
    /// Run at one extra refinement level
    #[arg(long, global = true)]
    refine: bool,
    /// Seed recorded in reports (family seeds live in the family spec)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output path (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Arc-grid centers for supremum search
    #[arg(long, global = true, default_value_t = 64)]
    centers: usize,
    /// Smallest dyadic arc 2^-kmax in the arc grid
    #[arg(long, global = true, default_value_t = 8)]
    kmax: u32,
    /// Radial depth of the Möbius point grid (radii 1-2^-k)
    #[arg(long, global = true, default_value_t = 7)]
    point_kmax: u32,
    /// Angular count of the Möbius point grid
    #[arg(long, global = true, default_value_t = 8)]
    point_angles: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a norm, seminorm or Carleson-type supremum of a function
    Norm {
        #[arg(long, value_enum)]
        op: NormOp,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        nu: Option<f64>,
        /// Morrey exponent (morrey ops only)
        #[arg(long)]
        lambda: Option<f64>,
        /// Function document: inline JSON or a path
        #[arg(long = "fn")]
        function: String,
    },
    /// Apply the fractional nu-derivative to a series
    Fracderiv {
        #[arg(long)]
        nu: f64,
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        #[arg(long = "fn")]
        function: String,
    },
    /// Carleson constant of a density in box or Möbius form
    Carleson {
        #[arg(long, value_enum)]
        form: CarlesonForm,
        #[arg(long)]
        s: f64,
        /// Radial density (1-|z|^2)^a
        #[arg(long)]
        radial: Option<f64>,
        /// Series whose derivative density |f'|^2 (1-|z|^2)^w is used
        #[arg(long = "fn")]
        function: Option<String>,
        /// Weight exponent w of the derivative density
        #[arg(long, default_value_t = 0.0)]
        weight_exp: f64,
    },
    /// Apply a Volterra-type operator and print the resulting series
    Operator {
        #[arg(long, value_enum)]
        kind: OperatorKind,
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 256)]
        budget: usize,
    },
    /// Run one experiment of the verification harness
    Verify {
        /// Experiment identifier (see `families --list-experiments`)
        experiment_id: String,
    },
    /// Expand a family spec into explicit coefficients
    Families {
        /// Family spec: inline JSON or a path
        #[arg(long)]
        spec: Option<String>,
        /// List the known experiment identifiers instead
        #[arg(long)]
        list_experiments: bool,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum NormOp {
    QDiscBox,
    QDiscMobius,
    QCircle,
    QCircleDiff,
    BmoBeta,
    Morrey,
    MorreyCarleson,
    Growth,
    Hardy2,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CarlesonForm {
    Box,
    Mobius,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OperatorKind {
    Tg,
    Ig,
    Mg,
}

/// Parameters block accepted inside a function document.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
struct ParamsBlock {
    p: Option<f64>,
    beta: Option<f64>,
    b: Option<f64>,
    nu: Option<f64>,
}

/// Usage/parse/admissibility failure (exit 2), as opposed to a
/// computation failure (exit 1).
enum CliError {
    Usage(String),
    Failure(String),
}

impl From<qpbeta::QError> for CliError {
    fn from(e: qpbeta::QError) -> Self {
        match e {
            qpbeta::QError::Domain(_) | qpbeta::QError::Parse(_) | qpbeta::QError::Inadmissible(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn read_doc(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| CliError::Usage(format!("cannot read function document '{arg}': {e}")))
    }
}

fn member_from_value(v: &serde_json::Value) -> Result<FamilyMember, CliError> {
    if v.get("coeffs").is_some() {
        let series: TaylorSeries = serde_json::from_value(v.clone())
            .map_err(|e| CliError::Usage(format!("malformed coefficient list: {e}")))?;
        Ok(FamilyMember::Taylor(series))
    } else if v.get("kind").is_some() {
        let spec: FamilySpec = serde_json::from_value(v.clone())
            .map_err(|e| CliError::Usage(format!("malformed family spec: {e}")))?;
        Ok(make_family(&spec)?)
    } else {
        Err(CliError::Usage(
            "function document must contain \"coeffs\", a family \"kind\", or wrap one under \"fn\""
                .into(),
        ))
    }
}

/// A function document is either a bare source — explicit coefficients
/// `{"coeffs":[[re,im],...]}` or a family spec `{"kind":...}` — or a
/// wrapper `{"fn": <source>, "params": {p, beta, b, nu}}`.
fn parse_function_spec(arg: &str) -> Result<(FamilyMember, ParamsBlock), CliError> {
    let text = read_doc(arg)?;
    let v: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed function document: {e}")))?;
    if let Some(inner) = v.get("fn") {
        let member = member_from_value(inner)?;
        let params = match v.get("params") {
            Some(p) => serde_json::from_value(p.clone())
                .map_err(|e| CliError::Usage(format!("malformed params block: {e}")))?,
            None => ParamsBlock::default(),
        };
        Ok((member, params))
    } else {
        Ok((member_from_value(&v)?, ParamsBlock::default()))
    }
}

fn resolve_params(
    cli_p: Option<f64>,
    cli_beta: Option<f64>,
    cli_b: Option<f64>,
    cli_nu: Option<f64>,
    doc: &ParamsBlock,
) -> Result<SpaceParams, CliError> {
    let p = cli_p.or(doc.p).ok_or_else(|| CliError::Usage("missing --p".into()))?;
    let beta = cli_beta.or(doc.beta).ok_or_else(|| CliError::Usage("missing --beta".into()))?;
    let b = cli_b.or(doc.b).unwrap_or(2.0);
    let nu = cli_nu.or(doc.nu).unwrap_or(1.0);
    Ok(SpaceParams::new(p, beta, b, nu)?)
}

fn check(params: &SpaceParams, context: TheoremContext) -> Result<(), CliError> {
    let verdict = params.validate(context);
    if verdict.admissible {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "inadmissible parameters: {}",
            verdict.violated.unwrap_or_default()
        )))
    }
}

fn emit(opts: &GlobalOpts, json: String, csv: Option<String>) -> Result<(), CliError> {
    let payload = match opts.format {
        Format::Json => json,
        Format::Csv => csv.ok_or_else(|| {
            CliError::Usage("this command has no CSV rendering; use --format json".into())
        })?,
    };
    match &opts.out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout(), "{payload}") {
                Ok(()) => Ok(()),
                // a closed pipe (e.g. `| head`) is not a failure
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(CliError::Failure(format!("cannot write to stdout: {e}"))),
            }
        }
    }
}

fn norm_result_csv(r: &NormResult) -> String {
    // point-grid suprema reuse the table slots as (re, im, value)
    let header = match r.witness {
        qpbeta::spaces::Witness::Point { .. } => "re,im,value\n",
        _ => "center,length,value\n",
    };
    let mut out = String::from(header);
    for row in &r.table {
        out.push_str(&format!("{},{},{}\n", row.center, row.norm_length, row.value));
    }
    out
}

fn quad_config(opts: &GlobalOpts) -> Result<QuadConfig, CliError> {
    let cfg = QuadConfig {
        levels: opts.levels,
        angles: opts.angles,
        grade: opts.grade,
        eps_min: opts.eps_min,
        refine_factor: 2,
    };
    cfg.validate()?;
    Ok(if opts.refine { cfg.refined() } else { cfg })
}

fn arc_grid(opts: &GlobalOpts) -> ArcGrid {
    ArcGrid::new(opts.centers, opts.kmax)
}

fn point_grid(opts: &GlobalOpts) -> PointGrid {
    PointGrid::new(opts.point_kmax, opts.point_angles)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Failure(e.to_string()))
}

fn run_norm(
    opts: &GlobalOpts,
    op: NormOp,
    p: Option<f64>,
    beta: Option<f64>,
    b: Option<f64>,
    nu: Option<f64>,
    lambda: Option<f64>,
    function: &str,
) -> Result<(), CliError> {
    let (member, doc_params) = parse_function_spec(function)?;
    let cfg = quad_config(opts)?;
    let grid = arc_grid(opts);
    let result: NormResult = match op {
        NormOp::QDiscBox => {
            let params = resolve_params(p, beta, b, nu, &doc_params)?;
            q_disc_box_seminorm(member.as_taylor()?, &params, &cfg, &grid)?
        }
        NormOp::QDiscMobius => {
            let params = resolve_params(p, beta, b, nu, &doc_params)?;
            q_disc_mobius_norm(member.as_taylor()?, &params, &cfg, &point_grid(opts))?
        }
        NormOp::QCircle => {
            let params = resolve_params(p, beta, b, nu, &doc_params)?;
            check(&params, TheoremContext::CircleTheorems)?;
            q_circle_seminorm(member.as_fourier()?, &params, &cfg, &grid)?
        }
        NormOp::QCircleDiff => {
            let params = resolve_params(p, beta, b, nu, &doc_params)?;
            check(&params, TheoremContext::CircleTheorems)?;
            q_circle_difference_form(member.as_fourier()?, &params, &cfg, &grid)?
        }
        NormOp::BmoBeta => {
            let beta =
                beta.or(doc_params.beta).ok_or_else(|| CliError::Usage("missing --beta".into()))?;
            bmo_beta_seminorm(member.as_fourier()?, beta, &cfg, &grid)?
        }
        NormOp::Morrey => {
            let lambda = lambda.ok_or_else(|| CliError::Usage("missing --lambda".into()))?;
            let r = morrey_norm(member.as_taylor()?, lambda, &cfg, &grid)?;
            let json = to_json(&r)?;
            let csv = norm_result_csv(&r.norm);
            return emit(opts, json, Some(csv));
        }
        NormOp::MorreyCarleson => {
            let lambda = lambda.ok_or_else(|| CliError::Usage("missing --lambda".into()))?;
            morrey_carleson_constant(member.as_taylor()?, lambda, &cfg, &grid)?
        }
        NormOp::Growth => {
            let beta =
                beta.or(doc_params.beta).ok_or_else(|| CliError::Usage("missing --beta".into()))?;
            growth_seminorm(member.as_taylor()?, beta, 64)?
        }
        NormOp::Hardy2 => {
            let value = member.as_taylor()?.hardy2_norm();
            let json = to_json(&serde_json::json!({ "value": value }))?;
            return emit(opts, json, Some(format!("value\n{value}\n")));
        }
    };
    let json = to_json(&result)?;
    let csv = norm_result_csv(&result);
    emit(opts, json, Some(csv))
}

fn run_carleson(
    opts: &GlobalOpts,
    form: CarlesonForm,
    s: f64,
    radial: Option<f64>,
    function: Option<&str>,
    weight_exp: f64,
) -> Result<(), CliError> {
    let density = match (radial, function) {
        (Some(a), None) => Density::weight_pow(a),
        (None, Some(doc)) => {
            let (member, _) = parse_function_spec(doc)?;
            Density::derivative_density(member.as_taylor()?, weight_exp)
        }
        _ => {
            return Err(CliError::Usage(
                "provide exactly one of --radial or --fn".into(),
            ))
        }
    };
    let cfg = quad_config(opts)?;
    let result = match form {
        CarlesonForm::Box => carleson_box_constant(&density, s, &cfg, &arc_grid(opts))?,
        CarlesonForm::Mobius => carleson_mobius_constant(&density, s, &cfg, &point_grid(opts))?,
    };
    let json = to_json(&result)?;
    let csv = norm_result_csv(&result);
    emit(opts, json, Some(csv))
}

fn run_fracderiv(opts: &GlobalOpts, nu: f64, b: f64, function: &str) -> Result<(), CliError> {
    let (member, _) = parse_function_spec(function)?;
    let fp = FracDerivParams::new(nu, b)?;
    let result = qpbeta::calculus::frac_derivative(member.as_taylor()?, &fp);
    let json = to_json(&result)?;
    let mut csv = String::from("k,re,im\n");
    for k in 0..=result.degree() {
        let c = result.coeff(k);
        csv.push_str(&format!("{k},{},{}\n", c.re, c.im));
    }
    emit(opts, json, Some(csv))
}

fn run_operator(
    opts: &GlobalOpts,
    kind: OperatorKind,
    function: &str,
    g: &str,
    budget: usize,
) -> Result<(), CliError> {
    let (fm, _) = parse_function_spec(function)?;
    let (gm, _) = parse_function_spec(g)?;
    let f = fm.as_taylor()?;
    let g = gm.as_taylor()?;
    let result = match kind {
        OperatorKind::Tg => volterra_tg(f, g, budget),
        OperatorKind::Ig => op_ig(f, g, budget),
        OperatorKind::Mg => op_mg(f, g, budget),
    };
    let json = to_json(&result)?;
    let mut csv = String::from("k,re,im\n");
    for k in 0..=result.degree() {
        let c = result.coeff(k);
        csv.push_str(&format!("{k},{},{}\n", c.re, c.im));
    }
    emit(opts, json, Some(csv))
}

fn run_verify(opts: &GlobalOpts, experiment_id: &str) -> Result<bool, CliError> {
    let cfg = if opts.refine { Some(QuadConfig::coarse().refined()) } else { None };
    let mut report = run_experiment(experiment_id, cfg)?;
    report.param_record.seed = opts.seed;
    let json = to_json(&report)?;
    let csv = report.to_csv();
    emit(opts, json, Some(csv))?;
    Ok(report.passed)
}

fn run_families(
    opts: &GlobalOpts,
    spec: Option<&str>,
    list_experiments: bool,
) -> Result<(), CliError> {
    if list_experiments {
        let json = to_json(&qpbeta::verify::EXPERIMENT_IDS)?;
        let mut csv = String::from("experimentId\n");
        for id in qpbeta::verify::EXPERIMENT_IDS {
            csv.push_str(id);
            csv.push('\n');
        }
        return emit(opts, json, Some(csv));
    }
    let spec = spec.ok_or_else(|| CliError::Usage("missing --spec".into()))?;
    let text = read_doc(spec)?;
    let parsed: FamilySpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed family spec: {e}")))?;
    match make_family(&parsed)? {
        FamilyMember::Taylor(series) => {
            let json = to_json(&series)?;
            let mut csv = String::from("k,re,im\n");
            for k in 0..=series.degree() {
                let c = series.coeff(k);
                csv.push_str(&format!("{k},{},{}\n", c.re, c.im));
            }
            emit(opts, json, Some(csv))
        }
        FamilyMember::Fourier(series) => {
            let modes: Vec<(i64, [f64; 2])> = series
                .coeffs()
                .iter()
                .map(|(&n, c)| (n, [c.re, c.im]))
                .collect();
            let json = to_json(&serde_json::json!({ "modes": modes }))?;
            let mut csv = String::from("n,re,im\n");
            for (n, [re, im]) in &modes {
                csv.push_str(&format!("{n},{re},{im}\n"));
            }
            emit(opts, json, Some(csv))
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool, CliError> {
    // QDISC_THREADS caps internal parallelism; evaluation is currently
    // sequential and deterministic, so any value acts as a no-op cap.
    let _ = std::env::var("QDISC_THREADS");
    let opts = cli.global.clone();
    match cli.command {
        Command::Norm { op, p, beta, b, nu, lambda, function } => {
            run_norm(&opts, op, p, beta, b, nu, lambda, &function).map(|_| true)
        }
        Command::Fracderiv { nu, b, function } => {
            run_fracderiv(&opts, nu, b, &function).map(|_| true)
        }
        Command::Carleson { form, s, radial, function, weight_exp } => {
            run_carleson(&opts, form, s, radial, function.as_deref(), weight_exp).map(|_| true)
        }
        Command::Operator { kind, function, g, budget } => {
            run_operator(&opts, kind, &function, &g, budget).map(|_| true)
        }
        Command::Verify { experiment_id } => run_verify(&opts, &experiment_id),
        Command::Families { spec, list_experiments } => {
            run_families(&opts, spec.as_deref(), list_experiments).map(|_| true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification bracket failed");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
