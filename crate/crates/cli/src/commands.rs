use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weyldft_core::grids::{check_level, point_set_with, weight_set_with, LevelPolicy};
use weyldft_core::io::{
    align_samples, grid_file, parse_samples, read_points_csv, spectrum_file, to_json, weight_file,
    write_counts_csv, write_evaluations_csv, write_points_csv, write_samples_csv, write_spectrum_csv, write_weights_csv, CountRow, Value,
};
use weyldft_core::transforms::{
    hartley_inverse_on_grid, inverse_on_grid, max_relative_error, random_real_samples, random_samples, SampleTable,
};
use weyldft_core::verify::{run_verify, VerifyOptions};
use weyldft_core::weyl::DEFAULT_CAP;
use weyldft_core::{
    build, count_row, forward, generalized_coxeter, hartley_forward, hartley_inverse, inverse, AlgebraType, Error,
    PlanOptions, RootSystemData, SignHom, TransformPlan,
};

pub const EXIT_IO: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_LEVEL: u8 = 3;
pub const EXIT_COUNT: u8 = 4;
pub const EXIT_GRID: u8 = 5;
pub const EXIT_VERIFY: u8 = 6;
pub const EXIT_GROUP: u8 = 7;

/// Discrete Fourier and Hartley transforms on Weyl-group orbit functions.
///
/// Exit codes: 1 I/O error, 2 invalid configuration, 3 level too small,
/// 4 count disagreement, 5 sample grid mismatch, 6 verification failure,
/// 7 Weyl group too large to enumerate.
#[derive(Debug, Parser)]
#[command(name = "weyldft", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the sampling grid.
    Points(GridArgs),
    /// List the transform weights.
    Weights(GridArgs),
    /// Compare the counting routes over a sweep.
    Count(CountArgs),
    /// Forward transform of a sample table.
    Transform(TransformArgs),
    /// Run the self-checks for one configuration.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Algebra such as A2, C3, E8.
    #[arg(long)]
    pub algebra: String,
    /// Sign homomorphism: 1, e, s or l.
    #[arg(long, default_value = "1")]
    pub sigma: String,
    /// Level M.
    #[arg(long = "M")]
    pub level: i64,
    /// Accept levels at or below the generalized Coxeter number; output is tagged.
    #[arg(long = "relaxed-M")]
    pub relaxed: bool,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// One algebra, a comma list, or a rank range such as A1..A4.
    #[arg(long)]
    pub algebra: String,
    /// Restrict to one sign homomorphism; all admissible ones otherwise.
    #[arg(long)]
    pub sigma: Option<String>,
    /// One level, a comma list or a range such as 8..12; defaults to the ten
    /// levels above the generalized Coxeter number.
    #[arg(long = "M")]
    pub level: Option<String>,
    /// Skip explicit enumeration and compare closed form with Burnside only.
    #[arg(long)]
    pub no_enumeration: bool,
    #[arg(long = "relaxed-M")]
    pub relaxed: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub common: Common,
    /// Sample table (JSON sample file or CSV with kac and re/im or value columns).
    #[arg(long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    /// Use pseudo-random samples generated from this seed.
    #[arg(long)]
    pub random: Option<u64>,
    /// Also write the sample table used as CSV (`kac,q,eps,re,im`).
    #[arg(long)]
    pub save_samples: Option<PathBuf>,
    /// Real Hartley transform instead of the complex Fourier transform.
    #[arg(long)]
    pub hartley: bool,
    /// Report the reconstruction error of the inverse on the grid.
    #[arg(long)]
    pub roundtrip: bool,
    /// Evaluate the interpolant at the rational points of this CSV (`denom,q`).
    #[arg(long)]
    pub eval: Option<PathBuf>,
    /// Permit enumerating Weyl groups beyond one million elements.
    #[arg(long)]
    pub allow_large_weyl: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub allow_large_weyl: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub corrupt_eps: bool,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LevelTooSmall { .. } => EXIT_LEVEL,
            Error::GridMismatch(_) => EXIT_GRID,
            Error::GroupTooLarge { .. } => EXIT_GROUP,
            Error::InvalidAlgebra(_) | Error::InadmissibleSign { .. } | Error::MalformedKac(_) | Error::Parse(_) => {
                EXIT_CONFIG
            }
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure { code: EXIT_IO, message: e.to_string() }
}

type CliResult<T> = Result<T, Failure>;

fn emit(output: &Option<PathBuf>, bytes: &[u8]) -> CliResult<()> {
    match output {
        Some(p) => fs::write(p, bytes).map_err(io_failure),
        None => std::io::stdout().write_all(bytes).map_err(io_failure),
    }
}

fn policy(relaxed: bool) -> LevelPolicy {
    if relaxed {
        LevelPolicy::Relaxed
    } else {
        LevelPolicy::Strict
    }
}

fn setup(c: &Common) -> CliResult<(RootSystemData, SignHom, bool)> {
    let kind: AlgebraType = c.algebra.parse()?;
    let sigma: SignHom = c.sigma.parse()?;
    let data = build(kind)?;
    check_level(&data, sigma, c.level, policy(c.relaxed))?;
    let tagged = c.relaxed && c.level <= generalized_coxeter(&data, sigma)?;
    Ok((data, sigma, tagged))
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Points(a) => cmd_points(&a),
        Command::Weights(a) => cmd_weights(&a),
        Command::Count(a) => cmd_count(&a),
        Command::Transform(a) => cmd_transform(&a),
        Command::Verify(a) => cmd_verify(&a),
    }
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> weyldft_core::Result<()>) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

fn cmd_points(a: &GridArgs) -> CliResult<()> {
    let (data, sigma, tagged) = setup(&a.common)?;
    let pts = point_set_with(&data, sigma, a.common.level, policy(a.common.relaxed))?;
    let bytes = match a.format {
        Format::Json => to_json(&grid_file(data.kind, sigma, a.common.level, tagged, &pts)).into_bytes(),
        Format::Csv => csv_bytes(|b| write_points_csv(b, &pts))?,
    };
    emit(&a.output, &bytes)?;
    eprintln!("{} {} M={}: {} points", data.kind, sigma, a.common.level, pts.len());
    Ok(())
}

fn cmd_weights(a: &GridArgs) -> CliResult<()> {
    let (data, sigma, tagged) = setup(&a.common)?;
    let ws = weight_set_with(&data, sigma, a.common.level, policy(a.common.relaxed))?;
    let bytes = match a.format {
        Format::Json => to_json(&weight_file(data.kind, sigma, a.common.level, tagged, &ws)).into_bytes(),
        Format::Csv => csv_bytes(|b| write_weights_csv(b, &ws))?,
    };
    emit(&a.output, &bytes)?;
    eprintln!("{} {} M={}: {} weights", data.kind, sigma, a.common.level, ws.len());
    Ok(())
}

fn parse_algebras(arg: &str) -> CliResult<Vec<AlgebraType>> {
    let mut out = Vec::new();
    for part in arg.split(',') {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: AlgebraType = lo.parse()?;
            let hi: AlgebraType = hi.parse()?;
            if lo.family != hi.family || lo.rank > hi.rank {
                return Err(Error::InvalidAlgebra(part.to_string()).into());
            }
            for r in lo.rank..=hi.rank {
                out.push(AlgebraType::new(lo.family, r)?);
            }
        } else {
            out.push(part.parse()?);
        }
    }
    Ok(out)
}

fn parse_levels(arg: &str) -> CliResult<Vec<i64>> {
    let bad = || Failure::from(Error::Parse(format!("bad level list {arg:?}")));
    let mut out = Vec::new();
    for part in arg.split(',') {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
            out.extend(lo..=hi);
        } else {
            out.push(part.trim().parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

fn cmd_count(a: &CountArgs) -> CliResult<()> {
    let algebras = parse_algebras(&a.algebra)?;
    let explicit = a.level.as_deref().map(parse_levels).transpose()?;
    let only: Option<SignHom> = a.sigma.as_deref().map(str::parse).transpose()?;
    let mut rows: Vec<CountRow> = Vec::new();
    for kind in algebras {
        let data = build(kind)?;
        let sigmas = match only {
            Some(s) => {
                s.check(kind)?;
                vec![s]
            }
            None => SignHom::admissible(kind),
        };
        for sigma in sigmas {
            let ms = generalized_coxeter(&data, sigma)?;
            let levels = explicit.clone().unwrap_or_else(|| (ms + 1..=ms + 10).collect());
            for m in levels {
                if m > ms {
                    rows.push(count_row(&data, sigma, m, !a.no_enumeration)?);
                } else if a.relaxed && m >= 1 {
                    let np = point_set_with(&data, sigma, m, LevelPolicy::Relaxed)?.len();
                    let nw = weight_set_with(&data, sigma, m, LevelPolicy::Relaxed)?.len();
                    rows.push(CountRow {
                        algebra: kind,
                        sigma,
                        level: m,
                        closed_form: String::new(),
                        burnside: String::new(),
                        enum_points: np.to_string(),
                        enum_weights: nw.to_string(),
                        agree: np == nw,
                    });
                } else {
                    return Err(Error::LevelTooSmall { level: m, bound: ms }.into());
                }
            }
        }
    }
    let bytes = match a.format {
        Format::Json => to_json(&rows).into_bytes(),
        Format::Csv => csv_bytes(|b| write_counts_csv(b, &rows))?,
    };
    emit(&a.output, &bytes)?;
    if let Some(bad) = rows.iter().find(|r| !r.agree) {
        return Err(Failure {
            code: EXIT_COUNT,
            message: format!("counts disagree for {} {} M={}", bad.algebra, bad.sigma, bad.level),
        });
    }
    Ok(())
}

fn read_text(p: &PathBuf) -> CliResult<String> {
    fs::read_to_string(p).map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", p.display()) })
}

fn cmd_transform(a: &TransformArgs) -> CliResult<()> {
    let (data, sigma, tagged) = setup(&a.common)?;
    let opts = PlanOptions {
        policy: policy(a.common.relaxed),
        weyl_cap: if a.allow_large_weyl { u64::MAX } else { DEFAULT_CAP },
        ..Default::default()
    };
    let plan = TransformPlan::with_options(&data, sigma, a.common.level, opts)?;
    let samples: SampleTable<Value> = match (&a.input, a.random) {
        (Some(p), _) => align_samples(&plan, &parse_samples(&read_text(p)?)?)?,
        (None, Some(seed)) => {
            if a.hartley {
                let t = random_real_samples(&plan, seed);
                SampleTable { points: t.points, values: t.values.into_iter().map(Value::from).collect() }
            } else {
                let t = random_samples(&plan, seed);
                SampleTable { points: t.points, values: t.values.into_iter().map(Value::from).collect() }
            }
        }
        (None, None) => return Err(Error::Parse("either --input or --random is required".into()).into()),
    };
    if let Some(p) = &a.save_samples {
        let table = SampleTable {
            points: samples.points.clone(),
            values: samples.values.iter().map(|v| v.complex()).collect(),
        };
        let bytes = csv_bytes(|b| write_samples_csv(b, &table))?;
        fs::write(p, bytes).map_err(io_failure)?;
    }
    let eval_points = a
        .eval
        .as_ref()
        .map(|p| read_text(p).and_then(|t| Ok(read_points_csv(t.as_bytes(), data.rank)?)))
        .transpose()?;

    let (file, evaluations) = if a.hartley {
        let values = samples.values.iter().map(|v| v.real()).collect::<weyldft_core::Result<Vec<f64>>>()?;
        let table = SampleTable { points: samples.points.clone(), values };
        let spectrum = hartley_forward(&plan, &table)?;
        let mut file = spectrum_file(&plan, tagged, "hartley", &spectrum);
        if a.roundtrip {
            let back = hartley_inverse_on_grid(&plan, &spectrum)?;
            let c = |v: &[f64]| v.iter().map(|x| Value::from(*x).complex()).collect::<Vec<_>>();
            file.roundtrip_error = Some(max_relative_error(&c(&table.values), &c(&back.values)));
        }
        let evals = eval_points
            .as_ref()
            .map(|pts| pts.iter().map(|p| hartley_inverse(&plan, &spectrum, p).map(Value::from)).collect::<Result<Vec<_>, _>>())
            .transpose()?;
        (file, evals)
    } else {
        let table = SampleTable {
            points: samples.points.clone(),
            values: samples.values.iter().map(|v| v.complex()).collect(),
        };
        let spectrum = forward(&plan, &table)?;
        let mut file = spectrum_file(&plan, tagged, "fourier", &spectrum);
        if a.roundtrip {
            let back = inverse_on_grid(&plan, &spectrum)?;
            file.roundtrip_error = Some(max_relative_error(&table.values, &back.values));
        }
        let evals = eval_points
            .as_ref()
            .map(|pts| pts.iter().map(|p| inverse(&plan, &spectrum, p).map(Value::from)).collect::<Result<Vec<_>, _>>())
            .transpose()?;
        (file, evals)
    };

    if let (Some(pts), Some(vals)) = (&eval_points, &evaluations) {
        let bytes = csv_bytes(|b| write_evaluations_csv(b, pts, vals))?;
        return emit(&a.output, &bytes);
    }
    let bytes = match a.format {
        Format::Json => to_json(&file).into_bytes(),
        Format::Csv => csv_bytes(|b| write_spectrum_csv(b, &file))?,
    };
    emit(&a.output, &bytes)
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<()> {
    let (data, sigma, _) = setup(&a.common)?;
    let opts = VerifyOptions {
        policy: policy(a.common.relaxed),
        weyl_cap: if a.allow_large_weyl { u64::MAX } else { DEFAULT_CAP },
        seed: a.seed,
        corrupt_eps: a.corrupt_eps,
    };
    let report = run_verify(&data, sigma, a.common.level, opts)?;
    print!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure { code: EXIT_VERIFY, message: "verification failed".into() })
    }
}
