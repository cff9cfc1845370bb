use std::io;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use satotate_core::equidist::{
    discrepancy_report, fit_decay_exponent, joint_report, least_prime_in_interval, least_prime_in_series,
    count_in_interval, ReportConfig,
};
use satotate_core::measure::st_quantile;
use satotate_core::prime_sums::{cheb_prime_sum, smoothed_psi};
use satotate_core::primes::{prime_count, primes_up_to};
use satotate_core::{
    build_angle_series, cm_heuristic, load_cache, save_cache, AnglePoint, AngleSeries, AngleSource, CmVerdict,
    CoefficientFile, CurveSpec, FormMeta, SmoothingWeight, SourceKind,
};

use crate::args::{
    AnglesArgs, ChebSumsArgs, Command, CurveExtra, FitArgs, JointArgs, LeastPrimeArgs, SimulateArgs, SmoothArgs,
    SourceArgs, VerifyArgs, WeightPreset,
};
use crate::error::CliError;
use crate::output::emit;

pub fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Angles(a) => cmd_angles(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Joint(a) => cmd_joint(a),
        Command::LeastPrime(a) => cmd_least_prime(a),
        Command::ChebSums(a) => cmd_cheb_sums(a),
        Command::Smooth(a) => cmd_smooth(a),
        Command::Fit(a) => cmd_fit(a),
        Command::Simulate(a) => cmd_simulate(a),
    }
}

/// `load_cache` with the path in any I/O error message.
fn load(path: &Path) -> Result<AngleSeries, CliError> {
    load_cache(path).map_err(|e| match e {
        satotate_core::Error::Io(io) => CliError::Io(io::Error::new(io.kind(), format!("{}: {io}", path.display()))),
        other => other.into(),
    })
}

fn live_source(src: &SourceArgs, extra: &CurveExtra) -> Result<Option<AngleSource>, CliError> {
    if let Some(coeffs) = src.curve {
        let conductor = extra
            .conductor
            .ok_or_else(|| CliError::Usage("--curve needs --conductor".into()))?;
        return Ok(Some(AngleSource::Curve(CurveSpec::new(coeffs, conductor, extra.label.clone())?)));
    }
    if let Some(path) = &src.coeffs {
        return Ok(Some(AngleSource::Coefficients(CoefficientFile::read(path)?)));
    }
    Ok(None)
}

/// Series covering at least `x_max`, from a cache or built on the spot.
fn series_for(src: &SourceArgs, extra: &CurveExtra, x_max: u64) -> Result<AngleSeries, CliError> {
    match live_source(src, extra)? {
        Some(s) => Ok(build_angle_series(&s, x_max)?),
        None => {
            let path = src.cache.as_ref().expect("clap enforces one source");
            load(path)
        }
    }
}

fn check_xs(xs: &[u64], min: u64) -> Result<u64, CliError> {
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage("--x values must be strictly ascending".into()));
    }
    match xs.first() {
        Some(&x) if x < min => Err(CliError::Usage(format!("--x values must be >= {min}"))),
        Some(_) => Ok(*xs.last().expect("nonempty")),
        None => Err(CliError::Usage("--x needs at least one value".into())),
    }
}

fn cmd_angles(a: AnglesArgs) -> Result<(), CliError> {
    let source = live_source(&a.source, &a.curve)?
        .ok_or_else(|| CliError::Usage("angles needs --curve or --coeffs".into()))?;
    let start = Instant::now();
    let series = build_angle_series(&source, a.xmax)?;
    save_cache(&series, &a.out)?;
    println!(
        "{} angles for good p <= {} written to {} in {:.2}s",
        series.len(),
        a.xmax,
        a.out.display(),
        start.elapsed().as_secs_f64()
    );
    if let Ok(h) = cm_heuristic(&series) {
        if h.verdict == CmVerdict::SuspectCm {
            eprintln!(
                "warning: {:.3} of the angles equal π/2; the form looks like it has complex multiplication",
                h.zero_fraction
            );
        }
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    let x_top = check_xs(&a.x, 3)?;
    let series = series_for(&a.source, &a.curve, x_top)?;
    let cfg = ReportConfig { harmonics: a.harmonics, c_et: a.c_et, c_shape: a.c_shape, ..Default::default() };
    let rows = a
        .x
        .iter()
        .map(|&x| discrepancy_report(&series, &a.interval, x, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    emit("verify", &rows, &a.output)
}

fn cmd_joint(a: JointArgs) -> Result<(), CliError> {
    check_xs(&a.x, 2)?;
    let s1 = load(&a.cache)?;
    let s2 = load(&a.cache2)?;
    let i2 = a.interval2.unwrap_or(a.interval);
    let cfg = ReportConfig { harmonics: a.harmonics, c_et: a.c_et, grid: a.grid, ..Default::default() };
    let rows = a
        .x
        .iter()
        .map(|&x| joint_report(&s1, &s2, &a.interval, &i2, x, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    emit("joint", &rows, &a.output)
}

#[derive(Serialize)]
struct LeastPrimeRow {
    p: u64,
    theta: f64,
    mu: f64,
    grh_shape: f64,
}

fn cmd_least_prime(a: LeastPrimeArgs) -> Result<(), CliError> {
    let hit = match live_source(&a.source, &a.curve)? {
        Some(src) => least_prime_in_interval(&src, &a.interval, a.ceiling, a.c)?,
        None => {
            let series = load(a.source.cache.as_ref().expect("one source"))?;
            least_prime_in_series(&series, &a.interval, a.c)?
        }
    };
    let row = LeastPrimeRow { p: hit.p, theta: hit.theta, mu: a.interval.mass(), grh_shape: hit.grh_shape };
    emit("least-prime", &[row], &a.output)
}

#[derive(Serialize)]
struct ChebRow {
    m: usize,
    x: u64,
    sum_plain: f64,
    sum_weighted: f64,
}

fn cmd_cheb_sums(a: ChebSumsArgs) -> Result<(), CliError> {
    check_xs(&a.x, 2)?;
    let series = load(&a.cache)?;
    let mut rows = Vec::new();
    for &m in &a.m {
        for &x in &a.x {
            let s = cheb_prime_sum(&series, m, x)?;
            rows.push(ChebRow { m, x, sum_plain: s.sum_plain, sum_weighted: s.sum_weighted });
        }
    }
    emit("cheb-sums", &rows, &a.output)
}

#[derive(Serialize)]
struct SmoothRow {
    m: usize,
    x: u64,
    ell: u32,
    eps: f64,
    psi: f64,
    psi_over_x: f64,
}

fn cmd_smooth(a: SmoothArgs) -> Result<(), CliError> {
    check_xs(&a.x, 3)?;
    let series = load(&a.cache)?;
    let mut rows = Vec::new();
    for &m in &a.m {
        for &x in &a.x {
            let w = match a.preset {
                WeightPreset::Default => SmoothingWeight::new(x as f64, a.ell, a.eps)?,
                WeightPreset::PaperProof => SmoothingWeight::proof_preset(x as f64, m as u32, 1)?,
            };
            let psi = smoothed_psi(&series, m, &w)?;
            rows.push(SmoothRow { m, x, ell: w.ell(), eps: w.eps(), psi, psi_over_x: psi / x as f64 });
        }
    }
    emit("smooth", &rows, &a.output)
}

#[derive(Serialize)]
struct FitRow {
    x: u64,
    pi_x: u64,
    count: u64,
    normalized_error: f64,
    slope: f64,
    intercept: f64,
}

fn cmd_fit(a: FitArgs) -> Result<(), CliError> {
    check_xs(&a.x, 2)?;
    let series = load(&a.cache)?;
    let mu = a.interval.mass();
    let mut rows = Vec::new();
    for &x in &a.x {
        let pi_x = prime_count(x);
        let count = count_in_interval(&series, &a.interval, x)?;
        let normalized_error = (count as f64 / pi_x as f64 - mu).abs();
        rows.push(FitRow { x, pi_x, count, normalized_error, slope: f64::NAN, intercept: f64::NAN });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.x as f64).collect();
    let errs: Vec<f64> = rows.iter().map(|r| r.normalized_error).collect();
    let fit = fit_decay_exponent(&xs, &errs)?;
    for r in &mut rows {
        r.slope = fit.slope;
        r.intercept = fit.intercept;
    }
    emit("fit", &rows, &a.output)
}

fn cmd_simulate(a: SimulateArgs) -> Result<(), CliError> {
    if a.xmax < 2 {
        return Err(CliError::Usage("--xmax must be >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let points = primes_up_to(a.xmax)
        .into_iter()
        .map(|p| AnglePoint { p, theta: st_quantile(rng.gen::<f64>()) })
        .collect();
    let meta = FormMeta {
        label: a.label,
        weight_k: 2,
        level_q: 1,
        source: SourceKind::Simulated,
        cm_asserted_false: true,
    };
    let series = AngleSeries::new(meta, a.xmax, points)?;
    save_cache(&series, &a.out)?;
    println!("{} simulated angles written to {}", series.len(), a.out.display());
    Ok(())
}
