use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use pdmeans_core::densela::{format_matrix, parse_matrix, random_pd, singular_values};
use pdmeans_core::means::{
    arithmetic_path, cross_term, geometric_mean, hermitian_part, log_euclidean, power_mean, sandwich_mean,
};
use pdmeans_core::suite::{paper_counterexample, run_campaign, CampaignConfig, LOGEUC_BAND};
use pdmeans_core::{Error, PdMatrix, Spectrum};

use crate::args::{CheckArgs, Format, GenArgs, MeansArgs, ScanArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PROPERTY_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Usage or input error; reported on stderr with exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError(format!("csv error: {e}"))
    }
}

type CmdResult = Result<ExitCode, CliError>;

/// `MEANS_SEED`, when set, wins over `--seed`.
pub fn effective_seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var("MEANS_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| CliError(format!("MEANS_SEED=`{v}` is not an unsigned integer: {e}"))),
        Err(std::env::VarError::NotPresent) => Ok(flag),
        Err(e) => Err(CliError(format!("MEANS_SEED: {e}"))),
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| CliError(format!("cannot write {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn read_pd(path: &Path) -> Result<PdMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
    let m = parse_matrix(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    PdMatrix::from_gen(m).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

pub fn check(args: &CheckArgs) -> CmdResult {
    let config = CampaignConfig {
        master_seed: effective_seed(args.seed)?,
        count: args.count,
        dims: (args.dims.0, args.dims.1),
        cond_max: args.cond_max,
        t_values: args.t.clone(),
        p_grid: args.p.clone(),
        m_values: vec![2, 3, 4],
        properties: args.property_ids().map_err(CliError)?,
        tolerance: args.tol,
    };
    config.validate()?;
    let mut out = open_output(args.out.as_deref())?;
    let report = run_campaign(&config)?;
    match args.format {
        Format::Jsonl => report.write_jsonl(&mut out)?,
        Format::Csv => report.write_csv_summary(&mut out)?,
    }
    out.flush()?;

    let failures = report.failure_count();
    let marginal: usize = report.counts.iter().map(|c| c.marginal).sum();
    eprintln!(
        "{} instances, {} properties: {} failures, {} marginal ({:.2?})",
        config.count,
        config.properties.len(),
        failures,
        marginal,
        report.duration
    );
    for f in report.failures().take(20) {
        eprintln!(
            "  FAIL {} seed={} dim={} margin={:e} at {} t={:?} p={:?}{}",
            f.property_id,
            f.seed,
            f.dim,
            f.worst_margin,
            f.witness.norm_id,
            f.witness.t,
            f.witness.p,
            f.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default()
        );
    }
    Ok(ExitCode::from(if failures == 0 {
        EXIT_OK
    } else {
        EXIT_PROPERTY_FAILURE
    }))
}

pub fn paper_example() -> CmdResult {
    let c = paper_counterexample()?;
    let (lo, hi) = LOGEUC_BAND;
    let mut out = io::stdout().lock();
    writeln!(out, "A = diag(2, 1), B = [[3, 3], [3, 9/2]], t = 1/2")?;
    writeln!(out, "lambda_2(A#B)           = {:.9}", c.lambda2_geo)?;
    writeln!(out, "lambda_2(log-Euclidean) = {:.9}", c.lambda2_logeuc)?;
    writeln!(out, "lambda_1(A#B)           = {:.9}", c.lambda1_geo)?;
    writeln!(out, "det(A#B)                = {:.9}", c.det_geo)?;
    writeln!(
        out,
        "lambda_2(A#B) > lambda_2(log-Euclidean): {}",
        c.lambda2_geo > c.lambda2_logeuc
    )?;
    let pass = c.holds() && (c.det_geo - 3.0).abs() <= 1e-8;
    writeln!(
        out,
        "{} (|lambda_2(A#B) - 1| <= 1e-9, lambda_2(log-Euclidean) in [{lo}, {hi}], |det - 3| <= 1e-8)",
        if pass { "PASS" } else { "FAIL" }
    )?;
    Ok(ExitCode::from(if pass { EXIT_OK } else { EXIT_PROPERTY_FAILURE }))
}

pub fn scan_p(args: &ScanArgs) -> CmdResult {
    let (a, b) = (read_pd(&args.a)?, read_pd(&args.b)?);
    if a.dim() != b.dim() {
        return Err(CliError(format!("dimension mismatch: {} vs {}", a.dim(), b.dim())));
    }
    let mut w = csv::Writer::from_writer(open_output(args.out.as_deref())?);
    w.write_record(["p", "j", "lambda"])?;
    for &p in &args.p {
        let f = power_mean(&a, &b, args.t, p)?;
        for (j, l) in f.eigenvalues().iter().enumerate() {
            w.write_record([format!("{p}"), format!("{}", j + 1), format!("{l:.17e}")])?;
        }
    }
    w.flush()?;
    Ok(ExitCode::from(EXIT_OK))
}

fn describe(out: &mut String, name: &str, matrix: &pdmeans_core::GenMatrix, s: &Spectrum) -> Result<(), CliError> {
    let fmt_list = |v: Vec<f64>| v.iter().map(|x| format!("{x:.12e}")).collect::<Vec<_>>().join(" ");
    let ky: Vec<f64> = (1..=s.len()).map(|k| s.ky_fan(k)).collect::<Result<_, _>>()?;
    let sch: Vec<f64> = [1.0, 2.0, f64::INFINITY]
        .iter()
        .map(|&p| s.schatten(p))
        .collect::<Result<_, _>>()?;
    writeln!(out, "[{name}]").ok();
    out.push_str(&format_matrix(matrix));
    writeln!(out, "ky_fan k=1..{}: {}", s.len(), fmt_list(ky)).ok();
    writeln!(out, "schatten p=1,2,inf: {}", fmt_list(sch)).ok();
    writeln!(out).ok();
    Ok(())
}

/// Means in the order of the norm chain from the geometric to the arithmetic
/// mean, then the power mean.
pub fn means(args: &MeansArgs) -> CmdResult {
    let (a, b) = (read_pd(&args.a)?, read_pd(&args.b)?);
    let (t, p) = (args.t, args.p);
    let mut out = String::new();
    writeln!(out, "t = {t}, p = {p}\n").ok();
    let g = geometric_mean(&a, &b, t)?;
    describe(&mut out, "geometric", &g, &Spectrum::of_pd(&g))?;
    let l = log_euclidean(&a, &b, t)?;
    describe(&mut out, "log-euclidean", &l, &Spectrum::of_pd(&l))?;
    if p > 0.0 {
        let s = sandwich_mean(&a, &b, t, p)?;
        describe(&mut out, "sandwich", &s, &Spectrum::of_pd(&s))?;
    } else {
        writeln!(out, "[sandwich]\nundefined for p <= 0\n").ok();
    }
    let x = cross_term(&a, &b, t)?;
    let h = hermitian_part(&x);
    describe(&mut out, "hermitian-part", &h, &Spectrum::singular_of_symmetric(&h)?)?;
    describe(&mut out, "cross-term", &x, &singular_values(&x)?)?;
    let ar = arithmetic_path(&a, &b, t)?;
    describe(&mut out, "arithmetic", &ar, &Spectrum::of_pd(&ar))?;
    let f = power_mean(&a, &b, t, p)?;
    describe(&mut out, "power", &f, &Spectrum::of_pd(&f))?;
    io::stdout().lock().write_all(out.as_bytes())?;
    Ok(ExitCode::from(EXIT_OK))
}

pub fn gen(args: &GenArgs) -> CmdResult {
    let m = random_pd(args.dim, args.cond, effective_seed(args.seed)?)?;
    let mut out = open_output(args.out.as_deref())?;
    out.write_all(format_matrix(&m).as_bytes())?;
    out.flush()?;
    Ok(ExitCode::from(EXIT_OK))
}
