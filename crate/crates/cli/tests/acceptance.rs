//! End-to-end acceptance run. Each criterion prints one line straight to
//! stdout, so the verdicts show up without `--nocapture`.

use std::io::Write;
use std::process::{Command, Stdio};
use std::sync::OnceLock;

use pdmeans_core::densela::{pd_log, random_pd_with, random_symmetric, seeded_rng, sym_eigen, sym_exp};
use pdmeans_core::means::{
    arithmetic_path, cross_term, geometric_mean, hermitian_part, log_euclidean, log_euclidean_multi, power_mean,
    power_mean_multi, sandwich_mean, WeightVector,
};
use pdmeans_core::suite::{
    paper_counterexample, run_campaign, CampaignConfig, CampaignReport, PropertyId, Status, LOGEUC_BAND,
};
use pdmeans_core::{GenMatrix, PdMatrix};
use rand::Rng;

const CORPUS_SEED: u64 = 20_000;
const CORPUS_SIZE: usize = 1000;

fn corpus() -> &'static CampaignReport {
    static REPORT: OnceLock<CampaignReport> = OnceLock::new();
    REPORT.get_or_init(|| {
        let cfg = CampaignConfig {
            master_seed: CORPUS_SEED,
            count: CORPUS_SIZE,
            dims: (2, 6),
            cond_max: 3.0,
            m_values: vec![2, 3, 4],
            ..Default::default()
        };
        run_campaign(&cfg).expect("corpus campaign")
    })
}

fn report(n: u32, pass: bool, detail: String) {
    let line = format!("criterion {n:>2}: {} {detail}\n", if pass { "PASS" } else { "FAIL" });
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    assert!(pass, "criterion {n} failed: {detail}");
}

/// Pass/fail summary of one property over the corpus.
fn corpus_verdict(ids: &[PropertyId]) -> (bool, String) {
    let r = corpus();
    let mut parts = Vec::new();
    let mut ok = true;
    for &id in ids {
        let rows: Vec<_> = r.results.iter().filter(|x| x.property_id == id).collect();
        let fails = rows.iter().filter(|x| x.status != Status::Pass).count();
        let checks: usize = rows.iter().map(|x| x.checks).sum();
        let worst = rows.iter().map(|x| x.worst_margin).fold(f64::INFINITY, f64::min);
        ok &= rows.len() == CORPUS_SIZE && fails == 0 && checks > 0;
        parts.push(format!(
            "{id}: {}/{} pass, {checks} checks, worst margin {worst:.2e}",
            rows.len() - fails,
            rows.len()
        ));
    }
    (ok, parts.join("; "))
}

#[test]
fn criterion_01_counterexample() {
    let c = paper_counterexample().unwrap();
    let (lo, hi) = LOGEUC_BAND;
    let pass =
        (c.lambda2_geo - 1.0).abs() <= 1e-9 && (lo..=hi).contains(&c.lambda2_logeuc) && (c.det_geo - 3.0).abs() <= 1e-8;
    report(
        1,
        pass,
        format!(
            "lambda_2(A#B) = {:.12}, lambda_2(log-Euclidean) = {:.6}, det(A#B) = {:.12}",
            c.lambda2_geo, c.lambda2_logeuc, c.det_geo
        ),
    );
}

#[test]
fn criterion_02_grid_monotonicity() {
    let (pass, detail) = corpus_verdict(&[PropertyId::P1]);
    report(2, pass, detail);
}

#[test]
fn criterion_03_ky_fan_chain() {
    let (pass, detail) = corpus_verdict(&[PropertyId::P4]);
    report(3, pass, detail);
}

#[test]
fn criterion_04_strong_chain() {
    let (pass, detail) = corpus_verdict(&[PropertyId::P5]);
    report(4, pass, detail);
}

#[test]
fn criterion_05_endpoint_suite() {
    let (pass, detail) = corpus_verdict(&[PropertyId::P7]);
    report(5, pass, detail);
}

#[test]
fn criterion_06_compound_identity() {
    let cfg = CampaignConfig {
        master_seed: CORPUS_SEED + 50_000,
        count: 300,
        dims: (3, 5),
        properties: vec![PropertyId::P8],
        tolerance: 1e-7,
        ..Default::default()
    };
    let r = run_campaign(&cfg).unwrap();
    let fails = r.failure_count();
    let worst = r.results.iter().map(|x| x.worst_margin).fold(f64::INFINITY, f64::min);
    let checks: usize = r.results.iter().map(|x| x.checks).sum();
    report(
        6,
        fails == 0 && r.results.len() == 300 && checks > 0,
        format!(
            "{} instances, dims 3-5, {checks} compounds, {fails} failures, worst margin {worst:.2e}",
            r.results.len()
        ),
    );
}

#[test]
fn criterion_07_multi_matrix_and_block_suite() {
    use PropertyId::*;
    let (pass, detail) = corpus_verdict(&[P9, P10, P11, P12, P13, P14, P15]);
    report(7, pass, detail);
}

fn diag_err(m: &GenMatrix, expected: &[f64]) -> f64 {
    m.max_diff(&GenMatrix::from_diag(expected))
}

#[test]
fn criterion_08_scalar_oracle() {
    const T: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
    const P: [f64; 11] = [-4.0, -2.0, -1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0, 2.0, 4.0];
    let mut rng = seeded_rng(CORPUS_SEED + 1);
    let mut worst: f64 = 0.0;
    let mut cases = 0usize;
    for _ in 0..100 {
        let n = rng.random_range(2..=6);
        let da: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..5.0)).collect();
        let db: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..5.0)).collect();
        let (a, b) = (PdMatrix::from_diag(&da).unwrap(), PdMatrix::from_diag(&db).unwrap());
        let zip = |f: &dyn Fn(f64, f64) -> f64| -> Vec<f64> { da.iter().zip(&db).map(|(x, y)| f(*x, *y)).collect() };
        let mut record = |e: f64| {
            worst = worst.max(e);
            cases += 1;
        };
        for t in T {
            let geo = zip(&|x, y| x.powf(1.0 - t) * y.powf(t));
            let x = cross_term(&a, &b, t).unwrap();
            record(diag_err(&geometric_mean(&a, &b, t).unwrap(), &geo));
            record(diag_err(&log_euclidean(&a, &b, t).unwrap(), &geo));
            record(diag_err(&x, &geo));
            record(diag_err(&hermitian_part(&x), &geo));
            record(diag_err(
                &arithmetic_path(&a, &b, t).unwrap(),
                &zip(&|x, y| (1.0 - t) * x + t * y),
            ));
            for p in P {
                let f = if p == 0.0 {
                    geo.clone()
                } else {
                    zip(&|x, y| ((1.0 - t) * x.powf(p) + t * y.powf(p)).powf(1.0 / p))
                };
                record(diag_err(&power_mean(&a, &b, t, p).unwrap(), &f));
                if p > 0.0 {
                    record(diag_err(&sandwich_mean(&a, &b, t, p).unwrap(), &geo));
                }
            }
        }

        let m = rng.random_range(2..=4);
        let diags: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.random_range(0.2..5.0)).collect())
            .collect();
        let mats: Vec<PdMatrix> = diags.iter().map(|d| PdMatrix::from_diag(d).unwrap()).collect();
        let refs: Vec<&PdMatrix> = mats.iter().collect();
        let raw: Vec<f64> = (0..m).map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let w = WeightVector::new(raw.iter().map(|x| x / total).collect()).unwrap();
        let ws = w.as_slice();
        let geo: Vec<f64> = (0..n)
            .map(|j| (0..m).map(|i| diags[i][j].powf(ws[i])).product())
            .collect();
        record(diag_err(&log_euclidean_multi(&refs, &w).unwrap(), &geo));
        for p in P {
            let expected: Vec<f64> = if p == 0.0 {
                geo.clone()
            } else {
                (0..n)
                    .map(|j| (0..m).map(|i| ws[i] * diags[i][j].powf(p)).sum::<f64>().powf(1.0 / p))
                    .collect()
            };
            record(diag_err(&power_mean_multi(&refs, &w, p).unwrap(), &expected));
        }
    }
    report(
        8,
        worst <= 1e-12,
        format!("{cases} mean evaluations, worst absolute entry error {worst:.2e}"),
    );
}

#[test]
fn criterion_09_kernel_health() {
    let mut rng = seeded_rng(CORPUS_SEED + 2);
    let (mut recon, mut orth, mut round): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..500 {
        let n = 2 + i % 7;
        let s = random_symmetric(n, &mut rng);
        let eig = sym_eigen(&s).unwrap();
        recon = recon.max(eig.reconstruct().max_diff(&s) / (1.0 + s.max_abs()));
        orth = orth.max(eig.orthogonality_residual());
    }
    let rel = |x: &GenMatrix, y: &GenMatrix| x.max_diff(y) / (1.0 + x.max_abs().max(y.max_abs()));
    for i in 0..200 {
        let a = random_pd_with(2 + i % 5, 3.0 * rng.random::<f64>(), &mut rng).unwrap();
        round = round.max(rel(sym_exp(&pd_log(&a)).unwrap().as_gen(), a.as_gen()));
        let h = random_symmetric(2 + i % 5, &mut rng);
        round = round.max(rel(&pd_log(&sym_exp(&h).unwrap()), &h));
    }
    report(
        9,
        recon <= 1e-9 && orth <= 1e-10 && round <= 1e-8,
        format!("reconstruction {recon:.2e}, orthogonality {orth:.2e}, exp/log round trip {round:.2e}"),
    );
}

#[test]
fn criterion_10_determinism() {
    let dir = std::env::temp_dir().join(format!("pdmeans-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |name: &str| {
        let path = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_pdmeans"))
            .env_remove("MEANS_SEED")
            .args(["check", "--seed", "12345", "--dims", "2:6", "--count", "100", "--out"])
            .arg(&path)
            .stderr(Stdio::null())
            .status()
            .unwrap();
        (status.code(), std::fs::read(&path).unwrap_or_default())
    };
    let (c1, first) = run("first.jsonl");
    let (c2, second) = run("second.jsonl");
    std::fs::remove_dir_all(&dir).ok();
    let pass = c1 == Some(0) && c2 == Some(0) && !first.is_empty() && first == second;
    report(
        10,
        pass,
        format!(
            "two runs, exit codes {c1:?}/{c2:?}, {} and {} bytes, identical: {}",
            first.len(),
            second.len(),
            first == second
        ),
    );
}
