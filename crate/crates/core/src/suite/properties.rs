use super::counterexample::{paper_counterexample, LOGEUC_BAND};
use super::instance::Instance;
use super::tracker::{NormId, Tracker, Witness};
use super::{PropertyId, PropertyResult, BK_EXPONENTS, DEFAULT_TOL};
use crate::compound::{compound_matrix, compound_pd};
use crate::densela::{
    multiply, multiply_chain, pd_congruence, pd_log, pd_power, pd_weighted_power_sum, singular_values, sym_eigen,
    sym_exp, GenMatrix, PdMatrix, SymMatrix,
};
use crate::error::Result;
use crate::means::{
    arithmetic_path, cross_term, geometric_mean, hermitian_part, log_euclidean, log_euclidean_multi, power_mean,
    power_mean_multi, power_sum_root, sandwich_mean,
};
use crate::spectra::Spectrum;

/// Evaluates one property at the default tolerance.
pub fn check_property(id: PropertyId, inst: &Instance) -> PropertyResult {
    check_property_with_tol(id, inst, DEFAULT_TOL)
}

/// Evaluates one property; evaluation errors turn into a failed result.
pub fn check_property_with_tol(id: PropertyId, inst: &Instance, tol: f64) -> PropertyResult {
    use PropertyId::*;
    let mut tr = Tracker::new(id.tolerance(tol));
    let outcome = match id {
        P1 => p1(inst, &mut tr),
        P2 => p2(inst, &mut tr),
        P3 => p3(inst, &mut tr),
        P4 => p4(inst, &mut tr),
        P5 => p5(inst, &mut tr),
        P6 => p6(&mut tr),
        P7 => p7(inst, &mut tr),
        P8 => p8(inst, &mut tr),
        P9 => p9(inst, &mut tr),
        P10 => p10(inst, &mut tr),
        P11 => p11(inst, &mut tr),
        P12 => p12(inst, &mut tr),
        P13 => p13(inst, &mut tr),
        P14 => p14(inst, &mut tr),
        P15 => p15(inst, &mut tr),
    };
    if let Err(e) = outcome {
        tr.fail(format!("evaluation error: {e}"));
    }
    tr.finish(id, inst.spec.seed, inst.dim())
}

fn spec(a: &PdMatrix) -> Spectrum {
    Spectrum::of_pd(a)
}

fn positive(grid: &[f64]) -> impl Iterator<Item = f64> + '_ {
    grid.iter().copied().filter(|p| *p > 0.0)
}

/// `λ_j` non-decreasing between adjacent points of a `(p, spectrum)` curve;
/// the witness carries the lower `p` of the pair.
fn eig_monotone(tr: &mut Tracker, curve: &[(f64, Spectrum)], link: usize, t: Option<f64>) {
    for pair in curve.windows(2) {
        let ((p, lo), (_, hi)) = (&pair[0], &pair[1]);
        for (j, (x, y)) in lo.values().iter().zip(hi.values()).enumerate() {
            tr.leq(*x, *y, Witness::new(link, t, Some(*p), NormId::Eig(j + 1)));
        }
    }
}

/// `A^{1/2} B^{1/2}`.
fn sqrt_product(a: &PdMatrix, b: &PdMatrix) -> Result<GenMatrix> {
    let (x, y) = (pd_power(a, 0.5)?, pd_power(b, 0.5)?);
    multiply(&x, &y)
}

/// `0 ≤ λ_min(M)`, scored as `λ_min / (1 + max |λ|)`.
fn psd(tr: &mut Tracker, m: &SymMatrix, w: Witness) -> Result<()> {
    let lambda = sym_eigen(m)?.lambda;
    let smallest = *lambda.last().expect("nonempty");
    let scale = 1.0 + lambda.iter().fold(0.0_f64, |s, v| s.max(v.abs()));
    tr.margin(smallest / scale, 0.0, smallest, w);
    Ok(())
}

/// `[[a, off], [offᵀ, b]]`.
fn block(a: &GenMatrix, off: &GenMatrix, b: &GenMatrix) -> SymMatrix {
    let n = a.dim();
    let mut rows = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = a.get(i, j);
            rows[i][n + j] = off.get(i, j);
            rows[n + j][i] = off.get(i, j);
            rows[n + i][n + j] = b.get(i, j);
        }
    }
    SymMatrix::from_symmetrized(&GenMatrix::from_rows(&rows).expect("square block"))
}

fn p1(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    for &t in &inst.spec.t_values {
        let curve = inst
            .spec
            .p_grid
            .iter()
            .map(|&p| Ok((p, spec(&power_mean(&inst.a, &inst.b, t, p)?))))
            .collect::<Result<Vec<_>>>()?;
        eig_monotone(tr, &curve, 0, Some(t));
    }
    Ok(())
}

fn p2(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let (a, b) = (&inst.a, &inst.b);
    for &t in &inst.spec.t_values {
        let g = spec(&geometric_mean(a, b, t)?);
        let l = spec(&log_euclidean(a, b, t)?);
        tr.ky_fan(&g, &l, 0, Some(t), None);
        for p in positive(&inst.spec.p_grid) {
            tr.ky_fan(&l, &spec(&power_mean(a, b, t, p)?), 1, Some(t), Some(p));
        }
    }
    Ok(())
}

fn p3(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let (a, b) = (&inst.a, &inst.b);
    for &t in &inst.spec.t_values {
        let g = spec(&geometric_mean(a, b, t)?);
        let l = spec(&log_euclidean(a, b, t)?);
        tr.ky_fan(&g, &l, 0, Some(t), None);
        for p in positive(&inst.spec.p_grid) {
            let s = spec(&sandwich_mean(a, b, t, p)?);
            let f = spec(&power_mean(a, b, t, p)?);
            tr.ky_fan_chain(&[&l, &s, &f], 1, Some(t), Some(p));
        }
    }
    Ok(())
}

fn p4(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let (a, b) = (&inst.a, &inst.b);
    for &t in &inst.spec.t_values {
        let x = cross_term(a, b, t)?;
        let chain = [
            spec(&geometric_mean(a, b, t)?),
            spec(&log_euclidean(a, b, t)?),
            spec(&sandwich_mean(a, b, t, 1.0)?),
            Spectrum::singular_of_symmetric(&hermitian_part(&x))?,
            singular_values(&x)?,
            spec(&arithmetic_path(a, b, t)?),
        ];
        let refs: Vec<&Spectrum> = chain.iter().collect();
        tr.ky_fan_chain(&refs, 0, Some(t), Some(1.0));
    }
    Ok(())
}

fn p5(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let (a, b) = (&inst.a, &inst.b);
    for &t in &inst.spec.t_values {
        let g = spec(&geometric_mean(a, b, t)?);
        let l = spec(&log_euclidean(a, b, t)?);
        tr.log_majorize(&g, &l, true, 0, Some(t), None);
        for p in positive(&inst.spec.p_grid) {
            // Both forms are similar to A^{(1-t)p} B^{tp}.
            let s1 = spec(&pd_congruence(b, 0.5 * t * p, a, (1.0 - t) * p)?);
            let s2 = spec(&pd_congruence(a, 0.5 * (1.0 - t) * p, b, t * p)?);
            for (j, (x, y)) in s1.values().iter().zip(s2.values()).enumerate() {
                let rel = (x.ln() - y.ln()).abs();
                tr.margin(-rel, *x, *y, Witness::new(2, Some(t), Some(p), NormId::Eig(j + 1)));
            }
            let s = s1.map(|v| v.powf(1.0 / p));
            tr.log_majorize(&l, &s, true, 1, Some(t), Some(p));
            let f = spec(&power_mean(a, b, t, p)?);
            tr.log_majorize(&s, &f, false, 3, Some(t), Some(p));
        }
    }
    Ok(())
}

fn p6(tr: &mut Tracker) -> Result<()> {
    let c = paper_counterexample()?;
    let w = |link| Witness::new(link, Some(0.5), None, NormId::Eig(2));
    tr.margin(1e-9 - (c.lambda2_geo - 1.0).abs(), c.lambda2_geo, 1.0, w(0));
    let (lo, hi) = LOGEUC_BAND;
    tr.margin(
        (c.lambda2_logeuc - lo).min(hi - c.lambda2_logeuc),
        c.lambda2_logeuc,
        0.5 * (lo + hi),
        w(1),
    );
    // Pointwise domination fails: λ₂(logEuc) < λ₂(A#B).
    tr.margin(c.lambda2_geo - c.lambda2_logeuc, c.lambda2_logeuc, c.lambda2_geo, w(2));
    Ok(())
}

fn p7(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let (a, b) = (&inst.a, &inst.b);
    let t = Some(0.5);
    let gm = geometric_mean(a, b, 0.5)?;
    let g = spec(&gm);
    let s = spec(&pd_congruence(b, 0.25, a, 0.5)?);
    tr.log_majorize(&g, &s, false, 0, t, None);
    tr.weak_majorize(&g, &s, 1, t, None);
    let rhs_det = 0.5 * (a.log_det() + b.log_det());
    tr.margin(
        -(gm.log_det() - rhs_det).abs(),
        gm.log_det(),
        rhs_det,
        Witness::new(2, t, None, NormId::LogDet),
    );
    let prod = sqrt_product(a, b)?;
    tr.leq(
        g.values().iter().sum(),
        prod.trace(),
        Witness::new(3, t, None, NormId::Trace),
    );
    Ok(())
}

fn p8(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let (a, b) = (&inst.a, &inst.b);
    let g = geometric_mean(a, b, 0.5)?;
    for k in 1..=inst.dim() {
        let lhs = compound_matrix(&g, k)?;
        let rhs = geometric_mean(&compound_pd(a, k)?, &compound_pd(b, k)?, 0.5)?;
        let scale = 1.0 + lhs.max_abs().max(rhs.max_abs());
        let (l, r) = lhs
            .as_slice()
            .iter()
            .zip(rhs.as_slice())
            .max_by(|x, y| (x.0 - x.1).abs().total_cmp(&(y.0 - y.1).abs()))
            .map(|(l, r)| (*l, *r))
            .expect("nonempty");
        tr.margin(
            -(l - r).abs() / scale,
            l,
            r,
            Witness::new(0, Some(0.5), None, NormId::Compound(k)),
        );
    }
    Ok(())
}

fn p9(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let fam = inst.family_refs();
    let ones = vec![1.0; fam.len()];

    let curve = inst
        .spec
        .p_grid
        .iter()
        .map(|&p| Ok((p, spec(&power_mean_multi(&fam, &inst.weights, p)?))))
        .collect::<Result<Vec<_>>>()?;
    eig_monotone(tr, &curve, 0, None);

    // Unnormalized sums decrease on (0, 1]; above 1 this is only reported.
    let unnormalized = |p: f64| -> Result<Spectrum> { Ok(spec(&power_sum_root(&fam, &ones, p)?)) };
    let low: Vec<f64> = inst
        .spec
        .p_grid
        .iter()
        .copied()
        .filter(|p| *p > 0.0 && *p <= 1.0)
        .collect();
    let low_curve = low.iter().map(|&p| unnormalized(p)).collect::<Result<Vec<_>>>()?;
    for (i, pair) in low_curve.windows(2).enumerate() {
        tr.ky_fan(&pair[1], &pair[0], 1, None, Some(low[i]));
    }
    let high: Vec<f64> = inst.spec.p_grid.iter().copied().filter(|p| *p >= 1.0).collect();
    if high.len() >= 2 {
        let high_curve = high.iter().map(|&p| unnormalized(p)).collect::<Result<Vec<_>>>()?;
        let mut info = Tracker::new(0.0);
        for (i, pair) in high_curve.windows(2).enumerate() {
            info.ky_fan(&pair[1], &pair[0], 1, None, Some(high[i]));
        }
        let r = info.finish(PropertyId::P9, 0, 0);
        tr.note(format!(
            "unnormalized decrease on p >= 1 (informational): worst margin {:.3e} at p = {}",
            r.worst_margin,
            r.witness.p.unwrap_or(f64::NAN)
        ));
    }

    let sum = pd_weighted_power_sum(&fam, &ones, 1.0)?;
    for r in BK_EXPONENTS {
        let lhs = spec(&pd_weighted_power_sum(&fam, &ones, r)?);
        let rhs = spec(&pd_power(&sum, r)?);
        tr.ky_fan(&lhs, &rhs, 2, None, Some(r));
    }
    Ok(())
}

fn p10(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let fam = inst.family_refs();
    let l = spec(&log_euclidean_multi(&fam, &inst.weights)?);
    for p in positive(&inst.spec.p_grid) {
        tr.ky_fan(&l, &spec(&power_mean_multi(&fam, &inst.weights, p)?), 0, None, Some(p));
    }
    Ok(())
}

fn p11(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let (a, b) = (&inst.a, &inst.b);
    let t = Some(0.5);
    let g = geometric_mean(a, b, 0.5)?;
    psd(tr, &block(a, &g, b), Witness::new(0, t, None, NormId::Psd))?;
    let x = sqrt_product(a, b)?;
    psd(tr, &block(a, &x, b), Witness::new(1, t, None, NormId::Psd))?;
    tr.ky_fan(&spec(&g), &singular_values(&x)?, 2, t, None);
    Ok(())
}

fn p12(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let (a, b) = (&inst.a, &inst.b);
    let t = Some(0.5);
    let ab = singular_values(&multiply(a, b)?)?.map(|s| 4.0 * s);
    let square = spec(&pd_power(&pd_weighted_power_sum(&[a, b], &[1.0, 1.0], 1.0)?, 2.0)?);
    tr.ky_fan(&ab, &square, 0, None, None);

    let root = singular_values(&sqrt_product(a, b)?)?;
    let half = spec(&power_mean(a, b, 0.5, 0.5)?);
    tr.ky_fan(&root, &half, 1, t, Some(0.5));
    for p in inst.spec.p_grid.iter().copied().filter(|p| *p >= 0.5) {
        tr.ky_fan(&half, &spec(&power_mean(a, b, 0.5, p)?), 2, t, Some(p));
    }
    Ok(())
}

fn p13(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let (a, b) = (&inst.a, &inst.b);
    for &t in &inst.spec.t_values {
        let g = spec(&geometric_mean(a, b, t)?);
        let path = spec(&pd_congruence(a, 0.5 * (1.0 - t), b, t)?);
        tr.log_majorize(&g, &path, true, 0, Some(t), None);
        let lhs = spec(&pd_congruence(b, t, a, t)?);
        let rhs = spec(&pd_power(&pd_congruence(b, 1.0, a, 1.0)?, t)?);
        tr.ky_fan(&lhs, &rhs, 2, Some(t), None);
    }
    let g = spec(&geometric_mean(a, b, 0.5)?);
    let bab = pd_congruence(b, 0.5, a, 1.0)?;
    tr.ky_fan(&g, &spec(&pd_power(&bab, 0.5)?), 1, Some(0.5), None);
    tr.ky_fan(&g.map(|v| v * v), &spec(&bab), 3, Some(0.5), None);
    Ok(())
}

fn p14(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let x = inst.x.as_gen();
    for (link, m) in [&inst.a, &inst.b].into_iter().enumerate() {
        let h = pd_power(m, 0.5)?;
        let lhs = SymMatrix::from_symmetrized(&multiply_chain(&[&h, x, &h])?);
        let rhs = hermitian_part(&multiply(m, x)?);
        tr.ky_fan(
            &Spectrum::singular_of_symmetric(&lhs)?,
            &Spectrum::singular_of_symmetric(&rhs)?,
            link,
            None,
            None,
        );
    }
    Ok(())
}

fn p15(inst: &Instance, tr: &mut Tracker) -> Result<()> {
    let (a, b) = (&inst.a, &inst.b);
    for &t in &inst.spec.t_values {
        let g = geometric_mean(a, b, t)?;
        let ap = arithmetic_path(a, b, t)?;
        let diff = SymMatrix::from_symmetrized(&ap.as_gen().sub(&g)?);
        let smallest = *sym_eigen(&diff)?.lambda.last().expect("nonempty");
        let scale = 1.0 + g.eigenvalues()[0].max(ap.eigenvalues()[0]);
        tr.margin(
            smallest / scale,
            0.0,
            smallest,
            Witness::new(0, Some(t), None, NormId::Loewner),
        );
    }
    let hk = SymMatrix::from_symmetrized(&pd_log(a).as_gen().add(&pd_log(b))?);
    let lhs = spec(&sym_exp(&hk)?);
    let rhs = spec(&pd_congruence(b, 0.5, a, 1.0)?);
    tr.ky_fan(&lhs, &rhs, 1, None, None);
    Ok(())
}
