use serde::Serialize;

use super::grid::{GridFunction, GridSpec};
use super::lagrangian::{conjugate, theta, Lagrangian, LagrangianKind};
use super::point::BusemannPoint;
use super::BusemannError;

/// Search radius of the discrete Hopf-Lax supremum: four times the
/// optimizer magnitude `θ_λ^{q−1} s` for p-norm Lagrangians, `4s` otherwise.
pub fn search_radius(l: &Lagrangian, lambda: f64, s: f64) -> f64 {
    match l.kind() {
        LagrangianKind::PNorm { p, .. } if lambda > 0.0 => 4.0 * theta(*p, lambda).powf(conjugate(*p) - 1.0) * s,
        _ => 4.0 * s,
    }
}

/// Offsets of the search box with their cost `−t L(d/t)`.
fn kernel_offsets(l: &Lagrangian, t: f64, h: f64, dim: usize, steps: usize) -> Vec<(Vec<i64>, f64)> {
    let m = steps as i64;
    let mut out = Vec::new();
    let mut d = vec![-m; dim];
    loop {
        let v: Vec<f64> = d.iter().map(|c| *c as f64 * h / t).collect();
        out.push((d.clone(), -t * l.eval(&v)));
        let mut k = 0;
        while k < dim && d[k] == m {
            d[k] = -m;
            k += 1;
        }
        if k == dim {
            return out;
        }
        d[k] += 1;
    }
}

fn steps_for(radius: f64, h: f64) -> usize {
    (radius / h - 1e-9).ceil().max(0.0) as usize
}

/// `(Tᵗu)(x) = max_y −t L((y − x)/t) + u(y)` over grid nodes `y` within
/// `radius` (per axis) of `x`. Cells whose search box leaves the grid, or
/// meets an invalid cell, are marked invalid.
pub fn hopf_lax_apply(l: &Lagrangian, t: f64, u: &GridFunction, radius: f64) -> Result<GridFunction, BusemannError> {
    if !(t > 0.0) {
        return Err(BusemannError::InvalidParameter(format!("t must be > 0, got {t}")));
    }
    let spec = &u.spec;
    if spec.dim() != l.dim() {
        return Err(BusemannError::DimensionMismatch { expected: l.dim(), found: spec.dim() });
    }
    let steps = steps_for(radius, spec.h);
    let offsets = kernel_offsets(l, t, spec.h, spec.dim(), steps);
    let mut values = vec![f64::NEG_INFINITY; spec.len()];
    let mut valid = vec![false; spec.len()];
    for i in 0..spec.len() {
        if !u.valid[i] || !spec.has_margin(i, steps) {
            continue;
        }
        let mut best = f64::NEG_INFINITY;
        let mut ok = true;
        for (d, cost) in &offsets {
            let j = spec.shifted(i, d).expect("margin checked");
            if !u.valid[j] {
                ok = false;
                break;
            }
            best = best.max(cost + u.values[j]);
        }
        if ok {
            values[i] = best;
            valid[i] = true;
        }
    }
    if !valid.iter().any(|v| *v) {
        return Err(BusemannError::MarginTooSmall { radius });
    }
    Ok(GridFunction { spec: spec.clone(), values, valid })
}

/// `dim · h · (Lip(u) + slope)`, where `slope` is the largest axis
/// difference quotient of `d ↦ t L(d/t)` on the search box.
pub fn grid_error_bound(l: &Lagrangian, t: f64, spec: &GridSpec, radius: f64, lip_u: f64) -> f64 {
    let steps = steps_for(radius, spec.h);
    let offsets = kernel_offsets(l, t, spec.h, spec.dim(), steps);
    let width = 2 * steps + 1;
    let mut slope: f64 = 0.0;
    for (idx, (d, c)) in offsets.iter().enumerate() {
        // odometer order: axis k advances with stride width^k
        for k in 0..spec.dim() {
            if d[k] < steps as i64 {
                let next = &offsets[idx + width.pow(k as u32)];
                slope = slope.max((next.1 - c).abs() / spec.h);
            }
        }
    }
    spec.dim() as f64 * spec.h * (lip_u + slope)
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenCheckReport {
    pub pass: bool,
    /// `max |Tˢu − u − λs|` over valid cells.
    pub residual: f64,
    pub bound: f64,
    pub tol: f64,
    pub valid_cells: usize,
    pub search_radius: f64,
    pub lip_u: f64,
}

/// Checks `Tˢu = u + λs` on a grid, up to `tol` plus the grid-error bound.
pub fn eigen_check(
    u: &dyn Fn(&[f64]) -> f64,
    l: &Lagrangian,
    lambda: f64,
    s: f64,
    grid: &GridSpec,
    tol: f64,
) -> Result<EigenCheckReport, BusemannError> {
    let ug = GridFunction::from_fn(grid.clone(), u);
    let radius = search_radius(l, lambda, s);
    let tu = hopf_lax_apply(l, s, &ug, radius)?;
    let residual = tu.max_deviation(&ug, lambda * s);
    let lip_u = ug.axis_lipschitz();
    let bound = grid_error_bound(l, s, grid, radius, lip_u);
    Ok(EigenCheckReport {
        pass: residual <= tol + bound,
        residual,
        bound,
        tol,
        valid_cells: tu.valid_count(),
        search_radius: radius,
        lip_u,
    })
}

/// `x ↦ max_k ν_k + θ_λ w_k(x)`.
#[derive(Debug, Clone)]
pub struct EigenFunction {
    pub atoms: Vec<(BusemannPoint, f64)>,
    pub theta: f64,
    pub lambda: f64,
}

impl EigenFunction {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.atoms.iter().map(|(w, nu)| nu + self.theta * w.eval(x)).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// The eigenvector with eigenvalue `λ` of the Lax-Oleinik semigroup for
/// `L = ‖·‖^p/p` represented by a finite measure on Busemann points.
pub fn eigenvector_from_measure(
    atoms: Vec<(BusemannPoint, f64)>,
    lambda: f64,
    p: f64,
) -> Result<EigenFunction, BusemannError> {
    if atoms.is_empty() {
        return Err(BusemannError::EmptySupport);
    }
    if !(lambda > 0.0) || !(p > 1.0) {
        return Err(BusemannError::InvalidParameter(format!("need lambda > 0 and p > 1, got {lambda}, {p}")));
    }
    if let Some((_, nu)) = atoms.iter().find(|(_, nu)| nu.is_nan() || *nu == f64::INFINITY) {
        return Err(BusemannError::InvalidParameter(format!("density {nu} is not bounded above")));
    }
    Ok(EigenFunction { atoms, theta: theta(p, lambda), lambda })
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterizationReport {
    pub holds: bool,
    /// `max −ζ(y − x) + u(y) − u(x)` over grid pairs.
    pub worst: f64,
    pub witness: Option<(Vec<f64>, Vec<f64>)>,
    pub pairs: usize,
}

/// `−ζ(y − x) + u(y) ≤ u(x)` for all grid pairs.
pub fn eigen_characterization_check(
    u: &dyn Fn(&[f64]) -> f64,
    zeta: &dyn Fn(&[f64]) -> f64,
    grid: &GridSpec,
    tol: f64,
) -> CharacterizationReport {
    let pts: Vec<Vec<f64>> = (0..grid.len()).map(|i| grid.point(i)).collect();
    let vals: Vec<f64> = pts.iter().map(|x| u(x)).collect();
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for (x, ux) in pts.iter().zip(&vals) {
        for (y, uy) in pts.iter().zip(&vals) {
            let d: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
            let e = -zeta(&d) + uy - ux;
            if e > worst {
                worst = e;
                witness = Some((x.clone(), y.clone()));
            }
        }
    }
    let holds = worst <= tol;
    CharacterizationReport { holds, worst, witness: if holds { None } else { witness }, pairs: pts.len() * pts.len() }
}

#[derive(Debug, Clone, Serialize)]
pub struct HarmonicityReport {
    pub pass: bool,
    /// `max |sup_y (−ζ(y − x) + w(y)) − w(x)|` over the sampled `x`.
    pub worst: f64,
    pub bound: f64,
    pub samples: usize,
}

/// Harmonicity of `w` for the kernel `−ζ(y − x)`: the supremum over all grid
/// nodes `y`, at every `stride`-th node `x` along each axis.
pub fn zeta_harmonicity_check(
    w: &dyn Fn(&[f64]) -> f64,
    zeta: &dyn Fn(&[f64]) -> f64,
    grid: &GridSpec,
    stride: usize,
) -> HarmonicityReport {
    let stride = stride.max(1);
    let pts: Vec<Vec<f64>> = (0..grid.len()).map(|i| grid.point(i)).collect();
    let wf = GridFunction::from_fn(grid.clone(), w);
    let zf = GridFunction::from_fn(grid.clone(), |x: &[f64]| zeta(x));
    let bound = grid.h * (wf.axis_lipschitz() + zf.axis_lipschitz());
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for i in 0..grid.len() {
        if grid.multi(i).iter().any(|c| c % stride != 0) {
            continue;
        }
        samples += 1;
        let x = &pts[i];
        let mut d = vec![0.0; x.len()];
        let mut sup = f64::NEG_INFINITY;
        for (y, wy) in pts.iter().zip(&wf.values) {
            for ((dk, a), b) in d.iter_mut().zip(y).zip(x) {
                *dk = a - b;
            }
            sup = sup.max(wy - zeta(&d));
        }
        worst = worst.max((sup - wf.values[i]).abs());
    }
    HarmonicityReport { pass: worst <= bound, worst, bound, samples }
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsRow {
    pub displacement: f64,
    /// `sup_{k≥1} −ks L(d/ks) − ksλ`.
    pub plus_value: f64,
    pub best_k: usize,
    /// `−θ_λ d`.
    pub predicted: f64,
    pub deviation: f64,
    /// `|sup_{t>0} ψ(t) − (−θ_λ d)|` from the continuous optimizer.
    pub continuous_gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsReport {
    pub p: f64,
    pub s: f64,
    pub lambda: f64,
    pub theta: f64,
    pub rows: Vec<AsymptoticsRow>,
    /// Deviation at the largest displacement ≤ at the smallest positive one.
    pub trend_ok: bool,
}

/// Compares `(A_s)⁺_{xy}` for `L = |v|^p/p` with its asymptote `−θ_λ‖y − x‖`.
pub fn lax_star_asymptotics_check(
    p: f64,
    s: f64,
    lambda: f64,
    displacements: &[f64],
) -> Result<AsymptoticsReport, BusemannError> {
    if !(p > 1.0) || !(s > 0.0) || !(lambda > 0.0) {
        return Err(BusemannError::InvalidParameter(format!("need p > 1, s > 0, lambda > 0; got {p}, {s}, {lambda}")));
    }
    if let Some(d) = displacements.iter().find(|d| !(**d >= 0.0 && d.is_finite())) {
        return Err(BusemannError::InvalidParameter(format!("displacement {d} must be finite and >= 0")));
    }
    let q = conjugate(p);
    let th = theta(p, lambda);
    let psi = |d: f64, t: f64| -t * (d / t).powf(p) / p - t * lambda;
    let rows: Vec<AsymptoticsRow> = displacements
        .iter()
        .map(|&d| {
            let t_bar = d * (q * lambda).powf(-1.0 / p);
            let k_max = (t_bar / s).ceil() as usize + 2;
            let (best_k, plus_value) = (1..=k_max)
                .map(|k| (k, psi(d, k as f64 * s)))
                .fold((0, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b });
            let predicted = -th * d;
            let continuous = if d > 0.0 { psi(d, t_bar) } else { 0.0 };
            AsymptoticsRow {
                displacement: d,
                plus_value,
                best_k,
                predicted,
                deviation: (plus_value - predicted).abs(),
                continuous_gap: (continuous - predicted).abs(),
            }
        })
        .collect();
    let positive: Vec<&AsymptoticsRow> = rows.iter().filter(|r| r.displacement > 0.0).collect();
    let trend_ok = match (
        positive.iter().min_by(|a, b| a.displacement.total_cmp(&b.displacement)),
        positive.iter().max_by(|a, b| a.displacement.total_cmp(&b.displacement)),
    ) {
        (Some(lo), Some(hi)) => hi.deviation <= lo.deviation,
        _ => true,
    };
    Ok(AsymptoticsReport { p, s, lambda, theta: th, rows, trend_ok })
}
