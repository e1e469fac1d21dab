//! Acceptance run: one PASS/FAIL line per criterion, tolerances fixed here.
//! Runs without the libtest harness so the lines always print.

mod common;

use std::time::{Duration, Instant};

use common::*;
use maxplus_martin::boundary::{
    almost_geodesic_check, column_limit, construct_eigenvector, fixture_suite, h_flat_self, BoundaryError, Coord,
    Example1Rule, KernelRule, Potential, TripodRule, Z2Rule, ZRule,
};
use maxplus_martin::busemann::{
    conjugate, eigen_check, enumerate_faces, lax_star_asymptotics_check, search_radius, theta,
    zeta_harmonicity_check, BusemannPoint, GridSpec, Lagrangian, Norm, PolyhedralNorm,
};
use maxplus_martin::martin::{
    decompose_harmonic, is_extremal, martin_data_with_tol, minimal_martin_finite, mu, reconstruct, tensor_product,
    tensor_sum, MartinData, PiSpec,
};
use maxplus_martin::spectral::max_circuit_mean;
use maxplus_martin::tropical::{kleene_star, TropicalVector};
use rand::Rng;

/// Fixture suite wall-clock budget.
const FIXTURE_BUDGET: Duration = Duration::from_secs(30);
/// Slack for the H♭ checks on almost-geodesics and the tripod probe.
const H_FLAT_TOL: f64 = 1e-9;
/// Floating slack for Busemann closed forms and Lipschitz checks.
const BUSEMANN_TOL: f64 = 1e-12;
/// Required residual ratio when the Lax-Oleinik grid is halved.
const REFINEMENT_RATIO: f64 = 0.6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let report = fixture_suite();
    let elapsed = start.elapsed();
    let checks = report.assertions().count();
    let failures = report.failures();
    let pass = report.pass() && elapsed < FIXTURE_BUDGET;
    let mut detail = format!("{} fixtures, {checks} checks, {:.2}s (budget {}s)", report.fixtures.len(), elapsed.as_secs_f64(), FIXTURE_BUDGET.as_secs());
    if !failures.is_empty() {
        detail.push_str(&format!("; failures: {}", failures.join("; ")));
    }
    outcome(pass, detail)
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let (mut star_bad, mut mean_bad) = (0, 0);
    let mut witness = String::new();
    for trial in 0..500 {
        let n = r.random_range(1..=5);
        let d = random_dense(&mut r, n, 0.5, -3, 0);
        let a = to_matrix(&d);
        let star = kleene_star(&a).to_dense();
        if star != path_sum_star(&d) {
            star_bad += 1;
            witness = format!("trial {trial}: star {d:?}");
        }
        let got = max_circuit_mean(&a).0;
        let want = trace_power_mean(&d).map(|(w, k)| w / k as f64).unwrap_or(NEG);
        if got != want {
            mean_bad += 1;
            witness = format!("trial {trial}: mean {got} vs {want} for {d:?}");
        }
    }
    outcome(star_bad == 0 && mean_bad == 0, format!("500 matrices: {star_bad} closure and {mean_bad} circuit-mean mismatches {witness}"))
}

fn martin(d: &[Vec<f64>]) -> MartinData {
    martin_data_with_tol(&to_matrix(d), PiSpec::Basepoint("0".into()), 0.0).expect("basepoint reaches every node")
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let (mut mu_runs, mut dec_runs, mut failures) = (0, 0, Vec::new());
    for trial in 0..200 {
        let n = r.random_range(1..=8);
        let loops = r.random_range(1..=3);
        let (d, _) = recurrent_kernel(&mut r, n, 0.35, loops);
        let md = martin(&d);
        for _ in 0..3 {
            let mut v: Vec<f64> = (0..n).map(|_| if r.random_bool(0.7) { r.random_range(-5..=5) as f64 } else { NEG }).collect();
            v[r.random_range(0..n)] = r.random_range(-5..=5) as f64;
            let u = md.star.mat_vec(&TropicalVector::from_values(v)).expect("sizes match");
            mu_runs += 1;
            match mu(&md, &u).and_then(|nu| reconstruct(&md, &nu)) {
                Ok(back) if back == u => {}
                other => failures.push(format!("trial {trial} mu: {other:?}")),
            }
        }
        let minimal = minimal_martin_finite(&md);
        for _ in 0..3 {
            let mut u = TropicalVector::zero(n);
            for (k, &j) in minimal.iter().enumerate() {
                if k == 0 || r.random_bool(0.6) {
                    u = u.oplus(&md.column(j).scale(maxplus_martin::Trop(r.random_range(-4..=0) as f64)));
                }
            }
            if minimal.is_empty() {
                failures.push(format!("trial {trial}: no recurrent column"));
                break;
            }
            dec_runs += 1;
            match decompose_harmonic(&md, &u).and_then(|nu| reconstruct(&md, &nu)) {
                Ok(back) if back == u => {}
                other => failures.push(format!("trial {trial} decompose: {other:?}")),
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("200 kernels: {mu_runs} mu and {dec_runs} decompose round-trips, {} failures {}", failures.len(), failures.first().cloned().unwrap_or_default()),
    )
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let (mut kernels, mut columns, mut strict, mut failures) = (0, 0, 0, Vec::new());
    while kernels < 100 {
        let n = r.random_range(3..=8);
        let loops = r.random_range(2..=3);
        let (d, _) = recurrent_kernel(&mut r, n, 0.35, loops);
        let md = martin(&d);
        if md.spectral.classes.len() < 2 {
            continue;
        }
        kernels += 1;
        let minimal = minimal_martin_finite(&md);
        for &j in &minimal {
            columns += 1;
            match is_extremal(&md, &md.column(j)) {
                Ok(e) if e.extremal => {}
                other => failures.push(format!("column {j} of {d:?}: {other:?}")),
            }
        }
        for (a, &j1) in minimal.iter().enumerate() {
            for &j2 in &minimal[a + 1..] {
                let u = md.column(j1).oplus(&md.column(j2));
                if u == md.column(j1) || u == md.column(j2) {
                    continue;
                }
                strict += 1;
                let verified = match is_extremal(&md, &u) {
                    Ok(e) if !e.extremal => e.witness.is_some_and(|(v1, v2)| {
                        v1.oplus(&v2) == u && v1 != u && v2 != u && md.is_superharmonic(&v1) && md.is_superharmonic(&v2)
                    }),
                    _ => false,
                };
                if !verified {
                    failures.push(format!("sup of columns {j1}, {j2} of {d:?}"));
                }
            }
        }
    }
    outcome(
        failures.is_empty() && strict > 0,
        format!("{kernels} kernels: {columns} recurrent columns, {strict} strict suprema, {} failures {}", failures.len(), failures.first().cloned().unwrap_or_default()),
    )
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let mut bad = Vec::new();
    for trial in 0..100 {
        let (n1, n2) = (r.random_range(1..=5), r.random_range(1..=5));
        let a1 = to_matrix(&random_dense(&mut r, n1, 0.5, -3, 0));
        let a2 = to_matrix(&random_dense(&mut r, n2, 0.5, -3, 0));
        let lhs = kleene_star(&tensor_sum(&a1, &a2));
        let rhs = tensor_product(&kleene_star(&a1), &kleene_star(&a2));
        if lhs.labels() != rhs.labels() || lhs.to_dense() != rhs.to_dense() {
            bad.push(trial);
        }
    }
    outcome(bad.is_empty(), format!("100 pairs, mismatches at {bad:?}"))
}

fn line(f: impl Fn(i64) -> Coord, ks: std::ops::RangeInclusive<i64>) -> Vec<Coord> {
    ks.map(f).collect()
}

fn criterion_6() -> Outcome {
    const WINDOW: i64 = 3;
    const ALPHA: f64 = 1.0;
    let staircase = |k: i64| vec![(k + 1) / 2, k / 2];
    let mut zigzag_z: Vec<Coord> = vec![vec![0], vec![1], vec![2], vec![1]];
    zigzag_z.extend((2..=12).map(|k| vec![k]));
    let mut tripod_up = vec![vec![0, 1]];
    tripod_up.extend(line(|k| vec![k, 0], 0..=12));
    let mut tripod_down = vec![vec![0, 1]];
    tripod_down.extend(line(|k| vec![k, 2], 0..=12));
    let cases: Vec<(&dyn KernelRule, &str, Vec<Coord>)> = vec![
        (&ZRule, "z +", line(|k| vec![k], 0..=12)),
        (&ZRule, "z -", line(|k| vec![-k], 0..=12)),
        (&ZRule, "z zigzag", zigzag_z),
        (&Z2Rule, "z2 axis", line(|k| vec![k, 0], 0..=12)),
        (&Z2Rule, "z2 staircase", line(staircase, 0..=12)),
        (&Z2Rule, "z2 -axis", line(|k| vec![0, -k], 0..=12)),
        (&Example1Rule { self_loop: false }, "ex1", line(|k| vec![k], 0..=12)),
        (&TripodRule, "tripod row 0", tripod_up),
        (&TripodRule, "tripod row 2", tripod_down),
    ];
    let mut failures = Vec::new();
    let (mut accepted, mut rejected) = (0, 0);
    for (rule, name, path) in &cases {
        let report = match almost_geodesic_check(*rule, path, ALPHA, &Potential::Pi, 0.0) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        if !report.accepted {
            rejected += 1;
            continue;
        }
        accepted += 1;
        let h = column_limit(*rule, path, WINDOW, 0.0, None).and_then(|est| h_flat_self(*rule, &est, &[path.clone()], 0.0));
        match h {
            Ok(h) if h.value >= -H_FLAT_TOL => {}
            other => failures.push(format!("{name}: {other:?}")),
        }
    }
    let rule = TripodRule;
    let probe = column_limit(&rule, &line(|k| vec![k, 1], 1..=12), 4, 0.0, None)
        .and_then(|est| h_flat_self(&rule, &est, &[line(|k| vec![k, 1], 1..=8)], 0.0));
    let xi1 = match &probe {
        Ok(h) => h.value,
        Err(_) => f64::NAN,
    };
    if !(xi1 <= -2.0 + H_FLAT_TOL) {
        failures.push(format!("tripod xi1 probe: {probe:?}"));
    }
    outcome(
        failures.is_empty() && accepted > 0,
        format!("{accepted} accepted and {rejected} rejected paths; tripod xi1 H-flat estimate {xi1}; {}", failures.join("; ")),
    )
}

/// The ℓ∞ Busemann forms in the plane: `ε x_i`, or
/// `min(ε₁(x₁−X₁), ε₂(x₂−X₂)) + max(ε₁X₁, ε₂X₂)`.
fn linf_closed_form(duals: &[Vec<f64>], offset: &[f64], x: &[f64]) -> f64 {
    let axis = |d: &Vec<f64>| if d[0] != 0.0 { (0, d[0]) } else { (1, d[1]) };
    if duals.len() == 1 {
        let (i, e) = axis(&duals[0]);
        return e * x[i];
    }
    let (i1, e1) = axis(&duals[0]);
    let (i2, e2) = axis(&duals[1]);
    (e1 * (x[i1] - offset[i1])).min(e2 * (x[i2] - offset[i2])) + (e1 * offset[i1]).max(e2 * offset[i2])
}

fn criterion_7() -> Outcome {
    let poly = PolyhedralNorm::linf(2);
    let norm = Norm::Polyhedral(poly.clone());
    let faces = enumerate_faces(&poly);
    let grid = GridSpec::centered(2, 0.1, 10.0).expect("valid grid");
    let mut failures = Vec::new();
    if faces.faces.len() != 8 || faces.approximate {
        failures.push(format!("{} faces (approximate: {})", faces.faces.len(), faces.approximate));
    }
    if grid.len() != 201 * 201 {
        failures.push(format!("grid has {} nodes", grid.len()));
    }
    let samples: Vec<Vec<f64>> = (-10..=10).flat_map(|i| (-10..=10).map(move |j| vec![i as f64 * 0.5, j as f64 * 0.5])).collect();
    let mut worst_harmonic: f64 = 0.0;
    for offset in [vec![0.0, 0.0], vec![1.5, -2.0]] {
        let mut signs = Vec::new();
        for (k, face) in faces.faces.iter().enumerate() {
            let duals: Vec<Vec<f64>> = face.iter().map(|&j| poly.dual(j).to_vec()).collect();
            signs.push(duals.clone());
            let w = match BusemannPoint::polyhedral(&poly, face.clone(), offset.clone()) {
                Ok(w) => w,
                Err(e) => {
                    failures.push(format!("face {k}: {e}"));
                    continue;
                }
            };
            let gap = samples.iter().map(|x| (w.eval(x) - linf_closed_form(&duals, &offset, x)).abs()).fold(0.0, f64::max);
            if gap > BUSEMANN_TOL {
                failures.push(format!("face {k} at X = {offset:?}: closed form off by {gap}"));
            }
            let ne = w.nonexpansive_check(&norm, 1000, 7 + k as u64, 12.0, BUSEMANN_TOL);
            if !ne.pass {
                failures.push(format!("face {k}: nonexpansive/normalization {ne:?}"));
            }
            let hr = zeta_harmonicity_check(&|x| w.eval(x), &|d| norm.eval(d), &grid, 10);
            worst_harmonic = worst_harmonic.max(hr.worst);
            if !hr.pass {
                failures.push(format!("face {k}: zeta-harmonicity {hr:?}"));
            }
        }
        signs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        signs.dedup();
        if signs.len() != 8 {
            failures.push("faces are not distinct".into());
        }
    }
    outcome(
        failures.is_empty(),
        format!("8 faces checked at two offsets; worst zeta-harmonicity residual {worst_harmonic:e}; {}", failures.join("; ")),
    )
}

fn criterion_8() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for (p, lambda, s) in [(2.0, 0.5, 1.0), (3.0, 1.0, 0.5)] {
        let l = Lagrangian::p_norm(Norm::Euclidean(1), p).expect("p > 1");
        let th = theta(p, lambda);
        // spacing chosen so the optimal displacement falls between grid nodes
        let d_star = th.powf(conjugate(p) - 1.0) * s;
        let h = d_star / (6.0 + 1.0 / 3.0);
        let extent = 3.0 * search_radius(&l, lambda, s);
        let u = |x: &[f64]| th * x[0];
        let run = |h: f64| eigen_check(&u, &l, lambda, s, &GridSpec::centered(1, h, extent).expect("valid grid"), 0.0);
        let (coarse, fine) = match (run(h), run(h / 2.0)) {
            (Ok(c), Ok(f)) => (c, f),
            (c, f) => {
                pass = false;
                details.push(format!("({p}, {lambda}, {s}): {c:?} {f:?}"));
                continue;
            }
        };
        let ratio = fine.residual / coarse.residual;
        let asym = lax_star_asymptotics_check(p, s, lambda, &[10.0, 100.0]);
        let (d10, d100) = match &asym {
            Ok(a) => (a.rows[0].deviation, a.rows[1].deviation),
            Err(_) => (f64::NAN, f64::NAN),
        };
        pass &= coarse.pass && fine.pass && ratio <= REFINEMENT_RATIO && d100 <= d10;
        details.push(format!(
            "({p}, {lambda}, {s}): residual {:.3e} <= bound {:.3e}, ratio {ratio:.3}, deviation {d10:.3e} at 10 -> {d100:.3e} at 100",
            coarse.residual, coarse.bound
        ));
    }
    outcome(pass, details.join("; "))
}

fn criterion_9() -> Outcome {
    let ray: Vec<Coord> = (1..=14).map(|k| vec![k]).collect();
    let mut pass = true;
    let mut details = Vec::new();
    for lambda in [-1.0, -0.5, 0.0, 1.0] {
        match construct_eigenvector(&ZRule, lambda, 4, &ray, 0.0) {
            Ok(u) => {
                pass &= u.residual == 0.0;
                details.push(format!("lambda {lambda}: residual {}", u.residual));
            }
            Err(e) => {
                pass = false;
                details.push(format!("lambda {lambda}: {e}"));
            }
        }
    }
    match construct_eigenvector(&ZRule, -1.5, 4, &ray, 0.0) {
        Err(BoundaryError::BelowSpectralRadius { rho, .. }) => details.push(format!("lambda -1.5 rejected (rho estimate {rho})")),
        other => {
            pass = false;
            details.push(format!("lambda -1.5: {other:?}"));
        }
    }
    outcome(pass, details.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("example fixtures", criterion_1),
        ("closure and circuit-mean oracles", criterion_2),
        ("representation round-trips", criterion_3),
        ("extremality", criterion_4),
        ("product spaces", criterion_5),
        ("almost-geodesic pipeline", criterion_6),
        ("Busemann enumeration", criterion_7),
        ("Lax-Oleinik", criterion_8),
        ("eigenvalue range", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let mark = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{mark}] {name} ({:.2}s): {}", k + 1, start.elapsed().as_secs_f64(), o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
