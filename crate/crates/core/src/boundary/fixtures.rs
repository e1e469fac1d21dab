//! The closed-form examples, each checked against the numerical machinery.

use std::time::Instant;

use serde::Serialize;

use super::eigen::{construct_eigenvector, eigen_residual};
use super::geodesic::{almost_geodesic_check, rieffel_check, Potential};
use super::limit::{column_limit, h_flat_self, kernel_column, BoundaryEstimate};
use super::rule::{Coord, KernelRule};
use super::rules::{
    triangle_phi, Example1Rule, HedgehogRule, NonTightRule, TriangleRule, TripodRule, Z2Rule, ZRule,
};
use super::truncation::truncate;
use super::BoundaryError;
use crate::martin::{martin_data, minimal_martin_finite, tensor_product, tensor_sum, PiSpec};
use crate::spectral::{max_circuit_mean_fraction, spectral_data};
use crate::tropical::kleene_star;
use crate::util::Assertion;

/// Tolerance for the fixtures with fractional weights.
const FLOAT_TOL: f64 = 1e-9;
const WINDOW: i64 = 4;

#[derive(Debug, Clone, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub assertions: Vec<Assertion>,
    pub elapsed_ms: f64,
}

impl FixtureResult {
    pub fn pass(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub fixtures: Vec<FixtureResult>,
}

impl FixtureReport {
    pub fn pass(&self) -> bool {
        self.fixtures.iter().all(FixtureResult::pass)
    }

    pub fn assertions(&self) -> impl Iterator<Item = (&str, &Assertion)> {
        self.fixtures.iter().flat_map(|f| f.assertions.iter().map(move |a| (f.name.as_str(), a)))
    }

    pub fn failures(&self) -> Vec<String> {
        self.assertions().filter(|(_, a)| !a.pass).map(|(f, a)| format!("{f}: {} ({})", a.name, a.witness)).collect()
    }
}

/// Run every fixture.
pub fn fixture_suite() -> FixtureReport {
    let runs: [(&str, fn(&mut Checks)); 8] = [
        ("example-1", example_one),
        ("example-2", example_two),
        ("z", z_line),
        ("z2", z_plane),
        ("triangle", triangle),
        ("tripod", tripod),
        ("hedgehog", hedgehog),
        ("non-tight", non_tight),
    ];
    let fixtures = runs
        .iter()
        .map(|(name, run)| {
            let start = Instant::now();
            let mut checks = Checks(Vec::new());
            run(&mut checks);
            FixtureResult {
                name: name.to_string(),
                assertions: checks.0,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect();
    FixtureReport { fixtures }
}

struct Checks(Vec<Assertion>);

impl Checks {
    fn push(&mut self, name: &str, pass: bool, witness: impl Into<String>) {
        self.0.push(Assertion::new(name, pass, witness));
    }

    fn within(&mut self, name: &str, gap: f64, tol: f64) {
        self.0.push(Assertion::within(name, gap, tol));
    }

    /// Unwraps, or records the error as a failed assertion.
    fn ok<T>(&mut self, name: &str, r: Result<T, BoundaryError>) -> Option<T> {
        r.map_err(|e| self.push(name, false, e.to_string())).ok()
    }

    fn limit<F: Fn(&Coord) -> f64>(
        &mut self,
        name: &str,
        rule: &dyn KernelRule,
        targets: Vec<Coord>,
        tol: f64,
        closed_form: F,
    ) -> Option<BoundaryEstimate> {
        let est = self.ok(name, column_limit(rule, &targets, WINDOW, tol, None))?;
        self.within(name, est.gap_to(closed_form), tol);
        Some(est)
    }

    fn h_flat(&mut self, name: &str, rule: &dyn KernelRule, est: &BoundaryEstimate, probe: Vec<Coord>, expected: f64, tol: f64) {
        if let Some(h) = self.ok(name, h_flat_self(rule, est, &[probe], tol)) {
            self.push(name, (h.value - expected).abs() <= tol, format!("H-flat estimate {}", h.value));
        }
    }
}

fn ray(f: impl Fn(i64) -> Coord, ks: std::ops::RangeInclusive<i64>) -> Vec<Coord> {
    ks.map(f).collect()
}

fn example_one(c: &mut Checks) {
    let rule = Example1Rule { self_loop: false };
    if let Some(t) = c.ok("truncation of radius 3", truncate(&rule, 3)) {
        let m = t.matrix();
        let arcs_ok = m.nnz() == 6 && (1..4).all(|i| m.value(i - 1, i) == 0.0 && m.value(i, 0) == -1.0);
        c.push("truncation of radius 3", t.n() == 4 && arcs_ok, format!("{} nodes, {} arcs", t.n(), m.nnz()));
    }
    let xi = c.limit("boundary point along 0,1,2,... is identically 0", &rule, ray(|k| vec![k], 1..=12), 0.0, |_| 0.0);
    let path = ray(|k| vec![k], 0..=10);
    if let Some(g) = c.ok("0,1,2,... is a 0-almost-geodesic", almost_geodesic_check(&rule, &path, 0.0, &Potential::Pi, 0.0)) {
        c.push("0,1,2,... is a 0-almost-geodesic", g.accepted, format!("slacks {:?}", g.slacks));
    }
    if let Some(xi) = xi {
        c.h_flat("boundary point is minimal", &rule, &xi, ray(|k| vec![k], 0..=8), 0.0, 0.0);
        let (r, _) = eigen_residual(&rule, &xi.window, &xi.values, 0.0, WINDOW - 1);
        c.within("boundary point is harmonic", r, 0.0);
    }
    if let Some(u) = c.ok("harmonic vector from the eigen-construction", construct_eigenvector(&rule, 0.0, WINDOW, &ray(|k| vec![k], 1..=12), 0.0)) {
        let gap = u.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        c.within("harmonic vector from the eigen-construction is 0", gap, 0.0);
    }
    // no finite column is harmonic: the boundary point carries every harmonic vector
    if let Some(t) = c.ok("no finite minimal points", truncate(&rule, 10)) {
        match martin_data(t.matrix(), PiSpec::Basepoint("0".into())) {
            Ok(md) => {
                let m = minimal_martin_finite(&md);
                c.push("no finite minimal points", m.is_empty(), format!("{m:?}"));
            }
            Err(e) => c.push("no finite minimal points", false, e.to_string()),
        }
    }
}

fn example_two(c: &mut Checks) {
    let rule = Example1Rule { self_loop: true };
    if let Some(t) = c.ok("truncation", truncate(&rule, 10)) {
        match spectral_data(t.matrix()) {
            Ok(sd) => {
                c.push("rho = 0", sd.rho.0 == 0.0, format!("rho {}", sd.rho));
                c.push("node 0 is the only recurrent node", sd.recurrent == vec![0], format!("{:?}", sd.recurrent));
            }
            Err(e) => c.push("spectral data", false, e.to_string()),
        }
        match martin_data(t.matrix(), PiSpec::Basepoint("0".into())) {
            Ok(md) => {
                let m: Vec<&str> = minimal_martin_finite(&md).into_iter().map(|i| md.label(i)).collect();
                c.push("finite minimal points are {K_0}", m == vec!["0"], format!("{m:?}"));
            }
            Err(e) => c.push("finite minimal points are {K_0}", false, e.to_string()),
        }
    }
    if let Some(k0) = c.ok("column K_0", kernel_column(&rule, &vec![0], WINDOW, 0.0)) {
        c.h_flat("K_0 has H-flat 0 along 0,0,0", &rule, &k0, vec![vec![0]; 3], 0.0, 0.0);
    }
    c.limit("boundary point along 0,1,2,... is identically 0", &rule, ray(|k| vec![k], 1..=12), 0.0, |_| 0.0);
}

fn z_line(c: &mut Checks) {
    if let Some(t) = c.ok("truncation of radius 3", truncate(&ZRule, 3)) {
        c.push("truncation of radius 3 has 7 nodes", t.n() == 7, format!("{}", t.n()));
        let rho = max_circuit_mean_fraction(t.matrix());
        let ok = rho.is_some_and(|r| r.value() == -1.0);
        c.push("rho = -1", ok, format!("{rho:?}"));
    }
    let plus = c.limit("xi+ along k is i", &ZRule, ray(|k| vec![k], 1..=12), 0.0, |x| x[0] as f64);
    c.limit("xi- along -k is -i", &ZRule, ray(|k| vec![-k], 1..=12), 0.0, |x| -x[0] as f64);
    let path = ray(|k| vec![k], 0..=10);
    match almost_geodesic_check(&ZRule, &path, 0.0, &Potential::Pi, 0.0) {
        Ok(g) => c.push("0..10 is a geodesic", g.accepted && g.slacks.iter().all(|p| *p == 0.0), format!("{:?}", g.slacks)),
        Err(e) => c.push("0..10 is a geodesic", false, e.to_string()),
    }
    let back: Vec<Coord> = [0, 1, 0, 1, 2].iter().map(|&i| vec![i]).collect();
    match almost_geodesic_check(&ZRule, &back, 1.0, &Potential::Pi, 0.0) {
        Ok(g) => c.push("0,1,0,1,2 fails at alpha 1", g.first_violation == Some(2), format!("{:?}", g.slacks)),
        Err(e) => c.push("0,1,0,1,2 fails at alpha 1", false, e.to_string()),
    }
    if let Some(plus) = plus {
        c.h_flat("xi+ is minimal", &ZRule, &plus, ray(|k| vec![k], 0..=8), 0.0, 0.0);
    }
    match rieffel_check(&ZRule, &path, 1e-9) {
        Ok(r) => c.push("0..10 is a Rieffel geodesic", r.pass, format!("worst {}", r.worst)),
        Err(e) => c.push("0..10 is a Rieffel geodesic", false, e.to_string()),
    }
    let wiggle: Vec<Coord> = [0, 1, 0, 1, 2, 3].iter().map(|&i| vec![i]).collect();
    match rieffel_check(&ZRule, &wiggle, 0.5) {
        Ok(r) => c.push("a backtrack breaks the Rieffel test", !r.pass && r.worst == 2.0, format!("worst {}", r.worst)),
        Err(e) => c.push("a backtrack breaks the Rieffel test", false, e.to_string()),
    }
}

fn z_plane(c: &mut Checks) {
    if let Some(t) = c.ok("truncation of radius 2", truncate(&Z2Rule, 2)) {
        c.push("truncation of radius 2 has 13 nodes", t.n() == 13, format!("{}", t.n()));
    }
    if let Some(t) = c.ok("star of the tensor sum", truncate(&ZRule, 3)) {
        let a = t.matrix();
        let star = kleene_star(a);
        let lhs = kleene_star(&tensor_sum(a, a));
        let rhs = tensor_product(&star, &star);
        c.within("star of the tensor sum is the tensor product of stars", lhs.max_gap(&rhs), 0.0);
    }
    let abs = |v: i64| v.abs() as f64;
    for cst in [-1i64, 0, 2] {
        let name = format!("ray (k,{cst}) gives i + |c| - |j-c|");
        let est = c.limit(&name, &Z2Rule, ray(|k| vec![k, cst], 1..=12), 0.0, |x| x[0] as f64 + abs(cst) - abs(x[1] - cst));
        // the same function assembled from the factors
        let factor = c.ok("one-dimensional column", kernel_column(&ZRule, &vec![cst], WINDOW, 0.0));
        if let (Some(est), Some(factor)) = (est, factor) {
            let gap = est.gap_to(|x| x[0] as f64 + factor.value_at(&vec![x[1]]).unwrap_or(f64::NAN));
            c.within(&format!("ray (k,{cst}) is xi+ (x) K_{cst}"), gap, 0.0);
        }
    }
    for cst in [0i64, 1] {
        c.limit(&format!("ray ({cst},k) gives |c| - |i-c| + j"), &Z2Rule, ray(|k| vec![cst, k], 1..=12), 0.0, |x| {
            abs(cst) - abs(x[0] - cst) + x[1] as f64
        });
    }
    c.limit("ray (k,k) gives i + j", &Z2Rule, ray(|k| vec![k, k], 1..=10), 0.0, |x| (x[0] + x[1]) as f64);
    c.limit("ray (k,-k) gives i - j", &Z2Rule, ray(|k| vec![k, -k], 1..=10), 0.0, |x| (x[0] - x[1]) as f64);
    let stairs: Vec<Coord> = (0..16).map(|k| vec![(k + 1) / 2, k / 2]).collect();
    match rieffel_check(&Z2Rule, &stairs, 1e-9) {
        Ok(r) => c.push("staircase is a Rieffel geodesic", r.pass, format!("worst {}", r.worst)),
        Err(e) => c.push("staircase is a Rieffel geodesic", false, e.to_string()),
    }
    if let Some(est) = c.ok("staircase limit", column_limit(&Z2Rule, &stairs, WINDOW, 0.0, None)) {
        c.within("staircase converges to i + j", est.gap_to(|x| (x[0] + x[1]) as f64), 0.0);
    }
}

fn triangle(c: &mut Checks) {
    let phi = triangle_phi;
    let rule = TriangleRule;
    for l in 1..=3i64 {
        c.limit(
            &format!("xi^{l} matches its closed form"),
            &rule,
            ray(|k| vec![k, l], l..=l + 14),
            FLOAT_TOL,
            |x| {
                let (i, j) = (x[0] as f64, x[1]);
                let a = i - l as f64 - 2.0 * (j - l).abs() as f64 + phi(l);
                let b = -((x[0] - j) as f64) - phi(j);
                a.max(b)
            },
        );
    }
    let k11 = |x: &Coord| {
        let (i, j) = (x[0] as f64, x[1] as f64);
        (-(i - 1.0) - 2.0 * (j - 1.0)).max(-(i - j) - phi(x[1]))
    };
    let est = c.limit("targets (2m,m) converge to K_(1,1)", &rule, ray(|m| vec![2 * m, m], 2..=12), FLOAT_TOL, k11);
    if let (Some(est), Some(col)) = (est, c.ok("column K_(1,1)", kernel_column(&rule, &vec![1, 1], WINDOW, FLOAT_TOL))) {
        c.within("limit of (2m,m) equals the computed column K_(1,1)", est.gap(&col), FLOAT_TOL);
    }
}

fn tripod(c: &mut Checks) {
    let rule = TripodRule;
    let xi0 = |x: &Coord| (x[0] - x[1] + 1) as f64;
    let xi2 = |x: &Coord| (x[0] + x[1] - 1) as f64;
    let e0 = c.limit("xi0 along (k,0) is i - j + 1", &rule, ray(|k| vec![k, 0], 1..=12), 0.0, xi0);
    let e2 = c.limit("xi2 along (k,2) is i + j - 1", &rule, ray(|k| vec![k, 2], 1..=12), 0.0, xi2);
    let e1 = c.limit("xi1 along (k,1) is xi0 (+) xi2", &rule, ray(|k| vec![k, 1], 1..=12), 0.0, |x| xi0(x).max(xi2(x)));
    if let (Some(e0), Some(e1), Some(e2)) = (&e0, &e1, &e2) {
        c.push("xi1 differs from xi0 and xi2", e1.gap(e0) > 0.0 && e1.gap(e2) > 0.0, format!("gaps {} {}", e1.gap(e0), e1.gap(e2)));
    }
    if let Some(e0) = &e0 {
        c.h_flat("xi0 is minimal", &rule, e0, ray(|k| vec![k, 0], 0..=8), 0.0, 0.0);
    }
    if let Some(e2) = &e2 {
        c.h_flat("xi2 is minimal", &rule, e2, ray(|k| vec![k, 2], 0..=8), 0.0, 0.0);
    }
    if let Some(e1) = &e1 {
        c.h_flat("xi1 has H-flat -2", &rule, e1, ray(|k| vec![k, 1], 1..=8), -2.0, 0.0);
    }
    let zigzag = vec![vec![0, 1], vec![0, 0], vec![1, 0], vec![1, 1], vec![1, 0], vec![2, 0]];
    match almost_geodesic_check(&rule, &zigzag, 1.0, &Potential::Pi, 0.0) {
        Ok(g) => c.push("a zigzag through row 1 is not 1-almost-geodesic", !g.accepted, format!("{:?}", g.slacks)),
        Err(e) => c.push("a zigzag through row 1 is not 1-almost-geodesic", false, e.to_string()),
    }
}

fn hedgehog(c: &mut Checks) {
    let rule = HedgehogRule;
    let ind = |b: bool| if b { 1.0 } else { 0.0 };
    let f00 = move |x: &Coord| (x[0] - x[1] - x[2]) as f64 - ind(x[1] == 0 && x[2] == 1);
    let f01 = move |x: &Coord| (x[0] - x[1] + x[2] + 1) as f64 - ind(x[1] == 0 && x[2] == 0);
    let finf = |kp: i64| move |x: &Coord| (kp - (kp - x[2]).abs() + x[0] - x[1]) as f64;
    let a = c.limit("xi(inf,0,0) along (k,0,0)", &rule, ray(|k| vec![k, 0, 0], 1..=10), 0.0, f00);
    let b = c.limit("xi(inf,0,1) along (k,0,1)", &rule, ray(|k| vec![k, 0, 1], 1..=10), 0.0, f01);
    let d0 = c.limit("xi(inf,inf,0) along (k,k,0)", &rule, ray(|k| vec![k, k, 0], 1..=10), 0.0, finf(0));
    let d1 = c.limit("xi(inf,inf,1) along (k,k,1)", &rule, ray(|k| vec![k, k, 1], 1..=10), 0.0, finf(1));
    if let (Some(a), Some(b)) = (a, b) {
        for (d, shift, name) in [(d0, -3.0, "xi(inf,inf,0) = xi(inf,0,0) (+) -3 xi(inf,0,1)"), (d1, -1.0, "xi(inf,inf,1) = xi(inf,0,0) (+) -1 xi(inf,0,1)")] {
            if let Some(d) = d {
                let gap = d.gap_to(|x| {
                    let u = a.value_at(x).unwrap_or(f64::NAN);
                    let v = b.value_at(x).unwrap_or(f64::NAN);
                    u.max(shift + v)
                });
                c.within(name, gap, 0.0);
            }
        }
    }
}

fn non_tight(c: &mut Checks) {
    let rule = NonTightRule;
    let b = c.limit("boundary point along k is -i", &rule, ray(|k| vec![k], 1..=12), 0.0, |x| -x[0] as f64);
    if let Some(t) = c.ok("pi", truncate(&rule, 10)) {
        let pi = t.pi();
        c.push("pi vanishes everywhere", pi.iter().all(|v| *v == 0.0), format!("{pi:?}"));
    }
    if let Some(b) = b {
        let (r, node) = eigen_residual(&rule, &b.window, &b.values, 0.0, WINDOW - 1);
        c.push("b is not harmonic at the basepoint", r == 1.0 && node == Some(vec![0]), format!("residual {r} at {node:?}"));
        let away = b
            .window
            .iter()
            .filter(|x| x[0] >= 1 && x[0] < WINDOW)
            .map(|x| {
                let au = rule
                    .neighbors(x, WINDOW)
                    .iter()
                    .filter_map(|(y, w)| b.value_at(y).map(|v| w + v))
                    .fold(f64::NEG_INFINITY, f64::max);
                (au - b.value_at(x).unwrap_or(f64::NAN)).abs()
            })
            .fold(0.0, f64::max);
        c.within("b is harmonic away from the basepoint", away, 0.0);
    }
    match construct_eigenvector(&rule, 0.0, WINDOW, &ray(|k| vec![k], 1..=12), 0.0) {
        Err(BoundaryError::EigenCheckFailed { node, residual }) => {
            c.push("eigen-check fails at the basepoint", node == "0" && residual == 1.0, format!("{node}: {residual}"))
        }
        other => c.push("eigen-check fails at the basepoint", false, format!("{other:?}")),
    }
}
