//! Built-in structured kernels and JSON rule files.

use std::path::Path;

use serde::Deserialize;

use super::rule::{Coord, KernelRule};
use super::BoundaryError;

/// ℤ with `A_{i,i±1} = −1`, basepoint 0.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZRule;

impl KernelRule for ZRule {
    fn name(&self) -> String {
        "z".into()
    }
    fn dim(&self) -> usize {
        1
    }
    fn basepoint(&self) -> Coord {
        vec![0]
    }
    fn level(&self, x: &Coord) -> i64 {
        x[0].abs()
    }
    fn contains(&self, x: &Coord) -> bool {
        x.len() == 1
    }
    fn nodes_within(&self, r: i64) -> Vec<Coord> {
        (-r..=r).map(|i| vec![i]).collect()
    }
    fn neighbors(&self, x: &Coord, r: i64) -> Vec<(Coord, f64)> {
        [x[0] - 1, x[0] + 1]
            .into_iter()
            .filter(|j| j.abs() <= r)
            .map(|j| (vec![j], -1.0))
            .collect()
    }
    fn is_symmetric(&self) -> bool {
        true
    }
    fn max_out_degree(&self) -> Option<usize> {
        Some(2)
    }
}

/// ℤ² with unit moves of weight −1, basepoint (0,0).
#[derive(Debug, Clone, Copy, Default)]
pub struct Z2Rule;

impl KernelRule for Z2Rule {
    fn name(&self) -> String {
        "z2".into()
    }
    fn dim(&self) -> usize {
        2
    }
    fn basepoint(&self) -> Coord {
        vec![0, 0]
    }
    fn level(&self, x: &Coord) -> i64 {
        x[0].abs() + x[1].abs()
    }
    fn contains(&self, x: &Coord) -> bool {
        x.len() == 2
    }
    fn nodes_within(&self, r: i64) -> Vec<Coord> {
        let mut out = Vec::new();
        for i in -r..=r {
            let m = r - i.abs();
            for j in -m..=m {
                out.push(vec![i, j]);
            }
        }
        out
    }
    fn neighbors(&self, x: &Coord, r: i64) -> Vec<(Coord, f64)> {
        [(1, 0), (-1, 0), (0, 1), (0, -1)]
            .into_iter()
            .map(|(a, b)| vec![x[0] + a, x[1] + b])
            .filter(|y| self.level(y) <= r)
            .map(|y| (y, -1.0))
            .collect()
    }
    fn is_symmetric(&self) -> bool {
        true
    }
    fn max_out_degree(&self) -> Option<usize> {
        Some(4)
    }
}

/// ℕ with `A_{i,i+1} = 0`, `A_{i,0} = −1` (i ≥ 1); with `self_loop`, also `A_{00} = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Example1Rule {
    pub self_loop: bool,
}

impl KernelRule for Example1Rule {
    fn name(&self) -> String {
        if self.self_loop { "ex2" } else { "ex1" }.into()
    }
    fn dim(&self) -> usize {
        1
    }
    fn basepoint(&self) -> Coord {
        vec![0]
    }
    fn level(&self, x: &Coord) -> i64 {
        x[0]
    }
    fn contains(&self, x: &Coord) -> bool {
        x.len() == 1 && x[0] >= 0
    }
    fn nodes_within(&self, r: i64) -> Vec<Coord> {
        (0..=r).map(|i| vec![i]).collect()
    }
    fn neighbors(&self, x: &Coord, r: i64) -> Vec<(Coord, f64)> {
        let i = x[0];
        let mut out = Vec::new();
        if i + 1 <= r {
            out.push((vec![i + 1], 0.0));
        }
        if i >= 1 {
            out.push((vec![0], -1.0));
        }
        if i == 0 && self.self_loop {
            out.push((vec![0], 0.0));
        }
        out
    }
    fn max_out_degree(&self) -> Option<usize> {
        Some(2)
    }
}

/// The triangle `{(i,j) : i ≥ j ≥ 1}` with horizontal arcs −1, vertical
/// arcs −2 and spokes `(1,1) ↔ (i,i)` of weight −1/i. Basepoint (1,1).
#[derive(Debug, Clone, Copy, Default)]
pub struct TriangleRule;

/// φ(j) = 1/j for j ≥ 2, φ(1) = 0.
pub fn triangle_phi(j: i64) -> f64 {
    if j >= 2 {
        1.0 / j as f64
    } else {
        0.0
    }
}

impl KernelRule for TriangleRule {
    fn name(&self) -> String {
        "triangle".into()
    }
    fn dim(&self) -> usize {
        2
    }
    fn basepoint(&self) -> Coord {
        vec![1, 1]
    }
    fn level(&self, x: &Coord) -> i64 {
        x[0] - 1
    }
    fn contains(&self, x: &Coord) -> bool {
        x.len() == 2 && x[0] >= x[1] && x[1] >= 1
    }
    fn nodes_within(&self, r: i64) -> Vec<Coord> {
        let mut out = Vec::new();
        for i in 1..=r + 1 {
            for j in 1..=i {
                out.push(vec![i, j]);
            }
        }
        out
    }
    fn neighbors(&self, x: &Coord, r: i64) -> Vec<(Coord, f64)> {
        let (i, j) = (x[0], x[1]);
        let mut out = Vec::new();
        if i <= r {
            out.push((vec![i + 1, j], -1.0));
        }
        if i - 1 >= j {
            out.push((vec![i - 1, j], -1.0));
            out.push((vec![i, j + 1], -2.0));
        }
        if j >= 2 {
            out.push((vec![i, j - 1], -2.0));
        }
        if i == 1 && j == 1 {
            out.extend((2..=r + 1).map(|k| (vec![k, k], -1.0 / k as f64)));
        } else if i == j {
            out.push((vec![1, 1], -1.0 / i as f64));
        }
        out
    }
    fn is_symmetric(&self) -> bool {
        true
    }
}

/// Three half-lines `ℕ × {0,1,2}`: rows 0 and 2 are paths, row 1 nodes hang
/// between them. All weights −1, basepoint (0,1).
#[derive(Debug, Clone, Copy, Default)]
pub struct TripodRule;

impl KernelRule for TripodRule {
    fn name(&self) -> String {
        "tripod".into()
    }
    fn dim(&self) -> usize {
        2
    }
    fn basepoint(&self) -> Coord {
        vec![0, 1]
    }
    fn level(&self, x: &Coord) -> i64 {
        x[0]
    }
    fn contains(&self, x: &Coord) -> bool {
        x.len() == 2 && x[0] >= 0 && (0..=2).contains(&x[1])
    }
    fn nodes_within(&self, r: i64) -> Vec<Coord> {
        (0..=r).flat_map(|i| (0..=2).map(move |j| vec![i, j])).collect()
    }
    fn neighbors(&self, x: &Coord, r: i64) -> Vec<(Coord, f64)> {
        let (i, j) = (x[0], x[1]);
        let mut out = Vec::new();
        if j == 1 {
            out.push((vec![i, 0], -1.0));
            out.push((vec![i, 2], -1.0));
        } else {
            if i + 1 <= r {
                out.push((vec![i + 1, j], -1.0));
            }
            if i >= 1 {
                out.push((vec![i - 1, j], -1.0));
            }
            out.push((vec![i, 1], -1.0));
        }
        out
    }
    fn is_symmetric(&self) -> bool {
        true
    }
    fn max_out_degree(&self) -> Option<usize> {
        Some(3)
    }
}

/// `ℕ × ℕ × {0,1}`: spines `(i,·,k)` of weight −1, rungs between sheets of
/// weight −1 (−2 at height 0), and a base line `(·,0,k)` of weight −1.
/// Basepoint (0,0,0).
#[derive(Debug, Clone, Copy, Default)]
pub struct HedgehogRule;

impl KernelRule for HedgehogRule {
    fn name(&self) -> String {
        "hedgehog".into()
    }
    fn dim(&self) -> usize {
        3
    }
    fn basepoint(&self) -> Coord {
        vec![0, 0, 0]
    }
    fn level(&self, x: &Coord) -> i64 {
        x[0].max(x[1])
    }
    fn contains(&self, x: &Coord) -> bool {
        x.len() == 3 && x[0] >= 0 && x[1] >= 0 && (0..=1).contains(&x[2])
    }
    fn nodes_within(&self, r: i64) -> Vec<Coord> {
        let mut out = Vec::new();
        for i in 0..=r {
            for j in 0..=r {
                for k in 0..=1 {
                    out.push(vec![i, j, k]);
                }
            }
        }
        out
    }
    fn neighbors(&self, x: &Coord, r: i64) -> Vec<(Coord, f64)> {
        let (i, j, k) = (x[0], x[1], x[2]);
        let mut out = Vec::new();
        if j + 1 <= r {
            out.push((vec![i, j + 1, k], -1.0));
        }
        if j >= 1 {
            out.push((vec![i, j - 1, k], -1.0));
            out.push((vec![i, j, 1 - k], -1.0));
        } else {
            out.push((vec![i, 0, 1 - k], -2.0));
            if i + 1 <= r {
                out.push((vec![i + 1, 0, k], -1.0));
            }
            if i >= 1 {
                out.push((vec![i - 1, 0, k], -1.0));
            }
        }
        out
    }
    fn is_symmetric(&self) -> bool {
        true
    }
    fn max_out_degree(&self) -> Option<usize> {
        Some(4)
    }
}

/// ℕ with `A_{i,i±1} = −1` and `A_{0i} = 0` for `i ≥ 1`. Row 0 is infinite,
/// so `π⁻¹` is not tight. The self-loop `A_{00}` is left out: with it the
/// boundary point `b_i = −i` would be harmonic.
#[derive(Debug, Clone, Copy, Default)]
pub struct NonTightRule;

impl KernelRule for NonTightRule {
    fn name(&self) -> String {
        "nontight".into()
    }
    fn dim(&self) -> usize {
        1
    }
    fn basepoint(&self) -> Coord {
        vec![0]
    }
    fn level(&self, x: &Coord) -> i64 {
        x[0]
    }
    fn contains(&self, x: &Coord) -> bool {
        x.len() == 1 && x[0] >= 0
    }
    fn nodes_within(&self, r: i64) -> Vec<Coord> {
        (0..=r).map(|i| vec![i]).collect()
    }
    fn neighbors(&self, x: &Coord, r: i64) -> Vec<(Coord, f64)> {
        let i = x[0];
        if i == 0 {
            return (1..=r).map(|k| (vec![k], 0.0)).collect();
        }
        let mut out = vec![(vec![i - 1], -1.0)];
        if i + 1 <= r {
            out.push((vec![i + 1], -1.0));
        }
        out
    }
}

#[derive(Debug, Clone)]
struct BoxSpec {
    min: Option<Vec<i64>>,
    max: Option<Vec<i64>>,
}

impl BoxSpec {
    fn holds(&self, x: &[i64]) -> bool {
        let lo = self.min.as_ref().is_none_or(|m| x.iter().zip(m).all(|(a, b)| a >= b));
        let hi = self.max.as_ref().is_none_or(|m| x.iter().zip(m).all(|(a, b)| a <= b));
        lo && hi
    }
}

#[derive(Debug, Clone)]
struct OffsetSpec {
    offset: Vec<i64>,
    weight: f64,
    guard: Option<BoxSpec>,
}

/// A translation-invariant rule read from JSON:
///
/// ```json
/// { "name": "strip", "dim": 2, "basepoint": [0, 0], "symmetric": true,
///   "offsets": [ { "offset": [1, 0], "weight": -1 },
///                { "offset": [0, 1], "weight": -2, "guard": { "max": [null, 3] } } ],
///   "region": { "min": [-100, 0], "max": [100, 4] } }
/// ```
///
/// Guards restrict the source node of an offset; the region restricts all nodes.
/// Balls use the ℓ¹ distance to the basepoint.
#[derive(Debug, Clone)]
pub struct FileRule {
    name: String,
    dim: usize,
    basepoint: Vec<i64>,
    symmetric: bool,
    offsets: Vec<OffsetSpec>,
    region: Option<BoxSpec>,
}

// guards/regions may use null for "unbounded" in one component
#[derive(Debug, Clone, Deserialize)]
struct RawBox {
    min: Option<Vec<Option<i64>>>,
    max: Option<Vec<Option<i64>>>,
}

impl From<RawBox> for BoxSpec {
    fn from(r: RawBox) -> Self {
        BoxSpec {
            min: r.min.map(|v| v.into_iter().map(|c| c.unwrap_or(i64::MIN)).collect()),
            max: r.max.map(|v| v.into_iter().map(|c| c.unwrap_or(i64::MAX)).collect()),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
struct RawOffset {
    offset: Vec<i64>,
    weight: f64,
    guard: Option<RawBox>,
}

#[derive(Debug, Clone, Deserialize)]
struct RawFileRule {
    name: String,
    dim: usize,
    basepoint: Vec<i64>,
    #[serde(default)]
    symmetric: bool,
    offsets: Vec<RawOffset>,
    region: Option<RawBox>,
}

impl FileRule {
    pub fn from_json(text: &str) -> Result<FileRule, BoundaryError> {
        let raw: RawFileRule =
            serde_json::from_str(text).map_err(|e| BoundaryError::RuleFile(e.to_string()))?;
        let rule = FileRule {
            name: raw.name,
            dim: raw.dim,
            basepoint: raw.basepoint,
            symmetric: raw.symmetric,
            offsets: raw
                .offsets
                .into_iter()
                .map(|o| OffsetSpec { offset: o.offset, weight: o.weight, guard: o.guard.map(Into::into) })
                .collect(),
            region: raw.region.map(Into::into),
        };
        rule.validate()?;
        Ok(rule)
    }

    pub fn from_path(path: &Path) -> Result<FileRule, BoundaryError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BoundaryError::RuleFile(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn validate(&self) -> Result<(), BoundaryError> {
        let bad = |m: &str| Err(BoundaryError::RuleFile(m.to_string()));
        if self.dim == 0 || self.dim > 4 {
            return bad("dim must be between 1 and 4");
        }
        if self.basepoint.len() != self.dim {
            return bad("basepoint has the wrong dimension");
        }
        for o in &self.offsets {
            if o.offset.len() != self.dim {
                return bad("offset has the wrong dimension");
            }
            if o.offset.iter().all(|c| *c == 0) {
                return bad("zero offset (use a nonzero displacement)");
            }
            if !o.weight.is_finite() {
                return bad("weights must be finite");
            }
            for b in o.guard.iter() {
                for v in b.min.iter().chain(b.max.iter()) {
                    if v.len() != self.dim {
                        return bad("guard has the wrong dimension");
                    }
                }
            }
        }
        if let Some(r) = &self.region {
            for v in r.min.iter().chain(r.max.iter()) {
                if v.len() != self.dim {
                    return bad("region has the wrong dimension");
                }
            }
        }
        if !self.contains(&self.basepoint) {
            return bad("basepoint lies outside the region");
        }
        Ok(())
    }
}

impl KernelRule for FileRule {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn basepoint(&self) -> Coord {
        self.basepoint.clone()
    }
    fn level(&self, x: &Coord) -> i64 {
        x.iter().zip(&self.basepoint).map(|(a, b)| (a - b).abs()).sum()
    }
    fn contains(&self, x: &Coord) -> bool {
        x.len() == self.dim && self.region.as_ref().is_none_or(|r| r.holds(x))
    }
    fn nodes_within(&self, r: i64) -> Vec<Coord> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.dim];
        fn rec(rule: &FileRule, d: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Coord>) {
            if d == rule.dim {
                let x: Coord = cur.iter().zip(&rule.basepoint).map(|(a, b)| a + b).collect();
                if rule.contains(&x) {
                    out.push(x);
                }
                return;
            }
            for c in -left..=left {
                cur[d] = c;
                rec(rule, d + 1, left - c.abs(), cur, out);
            }
        }
        rec(self, 0, r, &mut cur, &mut out);
        out
    }
    fn neighbors(&self, x: &Coord, r: i64) -> Vec<(Coord, f64)> {
        let mut out: Vec<(Coord, f64)> = Vec::new();
        for o in &self.offsets {
            if o.guard.as_ref().is_some_and(|g| !g.holds(x)) {
                continue;
            }
            let y: Coord = x.iter().zip(&o.offset).map(|(a, b)| a + b).collect();
            if self.contains(&y) && self.level(&y) <= r {
                match out.iter_mut().find(|e| e.0 == y) {
                    Some(e) => e.1 = e.1.max(o.weight),
                    None => out.push((y, o.weight)),
                }
            }
        }
        out
    }
    fn is_symmetric(&self) -> bool {
        self.symmetric
    }
    fn max_out_degree(&self) -> Option<usize> {
        Some(self.offsets.len())
    }
}

/// Resolve `z | z2 | ex1 | ex2 | triangle | tripod | hedgehog | nontight | file:PATH`.
pub fn rule_by_name(name: &str) -> Result<Box<dyn KernelRule>, BoundaryError> {
    Ok(match name {
        "z" => Box::new(ZRule),
        "z2" => Box::new(Z2Rule),
        "ex1" => Box::new(Example1Rule { self_loop: false }),
        "ex2" => Box::new(Example1Rule { self_loop: true }),
        "triangle" => Box::new(TriangleRule),
        "tripod" => Box::new(TripodRule),
        "hedgehog" => Box::new(HedgehogRule),
        "nontight" => Box::new(NonTightRule),
        other => match other.strip_prefix("file:") {
            Some(path) => Box::new(FileRule::from_path(Path::new(path))?),
            None => return Err(BoundaryError::UnknownRule(other.to_string())),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_sizes() {
        assert_eq!(ZRule.nodes_within(3).len(), 7);
        assert_eq!(Z2Rule.nodes_within(2).len(), 13);
        assert_eq!(TripodRule.nodes_within(4).len(), 15);
        assert_eq!(TriangleRule.nodes_within(2).len(), 6);
        assert_eq!(HedgehogRule.nodes_within(1).len(), 8);
    }

    #[test]
    fn symmetric_rules_are_symmetric() {
        let rules: Vec<Box<dyn KernelRule>> =
            vec![Box::new(ZRule), Box::new(Z2Rule), Box::new(TriangleRule), Box::new(TripodRule), Box::new(HedgehogRule)];
        for rule in rules {
            let r = 5;
            for x in rule.nodes_within(r) {
                for (y, w) in rule.neighbors(&x, r) {
                    assert!(rule.contains(&y) && rule.level(&y) <= r);
                    let back = rule.neighbors(&y, r).into_iter().find(|e| e.0 == x);
                    assert_eq!(back.map(|e| e.1), Some(w), "{} {:?}->{:?}", rule.name(), x, y);
                }
            }
        }
    }

    #[test]
    fn nontight_row_zero_is_whole_ball() {
        assert_eq!(NonTightRule.neighbors(&vec![0], 4).len(), 4);
        assert!(NonTightRule.neighbors(&vec![0], 4).iter().all(|e| e.1 == 0.0));
    }

    #[test]
    fn file_rule_round_trip() {
        let text = r#"{ "name": "line", "dim": 1, "basepoint": [0], "symmetric": true,
            "offsets": [ {"offset": [1], "weight": -1}, {"offset": [-1], "weight": -1} ],
            "region": {"min": [-5], "max": [null]} }"#;
        let rule = FileRule::from_json(text).unwrap();
        assert_eq!(rule.nodes_within(10).len(), 16);
        assert_eq!(rule.neighbors(&vec![-5], 10), vec![(vec![-4], -1.0)]);
        assert!(FileRule::from_json(r#"{"name":"x","dim":1,"basepoint":[0,0],"offsets":[]}"#).is_err());
        assert!(matches!(rule_by_name("nope"), Err(BoundaryError::UnknownRule(_))));
    }
}
