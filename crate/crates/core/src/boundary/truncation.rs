use std::collections::HashMap;

use super::rule::{Coord, KernelRule};
use super::BoundaryError;
use crate::tropical::closure::single_source;
use crate::tropical::TropicalMatrix;

pub const DEFAULT_NODE_CAP: usize = 200_000;

/// Margin between the ball radius and the region trusted to be free of
/// truncation effects.
const INNER_MARGIN: i64 = 5;

/// A finite window `{x : level(x) ≤ radius}` onto an infinite kernel.
/// Arcs leaving the ball are dropped.
#[derive(Debug, Clone)]
pub struct BallTruncation {
    pub radius: i64,
    pub inner_radius: i64,
    coords: Vec<Coord>,
    index: HashMap<Coord, usize>,
    matrix: TropicalMatrix,
    reverse: TropicalMatrix,
    basepoint: usize,
}

pub fn truncate(rule: &dyn KernelRule, radius: i64) -> Result<BallTruncation, BoundaryError> {
    truncate_with_cap(rule, radius, DEFAULT_NODE_CAP)
}

/// Nodes are ordered by level, then lexicographically by coordinates.
pub fn truncate_with_cap(
    rule: &dyn KernelRule,
    radius: i64,
    cap: usize,
) -> Result<BallTruncation, BoundaryError> {
    if radius < 1 {
        return Err(BoundaryError::InvalidRadius { radius, min: 1 });
    }
    let mut coords = rule.nodes_within(radius);
    if coords.len() > cap {
        return Err(BoundaryError::BallTooLarge { radius, cap });
    }
    coords.sort_by(|a, b| rule.level(a).cmp(&rule.level(b)).then_with(|| a.cmp(b)));
    let index: HashMap<Coord, usize> =
        coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let mut arcs = Vec::new();
    for (i, x) in coords.iter().enumerate() {
        for (y, w) in rule.neighbors(x, radius) {
            if let Some(&j) = index.get(&y) {
                arcs.push((i, j, w));
            }
        }
    }
    let labels: Vec<String> = coords.iter().map(|c| rule.label(c)).collect();
    let matrix = TropicalMatrix::from_arcs(labels, arcs)?;
    let reverse = matrix.transpose();
    let basepoint = index[&rule.basepoint()];
    Ok(BallTruncation {
        radius,
        inner_radius: (radius - INNER_MARGIN).max(0),
        coords,
        index,
        matrix,
        reverse,
        basepoint,
    })
}

impl BallTruncation {
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn matrix(&self) -> &TropicalMatrix {
        &self.matrix
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Coord {
        &self.coords[i]
    }

    pub fn index_of(&self, x: &Coord) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// Row `x` of `A*` on the ball.
    pub fn star_row(&self, x: usize) -> Vec<f64> {
        single_source(&self.matrix, x)
    }

    /// Column `y` of `A*` on the ball.
    pub fn star_column(&self, y: usize) -> Vec<f64> {
        single_source(&self.reverse, y)
    }

    /// `π = A*_{b·}` for the basepoint `b`.
    pub fn pi(&self) -> Vec<f64> {
        self.star_row(self.basepoint)
    }

    /// Column `y` of `A⁺ = A A*`, from the matching star column.
    pub fn plus_column(&self, star_col: &[f64]) -> Vec<f64> {
        (0..self.n())
            .map(|i| {
                let mut best = f64::NEG_INFINITY;
                self.matrix.for_each_in_row(i, |j, w| best = best.max(w + star_col[j]));
                best
            })
            .collect()
    }
}
