use std::fmt::Debug;

/// A node of a structured kernel: integer coordinates.
pub type Coord = Vec<i64>;

/// Generator of an infinite kernel, truncatable to balls.
///
/// Balls are level sets `{x : level(x) ≤ r}`; `neighbors` must only return
/// nodes inside the ball of the given radius, which keeps rows finite even
/// for kernels with infinitely many arcs out of a node.
pub trait KernelRule: Debug + Send + Sync {
    fn name(&self) -> String;

    fn dim(&self) -> usize;

    fn basepoint(&self) -> Coord;

    /// Ball coordinate; the basepoint has level 0.
    fn level(&self, x: &Coord) -> i64;

    /// Whether `x` is a node of the kernel.
    fn contains(&self, x: &Coord) -> bool;

    /// All nodes with `level ≤ radius`, in any order.
    fn nodes_within(&self, radius: i64) -> Vec<Coord>;

    /// Out-arcs `(y, weight)` of `x` restricted to the ball of `radius`.
    fn neighbors(&self, x: &Coord, radius: i64) -> Vec<(Coord, f64)>;

    /// `A` symmetric, so that `−A*` is a metric when it vanishes only on the diagonal.
    fn is_symmetric(&self) -> bool {
        false
    }

    /// Upper bound on out-degree, when rows are finite.
    fn max_out_degree(&self) -> Option<usize> {
        None
    }

    /// Text label of a node: `"i"` in one dimension, `"(i,j,…)"` otherwise.
    fn label(&self, x: &Coord) -> String {
        format_coord(x)
    }

    fn parse_label(&self, s: &str) -> Option<Coord> {
        let c = parse_coord(s)?;
        (c.len() == self.dim() && self.contains(&c)).then_some(c)
    }
}

pub fn format_coord(x: &Coord) -> String {
    if x.len() == 1 {
        x[0].to_string()
    } else {
        let parts: Vec<String> = x.iter().map(i64::to_string).collect();
        format!("({})", parts.join(","))
    }
}

pub fn parse_coord(s: &str) -> Option<Coord> {
    let t = s.trim();
    let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
    inner.split(',').map(|p| p.trim().parse::<i64>().ok()).collect()
}

/// `λ⁻¹ ⊙ A`: every weight shifted by `−λ`.
#[derive(Debug)]
pub struct ShiftedRule<'a> {
    pub inner: &'a dyn KernelRule,
    pub lambda: f64,
}

impl KernelRule for ShiftedRule<'_> {
    fn name(&self) -> String {
        format!("{}-shift({})", self.inner.name(), self.lambda)
    }
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn basepoint(&self) -> Coord {
        self.inner.basepoint()
    }
    fn level(&self, x: &Coord) -> i64 {
        self.inner.level(x)
    }
    fn contains(&self, x: &Coord) -> bool {
        self.inner.contains(x)
    }
    fn nodes_within(&self, radius: i64) -> Vec<Coord> {
        self.inner.nodes_within(radius)
    }
    fn neighbors(&self, x: &Coord, radius: i64) -> Vec<(Coord, f64)> {
        self.inner
            .neighbors(x, radius)
            .into_iter()
            .map(|(y, w)| (y, w - self.lambda))
            .collect()
    }
    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }
    fn max_out_degree(&self) -> Option<usize> {
        self.inner.max_out_degree()
    }
    fn label(&self, x: &Coord) -> String {
        self.inner.label(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coord_codec() {
        assert_eq!(format_coord(&vec![-3]), "-3");
        assert_eq!(format_coord(&vec![1, 0, 1]), "(1,0,1)");
        assert_eq!(parse_coord("(2, -1)"), Some(vec![2, -1]));
        assert_eq!(parse_coord("7"), Some(vec![7]));
        assert_eq!(parse_coord("(a,1)"), None);
    }
}
