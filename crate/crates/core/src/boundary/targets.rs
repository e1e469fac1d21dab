use super::rule::Coord;
use super::BoundaryError;

/// A ray `k ↦ (a₁k + b₁, …, a_d k + b_d)`, written `k`, `-k`, `(k,1)`,
/// `(2k,k)`, `(k+1, 3-k)`, …
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetExpr {
    components: Vec<(i64, i64)>,
}

impl TargetExpr {
    pub fn parse(text: &str) -> Result<TargetExpr, BoundaryError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = match t.strip_prefix('(') {
            Some(rest) => rest
                .strip_suffix(')')
                .ok_or_else(|| BoundaryError::TargetSyntax(format!("unbalanced parenthesis in {text:?}")))?,
            None => &t,
        };
        if inner.is_empty() {
            return Err(BoundaryError::TargetSyntax("empty expression".into()));
        }
        let components = inner.split(',').map(parse_affine).collect::<Result<_, _>>()?;
        Ok(TargetExpr { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn at(&self, k: i64) -> Coord {
        self.components.iter().map(|(a, b)| a * k + b).collect()
    }

    /// Targets for `k = start..=end`.
    pub fn sequence(&self, start: i64, end: i64) -> Vec<Coord> {
        (start..=end).map(|k| self.at(k)).collect()
    }
}

fn parse_affine(s: &str) -> Result<(i64, i64), BoundaryError> {
    let err = || BoundaryError::TargetSyntax(format!("cannot read {s:?} as a*k + b"));
    if s.is_empty() {
        return Err(err());
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > start {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let (mut a, mut b) = (0i64, 0i64);
    for term in terms {
        let (sign, body) = match term.as_bytes()[0] {
            b'+' => (1, &term[1..]),
            b'-' => (-1, &term[1..]),
            _ => (1, term),
        };
        if let Some(coef) = body.strip_suffix('k') {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = if coef.is_empty() { 1 } else { coef.parse::<i64>().map_err(|_| err())? };
            a += sign * c;
        } else {
            b += sign * body.parse::<i64>().map_err(|_| err())?;
        }
    }
    Ok((a, b))
}
