//! Small helpers shared across modules.

use std::cmp::Ordering;

/// Numeric-aware label order: runs of ASCII digits (with an optional leading
/// minus sign at the start of a run) compare as integers, everything else
/// compares bytewise. `"2" < "10"`, `"-3" < "1"`, `"(1,2)" < "(1,10)"`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (ta, tb) = (tokens(a), tokens(b));
    for (x, y) in ta.iter().zip(&tb) {
        let ord = match (x, y) {
            (Token::Num(p), Token::Num(q)) => p.cmp(q),
            (Token::Num(_), Token::Text(_)) => Ordering::Less,
            (Token::Text(_), Token::Num(_)) => Ordering::Greater,
            (Token::Text(p), Token::Text(q)) => p.cmp(q),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ta.len().cmp(&tb.len()).then_with(|| a.cmp(b))
}

#[derive(Debug)]
enum Token<'a> {
    Num(i128),
    Text(&'a str),
}

fn tokens(s: &str) -> Vec<Token<'_>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let neg = bytes[i] == b'-'
            && i + 1 < bytes.len()
            && bytes[i + 1].is_ascii_digit()
            && (i == 0 || !bytes[i - 1].is_ascii_alphanumeric());
        if bytes[i].is_ascii_digit() || neg {
            let start = i;
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            match s[start..i].parse::<i128>() {
                Ok(v) => out.push(Token::Num(v)),
                Err(_) => out.push(Token::Text(&s[start..i])),
            }
        } else {
            let start = i;
            while i < bytes.len() && !bytes[i].is_ascii_digit() && bytes[i] != b'-' {
                i += 1;
            }
            if i == start {
                i += 1;
            }
            out.push(Token::Text(&s[start..i]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_numbers_numerically() {
        let mut v = vec!["10", "2", "-3", "a", "1", "(1,10)", "(1,2)"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, vec!["-3", "1", "2", "10", "(1,2)", "(1,10)", "a"]);
    }

    #[test]
    fn total_on_distinct_strings() {
        assert_ne!(natural_cmp("01", "1"), Ordering::Equal);
        assert_eq!(natural_cmp("x", "x"), Ordering::Equal);
    }
}

/// One named check in a report.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

impl Assertion {
    pub fn new(name: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        Assertion { name: name.into(), pass, witness: witness.into() }
    }

    /// Passes when `gap ≤ tol`; the witness records the gap.
    pub fn within(name: impl Into<String>, gap: f64, tol: f64) -> Self {
        Self::new(name, gap <= tol, format!("gap {gap:e} (tol {tol:e})"))
    }
}

/// `|a − b|`, with equal infinities at distance 0.
pub fn abs_gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs()
    }
}
