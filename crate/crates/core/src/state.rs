//! Sparse target states and their text format.
//!
//! ```text
//! n 3 s 2
//! 000 7.0710678118654757e-1 0.0000000000000000e0
//! 111 7.0710678118654757e-1 0.0000000000000000e0
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::bits::BasisString;
use crate::error::{Error, Result};
use crate::text::{format_float, Lines};

/// Tolerance on the squared norm of a target state.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// A normalized superposition over a small set of basis strings.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState {
    n: usize,
    terms: Vec<(BasisString, Complex64)>,
}

impl SparseState {
    pub fn new(n: usize, terms: Vec<(BasisString, Complex64)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("state has no terms"));
        }
        let mut seen = HashSet::with_capacity(terms.len());
        let mut norm = 0.0;
        for (x, c) in &terms {
            if x.len() != n {
                return Err(Error::invalid(format!(
                    "bit string {x} has length {}, expected {n}",
                    x.len()
                )));
            }
            if !seen.insert(x) {
                return Err(Error::invalid(format!("duplicate bit string {x}")));
            }
            if *c == Complex64::new(0.0, 0.0) || !c.is_finite() {
                return Err(Error::invalid(format!(
                    "amplitude of {x} must be finite and nonzero"
                )));
            }
            norm += c.norm_sqr();
        }
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::invalid(format!(
                "state norm^2 is {norm}, expected 1"
            )));
        }
        Ok(SparseState { n, terms })
    }

    /// Parses `(bitstring, amplitude)` pairs; all strings must share a length.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, Complex64)>) -> Result<Self> {
        let terms = pairs
            .into_iter()
            .map(|(s, c)| Ok((s.parse::<BasisString>()?, c)))
            .collect::<Result<Vec<_>>>()?;
        let n = terms.first().map_or(0, |(x, _)| x.len());
        Self::new(n, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sparsity.
    pub fn s(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(BasisString, Complex64)] {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &BasisString> {
        self.terms.iter().map(|(x, _)| x)
    }

    pub fn amplitude(&self, x: &BasisString) -> Option<Complex64> {
        self.terms.iter().find(|(y, _)| y == x).map(|(_, c)| *c)
    }

    pub fn total_weight(&self) -> usize {
        self.terms.iter().map(|(x, _)| x.hamming_weight()).sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n {} s {}\n", self.n, self.terms.len());
        for (x, c) in &self.terms {
            let _ = writeln!(out, "{x} {} {}", format_float(c.re), format_float(c.im));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let mut header = lines.next_line().ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "empty state file".into(),
        })?;
        header.keyword("n")?;
        let n: usize = header.parse("qubit count")?;
        header.keyword("s")?;
        let s: usize = header.parse("term count")?;
        header.finish()?;

        let mut terms = Vec::with_capacity(s);
        while let Some(mut line) = lines.next_line() {
            let (col, word) = line.token("bit string")?;
            let x: BasisString = word
                .parse()
                .map_err(|e: Error| line.error_at(col, e.to_string()))?;
            if x.len() != n {
                return Err(line.error_at(
                    col,
                    format!("bit string has length {}, expected {n}", x.len()),
                ));
            }
            let re: f64 = line.parse("real part")?;
            let im: f64 = line.parse("imaginary part")?;
            line.finish()?;
            terms.push((x, Complex64::new(re, im)));
        }
        if terms.len() != s {
            return Err(Error::Parse {
                line: lines.line_number(),
                column: 1,
                message: format!("header declares {s} terms, found {}", terms.len()),
            });
        }
        Self::new(n, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn validation() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(SparseState::from_pairs([("01", c(h)), ("10", c(h))]).is_ok());
        assert!(SparseState::from_pairs([("01", c(h)), ("01", c(h))]).is_err());
        assert!(SparseState::from_pairs([("01", c(1.0)), ("10", c(0.0))]).is_err());
        assert!(SparseState::from_pairs([("01", c(0.5))]).is_err());
        assert!(SparseState::from_pairs([("01", c(1.0)), ("1", c(0.0))]).is_err());
    }

    #[test]
    fn text_round_trip_is_exact() {
        let st = SparseState::from_pairs([
            ("0110", Complex64::new(0.6, 0.0)),
            ("1111", Complex64::new(0.0, -0.8)),
        ])
        .unwrap();
        let text = st.to_text();
        assert_eq!(SparseState::parse(&text).unwrap(), st);
        assert_eq!(SparseState::parse(&text).unwrap().to_text(), text);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = SparseState::parse("n 2 s 1\n01 1.0 zz\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 2,
                    column: 8,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = SparseState::parse("n 2 s 1\n011 1.0 0\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 2,
                    column: 1,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = SparseState::parse("n 2 s 2\n01 1.0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err:?}");
    }
}
