//! Line/column aware tokenizer shared by the state and circuit formats.

use std::str::FromStr;

use crate::error::Error;

/// Renders a float with 17 significant digits; round-trips exactly.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next line that is neither blank nor a `#` comment.
    pub(crate) fn next_line(&mut self) -> Option<Line<'a>> {
        for (idx, raw) in self.inner.by_ref() {
            self.last = idx + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            return Some(Line {
                number: idx + 1,
                raw,
                pos: 0,
            });
        }
        None
    }

    pub(crate) fn line_number(&self) -> usize {
        self.last.max(1)
    }
}

pub(crate) struct Line<'a> {
    number: usize,
    raw: &'a str,
    pos: usize,
}

impl<'a> Line<'a> {
    pub(crate) fn number(&self) -> usize {
        self.number
    }

    pub(crate) fn error_at(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn next_token(&mut self) -> Option<(usize, &'a str)> {
        let rest = &self.raw[self.pos..];
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let col = self.pos + start + 1;
        self.pos += start + len;
        Some((col, &tail[..len]))
    }

    /// Next token with its 1-based column.
    pub(crate) fn token(&mut self, what: &str) -> Result<(usize, &'a str), Error> {
        let end_col = self.raw.len() + 1;
        self.next_token()
            .ok_or_else(|| self.error_at(end_col, format!("expected {what}")))
    }

    pub(crate) fn parse<T: FromStr>(&mut self, what: &str) -> Result<T, Error> {
        let (col, tok) = self.token(what)?;
        tok.parse()
            .map_err(|_| self.error_at(col, format!("invalid {what} {tok:?}")))
    }

    pub(crate) fn keyword(&mut self, expected: &str) -> Result<(), Error> {
        let (col, tok) = self.token(expected)?;
        if tok == expected {
            Ok(())
        } else {
            Err(self.error_at(col, format!("expected {expected:?}, found {tok:?}")))
        }
    }

    pub(crate) fn finish(mut self) -> Result<(), Error> {
        match self.next_token() {
            None => Ok(()),
            Some((col, tok)) => {
                Err(self.error_at(col, format!("unexpected trailing token {tok:?}")))
            }
        }
    }
}
