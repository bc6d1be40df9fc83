//! Plain-text and JSON instance formats.

pub mod dimacs;
pub mod flowshop;
pub mod packing;
pub mod roster;

pub use dimacs::{parse_dimacs, write_dimacs, DimacsError};
pub use flowshop::{parse_flowshop, parse_taillard, write_flowshop};
pub use packing::{parse_packing, write_packing};
pub use roster::{parse_roster, write_roster};

/// Error from the whitespace-separated integer formats.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("unexpected end of input, expected {0}")]
    Truncated(&'static str),
    #[error("invalid integer {token:?} for {what}")]
    BadInteger { what: &'static str, token: String },
    #[error("{0} trailing token(s) after the last expected value")]
    Trailing(usize),
    #[error("{0}")]
    Layout(String),
    #[error(transparent)]
    Instance(#[from] xdhh_core::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Cursor over whitespace-separated tokens.
pub(crate) struct Tokens<'a> {
    inner: std::str::SplitWhitespace<'a>,
}

impl<'a> Tokens<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Self { inner: text.split_whitespace() }
    }

    pub(crate) fn next<T: std::str::FromStr>(&mut self, what: &'static str) -> Result<T, FormatError> {
        let tok = self.inner.next().ok_or(FormatError::Truncated(what))?;
        tok.parse().map_err(|_| FormatError::BadInteger {
            what,
            token: tok.to_string(),
        })
    }

    pub(crate) fn finish(self) -> Result<(), FormatError> {
        match self.inner.count() {
            0 => Ok(()),
            n => Err(FormatError::Trailing(n)),
        }
    }
}
