//! Error counting over compiler diagnostics logs.
//!
//! One matching line is one error; a multi-line diagnostic counts once through
//! its head line. Line numbers in [`ErrorReport`] are 1-based.

use regex::{Regex, RegexBuilder};
use thiserror::Error;

/// Matches the word `error`, an optional code token, then a colon. Covers the
/// GCC/Clang shape `file:1:2: error: ...` and the MSVC shape
/// `file(1): error C2065: ...`. Compiled case-insensitively by default.
pub const DEFAULT_ERROR_PATTERN: &str = r"\berror(?:\s+[A-Za-z]*[0-9]+)?\s*:";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("invalid error pattern `{pattern}` at offset {offset}: {message}")]
    Syntax { pattern: String, offset: usize, message: String },
    #[error("error pattern `{pattern}` could not be compiled: {message}")]
    Build { pattern: String, message: String },
}

impl PatternError {
    /// Byte offset of the offending construct, when the parser reported one.
    pub fn offset(&self) -> Option<usize> {
        match self {
            PatternError::Syntax { offset, .. } => Some(*offset),
            PatternError::Build { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ErrorPattern {
    pattern_text: String,
    case_sensitive: bool,
    regex: Regex,
}

impl ErrorPattern {
    pub fn new(pattern_text: &str, case_sensitive: bool) -> Result<Self, PatternError> {
        if let Err(err) =
            regex_syntax::ParserBuilder::new().case_insensitive(!case_sensitive).build().parse(pattern_text)
        {
            let offset = match &err {
                regex_syntax::Error::Parse(e) => e.span().start.offset,
                regex_syntax::Error::Translate(e) => e.span().start.offset,
                _ => 0,
            };
            let message = match &err {
                regex_syntax::Error::Parse(e) => e.kind().to_string(),
                regex_syntax::Error::Translate(e) => e.kind().to_string(),
                other => other.to_string(),
            };
            return Err(PatternError::Syntax { pattern: pattern_text.to_owned(), offset, message });
        }
        let regex = RegexBuilder::new(pattern_text)
            .case_insensitive(!case_sensitive)
            .build()
            .map_err(|e| PatternError::Build { pattern: pattern_text.to_owned(), message: e.to_string() })?;
        Ok(ErrorPattern { pattern_text: pattern_text.to_owned(), case_sensitive, regex })
    }

    pub fn pattern_text(&self) -> &str {
        &self.pattern_text
    }

    pub fn case_sensitive(&self) -> bool {
        self.case_sensitive
    }

    pub fn is_match(&self, line: &str) -> bool {
        self.regex.is_match(line)
    }
}

impl Default for ErrorPattern {
    fn default() -> Self {
        ErrorPattern::new(DEFAULT_ERROR_PATTERN, false).expect("built-in pattern compiles")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorReport {
    pub log_name: String,
    pub error_count: u64,
    pub matched_line_numbers: Vec<usize>,
}

/// Counts the lines of `log_text` matching `pattern`.
pub fn count_errors(log_text: &str, log_name: &str, pattern: &ErrorPattern) -> ErrorReport {
    let matched_line_numbers: Vec<usize> =
        log_text.lines().enumerate().filter(|(_, line)| pattern.is_match(line)).map(|(i, _)| i + 1).collect();
    ErrorReport { log_name: log_name.to_owned(), error_count: matched_line_numbers.len() as u64, matched_line_numbers }
}
