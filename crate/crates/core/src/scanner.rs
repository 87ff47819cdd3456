//! Comment-aware line census for C-like sources.
//!
//! A single pass over the bytes drives a five-state machine (normal code,
//! line comment, block comment, string literal, char literal). Every physical
//! line ends up as [`LineClass::Code`], [`LineClass::Comment`] or
//! [`LineClass::Blank`], and `for`/`while` are counted as whole identifiers
//! found in normal code only.
//!
//! Conventions:
//!
//! - Lines are separated by `\n`; a preceding `\r` is treated as whitespace,
//!   so CRLF and LF files classify identically. A final line without a
//!   trailing newline still counts.
//! - Whitespace means ASCII space, tab, CR, vertical tab and form feed.
//! - A newline always terminates a line comment and an unterminated string or
//!   char literal. Backslash line splicing is not modelled.
//! - A line that mixes code and comment is code. A whitespace-only line inside
//!   a block comment is a comment line.
//! - `LOC = total_lines - comment_lines`, so blank lines count toward LOC.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScanError {
    #[error("invalid UTF-8 at byte offset {offset}")]
    Encoding { offset: usize },
}

/// Per-file line and loop census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceStats {
    pub file_name: String,
    pub total_lines: u64,
    pub comment_lines: u64,
    pub blank_lines: u64,
    pub loc: u64,
    pub for_count: u64,
    pub while_count: u64,
    /// The file ended inside a `/* ... */` comment. The trailing lines were
    /// classified as comments; callers surface this as a warning.
    #[serde(default)]
    pub unterminated_block_comment: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineClass {
    Code,
    Comment,
    Blank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Normal,
    LineComment,
    BlockComment,
    StringLiteral,
    CharLiteral,
}

#[derive(Debug, Default)]
struct Census {
    lines: Vec<LineClass>,
    for_count: u64,
    while_count: u64,
    unterminated_block_comment: bool,
}

fn is_blank_byte(b: u8) -> bool {
    matches!(b, b' ' | b'\t' | b'\r' | 0x0b | 0x0c)
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

fn line_class(has_code: bool, has_comment: bool) -> LineClass {
    if has_code {
        LineClass::Code
    } else if has_comment {
        LineClass::Comment
    } else {
        LineClass::Blank
    }
}

fn run(text: &[u8]) -> Census {
    let mut census = Census::default();
    let mut state = State::Normal;
    let mut has_code = false;
    let mut has_comment = false;
    let mut line_open = false;
    let mut i = 0;

    while i < text.len() {
        let b = text[i];
        if !line_open {
            line_open = true;
            has_code = false;
            has_comment = state == State::BlockComment;
        }
        if b == b'\n' {
            census.lines.push(line_class(has_code, has_comment));
            line_open = false;
            if state != State::BlockComment {
                state = State::Normal;
            }
            i += 1;
            continue;
        }
        let next = text.get(i + 1).copied();
        match state {
            State::Normal => match b {
                b'/' if next == Some(b'/') => {
                    state = State::LineComment;
                    has_comment = true;
                    i += 2;
                }
                b'/' if next == Some(b'*') => {
                    state = State::BlockComment;
                    has_comment = true;
                    i += 2;
                }
                b'"' => {
                    state = State::StringLiteral;
                    has_code = true;
                    i += 1;
                }
                b'\'' => {
                    state = State::CharLiteral;
                    has_code = true;
                    i += 1;
                }
                _ if is_ident_byte(b) => {
                    let start = i;
                    while i < text.len() && is_ident_byte(text[i]) {
                        i += 1;
                    }
                    match &text[start..i] {
                        b"for" => census.for_count += 1,
                        b"while" => census.while_count += 1,
                        _ => {}
                    }
                    has_code = true;
                }
                _ => {
                    if !is_blank_byte(b) {
                        has_code = true;
                    }
                    i += 1;
                }
            },
            State::LineComment => i += 1,
            State::BlockComment => {
                if b == b'*' && next == Some(b'/') {
                    state = State::Normal;
                    i += 2;
                } else {
                    i += 1;
                }
            }
            State::StringLiteral | State::CharLiteral => {
                let close = if state == State::StringLiteral { b'"' } else { b'\'' };
                if b == b'\\' && next.is_some_and(|n| n != b'\n') {
                    i += 2;
                } else {
                    if b == close {
                        state = State::Normal;
                    }
                    i += 1;
                }
            }
        }
    }

    if line_open {
        census.lines.push(line_class(has_code, has_comment));
    }
    census.unterminated_block_comment = state == State::BlockComment;
    census
}

/// Classifies each physical line of `source_text`.
pub fn classify_lines(source_text: &str) -> Vec<LineClass> {
    run(source_text.as_bytes()).lines
}

/// Scans a source text and returns its line and loop census.
pub fn scan_source(source_text: &str, file_name: &str) -> SourceStats {
    let census = run(source_text.as_bytes());
    let mut comment_lines = 0;
    let mut blank_lines = 0;
    for class in &census.lines {
        match class {
            LineClass::Comment => comment_lines += 1,
            LineClass::Blank => blank_lines += 1,
            LineClass::Code => {}
        }
    }
    let total_lines = census.lines.len() as u64;
    SourceStats {
        file_name: file_name.to_owned(),
        total_lines,
        comment_lines,
        blank_lines,
        loc: total_lines - comment_lines,
        for_count: census.for_count,
        while_count: census.while_count,
        unterminated_block_comment: census.unterminated_block_comment,
    }
}

/// Like [`scan_source`], but validates the encoding of raw file contents first.
pub fn scan_bytes(bytes: &[u8], file_name: &str) -> Result<SourceStats, ScanError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ScanError::Encoding { offset: e.valid_up_to() })?;
    Ok(scan_source(text, file_name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use LineClass::*;

    fn counts(s: &SourceStats) -> (u64, u64, u64, u64, u64, u64) {
        (s.total_lines, s.comment_lines, s.blank_lines, s.loc, s.for_count, s.while_count)
    }

    #[test]
    fn empty_input() {
        assert_eq!(counts(&scan_source("", "e.c")), (0, 0, 0, 0, 0, 0));
        assert!(classify_lines("").is_empty());
    }

    #[test]
    fn block_comment_line_between_code() {
        let s = scan_source("int main(){\n/* hi */\n}\n", "m.c");
        assert_eq!(counts(&s), (3, 1, 0, 2, 0, 0));
    }

    #[test]
    fn while_inside_trailing_comment_is_ignored() {
        let s = scan_source("for(;;){} /* while */\n", "l.c");
        assert_eq!(counts(&s), (1, 0, 0, 1, 1, 0));
    }

    #[test]
    fn multi_line_block_comment() {
        assert_eq!(classify_lines("/* a\nb\n*/\n"), vec![Comment, Comment, Comment]);
    }

    #[test]
    fn mixed_line_is_code() {
        assert_eq!(classify_lines("x = 1; // note\n"), vec![Code]);
    }

    #[test]
    fn whitespace_lines_are_blank() {
        assert_eq!(classify_lines("\n  \n"), vec![Blank, Blank]);
    }

    #[test]
    fn empty_line_inside_block_comment_is_comment() {
        assert_eq!(classify_lines("/*\n\n   \n*/\nint x;"), vec![Comment, Comment, Comment, Comment, Code]);
    }

    #[test]
    fn final_line_without_newline_counts() {
        let s = scan_source("int a;\nint b;", "f.c");
        assert_eq!(s.total_lines, 2);
        assert_eq!(s.loc, 2);
    }

    #[test]
    fn crlf_matches_lf() {
        let lf = "int a; // c\n/* x\n y */\n\nfor(;;);\n";
        let crlf = lf.replace('\n', "\r\n");
        let (a, b) = (scan_source(lf, "a"), scan_source(&crlf, "a"));
        assert_eq!(counts(&a), counts(&b));
        assert_eq!(classify_lines(lf), classify_lines(&crlf));
    }

    #[test]
    fn loop_keywords_are_whole_identifiers() {
        let s = scan_source("int fortune, whiled, for_each, _for; for(;;); while(1);\n", "k.c");
        assert_eq!((s.for_count, s.while_count), (1, 1));
    }

    #[test]
    fn do_while_counts_its_while() {
        let s = scan_source("do {\n  i++;\n} while (i < 3);\n", "d.c");
        assert_eq!(s.while_count, 1);
    }

    #[test]
    fn keywords_in_literals_are_ignored() {
        let s = scan_source("puts(\"for while /* not a comment\"); c = 'f'; d = '\\''; e = \"\\\"for\";\n", "s.c");
        assert_eq!((s.for_count, s.while_count, s.comment_lines), (0, 0, 0));
        assert_eq!(classify_lines("s = \"/*\";\nfor(;;);\n"), vec![Code, Code]);
        assert_eq!(scan_source("s = \"/*\";\nfor(;;);\n", "s").for_count, 1);
    }

    #[test]
    fn comment_opener_in_char_literal() {
        let s = scan_source("c = '/'; d = '*'; while(0);\n", "c.c");
        assert_eq!((s.comment_lines, s.while_count), (0, 1));
    }

    #[test]
    fn newline_terminates_unclosed_string() {
        let s = scan_source("s = \"abc\nfor(;;);\n", "u.c");
        assert_eq!(s.for_count, 1);
    }

    #[test]
    fn preprocessor_lines_are_code() {
        assert_eq!(classify_lines("#include <stdio.h>\n#define N 3\n"), vec![Code, Code]);
    }

    #[test]
    fn unterminated_block_comment_is_flagged() {
        let s = scan_source("int a;\n/* open\nfor(;;);\n\n", "o.c");
        assert!(s.unterminated_block_comment);
        assert_eq!(counts(&s), (4, 3, 0, 1, 0, 0));
        assert!(!scan_source("/* closed */", "c").unterminated_block_comment);
    }

    #[test]
    fn screenshot_one_subtraction_rule() {
        // 67 comment lines among 675 physical lines leaves 608 LOC.
        let mut text = String::new();
        for i in 0..675 {
            if i < 67 {
                text.push_str("// header\n");
            } else {
                text.push_str("x++;\n");
            }
        }
        let s = scan_source(&text, "four.c");
        assert_eq!((s.total_lines, s.comment_lines, s.loc), (675, 67, 608));
    }

    #[test]
    fn invalid_utf8_reports_offset() {
        let err = scan_bytes(b"int a;\n\xff\xfe", "bad.c").unwrap_err();
        assert_eq!(err, ScanError::Encoding { offset: 7 });
        assert!(scan_bytes(b"int a;\n", "ok.c").is_ok());
    }

    fn c_like() -> impl Strategy<Value = String> {
        let piece = prop_oneof![
            Just("for".to_owned()),
            Just("while".to_owned()),
            Just("/*".to_owned()),
            Just("*/".to_owned()),
            Just("//".to_owned()),
            Just("\"".to_owned()),
            Just("'".to_owned()),
            Just("\\".to_owned()),
            Just("\n".to_owned()),
            Just("\r\n".to_owned()),
            Just(" ".to_owned()),
            "[a-z_(){};=0-9]{1,4}",
        ];
        prop::collection::vec(piece, 0..60).prop_map(|v| v.concat())
    }

    proptest! {
        #[test]
        fn aggregation_matches_line_classes(text in c_like()) {
            let stats = scan_source(&text, "p.c");
            let lines = classify_lines(&text);
            prop_assert_eq!(stats.total_lines, lines.len() as u64);
            prop_assert_eq!(stats.comment_lines, lines.iter().filter(|c| **c == Comment).count() as u64);
            prop_assert_eq!(stats.blank_lines, lines.iter().filter(|c| **c == Blank).count() as u64);
            prop_assert_eq!(stats.loc, stats.total_lines - stats.comment_lines);
            prop_assert!(stats.comment_lines + stats.blank_lines <= stats.total_lines);
            prop_assert_eq!(&stats, &scan_source(&text, "p.c"));
        }

        #[test]
        fn appended_comment_line_only_bumps_comment_count(text in c_like()) {
            let base = if text.is_empty() || text.ends_with('\n') { text } else { format!("{text}\n") };
            let base_stats = scan_source(&base, "p.c");
            prop_assume!(!base_stats.unterminated_block_comment);
            let after = scan_source(&format!("{base}/* for while */\n"), "p.c");
            prop_assert_eq!(after.total_lines, base_stats.total_lines + 1);
            prop_assert_eq!(after.comment_lines, base_stats.comment_lines + 1);
            prop_assert_eq!(after.blank_lines, base_stats.blank_lines);
            prop_assert_eq!(after.loc, base_stats.loc);
            prop_assert_eq!(after.for_count, base_stats.for_count);
            prop_assert_eq!(after.while_count, base_stats.while_count);
        }

        #[test]
        fn for_in_string_literal_is_invisible(prefix in "[a-z =;]{0,10}") {
            let plain = scan_source(&format!("{prefix}x;\n"), "s.c");
            let quoted = scan_source(&format!("{prefix}x; s = \"for\";\n"), "s.c");
            prop_assert_eq!(plain.for_count, quoted.for_count);
            prop_assert_eq!(plain.while_count, quoted.while_count);
        }
    }
}
