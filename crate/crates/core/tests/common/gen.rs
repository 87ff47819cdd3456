//! Deterministic generators for C-like sources and compiler logs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CODE: &[&str] = &[
    "int main(void) {",
    "}",
    "for (i = 0; i < n; i++) {",
    "while (x > 0) x--;",
    "do { y++; } while (y < 10);",
    "int fortune = forward + whilex;",
    "#include <stdio.h>",
    "#define LOOP for(;;)",
    "x = a / b * c;",
    "p = q/ *r;",
    "return 0;",
    "for_each(v); _while = 1;",
];

const FRAGMENTS: &[&str] = &[
    "puts(\"for while\");",
    "s = \"/* not a comment\";",
    "s = \"// nor this\";",
    "s = \"esc \\\" for \\\\\";",
    "c = '\\'';",
    "c = '\"';",
    "c = '/';",
    "c = '*'; d = '/';",
    "t = \"*/\";",
    "u = \"unterminated for",
    "v = 'x",
    "f = \"a\\\nb\";",
    "ñfor = \"é\\é\"; /* ü */",
];

fn piece(rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..10) {
        0..=3 => CODE[rng.random_range(0..CODE.len())].to_owned(),
        4..=5 => FRAGMENTS[rng.random_range(0..FRAGMENTS.len())].to_owned(),
        6 => format!("// {} for while", rng.random_range(0..100)),
        7 => {
            let inner: Vec<&str> = (0..rng.random_range(0..3))
                .map(|_| ["for", "while", "\"", "'", "//", "\n", " "][rng.random_range(0..7)])
                .collect();
            format!("/* {} */", inner.concat())
        }
        8 => "/* open".to_owned(),
        _ => "*/".to_owned(),
    }
}

/// One random file: lines built from code, literals and comment pieces, with
/// mixed LF/CRLF endings, blank and whitespace-only lines.
pub fn c_like_file(rng: &mut ChaCha8Rng) -> String {
    let mut out = String::new();
    let lines = rng.random_range(0..40);
    for _ in 0..lines {
        let indent = ["", "  ", "\t", "    "][rng.random_range(0..4)];
        let mut line = String::from(indent);
        match rng.random_range(0..8) {
            0 => {}
            1 => line.push_str(" \t "),
            _ => {
                for _ in 0..rng.random_range(1..4) {
                    line.push_str(&piece(rng));
                    line.push(' ');
                }
            }
        }
        out.push_str(&line);
        out.push_str(if rng.random_bool(0.3) { "\r\n" } else { "\n" });
    }
    if rng.random_bool(0.2) {
        out.push_str(&piece(rng));
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Builds a source with exactly the requested counts: `comment` comment
/// lines, `fors` + `whiles` loop lines, and plain code for the rest.
pub fn source_with_counts(total: usize, comment: usize, fors: usize, whiles: usize) -> String {
    assert!(comment + fors + whiles <= total);
    let mut out = String::new();
    for i in 0..total {
        let line = if i < comment {
            if i % 3 == 0 {
                "/* block comment with for and while */".to_owned()
            } else {
                format!("// note {i}: while for")
            }
        } else if i < comment + fors {
            format!("for (int i{i} = 0; i{i} < 3; i{i}++) puts(\"while\");")
        } else if i < comment + fors + whiles {
            "while (n-- > 0) { /* for */ }".to_owned()
        } else {
            format!("x{i} = x{i} + 1; // tail comment")
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// GCC-style log with `errors` error lines interleaved with warnings and notes.
pub fn gcc_log(file: &str, errors: usize, warnings: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!("{file}: In function 'main':\n"));
    for i in 0..errors.max(warnings) {
        if i < errors {
            out.push_str(&format!("{file}:{}:9: error: 'v{i}' undeclared (first use in this function)\n", 10 + i));
            out.push_str(&format!("{file}:{}:9: note: each undeclared identifier is reported only once\n", 10 + i));
        }
        if i < warnings {
            out.push_str(&format!("{file}:{}:5: warning: unused variable 'w{i}' [-Wunused-variable]\n", 200 + i));
        }
    }
    out
}
