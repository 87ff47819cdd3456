//! Naive reference scanner used to cross-check the library.
//!
//! Works on `char`s in three separate passes: tag every character, classify
//! each line from its tags, then count keywords in a copy of the text where
//! everything except plain code has been blanked out.

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tag {
    Code,
    Comment,
    Literal,
    Newline,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mode {
    Code,
    Line,
    Block,
    Str,
    Chr,
}

#[derive(Debug, PartialEq, Eq, Clone, Copy)]
pub struct Counts {
    pub total: u64,
    pub comment: u64,
    pub blank: u64,
    pub loc: u64,
    pub fors: u64,
    pub whiles: u64,
}

fn is_ws(c: char) -> bool {
    matches!(c, ' ' | '\t' | '\r' | '\u{b}' | '\u{c}')
}

pub fn oracle_counts(text: &str) -> Counts {
    let chars: Vec<char> = text.chars().collect();
    let mut tags = vec![Tag::Code; chars.len()];
    // mode at the start of each line
    let mut line_start_modes = vec![Mode::Code];
    let mut mode = Mode::Code;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        if c == '\n' {
            tags[i] = Tag::Newline;
            if mode != Mode::Block {
                mode = Mode::Code;
            }
            line_start_modes.push(mode);
            i += 1;
            continue;
        }
        match mode {
            Mode::Code => {
                if c == '/' && next == Some('/') {
                    tags[i] = Tag::Comment;
                    tags[i + 1] = Tag::Comment;
                    mode = Mode::Line;
                    i += 2;
                } else if c == '/' && next == Some('*') {
                    tags[i] = Tag::Comment;
                    tags[i + 1] = Tag::Comment;
                    mode = Mode::Block;
                    i += 2;
                } else if c == '"' {
                    tags[i] = Tag::Literal;
                    mode = Mode::Str;
                    i += 1;
                } else if c == '\'' {
                    tags[i] = Tag::Literal;
                    mode = Mode::Chr;
                    i += 1;
                } else {
                    tags[i] = Tag::Code;
                    i += 1;
                }
            }
            Mode::Line => {
                tags[i] = Tag::Comment;
                i += 1;
            }
            Mode::Block => {
                tags[i] = Tag::Comment;
                if c == '*' && next == Some('/') {
                    tags[i + 1] = Tag::Comment;
                    mode = Mode::Code;
                    i += 2;
                } else {
                    i += 1;
                }
            }
            Mode::Str | Mode::Chr => {
                tags[i] = Tag::Literal;
                let quote = if mode == Mode::Str { '"' } else { '\'' };
                if c == '\\' && next.is_some() && next != Some('\n') {
                    tags[i + 1] = Tag::Literal;
                    i += 2;
                } else {
                    if c == quote {
                        mode = Mode::Code;
                    }
                    i += 1;
                }
            }
        }
    }

    // Pass 2: split into lines by Newline tags.
    let mut counts = Counts { total: 0, comment: 0, blank: 0, loc: 0, fors: 0, whiles: 0 };
    let mut line: Vec<usize> = Vec::new();
    let mut line_no = 0;
    let finish = |line: &[usize], line_no: usize, counts: &mut Counts| {
        let code = line.iter().any(|&k| tags[k] == Tag::Literal || (tags[k] == Tag::Code && !is_ws(chars[k])));
        let comment = line.iter().any(|&k| tags[k] == Tag::Comment) || line_start_modes[line_no] == Mode::Block;
        counts.total += 1;
        if !code && comment {
            counts.comment += 1;
        } else if !code {
            counts.blank += 1;
        }
    };
    for (k, tag) in tags.iter().enumerate() {
        if *tag == Tag::Newline {
            finish(&line, line_no, &mut counts);
            line.clear();
            line_no += 1;
        } else {
            line.push(k);
        }
    }
    if !line.is_empty() {
        finish(&line, line_no, &mut counts);
    }
    counts.loc = counts.total - counts.comment;

    // Pass 3: keywords in blanked code.
    let code_only: String = chars.iter().zip(&tags).map(|(&c, &t)| if t == Tag::Code { c } else { ' ' }).collect();
    for word in code_only.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_')) {
        match word {
            "for" => counts.fors += 1,
            "while" => counts.whiles += 1,
            _ => {}
        }
    }
    counts
}
