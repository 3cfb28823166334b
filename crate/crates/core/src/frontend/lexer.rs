use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Identifier starting with a lowercase letter (constant or predicate).
    Lower(String),
    /// Identifier starting with an uppercase letter or `_`.
    Upper(String),
    Number(String),
    Quoted(String),
    Section(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Pipe,
    Minus,
    At,
    Arrow,
    Subsumed,
    Slash,
    Equals,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const SECTIONS: [&str; 4] = ["ontology", "mapping", "database", "signature"];

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    macro_rules! advance {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: start_line,
                column: start_col,
            })
        };
        if c.is_whitespace() {
            advance!();
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance!();
            }
            continue;
        }
        if c == '%' {
            let mut word = String::new();
            advance!();
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                word.push(chars[i]);
                advance!();
            }
            if SECTIONS.contains(&word.as_str()) {
                push(&mut out, Tok::Section(word));
            } else {
                while i < chars.len() && chars[i] != '\n' {
                    advance!();
                }
            }
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut word = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                word.push(chars[i]);
                advance!();
            }
            let first = word.chars().next().unwrap();
            push(
                &mut out,
                if first.is_uppercase() || first == '_' {
                    Tok::Upper(word)
                } else {
                    Tok::Lower(word)
                },
            );
            continue;
        }
        if c.is_ascii_digit() {
            let mut word = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                word.push(chars[i]);
                advance!();
            }
            push(&mut out, Tok::Number(word));
            continue;
        }
        if c == '"' {
            let mut word = String::new();
            advance!();
            loop {
                if i >= chars.len() {
                    return Err(Error::syntax(start_line, start_col, "unterminated string"));
                }
                match chars[i] {
                    '"' => {
                        advance!();
                        break;
                    }
                    '\\' if i + 1 < chars.len() => {
                        advance!();
                        word.push(chars[i]);
                        advance!();
                    }
                    ch => {
                        word.push(ch);
                        advance!();
                    }
                }
            }
            push(&mut out, Tok::Quoted(word));
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, width) = match (c, next) {
            ('<', Some('-')) => (Tok::Arrow, 2),
            (':', Some('-')) => (Tok::Arrow, 2),
            ('[', Some('=')) => (Tok::Subsumed, 2),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('{', _) => (Tok::LBrace, 1),
            ('}', _) => (Tok::RBrace, 1),
            (',', _) => (Tok::Comma, 1),
            ('.', _) => (Tok::Dot, 1),
            ('|', _) => (Tok::Pipe, 1),
            ('-', _) => (Tok::Minus, 1),
            ('@', _) => (Tok::At, 1),
            ('/', _) => (Tok::Slash, 1),
            ('=', _) => (Tok::Equals, 1),
            _ => {
                return Err(Error::syntax(
                    start_line,
                    start_col,
                    format!("unexpected character `{c}`"),
                ))
            }
        };
        push(&mut out, tok);
        for _ in 0..width {
            advance!();
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}
