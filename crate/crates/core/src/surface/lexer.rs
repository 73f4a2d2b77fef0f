use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u32),
    /// `#name`
    Directive(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    Define,
    FatArrow,
    Arrow,
    Amp,
    Bar,
    Tilde,
    At,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Directive(d) => write!(f, "`#{d}`"),
            Tok::Eof => f.write_str("end of input"),
            other => {
                let s = match other {
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::Comma => ",",
                    Tok::Dot => ".",
                    Tok::Colon => ":",
                    Tok::Define => ":=",
                    Tok::FatArrow => "=>",
                    Tok::Arrow => "->",
                    Tok::Amp => "&",
                    Tok::Bar => "|",
                    Tok::Tilde => "~",
                    Tok::At => "@",
                    Tok::Slash => "/",
                    _ => unreachable!(),
                };
                write!(f, "`{s}`")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// Lexical error: unexpected character at a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub line: usize,
    pub column: usize,
    pub found: char,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Spanned>, LexError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut push = |tok, line, column| out.push(Spanned { tok, line, column });
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let peek = chars.get(i + 1).copied();
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && peek == Some('-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let word = |mut j: usize| {
            // identifiers may contain `-` between letters, as in `il-bot`
            while j < chars.len()
                && (is_ident_char(chars[j])
                    || (chars[j] == '-' && chars.get(j + 1).is_some_and(|c| c.is_ascii_alphabetic())))
            {
                j += 1;
            }
            j
        };
        if is_ident_start(c) {
            let end = word(i);
            let s: String = chars[i..end].iter().collect();
            col += end - i;
            i = end;
            push(Tok::Ident(s), start_line, start_col);
            continue;
        }
        if c == '#' && peek.is_some_and(is_ident_start) {
            let end = word(i + 1);
            let s: String = chars[i + 1..end].iter().collect();
            col += end - i;
            i = end;
            push(Tok::Directive(s), start_line, start_col);
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            let n = s.parse().map_err(|_| LexError {
                line,
                column: col,
                found: c,
            })?;
            col += j - i;
            i = j;
            push(Tok::Num(n), start_line, start_col);
            continue;
        }
        let (tok, len) = match (c, peek) {
            (':', Some('=')) => (Tok::Define, 2),
            ('=', Some('>')) => (Tok::FatArrow, 2),
            ('-', Some('>')) => (Tok::Arrow, 2),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            ('{', _) => (Tok::LBrace, 1),
            ('}', _) => (Tok::RBrace, 1),
            (',', _) => (Tok::Comma, 1),
            ('.', _) => (Tok::Dot, 1),
            (':', _) => (Tok::Colon, 1),
            ('&', _) => (Tok::Amp, 1),
            ('|', _) => (Tok::Bar, 1),
            ('~', _) => (Tok::Tilde, 1),
            ('@', _) => (Tok::At, 1),
            ('/', _) => (Tok::Slash, 1),
            _ => {
                return Err(LexError {
                    line,
                    column: col,
                    found: c,
                })
            }
        };
        i += len;
        col += len;
        push(tok, start_line, start_col);
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}
