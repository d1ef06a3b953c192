use crate::diag::{Class, Diagnostic, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// A bare or quoted name.
    Name(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    Dot,
    Eq,
    /// `->`
    Arrow,
    /// `|->`
    MapsTo,
    /// `=>`
    DArrow,
    Newline,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("name `{n}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::MapsTo => "`|->`".into(),
            Tok::DArrow => "`=>`".into(),
            Tok::Newline => "end of line".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

/// Characters allowed in a bare name; anything else must be quoted.
pub fn is_bare_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '*')
}

pub fn is_bare(name: &str) -> bool {
    !name.is_empty() && name.chars().all(is_bare_char)
}

pub fn lex(file: &str, text: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    let err = |line, col, msg: String| {
        Diagnostic::new(
            Class::Lexical,
            Pos {
                file: file.to_owned(),
                line,
                col,
            },
            msg,
        )
    };
    while let Some(&c) = chars.peek() {
        let pos = Pos {
            file: file.to_owned(),
            line,
            col,
        };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '\n' => Some(Tok::Newline),
            _ => None,
        };
        if let Some(tok) = single {
            bump(&mut chars);
            out.push(Token { tok, pos });
            continue;
        }
        match c {
            ' ' | '\t' | '\r' => {
                bump(&mut chars);
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            '=' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    out.push(Token {
                        tok: Tok::DArrow,
                        pos,
                    });
                } else {
                    out.push(Token { tok: Tok::Eq, pos });
                }
            }
            '-' => {
                bump(&mut chars);
                if bump(&mut chars) != Some('>') {
                    return Err(err(pos.line, pos.col, "expected `->` after `-`".into()));
                }
                out.push(Token {
                    tok: Tok::Arrow,
                    pos,
                });
            }
            '|' => {
                bump(&mut chars);
                let a = bump(&mut chars);
                let b = bump(&mut chars);
                if (a, b) != (Some('-'), Some('>')) {
                    return Err(err(pos.line, pos.col, "expected `|->`".into()));
                }
                out.push(Token {
                    tok: Tok::MapsTo,
                    pos,
                });
            }
            '"' => {
                bump(&mut chars);
                let mut s = String::new();
                loop {
                    match bump(&mut chars) {
                        None | Some('\n') => {
                            return Err(err(pos.line, pos.col, "unterminated quoted name".into()))
                        }
                        Some('"') => break,
                        Some('\\') => match bump(&mut chars) {
                            Some(e @ ('"' | '\\')) => s.push(e),
                            Some('n') => s.push('\n'),
                            other => {
                                return Err(err(
                                    line,
                                    col,
                                    format!("unknown escape `\\{}`", other.unwrap_or(' ')),
                                ))
                            }
                        },
                        Some(c) => s.push(c),
                    }
                }
                if s.is_empty() {
                    return Err(err(pos.line, pos.col, "empty quoted name".into()));
                }
                out.push(Token {
                    tok: Tok::Name(s),
                    pos,
                });
            }
            c if is_bare_char(c) => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if !is_bare_char(c) {
                        break;
                    }
                    s.push(c);
                    bump(&mut chars);
                }
                out.push(Token {
                    tok: Tok::Name(s),
                    pos,
                });
            }
            other => return Err(err(line, col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

/// `name` as it should appear in a file.
pub fn quote(name: &str) -> String {
    if is_bare(name) {
        return name.to_owned();
    }
    let mut s = String::with_capacity(name.len() + 2);
    s.push('"');
    for c in name.chars() {
        match c {
            '"' => s.push_str("\\\""),
            '\\' => s.push_str("\\\\"),
            '\n' => s.push_str("\\n"),
            c => s.push(c),
        }
    }
    s.push('"');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex("t", s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn punctuation_and_names() {
        assert_eq!(
            toks("f: a -> b # note\n\"0<=1\" |-> x"),
            vec![
                Tok::Name("f".into()),
                Tok::Colon,
                Tok::Name("a".into()),
                Tok::Arrow,
                Tok::Name("b".into()),
                Tok::Newline,
                Tok::Name("0<=1".into()),
                Tok::MapsTo,
                Tok::Name("x".into()),
            ]
        );
    }

    #[test]
    fn positions_are_one_based() {
        let err = lex("f.cat", "a\n  $").unwrap_err();
        assert_eq!((err.pos.line, err.pos.col), (2, 3));
        assert_eq!(err.class, Class::Lexical);
    }

    #[test]
    fn quoting_round_trips() {
        for name in ["x", "(a,b)", "id_(C,X)", "say \"hi\"", "0<=1"] {
            assert_eq!(toks(&quote(name)), vec![Tok::Name(name.into())]);
        }
    }
}
