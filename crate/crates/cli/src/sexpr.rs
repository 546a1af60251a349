//! Minimal s-expression reader with source positions.
//!
//! Symbols are runs of characters other than whitespace, parentheses and
//! `;`; a `;` starts a comment running to end of line.

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Sym(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Sym(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self {
            Sexp::Sym(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Sym(..) => None,
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some(';') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => return,
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, CliError> {
        self.skip_trivia();
        let pos = self.pos();
        match self.chars.peek() {
            None => Err(err_at(pos, "an expression")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => return Err(err_at(self.pos(), "`)`")),
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List(items, pos));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(')') => Err(err_at(pos, "an expression, found `)`")),
            Some(_) => {
                let mut sym = String::new();
                while let Some(c) = self.chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | ';') {
                        break;
                    }
                    sym.push(self.bump().unwrap());
                }
                Ok(Sexp::Sym(sym, pos))
            }
        }
    }
}

fn err_at(pos: Pos, expected: &str) -> CliError {
    CliError::Parse {
        line: pos.line,
        col: pos.col,
        expected: expected.to_string(),
    }
}

/// Reads every top-level form in `text`.
pub fn read_all(text: &str) -> Result<Vec<Sexp>, CliError> {
    let mut reader = Reader::new(text);
    let mut out = Vec::new();
    loop {
        reader.skip_trivia();
        if reader.chars.peek().is_none() {
            return Ok(out);
        }
        out.push(reader.read()?);
    }
}
