//! The APX text format: `arg(a).` and `att(a,b).` statements.
//!
//! Statements may be separated by any whitespace; `%` starts a comment that
//! runs to the end of the line. Names match `[A-Za-z0-9_]+`.

use crate::framework::Framework;
use crate::{Error, Result};

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_blank();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn word(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        out
    }

    fn name(&mut self) -> Result<String> {
        self.skip_blank();
        let name = self.word();
        if name.is_empty() {
            return Err(self.error("expected an argument name"));
        }
        Ok(name)
    }
}

/// Parses an APX document into a framework.
///
/// Arguments are indexed in order of declaration. An attack may precede the
/// declaration of its endpoints; undeclared endpoints are reported as
/// [`Error::UnknownArgument`].
pub fn parse_apx(text: &str) -> Result<Framework> {
    let mut cur = Cursor::new(text);
    let mut names: Vec<String> = Vec::new();
    let mut attacks: Vec<(String, String)> = Vec::new();
    loop {
        cur.skip_blank();
        if cur.peek().is_none() {
            break;
        }
        let keyword = cur.word();
        match keyword.as_str() {
            "arg" => {
                cur.expect('(')?;
                let name = cur.name()?;
                if names.contains(&name) {
                    return Err(Error::DuplicateArgument(name));
                }
                names.push(name);
                cur.expect(')')?;
            }
            "att" => {
                cur.expect('(')?;
                let x = cur.name()?;
                cur.expect(',')?;
                let y = cur.name()?;
                cur.expect(')')?;
                attacks.push((x, y));
            }
            "" => {
                let c = cur.peek().unwrap_or(' ');
                return Err(cur.error(format!("unexpected character `{c}`")));
            }
            other => return Err(cur.error(format!("unknown statement `{other}`"))),
        }
        cur.expect('.')?;
    }
    Framework::new(names, attacks)
}

/// Writes a framework as APX, one statement per line, in index order.
pub fn to_apx(f: &Framework) -> String {
    let mut out = String::new();
    for name in f.names() {
        out.push_str(&format!("arg({name}).\n"));
    }
    for &(x, y) in f.attacks() {
        out.push_str(&format!("att({},{}).\n", f.name(x), f.name(y)));
    }
    out
}
