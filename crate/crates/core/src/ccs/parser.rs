//! Text format for CCS specifications.
//!
//! ```text
//! # comment
//! X = a.X;
//! main = (X | 'a.0) | 'a.b.0;
//! ```
//!
//! Co-names carry a leading apostrophe, `tau` is the internal action,
//! `P\{a,b}` restricts, `P[new/old, ...]` relabels. Postfix operators bind
//! tightest, then prefixing, then `|` (left associative), then `+`. Every
//! operand of `+` must be a guarded sum.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::ast::{CcsAction, Definitions, Proc, Process};
use super::CcsError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Zero,
    Apos,
    Dot,
    Plus,
    Bar,
    Backslash,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Slash,
    Comma,
    LParen,
    RParen,
    Eq,
    Semi,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, CcsError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line_no = li + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Name(chars[start..i].iter().collect()),
                    line: line_no,
                    col,
                });
                continue;
            }
            let tok = match c {
                '0' => Tok::Zero,
                '\'' => Tok::Apos,
                '.' => Tok::Dot,
                '+' => Tok::Plus,
                '|' => Tok::Bar,
                '\\' => Tok::Backslash,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '/' => Tok::Slash,
                ',' => Tok::Comma,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '=' => Tok::Eq,
                ';' => Tok::Semi,
                other => {
                    return Err(CcsError::Syntax {
                        line: line_no,
                        col,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            };
            out.push(Token {
                tok,
                line: line_no,
                col,
            });
            i += 1;
        }
    }
    let line = text.lines().count().max(1);
    out.push(Token {
        tok: Tok::Eof,
        line,
        col: 1,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, CcsError> {
        let (line, col) = self.here();
        Err(CcsError::Syntax {
            line,
            col,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), CcsError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {:?}", self.peek()))
        }
    }

    fn name(&mut self, what: &str) -> Result<String, CcsError> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.bump();
                Ok(n)
            }
            other => self.error(format!("expected {what}, found {other:?}")),
        }
    }

    fn sum(&mut self) -> Result<Proc, CcsError> {
        let start = self.here();
        let first = self.par()?;
        if *self.peek() != Tok::Plus {
            return Ok(first);
        }
        let mut summands = Vec::new();
        absorb_summand(&first, start, &mut summands)?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let at = self.here();
            let next = self.par()?;
            absorb_summand(&next, at, &mut summands)?;
        }
        Ok(Arc::new(Process::Sum(summands)))
    }

    fn par(&mut self) -> Result<Proc, CcsError> {
        let mut left = self.prefix()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let right = self.prefix()?;
            left = Process::par(left, right);
        }
        Ok(left)
    }

    fn prefix(&mut self) -> Result<Proc, CcsError> {
        let action = match (self.peek().clone(), self.peek2().clone()) {
            (Tok::Apos, _) => {
                self.bump();
                Some(CcsAction::CoName(self.name("a name after '")?))
            }
            (Tok::Name(n), Tok::Dot) => {
                self.bump();
                Some(if n == "tau" {
                    CcsAction::Tau
                } else {
                    CcsAction::Name(n)
                })
            }
            _ => None,
        };
        match action {
            Some(a) => {
                self.expect(Tok::Dot, "'.' after an action")?;
                let body = self.prefix()?;
                Ok(Process::prefix(a, body))
            }
            None => self.postfix(),
        }
    }

    fn postfix(&mut self) -> Result<Proc, CcsError> {
        let mut p = self.atom()?;
        loop {
            match self.peek() {
                Tok::Backslash => {
                    self.bump();
                    self.expect(Tok::LBrace, "'{' after '\\'")?;
                    let mut names = BTreeSet::new();
                    if *self.peek() != Tok::RBrace {
                        loop {
                            names.insert(self.name("a channel name")?);
                            if *self.peek() == Tok::Comma {
                                self.bump();
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(Tok::RBrace, "'}'")?;
                    p = Arc::new(Process::Restrict(p, names));
                }
                Tok::LBracket => {
                    self.bump();
                    let mut map = BTreeMap::new();
                    loop {
                        let new = self.name("a new name")?;
                        self.expect(Tok::Slash, "'/' in a relabelling")?;
                        let old = self.name("an old name")?;
                        map.insert(old, new);
                        if *self.peek() == Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    self.expect(Tok::RBracket, "']'")?;
                    p = Arc::new(Process::Relabel(p, map));
                }
                _ => return Ok(p),
            }
        }
    }

    fn atom(&mut self) -> Result<Proc, CcsError> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Process::nil())
            }
            Tok::Name(n) if n == "tau" => self.error("'tau' must be followed by '.'"),
            Tok::Name(n) => {
                self.bump();
                Ok(Process::ident(n))
            }
            Tok::LParen => {
                self.bump();
                let p = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(p)
            }
            other => self.error(format!("expected a process, found {other:?}")),
        }
    }
}

fn absorb_summand(
    p: &Proc,
    (line, col): (usize, usize),
    out: &mut Vec<(CcsAction, Proc)>,
) -> Result<(), CcsError> {
    match &**p {
        Process::Sum(s) => {
            out.extend(s.iter().cloned());
            Ok(())
        }
        _ => Err(CcsError::UnguardedChoice { line, col }),
    }
}

/// A parsed specification: the defining equations and, when present, the
/// body of `main`.
#[derive(Clone, Debug)]
pub struct CcsSpec {
    pub definitions: Definitions,
    pub main: Option<Proc>,
}

impl CcsSpec {
    /// The process to explore: the named identifier if given, else `main`.
    pub fn process(&self, name: Option<&str>) -> Result<Proc, CcsError> {
        match name {
            Some(n) if self.definitions.get(n).is_some() => Ok(Process::ident(n)),
            Some(n) => Err(CcsError::UndefinedIdentifier(n.to_owned())),
            None => self.main.clone().ok_or(CcsError::NoMain),
        }
    }
}

pub fn parse_ccs(text: &str) -> Result<CcsSpec, CcsError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let mut definitions = Definitions::default();
    while *p.peek() != Tok::Eof {
        let name = p.name("a definition name")?;
        p.expect(Tok::Eq, "'='")?;
        let body = p.sum()?;
        p.expect(Tok::Semi, "';'")?;
        if !definitions.insert(name.clone(), body) {
            return Err(CcsError::DuplicateDefinition(name));
        }
    }
    for name in definitions.names() {
        let mut used = BTreeSet::new();
        definitions.get(name).unwrap().idents(&mut used);
        if let Some(missing) = used.into_iter().find(|x| definitions.get(x).is_none()) {
            return Err(CcsError::UndefinedIdentifier(missing.to_owned()));
        }
    }
    let main = definitions.get(super::ast::MAIN).cloned();
    Ok(CcsSpec { definitions, main })
}

/// Parses a single expression (no definitions), e.g. for tests.
pub fn parse_process(text: &str) -> Result<Proc, CcsError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let proc_ = p.sum()?;
    if *p.peek() != Tok::Eof {
        return p.error("trailing input");
    }
    Ok(proc_)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(a: &str) -> CcsAction {
        CcsAction::Name(a.into())
    }

    fn co(a: &str) -> CcsAction {
        CcsAction::CoName(a.into())
    }

    #[test]
    fn vending_machine() {
        let spec = parse_ccs("VM = c.p.VM;").unwrap();
        let expected = Process::prefix(name("c"), Process::prefix(name("p"), Process::ident("VM")));
        assert_eq!(spec.definitions.get("VM"), Some(&expected));
        assert!(spec.main.is_none());
        assert!(matches!(spec.process(None), Err(CcsError::NoMain)));
        assert_eq!(spec.process(Some("VM")).unwrap(), Process::ident("VM"));
    }

    #[test]
    fn component_example() {
        let spec = parse_ccs("X = a.X; main = (X | 'a.0) | 'a.b.0;").unwrap();
        let expected = Process::par(
            Process::par(Process::ident("X"), Process::prefix(co("a"), Process::nil())),
            Process::prefix(co("a"), Process::prefix(name("b"), Process::nil())),
        );
        assert_eq!(spec.main.unwrap(), expected);
    }

    #[test]
    fn unguarded_choice() {
        let err = parse_ccs("main = a.0 + (b.0 | c.0);").unwrap_err();
        assert!(matches!(err, CcsError::UnguardedChoice { line: 1, col: 14 }));
        assert!(matches!(
            parse_ccs("X = a.0; main = X + b.0;"),
            Err(CcsError::UnguardedChoice { .. })
        ));
    }

    #[test]
    fn undefined_identifier() {
        assert_eq!(
            parse_ccs("main = a.Y;").unwrap_err(),
            CcsError::UndefinedIdentifier("Y".into())
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_ccs("X = a.X;\nmain = a..0;") {
            Err(CcsError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 10)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_ccs("X = a.X"), Err(CcsError::Syntax { .. })));
        assert!(matches!(
            parse_ccs("X = 0; X = 0;"),
            Err(CcsError::DuplicateDefinition(_))
        ));
    }

    #[test]
    fn precedence() {
        let p = parse_process("a.b.0 | c.0 + d.0").unwrap_err();
        assert!(matches!(p, CcsError::UnguardedChoice { .. }));
        let p = parse_process("a.P\\{x} | Q[y/x]").unwrap();
        assert_eq!(p.to_string(), "a.P\\{x}|Q[y/x]");
        let p = parse_process("a.0 + b.(c.0 | d.0)").unwrap();
        assert_eq!(p.to_string(), "a.0 + b.(c.0|d.0)");
        let p = parse_process("(a.0)\\{a}").unwrap();
        assert_eq!(p.to_string(), "(a.0)\\{a}");
        let p = parse_process("A | B | C").unwrap();
        assert_eq!(p.to_string(), "(A|B)|C");
    }

    #[test]
    fn comments_and_tau() {
        let spec = parse_ccs("# the loop\nL = tau.L; # again\nmain = L;").unwrap();
        assert_eq!(
            spec.definitions.get("L").unwrap(),
            &Process::prefix(CcsAction::Tau, Process::ident("L"))
        );
    }

    #[test]
    fn display_reparses() {
        for text in [
            "(X|0)|'a.b.0",
            "(I1|F0[c1/r1,c2/r2])|I2",
            "((I1|F0[c1/r1,c2/r2])|I2)\\{c1,c2}",
            "r1.t1.e.F0 + r2.t2.e.F0",
            "tau.(a.0|b.0) + 'c.0",
        ] {
            let p = parse_process(text).unwrap();
            assert_eq!(p.to_string(), text);
            assert_eq!(parse_process(&p.to_string()).unwrap(), p);
        }
    }
}
