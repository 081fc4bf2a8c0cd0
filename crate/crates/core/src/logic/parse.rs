//! Formula syntax.
//!
//! Atoms are identifiers (letters, digits, `_`), optionally with a leading `'`
//! for CCS co-names. Precedence from tightest: `!`, `F`, `G` (and the CTL
//! unary operators), then `U`/`W` (right associative), `&`, `|`, `->` (right
//! associative). CTL adds `EX EF EG AX AF AG`, `E[ψ U φ]` and `A[ψ U φ]`;
//! a bare `A` or `E` not followed by `[` is an ordinary atom.

use thiserror::Error;

use super::{CtlFormula, LtlFormula};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Logic {
    Ltl,
    Ctl,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// `pos` is a 1-based character column.
    #[error("syntax error at column {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("column {pos}: the next-state operator X is not supported")]
    XNotSupported { pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word == "'" {
                return Err(ParseError::Syntax {
                    pos,
                    message: "expected a name after '".into(),
                });
            }
            out.push((Tok::Ident(word), pos));
            continue;
        }
        let (tok, len) = match c {
            '!' => (Tok::Not, 1),
            '&' => (Tok::And, 1),
            '|' => (Tok::Or, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Implies, 2),
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((tok, pos));
        i += len;
    }
    out.push((Tok::Eof, chars.len() + 1));
    Ok(out)
}

/// Both logics share one parser producing this intermediate tree.
enum Ast {
    True,
    False,
    Atom(String),
    Not(Box<Ast>),
    Bin(BinOp, Box<Ast>, Box<Ast>),
    Unary(&'static str, Box<Ast>),
    Quantified(char, Box<Ast>, Box<Ast>),
}

#[derive(Copy, Clone)]
enum BinOp {
    And,
    Or,
    Implies,
    U,
    W,
}

const LTL_UNARY: &[&str] = &["F", "G"];
const CTL_UNARY: &[&str] = &["EX", "AX", "EF", "AF", "EG", "AG"];

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    logic: Logic,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.col(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(w) if w == word)
    }

    fn implication(&mut self) -> Result<Ast, ParseError> {
        let left = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let right = self.implication()?;
            return Ok(Ast::Bin(BinOp::Implies, Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Ast, ParseError> {
        let mut left = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let right = self.conjunction()?;
            left = Ast::Bin(BinOp::Or, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Ast, ParseError> {
        let mut left = self.until()?;
        while *self.peek() == Tok::And {
            self.bump();
            let right = self.until()?;
            left = Ast::Bin(BinOp::And, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn until(&mut self) -> Result<Ast, ParseError> {
        let left = self.unary()?;
        if self.logic == Logic::Ltl {
            for (word, op) in [("U", BinOp::U), ("W", BinOp::W)] {
                if self.is_keyword(word) {
                    self.bump();
                    let right = self.until()?;
                    return Ok(Ast::Bin(op, Box::new(left), Box::new(right)));
                }
            }
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        if *self.peek() == Tok::Not {
            self.bump();
            return Ok(Ast::Not(Box::new(self.unary()?)));
        }
        if let Tok::Ident(word) = self.peek().clone() {
            if word == "X" && self.logic == Logic::Ltl {
                return Err(ParseError::XNotSupported { pos: self.col() });
            }
            let ops = match self.logic {
                Logic::Ltl => LTL_UNARY,
                Logic::Ctl => CTL_UNARY,
            };
            if let Some(&op) = ops.iter().find(|&&op| op == word) {
                self.bump();
                return Ok(Ast::Unary(op, Box::new(self.unary()?)));
            }
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Ast, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.implication()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(word) => {
                let quantifier = self.logic == Logic::Ctl
                    && (word == "A" || word == "E")
                    && self.toks[self.pos + 1].0 == Tok::LBracket;
                self.bump();
                if quantifier {
                    self.bump();
                    let left = self.implication()?;
                    if !self.is_keyword("U") {
                        return self.error("expected 'U'");
                    }
                    self.bump();
                    let right = self.implication()?;
                    self.expect(Tok::RBracket, "']'")?;
                    let q = word.chars().next().unwrap();
                    return Ok(Ast::Quantified(q, Box::new(left), Box::new(right)));
                }
                let reserved: &[&str] = match self.logic {
                    Logic::Ltl => &["F", "G", "U", "W"],
                    Logic::Ctl => &["U", "EX", "AX", "EF", "AF", "EG", "AG"],
                };
                if reserved.contains(&word.as_str()) {
                    self.pos -= 1;
                    return self.error(format!("operator {word} used as an atom"));
                }
                Ok(match word.as_str() {
                    "true" => Ast::True,
                    "false" => Ast::False,
                    _ => Ast::Atom(word),
                })
            }
            Tok::Eof => self.error("unexpected end of formula"),
            other => self.error(format!("unexpected {other:?}")),
        }
    }
}

fn parse_ast(text: &str, logic: Logic) -> Result<Ast, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        logic,
    };
    let ast = p.implication()?;
    if *p.peek() != Tok::Eof {
        return p.error("trailing input");
    }
    Ok(ast)
}

pub fn parse_ltl(text: &str) -> Result<LtlFormula, ParseError> {
    fn conv(a: Ast) -> LtlFormula {
        let b = |x: Box<Ast>| Box::new(conv(*x));
        match a {
            Ast::True => LtlFormula::True,
            Ast::False => LtlFormula::False,
            Ast::Atom(x) => LtlFormula::Atom(x),
            Ast::Not(x) => LtlFormula::Not(b(x)),
            Ast::Unary("F", x) => LtlFormula::F(b(x)),
            Ast::Unary(_, x) => LtlFormula::G(b(x)),
            Ast::Bin(op, l, r) => match op {
                BinOp::And => LtlFormula::And(b(l), b(r)),
                BinOp::Or => LtlFormula::Or(b(l), b(r)),
                BinOp::Implies => LtlFormula::Implies(b(l), b(r)),
                BinOp::U => LtlFormula::U(b(l), b(r)),
                BinOp::W => LtlFormula::W(b(l), b(r)),
            },
            Ast::Quantified(..) => unreachable!("no path quantifiers in LTL mode"),
        }
    }
    Ok(conv(parse_ast(text, Logic::Ltl)?))
}

pub fn parse_ctl(text: &str) -> Result<CtlFormula, ParseError> {
    fn conv(a: Ast) -> CtlFormula {
        let b = |x: Box<Ast>| Box::new(conv(*x));
        match a {
            Ast::True => CtlFormula::True,
            Ast::False => CtlFormula::False,
            Ast::Atom(x) => CtlFormula::Atom(x),
            Ast::Not(x) => CtlFormula::Not(b(x)),
            Ast::Unary(op, x) => match op {
                "EX" => CtlFormula::EX(b(x)),
                "AX" => CtlFormula::AX(b(x)),
                "EF" => CtlFormula::EF(b(x)),
                "AF" => CtlFormula::AF(b(x)),
                "EG" => CtlFormula::EG(b(x)),
                _ => CtlFormula::AG(b(x)),
            },
            Ast::Bin(op, l, r) => match op {
                BinOp::And => CtlFormula::And(b(l), b(r)),
                BinOp::Or => CtlFormula::Or(b(l), b(r)),
                BinOp::Implies => CtlFormula::Implies(b(l), b(r)),
                BinOp::U | BinOp::W => unreachable!("no bare until in CTL mode"),
            },
            Ast::Quantified('E', l, r) => CtlFormula::EU(b(l), b(r)),
            Ast::Quantified(_, l, r) => CtlFormula::AU(b(l), b(r)),
        }
    }
    Ok(conv(parse_ast(text, Logic::Ctl)?))
}

/// One non-blank, non-comment line of a formula file, optionally `NAME: formula`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaLine {
    pub line: usize,
    pub name: Option<String>,
    pub text: String,
}

pub fn read_formula_file(text: &str) -> Vec<FormulaLine> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, body) = match line.split_once(':') {
            Some((n, body))
                if !n.trim().is_empty()
                    && n.trim().chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') =>
            {
                (Some(n.trim().to_owned()), body.trim())
            }
            _ => (None, line),
        };
        out.push(FormulaLine {
            line: i + 1,
            name,
            text: body.to_owned(),
        });
    }
    out
}
