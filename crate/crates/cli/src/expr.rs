//! Index expressions: a small grammar over the index algebra.
//!
//! ```text
//! expr    := ["-"] term (("+" | "-") term)* ;
//! term    := [rational "*"] factor ("#" factor)* | "0" ;
//! factor  := literal | "()" | "rep(" int "," int ")" | "dual(" expr ")"
//!          | "hast(" int "," expr ")" | "ohno(" int "," expr ")" | "(" expr ")" ;
//! literal := "(" int ("," int)* ")" ;
//! rational:= int ["/" int] ;
//! ```
//!
//! A parenthesised group is a literal when it holds only integers separated by
//! commas; anything else inside the parentheses makes it a subexpression.

use std::fmt;

use num_bigint::BigInt;
use ohno_core::index::{hast, sha, AlgebraError, Coefficient, Index, IndexCombination};
use ohno_core::ohno::ohno_m_symbolic;
use thiserror::Error;

pub const GRAMMAR: &str = "\
expr     := [\"-\"] term ((\"+\" | \"-\") term)*
term     := [rational \"*\"] factor (\"#\" factor)*  |  \"0\"
factor   := literal | \"()\" | \"rep(\" a \",\" l \")\" | \"dual(\" expr \")\"
          | \"hast(\" k \",\" expr \")\" | \"ohno(\" m \",\" expr \")\" | \"(\" expr \")\"
literal  := \"(\" int (\",\" int)* \")\"
rational := int [\"/\" int]

  #          shuffle product
  rep(a,l)   the index (a,...,a) of depth l
  dual(e)    duality, applied linearly (terms must be admissible)
  hast(k,e)  k hast e, i.e. k added to each entry of e in turn
  ohno(m,e)  sum of e over all shifts of total m
A group of integers and commas such as (3) or (1,2) is an index literal;
parentheses around anything else group a subexpression.";

/// A position in the source text, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("integer literal {text} at {pos} is out of range")]
    Overflow { pos: Pos, text: String },
    #[error("at {pos}: {source}")]
    Algebra {
        pos: Pos,
        #[source]
        source: AlgebraError,
    },
}

impl ExprError {
    pub fn pos(&self) -> Pos {
        match self {
            ExprError::Syntax { pos, .. } | ExprError::Overflow { pos, .. } | ExprError::Algebra { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Zero,
    Literal(Index),
    Rep { entry: u32, length: u32, pos: Pos },
    Dual { arg: Box<Expr>, pos: Pos },
    Hast { k: u32, arg: Box<Expr>, pos: Pos },
    Ohno { m: u32, arg: Box<Expr>, pos: Pos },
    Sha(Vec<Expr>),
    Scale(Coefficient, Box<Expr>),
    Sum(Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Hash,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) => write!(f, "integer {s}"),
            Tok::Ident(s) => write!(f, "name {s:?}"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Hash => f.write_str("'#'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ExprError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_digit() || c.is_alphabetic() || c == '_' {
            let digits = c.is_ascii_digit();
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                let more = if digits {
                    d.is_ascii_digit()
                } else {
                    d.is_alphanumeric() || d == '_'
                };
                if !more {
                    break;
                }
                word.push(d);
                chars.next();
                column += 1;
            }
            out.push((if digits { Tok::Int(word) } else { Tok::Ident(word) }, pos));
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '#' | '♯' => Tok::Hash,
            _ => {
                return Err(ExprError::Syntax {
                    pos,
                    message: format!("unexpected character {c:?}"),
                })
            }
        };
        chars.next();
        column += 1;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        &self.toks[(self.at + offset).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.pos(),
            message: format!("expected {expected}, found {}", self.peek()),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ExprError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(what)
        }
    }

    fn int(&mut self) -> Result<u32, ExprError> {
        match self.peek().clone() {
            Tok::Int(text) => {
                let pos = self.pos();
                self.bump();
                text.parse().map_err(|_| ExprError::Overflow { pos, text })
            }
            _ => self.fail("an integer"),
        }
    }

    fn big_int(&mut self) -> Result<BigInt, ExprError> {
        match self.peek().clone() {
            Tok::Int(text) => {
                self.bump();
                Ok(text.parse().expect("lexer only yields digits"))
            }
            _ => self.fail("an integer"),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut terms = Vec::new();
        let negate_first = *self.peek() == Tok::Minus;
        if negate_first {
            self.bump();
        }
        let first = self.term()?;
        terms.push(if negate_first { negate(first) } else { first });
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    terms.push(negate(t));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let coefficient = if matches!(self.peek(), Tok::Int(_)) {
            let numer = self.big_int()?;
            let denom = if *self.peek() == Tok::Slash {
                self.bump();
                let pos = self.pos();
                let d = self.big_int()?;
                if d == BigInt::from(0) {
                    return Err(ExprError::Syntax {
                        pos,
                        message: "zero denominator".into(),
                    });
                }
                d
            } else {
                BigInt::from(1)
            };
            if *self.peek() != Tok::Star {
                if numer == BigInt::from(0) && denom == BigInt::from(1) {
                    return Ok(Expr::Zero);
                }
                return self.fail("'*' after a coefficient");
            }
            self.bump();
            Some(Coefficient::new(numer, denom))
        } else {
            None
        };
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Hash {
            self.bump();
            factors.push(self.factor()?);
        }
        let product = if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Sha(factors)
        };
        Ok(match coefficient {
            Some(c) => Expr::Scale(c, Box::new(product)),
            None => product,
        })
    }

    /// True when the tokens after the current `(` form `int ("," int)* ")"`,
    /// or start like one (`int ","`), which commits to a literal.
    fn looks_like_literal(&self) -> bool {
        matches!(
            (self.peek_at(1), self.peek_at(2)),
            (Tok::Int(_), Tok::Comma | Tok::RParen)
        )
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::LParen if *self.peek_at(1) == Tok::RParen => {
                self.bump();
                self.bump();
                Ok(Expr::Literal(Index::empty()))
            }
            Tok::LParen if self.looks_like_literal() => {
                self.bump();
                let mut entries = vec![self.literal_entry()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    entries.push(self.literal_entry()?);
                }
                self.expect(Tok::RParen, "',' or ')'")?;
                Ok(Expr::Literal(Index::new(entries).expect("entries are positive")))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                self.expect(Tok::LParen, "'(' after a function name")?;
                let node = match name.as_str() {
                    "rep" => {
                        let entry = self.positive()?;
                        self.expect(Tok::Comma, "','")?;
                        let length = self.int()?;
                        Expr::Rep { entry, length, pos }
                    }
                    "dual" => Expr::Dual {
                        arg: Box::new(self.expr()?),
                        pos,
                    },
                    "hast" => {
                        let k = self.positive()?;
                        self.expect(Tok::Comma, "','")?;
                        Expr::Hast {
                            k,
                            arg: Box::new(self.expr()?),
                            pos,
                        }
                    }
                    "ohno" => {
                        let m = self.int()?;
                        self.expect(Tok::Comma, "','")?;
                        Expr::Ohno {
                            m,
                            arg: Box::new(self.expr()?),
                            pos,
                        }
                    }
                    _ => {
                        return Err(ExprError::Syntax {
                            pos,
                            message: format!("unknown function {name:?} (expected rep, dual, hast or ohno)"),
                        })
                    }
                };
                self.expect(Tok::RParen, "')'")?;
                Ok(node)
            }
            _ => self.fail("an index literal, a function or '('"),
        }
    }

    fn literal_entry(&mut self) -> Result<u32, ExprError> {
        self.positive()
    }

    fn positive(&mut self) -> Result<u32, ExprError> {
        let pos = self.pos();
        let v = self.int()?;
        if v == 0 {
            return Err(ExprError::Syntax {
                pos,
                message: "entries must be positive".into(),
            });
        }
        Ok(v)
    }
}

fn negate(e: Expr) -> Expr {
    match e {
        Expr::Scale(c, inner) => Expr::Scale(-c, inner),
        Expr::Zero => Expr::Zero,
        other => Expr::Scale(Coefficient::from_integer(BigInt::from(-1)), Box::new(other)),
    }
}

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("'+', '-', '#' or end of input");
    }
    Ok(e)
}

pub fn expand(e: &Expr) -> Result<IndexCombination, ExprError> {
    let at = |pos: Pos| move |source: AlgebraError| ExprError::Algebra { pos, source };
    Ok(match e {
        Expr::Zero => IndexCombination::zero(),
        Expr::Literal(k) => IndexCombination::from_index(k.clone()),
        Expr::Rep { entry, length, .. } => IndexCombination::from_index(Index::repeat(*entry, *length as usize)),
        Expr::Dual { arg, pos } => expand(arg)?.dual_linear().map_err(at(*pos))?,
        Expr::Hast { k, arg, pos } => hast(*k, &expand(arg)?).map_err(at(*pos))?,
        Expr::Ohno { m, arg, pos } => ohno_m_symbolic(&expand(arg)?, *m).map_err(at(*pos))?,
        Expr::Sha(factors) => {
            let mut acc = expand(&factors[0])?;
            for f in &factors[1..] {
                acc = sha(&acc, &expand(f)?);
            }
            acc
        }
        Expr::Scale(c, inner) => expand(inner)?.scaled(c),
        Expr::Sum(terms) => {
            let mut acc = IndexCombination::zero();
            for t in terms {
                acc += expand(t)?;
            }
            acc
        }
    })
}

/// Parses and expands in one step.
pub fn evaluate(text: &str) -> Result<IndexCombination, ExprError> {
    expand(&parse(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ohno_core::idx;

    fn lit(k: Index) -> Expr {
        Expr::Literal(k)
    }

    #[test]
    fn parse_examples() {
        let e = parse("(1,2) # rep(2,2)").unwrap();
        match e {
            Expr::Sha(f) => {
                assert_eq!(f[0], lit(idx![1, 2]));
                assert!(matches!(
                    f[1],
                    Expr::Rep {
                        entry: 2,
                        length: 2,
                        ..
                    }
                ));
            }
            other => panic!("{other:?}"),
        }
        match parse("dual((3))").unwrap() {
            Expr::Dual { arg, .. } => assert_eq!(*arg, lit(idx![3])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn error_positions() {
        let e = parse("(1,)").unwrap_err();
        assert_eq!(e.pos(), Pos { line: 1, column: 4 });
        assert_eq!(parse("(1,2) +").unwrap_err().pos().column, 8);
        assert_eq!(parse("(1,2)\n # foo(3)").unwrap_err().pos(), Pos { line: 2, column: 4 });
        assert!(matches!(parse("(99999999999)"), Err(ExprError::Overflow { .. })));
        assert!(matches!(parse("(1, 0)"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse("3 (2)"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse("1/0*(2)"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse("(2) $"), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn expand_examples() {
        assert_eq!(
            evaluate("(2)#(3)").unwrap(),
            IndexCombination::from_index(idx![2, 3]) + IndexCombination::from_index(idx![3, 2])
        );
        assert_eq!(
            evaluate("dual((2,3))").unwrap(),
            IndexCombination::from_index(idx![1, 2, 2])
        );
        assert_eq!(
            evaluate("ohno(1,(1,2))").unwrap(),
            IndexCombination::from_index(idx![2, 2]) + IndexCombination::from_index(idx![1, 3])
        );
        assert_eq!(evaluate("hast(1, (2))").unwrap(), IndexCombination::from_index(idx![3]));
        assert_eq!(evaluate("((2) - (2))").unwrap(), IndexCombination::zero());
        assert_eq!(evaluate("0").unwrap(), IndexCombination::zero());
        assert_eq!(evaluate("1*()").unwrap(), IndexCombination::from_index(Index::empty()));
        let c = evaluate("-1/2*(3) + 2*((2) # (1))").unwrap();
        assert_eq!(c.to_string(), "-1/2*(3) + 2*(1,2) + 2*(2,1)");
    }

    #[test]
    fn algebra_errors_carry_position() {
        let e = evaluate("(2) + dual((2,1))").unwrap_err();
        assert!(
            matches!(
                e,
                ExprError::Algebra {
                    pos: Pos { column: 7, .. },
                    ..
                }
            ),
            "{e}"
        );
        assert!(matches!(evaluate("hast(2, ())"), Err(ExprError::Algebra { .. })));
    }

    #[test]
    fn serialized_combinations_reparse() {
        for text in ["0", "1*()", "1/3*(4) - 2*(1,2)", "7/2*(1,1,2) - 1*(2,2,2)"] {
            assert_eq!(evaluate(text).unwrap().to_string(), text);
        }
    }
}
