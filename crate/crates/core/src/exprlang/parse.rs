//! Single-pass recursive-descent parser.
//!
//! ```text
//! identity := expr "==" expr
//! expr     := term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := "-" factor | postfix
//! postfix  := primary ("^" ["-"] int)*
//! primary  := number | "q" | "Vac" | atom "(" int ")"
//!           | bracket "(" expr "," expr ["," int] ")"
//!           | "qdivdiff" "(" expr "," expr ")" | "(" expr ")"
//! ```

use num_traits::ToPrimitive;

use super::ast::{as_int, Atom, Expr, Identity};
use crate::error::{Error, Result};
use crate::operators::BracketKind;
use crate::qarith::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(Rational),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    EqEq,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Num(r) => format!("number {r}"),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::EqEq => "'=='".into(),
        Tok::End => "end of input".into(),
    }
}

fn syntax(pos: usize, expected: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        expected: expected.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '=' => {
                if chars.get(i + 1) != Some(&'=') {
                    return Err(syntax(i, "'=='"));
                }
                i += 1;
                Tok::EqEq
            }
            c if c.is_ascii_digit() => {
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_digit() || chars[i + 1] == '.') {
                    i += 1;
                }
                if chars.get(i + 1) == Some(&'/') && chars.get(i + 2).is_some_and(|d| d.is_ascii_digit()) {
                    i += 2;
                    while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                        i += 1;
                    }
                }
                let literal: String = chars[start..=i].iter().collect();
                Tok::Num(parse_rational(&literal).map_err(|_| syntax(start, "a number"))?)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            _ => return Err(syntax(i, "an operator, identifier, number or parenthesis")),
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Self { toks: lex(text)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("{} (found {})", describe(&want), describe(self.peek()))))
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            t => Err(syntax(self.pos(), format!("end of input (found {})", describe(t)))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let mut base = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let negative = *self.peek() == Tok::Minus;
            if negative {
                self.bump();
            }
            let pos = self.pos();
            let k = match self.bump() {
                Tok::Num(r) if r.is_integer() => r.to_integer().to_i64().ok_or_else(|| syntax(pos, "a small integer"))?,
                _ => return Err(syntax(pos, "an integer exponent")),
            };
            base = Expr::Pow(Box::new(base), if negative { -k } else { k });
        }
        Ok(base)
    }

    /// Comma-separated arguments after an opening parenthesis, with the
    /// position of each.
    fn args(&mut self) -> Result<Vec<(usize, Expr)>> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(out);
        }
        loop {
            let pos = self.pos();
            out.push((pos, self.expr()?));
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(out);
                }
                t => return Err(syntax(self.pos(), format!("',' or ')' (found {})", describe(t)))),
            }
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(r) => Ok(Expr::Num(r)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => self.named(pos, name),
            t => Err(syntax(
                pos,
                format!("a generator, bracket, number, 'q' or '(' (found {})", describe(&t)),
            )),
        }
    }

    fn named(&mut self, pos: usize, name: String) -> Result<Expr> {
        let arity = |expected: &str, got: usize| Error::Arity {
            name: name.clone(),
            expected: expected.into(),
            got,
        };
        let with_parens = *self.peek() == Tok::LParen;
        if name == "q" || name == "Vac" {
            if with_parens {
                let args = self.args()?;
                return Err(arity("0", args.len()));
            }
            return Ok(if name == "q" { Expr::Q } else { Expr::Vac });
        }
        if let Some(atom) = Atom::from_name(&name) {
            let args = self.args()?;
            if args.len() != 1 {
                return Err(arity("1", args.len()));
            }
            let (apos, arg) = &args[0];
            let index = as_int(arg).ok_or_else(|| syntax(*apos, "an integer generator index"))?;
            if index < 1 {
                return Err(Error::IndexRange {
                    index,
                    lo: 1,
                    hi: i64::MAX,
                });
            }
            return Ok(Expr::Gen(atom, index as usize));
        }
        if let Some(kind) = BracketKind::from_keyword(&name) {
            let mut args = self.args()?;
            if !(2..=3).contains(&args.len()) {
                return Err(arity("2 or 3", args.len()));
            }
            let k = match args.get(2) {
                Some((apos, e)) => as_int(e).ok_or_else(|| syntax(*apos, "an integer deformation exponent"))?,
                None => 0,
            };
            args.truncate(2);
            let b = args.pop().unwrap().1;
            let a = args.pop().unwrap().1;
            return Ok(Expr::Bracket(kind, Box::new(a), Box::new(b), k));
        }
        if name == "qdivdiff" {
            let mut args = self.args()?;
            if args.len() != 2 {
                return Err(arity("2", args.len()));
            }
            let b = args.pop().unwrap().1;
            let a = args.pop().unwrap().1;
            return Ok(Expr::QDivDiff(Box::new(a), Box::new(b)));
        }
        Err(syntax(pos, format!("a generator, bracket, number or 'q' (found '{name}')")))
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_identity(text: &str) -> Result<Identity> {
    let mut p = Parser::new(text)?;
    let lhs = p.expr()?;
    p.expect(Tok::EqEq)?;
    let rhs = p.expr()?;
    p.finish()?;
    Ok(Identity { lhs, rhs })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Expr(Expr),
    Identity(Identity),
}

/// An identity if the text contains `==`, an expression otherwise.
pub fn parse(text: &str) -> Result<Parsed> {
    let mut p = Parser::new(text)?;
    let lhs = p.expr()?;
    if *p.peek() == Tok::EqEq {
        p.bump();
        let rhs = p.expr()?;
        p.finish()?;
        return Ok(Parsed::Identity(Identity { lhs, rhs }));
    }
    p.finish()?;
    Ok(Parsed::Expr(lhs))
}
