//! Recursive-descent parser for the formula grammar.
//!
//! Precedence from tightest to loosest: `~`, `&`, `|`, `->`, `<->`.
//! `&`, `|` and `<->` associate to the left, `->` to the right, and a
//! quantifier body extends as far as possible. Terms may use `g o f` for
//! composition and, in signatures declaring them, infix `+` and prefix `-`.

use std::collections::BTreeMap;

use super::signature::{Signature, COMP};
use super::syntax::{Formula, Term};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    Equals,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    Plus,
    Minus,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DoubleArrow => "`<->`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            '=' => Some(Tok::Equals),
            '~' => Some(Tok::Tilde),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Bar),
            '+' => Some(Tok::Plus),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            out.push((pos, tok));
            continue;
        }
        if c == '-' {
            chars.next();
            if chars.peek().map(|&(_, c)| c) == Some('>') {
                chars.next();
                out.push((pos, Tok::Arrow));
            } else {
                out.push((pos, Tok::Minus));
            }
            continue;
        }
        if c == '<' {
            chars.next();
            let rest: String = chars.clone().take(2).map(|(_, c)| c).collect();
            if rest == "->" {
                chars.next();
                chars.next();
                out.push((pos, Tok::DoubleArrow));
                continue;
            }
            return Err(Error::Syntax {
                position: pos,
                expected: vec!["`<->`".into()],
                found: "`<`".into(),
            });
        }
        if is_ident_char(c) {
            let mut name = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                name.push(c);
                chars.next();
            }
            out.push((pos, Tok::Ident(name)));
            continue;
        }
        return Err(Error::Syntax {
            position: pos,
            expected: vec!["a token".into()],
            found: format!("`{c}`"),
        });
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    sig: &'a Signature,
    scope: Vec<String>,
    infix_comp: bool,
    infix_plus: bool,
    prefix_minus: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &str, sig: &'a Signature, free: impl Iterator<Item = String>) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            sig,
            scope: free.collect(),
            infix_comp: sig.has_infix_comp(),
            infix_plus: sig.functions.get("+").is_some_and(|f| f.args.len() == 2),
            prefix_minus: sig.functions.get("-").is_some_and(|f| f.args.len() == 1),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].1
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Syntax {
            position: self.toks[self.pos].0,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&[&tok.describe()]))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if s != "forall" && s != "exists" => {
                self.advance();
                Ok(s)
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn is_bound(&self, name: &str) -> bool {
        self.scope.iter().any(|v| v == name)
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while *self.peek() == Tok::DoubleArrow {
            self.advance();
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.advance();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.advance();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.advance();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.advance();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(q) if q == "forall" || q == "exists" => {
                self.advance();
                let var = self.ident("a variable name")?;
                self.expect(Tok::Colon)?;
                let sort = self.ident("a sort name")?;
                self.expect(Tok::Dot)?;
                self.scope.push(var.clone());
                let body = self.formula();
                self.scope.pop();
                let body = body?;
                Ok(if q == "forall" {
                    Formula::forall(&var, &sort, body)
                } else {
                    Formula::exists(&var, &sort, body)
                })
            }
            Tok::LParen => {
                let save = self.pos;
                self.advance();
                if let Ok(inner) = self.formula() {
                    if *self.peek() == Tok::RParen {
                        self.advance();
                        if !self.continues_term() && *self.peek() != Tok::Equals {
                            return Ok(inner);
                        }
                    }
                }
                self.pos = save;
                self.atomic()
            }
            _ => self.atomic(),
        }
    }

    fn continues_term(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => s == "o" && self.infix_comp,
            Tok::Plus => self.infix_plus,
            _ => false,
        }
    }

    fn atomic(&mut self) -> Result<Formula> {
        if let Tok::Ident(name) = self.peek().clone() {
            if !self.is_bound(&name) && self.sig.relations.contains_key(&name) {
                self.advance();
                let args = if *self.peek() == Tok::LParen {
                    self.arguments()?
                } else {
                    Vec::new()
                };
                return Ok(Formula::Atom(name, args));
            }
        }
        let lhs = self.term().map_err(|e| match e {
            Error::Syntax {
                position,
                mut expected,
                found,
            } => {
                expected.extend(["`~`", "`forall`", "`exists`"].map(String::from));
                Error::Syntax {
                    position,
                    expected,
                    found,
                }
            }
            other => other,
        })?;
        if *self.peek() != Tok::Equals {
            return Err(self.error(&["`=`"]));
        }
        self.advance();
        let rhs = self.term()?;
        Ok(Formula::Eq(lhs, rhs))
    }

    fn arguments(&mut self) -> Result<Vec<Term>> {
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        if *self.peek() == Tok::RParen {
            self.advance();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Tok::Comma => {
                    self.advance();
                }
                Tok::RParen => {
                    self.advance();
                    return Ok(args);
                }
                _ => return Err(self.error(&["`,`", "`)`"])),
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut lhs = self.prefix_term()?;
        loop {
            match self.peek() {
                Tok::Ident(s) if s == "o" && self.infix_comp => {
                    self.advance();
                    let rhs = self.prefix_term()?;
                    lhs = Term::App(COMP.into(), vec![lhs, rhs]);
                }
                Tok::Plus if self.infix_plus => {
                    self.advance();
                    let rhs = self.prefix_term()?;
                    lhs = Term::App("+".into(), vec![lhs, rhs]);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn prefix_term(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Minus if self.prefix_minus => {
                self.advance();
                Ok(Term::App("-".into(), vec![self.prefix_term()?]))
            }
            Tok::LParen => {
                self.advance();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Plus | Tok::Minus if *self.peek_at(1) == Tok::LParen => {
                let name = if self.advance() == Tok::Plus { "+" } else { "-" };
                Ok(Term::App(name.into(), self.arguments()?))
            }
            Tok::Ident(name) if name != "forall" && name != "exists" => {
                self.advance();
                if self.is_bound(&name) {
                    return Ok(Term::Var(name));
                }
                if *self.peek() == Tok::LParen {
                    if !self.sig.functions.contains_key(&name) {
                        return Err(Error::Sort(format!("unknown function symbol `{name}`")));
                    }
                    return Ok(Term::App(name, self.arguments()?));
                }
                if self.sig.constants.contains_key(&name) {
                    return Ok(Term::Const(name));
                }
                if self.sig.functions.contains_key(&name) {
                    return Err(Error::Sort(format!("function `{name}` used without arguments")));
                }
                Err(Error::UnboundVariable(name))
            }
            _ => Err(self.error(&["a term"])),
        }
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(&["end of input", "a connective"]))
        }
    }
}

/// Parses a sentence over `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula> {
    parse_formula_in(text, sig, &BTreeMap::new())
}

/// Parses a formula whose free variables are declared in `free` (name to sort).
pub fn parse_formula_in(text: &str, sig: &Signature, free: &BTreeMap<String, String>) -> Result<Formula> {
    parse_with(text, sig, free, false)
}

/// Parses an equality-free sentence; equality atoms are rejected.
pub fn parse_homotopic(text: &str, sig: &Signature) -> Result<Formula> {
    parse_with(text, sig, &BTreeMap::new(), true)
}

fn parse_with(text: &str, sig: &Signature, free: &BTreeMap<String, String>, homotopic: bool) -> Result<Formula> {
    let mut p = Parser::new(text, sig, free.keys().cloned())?;
    let phi = p.formula()?;
    p.finish()?;
    let mut ctx = BTreeMap::new();
    for (v, s) in free {
        ctx.insert(v.clone(), sig.sort_of(s)?);
    }
    phi.check(sig, &ctx, homotopic)?;
    Ok(phi)
}

/// Parses a term with free variables declared in `free`.
pub fn parse_term_in(text: &str, sig: &Signature, free: &BTreeMap<String, String>) -> Result<Term> {
    let mut p = Parser::new(text, sig, free.keys().cloned())?;
    let t = p.term()?;
    p.finish()?;
    let mut ctx = BTreeMap::new();
    for (v, s) in free {
        ctx.insert(v.clone(), sig.sort_of(s)?);
    }
    t.sort(sig, &ctx)?;
    Ok(t)
}
