//! Propositional formulas: AST, text grammar, parser, renderer and evaluation.
//!
//! Grammar, lowest precedence first:
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := neg ("&" neg)*
//! neg     := "~" neg | atom | "true" | "false" | "(" formula ")"
//! atom    := [a-z][A-Za-z0-9_]*
//! ```
//!
//! `->` associates to the right, `&` and `|` to the left. Whitespace is
//! insignificant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A propositional formula.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

/// Truth assignment to atom names.
pub type Valuation = BTreeMap<String, bool>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("atom `{0}` has no truth value")]
pub struct UnboundAtom(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a valid atom name")]
pub struct InvalidAtom(pub String);

/// Returns true when `name` matches `[a-z][A-Za-z0-9_]*` and is not reserved.
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && name != "true" && name != "false"
}

impl Formula {
    /// Builds an atom, checking the name against the atom grammar.
    pub fn atom(name: &str) -> Result<Formula, InvalidAtom> {
        if is_atom_name(name) {
            Ok(Formula::Atom(name.to_owned()))
        } else {
            Err(InvalidAtom(name.to_owned()))
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `false` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    pub fn parse(text: &str) -> Result<Formula, ParseError> {
        let mut p = Parser { src: text, pos: 0 };
        let f = p.imp()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error(&["&", "|", "->", "end of input"]));
        }
        Ok(f)
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Classical evaluation; fails on the first atom the lookup does not bind.
    pub fn eval_with<F>(&self, lookup: &F) -> Result<bool, UnboundAtom>
    where
        F: Fn(&str) -> Option<bool>,
    {
        Ok(match self {
            Formula::Atom(a) => lookup(a).ok_or_else(|| UnboundAtom(a.clone()))?,
            Formula::True => true,
            Formula::False => false,
            Formula::Not(x) => !x.eval_with(lookup)?,
            Formula::And(a, b) => {
                let l = a.eval_with(lookup)?;
                let r = b.eval_with(lookup)?;
                l && r
            }
            Formula::Or(a, b) => {
                let l = a.eval_with(lookup)?;
                let r = b.eval_with(lookup)?;
                l || r
            }
            Formula::Implies(a, b) => {
                let l = a.eval_with(lookup)?;
                let r = b.eval_with(lookup)?;
                !l || r
            }
        })
    }

    pub fn eval(&self, v: &Valuation) -> Result<bool, UnboundAtom> {
        self.eval_with(&|a: &str| v.get(a).copied())
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a);
            }
            Formula::True | Formula::False => {}
            Formula::Not(x) => x.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => 0,
            Formula::Not(x) => 1 + x.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Formula::parse(s)
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let own = self.precedence();
        match self {
            Formula::Atom(a) => f.write_str(a),
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Not(x) => {
                f.write_str("~")?;
                write_child(f, x, x.precedence() < own)
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                let op = if matches!(self, Formula::And(..)) { " & " } else { " | " };
                write_child(f, a, a.precedence() < own)?;
                f.write_str(op)?;
                write_child(f, b, b.precedence() <= own)
            }
            Formula::Implies(a, b) => {
                write_child(f, a, a.precedence() <= own)?;
                f.write_str(" -> ")?;
                write_child(f, b, b.precedence() < own)
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({self})")
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const OPERAND: &[&str] = &["~", "(", "atom", "true", "false"];

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn error(&mut self, expected: &[&'static str]) -> ParseError {
        self.skip_ws();
        let found = match self.rest().chars().next() {
            None => "end of input".to_owned(),
            Some(c) => format!("`{c}`"),
        };
        ParseError {
            offset: self.pos,
            expected: expected.to_vec(),
            found,
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat("->") {
            let rhs = self.imp()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.eat("|") {
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.neg()?;
        while self.eat("&") {
            acc = Formula::and(acc, self.neg()?);
        }
        Ok(acc)
    }

    fn neg(&mut self) -> Result<Formula, ParseError> {
        if self.eat("~") {
            return Ok(Formula::not(self.neg()?));
        }
        if self.eat("(") {
            let inner = self.imp()?;
            if !self.eat(")") {
                return Err(self.error(&["&", "|", "->", ")"]));
            }
            return Ok(inner);
        }
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(i, c)| {
                !(c.is_ascii_alphanumeric() || c == '_') || (i == 0 && !c.is_ascii_lowercase())
            })
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return Err(self.error(OPERAND));
        }
        let word = &rest[..len];
        self.pos += len;
        Ok(match word {
            "true" => Formula::True,
            "false" => Formula::False,
            _ => Formula::Atom(word.to_owned()),
        })
    }
}
