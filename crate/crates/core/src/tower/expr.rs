//! Bundle expressions: syntax tree, parser and canonical printer.
//!
//! Grammar (whitespace-insensitive, `*` binds tighter than `+`):
//!
//! ```text
//! expr   := prod ('+' prod)*
//! prod   := atom ('*' atom)*
//! atom   := '(' expr ')' | 'dual(' expr ')' | 'schur([' ints '],' expr ')'
//!         | 'det(' expr (',' int)? ')' | 'O' | 'O(' linear ')'
//!         | 'S'l | 'Q'l | 'V' | 'wedge^'k arg | 'S^'k arg
//!         | 'T_rel(' l ')' | 'Om_rel(' l ')'
//! arg    := '(' expr ')' | atom
//! linear := ['-'] lterm (('+'|'-') lterm)*      lterm := [int ['*']] ('H'|'L') l | '0'
//! ```
//!
//! `H<l>` is `det S_l*` for `l ≥ 1` and `det V` for `l = 0`; `L<l>` is an alias.

use std::fmt;

use crate::error::{Error, Result};
use crate::weights::Weight;

/// Syntax tree of an equivariant vector bundle on a tower.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BundleExpr {
    /// The trivial bundle with fiber the ambient space `V`.
    AmbientV,
    /// Universal subbundle `S_l`.
    Sub(usize),
    /// Universal quotient bundle `Q_l`.
    Quot(usize),
    Dual(Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Sum(Box<BundleExpr>, Box<BundleExpr>),
    Schur(Weight, Box<BundleExpr>),
    Det(Box<BundleExpr>, i32),
    /// `O(Σ k_l H_l)`; levels strictly increasing, coefficients non-zero.
    Line(Vec<(usize, i32)>),
    /// `Q_l ⊗ S_l*`.
    RelTangent(usize),
    /// `S_l ⊗ Q_l*`.
    RelCotangent(usize),
}

impl BundleExpr {
    pub fn trivial() -> Self {
        BundleExpr::Line(Vec::new())
    }

    /// `O(k H_level)`.
    pub fn line(level: usize, k: i32) -> Self {
        BundleExpr::line_combo(&[(level, k)])
    }

    /// `O(Σ k H_level)`, normalized.
    pub fn line_combo(terms: &[(usize, i32)]) -> Self {
        let mut v: Vec<(usize, i32)> = Vec::new();
        for &(l, k) in terms {
            match v.iter_mut().find(|(m, _)| *m == l) {
                Some(e) => e.1 += k,
                None => v.push((l, k)),
            }
        }
        v.retain(|&(_, k)| k != 0);
        v.sort();
        BundleExpr::Line(v)
    }

    pub fn dual(self) -> Self {
        BundleExpr::Dual(Box::new(self))
    }

    pub fn tensor(self, other: BundleExpr) -> Self {
        BundleExpr::Tensor(Box::new(self), Box::new(other))
    }

    pub fn sum(self, other: BundleExpr) -> Self {
        BundleExpr::Sum(Box::new(self), Box::new(other))
    }

    pub fn schur(lambda: Weight, e: BundleExpr) -> Self {
        BundleExpr::Schur(lambda, Box::new(e))
    }

    pub fn det(e: BundleExpr, p: i32) -> Self {
        BundleExpr::Det(Box::new(e), p)
    }

    /// Highest tower level mentioned (0 for expressions over a point).
    pub fn max_level(&self) -> usize {
        use BundleExpr::*;
        match self {
            AmbientV => 0,
            Sub(l) | Quot(l) | RelTangent(l) | RelCotangent(l) => *l,
            Dual(e) | Schur(_, e) | Det(e, _) => e.max_level(),
            Tensor(a, b) | Sum(a, b) => a.max_level().max(b.max_level()),
            Line(t) => t.iter().map(|(l, _)| *l).max().unwrap_or(0),
        }
    }
}

impl std::str::FromStr for BundleExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

/// Parses an expression; levels are checked later against a tower.
pub fn parse_expr(text: &str) -> Result<BundleExpr> {
    let mut p = Parser::new(text, 0);
    let e = p.expr()?;
    p.ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

pub(crate) struct Parser<'a> {
    src: &'a str,
    pos: usize,
    base: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str, base: usize) -> Self {
        Parser { src, pos: 0, base }
    }

    pub(crate) fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { offset: self.base + self.pos, message: msg.into() }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub(crate) fn ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.rest().chars().next()
    }

    /// Consumes `tok` (after whitespace) if present.
    pub(crate) fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{tok}'")))
        }
    }

    pub(crate) fn uint(&mut self) -> Result<usize> {
        self.ws();
        let digits: usize = self.rest().bytes().take_while(|b| b.is_ascii_digit()).count();
        if digits == 0 {
            return Err(self.err("expected a non-negative integer"));
        }
        let v = self.rest()[..digits].parse().map_err(|_| self.err("integer out of range"))?;
        self.pos += digits;
        Ok(v)
    }

    fn int(&mut self) -> Result<i32> {
        let neg = self.eat("-");
        let v = self.uint()?;
        let v = i32::try_from(v).map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    pub(crate) fn expr(&mut self) -> Result<BundleExpr> {
        let mut e = self.prod()?;
        while self.eat("+") {
            e = e.sum(self.prod()?);
        }
        Ok(e)
    }

    fn prod(&mut self) -> Result<BundleExpr> {
        let mut e = self.atom()?;
        while self.eat("*") {
            e = e.tensor(self.atom()?);
        }
        Ok(e)
    }

    fn arg(&mut self) -> Result<BundleExpr> {
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            Ok(e)
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<BundleExpr> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("dual(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e.dual());
        }
        if self.eat("schur(") {
            self.expect("[")?;
            let mut lam = vec![self.int()?];
            while self.eat(",") {
                lam.push(self.int()?);
            }
            self.expect("]")?;
            if !self.eat(",") {
                return Err(self.err("schur takes a weight and an expression"));
            }
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(BundleExpr::schur(Weight(lam), e));
        }
        if self.eat("det(") {
            let e = self.expr()?;
            let p = if self.eat(",") { self.int()? } else { 1 };
            self.expect(")")?;
            return Ok(BundleExpr::det(e, p));
        }
        if self.eat("wedge^") {
            let k = self.uint()?;
            let e = self.arg()?;
            return Ok(BundleExpr::schur(Weight(vec![1; k.max(1)]), e).zero_power(k));
        }
        if self.eat("S^") {
            let k = self.uint()?;
            let e = self.arg()?;
            return Ok(BundleExpr::schur(Weight(vec![k as i32]), e));
        }
        if self.eat("T_rel(") {
            let l = self.level()?;
            self.expect(")")?;
            return Ok(BundleExpr::RelTangent(l));
        }
        if self.eat("Om_rel(") {
            let l = self.level()?;
            self.expect(")")?;
            return Ok(BundleExpr::RelCotangent(l));
        }
        if self.eat("O(") {
            let e = self.linear()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("O") {
            return Ok(BundleExpr::trivial());
        }
        if self.eat("V") {
            return Ok(BundleExpr::AmbientV);
        }
        if c == 'S' || c == 'Q' {
            let start = self.pos;
            self.pos += 1;
            if !self.rest().starts_with(|ch: char| ch.is_ascii_digit()) {
                self.pos = start;
                return Err(self.err(format!("'{c}' must be followed by a level number")));
            }
            let l = self.level()?;
            return Ok(if c == 'S' { BundleExpr::Sub(l) } else { BundleExpr::Quot(l) });
        }
        let word: String = self.rest().chars().take_while(|ch| ch.is_alphanumeric() || *ch == '_').collect();
        if word.is_empty() {
            Err(self.err(format!("unexpected character '{c}'")))
        } else {
            Err(self.err(format!("unknown identifier '{word}'")))
        }
    }

    fn level(&mut self) -> Result<usize> {
        let start = self.pos;
        let l = self.uint()?;
        if l == 0 {
            self.pos = start;
            return Err(self.err("universal bundles start at level 1"));
        }
        Ok(l)
    }

    fn linear(&mut self) -> Result<BundleExpr> {
        let mut terms = Vec::new();
        let mut sign = if self.eat("-") { -1 } else { 1 };
        loop {
            self.ws();
            let coeff = if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                let k = i32::try_from(self.uint()?).map_err(|_| self.err("integer out of range"))?;
                self.eat("*");
                Some(k)
            } else {
                None
            };
            if self.eat("H") || self.eat("L") {
                let l = self.uint()?;
                terms.push((l, sign * coeff.unwrap_or(1)));
            } else if coeff == Some(0) {
                // `O(0)`
            } else {
                return Err(self.err("expected a term like 2H1 or -L0"));
            }
            if self.eat("+") {
                sign = 1;
            } else if self.eat("-") {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(BundleExpr::line_combo(&terms))
    }
}

impl BundleExpr {
    /// `wedge^0` is the trivial bundle.
    fn zero_power(self, k: usize) -> BundleExpr {
        if k == 0 {
            BundleExpr::trivial()
        } else {
            self
        }
    }
}

fn prec(e: &BundleExpr) -> u8 {
    match e {
        BundleExpr::Sum(..) => 0,
        BundleExpr::Tensor(..) => 1,
        _ => 2,
    }
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, e: &BundleExpr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use BundleExpr::*;
        match self {
            AmbientV => write!(f, "V"),
            Sub(l) => write!(f, "S{l}"),
            Quot(l) => write!(f, "Q{l}"),
            Dual(e) => write!(f, "dual({e})"),
            Tensor(a, b) => {
                write_wrapped(f, a, 1)?;
                write!(f, " * ")?;
                write_wrapped(f, b, 2)
            }
            Sum(a, b) => {
                write_wrapped(f, a, 0)?;
                write!(f, " + ")?;
                write_wrapped(f, b, 1)
            }
            Schur(l, e) => {
                write!(f, "schur([")?;
                for (i, x) in l.entries().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "], {e})")
            }
            Det(e, 1) => write!(f, "det({e})"),
            Det(e, p) => write!(f, "det({e}, {p})"),
            Line(t) if t.is_empty() => write!(f, "O(0)"),
            Line(t) => {
                write!(f, "O(")?;
                for (i, (l, k)) in t.iter().enumerate() {
                    let (sign, mag) = if *k < 0 { ("-", -k) } else { ("+", *k) };
                    if i == 0 {
                        if sign == "-" {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {sign} ")?;
                    }
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "H{l}")?;
                }
                write!(f, ")")
            }
            RelTangent(l) => write!(f, "T_rel({l})"),
            RelCotangent(l) => write!(f, "Om_rel({l})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_expr("dual(S1) * O(-4H1)").unwrap(),
            BundleExpr::Sub(1).dual().tensor(BundleExpr::line(1, -4))
        );
        assert_eq!(parse_expr("O(0)").unwrap(), BundleExpr::trivial());
        assert_eq!(parse_expr("O").unwrap(), BundleExpr::trivial());
        assert_eq!(
            parse_expr("T_rel(2) * O(L1 - H2)").unwrap(),
            BundleExpr::RelTangent(2).tensor(BundleExpr::line_combo(&[(1, 1), (2, -1)]))
        );
        assert_eq!(
            parse_expr("wedge^2 V").unwrap(),
            BundleExpr::schur(Weight(vec![1, 1]), BundleExpr::AmbientV)
        );
        assert_eq!(
            parse_expr("S^2 S1").unwrap(),
            BundleExpr::schur(Weight(vec![2]), BundleExpr::Sub(1))
        );
        assert_eq!(
            parse_expr("schur([1,1],Q1)*Q1").unwrap(),
            BundleExpr::schur(Weight(vec![1, 1]), BundleExpr::Quot(1)).tensor(BundleExpr::Quot(1))
        );
        assert_eq!(
            parse_expr("V + S1 * Q1").unwrap(),
            BundleExpr::AmbientV.sum(BundleExpr::Sub(1).tensor(BundleExpr::Quot(1)))
        );
        assert_eq!(parse_expr("O(2*H1 + H1)").unwrap(), BundleExpr::line(1, 3));
    }

    #[test]
    fn reports_offsets() {
        match parse_expr("S1 * foo") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 5);
                assert!(message.contains("foo"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("schur([1,1])"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("S0"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_expr("S1 *"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("O(3)"), Err(Error::Parse { .. })));
    }

    fn arb_expr() -> impl Strategy<Value = BundleExpr> {
        let leaf = prop_oneof![
            Just(BundleExpr::AmbientV),
            (1usize..4).prop_map(BundleExpr::Sub),
            (1usize..4).prop_map(BundleExpr::Quot),
            (1usize..4).prop_map(BundleExpr::RelTangent),
            (1usize..4).prop_map(BundleExpr::RelCotangent),
            prop::collection::vec((0usize..4, -5i32..5), 0..3).prop_map(|t| BundleExpr::line_combo(&t)),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(BundleExpr::dual),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.tensor(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.sum(b)),
                (prop::collection::vec(-2i32..3, 1..4), inner.clone()).prop_map(|(mut l, e)| {
                    l.sort_unstable_by(|a, b| b.cmp(a));
                    BundleExpr::schur(Weight(l), e)
                }),
                (inner, -3i32..4).prop_map(|(e, p)| BundleExpr::det(e, p)),
            ]
        })
    }

    proptest! {
        #[test]
        fn printer_round_trips(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse_expr(&text).unwrap(), e);
        }
    }
}
