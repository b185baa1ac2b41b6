//! The `.pcp` presentation language.
//!
//! ```text
//! # comments run to the end of the line
//! group 3
//! order g1 = 2                 # default: inf
//! g1^2 = g3                    # power relation, implies the order
//! g2*g1 = g1*g2*g3^-1          # g_j g_i = g_i * tail, j > i
//! g2*g1^-1 = g1^-1*g2*g3       # only when g_i has infinite order
//!
//! algebra 3 over Z             # or Q, GF(p)
//! order a1 = 2
//! 2*a1 = a3                    # power relation, implies the order
//! a1*a2 = a3 - 2*a3            # any product a_j*a_i
//! ```
//!
//! Tails are products of `g<k>^<int>` factors with ascending `k`, or `1`;
//! linear combinations are `0` or `c*a<k>` terms joined by `+`/`-`.
//! Relations not listed default to commuting generators, trivial power
//! relations and zero products.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraPresentation, FreeElement, RawAlgebraPresentation, RawRow};
use crate::coefficients::{RingDescriptor, Scalar};
use crate::presentation::{GroupPresentation, RawGroupPresentation, RawTail, RelativeOrder};
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: duplicate relation {relation}")]
    DuplicateRelation {
        line: usize,
        column: usize,
        relation: String,
    },
    #[error("{line}:{column}: unknown generator {name}")]
    UnknownGenerator {
        line: usize,
        column: usize,
        name: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    Group,
    Algebra,
}

/// 1-based line and column of a declaration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

/// One parsed declaration; generator indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Declaration {
    Order {
        gen: usize,
        order: RelativeOrder,
    },
    GroupPower {
        gen: usize,
        exponent: BigInt,
        tail: RawTail,
    },
    Conjugate {
        upper: usize,
        lower: usize,
        tail: RawTail,
    },
    ConjugateByInverse {
        upper: usize,
        lower: usize,
        tail: RawTail,
    },
    AlgebraPower {
        gen: usize,
        multiplier: BigInt,
        row: RawRow,
    },
    Product {
        left: usize,
        right: usize,
        row: RawRow,
    },
}

impl Declaration {
    /// Identifies the left-hand side; two declarations with the same key
    /// are duplicates.
    fn key(&self) -> (u8, usize, usize) {
        match *self {
            Declaration::Order { gen, .. } => (0, gen, 0),
            Declaration::GroupPower { gen, .. } | Declaration::AlgebraPower { gen, .. } => {
                (1, gen, 0)
            }
            Declaration::Conjugate { upper, lower, .. } => (2, upper, lower),
            Declaration::ConjugateByInverse { upper, lower, .. } => (3, upper, lower),
            Declaration::Product { left, right, .. } => (4, left, right),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationDocument {
    pub kind: DocumentKind,
    pub ring: Option<RingDescriptor>,
    pub n: usize,
    pub declarations: Vec<(Declaration, Span)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    column: usize,
}

fn lex(line_no: usize, text: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            tokens.push(Token {
                tok: Tok::Int(digits.parse().expect("ascii digits")),
                column,
            });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                column,
            });
        } else if "*^=+-/()".contains(c) {
            tokens.push(Token {
                tok: Tok::Sym(c),
                column,
            });
            i += 1;
        } else {
            return Err(SyntaxError::Syntax {
                line: line_no,
                column,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(tokens)
}

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    end_column: usize,
    /// Generator letter and count, once the header is known.
    letter: char,
    n: usize,
}

impl<'a> Cursor<'a> {
    fn new(tokens: &'a [Token], line: usize, end_column: usize) -> Self {
        Cursor {
            tokens,
            pos: 0,
            line,
            end_column,
            letter: 'g',
            n: usize::MAX,
        }
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.end_column, |t| t.column)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            self.error(format!("expected '{kw}'"))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn expect_end(&self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }

    fn unsigned(&mut self) -> Result<BigInt, SyntaxError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = v.clone();
                self.pos += 1;
                Ok(v)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn signed(&mut self) -> Result<BigInt, SyntaxError> {
        let negative = self.eat_sym('-');
        let parenthesised = !negative && self.eat_sym('(');
        let inner_negative = parenthesised && self.eat_sym('-');
        let v = self.unsigned()?;
        if parenthesised {
            self.expect_sym(')')?;
        }
        Ok(if negative || inner_negative { -v } else { v })
    }

    fn small(&mut self, what: &str) -> Result<usize, SyntaxError> {
        let column = self.column();
        let v = self.unsigned()?;
        v.to_usize().ok_or_else(|| SyntaxError::Syntax {
            line: self.line,
            column,
            message: format!("{what} {v} is too large"),
        })
    }

    fn is_generator(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if parse_generator_name(s).is_some())
    }

    /// A generator name such as `g3`, returned 0-based.
    fn generator(&mut self) -> Result<usize, SyntaxError> {
        let column = self.column();
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return self.error(format!("expected a generator {}<k>", self.letter));
        };
        let Some((letter, index)) = parse_generator_name(&name) else {
            return self.error(format!("expected a generator {}<k>", self.letter));
        };
        if letter != self.letter || index == 0 || index > self.n {
            return Err(SyntaxError::UnknownGenerator {
                line: self.line,
                column,
                name,
            });
        }
        self.pos += 1;
        Ok(index - 1)
    }

    /// `g<k>` optionally followed by `^<int>`.
    fn factor(&mut self) -> Result<(usize, BigInt), SyntaxError> {
        let gen = self.generator()?;
        let exp = if self.eat_sym('^') {
            self.signed()?
        } else {
            BigInt::one()
        };
        Ok((gen, exp))
    }

    /// `1`, or factors with strictly ascending generators.
    fn tail(&mut self) -> Result<RawTail, SyntaxError> {
        if matches!(self.peek(), Some(Tok::Int(v)) if v.is_one()) {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut tail: RawTail = Vec::new();
        loop {
            let column = self.column();
            let (gen, exp) = self.factor()?;
            if tail.last().is_some_and(|(last, _)| *last >= gen) {
                return Err(SyntaxError::Syntax {
                    line: self.line,
                    column,
                    message: "tail generators must be strictly ascending".to_string(),
                });
            }
            if !exp.is_zero() {
                tail.push((gen, exp));
            }
            if !self.eat_sym('*') {
                return Ok(tail);
            }
        }
    }

    /// A general word: factors in any order, or `1`.
    fn word(&mut self) -> Result<Word, SyntaxError> {
        if matches!(self.peek(), Some(Tok::Int(v)) if v.is_one()) {
            self.pos += 1;
            return Ok(Word::empty());
        }
        let mut w = Word::empty();
        loop {
            let (gen, exp) = self.factor()?;
            w.push(gen, exp);
            if !self.eat_sym('*') {
                return Ok(w);
            }
        }
    }

    fn scalar(&mut self, ring: RingDescriptor) -> Result<Scalar, SyntaxError> {
        let column = self.column();
        let num = self.unsigned()?;
        let text = if self.eat_sym('/') {
            let den = self.unsigned()?;
            format!("{num}/{den}")
        } else {
            num.to_string()
        };
        ring.parse(&text).map_err(|e| SyntaxError::Syntax {
            line: self.line,
            column,
            message: e.to_string(),
        })
    }

    /// `[-] [c *] a<k> (* a<k>)*` terms joined by `+`/`-`, or `0`.
    fn combination(&mut self, ring: RingDescriptor) -> Result<FreeElement, SyntaxError> {
        if matches!(self.peek(), Some(Tok::Int(v)) if v.is_zero())
            && self.tokens.len() == self.pos + 1
        {
            self.pos += 1;
            return Ok(FreeElement::zero());
        }
        let mut terms = Vec::new();
        let mut negative = self.eat_sym('-');
        loop {
            let mut coefficient = ring.one();
            if !self.is_generator() {
                coefficient = self.scalar(ring)?;
                self.expect_sym('*')?;
            }
            if negative {
                coefficient = ring.neg(&coefficient).expect("scalar parsed in ring");
            }
            let mut word = vec![self.generator()?];
            while self.eat_sym('*') {
                word.push(self.generator()?);
            }
            if !coefficient.is_zero() {
                terms.push((coefficient, word));
            }
            if self.eat_sym('+') {
                negative = false;
            } else if self.eat_sym('-') {
                negative = true;
            } else {
                return Ok(FreeElement { terms });
            }
        }
    }

    /// Like `combination`, but every term a single generator with ascending
    /// indices.
    fn row(&mut self, ring: RingDescriptor) -> Result<RawRow, SyntaxError> {
        let column = self.column();
        let e = self.combination(ring)?;
        let mut row: RawRow = Vec::new();
        for (c, word) in e.terms {
            if word.len() != 1 || row.last().is_some_and(|(last, _)| *last >= word[0]) {
                return Err(SyntaxError::Syntax {
                    line: self.line,
                    column,
                    message: "right side must be a combination c*a<k> with ascending k".to_string(),
                });
            }
            row.push((word[0], c));
        }
        Ok(row)
    }
}

fn parse_generator_name(s: &str) -> Option<(char, usize)> {
    let mut chars = s.chars();
    let letter = chars.next()?;
    let digits = chars.as_str();
    if !(letter == 'g' || letter == 'a')
        || digits.is_empty()
        || !digits.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    Some((letter, digits.parse().ok()?))
}

/// Parses a presentation file.
pub fn parse(text: &str) -> Result<PresentationDocument, SyntaxError> {
    let mut doc: Option<PresentationDocument> = None;
    let mut seen: BTreeMap<(u8, usize, usize), Span> = BTreeMap::new();
    let mut last_line = 0;
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let tokens = lex(line, raw_line)?;
        if tokens.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&tokens, line, raw_line.chars().count() + 1);
        let Some(doc) = doc.as_mut() else {
            doc = Some(parse_header(&mut cur)?);
            continue;
        };
        cur.letter = match doc.kind {
            DocumentKind::Group => 'g',
            DocumentKind::Algebra => 'a',
        };
        cur.n = doc.n;
        let span = Span {
            line,
            column: tokens[0].column,
        };
        let decl = match doc.kind {
            DocumentKind::Group => parse_group_line(&mut cur)?,
            DocumentKind::Algebra => {
                parse_algebra_line(&mut cur, doc.ring.expect("algebra header has a ring"))?
            }
        };
        cur.expect_end()?;
        if seen.insert(decl.key(), span).is_some() {
            return Err(SyntaxError::DuplicateRelation {
                line,
                column: span.column,
                relation: raw_line.trim().to_string(),
            });
        }
        doc.declarations.push((decl, span));
    }
    doc.ok_or(SyntaxError::Syntax {
        line: last_line.max(1),
        column: 1,
        message: "missing header 'group <n>' or 'algebra <n> over <ring>'".to_string(),
    })
}

fn parse_header(cur: &mut Cursor<'_>) -> Result<PresentationDocument, SyntaxError> {
    if cur.eat_keyword("group") {
        let n = cur.small("generator count")?;
        cur.expect_end()?;
        return Ok(PresentationDocument {
            kind: DocumentKind::Group,
            ring: None,
            n,
            declarations: Vec::new(),
        });
    }
    if cur.eat_keyword("algebra") {
        let n = cur.small("generator count")?;
        cur.expect_keyword("over")?;
        let ring = if cur.eat_keyword("Z") {
            RingDescriptor::Integers
        } else if cur.eat_keyword("Q") {
            RingDescriptor::Rationals
        } else if cur.eat_keyword("GF") {
            cur.expect_sym('(')?;
            let column = cur.column();
            let p = cur.unsigned()?;
            cur.expect_sym(')')?;
            p.to_u64()
                .and_then(|p| RingDescriptor::prime_field(p).ok())
                .ok_or_else(|| SyntaxError::Syntax {
                    line: cur.line,
                    column,
                    message: format!("GF({p}) needs a prime below 2^32"),
                })?
        } else {
            return cur.error("expected a ring: Z, Q or GF(p)");
        };
        cur.expect_end()?;
        return Ok(PresentationDocument {
            kind: DocumentKind::Algebra,
            ring: Some(ring),
            n,
            declarations: Vec::new(),
        });
    }
    cur.error("expected header 'group <n>' or 'algebra <n> over <ring>'")
}

fn parse_order(cur: &mut Cursor<'_>) -> Result<Declaration, SyntaxError> {
    let gen = cur.generator()?;
    cur.expect_sym('=')?;
    let order = if cur.eat_keyword("inf") {
        RelativeOrder::Infinite
    } else {
        let v = cur.unsigned()?;
        if v.is_zero() {
            return cur.error("relative orders are positive");
        }
        RelativeOrder::Finite(v)
    };
    Ok(Declaration::Order { gen, order })
}

fn parse_group_line(cur: &mut Cursor<'_>) -> Result<Declaration, SyntaxError> {
    if cur.eat_keyword("order") {
        return parse_order(cur);
    }
    let first = cur.generator()?;
    if cur.eat_sym('^') {
        let column = cur.column();
        let exponent = cur.signed()?;
        if !exponent.is_positive() {
            return Err(SyntaxError::Syntax {
                line: cur.line,
                column,
                message: "power relations need a positive exponent".to_string(),
            });
        }
        cur.expect_sym('=')?;
        let tail = cur.tail()?;
        return Ok(Declaration::GroupPower {
            gen: first,
            exponent,
            tail,
        });
    }
    cur.expect_sym('*')?;
    let column = cur.column();
    let lower = cur.generator()?;
    if lower >= first {
        return Err(SyntaxError::Syntax {
            line: cur.line,
            column,
            message: "conjugate relations read g<j>*g<i> = g<i>*... with j > i".to_string(),
        });
    }
    let inverse = if cur.eat_sym('^') {
        let column = cur.column();
        if cur.signed()? != -BigInt::one() {
            return Err(SyntaxError::Syntax {
                line: cur.line,
                column,
                message: "only g<i> or g<i>^-1 may follow g<j>".to_string(),
            });
        }
        true
    } else {
        false
    };
    cur.expect_sym('=')?;
    let column = cur.column();
    let lead = cur.generator()?;
    let lead_inverse = if cur.eat_sym('^') {
        cur.signed()? == -BigInt::one()
    } else {
        false
    };
    if lead != lower || lead_inverse != inverse {
        let expected = if inverse {
            format!("g{}^-1", lower + 1)
        } else {
            format!("g{}", lower + 1)
        };
        return Err(SyntaxError::Syntax {
            line: cur.line,
            column,
            message: format!("right side must start with {expected}"),
        });
    }
    let tail = if cur.eat_sym('*') {
        cur.tail()?
    } else {
        Vec::new()
    };
    Ok(if inverse {
        Declaration::ConjugateByInverse {
            upper: first,
            lower,
            tail,
        }
    } else {
        Declaration::Conjugate {
            upper: first,
            lower,
            tail,
        }
    })
}

fn parse_algebra_line(
    cur: &mut Cursor<'_>,
    ring: RingDescriptor,
) -> Result<Declaration, SyntaxError> {
    if cur.eat_keyword("order") {
        return parse_order(cur);
    }
    if matches!(cur.peek(), Some(Tok::Int(_))) {
        let column = cur.column();
        let multiplier = cur.unsigned()?;
        if multiplier.is_zero() {
            return Err(SyntaxError::Syntax {
                line: cur.line,
                column,
                message: "power relations need a positive multiplier".to_string(),
            });
        }
        cur.expect_sym('*')?;
        let gen = cur.generator()?;
        cur.expect_sym('=')?;
        let row = cur.row(ring)?;
        return Ok(Declaration::AlgebraPower {
            gen,
            multiplier,
            row,
        });
    }
    let left = cur.generator()?;
    cur.expect_sym('*')?;
    let right = cur.generator()?;
    cur.expect_sym('=')?;
    let row = cur.row(ring)?;
    Ok(Declaration::Product { left, right, row })
}

fn order_conflict(
    gen: usize,
    letter: char,
    span: Span,
    declared: &RelativeOrder,
    implied: &BigInt,
) -> SyntaxError {
    SyntaxError::Syntax {
        line: span.line,
        column: span.column,
        message: format!(
            "power relation uses {implied} but {letter}{} has order {declared}",
            gen + 1
        ),
    }
}

/// Relative orders from `order` lines, overridden by power relations.
fn collect_orders(
    doc: &PresentationDocument,
    letter: char,
) -> Result<Vec<RelativeOrder>, SyntaxError> {
    let mut orders = vec![RelativeOrder::Infinite; doc.n];
    let mut declared: Vec<Option<RelativeOrder>> = vec![None; doc.n];
    for (decl, _) in &doc.declarations {
        if let Declaration::Order { gen, order } = decl {
            declared[*gen] = Some(order.clone());
            orders[*gen] = order.clone();
        }
    }
    for (decl, span) in &doc.declarations {
        let (gen, implied) = match decl {
            Declaration::GroupPower { gen, exponent, .. } => (*gen, exponent),
            Declaration::AlgebraPower {
                gen, multiplier, ..
            } => (*gen, multiplier),
            _ => continue,
        };
        if let Some(d) = &declared[gen] {
            if d.value() != Some(implied) {
                return Err(order_conflict(gen, letter, *span, d, implied));
            }
        }
        orders[gen] = RelativeOrder::Finite(implied.clone());
    }
    Ok(orders)
}

impl PresentationDocument {
    pub fn to_raw_group(&self) -> Result<RawGroupPresentation, SyntaxError> {
        let mut raw = RawGroupPresentation::new(self.n);
        raw.orders = collect_orders(self, 'g')?;
        for (decl, _) in &self.declarations {
            match decl {
                Declaration::GroupPower { gen, tail, .. } => {
                    raw.power.insert(*gen, tail.clone());
                }
                Declaration::Conjugate { upper, lower, tail } => {
                    raw.conjugate.insert((*lower, *upper), tail.clone());
                }
                Declaration::ConjugateByInverse { upper, lower, tail } => {
                    raw.conjugate_by_inverse
                        .insert((*lower, *upper), tail.clone());
                }
                _ => {}
            }
        }
        Ok(raw)
    }

    pub fn to_raw_algebra(&self) -> Result<RawAlgebraPresentation, SyntaxError> {
        let ring = self.ring.unwrap_or(RingDescriptor::Integers);
        let mut raw = RawAlgebraPresentation::new(self.n, ring);
        raw.orders = collect_orders(self, 'a')?;
        for (decl, _) in &self.declarations {
            match decl {
                Declaration::AlgebraPower { gen, row, .. } => {
                    raw.power.insert(*gen, row.clone());
                }
                Declaration::Product { left, right, row } => {
                    raw.products.insert((*left, *right), row.clone());
                }
                _ => {}
            }
        }
        Ok(raw)
    }
}

fn expect_kind(doc: &PresentationDocument, kind: DocumentKind) -> Result<(), SyntaxError> {
    if doc.kind == kind {
        return Ok(());
    }
    Err(SyntaxError::Syntax {
        line: 1,
        column: 1,
        message: match kind {
            DocumentKind::Group => "expected a group presentation".to_string(),
            DocumentKind::Algebra => "expected an algebra presentation".to_string(),
        },
    })
}

/// Parses and validates a group presentation, without deriving the inverse
/// relations.
pub fn parse_group_unreduced(text: &str) -> Result<GroupPresentation, crate::Error> {
    let doc = parse(text)?;
    expect_kind(&doc, DocumentKind::Group)?;
    Ok(GroupPresentation::validate(doc.to_raw_group()?)?)
}

/// Parses, validates and derives the inverse relations.
pub fn parse_group(text: &str, budget: u64) -> Result<GroupPresentation, crate::Error> {
    let p = parse_group_unreduced(text)?;
    let derived = p.derive_inverse_relations(budget)?;
    Ok(p.with_derived(derived))
}

pub fn parse_algebra(text: &str) -> Result<AlgebraPresentation, crate::Error> {
    let doc = parse(text)?;
    expect_kind(&doc, DocumentKind::Algebra)?;
    Ok(AlgebraPresentation::validate(doc.to_raw_algebra()?)?)
}

/// Parses a word literal such as `g3*g2^-1*g1` (or `1`) over `n` generators.
pub fn parse_word(text: &str, n: usize) -> Result<Word, SyntaxError> {
    let tokens = lex(1, text)?;
    let mut cur = Cursor::new(&tokens, 1, text.chars().count() + 1);
    cur.n = n;
    let w = cur.word()?;
    cur.expect_end()?;
    Ok(w)
}

/// Parses an algebra element such as `2*a1*a2 - a3` over `n` generators.
pub fn parse_element(
    text: &str,
    n: usize,
    ring: RingDescriptor,
) -> Result<FreeElement, SyntaxError> {
    let tokens = lex(1, text)?;
    let mut cur = Cursor::new(&tokens, 1, text.chars().count() + 1);
    cur.letter = 'a';
    cur.n = n;
    let e = cur.combination(ring)?;
    cur.expect_end()?;
    Ok(e)
}

fn write_tail(out: &mut String, tail: &[(usize, BigInt)]) {
    if tail.is_empty() {
        out.push('1');
    }
    for (idx, (k, x)) in tail.iter().enumerate() {
        if idx > 0 {
            out.push('*');
        }
        if x.is_one() {
            let _ = write!(out, "g{}", k + 1);
        } else {
            let _ = write!(out, "g{}^{}", k + 1, x);
        }
    }
}

fn sparse_row_to_element(row: &RawRow) -> FreeElement {
    FreeElement {
        terms: row.iter().map(|(k, c)| (c.clone(), vec![*k])).collect(),
    }
}

/// `*tail` and a newline, or just the newline for an empty tail.
fn write_product_tail(out: &mut String, tail: &RawTail) {
    if !tail.is_empty() {
        out.push('*');
        write_tail(out, tail);
    }
    out.push('\n');
}

/// Canonical text for a group presentation. Commuting conjugate relations
/// and trivial power relations are left implicit.
pub fn serialize_group(p: &GroupPresentation) -> String {
    let n = p.generator_count();
    let raw = p.to_raw();
    let mut out = format!("group {n}\n");
    for (i, r) in raw.orders.iter().enumerate() {
        if r.is_finite() {
            let _ = writeln!(out, "order g{} = {}", i + 1, r);
        }
    }
    for (&i, tail) in &raw.power {
        if !tail.is_empty() {
            let _ = write!(out, "g{}^{} = ", i + 1, raw.orders[i]);
            write_tail(&mut out, tail);
            out.push('\n');
        }
    }
    let commuting =
        |j: usize, tail: &RawTail| tail.len() == 1 && tail[0].0 == j && tail[0].1.is_one();
    for (&(i, j), tail) in &raw.conjugate {
        if !commuting(j, tail) {
            let _ = write!(out, "g{}*g{} = g{}", j + 1, i + 1, i + 1);
            write_product_tail(&mut out, tail);
        }
    }
    for (&(i, j), tail) in &raw.conjugate_by_inverse {
        if !commuting(j, tail) {
            let _ = write!(out, "g{}*g{}^-1 = g{}^-1", j + 1, i + 1, i + 1);
            write_product_tail(&mut out, tail);
        }
    }
    out
}

/// Canonical text for an algebra presentation. Zero products and trivial
/// power relations are left implicit.
pub fn serialize_algebra(p: &AlgebraPresentation) -> String {
    let raw = p.to_raw();
    let mut out = format!("algebra {} over {}\n", p.generator_count(), p.ring());
    for (i, r) in raw.orders.iter().enumerate() {
        if r.is_finite() {
            let _ = writeln!(out, "order a{} = {}", i + 1, r);
        }
    }
    for (&i, row) in &raw.power {
        let _ = writeln!(
            out,
            "{}*a{} = {}",
            raw.orders[i],
            i + 1,
            sparse_row_to_element(row)
        );
    }
    for (&(left, right), row) in &raw.products {
        let _ = writeln!(
            out,
            "a{}*a{} = {}",
            left + 1,
            right + 1,
            sparse_row_to_element(row)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_header_is_a_free_generator() {
        let p = parse_group("group 1\n", 100).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.order(0).is_infinite());
    }

    #[test]
    fn trivial_conjugates_serialize_without_a_tail() {
        let text = "group 2\norder g1 = 3\ng2*g1 = g1\n";
        let p = parse_group_unreduced(text).unwrap();
        assert_eq!(serialize_group(&p), text);
    }

    #[test]
    fn right_side_must_start_with_lower_generator() {
        let err = parse("group 3\ng2*g1 = g3*g1\n").unwrap_err();
        assert!(matches!(err, SyntaxError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn duplicate_relations_are_rejected() {
        let err = parse("group 2\ng2*g1 = g1*g2\ng2*g1 = g1*g2^2\n").unwrap_err();
        assert!(matches!(
            err,
            SyntaxError::DuplicateRelation { line: 3, .. }
        ));
    }

    #[test]
    fn unknown_generators_are_rejected() {
        let err = parse("group 2\ng3*g1 = g1\n").unwrap_err();
        assert!(matches!(
            err,
            SyntaxError::UnknownGenerator {
                line: 2,
                column: 1,
                ..
            }
        ));
        let err = parse("group 2\na2*g1 = g1\n").unwrap_err();
        assert!(matches!(err, SyntaxError::UnknownGenerator { .. }));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("group 2\norder g1 = x\n").unwrap_err();
        assert_eq!(
            err,
            SyntaxError::Syntax {
                line: 2,
                column: 12,
                message: "expected an integer".to_string()
            }
        );
    }

    #[test]
    fn power_relation_sets_the_order() {
        let p = parse_group_unreduced("group 2\ng1^3 = g2\n").unwrap();
        assert_eq!(p.order(0), &RelativeOrder::finite(3));
        let err = parse_group_unreduced("group 2\norder g1 = 2\ng1^3 = g2\n").unwrap_err();
        assert!(matches!(err, crate::Error::Syntax(_)));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# S3\n\ngroup 2   # two generators\norder g1 = 2\n  order g2 = 3\ng2*g1 = g1*g2^2 # twist\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.declarations.len(), 3);
        assert_eq!(doc.declarations[2].1, Span { line: 6, column: 1 });
    }

    #[test]
    fn words_and_elements() {
        let w = parse_word("g3*g2^-1*g1", 3).unwrap();
        assert_eq!(w.to_string(), "g3*g2^-1*g1");
        assert!(parse_word("1", 3).unwrap().is_empty());
        assert!(parse_word("g4", 3).is_err());
        let e = parse_element("2*a1*a2 - a3 + 1/2*a1", 3, RingDescriptor::Rationals).unwrap();
        assert_eq!(e.to_string(), "2*a1*a2 - a3 + 1/2*a1");
    }

    #[test]
    fn algebra_header_and_rows() {
        let p = parse_algebra("algebra 3 over GF(3)\na1*a1 = a2\na1*a2 = 2*a3\n").unwrap();
        assert_eq!(p.ring(), RingDescriptor::PrimeField(3));
        assert_eq!(p.product_row(0, 1)[2].to_string(), "2");
        assert!(parse("algebra 2 over GF(4)\n").is_err());
        assert!(parse("algebra 2 over R\n").is_err());
    }
}
