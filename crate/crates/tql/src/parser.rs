//! Text format for problems (`.tql`) with round-trip rendering.
//!
//! The grammar is ASCII only. A file is a list of declaration lines followed
//! by one `formula:` line:
//!
//! ```text
//! timeline: Z
//! rigid concept Male
//! irigid concept MasterStudent 24
//! formula: always (MasterStudent <= Student) & Student(ann)
//! ```
//!
//! Formula connectives, loosest binding first: `->`, `|`, `&`, binary `U`/`S`
//! (right associative), then the unary prefixes `!`, `X`, `Y`, `F[l,u]`,
//! `G[l,u]`, `P[l,u]`, `H[l,u]`, `always`. An omitted interval means
//! `[0,inf]`. Concepts use `top`, `!A`, `exists R`, `exists inv R`, `X`, `Y`,
//! `U`, `S`, `F`, `P`; concept-level `G`/`H` do not exist because DL-Lite
//! concepts have no general negation to expand them with. `#` starts a line
//! comment.

use std::fmt;

use crate::ast::{Bound, Concept, Interval, Role};
use crate::problem::{Problem, RigidityDeclarations, SymbolKind, Timeline};
use crate::sugar::{SugaredAxiom, SugaredConcept, SugaredFormula};

/// Byte offsets plus 1-based line/column of the start position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub begin: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at line {}, column {}", span.line, span.column)]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
}

const RESERVED: &[&str] = &[
    "rigid", "irigid", "concept", "role", "timeline", "formula", "top", "bot", "exists", "inv",
    "always", "inf", "X", "Y", "U", "S", "F", "G", "P", "H",
];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Amp,
    Pipe,
    Bang,
    Arrow,
    Leq,
    Colon,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Amp => write!(f, "`&`"),
            Tok::Pipe => write!(f, "`|`"),
            Tok::Bang => write!(f, "`!`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Leq => write!(f, "`<=`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexer;

impl Lexer {
    fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
        let bytes = text.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        let mut line = 1;
        let mut col = 1;
        let span_at = |i: usize, len: usize, line: usize, col: usize| SourceSpan {
            begin: i,
            end: i + len,
            line,
            column: col,
        };
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c == '\n' {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            if c.is_whitespace() {
                i += 1;
                col += 1;
                continue;
            }
            if c == '#' {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            let start = (i, line, col);
            let tok = match c {
                '(' => Some((Tok::LParen, 1)),
                ')' => Some((Tok::RParen, 1)),
                '[' => Some((Tok::LBracket, 1)),
                ']' => Some((Tok::RBracket, 1)),
                ',' => Some((Tok::Comma, 1)),
                '&' => Some((Tok::Amp, 1)),
                '|' => Some((Tok::Pipe, 1)),
                '!' => Some((Tok::Bang, 1)),
                ':' => Some((Tok::Colon, 1)),
                '-' => {
                    if bytes.get(i + 1) == Some(&b'>') {
                        Some((Tok::Arrow, 2))
                    } else {
                        None
                    }
                }
                '<' => {
                    if bytes.get(i + 1) == Some(&b'=') {
                        Some((Tok::Leq, 2))
                    } else {
                        None
                    }
                }
                _ => None,
            };
            if let Some((tok, len)) = tok {
                toks.push((tok, span_at(start.0, len, start.1, start.2)));
                i += len;
                col += len;
                continue;
            }
            if c.is_ascii_digit() {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let lit = &text[i..j];
                let n: u64 = lit.parse().map_err(|_| ParseError {
                    message: format!("integer literal `{lit}` out of range"),
                    span: span_at(i, j - i, line, col),
                })?;
                toks.push((Tok::Int(n), span_at(i, j - i, line, col)));
                col += j - i;
                i = j;
                continue;
            }
            if c.is_ascii_alphabetic() {
                let mut j = i;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                toks.push((
                    Tok::Ident(text[i..j].to_owned()),
                    span_at(i, j - i, line, col),
                ));
                col += j - i;
                i = j;
                continue;
            }
            return Err(ParseError {
                message: format!("unexpected character `{c}`"),
                span: span_at(i, 1, line, col),
            });
        }
        let end_span = SourceSpan {
            begin: text.len().saturating_sub(1),
            end: text.len(),
            line,
            column: col,
        };
        toks.push((Tok::Eof, end_span));
        Ok(toks)
    }
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

// Errors that identify the intended production unambiguously; backtracking
// must not swallow these.
fn is_fatal(e: &ParseError) -> bool {
    e.message.starts_with("X/Y may not prefix")
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            message: message.into(),
            span: self.span(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {tok}, found {}", self.peek()))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if let Tok::Ident(s) = self.peek() {
            if s == kw {
                self.bump();
                return true;
            }
        }
        false
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            Tok::Ident(s) => self.err(format!("`{s}` is a reserved word, not a name")),
            other => self.err(format!("expected a name, found {other}")),
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            other => self.err(format!("expected an integer, found {other}")),
        }
    }

    /// `[l, u]` with `u` an integer or `inf`; omitted entirely means `[0,inf]`.
    fn interval(&mut self) -> Result<Interval, ParseError> {
        if *self.peek() != Tok::LBracket {
            return Ok(Interval::unbounded());
        }
        let open_span = self.span();
        self.bump();
        let lower = self.int()?;
        self.expect(Tok::Comma)?;
        let upper = if self.keyword("inf") {
            Bound::Infinite
        } else {
            Bound::Finite(self.int()?)
        };
        self.expect(Tok::RBracket)?;
        Interval::new(lower, upper).map_err(|e| ParseError {
            message: e.to_string(),
            span: open_span,
        })
    }

    // ---- concepts ----

    fn concept(&mut self) -> Result<SugaredConcept, ParseError> {
        self.concept_until()
    }

    fn concept_until(&mut self) -> Result<SugaredConcept, ParseError> {
        let lhs = self.concept_unary()?;
        if self.peek_keyword("U") || self.peek_keyword("S") {
            let is_until = self.peek_keyword("U");
            self.bump();
            let i = self.interval()?;
            let rhs = self.concept_until()?;
            return Ok(if is_until {
                SugaredConcept::Until(Box::new(lhs), Box::new(rhs), i)
            } else {
                SugaredConcept::Since(Box::new(lhs), Box::new(rhs), i)
            });
        }
        Ok(lhs)
    }

    fn concept_unary(&mut self) -> Result<SugaredConcept, ParseError> {
        if self.keyword("X") {
            return Ok(SugaredConcept::NextF(Box::new(self.concept_unary()?)));
        }
        if self.keyword("Y") {
            return Ok(SugaredConcept::NextP(Box::new(self.concept_unary()?)));
        }
        if self.peek_keyword("F") {
            self.bump();
            let i = self.interval()?;
            return Ok(SugaredConcept::EventuallyF(
                Box::new(self.concept_unary()?),
                i,
            ));
        }
        if self.peek_keyword("P") {
            self.bump();
            let i = self.interval()?;
            return Ok(SugaredConcept::EventuallyP(
                Box::new(self.concept_unary()?),
                i,
            ));
        }
        if self.peek_keyword("G") || self.peek_keyword("H") {
            return self.err(
                "concept-level G/H is not expressible (DL-Lite concepts have no negation); \
                 use a box on the formula level",
            );
        }
        if self.keyword("top") {
            return Ok(SugaredConcept::Top);
        }
        if *self.peek() == Tok::Bang {
            self.bump();
            return Ok(SugaredConcept::NegName(self.name()?));
        }
        if self.keyword("exists") {
            let inverted = self.keyword("inv");
            let name = self.name()?;
            return Ok(SugaredConcept::Exists(Role {
                name,
                inverted,
            }));
        }
        if *self.peek() == Tok::LParen {
            self.bump();
            let c = self.concept()?;
            self.expect(Tok::RParen)?;
            return Ok(c);
        }
        Ok(SugaredConcept::Name(self.name()?))
    }

    // ---- axioms ----

    fn ci_rhs(&mut self) -> Result<Vec<SugaredConcept>, ParseError> {
        if self.keyword("bot") {
            return Ok(vec![]);
        }
        let mut rhs = vec![self.concept()?];
        while *self.peek() == Tok::Pipe {
            self.bump();
            rhs.push(self.concept()?);
        }
        Ok(rhs)
    }

    fn axiom(&mut self) -> Result<SugaredAxiom, ParseError> {
        // `Name(a)` / `Name(a,b)` assertions
        if let Tok::Ident(s) = self.peek() {
            if !RESERVED.contains(&s.as_str()) && self.toks[self.pos + 1].0 == Tok::LParen {
                let name = self.name()?;
                self.expect(Tok::LParen)?;
                let a = self.name()?;
                if *self.peek() == Tok::Comma {
                    self.bump();
                    let b = self.name()?;
                    self.expect(Tok::RParen)?;
                    return Ok(SugaredAxiom::RoleAssertion(Role::base(name), a, b));
                }
                self.expect(Tok::RParen)?;
                return Ok(SugaredAxiom::ConceptAssertion(
                    SugaredConcept::Name(name),
                    a,
                ));
            }
        }
        // `(C)(a)` assertion with a complex concept
        if *self.peek() == Tok::LParen {
            let save = self.pos;
            match self.complex_assertion() {
                Ok(axiom) => return Ok(axiom),
                Err(e) if is_fatal(&e) => return Err(e),
                Err(_) => self.pos = save,
            }
        }
        // concept inclusion
        let mut lhs = vec![self.concept()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs.push(self.concept()?);
        }
        self.expect(Tok::Leq)?;
        let rhs = self.ci_rhs()?;
        Ok(SugaredAxiom::Ci(lhs, rhs))
    }

    fn complex_assertion(&mut self) -> Result<SugaredAxiom, ParseError> {
        let span = self.span();
        self.expect(Tok::LParen)?;
        let c = self.concept()?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::LParen)?;
        let a = self.name()?;
        self.expect(Tok::RParen)?;
        if matches!(c, SugaredConcept::NextF(_) | SugaredConcept::NextP(_)) {
            return Err(ParseError {
                message: "X/Y may not prefix an assertion concept; write the operator on the \
                          formula level instead"
                    .into(),
                span,
            });
        }
        Ok(SugaredAxiom::ConceptAssertion(c, a))
    }

    // ---- formulas ----

    fn formula(&mut self) -> Result<SugaredFormula, ParseError> {
        self.formula_implies()
    }

    fn formula_implies(&mut self) -> Result<SugaredFormula, ParseError> {
        let lhs = self.formula_or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula_implies()?;
            return Ok(SugaredFormula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn formula_or(&mut self) -> Result<SugaredFormula, ParseError> {
        let mut lhs = self.formula_and()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.formula_and()?;
            lhs = SugaredFormula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn formula_and(&mut self) -> Result<SugaredFormula, ParseError> {
        let mut lhs = self.formula_until()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.formula_until()?;
            lhs = SugaredFormula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn formula_until(&mut self) -> Result<SugaredFormula, ParseError> {
        let lhs = self.formula_unary()?;
        if self.peek_keyword("U") || self.peek_keyword("S") {
            let is_until = self.peek_keyword("U");
            self.bump();
            let i = self.interval()?;
            let rhs = self.formula_until()?;
            return Ok(if is_until {
                SugaredFormula::Until(Box::new(lhs), Box::new(rhs), i)
            } else {
                SugaredFormula::Since(Box::new(lhs), Box::new(rhs), i)
            });
        }
        Ok(lhs)
    }

    fn formula_unary(&mut self) -> Result<SugaredFormula, ParseError> {
        if *self.peek() == Tok::Bang {
            // `!A(a)`-style negated-name assertions are concept-level bangs,
            // so only treat `!` as formula negation when no name-paren
            // assertion shape follows a concept position; formula `!` first.
            self.bump();
            return Ok(SugaredFormula::Not(Box::new(self.formula_unary()?)));
        }
        if self.keyword("X") {
            return Ok(SugaredFormula::NextF(Box::new(self.formula_unary()?)));
        }
        if self.keyword("Y") {
            return Ok(SugaredFormula::NextP(Box::new(self.formula_unary()?)));
        }
        if self.keyword("always") {
            return Ok(SugaredFormula::Always(Box::new(self.formula_unary()?)));
        }
        for (kw, ctor) in [
            ("F", true),
            ("G", false),
            ("P", true),
            ("H", false),
        ] {
            if self.peek_keyword(kw) {
                self.bump();
                let i = self.interval()?;
                let arg = Box::new(self.formula_unary()?);
                return Ok(match (kw, ctor) {
                    ("F", _) => SugaredFormula::EventuallyF(arg, i),
                    ("G", _) => SugaredFormula::AlwaysF(arg, i),
                    ("P", _) => SugaredFormula::EventuallyP(arg, i),
                    _ => SugaredFormula::AlwaysP(arg, i),
                });
            }
        }
        self.formula_atom()
    }

    fn formula_atom(&mut self) -> Result<SugaredFormula, ParseError> {
        // assertion / CI first, parenthesized formula as fallback
        let save = self.pos;
        match self.axiom() {
            Ok(ax) => Ok(SugaredFormula::Ax(ax)),
            Err(axiom_err) if is_fatal(&axiom_err) => Err(axiom_err),
            Err(axiom_err) => {
                self.pos = save;
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let f = self.formula()?;
                    self.expect(Tok::RParen)?;
                    return Ok(f);
                }
                Err(axiom_err)
            }
        }
    }

    fn problem(&mut self) -> Result<Problem, ParseError> {
        let mut rigidity = RigidityDeclarations::new();
        let mut timeline = Timeline::Int;
        let mut saw_timeline = false;
        loop {
            if self.keyword("timeline") {
                self.expect(Tok::Colon)?;
                if saw_timeline {
                    return self.err("duplicate timeline header");
                }
                saw_timeline = true;
                let span = self.span();
                match self.bump() {
                    Tok::Ident(s) if s == "Z" => timeline = Timeline::Int,
                    Tok::Ident(s) if s == "N" => timeline = Timeline::Nat,
                    other => {
                        return Err(ParseError {
                            message: format!("expected `Z` or `N`, found {other}"),
                            span,
                        })
                    }
                }
                continue;
            }
            if self.peek_keyword("rigid") || self.peek_keyword("irigid") {
                let interval_rigid = self.peek_keyword("irigid");
                let decl_span = self.span();
                self.bump();
                let kind = if self.keyword("concept") {
                    SymbolKind::Concept
                } else if self.keyword("role") {
                    SymbolKind::Role
                } else {
                    return self.err("expected `concept` or `role`");
                };
                let name = self.name()?;
                let result = if interval_rigid {
                    let k = self.int()?;
                    rigidity.declare_interval_rigid(kind, &name, k)
                } else {
                    rigidity.declare_rigid(kind, &name)
                };
                if let Err(e) = result {
                    return Err(ParseError {
                        message: e.to_string(),
                        span: decl_span,
                    });
                }
                continue;
            }
            break;
        }
        if !self.keyword("formula") {
            return self.err(format!("expected `formula:`, found {}", self.peek()));
        }
        self.expect(Tok::Colon)?;
        let formula = self.formula()?;
        if *self.peek() != Tok::Eof {
            return self.err(format!("trailing input: {}", self.peek()));
        }
        Ok(Problem {
            formula,
            rigidity,
            timeline,
            hint: None,
        })
    }
}

/// Parses a problem from its text form.
pub fn parse(text: &str) -> Result<Problem, ParseError> {
    let toks = Lexer::lex(text)?;
    Parser { toks, pos: 0 }.problem()
}

/// Parses a bare formula (no headers), used by certificate files.
pub fn parse_formula(text: &str) -> Result<SugaredFormula, ParseError> {
    let toks = Lexer::lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("trailing input: {}", p.peek()));
    }
    Ok(f)
}

/// Parses a bare concept, used by certificate files.
pub fn parse_concept(text: &str) -> Result<Concept, ParseError> {
    let toks = Lexer::lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let c = p.concept()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("trailing input: {}", p.peek()));
    }
    Ok(c.expand())
}

// ---- rendering ----

fn render_interval(i: Interval) -> String {
    format!("[{},{}]", i.lower, i.upper)
}

fn render_role(r: &Role) -> String {
    if r.inverted {
        format!("exists inv {}", r.name)
    } else {
        format!("exists {}", r.name)
    }
}

// concept precedence: 1 = U/S operand position, 2 = unary, 3 = atom
fn render_concept_prec(c: &SugaredConcept, prec: u8) -> String {
    let (s, my) = match c {
        SugaredConcept::Top => ("top".to_owned(), 3),
        SugaredConcept::Name(n) => (n.clone(), 3),
        SugaredConcept::NegName(n) => (format!("!{n}"), 3),
        SugaredConcept::Exists(r) => (render_role(r), 2),
        SugaredConcept::NextF(x) => (format!("X {}", render_concept_prec(x, 2)), 2),
        SugaredConcept::NextP(x) => (format!("Y {}", render_concept_prec(x, 2)), 2),
        SugaredConcept::EventuallyF(x, i) => (
            format!("F{} {}", render_interval(*i), render_concept_prec(x, 2)),
            2,
        ),
        SugaredConcept::EventuallyP(x, i) => (
            format!("P{} {}", render_interval(*i), render_concept_prec(x, 2)),
            2,
        ),
        SugaredConcept::Until(a, b, i) => (
            format!(
                "{} U{} {}",
                render_concept_prec(a, 2),
                render_interval(*i),
                render_concept_prec(b, 1)
            ),
            1,
        ),
        SugaredConcept::Since(a, b, i) => (
            format!(
                "{} S{} {}",
                render_concept_prec(a, 2),
                render_interval(*i),
                render_concept_prec(b, 1)
            ),
            1,
        ),
    };
    if my < prec {
        format!("({s})")
    } else {
        s
    }
}

pub fn render_sugared_concept(c: &SugaredConcept) -> String {
    render_concept_prec(c, 0)
}

pub fn render_concept(c: &Concept) -> String {
    render_sugared_concept(&SugaredConcept::from_core(c))
}

fn render_axiom(ax: &SugaredAxiom) -> String {
    match ax {
        SugaredAxiom::Ci(lhs, rhs) => {
            let l = if lhs.is_empty() {
                "top".to_owned()
            } else {
                lhs.iter()
                    .map(|c| render_concept_prec(c, 2))
                    .collect::<Vec<_>>()
                    .join(" & ")
            };
            let r = if rhs.is_empty() {
                "bot".to_owned()
            } else {
                rhs.iter()
                    .map(|c| render_concept_prec(c, 2))
                    .collect::<Vec<_>>()
                    .join(" | ")
            };
            format!("{l} <= {r}")
        }
        SugaredAxiom::ConceptAssertion(c, a) => match c {
            SugaredConcept::Name(n) => format!("{n}({a})"),
            other => format!("({})({a})", render_sugared_concept(other)),
        },
        SugaredAxiom::RoleAssertion(r, a, b) => format!("{}({a},{b})", r.name),
    }
}

// formula precedence: 0 = CI, 1 = ->, 2 = |, 3 = &, 4 = U/S, 5 = unary, 6 = atom
fn render_formula_prec(f: &SugaredFormula, prec: u8) -> String {
    let (s, my) = match f {
        SugaredFormula::Ax(ax) => {
            let my = match ax {
                SugaredAxiom::Ci(..) => 0,
                _ => 6,
            };
            (render_axiom(ax), my)
        }
        SugaredFormula::Not(g) => (format!("!{}", render_formula_prec(g, 5)), 5),
        SugaredFormula::NextF(g) => (format!("X {}", render_formula_prec(g, 5)), 5),
        SugaredFormula::NextP(g) => (format!("Y {}", render_formula_prec(g, 5)), 5),
        SugaredFormula::Always(g) => (format!("always {}", render_formula_prec(g, 5)), 5),
        SugaredFormula::EventuallyF(g, i) => (
            format!("F{} {}", render_interval(*i), render_formula_prec(g, 5)),
            5,
        ),
        SugaredFormula::AlwaysF(g, i) => (
            format!("G{} {}", render_interval(*i), render_formula_prec(g, 5)),
            5,
        ),
        SugaredFormula::EventuallyP(g, i) => (
            format!("P{} {}", render_interval(*i), render_formula_prec(g, 5)),
            5,
        ),
        SugaredFormula::AlwaysP(g, i) => (
            format!("H{} {}", render_interval(*i), render_formula_prec(g, 5)),
            5,
        ),
        SugaredFormula::Until(a, b, i) => (
            format!(
                "{} U{} {}",
                render_formula_prec(a, 5),
                render_interval(*i),
                render_formula_prec(b, 4)
            ),
            4,
        ),
        SugaredFormula::Since(a, b, i) => (
            format!(
                "{} S{} {}",
                render_formula_prec(a, 5),
                render_interval(*i),
                render_formula_prec(b, 4)
            ),
            4,
        ),
        SugaredFormula::And(a, b) => (
            format!(
                "{} & {}",
                render_formula_prec(a, 3),
                render_formula_prec(b, 4)
            ),
            3,
        ),
        SugaredFormula::Or(a, b) => (
            format!(
                "{} | {}",
                render_formula_prec(a, 2),
                render_formula_prec(b, 3)
            ),
            2,
        ),
        SugaredFormula::Implies(a, b) => (
            format!(
                "{} -> {}",
                render_formula_prec(a, 2),
                render_formula_prec(b, 1)
            ),
            1,
        ),
    };
    if my < prec {
        format!("({s})")
    } else {
        s
    }
}

pub fn render_formula(f: &SugaredFormula) -> String {
    render_formula_prec(f, 0)
}

pub fn render_core_formula(f: &crate::ast::Formula) -> String {
    render_formula(&SugaredFormula::from_core(f))
}

/// Renders a problem in canonical form: explicit timeline, sorted
/// declarations, explicit intervals, single spaces, minimal parentheses.
pub fn render(p: &Problem) -> String {
    let mut out = String::new();
    out.push_str(match p.timeline {
        Timeline::Int => "timeline: Z\n",
        Timeline::Nat => "timeline: N\n",
    });
    for (kind, name) in p.rigidity.rigid_symbols() {
        let kw = match kind {
            SymbolKind::Concept => "concept",
            SymbolKind::Role => "role",
        };
        out.push_str(&format!("rigid {kw} {name}\n"));
    }
    for (kind, name, k) in p.rigidity.interval_rigid_symbols() {
        let kw = match kind {
            SymbolKind::Concept => "concept",
            SymbolKind::Role => "role",
        };
        out.push_str(&format!("irigid {kw} {name} {k}\n"));
    }
    out.push_str("formula: ");
    out.push_str(&render_formula(&p.formula));
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(text: &str) -> Problem {
        let p = parse(text).unwrap_or_else(|e| panic!("parse failed on {text:?}: {e}"));
        let rendered = render(&p);
        let q = parse(&rendered)
            .unwrap_or_else(|e| panic!("re-parse failed on {rendered:?}: {e}"));
        assert_eq!(p, q, "round trip changed structure for {text:?}");
        p
    }

    #[test]
    fn parses_rigid_declaration() {
        let p = roundtrip("rigid concept Male\nformula: always (Male <= Male)");
        assert!(p.rigidity.is_rigid(SymbolKind::Concept, "Male"));
    }

    #[test]
    fn parses_interval_rigid_declaration() {
        let p = roundtrip("irigid concept MasterStudent 24\nformula: MasterStudent(ann)");
        assert_eq!(
            p.rigidity
                .interval_rigidity(SymbolKind::Concept, "MasterStudent"),
            Some(24)
        );
    }

    #[test]
    fn parses_concept_level_diamond_ci() {
        let p =
            roundtrip("formula: (exists EnrolledIn) <= F[0,3] (exists Payment)");
        match &p.formula {
            SugaredFormula::Ax(SugaredAxiom::Ci(lhs, rhs)) => {
                assert_eq!(lhs.len(), 1);
                assert!(matches!(rhs[0], SugaredConcept::EventuallyF(_, i) if i == Interval::bounded(0, 3)));
            }
            other => panic!("unexpected parse {other:?}"),
        }
    }

    #[test]
    fn empty_lhs_ci_renders_top() {
        let p = parse("formula: top <= A").unwrap();
        assert_eq!(render(&p), "timeline: Z\nformula: top <= A\n");
    }

    #[test]
    fn interval_to_infinity_renders_inf() {
        let p = parse("formula: A(a) U[2,inf] B(a)").unwrap();
        assert!(render(&p).contains("U[2,inf]"));
        // intervals are always printed explicitly
        let q = parse("formula: A(a) U B(a)").unwrap();
        assert!(render(&q).contains("U[0,inf]"));
    }

    #[test]
    fn parse_errors_carry_spans() {
        for bad in [
            "formula: (A <= ",
            "formula: A <== B",
            "rigid concept formula\nformula: top <= top",
            "irigid concept A 1\nformula: A(a)",
            "formula: A(a) U[3,1] B(a)",
            "rigid concept A\nrigid concept A\nformula: A(a)",
            "formula: X",
            "",
        ] {
            let err = parse(bad).unwrap_err();
            assert!(err.span.begin <= err.span.end);
            assert!(err.span.end <= bad.len().max(1));
        }
    }

    #[test]
    fn timeline_header() {
        let p = roundtrip("timeline: N\nformula: A(a)");
        assert_eq!(p.timeline, Timeline::Nat);
    }

    #[test]
    fn assertion_forms() {
        roundtrip("formula: R(a,b) & A(a) & (exists R)(b)");
        let err = parse("formula: (X A)(a)").unwrap_err();
        assert!(err.message.contains("formula level"));
    }

    #[test]
    fn operator_precedence_shape() {
        let p = parse("formula: A(a) & B(b) | C(c) -> D(d)").unwrap();
        // -> binds loosest, then |, then &
        assert!(matches!(p.formula, SugaredFormula::Implies(..)));
        let p2 = parse("formula: !A(a) & B(b)").unwrap();
        assert!(matches!(p2.formula, SugaredFormula::And(..)));
    }

    #[test]
    fn negated_name_in_ci() {
        roundtrip("formula: D <= !A");
        roundtrip("formula: !A & X B <= X X A");
    }
}
