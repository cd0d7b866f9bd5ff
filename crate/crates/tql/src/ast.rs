//! Abstract syntax for temporal DL-Lite formulas over the integer timeline.
//!
//! The core constructors here are deliberately minimal: every derived operator
//! (eventualities, boxes, disjunction, implication, `always`) lives in the
//! [`sugar`](crate::sugar) layer and is expanded away before any engine runs.

use std::fmt;

/// Interval bound: a natural number or the infinity marker.
///
/// Infinity is a distinct variant, never a sentinel integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(n) => write!(f, "{n}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

/// A temporal interval `[lower, upper]` with `upper` possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lower: u64,
    pub upper: Bound,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("empty interval [{lower},{upper}]")]
pub struct EmptyInterval {
    pub lower: u64,
    pub upper: Bound,
}

impl Interval {
    pub fn new(lower: u64, upper: Bound) -> Result<Self, EmptyInterval> {
        if let Bound::Finite(u) = upper {
            if lower > u {
                return Err(EmptyInterval { lower, upper });
            }
        }
        Ok(Interval { lower, upper })
    }

    pub fn bounded(lower: u64, upper: u64) -> Self {
        Interval::new(lower, Bound::Finite(upper)).expect("non-empty interval")
    }

    /// `[0, inf]`, the qualitative (untimed) interval.
    pub fn unbounded() -> Self {
        Interval {
            lower: 0,
            upper: Bound::Infinite,
        }
    }

    pub fn from_lower(lower: u64) -> Self {
        Interval {
            lower,
            upper: Bound::Infinite,
        }
    }

    /// True iff this interval is `[0, inf]`.
    pub fn is_qualitative(&self) -> bool {
        self.lower == 0 && self.upper == Bound::Infinite
    }

    /// Membership test for a relative offset.
    pub fn contains(&self, k: u64) -> bool {
        k >= self.lower
            && match self.upper {
                Bound::Finite(u) => k <= u,
                Bound::Infinite => true,
            }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lower, self.upper)
    }
}

/// A role: a role name, possibly inverted. At most one inversion is stored;
/// `inverse` of an inverted role yields the base role back.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Role {
    pub name: String,
    pub inverted: bool,
}

impl Role {
    pub fn base(name: impl Into<String>) -> Self {
        Role {
            name: name.into(),
            inverted: false,
        }
    }

    pub fn inverse_of(name: impl Into<String>) -> Self {
        Role {
            name: name.into(),
            inverted: true,
        }
    }

    pub fn inverse(&self) -> Role {
        Role {
            name: self.name.clone(),
            inverted: !self.inverted,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            write!(f, "inv {}", self.name)
        } else {
            write!(f, "{}", self.name)
        }
    }
}

/// Core concept constructors.
///
/// `NegName` is a parse-level convenience for the Krom idiom; it survives only
/// until [`elim_negated_names`](crate::problem::elim_negated_names) runs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Top,
    Name(String),
    NegName(String),
    Exists(Role),
    NextF(Box<Concept>),
    NextP(Box<Concept>),
    Until(Box<Concept>, Box<Concept>, Interval),
    Since(Box<Concept>, Box<Concept>, Interval),
}

impl Concept {
    pub fn name(n: impl Into<String>) -> Self {
        Concept::Name(n.into())
    }

    pub fn exists(r: Role) -> Self {
        Concept::Exists(r)
    }

    pub fn next_f(c: Concept) -> Self {
        Concept::NextF(Box::new(c))
    }

    pub fn next_p(c: Concept) -> Self {
        Concept::NextP(Box::new(c))
    }

    /// `X^n C`.
    pub fn next_f_pow(c: Concept, n: u64) -> Self {
        let mut out = c;
        for _ in 0..n {
            out = Concept::next_f(out);
        }
        out
    }

    pub fn next_p_pow(c: Concept, n: u64) -> Self {
        let mut out = c;
        for _ in 0..n {
            out = Concept::next_p(out);
        }
        out
    }

    pub fn until(c: Concept, d: Concept, i: Interval) -> Self {
        Concept::Until(Box::new(c), Box::new(d), i)
    }

    pub fn since(c: Concept, d: Concept, i: Interval) -> Self {
        Concept::Since(Box::new(c), Box::new(d), i)
    }

    /// True iff the concept contains no temporal constructor.
    pub fn is_atemporal(&self) -> bool {
        match self {
            Concept::Top | Concept::Name(_) | Concept::NegName(_) | Concept::Exists(_) => true,
            Concept::NextF(_) | Concept::NextP(_) | Concept::Until(..) | Concept::Since(..) => {
                false
            }
        }
    }

    pub fn for_each_subconcept<'a>(&'a self, f: &mut impl FnMut(&'a Concept)) {
        f(self);
        match self {
            Concept::Top | Concept::Name(_) | Concept::NegName(_) | Concept::Exists(_) => {}
            Concept::NextF(c) | Concept::NextP(c) => c.for_each_subconcept(f),
            Concept::Until(c, d, _) | Concept::Since(c, d, _) => {
                c.for_each_subconcept(f);
                d.for_each_subconcept(f);
            }
        }
    }
}

/// A concept inclusion `C_1 ⊓ … ⊓ C_m ⊑ D_1 ⊔ … ⊔ D_n`.
///
/// The empty conjunction stands for ⊤ and the empty disjunction for ⊥.
/// Construction normalizes redundant `Top` members out of the left-hand side
/// so that rendering and parsing agree on a single canonical shape.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ci {
    pub lhs: Vec<Concept>,
    pub rhs: Vec<Concept>,
}

impl Ci {
    pub fn new(lhs: Vec<Concept>, rhs: Vec<Concept>) -> Self {
        let lhs = lhs.into_iter().filter(|c| *c != Concept::Top).collect();
        Ci { lhs, rhs }
    }

    /// The always-true inclusion `top <= top`.
    pub fn tautology() -> Self {
        Ci {
            lhs: vec![],
            rhs: vec![Concept::Top],
        }
    }

    /// The always-false inclusion `top <= bot`.
    pub fn falsum() -> Self {
        Ci {
            lhs: vec![],
            rhs: vec![],
        }
    }
}

/// Axioms: concept inclusions and (concept or role) assertions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Ci(Ci),
    /// `C(a)`. Invariant: the concept is never prefixed by `NextF`/`NextP`;
    /// those operators belong on the formula level in front of the assertion.
    ConceptAssertion(Concept, String),
    /// `R(a, b)` with `R` a role name (never an inverse).
    RoleAssertion(Role, String, String),
}

impl Axiom {
    pub fn ci(lhs: Vec<Concept>, rhs: Vec<Concept>) -> Self {
        Axiom::Ci(Ci::new(lhs, rhs))
    }
}

/// Core formulas. Derived operators are expanded on construction and never
/// stored; see [`sugar`](crate::sugar) for the surface layer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Ax(Axiom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    NextF(Box<Formula>),
    NextP(Box<Formula>),
    Until(Box<Formula>, Box<Formula>, Interval),
    Since(Box<Formula>, Box<Formula>, Interval),
}

impl Formula {
    pub fn ax(a: Axiom) -> Self {
        Formula::Ax(a)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn next_f(f: Formula) -> Self {
        Formula::NextF(Box::new(f))
    }

    pub fn next_p(f: Formula) -> Self {
        Formula::NextP(Box::new(f))
    }

    pub fn next_f_pow(f: Formula, n: u64) -> Self {
        let mut out = f;
        for _ in 0..n {
            out = Formula::next_f(out);
        }
        out
    }

    pub fn next_p_pow(f: Formula, n: u64) -> Self {
        let mut out = f;
        for _ in 0..n {
            out = Formula::next_p(out);
        }
        out
    }

    pub fn until(a: Formula, b: Formula, i: Interval) -> Self {
        Formula::Until(Box::new(a), Box::new(b), i)
    }

    pub fn since(a: Formula, b: Formula, i: Interval) -> Self {
        Formula::Since(Box::new(a), Box::new(b), i)
    }

    /// The canonical true formula `top <= top`.
    pub fn truth() -> Self {
        Formula::Ax(Axiom::Ci(Ci::tautology()))
    }

    /// `a ∨ b`, expanded as `¬(¬a ∧ ¬b)`.
    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
    }

    /// `a → b`, expanded as `¬(a ∧ ¬b)`.
    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::not(Formula::and(a, Formula::not(b)))
    }

    /// Right-nested conjunction of a nonempty list.
    pub fn conj(mut parts: Vec<Formula>) -> Formula {
        let last = parts.pop().expect("conj of nonempty list");
        parts
            .into_iter()
            .rev()
            .fold(last, |acc, f| Formula::and(f, acc))
    }

    /// Right-nested disjunction of a nonempty list, via `or`.
    pub fn disj(mut parts: Vec<Formula>) -> Formula {
        let last = parts.pop().expect("disj of nonempty list");
        parts
            .into_iter()
            .rev()
            .fold(last, |acc, f| Formula::or(f, acc))
    }

    /// `□F f` over the interval `i`, expanded as `¬(⊤ U_i ¬f)`.
    pub fn box_f(f: Formula, i: Interval) -> Self {
        Formula::not(Formula::until(Formula::truth(), Formula::not(f), i))
    }

    /// `□P f` over the interval `i`, expanded as `¬(⊤ S_i ¬f)`.
    pub fn box_p(f: Formula, i: Interval) -> Self {
        Formula::not(Formula::since(Formula::truth(), Formula::not(f), i))
    }

    /// `⊠ f = □P □F f`, both over `[0, inf]`.
    pub fn box_star(f: Formula) -> Self {
        Formula::box_p(
            Formula::box_f(f, Interval::unbounded()),
            Interval::unbounded(),
        )
    }

    /// Matches the exact expansion shape produced by [`Formula::box_star`],
    /// returning the wrapped body.
    pub fn match_box_star(&self) -> Option<&Formula> {
        // not (top S[0,inf] not not (top U[0,inf] not f))
        let Formula::Not(s) = self else { return None };
        let Formula::Since(t1, n1, i1) = s.as_ref() else {
            return None;
        };
        if !i1.is_qualitative() || **t1 != Formula::truth() {
            return None;
        }
        let Formula::Not(n2) = n1.as_ref() else {
            return None;
        };
        let Formula::Not(u) = n2.as_ref() else {
            return None;
        };
        let Formula::Until(t2, n3, i2) = u.as_ref() else {
            return None;
        };
        if !i2.is_qualitative() || **t2 != Formula::truth() {
            return None;
        }
        let Formula::Not(body) = n3.as_ref() else {
            return None;
        };
        Some(body)
    }

    /// Splits a right- or left-nested conjunction into its conjunct list.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            if let Formula::And(a, b) = f {
                walk(a, out);
                walk(b, out);
            } else {
                out.push(f);
            }
        }
        walk(self, &mut out);
        out
    }

    /// Canonical single negation: strips a leading `Not` instead of stacking.
    pub fn negated(&self) -> Formula {
        match self {
            Formula::Not(g) => (**g).clone(),
            other => Formula::not(other.clone()),
        }
    }

    pub fn node_count(&self) -> usize {
        let mut n = 1;
        match self {
            Formula::Ax(_) => {}
            Formula::Not(f) | Formula::NextF(f) | Formula::NextP(f) => n += f.node_count(),
            Formula::And(a, b) | Formula::Until(a, b, _) | Formula::Since(a, b, _) => {
                n += a.node_count() + b.node_count()
            }
        }
        n
    }

    pub fn for_each_subformula<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Ax(_) => {}
            Formula::Not(g) | Formula::NextF(g) | Formula::NextP(g) => g.for_each_subformula(f),
            Formula::And(a, b) | Formula::Until(a, b, _) | Formula::Since(a, b, _) => {
                a.for_each_subformula(f);
                b.for_each_subformula(f);
            }
        }
    }

    /// Visits every concept occurring in the formula's axioms.
    pub fn for_each_concept<'a>(&'a self, f: &mut impl FnMut(&'a Concept)) {
        self.for_each_subformula(&mut |sub| {
            if let Formula::Ax(ax) = sub {
                match ax {
                    Axiom::Ci(ci) => {
                        for c in ci.lhs.iter().chain(ci.rhs.iter()) {
                            f(c);
                        }
                    }
                    Axiom::ConceptAssertion(c, _) => f(c),
                    Axiom::RoleAssertion(..) => {}
                }
            }
        });
    }

    pub fn for_each_axiom<'a>(&'a self, f: &mut impl FnMut(&'a Axiom)) {
        self.for_each_subformula(&mut |sub| {
            if let Formula::Ax(ax) = sub {
                f(ax);
            }
        });
    }
}

/// A possibly-negated item, used for closure sets that are closed under
/// single negation on a purely syntactic level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Signed<T> {
    Pos(T),
    Neg(T),
}

impl<T: Clone> Signed<T> {
    pub fn flipped(&self) -> Signed<T> {
        match self {
            Signed::Pos(t) => Signed::Neg(t.clone()),
            Signed::Neg(t) => Signed::Pos(t.clone()),
        }
    }

    pub fn item(&self) -> &T {
        match self {
            Signed::Pos(t) | Signed::Neg(t) => t,
        }
    }

    pub fn is_pos(&self) -> bool {
        matches!(self, Signed::Pos(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_rejects_empty() {
        assert!(Interval::new(3, Bound::Finite(2)).is_err());
        assert!(Interval::new(3, Bound::Finite(3)).is_ok());
        assert!(Interval::new(3, Bound::Infinite).is_ok());
    }

    #[test]
    fn role_inverse_is_involutive() {
        let r = Role::base("R");
        assert_eq!(r.inverse().inverse(), r);
    }

    #[test]
    fn ci_construction_drops_top_on_lhs() {
        let ci = Ci::new(
            vec![Concept::Top, Concept::name("A")],
            vec![Concept::Top, Concept::name("B")],
        );
        assert_eq!(ci.lhs, vec![Concept::name("A")]);
        // rhs is kept verbatim
        assert_eq!(ci.rhs.len(), 2);
    }

    #[test]
    fn box_star_roundtrips_through_matcher() {
        let body = Formula::ax(Axiom::ci(
            vec![Concept::name("A")],
            vec![Concept::name("B")],
        ));
        let boxed = Formula::box_star(body.clone());
        assert_eq!(boxed.match_box_star(), Some(&body));
        assert_eq!(Formula::truth().match_box_star(), None);
    }

    #[test]
    fn negated_strips_one_level() {
        let f = Formula::truth();
        assert_eq!(f.negated(), Formula::not(f.clone()));
        assert_eq!(Formula::not(f.clone()).negated(), f);
    }
}
