//! Surface syntax with derived operators, and their expansion into the core.
//!
//! The parser produces this layer verbatim, so a parsed problem prints back
//! exactly as written; expansion happens on demand when an engine needs the
//! core form. Expansion follows the usual definitions: `F[I] a = top U[I] a`,
//! `G[I] a = !(top U[I] !a)`, `P`/`H` are the `S`-counterparts, and
//! `always a = H (G a)` with both intervals `[0,inf]`.

use crate::ast::{Axiom, Ci, Concept, Formula, Interval, Role};

/// Concepts with the two derived eventualities. Concept-level boxes are not
/// part of the language: a box needs general concept negation to expand, and
/// DL-Lite concepts have none.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SugaredConcept {
    Top,
    Name(String),
    NegName(String),
    Exists(Role),
    NextF(Box<SugaredConcept>),
    NextP(Box<SugaredConcept>),
    Until(Box<SugaredConcept>, Box<SugaredConcept>, Interval),
    Since(Box<SugaredConcept>, Box<SugaredConcept>, Interval),
    /// `F[I] C = top U[I] C`
    EventuallyF(Box<SugaredConcept>, Interval),
    /// `P[I] C = top S[I] C`
    EventuallyP(Box<SugaredConcept>, Interval),
}

impl SugaredConcept {
    pub fn expand(&self) -> Concept {
        match self {
            SugaredConcept::Top => Concept::Top,
            SugaredConcept::Name(n) => Concept::Name(n.clone()),
            SugaredConcept::NegName(n) => Concept::NegName(n.clone()),
            SugaredConcept::Exists(r) => Concept::Exists(r.clone()),
            SugaredConcept::NextF(c) => Concept::next_f(c.expand()),
            SugaredConcept::NextP(c) => Concept::next_p(c.expand()),
            SugaredConcept::Until(c, d, i) => Concept::until(c.expand(), d.expand(), *i),
            SugaredConcept::Since(c, d, i) => Concept::since(c.expand(), d.expand(), *i),
            SugaredConcept::EventuallyF(c, i) => Concept::until(Concept::Top, c.expand(), *i),
            SugaredConcept::EventuallyP(c, i) => Concept::since(Concept::Top, c.expand(), *i),
        }
    }

    pub fn from_core(c: &Concept) -> SugaredConcept {
        match c {
            Concept::Top => SugaredConcept::Top,
            Concept::Name(n) => SugaredConcept::Name(n.clone()),
            Concept::NegName(n) => SugaredConcept::NegName(n.clone()),
            Concept::Exists(r) => SugaredConcept::Exists(r.clone()),
            Concept::NextF(x) => SugaredConcept::NextF(Box::new(Self::from_core(x))),
            Concept::NextP(x) => SugaredConcept::NextP(Box::new(Self::from_core(x))),
            Concept::Until(a, b, i) => SugaredConcept::Until(
                Box::new(Self::from_core(a)),
                Box::new(Self::from_core(b)),
                *i,
            ),
            Concept::Since(a, b, i) => SugaredConcept::Since(
                Box::new(Self::from_core(a)),
                Box::new(Self::from_core(b)),
                *i,
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SugaredAxiom {
    Ci(Vec<SugaredConcept>, Vec<SugaredConcept>),
    ConceptAssertion(SugaredConcept, String),
    RoleAssertion(Role, String, String),
}

impl SugaredAxiom {
    pub fn expand(&self) -> Axiom {
        match self {
            SugaredAxiom::Ci(lhs, rhs) => Axiom::Ci(Ci::new(
                lhs.iter().map(|c| c.expand()).collect(),
                rhs.iter().map(|c| c.expand()).collect(),
            )),
            SugaredAxiom::ConceptAssertion(c, a) => Axiom::ConceptAssertion(c.expand(), a.clone()),
            SugaredAxiom::RoleAssertion(r, a, b) => {
                Axiom::RoleAssertion(r.clone(), a.clone(), b.clone())
            }
        }
    }

    pub fn from_core(ax: &Axiom) -> SugaredAxiom {
        match ax {
            Axiom::Ci(ci) => SugaredAxiom::Ci(
                ci.lhs.iter().map(SugaredConcept::from_core).collect(),
                ci.rhs.iter().map(SugaredConcept::from_core).collect(),
            ),
            Axiom::ConceptAssertion(c, a) => {
                SugaredAxiom::ConceptAssertion(SugaredConcept::from_core(c), a.clone())
            }
            Axiom::RoleAssertion(r, a, b) => {
                SugaredAxiom::RoleAssertion(r.clone(), a.clone(), b.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SugaredFormula {
    Ax(SugaredAxiom),
    Not(Box<SugaredFormula>),
    And(Box<SugaredFormula>, Box<SugaredFormula>),
    Or(Box<SugaredFormula>, Box<SugaredFormula>),
    Implies(Box<SugaredFormula>, Box<SugaredFormula>),
    NextF(Box<SugaredFormula>),
    NextP(Box<SugaredFormula>),
    Until(Box<SugaredFormula>, Box<SugaredFormula>, Interval),
    Since(Box<SugaredFormula>, Box<SugaredFormula>, Interval),
    EventuallyF(Box<SugaredFormula>, Interval),
    AlwaysF(Box<SugaredFormula>, Interval),
    EventuallyP(Box<SugaredFormula>, Interval),
    AlwaysP(Box<SugaredFormula>, Interval),
    /// `⊠ f`: at every time point.
    Always(Box<SugaredFormula>),
}

impl SugaredFormula {
    pub fn ax(a: SugaredAxiom) -> Self {
        SugaredFormula::Ax(a)
    }

    pub fn and(a: SugaredFormula, b: SugaredFormula) -> Self {
        SugaredFormula::And(Box::new(a), Box::new(b))
    }

    pub fn conj(mut parts: Vec<SugaredFormula>) -> SugaredFormula {
        let last = parts.pop().expect("conj of nonempty list");
        parts
            .into_iter()
            .rev()
            .fold(last, |acc, f| SugaredFormula::and(f, acc))
    }

    pub fn always(f: SugaredFormula) -> Self {
        SugaredFormula::Always(Box::new(f))
    }

    pub fn expand(&self) -> Formula {
        match self {
            SugaredFormula::Ax(a) => Formula::Ax(a.expand()),
            SugaredFormula::Not(f) => Formula::not(f.expand()),
            SugaredFormula::And(a, b) => Formula::and(a.expand(), b.expand()),
            SugaredFormula::Or(a, b) => Formula::or(a.expand(), b.expand()),
            SugaredFormula::Implies(a, b) => Formula::implies(a.expand(), b.expand()),
            SugaredFormula::NextF(f) => Formula::next_f(f.expand()),
            SugaredFormula::NextP(f) => Formula::next_p(f.expand()),
            SugaredFormula::Until(a, b, i) => Formula::until(a.expand(), b.expand(), *i),
            SugaredFormula::Since(a, b, i) => Formula::since(a.expand(), b.expand(), *i),
            SugaredFormula::EventuallyF(f, i) => Formula::until(Formula::truth(), f.expand(), *i),
            SugaredFormula::AlwaysF(f, i) => Formula::box_f(f.expand(), *i),
            SugaredFormula::EventuallyP(f, i) => Formula::since(Formula::truth(), f.expand(), *i),
            SugaredFormula::AlwaysP(f, i) => Formula::box_p(f.expand(), *i),
            SugaredFormula::Always(f) => Formula::box_star(f.expand()),
        }
    }

    pub fn from_core(f: &Formula) -> SugaredFormula {
        match f {
            Formula::Ax(a) => SugaredFormula::Ax(SugaredAxiom::from_core(a)),
            Formula::Not(g) => SugaredFormula::Not(Box::new(Self::from_core(g))),
            Formula::And(a, b) => {
                SugaredFormula::and(Self::from_core(a), Self::from_core(b))
            }
            Formula::NextF(g) => SugaredFormula::NextF(Box::new(Self::from_core(g))),
            Formula::NextP(g) => SugaredFormula::NextP(Box::new(Self::from_core(g))),
            Formula::Until(a, b, i) => SugaredFormula::Until(
                Box::new(Self::from_core(a)),
                Box::new(Self::from_core(b)),
                *i,
            ),
            Formula::Since(a, b, i) => SugaredFormula::Since(
                Box::new(Self::from_core(a)),
                Box::new(Self::from_core(b)),
                *i,
            ),
        }
    }
}

/// Expands every derived operator, returning a core formula.
///
/// Idempotent: expanding an already-core formula is the identity (on the
/// embedding of the result back into the sugared layer).
pub fn expand_abbreviations(raw: &SugaredFormula) -> Formula {
    raw.expand()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{Axiom, Concept};

    fn assertion(name: &str, ind: &str) -> SugaredFormula {
        SugaredFormula::ax(SugaredAxiom::ConceptAssertion(
            SugaredConcept::Name(name.into()),
            ind.into(),
        ))
    }

    #[test]
    fn eventually_is_top_until() {
        // F[0,3] A(a)  ->  top U[0,3] A(a)
        let f = SugaredFormula::EventuallyF(Box::new(assertion("A", "a")), Interval::bounded(0, 3));
        let expanded = expand_abbreviations(&f);
        let expected = Formula::until(
            Formula::truth(),
            Formula::Ax(Axiom::ConceptAssertion(Concept::name("A"), "a".into())),
            Interval::bounded(0, 3),
        );
        assert_eq!(expanded, expected);
    }

    #[test]
    fn bare_until_is_zero_to_infinity() {
        let f = SugaredFormula::Until(
            Box::new(assertion("A", "a")),
            Box::new(assertion("B", "a")),
            Interval::unbounded(),
        );
        match expand_abbreviations(&f) {
            Formula::Until(_, _, i) => assert!(i.is_qualitative()),
            other => panic!("unexpected expansion {other:?}"),
        }
    }

    #[test]
    fn always_expands_to_nested_past_future_boxes() {
        // always (A <= B)
        //   -> !(top S[0,inf] !!(top U[0,inf] !(A <= B)))
        let ci = SugaredFormula::ax(SugaredAxiom::Ci(
            vec![SugaredConcept::Name("A".into())],
            vec![SugaredConcept::Name("B".into())],
        ));
        let expanded = expand_abbreviations(&SugaredFormula::always(ci.clone()));
        let body = ci.expand();
        let expected = Formula::not(Formula::since(
            Formula::truth(),
            Formula::not(Formula::not(Formula::until(
                Formula::truth(),
                Formula::not(body.clone()),
                Interval::unbounded(),
            ))),
            Interval::unbounded(),
        ));
        assert_eq!(expanded, expected);
        assert_eq!(expanded.match_box_star(), Some(&body));
    }

    #[test]
    fn expansion_is_idempotent() {
        let f = SugaredFormula::always(SugaredFormula::Or(
            Box::new(assertion("A", "a")),
            Box::new(assertion("B", "b")),
        ));
        let once = expand_abbreviations(&f);
        let twice = expand_abbreviations(&SugaredFormula::from_core(&once));
        assert_eq!(once, twice);
    }
}
