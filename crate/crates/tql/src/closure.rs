//! Closure sets: subconcepts and subformulas closed under single negation,
//! plus the individuals and roles occurring in a problem.

use std::collections::BTreeSet;

use crate::ast::{Axiom, Concept, Formula, Role, Signed};
use crate::problem::Problem;

/// The four closure sets of a problem.
///
/// `concepts` always contains `top` and, for every role occurring anywhere in
/// the formula, both `exists R` and `exists inv R`: the quasiworld conditions
/// quantify over those even when they do not occur syntactically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureSets {
    pub concepts: BTreeSet<Signed<Concept>>,
    /// Closed under canonical single negation: `f` is in iff `f.negated()` is.
    pub formulas: BTreeSet<Formula>,
    pub individuals: BTreeSet<String>,
    pub roles: BTreeSet<Role>,
}

impl ClosureSets {
    pub fn contains_concept(&self, c: &Concept) -> bool {
        self.concepts.contains(&Signed::Pos(c.clone()))
    }

    /// Positive (unsigned) members of the concept closure.
    pub fn positive_concepts(&self) -> impl Iterator<Item = &Concept> {
        self.concepts.iter().filter_map(|s| match s {
            Signed::Pos(c) => Some(c),
            Signed::Neg(_) => None,
        })
    }

    /// Interval-rigid concept names occurring in the closure, with their k.
    pub fn interval_rigid_concepts(
        &self,
        rigidity: &crate::problem::RigidityDeclarations,
    ) -> Vec<(String, u64)> {
        let mut out = Vec::new();
        for c in self.positive_concepts() {
            if let Concept::Name(n) = c {
                if let Some(k) =
                    rigidity.interval_rigidity(crate::problem::SymbolKind::Concept, n)
                {
                    out.push((n.clone(), k));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Adds `X A`, `Y A` (and negations) for every interval-rigid concept
    /// name `A` in the closure. The type conditions T4/T5 mention these, so
    /// engines work over this extended alphabet.
    pub fn extend_for_interval_rigidity(
        &mut self,
        rigidity: &crate::problem::RigidityDeclarations,
    ) {
        for (name, _) in self.interval_rigid_concepts(rigidity) {
            for c in [
                Concept::next_f(Concept::name(name.clone())),
                Concept::next_p(Concept::name(name.clone())),
            ] {
                self.concepts.insert(Signed::Pos(c.clone()));
                self.concepts.insert(Signed::Neg(c));
            }
        }
    }
}

/// Computes the closure sets of a problem's core formula.
pub fn closure(p: &Problem) -> ClosureSets {
    closure_of_formula(&p.core_formula())
}

pub fn closure_of_formula(root: &Formula) -> ClosureSets {
    let mut concepts: BTreeSet<Signed<Concept>> = BTreeSet::new();
    let mut formulas: BTreeSet<Formula> = BTreeSet::new();
    let mut individuals = BTreeSet::new();
    let mut roles = BTreeSet::new();

    let push_concept = |c: &Concept, concepts: &mut BTreeSet<Signed<Concept>>| {
        c.for_each_subconcept(&mut |sub| {
            concepts.insert(Signed::Pos(sub.clone()));
            concepts.insert(Signed::Neg(sub.clone()));
        });
    };

    root.for_each_subformula(&mut |f| {
        formulas.insert(f.clone());
        formulas.insert(f.negated());
        if let Formula::Ax(ax) = f {
            match ax {
                Axiom::Ci(ci) => {
                    for c in ci.lhs.iter().chain(ci.rhs.iter()) {
                        push_concept(c, &mut concepts);
                    }
                }
                Axiom::ConceptAssertion(c, a) => {
                    push_concept(c, &mut concepts);
                    individuals.insert(a.clone());
                }
                Axiom::RoleAssertion(r, a, b) => {
                    roles.insert(r.clone());
                    individuals.insert(a.clone());
                    individuals.insert(b.clone());
                }
            }
        }
    });

    // top is always present
    concepts.insert(Signed::Pos(Concept::Top));
    concepts.insert(Signed::Neg(Concept::Top));

    // roles from exists-concepts, then close under inversion
    for signed in concepts.clone() {
        if let Signed::Pos(Concept::Exists(r)) = signed {
            roles.insert(r.clone());
        }
    }
    for r in roles.clone() {
        roles.insert(r.inverse());
    }

    // every role contributes both exists-concepts
    for r in &roles {
        let c = Concept::Exists(r.clone());
        concepts.insert(Signed::Pos(c.clone()));
        concepts.insert(Signed::Neg(c));
    }

    ClosureSets {
        concepts,
        formulas,
        individuals,
        roles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{Axiom, Ci};

    fn problem_of(f: Formula) -> Problem {
        Problem::from_core(f)
    }

    #[test]
    fn simple_ci_closure() {
        // (A <= B): formulas {f, !f}; concepts {top,!top,A,!A,B,!B}
        let f = Formula::ax(Axiom::Ci(Ci::new(
            vec![Concept::name("A")],
            vec![Concept::name("B")],
        )));
        let cl = closure(&problem_of(f.clone()));
        assert_eq!(cl.formulas.len(), 2);
        assert!(cl.formulas.contains(&f));
        assert!(cl.formulas.contains(&Formula::not(f)));
        assert_eq!(cl.concepts.len(), 6);
        assert!(cl.contains_concept(&Concept::name("A")));
        assert!(cl.concepts.contains(&Signed::Neg(Concept::name("B"))));
        assert!(cl.contains_concept(&Concept::Top));
        assert!(cl.individuals.is_empty());
        assert!(cl.roles.is_empty());
    }

    #[test]
    fn roles_closed_under_inversion() {
        // exists inv R <= A
        let f = Formula::ax(Axiom::ci(
            vec![Concept::Exists(Role::inverse_of("R"))],
            vec![Concept::name("A")],
        ));
        let cl = closure(&problem_of(f));
        assert!(cl.roles.contains(&Role::base("R")));
        assert!(cl.roles.contains(&Role::inverse_of("R")));
        assert!(cl.contains_concept(&Concept::Exists(Role::base("R"))));
        assert!(cl.contains_concept(&Concept::Exists(Role::inverse_of("R"))));
    }

    #[test]
    fn individuals_collected() {
        let f = Formula::and(
            Formula::ax(Axiom::RoleAssertion(Role::base("R"), "a".into(), "b".into())),
            Formula::ax(Axiom::ConceptAssertion(Concept::name("A"), "a".into())),
        );
        let cl = closure(&problem_of(f));
        assert_eq!(
            cl.individuals.iter().cloned().collect::<Vec<_>>(),
            vec!["a".to_string(), "b".to_string()]
        );
    }

    #[test]
    fn closure_is_negation_closed_and_bounded() {
        let f = Formula::until(
            Formula::ax(Axiom::ci(
                vec![Concept::next_f(Concept::name("A"))],
                vec![Concept::until(
                    Concept::name("A"),
                    Concept::name("B"),
                    crate::ast::Interval::bounded(0, 2),
                )],
            )),
            Formula::truth(),
            crate::ast::Interval::unbounded(),
        );
        let cl = closure(&problem_of(f.clone()));
        for s in &cl.concepts {
            assert!(cl.concepts.contains(&s.flipped()));
        }
        for g in &cl.formulas {
            assert!(cl.formulas.contains(&g.negated()));
        }
        // |concepts| is at most twice the subconcept count (+ role closure)
        let mut subs = BTreeSet::new();
        f.for_each_concept(&mut |c| {
            c.for_each_subconcept(&mut |s| {
                subs.insert(s.clone());
            })
        });
        subs.insert(Concept::Top);
        assert!(cl.concepts.len() <= 2 * (subs.len() + 2 * cl.roles.len()));
    }
}
