//! Fragment classification: DL fragment, metric operators, concept-level
//! temporal operators, and the global-CI shape.

use std::fmt;

use crate::ast::{Axiom, Concept, Formula};
use crate::problem::Problem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DlFragment {
    Core,
    Krom,
    Horn,
    Bool,
    /// Reserved; classification is total, so this is never produced.
    None,
}

impl fmt::Display for DlFragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DlFragment::Core => "core",
            DlFragment::Krom => "krom",
            DlFragment::Horn => "horn",
            DlFragment::Bool => "bool",
            DlFragment::None => "none",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConceptTemporalOps {
    None,
    NextOnly,
    UntilSince,
}

impl fmt::Display for ConceptTemporalOps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConceptTemporalOps::None => "none",
            ConceptTemporalOps::NextOnly => "next only",
            ConceptTemporalOps::UntilSince => "until/since",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentReport {
    pub dl: DlFragment,
    /// Any interval other than `[0,inf]`, on concept or formula level.
    pub metric: bool,
    pub concept_ops: ConceptTemporalOps,
    /// The formula has the shape `always T ∧ Ψ` with `T` a conjunction of
    /// CIs and `Ψ` CI-free.
    pub global_cis_only: bool,
}

impl fmt::Display for FragmentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, {}, concept ops: {}, global-CIs-only: {}",
            self.dl,
            if self.metric { "metric" } else { "non-metric" },
            self.concept_ops,
            if self.global_cis_only { "yes" } else { "no" }
        )
    }
}

fn concept_has_interval_op(c: &Concept) -> bool {
    let mut found = false;
    c.for_each_subconcept(&mut |s| {
        if matches!(s, Concept::Until(..) | Concept::Since(..)) {
            found = true;
        }
    });
    found
}

fn concept_has_neg_name(c: &Concept) -> bool {
    let mut found = false;
    c.for_each_subconcept(&mut |s| {
        if matches!(s, Concept::NegName(_)) {
            found = true;
        }
    });
    found
}

/// Whether the formula lies in the given DL fragment: CI shape side
/// conditions plus the grammar restriction that Horn/Krom/Core concepts
/// contain no interval operators. Negated concept names are the Krom idiom
/// and are admitted in Krom and Bool only.
pub fn fits_fragment(f: &Formula, frag: DlFragment) -> bool {
    if frag == DlFragment::None {
        return false;
    }
    let mut ok = true;
    f.for_each_axiom(&mut |ax| {
        if !ok {
            return;
        }
        let (concepts, m, n): (Vec<&Concept>, usize, usize) = match ax {
            Axiom::Ci(ci) => (
                ci.lhs.iter().chain(ci.rhs.iter()).collect(),
                ci.lhs.len(),
                ci.rhs.len(),
            ),
            Axiom::ConceptAssertion(c, _) => (vec![c], 0, 0),
            Axiom::RoleAssertion(..) => (vec![], 0, 0),
        };
        let shape_ok = match frag {
            DlFragment::Core => m <= 1 && n <= 1,
            DlFragment::Krom => m + n <= 2,
            DlFragment::Horn => n <= 1,
            DlFragment::Bool => true,
            DlFragment::None => false,
        };
        if !shape_ok {
            ok = false;
            return;
        }
        for c in concepts {
            if frag != DlFragment::Bool && concept_has_interval_op(c) {
                ok = false;
                return;
            }
            if matches!(frag, DlFragment::Core | DlFragment::Horn) && concept_has_neg_name(c) {
                ok = false;
                return;
            }
        }
    });
    ok
}

fn is_conjunction_of_cis(f: &Formula) -> bool {
    f.conjuncts()
        .iter()
        .all(|c| matches!(c, Formula::Ax(Axiom::Ci(_))))
}

// The tautology `top <= top` serves as the formula-level truth constant in
// expanded abbreviations; it constrains nothing and is not counted as a CI.
fn contains_ci(f: &Formula) -> bool {
    let mut found = false;
    f.for_each_axiom(&mut |ax| {
        if let Axiom::Ci(ci) = ax {
            if *ci != crate::ast::Ci::tautology() {
                found = true;
            }
        }
    });
    found
}

/// True iff `f` is of the form `always T_1 ∧ … ∧ always T_k ∧ Ψ` where each
/// `T_i` is a conjunction of CIs and `Ψ` contains no CI.
pub fn is_global_ci_form(f: &Formula) -> bool {
    f.conjuncts().iter().all(|part| {
        if let Some(body) = part.match_box_star() {
            is_conjunction_of_cis(body) || !contains_ci(part)
        } else {
            !contains_ci(part)
        }
    })
}

/// Classifies a problem. Total: every problem gets a report.
pub fn fragment_of(p: &Problem) -> FragmentReport {
    let f = p.core_formula();

    let dl = [
        DlFragment::Core,
        DlFragment::Krom,
        DlFragment::Horn,
        DlFragment::Bool,
    ]
    .into_iter()
    .find(|frag| fits_fragment(&f, *frag))
    .unwrap_or(DlFragment::None);

    let mut metric = false;
    f.for_each_subformula(&mut |sub| {
        if let Formula::Until(_, _, i) | Formula::Since(_, _, i) = sub {
            if !i.is_qualitative() {
                metric = true;
            }
        }
    });
    let mut concept_ops = ConceptTemporalOps::None;
    f.for_each_concept(&mut |c| {
        c.for_each_subconcept(&mut |s| match s {
            Concept::Until(_, _, i) | Concept::Since(_, _, i) => {
                concept_ops = ConceptTemporalOps::UntilSince;
                if !i.is_qualitative() {
                    metric = true;
                }
            }
            Concept::NextF(_) | Concept::NextP(_) => {
                if concept_ops == ConceptTemporalOps::None {
                    concept_ops = ConceptTemporalOps::NextOnly;
                }
            }
            _ => {}
        });
    });

    FragmentReport {
        dl,
        metric,
        concept_ops,
        global_cis_only: is_global_ci_form(&f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn report(text: &str) -> FragmentReport {
        fragment_of(&parse(text).unwrap())
    }

    #[test]
    fn intro_style_core_global() {
        let r = report("formula: always (Student <= exists EnrolledIn) & Student(ann)");
        assert_eq!(r.dl, DlFragment::Core);
        assert!(!r.metric);
        assert_eq!(r.concept_ops, ConceptTemporalOps::None);
        assert!(r.global_cis_only);
    }

    #[test]
    fn concept_level_diamond_forces_bool() {
        let r = report("formula: always ((exists EnrolledIn) <= F[0,3] (exists Payment))");
        assert_eq!(r.dl, DlFragment::Bool);
        assert!(r.metric);
        assert_eq!(r.concept_ops, ConceptTemporalOps::UntilSince);
        assert!(r.global_cis_only);
    }

    #[test]
    fn horn_but_not_krom() {
        let r = report("formula: A & B <= C");
        assert_eq!(r.dl, DlFragment::Horn);
        assert!(fits_fragment(&parse("formula: A & B <= C").unwrap().core_formula(), DlFragment::Bool));
        assert!(!fits_fragment(
            &parse("formula: A & B <= C").unwrap().core_formula(),
            DlFragment::Krom
        ));
    }

    #[test]
    fn fragment_inclusion_is_monotone() {
        for text in [
            "formula: A <= B",
            "formula: A & B <= C",
            "formula: A <= B | C",
            "formula: A & B <= C | D",
            "formula: X (A(a)) & (A <= X B)",
            "formula: top <= bot",
        ] {
            let f = parse(text).unwrap().core_formula();
            if fits_fragment(&f, DlFragment::Core) {
                assert!(fits_fragment(&f, DlFragment::Krom), "{text}");
                assert!(fits_fragment(&f, DlFragment::Horn), "{text}");
            }
            if fits_fragment(&f, DlFragment::Krom) || fits_fragment(&f, DlFragment::Horn) {
                assert!(fits_fragment(&f, DlFragment::Bool), "{text}");
            }
        }
    }

    #[test]
    fn local_ci_breaks_global_form() {
        let r = report("formula: (A <= B) & A(a)");
        assert!(!r.global_cis_only);
        let r = report("formula: always (A <= B) & X (A <= B)");
        assert!(!r.global_cis_only);
    }

    #[test]
    fn assertions_inside_always_are_not_global_cis() {
        // always (CI & assertion) is not the global-CI shape, but
        // a CI-free always-conjunct is fine.
        let r = report("formula: always ((A <= B) & A(a))");
        assert!(!r.global_cis_only);
        let r = report("formula: always (A <= B) & always (A(a))");
        assert!(r.global_cis_only);
    }
}
