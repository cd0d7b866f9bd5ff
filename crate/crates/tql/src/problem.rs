//! Problems: a formula plus rigidity declarations, timeline and fragment hint.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::ast::{Concept, Formula};
use crate::sugar::{SugaredConcept, SugaredFormula};

/// The temporal dimension. `Int` is the default; `Nat` clips past operators
/// at time 0 (`Y f` is false there).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Timeline {
    #[default]
    Int,
    Nat,
}

/// Declared target logic, used only to reject passes that would leave it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TargetLogic {
    /// Temporal operators may occur inside concepts.
    QtlDlLite,
    /// DL-TL: concepts are purely atemporal.
    DlTl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Concept,
    Role,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RigidityError {
    #[error("duplicate rigidity declaration for {kind:?} {name}")]
    Duplicate { kind: SymbolKind, name: String },
    #[error("interval-rigidity value for {name} must be at least 2, got {value}")]
    ValueTooSmall { name: String, value: u64 },
}

/// Rigid and interval-rigid symbol declarations.
///
/// The two domains are disjoint; interval-rigidity values are at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct RigidityDeclarations {
    rigid: BTreeSet<(SymbolKind, String)>,
    interval_rigid: BTreeMap<(SymbolKind, String), u64>,
}

impl RigidityDeclarations {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare_rigid(&mut self, kind: SymbolKind, name: &str) -> Result<(), RigidityError> {
        let key = (kind, name.to_owned());
        if self.rigid.contains(&key) || self.interval_rigid.contains_key(&key) {
            return Err(RigidityError::Duplicate {
                kind,
                name: name.to_owned(),
            });
        }
        self.rigid.insert(key);
        Ok(())
    }

    pub fn declare_interval_rigid(
        &mut self,
        kind: SymbolKind,
        name: &str,
        k: u64,
    ) -> Result<(), RigidityError> {
        if k < 2 {
            return Err(RigidityError::ValueTooSmall {
                name: name.to_owned(),
                value: k,
            });
        }
        let key = (kind, name.to_owned());
        if self.rigid.contains(&key) || self.interval_rigid.contains_key(&key) {
            return Err(RigidityError::Duplicate {
                kind,
                name: name.to_owned(),
            });
        }
        self.interval_rigid.insert(key, k);
        Ok(())
    }

    pub fn remove(&mut self, kind: SymbolKind, name: &str) {
        let key = (kind, name.to_owned());
        self.rigid.remove(&key);
        self.interval_rigid.remove(&key);
    }

    pub fn is_empty(&self) -> bool {
        self.rigid.is_empty() && self.interval_rigid.is_empty()
    }

    pub fn is_rigid(&self, kind: SymbolKind, name: &str) -> bool {
        self.rigid.contains(&(kind, name.to_owned()))
    }

    pub fn interval_rigidity(&self, kind: SymbolKind, name: &str) -> Option<u64> {
        self.interval_rigid.get(&(kind, name.to_owned())).copied()
    }

    pub fn rigid_symbols(&self) -> impl Iterator<Item = (SymbolKind, &str)> {
        self.rigid.iter().map(|(k, n)| (*k, n.as_str()))
    }

    pub fn interval_rigid_symbols(&self) -> impl Iterator<Item = (SymbolKind, &str, u64)> {
        self.interval_rigid
            .iter()
            .map(|((k, n), v)| (*k, n.as_str(), *v))
    }

    pub fn has_rigid_roles(&self) -> bool {
        self.rigid.iter().any(|(k, _)| *k == SymbolKind::Role)
    }

    pub fn has_interval_rigid_roles(&self) -> bool {
        self.interval_rigid.keys().any(|(k, _)| *k == SymbolKind::Role)
    }

    pub fn has_rigid_concepts(&self) -> bool {
        self.rigid.iter().any(|(k, _)| *k == SymbolKind::Concept)
    }

    pub fn has_interval_rigid_concepts(&self) -> bool {
        self.interval_rigid
            .keys()
            .any(|(k, _)| *k == SymbolKind::Concept)
    }
}

/// A satisfiability problem: formula, declarations, timeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub formula: SugaredFormula,
    pub rigidity: RigidityDeclarations,
    pub timeline: Timeline,
    pub hint: Option<TargetLogic>,
}

impl Problem {
    pub fn new(formula: SugaredFormula) -> Self {
        Problem {
            formula,
            rigidity: RigidityDeclarations::new(),
            timeline: Timeline::Int,
            hint: None,
        }
    }

    pub fn from_core(formula: Formula) -> Self {
        Problem::new(SugaredFormula::from_core(&formula))
    }

    /// The core (abbreviation-free) form of the formula.
    pub fn core_formula(&self) -> Formula {
        self.formula.expand()
    }

    /// Replaces the formula with a core one, keeping declarations.
    pub fn with_core_formula(&self, formula: Formula) -> Problem {
        Problem {
            formula: SugaredFormula::from_core(&formula),
            rigidity: self.rigidity.clone(),
            timeline: self.timeline,
            hint: self.hint,
        }
    }

    /// Concept and role names occurring in the formula.
    pub fn occurring_names(&self) -> (BTreeSet<String>, BTreeSet<String>) {
        let core = self.core_formula();
        let mut concepts = BTreeSet::new();
        let mut roles = BTreeSet::new();
        core.for_each_concept(&mut |c| match c {
            Concept::Name(n) | Concept::NegName(n) => {
                concepts.insert(n.clone());
            }
            Concept::Exists(r) => {
                roles.insert(r.name.clone());
            }
            _ => {}
        });
        core.for_each_axiom(&mut |ax| {
            if let crate::ast::Axiom::RoleAssertion(r, _, _) = ax {
                roles.insert(r.name.clone());
            }
        });
        (concepts, roles)
    }

    /// `k_Φ`: the maximum interval-rigidity value over names occurring in the
    /// formula, defaulting to 1 when none occurs.
    pub fn k_phi(&self) -> u64 {
        let (concepts, roles) = self.occurring_names();
        let mut k = 1;
        for (kind, name, v) in self.rigidity.interval_rigid_symbols() {
            let occurs = match kind {
                SymbolKind::Concept => concepts.contains(name),
                SymbolKind::Role => roles.contains(name),
            };
            if occurs {
                k = k.max(v);
            }
        }
        k
    }

    /// Declared names that never occur in the formula. A warning, not an error.
    pub fn unused_rigidity_warnings(&self) -> Vec<String> {
        let (concepts, roles) = self.occurring_names();
        let mut out = Vec::new();
        let check = |kind: SymbolKind, name: &str| -> bool {
            match kind {
                SymbolKind::Concept => concepts.contains(name),
                SymbolKind::Role => roles.contains(name),
            }
        };
        for (kind, name) in self.rigidity.rigid_symbols() {
            if !check(kind, name) {
                out.push(format!("unused rigid declaration: {kind:?} {name}"));
            }
        }
        for (kind, name, _) in self.rigidity.interval_rigid_symbols() {
            if !check(kind, name) {
                out.push(format!("unused interval-rigid declaration: {kind:?} {name}"));
            }
        }
        out
    }
}

/// Replaces every negated concept name `!A` by a fresh name `A_neg` and adds
/// the global inclusions `top <= A | A_neg` and `A & A_neg <= bot`.
///
/// Equisatisfiable; the identity when no negated name occurs.
pub fn elim_negated_names(p: &Problem) -> Problem {
    let mut negated = BTreeSet::new();
    let core = p.core_formula();
    core.for_each_concept(&mut |c| {
        c.for_each_subconcept(&mut |sub| {
            if let Concept::NegName(n) = sub {
                negated.insert(n.clone());
            }
        });
    });
    if negated.is_empty() {
        return p.clone();
    }

    let (mut taken, _) = p.occurring_names();
    let mut mapping = BTreeMap::new();
    for name in &negated {
        let mut fresh = format!("{name}_neg");
        while taken.contains(&fresh) {
            fresh.push('_');
        }
        taken.insert(fresh.clone());
        mapping.insert(name.clone(), fresh);
    }

    fn rewrite_concept(c: &SugaredConcept, mapping: &BTreeMap<String, String>) -> SugaredConcept {
        match c {
            SugaredConcept::NegName(n) => SugaredConcept::Name(mapping[n].clone()),
            SugaredConcept::Top | SugaredConcept::Name(_) | SugaredConcept::Exists(_) => c.clone(),
            SugaredConcept::NextF(x) => {
                SugaredConcept::NextF(Box::new(rewrite_concept(x, mapping)))
            }
            SugaredConcept::NextP(x) => {
                SugaredConcept::NextP(Box::new(rewrite_concept(x, mapping)))
            }
            SugaredConcept::Until(a, b, i) => SugaredConcept::Until(
                Box::new(rewrite_concept(a, mapping)),
                Box::new(rewrite_concept(b, mapping)),
                *i,
            ),
            SugaredConcept::Since(a, b, i) => SugaredConcept::Since(
                Box::new(rewrite_concept(a, mapping)),
                Box::new(rewrite_concept(b, mapping)),
                *i,
            ),
            SugaredConcept::EventuallyF(x, i) => {
                SugaredConcept::EventuallyF(Box::new(rewrite_concept(x, mapping)), *i)
            }
            SugaredConcept::EventuallyP(x, i) => {
                SugaredConcept::EventuallyP(Box::new(rewrite_concept(x, mapping)), *i)
            }
        }
    }

    fn rewrite(f: &SugaredFormula, mapping: &BTreeMap<String, String>) -> SugaredFormula {
        use crate::sugar::SugaredAxiom as Sa;
        use SugaredFormula as Sf;
        match f {
            Sf::Ax(ax) => Sf::Ax(match ax {
                Sa::Ci(l, r) => Sa::Ci(
                    l.iter().map(|c| rewrite_concept(c, mapping)).collect(),
                    r.iter().map(|c| rewrite_concept(c, mapping)).collect(),
                ),
                Sa::ConceptAssertion(c, a) => {
                    Sa::ConceptAssertion(rewrite_concept(c, mapping), a.clone())
                }
                Sa::RoleAssertion(..) => ax.clone(),
            }),
            Sf::Not(g) => Sf::Not(Box::new(rewrite(g, mapping))),
            Sf::And(a, b) => Sf::and(rewrite(a, mapping), rewrite(b, mapping)),
            Sf::Or(a, b) => Sf::Or(Box::new(rewrite(a, mapping)), Box::new(rewrite(b, mapping))),
            Sf::Implies(a, b) => {
                Sf::Implies(Box::new(rewrite(a, mapping)), Box::new(rewrite(b, mapping)))
            }
            Sf::NextF(g) => Sf::NextF(Box::new(rewrite(g, mapping))),
            Sf::NextP(g) => Sf::NextP(Box::new(rewrite(g, mapping))),
            Sf::Until(a, b, i) => Sf::Until(
                Box::new(rewrite(a, mapping)),
                Box::new(rewrite(b, mapping)),
                *i,
            ),
            Sf::Since(a, b, i) => Sf::Since(
                Box::new(rewrite(a, mapping)),
                Box::new(rewrite(b, mapping)),
                *i,
            ),
            Sf::EventuallyF(g, i) => Sf::EventuallyF(Box::new(rewrite(g, mapping)), *i),
            Sf::AlwaysF(g, i) => Sf::AlwaysF(Box::new(rewrite(g, mapping)), *i),
            Sf::EventuallyP(g, i) => Sf::EventuallyP(Box::new(rewrite(g, mapping)), *i),
            Sf::AlwaysP(g, i) => Sf::AlwaysP(Box::new(rewrite(g, mapping)), *i),
            Sf::Always(g) => Sf::Always(Box::new(rewrite(g, mapping))),
        }
    }

    use crate::sugar::SugaredAxiom as Sa;
    let mut formula = rewrite(&p.formula, &mapping);
    for name in &negated {
        let bar = &mapping[name];
        let cover = SugaredFormula::always(SugaredFormula::ax(Sa::Ci(
            vec![SugaredConcept::Top],
            vec![
                SugaredConcept::Name(name.clone()),
                SugaredConcept::Name(bar.clone()),
            ],
        )));
        let disjoint = SugaredFormula::always(SugaredFormula::ax(Sa::Ci(
            vec![
                SugaredConcept::Name(name.clone()),
                SugaredConcept::Name(bar.clone()),
            ],
            vec![],
        )));
        formula = SugaredFormula::and(formula, SugaredFormula::and(cover, disjoint));
    }

    Problem {
        formula,
        rigidity: p.rigidity.clone(),
        timeline: p.timeline,
        hint: p.hint,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sugar::SugaredAxiom;

    #[test]
    fn rigidity_domains_are_disjoint() {
        let mut r = RigidityDeclarations::new();
        r.declare_rigid(SymbolKind::Concept, "A").unwrap();
        assert!(matches!(
            r.declare_interval_rigid(SymbolKind::Concept, "A", 2),
            Err(RigidityError::Duplicate { .. })
        ));
        assert!(matches!(
            r.declare_interval_rigid(SymbolKind::Concept, "B", 1),
            Err(RigidityError::ValueTooSmall { .. })
        ));
    }

    #[test]
    fn k_phi_defaults_to_one() {
        let p = Problem::new(SugaredFormula::ax(SugaredAxiom::ConceptAssertion(
            SugaredConcept::Name("A".into()),
            "a".into(),
        )));
        assert_eq!(p.k_phi(), 1);
    }

    #[test]
    fn k_phi_ignores_names_not_occurring() {
        let mut p = Problem::new(SugaredFormula::ax(SugaredAxiom::ConceptAssertion(
            SugaredConcept::Name("A".into()),
            "a".into(),
        )));
        p.rigidity
            .declare_interval_rigid(SymbolKind::Concept, "A", 3)
            .unwrap();
        p.rigidity
            .declare_interval_rigid(SymbolKind::Concept, "Unused", 24)
            .unwrap();
        assert_eq!(p.k_phi(), 3);
        assert_eq!(p.unused_rigidity_warnings().len(), 1);
    }

    #[test]
    fn elim_negated_names_is_identity_without_them() {
        let p = Problem::new(SugaredFormula::ax(SugaredAxiom::ConceptAssertion(
            SugaredConcept::Name("A".into()),
            "a".into(),
        )));
        assert_eq!(elim_negated_names(&p), p);
    }

    #[test]
    fn elim_negated_names_replaces_and_axiomatizes() {
        // D <= !A  becomes  D <= A_neg plus the two global inclusions.
        let p = Problem::new(SugaredFormula::ax(SugaredAxiom::Ci(
            vec![SugaredConcept::Name("D".into())],
            vec![SugaredConcept::NegName("A".into())],
        )));
        let q = elim_negated_names(&p);
        let rendered = crate::parser::render(&q);
        assert!(rendered.contains("D <= A_neg"), "{rendered}");
        assert!(rendered.contains("always (top <= A | A_neg)"), "{rendered}");
        assert!(rendered.contains("always (A & A_neg <= bot)"), "{rendered}");
        let mut has_neg = false;
        q.core_formula().for_each_concept(&mut |c| {
            c.for_each_subconcept(&mut |s| {
                if matches!(s, Concept::NegName(_)) {
                    has_neg = true;
                }
            })
        });
        assert!(!has_neg);
    }
}
