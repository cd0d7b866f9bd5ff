//! Flat, hash-consed views of a formula's subterm structure, shared by the
//! oracle's two evaluation routes.

use std::collections::HashMap;

use crate::ast::{Axiom, Concept, Formula, Interval};

pub type FId = u32;
pub type CId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CNode {
    Top,
    Name(u32),
    NegName(u32),
    /// `exists R` (or `exists inv R` when `inverted`)
    Exists { role: u32, inverted: bool },
    NextF(CId),
    NextP(CId),
    Until(CId, CId, Interval),
    Since(CId, CId, Interval),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FNode {
    CiAx { lhs: Vec<CId>, rhs: Vec<CId> },
    ConceptAssert { concept: CId, ind: u32 },
    RoleAssert { role: u32, inverted: bool, a: u32, b: u32 },
    Not(FId),
    And(FId, FId),
    NextF(FId),
    NextP(FId),
    Until(FId, FId, Interval),
    Since(FId, FId, Interval),
}

#[derive(Debug, Default)]
pub struct TermIndex {
    pub formulas: Vec<FNode>,
    pub concepts: Vec<CNode>,
    pub root: FId,
    pub concept_names: Vec<String>,
    pub role_names: Vec<String>,
    pub individuals: Vec<String>,
    fmemo: HashMap<FNode, FId>,
    cmemo: HashMap<CNode, CId>,
    name_ids: HashMap<String, u32>,
    role_ids: HashMap<String, u32>,
    ind_ids: HashMap<String, u32>,
}

impl TermIndex {
    pub fn build(root: &Formula) -> TermIndex {
        let mut idx = TermIndex::default();
        // individuals first, in sorted order, so element numbering is stable
        let mut inds = std::collections::BTreeSet::new();
        root.for_each_axiom(&mut |ax| match ax {
            Axiom::ConceptAssertion(_, a) => {
                inds.insert(a.clone());
            }
            Axiom::RoleAssertion(_, a, b) => {
                inds.insert(a.clone());
                inds.insert(b.clone());
            }
            _ => {}
        });
        for a in inds {
            idx.individual_id(&a);
        }
        idx.root = idx.intern_formula(root);
        idx
    }

    pub fn name_id(&mut self, n: &str) -> u32 {
        if let Some(&id) = self.name_ids.get(n) {
            return id;
        }
        let id = self.concept_names.len() as u32;
        self.concept_names.push(n.to_owned());
        self.name_ids.insert(n.to_owned(), id);
        id
    }

    pub fn role_id(&mut self, n: &str) -> u32 {
        if let Some(&id) = self.role_ids.get(n) {
            return id;
        }
        let id = self.role_names.len() as u32;
        self.role_names.push(n.to_owned());
        self.role_ids.insert(n.to_owned(), id);
        id
    }

    pub fn individual_id(&mut self, n: &str) -> u32 {
        if let Some(&id) = self.ind_ids.get(n) {
            return id;
        }
        let id = self.individuals.len() as u32;
        self.individuals.push(n.to_owned());
        self.ind_ids.insert(n.to_owned(), id);
        id
    }

    pub fn lookup_individual(&self, n: &str) -> Option<u32> {
        self.ind_ids.get(n).copied()
    }

    fn intern_cnode(&mut self, node: CNode) -> CId {
        if let Some(&id) = self.cmemo.get(&node) {
            return id;
        }
        let id = self.concepts.len() as CId;
        self.concepts.push(node.clone());
        self.cmemo.insert(node, id);
        id
    }

    pub fn intern_concept(&mut self, c: &Concept) -> CId {
        let node = match c {
            Concept::Top => CNode::Top,
            Concept::Name(n) => CNode::Name(self.name_id(n)),
            Concept::NegName(n) => CNode::NegName(self.name_id(n)),
            Concept::Exists(r) => CNode::Exists {
                role: self.role_id(&r.name),
                inverted: r.inverted,
            },
            Concept::NextF(x) => CNode::NextF(self.intern_concept(x)),
            Concept::NextP(x) => CNode::NextP(self.intern_concept(x)),
            Concept::Until(a, b, i) => {
                CNode::Until(self.intern_concept(a), self.intern_concept(b), *i)
            }
            Concept::Since(a, b, i) => {
                CNode::Since(self.intern_concept(a), self.intern_concept(b), *i)
            }
        };
        self.intern_cnode(node)
    }

    fn intern_fnode(&mut self, node: FNode) -> FId {
        if let Some(&id) = self.fmemo.get(&node) {
            return id;
        }
        let id = self.formulas.len() as FId;
        self.formulas.push(node.clone());
        self.fmemo.insert(node, id);
        id
    }

    pub fn intern_formula(&mut self, f: &Formula) -> FId {
        let node = match f {
            Formula::Ax(Axiom::Ci(ci)) => FNode::CiAx {
                lhs: ci.lhs.iter().map(|c| self.intern_concept(c)).collect(),
                rhs: ci.rhs.iter().map(|c| self.intern_concept(c)).collect(),
            },
            Formula::Ax(Axiom::ConceptAssertion(c, a)) => FNode::ConceptAssert {
                concept: self.intern_concept(c),
                ind: self.individual_id(a),
            },
            Formula::Ax(Axiom::RoleAssertion(r, a, b)) => FNode::RoleAssert {
                role: self.role_id(&r.name),
                inverted: r.inverted,
                a: self.individual_id(a),
                b: self.individual_id(b),
            },
            Formula::Not(g) => FNode::Not(self.intern_formula(g)),
            Formula::And(a, b) => {
                FNode::And(self.intern_formula(a), self.intern_formula(b))
            }
            Formula::NextF(g) => FNode::NextF(self.intern_formula(g)),
            Formula::NextP(g) => FNode::NextP(self.intern_formula(g)),
            Formula::Until(a, b, i) => {
                FNode::Until(self.intern_formula(a), self.intern_formula(b), *i)
            }
            Formula::Since(a, b, i) => {
                FNode::Since(self.intern_formula(a), self.intern_formula(b), *i)
            }
        };
        self.intern_fnode(node)
    }
}
