//! Satisfiability toolbox for metric and qualitative temporal extensions of
//! DL-Lite (Bool/Horn/Krom/Core) with rigid and interval-rigid names over the
//! integer timeline.
//!
//! The crate provides three independent routes to a verdict:
//! a quasimodel-based decision procedure for the Krom/Horn/Bool fragments
//! without concept-level until/since, a propositional-abstraction procedure
//! for formulas whose concepts are atemporal, and a brute-force semantic
//! oracle used to cross-validate everything at small scale.

pub mod ast;
pub mod closure;
pub mod fragment;
pub mod parser;
pub mod problem;
pub mod sugar;

pub use ast::{Axiom, Bound, Ci, Concept, Formula, Interval, Role, Signed};
pub use closure::{closure, ClosureSets};
pub use fragment::{fragment_of, DlFragment, FragmentReport};
pub use parser::{parse, render, ParseError, SourceSpan};
pub use problem::{elim_negated_names, Problem, RigidityDeclarations, SymbolKind, Timeline};
pub use sugar::{expand_abbreviations, SugaredAxiom, SugaredConcept, SugaredFormula};
