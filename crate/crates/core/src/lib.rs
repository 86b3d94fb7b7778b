//! Positive logics on finite words.
//!
//! Words are sequences of letters, each letter a subset of a fixed predicate
//! set, ordered pointwise by inclusion. The crate evaluates first-order and
//! temporal formulas on such words, translates between their positive
//! fragments, decides monotonicity of regular languages with automata and
//! syntactic monoids, and solves the positive Ehrenfeucht–Fraïssé game.

pub mod algebra;
pub mod automata;
pub mod corpus;
pub mod formulas;
pub mod games;
pub mod semantics;
pub mod translate;
pub mod words;

pub use algebra::AlgebraError;
pub use automata::AutomataError;
pub use corpus::CorpusError;
pub use formulas::FormulaError;
pub use games::GameError;
pub use semantics::SemanticsError;
pub use translate::TranslateError;
pub use words::WordError;
