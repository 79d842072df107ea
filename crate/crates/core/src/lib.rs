//! Higher-order pattern anti-unification modulo associativity (A),
//! commutativity (C) and associativity-commutativity (AC).
//!
//! Terms are simply typed lambda terms kept in eta-long beta-normal,
//! flattened form (see [`term::Term`]). Three generalization modes are
//! provided:
//!
//! * [`syntactic::syntactic_lgg`] computes the unique syntactic least general
//!   pattern generalization, treating every symbol as free;
//! * [`equational::complete_set`] enumerates every derivation of the
//!   equational rule system and [`equational::minimize`] reduces the result
//!   to a minimal complete set;
//! * [`optimal::optimal_generalize`] runs a single greedy derivation guided
//!   by rigidity and choice functions over the A, C and AC fragments.
//!
//! [`fragments`] holds the alignment machinery (argument head sequences,
//! determinate sets, fragment recognizers), [`oracle`] slow reference
//! implementations used by the test suites, and [`cli`] the textual front end.

pub mod canon;
pub mod cli;
pub mod equational;
pub mod error;
pub mod fragments;
pub mod normalize;
pub mod optimal;
pub mod oracle;
pub mod signature;
pub mod subst;
pub mod syntactic;
pub mod syntax;
pub mod term;

pub use canon::{canonical, e_equal};
pub use error::{Error, Result};
pub use normalize::{normalize, normalize_term, RawTerm};
pub use signature::{Axioms, Signature};
pub use subst::Substitution;
pub use syntactic::{syntactic_lgg, Aup, GeneralizationResult, State};
pub use term::{Binder, Head, Name, Term, Type, Var};
