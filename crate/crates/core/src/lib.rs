//! Equivalence checking for propositional theories and disjunctive logic
//! programs under answer-set semantics.
//!
//! Every decision procedure compares a finite set of HT-interpretations
//! characteristic of the equivalence notion at hand:
//!
//! | notion      | countermodel family | equivalence-interpretation family |
//! |-------------|---------------------|-----------------------------------|
//! | classical   | total countermodels | total models                      |
//! | answer-set  | there-closed `(∅,Y)`| equilibrium models                |
//! | strong      | all countermodels   | total models and here-countermodels |
//! | uniform     | there-closed        | closed                            |
//!
//! Relativized hyperequivalence generalises these through the two context
//! alphabets in [`hyper`]. The [`oracle`] module checks every verdict against
//! the definition by adding contexts and comparing answer sets, and
//! [`nonground`] lifts uniform equivalence to function-free programs with
//! variables by grounding over finite universes.

pub mod corpus;
pub mod equiv;
pub mod error;
pub mod hyper;
pub mod nonground;
pub mod oracle;
pub mod semantics;
pub mod syntax;

pub use equiv::{decide_equivalence, EquivNotion, Family, Side, Verdict};
pub use error::{Error, Result};
pub use semantics::{AtomSet, HtInterp, InterpretationSet, SetTag};
pub use syntax::{Alphabets, Atom, Formula, Program, Rule, Signature, Theory};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/here-and-there.md")]
    mod here_and_there {}
    #[doc = include_str!("../../../book/src/characteristic-sets.md")]
    mod characteristic_sets {}
    #[doc = include_str!("../../../book/src/hyperequivalence.md")]
    mod hyperequivalence {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/non-ground.md")]
    mod non_ground {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
