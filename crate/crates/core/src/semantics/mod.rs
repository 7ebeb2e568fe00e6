//! Here-and-there semantics over finite signatures: satisfaction,
//! interpretation enumeration, countermodels, equilibrium models and answer
//! sets of programs.

mod atomset;
mod eval;
mod interp;
mod program;
mod table;

pub use atomset::{AtomSet, DisplaySet};
pub use eval::{classical_sat, ht_sat, ht_sat_theory, CompiledFormula, CompiledTheory};
pub use interp::{
    enumerate_ht, max_atoms, set_max_atoms, DisplayInterp, HtInterp, HtSet, InterpretationSet,
    SetTag, DEFAULT_MAX_ATOMS,
};
pub use program::{answer_sets_program, reduct, PositiveProgram};
pub use table::ModelTable;

pub(crate) use interp::check_bound;
pub(crate) use table::collect_over;

use crate::error::Result;
use crate::syntax::{Signature, Theory};

/// All HT-models of `theory` over `signature`.
pub fn ht_models(theory: &Theory, signature: &Signature) -> Result<InterpretationSet> {
    let table = ModelTable::build(theory, signature)?;
    Ok(table.collect(SetTag::Models, |m| table.is_model(m)))
}

/// All HT-countermodels of `theory` over `signature`, tagged `Cs`.
pub fn countermodels(theory: &Theory, signature: &Signature) -> Result<InterpretationSet> {
    let table = ModelTable::build(theory, signature)?;
    Ok(table.collect(SetTag::Cs, |m| table.is_countermodel(m)))
}

/// Equilibrium models `(Y, Y)`, tagged `Ea`.
pub fn equilibrium_models(theory: &Theory, signature: &Signature) -> Result<InterpretationSet> {
    let table = ModelTable::build(theory, signature)?;
    Ok(table.collect(SetTag::Ea, |m| m.is_total() && table.is_equilibrium(m.there)))
}

/// The answer sets of `theory`: there-parts of its equilibrium models.
pub fn answer_sets(theory: &Theory, signature: &Signature) -> Result<Vec<AtomSet>> {
    Ok(equilibrium_models(theory, signature)?
        .iter()
        .map(|m| m.there)
        .collect())
}
