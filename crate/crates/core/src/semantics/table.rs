use std::sync::Arc;

use rayon::prelude::*;

use super::eval::CompiledTheory;
use super::interp::check_bound;
use super::{AtomSet, HtInterp, InterpretationSet, SetTag};
use crate::error::Result;
use crate::syntax::{Signature, Theory};

/// HT-satisfaction of one theory tabulated over every interpretation of a
/// signature. Row `Y` stores one bit per `X ⊆ Y`, at the rank of `X` among
/// the subsets of `Y`; `3^n` bits in total.
#[derive(Clone, Debug)]
pub struct ModelTable {
    signature: Arc<Signature>,
    rows: Vec<Vec<u64>>,
}

impl ModelTable {
    pub fn build(theory: &Theory, signature: &Signature) -> Result<ModelTable> {
        check_bound("model table", signature.len())?;
        let compiled = CompiledTheory::compile(theory, signature)?;
        let n = signature.len();
        let rows = per_there(n, |y| {
            let there = AtomSet(y);
            let mut row = vec![0u64; (1usize << there.len()).div_ceil(64)];
            for (k, here) in there.subsets().enumerate() {
                if compiled.ht(HtInterp { here, there }) {
                    row[k / 64] |= 1 << (k % 64);
                }
            }
            row
        });
        Ok(ModelTable {
            signature: Arc::new(signature.clone()),
            rows,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn shared_signature(&self) -> Arc<Signature> {
        Arc::clone(&self.signature)
    }

    pub fn is_model(&self, m: HtInterp) -> bool {
        let k = m.here.rank_in(m.there);
        self.rows[m.there.0 as usize][k / 64] >> (k % 64) & 1 == 1
    }

    /// Classical satisfaction by `y`, i.e. `(Y, Y)` is a model.
    pub fn there_model(&self, y: AtomSet) -> bool {
        self.is_model(HtInterp::total(y))
    }

    pub fn is_countermodel(&self, m: HtInterp) -> bool {
        !self.is_model(m)
    }

    /// A total model, or a non-total countermodel whose there-part is a
    /// classical model.
    pub fn is_equivalence_interp(&self, m: HtInterp) -> bool {
        if m.is_total() {
            self.is_model(m)
        } else {
            self.there_model(m.there) && !self.is_model(m)
        }
    }

    /// `(Y, Y)` is a model and no `(X, Y)` with `X ⊂ Y` is.
    pub fn is_equilibrium(&self, y: AtomSet) -> bool {
        self.there_model(y)
            && y
                .subsets()
                .filter(|&x| x != y)
                .all(|x| !self.is_model(HtInterp { here: x, there: y }))
    }

    pub fn n(&self) -> usize {
        self.signature.len()
    }

    /// The members of `pred` in canonical order, evaluated row by row in
    /// parallel.
    pub fn collect<F>(&self, tag: SetTag, pred: F) -> InterpretationSet
    where
        F: Fn(HtInterp) -> bool + Sync,
    {
        collect_over(self.shared_signature(), tag, pred)
    }
}

/// Below this many atoms, rows are computed on the calling thread.
pub(crate) const PARALLEL_FROM: usize = 8;

/// `f` over every there-part mask of `n` atoms, in mask order.
pub(crate) fn per_there<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    if n < PARALLEL_FROM {
        (0..1u64 << n).map(f).collect()
    } else {
        (0..1u64 << n).into_par_iter().map(&f).collect()
    }
}

/// Every interpretation over `signature` satisfying `pred`, in canonical
/// order.
pub(crate) fn collect_over<F>(signature: Arc<Signature>, tag: SetTag, pred: F) -> InterpretationSet
where
    F: Fn(HtInterp) -> bool + Sync,
{
    let n = signature.len();
    let rows: Vec<Vec<HtInterp>> = per_there(n, |y| {
        let there = AtomSet(y);
        there
            .subsets()
            .map(|here| HtInterp { here, there })
            .filter(|&m| pred(m))
            .collect()
    });
    InterpretationSet::new(signature, tag, rows.into_iter().flatten())
}
