use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering as MemOrdering};
use std::sync::Arc;

use super::AtomSet;
use crate::error::{Error, Result};
use crate::syntax::Signature;

/// Default ceiling on the number of atoms for exhaustive enumeration
/// (3^16 ≈ 43M HT-interpretations).
pub const DEFAULT_MAX_ATOMS: usize = 16;

static MAX_ATOMS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ATOMS);

/// The current enumeration ceiling.
pub fn max_atoms() -> usize {
    MAX_ATOMS.load(MemOrdering::Relaxed)
}

/// Changes the enumeration ceiling for the whole process. Values above 64
/// are clamped because signatures never exceed 64 atoms.
pub fn set_max_atoms(limit: usize) {
    MAX_ATOMS.store(limit.min(crate::syntax::MAX_SIGNATURE), MemOrdering::Relaxed);
}

pub(crate) fn check_bound(what: &'static str, atoms: usize) -> Result<()> {
    let limit = max_atoms();
    if atoms > limit {
        Err(Error::BoundExceeded {
            what,
            requested: atoms,
            limit,
        })
    } else {
        Ok(())
    }
}

/// An HT-interpretation `(X, Y)` with `X ⊆ Y`, relative to a signature held
/// by the surrounding context.
///
/// The canonical order compares `Y` first and `X` second, both as masks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct HtInterp {
    pub here: AtomSet,
    pub there: AtomSet,
}

impl HtInterp {
    /// Panics unless `here ⊆ there`.
    pub fn new(here: AtomSet, there: AtomSet) -> HtInterp {
        assert!(here.is_subset(there), "here-part must be a subset of the there-part");
        HtInterp { here, there }
    }

    pub fn total(there: AtomSet) -> HtInterp {
        HtInterp { here: there, there }
    }

    pub fn is_total(self) -> bool {
        self.here == self.there
    }

    pub fn display(self, signature: &Signature) -> DisplayInterp<'_> {
        DisplayInterp {
            interp: self,
            signature,
        }
    }
}

impl Ord for HtInterp {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.there, self.here).cmp(&(other.there, other.here))
    }
}

impl PartialOrd for HtInterp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct DisplayInterp<'a> {
    interp: HtInterp,
    signature: &'a Signature,
}

impl fmt::Display for DisplayInterp<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})",
            self.interp.here.display(self.signature),
            self.interp.there.display(self.signature)
        )
    }
}

/// Every HT-interpretation over `signature` exactly once, in canonical order:
/// `Y` ascending, then `X ⊆ Y` ascending. There are `3^n` of them.
pub fn enumerate_ht(signature: &Signature) -> Result<impl Iterator<Item = HtInterp>> {
    check_bound("HT enumeration", signature.len())?;
    Ok(AtomSet::full(signature.len())
        .subsets()
        .flat_map(|there| there.subsets().map(move |here| HtInterp { here, there })))
}

/// Which set of HT-interpretations an [`InterpretationSet`] represents.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SetTag {
    Models,
    /// Total countermodels.
    Cc,
    /// There-closed countermodels of the form `(∅, Y)`.
    Ca,
    /// All countermodels.
    Cs,
    /// There-closed countermodels.
    Cu,
    /// Total models.
    Ec,
    /// Total-closed equivalence interpretations (equilibrium models).
    Ea,
    /// Equivalence interpretations.
    Es,
    /// Closed equivalence interpretations.
    Eu,
    Hyper,
    Plain,
}

impl SetTag {
    pub fn name(self) -> &'static str {
        match self {
            SetTag::Models => "models",
            SetTag::Cc => "Cc",
            SetTag::Ca => "Ca",
            SetTag::Cs => "Cs",
            SetTag::Cu => "Cu",
            SetTag::Ec => "Ec",
            SetTag::Ea => "Ea",
            SetTag::Es => "Es",
            SetTag::Eu => "Eu",
            SetTag::Hyper => "hyper",
            SetTag::Plain => "plain",
        }
    }
}

/// Membership test shared by interpretation sets and lazily computed
/// characteristic sets.
pub trait HtSet {
    fn contains(&self, m: HtInterp) -> bool;
}

impl<F: Fn(HtInterp) -> bool> HtSet for F {
    fn contains(&self, m: HtInterp) -> bool {
        self(m)
    }
}

/// A canonically ordered set of HT-interpretations over one signature.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InterpretationSet {
    signature: Arc<Signature>,
    tag: SetTag,
    members: BTreeSet<HtInterp>,
}

impl InterpretationSet {
    pub fn new<I>(signature: Arc<Signature>, tag: SetTag, members: I) -> InterpretationSet
    where
        I: IntoIterator<Item = HtInterp>,
    {
        InterpretationSet {
            signature,
            tag,
            members: members.into_iter().collect(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn shared_signature(&self) -> Arc<Signature> {
        Arc::clone(&self.signature)
    }

    pub fn tag(&self) -> SetTag {
        self.tag
    }

    pub fn with_tag(mut self, tag: SetTag) -> InterpretationSet {
        self.tag = tag;
        self
    }

    pub fn contains(&self, m: HtInterp) -> bool {
        self.members.contains(&m)
    }

    pub fn iter(&self) -> impl Iterator<Item = HtInterp> + '_ {
        self.members.iter().copied()
    }

    pub fn members(&self) -> &BTreeSet<HtInterp> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Same members, regardless of tag.
    pub fn same_members(&self, other: &InterpretationSet) -> bool {
        self.members == other.members
    }

    /// The least member of the symmetric difference, with `true` when it
    /// belongs to `self`.
    pub fn first_difference(&self, other: &InterpretationSet) -> Option<(HtInterp, bool)> {
        let left = self.members.difference(&other.members).next().copied();
        let right = other.members.difference(&self.members).next().copied();
        match (left, right) {
            (Some(l), Some(r)) if r < l => Some((r, false)),
            (Some(l), _) => Some((l, true)),
            (None, Some(r)) => Some((r, false)),
            (None, None) => None,
        }
    }

    /// One `(X,Y)` per line.
    pub fn listing(&self) -> String {
        self.iter()
            .map(|m| format!("{}\n", m.display(&self.signature)))
            .collect()
    }
}

impl HtSet for InterpretationSet {
    fn contains(&self, m: HtInterp) -> bool {
        self.members.contains(&m)
    }
}
