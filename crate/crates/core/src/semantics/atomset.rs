use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{Atom, Signature};

/// A set of atoms as a bit mask over a [`Signature`]; bit `i` stands for
/// the signature's `i`-th atom.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AtomSet(pub u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    /// All atoms of a signature with `n` atoms.
    pub fn full(n: usize) -> AtomSet {
        if n >= 64 {
            AtomSet(u64::MAX)
        } else {
            AtomSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(index: usize) -> AtomSet {
        AtomSet(1 << index)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn with(self, index: usize) -> AtomSet {
        AtomSet(self.0 | 1 << index)
    }

    pub fn without(self, index: usize) -> AtomSet {
        AtomSet(self.0 & !(1 << index))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: AtomSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    pub fn difference(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: AtomSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Indices of the members, ascending.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            (rest != 0).then(|| {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                i
            })
        })
    }

    /// Every subset of `self`, in ascending mask order, `∅` first and `self`
    /// last.
    pub fn subsets(self) -> impl Iterator<Item = AtomSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let current = next?;
            next = (current != full).then(|| (current.wrapping_sub(full)) & full);
            Some(AtomSet(current))
        })
    }

    /// Every `X'` with `self ⊆ X' ⊆ upper`, ascending.
    pub fn supersets_within(self, upper: AtomSet) -> impl Iterator<Item = AtomSet> {
        let base = self;
        upper.difference(self).subsets().map(move |s| s.union(base))
    }

    /// The position of `self` among the subsets of `within` (software
    /// parallel bit extract). Requires `self ⊆ within`.
    pub(crate) fn rank_in(self, within: AtomSet) -> usize {
        let mut out = 0usize;
        for (k, i) in within.iter().enumerate() {
            if self.contains(i) {
                out |= 1 << k;
            }
        }
        out
    }

    pub fn from_atoms<'a, I>(signature: &Signature, atoms: I) -> Result<AtomSet>
    where
        I: IntoIterator<Item = &'a Atom>,
    {
        let mut set = AtomSet::EMPTY;
        for atom in atoms {
            let i = signature.index_of(atom).ok_or_else(|| Error::UnknownAtom {
                atom: atom.name().to_owned(),
            })?;
            set = set.with(i);
        }
        Ok(set)
    }

    pub fn from_names(signature: &Signature, names: &[&str]) -> Result<AtomSet> {
        let atoms: Vec<Atom> = names.iter().map(Atom::new).collect();
        AtomSet::from_atoms(signature, &atoms)
    }

    pub fn to_atoms(self, signature: &Signature) -> Vec<Atom> {
        self.iter().map(|i| signature.atom(i).clone()).collect()
    }

    pub fn names(self, signature: &Signature) -> Vec<String> {
        self.iter().map(|i| signature.atom(i).name().to_owned()).collect()
    }

    /// Re-indexes the atoms of `self` (over `from`) that are in `to`.
    pub fn project(self, from: &Signature, to: &Signature) -> AtomSet {
        let mut out = AtomSet::EMPTY;
        for i in self.iter() {
            if let Some(j) = to.index_of(from.atom(i)) {
                out = out.with(j);
            }
        }
        out
    }

    pub fn display(self, signature: &Signature) -> DisplaySet<'_> {
        DisplaySet {
            set: self,
            signature,
        }
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct DisplaySet<'a> {
    set: AtomSet,
    signature: &'a Signature,
}

impl fmt::Display for DisplaySet<'_> {
    /// `∅` for the empty set, `{a,b}` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.set.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (k, i) in self.set.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.signature.atom(i))?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_order() {
        let s: Vec<u64> = AtomSet(0b101).subsets().map(AtomSet::bits).collect();
        assert_eq!(s, [0b000, 0b001, 0b100, 0b101]);
        assert_eq!(AtomSet::EMPTY.subsets().count(), 1);
        assert_eq!(AtomSet::full(5).subsets().count(), 32);
    }

    #[test]
    fn supersets_within_upper() {
        let s: Vec<u64> = AtomSet(0b001).supersets_within(AtomSet(0b111)).map(AtomSet::bits).collect();
        assert_eq!(s, [0b001, 0b011, 0b101, 0b111]);
    }

    #[test]
    fn rank_is_a_bijection_on_subsets() {
        let y = AtomSet(0b1011_0110);
        let ranks: Vec<usize> = y.subsets().map(|x| x.rank_in(y)).collect();
        assert_eq!(ranks, (0..1 << y.len()).collect::<Vec<_>>());
    }
}
