//! Relativized hyperequivalence: equivalence under contexts whose atoms occur
//! positively only within `A⁺` and negatively only within `A⁻`.
//!
//! The comparison object is the set of hyperequivalence interpretations,
//! pairs `(X'|_{A⁺∪A⁻}, Y)` such that `Y` is `A⁺`-total and `(X', Y)` is
//! `A⁺`-closed in `E_s`. The here-component is stored restricted, so two
//! theories may agree on this set while differing on `E_s`.
//!
//! ```
//! use hteq::hyper::decide_hyper;
//! use hteq::syntax::parse_theory;
//! use hteq::Alphabets;
//!
//! let disj = parse_theory("a | b.").unwrap();
//! let shifted = parse_theory("-b -> a. -a -> b.").unwrap();
//! let facts_only = Alphabets::new(["a", "b"], Vec::<&str>::new());
//! assert!(decide_hyper(&disj, &shifted, &facts_only).unwrap().equivalent);
//! let everything = Alphabets::new(["a", "b"], ["a", "b"]);
//! assert!(!decide_hyper(&disj, &shifted, &everything).unwrap().equivalent);
//! ```

use std::sync::Arc;

use crate::equiv::{joint_signature, Verdict};
use crate::error::Result;
use crate::semantics::{collect_over, AtomSet, HtInterp, InterpretationSet, ModelTable, SetTag};
use crate::syntax::{Alphabets, Signature, Theory};

/// The hyperequivalence interpretations of a theory.
#[derive(Clone, Debug)]
pub struct HyperSet {
    members: InterpretationSet,
    alphabets: Alphabets,
}

impl HyperSet {
    pub fn members(&self) -> &InterpretationSet {
        &self.members
    }

    pub fn alphabets(&self) -> &Alphabets {
        &self.alphabets
    }

    pub fn signature(&self) -> &Signature {
        self.members.signature()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: HtInterp) -> bool {
        self.members.contains(m)
    }
}

/// `A⁺` and `A⁻` as masks over one signature.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Masks {
    plus: AtomSet,
    minus: AtomSet,
}

impl Masks {
    pub(crate) fn new(ab: &Alphabets, signature: &Signature) -> Result<Masks> {
        Ok(Masks {
            plus: AtomSet::from_atoms(signature, &ab.a_plus)?,
            minus: AtomSet::from_atoms(signature, &ab.a_minus)?,
        })
    }

    fn relevant(self) -> AtomSet {
        self.plus.union(self.minus)
    }
}

fn aplus_total(table: &ModelTable, y: AtomSet, masks: Masks) -> bool {
    y.intersection(masks.plus)
        .supersets_within(y)
        .all(|x| table.is_equivalence_interp(HtInterp::new(x, y)))
}

/// Every `X' ⊆ Y` with `X|A⁺ ⊆ X'|A⁺` and `X'|A⁻ ⊆ X|A⁻` is in `E_s`.
fn aplus_closed(table: &ModelTable, m: HtInterp, masks: Masks) -> bool {
    let forced = m.here.intersection(masks.plus);
    let forbidden = m.there.intersection(masks.minus).difference(m.here);
    let free = m.there.difference(forced).difference(forbidden);
    free.subsets()
        .all(|s| table.is_equivalence_interp(HtInterp::new(forced.union(s), m.there)))
}

/// Whether `(X, Y)` with `X ⊆ Y|_{A⁺∪A⁻}` has an `A⁺`-closed preimage.
fn is_member(table: &ModelTable, m: HtInterp, masks: Masks) -> bool {
    let relevant = masks.relevant();
    if !m.here.is_subset(relevant) || !aplus_total(table, m.there, masks) {
        return false;
    }
    m.there
        .difference(relevant)
        .subsets()
        .any(|rest| aplus_closed(table, HtInterp::new(m.here.union(rest), m.there), masks))
}

/// `(Y, Y)` is `A⁺`-total in `E_s(Γ)` over `signature`.
pub fn is_aplus_total(y: AtomSet, theory: &Theory, signature: &Signature, ab: &Alphabets) -> Result<bool> {
    let table = ModelTable::build(theory, signature)?;
    Ok(aplus_total(&table, y, Masks::new(ab, signature)?))
}

/// `m` is `A⁺`-closed in `E_s(Γ)` over `signature`.
pub fn is_aplus_closed(m: HtInterp, theory: &Theory, signature: &Signature, ab: &Alphabets) -> Result<bool> {
    let table = ModelTable::build(theory, signature)?;
    Ok(aplus_closed(&table, m, Masks::new(ab, signature)?))
}

/// The hyperequivalence interpretations of `theory` over `signature`.
/// The alphabets must be within `signature`.
pub fn hyper_interpretations(theory: &Theory, signature: &Signature, ab: &Alphabets) -> Result<HyperSet> {
    let table = ModelTable::build(theory, signature)?;
    hyper_from_table(&table, ab)
}

pub(crate) fn hyper_from_table(table: &ModelTable, ab: &Alphabets) -> Result<HyperSet> {
    let masks = Masks::new(ab, table.signature())?;
    let members = collect_over(table.shared_signature(), SetTag::Hyper, |m| is_member(table, m, masks));
    Ok(HyperSet {
        members,
        alphabets: ab.clone(),
    })
}

/// The joint signature of both theories together with the alphabet atoms.
pub fn hyper_signature(first: &Theory, second: &Theory, ab: &Alphabets) -> Result<Signature> {
    let extra: Vec<_> = ab.atoms().into_iter().collect();
    joint_signature(first, second, &extra)
}

/// Decides relativized hyperequivalence over the joint signature extended by
/// the alphabet atoms.
pub fn decide_hyper(first: &Theory, second: &Theory, ab: &Alphabets) -> Result<Verdict> {
    let signature = hyper_signature(first, second, ab)?;
    decide_hyper_over(first, second, ab, &signature)
}

pub fn decide_hyper_over(first: &Theory, second: &Theory, ab: &Alphabets, signature: &Signature) -> Result<Verdict> {
    let h1 = hyper_interpretations(first, signature, ab)?;
    let h2 = hyper_interpretations(second, signature, ab)?;
    Ok(Verdict::compare(h1.members(), h2.members()))
}

/// `set` with every here-component restricted to `keep`, as a plain set.
pub fn restrict_here(set: &InterpretationSet, keep: AtomSet) -> InterpretationSet {
    InterpretationSet::new(
        Arc::clone(&set.shared_signature()),
        SetTag::Plain,
        set.iter().map(|m| HtInterp::new(m.here.intersection(keep), m.there)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::{characteristic_set, interp, EquivNotion, Family, Side};
    use crate::syntax::parse_theory;

    fn theory(text: &str) -> Theory {
        parse_theory(text).unwrap()
    }

    fn ab(plus: &[&str], minus: &[&str]) -> Alphabets {
        Alphabets::new(plus.iter().copied(), minus.iter().copied())
    }

    #[test]
    fn aplus_total_examples() {
        let t = theory("a | b.");
        let s = t.signature().clone();
        let b = AtomSet::from_names(&s, &["b"]).unwrap();
        let ab_ = AtomSet::from_names(&s, &["a", "b"]).unwrap();
        assert!(is_aplus_total(b, &t, &s, &ab(&["a"], &[])).unwrap());
        assert!(!is_aplus_total(ab_, &t, &s, &ab(&["a"], &[])).unwrap());

        let t = theory("a.");
        let a = AtomSet::from_names(t.signature(), &["a"]).unwrap();
        assert!(is_aplus_total(a, &t, t.signature(), &ab(&["a"], &[])).unwrap());
    }

    #[test]
    fn aplus_closed_example() {
        let t = theory("a.");
        let s = t.signature().clone();
        let m = interp(&s, &[], &["a"]).unwrap();
        assert!(is_aplus_closed(m, &t, &s, &ab(&["a"], &[])).unwrap());
    }

    #[test]
    fn collapses_to_equivalence_sets() {
        for text in ["a | b.", "-b -> a. -a -> b.", "a. b -> c.", "-a -> b. c | -c.", "(a -> b) -> c."] {
            let t = theory(text);
            let s = t.signature().clone();
            let all: Vec<&str> = s.atoms().iter().map(|a| a.name()).collect();
            let set = |e| characteristic_set(&t, &s, e, Family::EquivalenceInterpretations).unwrap();

            let h = hyper_interpretations(&t, &s, &ab(&[], &[])).unwrap();
            assert!(h.members().same_members(&restrict_here(&set(EquivNotion::AnswerSet), AtomSet::EMPTY)), "{text}");
            let h = hyper_interpretations(&t, &s, &ab(&all, &all)).unwrap();
            assert!(h.members().same_members(&set(EquivNotion::Strong)), "{text}");
            let h = hyper_interpretations(&t, &s, &ab(&all, &[])).unwrap();
            assert!(h.members().same_members(&set(EquivNotion::Uniform)), "{text}");
        }
    }

    #[test]
    fn answer_set_collapse_lists_answer_sets() {
        let t = theory("a | b.");
        let h = hyper_interpretations(&t, t.signature(), &ab(&[], &[])).unwrap();
        let shown: Vec<String> = h.members().iter().map(|m| m.display(h.signature()).to_string()).collect();
        assert_eq!(shown, ["(∅,{a})", "(∅,{b})"]);
    }

    #[test]
    fn disjunction_pair_verdicts() {
        let disj = theory("a | b.");
        let shifted = theory("-b -> a. -a -> b.");
        assert!(decide_hyper(&disj, &shifted, &ab(&["a", "b"], &[])).unwrap().equivalent);
        let v = decide_hyper(&disj, &shifted, &ab(&["a", "b"], &["a", "b"])).unwrap();
        assert!(!v.equivalent);
        assert_eq!(v.witness_text().unwrap(), "(∅,{a,b})");
        assert_eq!(v.witness_side, Some(Side::First));
    }

    #[test]
    fn reflexive_and_alphabets_outside_theories() {
        let t = theory("a -> b.");
        let v = decide_hyper(&t, &t, &ab(&["z"], &["a", "y"])).unwrap();
        assert!(v.equivalent);
        assert_eq!(v.signature.len(), 4);
    }
}
