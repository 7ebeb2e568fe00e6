//! Gelfond–Lifschitz style reducts and answer sets of disjunctive programs,
//! computed directly on rules without going through HT.

use std::collections::BTreeSet;

use super::interp::check_bound;
use super::table::per_there;
use super::AtomSet;
use crate::error::Result;
use crate::syntax::{Atom, Program, Rule, Signature};

/// A program whose rules have no negated atoms in head or body.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PositiveProgram {
    rules: Vec<Rule>,
}

impl PositiveProgram {
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn satisfied_by(&self, interpretation: &BTreeSet<Atom>) -> bool {
        self.rules.iter().all(|r| r.satisfied_by(interpretation))
    }
}

/// Keeps the rules whose negative head is contained in `interpretation` and
/// whose negative body is disjoint from it, and drops their negative parts.
/// A kept rule with an empty positive head acts as a constraint.
pub fn reduct(program: &Program, interpretation: &BTreeSet<Atom>) -> PositiveProgram {
    let rules = program
        .rules()
        .iter()
        .filter(|r| r.head_neg.is_subset(interpretation) && r.body_neg.is_disjoint(interpretation))
        .map(|r| Rule {
            head_pos: r.head_pos.clone(),
            body_pos: r.body_pos.clone(),
            ..Rule::default()
        })
        .collect();
    PositiveProgram { rules }
}

#[derive(Clone, Copy)]
struct MaskRule {
    head_pos: AtomSet,
    head_neg: AtomSet,
    body_pos: AtomSet,
    body_neg: AtomSet,
}

impl MaskRule {
    fn kept_by(&self, i: AtomSet) -> bool {
        self.head_neg.is_subset(i) && self.body_neg.is_disjoint(i)
    }

    /// Satisfaction of the reduced rule `head_pos ← body_pos`.
    fn reduced_satisfied_by(&self, j: AtomSet) -> bool {
        !self.body_pos.is_subset(j) || !self.head_pos.is_disjoint(j)
    }
}

/// The answer sets of `program` over `signature`: every `I` that satisfies
/// the reduct `Π^I` and has no proper subset that does. Results are in
/// ascending mask order.
pub fn answer_sets_program(program: &Program, signature: &Signature) -> Result<Vec<AtomSet>> {
    check_bound("answer-set enumeration", signature.len())?;
    let rules: Vec<MaskRule> = program
        .rules()
        .iter()
        .map(|r| {
            Ok(MaskRule {
                head_pos: AtomSet::from_atoms(signature, &r.head_pos)?,
                head_neg: AtomSet::from_atoms(signature, &r.head_neg)?,
                body_pos: AtomSet::from_atoms(signature, &r.body_pos)?,
                body_neg: AtomSet::from_atoms(signature, &r.body_neg)?,
            })
        })
        .collect::<Result<_>>()?;

    let is_answer_set = |i: u64| {
        let i = AtomSet(i);
        let reduct: Vec<MaskRule> = rules.iter().copied().filter(|r| r.kept_by(i)).collect();
        let models = |j: AtomSet| reduct.iter().all(|r| r.reduced_satisfied_by(j));
        (models(i) && i.subsets().filter(|&j| j != i).all(|j| !models(j))).then_some(i)
    };
    Ok(per_there(signature.len(), is_answer_set).into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    fn set(names: &[&str]) -> BTreeSet<Atom> {
        names.iter().map(Atom::new).collect()
    }

    fn answer_sets(text: &str) -> Vec<Vec<String>> {
        let p = parse_program(text).unwrap();
        answer_sets_program(&p, p.signature())
            .unwrap()
            .into_iter()
            .map(|s| s.names(p.signature()))
            .collect()
    }

    #[test]
    fn reduct_examples() {
        let p = parse_program("a :- not b.").unwrap();
        let r = reduct(&p, &set(&["a"]));
        assert_eq!(r.rules().len(), 1);
        assert_eq!(r.rules()[0].head_pos, set(&["a"]));
        assert!(r.rules()[0].body_pos.is_empty());
        assert!(reduct(&p, &set(&["b"])).is_empty());

        let p = parse_program("not a :- b.").unwrap();
        let r = reduct(&p, &set(&["a"]));
        assert_eq!(r.rules().len(), 1);
        assert!(r.rules()[0].head_pos.is_empty());
        assert_eq!(r.rules()[0].body_pos, set(&["b"]));
        assert!(reduct(&p, &set(&[])).is_empty());
    }

    #[test]
    fn disjunction_has_two_answer_sets() {
        assert_eq!(answer_sets("a | b."), [vec!["a"], vec!["b"]]);
    }

    #[test]
    fn odd_loop_has_none() {
        assert!(answer_sets("a :- not a.").is_empty());
    }

    #[test]
    fn empty_program() {
        let p = Program::new([]).unwrap();
        assert_eq!(answer_sets_program(&p, p.signature()).unwrap(), [AtomSet::EMPTY]);
    }

    #[test]
    fn even_loop_and_negative_head() {
        assert_eq!(answer_sets("a :- not b.\nb :- not a."), [vec!["a"], vec!["b"]]);
        // `not a` in the head lets `a` be chosen freely
        assert_eq!(answer_sets("a | not a."), [vec![], vec!["a"]]);
    }
}
