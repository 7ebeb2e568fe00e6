use std::collections::BTreeMap;

use super::{Alphabets, Atom, Formula, Theory};

/// `true` iff every implication in `formula` has `⊥` as its consequent,
/// i.e. the formula is built from `∧`, `∨`, `⊥` and `¬` only.
pub fn is_factual(formula: &Formula) -> bool {
    match formula {
        Formula::Bottom | Formula::Atom(_) => true,
        Formula::And(l, r) | Formula::Or(l, r) => is_factual(l) && is_factual(r),
        Formula::Impl(antecedent, consequent) => {
            **consequent == Formula::Bottom && is_factual(antecedent)
        }
    }
}

/// How an atom occurs in a formula, aggregated over all its occurrences.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Polarity {
    pub positive: bool,
    pub negative: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolarityReport {
    flags: BTreeMap<Atom, Polarity>,
}

impl PolarityReport {
    /// Both flags are false for atoms that do not occur.
    pub fn get(&self, atom: &Atom) -> Polarity {
        self.flags.get(atom).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, Polarity)> {
        self.flags.iter().map(|(a, p)| (a, *p))
    }
}

/// Classifies every atom occurrence of `formula` as positive, negative or
/// both, and aggregates the flags per atom.
///
/// An occurrence is negative iff it lies inside the antecedent of some
/// implication on its path from the root. It is positive iff its path
/// crosses no antecedent edge, or it lies inside the consequent of some
/// implication, or it lies inside the antecedent `φ1` of an implication
/// `φ1 → φ2` that itself occurs negatively. The last clause covers
/// `(φ1 → φ2) → φ3` at any depth and also implications reached through `∧`
/// and `∨` inside an antecedent, e.g. `a` in `((a → b) ∧ x) → c`.
pub fn atom_polarities(formula: &Formula) -> PolarityReport {
    let mut report = PolarityReport::default();
    walk(formula, Context::ROOT, &mut report);
    report
}

#[derive(Clone, Copy)]
struct Context {
    /// Inside some antecedent.
    negative: bool,
    /// Inside some consequent.
    in_consequent: bool,
    /// The subformula occurs positively in the structural sense: every
    /// consequent is positive, and the antecedent of a negatively occurring
    /// implication is positive.
    structural_positive: bool,
}

impl Context {
    const ROOT: Context = Context {
        negative: false,
        in_consequent: false,
        structural_positive: true,
    };
}

fn walk(formula: &Formula, ctx: Context, report: &mut PolarityReport) {
    match formula {
        Formula::Bottom => {}
        Formula::Atom(a) => {
            let entry = report.flags.entry(a.clone()).or_default();
            entry.negative |= ctx.negative;
            entry.positive |= ctx.in_consequent || ctx.structural_positive;
        }
        Formula::And(l, r) | Formula::Or(l, r) => {
            walk(l, ctx, report);
            walk(r, ctx, report);
        }
        Formula::Impl(antecedent, consequent) => {
            walk(
                antecedent,
                Context {
                    negative: true,
                    in_consequent: ctx.in_consequent,
                    structural_positive: ctx.negative,
                },
                report,
            );
            walk(
                consequent,
                Context {
                    negative: ctx.negative,
                    in_consequent: true,
                    structural_positive: true,
                },
                report,
            );
        }
    }
}

/// Whether every formula of `theory` only has positive occurrences of atoms
/// from `a_plus` and negative occurrences of atoms from `a_minus`. With
/// `extended`, factual formulas over `a_plus` are admitted as well.
pub fn is_apan_theory(theory: &Theory, alphabets: &Alphabets, extended: bool) -> bool {
    theory
        .formulas()
        .iter()
        .all(|f| is_apan_formula(f, alphabets) || (extended && is_factual_over_plus(f, alphabets)))
}

pub(crate) fn is_apan_formula(formula: &Formula, alphabets: &Alphabets) -> bool {
    atom_polarities(formula).iter().all(|(atom, p)| {
        (!p.positive || alphabets.a_plus.contains(atom))
            && (!p.negative || alphabets.a_minus.contains(atom))
    })
}

pub(crate) fn is_factual_over_plus(formula: &Formula, alphabets: &Alphabets) -> bool {
    is_factual(formula) && formula.atoms().iter().all(|a| alphabets.a_plus.contains(a))
}
