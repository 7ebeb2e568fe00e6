//! Characteristic sets and decision procedures for classical, answer-set,
//! strong and uniform equivalence.
//!
//! Two theories are `e`-equivalent exactly when their characteristic sets for
//! `e` coincide, and this holds for both families:
//!
//! * countermodel family `C_e`: subsets of the HT-countermodels `C_s`,
//! * equivalence-interpretation family `E_e`: subsets of `E_s`, the total
//!   models together with the *here-countermodels* (non-total countermodels
//!   whose there-part classically satisfies the theory).
//!
//! Equivalence interpretations have the advantage that, for a finite theory,
//! they are captured by the HT-models of a single formula
//! ([`dual_theory`]) on restrictions that preserve non-totality.
//!
//! Total countermodels cannot be captured this way: no theory has exactly
//! the countermodels of `{a}` as its models, since countermodel sets of
//! every theory are total-closed while `{(∅,∅),(∅,{a})}` is not. The
//! regression test `countermodels_of_an_atom_are_not_a_model_set` pins this
//! down.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semantics::{AtomSet, HtInterp, HtSet, InterpretationSet, ModelTable, SetTag};
use crate::syntax::{Atom, Formula, Signature, Theory};

/// The four equivalence notions.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum EquivNotion {
    /// Same classical models.
    Classical,
    /// Same answer sets.
    AnswerSet,
    /// Same answer sets after adding any theory.
    Strong,
    /// Same answer sets after adding any factual theory.
    Uniform,
}

impl EquivNotion {
    pub const ALL: [EquivNotion; 4] = [
        EquivNotion::Classical,
        EquivNotion::AnswerSet,
        EquivNotion::Strong,
        EquivNotion::Uniform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EquivNotion::Classical => "classical",
            EquivNotion::AnswerSet => "answer-set",
            EquivNotion::Strong => "strong",
            EquivNotion::Uniform => "uniform",
        }
    }
}

impl fmt::Display for EquivNotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EquivNotion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" | "c" => Ok(EquivNotion::Classical),
            "answer-set" | "a" => Ok(EquivNotion::AnswerSet),
            "strong" | "s" => Ok(EquivNotion::Strong),
            "uniform" | "u" => Ok(EquivNotion::Uniform),
            other => Err(format!("unknown equivalence notion `{other}`")),
        }
    }
}

/// Which family of characteristic sets to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// Subsets of the countermodels.
    Countermodels,
    /// Subsets of the equivalence interpretations.
    EquivalenceInterpretations,
}

/// `(Y, Y)` is total-closed in `set` if every `(X, Y)` with `X ⊆ Y` is in it.
pub fn is_total_closed<S: HtSet + ?Sized>(m: HtInterp, set: &S) -> bool {
    m.is_total() && m.there.subsets().all(|x| set.contains(HtInterp::new(x, m.there)))
}

/// `(X, Y)` is closed in `set` if `(X', Y)` is in it for every
/// `X ⊆ X' ⊆ Y`.
pub fn is_closed<S: HtSet + ?Sized>(m: HtInterp, set: &S) -> bool {
    m.here
        .supersets_within(m.there)
        .all(|x| set.contains(HtInterp::new(x, m.there)))
}

/// `(X, Y)` is there-closed in `set` if `(Y, Y)` is not in it and
/// `(X', Y)` is for every `X ⊆ X' ⊂ Y`.
pub fn is_there_closed<S: HtSet + ?Sized>(m: HtInterp, set: &S) -> bool {
    !set.contains(HtInterp::total(m.there))
        && m
            .here
            .supersets_within(m.there)
            .filter(|&x| x != m.there)
            .all(|x| set.contains(HtInterp::new(x, m.there)))
}

/// The equivalence interpretations `E_s(Γ)` over `signature`.
pub fn equivalence_interpretations(theory: &Theory, signature: &Signature) -> Result<InterpretationSet> {
    let table = ModelTable::build(theory, signature)?;
    Ok(table.collect(SetTag::Es, |m| table.is_equivalence_interp(m)))
}

/// The characteristic set of `theory` for `notion` in the given family.
pub fn characteristic_set(
    theory: &Theory,
    signature: &Signature,
    notion: EquivNotion,
    family: Family,
) -> Result<InterpretationSet> {
    let table = ModelTable::build(theory, signature)?;
    Ok(characteristic_from_table(&table, notion, family))
}

pub(crate) fn characteristic_from_table(
    table: &ModelTable,
    notion: EquivNotion,
    family: Family,
) -> InterpretationSet {
    let cs = |m: HtInterp| table.is_countermodel(m);
    let es = |m: HtInterp| table.is_equivalence_interp(m);
    match (family, notion) {
        (Family::Countermodels, EquivNotion::Classical) => {
            table.collect(SetTag::Cc, |m| m.is_total() && cs(m))
        }
        (Family::Countermodels, EquivNotion::AnswerSet) => {
            table.collect(SetTag::Ca, |m| m.here.is_empty() && is_there_closed(m, &cs))
        }
        (Family::Countermodels, EquivNotion::Strong) => table.collect(SetTag::Cs, cs),
        (Family::Countermodels, EquivNotion::Uniform) => {
            table.collect(SetTag::Cu, |m| is_there_closed(m, &cs))
        }
        (Family::EquivalenceInterpretations, EquivNotion::Classical) => {
            table.collect(SetTag::Ec, |m| m.is_total() && es(m))
        }
        (Family::EquivalenceInterpretations, EquivNotion::AnswerSet) => {
            table.collect(SetTag::Ea, |m| is_total_closed(m, &es))
        }
        (Family::EquivalenceInterpretations, EquivNotion::Strong) => table.collect(SetTag::Es, es),
        (Family::EquivalenceInterpretations, EquivNotion::Uniform) => {
            table.collect(SetTag::Eu, |m| is_closed(m, &es))
        }
    }
}

/// Which of two compared theories a witness belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::First => "first",
            Side::Second => "second",
        }
    }
}

/// Outcome of comparing two theories.
///
/// When the theories are not equivalent, `witness` is the least element (in
/// canonical order) of the symmetric difference of the compared sets, and
/// `witness_side` names the theory whose set contains it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub equivalent: bool,
    pub witness: Option<HtInterp>,
    pub witness_side: Option<Side>,
    pub signature: Arc<Signature>,
    /// Sizes of the two compared sets.
    pub sizes: (usize, usize),
}

impl Verdict {
    pub(crate) fn compare(first: &InterpretationSet, second: &InterpretationSet) -> Verdict {
        let diff = first.first_difference(second);
        Verdict {
            equivalent: diff.is_none(),
            witness: diff.map(|(m, _)| m),
            witness_side: diff.map(|(_, left)| if left { Side::First } else { Side::Second }),
            signature: first.shared_signature(),
            sizes: (first.len(), second.len()),
        }
    }

    pub fn witness_text(&self) -> Option<String> {
        self.witness.map(|m| m.display(&self.signature).to_string())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.witness, self.witness_side) {
            (Some(m), Some(side)) => write!(
                f,
                "not equivalent: {} distinguishes (in the {} theory's set)",
                m.display(&self.signature),
                side.name()
            ),
            _ => f.write_str("equivalent"),
        }
    }
}

/// The union of both signatures plus `extra` atoms.
pub fn joint_signature(first: &Theory, second: &Theory, extra: &[Atom]) -> Result<Signature> {
    first
        .signature()
        .union(second.signature())?
        .extended(extra.iter().cloned())
}

/// Decides `notion`-equivalence over the joint signature of both theories.
pub fn decide_equivalence(first: &Theory, second: &Theory, notion: EquivNotion) -> Result<Verdict> {
    let signature = joint_signature(first, second, &[])?;
    decide_equivalence_over(first, second, notion, &signature)
}

/// Decides `notion`-equivalence by comparing the equivalence-interpretation
/// sets over `signature`, cross-checked against the countermodel sets.
pub fn decide_equivalence_over(
    first: &Theory,
    second: &Theory,
    notion: EquivNotion,
    signature: &Signature,
) -> Result<Verdict> {
    let t1 = ModelTable::build(first, signature)?;
    let t2 = ModelTable::build(second, signature)?;
    let e1 = characteristic_from_table(&t1, notion, Family::EquivalenceInterpretations);
    let e2 = characteristic_from_table(&t2, notion, Family::EquivalenceInterpretations);
    let c1 = characteristic_from_table(&t1, notion, Family::Countermodels);
    let c2 = characteristic_from_table(&t2, notion, Family::Countermodels);
    let verdict = Verdict::compare(&e1, &e2);
    if verdict.equivalent != c1.same_members(&c2) {
        return Err(Error::Inconsistent {
            notion: notion.name().to_owned(),
        });
    }
    Ok(verdict)
}

/// Decides `notion`-equivalence using one family only.
pub fn decide_with_family(
    first: &Theory,
    second: &Theory,
    notion: EquivNotion,
    family: Family,
    signature: &Signature,
) -> Result<Verdict> {
    let s1 = characteristic_set(first, signature, notion, family)?;
    let s2 = characteristic_set(second, signature, notion, family)?;
    Ok(Verdict::compare(&s1, &s2))
}

fn double_negation(f: Formula) -> Formula {
    Formula::not(Formula::not(f))
}

/// `{ ¬¬a → a | a ∈ L }`, whose HT-models are exactly the total
/// interpretations.
pub fn tau_epsilon(signature: &Signature) -> Theory {
    let formulas = signature.atoms().iter().map(|a| {
        let atom = Formula::Atom(a.clone());
        Formula::implies(double_negation(atom.clone()), atom)
    });
    Theory::with_signature(formulas, signature.clone()).expect("atoms come from the signature")
}

/// `Γ_φ = { ¬¬ψ | ψ ∈ Γ } ∪ { φ → (¬¬a → a) | a ∈ L }`.
///
/// Its HT-models are the total models of `Γ` (for any `φ`) and the
/// here-countermodels that falsify `φ`.
pub fn gamma_phi(theory: &Theory, phi: &Formula, signature: &Signature) -> Result<Theory> {
    let negated = theory.formulas().iter().cloned().map(double_negation);
    let guarded = tau_epsilon(signature)
        .formulas()
        .to_vec()
        .into_iter()
        .map(|t| Formula::implies(phi.clone(), t));
    Theory::with_signature(negated.chain(guarded), theory.signature().union(signature)?)
}

fn gamma_phis(theory: &Theory, signature: &Signature) -> Result<Vec<Theory>> {
    theory
        .formulas()
        .iter()
        .map(|phi| gamma_phi(theory, phi, signature))
        .collect()
}

/// Whether `m` satisfies `Γ_φ` for some `φ ∈ Γ`; for nonempty `Γ` this is
/// membership in `E_s(Γ)`. The empty theory has no `Γ_φ`, so the answer is
/// always `false` for it.
pub fn membership_via_gamma(m: HtInterp, theory: &Theory, signature: &Signature) -> Result<bool> {
    for gamma in gamma_phis(theory, signature)? {
        if crate::semantics::ht_sat_theory(signature, m, &gamma)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `⋁_{φ ∈ Γ} ⋀ Γ_φ`, a single formula whose models characterise `E_s(Γ)`
/// on totality-preserving restrictions. `⊥` for the empty theory.
pub fn dual_theory(theory: &Theory, signature: &Signature) -> Result<Formula> {
    Ok(Formula::disjunction(
        gamma_phis(theory, signature)?
            .into_iter()
            .map(|g| Formula::conjunction(g.formulas().iter().cloned())),
    ))
}

/// `M|_L`: both components intersected with `to`, re-indexed over `to`.
pub fn restrict(m: HtInterp, from: &Signature, to: &Signature) -> HtInterp {
    HtInterp::new(m.here.project(from, to), m.there.project(from, to))
}

/// Whether restricting `m` to `to` keeps a non-total interpretation
/// non-total.
pub fn is_totality_preserving(m: HtInterp, from: &Signature, to: &Signature) -> bool {
    m.is_total() || !restrict(m, from, to).is_total()
}

/// `(X, Y)` from atom names.
pub fn interp(signature: &Signature, here: &[&str], there: &[&str]) -> Result<HtInterp> {
    let x = AtomSet::from_names(signature, here)?;
    let y = AtomSet::from_names(signature, there)?;
    if !x.is_subset(y) {
        return Err(Error::UnknownAtom {
            atom: format!("here-part {here:?} not within {there:?}"),
        });
    }
    Ok(HtInterp::new(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{countermodels, enumerate_ht, equilibrium_models, ht_models, ht_sat};
    use crate::syntax::parse_theory;

    fn theory(text: &str) -> Theory {
        parse_theory(text).unwrap()
    }

    fn sig(names: &[&str]) -> Signature {
        Signature::new(names.iter().copied()).unwrap()
    }

    fn listing(set: &InterpretationSet) -> Vec<String> {
        set.iter().map(|m| m.display(set.signature()).to_string()).collect()
    }

    #[test]
    fn closure_examples() {
        let s = sig(&["a"]);
        let cs = countermodels(&theory("a."), &s).unwrap();
        assert!(is_there_closed(interp(&s, &[], &["a"]).unwrap(), &cs));
        assert!(!is_there_closed(interp(&s, &[], &[]).unwrap(), &cs));

        let set = InterpretationSet::new(
            Arc::new(s.clone()),
            SetTag::Plain,
            [interp(&s, &["a"], &["a"]).unwrap(), interp(&s, &[], &["a"]).unwrap()],
        );
        assert!(is_total_closed(interp(&s, &["a"], &["a"]).unwrap(), &set));
        assert!(is_closed(interp(&s, &[], &["a"]).unwrap(), &set));
    }

    #[test]
    fn equivalence_interpretations_examples() {
        let t = theory("a.");
        assert_eq!(
            listing(&equivalence_interpretations(&t, t.signature()).unwrap()),
            ["(∅,{a})", "({a},{a})"]
        );

        let t = theory("a | b.");
        assert_eq!(
            listing(&equivalence_interpretations(&t, t.signature()).unwrap()),
            ["(∅,{a})", "({a},{a})", "(∅,{b})", "({b},{b})", "(∅,{a,b})", "({a,b},{a,b})"]
        );

        let t = Theory::new([Formula::Bottom]).unwrap();
        assert!(equivalence_interpretations(&t, &sig(&["a"])).unwrap().is_empty());
    }

    #[test]
    fn uniform_sets_of_disjunction_pair() {
        // (∅,{a}) is closed in E_s: both (∅,{a}) and ({a},{a}) are members
        let s = sig(&["a", "b"]);
        let disj = theory("a | b.");
        let shifted = theory("-b -> a. -a -> b.");
        let eu = |t: &Theory| {
            listing(&characteristic_set(t, &s, EquivNotion::Uniform, Family::EquivalenceInterpretations).unwrap())
        };
        let expected = ["(∅,{a})", "({a},{a})", "(∅,{b})", "({b},{b})", "({a,b},{a,b})"];
        assert_eq!(eu(&disj), expected);
        assert_eq!(eu(&shifted), expected);
    }

    #[test]
    fn answer_set_sets_match_equilibrium_models() {
        let t = theory("-a -> a.");
        let s = t.signature();
        let ca = characteristic_set(&t, s, EquivNotion::AnswerSet, Family::Countermodels).unwrap();
        let ea = characteristic_set(&t, s, EquivNotion::AnswerSet, Family::EquivalenceInterpretations).unwrap();
        assert!(ca.is_empty());
        assert!(ea.is_empty());

        let t = theory("a | b. c -> a.");
        let s = t.signature();
        let ea = characteristic_set(&t, s, EquivNotion::AnswerSet, Family::EquivalenceInterpretations).unwrap();
        assert!(ea.same_members(&equilibrium_models(&t, s).unwrap()));
        let ca = characteristic_set(&t, s, EquivNotion::AnswerSet, Family::Countermodels).unwrap();
        let ys: Vec<AtomSet> = ca.iter().map(|m| m.there).collect();
        let eys: Vec<AtomSet> = ea.iter().map(|m| m.there).collect();
        assert_eq!(ys, eys);
    }

    fn example1_truncation() -> (Theory, Theory) {
        (
            theory("a1. a2. a3."),
            theory("-a1 -> a1. -a2 -> a2. -a3 -> a3. a2 -> a1. a3 -> a2."),
        )
    }

    #[test]
    fn truncated_infinite_example() {
        let (g1, g2) = example1_truncation();
        let s = joint_signature(&g1, &g2, &[]).unwrap();
        let m = interp(&s, &[], &["a1", "a2", "a3"]).unwrap();
        let cu1 = characteristic_set(&g1, &s, EquivNotion::Uniform, Family::Countermodels).unwrap();
        let cu2 = characteristic_set(&g2, &s, EquivNotion::Uniform, Family::Countermodels).unwrap();
        assert!(cu1.contains(m));
        assert!(!cu2.contains(m));

        let v = decide_equivalence(&g1, &g2, EquivNotion::Uniform).unwrap();
        assert!(!v.equivalent);
        assert_eq!(v.witness_text().unwrap(), "(∅,{a1,a2,a3})");
        assert_eq!(v.witness_side, Some(Side::First));
    }

    #[test]
    fn disjunction_pair_decisions() {
        let disj = theory("a | b.");
        let shifted = theory("-b -> a. -a -> b.");
        assert!(decide_equivalence(&disj, &shifted, EquivNotion::Uniform).unwrap().equivalent);
        assert!(decide_equivalence(&disj, &shifted, EquivNotion::AnswerSet).unwrap().equivalent);
        assert!(decide_equivalence(&disj, &shifted, EquivNotion::Classical).unwrap().equivalent);
        let v = decide_equivalence(&disj, &shifted, EquivNotion::Strong).unwrap();
        assert!(!v.equivalent);
        assert_eq!(v.witness_text().unwrap(), "(∅,{a,b})");
        assert_eq!(v.witness_side, Some(Side::First));
    }

    #[test]
    fn tau_epsilon_examples() {
        let s = sig(&["a"]);
        let tau = tau_epsilon(&s);
        assert_eq!(tau.formulas(), &[crate::syntax::parse_formula("--a -> a").unwrap()]);
        let not_total = interp(&s, &[], &["a"]).unwrap();
        assert!(!crate::semantics::ht_sat_theory(&s, not_total, &tau).unwrap());
        let empty = interp(&s, &[], &[]).unwrap();
        assert!(crate::semantics::ht_sat_theory(&s, empty, &tau).unwrap());
    }

    #[test]
    fn gamma_phi_of_an_atom() {
        let t = theory("a.");
        let s = t.signature().clone();
        let g = gamma_phi(&t, &Formula::atom("a"), &s).unwrap();
        let shown: Vec<String> = g.formulas().iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["--a", "a -> (--a -> a)"]);
        assert!(membership_via_gamma(interp(&s, &[], &["a"]).unwrap(), &t, &s).unwrap());
        assert!(!membership_via_gamma(interp(&s, &[], &[]).unwrap(), &t, &s).unwrap());
    }

    #[test]
    fn dual_theory_examples() {
        let t = theory("a.");
        assert_eq!(dual_theory(&t, t.signature()).unwrap().to_string(), "--a & (a -> (--a -> a))");
        let empty = Theory::new([]).unwrap();
        assert_eq!(dual_theory(&empty, &sig(&["a"])).unwrap(), Formula::Bottom);

        let t = theory("a. b.");
        let d = dual_theory(&t, t.signature()).unwrap();
        let Formula::Or(left, right) = &d else { panic!("expected a disjunction") };
        let conjuncts = |f: &Formula| {
            let mut n = 1;
            let mut cur = f;
            while let Formula::And(l, _) = cur {
                n += 1;
                cur = l;
            }
            n
        };
        // |Γ| double negations plus |L| guarded totality formulas per disjunct
        assert_eq!(conjuncts(left), 4);
        assert_eq!(conjuncts(right), 4);
    }

    #[test]
    fn restriction_examples() {
        let big = sig(&["a", "x"]);
        let small = sig(&["a"]);
        let m = interp(&big, &["x"], &["a", "x"]).unwrap();
        assert_eq!(restrict(m, &big, &small), interp(&small, &[], &["a"]).unwrap());
        assert!(is_totality_preserving(m, &big, &small));

        let m = interp(&big, &["a"], &["a", "x"]).unwrap();
        assert_eq!(restrict(m, &big, &small), interp(&small, &["a"], &["a"]).unwrap());
        assert!(!is_totality_preserving(m, &big, &small));

        let m = interp(&big, &["a", "x"], &["a", "x"]).unwrap();
        assert_eq!(restrict(m, &big, &small), interp(&small, &["a"], &["a"]).unwrap());
        assert!(is_totality_preserving(m, &big, &small));
    }

    #[test]
    fn finrep_dual_over_extended_signature() {
        // (X,Y) over {a,x} is a totality-preserving model of the dual of {a}
        // iff a ∈ Y and either X = Y or a ∉ X
        let t = theory("a.");
        let small = t.signature().clone();
        let big = sig(&["a", "x"]);
        let dual = dual_theory(&t, &small).unwrap();
        let es = equivalence_interpretations(&t, &big).unwrap();
        let a = big.index_of_name("a").unwrap();
        for m in enumerate_ht(&big).unwrap() {
            let r = restrict(m, &big, &small);
            let via_dual = ht_sat(&small, r, &dual).unwrap() && is_totality_preserving(m, &big, &small);
            let expected = m.there.contains(a) && (m.is_total() || !m.here.contains(a));
            assert_eq!(via_dual, expected, "{}", m.display(&big));
            assert_eq!(es.contains(m), expected, "{}", m.display(&big));
        }
    }

    #[test]
    fn countermodels_of_an_atom_are_not_a_model_set() {
        // Every HT-model set is closed under (X,Y) ↦ (Y,Y); the countermodels
        // of {a} contain (∅,{a}) but not ({a},{a}).
        let t = theory("a.");
        let s = t.signature().clone();
        let cs = countermodels(&t, &s).unwrap();
        assert!(cs.contains(interp(&s, &[], &["a"]).unwrap()));
        assert!(!cs.contains(interp(&s, &["a"], &["a"]).unwrap()));
        // and the models of every candidate over {a} are persistent
        for text in ["a.", "-a.", "--a.", "a | -a.", "--a -> a.", "#f.", "#t."] {
            let models = ht_models(&theory(text).over(&s).unwrap(), &s).unwrap();
            assert!(!models.same_members(&cs), "{text}");
        }
    }
}
