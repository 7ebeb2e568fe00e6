//! Brute-force validation of equivalence verdicts.
//!
//! The oracle never looks at characteristic sets. It adds contexts to both
//! theories and compares answer sets, exactly as the equivalence notions are
//! defined. Context pools follow the shapes used to refute equivalence:
//! sets of facts for uniform equivalence, and facts over `A⁺` together with
//! implications `α → β` (`α ∈ A⁻`, `β ∈ A⁺`) for hyperequivalence.
//!
//! An "equivalent" verdict can only be falsified by the oracle, never
//! confirmed beyond the pool searched.

use std::fmt;

use rayon::prelude::*;

use crate::corpus::{standard_signature, Corpus};
use crate::equiv::{decide_with_family, joint_signature, EquivNotion, Family};
use crate::error::{Error, Result};
use crate::hyper::{decide_hyper_over, hyper_interpretations, hyper_signature, restrict_here};
use crate::semantics::{answer_sets, check_bound, classical_sat, AtomSet};
use crate::syntax::{Alphabets, Atom, Formula, Signature, Theory};

/// Largest number of contexts a pool may hold.
pub const MAX_POOL: usize = 1 << 20;

/// Where the contexts of a pool come from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum PoolKind {
    /// Only the empty context.
    Empty,
    /// Sets of facts over the signature and fresh atoms.
    Uniform,
    /// Facts over `A⁺` and implications from `A⁻` into `A⁺`.
    Hyper,
    /// A hyper pool with factual formulas over `A⁺` added.
    ExtendedHyper,
    /// A hyper pool with both alphabets equal to the signature, plus a
    /// uniform pool.
    Strong,
}

/// One context and a short note on how it was built.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Context {
    pub theory: Theory,
    pub provenance: String,
}

#[derive(Clone, Debug)]
pub struct ContextPool {
    pub kind: PoolKind,
    pub contexts: Vec<Context>,
}

impl ContextPool {
    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn empty_context() -> ContextPool {
        ContextPool {
            kind: PoolKind::Empty,
            contexts: vec![Context {
                theory: Theory::new([]).expect("empty theory"),
                provenance: "empty context".into(),
            }],
        }
    }

    fn facts_text(theory: &Theory) -> String {
        let names: Vec<String> = theory.formulas().iter().map(ToString::to_string).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// Every set of facts over `signature` extended by `k_extra` fresh atoms,
/// in ascending mask order.
pub fn uniform_contexts(signature: &Signature, k_extra: usize) -> Result<ContextPool> {
    let extended = signature.extended(signature.fresh_atoms(k_extra))?;
    check_bound("uniform context pool", extended.len())?;
    let contexts = AtomSet::full(extended.len())
        .subsets()
        .map(|s| {
            let facts = s.to_atoms(&extended).into_iter().map(Formula::Atom);
            let theory = Theory::with_signature(facts, extended.clone()).expect("atoms of the signature");
            Context {
                provenance: format!("facts {}", s.display(&extended)),
                theory,
            }
        })
        .collect();
    Ok(ContextPool {
        kind: PoolKind::Uniform,
        contexts,
    })
}

/// Facts over `A⁺`, then `α → β` for `α ∈ A⁻`, `β ∈ A⁺`, `α ≠ β`.
/// `α → α` is left out since it is a tautology.
pub fn hyper_generators(ab: &Alphabets) -> Vec<Formula> {
    let facts = ab.a_plus.iter().map(|a| Formula::Atom(a.clone()));
    let rules = ab.a_minus.iter().flat_map(|alpha| {
        ab.a_plus
            .iter()
            .filter(move |beta| *beta != alpha)
            .map(move |beta| Formula::implies(Formula::Atom(alpha.clone()), Formula::Atom(beta.clone())))
    });
    facts.chain(rules).collect()
}

fn binomial_prefix_sum(n: usize, k: usize) -> usize {
    let mut total: usize = 0;
    let mut c: usize = 1;
    for i in 0..=k.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul(n - i) / (i + 1);
    }
    total
}

/// Index combinations of size `0..=budget` out of `n`, by size, then
/// lexicographically.
fn combinations(n: usize, budget: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 0..=budget.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.clone());
            let Some(pos) = (0..size).rev().find(|&p| idx[p] != p + n - size) else { break };
            idx[pos] += 1;
            for q in pos + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    out
}

fn pool_from_generators(kind: PoolKind, generators: &[Formula], budget: usize) -> Result<ContextPool> {
    let count = binomial_prefix_sum(generators.len(), budget);
    if count > MAX_POOL {
        return Err(Error::BoundExceeded {
            what: "context pool",
            requested: count,
            limit: MAX_POOL,
        });
    }
    let contexts = combinations(generators.len(), budget)
        .into_iter()
        .map(|idx| {
            let theory = Theory::new(idx.iter().map(|&i| generators[i].clone())).expect("small theory");
            Context {
                provenance: ContextPool::facts_text(&theory),
                theory,
            }
        })
        .collect();
    Ok(ContextPool { kind, contexts })
}

/// Every theory of at most `budget` formulas drawn from
/// [`hyper_generators`].
pub fn hyper_contexts(ab: &Alphabets, budget: usize) -> Result<ContextPool> {
    pool_from_generators(PoolKind::Hyper, &hyper_generators(ab), budget)
}

/// Factual formulas over `A⁺`: `¬a`, `¬¬a`, and `a ∨ b`, `¬a ∨ b` for
/// distinct `a`, `b`.
pub fn factual_generators(ab: &Alphabets) -> Vec<Formula> {
    let plus: Vec<&Atom> = ab.a_plus.iter().collect();
    let mut out = Vec::new();
    for a in &plus {
        let fa = Formula::Atom((*a).clone());
        out.push(Formula::not(fa.clone()));
        out.push(Formula::not(Formula::not(fa)));
    }
    for a in &plus {
        for b in &plus {
            if a < b {
                out.push(Formula::or(Formula::Atom((*a).clone()), Formula::Atom((*b).clone())));
            }
            if a != b {
                out.push(Formula::or(Formula::not(Formula::Atom((*a).clone())), Formula::Atom((*b).clone())));
            }
        }
    }
    out
}

/// The hyper pool, followed by each factual formula alone and added to each
/// context of at most one formula.
pub fn extended_hyper_contexts(ab: &Alphabets, budget: usize, factual: &[Formula]) -> Result<ContextPool> {
    let base = hyper_contexts(ab, budget)?;
    let small: Vec<&Context> = base.contexts.iter().filter(|c| c.theory.len() <= 1).collect();
    let mut contexts = base.contexts.clone();
    for f in factual {
        for c in &small {
            let formulas = c.theory.formulas().iter().cloned().chain(std::iter::once(f.clone()));
            let theory = Theory::new(formulas).expect("small theory");
            contexts.push(Context {
                provenance: format!("factual {}", ContextPool::facts_text(&theory)),
                theory,
            });
        }
    }
    Ok(ContextPool {
        kind: PoolKind::ExtendedHyper,
        contexts,
    })
}

/// Hyper contexts with `A⁺ = A⁻ = L` and at most `budget` formulas (all
/// generator subsets when `None`), followed by the uniform pool.
pub fn strong_contexts(signature: &Signature, budget: Option<usize>, k_extra: usize) -> Result<ContextPool> {
    let generators = hyper_generators(&Alphabets::full(signature));
    let mut pool = pool_from_generators(PoolKind::Strong, &generators, budget.unwrap_or(generators.len()))?;
    pool.contexts.extend(uniform_contexts(signature, k_extra)?.contexts);
    Ok(pool)
}

fn with_context(theory: &Theory, context: &Theory, signature: &Signature) -> Result<Theory> {
    theory.union(context)?.over(signature)
}

fn context_signature(first: &Theory, second: &Theory, context: &Theory) -> Result<Signature> {
    joint_signature(first, second, &[])?.union(context.signature())
}

/// Whether `Γ1 ∪ ctx` and `Γ2 ∪ ctx` have the same answer sets.
pub fn answer_set_equivalent_under(first: &Theory, second: &Theory, context: &Theory) -> Result<bool> {
    Ok(differing_answer_set(first, second, context)?.is_none())
}

/// The least answer set of exactly one of `Γ1 ∪ ctx`, `Γ2 ∪ ctx`, with
/// `true` when it belongs to the first.
fn differing_answer_set(first: &Theory, second: &Theory, context: &Theory) -> Result<Option<(Vec<String>, bool)>> {
    let signature = context_signature(first, second, context)?;
    let a1 = answer_sets(&with_context(first, context, &signature)?, &signature)?;
    let a2 = answer_sets(&with_context(second, context, &signature)?, &signature)?;
    let only_first = a1.iter().find(|y| !a2.contains(y)).map(|y| (*y, true));
    let only_second = a2.iter().find(|y| !a1.contains(y)).map(|y| (*y, false));
    let least = match (only_first, only_second) {
        (Some(f), Some(s)) => Some(if f.0 .0 <= s.0 .0 { f } else { s }),
        (f, s) => f.or(s),
    };
    Ok(least.map(|(y, side)| (y.names(&signature), side)))
}

/// A context on which the two theories have different answer sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counterexample {
    /// Position of the context in its pool.
    pub index: usize,
    pub context: Theory,
    pub provenance: String,
    /// An answer set of exactly one side.
    pub answer_set: Vec<String>,
    /// Whether that answer set belongs to the first theory.
    pub in_first: bool,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "context {} gives answer set {{{}}} only to the {} theory",
            self.provenance,
            self.answer_set.join(","),
            if self.in_first { "first" } else { "second" }
        )
    }
}

/// The first context of `pool` (in pool order) that distinguishes the
/// theories. Contexts are tried in parallel.
pub fn search_counterexample(first: &Theory, second: &Theory, pool: &ContextPool) -> Result<Option<Counterexample>> {
    pool.contexts
        .par_iter()
        .enumerate()
        .find_map_first(|(index, c)| match differing_answer_set(first, second, &c.theory) {
            Ok(None) => None,
            Ok(Some((answer_set, in_first))) => Some(Ok(Counterexample {
                index,
                context: c.theory.clone(),
                provenance: c.provenance.clone(),
                answer_set,
                in_first,
            })),
            Err(e) => Some(Err(e)),
        })
        .transpose()
}

/// The least set of atoms that is a classical model of exactly one theory.
pub fn classical_counterexample(first: &Theory, second: &Theory) -> Result<Option<Counterexample>> {
    let signature = joint_signature(first, second, &[])?;
    check_bound("classical model enumeration", signature.len())?;
    let f1 = Formula::conjunction(first.formulas().iter().cloned());
    let f2 = Formula::conjunction(second.formulas().iter().cloned());
    for y in AtomSet::full(signature.len()).subsets() {
        let m1 = classical_sat(&signature, y, &f1)?;
        if m1 != classical_sat(&signature, y, &f2)? {
            return Ok(Some(Counterexample {
                index: 0,
                context: Theory::new([])?,
                provenance: "classical models".into(),
                answer_set: y.names(&signature),
                in_first: m1,
            }));
        }
    }
    Ok(None)
}

/// What a verdict was about, for [`witness_context`].
#[derive(Clone, Debug)]
pub enum Target {
    Notion(EquivNotion),
    Hyper(Alphabets),
}

fn facts(atoms: Vec<Atom>) -> impl Iterator<Item = Formula> {
    atoms.into_iter().map(Formula::Atom)
}

/// `X ∪ { a → b | a ∈ from, b ∈ to, a ≠ b }` as a theory.
fn facts_and_links(x: Vec<Atom>, from: &[Atom], to: &[Atom]) -> Theory {
    let links = from.iter().flat_map(|a| {
        to.iter()
            .filter(move |b| *b != a)
            .map(move |b| Formula::implies(Formula::Atom(a.clone()), Formula::Atom(b.clone())))
    });
    Theory::new(facts(x).chain(links)).expect("small theory")
}

/// Candidate contexts following the refutation arguments for a witness
/// `(X, Y)` over `signature`.
fn witness_candidates(m: crate::HtInterp, signature: &Signature, target: &Target) -> Vec<(Theory, String)> {
    let x = m.here.to_atoms(signature);
    let y = m.there.to_atoms(signature);
    let gap = m.there.difference(m.here).to_atoms(signature);
    let facts_of = |atoms: Vec<Atom>| Theory::new(facts(atoms)).expect("facts");
    match target {
        Target::Notion(EquivNotion::Classical) => Vec::new(),
        Target::Notion(EquivNotion::AnswerSet) => vec![(facts_of(Vec::new()), "empty context".into())],
        Target::Notion(EquivNotion::Strong) => vec![
            (facts_of(y), "facts Y".into()),
            (facts_and_links(x, &gap, &gap), "X plus implications within Y \\ X".into()),
        ],
        Target::Notion(EquivNotion::Uniform) => m
            .here
            .supersets_within(m.there)
            .map(|s| (facts_of(s.to_atoms(signature)), format!("facts {}", s.display(signature))))
            .collect(),
        Target::Hyper(ab) => {
            let plus = AtomSet::from_atoms(signature, &ab.a_plus).unwrap_or_default();
            let minus = AtomSet::from_atoms(signature, &ab.a_minus).unwrap_or_default();
            let y_plus = m.there.intersection(plus);
            let x_plus = m.here.intersection(plus);
            let from = m.there.intersection(minus).difference(m.here.intersection(minus)).to_atoms(signature);
            let to = y_plus.difference(x_plus).to_atoms(signature);
            vec![
                (facts_of(y_plus.to_atoms(signature)), "facts Y|A+".into()),
                (
                    facts_and_links(x_plus.to_atoms(signature), &from, &to),
                    "X|A+ plus implications from (Y \\ X)|A- into (Y \\ X)|A+".into(),
                ),
            ]
        }
    }
}

/// A distinguishing context built from a decision witness, checked against
/// answer sets. Falls back to searching the oracle pool.
pub fn witness_context(
    first: &Theory,
    second: &Theory,
    target: &Target,
    verdict: &crate::equiv::Verdict,
    config: &OracleConfig,
) -> Result<Option<Counterexample>> {
    let Some(m) = verdict.witness else { return Ok(None) };
    if let Target::Notion(EquivNotion::Classical) = target {
        return classical_counterexample(first, second);
    }
    for (index, (theory, provenance)) in witness_candidates(m, &verdict.signature, target).into_iter().enumerate() {
        if let Some((answer_set, in_first)) = differing_answer_set(first, second, &theory)? {
            return Ok(Some(Counterexample {
                index,
                provenance: format!("{} = {}", provenance, ContextPool::facts_text(&theory)),
                context: theory,
                answer_set,
                in_first,
            }));
        }
    }
    let pool = match target {
        Target::Notion(notion) => notion_pool(*notion, &verdict.signature, config),
        Target::Hyper(ab) => hyper_contexts(ab, config.budget),
    };
    match pool {
        Ok(pool) => search_counterexample(first, second, &pool),
        Err(e) if e.is_bound() => Ok(None),
        Err(e) => Err(e),
    }
}

/// Pool sizes used by the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OracleConfig {
    /// Fresh atoms added to uniform pools.
    pub k_extra: usize,
    /// Maximum number of formulas per hyper context.
    pub budget: usize,
    /// Maximum number of formulas per strong context; all when `None`.
    pub strong_budget: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            k_extra: 1,
            budget: 4,
            strong_budget: None,
        }
    }
}

/// The pool the oracle uses for `notion` over `signature`.
pub fn notion_pool(notion: EquivNotion, signature: &Signature, config: &OracleConfig) -> Result<ContextPool> {
    match notion {
        EquivNotion::Classical | EquivNotion::AnswerSet => Ok(ContextPool::empty_context()),
        EquivNotion::Uniform => uniform_contexts(signature, config.k_extra),
        EquivNotion::Strong => strong_contexts(signature, config.strong_budget, config.k_extra),
    }
}

/// Searches for a context refuting `notion`-equivalence. Classical
/// equivalence is checked on classical models directly.
pub fn oracle_equivalence(
    first: &Theory,
    second: &Theory,
    notion: EquivNotion,
    config: &OracleConfig,
) -> Result<Option<Counterexample>> {
    if notion == EquivNotion::Classical {
        return classical_counterexample(first, second);
    }
    let signature = joint_signature(first, second, &[])?;
    search_counterexample(first, second, &notion_pool(notion, &signature, config)?)
}

/// Settings of a validation run.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ValidationConfig {
    pub pairs: usize,
    pub atoms: usize,
    pub seed: u64,
    pub max_formulas: usize,
    pub oracle: OracleConfig,
    pub notions: Vec<EquivNotion>,
    /// Also check relativized hyperequivalence with random alphabets.
    pub hyper: bool,
    /// Add factual formulas over `A⁺` to the hyper pool and require the
    /// verdicts to stay the same.
    pub extended: bool,
    /// Invert every decision, to check that the harness notices.
    pub mutant: bool,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            pairs: 200,
            atoms: 3,
            seed: 0,
            max_formulas: 3,
            oracle: OracleConfig::default(),
            notions: EquivNotion::ALL.to_vec(),
            hyper: true,
            extended: true,
            mutant: false,
        }
    }
}

/// Verdict counts for one notion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Tally {
    pub notion: String,
    pub equivalent: usize,
    pub not_equivalent: usize,
    /// "Not equivalent" verdicts for which the oracle found a context.
    pub refuted: usize,
    pub discrepancies: usize,
}

/// One disagreement between decision procedures and the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Discrepancy {
    pub pair: usize,
    pub check: String,
    pub detail: String,
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ValidationReport {
    pub config: ValidationConfig,
    pub tallies: Vec<Tally>,
    pub hstruct_checks: usize,
    pub extended_checks: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn tally(&self, notion: &str) -> Option<&Tally> {
        self.tallies.iter().find(|t| t.notion == notion)
    }
}

#[derive(Clone, Debug)]
struct Outcome {
    notion: String,
    equivalent: bool,
    refuted: bool,
    problem: Option<(String, String)>,
}

struct PairCase {
    first: Theory,
    second: Theory,
    alphabets: Alphabets,
}

fn check_notion(case: &PairCase, notion: EquivNotion, config: &ValidationConfig) -> Result<Outcome> {
    let signature = joint_signature(&case.first, &case.second, &[])?;
    let c = decide_with_family(&case.first, &case.second, notion, Family::Countermodels, &signature)?;
    let e = decide_with_family(&case.first, &case.second, notion, Family::EquivalenceInterpretations, &signature)?;
    let decided = e.equivalent != config.mutant;
    let found = oracle_equivalence(&case.first, &case.second, notion, &config.oracle)?;
    let problem = if c.equivalent != e.equivalent {
        Some(("families".into(), format!("C says {}, E says {}", c.equivalent, e.equivalent)))
    } else if decided && found.is_some() {
        let cx = found.as_ref().expect("checked");
        Some(("soundness".into(), format!("decided equivalent but {cx}")))
    } else if !decided && found.is_none() {
        let witness = e.witness_text().unwrap_or_else(|| "none".into());
        Some(("refutation".into(), format!("decided not equivalent (witness {witness}) but no context found")))
    } else {
        None
    };
    Ok(Outcome {
        notion: notion.name().into(),
        equivalent: decided,
        refuted: !decided && found.is_some(),
        problem,
    })
}

/// The hyper outcome, the number of extended-context checks, and an
/// extended-context problem if one was found.
type HyperCheck = (Outcome, usize, Option<(String, String)>);

fn check_hyper(case: &PairCase, config: &ValidationConfig) -> Result<HyperCheck> {
    let ab = &case.alphabets;
    let signature = hyper_signature(&case.first, &case.second, ab)?;
    let v = decide_hyper_over(&case.first, &case.second, ab, &signature)?;
    let decided = v.equivalent != config.mutant;
    let found = search_counterexample(&case.first, &case.second, &hyper_contexts(ab, config.oracle.budget)?)?;
    let problem = match (decided, &found) {
        (true, Some(cx)) => Some(("soundness".into(), format!("decided equivalent but {cx}"))),
        (false, None) => Some((
            "refutation".into(),
            format!(
                "decided not equivalent (witness {}) but no context within budget {}",
                v.witness_text().unwrap_or_default(),
                config.oracle.budget
            ),
        )),
        _ => None,
    };
    let mut extended_checks = 0;
    let mut extended_problem = None;
    if config.extended {
        extended_checks = 1;
        let pool = extended_hyper_contexts(ab, config.oracle.budget, &factual_generators(ab))?;
        let extended = search_counterexample(&case.first, &case.second, &pool)?;
        if extended.is_some() != found.is_some() {
            extended_problem = Some((
                "extended contexts".into(),
                format!("factual formulas over A+ changed the oracle verdict: {}", extended.map(|c| c.to_string()).unwrap_or_default()),
            ));
        }
    }
    let outcome = Outcome {
        notion: "hyper".into(),
        equivalent: decided,
        refuted: !decided && found.is_some(),
        problem,
    };
    Ok((outcome, extended_checks, extended_problem))
}

/// Checks the collapses `E^∅_∅ = E_a`, `E^L_L = E_s`, `E^L_∅ = E_u`.
pub fn check_hstruct(theory: &Theory, signature: &Signature) -> Result<Option<String>> {
    use crate::equiv::characteristic_set;
    let full: Vec<Atom> = signature.atoms().to_vec();
    let cases = [
        (Alphabets::default(), EquivNotion::AnswerSet, AtomSet::EMPTY),
        (Alphabets::new(full.clone(), full.clone()), EquivNotion::Strong, AtomSet::full(signature.len())),
        (Alphabets::new(full, Vec::<Atom>::new()), EquivNotion::Uniform, AtomSet::full(signature.len())),
    ];
    for (ab, notion, keep) in cases {
        let h = hyper_interpretations(theory, signature, &ab)?;
        let e = characteristic_set(theory, signature, notion, Family::EquivalenceInterpretations)?;
        if !h.members().same_members(&restrict_here(&e, keep)) {
            return Ok(Some(format!("hyper collapse differs from the {notion} set")));
        }
    }
    Ok(None)
}

/// Runs the decision procedures and the oracle on a seeded corpus of theory
/// pairs and collects every disagreement.
pub fn validate(config: &ValidationConfig) -> Result<ValidationReport> {
    let signature = standard_signature(config.atoms);
    let mut corpus = Corpus::new(config.seed);
    let cases: Vec<PairCase> = (0..config.pairs)
        .map(|_| {
            let (first, second, _) = corpus.theory_pair(&signature, config.max_formulas);
            let alphabets = corpus.alphabets(&signature);
            PairCase { first, second, alphabets }
        })
        .collect();

    type PairResult = (Vec<Outcome>, usize, usize, Vec<(String, String)>);
    let results: Vec<PairResult> = cases
        .par_iter()
        .map(|case| -> Result<PairResult> {
            let mut outcomes = Vec::new();
            let mut problems = Vec::new();
            for &notion in &config.notions {
                outcomes.push(check_notion(case, notion, config)?);
            }
            let mut extended = 0;
            if config.hyper {
                let (o, n, p) = check_hyper(case, config)?;
                outcomes.push(o);
                extended = n;
                problems.extend(p);
            }
            let mut hstruct = 0;
            for theory in [&case.first, &case.second] {
                hstruct += 1;
                if let Some(p) = check_hstruct(theory, &signature)? {
                    problems.push(("hstruct".into(), p));
                }
            }
            Ok((outcomes, hstruct, extended, problems))
        })
        .collect::<Result<_>>()?;

    let mut tallies: Vec<Tally> = Vec::new();
    let mut discrepancies = Vec::new();
    let mut hstruct_checks = 0;
    let mut extended_checks = 0;
    for (pair, (outcomes, hstruct, extended, problems)) in results.into_iter().enumerate() {
        let case = &cases[pair];
        let mut record = |check: String, detail: String| {
            discrepancies.push(Discrepancy {
                pair,
                check,
                detail,
                first: case.first.to_string(),
                second: case.second.to_string(),
            })
        };
        for o in outcomes {
            let tally = match tallies.iter_mut().position(|t| t.notion == o.notion) {
                Some(i) => &mut tallies[i],
                None => {
                    tallies.push(Tally {
                        notion: o.notion.clone(),
                        ..Tally::default()
                    });
                    tallies.last_mut().expect("just pushed")
                }
            };
            if o.equivalent {
                tally.equivalent += 1;
            } else {
                tally.not_equivalent += 1;
            }
            tally.refuted += o.refuted as usize;
            if let Some((check, detail)) = o.problem {
                tally.discrepancies += 1;
                record(format!("{} {check}", o.notion), detail);
            }
        }
        for (check, detail) in problems {
            record(check, detail);
        }
        hstruct_checks += hstruct;
        extended_checks += extended;
    }
    Ok(ValidationReport {
        config: config.clone(),
        tallies,
        hstruct_checks,
        extended_checks,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_theory};

    fn theory(text: &str) -> Theory {
        parse_theory(text).unwrap()
    }

    fn shown(pool: &ContextPool) -> Vec<String> {
        pool.contexts.iter().map(|c| ContextPool::facts_text(&c.theory)).collect()
    }

    #[test]
    fn uniform_pool_sizes() {
        let a = Signature::new(["a"]).unwrap();
        assert_eq!(shown(&uniform_contexts(&a, 0).unwrap()), ["{}", "{a}"]);
        assert_eq!(uniform_contexts(&a, 1).unwrap().len(), 4);
        assert_eq!(uniform_contexts(&Signature::new(["a", "b"]).unwrap(), 0).unwrap().len(), 4);
    }

    #[test]
    fn hyper_pool_examples() {
        assert_eq!(shown(&hyper_contexts(&Alphabets::new(["a"], Vec::<&str>::new()), 1).unwrap()), ["{}", "{a}"]);
        assert_eq!(shown(&hyper_contexts(&Alphabets::new(["b"], ["a"]), 1).unwrap()), ["{}", "{b}", "{a -> b}"]);
        let both = hyper_contexts(&Alphabets::new(["a", "b"], ["a", "b"]), 4).unwrap();
        let wanted = theory("a -> b. b -> a.");
        assert!(both.contexts.iter().any(|c| c.theory.formulas() == wanted.formulas()));
    }

    #[test]
    fn combination_order() {
        assert_eq!(combinations(3, 2), vec![vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(binomial_prefix_sum(3, 2), 7);
        assert_eq!(binomial_prefix_sum(12, 4), 794);
    }

    #[test]
    fn disjunction_pair_under_contexts() {
        let disj = theory("a | b.");
        let shifted = theory("-b -> a. -a -> b.");
        let empty = Theory::new([]).unwrap();
        assert!(answer_set_equivalent_under(&disj, &shifted, &empty).unwrap());
        assert!(!answer_set_equivalent_under(&disj, &shifted, &theory("a -> b. b -> a.")).unwrap());
        assert!(answer_set_equivalent_under(&disj, &shifted, &theory("-a.")).unwrap());
    }

    #[test]
    fn strong_pool_finds_the_cycle() {
        let disj = theory("a | b.");
        let shifted = theory("-b -> a. -a -> b.");
        let pool = strong_contexts(disj.signature(), None, 0).unwrap();
        let cx = search_counterexample(&disj, &shifted, &pool).unwrap().unwrap();
        assert_eq!(cx.context.formulas(), theory("a -> b. b -> a.").formulas());
        assert_eq!(cx.answer_set, ["a", "b"]);
        assert!(cx.in_first);
        assert!(search_counterexample(&disj, &disj, &pool).unwrap().is_none());
    }

    #[test]
    fn uniform_pool_separates_truncated_example() {
        let g1 = theory("a1. a2. a3.");
        let g2 = theory("-a1 -> a1. -a2 -> a2. -a3 -> a3. a2 -> a1. a3 -> a2.");
        let cx = oracle_equivalence(&g1, &g2, EquivNotion::Uniform, &OracleConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(cx.answer_set, ["a1", "a2", "a3"]);
        assert!(cx.in_first);
    }

    #[test]
    fn witness_contexts_from_the_witness() {
        use crate::equiv::decide_equivalence;
        use crate::hyper::decide_hyper;
        let disj = theory("a | b.");
        let shifted = theory("-b -> a. -a -> b.");
        let config = OracleConfig::default();
        let v = decide_equivalence(&disj, &shifted, EquivNotion::Strong).unwrap();
        let cx = witness_context(&disj, &shifted, &Target::Notion(EquivNotion::Strong), &v, &config)
            .unwrap()
            .unwrap();
        assert_eq!(cx.context.formulas(), theory("a -> b. b -> a.").formulas());
        assert_eq!(cx.answer_set, ["a", "b"]);

        let ab = Alphabets::new(["a", "b"], ["a", "b"]);
        let v = decide_hyper(&disj, &shifted, &ab).unwrap();
        let cx = witness_context(&disj, &shifted, &Target::Hyper(ab), &v, &config).unwrap().unwrap();
        assert_eq!(cx.context.formulas(), theory("a -> b. b -> a.").formulas());

        let g1 = theory("a1. a2. a3.");
        let g2 = theory("-a1 -> a1. -a2 -> a2. -a3 -> a3. a2 -> a1. a3 -> a2.");
        let v = decide_equivalence(&g1, &g2, EquivNotion::Uniform).unwrap();
        let cx = witness_context(&g1, &g2, &Target::Notion(EquivNotion::Uniform), &v, &config)
            .unwrap()
            .unwrap();
        assert_eq!(cx.answer_set, ["a1", "a2", "a3"]);
    }

    #[test]
    fn classical_oracle() {
        let f = |t| Theory::new([parse_formula(t).unwrap()]).unwrap();
        assert!(classical_counterexample(&f("--a -> a"), &f("a | -a")).unwrap().is_none());
        let cx = classical_counterexample(&f("a"), &f("--a")).unwrap();
        assert!(cx.is_none());
        assert!(classical_counterexample(&f("a"), &f("a | b")).unwrap().is_some());
    }

    #[test]
    fn factual_generators_are_factual_over_plus() {
        let ab = Alphabets::new(["a", "b"], ["c"]);
        for f in factual_generators(&ab) {
            assert!(crate::syntax::is_factual(&f));
            assert!(f.atoms().iter().all(|a| ab.a_plus.contains(a)));
        }
    }

    #[test]
    fn small_validation_is_clean_and_mutant_is_caught() {
        let config = ValidationConfig {
            pairs: 12,
            seed: 3,
            ..ValidationConfig::default()
        };
        let report = validate(&config).unwrap();
        assert!(report.is_clean(), "{:#?}", report.discrepancies);
        let mutant = validate(&ValidationConfig { mutant: true, ..config }).unwrap();
        assert!(!mutant.is_clean());
    }
}
