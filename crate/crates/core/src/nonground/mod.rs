//! Function-free programs with variables.
//!
//! A program is grounded over its Herbrand universe, optionally extended by
//! fresh constants `u1`, `u2`, … interpreted by identity. Uniform
//! equivalence is decided per universe by comparing total HT-models and
//! maximal non-total HT-models of the two groundings. Only finitely many
//! universes are searched, so an "equivalent" verdict holds for the searched
//! range only.

mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::equiv::{Side, Verdict};
use crate::error::{Error, Result};
use crate::semantics::{answer_sets_program, check_bound, AtomSet, HtInterp, InterpretationSet, ModelTable, SetTag};
use crate::syntax::{Atom, Program, Rule, Signature, Theory};

pub use parse::parse_ng_program;

/// Largest number of rule instances a grounding may produce.
pub const MAX_INSTANCES: usize = 1 << 20;

/// The constant used when a program mentions none.
pub const DEFAULT_CONSTANT: &str = "c";

/// Note attached to every non-ground verdict.
pub const SEARCH_NOTE: &str =
    "universes beyond the searched range are not examined; an equivalent verdict is relative to that range";

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Constant(Arc<str>),
    Variable(Arc<str>),
}

impl Term {
    pub fn constant(name: &str) -> Term {
        Term::Constant(Arc::from(name))
    }

    pub fn variable(name: &str) -> Term {
        Term::Variable(Arc::from(name))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Constant(c) | Term::Variable(c) => f.write_str(c),
        }
    }
}

/// `p(t1, …, tn)`, or `p` when `n = 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NGAtom {
    pub predicate: Arc<str>,
    pub args: Vec<Term>,
}

impl NGAtom {
    pub fn new(predicate: impl AsRef<str>, args: Vec<Term>) -> NGAtom {
        NGAtom {
            predicate: Arc::from(predicate.as_ref()),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    fn variables(&self) -> impl Iterator<Item = &Arc<str>> {
        self.args.iter().filter_map(|t| match t {
            Term::Variable(v) => Some(v),
            Term::Constant(_) => None,
        })
    }

    fn ground(&self, binding: &BTreeMap<Arc<str>, Arc<str>>) -> Atom {
        Atom::new(ground_name(
            &self.predicate,
            self.args.iter().map(|t| match t {
                Term::Constant(c) => c.as_ref(),
                Term::Variable(v) => binding[v].as_ref(),
            }),
        ))
    }
}

fn ground_name<'a>(predicate: &str, args: impl Iterator<Item = &'a str>) -> String {
    let args: Vec<&str> = args.collect();
    if args.is_empty() {
        predicate.to_owned()
    } else {
        format!("{predicate}({})", args.join(","))
    }
}

impl fmt::Display for NGAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(ToString::to_string).collect();
        if args.is_empty() {
            f.write_str(&self.predicate)
        } else {
            write!(f, "{}({})", self.predicate, args.join(","))
        }
    }
}

/// A disjunctive rule over non-ground atoms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct NGRule {
    pub head_pos: BTreeSet<NGAtom>,
    pub head_neg: BTreeSet<NGAtom>,
    pub body_pos: BTreeSet<NGAtom>,
    pub body_neg: BTreeSet<NGAtom>,
}

impl NGRule {
    /// `None` when all four sides are empty.
    pub fn new(head_pos: Vec<NGAtom>, head_neg: Vec<NGAtom>, body_pos: Vec<NGAtom>, body_neg: Vec<NGAtom>) -> Option<NGRule> {
        let rule = NGRule {
            head_pos: head_pos.into_iter().collect(),
            head_neg: head_neg.into_iter().collect(),
            body_pos: body_pos.into_iter().collect(),
            body_neg: body_neg.into_iter().collect(),
        };
        (rule != NGRule::default()).then_some(rule)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &NGAtom> {
        self.head_pos
            .iter()
            .chain(&self.head_neg)
            .chain(&self.body_pos)
            .chain(&self.body_neg)
    }

    pub fn variables(&self) -> BTreeSet<Arc<str>> {
        self.atoms().flat_map(|a| a.variables().cloned()).collect()
    }

    /// Every variable occurs in the positive body.
    pub fn is_safe(&self) -> bool {
        let bound: BTreeSet<&Arc<str>> = self.body_pos.iter().flat_map(NGAtom::variables).collect();
        self.head_pos
            .iter()
            .chain(&self.head_neg)
            .chain(&self.body_neg)
            .flat_map(NGAtom::variables)
            .all(|v| bound.contains(v))
    }

    fn instantiate(&self, binding: &BTreeMap<Arc<str>, Arc<str>>) -> Rule {
        let side = |atoms: &BTreeSet<NGAtom>| atoms.iter().map(|a| a.ground(binding)).collect::<Vec<_>>();
        Rule::new(side(&self.head_pos), side(&self.head_neg), side(&self.body_pos), side(&self.body_neg))
            .expect("instances of nonempty rules are nonempty")
    }
}

impl fmt::Display for NGRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lits = |pos: &BTreeSet<NGAtom>, neg: &BTreeSet<NGAtom>| {
            pos.iter()
                .map(ToString::to_string)
                .chain(neg.iter().map(|a| format!("not {a}")))
                .collect::<Vec<_>>()
        };
        let head = lits(&self.head_pos, &self.head_neg).join(" | ");
        let body = lits(&self.body_pos, &self.body_neg).join(", ");
        match (head.is_empty(), body.is_empty()) {
            (false, true) => write!(f, "{head}."),
            (true, _) => write!(f, ":- {body}."),
            (false, false) => write!(f, "{head} :- {body}."),
        }
    }
}

/// A finite set of rules with consistent predicate arities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NGProgram {
    rules: Vec<NGRule>,
    arities: BTreeMap<String, usize>,
    constants: BTreeSet<String>,
}

impl NGProgram {
    pub fn new(rules: impl IntoIterator<Item = NGRule>) -> Result<NGProgram> {
        let mut seen = BTreeSet::new();
        let rules: Vec<NGRule> = rules.into_iter().filter(|r| seen.insert(r.clone())).collect();
        let mut arities = BTreeMap::new();
        let mut constants = BTreeSet::new();
        for atom in rules.iter().flat_map(NGRule::atoms) {
            record_arity(&mut arities, &atom.predicate, atom.arity())?;
            for t in &atom.args {
                if let Term::Constant(c) = t {
                    constants.insert(c.to_string());
                }
            }
        }
        Ok(NGProgram { rules, arities, constants })
    }

    pub fn rules(&self) -> &[NGRule] {
        &self.rules
    }

    pub fn arities(&self) -> &BTreeMap<String, usize> {
        &self.arities
    }

    pub fn constants(&self) -> &BTreeSet<String> {
        &self.constants
    }

    pub fn is_safe(&self) -> bool {
        self.rules.iter().all(NGRule::is_safe)
    }

    /// Both rule sets together; fails on conflicting arities.
    pub fn union(&self, other: &NGProgram) -> Result<NGProgram> {
        NGProgram::new(self.rules.iter().chain(&other.rules).cloned())
    }
}

impl fmt::Display for NGProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

fn record_arity(arities: &mut BTreeMap<String, usize>, predicate: &str, arity: usize) -> Result<()> {
    match arities.get(predicate) {
        Some(&first) if first != arity => Err(Error::ArityMismatch {
            predicate: predicate.to_owned(),
            first,
            second: arity,
        }),
        Some(_) => Ok(()),
        None => {
            arities.insert(predicate.to_owned(), arity);
            Ok(())
        }
    }
}

/// A finite set of constants: the Herbrand constants of a program followed
/// by fresh constants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Universe {
    pub herbrand: Vec<String>,
    pub fresh: Vec<String>,
}

impl Universe {
    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.herbrand.iter().chain(&self.fresh).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.herbrand.len() + self.fresh.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// This universe with `count` fresh constants `u1`, `u2`, … that do not
    /// clash with the Herbrand constants.
    pub fn with_fresh(&self, count: usize) -> Universe {
        let mut fresh = Vec::with_capacity(count);
        let mut i = 1;
        while fresh.len() < count {
            let mut name = format!("u{i}");
            while self.herbrand.contains(&name) {
                name.push('_');
            }
            fresh.push(name);
            i += 1;
        }
        Universe {
            herbrand: self.herbrand.clone(),
            fresh,
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.constants().map(str::to_owned).collect()
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(","))
    }
}

/// The constants of `program`, or the single constant `c` if it has none.
pub fn herbrand_universe(program: &NGProgram) -> Universe {
    let herbrand = if program.constants.is_empty() {
        vec![DEFAULT_CONSTANT.to_owned()]
    } else {
        program.constants.iter().cloned().collect()
    };
    Universe { herbrand, fresh: Vec::new() }
}

/// A grounding together with the universe it was built over.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroundProgram {
    pub program: Program,
    pub universe: Universe,
}

/// Every ground atom `p(c⃗)` of the given predicates over `universe`.
pub fn ground_base(arities: &BTreeMap<String, usize>, universe: &Universe) -> Result<Signature> {
    let constants: Vec<&str> = universe.constants().collect();
    let mut size: usize = 0;
    for &arity in arities.values() {
        size = size.saturating_add(constants.len().saturating_pow(arity as u32));
    }
    check_bound("ground atom base", size)?;
    let mut atoms = Vec::with_capacity(size);
    for (predicate, &arity) in arities {
        for tuple in tuples(&constants, arity) {
            atoms.push(Atom::new(ground_name(predicate, tuple.into_iter())));
        }
    }
    Signature::new(atoms)
}

fn tuples<'a>(constants: &[&'a str], arity: usize) -> Vec<Vec<&'a str>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                constants.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(*c);
                    next
                })
            })
            .collect();
    }
    out
}

/// Instantiates every rule with every substitution of `universe`'s
/// constants. The signature is the full ground base of the program's
/// predicates.
pub fn ground(program: &NGProgram, universe: &Universe) -> Result<GroundProgram> {
    ground_over(program, universe, program.arities())
}

/// As [`ground`], with the base built from `arities`, which must cover the
/// program's predicates.
pub fn ground_over(program: &NGProgram, universe: &Universe, arities: &BTreeMap<String, usize>) -> Result<GroundProgram> {
    let base = ground_base(arities, universe)?;
    let constants: Vec<Arc<str>> = universe.constants().map(Arc::from).collect();
    let mut rules = Vec::new();
    for rule in &program.rules {
        let vars: Vec<Arc<str>> = rule.variables().into_iter().collect();
        let count = constants.len().saturating_pow(vars.len() as u32);
        if rules.len().saturating_add(count) > MAX_INSTANCES {
            return Err(Error::BoundExceeded {
                what: "grounding",
                requested: rules.len().saturating_add(count),
                limit: MAX_INSTANCES,
            });
        }
        let names: Vec<&str> = constants.iter().map(|c| c.as_ref()).collect();
        for tuple in tuples(&names, vars.len()) {
            let binding: BTreeMap<Arc<str>, Arc<str>> =
                vars.iter().cloned().zip(tuple.into_iter().map(Arc::from)).collect();
            rules.push(rule.instantiate(&binding));
        }
    }
    Ok(GroundProgram {
        program: Program::with_extra_atoms(rules, base.atoms().iter().cloned())?,
        universe: universe.clone(),
    })
}

/// Answer sets of the grounding over the Herbrand universe, as sorted atom
/// names.
pub fn ordinary_answer_sets(program: &NGProgram) -> Result<Vec<Vec<String>>> {
    let g = ground(program, &herbrand_universe(program))?;
    Ok(answer_sets_program(&g.program, g.program.signature())?
        .into_iter()
        .map(|s| s.names(g.program.signature()))
        .collect())
}

/// An answer set over a particular universe.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpenAnswerSet {
    pub universe: Universe,
    pub atoms: Vec<String>,
}

/// Answer sets over `ℋ ∪ {u1..uj}` for every `0 ≤ j ≤ k`.
pub fn open_answer_sets(program: &NGProgram, k: usize) -> Result<Vec<OpenAnswerSet>> {
    let h = herbrand_universe(program);
    let mut out = Vec::new();
    for j in 0..=k {
        let universe = h.with_fresh(j);
        let g = ground(program, &universe)?;
        for s in answer_sets_program(&g.program, g.program.signature())? {
            out.push(OpenAnswerSet {
                universe: universe.clone(),
                atoms: s.names(g.program.signature()),
            });
        }
    }
    Ok(out)
}

/// Total HT-models and maximal non-total HT-models of `theory`.
pub fn ue_models(theory: &Theory, signature: &Signature) -> Result<InterpretationSet> {
    let table = ModelTable::build(theory, signature)?;
    Ok(table.collect(SetTag::Plain, |m| {
        if m.is_total() {
            return table.is_model(m);
        }
        table.there_model(m.there)
            && table.is_model(m)
            && m
                .here
                .supersets_within(m.there)
                .filter(|&x| x != m.here && x != m.there)
                .all(|x| !table.is_model(HtInterp::new(x, m.there)))
    }))
}

/// Compares the total and maximal non-total HT-models of two ground
/// programs over `signature`.
pub fn decide_ue(first: &Program, second: &Program, signature: &Signature) -> Result<Verdict> {
    let t1 = first.to_theory().over(signature)?;
    let t2 = second.to_theory().over(signature)?;
    Ok(Verdict::compare(&ue_models(&t1, signature)?, &ue_models(&t2, signature)?))
}

/// Where a non-ground comparison failed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NgFailure {
    pub universe: Universe,
    pub verdict: Verdict,
    /// Ground facts on which the answer sets of the two groundings differ.
    pub context: Option<Vec<String>>,
}

/// Outcome of [`decide_uniform_nonground`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NgVerdict {
    pub equivalent: bool,
    /// Universes compared, in order; the last one failed if not equivalent.
    pub universes: Vec<Universe>,
    pub failure: Option<NgFailure>,
}

impl NgVerdict {
    pub fn witness_side(&self) -> Option<Side> {
        self.failure.as_ref().and_then(|f| f.verdict.witness_side)
    }
}

impl fmt::Display for NgVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let searched: Vec<String> = self.universes.iter().map(ToString::to_string).collect();
        match &self.failure {
            None => write!(f, "equivalent over universes {}", searched.join(" ")),
            Some(failure) => {
                write!(f, "not equivalent over universe {}", failure.universe)?;
                if let (Some(w), Some(side)) = (failure.verdict.witness_text(), failure.verdict.witness_side) {
                    write!(f, ": {w} is a UE-model of the {} program only", side.name())?;
                }
                if let Some(ctx) = &failure.context {
                    write!(f, "; context {{{}}} distinguishes", ctx.join(", "))?;
                }
                Ok(())
            }
        }
    }
}

/// Facts over subsets of `there` (ascending) until the answer sets of the
/// two groundings differ.
fn distinguishing_facts(first: &Program, second: &Program, signature: &Signature, there: AtomSet) -> Result<Option<Vec<String>>> {
    check_bound("context search", there.len())?;
    for facts in there.subsets() {
        let atoms = facts.to_atoms(signature);
        let extend = |p: &Program| {
            let fact_rules = atoms.iter().map(|a| Rule::new([a.clone()], [], [], []).expect("nonempty"));
            Program::with_extra_atoms(p.rules().iter().cloned().chain(fact_rules), signature.atoms().iter().cloned())
        };
        let a1 = answer_sets_program(&extend(first)?, signature)?;
        let a2 = answer_sets_program(&extend(second)?, signature)?;
        if a1 != a2 {
            return Ok(Some(facts.names(signature)));
        }
    }
    Ok(None)
}

/// Uniform equivalence over the universes `ℋ ∪ {u1..uj}`, `0 ≤ j ≤ k`,
/// where `ℋ` is the Herbrand universe of both programs together.
pub fn decide_uniform_nonground(first: &NGProgram, second: &NGProgram, k: usize) -> Result<NgVerdict> {
    let joint = first.union(second)?;
    let h = herbrand_universe(&joint);
    let mut universes = Vec::new();
    for j in 0..=k {
        let universe = h.with_fresh(j);
        universes.push(universe.clone());
        let g1 = ground_over(first, &universe, joint.arities())?;
        let g2 = ground_over(second, &universe, joint.arities())?;
        let signature = ground_base(joint.arities(), &universe)?;
        let verdict = decide_ue(&g1.program, &g2.program, &signature)?;
        if !verdict.equivalent {
            let there = verdict.witness.expect("inequivalent verdicts carry a witness").there;
            let context = distinguishing_facts(&g1.program, &g2.program, &signature, there)?;
            return Ok(NgVerdict {
                equivalent: false,
                universes,
                failure: Some(NgFailure { universe, verdict, context }),
            });
        }
    }
    Ok(NgVerdict {
        equivalent: true,
        universes,
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::{decide_equivalence_over, EquivNotion};

    fn program(text: &str) -> NGProgram {
        parse_ng_program(text).unwrap()
    }

    fn rules(p: &Program) -> Vec<String> {
        p.rules().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn safety() {
        assert!(program("p(X) :- q(X).").is_safe());
        assert!(!program("p(X).").is_safe());
        assert!(!program("p(a) :- not q(X).").is_safe());
    }

    #[test]
    fn herbrand_universes() {
        assert_eq!(herbrand_universe(&program("q(a). p(X) :- q(X).")).names(), ["a"]);
        assert_eq!(herbrand_universe(&program("p(X) :- q(X).")).names(), ["c"]);
        assert_eq!(herbrand_universe(&program("p(a,b).")).names(), ["a", "b"]);
    }

    #[test]
    fn grounding() {
        let u = Universe {
            herbrand: vec!["a".into(), "b".into()],
            fresh: vec![],
        };
        let g = ground(&program("p(X) :- q(X)."), &u).unwrap();
        assert_eq!(rules(&g.program), ["p(a) :- q(a).", "p(b) :- q(b)."]);
        let g = ground(&program("p(a). r :- p(b)."), &u).unwrap();
        assert_eq!(rules(&g.program), ["p(a).", "r :- p(b)."]);
        let u3 = Universe {
            herbrand: vec!["a".into(), "b".into(), "c".into()],
            fresh: vec![],
        };
        assert_eq!(ground(&program("r(X,Y) :- s(X), s(Y).").clone(), &u3).unwrap().program.rules().len(), 9);
    }

    #[test]
    fn answer_sets_of_ground_programs() {
        assert_eq!(ordinary_answer_sets(&program("q(a). p(X) :- q(X).")).unwrap(), [vec!["p(a)", "q(a)"]]);
        assert_eq!(ordinary_answer_sets(&program("p(X).")).unwrap(), [vec!["p(c)"]]);
        let open = open_answer_sets(&program("p(X)."), 1).unwrap();
        assert_eq!(open.len(), 2);
        assert_eq!(open[1].universe.names(), ["c", "u1"]);
        assert_eq!(open[1].atoms, ["p(c)", "p(u1)"]);
    }

    #[test]
    fn fresh_constants_avoid_clashes() {
        let u = herbrand_universe(&program("p(u1)."));
        assert_eq!(u.with_fresh(2).fresh, ["u1_", "u2"]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_ng_program("p(f(X)) :- q(X)."), Err(Error::Unsupported { .. })));
        assert!(matches!(parse_ng_program("p(X) :- q(X), X = a."), Err(Error::Unsupported { .. })));
        assert!(matches!(parse_ng_program("p(X) :- q(X, Y). q(a)."), Err(Error::ArityMismatch { .. })));
        assert_eq!(program("p(X) :- q(X), not r(X).").rules()[0].to_string(), "p(X) :- q(X), not r(X).");
    }

    #[test]
    fn fresh_constant_separates_programs() {
        let p1 = program("q(a). p(X) :- q(X).");
        let p2 = program("q(a). p(a).");
        let v0 = decide_uniform_nonground(&p1, &p2, 0).unwrap();
        assert!(v0.equivalent);
        assert_eq!(v0.universes.len(), 1);
        let v1 = decide_uniform_nonground(&p1, &p2, 1).unwrap();
        assert!(!v1.equivalent);
        let failure = v1.failure.unwrap();
        assert_eq!(failure.universe.names(), ["a", "u1"]);
        assert_eq!(failure.context.unwrap(), ["q(u1)"]);
    }

    #[test]
    fn identical_programs() {
        let p = program("p(X) :- q(X), not r(X). r(a) | q(b).");
        for k in 0..3 {
            assert!(decide_uniform_nonground(&p, &p, k).unwrap().equivalent);
        }
    }

    #[test]
    fn ue_models_match_uniform_sets_on_example() {
        let p1 = crate::syntax::parse_program("a | b.").unwrap();
        let p2 = crate::syntax::parse_program("a :- not b. b :- not a.").unwrap();
        let sig = p1.signature().clone();
        let ue = decide_ue(&p1, &p2, &sig).unwrap();
        let eu = decide_equivalence_over(&p1.to_theory(), &p2.to_theory(), EquivNotion::Uniform, &sig).unwrap();
        assert!(ue.equivalent);
        assert!(eu.equivalent);
    }
}
