//! Formulas, theories, disjunctive rules and programs over a finite signature.
//!
//! Formulas are built from four connectives (`∧`, `∨`, `→`, `⊥`) over atoms.
//! Negation, truth and the biconditional are abbreviations and never appear as
//! node kinds: `¬φ` is `φ → ⊥`, `⊤` is `⊥ → ⊥` and `φ ↔ ψ` is
//! `(φ → ψ) ∧ (ψ → φ)`.

mod analysis;
pub(crate) mod lexer;
mod parse;
mod print;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use analysis::{atom_polarities, is_apan_theory, is_factual, Polarity, PolarityReport};
pub use parse::{parse_formula, parse_program, parse_theory};

/// Maximum number of atoms a [`Signature`] can hold; interpretations are
/// stored as 64-bit masks over the signature order.
pub const MAX_SIGNATURE: usize = 64;

/// A propositional atom, compared by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: impl AsRef<str>) -> Atom {
        let name = name.as_ref();
        assert!(!name.is_empty(), "atom names must be nonempty");
        Atom(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Atom {
    fn from(name: &str) -> Atom {
        Atom::new(name)
    }
}

impl From<String> for Atom {
    fn from(name: String) -> Atom {
        Atom::new(name)
    }
}

/// A finite, totally ordered set of atoms.
///
/// Atoms are kept sorted by name, so two signatures over the same atoms are
/// identical and assign the same index to every atom. Bit `i` of an
/// [`AtomSet`](crate::AtomSet) refers to `atoms()[i]`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Signature {
    atoms: Vec<Atom>,
    index: HashMap<Atom, usize>,
}

impl Signature {
    /// Builds a signature from distinct atoms. Duplicates are an error.
    pub fn new<I>(atoms: I) -> Result<Signature>
    where
        I: IntoIterator,
        I::Item: Into<Atom>,
    {
        let mut seen = BTreeSet::new();
        for atom in atoms {
            let atom = atom.into();
            if !seen.insert(atom.clone()) {
                return Err(Error::DuplicateAtom {
                    atom: atom.name().to_owned(),
                });
            }
        }
        Signature::from_set(seen)
    }

    /// Builds a signature from a set of atoms.
    pub fn from_set(atoms: BTreeSet<Atom>) -> Result<Signature> {
        if atoms.len() > MAX_SIGNATURE {
            return Err(Error::BoundExceeded {
                what: "signature",
                requested: atoms.len(),
                limit: MAX_SIGNATURE,
            });
        }
        let atoms: Vec<Atom> = atoms.into_iter().collect();
        let index = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Ok(Signature { atoms, index })
    }

    pub fn empty() -> Signature {
        Signature::default()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.index.get(&Atom::new(name)).copied()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.index.contains_key(atom)
    }

    pub fn atom(&self, index: usize) -> &Atom {
        &self.atoms[index]
    }

    pub fn is_subset_of(&self, other: &Signature) -> bool {
        self.atoms.iter().all(|a| other.contains(a))
    }

    /// The signature containing the atoms of both.
    pub fn union(&self, other: &Signature) -> Result<Signature> {
        let set: BTreeSet<Atom> = self.atoms.iter().chain(other.atoms.iter()).cloned().collect();
        Signature::from_set(set)
    }

    /// Adds atoms, ignoring those already present.
    pub fn extended<I>(&self, extra: I) -> Result<Signature>
    where
        I: IntoIterator<Item = Atom>,
    {
        let set: BTreeSet<Atom> = self.atoms.iter().cloned().chain(extra).collect();
        Signature::from_set(set)
    }

    /// `count` atoms named `u1`, `u2`, … that do not clash with this
    /// signature (an `_` suffix is added until the name is free).
    pub fn fresh_atoms(&self, count: usize) -> Vec<Atom> {
        (1..=count)
            .map(|i| {
                let mut name = format!("u{i}");
                while self.index.contains_key(&Atom::new(&name)) {
                    name.push('_');
                }
                Atom::new(name)
            })
            .collect()
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms.iter()).finish()
    }
}

/// A propositional formula.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Bottom,
    Atom(Atom),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<Atom>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn implies(antecedent: Formula, consequent: Formula) -> Formula {
        Formula::Impl(Box::new(antecedent), Box::new(consequent))
    }

    /// `¬φ`, stored as `φ → ⊥`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula) -> Formula {
        Formula::implies(inner, Formula::Bottom)
    }

    /// `⊤`, stored as `⊥ → ⊥`.
    pub fn top() -> Formula {
        Formula::implies(Formula::Bottom, Formula::Bottom)
    }

    /// `φ ↔ ψ`, stored as `(φ → ψ) ∧ (ψ → φ)`.
    pub fn iff(lhs: Formula, rhs: Formula) -> Formula {
        Formula::and(
            Formula::implies(lhs.clone(), rhs.clone()),
            Formula::implies(rhs, lhs),
        )
    }

    /// Left-nested conjunction; `⊤` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }

    /// Left-nested disjunction; `⊥` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bottom)
    }

    /// The inner formula if this is a negation `φ → ⊥`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Impl(inner, consequent) if **consequent == Formula::Bottom => Some(inner),
            _ => None,
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Impl(a, b) if **a == Formula::Bottom && **b == Formula::Bottom)
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Bottom => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Atom(_) => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => 1 + l.size() + r.size(),
        }
    }
}

/// A finite set of formulas together with the signature it is read over.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Theory {
    formulas: Vec<Formula>,
    signature: Signature,
}

impl Theory {
    /// A theory over exactly the atoms occurring in `formulas`.
    pub fn new<I: IntoIterator<Item = Formula>>(formulas: I) -> Result<Theory> {
        Theory::with_extra_atoms(formulas, std::iter::empty())
    }

    /// A theory whose signature also contains `extra` atoms.
    pub fn with_extra_atoms<I, E>(formulas: I, extra: E) -> Result<Theory>
    where
        I: IntoIterator<Item = Formula>,
        E: IntoIterator<Item = Atom>,
    {
        let formulas = dedup(formulas);
        let mut atoms: BTreeSet<Atom> = extra.into_iter().collect();
        for f in &formulas {
            f.collect_atoms(&mut atoms);
        }
        Ok(Theory {
            formulas,
            signature: Signature::from_set(atoms)?,
        })
    }

    /// A theory over a given signature, which must cover every atom.
    pub fn with_signature<I>(formulas: I, signature: Signature) -> Result<Theory>
    where
        I: IntoIterator<Item = Formula>,
    {
        let formulas = dedup(formulas);
        for f in &formulas {
            if let Some(a) = f.atoms().into_iter().find(|a| !signature.contains(a)) {
                return Err(Error::UnknownAtom {
                    atom: a.name().to_owned(),
                });
            }
        }
        Ok(Theory {
            formulas,
            signature,
        })
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    /// `self ∪ other`, over the union of both signatures.
    pub fn union(&self, other: &Theory) -> Result<Theory> {
        let signature = self.signature.union(&other.signature)?;
        Theory::with_signature(
            self.formulas.iter().chain(other.formulas.iter()).cloned(),
            signature,
        )
    }

    /// The same formulas read over a larger signature.
    pub fn over(&self, signature: &Signature) -> Result<Theory> {
        let signature = self.signature.union(signature)?;
        Ok(Theory {
            formulas: self.formulas.clone(),
            signature,
        })
    }
}

fn dedup<I: IntoIterator<Item = Formula>>(formulas: I) -> Vec<Formula> {
    let mut seen = BTreeSet::new();
    formulas
        .into_iter()
        .filter(|f| seen.insert(f.clone()))
        .collect()
}

/// A disjunctive rule `a1 | … | ak | not ak+1 | … :- b1, …, bm, not bm+1, …`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Rule {
    pub head_pos: BTreeSet<Atom>,
    pub head_neg: BTreeSet<Atom>,
    pub body_pos: BTreeSet<Atom>,
    pub body_neg: BTreeSet<Atom>,
}

impl Rule {
    /// Fails when all four sides are empty.
    pub fn new(
        head_pos: impl IntoIterator<Item = Atom>,
        head_neg: impl IntoIterator<Item = Atom>,
        body_pos: impl IntoIterator<Item = Atom>,
        body_neg: impl IntoIterator<Item = Atom>,
    ) -> Option<Rule> {
        let rule = Rule {
            head_pos: head_pos.into_iter().collect(),
            head_neg: head_neg.into_iter().collect(),
            body_pos: body_pos.into_iter().collect(),
            body_neg: body_neg.into_iter().collect(),
        };
        (!rule.is_degenerate()).then_some(rule)
    }

    fn is_degenerate(&self) -> bool {
        self.head_pos.is_empty()
            && self.head_neg.is_empty()
            && self.body_pos.is_empty()
            && self.body_neg.is_empty()
    }

    pub fn is_fact(&self) -> bool {
        self.body_pos.is_empty() && self.body_neg.is_empty()
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.head_pos
            .iter()
            .chain(&self.head_neg)
            .chain(&self.body_pos)
            .chain(&self.body_neg)
            .cloned()
            .collect()
    }

    /// Classical satisfaction of the rule by the atom set `interpretation`.
    pub fn satisfied_by(&self, interpretation: &BTreeSet<Atom>) -> bool {
        let body = self.body_pos.is_subset(interpretation)
            && self.body_neg.is_disjoint(interpretation);
        !body
            || !self.head_pos.is_disjoint(interpretation)
            || !self.head_neg.is_subset(interpretation)
    }

    /// The formula `β → α`: the body conjunction (positive atoms, then
    /// negated atoms; `⊤` when empty) implies the head disjunction (atoms,
    /// then negated atoms; `⊥` when empty).
    pub fn to_formula(&self) -> Formula {
        let body = Formula::conjunction(
            self.body_pos
                .iter()
                .map(|a| Formula::Atom(a.clone()))
                .chain(self.body_neg.iter().map(|a| Formula::not(Formula::Atom(a.clone())))),
        );
        let head = Formula::disjunction(
            self.head_pos
                .iter()
                .map(|a| Formula::Atom(a.clone()))
                .chain(self.head_neg.iter().map(|a| Formula::not(Formula::Atom(a.clone())))),
        );
        Formula::implies(body, head)
    }
}

/// Translates a rule into a formula; see [`Rule::to_formula`].
pub fn rule_to_formula(rule: &Rule) -> Formula {
    rule.to_formula()
}

/// A finite set of rules over a signature.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Program {
    rules: Vec<Rule>,
    signature: Signature,
}

impl Program {
    pub fn new<I: IntoIterator<Item = Rule>>(rules: I) -> Result<Program> {
        Program::with_extra_atoms(rules, std::iter::empty())
    }

    pub fn with_extra_atoms<I, E>(rules: I, extra: E) -> Result<Program>
    where
        I: IntoIterator<Item = Rule>,
        E: IntoIterator<Item = Atom>,
    {
        let mut seen = BTreeSet::new();
        let rules: Vec<Rule> = rules.into_iter().filter(|r| seen.insert(r.clone())).collect();
        let mut atoms: BTreeSet<Atom> = extra.into_iter().collect();
        for r in &rules {
            atoms.extend(r.atoms());
        }
        Ok(Program {
            rules,
            signature: Signature::from_set(atoms)?,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// The theory `{ β_r → α_r | r ∈ Π }` over the same signature.
    pub fn to_theory(&self) -> Theory {
        Theory::with_signature(self.rules.iter().map(Rule::to_formula), self.signature.clone())
            .expect("rule atoms are covered by the program signature")
    }
}

/// The two context alphabets of relativized hyperequivalence: atoms allowed
/// to occur positively (`a_plus`) and negatively (`a_minus`).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Alphabets {
    pub a_plus: BTreeSet<Atom>,
    pub a_minus: BTreeSet<Atom>,
}

impl Alphabets {
    pub fn new<P, M>(a_plus: P, a_minus: M) -> Alphabets
    where
        P: IntoIterator,
        P::Item: Into<Atom>,
        M: IntoIterator,
        M::Item: Into<Atom>,
    {
        Alphabets {
            a_plus: a_plus.into_iter().map(Into::into).collect(),
            a_minus: a_minus.into_iter().map(Into::into).collect(),
        }
    }

    /// Both alphabets equal to the whole signature.
    pub fn full(signature: &Signature) -> Alphabets {
        let all: BTreeSet<Atom> = signature.atoms().iter().cloned().collect();
        Alphabets {
            a_plus: all.clone(),
            a_minus: all,
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.a_plus.union(&self.a_minus).cloned().collect()
    }
}
