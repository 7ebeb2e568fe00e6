//! Seeded random formulas, theories, programs and alphabets.
//!
//! The same seed always yields the same sequence. Theory pairs are drawn in
//! several shapes so that a corpus contains equivalent and non-equivalent
//! pairs for every notion, not only unrelated theories.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::semantics::{AtomSet, HtInterp};
use crate::syntax::{Alphabets, Atom, Formula, Program, Rule, Signature, Theory};

/// `n` atoms named `a`, `b`, … (`p1`, `p2`, … beyond 26).
pub fn standard_signature(n: usize) -> Signature {
    let names: Vec<String> = if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("p{i}")).collect()
    };
    Signature::new(names).expect("distinct names")
}

/// How the second theory of a pair was obtained from the first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairShape {
    /// Drawn independently.
    Independent,
    /// One formula replaced by a fresh random one.
    Perturbed,
    /// One formula rewritten into a strongly equivalent form.
    Rewritten,
    /// One formula `φ` replaced by `¬¬φ`.
    DoubleNegated,
    /// One disjunction `φ ∨ ψ` replaced by `¬φ → ψ` and `¬ψ → φ`.
    Shifted,
}

impl PairShape {
    pub fn name(self) -> &'static str {
        match self {
            PairShape::Independent => "independent",
            PairShape::Perturbed => "perturbed",
            PairShape::Rewritten => "rewritten",
            PairShape::DoubleNegated => "double-negated",
            PairShape::Shifted => "shifted",
        }
    }
}

/// Where a generated subformula sits, for polarity-directed generation.
#[derive(Clone, Copy)]
struct Slot {
    negative: bool,
    in_consequent: bool,
    structural_positive: bool,
}

impl Slot {
    const ROOT: Slot = Slot {
        negative: false,
        in_consequent: false,
        structural_positive: true,
    };
}

/// A deterministic generator.
#[derive(Clone, Debug)]
pub struct Corpus {
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Corpus {
        Corpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn pick_atom(&mut self, atoms: &[Atom]) -> Formula {
        Formula::Atom(atoms.choose(&mut self.rng).expect("nonempty atoms").clone())
    }

    /// A formula of depth at most `depth` over the atoms of `signature`.
    pub fn formula(&mut self, signature: &Signature, depth: usize) -> Formula {
        if signature.is_empty() {
            return if self.rng.gen_bool(0.5) { Formula::Bottom } else { Formula::top() };
        }
        self.formula_over(signature.atoms(), depth)
    }

    fn formula_over(&mut self, atoms: &[Atom], depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return if self.rng.gen_bool(0.08) { Formula::Bottom } else { self.pick_atom(atoms) };
        }
        match self.rng.gen_range(0..4) {
            0 => Formula::and(self.formula_over(atoms, depth - 1), self.formula_over(atoms, depth - 1)),
            1 => Formula::or(self.formula_over(atoms, depth - 1), self.formula_over(atoms, depth - 1)),
            2 => Formula::implies(self.formula_over(atoms, depth - 1), self.formula_over(atoms, depth - 1)),
            _ => Formula::not(self.formula_over(atoms, depth - 1)),
        }
    }

    /// A factual formula (no implication except negation) over `atoms`.
    pub fn factual_formula(&mut self, atoms: &[Atom], depth: usize) -> Formula {
        if atoms.is_empty() {
            return Formula::Bottom;
        }
        if depth == 0 || self.rng.gen_bool(0.35) {
            return self.pick_atom(atoms);
        }
        match self.rng.gen_range(0..3) {
            0 => Formula::and(self.factual_formula(atoms, depth - 1), self.factual_formula(atoms, depth - 1)),
            1 => Formula::or(self.factual_formula(atoms, depth - 1), self.factual_formula(atoms, depth - 1)),
            _ => Formula::not(self.factual_formula(atoms, depth - 1)),
        }
    }

    /// A formula whose positive atom occurrences come from `A⁺` and whose
    /// negative ones come from `A⁻`, with occurrences classified as in
    /// [`atom_polarities`](crate::syntax::atom_polarities).
    pub fn apan_formula(&mut self, ab: &Alphabets, depth: usize) -> Formula {
        let pools = [
            Vec::new(),
            ab.a_plus.iter().cloned().collect(),
            ab.a_minus.iter().cloned().collect(),
            ab.a_plus.intersection(&ab.a_minus).cloned().collect(),
        ];
        self.polar(&pools, Slot::ROOT, depth)
    }

    fn polar(&mut self, pools: &[Vec<Atom>; 4], slot: Slot, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            let positive = slot.in_consequent || slot.structural_positive;
            let pool = &pools[positive as usize + 2 * slot.negative as usize];
            return if pool.is_empty() || self.rng.gen_bool(0.08) {
                Formula::Bottom
            } else {
                self.pick_atom(pool)
            };
        }
        let antecedent = Slot {
            negative: true,
            in_consequent: slot.in_consequent,
            structural_positive: slot.negative,
        };
        let consequent = Slot {
            negative: slot.negative,
            in_consequent: true,
            structural_positive: true,
        };
        match self.rng.gen_range(0..4) {
            0 => Formula::and(self.polar(pools, slot, depth - 1), self.polar(pools, slot, depth - 1)),
            1 => Formula::or(self.polar(pools, slot, depth - 1), self.polar(pools, slot, depth - 1)),
            2 => Formula::implies(self.polar(pools, antecedent, depth - 1), self.polar(pools, consequent, depth - 1)),
            _ => Formula::not(self.polar(pools, antecedent, depth - 1)),
        }
    }

    /// An extended `A⁺`-`A⁻`-theory: `A⁺`-`A⁻`-formulas mixed with factual
    /// formulas over `A⁺`, over the signature `signature`.
    pub fn extended_apan_theory(&mut self, ab: &Alphabets, signature: &Signature, max_formulas: usize) -> Theory {
        let plus: Vec<Atom> = ab.a_plus.iter().cloned().collect();
        let count = self.rng.gen_range(1..=max_formulas.max(1));
        let formulas: Vec<Formula> = (0..count)
            .map(|_| {
                if !plus.is_empty() && self.rng.gen_bool(0.3) {
                    self.factual_formula(&plus, 2)
                } else {
                    self.apan_formula(ab, 3)
                }
            })
            .collect();
        Theory::with_signature(formulas, signature.clone()).expect("alphabets within the signature")
    }

    /// A nonempty theory of up to `max_formulas` formulas over `signature`.
    pub fn theory(&mut self, signature: &Signature, max_formulas: usize) -> Theory {
        let count = self.rng.gen_range(1..=max_formulas.max(1));
        let formulas: Vec<Formula> = (0..count).map(|_| self.formula(signature, 3)).collect();
        Theory::with_signature(formulas, signature.clone()).expect("atoms drawn from the signature")
    }

    /// A pair of theories over `signature` in a randomly chosen shape.
    pub fn theory_pair(&mut self, signature: &Signature, max_formulas: usize) -> (Theory, Theory, PairShape) {
        let first = self.theory(signature, max_formulas);
        let shapes = [
            PairShape::Independent,
            PairShape::Perturbed,
            PairShape::Rewritten,
            PairShape::DoubleNegated,
            PairShape::Shifted,
        ];
        let shape = *shapes.choose(&mut self.rng).expect("nonempty");
        let mut formulas = first.formulas().to_vec();
        let i = self.rng.gen_range(0..formulas.len());
        let second: Vec<Formula> = match shape {
            PairShape::Independent => self.theory(signature, max_formulas).formulas().to_vec(),
            PairShape::Perturbed => {
                formulas[i] = self.formula(signature, 3);
                formulas
            }
            PairShape::Rewritten => {
                let original = formulas.remove(i);
                formulas.extend(self.rewrite(original));
                formulas
            }
            PairShape::DoubleNegated => {
                formulas[i] = Formula::not(Formula::not(formulas[i].clone()));
                formulas
            }
            PairShape::Shifted => {
                let disjunction = formulas.iter().position(|f| matches!(f, Formula::Or(..)));
                match disjunction.map(|j| formulas.remove(j)) {
                    Some(Formula::Or(l, r)) => {
                        formulas.push(Formula::implies(Formula::not((*l).clone()), (*r).clone()));
                        formulas.push(Formula::implies(Formula::not(*r), *l));
                    }
                    _ => {
                        let l = self.formula(signature, 1);
                        let r = self.formula(signature, 1);
                        formulas.push(Formula::or(l.clone(), r.clone()));
                        let mut shifted = first.formulas().to_vec();
                        shifted.push(Formula::implies(Formula::not(l.clone()), r.clone()));
                        shifted.push(Formula::implies(Formula::not(r), l));
                        let first = Theory::with_signature(formulas, signature.clone()).expect("same atoms");
                        let second = Theory::with_signature(shifted, signature.clone()).expect("same atoms");
                        return (first, second, shape);
                    }
                }
                formulas
            }
        };
        let second = Theory::with_signature(second, signature.clone()).expect("same atoms");
        (first, second, shape)
    }

    /// A strongly equivalent rewriting of `f`, possibly split in two.
    fn rewrite(&mut self, f: Formula) -> Vec<Formula> {
        match (self.rng.gen_range(0..4), f) {
            (0, Formula::And(l, r)) => vec![*l, *r],
            (1, Formula::Or(l, r)) => vec![Formula::or(*r, *l)],
            (2, f) => match f.as_negation() {
                Some(inner) => vec![Formula::not(Formula::not(Formula::not(inner.clone())))],
                None => vec![f, Formula::top()],
            },
            (_, f) => vec![Formula::and(f, Formula::top())],
        }
    }

    /// A rule over `signature`; each atom joins each side with probability
    /// one third.
    pub fn rule(&mut self, signature: &Signature) -> Rule {
        loop {
            let mut sides: [Vec<Atom>; 4] = Default::default();
            for atom in signature.atoms() {
                for side in sides.iter_mut() {
                    if self.rng.gen_bool(1.0 / 3.0) {
                        side.push(atom.clone());
                    }
                }
            }
            let [hp, hn, bp, bn] = sides;
            if let Some(rule) = Rule::new(hp, hn, bp, bn) {
                return rule;
            }
        }
    }

    /// A program of up to `max_rules` rules whose signature is `signature`.
    pub fn program(&mut self, signature: &Signature, max_rules: usize) -> Program {
        let count = self.rng.gen_range(0..=max_rules);
        let rules: Vec<Rule> = (0..count).map(|_| self.rule(signature)).collect();
        Program::with_extra_atoms(rules, signature.atoms().iter().cloned()).expect("bounded signature")
    }

    /// Random, possibly overlapping, subsets of `signature`.
    pub fn alphabets(&mut self, signature: &Signature) -> Alphabets {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for atom in signature.atoms() {
            if self.rng.gen_bool(0.5) {
                plus.push(atom.clone());
            }
            if self.rng.gen_bool(0.5) {
                minus.push(atom.clone());
            }
        }
        Alphabets::new(plus, minus)
    }

    /// A uniformly random interpretation over `n` atoms.
    pub fn interpretation(&mut self, n: usize) -> HtInterp {
        let there = AtomSet(self.rng.gen::<u64>() & AtomSet::full(n).0);
        let here = AtomSet(self.rng.gen::<u64>() & there.0);
        HtInterp::new(here, there)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{is_apan_theory, is_factual};

    #[test]
    fn apan_theories_respect_polarity() {
        let sig = standard_signature(4);
        let mut c = Corpus::new(3);
        for _ in 0..300 {
            let ab = c.alphabets(&sig);
            let t = c.extended_apan_theory(&ab, &sig, 3);
            assert!(is_apan_theory(&t, &ab, true), "{t} over {ab:?}");
            let f = c.apan_formula(&ab, 3);
            assert!(is_apan_theory(&Theory::new([f.clone()]).unwrap(), &ab, false), "{f}");
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let sig = standard_signature(3);
        let draw = |seed| {
            let mut c = Corpus::new(seed);
            (0..20).map(|_| c.theory_pair(&sig, 3)).map(|(a, b, _)| (a, b)).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn theories_cover_the_signature() {
        let sig = standard_signature(3);
        let mut c = Corpus::new(1);
        for _ in 0..50 {
            let (a, b, _) = c.theory_pair(&sig, 3);
            assert_eq!(a.signature(), &sig);
            assert_eq!(b.signature(), &sig);
            assert!(!a.is_empty() && !b.is_empty());
        }
    }

    #[test]
    fn factual_formulas_are_factual() {
        let sig = standard_signature(3);
        let mut c = Corpus::new(2);
        for _ in 0..100 {
            assert!(is_factual(&c.factual_formula(sig.atoms(), 3)));
        }
    }

    #[test]
    fn standard_names() {
        assert_eq!(standard_signature(3).atoms(), &[Atom::new("a"), Atom::new("b"), Atom::new("c")]);
        assert_eq!(standard_signature(27).atom(0).name(), "p1");
    }
}
