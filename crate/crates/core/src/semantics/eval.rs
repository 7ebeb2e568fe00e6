//! Satisfaction in the logic of here-and-there and in classical logic.
//!
//! Formulas are compiled to postfix code over signature indices. A single
//! pass computes, for an interpretation `(X, Y)`, whether the formula holds
//! at the here-world and at the there-world. The there-value is classical
//! satisfaction by `Y`, which the implication clause needs anyway.

use super::{AtomSet, HtInterp};
use crate::error::{Error, Result};
use crate::syntax::{Formula, Signature, Theory};

#[derive(Clone, Copy, Debug)]
enum Op {
    Bottom,
    Atom(u8),
    And,
    Or,
    Impl,
}

#[derive(Clone, Debug)]
pub struct CompiledFormula {
    code: Vec<Op>,
}

impl CompiledFormula {
    pub fn compile(formula: &Formula, signature: &Signature) -> Result<CompiledFormula> {
        let mut code = Vec::with_capacity(formula.size());
        emit(formula, signature, &mut code)?;
        Ok(CompiledFormula { code })
    }

    /// Truth at the here-world and the there-world of `(here, there)`.
    pub fn eval(&self, here: AtomSet, there: AtomSet) -> (bool, bool) {
        let mut stack: Vec<(bool, bool)> = Vec::with_capacity(8);
        for op in &self.code {
            let v = match *op {
                Op::Bottom => (false, false),
                Op::Atom(i) => (here.contains(i as usize), there.contains(i as usize)),
                Op::And | Op::Or | Op::Impl => {
                    let (rh, rt) = stack.pop().expect("well-formed code");
                    let (lh, lt) = stack.pop().expect("well-formed code");
                    match *op {
                        Op::And => (lh && rh, lt && rt),
                        Op::Or => (lh || rh, lt || rt),
                        _ => {
                            let t = !lt || rt;
                            ((!lh || rh) && t, t)
                        }
                    }
                }
            };
            stack.push(v);
        }
        stack.pop().expect("nonempty code")
    }

    pub fn ht(&self, m: HtInterp) -> bool {
        self.eval(m.here, m.there).0
    }

    pub fn classical(&self, y: AtomSet) -> bool {
        self.eval(y, y).0
    }
}

fn emit(f: &Formula, signature: &Signature, code: &mut Vec<Op>) -> Result<()> {
    match f {
        Formula::Bottom => code.push(Op::Bottom),
        Formula::Atom(a) => {
            let i = signature.index_of(a).ok_or_else(|| Error::UnknownAtom {
                atom: a.name().to_owned(),
            })?;
            code.push(Op::Atom(i as u8));
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => {
            emit(l, signature, code)?;
            emit(r, signature, code)?;
            code.push(match f {
                Formula::And(..) => Op::And,
                Formula::Or(..) => Op::Or,
                _ => Op::Impl,
            });
        }
    }
    Ok(())
}

/// A theory compiled against a signature.
#[derive(Clone, Debug)]
pub struct CompiledTheory {
    formulas: Vec<CompiledFormula>,
}

impl CompiledTheory {
    pub fn compile(theory: &Theory, signature: &Signature) -> Result<CompiledTheory> {
        let formulas = theory
            .formulas()
            .iter()
            .map(|f| CompiledFormula::compile(f, signature))
            .collect::<Result<_>>()?;
        Ok(CompiledTheory { formulas })
    }

    pub fn ht(&self, m: HtInterp) -> bool {
        self.formulas.iter().all(|f| f.ht(m))
    }

    pub fn classical(&self, y: AtomSet) -> bool {
        self.formulas.iter().all(|f| f.classical(y))
    }
}

/// Classical satisfaction of `formula` by the atoms `y` of `signature`.
pub fn classical_sat(signature: &Signature, y: AtomSet, formula: &Formula) -> Result<bool> {
    Ok(CompiledFormula::compile(formula, signature)?.classical(y))
}

/// HT-satisfaction of `formula` by `m` over `signature`.
pub fn ht_sat(signature: &Signature, m: HtInterp, formula: &Formula) -> Result<bool> {
    Ok(CompiledFormula::compile(formula, signature)?.ht(m))
}

/// HT-satisfaction of every formula of `theory`.
pub fn ht_sat_theory(signature: &Signature, m: HtInterp, theory: &Theory) -> Result<bool> {
    Ok(CompiledTheory::compile(theory, signature)?.ht(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn sig(names: &[&str]) -> Signature {
        Signature::new(names.iter().copied()).unwrap()
    }

    /// Direct transcription of the recursive HT clauses, used as an
    /// independent reference for the postfix evaluator.
    fn reference(m: HtInterp, sig: &Signature, f: &Formula) -> bool {
        match f {
            Formula::Bottom => false,
            Formula::Atom(a) => m.here.contains(sig.index_of(a).unwrap()),
            Formula::And(l, r) => reference(m, sig, l) && reference(m, sig, r),
            Formula::Or(l, r) => reference(m, sig, l) || reference(m, sig, r),
            Formula::Impl(l, r) => {
                let total = HtInterp::total(m.there);
                (!reference(m, sig, l) || reference(m, sig, r))
                    && (!reference(total, sig, l) || reference(total, sig, r))
            }
        }
    }

    #[test]
    fn classical_examples() {
        let s = sig(&["a", "b"]);
        let a = AtomSet(0b01);
        assert!(classical_sat(&s, a, &parse_formula("--a -> a").unwrap()).unwrap());
        assert!(!classical_sat(&s, AtomSet::EMPTY, &parse_formula("a | b").unwrap()).unwrap());
        assert!(!classical_sat(&s, a, &parse_formula("a -> b").unwrap()).unwrap());
    }

    #[test]
    fn ht_examples() {
        let s = sig(&["a"]);
        let a = AtomSet(1);
        assert!(ht_sat(&s, HtInterp::total(a), &Formula::atom("a")).unwrap());
        assert!(ht_sat(&s, HtInterp::new(AtomSet::EMPTY, a), &parse_formula("--a").unwrap()).unwrap());
        assert!(!ht_sat(&s, HtInterp::new(AtomSet::EMPTY, a), &parse_formula("--a -> a").unwrap()).unwrap());
    }

    #[test]
    fn agrees_with_recursive_clauses() {
        let s = sig(&["a", "b", "c"]);
        let formulas = [
            "a -> b | c",
            "-(a & -b) -> c",
            "((a -> b) -> a) -> a",
            "-a | --a",
            "a | -a",
            "(a <-> b) & (b -> #f)",
        ];
        for text in formulas {
            let f = parse_formula(text).unwrap();
            let compiled = CompiledFormula::compile(&f, &s).unwrap();
            for m in super::super::enumerate_ht(&s).unwrap() {
                assert_eq!(compiled.ht(m), reference(m, &s, &f), "{text} at {m:?}");
            }
        }
    }

    #[test]
    fn unknown_atom() {
        let e = CompiledFormula::compile(&Formula::atom("z"), &sig(&["a"])).unwrap_err();
        assert_eq!(e, Error::UnknownAtom { atom: "z".into() });
    }
}
