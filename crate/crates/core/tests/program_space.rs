//! The whole space of programs with at most three rules over two atoms.
//! Slow: run with `cargo test --release -- --ignored`.

use std::collections::BTreeSet;

use hteq::corpus::standard_signature;
use hteq::semantics::{answer_sets, answer_sets_program};
use hteq::{AtomSet, Program, Rule};
use rayon::prelude::*;

#[test]
#[ignore]
fn every_program_of_three_rules_over_two_atoms() {
    let sig = standard_signature(2);
    let atoms = sig.atoms();
    let rules: Vec<Rule> = (1u32..256)
        .filter_map(|code| {
            let part = |k: usize| (0..2).filter(|i| code >> (4 * i + k) & 1 == 1).map(|i| atoms[i].clone()).collect::<Vec<_>>();
            Rule::new(part(0), part(1), part(2), part(3))
        })
        .collect();
    let n = rules.len();
    let check = |pick: &[usize]| {
        let p = Program::with_extra_atoms(pick.iter().map(|&i| rules[i].clone()), atoms.iter().cloned()).unwrap();
        let a: BTreeSet<AtomSet> = answer_sets_program(&p, &sig).unwrap().into_iter().collect();
        let b: BTreeSet<AtomSet> = answer_sets(&p.to_theory(), &sig).unwrap().into_iter().collect();
        assert_eq!(a, b, "{p}");
    };
    check(&[]);
    (0..n).into_par_iter().for_each(|i| {
        check(&[i]);
        for j in i + 1..n {
            check(&[i, j]);
            for k in j + 1..n {
                check(&[i, j, k]);
            }
        }
    });
}
