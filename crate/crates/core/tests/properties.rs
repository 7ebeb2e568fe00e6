use std::collections::BTreeSet;

use hteq::corpus::{standard_signature, Corpus};
use hteq::equiv::decide_equivalence_over;
use hteq::hyper::decide_hyper_over;
use hteq::nonground::{open_answer_sets, ordinary_answer_sets, parse_ng_program};
use hteq::semantics::{answer_sets, answer_sets_program, enumerate_ht, ht_sat};
use hteq::syntax::{parse_program, parse_theory};
use hteq::{Alphabets, AtomSet, EquivNotion, HtInterp, Signature};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn theories_round_trip(seed: u64, n in 1usize..5) {
        let sig = standard_signature(n);
        let t = Corpus::new(seed).theory(&sig, 4);
        let reparsed = parse_theory(&t.to_string()).unwrap();
        prop_assert_eq!(reparsed.formulas(), t.formulas());
        prop_assert_eq!(reparsed.signature(), t.signature());
    }

    #[test]
    fn programs_round_trip(seed: u64, n in 1usize..5) {
        let sig = standard_signature(n);
        let p = Corpus::new(seed).program(&sig, 4);
        let reparsed = parse_program(&p.to_string()).unwrap();
        prop_assert_eq!(reparsed.rules(), p.rules());
    }

    #[test]
    fn satisfaction_persists_to_there(seed: u64) {
        let sig = standard_signature(3);
        let mut corpus = Corpus::new(seed);
        let f = corpus.formula(&sig, 4);
        for m in enumerate_ht(&sig).unwrap() {
            if ht_sat(&sig, m, &f).unwrap() {
                prop_assert!(ht_sat(&sig, HtInterp::total(m.there), &f).unwrap(), "{} at {}", f, m.display(&sig));
            }
        }
    }

    #[test]
    fn reduct_and_equilibrium_agree(seed: u64, n in 1usize..5) {
        let sig = standard_signature(n);
        let p = Corpus::new(seed).program(&sig, 5);
        let by_reduct: BTreeSet<AtomSet> = answer_sets_program(&p, &sig).unwrap().into_iter().collect();
        let by_ht: BTreeSet<AtomSet> = answer_sets(&p.to_theory(), &sig).unwrap().into_iter().collect();
        prop_assert_eq!(by_reduct, by_ht, "{}", p);
    }

    #[test]
    fn notions_are_ordered(seed: u64) {
        let sig = standard_signature(3);
        let (t1, t2, _) = Corpus::new(seed).theory_pair(&sig, 3);
        let eq = |notion| decide_equivalence_over(&t1, &t2, notion, &sig).unwrap().equivalent;
        let (c, a, s, u) = (eq(EquivNotion::Classical), eq(EquivNotion::AnswerSet), eq(EquivNotion::Strong), eq(EquivNotion::Uniform));
        prop_assert!(!s || u);
        prop_assert!(!u || a);
        prop_assert!(!s || c);
        prop_assert!(!u || c);
    }

    #[test]
    fn decisions_are_symmetric_and_reflexive(seed: u64) {
        let sig = standard_signature(3);
        let (t1, t2, _) = Corpus::new(seed).theory_pair(&sig, 3);
        for notion in EquivNotion::ALL {
            let forward = decide_equivalence_over(&t1, &t2, notion, &sig).unwrap();
            let backward = decide_equivalence_over(&t2, &t1, notion, &sig).unwrap();
            prop_assert_eq!(forward.equivalent, backward.equivalent);
            prop_assert!(decide_equivalence_over(&t1, &t1, notion, &sig).unwrap().equivalent);
        }
    }

    #[test]
    fn larger_alphabets_distinguish_more(seed: u64) {
        let sig = standard_signature(3);
        let mut corpus = Corpus::new(seed);
        let (t1, t2, _) = corpus.theory_pair(&sig, 3);
        let big = corpus.alphabets(&sig);
        let shrink = |atoms: &BTreeSet<hteq::Atom>, rng: &mut rand_chacha::ChaCha8Rng| {
            atoms.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect::<Vec<_>>()
        };
        let small = Alphabets::new(shrink(&big.a_plus, corpus.rng()), shrink(&big.a_minus, corpus.rng()));
        let wide = decide_hyper_over(&t1, &t2, &big, &sig).unwrap().equivalent;
        let narrow = decide_hyper_over(&t1, &t2, &small, &sig).unwrap().equivalent;
        prop_assert!(!wide || narrow);
    }

    #[test]
    fn safe_programs_have_no_new_open_answer_sets(seed: u64) {
        let text = safe_program(seed);
        let p = parse_ng_program(&text).unwrap();
        prop_assume!(p.is_safe());
        let ordinary: BTreeSet<Vec<String>> = ordinary_answer_sets(&p).unwrap().into_iter().collect();
        let open = open_answer_sets(&p, 1).unwrap();
        for universe in open.iter().map(|o| o.universe.clone()).collect::<Vec<_>>() {
            let here: BTreeSet<Vec<String>> =
                open.iter().filter(|o| o.universe == universe).map(|o| o.atoms.clone()).collect();
            prop_assert_eq!(&here, &ordinary, "{} over {}", text, universe);
        }
    }
}

/// A random safe program over `p/1`, `q/1`, `r/2` with constants `a`, `b`.
fn safe_program(seed: u64) -> String {
    let mut corpus = Corpus::new(seed);
    let rng = corpus.rng();
    let terms = ["a", "b", "X", "Y"];
    let atom = |rng: &mut rand_chacha::ChaCha8Rng| {
        let t = |rng: &mut rand_chacha::ChaCha8Rng| *terms.choose(rng).unwrap();
        match rng.gen_range(0..3) {
            0 => format!("p({})", t(rng)),
            1 => format!("q({})", t(rng)),
            _ => format!("r({},{})", t(rng), t(rng)),
        }
    };
    let mut out = String::new();
    for _ in 0..rng.gen_range(1..5) {
        let head: Vec<String> = (0..rng.gen_range(1..3)).map(|_| atom(rng)).collect();
        let mut body: Vec<String> = (0..rng.gen_range(0..3)).map(|_| atom(rng)).collect();
        body.extend((0..rng.gen_range(0..2)).map(|_| format!("not {}", atom(rng))));
        // bind every variable positively so the rule is safe
        for v in ["X", "Y"] {
            if head.iter().chain(&body).any(|a| a.contains(v)) {
                body.push(format!("q({v})"));
            }
        }
        out.push_str(&head.join(" | "));
        if !body.is_empty() {
            out.push_str(" :- ");
            out.push_str(&body.join(", "));
        }
        out.push_str(".\n");
    }
    out
}

#[test]
fn signatures_hold_declared_atoms() {
    let t = parse_theory("#atoms c.\na -> b.").unwrap();
    let sig: &Signature = t.signature();
    assert_eq!(sig.atoms().iter().map(|a| a.name()).collect::<Vec<_>>(), ["a", "b", "c"]);
}
