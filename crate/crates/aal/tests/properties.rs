//! Randomized properties: parser round-trips, the substitution lemma,
//! closure-operator laws, and congruence compatibility.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use aal::algebra::{Assignment, FiniteAlgebra};
use aal::congruence::congruence_generated;
use aal::demorgan::{named, NamedDmm};
use aal::filters::{filter_generate, Builtin, FilterSystem};
use aal::heyting::upset_algebra;
use aal::parse::parse_term;
use aal::poset::FinitePoset;
use aal::term::Term;

fn c4() -> &'static FiniteAlgebra {
    static A: OnceLock<FiniteAlgebra> = OnceLock::new();
    A.get_or_init(|| named(NamedDmm::C4))
}

fn d4() -> &'static FiniteAlgebra {
    static A: OnceLock<FiniteAlgebra> = OnceLock::new();
    A.get_or_init(|| named(NamedDmm::D4))
}

fn fork_upsets() -> &'static FiniteAlgebra {
    static A: OnceLock<FiniteAlgebra> = OnceLock::new();
    A.get_or_init(|| {
        let fork = FinitePoset::from_covers("fork", 3, &[(0, 1), (0, 2)]).unwrap();
        upset_algebra("fork", &fork).unwrap()
    })
}

fn dmm_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (1u32..=3).prop_map(Term::var),
        Just(Term::constant("e")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Term::app("fuse", vec![a, b])),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Term::app("meet", vec![a, b])),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Term::app("join", vec![a, b])),
            inner.prop_map(|a| Term::app("neg", vec![a])),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printed_terms_parse_back(t in dmm_term()) {
        let a = c4();
        let text = t.to_string();
        let parsed = parse_term(a.signature(), &text).unwrap();
        prop_assert_eq!(parsed.to_string(), text);
        prop_assert_eq!(&parsed, &t);
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        t in dmm_term(),
        s1 in dmm_term(),
        s2 in dmm_term(),
        s3 in dmm_term(),
        x1 in 0usize..4,
        x2 in 0usize..4,
        x3 in 0usize..4,
    ) {
        let a = c4();
        let asg: Assignment = [(1u32, x1), (2, x2), (3, x3)].into_iter().collect();
        let map: BTreeMap<u32, Term> =
            [(1u32, s1), (2, s2), (3, s3)].into_iter().collect();
        let composed: Assignment = map
            .iter()
            .map(|(&v, s)| (v, a.eval(s, &asg).unwrap()))
            .collect();
        prop_assert_eq!(
            a.eval(&t.subst(&map), &asg).unwrap(),
            a.eval(&t, &composed).unwrap()
        );
    }

    #[test]
    fn filter_generation_is_a_closure_operator(
        seed_mask in 0u32..32,
        extra_mask in 0u32..32,
    ) {
        let samples: [(&FiniteAlgebra, FilterSystem); 3] = [
            (c4(), FilterSystem::Builtin(Builtin::Dmm)),
            (d4(), FilterSystem::Builtin(Builtin::Dmm)),
            (fork_upsets(), FilterSystem::Builtin(Builtin::Heyting)),
        ];
        for (a, sys) in &samples {
            let seed: Vec<usize> =
                (0..a.size()).filter(|&x| seed_mask >> x & 1 == 1).collect();
            let closed = filter_generate(a, sys, &seed).unwrap();
            // extensive
            prop_assert!(seed.iter().all(|x| closed.contains(x)));
            // idempotent
            prop_assert_eq!(&filter_generate(a, sys, &closed).unwrap(), &closed);
            // monotone
            let mut bigger = seed.clone();
            bigger.extend((0..a.size()).filter(|&x| extra_mask >> x & 1 == 1));
            let closed_bigger = filter_generate(a, sys, &bigger).unwrap();
            prop_assert!(closed.iter().all(|x| closed_bigger.contains(x)));
        }
    }

    #[test]
    fn generated_congruences_are_compatible(
        pairs in proptest::collection::vec((0usize..4, 0usize..4), 0..4)
    ) {
        for a in [c4(), d4()] {
            let theta = congruence_generated(a, &pairs);
            prop_assert!(a.check_compatible(&theta).is_ok());
            for &(x, y) in &pairs {
                prop_assert!(theta.same(x, y));
            }
        }
    }
}
