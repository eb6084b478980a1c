use proptest::prelude::*;
use scsort_core::perm::standardize;
use scsort_core::{cro, fertility, sc_map, sc_trace, Pattern3, Permutation};

fn pattern() -> impl Strategy<Value = Pattern3> {
    prop::sample::select(Pattern3::ALL.to_vec())
}

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn text_format_round_trips(p in permutation(20)) {
        let s = p.to_string();
        prop_assert_eq!(s.parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn standardize_commutes_with_reverse(
        v in prop::collection::hash_set(-1000i64..1000, 1..15)
    ) {
        let v: Vec<i64> = v.into_iter().collect();
        let mut r = v.clone();
        r.reverse();
        prop_assert_eq!(standardize(&r).unwrap(), standardize(&v).unwrap().reverse());
    }

    #[test]
    fn trace_invariants_hold(sigma in pattern(), tau in permutation(20)) {
        let t = sc_trace(sigma, &tau);
        prop_assert!(t.check_invariants().is_ok());
        prop_assert_eq!(&t.output, &sc_map(sigma, &tau));
        prop_assert_eq!(t.output.last(), tau.first());
        prop_assert_eq!(t.cro(), cro(sigma, &tau));
        prop_assert!(t.cro() <= tau.len().saturating_sub(2));
        prop_assert_eq!(sc_trace(sigma, &tau), t);
    }

    #[test]
    fn complement_equivariance(sigma in pattern(), tau in permutation(20)) {
        prop_assert_eq!(
            sc_map(sigma.complement(), &tau.complement()),
            sc_map(sigma, &tau).complement()
        );
    }

    #[test]
    fn reverse_exactly_when_no_pattern_pops(sigma in pattern(), tau in permutation(20)) {
        prop_assert_eq!(cro(sigma, &tau) == 0, sc_map(sigma, &tau) == tau.reverse());
    }

    #[test]
    fn fertility_is_complement_invariant(sigma in pattern(), pi in permutation(7)) {
        prop_assert_eq!(
            fertility(sigma, &pi).unwrap(),
            fertility(sigma.complement(), &pi.complement()).unwrap()
        );
    }
}
