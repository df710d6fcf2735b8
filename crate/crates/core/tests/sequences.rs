mod common;

use lfree::detect::is_free;
use lfree::sequences::{counting_function, dyadic_random_sequence, greedy_sequence, DyadicParams};
use lfree::{Ambient, GroundSet, Signature};

fn sig(s: &str) -> Signature {
    s.parse().unwrap()
}

#[test]
fn greedy_prefixes_stay_free() {
    for s in ["2,2", "2,3", "2,2,2"] {
        let sg = sig(s);
        let a = greedy_sequence(&sg, 400).unwrap();
        for k in 1..=a.terms.len().min(30) {
            let prefix: Vec<i64> = a.terms[..k].iter().map(|&t| t as i64).collect();
            let top = *prefix.last().unwrap() as u64;
            let set = GroundSet::from_ints(Ambient::interval(top).unwrap(), &prefix).unwrap();
            assert!(is_free(&set, &sg), "{s} prefix {k}");
            assert!(common::brute_free(&prefix, sg.lengths()) || prefix.len() > 12);
        }
    }
}

#[test]
fn counting_function_steps_by_at_most_one() {
    let a = greedy_sequence(&sig("2,2"), 500).unwrap();
    for x in 1..=600 {
        let d = counting_function(&a, x) - counting_function(&a, x - 1);
        assert!(d <= 1);
        assert_eq!(d == 1, a.terms.contains(&x));
    }
}

#[test]
fn dyadic_blocks_are_progression_free_and_results_free() {
    for s in ["2,2", "2,3", "2,2,2"] {
        let sg = sig(s);
        for seed in 0..3 {
            let p = DyadicParams::new(&sg, 0.1, 1, 5, seed).unwrap();
            let run = dyadic_random_sequence(&sg, &p, 1 << 24).unwrap();
            assert!(is_free(&run.prefix.to_set(), &sg));
            let terms: Vec<i64> = run.prefix.terms.iter().map(|&t| t as i64).collect();
            assert!(!common::has_ap3(&terms));
        }
    }
    // the union of all Behrend blocks avoids progressions across blocks
    let mut union = Vec::new();
    for m in 1..=5u32 {
        let start = 4i64.pow(m + 2);
        let amb = Ambient::interval_from(start, 4u64.pow(m)).unwrap();
        union.extend(lfree::construct::behrend_set_in(amb).unwrap().ints().unwrap());
    }
    assert!(!common::has_ap3(&union));
}
