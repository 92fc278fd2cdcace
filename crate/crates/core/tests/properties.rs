use msdev::metrics::commit_back_count;
use proptest::prelude::*;

fn sequence() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..5, 0..40)
}

fn names(seq: &[u8]) -> Vec<String> {
    seq.iter().map(|m| format!("m{m}")).collect()
}

proptest! {
    #[test]
    fn consecutive_repeats_do_not_matter(seq in sequence(), reps in prop::collection::vec(1usize..4, 40)) {
        let stretched: Vec<u8> = seq.iter().zip(&reps).flat_map(|(&m, &r)| std::iter::repeat_n(m, r)).collect();
        prop_assert_eq!(commit_back_count(&names(&seq)), commit_back_count(&names(&stretched)));
    }

    #[test]
    fn distinct_sequences_never_come_back(n in 0usize..20) {
        let seq: Vec<String> = (0..n).map(|i| format!("m{i}")).collect();
        prop_assert_eq!(commit_back_count(&seq), 0);
    }

    #[test]
    fn relabelling_services_is_invariant(seq in sequence(), shift in 1u8..5) {
        let relabelled: Vec<u8> = seq.iter().map(|m| (m + shift) % 5).collect();
        prop_assert_eq!(commit_back_count(&names(&seq)), commit_back_count(&names(&relabelled)));
    }

    #[test]
    fn bounded_by_run_count(seq in sequence()) {
        let mut runs = seq.clone();
        runs.dedup();
        let distinct = {
            let mut d = seq.clone();
            d.sort();
            d.dedup();
            d.len()
        };
        prop_assert_eq!(commit_back_count(&names(&seq)), runs.len() - distinct);
    }
}
