mod common;

use common::{formula, oracle_entails, oracle_equivalent};
use flockrev_core::harness::{random_flock, TrialConfig};
use flockrev_core::logic::is_tautology;
use flockrev_core::{Base, Error, Flock, Formula};
use proptest::prelude::*;

fn flock_strategy() -> impl Strategy<Value = Flock> {
    (any::<u64>(), 0usize..1024)
        .prop_map(|(seed, index)| random_flock(&TrialConfig::default().with_seed(seed), index))
}

fn premises(base: &Base) -> Vec<Formula> {
    base.iter().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn contraction_succeeds(flock in flock_strategy(), f in formula(3, 2)) {
        match flock.contract(&f) {
            Err(Error::TautologyContraction(_)) => prop_assert!(oracle_entails(&[], &f)),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
            Ok(out) => {
                prop_assert!(!out.is_empty());
                for base in out.iter() {
                    prop_assert!(!oracle_entails(&premises(base), &f));
                    prop_assert!(flock.iter().any(|b| base.is_subset(b)));
                }
                prop_assert!(!out.believed(&f).unwrap());
            }
        }
    }

    #[test]
    fn contraction_is_vacuous_when_nothing_entails(flock in flock_strategy(), f in formula(3, 2)) {
        prop_assume!(!is_tautology(&f).unwrap());
        prop_assume!(flock.iter().all(|b| !oracle_entails(&premises(b), &f)));
        prop_assert_eq!(flock.contract(&f).unwrap(), flock.normalize());
    }

    #[test]
    fn merge_is_commutative(left in flock_strategy(), right in flock_strategy()) {
        match (left.merge(&right), right.merge(&left)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(Error::NotDisjoint(_)), Err(Error::NotDisjoint(_))) => {}
            (a, b) => return Err(TestCaseError::fail(format!("{a:?} vs {b:?}"))),
        }
    }

    #[test]
    fn expansion_conjoins_the_new_formula(flock in flock_strategy(), f in formula(3, 2)) {
        let expansion = flock.expand(&f, true).unwrap();
        prop_assert!(oracle_equivalent(&expansion.used, &f));
        prop_assert!(!flock.occurs(&expansion.used));
        let before = flock.belief_formula();
        let after = expansion.flock.belief_formula();
        prop_assert!(oracle_equivalent(&after, &Formula::conjunction(before, f)));
    }

    #[test]
    fn beliefs_follow_from_every_maximal_base(flock in flock_strategy(), f in formula(3, 2)) {
        let expected = flock.normalize().iter().all(|b| oracle_entails(&premises(b), &f));
        prop_assert_eq!(flock.believed(&f).unwrap(), expected);
        prop_assert_eq!(oracle_entails(&[flock.belief_formula()], &f), expected);
    }

    #[test]
    fn revision_believes_the_input(flock in flock_strategy(), f in formula(3, 2)) {
        prop_assume!(!is_tautology(&Formula::negation(f.clone())).unwrap());
        let revised = flock.revise(&f).unwrap();
        prop_assert!(revised.believed(&f).unwrap());
    }

    #[test]
    fn normalization_is_idempotent_and_preserves_identity(flock in flock_strategy()) {
        let normal = flock.normalize();
        prop_assert_eq!(normal.normalize(), normal.clone());
        prop_assert!(flock.identical(&normal));
        prop_assert_eq!(flock.fukv_normalize().fukv_normalize(), flock.fukv_normalize());
    }
}
