mod common;

use common::{random_nerve, random_rows, state, toric_state};
use principalize_core::oracle::{verify_trace, OracleConfig};
use principalize_core::{
    blowup_nerve, is_locally_principal, is_sum_locally_principal, min_divisor, principalize_many,
    principalize_pair, pullback_divisor, sigma, Certificate, Divisor, EngineConfig, Error, ExtPair,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_instances_decrease_and_terminate() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cfg = EngineConfig::default();
    let mut capped = 0;
    for _ in 0..2000 {
        let n = rng.gen_range(2..=6);
        let h = rng.gen_range(2..=4);
        let rows = random_rows(&mut rng, n, h, 5);
        let s = state(random_nerve(&mut rng, n), &rows);
        let (out, trace) = match principalize_many(&s, &cfg) {
            Ok(r) => r,
            // Long four-divisor reductions can outrun the default cap; the
            // acceptance suite reports those. Anything else is a bug.
            Err(Error::StepLimitExceeded { .. }) if h == 4 => {
                capped += 1;
                continue;
            }
            Err(e) => panic!("{rows:?}: {e}"),
        };
        for step in &trace.steps {
            assert!((step.sigma_after, step.tau_after) < (step.sigma_before, step.tau_before));
        }
        assert!(is_sum_locally_principal(&out.divisors, out.nerve()).unwrap());
        assert_eq!(out.step, trace.len());
        assert_eq!(out.arrangement.vertex_count(), n + trace.len());
    }
    eprintln!("runs stopped by the step cap: {capped}/2000");
    assert!(capped < 40);
}

/// Recomputes every step from scratch with the public nerve update and `σ`.
#[test]
fn recorded_steps_match_direct_recomputation() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let cfg = EngineConfig { max_steps: 300 };
    let mut checked = 0;
    while checked < 300 {
        let n = rng.gen_range(2..=5);
        let h = rng.gen_range(2..=3);
        let rows = random_rows(&mut rng, n, h, 4);
        let s = state(random_nerve(&mut rng, n), &rows);
        let Ok((out, trace)) = principalize_many(&s, &cfg) else {
            continue;
        };
        checked += 1;
        let mut nerve = s.nerve().clone();
        let mut working: Vec<Divisor> = s.divisors.clone();
        let mut phase = 0;
        for step in &trace.steps {
            while step.phase > phase {
                let merged = min_divisor(&working[0], &working[1]).unwrap();
                working.splice(0..2, [merged]);
                phase += 1;
            }
            let before = sigma(&working[0], &working[1], &nerve).unwrap();
            assert_eq!(
                (before.sigma, before.tau),
                (step.sigma_before, step.tau_before)
            );
            assert_eq!(before.achieving_pairs.last(), Some(&step.center));
            nerve = blowup_nerve(&nerve, step.center).unwrap();
            for d in &mut working {
                *d = pullback_divisor(d, step.center).unwrap();
            }
            let after = sigma(&working[0], &working[1], &nerve).unwrap();
            assert_eq!((after.sigma, after.tau), (step.sigma_after, step.tau_after));
        }
        assert_eq!(nerve, trace.final_nerve);
        assert_eq!(&nerve, out.nerve());
        assert_eq!(out.divisors, trace.pulled_back_coeffs(trace.len()));
    }
}

#[test]
fn coordinate_ideal_in_three_variables() {
    let rows = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    let (out, trace) = principalize_many(&toric_state(&rows), &EngineConfig::default()).unwrap();
    assert_eq!(trace.certificate, Certificate::Principalized);
    // (x,y) first: one blow-up, after which the merged divisor is E_1; then
    // (E_1, z) needs one more at E_1 ∩ Ỹ_2.
    assert_eq!(trace.len(), 2);
    assert_eq!(
        trace.steps.iter().map(|s| s.phase).collect::<Vec<_>>(),
        vec![0, 1]
    );
    assert_eq!(trace.steps[1].center, (2, 3));
    for (i, a) in out.divisors.iter().enumerate() {
        for b in &out.divisors[i + 1..] {
            assert!(
                is_sum_locally_principal(&[a.clone(), b.clone()], out.nerve()).unwrap()
                    || !is_locally_principal(a, b, out.nerve()).unwrap()
            );
        }
    }
    let report = verify_trace(3, &rows, &trace, &OracleConfig::default()).unwrap();
    assert!(report.is_certified());
}

#[test]
fn swapping_the_pair_gives_same_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let cfg = EngineConfig::default();
    for _ in 0..500 {
        let n = rng.gen_range(2..=6);
        let rows = random_rows(&mut rng, n, 2, 5);
        let nerve = random_nerve(&mut rng, n);
        let swapped = vec![rows[1].clone(), rows[0].clone()];
        let (a, ta) = principalize_pair(&state(nerve.clone(), &rows), 0, 1, &cfg).unwrap();
        let (b, tb) = principalize_pair(&state(nerve, &swapped), 0, 1, &cfg).unwrap();
        assert_eq!(ta.len(), tb.len());
        assert!(is_locally_principal(&a.divisors[0], &a.divisors[1], a.nerve()).unwrap());
        assert!(is_locally_principal(&b.divisors[0], &b.divisors[1], b.nerve()).unwrap());
        let last = |t: &principalize_core::Trace| t.steps.last().map(|s| s.sigma_after);
        assert_eq!(last(&ta), last(&tb));
        assert!(last(&ta).is_none_or(|s| s == ExtPair::Bottom));
    }
}

proptest! {
    #[test]
    fn pullback_is_linear(
        a in prop::collection::vec(0u64..50, 5),
        b in prop::collection::vec(0u64..50, 5),
        i in 0usize..5,
        j in 0usize..5,
    ) {
        prop_assume!(i != j);
        let (a, b) = (Divisor::new(a), Divisor::new(b));
        prop_assert_eq!(
            pullback_divisor(&(&a + &b), (i, j)).unwrap(),
            &pullback_divisor(&a, (i, j)).unwrap() + &pullback_divisor(&b, (i, j)).unwrap()
        );
    }
}
