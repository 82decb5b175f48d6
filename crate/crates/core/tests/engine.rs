use std::cmp::Ordering;

use batopt::bat::{init_swarm_with, step, SwarmConfig, WalkScale};
use batopt::benchmarks::lookup;
use batopt::{run, ConstraintHandler, RandomStream};
use proptest::prelude::*;

fn handlers() -> impl Strategy<Value = ConstraintHandler> {
    prop_oneof![
        Just(ConstraintHandler::feasibility_first()),
        Just(ConstraintHandler::static_penalty(1e6).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trace_never_gets_worse(
        seed in any::<u64>(),
        name in prop::sample::select(vec!["three_bar_truss", "himmelblau", "speed_reducer", "mathematical_12"]),
        handler in handlers(),
        walk in prop_oneof![Just(WalkScale::Absolute), Just(WalkScale::BoxWidth(0.03))],
    ) {
        let p = lookup(name).unwrap();
        let c = SwarmConfig { seed, walk_scale: walk, ..SwarmConfig::with_budget(6, 30) };
        let r = run(&p, &c, &handler).unwrap();
        prop_assert_eq!(r.evaluations, 6 * 31);
        prop_assert_eq!(r.trace.len(), 31);
        for w in r.trace.windows(2) {
            prop_assert_ne!(handler.compare(&w[1], &w[0]), Ordering::Greater);
        }
        prop_assert!(p.contains(&r.best.position));
    }

    #[test]
    fn loudness_and_pulse_rate_stay_on_schedule(seed in any::<u64>(), n in 1usize..8) {
        let p = lookup("himmelblau").unwrap();
        let c = SwarmConfig { seed, ..SwarmConfig::with_budget(n, 0) };
        let h = ConstraintHandler::default();
        let mut s = RandomStream::new(seed);
        let mut state = init_swarm_with(&p, &c, &h, &mut s).unwrap();
        for b in &state.bats {
            prop_assert!((0.0..=100.0).contains(&b.frequency));
            prop_assert!((1.0..=2.0).contains(&b.loudness));
            prop_assert!((0.0..=1.0).contains(&b.initial_pulse_rate));
            prop_assert_eq!(b.pulse_rate, 0.0);
        }
        let loud0: Vec<f64> = state.bats.iter().map(|b| b.loudness).collect();
        for _ in 0..25 {
            let prev: Vec<(f64, usize)> = state.bats.iter().map(|b| (b.loudness, b.acceptances)).collect();
            step(&mut state, &p, &c, &h, &mut s).unwrap();
            for ((b, (a_prev, k_prev)), a0) in state.bats.iter().zip(prev).zip(&loud0) {
                prop_assert!((0.0..=100.0).contains(&b.frequency));
                if b.acceptances == k_prev {
                    prop_assert_eq!(b.loudness, a_prev);
                } else {
                    prop_assert_eq!(b.acceptances, k_prev + 1);
                    prop_assert_eq!(b.loudness, 0.9 * a_prev);
                }
                let expected = a0 * 0.9f64.powi(b.acceptances as i32);
                prop_assert!((b.loudness - expected).abs() <= 1e-12 * a0);
                let r = b.initial_pulse_rate * (1.0 - (-0.9 * b.acceptances as f64).exp());
                prop_assert_eq!(b.pulse_rate, r);
                prop_assert!(p.contains(&b.position));
            }
        }
        prop_assert_eq!(state.evaluation_count, n * 26);
    }
}
