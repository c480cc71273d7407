use lqfa_core::{
    build_m1, build_mell, closed_form_m3, event_table, expand, mell_dim, recurrence_event,
    recurrence_step, RecurrenceState,
};

#[test]
fn m1_matches_formula() {
    for n in [2, 3, 5, 8] {
        let t = event_table(build_m1(n).unwrap().automaton(), 10);
        assert_eq!(t.get(0), Some(0.0));
        for k in 1..=10 {
            assert!((t.get(k).unwrap() - (n as f64 - 1.0) / n as f64).abs() <= 1e-10);
        }
    }
}

#[test]
fn sizes_follow_geometric_sum() {
    for n in 2..=5 {
        let mut m = build_m1(n).unwrap();
        for ell in 1..=4 {
            assert_eq!(m.dim(), mell_dim(n, ell).unwrap());
            assert_eq!(m.accepting().len(), (n - 1).pow(ell as u32));
            if n > 2 {
                assert_eq!(m.dim(), ((n - 1).pow(ell as u32 + 1) - 1) / (n - 2));
            }
            m = expand(&m).unwrap();
        }
    }
    let m = build_mell(2, 4).unwrap();
    assert_eq!(m.dim(), 5);
    let t = event_table(m.automaton(), 8);
    assert!((0..4).all(|k| t.get(k).unwrap() == 0.0));
}

#[test]
fn m3_matches_closed_form() {
    for n in 2..=4 {
        let t = event_table(build_mell(n, 3).unwrap().automaton(), 15);
        for k in 0..=15 {
            assert!(
                (t.get(k).unwrap() - closed_form_m3(n, k)).abs() <= 1e-9,
                "n={n} k={k}"
            );
        }
        let r = (n as f64 - 1.0) / n as f64;
        assert!((t.get(3).unwrap() - r.powi(3)).abs() <= 1e-10);
    }
}

#[test]
fn simulation_matches_recurrence() {
    let mut grid: Vec<(usize, usize)> =
        (2..=4).flat_map(|n| (1..=3).map(move |l| (n, l))).collect();
    grid.extend([(2, 4), (2, 5), (3, 4)]);
    for (n, ell) in grid {
        let t = event_table(build_mell(n, ell).unwrap().automaton(), 20);
        for k in 0..=20 {
            let want = recurrence_event(n, ell, k).unwrap();
            assert!(
                (t.get(k).unwrap() - want).abs() <= 1e-9,
                "n={n} l={ell} k={k}"
            );
        }
    }
}

#[test]
fn group_probabilities_are_uniform() {
    // Every state of a depth group carries the same probability, equal to
    // the recurrence value; q_0 shares x_1.
    let (n, ell) = (3, 3);
    let m = build_mell(n, ell).unwrap();
    let a = m.automaton();
    let mut config = a.initial_configuration();
    let mut s = RecurrenceState::new(n, ell).unwrap();
    for k in 1..=8 {
        config = a.read_symbol(&config);
        if k > 1 {
            s = recurrence_step(&s);
        }
        let lqfa_core::Configuration::Leaf(mixed) = &config else {
            panic!("leaf expected")
        };
        let mut prob = vec![0.0; m.dim()];
        for (w, st) in mixed.members() {
            for &(i, amp) in st.entries() {
                prob[i] += w * amp.norm_sqr();
            }
        }
        for (h, g) in m.groups().iter().enumerate() {
            let want = s.x(h.max(1));
            for &i in g {
                assert!((prob[i] - want).abs() < 1e-12, "k={k} h={h}");
            }
        }
    }
}

#[test]
fn recurrence_hand_values() {
    let s = RecurrenceState::new(2, 2).unwrap();
    assert_eq!(s.values(), &[0.5, 0.0]);
    let s = recurrence_step(&s);
    assert_eq!(s.values(), &[0.375, 0.25]);
    for n in 2..=6 {
        let mut s = RecurrenceState::new(n, 4).unwrap();
        for _ in 0..30 {
            assert!((s.mass() - 1.0).abs() <= 1e-12);
            s = s.step();
        }
    }
}

#[test]
fn recurrence_agrees_with_closed_form() {
    for n in 2..=10 {
        for k in 0..=40 {
            let a = recurrence_event(n, 3, k).unwrap();
            assert!((a - closed_form_m3(n, k)).abs() < 1e-12, "n={n} k={k}");
        }
    }
    assert!((recurrence_event(3, 3, 4).unwrap() - 104.0 / 243.0).abs() < 1e-15);
}
