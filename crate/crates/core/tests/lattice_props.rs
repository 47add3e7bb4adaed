use num_complex::Complex64;
use proptest::prelude::*;
use zz_lattice::lattice::*;

fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
    let q = 0..n;
    prop_oneof![
        q.clone().prop_map(Gate::h),
        q.clone().prop_map(Gate::x),
        q.clone().prop_map(Gate::z),
        q.clone().prop_map(Gate::t),
        q.clone().prop_map(Gate::tdg),
        (q.clone(), -7.0..7.0f64).prop_map(|(q, t)| Gate::rz(q, t)),
        (q.clone(), q.clone())
            .prop_filter("distinct", |(a, b)| a != b)
            .prop_map(|(a, b)| Gate::cx(a, b)),
        (q.clone(), q)
            .prop_filter("distinct", |(a, b)| a != b)
            .prop_map(|(a, b)| Gate::swap(a, b)),
    ]
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    (2usize..=6).prop_flat_map(|n| {
        prop::collection::vec(arb_gate(n), 0..60)
            .prop_map(move |gates| Circuit::from_gates(n, gates).unwrap())
    })
}

fn grover_probability(n: usize, k: usize) -> f64 {
    let theta = (2f64).powf(-(n as f64) / 2.0).asin();
    (((2 * k + 1) as f64) * theta).sin().powi(2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn statevector_norm_is_preserved(c in arb_circuit()) {
        let s = simulate_statevector(&c).unwrap();
        let norm: f64 = s.iter().map(|a| a.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_undoes_circuit(c in arb_circuit()) {
        let mut full = c.clone();
        full.extend(c.inverse().gates().iter().cloned()).unwrap();
        let s = simulate_statevector(&full).unwrap();
        prop_assert!((s[0] - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn circuit_json_round_trips(c in arb_circuit()) {
        let text = serde_json::to_string(&c).unwrap();
        let back: Circuit = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn grover_matches_closed_form(n in 2usize..=6, k in 0usize..=4, marked_seed in any::<u64>()) {
        let marked_index = (marked_seed % (1 << n)) as usize;
        let marked: String = (0..n).rev().map(|b| if marked_index >> b & 1 == 1 { '1' } else { '0' }).collect();
        let c = grover_circuit(n, Some(&marked), Some(k)).unwrap();
        prop_assert!(c.is_decomposed());
        let p = simulate_statevector(&c).unwrap()[marked_index].norm_sqr();
        prop_assert!((p - grover_probability(n, k)).abs() < 1e-6, "n={} k={} p={}", n, k, p);
    }
}

/// MCX by direct bit manipulation on each basis state.
fn mcx_image(index: usize, n_controls: usize) -> usize {
    let controls = (1usize << n_controls) - 1;
    if index & controls == controls {
        index ^ 1 << n_controls
    } else {
        index
    }
}

#[test]
fn four_control_mcx_on_every_basis_state() {
    let c = Circuit::from_gates(5, mcx_decompose(4).unwrap()).unwrap();
    assert!(c.is_decomposed());
    let mut phase: Option<Complex64> = None;
    for j in 0..32 {
        let out = simulate_from(&c, basis_state(5, j).unwrap()).unwrap();
        let target = mcx_image(j, 4);
        let amp = out[target];
        let ph = *phase.get_or_insert(amp);
        assert!((amp - ph).norm() < 1e-9, "basis {j}");
        let rest: f64 = out.iter().enumerate().filter(|&(i, _)| i != target).map(|(_, a)| a.norm()).sum();
        assert!(rest < 1e-9);
    }
}

#[test]
fn toffoli_on_every_basis_state() {
    let c = Circuit::from_gates(3, mcx_decompose(2).unwrap()).unwrap();
    for j in 0..8 {
        let out = simulate_from(&c, basis_state(3, j).unwrap()).unwrap();
        assert!((out[mcx_image(j, 2)] - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }
}

#[test]
fn three_qubit_grover_probability() {
    let c = grover_circuit(3, Some("101"), Some(2)).unwrap();
    let p = simulate_statevector(&c).unwrap()[5].norm_sqr();
    assert!((p - 0.9453).abs() < 1e-3);
    assert!((p - grover_probability(3, 2)).abs() < 1e-9);
}

#[test]
fn generated_maps_are_connected_and_loop_free() {
    let mut maps = vec![];
    for n in 2..=40 {
        maps.push(hybrid_map_for(n).unwrap());
        maps.push(heavy_hex_map(n).unwrap());
        maps.push(all_to_all_map(n.min(12)).unwrap());
    }
    for (r, c) in [(1, 1), (1, 5), (3, 4), (6, 6)] {
        maps.push(hybrid_grid_map(r, c).unwrap());
    }
    for m in maps {
        assert_eq!(m.bfs_order(0).len(), m.n_qubits());
        assert!(m.edges().iter().all(|&(a, b)| a < b && b < m.n_qubits()));
    }
}
