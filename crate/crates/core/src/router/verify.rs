use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::layout::Layout;
use super::route::RoutedCircuit;
use crate::lattice::{basis_state, simulate_from, Circuit, MAX_UNITARY_QUBITS};
use crate::{Error, Result};

pub const VERIFY_TOL: f64 = 1e-9;
pub const RANDOM_BASIS_SAMPLES: usize = 50;
const SAMPLE_SEED: u64 = 0x5eed_ba51;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub passed: bool,
    pub max_deviation: f64,
    pub columns_checked: usize,
    pub exhaustive: bool,
}

/// Index with bit `l` moved to bit `layout.physical(l)`.
fn to_physical(index: usize, layout: &Layout) -> usize {
    (0..layout.len())
        .filter(|&l| index >> l & 1 == 1)
        .fold(0, |acc, l| acc | 1 << layout.physical(l))
}

fn to_logical(index: usize, layout: &Layout) -> usize {
    (0..layout.len())
        .filter(|&l| index >> layout.physical(l) & 1 == 1)
        .fold(0, |acc, l| acc | 1 << l)
}

/// Check `U_routed = P_final · U_original · P_initial⁻¹` up to one global phase.
///
/// Registers up to eight physical qubits are compared column by column over
/// the full basis; larger ones on a fixed pseudo-random sample of basis states.
pub fn verify_routed(original: &Circuit, routed: &RoutedCircuit) -> Result<Verification> {
    let n = routed.circuit.n_qubits();
    if routed.initial_layout.len() != n || routed.final_layout.len() != n {
        return Err(Error::config("layout size does not match the routed register"));
    }
    let original = original.widened(n)?;
    let dim = 1usize << n;
    let exhaustive = n <= MAX_UNITARY_QUBITS;
    let columns: Vec<usize> = if exhaustive {
        (0..dim).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        (0..RANDOM_BASIS_SAMPLES).map(|_| rng.random_range(0..dim)).collect()
    };

    let mut phase: Option<Complex64> = None;
    let mut max_deviation = 0.0f64;
    let mut expected = vec![Complex64::new(0.0, 0.0); dim];
    for &j in &columns {
        let logical_in = to_logical(j, &routed.initial_layout);
        let logical_out = simulate_from(&original, basis_state(n, logical_in)?)?;
        for (y, a) in logical_out.into_iter().enumerate() {
            expected[to_physical(y, &routed.final_layout)] = a;
        }
        let actual = simulate_from(&routed.circuit, basis_state(n, j)?)?;
        let phase = *phase.get_or_insert_with(|| {
            let overlap: Complex64 = expected.iter().zip(&actual).map(|(e, a)| e.conj() * a).sum();
            Complex64::from_polar(1.0, overlap.arg())
        });
        for (e, a) in expected.iter().zip(&actual) {
            max_deviation = max_deviation.max((a - e * phase).norm());
        }
    }
    Ok(Verification {
        passed: max_deviation < VERIFY_TOL,
        max_deviation,
        columns_checked: columns.len(),
        exhaustive,
    })
}
