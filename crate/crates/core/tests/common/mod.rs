//! Brute-force reference pipeline shared by the integration tests.
//!
//! Matrix elements are written one basis pair at a time from Fock digits, and
//! the eigenproblem is solved by cyclic Jacobi rotations on the real
//! symmetric embedding `[[A, −B], [B, A]]` of `H = A + iB`.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use zz_lattice::spectrum::{ClusterSpec, CouplerSpec, DriveSpec, TransmonSpec};

pub type Dense = Vec<Vec<Complex64>>;

fn digits_of(mut index: usize, sites: usize, levels: usize) -> Vec<usize> {
    let mut d = vec![0; sites];
    for slot in d.iter_mut().rev() {
        *slot = index % levels;
        index /= levels;
    }
    d
}

fn index_of(digits: &[usize], levels: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * levels + x)
}

pub fn oracle_hamiltonian(spec: &ClusterSpec) -> Dense {
    let levels = spec.qubits[0].levels;
    let nq = spec.qubits.len();
    let sites = nq + 1;
    let dim = levels.pow(sites as u32);
    let frame = spec
        .drives
        .iter()
        .find(|d| d.amplitude > 0.0)
        .map_or(0.0, |d| d.omega_d);
    let mut freq: Vec<f64> = spec.qubits.iter().map(|q| q.omega).collect();
    let mut anh: Vec<f64> = spec.qubits.iter().map(|q| q.eta).collect();
    freq.push(spec.coupler.frequency().unwrap());
    anh.push(spec.coupler.eta_c);

    let mut h = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for col in 0..dim {
        let n = digits_of(col, sites, levels);
        let mut diag = 0.0;
        for s in 0..sites {
            let k = n[s] as f64;
            diag += (freq[s] - frame) * k + anh[s] / 2.0 * k * (k - 1.0);
        }
        h[col][col] += diag;

        let c = nq;
        for coupling in &spec.couplings {
            let q = coupling.qubit;
            // a_q† a_c
            if n[c] > 0 && n[q] + 1 < levels {
                let mut m = n.clone();
                m[c] -= 1;
                m[q] += 1;
                let amp = coupling.strength * ((n[c] as f64) * (n[q] as f64 + 1.0)).sqrt();
                h[index_of(&m, levels)][col] += amp;
            }
            // a_q a_c†
            if n[q] > 0 && n[c] + 1 < levels {
                let mut m = n.clone();
                m[q] -= 1;
                m[c] += 1;
                let amp = coupling.strength * ((n[q] as f64) * (n[c] as f64 + 1.0)).sqrt();
                h[index_of(&m, levels)][col] += amp;
            }
        }

        for d in spec.drives.iter().filter(|d| d.amplitude > 0.0) {
            let t = d.target;
            let eps = Complex64::from_polar(d.amplitude, d.phase);
            if n[t] > 0 {
                let mut m = n.clone();
                m[t] -= 1;
                h[index_of(&m, levels)][col] += eps * (n[t] as f64).sqrt();
            }
            if n[t] + 1 < levels {
                let mut m = n.clone();
                m[t] += 1;
                h[index_of(&m, levels)][col] += eps.conj() * (n[t] as f64 + 1.0).sqrt();
            }
        }
    }
    h
}

/// Cyclic Jacobi on a real symmetric matrix; returns (eigenvalues, column eigenvectors).
pub fn jacobi_symmetric(rows: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = rows.len();
    let mut a: Vec<f64> = rows.into_iter().flatten().collect();
    // v is stored transposed: row k holds eigenvector k
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let (akp, akq) = (a[p * n + k], a[q * n + k]);
                    let (np, nq) = (c * akp - s * akq, s * akp + c * akq);
                    a[p * n + k] = np;
                    a[k * n + p] = np;
                    a[q * n + k] = nq;
                    a[k * n + q] = nq;
                }
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                let (vp, vq) = v.split_at_mut(q * n);
                let vp = &mut vp[p * n..p * n + n];
                let vq = &mut vq[..n];
                for k in 0..n {
                    let (x, y) = (vp[k], vq[k]);
                    vp[k] = c * x - s * y;
                    vq[k] = s * x + c * y;
                }
            }
        }
    }
    let evals = (0..n).map(|i| a[i * n + i]).collect();
    let vecs = (0..n).map(|i| (0..n).map(|k| v[k * n + i]).collect()).collect();
    (evals, vecs)
}

/// Eigenpairs of a complex Hermitian matrix, ascending. Vectors are returned as rows.
pub fn oracle_eigh(h: &Dense) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let n = h.len();
    let mut big = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let (re, im) = (h[i][j].re, h[i][j].im);
            big[i][j] = re;
            big[i + n][j + n] = re;
            big[i][j + n] = -im;
            big[i + n][j] = im;
        }
    }
    let (evals, vecs) = jacobi_symmetric(big);
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| evals[a].total_cmp(&evals[b]));

    // each eigenvalue appears twice (v and iv); keep an orthonormal complex set
    let mut energies = Vec::with_capacity(n);
    let mut states: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for k in order {
        let mut z: Vec<Complex64> = (0..n).map(|i| Complex64::new(vecs[i][k], vecs[i + n][k])).collect();
        for s in &states {
            let proj: Complex64 = s.iter().zip(&z).map(|(a, b)| a.conj() * b).sum();
            for (zi, si) in z.iter_mut().zip(s) {
                *zi -= proj * si;
            }
        }
        let norm = z.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.5 {
            z.iter_mut().for_each(|x| *x /= norm);
            energies.push(evals[k]);
            states.push(z);
        }
        if states.len() == n {
            break;
        }
    }
    (energies, states)
}

/// ζ in MHz, labeling each pair state by its single best-overlap eigenvector.
pub fn oracle_zeta(spec: &ClusterSpec, p: usize, q: usize) -> f64 {
    let levels = spec.qubits[0].levels;
    let sites = spec.qubits.len() + 1;
    let (energies, states) = oracle_eigh(&oracle_hamiltonian(spec));
    let energy = |bp: usize, bq: usize| {
        let mut digits = vec![0; sites];
        digits[p] = bp;
        digits[q] = bq;
        let bare = index_of(&digits, levels);
        let best = (0..states.len())
            .max_by(|&a, &b| states[a][bare].norm_sqr().total_cmp(&states[b][bare].norm_sqr()))
            .unwrap();
        energies[best]
    };
    1000.0 * (energy(1, 1) - energy(1, 0) - energy(0, 1) + energy(0, 0))
}

/// Two or three transmons spaced 0.25–0.4 GHz apart, coupler 1.3–2 GHz above,
/// and half the time weak common-tone drives below the lowest qubit.
pub fn random_dispersive_spec(rng: &mut impl Rng) -> ClusterSpec {
    let n = rng.random_range(2..=3);
    let mut omega = rng.random_range(4.8..5.0);
    let mut qubits = Vec::new();
    for _ in 0..n {
        qubits.push(TransmonSpec::new(omega, rng.random_range(-0.24..-0.19)));
        omega += rng.random_range(0.25..0.4);
    }
    let coupler = CouplerSpec::fixed(rng.random_range(6.3..6.9), -0.2);
    let mut spec = ClusterSpec::new(qubits, coupler, 0.0);
    for c in &mut spec.couplings {
        c.strength = rng.random_range(0.03..0.08);
    }
    if rng.random_bool(0.5) {
        let omega_d = spec.qubits[0].omega - 0.15;
        for target in 0..n {
            spec = spec.with_drive(DriveSpec {
                target,
                amplitude: rng.random_range(0.005..0.02),
                phase: rng.random_range(0.0..2.0 * PI),
                omega_d,
            });
        }
    }
    spec
}
