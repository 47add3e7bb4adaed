use num_complex::Complex64;

use super::cluster::ClusterSpec;
use super::operators::{annihilation_op, identity_op, CMatrix};
use crate::{Error, Result};

/// Absolute tolerance on `max |H − H†|` (GHz).
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense Hermitian operator; construction rejects non-Hermitian input.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    entries: CMatrix,
}

impl HermitianMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::config("Hamiltonian must be square"));
        }
        let deviation = hermitian_deviation(&entries);
        if deviation.is_nan() || deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm()
    }
}

pub(crate) fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for r in 0..n {
        for c in r..n {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

/// Kronecker product with the given local operators at their sites and identity elsewhere.
fn kron_sites(locals: &[(usize, &CMatrix)], n_sites: usize, levels: usize) -> CMatrix {
    let id = identity_op(levels);
    let mut out = CMatrix::identity(1, 1);
    for site in 0..n_sites {
        let op = locals
            .iter()
            .find(|(s, _)| *s == site)
            .map_or(&id, |(_, m)| *m);
        out = out.kronecker(op);
    }
    out
}

/// Drive-frame Hamiltonian of a qubit cluster sharing one coupler.
///
/// ```text
/// H = Σ_i (ω_i − ω_d) n_i + η_i/2 a_i†a_i†a_i a_i
///   + (ω_c − ω_d) n_c + η_c/2 a_c†a_c†a_c a_c
///   + Σ_i J_ic (a_i† a_c + a_i a_c†)
///   + Σ_i (ε_i a_i + ε_i* a_i†),      ε_i = |ε_i| e^{i φ_i}
/// ```
///
/// The same frame frequency is subtracted from the coupler. Without active
/// drives `ω_d = 0` and this is the lab-frame Hamiltonian.
pub fn build_cluster_hamiltonian(spec: &ClusterSpec) -> Result<HermitianMatrix> {
    spec.validate_structure()?;
    let levels = spec.levels();
    let n_sites = spec.n_modes();
    let coupler_site = n_sites - 1;
    let dim = spec.dim();
    let omega_d = spec.frame_frequency();

    let a = annihilation_op(levels)?;
    let ad = a.adjoint();
    let number = &ad * &a;
    let kerr = &ad * &ad * &a * &a;

    let mut h = CMatrix::zeros(dim, dim);
    let add_oscillator = |h: &mut CMatrix, site: usize, omega: f64, eta: f64| {
        let local = number.scale(omega - omega_d) + kerr.scale(eta / 2.0);
        *h += kron_sites(&[(site, &local)], n_sites, levels);
    };
    for (site, q) in spec.qubits.iter().enumerate() {
        add_oscillator(&mut h, site, q.omega, q.eta);
    }
    add_oscillator(&mut h, coupler_site, spec.coupler.frequency()?, spec.coupler.eta_c);

    for c in &spec.couplings {
        if c.strength == 0.0 {
            continue;
        }
        let hop = kron_sites(&[(c.qubit, &ad), (coupler_site, &a)], n_sites, levels);
        let exchange = &hop + hop.adjoint();
        h += exchange.scale(c.strength);
    }

    for d in spec.active_drives() {
        let eps = Complex64::from_polar(d.amplitude, d.phase);
        let local = a.map(|x| x * eps) + ad.map(|x| x * eps.conj());
        h += kron_sites(&[(d.target, &local)], n_sites, levels);
    }

    HermitianMatrix::new(h)
}
