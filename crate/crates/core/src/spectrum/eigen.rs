use nalgebra::{DVector, SymmetricEigen};

use super::hamiltonian::HermitianMatrix;
use super::operators::CMatrix;
use crate::{Error, Result};

/// Full eigendecomposition; column `k` of `states` belongs to `energies[k]`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub energies: Vec<f64>,
    pub states: CMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// `max_k ‖H v_k − E_k v_k‖₂`.
    pub fn max_residual(&self, h: &HermitianMatrix) -> f64 {
        let hv = h.entries() * &self.states;
        (0..self.dim())
            .map(|k| (hv.column(k) - self.states.column(k).scale(self.energies[k])).norm())
            .fold(0.0, f64::max)
    }
}

pub fn diagonalize(h: &HermitianMatrix) -> Result<Spectrum> {
    let eig = SymmetricEigen::try_new(h.entries().clone(), f64::EPSILON, 0)
        .ok_or(Error::NoConvergence)?;
    let mut order: Vec<usize> = (0..h.dim()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]).then(i.cmp(&j)));

    let energies: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let columns: Vec<DVector<_>> = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).normalize())
        .collect();
    let states = CMatrix::from_columns(&columns);
    Ok(Spectrum { energies, states })
}
