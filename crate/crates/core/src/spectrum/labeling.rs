use super::eigen::Spectrum;
use crate::{Error, Result};

/// A gated label must overlap its eigenstate by strictly more than this.
pub const OVERLAP_GATE: f64 = 0.5;
/// Round-off margin so that an exact 50/50 hybridization is rejected.
const GATE_SLACK: f64 = 1e-9;

/// Hilbert-space index of a bare product state; site 0 is the most significant digit.
pub fn bare_index(digits: &[usize], levels: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * levels + d)
}

pub fn bare_digits(mut index: usize, n_sites: usize, levels: usize) -> Vec<usize> {
    let mut digits = vec![0; n_sites];
    for d in digits.iter_mut().rev() {
        *d = index % levels;
        index /= levels;
    }
    digits
}

/// Indices of every bare state with qubit digits in {0,1} and the coupler
/// (last site) in its ground state.
pub fn computational_labels(n_sites: usize, levels: usize) -> Vec<usize> {
    let n_qubits = n_sites - 1;
    (0..1usize << n_qubits)
        .map(|bits| {
            let digits: Vec<usize> = (0..n_sites)
                .map(|s| if s < n_qubits { (bits >> (n_qubits - 1 - s)) & 1 } else { 0 })
                .collect();
            bare_index(&digits, levels)
        })
        .collect()
}

/// Bijection from bare product states to dressed eigenstates.
#[derive(Debug, Clone)]
pub struct DressedLabeling {
    n_sites: usize,
    levels: usize,
    eigen_of_bare: Vec<usize>,
    overlaps: Vec<f64>,
}

impl DressedLabeling {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Eigenstate index assigned to the bare state with the given Hilbert index.
    pub fn eigen_index(&self, bare: usize) -> usize {
        self.eigen_of_bare[bare]
    }

    pub fn eigen_index_of(&self, digits: &[usize]) -> usize {
        self.eigen_of_bare[bare_index(digits, self.levels)]
    }

    pub fn overlap(&self, bare: usize) -> f64 {
        self.overlaps[bare]
    }

    pub fn overlap_of(&self, digits: &[usize]) -> f64 {
        self.overlaps[bare_index(digits, self.levels)]
    }

    /// Eigenstate index per bare index.
    pub fn assignment(&self) -> &[usize] {
        &self.eigen_of_bare
    }

    pub fn overlaps(&self) -> &[f64] {
        &self.overlaps
    }
}

/// Greedy maximum-overlap labeling, gated on the full computational subspace.
pub fn label_dressed(spectrum: &Spectrum, n_sites: usize, levels: usize) -> Result<DressedLabeling> {
    label_dressed_gated(spectrum, n_sites, levels, &computational_labels(n_sites, levels))
}

/// Greedy maximum-overlap labeling; only the bare indices in `gated` are
/// required to clear [`OVERLAP_GATE`].
///
/// Pairs `(bare, eigen)` are bound in descending order of `|⟨eigen|bare⟩|²`;
/// equal overlaps go to the lower eigenstate index first.
pub fn label_dressed_gated(
    spectrum: &Spectrum,
    n_sites: usize,
    levels: usize,
    gated: &[usize],
) -> Result<DressedLabeling> {
    let dim = spectrum.dim();
    if levels < 2 {
        return Err(Error::InvalidTruncation(levels));
    }
    if levels.checked_pow(n_sites as u32) != Some(dim) {
        return Err(Error::config(format!(
            "spectrum dimension {dim} != {levels}^{n_sites}"
        )));
    }

    let mut candidates: Vec<(f64, usize, usize)> = Vec::with_capacity(dim * dim);
    for eigen in 0..dim {
        let column = spectrum.states.column(eigen);
        for bare in 0..dim {
            candidates.push((column[bare].norm_sqr(), eigen, bare));
        }
    }
    candidates.sort_unstable_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });

    let mut eigen_of_bare = vec![usize::MAX; dim];
    let mut overlaps = vec![0.0; dim];
    let mut eigen_taken = vec![false; dim];
    let mut remaining = dim;
    for (overlap, eigen, bare) in candidates {
        if eigen_taken[eigen] || eigen_of_bare[bare] != usize::MAX {
            continue;
        }
        eigen_taken[eigen] = true;
        eigen_of_bare[bare] = eigen;
        overlaps[bare] = overlap;
        remaining -= 1;
        if remaining == 0 {
            break;
        }
    }

    for &bare in gated {
        if overlaps[bare] <= OVERLAP_GATE + GATE_SLACK {
            return Err(Error::LabelingAmbiguous {
                label: bare_digits(bare, n_sites, levels),
                overlap: overlaps[bare],
            });
        }
    }

    Ok(DressedLabeling {
        n_sites,
        levels,
        eigen_of_bare,
        overlaps,
    })
}
