use super::cluster::ClusterSpec;
use super::eigen::diagonalize;
use super::hamiltonian::build_cluster_hamiltonian;
use super::labeling::{bare_index, label_dressed_gated};
use crate::{Error, Result};

/// Dressed energies (GHz) of the pair's four computational states, all other
/// qubits and the coupler in their ground state. The first digit is the
/// lower-index pair member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairEnergies {
    pub e00: f64,
    pub e10: f64,
    pub e01: f64,
    pub e11: f64,
    pub min_overlap: f64,
}

impl PairEnergies {
    /// `(E11 − E10) − (E01 − E00)` in MHz.
    pub fn zeta_mhz(&self) -> f64 {
        ((self.e11 - self.e10) - (self.e01 - self.e00)) * 1e3
    }
}

fn check_pair(spec: &ClusterSpec, (p, q): (usize, usize)) -> Result<()> {
    spec.check_qubit(p)?;
    spec.check_qubit(q)?;
    if p == q {
        return Err(Error::config(format!("pair members must differ, got ({p}, {q})")));
    }
    Ok(())
}

/// Builds, diagonalizes and labels; the 0.5-overlap gate is applied to the
/// four pair states only.
pub fn pair_energies(spec: &ClusterSpec, pair: (usize, usize)) -> Result<PairEnergies> {
    check_pair(spec, pair)?;
    // canonical order makes ζ(p, q) and ζ(q, p) bit-identical
    let (p, q) = (pair.0.min(pair.1), pair.0.max(pair.1));
    let levels = spec.levels();
    let n_sites = spec.n_modes();
    let index = |np: usize, nq: usize| {
        let mut digits = vec![0; n_sites];
        digits[p] = np;
        digits[q] = nq;
        bare_index(&digits, levels)
    };
    let labels = [index(0, 0), index(1, 0), index(0, 1), index(1, 1)];

    let h = build_cluster_hamiltonian(spec)?;
    let spectrum = diagonalize(&h)?;
    let labeling = label_dressed_gated(&spectrum, n_sites, levels, &labels)?;

    let energy = |bare: usize| spectrum.energies[labeling.eigen_index(bare)];
    Ok(PairEnergies {
        e00: energy(labels[0]),
        e10: energy(labels[1]),
        e01: energy(labels[2]),
        e11: energy(labels[3]),
        min_overlap: labels
            .iter()
            .map(|&b| labeling.overlap(b))
            .fold(f64::INFINITY, f64::min),
    })
}

/// ZZ rate of `pair` in MHz (drives included when present in `spec`).
pub fn zz_rate(spec: &ClusterSpec, pair: (usize, usize)) -> Result<f64> {
    Ok(pair_energies(spec, pair)?.zeta_mhz())
}

/// Relative change `|ζ(N) − ζ(N')| / |ζ(N')|` when the truncation is raised
/// from the spec's `N` to `levels_hi`.
pub fn truncation_drift(spec: &ClusterSpec, pair: (usize, usize), levels_hi: usize) -> Result<f64> {
    if levels_hi <= spec.levels() {
        return Err(Error::config("comparison truncation must exceed the base truncation"));
    }
    let base = zz_rate(spec, pair)?;
    let fine = zz_rate(&spec.clone().with_levels(levels_hi), pair)?;
    Ok((base - fine).abs() / fine.abs())
}
