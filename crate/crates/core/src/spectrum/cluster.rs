use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const DEFAULT_LEVELS: usize = 3;
/// Qubit–coupler exchange strength used when a configuration omits it.
pub const DEFAULT_COUPLING_GHZ: f64 = 0.08;
pub const DEFAULT_DRIVE_AMPLITUDE_GHZ: f64 = 0.02;
/// Default drive sits this far below the reference qubit of a pair.
pub const DEFAULT_DRIVE_DETUNING_GHZ: f64 = 0.1;

/// Duffing-oscillator transmon, frequencies in GHz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmonSpec {
    pub omega: f64,
    pub eta: f64,
    pub levels: usize,
}

impl TransmonSpec {
    pub fn new(omega: f64, eta: f64) -> Self {
        Self {
            omega,
            eta,
            levels: DEFAULT_LEVELS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::config("omega must be positive"));
        }
        if !(self.eta.is_finite() && self.eta < 0.0) {
            return Err(Error::config("eta must be negative"));
        }
        if self.levels < 2 {
            return Err(Error::InvalidTruncation(self.levels));
        }
        Ok(())
    }
}

/// Flux-tunable coupler. When `flux` is set the frequency comes from the
/// SQUID dispersion with `omega_c_max`, otherwise `omega_c` is used directly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplerSpec {
    pub omega_c: f64,
    pub eta_c: f64,
    pub omega_c_max: Option<f64>,
    pub omega_c_min: Option<f64>,
    pub flux: Option<f64>,
}

impl CouplerSpec {
    pub fn fixed(omega_c: f64, eta_c: f64) -> Self {
        Self {
            omega_c,
            eta_c,
            omega_c_max: None,
            omega_c_min: None,
            flux: None,
        }
    }

    pub fn flux_tuned(omega_c_max: f64, flux: f64, eta_c: f64) -> Self {
        Self {
            omega_c: omega_c_max,
            eta_c,
            omega_c_max: Some(omega_c_max),
            omega_c_min: None,
            flux: Some(flux),
        }
    }

    /// Effective coupler frequency in GHz.
    pub fn frequency(&self) -> Result<f64> {
        match self.flux {
            Some(flux) => flux_to_frequency(self, flux),
            None => Ok(self.omega_c),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta_c.is_finite() && self.eta_c < 0.0) {
            return Err(Error::config("eta_c must be negative"));
        }
        let w = self.frequency()?;
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::config(format!("coupler frequency {w} GHz must be positive")));
        }
        if self.flux.is_some() {
            let max = self.omega_c_max.unwrap_or(f64::INFINITY);
            let min = self.omega_c_min.unwrap_or(0.0);
            if w < min || w > max {
                return Err(Error::config(format!(
                    "coupler frequency {w} GHz outside [{min}, {max}]"
                )));
            }
        }
        Ok(())
    }
}

/// Symmetric-SQUID transmon dispersion `ω_c(Φ) = ω_max·sqrt(|cos(πΦ)|)`.
pub fn flux_to_frequency(coupler: &CouplerSpec, flux: f64) -> Result<f64> {
    let max = coupler
        .omega_c_max
        .ok_or_else(|| Error::config("flux map requires omega_c_max"))?;
    Ok(max * (PI * flux).cos().abs().sqrt())
}

/// Off-resonant drive on one transmon; `amplitude` is |ε|/2π in GHz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveSpec {
    pub target: usize,
    pub amplitude: f64,
    pub phase: f64,
    pub omega_d: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coupling {
    pub qubit: usize,
    pub strength: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterSpec {
    pub qubits: Vec<TransmonSpec>,
    pub coupler: CouplerSpec,
    pub couplings: Vec<Coupling>,
    pub drives: Vec<DriveSpec>,
}

impl ClusterSpec {
    /// Uniform coupling `j` from every qubit to the coupler, no drives.
    pub fn new(qubits: Vec<TransmonSpec>, coupler: CouplerSpec, j: f64) -> Self {
        let couplings = (0..qubits.len())
            .map(|qubit| Coupling { qubit, strength: j })
            .collect();
        Self {
            qubits,
            coupler,
            couplings,
            drives: Vec::new(),
        }
    }

    /// Two fixed-frequency qubits on one coupler (5.24 / 5.02 GHz,
    /// anharmonicities −215 / −209 MHz), coupler at 6.0 GHz.
    pub fn pair_unit_cell() -> Self {
        Self::new(
            vec![TransmonSpec::new(5.24, -0.215), TransmonSpec::new(5.02, -0.209)],
            CouplerSpec::fixed(6.0, -0.2),
            DEFAULT_COUPLING_GHZ,
        )
    }

    /// Four fixed-frequency qubits sharing one coupler at 6.2 GHz.
    pub fn quad_unit_cell() -> Self {
        Self::new(
            vec![
                TransmonSpec::new(5.02, -0.207),
                TransmonSpec::new(5.23, -0.214),
                TransmonSpec::new(5.39, -0.201),
                TransmonSpec::new(5.58, -0.211),
            ],
            CouplerSpec::fixed(6.2, -0.2),
            DEFAULT_COUPLING_GHZ,
        )
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    /// Qubits plus the coupler.
    pub fn n_modes(&self) -> usize {
        self.qubits.len() + 1
    }

    pub fn levels(&self) -> usize {
        self.qubits.first().map_or(DEFAULT_LEVELS, |q| q.levels)
    }

    pub fn dim(&self) -> usize {
        self.levels().pow(self.n_modes() as u32)
    }

    pub fn with_levels(mut self, levels: usize) -> Self {
        for q in &mut self.qubits {
            q.levels = levels;
        }
        self
    }

    /// Fixes the coupler frequency directly, dropping any flux bias.
    pub fn with_coupler_frequency(mut self, omega_c: f64) -> Self {
        self.coupler.omega_c = omega_c;
        self.coupler.flux = None;
        self
    }

    pub fn with_drive(mut self, drive: DriveSpec) -> Self {
        self.drives.retain(|d| d.target != drive.target);
        self.drives.push(drive);
        self
    }

    /// Drives with nonzero amplitude.
    pub fn active_drives(&self) -> impl Iterator<Item = &DriveSpec> {
        self.drives.iter().filter(|d| d.amplitude > 0.0)
    }

    /// Rotating-frame frequency: the shared drive frequency, or 0 (lab frame)
    /// when no drive is active.
    pub fn frame_frequency(&self) -> f64 {
        self.active_drives().next().map_or(0.0, |d| d.omega_d)
    }

    pub fn drive_on(&self, target: usize) -> Option<&DriveSpec> {
        self.drives.iter().find(|d| d.target == target)
    }

    pub fn coupling_of(&self, qubit: usize) -> f64 {
        self.couplings
            .iter()
            .filter(|c| c.qubit == qubit)
            .map(|c| c.strength)
            .sum()
    }

    pub fn check_qubit(&self, index: usize) -> Result<()> {
        if index >= self.qubits.len() {
            return Err(Error::IndexOutOfRange {
                what: "qubit",
                index,
                len: self.qubits.len(),
            });
        }
        Ok(())
    }

    /// Structural consistency required to assemble a Hamiltonian.
    pub fn validate_structure(&self) -> Result<()> {
        if self.qubits.is_empty() {
            return Err(Error::config("cluster has no qubits"));
        }
        let levels = self.levels();
        if levels < 2 {
            return Err(Error::InvalidTruncation(levels));
        }
        if self.qubits.iter().any(|q| q.levels != levels) {
            return Err(Error::config("all transmons must share the same truncation levels"));
        }
        for c in &self.couplings {
            self.check_qubit(c.qubit)?;
            if !(c.strength.is_finite() && c.strength >= 0.0) {
                return Err(Error::config(format!(
                    "coupling strength for qubit {} must be non-negative",
                    c.qubit
                )));
            }
        }
        for (i, d) in self.drives.iter().enumerate() {
            self.check_qubit(d.target)?;
            if !(d.amplitude.is_finite() && d.amplitude >= 0.0) {
                return Err(Error::config("drive amplitude must be non-negative"));
            }
            if !d.phase.is_finite() || !d.omega_d.is_finite() {
                return Err(Error::config("drive phase and frequency must be finite"));
            }
            if self.drives[..i].iter().any(|e| e.target == d.target) {
                return Err(Error::config(format!("qubit {} has more than one drive", d.target)));
            }
        }
        let mut active = self.active_drives();
        if let Some(first) = active.next() {
            if active.any(|d| (d.omega_d - first.omega_d).abs() > 1e-12) {
                return Err(Error::config("all drives must share one drive frequency"));
            }
        }
        Ok(())
    }

    /// Structural checks plus the physical invariants (ω > 0, η < 0, 2–4 qubits).
    pub fn validate(&self) -> Result<()> {
        if !(2..=4).contains(&self.qubits.len()) {
            return Err(Error::config(format!(
                "cluster must have 2-4 qubits, got {}",
                self.qubits.len()
            )));
        }
        for q in &self.qubits {
            q.validate()?;
        }
        self.coupler.validate()?;
        self.validate_structure()
    }

    /// Sets the pair's relative drive phase: `p` at 0, `q` at `phi`.
    pub fn with_pair_phase(&self, p: usize, q: usize, phi: f64) -> Result<Self> {
        self.check_qubit(p)?;
        self.check_qubit(q)?;
        let mut out = self.clone();
        for (target, phase) in [(p, 0.0), (q, phi)] {
            let drive = out
                .drives
                .iter_mut()
                .find(|d| d.target == target)
                .ok_or_else(|| Error::config(format!("qubit {target} has no drive")))?;
            drive.phase = phase;
        }
        Ok(out)
    }

    /// Keeps only drives whose target is listed.
    pub fn with_drives_only_on(&self, targets: &[usize]) -> Self {
        let mut out = self.clone();
        out.drives.retain(|d| targets.contains(&d.target));
        out
    }

    /// Adds default drives to pair members that lack one. The drive frequency
    /// is shared with any existing drive, otherwise placed
    /// [`DEFAULT_DRIVE_DETUNING_GHZ`] below qubit `p`. Returns the drives added.
    pub fn with_default_pair_drives(&self, p: usize, q: usize) -> Result<(Self, Vec<DriveSpec>)> {
        self.check_qubit(p)?;
        self.check_qubit(q)?;
        let omega_d = self
            .drives
            .first()
            .map(|d| d.omega_d)
            .unwrap_or(self.qubits[p].omega - DEFAULT_DRIVE_DETUNING_GHZ);
        let mut out = self.clone();
        let mut added = Vec::new();
        for target in [p, q] {
            if out.drive_on(target).is_none() {
                let d = DriveSpec {
                    target,
                    amplitude: DEFAULT_DRIVE_AMPLITUDE_GHZ,
                    phase: 0.0,
                    omega_d,
                };
                out.drives.push(d);
                added.push(d);
            }
        }
        Ok((out, added))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flux_sweet_spot_and_frustration() {
        let c = CouplerSpec::flux_tuned(6.8, 0.0, -0.2);
        assert!((flux_to_frequency(&c, 0.0).unwrap() - 6.8).abs() < 1e-12);
        assert!(flux_to_frequency(&c, 0.5).unwrap().abs() < 1e-7);
    }

    #[test]
    fn flux_formula_value() {
        let c = CouplerSpec::flux_tuned(6.8, 0.3, -0.2);
        let expect = 6.8 * (0.3 * PI).cos().sqrt();
        assert!((expect - 5.21336).abs() < 1e-5);
        assert!((c.frequency().unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn flux_without_max_is_config_error() {
        let c = CouplerSpec::fixed(6.0, -0.2);
        assert!(matches!(flux_to_frequency(&c, 0.1), Err(Error::Config(_))));
    }

    #[test]
    fn positive_anharmonicity_rejected() {
        let err = TransmonSpec::new(5.0, 0.2).validate().unwrap_err();
        assert!(err.to_string().contains("eta must be negative"));
    }

    #[test]
    fn mixed_truncation_rejected() {
        let mut spec = ClusterSpec::pair_unit_cell();
        spec.qubits[1].levels = 4;
        assert!(matches!(spec.validate_structure(), Err(Error::Config(_))));
    }

    #[test]
    fn coupling_index_checked() {
        let mut spec = ClusterSpec::pair_unit_cell();
        spec.couplings.push(Coupling { qubit: 5, strength: 0.1 });
        assert!(matches!(
            spec.validate_structure(),
            Err(Error::IndexOutOfRange { index: 5, .. })
        ));
    }

    #[test]
    fn drive_frequencies_must_agree() {
        let spec = ClusterSpec::pair_unit_cell()
            .with_drive(DriveSpec { target: 0, amplitude: 0.02, phase: 0.0, omega_d: 5.1 })
            .with_drive(DriveSpec { target: 1, amplitude: 0.02, phase: 0.0, omega_d: 5.2 });
        assert!(matches!(spec.validate_structure(), Err(Error::Config(_))));
    }

    #[test]
    fn default_pair_drives_fill_missing_members() {
        let spec = ClusterSpec::pair_unit_cell();
        let (driven, added) = spec.with_default_pair_drives(0, 1).unwrap();
        assert_eq!(added.len(), 2);
        assert!((driven.frame_frequency() - 5.14).abs() < 1e-12);
        assert!(driven.validate().is_ok());
        let (again, added) = driven.with_default_pair_drives(0, 1).unwrap();
        assert!(added.is_empty());
        assert_eq!(again, driven);
    }

    #[test]
    fn pair_phase_requires_drives() {
        let spec = ClusterSpec::pair_unit_cell();
        assert!(matches!(spec.with_pair_phase(0, 1, 1.0), Err(Error::Config(_))));
    }
}
