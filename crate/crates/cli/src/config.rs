//! Cluster configuration files.
//!
//! The on-disk schema uses explicit units in every key:
//!
//! ```json
//! {
//!   "qubits": [{"omega_GHz": 5.24, "eta_GHz": -0.2, "levels": 3}, ...],
//!   "coupler": {"omega_c_GHz": 6.0},
//!   "eta_c_GHz": -0.2,
//!   "couplings": [{"qubit": 0, "J_GHz": 0.08}, ...],
//!   "drives": [{"target": 0, "amp_GHz": 0.02, "phase_rad": 0.0, "omega_d_GHz": 5.14}]
//! }
//! ```
//!
//! A flux-tuned coupler is given as `{"omega_c_max_GHz": 6.8, "flux": 0.3}`
//! instead of `omega_c_GHz`. Omitted optional values are filled from the
//! defaults below and listed in [`ParsedCluster::defaults_applied`].

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use zz_lattice::spectrum::{
    ClusterSpec, Coupling, CouplerSpec, DriveSpec, TransmonSpec, DEFAULT_COUPLING_GHZ, DEFAULT_LEVELS,
};

use crate::error::CliError;

pub const DEFAULT_ETA_C_GHZ: f64 = -0.2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitEntry {
    #[serde(rename = "omega_GHz")]
    pub omega_ghz: f64,
    #[serde(rename = "eta_GHz")]
    pub eta_ghz: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplerEntry {
    #[serde(rename = "omega_c_GHz", default, skip_serializing_if = "Option::is_none")]
    pub omega_c_ghz: Option<f64>,
    #[serde(rename = "omega_c_max_GHz", default, skip_serializing_if = "Option::is_none")]
    pub omega_c_max_ghz: Option<f64>,
    #[serde(rename = "omega_c_min_GHz", default, skip_serializing_if = "Option::is_none")]
    pub omega_c_min_ghz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flux: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingEntry {
    pub qubit: usize,
    #[serde(rename = "J_GHz", default, skip_serializing_if = "Option::is_none")]
    pub j_ghz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveEntry {
    pub target: usize,
    #[serde(rename = "amp_GHz")]
    pub amp_ghz: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_rad: Option<f64>,
    #[serde(rename = "omega_d_GHz")]
    pub omega_d_ghz: f64,
}

/// Cluster file as written on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClusterFile {
    pub qubits: Vec<QubitEntry>,
    pub coupler: CouplerEntry,
    #[serde(rename = "eta_c_GHz", default, skip_serializing_if = "Option::is_none")]
    pub eta_c_ghz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub couplings: Option<Vec<CouplingEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drives: Option<Vec<DriveEntry>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCluster {
    pub spec: ClusterSpec,
    /// One human-readable entry per default that was filled in.
    pub defaults_applied: Vec<String>,
}

/// Reads a cluster file. Output artifacts are accepted too: their embedded
/// `cluster` block is used, so a run can be repeated from its own output.
pub fn parse_cluster_config(path: &Path) -> Result<ParsedCluster, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
    parse_cluster_str(&text)
}

pub fn parse_cluster_str(text: &str) -> Result<ParsedCluster, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::validation(format!("malformed JSON: {e}")))?;
    let value = match value.get("cluster") {
        Some(inner) if inner.is_object() => inner.clone(),
        _ => value,
    };
    let file: ClusterFile = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        CliError::validation(format!("invalid field '{path}': {}", e.into_inner()))
    })?;
    file.into_spec()
}

impl ClusterFile {
    pub fn into_spec(self) -> Result<ParsedCluster, CliError> {
        let mut defaults = Vec::new();

        let qubits: Vec<TransmonSpec> = self
            .qubits
            .iter()
            .enumerate()
            .map(|(i, q)| {
                let levels = q.levels.unwrap_or_else(|| {
                    defaults.push(format!("qubits[{i}].levels = {DEFAULT_LEVELS}"));
                    DEFAULT_LEVELS
                });
                TransmonSpec { omega: q.omega_ghz, eta: q.eta_ghz, levels }
            })
            .collect();

        let eta_c = self.eta_c_ghz.unwrap_or_else(|| {
            defaults.push(format!("eta_c_GHz = {DEFAULT_ETA_C_GHZ}"));
            DEFAULT_ETA_C_GHZ
        });
        let c = &self.coupler;
        let mut coupler = match (c.omega_c_ghz, c.omega_c_max_ghz, c.flux) {
            (Some(w), None, None) => CouplerSpec::fixed(w, eta_c),
            (None, Some(max), Some(flux)) => CouplerSpec::flux_tuned(max, flux, eta_c),
            _ => {
                return Err(CliError::validation(
                    "invalid field 'coupler': give either omega_c_GHz or omega_c_max_GHz with flux",
                ))
            }
        };
        coupler.omega_c_min = c.omega_c_min_ghz;

        let couplings = match &self.couplings {
            Some(list) => list
                .iter()
                .enumerate()
                .map(|(i, e)| Coupling {
                    qubit: e.qubit,
                    strength: e.j_ghz.unwrap_or_else(|| {
                        defaults.push(format!("couplings[{i}].J_GHz = {DEFAULT_COUPLING_GHZ}"));
                        DEFAULT_COUPLING_GHZ
                    }),
                })
                .collect(),
            None => {
                defaults.push(format!("couplings = every qubit at J_GHz {DEFAULT_COUPLING_GHZ}"));
                (0..qubits.len())
                    .map(|qubit| Coupling { qubit, strength: DEFAULT_COUPLING_GHZ })
                    .collect()
            }
        };

        let drives = self
            .drives
            .iter()
            .flatten()
            .enumerate()
            .map(|(i, d)| DriveSpec {
                target: d.target,
                amplitude: d.amp_ghz,
                phase: d.phase_rad.unwrap_or_else(|| {
                    defaults.push(format!("drives[{i}].phase_rad = 0"));
                    0.0
                }),
                omega_d: d.omega_d_ghz,
            })
            .collect();

        let spec = ClusterSpec { qubits, coupler, couplings, drives };
        spec.validate().map_err(CliError::from)?;
        Ok(ParsedCluster { spec, defaults_applied: defaults })
    }

    /// Fully explicit file for `spec`: every optional value is written out.
    pub fn from_spec(spec: &ClusterSpec) -> Self {
        let c = &spec.coupler;
        let coupler = match c.flux {
            Some(flux) => CouplerEntry {
                omega_c_ghz: None,
                omega_c_max_ghz: c.omega_c_max,
                omega_c_min_ghz: c.omega_c_min,
                flux: Some(flux),
            },
            None => CouplerEntry {
                omega_c_ghz: Some(c.omega_c),
                omega_c_min_ghz: c.omega_c_min,
                ..CouplerEntry::default()
            },
        };
        ClusterFile {
            qubits: spec
                .qubits
                .iter()
                .map(|q| QubitEntry { omega_ghz: q.omega, eta_ghz: q.eta, levels: Some(q.levels) })
                .collect(),
            coupler,
            eta_c_ghz: Some(c.eta_c),
            couplings: Some(
                spec.couplings
                    .iter()
                    .map(|c| CouplingEntry { qubit: c.qubit, j_ghz: Some(c.strength) })
                    .collect(),
            ),
            drives: Some(
                spec.drives
                    .iter()
                    .map(|d| DriveEntry {
                        target: d.target,
                        amp_ghz: d.amplitude,
                        phase_rad: Some(d.phase),
                        omega_d_ghz: d.omega_d,
                    })
                    .collect(),
            ),
        }
    }
}

pub fn serialize_cluster(spec: &ClusterSpec) -> String {
    serde_json::to_string_pretty(&ClusterFile::from_spec(spec)).expect("cluster file serializes")
}
