use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::route::{route, RoutedCircuit};
use super::schedule::schedule_circuit;
use super::verify::verify_routed;
use crate::lattice::{grover_circuit, Circuit, CouplingMap, Topology};
use crate::{Error, Result};

/// Which topologies are scheduled with shared-coupler contention.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContentionMode {
    /// On for the hybrid lattice, off elsewhere.
    #[default]
    PerTopology,
    On,
    Off,
}

impl ContentionMode {
    pub fn applies_to(self, topology: Topology) -> bool {
        match self {
            ContentionMode::PerTopology => topology == Topology::Hybrid,
            ContentionMode::On => true,
            ContentionMode::Off => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub topologies: Vec<Topology>,
    pub seeds: Vec<u64>,
    pub contention: ContentionMode,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            n_min: 2,
            n_max: 6,
            topologies: vec![Topology::Hybrid, Topology::HeavyHex],
            seeds: (0..8).collect(),
            contention: ContentionMode::PerTopology,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthRow {
    pub n: usize,
    pub topology: Topology,
    pub seed: u64,
    pub contention: bool,
    pub depth: usize,
    pub depth_2q_only: usize,
    /// Depth with the contention setting flipped.
    pub depth_alt_contention: usize,
    pub swaps: usize,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologySummary {
    pub n: usize,
    pub topology: Topology,
    pub contention: bool,
    pub min_depth: usize,
    pub mean_depth: f64,
    pub best_seed: u64,
    pub min_depth_2q_only: usize,
    pub min_depth_alt_contention: usize,
    pub min_swaps: usize,
}

/// Hybrid against heavy-hex at one problem size, from min-over-seeds depths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reduction {
    pub n: usize,
    pub hybrid_depth: usize,
    pub heavyhex_depth: usize,
    pub reduction_pct: f64,
    pub reduction_2q_only_pct: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthReport {
    pub config: BenchConfig,
    pub rows: Vec<DepthRow>,
    pub summaries: Vec<TopologySummary>,
    pub reductions: Vec<Reduction>,
}

fn edges_respected(routed: &RoutedCircuit, map: &CouplingMap) -> bool {
    routed
        .circuit
        .gates()
        .iter()
        .filter(|g| g.is_two_qubit())
        .all(|g| map.has_edge(g.qubits()[0], g.qubits()[1]))
}

fn run_one(
    circuit: &Circuit,
    map: &CouplingMap,
    topology: Topology,
    seed: u64,
    contention: bool,
) -> Result<DepthRow> {
    let n = circuit.n_qubits();
    let routed = route(circuit, map, None, seed)?;
    if !edges_respected(&routed, map) {
        return Err(Error::Verification(format!(
            "n={n} {topology} seed={seed}: two-qubit gate off the coupling map"
        )));
    }
    let v = verify_routed(circuit, &routed)?;
    if !v.passed {
        return Err(Error::Verification(format!(
            "n={n} {topology} seed={seed}: routed circuit deviates by {:e}",
            v.max_deviation
        )));
    }
    Ok(DepthRow {
        n,
        topology,
        seed,
        contention,
        depth: schedule_circuit(&routed.circuit, map, contention, false).depth,
        depth_2q_only: schedule_circuit(&routed.circuit, map, contention, true).depth,
        depth_alt_contention: schedule_circuit(&routed.circuit, map, !contention, false).depth,
        swaps: routed.swaps_inserted,
        verified: true,
    })
}

fn summarize(rows: &[DepthRow]) -> TopologySummary {
    let best = rows
        .iter()
        .min_by_key(|r| (r.depth, r.seed))
        .expect("summary over nonempty rows");
    TopologySummary {
        n: best.n,
        topology: best.topology,
        contention: best.contention,
        min_depth: best.depth,
        mean_depth: rows.iter().map(|r| r.depth as f64).sum::<f64>() / rows.len() as f64,
        best_seed: best.seed,
        min_depth_2q_only: rows.iter().map(|r| r.depth_2q_only).min().unwrap_or(0),
        min_depth_alt_contention: rows.iter().map(|r| r.depth_alt_contention).min().unwrap_or(0),
        min_swaps: rows.iter().map(|r| r.swaps).min().unwrap_or(0),
    }
}

fn pct(reference: usize, value: usize) -> f64 {
    if reference == 0 {
        0.0
    } else {
        100.0 * (reference as f64 - value as f64) / reference as f64
    }
}

/// Route Grover circuits for every (n, topology, seed), verify each routed
/// circuit, and compare min-over-seeds depths. Any verification failure
/// aborts the run.
pub fn benchmark_grover(config: &BenchConfig) -> Result<DepthReport> {
    if config.topologies.is_empty() || config.seeds.is_empty() {
        return Err(Error::config("benchmark needs at least one topology and one seed"));
    }
    if config.n_min > config.n_max {
        return Err(Error::config(format!(
            "empty problem-size range {}..{}",
            config.n_min, config.n_max
        )));
    }
    let sizes: Vec<usize> = (config.n_min..=config.n_max).collect();
    let circuits = sizes
        .iter()
        .map(|&n| grover_circuit(n, None, None))
        .collect::<Result<Vec<_>>>()?;
    let mut jobs = Vec::new();
    for (ci, &n) in sizes.iter().enumerate() {
        for &t in &config.topologies {
            let map = t.map_for(n)?;
            for &seed in &config.seeds {
                jobs.push((ci, t, map.clone(), seed));
            }
        }
    }
    let rows = jobs
        .par_iter()
        .map(|(ci, t, map, seed)| {
            run_one(&circuits[*ci], map, *t, *seed, config.contention.applies_to(*t))
        })
        .collect::<Result<Vec<_>>>()?;

    let summaries: Vec<TopologySummary> = rows.chunks(config.seeds.len()).map(summarize).collect();
    let find = |n: usize, t: Topology| summaries.iter().find(|s| s.n == n && s.topology == t);
    let reductions = sizes
        .iter()
        .filter_map(|&n| {
            let (hy, hh) = (find(n, Topology::Hybrid)?, find(n, Topology::HeavyHex)?);
            Some(Reduction {
                n,
                hybrid_depth: hy.min_depth,
                heavyhex_depth: hh.min_depth,
                reduction_pct: pct(hh.min_depth, hy.min_depth),
                reduction_2q_only_pct: pct(hh.min_depth_2q_only, hy.min_depth_2q_only),
            })
        })
        .collect();
    Ok(DepthReport {
        config: config.clone(),
        rows,
        summaries,
        reductions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_benchmark_shape() {
        let config = BenchConfig { n_min: 2, n_max: 3, seeds: vec![0, 1], ..Default::default() };
        let report = benchmark_grover(&config).unwrap();
        assert_eq!(report.rows.len(), 2 * 2 * 2);
        assert_eq!(report.summaries.len(), 4);
        assert_eq!(report.reductions.len(), 2);
        assert!(report.rows.iter().all(|r| r.verified));
        let n2 = &report.reductions[0];
        assert_eq!(n2.hybrid_depth, n2.heavyhex_depth);
    }

    #[test]
    fn rows_are_ordered() {
        let config = BenchConfig { n_min: 2, n_max: 4, seeds: vec![3, 1], ..Default::default() };
        let report = benchmark_grover(&config).unwrap();
        let keys: Vec<_> = report.rows.iter().map(|r| (r.n, r.topology, r.seed)).collect();
        let mut expected = Vec::new();
        for n in 2..=4 {
            for t in [Topology::Hybrid, Topology::HeavyHex] {
                for s in [3, 1] {
                    expected.push((n, t, s));
                }
            }
        }
        assert_eq!(keys, expected);
    }

    #[test]
    fn rejects_empty_inputs() {
        let mut c = BenchConfig::default();
        c.seeds.clear();
        assert!(benchmark_grover(&c).is_err());
        let c = BenchConfig { n_min: 5, n_max: 4, ..Default::default() };
        assert!(benchmark_grover(&c).is_err());
    }

    #[test]
    fn contention_modes() {
        assert!(ContentionMode::PerTopology.applies_to(Topology::Hybrid));
        assert!(!ContentionMode::PerTopology.applies_to(Topology::HeavyHex));
        assert!(ContentionMode::On.applies_to(Topology::HeavyHex));
        assert!(!ContentionMode::Off.applies_to(Topology::Hybrid));
    }
}
