use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use zz_lattice::lattice::{grover_circuit, Circuit};
use zz_lattice::router::{benchmark_grover, route, verify_routed, BenchConfig};
use zz_lattice::spectrum::{
    pair_peak_matrix, sweep_2d, sweep_coupler, sweep_phase, zz_rate, ClusterSpec, SweepResult,
};
use zz_lattice::stark::{stark_report, StarkInputs};
use zz_lattice::Error as CoreError;

use crate::args::*;
use crate::config::{parse_cluster_config, ClusterFile, ParsedCluster};
use crate::error::CliError;
use crate::output::{format_float, format_opt, to_value, Artifact};

/// Files written by a successful run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub csv: PathBuf,
    pub json: PathBuf,
}

/// Effective inputs of one run; serialized into every artifact.
struct Context {
    command: &'static str,
    seed: u64,
    parameters: Value,
    cluster: Option<ClusterSpec>,
    defaults_applied: Vec<String>,
}

impl Context {
    fn new<P: Serialize>(command: &'static str, seed: u64, params: &P) -> Result<Self, CliError> {
        Ok(Self {
            command,
            seed,
            parameters: to_value(params)?,
            cluster: None,
            defaults_applied: Vec::new(),
        })
    }

    fn load_cluster(&mut self, arg: &ClusterArg) -> Result<ClusterSpec, CliError> {
        let ParsedCluster { spec, defaults_applied } = parse_cluster_config(&arg.cluster)?;
        self.defaults_applied.extend(defaults_applied);
        Ok(spec)
    }

    /// Gives both pair members a drive when they lack one.
    fn ensure_pair_drives(&mut self, spec: &ClusterSpec, p: usize, q: usize) -> Result<ClusterSpec, CliError> {
        let (out, added) = spec.with_default_pair_drives(p, q)?;
        for d in added {
            self.defaults_applied.push(format!(
                "drive on qubit {} (amp_GHz {}, phase_rad 0, omega_d_GHz {})",
                d.target, d.amplitude, d.omega_d
            ));
        }
        Ok(out)
    }

    fn artifact(self, header: &[&str], result: Value) -> Artifact {
        let cluster = self
            .cluster
            .as_ref()
            .map(|s| serde_json::to_value(ClusterFile::from_spec(s)).expect("cluster file serializes"));
        Artifact::new(
            header,
            json!({
                "tool": "zz-lattice",
                "version": env!("CARGO_PKG_VERSION"),
                "command": self.command,
                "seed": self.seed,
                "parameters": self.parameters,
                "cluster": cluster,
                "defaults_applied": self.defaults_applied,
                "result": result,
            }),
        )
    }
}

/// Runs one parsed command line and writes its artifacts.
pub fn run(cli: &Cli) -> Result<RunOutput, CliError> {
    let artifact = build(cli)?;
    let prefix = cli.output.clone().unwrap_or_else(|| PathBuf::from(cli.command.name()));
    let (csv, json) = artifact.write(&prefix)?;
    Ok(RunOutput { csv, json })
}

/// Computes the artifact for a command without touching the filesystem
/// (beyond reading inputs).
pub fn build(cli: &Cli) -> Result<Artifact, CliError> {
    let name = cli.command.name();
    let seed = cli.seed;
    match &cli.command {
        Command::SweepPhase(a) => {
            let mut ctx = Context::new(name, seed, a)?;
            let (p, q) = pair_of(&a.pair)?;
            let mut spec = ctx.load_cluster(&a.cluster)?;
            if let Some(w) = a.omega_c {
                spec = spec.with_coupler_frequency(w);
            }
            let spec = ctx.ensure_pair_drives(&spec, p, q)?;
            let phases = phase_grid(a.points)?;
            let result = sweep_phase(&spec, (p, q), &phases)?;
            ctx.cluster = Some(spec);
            sweep_artifact(ctx, &result)
        }
        Command::SweepCoupler(a) => {
            let mut ctx = Context::new(name, seed, a)?;
            let (p, q) = pair_of(&a.pair)?;
            let spec = ctx.load_cluster(&a.cluster)?;
            let omegas = linspace(a.from, a.to, a.points)?;
            let result = sweep_coupler(&spec, (p, q), &omegas, a.phase)?;
            ctx.cluster = Some(spec);
            sweep_artifact(ctx, &result)
        }
        Command::Sweep2d(a) => {
            let mut ctx = Context::new(name, seed, a)?;
            let (p, q) = pair_of(&a.pair)?;
            let spec = ctx.load_cluster(&a.cluster)?;
            let spec = ctx.ensure_pair_drives(&spec, p, q)?;
            let omegas = linspace(a.omega_from, a.omega_to, a.omega_points)?;
            let phases = phase_grid(a.phase_points)?;
            let result = sweep_2d(&spec, (p, q), &omegas, &phases)?;
            ctx.cluster = Some(spec);
            sweep_artifact(ctx, &result)
        }
        Command::PairMatrix(a) => {
            let mut ctx = Context::new(name, seed, a)?;
            let mut spec = ctx.load_cluster(&a.cluster)?;
            for q in 1..spec.n_qubits() {
                spec = ctx.ensure_pair_drives(&spec, 0, q)?;
            }
            let matrix = pair_peak_matrix(&spec, &phase_grid(a.points)?)?;
            let n = spec.n_qubits();
            if (0..n).all(|p| (p + 1..n).all(|q| matrix.peaks[p][q].is_none())) {
                return Err(CliError::Physics("dressed-state labeling failed for every pair".into()));
            }
            ctx.cluster = Some(spec);
            let result = to_value(&matrix)?;
            let mut art = ctx.artifact(&["p", "q", "peak_zeta_MHz", "peak_phase_rad"], result);
            for p in 0..n {
                for q in p + 1..n {
                    art.push(vec![
                        p.to_string(),
                        q.to_string(),
                        format_opt(matrix.peaks[p][q]),
                        format_opt(matrix.peak_phase[p][q]),
                    ]);
                }
            }
            Ok(art)
        }
        Command::Zz(a) => {
            let mut ctx = Context::new(name, seed, a)?;
            let spec = ctx.load_cluster(&a.cluster)?;
            let pairs = match &a.pair {
                Some(pair) => vec![pair_of(pair)?],
                None => {
                    let n = spec.n_qubits();
                    (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect()
                }
            };
            let mut rows = Vec::new();
            for &(p, q) in &pairs {
                let (zeta, status) = match zz_rate(&spec, (p, q)) {
                    Ok(z) => (Some(z), "ok"),
                    Err(CoreError::LabelingAmbiguous { .. }) => (None, "labeling_failed"),
                    Err(e) => return Err(e.into()),
                };
                rows.push(json!({"p": p, "q": q, "zeta_MHz": zeta, "status": status}));
            }
            if rows.iter().all(|r| r["zeta_MHz"].is_null()) {
                return Err(CliError::Physics("dressed-state labeling failed for every pair".into()));
            }
            ctx.cluster = Some(spec);
            let mut art = ctx.artifact(&["p", "q", "zeta_MHz", "status"], Value::Array(rows.clone()));
            for r in rows {
                art.push(vec![
                    r["p"].to_string(),
                    r["q"].to_string(),
                    format_opt(r["zeta_MHz"].as_f64()),
                    r["status"].as_str().unwrap_or_default().to_string(),
                ]);
            }
            Ok(art)
        }
        Command::Stark(a) => {
            let ctx = Context::new(name, seed, a)?;
            let report = stark_report(&StarkInputs::new(a.eps0, a.eps1, a.epst, a.delta))?;
            let header = ["delta0", "delta1", "mu", "zeta_diff_form", "zeta_mu_form", "zeta_target_drive", "validity_flags"];
            let row = vec![
                format_float(report.delta0),
                format_float(report.delta1),
                format_float(report.mu),
                format_float(report.zeta_difference_form),
                format_float(report.zeta_mu_form),
                format_float(report.zeta_with_target_drive),
                report.validity_flags.join(";"),
            ];
            let mut art = ctx.artifact(&header, to_value(&report)?);
            art.push(row);
            Ok(art)
        }
        Command::BenchGrover(a) => {
            let ctx = Context::new(name, seed, a)?;
            if a.seeds == 0 {
                return Err(CliError::validation("--seeds must be at least 1"));
            }
            if a.topologies.is_empty() {
                return Err(CliError::validation("--topologies is empty"));
            }
            let config = BenchConfig {
                n_min: *a.n.start(),
                n_max: *a.n.end(),
                topologies: a.topologies.clone(),
                seeds: (seed..seed + a.seeds).collect(),
                contention: a.contention.into(),
            };
            let report = benchmark_grover(&config)?;
            let header = [
                "n",
                "topology",
                "seed",
                "contention",
                "depth",
                "depth_2q_only",
                "depth_alt_contention",
                "swaps",
                "verified",
            ];
            let mut art = ctx.artifact(&header, to_value(&report)?);
            for r in &report.rows {
                art.push(vec![
                    r.n.to_string(),
                    r.topology.to_string(),
                    r.seed.to_string(),
                    r.contention.to_string(),
                    r.depth.to_string(),
                    r.depth_2q_only.to_string(),
                    r.depth_alt_contention.to_string(),
                    r.swaps.to_string(),
                    r.verified.to_string(),
                ]);
            }
            Ok(art)
        }
        Command::GenMap(a) => {
            let ctx = Context::new(name, seed, a)?;
            let map = a.topology.map_for(a.n)?;
            let result = json!({
                "topology": a.topology,
                "n_qubits": map.n_qubits(),
                "n_edges": map.edges().len(),
                "max_degree": map.max_degree(),
                "map": to_value(&map)?,
            });
            let mut art = ctx.artifact(&["a", "b", "cluster"], result);
            for &(x, y) in map.edges() {
                let cluster = map.cluster_of(x, y).map(|c| c.to_string()).unwrap_or_default();
                art.push(vec![x.to_string(), y.to_string(), cluster]);
            }
            Ok(art)
        }
        Command::Verify(a) => {
            let ctx = Context::new(name, seed, a)?;
            let circuit = match &a.circuit {
                Some(path) => read_circuit(path)?,
                None => grover_circuit(a.n, a.marked.as_deref(), a.iterations)?,
            };
            let map = a.topology.map_for(circuit.n_qubits())?;
            let routed = route(&circuit, &map, None, seed)?;
            let two_qubit: Vec<_> = routed.circuit.gates().iter().filter(|g| g.is_two_qubit()).collect();
            let off_edge = two_qubit.iter().filter(|g| !map.has_edge(g.qubits()[0], g.qubits()[1])).count();
            if off_edge > 0 {
                return Err(CliError::Verification(format!("{off_edge} two-qubit gates off the coupling map")));
            }
            let v = verify_routed(&circuit, &routed)?;
            if !v.passed {
                return Err(CliError::Verification(format!(
                    "routed circuit differs from the original (max deviation {:e})",
                    v.max_deviation
                )));
            }
            let header = [
                "n",
                "topology",
                "seed",
                "gates",
                "two_qubit_gates",
                "swaps",
                "passed",
                "max_deviation",
                "exhaustive",
            ];
            let row = vec![
                circuit.n_qubits().to_string(),
                a.topology.to_string(),
                seed.to_string(),
                routed.circuit.len().to_string(),
                two_qubit.len().to_string(),
                routed.swaps_inserted.to_string(),
                v.passed.to_string(),
                format_float(v.max_deviation),
                v.exhaustive.to_string(),
            ];
            let result = json!({"verification": to_value(&v)?, "routed": to_value(&routed)?});
            let mut art = ctx.artifact(&header, result);
            art.push(row);
            Ok(art)
        }
    }
}

fn sweep_artifact(ctx: Context, result: &SweepResult) -> Result<Artifact, CliError> {
    let status = |i: usize| to_value(&result.status[i]).map(|v| v.as_str().unwrap_or_default().to_string());
    let mut art = match &result.axis2 {
        None => {
            let mut art = ctx.artifact(&[&result.axis1.name, "zeta_MHz", "status"], to_value(result)?);
            for (i, &x) in result.axis1.values.iter().enumerate() {
                art.push(vec![format_float(x), format_opt(result.zeta[i]), status(i)?]);
            }
            art
        }
        Some(axis2) => {
            let mut art = ctx.artifact(&[&result.axis1.name, &axis2.name, "zeta_MHz", "status"], to_value(result)?);
            let w = axis2.values.len();
            for (r, &x) in result.axis1.values.iter().enumerate() {
                for (c, &y) in axis2.values.iter().enumerate() {
                    let i = r * w + c;
                    art.push(vec![format_float(x), format_float(y), format_opt(result.zeta[i]), status(i)?]);
                }
            }
            art
        }
    };
    art.json["zero_crossings"] = to_value(&result.zero_crossings)?;
    Ok(art)
}

fn read_circuit(path: &Path) -> Result<Circuit, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::validation(format!("invalid circuit {}: {e}", path.display())))
}

fn pair_of(pair: &[usize]) -> Result<(usize, usize), CliError> {
    match *pair {
        [p, q] if p != q => Ok((p, q)),
        _ => Err(CliError::validation(format!("--pair needs two distinct qubits, got {pair:?}"))),
    }
}

/// `points` phases evenly spaced over [0, 2π).
pub fn phase_grid(points: usize) -> Result<Vec<f64>, CliError> {
    if points == 0 {
        return Err(CliError::validation("phase grid is empty"));
    }
    Ok((0..points).map(|i| 2.0 * PI * i as f64 / points as f64).collect())
}

/// `points` values from `from` to `to` inclusive.
pub fn linspace(from: f64, to: f64, points: usize) -> Result<Vec<f64>, CliError> {
    match points {
        0 => Err(CliError::validation("frequency grid is empty")),
        1 => Ok(vec![from]),
        _ => Ok((0..points)
            .map(|i| from + (to - from) * i as f64 / (points - 1) as f64)
            .collect()),
    }
}
