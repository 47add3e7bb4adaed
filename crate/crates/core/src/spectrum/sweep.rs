use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cluster::ClusterSpec;
use super::zz::zz_rate;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub name: String,
    pub values: Vec<f64>,
}

impl SweepAxis {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    Ok,
    /// Dressed-state labeling failed the overlap gate.
    LabelingFailed,
    /// Coupler frequency inside the qubit band.
    Collision,
}

/// Interpolated sign change of ζ. For 2D sweeps `row` is the index into
/// `axis1` and `value` lies on `axis2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroCrossing {
    pub row: Option<usize>,
    pub value: f64,
}

/// ζ (MHz) over a 1D or 2D control grid, row-major with `axis1` outermost.
/// Failed points are `None`, never interpolated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axis1: SweepAxis,
    pub axis2: Option<SweepAxis>,
    pub zeta: Vec<Option<f64>>,
    pub status: Vec<PointStatus>,
    pub zero_crossings: Vec<ZeroCrossing>,
}

impl SweepResult {
    pub fn row_len(&self) -> usize {
        self.axis2.as_ref().map_or(self.axis1.values.len(), |a| a.values.len())
    }

    pub fn n_rows(&self) -> usize {
        if self.axis2.is_some() {
            self.axis1.values.len()
        } else {
            1
        }
    }

    pub fn row(&self, i: usize) -> &[Option<f64>] {
        let w = self.row_len();
        &self.zeta[i * w..(i + 1) * w]
    }

    pub fn n_ok(&self) -> usize {
        self.zeta.iter().filter(|z| z.is_some()).count()
    }
}

/// Linear-interpolation roots between adjacent sign-changing samples; an
/// exact zero sample is reported at its own abscissa.
pub fn zero_crossings(xs: &[f64], ys: &[Option<f64>]) -> Vec<f64> {
    let mut out = Vec::new();
    for (i, (x, y)) in xs.iter().zip(ys).enumerate() {
        let Some(y) = *y else { continue };
        if y == 0.0 {
            out.push(*x);
            continue;
        }
        if let (Some(&x1), Some(Some(y1))) = (xs.get(i + 1), ys.get(i + 1)) {
            if y * y1 < 0.0 {
                out.push(x + (x1 - x) * y / (y - y1));
            }
        }
    }
    out
}

fn evaluate(spec: &ClusterSpec, pair: (usize, usize)) -> Result<(Option<f64>, PointStatus)> {
    match zz_rate(spec, pair) {
        Ok(z) => Ok((Some(z), PointStatus::Ok)),
        Err(Error::LabelingAmbiguous { .. }) => Ok((None, PointStatus::LabelingFailed)),
        Err(e) => Err(e),
    }
}

/// Applies the pair phase when both members are driven; leaves an undriven pair untouched.
fn phased(spec: &ClusterSpec, (p, q): (usize, usize), phi: f64) -> Result<ClusterSpec> {
    match (spec.drive_on(p), spec.drive_on(q)) {
        (Some(_), Some(_)) => spec.with_pair_phase(p, q, phi),
        (None, None) => Ok(spec.clone()),
        _ => Err(Error::config(format!(
            "pair ({p}, {q}) must have drives on both members or neither"
        ))),
    }
}

fn in_qubit_band(spec: &ClusterSpec, omega_c: f64) -> bool {
    let lo = spec.qubits.iter().map(|q| q.omega).fold(f64::INFINITY, f64::min);
    let hi = spec.qubits.iter().map(|q| q.omega).fold(f64::NEG_INFINITY, f64::max);
    (lo..=hi).contains(&omega_c)
}

fn nonempty(values: &[f64], what: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::config(format!("{what} grid is empty")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::config(format!("{what} grid has non-finite values")));
    }
    Ok(())
}

fn finish(
    axis1: SweepAxis,
    axis2: Option<SweepAxis>,
    points: Vec<(Option<f64>, PointStatus)>,
) -> Result<SweepResult> {
    let (zeta, status): (Vec<_>, Vec<_>) = points.into_iter().unzip();
    if zeta.iter().all(Option::is_none) {
        return Err(Error::EmptyResult("every sweep point failed".into()));
    }
    let mut result = SweepResult {
        axis1,
        axis2,
        zeta,
        status,
        zero_crossings: Vec::new(),
    };
    result.zero_crossings = match &result.axis2 {
        None => zero_crossings(&result.axis1.values, &result.zeta)
            .into_iter()
            .map(|value| ZeroCrossing { row: None, value })
            .collect(),
        Some(axis2) => (0..result.n_rows())
            .flat_map(|r| {
                zero_crossings(&axis2.values, result.row(r))
                    .into_iter()
                    .map(move |value| ZeroCrossing { row: Some(r), value })
            })
            .collect(),
    };
    Ok(result)
}

/// ζ versus relative drive phase: qubit `p` at phase 0, `q` at each `phases[k]`.
pub fn sweep_phase(spec: &ClusterSpec, pair: (usize, usize), phases: &[f64]) -> Result<SweepResult> {
    nonempty(phases, "phase")?;
    let (p, q) = pair;
    spec.with_pair_phase(p, q, 0.0)?;
    let points = phases
        .par_iter()
        .map(|&phi| evaluate(&spec.with_pair_phase(p, q, phi)?, pair))
        .collect::<Result<Vec<_>>>()?;
    finish(SweepAxis::new("phase_rad", phases.to_vec()), None, points)
}

/// ζ versus coupler frequency at a fixed relative drive phase (ignored for an undriven pair).
pub fn sweep_coupler(
    spec: &ClusterSpec,
    pair: (usize, usize),
    omega_c_values: &[f64],
    phi_d: f64,
) -> Result<SweepResult> {
    nonempty(omega_c_values, "coupler frequency")?;
    let base = phased(spec, pair, phi_d)?;
    let points = omega_c_values
        .par_iter()
        .map(|&w| coupler_point(&base, pair, w))
        .collect::<Result<Vec<_>>>()?;
    finish(SweepAxis::new("omega_c_GHz", omega_c_values.to_vec()), None, points)
}

fn coupler_point(base: &ClusterSpec, pair: (usize, usize), omega_c: f64) -> Result<(Option<f64>, PointStatus)> {
    if in_qubit_band(base, omega_c) {
        return Ok((None, PointStatus::Collision));
    }
    evaluate(&base.clone().with_coupler_frequency(omega_c), pair)
}

/// ζ over (coupler frequency × relative phase); zero crossings are located
/// along the phase axis of each row.
pub fn sweep_2d(
    spec: &ClusterSpec,
    pair: (usize, usize),
    omega_c_values: &[f64],
    phases: &[f64],
) -> Result<SweepResult> {
    nonempty(omega_c_values, "coupler frequency")?;
    nonempty(phases, "phase")?;
    phased(spec, pair, 0.0)?;
    let grid: Vec<(f64, f64)> = omega_c_values
        .iter()
        .flat_map(|&w| phases.iter().map(move |&phi| (w, phi)))
        .collect();
    let points = grid
        .par_iter()
        .map(|&(w, phi)| coupler_point(&phased(spec, pair, phi)?, pair, w))
        .collect::<Result<Vec<_>>>()?;
    finish(
        SweepAxis::new("omega_c_GHz", omega_c_values.to_vec()),
        Some(SweepAxis::new("phase_rad", phases.to_vec())),
        points,
    )
}

/// Peak |ζ| per qubit pair over a phase sweep with only that pair driven.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairPeakMatrix {
    /// `peaks[p][q]` in MHz; `None` when every phase point failed labeling.
    pub peaks: Vec<Vec<Option<f64>>>,
    /// Phase at which each peak occurs.
    pub peak_phase: Vec<Vec<Option<f64>>>,
}

/// Peak |ζ| over `phases` for every pair, with only that pair's drives on.
/// Both members are driven at the tone of the lower-index member.
pub fn pair_peak_matrix(spec: &ClusterSpec, phases: &[f64]) -> Result<PairPeakMatrix> {
    nonempty(phases, "phase")?;
    let n = spec.n_qubits();
    if let Some(missing) = (0..n).find(|&i| spec.drive_on(i).is_none()) {
        return Err(Error::config(format!("qubit {missing} has no drive")));
    }
    let mut peaks = vec![vec![None; n]; n];
    let mut peak_phase = vec![vec![None; n]; n];
    for p in 0..n {
        peaks[p][p] = Some(0.0);
        for q in p + 1..n {
            let mut isolated = spec.with_drives_only_on(&[p, q]);
            let tone = spec.drive_on(p).map(|d| d.omega_d);
            for d in &mut isolated.drives {
                d.omega_d = tone.unwrap_or(d.omega_d);
            }
            let sweep = match sweep_phase(&isolated, (p, q), phases) {
                Ok(s) => s,
                Err(Error::EmptyResult(_)) => continue,
                Err(e) => return Err(e),
            };
            let best = sweep
                .zeta
                .iter()
                .zip(phases)
                .filter_map(|(z, &phi)| z.map(|z| (z.abs(), phi)))
                .max_by(|a, b| a.0.total_cmp(&b.0));
            if let Some((peak, phi)) = best {
                peaks[p][q] = Some(peak);
                peaks[q][p] = Some(peak);
                peak_phase[p][q] = Some(phi);
                peak_phase[q][p] = Some(phi);
            }
        }
    }
    Ok(PairPeakMatrix { peaks, peak_phase })
}
