//! Closed-form conditional AC Stark shift model of drive-induced ZZ.
//!
//! A control qubit in state `|n⟩` dresses the drive seen by the target into an
//! effective amplitude `ε̃_n`. With target detuning `Δ_t = ω_t − ω_d` the
//! target picks up `δ_n = ε̃_n² / Δ_t`, the entangling rate is
//! `μ = ε̃₀ε̃₁ / 2`, and an extra unconditional target drive `ε_t` gives, to
//! leading order,
//!
//! ```text
//! ζ = (2μ / Δ_t) · (ε̃₀ + ε̃₁ + 2ε_t)
//! ```
//!
//! The Stark-shift difference `δ₀ − δ₁` and the `μ` form above (at `ε_t = 0`)
//! are not algebraically identical, so both are reported. All values in MHz.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Drive-to-detuning ratio above which a soft validity flag is raised.
pub const SOFT_RATIO: f64 = 0.2;
/// Drive-to-detuning ratio at which the perturbative model is refused.
pub const HARD_RATIO: f64 = 0.5;
/// `|ε_t| / |Δ_t|` above which the dropped O(ε_t²) term is flagged.
pub const TARGET_DRIVE_RATIO: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarkInputs {
    pub eps0_tilde: f64,
    pub eps1_tilde: f64,
    pub eps_t: f64,
    pub delta_t: f64,
}

impl StarkInputs {
    pub fn new(eps0_tilde: f64, eps1_tilde: f64, eps_t: f64, delta_t: f64) -> Self {
        Self {
            eps0_tilde,
            eps1_tilde,
            eps_t,
            delta_t,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if [self.eps0_tilde, self.eps1_tilde, self.eps_t, self.delta_t]
            .iter()
            .any(|v| !v.is_finite())
        {
            return Err(Error::config("Stark inputs must be finite"));
        }
        if self.delta_t == 0.0 {
            return Err(Error::ResonantDrive);
        }
        for (name, eps) in [("eps0_tilde", self.eps0_tilde), ("eps1_tilde", self.eps1_tilde)] {
            if (eps / self.delta_t).abs() >= HARD_RATIO {
                return Err(Error::config(format!(
                    "|{name}/delta_t| >= {HARD_RATIO}: outside the off-resonant regime"
                )));
            }
        }
        Ok(())
    }

    pub fn mu(&self) -> f64 {
        entangling_rate(self.eps0_tilde, self.eps1_tilde)
    }

    /// Soft warnings; the computation still proceeds.
    pub fn validity_flags(&self) -> Vec<String> {
        let mut flags = Vec::new();
        if self.delta_t == 0.0 {
            return flags;
        }
        for (name, eps) in [("eps0_tilde", self.eps0_tilde), ("eps1_tilde", self.eps1_tilde)] {
            if (eps / self.delta_t).abs() > SOFT_RATIO {
                flags.push(format!("{name}_ratio_above_{SOFT_RATIO}"));
            }
        }
        if (self.eps_t / self.delta_t).abs() > TARGET_DRIVE_RATIO {
            flags.push(format!("eps_t_ratio_above_{TARGET_DRIVE_RATIO}"));
        }
        flags
    }
}

/// `δ_n = ε̃_n² / Δ_t`.
pub fn conditional_stark_shift(eps_n: f64, delta_t: f64) -> Result<f64> {
    if delta_t == 0.0 {
        return Err(Error::ResonantDrive);
    }
    Ok(eps_n * eps_n / delta_t)
}

/// `μ = ε̃₀ε̃₁ / 2` (MHz²).
pub fn entangling_rate(eps0_tilde: f64, eps1_tilde: f64) -> f64 {
    eps0_tilde * eps1_tilde / 2.0
}

/// Both forms of the Stark-difference ZZ without a target drive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarkZz {
    /// `δ₀ − δ₁`.
    pub difference_form: f64,
    /// `2μ(ε̃₀ + ε̃₁) / Δ_t`.
    pub mu_form: f64,
}

impl StarkZz {
    /// Model-consistency diagnostic `difference_form − mu_form`.
    pub fn discrepancy(&self) -> f64 {
        self.difference_form - self.mu_form
    }
}

/// ZZ from the conditional Stark shifts; `inputs.eps_t` is ignored.
pub fn zz_from_stark(inputs: &StarkInputs) -> Result<StarkZz> {
    inputs.validate()?;
    let d0 = conditional_stark_shift(inputs.eps0_tilde, inputs.delta_t)?;
    let d1 = conditional_stark_shift(inputs.eps1_tilde, inputs.delta_t)?;
    Ok(StarkZz {
        difference_form: d0 - d1,
        mu_form: 2.0 * inputs.mu() * (inputs.eps0_tilde + inputs.eps1_tilde) / inputs.delta_t,
    })
}

/// Leading-order ZZ with an unconditional target drive; the O(ε_t²) term is dropped.
pub fn zz_with_target_drive(inputs: &StarkInputs) -> Result<f64> {
    inputs.validate()?;
    let drive_sum = inputs.eps0_tilde + inputs.eps1_tilde + 2.0 * inputs.eps_t;
    Ok(2.0 * inputs.mu() / inputs.delta_t * drive_sum)
}

/// Target drive that zeroes the leading-order ZZ: `ε_t = −(ε̃₀ + ε̃₁) / 2`.
pub fn cancellation_drive(eps0_tilde: f64, eps1_tilde: f64) -> f64 {
    -(eps0_tilde + eps1_tilde) / 2.0
}

/// Everything the model reports for one input set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarkReport {
    pub delta0: f64,
    pub delta1: f64,
    pub mu: f64,
    #[serde(rename = "zeta_diff_form")]
    pub zeta_difference_form: f64,
    #[serde(rename = "zeta_mu_form")]
    pub zeta_mu_form: f64,
    #[serde(rename = "zeta_target_drive")]
    pub zeta_with_target_drive: f64,
    pub validity_flags: Vec<String>,
}

pub fn stark_report(inputs: &StarkInputs) -> Result<StarkReport> {
    let zz = zz_from_stark(inputs)?;
    Ok(StarkReport {
        delta0: conditional_stark_shift(inputs.eps0_tilde, inputs.delta_t)?,
        delta1: conditional_stark_shift(inputs.eps1_tilde, inputs.delta_t)?,
        mu: inputs.mu(),
        zeta_difference_form: zz.difference_form,
        zeta_mu_form: zz.mu_form,
        zeta_with_target_drive: zz_with_target_drive(inputs)?,
        validity_flags: inputs.validity_flags(),
    })
}
