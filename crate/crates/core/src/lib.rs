//! Spectrum and routing toolkit for hybrid tunable-coupler transmon lattices.
//!
//! The crate has four layers:
//!
//! * [`spectrum`] assembles truncated multi-transmon Hamiltonians in the drive
//!   frame, diagonalizes them, labels dressed states and extracts static and
//!   drive-induced ZZ rates, including phase/coupler sweeps.
//! * [`stark`] evaluates the closed-form conditional Stark-shift ZZ model.
//! * [`lattice`] generates coupling maps, Grover benchmark circuits and a
//!   little-endian statevector simulator.
//! * [`router`] routes circuits onto coupling maps, schedules them with optional
//!   coupler contention and runs the Grover depth benchmark.
//!
//! Frequencies are linear (GHz, i.e. ω/2π) everywhere; ZZ rates are in MHz.

pub mod error;
pub mod lattice;
pub mod router;
pub mod spectrum;
pub mod stark;

pub use error::{Error, Result};
