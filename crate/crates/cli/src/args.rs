use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use zz_lattice::lattice::Topology;
use zz_lattice::router::ContentionMode;

#[derive(Debug, Parser)]
#[command(name = "zz-lattice", version, about = "ZZ interaction sweeps, Stark-model evaluation and lattice routing benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output path prefix; `<prefix>.csv` and `<prefix>.json` are written.
    /// Defaults to the command name in the working directory.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for every randomized stage (router layouts).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ZZ versus relative drive phase of one pair.
    SweepPhase(SweepPhaseArgs),
    /// ZZ versus coupler frequency.
    SweepCoupler(SweepCouplerArgs),
    /// ZZ over a coupler-frequency by drive-phase grid.
    #[command(name = "sweep-2d")]
    Sweep2d(Sweep2dArgs),
    /// Peak |ZZ| for every pair of a cluster, each pair driven in isolation.
    PairMatrix(PairMatrixArgs),
    /// Static or driven ZZ for one or all pairs.
    Zz(ZzArgs),
    /// Perturbative Stark-shift model (MHz units).
    Stark(StarkArgs),
    /// Grover depth benchmark across topologies and seeds.
    BenchGrover(BenchArgs),
    /// Emit a coupling map.
    GenMap(GenMapArgs),
    /// Route a circuit and check it against the original.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SweepPhase(_) => "sweep-phase",
            Command::SweepCoupler(_) => "sweep-coupler",
            Command::Sweep2d(_) => "sweep-2d",
            Command::PairMatrix(_) => "pair-matrix",
            Command::Zz(_) => "zz",
            Command::Stark(_) => "stark",
            Command::BenchGrover(_) => "bench-grover",
            Command::GenMap(_) => "gen-map",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ClusterArg {
    /// Cluster configuration JSON (an earlier output JSON also works).
    #[arg(short, long)]
    #[serde(skip)]
    pub cluster: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepPhaseArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub cluster: ClusterArg,
    #[arg(long, num_args = 2, value_names = ["P", "Q"], default_values_t = [0, 1])]
    pub pair: Vec<usize>,
    /// Phase samples over [0, 2π).
    #[arg(long, default_value_t = 64)]
    pub points: usize,
    /// Override the coupler frequency (GHz).
    #[arg(long)]
    pub omega_c: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepCouplerArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub cluster: ClusterArg,
    #[arg(long, num_args = 2, value_names = ["P", "Q"], default_values_t = [0, 1])]
    pub pair: Vec<usize>,
    /// First coupler frequency (GHz).
    #[arg(long, default_value_t = 5.5)]
    pub from: f64,
    /// Last coupler frequency (GHz), inclusive.
    #[arg(long, default_value_t = 6.5)]
    pub to: f64,
    #[arg(long, default_value_t = 11)]
    pub points: usize,
    /// Relative drive phase of the pair (rad); ignored for an undriven pair.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phase: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Sweep2dArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub cluster: ClusterArg,
    #[arg(long, num_args = 2, value_names = ["P", "Q"], default_values_t = [0, 1])]
    pub pair: Vec<usize>,
    #[arg(long, default_value_t = 5.9)]
    pub omega_from: f64,
    #[arg(long, default_value_t = 6.3)]
    pub omega_to: f64,
    #[arg(long, default_value_t = 5)]
    pub omega_points: usize,
    #[arg(long, default_value_t = 64)]
    pub phase_points: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PairMatrixArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub cluster: ClusterArg,
    #[arg(long, default_value_t = 64)]
    pub points: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZzArgs {
    #[command(flatten)]
    #[serde(skip)]
    pub cluster: ClusterArg,
    /// Restrict to one pair; all pairs otherwise.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pub pair: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StarkArgs {
    /// Effective drive on the first control, ε̃₀ (MHz).
    #[arg(long, allow_negative_numbers = true)]
    pub eps0: f64,
    /// Effective drive on the second control, ε̃₁ (MHz).
    #[arg(long, allow_negative_numbers = true)]
    pub eps1: f64,
    /// Direct drive on the target, ε_t (MHz).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub epst: f64,
    /// Target-drive detuning Δ_t (MHz).
    #[arg(long, allow_negative_numbers = true)]
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContentionArg {
    /// Shared-coupler contention on the hybrid lattice only.
    PerTopology,
    On,
    Off,
}

impl From<ContentionArg> for ContentionMode {
    fn from(c: ContentionArg) -> Self {
        match c {
            ContentionArg::PerTopology => ContentionMode::PerTopology,
            ContentionArg::On => ContentionMode::On,
            ContentionArg::Off => ContentionMode::Off,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BenchArgs {
    /// Register sizes, `a..b` (inclusive) or a single value.
    #[arg(long, default_value = "2..6", value_parser = parse_range)]
    #[serde(serialize_with = "ser_range")]
    pub n: RangeInclusive<usize>,
    #[arg(long, value_delimiter = ',', default_value = "hybrid,heavyhex")]
    pub topologies: Vec<Topology>,
    /// Number of routing seeds, counted up from --seed.
    #[arg(long, default_value_t = 8)]
    pub seeds: u64,
    #[arg(long, value_enum, default_value_t = ContentionArg::PerTopology)]
    pub contention: ContentionArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenMapArgs {
    #[arg(long, default_value = "hybrid")]
    pub topology: Topology,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value = "hybrid")]
    pub topology: Topology,
    /// Grover register size (ignored with --circuit).
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Marked bitstring, rightmost character is qubit 0.
    #[arg(long)]
    pub marked: Option<String>,
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Circuit JSON to route instead of a Grover circuit.
    #[arg(long)]
    pub circuit: Option<PathBuf>,
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected 'a..b' or a single integer, got '{s}'");
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let lo: usize = lo.parse().map_err(|_| bad())?;
    let hi: usize = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(format!("empty range '{s}'"));
    }
    Ok(lo..=hi)
}

fn ser_range<S: serde::Serializer>(r: &RangeInclusive<usize>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}..{}", r.start(), r.end()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..6").unwrap(), 2..=6);
        assert_eq!(parse_range("2..=6").unwrap(), 2..=6);
        assert_eq!(parse_range("4").unwrap(), 4..=4);
        assert!(parse_range("6..2").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn negative_stark_inputs_parse() {
        let cli = Cli::try_parse_from(["zz-lattice", "stark", "--eps0", "20", "--eps1", "10", "--epst", "-15", "--delta", "1000"])
            .unwrap();
        match cli.command {
            Command::Stark(a) => assert_eq!(a.epst, -15.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bench_defaults() {
        let cli = Cli::try_parse_from(["zz-lattice", "bench-grover"]).unwrap();
        let Command::BenchGrover(a) = cli.command else { panic!() };
        assert_eq!(a.n, 2..=6);
        assert_eq!(a.topologies, vec![Topology::Hybrid, Topology::HeavyHex]);
        assert_eq!(a.seeds, 8);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
