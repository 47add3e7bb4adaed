use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Qubits whose mutual edges share one physical tunable coupler.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub coupler: usize,
    pub members: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CouplingMapRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    clusters: Vec<Cluster>,
}

/// Undirected logical connectivity with optional shared-coupler annotations.
///
/// Edges are stored normalized (`a < b`), sorted and deduplicated; an edge's
/// position in [`CouplingMap::edges`] is its edge index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CouplingMapRepr", into = "CouplingMapRepr")]
pub struct CouplingMap {
    n_qubits: usize,
    edges: Vec<(usize, usize)>,
    clusters: Vec<Cluster>,
    adjacency: Vec<Vec<usize>>,
    edge_cluster: Vec<Option<usize>>,
}

impl TryFrom<CouplingMapRepr> for CouplingMap {
    type Error = Error;

    fn try_from(r: CouplingMapRepr) -> Result<Self> {
        CouplingMap::new(r.n, r.edges, r.clusters)
    }
}

impl From<CouplingMap> for CouplingMapRepr {
    fn from(m: CouplingMap) -> Self {
        CouplingMapRepr {
            n: m.n_qubits,
            edges: m.edges,
            clusters: m.clusters,
        }
    }
}

fn normalize((a, b): (usize, usize)) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl CouplingMap {
    pub fn new(n_qubits: usize, edges: Vec<(usize, usize)>, clusters: Vec<Cluster>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::config("coupling map needs at least one qubit"));
        }
        let mut edges: Vec<_> = edges.into_iter().map(normalize).collect();
        edges.sort_unstable();
        edges.dedup();
        for &(a, b) in &edges {
            if b >= n_qubits {
                return Err(Error::IndexOutOfRange { what: "qubit", index: b, len: n_qubits });
            }
            if a == b {
                return Err(Error::config(format!("self-loop on qubit {a}")));
            }
        }
        let mut adjacency = vec![Vec::new(); n_qubits];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let mut edge_cluster = vec![None; edges.len()];
        let mut clusters = clusters;
        for (ci, cluster) in clusters.iter_mut().enumerate() {
            cluster.members.sort_unstable();
            cluster.members.dedup();
            for e in &mut cluster.edges {
                *e = normalize(*e);
            }
            cluster.edges.sort_unstable();
            for &e in &cluster.edges {
                if !cluster.members.contains(&e.0) || !cluster.members.contains(&e.1) {
                    return Err(Error::config(format!(
                        "cluster {} edge {e:?} leaves its member set",
                        cluster.coupler
                    )));
                }
                let idx = edges
                    .binary_search(&e)
                    .map_err(|_| Error::config(format!("cluster edge {e:?} is not a map edge")))?;
                if edge_cluster[idx].replace(ci).is_some() {
                    return Err(Error::config(format!("edge {e:?} belongs to two clusters")));
                }
            }
        }

        let map = Self {
            n_qubits,
            edges,
            clusters,
            adjacency,
            edge_cluster,
        };
        if map.bfs_order(0).len() != n_qubits {
            return Err(Error::Disconnected);
        }
        Ok(map)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    pub fn degree(&self, q: usize) -> usize {
        self.adjacency[q].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n_qubits).map(|q| self.degree(q)).max().unwrap_or(0)
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&normalize((a, b))).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    /// Index into [`CouplingMap::clusters`] of the coupler carrying edge `(a, b)`.
    pub fn cluster_of(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index(a, b).and_then(|i| self.edge_cluster[i])
    }

    /// Breadth-first visiting order from `start`, neighbors in ascending order.
    pub fn bfs_order(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n_qubits];
        let mut order = Vec::with_capacity(self.n_qubits);
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &nb in &self.adjacency[q] {
                if !seen[nb] {
                    seen[nb] = true;
                    queue.push_back(nb);
                }
            }
        }
        order
    }

    /// The first `n` qubits in BFS order from qubit 0, reindexed in that order.
    /// Cluster annotations are kept for the surviving edges.
    pub fn bfs_subgraph(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.n_qubits {
            return Err(Error::config(format!(
                "cannot select {n} qubits from a {}-qubit map",
                self.n_qubits
            )));
        }
        let order = self.bfs_order(0);
        let mut new_index = vec![None; self.n_qubits];
        for (i, &q) in order.iter().take(n).enumerate() {
            new_index[q] = Some(i);
        }
        let relabel = |&(a, b): &(usize, usize)| Some((new_index[a]?, new_index[b]?));
        let edges: Vec<_> = self.edges.iter().filter_map(relabel).collect();
        let clusters = self
            .clusters
            .iter()
            .filter_map(|c| {
                let edges: Vec<_> = c.edges.iter().filter_map(relabel).collect();
                (!edges.is_empty()).then(|| Cluster {
                    coupler: c.coupler,
                    members: c.members.iter().filter_map(|&m| new_index[m]).collect(),
                    edges,
                })
            })
            .collect();
        Self::new(n, edges, clusters)
    }
}

/// King-graph lattice of `rows × cols` qubits, index `r·cols + c`. Each
/// 2×2 plaquette is one shared coupler; an edge inside two plaquettes
/// belongs to the lexicographically first.
pub fn hybrid_grid_map(rows: usize, cols: usize) -> Result<CouplingMap> {
    if rows == 0 || cols == 0 {
        return Err(Error::config("grid needs at least one row and column"));
    }
    let idx = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((idx(r, c), idx(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((idx(r, c), idx(r + 1, c)));
                if c + 1 < cols {
                    edges.push((idx(r, c), idx(r + 1, c + 1)));
                }
                if c >= 1 {
                    edges.push((idx(r, c), idx(r + 1, c - 1)));
                }
            }
        }
    }

    let mut assigned = std::collections::HashSet::new();
    let mut clusters = Vec::new();
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            let members = vec![idx(r, c), idx(r, c + 1), idx(r + 1, c), idx(r + 1, c + 1)];
            let mut own = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    let e = normalize((members[i], members[j]));
                    if assigned.insert(e) {
                        own.push(e);
                    }
                }
            }
            clusters.push(Cluster {
                coupler: clusters.len(),
                members,
                edges: own,
            });
        }
    }
    CouplingMap::new(rows * cols, edges, clusters)
}

/// Smallest near-square king grid holding `n` qubits, trimmed by BFS to exactly `n`.
pub fn hybrid_map_for(n: usize) -> Result<CouplingMap> {
    if n < 2 {
        return Err(Error::config("hybrid map needs at least 2 qubits"));
    }
    let rows = (n as f64).sqrt().ceil() as usize;
    let cols = n.div_ceil(rows);
    hybrid_grid_map(rows, cols)?.bfs_subgraph(n)
}

pub const HEAVY_HEX_MAX_QUBITS: usize = 133;
const HEAVY_HEX_ROWS: usize = 8;
const HEAVY_HEX_ROW_LEN: usize = 15;

/// Heavy-hex lattice: rows of chained qubits joined by bridge qubits every
/// fourth column, the bridge columns alternating offset 0 / 2 between row
/// pairs. Numbered row by row with each row's downward bridges following it.
fn heavy_hex_lattice(rows: usize, row_len: usize) -> CouplingMap {
    let mut edges = Vec::new();
    let mut row_start = Vec::with_capacity(rows);
    let mut next = 0;
    let mut pending_bridges: Vec<(usize, usize)> = Vec::new(); // (bridge qubit, column)
    for r in 0..rows {
        let start = next;
        row_start.push(start);
        next += row_len;
        for c in 0..row_len - 1 {
            edges.push((start + c, start + c + 1));
        }
        for (bridge, col) in pending_bridges.drain(..) {
            edges.push((bridge, start + col));
        }
        if r + 1 < rows {
            let offset = if r % 2 == 0 { 0 } else { 2 };
            for col in (offset..row_len).step_by(4) {
                edges.push((start + col, next));
                pending_bridges.push((next, col));
                next += 1;
            }
        }
    }
    CouplingMap::new(next, edges, Vec::new()).expect("heavy-hex lattice is connected")
}

/// `n` qubits of a heavy-hex lattice selected breadth-first from qubit 0.
pub fn heavy_hex_map(n: usize) -> Result<CouplingMap> {
    if !(2..=HEAVY_HEX_MAX_QUBITS).contains(&n) {
        return Err(Error::config(format!(
            "heavy-hex map supports 2..={HEAVY_HEX_MAX_QUBITS} qubits, got {n}"
        )));
    }
    heavy_hex_lattice(HEAVY_HEX_ROWS, HEAVY_HEX_ROW_LEN).bfs_subgraph(n)
}

pub fn all_to_all_map(n: usize) -> Result<CouplingMap> {
    if n < 2 {
        return Err(Error::config("all-to-all map needs at least 2 qubits"));
    }
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    CouplingMap::new(n, edges, Vec::new())
}

pub fn path_map(n: usize) -> Result<CouplingMap> {
    if n < 2 {
        return Err(Error::config("path map needs at least 2 qubits"));
    }
    CouplingMap::new(n, (0..n - 1).map(|a| (a, a + 1)).collect(), Vec::new())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Hybrid,
    #[serde(rename = "heavyhex")]
    HeavyHex,
    #[serde(rename = "all")]
    AllToAll,
}

impl Topology {
    pub fn map_for(self, n: usize) -> Result<CouplingMap> {
        match self {
            Topology::Hybrid => hybrid_map_for(n),
            Topology::HeavyHex => heavy_hex_map(n),
            Topology::AllToAll => all_to_all_map(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Topology::Hybrid => "hybrid",
            Topology::HeavyHex => "heavyhex",
            Topology::AllToAll => "all",
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "hybrid" => Ok(Topology::Hybrid),
            "heavyhex" | "heavy-hex" | "heavy_hex" => Ok(Topology::HeavyHex),
            "all" | "all-to-all" | "alltoall" => Ok(Topology::AllToAll),
            other => Err(Error::config(format!("unknown topology '{other}'"))),
        }
    }
}
