use std::collections::VecDeque;

use crate::lattice::CouplingMap;
use crate::{Error, Result};

/// All-pairs hop counts, one BFS per source.
pub fn distance_matrix(map: &CouplingMap) -> Result<Vec<Vec<usize>>> {
    let n = map.n_qubits();
    let mut dist = vec![vec![usize::MAX; n]; n];
    for (s, row) in dist.iter_mut().enumerate() {
        row[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(q) = queue.pop_front() {
            for &nb in map.neighbors(q) {
                if row[nb] == usize::MAX {
                    row[nb] = row[q] + 1;
                    queue.push_back(nb);
                }
            }
        }
        if row.contains(&usize::MAX) {
            return Err(Error::Disconnected);
        }
    }
    Ok(dist)
}
