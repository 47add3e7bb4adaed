use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Logical-to-physical bijection: `physical(l)` is where logical qubit `l` lives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Layout {
    phys: Vec<usize>,
    logical: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Layout {
    type Error = Error;

    fn try_from(phys: Vec<usize>) -> Result<Self> {
        Layout::new(phys)
    }
}

impl From<Layout> for Vec<usize> {
    fn from(l: Layout) -> Self {
        l.phys
    }
}

impl Layout {
    pub fn new(phys: Vec<usize>) -> Result<Self> {
        let n = phys.len();
        let mut logical = vec![usize::MAX; n];
        for (l, &p) in phys.iter().enumerate() {
            if p >= n || logical[p] != usize::MAX {
                return Err(Error::config(format!("layout {phys:?} is not a permutation")));
            }
            logical[p] = l;
        }
        Ok(Self { phys, logical })
    }

    pub fn identity(n: usize) -> Self {
        Self { phys: (0..n).collect(), logical: (0..n).collect() }
    }

    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let mut phys: Vec<usize> = (0..n).collect();
        phys.shuffle(rng);
        Self::new(phys).expect("shuffle is a permutation")
    }

    pub fn len(&self) -> usize {
        self.phys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phys.is_empty()
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.phys[logical]
    }

    pub fn logical(&self, physical: usize) -> usize {
        self.logical[physical]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.phys
    }

    /// Exchange whatever logical qubits occupy physical qubits `a` and `b`.
    pub fn swap_physical(&mut self, a: usize, b: usize) {
        let (la, lb) = (self.logical[a], self.logical[b]);
        self.logical.swap(a, b);
        self.phys[la] = b;
        self.phys[lb] = a;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_non_permutations() {
        assert!(Layout::new(vec![0, 0]).is_err());
        assert!(Layout::new(vec![0, 2]).is_err());
        assert!(serde_json::from_str::<Layout>("[1,1]").is_err());
    }

    #[test]
    fn swap_keeps_inverse_consistent() {
        let mut l = Layout::new(vec![2, 0, 1]).unwrap();
        l.swap_physical(0, 2);
        assert_eq!(l.as_slice(), &[0, 2, 1]);
        for q in 0..3 {
            assert_eq!(l.logical(l.physical(q)), q);
        }
    }

    #[test]
    fn random_layout_is_reproducible() {
        let a = Layout::random(8, &mut ChaCha8Rng::seed_from_u64(3));
        let b = Layout::random(8, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        assert_eq!(Layout::new(a.as_slice().to_vec()).unwrap(), a);
    }
}
