use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Truncated bosonic lowering operator: `a[(n, n+1)] = sqrt(n+1)`.
pub fn annihilation_op(levels: usize) -> Result<CMatrix> {
    if levels < 2 {
        return Err(Error::InvalidTruncation(levels));
    }
    let mut a = CMatrix::zeros(levels, levels);
    for n in 0..levels - 1 {
        a[(n, n + 1)] = Complex64::new(((n + 1) as f64).sqrt(), 0.0);
    }
    Ok(a)
}

pub fn number_op(levels: usize) -> Result<CMatrix> {
    let a = annihilation_op(levels)?;
    Ok(a.adjoint() * a)
}

pub fn identity_op(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Places `local` at `site` of an `n_sites`-mode register: `I ⊗ … ⊗ local ⊗ … ⊗ I`.
pub fn embed_op(local: &CMatrix, site: usize, n_sites: usize, levels: usize) -> Result<CMatrix> {
    if levels < 2 {
        return Err(Error::InvalidTruncation(levels));
    }
    if site >= n_sites {
        return Err(Error::IndexOutOfRange {
            what: "site",
            index: site,
            len: n_sites,
        });
    }
    if local.nrows() != levels || local.ncols() != levels {
        return Err(Error::config(format!(
            "local operator is {}x{}, expected {levels}x{levels}",
            local.nrows(),
            local.ncols()
        )));
    }
    let left = identity_op(levels.pow(site as u32));
    let right = identity_op(levels.pow((n_sites - site - 1) as u32));
    Ok(left.kronecker(local).kronecker(&right))
}
