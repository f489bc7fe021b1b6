use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::DensityMatrix;
use crate::matrix::{ComplexMatrix, C64};
use crate::{Error, Result};

pub type StateRng = ChaCha8Rng;

/// Deterministic generator for sample `stream` of a run seeded with `seed`.
/// Independent streams make batch results independent of evaluation order.
pub fn seeded_rng(seed: u64, stream: u64) -> StateRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn complex_gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Normalised Wishart state `G G† / Tr[G G†]` with `G` a complex Gaussian
/// `2d × rank` matrix.
pub fn random_mixed(d: usize, rank: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let n = 2 * d;
    if d == 0 || rank == 0 || rank > n {
        return Err(Error::OutOfRange {
            name: "rank",
            value: rank as f64,
            range: "1 <= rank <= 2d",
        });
    }
    let g: Vec<C64> = (0..n * rank).map(|_| complex_gaussian(rng)).collect();
    let mut m = ComplexMatrix::from_fn(n, |r, c| {
        (0..rank).map(|k| g[r * rank + k] * g[c * rank + k].conj()).sum()
    });
    let tr = m.trace().re;
    m = m.scale(1.0 / tr).hermitian_part();
    Ok(DensityMatrix::new_unchecked(m, d))
}

/// Haar-random pure state on `C² ⊗ C^d`.
pub fn random_pure(d: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let psi: Vec<C64> = (0..2 * d).map(|_| complex_gaussian(rng)).collect();
    DensityMatrix::from_pure(&psi, d)
}

/// Haar-random unitary via Gram–Schmidt on a Ginibre matrix.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        for u in &cols {
            let overlap: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= overlap * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-10 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(n, |r, c| cols[c][r])
}
