use super::{DensityMatrix, OperatorBasis};
use crate::matrix::{kron, pauli, ComplexMatrix, C64};
use crate::{Error, Result};

/// Coefficients of
/// `ρ = (1/2d)(I + Σ xᵢ σᵢ⊗I + Σ yⱼ I⊗τⱼ + Σ tᵢⱼ σᵢ⊗τⱼ)`
/// in a basis `{τⱼ}` with `Tr[τᵢτⱼ] = N δᵢⱼ`.
///
/// Extraction: `xᵢ = Tr[ρ σᵢ⊗I]`, `yⱼ = (d/N) Tr[ρ I⊗τⱼ]`,
/// `tᵢⱼ = (d/N) Tr[ρ σᵢ⊗τⱼ]`. For two qubits with the Pauli basis this is the
/// usual `tᵢⱼ = Tr[ρ σᵢ⊗σⱼ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochFano {
    pub x: [f64; 3],
    pub y: Vec<f64>,
    /// Rows indexed by the qubit Pauli `i = 1..3`, columns by `τⱼ`.
    pub t: [Vec<f64>; 3],
    pub d: usize,
    /// `N` in `Tr[τᵢτⱼ] = N δᵢⱼ` for the basis the coefficients refer to.
    pub normalization: f64,
}

impl BlochFano {
    pub fn x_norm_sq(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum()
    }

    /// `‖t‖₂² = Tr[t tᵀ]`.
    pub fn t_norm_sq(&self) -> f64 {
        self.t.iter().flatten().map(|v| v * v).sum()
    }

    /// `(t tᵀ)ᵢₖ`.
    pub fn t_gram(&self) -> [[f64; 3]; 3] {
        let mut g = [[0.0; 3]; 3];
        for i in 0..3 {
            for k in 0..3 {
                g[i][k] = self.t[i].iter().zip(&self.t[k]).map(|(a, b)| a * b).sum();
            }
        }
        g
    }
}

fn check_basis(d: usize, basis: &OperatorBasis) -> Result<()> {
    if basis.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: basis.dim(),
        });
    }
    Ok(())
}

pub fn bloch_fano_decompose(rho: &DensityMatrix, basis: &OperatorBasis) -> Result<BlochFano> {
    let d = rho.dim_b();
    check_basis(d, basis)?;
    let m = rho.matrix();
    let id_b = ComplexMatrix::identity(d);
    let id_a = ComplexMatrix::identity(2);
    let scale = d as f64 / basis.normalization();

    let x = [1, 2, 3].map(|i| kron(&pauli(i), &id_b).trace_product(m).re);
    let y = basis
        .operators()
        .iter()
        .map(|tau| scale * kron(&id_a, tau).trace_product(m).re)
        .collect();
    let t = [1, 2, 3].map(|i| {
        let s = pauli(i);
        basis
            .operators()
            .iter()
            .map(|tau| scale * kron(&s, tau).trace_product(m).re)
            .collect()
    });
    Ok(BlochFano {
        x,
        y,
        t,
        d,
        normalization: basis.normalization(),
    })
}

/// Rebuilds the state; fails if the coefficients describe an unphysical matrix.
pub fn bloch_fano_reconstruct(bf: &BlochFano, basis: &OperatorBasis) -> Result<DensityMatrix> {
    let d = bf.d;
    check_basis(d, basis)?;
    if bf.y.len() != basis.len() || bf.t.iter().any(|row| row.len() != basis.len()) {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: bf.y.len(),
        });
    }
    let id_b = ComplexMatrix::identity(d);
    let id_a = ComplexMatrix::identity(2);
    let mut m = ComplexMatrix::identity(2 * d);
    for i in 0..3 {
        m = &m + &kron(&pauli(i + 1), &id_b).scale(bf.x[i]);
    }
    for (j, tau) in basis.operators().iter().enumerate() {
        m = &m + &kron(&id_a, tau).scale(bf.y[j]);
        for i in 0..3 {
            if bf.t[i][j] != 0.0 {
                m = &m + &kron(&pauli(i + 1), tau).scale(bf.t[i][j]);
            }
        }
    }
    let m = m.scale_c(C64::new(1.0 / (2.0 * d as f64), 0.0));
    DensityMatrix::new(m.hermitian_part(), d)
}
