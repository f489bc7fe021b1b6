//! Dense complex matrices on small tensor-product Hilbert spaces.
//!
//! Storage is row-major. Multi-factor index arithmetic follows the crate-wide
//! convention that the first factor of a [`SubsystemLayout`] is the slowest
//! index.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result, DEFAULT_TOL};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries. Fails unless `data.len() == dim²`.
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Real-valued rows, convenient for literals in tests and constructors.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |r, c| {
            assert_eq!(rows[r].len(), dim, "row {r} has wrong length");
            C64::new(rows[r][c], 0.0)
        })
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Outer product `|v⟩⟨w|`.
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        assert_eq!(v.len(), w.len());
        Self::from_fn(v.len(), |r, c| v[r] * w[c].conj())
    }

    /// Projector `|v⟩⟨v|`.
    pub fn projector(v: &[C64]) -> Self {
        Self::outer(v, v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_c(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    /// Matrix product. Zero entries of `self` are skipped, which makes
    /// products with permutation-like or block-sparse operators cheap.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Self { dim: n, data: out }
    }

    /// `u · self · u†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.adjoint())
    }

    /// `Tr[self · other]` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim, "trace_product dimension mismatch");
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                acc += a * other.data[k * n + i];
            }
        }
        acc
    }

    /// Hilbert–Schmidt inner product `Tr[self† · other]`.
    pub fn hs_inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Squared Hilbert–Schmidt (Frobenius) norm.
    pub fn hs_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn unitarity_error(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    /// `(self + self†)/2`, removes rounding-level anti-Hermitian parts.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

/// Local dimensions of the tensor factors of a matrix, first factor slowest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemLayout {
    dims: Vec<usize>,
}

impl SubsystemLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidSubsystems(format!(
                "local dimensions must be positive, got {dims:?}"
            )));
        }
        Ok(Self { dims })
    }

    pub fn bipartite(da: usize, db: usize) -> Self {
        Self::new(vec![da, db]).expect("positive dimensions")
    }

    /// `copies` repetitions of `factor_dims`, e.g. `A₁B₁A₂B₂` for two copies of `[2, 2]`.
    pub fn repeated(factor_dims: &[usize], copies: usize) -> Self {
        let dims = factor_dims
            .iter()
            .copied()
            .cycle()
            .take(factor_dims.len() * copies)
            .collect();
        Self::new(dims).expect("positive dimensions")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Stride of each factor in the flattened index.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    pub fn check(&self, m: &ComplexMatrix) -> Result<()> {
        if self.total_dim() != m.dim() {
            return Err(Error::LayoutMismatch {
                dims: self.dims.clone(),
                dim: m.dim(),
            });
        }
        Ok(())
    }

    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            out[k] = index % self.dims[k];
            index /= self.dims[k];
        }
        out
    }
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for ar in 0..na {
        for ac in 0..na {
            let x = a[(ar, ac)];
            if x == ZERO {
                continue;
            }
            for br in 0..nb {
                for bc in 0..nb {
                    out.data[(ar * nb + br) * n + ac * nb + bc] = x * b[(br, bc)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a sequence of matrices, left to right.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    factors
        .into_iter()
        .fold(ComplexMatrix::identity(1), |acc, f| kron(&acc, f))
}

/// `ρ^{⊗k}`.
pub fn kron_power(m: &ComplexMatrix, k: usize) -> ComplexMatrix {
    kron_all(std::iter::repeat_n(m, k))
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::InvalidSubsystems(format!(
            "permutation {perm:?} has length {} but layout has {n} factors",
            perm.len()
        )));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidSubsystems(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Reorders tensor factors: factor `i` of the result is factor `perm[i]` of
/// `m`. The result lives on the layout `[dims[perm[0]], dims[perm[1]], …]`.
pub fn permute_subsystems(
    m: &ComplexMatrix,
    layout: &SubsystemLayout,
    perm: &[usize],
) -> Result<ComplexMatrix> {
    layout.check(m)?;
    check_permutation(perm, layout.len())?;
    let out_layout =
        SubsystemLayout::new(perm.iter().map(|&p| layout.dims()[p]).collect())?;
    let in_strides = layout.strides();
    // map[out_index] = in_index
    let map: Vec<usize> = (0..m.dim())
        .map(|out| {
            out_layout
                .digits(out)
                .iter()
                .zip(perm)
                .map(|(&digit, &p)| digit * in_strides[p])
                .sum()
        })
        .collect();
    Ok(ComplexMatrix::from_fn(m.dim(), |r, c| m[(map[r], map[c])]))
}

/// Inverse of a permutation given as a slice.
pub fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Traces out every factor not listed in `keep`. Kept factors stay in their
/// original relative order.
pub fn partial_trace(
    m: &ComplexMatrix,
    layout: &SubsystemLayout,
    keep: &[usize],
) -> Result<ComplexMatrix> {
    layout.check(m)?;
    if keep.is_empty() {
        return Err(Error::InvalidSubsystems("keep set is empty".into()));
    }
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.len() != keep.len() || *keep_sorted.last().unwrap() >= layout.len() {
        return Err(Error::InvalidSubsystems(format!(
            "keep set {keep:?} is not a set of factor indices below {}",
            layout.len()
        )));
    }
    let strides = layout.strides();
    let dims = layout.dims();
    let traced: Vec<usize> = (0..layout.len())
        .filter(|k| !keep_sorted.contains(k))
        .collect();

    let offsets = |factors: &[usize]| -> Vec<usize> {
        let sub = factors.iter().map(|&k| dims[k]).collect::<Vec<_>>();
        let total: usize = sub.iter().product();
        let sub_layout = SubsystemLayout { dims: sub };
        (0..total)
            .map(|i| {
                sub_layout
                    .digits(i)
                    .iter()
                    .zip(factors)
                    .map(|(&d, &k)| d * strides[k])
                    .sum()
            })
            .collect()
    };
    let kept_off = offsets(&keep_sorted);
    let traced_off = if traced.is_empty() {
        vec![0]
    } else {
        offsets(&traced)
    };

    let n = kept_off.len();
    let mut out = ComplexMatrix::zeros(n);
    for (r, &kr) in kept_off.iter().enumerate() {
        for (c, &kc) in kept_off.iter().enumerate() {
            out[(r, c)] = traced_off.iter().map(|&t| m[(kr + t, kc + t)]).sum();
        }
    }
    Ok(out)
}

/// Transposes the indices of a single factor.
pub fn partial_transpose(
    m: &ComplexMatrix,
    layout: &SubsystemLayout,
    factor: usize,
) -> Result<ComplexMatrix> {
    layout.check(m)?;
    if factor >= layout.len() {
        return Err(Error::InvalidSubsystems(format!(
            "factor {factor} out of range for {} factors",
            layout.len()
        )));
    }
    let stride = layout.strides()[factor];
    let d = layout.dims()[factor];
    let digit = |i: usize| (i / stride) % d;
    let mut out = ComplexMatrix::zeros(m.dim());
    for r in 0..m.dim() {
        for c in 0..m.dim() {
            let (dr, dc) = (digit(r), digit(c));
            let r2 = r - dr * stride + dc * stride;
            let c2 = c - dc * stride + dr * stride;
            out[(r2, c2)] = m[(r, c)];
        }
    }
    Ok(out)
}

/// Partial transpose on the first factor of a bipartite layout.
pub fn partial_transpose_a(m: &ComplexMatrix, layout: &SubsystemLayout) -> Result<ComplexMatrix> {
    if layout.len() != 2 {
        return Err(Error::InvalidSubsystems(format!(
            "bipartite layout required, got {:?}",
            layout.dims()
        )));
    }
    partial_transpose(m, layout, 0)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn herm_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    herm_eigenvalues_tol(m, DEFAULT_TOL)
}

pub fn herm_eigenvalues_tol(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    let err = m.hermiticity_error();
    if err > tol {
        return Err(Error::NotHermitian(err));
    }
    let mut ev: Vec<f64> = m
        .hermitian_part()
        .to_nalgebra()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// `Tr[mᵏ]` for `k ≥ 1`.
pub fn trace_power(m: &ComplexMatrix, k: u32) -> C64 {
    assert!(k >= 1, "trace_power needs k >= 1");
    match k {
        1 => m.trace(),
        _ => {
            let half = k / 2;
            let mut p = m.clone();
            for _ in 1..half {
                p = p.matmul(m);
            }
            // Tr[m^k] = Tr[m^half · m^(k-half)]
            if k.is_multiple_of(2) {
                p.trace_product(&p)
            } else {
                p.trace_product(&p.matmul(m))
            }
        }
    }
}

/// Sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    m.to_nalgebra().singular_values().iter().sum()
}

/// Pauli matrices `σ₀ = I, σ₁, σ₂, σ₃`.
pub fn pauli(index: usize) -> ComplexMatrix {
    match index {
        0 => ComplexMatrix::identity(2),
        1 => ComplexMatrix::from_vec(2, vec![ZERO, ONE, ONE, ZERO]).unwrap(),
        2 => ComplexMatrix::from_vec(2, vec![ZERO, -I, I, ZERO]).unwrap(),
        3 => ComplexMatrix::from_vec(2, vec![ONE, ZERO, ZERO, -ONE]).unwrap(),
        _ => panic!("Pauli index {index} out of range 0..=3"),
    }
}
