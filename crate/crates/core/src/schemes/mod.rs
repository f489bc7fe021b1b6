//! Measurement plans that reach `D_G` and `Q` without full tomography.
//!
//! [`nmr`] covers spin-observable plans (`3d²` expectations instead of
//! `4d² − 1`). [`optical`] covers swap and antisymmetric-projector
//! observables on two and four copies of the state.

pub mod nmr;
pub mod optical;

pub use nmr::{
    localizing_rotation, nmr_localization_check, nmr_plan, nmr_plan_with_basis, reconstruct_from_nmr,
    simulate_plan, LocalizationCheck,
};
pub use optical::{
    antisym_projector, direct_traces_s, interferometer_estimate, interferometer_visibility, multicopy_traces,
    multicopy_traces_s, optical_observables, optical_observables_general, optical_plan, shift_operator,
    swap_general, trs_from_observables, MulticopyTraces, OpticalObservables, TraceRoutes,
};

use crate::matrix::{ComplexMatrix, SubsystemLayout, C64};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Setting {
    Nmr,
    OpticalProjective,
    OpticalSwap,
}

impl Setting {
    pub fn name(self) -> &'static str {
        match self {
            Setting::Nmr => "nmr",
            Setting::OpticalProjective => "optical-projective",
            Setting::OpticalSwap => "optical-swap",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlanEntry {
    pub label: String,
    pub operator: MulticopyOperator,
    pub copies: usize,
}

#[derive(Clone, Debug)]
pub struct ObservablePlan {
    pub setting: Setting,
    pub d: usize,
    pub observables: Vec<PlanEntry>,
    pub tomography_count: usize,
}

impl ObservablePlan {
    pub fn count(&self) -> usize {
        self.observables.len()
    }
}

/// `Σ coeff · P_σ`, with `P_σ|i₀ … iₙ₋₁⟩ = |i_{σ(0)} … i_{σ(n−1)}⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct PermTerm {
    pub coeff: f64,
    pub sigma: Vec<usize>,
}

/// An operator on a tensor-product layout, stored either densely or as a
/// signed sum of factor permutations (swaps, shifts, `(I − V)/2`, …).
#[derive(Clone, Debug)]
pub struct MulticopyOperator {
    pub label: String,
    pub layout: SubsystemLayout,
    repr: Repr,
}

#[derive(Clone, Debug)]
enum Repr {
    Dense(ComplexMatrix),
    Permutations(Vec<PermTerm>),
}

impl MulticopyOperator {
    pub fn dense(label: impl Into<String>, layout: SubsystemLayout, operator: ComplexMatrix) -> Self {
        Self {
            label: label.into(),
            layout,
            repr: Repr::Dense(operator),
        }
    }

    pub fn permutations(label: impl Into<String>, layout: SubsystemLayout, terms: Vec<PermTerm>) -> Self {
        Self {
            label: label.into(),
            layout,
            repr: Repr::Permutations(terms),
        }
    }

    pub fn dim(&self) -> usize {
        self.layout.total_dim()
    }

    pub fn terms(&self) -> Option<&[PermTerm]> {
        match &self.repr {
            Repr::Permutations(t) => Some(t),
            Repr::Dense(_) => None,
        }
    }

    /// Index reached from column `col` under `P_σ`.
    fn permuted_index(&self, sigma: &[usize], col: usize, strides: &[usize]) -> usize {
        let digits = self.layout.digits(col);
        sigma.iter().zip(strides).map(|(&s, &st)| digits[s] * st).sum()
    }

    /// Nonzero entries as `((row, col), value)`, sorted by position.
    pub fn nonzeros(&self) -> Vec<((usize, usize), C64)> {
        match &self.repr {
            Repr::Dense(m) => {
                let n = m.dim();
                (0..n * n)
                    .map(|k| ((k / n, k % n), m[(k / n, k % n)]))
                    .filter(|(_, v)| v.norm() > 0.0)
                    .collect()
            }
            Repr::Permutations(terms) => {
                let strides = self.layout.strides();
                let mut entries = std::collections::BTreeMap::new();
                for term in terms {
                    for col in 0..self.dim() {
                        let row = self.permuted_index(&term.sigma, col, &strides);
                        *entries.entry((row, col)).or_insert(C64::new(0.0, 0.0)) += term.coeff;
                    }
                }
                entries.into_iter().filter(|(_, v)| v.norm() > 1e-15).collect()
            }
        }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        match &self.repr {
            Repr::Dense(m) => m.clone(),
            Repr::Permutations(_) => {
                let mut m = ComplexMatrix::zeros(self.dim());
                for ((r, c), v) in self.nonzeros() {
                    m[(r, c)] = v;
                }
                m
            }
        }
    }

    /// `Tr[O (ρ₁ ⊗ ρ₂ ⊗ …)]`; the blocks split the layout's factors evenly.
    pub fn expectation_product(&self, blocks: &[&ComplexMatrix]) -> C64 {
        match &self.repr {
            Repr::Dense(m) => {
                let r = crate::matrix::kron_all(blocks.iter().copied());
                m.trace_product(&r)
            }
            Repr::Permutations(terms) => {
                let strides = self.layout.strides();
                let dims = self.layout.dims();
                let per_block = dims.len() / blocks.len();
                let block_strides: Vec<Vec<usize>> = (0..blocks.len())
                    .map(|b| {
                        let local = &dims[b * per_block..(b + 1) * per_block];
                        let mut s = vec![1; per_block];
                        for i in (0..per_block.saturating_sub(1)).rev() {
                            s[i] = s[i + 1] * local[i + 1];
                        }
                        s
                    })
                    .collect();
                let local_index = |digits: &[usize], b: usize| -> usize {
                    (0..per_block)
                        .map(|i| digits[b * per_block + i] * block_strides[b][i])
                        .sum()
                };
                let mut total = C64::new(0.0, 0.0);
                for term in terms {
                    // Tr[P R] = Σ_c R[c, σ-image of c]
                    let mut acc = C64::new(0.0, 0.0);
                    for col in 0..self.dim() {
                        let row = self.permuted_index(&term.sigma, col, &strides);
                        let rd = self.layout.digits(row);
                        let cd = self.layout.digits(col);
                        let mut prod = C64::new(1.0, 0.0);
                        for (b, rho) in blocks.iter().enumerate() {
                            prod *= rho[(local_index(&cd, b), local_index(&rd, b))];
                            if prod.norm() == 0.0 {
                                break;
                            }
                        }
                        acc += prod;
                    }
                    total += acc * term.coeff;
                }
                total
            }
        }
    }

    /// SHA-256 over the sorted nonzero entries, first 16 hex digits.
    pub fn hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.dim() as u64).to_le_bytes());
        for ((r, c), v) in self.nonzeros() {
            // round away last-bit noise so equal operators hash equally
            let (re, im) = ((v.re * 1e12).round() as i64, (v.im * 1e12).round() as i64);
            if re == 0 && im == 0 {
                continue;
            }
            hasher.update((r as u64).to_le_bytes());
            hasher.update((c as u64).to_le_bytes());
            hasher.update(re.to_le_bytes());
            hasher.update(im.to_le_bytes());
        }
        let digest = hasher.finalize();
        let mut hex = String::with_capacity(16);
        for byte in &digest[..8] {
            let _ = write!(hex, "{byte:02x}");
        }
        hex
    }
}
