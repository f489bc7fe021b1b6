use super::{MulticopyOperator, ObservablePlan, PermTerm, PlanEntry, Setting};
use crate::matrix::{
    kron, kron_all, kron_power, permute_subsystems, trace_power, ComplexMatrix,
    SubsystemLayout,
};
use crate::measures::s_matrix_of;
use crate::states::{gell_mann_basis, DensityMatrix};
use crate::{Error, Result};

/// Cyclic shift on `k` copies of `C^local_dim`, oriented so that
/// `Tr[V ρ₁⊗…⊗ρ_k] = Tr[ρ₁ρ₂…ρ_k]`: `V|i₁ i₂ … i_k⟩ = |i₂ … i_k i₁⟩`.
pub fn shift_operator(k: usize, local_dim: usize) -> Result<MulticopyOperator> {
    if !(2..=4).contains(&k) {
        return Err(Error::OutOfRange {
            name: "k",
            value: k as f64,
            range: "2..=4",
        });
    }
    let sigma = (0..k).map(|s| (s + 1) % k).collect();
    Ok(MulticopyOperator::permutations(
        format!("V{k}"),
        SubsystemLayout::repeated(&[local_dim], k),
        vec![PermTerm { coeff: 1.0, sigma }],
    ))
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
            range: "d >= 2",
        });
    }
    Ok(())
}

/// `Σᵢ τᵢ⊗τᵢ` with Gell-Mann matrices rescaled to `Tr[τᵢτⱼ] = d δᵢⱼ`.
fn tau_tau_sum(d: usize) -> Result<ComplexMatrix> {
    let basis = gell_mann_basis(d)?;
    let rescale = d as f64 / basis.normalization();
    let mut sum = ComplexMatrix::zeros(d * d);
    for tau in basis.operators() {
        sum = &sum + &kron(tau, tau).scale(rescale);
    }
    Ok(sum)
}

/// `V = (1/d)(I + Σ τᵢ⊗τᵢ)`.
pub fn swap_general(d: usize) -> Result<MulticopyOperator> {
    check_d(d)?;
    let v = (&ComplexMatrix::identity(d * d) + &tau_tau_sum(d)?).scale(1.0 / d as f64);
    Ok(MulticopyOperator::dense("V", SubsystemLayout::repeated(&[d], 2), v))
}

/// `P⁻ = (1/2d)((d−1)I − Σ τᵢ⊗τᵢ)`.
pub fn antisym_projector(d: usize) -> Result<MulticopyOperator> {
    check_d(d)?;
    let id = ComplexMatrix::identity(d * d).scale((d - 1) as f64);
    let p = (&id - &tau_tau_sum(d)?).scale(1.0 / (2 * d) as f64);
    Ok(MulticopyOperator::dense("P-", SubsystemLayout::repeated(&[d], 2), p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PairKind {
    Identity,
    Swap,
    Antisym,
}

use PairKind::{Antisym as P, Identity as I, Swap as V};

/// Factor slots in the copy layout `A₁B₁A₂B₂…`.
const A1: usize = 0;
const B1: usize = 1;
const A2: usize = 2;
const B2: usize = 3;
const A3: usize = 4;
const B3: usize = 5;
const A4: usize = 6;
const B4: usize = 7;

struct ObservableSpec {
    label: &'static str,
    copies: usize,
    pairs: &'static [(usize, usize, PairKind)],
}

const C_SPECS: [ObservableSpec; 7] = [
    ObservableSpec { label: "c1", copies: 2, pairs: &[(A1, A2, P), (B1, B2, P)] },
    ObservableSpec { label: "c2", copies: 2, pairs: &[(A1, A2, P), (B1, B2, I)] },
    ObservableSpec { label: "c3", copies: 2, pairs: &[(A1, A2, I), (B1, B2, P)] },
    ObservableSpec { label: "c4", copies: 4, pairs: &[(A1, A4, P), (A2, A3, P), (B1, B2, P), (B3, B4, P)] },
    ObservableSpec { label: "c5", copies: 4, pairs: &[(A1, A4, P), (A2, A3, I), (B1, B2, P), (B3, B4, P)] },
    ObservableSpec { label: "c6", copies: 4, pairs: &[(A1, A4, P), (A2, A3, P), (B1, B2, P), (B3, B4, I)] },
    ObservableSpec { label: "c7", copies: 4, pairs: &[(A1, A4, I), (A2, A3, P), (B1, B2, P), (B3, B4, I)] },
];

const D_SPECS: [ObservableSpec; 4] = [
    ObservableSpec { label: "d1", copies: 2, pairs: &[(A1, A2, V), (B1, B2, V)] },
    ObservableSpec { label: "d2", copies: 2, pairs: &[(A1, A2, I), (B1, B2, V)] },
    ObservableSpec { label: "d3", copies: 4, pairs: &[(A1, A4, I), (A2, A3, V), (B1, B2, V), (B3, B4, V)] },
    ObservableSpec { label: "d4", copies: 4, pairs: &[(A1, A4, V), (A2, A3, V), (B1, B2, V), (B3, B4, V)] },
];

fn copy_layout(d: usize, copies: usize) -> SubsystemLayout {
    SubsystemLayout::repeated(&[2, d], copies)
}

/// Expands products of `I`, `V` and `(I − V)/2` on disjoint slot pairs into
/// a signed sum of slot permutations.
fn permutation_form(spec: &ObservableSpec, d: usize) -> MulticopyOperator {
    let n = 2 * spec.copies;
    let mut terms = vec![PermTerm {
        coeff: 1.0,
        sigma: (0..n).collect(),
    }];
    for &(i, j, kind) in spec.pairs {
        let swapped = |t: &PermTerm, coeff: f64| {
            let mut sigma = t.sigma.clone();
            sigma.swap(i, j);
            PermTerm { coeff, sigma }
        };
        terms = match kind {
            PairKind::Identity => terms,
            PairKind::Swap => terms.iter().map(|t| swapped(t, t.coeff)).collect(),
            PairKind::Antisym => terms
                .iter()
                .flat_map(|t| {
                    [
                        PermTerm {
                            coeff: 0.5 * t.coeff,
                            sigma: t.sigma.clone(),
                        },
                        swapped(t, -0.5 * t.coeff),
                    ]
                })
                .collect(),
        };
    }
    MulticopyOperator::permutations(spec.label, copy_layout(d, spec.copies), terms)
}

/// Kronecker product of the pair operators in the order they are listed,
/// then reordered into the copy layout.
fn dense_form(spec: &ObservableSpec, d: usize) -> Result<MulticopyOperator> {
    let factor_dim = |slot: usize| if slot.is_multiple_of(2) { 2 } else { d };
    let mut op_order = Vec::new();
    let mut factors = Vec::new();
    for &(i, j, kind) in spec.pairs {
        let local = factor_dim(i);
        let m = match kind {
            PairKind::Identity => ComplexMatrix::identity(local * local),
            PairKind::Swap => swap_general(local)?.matrix(),
            PairKind::Antisym => antisym_projector(local)?.matrix(),
        };
        factors.push(m);
        op_order.extend([i, j]);
    }
    let op = kron_all(&factors);
    let op_layout = SubsystemLayout::new(op_order.iter().map(|&s| factor_dim(s)).collect())?;
    // slot s of the copy layout is factor perm[s] of the operator
    let mut perm = vec![0; op_order.len()];
    for (pos, &slot) in op_order.iter().enumerate() {
        perm[slot] = pos;
    }
    let m = permute_subsystems(&op, &op_layout, &perm)?;
    Ok(MulticopyOperator::dense(spec.label, copy_layout(d, spec.copies), m))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpticalObservables {
    pub c: [f64; 7],
    pub d_vals: [f64; 4],
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim_b() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho.dim_b(),
        });
    }
    Ok(())
}

/// `Tr[O ρ^{⊗k}]` with each operator assembled densely and `ρ^{⊗k}` formed
/// explicitly. Two-qubit states only.
pub fn optical_observables(rho: &DensityMatrix) -> Result<OpticalObservables> {
    require_two_qubit(rho)?;
    let two = kron_power(rho.matrix(), 2);
    let four = kron(&two, &two);
    let eval = |spec: &ObservableSpec| -> Result<f64> {
        let op = dense_form(spec, 2)?.matrix();
        let r = if spec.copies == 2 { &two } else { &four };
        Ok(op.trace_product(r).re)
    };
    let mut out = OpticalObservables {
        c: [0.0; 7],
        d_vals: [0.0; 4],
    };
    for (v, spec) in out.c.iter_mut().zip(&C_SPECS) {
        *v = eval(spec)?;
    }
    for (v, spec) in out.d_vals.iter_mut().zip(&D_SPECS) {
        *v = eval(spec)?;
    }
    Ok(out)
}

/// Same observables on `2⊗d`, evaluated by expanding each operator into
/// slot permutations; never forms the `(2d)^k`-dimensional matrices.
pub fn optical_observables_general(rho: &DensityMatrix) -> OpticalObservables {
    let d = rho.dim_b();
    let eval = |spec: &ObservableSpec| {
        let blocks = vec![rho.matrix(); spec.copies];
        permutation_form(spec, d).expectation_product(&blocks).re
    };
    OpticalObservables {
        c: C_SPECS.each_ref().map(eval),
        d_vals: D_SPECS.each_ref().map(eval),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRoutes {
    /// `(Tr S, Tr S²)` from the projector observables.
    pub c_route: (f64, f64),
    /// `(Tr S, Tr S²)` from the swap observables.
    pub d_route: (f64, f64),
}

pub fn trs_from_observables(obs: &OpticalObservables) -> TraceRoutes {
    let [c1, c2, c3, c4, c5, c6, c7] = obs.c;
    let [d1, d2, d3, d4] = obs.d_vals;
    let c_tr_s = 4.0 * c1 - 2.0 * c2 - c3 + 0.5;
    let c_tr_s2 = 16.0 * c4 + 8.0 * (c7 - c5 - 2.0 * c6) + c3 * c3 + 4.0 * c2 * c2 - c3 - 2.0 * c2 + 0.25;
    TraceRoutes {
        c_route: (c_tr_s, c_tr_s2),
        d_route: (d1 - 0.5 * d2, d4 - d3 + 0.25 * d2 * d2),
    }
}

/// `Tr[X], Tr[T], Tr[X²], Tr[XT], Tr[T²]` with `X = x xᵀ`, `T = t tᵀ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MulticopyTraces {
    pub tr_x: f64,
    pub tr_t: f64,
    pub tr_x2: f64,
    pub tr_xt: f64,
    pub tr_t2: f64,
}

impl MulticopyTraces {
    /// Direct evaluation from the correlation matrix of a two-qubit state.
    pub fn direct(rho: &DensityMatrix) -> Result<Self> {
        require_two_qubit(rho)?;
        let bf = crate::states::bloch_fano_decompose(rho, &gell_mann_basis(2)?)?;
        let tt = bf.t_gram();
        let x = bf.x;
        let xtx: f64 = (0..3).flat_map(|i| (0..3).map(move |k| (i, k))).map(|(i, k)| x[i] * tt[i][k] * x[k]).sum();
        let tr_t2: f64 = (0..3).flat_map(|i| (0..3).map(move |k| (i, k))).map(|(i, k)| tt[i][k] * tt[k][i]).sum();
        let tr_x = bf.x_norm_sq();
        Ok(Self {
            tr_x,
            tr_t: bf.t_norm_sq(),
            tr_x2: tr_x * tr_x,
            tr_xt: xtx,
            tr_t2,
        })
    }
}

struct Marginals {
    rho: ComplexMatrix,
    a: ComplexMatrix,
    b: ComplexMatrix,
    p: f64,
    pa: f64,
    pb: f64,
}

fn marginals(rho: &DensityMatrix) -> Marginals {
    let a = rho.reduced_a();
    let b = rho.reduced_b();
    Marginals {
        p: trace_power(rho.matrix(), 2).re,
        pa: trace_power(&a, 2).re,
        pb: trace_power(&b, 2).re,
        rho: rho.matrix().clone(),
        a,
        b,
    }
}

/// The five traces written through purities, overlaps and powers of
/// `ς = ρ − (ρ_A⊗I)/2 − (I⊗ρ_B)/2`.
pub fn multicopy_traces(rho: &DensityMatrix) -> Result<MulticopyTraces> {
    require_two_qubit(rho)?;
    let m = marginals(rho);
    let id = ComplexMatrix::identity(2);
    let a_id = kron(&m.a, &id);
    let id_b = kron(&id, &m.b);
    let a2_b = kron(&m.a.matmul(&m.a), &m.b);
    let varsigma = &(&m.rho - &a_id.scale(0.5)) - &id_b.scale(0.5);

    let tr_x = 2.0 * m.pa - 1.0;
    let tr_t = 4.0 * (m.p - m.pa / 2.0 - m.pb / 2.0) + 1.0;
    let overlap = m.rho.matmul(&a_id).trace_product(&m.rho.matmul(&a_id)).re;
    let tr_xt = -1.0 + 4.0 * m.p * (-1.0 + m.pa) + 4.0 * m.pa - 4.0 * m.pa * m.pa + 2.0 * m.pb + 8.0 * overlap
        - 8.0 * m.rho.trace_product(&a2_b).re;
    let tr_t2 = -32.0 * (trace_power(&varsigma, 4).re + trace_power(&varsigma, 3).re)
        + 3.0 * (tr_t * tr_t / 2.0 - tr_t - 0.5);
    Ok(MulticopyTraces {
        tr_x,
        tr_t,
        tr_x2: tr_x * tr_x,
        tr_xt,
        tr_t2,
    })
}

/// `(Tr S, Tr S²)` through nine multicopy overlap terms.
pub fn multicopy_traces_s(rho: &DensityMatrix) -> Result<(f64, f64)> {
    require_two_qubit(rho)?;
    let m = marginals(rho);
    let id = ComplexMatrix::identity(2);
    let a_id = kron(&m.a, &id);
    let id_b = kron(&id, &m.b);
    let a_b = kron(&m.a, &m.b);
    let r = &m.rho;

    let p3 = trace_power(r, 3).re;
    let p4 = trace_power(r, 4).re;
    let ov_b = r.matmul(&id_b).trace_product(&r.matmul(&id_b)).re;
    let ov_a = r.matmul(&a_id).trace_product(&r.matmul(&a_id)).re;
    let ab = r.trace_product(&a_b).re;
    let r2_ab = r.matmul(r).trace_product(&a_b).re;

    let tr_s = m.p - m.pb / 2.0;
    let tr_s2 = 0.25
        * (-2.0 - 8.0 * p4 + 8.0 * p3 + 6.0 * m.p * m.p - 2.0 * m.p * (5.0 + m.pb) - 2.0 * m.pa * m.pa
            + 10.0 * m.pa
            - m.pb * m.pb
            + 12.0 * m.pb
            - 6.0 * m.pa * m.pb
            + 4.0 * ov_b
            - 24.0 * ab
            + 8.0 * ov_a
            + 8.0 * r2_ab);
    Ok((tr_s, tr_s2))
}

/// Ancilla `⟨σ₃⟩` after Hadamard, controlled-`W`, Hadamard on
/// `|0⟩⟨0| ⊗ r`, propagated in 2×2 block form. Equals `Re Tr[W r]`.
pub fn interferometer_visibility(w: &ComplexMatrix, r: &ComplexMatrix) -> f64 {
    let half = r.scale(0.5);
    let w_dag = w.adjoint();
    // after H: every block is r/2; after controlled-W: block (a,b) = Wᵃ (r/2) W†ᵇ
    let blocks = [
        [half.clone(), half.matmul(&w_dag)],
        [w.matmul(&half), w.matmul(&half).matmul(&w_dag)],
    ];
    // final H: new (0,0) = Σ/2, new (1,1) = (B00 − B01 − B10 + B11)/2
    let tr = |m: &ComplexMatrix| m.trace();
    let top = (tr(&blocks[0][0]) + tr(&blocks[0][1]) + tr(&blocks[1][0]) + tr(&blocks[1][1])) * 0.5;
    let bottom = (tr(&blocks[0][0]) - tr(&blocks[0][1]) - tr(&blocks[1][0]) + tr(&blocks[1][1])) * 0.5;
    (top - bottom).re
}

/// `Tr[O ρ^{⊗k}]` read from the interferometer. Swap-type observables are
/// Hermitian unitaries and enter directly; projector-type ones enter as the
/// reflection `I − 2O`, so `Tr[O ρ^{⊗k}] = (1 − v)/2`.
pub fn interferometer_estimate(entry: &PlanEntry, rho: &DensityMatrix) -> f64 {
    let op = entry.operator.matrix();
    let r = kron_power(rho.matrix(), entry.copies);
    if op.is_unitary(1e-10) {
        interferometer_visibility(&op, &r)
    } else {
        let reflection = &ComplexMatrix::identity(op.dim()) - &op.scale(2.0);
        (1.0 - interferometer_visibility(&reflection, &r)) / 2.0
    }
}

/// Seven projector or four swap observables on copies of a `2⊗d` state.
pub fn optical_plan(d: usize, setting: Setting) -> Result<ObservablePlan> {
    if !(2..=4).contains(&d) {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
            range: "2..=4",
        });
    }
    let specs: &[ObservableSpec] = match setting {
        Setting::OpticalProjective => &C_SPECS,
        Setting::OpticalSwap => &D_SPECS,
        Setting::Nmr => return Err(Error::InvalidSubsystems("not an optical setting".into())),
    };
    let observables = specs
        .iter()
        .map(|spec| PlanEntry {
            label: spec.label.to_string(),
            operator: permutation_form(spec, d),
            copies: spec.copies,
        })
        .collect();
    Ok(ObservablePlan {
        setting,
        d,
        observables,
        tomography_count: 4 * d * d - 1,
    })
}

/// `(Tr S, Tr S²)` straight from the `S` matrix, for comparisons.
pub fn direct_traces_s(rho: &DensityMatrix) -> (f64, f64) {
    let s = s_matrix_of(rho);
    (s.tr_s, s.tr_s2)
}
