//! Identity suite behind `qcorr verify`.

use qcorr_core::exec::Execution;
use qcorr_core::matrix::{herm_eigenvalues, ComplexMatrix};
use qcorr_core::measures::{geometric_discord_closed, q_measure};
use qcorr_core::schemes::{
    antisym_projector, direct_traces_s, interferometer_estimate, multicopy_traces_s, nmr_localization_check,
    nmr_plan, optical_observables_general, optical_plan, reconstruct_from_nmr, shift_operator, simulate_plan,
    swap_general, trs_from_observables, Setting,
};
use qcorr_core::states::{gell_mann_basis, random_mixed, seeded_rng};
use qcorr_core::{DensityMatrix, Result};
use std::collections::HashMap;

pub struct Check {
    pub name: &'static str,
    pub error: f64,
    pub tol: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.error < self.tol
    }

    pub fn line(&self) -> String {
        format!(
            "{} {}: max error {:.3e} (tol {:e})",
            if self.pass() { "PASS" } else { "FAIL" },
            self.name,
            self.error,
            self.tol
        )
    }
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn state(d: usize, seed: u64, k: usize) -> Result<DensityMatrix> {
    random_mixed(d, 1 + k % (2 * d), &mut seeded_rng(seed, k as u64))
}

fn shift_identity(seed: u64) -> Result<f64> {
    let mut errs = Vec::new();
    for local in [2usize, 4] {
        for k in 2..=4 {
            let v = shift_operator(k, local)?;
            let mut rng = seeded_rng(seed, (10 * local + k) as u64);
            let mut factors = Vec::with_capacity(k);
            for _ in 0..k {
                let rho = random_mixed(2, 4, &mut rng)?;
                factors.push(if local == 2 { rho.reduced_a() } else { rho.into_matrix() });
            }
            let blocks: Vec<&ComplexMatrix> = factors.iter().collect();
            let product = factors[1..].iter().fold(factors[0].clone(), |acc, f| acc.matmul(f));
            errs.push((v.expectation_product(&blocks) - product.trace()).norm());
        }
    }
    Ok(worst(errs))
}

fn antisym_structure() -> Result<f64> {
    let mut errs = Vec::new();
    for d in 2..=4 {
        let p = antisym_projector(d)?.matrix();
        let v = swap_general(d)?.matrix();
        let half = (&ComplexMatrix::identity(d * d) - &v).scale(0.5);
        errs.push(p.max_abs_diff(&half));
        errs.push((p.trace().re - (d * (d - 1)) as f64 / 2.0).abs());
        for e in herm_eigenvalues(&p)? {
            errs.push(e.abs().min((e - 1.0).abs()));
        }
    }
    Ok(worst(errs))
}

/// Runs every identity on `samples` seeded random states.
pub fn run_suite(samples: usize, seed: u64, exec: Execution) -> Result<Vec<Check>> {
    let tight = 1e-12;
    let tol = 1e-10;
    let route_errs: Vec<[f64; 3]> = exec
        .map_range(samples, |k| -> Result<[f64; 3]> {
            let rho = state(2, seed, k)?;
            let direct = direct_traces_s(&rho);
            let diff = |a: (f64, f64)| (a.0 - direct.0).abs().max((a.1 - direct.1).abs());
            let routes = trs_from_observables(&optical_observables_general(&rho));
            Ok([diff(multicopy_traces_s(&rho)?), diff(routes.c_route), diff(routes.d_route)])
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let qutrit_routes = exec
        .map_range(samples.min(20), |k| -> Result<f64> {
            let rho = state(3, seed.wrapping_add(1), k)?;
            let direct = direct_traces_s(&rho);
            let (a, b) = trs_from_observables(&optical_observables_general(&rho)).d_route;
            Ok((a - direct.0).abs().max((b - direct.1).abs()))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let projective = optical_plan(2, Setting::OpticalProjective)?;
    let swap = optical_plan(2, Setting::OpticalSwap)?;
    let interferometer = exec
        .map_range(samples.min(20), |k| -> Result<f64> {
            let rho = state(2, seed.wrapping_add(2), k)?;
            let exact = optical_observables_general(&rho);
            let values = exact.c.iter().chain(&exact.d_vals);
            let entries = projective.observables.iter().chain(&swap.observables);
            Ok(worst(entries.zip(values).map(|(e, v)| (interferometer_estimate(e, &rho) - v).abs())))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let localization = exec
        .map_range(samples, |k| -> Result<f64> {
            let rho = state(2, seed.wrapping_add(3), k)?;
            let mut w: f64 = 0.0;
            for nu in 1..=3 {
                for lambda in 1..=3 {
                    let c = nmr_localization_check(&rho, nu, lambda)?;
                    w = w.max((c.lhs - c.rhs).abs());
                }
            }
            Ok(w)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut reconstruction = Vec::new();
    for d in 2..=4 {
        let basis = gell_mann_basis(d)?;
        let plan = nmr_plan(d)?;
        for k in 0..samples.min(10) {
            let rho = state(d, seed.wrapping_add(4), k)?;
            let map: HashMap<String, f64> = simulate_plan(&plan, &rho).into_iter().collect();
            let (dg, q) = reconstruct_from_nmr(&map, &basis)?;
            reconstruction.push((dg - geometric_discord_closed(&rho)).abs().max((q - q_measure(&rho)).abs()));
        }
    }

    let column = |i: usize| worst(route_errs.iter().map(|e| e[i]));
    Ok(vec![
        Check {
            name: "shift identity k=2,3,4",
            error: shift_identity(seed)?,
            tol: tight,
        },
        Check {
            name: "antisymmetric projector structure",
            error: antisym_structure()?,
            tol: tight,
        },
        Check {
            name: "nine-term multicopy traces",
            error: column(0),
            tol,
        },
        Check {
            name: "projector route (c1..c7)",
            error: column(1),
            tol,
        },
        Check {
            name: "swap route (d1..d4)",
            error: column(2),
            tol,
        },
        Check {
            name: "swap route on qubit-qutrit states",
            error: worst(qutrit_routes),
            tol,
        },
        Check {
            name: "ancilla interferometer",
            error: worst(interferometer),
            tol,
        },
        Check {
            name: "NMR single-spin localization",
            error: worst(localization),
            tol,
        },
        Check {
            name: "NMR reconstruction of D_G and Q",
            error: worst(reconstruction),
            tol,
        },
    ])
}
