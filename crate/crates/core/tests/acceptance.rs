//! One line per acceptance criterion, `PASS`/`FAIL` followed by the measured
//! quantity and the pinned tolerance. Exits nonzero if any criterion fails.

use qcorr_core::dqc1::{designed_unitary, dqc1_output_state, dqc1_sweep, linspace, quadratic_coefficient, trace_estimate, Dqc1Instance};
use qcorr_core::dynamics::{
    detect_kink, evolve_phase_flip, max_gap, one_sided_slopes, phase_flip_coefficients, phase_flip_kink_time,
    trajectory, werner_family, Channel, LorentzianParams, PhaseFlipParams, Trajectory,
};
use qcorr_core::exec::Execution;
use qcorr_core::matrix::{kron, pauli, ComplexMatrix, C64};
use qcorr_core::measures::{
    correlation_report, geometric_discord_bruteforce, geometric_discord_closed, random_state_reports, DEFAULT_GRID, DEFAULT_REFINE_TOL,
};
use qcorr_core::output::{dqc1_table, gap_table, scatter_table, trajectory_table};
use qcorr_core::schemes::{
    direct_traces_s, interferometer_estimate, multicopy_traces_s, nmr_localization_check, nmr_plan,
    optical_observables_general, optical_plan, shift_operator, trs_from_observables, Setting,
};
use qcorr_core::states::{bell_diagonal, random_mixed, random_pure, seeded_rng, werner};
use std::time::Instant;

const EXEC: Execution = Execution::Parallel;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn c1_dqc1_constants() -> Outcome {
    const TOL: f64 = 1e-5;
    const BUDGET_S: f64 = 5.0;
    let start = Instant::now();
    let grid = linspace(0.0, 1.0, 21);
    let rows = dqc1_sweep(&grid, EXEC).expect("valid grid");
    let dg: Vec<f64> = rows.iter().map(|r| r.d_g).collect();
    let q: Vec<f64> = rows.iter().map(|r| r.q).collect();
    let (c_dg, c_q) = (quadratic_coefficient(&grid, &dg), quadratic_coefficient(&grid, &q));
    let secs = start.elapsed().as_secs_f64();
    let (e_dg, e_q) = ((c_dg - 0.0531325).abs(), (c_q - 0.0402856).abs());
    outcome(
        e_dg < TOL && e_q < TOL && secs < BUDGET_S,
        format!("c_DG={c_dg:.7} (err {e_dg:.1e}), c_Q={c_q:.7} (err {e_q:.1e}), tol {TOL:e}; {secs:.2}s < {BUDGET_S}s"),
    )
}

fn c2_trace_estimation() -> Outcome {
    const TOL: f64 = 1e-10;
    let u = designed_unitary();
    let mut diag_sum = C64::new(0.0, 0.0);
    for i in 0..8 {
        diag_sum += u[(i, i)];
    }
    let mut worst: f64 = 0.0;
    for mu in [0.25, 0.5, 1.0] {
        let inst = Dqc1Instance::designed(mu).expect("valid mu");
        let est = trace_estimate(&dqc1_output_state(&inst), mu).expect("mu > 0");
        worst = worst.max((est - diag_sum).norm());
    }
    outcome(worst < TOL, format!("max |est - sum diag| = {worst:.1e}, tol {TOL:e}"))
}

fn c3_oracle() -> Outcome {
    const TOL: f64 = 1e-6;
    const BUDGET_S: f64 = 120.0;
    let start = Instant::now();
    let cases: Vec<(usize, u64)> = (0..100).map(|k| (2, k)).chain((0..50).map(|k| (3, k))).collect();
    let errs = EXEC.map(&cases, |&(d, k)| {
        let mut rng = seeded_rng(3000 + d as u64, k);
        let rho = random_mixed(d, 1 + (k as usize) % (2 * d), &mut rng).expect("valid rank");
        (geometric_discord_closed(&rho) - geometric_discord_bruteforce(&rho, DEFAULT_GRID, DEFAULT_REFINE_TOL)).abs()
    });
    let worst = errs.iter().cloned().fold(0.0, f64::max);
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst < TOL && secs < BUDGET_S,
        format!("100 (d=2) + 50 (d=3) states, max err {worst:.1e}, tol {TOL:e}; {secs:.1}s < {BUDGET_S}s"),
    )
}

fn c4_inequalities() -> Outcome {
    const SLACK: f64 = 1e-12;
    const PURE_TOL: f64 = 1e-10;
    let reports = random_state_reports(10_000, 4000, EXEC);
    let violations = reports
        .iter()
        .filter(|r| r.q > r.d_g + SLACK || r.neg_sq > r.q + SLACK)
        .count();
    let pure_err = EXEC
        .map_range(100, |k| {
            let rho = random_pure(2, &mut seeded_rng(4001, k as u64)).expect("qubit");
            correlation_report(&rho).gap().abs()
        })
        .into_iter()
        .fold(0.0, f64::max);
    outcome(
        violations == 0 && pure_err < PURE_TOL,
        format!("{violations} violations of D_G >= Q >= N^2 in 10^4 states (slack {SLACK:e}); pure max |D_G-Q| = {pure_err:.1e}, tol {PURE_TOL:e}"),
    )
}

fn c5_identities() -> Outcome {
    const SHIFT_TOL: f64 = 1e-12;
    const ROUTE_TOL: f64 = 1e-10;
    let mut shift_err: f64 = 0.0;
    for local in [2usize, 4] {
        for k in 2..=4 {
            let v = shift_operator(k, local).expect("k in range");
            let mut rng = seeded_rng(5000 + local as u64, k as u64);
            let factors: Vec<ComplexMatrix> = (0..k)
                .map(|_| {
                    let rho = random_mixed(2, 4, &mut rng).expect("valid");
                    if local == 2 {
                        rho.reduced_a()
                    } else {
                        rho.into_matrix()
                    }
                })
                .collect();
            let blocks: Vec<&ComplexMatrix> = factors.iter().collect();
            let lhs = v.expectation_product(&blocks);
            let rhs = factors[1..].iter().fold(factors[0].clone(), |acc, f| acc.matmul(f)).trace();
            shift_err = shift_err.max((lhs - rhs).norm());
        }
    }
    let route_errs = EXEC.map_range(100, |k| {
        let rho = random_mixed(2, 1 + k % 4, &mut seeded_rng(5001, k as u64)).expect("valid");
        let direct = direct_traces_s(&rho);
        let nine = multicopy_traces_s(&rho).expect("two qubits");
        let routes = trs_from_observables(&optical_observables_general(&rho));
        let diff = |a: (f64, f64)| (a.0 - direct.0).abs().max((a.1 - direct.1).abs());
        [diff(nine), diff(routes.c_route), diff(routes.d_route)]
    });
    let worst = |i: usize| route_errs.iter().map(|e| e[i]).fold(0.0, f64::max);
    let (nine, c, d) = (worst(0), worst(1), worst(2));
    outcome(
        shift_err < SHIFT_TOL && nine < ROUTE_TOL && c < ROUTE_TOL && d < ROUTE_TOL,
        format!("shift k=2..4 err {shift_err:.1e} (tol {SHIFT_TOL:e}); nine-term {nine:.1e}, c-route {c:.1e}, d-route {d:.1e} (tol {ROUTE_TOL:e})"),
    )
}

fn c6_interferometer() -> Outcome {
    const TOL: f64 = 1e-10;
    let projective = optical_plan(2, Setting::OpticalProjective).expect("d=2");
    let swap = optical_plan(2, Setting::OpticalSwap).expect("d=2");
    let errs = EXEC.map_range(20, |k| {
        let rho = random_mixed(2, 1 + k % 4, &mut seeded_rng(6000, k as u64)).expect("valid");
        let exact = optical_observables_general(&rho);
        let c = projective
            .observables
            .iter()
            .zip(exact.c)
            .map(|(e, v)| (interferometer_estimate(e, &rho) - v).abs());
        let d = swap
            .observables
            .iter()
            .zip(exact.d_vals)
            .map(|(e, v)| (interferometer_estimate(e, &rho) - v).abs());
        c.chain(d).fold(0.0, f64::max)
    });
    let worst = errs.into_iter().fold(0.0, f64::max);
    outcome(worst < TOL, format!("11 observables x 20 states, max err {worst:.1e}, tol {TOL:e}"))
}

fn c7_nmr() -> Outcome {
    const TOL: f64 = 1e-10;
    let mut counts_ok = true;
    let mut counts = Vec::new();
    for d in [2usize, 3, 4, 8] {
        let plan = nmr_plan(d).expect("d >= 2");
        counts_ok &= plan.count() == 3 * d * d && plan.tomography_count == 4 * d * d - 1;
        counts.push(format!("d={d}: {}/{}", plan.count(), plan.tomography_count));
    }
    let worst = EXEC
        .map_range(100, |k| {
            let rho = random_mixed(2, 1 + k % 4, &mut seeded_rng(7000, k as u64)).expect("valid");
            let mut w: f64 = 0.0;
            for nu in 1..=3 {
                for lambda in 1..=3 {
                    let c = nmr_localization_check(&rho, nu, lambda).expect("valid axes");
                    w = w.max((c.lhs - c.rhs).abs());
                }
            }
            w
        })
        .into_iter()
        .fold(0.0, f64::max);
    outcome(
        counts_ok && worst < TOL,
        format!("{}; localization max err {worst:.1e}, tol {TOL:e}", counts.join(", ")),
    )
}

fn lorentz(lambda: f64) -> Channel {
    Channel::Lorentzian(LorentzianParams::new(1.0, lambda).expect("positive"))
}

fn phase_flip() -> Channel {
    Channel::PhaseFlip(PhaseFlipParams::new(1.0).expect("positive"))
}

const C0: [f64; 3] = [1.0, -0.6, 0.6];

fn werner_trajectories() -> [Trajectory; 2] {
    let times = linspace(0.0, 20.0, 2001);
    let initial = werner(0.75).expect("r in range");
    [1.0, 0.1].map(|lambda| trajectory(&initial, lorentz(lambda), &times, EXEC).expect("P_t(0) = 1"))
}

fn phase_flip_trajectory() -> Trajectory {
    let initial = bell_diagonal(C0[0], C0[1], C0[2]).expect("valid");
    trajectory(&initial, phase_flip(), &linspace(0.0, 2.0, 401), EXEC).expect("valid grid")
}

fn has_revival(q: &[f64]) -> bool {
    let minimum = (1..q.len() - 1).find(|&i| q[i] < q[i - 1] && q[i] <= q[i + 1]);
    minimum.is_some_and(|m| (m + 1..q.len() - 1).any(|i| q[i] > q[i - 1] && q[i] >= q[i + 1]))
}

fn c8_dynamics() -> Outcome {
    const GAP_SLACK: f64 = 1e-12;
    const KINK_TOL: f64 = 0.01;
    const SLOPE_TOL: f64 = 1e-6;
    const H: f64 = 1e-4;
    let mut parts = Vec::new();
    let mut pass = true;

    let trajs = werner_trajectories();
    let ordered = trajs
        .iter()
        .all(|t| t.reports.iter().all(|r| r.q <= r.d_g + GAP_SLACK));
    let q_slow: Vec<f64> = trajs[1].reports.iter().map(|r| r.q).collect();
    let revival = has_revival(&q_slow);
    pass &= ordered && revival;
    parts.push(format!("Werner r=3/4: Q <= D_G {ordered}, lambda=0.1 revival {revival}"));

    let params = PhaseFlipParams::new(1.0).expect("positive");
    let t_star = phase_flip_kink_time(0.6, &params);
    let dg = |t: f64| correlation_report(&evolve_phase_flip(C0, t, &params).expect("valid")).d_g;
    let q = |t: f64| correlation_report(&evolve_phase_flip(C0, t, &params).expect("valid")).q;
    let (t_kink, _) = detect_kink(dg, 0.0, 2.0, 401, 6);
    let (ql, qr) = one_sided_slopes(q, t_star, H);
    let (dl, dr) = one_sided_slopes(dg, t_star, H);
    let kink_ok = (t_kink - t_star).abs() < KINK_TOL;
    let smooth_ok = (ql - qr).abs() < SLOPE_TOL;
    pass &= kink_ok && smooth_ok;
    parts.push(format!(
        "phase-flip kink at {t_kink:.5} vs t*={t_star:.5} (tol {KINK_TOL}), Q slope jump {:.1e} (tol {SLOPE_TOL:e}), D_G slope jump {:.3}",
        (ql - qr).abs(),
        (dl - dr).abs()
    ));

    let rs: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let rows = max_gap(werner_family, &rs, lorentz(1.0), &linspace(0.0, 10.0, 201), EXEC).expect("valid family");
    let monotone = rows.windows(2).all(|w| w[1].max_gap >= w[0].max_gap);
    pass &= monotone;
    parts.push(format!(
        "max-gap over r nondecreasing {monotone} ({:.4} .. {:.4})",
        rows[0].max_gap,
        rows[10].max_gap
    ));
    outcome(pass, parts.join("; "))
}

fn c9_channel_sanity() -> Outcome {
    const TRACE_TOL: f64 = 1e-14;
    const EIG_FLOOR: f64 = -1e-9;
    let initial = werner(0.75).expect("valid");
    let mut trace_err: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    let mut check = |channel: &Channel, rho0: &qcorr_core::DensityMatrix, times: &[f64]| {
        for &t in times {
            let rho = channel.evolve(rho0, t).expect("sampled time");
            trace_err = trace_err.max((rho.matrix().trace() - C64::new(1.0, 0.0)).norm());
            min_eig = min_eig.min(rho.eigenvalues()[0]);
        }
    };
    for traj in werner_trajectories() {
        check(&traj.channel, &initial, &traj.times);
    }
    let pf = phase_flip_trajectory();
    let bd = bell_diagonal(C0[0], C0[1], C0[2]).expect("valid");
    check(&pf.channel, &bd, &pf.times);

    let params = PhaseFlipParams::new(1.0).expect("positive");
    let zz = kron(&pauli(3), &pauli(3));
    let c3_exact = pf.times.iter().all(|&t| phase_flip_coefficients(C0, t, &params)[2] == C0[2]);
    let c3_state = pf
        .times
        .iter()
        .map(|&t| (evolve_phase_flip(C0, t, &params).expect("valid").expectation(&zz) - C0[2]).abs())
        .fold(0.0, f64::max);
    outcome(
        trace_err < TRACE_TOL && min_eig >= EIG_FLOOR && c3_exact && c3_state < TRACE_TOL,
        format!(
            "max |Tr-1| = {trace_err:.1e} (tol {TRACE_TOL:e}), min eigenvalue {min_eig:.1e} (floor {EIG_FLOOR:e}), c3(t)=c3(0) {c3_exact}, <zz> drift {c3_state:.1e}"
        ),
    )
}

fn sweeps_csv(exec: Execution) -> Vec<String> {
    let times = linspace(0.0, 5.0, 101);
    let rs: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    vec![
        scatter_table(&random_state_reports(2000, 10, exec)).to_csv(),
        dqc1_table(&dqc1_sweep(&linspace(0.0, 1.0, 21), exec).expect("valid")).to_csv(),
        trajectory_table(&trajectory(&werner(0.75).expect("valid"), lorentz(0.1), &times, exec).expect("valid")).to_csv(),
        gap_table("r", &max_gap(werner_family, &rs, lorentz(1.0), &times, exec).expect("valid")).to_csv(),
    ]
}

fn c10_determinism() -> Outcome {
    let first = sweeps_csv(Execution::Parallel);
    let second = sweeps_csv(Execution::Parallel);
    let sequential = sweeps_csv(Execution::Sequential);
    let same = first == second && first == sequential;
    outcome(
        same,
        format!("scatter, dqc1, trajectory and max-gap CSVs byte-identical across runs and execution modes: {same}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("DQC1 quadratic constants", c1_dqc1_constants),
        ("DQC1 trace estimation", c2_trace_estimation),
        ("closed form vs brute-force oracle", c3_oracle),
        ("inequality chain and pure-state equality", c4_inequalities),
        ("multicopy identity suite", c5_identities),
        ("ancilla interferometer", c6_interferometer),
        ("NMR plan counts and localization", c7_nmr),
        ("dynamics qualitative features", c8_dynamics),
        ("channel sanity", c9_channel_sanity),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("{} criterion {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
