use crate::cli::{DynamicsCommand, Grid, LorentzianArgs, MaxGapCommand, PlanSetting, StateKind, Triple};
use crate::error::{CliError, CliResult};
use crate::verify::run_suite;
use qcorr_core::dqc1::dqc1_sweep;
use qcorr_core::dynamics::{
    max_gap, phase_flip_family, trajectory, werner_family, Channel, LorentzianParams, PhaseFlipParams,
};
use qcorr_core::exec::Execution;
use qcorr_core::measures::{correlation_report, random_state_reports};
use qcorr_core::output::{dqc1_table, gap_table, scatter_table, trajectory_filename, trajectory_table, Table};
use qcorr_core::schemes::{nmr_plan, optical_plan, reconstruct_from_nmr, ObservablePlan, Setting};
use qcorr_core::states::io::{format_state, parse_state};
use qcorr_core::states::{bell_diagonal, bell_phi_plus, gell_mann_basis, random_mixed, seeded_rng, werner};
use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

/// Text produced by a command, and where it should go when no `--out` is
/// given.
pub struct Output {
    pub text: String,
    pub default_path: Option<PathBuf>,
    /// Process should exit with failure after writing.
    pub failed: bool,
}

impl Output {
    fn text(text: String) -> Self {
        Self {
            text,
            default_path: None,
            failed: false,
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

pub fn measure(state_file: &Path) -> CliResult<Output> {
    let rho = parse_state(&read(state_file)?).map_err(|e| match CliError::from(e) {
        CliError::Usage(m) => usage(format!("{}: {m}", state_file.display())),
        other => other,
    })?;
    let r = correlation_report(&rho);
    let mut table = Table::new(&["d_g", "q", "theta", "negativity"]);
    table.push(vec![r.d_g, r.q, r.theta, r.negativity]);
    Ok(Output::text(table.to_csv()))
}

pub fn scatter(samples: usize, seed: u64, exec: Execution) -> CliResult<Output> {
    if samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    Ok(Output::text(scatter_table(&random_state_reports(samples, seed, exec)).to_csv()))
}

pub fn dqc1(grid: &Grid, exec: Execution) -> CliResult<Output> {
    let mus = grid.values();
    if mus.iter().any(|mu| !(0.0..=1.0).contains(mu)) {
        return Err(usage("--mu-grid must lie within [0, 1]"));
    }
    Ok(Output::text(dqc1_table(&dqc1_sweep(&mus, exec)?).to_csv()))
}

fn render_plan(plan: &ObservablePlan) -> String {
    let width = plan
        .observables
        .iter()
        .map(|e| e.label.len())
        .chain(["label".len()])
        .max()
        .unwrap_or(5);
    let mut out = format!(
        "# setting {} d {} observables {} tomography {}\n",
        plan.setting.name(),
        plan.d,
        plan.count(),
        plan.tomography_count
    );
    out.push_str(&format!("{:<width$}  copies  operator-hash\n", "label"));
    for e in &plan.observables {
        out.push_str(&format!("{:<width$}  {:>6}  {}\n", e.label, e.copies, e.operator.hash()));
    }
    out
}

pub fn plan(setting: PlanSetting, d: usize) -> CliResult<Output> {
    let plan = match setting {
        PlanSetting::Nmr => nmr_plan(d)?,
        PlanSetting::OpticalProjective => optical_plan(d, Setting::OpticalProjective)?,
        PlanSetting::OpticalSwap => optical_plan(d, Setting::OpticalSwap)?,
    };
    Ok(Output::text(render_plan(&plan)))
}

pub fn verify(samples: usize, seed: u64, exec: Execution) -> CliResult<Output> {
    if samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let checks = run_suite(samples, seed, exec)?;
    let mut text = String::new();
    for c in &checks {
        text.push_str(&c.line());
        text.push('\n');
    }
    let failures = checks.iter().filter(|c| !c.pass()).count();
    text.push_str(&format!("{} of {} identities passed\n", checks.len() - failures, checks.len()));
    Ok(Output {
        text,
        default_path: None,
        failed: failures > 0,
    })
}

fn lorentzian(args: &LorentzianArgs) -> CliResult<Channel> {
    Ok(Channel::Lorentzian(LorentzianParams::new(args.gamma0, args.lambda)?))
}

fn times(grid: &Grid) -> CliResult<Vec<f64>> {
    if grid.start < 0.0 {
        return Err(usage("time grid must start at t >= 0"));
    }
    Ok(grid.values())
}

pub fn dynamics(cmd: &DynamicsCommand, exec: Execution) -> CliResult<Output> {
    let (initial, channel, grid, extra, out_dir) = match cmd {
        DynamicsCommand::Lorentzian {
            params,
            r,
            t,
            out_dir,
        } => (werner(*r)?, lorentzian(params)?, t, vec![("r", *r)], out_dir),
        DynamicsCommand::Phaseflip {
            c: Triple(c),
            gamma,
            t,
            out_dir,
        } => (
            bell_diagonal(c[0], c[1], c[2])?,
            Channel::PhaseFlip(PhaseFlipParams::new(*gamma)?),
            t,
            vec![("c1", c[0]), ("c2", c[1]), ("c3", c[2])],
            out_dir,
        ),
    };
    let times = times(grid)?;
    let traj = trajectory(&initial, channel, &times, exec)?;
    if let Some(t) = traj.stopped_at {
        eprintln!("note: decay factor turns negative at t = {t}; trajectory truncated");
    }
    Ok(Output {
        text: trajectory_table(&traj).to_csv(),
        default_path: out_dir.as_ref().map(|dir| dir.join(trajectory_filename(&channel, &extra))),
        failed: false,
    })
}

pub fn max_gap_cmd(cmd: &MaxGapCommand, exec: Execution) -> CliResult<Output> {
    let rows = match cmd {
        MaxGapCommand::Werner { params, r_grid, t } => {
            let rs = r_grid.values();
            if rs.iter().any(|r| !(0.0..=1.0).contains(r)) {
                return Err(usage("--r-grid must lie within [0, 1]"));
            }
            gap_table("r", &max_gap(werner_family, &rs, lorentzian(params)?, &times(t)?, exec)?)
        }
        MaxGapCommand::Phaseflip { gamma, s_grid, t } => {
            let ss = s_grid.values();
            if ss.iter().any(|s| !(*s > 0.0 && *s <= 1.0)) {
                return Err(usage("--s-grid must lie within (0, 1]"));
            }
            let channel = Channel::PhaseFlip(PhaseFlipParams::new(*gamma)?);
            gap_table("s", &max_gap(phase_flip_family, &ss, channel, &times(t)?, exec)?)
        }
    };
    Ok(Output::text(rows.to_csv()))
}

/// `label,value` rows; a leading `label,value` header is skipped.
fn read_expectations(path: &Path) -> CliResult<HashMap<String, f64>> {
    let text = read(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut map = HashMap::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 1;
        let record = record.map_err(|e| usage(format!("{}: line {line}: {e}", path.display())))?;
        if record.len() != 2 {
            return Err(usage(format!(
                "{}: line {line}: expected `label,value`, found {} fields",
                path.display(),
                record.len()
            )));
        }
        if i == 0 && &record[0] == "label" && &record[1] == "value" {
            continue;
        }
        let value: f64 = record[1]
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| usage(format!("{}: line {line}: `{}` is not a number", path.display(), &record[1])))?;
        if map.insert(record[0].to_string(), value).is_some() {
            return Err(usage(format!("{}: line {line}: duplicate label `{}`", path.display(), &record[0])));
        }
    }
    Ok(map)
}

pub fn reconstruct(csv_file: &Path, d: usize) -> CliResult<Output> {
    let basis = gell_mann_basis(d)?;
    let (d_g, q) = reconstruct_from_nmr(&read_expectations(csv_file)?, &basis)?;
    let mut table = Table::new(&["d_g", "q"]);
    table.push(vec![d_g, q]);
    Ok(Output::text(table.to_csv()))
}

pub fn state(kind: &StateKind) -> CliResult<Output> {
    let rho = match kind {
        StateKind::Werner { r } => werner(*r)?,
        StateKind::Bell => bell_phi_plus(),
        StateKind::BellDiagonal { c: Triple(c) } => bell_diagonal(c[0], c[1], c[2])?,
        StateKind::Random { d, rank, seed } => {
            if *d < 1 {
                return Err(usage("--d must be at least 1"));
            }
            random_mixed(*d, rank.unwrap_or(2 * d), &mut seeded_rng(*seed, 0))?
        }
    };
    Ok(Output::text(format_state(&rho)))
}
