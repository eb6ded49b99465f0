//! `verify`: numerical checks of the model's analytic claims.

use super::{f, write_csv, RunContext};
use crate::CliError;
use slam_energy_core::channel::transmitted_bits;
use slam_energy_core::energy::{total_energy_upper_bound, upper_bound_derivative};
use slam_energy_core::geometry::max_distance_in_window;
use slam_energy_core::planner::{optimal_speed, optimal_t_sens, period_links};
use slam_energy_core::power::{
    solve_mission_powers, solve_period_power, upper_bound_power, verify_duty_monotonicity, xi,
};

/// One verification check with its observed value and threshold.
#[derive(Debug, Clone)]
pub struct VerifyCheck {
    pub name: &'static str,
    /// Observed metric; the comparator below decides the verdict.
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
    /// Whether a failure fails the run. Informational studies are recorded
    /// but do not gate the exit status.
    pub gating: bool,
    pub detail: String,
}

pub struct VerifyOutcome {
    pub checks: Vec<VerifyCheck>,
    pub all_passed: bool,
}

pub fn run_verify(ctx: &RunContext) -> Result<VerifyOutcome, CliError> {
    let mission = ctx.mission()?;
    let model = ctx.channel_model()?;
    let payload = ctx.config.payload()?;
    let mechanics = ctx.config.mechanics()?;
    let n_sub = ctx.config.n_sub_intervals;
    let tol = ctx.config.power_tolerance;

    let v_star = optimal_speed(&mission);
    let t_star = optimal_t_sens(v_star, &mission)
        .map_err(|e| CliError::Config(e.to_string()))?
        .value;
    let plan = slam_energy_core::geometry::SchedulePlan::new(&mission, v_star, t_star, 1.0)?;
    let realization = ctx.realization(&model, plan.periods as usize + 1);

    let mut checks = Vec::new();

    // Communication energy falls toward rho = 1.
    let duty_report = verify_duty_monotonicity(
        v_star,
        t_star,
        &mission,
        &model,
        &realization,
        &payload,
        n_sub,
        tol,
        &[0.25, 0.5, 0.75, 1.0],
    )?;
    let worst_step = duty_report
        .comm_energy
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    checks.push(VerifyCheck {
        name: "duty_monotonicity",
        value: worst_step,
        threshold: 0.0,
        passed: duty_report.strictly_decreasing,
        gating: true,
        detail: format!("E_comm over rho grid: {:?} J", duty_report.comm_energy),
    });

    // Analytic derivative against centered finite differences, and its
    // positivity, on a log grid of speeds.
    let links = period_links(
        &mission,
        v_star,
        &model,
        &realization,
        ctx.config.distance_grid,
    )?;
    let mut worst_fd = 0.0f64;
    let mut min_deriv = f64::INFINITY;
    let n_grid = 20;
    for i in 0..n_grid {
        let v = 0.05 * (20.0f64 / 0.05).powf(i as f64 / (n_grid - 1) as f64);
        let analytic =
            upper_bound_derivative(v, &mission, &mechanics, &links, &payload, model.bandwidth)?;
        let h = 1e-5 * v;
        let hi = total_energy_upper_bound(
            v + h,
            &mission,
            &mechanics,
            &links,
            &payload,
            model.bandwidth,
        )?;
        let lo = total_energy_upper_bound(
            v - h,
            &mission,
            &mechanics,
            &links,
            &payload,
            model.bandwidth,
        )?;
        let fd = (hi - lo) / (2.0 * h);
        worst_fd = worst_fd.max((analytic - fd).abs() / analytic.abs());
        min_deriv = min_deriv.min(analytic);
    }
    checks.push(VerifyCheck {
        name: "derivative_fd",
        value: worst_fd,
        threshold: 1e-6,
        passed: worst_fd <= 1e-6,
        gating: true,
        detail: "max relative deviation from centered differences".into(),
    });
    checks.push(VerifyCheck {
        name: "derivative_positive",
        value: min_deriv,
        threshold: 0.0,
        passed: min_deriv > 0.0,
        gating: true,
        detail: "minimum dE/dv over the speed grid".into(),
    });

    // Closed-form upper-bound power dominates the solved power everywhere.
    let x = xi(&mission, &payload, model.bandwidth);
    let mut min_gap = f64::INFINITY;
    let powers = solve_mission_powers(&plan, &mission, &model, &realization, &payload, n_sub, tol)?;
    for k in 2..=plan.periods + 1 {
        let solved = powers.power(k).expect("every period solved");
        let d_max = max_distance_in_window(k, &plan, &mission, ctx.config.distance_grid)?;
        let mu = slam_energy_core::channel::link_mu(
            &model,
            realization.h_mag_sq(k).map_err(CliError::from)?,
        );
        let bound = upper_bound_power(v_star, d_max, mu, x);
        min_gap = min_gap.min((bound - solved) / solved);
    }
    checks.push(VerifyCheck {
        name: "upper_bound_domination",
        value: min_gap,
        threshold: -1e-9,
        passed: min_gap >= -1e-9,
        gating: true,
        detail: "min relative power gap (bound - solved)/solved".into(),
    });

    // Doubling the quadrature resolution barely moves the data amount.
    let mut worst_change = 0.0f64;
    for k in 2..=plan.periods + 1 {
        let p = powers.power(k).expect("every period solved");
        let coarse = transmitted_bits(k, p, &plan, &mission, &model, &realization, 512)?;
        let fine = transmitted_bits(k, p, &plan, &mission, &model, &realization, 1024)?;
        worst_change = worst_change.max((fine - coarse).abs() / coarse);
    }
    checks.push(VerifyCheck {
        name: "quadrature_convergence",
        value: worst_change,
        threshold: 1e-3,
        passed: worst_change < 1e-3,
        gating: true,
        detail: "max relative change of I_k from N_s = 512 to 1024".into(),
    });

    // Single-rectangle power solves stay near the refined solution.
    let mut worst_coarse = 0.0f64;
    for k in 2..=plan.periods + 1 {
        let coarse =
            solve_period_power(k, &plan, &mission, &model, &realization, &payload, 1, tol)?;
        let fine = solve_period_power(
            k,
            &plan,
            &mission,
            &model,
            &realization,
            &payload,
            1024,
            tol,
        )?;
        worst_coarse = worst_coarse.max((coarse - fine).abs() / fine);
    }
    checks.push(VerifyCheck {
        name: "coarse_power_agreement",
        value: worst_coarse,
        threshold: 0.05,
        passed: worst_coarse < 0.05,
        gating: false,
        detail: "max relative gap between N_s = 1 and N_s = 1024 powers".into(),
    });

    for c in &checks {
        let verdict = match (c.passed, c.gating) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "fail (recorded)",
        };
        println!(
            "check {:<24} {:<16} value {:+.6e}  threshold {:+.6e}  ({})",
            c.name, verdict, c.value, c.threshold, c.detail
        );
    }

    let csv_path = ctx.out_path("verify.csv");
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            vec![
                c.name.to_string(),
                f(c.value),
                f(c.threshold),
                c.passed.to_string(),
                c.gating.to_string(),
            ]
        })
        .collect();
    write_csv(
        &csv_path,
        &["check", "value", "threshold", "passed", "gating"],
        &rows,
    )?;

    let mut manifest = ctx.manifest("verify");
    manifest.add_output(&csv_path)?;
    ctx.finish_manifest(manifest)?;

    let all_passed = checks.iter().all(|c| c.passed || !c.gating);
    if !all_passed {
        let failing: Vec<&str> = checks
            .iter()
            .filter(|c| !c.passed && c.gating)
            .map(|c| c.name)
            .collect();
        return Err(CliError::Verification(failing.join(", ")));
    }
    Ok(VerifyOutcome { checks, all_passed })
}
