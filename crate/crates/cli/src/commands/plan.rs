//! `plan`: solve the optimal schedule and report powers, energy and
//! feasibility.

use super::{f, write_csv, RunContext};
use crate::CliError;
use slam_energy_core::energy::total_energy;
use slam_energy_core::geometry::{distance_to_ap_clamped, max_distance_in_window};
use slam_energy_core::planner::{check_feasibility, min_upper_bound_energy, period_links};
use slam_energy_core::power::solve_mission_powers;

/// Everything `plan` computed, for callers and tests.
pub struct PlanOutcome {
    pub speed: f64,
    pub t_sens: f64,
    pub periods: u32,
    pub feasible: bool,
    pub breakdown: slam_energy_core::energy::EnergyBreakdown,
    pub min_upper_bound: f64,
}

pub fn run_plan(ctx: &RunContext) -> Result<PlanOutcome, CliError> {
    let mission = ctx.mission()?;
    let model = ctx.channel_model()?;
    let payload = ctx.config.payload()?;
    let mechanics = ctx.config.mechanics()?;

    let plan = ctx.plan(&mission)?;
    if !mission.practical_t_sens(plan.t_sens) {
        eprintln!(
            "warning: sensing period {:.4} s is outside the practical range [{}, {}] s",
            plan.t_sens, mission.t_sens_range.0, mission.t_sens_range.1
        );
    }

    let realization = ctx.realization(&model, plan.periods as usize + 1);
    let powers = solve_mission_powers(
        &plan,
        &mission,
        &model,
        &realization,
        &payload,
        ctx.config.n_sub_intervals,
        ctx.config.power_tolerance,
    )?;
    let breakdown = total_energy(&plan, &powers, &mechanics, &mission)?;
    let report = check_feasibility(
        &plan,
        &powers,
        &mission,
        &payload,
        &model,
        &realization,
        ctx.config.n_sub_intervals,
    );
    let links = period_links(
        &mission,
        plan.speed,
        &model,
        &realization,
        ctx.config.distance_grid,
    )?;
    let min_upper =
        min_upper_bound_energy(&mission, &mechanics, &links, &payload, model.bandwidth)?;

    println!("schedule:");
    println!("  speed          {:.6} m/s", plan.speed);
    println!("  t_sens         {:.6} s", plan.t_sens);
    println!("  rho            {:.6}", plan.rho);
    println!("  periods        {}", plan.periods);
    let (p_min, p_max) = powers
        .powers
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &p| {
            (lo.min(p), hi.max(p))
        });
    println!(
        "powers (W):      {:.6e} .. {:.6e} over {} periods (full table in plan.csv)",
        p_min,
        p_max,
        powers.len()
    );
    println!("energy (J):");
    println!("  comm           {:.6}", breakdown.comm);
    println!("  lidar          {:.6}", breakdown.lidar);
    println!("  mech           {:.6}", breakdown.mech);
    println!("  total          {:.6}", breakdown.total);
    println!("  upper bound    {:.6} (at the optimal speed)", min_upper);
    println!("constraints:");
    for c in &report.checks {
        println!(
            "  {:<9} {}  margin {:+.6e}  ({})",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.margin,
            c.description
        );
    }

    // Per-period table: k, window start time, distances and power.
    let mut rows = Vec::with_capacity(plan.periods as usize);
    for k in 2..=plan.periods + 1 {
        let (t_start, t_end) = plan.comm_window(k)?;
        let d_start = distance_to_ap_clamped(t_start, &mission, plan.speed);
        let d_end = distance_to_ap_clamped(t_end, &mission, plan.speed);
        let d_max = max_distance_in_window(k, &plan, &mission, ctx.config.distance_grid)?;
        let p = powers.power(k).expect("solution covers every period");
        rows.push(vec![
            k.to_string(),
            f(t_start),
            f(d_start),
            f(d_end),
            f(d_max),
            f(p),
            f(p * plan.comm_time()),
        ]);
    }
    let csv_path = ctx.out_path("plan.csv");
    write_csv(
        &csv_path,
        &[
            "k", "t_start", "d_start", "d_end", "d_max", "p_tx", "E_comm_k",
        ],
        &rows,
    )?;

    let mut manifest = ctx.manifest("plan");
    manifest.add_output(&csv_path)?;
    ctx.finish_manifest(manifest)?;

    if !report.feasible {
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        return Err(CliError::Infeasible(format!(
            "constraints failed: {}",
            failing.join(", ")
        )));
    }

    Ok(PlanOutcome {
        speed: plan.speed,
        t_sens: plan.t_sens,
        periods: plan.periods,
        feasible: report.feasible,
        breakdown,
        min_upper_bound: min_upper,
    })
}
