//! One PASS/FAIL line per acceptance criterion, each with its own runtime budget.

mod oracles;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, LN_10, LN_2, PI};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use islkit::bounds::{self, BoundOptions, Diagnostic, ThresholdTime};
use islkit::dynamics::{self, propagate, Generator, Jump, RateFunction, Trajectory};
use islkit::figures::{self, FIGURE_IDS};
use islkit::liouville;
use islkit::matfun;
use islkit::measures::{self, MeasureKind};
use islkit::random;
use islkit::states::{self, mis_state, theta_state};
use islkit::DensityMatrix;

const THETAS: [f64; 3] = [FRAC_PI_2, FRAC_PI_3, FRAC_PI_4];

type Check = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn gamma2() -> RateFunction {
    RateFunction::constant(2.0).unwrap()
}

fn unitary_relative_entropy() -> Check {
    let mut lines = Vec::new();
    let mut ok = true;
    for omega in [1.0, 2.0] {
        let g = Generator::unitary(matfun::sigma_x().scale(omega)).map_err(|e| e.to_string())?;
        let traj = propagate(&g, &DensityMatrix::basis(2, 0), PI / (4.0 * omega), 1e-3).map_err(|e| e.to_string())?;
        let r = bounds::isl_relative_entropy(&traj).map_err(|e| e.to_string())?;
        let c = r.scalar("rms_ln_re_rho").unwrap_or(f64::NAN);
        let scaled = r.t_isl * omega;
        ok &= (3.2275..=3.2295).contains(&c) && (0.2142..=0.2152).contains(&scaled);
        lines.push(format!("ω={omega}: C={c:.6}, t_isl·ω={scaled:.6}"));
    }
    ensure(ok, lines.join("; "))
}

fn trace_measure_under_rotation() -> Check {
    let omega = 1.0;
    let g = Generator::unitary(matfun::sigma_x().scale(omega)).map_err(|e| e.to_string())?;
    let traj = propagate(&g, &DensityMatrix::basis(2, 0), PI, 1e-3).map_err(|e| e.to_string())?;
    let stride = (traj.len() - 1) / 99;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (t, rho) in traj.times().iter().zip(traj.states()).step_by(stride).take(100) {
        worst = worst.max((measures::m_tr(rho) - (2.0 * omega * t).sin().abs()).abs());
        count += 1;
    }
    ensure(count == 100 && worst <= 1e-6, format!("{count} points, max error {worst:.2e}"))
}

fn mis_values() -> Check {
    let rho = mis_state();
    let mr = measures::m_r(&rho).map_err(|e| e.to_string())?;
    let mg = measures::m_g(&rho).map_err(|e| e.to_string())?;
    let mtr = measures::m_tr(&rho);
    let ok = (mr - LN_2).abs() <= 1e-10 && (mg - 0.5).abs() <= 1e-10 && (mtr - 1.0).abs() <= 1e-10;
    ensure(ok, format!("M_r={mr:.12}, M_g={mg:.12}, M_tr={mtr:.12}"))
}

fn trace_bound_saturation() -> Check {
    let rho0 = theta_state(1.1).map_err(|e| e.to_string())?;
    let g = Generator::geodesic(rho0.clone(), 1.0).map_err(|e| e.to_string())?;
    let traj = propagate(&g, &rho0, 1.0, 1e-3).map_err(|e| e.to_string())?;
    let geodesic = bounds::isl_trace(&traj).map_err(|e| e.to_string())?.t_isl;
    let mut worst = (geodesic - 1.0).abs();
    for theta in THETAS {
        let g = Generator::dephasing(gamma2(), 0.0).map_err(|e| e.to_string())?;
        let horizon = 0.8;
        let traj = propagate(&g, &theta_state(theta).map_err(|e| e.to_string())?, horizon, 1e-3)
            .map_err(|e| e.to_string())?;
        let ratio = bounds::isl_trace(&traj).map_err(|e| e.to_string())?.t_isl / horizon;
        worst = worst.max((ratio - 1.0).abs());
    }
    ensure(worst <= 1e-5, format!("geodesic t_isl/T={geodesic:.9}, worst |t_isl/T − 1| = {worst:.2e}"))
}

fn closed_form_agreement() -> Check {
    let g = Generator::dephasing(gamma2(), 0.0).map_err(|e| e.to_string())?;
    let traj = Trajectory::sample(g, 1.0, 1e-3, |t| dynamics::dephasing_analytic(FRAC_PI_2, &gamma2(), 0.0, t))
        .map_err(|e| e.to_string())?;
    let options = BoundOptions { keep_series: true, ..Default::default() };
    let r = bounds::isl_geometric_with(&traj, options).map_err(|e| e.to_string())?;
    let Some(Diagnostic::Series(speed)) = r.diagnostics.get("speed") else {
        return Err("speed series missing".into());
    };
    let mut worst_rel: f64 = 0.0;
    for (&t, v) in traj.times().iter().zip(speed) {
        if t >= 0.05 {
            let exact = oracles::dephasing_mis_speed_sq(t);
            worst_rel = worst_rel.max((v * v - exact).abs() / exact);
        }
    }
    let mut worst_re: f64 = 0.0;
    for theta in THETAS {
        let g = Generator::dephasing(gamma2(), 0.0).map_err(|e| e.to_string())?;
        let traj = propagate(&g, &theta_state(theta).map_err(|e| e.to_string())?, 1.0, 1e-3)
            .map_err(|e| e.to_string())?;
        for (&t, rho) in traj.times().iter().zip(traj.states()) {
            let re = matfun::from_real(&rho.real_part());
            worst_re = worst_re.max(matfun::hs_norm(&g.apply(t, &re).map_err(|e| e.to_string())?));
        }
    }
    ensure(
        worst_rel <= 1e-5 && worst_re <= 1e-12,
        format!("integrand rel error {worst_rel:.2e}, max ‖𝓛(Re ρ_t)‖ = {worst_re:.2e}"),
    )
}

fn figure_reproduction() -> Check {
    let mut lines = Vec::new();
    let mut total = 0;
    for id in FIGURE_IDS {
        let data = figures::figure(id, 1e-3).map_err(|e| e.to_string())?;
        let violations = data.violations();
        total += violations.len();
        match violations.first() {
            Some(first) => lines.push(format!("fig {id}: {} violations, first {first}", violations.len())),
            None => lines.push(format!("fig {id}: ok")),
        }
    }
    ensure(total == 0, lines.join("; "))
}

fn random_lindbladian(rng: &mut ChaCha8Rng, d: usize) -> Generator {
    let jumps = (0..rng.random_range(1..=3))
        .map(|_| Jump { operator: random::ginibre(rng, d, d), rate: RateFunction::constant(random::uniform(rng, 0.1, 2.0)).unwrap() })
        .collect();
    Generator::custom_lindblad(random::hermitian(rng, d), jumps).unwrap()
}

fn liouville_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut fluctuation_failures = 0;
    for k in 0..200 {
        let d = 2 + k % 2;
        let g = random_lindbladian(&mut rng, d);
        let rank = rng.random_range(1..=d);
        let rho = DensityMatrix::validate(random::density_matrix(&mut rng, d, rank)).map_err(|e| e.to_string())?;
        let spread = liouville::liouvillian_fluctuation(&g, 0.0, &rho).map_err(|e| e.to_string())?;
        let norm = liouville::superop_norm(&g, 0.0).map_err(|e| e.to_string())?;
        if spread > norm * (1.0 + 1e-12) {
            fluctuation_failures += 1;
        }
    }
    let mut overlap_failures = 0;
    let mut worst: f64 = 0.0;
    for k in 0..200 {
        let d = 2 + k % 2;
        let rho = DensityMatrix::validate(random::density_matrix(&mut rng, d, d)).map_err(|e| e.to_string())?;
        let sigma = DensityMatrix::validate(random::density_matrix(&mut rng, d, d)).map_err(|e| e.to_string())?;
        let root_f = states::root_fidelity(&rho, &sigma).map_err(|e| e.to_string())?;
        let overlap = liouville::normalized_overlap(&rho, &sigma);
        if root_f < overlap - 1e-12 {
            overlap_failures += 1;
            worst = worst.max(overlap - root_f);
        }
    }
    let g = Generator::dephasing(gamma2(), 0.0).map_err(|e| e.to_string())?;
    let norm = liouville::superop_norm(&g, 0.0).map_err(|e| e.to_string())?;
    ensure(
        fluctuation_failures == 0 && overlap_failures == 0 && (norm - 2.0).abs() <= 1e-9,
        format!(
            "Δ𝓛 > ‖𝓛‖ on {fluctuation_failures}/200; √F < normalized overlap on {overlap_failures}/200 (worst gap {worst:.3e}); dephasing ‖𝓛‖ = {norm:.12}"
        ),
    )
}

fn threshold_scaling() -> Check {
    let g = Generator::dephasing(gamma2(), 0.0).map_err(|e| e.to_string())?;
    let mut times = Vec::new();
    for eps in [1e-1, 1e-2, 1e-3] {
        match bounds::t_epsilon(&g, &mis_state(), MeasureKind::TraceDistance, eps, 10.0, 1e-3).map_err(|e| e.to_string())? {
            ThresholdTime::Reached(t) => times.push(t),
            ThresholdTime::NotReached => return Err(format!("ε = {eps} not reached")),
        }
    }
    let diffs: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();
    let ok = diffs.iter().all(|d| (d - LN_10 / 2.0).abs() <= 1e-4);
    ensure(ok, format!("t_ε = {times:.6?}, differences {diffs:.6?} vs {:.6}", LN_10 / 2.0))
}

fn numerical_kernels() -> Check {
    let g = Generator::dephasing(gamma2(), 5.0).map_err(|e| e.to_string())?;
    let rho0 = theta_state(1.2).map_err(|e| e.to_string())?;
    let exact = dynamics::dephasing_analytic(1.2, &gamma2(), 5.0, 1.0).map_err(|e| e.to_string())?;
    let err = |dt: f64| -> Result<f64, String> {
        let traj = propagate(&g, &rho0, 1.0, dt).map_err(|e| e.to_string())?;
        Ok((traj.last().matrix() - exact.matrix()).norm())
    };
    let ratio = err(0.05)? / err(0.025)?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut sylvester: f64 = 0.0;
    for _ in 0..100 {
        let d = rng.random_range(2..=5);
        let rho = random::density_matrix(&mut rng, d, d);
        let drho = random::traceless_hermitian(&mut rng, d);
        let s = matfun::mat_sqrt_psd(&rho).map_err(|e| e.to_string())?;
        let x = matfun::dsqrt_dt(&s, &drho, matfun::SUPPORT_TOL).map_err(|e| e.to_string())?;
        sylvester = sylvester.max((&s * &x.value + &x.value * &s - drho).norm());
    }
    let mut sqrt: f64 = 0.0;
    for _ in 0..100 {
        let d = rng.random_range(1..=5);
        let rank = rng.random_range(1..=d);
        let a = random::density_matrix(&mut rng, d, rank).scale(random::uniform(&mut rng, 0.1, 10.0));
        let s = matfun::mat_sqrt_psd(&a).map_err(|e| e.to_string())?;
        sqrt = sqrt.max((&s * &s - &a).norm());
    }
    ensure(
        (8.0..=32.0).contains(&ratio) && sylvester <= 1e-8 && sqrt <= 1e-8,
        format!("RK4 ratio {ratio:.3}, Sylvester residual {sylvester:.2e}, sqrt residual {sqrt:.2e}"),
    )
}

fn dissipative_consistency() -> Check {
    let mut worst: f64 = 0.0;
    for theta in THETAS {
        let g = Generator::dissipative(gamma2());
        let traj = propagate(&g, &theta_state(theta).map_err(|e| e.to_string())?, PI / 3.0, 1e-3)
            .map_err(|e| e.to_string())?;
        for (&t, rho) in traj.times().iter().zip(traj.states()) {
            let exact = dynamics::dissipative_analytic(theta, &gamma2(), t).map_err(|e| e.to_string())?;
            worst = worst.max(matfun::hs_norm(&(rho.matrix() - exact.matrix())));
        }
    }
    ensure(worst <= 1e-6, format!("max HS deviation {worst:.2e}"))
}

fn report(id: u32, title: &str, budget: Duration, check: fn() -> Check) -> bool {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let (ok, detail) = match outcome {
        Ok(d) => (in_time, d),
        Err(d) => (false, d),
    };
    let timing = if in_time { String::new() } else { format!(", over the {budget:?} budget") };
    println!(
        "criterion {id:>2} {} [{:.3} s{timing}] {title}: {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, &str, u64, fn() -> Check); 10] = [
        (1, "unitary relative-entropy example", 1, unitary_relative_entropy),
        (2, "trace measure under σ_x rotation", 1, trace_measure_under_rotation),
        (3, "maximally imaginary state values", 1, mis_values),
        (4, "trace bound saturation", 1, trace_bound_saturation),
        (5, "closed-form integrand and Re-part generator norm", 2, closed_form_agreement),
        (6, "figure datasets: validity and θ-ordering", 30, figure_reproduction),
        (7, "Liouville-space properties", 5, liouville_properties),
        (8, "threshold-time scaling", 2, threshold_scaling),
        (9, "numerical kernels", 10, numerical_kernels),
        (10, "dissipative closed form vs RK4", 10, dissipative_consistency),
    ];
    let failed: Vec<u32> = criteria
        .iter()
        .filter(|(id, title, secs, check)| !report(*id, title, Duration::from_secs(*secs), *check))
        .map(|c| c.0)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
