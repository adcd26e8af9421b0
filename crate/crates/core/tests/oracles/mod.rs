//! Literal transcriptions of printed closed forms, used only as test oracles.
//!
//! Symbols: `g` is ∫₀ᵗ γ, `rate` is γ_t, `w0` is ω₀. Where a printed form
//! carries a unit that evaluates to complex garbage, the unit is a parameter
//! so tests can compare the literal reading with the corrected one.
#![allow(dead_code)]

use islkit::C64;

pub const I: C64 = C64::new(0.0, 1.0);
pub const MINUS_ONE: C64 = C64::new(-1.0, 0.0);

fn half(theta: f64) -> (f64, f64) {
    ((theta / 2.0).cos(), (theta / 2.0).sin())
}

/// tr(d√ρ/dt)² for dephasing from the maximally imaginary state, γ = 2.
pub fn dephasing_mis_speed_sq(t: f64) -> f64 {
    1.0 / ((4.0 * t).exp() - 1.0)
}

/// ∫₀ᵀ √(1/(e^{4t}−1)) dt in closed form.
pub fn dephasing_mis_speed_integral(horizon: f64) -> f64 {
    (std::f64::consts::FRAC_PI_2 - (-2.0 * horizon).exp().asin()) / 2.0
}

/// Printed |Δ_I| for dephasing from the maximally imaginary state.
pub fn dephasing_mis_delta_printed(horizon: f64) -> f64 {
    let e4 = (4.0 * horizon).exp();
    let root = (1.0 - 1.0 / e4).sqrt();
    let alpha = root + 1.0;
    let beta = (-8.0 * horizon).exp() * ((8.0 * horizon).exp() * (-2.0 * e4 * (root - 1.0) - 1.0)).sqrt();
    let inner = (2f64.sqrt() * ((alpha - beta).sqrt() + (alpha + beta).sqrt()) + 4.0) / 8.0;
    (0.75f64.acos() - inner.acos()).abs()
}

/// Printed |Δ_I| for dephasing from θ = π/3.
pub fn dephasing_pi3_delta_printed(horizon: f64) -> f64 {
    let e4 = (4.0 * horizon).exp();
    let root = (3.0 - 3.0 / e4).sqrt();
    let alpha = ((-8.0 * horizon).exp() * (e4 * (-36.0 * root + 64.0 * e4 * e4 + 48.0 * e4 * (root + 2.0) + 63.0) - 27.0)
        / (e4 + 3.0))
        .sqrt();
    let beta = 6.0 * root / (e4 + 3.0);
    let gamma = 12.0 / (e4 + 3.0);
    let inner = ((-alpha + beta - gamma + 10.0).sqrt() + (alpha + beta - gamma + 10.0).sqrt()) / (8.0 * 2f64.sqrt()) + 0.5;
    ((7f64.sqrt() / 8.0 + 0.5).acos() - inner.acos()).abs()
}

/// Printed tr(d√ρ/dt)² for dephasing from θ = π/3.
pub fn dephasing_pi3_speed_sq_printed(t: f64) -> f64 {
    2.0 / (2.0 * (4.0 * t).exp() - 2.0)
}

/// Printed speed-limit time for dephasing from θ = π/3.
pub fn dephasing_pi3_t_isl_printed(horizon: f64) -> f64 {
    // The printed integrand equals the θ = π/2 one, so its integral is closed-form.
    dephasing_pi3_delta_printed(horizon) * horizon / dephasing_mis_speed_integral(horizon)
}

/// e^{−g−iω₀t}·√(e^{2iω₀t}(e^{2g}cos²θ + 2(cosθ−1)·unit·cos²(θ/2))).
fn dephasing_radius(theta: f64, g: f64, w0: f64, t: f64, unit: C64) -> C64 {
    let (c, _) = half(theta);
    let inside = C64::new(0.0, 2.0 * w0 * t).exp()
        * ((2.0 * g).exp() * theta.cos().powi(2) + unit * 2.0 * (theta.cos() - 1.0) * c * c);
    C64::new(-g, -w0 * t).exp() * inside.sqrt()
}

/// Printed |M_r(ρ_t) − M_r(ρ₀)| for dephasing.
pub fn dephasing_relative_entropy_change_printed(theta: f64, g: f64, w0: f64, t: f64, unit: C64) -> C64 {
    let u = dephasing_radius(theta, g, w0, t, unit);
    let one = C64::new(1.0, 0.0);
    let acoth = |z: C64| ((z + one) / (z - one)).ln() / 2.0;
    let ln4 = 4f64.ln();
    -((one - u).ln() - (one + u).ln() + u * 2.0 * acoth(one / u) - ln4) / ln4
}

/// Printed ‖𝓛(ρ_t)‖²_HS for dephasing.
pub fn dephasing_generator_norm_sq_printed(theta: f64, rate: f64, g: f64, w0: f64, t: f64) -> C64 {
    C64::new(-2.0 * g, w0 * t).exp() * 0.5 * (rate * rate - w0 * w0).abs() * theta.sin().powi(2)
}

/// Printed ‖𝓛(Re ρ_t)‖²_HS for dephasing.
pub fn dephasing_generator_norm_re_sq_printed() -> f64 {
    0.0
}

/// Printed ‖ln Re ρ_t‖²_HS for dephasing.
pub fn dephasing_log_norm_re_sq_printed(theta: f64) -> f64 {
    let (c, s) = half(theta);
    (s * s).ln().powi(2) + (c * c).ln().powi(2)
}

/// Printed ‖ln ρ_t‖²_HS for dephasing.
pub fn dephasing_log_norm_sq_printed(theta: f64, g: f64, w0: f64, t: f64, unit: C64) -> C64 {
    let u = dephasing_radius(theta, g, w0, t, unit);
    let one = C64::new(1.0, 0.0);
    ((one - u) / 2.0).ln().powi(2) + ((one + u) / 2.0).ln().powi(2)
}

/// Printed M_r(ρ₀) for the θ-state.
pub fn dissipative_initial_relative_entropy_printed(theta: f64) -> f64 {
    let (c, s) = half(theta);
    -(s * s) * (s * s).ln() - (c * c) * (c * c).ln()
}

/// Printed M_r(ρ_t) for dissipative dynamics. `corrected` swaps the printed
/// inverse-tanh argument for e^{−g/2}√(α/2).
pub fn dissipative_relative_entropy_printed(theta: f64, g: f64, corrected: bool) -> f64 {
    let (c, _) = half(theta);
    let decay = (-g / 2.0).exp();
    let p = decay * c * c;
    let alpha = alpha_beta(theta, g);
    let x = (2.0 * alpha).sqrt() * decay;
    let arg = if corrected {
        x / 2.0
    } else {
        decay * ((-g).exp() - 4.0 * ((g / 2.0).exp() - 1.0) * c.powi(4)).sqrt()
    };
    -p * p.ln() - (1.0 - p) * (1.0 - p).ln()
        + 0.5 * (((x + 2.0) / 16.0).ln() + (2.0 - x).ln())
        + (alpha / 2.0).sqrt() * decay * arg.atanh()
}

/// Printed ‖𝓛(ρ_t)‖²_HS for dissipative dynamics.
pub fn dissipative_generator_norm_sq_printed(theta: f64, rate: f64, g: f64) -> f64 {
    let (c, _) = half(theta);
    rate * rate * (-g).exp() * (16.0 * c.powi(4) + (g / 2.0).exp() * theta.sin().powi(2)) / 32.0
}

/// Printed ‖𝓛(Re ρ_t)‖²_HS for dissipative dynamics.
pub fn dissipative_generator_norm_re_sq_printed(theta: f64, rate: f64, g: f64) -> f64 {
    let (c, _) = half(theta);
    0.5 * rate * rate * (-g).exp() * c.powi(4)
}

/// Printed ‖ln Re ρ_t‖²_HS for dissipative dynamics.
pub fn dissipative_log_norm_re_sq_printed(theta: f64, g: f64) -> f64 {
    let (c, _) = half(theta);
    let p = (-g / 2.0).exp() * c * c;
    p.ln().powi(2) + (1.0 - p).ln().powi(2)
}

/// Printed ‖ln ρ_t‖²_HS for dissipative dynamics.
pub fn dissipative_log_norm_sq_printed(theta: f64, g: f64) -> f64 {
    let x = 2f64.sqrt() * (-g / 2.0).exp() * alpha_beta(theta, g).sqrt();
    ((2.0 - x) / 4.0).ln().powi(2) + ((2.0 + x) / 4.0).ln().powi(2)
}

/// The printed α of M_r(ρ_t) and β of ‖ln ρ_t‖², which coincide.
fn alpha_beta(theta: f64, g: f64) -> f64 {
    let e = (g / 2.0).exp();
    3.0 - 4.0 * (e - 1.0) * theta.cos() - (e - 1.0) * (2.0 * theta).cos() - 3.0 * e + 2.0 * e * e
}

pub mod frozen {
    //! High-precision reference values, computed once with arbitrary-precision
    //! quadrature and frozen here.

    /// RMS of ‖ln Re ρ_t‖ for H = ωσ_x from |0⟩ over [0, π/(4ω)].
    pub const UNITARY_LOG_CONSTANT: f64 = 3.228522940717398;
    /// ω·t_isl for the same rotation under the relative-entropy bound.
    pub const UNITARY_T_ISL_TIMES_OMEGA: f64 = 0.2146948289628457;
    /// Relative-entropy bound, dephasing from the maximally imaginary state, γ = 2, T = 0.5.
    pub const DEPHASING_MIS_T1: f64 = 0.3140422755203950;
    /// Geometric bound, dephasing from θ = π/3, γ = 2, T = 0.5 (good to 1e-6).
    pub const DEPHASING_PI3_T3: f64 = 0.34377268;
    /// Geometric bound, dissipative from the maximally imaginary state, γ = 2, T = 0.5 (good to 1e-6).
    pub const DISSIPATIVE_MIS_T3: f64 = 0.43022104;
    /// Relative-entropy bound, dissipative, T = 0.05, θ = π/2, π/3, π/4.
    pub const DISSIPATIVE_T1_SHORT: [f64; 3] = [0.0131863, 0.0134176, 0.0113672];
}
