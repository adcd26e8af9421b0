//! Time integrals over a sampled trajectory grid.

/// Composite trapezoid rule ∫ f dt over the grid.
pub fn trapezoid(times: &[f64], values: &[f64]) -> f64 {
    debug_assert_eq!(times.len(), values.len());
    times
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1]))
        .sum()
}

/// (1/T) ∫ f dt
pub fn mean(times: &[f64], values: &[f64]) -> f64 {
    trapezoid(times, values) / span(times)
}

/// √((1/T) ∫ f² dt)
pub fn rms(times: &[f64], values: &[f64]) -> f64 {
    let squares: Vec<f64> = values.iter().map(|v| v * v).collect();
    mean(times, &squares).max(0.0).sqrt()
}

pub fn span(times: &[f64]) -> f64 {
    times[times.len() - 1] - times[0]
}

/// ∫ g dt for an integrand that behaves like c/√(t − t₀) at the left end.
///
/// The regular part h(t) = 2√(t − t₀)·g(t) is interpolated linearly on each
/// panel and integrated exactly against the weight 1/(2√(t − t₀)). The
/// sample g(t₀) is never used; h(t₀) is extrapolated quadratically from the
/// next three samples.
pub fn inverse_sqrt_start(times: &[f64], values: &[f64]) -> f64 {
    let n = times.len();
    assert!(n >= 4, "singular-start quadrature needs at least four samples");
    let t0 = times[0];
    let s: Vec<f64> = times.iter().map(|t| t - t0).collect();
    let mut h: Vec<f64> = s.iter().zip(values).map(|(s, g)| 2.0 * s.sqrt() * g).collect();
    h[0] = lagrange_at_zero(&s[1..4], &h[1..4]);
    let mut total = 0.0;
    for k in 0..n - 1 {
        let (a, b) = (s[k], s[k + 1]);
        let w0 = b.sqrt() - a.sqrt();
        let w1 = (b * b.sqrt() - a * a.sqrt()) / 3.0;
        let slope = (h[k + 1] - h[k]) / (b - a);
        total += h[k] * w0 + slope * (w1 - a * w0);
    }
    total
}

/// Value at 0 of the quadratic through three points.
fn lagrange_at_zero(x: &[f64], y: &[f64]) -> f64 {
    let (x0, x1, x2) = (x[0], x[1], x[2]);
    y[0] * (x1 * x2) / ((x0 - x1) * (x0 - x2))
        + y[1] * (x0 * x2) / ((x1 - x0) * (x1 - x2))
        + y[2] * (x0 * x1) / ((x2 - x0) * (x2 - x1))
}

/// ∫ Σ_i ln² λ_i(t) dt over the support, for spectra sampled on the grid.
///
/// Eigenvalues at or below `tol` contribute zero. An eigenvalue that leaves
/// (or enters) the kernel at an end of the grid behaves like a·s^p there,
/// with s the distance to that end, and its ln² has a log singularity that
/// plain trapezoid resolves only to O(h ln h). That model term (ln a + p ln s)²
/// is fitted from the two nearest samples, integrated in closed form, and
/// subtracted from the samples before the trapezoid rule is applied.
pub fn log_square_integral(times: &[f64], spectra: &[Vec<f64>], tol: f64) -> f64 {
    let n = times.len();
    let ln2 = |x: f64| if x > tol { x.ln().powi(2) } else { 0.0 };
    let d = spectra.first().map_or(0, Vec::len);
    let mut total = 0.0;
    for i in 0..d {
        let mut values: Vec<f64> = spectra.iter().map(|sp| ln2(sp[i])).collect();
        if n >= 4 {
            for idx in [[0, 1, 2, 3], [n - 1, n - 2, n - 3, n - 4]] {
                let Some((ln_a, p)) = log_power_fit(times, spectra, i, idx, tol) else { continue };
                let edge = idx[0];
                for (k, v) in values.iter_mut().enumerate() {
                    // ln²λ minus its model tends to zero at the edge itself.
                    if k != edge {
                        *v -= (ln_a + p * (times[k] - times[edge]).abs().ln()).powi(2);
                    }
                }
                let span = span(times);
                let l = ln_a + p * span.ln();
                total += span * (l * l - 2.0 * p * l + 2.0 * p * p);
            }
        }
        total += trapezoid(times, &values);
    }
    total
}

/// (ln a, p) of λ ≈ a·s^p·e^{cs} near a kernel edge, fitted through the
/// three samples after the edge, or None unless the eigenvalue is in the
/// kernel at the edge and on the support at those samples.
fn log_power_fit(times: &[f64], spectra: &[Vec<f64>], i: usize, idx: [usize; 4], tol: f64) -> Option<(f64, f64)> {
    let edge = idx[0];
    if spectra[edge][i] > tol || idx[1..].iter().any(|&k| spectra[k][i] <= tol) {
        return None;
    }
    let rows: Vec<[f64; 3]> = idx[1..]
        .iter()
        .map(|&k| {
            let s = (times[k] - times[edge]).abs();
            [1.0, s.ln(), s]
        })
        .collect();
    let a = nalgebra::Matrix3::from_fn(|r, c| rows[r][c]);
    let b = nalgebra::Vector3::from_fn(|r, _| spectra[idx[r + 1]][i].ln());
    let x = a.lu().solve(&b)?;
    let (ln_a, p) = (x[0], x[1]);
    (p.is_finite() && ln_a.is_finite() && p > 0.0).then_some((ln_a, p))
}
