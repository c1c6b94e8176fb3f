//! Scalar maps from a base eigenvalue to the eigenvalues it spawns.

use crate::{Error, Result};

const DOMAIN_SLACK: f64 = 1e-12;

fn clamp_domain(lambda: f64) -> Result<f64> {
    if !lambda.is_finite() || !(-DOMAIN_SLACK..=2.0 + DOMAIN_SLACK).contains(&lambda) {
        return Err(Error::DomainError(lambda));
    }
    Ok(lambda.clamp(0.0, 2.0))
}

/// The two roots of `2x^2 - 4x + lambda = 0`, larger first.
///
/// `f2` is taken from the product `f1 * f2 = lambda / 2` rather than the
/// difference form, which cancels badly for small `lambda`.
pub fn f_maps(lambda: f64) -> Result<(f64, f64)> {
    let lambda = clamp_domain(lambda)?;
    let f1 = (2.0 + (4.0 - 2.0 * lambda).sqrt()) / 2.0;
    let f2 = lambda / (2.0 * f1);
    Ok((f1, f2))
}

fn cubic(mu: f64, lambda: f64) -> f64 {
    ((4.0 * mu - 12.0) * mu + 9.0) * mu - lambda
}

fn cubic_slope(mu: f64) -> f64 {
    (12.0 * mu - 24.0) * mu + 9.0
}

/// The three real roots of `4x^3 - 12x^2 + 9x - lambda = 0`, ascending.
///
/// With `x = 1 + t` the cubic becomes `t^3 - 3t/4 + (1 - lambda)/4 = 0`,
/// whose trigonometric solution is `t = cos(acos(lambda - 1)/3 - 2*pi*j/3)`.
pub fn cubic_roots(lambda: f64) -> Result<[f64; 3]> {
    let lambda = clamp_domain(lambda)?;
    let theta = (lambda - 1.0).clamp(-1.0, 1.0).acos() / 3.0;
    let mut roots = [0.0; 3];
    for (j, root) in roots.iter_mut().enumerate() {
        let t = (theta - 2.0 * std::f64::consts::PI * j as f64 / 3.0).cos();
        *root = polish(1.0 + t, lambda);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

// One Newton step, kept only if it lowers the residual; at the double roots
// (lambda = 0 or 2) the slope vanishes and the trig value is already exact.
fn polish(mu: f64, lambda: f64) -> f64 {
    let slope = cubic_slope(mu);
    if slope.abs() < 1e-6 {
        return mu;
    }
    let next = mu - cubic(mu, lambda) / slope;
    if cubic(next, lambda).abs() < cubic(mu, lambda).abs() {
        next
    } else {
        mu
    }
}
