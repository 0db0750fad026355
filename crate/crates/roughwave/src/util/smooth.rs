//! Smooth transition functions and compactly supported bumps.
//!
//! All cutoffs are built from the classical exponential step, so every window
//! in the crate is infinitely differentiable with all derivatives vanishing
//! at the transition endpoints.

/// e^{-1/t} for t > 0, extended by 0.
fn decay(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// Smooth step: 0 for t <= 0, 1 for t >= 1, strictly increasing between.
pub fn step(t: f64) -> f64 {
    let a = decay(t);
    let b = decay(1.0 - t);
    if a == 0.0 {
        0.0
    } else if b == 0.0 {
        1.0
    } else {
        a / (a + b)
    }
}

/// Smooth cutoff equal to 1 for s <= lo and 0 for s >= hi.
pub fn cutoff(s: f64, lo: f64, hi: f64) -> f64 {
    debug_assert!(hi > lo);
    1.0 - step((s - lo) / (hi - lo))
}

/// Radial bump supported in |r| < radius, equal to 1 at r = 0:
/// exp(1 - 1/(1 - (r/radius)^2)).
pub fn bump(r: f64, radius: f64) -> f64 {
    let u = r / radius;
    let q = 1.0 - u * u;
    if q <= 0.0 {
        0.0
    } else {
        (1.0 - 1.0 / q).exp()
    }
}

/// First derivative of `bump` with respect to r.
pub fn bump_d1(r: f64, radius: f64) -> f64 {
    let u = r / radius;
    let q = 1.0 - u * u;
    if q <= 0.0 {
        0.0
    } else {
        // d/dr exp(1 - 1/q) = exp(1-1/q) * (-2u/radius) / q^2
        bump(r, radius) * (-2.0 * u / radius) / (q * q)
    }
}

/// Second derivative of `bump` with respect to r.
pub fn bump_d2(r: f64, radius: f64) -> f64 {
    let u = r / radius;
    let q = 1.0 - u * u;
    if q <= 0.0 {
        0.0
    } else {
        // f = 1 - 1/q, f' = -2u/(R q^2), f'' = -2/(R^2 q^2) - 8u^2/(R^2 q^3)
        let fp = -2.0 * u / (radius * q * q);
        let fpp = -2.0 / (radius * radius * q * q) - 8.0 * u * u / (radius * radius * q * q * q);
        bump(r, radius) * (fp * fp + fpp)
    }
}
