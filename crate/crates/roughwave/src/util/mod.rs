//! Shared numeric utilities: smooth cutoffs, quadrature rules, periodic
//! B-spline interpolation, Chebyshev fits, least squares, and seeded RNG.

pub mod bspline;
pub mod cheb;
pub mod fft;
pub mod fit;
pub mod quad;
pub mod rng;
pub mod smooth;

use num_complex::Complex64;

pub type C64 = Complex64;

/// Two-component point/vector; dimension-1 data uses the first slot.
pub type V2 = [f64; 2];

pub fn dot(a: V2, b: V2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub fn norm(a: V2) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: V2, b: V2) -> V2 {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn add(a: V2, b: V2) -> V2 {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn scale(a: V2, s: f64) -> V2 {
    [a[0] * s, a[1] * s]
}

/// e^{i t}
pub fn cis(t: f64) -> C64 {
    let (s, c) = t.sin_cos();
    C64::new(c, s)
}

/// Wrap a coordinate into [0, len).
pub fn wrap(x: f64, len: f64) -> f64 {
    let y = x % len;
    if y < 0.0 {
        y + len
    } else {
        y
    }
}
