//! Chebyshev interpolation on an interval (radial interpolation of symbol
//! tables and short angular arcs).

/// Chebyshev points of the second kind mapped to [a, b], endpoints included.
pub fn nodes(n: usize, a: f64, b: f64) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|j| {
            let c = (std::f64::consts::PI * j as f64 / (n - 1) as f64).cos();
            0.5 * (a + b) - 0.5 * (b - a) * c
        })
        .collect()
}

/// Barycentric weights for Chebyshev points of the second kind.
pub fn bary_weights(n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| {
            let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == n - 1 {
                w *= 0.5;
            }
            w
        })
        .collect()
}

/// Barycentric evaluation weights at point x for the node set; returns the
/// combination coefficients c_j with f(x) ≈ Σ c_j f(x_j).
pub fn eval_coeffs(xs: &[f64], w: &[f64], x: f64) -> Vec<f64> {
    let n = xs.len();
    let mut num = vec![0.0; n];
    let mut den = 0.0;
    for j in 0..n {
        let d = x - xs[j];
        if d.abs() < 1e-14 {
            let mut out = vec![0.0; n];
            out[j] = 1.0;
            return out;
        }
        num[j] = w[j] / d;
        den += num[j];
    }
    for v in num.iter_mut() {
        *v /= den;
    }
    num
}
