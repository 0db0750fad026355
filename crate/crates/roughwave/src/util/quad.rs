//! Quadrature rules: Gauss–Legendre nodes/weights and composite
//! Newton–Cotes weights on uniform grids (used by the time-quadrature of the
//! iterated propagator corrections).

/// Gauss–Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P'_n(x).
            let mut p0 = 1.0;
            let mut p1 = x;
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            dp = n as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_legendre_ab(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let c = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (
        x.iter().map(|&t| mid + c * t).collect(),
        w.iter().map(|&t| c * t).collect(),
    )
}

/// Composite Newton–Cotes weights for ∫_0^{i h} over the uniform nodes
/// 0, h, …, ih. Uses Simpson panels where the interval count allows, with a
/// 3/8 panel to absorb an odd remainder; i=1 falls back to the trapezoid.
pub fn uniform_weights(i: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; i + 1];
    match i {
        0 => {}
        1 => {
            w[0] = 0.5 * h;
            w[1] = 0.5 * h;
        }
        _ => {
            let mut start = 0;
            if i % 2 == 1 {
                // leading 3/8 panel over [0, 3h]
                let c = 3.0 * h / 8.0;
                w[0] += c;
                w[1] += 3.0 * c;
                w[2] += 3.0 * c;
                w[3] += c;
                start = 3;
            }
            let mut j = start;
            while j + 2 <= i {
                let c = h / 3.0;
                w[j] += c;
                w[j + 1] += 4.0 * c;
                w[j + 2] += c;
                j += 2;
            }
        }
    }
    w
}
