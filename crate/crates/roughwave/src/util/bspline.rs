//! Periodic quintic B-spline interpolation on uniform grids.
//!
//! The quintic basis is derived at startup by repeated box convolution, so no
//! hand-copied blending matrix enters the code. Prefiltering uses the FFT
//! (exact division by the spline symbol on a periodic grid), which makes the
//! interpolant reproduce band-limited data to near machine precision while
//! staying C^4 — smooth enough to serve as the definitive evaluation of grid
//! tensors inside the ODE integrators.

use super::fft::Fft1;
use super::C64;
use std::sync::OnceLock;

/// Piecewise polynomials (ascending coefficients, local t in [0,1)) of the
/// degree-5 cardinal B-spline on [0,6), plus first and second derivatives.
struct Basis {
    p: [[f64; 6]; 6],
    d1: [[f64; 6]; 6],
    d2: [[f64; 6]; 6],
}

fn convolve_with_box(pieces: &[Vec<f64>]) -> Vec<Vec<f64>> {
    // antiderivative of each piece, with accumulated constants
    let deg = pieces[0].len();
    let mut anti: Vec<Vec<f64>> = Vec::with_capacity(pieces.len());
    let mut acc = 0.0;
    for piece in pieces {
        let mut a = vec![0.0; deg + 1];
        a[0] = acc;
        for (k, &c) in piece.iter().enumerate() {
            a[k + 1] = c / (k as f64 + 1.0);
        }
        acc = a.iter().sum(); // value at local t=1
        anti.push(a);
    }
    let total = acc;
    let eval_anti = |j: i64| -> Vec<f64> {
        if j < 0 {
            vec![0.0; deg + 1]
        } else if (j as usize) < anti.len() {
            anti[j as usize].clone()
        } else {
            let mut v = vec![0.0; deg + 1];
            v[0] = total;
            v
        }
    };
    (0..=pieces.len() as i64)
        .map(|j| {
            let hi = eval_anti(j);
            let lo = eval_anti(j - 1);
            hi.iter().zip(&lo).map(|(a, b)| a - b).collect()
        })
        .collect()
}

fn differentiate(p: &[[f64; 6]; 6]) -> [[f64; 6]; 6] {
    let mut out = [[0.0; 6]; 6];
    for (j, piece) in p.iter().enumerate() {
        for k in 1..6 {
            out[j][k - 1] = piece[k] * k as f64;
        }
    }
    out
}

fn basis() -> &'static Basis {
    static BASIS: OnceLock<Basis> = OnceLock::new();
    BASIS.get_or_init(|| {
        let mut pieces = vec![vec![1.0]];
        for _ in 0..5 {
            pieces = convolve_with_box(&pieces);
        }
        let mut p = [[0.0; 6]; 6];
        for (j, piece) in pieces.iter().enumerate() {
            for (k, &c) in piece.iter().enumerate() {
                p[j][k] = c;
            }
        }
        let d1 = differentiate(&p);
        let d2 = differentiate(&d1);
        Basis { p, d1, d2 }
    })
}

#[inline]
fn eval_piece(c: &[f64; 6], t: f64) -> f64 {
    ((((c[5] * t + c[4]) * t + c[3]) * t + c[2]) * t + c[1]) * t + c[0]
}

/// Tap weights for the 6-point stencil around u = i + t: the tap at grid
/// index i + 1 - m (m = 0..5) carries weight w[m].
#[inline]
fn weights(t: f64, table: &[[f64; 6]; 6]) -> [f64; 6] {
    // f(i+t) = sum_j c_{i+j} * B5(t - j + 3), j = -2..3 -> piece index 3 - j.
    // Reorder by piece index m = 3 - j, so tap j = 3 - m.
    let mut w = [0.0; 6];
    for (m, item) in table.iter().enumerate() {
        w[m] = eval_piece(item, t);
    }
    w
}

/// B-spline symbol on an n-point periodic grid (real, strictly positive).
fn symbol(n: usize) -> Vec<f64> {
    let b = basis();
    // centered values at integer offsets 0,1,2 = B5(3), B5(4), B5(5)
    let b0 = b.p[3][0];
    let b1 = b.p[4][0];
    let b2 = b.p[5][0];
    (0..n)
        .map(|m| {
            let th = 2.0 * std::f64::consts::PI * m as f64 / n as f64;
            b0 + 2.0 * b1 * th.cos() + 2.0 * b2 * (2.0 * th).cos()
        })
        .collect()
}

/// Periodic quintic spline of a real scalar sampled on an n1 x n2 grid
/// (row-major, index = i1 * n2 + i2). Use n2 = 1 for one-dimensional data.
#[derive(Clone)]
pub struct PeriodicSpline {
    n1: usize,
    n2: usize,
    /// physical period per axis
    len: f64,
    coef: Vec<f64>,
}

impl PeriodicSpline {
    pub fn new(samples: &[f64], n1: usize, n2: usize, len: f64) -> Self {
        assert_eq!(samples.len(), n1 * n2);
        let mut data: Vec<C64> = samples.iter().map(|&v| C64::new(v, 0.0)).collect();
        // prefilter: divide by tensor-product symbol in frequency
        let s1 = symbol(n1);
        if n2 == 1 {
            let fft = Fft1::new(n1);
            fft.forward(&mut data);
            for (i, v) in data.iter_mut().enumerate() {
                *v /= s1[i];
            }
            fft.inverse(&mut data);
        } else {
            let s2 = symbol(n2);
            let f1 = Fft1::new(n1);
            let f2 = Fft1::new(n2);
            // rows (axis 2)
            let mut row = vec![C64::default(); n2];
            for i1 in 0..n1 {
                row.copy_from_slice(&data[i1 * n2..(i1 + 1) * n2]);
                f2.forward(&mut row);
                for (i2, v) in row.iter_mut().enumerate() {
                    *v /= s2[i2];
                }
                f2.inverse(&mut row);
                data[i1 * n2..(i1 + 1) * n2].copy_from_slice(&row);
            }
            // columns (axis 1)
            let mut col = vec![C64::default(); n1];
            for i2 in 0..n2 {
                for i1 in 0..n1 {
                    col[i1] = data[i1 * n2 + i2];
                }
                f1.forward(&mut col);
                for (i1, v) in col.iter_mut().enumerate() {
                    *v /= s1[i1];
                }
                f1.inverse(&mut col);
                for i1 in 0..n1 {
                    data[i1 * n2 + i2] = col[i1];
                }
            }
        }
        PeriodicSpline {
            n1,
            n2,
            len,
            coef: data.iter().map(|v| v.re).collect(),
        }
    }

    #[inline]
    fn locate(&self, x: f64, n: usize) -> (usize, f64) {
        let u = x / self.len * n as f64;
        let i = u.floor();
        let t = u - i;
        let mut idx = (i as i64) % n as i64;
        if idx < 0 {
            idx += n as i64;
        }
        (idx as usize, t)
    }

    /// Value, gradient, and Hessian at a physical point (periodically wrapped).
    pub fn jet2(&self, x: f64, y: f64) -> (f64, [f64; 2], [[f64; 2]; 2]) {
        let b = basis();
        let (i1, t1) = self.locate(x, self.n1);
        let w1 = weights(t1, &b.p);
        let w1d = weights(t1, &b.d1);
        let w1dd = weights(t1, &b.d2);
        let s1 = self.n1 as f64 / self.len;
        if self.n2 == 1 {
            let (mut v, mut d, mut dd) = (0.0, 0.0, 0.0);
            for m in 0..6 {
                let idx = ((i1 + self.n1 + 1 + self.n1 - m) % self.n1) as usize;
                let c = self.coef[idx];
                v += w1[m] * c;
                d += w1d[m] * c;
                dd += w1dd[m] * c;
            }
            return (v, [d * s1, 0.0], [[dd * s1 * s1, 0.0], [0.0, 0.0]]);
        }
        let (i2, t2) = self.locate(y, self.n2);
        let w2 = weights(t2, &b.p);
        let w2d = weights(t2, &b.d1);
        let w2dd = weights(t2, &b.d2);
        let s2 = self.n2 as f64 / self.len;
        let mut v = 0.0;
        let mut dx = 0.0;
        let mut dy = 0.0;
        let mut dxx = 0.0;
        let mut dxy = 0.0;
        let mut dyy = 0.0;
        for m1 in 0..6 {
            let j1 = (i1 + 1 + 2 * self.n1 - m1) % self.n1;
            let base = j1 * self.n2;
            let (mut r, mut rd, mut rdd) = (0.0, 0.0, 0.0);
            for m2 in 0..6 {
                let j2 = (i2 + 1 + 2 * self.n2 - m2) % self.n2;
                let c = self.coef[base + j2];
                r += w2[m2] * c;
                rd += w2d[m2] * c;
                rdd += w2dd[m2] * c;
            }
            v += w1[m1] * r;
            dx += w1d[m1] * r;
            dy += w1[m1] * rd;
            dxx += w1dd[m1] * r;
            dxy += w1d[m1] * rd;
            dyy += w1[m1] * rdd;
        }
        (
            v,
            [dx * s1, dy * s2],
            [[dxx * s1 * s1, dxy * s1 * s2], [dxy * s1 * s2, dyy * s2 * s2]],
        )
    }

    /// Value only.
    pub fn value(&self, x: f64, y: f64) -> f64 {
        let b = basis();
        let (i1, t1) = self.locate(x, self.n1);
        let w1 = weights(t1, &b.p);
        if self.n2 == 1 {
            let mut v = 0.0;
            for m in 0..6 {
                let idx = (i1 + 1 + 2 * self.n1 - m) % self.n1;
                v += w1[m] * self.coef[idx];
            }
            return v;
        }
        let (i2, t2) = self.locate(y, self.n2);
        let w2 = weights(t2, &b.p);
        let mut v = 0.0;
        for m1 in 0..6 {
            let j1 = (i1 + 1 + 2 * self.n1 - m1) % self.n1;
            let base = j1 * self.n2;
            let mut r = 0.0;
            for m2 in 0..6 {
                let j2 = (i2 + 1 + 2 * self.n2 - m2) % self.n2;
                r += w2[m2] * self.coef[base + j2];
            }
            v += w1[m1] * r;
        }
        v
    }
}
