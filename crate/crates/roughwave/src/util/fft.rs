//! Thin wrappers over rustfft with cached plans.
//!
//! `forward` is the unnormalized DFT with kernel e^{-2πi jm/N}; `inverse`
//! applies the conjugate transform and divides by N, so the pair round-trips
//! exactly. Physical normalizations live at the call sites.

use super::C64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

#[derive(Clone)]
pub struct Fft1 {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Fft1 {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fft1 {
            n,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
        }
    }

    pub fn forward(&self, data: &mut [C64]) {
        debug_assert_eq!(data.len(), self.n);
        self.fwd.process(data);
    }

    pub fn inverse(&self, data: &mut [C64]) {
        debug_assert_eq!(data.len(), self.n);
        self.inv.process(data);
        let s = 1.0 / self.n as f64;
        for v in data.iter_mut() {
            *v *= s;
        }
    }
}

/// Two-dimensional FFT on a row-major n1 x n2 array (n2 = 1 degenerates to 1D).
#[derive(Clone)]
pub struct Fft2 {
    n1: usize,
    n2: usize,
    f1: Fft1,
    f2: Option<Fft1>,
}

impl Fft2 {
    pub fn new(n1: usize, n2: usize) -> Self {
        Fft2 {
            n1,
            n2,
            f1: Fft1::new(n1),
            f2: if n2 > 1 { Some(Fft1::new(n2)) } else { None },
        }
    }

    fn columns<FROW>(&self, data: &mut [C64], frow: FROW)
    where
        FROW: Fn(&mut [C64]),
    {
        let mut col = vec![C64::default(); self.n1];
        for i2 in 0..self.n2 {
            for i1 in 0..self.n1 {
                col[i1] = data[i1 * self.n2 + i2];
            }
            frow(&mut col);
            for i1 in 0..self.n1 {
                data[i1 * self.n2 + i2] = col[i1];
            }
        }
    }

    pub fn forward(&self, data: &mut [C64]) {
        debug_assert_eq!(data.len(), self.n1 * self.n2);
        if let Some(f2) = &self.f2 {
            for row in data.chunks_exact_mut(self.n2) {
                f2.forward(row);
            }
        }
        self.columns(data, |col| self.f1.forward(col));
    }

    pub fn inverse(&self, data: &mut [C64]) {
        debug_assert_eq!(data.len(), self.n1 * self.n2);
        if let Some(f2) = &self.f2 {
            for row in data.chunks_exact_mut(self.n2) {
                f2.inverse(row);
            }
        }
        self.columns(data, |col| self.f1.inverse(col));
    }
}
