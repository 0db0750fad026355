//! Periodic grids, discrete Fourier transforms, dyadic frequency windows,
//! and Sobolev-scale multipliers.
//!
//! Conventions. A field sampled on the N^d grid over [0,L)^d has coefficients
//! `fhat(xi) = (L/N)^d * sum_x f(x) e^{-i<x,xi>}` on the integer frequency
//! lattice scaled by 2π/L, and the inversion
//! `f(x) = (2π)^{-d} * sum_xi fhat(xi) e^{i<x,xi>} * (2π/L)^d`.
//! With these weights the discrete pair mimics the continuum transform, and
//! all oscillatory-integral operators in the crate quote their kernels
//! verbatim with `Δη = (2π/L)^d`.

use crate::error::{Error, Result};
use crate::util::fft::Fft2;
use crate::util::{cis, rng, C64, V2};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

/// Uniform periodic grid on [0,L)^d with d in {1,2} and N a power of two.
#[derive(Clone)]
pub struct TorusGrid {
    d: usize,
    n: usize,
    len: f64,
    fft: Arc<Fft2>,
}

impl std::fmt::Debug for TorusGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TorusGrid(d={}, n={}, len={:.6})", self.d, self.n, self.len)
    }
}

impl TorusGrid {
    pub fn new(d: usize, n: usize, len: f64) -> Result<Self> {
        if !(d == 1 || d == 2) {
            return Err(Error::config(format!("dimension must be 1 or 2, got {d}")));
        }
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::config(format!(
                "points per axis must be a power of two >= 4, got {n}"
            )));
        }
        if !(len > 0.0) {
            return Err(Error::config("period length must be positive"));
        }
        let fft = Arc::new(if d == 2 {
            Fft2::new(n, n)
        } else {
            Fft2::new(n, 1)
        });
        Ok(TorusGrid { d, n, len, fft })
    }

    pub fn dim(&self) -> usize {
        self.d
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn len(&self) -> f64 {
        self.len
    }
    pub fn points(&self) -> usize {
        self.n.pow(self.d as u32)
    }
    pub fn spacing(&self) -> f64 {
        self.len / self.n as f64
    }
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.d as i32)
    }
    /// Frequency lattice step 2π/L.
    pub fn freq_step(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.len
    }
    /// Largest representable frequency along an axis, πN/L.
    pub fn nyquist(&self) -> f64 {
        std::f64::consts::PI * self.n as f64 / self.len
    }
    /// Volume of one frequency cell, (2π/L)^d.
    pub fn freq_cell(&self) -> f64 {
        self.freq_step().powi(self.d as i32)
    }

    /// Signed integer frequency for FFT index i.
    #[inline]
    pub fn freq_index(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Physical position of the flat grid index.
    #[inline]
    pub fn point(&self, flat: usize) -> V2 {
        let h = self.spacing();
        if self.d == 1 {
            [flat as f64 * h, 0.0]
        } else {
            [(flat / self.n) as f64 * h, (flat % self.n) as f64 * h]
        }
    }

    /// Frequency vector of the flat spectral index.
    #[inline]
    pub fn freq(&self, flat: usize) -> V2 {
        let s = self.freq_step();
        if self.d == 1 {
            [self.freq_index(flat) as f64 * s, 0.0]
        } else {
            [
                self.freq_index(flat / self.n) as f64 * s,
                self.freq_index(flat % self.n) as f64 * s,
            ]
        }
    }

    /// Largest dyadic index whose window meets the frequency lattice.
    pub fn max_shell(&self) -> usize {
        let corner = self.nyquist() * (self.d as f64).sqrt();
        let mut k = 0usize;
        while shell_lower_edge(k + 1) < corner {
            k += 1;
        }
        k
    }

    /// Largest dyadic index resolved with full headroom: 2^{k+2} < πN/L.
    pub fn resolved_shell(&self) -> usize {
        let mut k = 0usize;
        while ((k + 3) as f64).exp2() < self.nyquist() {
            k += 1;
        }
        k
    }

    pub fn fft(&self) -> &Fft2 {
        &self.fft
    }

    pub fn same_as(&self, other: &TorusGrid) -> bool {
        self.d == other.d && self.n == other.n && (self.len - other.len).abs() < 1e-12
    }
}

/// Lower edge of the support of the k-th window.
pub fn shell_lower_edge(k: usize) -> f64 {
    if k == 0 {
        0.0
    } else {
        ((k - 1) as f64).exp2()
    }
}

/// Upper edge of the support of the k-th window, (10/9)·2^k.
pub fn shell_upper_edge(k: usize) -> f64 {
    (10.0 / 9.0) * (k as f64).exp2()
}

/// Complex samples on a torus grid, row-major.
#[derive(Clone)]
pub struct ScalarField {
    pub grid: TorusGrid,
    pub values: Vec<C64>,
}

/// Fourier coefficients on the frequency lattice of a torus grid.
#[derive(Clone)]
pub struct SpectralField {
    pub grid: TorusGrid,
    pub coeffs: Vec<C64>,
}

impl ScalarField {
    pub fn zeros(grid: &TorusGrid) -> Self {
        ScalarField {
            grid: grid.clone(),
            values: vec![C64::default(); grid.points()],
        }
    }

    pub fn from_fn(grid: &TorusGrid, f: impl Fn(V2) -> C64) -> Self {
        let values = (0..grid.points()).map(|i| f(grid.point(i))).collect();
        ScalarField {
            grid: grid.clone(),
            values,
        }
    }

    /// L2 norm with the grid cell volume.
    pub fn norm_l2(&self) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (s * self.grid.cell_volume()).sqrt()
    }

    /// L^p norm (p finite) with the grid cell volume.
    pub fn norm_lp(&self, p: f64) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm().powf(p)).sum();
        (s * self.grid.cell_volume()).powf(1.0 / p)
    }

    pub fn inner(&self, other: &ScalarField) -> C64 {
        let s: C64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum();
        s * self.grid.cell_volume()
    }

    pub fn axpy(&mut self, a: C64, x: &ScalarField) {
        for (v, w) in self.values.iter_mut().zip(&x.values) {
            *v += a * w;
        }
    }

    pub fn scaled(&self, a: C64) -> ScalarField {
        ScalarField {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * a).collect(),
        }
    }

    pub fn sub(&self, other: &ScalarField) -> ScalarField {
        ScalarField {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Binary dump: little-endian (re, im) f64 pairs in row-major order plus
    /// a JSON sidecar `<path>.json` holding {d, N, L, desc}.
    pub fn dump(&self, path: &Path, desc: &str) -> Result<()> {
        let mut buf = Vec::with_capacity(self.values.len() * 16);
        for v in &self.values {
            buf.extend_from_slice(&v.re.to_le_bytes());
            buf.extend_from_slice(&v.im.to_le_bytes());
        }
        std::fs::File::create(path)?.write_all(&buf)?;
        let sidecar = serde_json::json!({
            "d": self.grid.dim(),
            "N": self.grid.n(),
            "L": self.grid.len(),
            "desc": desc,
        });
        let mut json_path = path.as_os_str().to_owned();
        json_path.push(".json");
        std::fs::write(json_path, serde_json::to_vec_pretty(&sidecar)?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut json_path = path.as_os_str().to_owned();
        json_path.push(".json");
        #[derive(Deserialize)]
        struct Sidecar {
            d: usize,
            #[serde(rename = "N")]
            n: usize,
            #[serde(rename = "L")]
            l: f64,
        }
        let sc: Sidecar = serde_json::from_slice(&std::fs::read(json_path)?)?;
        let grid = TorusGrid::new(sc.d, sc.n, sc.l)?;
        let mut buf = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut buf)?;
        if buf.len() != grid.points() * 16 {
            return Err(Error::config("field dump size does not match sidecar"));
        }
        let values = buf
            .chunks_exact(16)
            .map(|c| {
                C64::new(
                    f64::from_le_bytes(c[..8].try_into().unwrap()),
                    f64::from_le_bytes(c[8..].try_into().unwrap()),
                )
            })
            .collect();
        Ok(ScalarField { grid, values })
    }
}

impl SpectralField {
    pub fn zeros(grid: &TorusGrid) -> Self {
        SpectralField {
            grid: grid.clone(),
            coeffs: vec![C64::default(); grid.points()],
        }
    }

    /// Parseval L2 norm: (L^{-d} Σ |fhat|^2)^{1/2}.
    pub fn norm_l2(&self) -> f64 {
        let s: f64 = self.coeffs.iter().map(|v| v.norm_sqr()).sum();
        (s / self.grid.len().powi(self.grid.dim() as i32)).sqrt()
    }
}

/// Forward transform with the continuum-like normalization.
pub fn forward(f: &ScalarField) -> SpectralField {
    let mut data = f.values.clone();
    f.grid.fft().forward(&mut data);
    let s = f.grid.cell_volume();
    for v in data.iter_mut() {
        *v *= s;
    }
    SpectralField {
        grid: f.grid.clone(),
        coeffs: data,
    }
}

/// Inverse transform; round-trips `forward` to machine precision.
pub fn inverse(f: &SpectralField) -> ScalarField {
    let mut data = f.coeffs.clone();
    f.grid.fft().inverse(&mut data);
    let s = 1.0 / f.grid.cell_volume();
    for v in data.iter_mut() {
        *v *= s;
    }
    ScalarField {
        grid: f.grid.clone(),
        values: data,
    }
}

/// Dyadic window family: radial windows β_k with supp β_1 in [9/10, 20/9]
/// (the constructed window lives in [1, 20/9]), β_k(ξ) = β_1(2^{1-k} ξ) for
/// k ≥ 1, and β_0² + Σ β_k² = 1 pointwise. ψ_k = β_k².
#[derive(Clone, Debug)]
pub struct LpFamily {
    pub k_max: usize,
}

/// The telescoping cutoff: 1 for s ≤ 1, 0 for s ≥ 10/9.
fn telescope(s: f64) -> f64 {
    crate::util::smooth::cutoff(s, 1.0, 10.0 / 9.0)
}

impl LpFamily {
    pub fn new(k_max: usize) -> Self {
        LpFamily { k_max }
    }

    /// For a grid: window family whose top index is the last shell meeting
    /// the lattice.
    pub fn for_grid(grid: &TorusGrid) -> Self {
        LpFamily {
            k_max: grid.max_shell(),
        }
    }

    /// β_k at radial frequency r ≥ 0.
    pub fn beta_radial(&self, k: usize, r: f64) -> f64 {
        let sq = if k == 0 {
            telescope(r)
        } else {
            let a = telescope(r / (k as f64).exp2());
            let b = telescope(r / ((k - 1) as f64).exp2());
            a - b
        };
        if sq <= 0.0 {
            0.0
        } else {
            sq.sqrt()
        }
    }

    /// β_k(ξ).
    pub fn beta(&self, k: usize, xi: V2) -> f64 {
        self.beta_radial(k, crate::util::norm(xi))
    }

    /// ψ_k(ξ) = β_k(ξ)².
    pub fn psi(&self, k: usize, xi: V2) -> f64 {
        let b = self.beta(k, xi);
        b * b
    }

    /// Σ_{k=0}^{K} β_k(ξ)², which telescopes to the outer cutoff.
    pub fn partition_sum(&self, xi: V2, top: usize) -> f64 {
        let r = crate::util::norm(xi);
        telescope(r / (top as f64).exp2())
    }
}

/// β_k(ξ) for a family (free function mirroring the operation table).
pub fn lp_window(family: &LpFamily, k: usize, xi: V2) -> f64 {
    family.beta(k, xi)
}

/// Flat spectral indices where β_k > 0 on the lattice.
pub fn shell_indices(grid: &TorusGrid, family: &LpFamily, k: usize) -> Vec<usize> {
    (0..grid.points())
        .filter(|&i| family.beta(k, grid.freq(i)) > 0.0)
        .collect()
}

/// Validate that shell k is present on the lattice at all.
pub fn check_shell(grid: &TorusGrid, k: usize) -> Result<()> {
    if shell_lower_edge(k) >= grid.nyquist() * (grid.dim() as f64).sqrt() {
        return Err(Error::resolution(format!(
            "shell {k} exceeds the lattice Nyquist range (N={}, L={:.4})",
            grid.n(),
            grid.len()
        )));
    }
    Ok(())
}

/// ψ_k(D) f: forward transform, multiply by the squared window, invert.
pub fn lp_project(family: &LpFamily, f: &ScalarField, k: usize) -> Result<ScalarField> {
    check_shell(&f.grid, k)?;
    let mut spec = forward(f);
    for i in 0..spec.coeffs.len() {
        spec.coeffs[i] *= family.psi(k, spec.grid.freq(i));
    }
    Ok(inverse(&spec))
}

/// β_k(D) f (single window, not squared).
pub fn lp_project_beta(family: &LpFamily, f: &ScalarField, k: usize) -> Result<ScalarField> {
    check_shell(&f.grid, k)?;
    let mut spec = forward(f);
    for i in 0..spec.coeffs.len() {
        spec.coeffs[i] *= family.beta(k, spec.grid.freq(i));
    }
    Ok(inverse(&spec))
}

/// Apply (1 + |ξ|²)^{s/2} in frequency.
pub fn sobolev_multiplier(f: &ScalarField, s: f64) -> ScalarField {
    let mut spec = forward(f);
    for i in 0..spec.coeffs.len() {
        let xi = spec.grid.freq(i);
        spec.coeffs[i] *= (1.0 + crate::util::dot(xi, xi)).powf(0.5 * s);
    }
    inverse(&spec)
}

/// H^s norm: L2 norm of ⟨D⟩^s f.
pub fn sobolev_norm(f: &ScalarField, s: f64) -> f64 {
    let spec = forward(f);
    let mut acc = 0.0;
    for i in 0..spec.coeffs.len() {
        let xi = spec.grid.freq(i);
        acc += spec.coeffs[i].norm_sqr() * (1.0 + crate::util::dot(xi, xi)).powf(s);
    }
    (acc / spec.grid.len().powi(spec.grid.dim() as i32)).sqrt()
}

/// Gaussian random field: independent complex normal samples at every grid
/// point (white in space).
pub fn random_field(grid: &TorusGrid, seed: u64, label: &str) -> ScalarField {
    let mut rng = rng::stream(seed, label);
    let values = (0..grid.points())
        .map(|_| {
            let (re, im) = rng::cnormal(&mut rng);
            C64::new(re, im)
        })
        .collect();
    ScalarField {
        grid: grid.clone(),
        values,
    }
}

/// Random field spectrally supported on shell k (coefficients are complex
/// normals shaped by ψ_k), normalized to unit L2.
pub fn random_shell_field(
    grid: &TorusGrid,
    family: &LpFamily,
    k: usize,
    seed: u64,
    label: &str,
) -> Result<ScalarField> {
    check_shell(grid, k)?;
    let mut rng = rng::stream(seed, &format!("shell{k}:{label}"));
    let mut spec = SpectralField::zeros(grid);
    for i in 0..grid.points() {
        let w = family.psi(k, grid.freq(i));
        if w > 0.0 {
            let (re, im) = rng::cnormal(&mut rng);
            spec.coeffs[i] = C64::new(re, im) * w;
        }
    }
    let mut f = inverse(&spec);
    let n = f.norm_l2();
    if n == 0.0 {
        return Err(Error::resolution(format!(
            "shell {k} holds no lattice points"
        )));
    }
    let inv = C64::new(1.0 / n, 0.0);
    for v in f.values.iter_mut() {
        *v *= inv;
    }
    Ok(f)
}

/// Plane wave e^{i<x,ξ>} for a lattice frequency.
pub fn plane_wave(grid: &TorusGrid, xi: V2) -> ScalarField {
    ScalarField::from_fn(grid, |x| cis(crate::util::dot(x, xi)))
}

/// Energy of the field at lattice frequencies where none of the windows
/// k-1, k, k+1 is supported, relative to the total.
pub fn energy_outside_shells(
    family: &LpFamily,
    f: &ScalarField,
    k_lo: usize,
    k_hi: usize,
) -> f64 {
    let spec = forward(f);
    let mut outside = 0.0;
    let mut total = 0.0;
    for i in 0..spec.coeffs.len() {
        let xi = spec.grid.freq(i);
        let e = spec.coeffs[i].norm_sqr();
        total += e;
        let mut inside = false;
        for k in k_lo..=k_hi {
            if family.beta(k, xi) > 0.0 {
                inside = true;
                break;
            }
        }
        if !inside {
            outside += e;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        (outside / total).sqrt()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GridSummary {
    pub d: usize,
    pub n: usize,
    pub len: f64,
    pub max_shell: usize,
    pub resolved_shell: usize,
}

pub fn grid_summary(grid: &TorusGrid) -> GridSummary {
    GridSummary {
        d: grid.dim(),
        n: grid.n(),
        len: grid.len(),
        max_shell: grid.max_shell(),
        resolved_shell: grid.resolved_shell(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const TAU: f64 = 2.0 * std::f64::consts::PI;

    #[test]
    fn grid_frequency_lattice() {
        let g = TorusGrid::new(2, 64, TAU).unwrap();
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for i in 0..64 {
            lo = lo.min(g.freq_index(i));
            hi = hi.max(g.freq_index(i));
        }
        assert_eq!((lo, hi), (-32, 31));
        let g1 = TorusGrid::new(1, 8, TAU).unwrap();
        let freqs: Vec<i64> = (0..8).map(|i| g1.freq_index(i)).collect();
        let mut sorted = freqs.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![-4, -3, -2, -1, 0, 1, 2, 3]);
    }

    #[test]
    fn grid_rejects_bad_shapes() {
        assert!(TorusGrid::new(2, 63, TAU).is_err());
        assert!(TorusGrid::new(3, 64, TAU).is_err());
        assert!(TorusGrid::new(2, 64, -1.0).is_err());
    }

    #[test]
    fn transform_roundtrip() {
        let g = TorusGrid::new(2, 32, TAU).unwrap();
        let f = random_field(&g, 7, "roundtrip");
        let back = inverse(&forward(&f));
        let err = back.sub(&f).norm_l2() / f.norm_l2();
        assert!(err < 1e-12, "roundtrip error {err}");
    }

    #[test]
    fn parseval() {
        let g = TorusGrid::new(2, 32, TAU).unwrap();
        let f = random_field(&g, 11, "parseval");
        let spec = forward(&f);
        assert_relative_eq!(f.norm_l2(), spec.norm_l2(), max_relative = 1e-12);
    }

    #[test]
    fn window_examples() {
        let fam = LpFamily::new(6);
        assert_eq!(fam.beta(1, [0.5, 0.0]), 0.0);
        // partition of unity at |ξ| = 3.7
        let xi = [3.7, 0.0];
        let mut s = 0.0;
        for k in 0..=6 {
            let b = fam.beta(k, xi);
            s += b * b;
        }
        assert!((s - 1.0).abs() < 1e-12, "partition sum {s}");
        assert!((fam.partition_sum(xi, 6) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn window_dilation_identity() {
        let fam = LpFamily::new(8);
        let mut rng = rng::stream(3, "dilation");
        for _ in 0..50 {
            let r = 8.0 + 16.0 * rand::Rng::gen::<f64>(&mut rng);
            let xi = [r, 0.3 * r];
            let lhs = fam.beta(4, xi);
            let rhs = fam.beta(1, crate::util::scale(xi, (1.0f64 / 8.0) as f64));
            assert!((lhs - rhs).abs() < 1e-14);
        }
    }

    #[test]
    fn window_support_bounds() {
        let fam = LpFamily::new(6);
        // supp β_1 within [9/10, 20/9]
        for i in 0..400 {
            let r = 0.01 + i as f64 * 0.01;
            let b = fam.beta_radial(1, r);
            if b > 0.0 {
                assert!((0.9..=20.0 / 9.0 + 1e-12).contains(&r), "r={r}");
            }
        }
    }

    #[test]
    fn project_plane_wave() {
        let g = TorusGrid::new(2, 64, TAU).unwrap();
        let fam = LpFamily::for_grid(&g);
        let xi = [16.0, 0.0]; // |ξ| = 2^4
        let f = plane_wave(&g, xi);
        let p = lp_project(&fam, &f, 4).unwrap();
        let w = fam.psi(4, xi);
        assert!(w > 0.5);
        let err = p.sub(&f.scaled(C64::new(w, 0.0))).norm_l2() / f.norm_l2();
        assert!(err < 1e-12);
    }

    #[test]
    fn projections_sum_to_identity() {
        let g = TorusGrid::new(2, 64, TAU).unwrap();
        let fam = LpFamily::for_grid(&g);
        // band-limit the input so the partition closes within available shells
        let f0 = random_field(&g, 5, "partition");
        let mut spec = forward(&f0);
        for i in 0..spec.coeffs.len() {
            let r = crate::util::norm(spec.grid.freq(i));
            if r > 20.0 {
                spec.coeffs[i] = C64::default();
            }
        }
        let f = inverse(&spec);
        let mut acc = ScalarField::zeros(&g);
        for k in 0..=fam.k_max {
            acc.axpy(C64::new(1.0, 0.0), &lp_project(&fam, &f, k).unwrap());
        }
        let err = acc.sub(&f).norm_l2() / f.norm_l2();
        assert!(err < 1e-10, "partition reconstruction error {err}");
    }

    #[test]
    fn shell_energy_matches_direct_spectral_sum() {
        // independent oracle: sum |fhat|^2 ψ_3(ξ)^2 over the lattice
        let g = TorusGrid::new(2, 64, TAU).unwrap();
        let fam = LpFamily::for_grid(&g);
        let f = random_field(&g, 21, "white");
        let spec = forward(&f);
        let mut oracle = 0.0;
        for i in 0..spec.coeffs.len() {
            let w = fam.psi(3, spec.grid.freq(i));
            oracle += spec.coeffs[i].norm_sqr() * w * w;
        }
        oracle /= g.len().powi(2);
        let p = lp_project(&fam, &f, 3).unwrap();
        assert_relative_eq!(p.norm_l2().powi(2), oracle, max_relative = 1e-10);
    }

    #[test]
    fn beta_projections_preserve_energy() {
        // Σ_k ||β_k(D) f||² = ||f||² exactly by the square partition
        let g = TorusGrid::new(2, 64, TAU).unwrap();
        let fam = LpFamily::for_grid(&g);
        let f0 = random_field(&g, 9, "betaenergy");
        let mut spec = forward(&f0);
        for i in 0..spec.coeffs.len() {
            let r = crate::util::norm(spec.grid.freq(i));
            if r > 20.0 {
                spec.coeffs[i] = C64::default();
            }
        }
        let f = inverse(&spec);
        let mut total = 0.0;
        for k in 0..=fam.k_max {
            total += lp_project_beta(&fam, &f, k).unwrap().norm_l2().powi(2);
        }
        let rel = (total - f.norm_l2().powi(2)).abs() / f.norm_l2().powi(2);
        assert!(rel < 1e-10, "energy split error {rel}");
    }

    #[test]
    fn project_beyond_lattice_errors() {
        let g = TorusGrid::new(2, 32, TAU).unwrap();
        let fam = LpFamily::new(12);
        let f = random_field(&g, 2, "oops");
        assert!(matches!(
            lp_project(&fam, &f, 9),
            Err(Error::Resolution(_))
        ));
    }

    #[test]
    fn sobolev_examples() {
        let g = TorusGrid::new(2, 32, TAU).unwrap();
        let f = random_field(&g, 4, "sobolev");
        let id = sobolev_multiplier(&f, 0.0);
        assert!(id.sub(&f).norm_l2() < 1e-12 * f.norm_l2());
        let c = ScalarField::from_fn(&g, |_| C64::new(1.3, -0.4));
        let cs = sobolev_multiplier(&c, 1.7);
        assert!(cs.sub(&c).norm_l2() < 1e-12 * c.norm_l2());
        let pw = plane_wave(&g, [3.0, 0.0]);
        let ps = sobolev_multiplier(&pw, 2.0);
        let err = ps.sub(&pw.scaled(C64::new(10.0, 0.0))).norm_l2() / pw.norm_l2();
        assert!(err < 1e-12);
    }

    #[test]
    fn dump_roundtrip() {
        let dir = std::env::temp_dir().join("roughwave_dump_test");
        std::fs::create_dir_all(&dir).unwrap();
        let g = TorusGrid::new(2, 16, TAU).unwrap();
        let f = random_field(&g, 19, "dump");
        let path = dir.join("field.bin");
        f.dump(&path, "test field").unwrap();
        let g2 = ScalarField::load(&path).unwrap();
        assert!(g2.sub(&f).norm_l2() == 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn parseval_random(seed in 0u64..1000) {
            let g = TorusGrid::new(2, 16, TAU).unwrap();
            let f = random_field(&g, seed, "prop");
            let spec = forward(&f);
            let a = f.norm_l2();
            let b = spec.norm_l2();
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
        }

        #[test]
        fn dilation_random(k in 2usize..9, r in 0.1f64..40.0, ang in 0.0f64..6.28) {
            let fam = LpFamily::new(10);
            let xi = [r * ang.cos(), r * ang.sin()];
            let s = (1.0 - k as f64).exp2();
            let lhs = fam.beta(k, xi);
            let rhs = fam.beta(1, crate::util::scale(xi, s));
            prop_assert!((lhs - rhs).abs() < 1e-14);
        }
    }
}
