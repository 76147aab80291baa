//! Polar sampling of the surface and radial height traces.
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::prelude::*;
use crate::surface::ScherkSurface;

pub const DEFAULT_H_MAX: f64 = 5.0;
pub const MAX_RADIUS: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clamp {
    None,
    Above,
    Below,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshMetadata {
    pub m: f64,
    pub s: f64,
    pub t: f64,
    pub p: f64,
    /// Clamp height in normalized units.
    pub h_max: f64,
    pub clamped_above: usize,
    pub clamped_below: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    /// Parameter-disk point of each vertex.
    pub params: Vec<Complex>,
    pub clamp: Vec<Clamp>,
    pub metadata: MeshMetadata,
}

impl SurfaceMesh {
    pub fn faces_valid(&self) -> bool {
        self.faces.iter().all(|f| f.iter().all(|&i| i < self.vertices.len()))
    }
}

/// Ring radii `r_max sin(pi i/(2 n_r))`, `i = 1..n_r`, clustered near `r_max`.
pub fn ring_radii(n_r: usize, r_max: f64) -> Vec<f64> {
    (1..=n_r)
        .map(|i| r_max * (0.5 * PI * i as f64 / n_r as f64).sin())
        .collect()
}

/// Samples the center and `n_r` rings of `n_theta` points each, in original
/// coordinates. Heights are clamped to `+-h_max` normalized units.
pub fn sample_disk(
    surface: &ScherkSurface,
    n_r: usize,
    n_theta: usize,
    r_max: f64,
    h_max: f64,
) -> Result<SurfaceMesh> {
    if n_r < 2 || n_theta < 8 || !(r_max > 0.0 && r_max <= MAX_RADIUS) || !(h_max > 0.0) {
        return Err(Error::InvalidGrid);
    }
    let scale = surface.frame.length_scale();
    let count = 1 + n_r * n_theta;
    let mut vertices = Vec::with_capacity(count);
    let mut params = Vec::with_capacity(count);
    let mut clamp = Vec::with_capacity(count);
    let mut push = |z: Complex| -> Result<()> {
        let f = surface.harmonic_map(z)?;
        let t = surface.height(z)?;
        let (t, flag) = if t > h_max {
            (h_max, Clamp::Above)
        } else if t < -h_max {
            (-h_max, Clamp::Below)
        } else {
            (t, Clamp::None)
        };
        vertices.push([f.re, f.im, scale * t]);
        params.push(z);
        clamp.push(flag);
        Ok(())
    };
    push(Complex::default())?;
    for r in ring_radii(n_r, r_max) {
        for k in 0..n_theta {
            push(Complex::from_polar(r, 2.0 * PI * k as f64 / n_theta as f64))?;
        }
    }

    let ring = |i: usize, k: usize| 1 + i * n_theta + k % n_theta;
    let mut faces = Vec::with_capacity(n_theta * (2 * n_r - 1));
    for k in 0..n_theta {
        faces.push([0, ring(0, k), ring(0, k + 1)]);
    }
    for i in 0..n_r - 1 {
        for k in 0..n_theta {
            let (a, b) = (ring(i, k), ring(i, k + 1));
            let (c, d) = (ring(i + 1, k), ring(i + 1, k + 1));
            faces.push([a, c, d]);
            faces.push([a, d, b]);
        }
    }
    let c = &surface.coords;
    Ok(SurfaceMesh {
        metadata: MeshMetadata {
            m: c.m,
            s: c.s,
            t: c.t,
            p: surface.data.p,
            h_max,
            clamped_above: clamp.iter().filter(|&&f| f == Clamp::Above).count(),
            clamped_below: clamp.iter().filter(|&&f| f == Clamp::Below).count(),
        },
        vertices,
        faces,
        params,
        clamp,
    })
}

/// `(r, T(r P))` toward the pole `P` numbered `1..=4` as `1, e^{ip}, -1, -e^{ip}`.
pub fn radial_trace(surface: &ScherkSurface, pole_index: usize, radii: &[f64]) -> Result<Vec<(f64, f64)>> {
    if !(1..=4).contains(&pole_index) {
        return Err(Error::InvalidGrid);
    }
    let pole = surface.kernel.poles[pole_index - 1];
    radii
        .iter()
        .map(|&r| Ok((r, surface.height(pole * r)?)))
        .collect()
}

/// `1 - 10^{-e}` for `e` from 2 to 6 in steps of 1/4.
pub fn log_radii() -> Vec<f64> {
    (0..=16).map(|i| 1.0 - 10f64.powf(-2.0 - 0.25 * i as f64)).collect()
}

/// Least-squares slope of `T` against `log(1 - r)`.
pub fn log_slope(trace: &[(f64, f64)]) -> f64 {
    let n = trace.len() as f64;
    let xs: Vec<f64> = trace.iter().map(|(r, _)| (1.0 - r).ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = trace.iter().map(|(_, t)| t).sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, (_, y)) in xs.iter().zip(trace) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface() -> ScherkSurface {
        ScherkSurface::from_params(0.3, 1.0, 0.3).unwrap()
    }

    #[test]
    fn small_mesh() {
        let s = surface();
        let mesh = sample_disk(&s, 2, 8, 1e-3, DEFAULT_H_MAX).unwrap();
        assert_eq!(mesh.vertices.len(), 17);
        assert_eq!(mesh.faces.len(), 8 + 16);
        assert!(mesh.faces_valid());
        let c0 = s.harmonic_center();
        for v in &mesh.vertices {
            assert!((Complex::new(v[0], v[1]) - c0).norm() < 1e-2);
            assert!(v[2].abs() < 1e-2);
        }
    }

    #[test]
    fn clamp_pattern() {
        let s = surface();
        let mesh = sample_disk(&s, 40, 128, 0.999, DEFAULT_H_MAX).unwrap();
        assert_eq!(mesh.metadata.clamped_above + mesh.metadata.clamped_below, 0);
        let mesh = sample_disk(&s, 40, 128, 0.999, 2.0).unwrap();
        assert!(mesh.metadata.clamped_above > 0 && mesh.metadata.clamped_below > 0);
        for (z, flag) in mesh.params.iter().zip(&mesh.clamp) {
            let near = |p: Complex| (z - p).norm() < 0.3;
            let poles = s.kernel.poles;
            match flag {
                Clamp::Below => assert!(near(poles[0]) || near(poles[2])),
                Clamp::Above => assert!(near(poles[1]) || near(poles[3])),
                Clamp::None => {}
            }
        }
        for v in &mesh.vertices {
            assert!(s.quad.contains(Complex::new(v[0], v[1]), 1e-6));
        }
    }

    #[test]
    fn grid_errors() {
        let s = surface();
        assert_eq!(sample_disk(&s, 1, 8, 0.5, 5.0), Err(Error::InvalidGrid));
        assert_eq!(sample_disk(&s, 2, 7, 0.5, 5.0), Err(Error::InvalidGrid));
        assert_eq!(sample_disk(&s, 2, 8, 1.0, 5.0), Err(Error::InvalidGrid));
        assert_eq!(radial_trace(&s, 5, &[0.5]), Err(Error::InvalidGrid));
    }

    #[test]
    fn trace_starts_at_zero_and_diverges() {
        let s = surface();
        let trace = radial_trace(&s, 2, &[0.0, 0.99, 0.999, 0.9999]).unwrap();
        assert_eq!(trace[0], (0.0, 0.0));
        assert!(trace[1].1 < trace[2].1 && trace[2].1 < trace[3].1);
    }

    #[test]
    fn slope_of_exact_log() {
        let pts: Vec<(f64, f64)> = log_radii().into_iter().map(|r| (r, 3.0 * (1.0 - r).ln() + 1.0)).collect();
        assert!((log_slope(&pts) - 3.0).abs() < 1e-12);
    }
}
