//! Brute-force numerics used to check the closed forms: adaptive quadrature,
//! circle-average residues, finite differences, Newton inversion of a planar
//! harmonic map and winding numbers.
//!
//! Nothing here knows about the surface. Callers pass closures.
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::prelude::*;
use crate::harmonic::StepBoundary;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-11,
            max_depth: 40,
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
/// Gauss weights on the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss-Kronrod 7/15 panel: `(kronrod, |kronrod - gauss|)`.
pub fn gk15<F: Fn(f64) -> Complex>(f: &F, a: f64, b: f64) -> (Complex, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += s * WGK[i];
        if i % 2 == 1 {
            g += s * WG[i / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Adaptive bisection of Gauss-Kronrod panels until the summed error
/// estimate is below `cfg.abs_tol`.
pub fn integrate<F: Fn(f64) -> Complex>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Complex> {
    if a == b {
        return Ok(Complex::default());
    }
    let mut failed = 0.0f64;
    let value = refine(&f, a, b, cfg.abs_tol, cfg.max_depth, &mut failed);
    if failed > cfg.abs_tol {
        return Err(Error::ToleranceNotMet { estimate: failed });
    }
    Ok(value)
}

fn refine<F: Fn(f64) -> Complex>(f: &F, a: f64, b: f64, tol: f64, depth: u32, failed: &mut f64) -> Complex {
    let (value, err) = gk15(f, a, b);
    if err <= tol {
        return value;
    }
    if depth == 0 || !err.is_finite() {
        *failed += err;
        return value;
    }
    let mid = 0.5 * (a + b);
    refine(f, a, mid, 0.5 * tol, depth - 1, failed) + refine(f, mid, b, 0.5 * tol, depth - 1, failed)
}

/// Fixed composite rule with `panels` equal Gauss-Kronrod panels.
pub fn composite<F: Fn(f64) -> Complex>(f: F, a: f64, b: f64, panels: usize) -> Complex {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| gk15(&f, a + h * i as f64, a + h * (i + 1) as f64).0)
        .sum()
}

/// `(1/2pi) int (1 - |z|^2)/|e^{it} - z|^2 F(t) dt`, integrated arc by arc.
pub fn poisson_extension(z: Complex, boundary: &StepBoundary, cfg: &QuadratureConfig) -> Result<Complex> {
    if z.norm() >= 1.0 {
        return Err(Error::OutsideDisk);
    }
    let kernel = |t: f64| {
        let d = Complex::from_polar(1.0, t) - z;
        Complex::new((1.0 - z.norm_sqr()) / d.norm_sqr(), 0.0)
    };
    let per_arc = QuadratureConfig {
        abs_tol: cfg.abs_tol / 4.0,
        ..*cfg
    };
    let mut total = Complex::default();
    for (a, b, value) in boundary.arcs {
        let weight = integrate(kernel, a, b, &per_arc)?.re / (2.0 * PI);
        total += value * weight;
    }
    Ok(total)
}

/// `2 Im int_0^z K(zeta) d zeta` along the straight segment.
pub fn contour_height<K: Fn(Complex) -> Complex>(z: Complex, kernel: K, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(2.0 * segment_integral(Complex::default(), z, kernel, cfg)?.im)
}

/// `int_a^b K(zeta) d zeta` along the segment from `a` to `b`.
pub fn segment_integral<K: Fn(Complex) -> Complex>(
    a: Complex,
    b: Complex,
    kernel: K,
    cfg: &QuadratureConfig,
) -> Result<Complex> {
    let d = b - a;
    if d.norm() == 0.0 {
        return Ok(Complex::default());
    }
    integrate(|tau| kernel(a + d * tau) * d, 0.0, 1.0, cfg)
}

/// Mean of `K(P + eps e^{i theta}) eps e^{i theta}` over 64 equally spaced
/// angles at radius `eps`.
pub fn circle_residue<K: Fn(Complex) -> Complex>(kernel: &K, pole: Complex, eps: f64) -> Complex {
    const N: usize = 64;
    let sum: Complex = (0..N)
        .map(|i| {
            let e = Complex::from_polar(eps, 2.0 * PI * i as f64 / N as f64);
            kernel(pole + e) * e
        })
        .sum();
    sum / N as f64
}

/// Circle averages at `eps = 1e-4` and `1e-5`, combined by Richardson
/// extrapolation for a leading error linear in `eps`.
pub fn numeric_residue<K: Fn(Complex) -> Complex>(kernel: K, pole: Complex) -> Complex {
    let r1 = circle_residue(&kernel, pole, 1e-4);
    let r2 = circle_residue(&kernel, pole, 1e-5);
    (10.0 * r2 - r1) / 9.0
}

/// Five-point Laplacian. Any error from `field` means the stencil left the
/// domain.
pub fn fd_laplacian<F: Fn(f64, f64) -> Result<f64>>(field: F, x: f64, y: f64, h: f64) -> Result<f64> {
    let v = |a: f64, b: f64| field(a, b).map_err(|_| Error::StencilOutOfDomain);
    Ok((v(x + h, y)? + v(x - h, y)? + v(x, y + h)? + v(x, y - h)? - 4.0 * v(x, y)?) / (h * h))
}

/// Centered four-point mixed difference for `F_xy`.
pub fn fd_mixed<F: Fn(f64, f64) -> Result<f64>>(field: F, x: f64, y: f64, h: f64) -> Result<f64> {
    let v = |a: f64, b: f64| field(a, b).map_err(|_| Error::StencilOutOfDomain);
    Ok((v(x + h, y + h)? - v(x + h, y - h)? - v(x - h, y + h)? + v(x - h, y - h)?) / (4.0 * h * h))
}

/// First and second partial derivatives of a height field by centered
/// differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphJet {
    pub fx: f64,
    pub fy: f64,
    pub fxx: f64,
    pub fyy: f64,
    pub fxy: f64,
}

impl GraphJet {
    pub fn curvature(&self) -> f64 {
        let w = 1.0 + self.fx * self.fx + self.fy * self.fy;
        (self.fxx * self.fyy - self.fxy * self.fxy) / (w * w)
    }

    /// Upward unit normal `(-F_x, -F_y, 1)/sqrt(1 + |grad F|^2)`.
    pub fn normal(&self) -> [f64; 3] {
        let w = (1.0 + self.fx * self.fx + self.fy * self.fy).sqrt();
        [-self.fx / w, -self.fy / w, 1.0 / w]
    }
}

pub fn fd_graph_jet<F: Fn(f64, f64) -> Result<f64>>(field: F, x: f64, y: f64, h: f64) -> Result<GraphJet> {
    let v = |a: f64, b: f64| field(a, b).map_err(|_| Error::StencilOutOfDomain);
    let c = v(x, y)?;
    let (xp, xm) = (v(x + h, y)?, v(x - h, y)?);
    let (yp, ym) = (v(x, y + h)?, v(x, y - h)?);
    Ok(GraphJet {
        fx: (xp - xm) / (2.0 * h),
        fy: (yp - ym) / (2.0 * h),
        fxx: (xp - 2.0 * c + xm) / (h * h),
        fyy: (yp - 2.0 * c + ym) / (h * h),
        fxy: fd_mixed(&field, x, y, h)?,
    })
}

/// Solves `f(z) = target` for a sense-preserving harmonic map
/// `f = h + conj(g)` on the unit disk. `derivs(z)` returns `(h'(z), g'(z))`;
/// the Newton step solves `h' dz + conj(g' dz) = -r`.
///
/// Starts from `seed` and falls back to the best point of a coarse polar grid.
pub fn newton_invert<F, D>(f: F, derivs: D, target: Complex, seed: Complex) -> Result<Complex>
where
    F: Fn(Complex) -> Result<Complex>,
    D: Fn(Complex) -> Result<(Complex, Complex)>,
{
    if let Ok(z) = newton_from(&f, &derivs, target, seed) {
        return Ok(z);
    }
    let mut best = (f64::INFINITY, Complex::default());
    for i in 0..40 {
        for k in 0..64 {
            let z = Complex::from_polar(0.999 * i as f64 / 40.0, 2.0 * PI * k as f64 / 64.0);
            if let Ok(v) = f(z) {
                let d = (v - target).norm();
                if d < best.0 {
                    best = (d, z);
                }
            }
        }
    }
    newton_from(&f, &derivs, target, best.1)
}

fn newton_from<F, D>(f: &F, derivs: &D, target: Complex, seed: Complex) -> Result<Complex>
where
    F: Fn(Complex) -> Result<Complex>,
    D: Fn(Complex) -> Result<(Complex, Complex)>,
{
    let mut z = seed;
    let scale = 1.0 + target.norm();
    for _ in 0..50 {
        let r = f(z).map_err(|_| Error::NewtonDiverged)? - target;
        if r.norm() <= 1e-12 * scale {
            return Ok(z);
        }
        let (a, b) = derivs(z).map_err(|_| Error::NewtonDiverged)?;
        let det = a.norm_sqr() - b.norm_sqr();
        if det.abs() < 1e-300 {
            return Err(Error::NewtonDiverged);
        }
        let step = (a.conj() * (-r) - b.conj() * (-r).conj()) / det;
        let mut lambda = 1.0;
        // Stay inside the disk.
        while (z + step * lambda).norm() >= 1.0 {
            lambda *= 0.5;
            if lambda < 1e-12 {
                return Err(Error::NewtonDiverged);
            }
        }
        z += step * lambda;
        if step.norm() * lambda <= 1e-15 {
            let r = f(z).map_err(|_| Error::NewtonDiverged)? - target;
            return if r.norm() <= 1e-10 * scale {
                Ok(z)
            } else {
                Err(Error::NewtonDiverged)
            };
        }
    }
    Err(Error::NewtonDiverged)
}

/// Winding number of the closed curve `theta -> curve(theta)`,
/// `theta in [0, 2pi]`, about `point`. Intervals whose argument increment
/// exceeds `pi/4` are bisected.
pub fn winding_number<C: Fn(f64) -> Complex>(curve: C, point: Complex, samples: usize) -> i64 {
    let n = samples.max(8);
    let mut total = 0.0;
    let mut stack: Vec<(f64, f64, u32)> = Vec::new();
    for i in 0..n {
        stack.push((2.0 * PI * i as f64 / n as f64, 2.0 * PI * (i + 1) as f64 / n as f64, 0));
        while let Some((a, b, depth)) = stack.pop() {
            let da = curve(a) - point;
            let db = curve(b) - point;
            let inc = (db / da).arg();
            if inc.abs() > 0.25 * PI && depth < 30 {
                let mid = 0.5 * (a + b);
                stack.push((mid, b, depth + 1));
                stack.push((a, mid, depth + 1));
            } else {
                total += inc;
            }
        }
    }
    (total / (2.0 * PI)).round() as i64
}
