//! Curvature, normal and second-derivative data of the graph, pointwise and in
//! closed form at the harmonic center.
use core::f64::consts::{FRAC_1_SQRT_2, PI};


use crate::prelude::*;
use crate::geometry::HyperbolicCoords;
use crate::harmonic::AnalyticParts;
use crate::params::ScherkData;
use crate::surface::ScherkSurface;
use crate::weierstrass::{gauss_map_q, q_prime};

/// `K = -4|q'|^2 / (|h'|^2 (1 + |q|^2)^4)`.
pub fn gauss_curvature(z: Complex, d: &ScherkData, parts: &AnalyticParts) -> Result<f64> {
    let hp = parts.h_prime(z)?;
    let q = gauss_map_q(z, d);
    let qp = q_prime(z, d);
    let den = 1.0 + q.norm_sqr();
    Ok(-4.0 * qp.norm_sqr() / (hp.norm_sqr() * den.powi(4)))
}

/// `-(pi^2/4) cos^2 m coth^2 j sech^4 k`.
pub fn center_curvature(c: &HyperbolicCoords) -> f64 {
    let coth = c.j.tanh().recip();
    let sech = c.k.cosh().recip();
    -0.25 * PI * PI * c.m.cos().powi(2) * coth * coth * sech.powi(4)
}

/// `pi^2 cos^2 m coth^2 j sech^4 k / |b1 - b3|^2`.
pub fn curvature_bound(c: &HyperbolicCoords, focal_distance: f64) -> f64 {
    4.0 * center_curvature(c).abs() / (focal_distance * focal_distance)
}

/// `q(0)`, `q'(0)` and `h'(0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterData {
    pub q0: Complex,
    pub q0_prime: Complex,
    pub h0_prime: Complex,
}

/// Closed forms in `(m, s, t)`:
///
/// ```text
/// q(0)  = -i sech((k - im)/2) sinh((k + im)/2)
/// q'(0) = (1 + i e^j) cos m / (i + e^j) * sech^2((k - im)/2)
/// h'(0) = -2i (e^{2j} - 1)(1 + cosh(k - im)) / (pi (i + e^j)^2)
/// ```
pub fn center_data(c: &HyperbolicCoords) -> CenterData {
    let (m, j, k) = (c.m, c.j, c.k);
    let half_minus = Complex::new(0.5 * k, -0.5 * m);
    let sech = half_minus.cosh().inv();
    let q0 = Complex::new(0.0, -1.0) * sech * Complex::new(0.5 * k, 0.5 * m).sinh();
    let ej = j.exp();
    let q0_prime = Complex::new(1.0, ej) * m.cos() / Complex::new(ej, 1.0) * sech * sech;
    let den = Complex::new(ej, 1.0);
    let h0_prime = Complex::new(0.0, -2.0) * ((2.0 * j).exp() - 1.0) * (1.0 + Complex::new(k, -m).cosh())
        / (den * den * PI);
    CenterData {
        q0,
        q0_prime,
        h0_prime,
    }
}

/// The same three values from the Weierstrass data.
pub fn center_data_direct(d: &ScherkData, parts: &AnalyticParts) -> Result<CenterData> {
    let zero = Complex::default();
    Ok(CenterData {
        q0: gauss_map_q(zero, d),
        q0_prime: q_prime(zero, d),
        h0_prime: parts.h_prime(zero)?,
    })
}

/// `(sin m, -cos m tanh k, cos m sech k)`.
pub fn center_normal(c: &HyperbolicCoords) -> [f64; 3] {
    let cm = c.m.cos();
    [c.m.sin(), -cm * c.k.tanh(), cm / c.k.cosh()]
}

/// Inverse stereographic projection `(2 Re q, 2 Im q, 1 - |q|^2)/(1 + |q|^2)`.
pub fn stereographic(q: Complex) -> [f64; 3] {
    let n = q.norm_sqr();
    let d = 1.0 + n;
    [2.0 * q.re / d, 2.0 * q.im / d, (1.0 - n) / d]
}

/// Upward unit normal of the graph `(Re f, Im f, T)` at a point with Gauss
/// map value `q`: the stereographic image of `-i/q` reflected through the
/// north pole, `(-2 Im q, -2 Re q, 1 - |q|^2)/(1 + |q|^2)`.
pub fn graph_normal(q: Complex) -> [f64; 3] {
    let [x, y, z] = stereographic(q);
    [-y, -x, z]
}

/// `(pi/4) coth j sec m`.
pub fn center_mixed_derivative(c: &HyperbolicCoords) -> f64 {
    0.25 * PI / (c.j.tanh() * c.m.cos())
}

/// `-2 Re[h' (1 - q^4) conj(q')] / (|h'|^2 (1 - |q|^2)^3 (1 + |q|^2))`.
pub fn mixed_derivative_formula(h_prime: Complex, q: Complex, q_prime: Complex) -> f64 {
    let n = q.norm_sqr();
    let q4 = (q * q) * (q * q);
    -2.0 * (h_prime * (1.0 - q4) * q_prime.conj()).re
        / (h_prime.norm_sqr() * (1.0 - n).powi(3) * (1.0 + n))
}

/// The formula after rotating the coordinate axes by `alpha`.
pub fn rotated_mixed_derivative_formula(h_prime: Complex, q: Complex, q_prime: Complex, alpha: f64) -> f64 {
    let rot = Complex::from_polar(1.0, alpha);
    let back = rot.conj();
    mixed_derivative_formula(rot * h_prime, back * q, back * q_prime)
}

/// Closed form of the mixed derivative at the center in axes rotated by
/// `alpha`:
///
/// ```text
/// pi (1 + e^{2j}) (e^{2k} cos(2 alpha - m) + cos(2 alpha + m))
///   / (16 e^{j + k} sinh j cos^2 m cosh k)
/// ```
pub fn rotated_center_mixed_derivative(c: &HyperbolicCoords, alpha: f64) -> f64 {
    let (m, j, k) = (c.m, c.j, c.k);
    let angular = (2.0 * k).exp() * (2.0 * alpha - m).cos() + (2.0 * alpha + m).cos();
    PI * (1.0 + (2.0 * j).exp()) * angular
        / (16.0 * (j + k).exp() * j.sinh() * m.cos().powi(2) * k.cosh())
}

/// The eight candidates `+-arccos(+-sqrt(1/2 +- sin m sinh k / (sqrt 2 sqrt(cos 2m + cosh 2k))))`.
pub fn alignment_candidates(c: &HyperbolicCoords) -> [f64; 8] {
    let (m, k) = (c.m, c.k);
    let shift = m.sin() * k.sinh() * FRAC_1_SQRT_2 / ((2.0 * m).cos() + (2.0 * k).cosh()).sqrt();
    let mut out = [0.0; 8];
    let mut i = 0;
    for inner in [0.5 + shift, 0.5 - shift] {
        let root = inner.clamp(0.0, 1.0).sqrt();
        for cos_alpha in [root, -root] {
            let a = cos_alpha.acos();
            out[i] = a;
            out[i + 1] = -a;
            i += 2;
        }
    }
    out
}

/// Smallest nonnegative candidate at which the rotated mixed derivative
/// vanishes, relative to the amplitude of its angular factor.
pub fn aligning_rotation(c: &HyperbolicCoords) -> Result<f64> {
    let amplitude = {
        let (m, j, k) = (c.m, c.j, c.k);
        let a = (Complex::from_polar((2.0 * k).exp(), -m) + Complex::from_polar(1.0, m)).norm();
        PI * (1.0 + (2.0 * j).exp()) * a / (16.0 * (j + k).exp() * j.sinh() * m.cos().powi(2) * k.cosh())
    };
    alignment_candidates(c)
        .into_iter()
        .filter(|&a| a >= 0.0)
        .filter(|&a| rotated_center_mixed_derivative(c, a).abs() <= 1e-8 * amplitude.max(1.0))
        .min_by(|a, b| a.total_cmp(b))
        .ok_or(Error::NoRootFound)
}

/// Center data of a surface in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterReport {
    /// Harmonic center in original coordinates.
    pub c0: Complex,
    pub q0: Complex,
    pub q0_prime: Complex,
    pub h0_prime: Complex,
    pub curvature_normalized: f64,
    pub curvature_original: f64,
    pub curvature_bound: f64,
    /// Closed-form center normal `(sin m, -cos m tanh k, cos m sech k)`.
    pub normal: [f64; 3],
    /// `(pi/4) coth j sec m`, normalized frame.
    pub mixed_derivative: f64,
    pub alpha: f64,
}

impl CenterReport {
    pub fn new(surface: &ScherkSurface) -> Result<CenterReport> {
        let c = &surface.coords;
        let cd = center_data(c);
        let zero = Complex::default();
        let curvature_normalized = surface.gauss_curvature(zero)?;
        Ok(CenterReport {
            c0: surface.harmonic_center(),
            q0: cd.q0,
            q0_prime: cd.q0_prime,
            h0_prime: cd.h0_prime,
            curvature_normalized,
            curvature_original: surface.gauss_curvature_original(zero)?,
            curvature_bound: curvature_bound(c, surface.frame.focal_distance()),
            normal: center_normal(c),
            mixed_derivative: center_mixed_derivative(c),
            alpha: aligning_rotation(c)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(m: f64, s: f64, t: f64) -> ScherkSurface {
        ScherkSurface::from_params(m, s, t).unwrap()
    }

    #[test]
    fn center_curvature_matches_pointwise() {
        for (m, s, t) in [(0.3, 1.0, 0.3), (0.3, 1.0, -0.3), (1.1, 2.0, -0.4), (0.0, 0.2, -3.0)] {
            let sf = surface(m, s, t);
            let k = sf.gauss_curvature(Complex::default()).unwrap();
            let closed = center_curvature(&sf.coords);
            assert!((k - closed).abs() < 1e-10 * closed.abs(), "{k} vs {closed}");
            let bound = curvature_bound(&sf.coords, 2.0);
            assert!((bound - closed.abs()).abs() < 1e-14 * bound);
        }
    }

    #[test]
    fn curvature_negative() {
        let sf = surface(0.9, 0.5, -0.2);
        for z in [Complex::new(0.5, 0.5), Complex::new(-0.9, 0.1), Complex::new(0.0, -0.99)] {
            assert!(sf.gauss_curvature(z).unwrap() < 0.0);
        }
    }

    #[test]
    fn center_data_routes_agree() {
        for (m, s, t) in [(0.3, 1.0, 0.3), (0.3, 1.0, -0.3), (1.1, 2.0, -0.4)] {
            let sf = surface(m, s, t);
            let a = center_data(&sf.coords);
            let b = center_data_direct(&sf.data, &sf.parts).unwrap();
            assert!((a.q0 - b.q0).norm() < 1e-12);
            assert!((a.q0_prime - b.q0_prime).norm() < 1e-12);
            assert!((a.h0_prime - b.h0_prime).norm() < 1e-12);
            assert!(a.q0.norm() < 1.0);
        }
    }

    #[test]
    fn normal_is_stereographic_image() {
        let sf = surface(0.3, 1.0, 0.3);
        let n = center_normal(&sf.coords);
        let st = stereographic(center_data(&sf.coords).q0);
        for i in 0..3 {
            assert!((n[i] - st[i]).abs() < 1e-12);
        }
        let sym = center_normal(&HyperbolicCoords::new(0.4, 1.0, -1.0));
        assert!((sym[0] - 0.4f64.sin()).abs() < 1e-15 && sym[1].abs() < 1e-15);
        assert!(n[2] > 0.0);
    }

    #[test]
    fn mixed_derivative_formula_is_twice_closed_form() {
        let sf = surface(0.3, 1.0, 0.3);
        let cd = center_data(&sf.coords);
        let general = mixed_derivative_formula(cd.h0_prime, cd.q0, cd.q0_prime);
        let closed = center_mixed_derivative(&sf.coords);
        assert!((general - 2.0 * closed).abs() < 1e-10);
        for alpha in [0.0, 0.4, 1.3, 2.9] {
            let rotated = rotated_mixed_derivative_formula(cd.h0_prime, cd.q0, cd.q0_prime, alpha);
            let display = rotated_center_mixed_derivative(&sf.coords, alpha);
            assert!((rotated - 2.0 * display).abs() < 1e-10 * rotated.abs().max(1.0));
        }
        assert!((rotated_center_mixed_derivative(&sf.coords, 0.0) - closed).abs() < 1e-12);
    }

    #[test]
    fn alignment() {
        let sym = HyperbolicCoords::new(0.7, 1.0, -1.0);
        assert!((aligning_rotation(&sym).unwrap() - core::f64::consts::FRAC_PI_4).abs() < 1e-12);
        let c = HyperbolicCoords::new(0.3, 1.0, 0.3);
        let a = aligning_rotation(&c).unwrap();
        assert!(rotated_center_mixed_derivative(&c, a).abs() < 1e-8);
        // tan 2a = -cot m coth k
        let expect = (-(c.m.tan() * c.k.tanh()).recip()).atan();
        assert!(((2.0 * a).tan() - expect.tan()).abs() < 1e-8);
    }

    #[test]
    fn report() {
        let sf = surface(0.3, 1.0, 0.3);
        let r = sf.center_report().unwrap();
        let n = r.normal;
        assert!(((n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt() - 1.0).abs() < 1e-12);
        assert!((r.curvature_original.abs() - r.curvature_bound).abs() < 1e-10 * r.curvature_bound);
    }
}
