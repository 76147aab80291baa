//! The harmonic diffeomorphism `f = h + conj(g)` of the unit disk onto the
//! normalized quadrilateral.
//!
//! `f` is the Poisson extension of a step function taking the four vertex
//! values on four arcs. Both `h'` and `g'` are then sums of simple poles at the
//! arc endpoints, and `h`, `g` are sums of principal logarithms.
use core::f64::consts::PI;


use crate::prelude::*;
use crate::params::ScherkData;

/// Distance to a boundary pole below which derivatives are refused.
pub const POLE_TOL: f64 = 1e-9;

/// Boundary data on `[0, 2pi)`: `z` on `[0, p)`, `1` on `[p, pi)`, `w` on
/// `[pi, pi + p)` and `-1` on `[pi + p, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepBoundary {
    /// `(start, end, value)` for each arc, in increasing angle.
    pub arcs: [(f64, f64, Complex); 4],
}

impl StepBoundary {
    pub fn new(p: f64, z: Complex, w: Complex) -> StepBoundary {
        let one = Complex::new(1.0, 0.0);
        StepBoundary {
            arcs: [
                (0.0, p, z),
                (p, PI, one),
                (PI, PI + p, w),
                (PI + p, 2.0 * PI, -one),
            ],
        }
    }

    /// Constant boundary value, handy for checks.
    pub fn constant(b: Complex) -> StepBoundary {
        StepBoundary {
            arcs: [
                (0.0, 0.5 * PI, b),
                (0.5 * PI, PI, b),
                (PI, 1.5 * PI, b),
                (1.5 * PI, 2.0 * PI, b),
            ],
        }
    }

    pub fn value_at(&self, theta: f64) -> Complex {
        let th = theta - 2.0 * PI * (theta / (2.0 * PI)).floor();
        self.arcs
            .iter()
            .find(|(a, b, _)| th >= *a && th < *b)
            .map_or(self.arcs[3].2, |arc| arc.2)
    }

    /// Arc-length weighted mean, which is the value of the extension at 0.
    pub fn mean(&self) -> Complex {
        self.arcs
            .iter()
            .map(|(a, b, v)| v * (b - a))
            .sum::<Complex>()
            / (2.0 * PI)
    }
}

/// Pole/residue tables of `h'` and `g'` plus the constant `h(0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticParts {
    /// `[1, e^{ip}, -1, -e^{ip}]`.
    pub poles: [Complex; 4],
    pub h_residues: [Complex; 4],
    pub g_residues: [Complex; 4],
    /// `h(0) = f(0)`, the harmonic center in the normalized frame.
    pub h0: Complex,
    /// `g(0)`; zero by construction.
    pub g0: Complex,
}

impl AnalyticParts {
    /// Residues `(b_k - b_{k+1}) / (2 pi i)` at the end of each arc.
    pub fn new(data: &ScherkData, z: Complex, w: Complex) -> AnalyticParts {
        let boundary = StepBoundary::new(data.p, z, w);
        let one = Complex::new(1.0, 0.0);
        let e_ip = data.e_ip;
        // Arc k ends at ends[k].
        let ends = [e_ip, -one, -e_ip, one];
        let two_pi_i = Complex::new(0.0, 2.0 * PI);
        let mut poles = [Complex::default(); 4];
        let mut h_res = [Complex::default(); 4];
        let mut g_res = [Complex::default(); 4];
        for k in 0..4 {
            let jump = boundary.arcs[k].2 - boundary.arcs[(k + 1) % 4].2;
            // Store in the order 1, e^{ip}, -1, -e^{ip}.
            let slot = (k + 1) % 4;
            poles[slot] = ends[k];
            h_res[slot] = jump / two_pi_i;
            g_res[slot] = jump.conj() / two_pi_i;
        }
        AnalyticParts {
            poles,
            h_residues: h_res,
            g_residues: g_res,
            h0: boundary.mean(),
            g0: Complex::default(),
        }
    }

    fn check_poles(&self, z: Complex) -> Result<()> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if self.poles.iter().any(|p| (z - p).norm() < POLE_TOL) {
            return Err(Error::PoleProximity);
        }
        Ok(())
    }

    pub fn h_prime(&self, z: Complex) -> Result<Complex> {
        self.check_poles(z)?;
        Ok(pole_sum(&self.poles, &self.h_residues, z))
    }

    pub fn g_prime(&self, z: Complex) -> Result<Complex> {
        self.check_poles(z)?;
        Ok(pole_sum(&self.poles, &self.g_residues, z))
    }

    /// `mu = g'/h'`.
    pub fn dilatation(&self, z: Complex) -> Result<Complex> {
        Ok(self.g_prime(z)? / self.h_prime(z)?)
    }

    /// `|h'|^2 - |g'|^2`.
    pub fn jacobian(&self, z: Complex) -> Result<f64> {
        Ok(self.h_prime(z)?.norm_sqr() - self.g_prime(z)?.norm_sqr())
    }

    pub fn h(&self, z: Complex) -> Result<Complex> {
        check_disk(z)?;
        Ok(self.h0 + log_sum(&self.poles, &self.h_residues, z))
    }

    pub fn g(&self, z: Complex) -> Result<Complex> {
        check_disk(z)?;
        Ok(self.g0 + log_sum(&self.poles, &self.g_residues, z))
    }

    /// `f(z) = h(z) + conj(g(z))` in the normalized frame.
    pub fn harmonic_map(&self, z: Complex) -> Result<Complex> {
        Ok(self.h(z)? + self.g(z)?.conj())
    }
}

fn check_disk(z: Complex) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    if z.norm() >= 1.0 {
        return Err(Error::OutsideDisk);
    }
    Ok(())
}

fn pole_sum(poles: &[Complex; 4], res: &[Complex; 4], z: Complex) -> Complex {
    poles.iter().zip(res).map(|(p, r)| r / (z - p)).sum()
}

fn log_sum(poles: &[Complex; 4], res: &[Complex; 4], z: Complex) -> Complex {
    poles
        .iter()
        .zip(res)
        .map(|(p, r)| r * (1.0 - z / p).ln())
        .sum()
}

/// The disk automorphism `phi(z) = (z - z0)/(1 - z conj(z0))`.
pub fn moebius(z: Complex, z0: Complex) -> Complex {
    (z - z0) / (1.0 - z * z0.conj())
}

/// `h'(z)` written directly in the vertices `b1..b4` of the normalized frame.
pub fn h_prime_vertex_form(q: Complex, b: &[Complex; 4], e_ip: Complex) -> Complex {
    let [b1, b2, b3, b4] = *b;
    let inner = (b2 - b3) / (e_ip - q)
        + (-(1.0 + q) * b1 + (1.0 + q) * b2 - (q - 1.0) * (b3 - b4)) / (q * q - 1.0)
        + (b1 - b4) / (e_ip + q);
    Complex::new(0.0, 1.0 / (2.0 * PI)) * inner
}

/// `g'(z)` in the vertices: `h'` with conjugated vertex values.
pub fn g_prime_vertex_form(q: Complex, b: &[Complex; 4], e_ip: Complex) -> Complex {
    let conj = [b[0].conj(), b[1].conj(), b[2].conj(), b[3].conj()];
    h_prime_vertex_form(q, &conj, e_ip)
}

/// `mu(0)` in the vertices of the normalized frame.
pub fn dilatation_at_zero_vertex_form(b: &[Complex; 4], e_ip: Complex) -> Result<Complex> {
    let [b1, b2, b3, b4] = *b;
    let c = |u: Complex| u.conj();
    let num = (e_ip + 1.0) * (c(b1) - c(b3)) + (1.0 - e_ip) * (c(b2) - c(b4));
    let den = (e_ip + 1.0) * (b1 - b3) + (1.0 - e_ip) * (b2 - b4);
    if den.norm() < 1e-14 {
        return Err(Error::DivisionDegenerate);
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::HyperbolicCoords;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup(m: f64, s: f64, t: f64) -> (ScherkData, AnalyticParts, [Complex; 4]) {
        let c = HyperbolicCoords::new(m, s, t);
        let d = ScherkData::new(c).unwrap();
        let parts = AnalyticParts::new(&d, c.z(), c.w());
        let one = Complex::new(1.0, 0.0);
        (d, parts, [-one, c.z(), one, c.w()])
    }

    fn disk_point(rng: &mut ChaCha8Rng, r_max: f64) -> Complex {
        let r = r_max * rng.gen::<f64>().sqrt();
        Complex::from_polar(r, rng.gen_range(0.0..2.0 * PI))
    }

    #[test]
    fn reference_centers() {
        let (_, parts, _) = setup(0.3, 1.0, 0.3);
        let c0 = parts.harmonic_map(Complex::default()).unwrap();
        assert!((c0 - Complex::new(0.29893, 0.55245)).norm() < 1e-5);
        let (_, parts, _) = setup(0.3, 1.0, -0.3);
        assert!((parts.h0 - Complex::new(0.234, 0.255)).norm() < 1e-3);
    }

    #[test]
    fn symmetric_center_is_real() {
        let (_, parts, _) = setup(0.7, 0.9, -0.9);
        assert!(parts.h0.im.abs() < 1e-15);
    }

    #[test]
    fn residues_sum_to_zero() {
        let (_, parts, _) = setup(0.3, 1.0, 0.3);
        let sh: Complex = parts.h_residues.iter().sum();
        let sg: Complex = parts.g_residues.iter().sum();
        assert!(sh.norm() < 1e-15 && sg.norm() < 1e-15);
    }

    #[test]
    fn h_prime_at_zero_matches_constants() {
        let (d, parts, b) = setup(0.3, 1.0, 0.3);
        let h0 = parts.h_prime(Complex::default()).unwrap();
        assert!((h0 - d.b / d.e_2ip()).norm() < 1e-14);
        assert!((h0 - crate::params::h_prime_at_zero(&d.coords)).norm() < 1e-14);
        let q = Complex::new(0.2, 0.1);
        assert!((parts.h_prime(q).unwrap() - h_prime_vertex_form(q, &b, d.e_ip)).norm() < 1e-14);
        assert!((parts.g_prime(q).unwrap() - g_prime_vertex_form(q, &b, d.e_ip)).norm() < 1e-14);
    }

    #[test]
    fn dilatation_at_zero() {
        let (d, parts, b) = setup(0.3, 1.0, 0.3);
        let mu0 = parts.dilatation(Complex::default()).unwrap();
        assert!((mu0 - d.x * d.z0 * d.z0).norm() < 1e-14);
        assert!((mu0 - dilatation_at_zero_vertex_form(&b, d.e_ip).unwrap()).norm() < 1e-14);
        assert!(parts.dilatation(d.z0).unwrap().norm() < 1e-14);
        assert!((parts.jacobian(d.z0).unwrap() - parts.h_prime(d.z0).unwrap().norm_sqr()).abs() < 1e-14);
    }

    #[test]
    fn dilatation_is_squared_automorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (m, s, t) in [(0.3, 1.0, 0.3), (0.3, 1.0, -0.3), (1.3, 2.5, -1.0), (0.0, 0.5, -0.5)] {
            let (d, parts, _) = setup(m, s, t);
            for _ in 0..200 {
                let z = disk_point(&mut rng, 0.999);
                let mu = parts.dilatation(z).unwrap();
                let phi = moebius(z, d.z0);
                let expect = d.x * phi * phi;
                assert!((mu - expect).norm() <= 1e-10 * expect.norm().max(1e-3));
                assert!(mu.norm() < 1.0);
            }
        }
    }

    #[test]
    fn h_prime_nonvanishing_on_grid() {
        let (_, parts, _) = setup(0.3, 1.0, 0.3);
        let mut min_h: f64 = f64::INFINITY;
        let mut min_j: f64 = f64::INFINITY;
        for i in 0..100 {
            for k in 0..100 {
                let z = Complex::from_polar(0.999 * (i as f64 + 0.5) / 100.0, 2.0 * PI * k as f64 / 100.0);
                min_h = min_h.min(parts.h_prime(z).unwrap().norm());
                min_j = min_j.min(parts.jacobian(z).unwrap());
            }
        }
        assert!(min_h > 0.0 && min_j > 0.0);
    }

    #[test]
    fn radial_limits_hit_vertices() {
        let (d, parts, b) = setup(0.3, 1.0, 0.3);
        let p = d.p;
        let mids = [(0.5 * p, b[1]), (0.5 * (p + PI), b[2]), (PI + 0.5 * p, b[3]), (1.5 * PI + 0.5 * p, b[0])];
        for (theta, vertex) in mids {
            let f = parts.harmonic_map(Complex::from_polar(1.0 - 1e-6, theta)).unwrap();
            assert!((f - vertex).norm() < 1e-3, "{theta}: {f} vs {vertex}");
        }
    }

    #[test]
    fn errors() {
        let (d, parts, _) = setup(0.3, 1.0, 0.3);
        assert_eq!(parts.h_prime(d.e_ip), Err(Error::PoleProximity));
        assert_eq!(parts.g_prime(Complex::new(-1.0, 1e-12)), Err(Error::PoleProximity));
        assert_eq!(parts.harmonic_map(Complex::new(1.0, 0.0)), Err(Error::OutsideDisk));
        assert_eq!(parts.h(Complex::new(f64::NAN, 0.0)), Err(Error::NonFinite));
    }

    #[test]
    fn step_boundary_lookup() {
        let z = Complex::new(0.2, 0.4);
        let w = Complex::new(0.3, 0.9);
        let sb = StepBoundary::new(2.0, z, w);
        assert_eq!(sb.value_at(0.0), z);
        assert_eq!(sb.value_at(2.5), Complex::new(1.0, 0.0));
        assert_eq!(sb.value_at(PI + 1.0), w);
        assert_eq!(sb.value_at(-0.1), Complex::new(-1.0, 0.0));
        assert_eq!(StepBoundary::constant(z).mean(), z);
    }
}
