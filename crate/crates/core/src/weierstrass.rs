//! Weierstrass data `(h', q)` with the Möbius Gauss map
//! `q(z) = sqrt(X) (z - z0)/(1 - z conj(z0))`, the kernel `K = h' q`, and the
//! height `T(z) = 2 Im int_0^z K`.
use core::f64::consts::PI;


use crate::prelude::*;
use crate::harmonic::{moebius, POLE_TOL};
use crate::params::ScherkData;

pub fn gauss_map_q(z: Complex, d: &ScherkData) -> Complex {
    d.sqrt_x * moebius(z, d.z0)
}

/// `q'(z) = sqrt(X) (1 - |z0|^2)/(1 - z conj(z0))^2`.
pub fn q_prime(z: Complex, d: &ScherkData) -> Complex {
    let den = 1.0 - z * d.z0.conj();
    d.sqrt_x * (1.0 - d.z0.norm_sqr()) / (den * den)
}

/// `K(z) = C (z - z0)(1 - z conj(z0)) / ((1 - z^2)(e^{2ip} - z^2))`.
pub fn kernel_k(z: Complex, d: &ScherkData) -> Result<Complex> {
    let e2 = d.e_2ip();
    let poles = [Complex::new(1.0, 0.0), d.e_ip, Complex::new(-1.0, 0.0), -d.e_ip];
    if poles.iter().any(|p| (z - p).norm() < POLE_TOL) {
        return Err(Error::PoleProximity);
    }
    let z2 = z * z;
    Ok(d.c * (z - d.z0) * (1.0 - z * d.z0.conj()) / ((1.0 - z2) * (e2 - z2)))
}

/// Partial fractions of `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeightKernel {
    pub c: Complex,
    pub z0: Complex,
    pub e_2ip: Complex,
    /// `[1, e^{ip}, -1, -e^{ip}]`.
    pub poles: [Complex; 4],
    pub residues: [Complex; 4],
}

impl HeightKernel {
    /// Residues `C N(P) / D'(P)` of the rational kernel.
    pub fn new(d: &ScherkData) -> HeightKernel {
        let e2 = d.e_2ip();
        let poles = [Complex::new(1.0, 0.0), d.e_ip, Complex::new(-1.0, 0.0), -d.e_ip];
        let residues = poles.map(|p| {
            let numer = d.c * (p - d.z0) * (1.0 - p * d.z0.conj());
            let dden = -2.0 * p * (e2 - p * p) - 2.0 * p * (1.0 - p * p);
            numer / dden
        });
        HeightKernel {
            c: d.c,
            z0: d.z0,
            e_2ip: e2,
            poles,
            residues,
        }
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.poles
            .iter()
            .zip(&self.residues)
            .map(|(p, r)| r / (z - p))
            .sum()
    }

    /// `T(z) = 2 Im sum R_j Log(1 - z/P_j)`; defined for `|z| < 1`.
    pub fn height(&self, z: Complex) -> Result<f64> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if z.norm() >= 1.0 {
            return Err(Error::OutsideDisk);
        }
        let sum: Complex = self
            .poles
            .iter()
            .zip(&self.residues)
            .map(|(p, r)| r * (1.0 - z / p).ln())
            .sum();
        Ok(2.0 * sum.im)
    }
}

/// `T(z)` for the data `d`.
pub fn height_t(z: Complex, d: &ScherkData) -> Result<f64> {
    HeightKernel::new(d).height(z)
}

/// Logarithmic rates `C_j = Lambda * |1 -+ z0 e^{-i phase}|^2` at the poles
/// `1, e^{ip}, -1, -e^{ip}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    pub lambda: f64,
    pub c: [f64; 4],
}

impl AsymptoticConstants {
    /// `Lambda = cosh j (cos m + cosh k)/(4 pi)`. With this value the
    /// residues of `K` are `+i C_j` at `+-1` and `-i C_j` at `+-e^{ip}`, and
    /// `T(r P_j) ~ +-2 C_j log(1 - r)`.
    pub fn new(d: &ScherkData) -> AsymptoticConstants {
        let c = &d.coords;
        Self::with_lambda(d, c.j.cosh() * (c.m.cos() + c.k.cosh()) / (4.0 * PI))
    }

    /// The variant normalization `cosh j (cos m + cosh k)/(4 pi sin p)`.
    pub fn over_sin_p(d: &ScherkData) -> AsymptoticConstants {
        let c = &d.coords;
        Self::with_lambda(
            d,
            c.j.cosh() * (c.m.cos() + c.k.cosh()) / (4.0 * PI * d.p.sin()),
        )
    }

    fn with_lambda(d: &ScherkData, lambda: f64) -> AsymptoticConstants {
        let rot = d.z0 * d.e_ip.conj();
        let moduli = [
            (1.0 - d.z0).norm_sqr(),
            (1.0 - rot).norm_sqr(),
            (1.0 + d.z0).norm_sqr(),
            (1.0 + rot).norm_sqr(),
        ];
        AsymptoticConstants {
            lambda,
            c: moduli.map(|x| lambda * x),
        }
    }

    /// `+i C_1, -i C_2, +i C_3, -i C_4`.
    pub fn residues(&self) -> [Complex; 4] {
        let [c1, c2, c3, c4] = self.c;
        [
            Complex::new(0.0, c1),
            Complex::new(0.0, -c2),
            Complex::new(0.0, c3),
            Complex::new(0.0, -c4),
        ]
    }

    /// Expected slope of `T(r P_j)` against `log(1 - r)`.
    pub fn slopes(&self) -> [f64; 4] {
        let [c1, c2, c3, c4] = self.c;
        [2.0 * c1, -2.0 * c2, 2.0 * c3, -2.0 * c4]
    }
}
