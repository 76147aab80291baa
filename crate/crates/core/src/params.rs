//! The angle parameter `p`, the Möbius center `z0`, the unimodular factor `X`
//! and the Weierstrass constants `B, Z, A, C`.
//!
//! Each constant has a closed form in `(m, s, t)`. The vertex-based forms
//! (in the normalized coordinates `z = x + iy`, `w = u + iv`) are kept next to
//! them as cross-checks.
use core::f64::consts::PI;


use crate::prelude::*;
use crate::geometry::HyperbolicCoords;
use crate::I;

/// Everything needed to evaluate the Weierstrass data and the height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScherkData {
    pub coords: HyperbolicCoords,
    /// Arc parameter in `(0, pi)`.
    pub p: f64,
    pub e_ip: Complex,
    /// Zero of the dilatation, `|z0| < 1`.
    pub z0: Complex,
    /// Unimodular factor of the dilatation `g'/h' = X phi^2`.
    pub x: Complex,
    /// The square root of `X` selected by the residue sign rule.
    pub sqrt_x: Complex,
    /// `h'(z) = B (1 - z conj(z0))^2 / ((1 - z^2)(e^{2ip} - z^2))`.
    pub b: Complex,
    /// Scaling factor with `A = B Z`; equal to `X`.
    pub z_scale: Complex,
    /// `g'(z) = A (z - z0)^2 / ((1 - z^2)(e^{2ip} - z^2))`.
    pub a: Complex,
    /// `K(z) = C (z - z0)(1 - z conj(z0)) / ((1 - z^2)(e^{2ip} - z^2))`.
    pub c: Complex,
}

impl ScherkData {
    /// Requires `s > t` (counterclockwise normalized quadrilateral).
    pub fn new(coords: HyperbolicCoords) -> Result<ScherkData> {
        if coords.j <= 0.0 {
            return Err(if coords.j == 0.0 {
                Error::EqualRapidities
            } else {
                Error::ClockwiseRapidities
            });
        }
        let (p, e_ip) = angle_parameter(&coords)?;
        let z0 = moebius_center(&coords);
        let (x, mut sqrt_x) = unimodular_factor(&coords);
        let (b, z_scale, a, mut c) = weierstrass_constants(&coords, e_ip, sqrt_x);
        // Residue of K at z = 1 must be +i * (positive).
        let e2ip = e_ip * e_ip;
        let res1 = -c * (1.0 - z0).norm_sqr() / (2.0 * (e2ip - 1.0));
        if res1.im < 0.0 {
            sqrt_x = -sqrt_x;
            c = -c;
        }
        Ok(ScherkData {
            coords,
            p,
            e_ip,
            z0,
            x,
            sqrt_x,
            b,
            z_scale,
            a,
            c,
        })
    }

    pub fn e_2ip(&self) -> Complex {
        self.e_ip * self.e_ip
    }
}

/// `E = cos p = 1 - 4/(1 + cosh(s - t))`.
pub fn cos_p(c: &HyperbolicCoords) -> f64 {
    1.0 - 4.0 / (1.0 + (c.s - c.t).cosh())
}

/// `p = arccos E` and `e^{ip}` with `sin p > 0`.
///
/// With `j = (s - t)/2`: `cos p = 1 - 2 sech^2 j` and `sin p = 2 tanh|j| sech j`,
/// which avoids the loss of precision of `arccos` near `p = 0`.
pub fn angle_parameter(c: &HyperbolicCoords) -> Result<(f64, Complex)> {
    let j = c.j.abs();
    if j < 0.5 * crate::geometry::RAPIDITY_TOL {
        return Err(Error::EqualRapidities);
    }
    let sech = j.cosh().recip();
    let cos_p = 1.0 - 2.0 * sech * sech;
    let sin_p = 2.0 * j.tanh() * sech;
    if sin_p <= 0.0 {
        return Err(Error::EqualRapidities);
    }
    Ok((sin_p.atan2(cos_p), Complex::new(cos_p, sin_p)))
}

/// `e^{ip} = (i + e^j)^2 / (i - e^j)^2`.
pub fn e_ip_ratio(j: f64) -> Complex {
    let ej = Complex::new(j.exp(), 0.0);
    let num = I + ej;
    let den = I - ej;
    (num * num) / (den * den)
}

/// Vertex form `E = (uv - 3vx - 3uy + xy) / ((u + x)(v + y))`.
pub fn vertex_form_e(z: Complex, w: Complex) -> Result<f64> {
    let (x, y, u, v) = (z.re, z.im, w.re, w.im);
    let den = (u + x) * (v + y);
    let scale = (1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr());
    if den.abs() <= 1e-12 * scale {
        return Err(Error::DivisionDegenerate);
    }
    Ok((u * v - 3.0 * v * x - 3.0 * u * y + x * y) / den)
}

/// `cos p = -1 - B/(2A)` from the side coefficients of the trigonometric
/// equation `A cos 2p + B cos p + C = 0`, for vertices `b1..b4`.
pub fn cos_p_from_side_coefficients(b: &[Complex; 4]) -> Result<f64> {
    let (u1, u2, u3, u4) = (b[0].re, b[1].re, b[2].re, b[3].re);
    let (v1, v2, v3, v4) = (b[0].im, b[1].im, b[2].im, b[3].im);
    let a = 2.0 * (u1 - u2 + u3 - u4) * (v1 - v2 + v3 - v4);
    let bb = 4.0
        * ((u1 + u2 - u3 - u4) * (v1 - v2 - v3 + v4) + (u1 - u2 - u3 + u4) * (v1 + v2 - v3 - v4));
    let scale: f64 = b.iter().map(|x| x.norm_sqr()).sum();
    if a.abs() <= 1e-12 * scale {
        return Err(Error::DivisionDegenerate);
    }
    Ok(-1.0 - bb / (2.0 * a))
}

/// Closed form of the Möbius center for `m` in `[0, pi/2]`:
///
/// `z0 = (e^{s/2} + i e^{t/2})(e^{im + k} - 1) / ((e^{s/2} - i e^{t/2})(e^{im + k} + 1))`.
pub fn moebius_center(c: &HyperbolicCoords) -> Complex {
    let es = (0.5 * c.s).exp();
    let et = (0.5 * c.t).exp();
    let ek = Complex::from_polar(c.k.exp(), c.m);
    let first = Complex::new(es, et) / Complex::new(es, -et);
    first * (ek - 1.0) / (ek + 1.0)
}

/// `(cosh k - cos m)/(cosh k + cos m)`, which equals `|z0|^2`.
pub fn center_modulus_ratio(c: &HyperbolicCoords) -> f64 {
    let (ck, cm) = (c.k.cosh(), c.m.cos().abs());
    (ck - cm) / (ck + cm)
}

/// Vertex form of `z0` in the normalized frame.
pub fn moebius_center_vertex_form(z: Complex, w: Complex, e_ip: Complex) -> Result<Complex> {
    let (x, y, u, v) = (z.re, z.im, w.re, w.im);
    let sin_p = e_ip.im;
    let num = I * e_ip * sin_p * Complex::new(-(x + u), y + v);
    let den = Complex::new(u - x - 2.0, y - v) + e_ip * Complex::new(x - u - 2.0, v - y);
    if den.norm() <= 1e-14 {
        return Err(Error::DivisionDegenerate);
    }
    Ok(num / den)
}

/// `X` and its closed-form square root
///
/// `sqrt X = (i e^{s/2} + e^{t/2})(1 + e^{im + k}) / ((e^{s/2} + i e^{t/2})(e^{im} + e^k))`.
pub fn unimodular_factor(c: &HyperbolicCoords) -> (Complex, Complex) {
    let es = (0.5 * c.s).exp();
    let et = (0.5 * c.t).exp();
    let eim = Complex::from_polar(1.0, c.m);
    let ek = c.k.exp();
    let root = Complex::new(et, es) / Complex::new(es, et) * (1.0 + eim * ek) / (eim + ek);
    (root * root, root)
}

/// Vertex form of `X` in the normalized frame (half-angle display).
pub fn unimodular_factor_vertex_form(z: Complex, w: Complex, p: f64) -> Result<Complex> {
    let (x, y, u, v) = (z.re, z.im, w.re, w.im);
    let (ch, sh) = ((0.5 * p).cos(), (0.5 * p).sin());
    let two_c = Complex::new(2.0 * ch, 0.0);
    let f1 = two_c + Complex::new(v - y, u - x) * sh;
    let f2 = two_c + Complex::new(-v + y, -u + x) * sh;
    let f3 = two_c + Complex::new(v - y, -u + x) * sh;
    let base = Complex::new(u + x, -(v + y));
    let den = base * base * f3;
    if den.norm() <= 1e-14 {
        return Err(Error::DivisionDegenerate);
    }
    let pref = -4.0 * Complex::from_polar(1.0, -p) / (p.sin() * p.sin());
    Ok(pref * f1 * f1 * f2 / den)
}

/// `h'(0)` in closed form:
/// `(-2i + (-2 - sin(m + is) + sin(m + it)) / (i + sinh j)) / pi`.
pub fn h_prime_at_zero(c: &HyperbolicCoords) -> Complex {
    let sin_s = Complex::new(c.m, c.s).sin();
    let sin_t = Complex::new(c.m, c.t).sin();
    let inner = (-2.0 - sin_s + sin_t) / Complex::new(c.j.sinh(), 1.0);
    (Complex::new(0.0, -2.0) + inner) / PI
}

/// `(B, Z, A, C)` with `B = e^{2ip} h'(0)`, `Z = X`, `A = BZ`, `C = B sqrt X`.
pub fn weierstrass_constants(
    c: &HyperbolicCoords,
    e_ip: Complex,
    sqrt_x: Complex,
) -> (Complex, Complex, Complex, Complex) {
    let b = e_ip * e_ip * h_prime_at_zero(c);
    let z_scale = sqrt_x * sqrt_x;
    (b, z_scale, b * z_scale, b * sqrt_x)
}

/// Compact display of `C`,
/// `2i(1 - e^{2j})(cosh k + cos m) / (pi (1 + i e^j)^2)`.
///
/// It differs from `B sqrt X` by the phase `i e^{-ip/2}`; kept for reporting.
pub fn compact_c(c: &HyperbolicCoords) -> Complex {
    let den = Complex::new(1.0, c.j.exp());
    Complex::new(0.0, 2.0) * (1.0 - (2.0 * c.j).exp()) * (c.k.cosh() + c.m.cos())
        / (PI * den * den)
}

/// Right-hand side of the key identity in its single-factor form,
/// `-i cosh j (cos m + cosh k) / (4 pi)`.
///
/// The constant `C = B sqrt X` satisfies `C/(e^{2ip} - 1) = 2 * rhs`.
pub fn key_identity_rhs(c: &HyperbolicCoords) -> Complex {
    Complex::new(0.0, -c.j.cosh() * (c.m.cos() + c.k.cosh()) / (4.0 * PI))
}
