//! Quadrilateral validation, the normalizing similarity and hyperbolic
//! coordinates of the two free vertices.
//!
//! The similarity `T(u) = 2(u - (b1 + b3)/2) / (b3 - b1)` sends the focal pair
//! `b1, b3` to `-1, 1`. The Pitot condition then says that `z = T(b2)` and
//! `w = T(b4)` lie on one branch of a hyperbola with foci `-1, 1`, and we write
//!
//! ```text
//! z = sin m cosh t + i cos m sinh t,    w = sin m cosh s + i cos m sinh s.
//! ```

use crate::prelude::*;

/// Relative Pitot tolerance (multiplied by the perimeter).
pub const DEFAULT_PITOT_TOL: f64 = 1e-9;
/// Below this `cos m` the hyperbola has collapsed onto the real axis.
pub const RIGHT_ANGLE_TOL: f64 = 1e-8;
/// Minimal separation `|s - t|`.
pub const RAPIDITY_TOL: f64 = 1e-9;
/// Allowed mismatch of `sin^2 m` computed from `z` and from `w`.
pub const HYPERBOLA_TOL: f64 = 1e-6;

/// A complex-affine similarity `u -> scale * (u - shift)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    pub scale: Complex,
    pub shift: Complex,
}

impl Similarity {
    pub const IDENTITY: Similarity = Similarity {
        scale: Complex::new(1.0, 0.0),
        shift: Complex::new(0.0, 0.0),
    };

    pub fn apply(&self, u: Complex) -> Complex {
        self.scale * (u - self.shift)
    }

    pub fn inverse(&self) -> Similarity {
        Similarity {
            scale: self.scale.inv(),
            shift: -self.shift * self.scale,
        }
    }

    /// Linear stretch factor `|scale|`.
    pub fn dilation(&self) -> f64 {
        self.scale.norm()
    }
}

/// A validated, counterclockwise Pitot quadrilateral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PitotQuad {
    pub vertices: [Complex; 4],
    /// `|b1b2| + |b3b4| - |b2b3| - |b4b1|` of the stored vertex order.
    pub pitot_residual: f64,
    /// True when the input was clockwise and has been reversed to
    /// `(b1, b4, b3, b2)`.
    pub reversed: bool,
}

impl PitotQuad {
    pub fn perimeter(&self) -> f64 {
        perimeter(&self.vertices)
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Whether `point` lies in the closed polygon, with slack `tol` measured
    /// as distance to the boundary.
    pub fn contains(&self, point: Complex, tol: f64) -> bool {
        let v = &self.vertices;
        let mut winding = 0i32;
        for i in 0..4 {
            let a = v[i];
            let b = v[(i + 1) % 4];
            if distance_to_segment(point, a, b) <= tol {
                return true;
            }
            if a.im <= point.im {
                if b.im > point.im && cross(b - a, point - a) > 0.0 {
                    winding += 1;
                }
            } else if b.im <= point.im && cross(b - a, point - a) < 0.0 {
                winding -= 1;
            }
        }
        winding != 0
    }
}

/// The normalizing similarity together with the images of the free vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedFrame {
    /// `T`, with `T(b1) = -1` and `T(b3) = 1`.
    pub similarity: Similarity,
    /// `T(b2)`.
    pub z: Complex,
    /// `T(b4)`.
    pub w: Complex,
    /// Vertices in the label order the frame uses (original coordinates).
    pub vertices: [Complex; 4],
    /// True when labels were shifted by two, `(b3, b4, b1, b2)`, to put the
    /// free vertices on the right hyperbola branch.
    pub relabeled: bool,
}

impl NormalizedFrame {
    pub fn inverse(&self) -> Similarity {
        self.similarity.inverse()
    }

    /// `|b1 - b3|` in original coordinates.
    pub fn focal_distance(&self) -> f64 {
        (self.vertices[0] - self.vertices[2]).norm()
    }

    /// Maps a point of the normalized plane back to original coordinates.
    pub fn to_original(&self, u: Complex) -> Complex {
        self.inverse().apply(u)
    }

    /// Factor by which normalized lengths (including heights) grow when
    /// mapped back, `|b3 - b1| / 2`.
    pub fn length_scale(&self) -> f64 {
        self.similarity.dilation().recip()
    }
}

/// Hyperbolic coordinates of the normalized free vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicCoords {
    /// Angle with `sin m = (|z+1| - |z-1|)/2`, in `[0, pi/2)`.
    pub m: f64,
    /// Rapidity of `w`.
    pub s: f64,
    /// Rapidity of `z`.
    pub t: f64,
    /// `(s - t)/2`.
    pub j: f64,
    /// `(s + t)/2`.
    pub k: f64,
}

impl HyperbolicCoords {
    pub fn new(m: f64, s: f64, t: f64) -> HyperbolicCoords {
        HyperbolicCoords {
            m,
            s,
            t,
            j: 0.5 * (s - t),
            k: 0.5 * (s + t),
        }
    }

    pub fn z(&self) -> Complex {
        hyperbola_point(self.m, self.t)
    }

    pub fn w(&self) -> Complex {
        hyperbola_point(self.m, self.s)
    }
}

/// Checks the four vertices and returns them counterclockwise.
pub fn validate_quadrilateral(vertices: [Complex; 4], tol_pitot: f64) -> Result<PitotQuad> {
    if vertices.iter().any(|b| !b.re.is_finite() || !b.im.is_finite()) || !tol_pitot.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut diameter = 0.0f64;
    for i in 0..4 {
        for k in i + 1..4 {
            diameter = diameter.max((vertices[i] - vertices[k]).norm());
        }
    }
    for i in 0..4 {
        for k in i + 1..4 {
            if (vertices[i] - vertices[k]).norm() <= 1e-12 * diameter || diameter == 0.0 {
                return Err(Error::DegenerateVertices);
            }
        }
    }
    if segments_intersect(vertices[0], vertices[1], vertices[2], vertices[3])
        || segments_intersect(vertices[1], vertices[2], vertices[3], vertices[0])
    {
        return Err(Error::SelfIntersecting);
    }
    let per = perimeter(&vertices);
    let area = signed_area(&vertices);
    if area.abs() <= 1e-12 * per * per {
        return Err(Error::ZeroArea);
    }
    let (vertices, reversed) = if area < 0.0 {
        ([vertices[0], vertices[3], vertices[2], vertices[1]], true)
    } else {
        (vertices, false)
    };
    let residual = pitot_residual(&vertices);
    let tolerance = tol_pitot * per;
    if residual.abs() > tolerance {
        return Err(Error::NotPitot {
            residual,
            tolerance,
        });
    }
    Ok(PitotQuad {
        vertices,
        pitot_residual: residual,
        reversed,
    })
}

/// `|b1b2| + |b3b4| - |b2b3| - |b4b1|`.
pub fn pitot_residual(b: &[Complex; 4]) -> f64 {
    (b[0] - b[1]).norm() + (b[2] - b[3]).norm() - (b[1] - b[2]).norm() - (b[3] - b[0]).norm()
}

/// Builds the normalizing frame. When the free vertices sit on the left
/// branch (nearer `b1`), the labels are shifted by two first.
pub fn normalize(q: &PitotQuad) -> NormalizedFrame {
    let frame = frame_for(q.vertices, false);
    if branch_sign(frame.z) + branch_sign(frame.w) < 0.0 {
        let [b1, b2, b3, b4] = q.vertices;
        frame_for([b3, b4, b1, b2], true)
    } else {
        frame
    }
}

fn frame_for(vertices: [Complex; 4], relabeled: bool) -> NormalizedFrame {
    let [b1, b2, b3, b4] = vertices;
    let similarity = Similarity {
        scale: Complex::new(2.0, 0.0) / (b3 - b1),
        shift: (b1 + b3) * 0.5,
    };
    NormalizedFrame {
        similarity,
        z: similarity.apply(b2),
        w: similarity.apply(b4),
        vertices,
        relabeled,
    }
}

/// `(|u+1| - |u-1|)/2`.
fn branch_sign(u: Complex) -> f64 {
    0.5 * ((u + 1.0).norm() - (u - 1.0).norm())
}

/// `(sin^2 m, cos^2 m)` of the focal hyperbola through `u`, computed without
/// cancellation.
fn hyperbola_angle_squares(u: Complex) -> (f64, f64) {
    let r2 = u.norm_sqr();
    let sum = 1.0 + r2;
    let disc = (sum * sum - 4.0 * u.re * u.re).max(0.0).sqrt();
    let sin2 = if sum + disc > 0.0 {
        2.0 * u.re * u.re / (sum + disc)
    } else {
        0.0
    };
    let diff = r2 - 1.0;
    let disc_c = (diff * diff + 4.0 * u.im * u.im).sqrt();
    let cos2 = if diff > 0.0 {
        2.0 * u.im * u.im / (diff + disc_c)
    } else {
        0.5 * (disc_c - diff)
    };
    (sin2, cos2)
}

/// Hyperbolic coordinates `(m, s, t)` with `w = h(s)`, `z = h(t)`.
pub fn hyperbolic_coordinates(z: Complex, w: Complex) -> Result<HyperbolicCoords> {
    if !(z.re.is_finite() && z.im.is_finite() && w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let (sz, cz) = hyperbola_angle_squares(z);
    let (sw, cw) = hyperbola_angle_squares(w);
    let mismatch = (sz.sqrt() - sw.sqrt()).abs();
    let side = branch_sign(z) + branch_sign(w);
    if mismatch > HYPERBOLA_TOL * (1.0 + z.norm().max(w.norm())) {
        return Err(Error::NotOnCommonHyperbola { mismatch });
    }
    if side < -HYPERBOLA_TOL {
        return Err(Error::LeftBranch);
    }
    let sin_m = (0.5 * (sz + sw)).sqrt();
    let cos_m = (0.5 * (cz + cw)).sqrt();
    let norm = sin_m.hypot(cos_m);
    let (sin_m, cos_m) = (sin_m / norm, cos_m / norm);
    if cos_m < RIGHT_ANGLE_TOL {
        return Err(Error::DegenerateRightAngle);
    }
    let m = sin_m.atan2(cos_m);
    let t = (z.im / cos_m).asinh();
    let s = (w.im / cos_m).asinh();
    if (s - t).abs() < RAPIDITY_TOL {
        return Err(Error::EqualRapidities);
    }
    Ok(HyperbolicCoords::new(m, s, t))
}

/// `sin m cosh tau + i cos m sinh tau`.
pub fn hyperbola_point(m: f64, tau: f64) -> Complex {
    Complex::new(m.sin() * tau.cosh(), m.cos() * tau.sinh())
}

/// The normalized quadrilateral `Q(-1, h(t), 1, h(s))`, reordered to be
/// counterclockwise when `s < t`.
pub fn construct_quad(m: f64, s: f64, t: f64) -> Result<PitotQuad> {
    if !(m.is_finite() && s.is_finite() && t.is_finite()) {
        return Err(Error::NonFinite);
    }
    if (s - t).abs() < RAPIDITY_TOL {
        return Err(Error::EqualRapidities);
    }
    if m.cos() < RIGHT_ANGLE_TOL || m < 0.0 {
        return Err(Error::DegenerateRightAngle);
    }
    let one = Complex::new(1.0, 0.0);
    validate_quadrilateral(
        [-one, hyperbola_point(m, t), one, hyperbola_point(m, s)],
        DEFAULT_PITOT_TOL,
    )
}

pub(crate) fn perimeter(b: &[Complex; 4]) -> f64 {
    (0..4).map(|i| (b[i] - b[(i + 1) % 4]).norm()).sum()
}

pub(crate) fn signed_area(b: &[Complex; 4]) -> f64 {
    0.5 * (0..4).map(|i| cross(b[i], b[(i + 1) % 4])).sum::<f64>()
}

fn cross(a: Complex, b: Complex) -> f64 {
    a.re * b.im - a.im * b.re
}

fn distance_to_segment(p: Complex, a: Complex, b: Complex) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    let tau = if len2 > 0.0 {
        ((p - a).re * d.re + (p - a).im * d.im) / len2
    } else {
        0.0
    };
    (p - (a + d * tau.clamp(0.0, 1.0))).norm()
}

fn segments_intersect(a: Complex, b: Complex, c: Complex, d: Complex) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: Complex, q: Complex, r: Complex, o: f64| {
        o == 0.0
            && r.re >= p.re.min(q.re)
            && r.re <= p.re.max(q.re)
            && r.im >= p.im.min(q.im)
            && r.im <= p.im.max(q.im)
    };
    on(a, b, c, d1) || on(a, b, d, d2) || on(c, d, a, d3) || on(c, d, b, d4)
}
