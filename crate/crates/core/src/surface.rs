use crate::analysis::{self, CenterReport};
use crate::geometry::{
    construct_quad, hyperbolic_coordinates, normalize, validate_quadrilateral, HyperbolicCoords,
    NormalizedFrame, PitotQuad,
};
use crate::harmonic::{AnalyticParts, StepBoundary};
use crate::params::ScherkData;
use crate::weierstrass::{self, AsymptoticConstants, HeightKernel};
use crate::{Complex, Result};

/// A Scherk-type minimal graph over a Pitot quadrilateral, with everything
/// precomputed for evaluation.
///
/// Points of the unit disk parametrize the surface. Unless a method says
/// otherwise, values are in the normalized frame (`b1 = -1`, `b3 = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScherkSurface {
    pub quad: PitotQuad,
    pub frame: NormalizedFrame,
    pub coords: HyperbolicCoords,
    pub data: ScherkData,
    pub parts: AnalyticParts,
    pub kernel: HeightKernel,
}

impl ScherkSurface {
    /// The surface over `Q(-1, h(t), 1, h(s))`.
    pub fn from_params(m: f64, s: f64, t: f64) -> Result<ScherkSurface> {
        Self::from_quad(construct_quad(m, s, t)?)
    }

    pub fn from_vertices(vertices: [Complex; 4], tol_pitot: f64) -> Result<ScherkSurface> {
        Self::from_quad(validate_quadrilateral(vertices, tol_pitot)?)
    }

    pub fn from_quad(quad: PitotQuad) -> Result<ScherkSurface> {
        let frame = normalize(&quad);
        let coords = hyperbolic_coordinates(frame.z, frame.w)?;
        let data = ScherkData::new(coords)?;
        let parts = AnalyticParts::new(&data, frame.z, frame.w);
        Ok(ScherkSurface {
            quad,
            frame,
            coords,
            data,
            parts,
            kernel: HeightKernel::new(&data),
        })
    }

    /// `[-1, z, 1, w]`.
    pub fn normalized_vertices(&self) -> [Complex; 4] {
        let one = Complex::new(1.0, 0.0);
        [-one, self.frame.z, one, self.frame.w]
    }

    pub fn boundary(&self) -> StepBoundary {
        StepBoundary::new(self.data.p, self.frame.z, self.frame.w)
    }

    /// `c0 = f(0)` in original coordinates.
    pub fn harmonic_center(&self) -> Complex {
        self.frame.to_original(self.parts.h0)
    }

    /// `f(z)` in original coordinates.
    pub fn harmonic_map(&self, z: Complex) -> Result<Complex> {
        Ok(self.frame.to_original(self.parts.harmonic_map(z)?))
    }

    /// Normalized height `T(z)`.
    pub fn height(&self, z: Complex) -> Result<f64> {
        self.kernel.height(z)
    }

    /// `(Re f, Im f, T)` in the normalized frame.
    pub fn surface_point_normalized(&self, z: Complex) -> Result<[f64; 3]> {
        let f = self.parts.harmonic_map(z)?;
        Ok([f.re, f.im, self.kernel.height(z)?])
    }

    /// `(Re f, Im f, T)` over the original quadrilateral; all three
    /// coordinates are scaled by `|b3 - b1|/2`.
    pub fn surface_point(&self, z: Complex) -> Result<[f64; 3]> {
        let f = self.harmonic_map(z)?;
        Ok([f.re, f.im, self.frame.length_scale() * self.kernel.height(z)?])
    }

    pub fn gauss_map(&self, z: Complex) -> Complex {
        weierstrass::gauss_map_q(z, &self.data)
    }

    /// Gaussian curvature of the normalized surface at the image of `z`.
    pub fn gauss_curvature(&self, z: Complex) -> Result<f64> {
        analysis::gauss_curvature(z, &self.data, &self.parts)
    }

    /// Gaussian curvature of the de-normalized surface.
    pub fn gauss_curvature_original(&self, z: Complex) -> Result<f64> {
        let l = self.frame.length_scale();
        Ok(self.gauss_curvature(z)? / (l * l))
    }

    pub fn asymptotic_constants(&self) -> AsymptoticConstants {
        AsymptoticConstants::new(&self.data)
    }

    pub fn center_report(&self) -> Result<CenterReport> {
        CenterReport::new(self)
    }
}
