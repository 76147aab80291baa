//! Explicit Scherk-type minimal graphs over Pitot quadrilaterals.
//!
//! A quadrilateral `Q(b1, b2, b3, b4)` whose opposite sides have equal total
//! length carries a harmonic diffeomorphism `f = h + conj(g)` of the unit disk
//! onto `Q` whose dilatation is the square of a disk automorphism. Feeding
//! `(h', sqrt(g'/h'))` into the Enneper-Weierstrass representation produces a
//! minimal graph over `Q` with logarithmic blow-up along the four sides.
//!
//! Everything here is a closed form in the hyperbolic coordinates `(m, s, t)`
//! of the two free vertices, evaluated in the normalized frame where
//! `b1 = -1` and `b3 = 1`. The [`oracles`] module carries brute-force numerics
//! (Poisson quadrature, contour integrals, finite differences) that share no
//! code with the closed forms and are used to check them.
//!
//! ```
//! use scherk_core::ScherkSurface;
//!
//! let surface = ScherkSurface::from_params(0.3, 1.0, 0.3).unwrap();
//! let c0 = surface.harmonic_center();
//! assert!((c0.re - 0.299).abs() < 1e-3 && (c0.im - 0.552).abs() < 1e-3);
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod harmonic;
pub mod mesh;
pub mod oracles;
pub mod params;
mod surface;
pub mod weierstrass;

pub use num_complex::Complex64 as Complex;

pub use analysis::CenterReport;
pub use error::{Error, Result};
pub use geometry::{HyperbolicCoords, NormalizedFrame, PitotQuad, Similarity};
pub use harmonic::{AnalyticParts, StepBoundary};
pub use mesh::SurfaceMesh;
pub use params::ScherkData;
pub use surface::ScherkSurface;
pub use weierstrass::{AsymptoticConstants, HeightKernel};

mod prelude {
    pub(crate) use crate::{Complex, Error, Result};
    // When std is linked its inherent float methods take over, so the trait
    // import may go unused.
    #[allow(unused_imports)]
    pub(crate) use num_traits::Float;
}

/// Imaginary unit.
pub(crate) const I: Complex = Complex::new(0.0, 1.0);
