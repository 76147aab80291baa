use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// A vertex or parameter is NaN or infinite.
    NonFinite,
    /// Two vertices coincide.
    DegenerateVertices,
    /// The polygon has (numerically) zero signed area.
    ZeroArea,
    /// Two non-adjacent sides intersect.
    SelfIntersecting,
    /// Opposite side sums differ by more than the allowed tolerance.
    NotPitot { residual: f64, tolerance: f64 },
    /// `z` and `w` do not lie on a common hyperbola with foci `-1, 1`.
    NotOnCommonHyperbola { mismatch: f64 },
    /// The hyperbola collapses onto the real axis (`cos m` vanishes).
    DegenerateRightAngle,
    /// The free vertices lie on the left branch; normalize relabels these.
    LeftBranch,
    /// `s == t`; the angle parameter degenerates to `p = 0`.
    EqualRapidities,
    /// `s < t`: the normalized quadrilateral is clockwise.
    ClockwiseRapidities,
    /// A vertex-form expression divides by (numerically) zero.
    DivisionDegenerate,
    /// Evaluation point too close to a boundary pole.
    PoleProximity,
    /// Evaluation point outside the open unit disk.
    OutsideDisk,
    /// Invalid sampling grid parameters.
    InvalidGrid,
    /// No sign choice of the alignment formula zeroes the rotated derivative.
    NoRootFound,
    /// Adaptive quadrature exhausted its depth budget.
    ToleranceNotMet { estimate: f64 },
    /// Newton inversion did not converge.
    NewtonDiverged,
    /// A finite-difference stencil leaves the domain.
    StencilOutOfDomain,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => write!(f, "non-finite input"),
            Error::DegenerateVertices => write!(f, "two vertices coincide"),
            Error::ZeroArea => write!(f, "quadrilateral has zero area"),
            Error::SelfIntersecting => write!(f, "quadrilateral is self-intersecting"),
            Error::NotPitot { residual, tolerance } => write!(
                f,
                "not a Pitot quadrilateral: |b1b2|+|b3b4|-|b2b3|-|b4b1| = {residual:e} exceeds {tolerance:e}"
            ),
            Error::NotOnCommonHyperbola { mismatch } => {
                write!(f, "z and w are not on a common focal hyperbola (mismatch {mismatch:e})")
            }
            Error::DegenerateRightAngle => write!(f, "hyperbola degenerates (cos m ~ 0)"),
            Error::LeftBranch => write!(f, "points lie on the left hyperbola branch"),
            Error::EqualRapidities => write!(f, "equal rapidities s = t"),
            Error::ClockwiseRapidities => write!(f, "s < t: clockwise configuration"),
            Error::DivisionDegenerate => write!(f, "vertex-form denominator vanishes"),
            Error::PoleProximity => write!(f, "point too close to a boundary pole"),
            Error::OutsideDisk => write!(f, "point outside the unit disk"),
            Error::InvalidGrid => write!(f, "invalid sampling grid"),
            Error::NoRootFound => write!(f, "no aligning rotation found"),
            Error::ToleranceNotMet { estimate } => {
                write!(f, "quadrature tolerance not met (error estimate {estimate:e})")
            }
            Error::NewtonDiverged => write!(f, "Newton inversion diverged"),
            Error::StencilOutOfDomain => write!(f, "finite-difference stencil leaves the disk"),
        }
    }
}

impl core::error::Error for Error {}
