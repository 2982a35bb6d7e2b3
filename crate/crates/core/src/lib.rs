//! Numerical toolkit for analytic Q-type spaces on the unit disc and
//! circle: series calculus, singular-weight quadrature, norms and
//! Carleson constants, fractional derivatives and Volterra-type
//! operators, plus an experiment harness that checks the norm
//! equivalences empirically as bounded-ratio reports.

pub mod calculus;
pub mod error;
pub mod family;
pub mod gamma;
pub mod geometry;
pub mod params;
pub mod quad;
pub mod series;
pub mod spaces;
pub mod verify;

pub use error::QError;
pub use family::{make_family, FamilyKind, FamilyMember, FamilySpec};
pub use geometry::{mobius, Arc, PointGrid};
pub use params::{SpaceParams, TheoremContext, Verdict};
pub use quad::{ArcGrid, QuadConfig, RefinedValue};
pub use series::{poisson_gradient_density, FourierSeries, TaylorSeries};
