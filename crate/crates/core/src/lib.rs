//! Sylvester–Gallai-type incidence geometry over the complex numbers and
//! the quaternions.
//!
//! Points live in `K²` for `K ∈ {ℂ, ℍ}`, treated as a *left* vector space.
//! Every algorithm is generic over a [`Real`] component type so the same code
//! runs on exact `ℚ(√m)` arithmetic ([`QuadExt`]) and on `f64`.
//!
//! * [`scalars`]: quaternion arithmetic and the exact quadratic-field backend.
//! * [`plane`]: points, canonical lines, inner products and point-line distance.
//! * [`incidence`]: spanned-line enumeration and incidence histograms.
//! * [`kelly`]: the minimum-distance witness and its >60° angle certificate.
//! * [`grid`]: Cartesian products `A×B`, closest/furthest pairs, similarities.
//! * [`configs`]: deterministic generators (Hesse configuration, random sets, ...).

pub mod configs;
pub mod error;
pub mod grid;
pub mod incidence;
pub mod kelly;
pub mod plane;
pub mod scalars;

pub use error::{Error, Result};
pub use incidence::{IncidenceReport, SpannedLine};
pub use kelly::WitnessReport;
pub use plane::{Line, Point, PointSet, Tolerance};
pub use scalars::{Backend, FieldTag, QuadExt, Quaternion, Real, Scalar, ScalarField};
