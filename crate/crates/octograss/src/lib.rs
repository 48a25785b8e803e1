//! Numerical differential geometry of the oriented Grassmannians `G(k,n)`,
//! their normal vector and sphere bundles, and the distinguished unit
//! sections induced by the octonionic cross products.
//!
//! The crate provides:
//!
//! * exact octonion arithmetic and the double/triple cross products
//!   ([`octonion`]),
//! * points, tangent vectors, geodesics and geodesic surfaces of `G(k,n)`
//!   with its normal homogeneous metric ([`grassmann`]),
//! * the normal bundle `E_{k,n}`, the skew-operator bundle over `G(2,8)`,
//!   their canonical metric connections and parallel transport
//!   ([`bundles`]),
//! * the sections `sigma2`, `sigma3`, `J`, Hopf fields and the `S^6`
//!   almost complex structure ([`sections`]),
//! * covariant derivatives, the rough Laplacian, bundle curvature and the
//!   criticality 1-form ([`diffops`]),
//! * total-bending / energy estimation and first-variation tests
//!   ([`energy`]),
//! * a batch verification harness with structured reports ([`verify`]).

// Index loops and explicit parities mirror the tensor notation of the
// formulas being implemented.
#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

pub mod bundles;
pub mod diffops;
pub mod energy;
mod error;
pub mod grassmann;
pub mod octonion;
pub mod sections;
pub mod verify;

pub use error::{Error, Result};
