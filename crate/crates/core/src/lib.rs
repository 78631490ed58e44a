//! Geometric graph 3-manifolds of nonnegative scalar curvature: exact lattice
//! and slope calculus on the flat core, lens/prism classification, and the
//! numerical disk metrics and conformal isotopies behind the standard metrics.

pub mod arith;
pub mod assembly;
pub mod cylinder;
pub mod diskmetric;
pub mod error;
pub mod exactlat;
pub mod io;
pub mod isotopy;
pub mod moduli;
pub mod slope;
pub mod spaceform;
pub mod stencil;

pub use arith::{Int, Rational};
pub use error::{Error, Result};
