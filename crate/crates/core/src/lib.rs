//! Exact characteristic numbers of plane curves with tangencies to a line
//! and a node, cusp, two nodes or a tacnode.
//!
//! Counts are intersection numbers in a truncated cohomology ring, reduced
//! recursively to integrals. The Caporaso–Harris recursion and the WDVV
//! recursion for rational curves are included as independent checks.

pub mod caporaso_harris;
pub mod cusp;
pub mod engine;
pub mod error;
pub mod expr;
pub mod multisingular;
pub mod nodal;
pub mod report;
pub mod ring;
pub mod tangency;
pub mod verify;
pub mod wdvv;

pub use engine::{Base, Session};
pub use error::{Error, Result};
pub use ring::{delta, Monomial, RingElem, SpaceSig};
pub use tangency::{Constraint, CountResult, TangencyProfile};
