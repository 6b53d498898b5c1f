//! Alexander numberings, dual complexes and exact discrete Stokes identities
//! for generic immersed plane curves, together with the local triple-point
//! model for surfaces and a slice-movie engine.

pub mod alexander;
pub mod canon;
pub mod corpus;
pub mod derham;
pub mod diagram;
pub mod dual;
pub mod error;
pub mod findiff;
pub mod geometry;
pub mod invariants;
pub mod moves;
pub mod movie;
pub mod random;
pub mod rational;
pub mod signs;
pub mod triplelocal;
pub mod verify;

pub use diagram::{parse_diagram, serialize_diagram, CurveDiagram};
pub use error::{Error, Result};
pub use rational::Q;
