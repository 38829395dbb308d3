//! Exact computational homological algebra over finite-dimensional quiver
//! algebras: torsion pairs cut out by an object `N`, the tilted ("perverse")
//! t-structure, the semi-orthogonal projection onto `{A : RHom(A, N) = 0}`,
//! and a toric model of the blowup of P² at a point on which the blow-down
//! statements can be checked.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run --release --example torsion_pair
//! cargo run --release --example blowdown
//! ```

pub mod algebra;
pub mod cli;
pub mod complexes;
pub mod error;
pub mod field;
pub mod linalg;
pub mod perverse;
pub mod report;
pub mod semiorth;
pub mod serial;
pub mod toric;
pub mod torsion;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
