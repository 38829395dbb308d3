//! Bounded complexes of modules: shifts, cones, homology, truncations,
//! projective replacements and `RHom`.

mod complex;
mod replace;
mod rhom;

pub use complex::{chain_maps, cone, random_chain_map, std_truncate, ChainMap, Complex, Homology, Triangle};
pub use replace::{proj_replace, proj_replace_capped, ProjReplacement};
pub use rhom::{ext_dims, rhom, rhom_with, VsComplex};
