//! Quiver algebras, their modules, Hom spaces and projective resolutions.

mod fd;
mod hom;
mod module;
mod projective;
mod quiver;
pub mod random;
mod resolution;

pub use fd::{
    beilinson_p2, build_algebra, ground_field_algebra, path_algebra, FdAlgebra, Sparse, DEFAULT_MAX_PATH_LEN,
};
pub use hom::{find_isomorphism, hom_dim, hom_space, random_hom};
pub use module::{same_algebra, Module, ModuleMap, Submodule};
pub(crate) use projective::projective_cover_modulo;
pub use projective::{projective_cover, Projective};
pub use quiver::{Arrow, Path, Quiver, Relation};
pub use resolution::{
    global_dimension, projective_dimension, projective_resolution, Resolution, DEFAULT_RESOLUTION_CAP,
};
