//! A toric model of `F₁ = Bl_p P²`: line-bundle cohomology, a tilting bundle
//! of line bundles and its endomorphism algebra, and the blow-down checks.

mod model;
mod surface;
mod verify;

pub use model::{arrow_table, ModelBundle, TwistTrial, TWIST_RADIUS};
pub use surface::{p1_cohomology, Cohomology, Point, TDivisor, ToricSurface};
pub use verify::{blowdown_verify, VerifyConfig};
