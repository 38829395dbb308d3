use std::sync::Arc;

use super::fd::FdAlgebra;
use super::module::{Module, ModuleMap};
use super::projective::{projective_cover, Projective};
use crate::error::{Error, Result};

/// Default cap on resolution length.
pub const DEFAULT_RESOLUTION_CAP: usize = 8;

/// A minimal projective resolution `… → P₁ → P₀ → M → 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub terms: Vec<Projective>,
    /// `maps[0]: P₀ → M`, `maps[i]: Pᵢ → Pᵢ₋₁`.
    pub maps: Vec<ModuleMap>,
    /// Whether the last term's syzygy vanished (always true on success).
    pub complete: bool,
}

impl Resolution {
    /// Projective dimension: index of the last nonzero term.
    pub fn length(&self) -> usize {
        self.terms.iter().rposition(|p| p.rank() > 0).unwrap_or(0)
    }

    /// Checks `d∘d = 0` and exactness (kernel = image) at every stage.
    pub fn verify_exact(&self, m: &Module) -> bool {
        if self.maps.is_empty() {
            return m.is_zero();
        }
        if !self.maps[0].is_surjective() {
            return false;
        }
        for i in 0..self.maps.len() {
            let ker = self.maps[i].kernel();
            let img = match self.maps.get(i + 1) {
                Some(next) => next.image(),
                None => self.terms[i].module().zero_submodule(),
            };
            if ker != img {
                return false;
            }
        }
        true
    }
}

/// Minimal projective resolution of length at most `cap`.
pub fn projective_resolution(m: &Module, cap: usize) -> Result<Resolution> {
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    let mut current = m.clone();
    // Inclusion of the current syzygy into the previous term.
    let mut incl: Option<ModuleMap> = None;
    loop {
        if current.is_zero() {
            break;
        }
        if terms.len() > cap {
            return Err(Error::ResolutionCap { cap });
        }
        let (p, cover) = projective_cover(&current);
        let d = match &incl {
            Some(i) => cover.compose(i),
            None => cover.clone(),
        };
        let (k, k_incl) = p.module().sub(&cover.kernel());
        terms.push(p);
        maps.push(d);
        current = k;
        incl = Some(k_incl);
    }
    if terms.is_empty() {
        // The zero module resolves by the zero projective.
        let p = Projective::new(m.algebra(), vec![]);
        maps.push(ModuleMap::zero(p.module(), m));
        terms.push(p);
    }
    Ok(Resolution { terms, maps, complete: true })
}

pub fn projective_dimension(m: &Module, cap: usize) -> Result<usize> {
    Ok(projective_resolution(m, cap)?.length())
}

/// Maximum projective dimension of the simple modules.
pub fn global_dimension(alg: &Arc<FdAlgebra>, cap: usize) -> Result<usize> {
    (0..alg.n_vertices())
        .map(|v| projective_dimension(&Module::simple(alg, v), cap))
        .try_fold(0, |acc, d| Ok(acc.max(d?)))
}
