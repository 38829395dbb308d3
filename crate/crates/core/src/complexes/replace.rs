use std::collections::BTreeMap;

use super::complex::{ChainMap, Complex};
use crate::algebra::{projective_cover_modulo, Module, ModuleMap, Projective, Submodule, DEFAULT_RESOLUTION_CAP};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// A bounded complex of projectives `P` with a quasi-isomorphism `P → X`.
#[derive(Clone, Debug)]
pub struct ProjReplacement {
    pub complex: Complex,
    pub projectives: BTreeMap<i32, Projective>,
    pub quasi_iso: ChainMap,
}

impl ProjReplacement {
    pub fn projective(&self, n: i32) -> Option<&Projective> {
        self.projectives.get(&n)
    }

    /// Checks that the stored map is a chain map inducing isomorphisms on homology.
    pub fn verify(&self, target: &Complex) -> bool {
        self.quasi_iso.is_chain_map(&self.complex, target) && self.quasi_iso.is_quasi_isomorphism(&self.complex, target)
    }
}

/// Projective replacement with the default cap on steps below the support.
pub fn proj_replace(x: &Complex) -> Result<ProjReplacement> {
    proj_replace_capped(x, DEFAULT_RESOLUTION_CAP)
}

/// Builds `P^n` from the top degree down so that `cone(π)` is exact at each
/// step: `P^n` covers the cycles of `P^{n+1} ⊕ X^n` modulo the image of `X^{n−1}`.
/// Fails with [`Error::ResolutionCap`] if more than `cap` nonzero terms
/// are needed below the support of `X`.
pub fn proj_replace_capped(x: &Complex, cap: usize) -> Result<ProjReplacement> {
    let alg = x.algebra();
    let f = alg.field();
    let nv = alg.n_vertices();
    let Some((lo, hi)) = x.support() else {
        return Ok(ProjReplacement {
            complex: Complex::zero(alg),
            projectives: BTreeMap::new(),
            quasi_iso: ChainMap::zero(),
        });
    };
    let mut projectives: BTreeMap<i32, Projective> = BTreeMap::new();
    let mut dp: BTreeMap<i32, ModuleMap> = BTreeMap::new();
    let mut pi: BTreeMap<i32, ModuleMap> = BTreeMap::new();
    let empty = Projective::new(alg, Vec::new());
    let mut n = hi;
    loop {
        let p_up = projectives.get(&(n + 1)).unwrap_or(&empty).module().clone();
        let xn = x.term(n);
        // W = P^{n+1} ⊕ X^n and its cone differential into P^{n+2} ⊕ X^{n+1}.
        let p_up2 = projectives.get(&(n + 2)).unwrap_or(&empty).module().clone();
        let x_up = x.term(n + 1);
        let dp_up = dp.get(&(n + 1)).cloned().unwrap_or_else(|| ModuleMap::zero(&p_up, &p_up2));
        let pi_up = pi.get(&(n + 1)).cloned().unwrap_or_else(|| ModuleMap::zero(&p_up, x_up));
        let dx = x.diff(n);
        let dx_prev = x.diff(n - 1);
        let (w, _, _) = Module::direct_sum(alg, &[&p_up, xn]);
        let delta_blocks: Vec<Matrix> = (0..nv)
            .map(|v| {
                let (a, b) = (p_up.dim_at(v), xn.dim_at(v));
                let (c, d) = (p_up2.dim_at(v), x_up.dim_at(v));
                let mut m = Matrix::zeros(f, a + b, c + d);
                m.put(0, 0, &dp_up.block(v).neg());
                m.put(0, c, pi_up.block(v));
                m.put(a, c, dx.block(v));
                m
            })
            .collect();
        let delta = ModuleMap::from_blocks(alg.clone(), delta_blocks);
        let z_sub = delta.kernel();
        let (z, z_incl) = w.sub(&z_sub);
        // Image of X^{n−1} → W, (0, d y), in cycle coordinates, plus rad Z.
        let rad = z.radical();
        let u: Submodule = (0..nv)
            .map(|v| {
                let a = p_up.dim_at(v);
                let rows: Vec<_> = dx_prev
                    .block(v)
                    .row_vectors()
                    .into_iter()
                    .map(|r| {
                        let mut full = vec![f.zero(); a];
                        full.extend(r);
                        z_sub[v].coords(&full).expect("boundaries are cycles")
                    })
                    .collect();
                Subspace::from_vectors(f, z.dim_at(v), rows).sum(&rad[v])
            })
            .collect();
        let (p, psi) = projective_cover_modulo(&z, &u);
        if n < lo {
            if p.rank() == 0 {
                break;
            }
            if (lo - n) as usize > cap {
                return Err(Error::ResolutionCap { cap });
            }
        }
        if p.rank() > 0 {
            let into_w = psi.compose(&z_incl);
            let (mut d_blocks, mut pi_blocks) = (Vec::new(), Vec::new());
            for v in 0..nv {
                let a = p_up.dim_at(v);
                let blk = into_w.block(v);
                d_blocks.push(blk.submatrix(0, blk.rows(), 0, a).neg());
                pi_blocks.push(blk.submatrix(0, blk.rows(), a, xn.dim_at(v)));
            }
            dp.insert(n, ModuleMap::from_blocks(alg.clone(), d_blocks));
            pi.insert(n, ModuleMap::from_blocks(alg.clone(), pi_blocks));
            projectives.insert(n, p);
        }
        n -= 1;
    }
    let terms = projectives.iter().map(|(k, p)| (*k, p.module().clone())).collect();
    let complex = Complex::build(alg, terms, dp);
    Ok(ProjReplacement { complex, projectives, quasi_iso: ChainMap::from_components(pi) })
}
