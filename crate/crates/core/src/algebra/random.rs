//! Seeded random modules for property corpora.

use std::sync::Arc;

use rand::Rng;

use super::fd::FdAlgebra;
use super::module::{Module, ModuleMap};
use super::projective::Projective;
use crate::field::Scalar;

/// Shape parameters for random quotients of projectives.
#[derive(Clone, Copy, Debug)]
pub struct RandomModuleSpec {
    pub max_generators: usize,
    pub max_relations: usize,
}

impl Default for RandomModuleSpec {
    fn default() -> Self {
        RandomModuleSpec { max_generators: 2, max_relations: 3 }
    }
}

fn random_vector<R: Rng + ?Sized>(alg: &FdAlgebra, len: usize, rng: &mut R) -> Vec<Scalar> {
    (0..len).map(|_| alg.field().random(rng)).collect()
}

/// A random quotient `P / (random elements)` of a random free module.
pub fn random_module<R: Rng + ?Sized>(alg: &Arc<FdAlgebra>, spec: RandomModuleSpec, rng: &mut R) -> Module {
    let n_gens = rng.gen_range(1..=spec.max_generators.max(1));
    let gens: Vec<usize> = (0..n_gens).map(|_| rng.gen_range(0..alg.n_vertices())).collect();
    let p = Projective::new(alg, gens);
    let n_rel = rng.gen_range(0..=spec.max_relations);
    let mut elems = Vec::new();
    for _ in 0..n_rel {
        let v = rng.gen_range(0..alg.n_vertices());
        let d = p.module().dim_at(v);
        if d > 0 {
            elems.push((v, random_vector(alg, d, rng)));
        }
    }
    let u = p.module().generated(&elems);
    p.module().quotient(&u).0
}

/// `D(X)` for a random quotient `X` of a projective over the opposite
/// algebra `op`: a random submodule of an injective over `alg`.
pub fn random_dual_module<R: Rng + ?Sized>(
    alg: &Arc<FdAlgebra>,
    op: &Arc<FdAlgebra>,
    spec: RandomModuleSpec,
    rng: &mut R,
) -> Module {
    random_module(op, spec, rng).dual(alg)
}

/// A random element of `Hom(M, N)`.
pub fn random_map<R: Rng + ?Sized>(m: &Module, n: &Module, rng: &mut R) -> ModuleMap {
    super::hom::random_hom(m, n, rng).expect("same algebra")
}

/// A random submodule generated by up to `k` random elements.
pub fn random_submodule<R: Rng + ?Sized>(m: &Module, k: usize, rng: &mut R) -> super::module::Submodule {
    let alg = m.algebra();
    let mut elems = Vec::new();
    for _ in 0..k {
        let v = rng.gen_range(0..alg.n_vertices());
        if m.dim_at(v) > 0 {
            elems.push((v, random_vector(alg, m.dim_at(v), rng)));
        }
    }
    m.generated(&elems)
}
