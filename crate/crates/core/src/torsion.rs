//! The torsion pair `(T, F)` cut out by a module `N`: `T = {T : Hom(T, N) = 0}`
//! and `F = T^⊥`, with explicit torsion subobjects.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::algebra::random::{random_map, random_module, RandomModuleSpec};
use crate::algebra::{hom_dim, hom_space, projective_cover, FdAlgebra, Module, ModuleMap, Submodule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// Fixes `N`; the torsion class is `{A : Hom(A, N) = 0}`.
#[derive(Clone, Debug)]
pub struct TorsionContext {
    n: Module,
}

/// `0 → t(A) → A → A/t(A) → 0` with both witnesses.
#[derive(Clone, Debug)]
pub struct TorsionDecomposition {
    pub module: Module,
    pub torsion_part: Submodule,
    pub torsion: Module,
    pub inclusion: ModuleMap,
    pub free: Module,
    pub projection: ModuleMap,
    /// Dimensions of the descending chain `U_0 ⊇ U_1 ⊇ …`.
    pub chain: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TorsionClass {
    Torsion,
    TorsionFree,
    Mixed,
}

impl TorsionContext {
    pub fn new(n: Module) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::Precondition("N must be nonzero".into()));
        }
        Ok(TorsionContext { n })
    }

    pub fn n(&self) -> &Module {
        &self.n
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra> {
        self.n.algebra()
    }

    pub fn is_torsion(&self, a: &Module) -> Result<bool> {
        Ok(hom_dim(a, &self.n)? == 0)
    }

    /// `t(A)` as the fixed point of `U_{k+1} = ∩_{f : U_k → N} ker f`.
    pub fn torsion_subobject(&self, a: &Module) -> Result<TorsionDecomposition> {
        a.check_same_algebra(&self.n)?;
        let f = a.field();
        let nv = a.dims().len();
        let mut u = a.full_submodule();
        let mut chain = vec![a.total_dim()];
        loop {
            let (um, incl) = a.sub(&u);
            let homs = hom_space(&um, &self.n)?;
            if homs.is_empty() {
                break;
            }
            // Joint kernel of all maps to N, as one map into N^r.
            let blocks: Vec<Matrix> = (0..nv)
                .map(|v| {
                    let mut m = Matrix::zeros(f, um.dim_at(v), self.n.dim_at(v) * homs.len());
                    for (k, h) in homs.iter().enumerate() {
                        m.put(0, k * self.n.dim_at(v), h.block(v));
                    }
                    m
                })
                .collect();
            let joint = ModuleMap::from_blocks(a.algebra().clone(), blocks);
            let ker = joint.kernel();
            u = (0..nv).map(|v| ker[v].image_under(incl.block(v))).collect();
            chain.push(u.iter().map(Subspace::dim).sum());
        }
        let (torsion, inclusion) = a.sub(&u);
        let (free, projection) = a.quotient(&u);
        Ok(TorsionDecomposition { module: a.clone(), torsion_part: u, torsion, inclusion, free, projection, chain })
    }

    pub fn classify(&self, a: &Module) -> Result<TorsionClass> {
        let d = self.torsion_subobject(a)?;
        Ok(if d.torsion.is_zero() {
            TorsionClass::TorsionFree
        } else if d.free.is_zero() {
            TorsionClass::Torsion
        } else {
            TorsionClass::Mixed
        })
    }

    pub fn is_torsion_free(&self, a: &Module) -> Result<bool> {
        Ok(self.torsion_subobject(a)?.torsion.is_zero())
    }

    /// A posteriori checks on a decomposition: exactness, `Hom(t(A), N) = 0`
    /// and `t(A/t(A)) = 0`.
    pub fn certify(&self, d: &TorsionDecomposition) -> Result<bool> {
        let exact = d.inclusion.is_injective()
            && d.projection.is_surjective()
            && d.inclusion.compose(&d.projection).is_zero()
            && d.torsion.total_dim() + d.free.total_dim() == d.module.total_dim();
        Ok(exact && self.is_torsion(&d.torsion)? && self.torsion_subobject(&d.free)?.torsion.is_zero())
    }

    /// `t(A)` of a random module; an element of `T`.
    pub fn random_torsion<R: Rng + ?Sized>(&self, spec: RandomModuleSpec, rng: &mut R) -> Result<Module> {
        let a = random_module(self.algebra(), spec, rng);
        Ok(self.torsion_subobject(&a)?.torsion)
    }

    /// `A/t(A)` of a random module; an element of `F`.
    pub fn random_torsion_free<R: Rng + ?Sized>(&self, spec: RandomModuleSpec, rng: &mut R) -> Result<Module> {
        let a = random_module(self.algebra(), spec, rng);
        Ok(self.torsion_subobject(&a)?.free)
    }
}

/// A random extension `0 → B → E → A → 0`: the pushout of `K ↪ P ↠ A`
/// along a random `K → B`.
pub fn random_extension<R: Rng + ?Sized>(a: &Module, b: &Module, rng: &mut R) -> (Module, ModuleMap, ModuleMap) {
    let alg = a.algebra();
    let (p, cover) = projective_cover(a);
    let (k, k_incl) = p.module().sub(&cover.kernel());
    let phi = random_map(&k, b, rng);
    let (sum, incl, proj) = Module::direct_sum(alg, &[p.module(), b]);
    // Identify (κ, 0) with (0, φ(κ)).
    let rel = k_incl.compose(&incl[0]).add(&phi.compose(&incl[1]).neg());
    let (e, q) = sum.quotient(&rel.image());
    let into_e = incl[1].compose(&q);
    // E → A is induced from P ⊕ B → P → A.
    let to_a = proj[0].compose(&cover);
    let f = a.field();
    let blocks = (0..a.dims().len())
        .map(|v| {
            let rows = rel.image()[v].complement_indices().into_iter().map(|c| to_a.block(v).row(c).to_vec()).collect();
            Matrix::from_rows(f, a.dim_at(v), rows)
        })
        .collect();
    (e, into_e, ModuleMap::from_blocks(alg.clone(), blocks))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::random::random_submodule;
    use crate::algebra::{beilinson_p2, path_algebra, Projective, Quiver};
    use crate::complexes::{cone, ChainMap, Complex};
    use crate::field::Field;

    const F: Field = Field::Prime(32003);

    fn a2() -> Arc<FdAlgebra> {
        Arc::new(path_algebra(F, Quiver::from_names(&["1", "2"], &[("a", "1", "2")]).unwrap()).unwrap())
    }

    /// Contexts over A₂, A₃ and the Beilinson algebra with a random nonzero `N`.
    fn context(which: usize, seed: u64) -> TorsionContext {
        let alg = match which {
            0 => a2(),
            1 => Arc::new(
                path_algebra(F, Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap())
                    .unwrap(),
            ),
            _ => Arc::new(beilinson_p2(F)),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        loop {
            let n = random_module(&alg, RandomModuleSpec { max_generators: 1, max_relations: 2 }, &mut rng);
            if !n.is_zero() {
                return TorsionContext::new(n).unwrap();
            }
        }
    }

    #[test]
    fn basic_classes() {
        let alg = a2();
        let ctx = TorsionContext::new(Module::simple(&alg, 1)).unwrap();
        assert!(ctx.is_torsion(&Module::zero(&alg)).unwrap());
        assert!(!ctx.is_torsion(ctx.n()).unwrap());
        assert_eq!(ctx.classify(&Module::zero(&alg)).unwrap(), TorsionClass::TorsionFree);
        let p2 = Projective::indecomposable(&alg, 1);
        assert_eq!(ctx.classify(p2.module()).unwrap(), TorsionClass::TorsionFree);
        let p1 = Projective::indecomposable(&alg, 0);
        assert_eq!(ctx.classify(p1.module()).unwrap(), TorsionClass::Torsion);
        let sum = Module::direct_sum(&alg, &[p1.module(), p2.module()]).0;
        assert_eq!(ctx.classify(&sum).unwrap(), TorsionClass::Mixed);
        assert!(matches!(TorsionContext::new(Module::zero(&alg)), Err(Error::Precondition(_))));
    }

    #[test]
    fn cone_of_torsion_inclusion() {
        let ctx = context(2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let a = random_module(ctx.algebra(), RandomModuleSpec::default(), &mut rng);
            let d = ctx.torsion_subobject(&a).unwrap();
            let (t, am) = (Complex::from_module(&d.torsion, 0), Complex::from_module(&a, 0));
            let f = ChainMap::new(&t, &am, BTreeMap::from([(0, d.inclusion.clone())])).unwrap();
            let c = cone(&f, &t, &am).c;
            let expected: BTreeMap<i32, Vec<usize>> =
                if d.free.is_zero() { BTreeMap::new() } else { BTreeMap::from([(0, d.free.dims().to_vec())]) };
            assert_eq!(c.homology_dims(), expected);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn idempotent_and_certified(which in 0usize..3, seed in 0u64..10_000) {
            let ctx = context(which, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_module(ctx.algebra(), RandomModuleSpec::default(), &mut rng);
            let d = ctx.torsion_subobject(&a).unwrap();
            prop_assert!(ctx.certify(&d).unwrap());
            let again = ctx.torsion_subobject(&d.torsion).unwrap();
            prop_assert_eq!(again.torsion.total_dim(), d.torsion.total_dim());
            prop_assert!(ctx.torsion_subobject(&d.free).unwrap().torsion.is_zero());
            prop_assert!(d.chain.windows(2).all(|w| w[1] < w[0]));
        }

        #[test]
        fn functorial(which in 0usize..3, seed in 0u64..10_000) {
            let ctx = context(which, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_module(ctx.algebra(), RandomModuleSpec::default(), &mut rng);
            let b = random_module(ctx.algebra(), RandomModuleSpec::default(), &mut rng);
            let f = random_map(&a, &b, &mut rng);
            let (da, db) = (ctx.torsion_subobject(&a).unwrap(), ctx.torsion_subobject(&b).unwrap());
            prop_assert!(da.inclusion.compose(&f).compose(&db.projection).is_zero());
        }

        #[test]
        fn closed_under_quotients_and_extensions(which in 0usize..3, seed in 0u64..10_000) {
            let ctx = context(which, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let spec = RandomModuleSpec::default();
            let t1 = ctx.random_torsion(spec, &mut rng).unwrap();
            let t2 = ctx.random_torsion(spec, &mut rng).unwrap();
            let u = random_submodule(&t1, 1, &mut rng);
            let (q, _) = t1.quotient(&u);
            prop_assert!(ctx.is_torsion(&q).unwrap());
            let (e, i, p) = random_extension(&t1, &t2, &mut rng);
            prop_assert!(i.is_injective() && p.is_surjective() && i.compose(&p).is_zero());
            prop_assert_eq!(e.total_dim(), t1.total_dim() + t2.total_dim());
            prop_assert!(ctx.is_torsion(&e).unwrap());
        }

        #[test]
        fn torsion_orthogonal_to_free(which in 0usize..3, seed in 0u64..10_000) {
            let ctx = context(which, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let spec = RandomModuleSpec::default();
            let t = ctx.random_torsion(spec, &mut rng).unwrap();
            let fr = ctx.random_torsion_free(spec, &mut rng).unwrap();
            prop_assert_eq!(hom_dim(&t, &fr).unwrap(), 0);
        }
    }
}
