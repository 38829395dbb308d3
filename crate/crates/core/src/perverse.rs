//! The tilted t-structure attached to the torsion pair of `N`:
//! `D^p_{≤0} = {X ∈ D_{≤0} : H⁰X ∈ T}`, `D^p_{≥0} = {X ∈ D_{≥−1} : H^{−1}X ∈ F}`,
//! its truncations, cohomology, and kernels and cokernels in the heart.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{FdAlgebra, Module, Submodule};
use crate::complexes::{cone, std_truncate, ChainMap, Complex, Triangle};
use crate::error::{Error, Result};
use crate::linalg::preimage;
use crate::torsion::TorsionContext;

type HomologyPair = (Vec<usize>, Vec<usize>);

#[derive(Clone, Debug)]
pub struct PerverseContext {
    torsion: TorsionContext,
}

/// An object of the heart, normalized to `A^{−1} → A^0`.
#[derive(Clone, Debug)]
pub struct HeartObject {
    complex: Complex,
}

/// `τ^p_{≤0}X ↪ X ↠ τ^p_{≥1}X`.
#[derive(Clone, Debug)]
pub struct PTruncation {
    pub low: Complex,
    pub high: Complex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// Kernel and cokernel of a heart map `f : A → B`, with strict maps
/// `K̃ → A` and `B → C̃` out of and into representatives whose perverse
/// cohomology is the kernel and cokernel.
#[derive(Clone, Debug)]
pub struct HeartKerCoker {
    pub kernel: HeartObject,
    pub cokernel: HeartObject,
    pub kernel_rep: Complex,
    pub kernel_map: ChainMap,
    pub cokernel_rep: Complex,
    pub cokernel_map: ChainMap,
}

impl PTruncation {
    /// The triangle `τ^p_{≤0}X → X → cone → τ^p_{≤0}X[1]`; its third term is
    /// quasi-isomorphic to `high`.
    pub fn triangle(&self, x: &Complex) -> Triangle {
        cone(&self.inclusion, &self.low, x)
    }
}

impl HeartObject {
    pub fn new(complex: Complex, ctx: &PerverseContext) -> Result<Self> {
        if let Some((lo, hi)) = complex.support() {
            if lo < -1 || hi > 0 {
                return Err(Error::Precondition(format!("heart objects live in degrees −1, 0; got [{lo}, {hi}]")));
            }
        }
        let (le, ge) = ctx.p_membership(&complex)?;
        if !(le && ge) {
            return Err(Error::Precondition("H^{−1} ∉ F or H⁰ ∉ T".into()));
        }
        Ok(HeartObject { complex })
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn h_minus1(&self) -> Module {
        self.complex.homology_module(-1)
    }

    pub fn h0(&self) -> Module {
        self.complex.homology_module(0)
    }

    pub fn is_zero(&self) -> bool {
        self.complex.is_acyclic()
    }

    /// `(dim H^{−1}, dim H^0)` as dimension vectors.
    pub fn homology_dims(&self) -> (Vec<usize>, Vec<usize>) {
        (self.complex.homology_dim_vector(-1), self.complex.homology_dim_vector(0))
    }
}

impl PerverseContext {
    pub fn new(torsion: TorsionContext) -> Self {
        PerverseContext { torsion }
    }

    pub fn torsion(&self) -> &TorsionContext {
        &self.torsion
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra> {
        self.torsion.algebra()
    }

    /// `(X ∈ D^p_{≤0}, X ∈ D^p_{≥0})`.
    pub fn p_membership(&self, x: &Complex) -> Result<(bool, bool)> {
        Ok((self.in_le(x, 0)?, self.in_ge(x, 0)?))
    }

    /// `X ∈ D^p_{≤n}`, i.e. `X[n] ∈ D^p_{≤0}`.
    pub fn in_le(&self, x: &Complex, n: i32) -> Result<bool> {
        Ok(x.homology_within(i32::MIN, n) && self.torsion.is_torsion(&x.homology_module(n))?)
    }

    /// `X ∈ D^p_{≥n}`, i.e. `X[n] ∈ D^p_{≥0}`.
    pub fn in_ge(&self, x: &Complex, n: i32) -> Result<bool> {
        Ok(x.homology_within(n - 1, i32::MAX) && self.torsion.is_torsion_free(&x.homology_module(n - 1))?)
    }

    /// Subcomplex `(… → X^{−1} → Z′)` with `Z′ ⊆ ker d⁰` the preimage of
    /// `t(H⁰X)`, and the quotient by it.
    pub fn p_truncate(&self, x: &Complex) -> Result<PTruncation> {
        let alg = x.algebra();
        let h = x.homology(0);
        let t = self.torsion.torsion_subobject(&h.module)?;
        let nv = alg.n_vertices();
        let z_prime: Submodule = (0..nv)
            .map(|v| {
                let in_z = preimage(&h.projection.block(v).transpose(), &t.torsion_part[v])?;
                Ok(in_z.image_under(h.inclusion.block(v)))
            })
            .collect::<Result<_>>()?;
        let mut u = BTreeMap::new();
        for (&k, m) in x.terms() {
            if k < 0 {
                u.insert(k, m.full_submodule());
            } else if k == 0 {
                u.insert(k, z_prime.clone());
            }
        }
        let (low, inclusion) = x.subcomplex(&u);
        let (high, projection) = x.quotient(&u);
        Ok(PTruncation { low, high, inclusion, projection })
    }

    /// Checks `τ^p_{≤0}X ∈ D^p_{≤0}`, `τ^p_{≥1}X ∈ D^p_{≥1}` and that the
    /// cone of the inclusion is quasi-isomorphic to the quotient.
    pub fn verify_truncation(&self, x: &Complex, t: &PTruncation) -> Result<bool> {
        let tri = t.triangle(x);
        Ok(self.in_le(&t.low, 0)?
            && self.in_ge(&t.high, 1)?
            && t.inclusion.is_chain_map(&t.low, x)
            && t.projection.is_chain_map(x, &t.high)
            && tri.c.homology_isomorphic(&t.high)?)
    }

    /// `τ^p_{≥0} W = τ^p_{≥1}(W[−1])[1]`, with the quotient map `W → τ^p_{≥0}W`.
    pub fn p_truncate_ge0(&self, w: &Complex) -> Result<(Complex, ChainMap)> {
        let t = self.p_truncate(&w.shift(-1))?;
        let q = shift_map(&t.projection, 1);
        Ok((t.high.shift(1), q))
    }

    /// `τ^p_{≥0} τ^p_{≤0} (X[n])`, normalized to two terms.
    pub fn p_cohomology(&self, x: &Complex, n: i32) -> Result<HeartObject> {
        let low = self.p_truncate(&x.shift(n))?.low;
        let (h, _) = self.p_truncate_ge0(&low)?;
        HeartObject::new(two_term(&h), self)
    }

    /// `ker f = pH^{−1}(cone f)`, `coker f = pH^0(cone f)`.
    pub fn heart_kernel_cokernel(&self, f: &ChainMap, a: &HeartObject, b: &HeartObject) -> Result<HeartKerCoker> {
        if !f.is_chain_map(&a.complex, &b.complex) {
            return Err(Error::InvalidMap("not a chain map between the heart objects".into()));
        }
        let tri = cone(f, &a.complex, &b.complex);
        let kernel = self.p_cohomology(&tri.c, -1)?;
        let cokernel = self.p_cohomology(&tri.c, 0)?;
        // K̃ = τ^p_{≤0}(C[−1]) → C[−1] → A.
        let c_down = tri.c.shift(-1);
        let kt = self.p_truncate(&c_down)?;
        let h_down = shift_map(&tri.h, -1);
        let kernel_map = kt.inclusion.compose(&h_down);
        // C̃ = τ^p_{≥0} C, with B → C → C̃.
        let (cokernel_rep, q) = self.p_truncate_ge0(&tri.c)?;
        let cokernel_map = tri.g.compose(&q);
        Ok(HeartKerCoker { kernel, cokernel, kernel_rep: kt.low, kernel_map, cokernel_rep, cokernel_map })
    }

    /// `coker(ker f → A)` and `ker(B → coker f)` as homology dimension vectors;
    /// the heart is abelian exactly when these images agree.
    pub fn image_two_ways(
        &self,
        kc: &HeartKerCoker,
        a: &HeartObject,
        b: &HeartObject,
    ) -> Result<(HomologyPair, HomologyPair)> {
        let coim = cone(&kc.kernel_map, &kc.kernel_rep, &a.complex);
        let coim = self.p_cohomology(&coim.c, 0)?;
        let im = cone(&kc.cokernel_map, &b.complex, &kc.cokernel_rep);
        let im = self.p_cohomology(&im.c, -1)?;
        Ok((coim.homology_dims(), im.homology_dims()))
    }
}

/// The chain map `f[k]` between shifted complexes (components are moved, not re-signed).
pub fn shift_map(f: &ChainMap, k: i32) -> ChainMap {
    ChainMap::from_components(f.components().iter().map(|(n, m)| (n - k, m.clone())).collect())
}

/// `(H^{−1}/im d^{−2} → ker d^0)`: quasi-isomorphic to `X` when its
/// homology lies in degrees `−1, 0`.
fn two_term(x: &Complex) -> Complex {
    let mut u = BTreeMap::new();
    for (&k, m) in x.terms() {
        if k < -1 {
            u.insert(k, m.full_submodule());
        } else if k == -1 {
            u.insert(k, x.diff(-2).image());
        }
    }
    let (q, _) = x.quotient(&u);
    std_truncate(&q, 0).0
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::random::{random_map, random_module, RandomModuleSpec};
    use crate::algebra::{beilinson_p2, path_algebra, ModuleMap, Projective, Quiver};
    use crate::complexes::{random_chain_map, rhom};
    use crate::field::Field;

    const F: Field = Field::Prime(32003);

    fn context(which: usize, seed: u64) -> PerverseContext {
        let alg = match which {
            0 => Arc::new(path_algebra(F, Quiver::from_names(&["1", "2"], &[("a", "1", "2")]).unwrap()).unwrap()),
            1 => Arc::new(
                path_algebra(F, Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap())
                    .unwrap(),
            ),
            _ => Arc::new(beilinson_p2(F)),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfeed);
        loop {
            let n = random_module(&alg, RandomModuleSpec { max_generators: 1, max_relations: 2 }, &mut rng);
            if !n.is_zero() {
                return PerverseContext::new(TorsionContext::new(n).unwrap());
            }
        }
    }

    fn random_complex(ctx: &PerverseContext, rng: &mut ChaCha8Rng, n: i32) -> Complex {
        let alg = ctx.algebra();
        let m = random_module(alg, RandomModuleSpec::default(), rng);
        let k = random_module(alg, RandomModuleSpec::default(), rng);
        let f = random_map(&m, &k, rng);
        Complex::from_map(&m, &k, &f, n).unwrap()
    }

    fn random_heart(ctx: &PerverseContext, rng: &mut ChaCha8Rng) -> HeartObject {
        let c = random_complex(ctx, rng, -1);
        ctx.p_cohomology(&c, 0).unwrap()
    }

    #[test]
    fn membership_examples() {
        let ctx = context(0, 1);
        let alg = ctx.algebra().clone();
        let ctx = PerverseContext::new(TorsionContext::new(Module::simple(&alg, 1)).unwrap());
        let t = Projective::indecomposable(&alg, 0).module().clone();
        let fr = Module::simple(&alg, 1);
        assert_eq!(ctx.p_membership(&Complex::from_module(&t, 0)).unwrap(), (true, true));
        assert_eq!(ctx.p_membership(&Complex::from_module(&fr, -1)).unwrap(), (true, true));
        assert_eq!(ctx.p_membership(&Complex::from_module(&fr, 0)).unwrap(), (false, true));
    }

    #[test]
    fn cohomology_of_heart_objects() {
        let alg = Arc::new(path_algebra(F, Quiver::from_names(&["1", "2"], &[("a", "1", "2")]).unwrap()).unwrap());
        let ctx = PerverseContext::new(TorsionContext::new(Module::simple(&alg, 1)).unwrap());
        let t = Complex::from_module(Projective::indecomposable(&alg, 0).module(), 0);
        let fr = Complex::from_module(&Module::simple(&alg, 1), -1);
        for x in [t, fr] {
            let h = ctx.p_cohomology(&x, 0).unwrap();
            assert!(h.complex().homology_isomorphic(&x).unwrap());
            assert!(ctx.p_cohomology(&x, 1).unwrap().is_zero());
            assert!(ctx.p_cohomology(&x, -1).unwrap().is_zero());
        }
    }

    #[test]
    fn identity_and_zero_maps() {
        let ctx = context(2, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (a, b) = (random_heart(&ctx, &mut rng), random_heart(&ctx, &mut rng));
        let id = ChainMap::identity(a.complex());
        let kc = ctx.heart_kernel_cokernel(&id, &a, &a).unwrap();
        assert!(kc.kernel.is_zero() && kc.cokernel.is_zero());
        let kc = ctx.heart_kernel_cokernel(&ChainMap::zero(), &a, &b).unwrap();
        assert!(kc.kernel.complex().homology_isomorphic(a.complex()).unwrap());
        assert!(kc.cokernel.complex().homology_isomorphic(b.complex()).unwrap());
    }

    #[test]
    fn maps_between_torsion_modules() {
        for which in 0..3 {
            let ctx = context(which, 21);
            let mut rng = ChaCha8Rng::seed_from_u64(which as u64);
            for _ in 0..6 {
                let spec = RandomModuleSpec::default();
                let t1 = ctx.torsion().random_torsion(spec, &mut rng).unwrap();
                let t2 = ctx.torsion().random_torsion(spec, &mut rng).unwrap();
                let f = random_map(&t1, &t2, &mut rng);
                let (a, b) = (Complex::from_module(&t1, 0), Complex::from_module(&t2, 0));
                let g = ChainMap::new(&a, &b, BTreeMap::from([(0, f.clone())])).unwrap();
                let (ha, hb) = (HeartObject::new(a, &ctx).unwrap(), HeartObject::new(b, &ctx).unwrap());
                let kc = ctx.heart_kernel_cokernel(&g, &ha, &hb).unwrap();
                let (k, _) = t1.sub(&f.kernel());
                let (q, _) = t2.quotient(&f.image());
                let tk = ctx.torsion().torsion_subobject(&k).unwrap().torsion;
                let zero = vec![0; t1.dims().len()];
                assert_eq!(kc.kernel.homology_dims(), (zero.clone(), tk.dims().to_vec()));
                assert_eq!(kc.cokernel.homology_dims(), (zero, q.dims().to_vec()));
            }
        }
    }

    #[test]
    fn wrong_support_rejected() {
        let ctx = context(0, 2);
        let m = Projective::indecomposable(ctx.algebra(), 0).module().clone();
        let c = Complex::from_map(&m, &m, &ModuleMap::identity(&m), 0).unwrap();
        assert!(matches!(HeartObject::new(c, &ctx), Err(Error::Precondition(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn truncation_is_a_t_structure(which in 0usize..3, seed in 0u64..10_000, n in -1i32..1) {
            let ctx = context(which, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_complex(&ctx, &mut rng, n);
            let t = ctx.p_truncate(&x).unwrap();
            prop_assert!(ctx.verify_truncation(&x, &t).unwrap());
            let y = random_complex(&ctx, &mut rng, n);
            let ty = ctx.p_truncate(&y).unwrap();
            // Hom(τ^p_{≤0}X, τ^p_{≥1}Y) = 0.
            prop_assert_eq!(rhom(&t.low, &ty.high).unwrap().homology_dim(0), 0);
        }

        #[test]
        fn module_truncation_is_torsion_sequence(which in 0usize..3, seed in 0u64..10_000) {
            let ctx = context(which, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_module(ctx.algebra(), RandomModuleSpec::default(), &mut rng);
            let t = ctx.p_truncate(&Complex::from_module(&a, 0)).unwrap();
            let d = ctx.torsion().torsion_subobject(&a).unwrap();
            prop_assert_eq!(t.low.homology_dim_vector(0), d.torsion.dims().to_vec());
            prop_assert_eq!(t.high.homology_dim_vector(0), d.free.dims().to_vec());
        }

        #[test]
        fn tilted_pair_orthogonal(which in 0usize..3, seed in 0u64..10_000) {
            let ctx = context(which, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let spec = RandomModuleSpec::default();
            let t = ctx.torsion().random_torsion(spec, &mut rng).unwrap();
            let fr = ctx.torsion().random_torsion_free(spec, &mut rng).unwrap();
            let h = rhom(&Complex::from_module(&fr, -1), &Complex::from_module(&t, 0)).unwrap();
            prop_assert_eq!(h.homology_dim(0), 0);
        }

        #[test]
        fn heart_is_abelian(which in 0usize..3, seed in 0u64..10_000) {
            let ctx = context(which, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b) = (random_heart(&ctx, &mut rng), random_heart(&ctx, &mut rng));
            let f = random_chain_map(a.complex(), b.complex(), &mut rng).unwrap();
            let kc = ctx.heart_kernel_cokernel(&f, &a, &b).unwrap();
            prop_assert!(kc.kernel_map.is_chain_map(&kc.kernel_rep, a.complex()));
            prop_assert!(kc.cokernel_map.is_chain_map(b.complex(), &kc.cokernel_rep));
            let (coim, im) = ctx.image_two_ways(&kc, &a, &b).unwrap();
            prop_assert_eq!(coim, im);
        }
    }
}
