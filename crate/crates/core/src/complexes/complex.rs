use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{find_isomorphism, same_algebra, FdAlgebra, Module, ModuleMap, Submodule};
use crate::error::{Error, Result};
use crate::field::{sign, Scalar};
use crate::linalg::{Matrix, Subspace};

/// A bounded cochain complex of modules; `d^n : X^n → X^{n+1}`.
///
/// Only nonzero terms are stored, and a differential only between two
/// nonzero terms.
#[derive(Clone, Debug)]
pub struct Complex {
    alg: Arc<FdAlgebra>,
    zero: Module,
    terms: BTreeMap<i32, Module>,
    diffs: BTreeMap<i32, ModuleMap>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms && self.diffs == other.diffs
    }
}

impl Complex {
    /// Checked constructor: maps must be module maps and `d∘d = 0`.
    pub fn new(alg: &Arc<FdAlgebra>, terms: BTreeMap<i32, Module>, diffs: BTreeMap<i32, ModuleMap>) -> Result<Self> {
        let c = Self::build(alg, terms, diffs);
        for (n, d) in &c.diffs {
            if !d.is_map_between(c.term(*n), c.term(n + 1)) {
                return Err(Error::InvalidComplex(format!("d^{n} is not a module map between the terms")));
            }
        }
        for (n, d) in &c.diffs {
            if let Some(e) = c.diffs.get(&(n + 1)) {
                if !d.compose(e).is_zero() {
                    return Err(Error::InvalidComplex(format!("d^{} ∘ d^{n} ≠ 0", n + 1)));
                }
            }
        }
        Ok(c)
    }

    /// Normalizes without validation; used where the construction guarantees validity.
    pub(crate) fn build(alg: &Arc<FdAlgebra>, terms: BTreeMap<i32, Module>, diffs: BTreeMap<i32, ModuleMap>) -> Self {
        let terms: BTreeMap<i32, Module> = terms.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        let diffs = diffs.into_iter().filter(|(n, _)| terms.contains_key(n) && terms.contains_key(&(n + 1))).collect();
        Complex { alg: alg.clone(), zero: Module::zero(alg), terms, diffs }
    }

    pub fn zero(alg: &Arc<FdAlgebra>) -> Self {
        Self::build(alg, BTreeMap::new(), BTreeMap::new())
    }

    /// `M` placed in degree `n`.
    pub fn from_module(m: &Module, n: i32) -> Self {
        Self::build(m.algebra(), BTreeMap::from([(n, m.clone())]), BTreeMap::new())
    }

    /// Two-term complex `M --f--> N` in degrees `n, n+1`.
    pub fn from_map(m: &Module, n_mod: &Module, f: &ModuleMap, n: i32) -> Result<Self> {
        Self::new(
            m.algebra(),
            BTreeMap::from([(n, m.clone()), (n + 1, n_mod.clone())]),
            BTreeMap::from([(n, f.clone())]),
        )
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra> {
        &self.alg
    }

    pub fn term(&self, n: i32) -> &Module {
        self.terms.get(&n).unwrap_or(&self.zero)
    }

    pub fn terms(&self) -> &BTreeMap<i32, Module> {
        &self.terms
    }

    pub fn diffs(&self) -> &BTreeMap<i32, ModuleMap> {
        &self.diffs
    }

    pub fn diff(&self, n: i32) -> ModuleMap {
        self.diffs.get(&n).cloned().unwrap_or_else(|| ModuleMap::zero(self.term(n), self.term(n + 1)))
    }

    /// Lowest and highest nonzero degree.
    pub fn support(&self) -> Option<(i32, i32)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `X[k]^n = X^{n+k}` with differential `(−1)^k d`.
    pub fn shift(&self, k: i32) -> Complex {
        let s = sign(self.alg.field(), k.rem_euclid(2) == 1);
        let terms = self.terms.iter().map(|(n, m)| (n - k, m.clone())).collect();
        let diffs = self.diffs.iter().map(|(n, d)| (n - k, d.scale(&s))).collect();
        Self::build(&self.alg, terms, diffs)
    }

    pub fn homology(&self, n: i32) -> Homology {
        let x = self.term(n);
        let cycles = self.diff(n).kernel();
        let (z, z_incl) = x.sub(&cycles);
        let prev = self.diff(n - 1);
        let f = self.alg.field();
        let boundaries: Submodule = (0..x.dims().len())
            .map(|v| {
                let img = Subspace::span(f, x.dim_at(v), prev.block(v));
                let rows = img.basis().row_vectors().iter().map(|r| cycles[v].coords(r).expect("d∘d = 0")).collect();
                Subspace::from_vectors(f, cycles[v].dim(), rows)
            })
            .collect();
        let (h, proj) = z.quotient(&boundaries);
        Homology {
            module: h,
            cycles_module: z,
            cycles: cycles.clone(),
            boundaries,
            inclusion: z_incl,
            projection: proj,
        }
    }

    pub fn homology_module(&self, n: i32) -> Module {
        self.homology(n).module
    }

    /// Homology dimension vectors in every degree where they are nonzero.
    pub fn homology_dims(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut out = BTreeMap::new();
        for &n in self.terms.keys() {
            let h = self.homology_dim_vector(n);
            if h.iter().any(|&d| d > 0) {
                out.insert(n, h);
            }
        }
        out
    }

    pub fn homology_dim_vector(&self, n: i32) -> Vec<usize> {
        let x = self.term(n);
        let d = self.diff(n);
        let prev = self.diff(n - 1);
        (0..x.dims().len()).map(|v| x.dim_at(v) - d.block(v).rank() - prev.block(v).rank()).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().is_empty()
    }

    /// Homology concentrated in degrees within `[lo, hi]`.
    pub fn homology_within(&self, lo: i32, hi: i32) -> bool {
        self.homology_dims().keys().all(|&n| lo <= n && n <= hi)
    }

    /// Direct sum with inclusions and projections.
    pub fn direct_sum(alg: &Arc<FdAlgebra>, parts: &[&Complex]) -> (Complex, Vec<ChainMap>, Vec<ChainMap>) {
        let mut degrees: Vec<i32> = parts.iter().flat_map(|c| c.terms.keys().copied()).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut terms = BTreeMap::new();
        let mut incl: Vec<BTreeMap<i32, ModuleMap>> = vec![BTreeMap::new(); parts.len()];
        let mut proj: Vec<BTreeMap<i32, ModuleMap>> = vec![BTreeMap::new(); parts.len()];
        for &n in &degrees {
            let mods: Vec<&Module> = parts.iter().map(|c| c.term(n)).collect();
            let (s, i, p) = Module::direct_sum(alg, &mods);
            terms.insert(n, s);
            for (k, (ik, pk)) in i.into_iter().zip(p).enumerate() {
                incl[k].insert(n, ik);
                proj[k].insert(n, pk);
            }
        }
        let f = alg.field();
        let mut diffs = BTreeMap::new();
        for &n in &degrees {
            let blocks = (0..alg.n_vertices())
                .map(|v| {
                    Matrix::direct_sum(
                        f,
                        &parts
                            .iter()
                            .map(|c| c.diff(n).block(v).clone())
                            .collect::<Vec<_>>()
                            .iter()
                            .collect::<Vec<_>>(),
                    )
                })
                .collect();
            diffs.insert(n, ModuleMap::from_blocks(alg.clone(), blocks));
        }
        let sum = Self::build(alg, terms, diffs);
        let wrap = |maps: Vec<BTreeMap<i32, ModuleMap>>| maps.into_iter().map(ChainMap::from_components).collect();
        (sum, wrap(incl), wrap(proj))
    }

    /// The subcomplex given by a `d`-stable family of submodules.
    pub fn subcomplex(&self, u: &BTreeMap<i32, Submodule>) -> (Complex, ChainMap) {
        let mut terms = BTreeMap::new();
        let mut incl = BTreeMap::new();
        let full = |n: i32| u.get(&n).cloned().unwrap_or_else(|| self.term(n).zero_submodule());
        for &n in self.terms.keys() {
            let (m, i) = self.term(n).sub(&full(n));
            terms.insert(n, m);
            incl.insert(n, i);
        }
        let diffs = self.diffs.iter().map(|(n, d)| (*n, d.restrict(&full(*n), &full(n + 1)))).collect();
        (Self::build(&self.alg, terms, diffs), ChainMap::from_components(incl))
    }

    /// The quotient by a `d`-stable family of submodules.
    pub fn quotient(&self, u: &BTreeMap<i32, Submodule>) -> (Complex, ChainMap) {
        let mut terms = BTreeMap::new();
        let mut proj = BTreeMap::new();
        let full = |n: i32| u.get(&n).cloned().unwrap_or_else(|| self.term(n).zero_submodule());
        for &n in self.terms.keys() {
            let (m, p) = self.term(n).quotient(&full(n));
            terms.insert(n, m);
            proj.insert(n, p);
        }
        let f = self.alg.field();
        let mut diffs = BTreeMap::new();
        for (n, d) in &self.diffs {
            let us = full(*n);
            let pn = &proj[&(n + 1)];
            let blocks = (0..self.alg.n_vertices())
                .map(|v| {
                    let rows: Vec<_> =
                        us[v].complement_indices().into_iter().map(|c| pn.apply(v, d.block(v).row(c))).collect();
                    Matrix::from_rows(f, pn.block(v).cols(), rows)
                })
                .collect();
            diffs.insert(*n, ModuleMap::from_blocks(self.alg.clone(), blocks));
        }
        (Self::build(&self.alg, terms, diffs), ChainMap::from_components(proj))
    }

    /// Degreewise isomorphism of all homology modules.
    pub fn homology_isomorphic(&self, other: &Complex) -> Result<bool> {
        let mut degrees: Vec<i32> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        degrees.sort_unstable();
        degrees.dedup();
        for n in degrees {
            let (a, b) = (self.homology_module(n), other.homology_module(n));
            if find_isomorphism(&a, &b)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Verifies the stored maps again (used after deserialization and in tests).
    pub fn validate(&self) -> Result<()> {
        Complex::new(&self.alg, self.terms.clone(), self.diffs.clone()).map(|_| ())
    }
}

/// `H^n = Z^n / B^n` with its witnesses.
#[derive(Clone, Debug)]
pub struct Homology {
    pub module: Module,
    pub cycles_module: Module,
    /// `Z^n ⊆ X^n`.
    pub cycles: Submodule,
    /// `B^n ⊆ Z^n`, in cycle coordinates.
    pub boundaries: Submodule,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

/// A strict chain map; missing components are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    components: BTreeMap<i32, ModuleMap>,
}

impl ChainMap {
    pub fn new(src: &Complex, dst: &Complex, components: BTreeMap<i32, ModuleMap>) -> Result<Self> {
        let f = ChainMap::from_components(components);
        if !f.is_chain_map(src, dst) {
            return Err(Error::InvalidMap("components do not commute with the differentials".into()));
        }
        Ok(f)
    }

    pub(crate) fn from_components(components: BTreeMap<i32, ModuleMap>) -> Self {
        ChainMap { components: components.into_iter().filter(|(_, m)| !m.is_zero()).collect() }
    }

    pub fn identity(c: &Complex) -> Self {
        Self::from_components(c.terms.iter().map(|(n, m)| (*n, ModuleMap::identity(m))).collect())
    }

    pub fn zero() -> Self {
        ChainMap { components: BTreeMap::new() }
    }

    pub fn component(&self, src: &Complex, dst: &Complex, n: i32) -> ModuleMap {
        self.components.get(&n).cloned().unwrap_or_else(|| ModuleMap::zero(src.term(n), dst.term(n)))
    }

    pub fn components(&self) -> &BTreeMap<i32, ModuleMap> {
        &self.components
    }

    pub fn is_chain_map(&self, src: &Complex, dst: &Complex) -> bool {
        let mut degrees: Vec<i32> = src.terms.keys().chain(dst.terms.keys()).copied().collect();
        degrees.sort_unstable();
        degrees.dedup();
        for &n in &degrees {
            let f = self.component(src, dst, n);
            if !f.is_map_between(src.term(n), dst.term(n)) {
                return false;
            }
            let lhs = src.diff(n).compose(&self.component(src, dst, n + 1));
            let rhs = f.compose(&dst.diff(n));
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &ChainMap) -> ChainMap {
        Self::from_components(
            self.components.iter().filter_map(|(n, f)| then.components.get(n).map(|g| (*n, f.compose(g)))).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Induced map `H^n(src) → H^n(dst)`.
    pub fn on_homology(&self, src: &Complex, dst: &Complex, n: i32) -> ModuleMap {
        let hs = src.homology(n);
        let hd = dst.homology(n);
        let f = src.algebra().field();
        let comp = self.component(src, dst, n);
        let blocks = (0..src.algebra().n_vertices())
            .map(|v| {
                let rows: Vec<_> = hs.boundaries[v]
                    .complement_indices()
                    .into_iter()
                    .map(|c| {
                        // Lift a homology basis vector to a cycle, push it forward, and project.
                        let cycle = hs.cycles[v].basis().row(c).to_vec();
                        let img = comp.apply(v, &cycle);
                        let z = hd.cycles[v].coords(&img).expect("chain maps send cycles to cycles");
                        hd.projection.apply(v, &z)
                    })
                    .collect();
                Matrix::from_rows(f, hd.module.dim_at(v), rows)
            })
            .collect();
        ModuleMap::from_blocks(src.algebra().clone(), blocks)
    }

    pub fn is_quasi_isomorphism(&self, src: &Complex, dst: &Complex) -> bool {
        let mut degrees: Vec<i32> = src.terms.keys().chain(dst.terms.keys()).copied().collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees.into_iter().all(|n| self.on_homology(src, dst, n).is_iso())
    }
}

/// Basis of the space of strict chain maps `X → Y`.
pub fn chain_maps(x: &Complex, y: &Complex) -> Result<Vec<ChainMap>> {
    let alg = x.algebra();
    let f = alg.field();
    let degrees: Vec<i32> = x.terms.keys().filter(|n| y.terms.contains_key(n)).copied().collect();
    let mut candidates: Vec<(i32, ModuleMap)> = Vec::new();
    for &n in &degrees {
        for h in crate::algebra::hom_space(x.term(n), y.term(n))? {
            candidates.push((n, h));
        }
    }
    if candidates.is_empty() {
        return Ok(Vec::new());
    }
    // Defect d_X φ − φ d_Y, flattened over all affected degrees.
    let mut defect_degrees: Vec<i32> = degrees.iter().flat_map(|&n| [n - 1, n]).collect();
    defect_degrees.sort_unstable();
    defect_degrees.dedup();
    let rows: Vec<Vec<Scalar>> = candidates
        .iter()
        .map(|(n, phi)| {
            let mut out = Vec::new();
            for &k in &defect_degrees {
                let m = if k == n - 1 {
                    x.diff(k).compose(phi)
                } else if k == *n {
                    phi.compose(&y.diff(k)).neg()
                } else {
                    ModuleMap::zero(x.term(k), y.term(k + 1))
                };
                for b in m.blocks() {
                    for r in 0..b.rows() {
                        out.extend_from_slice(b.row(r));
                    }
                }
            }
            out
        })
        .collect();
    let width = rows[0].len();
    let solutions = crate::linalg::left_kernel(&Matrix::from_rows(f, width, rows));
    Ok(solutions
        .basis()
        .row_vectors()
        .into_iter()
        .map(|coef| {
            let mut comps: BTreeMap<i32, ModuleMap> = BTreeMap::new();
            for ((n, phi), c) in candidates.iter().zip(&coef) {
                if c.is_zero() {
                    continue;
                }
                let term = phi.scale(c);
                let next = match comps.get(n) {
                    Some(prev) => prev.add(&term),
                    None => term,
                };
                comps.insert(*n, next);
            }
            ChainMap::from_components(comps)
        })
        .collect())
}

/// A random linear combination of [`chain_maps`].
pub fn random_chain_map<R: rand::Rng + ?Sized>(x: &Complex, y: &Complex, rng: &mut R) -> Result<ChainMap> {
    let basis = chain_maps(x, y)?;
    let f = x.algebra().field();
    let mut comps: BTreeMap<i32, ModuleMap> = BTreeMap::new();
    for g in &basis {
        let c = f.random(rng);
        for (n, m) in g.components() {
            let term = m.scale(&c);
            let next = match comps.get(n) {
                Some(prev) => prev.add(&term),
                None => term,
            };
            comps.insert(*n, next);
        }
    }
    Ok(ChainMap::from_components(comps))
}

/// A distinguished triangle `A → B → C → A[1]` with `C = cone(f)`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub f: ChainMap,
    pub g: ChainMap,
    pub h: ChainMap,
}

/// Mapping cone: `cone(f)^n = A^{n+1} ⊕ B^n`, `d(a, b) = (−d_A a, f a + d_B b)`.
pub fn cone(f: &ChainMap, a: &Complex, b: &Complex) -> Triangle {
    let alg = a.algebra();
    let fld = alg.field();
    let mut degrees: Vec<i32> = a.terms.keys().map(|n| n - 1).chain(b.terms.keys().copied()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut terms = BTreeMap::new();
    let mut g = BTreeMap::new();
    let mut h = BTreeMap::new();
    let mut sums = BTreeMap::new();
    for &n in &degrees {
        let (s, i, p) = Module::direct_sum(alg, &[a.term(n + 1), b.term(n)]);
        terms.insert(n, s);
        g.insert(n, i[1].clone());
        h.insert(n, p[0].clone());
        sums.insert(n, (a.term(n + 1).dims().to_vec(), b.term(n).dims().to_vec()));
    }
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        if !terms.contains_key(&(n + 1)) {
            continue;
        }
        let da = a.diff(n + 1).neg();
        let fa = f.component(a, b, n + 1);
        let db = b.diff(n);
        let blocks = (0..alg.n_vertices())
            .map(|v| {
                let (ra, rb) = (sums[&n].0[v], sums[&n].1[v]);
                let (ca, cb) = (sums[&(n + 1)].0[v], sums[&(n + 1)].1[v]);
                let mut m = Matrix::zeros(fld, ra + rb, ca + cb);
                m.put(0, 0, da.block(v));
                m.put(0, ca, fa.block(v));
                m.put(ra, ca, db.block(v));
                m
            })
            .collect();
        diffs.insert(n, ModuleMap::from_blocks(alg.clone(), blocks));
    }
    let c = Complex::build(alg, terms, diffs);
    // h lands in A[1]^n = A^{n+1}.
    Triangle {
        a: a.clone(),
        b: b.clone(),
        c,
        f: f.clone(),
        g: ChainMap::from_components(g),
        h: ChainMap::from_components(h),
    }
}

/// Standard truncation `τ≤n C = (… → C^{n−1} → ker d^n)` and the quotient
/// `C / τ≤n C`, which represents `τ≥n+1 C`.
pub fn std_truncate(c: &Complex, n: i32) -> (Complex, Complex, Triangle) {
    let mut u = BTreeMap::new();
    for (&k, m) in c.terms() {
        if k < n {
            u.insert(k, m.full_submodule());
        } else if k == n {
            u.insert(k, c.diff(n).kernel());
        }
    }
    let (low, incl) = c.subcomplex(&u);
    let (high, _) = c.quotient(&u);
    let tri = cone(&incl, &low, c);
    (low, high, tri)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Projective, Quiver};
    use crate::field::Field;

    const F: Field = Field::Prime(32003);

    fn a2() -> Arc<FdAlgebra> {
        Arc::new(path_algebra(F, Quiver::from_names(&["1", "2"], &[("a", "1", "2")]).unwrap()).unwrap())
    }

    #[test]
    fn module_in_degree_zero() {
        let alg = a2();
        let p = Projective::indecomposable(&alg, 0);
        let c = Complex::from_module(p.module(), 0);
        assert_eq!(c.homology_dims(), BTreeMap::from([(0, vec![1, 1])]));
        assert_eq!(c.homology_module(0), *p.module());
        assert!(c.homology_module(1).is_zero());
    }

    #[test]
    fn identity_complex_is_acyclic() {
        let alg = a2();
        let m = Projective::indecomposable(&alg, 0).module().clone();
        let c = Complex::from_map(&m, &m, &ModuleMap::identity(&m), -1).unwrap();
        assert!(c.is_acyclic());
    }

    #[test]
    fn cone_of_identity_and_zero() {
        let alg = a2();
        let m = Projective::indecomposable(&alg, 0).module().clone();
        let a = Complex::from_module(&m, 0);
        let t = cone(&ChainMap::identity(&a), &a, &a);
        assert!(t.c.is_acyclic());
        assert!(t.g.is_chain_map(&t.b, &t.c));
        assert!(t.h.is_chain_map(&t.c, &t.a.shift(1)));
        let s = Module::simple(&alg, 1);
        let b = Complex::from_module(&s, 0);
        let t0 = cone(&ChainMap::zero(), &a, &b);
        let (expected, _, _) = Complex::direct_sum(&alg, &[&a.shift(1), &b]);
        assert_eq!(t0.c.homology_dims(), expected.homology_dims());
    }

    #[test]
    fn bad_differential_rejected() {
        let alg = a2();
        let m = Projective::indecomposable(&alg, 0).module().clone();
        let id = ModuleMap::identity(&m);
        let terms = BTreeMap::from([(0, m.clone()), (1, m.clone()), (2, m.clone())]);
        let diffs = BTreeMap::from([(0, id.clone()), (1, id)]);
        assert!(matches!(Complex::new(&alg, terms, diffs), Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn truncation_edge_cases() {
        let alg = a2();
        let m = Projective::indecomposable(&alg, 0).module().clone();
        let c = Complex::from_module(&m, 0);
        let (lo, hi, _) = std_truncate(&c, 3);
        assert_eq!(lo.homology_dims(), c.homology_dims());
        assert!(hi.is_acyclic());
        let (lo, hi, _) = std_truncate(&c, -1);
        assert!(lo.is_zero());
        assert_eq!(hi.homology_dims(), c.homology_dims());
    }
}
