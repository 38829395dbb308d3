use std::sync::Arc;

use super::fd::FdAlgebra;
use super::module::{Module, ModuleMap};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};

/// A free module `⊕_k e_{g_k} Λ` with its generator list.
///
/// Coordinates at vertex `j` run over pairs `(k, b)` with `k` a generator and
/// `b` a basis path from `g_k` to `j`, generators outermost.
#[derive(Clone, Debug, PartialEq)]
pub struct Projective {
    module: Module,
    gens: Vec<usize>,
    /// `coords[j]` lists `(k, b)` in coordinate order.
    coords: Vec<Vec<(usize, usize)>>,
}

impl Projective {
    pub fn new(alg: &Arc<FdAlgebra>, gens: Vec<usize>) -> Self {
        let f = alg.field();
        let nv = alg.n_vertices();
        let coords: Vec<Vec<(usize, usize)>> = (0..nv)
            .map(|j| {
                gens.iter()
                    .enumerate()
                    .flat_map(|(k, &g)| alg.basis_between(g, j).into_iter().map(move |b| (k, b)))
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = coords.iter().map(Vec::len).collect();
        let action = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let mut m = Matrix::zeros(f, dims[arr.src], dims[arr.dst]);
                for (r, &(k, b)) in coords[arr.src].iter().enumerate() {
                    for (t, c) in alg.times_arrow(&vec![(b, f.one())], a) {
                        let col = coords[arr.dst].iter().position(|&x| x == (k, t)).expect("target coordinate");
                        m.set(r, col, c);
                    }
                }
                m
            })
            .collect();
        let module = Module::new(alg.clone(), dims, action).expect("free modules satisfy relations");
        Projective { module, gens, coords }
    }

    /// The indecomposable projective `e_v Λ`.
    pub fn indecomposable(alg: &Arc<FdAlgebra>, v: usize) -> Self {
        Self::new(alg, vec![v])
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn coords(&self, v: usize) -> &[(usize, usize)] {
        &self.coords[v]
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Coordinate vector of generator `k` (at vertex `gens[k]`).
    pub fn generator(&self, k: usize) -> Vec<Scalar> {
        let alg = self.module.algebra();
        let f = alg.field();
        let v = self.gens[k];
        let e = alg.idempotent(v);
        let mut x = vec![f.zero(); self.module.dim_at(v)];
        let pos = self.coords[v].iter().position(|&c| c == (k, e)).expect("generator coordinate");
        x[pos] = f.one();
        x
    }

    /// The map sending generator `k` to `images[k] ∈ target_{gens[k]}`.
    pub fn map_from_images(&self, target: &Module, images: &[Vec<Scalar>]) -> Result<ModuleMap> {
        self.module.check_same_algebra(target)?;
        if images.len() != self.gens.len() {
            return Err(Error::DimensionMismatch("one image per generator expected".into()));
        }
        for (k, img) in images.iter().enumerate() {
            if img.len() != target.dim_at(self.gens[k]) {
                return Err(Error::DimensionMismatch(format!("image of generator {k} has the wrong length")));
            }
        }
        let f = target.field();
        let blocks = (0..self.coords.len())
            .map(|j| {
                let rows = self.coords[j].iter().map(|&(k, b)| target.act(&images[k], b)).collect();
                Matrix::from_rows(f, target.dim_at(j), rows)
            })
            .collect();
        Ok(ModuleMap::from_blocks(self.module.algebra().clone(), blocks))
    }

    /// Images of the generators under a map out of this module.
    pub fn generator_images(&self, f: &ModuleMap) -> Vec<Vec<Scalar>> {
        (0..self.gens.len()).map(|k| f.apply(self.gens[k], &self.generator(k))).collect()
    }

    /// Matrix of `Hom(P, N) → N_{v}`-evaluation at an element: given
    /// `x ∈ P_j`, returns the map `⊕_k N_{g_k} → N_j`, `(φ_k) ↦ φ(x)`.
    pub fn evaluation_matrix(&self, target: &Module, j: usize, x: &[Scalar]) -> Matrix {
        let f = target.field();
        let total: usize = self.gens.iter().map(|&g| target.dim_at(g)).sum();
        let mut out = Matrix::zeros(f, total, target.dim_at(j));
        let mut offs = Vec::with_capacity(self.gens.len());
        let mut acc = 0;
        for &g in &self.gens {
            offs.push(acc);
            acc += target.dim_at(g);
        }
        for (pos, &(k, b)) in self.coords[j].iter().enumerate() {
            let c = &x[pos];
            if c.is_zero() {
                continue;
            }
            let block = target.path_action(b).scale(c);
            let cur = out.submatrix(offs[k], block.rows(), 0, block.cols()).add(&block);
            out.put(offs[k], 0, &cur);
        }
        out
    }
}

/// Projective cover `P → M`: generators are lifts of a basis of `M / rad M`.
pub fn projective_cover(m: &Module) -> (Projective, ModuleMap) {
    let rad = m.radical();
    projective_cover_modulo(m, &rad)
}

/// Free module on the standard vectors complementary to `U`, mapped into `M`.
/// With `U = rad M` this is the projective cover.
pub(crate) fn projective_cover_modulo(m: &Module, u: &[Subspace]) -> (Projective, ModuleMap) {
    let f = m.field();
    let mut gens = Vec::new();
    let mut images = Vec::new();
    for (v, s) in u.iter().enumerate() {
        for c in s.complement_indices() {
            gens.push(v);
            let mut e = vec![f.zero(); m.dim_at(v)];
            e[c] = f.one();
            images.push(e);
        }
    }
    let p = Projective::new(m.algebra(), gens);
    let map = p.map_from_images(m, &images).expect("images sized by construction");
    (p, map)
}
