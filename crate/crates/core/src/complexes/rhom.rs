use std::collections::BTreeMap;
use std::sync::Arc;

use super::complex::Complex;
use super::replace::{proj_replace, ProjReplacement};
use crate::algebra::{FdAlgebra, Module};
use crate::error::{Error, Result};
use crate::field::{sign, Field};
use crate::linalg::Matrix;

/// A bounded complex of vector spaces, row convention: `d^n` is `dim^n × dim^{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VsComplex {
    field: Field,
    dims: BTreeMap<i32, usize>,
    diffs: BTreeMap<i32, Matrix>,
}

impl VsComplex {
    pub fn new(field: Field, dims: BTreeMap<i32, usize>, diffs: BTreeMap<i32, Matrix>) -> Result<Self> {
        let dims: BTreeMap<i32, usize> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        let dim = |n: i32| dims.get(&n).copied().unwrap_or(0);
        let diffs: BTreeMap<i32, Matrix> = diffs.into_iter().filter(|(n, _)| dim(*n) > 0 && dim(n + 1) > 0).collect();
        for (n, d) in &diffs {
            if d.rows() != dim(*n) || d.cols() != dim(n + 1) {
                return Err(Error::DimensionMismatch(format!("d^{n} has shape {}×{}", d.rows(), d.cols())));
            }
            if let Some(e) = diffs.get(&(n + 1)) {
                if !d.mul(e).is_zero() {
                    return Err(Error::InvalidComplex(format!("d^{} ∘ d^{n} ≠ 0", n + 1)));
                }
            }
        }
        Ok(VsComplex { field, dims, diffs })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn diff(&self, n: i32) -> Matrix {
        self.diffs.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(self.field, self.dim(n), self.dim(n + 1)))
    }

    fn diff_rank(&self, n: i32) -> usize {
        self.diffs.get(&n).map_or(0, Matrix::rank)
    }

    /// Nonzero homology dimensions.
    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        self.dims
            .iter()
            .map(|(&n, &d)| (n, d - self.diff_rank(n) - self.diff_rank(n - 1)))
            .filter(|(_, h)| *h > 0)
            .collect()
    }

    pub fn homology_dim(&self, n: i32) -> usize {
        self.dim(n) - self.diff_rank(n) - self.diff_rank(n - 1)
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|(&n, &d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    /// The same complex as a complex of modules over the one-vertex algebra `k`.
    pub fn to_complex(&self, k: &Arc<FdAlgebra>) -> Result<Complex> {
        if k.n_vertices() != 1 || k.n_arrows() != 0 {
            return Err(Error::AlgebraMismatch);
        }
        let space = |d: usize| Module::new(k.clone(), vec![d], Vec::new());
        let terms = self.dims.iter().map(|(n, d)| Ok((*n, space(*d)?))).collect::<Result<_>>()?;
        let diffs = self
            .diffs
            .iter()
            .map(|(n, d)| (*n, crate::algebra::ModuleMap::from_blocks(k.clone(), vec![d.clone()])))
            .collect();
        Complex::new(k, terms, diffs)
    }
}

/// Position of the `Hom(P^i, B^{i+n})` summand inside `Hom^n`, and of each generator within it.
#[allow(dead_code)]
pub(crate) struct HomLayout {
    /// `(i, generator offsets, block start)` per source degree.
    pub blocks: Vec<(i32, Vec<usize>, usize)>,
    pub total: usize,
}

pub(crate) fn hom_layout(p: &ProjReplacement, b: &Complex, n: i32) -> HomLayout {
    let mut blocks = Vec::new();
    let mut acc = 0;
    for (&i, proj) in &p.projectives {
        let target = b.term(i + n);
        let start = acc;
        let offs = proj
            .gens()
            .iter()
            .map(|&g| {
                let o = acc;
                acc += target.dim_at(g);
                o
            })
            .collect();
        blocks.push((i, offs, start));
    }
    HomLayout { blocks, total: acc }
}

/// `RHom(A, B)` as the total Hom complex `Hom^•(P, B)` for a projective replacement `P → A`.
pub fn rhom(a: &Complex, b: &Complex) -> Result<VsComplex> {
    let p = proj_replace(a)?;
    rhom_with(&p, b)
}

/// [`rhom`] reusing a replacement of the first argument.
///
/// `Hom^n = ⊕_i Hom(P^i, B^{i+n})`, `d φ = d_B φ − (−1)^n φ d_P`.
pub fn rhom_with(p: &ProjReplacement, b: &Complex) -> Result<VsComplex> {
    let alg = b.algebra();
    if !crate::algebra::same_algebra(p.complex.algebra(), alg) {
        return Err(Error::AlgebraMismatch);
    }
    let f = alg.field();
    let (Some((plo, phi)), Some((blo, bhi))) = (p.complex.support(), b.support()) else {
        return VsComplex::new(f, BTreeMap::new(), BTreeMap::new());
    };
    let (lo, hi) = (blo - phi, bhi - plo);
    let layouts: BTreeMap<i32, HomLayout> = (lo..=hi + 1).map(|n| (n, hom_layout(p, b, n))).collect();
    let mut dims = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in lo..=hi {
        let src = &layouts[&n];
        let dst = &layouts[&(n + 1)];
        dims.insert(n, src.total);
        if src.total == 0 || dst.total == 0 {
            continue;
        }
        let mut m = Matrix::zeros(f, src.total, dst.total);
        let s = sign(f, n.rem_euclid(2) == 0);
        for (bi, (i, offs, start)) in src.blocks.iter().enumerate() {
            let proj = &p.projectives[i];
            let db = b.diff(i + n);
            for (k, &g) in proj.gens().iter().enumerate() {
                let blk = db.block(g);
                m.put(offs[k], dst.blocks[bi].1[k], blk);
            }
            // φ ∘ d_P^{i−1} lands in the block of degree i − 1.
            if let (Some(prev), Some(dpi)) = (p.projectives.get(&(i - 1)), p.complex.diffs().get(&(i - 1))) {
                let target = b.term(i + n);
                let di = dst.blocks.iter().find(|(j, _, _)| *j == i - 1).expect("layout covers every degree");
                let width: usize = proj.gens().iter().map(|&g| target.dim_at(g)).sum();
                for (l, &w) in prev.gens().iter().enumerate() {
                    let x = dpi.apply(w, &prev.generator(l));
                    let ev = proj.evaluation_matrix(target, w, &x).scale(&s);
                    let cur = m.submatrix(*start, width, di.1[l], ev.cols()).add(&ev);
                    m.put(*start, di.1[l], &cur);
                }
            }
        }
        diffs.insert(n, m);
    }
    VsComplex::new(f, dims, diffs)
}

/// `dim Ext^i(M, N)` for modules, as a map from `i` to nonzero dimensions.
pub fn ext_dims(m: &Module, n: &Module) -> Result<BTreeMap<i32, usize>> {
    Ok(rhom(&Complex::from_module(m, 0), &Complex::from_module(n, 0))?.homology_dims())
}
