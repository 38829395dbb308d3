use std::sync::Arc;

use super::fd::FdAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{left_kernel, Matrix, Subspace};

/// A submodule, given by one subspace per vertex.
pub type Submodule = Vec<Subspace>;

pub fn same_algebra(a: &Arc<FdAlgebra>, b: &Arc<FdAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A finite-dimensional right module, as a representation: one matrix per
/// arrow `a: i → j`, of shape `dims[i] × dims[j]`, acting on row vectors.
#[derive(Clone, Debug)]
pub struct Module {
    alg: Arc<FdAlgebra>,
    dims: Vec<usize>,
    action: Vec<Matrix>,
    path_action: Vec<Matrix>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.dims == other.dims && self.action == other.action
    }
}

impl Module {
    pub fn new(alg: Arc<FdAlgebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.n_vertices() || action.len() != q.arrows().len() {
            return Err(Error::InvalidModule("wrong number of vertices or arrows".into()));
        }
        for (a, m) in q.arrows().iter().zip(&action) {
            if m.rows() != dims[a.src] || m.cols() != dims[a.dst] || m.field() != alg.field() {
                return Err(Error::InvalidModule(format!("matrix for {:?} has the wrong shape", a.name)));
            }
        }
        let path_action = alg
            .basis()
            .iter()
            .map(|p| p.arrows.iter().fold(Matrix::identity(alg.field(), dims[p.src]), |acc, &a| acc.mul(&action[a])))
            .collect();
        let m = Module { alg, dims, action, path_action };
        for (b, a, nf) in m.alg.rewriting_relations() {
            let lhs = m.path_action[b].mul(&m.action[a]);
            let p = &m.alg.basis()[b];
            let dst = m.alg.quiver().arrows()[a].dst;
            let mut rhs = Matrix::zeros(m.field(), m.dims[p.src], m.dims[dst]);
            for (t, c) in &nf {
                rhs = rhs.add(&m.path_action[*t].scale(c));
            }
            if lhs != rhs {
                let label = m.alg.quiver().path_label(&p.then(m.alg.quiver(), a).unwrap());
                return Err(Error::InvalidModule(format!("relation at {label} fails")));
            }
        }
        Ok(m)
    }

    pub fn zero(alg: &Arc<FdAlgebra>) -> Self {
        let dims = vec![0; alg.n_vertices()];
        Self::from_dims_unit(alg, dims)
    }

    fn from_dims_unit(alg: &Arc<FdAlgebra>, dims: Vec<usize>) -> Self {
        let f = alg.field();
        let action = alg.quiver().arrows().iter().map(|a| Matrix::zeros(f, dims[a.src], dims[a.dst])).collect();
        Module::new(alg.clone(), dims, action).expect("zero actions satisfy every relation")
    }

    /// The simple module at vertex `v`.
    pub fn simple(alg: &Arc<FdAlgebra>, v: usize) -> Self {
        let mut dims = vec![0; alg.n_vertices()];
        dims[v] = 1;
        Self::from_dims_unit(alg, dims)
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.action[arrow]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of the basis path `b`, from the vertex space at its source to its target.
    pub fn path_action(&self, b: usize) -> &Matrix {
        &self.path_action[b]
    }

    pub fn check_same_algebra(&self, other: &Module) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Direct sum with canonical inclusions and projections.
    pub fn direct_sum(alg: &Arc<FdAlgebra>, parts: &[&Module]) -> (Module, Vec<ModuleMap>, Vec<ModuleMap>) {
        let f = alg.field();
        let n = alg.n_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let action = (0..alg.n_arrows())
            .map(|a| Matrix::direct_sum(f, &parts.iter().map(|m| &m.action[a]).collect::<Vec<_>>()))
            .collect();
        let sum = Module::new(alg.clone(), dims.clone(), action).expect("direct sum of modules");
        let mut offsets = vec![0usize; n];
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        for m in parts {
            let mut ib = Vec::new();
            let mut pb = Vec::new();
            for v in 0..n {
                let mut i = Matrix::zeros(f, m.dims[v], dims[v]);
                i.put(0, offsets[v], &Matrix::identity(f, m.dims[v]));
                pb.push(i.transpose());
                ib.push(i);
                offsets[v] += m.dims[v];
            }
            incl.push(ModuleMap::from_blocks(alg.clone(), ib));
            proj.push(ModuleMap::from_blocks(alg.clone(), pb));
        }
        (sum, incl, proj)
    }

    /// The vector-space dual, a right module over the opposite algebra.
    pub fn dual(&self, op: &Arc<FdAlgebra>) -> Module {
        let action = self.action.iter().map(Matrix::transpose).collect();
        Module::new(op.clone(), self.dims.clone(), action).expect("dual of a module is a module")
    }

    /// `v · basis[b]` for `v` in the vertex space at the source of `b`.
    pub fn act(&self, v: &[Scalar], b: usize) -> Vec<Scalar> {
        self.path_action[b].apply_row(v)
    }

    pub fn zero_submodule(&self) -> Submodule {
        self.dims.iter().map(|&d| Subspace::zero(self.field(), d)).collect()
    }

    pub fn full_submodule(&self) -> Submodule {
        self.dims.iter().map(|&d| Subspace::full(self.field(), d)).collect()
    }

    pub fn is_submodule(&self, u: &Submodule) -> bool {
        u.len() == self.dims.len()
            && u.iter().zip(&self.dims).all(|(s, &d)| s.ambient_dim() == d)
            && self
                .alg
                .quiver()
                .arrows()
                .iter()
                .enumerate()
                .all(|(a, arr)| u[arr.dst].contains_space(&u[arr.src].image_under(&self.action[a])))
    }

    /// Submodule generated by elements `(vertex, vector)`.
    pub fn generated(&self, elems: &[(usize, Vec<Scalar>)]) -> Submodule {
        let f = self.field();
        let mut rows: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); self.dims.len()];
        for (v, x) in elems {
            for (b, p) in self.alg.basis().iter().enumerate() {
                if p.src == *v {
                    rows[p.dst].push(self.act(x, b));
                }
            }
        }
        rows.into_iter().zip(&self.dims).map(|(r, &d)| Subspace::from_vectors(f, d, r)).collect()
    }

    /// The radical `M·rad Λ`, spanned by images of arrows.
    pub fn radical(&self) -> Submodule {
        let f = self.field();
        let mut parts: Vec<Subspace> = self.dims.iter().map(|&d| Subspace::zero(f, d)).collect();
        for (a, arr) in self.alg.quiver().arrows().iter().enumerate() {
            let img = Subspace::span(f, self.dims[arr.dst], &self.action[a]);
            parts[arr.dst] = parts[arr.dst].sum(&img);
        }
        parts
    }

    /// The submodule as a module, with its inclusion.
    pub fn sub(&self, u: &Submodule) -> (Module, ModuleMap) {
        debug_assert!(self.is_submodule(u), "not a submodule");
        let f = self.field();
        let dims: Vec<usize> = u.iter().map(Subspace::dim).collect();
        let action = self
            .alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let img = u[arr.src].basis().mul(&self.action[a]);
                let rows =
                    img.row_vectors().iter().map(|r| u[arr.dst].coords(r).expect("submodule is closed")).collect();
                Matrix::from_rows(f, dims[arr.dst], rows)
            })
            .collect();
        let m = Module::new(self.alg.clone(), dims, action).expect("submodule");
        let incl = ModuleMap::from_blocks(self.alg.clone(), u.iter().map(|s| s.basis().clone()).collect());
        (m, incl)
    }

    /// The quotient `M/U` with its projection. The quotient's basis at each
    /// vertex is the image of the standard vectors at `U`'s non-pivot columns.
    pub fn quotient(&self, u: &Submodule) -> (Module, ModuleMap) {
        debug_assert!(self.is_submodule(u), "not a submodule");
        let f = self.field();
        let comps: Vec<Vec<usize>> = u.iter().map(Subspace::complement_indices).collect();
        let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
        let project = |v: usize, x: &[Scalar]| -> Vec<Scalar> {
            let r = u[v].reduce(x);
            comps[v].iter().map(|&c| r[c].clone()).collect()
        };
        let action = self
            .alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let rows = comps[arr.src].iter().map(|&c| project(arr.dst, self.action[a].row(c))).collect();
                Matrix::from_rows(f, dims[arr.dst], rows)
            })
            .collect();
        let q = Module::new(self.alg.clone(), dims.clone(), action).expect("quotient module");
        let blocks = (0..self.dims.len())
            .map(|v| {
                let rows = (0..self.dims[v])
                    .map(|r| {
                        let mut e = vec![f.zero(); self.dims[v]];
                        e[r] = f.one();
                        project(v, &e)
                    })
                    .collect();
                Matrix::from_rows(f, dims[v], rows)
            })
            .collect();
        (q, ModuleMap::from_blocks(self.alg.clone(), blocks))
    }

    /// Lifts a quotient vector back along [`Module::quotient`]'s complement.
    pub fn lift_from_quotient(u: &Subspace, q: &[Scalar]) -> Vec<Scalar> {
        let f = u.field();
        let mut out = vec![f.zero(); u.ambient_dim()];
        for (x, c) in q.iter().zip(u.complement_indices()) {
            out[c] = x.clone();
        }
        out
    }
}

/// A module homomorphism, one block per vertex (`dim M_i × dim N_i`, row convention).
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    alg: Arc<FdAlgebra>,
    blocks: Vec<Matrix>,
}

impl ModuleMap {
    /// Checked constructor: verifies shapes and the intertwining equations.
    pub fn new(src: &Module, dst: &Module, blocks: Vec<Matrix>) -> Result<Self> {
        src.check_same_algebra(dst)?;
        let f = ModuleMap::from_blocks(src.alg.clone(), blocks);
        if !f.is_map_between(src, dst) {
            return Err(Error::InvalidMap("blocks do not intertwine the arrow actions".into()));
        }
        Ok(f)
    }

    pub(crate) fn from_blocks(alg: Arc<FdAlgebra>, blocks: Vec<Matrix>) -> Self {
        ModuleMap { alg, blocks }
    }

    pub fn identity(m: &Module) -> Self {
        let f = m.field();
        Self::from_blocks(m.alg.clone(), m.dims.iter().map(|&d| Matrix::identity(f, d)).collect())
    }

    pub fn zero(src: &Module, dst: &Module) -> Self {
        let f = src.field();
        let blocks = src.dims.iter().zip(&dst.dims).map(|(&a, &b)| Matrix::zeros(f, a, b)).collect();
        Self::from_blocks(src.alg.clone(), blocks)
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra> {
        &self.alg
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    pub fn src_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::rows).collect()
    }

    pub fn dst_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::cols).collect()
    }

    pub fn is_map_between(&self, src: &Module, dst: &Module) -> bool {
        if self.src_dims() != src.dims || self.dst_dims() != dst.dims {
            return false;
        }
        src.alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(a, arr)| src.action[a].mul(&self.blocks[arr.dst]) == self.blocks[arr.src].mul(&dst.action[a]))
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().zip(&then.blocks).map(|(a, b)| a.mul(b)).collect();
        Self::from_blocks(self.alg.clone(), blocks)
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        Self::from_blocks(self.alg.clone(), blocks)
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        Self::from_blocks(self.alg.clone(), self.blocks.iter().map(|b| b.scale(s)).collect())
    }

    pub fn neg(&self) -> ModuleMap {
        Self::from_blocks(self.alg.clone(), self.blocks.iter().map(Matrix::neg).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn kernel(&self) -> Submodule {
        self.blocks.iter().map(left_kernel).collect()
    }

    pub fn image(&self) -> Submodule {
        let f = self.alg.field();
        self.blocks.iter().map(|b| Subspace::span(f, b.cols(), b)).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn apply(&self, v: usize, x: &[Scalar]) -> Vec<Scalar> {
        self.blocks[v].apply_row(x)
    }

    /// Restriction to submodules: the map `sub(U) → sub(W)` induced by `self`,
    /// assuming `self(U) ⊆ W`.
    pub fn restrict(&self, u: &Submodule, w: &Submodule) -> ModuleMap {
        let f = self.alg.field();
        let blocks = (0..self.blocks.len())
            .map(|v| {
                let img = u[v].basis().mul(&self.blocks[v]);
                let rows = img.row_vectors().iter().map(|r| w[v].coords(r).expect("image inside W")).collect();
                Matrix::from_rows(f, w[v].dim(), rows)
            })
            .collect();
        Self::from_blocks(self.alg.clone(), blocks)
    }
}
