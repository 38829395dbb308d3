use std::collections::BTreeMap;

use super::quiver::{Path, Quiver, Relation};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Subspace};

/// Basis indices and their realization vectors.
type Span = (Vec<usize>, Vec<Vec<Scalar>>);

/// Sparse vector over the path basis.
pub type Sparse = Vec<(usize, Scalar)>;

/// Default bound on path length when building a quotient of a quiver with cycles.
pub const DEFAULT_MAX_PATH_LEN: usize = 10;

/// A finite-dimensional algebra `kQ/I` with a basis of path classes.
///
/// Right modules are representations; a path `p = a₁a₂…` acts on row vectors
/// as the matrix product `A₁A₂…`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdAlgebra {
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    /// `right[b][a]` is the normal form of `basis[b] · arrow a`, when composable.
    right: Vec<Vec<Option<Sparse>>>,
    arrow_basis: Vec<usize>,
    idempotents: Vec<usize>,
}

impl FdAlgebra {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn n_vertices(&self) -> usize {
        self.quiver.n_vertices()
    }

    pub fn n_arrows(&self) -> usize {
        self.quiver.arrows().len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn arrow_basis(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    /// Basis indices of `e_i Λ e_j`, i.e. path classes from `i` to `j`.
    pub fn basis_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&b| self.basis[b].src == i && self.basis[b].dst == j).collect()
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis.iter().map(|p| self.quiver.path_label(p)).collect()
    }

    /// `x · arrow` for a sparse element `x`.
    pub fn times_arrow(&self, x: &Sparse, arrow: usize) -> Sparse {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (b, c) in x {
            if let Some(nf) = &self.right[*b][arrow] {
                for (t, d) in nf {
                    let e = acc.entry(*t).or_insert_with(|| self.field.zero());
                    *e = &*e + &(c * d);
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Normal form of an arbitrary path.
    pub fn path_normal_form(&self, p: &Path) -> Sparse {
        let mut x = vec![(self.idempotents[p.src], self.field.one())];
        for &a in &p.arrows {
            x = self.times_arrow(&x, a);
        }
        x
    }

    /// Product of two basis elements.
    pub fn multiply(&self, b1: usize, b2: usize) -> Sparse {
        let (p, q) = (&self.basis[b1], &self.basis[b2]);
        if p.dst != q.src {
            return vec![];
        }
        let mut x = vec![(b1, self.field.one())];
        for &a in &q.arrows {
            x = self.times_arrow(&x, a);
        }
        x
    }

    /// Full structure constants: `table[i][j]` is `basis[i]·basis[j]`.
    pub fn mult_table(&self) -> Vec<Vec<Sparse>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.multiply(i, j)).collect()).collect()
    }

    /// Relations `b·a − nf(b·a)` that generate the defining ideal.
    pub fn rewriting_relations(&self) -> Vec<(usize, usize, Sparse)> {
        let mut out = Vec::new();
        for b in 0..self.dim() {
            for a in 0..self.n_arrows() {
                if let Some(nf) = &self.right[b][a] {
                    let path = self.basis[b].then(&self.quiver, a).expect("composable");
                    let is_basis = nf.len() == 1 && nf[0].1.is_one() && self.basis[nf[0].0] == path;
                    if !is_basis {
                        out.push((b, a, nf.clone()));
                    }
                }
            }
        }
        out
    }

    /// Relations in path form, as used by the text format.
    pub fn presentation_relations(&self) -> Vec<Relation> {
        if !self.relations.is_empty() {
            return self.relations.clone();
        }
        self.rewriting_relations()
            .into_iter()
            .map(|(b, a, nf)| {
                let mut rel = vec![(self.basis[b].then(&self.quiver, a).unwrap(), self.field.one())];
                rel.extend(nf.into_iter().map(|(t, c)| (self.basis[t].clone(), -c)));
                rel
            })
            .collect()
    }

    pub fn is_associative(&self) -> bool {
        let t = self.mult_table();
        let mul_sparse = |x: &Sparse, j: usize| -> Sparse {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (i, c) in x {
                for (k, d) in &t[*i][j] {
                    let e = acc.entry(*k).or_insert_with(|| self.field.zero());
                    *e = &*e + &(c * d);
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        };
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for k in 0..self.dim() {
                    let left = mul_sparse(&t[i][j], k);
                    let jk = &t[j][k];
                    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (m, c) in jk {
                        for (r, d) in &t[i][*m] {
                            let e = acc.entry(*r).or_insert_with(|| self.field.zero());
                            *e = &*e + &(c * d);
                        }
                    }
                    let right: Sparse = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The opposite algebra on the reversed quiver. Basis indices are preserved:
    /// basis element `b` of the opposite algebra is the reversal of `b`.
    pub fn opposite(&self) -> FdAlgebra {
        let quiver = self.quiver.opposite();
        let basis: Vec<Path> = self.basis.iter().map(Path::reversed).collect();
        let mut right = vec![vec![None; self.n_arrows()]; self.dim()];
        for (b, row) in right.iter_mut().enumerate() {
            for (a, slot) in row.iter_mut().enumerate() {
                // In the opposite algebra b·a corresponds to a·b here.
                if quiver.arrows()[a].src == basis[b].dst {
                    *slot = Some(self.multiply(self.arrow_basis[a], b));
                }
            }
        }
        let relations =
            self.relations.iter().map(|r| r.iter().map(|(p, c)| (p.reversed(), c.clone())).collect()).collect();
        FdAlgebra {
            field: self.field,
            quiver,
            relations,
            basis,
            right,
            arrow_basis: self.arrow_basis.clone(),
            idempotents: self.idempotents.clone(),
        }
    }

    /// Builds an algebra from a realization of paths: `realize` maps each path
    /// to a vector in a space attached to its endpoints, compatibly with
    /// composition. Basis paths are chosen greedily in (length, label) order.
    pub fn from_realization<R>(
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        max_len: usize,
        mut realize: R,
    ) -> Result<FdAlgebra>
    where
        R: FnMut(&Path) -> Vec<Scalar>,
    {
        let n_arrows = quiver.arrows().len();
        let mut basis: Vec<Path> = Vec::new();
        let mut right: Vec<Vec<Option<Sparse>>> = Vec::new();
        let mut spans: BTreeMap<(usize, usize), Span> = BTreeMap::new();

        let mut idempotents = Vec::new();
        for v in 0..quiver.n_vertices() {
            let p = Path::trivial(v);
            let vec = realize(&p);
            if vec.iter().all(Scalar::is_zero) {
                return Err(Error::InvalidQuiver(format!("idempotent at {} realizes to zero", quiver.vertices()[v])));
            }
            idempotents.push(basis.len());
            let e = spans.entry((v, v)).or_default();
            e.0.push(basis.len());
            e.1.push(vec);
            basis.push(p);
            right.push(vec![None; n_arrows]);
        }

        let mut frontier: Vec<usize> = idempotents.clone();
        let mut arrow_basis = vec![usize::MAX; n_arrows];
        let mut len = 0;
        while !frontier.is_empty() {
            len += 1;
            let mut candidates: Vec<(usize, usize, Path)> = Vec::new();
            for &b in &frontier {
                for a in 0..n_arrows {
                    if let Some(p) = basis[b].then(&quiver, a) {
                        candidates.push((b, a, p));
                    }
                }
            }
            candidates.sort_by_key(|(_, _, p)| quiver.label_key(p));
            let mut next = Vec::new();
            for (b, a, p) in candidates {
                let vec = realize(&p);
                let entry = spans.entry((p.src, p.dst)).or_default();
                let nf: Sparse = if vec.iter().all(Scalar::is_zero) {
                    vec![]
                } else {
                    let coords = if entry.1.is_empty() {
                        None
                    } else {
                        let m = Matrix::from_rows(field, vec.len(), entry.1.clone());
                        m.solve_left(&vec)
                    };
                    match coords {
                        Some(c) => entry.0.iter().zip(c).filter(|(_, x)| !x.is_zero()).map(|(&i, x)| (i, x)).collect(),
                        None => {
                            if len > max_len {
                                return Err(Error::InfiniteDimensional(len));
                            }
                            let idx = basis.len();
                            entry.0.push(idx);
                            entry.1.push(vec);
                            basis.push(p.clone());
                            right.push(vec![None; n_arrows]);
                            next.push(idx);
                            vec![(idx, field.one())]
                        }
                    }
                };
                if len == 1 {
                    if nf.len() != 1 || basis[nf[0].0] != p {
                        return Err(Error::InvalidQuiver(format!(
                            "arrow {:?} is not independent in the algebra",
                            quiver.arrows()[a].name
                        )));
                    }
                    arrow_basis[a] = nf[0].0;
                }
                right[b][a] = Some(nf);
            }
            frontier = next;
        }
        Ok(FdAlgebra { field, quiver, relations, basis, right, arrow_basis, idempotents })
    }
}

/// `kQ/(relations)`. Relations must be combinations of parallel paths of length
/// at least two; on quivers with oriented cycles they must also be homogeneous,
/// and paths longer than `max_len` must vanish.
pub fn build_algebra(field: Field, quiver: Quiver, relations: Vec<Relation>, max_len: usize) -> Result<FdAlgebra> {
    let acyclic = quiver.is_acyclic();
    for r in &relations {
        let Some((p0, _)) = r.first() else {
            return Err(Error::InvalidQuiver("empty relation".into()));
        };
        for (p, c) in r {
            if (p.src, p.dst) != (p0.src, p0.dst) {
                return Err(Error::InvalidQuiver("relation mixes non-parallel paths".into()));
            }
            if p.len() < 2 {
                return Err(Error::InvalidQuiver("relations must lie in paths of length ≥ 2".into()));
            }
            if c.field() != field {
                return Err(Error::InvalidField("relation coefficient over another field".into()));
            }
            if !acyclic && p.len() != p0.len() {
                return Err(Error::InvalidQuiver("relations on quivers with cycles must be homogeneous".into()));
            }
        }
    }
    let limit = if acyclic { quiver.n_vertices() } else { max_len };

    // All paths of length ≤ limit, grouped by endpoints.
    let mut all: Vec<Path> = (0..quiver.n_vertices()).map(Path::trivial).collect();
    let mut layer = all.clone();
    for _ in 0..limit {
        let mut next = Vec::new();
        for p in &layer {
            for a in 0..quiver.arrows().len() {
                if let Some(q) = p.then(&quiver, a) {
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    let mut index: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    for p in &all {
        index.entry((p.src, p.dst)).or_default().push(p.clone());
    }
    for v in index.values_mut() {
        v.sort_by_key(|p| quiver.label_key(p));
    }
    let position = |p: &Path| index[&(p.src, p.dst)].iter().position(|q| q == p);

    // Two-sided ideal, truncated above `limit`.
    let mut gens: BTreeMap<(usize, usize), Vec<Vec<Scalar>>> = BTreeMap::new();
    for r in &relations {
        let (s, t) = (r[0].0.src, r[0].0.dst);
        let shortest = r.iter().map(|(p, _)| p.len()).min().unwrap_or(0);
        for u in all.iter().filter(|u| u.dst == s) {
            for v in all.iter().filter(|v| v.src == t) {
                if u.len() + shortest + v.len() > limit {
                    continue;
                }
                let key = (u.src, v.dst);
                let width = index[&key].len();
                let mut row = vec![field.zero(); width];
                for (p, c) in r {
                    let full = u.concat(p).and_then(|x| x.concat(v)).expect("composable");
                    if full.len() > limit {
                        continue;
                    }
                    let i = position(&full).expect("enumerated");
                    row[i] = &row[i] + c;
                }
                gens.entry(key).or_default().push(row);
            }
        }
    }
    let ideals: BTreeMap<(usize, usize), Subspace> = index
        .iter()
        .map(|(key, paths)| {
            let rows = gens.remove(key).unwrap_or_default();
            (*key, Subspace::from_vectors(field, paths.len(), rows))
        })
        .collect();

    let alg = FdAlgebra::from_realization(field, quiver.clone(), relations, usize::MAX, |p| {
        let key = (p.src, p.dst);
        if p.len() > limit {
            return vec![field.zero(); index.get(&key).map_or(0, |v| v.len())];
        }
        let paths = &index[&key];
        let mut unit = vec![field.zero(); paths.len()];
        unit[paths.iter().position(|q| q == p).expect("enumerated")] = field.one();
        ideals[&key].reduce(&unit)
    })?;
    if !acyclic && alg.basis().iter().any(|p| p.len() >= limit) {
        return Err(Error::InfiniteDimensional(limit));
    }
    Ok(alg)
}

/// Path algebra of the quiver (no relations). Requires an acyclic quiver.
pub fn path_algebra(field: Field, quiver: Quiver) -> Result<FdAlgebra> {
    build_algebra(field, quiver, vec![], DEFAULT_MAX_PATH_LEN)
}

/// One vertex, no arrows: the ground field as an algebra.
pub fn ground_field_algebra(field: Field) -> FdAlgebra {
    let q = Quiver::new(vec!["pt".into()], vec![]).expect("valid");
    path_algebra(field, q).expect("field is finite-dimensional")
}

/// The Beilinson algebra of P²: `0 ⇉ 1 ⇉ 2` with three arrows each and
/// commutativity relations `x_i y_j = x_j y_i`.
pub fn beilinson_p2(field: Field) -> FdAlgebra {
    let q = Quiver::from_names(
        &["0", "1", "2"],
        &[("x0", "0", "1"), ("x1", "0", "1"), ("x2", "0", "1"), ("y0", "1", "2"), ("y1", "1", "2"), ("y2", "1", "2")],
    )
    .expect("valid quiver");
    let mut rels = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            let xi = format!("x{i}");
            let xj = format!("x{j}");
            let yi = format!("y{i}");
            let yj = format!("y{j}");
            let p = q.path_from_names(&[&xi, &yj]).unwrap();
            let r = q.path_from_names(&[&xj, &yi]).unwrap();
            rels.push(vec![(p, field.one()), (r, field.from_i64(-1))]);
        }
    }
    build_algebra(field, q, rels, DEFAULT_MAX_PATH_LEN).expect("Beilinson algebra is finite-dimensional")
}
