use super::module::{Module, ModuleMap};
use crate::error::Result;
use crate::linalg::{kernel_basis, Matrix};

/// Basis of `Hom_Λ(M, N)`, obtained by solving the intertwiner equations
/// `A_M · φ_j = φ_i · A_N` for every arrow `i → j`.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    m.check_same_algebra(n)?;
    let f = m.field();
    let alg = m.algebra();
    let nv = alg.n_vertices();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + m.dim_at(v) * n.dim_at(v);
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return Ok(vec![]);
    }
    let var = |v: usize, r: usize, c: usize| offset[v] + r * n.dim_at(v) + c;
    let mut rows: Vec<Vec<_>> = Vec::new();
    for (a, arr) in alg.quiver().arrows().iter().enumerate() {
        let (i, j) = (arr.src, arr.dst);
        let am = m.action(a);
        let an = n.action(a);
        for r in 0..m.dim_at(i) {
            for c in 0..n.dim_at(j) {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..m.dim_at(j) {
                    let x = am.get(r, k);
                    if !x.is_zero() {
                        let idx = var(j, k, c);
                        row[idx] = &row[idx] + x;
                    }
                }
                for k in 0..n.dim_at(i) {
                    let x = an.get(k, c);
                    if !x.is_zero() {
                        let idx = var(i, r, k);
                        row[idx] = &row[idx] - x;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(f, unknowns, rows);
    let ker = kernel_basis(&system);
    Ok(ker
        .basis()
        .row_vectors()
        .into_iter()
        .map(|sol| {
            let blocks = (0..nv)
                .map(|v| {
                    let data = sol[offset[v]..offset[v + 1]].to_vec();
                    Matrix::from_vec(f, m.dim_at(v), n.dim_at(v), data)
                })
                .collect();
            ModuleMap::from_blocks(alg.clone(), blocks)
        })
        .collect())
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// A random element of `Hom(M, N)`.
pub fn random_hom<R: rand::Rng + ?Sized>(m: &Module, n: &Module, rng: &mut R) -> Result<ModuleMap> {
    let basis = hom_space(m, n)?;
    let f = m.field();
    Ok(basis.iter().fold(ModuleMap::zero(m, n), |acc, phi| acc.add(&phi.scale(&f.random(rng)))))
}

/// Searches the Hom space for an isomorphism; at model scale a random
/// combination is invertible with high probability, so a few draws are tried
/// before falling back to a deterministic rank check of each basis element.
pub fn find_isomorphism(m: &Module, n: &Module) -> Result<Option<ModuleMap>> {
    if m.dims() != n.dims() {
        return Ok(None);
    }
    let basis = hom_space(m, n)?;
    let f = m.field();
    let mut seed = 1i64;
    for _ in 0..8 {
        let cand = basis.iter().fold(ModuleMap::zero(m, n), |acc, phi| {
            seed = (seed * 48271) % 2147483647;
            acc.add(&phi.scale(&f.from_i64(seed % 1009)))
        });
        if cand.is_iso() {
            return Ok(Some(cand));
        }
    }
    Ok(basis.into_iter().find(ModuleMap::is_iso))
}
