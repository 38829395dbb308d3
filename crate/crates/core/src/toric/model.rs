use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::surface::{p1_cohomology, Point, TDivisor, ToricSurface};
use crate::algebra::{Arrow, FdAlgebra, Module, Path, Quiver};
use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// Coefficient bound for the twist search.
pub const TWIST_RADIUS: i64 = 2;

/// A tilting bundle `T = ⊕ O(D_t)` of line bundles and `Λ = End(T)`.
///
/// Vertex `t` is the summand `E_t`; paths `s → t` are `Hom(E_t, E_s) =
/// H^0(D_s − D_t)` with one basis element per lattice point, so the
/// projective `P_s` realizes `E_s` and a sheaf `F` becomes the right module
/// `Hom(T, F)`.
#[derive(Clone, Debug)]
pub struct ModelBundle {
    surface: ToricSurface,
    summands: Vec<TDivisor>,
    twist: TDivisor,
    exceptional: usize,
    hyperplane: TDivisor,
    algebra: Arc<FdAlgebra>,
    /// Arrow index → its lattice point.
    arrow_points: Vec<Point>,
}

/// Why a twist was rejected, for the build log.
#[derive(Clone, Debug, Serialize)]
pub struct TwistTrial {
    pub twist: String,
    pub accepted: bool,
    pub reason: String,
}

impl ModelBundle {
    /// `F₁` with the twisted default collection.
    pub fn f1(field: Field) -> Result<Self> {
        Self::build(field, ToricSurface::f1())
    }

    /// Finds the exceptional ray `L`, a ray `F` of self-intersection 0 meeting
    /// it and a ray `H` of self-intersection 1 avoiding it, then searches
    /// twists of `(0, F, H, H + F)`.
    pub fn build(field: Field, surface: ToricSurface) -> Result<Self> {
        Ok(Self::build_logged(field, surface)?.0)
    }

    pub fn build_logged(field: Field, surface: ToricSurface) -> Result<(Self, Vec<TwistTrial>)> {
        let n = surface.n_rays();
        let l = surface
            .exceptional_ray()
            .ok_or_else(|| Error::InvalidFan("no unique curve of self-intersection −1".into()))?;
        let ld = TDivisor::ray(n, l);
        let find = |self_int: i64, meets: i64| {
            (0..n).find(|&i| {
                i != l
                    && surface.self_intersection(i) == self_int
                    && surface.intersection(&TDivisor::ray(n, i), &ld) == meets
            })
        };
        let f = find(0, 1).ok_or_else(|| Error::InvalidFan("no fibre class meeting the exceptional curve".into()))?;
        let h =
            find(1, 0).ok_or_else(|| Error::InvalidFan("no hyperplane class avoiding the exceptional curve".into()))?;
        let (fd, hd) = (TDivisor::ray(n, f), TDivisor::ray(n, h));
        let base = vec![TDivisor::zero(n), fd.clone(), hd.clone(), &hd + &fd];

        certify_exceptional(&surface, &base)?;

        let mut trials = Vec::new();
        for twist in twist_candidates(n) {
            let summands: Vec<TDivisor> = base.iter().map(|d| d + &twist).collect();
            let reason = twist_rejection(&surface, &summands, l, &hd);
            let accepted = reason.is_none();
            trials.push(TwistTrial {
                twist: twist.to_string(),
                accepted,
                reason: reason.unwrap_or_else(|| "accepted".into()),
            });
            if accepted {
                let model = Self::assemble(field, surface, summands, twist, l, hd)?;
                return Ok((model, trials));
            }
        }
        Err(Error::Certification(format!("no twist with coefficients in ±{TWIST_RADIUS} works")))
    }

    /// Builds the model for an explicit collection; certifies strong
    /// exceptionality but not the twist conditions.
    pub fn from_summands(field: Field, surface: ToricSurface, summands: Vec<TDivisor>) -> Result<Self> {
        let n = surface.n_rays();
        let l = surface
            .exceptional_ray()
            .ok_or_else(|| Error::InvalidFan("no unique curve of self-intersection −1".into()))?;
        let ld = TDivisor::ray(n, l);
        let h = (0..n)
            .find(|&i| {
                i != l && surface.self_intersection(i) == 1 && surface.intersection(&TDivisor::ray(n, i), &ld) == 0
            })
            .ok_or_else(|| Error::InvalidFan("no hyperplane class avoiding the exceptional curve".into()))?;
        certify_exceptional(&surface, &summands)?;
        Self::assemble(field, surface, summands, TDivisor::zero(n), l, TDivisor::ray(n, h))
    }

    fn assemble(
        field: Field,
        surface: ToricSurface,
        summands: Vec<TDivisor>,
        twist: TDivisor,
        exceptional: usize,
        hyperplane: TDivisor,
    ) -> Result<Self> {
        let k = summands.len();
        // sections[s][t] = lattice points of D_s − D_t.
        let sections: Vec<Vec<Vec<Point>>> =
            (0..k).map(|s| (0..k).map(|t| surface.lattice_points(&(&summands[s] - &summands[t]))).collect()).collect();
        let mut arrows = Vec::new();
        let mut arrow_points = Vec::new();
        for s in 0..k {
            for t in 0..k {
                if s == t {
                    continue;
                }
                for &m in &sections[s][t] {
                    let reducible = (0..k).filter(|&u| u != s && u != t).any(|u| {
                        sections[s][u].iter().any(|a| sections[u][t].iter().any(|b| [a[0] + b[0], a[1] + b[1]] == m))
                    });
                    if !reducible {
                        arrows.push(Arrow { name: format!("x{s}{t}_{}", arrow_points.len()), src: s, dst: t });
                        arrow_points.push(m);
                    }
                }
            }
        }
        let vertices = (0..k).map(|t| format!("E{t}")).collect();
        let quiver = Quiver::new(vertices, arrows)?;
        let realize = |p: &Path| {
            let mut m = [0i64, 0];
            for &a in &p.arrows {
                m = [m[0] + arrow_points[a][0], m[1] + arrow_points[a][1]];
            }
            let pts = &sections[p.src][p.dst];
            let mut v = vec![field.zero(); pts.len()];
            if let Some(i) = pts.iter().position(|&q| q == m) {
                v[i] = field.one();
            }
            v
        };
        let alg = FdAlgebra::from_realization(field, quiver, vec![], 2 * k, realize)?;
        let expected: usize = sections.iter().flatten().map(Vec::len).sum();
        if alg.dim() != expected {
            return Err(Error::Certification(format!(
                "algebra has dimension {} but the sections span {expected}",
                alg.dim()
            )));
        }
        if !alg.is_associative() {
            return Err(Error::Certification("monomial multiplication is not associative".into()));
        }
        Ok(ModelBundle { surface, summands, twist, exceptional, hyperplane, algebra: Arc::new(alg), arrow_points })
    }

    pub fn surface(&self) -> &ToricSurface {
        &self.surface
    }

    pub fn summands(&self) -> &[TDivisor] {
        &self.summands
    }

    pub fn twist(&self) -> &TDivisor {
        &self.twist
    }

    pub fn exceptional_ray(&self) -> usize {
        self.exceptional
    }

    pub fn exceptional_divisor(&self) -> TDivisor {
        TDivisor::ray(self.surface.n_rays(), self.exceptional)
    }

    /// The pullback of the hyperplane class of `P²`.
    pub fn hyperplane(&self) -> &TDivisor {
        &self.hyperplane
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra> {
        &self.algebra
    }

    /// Vertex of summand `i`, i.e. the idempotent `e_i`.
    pub fn summand_vertex(&self, i: usize) -> usize {
        i
    }

    pub fn arrow_point(&self, a: usize) -> Point {
        self.arrow_points[a]
    }

    /// `(h0, h1, h2)` of `D − D_t` for each summand.
    pub fn line_bundle_rhom_dims(&self, d: &TDivisor) -> Vec<[usize; 3]> {
        self.summands.iter().map(|e| self.surface.cohomology(&(d - e)).as_vec()).collect()
    }

    /// `Hom(T, O(D))`, requiring `H^{>0}(D − D_t) = 0` for all `t`.
    pub fn line_bundle_module(&self, d: &TDivisor) -> Result<Module> {
        for (t, e) in self.summands.iter().enumerate() {
            let h = self.surface.cohomology(&(d - e));
            if !h.higher_vanish() {
                return Err(Error::Certification(format!(
                    "O({d}) has higher cohomology against summand {t}: {:?}",
                    h.as_vec()
                )));
            }
        }
        let pts: Vec<Vec<Point>> = self.summands.iter().map(|e| self.surface.lattice_points(&(d - e))).collect();
        self.point_module(&pts)
    }

    /// `RHom(T, O_C(D))` for the curve `C = D_ρ`, from sections on `C ≅ P¹`.
    /// Requires degree ≥ −1 against every summand so only `H^0` survives.
    pub fn curve_module(&self, rho: usize, d: &TDivisor) -> Result<Module> {
        let mut pts = Vec::new();
        for (t, e) in self.summands.iter().enumerate() {
            let dt = self.surface.degree_on(rho, &(d - e));
            let (_, h1) = p1_cohomology(dt);
            if h1 != 0 {
                return Err(Error::Certification(format!(
                    "restriction to the curve has degree {dt} against summand {t}; RHom is not concentrated in degree 0"
                )));
            }
            pts.push(self.surface.curve_points(rho, &(d - e)));
        }
        self.point_module(&pts)
    }

    /// Dimension vector of `Hom(T, O_C(D))` from `P¹` cohomology alone.
    pub fn curve_dims_oracle(&self, rho: usize, d: &TDivisor) -> Vec<(usize, usize)> {
        self.summands.iter().map(|e| p1_cohomology(self.surface.degree_on(rho, &(d - e)))).collect()
    }

    /// `N = Hom(T, O_L(L))`.
    pub fn exceptional_n(&self) -> Result<Module> {
        self.curve_module(self.exceptional, &self.exceptional_divisor())
    }

    /// `Hom(T, O_L)`, the untwisted structure sheaf of the exceptional curve.
    pub fn structure_sheaf_l(&self) -> Result<Module> {
        self.curve_module(self.exceptional, &TDivisor::zero(self.surface.n_rays()))
    }

    /// `Hom(T, O(i·H))` in degree 0.
    pub fn pullback_line_bundle(&self, i: i64) -> Result<Complex> {
        Ok(Complex::from_module(&self.line_bundle_module(&self.hyperplane.scale(i))?, 0))
    }

    /// Module with basis `pts[t]` at vertex `t`; an arrow adds its point and
    /// vanishes when the sum leaves the target set.
    fn point_module(&self, pts: &[Vec<Point>]) -> Result<Module> {
        let field = self.algebra.field();
        let index: Vec<BTreeMap<Point, usize>> =
            pts.iter().map(|p| p.iter().enumerate().map(|(i, &m)| (m, i)).collect()).collect();
        let action = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let ma = self.arrow_points[a];
                let mut mat = Matrix::zeros(field, pts[arr.src].len(), pts[arr.dst].len());
                for (r, m) in pts[arr.src].iter().enumerate() {
                    if let Some(&c) = index[arr.dst].get(&[m[0] + ma[0], m[1] + ma[1]]) {
                        mat.set(r, c, field.one());
                    }
                }
                mat
            })
            .collect();
        Module::new(self.algebra.clone(), pts.iter().map(Vec::len).collect(), action)
    }

    /// Short human description of the collection.
    pub fn describe(&self) -> String {
        let s: Vec<String> = self.summands.iter().map(|d| format!("O({d})")).collect();
        format!(
            "T = {} (twist {}), exceptional curve D{}, hyperplane {}; Λ has {} vertices, {} arrows, dimension {}",
            s.join(" ⊕ "),
            self.twist,
            self.exceptional + 1,
            self.hyperplane,
            self.algebra.n_vertices(),
            self.algebra.n_arrows(),
            self.algebra.dim()
        )
    }
}

/// All twists with coefficients in `±TWIST_RADIUS`, by L1 norm then lexicographically.
fn twist_candidates(n: usize) -> Vec<TDivisor> {
    let mut out = vec![TDivisor::zero(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|d| {
                (-TWIST_RADIUS..=TWIST_RADIUS).map(move |c| {
                    let mut v = d.0.clone();
                    v.push(c);
                    TDivisor(v)
                })
            })
            .collect();
    }
    for d in &mut out {
        d.0.drain(..n);
    }
    out.sort_by(|a, b| a.l1().cmp(&b.l1()).then_with(|| a.cmp(b)));
    out
}

/// `Ext^{>0}(E_i, E_j) = 0` for all pairs and `Hom(E_j, E_i) = 0` for `j > i`.
fn certify_exceptional(surface: &ToricSurface, summands: &[TDivisor]) -> Result<()> {
    let mut bad = Vec::new();
    for (i, di) in summands.iter().enumerate() {
        for (j, dj) in summands.iter().enumerate() {
            let h = surface.cohomology(&(dj - di));
            if !h.higher_vanish() {
                bad.push(format!("Ext^>0(E{i}, E{j}) = {:?}", &h.as_vec()[1..]));
            }
            if i == j && h.h0 != 1 {
                bad.push(format!("End(E{i}) has dimension {}", h.h0));
            }
            if j < i && h.h0 != 0 {
                bad.push(format!("Hom(E{i}, E{j}) ≠ 0 against the order"));
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Certification(bad.join("; ")))
    }
}

fn twist_rejection(surface: &ToricSurface, summands: &[TDivisor], l: usize, h: &TDivisor) -> Option<String> {
    let n = surface.n_rays();
    let ld = TDivisor::ray(n, l);
    for (t, e) in summands.iter().enumerate() {
        let d = surface.degree_on(l, &(&ld - e));
        if p1_cohomology(d).1 != 0 {
            return Some(format!("O_L(L) has H^1 against summand {t} (degree {d})"));
        }
    }
    for i in 0..3 {
        for (t, e) in summands.iter().enumerate() {
            if !surface.cohomology(&(&h.scale(i) - e)).higher_vanish() {
                return Some(format!("O({i}H) has higher cohomology against summand {t}"));
            }
        }
    }
    None
}

/// The lattice point of arrow `a`, as a scalar-free description for reports.
pub fn arrow_table(model: &ModelBundle) -> Vec<(String, usize, usize, Point)> {
    model
        .algebra
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| (arr.name.clone(), arr.src, arr.dst, model.arrow_points[a]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{global_dimension, hom_dim, DEFAULT_RESOLUTION_CAP};
    use crate::semiorth::ext_vector;

    const F: Field = Field::Prime(32003);

    #[test]
    fn twist_search_finds_minus_fibre() {
        let (m, trials) = ModelBundle::build_logged(F, ToricSurface::f1()).unwrap();
        assert_eq!(m.twist(), &TDivisor(vec![-1, 0, 0, 0]));
        assert!(trials.len() > 1);
        assert!(!trials[0].accepted);
        assert_eq!(m.algebra().dim(), 20);
        assert_eq!(m.algebra().n_arrows(), 7);
    }

    #[test]
    fn model_algebra_invariants() {
        let m = ModelBundle::f1(F).unwrap();
        let alg = m.algebra();
        for v in 0..4 {
            assert_eq!(alg.basis_between(v, v).len(), 1);
        }
        for s in 0..4 {
            for t in 0..4 {
                let h0 = m.surface().h0(&(&m.summands()[s] - &m.summands()[t]));
                assert_eq!(alg.basis_between(s, t).len(), h0);
            }
        }
        assert_eq!(global_dimension(alg, DEFAULT_RESOLUTION_CAP).unwrap(), 2);
    }

    #[test]
    fn projectives_are_summands() {
        // P_s = Hom(T, E_s), and Ext between summands vanishes.
        let m = ModelBundle::f1(F).unwrap();
        let mods: Vec<Module> = m.summands().iter().map(|d| m.line_bundle_module(d).unwrap()).collect();
        for (i, a) in mods.iter().enumerate() {
            assert_eq!(a.dims(), crate::algebra::Projective::new(m.algebra(), vec![i]).module().dims());
            for b in &mods {
                let e = ext_vector(a, b).unwrap();
                assert!(e.keys().all(|&k| k == 0));
            }
        }
    }

    #[test]
    fn exceptional_n_matches_p1_oracle() {
        let m = ModelBundle::f1(F).unwrap();
        let n = m.exceptional_n().unwrap();
        let oracle: Vec<usize> = m.curve_dims_oracle(1, &m.exceptional_divisor()).iter().map(|p| p.0).collect();
        assert_eq!(n.dims(), oracle.as_slice());
        assert_eq!(n.dims(), &[1, 0, 1, 0]);
        // The summand O is vertex 1; O_L(L) restricts to O_{P¹}(−1) there.
        assert_eq!(m.summands()[1], TDivisor::zero(4));
        assert_eq!(m.curve_dims_oracle(1, &m.exceptional_divisor())[1], (0, 0));
        assert_eq!(hom_dim(&n, &n).unwrap(), 1);
        let ol = m.structure_sheaf_l().unwrap();
        assert_eq!(ol.dims(), &[2, 1, 2, 1]);
    }

    #[test]
    fn untwisted_collection_fails_concentration() {
        let s = ToricSurface::f1();
        let (f, h) = (TDivisor::ray(4, 0), TDivisor::ray(4, 3));
        let base = vec![TDivisor::zero(4), f.clone(), h.clone(), &h + &f];
        let m = ModelBundle::from_summands(F, s, base).unwrap();
        assert!(matches!(m.exceptional_n(), Err(Error::Certification(_))));
    }

    #[test]
    fn non_exceptional_collection_rejected() {
        let s = ToricSurface::f1();
        let h = TDivisor::ray(4, 3);
        let bad = vec![TDivisor::zero(4), h.scale(3)];
        assert!(matches!(ModelBundle::from_summands(F, s, bad), Err(Error::Certification(_))));
    }

    #[test]
    fn pullbacks_follow_p2() {
        let m = ModelBundle::f1(F).unwrap();
        let p: Vec<Module> = (0..3).map(|i| m.pullback_line_bundle(i).unwrap().homology_module(0)).collect();
        let h0 = [[1, 3, 6], [0, 1, 3], [0, 0, 1]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(hom_dim(&p[i], &p[j]).unwrap(), h0[i][j], "Hom(O({i}), O({j}))");
                if i <= j {
                    assert!(ext_vector(&p[i], &p[j]).unwrap().keys().all(|&k| k == 0));
                }
            }
        }
    }

    #[test]
    fn custom_fan_without_blowdown_rejected() {
        assert!(matches!(ModelBundle::build(F, ToricSurface::p2()), Err(Error::InvalidFan(_))));
    }
}
