//! JSON documents for algebras, modules, maps, complexes and fans.
//!
//! Scalars are written as strings (`"3"`, `"-1/2"`); integers are accepted
//! on input. Matrices are lists of rows, sized by the surrounding dimensions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{build_algebra, Arrow, FdAlgebra, Module, ModuleMap, Quiver, DEFAULT_MAX_PATH_LEN};
use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::toric::ToricSurface;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Int(i64),
}

impl ScalarText {
    fn parse(&self, field: Field) -> Result<Scalar> {
        match self {
            ScalarText::Text(s) => field.parse(s),
            ScalarText::Int(n) => Ok(field.from_i64(*n)),
        }
    }
}

pub type MatrixDoc = Vec<Vec<ScalarText>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    /// Arrow names, composed left to right.
    pub path: Vec<String>,
    pub coef: ScalarText,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub relations: Vec<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_path_len: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub dims: Vec<usize>,
    /// Arrow name → `dims[src] × dims[dst]` matrix.
    #[serde(default)]
    pub action: BTreeMap<String, MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapDoc {
    /// One block per vertex.
    pub blocks: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub terms: BTreeMap<i32, ModuleDoc>,
    /// `d^n : X^n → X^{n+1}`, keyed by `n`.
    #[serde(default)]
    pub diffs: BTreeMap<i32, MapDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDoc {
    pub rays: Vec<[i64; 2]>,
}

fn matrix_from_doc(field: Field, rows: usize, cols: usize, doc: &MatrixDoc, what: &str) -> Result<Matrix> {
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse(format!("{what}: expected a {rows}×{cols} matrix")));
    }
    let data = doc.iter().flatten().map(|x| x.parse(field)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_vec(field, rows, cols, data))
}

fn matrix_to_doc(m: &Matrix) -> MatrixDoc {
    (0..m.rows()).map(|r| m.row(r).iter().map(|x| ScalarText::Text(x.to_string())).collect()).collect()
}

pub fn algebra_from_doc(field: Field, doc: &AlgebraDoc) -> Result<FdAlgebra> {
    let names: Vec<&str> = doc.vertices.iter().map(String::as_str).collect();
    let arrows: Vec<(&str, &str, &str)> =
        doc.arrows.iter().map(|a| (a.name.as_str(), a.src.as_str(), a.dst.as_str())).collect();
    let quiver = Quiver::from_names(&names, &arrows)?;
    let mut relations = Vec::new();
    for r in &doc.relations {
        let mut rel = Vec::new();
        for t in r {
            let path: Vec<&str> = t.path.iter().map(String::as_str).collect();
            rel.push((quiver.path_from_names(&path)?, t.coef.parse(field)?));
        }
        relations.push(rel);
    }
    build_algebra(field, quiver, relations, doc.max_path_len.unwrap_or(DEFAULT_MAX_PATH_LEN))
}

/// Relations are the algebra's presentation, so realized algebras round-trip too.
pub fn algebra_to_doc(alg: &FdAlgebra) -> AlgebraDoc {
    let q = alg.quiver();
    let v = q.vertices();
    let name = |a: usize| q.arrows()[a].name.clone();
    AlgebraDoc {
        vertices: v.to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|Arrow { name, src, dst }| ArrowDoc { name: name.clone(), src: v[*src].clone(), dst: v[*dst].clone() })
            .collect(),
        relations: alg
            .presentation_relations()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(p, c)| TermDoc {
                        path: p.arrows.iter().map(|&a| name(a)).collect(),
                        coef: ScalarText::Text(c.to_string()),
                    })
                    .collect()
            })
            .collect(),
        max_path_len: None,
    }
}

pub fn module_from_doc(alg: &Arc<FdAlgebra>, doc: &ModuleDoc) -> Result<Module> {
    let q = alg.quiver();
    if doc.dims.len() != q.n_vertices() {
        return Err(Error::Parse(format!("{} dimensions for {} vertices", doc.dims.len(), q.n_vertices())));
    }
    for k in doc.action.keys() {
        if q.arrow_index(k).is_none() {
            return Err(Error::Parse(format!("unknown arrow {k:?}")));
        }
    }
    let action = q
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (doc.dims[a.src], doc.dims[a.dst]);
            match doc.action.get(&a.name) {
                Some(m) => matrix_from_doc(alg.field(), r, c, m, &format!("arrow {:?}", a.name)),
                None if r == 0 || c == 0 => Ok(Matrix::zeros(alg.field(), r, c)),
                None => Err(Error::Parse(format!("missing action of arrow {:?}", a.name))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Module::new(alg.clone(), doc.dims.clone(), action)
}

pub fn module_to_doc(m: &Module) -> ModuleDoc {
    let q = m.algebra().quiver();
    ModuleDoc {
        dims: m.dims().to_vec(),
        action: q.arrows().iter().zip(m.actions()).map(|(a, mat)| (a.name.clone(), matrix_to_doc(mat))).collect(),
    }
}

pub fn map_from_doc(src: &Module, dst: &Module, doc: &MapDoc) -> Result<ModuleMap> {
    let n = src.dims().len();
    if doc.blocks.len() != n {
        return Err(Error::Parse(format!("{} blocks for {n} vertices", doc.blocks.len())));
    }
    let blocks = (0..n)
        .map(|v| matrix_from_doc(src.field(), src.dim_at(v), dst.dim_at(v), &doc.blocks[v], &format!("block {v}")))
        .collect::<Result<Vec<_>>>()?;
    ModuleMap::new(src, dst, blocks)
}

pub fn map_to_doc(f: &ModuleMap) -> MapDoc {
    MapDoc { blocks: f.blocks().iter().map(matrix_to_doc).collect() }
}

pub fn complex_from_doc(alg: &Arc<FdAlgebra>, doc: &ComplexDoc) -> Result<Complex> {
    let terms: BTreeMap<i32, Module> =
        doc.terms.iter().map(|(&k, m)| Ok((k, module_from_doc(alg, m)?))).collect::<Result<_>>()?;
    let zero = Module::zero(alg);
    let mut diffs = BTreeMap::new();
    for (&k, d) in &doc.diffs {
        let src = terms.get(&k).unwrap_or(&zero);
        let dst = terms.get(&(k + 1)).unwrap_or(&zero);
        diffs.insert(k, map_from_doc(src, dst, d)?);
    }
    Complex::new(alg, terms, diffs)
}

pub fn complex_to_doc(c: &Complex) -> ComplexDoc {
    ComplexDoc {
        terms: c.terms().iter().map(|(&k, m)| (k, module_to_doc(m))).collect(),
        diffs: c.diffs().iter().map(|(&k, d)| (k, map_to_doc(d))).collect(),
    }
}

pub fn fan_from_doc(doc: &FanDoc) -> Result<ToricSurface> {
    ToricSurface::new(doc.rays.clone())
}

pub fn fan_to_doc(s: &ToricSurface) -> FanDoc {
    FanDoc { rays: s.rays().to_vec() }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::beilinson_p2;
    use crate::algebra::random::{random_map, random_module, RandomModuleSpec};
    use crate::toric::ModelBundle;

    const F: Field = Field::Prime(32003);

    #[test]
    fn algebra_round_trip() {
        for alg in [beilinson_p2(F), ModelBundle::f1(F).unwrap().algebra().as_ref().clone()] {
            let doc = algebra_to_doc(&alg);
            let text = serde_json::to_string(&doc).unwrap();
            let back = algebra_from_doc(F, &serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back.dim(), alg.dim());
            assert_eq!(back.quiver(), alg.quiver());
        }
    }

    #[test]
    fn module_and_complex_round_trip() {
        let alg = Arc::new(beilinson_p2(Field::Rationals));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_module(&alg, RandomModuleSpec::default(), &mut rng);
        let k = random_module(&alg, RandomModuleSpec::default(), &mut rng);
        let f = random_map(&m, &k, &mut rng);
        let c = Complex::from_map(&m, &k, &f, -1).unwrap();
        let text = serde_json::to_string(&complex_to_doc(&c)).unwrap();
        let back = complex_from_doc(&alg, &serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.terms(), c.terms());
        assert_eq!(back.homology_dims(), c.homology_dims());
    }

    #[test]
    fn hand_written_documents() {
        let a2: AlgebraDoc =
            serde_json::from_str(r#"{"vertices":["1","2"],"arrows":[{"name":"a","src":"1","dst":"2"}]}"#).unwrap();
        let alg = Arc::new(algebra_from_doc(F, &a2).unwrap());
        let p1: ModuleDoc = serde_json::from_str(r#"{"dims":[1,1],"action":{"a":[["1"]]}}"#).unwrap();
        assert_eq!(module_from_doc(&alg, &p1).unwrap().total_dim(), 2);
        let s2: ModuleDoc = serde_json::from_str(r#"{"dims":[0,1]}"#).unwrap();
        assert!(module_from_doc(&alg, &s2).is_ok());
        let bad: ModuleDoc = serde_json::from_str(r#"{"dims":[1,1]}"#).unwrap();
        assert!(matches!(module_from_doc(&alg, &bad), Err(Error::Parse(_))));
        let wrong: ModuleDoc = serde_json::from_str(r#"{"dims":[1,1],"action":{"a":[[1,2]]}}"#).unwrap();
        assert!(matches!(module_from_doc(&alg, &wrong), Err(Error::Parse(_))));
        let fan: FanDoc = serde_json::from_str(r#"{"rays":[[1,0],[0,1],[-1,-1]]}"#).unwrap();
        assert_eq!(fan_from_doc(&fan).unwrap(), ToricSurface::p2());
    }
}
