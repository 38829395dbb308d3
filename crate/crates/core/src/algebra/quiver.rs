use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let mut names = HashMap::new();
        for a in &arrows {
            if names.insert(a.name.as_str(), ()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow {:?}", a.name)));
            }
            if a.src >= vertices.len() || a.dst >= vertices.len() {
                return Err(Error::InvalidQuiver(format!("arrow {:?} has an invalid endpoint", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Builds a quiver from `(name, src, dst)` triples over named vertices.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let idx = |v: &str| {
            vertices.iter().position(|w| *w == v).ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {v:?}")))
        };
        let arrows = arrows
            .iter()
            .map(|&(n, s, t)| Ok(Arrow { name: n.to_string(), src: idx(s)?, dst: idx(t)? }))
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(vertices.iter().map(|s| s.to_string()).collect(), arrows)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm.
        let n = self.n_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.dst] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.src == v) {
                indeg[a.dst] -= 1;
                if indeg[a.dst] == 0 {
                    stack.push(a.dst);
                }
            }
        }
        seen == n
    }

    pub fn opposite(&self) -> Quiver {
        let arrows = self.arrows.iter().map(|a| Arrow { name: a.name.clone(), src: a.dst, dst: a.src }).collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    /// Parses a path written as arrow names, e.g. `["x0", "y1"]`.
    pub fn path_from_names(&self, names: &[&str]) -> Result<Path> {
        let arrows = names
            .iter()
            .map(|n| self.arrow_index(n).ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow {n:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let first = *arrows.first().ok_or_else(|| Error::InvalidQuiver("empty path needs a vertex".into()))?;
        Path::new(self, self.arrows[first].src, arrows)
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.src])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    pub(crate) fn label_key(&self, p: &Path) -> (usize, Vec<String>, usize) {
        let names = p.arrows.iter().map(|&a| self.arrows[a].name.clone()).collect();
        (p.arrows.len(), names, p.src)
    }
}

/// A path in a quiver; arrows compose left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub dst: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { src: v, dst: v, arrows: vec![] }
    }

    pub fn new(q: &Quiver, src: usize, arrows: Vec<usize>) -> Result<Self> {
        let mut at = src;
        for &a in &arrows {
            let arr = q.arrows.get(a).ok_or_else(|| Error::InvalidQuiver(format!("no arrow {a}")))?;
            if arr.src != at {
                return Err(Error::InvalidQuiver(format!("arrow {:?} does not continue the path", arr.name)));
            }
            at = arr.dst;
        }
        Ok(Path { src, dst: at, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn then(&self, q: &Quiver, arrow: usize) -> Option<Path> {
        let a = &q.arrows[arrow];
        (a.src == self.dst).then(|| {
            let mut arrows = self.arrows.clone();
            arrows.push(arrow);
            Path { src: self.src, dst: a.dst, arrows }
        })
    }

    pub fn concat(&self, other: &Path) -> Option<Path> {
        (self.dst == other.src).then(|| {
            let mut arrows = self.arrows.clone();
            arrows.extend(&other.arrows);
            Path { src: self.src, dst: other.dst, arrows }
        })
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { src: self.dst, dst: self.src, arrows }
    }
}

/// A linear combination of parallel paths.
pub type Relation = Vec<(Path, Scalar)>;
