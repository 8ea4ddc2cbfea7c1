//! JSON file formats for algebras, modules and knitted catalogs.
//!
//! Matrices are `target rows × source columns`; paths are listed first-applied-first.
//! Scalars are written as integers when integral and as `"a/b"` strings otherwise.

use crate::algebra::{Algebra, AlgebraError, Arrow, Quiver, Relation};
use crate::knit::{AlmostSplit, Catalog};
use crate::linalg::{Field, Matrix, Scalar};
use crate::module::{ModuleError, Rep};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

fn bad(msg: impl Into<String>) -> IoError {
    IoError::Format(msg.into())
}

/// A scalar as it appears in a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    pub fn to_scalar(&self, f: Field) -> Result<Scalar, IoError> {
        match self {
            Entry::Int(v) => Ok(f.int(*v)),
            Entry::Text(s) => f.parse(s).map_err(IoError::Format),
        }
    }

    pub fn from_scalar(s: &Scalar) -> Entry {
        let t = s.to_string();
        t.parse().map(Entry::Int).unwrap_or(Entry::Text(t))
    }
}

/// A vertex given by label, or by position when no vertex carries that label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Label(String),
}

impl VertexRef {
    fn resolve(&self, vertices: &[String]) -> Result<usize, IoError> {
        let by_label = |l: &str| vertices.iter().position(|v| v == l);
        match self {
            VertexRef::Label(l) => by_label(l).ok_or_else(|| bad(format!("unknown vertex {l:?}"))),
            VertexRef::Index(i) => by_label(&i.to_string())
                .or((*i < vertices.len()).then_some(*i))
                .ok_or_else(|| bad(format!("unknown vertex {i}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowFile {
    pub name: String,
    pub from: VertexRef,
    pub to: VertexRef,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermFile {
    #[serde(default = "one")]
    pub coeff: Entry,
    pub path: Vec<String>,
}

fn one() -> Entry {
    Entry::Int(1)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default)]
    pub field: Field,
    pub quiver: QuiverFile,
    #[serde(default)]
    pub relations: Vec<Vec<TermFile>>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<Arc<Algebra>, IoError> {
        let f = self.field;
        if let Field::Prime { p } = f {
            if !Field::is_prime_number(p) {
                return Err(bad(format!("{p} is not prime")));
            }
        }
        let vs = &self.quiver.vertices;
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|a| Ok(Arrow { name: a.name.clone(), from: a.from.resolve(vs)?, to: a.to.resolve(vs)? }))
            .collect::<Result<Vec<_>, IoError>>()?;
        let q = Quiver { vertices: vs.clone(), arrows };
        let rels = self
            .relations
            .iter()
            .map(|terms| {
                let terms = terms
                    .iter()
                    .map(|t| {
                        let path = t
                            .path
                            .iter()
                            .map(|n| q.arrow_index(n).ok_or_else(|| bad(format!("unknown arrow {n:?}"))))
                            .collect::<Result<Vec<_>, _>>()?;
                        Ok((t.coeff.to_scalar(f)?, path))
                    })
                    .collect::<Result<Vec<_>, IoError>>()?;
                Ok(Relation { terms })
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(Algebra::from_quiver(&q, &rels, f)?)
    }

    /// The file for an algebra built from a quiver; `None` for structure-constant algebras.
    pub fn from_algebra(alg: &Algebra) -> Option<AlgebraFile> {
        let (q, rels) = alg.quiver.as_ref()?;
        let arrows = q
            .arrows
            .iter()
            .map(|a| ArrowFile {
                name: a.name.clone(),
                from: VertexRef::Label(q.vertices[a.from].clone()),
                to: VertexRef::Label(q.vertices[a.to].clone()),
            })
            .collect();
        let relations = rels
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, p)| TermFile {
                        coeff: Entry::from_scalar(c),
                        path: p.iter().map(|&i| q.arrows[i].name.clone()).collect(),
                    })
                    .collect()
            })
            .collect();
        Some(AlgebraFile {
            field: alg.field,
            quiver: QuiverFile { vertices: q.vertices.clone(), arrows },
            relations,
        })
    }
}

/// Dimension per vertex label and one matrix per arrow name; omitted entries are zero.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<Entry>>>,
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<ModuleFile, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_rep(&self, alg: &Arc<Algebra>) -> Result<Rep, IoError> {
        let f = alg.field;
        let mut dims = vec![0; alg.n_vertices()];
        for (v, &d) in &self.dims {
            let i = alg.vertices.iter().position(|x| x == v).ok_or_else(|| bad(format!("unknown vertex {v:?}")))?;
            dims[i] = d;
        }
        for name in self.maps.keys() {
            if !alg.gens.iter().any(|g| &g.name == name) {
                return Err(bad(format!("unknown arrow {name:?}")));
            }
        }
        let maps = alg
            .gens
            .iter()
            .map(|g| {
                let (rows, cols) = (dims[g.to], dims[g.from]);
                let Some(m) = self.maps.get(&g.name) else { return Ok(Matrix::zeros(f, rows, cols)) };
                let ok = if rows == 0 { m.is_empty() || m.iter().all(|r| r.is_empty()) } else { m.len() == rows && m.iter().all(|r| r.len() == cols) };
                if !ok {
                    return Err(bad(format!("map {} must be {rows}×{cols}", g.name)));
                }
                let mut out = Matrix::zeros(f, rows, cols);
                for (i, row) in m.iter().enumerate().take(rows) {
                    for (j, e) in row.iter().enumerate() {
                        out.set(i, j, e.to_scalar(f)?);
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        let rep = Rep::new(alg, dims, maps)?;
        Ok(match &self.label {
            Some(l) => rep.named(l.clone()),
            None => rep,
        })
    }

    pub fn from_rep(x: &Rep) -> ModuleFile {
        let alg = &x.alg;
        let dims = alg.vertices.iter().cloned().zip(x.dims.iter().copied()).filter(|(_, d)| *d > 0).collect();
        let maps = alg
            .gens
            .iter()
            .zip(&x.maps)
            .filter(|(_, m)| !m.is_zero())
            .map(|(g, m)| (g.name.clone(), (0..m.rows).map(|i| m.row(i).iter().map(Entry::from_scalar).collect()).collect()))
            .collect();
        ModuleFile { label: x.name.clone(), dims, maps }
    }
}

/// A knitted catalog, keyed by the fingerprint of the algebra it was computed for.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogFile {
    pub tool_version: String,
    pub fingerprint: String,
    pub modules: Vec<ModuleFile>,
    pub tau: Vec<Option<usize>>,
    pub meshes: Vec<AlmostSplit>,
    pub arrows: Vec<(usize, usize)>,
}

impl CatalogFile {
    pub fn from_catalog(c: &Catalog) -> CatalogFile {
        CatalogFile {
            tool_version: TOOL_VERSION.into(),
            fingerprint: c.alg.fingerprint().into(),
            modules: c.modules.iter().map(ModuleFile::from_rep).collect(),
            tau: c.tau.clone(),
            meshes: c.meshes.clone(),
            arrows: c.arrows.clone(),
        }
    }

    /// Rebuilds the catalog, rejecting files written for another algebra or tool version.
    pub fn into_catalog(self, alg: &Arc<Algebra>) -> Result<Catalog, IoError> {
        if self.fingerprint != alg.fingerprint() || self.tool_version != TOOL_VERSION {
            return Err(bad("catalog was written for a different algebra or tool version"));
        }
        let modules = self.modules.iter().map(|m| m.to_rep(alg)).collect::<Result<Vec<_>, _>>()?;
        let labels = modules.iter().map(|m| m.label()).collect();
        let n = modules.len();
        let in_range = |i: &usize| *i < n;
        if self.tau.len() != n
            || !self.tau.iter().flatten().all(in_range)
            || !self.arrows.iter().all(|(a, b)| in_range(a) && in_range(b))
            || !self.meshes.iter().all(|m| in_range(&m.start) && in_range(&m.end) && m.middle.iter().all(in_range))
        {
            return Err(bad("catalog indices out of range"));
        }
        Ok(Catalog { alg: alg.clone(), modules, labels, tau: self.tau, meshes: self.meshes, arrows: self.arrows })
    }
}
