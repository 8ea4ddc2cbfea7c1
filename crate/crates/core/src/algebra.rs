//! Finite-dimensional basic algebras carried by structure constants.
//!
//! Every algebra has a basis of monomials: the trivial paths `e_v`, the
//! generators ("arrows"), and longer words in the generators. Words are
//! stored first-applied-first, so the word `[a, b]` is the product `b·a`.

use crate::linalg::{Field, Matrix, Scalar};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

pub const DEFAULT_PATH_CAP: usize = 64;
const MAX_PATHS_PER_DEGREE: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("relations are not admissible: paths of length {0} survive (cap reached)")]
    NotAdmissible(usize),
    #[error("bad relation: {0}")]
    BadRelation(String),
    #[error("bad quiver: {0}")]
    BadQuiver(String),
    #[error("structure constants are not associative")]
    NotAssociative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// Linear quiver `1 → 2 → … → n` with arrows `a1, …, a(n-1)`.
    pub fn linear(n: usize) -> Quiver {
        Quiver {
            vertices: (1..=n).map(|i| i.to_string()).collect(),
            arrows: (0..n.saturating_sub(1))
                .map(|i| Arrow { name: format!("a{}", i + 1), from: i, to: i + 1 })
                .collect(),
        }
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A linear combination of parallel paths, each given by arrow indices first-applied-first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

/// Basis monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElem {
    pub from: usize,
    pub to: usize,
    /// Generator indices, first-applied-first; empty for `e_v`.
    pub word: Vec<usize>,
    pub label: String,
}

type SparseVec = Vec<(usize, Scalar)>;

#[derive(Debug)]
pub struct Algebra {
    pub field: Field,
    pub vertices: Vec<String>,
    pub gens: Vec<Arrow>,
    pub basis: Vec<BasisElem>,
    /// `mult[i][j]` is `b_i · b_j` (apply `b_j`, then `b_i`).
    mult: Vec<Vec<SparseVec>>,
    gen_basis: Vec<usize>,
    pub quiver: Option<(Quiver, Vec<Relation>)>,
    fingerprint: String,
    opposite: OnceLock<Arc<Algebra>>,
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Algebra) -> bool {
        self.fingerprint == o.fingerprint
    }
}

fn path_label(q: &Quiver, word: &[usize]) -> String {
    word.iter().rev().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("")
}

impl Algebra {
    pub fn from_quiver(q: &Quiver, rels: &[Relation], field: Field) -> Result<Arc<Algebra>, AlgebraError> {
        Algebra::from_quiver_capped(q, rels, field, DEFAULT_PATH_CAP)
    }

    pub fn from_quiver_capped(
        q: &Quiver,
        rels: &[Relation],
        field: Field,
        cap: usize,
    ) -> Result<Arc<Algebra>, AlgebraError> {
        let nv = q.vertices.len();
        if nv == 0 {
            return Err(AlgebraError::BadQuiver("no vertices".into()));
        }
        for (i, v) in q.vertices.iter().enumerate() {
            if q.vertices[..i].contains(v) {
                return Err(AlgebraError::BadQuiver(format!("duplicate vertex {v}")));
            }
        }
        for (i, a) in q.arrows.iter().enumerate() {
            if a.from >= nv || a.to >= nv {
                return Err(AlgebraError::BadQuiver(format!("arrow {} has an unknown endpoint", a.name)));
            }
            if q.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(AlgebraError::BadQuiver(format!("duplicate arrow {}", a.name)));
            }
        }
        // Validate relations and bucket them by length.
        let mut rel_by_deg: HashMap<usize, Vec<&Relation>> = HashMap::new();
        for r in rels {
            let Some((_, p0)) = r.terms.first() else {
                return Err(AlgebraError::BadRelation("empty relation".into()));
            };
            let deg = p0.len();
            let ends = |p: &[usize]| -> Result<(usize, usize), AlgebraError> {
                if p.len() < 2 {
                    return Err(AlgebraError::BadRelation("relation paths must have length at least 2".into()));
                }
                for w in p.windows(2) {
                    if q.arrows[w[0]].to != q.arrows[w[1]].from {
                        return Err(AlgebraError::BadRelation(format!(
                            "path {} is not composable",
                            path_label(q, p)
                        )));
                    }
                }
                Ok((q.arrows[p[0]].from, q.arrows[*p.last().unwrap()].to))
            };
            let e0 = ends(p0)?;
            for (_, p) in &r.terms {
                if p.iter().any(|&a| a >= q.arrows.len()) {
                    return Err(AlgebraError::BadRelation("unknown arrow".into()));
                }
                if ends(p)? != e0 {
                    return Err(AlgebraError::BadRelation(format!(
                        "paths {} and {} are not parallel",
                        path_label(q, p0),
                        path_label(q, p)
                    )));
                }
                if p.len() != deg {
                    return Err(AlgebraError::BadRelation(
                        "relations must be homogeneous (all paths of equal length)".into(),
                    ));
                }
            }
            rel_by_deg.entry(deg).or_default().push(r);
        }

        // Degree-by-degree elimination.
        struct Degree {
            paths: Vec<Vec<usize>>,
            index: HashMap<Vec<usize>, usize>,
            /// Normal form of each path as a combination of standard monomials (global basis indices filled later).
            normal: Vec<Vec<(usize, Scalar)>>,
            standard: Vec<usize>,
        }
        let mut degrees: Vec<Degree> = Vec::new();
        // degree 1
        let mut prev_paths: Vec<Vec<usize>> = (0..q.arrows.len()).map(|a| vec![a]).collect();
        let mut prev_ideal: Matrix = Matrix::zeros(field, 0, prev_paths.len());
        {
            let index = prev_paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let n = prev_paths.len();
            degrees.push(Degree {
                paths: prev_paths.clone(),
                index,
                normal: (0..n).map(|i| vec![(i, field.one())]).collect(),
                standard: (0..n).collect(),
            });
        }
        let mut d = 2;
        loop {
            if prev_paths.is_empty() {
                break;
            }
            if d > cap {
                return Err(AlgebraError::NotAdmissible(d));
            }
            let mut paths = Vec::new();
            for p in &prev_paths {
                let end = q.arrows[*p.last().unwrap()].to;
                for (a, arr) in q.arrows.iter().enumerate() {
                    if arr.from == end {
                        let mut np = p.clone();
                        np.push(a);
                        paths.push(np);
                    }
                }
            }
            if paths.len() > MAX_PATHS_PER_DEGREE {
                return Err(AlgebraError::NotAdmissible(d));
            }
            paths.sort();
            let index: HashMap<Vec<usize>, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let prev_index: HashMap<&Vec<usize>, usize> = prev_paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
            // Spanning set of I_d.
            let mut gens_rows: Vec<Vec<Scalar>> = Vec::new();
            let zero_row = || vec![field.zero(); paths.len()];
            for r in rel_by_deg.get(&d).into_iter().flatten() {
                let mut row = zero_row();
                for (c, p) in &r.terms {
                    let i = index[p];
                    row[i] = row[i].add(c);
                }
                gens_rows.push(row);
            }
            for i in 0..prev_ideal.rows {
                let src = prev_ideal.row(i);
                // extend on the right (apply one more arrow afterwards) and on the left
                for (a, arr) in q.arrows.iter().enumerate() {
                    let mut right = zero_row();
                    let mut left = zero_row();
                    let (mut any_r, mut any_l) = (false, false);
                    for (j, c) in src.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let p = &prev_paths[j];
                        if q.arrows[*p.last().unwrap()].to == arr.from {
                            let mut np = p.clone();
                            np.push(a);
                            right[index[&np]] = c.clone();
                            any_r = true;
                        }
                        if q.arrows[p[0]].from == arr.to {
                            let mut np = vec![a];
                            np.extend(p);
                            left[index[&np]] = c.clone();
                            any_l = true;
                        }
                    }
                    if any_r {
                        gens_rows.push(right);
                    }
                    if any_l {
                        gens_rows.push(left);
                    }
                }
            }
            let _ = prev_index;
            let ideal = if gens_rows.is_empty() {
                Matrix::zeros(field, 0, paths.len())
            } else {
                let rr = Matrix::from_rows(field, gens_rows).rref();
                let k = rr.pivots.len();
                rr.m.block(0, 0, k, paths.len())
            };
            let rr = ideal.rref();
            let mut is_pivot = vec![None; paths.len()];
            for (i, &p) in rr.pivots.iter().enumerate() {
                is_pivot[p] = Some(i);
            }
            let standard: Vec<usize> = (0..paths.len()).filter(|&j| is_pivot[j].is_none()).collect();
            let std_pos: HashMap<usize, usize> = standard.iter().enumerate().map(|(k, &j)| (j, k)).collect();
            let normal = (0..paths.len())
                .map(|j| match is_pivot[j] {
                    None => vec![(std_pos[&j], field.one())],
                    Some(i) => standard
                        .iter()
                        .filter(|&&s| !rr.m.get(i, s).is_zero())
                        .map(|&s| (std_pos[&s], rr.m.get(i, s).neg()))
                        .collect(),
                })
                .collect();
            let survivors = !standard.is_empty();
            degrees.push(Degree { paths: paths.clone(), index, normal, standard });
            if !survivors {
                break;
            }
            prev_paths = paths;
            prev_ideal = ideal;
            d += 1;
        }

        // Assemble global basis.
        let mut basis: Vec<BasisElem> = (0..nv)
            .map(|v| BasisElem { from: v, to: v, word: vec![], label: format!("e{}", q.vertices[v]) })
            .collect();
        let mut offset = Vec::new();
        for deg in &degrees {
            offset.push(basis.len());
            for &s in &deg.standard {
                let w = deg.paths[s].clone();
                basis.push(BasisElem {
                    from: q.arrows[w[0]].from,
                    to: q.arrows[*w.last().unwrap()].to,
                    label: path_label(q, &w),
                    word: w,
                });
            }
        }
        let dim = basis.len();
        let normal_form = |w: &[usize]| -> SparseVec {
            let dd = w.len();
            if dd == 0 || dd > degrees.len() {
                return vec![];
            }
            let deg = &degrees[dd - 1];
            let Some(&i) = deg.index.get(w) else { return vec![] };
            deg.normal[i].iter().map(|(k, c)| (offset[dd - 1] + k, c.clone())).collect()
        };
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let (bi, bj) = (&basis[i], &basis[j]);
                if bi.from != bj.to {
                    continue;
                }
                mult[i][j] = if bi.word.is_empty() {
                    vec![(j, field.one())]
                } else if bj.word.is_empty() {
                    vec![(i, field.one())]
                } else {
                    let mut w = bj.word.clone();
                    w.extend(&bi.word);
                    normal_form(&w)
                };
            }
        }
        let gen_basis = (0..q.arrows.len()).map(|a| nv + a).collect();
        let alg = Algebra::assemble(
            field,
            q.vertices.clone(),
            q.arrows.clone(),
            basis,
            mult,
            gen_basis,
            Some((q.clone(), rels.to_vec())),
        )?;
        Ok(Arc::new(alg))
    }

    /// Builds an algebra from a monomial basis and structure constants; checks associativity.
    pub fn from_structure(
        field: Field,
        vertices: Vec<String>,
        gens: Vec<Arrow>,
        basis: Vec<BasisElem>,
        mult: Vec<Vec<Vec<(usize, Scalar)>>>,
        gen_basis: Vec<usize>,
    ) -> Result<Arc<Algebra>, AlgebraError> {
        Ok(Arc::new(Algebra::assemble(field, vertices, gens, basis, mult, gen_basis, None)?))
    }

    fn assemble(
        field: Field,
        vertices: Vec<String>,
        gens: Vec<Arrow>,
        basis: Vec<BasisElem>,
        mult: Vec<Vec<SparseVec>>,
        gen_basis: Vec<usize>,
        quiver: Option<(Quiver, Vec<Relation>)>,
    ) -> Result<Algebra, AlgebraError> {
        let mut h = Sha256::new();
        h.update(format!("{field:?}|{}|", vertices.join(",")));
        for g in &gens {
            h.update(format!("{}>{};", g.from, g.to));
        }
        for b in &basis {
            h.update(format!("{:?};", b.word));
        }
        for row in &mult {
            for e in row {
                for (k, c) in e {
                    h.update(format!("{k}:{c},"));
                }
                h.update(";");
            }
        }
        let fingerprint = hex::encode(h.finalize());
        let a = Algebra { field, vertices, gens, basis, mult, gen_basis, quiver, fingerprint, opposite: OnceLock::new() };
        if !a.is_associative() {
            return Err(AlgebraError::NotAssociative);
        }
        Ok(a)
    }

    fn is_associative(&self) -> bool {
        let n = self.dim();
        for x in 0..n {
            for y in 0..n {
                if self.basis[x].from != self.basis[y].to {
                    continue;
                }
                let xy = &self.mult[x][y];
                for z in 0..n {
                    if self.basis[y].from != self.basis[z].to {
                        continue;
                    }
                    let left = self.mul_vec_right(xy, z);
                    let yz = &self.mult[y][z];
                    let right = self.mul_vec_left(x, yz);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn dense(&self, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (k, c) in v {
            out[*k] = out[*k].add(c);
        }
        out
    }

    fn mul_vec_right(&self, v: &[(usize, Scalar)], z: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (k, c) in v {
            for (m, d) in &self.mult[*k][z] {
                out[*m] = out[*m].add(&c.mul(d));
            }
        }
        out
    }

    fn mul_vec_left(&self, x: usize, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (k, c) in v {
            for (m, d) in &self.mult[x][*k] {
                out[*m] = out[*m].add(&c.mul(d));
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// Structure constants of `b_i · b_j`.
    pub fn mult(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.mult[i][j]
    }

    /// Dense coordinates of `b_i · b_j`.
    pub fn product(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.dense(&self.mult[i][j])
    }

    /// Basis index of generator `g`.
    pub fn gen_basis(&self, g: usize) -> usize {
        self.gen_basis[g]
    }

    /// The unit `Σ e_v` in basis coordinates.
    pub fn unit(&self) -> Vec<Scalar> {
        (0..self.dim()).map(|i| if i < self.n_vertices() { self.field.one() } else { self.field.zero() }).collect()
    }

    pub fn same(a: &Algebra, b: &Algebra) -> bool {
        std::ptr::eq(a, b) || a.fingerprint == b.fingerprint
    }

    /// Opposite algebra: reversed words and products, same idempotents.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let n = self.dim();
                let gens =
                    self.gens.iter().map(|g| Arrow { name: g.name.clone(), from: g.to, to: g.from }).collect();
                let basis = self
                    .basis
                    .iter()
                    .map(|b| BasisElem {
                        from: b.to,
                        to: b.from,
                        word: b.word.iter().rev().copied().collect(),
                        label: b.label.clone(),
                    })
                    .collect();
                let mult = (0..n).map(|i| (0..n).map(|j| self.mult[j][i].clone()).collect()).collect();
                let op = Algebra::assemble(
                    self.field,
                    self.vertices.clone(),
                    gens,
                    basis,
                    mult,
                    self.gen_basis.clone(),
                    None,
                )
                .expect("opposite of an associative algebra is associative");
                Arc::new(op)
            })
            .clone()
    }

    /// Basis indices lying in `e_to · A · e_from`.
    pub fn basis_between(&self, from: usize, to: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].from == from && self.basis[i].to == to).collect()
    }

    /// Whether every generator sits in a proper path (no loops at vertices), used for naming conventions.
    pub fn is_quiver_algebra(&self) -> bool {
        self.quiver.is_some()
    }

    /// Path algebra of the linear quiver `1 → … → n`.
    pub fn linear(n: usize, field: Field) -> Arc<Algebra> {
        Algebra::from_quiver(&Quiver::linear(n), &[], field).expect("linear quiver is admissible")
    }
}
