//! Enumeration of indecomposables by walking irreducible maps (almost split sequences).

use crate::algebra::Algebra;
use crate::homological::{is_injective, is_projective, projective_cat, tau, tau_inv};
use crate::linalg::Matrix;
use crate::module::{
    assemble, cokernel, decompose, end_radical, hom, indecomposables_isomorphic, injectives, kernel, projectives,
    quotient, simples, submodule, sum_of, HomBasis, ModuleError, Morph, Rep,
};
use std::collections::VecDeque;
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_MODULE_CAP: usize = 10_000;

#[derive(Debug, Error)]
pub enum KnitError {
    #[error("knitting did not close after {found} indecomposables ({reason})")]
    NotRepresentationDirected { found: usize, reason: String, partial: Vec<Rep> },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Clone, Copy, Debug)]
pub struct KnitLimits {
    pub max_modules: usize,
    /// Largest total dimension accepted before giving up.
    pub max_dim: usize,
}

impl KnitLimits {
    pub fn for_algebra(alg: &Algebra) -> KnitLimits {
        KnitLimits { max_modules: DEFAULT_MODULE_CAP, max_dim: 4 * alg.dim().max(4) }
    }
}

/// An almost split sequence `0 → start → middle → end → 0`.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct AlmostSplit {
    pub start: usize,
    pub end: usize,
    /// Indices of the indecomposable summands of the middle term, with multiplicity.
    pub middle: Vec<usize>,
}

/// The indecomposables of a representation-finite algebra together with their mesh data.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub alg: Arc<Algebra>,
    pub modules: Vec<Rep>,
    pub labels: Vec<String>,
    /// `tau[i] = Some(j)` when `τ M_i ≅ M_j`.
    pub tau: Vec<Option<usize>>,
    pub meshes: Vec<AlmostSplit>,
    /// Irreducible maps as `(source, target)` index pairs.
    pub arrows: Vec<(usize, usize)>,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// Index of the entry isomorphic to an indecomposable `x`.
    pub fn find(&self, x: &Rep) -> Option<usize> {
        find_in(&self.modules, x)
    }

    pub fn by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of each indecomposable summand of `x`, with multiplicity.
    pub fn locate(&self, x: &Rep) -> Result<Vec<usize>, ModuleError> {
        if x.is_zero() {
            return Ok(vec![]);
        }
        decompose(x)?.iter().map(|s| self.find(&s.rep).ok_or(ModuleError::Inconclusive)).collect()
    }

    /// AR quiver in DOT, with dashed edges for `τ`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ar {\n  rankdir=LR;\n");
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{}\"];\n", l.replace('"', "'")));
        }
        for (a, b) in &self.arrows {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        for (i, t) in self.tau.iter().enumerate() {
            if let Some(j) = t {
                s.push_str(&format!("  n{i} -> n{j} [style=dashed, constraint=false];\n"));
            }
        }
        s.push_str("}\n");
        s
    }
}

fn find_in(list: &[Rep], x: &Rep) -> Option<usize> {
    list.iter().position(|m| m.dims == x.dims && indecomposables_isomorphic(m, x).is_some())
}

/// Radical `rad M`: the sum of the images of the arrows.
pub fn radical(m: &Rep) -> (Rep, Morph) {
    let f = m.field();
    let bases: Vec<Matrix> = (0..m.dims.len())
        .map(|v| {
            let parts: Vec<&Matrix> =
                m.alg.gens.iter().enumerate().filter(|(_, a)| a.to == v).map(|(g, _)| &m.maps[g]).collect();
            if parts.is_empty() {
                Matrix::zeros(f, m.dims[v], 0)
            } else {
                Matrix::hstack(f, m.dims[v], &parts).column_space()
            }
        })
        .collect();
    submodule(m, &bases)
}

/// `M / soc M` with the projection.
pub fn modulo_socle(m: &Rep) -> (Rep, Morph) {
    let f = m.field();
    let bases: Vec<Matrix> = (0..m.dims.len())
        .map(|v| {
            let parts: Vec<&Matrix> =
                m.alg.gens.iter().enumerate().filter(|(_, a)| a.from == v).map(|(g, _)| &m.maps[g]).collect();
            if parts.is_empty() {
                Matrix::identity(f, m.dims[v])
            } else {
                Matrix::vstack(f, m.dims[v], &parts).kernel_basis()
            }
        })
        .collect();
    quotient(m, &bases)
}

/// The almost split sequence starting at a non-injective indecomposable `x`, as `(middle, end)`.
///
/// Built as the pushout of a projective presentation of `τ⁻x` along a class in `Ext^1(τ⁻x, x)`
/// annihilated by the radical of `End(x)`.
pub fn almost_split_from(x: &Rep) -> Result<(Rep, Rep), ModuleError> {
    let z = tau_inv(x);
    assert!(!z.is_zero(), "almost split sequences start at non-injective modules");
    let f = x.field();
    let cover = projective_cat(&x.alg).right_approx(&z);
    let (k, iota) = kernel(&cover.map, &cover.object);
    let hk = HomBasis::new(&k, x);
    let n = hk.len();
    // coboundaries: h ∘ ι for h : P0 → x
    let cob: Vec<Matrix> = hom(&cover.object, x).iter().map(|h| hk.coords(&h.compose(&iota))).collect();
    let cob_refs: Vec<&Matrix> = cob.iter().collect();
    let b = if cob.is_empty() { Matrix::zeros(f, n, 0) } else { Matrix::hstack(f, n, &cob_refs) };
    // rows of `ann` span the functionals vanishing on coboundaries
    let ann = if b.cols == 0 { Matrix::identity(f, n) } else { b.left_kernel_basis() };
    let ends = hom(x, x);
    let rad = end_radical(x, &ends);
    let mut conds: Vec<Matrix> = Vec::new();
    for c in 0..rad.cols {
        let phi = crate::module::combine(x, x, &ends, &rad.col(c));
        let cols: Vec<Matrix> = hk.maps.iter().map(|u| hk.coords(&phi.compose(u))).collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        conds.push(ann.mul(&Matrix::hstack(f, n, &refs)));
    }
    let cond_refs: Vec<&Matrix> = conds.iter().collect();
    let sol = if conds.is_empty() { Matrix::identity(f, n) } else { Matrix::vstack(f, n, &cond_refs).kernel_basis() };
    let pick = (0..sol.cols)
        .map(|j| sol.col(j))
        .find(|v| !ann.mul(&Matrix::column(f, v.clone())).is_zero())
        .expect("socle of Ext^1(τ⁻x, x) is nonzero");
    let u = crate::module::combine(&k, x, &hk.maps, &pick);
    // E = coker(k → x ⊕ P0, t ↦ (u t, −ι t))
    let tgts = [x.clone(), cover.object.clone()];
    let m = assemble(std::slice::from_ref(&k), &tgts, &[vec![u], vec![iota.scale(&f.int(-1))]]);
    let xp = sum_of(&x.alg, &tgts);
    let (e, _) = cokernel(&m, &xp);
    Ok((e, z))
}

struct Knitter {
    limits: KnitLimits,
    modules: Vec<Rep>,
    queue: VecDeque<usize>,
}

impl Knitter {
    fn add(&mut self, x: Rep) -> Result<usize, KnitError> {
        if let Some(i) = find_in(&self.modules, &x) {
            return Ok(i);
        }
        if x.dim() > self.limits.max_dim || self.modules.len() >= self.limits.max_modules {
            let reason = if x.dim() > self.limits.max_dim { "dimension cap" } else { "module cap" };
            return Err(KnitError::NotRepresentationDirected {
                found: self.modules.len(),
                reason: reason.into(),
                partial: self.modules.clone(),
            });
        }
        self.modules.push(x);
        self.queue.push_back(self.modules.len() - 1);
        Ok(self.modules.len() - 1)
    }

    fn add_summands(&mut self, x: &Rep) -> Result<Vec<usize>, KnitError> {
        if x.is_zero() {
            return Ok(vec![]);
        }
        let mut out = Vec::new();
        for s in decompose(x)? {
            out.push(self.add(s.rep)?);
        }
        Ok(out)
    }
}

/// Knits the AR quiver from the projectives, injectives and simples until it closes.
pub fn knit(alg: &Arc<Algebra>, limits: KnitLimits) -> Result<Catalog, KnitError> {
    knit_with(alg, limits, &[])
}

/// As [`knit`], seeding the search with extra modules (e.g. ones in components without projectives).
pub fn knit_with(alg: &Arc<Algebra>, limits: KnitLimits, extra: &[Rep]) -> Result<Catalog, KnitError> {
    let mut k = Knitter { limits, modules: Vec::new(), queue: VecDeque::new() };
    for p in projectives(alg) {
        k.add_summands(&p)?;
    }
    for i in injectives(alg) {
        k.add_summands(&i)?;
    }
    for s in simples(alg) {
        k.add(s)?;
    }
    for x in extra {
        k.add_summands(x)?;
    }
    let mut meshes = Vec::new();
    let mut arrows = Vec::new();
    let mut tau_of: Vec<(usize, usize)> = Vec::new();
    while let Some(i) = k.queue.pop_front() {
        let x = k.modules[i].clone();
        if is_projective(&x) {
            let (r, _) = radical(&x);
            for j in k.add_summands(&r)? {
                arrows.push((j, i));
            }
        } else {
            let t = tau(&x);
            let j = k.add(t)?;
            tau_of.push((i, j));
        }
        if is_injective(&x) {
            let (q, _) = modulo_socle(&x);
            for j in k.add_summands(&q)? {
                arrows.push((i, j));
            }
        } else {
            let (mid, end) = almost_split_from(&x)?;
            let e = k.add(end)?;
            let parts = k.add_summands(&mid)?;
            for &p in &parts {
                arrows.push((i, p));
                arrows.push((p, e));
            }
            meshes.push(AlmostSplit { start: i, end: e, middle: parts });
        }
    }
    arrows.sort_unstable();
    arrows.dedup();
    let n = k.modules.len();
    let mut tau_v = vec![None; n];
    for (i, j) in tau_of {
        tau_v[i] = Some(j);
    }
    let labels = label_all(alg, &k.modules, &tau_v);
    let mut modules = k.modules;
    for (m, l) in modules.iter_mut().zip(&labels) {
        m.name = Some(l.clone());
    }
    Ok(Catalog { alg: alg.clone(), modules, labels, tau: tau_v, meshes, arrows })
}

/// Labels: `P`/`I`/`S` names where they apply, otherwise `tau-(Y)` along `τ`-orbits, else the dimension vector.
fn label_all(alg: &Arc<Algebra>, mods: &[Rep], tau_v: &[Option<usize>]) -> Vec<String> {
    let n = mods.len();
    let mut labels: Vec<Option<String>> = vec![None; n];
    let named = |list: Vec<Rep>| -> Vec<(usize, String)> {
        list.into_iter()
            .filter_map(|r| find_in(mods, &r).map(|i| (i, r.name.clone().unwrap_or_default())))
            .collect()
    };
    for (i, l) in named(projectives(alg)).into_iter().chain(named(injectives(alg))).chain(named(simples(alg))) {
        if labels[i].is_none() {
            labels[i] = Some(l);
        }
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            if labels[i].is_some() {
                continue;
            }
            if let Some(j) = tau_v[i] {
                if let Some(l) = &labels[j] {
                    labels[i] = Some(format!("tau-({l})"));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            l.unwrap_or_else(|| format!("({})", mods[i].dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")))
        })
        .collect()
}
