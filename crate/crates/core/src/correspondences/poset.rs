//! Faithfully balanced modules of a representation-finite algebra, ordered by their
//! `cogen^1` and `gen_1` categories.

use super::CorrespondenceError;
use crate::homological::{in_cogen_k, in_gen_k, injective_cat, is_faithfully_balanced, projective_cat, AddCat};
use crate::knit::Catalog;
use crate::module::{regular_module, Rep};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;

/// A basic faithfully balanced module, as a set of catalog indices.
#[derive(Clone, Debug, Serialize)]
pub struct FbModule {
    pub summands: Vec<usize>,
    pub label: String,
    /// Membership of each catalog indecomposable in `cogen^1(M)`.
    pub cogen: Vec<bool>,
    /// Membership of each catalog indecomposable in `gen_1(M)`.
    pub gen: Vec<bool>,
}

impl FbModule {
    /// `self ≤ other`: `cogen^1(self) ⊆ cogen^1(other)` and `gen_1(self) ⊇ gen_1(other)`.
    pub fn leq(&self, other: &FbModule) -> bool {
        let sub = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(x, y)| !x || *y);
        sub(&self.cogen, &other.cogen) && sub(&other.gen, &self.gen)
    }
}

/// The faithfully balanced modules, their equivalence classes and the Hasse diagram on classes.
#[derive(Clone, Debug, Serialize)]
pub struct PosetDiagram {
    pub catalog_labels: Vec<String>,
    /// Subsets tried after forcing the projective-injective summands.
    pub candidates: usize,
    pub modules: Vec<FbModule>,
    /// Each class lists indices into `modules`; the first entry is the representative.
    pub classes: Vec<Vec<usize>>,
    /// Cover relations `(lower, upper)` between classes.
    pub covers: Vec<(usize, usize)>,
    /// Modules that are both generators and cogenerators.
    pub generator_cogenerators: Vec<usize>,
}

fn short_label(summands: &[usize], catalog: &Catalog, proj: &[usize], inj: &[usize]) -> String {
    let mut rest: Vec<usize> = summands.to_vec();
    let mut parts = Vec::new();
    for (set, name) in [(proj, "Λ"), (inj, "DΛ")] {
        if set.iter().all(|i| summands.contains(i)) {
            rest.retain(|i| !set.contains(i));
            parts.push(name.to_string());
        }
    }
    parts.extend(rest.iter().map(|&i| catalog.labels[i].clone()));
    parts.join("|")
}

/// Enumerates the basic faithfully balanced modules over `catalog`, which must list every
/// indecomposable. Subsets are searched in increasing bitmask order after forcing the
/// projective-injective indecomposables and discarding non-faithful candidates.
pub fn fb_poset(catalog: &Catalog) -> Result<PosetDiagram, CorrespondenceError> {
    let n = catalog.len();
    if n == 0 || n > 24 {
        return Err(CorrespondenceError::NeedsEnumeration);
    }
    let alg = &catalog.alg;
    let pcat = projective_cat(alg);
    let icat = injective_cat(alg);
    let proj: Vec<usize> = (0..n).filter(|&i| pcat.contains(&catalog.modules[i])).collect();
    let inj: Vec<usize> = (0..n).filter(|&i| icat.contains(&catalog.modules[i])).collect();
    let mandatory: Vec<usize> = proj.iter().copied().filter(|i| inj.contains(i)).collect();
    let free: Vec<usize> = (0..n).filter(|i| !mandatory.contains(i)).collect();
    let lam = regular_module(alg);

    let found: Vec<Option<FbModule>> = (0u64..1 << free.len())
        .into_par_iter()
        .map(|mask| -> Result<Option<FbModule>, CorrespondenceError> {
            let mut summands = mandatory.clone();
            summands.extend(free.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i));
            summands.sort_unstable();
            if summands.is_empty() {
                return Ok(None);
            }
            let parts: Vec<Rep> = summands.iter().map(|&i| catalog.modules[i].clone()).collect();
            let mcat = AddCat::from_summands(alg, parts.clone());
            if !in_cogen_k(&lam, &mcat, 0) {
                return Ok(None);
            }
            let m = crate::module::sum_of(alg, &parts);
            if !is_faithfully_balanced(&m)? {
                return Ok(None);
            }
            let cogen = catalog.modules.iter().map(|x| in_cogen_k(x, &mcat, 1)).collect();
            let gen = catalog.modules.iter().map(|x| in_gen_k(x, &mcat, 1)).collect();
            let label = short_label(&summands, catalog, &proj, &inj);
            Ok(Some(FbModule { summands, label, cogen, gen }))
        })
        .collect::<Result<_, _>>()?;
    let candidates = found.len();
    let modules: Vec<FbModule> = found.into_iter().flatten().collect();

    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, m) in modules.iter().enumerate() {
        match classes.iter_mut().find(|c| modules[c[0]].cogen == m.cogen && modules[c[0]].gen == m.gen) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let rep = |c: usize| &modules[classes[c][0]];
    let below = |a: usize, b: usize| a != b && rep(a).leq(rep(b));
    let k = classes.len();
    let mut covers = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if below(a, b) && !(0..k).any(|c| below(a, c) && below(c, b)) {
                covers.push((a, b));
            }
        }
    }
    let generator_cogenerators = modules
        .iter()
        .enumerate()
        .filter(|(_, m)| proj.iter().chain(&inj).all(|i| m.summands.contains(i)))
        .map(|(i, _)| i)
        .collect();
    Ok(PosetDiagram { catalog_labels: catalog.labels.clone(), candidates, modules, classes, covers, generator_cogenerators })
}

impl PosetDiagram {
    pub fn n_modules(&self) -> usize {
        self.modules.len()
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, module: usize) -> usize {
        self.classes.iter().position(|c| c.contains(&module)).expect("every module has a class")
    }

    /// The module with exactly these catalog summands, if faithfully balanced.
    pub fn find(&self, summands: &[usize]) -> Option<usize> {
        let mut s = summands.to_vec();
        s.sort_unstable();
        s.dedup();
        self.modules.iter().position(|m| m.summands == s)
    }

    /// Class labels: member labels joined by `" ~ "`.
    pub fn class_label(&self, c: usize) -> String {
        self.classes[c].iter().map(|&i| self.modules[i].label.as_str()).collect::<Vec<_>>().join(" ~ ")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph fb {\n  rankdir=BT;\n");
        for c in 0..self.classes.len() {
            let _ = writeln!(s, "  c{c} [label=\"{}\"];", self.class_label(c));
        }
        for (a, b) in &self.covers {
            let _ = writeln!(s, "  c{a} -> c{b};");
        }
        s.push_str("}\n");
        s
    }
}
