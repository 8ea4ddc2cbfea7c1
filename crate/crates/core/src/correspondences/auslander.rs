//! Relative Auslander algebras and `k`-`(L, R)`-cluster tilting modules.

use super::{cat, check, Check, CorrespondenceError, TaggedTuple};
use crate::homological::{build_dualizing_sequence, ext, AddCat};
use crate::module::{apply_dhom_functor, apply_hom_functor, coregular_module, regular_module, Rep};
use crate::relative::{verify_strong_dualizing, Bound, ExactStructure};
use serde::{Deserialize, Serialize};

/// `domdim_F` and `gldim_F` of the base algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuslanderReport {
    pub domdim: Bound,
    pub gldim: Bound,
}

impl AuslanderReport {
    pub fn compute(f: &ExactStructure, indecs: &[Rep], cap: usize) -> AuslanderReport {
        AuslanderReport { domdim: f.domdim(cap), gldim: f.gldim(indecs, cap) }
    }

    /// `domdim_F ≥ k + 1 ≥ gldim_F`.
    pub fn is_k_auslander(&self, k: usize) -> bool {
        self.domdim.at_least(k + 1) && self.gldim.at_most(k + 1)
    }

    /// The range of `k ≥ 1` for which the algebra is `k`-`F`-Auslander, if non-empty.
    /// An infinite dominant dimension is reported with upper end `None`.
    pub fn levels(&self) -> Option<(usize, Option<usize>)> {
        let lo = self.gldim.exact()?.saturating_sub(1).max(1);
        let hi = match self.domdim {
            Bound::Exact(d) => Some(d.checked_sub(1)?),
            Bound::AtLeast(_) => return None,
            Bound::Infinite => None,
        };
        match hi {
            Some(h) if h < lo => None,
            _ => Some((lo, hi)),
        }
    }
}

/// `domdim_F Λ ≥ k + 1 ≥ gldim_F Λ`, with `gldim_F` taken over `indecs`.
pub fn is_relative_auslander(f: &ExactStructure, k: usize, indecs: &[Rep], cap: usize) -> bool {
    AuslanderReport::compute(f, indecs, cap.max(k + 2)).is_k_auslander(k)
}

/// The conditions defining a `k`-`(L, R)`-cluster tilting module.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClusterReport {
    /// Length `j` of a strong `add(M)`-dualizing sequence from `L` to `R`.
    pub sequence: Option<usize>,
    pub checks: Vec<Check>,
}

impl ClusterReport {
    pub fn ok(&self) -> bool {
        self.sequence.is_some() && self.checks.iter().all(|c| c.holds)
    }
}

fn strong_length(l: &Rep, r: &Rep, m: &Rep, max_len: usize) -> Result<Option<usize>, CorrespondenceError> {
    for j in 0..=max_len {
        let Ok(seq) = build_dualizing_sequence(l, m, j) else { continue };
        let end = seq.terms.last().expect("non-empty sequence");
        if cat(end)?.same_add(&cat(r)?) {
            return Ok(verify_strong_dualizing(&seq, m).is_ok().then_some(j));
        }
    }
    Ok(None)
}

fn condition_i(m: &Rep, l: &Rep, r: &Rep, mcat: &AddCat) -> Result<[Check; 2], CorrespondenceError> {
    let alg = &m.alg;
    let fr = ExactStructure::cogenerated_by(r)?;
    let fl = ExactStructure::generated_by(l)?;
    Ok([
        check("Λ in cogen^1_{F^R}(M)", fr.in_cogen_k(&regular_module(alg), mcat, 1)),
        check("DΛ in gen_1^{F_L}(M)", fl.in_gen_k(&coregular_module(alg), mcat, 1)),
    ])
}

fn add_equal(xs: &[Rep], target: &Rep) -> Result<bool, CorrespondenceError> {
    let tcat = cat(target)?;
    let all_in = xs.iter().all(|x| tcat.contains(x));
    let covers = tcat.summands.iter().all(|s| xs.iter().any(|x| crate::module::isomorphic(x, s)));
    Ok(all_in && covers)
}

fn perp_left(xs: &[Rep], r: &Rep, k: usize) -> Vec<Rep> {
    xs.iter().filter(|x| (1..k).all(|i| ext(x, r, i) == 0)).cloned().collect()
}

fn perp_right(xs: &[Rep], l: &Rep, k: usize) -> Vec<Rep> {
    xs.iter().filter(|x| (1..k).all(|i| ext(l, x, i) == 0)).cloned().collect()
}

/// Checks that `m` is `k`-`(l, r)`-cluster tilting, enumerating categories over `indecs`.
pub fn is_cluster_tilting_pair(
    m: &Rep,
    l: &Rep,
    r: &Rep,
    k: usize,
    indecs: Option<&[Rep]>,
) -> Result<ClusterReport, CorrespondenceError> {
    let indecs = indecs.ok_or(CorrespondenceError::NeedsEnumeration)?;
    let mcat = cat(m)?;
    let sequence = strong_length(l, r, m, k + 2)?;
    let mut checks = condition_i(m, l, r, &mcat)?.to_vec();
    let fr = ExactStructure::cogenerated_by(r)?;
    let fl = ExactStructure::generated_by(l)?;
    let cogen: Vec<Rep> = indecs.iter().filter(|x| fr.in_cogen_k(x, &mcat, 1)).cloned().collect();
    let gen: Vec<Rep> = indecs.iter().filter(|x| fl.in_gen_k(x, &mcat, 1)).cloned().collect();
    checks.push(check("cogen^1_{F^R}(M) ∩ perp = add(L)", add_equal(&perp_left(&cogen, r, k), l)?));
    checks.push(check("gen_1^{F_L}(M) ∩ perp = add(R)", add_equal(&perp_right(&gen, l, k), r)?));
    Ok(ClusterReport { sequence, checks })
}

/// Outcome of checking `[End(M), _ΓM, (G, M), D(M, H)]` for the cluster tilting conditions.
#[derive(Clone, Debug)]
pub struct TransportedCluster {
    pub tuple: TaggedTuple,
    pub report: ClusterReport,
    /// `domdim_F ≥ k + 1 ≥ gldim_F` on the base side.
    pub auslander: bool,
}

/// Starts from a base algebra with `F = F_G = F^H` and `M ∈ add(G) ∩ add(H)`, passes to
/// `Γ = End(M)`, `L = (G, M)`, `R = D(M, H)`, and checks that `_ΓM` is `k`-`(L, R)`-cluster tilting.
///
/// `Γ` need not be representation-finite: `cogen^1_{F^R}(_ΓM)` is enumerated as the images
/// `(X, M)` of base indecomposables `X ∈ cogen^1_F(M)`, and `gen_1^{F_L}(_ΓM)` as the images
/// `D(M, Y)` of `Y ∈ gen_1^F(M)`. Each image is also checked directly to lie in the target category.
pub fn cluster_tilting_by_transport(
    f: &ExactStructure,
    m: &Rep,
    k: usize,
    indecs: &[Rep],
    cap: usize,
) -> Result<TransportedCluster, CorrespondenceError> {
    let base_mcat = cat(m)?;
    let e = base_mcat.end();
    let l = apply_hom_functor(&f.g, e).rep.named("L");
    let r = apply_dhom_functor(&f.h, e).rep.named("R");
    let gm = e.module.clone();
    let tuple = TaggedTuple::new(&gm, &[("L", &l), ("R", &r)])?;
    let (l, r) = (tuple.slot("L")?.clone(), tuple.slot("R")?.clone());
    let mcat = cat(&tuple.m)?;

    let sequence = strong_length(&l, &r, &tuple.m, k + 2)?;
    let mut checks = condition_i(&tuple.m, &l, &r, &mcat)?.to_vec();
    let fr = ExactStructure::cogenerated_by(&r)?;
    let fl = ExactStructure::generated_by(&l)?;

    let mut cogen = Vec::new();
    let mut deep = Vec::new();
    let mut gen = Vec::new();
    let mut deep_gen = Vec::new();
    for x in indecs {
        if f.in_cogen_k(x, &base_mcat, 1) {
            let y = apply_hom_functor(x, e).rep;
            if !y.is_zero() {
                assert!(fr.in_cogen_k(&y, &mcat, 1), "(X,M) left cogen^1 for {}", x.label());
                deep.push(f.cogen_level(x, &base_mcat, k).is_some_and(|v| v >= k));
                cogen.push(y);
            }
        }
        if f.in_gen_k(x, &base_mcat, 1) {
            let y = apply_dhom_functor(x, e).rep;
            if !y.is_zero() {
                assert!(fl.in_gen_k(&y, &mcat, 1), "D(M,X) left gen_1 for {}", x.label());
                deep_gen.push(f.gen_level(x, &base_mcat, k).is_some_and(|v| v >= k));
                gen.push(y);
            }
        }
    }
    // the Ext-perpendicular part corresponds to cogen^k on the base side
    let left: Vec<bool> = cogen.iter().map(|y| (1..k).all(|i| ext(y, &r, i) == 0)).collect();
    let right: Vec<bool> = gen.iter().map(|y| (1..k).all(|i| ext(&l, y, i) == 0)).collect();
    checks.push(check("Ext-perpendicular part of cogen^1 matches cogen^k", left == deep));
    checks.push(check("Ext-perpendicular part of gen_1 matches gen_k", right == deep_gen));
    checks.push(check("cogen^1_{F^R}(M) ∩ perp = add(L)", add_equal(&perp_left(&cogen, &r, k), &l)?));
    checks.push(check("gen_1^{F_L}(M) ∩ perp = add(R)", add_equal(&perp_right(&gen, &l, k), &r)?));

    let auslander = is_relative_auslander(f, k, indecs, cap);
    Ok(TransportedCluster { tuple, report: ClusterReport { sequence, checks }, auslander })
}
