//! Relative homological algebra for an exact structure `F = F_G = F^H`.
//!
//! `F`-projectives are `add(G)`, `F`-injectives are `add(H)`. Resolutions use minimal
//! `add(G)`- resp. `add(H)`-approximations; the embeddings `r = (G, −)` and `ℓ = D(−, H)` give an
//! independent route to relative Ext.

mod strong;
mod tilting;

pub use strong::*;
pub use tilting::*;

use crate::algebra::Algebra;
use crate::homological::{
    cogen_f_by_tensor, cogen_level, coresolution, coresolution_dim, ext, ext_by, gen_f_by_tensor, gen_level,
    projective_dim, resolution, resolution_dim, tau, tau_inv, AddCat, ExactSeq, HomologicalError, Step,
};
use crate::module::{
    apply_dhom_functor, apply_hom_functor, coregular_module, regular_module, simples, sum_of, ModuleError, Rep,
};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Default bound on resolution lengths.
pub const DEFAULT_CAP: usize = 8;

#[derive(Debug, Error)]
pub enum RelativeError {
    #[error("module is not a generator")]
    NotGenerator,
    #[error("module is not a cogenerator")]
    NotCogenerator,
    #[error("generator and cogenerator do not define the same exact structure: {0}")]
    NotMatching(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no exchange sequence: {0}")]
    NoExchangeSequence(String),
    #[error("search exhausted: {0} candidates exceed the cap")]
    SearchExhausted(usize),
    #[error("sequence is not strong: {0}")]
    NotStrong(String),
    #[error(transparent)]
    Homological(#[from] HomologicalError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// A homological dimension, possibly only bounded below by the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Bound {
    Exact(usize),
    AtLeast(usize),
    Infinite,
}

impl Bound {
    pub fn exact(self) -> Option<usize> {
        match self {
            Bound::Exact(v) => Some(v),
            _ => None,
        }
    }

    /// `self ≤ k`, treating caps and infinity as too large.
    pub fn at_most(self, k: usize) -> bool {
        matches!(self, Bound::Exact(v) if v <= k)
    }

    /// `self ≥ k`.
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Bound::Exact(v) | Bound::AtLeast(v) => v >= k,
            Bound::Infinite => true,
        }
    }

    fn from_cap(v: Option<usize>, cap: usize) -> Bound {
        v.map_or(Bound::AtLeast(cap + 1), Bound::Exact)
    }

    fn max(self, o: Bound) -> Bound {
        match (self, o) {
            (Bound::Infinite, _) | (_, Bound::Infinite) => Bound::Infinite,
            (Bound::AtLeast(a), Bound::AtLeast(b)) => Bound::AtLeast(a.max(b)),
            (Bound::AtLeast(a), Bound::Exact(b)) | (Bound::Exact(b), Bound::AtLeast(a)) => {
                if b >= a {
                    Bound::Exact(b)
                } else {
                    Bound::AtLeast(a)
                }
            }
            (Bound::Exact(a), Bound::Exact(b)) => Bound::Exact(a.max(b)),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact(v) => write!(f, "{v}"),
            Bound::AtLeast(v) => write!(f, ">= {v}"),
            Bound::Infinite => write!(f, "infinity"),
        }
    }
}

/// `F = F_G = F^H` with `G` and `H` stored basic.
#[derive(Clone, Debug)]
pub struct ExactStructure {
    pub alg: Arc<Algebra>,
    pub g: Rep,
    pub h: Rep,
    pub gcat: Arc<AddCat>,
    pub hcat: Arc<AddCat>,
    pub certified: bool,
}

fn basic_cat(x: &Rep) -> Result<Arc<AddCat>, ModuleError> {
    Ok(Arc::new(AddCat::new(x)?))
}

fn labelled(x: Rep, name: &str) -> Rep {
    x.named(name)
}

impl ExactStructure {
    /// From a generator `G`, with `H = τG ⊕ DΛ`.
    pub fn from_generator(g: &Rep) -> Result<ExactStructure, RelativeError> {
        let alg = g.alg.clone();
        let gcat = basic_cat(g)?;
        if !crate::homological::projective_cat(&alg).within(&gcat) {
            return Err(RelativeError::NotGenerator);
        }
        let g = labelled(gcat.basic(), "G");
        let hcat = basic_cat(&sum_of(&alg, &[tau(&g), coregular_module(&alg)]))?;
        let h = labelled(hcat.basic(), "H");
        ExactStructure::certify(alg, g, h, gcat, hcat)
    }

    /// From a cogenerator `H`, with `G = τ⁻H ⊕ Λ`.
    pub fn from_cogenerator(h: &Rep) -> Result<ExactStructure, RelativeError> {
        let alg = h.alg.clone();
        let hcat = basic_cat(h)?;
        if !crate::homological::injective_cat(&alg).within(&hcat) {
            return Err(RelativeError::NotCogenerator);
        }
        let h = labelled(hcat.basic(), "H");
        let gcat = basic_cat(&sum_of(&alg, &[tau_inv(&h), regular_module(&alg)]))?;
        let g = labelled(gcat.basic(), "G");
        ExactStructure::certify(alg, g, h, gcat, hcat)
    }

    /// `F_M`, normalized to `F_{M ⊕ Λ}`.
    pub fn generated_by(m: &Rep) -> Result<ExactStructure, RelativeError> {
        ExactStructure::from_generator(&sum_of(&m.alg, &[m.clone(), regular_module(&m.alg)]))
    }

    /// `F^M`, normalized to `F^{M ⊕ DΛ}`.
    pub fn cogenerated_by(m: &Rep) -> Result<ExactStructure, RelativeError> {
        ExactStructure::from_cogenerator(&sum_of(&m.alg, &[m.clone(), coregular_module(&m.alg)]))
    }

    /// The ordinary structure `F = Ext^1`.
    pub fn standard(alg: &Arc<Algebra>) -> ExactStructure {
        ExactStructure::from_generator(&regular_module(alg)).expect("the regular module is a generator")
    }

    /// A structure from a given pair; fails unless `add(H) = add(τG ⊕ DΛ)` and `add(G) = add(τ⁻H ⊕ Λ)`.
    pub fn from_pair(g: &Rep, h: &Rep) -> Result<ExactStructure, RelativeError> {
        let alg = g.alg.clone();
        let gcat = basic_cat(g)?;
        let hcat = basic_cat(h)?;
        if !crate::homological::projective_cat(&alg).within(&gcat) {
            return Err(RelativeError::NotGenerator);
        }
        if !crate::homological::injective_cat(&alg).within(&hcat) {
            return Err(RelativeError::NotCogenerator);
        }
        let (g, h) = (labelled(gcat.basic(), "G"), labelled(hcat.basic(), "H"));
        ExactStructure::certify(alg, g, h, gcat, hcat)
    }

    fn certify(
        alg: Arc<Algebra>,
        g: Rep,
        h: Rep,
        gcat: Arc<AddCat>,
        hcat: Arc<AddCat>,
    ) -> Result<ExactStructure, RelativeError> {
        let from_g = AddCat::new(&sum_of(&alg, &[tau(&g), coregular_module(&alg)]))?;
        if !from_g.same_add(&hcat) {
            return Err(RelativeError::NotMatching("add(H) differs from add(tau G + DA)".into()));
        }
        let from_h = AddCat::new(&sum_of(&alg, &[tau_inv(&h), regular_module(&alg)]))?;
        if !from_h.same_add(&gcat) {
            return Err(RelativeError::NotMatching("add(G) differs from add(tau- H + A)".into()));
        }
        Ok(ExactStructure { alg, g, h, gcat, hcat, certified: true })
    }

    pub fn is_projective(&self, x: &Rep) -> bool {
        self.gcat.contains(x)
    }

    pub fn is_injective(&self, x: &Rep) -> bool {
        self.hcat.contains(x)
    }

    /// An exact sequence stays exact under `Hom(G, −)`; asserted to agree with `Hom(−, H)`.
    pub fn is_exact(&self, seq: &ExactSeq) -> bool {
        if !seq.is_exact() {
            return false;
        }
        let a = seq.covariant_exact(&self.g);
        let b = seq.contravariant_exact(&self.h);
        assert_eq!(a, b, "Hom(G,-) and Hom(-,H) disagree on F-exactness");
        a
    }

    /// `x ∈ cogen^k_F(M)` by `F`-monic approximations, cross-checked by the tensor criterion.
    pub fn in_cogen_k(&self, x: &Rep, mcat: &AddCat, k: usize) -> bool {
        let a = self.cogen_level(x, mcat, k).is_some_and(|l| l >= k);
        let b = cogen_f_by_tensor(x, mcat, &self.h, k);
        assert_eq!(a, b, "cogen^{k}_F criteria disagree for {}", x.label());
        a
    }

    /// `x ∈ gen_k^F(M)`, cross-checked by the dual tensor criterion.
    pub fn in_gen_k(&self, x: &Rep, mcat: &AddCat, k: usize) -> bool {
        let a = self.gen_level(x, mcat, k).is_some_and(|l| l >= k);
        let b = gen_f_by_tensor(x, mcat, &self.g, k);
        assert_eq!(a, b, "gen_{k}^F criteria disagree for {}", x.label());
        a
    }

    /// Largest `k ≤ cap` with `x ∈ cogen^k_F(M)` (approximation route only).
    pub fn cogen_level(&self, x: &Rep, mcat: &AddCat, cap: usize) -> Option<usize> {
        cogen_level(x, mcat, cap, Some(&self.h))
    }

    pub fn gen_level(&self, x: &Rep, mcat: &AddCat, cap: usize) -> Option<usize> {
        gen_level(x, mcat, cap, Some(&self.g))
    }

    /// `G ∈ cogen^k_F(M)`, asserted equivalent to `H ∈ gen_k^F(M)`.
    pub fn is_k_faithful(&self, m: &Rep, k: usize) -> Result<bool, ModuleError> {
        let mcat = AddCat::new(m)?;
        let a = self.in_cogen_k(&self.g, &mcat, k);
        let b = self.in_gen_k(&self.h, &mcat, k);
        assert_eq!(a, b, "G in cogen^{k}_F(M) and H in gen_{k}^F(M) disagree");
        Ok(a)
    }

    /// `dim Ext^i_F(x, y)` from the minimal `F`-projective resolution.
    pub fn ext_resolved(&self, x: &Rep, y: &Rep, i: usize) -> usize {
        ext_by(&self.gcat, x, y, i)
    }

    /// `dim Ext^i_F(x, y)`, asserted equal to `Ext^i_Δ(r x, r y)`.
    pub fn ext(&self, x: &Rep, y: &Rep, i: usize) -> usize {
        let a = self.ext_resolved(x, y, i);
        let b = ext(&self.embed_left(x), &self.embed_left(y), i);
        assert_eq!(a, b, "Ext^{i}_F and the embedded Ext disagree on ({}, {})", x.label(), y.label());
        a
    }

    /// `Ext^i_F(x, y) = 0` for `1 ≤ i ≤ upto`.
    pub fn ext_vanishes(&self, x: &Rep, y: &Rep, upto: usize) -> bool {
        (1..=upto).all(|i| self.ext_resolved(x, y, i) == 0)
    }

    pub fn projective_resolution(&self, x: &Rep, steps: usize) -> Vec<Step> {
        resolution(&self.gcat, x, steps)
    }

    pub fn injective_coresolution(&self, x: &Rep, steps: usize) -> Vec<Step> {
        coresolution(&self.hcat, x, steps)
    }

    pub fn pd(&self, x: &Rep, cap: usize) -> Bound {
        Bound::from_cap(resolution_dim(&self.gcat, x, cap), cap)
    }

    pub fn id(&self, x: &Rep, cap: usize) -> Bound {
        Bound::from_cap(coresolution_dim(&self.hcat, x, cap), cap)
    }

    /// First index `i` of the minimal `F`-injective coresolution `0 → G → H_0 → H_1 → …` with `H_i ∉ add(G)`.
    pub fn domdim(&self, cap: usize) -> Bound {
        let steps = self.injective_coresolution(&self.g, cap + 1);
        for (i, s) in steps.iter().enumerate() {
            if !self.gcat.contains(&s.approx.object) {
                return Bound::Exact(i);
            }
        }
        if steps.last().is_none_or(|s| s.next.is_zero()) {
            Bound::Infinite
        } else {
            Bound::AtLeast(steps.len())
        }
    }

    /// Largest `pd_F` over a list of modules (all indecomposables, for a global statement).
    pub fn gldim(&self, modules: &[Rep], cap: usize) -> Bound {
        modules.iter().fold(Bound::Exact(0), |acc, x| acc.max(self.pd(x, cap)))
    }

    /// `r = (G, −)` as a module over `Δ = End(G)^op`.
    pub fn embed_left(&self, x: &Rep) -> Rep {
        let e = self.gcat.end();
        let r = apply_dhom_functor(x, e).rep.dual();
        r.named(format!("r({})", x.label()))
    }

    /// `ℓ = D(−, H)` as a module over `Σ = End(H)^op`.
    pub fn embed_right(&self, x: &Rep) -> Rep {
        let e = self.hcat.end();
        let l = apply_hom_functor(x, e).rep.dual();
        l.named(format!("l({})", x.label()))
    }

    /// `Δ = End(G)^op`.
    pub fn delta(&self) -> Arc<Algebra> {
        self.gcat.end().gamma.opposite()
    }

    /// `Σ = End(H)^op`.
    pub fn sigma(&self) -> Arc<Algebra> {
        self.hcat.end().gamma.opposite()
    }

    /// Global dimension of `Δ`, from its simples.
    pub fn delta_gldim(&self, cap: usize) -> Bound {
        global_dimension(&self.delta(), cap)
    }

    pub fn sigma_gldim(&self, cap: usize) -> Bound {
        global_dimension(&self.sigma(), cap)
    }
}

/// `gldim A` as the largest projective dimension of a simple.
pub fn global_dimension(alg: &Arc<Algebra>, cap: usize) -> Bound {
    simples(alg).iter().fold(Bound::Exact(0), |acc, s| acc.max(Bound::from_cap(projective_dim(s, cap), cap)))
}

/// `pd_F`, `id_F` per module and the algebra-level `domdim_F`, `gldim_F`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FInvariantsReport {
    pub labels: Vec<String>,
    pub pd: Vec<Bound>,
    pub id: Vec<Bound>,
    pub domdim: Bound,
    pub gldim: Bound,
    /// Terms of the minimal `F`-injective coresolution of `G`.
    pub coresolution: Vec<String>,
    /// `gldim_F ≤ k ⟺ pd_F DΛ ≤ k and gldim Δ ≤ k + 2`, checked at `k = gldim_F`.
    pub delta_check: bool,
}

/// Computes the report; `gldim_F` is only meaningful when `modules` lists every indecomposable.
pub fn f_invariants(f: &ExactStructure, modules: &[Rep], cap: usize) -> FInvariantsReport {
    assert!(cap >= 1);
    let labels = modules.iter().map(|m| m.label()).collect();
    let pd: Vec<Bound> = modules.iter().map(|x| f.pd(x, cap)).collect();
    let id = modules.iter().map(|x| f.id(x, cap)).collect();
    let gldim = pd.iter().fold(Bound::Exact(0), |a, &b| a.max(b));
    let coresolution = f.injective_coresolution(&f.g, cap + 1).iter().map(|s| s.approx.object.label()).collect();
    let delta_check = match gldim {
        Bound::Exact(k) => gldim_criteria(f, k, cap).iter().all(|&c| c),
        _ => true,
    };
    FInvariantsReport { labels, pd, id, domdim: f.domdim(cap), gldim, coresolution, delta_check }
}

/// The two embedded criteria for `gldim_F ≤ k`: via `Δ` and via `Σ`.
pub fn gldim_criteria(f: &ExactStructure, k: usize, cap: usize) -> [bool; 2] {
    let alg = &f.alg;
    let via_delta = f.pd(&coregular_module(alg), cap).at_most(k) && f.delta_gldim(cap.max(k + 2)).at_most(k + 2);
    let via_sigma = f.id(&regular_module(alg), cap).at_most(k) && f.sigma_gldim(cap.max(k + 2)).at_most(k + 2);
    [via_delta, via_sigma]
}
