//! `cogen^k(M)`, `gen_k(M)`, faithfully balanced modules and dualizing sequences.

use super::approx::{projective_cat, AddCat};
use super::resolve::{coresolution, ext, resolution, ExactSeq};
use crate::linalg::Matrix;
use crate::module::{
    apply_dhom_functor, apply_hom_functor, assemble, coevaluation_is_iso, cokernel, coregular_module, direct_sum,
    evaluation_is_iso, hom, hom_dim, rank_postcompose, rank_precompose, regular_module, span_rank, ModuleError, Morph,
    Rep,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomologicalError {
    #[error("module is not a direct summand of the ambient module")]
    NotASummand,
    #[error("not a dualizing sequence: {0}")]
    NotDualizing(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Largest `k ≤ cap` with `x ∈ cogen^k(M)`, `None` when `x` is not even cogenerated.
///
/// With `h` given, every approximation must also be an `F^H`-monomorphism (`Hom(−, H)` onto).
pub fn cogen_level(x: &Rep, cat: &AddCat, cap: usize, h: Option<&Rep>) -> Option<usize> {
    let steps = coresolution(cat, x, cap + 1);
    let mut cur = x.clone();
    for (i, s) in steps.iter().enumerate() {
        let good = s.approx.map.is_mono()
            && h.is_none_or(|h| rank_precompose(&s.approx.map, &s.approx.object, h) == hom_dim(&cur, h));
        if !good {
            return i.checked_sub(1);
        }
        cur = s.next.clone();
    }
    Some(cap)
}

/// Largest `k ≤ cap` with `x ∈ gen_k(M)`; with `g`, approximations must be `F_G`-epimorphisms.
pub fn gen_level(x: &Rep, cat: &AddCat, cap: usize, g: Option<&Rep>) -> Option<usize> {
    let steps = resolution(cat, x, cap + 1);
    let mut cur = x.clone();
    for (i, s) in steps.iter().enumerate() {
        let good = s.approx.map.is_epi()
            && g.is_none_or(|g| rank_postcompose(&s.approx.map, g, &s.approx.object) == hom_dim(g, &cur));
        if !good {
            return i.checked_sub(1);
        }
        cur = s.next.clone();
    }
    Some(cap)
}

fn ext_vanishes(x: &Rep, y: &Rep, upto: usize) -> bool {
    (1..=upto).all(|i| ext(x, y, i) == 0)
}

/// The evaluation criterion: `x → ((x,M),M)` is iso and `Ext^i_Γ((x,M), M) = 0` for `1 ≤ i < k`.
pub fn cogen_by_evaluation(x: &Rep, cat: &AddCat, k: usize) -> bool {
    assert!(k >= 1);
    if cat.is_empty() {
        return x.is_zero();
    }
    let e = cat.end();
    evaluation_is_iso(x, e) && ext_vanishes(&apply_hom_functor(x, e).rep, &e.module, k - 1)
}

/// Dual criterion: `(M,x) ⊗ M → x` is iso and `Ext^i_Γ(M, D(M,x)) = 0` for `1 ≤ i < k`.
pub fn gen_by_coevaluation(x: &Rep, cat: &AddCat, k: usize) -> bool {
    assert!(k >= 1);
    if cat.is_empty() {
        return x.is_zero();
    }
    let e = cat.end();
    coevaluation_is_iso(x, e) && ext_vanishes(&e.module, &apply_dhom_functor(x, e).rep, k - 1)
}

/// `x ∈ cogen^k(M)`, decided by coresolution and, for `k ≥ 1`, by the evaluation criterion.
pub fn in_cogen_k(x: &Rep, cat: &AddCat, k: usize) -> bool {
    let a = cogen_level(x, cat, k, None).is_some_and(|l| l >= k);
    if k >= 1 {
        let b = cogen_by_evaluation(x, cat, k);
        assert_eq!(a, b, "cogen^{k} criteria disagree for {}", x.label());
    }
    a
}

/// `x ∈ gen_k(M)`, decided by resolution and, for `k ≥ 1`, by the coevaluation criterion.
pub fn in_gen_k(x: &Rep, cat: &AddCat, k: usize) -> bool {
    let a = gen_level(x, cat, k, None).is_some_and(|l| l >= k);
    if k >= 1 {
        let b = gen_by_coevaluation(x, cat, k);
        assert_eq!(a, b, "gen_{k} criteria disagree for {}", x.label());
    }
    a
}

/// Rank of the composition map `⊕_i (M_i, z) ⊗ (y, M_i) → (y, z)`.
fn composition_rank(y: &Rep, z: &Rep, cat: &AddCat) -> usize {
    let mut prods = Vec::new();
    for mi in &cat.summands {
        let inn = hom(y, mi);
        if inn.is_empty() {
            continue;
        }
        for f in hom(mi, z) {
            for g in &inn {
                prods.push(f.compose(g));
            }
        }
    }
    span_rank(y.field(), &prods)
}

/// The tensor criterion for `x ∈ cogen^k_F(M)` with `F = F^H`.
pub fn cogen_f_by_tensor(x: &Rep, cat: &AddCat, h: &Rep, k: usize) -> bool {
    let target = hom_dim(x, h);
    if composition_rank(x, h, cat) != target {
        return false;
    }
    if k == 0 {
        return true;
    }
    if cat.is_empty() {
        return target == 0;
    }
    let e = cat.end();
    let xm = apply_hom_functor(x, e).rep;
    let dmh = apply_dhom_functor(h, e).rep;
    hom_dim(&xm, &dmh) == target && ext_vanishes(&xm, &dmh, k - 1)
}

/// The tensor criterion for `x ∈ gen_k^F(M)` with `F = F_G`.
pub fn gen_f_by_tensor(x: &Rep, cat: &AddCat, g: &Rep, k: usize) -> bool {
    let target = hom_dim(g, x);
    if composition_rank(g, x, cat) != target {
        return false;
    }
    if k == 0 {
        return true;
    }
    if cat.is_empty() {
        return target == 0;
    }
    let e = cat.end();
    let gm = apply_hom_functor(g, e).rep;
    let dmx = apply_dhom_functor(x, e).rep;
    hom_dim(&gm, &dmx) == target && ext_vanishes(&gm, &dmx, k - 1)
}

/// `Λ ∈ cogen^1(M)`, checked against `DΛ ∈ gen_1(M)` and the bicommutant map `Λ → End_Γ(M)`.
pub fn is_faithfully_balanced(m: &Rep) -> Result<bool, ModuleError> {
    let cat = AddCat::new(m)?;
    let alg = &m.alg;
    let a = in_cogen_k(&regular_module(alg), &cat, 1);
    let b = in_gen_k(&coregular_module(alg), &cat, 1);
    let c = bicommutant_is_iso(&cat);
    assert!(a == b && b == c, "faithful balance criteria disagree for {}", m.label());
    Ok(a)
}

/// The natural map `Λ → End_Γ(M)` is bijective.
pub fn bicommutant_is_iso(cat: &AddCat) -> bool {
    let alg = &cat.alg;
    if cat.is_empty() {
        return alg.dim() == 0;
    }
    let e = cat.end();
    let f = alg.field;
    let acts: Vec<Vec<_>> = (0..alg.dim()).map(|b| e.base_action(b).vec_cols()).collect();
    let len = acts.first().map_or(0, |v| v.len());
    let faithful = Matrix::from_fn(f, len, acts.len(), |i, j| acts[j][i].clone()).rank() == alg.dim();
    faithful && hom_dim(&e.module, &e.module) == alg.dim()
}

/// `M` is a `k`-dualizing summand of `L`: `M ∈ add(L)` and `L ∈ cogen^k(M)`.
///
/// For `k = 1` the equality `cogen^1(L) = cogen^1(M)` is asserted on the supplied indecomposables.
pub fn is_dualizing_summand(m: &Rep, l: &Rep, k: usize, indecs: &[Rep]) -> Result<bool, HomologicalError> {
    let lcat = AddCat::new(l)?;
    let mcat = AddCat::new(m)?;
    if !mcat.within(&lcat) {
        return Err(HomologicalError::NotASummand);
    }
    let ok = in_cogen_k(l, &mcat, k);
    if ok && k == 1 {
        for x in indecs {
            assert_eq!(
                in_cogen_k(x, &lcat, 1),
                in_cogen_k(x, &mcat, 1),
                "cogen^1 of a dualizing summand differs on {}",
                x.label()
            );
        }
    }
    Ok(ok)
}

/// Outcome of checking a candidate dualizing sequence `0 → L → N_0 → … → N_k → R → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualizingReport {
    pub exact: bool,
    pub terms_in_add: bool,
    pub hom_exact: bool,
    pub right_end_matches: bool,
    pub left_end_matches: bool,
}

impl DualizingReport {
    pub fn ok(&self) -> bool {
        self.exact && self.terms_in_add && self.hom_exact && self.right_end_matches && self.left_end_matches
    }

    pub fn failure(&self) -> Option<&'static str> {
        if !self.exact {
            Some("sequence is not exact")
        } else if !self.terms_in_add {
            Some("(i) middle terms not in add(N)")
        } else if !self.hom_exact {
            Some("(ii) (-,N) or D(N,-) not exact")
        } else if !self.right_end_matches {
            Some("(iii) add(R) differs from add(N + cosyzygy of L)")
        } else if !self.left_end_matches {
            Some("(iii) add(L) differs from add(N + syzygy of R)")
        } else {
            None
        }
    }
}

fn add_with(n: &Rep, x: &Rep) -> Result<AddCat, ModuleError> {
    AddCat::new(&direct_sum(&[n.clone(), x.clone()]).0)
}

/// Checks the defining conditions for a sequence with `terms = [L, N_0, …, N_k, R]`.
pub fn verify_dualizing_sequence(seq: &ExactSeq, n: &Rep) -> Result<DualizingReport, HomologicalError> {
    let t = &seq.terms;
    if t.len() < 3 {
        return Err(HomologicalError::NotDualizing("needs at least one middle term".into()));
    }
    let k = t.len() - 3;
    let ncat = AddCat::new(n)?;
    let (l, r) = (&t[0], &t[t.len() - 1]);
    let exact = seq.is_exact();
    let terms_in_add = t[1..t.len() - 1].iter().all(|x| ncat.contains(x));
    let hom_exact = exact && seq.contravariant_exact(n) && seq.covariant_exact(n);
    let cos = super::resolve::relative_syzygy(l, &ncat, -(k as i32 + 1));
    let sy = super::resolve::relative_syzygy(r, &ncat, k as i32 + 1);
    let right_end_matches = AddCat::new(r)?.same_add(&add_with(n, &cos)?);
    let left_end_matches = AddCat::new(l)?.same_add(&add_with(n, &sy)?);
    Ok(DualizingReport { exact, terms_in_add, hom_exact, right_end_matches, left_end_matches })
}

/// Builds `0 → L → N_0 → … → N_k → R → 0` from minimal left `add(N)`-approximations,
/// with `N` added to both `N_k` and the right end `R`.
pub fn build_dualizing_sequence(l: &Rep, n: &Rep, k: usize) -> Result<ExactSeq, HomologicalError> {
    let ncat = AddCat::new(n)?;
    let mut terms = vec![l.clone()];
    let mut maps: Vec<Morph> = Vec::new();
    let mut cur = l.clone();
    let mut proj: Option<Morph> = None;
    for _ in 0..=k {
        let a = ncat.left_approx(&cur);
        let (next, link) = cokernel(&a.map, &a.object);
        maps.push(match &proj {
            None => a.map.clone(),
            Some(p) => a.map.compose(p),
        });
        terms.push(a.object);
        proj = Some(link);
        cur = next;
    }
    let link = proj.expect("at least one step");
    let nk = terms.pop().expect("last middle term");
    let before = terms[terms.len() - 1].clone();
    let last = maps.pop().expect("last map");
    maps.push(assemble(std::slice::from_ref(&before), &[nk.clone(), n.clone()], &[vec![last], vec![Morph::zero(&before, n)]]));
    maps.push(assemble(
        &[nk.clone(), n.clone()],
        &[cur.clone(), n.clone()],
        &[vec![link, Morph::zero(n, &cur)], vec![Morph::zero(&nk, n), Morph::identity(n)]],
    ));
    terms.push(direct_sum(&[nk, n.clone()]).0);
    terms.push(direct_sum(&[cur, n.clone()]).0);
    let seq = ExactSeq::new(terms, maps);
    let report = verify_dualizing_sequence(&seq, n)?;
    match report.failure() {
        Some(why) => Err(HomologicalError::NotDualizing(why.into())),
        None => Ok(seq),
    }
}

/// `Λ ∈ add(M)`.
pub fn is_generator(m: &Rep) -> Result<bool, ModuleError> {
    Ok(projective_cat(&m.alg).within(&AddCat::new(m)?))
}

/// `DΛ ∈ add(M)`.
pub fn is_cogenerator(m: &Rep) -> Result<bool, ModuleError> {
    Ok(super::approx::injective_cat(&m.alg).within(&AddCat::new(m)?))
}
