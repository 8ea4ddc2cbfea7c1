//! Cotilting modules with an Ext-orthogonal complement, seen from three algebras.
//!
//! Vertex (1) is `[Λ, M, C]` with `cogen^{k−1}(M) = cogen^{k−1}(C) = ⊥C`; vertex (2) is
//! `[Γ, N, J]` with `N` a faithfully balanced `J`-restricted `k`-cotilting module; vertex (3) is
//! `[B, G, Q]` with `Q` a `k`-cotilting `B`-module, `B ∈ add(G)` and `G ∈ cogen^{k−1}(Q)`.

use super::{all_hold, cat, check, failed, pull_back_along, Check, CorrespondenceError, TaggedTuple};
use crate::homological::{coresolution, ext, in_cogen_k, is_faithfully_balanced, projective_cat, resolution, AddCat};
use crate::linalg::{Matrix, Scalar};
use crate::module::{
    apply_dhom_functor, apply_hom_functor, coregular_module, dhom_functor_on_morph, isomorphic,
    regular_module, EndAlgebra, Rep,
};
use crate::relative::ExactStructure;

/// `n` is `j`-restricted `k`-cotilting: an `add(j)`-coresolution of length `k`, self-orthogonality,
/// and an `add(n)`-resolution of `j` of length `k`.
pub fn restricted_cotilting_checks(n: &Rep, j: &Rep, k: usize) -> Result<Vec<Check>, CorrespondenceError> {
    let jcat = cat(j)?;
    let ncat = cat(n)?;
    let co = coresolution(&jcat, n, k + 2);
    let co_ok = co.len() <= k + 1 && co.iter().all(|s| s.approx.map.is_mono()) && co.last().is_none_or(|s| s.next.is_zero());
    let self_orth = (1..=k.max(1)).all(|i| ext(n, n, i) == 0);
    let res = resolution(&ncat, j, k + 2);
    let res_ok = res.len() <= k + 1 && res.iter().all(|s| s.approx.map.is_epi()) && res.last().is_none_or(|s| s.next.is_zero());
    Ok(vec![
        check("coresolution by add(J) of length k", co_ok),
        check("self-orthogonal", self_orth),
        check("resolution of J by add(N) of length k", res_ok),
    ])
}

/// Outcome of walking the triangle from a vertex (1) triple.
#[derive(Clone, Debug)]
pub struct TriangleReport {
    pub k: usize,
    pub format1: Vec<Check>,
    /// `[Γ, N, J]` from the dual assignment.
    pub vertex2: TaggedTuple,
    pub format2: Vec<Check>,
    /// `[B, G, Q]` from `s ∘ AS ∘ s`.
    pub vertex3: TaggedTuple,
    pub format3: Vec<Check>,
    /// The route through vertex (2) agrees with the direct route, and the counts match.
    pub commutes: Vec<Check>,
}

impl TriangleReport {
    pub fn ok(&self) -> bool {
        [&self.format1, &self.format2, &self.format3, &self.commutes].iter().all(|cs| all_hold(cs))
    }
}

fn format1_checks(m: &Rep, c: &Rep, k: usize, indecs: &[Rep]) -> Result<Vec<Check>, CorrespondenceError> {
    let mcat = cat(m)?;
    let ccat = cat(c)?;
    let f = ExactStructure::standard(&m.alg);
    let lvl = k.saturating_sub(1);
    let mut agree = true;
    for x in indecs {
        let a = in_cogen_k(x, &mcat, lvl);
        let b = in_cogen_k(x, &ccat, lvl);
        let p = (1..=k.max(1)).all(|i| ext(x, c, i) == 0);
        agree &= a == b && b == p;
    }
    Ok(vec![
        check("C in add(M)", ccat.within(&mcat)),
        check("C is k-cotilting", f.cotilting_report(c, k)?.ok()),
        check("cogen^{k-1}(M) = cogen^{k-1}(C) = perp(C)", agree),
    ])
}

fn format3_checks(g: &Rep, q: &Rep, k: usize) -> Result<Vec<Check>, CorrespondenceError> {
    let b = &q.alg;
    let f = ExactStructure::standard(b);
    Ok(vec![
        check("Q is k-cotilting", f.cotilting_report(q, k)?.ok()),
        check("B in add(G)", projective_cat(b).within(&cat(g)?)),
        check("G in cogen^{k-1}(Q)", in_cogen_k(g, &cat(q)?, k.saturating_sub(1))),
    ])
}

/// Walks the triangle from `[Λ, m, c]`. `indecs` enumerates the indecomposable `Λ`-modules.
pub fn restricted_cotilting_triangle(m: &Rep, c: &Rep, k: usize, indecs: &[Rep]) -> Result<TriangleReport, CorrespondenceError> {
    let format1 = format1_checks(m, c, k, indecs)?;
    if !all_hold(&format1) {
        return Err(CorrespondenceError::NotInFormat(failed(&format1).join(", ")));
    }
    let mcat = cat(m)?;
    let e = mcat.end();
    let ccat = cat(c)?;

    // (1) → (2): J = D(M, C), built summand by summand so that J_v = D(M, C_v)
    let images: Vec<_> = ccat.summands.iter().map(|cv| apply_dhom_functor(cv, e)).collect();
    let j = crate::module::sum_of(&e.gamma, &images.iter().map(|i| i.rep.clone()).collect::<Vec<_>>()).named("J");
    let n = e.module.clone().named("N");
    let vertex2 = TaggedTuple::new(&n, &[("J", &j)])?;
    let mut format2 = vec![
        check("J injective", cat(&j)?.within(&cat(&coregular_module(&e.gamma))?)),
        check("N faithfully balanced", is_faithfully_balanced(&n)?),
    ];
    format2.extend(restricted_cotilting_checks(&n, &j, k)?);

    // (1) → (3): B = End(C), G = (M, C), Q = _B C
    let ec = ccat.end();
    let g = apply_hom_functor(m, ec).rep.named("G");
    let q = ec.module.clone().named("Q");
    let vertex3 = TaggedTuple::new(&g, &[("Q", &q)])?;
    let format3 = format3_checks(&g, &q, k)?;

    // (2) → (3): End_Γ(J)^op with DJ and D(N, J), compared along C_v ↦ D(M, C_v)
    let ej = EndAlgebra::from_summands(images.iter().map(|i| i.rep.clone()).collect());
    let dj = ej.module.dual();
    let dnj = apply_hom_functor(&n, &ej).rep.dual();
    let mut commutes = Vec::new();
    match anti_isomorphism(ec, &ej, &images) {
        Some(gen_images) => {
            commutes.push(check("End(C) ≅ End_Γ(J)^op", true));
            let ident: Vec<usize> = (0..ec.gamma.n_vertices()).collect();
            let back_g = pull_back_along(&ec.gamma, &dj, &ident, &gen_images)?;
            let back_q = pull_back_along(&ec.gamma, &dnj, &ident, &gen_images)?;
            commutes.push(check("DJ ≅ (M, C)", cat(&back_g)?.same_add(&cat(&g)?)));
            commutes.push(check("D(N, J) ≅ C", isomorphic(&cat(&back_q)?.basic(), &cat(&q)?.basic())));
        }
        None => commutes.push(check("End(C) ≅ End_Γ(J)^op", false)),
    }
    let x = mcat.summands.iter().filter(|s| !ccat.contains(s)).count();
    let lam = m.alg.n_vertices();
    let gam = e.gamma.n_vertices();
    commutes.push(check("|M| = |Λ| + |X|", mcat.len() == lam + x));
    commutes.push(check("|N| = |Γ| − |X|", cat(&n)?.len() + x == gam));
    Ok(TriangleReport { k, format1, vertex2, format2, vertex3, format3, commutes })
}

/// The map `End(C) → End_Γ(J)^op`, `f ↦ D(M, f)`, on generators; `None` unless it is bijective
/// and respects the relations of `End(C)`.
fn anti_isomorphism(
    ec: &EndAlgebra,
    ej: &EndAlgebra,
    images: &[crate::module::FunctorImage],
) -> Option<Vec<Vec<(usize, Scalar)>>> {
    let b = &ec.gamma;
    let op = ej.gamma.opposite();
    if b.n_vertices() != op.n_vertices() || b.dim() != op.dim() {
        return None;
    }
    let coords = |idx: usize| {
        let be = &b.basis[idx];
        // f : C_v → C_w gives D(M, f) : J_w → J_v
        let f = &ec.elements[idx];
        let d = dhom_functor_on_morph(f, &images[be.from], &images[be.to]);
        ej.coords(be.from, be.to, &d)
    };
    let all: Vec<_> = (0..b.dim()).map(coords).collect();
    let fld = b.field;
    let mat = Matrix::from_fn(fld, op.dim(), b.dim(), |i, j| {
        all[j].iter().find(|(k, _)| *k == i).map_or_else(|| fld.zero(), |(_, s)| s.clone())
    });
    if mat.rank() != b.dim() {
        return None;
    }
    let gens: Vec<_> = (0..b.gens.len()).map(|g| all[b.gen_basis(g)].clone()).collect();
    let ident: Vec<usize> = (0..b.n_vertices()).collect();
    pull_back_along(b, &regular_module(&op), &ident, &gens).ok()?;
    Some(gens)
}

/// `Ω^t_M x` vanishes, where `Ω_M` takes kernels of right `add(M)`-approximations.
pub fn relative_syzygy_vanishes(x: &Rep, m: &AddCat, t: usize) -> bool {
    crate::homological::relative_syzygy(x, m, t as i32).is_zero()
}
