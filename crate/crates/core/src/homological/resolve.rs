use super::approx::{injective_cat, projective_cat, AddCat, Approx};
use crate::algebra::Algebra;
use crate::linalg::Matrix;
use crate::module::{cokernel, hom, hom_dim, kernel, rank_postcompose, rank_precompose, HomBasis, Morph, Rep};
use std::sync::Arc;

/// A sequence `0 → X_0 → X_1 → … → X_n → 0` with `maps[i] : X_i → X_{i+1}`.
#[derive(Clone, Debug)]
pub struct ExactSeq {
    pub terms: Vec<Rep>,
    pub maps: Vec<Morph>,
}

impl ExactSeq {
    pub fn new(terms: Vec<Rep>, maps: Vec<Morph>) -> ExactSeq {
        assert_eq!(terms.len(), maps.len() + 1, "one map between consecutive terms");
        ExactSeq { terms, maps }
    }

    /// `0 → a --f--> b --g--> c → 0`.
    pub fn short(a: Rep, b: Rep, c: Rep, f: Morph, g: Morph) -> ExactSeq {
        ExactSeq::new(vec![a, b, c], vec![f, g])
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn well_typed(&self) -> bool {
        self.maps.iter().enumerate().all(|(i, m)| m.intertwines(&self.terms[i], &self.terms[i + 1]))
    }

    /// Exactness at every term, vertex by vertex.
    pub fn is_exact(&self) -> bool {
        if !self.well_typed() {
            return false;
        }
        let n = self.terms.len();
        for v in 0..self.terms[0].dims.len() {
            let ranks: Vec<usize> = self.maps.iter().map(|m| m.blocks[v].rank()).collect();
            for i in 0..n {
                let inc = if i == 0 { 0 } else { ranks[i - 1] };
                let out = if i + 1 == n { 0 } else { ranks[i] };
                if self.terms[i].dims[v] != inc + out {
                    return false;
                }
            }
            for i in 1..self.maps.len() {
                if !self.maps[i].blocks[v].mul(&self.maps[i - 1].blocks[v]).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// `Hom(−, y)` turns the sequence into an exact one.
    pub fn contravariant_exact(&self, y: &Rep) -> bool {
        let n = self.terms.len();
        let ranks: Vec<usize> =
            self.maps.iter().enumerate().map(|(i, d)| rank_precompose(d, &self.terms[i + 1], y)).collect();
        (0..n).all(|i| {
            let a = if i == 0 { 0 } else { ranks[i - 1] };
            let b = if i + 1 == n { 0 } else { ranks[i] };
            hom_dim(&self.terms[i], y) == a + b
        })
    }

    /// `Hom(y, −)` turns the sequence into an exact one.
    pub fn covariant_exact(&self, y: &Rep) -> bool {
        let n = self.terms.len();
        let ranks: Vec<usize> =
            self.maps.iter().enumerate().map(|(i, d)| rank_postcompose(d, y, &self.terms[i])).collect();
        (0..n).all(|i| {
            let a = if i == 0 { 0 } else { ranks[i - 1] };
            let b = if i + 1 == n { 0 } else { ranks[i] };
            hom_dim(y, &self.terms[i]) == a + b
        })
    }
}

/// One step of a (co)resolution: the approximation and the next (co)syzygy with its link map
/// (`next → approx.object` for resolutions, `approx.object → next` for coresolutions).
#[derive(Clone, Debug)]
pub struct Step {
    pub approx: Approx,
    pub next: Rep,
    pub link: Morph,
}

/// Minimal right `add(M)`-resolution of `x`, stopping at a zero syzygy or after `steps` steps.
pub fn resolution(cat: &AddCat, x: &Rep, steps: usize) -> Vec<Step> {
    let mut out = Vec::new();
    let mut cur = x.clone();
    for _ in 0..steps {
        if cur.is_zero() {
            break;
        }
        let approx = cat.right_approx(&cur);
        let (next, link) = kernel(&approx.map, &approx.object);
        cur = next.clone();
        out.push(Step { approx, next, link });
    }
    out
}

/// Minimal left `add(M)`-coresolution of `x`.
pub fn coresolution(cat: &AddCat, x: &Rep, steps: usize) -> Vec<Step> {
    let mut out = Vec::new();
    let mut cur = x.clone();
    for _ in 0..steps {
        if cur.is_zero() {
            break;
        }
        let approx = cat.left_approx(&cur);
        let (next, link) = cokernel(&approx.map, &approx.object);
        cur = next.clone();
        out.push(Step { approx, next, link });
    }
    out
}

fn last_or(x: &Rep, steps: &[Step], k: usize) -> Rep {
    if steps.len() < k {
        Rep::zero(&x.alg)
    } else if k == 0 {
        x.clone()
    } else {
        steps[k - 1].next.clone()
    }
}

/// `Ω^k x` from minimal projective covers.
pub fn syzygy(x: &Rep, k: usize) -> Rep {
    let s = resolution(&projective_cat(&x.alg), x, k);
    last_or(x, &s, k)
}

/// `Ω^{-k} x` from minimal injective envelopes.
pub fn cosyzygy(x: &Rep, k: usize) -> Rep {
    let s = coresolution(&injective_cat(&x.alg), x, k);
    last_or(x, &s, k)
}

/// `Ω_M^k x` for `k > 0` (kernels of right approximations), `Ω_M^{-k}` for `k < 0`.
pub fn relative_syzygy(x: &Rep, cat: &AddCat, k: i32) -> Rep {
    let n = k.unsigned_abs() as usize;
    let s = if k >= 0 { resolution(cat, x, n) } else { coresolution(cat, x, n) };
    last_or(x, &s, n)
}

/// Cohomology of `Hom(resolution of x by add(M), y)` in degree `i`; requires epimorphic approximations.
pub fn ext_by(cat: &AddCat, x: &Rep, y: &Rep, i: usize) -> usize {
    if i == 0 {
        return hom_dim(x, y);
    }
    let steps = resolution(cat, x, i);
    if steps.len() < i {
        return 0;
    }
    for s in &steps {
        assert!(s.approx.map.is_epi(), "resolving class does not cover the module");
    }
    let s = &steps[i - 1];
    hom_dim(&s.next, y) - rank_precompose(&s.link, &s.approx.object, y)
}

/// Cohomology of `Hom(x, coresolution of y by add(M))` in degree `i`; requires monomorphic approximations.
pub fn coext_by(cat: &AddCat, x: &Rep, y: &Rep, i: usize) -> usize {
    if i == 0 {
        return hom_dim(x, y);
    }
    let steps = coresolution(cat, y, i);
    if steps.len() < i {
        return 0;
    }
    for s in &steps {
        assert!(s.approx.map.is_mono(), "coresolving class does not cogenerate the module");
    }
    let s = &steps[i - 1];
    hom_dim(x, &s.next) - rank_postcompose(&s.link, x, &s.approx.object)
}

/// `dim Ext^i(x, y)`.
pub fn ext(x: &Rep, y: &Rep, i: usize) -> usize {
    ext_by(&projective_cat(&x.alg), x, y, i)
}

/// Length of the minimal `add(M)`-resolution, or `None` beyond `cap`.
pub fn resolution_dim(cat: &AddCat, x: &Rep, cap: usize) -> Option<usize> {
    if x.is_zero() {
        return Some(0);
    }
    let steps = resolution(cat, x, cap + 1);
    steps.iter().position(|s| s.next.is_zero())
}

pub fn coresolution_dim(cat: &AddCat, x: &Rep, cap: usize) -> Option<usize> {
    if x.is_zero() {
        return Some(0);
    }
    let steps = coresolution(cat, x, cap + 1);
    steps.iter().position(|s| s.next.is_zero())
}

pub fn projective_dim(x: &Rep, cap: usize) -> Option<usize> {
    resolution_dim(&projective_cat(&x.alg), x, cap)
}

pub fn injective_dim(x: &Rep, cap: usize) -> Option<usize> {
    coresolution_dim(&injective_cat(&x.alg), x, cap)
}

/// Right multiplication by generator `g` as a map `P_to → P_from` of left projectives.
fn right_mult(alg: &Arc<Algebra>, g: usize) -> Morph {
    let f = alg.field;
    let a = &alg.gens[g];
    let gb = alg.gen_basis(g);
    let blocks = (0..alg.n_vertices())
        .map(|w| {
            let src = alg.basis_between(a.to, w);
            let tgt = alg.basis_between(a.from, w);
            let mut m = Matrix::zeros(f, tgt.len(), src.len());
            for (c, &b) in src.iter().enumerate() {
                for (k, s) in alg.mult(b, gb) {
                    let r = tgt.iter().position(|t| t == k).expect("right multiple stays in the projective");
                    m.set(r, c, s.clone());
                }
            }
            m
        })
        .collect();
    Morph { blocks }
}

/// `Hom(x, A)` as a left module over the opposite algebra, with block `v` equal to `Hom(x, P_v)`.
pub fn hom_to_regular(x: &Rep) -> (Rep, Vec<HomBasis>) {
    let alg = &x.alg;
    let f = alg.field;
    let ps = projective_cat(alg);
    let bases: Vec<HomBasis> = ps.summands.iter().map(|p| HomBasis::new(x, p)).collect();
    let maps = (0..alg.gens.len())
        .map(|g| {
            let a = &alg.gens[g];
            let rho = right_mult(alg, g);
            let (src, tgt) = (&bases[a.to], &bases[a.from]);
            let mut m = Matrix::zeros(f, tgt.len(), src.len());
            for (c, h) in src.maps.iter().enumerate() {
                m.set_block(0, c, &tgt.coords(&rho.compose(h)));
            }
            m
        })
        .collect();
    let rep = Rep { alg: alg.opposite(), dims: bases.iter().map(|b| b.len()).collect(), maps, name: None };
    (rep, bases)
}

/// `Hom(u, A) : Hom(x', A) → Hom(x, A)` for `u : x → x'`.
fn hom_to_regular_map(u: &Morph, src: &[HomBasis], tgt: &[HomBasis]) -> Morph {
    let f = u.blocks.first().map_or(crate::linalg::Field::Rational, |b| b.field);
    let blocks = src
        .iter()
        .zip(tgt)
        .map(|(s, t)| {
            let mut m = Matrix::zeros(f, t.len(), s.len());
            for (c, h) in s.maps.iter().enumerate() {
                m.set_block(0, c, &t.coords(&h.compose(u)));
            }
            m
        })
        .collect();
    Morph { blocks }
}

/// Auslander–Bridger transpose, a module over the opposite algebra.
pub fn transpose(x: &Rep) -> Rep {
    let ps = projective_cat(&x.alg);
    let a0 = ps.right_approx(x);
    let (k, incl) = kernel(&a0.map, &a0.object);
    let a1 = ps.right_approx(&k);
    let f = incl.compose(&a1.map);
    let (n0, b0) = hom_to_regular(&a0.object);
    let (n1, b1) = hom_to_regular(&a1.object);
    let fstar = hom_to_regular_map(&f, &b0, &b1);
    debug_assert!(fstar.intertwines(&n0, &n1));
    cokernel(&fstar, &n1).0
}

fn named(mut r: Rep, prefix: &str, x: &Rep) -> Rep {
    r.name = Some(format!("{prefix}({})", x.label()));
    r
}

/// `τ x = D Tr x`; projective summands contribute nothing.
pub fn tau(x: &Rep) -> Rep {
    named(transpose(x).dual().rehome(&x.alg), "tau", x)
}

/// `τ⁻ x = Tr D x`.
pub fn tau_inv(x: &Rep) -> Rep {
    named(transpose(&x.dual()).rehome(&x.alg), "tau-", x)
}

/// `τ_k x = τ Ω^{k-1} x`.
pub fn tau_k(x: &Rep, k: usize) -> Rep {
    assert!(k >= 1);
    tau(&syzygy(x, k - 1))
}

/// `τ_k⁻ x = τ⁻ Ω^{-(k-1)} x`.
pub fn tau_k_inv(x: &Rep, k: usize) -> Rep {
    assert!(k >= 1);
    tau_inv(&cosyzygy(x, k - 1))
}

/// All intertwiners `x → y` as a hom basis (re-exported convenience for callers building sequences).
pub fn hom_basis(x: &Rep, y: &Rep) -> Vec<Morph> {
    hom(x, y)
}
