//! Relative cotilting and tilting modules, mutation and the `F`-Gorenstein search.

use super::{Bound, ExactStructure, RelativeError};
use crate::homological::{relative_syzygy, AddCat, ExactSeq};
use crate::module::{cokernel, kernel, rank_postcompose, rank_precompose, hom_dim, sum_of, Rep};
use serde::{Deserialize, Serialize};

/// The three defining conditions of a `k`-`F`-cotilting (or tilting) module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltReport {
    pub self_orthogonal: bool,
    /// `id_F C` (cotilting) or `pd_F T` (tilting).
    pub dimension: Bound,
    pub dimension_ok: bool,
    /// The `add(C)`-(co)resolution of `H` (resp. `G`) closes within `k` steps and is `F`-exact.
    pub resolves: bool,
    /// Terms of that (co)resolution.
    pub witness: Vec<String>,
}

impl TiltReport {
    pub fn ok(&self) -> bool {
        self.self_orthogonal && self.dimension_ok && self.resolves
    }

    pub fn failure(&self) -> Option<&'static str> {
        if !self.dimension_ok {
            Some("(ii) relative dimension exceeds k")
        } else if !self.self_orthogonal {
            Some("(i) not F-self-orthogonal")
        } else if !self.resolves {
            Some("(iii) no F-exact add(C)-resolution of length k")
        } else {
            None
        }
    }
}

impl ExactStructure {
    /// Minimal right `add(C)`-approximations of `H`: `k` `F`-epic steps ending in `add(C)`.
    fn resolves_h(&self, ccat: &AddCat, k: usize) -> (bool, Vec<String>) {
        let mut cur = self.h.clone();
        let mut terms = Vec::new();
        for _ in 0..k {
            if cur.is_zero() || ccat.contains(&cur) {
                break;
            }
            let a = ccat.right_approx(&cur);
            let f_epi = a.map.is_epi() && rank_postcompose(&a.map, &self.g, &a.object) == hom_dim(&self.g, &cur);
            terms.push(a.object.label());
            if !f_epi {
                return (false, terms);
            }
            cur = kernel(&a.map, &a.object).0;
        }
        let ok = cur.is_zero() || ccat.contains(&cur);
        if !cur.is_zero() {
            terms.push(cur.label());
        }
        (ok, terms)
    }

    /// Minimal left `add(T)`-approximations of `G`: `k` `F`-monic steps ending in `add(T)`.
    fn coresolves_g(&self, tcat: &AddCat, k: usize) -> (bool, Vec<String>) {
        let mut cur = self.g.clone();
        let mut terms = Vec::new();
        for _ in 0..k {
            if cur.is_zero() || tcat.contains(&cur) {
                break;
            }
            let a = tcat.left_approx(&cur);
            let f_mono = a.map.is_mono() && rank_precompose(&a.map, &a.object, &self.h) == hom_dim(&cur, &self.h);
            terms.push(a.object.label());
            if !f_mono {
                return (false, terms);
            }
            cur = cokernel(&a.map, &a.object).0;
        }
        let ok = cur.is_zero() || tcat.contains(&cur);
        if !cur.is_zero() {
            terms.push(cur.label());
        }
        (ok, terms)
    }

    /// The defining conditions of `k`-`F`-cotilting, without cross-checks.
    pub fn cotilting_report(&self, c: &Rep, k: usize) -> Result<TiltReport, RelativeError> {
        let ccat = AddCat::new(c)?;
        let dimension = self.id(c, k.max(super::DEFAULT_CAP));
        let dimension_ok = dimension.at_most(k);
        let self_orthogonal = dimension_ok && self.ext_vanishes(c, c, k);
        let (resolves, witness) = self.resolves_h(&ccat, k);
        Ok(TiltReport { self_orthogonal, dimension, dimension_ok, resolves, witness })
    }

    pub fn tilting_report(&self, t: &Rep, k: usize) -> Result<TiltReport, RelativeError> {
        let tcat = AddCat::new(t)?;
        let dimension = self.pd(t, k.max(super::DEFAULT_CAP));
        let dimension_ok = dimension.at_most(k);
        let self_orthogonal = dimension_ok && self.ext_vanishes(t, t, k);
        let (resolves, witness) = self.coresolves_g(&tcat, k);
        Ok(TiltReport { self_orthogonal, dimension, dimension_ok, resolves, witness })
    }

    /// `c` is `k`-`F`-cotilting; for `k ≥ 1` the perpendicular-category characterization
    /// `cogen^{k−1}_F(C) = ⋂ Ker Ext^i_F(−, C)` is asserted to agree on `indecs`.
    pub fn is_cotilting(&self, c: &Rep, k: usize, indecs: &[Rep]) -> Result<bool, RelativeError> {
        let ok = self.cotilting_report(c, k)?.ok();
        if k >= 1 && !indecs.is_empty() {
            if let Bound::Exact(d) = self.id(c, super::DEFAULT_CAP.max(k)) {
                let wei = self.cogen_equals_perp(c, k - 1, d, indecs)?;
                if ok {
                    assert!(wei, "cotilting module {} fails the perpendicular characterization", c.label());
                } else if d <= k {
                    assert!(!wei, "perpendicular characterization holds for non-cotilting {}", c.label());
                }
            }
        }
        Ok(ok)
    }

    /// Dual of [`ExactStructure::is_cotilting`] with `gen_{k−1}^F(T) = ⋂ Ker Ext^i_F(T, −)`.
    pub fn is_tilting(&self, t: &Rep, k: usize, indecs: &[Rep]) -> Result<bool, RelativeError> {
        let ok = self.tilting_report(t, k)?.ok();
        if k >= 1 && !indecs.is_empty() {
            if let Bound::Exact(d) = self.pd(t, super::DEFAULT_CAP.max(k)) {
                let wei = self.gen_equals_perp(t, k - 1, d, indecs)?;
                if ok {
                    assert!(wei, "tilting module {} fails the perpendicular characterization", t.label());
                } else if d <= k {
                    assert!(!wei, "perpendicular characterization holds for non-tilting {}", t.label());
                }
            }
        }
        Ok(ok)
    }

    /// `cogen^j_F(C) = ⋂_{1≤i≤d} Ker Ext^i_F(−, C)` on the given indecomposables.
    pub fn cogen_equals_perp(&self, c: &Rep, j: usize, d: usize, indecs: &[Rep]) -> Result<bool, RelativeError> {
        let ccat = AddCat::new(c)?;
        Ok(indecs.iter().all(|x| self.in_cogen_k(x, &ccat, j) == self.ext_vanishes(x, c, d)))
    }

    pub fn gen_equals_perp(&self, t: &Rep, j: usize, d: usize, indecs: &[Rep]) -> Result<bool, RelativeError> {
        let tcat = AddCat::new(t)?;
        Ok(indecs.iter().all(|x| self.in_gen_k(x, &tcat, j) == self.ext_vanishes(t, x, d)))
    }

    /// `C = M ⊕ Ω^k_M H`, a `k`-`F`-cotilting module when `M` is `F`-self-orthogonal,
    /// `id_F M ≤ 1` and `H ∈ gen^F_{k−1}(M)`.
    pub fn cotilt_from_summand(&self, m: &Rep, k: usize, indecs: &[Rep]) -> Result<Rep, RelativeError> {
        assert!(k >= 1);
        let mcat = AddCat::new(m)?;
        if !self.id(m, super::DEFAULT_CAP).at_most(1) {
            return Err(RelativeError::PreconditionFailed("id_F M > 1".into()));
        }
        if !self.ext_vanishes(m, m, 1) {
            return Err(RelativeError::PreconditionFailed("M is not F-self-orthogonal".into()));
        }
        if !self.in_gen_k(&self.h, &mcat, k - 1) {
            return Err(RelativeError::PreconditionFailed(format!("H is not in gen_{}^F(M)", k - 1)));
        }
        let omega = relative_syzygy(&self.h, &mcat, k as i32);
        let c = AddCat::new(&sum_of(&self.alg, &[m.clone(), omega]))?.basic();
        assert!(self.is_cotilting(&c, k, indecs)?, "constructed module is not {k}-F-cotilting");
        let d = self.id(&c, super::DEFAULT_CAP.max(k)).exact().expect("id_F C is bounded by k");
        for x in indecs {
            assert_eq!(
                self.in_cogen_k(x, &mcat, k - 1),
                self.ext_vanishes(x, &c, d),
                "cogen^{}_F(M) differs from the perpendicular category of C at {}",
                k - 1,
                x.label()
            );
        }
        Ok(c)
    }

    /// Exchanges the summand `u` of a basic `F`-cotilting `L = M ⊕ U`.
    ///
    /// `Left` uses `0 → U → M_0 → V → 0` from the minimal left `add(M)`-approximation,
    /// `Right` uses `0 → V → M_1 → U → 0` from the minimal right one; either must be `F`-exact.
    pub fn mutate(&self, l: &Rep, u: &Rep, dir: Direction) -> Result<Rep, RelativeError> {
        let lcat = AddCat::new(l)?;
        let ucat = AddCat::new(u)?;
        if !ucat.within(&lcat) {
            return Err(RelativeError::PreconditionFailed("U is not a summand of L".into()));
        }
        let rest: Vec<Rep> = lcat.summands.iter().filter(|s| !ucat.contains(s)).cloned().collect();
        let m = sum_of(&self.alg, &rest);
        let mcat = AddCat::from_summands(&self.alg, rest);
        let ub = ucat.basic();
        let (seq, v) = match dir {
            Direction::Left => {
                let a = mcat.left_approx(&ub);
                if !a.map.is_mono() {
                    return Err(RelativeError::NoExchangeSequence("left approximation is not mono".into()));
                }
                let (v, p) = cokernel(&a.map, &a.object);
                (ExactSeq::short(ub.clone(), a.object, v.clone(), a.map, p), v)
            }
            Direction::Right => {
                let a = mcat.right_approx(&ub);
                if !a.map.is_epi() {
                    return Err(RelativeError::NoExchangeSequence("right approximation is not epi".into()));
                }
                let (v, i) = kernel(&a.map, &a.object);
                (ExactSeq::short(v.clone(), a.object, ub.clone(), i, a.map), v)
            }
        };
        if !self.is_exact(&seq) {
            return Err(RelativeError::NoExchangeSequence("approximation sequence is not F-exact".into()));
        }
        let out = AddCat::new(&sum_of(&self.alg, &[m, v]))?.basic();
        let bound = self.id(l, super::DEFAULT_CAP);
        let k = match (bound, dir) {
            (Bound::Exact(d), Direction::Left) => d,
            (Bound::Exact(d), Direction::Right) => d + 1,
            _ => return Err(RelativeError::PreconditionFailed("id_F L is not finite".into())),
        };
        assert!(self.cotilting_report(&out, k.max(1))?.ok(), "mutation did not produce an F-cotilting module");
        Ok(out)
    }

    /// Searches basic modules with `|G|` summands from `candidates` for one that is both
    /// `F`-cotilting and `F`-tilting.
    ///
    /// Every cotilting (tilting) module found is also checked to be tilting (cotilting) when a
    /// witness exists.
    pub fn gorenstein_witness(&self, candidates: &[Rep], cap: usize) -> Result<GorensteinReport, RelativeError> {
        let n = self.gcat.len();
        let c = candidates.len();
        // pairwise F-orthogonality graph
        let d = super::DEFAULT_CAP;
        let ok_with = |x: &Rep, y: &Rep| self.ext_vanishes(x, y, d) && self.ext_vanishes(y, x, d);
        let selfo: Vec<bool> = candidates.iter().map(|x| self.ext_vanishes(x, x, d)).collect();
        let mut adj = vec![vec![false; c]; c];
        for i in 0..c {
            for j in i + 1..c {
                let v = selfo[i] && selfo[j] && ok_with(&candidates[i], &candidates[j]);
                adj[i][j] = v;
                adj[j][i] = v;
            }
        }
        let mut cliques = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        fn grow(
            start: usize,
            n: usize,
            adj: &[Vec<bool>],
            selfo: &[bool],
            stack: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            cap: usize,
        ) -> bool {
            if stack.len() == n {
                out.push(stack.clone());
                return out.len() <= cap;
            }
            for i in start..adj.len() {
                if selfo[i] && stack.iter().all(|&j| adj[i][j]) {
                    stack.push(i);
                    let go = grow(i + 1, n, adj, selfo, stack, out, cap);
                    stack.pop();
                    if !go {
                        return false;
                    }
                }
            }
            true
        }
        if !grow(0, n, &adj, &selfo, &mut stack, &mut cliques, cap) {
            return Err(RelativeError::SearchExhausted(cap));
        }
        let mut cotilting = Vec::new();
        let mut tilting = Vec::new();
        let mut witness = None;
        for cl in &cliques {
            let parts: Vec<Rep> = cl.iter().map(|&i| candidates[i].clone()).collect();
            let x = sum_of(&self.alg, &parts);
            let idb = self.id(&x, d);
            let pdb = self.pd(&x, d);
            let co = matches!(idb, Bound::Exact(k) if self.cotilting_report(&x, k).map(|r| r.ok()).unwrap_or(false));
            let ti = matches!(pdb, Bound::Exact(k) if self.tilting_report(&x, k).map(|r| r.ok()).unwrap_or(false));
            if co {
                cotilting.push(x.clone());
            }
            if ti {
                tilting.push(x.clone());
            }
            if co && ti && witness.is_none() {
                witness = Some(x);
            }
        }
        let gorenstein = witness.is_some();
        if gorenstein {
            let c_all = cotilting.iter().all(|x| tilting.iter().any(|y| crate::module::isomorphic(x, y)));
            let t_all = tilting.iter().all(|x| cotilting.iter().any(|y| crate::module::isomorphic(x, y)));
            assert!(c_all && t_all, "F-Gorenstein algebra with a cotilting module that is not tilting");
        }
        Ok(GorensteinReport { gorenstein, witness, cotilting: cotilting.len(), tilting: tilting.len(), searched: cliques.len() })
    }
}

/// Direction of a mutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct GorensteinReport {
    pub gorenstein: bool,
    pub witness: Option<Rep>,
    pub cotilting: usize,
    pub tilting: usize,
    pub searched: usize,
}
