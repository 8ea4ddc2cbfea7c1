use crate::algebra::Algebra;
use crate::module::{
    assemble, basic_summands, coregular_module, end_radical, extend_to_basis, hom, injectives, projectives, sum_of,
    EndAlgebra, ModuleError, Morph, Rep,
};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// `add(M)` for a module `M`, carried by its basic indecomposable summands.
#[derive(Debug)]
pub struct AddCat {
    pub alg: Arc<Algebra>,
    pub summands: Vec<Rep>,
    /// `rad[i][j]`: basis of the radical maps `M_j → M_i`.
    rad: Vec<Vec<Vec<Morph>>>,
    end: OnceLock<EndAlgebra>,
}

/// A minimal approximation; `parts` lists the summand index of each component of `object`.
#[derive(Clone, Debug)]
pub struct Approx {
    pub object: Rep,
    pub parts: Vec<usize>,
    /// `x → object` for left approximations, `object → x` for right ones.
    pub map: Morph,
}

impl AddCat {
    pub fn new(m: &Rep) -> Result<AddCat, ModuleError> {
        let summands = if m.is_zero() { vec![] } else { basic_summands(m)? };
        Ok(AddCat::from_summands(&m.alg, summands))
    }

    /// Builds from pairwise non-isomorphic indecomposables.
    pub fn from_summands(alg: &Arc<Algebra>, summands: Vec<Rep>) -> AddCat {
        let r = summands.len();
        let mut rad = vec![vec![Vec::new(); r]; r];
        for i in 0..r {
            for j in 0..r {
                let hs = hom(&summands[j], &summands[i]);
                rad[i][j] = if i == j {
                    let k = end_radical(&summands[i], &hs);
                    (0..k.cols)
                        .map(|c| crate::module::combine(&summands[i], &summands[i], &hs, &k.col(c)))
                        .collect()
                } else {
                    hs
                };
            }
        }
        AddCat { alg: alg.clone(), summands, rad, end: OnceLock::new() }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// The basic module `⊕ M_i`.
    pub fn basic(&self) -> Rep {
        sum_of(&self.alg, &self.summands)
    }

    /// `End(⊕ M_i)`; panics on an empty category.
    pub fn end(&self) -> &EndAlgebra {
        self.end.get_or_init(|| EndAlgebra::from_summands(self.summands.clone()))
    }

    fn object(&self, parts: &[usize]) -> Rep {
        let reps: Vec<Rep> = parts.iter().map(|&i| self.summands[i].clone()).collect();
        let mut o = sum_of(&self.alg, &reps);
        if !parts.is_empty() {
            o.name = Some(reps.iter().map(|r| r.label()).collect::<Vec<_>>().join("+"));
        }
        o
    }

    /// Minimal left `add(M)`-approximation `x → M_0`.
    ///
    /// Summand `M_i` appears once per basis vector of `(x, M_i)` modulo the maps factoring
    /// through radical maps into `M_i`.
    pub fn left_approx(&self, x: &Rep) -> Approx {
        let r = self.len();
        let f = x.field();
        let homs: Vec<Vec<Morph>> = self.summands.iter().map(|m| hom(x, m)).collect();
        let mut parts = Vec::new();
        let mut comps = Vec::new();
        for i in 0..r {
            if homs[i].is_empty() {
                continue;
            }
            let mut span = Vec::new();
            for j in 0..r {
                for g in &self.rad[i][j] {
                    for h in &homs[j] {
                        span.push(g.compose(h).coords());
                    }
                }
            }
            let cands: Vec<_> = homs[i].iter().map(|h| h.coords()).collect();
            for c in extend_to_basis(f, &span, &cands) {
                parts.push(i);
                comps.push(vec![homs[i][c].clone()]);
            }
        }
        let object = self.object(&parts);
        let tgts: Vec<Rep> = parts.iter().map(|&i| self.summands[i].clone()).collect();
        let map = if parts.is_empty() { Morph::zero(x, &object) } else { assemble(std::slice::from_ref(x), &tgts, &comps) };
        Approx { object, parts, map }
    }

    /// Minimal right `add(M)`-approximation `M_0 → x`.
    pub fn right_approx(&self, x: &Rep) -> Approx {
        let r = self.len();
        let f = x.field();
        let homs: Vec<Vec<Morph>> = self.summands.iter().map(|m| hom(m, x)).collect();
        let mut parts = Vec::new();
        let mut comps = Vec::new();
        for j in 0..r {
            if homs[j].is_empty() {
                continue;
            }
            let mut span = Vec::new();
            for i in 0..r {
                for g in &self.rad[i][j] {
                    for h in &homs[i] {
                        span.push(h.compose(g).coords());
                    }
                }
            }
            let cands: Vec<_> = homs[j].iter().map(|h| h.coords()).collect();
            for c in extend_to_basis(f, &span, &cands) {
                parts.push(j);
                comps.push(homs[j][c].clone());
            }
        }
        let object = self.object(&parts);
        let srcs: Vec<Rep> = parts.iter().map(|&i| self.summands[i].clone()).collect();
        let map = if parts.is_empty() { Morph::zero(&object, x) } else { assemble(&srcs, std::slice::from_ref(x), &[comps]) };
        Approx { object, parts, map }
    }

    /// `x ∈ add(M)`: the minimal right approximation is an isomorphism.
    pub fn contains(&self, x: &Rep) -> bool {
        x.is_zero() || self.right_approx(x).map.is_iso()
    }

    /// Multiplicity of each summand in `x`, when `x ∈ add(M)`.
    pub fn multiplicities(&self, x: &Rep) -> Option<Vec<usize>> {
        let a = self.right_approx(x);
        if !x.is_zero() && !a.map.is_iso() {
            return None;
        }
        let mut out = vec![0; self.len()];
        for p in a.parts {
            out[p] += 1;
        }
        Some(out)
    }

    /// Index of the summand isomorphic to an indecomposable `x`.
    pub fn index_of(&self, x: &Rep) -> Option<usize> {
        let m = self.multiplicities(x)?;
        if m.iter().sum::<usize>() == 1 {
            m.iter().position(|&c| c == 1)
        } else {
            None
        }
    }

    /// `add(self) ⊆ add(other)`.
    pub fn within(&self, other: &AddCat) -> bool {
        self.summands.iter().all(|s| other.contains(s))
    }

    pub fn same_add(&self, other: &AddCat) -> bool {
        self.len() == other.len() && self.within(other)
    }
}

type CatCache = Mutex<HashMap<(String, bool), Arc<AddCat>>>;

fn cache() -> &'static CatCache {
    static C: OnceLock<CatCache> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(alg: &Arc<Algebra>, injective: bool) -> Arc<AddCat> {
    let key = (alg.fingerprint().to_string(), injective);
    if let Some(c) = cache().lock().expect("cache lock").get(&key) {
        if Algebra::same(&c.alg, alg) {
            return c.clone();
        }
    }
    let parts = if injective { injectives(alg) } else { projectives(alg) };
    let cat = Arc::new(AddCat::from_summands(alg, parts));
    cache().lock().expect("cache lock").insert(key, cat.clone());
    cat
}

/// `add(A)` for the regular module, summands in vertex order.
pub fn projective_cat(alg: &Arc<Algebra>) -> Arc<AddCat> {
    cached(alg, false)
}

/// `add(DA)`, summands in vertex order.
pub fn injective_cat(alg: &Arc<Algebra>) -> Arc<AddCat> {
    cached(alg, true)
}

pub fn is_projective(x: &Rep) -> bool {
    projective_cat(&x.alg).contains(x)
}

pub fn is_injective(x: &Rep) -> bool {
    injective_cat(&x.alg).contains(x)
}

/// `add(M ⊕ A)`.
pub fn with_regular(m: &Rep) -> Result<AddCat, ModuleError> {
    let reg = sum_of(&m.alg, &projectives(&m.alg));
    AddCat::new(&sum_of(&m.alg, &[m.clone(), reg]))
}

/// `add(M ⊕ DA)`.
pub fn with_coregular(m: &Rep) -> Result<AddCat, ModuleError> {
    AddCat::new(&sum_of(&m.alg, &[m.clone(), coregular_module(&m.alg)]))
}

/// Removes the summands of `x` lying in `cat`, returning the rest (up to isomorphism).
pub fn strip(x: &Rep, cat: &AddCat) -> Result<Rep, ModuleError> {
    if x.is_zero() {
        return Ok(x.clone());
    }
    let keep: Vec<Rep> = crate::module::decompose(x)?
        .into_iter()
        .map(|s| s.rep)
        .filter(|r| !cat.contains(r))
        .collect();
    Ok(sum_of(&x.alg, &keep))
}
