//! Special cotilting modules and the lattice they form.

use super::{cat, check, Check, CorrespondenceError};
use crate::homological::{relative_syzygy, AddCat};
use crate::module::Rep;
use crate::relative::ExactStructure;
use serde::Serialize;
use std::fmt::Write as _;

/// A special cotilting module `C_{I,r} = I ⊕ Ω_I^r H`.
#[derive(Clone, Debug, Serialize)]
pub struct CotiltNode {
    /// Indices into the summands of `H` that make up `I`.
    pub injective: Vec<usize>,
    #[serde(skip)]
    pub module: Rep,
    pub label: String,
    pub checks: Vec<Check>,
}

/// The special cotilting modules of injective dimension at most `r`, indexed by the subsets
/// `J_{r−1} ⊆ I ⊆ H`.
#[derive(Clone, Debug, Serialize)]
pub struct CotiltLattice {
    pub r: usize,
    pub h_summands: Vec<String>,
    /// Summands of `H` lying in `add(J_{r−1})`.
    pub mandatory: Vec<usize>,
    pub nodes: Vec<CotiltNode>,
    /// Cover relations `(lower, upper)`, one added summand each.
    pub covers: Vec<(usize, usize)>,
    /// `⊥C_I ⊆ ⊥C_{I'}` along every cover, when indecomposables were supplied.
    pub order_matches: Option<bool>,
}

fn label_of(x: &Rep) -> String {
    x.label()
}

fn join_labels(parts: &[Rep]) -> String {
    parts.iter().map(label_of).collect::<Vec<_>>().join("|")
}

/// The maximal summand of `c` lying in `add(target)`.
pub fn max_summand_in(c: &Rep, target: &AddCat) -> Result<Vec<Rep>, CorrespondenceError> {
    Ok(cat(c)?.summands.into_iter().filter(|s| target.contains(s)).collect())
}

/// `J_n = ⊕_{t ≤ n} I_t` for the minimal `F`-injective coresolution `0 → G → I_0 → I_1 → …`.
pub fn coresolution_prefix(f: &ExactStructure, n: usize) -> Result<AddCat, CorrespondenceError> {
    let steps = f.injective_coresolution(&f.g, n + 1);
    let parts: Vec<Rep> = steps.iter().map(|s| s.approx.object.clone()).filter(|x| !x.is_zero()).collect();
    if parts.is_empty() {
        return Ok(AddCat::from_summands(&f.alg, vec![]));
    }
    Ok(cat(&crate::module::sum_of(&f.alg, &parts))?)
}

fn node_checks(f: &ExactStructure, c: &Rep, i: &Rep, r: usize) -> Result<Vec<Check>, CorrespondenceError> {
    let report = f.cotilting_report(c, r)?;
    let icat = cat(i)?;
    let maximal = max_summand_in(c, &f.hcat)?;
    let same = maximal.len() == icat.len() && maximal.iter().all(|x| icat.contains(x));
    Ok(vec![
        check(format!("{r}-F-cotilting"), report.ok()),
        check(format!("C in cogen^{}_F(I)", r - 1), f.in_cogen_k(c, &icat, r - 1)),
        check("maximal F-injective summand is I", same),
    ])
}

/// Enumerates `C_{I,r}` over all basic `I` with `J_{r−1} ∈ add(I) ⊆ add(H)` and checks each is
/// an `I`-special `r`-`F`-cotilting module. With `indecs`, also checks that the order by
/// perpendicular categories agrees with inclusion of `I` along covers.
pub fn special_cotilts(f: &ExactStructure, r: usize, indecs: Option<&[Rep]>) -> Result<CotiltLattice, CorrespondenceError> {
    assert!(r >= 1, "special cotilting needs r ≥ 1");
    let hs = f.hcat.summands.clone();
    let j = coresolution_prefix(f, r - 1)?;
    let mandatory: Vec<usize> = (0..hs.len()).filter(|&i| j.contains(&hs[i])).collect();
    let free: Vec<usize> = (0..hs.len()).filter(|i| !mandatory.contains(i)).collect();
    let mut nodes = Vec::new();
    for mask in 0u64..(1 << free.len()) {
        let mut chosen = mandatory.clone();
        chosen.extend(free.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i));
        chosen.sort_unstable();
        let parts: Vec<Rep> = chosen.iter().map(|&i| hs[i].clone()).collect();
        let i_mod = crate::module::sum_of(&f.alg, &parts);
        let icat = cat(&i_mod)?;
        let syz = relative_syzygy(&f.h, &icat, r as i32);
        let c = cat(&crate::module::sum_of(&f.alg, &[i_mod.clone(), syz]))?;
        let module = c.basic();
        let checks = node_checks(f, &module, &i_mod, r)?;
        nodes.push(CotiltNode { injective: chosen, label: join_labels(&c.summands), module, checks });
    }
    let mut covers = Vec::new();
    for (a, x) in nodes.iter().enumerate() {
        for (b, y) in nodes.iter().enumerate() {
            if y.injective.len() == x.injective.len() + 1 && x.injective.iter().all(|i| y.injective.contains(i)) {
                covers.push((a, b));
            }
        }
    }
    let order_matches = indecs.map(|xs| {
        let perp = |c: &Rep| -> Vec<bool> { xs.iter().map(|x| f.ext_vanishes(x, c, r)).collect() };
        let perps: Vec<Vec<bool>> = nodes.iter().map(|n| perp(&n.module)).collect();
        covers.iter().all(|&(a, b)| perps[a].iter().zip(&perps[b]).all(|(p, q)| !p || *q))
    });
    Ok(CotiltLattice {
        r,
        h_summands: hs.iter().map(label_of).collect(),
        mandatory,
        nodes,
        covers,
        order_matches,
    })
}

impl CotiltLattice {
    pub fn all_special(&self) -> bool {
        self.nodes.iter().all(|n| n.checks.iter().all(|c| c.holds))
    }

    /// Node count matches `2^{|H| − |J_{r−1}|}`.
    pub fn is_full_cube(&self) -> bool {
        self.nodes.len() == 1 << (self.h_summands.len() - self.mandatory.len())
    }

    fn find(&self, set: &[usize]) -> usize {
        self.nodes.iter().position(|n| n.injective == set).expect("subset is a node")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let set: Vec<usize> = self.nodes[a].injective.iter().filter(|i| self.nodes[b].injective.contains(i)).copied().collect();
        self.find(&set)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        let mut set = self.nodes[a].injective.clone();
        set.extend(self.nodes[b].injective.iter().filter(|i| !self.nodes[a].injective.contains(i)));
        set.sort_unstable();
        self.find(&set)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph cotilts {\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", n.label);
        }
        for (a, b) in &self.covers {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Whether `c` is special cotilting and special tilting with respect to `m`.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialReport {
    pub cotilting: Vec<Check>,
    pub tilting: Vec<Check>,
}

impl SpecialReport {
    pub fn is_cotilting(&self) -> bool {
        self.cotilting.iter().all(|c| c.holds)
    }

    pub fn is_tilting(&self) -> bool {
        self.tilting.iter().all(|c| c.holds)
    }
}

/// Tests `c` for being `m`-special cotilting (`m` `F`-injective, `id_F c = r`,
/// `c ∈ cogen^{r−1}_F(m)`) and `m`-special tilting (dually, with `pd_F c`).
/// For `r = 0` the generation condition is empty.
pub fn m_special_test(f: &ExactStructure, c: &Rep, m: &Rep, cap: usize) -> Result<SpecialReport, CorrespondenceError> {
    let ccat = cat(c)?;
    let mcat = cat(m)?;
    let in_c = mcat.within(&ccat);
    let cotilting = match f.id(c, cap).exact() {
        Some(r) => vec![
            check("M in add(C)", in_c),
            check("M is F-injective", mcat.within(&f.hcat)),
            check("C is F-cotilting", f.cotilting_report(c, r)?.ok()),
            check("C in cogen^{r-1}_F(M)", r == 0 || f.in_cogen_k(c, &mcat, r - 1)),
        ],
        None => vec![check("finite F-injective dimension", false)],
    };
    let tilting = match f.pd(c, cap).exact() {
        Some(r) => vec![
            check("M in add(C)", in_c),
            check("M is F-projective", mcat.within(&f.gcat)),
            check("C is F-tilting", f.tilting_report(c, r)?.ok()),
            check("C in gen_{r-1}^F(M)", r == 0 || f.in_gen_k(c, &mcat, r - 1)),
        ],
        None => vec![check("finite F-projective dimension", false)],
    };
    Ok(SpecialReport { cotilting, tilting })
}
