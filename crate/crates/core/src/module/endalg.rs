//! Endomorphism algebras `Γ = End(M)` and the functors `(−, M)` and `D(M, −)`.

use super::decompose::{decompose, end_radical, group_classes};
use super::hom::{direct_sum, hom};
use super::rep::{combine, ModuleError, Morph, Rep};
use crate::algebra::{Algebra, Arrow, BasisElem};
use crate::linalg::{Field, Matrix, Scalar};
use std::sync::Arc;

/// `Γ = End_Λ(B)^` for the basic version `B = ⊕ M_i` of a module, with `B` as a left `Γ`-module.
///
/// Basis element `b` of `Γ` with `from = j`, `to = i` is the map `elements[b] : M_j → M_i`;
/// products are compositions, `b·c = b ∘ c`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub gamma: Arc<Algebra>,
    pub summands: Vec<Rep>,
    pub elements: Vec<Morph>,
    /// `_Γ M` with block `i` equal to the total space of `M_i`.
    pub module: Rep,
    /// Per-block coordinate solvers: `solvers[i][j]` maps flattened `M_j → M_i` maps to `Γ` coordinates.
    solvers: Vec<Vec<(Vec<usize>, Matrix)>>,
}

/// Basic representatives of the indecomposable summands, in decomposition order.
pub fn basic_summands(m: &Rep) -> Result<Vec<Rep>, ModuleError> {
    let leaves = decompose(m)?.into_iter().map(|s| s.rep).collect();
    Ok(group_classes(leaves).into_iter().map(|(r, _)| r).collect())
}

fn flat(m: &Morph) -> Vec<Scalar> {
    m.coords()
}

fn cols_matrix(f: Field, vs: &[Vec<Scalar>], len: usize) -> Matrix {
    Matrix::from_fn(f, len, vs.len(), |i, j| vs[j][i].clone())
}

impl EndAlgebra {
    pub fn new(m: &Rep) -> Result<EndAlgebra, ModuleError> {
        let summands = basic_summands(m)?;
        Ok(EndAlgebra::from_summands(summands))
    }

    /// Builds `End(⊕ summands)` for pairwise non-isomorphic indecomposables.
    pub fn from_summands(summands: Vec<Rep>) -> EndAlgebra {
        let r = summands.len();
        let alg = summands[0].alg.clone();
        let f = alg.field;
        // hom spaces M_j → M_i, with identity-plus-radical bases on the diagonal
        let mut homs: Vec<Vec<Vec<Morph>>> = vec![vec![Vec::new(); r]; r];
        let mut radical: Vec<Vec<Vec<Morph>>> = vec![vec![Vec::new(); r]; r];
        for i in 0..r {
            for j in 0..r {
                let hs = hom(&summands[j], &summands[i]);
                if i == j {
                    let rad = end_radical(&summands[i], &hs);
                    let rad_elems: Vec<Morph> =
                        (0..rad.cols).map(|k| combine(&summands[i], &summands[i], &hs, &rad.col(k))).collect();
                    assert_eq!(rad_elems.len() + 1, hs.len(), "summand endomorphism ring is not split local");
                    radical[i][j] = rad_elems;
                } else {
                    radical[i][j] = hs.clone();
                }
                homs[i][j] = hs;
            }
        }
        let len = |i: usize, j: usize| -> usize {
            (0..alg.n_vertices()).map(|v| summands[i].dims[v] * summands[j].dims[v]).sum()
        };
        // generators: a complement of rad² inside rad, block by block
        let mut gens: Vec<Arrow> = Vec::new();
        let mut gen_maps: Vec<Morph> = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let mut sq: Vec<Vec<Scalar>> = Vec::new();
                for l in 0..r {
                    for a in &radical[i][l] {
                        for b in &radical[l][j] {
                            sq.push(flat(&a.compose(b)));
                        }
                    }
                }
                let n = len(i, j);
                let mut current = sq;
                let mut rank = if current.is_empty() { 0 } else { cols_matrix(f, &current, n).rank() };
                let mut count = 0;
                for cand in &radical[i][j] {
                    current.push(flat(cand));
                    let nr = cols_matrix(f, &current, n).rank();
                    if nr > rank {
                        rank = nr;
                        count += 1;
                        gens.push(Arrow { name: format!("g{}_{}_{}", j + 1, i + 1, count), from: j, to: i });
                        gen_maps.push(cand.clone());
                    } else {
                        current.pop();
                    }
                }
            }
        }
        // monomial basis: idempotents, then words grown one generator at a time
        let mut basis: Vec<BasisElem> = Vec::new();
        let mut elements: Vec<Morph> = Vec::new();
        let mut block_vecs: Vec<Vec<Vec<Vec<Scalar>>>> = vec![vec![Vec::new(); r]; r];
        for i in 0..r {
            basis.push(BasisElem { from: i, to: i, word: vec![], label: format!("e{}", i + 1) });
            let id = Morph::identity(&summands[i]);
            block_vecs[i][i].push(flat(&id));
            elements.push(id);
        }
        let mut frontier: Vec<usize> = Vec::new();
        let try_add = |word: Vec<usize>,
                       from: usize,
                       to: usize,
                       mp: Morph,
                       basis: &mut Vec<BasisElem>,
                       elements: &mut Vec<Morph>,
                       block_vecs: &mut Vec<Vec<Vec<Vec<Scalar>>>>|
         -> Option<usize> {
            if mp.is_zero() {
                return None;
            }
            let n = len(to, from);
            let mut vs = block_vecs[to][from].clone();
            let before = if vs.is_empty() { 0 } else { cols_matrix(f, &vs, n).rank() };
            vs.push(flat(&mp));
            if cols_matrix(f, &vs, n).rank() == before {
                return None;
            }
            block_vecs[to][from] = vs;
            let label = word.iter().rev().map(|g| format!("g{g}")).collect::<Vec<_>>().join("*");
            basis.push(BasisElem { from, to, word, label });
            elements.push(mp);
            Some(basis.len() - 1)
        };
        let mut gen_basis = Vec::new();
        for (g, a) in gens.iter().enumerate() {
            let idx = try_add(vec![g], a.from, a.to, gen_maps[g].clone(), &mut basis, &mut elements, &mut block_vecs)
                .expect("generators are independent");
            gen_basis.push(idx);
            frontier.push(idx);
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &w in &frontier {
                for (g, a) in gens.iter().enumerate() {
                    if a.from != basis[w].to {
                        continue;
                    }
                    let mut word = basis[w].word.clone();
                    word.push(g);
                    let mp = gen_maps[g].compose(&elements[w]);
                    let from = basis[w].from;
                    if let Some(k) = try_add(word, from, a.to, mp, &mut basis, &mut elements, &mut block_vecs) {
                        next.push(k);
                    }
                }
            }
            frontier = next;
        }
        let total: usize = homs.iter().flatten().map(|h| h.len()).sum();
        assert_eq!(basis.len(), total, "monomials must span End(M)");
        // coordinate solvers per block
        let mut solvers = vec![vec![(Vec::new(), Matrix::zeros(f, 0, 0)); r]; r];
        for i in 0..r {
            for j in 0..r {
                let idx: Vec<usize> = (0..basis.len()).filter(|&b| basis[b].from == j && basis[b].to == i).collect();
                let vs: Vec<Vec<Scalar>> = idx.iter().map(|&b| flat(&elements[b])).collect();
                let n = len(i, j);
                let li = if idx.is_empty() { Matrix::zeros(f, 0, n) } else { cols_matrix(f, &vs, n).left_inverse() };
                solvers[i][j] = (idx, li);
            }
        }
        let coords_of = |solvers: &Vec<Vec<(Vec<usize>, Matrix)>>, i: usize, j: usize, m: &Morph| -> Vec<(usize, Scalar)> {
            let (idx, li) = &solvers[i][j];
            let v = Matrix::column(f, flat(m));
            let c = li.mul(&v);
            idx.iter().enumerate().filter(|(k, _)| !c.get(*k, 0).is_zero()).map(|(k, &b)| (b, c.get(k, 0).clone())).collect()
        };
        let dim = basis.len();
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                if basis[a].from != basis[b].to {
                    continue;
                }
                let prod = elements[a].compose(&elements[b]);
                mult[a][b] = coords_of(&solvers, basis[a].to, basis[b].from, &prod);
            }
        }
        let vertices = (0..r).map(|i| summands[i].name.clone().unwrap_or_else(|| format!("M{}", i + 1))).collect();
        let gamma = Algebra::from_structure(f, vertices, gens.clone(), basis, mult, gen_basis)
            .expect("composition is associative");
        let module = Rep {
            alg: gamma.clone(),
            dims: summands.iter().map(|s| s.dim()).collect(),
            maps: gen_maps.iter().map(|m| m.full()).collect(),
            name: Some("ΓM".into()),
        };
        EndAlgebra { gamma, summands, elements, module, solvers }
    }

    pub fn n_summands(&self) -> usize {
        self.summands.len()
    }

    /// The basic module `⊕ M_i` over the base algebra.
    pub fn basic(&self) -> Rep {
        direct_sum(&self.summands).0
    }

    /// `Γ`-coordinates of a map `M_j → M_i`.
    pub fn coords(&self, i: usize, j: usize, m: &Morph) -> Vec<(usize, Scalar)> {
        let f = self.gamma.field;
        let (idx, li) = &self.solvers[i][j];
        let c = li.mul(&Matrix::column(f, flat(m)));
        idx.iter().enumerate().filter(|(k, _)| !c.get(*k, 0).is_zero()).map(|(k, &b)| (b, c.get(k, 0).clone())).collect()
    }

    /// Action of a base-algebra basis element on `_Γ M` (block diagonal over summands).
    pub fn base_action(&self, b: usize) -> Matrix {
        let f = self.gamma.field;
        let parts: Vec<Matrix> = self.summands.iter().map(|s| s.action(b)).collect();
        let refs: Vec<&Matrix> = parts.iter().collect();
        Matrix::block_diag(f, &refs)
    }
}

/// A module over `Γ` obtained from a hom functor, with the bases used for each block.
#[derive(Clone, Debug)]
pub struct FunctorImage {
    pub rep: Rep,
    /// `bases[i]` spans `Hom(x, M_i)` (covariant) or `Hom(M_i, y)` (dual).
    pub bases: Vec<Vec<Morph>>,
    left_inv: Vec<Matrix>,
}

impl FunctorImage {
    fn build(bases: Vec<Vec<Morph>>, f: Field) -> Vec<Matrix> {
        bases
            .iter()
            .map(|bs| {
                if bs.is_empty() {
                    return Matrix::zeros(f, 0, 0);
                }
                let vs: Vec<Vec<Scalar>> = bs.iter().map(flat).collect();
                cols_matrix(f, &vs, vs[0].len()).left_inverse()
            })
            .collect()
    }

    /// Coordinates of a morphism in block `i`'s basis.
    pub fn coords(&self, i: usize, m: &Morph) -> Matrix {
        let f = self.rep.field();
        if self.bases[i].is_empty() {
            return Matrix::zeros(f, 0, 1);
        }
        self.left_inv[i].mul(&Matrix::column(f, flat(m)))
    }
}

/// `(x, M)` as a left `Γ`-module: `φ · f = φ ∘ f`.
pub fn apply_hom_functor(x: &Rep, e: &EndAlgebra) -> FunctorImage {
    let f = e.gamma.field;
    let bases: Vec<Vec<Morph>> = e.summands.iter().map(|mi| hom(x, mi)).collect();
    let left_inv = FunctorImage::build(bases.clone(), f);
    let mut img = FunctorImage {
        rep: Rep { alg: e.gamma.clone(), dims: bases.iter().map(|b| b.len()).collect(), maps: vec![], name: None },
        bases,
        left_inv,
    };
    let maps = e
        .gamma
        .gens
        .iter()
        .enumerate()
        .map(|(g, a)| {
            let phi = &e.elements[e.gamma.gen_basis(g)];
            let cols: Vec<Matrix> = img.bases[a.from].iter().map(|h| img.coords(a.to, &phi.compose(h))).collect();
            let mut m = Matrix::zeros(f, img.rep.dims[a.to], img.rep.dims[a.from]);
            for (c, col) in cols.iter().enumerate() {
                m.set_block(0, c, col);
            }
            m
        })
        .collect();
    img.rep.maps = maps;
    img.rep.name = x.name.as_ref().map(|n| format!("({n},M)"));
    img
}

/// `(u, M) : (x', M) → (x, M)` for `u : x → x'`.
pub fn hom_functor_on_morph(u: &Morph, src: &FunctorImage, tgt: &FunctorImage) -> Morph {
    // src = image of x', tgt = image of x
    let f = src.rep.field();
    let blocks = (0..src.bases.len())
        .map(|i| {
            let mut m = Matrix::zeros(f, tgt.rep.dims[i], src.rep.dims[i]);
            for (c, h) in src.bases[i].iter().enumerate() {
                m.set_block(0, c, &tgt.coords(i, &h.compose(u)));
            }
            m
        })
        .collect();
    Morph { blocks }
}

/// `D(M, y)` as a left `Γ`-module.
pub fn apply_dhom_functor(y: &Rep, e: &EndAlgebra) -> FunctorImage {
    let f = e.gamma.field;
    let bases: Vec<Vec<Morph>> = e.summands.iter().map(|mi| hom(mi, y)).collect();
    let left_inv = FunctorImage::build(bases.clone(), f);
    let mut img = FunctorImage {
        rep: Rep { alg: e.gamma.clone(), dims: bases.iter().map(|b| b.len()).collect(), maps: vec![], name: None },
        bases,
        left_inv,
    };
    let maps = e
        .gamma
        .gens
        .iter()
        .enumerate()
        .map(|(g, a)| {
            // right action h ↦ h ∘ φ : (M_to, y) → (M_from, y), then transpose
            let phi = &e.elements[e.gamma.gen_basis(g)];
            let mut m = Matrix::zeros(f, img.rep.dims[a.from], img.rep.dims[a.to]);
            for (c, h) in img.bases[a.to].iter().enumerate() {
                m.set_block(0, c, &img.coords(a.from, &h.compose(phi)));
            }
            m.transpose()
        })
        .collect();
    img.rep.maps = maps;
    img.rep.name = y.name.as_ref().map(|n| format!("D(M,{n})"));
    img
}

/// `D(M, v) : D(M, y') → D(M, y)` for `v : y → y'`.
pub fn dhom_functor_on_morph(v: &Morph, src: &FunctorImage, tgt: &FunctorImage) -> Morph {
    // src = image of y (dual basis), tgt = image of y'; (M,v) : (M,y) → (M,y'), then dualize
    let f = src.rep.field();
    let blocks = (0..src.bases.len())
        .map(|i| {
            let mut m = Matrix::zeros(f, tgt.rep.dims[i], src.rep.dims[i]);
            for (c, h) in src.bases[i].iter().enumerate() {
                m.set_block(0, c, &tgt.coords(i, &v.compose(h)));
            }
            m.transpose()
        })
        .collect();
    Morph { blocks }
}

/// `dim_K Hom_Γ((x, M), M)` together with whether `x` embeds in a power of `M`.
pub fn evaluation_is_iso(x: &Rep, e: &EndAlgebra) -> bool {
    if x.is_zero() {
        return true;
    }
    let hs: Vec<Morph> = e.summands.iter().flat_map(|mi| hom(x, mi)).collect();
    // injectivity: the joint kernel of all maps to M vanishes at every vertex
    for v in 0..x.dims.len() {
        if x.dims[v] == 0 {
            continue;
        }
        let parts: Vec<&Matrix> = hs.iter().map(|h| &h.blocks[v]).collect();
        if parts.is_empty() {
            return false;
        }
        let stacked = Matrix::vstack(x.field(), x.dims[v], &parts);
        if stacked.rank() < x.dims[v] {
            return false;
        }
    }
    let img = apply_hom_functor(x, e);
    hom(&img.rep, &e.module).len() == x.dim()
}

/// Dual statement: `D(M, y) ⊗ M → y` is an isomorphism, tested as `y` being a quotient of a power of `M`
/// with `dim Hom_Γ(M, D(M, y))`-dual matching.
pub fn coevaluation_is_iso(y: &Rep, e: &EndAlgebra) -> bool {
    if y.is_zero() {
        return true;
    }
    let hs: Vec<Morph> = e.summands.iter().flat_map(|mi| hom(mi, y)).collect();
    for v in 0..y.dims.len() {
        if y.dims[v] == 0 {
            continue;
        }
        let parts: Vec<&Matrix> = hs.iter().map(|h| &h.blocks[v]).collect();
        if parts.is_empty() {
            return false;
        }
        let joined = Matrix::hstack(y.field(), y.dims[v], &parts);
        if joined.rank() < y.dims[v] {
            return false;
        }
    }
    let img = apply_dhom_functor(y, e);
    hom(&e.module, &img.rep).len() == y.dim()
}
