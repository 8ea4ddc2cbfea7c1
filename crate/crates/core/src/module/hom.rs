use super::rep::{Morph, Rep};
use crate::linalg::{Field, Matrix, Scalar};

/// Basis of all module homomorphisms `x → y`: the joint kernel of the intertwining equations.
pub fn hom(x: &Rep, y: &Rep) -> Vec<Morph> {
    assert!(x.same_algebra(y), "hom across different algebras");
    let f = x.field();
    let nv = x.dims.len();
    let mut off = Vec::with_capacity(nv);
    let mut n = 0;
    for v in 0..nv {
        off.push(n);
        n += y.dims[v] * x.dims[v];
    }
    if n == 0 {
        return vec![];
    }
    // unknown (i, j) of block v sits at off[v] + j * y_v + i (column-major)
    let idx = |v: usize, i: usize, j: usize| off[v] + j * y.dims[v] + i;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (g, a) in x.alg.gens.iter().enumerate() {
        let (s, t) = (a.from, a.to);
        let (xg, yg) = (&x.maps[g], &y.maps[g]);
        // (Y_g f_s - f_t X_g)[i, j] = 0 for i < y_t, j < x_s
        for i in 0..y.dims[t] {
            for j in 0..x.dims[s] {
                let mut row = vec![f.zero(); n];
                let mut nz = false;
                for k in 0..y.dims[s] {
                    let c = yg.get(i, k);
                    if !c.is_zero() {
                        let p = idx(s, k, j);
                        row[p] = row[p].add(c);
                        nz = true;
                    }
                }
                for l in 0..x.dims[t] {
                    let c = xg.get(l, j);
                    if !c.is_zero() {
                        let p = idx(t, i, l);
                        row[p] = row[p].sub(c);
                        nz = true;
                    }
                }
                if nz {
                    rows.push(row);
                }
            }
        }
    }
    let ker = if rows.is_empty() { Matrix::identity(f, n) } else { Matrix::from_rows(f, rows).kernel_basis() };
    (0..ker.cols)
        .map(|k| {
            let col = ker.col(k);
            Morph {
                blocks: (0..nv)
                    .map(|v| Matrix::from_vec_cols(f, y.dims[v], x.dims[v], &col[off[v]..off[v] + y.dims[v] * x.dims[v]]))
                    .collect(),
            }
        })
        .collect()
}

pub fn hom_dim(x: &Rep, y: &Rep) -> usize {
    hom(x, y).len()
}

pub fn end_dim(x: &Rep) -> usize {
    hom(x, x).len()
}

/// Rank of a family of morphisms viewed as vectors.
pub fn span_rank(field: Field, ms: &[Morph]) -> usize {
    if ms.is_empty() {
        return 0;
    }
    let cols: Vec<Vec<Scalar>> = ms.iter().map(|m| m.coords()).collect();
    let len = cols[0].len();
    if len == 0 {
        return 0;
    }
    Matrix::from_fn(field, len, cols.len(), |i, j| cols[j][i].clone()).rank()
}

/// Coordinates of `m` in the basis `basis` (which must span it).
pub fn coords_in(field: Field, basis: &[Morph], m: &Morph) -> Option<Vec<Scalar>> {
    let v = m.coords();
    if basis.is_empty() {
        return if v.iter().all(|x| x.is_zero()) { Some(vec![]) } else { None };
    }
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| b.coords()).collect();
    let a = Matrix::from_fn(field, v.len(), cols.len(), |i, j| cols[j][i].clone());
    a.solve(&Matrix::column(field, v)).ok().map(|x| x.col(0))
}

/// Rank of `(f, z) : (Y, z) → (X, z)`, `h ↦ h ∘ f`, for `f : X → Y`.
pub fn rank_precompose(f: &Morph, y: &Rep, z: &Rep) -> usize {
    let hs: Vec<Morph> = hom(y, z).iter().map(|h| h.compose(f)).collect();
    span_rank(z.field(), &hs)
}

/// Rank of `(z, g) : (z, Y) → (z, W)`, `h ↦ g ∘ h`, for `g : Y → W`.
pub fn rank_postcompose(g: &Morph, z: &Rep, y: &Rep) -> usize {
    let hs: Vec<Morph> = hom(z, y).iter().map(|h| g.compose(h)).collect();
    span_rank(z.field(), &hs)
}

/// Submodule spanned per vertex by the columns of `bases[v]` (assumed invariant), with its inclusion.
pub fn submodule(m: &Rep, bases: &[Matrix]) -> (Rep, Morph) {
    let maps = m
        .alg
        .gens
        .iter()
        .enumerate()
        .map(|(g, a)| {
            let img = m.maps[g].mul(&bases[a.from]);
            bases[a.to].solve(&img).expect("subspace is not invariant")
        })
        .collect();
    let sub = Rep { alg: m.alg.clone(), dims: bases.iter().map(|b| b.cols).collect(), maps, name: None };
    (sub, Morph { blocks: bases.to_vec() })
}

/// Quotient by the invariant subspaces spanned by `bases[v]`, with the projection.
pub fn quotient(m: &Rep, bases: &[Matrix]) -> (Rep, Morph) {
    let qs: Vec<Matrix> = bases
        .iter()
        .enumerate()
        .map(|(v, b)| if b.cols == 0 { Matrix::identity(m.field(), m.dims[v]) } else { b.left_kernel_basis() })
        .collect();
    let maps = m
        .alg
        .gens
        .iter()
        .enumerate()
        .map(|(g, a)| {
            let rhs = qs[a.to].mul(&m.maps[g]);
            qs[a.from].transpose().solve(&rhs.transpose()).expect("subspace is not invariant").transpose()
        })
        .collect();
    let q = Rep { alg: m.alg.clone(), dims: qs.iter().map(|b| b.rows).collect(), maps, name: None };
    (q, Morph { blocks: qs })
}

pub fn kernel(f: &Morph, src: &Rep) -> (Rep, Morph) {
    let bases: Vec<Matrix> = f.blocks.iter().map(|b| b.kernel_basis()).collect();
    submodule(src, &bases)
}

pub fn cokernel(f: &Morph, tgt: &Rep) -> (Rep, Morph) {
    let bases: Vec<Matrix> = f.blocks.iter().map(|b| b.column_space()).collect();
    quotient(tgt, &bases)
}

/// Image with the factorization `src → im → tgt`.
pub fn image(f: &Morph, tgt: &Rep) -> (Rep, Morph, Morph) {
    let bases: Vec<Matrix> = f.blocks.iter().map(|b| b.column_space()).collect();
    let (im, incl) = submodule(tgt, &bases);
    let onto = Morph {
        blocks: f.blocks.iter().zip(&bases).map(|(fb, b)| b.solve(fb).expect("image factorization")).collect(),
    };
    (im, onto, incl)
}

/// Direct sum with canonical inclusions and projections.
pub fn direct_sum(parts: &[Rep]) -> (Rep, Vec<Morph>, Vec<Morph>) {
    assert!(!parts.is_empty(), "direct sum of an empty list needs an algebra; use Rep::zero");
    let alg = parts[0].alg.clone();
    let f = alg.field;
    let nv = alg.n_vertices();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = (0..alg.gens.len())
        .map(|g| {
            let bs: Vec<&Matrix> = parts.iter().map(|p| &p.maps[g]).collect();
            Matrix::block_diag(f, &bs)
        })
        .collect();
    let sum = Rep {
        alg: alg.clone(),
        dims: dims.clone(),
        maps,
        name: Some(parts.iter().map(|p| p.label()).collect::<Vec<_>>().join("+")),
    };
    let mut incl = Vec::new();
    let mut proj = Vec::new();
    let mut off = vec![0; nv];
    for p in parts {
        assert!(p.same_algebra(&parts[0]));
        let mut ib = Vec::new();
        let mut pb = Vec::new();
        for v in 0..nv {
            let mut i = Matrix::zeros(f, dims[v], p.dims[v]);
            i.set_block(off[v], 0, &Matrix::identity(f, p.dims[v]));
            pb.push(i.transpose());
            ib.push(i);
            off[v] += p.dims[v];
        }
        incl.push(Morph { blocks: ib });
        proj.push(Morph { blocks: pb });
    }
    (sum, incl, proj)
}

/// Direct sum of a possibly empty list.
pub fn sum_of(alg: &std::sync::Arc<crate::algebra::Algebra>, parts: &[Rep]) -> Rep {
    if parts.is_empty() {
        Rep::zero(alg)
    } else if parts.len() == 1 {
        parts[0].clone()
    } else {
        direct_sum(parts).0
    }
}

/// Morphism `⊕ srcs → ⊕ tgts` from components `comps[i][j] : srcs[j] → tgts[i]`.
pub fn assemble(srcs: &[Rep], tgts: &[Rep], comps: &[Vec<Morph>]) -> Morph {
    let nv = srcs.first().or(tgts.first()).map_or(0, |r| r.dims.len());
    let f = srcs.first().or(tgts.first()).map_or(Field::Rational, |r| r.field());
    let blocks = (0..nv)
        .map(|v| {
            let rows: usize = tgts.iter().map(|t| t.dims[v]).sum();
            let cols: usize = srcs.iter().map(|s| s.dims[v]).sum();
            let mut m = Matrix::zeros(f, rows, cols);
            let mut r0 = 0;
            for (i, t) in tgts.iter().enumerate() {
                let mut c0 = 0;
                for (j, s) in srcs.iter().enumerate() {
                    m.set_block(r0, c0, &comps[i][j].blocks[v]);
                    c0 += s.dims[v];
                }
                r0 += t.dims[v];
            }
            m
        })
        .collect();
    Morph { blocks }
}

/// Exactness of `a --f--> b --g--> c` at `b`, checked vertexwise.
pub fn exact_at(f: &Morph, g: &Morph) -> bool {
    f.blocks.iter().zip(&g.blocks).all(|(fb, gb)| {
        let comp = gb.mul(fb);
        comp.is_zero() && fb.rank() == gb.cols - gb.rank()
    })
}

/// Indices of `cands` completing the span of `span` to a basis of the joint span (first-pivot order).
pub fn extend_to_basis(field: Field, span: &[Vec<Scalar>], cands: &[Vec<Scalar>]) -> Vec<usize> {
    let Some(first) = cands.first() else { return vec![] };
    let len = first.len();
    if len == 0 {
        return vec![];
    }
    let all: Vec<&Vec<Scalar>> = span.iter().chain(cands.iter()).collect();
    let m = Matrix::from_fn(field, len, all.len(), |i, j| all[j][i].clone());
    m.rref().pivots.into_iter().filter(|&p| p >= span.len()).map(|p| p - span.len()).collect()
}

/// A hom basis together with a coordinate solver.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub maps: Vec<Morph>,
    left_inv: Matrix,
}

impl HomBasis {
    pub fn new(x: &Rep, y: &Rep) -> HomBasis {
        HomBasis::from_maps(x.field(), hom(x, y))
    }

    pub fn from_maps(field: Field, maps: Vec<Morph>) -> HomBasis {
        let left_inv = if maps.is_empty() {
            Matrix::zeros(field, 0, 0)
        } else {
            let cols: Vec<Vec<Scalar>> = maps.iter().map(|m| m.coords()).collect();
            Matrix::from_fn(field, cols[0].len(), cols.len(), |i, j| cols[j][i].clone()).left_inverse()
        };
        HomBasis { maps, left_inv }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Coordinates of `m` as a column (assumes `m` lies in the span).
    pub fn coords(&self, m: &Morph) -> Matrix {
        let f = self.left_inv.field;
        if self.maps.is_empty() {
            return Matrix::zeros(f, 0, 1);
        }
        self.left_inv.mul(&Matrix::column(f, m.coords()))
    }
}
