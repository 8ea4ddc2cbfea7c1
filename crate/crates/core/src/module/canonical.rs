//! Projective, injective and simple modules, the regular module and its dual.

use super::hom::direct_sum;
use super::rep::Rep;
use crate::algebra::Algebra;
use crate::linalg::Matrix;
use std::sync::Arc;

/// `P_i = A·e_i`: spanned by the basis monomials starting at `i`.
pub fn projective_at(alg: &Arc<Algebra>, i: usize) -> Rep {
    let f = alg.field;
    let nv = alg.n_vertices();
    let per_vertex: Vec<Vec<usize>> = (0..nv).map(|v| alg.basis_between(i, v)).collect();
    let maps = alg
        .gens
        .iter()
        .enumerate()
        .map(|(g, a)| {
            let gb = alg.gen_basis(g);
            let (src, tgt) = (&per_vertex[a.from], &per_vertex[a.to]);
            let mut m = Matrix::zeros(f, tgt.len(), src.len());
            for (c, &b) in src.iter().enumerate() {
                for (k, s) in alg.mult(gb, b) {
                    let r = tgt.iter().position(|t| t == k).expect("product leaves P_i");
                    m.set(r, c, s.clone());
                }
            }
            m
        })
        .collect();
    Rep {
        alg: alg.clone(),
        dims: per_vertex.iter().map(|v| v.len()).collect(),
        maps,
        name: Some(format!("P{}", alg.vertices[i])),
    }
}

/// `I_i = D(e_i·A)`.
pub fn injective_at(alg: &Arc<Algebra>, i: usize) -> Rep {
    let op = alg.opposite();
    let mut r = projective_at(&op, i).dual().rehome(alg);
    r.name = Some(format!("I{}", alg.vertices[i]));
    r
}

/// The simple top of `P_i`.
pub fn simple_at(alg: &Arc<Algebra>, i: usize) -> Rep {
    let f = alg.field;
    let dims: Vec<usize> = (0..alg.n_vertices()).map(|v| usize::from(v == i)).collect();
    let maps = alg.gens.iter().map(|a| Matrix::zeros(f, dims[a.to], dims[a.from])).collect();
    Rep { alg: alg.clone(), dims, maps, name: Some(format!("S{}", alg.vertices[i])) }
}

pub fn projectives(alg: &Arc<Algebra>) -> Vec<Rep> {
    (0..alg.n_vertices()).map(|i| projective_at(alg, i)).collect()
}

pub fn injectives(alg: &Arc<Algebra>) -> Vec<Rep> {
    (0..alg.n_vertices()).map(|i| injective_at(alg, i)).collect()
}

pub fn simples(alg: &Arc<Algebra>) -> Vec<Rep> {
    (0..alg.n_vertices()).map(|i| simple_at(alg, i)).collect()
}

/// `A` as a left module over itself.
pub fn regular_module(alg: &Arc<Algebra>) -> Rep {
    let mut r = direct_sum(&projectives(alg)).0;
    r.name = Some("Λ".into());
    r
}

/// `D(A_A)`, the sum of the indecomposable injectives.
pub fn coregular_module(alg: &Arc<Algebra>) -> Rep {
    let mut r = direct_sum(&injectives(alg)).0;
    r.name = Some("DΛ".into());
    r
}

/// The interval module `[i, j]` (vertex indices, inclusive) of a linearly oriented `A_n`.
///
/// Panics unless the generators are the arrows `v → v+1`.
pub fn interval(alg: &Arc<Algebra>, i: usize, j: usize) -> Rep {
    let f = alg.field;
    assert!(i <= j && j < alg.n_vertices());
    let dims: Vec<usize> = (0..alg.n_vertices()).map(|v| usize::from(i <= v && v <= j)).collect();
    let maps = alg
        .gens
        .iter()
        .map(|a| {
            assert_eq!(a.to, a.from + 1, "interval modules need a linearly oriented quiver");
            if dims[a.from] == 1 && dims[a.to] == 1 {
                Matrix::identity(f, 1)
            } else {
                Matrix::zeros(f, dims[a.to], dims[a.from])
            }
        })
        .collect();
    let (a, b) = (&alg.vertices[i], &alg.vertices[j]);
    Rep { alg: alg.clone(), dims, maps, name: Some(format!("[{a},{b}]")) }
}
