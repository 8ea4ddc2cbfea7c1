use qfb_core::algebra::{Algebra, Arrow, Quiver, Relation};
use qfb_core::homological::*;
use qfb_core::knit::*;
use qfb_core::linalg::Field;
use qfb_core::module::*;
use std::sync::Arc;

const Q: Field = Field::Rational;

fn quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    Quiver {
        vertices: (1..=n).map(|i| i.to_string()).collect(),
        arrows: arrows.iter().enumerate().map(|(k, &(a, b))| Arrow { name: format!("x{k}"), from: a, to: b }).collect(),
    }
}

fn count(alg: &Arc<Algebra>) -> usize {
    knit(alg, KnitLimits::for_algebra(alg)).unwrap().len()
}

#[test]
fn linear_quivers_have_triangular_counts() {
    for n in 1..=5 {
        assert_eq!(count(&Algebra::linear(n, Q)), n * (n + 1) / 2);
    }
}

#[test]
fn dynkin_counts_match_positive_roots() {
    // D4 with all arrows into the centre, E6 with one orientation
    let d4 = Algebra::from_quiver(&quiver(4, &[(1, 0), (2, 0), (3, 0)]), &[], Q).unwrap();
    assert_eq!(count(&d4), 12);
    let e6 = Algebra::from_quiver(&quiver(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]), &[], Q).unwrap();
    assert_eq!(count(&e6), 36);
}

#[test]
fn algebras_with_relations() {
    let rel = Relation { terms: vec![(Q.one(), vec![0, 1])] };
    let a = Algebra::from_quiver(&Quiver::linear(3), &[rel], Q).unwrap();
    assert_eq!(count(&a), 5);
    // commutative square a → b → d, a → c → d
    let q = quiver(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]);
    let rel = Relation { terms: vec![(Q.one(), vec![0, 1]), (Q.int(-1), vec![2, 3])] };
    let sq = Algebra::from_quiver(&q, &[rel], Q).unwrap();
    assert_eq!(count(&sq), 11);
    // dual numbers: a projective-injective and the simple
    let q = Quiver { vertices: vec!["1".into()], arrows: vec![Arrow { name: "x".into(), from: 0, to: 0 }] };
    let rel = Relation { terms: vec![(Q.one(), vec![0, 0])] };
    let d = Algebra::from_quiver(&q, &[rel], Q).unwrap();
    assert_eq!(count(&d), 2);
}

#[test]
fn kronecker_does_not_close() {
    let k = Algebra::from_quiver(&quiver(2, &[(0, 1), (0, 1)]), &[], Q).unwrap();
    let limits = KnitLimits { max_modules: 200, max_dim: 12 };
    assert!(matches!(knit(&k, limits), Err(KnitError::NotRepresentationDirected { .. })));
}

#[test]
fn meshes_are_exact_and_labels_resolve() {
    let a = Algebra::linear(4, Q);
    let cat = knit(&a, KnitLimits::for_algebra(&a)).unwrap();
    for m in &cat.meshes {
        let mid: usize = m.middle.iter().map(|&i| cat.modules[i].dim()).sum();
        assert_eq!(mid, cat.modules[m.start].dim() + cat.modules[m.end].dim());
        assert_eq!(cat.tau[m.end], Some(m.start));
    }
    for (i, x) in cat.modules.iter().enumerate() {
        assert!(is_indecomposable(x).unwrap());
        assert_eq!(cat.find(x), Some(i));
    }
    let p3 = cat.by_label("P3").unwrap();
    let t = cat.find(&tau_inv(&cat.modules[p3])).unwrap();
    assert_eq!(cat.labels[t], "tau-(P3)");
    assert!(cat.to_dot().starts_with("digraph"));
}
