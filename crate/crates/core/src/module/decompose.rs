//! Krull–Schmidt decomposition by Fitting splitting, and isomorphism tests.

use super::hom::{hom, kernel, submodule};
use super::rep::{combine, ModuleError, Morph, Rep};
use crate::linalg::{Field, Matrix, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One indecomposable summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub rep: Rep,
    pub incl: Morph,
    pub proj: Morph,
}

const RANDOM_TRIES: usize = 40;

fn rng_for(m: &Rep) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed ^ (m.dim() as u64) << 8 ^ m.dims.len() as u64)
}

fn small_int(f: Field, rng: &mut ChaCha8Rng) -> Scalar {
    f.int(rng.gen_range(-9..=9))
}

/// `φ^d` with `d = dim`, computed blockwise.
fn fitting_power(phi: &Morph, d: usize) -> Morph {
    Morph { blocks: phi.blocks.iter().map(|b| b.pow(d)).collect() }
}

/// Coefficient vectors (columns) spanning the radical of `End(m)` in the given basis,
/// via the trace form (valid when `dim m` is below the characteristic).
pub fn end_radical(m: &Rep, basis: &[Morph]) -> Matrix {
    let f = m.field();
    let fulls: Vec<Matrix> = basis.iter().map(|b| b.full()).collect();
    let k = basis.len();
    let t = Matrix::from_fn(f, k, k, |i, j| fulls[i].mul(&fulls[j]).trace());
    t.kernel_basis()
}

fn check_characteristic(m: &Rep) -> Result<(), ModuleError> {
    if let Field::Prime { p } = m.field() {
        if m.dim() >= p as usize {
            return Err(ModuleError::FieldTooSmall(format!("module of dimension {} over F_{p}", m.dim())));
        }
    }
    Ok(())
}

/// Whether `End(m)` is local: every endomorphism is nilpotent or invertible.
pub fn is_indecomposable(m: &Rep) -> Result<bool, ModuleError> {
    if m.is_zero() {
        return Ok(false);
    }
    let basis = hom(m, m);
    if basis.len() == 1 {
        return Ok(true);
    }
    check_characteristic(m)?;
    let rad = end_radical(m, &basis);
    if basis.len() - rad.cols == 1 {
        return Ok(true);
    }
    Ok(false)
}

/// Finds an endomorphism that is neither nilpotent nor invertible.
fn find_splitter(m: &Rep, basis: &[Morph]) -> Result<Option<Morph>, ModuleError> {
    let n = m.dim();
    let f = m.field();
    let test = |phi: &Morph| -> bool {
        let r = fitting_power(phi, n).rank();
        r > 0 && r < n
    };
    for b in basis {
        if test(b) {
            return Ok(Some(b.clone()));
        }
    }
    check_characteristic(m)?;
    let rad = end_radical(m, basis);
    if basis.len() - rad.cols == 1 {
        return Ok(None);
    }
    let rad_elems: Vec<Morph> = (0..rad.cols).map(|j| combine(m, m, basis, &rad.col(j))).collect();
    let mut rng = rng_for(m);

    // Annihilators of vectors killed by the radical are left ideals containing it;
    // when strictly larger, they hold non-nilpotent non-invertible elements.
    let mut seeds: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for t in 0..m.dims.len() {
        let mut killers: Vec<&Matrix> = Vec::new();
        for (g, a) in m.alg.gens.iter().enumerate() {
            if a.from == t {
                killers.push(&m.maps[g]);
            }
        }
        let soc = if killers.is_empty() {
            Matrix::identity(f, m.dims[t])
        } else {
            let cols = m.dims[t];
            let parts: Vec<&Matrix> = killers.clone();
            Matrix::vstack(f, cols, &parts).kernel_basis()
        };
        for j in 0..soc.cols {
            seeds.push((t, soc.col(j)));
        }
    }
    for t in 0..m.dims.len() {
        for j in 0..m.dims[t] {
            let mut v = vec![f.zero(); m.dims[t]];
            v[j] = f.one();
            seeds.push((t, v));
        }
    }
    for (t, v0) in seeds {
        let mut u = Matrix::column(f, v0);
        // descend until the radical kills u
        'descend: loop {
            for r in &rad_elems {
                let w = r.blocks[t].mul(&u);
                if !w.is_zero() {
                    u = w;
                    continue 'descend;
                }
            }
            break;
        }
        let imgs: Vec<Vec<Scalar>> = basis.iter().map(|b| b.blocks[t].mul(&u).col(0)).collect();
        let a = Matrix::from_fn(f, m.dims[t], basis.len(), |i, j| imgs[j][i].clone());
        let ann = a.kernel_basis();
        if ann.cols <= rad.cols {
            continue;
        }
        let ann_elems: Vec<Morph> = (0..ann.cols).map(|j| combine(m, m, basis, &ann.col(j))).collect();
        for e in &ann_elems {
            if test(e) {
                return Ok(Some(e.clone()));
            }
        }
        for _ in 0..RANDOM_TRIES {
            let cs: Vec<Scalar> = (0..ann_elems.len()).map(|_| small_int(f, &mut rng)).collect();
            let e = combine(m, m, &ann_elems, &cs);
            if test(&e) {
                return Ok(Some(e));
            }
        }
    }
    // Shifted random elements: φ - λ for λ among small integers.
    let id = Morph::identity(m);
    for _ in 0..RANDOM_TRIES {
        let cs: Vec<Scalar> = (0..basis.len()).map(|_| small_int(f, &mut rng)).collect();
        let phi = combine(m, m, basis, &cs);
        for l in -9..=9 {
            let e = phi.sub(&id.scale(&f.int(l)));
            if test(&e) {
                return Ok(Some(e));
            }
        }
    }
    Err(ModuleError::FieldTooSmall("no splitting endomorphism found; retry over the rationals".into()))
}

/// Decomposes `m` into indecomposable summands (deterministic order).
pub fn decompose(m: &Rep) -> Result<Vec<Summand>, ModuleError> {
    let mut out = Vec::new();
    split_rec(m, Morph::identity(m), Morph::identity(m), &mut out)?;
    Ok(out)
}

fn split_rec(m: &Rep, incl: Morph, proj: Morph, out: &mut Vec<Summand>) -> Result<(), ModuleError> {
    if m.is_zero() {
        return Ok(());
    }
    let basis = hom(m, m);
    let splitter = if basis.len() == 1 { None } else { find_splitter(m, &basis)? };
    let Some(phi) = splitter else {
        let mut rep = m.clone();
        rep.name = None;
        out.push(Summand { rep, incl, proj });
        return Ok(());
    };
    let p = fitting_power(&phi, m.dim());
    let (ker_rep, ker_incl) = kernel(&p, m);
    let im_bases: Vec<Matrix> = p.blocks.iter().map(|b| b.column_space()).collect();
    let (im_rep, im_incl) = submodule(m, &im_bases);
    // m = ker ⊕ im; projections via the inverse of [ker_incl | im_incl]
    let f = m.field();
    let mut ker_proj = Vec::new();
    let mut im_proj = Vec::new();
    for v in 0..m.dims.len() {
        let a = Matrix::hstack(f, m.dims[v], &[&ker_incl.blocks[v], &im_incl.blocks[v]]);
        let inv = a.inverse().expect("Fitting decomposition is direct");
        let k = ker_incl.blocks[v].cols;
        ker_proj.push(inv.block(0, 0, k, m.dims[v]));
        im_proj.push(inv.block(k, 0, inv.rows - k, m.dims[v]));
    }
    let ker_proj = Morph { blocks: ker_proj };
    let im_proj = Morph { blocks: im_proj };
    split_rec(&ker_rep, incl.compose(&ker_incl), ker_proj.compose(&proj), out)?;
    split_rec(&im_rep, incl.compose(&im_incl), im_proj.compose(&proj), out)?;
    Ok(())
}

/// Isomorphism test for two indecomposables: some `g ∘ f` must be invertible since `End` is local.
pub fn indecomposables_isomorphic(x: &Rep, y: &Rep) -> Option<Morph> {
    if x.dims != y.dims {
        return None;
    }
    let fs = hom(x, y);
    if fs.is_empty() {
        return None;
    }
    for f in &fs {
        if f.is_iso() {
            return Some(f.clone());
        }
    }
    let gs = hom(y, x);
    for f in &fs {
        for g in &gs {
            if g.compose(f).is_iso() {
                return Some(f.clone());
            }
        }
    }
    None
}

/// Groups indecomposable summands into isomorphism classes with multiplicities.
pub fn group_classes(leaves: Vec<Rep>) -> Vec<(Rep, usize)> {
    let mut classes: Vec<(Rep, usize)> = Vec::new();
    for l in leaves {
        if let Some(c) = classes.iter_mut().find(|(r, _)| indecomposables_isomorphic(r, &l).is_some()) {
            c.1 += 1;
        } else {
            classes.push((l, 1));
        }
    }
    classes
}

/// Isomorphism test with a certificate.
pub fn is_isomorphic(m: &Rep, n: &Rep) -> Result<Option<Morph>, ModuleError> {
    if !m.same_algebra(n) {
        return Err(ModuleError::AlgebraMismatch);
    }
    if m.dims != n.dims {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(Morph::identity(m)));
    }
    let fs = hom(m, n);
    if fs.is_empty() || fs.len() != hom(m, m).len() {
        return Ok(None);
    }
    let f = m.field();
    let mut rng = rng_for(m);
    for attempt in 0..20 {
        let cs: Vec<Scalar> = (0..fs.len())
            .map(|_| if attempt == 0 { f.one() } else { f.int(rng.gen_range(-50..=50)) })
            .collect();
        let cand = combine(m, n, &fs, &cs);
        if cand.is_iso() {
            return Ok(Some(cand));
        }
    }
    // Deterministic fallback: match indecomposable summands.
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    let cm = group_classes(dm.iter().map(|s| s.rep.clone()).collect());
    let cn = group_classes(dn.iter().map(|s| s.rep.clone()).collect());
    if cm.len() != cn.len() {
        return Ok(None);
    }
    let mut used = vec![false; cn.len()];
    for (x, k) in &cm {
        let Some(j) = (0..cn.len()).find(|&j| !used[j] && cn[j].1 == *k && indecomposables_isomorphic(x, &cn[j].0).is_some())
        else {
            return Ok(None);
        };
        used[j] = true;
    }
    // Assemble the certificate from summand isomorphisms.
    let mut cert = Morph::zero(m, n);
    let mut taken = vec![0usize; dn.len()];
    for s in &dm {
        let (jdx, iso) = dn
            .iter()
            .enumerate()
            .filter(|(j, _)| taken[*j] == 0)
            .find_map(|(j, t)| indecomposables_isomorphic(&s.rep, &t.rep).map(|iso| (j, iso)))
            .ok_or(ModuleError::Inconclusive)?;
        taken[jdx] = 1;
        cert = cert.add(&dn[jdx].incl.compose(&iso).compose(&s.proj));
    }
    if cert.is_iso() && cert.intertwines(m, n) {
        Ok(Some(cert))
    } else {
        Err(ModuleError::Inconclusive)
    }
}

pub fn isomorphic(m: &Rep, n: &Rep) -> bool {
    is_isomorphic(m, n).expect("isomorphism test").is_some()
}
