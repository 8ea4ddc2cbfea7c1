use crate::algebra::Algebra;
use crate::linalg::{Field, Matrix, Scalar};
use std::fmt;
use std::sync::Arc;

/// A finite-dimensional left module: one space per vertex and one matrix per generator
/// (`dims[to] × dims[from]`).
#[derive(Clone)]
pub struct Rep {
    pub alg: Arc<Algebra>,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
    pub name: Option<String>,
}

/// A module homomorphism, one block per vertex (`target.dims[v] × source.dims[v]`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morph {
    pub blocks: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("action matrices violate the relations")]
    NotAModule,
    #[error("decomposition failed: {0}")]
    FieldTooSmall(String),
    #[error("isomorphism test inconclusive")]
    Inconclusive,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{}{:?}", self.name.as_deref().map(|n| format!("[{n}]")).unwrap_or_default(), self.dims)
    }
}

impl fmt::Debug for Morph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morph{:?}", self.blocks)
    }
}

impl Rep {
    pub fn field(&self) -> Field {
        self.alg.field
    }

    pub fn zero(alg: &Arc<Algebra>) -> Rep {
        let f = alg.field;
        Rep {
            alg: alg.clone(),
            dims: vec![0; alg.n_vertices()],
            maps: alg.gens.iter().map(|_| Matrix::zeros(f, 0, 0)).collect(),
            name: Some("0".into()),
        }
    }

    /// Builds a module from generator matrices and checks the relations.
    pub fn new(alg: &Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Rep, ModuleError> {
        let r = Rep { alg: alg.clone(), dims, maps, name: None };
        if !r.shapes_ok() || !r.satisfies_relations() {
            return Err(ModuleError::NotAModule);
        }
        Ok(r)
    }

    pub fn named(mut self, name: impl Into<String>) -> Rep {
        self.name = Some(name.into());
        self
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("{:?}", self.dims))
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut o = Vec::with_capacity(self.dims.len());
        let mut s = 0;
        for d in &self.dims {
            o.push(s);
            s += d;
        }
        o
    }

    fn shapes_ok(&self) -> bool {
        self.dims.len() == self.alg.n_vertices()
            && self.maps.len() == self.alg.gens.len()
            && self.alg.gens.iter().zip(&self.maps).all(|(g, m)| m.rows == self.dims[g.to] && m.cols == self.dims[g.from])
    }

    /// Matrix of a word (first-applied-first) starting at vertex `from`.
    pub fn word_map(&self, word: &[usize], from: usize) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[from]);
        for &g in word {
            m = self.maps[g].mul(&m);
        }
        m
    }

    /// Block matrix of basis element `b` (`dims[to] × dims[from]`).
    pub fn basis_map(&self, b: usize) -> Matrix {
        let e = &self.alg.basis[b];
        self.word_map(&e.word, e.from)
    }

    /// Action of basis element `b` on the whole space.
    pub fn action(&self, b: usize) -> Matrix {
        let e = &self.alg.basis[b];
        let off = self.offsets();
        let mut m = Matrix::zeros(self.field(), self.dim(), self.dim());
        m.set_block(off[e.to], off[e.from], &self.basis_map(b));
        m
    }

    /// Checks `g · b` against the structure constants for every generator `g` and basis element `b`,
    /// which forces the word action to be an algebra homomorphism.
    pub fn satisfies_relations(&self) -> bool {
        let a = &self.alg;
        let bmaps: Vec<Matrix> = (0..a.dim()).map(|b| self.basis_map(b)).collect();
        for g in 0..a.gens.len() {
            let gb = a.gen_basis(g);
            if bmaps[gb] != self.maps[g] {
                return false;
            }
            for b in 0..a.dim() {
                if a.basis[b].to != a.gens[g].from {
                    continue;
                }
                let lhs = self.maps[g].mul(&bmaps[b]);
                let mut rhs = Matrix::zeros(self.field(), lhs.rows, lhs.cols);
                for (k, c) in a.mult(gb, b) {
                    rhs = rhs.add(&bmaps[*k].scale(c));
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// K-dual, a module over the opposite algebra.
    pub fn dual(&self) -> Rep {
        Rep {
            alg: self.alg.opposite(),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(|m| m.transpose()).collect(),
            name: self.name.as_ref().map(|n| format!("D({n})")),
        }
    }

    /// Re-homes a module over the opposite of the opposite onto `alg` (structurally equal).
    pub fn rehome(&self, alg: &Arc<Algebra>) -> Rep {
        assert!(Algebra::same(&self.alg, alg), "rehome across different algebras");
        Rep { alg: alg.clone(), ..self.clone() }
    }

    pub fn same_algebra(&self, o: &Rep) -> bool {
        Algebra::same(&self.alg, &o.alg)
    }

    pub fn structurally_equal(&self, o: &Rep) -> bool {
        self.same_algebra(o) && self.dims == o.dims && self.maps == o.maps
    }
}

impl Morph {
    pub fn zero(src: &Rep, tgt: &Rep) -> Morph {
        let f = src.field();
        Morph { blocks: (0..src.dims.len()).map(|v| Matrix::zeros(f, tgt.dims[v], src.dims[v])).collect() }
    }

    pub fn identity(m: &Rep) -> Morph {
        let f = m.field();
        Morph { blocks: m.dims.iter().map(|&d| Matrix::identity(f, d)).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morph) -> Morph {
        Morph { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, o: &Morph) -> Morph {
        Morph { blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Morph) -> Morph {
        Morph { blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Morph {
        Morph { blocks: self.blocks.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn is_mono(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols)
    }

    pub fn is_epi(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows)
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_square() && b.rank() == b.rows)
    }

    pub fn inverse(&self) -> Option<Morph> {
        let blocks: Option<Vec<Matrix>> = self.blocks.iter().map(|b| b.inverse()).collect();
        blocks.map(|blocks| Morph { blocks })
    }

    pub fn transpose(&self) -> Morph {
        Morph { blocks: self.blocks.iter().map(|b| b.transpose()).collect() }
    }

    /// Block-diagonal matrix on the total spaces.
    pub fn full(&self) -> Matrix {
        let f = self.blocks.first().map_or(Field::Rational, |b| b.field);
        let parts: Vec<&Matrix> = self.blocks.iter().collect();
        Matrix::block_diag(f, &parts)
    }

    /// Flattened coordinates (vertex by vertex, column-major inside a block).
    pub fn coords(&self) -> Vec<Scalar> {
        self.blocks.iter().flat_map(|b| b.vec_cols()).collect()
    }

    pub fn intertwines(&self, src: &Rep, tgt: &Rep) -> bool {
        src.alg.gens.iter().enumerate().all(|(g, a)| {
            tgt.maps[g].mul(&self.blocks[a.from]) == self.blocks[a.to].mul(&src.maps[g])
        })
    }
}

/// Linear combination `Σ c_i f_i`.
pub fn combine(src: &Rep, tgt: &Rep, fs: &[Morph], cs: &[Scalar]) -> Morph {
    let mut out = Morph::zero(src, tgt);
    for (f, c) in fs.iter().zip(cs) {
        if !c.is_zero() {
            out = out.add(&f.scale(c));
        }
    }
    out
}
