//! Weighted chain data: `f`-weighted boundary matrices, `g`-weighted Gram
//! matrices, null-space bases and the weight-rescaling chain isomorphism.
//!
//! Matrices are expressed in the canonical chain bases of
//! [`SimplicialComplex`]: column `j` of the degree-`n` boundary is the `j`-th
//! `n`-simplex, row `i` the `i`-th `(n-1)`-simplex.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};
use crate::exact::{Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("scale function vanishes at vertex #{0}")]
    VanishingScale(usize),
}

/// A rational-valued function on the vertex universe, indexed by vertex rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexWeights(Vec<Rational>);

impl VertexWeights {
    pub fn new(values: Vec<Rational>) -> Self {
        Self(values)
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self(vec![c; n])
    }

    pub fn ones(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, rank: usize) -> &Rational {
        &self.0[rank]
    }

    pub fn is_zero_at(&self, rank: usize) -> bool {
        self.0[rank].is_zero()
    }

    pub fn is_nonvanishing(&self) -> bool {
        self.0.iter().all(|x| !x.is_zero())
    }

    pub fn zero_vertices(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&r| self.is_zero_at(r)).collect()
    }

    /// Support indicator: 1 where the weight is nonzero, 0 elsewhere.
    pub fn support(&self) -> Self {
        Self(self.0.iter().map(|x| if x.is_zero() { Rational::zero() } else { Rational::one() }).collect())
    }

    /// Pointwise product.
    pub fn times(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "weight length mismatch");
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self(self.0.iter().map(|a| a * c).collect())
    }

    /// Pointwise reciprocal; `None` if any value is zero.
    pub fn recip(&self) -> Option<Self> {
        self.is_nonvanishing().then(|| Self(self.0.iter().map(Rational::recip).collect()))
    }

    /// `w(σ)`: product of the vertex weights of `σ`.
    pub fn simplex_weight(&self, s: &Simplex) -> Rational {
        s.vertices().iter().fold(Rational::one(), |acc, &v| acc * &self.0[v])
    }
}

/// The pair of vertex weights `(f, g)`: `f` twists the boundary, `g` defines the form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightPair {
    pub f: VertexWeights,
    pub g: VertexWeights,
}

impl WeightPair {
    pub fn new(f: VertexWeights, g: VertexWeights) -> Self {
        assert_eq!(f.len(), g.len(), "f and g must cover the same vertices");
        Self { f, g }
    }

    pub fn ones(n: usize) -> Self {
        Self::new(VertexWeights::ones(n), VertexWeights::ones(n))
    }
}

pub fn simplex_weight(w: &VertexWeights, s: &Simplex) -> Rational {
    w.simplex_weight(s)
}

/// Matrix of `∂_n^f : C_n → C_{n−1}`, with `∂{v_0..v_n} = Σ (−1)^i f(v_i) {.. v̂_i ..}`.
///
/// For `n = 0` the codomain is the zero space, so the matrix has no rows.
pub fn boundary_matrix(k: &SimplicialComplex, f: &VertexWeights, n: usize) -> RationalMatrix {
    let cols = k.simplices(n);
    if n == 0 {
        return RationalMatrix::zeros(0, cols.len());
    }
    let mut b = RationalMatrix::zeros(k.count(n - 1), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (i, &v) in s.vertices().iter().enumerate() {
            let face = s.face(i).expect("n ≥ 1");
            let row = k.index_of(&face).expect("complex is face-closed");
            let coeff = f.get(v);
            if i % 2 == 0 {
                b[(row, j)] += coeff;
            } else {
                b[(row, j)] -= coeff;
            }
        }
    }
    b
}

/// Unweighted boundary matrix (`f ≡ 1`).
pub fn unweighted_boundary(k: &SimplicialComplex, n: usize) -> RationalMatrix {
    boundary_matrix(k, &VertexWeights::ones(k.vertex_count()), n)
}

/// Gram matrix of `⟨σ,τ⟩_g = g(σ)g(τ)δ(σ,τ)` on `C_n`: diagonal with entries `g(σ)²`.
pub fn gram_matrix(k: &SimplicialComplex, g: &VertexWeights, n: usize) -> RationalMatrix {
    let diag: Vec<Rational> = k
        .simplices(n)
        .iter()
        .map(|s| {
            let w = g.simplex_weight(s);
            &w * &w
        })
        .collect();
    RationalMatrix::from_diagonal(&diag)
}

/// The `n`-simplices of zero `g`-weight; they form a basis of the null space of `⟨,⟩_g`.
pub fn null_basis(k: &SimplicialComplex, g: &VertexWeights, n: usize) -> Vec<Simplex> {
    k.simplices(n).iter().filter(|s| g.simplex_weight(s).is_zero()).cloned().collect()
}

/// The `n`-simplices lying in the union of open stars of the `g`-zero vertices.
pub fn null_basis_from_stars(k: &SimplicialComplex, g: &VertexWeights, n: usize) -> Vec<Simplex> {
    let mut out: Vec<Simplex> = g
        .zero_vertices()
        .into_iter()
        .flat_map(|v| k.star_of(v))
        .filter(|s| s.dimension() == n)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Columns are the unit chains of [`null_basis`], in ambient `C_n` coordinates.
pub fn null_space_matrix(k: &SimplicialComplex, g: &VertexWeights, n: usize) -> RationalMatrix {
    let basis = null_basis(k, g, n);
    unit_columns(k, n, &basis)
}

pub(crate) fn unit_columns(k: &SimplicialComplex, n: usize, simplices: &[Simplex]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(k.count(n), simplices.len());
    for (j, s) in simplices.iter().enumerate() {
        m[(k.index_of(s).expect("simplex of K"), j)] = Rational::one();
    }
    m
}

/// Matrix of the chain isomorphism `φ(σ) = σ / h(σ)` on `C_n`.
pub fn chain_scale_iso(k: &SimplicialComplex, h: &VertexWeights, n: usize) -> Result<RationalMatrix, ChainError> {
    if let Some(&v) = h.zero_vertices().first() {
        return Err(ChainError::VanishingScale(v));
    }
    let diag: Vec<Rational> = k.simplices(n).iter().map(|s| h.simplex_weight(s).recip()).collect();
    Ok(RationalMatrix::from_diagonal(&diag))
}

/// Boundary of the chain complex `C_*/N_*` in the basis identified with the simplices of `K×_g`.
pub fn reduced_boundary(k: &SimplicialComplex, w: &WeightPair, n: usize) -> RationalMatrix {
    boundary_matrix(&k.restrict_nonvanishing(&w.g), &w.f, n)
}
