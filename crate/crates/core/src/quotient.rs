//! Quadratic forms induced on quotient spaces.
//!
//! Given a symmetric positive semi-definite Gram matrix on an ambient space and
//! subspaces `U ⊆ W`, the quotient `W/U` carries the form
//! `⟨v+U, v'+U⟩ = ⟨v₂, v'₂⟩`, where `v₂` is the part of `v` that is
//! form-orthogonal to `U` and not null. Everything is computed exactly.
//!
//! Subspaces are passed as matrices whose columns span them, in ambient
//! coordinates; the columns need not be independent.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("form is not symmetric positive semi-definite")]
    NotPsd,
    #[error("U is not a subspace of W")]
    NotSubspace,
    #[error("map is not compatible with the forms and subspaces: {0}")]
    NotEquivariant(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("extension does not split W: {0}")]
    BadExtension(String),
}

/// Exact PSD test by symmetric elimination with diagonal pivoting.
///
/// A zero diagonal entry forces its whole row to vanish; a negative one is a
/// witness of indefiniteness.
pub fn is_psd(a: &RationalMatrix) -> bool {
    if !a.is_symmetric() {
        return false;
    }
    let mut m = a.clone();
    let n = m.rows();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        if active.iter().any(|&i| m[(i, i)].is_negative()) {
            return false;
        }
        let Some(pos) = active.iter().position(|&i| m[(i, i)].is_positive()) else {
            return active.iter().all(|&i| active.iter().all(|&j| m[(i, j)].is_zero()));
        };
        let p = active.swap_remove(pos);
        let pivot = m[(p, p)].clone();
        for &i in &active {
            if m[(i, p)].is_zero() {
                continue;
            }
            let factor = &m[(i, p)] / &pivot;
            for &j in &active {
                let x = &m[(i, j)] - &factor * &m[(p, j)];
                m[(i, j)] = x;
            }
        }
    }
    true
}

/// Positive definite: PSD with a trivial kernel.
pub fn is_positive_definite(a: &RationalMatrix) -> bool {
    is_psd(a) && a.rank() == a.rows()
}

/// An ambient space carrying a symmetric PSD quadratic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormedSpace {
    gram: RationalMatrix,
}

impl FormedSpace {
    pub fn new(gram: RationalMatrix) -> Result<Self, QuotientError> {
        if !is_psd(&gram) {
            return Err(QuotientError::NotPsd);
        }
        Ok(Self { gram })
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn dimension(&self) -> usize {
        self.gram.rows()
    }

    pub fn pairing(&self, v: &[Rational], w: &[Rational]) -> Rational {
        v.iter().zip(self.gram.mul_vec(w)).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `Bᵀ G B`.
    pub fn restricted_gram(&self, basis: &RationalMatrix) -> RationalMatrix {
        &(&basis.transpose() * &self.gram) * basis
    }

    fn check_columns(&self, m: &RationalMatrix, what: &str) -> Result<(), QuotientError> {
        if m.rows() != self.dimension() {
            return Err(QuotientError::DimensionMismatch(format!(
                "{what} has {} rows, ambient dimension is {}",
                m.rows(),
                self.dimension()
            )));
        }
        Ok(())
    }
}

/// Basis of the null subspace `{v | ⟨v,v⟩ = 0}`, i.e. the kernel of the Gram matrix.
pub fn null_space(space: &FormedSpace) -> RationalMatrix {
    space.gram.kernel()
}

/// The induced form on `W/U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientForm {
    ambient: RationalMatrix,
    /// Independent columns spanning `U`.
    pub subspace: RationalMatrix,
    /// Coset representatives, form-orthogonal to `U`. The first `positive_rank`
    /// columns span the complement on which the form is definite; the rest are
    /// null directions of `W` not in `U`.
    pub representatives: RationalMatrix,
    /// Gram matrix of the induced form in the representative basis.
    pub gram: RationalMatrix,
    pub positive_rank: usize,
}

impl QuotientForm {
    pub fn dimension(&self) -> usize {
        self.representatives.cols()
    }

    pub fn is_inner_product(&self) -> bool {
        self.positive_rank == self.dimension()
    }

    /// The form-orthogonal projection of `v` away from `U`.
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        project_away(&self.ambient, &self.subspace, v).expect("PSD forms always admit the projection")
    }

    /// `⟨v+U, w+U⟩` for representatives `v, w ∈ W`.
    pub fn pairing(&self, v: &[Rational], w: &[Rational]) -> Rational {
        let v2 = self.project(v);
        let w2 = self.project(w);
        v2.iter().zip(self.ambient.mul_vec(&w2)).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Coordinates of the coset `v+U` in the representative basis, or `None` if `v ∉ W`.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let k = self.dimension();
        let x = self.representatives.hstack(&self.subspace).solve(v)?;
        Some(x[..k].to_vec())
    }
}

fn project_away(ambient: &RationalMatrix, u: &RationalMatrix, v: &[Rational]) -> Option<Vec<Rational>> {
    if u.cols() == 0 {
        return Some(v.to_vec());
    }
    let ut_a = &u.transpose() * ambient;
    let u_gram = &ut_a * u;
    let y = u_gram.solve(&ut_a.mul_vec(v))?;
    let uy = u.mul_vec(&y);
    Some(v.iter().zip(uy).map(|(a, b)| a - b).collect())
}

fn extends_rank(current: &RationalMatrix, candidate: &[Rational], rank: usize) -> bool {
    let col = RationalMatrix::from_columns(&[candidate.to_vec()], current.rows());
    current.hstack(&col).rank() > rank
}

/// Builds the induced form on `W/U` for `U ⊆ W`.
pub fn induced_form_on_quotient(
    space: &FormedSpace,
    w_basis: &RationalMatrix,
    u_basis: &RationalMatrix,
) -> Result<QuotientForm, QuotientError> {
    space.check_columns(w_basis, "W")?;
    space.check_columns(u_basis, "U")?;
    let w = w_basis.column_space();
    let u = u_basis.column_space();
    if !w.span_includes(&u) {
        return Err(QuotientError::NotSubspace);
    }
    let null_w = &w * &space.restricted_gram(&w).kernel();

    let mut current = u.clone();
    let mut rank = u.cols();
    let mut null_reps = Vec::new();
    for c in null_w.columns() {
        if extends_rank(&current, &c, rank) {
            current = current.hstack(&RationalMatrix::from_columns(&[c.clone()], current.rows()));
            rank += 1;
            null_reps.push(c);
        }
    }
    let mut positive_reps = Vec::new();
    for c in w.columns() {
        if extends_rank(&current, &c, rank) {
            current = current.hstack(&RationalMatrix::from_columns(&[c.clone()], current.rows()));
            rank += 1;
            positive_reps.push(project_away(&space.gram, &u, &c).ok_or(QuotientError::NotPsd)?);
        }
    }
    let positive_rank = positive_reps.len();
    positive_reps.extend(null_reps);
    let representatives = RationalMatrix::from_columns(&positive_reps, space.dimension());
    let gram = space.restricted_gram(&representatives);
    Ok(QuotientForm { ambient: space.gram.clone(), subspace: u, representatives, gram, positive_rank })
}

/// Whether the induced form on `W/U` is an inner product, decided by `N_W ⊆ U`.
pub fn quotient_form_is_inner_product(
    space: &FormedSpace,
    w_basis: &RationalMatrix,
    u_basis: &RationalMatrix,
) -> Result<bool, QuotientError> {
    space.check_columns(w_basis, "W")?;
    space.check_columns(u_basis, "U")?;
    let w = w_basis.column_space();
    if !w.span_includes(u_basis) {
        return Err(QuotientError::NotSubspace);
    }
    let null_w = &w * &space.restricted_gram(&w).kernel();
    Ok(u_basis.span_includes(&null_w))
}

/// An explicit choice of the splittings `U = U₁ ⊕ (U∩N)` and `W = W₁ ⊕ N`
/// with `U₁ ⊆ W₁`. Different choices must give the same quotient form.
#[derive(Debug, Clone)]
pub struct ExtensionChoice {
    /// Complement of `U∩N` inside `U`.
    pub u1: RationalMatrix,
    /// Complement of `N` inside `W`, containing `U₁`.
    pub w1: RationalMatrix,
}

impl ExtensionChoice {
    /// Draws a splitting by mixing basis vectors with coefficients from `next`,
    /// retrying until the mixtures are independent of the null directions.
    pub fn generate(
        space: &FormedSpace,
        w_basis: &RationalMatrix,
        u_basis: &RationalMatrix,
        mut next: impl FnMut() -> Rational,
    ) -> Result<Self, QuotientError> {
        let w = w_basis.column_space();
        let u = u_basis.column_space();
        if !w.span_includes(&u) {
            return Err(QuotientError::NotSubspace);
        }
        let null_w = &w * &space.restricted_gram(&w).kernel();
        let u_null = (&u * &space.restricted_gram(&u).kernel()).column_space();
        let u1_dim = u.cols() - u_null.cols();
        let w1_dim = w.cols() - null_w.cols();
        for _ in 0..64 {
            let mix_u = RationalMatrix::from_rows(
                (0..u.cols()).map(|_| (0..u1_dim).map(|_| next()).collect()).collect(),
                u1_dim,
            );
            let u1 = &u * &mix_u;
            if u1.hstack(&u_null).rank() != u.cols() {
                continue;
            }
            let extra_dim = w1_dim - u1_dim;
            let mix_w = RationalMatrix::from_rows(
                (0..w.cols()).map(|_| (0..extra_dim).map(|_| next()).collect()).collect(),
                extra_dim,
            );
            let w1 = u1.hstack(&(&w * &mix_w));
            if w1.hstack(&null_w).rank() != w.cols() {
                continue;
            }
            return Ok(Self { u1, w1 });
        }
        Err(QuotientError::BadExtension("no valid splitting found".into()))
    }
}

/// `⟨v+U, v'+U⟩` computed literally from the decomposition `v = v₀ + v₂ + n`
/// with `v₀ ∈ U₁`, `v₂ ∈ ⊥_{W₁}U₁`, `n ∈ N`.
pub fn pairing_via_extension(
    space: &FormedSpace,
    w_basis: &RationalMatrix,
    choice: &ExtensionChoice,
    v: &[Rational],
    v_prime: &[Rational],
) -> Result<Rational, QuotientError> {
    let w = w_basis.column_space();
    let null_w = (&w * &space.restricted_gram(&w).kernel()).column_space();
    if choice.w1.hstack(&null_w).rank() != w.cols() || choice.w1.rank() != choice.w1.cols() {
        return Err(QuotientError::BadExtension("W₁ ⊕ N ≠ W".into()));
    }
    // ⊥_{W₁}U₁ = {W₁c | U₁ᵀ G W₁ c = 0}
    let cross = &(&choice.u1.transpose() * space.gram()) * &choice.w1;
    let perp = &choice.w1 * &cross.kernel();
    let frame = choice.u1.hstack(&perp).hstack(&null_w);
    let split = |x: &[Rational]| -> Result<Vec<Rational>, QuotientError> {
        let coeffs = frame.solve(x).ok_or(QuotientError::NotSubspace)?;
        let perp_coeffs = &coeffs[choice.u1.cols()..choice.u1.cols() + perp.cols()];
        Ok(perp.mul_vec(perp_coeffs))
    };
    let (a, b) = (split(v)?, split(v_prime)?);
    Ok(space.pairing(&a, &b))
}

/// Certificate that a form-preserving isomorphism descends to an isometry of quotients.
#[derive(Debug, Clone)]
pub struct QuotientIsometry {
    pub source: QuotientForm,
    pub target: QuotientForm,
    /// Matrix of the induced map in the two representative bases.
    pub map: RationalMatrix,
    pub preserves_form: bool,
}

impl QuotientIsometry {
    pub fn holds(&self) -> bool {
        self.preserves_form
    }
}

/// Pushes the induced form on `W/U` through `φ` and compares it with the form on `W'/U'`.
///
/// Requires `φᵀ G' φ = G`, `φ(W) = W'` and `φ(U) = U'`.
#[allow(clippy::too_many_arguments)]
pub fn transport_quotient_form(
    phi: &RationalMatrix,
    source: &FormedSpace,
    source_w: &RationalMatrix,
    source_u: &RationalMatrix,
    target: &FormedSpace,
    target_w: &RationalMatrix,
    target_u: &RationalMatrix,
) -> Result<QuotientIsometry, QuotientError> {
    if phi.rows() != target.dimension() || phi.cols() != source.dimension() {
        return Err(QuotientError::DimensionMismatch("φ does not map source to target".into()));
    }
    if phi.rank() != phi.cols() || !phi.is_square() {
        return Err(QuotientError::NotEquivariant("φ is not invertible".into()));
    }
    if &(&phi.transpose() * target.gram()) * phi != *source.gram() {
        return Err(QuotientError::NotEquivariant("φᵀG'φ ≠ G".into()));
    }
    if !(phi * source_w).span_equals(target_w) {
        return Err(QuotientError::NotEquivariant("φ(W) ≠ W'".into()));
    }
    if !(phi * source_u).span_equals(target_u) {
        return Err(QuotientError::NotEquivariant("φ(U) ≠ U'".into()));
    }
    let src = induced_form_on_quotient(source, source_w, source_u)?;
    let dst = induced_form_on_quotient(target, target_w, target_u)?;
    let image = phi * &src.representatives;
    let cols: Option<Vec<_>> = image.columns().iter().map(|c| dst.coordinates(c)).collect();
    let map = RationalMatrix::from_columns(&cols.ok_or(QuotientError::NotSubspace)?, dst.dimension());
    let preserves_form = &(&map.transpose() * &dst.gram) * &map == src.gram;
    Ok(QuotientIsometry { source: src, target: dst, map, preserves_form })
}
