//! Reidemeister torsion of `(C_*(K×_g), ∂^f)` with the preferred basis made
//! orthonormal by `⟨,⟩_g`.
//!
//! In each degree choose a basis `b_n` of the boundaries, cycles `h_n`
//! representing homology, and lifts `b̃_{n−1}` with `∂ b̃_{n−1} = b_{n−1}`.
//! The bracket `[b_n, h_n, b̃_{n−1} / c_n]` is the change-of-basis
//! determinant against a `g`-orthonormal basis, with `h_n` normalised to unit
//! volume in the induced form on homology. Only squares are computed, so
//! every quantity stays rational:
//!
//! ```text
//! [..]² = det(Mᵀ G M) / det(Hᵀ G H)      τ² = Π_n [..]_n^{2(−1)^n}
//! ```
//!
//! where `M = (b_n | h_n | b̃_{n−1})` and `H` is `h_n` projected orthogonally
//! off the boundaries.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::chain::{boundary_matrix, gram_matrix, WeightPair};
use crate::complex::SimplicialComplex;
use crate::exact::{rational_pow, to_f64, Rational, RationalMatrix};
use crate::spectral::{torsion_squared_exact, TorsionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RTorsionError {
    #[error("boundary basis in degree {0} does not lift through the boundary map")]
    LiftFailure(usize),
    #[error("combined basis in degree {0} is not a basis of the chain space")]
    DegenerateBasis(usize),
    #[error("homology representatives in degree {0} are not independent cycles")]
    BadHomologyBasis(usize),
    #[error(transparent)]
    Analytic(#[from] TorsionError),
}

/// The based data of one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct BasedDegreeData {
    pub degree: usize,
    /// Basis of `Im ∂_{n+1}`.
    pub b: RationalMatrix,
    /// Cycles representing `H_n`.
    pub h_raw: RationalMatrix,
    /// Lifts of the degree `n−1` boundary basis.
    pub b_lift: RationalMatrix,
    /// `(b | h_raw | b_lift)`.
    pub combined: RationalMatrix,
}

/// `b_n`, harmonic `h_n` and lifts of `b_prev` for degree `n` of `kx`.
///
/// `kx` must carry nonvanishing `g`; the harmonic cycles are the cycles
/// `g`-orthogonal to the boundaries.
pub fn based_data(
    kx: &SimplicialComplex,
    w: &WeightPair,
    n: usize,
    b_prev: &RationalMatrix,
) -> Result<BasedDegreeData, RTorsionError> {
    let b = boundary_matrix(kx, &w.f, n + 1).column_space();
    let gram = gram_matrix(kx, &w.g, n);
    let cycles = boundary_matrix(kx, &w.f, n).kernel();
    let h_raw = &cycles * &(&(&b.transpose() * &gram) * &cycles).kernel();
    let b_lift = lift(kx, w, n, b_prev)?;
    let combined = b.hstack(&h_raw).hstack(&b_lift);
    Ok(BasedDegreeData { degree: n, b, h_raw, b_lift, combined })
}

fn lift(kx: &SimplicialComplex, w: &WeightPair, n: usize, b_prev: &RationalMatrix) -> Result<RationalMatrix, RTorsionError> {
    let d = boundary_matrix(kx, &w.f, n);
    if b_prev.cols() == 0 {
        return Ok(RationalMatrix::zeros(kx.count(n), 0));
    }
    d.solve_matrix(b_prev).ok_or(RTorsionError::LiftFailure(n))
}

/// Squared bracket of one degree; `h` is projected off `b` before normalising.
pub fn bracket_squared(
    data: &BasedDegreeData,
    gram: &RationalMatrix,
) -> Result<Rational, RTorsionError> {
    let n = data.degree;
    let m = &data.combined;
    if !m.is_square() {
        return Err(RTorsionError::DegenerateBasis(n));
    }
    let num = (&(&m.transpose() * gram) * m).determinant();
    if num.is_zero() {
        return Err(RTorsionError::DegenerateBasis(n));
    }
    let h = project_off(&data.h_raw, &data.b, gram);
    let den = (&(&h.transpose() * gram) * &h).determinant();
    if den.is_zero() {
        return Err(RTorsionError::BadHomologyBasis(n));
    }
    Ok(num / den)
}

/// `v − b (bᵀGb)⁻¹ bᵀ G v`.
fn project_off(v: &RationalMatrix, b: &RationalMatrix, gram: &RationalMatrix) -> RationalMatrix {
    if b.cols() == 0 || v.cols() == 0 {
        return v.clone();
    }
    let bt_g = &b.transpose() * gram;
    let coeffs = (&bt_g * b).solve_matrix(&(&bt_g * v)).expect("independent boundary basis");
    v - &(b * &coeffs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RTorsionResult {
    /// Squared bracket per degree of `K×_g`.
    pub factor_squared: Vec<Rational>,
    pub torsion_squared: Rational,
    pub torsion: f64,
}

/// A full basis choice on `K×_g`, one matrix per degree for each slot.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisChoice {
    pub boundaries: Vec<RationalMatrix>,
    pub homology: Vec<RationalMatrix>,
    pub lifts: Vec<RationalMatrix>,
}

/// The default choice: pivot-column boundaries, harmonic cycles, minimal-support lifts.
pub fn canonical_choice(kx: &SimplicialComplex, w: &WeightPair) -> Result<BasisChoice, RTorsionError> {
    let top = kx.dimension();
    let mut choice = BasisChoice { boundaries: Vec::new(), homology: Vec::new(), lifts: Vec::new() };
    let mut b_prev = RationalMatrix::zeros(0, 0);
    for n in 0..=top.max(-1) {
        let data = based_data(kx, w, n as usize, &b_prev)?;
        b_prev = data.b.clone();
        choice.boundaries.push(data.b);
        choice.homology.push(data.h_raw);
        choice.lifts.push(data.b_lift);
    }
    Ok(choice)
}

/// `τ²` from an explicit basis choice, which is validated.
pub fn torsion_from_choice(
    kx: &SimplicialComplex,
    w: &WeightPair,
    choice: &BasisChoice,
) -> Result<RTorsionResult, RTorsionError> {
    let mut factor_squared = Vec::with_capacity(choice.boundaries.len());
    for n in 0..choice.boundaries.len() {
        let d = boundary_matrix(kx, &w.f, n);
        let lifts = &choice.lifts[n];
        let expected = if n == 0 { RationalMatrix::zeros(0, 0) } else { choice.boundaries[n - 1].clone() };
        if lifts.cols() != expected.cols() || (lifts.cols() > 0 && &d * lifts != expected) {
            return Err(RTorsionError::LiftFailure(n));
        }
        let h = &choice.homology[n];
        if h.cols() > 0 && !(&d * h).is_zero() {
            return Err(RTorsionError::BadHomologyBasis(n));
        }
        let data = BasedDegreeData {
            degree: n,
            combined: choice.boundaries[n].hstack(h).hstack(lifts),
            b: choice.boundaries[n].clone(),
            h_raw: h.clone(),
            b_lift: lifts.clone(),
        };
        factor_squared.push(bracket_squared(&data, &gram_matrix(kx, &w.g, n))?);
    }
    let torsion_squared = factor_squared.iter().enumerate().fold(Rational::one(), |acc, (n, x)| {
        acc * rational_pow(x, if n % 2 == 0 { 1 } else { -1 })
    });
    let torsion = to_f64(&torsion_squared).sqrt();
    Ok(RTorsionResult { factor_squared, torsion_squared, torsion })
}

/// Reidemeister torsion of `K×_g` with the canonical basis choice.
pub fn r_torsion(k: &SimplicialComplex, w: &WeightPair) -> Result<RTorsionResult, RTorsionError> {
    let kx = k.restrict_nonvanishing(&w.g);
    let choice = canonical_choice(&kx, w)?;
    torsion_from_choice(&kx, w, &choice)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceCertificate {
    pub analytic_squared: Rational,
    pub reidemeister_squared: Rational,
}

impl EquivalenceCertificate {
    pub fn holds(&self) -> bool {
        self.analytic_squared == self.reidemeister_squared
    }
}

/// Exact comparison of analytic and Reidemeister torsion.
pub fn torsion_equivalence_check(
    k: &SimplicialComplex,
    w: &WeightPair,
) -> Result<EquivalenceCertificate, RTorsionError> {
    Ok(EquivalenceCertificate {
        analytic_squared: torsion_squared_exact(k, w)?,
        reidemeister_squared: r_torsion(k, w)?.torsion_squared,
    })
}
