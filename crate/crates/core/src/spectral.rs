//! Weighted Hodge–Laplacians on `K×_g`, their spectra, and the analytic torsion.
//!
//! With adjoints taken in `⟨,⟩_g`, the degree-`n` Laplacian is
//! `Δ_n = ∂_n* ∂_n + ∂_{n+1} ∂_{n+1}*`. Its nonzero eigenvalues feed
//! `ζ_n'(0) = −Σ_{λ>0} log λ`, and
//!
//! ```text
//! log T = ½ Σ_n (−1)^n n ζ_n'(0)      T² = Π_n det'(Δ_n)^{(−1)^{n+1} n}
//! ```
//!
//! The float path takes logs of eigenvalues; the exact path multiplies
//! pseudo-determinants read off exact characteristic polynomials. Zero
//! eigenvalues are always counted by exact rank.

use nalgebra::SymmetricEigen;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::chain::{boundary_matrix, gram_matrix, unweighted_boundary, ChainError, VertexWeights, WeightPair};
use crate::complex::SimplicialComplex;
use crate::exact::{rational_pow, rational_sqrt, to_f64, Rational, RationalMatrix};

/// Relative tolerance for float-versus-exact torsion agreement.
pub const FLOAT_AGREEMENT: f64 = 1e-9;

/// Default relative threshold used only to flag suspicious near-zero eigenvalues.
pub const DEFAULT_ZERO_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("Gram matrix is singular in degree {0}: a zero-weight simplex reached the restricted complex")]
    SingularGram(usize),
    #[error("Gram entry is not the square of a rational")]
    NotSquareGram,
    #[error("symmetric eigensolver did not converge")]
    EigenFailure,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("hypothesis violated at vertex #{0}: g is nonzero but f vanishes")]
    HypothesisViolated(usize),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

fn inverse_diagonal(g: &RationalMatrix, degree: usize) -> Result<RationalMatrix, TorsionError> {
    let diag: Option<Vec<Rational>> =
        g.diagonal().into_iter().map(|x| (!x.is_zero()).then(|| x.recip())).collect();
    diag.map(|d| RationalMatrix::from_diagonal(&d)).ok_or(TorsionError::SingularGram(degree))
}

/// `(∂_n^f)*_g = G_n⁻¹ Bᵀ G_{n−1}`, mapping `C_{n−1} → C_n`.
pub fn adjoint_boundary(kx: &SimplicialComplex, w: &WeightPair, n: usize) -> Result<RationalMatrix, TorsionError> {
    let b = boundary_matrix(kx, &w.f, n);
    if n == 0 {
        return Ok(RationalMatrix::zeros(b.cols(), 0));
    }
    let g_inv = inverse_diagonal(&gram_matrix(kx, &w.g, n), n)?;
    let g_prev = gram_matrix(kx, &w.g, n - 1);
    Ok(&(&g_inv * &b.transpose()) * &g_prev)
}

/// `Δ_n = ∂_n* ∂_n + ∂_{n+1} ∂_{n+1}*` on `C_n(K×)`.
pub fn hodge_laplacian(kx: &SimplicialComplex, w: &WeightPair, n: usize) -> Result<RationalMatrix, TorsionError> {
    let down = &adjoint_boundary(kx, w, n)? * &boundary_matrix(kx, &w.f, n);
    let up = &boundary_matrix(kx, &w.f, n + 1) * &adjoint_boundary(kx, w, n + 1)?;
    Ok(&down + &up)
}

/// `S = G^{1/2} Δ G^{−1/2}`: symmetric and similar to `Δ`.
pub fn symmetrize(delta: &RationalMatrix, gram: &RationalMatrix) -> Result<RationalMatrix, TorsionError> {
    let roots: Option<Vec<Rational>> = gram.diagonal().iter().map(rational_sqrt).collect();
    let roots = roots.ok_or(TorsionError::NotSquareGram)?;
    if roots.iter().any(Zero::is_zero) {
        return Err(TorsionError::SingularGram(0));
    }
    let mut s = delta.clone();
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            if !s[(i, j)].is_zero() {
                s[(i, j)] = &s[(i, j)] * &roots[i] / &roots[j];
            }
        }
    }
    Ok(s)
}

/// Float eigenvalues with the zero count fixed by exact rank.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending; the first `zero_count` entries are exactly `0.0`.
    pub values: Vec<f64>,
    pub zero_count: usize,
    pub exact_rank: usize,
    /// The float threshold would have classified some eigenvalue differently.
    pub threshold_disagrees: bool,
}

impl Spectrum {
    pub fn nonzero(&self) -> &[f64] {
        &self.values[self.zero_count..]
    }
}

pub fn spectrum(s: &RationalMatrix, tol: f64) -> Result<Spectrum, TorsionError> {
    let n = s.rows();
    let exact_rank = s.rank();
    if n == 0 {
        return Ok(Spectrum { values: Vec::new(), zero_count: 0, exact_rank, threshold_disagrees: false });
    }
    let eig = SymmetricEigen::try_new(s.to_f64(), f64::EPSILON, 100_000).ok_or(TorsionError::EigenFailure)?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    if values.iter().any(|x| !x.is_finite()) {
        return Err(TorsionError::EigenFailure);
    }
    values.sort_by(|a, b| a.total_cmp(b));
    let zero_count = n - exact_rank;
    let scale = values.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let threshold = tol * scale;
    let threshold_disagrees = values[..zero_count].iter().any(|x| x.abs() > threshold)
        || values[zero_count..].iter().any(|x| x.abs() <= threshold);
    for v in &mut values[..zero_count] {
        *v = 0.0;
    }
    Ok(Spectrum { values, zero_count, exact_rank, threshold_disagrees })
}

/// Product of the nonzero eigenvalues of a symmetric PSD matrix, exactly;
/// `1` for a zero or empty matrix.
pub fn pseudo_det(s: &RationalMatrix) -> Rational {
    let cp = s.charpoly();
    cp.iter().find(|c| !c.is_zero()).expect("charpoly is monic").abs()
}

/// Everything computed for one degree of `K×_g`.
#[derive(Debug, Clone)]
pub struct SpectralBundle {
    pub degree: usize,
    pub laplacian: RationalMatrix,
    pub symmetrized: RationalMatrix,
    pub spectrum: Spectrum,
    pub exact_rank: usize,
    pub pseudo_det: Rational,
}

impl SpectralBundle {
    pub fn dimension(&self) -> usize {
        self.laplacian.rows()
    }

    pub fn harmonic_dimension(&self) -> usize {
        self.dimension() - self.exact_rank
    }

    /// `ζ_n'(0) = −Σ_{λ>0} log λ`.
    pub fn zeta_derivative_at_zero(&self) -> f64 {
        -self.spectrum.nonzero().iter().map(|x| x.ln()).sum::<f64>()
    }
}

fn symmetrized_laplacian(
    kx: &SimplicialComplex,
    w: &WeightPair,
    n: usize,
) -> Result<(RationalMatrix, RationalMatrix), TorsionError> {
    let delta = hodge_laplacian(kx, w, n)?;
    let s = symmetrize(&delta, &gram_matrix(kx, &w.g, n))?;
    Ok((delta, s))
}

/// Spectral data of degree `n` on `kx`, which must carry a nonvanishing `g`.
pub fn spectral_bundle(
    kx: &SimplicialComplex,
    w: &WeightPair,
    n: usize,
    tol: f64,
) -> Result<SpectralBundle, TorsionError> {
    let (laplacian, symmetrized) = symmetrized_laplacian(kx, w, n)?;
    let spectrum = spectrum(&symmetrized, tol)?;
    Ok(SpectralBundle {
        degree: n,
        exact_rank: spectrum.exact_rank,
        pseudo_det: pseudo_det(&symmetrized),
        laplacian,
        symmetrized,
        spectrum,
    })
}

/// Bundles for every degree of `K×_g`.
pub fn spectral_bundles(k: &SimplicialComplex, w: &WeightPair, tol: f64) -> Result<Vec<SpectralBundle>, TorsionError> {
    let kx = k.restrict_nonvanishing(&w.g);
    (0..=kx.dimension()).map(|n| spectral_bundle(&kx, w, n as usize, tol)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionResult {
    pub log_torsion: f64,
    pub torsion: f64,
    pub torsion_squared_exact: Rational,
    /// `s(K, ε(g))`.
    pub s_exponent: i64,
    /// Exact `det'(Δ_n)` for each degree of `K×_g`.
    pub pseudo_dets: Vec<Rational>,
}

impl TorsionResult {
    /// `exp(2 log T)` against the exact `T²`, to relative [`FLOAT_AGREEMENT`].
    pub fn is_consistent(&self) -> bool {
        relative_close((2.0 * self.log_torsion).exp(), to_f64(&self.torsion_squared_exact), FLOAT_AGREEMENT)
    }
}

pub fn relative_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn torsion_exponent(n: usize) -> i64 {
    if n % 2 == 0 {
        -(n as i64)
    } else {
        n as i64
    }
}

fn squared_from_pseudo_dets(pdets: &[Rational]) -> Rational {
    pdets
        .iter()
        .enumerate()
        .fold(Rational::from_integer(1.into()), |acc, (n, d)| acc * rational_pow(d, torsion_exponent(n)))
}

/// Exact `T²` only; never touches floating point.
pub fn torsion_squared_exact(k: &SimplicialComplex, w: &WeightPair) -> Result<Rational, TorsionError> {
    let kx = k.restrict_nonvanishing(&w.g);
    let pdets: Result<Vec<Rational>, TorsionError> =
        (0..=kx.dimension()).map(|n| Ok(pseudo_det(&symmetrized_laplacian(&kx, w, n as usize)?.1))).collect();
    Ok(squared_from_pseudo_dets(&pdets?))
}

/// Both torsion paths on `K×_g`.
pub fn analytic_torsion(k: &SimplicialComplex, w: &WeightPair) -> Result<TorsionResult, TorsionError> {
    analytic_torsion_with_tol(k, w, DEFAULT_ZERO_TOL)
}

pub fn analytic_torsion_with_tol(
    k: &SimplicialComplex,
    w: &WeightPair,
    tol: f64,
) -> Result<TorsionResult, TorsionError> {
    let bundles = spectral_bundles(k, w, tol)?;
    let log_torsion = 0.5
        * bundles
            .iter()
            .map(|b| {
                let sign = if b.degree % 2 == 0 { 1.0 } else { -1.0 };
                sign * b.degree as f64 * b.zeta_derivative_at_zero()
            })
            .sum::<f64>();
    let pseudo_dets: Vec<Rational> = bundles.into_iter().map(|b| b.pseudo_det).collect();
    Ok(TorsionResult {
        log_torsion,
        torsion: log_torsion.exp(),
        torsion_squared_exact: squared_from_pseudo_dets(&pseudo_dets),
        s_exponent: s_exponent(k, &w.g.support()),
        pseudo_dets,
    })
}

/// `s(K, w) = Σ_n (−1)^n rank ∂_n` over the unweighted boundaries of `K×_w`.
pub fn s_exponent(k: &SimplicialComplex, w: &VertexWeights) -> i64 {
    let kw = k.restrict_nonvanishing(w);
    (1..=kw.dimension().max(0) as usize)
        .map(|n| {
            let r = unweighted_boundary(&kw, n).rank() as i64;
            if n % 2 == 0 {
                r
            } else {
                -r
            }
        })
        .sum()
}

/// Exact equality of two `T²` values, plus agreement of the float paths.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingCertificate {
    pub law: &'static str,
    /// `T²` of the transformed weights.
    pub lhs: Rational,
    /// Predicted `T²` from the original weights.
    pub rhs: Rational,
    pub log_lhs: f64,
    pub log_rhs: f64,
}

impl ScalingCertificate {
    pub fn exact_holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn float_holds(&self) -> bool {
        (self.log_lhs - self.log_rhs).abs() <= FLOAT_AGREEMENT * self.log_lhs.abs().max(1.0)
    }

    pub fn holds(&self) -> bool {
        self.exact_holds() && self.float_holds()
    }
}

/// `T(K, hf, hg) = T(K, f, g)` for nonvanishing `h`.
pub fn check_scale_invariance(
    k: &SimplicialComplex,
    w: &WeightPair,
    h: &VertexWeights,
) -> Result<ScalingCertificate, TorsionError> {
    if let Some(&v) = h.zero_vertices().first() {
        return Err(ChainError::VanishingScale(v).into());
    }
    let base = analytic_torsion(k, w)?;
    let scaled = analytic_torsion(k, &WeightPair::new(w.f.times(h), w.g.times(h)))?;
    Ok(ScalingCertificate {
        law: "scale",
        lhs: scaled.torsion_squared_exact,
        rhs: base.torsion_squared_exact,
        log_lhs: scaled.log_torsion,
        log_rhs: base.log_torsion,
    })
}

fn check_support_hypothesis(w: &WeightPair) -> Result<(), TorsionError> {
    match (0..w.g.len()).find(|&v| !w.g.is_zero_at(v) && w.f.is_zero_at(v)) {
        Some(v) => Err(TorsionError::HypothesisViolated(v)),
        None => Ok(()),
    }
}

fn check_scalar_law(
    k: &SimplicialComplex,
    w: &WeightPair,
    c: &Rational,
    scale_g: bool,
) -> Result<ScalingCertificate, TorsionError> {
    if c.is_zero() {
        return Err(TorsionError::ZeroScalar);
    }
    check_support_hypothesis(w)?;
    let s = s_exponent(k, &w.g.support());
    let base = analytic_torsion(k, w)?;
    let (scaled_w, exponent, law) = if scale_g {
        (WeightPair::new(w.f.clone(), w.g.scaled(c)), s, "gscale")
    } else {
        (WeightPair::new(w.f.scaled(c), w.g.clone()), -s, "fscale")
    };
    let scaled = analytic_torsion(k, &scaled_w)?;
    let factor = rational_pow(&(c * c), exponent);
    Ok(ScalingCertificate {
        law,
        lhs: scaled.torsion_squared_exact,
        rhs: factor * &base.torsion_squared_exact,
        log_lhs: scaled.log_torsion,
        log_rhs: base.log_torsion + exponent as f64 * to_f64(&c.abs()).ln(),
    })
}

/// `T(K, f, cg) = |c|^{s(K,ε(g))} T(K, f, g)`.
pub fn check_g_scaling(k: &SimplicialComplex, w: &WeightPair, c: &Rational) -> Result<ScalingCertificate, TorsionError> {
    check_scalar_law(k, w, c, true)
}

/// `T(K, cf, g) = |c|^{−s(K,ε(g))} T(K, f, g)`.
pub fn check_f_scaling(k: &SimplicialComplex, w: &WeightPair, c: &Rational) -> Result<ScalingCertificate, TorsionError> {
    check_scalar_law(k, w, c, false)
}

/// The three identities for `f' = ε(g)f`, `g' = ε(f)g`.
#[derive(Debug, Clone, PartialEq)]
pub struct MainTheoremCertificate {
    pub reduced: WeightPair,
    pub s_exponent: i64,
    pub scale: ScalingCertificate,
    pub g_scaling: ScalingCertificate,
    pub f_scaling: ScalingCertificate,
}

impl MainTheoremCertificate {
    pub fn holds(&self) -> bool {
        self.scale.holds() && self.g_scaling.holds() && self.f_scaling.holds()
    }
}

pub fn check_main_theorem(
    k: &SimplicialComplex,
    w: &WeightPair,
    h: &VertexWeights,
    c: &Rational,
) -> Result<MainTheoremCertificate, TorsionError> {
    if c.is_zero() {
        return Err(TorsionError::ZeroScalar);
    }
    let reduced = WeightPair::new(w.f.times(&w.g.support()), w.g.times(&w.f.support()));
    let s = s_exponent(k, &w.f.support().times(&w.g.support()));
    Ok(MainTheoremCertificate {
        scale: check_scale_invariance(k, &reduced, h)?,
        g_scaling: check_g_scaling(k, &reduced, c)?,
        f_scaling: check_f_scaling(k, &reduced, c)?,
        s_exponent: s,
        reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn weights(v: &[i64]) -> VertexWeights {
        VertexWeights::new(v.iter().map(|&x| int(x)).collect())
    }

    fn solid() -> SimplicialComplex {
        SimplicialComplex::from_rank_generators(3, &[&[0, 1, 2]]).unwrap()
    }

    fn hollow() -> SimplicialComplex {
        SimplicialComplex::from_rank_generators(3, &[&[0, 1], &[1, 2], &[0, 2]]).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn adjoint_reduces_to_transpose() {
        let k = solid();
        let w = WeightPair::ones(3);
        for n in 1..3 {
            assert_eq!(adjoint_boundary(&k, &w, n).unwrap(), boundary_matrix(&k, &w.f, n).transpose());
        }
        let a0 = adjoint_boundary(&k, &w, 0).unwrap();
        assert_eq!((a0.rows(), a0.cols()), (3, 0));
    }

    #[test]
    fn adjoint_of_weighted_edge() {
        let k = SimplicialComplex::from_rank_generators(2, &[&[0, 1]]).unwrap();
        let w = WeightPair::new(weights(&[1, 1]), weights(&[1, 2]));
        // B = (−1, 1)ᵀ, G_1 = (4), G_0 = diag(1, 4): adjoint = (1/4)·(−1, 1)·diag(1,4) = (−1/4, 1)
        let adj = adjoint_boundary(&k, &w, 1).unwrap();
        assert_eq!(adj, RationalMatrix::from_rows(vec![vec![rat(-1, 4), int(1)]], 2));
    }

    #[test]
    fn triangle_laplacians() {
        let k = solid();
        let w = WeightPair::ones(3);
        let l0 = hodge_laplacian(&k, &w, 0).unwrap();
        assert_eq!(l0, RationalMatrix::from_i64_rows(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]));
        let l1 = hodge_laplacian(&k, &w, 1).unwrap();
        assert_eq!(l1, RationalMatrix::identity(3).scale(&int(3)));
        let l3 = hodge_laplacian(&k, &w, 3).unwrap();
        assert_eq!((l3.rows(), l3.cols()), (0, 0));
    }

    #[test]
    fn symmetrize_is_symmetric() {
        let k = solid();
        let w = WeightPair::new(weights(&[1, -2, 3]), VertexWeights::new(vec![rat(1, 2), int(3), int(-2)]));
        for n in 0..3 {
            let d = hodge_laplacian(&k, &w, n).unwrap();
            let g = gram_matrix(&k, &w.g, n);
            let s = symmetrize(&d, &g).unwrap();
            assert!(s.is_symmetric());
            assert_eq!(s.charpoly(), d.charpoly());
        }
        let ones = WeightPair::ones(3);
        let d = hodge_laplacian(&k, &ones, 1).unwrap();
        assert_eq!(symmetrize(&d, &gram_matrix(&k, &ones.g, 1)).unwrap(), d);
    }

    #[test]
    fn spectra() {
        let d = RationalMatrix::from_diagonal(&[int(0), int(2), int(3)]);
        assert_eq!(spectrum(&d, DEFAULT_ZERO_TOL).unwrap().values, vec![0.0, 2.0, 3.0]);
        assert_eq!(pseudo_det(&d), int(6));

        let k3 = RationalMatrix::from_i64_rows(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        let sp = spectrum(&k3, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(sp.zero_count, 1);
        assert!(close(sp.values[1], 3.0) && close(sp.values[2], 3.0));
        assert_eq!(pseudo_det(&k3), int(9));

        let p4 = RationalMatrix::from_i64_rows(&[&[1, -1, 0, 0], &[-1, 2, -1, 0], &[0, -1, 2, -1], &[0, 0, -1, 1]]);
        let sp = spectrum(&p4, DEFAULT_ZERO_TOL).unwrap();
        let expected = [0.0, 2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        assert!(sp.values.iter().zip(expected).all(|(a, b)| close(*a, b)));
        assert!(!sp.threshold_disagrees);

        assert_eq!(pseudo_det(&RationalMatrix::zeros(0, 0)), int(1));
        assert_eq!(pseudo_det(&RationalMatrix::zeros(2, 2)), int(1));
    }

    #[test]
    fn unit_torsions() {
        let t = analytic_torsion(&solid(), &WeightPair::ones(3)).unwrap();
        assert_eq!(t.torsion_squared_exact, int(3));
        assert!(close(t.torsion, 3f64.sqrt()));
        assert_eq!(t.pseudo_dets, vec![int(9), int(27), int(3)]);

        let path = SimplicialComplex::from_rank_generators(4, &[&[0, 1], &[1, 2], &[2, 3]]).unwrap();
        let t = analytic_torsion(&path, &WeightPair::ones(4)).unwrap();
        assert_eq!(t.torsion_squared_exact, int(4));
        assert!(close(t.torsion, 2.0));

        let star = SimplicialComplex::from_rank_generators(5, &[&[0, 1], &[0, 2], &[0, 3], &[0, 4]]).unwrap();
        let t = analytic_torsion(&star, &WeightPair::ones(5)).unwrap();
        assert_eq!(t.torsion_squared_exact, int(5));
        assert!(close(t.torsion, 5f64.sqrt()));
        assert!(t.is_consistent());
    }

    #[test]
    fn empty_restriction_has_unit_torsion() {
        let w = WeightPair::new(weights(&[1, 1, 1]), weights(&[0, 0, 0]));
        let t = analytic_torsion(&solid(), &w).unwrap();
        assert_eq!(t.torsion_squared_exact, int(1));
        assert_eq!(t.torsion, 1.0);
    }

    #[test]
    fn s_exponents() {
        let ones = VertexWeights::ones(3);
        assert_eq!(s_exponent(&solid(), &ones), -1);
        assert_eq!(s_exponent(&hollow(), &ones), -2);
        let point = SimplicialComplex::from_rank_generators(1, &[&[0]]).unwrap();
        assert_eq!(s_exponent(&point, &VertexWeights::ones(1)), 0);
    }

    #[test]
    fn scaling_laws_on_triangles() {
        let w = WeightPair::ones(3);
        assert!(check_g_scaling(&solid(), &w, &int(1)).unwrap().holds());
        let c = check_g_scaling(&solid(), &w, &int(2)).unwrap();
        assert!(c.holds());
        assert_eq!(c.lhs, rat(3, 4));
        assert!(check_g_scaling(&solid(), &w, &int(-3)).unwrap().holds());
        assert!(check_f_scaling(&hollow(), &w, &rat(1, 5)).unwrap().holds());

        let w = WeightPair::new(weights(&[1, 2, 3]), weights(&[1, 1, 2]));
        let h = VertexWeights::new(vec![int(5), int(7), rat(1, 3)]);
        assert!(check_scale_invariance(&hollow(), &w, &h).unwrap().holds());
        assert!(check_scale_invariance(&hollow(), &w, &VertexWeights::ones(3)).unwrap().holds());
    }

    #[test]
    fn scaling_errors() {
        let w = WeightPair::new(weights(&[0, 1, 1]), weights(&[1, 1, 1]));
        assert_eq!(check_g_scaling(&solid(), &w, &int(2)), Err(TorsionError::HypothesisViolated(0)));
        assert_eq!(check_f_scaling(&solid(), &WeightPair::ones(3), &int(0)), Err(TorsionError::ZeroScalar));
        assert_eq!(
            check_scale_invariance(&solid(), &WeightPair::ones(3), &weights(&[1, 0, 1])),
            Err(TorsionError::Chain(ChainError::VanishingScale(1)))
        );
    }

    #[test]
    fn main_theorem_with_mixed_supports() {
        let k = SimplicialComplex::from_rank_generators(4, &[&[0, 1, 2, 3]]).unwrap();
        let w = WeightPair::new(weights(&[1, 2, 0, 3]), weights(&[1, 0, 2, 3]));
        let cert = check_main_theorem(&k, &w, &weights(&[2, -1, 3, 5]), &rat(-3, 2)).unwrap();
        assert!(cert.holds());
        assert_eq!(cert.reduced.f, weights(&[1, 0, 0, 3]));
        assert_eq!(cert.reduced.g, weights(&[1, 0, 0, 3]));
        assert_eq!(cert.s_exponent, -1);

        let trivial = check_main_theorem(&k, &w, &VertexWeights::ones(4), &int(1)).unwrap();
        assert!(trivial.holds());
        assert_eq!(trivial.scale.lhs, trivial.scale.rhs);
    }
}
