//! Weighted homology `H_n(K,f,g) = Ker ∂_n^f / Im ∂_{n+1}^f` with the form induced by `⟨,⟩_g`.

use thiserror::Error;

use crate::chain::{
    boundary_matrix, chain_scale_iso, gram_matrix, null_space_matrix, unweighted_boundary, ChainError,
    VertexWeights, WeightPair,
};
use crate::complex::SimplicialComplex;
use crate::exact::RationalMatrix;
use crate::quotient::{
    induced_form_on_quotient, transport_quotient_form, FormedSpace, QuotientError, QuotientForm, QuotientIsometry,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

#[derive(Debug, Clone)]
pub struct HomologyResult {
    pub degree: usize,
    pub betti: usize,
    /// Basis of `Ker ∂_n` (columns, ambient chain coordinates).
    pub cycles: RationalMatrix,
    /// Basis of `Im ∂_{n+1}`.
    pub boundaries: RationalMatrix,
    pub form: QuotientForm,
    pub inner_product: bool,
}

impl HomologyResult {
    /// Gram matrix of the induced form in the basis of `form.representatives`.
    pub fn gram(&self) -> &RationalMatrix {
        &self.form.gram
    }
}

/// Homology at the middle of `C_{n+1} → C_n → C_{n−1}` with `gram` on `C_n`.
pub fn chain_homology(
    d_n: &RationalMatrix,
    d_next: &RationalMatrix,
    gram: &RationalMatrix,
    degree: usize,
) -> Result<HomologyResult, HomologyError> {
    let cycles = d_n.kernel();
    let boundaries = d_next.column_space();
    let space = FormedSpace::new(gram.clone())?;
    let form = induced_form_on_quotient(&space, &cycles, &boundaries)?;
    Ok(HomologyResult {
        degree,
        betti: cycles.cols() - boundaries.cols(),
        inner_product: form.is_inner_product(),
        cycles,
        boundaries,
        form,
    })
}

pub fn weighted_homology(k: &SimplicialComplex, w: &WeightPair, n: usize) -> HomologyResult {
    chain_homology(
        &boundary_matrix(k, &w.f, n),
        &boundary_matrix(k, &w.f, n + 1),
        &gram_matrix(k, &w.g, n),
        n,
    )
    .expect("diagonal Gram matrices of squares are PSD and Im ∂ ⊆ Ker ∂")
}

/// Betti numbers for degrees `0..=dim K`.
pub fn betti_numbers(k: &SimplicialComplex, w: &WeightPair) -> Vec<usize> {
    (0..=k.dimension()).map(|n| weighted_homology(k, w, n as usize).betti).collect()
}

/// Classical real Betti numbers from unweighted boundary ranks.
pub fn unweighted_betti_numbers(k: &SimplicialComplex) -> Vec<usize> {
    if k.is_empty() {
        return Vec::new();
    }
    let ranks: Vec<usize> = (0..=k.dimension() as usize + 1).map(|n| unweighted_boundary(k, n).rank()).collect();
    (0..=k.dimension()).map(|n| n as usize).map(|n| k.count(n) - ranks[n] - ranks[n + 1]).collect()
}

/// Whether `⟨,⟩_g` is an inner product on `H_n`: the null chains that are cycles
/// must all be boundaries.
pub fn inner_product_criterion(k: &SimplicialComplex, w: &WeightPair, n: usize) -> bool {
    let d_n = boundary_matrix(k, &w.f, n);
    let image = boundary_matrix(k, &w.f, n + 1);
    let null = null_space_matrix(k, &w.g, n);
    // cycles inside N_n: N·c with ∂(N·c) = 0
    let null_cycles = &null * &(&d_n * &null).kernel();
    image.span_includes(&null_cycles)
}

/// The literal containment `N_n ⊆ Im ∂_{n+1}`. Sufficient for an inner product,
/// but not necessary when some null chain is not a cycle.
pub fn null_space_in_boundaries(k: &SimplicialComplex, w: &WeightPair, n: usize) -> bool {
    boundary_matrix(k, &w.f, n + 1).span_includes(&null_space_matrix(k, &w.g, n))
}

/// Homology of `C_*/N_*` versus homology of `K×_g`.
#[derive(Debug, Clone)]
pub struct RestrictionCertificate {
    pub degree: usize,
    pub quotient_route: HomologyResult,
    pub restricted_route: HomologyResult,
    pub isometry: QuotientIsometry,
}

impl RestrictionCertificate {
    pub fn holds(&self) -> bool {
        self.quotient_route.betti == self.restricted_route.betti && self.isometry.holds()
    }
}

/// `C_k/N_k` with its induced form, and the matrix of `ι⁻¹`: quotient coordinates → `C_k(K×_g)`.
fn quotient_by_null(
    k: &SimplicialComplex,
    kx: &SimplicialComplex,
    g: &VertexWeights,
    degree: usize,
) -> Result<(QuotientForm, RationalMatrix), HomologyError> {
    let space = FormedSpace::new(gram_matrix(k, g, degree))?;
    let all = RationalMatrix::identity(k.count(degree));
    let form = induced_form_on_quotient(&space, &all, &null_space_matrix(k, g, degree))?;
    let rows: Vec<usize> = kx.simplices(degree).iter().map(|s| k.index_of(s).expect("K×_g ⊆ K")).collect();
    let to_restricted = form.representatives.select_rows(&rows);
    Ok((form, to_restricted))
}

/// Runs both routes for `H_n` and certifies that `ι` identifies them isometrically.
pub fn restriction_isometry_check(
    k: &SimplicialComplex,
    w: &WeightPair,
    n: usize,
) -> Result<RestrictionCertificate, HomologyError> {
    let kx = k.restrict_nonvanishing(&w.g);
    let restricted_route = weighted_homology(&kx, w, n);

    let (form_n, j_n) = quotient_by_null(k, &kx, &w.g, n)?;
    let (_, j_next) = quotient_by_null(k, &kx, &w.g, n + 1)?;
    // ∂̃_k = ι ∘ ∂|K× ∘ ι⁻¹ in quotient coordinates: J_{k−1}⁻¹ B_k J_k
    let reduced = |deg: usize, j_src: &RationalMatrix| -> Result<RationalMatrix, HomologyError> {
        let b = boundary_matrix(&kx, &w.f, deg);
        if deg == 0 {
            return Ok(RationalMatrix::zeros(0, j_src.cols()));
        }
        let (_, j_dst) = quotient_by_null(k, &kx, &w.g, deg - 1)?;
        let inv = j_dst.inverse().expect("ι is an isomorphism");
        Ok(&(&inv * &b) * j_src)
    };
    let d_n = reduced(n, &j_n)?;
    let d_next = reduced(n + 1, &j_next)?;
    let quotient_route = chain_homology(&d_n, &d_next, &form_n.gram, n)?;

    let isometry = transport_quotient_form(
        &j_n,
        &FormedSpace::new(form_n.gram.clone())?,
        &quotient_route.cycles,
        &quotient_route.boundaries,
        &FormedSpace::new(gram_matrix(&kx, &w.g, n))?,
        &restricted_route.cycles,
        &restricted_route.boundaries,
    )?;
    Ok(RestrictionCertificate { degree: n, quotient_route, restricted_route, isometry })
}

/// `φ_* : H_n(K,f,g) → H_n(K,fh,gh)` and whether it preserves the induced forms.
#[derive(Debug, Clone)]
pub struct ScaleCertificate {
    pub degree: usize,
    pub source_betti: usize,
    pub target_betti: usize,
    pub isometry: QuotientIsometry,
}

impl ScaleCertificate {
    pub fn holds(&self) -> bool {
        self.source_betti == self.target_betti && self.isometry.holds()
    }
}

pub fn scale_isometry_check(
    k: &SimplicialComplex,
    w: &WeightPair,
    h: &VertexWeights,
    n: usize,
) -> Result<ScaleCertificate, HomologyError> {
    let phi = chain_scale_iso(k, h, n)?;
    let scaled = WeightPair::new(w.f.times(h), w.g.times(h));
    let source = weighted_homology(k, w, n);
    let target = weighted_homology(k, &scaled, n);
    let isometry = transport_quotient_form(
        &phi,
        &FormedSpace::new(gram_matrix(k, &w.g, n))?,
        &source.cycles,
        &source.boundaries,
        &FormedSpace::new(gram_matrix(k, &scaled.g, n))?,
        &target.cycles,
        &target.boundaries,
    )?;
    Ok(ScaleCertificate { degree: n, source_betti: source.betti, target_betti: target.betti, isometry })
}
