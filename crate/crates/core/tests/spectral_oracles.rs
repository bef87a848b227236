mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use weighted_torsion::chain::gram_matrix;
use weighted_torsion::exact::{int, rat, rational_pow, to_f64, Rational, RationalMatrix};
use weighted_torsion::homology::betti_numbers;
use weighted_torsion::spectral::{
    analytic_torsion, hodge_laplacian, pseudo_det, s_exponent, spectral_bundles, symmetrize, torsion_squared_exact,
    DEFAULT_ZERO_TOL,
};
use weighted_torsion::{r_torsion, WeightPair};

fn nonvanishing_pair(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> WeightPair {
    WeightPair::new(nonvanishing(r, n), nonvanishing(r, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn charpoly_matches_interpolation(seed in any::<u64>(), n in 0usize..7) {
        let mut r = rng(seed);
        let a = RationalMatrix::from_rows(
            (0..n).map(|_| (0..n).map(|_| rat(r.gen_range(-5..=5), r.gen_range(1..=4))).collect()).collect(),
            n,
        );
        prop_assert_eq!(a.charpoly(), charpoly_by_interpolation(&a));
    }

    #[test]
    fn graph_torsion_matches_cauchy_binet(seed in any::<u64>(), n in 2usize..6) {
        let mut r = rng(seed);
        let full = random_complex(&mut r, n);
        let edges: Vec<Vec<usize>> = full.simplices(1).iter().map(|s| s.vertices().to_vec()).collect();
        let refs: Vec<&[usize]> = edges.iter().map(Vec::as_slice).collect();
        let k = complex(n, &refs);
        let w = nonvanishing_pair(&mut r, n);
        prop_assert_eq!(torsion_squared_exact(&k, &w).unwrap(), graph_torsion_oracle(&k, &w));
    }

    #[test]
    fn harmonic_dimension_is_betti(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, n);
        let w = WeightPair::new(weights_with_zeros(&mut r, n), weights_with_zeros(&mut r, n));
        let kx = k.restrict_nonvanishing(&w.g);
        let betti = betti_numbers(&kx, &w);
        let bundles = spectral_bundles(&k, &w, DEFAULT_ZERO_TOL).unwrap();
        prop_assert_eq!(bundles.len(), betti.len());
        for (b, beta) in bundles.iter().zip(&betti) {
            prop_assert_eq!(b.harmonic_dimension(), *beta);
            prop_assert!(b.symmetrized.is_symmetric());
            prop_assert_eq!(b.symmetrized.charpoly(), b.laplacian.charpoly());
        }
    }

    #[test]
    fn float_and_exact_torsion_agree(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let k = random_complex(&mut r, n);
        let w = WeightPair::new(weights_with_zeros(&mut r, n), weights_with_zeros(&mut r, n));
        let t = analytic_torsion(&k, &w).unwrap();
        prop_assert!(t.is_consistent(), "{} vs {}", (2.0 * t.log_torsion).exp(), to_f64(&t.torsion_squared_exact));
    }
}

#[test]
fn laplacian_is_self_adjoint_in_the_weighted_form() {
    let k = coned_solid();
    let w = WeightPair::new(weights(&[2, -1, 3, 5]), VertexWeights::new(vec![rat(1, 2), int(3), int(-2), int(7)]));
    for n in 0..3 {
        let delta = hodge_laplacian(&k, &w, n).unwrap();
        let g = gram_matrix(&k, &w.g, n);
        // G Δ symmetric ⇔ Δ self-adjoint in ⟨,⟩_g
        assert!((&g * &delta).is_symmetric());
        let s = symmetrize(&delta, &g).unwrap();
        assert_eq!(pseudo_det(&s), pseudo_det(&delta));
    }
}

use weighted_torsion::VertexWeights;

#[test]
fn unit_weight_values() {
    let cases: Vec<(weighted_torsion::SimplicialComplex, usize, i64)> = vec![
        (solid_triangle(), 3, 3),
        (hollow_triangle(), 3, 9),
        (path4(), 4, 4),
        (complex(5, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4]]), 5, 5),
        (k4_skeleton(), 4, 64),
        (star5(), 5, 5),
    ];
    for (k, n, expected) in cases {
        let t = analytic_torsion(&k, &WeightPair::ones(n)).unwrap();
        assert_eq!(t.torsion_squared_exact, int(expected));
        assert!(rel_close(t.torsion, (expected as f64).sqrt(), 1e-12));
    }
}

#[test]
fn closed_forms_with_random_weights() {
    let mut r = rng(11);
    for _ in 0..25 {
        let w = nonvanishing_pair(&mut r, 5);
        let a = ratios(&w);
        let w3 = WeightPair::new(
            VertexWeights::new(w.f.values()[..3].to_vec()),
            VertexWeights::new(w.g.values()[..3].to_vec()),
        );
        let w4 = WeightPair::new(
            VertexWeights::new(w.f.values()[..4].to_vec()),
            VertexWeights::new(w.g.values()[..4].to_vec()),
        );
        let s3 = sum_of_squares(&a[..3]);

        assert_eq!(torsion_squared_exact(&solid_triangle(), &w3).unwrap(), s3);
        // the hollow triangle picks up the square of the solid value
        assert_eq!(torsion_squared_exact(&hollow_triangle(), &w3).unwrap(), &s3 * &s3);
        assert_eq!(torsion_squared_exact(&path4(), &w4).unwrap(), path_formula_squared(&a));
        // path closed form reduces to a_1² a_2² Σ a_i²
        assert_eq!(path_formula_squared(&a), &(&a[1] * &a[1]) * &(&a[2] * &a[2]) * sum_of_squares(&a[..4]));
        assert_eq!(
            torsion_squared_exact(&star5(), &w).unwrap(),
            rational_pow(&a[0], 6) * sum_of_squares(&a)
        );
        assert_eq!(torsion_squared_exact(&k4_skeleton(), &w4).unwrap(), graph_torsion_oracle(&k4_skeleton(), &w4));
    }
}

#[test]
fn cone_points_with_zero_g_drop_out() {
    let mut r = rng(5);
    for _ in 0..20 {
        let mut f = nonvanishing(&mut r, 4).values().to_vec();
        let mut g = nonvanishing(&mut r, 4).values().to_vec();
        g[3] = Rational::from_integer(0.into());
        f[3] = rat(r.gen_range(1..=9), 1);
        let w = WeightPair::new(VertexWeights::new(f), VertexWeights::new(g));
        let a: Vec<Rational> = (0..3).map(|i| w.f.get(i) / w.g.get(i)).collect();
        let s3 = sum_of_squares(&a);
        assert_eq!(torsion_squared_exact(&coned_solid(), &w).unwrap(), s3.clone());
        assert_eq!(torsion_squared_exact(&coned_hollow(), &w).unwrap(), &s3 * &s3);
        assert_eq!(r_torsion(&coned_hollow(), &w).unwrap().torsion_squared, &s3 * &s3);
    }
}

#[test]
fn s_exponent_on_fixtures() {
    assert_eq!(s_exponent(&solid_triangle(), &VertexWeights::ones(3)), -1);
    assert_eq!(s_exponent(&hollow_triangle(), &VertexWeights::ones(3)), -2);
    assert_eq!(s_exponent(&path4(), &VertexWeights::ones(4)), -3);
    assert_eq!(s_exponent(&coned_solid(), &weights(&[1, 1, 1, 0])), -1);
    assert_eq!(s_exponent(&coned_solid(), &weights(&[0, 0, 0, 0])), 0);
}
