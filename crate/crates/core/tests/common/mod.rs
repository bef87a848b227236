#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use weighted_torsion::cli::{random_nonzero, random_weight};
use weighted_torsion::exact::{int, Rational, RationalMatrix};
use weighted_torsion::{SimplicialComplex, VertexWeights, WeightPair};

pub fn rng(seed: u64) -> ChaCha8Rng {
    weighted_torsion::cli::trial_rng(seed, 0)
}

pub fn complex(n: usize, gens: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::from_rank_generators(n, gens).unwrap()
}

pub fn solid_triangle() -> SimplicialComplex {
    complex(3, &[&[0, 1, 2]])
}

pub fn hollow_triangle() -> SimplicialComplex {
    complex(3, &[&[0, 1], &[1, 2], &[0, 2]])
}

/// Solid triangle with a cone point `v3` joined by edges.
pub fn coned_solid() -> SimplicialComplex {
    complex(4, &[&[0, 1, 2], &[0, 3], &[1, 3], &[2, 3]])
}

/// Hollow triangle with a cone point `v3` joined by edges.
pub fn coned_hollow() -> SimplicialComplex {
    complex(4, &[&[0, 1], &[1, 2], &[0, 2], &[0, 3], &[1, 3], &[2, 3]])
}

pub fn path4() -> SimplicialComplex {
    complex(4, &[&[0, 1], &[1, 2], &[2, 3]])
}

pub fn k4_skeleton() -> SimplicialComplex {
    complex(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 2], &[0, 3], &[1, 3]])
}

pub fn star5() -> SimplicialComplex {
    complex(5, &[&[0, 1], &[0, 2], &[0, 3], &[0, 4]])
}

/// Closure of a random family of subsets of `{0..n}`.
pub fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> SimplicialComplex {
    let density = rng.gen_range(0.1..0.6);
    let gens: Vec<Vec<usize>> = (1u32..(1 << n))
        .filter(|_| rng.gen_bool(density))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    let refs: Vec<&[usize]> = gens.iter().map(Vec::as_slice).collect();
    complex(n, &refs)
}

pub fn weights_with_zeros(rng: &mut ChaCha8Rng, n: usize) -> VertexWeights {
    VertexWeights::new((0..n).map(|_| random_weight(rng)).collect())
}

pub fn nonvanishing(rng: &mut ChaCha8Rng, n: usize) -> VertexWeights {
    VertexWeights::new((0..n).map(|_| random_nonzero(rng)).collect())
}

pub fn weights(v: &[i64]) -> VertexWeights {
    VertexWeights::new(v.iter().map(|&x| int(x)).collect())
}

/// `a_i = f(v_i)/g(v_i)`.
pub fn ratios(w: &WeightPair) -> Vec<Rational> {
    w.f.values().iter().zip(w.g.values()).map(|(f, g)| f / g).collect()
}

pub fn sum_of_squares(a: &[Rational]) -> Rational {
    a.iter().fold(Rational::zero(), |acc, x| acc + x * x)
}

/// The path closed form `|Σ_k a_k Π_{j<k} a_{j+1} Π_{k≤j≤2} a_j|² / Σ a_i²` over four vertices.
pub fn path_formula_squared(a: &[Rational]) -> Rational {
    let mut sum = Rational::zero();
    for k in 0..=3 {
        let mut term = a[k].clone();
        for j in 0..k {
            term *= &a[j + 1];
        }
        for j in k..=2 {
            term *= &a[j];
        }
        sum += term;
    }
    &sum * &sum / sum_of_squares(&a[..4])
}

/// Rank over ℚ of an integer matrix by fraction-free (Bareiss) elimination in `i128`.
pub fn integer_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                a[r][j] = (a[rank][c] * a[r][j] - a[r][c] * a[rank][j]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

/// Signed incidence matrix built straight from simplex vertex lists.
pub fn incidence(k: &SimplicialComplex, n: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return Vec::new();
    }
    let rows = k.simplices(n - 1);
    let mut m = vec![vec![0i64; k.count(n)]; rows.len()];
    for (j, s) in k.simplices(n).iter().enumerate() {
        for i in 0..=n {
            let face: Vec<usize> = s.vertices().iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &v)| v).collect();
            let r = rows.iter().position(|t| t.vertices() == face.as_slice()).unwrap();
            m[r][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Classical Betti numbers from [`integer_rank`].
pub fn betti_oracle(k: &SimplicialComplex) -> Vec<usize> {
    if k.is_empty() {
        return Vec::new();
    }
    let top = k.dimension() as usize;
    let ranks: Vec<usize> = (0..=top + 1).map(|n| integer_rank(&incidence(k, n))).collect();
    (0..=top).map(|n| k.count(n) - ranks[n] - ranks[n + 1]).collect()
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    if n < r {
        return Vec::new();
    }
    let mut out = subsets(n - 1, r);
    for mut s in subsets(n - 1, r - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `det'(AᵀA) = Σ det(A_IJ)²` over all `r×r` minors, `r = rank A` (Cauchy–Binet).
pub fn cauchy_binet_pdet(a: &RationalMatrix) -> Rational {
    let r = a.rank();
    if r == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for rows in subsets(a.rows(), r) {
        let sub = a.select_rows(&rows);
        for cols in subsets(a.cols(), r) {
            let d = sub.select_columns(&cols).determinant();
            total += &d * &d;
        }
    }
    total
}

/// `T²` of a graph with nonvanishing `g`: `det'` of `A = G_0^{1/2} B G_1^{−1/2}` in degree 1.
pub fn graph_torsion_oracle(k: &SimplicialComplex, w: &WeightPair) -> Rational {
    let b = weighted_torsion::chain::boundary_matrix(k, &w.f, 1);
    let mut a = b.clone();
    for (i, v) in k.simplices(0).iter().enumerate() {
        for (j, e) in k.simplices(1).iter().enumerate() {
            a[(i, j)] = &b[(i, j)] * w.g.simplex_weight(v) / w.g.simplex_weight(e);
        }
    }
    cauchy_binet_pdet(&a)
}

/// `det(xI − A)` at `x = 0..=n`, Lagrange-interpolated back to coefficients (lowest first).
pub fn charpoly_by_interpolation(a: &RationalMatrix) -> Vec<Rational> {
    let n = a.rows();
    let xs: Vec<Rational> = (0..=n as i64).map(int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| (&RationalMatrix::identity(n).scale(x) - a).determinant())
        .collect();
    let mut coeffs = vec![Rational::zero(); n + 1];
    for i in 0..=n {
        // basis polynomial Π_{j≠i} (x − x_j)/(x_i − x_j)
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for j in 0..=n {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        for (d, c) in basis.iter().enumerate() {
            coeffs[d] += c * &ys[i] / &denom;
        }
    }
    coeffs
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}
