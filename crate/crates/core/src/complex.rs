//! Finite abstract simplicial complexes over a totally ordered vertex set.
//!
//! Vertices are identified by their rank in the declared order. A [`Simplex`]
//! stores strictly increasing ranks, and each dimension's simplices are kept
//! sorted lexicographically, which fixes the chain bases used everywhere else.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::chain::VertexWeights;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("face index {index} out of range for a {dimension}-simplex")]
    IndexOutOfRange { index: usize, dimension: usize },
    #[error("empty simplex")]
    EmptySimplex,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub rank: usize,
}

/// A simplex as a strictly increasing list of vertex ranks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the ranks; rejects empty input and repeated ranks.
    pub fn new(mut ranks: Vec<usize>) -> Result<Self, ComplexError> {
        if ranks.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        ranks.sort_unstable();
        if let Some(w) = ranks.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertex(format!("#{}", w[0])));
        }
        Ok(Self(ranks))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, rank: usize) -> bool {
        self.0.binary_search(&rank).is_ok()
    }

    /// The `i`-th codimension-one face: this simplex with its `i`-th smallest vertex removed.
    pub fn face(&self, i: usize) -> Result<Simplex, ComplexError> {
        let dimension = self.dimension();
        if dimension == 0 || i > dimension {
            return Err(ComplexError::IndexOutOfRange { index: i, dimension });
        }
        let mut v = self.0.clone();
        v.remove(i);
        Ok(Simplex(v))
    }

    /// True if the ranks are strictly increasing.
    pub fn is_canonical(&self) -> bool {
        !self.0.is_empty() && self.0.windows(2).all(|w| w[0] < w[1])
    }

    fn nonempty_subsets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let k = self.0.len();
        (1u64..(1u64 << k)).map(move |mask| {
            Simplex((0..k).filter(|&i| mask & (1 << i) != 0).map(|i| self.0[i]).collect())
        })
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| format!("v{r}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A face-closed family of simplices on an ordered vertex universe.
///
/// The vertex list is the ordering universe; a vertex need not be a 0-simplex
/// (restrictions drop vertices from the complex but keep the universe).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<Vertex>,
    simplices: Vec<Vec<Simplex>>,
    positions: HashMap<Simplex, usize>,
}

impl SimplicialComplex {
    /// Closure of `generators`, named by vertex id, over the ordered `vertices`.
    pub fn build<S: AsRef<str>>(vertices: &[S], generators: &[Vec<S>]) -> Result<Self, ComplexError> {
        let universe = vertex_universe(vertices)?;
        let lookup: HashMap<&str, usize> = universe.iter().map(|v| (v.id.as_str(), v.rank)).collect();
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            let mut ranks = Vec::with_capacity(g.len());
            for name in g {
                let name = name.as_ref();
                let &r = lookup.get(name).ok_or_else(|| ComplexError::UnknownVertex(name.to_string()))?;
                if ranks.contains(&r) {
                    return Err(ComplexError::DuplicateVertex(name.to_string()));
                }
                ranks.push(r);
            }
            gens.push(Simplex::new(ranks)?);
        }
        Self::from_generators(universe, &gens)
    }

    /// Closure of rank-based generators over an existing universe.
    pub fn from_generators(vertices: Vec<Vertex>, generators: &[Simplex]) -> Result<Self, ComplexError> {
        let mut all = BTreeSet::new();
        for g in generators {
            if let Some(&r) = g.vertices().iter().find(|&&r| r >= vertices.len()) {
                return Err(ComplexError::UnknownVertex(format!("#{r}")));
            }
            all.extend(g.nonempty_subsets());
        }
        Ok(Self::from_closed_set(vertices, all))
    }

    /// Vertex universe named `v0, v1, …` with the given generators (as ranks).
    pub fn from_rank_generators(n_vertices: usize, generators: &[&[usize]]) -> Result<Self, ComplexError> {
        let universe = (0..n_vertices).map(|r| Vertex { id: format!("v{r}"), rank: r }).collect();
        let gens: Result<Vec<_>, _> = generators.iter().map(|g| Simplex::new(g.to_vec())).collect();
        Self::from_generators(universe, &gens?)
    }

    fn from_closed_set(vertices: Vec<Vertex>, set: BTreeSet<Simplex>) -> Self {
        let mut simplices: Vec<Vec<Simplex>> = Vec::new();
        for s in set {
            let d = s.dimension();
            if simplices.len() <= d {
                simplices.resize_with(d + 1, Vec::new);
            }
            simplices[d].push(s);
        }
        for level in &mut simplices {
            level.sort();
        }
        let positions = simplices
            .iter()
            .flat_map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)))
            .collect();
        Self { vertices, simplices, positions }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_rank(&self, id: &str) -> Result<usize, ComplexError> {
        self.vertices
            .iter()
            .find(|v| v.id == id)
            .map(|v| v.rank)
            .ok_or_else(|| ComplexError::UnknownVertex(id.to_string()))
    }

    /// Maximum simplex dimension, or −1 for the empty complex.
    pub fn dimension(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    /// The `n`-simplices in canonical chain-basis order (empty past the top dimension).
    pub fn simplices(&self, n: usize) -> &[Simplex] {
        self.simplices.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, n: usize) -> usize {
        self.simplices(n).len()
    }

    pub fn len(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.positions.contains_key(s)
    }

    /// Position of `s` within its dimension's basis.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.positions.get(s).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    /// Simplices that are not a proper face of another simplex, in canonical order.
    pub fn maximal_faces(&self) -> Vec<Simplex> {
        let mut covered = BTreeSet::new();
        for s in self.iter().filter(|s| s.dimension() > 0) {
            for i in 0..=s.dimension() {
                covered.insert(s.face(i).expect("in range"));
            }
        }
        let mut out: Vec<Simplex> = self.iter().filter(|s| !covered.contains(*s)).cloned().collect();
        out.sort();
        out
    }

    /// Open star of the named vertex: every simplex containing it.
    pub fn star(&self, id: &str) -> Result<Vec<Simplex>, ComplexError> {
        let r = self.vertex_rank(id)?;
        Ok(self.star_of(r))
    }

    pub fn star_of(&self, rank: usize) -> Vec<Simplex> {
        self.iter().filter(|s| s.contains(rank)).cloned().collect()
    }

    /// `{σ ∈ K | w(σ) ≠ 0}`: the largest subcomplex whose vertices all carry nonzero weight.
    pub fn restrict_nonvanishing(&self, w: &VertexWeights) -> SimplicialComplex {
        let keep = self.iter().filter(|s| s.vertices().iter().all(|&v| !w.is_zero_at(v))).cloned().collect();
        Self::from_closed_set(self.vertices.clone(), keep)
    }

    /// Complement of the union of open stars of the zero-weight vertices.
    pub fn remove_stars(&self, zero_vertices: &[usize]) -> SimplicialComplex {
        let removed: BTreeSet<Simplex> =
            zero_vertices.iter().flat_map(|&v| self.star_of(v)).collect();
        let keep = self.iter().filter(|s| !removed.contains(*s)).cloned().collect();
        Self::from_closed_set(self.vertices.clone(), keep)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(n, level)| if n % 2 == 0 { level.len() as i64 } else { -(level.len() as i64) })
            .sum()
    }

    /// Audit of the structural invariants: canonical simplices, sorted levels, face-closure.
    pub fn validate(&self) -> Result<(), String> {
        for (n, level) in self.simplices.iter().enumerate() {
            if level.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("level {n} is not strictly sorted"));
            }
            for s in level {
                if !s.is_canonical() || s.dimension() != n {
                    return Err(format!("simplex {s} is malformed at level {n}"));
                }
                if s.vertices().iter().any(|&r| r >= self.vertices.len()) {
                    return Err(format!("simplex {s} names a vertex outside the universe"));
                }
                if n > 0 {
                    for i in 0..=n {
                        let face = s.face(i).expect("in range");
                        if !self.contains(&face) {
                            return Err(format!("face {face} of {s} is missing"));
                        }
                    }
                }
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.rank != i {
                return Err(format!("vertex `{}` has rank {} at position {i}", v.id, v.rank));
            }
        }
        Ok(())
    }

    /// Human-readable name of a simplex, e.g. `a b c`.
    pub fn simplex_name(&self, s: &Simplex) -> String {
        s.vertices().iter().map(|&r| self.vertices[r].id.as_str()).collect::<Vec<_>>().join(" ")
    }
}

fn vertex_universe<S: AsRef<str>>(names: &[S]) -> Result<Vec<Vertex>, ComplexError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(names.len());
    for (rank, name) in names.iter().enumerate() {
        let id = name.as_ref().to_string();
        if !seen.insert(id.clone()) {
            return Err(ComplexError::DuplicateVertex(id));
        }
        out.push(Vertex { id, rank });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn solid_triangle() -> SimplicialComplex {
        SimplicialComplex::build(&["v0", "v1", "v2"], &[vec!["v0", "v1", "v2"]]).unwrap()
    }

    fn example_k() -> SimplicialComplex {
        SimplicialComplex::build(
            &["v0", "v1", "v2", "v3"],
            &[vec!["v0", "v1", "v2"], vec!["v0", "v3"], vec!["v1", "v3"], vec!["v2", "v3"]],
        )
        .unwrap()
    }

    #[test]
    fn closure_counts() {
        let t = solid_triangle();
        assert_eq!((t.count(0), t.count(1), t.count(2)), (3, 3, 1));
        assert_eq!(t.len(), 7);

        let single = SimplicialComplex::build(&["v0"], &[vec!["v0"]]).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.dimension(), 0);

        let k = example_k();
        assert_eq!((k.count(0), k.count(1), k.count(2)), (4, 6, 1));
        assert_eq!(k.len(), 11);
        k.validate().unwrap();
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            SimplicialComplex::build(&["a"], &[vec!["a", "b"]]),
            Err(ComplexError::UnknownVertex("b".into()))
        );
        assert_eq!(
            SimplicialComplex::build(&["a", "a"], &[vec!["a"]]),
            Err(ComplexError::DuplicateVertex("a".into()))
        );
        assert_eq!(
            SimplicialComplex::build(&["a", "b"], &[vec!["a", "a"]]),
            Err(ComplexError::DuplicateVertex("a".into()))
        );
    }

    #[test]
    fn faces() {
        assert_eq!(s(&[0, 1, 2]).face(1), Ok(s(&[0, 2])));
        assert_eq!(s(&[0, 1]).face(0), Ok(s(&[1])));
        assert_eq!(s(&[0]).face(0), Err(ComplexError::IndexOutOfRange { index: 0, dimension: 0 }));
        assert!(s(&[0, 1]).face(2).is_err());
    }

    #[test]
    fn stars() {
        let t = solid_triangle();
        assert_eq!(t.star("v0").unwrap(), vec![s(&[0]), s(&[0, 1]), s(&[0, 2]), s(&[0, 1, 2])]);
        let single = SimplicialComplex::build(&["v0"], &[vec!["v0"]]).unwrap();
        assert_eq!(single.star("v0").unwrap(), vec![s(&[0])]);
        let k = example_k();
        assert_eq!(k.star("v3").unwrap(), vec![s(&[3]), s(&[0, 3]), s(&[1, 3]), s(&[2, 3])]);
        assert!(k.star("v9").is_err());
    }

    #[test]
    fn restriction() {
        let k = example_k();
        let g = VertexWeights::new(vec![int(1), int(2), int(-1), int(0)]);
        let kx = k.restrict_nonvanishing(&g);
        assert_eq!(kx.iter().cloned().collect::<Vec<_>>(), solid_triangle().iter().cloned().collect::<Vec<_>>());
        assert_eq!(kx, k.remove_stars(&[3]));
        kx.validate().unwrap();

        let ones = VertexWeights::constant(4, int(1));
        assert_eq!(k.restrict_nonvanishing(&ones), k);
        let zeros = VertexWeights::constant(4, int(0));
        assert!(k.restrict_nonvanishing(&zeros).is_empty());
    }

    #[test]
    fn euler() {
        assert_eq!(solid_triangle().euler_characteristic(), 1);
        let hollow = SimplicialComplex::from_rank_generators(3, &[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        assert_eq!(hollow.euler_characteristic(), 0);
        let empty = SimplicialComplex::from_rank_generators(0, &[]).unwrap();
        assert_eq!(empty.euler_characteristic(), 0);
        assert_eq!(empty.dimension(), -1);
    }

    #[test]
    fn maximal_faces_rebuild() {
        let k = example_k();
        let max = k.maximal_faces();
        assert_eq!(max, vec![s(&[0, 1, 2]), s(&[0, 3]), s(&[1, 3]), s(&[2, 3])]);
        let rebuilt = SimplicialComplex::from_generators(k.vertices().to_vec(), &max).unwrap();
        assert_eq!(rebuilt, k);
    }
}
