//! Abstract simplicial complexes in facet form, order complexes, and replay
//! of elementary collapses.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{InteriorSet, Lattice};

/// Why a collapse pair was rejected during replay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotFreeReason {
    NotAFace,
    MultipleCofaces,
    WrongCoface,
}

impl fmt::Display for NotFreeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotFreeReason::NotAFace => "not-a-face",
            NotFreeReason::MultipleCofaces => "multiple-cofaces",
            NotFreeReason::WrongCoface => "wrong-coface",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("order complex of an empty interior requested")]
    EmptyInterior,
    #[error("complex has no vertices")]
    EmptyComplex,
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("link of {0} is empty")]
    EmptyLink(String),
    #[error("cannot delete {0}, the last vertex")]
    LastVertex(String),
    #[error("pair {index} is not free: {reason}")]
    NotFreePair { index: usize, reason: NotFreeReason },
    #[error("replay ended at {remaining:?}, expected the single vertex {expected}")]
    ReplayMismatch {
        expected: String,
        remaining: Vec<Vec<String>>,
    },
}

pub type Result<T, E = ComplexError> = std::result::Result<T, E>;

/// Sorted vertex indices of a face.
pub type Face = Vec<usize>;

/// A simplicial complex on a labelled vertex list, stored by its facets.
///
/// Vertex order is inherited from whatever produced the complex (for order
/// complexes, the lattice's canonical order) and equality is label-exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    vertices: Vec<String>,
    facets: Vec<Face>,
}

/// Keeps only the inclusion-maximal faces, sorted.
fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    for f in &mut faces {
        f.sort_unstable();
        f.dedup();
    }
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::new();
    for f in faces {
        if !kept.iter().any(|k| is_subset(&f, k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

/// Both slices sorted.
fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|s| it.any(|b| b == s))
}

impl Complex {
    /// Builds a complex from labelled faces. Vertices that appear in no face
    /// become isolated points.
    pub fn new(vertices: Vec<String>, faces: &[Vec<String>]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(ComplexError::DuplicateVertex(v.clone()));
            }
        }
        let faces = faces
            .iter()
            .map(|f| {
                f.iter()
                    .map(|v| {
                        index
                            .get(v.as_str())
                            .copied()
                            .ok_or_else(|| ComplexError::UnknownVertex(v.clone()))
                    })
                    .collect::<Result<Face>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_index_faces(vertices, faces))
    }

    fn from_index_faces(vertices: Vec<String>, mut faces: Vec<Face>) -> Self {
        faces.retain(|f| !f.is_empty());
        faces.extend((0..vertices.len()).map(|v| vec![v]));
        Complex {
            vertices,
            facets: maximal_faces(faces),
        }
    }

    /// Restricts `faces` (indices into `self.vertices`) to the vertex subset
    /// `keep`, reindexing.
    fn reindexed(&self, keep: &[usize], faces: Vec<Face>) -> Self {
        let mut map = vec![usize::MAX; self.vertices.len()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let vertices = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let faces = faces
            .into_iter()
            .map(|f| f.into_iter().map(|v| map[v]).collect())
            .collect();
        Self::from_index_faces(vertices, faces)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn index_of(&self, v: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|w| w == v)
            .ok_or_else(|| ComplexError::UnknownVertex(v.to_string()))
    }

    pub fn labels_of(&self, face: &[usize]) -> Vec<String> {
        face.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Facets as label lists.
    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| self.labels_of(f)).collect()
    }

    /// `face` must be sorted.
    pub fn contains_face(&self, face: &[usize]) -> bool {
        !face.is_empty() && self.facets.iter().any(|f| is_subset(face, f))
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn dimension(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    /// Every nonempty face, ordered by size and then lexicographically.
    pub fn faces(&self) -> Vec<Face> {
        let mut all: HashSet<Face> = HashSet::new();
        for f in &self.facets {
            let d = f.len();
            for mask in 1u64..(1u64 << d) {
                all.insert(
                    (0..d)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| f[i])
                        .collect(),
                );
            }
        }
        let mut out: Vec<Face> = all.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// `f[k]` is the number of faces with `k + 1` vertices.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.dimension() + 1];
        for face in self.faces() {
            f[face.len() - 1] += 1;
        }
        f
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// χ̃ = Σ_k (−1)^k f_k − 1.
    pub fn reduced_euler(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum::<i64>()
            - 1
    }

    /// lk(v): faces σ with v ∉ σ and σ ∪ {v} a face, on the vertices adjacent to v.
    pub fn link(&self, v: &str) -> Result<Complex> {
        let vi = self.index_of(v)?;
        let faces: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| f.contains(&vi) && f.len() > 1)
            .map(|f| f.iter().copied().filter(|&w| w != vi).collect())
            .collect();
        if faces.is_empty() {
            return Err(ComplexError::EmptyLink(v.to_string()));
        }
        let mut keep: Vec<usize> = faces.iter().flatten().copied().collect();
        keep.sort_unstable();
        keep.dedup();
        Ok(self.reindexed(&keep, faces))
    }

    /// dl(v): faces not containing v, on the remaining vertices.
    pub fn deletion(&self, v: &str) -> Result<Complex> {
        let vi = self.index_of(v)?;
        if self.vertices.len() == 1 {
            return Err(ComplexError::LastVertex(v.to_string()));
        }
        let faces: Vec<Face> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|&w| w != vi).collect())
            .collect();
        let keep: Vec<usize> = (0..self.vertices.len()).filter(|&w| w != vi).collect();
        Ok(self.reindexed(&keep, faces))
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            vertices: self.vertices.clone(),
            facets: self.facet_labels(),
        }
    }
}

/// JSON form: `{"vertices": [...], "facets": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl TryFrom<ComplexDocument> for Complex {
    type Error = ComplexError;

    fn try_from(doc: ComplexDocument) -> Result<Self> {
        Complex::new(doc.vertices, &doc.facets)
    }
}

/// Order complex of an interior subset: its faces are the chains.
pub fn order_complex(interior: &InteriorSet<'_>) -> Result<Complex> {
    if interior.is_empty() {
        return Err(ComplexError::EmptyInterior);
    }
    let lattice = interior.lattice();
    let members = interior.members();
    let k = members.len();
    let lt = |a: usize, b: usize| lattice.poset().lt(members[a], members[b]);
    // Covers of the induced order.
    let upper_covers: Vec<Vec<usize>> = (0..k)
        .map(|a| {
            (0..k)
                .filter(|&b| lt(a, b) && !(0..k).any(|c| lt(a, c) && lt(c, b)))
                .collect()
        })
        .collect();
    let minimal: Vec<usize> = (0..k).filter(|&b| !(0..k).any(|a| lt(a, b))).collect();

    // Maximal chains run from a minimal to a maximal element through covers.
    let mut facets = Vec::new();
    let mut stack: Vec<Face> = minimal.into_iter().map(|m| vec![m]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("chains are nonempty");
        if upper_covers[last].is_empty() {
            facets.push(chain);
            continue;
        }
        for &next in &upper_covers[last] {
            let mut longer = chain.clone();
            longer.push(next);
            stack.push(longer);
        }
    }
    let vertices = members
        .iter()
        .map(|&m| lattice.label(m).to_string())
        .collect();
    Ok(Complex::from_index_faces(vertices, facets))
}

/// Δ(L̄) for the whole proper part.
pub fn proper_part_complex(lattice: &Lattice) -> Result<Complex> {
    let interior = lattice.interior();
    let set = InteriorSet::new(lattice, &interior).expect("interior excludes the bounds");
    order_complex(&set)
}

/// χ̃(Δ(L̄)), where an empty proper part gives the complex {∅} with χ̃ = −1.
pub fn proper_part_reduced_euler(lattice: &Lattice) -> i64 {
    match proper_part_complex(lattice) {
        Ok(c) => c.reduced_euler(),
        Err(_) => -1,
    }
}

/// One elementary collapse: remove `free_face` and its unique coface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    from = "(Vec<String>, Vec<String>)",
    into = "(Vec<String>, Vec<String>)"
)]
pub struct CollapsePair {
    pub free_face: Vec<String>,
    pub coface: Vec<String>,
}

impl From<(Vec<String>, Vec<String>)> for CollapsePair {
    fn from((free_face, coface): (Vec<String>, Vec<String>)) -> Self {
        CollapsePair { free_face, coface }
    }
}

impl From<CollapsePair> for (Vec<String>, Vec<String>) {
    fn from(p: CollapsePair) -> Self {
        (p.free_face, p.coface)
    }
}

/// JSON form: `{"pairs": [[[free...], [coface...]], ...], "final": v}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseSequence {
    pub pairs: Vec<CollapsePair>,
    #[serde(rename = "final")]
    pub final_vertex: String,
}

impl CollapseSequence {
    /// Sorts every face of every pair into the canonical vertex order of `complex`.
    pub fn canonicalize(&mut self, complex: &Complex) {
        let rank = |v: &String| complex.index_of(v).unwrap_or(usize::MAX);
        for p in &mut self.pairs {
            p.free_face.sort_by_key(rank);
            p.coface.sort_by_key(rank);
        }
    }
}

/// Applies `seq` to `complex`, checking every pair is free when removed, and
/// that exactly the final vertex survives.
pub fn replay_collapses(complex: &Complex, seq: &CollapseSequence) -> Result<Complex> {
    let mut alive: HashSet<Face> = complex.faces().into_iter().collect();
    let n = complex.vertex_count();
    let to_face = |labels: &[String]| -> Option<Face> {
        let mut f = labels
            .iter()
            .map(|l| complex.index_of(l).ok())
            .collect::<Option<Face>>()?;
        f.sort_unstable();
        Some(f)
    };
    for (index, pair) in seq.pairs.iter().enumerate() {
        let fail = |reason| ComplexError::NotFreePair { index, reason };
        let free = to_face(&pair.free_face).ok_or(fail(NotFreeReason::NotAFace))?;
        let coface = to_face(&pair.coface).ok_or(fail(NotFreeReason::NotAFace))?;
        if free.is_empty() || !alive.contains(&free) {
            return Err(fail(NotFreeReason::NotAFace));
        }
        if coface.len() != free.len() + 1 || !is_subset(&free, &coface) {
            return Err(fail(NotFreeReason::WrongCoface));
        }
        if !alive.contains(&coface) {
            return Err(fail(NotFreeReason::NotAFace));
        }
        // In a complex, `free` lies in exactly one larger face iff it has a
        // single one-step extension and that extension is maximal.
        let extensions = |f: &Face| {
            (0..n)
                .filter(|w| !f.contains(w))
                .filter(|&w| {
                    let mut g = f.clone();
                    g.push(w);
                    g.sort_unstable();
                    alive.contains(&g)
                })
                .count()
        };
        if extensions(&free) != 1 || extensions(&coface) != 0 {
            return Err(fail(NotFreeReason::MultipleCofaces));
        }
        alive.remove(&free);
        alive.remove(&coface);
    }
    let expected = complex.index_of(&seq.final_vertex).ok();
    if alive.len() != 1 || expected.map(|v| vec![v]) != alive.iter().next().cloned() {
        let mut remaining: Vec<Face> = alive.into_iter().collect();
        remaining.sort();
        return Err(ComplexError::ReplayMismatch {
            expected: seq.final_vertex.clone(),
            remaining: remaining.iter().map(|f| complex.labels_of(f)).collect(),
        });
    }
    Complex::new(vec![seq.final_vertex.clone()], &[])
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::lattice::{generate, Family, GenerateParams};

    pub(crate) fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn complex(vertices: &[&str], faces: &[&[&str]]) -> Complex {
        let faces: Vec<Vec<String>> = faces.iter().map(|f| strings(f)).collect();
        Complex::new(strings(vertices), &faces).unwrap()
    }

    /// The path 4–2–6–3 in D12 vertex order.
    pub(crate) fn path() -> Complex {
        complex(
            &["2", "3", "4", "6"],
            &[&["2", "4"], &["2", "6"], &["3", "6"]],
        )
    }

    pub(crate) fn hollow_triangle() -> Complex {
        complex(&["a", "b", "c"], &[&["a", "b"], &["a", "c"], &["b", "c"]])
    }

    fn seq(pairs: &[(&[&str], &[&str])], last: &str) -> CollapseSequence {
        CollapseSequence {
            pairs: pairs
                .iter()
                .map(|(f, c)| CollapsePair {
                    free_face: strings(f),
                    coface: strings(c),
                })
                .collect(),
            final_vertex: last.to_string(),
        }
    }

    fn gen(family: Family, n: u64) -> Lattice {
        generate(family, &GenerateParams::new(n)).unwrap()
    }

    #[test]
    fn order_complex_examples() {
        let chain = gen(Family::Chain, 4);
        let c = proper_part_complex(&chain).unwrap();
        assert_eq!(c.facet_labels(), vec![strings(&["a", "b"])]);

        let d12 = gen(Family::Divisor, 12);
        assert_eq!(proper_part_complex(&d12).unwrap(), path());

        let m3 = gen(Family::Diamond, 3);
        let c = proper_part_complex(&m3).unwrap();
        assert_eq!(c.facets().len(), 3);
        assert_eq!(c.dimension(), 0);

        let two = gen(Family::Chain, 2);
        assert_eq!(proper_part_complex(&two), Err(ComplexError::EmptyInterior));
    }

    #[test]
    fn link_examples() {
        let p = path();
        assert_eq!(p.link("2").unwrap(), complex(&["4", "6"], &[]));
        assert_eq!(p.link("3").unwrap(), complex(&["6"], &[]));
        let edge = complex(&["a", "b"], &[&["a", "b"]]);
        assert_eq!(edge.link("b").unwrap(), complex(&["a"], &[]));
        assert_eq!(p.link("9"), Err(ComplexError::UnknownVertex("9".into())));
        let points = complex(&["a", "b"], &[]);
        assert_eq!(points.link("a"), Err(ComplexError::EmptyLink("a".into())));
    }

    #[test]
    fn deletion_examples() {
        let p = path();
        assert_eq!(
            p.deletion("3").unwrap(),
            complex(&["2", "4", "6"], &[&["2", "4"], &["2", "6"]])
        );
        let edge = complex(&["a", "b"], &[&["a", "b"]]);
        assert_eq!(edge.deletion("b").unwrap(), complex(&["a"], &[]));
        let points = complex(&["a", "b", "c"], &[]);
        assert_eq!(points.deletion("c").unwrap(), complex(&["a", "b"], &[]));
        let point = complex(&["a"], &[]);
        assert_eq!(
            point.deletion("a"),
            Err(ComplexError::LastVertex("a".into()))
        );
    }

    #[test]
    fn reduced_euler_examples() {
        assert_eq!(complex(&["a"], &[]).reduced_euler(), 0);
        assert_eq!(path().reduced_euler(), 0);
        assert_eq!(hollow_triangle().reduced_euler(), -1);
        assert_eq!(
            complex(&["a", "b", "c"], &[&["a", "b", "c"]]).reduced_euler(),
            0
        );
    }

    #[test]
    fn replay_examples() {
        let edge = complex(&["a", "b"], &[&["a", "b"]]);
        let out = replay_collapses(&edge, &seq(&[(&["b"], &["a", "b"])], "a")).unwrap();
        assert_eq!(out, complex(&["a"], &[]));

        let s = seq(
            &[
                (&["3"], &["3", "6"]),
                (&["4"], &["2", "4"]),
                (&["6"], &["2", "6"]),
            ],
            "2",
        );
        assert_eq!(replay_collapses(&path(), &s).unwrap(), complex(&["2"], &[]));

        let t = hollow_triangle();
        let err = replay_collapses(&t, &seq(&[(&["a"], &["a", "b"])], "b")).unwrap_err();
        assert_eq!(
            err,
            ComplexError::NotFreePair {
                index: 0,
                reason: NotFreeReason::MultipleCofaces
            }
        );
        let err = replay_collapses(&t, &seq(&[(&["a", "b"], &["a", "b", "c"])], "c")).unwrap_err();
        assert!(matches!(
            err,
            ComplexError::NotFreePair {
                reason: NotFreeReason::NotAFace,
                ..
            }
        ));
        let err = replay_collapses(&t, &seq(&[(&["a"], &["b", "c"])], "c")).unwrap_err();
        assert!(matches!(
            err,
            ComplexError::NotFreePair {
                reason: NotFreeReason::WrongCoface,
                ..
            }
        ));
    }

    #[test]
    fn replay_detects_wrong_final_vertex_and_leftovers() {
        let edge = complex(&["a", "b"], &[&["a", "b"]]);
        let err = replay_collapses(&edge, &seq(&[(&["b"], &["a", "b"])], "b")).unwrap_err();
        assert!(matches!(err, ComplexError::ReplayMismatch { .. }));
        let err = replay_collapses(&path(), &seq(&[(&["3"], &["3", "6"])], "2")).unwrap_err();
        assert!(matches!(err, ComplexError::ReplayMismatch { .. }));
    }

    #[test]
    fn link_and_deletion_partition_the_faces() {
        let c = proper_part_complex(&gen(Family::Boolean, 3)).unwrap();
        for v in c.vertices() {
            let vi = c.index_of(v).unwrap();
            let with_v: Vec<Vec<String>> = c
                .faces()
                .into_iter()
                .filter(|f| f.contains(&vi) && f.len() > 1)
                .map(|f| {
                    f.into_iter()
                        .filter(|&w| w != vi)
                        .map(|w| c.vertices()[w].clone())
                        .collect()
                })
                .collect();
            let link = c.link(v).unwrap();
            let lk_faces: Vec<Vec<String>> =
                link.faces().iter().map(|f| link.labels_of(f)).collect();
            let mut a = with_v.clone();
            let mut b = lk_faces;
            a.sort();
            b.sort();
            assert_eq!(a, b);
            let del = c.deletion(v).unwrap();
            // faces of C = faces of dl + faces containing v (the link shifted, plus {v})
            assert_eq!(c.face_count(), del.face_count() + with_v.len() + 1);
        }
    }

    #[test]
    fn json_round_trip() {
        let s = seq(&[(&["b"], &["a", "b"])], "a");
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"pairs":[[["b"],["a","b"]]],"final":"a"}"#);
        assert_eq!(serde_json::from_str::<CollapseSequence>(&text).unwrap(), s);
        let doc = path().to_document();
        assert_eq!(
            serde_json::to_string(&doc).unwrap(),
            r#"{"vertices":["2","3","4","6"],"facets":[["2","4"],["2","6"],["3","6"]]}"#
        );
        assert_eq!(Complex::try_from(doc).unwrap(), path());
    }
}
