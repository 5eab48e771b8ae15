//! Brute-force ground truth, independent of the lattice case analysis.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::certifier::{Certificate, SplitMode};
use crate::complex::{CollapsePair, CollapseSequence, Complex, Face};
use crate::lattice::Lattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} is {actual}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },
}

pub type Result<T, E = OracleError> = std::result::Result<T, E>;

/// Canonical, order-independent key of a labelled complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MemoKey {
    vertices: Vec<String>,
    facets: Vec<Vec<String>>,
}

impl MemoKey {
    pub fn of(complex: &Complex) -> Self {
        let mut vertices = complex.vertices().to_vec();
        vertices.sort();
        let mut facets: Vec<Vec<String>> = complex
            .facet_labels()
            .into_iter()
            .map(|mut f| {
                f.sort();
                f
            })
            .collect();
        facets.sort();
        MemoKey { vertices, facets }
    }
}

/// Nonevasiveness straight from the recursive definition: a single vertex,
/// or some vertex whose deletion and (nonempty) link are both nonevasive.
pub fn brute_nonevasive(complex: &Complex, cap: usize) -> Result<bool> {
    if complex.vertex_count() > cap {
        return Err(OracleError::CapExceeded {
            what: "vertex count",
            actual: complex.vertex_count(),
            cap,
        });
    }
    let mut memo = HashMap::new();
    Ok(nonevasive(complex, &mut memo))
}

fn nonevasive(complex: &Complex, memo: &mut HashMap<MemoKey, bool>) -> bool {
    if complex.is_point() {
        return true;
    }
    let key = MemoKey::of(complex);
    if let Some(&known) = memo.get(&key) {
        return known;
    }
    let result = complex.vertices().iter().any(|v| {
        // An isolated vertex has an empty link, which is never nonevasive.
        let Ok(link) = complex.link(v) else {
            return false;
        };
        let deletion = complex
            .deletion(v)
            .expect("complex has at least two vertices");
        nonevasive(&link, memo) && nonevasive(&deletion, memo)
    });
    memo.insert(key, result);
    result
}

/// Like [`brute_nonevasive`], but returns a certificate built from the first
/// successful vertex at every level.
pub fn brute_nonevasive_witness(complex: &Complex, cap: usize) -> Result<Option<Certificate>> {
    if complex.vertex_count() > cap {
        return Err(OracleError::CapExceeded {
            what: "vertex count",
            actual: complex.vertex_count(),
            cap,
        });
    }
    let mut memo = HashMap::new();
    Ok(witness(complex, &mut memo))
}

fn witness(
    complex: &Complex,
    memo: &mut HashMap<MemoKey, Option<Certificate>>,
) -> Option<Certificate> {
    if complex.is_point() {
        return Some(Certificate::leaf(&complex.vertices()[0]));
    }
    let key = MemoKey::of(complex);
    if let Some(known) = memo.get(&key) {
        return known.clone();
    }
    let result = complex.vertices().iter().find_map(|v| {
        let link = complex.link(v).ok()?;
        let lk = witness(&link, memo)?;
        let dl = witness(&complex.deletion(v).ok()?, memo)?;
        Some(Certificate::Split {
            vertex: v.clone(),
            mode: SplitMode::Case2Atom,
            z: link.vertices()[0].clone(),
            dl: Box::new(dl),
            lk: Box::new(lk),
        })
    });
    memo.insert(key, result.clone());
    result
}

/// Upper bound on search states visited by [`brute_collapsible`].
const COLLAPSE_STATE_BUDGET: usize = 1 << 20;

/// Backtracking search for a sequence of elementary collapses down to a
/// single vertex. `Ok(None)` means no such sequence exists.
pub fn brute_collapsible(complex: &Complex, cap: usize) -> Result<Option<CollapseSequence>> {
    let faces = complex.faces();
    if faces.len() > cap {
        return Err(OracleError::CapExceeded {
            what: "face count",
            actual: faces.len(),
            cap,
        });
    }
    let position: HashMap<&Face, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let n = complex.vertex_count();
    let cofaces: Vec<Vec<usize>> = faces
        .iter()
        .map(|f| {
            (0..n)
                .filter(|w| !f.contains(w))
                .filter_map(|w| {
                    let mut g = f.clone();
                    g.push(w);
                    g.sort_unstable();
                    position.get(&g).copied()
                })
                .collect()
        })
        .collect();

    let mut search = CollapseSearch {
        cofaces: &cofaces,
        failed: HashSet::new(),
        visited: 0,
        path: Vec::new(),
    };
    let mut alive = FixedBitSet::with_capacity(faces.len());
    alive.insert_range(..);
    if !search.run(&mut alive, faces.len())? {
        return Ok(None);
    }
    let last = alive.ones().next().expect("one face survives");
    let pairs = search
        .path
        .iter()
        .map(|&(s, t)| CollapsePair {
            free_face: complex.labels_of(&faces[s]),
            coface: complex.labels_of(&faces[t]),
        })
        .collect();
    Ok(Some(CollapseSequence {
        pairs,
        final_vertex: complex.vertices()[faces[last][0]].clone(),
    }))
}

struct CollapseSearch<'a> {
    cofaces: &'a [Vec<usize>],
    failed: HashSet<FixedBitSet>,
    visited: usize,
    path: Vec<(usize, usize)>,
}

impl CollapseSearch<'_> {
    fn run(&mut self, alive: &mut FixedBitSet, remaining: usize) -> Result<bool> {
        if remaining == 1 {
            return Ok(true);
        }
        if self.failed.contains(alive) {
            return Ok(false);
        }
        self.visited += 1;
        if self.visited > COLLAPSE_STATE_BUDGET {
            return Err(OracleError::CapExceeded {
                what: "collapse search states",
                actual: self.visited,
                cap: COLLAPSE_STATE_BUDGET,
            });
        }
        let cofaces = self.cofaces;
        let live_cofaces = |alive: &FixedBitSet, f: usize| {
            cofaces[f].iter().filter(|&&g| alive.contains(g)).count()
        };
        let free: Vec<(usize, usize)> = alive
            .ones()
            .filter_map(|s| {
                if live_cofaces(alive, s) != 1 {
                    return None;
                }
                let t = cofaces[s].iter().copied().find(|&g| alive.contains(g))?;
                (live_cofaces(alive, t) == 0).then_some((s, t))
            })
            .collect();
        for (s, t) in free {
            alive.set(s, false);
            alive.set(t, false);
            self.path.push((s, t));
            if self.run(alive, remaining - 2)? {
                return Ok(true);
            }
            self.path.pop();
            alive.insert(s);
            alive.insert(t);
        }
        self.failed.insert(alive.clone());
        Ok(false)
    }
}

/// μ(0̂, 1̂) via μ(0̂, 0̂) = 1 and μ(0̂, v) = −Σ_{u<v} μ(0̂, u).
pub fn mobius(lattice: &Lattice) -> i64 {
    let poset = lattice.poset();
    let mut order: Vec<usize> = (0..lattice.len()).collect();
    order.sort_by_key(|&v| poset.down_set(v).count_ones(..));
    let mut mu = vec![0i64; lattice.len()];
    for v in order {
        mu[v] = if v == lattice.bottom() {
            1
        } else {
            -poset
                .down_set(v)
                .ones()
                .filter(|&u| u != v)
                .map(|u| mu[u])
                .sum::<i64>()
        };
    }
    mu[lattice.top()]
}

/// First interior element, in canonical order, without complements.
pub fn find_noncomplemented_element(lattice: &Lattice) -> Option<String> {
    lattice
        .interior()
        .into_iter()
        .find(|&x| (0..lattice.len()).all(|y| !lattice.is_complement(x, y)))
        .map(|x| lattice.label(x).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::replay_collapses;
    use crate::complex::tests::{complex, hollow_triangle, path};
    use crate::lattice::{generate, Family, GenerateParams};

    fn gen(family: Family, n: u64) -> Lattice {
        generate(family, &GenerateParams::new(n)).unwrap()
    }

    #[test]
    fn nonevasive_examples() {
        assert!(brute_nonevasive(&complex(&["a"], &[]), 12).unwrap());
        assert!(!brute_nonevasive(&complex(&["a", "b"], &[]), 12).unwrap());
        let triangle = complex(&["a", "b", "c"], &[&["a", "b", "c"]]);
        assert!(brute_nonevasive(&triangle, 12).unwrap());
        assert!(!brute_nonevasive(&hollow_triangle(), 12).unwrap());
        assert!(brute_nonevasive(&path(), 12).unwrap());
        assert_eq!(
            brute_nonevasive(&path(), 3),
            Err(OracleError::CapExceeded {
                what: "vertex count",
                actual: 4,
                cap: 3
            })
        );
    }

    #[test]
    fn witnesses_verify() {
        use crate::certifier::verify_certificate;
        let cert = brute_nonevasive_witness(&path(), 12).unwrap().unwrap();
        verify_certificate(&path(), &cert).unwrap();
        assert!(brute_nonevasive_witness(&hollow_triangle(), 12)
            .unwrap()
            .is_none());
    }

    #[test]
    fn collapsible_examples() {
        let edge = complex(&["a", "b"], &[&["a", "b"]]);
        let seq = brute_collapsible(&edge, 1 << 14).unwrap().unwrap();
        assert_eq!(seq.pairs.len(), 1);
        assert!(brute_collapsible(&hollow_triangle(), 1 << 14)
            .unwrap()
            .is_none());
        let seq = brute_collapsible(&path(), 1 << 14).unwrap().unwrap();
        assert_eq!(seq.pairs.len(), 3);
        replay_collapses(&path(), &seq).unwrap();
        assert!(matches!(
            brute_collapsible(&path(), 6),
            Err(OracleError::CapExceeded { .. })
        ));
    }

    #[test]
    fn two_triangle_disk_is_nonevasive_and_collapsible() {
        // A 2-disk made of two triangles sharing an edge: both properties hold.
        let disk = complex(&["a", "b", "c", "d"], &[&["a", "b", "c"], &["b", "c", "d"]]);
        assert!(brute_nonevasive(&disk, 12).unwrap());
        let seq = brute_collapsible(&disk, 1 << 14).unwrap().unwrap();
        replay_collapses(&disk, &seq).unwrap();
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(&gen(Family::Chain, 2)), -1);
        assert_eq!(mobius(&gen(Family::Chain, 1)), 1);
        assert_eq!(mobius(&gen(Family::Chain, 3)), 0);
        assert_eq!(mobius(&gen(Family::Boolean, 3)), -1);
        assert_eq!(mobius(&gen(Family::Boolean, 4)), 1);
        assert_eq!(mobius(&gen(Family::Divisor, 12)), 0);
        assert_eq!(mobius(&gen(Family::Divisor, 30)), -1);
        assert_eq!(mobius(&gen(Family::Diamond, 3)), 2);
        // μ(Π_n) = (−1)^(n−1) (n−1)!
        assert_eq!(mobius(&gen(Family::Partition, 4)), -6);
    }

    #[test]
    fn mobius_is_self_dual() {
        for l in [
            gen(Family::Partition, 4),
            gen(Family::Pentagon, 0),
            gen(Family::Divisor, 60),
        ] {
            assert_eq!(mobius(&l), mobius(&l.dual()));
        }
    }

    #[test]
    fn noncomplemented_examples() {
        assert_eq!(
            find_noncomplemented_element(&gen(Family::Divisor, 12)),
            Some("2".into())
        );
        assert_eq!(find_noncomplemented_element(&gen(Family::Boolean, 3)), None);
        assert_eq!(
            find_noncomplemented_element(&gen(Family::Chain, 3)),
            Some("a".into())
        );
    }

    #[test]
    fn memo_key_ignores_vertex_order() {
        let a = complex(&["x", "y"], &[&["x", "y"]]);
        let b = complex(&["y", "x"], &[&["y", "x"]]);
        assert_ne!(a, b);
        assert_eq!(MemoKey::of(&a), MemoKey::of(&b));
    }
}
