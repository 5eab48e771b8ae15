//! Finite posets and bounded lattices.
//!
//! Elements are addressed by their position in the canonical element order
//! (the order of the `elements:` line of a lattice file, or the order a
//! generator emits). Every derived lattice (interval, atom removal, pruning)
//! keeps the relative order of the surviving elements, so "first qualifying
//! candidate" scans are reproducible across the whole pipeline.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

mod completion;
mod generate;
mod parse;

pub use completion::dedekind_macneille;
pub use generate::{generate, Family, GenerateParams, MAX_GENERATED_ELEMENTS};
pub use parse::{parse_lattice, LatticeDocument};

/// Which bound operation failed when a poset is rejected as a lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Meet,
    Join,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Meet => f.write_str("meet"),
            Bound::Join => f.write_str("join"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid element label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("cycle detected through {0}")]
    CycleDetected(String),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("no unique bottom element (minimal elements: {})", .0.join(" "))]
    NoUniqueBottom(Vec<String>),
    #[error("no unique top element (maximal elements: {})", .0.join(" "))]
    NoUniqueTop(Vec<String>),
    #[error("NotALattice({u}, {v}, {{{}}}): no unique {bound}", .witnesses.join(", "))]
    NotALattice {
        u: String,
        v: String,
        bound: Bound,
        witnesses: Vec<String>,
    },
    #[error("{0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error("{0} is not an atom")]
    NotAnAtom(String),
    #[error("{0} is not a coatom")]
    NotACoatom(String),
    #[error("{0} is a bound of the lattice, not an interior element")]
    NotInterior(String),
    #[error("unknown lattice family {0:?}")]
    UnknownFamily(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
}

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;

/// Labels must be nonempty and free of whitespace, commas and `#`.
pub fn validate_label(label: &str) -> Result<()> {
    let bad = label.is_empty()
        || label
            .chars()
            .any(|c| c.is_whitespace() || c == ',' || c == '#');
    if bad {
        Err(LatticeError::InvalidLabel(label.to_string()))
    } else {
        Ok(())
    }
}

/// A finite partial order with labelled elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// `down[v]` holds every `u` with `u <= v`.
    down: Vec<FixedBitSet>,
    /// `up[u]` holds every `v` with `u <= v`.
    up: Vec<FixedBitSet>,
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        validate_label(l)?;
        if index.insert(l.clone(), i).is_some() {
            return Err(LatticeError::DuplicateElement(l.clone()));
        }
    }
    Ok(index)
}

fn transpose(rows: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = rows.len();
    let mut out = vec![FixedBitSet::with_capacity(n); n];
    for (v, row) in rows.iter().enumerate() {
        for u in row.ones() {
            out[u].insert(v);
        }
    }
    out
}

impl Poset {
    /// Builds the order generated by `covers` (pairs `(u, v)` with `u` below
    /// `v`). The pairs need not be actual covers; the reflexive-transitive
    /// closure is taken either way.
    pub fn from_covers(labels: Vec<String>, covers: &[(String, String)]) -> Result<Self> {
        let index = index_labels(&labels)?;
        let lookup = |l: &String| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| LatticeError::UnknownElement(l.clone()))
        };
        let pairs = covers
            .iter()
            .map(|(u, v)| Ok((lookup(u)?, lookup(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_cover_indices(labels, index, &pairs)
    }

    fn from_cover_indices(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        covers: &[(usize, usize)],
    ) -> Result<Self> {
        let n = labels.len();
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in covers {
            if u == v {
                return Err(LatticeError::CycleDetected(labels[u].clone()));
            }
            below[v].push(u);
            above[u].push(v);
            indegree[v] += 1;
        }
        // Kahn's algorithm, smallest canonical index first.
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(u) = ready.pop_first() {
            topo.push(u);
            for &v in &above[u] {
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    ready.insert(v);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&v| indegree[v] > 0).unwrap_or(0);
            return Err(LatticeError::CycleDetected(labels[stuck].clone()));
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for &v in &topo {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(v);
            for &u in &below[v] {
                set.union_with(&down[u]);
            }
            down[v] = set;
        }
        let up = transpose(&down);
        Ok(Poset {
            labels,
            index,
            down,
            up,
        })
    }

    /// Builds a poset from an explicit `leq` predicate, checking the partial
    /// order axioms.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let index = index_labels(&labels)?;
        let n = labels.len();
        let down: Vec<FixedBitSet> = (0..n)
            .map(|v| {
                let mut below = FixedBitSet::with_capacity(n);
                below.extend((0..n).filter(|&u| leq(u, v)));
                below
            })
            .collect();
        for v in 0..n {
            if !down[v].contains(v) {
                return Err(LatticeError::NotAPartialOrder(format!(
                    "{} is not related to itself",
                    labels[v]
                )));
            }
            for u in down[v].ones() {
                if u != v && down[u].contains(v) {
                    return Err(LatticeError::NotAPartialOrder(format!(
                        "{} and {} are mutually related",
                        labels[u], labels[v]
                    )));
                }
                if !down[u].is_subset(&down[v]) {
                    return Err(LatticeError::NotAPartialOrder(format!(
                        "transitivity fails below {} <= {}",
                        labels[u], labels[v]
                    )));
                }
            }
        }
        let up = transpose(&down);
        Ok(Poset {
            labels,
            index,
            down,
            up,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(label.to_string()))
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.down[v].contains(u)
    }

    pub fn lt(&self, u: usize, v: usize) -> bool {
        u != v && self.leq(u, v)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.leq(u, v) || self.leq(v, u)
    }

    pub fn down_set(&self, v: usize) -> &FixedBitSet {
        &self.down[v]
    }

    pub fn up_set(&self, u: usize) -> &FixedBitSet {
        &self.up[u]
    }

    /// `u` is covered by `v`.
    pub fn covers(&self, u: usize, v: usize) -> bool {
        self.lt(u, v) && self.up[u].intersection(&self.down[v]).count() == 2
    }

    /// All cover pairs, ordered by lower then upper element.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for u in 0..n {
            for v in self.up[u].ones() {
                if self.covers(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.down[v].count_ones(..) == 1)
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| self.up[u].count_ones(..) == 1)
            .collect()
    }

    /// Restriction to `members`, kept in canonical order.
    pub fn induced(&self, members: &[usize]) -> Poset {
        let mut keep = members.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let k = keep.len();
        let mut down = vec![FixedBitSet::with_capacity(k); k];
        for (j, &b) in keep.iter().enumerate() {
            for (i, &a) in keep.iter().enumerate() {
                if self.leq(a, b) {
                    down[j].insert(i);
                }
            }
        }
        let up = transpose(&down);
        Poset {
            labels,
            index,
            down,
            up,
        }
    }

    /// The same elements with the order reversed.
    pub fn dual(&self) -> Poset {
        Poset {
            labels: self.labels.clone(),
            index: self.index.clone(),
            down: self.up.clone(),
            up: self.down.clone(),
        }
    }
}

/// A finite bounded lattice with precomputed meet and join tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    bottom: usize,
    top: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
}

/// Greatest element of a down-closed set, or its maximal elements if there is
/// no greatest one.
fn greatest(
    set: &FixedBitSet,
    down: &[FixedBitSet],
    up: &[FixedBitSet],
) -> Result<usize, Vec<usize>> {
    let size = set.count_ones(..);
    let best = set.ones().max_by_key(|&w| down[w].count_ones(..));
    match best {
        Some(w) if down[w].count_ones(..) == size => Ok(w),
        _ => Err(set
            .ones()
            .filter(|&w| up[w].intersection(set).count() == 1)
            .collect()),
    }
}

impl Lattice {
    /// Validates that `poset` is a bounded lattice and tabulates meet and join.
    pub fn from_poset(poset: Poset) -> Result<Self> {
        let n = poset.len();
        let labels_of = |idx: &[usize]| idx.iter().map(|&i| poset.labels[i].clone()).collect();
        let minimal = poset.minimal();
        if minimal.len() != 1 {
            return Err(LatticeError::NoUniqueBottom(labels_of(&minimal)));
        }
        let maximal = poset.maximal();
        if maximal.len() != 1 {
            return Err(LatticeError::NoUniqueTop(labels_of(&maximal)));
        }
        let (bottom, top) = (minimal[0], maximal[0]);
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for u in 0..n {
            meet[u * n + u] = u;
            join[u * n + u] = u;
            for v in (u + 1)..n {
                let mut upper = poset.up[u].clone();
                upper.intersect_with(&poset.up[v]);
                let j = greatest(&upper, &poset.up, &poset.down).map_err(|w| {
                    LatticeError::NotALattice {
                        u: poset.labels[u].clone(),
                        v: poset.labels[v].clone(),
                        bound: Bound::Join,
                        witnesses: labels_of(&w),
                    }
                })?;
                let mut lower = poset.down[u].clone();
                lower.intersect_with(&poset.down[v]);
                let m = greatest(&lower, &poset.down, &poset.up).map_err(|w| {
                    LatticeError::NotALattice {
                        u: poset.labels[u].clone(),
                        v: poset.labels[v].clone(),
                        bound: Bound::Meet,
                        witnesses: labels_of(&w),
                    }
                })?;
                join[u * n + v] = j;
                join[v * n + u] = j;
                meet[u * n + v] = m;
                meet[v * n + u] = m;
            }
        }
        Ok(Lattice {
            poset,
            bottom,
            top,
            meet,
            join,
        })
    }

    pub fn from_covers(labels: Vec<String>, covers: &[(String, String)]) -> Result<Self> {
        Self::from_poset(Poset::from_covers(labels, covers)?)
    }

    /// Convenience constructor used heavily in tests and generators.
    pub fn from_cover_strs(labels: &[&str], covers: &[(&str, &str)]) -> Result<Self> {
        Self::from_covers(
            labels.iter().map(|s| s.to_string()).collect(),
            &covers
                .iter()
                .map(|(u, v)| (u.to_string(), v.to_string()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn label(&self, i: usize) -> &str {
        self.poset.label(i)
    }

    pub fn labels(&self) -> &[String] {
        self.poset.labels()
    }

    pub fn labels_of(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.label(i).to_string()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.poset.index_of(label)
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.poset.leq(u, v)
    }

    pub fn meet(&self, u: usize, v: usize) -> usize {
        self.meet[u * self.len() + v]
    }

    pub fn join(&self, u: usize, v: usize) -> usize {
        self.join[u * self.len() + v]
    }

    pub fn is_interior(&self, i: usize) -> bool {
        i != self.bottom && i != self.top
    }

    /// L̄: every element except the bounds, in canonical order.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_interior(i)).collect()
    }

    pub fn is_atom(&self, y: usize) -> bool {
        self.poset.covers(self.bottom, y)
    }

    pub fn is_coatom(&self, y: usize) -> bool {
        self.poset.covers(y, self.top)
    }

    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.is_atom(y)).collect()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.is_coatom(y)).collect()
    }

    pub fn is_complement(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == self.bottom && self.join(x, y) == self.top
    }

    /// Co(x) = { y : x ∧ y = 0̂ and x ∨ y = 1̂ }.
    pub fn complements(&self, x: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&y| self.is_complement(x, y))
            .collect()
    }

    pub fn complements_of(&self, x: &str) -> Result<Vec<String>> {
        let x = self.index_of(x)?;
        Ok(self.labels_of(&self.complements(x)))
    }

    /// The interval [u, v] as a lattice in its own right.
    pub fn interval(&self, u: usize, v: usize) -> Result<Lattice> {
        if !self.leq(u, v) {
            return Err(LatticeError::NotComparable(
                self.label(u).to_string(),
                self.label(v).to_string(),
            ));
        }
        let members: Vec<usize> = self.poset.up[u].intersection(&self.poset.down[v]).collect();
        Lattice::from_poset(self.poset.induced(&members))
    }

    /// L ∖ removed, revalidated from scratch.
    pub fn without(&self, removed: &[usize]) -> Result<Lattice> {
        let keep: Vec<usize> = (0..self.len()).filter(|i| !removed.contains(i)).collect();
        Lattice::from_poset(self.poset.induced(&keep))
    }

    pub fn remove_atom(&self, y: usize) -> Result<Lattice> {
        if !self.is_atom(y) {
            return Err(LatticeError::NotAnAtom(self.label(y).to_string()));
        }
        self.without(&[y])
    }

    pub fn remove_coatom(&self, y: usize) -> Result<Lattice> {
        if !self.is_coatom(y) {
            return Err(LatticeError::NotACoatom(self.label(y).to_string()));
        }
        self.without(&[y])
    }

    /// The order-reversed lattice on the same labels.
    pub fn dual(&self) -> Lattice {
        Lattice {
            poset: self.poset.dual(),
            bottom: self.top,
            top: self.bottom,
            meet: self.join.clone(),
            join: self.meet.clone(),
        }
    }

    /// Connected components of the comparability graph on L̄. Components are
    /// listed by their first member; members are in canonical order.
    pub fn comparability_components(&self) -> Vec<Vec<usize>> {
        let interior = self.interior();
        let mut component = vec![usize::MAX; self.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for &start in &interior {
            if component[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            component[start] = id;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &interior {
                    if component[w] == usize::MAX && self.poset.comparable(u, w) {
                        component[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Cartesian product ordered componentwise; labels are `u.v`.
    pub fn product(a: &Lattice, b: &Lattice) -> Result<Lattice> {
        let nb = b.len();
        let labels = (0..a.len())
            .flat_map(|i| (0..nb).map(move |j| (i, j)))
            .map(|(i, j)| format!("{}.{}", a.label(i), b.label(j)))
            .collect();
        let poset = Poset::from_relation(labels, |p, q| {
            a.leq(p / nb, q / nb) && b.leq(p % nb, q % nb)
        })?;
        Lattice::from_poset(poset)
    }
}

/// A subset of L̄ carrying the order induced from its lattice.
#[derive(Debug, Clone, Copy)]
pub struct InteriorSet<'a> {
    lattice: &'a Lattice,
    members: &'a [usize],
}

impl<'a> InteriorSet<'a> {
    /// `members` must be sorted in canonical order and avoid 0̂ and 1̂.
    pub fn new(lattice: &'a Lattice, members: &'a [usize]) -> Result<Self> {
        if let Some(&b) = members.iter().find(|&&m| !lattice.is_interior(m)) {
            return Err(LatticeError::NotInterior(lattice.label(b).to_string()));
        }
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Ok(InteriorSet { lattice, members })
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lattice
    }

    pub fn members(&self) -> &'a [usize] {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl Lattice {
    /// P̄ for P = L ∖ Co(x): interior elements that are not complements of `x`.
    pub fn interior_without_complements(&self, x: usize) -> Vec<usize> {
        self.interior()
            .into_iter()
            .filter(|&y| !self.is_complement(x, y))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn d12() -> Lattice {
        Lattice::from_cover_strs(
            &["1", "2", "3", "4", "6", "12"],
            &[
                ("1", "2"),
                ("1", "3"),
                ("2", "4"),
                ("2", "6"),
                ("3", "6"),
                ("4", "12"),
                ("6", "12"),
            ],
        )
        .unwrap()
    }

    fn b2() -> Lattice {
        Lattice::from_cover_strs(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap()
    }

    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn labels(l: &Lattice, idx: &[usize]) -> Vec<String> {
        l.labels_of(idx)
    }

    #[test]
    fn d12_meet_is_gcd_and_join_is_lcm() {
        let l = d12();
        let value = |i: usize| l.label(i).parse::<u32>().unwrap();
        // Brute-force bound enumeration over all 36 pairs.
        for u in 0..6 {
            for v in 0..6 {
                let lower: Vec<usize> = (0..6).filter(|&w| l.leq(w, u) && l.leq(w, v)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&m| lower.iter().all(|&w| l.leq(w, m)))
                    .unwrap();
                assert_eq!(l.meet(u, v), glb);
                let (a, b) = (value(u), value(v));
                assert_eq!(value(l.meet(u, v)), gcd(a, b));
                assert_eq!(value(l.join(u, v)), a * b / gcd(a, b));
            }
        }
    }

    #[test]
    fn three_chain_bounds() {
        let l = Lattice::from_cover_strs(&["0", "a", "1"], &[("0", "a"), ("a", "1")]).unwrap();
        assert_eq!(l.label(l.bottom()), "0");
        assert_eq!(l.label(l.top()), "1");
    }

    #[test]
    fn bowtie_is_not_a_lattice() {
        let err = Lattice::from_cover_strs(
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        )
        .unwrap_err();
        match err {
            LatticeError::NotALattice {
                u, v, witnesses, ..
            } => {
                assert_eq!((u.as_str(), v.as_str()), ("a", "b"));
                assert_eq!(witnesses, vec!["c", "d"]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn construction_errors() {
        let cyc = Lattice::from_cover_strs(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(cyc, Err(LatticeError::CycleDetected(_))));
        let two_min = Lattice::from_cover_strs(&["a", "b", "1"], &[("a", "1"), ("b", "1")]);
        assert!(matches!(two_min, Err(LatticeError::NoUniqueBottom(_))));
        let two_max = Lattice::from_cover_strs(&["0", "a", "b"], &[("0", "a"), ("0", "b")]);
        assert!(matches!(two_max, Err(LatticeError::NoUniqueTop(_))));
        let bad = Lattice::from_cover_strs(&["a b"], &[]);
        assert!(matches!(bad, Err(LatticeError::InvalidLabel(_))));
        let dup = Lattice::from_cover_strs(&["a", "a"], &[]);
        assert!(matches!(dup, Err(LatticeError::DuplicateElement(_))));
        let unknown = Lattice::from_cover_strs(&["a"], &[("a", "z")]);
        assert!(matches!(unknown, Err(LatticeError::UnknownElement(_))));
    }

    #[test]
    fn complements_examples() {
        assert_eq!(b2().complements_of("a").unwrap(), vec!["b"]);
        let l = d12();
        assert!(l.complements_of("2").unwrap().is_empty());
        assert_eq!(l.complements_of("4").unwrap(), vec!["3"]);
        assert!(l.complements_of("5").is_err());
    }

    #[test]
    fn interval_examples() {
        let l = d12();
        let i = l.interval(2, 5).unwrap();
        assert_eq!(i.labels(), &["3", "6", "12"]);
        assert_eq!(i.label(i.bottom()), "3");
        assert_eq!(l.interval(l.bottom(), l.top()).unwrap(), l);
        assert!(matches!(
            l.interval(1, 2),
            Err(LatticeError::NotComparable(..))
        ));
    }

    #[test]
    fn remove_atom_examples() {
        let l = d12();
        let r = l.remove_atom(2).unwrap();
        assert_eq!(r.labels(), &["1", "2", "4", "6", "12"]);
        let r = l.remove_atom(1).unwrap();
        assert_eq!(r.labels(), &["1", "3", "4", "6", "12"]);
        let (four, six) = (r.index_of("4").unwrap(), r.index_of("6").unwrap());
        assert_eq!(r.label(r.meet(four, six)), "1");
        let c = b2().remove_atom(1).unwrap();
        assert_eq!(c.labels(), &["0", "b", "1"]);
        assert_eq!(c.atoms(), vec![1]);
        assert!(matches!(l.remove_atom(3), Err(LatticeError::NotAnAtom(_))));
        assert!(matches!(
            l.remove_coatom(1),
            Err(LatticeError::NotACoatom(_))
        ));
    }

    #[test]
    fn dual_examples() {
        let c = Lattice::from_cover_strs(&["0", "a", "1"], &[("0", "a"), ("a", "1")]).unwrap();
        let d = c.dual();
        assert_eq!(d.label(d.bottom()), "1");
        assert_eq!(d.label(d.top()), "0");
        let l = d12();
        assert_eq!(l.dual().dual(), l);
        assert_eq!(labels(&l.dual(), &l.dual().atoms()), vec!["4", "6"]);
        assert_eq!(l.dual().atoms(), l.coatoms());
    }

    #[test]
    fn comparability_component_examples() {
        let b = b2();
        assert_eq!(b.comparability_components(), vec![vec![1], vec![2]]);
        let l = d12();
        assert_eq!(l.comparability_components(), vec![vec![1, 2, 3, 4]]);
        let m3 = Lattice::from_cover_strs(
            &["0", "a", "b", "c", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("0", "c"),
                ("a", "1"),
                ("b", "1"),
                ("c", "1"),
            ],
        )
        .unwrap();
        assert_eq!(m3.comparability_components().len(), 3);
    }

    #[test]
    fn product_of_chains() {
        let c = Lattice::from_cover_strs(&["0", "1"], &[("0", "1")]).unwrap();
        let p = Lattice::product(&c, &c).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.atoms().len(), 2);
        assert_eq!(p.label(p.top()), "1.1");
    }

    #[test]
    fn relation_axioms_checked() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let err = Poset::from_relation(labels.clone(), |_, _| true).unwrap_err();
        assert!(matches!(err, LatticeError::NotAPartialOrder(_)));
        let err = Poset::from_relation(labels, |u, v| u < v).unwrap_err();
        assert!(matches!(err, LatticeError::NotAPartialOrder(_)));
    }
}
