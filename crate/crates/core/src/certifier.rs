//! Nonevasiveness certificates for Δ(P̄), P = L ∖ Co(x).
//!
//! [`certify`] runs the inductive case analysis on the lattice: at each step
//! it either stops at a single vertex, prunes a block of complements that is
//! disconnected from `x`, or splits on an atom/coatom `y` whose deletion and
//! link are again order complexes of the same shape. [`verify_certificate`]
//! checks the result using nothing but complex-level link and deletion, and
//! [`extract_collapses`] turns it into an explicit collapse sequence.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{
    order_complex, replay_collapses, CollapsePair, CollapseSequence, Complex, ComplexError,
};
use crate::lattice::{InteriorSet, Lattice, LatticeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitMode {
    Case1Atom,
    Case1Coatom,
    Case2Atom,
    Case2Coatom,
}

impl SplitMode {
    pub fn is_atom(self) -> bool {
        matches!(self, SplitMode::Case1Atom | SplitMode::Case2Atom)
    }

    pub fn is_case1(self) -> bool {
        matches!(self, SplitMode::Case1Atom | SplitMode::Case1Coatom)
    }
}

impl fmt::Display for SplitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitMode::Case1Atom => "case1_atom",
            SplitMode::Case1Coatom => "case1_coatom",
            SplitMode::Case2Atom => "case2_atom",
            SplitMode::Case2Coatom => "case2_coatom",
        })
    }
}

/// Recursive nonevasiveness witness.
///
/// `z` on a split is the distinguished element the link child was certified
/// for: x ∨ y (case 1, atom), x ∧ y (case 1, coatom) or x itself (case 2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Certificate {
    Leaf {
        vertex: String,
    },
    Prune {
        removed: Vec<String>,
        child: Box<Certificate>,
    },
    Split {
        vertex: String,
        mode: SplitMode,
        z: String,
        dl: Box<Certificate>,
        lk: Box<Certificate>,
    },
}

impl Certificate {
    pub fn leaf(vertex: &str) -> Self {
        Certificate::Leaf {
            vertex: vertex.to_string(),
        }
    }

    /// The vertex set of the complex this certificate is about: a leaf's
    /// vertex, or a split vertex together with its deletion's vertices.
    pub fn vertex_set(&self) -> BTreeSet<String> {
        match self {
            Certificate::Leaf { vertex } => BTreeSet::from([vertex.clone()]),
            Certificate::Prune { child, .. } => child.vertex_set(),
            Certificate::Split { vertex, dl, .. } => {
                let mut set = dl.vertex_set();
                set.insert(vertex.clone());
                set
            }
        }
    }

    /// Number of split nodes.
    pub fn splits(&self) -> usize {
        match self {
            Certificate::Leaf { .. } => 0,
            Certificate::Prune { child, .. } => child.splits(),
            Certificate::Split { dl, lk, .. } => 1 + dl.splits() + lk.splits(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Certificate::Leaf { .. } => 0,
            Certificate::Prune { child, .. } => 1 + child.depth(),
            Certificate::Split { dl, lk, .. } => 1 + dl.depth().max(lk.depth()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateRole {
    Atom,
    Coatom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    /// y ≤ x (atom scan).
    BelowX,
    /// x ≤ y (coatom scan).
    AboveX,
    /// y is a complement of x.
    Complement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub candidate: String,
    pub role: CandidateRole,
    pub reason: RejectReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Decision {
    Leaf {
        vertex: String,
    },
    Prune {
        removed: Vec<String>,
    },
    Split {
        vertex: String,
        mode: SplitMode,
        z: String,
    },
}

/// Conditions re-checked at a node. Every listed check held; a failing one
/// aborts certification with [`CertifyError::InternalAssertion`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// Complements of x in the deletion lattice equal Co_L(x).
    DeletionComplements,
    /// Complements of z in the link interval equal Co_L(x) restricted to it.
    LinkComplements,
    /// Δ of the deletion child equals dl_Δ(y).
    DeletionIdentity,
    /// Δ of the link child equals lk_Δ(y).
    LinkIdentity,
    /// P̄ is unchanged by pruning.
    PruneInvariance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub depth: usize,
    pub x: String,
    pub lattice_size: usize,
    pub interior_size: usize,
    pub complements: usize,
    pub rejected: Vec<Rejection>,
    pub decision: Decision,
    pub checked: Vec<WitnessKind>,
}

/// Preorder log of certification decisions (node, then deletion child, then
/// link child).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyTrace {
    pub events: Vec<TraceEvent>,
}

impl CertifyTrace {
    pub fn count_checked(&self, kind: WitnessKind) -> usize {
        self.events
            .iter()
            .filter(|e| e.checked.contains(&kind))
            .count()
    }

    pub fn split_events(&self) -> impl Iterator<Item = &TraceEvent> {
        self.events
            .iter()
            .filter(|e| matches!(e.decision, Decision::Split { .. }))
    }

    /// Rebuilds the certificate by following the logged decisions instead of
    /// scanning for candidates. Every decision is re-validated on the way.
    pub fn replay(&self, lattice: &Lattice, x: &str) -> Result<Certificate> {
        let x = lattice.index_of(x)?;
        let mut events = self.events.iter();
        let cert = replay_node(lattice.clone(), x, 0, &mut events)?;
        if events.next().is_some() {
            return Err(CertifyError::TraceMismatch("trailing events".into()));
        }
        Ok(cert)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate rejected at {path}: {reason}")]
pub struct VerifyError {
    /// `$` for the root, then `.dl`, `.lk`, `.child` steps.
    pub path: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("{0} is 0̂ or 1̂; certification needs an interior element")]
    ElementOnBoundary(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("internal assertion {tag} failed: {detail}")]
    InternalAssertion { tag: &'static str, detail: String },
    #[error("trace does not match: {0}")]
    TraceMismatch(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

pub type Result<T, E = CertifyError> = std::result::Result<T, E>;

fn assertion(tag: &'static str, detail: impl Into<String>) -> CertifyError {
    CertifyError::InternalAssertion {
        tag,
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Also compare Δ of every child against the link/deletion of the
    /// parent's complex, and check prune invariance on complexes.
    pub check_identities: bool,
}

/// One `(L, x)` pair of the induction.
struct Instance {
    lattice: Lattice,
    x: usize,
}

impl Instance {
    fn complements(&self) -> Vec<usize> {
        self.lattice.complements(self.x)
    }

    fn interior(&self) -> Vec<usize> {
        self.lattice.interior_without_complements(self.x)
    }

    fn complex(&self) -> Result<Complex> {
        let members = self.interior();
        Ok(order_complex(&InteriorSet::new(&self.lattice, &members)?)?)
    }

    fn labels(&self, idx: &[usize]) -> Vec<String> {
        self.lattice.labels_of(idx)
    }

    fn child(&self, lattice: Lattice, x_label: &str) -> Result<Instance> {
        if lattice.len() >= self.lattice.len() {
            return Err(assertion(
                "termination",
                format!(
                    "child lattice has {} elements, parent {}",
                    lattice.len(),
                    self.lattice.len()
                ),
            ));
        }
        let x = lattice.index_of(x_label)?;
        if !lattice.is_interior(x) {
            return Err(assertion(
                "child-x-interior",
                format!("{x_label} is a bound of the child"),
            ));
        }
        Ok(Instance { lattice, x })
    }
}

/// The case analysis: which node to emit for this instance.
fn decide(inst: &Instance) -> Result<(Decision, Vec<Rejection>)> {
    let l = &inst.lattice;
    let x = inst.x;
    let co = inst.complements();
    let pbar = inst.interior();
    if !pbar.contains(&x) {
        return Err(assertion("x-in-interior", l.label(x)));
    }
    let mut rejected = Vec::new();
    let mut reject = |y: usize, role, reason| {
        rejected.push(Rejection {
            candidate: l.label(y).to_string(),
            role,
            reason,
        })
    };

    // Base case. With complements still present the pruning step below runs
    // first, so a leaf always sits on a lattice whose proper part is {x}.
    if pbar.len() == 1 && co.is_empty() {
        return Ok((
            Decision::Leaf {
                vertex: l.label(x).to_string(),
            },
            rejected,
        ));
    }

    // Case 1: an atom y ≰ x that is not a complement, i.e. x ∨ y ≠ 1̂.
    for y in l.atoms() {
        if l.leq(y, x) {
            reject(y, CandidateRole::Atom, RejectReason::BelowX);
        } else if l.join(x, y) == l.top() {
            reject(y, CandidateRole::Atom, RejectReason::Complement);
        } else {
            let decision = Decision::Split {
                vertex: l.label(y).to_string(),
                mode: SplitMode::Case1Atom,
                z: l.label(l.join(x, y)).to_string(),
            };
            return Ok((decision, rejected));
        }
    }
    // Dually, a coatom y ≱ x with x ∧ y ≠ 0̂.
    for y in l.coatoms() {
        if l.leq(x, y) {
            reject(y, CandidateRole::Coatom, RejectReason::AboveX);
        } else if l.meet(x, y) == l.bottom() {
            reject(y, CandidateRole::Coatom, RejectReason::Complement);
        } else {
            let decision = Decision::Split {
                vertex: l.label(y).to_string(),
                mode: SplitMode::Case1Coatom,
                z: l.label(l.meet(x, y)).to_string(),
            };
            return Ok((decision, rejected));
        }
    }

    // Case 2: every atom is below x or a complement, every coatom above x or
    // a complement. Complementary atoms/coatoms drag their whole
    // comparability component out of the picture.
    let extreme_complements: Vec<usize> = l
        .atoms()
        .into_iter()
        .chain(l.coatoms())
        .filter(|y| co.contains(y))
        .collect();
    if !extreme_complements.is_empty() {
        let mut removed: Vec<usize> = l
            .comparability_components()
            .into_iter()
            .filter(|c| c.iter().any(|m| extreme_complements.contains(m)))
            .flatten()
            .collect();
        removed.sort_unstable();
        return Ok((
            Decision::Prune {
                removed: inst.labels(&removed),
            },
            rejected,
        ));
    }

    // No complements left: x is comparable to every atom and coatom.
    if !co.is_empty() {
        return Err(assertion(
            "case2-no-complements",
            format!("Co({}) = {:?}", l.label(x), inst.labels(&co)),
        ));
    }
    let (vertex, mode) = match l.atoms().into_iter().find(|&y| y != x) {
        Some(y) => (y, SplitMode::Case2Atom),
        None => match l.coatoms().into_iter().find(|&y| y != x) {
            Some(y) => (y, SplitMode::Case2Coatom),
            None => {
                return Err(assertion(
                    "case2-candidate",
                    format!("no atom or coatom other than {}", l.label(x)),
                ))
            }
        },
    };
    Ok((
        Decision::Split {
            vertex: l.label(vertex).to_string(),
            mode,
            z: l.label(x).to_string(),
        },
        rejected,
    ))
}

enum Expansion {
    Leaf,
    Prune(Instance),
    Split { dl: Instance, lk: Instance },
}

fn same_labels(tag: &'static str, got: Vec<String>, want: Vec<String>) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(assertion(tag, format!("{got:?} != {want:?}")))
    }
}

/// The link interval with the complements of x that are not complements of
/// z inside it removed. Without them the link poset is again "lattice minus
/// the complements of z". Empty removal is the common case; the removal
/// must leave a lattice.
fn trim_link(l: &Lattice, co: &[usize], interval: &Lattice, z: &str) -> Result<Lattice> {
    let zi = interval.index_of(z)?;
    let stray: Vec<usize> = co
        .iter()
        .filter_map(|&c| interval.index_of(l.label(c)).ok())
        .filter(|&c| !interval.is_complement(zi, c))
        .collect();
    if stray.is_empty() {
        return Ok(interval.clone());
    }
    interval
        .without(&stray)
        .map_err(|e| assertion("link-trim-sublattice", e.to_string()))
}

/// Builds the children for `decision`, re-checking every condition the
/// induction relies on.
fn expand(
    inst: &Instance,
    decision: &Decision,
    options: CertifyOptions,
    checked: &mut Vec<WitnessKind>,
) -> Result<Expansion> {
    let l = &inst.lattice;
    let x_label = l.label(inst.x).to_string();
    let co = inst.complements();
    match decision {
        Decision::Leaf { vertex } => {
            let pbar = inst.interior();
            if pbar != [inst.x] || *vertex != x_label {
                return Err(assertion(
                    "leaf",
                    format!("leaf {vertex} on interior {:?}", inst.labels(&pbar)),
                ));
            }
            Ok(Expansion::Leaf)
        }
        Decision::Prune { removed } => {
            let removed = removed
                .iter()
                .map(|r| l.index_of(r))
                .collect::<Result<Vec<_>, _>>()?;
            if removed.contains(&inst.x) {
                return Err(assertion("prune-x", format!("{x_label} would be pruned")));
            }
            if let Some(&r) = removed.iter().find(|r| !co.contains(r)) {
                return Err(assertion(
                    "prune-complements",
                    format!("{} is not a complement of {x_label}", l.label(r)),
                ));
            }
            let sub = l
                .without(&removed)
                .map_err(|e| assertion("prune-sublattice", e.to_string()))?;
            let child = inst.child(sub, &x_label)?;
            same_labels(
                "prune-invariance",
                child.labels(&child.interior()),
                inst.labels(&inst.interior()),
            )?;
            if options.check_identities && child.complex()? != inst.complex()? {
                return Err(assertion("prune-invariance", "complexes differ"));
            }
            checked.push(WitnessKind::PruneInvariance);
            Ok(Expansion::Prune(child))
        }
        Decision::Split { vertex, mode, z } => {
            let y = l.index_of(vertex)?;
            if !inst.interior().contains(&y) {
                return Err(assertion("split-vertex", format!("{vertex} is not in P̄")));
            }
            let (dl_lattice, lk_lattice, expected_z) = if mode.is_atom() {
                if mode.is_case1() && l.leq(y, inst.x) {
                    return Err(assertion("case1-atom", format!("{vertex} <= {x_label}")));
                }
                let z = if mode.is_case1() {
                    l.join(inst.x, y)
                } else {
                    inst.x
                };
                (l.remove_atom(y)?, l.interval(y, l.top())?, z)
            } else {
                if mode.is_case1() && l.leq(inst.x, y) {
                    return Err(assertion("case1-coatom", format!("{x_label} <= {vertex}")));
                }
                let z = if mode.is_case1() {
                    l.meet(inst.x, y)
                } else {
                    inst.x
                };
                (l.remove_coatom(y)?, l.interval(l.bottom(), y)?, z)
            };
            if l.label(expected_z) != z {
                return Err(assertion(
                    "split-z",
                    format!("z = {z}, expected {}", l.label(expected_z)),
                ));
            }
            if !l.is_interior(expected_z) {
                return Err(assertion("case1-z-bound", format!("z = {z} is a bound")));
            }
            let lk_lattice = trim_link(l, &co, &lk_lattice, z)?;
            let dl = inst.child(dl_lattice, &x_label)?;
            let lk = inst.child(lk_lattice, z)?;

            // Deletion keeps Co(x); the link interval's complements of z are
            // Co_L(x) cut down to the interval.
            let dl_co = dl.labels(&dl.complements());
            let lk_co = lk.labels(&lk.complements());
            if mode.is_case1() {
                same_labels("deletion-complements", dl_co, inst.labels(&co))?;
                let kept: Vec<usize> = co
                    .iter()
                    .copied()
                    .filter(|&c| lk.lattice.index_of(l.label(c)).is_ok())
                    .collect();
                same_labels("link-complements", lk_co, inst.labels(&kept))?;
            } else {
                same_labels("case2-deletion-complements", dl_co, Vec::new())?;
                same_labels("case2-link-complements", lk_co, Vec::new())?;
            }
            checked.push(WitnessKind::DeletionComplements);
            checked.push(WitnessKind::LinkComplements);

            if options.check_identities {
                let here = inst.complex()?;
                if dl.complex()? != here.deletion(vertex)? {
                    return Err(assertion("deletion-identity", format!("at {vertex}")));
                }
                checked.push(WitnessKind::DeletionIdentity);
                if lk.complex()? != here.link(vertex)? {
                    return Err(assertion("link-identity", format!("at {vertex}")));
                }
                checked.push(WitnessKind::LinkIdentity);
            }
            Ok(Expansion::Split { dl, lk })
        }
    }
}

fn certify_node(
    inst: Instance,
    depth: usize,
    options: CertifyOptions,
    trace: &mut CertifyTrace,
) -> Result<Certificate> {
    let (decision, rejected) = decide(&inst)?;
    let mut checked = Vec::new();
    let expansion = expand(&inst, &decision, options, &mut checked)?;
    trace.events.push(TraceEvent {
        depth,
        x: inst.lattice.label(inst.x).to_string(),
        lattice_size: inst.lattice.len(),
        interior_size: inst.interior().len(),
        complements: inst.complements().len(),
        rejected,
        decision: decision.clone(),
        checked,
    });
    Ok(match (decision, expansion) {
        (Decision::Leaf { vertex }, Expansion::Leaf) => Certificate::Leaf { vertex },
        (Decision::Prune { removed }, Expansion::Prune(child)) => Certificate::Prune {
            removed,
            child: Box::new(certify_node(child, depth + 1, options, trace)?),
        },
        (Decision::Split { vertex, mode, z }, Expansion::Split { dl, lk }) => {
            let dl = certify_node(dl, depth + 1, options, trace)?;
            let lk = certify_node(lk, depth + 1, options, trace)?;
            Certificate::Split {
                vertex,
                mode,
                z,
                dl: Box::new(dl),
                lk: Box::new(lk),
            }
        }
        _ => unreachable!("expand mirrors the decision"),
    })
}

fn replay_node<'a>(
    lattice: Lattice,
    x: usize,
    depth: usize,
    events: &mut impl Iterator<Item = &'a TraceEvent>,
) -> Result<Certificate> {
    let inst = Instance { lattice, x };
    let event = events
        .next()
        .ok_or_else(|| CertifyError::TraceMismatch("trace ended early".into()))?;
    if event.depth != depth || event.x != inst.lattice.label(x) {
        return Err(CertifyError::TraceMismatch(format!(
            "event for {} at depth {} met node for {} at depth {depth}",
            event.x,
            event.depth,
            inst.lattice.label(x)
        )));
    }
    let mut checked = Vec::new();
    let expansion = expand(
        &inst,
        &event.decision,
        CertifyOptions::default(),
        &mut checked,
    )?;
    Ok(match (&event.decision, expansion) {
        (Decision::Leaf { vertex }, Expansion::Leaf) => Certificate::leaf(vertex),
        (Decision::Prune { removed }, Expansion::Prune(child)) => Certificate::Prune {
            removed: removed.clone(),
            child: Box::new(replay_node(child.lattice, child.x, depth + 1, events)?),
        },
        (Decision::Split { vertex, mode, z }, Expansion::Split { dl, lk }) => {
            let dl = replay_node(dl.lattice, dl.x, depth + 1, events)?;
            let lk = replay_node(lk.lattice, lk.x, depth + 1, events)?;
            Certificate::Split {
                vertex: vertex.clone(),
                mode: *mode,
                z: z.clone(),
                dl: Box::new(dl),
                lk: Box::new(lk),
            }
        }
        _ => unreachable!("expand mirrors the decision"),
    })
}

/// Certifies that Δ(P̄) is nonevasive for P = L ∖ Co(x).
pub fn certify(lattice: &Lattice, x: &str) -> Result<(Certificate, CertifyTrace)> {
    certify_with(lattice, x, CertifyOptions::default())
}

pub fn certify_with(
    lattice: &Lattice,
    x: &str,
    options: CertifyOptions,
) -> Result<(Certificate, CertifyTrace)> {
    let xi = lattice.index_of(x)?;
    if !lattice.is_interior(xi) {
        return Err(CertifyError::ElementOnBoundary(x.to_string()));
    }
    let mut trace = CertifyTrace::default();
    let inst = Instance {
        lattice: lattice.clone(),
        x: xi,
    };
    let cert = certify_node(inst, 0, options, &mut trace)?;
    Ok((cert, trace))
}

/// Δ(P̄) for P = L ∖ Co(x).
pub fn noncomplement_complex(lattice: &Lattice, x: &str) -> Result<Complex> {
    let xi = lattice.index_of(x)?;
    if !lattice.is_interior(xi) {
        return Err(CertifyError::ElementOnBoundary(x.to_string()));
    }
    Instance {
        lattice: lattice.clone(),
        x: xi,
    }
    .complex()
}

/// Checks `cert` against `complex` using only vertex links and deletions.
pub fn verify_certificate(complex: &Complex, cert: &Certificate) -> Result<(), VerifyError> {
    verify_at(complex, cert, "$".to_string())
}

fn verify_at(complex: &Complex, cert: &Certificate, path: String) -> Result<(), VerifyError> {
    let fail = |reason: String| VerifyError {
        path: path.clone(),
        reason,
    };
    match cert {
        Certificate::Leaf { vertex } => {
            if complex.vertices() != std::slice::from_ref(vertex) {
                return Err(fail(format!(
                    "leaf {vertex} on a complex with vertices {:?}",
                    complex.vertices()
                )));
            }
            Ok(())
        }
        Certificate::Prune { removed, child } => {
            if let Some(r) = removed.iter().find(|r| complex.vertices().contains(r)) {
                return Err(fail(format!("pruned element {r} is a vertex")));
            }
            verify_at(complex, child, format!("{path}.child"))
        }
        Certificate::Split { vertex, dl, lk, .. } => {
            let deletion = complex.deletion(vertex).map_err(|e| fail(e.to_string()))?;
            let link = complex.link(vertex).map_err(|e| fail(e.to_string()))?;
            verify_at(&deletion, dl, format!("{path}.dl"))?;
            verify_at(&link, lk, format!("{path}.lk"))
        }
    }
}

fn extract(complex: &Complex, cert: &Certificate) -> Result<(Vec<CollapsePair>, String)> {
    match cert {
        Certificate::Leaf { vertex } => Ok((Vec::new(), vertex.clone())),
        Certificate::Prune { child, .. } => extract(complex, child),
        Certificate::Split { vertex, dl, lk, .. } => {
            let (lk_pairs, apex) = extract(&complex.link(vertex)?, lk)?;
            let with_vertex = |face: Vec<String>| {
                let mut f = face;
                f.push(vertex.clone());
                f
            };
            // Collapsing the link lifts to the star of `vertex`, which then
            // retracts onto dl through the edge {vertex, apex}.
            let mut pairs: Vec<CollapsePair> = lk_pairs
                .into_iter()
                .map(|p| CollapsePair {
                    free_face: with_vertex(p.free_face),
                    coface: with_vertex(p.coface),
                })
                .collect();
            pairs.push(CollapsePair {
                free_face: vec![vertex.clone()],
                coface: vec![vertex.clone(), apex],
            });
            let (dl_pairs, last) = extract(&complex.deletion(vertex)?, dl)?;
            pairs.extend(dl_pairs);
            Ok((pairs, last))
        }
    }
}

/// Collapse sequence read off a verified certificate; replayed on `complex`
/// before it is returned.
pub fn extract_collapses(cert: &Certificate, complex: &Complex) -> Result<CollapseSequence> {
    verify_certificate(complex, cert)?;
    let (pairs, final_vertex) = extract(complex, cert)?;
    let mut seq = CollapseSequence {
        pairs,
        final_vertex,
    };
    seq.canonicalize(complex);
    replay_collapses(complex, &seq).map_err(|e| match e {
        ComplexError::NotFreePair { .. } | ComplexError::ReplayMismatch { .. } => {
            assertion("collapse-replay", e.to_string())
        }
        other => other.into(),
    })?;
    Ok(seq)
}
