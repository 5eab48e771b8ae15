//! The reference corpus and the end-to-end cross-check run by `nonevade suite`.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::certifier::{
    certify_with, extract_collapses, noncomplement_complex, verify_certificate, Certificate,
    CertifyOptions, SplitMode, WitnessKind,
};
use crate::complex::{proper_part_reduced_euler, replay_collapses, Complex};
use crate::game::{compile_strategy, exhaustive_check};
use crate::lattice::{generate, Family, GenerateParams, Lattice};
use crate::oracles::{
    brute_nonevasive, brute_nonevasive_witness, find_noncomplemented_element, mobius,
};

/// Interior size up to which the definitional nonevasiveness oracle runs.
pub const BRUTE_INTERIOR_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub caps: Caps,
    pub seed: u64,
    pub random_lattices: usize,
    pub random_max_elements: usize,
    pub random_complexes: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            caps: Caps::default(),
            seed: 1997,
            random_lattices: 500,
            random_max_elements: 14,
            random_complexes: 50,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusLattice {
    pub name: String,
    pub lattice: Lattice,
}

fn named(name: &str, family: Family, params: GenerateParams) -> CorpusLattice {
    CorpusLattice {
        name: name.to_string(),
        lattice: generate(family, &params).expect("corpus families are in range"),
    }
}

/// Random lattices: completions of random posets on 3–8 points, kept when
/// they have between 3 and `max_elements` elements. Names carry the seed
/// that regenerates them with `gen random`.
pub fn random_lattices(seed: u64, count: usize, max_elements: usize) -> Vec<CorpusLattice> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let params = GenerateParams {
            n: rng.random_range(3..=8),
            m: None,
            p: rng.random_range(0.15..0.6),
            seed: rng.random(),
        };
        let lattice = generate(Family::Random, &params).expect("random parameters are in range");
        if (3..=max_elements).contains(&lattice.len()) {
            out.push(CorpusLattice {
                name: format!(
                    "random-{:03}-n{}-p{}-s{}",
                    out.len(),
                    params.n,
                    params.p,
                    params.seed
                ),
                lattice,
            });
        }
    }
    out
}

/// The fixed families plus the random lattices, sorted by name.
pub fn corpus(config: &SuiteConfig) -> Vec<CorpusLattice> {
    let p = GenerateParams::new;
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push(named(&format!("chain-{n}"), Family::Chain, p(n)));
    }
    for n in 2..=4 {
        out.push(named(&format!("boolean-{n}"), Family::Boolean, p(n)));
    }
    for n in [12, 24, 36, 60] {
        out.push(named(&format!("divisor-{n:02}"), Family::Divisor, p(n)));
    }
    for n in [3, 4] {
        out.push(named(&format!("partition-{n}"), Family::Partition, p(n)));
    }
    out.push(named("m3", Family::Diamond, p(3)));
    out.push(named("n5", Family::Pentagon, p(0)));
    out.push(named(
        "product-3x3",
        Family::Product,
        GenerateParams { m: Some(3), ..p(3) },
    ));
    out.extend(random_lattices(
        config.seed,
        config.random_lattices,
        config.random_max_elements,
    ));
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// Every (lattice, x) pair with x ∈ L̄.
pub fn instances(corpus: &[CorpusLattice]) -> Vec<(&CorpusLattice, String)> {
    corpus
        .iter()
        .flat_map(|c| {
            c.lattice
                .interior()
                .into_iter()
                .map(move |x| (c, c.lattice.label(x).to_string()))
        })
        .collect()
}

/// A random complex on 2–7 vertices; about half are cones, which are
/// always nonevasive, so both verdicts occur.
pub fn random_complex(rng: &mut impl Rng) -> Complex {
    let n = rng.random_range(2..=7usize);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut faces: Vec<Vec<String>> = (0..rng.random_range(1..=5))
        .map(|_| {
            let size = rng.random_range(1..=4.min(n));
            vertices.choose_multiple(rng, size).cloned().collect()
        })
        .collect();
    if rng.random_bool(0.5) {
        let apex = vertices[0].clone();
        for f in &mut faces {
            if !f.contains(&apex) {
                f.push(apex.clone());
            }
        }
        // isolated vertices would break the cone
        for v in &vertices[1..] {
            faces.push(vec![apex.clone(), v.clone()]);
        }
    }
    Complex::new(vertices, &faces).expect("faces use known vertices")
}

/// A certificate that splits on uniformly random vertices. It verifies only
/// when every random choice happens to work.
pub fn random_certificate(complex: &Complex, rng: &mut impl Rng) -> Certificate {
    let vertex = complex
        .vertices()
        .choose(rng)
        .expect("complexes have vertices")
        .clone();
    if complex.is_point() {
        return Certificate::leaf(&vertex);
    }
    let dl = random_certificate(
        &complex.deletion(&vertex).expect("two or more vertices"),
        rng,
    );
    let (lk, z) = match complex.link(&vertex) {
        Ok(link) => (random_certificate(&link, rng), link.vertices()[0].clone()),
        Err(_) => (Certificate::leaf(&vertex), vertex.clone()),
    };
    Certificate::Split {
        vertex,
        mode: SplitMode::Case2Atom,
        z,
        dl: Box::new(dl),
        lk: Box::new(lk),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub lattices: usize,
    pub instances: usize,
    pub criteria: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, id: u8, title: &'static str) -> CriterionResult {
        CriterionResult {
            id,
            title,
            passed: self.failures.is_empty() && self.checked > 0,
            checked: self.checked,
            failures: self.failures.into_iter().take(10).collect(),
        }
    }
}

/// Per-instance results for criteria 1, 2 (corpus part), 3, 4 and 6.
struct InstanceOutcome {
    name: String,
    certified: Result<(), String>,
    brute: Option<Result<bool, String>>,
    collapses: Option<Result<(), String>>,
    game: Option<Result<(), String>>,
    identities: Option<Result<(), String>>,
}

impl InstanceOutcome {
    /// Without a certificate the downstream criteria fail as well.
    fn uncertified(mut self, error: String) -> Self {
        let failed = Some(Err("no certificate".to_string()));
        self.collapses = failed.clone();
        self.game = failed.clone();
        self.identities = failed;
        self.certified = Err(error);
        self
    }
}

fn run_instance(corpus: &CorpusLattice, x: &str, caps: Caps) -> InstanceOutcome {
    let mut out = InstanceOutcome {
        name: format!("{} x={x}", corpus.name),
        certified: Ok(()),
        brute: None,
        collapses: None,
        game: None,
        identities: None,
    };
    let l = &corpus.lattice;
    let audited = CertifyOptions {
        check_identities: true,
    };
    let (cert, trace) = match certify_with(l, x, audited) {
        Ok(r) => r,
        Err(e) => return out.uncertified(e.to_string()),
    };
    let complex = match noncomplement_complex(l, x) {
        Ok(c) => c,
        Err(e) => return out.uncertified(e.to_string()),
    };
    out.certified = verify_certificate(&complex, &cert).map_err(|e| e.to_string());
    let splits = trace.split_events().count();
    let all_checked = [
        WitnessKind::DeletionComplements,
        WitnessKind::LinkComplements,
        WitnessKind::DeletionIdentity,
        WitnessKind::LinkIdentity,
    ]
    .iter()
    .all(|&k| trace.count_checked(k) == splits);
    out.identities = Some(if all_checked && splits == cert.splits() {
        Ok(())
    } else {
        Err(format!("{splits} splits, witness checks incomplete"))
    });
    if complex.vertex_count() <= BRUTE_INTERIOR_LIMIT {
        out.brute = Some(brute_nonevasive(&complex, caps.nonevasive).map_err(|e| e.to_string()));
    }
    out.collapses = Some((|| {
        let seq = extract_collapses(&cert, &complex).map_err(|e| e.to_string())?;
        replay_collapses(&complex, &seq).map_err(|e| e.to_string())?;
        let faces = complex.face_count();
        if seq.pairs.len() * 2 + 1 != faces {
            return Err(format!("{} pairs for {faces} faces", seq.pairs.len()));
        }
        Ok(())
    })());
    if complex.vertex_count() <= caps.game {
        out.game = Some((|| {
            let ground = complex.vertices().to_vec();
            let strategy = compile_strategy(&cert, &ground).map_err(|e| e.to_string())?;
            let report =
                exhaustive_check(&strategy, &ground, l, caps.game).map_err(|e| e.to_string())?;
            let budget = ground.len() - 1;
            if report.mismatches != 0 || report.max_queries > budget {
                return Err(format!(
                    "{} mismatches, {} queries (budget {budget})",
                    report.mismatches, report.max_queries
                ));
            }
            Ok(())
        })());
    }
    out
}

/// Runs every acceptance criterion over the corpus.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let corpus = corpus(config);
    let instances = instances(&corpus);
    let outcomes: Vec<InstanceOutcome> = instances
        .par_iter()
        .map(|(c, x)| run_instance(c, x, config.caps))
        .collect();

    let mut c1 = Tally::default();
    let mut c2 = Tally::default();
    let mut c3 = Tally::default();
    let mut c4 = Tally::default();
    let mut c6 = Tally::default();
    for o in &outcomes {
        c1.check(o.certified.is_ok(), || {
            format!("{}: {:?}", o.name, o.certified)
        });
        if let Some(b) = &o.brute {
            c2.check(b == &Ok(true), || format!("{}: {b:?}", o.name));
        }
        if let Some(r) = &o.collapses {
            c3.check(r.is_ok(), || format!("{}: {r:?}", o.name));
        }
        if let Some(r) = &o.game {
            c4.check(r.is_ok(), || format!("{}: {r:?}", o.name));
        }
        if let Some(r) = &o.identities {
            c6.check(r.is_ok(), || format!("{}: {r:?}", o.name));
        }
    }

    // Random complexes: a certificate may verify only if the oracle agrees.
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
    for i in 0..config.random_complexes {
        let complex = random_complex(&mut rng);
        let Ok(truth) = brute_nonevasive(&complex, config.caps.nonevasive) else {
            c2.check(false, || format!("random complex {i}: over cap"));
            continue;
        };
        let mut candidates: Vec<Certificate> = (0..20)
            .map(|_| random_certificate(&complex, &mut rng))
            .collect();
        if let Ok(Some(w)) = brute_nonevasive_witness(&complex, config.caps.nonevasive) {
            candidates.push(w);
        }
        for cert in candidates {
            let accepted = verify_certificate(&complex, &cert).is_ok();
            c2.check(!accepted || truth, || {
                format!("random complex {i}: accepted an evasive complex")
            });
        }
    }

    let mut c5 = Tally::default();
    for c in &corpus {
        let mu = mobius(&c.lattice);
        let euler = proper_part_reduced_euler(&c.lattice);
        c5.check(euler == mu, || format!("{}: χ̃ = {euler}, μ = {mu}", c.name));
        if find_noncomplemented_element(&c.lattice).is_some() {
            c5.check(mu == 0, || {
                format!("{}: noncomplemented but μ = {mu}", c.name)
            });
        }
    }

    let mut c7 = Tally::default();
    for (what, ok) in spot_checks() {
        c7.check(ok, || what.to_string());
    }

    SuiteReport {
        seed: config.seed,
        lattices: corpus.len(),
        instances: instances.len(),
        criteria: vec![
            c1.finish(1, "universal certification"),
            c2.finish(2, "oracle equivalence"),
            c3.finish(3, "collapse extraction"),
            c4.finish(4, "query bound"),
            c5.finish(5, "Möbius / Euler characteristic"),
            c6.finish(6, "link/deletion identities and complement witnesses"),
            c7.finish(7, "known-value spot checks"),
        ],
    }
}

fn spot_checks() -> Vec<(&'static str, bool)> {
    let gen = |f, n| generate(f, &GenerateParams::new(n)).expect("in range");
    let d12 = gen(Family::Divisor, 12);
    let d12_root = certify_with(&d12, "2", CertifyOptions::default())
        .map(|(c, _)| matches!(&c, Certificate::Split { vertex, z, .. } if vertex == "3" && z == "6"))
        .unwrap_or(false);
    let b2 = certify_with(&gen(Family::Boolean, 2), "a", CertifyOptions::default())
        .map(|(c, _)| {
            c == Certificate::Prune {
                removed: vec!["b".into()],
                child: Box::new(Certificate::leaf("a")),
            }
        })
        .unwrap_or(false);
    vec![
        ("certify(D12, 2) splits at 3 with z = 6", d12_root),
        ("certify(B2, a) = Prune{{b}, Leaf(a)}", b2),
        ("mobius(B3) = -1", mobius(&gen(Family::Boolean, 3)) == -1),
        ("mobius(D12) = 0", mobius(&d12) == 0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_sorted_and_bounded() {
        let config = SuiteConfig {
            random_lattices: 20,
            ..Default::default()
        };
        let c = corpus(&config);
        assert_eq!(c.len(), 19 + 20);
        assert!(c.windows(2).all(|w| w[0].name < w[1].name));
        assert!(c
            .iter()
            .filter(|l| l.name.starts_with("random"))
            .all(|l| (3..=14).contains(&l.lattice.len())));
    }

    #[test]
    fn random_lattice_names_regenerate() {
        let lattices = random_lattices(7, 3, 14);
        for l in lattices {
            let parts: Vec<&str> = l.name.split('-').collect();
            let n = parts[2][1..].parse().unwrap();
            let p = parts[3][1..].parse().unwrap();
            let seed = parts[4][1..].parse().unwrap();
            let again = generate(
                Family::Random,
                &GenerateParams {
                    n,
                    m: None,
                    p,
                    seed,
                },
            )
            .unwrap();
            assert_eq!(again.labels(), l.lattice.labels());
            assert_eq!(again.poset().cover_pairs(), l.lattice.poset().cover_pairs());
        }
    }

    #[test]
    fn small_suite_passes() {
        let config = SuiteConfig {
            random_lattices: 10,
            random_complexes: 10,
            ..Default::default()
        };
        let report = run_suite(&config);
        for c in &report.criteria {
            assert!(c.passed, "criterion {} failed: {:?}", c.id, c.failures);
        }
    }
}
