//! Acceptance gate: every criterion over the full corpus, one line each.
//! Run with `cargo test -p nonevade --test acceptance`.

use std::io::Write;
use std::time::Instant;

use nonevade::certifier::{certify, Certificate};
use nonevade::lattice::{generate, Family, GenerateParams};
use nonevade::oracles::{brute_nonevasive, mobius};
use nonevade::suite::{corpus, random_complex, run_suite, SuiteConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn acceptance_criteria() {
    let config = SuiteConfig::default();
    let start = Instant::now();
    let report = run_suite(&config);
    let elapsed = start.elapsed();
    // written past the test harness capture so the lines show in every run
    let mut err = std::io::stderr().lock();
    let _ = writeln!(
        err,
        "corpus: {} lattices, {} instances, seed {}, {:.1?}",
        report.lattices, report.instances, report.seed, elapsed
    );
    for c in &report.criteria {
        let _ = writeln!(
            err,
            "{} criterion {}: {} ({} checks)",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            c.checked
        );
        for f in &c.failures {
            let _ = writeln!(err, "    {f}");
        }
    }
    assert_eq!(report.criteria.len(), 7);
    assert!(report.passed(), "acceptance criteria failed");
}

#[test]
fn corpus_shape() {
    let c = corpus(&SuiteConfig::default());
    assert_eq!(c.len(), 19 + 500);
    assert!(c.iter().all(|l| l.lattice.len() <= 60));
    let random = c.iter().filter(|l| l.name.starts_with("random-"));
    assert!(random.clone().all(|l| l.lattice.len() <= 14));
    // the query-bound criterion must cover every instance
    assert!(c.iter().all(|l| l.lattice.len() - 2 <= 16));
}

#[test]
fn random_complexes_include_both_verdicts() {
    let config = SuiteConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
    let verdicts: Vec<bool> = (0..config.random_complexes)
        .map(|_| brute_nonevasive(&random_complex(&mut rng), config.caps.nonevasive).unwrap())
        .collect();
    assert!(verdicts.iter().any(|&v| v));
    assert!(verdicts.iter().any(|&v| !v));
}

#[test]
fn spot_values() {
    let d12 = generate(Family::Divisor, &GenerateParams::new(12)).unwrap();
    let (cert, _) = certify(&d12, "2").unwrap();
    match cert {
        Certificate::Split { vertex, z, .. } => {
            assert_eq!((vertex.as_str(), z.as_str()), ("3", "6"))
        }
        other => panic!("expected a split, got {other:?}"),
    }
    let b2 = generate(Family::Boolean, &GenerateParams::new(2)).unwrap();
    assert_eq!(
        certify(&b2, "a").unwrap().0,
        Certificate::Prune {
            removed: vec!["b".into()],
            child: Box::new(Certificate::leaf("a")),
        }
    );
    assert_eq!(
        mobius(&generate(Family::Boolean, &GenerateParams::new(3)).unwrap()),
        -1
    );
    assert_eq!(mobius(&d12), 0);
}
