use nonevade::caps::Caps;
use nonevade::certifier::{certify, extract_collapses, noncomplement_complex, verify_certificate};
use nonevade::complex::proper_part_reduced_euler;
use nonevade::lattice::{generate, parse_lattice, Family, GenerateParams, Lattice};
use nonevade::oracles::{brute_collapsible, brute_nonevasive, mobius};
use nonevade::suite::random_complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lattice() -> impl Strategy<Value = Lattice> {
    (2u64..=8, 0.1f64..0.7, any::<u64>()).prop_map(|(n, p, seed)| {
        generate(
            Family::Random,
            &GenerateParams {
                n,
                m: None,
                p,
                seed,
            },
        )
        .unwrap()
    })
}

fn pairs(l: &Lattice) -> impl Iterator<Item = (usize, usize)> {
    let n = l.len();
    (0..n).flat_map(move |u| (0..n).map(move |v| (u, v)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn meet_join_laws(l in lattice()) {
        for (u, v) in pairs(&l) {
            let (m, j) = (l.meet(u, v), l.join(u, v));
            prop_assert_eq!(m, l.meet(v, u));
            prop_assert_eq!(j, l.join(v, u));
            prop_assert_eq!(l.meet(u, j), u);
            prop_assert_eq!(l.join(u, m), u);
            prop_assert_eq!(m == u, l.leq(u, v));
            prop_assert_eq!(j == v, l.leq(u, v));
        }
        for (u, v) in pairs(&l) {
            for w in 0..l.len() {
                prop_assert_eq!(l.meet(l.meet(u, v), w), l.meet(u, l.meet(v, w)));
            }
        }
    }

    #[test]
    fn text_round_trip(l in lattice()) {
        let again = parse_lattice(&l.to_text()).unwrap();
        prop_assert_eq!(again.to_text(), l.to_text());
    }

    #[test]
    fn dual_is_an_involution_preserving_complements(l in lattice()) {
        let d = l.dual();
        prop_assert_eq!(d.dual().to_text(), l.to_text());
        for (u, v) in pairs(&l) {
            prop_assert_eq!(d.meet(u, v), l.join(u, v));
            prop_assert_eq!(l.is_complement(u, v), l.is_complement(v, u));
            prop_assert_eq!(l.is_complement(u, v), d.is_complement(u, v));
        }
        prop_assert_eq!(mobius(&d), mobius(&l));
    }

    #[test]
    fn removing_a_noncomplementary_atom_keeps_complements(l in lattice()) {
        for x in l.interior() {
            for y in l.atoms() {
                if y == x || l.leq(y, x) || l.is_complement(x, y) {
                    continue;
                }
                let smaller = l.remove_atom(y).unwrap();
                let x_label = l.label(x);
                prop_assert_eq!(
                    smaller.complements_of(x_label).unwrap(),
                    l.complements_of(x_label).unwrap()
                );
            }
        }
    }

    #[test]
    fn euler_characteristic_is_mobius(l in lattice()) {
        prop_assert_eq!(proper_part_reduced_euler(&l), mobius(&l));
    }

    #[test]
    fn certificates_verify_and_collapse(l in lattice()) {
        for x in l.interior() {
            let x = l.label(x).to_string();
            let (cert, trace) = certify(&l, &x).unwrap();
            let complex = noncomplement_complex(&l, &x).unwrap();
            verify_certificate(&complex, &cert).unwrap();
            prop_assert_eq!(trace.replay(&l, &x).unwrap(), cert.clone());
            let seq = extract_collapses(&cert, &complex).unwrap();
            prop_assert_eq!(seq.pairs.len() * 2 + 1, complex.face_count());
            prop_assert_eq!(complex.reduced_euler(), 0);
        }
    }

    #[test]
    fn nonevasive_implies_collapsible_implies_acyclic(seed in any::<u64>()) {
        let caps = Caps::default();
        let complex = random_complex(&mut ChaCha8Rng::seed_from_u64(seed));
        let collapsible = brute_collapsible(&complex, caps.collapse).unwrap();
        if brute_nonevasive(&complex, caps.nonevasive).unwrap() {
            prop_assert!(collapsible.is_some());
        }
        if collapsible.is_some() {
            prop_assert_eq!(complex.reduced_euler(), 0);
        }
    }
}
