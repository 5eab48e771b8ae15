use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::{Lattice, Poset};

/// Dedekind–MacNeille completion.
///
/// The closed lower sets L(U(A)) are exactly the intersections of principal
/// down-sets (the empty intersection being the whole ground set), so the
/// family is grown by intersecting with principal down-sets until it is
/// stable. Cuts that are principal keep the label of their generator; the
/// others are named after their maximal members, e.g. `[a+b]`, with `[]`
/// for the empty cut.
pub fn dedekind_macneille(poset: &Poset) -> Lattice {
    let n = poset.len();
    let mut full = FixedBitSet::with_capacity(n);
    full.insert_range(..);
    let generators: Vec<FixedBitSet> = (0..n).map(|p| poset.down_set(p).clone()).collect();

    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut queue: VecDeque<FixedBitSet> = VecDeque::new();
    for s in std::iter::once(full).chain(generators.iter().cloned()) {
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for g in &generators {
            let mut t = s.clone();
            t.intersect_with(g);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }

    let mut cuts: Vec<FixedBitSet> = seen.into_iter().collect();
    cuts.sort_by_key(|c| (c.count_ones(..), c.ones().collect::<Vec<_>>()));

    let principal: HashMap<&FixedBitSet, usize> =
        generators.iter().enumerate().map(|(p, g)| (g, p)).collect();
    let mut used: HashSet<String> = HashSet::new();
    let labels: Vec<String> = cuts
        .iter()
        .map(|c| {
            let mut label = match principal.get(c) {
                Some(&p) => poset.label(p).to_string(),
                None => {
                    let tops: Vec<&str> = c
                        .ones()
                        .filter(|&w| poset.up_set(w).intersection(c).count() == 1)
                        .map(|w| poset.label(w))
                        .collect();
                    format!("[{}]", tops.join("+"))
                }
            };
            while !used.insert(label.clone()) {
                label.push('\'');
            }
            label
        })
        .collect();

    let order = Poset::from_relation(labels, |a, b| cuts[a].is_subset(&cuts[b]))
        .expect("inclusion of cuts is a partial order");
    Lattice::from_poset(order).expect("cut family of a finite poset is a lattice")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antichain(labels: &[&str]) -> Poset {
        Poset::from_covers(labels.iter().map(|s| s.to_string()).collect(), &[]).unwrap()
    }

    #[test]
    fn antichain_of_two_completes_to_b2() {
        let l = dedekind_macneille(&antichain(&["a", "b"]));
        assert_eq!(l.labels(), &["[]", "a", "b", "[a+b]"]);
        assert_eq!(l.atoms(), vec![1, 2]);
        assert_eq!(l.coatoms(), vec![1, 2]);
    }

    #[test]
    fn lattice_is_its_own_completion() {
        let d12 = crate::lattice::tests::d12();
        let l = dedekind_macneille(d12.poset());
        assert_eq!(l, d12);
    }

    #[test]
    fn empty_poset_gives_one_element() {
        let l = dedekind_macneille(&antichain(&[]));
        assert_eq!(l.len(), 1);
        assert_eq!(l.bottom(), l.top());
    }

    #[test]
    fn bowtie_gains_one_cut() {
        let p = Poset::from_covers(
            ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(),
            &[
                ("a".into(), "c".into()),
                ("a".into(), "d".into()),
                ("b".into(), "c".into()),
                ("b".into(), "d".into()),
            ],
        )
        .unwrap();
        let l = dedekind_macneille(&p);
        // bottom, a, b, the middle cut {a,b}, c, d, top
        assert_eq!(l.len(), 7);
        assert!(l.labels().contains(&"[a+b]".to_string()));
    }
}
