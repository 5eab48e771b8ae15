//! Named lattice families and the seeded random generator.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{dedekind_macneille, Lattice, LatticeError, Poset, Result};

/// Upper bound on the number of elements any generator will produce.
/// Lattices carry dense meet/join tables, so this stays well below 2^16.
pub const MAX_GENERATED_ELEMENTS: usize = 4096;

/// Largest ground set the random generator draws a poset on.
const MAX_RANDOM_POINTS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Chain,
    Boolean,
    Divisor,
    Partition,
    /// Product of two chains with `m` and `n` elements.
    Product,
    /// M_n: `n` pairwise incomparable atoms between 0̂ and 1̂.
    Diamond,
    Pentagon,
    Random,
}

impl FromStr for Family {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "chain" => Family::Chain,
            "boolean" => Family::Boolean,
            "divisor" => Family::Divisor,
            "partition" => Family::Partition,
            "product" => Family::Product,
            "diamond" | "mn" | "m3" => Family::Diamond,
            "pentagon" | "n5" => Family::Pentagon,
            "random" => Family::Random,
            _ => return Err(LatticeError::UnknownFamily(s.to_string())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Chain => "chain",
            Family::Boolean => "boolean",
            Family::Divisor => "divisor",
            Family::Partition => "partition",
            Family::Product => "product",
            Family::Diamond => "diamond",
            Family::Pentagon => "pentagon",
            Family::Random => "random",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerateParams {
    pub n: u64,
    /// Second factor for `product`; defaults to `n`.
    pub m: Option<u64>,
    /// Edge probability for `random`.
    pub p: f64,
    pub seed: u64,
}

impl GenerateParams {
    pub fn new(n: u64) -> Self {
        GenerateParams {
            n,
            m: None,
            p: 0.3,
            seed: 0,
        }
    }
}

fn out_of_range(msg: impl Into<String>) -> LatticeError {
    LatticeError::ParamOutOfRange(msg.into())
}

fn check_size(family: Family, size: u128) -> Result<usize> {
    if size == 0 || size > MAX_GENERATED_ELEMENTS as u128 {
        Err(out_of_range(format!(
            "{family} would have {size} elements (allowed 1..={MAX_GENERATED_ELEMENTS})"
        )))
    } else {
        Ok(size as usize)
    }
}

pub fn generate(family: Family, params: &GenerateParams) -> Result<Lattice> {
    let n = params.n;
    match family {
        Family::Chain => chain(check_size(family, n as u128)?),
        Family::Boolean => {
            if n > 63 {
                return Err(out_of_range("boolean rank too large"));
            }
            check_size(family, 1u128 << n)?;
            boolean(n as usize)
        }
        Family::Divisor => {
            if n == 0 || n > 1_000_000_000_000 {
                return Err(out_of_range("divisor lattice needs 1 <= n <= 10^12"));
            }
            divisor(n)
        }
        Family::Partition => {
            // Bell(7) = 877, Bell(8) = 4140.
            if !(1..=7).contains(&n) {
                return Err(out_of_range("partition lattice needs 1 <= n <= 7"));
            }
            partition(n as usize)
        }
        Family::Product => {
            let m = params.m.unwrap_or(n);
            check_size(family, n as u128 * m as u128)?;
            Lattice::product(&chain(n as usize)?, &chain(m as usize)?)
        }
        Family::Diamond => diamond(check_size(family, n as u128 + 2)? - 2),
        Family::Pentagon => Lattice::from_cover_strs(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        ),
        Family::Random => {
            if n as usize > MAX_RANDOM_POINTS {
                return Err(out_of_range(format!(
                    "random posets are drawn on at most {MAX_RANDOM_POINTS} points"
                )));
            }
            if !(0.0..=1.0).contains(&params.p) {
                return Err(out_of_range("edge probability must lie in [0, 1]"));
            }
            let l = random(n as usize, params.p, params.seed);
            check_size(family, l.len() as u128)?;
            Ok(l)
        }
    }
}

/// Interior labels a, b, ..., z, then e26, e27, ...
fn interior_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("e{i}")
    }
}

fn chain(n: usize) -> Result<Lattice> {
    let labels: Vec<String> = match n {
        0 => return Err(out_of_range("chain needs at least one element")),
        1 => vec!["0".into()],
        _ => std::iter::once("0".to_string())
            .chain((0..n - 2).map(interior_label))
            .chain(std::iter::once("1".to_string()))
            .collect(),
    };
    Poset::from_relation(labels, |u, v| u <= v).and_then(Lattice::from_poset)
}

fn boolean(n: usize) -> Result<Lattice> {
    let full = (1u64 << n) - 1;
    let mut sets: Vec<u64> = (0..=full).collect();
    sets.sort_by_key(|&s| {
        let members: Vec<u32> = (0..n as u32).filter(|i| s >> i & 1 == 1).collect();
        (s.count_ones(), members)
    });
    let labels = sets
        .iter()
        .map(|&s| {
            if s == 0 {
                "0".to_string()
            } else if s == full {
                "1".to_string()
            } else {
                (0..n)
                    .filter(|i| s >> i & 1 == 1)
                    .map(interior_label)
                    .collect()
            }
        })
        .collect();
    Poset::from_relation(labels, |u, v| sets[u] & !sets[v] == 0).and_then(Lattice::from_poset)
}

fn divisor(n: u64) -> Result<Lattice> {
    let mut divs: Vec<u64> = (1..)
        .take_while(|d| d * d <= n)
        .filter(|d| n.is_multiple_of(*d))
        .flat_map(|d| [d, n / d])
        .collect();
    divs.sort_unstable();
    divs.dedup();
    check_size(Family::Divisor, divs.len() as u128)?;
    let labels = divs.iter().map(u64::to_string).collect();
    Poset::from_relation(labels, |u, v| divs[v].is_multiple_of(divs[u]))
        .and_then(Lattice::from_poset)
}

/// Set partitions of {1..n} as block-index vectors (restricted growth strings).
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            extend(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    extend(&mut prefix, 0, n, &mut out);
    out
}

fn partition(n: usize) -> Result<Lattice> {
    let mut parts = set_partitions(n);
    let blocks = |p: &Vec<usize>| p.iter().max().map_or(0, |m| m + 1);
    parts.sort_by_key(|p| (std::cmp::Reverse(blocks(p)), p.clone()));
    let labels = parts
        .iter()
        .map(|p| {
            (0..blocks(p))
                .map(|b| {
                    (0..n)
                        .filter(|&i| p[i] == b)
                        .map(|i| (i + 1).to_string())
                        .collect::<String>()
                })
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect();
    // p refines q iff elements sharing a block of p share a block of q.
    let refines = |p: &Vec<usize>, q: &Vec<usize>| {
        (0..n).all(|i| (0..n).all(|j| p[i] != p[j] || q[i] == q[j]))
    };
    Poset::from_relation(labels, |u, v| refines(&parts[u], &parts[v])).and_then(Lattice::from_poset)
}

fn diamond(atoms: usize) -> Result<Lattice> {
    let labels: Vec<String> = std::iter::once("0".to_string())
        .chain((0..atoms).map(interior_label))
        .chain(std::iter::once("1".to_string()))
        .collect();
    let top = atoms + 1;
    Poset::from_relation(labels, |u, v| u == v || u == 0 || v == top).and_then(Lattice::from_poset)
}

/// Dedekind–MacNeille completion of a random poset on `n` points: each pair
/// `i < j` is related independently with probability `p`, then closed
/// transitively.
fn random(n: usize, p: f64, seed: u64) -> Lattice {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut covers = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(p) {
                covers.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    let poset = Poset::from_covers(labels, &covers).expect("forward edges are acyclic");
    dedekind_macneille(&poset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(family: &str, n: u64) -> Lattice {
        generate(family.parse().unwrap(), &GenerateParams::new(n)).unwrap()
    }

    #[test]
    fn chain_four() {
        let l = gen("chain", 4);
        assert_eq!(l.labels(), &["0", "a", "b", "1"]);
        assert_eq!(l.atoms(), vec![1]);
    }

    #[test]
    fn boolean_three() {
        let l = gen("boolean", 3);
        assert_eq!(l.labels(), &["0", "a", "b", "c", "ab", "ac", "bc", "1"]);
        let a = l.index_of("a").unwrap();
        let i = l.interval(a, l.top()).unwrap();
        assert_eq!(i.labels(), &["a", "ab", "ac", "1"]);
        assert_eq!(i.atoms().len(), 2);
    }

    #[test]
    fn divisor_twelve_matches_cover_file() {
        assert_eq!(gen("divisor", 12), crate::lattice::tests::d12());
        assert_eq!(gen("divisor", 60).len(), 12);
    }

    #[test]
    fn partition_lattices() {
        let p3 = gen("partition", 3);
        assert_eq!(p3.len(), 5);
        assert_eq!(p3.label(p3.bottom()), "1|2|3");
        assert_eq!(p3.label(p3.top()), "123");
        assert_eq!(gen("partition", 4).len(), 15);
    }

    #[test]
    fn small_named_lattices() {
        assert_eq!(gen("m3", 3).atoms().len(), 3);
        let n5 = gen("n5", 0);
        assert_eq!(n5.len(), 5);
        let prod = generate(
            Family::Product,
            &GenerateParams {
                m: Some(3),
                ..GenerateParams::new(3)
            },
        )
        .unwrap();
        assert_eq!(prod.len(), 9);
    }

    #[test]
    fn random_is_reproducible() {
        let params = GenerateParams {
            p: 0.35,
            seed: 17,
            ..GenerateParams::new(7)
        };
        let a = generate(Family::Random, &params).unwrap();
        let b = generate(Family::Random, &params).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn range_errors() {
        assert!(matches!(
            "cube".parse::<Family>(),
            Err(LatticeError::UnknownFamily(_))
        ));
        let too_big = generate(Family::Boolean, &GenerateParams::new(13));
        assert!(matches!(too_big, Err(LatticeError::ParamOutOfRange(_))));
        let zero = generate(Family::Chain, &GenerateParams::new(0));
        assert!(matches!(zero, Err(LatticeError::ParamOutOfRange(_))));
        let bad_p = generate(
            Family::Random,
            &GenerateParams {
                p: 1.5,
                ..GenerateParams::new(4)
            },
        );
        assert!(matches!(bad_p, Err(LatticeError::ParamOutOfRange(_))));
    }
}
