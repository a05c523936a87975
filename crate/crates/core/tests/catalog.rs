use std::collections::HashSet;

use factorcrit::graph::{encode_graph6, parse_graph6};
use factorcrit::search::{canonical_code, generate};

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Unlabelled graphs on `n` vertices by Burnside's lemma over the cycle
/// types of the symmetric group acting on vertex pairs.
fn burnside_count(n: u32) -> u128 {
    let factorial: u128 = (1..=n as u128).product();
    let mut total: u128 = 0;
    for cycles in partitions(n, n) {
        // permutations with this cycle type: n! / prod(len^m * m!)
        let mut denom: u128 = 1;
        let mut len = 0;
        while len < cycles.len() {
            let l = cycles[len];
            let m = cycles.iter().filter(|&&c| c == l).count() as u128;
            denom *= (l as u128).pow(m as u32) * (1..=m).product::<u128>();
            len += m as usize;
        }
        let mut pair_cycles: u32 = cycles.iter().map(|&a| a / 2).sum();
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                pair_cycles += gcd(cycles[i], cycles[j]);
            }
        }
        total += factorial / denom * (1u128 << pair_cycles);
    }
    total / factorial
}

#[test]
fn burnside_oracle_matches_known_values() {
    let known = [1u128, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668];
    for (n, &want) in known.iter().enumerate() {
        assert_eq!(burnside_count(n as u32), want, "n = {n}");
    }
}

#[test]
fn generator_counts_match_burnside() {
    for n in 1..=9usize {
        let cat = generate(n).unwrap();
        assert_eq!(cat.len() as u128, burnside_count(n as u32), "n = {n}");
    }
}

#[test]
fn catalog_is_isomorph_free_and_round_trips() {
    for n in 1..=8 {
        let cat = generate(n).unwrap();
        let mut seen = HashSet::new();
        for g in &cat.graphs {
            assert_eq!(g.order(), n);
            assert!(seen.insert(canonical_code(g)), "duplicate class at n = {n}");
            assert_eq!(&parse_graph6(encode_graph6(g).as_bytes()).unwrap(), g);
        }
    }
}
