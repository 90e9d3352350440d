//! Test-only oracles, independent of the library's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::Rng;
use seifert_ob::SeifertInvariants;

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => i128::from(m[0][0]),
        _ => (0..n)
            .map(|j| {
                if m[0][j] == 0 {
                    return 0;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * i128::from(m[0][j]) * cofactor_det(&minor)
            })
            .sum(),
    }
}

pub type Units = Vec<(String, i8)>;

pub fn commute(disjoint: &BTreeSet<(String, String)>, a: &str, b: &str) -> bool {
    a == b || disjoint.contains(&(a.to_string(), b.to_string())) || disjoint.contains(&(b.to_string(), a.to_string()))
}

/// Every word reachable from `start` by swapping adjacent commuting units and
/// deleting adjacent inverse pairs.
pub fn closure(start: &Units, disjoint: &BTreeSet<(String, String)>) -> HashSet<Units> {
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (&w[i], &w[i + 1]);
            let next = if a.0 == b.0 && a.1 == -b.1 {
                let mut n = w.clone();
                n.drain(i..i + 2);
                n
            } else if a.0 != b.0 && commute(disjoint, &a.0, &b.0) {
                let mut n = w.clone();
                n.swap(i, i + 1);
                n
            } else {
                continue;
            };
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Equality modulo free reduction and transpositions by exhaustive search.
pub fn brute_equivalent(u: &Units, v: &Units, disjoint: &BTreeSet<(String, String)>) -> bool {
    let a = closure(u, disjoint);
    let b = closure(v, disjoint);
    let min_a = a.iter().map(Vec::len).min().unwrap();
    let min_b = b.iter().map(Vec::len).min().unwrap();
    min_a == min_b && a.iter().filter(|w| w.len() == min_a).any(|w| b.contains(w))
}

/// Random eligible invariants with `g <= 3`, `-5 <= n <= 0`, `k <= 5`, `1 <= p_i <= 9`.
pub fn random_eligible<R: Rng>(rng: &mut R) -> SeifertInvariants {
    let g = rng.gen_range(0..=3);
    let n = rng.gen_range(-5..=0);
    let k = rng.gen_range(0..=5);
    let ps: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=9)).collect();
    SeifertInvariants::from_multiplicities(g, n, &ps).unwrap()
}
