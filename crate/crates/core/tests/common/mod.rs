//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use omegalat::lattice::{small, FinLattice};
use omegalat::poset::Poset;

/// Every lattice with at most `max` elements, up to isomorphism with
/// repetitions: a bottom and a top around each naturally labelled poset on
/// `max - 2` or fewer elements.
pub fn all_small_lattices(max: usize) -> Vec<FinLattice> {
    let mut out = vec![small::chain(1)];
    for k in 0..=max.saturating_sub(2) {
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let rel: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            if !transitive(k, &rel) {
                continue;
            }
            // element 0 is the bottom, k + 1 the top
            let mut all = vec![];
            for i in 1..=k {
                all.push((0, i));
                all.push((i, k + 1));
            }
            all.push((0, k + 1));
            all.extend(rel.iter().map(|&(i, j)| (i + 1, j + 1)));
            let labels = (0..k + 2).map(|i| i.to_string()).collect();
            let p = Poset::from_pairs(labels, &all).expect("valid order");
            if let Ok(l) = FinLattice::from_order(p) {
                out.push(l);
            }
        }
    }
    out
}

fn transitive(k: usize, rel: &[(usize, usize)]) -> bool {
    let mut m = vec![vec![false; k]; k];
    for &(i, j) in rel {
        m[i][j] = true;
    }
    (0..k).all(|i| (0..k).all(|j| !m[i][j] || (0..k).all(|l| !m[j][l] || m[i][l])))
}

/// All set partitions of `0..n` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            if cur.is_empty() && b > 0 {
                break;
            }
            cur.push(b);
            let next = if cur.len() == 1 { 0 } else { max.max(b) };
            go(n, cur, next, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        go(n, &mut Vec::new(), 0, &mut out);
    }
    out
}

/// Congruences of `l` by testing every set partition against the meet and
/// join tables. Each is returned as "least element of my block" per element.
pub fn brute_force_congruences(l: &FinLattice) -> Vec<Vec<usize>> {
    let n = l.len();
    let mut out = Vec::new();
    for part in set_partitions(n) {
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                part[a] != part[b]
                    || (0..n).all(|c| {
                        part[l.meet(a, c)] == part[l.meet(b, c)]
                            && part[l.join(a, c)] == part[l.join(b, c)]
                    })
            })
        });
        if ok {
            let least: Vec<usize> = (0..n)
                .map(|a| (0..n).find(|&b| part[b] == part[a]).unwrap())
                .collect();
            out.push(least);
        }
    }
    out.sort();
    out
}

/// Lattices used across tests: chains, Boolean lattices, the pentagon and
/// diamond, and their duals.
pub fn named_lattices() -> Vec<(String, FinLattice)> {
    let mut v = vec![
        ("pentagon".to_string(), small::pentagon()),
        ("diamond".to_string(), small::diamond()),
    ];
    for k in 1..=7 {
        v.push((format!("chain {k}"), small::chain(k)));
    }
    for k in 0..=2 {
        v.push((format!("boolean {k}"), small::boolean(k)));
    }
    v
}
