//! Finite posets, interval posets of chains, and order ideals.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::lattice::FinLattice;

/// A finite poset on `0..len`. `up[a]` holds every `b` with `a <= b` and
/// `down[b]` every `a` with `a <= b`; both include the element itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    covers: Vec<(usize, usize)>,
}

/// A downward closed subset of a poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    pub members: BitSet,
}

/// Wire form: `{"elements": [...], "leq": [[i, j], ...]}` with `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub leq: Vec<[usize; 2]>,
}

impl Poset {
    /// Build from generating pairs `(a, b)` meaning `a <= b`. The relation is
    /// closed reflexively and transitively, then checked for antisymmetry.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut up: Vec<BitSet> = (0..n).map(|i| BitSet::from_indices(n, [i])).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::NotAPartialOrder(format!(
                    "pair ({a},{b}) out of range"
                )));
            }
            up[a].insert(b);
        }
        // Warshall over bit rows
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_up_sets(labels, up)
    }

    /// Build from a full relation; fails unless it is a partial order.
    pub fn from_up_sets(labels: Vec<String>, up: Vec<BitSet>) -> Result<Self> {
        let n = labels.len();
        assert_eq!(up.len(), n);
        let mut down = vec![BitSet::new(n); n];
        for (a, row) in up.iter().enumerate() {
            if !row.contains(a) {
                return Err(Error::NotAPartialOrder(format!(
                    "{} is not <= itself",
                    labels[a]
                )));
            }
            for b in row.iter() {
                down[b].insert(a);
                if a != b && up[b].contains(a) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{} and {} are mutually related",
                        labels[a], labels[b]
                    )));
                }
                if !up[b].is_subset(row) {
                    return Err(Error::NotAPartialOrder(format!(
                        "relation is not transitive through {}",
                        labels[b]
                    )));
                }
            }
        }
        let mut covers = Vec::new();
        for (a, above) in up.iter().enumerate() {
            for b in above.iter() {
                if a == b {
                    continue;
                }
                // a < b is a cover iff no c with a < c < b
                let mut between = above.intersection(&down[b]);
                between.remove(a);
                between.remove(b);
                if between.is_empty() {
                    covers.push((a, b));
                }
            }
        }
        Ok(Poset {
            labels,
            up,
            down,
            covers,
        })
    }

    pub fn antichain(k: usize) -> Self {
        Self::from_pairs((0..k).map(|i| i.to_string()).collect(), &[]).unwrap()
    }

    pub fn chain(k: usize) -> Self {
        let pairs: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Self::from_pairs((0..k).map(|i| i.to_string()).collect(), &pairs).unwrap()
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

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    /// Hasse diagram edges `(a, b)` with `a` covered by `b`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, b: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|c| c.1 == b)
            .map(|c| c.0)
            .collect()
    }

    pub fn upper_covers(&self, a: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|c| c.0 == a)
            .map(|c| c.1)
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.down[a].count() == 1)
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.up[a].count() == 1)
            .collect()
    }

    /// Same elements, reversed order.
    pub fn opposite(&self) -> Poset {
        Poset {
            labels: self.labels.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            covers: self.covers.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    pub fn is_ideal(&self, set: &BitSet) -> bool {
        set.iter().all(|b| self.down[b].is_subset(set))
    }

    /// All order ideals, smallest first. Enumeration is an explicit frontier
    /// search (no recursion), adding one minimal element of the complement at
    /// a time.
    pub fn order_ideals(&self) -> Vec<Ideal> {
        let n = self.len();
        let empty = BitSet::new(n);
        let mut seen: HashSet<BitSet> = HashSet::new();
        seen.insert(empty.clone());
        let mut queue = VecDeque::from([empty]);
        let mut out = Vec::new();
        while let Some(ideal) = queue.pop_front() {
            for x in 0..n {
                if ideal.contains(x) {
                    continue;
                }
                let mut below = self.down[x].clone();
                below.remove(x);
                if below.is_subset(&ideal) {
                    let mut next = ideal.clone();
                    next.insert(x);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            out.push(Ideal { members: ideal });
        }
        out.sort_by(|a, b| (a.members.count(), &a.members).cmp(&(b.members.count(), &b.members)));
        out
    }

    /// The distributive lattice of order ideals ordered by inclusion.
    pub fn ideal_lattice(&self) -> FinLattice {
        let ideals = self.order_ideals();
        let labels = ideals
            .iter()
            .map(|i| self.format_subset(&i.members))
            .collect();
        let sets: Vec<BitSet> = ideals.into_iter().map(|i| i.members).collect();
        FinLattice::from_set_family(labels, &sets)
            .expect("ideals are closed under union and intersection")
    }

    pub fn format_subset(&self, set: &BitSet) -> String {
        let parts: Vec<&str> = set.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn to_json(&self) -> PosetJson {
        let mut leq = Vec::new();
        for a in 0..self.len() {
            for b in self.up[a].iter() {
                if a != b {
                    leq.push([a, b]);
                }
            }
        }
        PosetJson {
            elements: self.labels.clone(),
            leq,
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Self> {
        let pairs: Vec<_> = json.leq.iter().map(|p| (p[0], p[1])).collect();
        Self::from_pairs(json.elements.clone(), &pairs)
    }

    /// Graphviz rendering of the Hasse diagram, edges pointing up.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{\n  rankdir=BT;");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }

    fn invariant(&self, a: usize) -> (usize, usize, usize, usize) {
        let lc = self.covers.iter().filter(|c| c.1 == a).count();
        let uc = self.covers.iter().filter(|c| c.0 == a).count();
        (self.down[a].count(), self.up[a].count(), lc, uc)
    }
}

/// Intervals `[i, j]` of the chain `1 < 2 < .. < n`, ordered by containment.
/// Elements are listed by length, then by left endpoint.
pub fn interval_poset(n: usize) -> Result<Poset> {
    if n == 0 {
        return Err(Error::InvalidArgument("interval poset needs n >= 1".into()));
    }
    let mut intervals = Vec::new();
    for len in 0..n {
        for i in 1..=n - len {
            intervals.push((i, i + len));
        }
    }
    let labels = intervals
        .iter()
        .map(|(i, j)| format!("[{i},{j}]"))
        .collect();
    let mut pairs = Vec::new();
    for (a, &(i, j)) in intervals.iter().enumerate() {
        for (b, &(k, l)) in intervals.iter().enumerate() {
            if k <= i && j <= l {
                pairs.push((a, b));
            }
        }
    }
    Poset::from_pairs(labels, &pairs)
}

/// Visit every order isomorphism `P -> Q` until `visit` returns `true`.
/// Returns whether the search was stopped by the visitor.
pub fn for_each_isomorphism(p: &Poset, q: &Poset, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    let n = p.len();
    if n != q.len() || p.covers.len() != q.covers.len() {
        return false;
    }
    let inv_p: Vec<_> = (0..n).map(|a| p.invariant(a)).collect();
    let inv_q: Vec<_> = (0..n).map(|a| q.invariant(a)).collect();
    let mut sp = inv_p.clone();
    let mut sq = inv_q.clone();
    sp.sort();
    sq.sort();
    if sp != sq {
        return false;
    }
    // assign in a linear extension of P so that predecessors come first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| (p.down[a].count(), a));
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).filter(|&b| inv_q[b] == inv_p[a]).collect())
        .collect();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn go(
        depth: usize,
        order: &[usize],
        p: &Poset,
        q: &Poset,
        candidates: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == order.len() {
            return visit(map);
        }
        let x = order[depth];
        for &y in &candidates[x] {
            if used[y] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&z| {
                let fz = map[z];
                p.leq(z, x) == q.leq(fz, y) && p.leq(x, z) == q.leq(y, fz)
            });
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if go(depth + 1, order, p, q, candidates, map, used, visit) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }

    go(
        0,
        &order,
        p,
        q,
        &candidates,
        &mut map,
        &mut used,
        &mut visit,
    )
}

/// An order isomorphism `P -> Q` as the image of each element, if one exists.
pub fn poset_isomorphic(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_isomorphism(p, q, |m| {
        found = Some(m.to_vec());
        true
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_poset_small_cases() {
        assert!(interval_poset(0).is_err());
        assert_eq!(interval_poset(1).unwrap().len(), 1);

        let p2 = interval_poset(2).unwrap();
        assert_eq!(p2.labels(), ["[1,1]", "[2,2]", "[1,2]"]);
        assert_eq!(p2.covers().len(), 2);
        assert_eq!(p2.maximal_elements(), vec![2]);

        let p3 = interval_poset(3).unwrap();
        assert_eq!(p3.len(), 6);
        // three minimal, two in the middle, one top; middle elements each cover two
        assert_eq!(p3.minimal_elements().len(), 3);
        assert_eq!(p3.maximal_elements().len(), 1);
        assert_eq!(p3.covers().len(), 6);
        for n in 1..=6 {
            assert_eq!(interval_poset(n).unwrap().len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn opposite_properties() {
        let p = interval_poset(3).unwrap();
        assert_eq!(p.opposite().opposite(), p);
        let a = Poset::antichain(3);
        assert_eq!(a.opposite(), a);
        let op = interval_poset(2).unwrap().opposite();
        assert_eq!(op.minimal_elements(), vec![2]);
    }

    #[test]
    fn rejects_cycles() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(Poset::from_pairs(labels, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn ideal_counts() {
        assert_eq!(Poset::antichain(4).order_ideals().len(), 16);
        assert_eq!(interval_poset(2).unwrap().order_ideals().len(), 5);
        assert_eq!(interval_poset(3).unwrap().order_ideals().len(), 14);
        assert_eq!(interval_poset(4).unwrap().order_ideals().len(), 42);
    }

    #[test]
    fn ideal_lattices() {
        let one = Poset::chain(1).ideal_lattice();
        assert_eq!(one.len(), 2);
        let l = interval_poset(2).unwrap().ideal_lattice();
        assert_eq!(l.len(), 5);
        assert!(l.is_distributive());
        let b = Poset::antichain(2).ideal_lattice();
        assert_eq!(b.len(), 4);
        assert_eq!(b.join_irreducibles().len(), 2);
    }

    #[test]
    fn isomorphism_search() {
        let p = interval_poset(3).unwrap();
        let id = poset_isomorphic(&p, &p).unwrap();
        for (a, &b) in id.iter().enumerate() {
            assert_eq!(p.down_set(a).count(), p.down_set(b).count());
        }
        assert!(poset_isomorphic(&Poset::chain(2), &Poset::antichain(2)).is_none());
        let p2 = interval_poset(2).unwrap();
        assert!(poset_isomorphic(&p2, &p2.opposite()).is_none());
    }

    #[test]
    fn json_round_trip() {
        let p = interval_poset(3).unwrap();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back: PosetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Poset::from_json(&back).unwrap(), p);
    }
}
