//! Finite lattices given by their order, with meet and join tables.

mod congruence;

pub use congruence::{
    congruence_lattice, forcing_poset, is_congruence_uniform, principal_congruence, Congruence,
    CongruenceLattice, ForcingPoset,
};

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::poset::{for_each_isomorphism, Poset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLattice {
    order: Poset,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
}

/// Wire form: `{"size": k, "leq": [[i, j], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub size: usize,
    pub leq: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

impl FinLattice {
    /// Computes meet and join tables of a partial order, failing with
    /// `NotALattice` on the first pair without a unique bound.
    pub fn from_order(order: Poset) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "empty poset is not a lattice".into(),
            ));
        }
        // Re-index along a linear extension so that the greatest element of a
        // set of lower bounds is its highest bit.
        let mut topo: Vec<usize> = (0..n).collect();
        topo.sort_by_key(|&a| (order.down_set(a).count(), a));
        let mut pos = vec![0; n];
        for (k, &a) in topo.iter().enumerate() {
            pos[a] = k;
        }
        let reindex = |s: &BitSet| BitSet::from_indices(n, s.iter().map(|a| pos[a]));
        let down_t: Vec<BitSet> = (0..n).map(|a| reindex(order.down_set(a))).collect();
        let up_t: Vec<BitSet> = (0..n).map(|a| reindex(order.up_set(a))).collect();

        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = down_t[a].intersection(&down_t[b]);
                let m = lower
                    .max_index()
                    .map(|k| topo[k])
                    .filter(|&c| down_t[c] == lower)
                    .ok_or(Error::NotALattice(a, b, "meet"))?;
                let upper = up_t[a].intersection(&up_t[b]);
                // least upper bound: the lowest bit in linear-extension order
                let j = upper
                    .iter()
                    .next()
                    .map(|k| topo[k])
                    .filter(|&c| up_t[c] == upper)
                    .ok_or(Error::NotALattice(a, b, "join"))?;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x] as usize);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x] as usize);
        Ok(FinLattice {
            order,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Lattice of a family of sets closed under union and intersection,
    /// ordered by inclusion.
    pub fn from_set_family(labels: Vec<String>, sets: &[BitSet]) -> Result<Self> {
        let n = sets.len();
        assert_eq!(labels.len(), n);
        let index: HashMap<&BitSet, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
        if index.len() != n {
            return Err(Error::InvalidArgument("duplicate sets in family".into()));
        }
        let up: Vec<BitSet> = (0..n)
            .map(|a| BitSet::from_indices(n, (0..n).filter(|&b| sets[a].is_subset(&sets[b]))))
            .collect();
        let order = Poset::from_up_sets(labels, up)?;
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let m = *index
                    .get(&sets[a].intersection(&sets[b]))
                    .ok_or(Error::NotALattice(a, b, "meet"))?;
                let j = *index
                    .get(&sets[a].union(&sets[b]))
                    .ok_or(Error::NotALattice(a, b, "join"))?;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x] as usize);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x] as usize);
        Ok(FinLattice {
            order,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn label(&self, a: usize) -> &str {
        self.order.label(a)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Cover pairs `(a, b)` with `a` covered by `b`.
    pub fn covers(&self) -> &[(usize, usize)] {
        self.order.covers()
    }

    /// The order-dual lattice on the same element indices.
    pub fn dual(&self) -> FinLattice {
        FinLattice {
            order: self.order.opposite(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Exhaustive check of the lattice laws against the order. Cubic, meant
    /// for tests and small inputs.
    pub fn satisfies_axioms(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return false;
            }
            for b in 0..n {
                let (m, j) = (self.meet(a, b), self.join(a, b));
                if m != self.meet(b, a) || j != self.join(b, a) {
                    return false;
                }
                if self.join(a, m) != a || self.meet(a, j) != a {
                    return false;
                }
                if !(self.leq(m, a) && self.leq(m, b) && self.leq(a, j) && self.leq(b, j)) {
                    return false;
                }
                for c in 0..n {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c))
                        || self.join(self.join(a, b), c) != self.join(a, self.join(b, c))
                    {
                        return false;
                    }
                    if self.leq(c, a) && self.leq(c, b) && !self.leq(c, m) {
                        return false;
                    }
                }
            }
        }
        self.leq(self.bottom, self.top)
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `a v b = a v c` implies `a v b = a v (b ^ c)`.
    ///
    /// For each `a` the meet of all `b` with `a v b = x` is accumulated; the
    /// law holds iff that meet still joins with `a` to `x`.
    pub fn is_join_semidistributive(&self) -> bool {
        let n = self.len();
        let mut acc = vec![usize::MAX; n];
        for a in 0..n {
            acc.iter_mut().for_each(|x| *x = usize::MAX);
            for b in 0..n {
                let x = self.join(a, b);
                acc[x] = if acc[x] == usize::MAX {
                    b
                } else {
                    self.meet(acc[x], b)
                };
            }
            for (x, &m) in acc.iter().enumerate() {
                if m != usize::MAX && self.join(a, m) != x {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_meet_semidistributive(&self) -> bool {
        self.dual().is_join_semidistributive()
    }

    pub fn is_semidistributive(&self) -> bool {
        self.is_join_semidistributive() && self.is_meet_semidistributive()
    }

    /// Join-irreducible elements `j` paired with their unique lower cover.
    pub fn join_irreducibles(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter_map(|j| match self.order.lower_covers(j).as_slice() {
                [lower] => Some((j, *lower)),
                _ => None,
            })
            .collect()
    }

    /// Meet-irreducible elements `m` paired with their unique upper cover.
    pub fn meet_irreducibles(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter_map(|m| match self.order.upper_covers(m).as_slice() {
                [upper] => Some((m, *upper)),
                _ => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> LatticeJson {
        let p = self.order.to_json();
        LatticeJson {
            size: self.len(),
            leq: p.leq,
            labels: p.elements,
        }
    }

    pub fn from_json(json: &LatticeJson) -> Result<Self> {
        let labels = if json.labels.is_empty() {
            (0..json.size).map(|i| i.to_string()).collect()
        } else if json.labels.len() == json.size {
            json.labels.clone()
        } else {
            return Err(Error::Parse("labels length differs from size".into()));
        };
        let pairs: Vec<_> = json.leq.iter().map(|p| (p[0], p[1])).collect();
        Self::from_order(Poset::from_pairs(labels, &pairs)?)
    }

    /// Hasse diagram in Graphviz format. `annotate` may add text per node.
    pub fn to_dot(&self, name: &str, annotate: impl Fn(usize) -> Option<String>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{\n  rankdir=BT;");
        for a in 0..self.len() {
            let mut label = self.label(a).replace('"', "\\\"");
            if let Some(extra) = annotate(a) {
                label.push_str("\\n");
                label.push_str(&extra);
            }
            let _ = writeln!(s, "  n{a} [label=\"{label}\"];");
        }
        for &(a, b) in self.covers() {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Search for a lattice isomorphism `L -> M`.
///
/// Candidates come from order isomorphisms between the posets of
/// join-irreducibles, extended to all of `L` by `x -> join of f(j), j <= x`.
/// Every returned map is checked against the full meet and join tables.
pub fn lattice_isomorphic(l: &FinLattice, m: &FinLattice) -> Option<Vec<usize>> {
    if l.len() != m.len() || l.covers().len() != m.covers().len() {
        return None;
    }
    let ji_l: Vec<usize> = l.join_irreducibles().into_iter().map(|p| p.0).collect();
    let ji_m: Vec<usize> = m.join_irreducibles().into_iter().map(|p| p.0).collect();
    if ji_l.len() != ji_m.len() {
        return None;
    }
    let pl = induced(l.order(), &ji_l);
    let pm = induced(m.order(), &ji_m);
    let mut found = None;
    for_each_isomorphism(&pl, &pm, |phi| {
        let mut map = vec![0usize; l.len()];
        for (x, slot) in map.iter_mut().enumerate() {
            *slot = ji_l
                .iter()
                .enumerate()
                .filter(|&(_, &j)| l.leq(j, x))
                .fold(m.bottom(), |acc, (k, _)| m.join(acc, ji_m[phi[k]]));
        }
        if is_lattice_isomorphism(l, m, &map) {
            found = Some(map);
            true
        } else {
            false
        }
    });
    found
}

/// Checks that `map` is a bijection preserving meets and joins.
pub fn is_lattice_isomorphism(l: &FinLattice, m: &FinLattice, map: &[usize]) -> bool {
    let n = l.len();
    if map.len() != n || m.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in map {
        if y >= n || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    (0..n).all(|a| {
        (0..n).all(|b| {
            map[l.meet(a, b)] == m.meet(map[a], map[b])
                && map[l.join(a, b)] == m.join(map[a], map[b])
        })
    })
}

fn induced(p: &Poset, elems: &[usize]) -> Poset {
    let labels = elems.iter().map(|&e| p.label(e).to_string()).collect();
    let mut pairs = Vec::new();
    for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            if p.leq(a, b) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_pairs(labels, &pairs).expect("restriction of a partial order")
}

/// Small named lattices used throughout the tests.
pub mod small {
    use super::FinLattice;
    use crate::poset::Poset;

    fn build(n: usize, pairs: &[(usize, usize)]) -> FinLattice {
        let labels = (0..n).map(|i| i.to_string()).collect();
        FinLattice::from_order(Poset::from_pairs(labels, pairs).unwrap()).unwrap()
    }

    pub fn chain(n: usize) -> FinLattice {
        FinLattice::from_order(Poset::chain(n)).unwrap()
    }

    /// Boolean lattice on `k` atoms.
    pub fn boolean(k: usize) -> FinLattice {
        Poset::antichain(k).ideal_lattice()
    }

    /// Pentagon: `0 < a < b < 1`, `0 < c < 1`, indexed `0, a=1, b=2, c=3, 1=4`.
    pub fn pentagon() -> FinLattice {
        build(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
    }

    /// Diamond with three atoms, indexed `0, a, b, c, 1`.
    pub fn diamond() -> FinLattice {
        build(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    }
}

#[cfg(test)]
mod tests {
    use super::small::*;
    use super::*;

    #[test]
    fn chain_tables() {
        let c = chain(2);
        assert_eq!(c.meet(0, 1), 0);
        assert_eq!(c.join(0, 1), 1);
        assert!(c.satisfies_axioms());
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let err = FinLattice::from_order(Poset::antichain(2)).unwrap_err();
        assert!(matches!(err, Error::NotALattice(..)));
    }

    #[test]
    fn distributivity_flags() {
        assert!(boolean(2).is_distributive());
        let n5 = pentagon();
        assert!(n5.satisfies_axioms());
        assert!(!n5.is_distributive());
        assert!(n5.is_semidistributive());
        let m3 = diamond();
        assert!(!m3.is_distributive());
        assert!(!m3.is_join_semidistributive());
        assert!(!m3.is_meet_semidistributive());
    }

    #[test]
    fn join_irreducible_elements() {
        assert_eq!(chain(2).join_irreducibles(), vec![(1, 0)]);
        let b = boolean(2);
        assert_eq!(b.join_irreducibles().len(), 2);
        assert_eq!(pentagon().join_irreducibles().len(), 3);
    }

    #[test]
    fn isomorphism() {
        let n5 = pentagon();
        let id = lattice_isomorphic(&n5, &n5).unwrap();
        assert!(is_lattice_isomorphism(&n5, &n5, &id));
        assert!(lattice_isomorphic(&chain(2), &boolean(2)).is_none());
        // the pentagon is self-dual
        assert!(lattice_isomorphic(&n5, &n5.dual()).is_some());
        assert!(lattice_isomorphic(&n5, &diamond()).is_none());
    }

    #[test]
    fn json_round_trip() {
        let l = pentagon();
        let text = serde_json::to_string(&l.to_json()).unwrap();
        let back: LatticeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(FinLattice::from_json(&back).unwrap(), l);
    }
}
