//! Lattice congruences, the congruence lattice, and the forcing order on
//! join-irreducible congruences.

use std::collections::{HashMap, HashSet, VecDeque};

use super::FinLattice;
use crate::bits::BitSet;
use crate::poset::Poset;

/// An equivalence relation on lattice elements in canonical form:
/// `block[i]` is the least element equivalent to `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    block: Vec<u32>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller index as root so canonical form falls out directly
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let n = self.parent.len();
        let mut least = vec![usize::MAX; n];
        let roots: Vec<usize> = (0..n).map(|i| self.find(i)).collect();
        for (i, &r) in roots.iter().enumerate() {
            least[r] = least[r].min(i);
        }
        Congruence {
            block: roots.iter().map(|&r| least[r] as u32).collect(),
        }
    }
}

impl Congruence {
    pub fn discrete(n: usize) -> Self {
        Congruence {
            block: (0..n as u32).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Congruence { block: vec![0; n] }
    }

    /// Canonicalise an arbitrary labelling of blocks.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut first: HashMap<usize, u32> = HashMap::new();
        let block = labels
            .iter()
            .enumerate()
            .map(|(i, l)| *first.entry(*l).or_insert(i as u32))
            .collect();
        Congruence { block }
    }

    pub fn len(&self) -> usize {
        self.block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block.is_empty()
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block[i] as usize
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block[a] == self.block[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.block
            .iter()
            .enumerate()
            .filter(|&(i, &b)| b as usize == i)
            .count()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut index = HashMap::new();
        for (i, &b) in self.block.iter().enumerate() {
            let k = *index.entry(b).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(i);
        }
        out
    }

    /// True when every pair related here is related in `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.len()).all(|i| other.related(i, self.block_of(i)))
    }

    /// Join in the lattice of equivalence relations (transitive closure of
    /// the union). The join of two lattice congruences is again one.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.len());
        for i in 0..self.len() {
            uf.union(i, self.block_of(i));
            uf.union(i, other.block_of(i));
        }
        uf.into_congruence()
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let mut key: HashMap<(u32, u32), usize> = HashMap::new();
        let labels: Vec<usize> = (0..self.len())
            .map(|i| {
                let k = (self.block[i], other.block[i]);
                let next = key.len();
                *key.entry(k).or_insert(next)
            })
            .collect();
        Self::from_labels(&labels)
    }

    /// Compatibility with meet and join, checked exhaustively.
    pub fn is_compatible(&self, l: &FinLattice) -> bool {
        let n = l.len();
        (0..n).all(|a| {
            let b = self.block_of(a);
            a == b
                || (0..n).all(|c| {
                    self.related(l.meet(a, c), l.meet(b, c))
                        && self.related(l.join(a, c), l.join(b, c))
                })
        })
    }

    pub fn describe(&self, l: &FinLattice) -> String {
        let parts: Vec<String> = self
            .blocks()
            .into_iter()
            .filter(|b| b.len() > 1)
            .map(|b| {
                let names: Vec<&str> = b.iter().map(|&i| l.label(i)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        if parts.is_empty() {
            "id".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Smallest congruence relating `a` and `b`.
///
/// Union-find fixpoint: every pair that caused a merge is pushed, and its
/// translates `(x ^ c, y ^ c)` and `(x v c, y v c)` are merged in turn.
pub fn principal_congruence(l: &FinLattice, a: usize, b: usize) -> Congruence {
    let n = l.len();
    let mut uf = UnionFind::new(n);
    let mut work = VecDeque::new();
    if uf.union(a, b) {
        work.push_back((a, b));
    }
    while let Some((x, y)) = work.pop_front() {
        for c in 0..n {
            for (u, v) in [(l.meet(x, c), l.meet(y, c)), (l.join(x, c), l.join(y, c))] {
                if uf.union(u, v) {
                    work.push_back((u, v));
                }
            }
        }
    }
    uf.into_congruence()
}

/// `Con(L)` together with the congruence behind each lattice element.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    pub congruences: Vec<Congruence>,
    pub lattice: FinLattice,
}

impl CongruenceLattice {
    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|x| x == c)
    }
}

/// All congruences of `L` ordered by refinement, generated as the join
/// closure of the principal congruences of covers.
pub fn congruence_lattice(l: &FinLattice) -> CongruenceLattice {
    let n = l.len();
    let mut gens: Vec<Congruence> = Vec::new();
    let mut seen_gen = HashSet::new();
    for &(a, b) in l.covers() {
        let c = principal_congruence(l, a, b);
        if seen_gen.insert(c.clone()) {
            gens.push(c);
        }
    }
    let start = Congruence::discrete(n);
    let mut seen: HashSet<Congruence> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut all = Vec::new();
    while let Some(c) = queue.pop_front() {
        for g in &gens {
            if g.refines(&c) {
                continue;
            }
            let j = c.join(g);
            if seen.insert(j.clone()) {
                queue.push_back(j);
            }
        }
        all.push(c);
    }
    // finest first, then canonical vector order
    all.sort_by(|x, y| y.num_blocks().cmp(&x.num_blocks()).then_with(|| x.cmp(y)));
    let k = all.len();
    let up: Vec<BitSet> = (0..k)
        .map(|i| BitSet::from_indices(k, (0..k).filter(|&j| all[i].refines(&all[j]))))
        .collect();
    let labels = all.iter().map(|c| c.describe(l)).collect();
    let order = Poset::from_up_sets(labels, up).expect("refinement is a partial order");
    let lattice = FinLattice::from_order(order).expect("congruences form a lattice");
    CongruenceLattice {
        congruences: all,
        lattice,
    }
}

/// The poset of join-irreducible congruences under inclusion, with the
/// covers of `L` that generate each one.
#[derive(Clone, Debug)]
pub struct ForcingPoset {
    pub congruences: Vec<Congruence>,
    pub generating_covers: Vec<Vec<(usize, usize)>>,
    pub poset: Poset,
}

/// Join-irreducible congruences of `L`, ordered by inclusion. Covers of `L`
/// that generate the same congruence are merged into one element.
///
/// With this order `Con(L)` is the lattice of order ideals of the result.
pub fn forcing_poset(l: &FinLattice) -> ForcingPoset {
    let con = congruence_lattice(l);
    let ji: HashSet<Congruence> = con
        .lattice
        .join_irreducibles()
        .into_iter()
        .map(|(j, _)| con.congruences[j].clone())
        .collect();
    let mut congruences: Vec<Congruence> = Vec::new();
    let mut generating_covers: Vec<Vec<(usize, usize)>> = Vec::new();
    for &(a, b) in l.covers() {
        let c = principal_congruence(l, a, b);
        if !ji.contains(&c) {
            continue;
        }
        match congruences.iter().position(|x| *x == c) {
            Some(k) => generating_covers[k].push((a, b)),
            None => {
                congruences.push(c);
                generating_covers.push(vec![(a, b)]);
            }
        }
    }
    let k = congruences.len();
    let up: Vec<BitSet> = (0..k)
        .map(|i| {
            BitSet::from_indices(
                k,
                (0..k).filter(|&j| congruences[i].refines(&congruences[j])),
            )
        })
        .collect();
    let labels = generating_covers
        .iter()
        .map(|cs| format!("con({},{})", l.label(cs[0].0), l.label(cs[0].1)))
        .collect();
    let poset = Poset::from_up_sets(labels, up).expect("inclusion is a partial order");
    ForcingPoset {
        congruences,
        generating_covers,
        poset,
    }
}

/// Both `j -> con(j_*, j)` on join-irreducibles and `m -> con(m, m^*)` on
/// meet-irreducibles are bijections onto the join-irreducible congruences.
pub fn is_congruence_uniform(l: &FinLattice) -> bool {
    let con = congruence_lattice(l);
    let ji_con: HashSet<Congruence> = con
        .lattice
        .join_irreducibles()
        .into_iter()
        .map(|(j, _)| con.congruences[j].clone())
        .collect();
    let bijective = |pairs: Vec<(usize, usize)>| {
        let image: HashSet<Congruence> = pairs
            .iter()
            .map(|&(x, y)| principal_congruence(l, x, y))
            .collect();
        image.len() == pairs.len() && image == ji_con
    };
    bijective(
        l.join_irreducibles()
            .into_iter()
            .map(|(j, lo)| (lo, j))
            .collect(),
    ) && bijective(l.meet_irreducibles())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::small::*;

    #[test]
    fn principal_trivial_cases() {
        let n5 = pentagon();
        assert_eq!(principal_congruence(&n5, 2, 2), Congruence::discrete(5));
        let c2 = chain(2);
        assert_eq!(principal_congruence(&c2, 0, 1), Congruence::full(2));
    }

    #[test]
    fn pentagon_long_side_cover() {
        // a < b on the long side collapses only {a, b}
        let n5 = pentagon();
        let c = principal_congruence(&n5, 1, 2);
        assert_eq!(c.blocks(), vec![vec![0], vec![1, 2], vec![3], vec![4]]);
        assert!(c.is_compatible(&n5));
    }

    #[test]
    fn small_congruence_lattices() {
        assert_eq!(congruence_lattice(&chain(2)).lattice.len(), 2);
        let con = congruence_lattice(&pentagon());
        assert_eq!(con.lattice.len(), 5);
        assert!(con.lattice.is_distributive());
        assert!(con.congruences.iter().all(|c| c.is_compatible(&pentagon())));
    }

    #[test]
    fn forcing_small() {
        assert_eq!(forcing_poset(&chain(2)).poset.len(), 1);
        let f = forcing_poset(&pentagon());
        assert_eq!(f.poset.len(), 3);
        assert_eq!(f.poset.ideal_lattice().len(), 5);
    }

    #[test]
    fn uniformity() {
        assert!(is_congruence_uniform(&boolean(2)));
        assert!(is_congruence_uniform(&pentagon()));
        assert!(!is_congruence_uniform(&diamond()));
    }
}
