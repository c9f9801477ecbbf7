//! Dyck paths, binary trees under rotation, and the interval model of
//! torsion classes for the linearly oriented quiver of type A.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::lattice::FinLattice;
use crate::poset::{interval_poset, Ideal, Poset};

pub fn catalan_number(n: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// A Dyck path stored as its steps, `true` for an up step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    steps: Vec<bool>,
}

impl DyckPath {
    pub fn from_steps(steps: Vec<bool>) -> Result<Self> {
        let mut h: i64 = 0;
        for &up in &steps {
            h += if up { 1 } else { -1 };
            if h < 0 {
                return Err(Error::Parse("path goes below zero".into()));
            }
        }
        if h != 0 {
            return Err(Error::Parse("path does not return to zero".into()));
        }
        Ok(DyckPath { steps })
    }

    /// Rebuild a path from its height profile `h(0), ..., h(2n)`.
    pub fn from_heights(h: &[usize]) -> Result<Self> {
        if h.first() != Some(&0) || h.last() != Some(&0) {
            return Err(Error::Parse("heights must start and end at zero".into()));
        }
        let mut steps = Vec::with_capacity(h.len().saturating_sub(1));
        for w in h.windows(2) {
            match w[1] as i64 - w[0] as i64 {
                1 => steps.push(true),
                -1 => steps.push(false),
                _ => {
                    return Err(Error::Parse(
                        "consecutive heights must differ by one".into(),
                    ))
                }
            }
        }
        Ok(DyckPath { steps })
    }

    /// `(UD)^n`, the lowest path.
    pub fn zigzag(n: usize) -> Self {
        DyckPath {
            steps: (0..2 * n).map(|t| t % 2 == 0).collect(),
        }
    }

    /// `U^n D^n`, the highest path.
    pub fn mountain(n: usize) -> Self {
        DyckPath {
            steps: (0..2 * n).map(|t| t < n).collect(),
        }
    }

    /// Number of up steps.
    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[bool] {
        &self.steps
    }

    /// Prefix heights, `2n + 1` values starting and ending at zero.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = 0usize;
        h.push(0);
        for &up in &self.steps {
            cur = if up { cur + 1 } else { cur - 1 };
            h.push(cur);
        }
        h
    }

    pub fn area(&self) -> usize {
        self.heights().iter().sum()
    }

    /// Pointwise height domination.
    pub fn leq(&self, other: &DyckPath) -> bool {
        self.steps.len() == other.steps.len()
            && self
                .heights()
                .iter()
                .zip(other.heights())
                .all(|(a, b)| *a <= b)
    }

    pub fn meet(&self, other: &DyckPath) -> DyckPath {
        let h: Vec<usize> = self
            .heights()
            .iter()
            .zip(other.heights())
            .map(|(a, b)| (*a).min(b))
            .collect();
        DyckPath::from_heights(&h).expect("pointwise min of Dyck paths")
    }

    pub fn join(&self, other: &DyckPath) -> DyckPath {
        let h: Vec<usize> = self
            .heights()
            .iter()
            .zip(other.heights())
            .map(|(a, b)| (*a).max(b))
            .collect();
        DyckPath::from_heights(&h).expect("pointwise max of Dyck paths")
    }

    /// All paths with `n` up steps, by area and then lexicographically with
    /// `U` before `D`.
    pub fn all(n: usize) -> Vec<DyckPath> {
        let mut out = Vec::new();
        let mut steps = Vec::with_capacity(2 * n);
        fn go(n: usize, ups: usize, h: usize, steps: &mut Vec<bool>, out: &mut Vec<DyckPath>) {
            if steps.len() == 2 * n {
                out.push(DyckPath {
                    steps: steps.clone(),
                });
                return;
            }
            if ups < n {
                steps.push(true);
                go(n, ups + 1, h + 1, steps, out);
                steps.pop();
            }
            if h > 0 {
                steps.push(false);
                go(n, ups, h - 1, steps, out);
                steps.pop();
            }
        }
        go(n, 0, 0, &mut steps, &mut out);
        out.sort_by_key(|d| (d.area(), d.to_string()));
        out
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &up in &self.steps {
            f.write_str(if up { "U" } else { "D" })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(true),
                'D' | 'd' => Ok(false),
                _ => Err(Error::Parse(format!("unexpected step {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::from_steps(steps)
    }
}

/// Paths with `n` up steps under height domination. Element `i` is
/// `DyckPath::all(n)[i]`.
pub fn dyck_lattice(n: usize) -> Result<FinLattice> {
    if n == 0 {
        return Err(Error::InvalidArgument("Dyck lattice needs n >= 1".into()));
    }
    let paths = DyckPath::all(n);
    let heights: Vec<Vec<usize>> = paths.iter().map(|p| p.heights()).collect();
    let k = paths.len();
    let up: Vec<BitSet> = (0..k)
        .map(|a| {
            BitSet::from_indices(
                k,
                (0..k).filter(|&b| heights[a].iter().zip(&heights[b]).all(|(x, y)| x <= y)),
            )
        })
        .collect();
    let labels = paths.iter().map(|p| p.to_string()).collect();
    FinLattice::from_order(Poset::from_up_sets(labels, up)?)
}

/// The intervals `[i, j]` of `1..n-1` sitting under the path: `[i, j]` is
/// included when the height at position `i + j` is at least `j - i + 2`.
/// Indices refer to `interval_poset(n - 1)`; for `n = 1` the ideal is empty
/// in an empty ground set.
pub fn dyck_to_ideal(d: &DyckPath) -> Ideal {
    let n = d.semilength();
    if n <= 1 {
        return Ideal {
            members: BitSet::new(0),
        };
    }
    let h = d.heights();
    let intervals = interval_list(n - 1);
    let members = BitSet::from_indices(
        intervals.len(),
        intervals
            .iter()
            .enumerate()
            .filter(|&(_, &(i, j))| h[i + j] >= j - i + 2)
            .map(|(k, _)| k),
    );
    Ideal { members }
}

/// Inverse of [`dyck_to_ideal`] for paths with `n` up steps.
pub fn ideal_to_dyck(ideal: &Ideal, n: usize) -> Result<DyckPath> {
    let intervals = if n > 1 {
        interval_list(n - 1)
    } else {
        Vec::new()
    };
    if ideal.members.len() != intervals.len() {
        return Err(Error::InvalidArgument(
            "ideal has the wrong ground set".into(),
        ));
    }
    let h: Vec<usize> = (0..=2 * n)
        .map(|t| {
            let base = if t == 2 * n { 0 } else { t % 2 };
            ideal
                .members
                .iter()
                .map(|k| {
                    let (i, j) = intervals[k];
                    (j - i + 2).saturating_sub(t.abs_diff(i + j))
                })
                .fold(base, usize::max)
        })
        .collect();
    DyckPath::from_heights(&h)
}

/// `(i, j)` pairs in the element order of `interval_poset(m)`.
fn interval_list(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for len in 0..m {
        for i in 1..=m - len {
            out.push((i, i + len));
        }
    }
    out
}

/// Full binary tree; `Node(left, right)` is an inner vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(l: BinaryTree, r: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(l), Box::new(r))
    }

    pub fn inner_vertices(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.inner_vertices() + r.inner_vertices(),
        }
    }

    /// All trees with `n` inner vertices.
    pub fn all(n: usize) -> Vec<BinaryTree> {
        let mut table: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::Leaf]];
        for k in 1..=n {
            let mut level = Vec::new();
            for left in 0..k {
                for l in &table[left] {
                    for r in &table[k - 1 - left] {
                        level.push(BinaryTree::node(l.clone(), r.clone()));
                    }
                }
            }
            table.push(level);
        }
        table.swap_remove(n)
    }

    /// Trees reached by one right rotation `((A, B), C) -> (A, (B, C))` at
    /// some vertex.
    pub fn right_rotations(&self) -> Vec<BinaryTree> {
        let mut out = Vec::new();
        if let BinaryTree::Node(l, r) = self {
            if let BinaryTree::Node(a, b) = l.as_ref() {
                out.push(BinaryTree::node(
                    (**a).clone(),
                    BinaryTree::node((**b).clone(), (**r).clone()),
                ));
            }
            for l2 in l.right_rotations() {
                out.push(BinaryTree::node(l2, (**r).clone()));
            }
            for r2 in r.right_rotations() {
                out.push(BinaryTree::node((**l).clone(), r2));
            }
        }
        out
    }
}

/// Balanced parentheses: a leaf is empty and a vertex is `(L)R`.
impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => Ok(()),
            BinaryTree::Node(l, r) => write!(f, "({l}){r}"),
        }
    }
}

impl FromStr for BinaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        fn parse(b: &[u8]) -> Result<BinaryTree> {
            if b.is_empty() {
                return Ok(BinaryTree::Leaf);
            }
            if b[0] != b'(' {
                return Err(Error::Parse("tree must start with '('".into()));
            }
            let mut depth = 0i32;
            for (k, &c) in b.iter().enumerate() {
                match c {
                    b'(' => depth += 1,
                    b')' => depth -= 1,
                    _ => return Err(Error::Parse(format!("unexpected byte {:?}", c as char))),
                }
                if depth == 0 {
                    return Ok(BinaryTree::node(parse(&b[1..k])?, parse(&b[k + 1..])?));
                }
            }
            Err(Error::Parse("unbalanced parentheses".into()))
        }
        parse(s.as_bytes())
    }
}

/// Binary trees with `n` inner vertices; covers are right rotations and
/// the order is their reflexive-transitive closure.
pub fn tamari_lattice(n: usize) -> Result<FinLattice> {
    if n == 0 {
        return Err(Error::InvalidArgument("Tamari lattice needs n >= 1".into()));
    }
    let trees = BinaryTree::all(n);
    let index: HashMap<&BinaryTree, usize> =
        trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let succ: Vec<Vec<usize>> = trees
        .iter()
        .map(|t| t.right_rotations().iter().map(|r| index[r]).collect())
        .collect();
    let k = trees.len();
    let up: Vec<BitSet> = (0..k)
        .map(|a| {
            let mut seen = BitSet::new(k);
            seen.insert(a);
            let mut queue = VecDeque::from([a]);
            while let Some(x) = queue.pop_front() {
                for &y in &succ[x] {
                    if seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            seen
        })
        .collect();
    let labels = trees.iter().map(|t| t.to_string()).collect();
    FinLattice::from_order(Poset::from_up_sets(labels, up)?)
}

/// Indecomposable `M[i, j]` of the path algebra of `1 -> 2 -> ... -> n`,
/// one-dimensional at the vertices `i..=j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalModule {
    pub i: usize,
    pub j: usize,
}

impl IntervalModule {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || j < i {
            return Err(Error::InvalidArgument(format!("bad interval [{i},{j}]")));
        }
        Ok(IntervalModule { i, j })
    }

    /// Every `M[i, k]` with `i <= k <= j`.
    pub fn quotients(&self) -> impl Iterator<Item = IntervalModule> + '_ {
        (self.i..=self.j).map(move |k| IntervalModule { i: self.i, j: k })
    }

    /// Dimension at each of the vertices `1..=n`.
    pub fn dims(&self, n: usize) -> Vec<usize> {
        (1..=n)
            .map(|v| usize::from(self.i <= v && v <= self.j))
            .collect()
    }
}

impl fmt::Display for IntervalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{},{}]", self.i, self.j)
    }
}

/// All `M[i, j]` for `1 <= i <= j <= n`, ordered by length then `i`.
pub fn interval_modules(n: usize) -> Vec<IntervalModule> {
    interval_list(n)
        .into_iter()
        .map(|(i, j)| IntervalModule { i, j })
        .collect()
}

/// Torsion classes of the path algebra of `1 -> ... -> n`, found by testing
/// every subset of interval modules for closure under quotients and under
/// the extensions `0 -> M[j+1, l] -> M[i, l] -> M[i, j] -> 0`.
///
/// Element `k` of the lattice is the class `typea_torsion_classes(n)[k]`.
pub fn typea_torsion_lattice(n: usize) -> Result<FinLattice> {
    let classes = typea_torsion_classes(n)?;
    let mods = interval_modules(n);
    let labels = classes
        .iter()
        .map(|c| {
            let names: Vec<String> = c.iter().map(|k| mods[k].to_string()).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    let k = classes.len();
    let up: Vec<BitSet> = (0..k)
        .map(|a| BitSet::from_indices(k, (0..k).filter(|&b| classes[a].is_subset(&classes[b]))))
        .collect();
    FinLattice::from_order(Poset::from_up_sets(labels, up)?)
}

/// The closed subsets behind [`typea_torsion_lattice`], as sets of indices
/// into `interval_modules(n)`, by size and then bit order.
pub fn typea_torsion_classes(n: usize) -> Result<Vec<BitSet>> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidArgument(
            "type A enumeration needs 1 <= n <= 6".into(),
        ));
    }
    let mods = interval_modules(n);
    let m = mods.len();
    let pos: HashMap<IntervalModule, usize> =
        mods.iter().enumerate().map(|(k, x)| (*x, k)).collect();
    let quot_mask: Vec<u32> = mods
        .iter()
        .map(|x| x.quotients().fold(0u32, |acc, q| acc | 1 << pos[&q]))
        .collect();
    let mut ext_rules: Vec<(u32, u32)> = Vec::new();
    for x in &mods {
        for y in &mods {
            if y.i == x.j + 1 {
                let both = 1u32 << pos[x] | 1u32 << pos[y];
                ext_rules.push((both, 1u32 << pos[&IntervalModule { i: x.i, j: y.j }]));
            }
        }
    }
    let mut out = Vec::new();
    for s in 0u32..(1u32 << m) {
        let quot_ok = (0..m).all(|k| s & (1 << k) == 0 || quot_mask[k] & !s == 0);
        if quot_ok
            && ext_rules
                .iter()
                .all(|&(both, mid)| s & both != both || s & mid != 0)
        {
            out.push(BitSet::from_indices(
                m,
                (0..m).filter(|k| s & (1 << k) != 0),
            ));
        }
    }
    out.sort_by(|a, b| (a.count(), a).cmp(&(b.count(), b)));
    Ok(out)
}

/// Intervals of `1..n` ordered by reverse containment, the ordering of the
/// join-irreducible congruences of the Tamari lattice on `n + 1` vertices.
pub fn brick_forcing_poset(n: usize) -> Result<Poset> {
    Ok(interval_poset(n)?.opposite())
}

/// Intervals `[a, b]` of the chain `1..n` with `a < b`, ordered by
/// containment. Isomorphic to `interval_poset(n - 1)` via `[a, b] -> [a, b-1]`.
pub fn nontrivial_interval_poset(n: usize) -> Result<Poset> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "need a chain with at least two elements".into(),
        ));
    }
    let base = interval_poset(n - 1)?;
    let labels: Vec<String> = interval_list(n - 1)
        .iter()
        .map(|(a, b)| format!("[{a},{}]", b + 1))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..base.len())
        .flat_map(|a| {
            base.up_set(a)
                .iter()
                .map(move |b| (a, b))
                .collect::<Vec<_>>()
        })
        .collect();
    Poset::from_pairs(labels, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{lattice_isomorphic, small};

    #[test]
    fn catalan_numbers() {
        let c: Vec<u64> = (0..8).map(catalan_number).collect();
        assert_eq!(c, vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn dyck_parse_and_print() {
        let d: DyckPath = "UUDUDD".parse().unwrap();
        assert_eq!(d.heights(), vec![0, 1, 2, 1, 2, 1, 0]);
        assert_eq!(d.to_string(), "UUDUDD");
        assert!("UDD".parse::<DyckPath>().is_err());
        assert!("DU".parse::<DyckPath>().is_err());
    }

    #[test]
    fn dyck_small() {
        assert_eq!(dyck_lattice(1).unwrap().len(), 1);
        assert_eq!(dyck_lattice(3).unwrap().len(), 5);
        assert_eq!(dyck_lattice(4).unwrap().len(), 14);
        assert_eq!(dyck_lattice(5).unwrap().len(), 42);
    }

    #[test]
    fn zigzag_is_bottom() {
        let z = DyckPath::zigzag(4);
        for d in DyckPath::all(4) {
            assert_eq!(z.meet(&d), z);
        }
    }

    #[test]
    fn extreme_ideals() {
        assert!(dyck_to_ideal(&DyckPath::zigzag(4)).members.is_empty());
        assert_eq!(dyck_to_ideal(&DyckPath::mountain(4)).members.count(), 6);
    }

    #[test]
    fn tamari_small() {
        assert_eq!(tamari_lattice(1).unwrap().len(), 1);
        assert!(lattice_isomorphic(&tamari_lattice(2).unwrap(), &small::chain(2)).is_some());
        assert!(lattice_isomorphic(&tamari_lattice(3).unwrap(), &small::pentagon()).is_some());
        let t4 = tamari_lattice(4).unwrap();
        assert_eq!(t4.len(), 14);
        assert!(t4.is_semidistributive());
        assert!(!t4.is_distributive());
    }

    #[test]
    fn tree_round_trip() {
        for t in BinaryTree::all(4) {
            assert_eq!(t.to_string().parse::<BinaryTree>().unwrap(), t);
            assert_eq!(t.inner_vertices(), 4);
        }
    }

    #[test]
    fn typea_small() {
        assert_eq!(typea_torsion_lattice(1).unwrap().len(), 2);
        assert_eq!(typea_torsion_lattice(2).unwrap().len(), 5);
    }

    #[test]
    fn brick_forcing_small() {
        assert_eq!(brick_forcing_poset(1).unwrap().len(), 1);
        let p = brick_forcing_poset(2).unwrap();
        // [1,2] at the bottom, the two simple intervals above it
        assert_eq!(p.minimal_elements(), vec![2]);
        assert_eq!(p.maximal_elements(), vec![0, 1]);
    }
}
