use std::collections::{HashSet, VecDeque};

use super::{ModCategory, TorsionPair};
use crate::algebra::{incidence_algebra, syzygy, Algebra, Module};
use crate::bits::BitSet;
use crate::catalan::{dyck_lattice, dyck_to_ideal, DyckPath};
use crate::error::{Error, Result};
use crate::lattice::{is_lattice_isomorphism, FinLattice};
use crate::linalg::Fp;
use crate::poset::interval_poset;

/// `succ[x]` holds the vertices `y` with `Ext^1(S_x, S_y) != 0`, read off
/// the top of the first syzygy of `S_x`.
pub fn ext_quiver(alg: &Algebra) -> Vec<BitSet> {
    let n = alg.num_vertices();
    (0..n)
        .map(|x| {
            let om = syzygy(alg, &Module::simple(alg, x), 1);
            let top = om.top_dims(alg);
            BitSet::from_indices(n, (0..n).filter(|&y| top[y] > 0))
        })
        .collect()
}

/// `succ[x]` holds the targets of arrows out of `x`. This is the
/// Ext-quiver of the path algebra `kQ` without relations, which need not be
/// finite dimensional.
pub fn arrow_quiver(alg: &Algebra) -> Vec<BitSet> {
    let n = alg.num_vertices();
    let mut succ = vec![BitSet::new(n); n];
    for a in alg.arrows() {
        succ[a.source].insert(a.target);
    }
    succ
}

/// Sets of vertices closed under successors in the Ext-quiver, sorted by
/// size and then by members.
pub fn successor_closed_sets(alg: &Algebra) -> Vec<BitSet> {
    closed_sets(&ext_quiver(alg))
}

fn closed_sets(succ: &[BitSet]) -> Vec<BitSet> {
    let n = succ.len();
    let principal: Vec<BitSet> = (0..n)
        .map(|x| {
            let mut reach = BitSet::from_indices(n, [x]);
            let mut todo = vec![x];
            while let Some(y) = todo.pop() {
                for z in succ[y].iter() {
                    if reach.insert(z) {
                        todo.push(z);
                    }
                }
            }
            reach
        })
        .collect();
    // every closed set is a union of principal ones
    let empty = BitSet::new(n);
    let mut seen: HashSet<BitSet> = HashSet::from([empty.clone()]);
    let mut queue = VecDeque::from([empty]);
    while let Some(s) = queue.pop_front() {
        for p in &principal {
            let u = s.union(p);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    let mut sets: Vec<BitSet> = seen.into_iter().collect();
    sets.sort_by(|a, b| {
        a.count()
            .cmp(&b.count())
            .then_with(|| a.iter().cmp(b.iter()))
    });
    sets
}

/// The lattice of ω-torsion pairs, as successor-closed sets of simples
/// under inclusion. Element `i` is `successor_closed_sets(alg)[i]`.
pub fn omega_lattice_via_simples(alg: &Algebra) -> Result<FinLattice> {
    set_lattice(alg, &successor_closed_sets(alg))
}

/// The ω-lattice of the path algebra on the quiver of `alg`, ignoring its
/// relations.
pub fn omega_lattice_of_quiver(alg: &Algebra) -> Result<FinLattice> {
    set_lattice(alg, &closed_sets(&arrow_quiver(alg)))
}

fn set_lattice(alg: &Algebra, sets: &[BitSet]) -> Result<FinLattice> {
    let labels = sets
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.iter().map(|v| alg.vertex_label(v)).collect();
            format!("{{{}}}", names.join(", "))
        })
        .collect();
    FinLattice::from_set_family(labels, sets)
}

/// `(Filt(U), Filt(complement))` for a set `U` of vertices.
pub fn filt_pair(cat: &ModCategory, vertices: &BitSet) -> TorsionPair {
    TorsionPair {
        tors: cat.supported_in(vertices),
        free: cat.supported_in(&vertices.complement()),
    }
}

/// Dyck lattice and ω-lattice of the incidence algebra of the opposite
/// interval poset, with a checked isomorphism between them.
#[derive(Clone, Debug)]
pub struct Theorem1Witness {
    pub dyck: FinLattice,
    pub omega: FinLattice,
    /// `map[i]` is the ω-lattice element of the `i`th Dyck path.
    pub map: Vec<usize>,
}

/// Sends each Dyck path with `n` up steps to the ideal of intervals of
/// `1..n-1` under it, read as a set of simples of the incidence algebra of
/// the opposite interval poset, and checks that this is a lattice
/// isomorphism onto the successor-closed sets.
pub fn verify_theorem_1(n: usize) -> Result<Theorem1Witness> {
    if !(2..=7).contains(&n) {
        return Err(Error::InvalidArgument(format!("n = {n} is outside 2..=7")));
    }
    let f2 = Fp::new(2)?;
    let alg = incidence_algebra(&interval_poset(n - 1)?.opposite(), f2);
    let sets = successor_closed_sets(&alg);
    let omega = omega_lattice_via_simples(&alg)?;
    let dyck = dyck_lattice(n)?;
    let paths = DyckPath::all(n);
    let mut map = Vec::with_capacity(paths.len());
    for p in &paths {
        let ideal = dyck_to_ideal(p);
        let idx = sets
            .iter()
            .position(|s| *s == ideal.members)
            .ok_or_else(|| {
                Error::VerificationFailed(format!(
                    "path {p} gives {:?}, which is not successor closed",
                    ideal.members
                ))
            })?;
        map.push(idx);
    }
    if dyck.len() != omega.len() || !is_lattice_isomorphism(&dyck, &omega, &map) {
        return Err(Error::VerificationFailed(format!(
            "Dyck lattice ({} elements) and omega lattice ({} elements) are not matched by the ideal map",
            dyck.len(),
            omega.len()
        )));
    }
    Ok(Theorem1Witness { dyck, omega, map })
}
