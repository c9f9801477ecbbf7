use std::collections::{HashSet, VecDeque};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{Fingerprint, ModCategory, OmegaRoute, Subcat, TorsionPair};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{FinLattice, LatticeJson};
use crate::poset::Poset;

/// Limits for the enumeration of torsion classes.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_classes: usize,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_classes: 2000,
            max_time: Some(Duration::from_secs(600)),
        }
    }
}

/// Torsion pairs ordered by inclusion of torsion classes. Element `i` of
/// `lattice` is `pairs[i]`; pairs are sorted by size, then by members.
#[derive(Clone, Debug)]
pub struct TorsionLattice {
    pub pairs: Vec<TorsionPair>,
    pub lattice: FinLattice,
}

/// Breadth-first join closure from the zero class. The generators are the
/// classes `T({M})`, and the join of two classes is `⊥(T^⊥ ∩ T'^⊥)`.
pub fn enumerate_torsion_pairs(cat: &ModCategory, budget: &Budget) -> Result<TorsionLattice> {
    let start = Instant::now();
    let k = cat.len();
    let generators: Vec<Subcat> = {
        let mut seen = HashSet::new();
        (0..k)
            .map(|i| cat.torsion_closure(&BitSet::from_indices(k, [i])))
            .filter(|g| seen.insert(g.clone()))
            .collect()
    };
    let gen_perps: Vec<Subcat> = generators.iter().map(|g| cat.perp(g)).collect();

    let zero = cat.empty();
    let mut seen: HashSet<Subcat> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(t) = queue.pop_front() {
        let free = cat.perp(&t);
        for gp in &gen_perps {
            let joined = cat.left_perp(&free.intersection(gp));
            if seen.insert(joined.clone()) {
                if seen.len() > budget.max_classes {
                    return Err(Error::BudgetExceeded {
                        classes: seen.len(),
                        reason: format!("class cap {}", budget.max_classes),
                    });
                }
                queue.push_back(joined);
            }
        }
        if let Some(limit) = budget.max_time {
            if start.elapsed() > limit {
                return Err(Error::BudgetExceeded {
                    classes: seen.len(),
                    reason: format!("time budget {}s", limit.as_secs()),
                });
            }
        }
    }

    let mut classes: Vec<Subcat> = seen.into_iter().collect();
    classes.sort_by(|a, b| {
        a.count()
            .cmp(&b.count())
            .then_with(|| a.iter().cmp(b.iter()))
    });
    let pairs: Vec<TorsionPair> = classes
        .into_iter()
        .map(|tors| TorsionPair {
            free: cat.perp(&tors),
            tors,
        })
        .collect();
    let n = pairs.len();
    let up: Vec<BitSet> = (0..n)
        .map(|a| {
            BitSet::from_indices(
                n,
                (0..n).filter(|&b| pairs[a].tors.is_subset(&pairs[b].tors)),
            )
        })
        .collect();
    let labels = pairs.iter().map(|p| cat.format(&p.tors)).collect();
    let lattice = FinLattice::from_order(Poset::from_up_sets(labels, up)?)?;
    Ok(TorsionLattice { pairs, lattice })
}

/// One torsion pair in exported form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub tors: Vec<usize>,
    pub free: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionLatticeJson {
    pub indecomposables: Vec<Fingerprint>,
    pub classes: Vec<ClassJson>,
    pub hasse: Vec<[usize; 2]>,
    pub lattice: LatticeJson,
}

impl TorsionLattice {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, tors: &Subcat) -> Option<usize> {
        self.pairs.iter().position(|p| p.tors == *tors)
    }

    /// Indices of the pairs satisfying `pred`.
    pub fn select(&self, mut pred: impl FnMut(&TorsionPair) -> Result<bool>) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, p) in self.pairs.iter().enumerate() {
            if pred(p)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// The lattice meet of any two pairs has torsion class the intersection,
    /// and that intersection is a torsion class.
    pub fn meets_are_intersections(&self, cat: &ModCategory) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (a..n).all(|b| {
                let inter = self.pairs[a].tors.intersection(&self.pairs[b].tors);
                cat.is_torsion_class(&inter) && self.pairs[self.lattice.meet(a, b)].tors == inter
            })
        })
    }

    /// The lattice join has torsion-free class the intersection of the two.
    pub fn joins_are_free_intersections(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (a..n).all(|b| {
                self.pairs[self.lattice.join(a, b)].free
                    == self.pairs[a].free.intersection(&self.pairs[b].free)
            })
        })
    }

    /// Whether a set of elements is closed under meet and join.
    pub fn is_sublattice(&self, members: &[usize]) -> bool {
        let set: HashSet<usize> = members.iter().copied().collect();
        members.iter().all(|&a| {
            members.iter().all(|&b| {
                set.contains(&self.lattice.meet(a, b)) && set.contains(&self.lattice.join(a, b))
            })
        })
    }

    /// The sublattice on the given elements, with the same labels.
    pub fn restrict(&self, members: &[usize]) -> Result<FinLattice> {
        let up: Vec<BitSet> = members
            .iter()
            .map(|&a| {
                BitSet::from_indices(
                    members.len(),
                    (0..members.len()).filter(|&j| self.lattice.leq(a, members[j])),
                )
            })
            .collect();
        let labels = members
            .iter()
            .map(|&a| self.lattice.label(a).to_string())
            .collect();
        FinLattice::from_order(Poset::from_up_sets(labels, up)?)
    }

    /// Predicate tags per pair: ω1, ω2, hereditary, cohereditary, split.
    pub fn tags(&self, cat: &ModCategory) -> Result<Vec<Vec<String>>> {
        self.pairs
            .iter()
            .map(|p| {
                let mut t = Vec::new();
                if cat.is_omega_n(p, 1, OmegaRoute::Ext)? {
                    t.push("omega1".to_string());
                }
                if cat.is_omega_n(p, 2, OmegaRoute::Ext)? {
                    t.push("omega2".to_string());
                }
                if cat.is_hereditary(p) {
                    t.push("hereditary".to_string());
                }
                if cat.is_cohereditary(p) {
                    t.push("cohereditary".to_string());
                }
                if cat.is_split(p) {
                    t.push("split".to_string());
                }
                Ok(t)
            })
            .collect()
    }

    pub fn to_json(&self, cat: &ModCategory, tags: Option<&[Vec<String>]>) -> TorsionLatticeJson {
        TorsionLatticeJson {
            indecomposables: (0..cat.len()).map(|i| cat.fingerprint(i)).collect(),
            classes: self
                .pairs
                .iter()
                .enumerate()
                .map(|(i, p)| ClassJson {
                    tors: p.tors.iter().collect(),
                    free: p.free.iter().collect(),
                    tags: tags.map(|t| t[i].clone()).unwrap_or_default(),
                })
                .collect(),
            hasse: self.lattice.covers().iter().map(|&(a, b)| [a, b]).collect(),
            lattice: self.lattice.to_json(),
        }
    }

    pub fn to_dot(&self, name: &str, tags: Option<&[Vec<String>]>) -> String {
        self.lattice.to_dot(name, |i| {
            tags.map(|t| t[i].join(" ")).filter(|s| !s.is_empty())
        })
    }
}
