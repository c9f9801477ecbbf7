//! Finite-dimensional algebras `kQ/I` over `F_p` and their right modules,
//! realised as quiver representations.
//!
//! Paths compose left to right: `ab` is `a` followed by `b`. A module
//! assigns to each arrow `a: s -> t` a `dims[t] x dims[s]` matrix acting on
//! column vectors, so the path `a1 a2 .. ak` acts as `M_ak .. M_a2 M_a1`.

mod decompose;
mod enumerate;
mod homological;
mod module;

pub use decompose::{
    decompose, is_indecomposable, is_isomorphic, summands, summands_with, DecomposeOptions,
};
pub use enumerate::{indecomposables, EnumerateOptions};
pub use homological::{
    cosyzygy, ext, ext1_classes, ext_dual_route, ext_from_resolution, extension_space,
    global_dimension, injective_envelope, middle_term, min_resolution, projective_cover, syzygy,
    ExtensionSpace, GlobalDimension, Resolution,
};
pub use module::{hom, hom_dim, Module, ModuleJson, ModuleMap};

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix};
use crate::poset::Poset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path in the quiver. A trivial path has no arrows and equal ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if the ends match.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(u32, Path)>,
}

/// Wire form of an algebra: arrows by name, relations as signed lists of
/// arrow-name paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(default = "default_field")]
    pub field: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub relations: Vec<Vec<(i64, Vec<String>)>>,
}

fn default_field() -> u32 {
    2
}

/// `kQ/I` together with a basis of normal-form paths.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Fp,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    /// Every path shorter than `loewy`, the coordinates used for reduction.
    paths: Vec<Path>,
    path_index: HashMap<Path, usize>,
    /// Normal form of each coordinate path over `basis`.
    normal: Vec<Vec<(usize, u32)>>,
    /// Coordinate indices of the basis paths.
    basis: Vec<usize>,
    /// Paths of this length or longer are zero.
    loewy: usize,
    op: OnceLock<Box<Algebra>>,
}

const MAX_LOEWY: usize = 64;

impl Algebra {
    /// Builds `kQ/I`. The ideal must contain every path of some length; if
    /// no such length below 64 is found the input is rejected.
    pub fn new(
        field: Fp,
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        let nv = vertices.len();
        for a in &arrows {
            if a.source >= nv || a.target >= nv {
                return Err(Error::InvalidAlgebra(format!(
                    "arrow {} has an unknown end",
                    a.name
                )));
            }
        }
        let mut relations = relations;
        for r in &mut relations {
            r.terms.retain(|(c, _)| field.from_i64(*c as i64) != 0);
            let Some((_, first)) = r.terms.first() else {
                continue;
            };
            let (s, t) = (first.source, first.target);
            for (_, p) in &r.terms {
                if p.source != s || p.target != t {
                    return Err(Error::InvalidAlgebra(
                        "relation mixes non-parallel paths".into(),
                    ));
                }
                if p.len() < 2 {
                    return Err(Error::InvalidAlgebra(
                        "relation terms must have length at least 2".into(),
                    ));
                }
                check_path(&arrows, p)?;
            }
        }
        relations.retain(|r| !r.terms.is_empty());

        let mut loewy = None;
        for l in 1..=MAX_LOEWY {
            let paths = paths_up_to(nv, &arrows, l);
            if paths.iter().all(|p| p.len() < l) {
                // no path of length l exists
                loewy = Some(l);
                break;
            }
            let (span, index) = ideal_span(field, &paths, &relations, l);
            let in_ideal = paths
                .iter()
                .filter(|p| p.len() == l)
                .all(|p| span.contains_path(index[p]));
            if in_ideal {
                loewy = Some(l);
                break;
            }
        }
        let loewy = loewy.ok_or_else(|| {
            Error::InvalidAlgebra(
                "relations do not bound the path length; algebra looks infinite".into(),
            )
        })?;

        let paths: Vec<Path> = paths_up_to(nv, &arrows, loewy - 1);
        let (span, path_index) = ideal_span(field, &paths, &relations, loewy - 1);
        let rows = span.rows;
        let n = paths.len();
        let mut pivot_row = vec![None; n];
        for (r, &pc) in span.pivots.iter().enumerate() {
            pivot_row[pc] = Some(r);
        }
        let basis: Vec<usize> = (0..n).filter(|&c| pivot_row[c].is_none()).collect();
        let mut pos = vec![usize::MAX; n];
        for (k, &c) in basis.iter().enumerate() {
            pos[c] = k;
        }
        let normal = (0..n)
            .map(|c| match pivot_row[c] {
                None => vec![(pos[c], 1)],
                Some(r) => rows[r]
                    .iter()
                    .enumerate()
                    .filter(|&(k, &x)| x != 0 && k != c)
                    .map(|(k, &x)| (pos[k], field.neg(x)))
                    .collect(),
            })
            .collect();
        let alg = Algebra {
            field,
            vertices,
            arrows,
            relations,
            paths,
            path_index,
            normal,
            basis,
            loewy,
            op: OnceLock::new(),
        };
        Ok(alg)
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Paths of this length vanish in the algebra.
    pub fn loewy_bound(&self) -> usize {
        self.loewy
    }

    /// Basis of normal-form paths.
    pub fn basis(&self) -> impl Iterator<Item = &Path> + '_ {
        self.basis.iter().map(move |&c| &self.paths[c])
    }

    pub fn basis_path(&self, k: usize) -> &Path {
        &self.paths[self.basis[k]]
    }

    /// Normal form of a path as `(basis index, coefficient)` pairs.
    pub fn reduce_path(&self, p: &Path) -> Vec<(usize, u32)> {
        if p.len() >= self.loewy {
            return Vec::new();
        }
        self.normal[self.path_index[p]].clone()
    }

    /// Product of two basis elements, in the basis.
    pub fn multiply_basis(&self, i: usize, j: usize) -> Vec<(usize, u32)> {
        match self.basis_path(i).concat(self.basis_path(j)) {
            Some(p) => self.reduce_path(&p),
            None => Vec::new(),
        }
    }

    /// Basis indices of the normal paths from `v` to `w`.
    pub fn basis_between(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| {
                let p = self.basis_path(k);
                p.source == v && p.target == w
            })
            .collect()
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.is_empty() {
            format!("e{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("")
        }
    }

    /// The opposite algebra: every arrow and every path reversed. Built on
    /// first use and kept.
    pub fn opposite(&self) -> &Algebra {
        self.op.get_or_init(|| Box::new(self.build_opposite()))
    }

    fn build_opposite(&self) -> Algebra {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| {
                        (
                            *c,
                            Path {
                                source: p.target,
                                target: p.source,
                                arrows: p.arrows.iter().rev().copied().collect(),
                            },
                        )
                    })
                    .collect(),
            })
            .collect();
        Algebra::new(self.field, self.vertices.clone(), arrows, relations)
            .expect("opposite of a valid algebra")
    }

    /// The same quiver with every relation dropped. Only finite for acyclic
    /// quivers.
    pub fn without_relations(&self) -> Result<Algebra> {
        Algebra::new(
            self.field,
            self.vertices.clone(),
            self.arrows.clone(),
            Vec::new(),
        )
    }

    /// The same presentation over another prime field.
    pub fn with_field(&self, field: Fp) -> Result<Algebra> {
        Algebra::new(
            field,
            self.vertices.clone(),
            self.arrows.clone(),
            self.relations.clone(),
        )
    }

    /// Parse a path given as arrow names.
    pub fn path_from_names(&self, names: &[String]) -> Result<Path> {
        parse_path(&self.arrows, names)
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            field: self.field.p(),
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, p)| {
                            let c = *c as i64;
                            let signed = if c > self.field.p() as i64 / 2 {
                                c - self.field.p() as i64
                            } else {
                                c
                            };
                            (
                                signed,
                                p.arrows
                                    .iter()
                                    .map(|&a| self.arrows[a].name.clone())
                                    .collect(),
                            )
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Algebra> {
        let field = Fp::new(json.field)?;
        let relations = json
            .relations
            .iter()
            .map(|terms| {
                Ok(Relation {
                    terms: terms
                        .iter()
                        .map(|(c, names)| {
                            Ok((field.from_i64(*c), parse_path(&json.arrows, names)?))
                        })
                        .collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(field, json.vertices.clone(), json.arrows.clone(), relations)
    }
}

fn check_path(arrows: &[Arrow], p: &Path) -> Result<()> {
    let mut at = p.source;
    for &a in &p.arrows {
        let arrow = arrows
            .get(a)
            .ok_or_else(|| Error::InvalidAlgebra("unknown arrow index".into()))?;
        if arrow.source != at {
            return Err(Error::InvalidAlgebra(
                "arrows in a path do not compose".into(),
            ));
        }
        at = arrow.target;
    }
    if at != p.target {
        return Err(Error::InvalidAlgebra(
            "path ends at the wrong vertex".into(),
        ));
    }
    Ok(())
}

fn parse_path(arrows: &[Arrow], names: &[String]) -> Result<Path> {
    let idx = names
        .iter()
        .map(|n| {
            arrows
                .iter()
                .position(|a| &a.name == n)
                .ok_or_else(|| Error::Parse(format!("unknown arrow {n:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let (Some(&first), Some(&last)) = (idx.first(), idx.last()) else {
        return Err(Error::Parse("empty path in relation".into()));
    };
    let p = Path {
        source: arrows[first].source,
        target: arrows[last].target,
        arrows: idx,
    };
    check_path(arrows, &p)?;
    Ok(p)
}

/// All paths of length at most `max_len`, shortest first.
fn paths_up_to(nv: usize, arrows: &[Arrow], max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..nv).map(Path::trivial).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (k, a) in arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows_p = p.arrows.clone();
                    arrows_p.push(k);
                    next.push(Path {
                        source: p.source,
                        target: a.target,
                        arrows: arrows_p,
                    });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Span of the two-sided ideal generated by the relations, with every path
/// longer than `max_len` dropped, in reduced echelon form. Row entries are
/// indexed like `paths`; `pivots[r]` is the pivot path of row `r`.
struct IdealSpan {
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl IdealSpan {
    /// The unit vector at path `k` lies in the span iff some row is exactly it.
    fn contains_path(&self, k: usize) -> bool {
        self.rows
            .iter()
            .zip(&self.pivots)
            .any(|(row, &pc)| pc == k && row.iter().enumerate().all(|(c, &x)| c == k || x == 0))
    }
}

fn ideal_span(
    field: Fp,
    paths: &[Path],
    relations: &[Relation],
    max_len: usize,
) -> (IdealSpan, HashMap<Path, usize>) {
    let n = paths.len();
    let path_index: HashMap<Path, usize> = paths
        .iter()
        .enumerate()
        .map(|(k, p)| (p.clone(), k))
        .collect();
    // Eliminate longest paths first so normal forms are as short as possible.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        paths[b]
            .len()
            .cmp(&paths[a].len())
            .then_with(|| paths[a].cmp(&paths[b]))
    });
    let mut col_of = vec![0; n];
    for (col, &k) in order.iter().enumerate() {
        col_of[k] = col;
    }
    let mut by_target: BTreeMap<usize, Vec<&Path>> = BTreeMap::new();
    let mut by_source: BTreeMap<usize, Vec<&Path>> = BTreeMap::new();
    for p in paths {
        by_target.entry(p.target).or_default().push(p);
        by_source.entry(p.source).or_default().push(p);
    }
    let mut data: Vec<u32> = Vec::new();
    let mut count = 0;
    for r in relations {
        let (s, t) = (r.terms[0].1.source, r.terms[0].1.target);
        let min_len = r.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
        for pre in by_target.get(&s).into_iter().flatten() {
            for post in by_source.get(&t).into_iter().flatten() {
                if pre.len() + min_len + post.len() > max_len {
                    continue;
                }
                let mut v = vec![0u32; n];
                for (c, p) in &r.terms {
                    let full = pre
                        .concat(p)
                        .and_then(|x| x.concat(post))
                        .expect("composable");
                    if full.len() <= max_len {
                        let col = col_of[path_index[&full]];
                        v[col] = field.add(v[col], *c);
                    }
                }
                if v.iter().any(|&x| x != 0) {
                    data.extend(v);
                    count += 1;
                }
            }
        }
    }
    let mut span = IdealSpan {
        rows: Vec::new(),
        pivots: Vec::new(),
    };
    if count > 0 {
        let r = Matrix::from_vec(field, count, n, data).rref();
        for i in 0..r.rank {
            let row = r.matrix.row(i);
            span.rows.push((0..n).map(|k| row[col_of[k]]).collect());
            span.pivots.push(order[r.pivots[i]]);
        }
    }
    (span, path_index)
}

/// Incidence algebra of a finite poset: one vertex per element, an arrow
/// `x -> y` for each cover `x < y`, and every pair of parallel paths
/// identified.
pub fn incidence_algebra(p: &Poset, field: Fp) -> Algebra {
    let vertices = p.labels().to_vec();
    let arrows: Vec<Arrow> = p
        .covers()
        .iter()
        .map(|&(x, y)| Arrow {
            name: format!("{}>{}", p.label(x), p.label(y)),
            source: x,
            target: y,
        })
        .collect();
    let all = paths_up_to(p.len(), &arrows, p.len());
    let mut by_ends: BTreeMap<(usize, usize), Vec<&Path>> = BTreeMap::new();
    for q in all.iter().filter(|q| q.len() >= 2) {
        by_ends.entry((q.source, q.target)).or_default().push(q);
    }
    let one = 1;
    let minus_one = field.neg(1);
    let mut relations = Vec::new();
    for group in by_ends.values() {
        for q in &group[1..] {
            relations.push(Relation {
                terms: vec![(one, group[0].clone()), (minus_one, (*q).clone())],
            });
        }
    }
    Algebra::new(field, vertices, arrows, relations)
        .expect("incidence algebras are finite-dimensional")
}

/// Path algebra of `1 -> 2 -> ... -> n`.
pub fn linear_a(n: usize, field: Fp) -> Algebra {
    let vertices = (1..=n).map(|v| v.to_string()).collect();
    let arrows = (0..n.saturating_sub(1))
        .map(|v| Arrow {
            name: format!("a{}", v + 1),
            source: v,
            target: v + 1,
        })
        .collect();
    Algebra::new(field, vertices, arrows, Vec::new()).expect("acyclic quiver")
}

/// `k` points, no arrows.
pub fn semisimple(k: usize, field: Fp) -> Algebra {
    let vertices = (1..=k).map(|v| v.to_string()).collect();
    Algebra::new(field, vertices, Vec::new(), Vec::new()).expect("no arrows")
}

/// The quiver `1 <-> 2` with `a: 1 -> 2`, `b: 2 -> 1` and the relation
/// `ab = 0` (`a` then `b`).
///
/// The presentation is checked on construction: the projective at `2`
/// must have dimension vector `(1, 2)` and be injective, and the global
/// dimension must be 2. If the composition convention were the other one
/// these fail and the relation is taken as `ba` instead.
pub fn example_algebra(field: Fp) -> Algebra {
    let build = |first: usize, second: usize| {
        let vertices = vec!["1".to_string(), "2".to_string()];
        let arrows = vec![
            Arrow {
                name: "a".into(),
                source: 0,
                target: 1,
            },
            Arrow {
                name: "b".into(),
                source: 1,
                target: 0,
            },
        ];
        let src = arrows[first].source;
        let relation = Relation {
            terms: vec![(
                1,
                Path {
                    source: src,
                    target: src,
                    arrows: vec![first, second],
                },
            )],
        };
        Algebra::new(field, vertices, arrows, vec![relation])
            .expect("monomial relation on a 2-cycle")
    };
    let alg = build(0, 1);
    if example_facts_hold(&alg) {
        alg
    } else {
        build(1, 0)
    }
}

fn example_facts_hold(alg: &Algebra) -> bool {
    let p2 = Module::projective(alg, 1);
    let i2 = Module::injective(alg, 1);
    p2.dims() == [1, 2]
        && is_isomorphic(alg, &p2, &i2).unwrap_or(false)
        && global_dimension(alg, 6) == GlobalDimension::Exact(2)
}
