//! Torsion pairs of a representation-finite algebra, computed over a fixed
//! list of indecomposable modules.
//!
//! A subcategory is stored as the set of indecomposables it contains;
//! additive closure is implicit. Hom-vanishing between indecomposables is
//! precomputed, so the closure `T(S) = ⊥(S^⊥)` and all lattice operations
//! are bit operations. Ext groups, syzygies and extension middle terms are
//! computed on demand and cached.

mod enumerate;
mod omega;

pub use enumerate::{
    enumerate_torsion_pairs, Budget, ClassJson, TorsionLattice, TorsionLatticeJson,
};
pub use omega::{
    arrow_quiver, ext_quiver, filt_pair, omega_lattice_of_quiver, omega_lattice_via_simples,
    successor_closed_sets, verify_theorem_1, Theorem1Witness,
};

use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    cosyzygy, ext1_classes, ext_from_resolution, hom, indecomposables, injective_envelope,
    is_isomorphic, min_resolution, projective_cover, summands, syzygy, Algebra, EnumerateOptions,
    Module, ModuleMap,
};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::linalg::Subspace;

/// A subcategory, as a set of indices into the indecomposable list.
pub type Subcat = BitSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionPair {
    pub tors: Subcat,
    pub free: Subcat,
}

/// The three equivalent descriptions of an ω_n-torsion pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OmegaRoute {
    /// `Ext^n(T, F) = 0`.
    Ext,
    /// `T` closed under `n`th syzygies.
    Syzygy,
    /// `F` closed under `n`th cosyzygies.
    Cosyzygy,
}

impl OmegaRoute {
    pub const ALL: [OmegaRoute; 3] = [OmegaRoute::Ext, OmegaRoute::Syzygy, OmegaRoute::Cosyzygy];
}

/// An indecomposable as it appears in exported data.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub index: usize,
    pub name: String,
    pub dims: Vec<usize>,
}

pub struct ModCategory {
    alg: Algebra,
    indecs: Vec<Module>,
    names: Vec<String>,
    homs: Vec<Vec<Vec<ModuleMap>>>,
    hom_out: Vec<BitSet>,
    hom_in: Vec<BitSet>,
    ext_cache: RefCell<HashMap<usize, Vec<Vec<usize>>>>,
    syz_cache: RefCell<HashMap<usize, Vec<BitSet>>>,
    cosyz_cache: RefCell<HashMap<usize, Vec<BitSet>>>,
    middle_cache: RefCell<HashMap<(usize, usize), BitSet>>,
}

impl ModCategory {
    /// Enumerates the indecomposables and precomputes all Hom spaces.
    pub fn new(alg: Algebra, opts: &EnumerateOptions) -> Result<Self> {
        let indecs = indecomposables(&alg, opts)?;
        Self::from_indecomposables(alg, indecs)
    }

    /// Uses a caller-supplied list, which must be pairwise non-isomorphic
    /// indecomposables.
    pub fn from_indecomposables(alg: Algebra, indecs: Vec<Module>) -> Result<Self> {
        let k = indecs.len();
        for m in &indecs {
            if !m.satisfies_relations(&alg) {
                return Err(Error::InvalidModule(
                    "listed module violates the relations".into(),
                ));
            }
        }
        let homs: Vec<Vec<Vec<ModuleMap>>> = indecs
            .iter()
            .map(|m| indecs.iter().map(|n| hom(&alg, m, n)).collect())
            .collect();
        let hom_out: Vec<BitSet> = (0..k)
            .map(|i| BitSet::from_indices(k, (0..k).filter(|&j| !homs[i][j].is_empty())))
            .collect();
        let hom_in: Vec<BitSet> = (0..k)
            .map(|j| BitSet::from_indices(k, (0..k).filter(|&i| !homs[i][j].is_empty())))
            .collect();
        let names = name_modules(&alg, &indecs)?;
        Ok(ModCategory {
            alg,
            indecs,
            names,
            homs,
            hom_out,
            hom_in,
            ext_cache: RefCell::default(),
            syz_cache: RefCell::default(),
            cosyz_cache: RefCell::default(),
            middle_cache: RefCell::default(),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.indecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecs.is_empty()
    }

    pub fn indecomposables(&self) -> &[Module] {
        &self.indecs
    }

    pub fn module(&self, i: usize) -> &Module {
        &self.indecs[i]
    }

    /// `S<v>`, `P<v>`, `I<v>` for simples, projectives and injectives (in
    /// that order of preference), `M<i>` otherwise.
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn fingerprint(&self, i: usize) -> Fingerprint {
        Fingerprint {
            index: i,
            name: self.names[i].clone(),
            dims: self.indecs[i].dims().to_vec(),
        }
    }

    pub fn empty(&self) -> Subcat {
        BitSet::new(self.len())
    }

    pub fn all(&self) -> Subcat {
        BitSet::full(self.len())
    }

    /// Subcategory from names such as `["S1", "P1"]`.
    pub fn subcat(&self, names: &[&str]) -> Result<Subcat> {
        let mut s = self.empty();
        for n in names {
            let i = self
                .index_of_name(n)
                .ok_or_else(|| Error::InvalidArgument(format!("no indecomposable named {n}")))?;
            s.insert(i);
        }
        Ok(s)
    }

    /// `{S2, P2, I1}`, or `0` for the empty subcategory.
    pub fn format(&self, s: &Subcat) -> String {
        if s.is_empty() {
            return "0".into();
        }
        let parts: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn hom_nonzero(&self, i: usize, j: usize) -> bool {
        self.hom_out[i].contains(j)
    }

    pub fn hom_basis(&self, i: usize, j: usize) -> &[ModuleMap] {
        &self.homs[i][j]
    }

    /// Right perpendicular: indecomposables receiving no nonzero map from `S`.
    pub fn perp(&self, s: &Subcat) -> Subcat {
        let mut out = self.all();
        for i in s.iter() {
            out.difference_with(&self.hom_out[i]);
        }
        out
    }

    /// Left perpendicular: indecomposables with no nonzero map into `S`.
    pub fn left_perp(&self, s: &Subcat) -> Subcat {
        let mut out = self.all();
        for j in s.iter() {
            out.difference_with(&self.hom_in[j]);
        }
        out
    }

    /// Smallest torsion class containing `S`, as `⊥(S^⊥)`.
    pub fn torsion_closure(&self, s: &Subcat) -> Subcat {
        self.left_perp(&self.perp(s))
    }

    /// Smallest torsion-free class containing `S`, as `(⊥S)^⊥`.
    pub fn free_closure(&self, s: &Subcat) -> Subcat {
        self.perp(&self.left_perp(s))
    }

    pub fn is_torsion_class(&self, s: &Subcat) -> bool {
        self.torsion_closure(s) == *s
    }

    pub fn is_torsion_free_class(&self, s: &Subcat) -> bool {
        self.free_closure(s) == *s
    }

    /// The torsion pair whose torsion class is generated by `S`.
    pub fn pair_generated_by(&self, s: &Subcat) -> TorsionPair {
        let free = self.perp(s);
        TorsionPair {
            tors: self.left_perp(&free),
            free,
        }
    }

    /// `free = T^⊥` and `tors = ⊥F`.
    pub fn is_torsion_pair(&self, p: &TorsionPair) -> bool {
        self.perp(&p.tors) == p.free && self.left_perp(&p.free) == p.tors
    }

    /// Indices of the indecomposable summands of `M`, which must all be in
    /// the list.
    pub fn locate(&self, m: &Module) -> Result<BitSet> {
        let mut out = self.empty();
        for s in summands(&self.alg, m)? {
            let i = self
                .indecs
                .iter()
                .position(|x| {
                    x.dims() == s.dims() && is_isomorphic(&self.alg, x, &s).unwrap_or(false)
                })
                .ok_or_else(|| Error::UnknownSummand(format!("{:?}", s.dims())))?;
            out.insert(i);
        }
        Ok(out)
    }

    /// Indecomposables that are quotients of a sum of copies of members of
    /// `S`: the images of all maps from `S` together span the module.
    pub fn generated_by(&self, s: &Subcat) -> Subcat {
        let f = self.alg.field();
        let mut out = self.empty();
        for (j, n) in self.indecs.iter().enumerate() {
            let mut trace: Vec<Subspace> = n.dims().iter().map(|&d| Subspace::zero(f, d)).collect();
            for i in s.iter() {
                for g in &self.homs[i][j] {
                    for (t, im) in trace.iter_mut().zip(g.image_spaces()) {
                        *t = t.sum(&im);
                    }
                }
            }
            if trace.iter().zip(n.dims()).all(|(t, &d)| t.dim() == d) {
                out.insert(j);
            }
        }
        out
    }

    /// Indecomposables that embed into a sum of copies of members of `S`:
    /// the kernels of all maps into `S` meet in zero.
    pub fn cogenerated_by(&self, s: &Subcat) -> Subcat {
        let f = self.alg.field();
        let mut out = self.empty();
        for (j, n) in self.indecs.iter().enumerate() {
            let mut common: Vec<Subspace> =
                n.dims().iter().map(|&d| Subspace::full(f, d)).collect();
            for i in s.iter() {
                for g in &self.homs[j][i] {
                    for (c, k) in common.iter_mut().zip(g.kernel_spaces()) {
                        *c = c.intersect(&k);
                    }
                }
            }
            if common.iter().all(|c| c.dim() == 0) {
                out.insert(j);
            }
        }
        out
    }

    /// Indecomposable summands of middle terms of all nonzero classes in
    /// `Ext^1(M_i, M_j)`, i.e. of sequences `0 -> M_j -> E -> M_i -> 0`.
    pub fn extension_summands(&self, i: usize, j: usize) -> Result<BitSet> {
        if let Some(s) = self.middle_cache.borrow().get(&(i, j)) {
            return Ok(s.clone());
        }
        let mut out = self.empty();
        for e in ext1_classes(&self.alg, &self.indecs[i], &self.indecs[j]) {
            out.union_with(&self.locate(&e)?);
        }
        self.middle_cache.borrow_mut().insert((i, j), out.clone());
        Ok(out)
    }

    pub fn closed_under_quotients(&self, s: &Subcat) -> bool {
        self.generated_by(s).is_subset(s)
    }

    pub fn closed_under_submodules(&self, s: &Subcat) -> bool {
        self.cogenerated_by(s).is_subset(s)
    }

    pub fn closed_under_extensions(&self, s: &Subcat) -> Result<bool> {
        for i in s.iter() {
            for j in s.iter() {
                if !self.extension_summands(i, j)?.is_subset(s) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_serre(&self, s: &Subcat) -> Result<bool> {
        Ok(self.closed_under_quotients(s)
            && self.closed_under_submodules(s)
            && self.closed_under_extensions(s)?)
    }

    /// Torsion closure built up from the definition: repeatedly add every
    /// indecomposable generated by the current members and every summand of
    /// an extension between two members.
    pub fn torsion_closure_constructive(&self, s: &Subcat) -> Result<Subcat> {
        let mut cur = s.clone();
        loop {
            let mut next = cur.union(&self.generated_by(&cur));
            for i in cur.iter() {
                for j in cur.iter() {
                    next.union_with(&self.extension_summands(i, j)?);
                }
            }
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `torsion_closure`, checked against the constructive closure and
    /// against quotients of triple sums of members.
    pub fn audited_torsion_closure(&self, s: &Subcat) -> Result<Subcat> {
        let t = self.torsion_closure(s);
        let c = self.torsion_closure_constructive(s)?;
        if t != c {
            return Err(Error::AuditFailed(format!(
                "closure of {}: perpendicular route gives {}, constructive route gives {}",
                self.format(s),
                self.format(&t),
                self.format(&c)
            )));
        }
        self.audit_triple_quotients(&t)?;
        if !self.closed_under_extensions(&t)? {
            return Err(Error::AuditFailed(format!(
                "{} is not extension closed",
                self.format(&t)
            )));
        }
        Ok(t)
    }

    /// Every indecomposable that is a quotient of `X ⊕ Y ⊕ Z` for members
    /// `X, Y, Z` of `T` lies in `T`.
    fn audit_triple_quotients(&self, t: &Subcat) -> Result<()> {
        let members: Vec<usize> = t.iter().collect();
        for (a, &x) in members.iter().enumerate() {
            for (b, &y) in members.iter().enumerate().skip(a) {
                for &z in members.iter().skip(b) {
                    let gen = self.generated_by(&BitSet::from_indices(self.len(), [x, y, z]));
                    if !gen.is_subset(t) {
                        return Err(Error::AuditFailed(format!(
                            "{} has a quotient of {} + {} + {} outside it",
                            self.format(t),
                            self.name(x),
                            self.name(y),
                            self.name(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `ext[i][j] = dim Ext^n(M_i, M_j)`.
    pub fn ext_table(&self, n: usize) -> Vec<Vec<usize>> {
        if let Some(t) = self.ext_cache.borrow().get(&n) {
            return t.clone();
        }
        let table: Vec<Vec<usize>> = self
            .indecs
            .iter()
            .map(|m| {
                let res = min_resolution(&self.alg, m, n + 1);
                self.indecs
                    .iter()
                    .map(|x| ext_from_resolution(&self.alg, &res, x, n))
                    .collect()
            })
            .collect();
        self.ext_cache.borrow_mut().insert(n, table.clone());
        table
    }

    /// `syz[i]` = summands of the `n`th syzygy of `M_i`.
    pub fn syzygy_summands(&self, n: usize) -> Result<Vec<BitSet>> {
        self.cached_summands(&self.syz_cache, n, |m| syzygy(&self.alg, m, n))
    }

    pub fn cosyzygy_summands(&self, n: usize) -> Result<Vec<BitSet>> {
        self.cached_summands(&self.cosyz_cache, n, |m| cosyzygy(&self.alg, m, n))
    }

    fn cached_summands(
        &self,
        cache: &RefCell<HashMap<usize, Vec<BitSet>>>,
        n: usize,
        op: impl Fn(&Module) -> Module,
    ) -> Result<Vec<BitSet>> {
        if let Some(v) = cache.borrow().get(&n) {
            return Ok(v.clone());
        }
        let v = self
            .indecs
            .iter()
            .map(|m| self.locate(&op(m)))
            .collect::<Result<Vec<_>>>()?;
        cache.borrow_mut().insert(n, v.clone());
        Ok(v)
    }

    pub fn is_omega_n(&self, p: &TorsionPair, n: usize, route: OmegaRoute) -> Result<bool> {
        if n == 0 {
            return Err(Error::InvalidArgument("omega_n needs n >= 1".into()));
        }
        Ok(match route {
            OmegaRoute::Ext => {
                let ext = self.ext_table(n);
                p.tors.iter().all(|t| p.free.iter().all(|f| ext[t][f] == 0))
            }
            OmegaRoute::Syzygy => {
                let syz = self.syzygy_summands(n)?;
                p.tors.iter().all(|t| syz[t].is_subset(&p.tors))
            }
            OmegaRoute::Cosyzygy => {
                let cos = self.cosyzygy_summands(n)?;
                p.free.iter().all(|f| cos[f].is_subset(&p.free))
            }
        })
    }

    /// All three routes, failing if they disagree.
    pub fn is_omega_n_checked(&self, p: &TorsionPair, n: usize) -> Result<bool> {
        let answers = OmegaRoute::ALL
            .iter()
            .map(|&r| self.is_omega_n(p, n, r))
            .collect::<Result<Vec<_>>>()?;
        if answers.iter().any(|&a| a != answers[0]) {
            return Err(Error::VerificationFailed(format!(
                "omega_{n} routes disagree on {}: ext {}, syzygy {}, cosyzygy {}",
                self.format(&p.tors),
                answers[0],
                answers[1],
                answers[2]
            )));
        }
        Ok(answers[0])
    }

    /// `T` closed under submodules.
    pub fn is_hereditary(&self, p: &TorsionPair) -> bool {
        self.closed_under_submodules(&p.tors)
    }

    /// `F` closed under quotients.
    pub fn is_cohereditary(&self, p: &TorsionPair) -> bool {
        self.closed_under_quotients(&p.free)
    }

    /// `Ext^1(F, T) = 0`.
    pub fn is_split(&self, p: &TorsionPair) -> bool {
        let ext = self.ext_table(1);
        p.free.iter().all(|f| p.tors.iter().all(|t| ext[f][t] == 0))
    }

    /// Hereditary via `F` closed under injective envelopes.
    pub fn free_closed_under_envelopes(&self, p: &TorsionPair) -> Result<bool> {
        for f in p.free.iter() {
            let (env, _) = injective_envelope(&self.alg, &self.indecs[f])?;
            if !self.locate(&env)?.is_subset(&p.free) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Cohereditary via `T` closed under projective covers.
    pub fn tors_closed_under_covers(&self, p: &TorsionPair) -> Result<bool> {
        for t in p.tors.iter() {
            let (cover, _) = projective_cover(&self.alg, &self.indecs[t])?;
            if !self.locate(&cover)?.is_subset(&p.tors) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Hereditary test, cross-checked against the envelope criterion.
    pub fn is_hereditary_checked(&self, p: &TorsionPair) -> Result<bool> {
        let a = self.is_hereditary(p);
        if a != self.free_closed_under_envelopes(p)? {
            return Err(Error::VerificationFailed(format!(
                "hereditary criteria disagree on {}",
                self.format(&p.tors)
            )));
        }
        Ok(a)
    }

    pub fn is_cohereditary_checked(&self, p: &TorsionPair) -> Result<bool> {
        let a = self.is_cohereditary(p);
        if a != self.tors_closed_under_covers(p)? {
            return Err(Error::VerificationFailed(format!(
                "cohereditary criteria disagree on {}",
                self.format(&p.tors)
            )));
        }
        Ok(a)
    }

    /// Indecomposables all of whose composition factors lie at the given
    /// vertices.
    pub fn supported_in(&self, vertices: &BitSet) -> Subcat {
        BitSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&i| {
                self.indecs[i]
                    .dims()
                    .iter()
                    .enumerate()
                    .all(|(v, &d)| d == 0 || vertices.contains(v))
            }),
        )
    }
}

fn name_modules(alg: &Algebra, indecs: &[Module]) -> Result<Vec<String>> {
    let n = alg.num_vertices();
    let mut names: Vec<Option<String>> = vec![None; indecs.len()];
    type Family = fn(&Algebra, usize) -> Module;
    let families: [(&str, Family); 3] = [
        ("S", Module::simple),
        ("P", Module::projective),
        ("I", Module::injective),
    ];
    for (prefix, make) in families {
        for v in 0..n {
            let m = make(alg, v);
            for (i, x) in indecs.iter().enumerate() {
                if names[i].is_none() && x.dims() == m.dims() && is_isomorphic(alg, x, &m)? {
                    names[i] = Some(format!("{prefix}{}", alg.vertex_label(v)));
                }
            }
        }
    }
    Ok(names
        .into_iter()
        .enumerate()
        .map(|(i, n)| n.unwrap_or_else(|| format!("M{i}")))
        .collect())
}
