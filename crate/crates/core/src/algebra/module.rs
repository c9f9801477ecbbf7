use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Algebra, Path};
use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix, Subspace};

/// A right module given as a representation: a vector space per vertex and
/// a matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Module {
    field: Fp,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A module homomorphism, one `target_v x source_v` block per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: Vec<Matrix>,
}

/// Wire form: `{"dims": [..], "arrows": {"a": [[..], ..], ..}}`, each
/// matrix given by rows and acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<i64>>>,
}

impl Module {
    /// Validates matrix shapes and that every relation acts as zero.
    pub fn new(alg: &Algebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != alg.num_vertices() || maps.len() != alg.arrows().len() {
            return Err(Error::InvalidModule(
                "wrong number of vertices or arrows".into(),
            ));
        }
        for (a, m) in alg.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] || m.field() != alg.field()
            {
                return Err(Error::InvalidModule(format!(
                    "matrix for {} has the wrong shape",
                    a.name
                )));
            }
        }
        let m = Module {
            field: alg.field(),
            dims,
            maps,
        };
        if !m.satisfies_relations(alg) {
            return Err(Error::InvalidModule(
                "a relation does not act as zero".into(),
            ));
        }
        Ok(m)
    }

    pub(crate) fn from_parts(field: Fp, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Module { field, dims, maps }
    }

    pub fn zero(alg: &Algebra) -> Self {
        let f = alg.field();
        Module {
            field: f,
            dims: vec![0; alg.num_vertices()],
            maps: alg
                .arrows()
                .iter()
                .map(|_| Matrix::zeros(f, 0, 0))
                .collect(),
        }
    }

    pub fn simple(alg: &Algebra, v: usize) -> Self {
        let f = alg.field();
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let maps = alg
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Module {
            field: f,
            dims,
            maps,
        }
    }

    /// `e_v A`: at `w` the normal paths from `v` to `w`, arrows acting by
    /// right multiplication.
    pub fn projective(alg: &Algebra, v: usize) -> Self {
        let f = alg.field();
        let n = alg.num_vertices();
        let at: Vec<Vec<usize>> = (0..n).map(|w| alg.basis_between(v, w)).collect();
        let dims: Vec<usize> = at.iter().map(|b| b.len()).collect();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
                let arrow = Path {
                    source: a.source,
                    target: a.target,
                    arrows: vec![k],
                };
                for (col, &b) in at[a.source].iter().enumerate() {
                    let p = alg
                        .basis_path(b)
                        .concat(&arrow)
                        .expect("path ends at the arrow source");
                    for (idx, c) in alg.reduce_path(&p) {
                        let row = at[a.target]
                            .iter()
                            .position(|&x| x == idx)
                            .expect("normal form stays in e_v A e_t");
                        m.set(row, col, f.add(m.get(row, col), c));
                    }
                }
                m
            })
            .collect();
        Module {
            field: f,
            dims,
            maps,
        }
    }

    /// Injective envelope of the simple at `v`, as the dual of a projective
    /// of the opposite algebra.
    pub fn injective(alg: &Algebra, v: usize) -> Self {
        Module::projective(alg.opposite(), v).dual()
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Action of a path, `M_ak .. M_a1`.
    pub fn path_action(&self, p: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.dims[p.source]);
        for &a in &p.arrows {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    pub fn satisfies_relations(&self, alg: &Algebra) -> bool {
        alg.relations().iter().all(|r| {
            let (s, t) = (r.terms[0].1.source, r.terms[0].1.target);
            let mut acc = Matrix::zeros(self.field, self.dims[t], self.dims[s]);
            for (c, p) in &r.terms {
                acc.add_scaled(&self.path_action(p), *c);
            }
            acc.is_zero()
        })
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        Module {
            field: self.field,
            dims: self
                .dims
                .iter()
                .zip(&other.dims)
                .map(|(a, b)| a + b)
                .collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
        }
    }

    pub fn direct_sum_all(alg: &Algebra, mods: &[Module]) -> Module {
        mods.iter()
            .fold(Module::zero(alg), |acc, m| acc.direct_sum(m))
    }

    /// The dual representation of the opposite algebra: same dimensions,
    /// transposed matrices.
    pub fn dual(&self) -> Module {
        Module {
            field: self.field,
            dims: self.dims.clone(),
            maps: self.maps.iter().map(|m| m.transpose()).collect(),
        }
    }

    /// `rad M` at each vertex: the sum of the images of incoming arrows.
    pub fn radical(&self, alg: &Algebra) -> Vec<Subspace> {
        let mut rad: Vec<Subspace> = self
            .dims
            .iter()
            .map(|&d| Subspace::zero(self.field, d))
            .collect();
        for (a, m) in alg.arrows().iter().zip(&self.maps) {
            rad[a.target] = rad[a.target].sum(&m.image());
        }
        rad
    }

    /// `soc M` at each vertex: vectors killed by every outgoing arrow.
    pub fn socle(&self, alg: &Algebra) -> Vec<Subspace> {
        let mut soc: Vec<Subspace> = self
            .dims
            .iter()
            .map(|&d| Subspace::full(self.field, d))
            .collect();
        for (a, m) in alg.arrows().iter().zip(&self.maps) {
            soc[a.source] = soc[a.source].intersect(&m.kernel());
        }
        soc
    }

    /// Multiplicity of each simple in the top.
    pub fn top_dims(&self, alg: &Algebra) -> Vec<usize> {
        self.radical(alg)
            .iter()
            .zip(&self.dims)
            .map(|(r, d)| d - r.dim())
            .collect()
    }

    pub fn socle_dims(&self, alg: &Algebra) -> Vec<usize> {
        self.socle(alg).iter().map(|s| s.dim()).collect()
    }

    /// Whether the per-vertex subspaces are stable under every arrow.
    pub fn is_submodule(&self, alg: &Algebra, sub: &[Subspace]) -> bool {
        alg.arrows().iter().zip(&self.maps).all(|(a, m)| {
            let img = m.mul(&sub[a.source].basis_columns());
            (0..img.cols()).all(|c| sub[a.target].contains(&img.column(c)))
        })
    }

    /// Smallest submodule containing the given subspaces.
    pub fn generated(&self, alg: &Algebra, seeds: Vec<Subspace>) -> Vec<Subspace> {
        let mut cur = seeds;
        loop {
            let mut changed = false;
            for (a, m) in alg.arrows().iter().zip(&self.maps) {
                let img =
                    Subspace::from_matrix_rows(&m.mul(&cur[a.source].basis_columns()).transpose());
                if !cur[a.target].contains_subspace(&img) {
                    cur[a.target] = cur[a.target].sum(&img);
                    changed = true;
                }
            }
            if !changed {
                return cur;
            }
        }
    }

    /// The submodule on the given subspaces and its inclusion.
    pub fn submodule(&self, alg: &Algebra, sub: &[Subspace]) -> (Module, ModuleMap) {
        debug_assert!(self.is_submodule(alg, sub));
        let bases: Vec<Matrix> = sub.iter().map(|s| s.basis_columns()).collect();
        let maps = alg
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let img = m.mul(&bases[a.source]);
                bases[a.target]
                    .solve(&img)
                    .expect("subspace is stable under the arrow")
            })
            .collect();
        let dims = sub.iter().map(|s| s.dim()).collect();
        (
            Module {
                field: self.field,
                dims,
                maps,
            },
            ModuleMap { blocks: bases },
        )
    }

    /// The quotient by a submodule and the projection onto it.
    pub fn quotient(&self, alg: &Algebra, sub: &[Subspace]) -> (Module, ModuleMap) {
        debug_assert!(self.is_submodule(alg, sub));
        let mut comps = Vec::new();
        let mut projs = Vec::new();
        for (s, &d) in sub.iter().zip(&self.dims) {
            let c = s.complement_columns();
            let full = s.basis_columns().hstack(&c);
            let inv = full.inverse().expect("basis plus complement is invertible");
            projs.push(inv.block(s.dim(), 0, d - s.dim(), d));
            comps.push(c);
        }
        let maps = alg
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| projs[a.target].mul(&m.mul(&comps[a.source])))
            .collect();
        let dims = comps.iter().map(|c| c.cols()).collect();
        (
            Module {
                field: self.field,
                dims,
                maps,
            },
            ModuleMap { blocks: projs },
        )
    }

    pub fn to_json(&self, alg: &Algebra) -> ModuleJson {
        let arrows = alg
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let rows = m
                    .to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(i64::from).collect())
                    .collect();
                (a.name.clone(), rows)
            })
            .collect();
        ModuleJson {
            dims: self.dims.clone(),
            arrows,
        }
    }

    /// Arrows missing from the JSON act as zero.
    pub fn from_json(alg: &Algebra, json: &ModuleJson) -> Result<Module> {
        let f = alg.field();
        if json.dims.len() != alg.num_vertices() {
            return Err(Error::Parse(
                "dims length differs from the number of vertices".into(),
            ));
        }
        for name in json.arrows.keys() {
            if !alg.arrows().iter().any(|a| &a.name == name) {
                return Err(Error::Parse(format!("unknown arrow {name:?}")));
            }
        }
        let maps = alg
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (json.dims[a.target], json.dims[a.source]);
                match json.arrows.get(&a.name) {
                    None => Ok(Matrix::zeros(f, r, c)),
                    Some(rows) => {
                        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                            return Err(Error::Parse(format!(
                                "matrix for {} must be {r}x{c}",
                                a.name
                            )));
                        }
                        Ok(Matrix::from_rows(f, c, rows))
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Module::new(alg, json.dims.clone(), maps)
    }
}

impl ModuleMap {
    pub fn zero(source: &Module, target: &Module) -> Self {
        ModuleMap {
            blocks: source
                .dims
                .iter()
                .zip(&target.dims)
                .map(|(&s, &t)| Matrix::zeros(source.field, t, s))
                .collect(),
        }
    }

    pub fn identity(m: &Module) -> Self {
        ModuleMap {
            blocks: m
                .dims
                .iter()
                .map(|&d| Matrix::identity(m.field, d))
                .collect(),
        }
    }

    /// `after . self`
    pub fn then(&self, after: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self
                .blocks
                .iter()
                .zip(&after.blocks)
                .map(|(f, g)| g.mul(f))
                .collect(),
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: u32) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().map(|b| b.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    /// For endomorphisms: every block nilpotent.
    pub fn is_nilpotent(&self) -> bool {
        self.blocks.iter().all(|b| b.is_nilpotent())
    }

    /// For endomorphisms: every block invertible.
    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(|b| b.is_invertible())
    }

    pub fn pow(&self, e: u64) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().map(|b| b.pow(e)).collect(),
        }
    }

    /// Blocks transposed: a map `N* -> M*` of duals.
    pub fn dual(&self) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().map(|b| b.transpose()).collect(),
        }
    }

    /// All entries, block after block in row-major order.
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks
            .iter()
            .flat_map(|b| b.data().iter().copied())
            .collect()
    }

    pub fn is_homomorphism(&self, alg: &Algebra, source: &Module, target: &Module) -> bool {
        alg.arrows().iter().enumerate().all(|(k, a)| {
            target.map(k).mul(&self.blocks[a.source]) == self.blocks[a.target].mul(source.map(k))
        })
    }

    pub fn kernel_spaces(&self) -> Vec<Subspace> {
        self.blocks.iter().map(|b| b.kernel()).collect()
    }

    pub fn image_spaces(&self) -> Vec<Subspace> {
        self.blocks.iter().map(|b| b.image()).collect()
    }

    /// Kernel as a module, with its inclusion into `source`.
    pub fn kernel(&self, alg: &Algebra, source: &Module) -> (Module, ModuleMap) {
        source.submodule(alg, &self.kernel_spaces())
    }

    /// Cokernel as a module, with the projection from `target`.
    pub fn cokernel(&self, alg: &Algebra, target: &Module) -> (Module, ModuleMap) {
        target.quotient(alg, &self.image_spaces())
    }
}

/// A basis of `Hom(M, N)`: the solutions of `N_a f_s = f_t M_a` for every
/// arrow `a: s -> t`.
pub fn hom(alg: &Algebra, m: &Module, n: &Module) -> Vec<ModuleMap> {
    let (system, offsets) = hom_system(alg, m, n);
    system
        .kernel()
        .vectors()
        .into_iter()
        .map(|v| unflatten(m, n, &offsets, &v))
        .collect()
}

pub fn hom_dim(alg: &Algebra, m: &Module, n: &Module) -> usize {
    let (system, _) = hom_system(alg, m, n);
    system.cols() - system.rank()
}

fn hom_system(alg: &Algebra, m: &Module, n: &Module) -> (Matrix, Vec<usize>) {
    let f = alg.field();
    let nv = alg.num_vertices();
    let mut offsets = Vec::with_capacity(nv + 1);
    let mut total = 0;
    for v in 0..nv {
        offsets.push(total);
        total += n.dims[v] * m.dims[v];
    }
    offsets.push(total);
    let rows: usize = alg
        .arrows()
        .iter()
        .map(|a| n.dims[a.target] * m.dims[a.source])
        .sum();
    let mut sys = Matrix::zeros(f, rows, total);
    let mut r0 = 0;
    for (k, a) in alg.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (na, ma) = (n.map(k), m.map(k));
        // equation (i, j): sum_k N_a[i,k] f_s[k,j] - sum_k f_t[i,k] M_a[k,j]
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let row = r0 + i * m.dims[s] + j;
                for kk in 0..n.dims[s] {
                    let c = na.get(i, kk);
                    if c != 0 {
                        let col = offsets[s] + kk * m.dims[s] + j;
                        sys.set(row, col, f.add(sys.get(row, col), c));
                    }
                }
                for kk in 0..m.dims[t] {
                    let c = ma.get(kk, j);
                    if c != 0 {
                        let col = offsets[t] + i * m.dims[t] + kk;
                        sys.set(row, col, f.sub(sys.get(row, col), c));
                    }
                }
            }
        }
        r0 += n.dims[t] * m.dims[s];
    }
    (sys, offsets)
}

fn unflatten(m: &Module, n: &Module, offsets: &[usize], v: &[u32]) -> ModuleMap {
    ModuleMap {
        blocks: (0..m.dims.len())
            .map(|w| {
                Matrix::from_vec(
                    m.field,
                    n.dims[w],
                    m.dims[w],
                    v[offsets[w]..offsets[w + 1]].to_vec(),
                )
            })
            .collect(),
    }
}
