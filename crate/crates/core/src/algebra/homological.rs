use super::module::{hom, Module, ModuleMap};
use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// Projective cover `P -> M`. Summands of `P` are listed by vertex, one
/// per basis vector of a complement of `rad M`.
pub fn projective_cover(alg: &Algebra, m: &Module) -> Result<(Module, ModuleMap)> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let f = alg.field();
    let n = alg.num_vertices();
    let rad = m.radical(alg);
    let mut summands = Vec::new();
    let mut generators: Vec<(usize, Vec<u32>)> = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        let comp = r.complement_columns();
        for c in 0..comp.cols() {
            generators.push((v, comp.column(c)));
            summands.push(Module::projective(alg, v));
        }
    }
    let p = Module::direct_sum_all(alg, &summands);
    let mut blocks: Vec<Matrix> = (0..n)
        .map(|w| Matrix::zeros(f, m.dims()[w], p.dims()[w]))
        .collect();
    let mut col0 = vec![0usize; n];
    for (v, x) in &generators {
        let x = Matrix::from_vec(f, x.len(), 1, x.clone());
        for (w, block) in blocks.iter_mut().enumerate() {
            for b in alg.basis_between(*v, w) {
                let img = m.path_action(alg.basis_path(b)).mul(&x);
                block.write_block(0, col0[w], &img);
                col0[w] += 1;
            }
        }
    }
    Ok((p, ModuleMap { blocks }))
}

/// `n`th syzygy; zero once a projective is reached.
pub fn syzygy(alg: &Algebra, m: &Module, n: usize) -> Module {
    let mut cur = m.clone();
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        let (p, pi) = projective_cover(alg, &cur).expect("nonzero module");
        cur = pi.kernel(alg, &p).0;
    }
    cur
}

/// Injective envelope `M -> I`, computed as the dual of a projective cover
/// over the opposite algebra.
pub fn injective_envelope(alg: &Algebra, m: &Module) -> Result<(Module, ModuleMap)> {
    let (p, pi) = projective_cover(alg.opposite(), &m.dual())?;
    Ok((p.dual(), pi.dual()))
}

/// `n`th cosyzygy, the iterated cokernel of injective envelopes.
pub fn cosyzygy(alg: &Algebra, m: &Module, n: usize) -> Module {
    let mut cur = m.clone();
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        let (i, iota) = injective_envelope(alg, &cur).expect("nonzero module");
        cur = iota.cokernel(alg, &i).0;
    }
    cur
}

/// A minimal projective resolution `.. -> P_1 -> P_0 -> M`, truncated at a
/// requested length.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// `P_0, P_1, ..`
    pub terms: Vec<Module>,
    /// `d_i: P_i -> P_{i-1}` for `i >= 1`; `differentials[i - 1]` is `d_i`.
    pub differentials: Vec<ModuleMap>,
    pub augmentation: ModuleMap,
    /// `Omega^0 = M, Omega^1, ..`, one more than `terms` when available.
    pub syzygies: Vec<Module>,
    /// Multiplicity of each indecomposable projective in each term.
    pub tops: Vec<Vec<usize>>,
    /// The last syzygy computed is zero, so the resolution is finished.
    pub complete: bool,
}

impl Resolution {
    pub fn projective_dimension(&self) -> Option<usize> {
        self.complete.then(|| self.terms.len().saturating_sub(1))
    }

    /// `d_{i} d_{i+1} = 0` and exactness at every computed stage, including
    /// surjectivity of the augmentation.
    pub fn is_exact(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        if !self.augmentation.is_surjective() {
            return false;
        }
        let rank_sum = |m: &ModuleMap| m.blocks.iter().map(|b| b.rank()).sum::<usize>();
        let mut prev_img_rank = rank_sum(&self.augmentation);
        for (i, p) in self.terms.iter().enumerate() {
            // kernel of the map out of P_i equals the image of d_{i+1}
            let ker = p.total_dim() - prev_img_rank;
            let next = self.differentials.get(i).map(rank_sum);
            match next {
                Some(r) => {
                    if r != ker {
                        return false;
                    }
                    prev_img_rank = r;
                }
                None => {
                    let tail = self
                        .syzygies
                        .get(i + 1)
                        .map(|s| s.total_dim())
                        .unwrap_or(usize::MAX);
                    if tail != ker {
                        return false;
                    }
                }
            }
        }
        let compose_zero = self
            .differentials
            .windows(2)
            .all(|w| w[1].then(&w[0]).is_zero());
        let first_zero = self
            .differentials
            .first()
            .is_none_or(|d| d.then(&self.augmentation).is_zero());
        compose_zero && first_zero
    }

    /// Minimality as a statement about simples: every induced differential
    /// `Hom(P_{i-1}, S) -> Hom(P_i, S)` is zero.
    pub fn is_minimal(&self, alg: &Algebra) -> bool {
        (0..alg.num_vertices()).all(|v| {
            let s = Module::simple(alg, v);
            self.differentials.iter().enumerate().all(|(i, d)| {
                hom(alg, &self.terms[i], &s)
                    .iter()
                    .all(|f| d.then(f).is_zero())
            })
        })
    }
}

/// Minimal projective resolution with terms `P_0 .. P_length` at most.
pub fn min_resolution(alg: &Algebra, m: &Module, length: usize) -> Resolution {
    let mut res = Resolution {
        terms: Vec::new(),
        differentials: Vec::new(),
        augmentation: ModuleMap { blocks: Vec::new() },
        syzygies: vec![m.clone()],
        tops: Vec::new(),
        complete: m.is_zero(),
    };
    if m.is_zero() {
        return res;
    }
    let (p0, eps) = projective_cover(alg, m).expect("nonzero module");
    let (mut k, mut inc) = eps.kernel(alg, &p0);
    res.tops.push(m.top_dims(alg));
    res.terms.push(p0);
    res.augmentation = eps;
    res.syzygies.push(k.clone());
    for _ in 0..length {
        if k.is_zero() {
            break;
        }
        let (p, pi) = projective_cover(alg, &k).expect("nonzero syzygy");
        let d = pi.then(&inc);
        res.tops.push(k.top_dims(alg));
        let (k2, inc2) = pi.kernel(alg, &p);
        res.terms.push(p);
        res.differentials.push(d);
        res.syzygies.push(k2.clone());
        k = k2;
        inc = inc2;
    }
    res.complete = k.is_zero();
    res
}

/// `dim Ext^n(M, N)` from a minimal projective resolution of `M`.
pub fn ext(alg: &Algebra, m: &Module, n_mod: &Module, n: usize) -> usize {
    let res = min_resolution(alg, m, n + 1);
    ext_from_resolution(alg, &res, n_mod, n)
}

/// Cohomology of `Hom(P_., N)` at position `n`.
pub fn ext_from_resolution(alg: &Algebra, res: &Resolution, target: &Module, n: usize) -> usize {
    let Some(pn) = res.terms.get(n) else {
        return 0;
    };
    let homs_n = hom(alg, pn, target);
    // delta_{n+1}: Hom(P_n, N) -> Hom(P_{n+1}, N)
    let rank_out = match res.differentials.get(n) {
        Some(d) => flattened_rank(alg, homs_n.iter().map(|f| d.then(f))),
        None => 0,
    };
    // delta_n: Hom(P_{n-1}, N) -> Hom(P_n, N)
    let rank_in = if n == 0 {
        0
    } else {
        let d = &res.differentials[n - 1];
        let homs_prev = hom(alg, &res.terms[n - 1], target);
        flattened_rank(alg, homs_prev.iter().map(|f| d.then(f)))
    };
    homs_n.len() - rank_out - rank_in
}

fn flattened_rank(alg: &Algebra, maps: impl Iterator<Item = ModuleMap>) -> usize {
    let vecs: Vec<Vec<u32>> = maps.map(|m| m.flatten()).collect();
    let Some(len) = vecs.first().map(|v| v.len()) else {
        return 0;
    };
    if len == 0 {
        return 0;
    }
    Subspace::from_vectors(alg.field(), len, vecs).dim()
}

/// `dim Ext^n(M, N)` from an injective coresolution of `N`, computed as
/// `Ext^n(DN, DM)` over the opposite algebra.
pub fn ext_dual_route(alg: &Algebra, m: &Module, n_mod: &Module, n: usize) -> usize {
    ext(alg.opposite(), &n_mod.dual(), &m.dual(), n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlobalDimension {
    Exact(usize),
    /// Some simple still had a nonzero syzygy after this many steps.
    AtLeast(usize),
}

/// Largest projective dimension of a simple, probing resolutions up to
/// `probe` steps.
pub fn global_dimension(alg: &Algebra, probe: usize) -> GlobalDimension {
    let mut best = 0;
    for v in 0..alg.num_vertices() {
        let res = min_resolution(alg, &Module::simple(alg, v), probe);
        match res.projective_dimension() {
            Some(d) => best = best.max(d),
            None => return GlobalDimension::AtLeast(probe + 1),
        }
    }
    GlobalDimension::Exact(best)
}

/// `Ext^1(Y, X)` realised by cocycles: classes of extensions
/// `0 -> X -> E -> Y -> 0`.
#[derive(Clone, Debug)]
pub struct ExtensionSpace {
    pub sub: Module,
    pub quotient: Module,
    /// Cocycles whose classes form a basis; each holds one
    /// `dim X_t x dim Y_s` matrix per arrow.
    pub basis: Vec<Vec<Matrix>>,
}

impl ExtensionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Cocycle of the class with the given coordinates.
    pub fn cocycle(&self, coeffs: &[u32]) -> Vec<Matrix> {
        let f = self.sub.field();
        let mut acc: Vec<Matrix> = self
            .sub
            .maps()
            .iter()
            .zip(self.quotient.maps())
            .map(|(x, y)| Matrix::zeros(f, x.rows(), y.cols()))
            .collect();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (slot, m) in acc.iter_mut().zip(b) {
                slot.add_scaled(m, *c);
            }
        }
        acc
    }

    pub fn middle_term(&self, coeffs: &[u32]) -> Module {
        middle_term(&self.sub, &self.quotient, &self.cocycle(coeffs))
    }
}

/// `E_v = X_v + Y_v` with arrow matrices `[[X_a, c_a], [0, Y_a]]`.
pub fn middle_term(x: &Module, y: &Module, cocycle: &[Matrix]) -> Module {
    let f = x.field();
    let dims: Vec<usize> = x.dims().iter().zip(y.dims()).map(|(a, b)| a + b).collect();
    let maps = x
        .maps()
        .iter()
        .zip(y.maps())
        .zip(cocycle)
        .map(|((xa, ya), c)| {
            let mut m = Matrix::zeros(f, xa.rows() + ya.rows(), xa.cols() + ya.cols());
            m.write_block(0, 0, xa);
            m.write_block(0, xa.cols(), c);
            m.write_block(xa.rows(), xa.cols(), ya);
            m
        })
        .collect();
    Module::from_parts(f, dims, maps)
}

/// Cocycles modulo coboundaries. A cocycle is a family `c_a: Y_s -> X_t`
/// making the block matrices above satisfy the relations; coboundaries are
/// `c_a = X_a h_s - h_t Y_a`.
pub fn extension_space(alg: &Algebra, y: &Module, x: &Module) -> ExtensionSpace {
    let f = alg.field();
    let arrows = alg.arrows();
    let mut offsets = Vec::with_capacity(arrows.len() + 1);
    let mut total = 0;
    for a in arrows {
        offsets.push(total);
        total += x.dims()[a.target] * y.dims()[a.source];
    }
    offsets.push(total);
    let unflatten = |v: &[u32]| -> Vec<Matrix> {
        arrows
            .iter()
            .enumerate()
            .map(|(k, a)| {
                Matrix::from_vec(
                    f,
                    x.dims()[a.target],
                    y.dims()[a.source],
                    v[offsets[k]..offsets[k + 1]].to_vec(),
                )
            })
            .collect()
    };

    // relation constraints: the top-right block of every relation vanishes
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for r in alg.relations() {
        let (s, t) = (r.terms[0].1.source, r.terms[0].1.target);
        let (er, ec) = (x.dims()[t], y.dims()[s]);
        let mut block = vec![vec![0u32; total]; er * ec];
        for (coef, p) in &r.terms {
            for (i, &ai) in p.arrows.iter().enumerate() {
                let a = &arrows[ai];
                // L = X_{ak} .. X_{a(i+1)}, R = Y_{a(i-1)} .. Y_{a1}
                let mut left = Matrix::identity(f, x.dims()[a.target]);
                for &later in &p.arrows[i + 1..] {
                    left = x.map(later).mul(&left);
                }
                let mut right = Matrix::identity(f, y.dims()[p.source]);
                for &earlier in &p.arrows[..i] {
                    right = y.map(earlier).mul(&right);
                }
                let (cr, cc) = (x.dims()[a.target], y.dims()[a.source]);
                for rr in 0..er {
                    for ss in 0..ec {
                        for k in 0..cr {
                            let l = left.get(rr, k);
                            if l == 0 {
                                continue;
                            }
                            for j in 0..cc {
                                let rv = right.get(j, ss);
                                if rv == 0 {
                                    continue;
                                }
                                let col = offsets[ai] + k * cc + j;
                                let e = &mut block[rr * ec + ss][col];
                                *e = f.add(*e, f.mul(*coef, f.mul(l, rv)));
                            }
                        }
                    }
                }
            }
        }
        rows.extend(block);
    }
    let cocycles = if rows.is_empty() || total == 0 {
        Subspace::full(f, total)
    } else {
        Matrix::from_vec(f, rows.len(), total, rows.concat()).kernel()
    };

    // coboundaries from unit homotopies h_v
    let mut cob = Vec::new();
    for v in 0..alg.num_vertices() {
        for i in 0..x.dims()[v] {
            for j in 0..y.dims()[v] {
                let mut h = Matrix::zeros(f, x.dims()[v], y.dims()[v]);
                h.set(i, j, 1);
                let mut vec = vec![0u32; total];
                for (k, a) in arrows.iter().enumerate() {
                    let mut c = Matrix::zeros(f, x.dims()[a.target], y.dims()[a.source]);
                    if a.source == v {
                        c = c.add(&x.map(k).mul(&h));
                    }
                    if a.target == v {
                        c = c.sub(&h.mul(y.map(k)));
                    }
                    vec[offsets[k]..offsets[k + 1]].copy_from_slice(c.data());
                }
                cob.push(vec);
            }
        }
    }
    let mut span = Subspace::from_vectors(f, total, cob);
    debug_assert!(cocycles.contains_subspace(&span));
    let mut basis = Vec::new();
    for v in cocycles.vectors() {
        if !span.contains(&v) {
            span = span.sum(&Subspace::from_vectors(f, total, vec![v.clone()]));
            basis.push(unflatten(&v));
        }
    }
    ExtensionSpace {
        sub: x.clone(),
        quotient: y.clone(),
        basis,
    }
}

/// Middle terms of one representative of every nonzero class of
/// `Ext^1(Y, X)` up to scalars.
pub fn ext1_classes(alg: &Algebra, y: &Module, x: &Module) -> Vec<Module> {
    let space = extension_space(alg, y, x);
    projective_points(alg.field().p(), space.dim())
        .into_iter()
        .map(|c| space.middle_term(&c))
        .collect()
}

/// Nonzero vectors of `F_p^d` whose first nonzero entry is 1.
pub(crate) fn projective_points(p: u32, d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        let count = (p as u64).pow(free as u32);
        for mut code in 0..count {
            let mut v = vec![0u32; d];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = (code % p as u64) as u32;
                code /= p as u64;
            }
            out.push(v);
        }
    }
    out
}
