use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::module::{hom, hom_dim, Module, ModuleMap};
use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Subspace;

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    /// Exhaustive search over `End(M)` is allowed up to `p^search_exponent`
    /// elements.
    pub search_exponent: u32,
    pub random_tries: usize,
    pub seed: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            search_exponent: 12,
            random_tries: 256,
            seed: 0x5eed,
        }
    }
}

/// Indecomposable summands of `M`, with repetition.
pub fn summands(alg: &Algebra, m: &Module) -> Result<Vec<Module>> {
    summands_with(alg, m, &DecomposeOptions::default())
}

pub fn summands_with(alg: &Algebra, m: &Module, opts: &DecomposeOptions) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match find_splitter(alg, &x, opts)? {
            None => out.push(x),
            Some(e) => {
                let (k, i) = fitting_split(alg, &x, &e);
                stack.push(i);
                stack.push(k);
            }
        }
    }
    Ok(out)
}

/// Krull-Schmidt decomposition grouped into isomorphism classes.
pub fn decompose(alg: &Algebra, m: &Module) -> Result<Vec<(Module, usize)>> {
    let mut groups: Vec<(Module, usize)> = Vec::new();
    for s in summands(alg, m)? {
        match groups
            .iter_mut()
            .find(|(g, _)| same_indecomposable(alg, g, &s))
        {
            Some(g) => g.1 += 1,
            None => groups.push((s, 1)),
        }
    }
    Ok(groups)
}

pub fn is_indecomposable(alg: &Algebra, m: &Module) -> Result<bool> {
    Ok(!m.is_zero() && find_splitter(alg, m, &DecomposeOptions::default())?.is_none())
}

/// Isomorphism test: summands are matched up one by one.
pub fn is_isomorphic(alg: &Algebra, m: &Module, n: &Module) -> Result<bool> {
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if hom_dim(alg, m, m) != hom_dim(alg, n, m) || hom_dim(alg, m, m) != hom_dim(alg, m, n) {
        return Ok(false);
    }
    let a = decompose(alg, m)?;
    let mut b = decompose(alg, n)?;
    if a.len() != b.len() {
        return Ok(false);
    }
    for (x, k) in &a {
        match b
            .iter()
            .position(|(y, l)| l == k && same_indecomposable(alg, x, y))
        {
            Some(i) => {
                b.swap_remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// For indecomposable `M`: `M` and `N` are isomorphic iff some composite
/// `g f` of basis maps `f: M -> N`, `g: N -> M` is not nilpotent, since
/// the composites span an ideal of the local ring `End(M)`.
pub(crate) fn same_indecomposable(alg: &Algebra, m: &Module, n: &Module) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    let fs = hom(alg, m, n);
    if fs.is_empty() {
        return false;
    }
    let gs = hom(alg, n, m);
    fs.iter()
        .any(|f| gs.iter().any(|g| !f.then(g).is_nilpotent()))
}

/// `M = ker e^N + im e^N` for an endomorphism `e`.
fn fitting_split(alg: &Algebra, m: &Module, e: &ModuleMap) -> (Module, Module) {
    let big = m.dims().iter().copied().max().unwrap_or(0) as u64;
    let en = e.pow(big.max(1));
    let k = m.submodule(alg, &en.kernel_spaces()).0;
    let i = m.submodule(alg, &en.image_spaces()).0;
    (k, i)
}

/// An endomorphism that is neither nilpotent nor invertible, or `None`
/// when `End(M)` is local.
fn find_splitter(alg: &Algebra, m: &Module, opts: &DecomposeOptions) -> Result<Option<ModuleMap>> {
    let f = alg.field();
    let basis = hom(alg, m, m);
    if basis.len() <= 1 {
        return Ok(None);
    }
    let id = ModuleMap::identity(m);
    let splits = |e: &ModuleMap| !e.is_nilpotent() && !e.is_invertible();

    // Each basis element minus a scalar; also records the scalar making it
    // nilpotent, if any.
    let mut shifted = Vec::with_capacity(basis.len());
    for b in &basis {
        let mut found = None;
        for lambda in f.elements() {
            let e = b.add(&id.scale(f.neg(lambda)));
            if splits(&e) {
                return Ok(Some(e));
            }
            if found.is_none() && e.is_nilpotent() {
                found = Some(e);
            }
        }
        shifted.push(found);
    }

    // Locality certificate: End = F_p 1 + J with J spanned by the shifted
    // basis, closed under products and nilpotent.
    if shifted.iter().all(|s| s.is_some()) {
        let j: Vec<ModuleMap> = shifted.into_iter().flatten().collect();
        if nilpotent_ideal(alg, &j) {
            return Ok(None);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_tries {
        let e = combine(
            &basis,
            &(0..basis.len())
                .map(|_| rng.gen_range(0..f.p()))
                .collect::<Vec<_>>(),
            m,
        );
        if splits(&e) {
            return Ok(Some(e));
        }
    }

    let k = basis.len() as u32;
    if k > opts.search_exponent {
        return Err(Error::EndTooLarge {
            dim: basis.len(),
            p: f.p(),
            bound: opts.search_exponent,
        });
    }
    let total = (f.p() as u64).pow(k);
    let mut coeffs = vec![0u32; basis.len()];
    for mut code in 0..total {
        for c in coeffs.iter_mut() {
            *c = (code % f.p() as u64) as u32;
            code /= f.p() as u64;
        }
        let e = combine(&basis, &coeffs, m);
        if splits(&e) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

fn combine(basis: &[ModuleMap], coeffs: &[u32], m: &Module) -> ModuleMap {
    let mut acc = ModuleMap::identity(m).scale(0);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// The span of `j` is closed under composition and some power of it is zero.
fn nilpotent_ideal(alg: &Algebra, j: &[ModuleMap]) -> bool {
    let f = alg.field();
    let flat: Vec<Vec<u32>> = j.iter().map(|x| x.flatten()).collect();
    let len = flat.first().map(|v| v.len()).unwrap_or(0);
    let span = Subspace::from_vectors(f, len, flat);
    for a in j {
        for b in j {
            if !span.contains(&a.then(b).flatten()) {
                return false;
            }
        }
    }
    // powers J^k shrink to zero
    let mut power: Vec<ModuleMap> = j.to_vec();
    for _ in 0..=len {
        let mut next = Vec::new();
        let mut seen = Subspace::zero(f, len);
        for a in &power {
            for b in j {
                let c = a.then(b);
                let v = c.flatten();
                if !seen.contains(&v) {
                    seen = seen.sum(&Subspace::from_vectors(f, len, vec![v]));
                    next.push(c);
                }
            }
        }
        if next.is_empty() {
            return true;
        }
        power = next;
    }
    false
}
