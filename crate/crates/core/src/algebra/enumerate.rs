use super::decompose::{same_indecomposable, summands_with, DecomposeOptions};
use super::homological::{extension_space, middle_term, ExtensionSpace};
use super::module::{hom_dim, Module};
use super::Algebra;
use crate::error::Result;
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Largest allowed entry of a dimension vector.
    pub dim_bound: usize,
    pub decompose: DecomposeOptions,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            dim_bound: 2,
            decompose: DecomposeOptions::default(),
        }
    }
}

/// Every indecomposable module whose dimension vector has entries at most
/// `dim_bound`, up to isomorphism, ordered by total dimension.
///
/// A non-simple indecomposable `M` maps onto some simple `S_v`; the kernel
/// `U` is a sum of smaller indecomposables and `M` is the middle term of a
/// class in `Ext^1(S_v, U)`. For each summand type `X` occurring `m` times
/// the components of the class must span an `m`-dimensional subspace of
/// `Ext^1(S_v, X)`, otherwise a copy of `X` splits off. Running over all
/// such subspaces for all admissible `U` reaches every indecomposable;
/// candidates are filtered for indecomposability and deduplicated.
pub fn indecomposables(alg: &Algebra, opts: &EnumerateOptions) -> Result<Vec<Module>> {
    let n = alg.num_vertices();
    let bound = opts.dim_bound;
    let simples: Vec<Module> = (0..n).map(|v| Module::simple(alg, v)).collect();
    let mut found: Vec<Module> = if bound == 0 {
        Vec::new()
    } else {
        simples.clone()
    };
    // ext[v][i] = Ext^1(S_v, found[i])
    let mut ext: Vec<Vec<ExtensionSpace>> = simples
        .iter()
        .map(|s| found.iter().map(|x| extension_space(alg, s, x)).collect())
        .collect();

    for d in 2..=bound * n {
        let mut fresh: Vec<Module> = Vec::new();
        for v in 0..n {
            let candidates: Vec<usize> = (0..found.len())
                .filter(|&i| ext[v][i].dim() > 0 && found[i].dims()[v] < bound)
                .collect();
            let mut room = vec![bound; n];
            room[v] -= 1;
            let mut chosen: Vec<(usize, usize)> = Vec::new();
            let mut multisets = Vec::new();
            collect_multisets(
                &found,
                &ext[v],
                &candidates,
                0,
                d - 1,
                &mut room,
                &mut chosen,
                &mut multisets,
            );
            for ms in multisets {
                for module in middle_terms(alg, &simples[v], &found, &ext[v], &ms) {
                    if is_new(alg, &module, &found, &fresh)
                        && is_indecomposable_fast(alg, &module, opts)?
                    {
                        fresh.push(module);
                    }
                }
            }
        }
        for m in fresh {
            for (v, s) in simples.iter().enumerate() {
                ext[v].push(extension_space(alg, s, &m));
            }
            found.push(m);
        }
    }
    Ok(found)
}

/// Multisets of candidate summands (index, multiplicity) with total
/// dimension `remaining` and dimension vector inside `room`.
#[allow(clippy::too_many_arguments)]
fn collect_multisets(
    found: &[Module],
    ext: &[ExtensionSpace],
    candidates: &[usize],
    start: usize,
    remaining: usize,
    room: &mut Vec<usize>,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if remaining == 0 {
        if !chosen.is_empty() {
            out.push(chosen.clone());
        }
        return;
    }
    for (pos, &i) in candidates.iter().enumerate().skip(start) {
        let x = &found[i];
        let size = x.total_dim();
        let mut mult = 0;
        while mult < ext[i].dim() {
            mult += 1;
            if size * mult > remaining
                || x.dims()
                    .iter()
                    .zip(room.iter())
                    .any(|(&a, &r)| a * mult > r)
            {
                mult -= 1;
                break;
            }
        }
        for m in 1..=mult {
            for (r, &a) in room.iter_mut().zip(x.dims()) {
                *r -= a * m;
            }
            chosen.push((i, m));
            collect_multisets(
                found,
                ext,
                candidates,
                pos + 1,
                remaining - size * m,
                room,
                chosen,
                out,
            );
            chosen.pop();
            for (r, &a) in room.iter_mut().zip(x.dims()) {
                *r += a * m;
            }
        }
    }
}

/// Middle terms of `0 -> U -> E -> S_v -> 0` for every choice of subspaces.
fn middle_terms(
    alg: &Algebra,
    simple: &Module,
    found: &[Module],
    ext: &[ExtensionSpace],
    multiset: &[(usize, usize)],
) -> Vec<Module> {
    let choices: Vec<Vec<Vec<Vec<u32>>>> = multiset
        .iter()
        .map(|&(i, m)| subspaces_rref(alg.field().p(), ext[i].dim(), m))
        .collect();
    let parts: Vec<&Module> = multiset
        .iter()
        .flat_map(|&(i, m)| std::iter::repeat_n(&found[i], m))
        .collect();
    let u = parts
        .iter()
        .fold(Module::zero(alg), |acc, x| acc.direct_sum(x));
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        // stack the component cocycles arrow by arrow
        let mut cocycle: Vec<Option<Matrix>> = vec![None; alg.arrows().len()];
        for (k, &(i, _)) in multiset.iter().enumerate() {
            for coeffs in &choices[k][idx[k]] {
                for (slot, c) in cocycle.iter_mut().zip(ext[i].cocycle(coeffs)) {
                    *slot = Some(match slot.take() {
                        None => c,
                        Some(acc) => acc.vstack(&c),
                    });
                }
            }
        }
        let cocycle: Vec<Matrix> = cocycle
            .into_iter()
            .zip(alg.arrows())
            .map(|(c, a)| {
                c.unwrap_or_else(|| {
                    Matrix::zeros(alg.field(), u.dims()[a.target], simple.dims()[a.source])
                })
            })
            .collect();
        out.push(middle_term(&u, simple, &cocycle));

        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// All `m`-dimensional subspaces of `F_p^d`, each as its reduced echelon
/// basis.
pub(crate) fn subspaces_rref(p: u32, d: usize, m: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(m);
    pivot_sets(d, m, 0, &mut pivots, &mut |piv| {
        // free entries: row r, column c > piv[r] with c not a pivot
        let slots: Vec<(usize, usize)> = (0..m)
            .flat_map(|r| {
                ((piv[r] + 1)..d)
                    .filter(|c| !piv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let count = (p as u64).pow(slots.len() as u32);
        for mut code in 0..count {
            let mut rows = vec![vec![0u32; d]; m];
            for (r, &c) in piv.iter().enumerate() {
                rows[r][c] = 1;
            }
            for &(r, c) in &slots {
                rows[r][c] = (code % p as u64) as u32;
                code /= p as u64;
            }
            out.push(rows);
        }
    });
    out
}

fn pivot_sets(
    d: usize,
    m: usize,
    start: usize,
    cur: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if cur.len() == m {
        visit(cur);
        return;
    }
    for c in start..d {
        cur.push(c);
        pivot_sets(d, m, c + 1, cur, visit);
        cur.pop();
    }
}

fn is_new(alg: &Algebra, m: &Module, found: &[Module], fresh: &[Module]) -> bool {
    !found
        .iter()
        .chain(fresh)
        .any(|x| same_indecomposable(alg, x, m))
}

/// Bricks are indecomposable; anything else goes through the full test.
fn is_indecomposable_fast(alg: &Algebra, m: &Module, opts: &EnumerateOptions) -> Result<bool> {
    if hom_dim(alg, m, m) == 1 {
        return Ok(true);
    }
    Ok(summands_with(alg, m, &opts.decompose)?.len() == 1)
}
