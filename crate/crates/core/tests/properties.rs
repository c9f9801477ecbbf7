mod common;

use omegalat::algebra::{
    example_algebra, ext, ext_dual_route, extension_space, incidence_algebra, is_indecomposable,
    summands, EnumerateOptions, Module,
};
use omegalat::bits::BitSet;
use omegalat::catalan::{dyck_to_ideal, ideal_to_dyck, DyckPath};
use omegalat::lattice::{
    congruence_lattice, is_lattice_isomorphism, lattice_isomorphic, FinLattice,
};
use omegalat::linalg::{Fp, Matrix};
use omegalat::poset::{interval_poset, Poset};
use omegalat::torsion::ModCategory;
use proptest::prelude::*;

thread_local! {
    static INT3: ModCategory = ModCategory::new(
        incidence_algebra(&interval_poset(3).unwrap(), Fp::new(2).unwrap()),
        &EnumerateOptions::default(),
    )
    .unwrap();
    static SMALL: Vec<FinLattice> = common::all_small_lattices(7);
}

fn random_poset(k: usize, bits: u32) -> Poset {
    let mut pairs = Vec::new();
    let mut b = 0;
    for i in 0..k {
        for j in i + 1..k {
            if bits >> b & 1 == 1 {
                pairs.push((i, j));
            }
            b += 1;
        }
    }
    Poset::from_pairs((0..k).map(|i| i.to_string()).collect(), &pairs).unwrap()
}

fn dyck_path(n: usize, seed: u64) -> DyckPath {
    let all = DyckPath::all(n);
    all[(seed as usize) % all.len()].clone()
}

fn random_matrix(f: Fp, rows: usize, cols: usize, entries: &[u32]) -> Matrix {
    let data = (0..rows * cols)
        .map(|k| entries[k % entries.len()] % f.p())
        .collect();
    Matrix::from_vec(f, rows, cols, data)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ideal_lattices_are_distributive(k in 1usize..6, bits in any::<u32>()) {
        let p = random_poset(k, bits);
        let l = p.ideal_lattice();
        prop_assert!(l.is_distributive());
        let brute = (0u32..1 << k)
            .filter(|m| (0..k).all(|b| m >> b & 1 == 0 || p.down_set(b).iter().all(|a| m >> a & 1 == 1)))
            .count();
        prop_assert_eq!(l.len(), brute);
        prop_assert_eq!(p.opposite().opposite(), p);
    }

    #[test]
    fn dyck_meet_and_join_are_bounds(n in 1usize..7, a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (dyck_path(n, a), dyck_path(n, b));
        let m = x.meet(&y);
        let j = x.join(&y);
        prop_assert!(m.leq(&x) && m.leq(&y) && x.leq(&j) && y.leq(&j));
        for z in DyckPath::all(n) {
            if z.leq(&x) && z.leq(&y) {
                prop_assert!(z.leq(&m));
            }
            if x.leq(&z) && y.leq(&z) {
                prop_assert!(j.leq(&z));
            }
        }
    }

    #[test]
    fn dyck_ideal_map_is_an_order_isomorphism(n in 1usize..8, a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (dyck_path(n, a), dyck_path(n, b));
        let (ix, iy) = (dyck_to_ideal(&x), dyck_to_ideal(&y));
        prop_assert_eq!(ideal_to_dyck(&ix, n).unwrap(), x.clone());
        prop_assert_eq!(x.leq(&y), ix.members.is_subset(&iy.members));
        if n >= 2 {
            prop_assert!(interval_poset(n - 1).unwrap().is_ideal(&ix.members));
        }
    }

    #[test]
    fn congruence_lattices_are_distributive(idx in any::<usize>()) {
        SMALL.with(|all| {
            let l = &all[idx % all.len()];
            let con = congruence_lattice(l);
            prop_assert!(con.lattice.is_distributive());
            prop_assert!(con.congruences.iter().all(|c| c.is_compatible(l)));
            let id: Vec<usize> = (0..l.len()).collect();
            prop_assert!(is_lattice_isomorphism(l, l, &id));
            prop_assert!(lattice_isomorphic(l, &l.dual().dual()).is_some());
            prop_assert_eq!(&FinLattice::from_json(&l.to_json()).unwrap(), l);
            Ok(())
        })?;
    }

    #[test]
    fn torsion_closure_is_a_closure(mask in any::<u64>(), extra in any::<u64>()) {
        INT3.with(|cat| {
            let k = cat.len();
            let s = BitSet::from_indices(k, (0..k).filter(|i| mask >> i & 1 == 1));
            let t = BitSet::from_indices(k, (0..k).filter(|i| (mask | extra) >> i & 1 == 1));
            let cs = cat.torsion_closure(&s);
            prop_assert!(s.is_subset(&cs));
            prop_assert_eq!(cat.torsion_closure(&cs), cs.clone());
            prop_assert!(cs.is_subset(&cat.torsion_closure(&t)));
            let fs = cat.free_closure(&s);
            prop_assert!(s.is_subset(&fs));
            prop_assert_eq!(cat.free_closure(&fs), fs);
            let p = cat.pair_generated_by(&s);
            prop_assert!(cat.is_torsion_pair(&p));
            Ok(())
        })?;
    }

    #[test]
    fn constructive_closure_agrees(a in 0usize..35, b in 0usize..35) {
        INT3.with(|cat| {
            let s = BitSet::from_indices(cat.len(), [a, b]);
            let t = cat.audited_torsion_closure(&s);
            prop_assert!(t.is_ok(), "{:?}", t.err());
            Ok(())
        })?;
    }

    #[test]
    fn example_modules_decompose_consistently(entries in prop::collection::vec(0u32..2, 8), d1 in 0usize..3, d2 in 0usize..3) {
        let f = Fp::new(2).unwrap();
        let alg = example_algebra(f);
        let dims = vec![d1, d2];
        let maps: Vec<Matrix> = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| random_matrix(f, dims[a.target], dims[a.source], &entries[k * 4..k * 4 + 4]))
            .collect();
        prop_assume!(dims.iter().sum::<usize>() > 0);
        let Ok(m) = Module::new(&alg, dims.clone(), maps) else {
            return Ok(());
        };
        let parts = summands(&alg, &m).unwrap();
        prop_assert_eq!(parts.iter().map(|x| x.total_dim()).sum::<usize>(), m.total_dim());
        for x in &parts {
            prop_assert!(is_indecomposable(&alg, x).unwrap());
        }
        let s1 = Module::simple(&alg, 0);
        for n in 0..3 {
            prop_assert_eq!(ext(&alg, &m, &s1, n), ext_dual_route(&alg, &m, &s1, n));
            prop_assert_eq!(ext(&alg, &s1, &m, n), ext_dual_route(&alg, &s1, &m, n));
        }
        prop_assert_eq!(ext(&alg, &m, &s1, 1), extension_space(&alg, &m, &s1).dim());
    }

    #[test]
    fn matrix_rank_nullity(p in prop::sample::select(vec![2u32, 3, 5]), rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(0u32..5, 36)) {
        let f = Fp::new(p).unwrap();
        let m = random_matrix(f, rows, cols, &entries);
        prop_assert_eq!(m.rank() + m.kernel().dim(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv), Matrix::identity(f, rows));
        }
    }
}
