use omegalat::algebra::{
    example_algebra, incidence_algebra, linear_a, semisimple, EnumerateOptions,
};
use omegalat::catalan::{catalan_number, dyck_lattice, typea_torsion_lattice};
use omegalat::lattice::{lattice_isomorphic, small};
use omegalat::linalg::Fp;
use omegalat::poset::interval_poset;
use omegalat::torsion::*;

fn f2() -> Fp {
    Fp::new(2).unwrap()
}

fn example_cat() -> ModCategory {
    ModCategory::new(example_algebra(f2()), &EnumerateOptions::default()).unwrap()
}

fn names(cat: &ModCategory, tl: &TorsionLattice, idx: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = idx.iter().map(|&i| cat.format(&tl.pairs[i].tors)).collect();
    v.sort();
    v
}

fn sorted(v: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

#[test]
fn example_indecomposables_are_named() {
    let cat = example_cat();
    let mut n: Vec<&str> = (0..cat.len()).map(|i| cat.name(i)).collect();
    n.sort();
    assert_eq!(n, ["I1", "P1", "P2", "S1", "S2"]);
}

#[test]
fn closures_and_perps() {
    let cat = example_cat();
    let e = cat.empty();
    assert_eq!(cat.torsion_closure(&e), e);
    assert_eq!(cat.torsion_closure(&cat.all()), cat.all());
    assert_eq!(cat.perp(&e), cat.all());
    assert_eq!(cat.perp(&cat.all()), e);
    let i1 = cat.subcat(&["I1"]).unwrap();
    assert_eq!(
        cat.torsion_closure(&i1),
        cat.subcat(&["I1", "S2", "P2"]).unwrap()
    );
    assert_eq!(
        cat.audited_torsion_closure(&i1).unwrap(),
        cat.subcat(&["I1", "S2", "P2"]).unwrap()
    );
    let s1p1 = cat.subcat(&["S1", "P1"]).unwrap();
    assert_eq!(cat.perp(&s1p1), cat.subcat(&["S2"]).unwrap());
}

#[test]
fn example_torsion_lattice() {
    let cat = example_cat();
    let tl = enumerate_torsion_pairs(&cat, &Budget::default()).unwrap();
    assert_eq!(tl.len(), 6);
    let mut covers: Vec<(String, String)> = tl
        .lattice
        .covers()
        .iter()
        .map(|&(a, b)| (cat.format(&tl.pairs[a].tors), cat.format(&tl.pairs[b].tors)))
        .collect();
    covers.sort();
    let all = cat.format(&cat.all());
    let s = |x: &[&str]| cat.format(&cat.subcat(x).unwrap());
    let mut expected = vec![
        ("0".to_string(), s(&["S1"])),
        ("0".to_string(), s(&["S2"])),
        (s(&["S1"]), s(&["S1", "P1"])),
        (s(&["S2"]), s(&["S2", "P2", "I1"])),
        (s(&["S1", "P1"]), all.clone()),
        (s(&["S2", "P2", "I1"]), all),
    ];
    expected.sort();
    assert_eq!(covers, expected);
    assert!(tl.meets_are_intersections(&cat));
    assert!(tl.joins_are_free_intersections());
    assert!(tl.lattice.is_semidistributive());
}

#[test]
fn example_predicates() {
    let cat = example_cat();
    let tl = enumerate_torsion_pairs(&cat, &Budget::default()).unwrap();
    let her = tl.select(|p| cat.is_hereditary_checked(p)).unwrap();
    assert_eq!(
        names(&cat, &tl, &her),
        sorted(&["0", "{S1}", "{S2}", "{S1, S2, P1, P2, I1}"])
            .iter()
            .map(|x| canonical(&cat, x))
            .collect::<Vec<_>>()
    );
    let coh = tl.select(|p| cat.is_cohereditary_checked(p)).unwrap();
    let mut expect = vec![
        "0".to_string(),
        cat.format(&cat.subcat(&["S1", "P1"]).unwrap()),
        cat.format(&cat.subcat(&["S2", "I1", "P2"]).unwrap()),
        cat.format(&cat.all()),
    ];
    expect.sort();
    assert_eq!(names(&cat, &tl, &coh), expect);

    let w1 = tl.select(|p| cat.is_omega_n_checked(p, 1)).unwrap();
    assert_eq!(w1, vec![tl.lattice.bottom(), tl.lattice.top()]);
    let w2 = tl.select(|p| cat.is_omega_n_checked(p, 2)).unwrap();
    let mut expect = vec![
        "0".to_string(),
        cat.format(&cat.subcat(&["S2"]).unwrap()),
        cat.format(&cat.subcat(&["S1", "P1"]).unwrap()),
        cat.format(&cat.all()),
    ];
    expect.sort();
    assert_eq!(names(&cat, &tl, &w2), expect);
    assert!(w1.iter().all(|i| w2.contains(i)));
}

fn canonical(cat: &ModCategory, s: &str) -> String {
    if s == "0" {
        return s.into();
    }
    let inner: Vec<&str> = s
        .trim_matches(|c| c == '{' || c == '}')
        .split(", ")
        .collect();
    cat.format(&cat.subcat(&inner).unwrap())
}

#[test]
fn trivial_pairs_satisfy_everything() {
    let cat = example_cat();
    for tors in [cat.empty(), cat.all()] {
        let p = cat.pair_generated_by(&tors);
        assert!(cat.is_torsion_pair(&p));
        for n in 1..=3 {
            for r in OmegaRoute::ALL {
                assert!(cat.is_omega_n(&p, n, r).unwrap());
            }
        }
        assert!(cat.is_hereditary(&p) && cat.is_cohereditary(&p) && cat.is_split(&p));
    }
}

#[test]
fn semisimple_torsion_lattice_is_boolean() {
    for k in 1..=3 {
        let cat = ModCategory::new(semisimple(k, f2()), &EnumerateOptions::default()).unwrap();
        let tl = enumerate_torsion_pairs(&cat, &Budget::default()).unwrap();
        assert!(lattice_isomorphic(&tl.lattice, &small::boolean(k)).is_some());
        let om = omega_lattice_via_simples(cat.algebra()).unwrap();
        assert!(lattice_isomorphic(&om, &small::boolean(k)).is_some());
    }
}

#[test]
fn hereditary_interval_incidence_has_14_pairs() {
    let alg = incidence_algebra(&interval_poset(2).unwrap(), f2());
    let cat = ModCategory::new(alg, &EnumerateOptions::default()).unwrap();
    assert_eq!(cat.len(), 6);
    let tl = enumerate_torsion_pairs(&cat, &Budget::default()).unwrap();
    assert_eq!(tl.len(), 14);
    let w1 = tl.select(|p| cat.is_omega_n_checked(p, 1)).unwrap();
    assert_eq!(w1.len(), 5);
    assert!(tl.is_sublattice(&w1));
}

#[test]
fn linear_quiver_matches_symbolic_model() {
    for n in 1..=3 {
        let cat = ModCategory::new(linear_a(n, f2()), &EnumerateOptions::default()).unwrap();
        let tl = enumerate_torsion_pairs(&cat, &Budget::default()).unwrap();
        assert_eq!(tl.len() as u64, catalan_number(n + 1));
        assert!(lattice_isomorphic(&tl.lattice, &typea_torsion_lattice(n).unwrap()).is_some());
    }
}

#[test]
fn example_omega_lattice_via_simples() {
    let alg = example_algebra(f2());
    let om = omega_lattice_via_simples(&alg).unwrap();
    assert_eq!(om.len(), 2);
    assert_eq!(ext_quiver(&alg), arrow_quiver(&alg));
    let free = omega_lattice_of_quiver(&alg).unwrap();
    assert!(lattice_isomorphic(&om, &free).is_some());
    // the path algebra of the 2-cycle is infinite dimensional
    assert!(alg.without_relations().is_err());
}

#[test]
fn omega_lattices_of_interval_incidence_algebras() {
    for n in 2..=4 {
        let alg = incidence_algebra(&interval_poset(n).unwrap().opposite(), f2());
        let om = omega_lattice_via_simples(&alg).unwrap();
        assert_eq!(om.len() as u64, catalan_number(n + 1));
        assert!(om.is_distributive());
        assert_eq!(om.len(), dyck_lattice(n + 1).unwrap().len());
        assert_eq!(ext_quiver(&alg), arrow_quiver(&alg));
        let free = omega_lattice_of_quiver(&alg).unwrap();
        assert_eq!(free.len(), om.len());
        let hereditary = omega_lattice_via_simples(&alg.without_relations().unwrap()).unwrap();
        assert!(lattice_isomorphic(&om, &hereditary).is_some());
    }
}

#[test]
fn theorem_1_small() {
    for n in 2..=5 {
        let w = verify_theorem_1(n).unwrap();
        assert_eq!(w.dyck.len() as u64, catalan_number(n));
    }
    assert!(verify_theorem_1(1).is_err());
}

#[test]
fn filt_pairs_match_module_omega_pairs() {
    let cat = example_cat();
    let tl = enumerate_torsion_pairs(&cat, &Budget::default()).unwrap();
    let w1 = tl
        .select(|p| cat.is_omega_n(p, 1, OmegaRoute::Ext))
        .unwrap();
    for u in successor_closed_sets(cat.algebra()) {
        let p = filt_pair(&cat, &u);
        assert!(cat.is_torsion_pair(&p));
        assert!(w1.contains(&tl.index_of(&p.tors).unwrap()));
    }
}

#[test]
fn budget_cap_is_enforced() {
    let alg = incidence_algebra(&interval_poset(2).unwrap(), f2());
    let cat = ModCategory::new(alg, &EnumerateOptions::default()).unwrap();
    let budget = Budget {
        max_classes: 5,
        max_time: None,
    };
    assert!(matches!(
        enumerate_torsion_pairs(&cat, &budget),
        Err(omegalat::Error::BudgetExceeded { .. })
    ));
}

#[test]
fn json_round_trip() {
    let cat = example_cat();
    let tl = enumerate_torsion_pairs(&cat, &Budget::default()).unwrap();
    let tags = tl.tags(&cat).unwrap();
    let json = tl.to_json(&cat, Some(&tags));
    let text = serde_json::to_string(&json).unwrap();
    let back: TorsionLatticeJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back, json);
    assert_eq!(
        omegalat::FinLattice::from_json(&back.lattice).unwrap(),
        tl.lattice
    );
    assert!(tl.to_dot("tors", Some(&tags)).contains("omega2"));
}
