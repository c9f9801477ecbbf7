use omegalat::algebra::*;
use omegalat::linalg::{Fp, Matrix};
use omegalat::poset::{interval_poset, Poset};

fn f2() -> Fp {
    Fp::new(2).unwrap()
}

fn example() -> Algebra {
    example_algebra(f2())
}

#[test]
fn example_presentation() {
    let a = example();
    assert_eq!(a.dim(), 5);
    assert_eq!(a.relations().len(), 1);
    // the relation is a then b
    assert_eq!(a.relations()[0].terms[0].1.arrows, vec![0, 1]);
    assert_eq!(Module::simple(&a, 0).dims(), [1, 0]);
    assert_eq!(Module::simple(&a, 1).dims(), [0, 1]);
}

#[test]
fn example_projectives_and_injectives() {
    let a = example();
    let p1 = Module::projective(&a, 0);
    let p2 = Module::projective(&a, 1);
    let i1 = Module::injective(&a, 0);
    let i2 = Module::injective(&a, 1);
    assert_eq!(p1.dims(), [1, 1]);
    assert_eq!(p2.dims(), [1, 2]);
    assert_eq!(i1.dims(), [1, 1]);
    assert!(is_isomorphic(&a, &p2, &i2).unwrap());
    assert!(!is_isomorphic(&a, &p1, &i1).unwrap());
    let (env, iota) = injective_envelope(&a, &Module::simple(&a, 1)).unwrap();
    assert!(is_isomorphic(&a, &env, &p2).unwrap());
    assert!(iota.is_injective());
}

#[test]
fn hom_dimensions() {
    let a = example();
    let s1 = Module::simple(&a, 0);
    let s2 = Module::simple(&a, 1);
    assert_eq!(hom(&a, &s1, &s2).len(), 0);
    let p1 = Module::projective(&a, 0);
    let i1 = Module::injective(&a, 0);
    assert_eq!(hom(&a, &p1, &i1).len(), 1);
    let id = ModuleMap::identity(&p1);
    let basis = hom(&a, &p1, &p1);
    assert!(basis.iter().all(|f| f.is_homomorphism(&a, &p1, &p1)));
    assert!(basis.contains(&id) || basis.len() == 1);
}

#[test]
fn covers_and_syzygies() {
    let a = example();
    let s1 = Module::simple(&a, 0);
    let s2 = Module::simple(&a, 1);
    let (p, pi) = projective_cover(&a, &s1).unwrap();
    assert_eq!(p.dims(), [1, 1]);
    assert!(pi.is_surjective());
    assert_eq!(projective_cover(&a, &s2).unwrap().0.dims(), [1, 2]);
    assert!(matches!(
        projective_cover(&a, &Module::zero(&a)),
        Err(omegalat::Error::ZeroModule)
    ));

    let om = syzygy(&a, &s1, 1);
    assert!(is_isomorphic(&a, &om, &s2).unwrap());
    let om2 = syzygy(&a, &s1, 2);
    assert!(is_isomorphic(&a, &om2, &Module::projective(&a, 0)).unwrap());
    assert!(syzygy(&a, &Module::projective(&a, 1), 1).is_zero());

    assert!(is_isomorphic(&a, &cosyzygy(&a, &s1, 1), &s2).unwrap());
    assert!(cosyzygy(&a, &Module::injective(&a, 0), 1).is_zero());
}

#[test]
fn resolutions_are_minimal_and_exact() {
    let a = example();
    for m in indecomposables(&a, &EnumerateOptions::default()).unwrap() {
        let res = min_resolution(&a, &m, 5);
        assert!(res.is_exact());
        assert!(res.is_minimal(&a));
        assert!(res.complete);
        assert!(res.projective_dimension().unwrap() <= 2);
    }
    let res = min_resolution(&a, &Module::simple(&a, 0), 5);
    assert_eq!(res.projective_dimension(), Some(2));
}

#[test]
fn ext_small_cases() {
    let a = example();
    let s1 = Module::simple(&a, 0);
    let s2 = Module::simple(&a, 1);
    assert_eq!(ext(&a, &s1, &s2, 1), 1);
    assert_eq!(ext(&a, &s2, &s1, 1), 1);
    assert_eq!(ext(&a, &s1, &s1, 1), 0);
    let p2 = Module::projective(&a, 1);
    for n in 1..4 {
        assert_eq!(ext(&a, &p2, &s1, n), 0);
    }
    assert_eq!(ext(&a, &s1, &s1, 0), 1);
}

#[test]
fn ext_routes_agree_on_example() {
    let a = example();
    let ind = indecomposables(&a, &EnumerateOptions::default()).unwrap();
    for m in &ind {
        for n in &ind {
            for k in 0..=3 {
                let e = ext(&a, m, n, k);
                assert_eq!(e, ext_dual_route(&a, m, n, k));
                if k >= 3 {
                    assert_eq!(e, 0);
                }
            }
            assert_eq!(ext(&a, m, n, 1), extension_space(&a, m, n).dim());
        }
    }
}

#[test]
fn example_has_five_indecomposables() {
    let a = example();
    let ind = indecomposables(&a, &EnumerateOptions::default()).unwrap();
    assert_eq!(ind.len(), 5);
    let mut dims: Vec<Vec<usize>> = ind.iter().map(|m| m.dims().to_vec()).collect();
    dims.sort();
    assert_eq!(
        dims,
        vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 1], vec![1, 2]]
    );
}

#[test]
fn global_dimensions() {
    assert_eq!(global_dimension(&example(), 6), GlobalDimension::Exact(2));
    assert_eq!(
        global_dimension(&semisimple(3, f2()), 6),
        GlobalDimension::Exact(0)
    );
    let int2 = incidence_algebra(&interval_poset(2).unwrap(), f2());
    assert_eq!(global_dimension(&int2, 6), GlobalDimension::Exact(1));
    let int3 = incidence_algebra(&interval_poset(3).unwrap(), f2());
    assert_eq!(global_dimension(&int3, 6), GlobalDimension::Exact(2));
}

#[test]
fn incidence_algebra_dimensions() {
    let anti = Poset::antichain(3);
    assert_eq!(incidence_algebra(&anti, f2()).dim(), 3);
    assert_eq!(incidence_algebra(&Poset::chain(2), f2()).dim(), 3);
    let p = interval_poset(3).unwrap();
    let related: usize = (0..p.len()).map(|x| p.up_set(x).count()).sum();
    assert_eq!(incidence_algebra(&p, f2()).dim(), related);
    assert_eq!(incidence_algebra(&p.opposite(), f2()).dim(), related);
}

#[test]
fn decomposition() {
    let a = example();
    let s1 = Module::simple(&a, 0);
    let d = decompose(&a, &s1.direct_sum(&s1)).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].1, 2);
    let p2 = Module::projective(&a, 1);
    assert!(is_indecomposable(&a, &p2).unwrap());
    let big = p2.direct_sum(&s1).direct_sum(&Module::projective(&a, 0));
    assert_eq!(summands(&a, &big).unwrap().len(), 3);
}

#[test]
fn dual_is_involutive() {
    let a = example();
    for m in indecomposables(&a, &EnumerateOptions::default()).unwrap() {
        assert_eq!(m.dual().dual(), m);
        assert!(m.dual().satisfies_relations(a.opposite()));
    }
}

#[test]
fn interval_incidence_has_35_indecomposables() {
    let p = interval_poset(3).unwrap().opposite();
    let a = incidence_algebra(&p, f2());
    assert_eq!(
        indecomposables(&a, &EnumerateOptions::default())
            .unwrap()
            .len(),
        35
    );
}

#[test]
fn linear_quiver_indecomposables_are_intervals() {
    for n in 1..=4 {
        let a = linear_a(n, f2());
        let ind = indecomposables(&a, &EnumerateOptions::default()).unwrap();
        assert_eq!(ind.len(), n * (n + 1) / 2);
        assert!(ind.iter().all(|m| m.dims().iter().all(|&d| d <= 1)));
    }
}

#[test]
fn module_json_round_trip() {
    let a = example();
    let p2 = Module::projective(&a, 1);
    let text = serde_json::to_string(&p2.to_json(&a)).unwrap();
    let back: ModuleJson = serde_json::from_str(&text).unwrap();
    assert_eq!(Module::from_json(&a, &back).unwrap(), p2);

    let bad = ModuleJson {
        dims: vec![1, 1],
        arrows: [
            ("a".to_string(), vec![vec![1]]),
            ("b".to_string(), vec![vec![1]]),
        ]
        .into(),
    };
    assert!(Module::from_json(&a, &bad).is_err());
}

#[test]
fn algebra_json_round_trip() {
    let a = example();
    let json = a.to_json();
    let b = Algebra::from_json(&json).unwrap();
    assert_eq!(b.dim(), a.dim());
    assert_eq!(b.to_json(), json);
}

#[test]
fn cyclic_quiver_without_relations_is_rejected() {
    let f = f2();
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
    assert!(Algebra::new(f, vec!["1".into(), "2".into()], arrows, vec![]).is_err());
}

#[test]
fn commutativity_relation_acts_as_zero() {
    let p = interval_poset(2).unwrap().opposite();
    let a = incidence_algebra(&p, f2());
    // the opposite of the 3-element Lambda has no parallel paths
    assert!(a.relations().is_empty());
    let sq = Poset::antichain(2).ideal_lattice();
    let b = incidence_algebra(sq.order(), f2());
    assert_eq!(b.relations().len(), 1);
    assert_eq!(b.dim(), 9);
    let m = Module::projective(&b, sq.bottom());
    assert_eq!(m.total_dim(), 4);
    let bad = Module::new(
        &b,
        vec![1; 4],
        b.arrows()
            .iter()
            .map(|a| {
                let mut x = Matrix::zeros(f2(), 1, 1);
                // break commutativity on exactly one arrow out of the bottom
                if a.source == sq.bottom() && a.target == b.arrows()[0].target {
                    x.set(0, 0, 0);
                } else {
                    x.set(0, 0, 1);
                }
                x
            })
            .collect(),
    );
    assert!(bad.is_err());
}
