use icat::halfrefl::{
    check_adjunction, check_halfreflection, cooperative_bracket, i_eta, j_eta, kernel_and_section_jointly_epic,
    magma_subcategory_a, search_joint_epic_failure, square_point, Bracket, Pairs, Points, Registration,
};
use icat::morphism::obj;
use icat::par::Exec;
use icat::points::split_epis_between;
use icat::ptset_models::{associativity_failure, search_nonassociative, validate_fibered_action};
use icat::structure::named;
use icat::{Kind, Obj, Structure};

fn groups() -> Vec<Obj> {
    vec![
        obj(Structure::cyclic(1, Kind::Group)),
        obj(Structure::cyclic(2, Kind::Group)),
        obj(Structure::cyclic(3, Kind::Group)),
        obj(named::s3()),
    ]
}

#[test]
fn groups_read_as_magmas_keep_every_split_epi() {
    let gs = groups();
    let a = magma_subcategory_a(&gs, &gs, Exec::Sequential).unwrap();
    assert!(a.excluded.is_empty());
    let mut expected = 0;
    for x in &gs {
        for b in gs.iter().filter(|b| b.order() <= x.order()) {
            let points = split_epis_between(x, b);
            assert!(points.iter().all(kernel_and_section_jointly_epic));
            expected += points.len();
        }
    }
    assert_eq!(a.scanned, expected);
    assert_eq!(a.points.objects().len(), expected);
    assert!(check_halfreflection(&a.points, Exec::Sequential).passed());
    assert!(check_adjunction(&a.points, Exec::Sequential).passed());
}

#[test]
fn magma_registration_agrees_with_group_points() {
    let gs = groups();
    let magma = magma_subcategory_a(&gs, &gs, Exec::Sequential).unwrap().points;
    let group = Points::new(Kind::Group, 3, 3, Exec::Sequential).unwrap();
    // every split epi of groups of order <= 3 appears among the magma objects
    for p in group.objects() {
        assert!(magma
            .objects()
            .iter()
            .any(|q| q.alpha().map() == p.alpha().map() && q.beta().map() == p.beta().map()
                && q.a().table() == p.a().table()));
    }
}

#[test]
fn join_semilattice_bracket_is_not_unique() {
    let w = search_joint_epic_failure(2..=2, 2).expect("the join semilattice fails");
    let b = w.b.clone();
    let r = Points::from_parts("join semilattice".into(), vec![square_point(&b)], vec![b.clone()], vec![b]);
    let a = &r.objects()[0];
    let (j, i) = (j_eta(&r, a), i_eta(&r, a));
    let f = w.first.after(&j);
    let g = w.first.after(&i);
    assert_eq!(f, w.second.after(&j));
    assert_eq!(g, w.second.after(&i));
    match cooperative_bracket(&r, a, &f, &g) {
        Bracket::NotUnique(m, n) => assert_ne!(m, n),
        other => panic!("expected two solutions, got {other:?}"),
    }
}

#[test]
fn group_brackets_are_unique() {
    let r = Points::new(Kind::Group, 4, 4, Exec::Sequential).unwrap();
    for a in r.objects() {
        let (j, i) = (j_eta(&r, a), i_eta(&r, a));
        let ident = icat::Morphism::identity(&r.f(a));
        let res = cooperative_bracket(&r, a, &ident.after(&j), &ident.after(&i));
        assert_eq!(res, Bracket::Unique(ident));
    }
}

#[test]
fn pairs_registration_passes_where_coproducts_exist() {
    for kind in [Kind::PointedSet, Kind::AbelianGroup] {
        let r = Pairs::new(kind, 3).unwrap();
        assert!(check_halfreflection(&r, Exec::Sequential).passed(), "{kind:?}");
        assert!(check_adjunction(&r, Exec::Sequential).passed(), "{kind:?}");
    }
    assert!(matches!(
        Pairs::new(Kind::Group, 3),
        Err(icat::IcatError::UnsupportedCoproduct(Kind::Group))
    ));
}

#[test]
fn nonassociative_product_models() {
    assert!(search_nonassociative(2, 2).is_none());
    let f = search_nonassociative(3, 2).expect("a model with |X| = 3, |B| = 2");
    assert!(validate_fibered_action(&f).passed());
    assert!(associativity_failure(&f).is_some());
}
