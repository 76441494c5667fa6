//! Library results compared against brute-force enumeration and closed forms.

use icat::actions::{check_peiffer, precrossed_modules, ChainCompData};
use icat::additive::{arrows, chain_from_precat, chains, precat_from_2chain, shuffle_precategory};
use icat::campaign::{normal_subgroups, run_campaign, Manifest};
use icat::homs::homs;
use icat::morphism::obj;
use icat::par::Exec;
use icat::ptset_models::{star_category, star_precategory};
use icat::structure::named;
use icat::{corpus, IcatError, Kind, Morphism, Obj, Structure};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pointed(n: usize) -> Obj {
    obj(Structure::pointed_set(n))
}

/// Pointed maps `x -> b` by direct enumeration of all functions fixing 0.
fn pointed_maps(x: usize, b: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0]];
    for _ in 1..x {
        out = out
            .into_iter()
            .flat_map(|m| (0..b).map(move |v| [m.clone(), vec![v]].concat()))
            .collect();
    }
    out
}

#[test]
fn pointed_map_counts_match_closed_form() {
    let (mut all, mut trivial) = (0u64, 0u64);
    for x in 1..=5u32 {
        for b in 1..=5u64 {
            let maps = pointed_maps(x as usize, b as usize);
            assert_eq!(maps.len() as u64, b.pow(x - 1));
            assert_eq!(homs(&pointed(x as usize), &pointed(b as usize)).len() as u64, b.pow(x - 1));
            all += maps.len() as u64;
            trivial += maps.iter().filter(|m| m.iter().filter(|&&v| v == 0).count() == 1).count() as u64;
        }
    }
    assert_eq!(all, 1279);
    assert_eq!(trivial, 499);
    let closed: u64 = (1..=5u32)
        .flat_map(|x| (1..=5u64).map(move |b| (b - 1).pow(x - 1)))
        .sum();
    assert_eq!(closed, 499);
}

#[test]
fn star_campaign_reports_the_oracle_counts() {
    let r = run_campaign("star", &Manifest::default(), None, Exec::default()).unwrap();
    assert!(r.passed(), "{r}");
    assert!(r.checks[0].summary.starts_with("1279/1279"));
    assert!(r.checks[0].summary.contains("499 with trivial kernel"));
}

#[test]
fn star_models_follow_the_kernel() {
    for x in 1..=4 {
        for b in 1..=4 {
            for map in pointed_maps(x, b) {
                let trivial = map.iter().filter(|&&v| v == 0).count() == 1;
                let h = Morphism::new(&pointed(x), &pointed(b), map).unwrap();
                assert_eq!(star_precategory(&h).unwrap().is_internal_category().is_pullback, trivial);
                match star_category(&h) {
                    Ok(c) => {
                        assert!(trivial);
                        assert!(c.validate().passed());
                    }
                    Err(IcatError::KernelNotTrivial(_)) => assert!(!trivial),
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }
}

/// Subsets containing 0, closed under the operation and under conjugation.
fn brute_normal_subgroups(g: &Obj) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let members: Vec<usize> = std::iter::once(0)
            .chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1))
            .collect();
        let has = |v: usize| members.contains(&v);
        let closed = members.iter().all(|&a| members.iter().all(|&b| has(g.op(a, b))));
        let normal = members.iter().all(|&a| g.elements().all(|y| has(g.conj(y, a))));
        if closed && normal {
            out.push(members);
        }
    }
    out.sort();
    out
}

#[test]
fn normal_subgroups_match_brute_force() {
    let mut total = 0;
    for g in corpus::enumerate(Kind::Group, 12).unwrap().items {
        let fast = normal_subgroups(&g);
        assert_eq!(fast, brute_normal_subgroups(&g), "{}", g.label());
        total += fast.len();
    }
    assert_eq!(total, 113);
    assert_eq!(normal_subgroups(&obj(named::s3())).len(), 3);
    assert_eq!(normal_subgroups(&obj(named::quaternion())).len(), 6);
}

#[test]
fn corpus_sizes_match_known_counts() {
    // abelian groups of order 1..=8: 1, 1, 1, 2, 1, 1, 1, 3
    assert_eq!(corpus::enumerate(Kind::AbelianGroup, 8).unwrap().len(), 11);
    // groups of order 1..=6: 1, 1, 1, 2, 1, 2
    assert_eq!(corpus::enumerate(Kind::Group, 6).unwrap().len(), 8);
    // groups of order 1..=12: add 1, 5, 2, 2, 1, 5
    assert_eq!(corpus::enumerate(Kind::Group, 12).unwrap().len(), 24);
}

#[test]
fn s3_transpositions_are_elements_one_and_two() {
    let s3 = named::s3();
    for t in [1, 2, 3] {
        assert_eq!(s3.op(t, t), 0);
    }
    assert_ne!(s3.op(1, 2), s3.op(2, 1));
    assert_eq!(s3.element_order(4), 3);
}

#[test]
fn tampering_total_matches_the_table_sizes() {
    let n = 6;
    let mut expected = 0;
    let mut modules = 0;
    for g in corpus::enumerate(Kind::Group, n).unwrap().items.iter() {
        for b in corpus::enumerate(Kind::Group, n).unwrap().items.iter() {
            if g.order() * b.order() > n {
                continue;
            }
            for m in precrossed_modules(g, b).into_iter().filter(check_peiffer) {
                let d = ChainCompData::from_crossed_module(&m).unwrap();
                let fxb = g.order() * b.order();
                let fzx = d.t.source().order() * g.order();
                assert_eq!(d.xi_f.b().order(), fxb);
                assert_eq!(d.xi_f.x().order(), fzx);
                expected += fxb * fzx * (fzx - 1);
                modules += 1;
            }
        }
    }
    let r = run_campaign("chaincomp", &Manifest::default(), Some(n), Exec::default()).unwrap();
    assert!(r.passed(), "{r}");
    assert!(r.checks[0].summary.starts_with(&format!("{modules}/{modules} ")));
    assert!(r.checks[1].summary.starts_with(&format!("{expected}/{expected} ")));
}

#[test]
fn arrow_and_chain_counts_match_hom_counts() {
    let groups = corpus::enumerate(Kind::AbelianGroup, 4).unwrap().items;
    let mut expected = 0;
    for x in &groups {
        for b in &groups {
            expected += homs(x, b).len();
        }
    }
    assert_eq!(arrows(4).unwrap().len(), expected);

    let mut expected_chains = 0;
    for z in &groups {
        for x in &groups {
            for b in &groups {
                if z.order() * x.order() * x.order() * b.order() > 64 {
                    continue;
                }
                for t in homs(z, x) {
                    expected_chains += homs(x, b).iter().filter(|h| h.after(&t).is_zero()).count();
                }
            }
        }
    }
    assert_eq!(chains(4, 64, Exec::default()).unwrap().len(), expected_chains);
}

#[test]
fn sequential_and_parallel_runs_agree() {
    for name in ["grp-a2", "peiffer", "act-pt-grp"] {
        let a = run_campaign(name, &Manifest::default(), Some(8), Exec::Sequential).unwrap();
        let b = run_campaign(name, &Manifest::default(), Some(8), Exec::Parallel).unwrap();
        assert_eq!(a.checks, b.checks, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn shuffled_precategories_are_certified(seed in any::<u64>(), pick in 0usize..1000) {
        let all = chains(4, 64, Exec::Sequential).unwrap();
        let ch = &all[pick % all.len()];
        let p = precat_from_2chain(ch).unwrap();
        let q = shuffle_precategory(&p, &mut ChaCha8Rng::seed_from_u64(seed));
        let (ch2, cert) = chain_from_precat(&q).unwrap();
        prop_assert!(cert.iso.verify(&precat_from_2chain(&ch2).unwrap(), &q).passed());
        prop_assert_eq!(ch2.z().order(), ch.z().order());
        prop_assert_eq!(ch2.x().order(), ch.x().order());
        prop_assert_eq!(ch2.b().order(), ch.b().order());
    }

    #[test]
    fn pointed_maps_compose_associatively(
        sizes in prop::collection::vec(1usize..=5, 4),
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let objs: Vec<Obj> = sizes.iter().map(|&n| pointed(n)).collect();
        let maps: Vec<Morphism> = objs
            .windows(2)
            .map(|w| {
                let map = (0..w[0].order()).map(|i| if i == 0 { 0 } else { rng.gen_range(0..w[1].order()) }).collect();
                Morphism::new(&w[0], &w[1], map).unwrap()
            })
            .collect();
        let left = maps[2].after(&maps[1]).after(&maps[0]);
        let right = maps[2].after(&maps[1].after(&maps[0]));
        prop_assert_eq!(left, right);
    }
}
