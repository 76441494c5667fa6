use icat::additive::{chain_from_precat, precat_from_2chain, rg_from_morphism, shuffle_precategory, TwoChain};
use icat::format::{from_json, to_json, Bundle, CorpusFile, MorphismFile, StructureFile};
use icat::homs::homs;
use icat::morphism::obj;
use icat::points::{search_a2_counterexample, split_epis, A2Search};
use icat::structure::named;
use icat::{corpus, Kind, Morphism, Structure};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z(n: usize) -> icat::Obj {
    obj(Structure::cyclic(n, Kind::AbelianGroup))
}

fn reload(b: &Bundle) -> Bundle {
    from_json(&to_json(b)).expect("bundle parses back")
}

#[test]
fn morphism_bundles_round_trip() {
    for h in homs(&z(4), &z(2)) {
        let back = reload(&Bundle::from_morphism(&h)).to_morphism().unwrap();
        assert_eq!(back, h);
    }
}

#[test]
fn graph_and_precategory_bundles_round_trip() {
    let h = Morphism::new(&z(4), &z(2), vec![0, 1, 0, 1]).unwrap();
    let g = rg_from_morphism(&h).unwrap();
    assert_eq!(reload(&Bundle::from_graph(&g)).to_graph().unwrap(), g);

    let ch = TwoChain::new(Morphism::new(&z(2), &z(4), vec![0, 2]).unwrap(), h).unwrap();
    let p = precat_from_2chain(&ch).unwrap();
    let back = reload(&Bundle::from_precategory(&p)).to_precategory().unwrap();
    assert_eq!(back, p);
    assert!(back.validate().passed());
    // a precategory bundle also carries its underlying graph
    assert_eq!(Bundle::from_precategory(&p).to_graph().unwrap(), p.graph);
}

#[test]
fn shuffled_precategory_survives_serialization() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ch = TwoChain::new(Morphism::zero(&z(3), &z(3)).unwrap(), Morphism::identity(&z(3))).unwrap();
    let p = shuffle_precategory(&precat_from_2chain(&ch).unwrap(), &mut rng);
    let back = reload(&Bundle::from_precategory(&p)).to_precategory().unwrap();
    let (ch2, cert) = chain_from_precat(&back).unwrap();
    assert!(cert.iso.verify(&precat_from_2chain(&ch2).unwrap(), &back).passed());
    assert_eq!(ch2.z().order(), 3);
}

#[test]
fn split_epi_bundles_round_trip() {
    for p in split_epis(Kind::Group, 6, Default::default()).unwrap() {
        let back = reload(&Bundle::from_split_epi(&p)).to_split_epi().unwrap();
        assert_eq!(back.alpha(), p.alpha());
        assert_eq!(back.beta(), p.beta());
        assert_eq!(back.kernel().order(), p.kernel().order());
    }
}

#[test]
fn a2_witness_bundle_replays() {
    let w = search_a2_counterexample(Kind::PointedSet, 4, A2Search::default())
        .unwrap()
        .expect("pointed sets have a counterexample");
    let b = reload(&Bundle::from_a2_witness(&w));
    assert_eq!(b.structures.len(), 6);
    assert_eq!(b.morphisms.len(), 6);
    assert!(b.verdict.as_deref().unwrap().starts_with("FAIL"));
    let back = b.to_a2_witness().unwrap();
    assert!(back.replays());
    assert_eq!(back.morphism.top, w.morphism.top);
}

#[test]
fn chain_bundles_round_trip() {
    let t = Morphism::new(&z(2), &z(4), vec![0, 2]).unwrap();
    let h = Morphism::new(&z(4), &z(2), vec![0, 1, 0, 1]).unwrap();
    let ch = TwoChain::new(t, h).unwrap();
    let back = reload(&Bundle::from_chain(&ch)).to_chain().unwrap();
    assert_eq!(back.t, ch.t);
    assert_eq!(back.h, ch.h);
}

#[test]
fn broken_chains_are_rejected_on_load() {
    let mut b = Bundle::from_chain(
        &TwoChain::new(
            Morphism::new(&z(2), &z(4), vec![0, 2]).unwrap(),
            Morphism::new(&z(4), &z(2), vec![0, 1, 0, 1]).unwrap(),
        )
        .unwrap(),
    );
    b.morphisms.get_mut("h").unwrap().map = vec![0, 0, 1, 1];
    assert!(b.to_chain().is_err());
}

#[test]
fn wrong_bundle_type_is_an_error() {
    let h = Morphism::identity(&z(2));
    assert!(Bundle::from_morphism(&h).to_chain().is_err());
    assert!(Bundle::from_morphism(&h).to_precategory().is_err());
}

#[test]
fn morphism_files_accept_named_structures() {
    let text = r#"{"source": "S3", "target": "Z2", "map": [0, 1, 1, 1, 0, 0]}"#;
    let m: MorphismFile = from_json(text).unwrap();
    let sign = m.to_morphism(&Default::default()).unwrap();
    assert_eq!(sign.source().as_ref(), &named::s3());
    assert!(sign.is_surjective());
}

#[test]
fn serialization_is_deterministic() {
    let c = corpus::enumerate(Kind::Group, 8).unwrap();
    let a = to_json(&CorpusFile::of(&c));
    let b = to_json(&CorpusFile::of(&corpus::enumerate(Kind::Group, 8).unwrap()));
    assert_eq!(a, b);
    for s in &c.items {
        let f: StructureFile = from_json(&to_json(&StructureFile::of(s))).unwrap();
        assert_eq!(f.to_structure().unwrap().as_ref(), s.as_ref());
    }
}
