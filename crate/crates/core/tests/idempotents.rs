use ns_core::catalog::{build, NsType};
use ns_core::idempotent::search::{SearchConfig, SearchRegistry};
use ns_core::idempotent::{closed_form_seeds, enumerate, Source};
use ns_core::scalar::Scalar;

#[test]
fn counts_per_type() {
    let expected = [
        (NsType::A2, 8),
        (NsType::B2, 4),
        (NsType::A3, 16),
        (NsType::C3, 8),
        (NsType::A4, 18),
        (NsType::B4, 32),
        (NsType::A5, 44),
        (NsType::A6, 208),
    ];
    for (t, count) in expected {
        let e = build(t).unwrap();
        eprintln!("{t} ...");
        let start = std::time::Instant::now();
        let set = enumerate(&e, "multistart-newton", &SearchConfig::default()).unwrap();
        let sources = |s: Source| set.records.iter().filter(|r| r.source == s).count();
        eprintln!(
            "{t}: {} idempotents ({} search, {} closure, {} known) in {:?}; orbits {:?}",
            set.len(),
            sources(Source::Search),
            sources(Source::Closure),
            sources(Source::Known),
            start.elapsed(),
            set.orbits.sizes()
        );
        assert!(set.unresolved.is_empty(), "{t}: {:?}", set.unresolved);
        assert!(set.missed_known.is_empty(), "{t}: {:?}", set.missed_known);
        assert_eq!(set.len(), count, "{t}");
        assert_eq!(set.family.is_some(), t == NsType::A4, "{t}");
        let _ = closed_form_seeds(&e).unwrap();
    }
}

#[test]
fn registry_names() {
    let r = SearchRegistry::default();
    assert_eq!(r.names(), vec!["multistart-newton", "homotopy"]);
    assert_eq!(r.default_strategy().name(), "multistart-newton");
    assert!(r.get("nope").is_err());
}

#[test]
fn homotopy_agrees_with_multistart() {
    for t in [NsType::A2, NsType::A3, NsType::C3, NsType::B4, NsType::A5, NsType::A6] {
        let e = build(t).unwrap();
        let cfg = SearchConfig::default();
        let a = enumerate(&e, "multistart-newton", &cfg).unwrap();
        let b = enumerate(&e, "homotopy", &cfg).unwrap();
        let found_by_paths = b.records.iter().filter(|r| r.source == Source::Search).count();
        eprintln!("{t}: homotopy {} ({} from paths, {} missed known)", b.len(), found_by_paths, b.missed_known.len());
        assert_eq!(a.len(), b.len(), "{t}");
        for r in &b.records {
            assert!(a.index_of(&r.element).is_some(), "{t}: {}", r.element);
        }
    }
}

#[test]
fn four_a_family_descriptor() {
    let e = build(NsType::A4).unwrap();
    let set = enumerate(&e, "multistart-newton", &SearchConfig::default()).unwrap();
    let f = set.family.expect("4A carries a family");
    eprintln!("{f:?}");
    assert!(f.closed);
    assert!(f.max_deviation < 1e-8, "{}", f.max_deviation);
    assert!((f.traced_lambda.0 + 0.6).abs() < 0.05 && (f.traced_lambda.1 - 1.0).abs() < 0.05);
    let lambdas: Vec<Scalar> = f.exceptional.iter().map(|(l, _, _)| l.clone()).collect();
    assert_eq!(lambdas, vec![Scalar::zero(), Scalar::frac(2, 5)]);
    // at λ = 0 the eigenvalue 1 is doubled, at λ = 2/5 the eigenvalue 0
    assert_eq!((f.exceptional[0].1, f.exceptional[0].2), (1, 2));
    assert_eq!((f.exceptional[1].1, f.exceptional[1].2), (2, 1));
    assert_eq!(f.length, Scalar::int(2));
}
