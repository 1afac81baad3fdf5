use ns_core::assoc::{check_associativity, check_maximality, counting_lemma_check, dimension_bound_check, enumerate_maximal};
use ns_core::catalog::{build, NsType};
use ns_core::idempotent::{enumerate, search::SearchConfig};

#[test]
fn maximal_counts() {
    // (type, trivial, non-trivial)
    let expected = [
        (NsType::A2, None, 0),
        (NsType::B2, None, 0),
        (NsType::A3, None, 0),
        (NsType::C3, None, 0),
        (NsType::A4, None, 2),
        (NsType::B4, Some(4), 5),
        (NsType::A5, Some(6), 5),
        (NsType::A6, Some(30), 45),
    ];
    for (t, trivial, nontrivial) in expected {
        let e = build(t).unwrap();
        let set = enumerate(&e, "multistart-newton", &SearchConfig::default()).unwrap();
        let r = enumerate_maximal(&e, &set, "bron-kerbosch").unwrap();
        let dims: Vec<usize> = r.maximal.iter().map(|s| s.dim).collect();
        eprintln!("{t}: {} vertices, {} edges, maximal dims {dims:?}, orbit sizes {:?}, non-trivial orbits {:?}, max clique {}", r.vertices.len(), r.graph.edge_count(), r.orbit_sizes, r.nontrivial_orbit_sizes(), r.max_clique);
        for s in r.maximal.iter().filter(|s| !s.is_trivial) {
            eprintln!("   {:?}", r.basis_labels(s));
        }
        assert_eq!(r.nontrivial_count(), nontrivial, "{t}");
        if let Some(k) = trivial {
            assert_eq!(r.trivial_count(), k, "{t}");
        }
        assert!(check_maximality(&r));
        assert!(check_associativity(&r, 3, 7).unwrap());
        let b = dimension_bound_check(&e, &r).unwrap();
        assert!(b.holds(), "{t}: {b:?}");
        let rows = counting_lemma_check(&r).unwrap();
        for row in &rows {
            eprintln!("   N_x {} d={} N={} bound={}", row.label, row.d, row.n_x, row.bound);
        }
        let ex = enumerate_maximal(&e, &set, "exhaustive").unwrap();
        assert_eq!(ex.maximal, r.maximal, "{t}");
    }
}
