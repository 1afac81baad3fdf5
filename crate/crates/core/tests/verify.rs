use ns_core::catalog::NsType;
use ns_core::idempotent::search::SearchConfig;
use ns_core::verify::{run, tally, verify, Status};

#[test]
fn all_types_reproduce() {
    for t in NsType::ALL {
        let p = run(t, "multistart-newton", "bron-kerbosch", &SearchConfig::default()).unwrap();
        let checks = verify(&p).unwrap();
        for c in checks.iter().filter(|c| c.status != Status::Pass) {
            eprintln!("{t} {:?}: {} [{}] expected {} observed {} {:?}", c.status, c.claim, c.anchor, c.expected, c.observed, c.note);
        }
        let (pass, finding, fail) = tally(&checks);
        eprintln!("{t}: {pass} pass, {finding} findings, {fail} fail");
        assert_eq!(fail, 0, "{t}");
    }
}
