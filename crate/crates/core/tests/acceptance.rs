//! Acceptance criteria 1–9, one line each.
//!
//! Every criterion is evaluated before any assertion, so a single run prints
//! the full picture. Published statements that hold only after a documented
//! reading (see `verify`) count as reproduced and are reported as findings.

use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ns_core::algebra::{Element, Idempotency};
use ns_core::assoc::{counting_lemma_check, dimension_bound_check};
use ns_core::automorphism::{generators, same_point};
use ns_core::catalog::{build, build_uncached, check_axioms, NsType};
use ns_core::idempotent::family::family_4a;
use ns_core::idempotent::search::SearchConfig;
use ns_core::idempotent::enumerate;
use ns_core::reference;
use ns_core::report::idempotents_document;
use ns_core::scalar::{Scalar, Sign};
use ns_core::spectral::{complement_matches, interior_certified, spectrum, SpectrumReport};
use ns_core::verify::{run, verify, Check, Pipeline, Status};

/// Criterion 1 and 2 time budget.
const BUILD_BUDGET: Duration = Duration::from_secs(1);
/// Criterion 3 time budget for 6A.
const SEARCH_BUDGET_6A: Duration = Duration::from_secs(300);
/// Criterion 5 tolerance and sample count.
const FAMILY_TOL_SPECTRUM: f64 = 1e-10;
const FAMILY_SAMPLES: i64 = 20;
/// Criterion 9: random pairs per algebra.
const NORTON_PAIRS: usize = 1000;

struct Line {
    ok: bool,
    text: String,
}

fn line(n: usize, ok: bool, text: String) -> Line {
    Line { ok, text: format!("criterion {n}: {} — {text}", if ok { "PASS" } else { "FAIL" }) }
}

fn findings(checks: &[&Check]) -> usize {
    checks.iter().filter(|c| c.status == Status::Finding).count()
}

fn criterion_1_2() -> (Line, Line) {
    let start = Instant::now();
    let mut triples = 0;
    let mut fro = true;
    let mut axes_ok = true;
    let mut axes = 0;
    for t in NsType::ALL {
        let e = build_uncached(t).unwrap();
        let a = check_axioms(&e).unwrap();
        triples += a.frobenius_triples;
        fro &= a.frobenius && a.gram_positive_definite;
        axes += a.axes.len();
        axes_ok &= a.axes.iter().all(|x| x.passed());
    }
    let dt = start.elapsed();
    (
        line(1, fro && dt < BUILD_BUDGET, format!("8 algebras built, M1 exact on {triples} basis triples, in {dt:.2?} (budget {BUILD_BUDGET:?})")),
        line(2, axes_ok && dt < BUILD_BUDGET, format!("{axes} axes: length 1, spectrum ⊆ {{0, 1, 1/4, 1/32}}, eigenvalue 1 simple (exact)")),
    )
}

fn criterion_3(pipes: &[Pipeline], t6a: Duration) -> Line {
    let mut ok = t6a < SEARCH_BUDGET_6A;
    let mut parts = Vec::new();
    for p in pipes {
        let t = p.entry.tag;
        if let Some(n) = reference::idempotent_count(t) {
            ok &= p.set.len() == n && p.set.unresolved.is_empty() && p.set.missed_known.is_empty();
            parts.push(format!("{t} {}", p.set.len()));
        }
        if t == NsType::A4 {
            let f = p.set.family.as_ref();
            let range = f.map(|f| (f.lambda_min.to_string(), f.lambda_max.to_string()));
            ok &= range == Some(("-3/5".into(), "1".into()));
            parts.push("+ family λ ∈ [−3/5, 1]".into());
        }
    }
    // same seed, same bytes
    let cfg = SearchConfig::default();
    let mut deterministic = true;
    for p in pipes {
        let again = enumerate(&p.entry, "multistart-newton", &cfg).unwrap();
        deterministic &= idempotents_document(&again) == idempotents_document(&p.set);
    }
    ok &= deterministic;
    line(3, ok, format!("{}; rerun identical: {deterministic}; 6A search {t6a:.1?} (budget {SEARCH_BUDGET_6A:?})", parts.join(", ")))
}

fn criterion_4(pipes: &[Pipeline], checks: &[Check]) -> Line {
    let rows: Vec<&Check> = checks.iter().filter(|c| c.claim.starts_with("spectrum of") && c.anchor.starts_with("Table")).collect();
    let mut ok = rows.iter().all(|c| c.status != Status::Fail);
    let p6 = pipes.iter().find(|p| p.entry.tag == NsType::A6).unwrap();
    let mut interior = 0;
    for r in p6.set.records.iter().filter(|r| !r.spectrum.is_exact()) {
        if r.name.as_deref().is_some_and(|n| n.starts_with("y^{(7)}") || n.starts_with("y^{(8)}")) {
            interior += interior_certified(&r.spectrum);
        }
    }
    ok &= interior == 12;
    let all: usize = pipes.iter().map(|p| p.set.len()).sum();
    let semisimple = pipes.iter().flat_map(|p| &p.set.records).filter(|r| r.spectrum.semisimple).count();
    ok &= semisimple == all;
    line(
        4,
        ok,
        format!(
            "{} table rows reproduced ({} via documented misprints); 12 eigenvalues of y^(7), y^(8) certified in (0, 1): {}; {semisimple}/{all} semisimple",
            rows.len(),
            findings(&rows),
            interior == 12
        ),
    )
}

fn h_pair_f64(l: f64) -> (f64, f64) {
    let s = (-15.0 * l * l + 6.0 * l + 9.0).sqrt();
    ((17.0 - 5.0 * l - 5.0 * s) / 32.0, (17.0 - 5.0 * l + 5.0 * s) / 32.0)
}

fn criterion_5(pipes: &[Pipeline], checks: &[Check]) -> Line {
    let entry = build(NsType::A4).unwrap();
    let mut worst: f64 = 0.0;
    for k in 0..FAMILY_SAMPLES {
        // λ = −3/5 + k·(8/5)/19 covers both endpoints
        let lambda = &Scalar::frac(-3, 5) + &Scalar::frac(8 * k, 5 * (FAMILY_SAMPLES - 1));
        let y = family_4a(&entry, &lambda).unwrap();
        let (h, hb) = h_pair_f64(lambda.to_f64());
        let mut want = [0.0, 1.0, 0.5, h, hb];
        want.sort_by(f64::total_cmp);
        let n = entry.n();
        let m = y.adjoint_matrix().to_f64();
        let mut got: Vec<f64> = DMatrix::from_fn(n, n, |i, j| m[(i, j)]).complex_eigenvalues().iter().map(|z| z.re).collect();
        got.sort_by(f64::total_cmp);
        let mut exact: Vec<f64> = spectrum(&y).unwrap().multiset().iter().map(Scalar::to_f64).collect();
        exact.sort_by(f64::total_cmp);
        for (g, (e, w)) in got.iter().zip(exact.iter().zip(&want)) {
            worst = worst.max((g - w).abs()).max((e - w).abs());
        }
    }
    let p4 = pipes.iter().find(|p| p.entry.tag == NsType::A4).unwrap();
    let computed: Vec<String> = p4.set.family.as_ref().unwrap().exceptional.iter().map(|(l, _, _)| l.to_string()).collect();
    let exc = checks.iter().find(|c| c.claim == "parameters with non-simple 0 or 1").unwrap();
    let ok = worst <= FAMILY_TOL_SPECTRUM && exc.status != Status::Fail && computed == ["0", "2/5"];
    line(
        5,
        ok,
        format!(
            "{FAMILY_SAMPLES} λ, max deviation {worst:.1e} (tol {FAMILY_TOL_SPECTRUM:e}); exceptional λ computed {{{}}} vs stated {{0, 2/3}}: {:?}",
            computed.join(", "),
            exc.status
        ),
    )
}

fn criterion_6(pipes: &[Pipeline]) -> Line {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut largest = 0;
    for p in pipes {
        let (t, r) = (p.entry.tag, &p.assoc);
        let bound = dimension_bound_check(&p.entry, r).unwrap();
        largest = largest.max(bound.max_clique);
        ok &= bound.max_clique <= 3;
        if let Some(m) = reference::MAXIMAL.iter().find(|m| m.type_tag == t) {
            ok &= r.nontrivial_count() == m.nontrivial && m.trivial.is_none_or(|k| k == r.trivial_count());
            parts.push(match m.trivial {
                Some(_) => format!("{t} {}+{}", r.trivial_count(), r.nontrivial_count()),
                None => format!("{t} {} non-trivial", r.nontrivial_count()),
            });
        }
        if t == NsType::A4 {
            ok &= r.family.is_some();
        }
        if t == NsType::A6 {
            let mut sizes = r.nontrivial_orbit_sizes();
            sizes.sort_unstable();
            ok &= sizes == [1, 2, 3, 3, 6, 6, 6, 6, 6, 6];
            parts.push(format!("6A orbit sizes {sizes:?}"));
        }
    }
    line(6, ok, format!("{}; 4A + family; largest orthogonal set {largest} (no 4-dim associative subalgebra)", parts.join(", ")))
}

fn criterion_7(pipes: &[Pipeline], checks: &[Check]) -> Line {
    let rows: Vec<&Check> = checks.iter().filter(|c| c.claim.starts_with("(d, N_x) of") || c.claim.starts_with("every orbit with d(x)")).collect();
    let mut ok = rows.iter().all(|c| c.status != Status::Fail) && rows.len() > 2;
    let mut saturated = 0;
    let mut total = 0;
    for p in pipes.iter().filter(|p| matches!(p.entry.tag, NsType::B4 | NsType::A6)) {
        for r in counting_lemma_check(&p.assoc).unwrap() {
            total += 1;
            saturated += usize::from(r.saturated());
        }
    }
    ok &= saturated == total && total > 0;
    line(7, ok, format!("{} table checks ({} via documented readings); N_x = 2^(d−1) − 1 at {saturated}/{total} idempotents with d ≥ 2 in 4B and 6A", rows.len(), findings(&rows)))
}

fn criterion_8() -> Line {
    let l4 = build(NsType::B4).unwrap().identity().length();
    let l6 = build(NsType::A6).unwrap().identity().length();
    let ok = l4 == Scalar::frac(19, 5) && l6 == Scalar::frac(51, 10);
    line(8, ok, format!("l(id_4B) = {l4}, l(id_6A) = {l6} (exact)"))
}

fn random_element(rng: &mut ChaCha8Rng, e: &ns_core::catalog::CatalogEntry) -> Element {
    let v = (0..e.n()).map(|_| Scalar::frac(rng.gen_range(-12..=12), rng.gen_range(1..=8))).collect();
    e.spec().element(v).unwrap()
}

fn criterion_9(pipes: &[Pipeline]) -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(reference_seed());
    let mut ok = true;
    let (mut pairs, mut equalities) = (0, 0);
    for p in pipes {
        let e = &p.entry;
        let id = e.identity();
        for k in 0..NORTON_PAIRS {
            let u = random_element(&mut rng, e);
            // every eighth pair lies in span(u, id), where equality holds
            let v = if k % 8 == 0 {
                u.scale(&Scalar::frac(rng.gen_range(-6..=6), 3)).try_add(&id.scale(&Scalar::frac(rng.gen_range(-6..=6), 5))).unwrap()
            } else {
                random_element(&mut rng, e)
            };
            let r = u.check_norton(&v).unwrap();
            ok &= r.consistent();
            pairs += 1;
            equalities += usize::from(r.equality);
        }
    }
    let norton_ok = ok;

    // (i) (x, y) = 0  ⇔  (ii) x·y = 0  ⇔  (iii) x + y idempotent
    let mut orth_pairs = 0;
    let mut orth_ok = true;
    for p in pipes {
        let id = p.entry.identity();
        let xs: Vec<&Element> = p.set.records.iter().map(|r| &r.element).filter(|x| !x.is_zero()).collect();
        for (i, x) in xs.iter().enumerate() {
            for y in &xs[i + 1..] {
                orth_pairs += 1;
                let inner = x.inner(y).unwrap().certify_sign();
                if x.is_exact() && y.is_exact() {
                    let b = x.product(y).unwrap().is_zero();
                    let c = x.try_add(y).unwrap().is_idempotent() == Idempotency::ExactTrue;
                    orth_ok &= (inner == Sign::Zero) == b && b == c;
                } else if inner == Sign::Undecided {
                    orth_ok &= same_point(y, &id.try_sub(x).unwrap());
                } else {
                    let nonzero = |z: &Element| z.coeffs().iter().any(|c| matches!(c.certify_sign(), Sign::Positive | Sign::Negative));
                    orth_ok &= nonzero(&x.product(y).unwrap()) && nonzero(&x.try_add(y).unwrap().idempotency_residual());
                }
            }
        }
    }

    let mut comp_ok = true;
    let mut orbit_ok = true;
    let mut records = 0;
    for p in pipes {
        let id = p.entry.identity();
        for r in &p.set.records {
            records += 1;
            let c = p.set.index_of(&id.try_sub(&r.element).unwrap());
            comp_ok &= c.is_some_and(|c| complement_matches(&r.spectrum, &p.set.records[c].spectrum));
        }
        for (_, g) in generators(&p.entry).unwrap() {
            for r in &p.set.records {
                orbit_ok &= same_multiset(&r.spectrum, &spectrum(&g.apply(&r.element).unwrap()).unwrap());
            }
        }
    }
    let ok = norton_ok && orth_ok && comp_ok && orbit_ok;
    line(
        9,
        ok,
        format!(
            "M2′ on {pairs} pairs ({equalities} equality cases, all with commuting adjoints): {norton_ok}; orthogonality (i)⇔(ii)⇔(iii) on {orth_pairs} pairs: {orth_ok}; complement law on {records} records: {comp_ok}; spectra constant on orbits: {orbit_ok}"
        ),
    )
}

fn same_multiset(a: &SpectrumReport, b: &SpectrumReport) -> bool {
    let mut rest = b.multiset();
    let all = a.multiset().iter().all(|x| match rest.iter().position(|y| y.approx_eq(x)) {
        Some(p) => {
            rest.swap_remove(p);
            true
        }
        None => false,
    });
    all && rest.is_empty()
}

fn reference_seed() -> u64 {
    ns_core::idempotent::search::DEFAULT_SEED
}

#[test]
fn acceptance() {
    let (l1, l2) = criterion_1_2();

    let cfg = SearchConfig::default();
    let mut pipes = Vec::new();
    let mut t6a = Duration::ZERO;
    for t in NsType::ALL {
        let start = Instant::now();
        pipes.push(run(t, "multistart-newton", "bron-kerbosch", &cfg).unwrap());
        if t == NsType::A6 {
            t6a = start.elapsed();
        }
    }
    let checks: Vec<Check> = pipes.iter().flat_map(|p| verify(p).unwrap()).collect();

    let lines = [
        l1,
        l2,
        criterion_3(&pipes, t6a),
        criterion_4(&pipes, &checks),
        criterion_5(&pipes, &checks),
        criterion_6(&pipes),
        criterion_7(&pipes, &checks),
        criterion_8(),
        criterion_9(&pipes),
    ];
    for l in &lines {
        println!("{}", l.text);
    }
    let failed: Vec<&str> = lines.iter().filter(|l| !l.ok).map(|l| l.text.as_str()).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}
