//! Idempotents: closed forms, numerical search, certification.
//!
//! [`enumerate`] runs a registered search strategy, splits off points of a
//! positive-dimensional family, closes the isolated roots under the
//! automorphism group and complementation, certifies each root by Krawczyk,
//! recognises exact roots, and attaches spectra, orbits and names.

pub mod exactify;
pub mod family;
pub mod known;
pub mod krawczyk;
pub mod newton;
pub mod search;

use rayon::prelude::*;

use crate::algebra::{Element, Idempotency};
use crate::automorphism::{group_elements, orbits, same_point, Automorphism, OrbitPartition};
use crate::catalog::{CatalogEntry, NsType};
use crate::error::{Error, Result};
use crate::scalar::{Interval, Scalar};
use crate::spectral::{spectrum, SpectrumReport};
use family::{describe_family, detect_family, on_family, FamilyDescriptor};
use known::{known_idempotents, named_elements, Discrepancy, Named};
use search::{Candidate, SearchConfig, SearchRegistry};

/// Krawczyk radii tried in order.
pub const CERT_RADII: [f64; 4] = [1e-12, 1e-10, 1e-8, 1e-6];
/// Distance under which a singular root counts as a point of the family.
pub const FAMILY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Returned by the search strategy.
    Search,
    /// Image of a found root under an automorphism or complementation.
    Closure,
    /// A known idempotent the search missed (listed in [`IdempotentSet::missed_known`]).
    Known,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certification {
    /// Exact coordinates; `x·x = x` checked in exact arithmetic.
    Exact,
    /// Krawczyk-certified unique root in the max-norm ball of this radius.
    Interval { radius: f64 },
}

#[derive(Debug, Clone)]
pub struct IdempotentRecord {
    pub element: Element,
    pub certification: Certification,
    pub length: Scalar,
    pub spectrum: SpectrumReport,
    pub d: usize,
    pub mult1: usize,
    pub indecomposable: bool,
    pub orbit_id: usize,
    pub name: Option<String>,
    pub source: Source,
}

#[derive(Debug, Clone)]
pub struct IdempotentSet {
    pub type_tag: NsType,
    pub strategy: String,
    pub records: Vec<IdempotentRecord>,
    pub orbits: OrbitPartition,
    pub family: Option<FamilyDescriptor>,
    /// Singular roots not on a recognised family (expected empty).
    pub unresolved: Vec<Vec<f64>>,
    /// Known idempotents the search did not reach (expected empty).
    pub missed_known: Vec<Element>,
    pub discrepancies: Vec<Discrepancy>,
    pub group: Vec<Automorphism>,
}

impl IdempotentRecord {
    /// Published name when the record matches one, otherwise [`stable_id`].
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| stable_id(&self.element))
    }
}

impl IdempotentSet {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn elements(&self) -> Vec<Element> {
        self.records.iter().map(|r| r.element.clone()).collect()
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.records.iter().position(|r| same_point(&r.element, x))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &IdempotentRecord)> {
        self.records.iter().enumerate().filter(|(_, r)| !r.element.is_zero())
    }
}

fn group_f64(group: &[Automorphism]) -> Vec<nalgebra::DMatrix<f64>> {
    group.iter().map(|g| g.matrix.to_f64()).collect()
}

/// Adds `g·x` and `id − g·x` for every group element and root.
fn close_under_symmetry(roots: &mut Vec<(Candidate, Source)>, group: &[nalgebra::DMatrix<f64>], id: &[f64], tol: f64) {
    let mut i = 0;
    while i < roots.len() {
        let x = nalgebra::DVector::from_column_slice(&roots[i].0.x);
        for g in group {
            let y: Vec<f64> = (g * &x).iter().copied().collect();
            let z: Vec<f64> = id.iter().zip(&y).map(|(a, b)| a - b).collect();
            for v in [y, z] {
                let c = Candidate { x: v, singular: false, sigma_min: roots[i].0.sigma_min };
                if !roots.iter().any(|(o, _)| o.x.iter().zip(&c.x).all(|(a, b)| (a - b).abs() <= tol)) {
                    roots.push((c, Source::Closure));
                }
            }
        }
        i += 1;
    }
}

/// Certifies a root, returning the Krawczyk data and the radius of the box
/// that was proven to contain exactly one idempotent.
fn certify_root(spec: &crate::algebra::AlgebraSpec, x: &[f64]) -> Result<(krawczyk::CertifiedBall, f64)> {
    // a few undamped-tolerance Newton steps move ill-conditioned roots onto the root
    let polished = newton::newton_search(spec, x, 20, 0.0);
    let x = polished.root().unwrap_or(x);
    let mut last = None;
    for r in CERT_RADII {
        match krawczyk::certify(spec, x, r) {
            Ok(b) => return Ok((b, r)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

/// Stable identifier of an unnamed idempotent: FNV-1a of its center rounded
/// to 8 decimals, so that it survives reruns and certification radii.
pub fn stable_id(x: &Element) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for c in x.to_f64() {
        // `+ 0.0` folds −0 into 0
        for b in format!("{:.8};", c + 0.0).bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("x_{:08x}", h >> 32)
}

fn name_of(entry: &CatalogEntry, x: &Element, id: &Element, names: &[Named]) -> Option<String> {
    if x.is_zero() {
        return Some("0".into());
    }
    if same_point(x, id) {
        return Some("id".into());
    }
    let spec = entry.spec();
    for &a in &entry.majorana_axes {
        if same_point(x, &spec.basis(a)) {
            return Some(spec.label(a).to_string());
        }
    }
    for n in names {
        if same_point(x, &n.element) {
            return Some(n.display.clone());
        }
    }
    for n in names {
        if let Ok(c) = id.try_sub(&n.element) {
            if same_point(x, &c) {
                return Some(format!("id − {}", n.display));
            }
        }
    }
    None
}

fn sort_key(x: &Element) -> (f64, Vec<f64>) {
    (x.length().to_f64(), x.to_f64())
}

/// Finds, certifies and classifies all idempotents of `entry`.
pub fn enumerate(entry: &CatalogEntry, strategy: &str, cfg: &SearchConfig) -> Result<IdempotentSet> {
    let registry = SearchRegistry::default();
    let strat = registry.get(strategy)?;
    let spec = entry.spec();
    let group = group_elements(entry)?;
    let id = entry.identity();
    let id_f = id.to_f64();

    let candidates = strat.search(spec, cfg)?;

    // family points versus isolated roots
    let mut roots: Vec<(Candidate, Source)> = Vec::new();
    let mut family_points: Vec<Vec<f64>> = Vec::new();
    let mut unresolved = Vec::new();
    for c in candidates {
        // near the curve σ_min decays slowly, so membership is tested first
        if on_family(entry, &c.x, FAMILY_TOL) {
            family_points.push(c.x);
        } else if c.singular {
            unresolved.push(c.x);
        } else {
            roots.push((c, Source::Search));
        }
    }
    close_under_symmetry(&mut roots, &group_f64(&group), &id_f, cfg.dedup_tol);

    // certification, then disjointness of the certified boxes
    let certified: Vec<(krawczyk::CertifiedBall, f64)> = roots.par_iter().map(|(c, _)| certify_root(spec, &c.x)).collect::<Result<_>>()?;
    let balls: Vec<&krawczyk::CertifiedBall> = certified.iter().map(|(b, _)| b).collect();
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            let overlap = balls[i].enclosure.iter().zip(&balls[j].enclosure).all(|(a, b): (&Interval, &Interval)| a.intersects(b));
            if overlap {
                return Err(Error::Certification(format!("certified boxes {i} and {j} overlap")));
            }
        }
    }

    // exact recognition; the rest become certified boxes
    let xs: Vec<Vec<f64>> = balls.iter().map(|b| b.center.clone()).collect();
    let exact = exactify::exactify_all(spec, &xs);
    let mut found: Vec<(Element, Certification, Source)> = Vec::with_capacity(roots.len());
    for ((ex, (ball, r)), (_, src)) in exact.into_iter().zip(&certified).zip(&roots) {
        let (e, cert) = match ex {
            Some(e) => (e, Certification::Exact),
            None => {
                // the box, not the tight enclosure, is what Krawczyk re-certifies
                let coeffs = ball.center.iter().map(|&m| Scalar::ball(m, *r)).collect();
                (spec.element(coeffs)?, Certification::Interval { radius: *r })
            }
        };
        found.push((e, cert, *src));
    }

    // every known isolated idempotent must have been reached
    let mut missed_known = Vec::new();
    for k in known_idempotents(entry, &group)? {
        if on_family(entry, &k.to_f64(), FAMILY_TOL) {
            continue;
        }
        if !found.iter().any(|(e, _, _)| same_point(e, &k)) {
            let cert = if k.is_idempotent() == Idempotency::ExactTrue {
                Certification::Exact
            } else {
                Certification::Interval { radius: known::BALL_RADIUS }
            };
            missed_known.push(k.clone());
            found.push((k, cert, Source::Known));
        }
    }

    found.sort_by(|a, b| {
        let (la, xa) = sort_key(&a.0);
        let (lb, xb) = sort_key(&b.0);
        la.total_cmp(&lb).then_with(|| xa.iter().zip(&xb).map(|(p, q)| p.total_cmp(q)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal))
    });

    let spectra: Vec<SpectrumReport> = found.par_iter().map(|(e, _, _)| spectrum(e)).collect::<Result<_>>()?;
    let elements: Vec<Element> = found.iter().map(|(e, _, _)| e.clone()).collect();
    let partition = orbits(&group, &elements)?;
    let (names, discrepancies) = named_elements(entry)?;

    let records = found
        .into_iter()
        .zip(spectra)
        .enumerate()
        .map(|(i, ((element, certification, source), s))| IdempotentRecord {
            length: element.length(),
            d: s.d,
            mult1: s.mult1,
            indecomposable: s.mult1 == 1,
            orbit_id: partition.class_of[i],
            name: name_of(entry, &element, &id, &names),
            spectrum: s,
            element,
            certification,
            source,
        })
        .collect();

    let family = match family_points.first() {
        Some(p) => {
            let trace = detect_family(spec, p).ok_or_else(|| Error::Certification("singular root does not continue to a curve".into()))?;
            Some(describe_family(entry, &trace)?)
        }
        None => None,
    };

    Ok(IdempotentSet {
        type_tag: entry.tag,
        strategy: strat.name().into(),
        records,
        orbits: partition,
        family,
        unresolved,
        missed_known,
        discrepancies,
        group,
    })
}

/// The closed forms of `entry` as floating starts.
pub fn closed_form_seeds(entry: &CatalogEntry) -> Result<Vec<Vec<f64>>> {
    let (names, _) = named_elements(entry)?;
    Ok(names.iter().filter(|n| n.published).map(|n| n.element.to_f64()).collect())
}
