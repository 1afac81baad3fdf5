//! Maximal associative subalgebras.
//!
//! An associative subalgebra has a basis of pairwise orthogonal idempotents;
//! it is maximal exactly when these are indecomposable and sum to the
//! identity. Maximal sets are therefore maximal cliques of the orthogonality
//! graph on indecomposable idempotents, filtered by the exact sum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::Element;
use crate::automorphism::{same_point, Automorphism};
use crate::catalog::{CatalogEntry, NsType};
use crate::error::{Error, Result};
use crate::idempotent::family::{exceptional_lambdas, family_4a, family_4a_conjugate_branch};
use crate::idempotent::IdempotentSet;
use crate::scalar::{Scalar, Sign};
use crate::spectral::spectrum;

/// A nonzero, non-identity idempotent taking part in the orthogonality graph.
#[derive(Debug, Clone)]
pub struct Vertex {
    pub element: Element,
    pub name: Option<String>,
    pub d: usize,
    pub mult1: usize,
    pub length: Scalar,
    /// Index in the idempotent records, or `None` for a family member.
    pub record: Option<usize>,
    /// Family parameter for members of the 4A curve.
    pub lambda: Option<Scalar>,
}

impl Vertex {
    pub fn indecomposable(&self) -> bool {
        self.mult1 == 1
    }

    pub fn label(&self) -> String {
        match (&self.name, &self.lambda) {
            (Some(n), _) => n.clone(),
            (None, Some(l)) => format!("y(λ = {l})"),
            (None, None) => crate::idempotent::stable_id(&self.element),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    pub adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().enumerate().filter(|(_, &e)| e).map(|(u, _)| u)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.iter().filter(|&&e| e).count()).sum::<usize>() / 2
    }

    /// The subgraph on `keep` (indices into `self`), with vertices renumbered in order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        Graph { adj: keep.iter().map(|&i| keep.iter().map(|&j| self.adj[i][j]).collect()).collect() }
    }
}

/// Decides `(x, y) = 0`. Exact elements are compared exactly. For balls the
/// inner product must exclude zero, unless `y` is the complement `id − x`,
/// where `(x, id − x) = l(x) − l(x) = 0` holds identically.
fn orthogonal(x: &Element, y: &Element, id: &Element) -> Result<bool> {
    let p = x.inner(y)?;
    match p.certify_sign() {
        Sign::Zero => Ok(true),
        Sign::Positive | Sign::Negative => Ok(false),
        Sign::Undecided => {
            if same_point(y, &id.try_sub(x)?) {
                Ok(true)
            } else {
                Err(Error::Undecided(format!("orthogonality of {x} and {y}")))
            }
        }
    }
}

/// Edge iff the inner product is certified zero; undecided pairs are an error.
pub fn orthogonality_graph(vertices: &[Vertex], id: &Element) -> Result<Graph> {
    let n = vertices.len();
    let rows: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| if i == j { Ok(false) } else { orthogonal(&vertices[i].element, &vertices[j].element, id) }).collect())
        .collect::<Result<_>>()?;
    Ok(Graph { adj: rows })
}

pub trait CliqueEnumerator: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    /// All maximal cliques, each sorted, in lexicographic order.
    fn maximal_cliques(&self, g: &Graph) -> Vec<Vec<usize>>;
}

/// Bron–Kerbosch with pivoting, parallel over the root vertex.
pub struct BronKerbosch;

fn bk(g: &Graph, r: &mut Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
        }
        return;
    }
    let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&v| g.adj[u][v]).count()).unwrap();
    let cand: Vec<usize> = p.iter().copied().filter(|&v| !g.adj[pivot][v]).collect();
    for v in cand {
        r.push(v);
        let np = p.iter().copied().filter(|&u| g.adj[v][u]).collect();
        let nx = x.iter().copied().filter(|&u| g.adj[v][u]).collect();
        bk(g, r, np, nx, out);
        r.pop();
        p.retain(|&u| u != v);
        x.push(v);
    }
}

impl CliqueEnumerator for BronKerbosch {
    fn name(&self) -> &'static str {
        "bron-kerbosch"
    }

    fn describe(&self) -> &'static str {
        "Bron–Kerbosch with pivoting, one task per root vertex"
    }

    fn maximal_cliques(&self, g: &Graph) -> Vec<Vec<usize>> {
        let n = g.len();
        let mut out: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|v| {
                let p = g.neighbours(v).filter(|&u| u > v).collect();
                let x = g.neighbours(v).filter(|&u| u < v).collect();
                let mut found = Vec::new();
                bk(g, &mut vec![v], p, x, &mut found);
                found
            })
            .flatten()
            .collect();
        out.sort();
        out
    }
}

/// Every clique, grown in increasing vertex order; keeps those that cannot be extended.
pub struct Exhaustive;

impl Exhaustive {
    /// All cliques (including singletons), in lexicographic order.
    pub fn all_cliques(g: &Graph) -> Vec<Vec<usize>> {
        fn grow(g: &Graph, c: &mut Vec<usize>, from: usize, out: &mut Vec<Vec<usize>>) {
            for v in from..g.len() {
                if c.iter().all(|&u| g.adj[u][v]) {
                    c.push(v);
                    out.push(c.clone());
                    grow(g, c, v + 1, out);
                    c.pop();
                }
            }
        }
        let mut out = Vec::new();
        grow(g, &mut Vec::new(), 0, &mut out);
        out
    }
}

impl CliqueEnumerator for Exhaustive {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn describe(&self) -> &'static str {
        "enumerate every clique and keep the non-extendable ones"
    }

    fn maximal_cliques(&self, g: &Graph) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Exhaustive::all_cliques(g)
            .into_iter()
            .filter(|c| (0..g.len()).all(|v| c.contains(&v) || !c.iter().all(|&u| g.adj[u][v])))
            .collect();
        out.sort();
        out
    }
}

/// Named clique enumerators; the first registered is the default.
pub struct CliqueRegistry {
    entries: Vec<Box<dyn CliqueEnumerator>>,
}

impl Default for CliqueRegistry {
    fn default() -> Self {
        let mut r = CliqueRegistry { entries: Vec::new() };
        r.register(Box::new(BronKerbosch));
        r.register(Box::new(Exhaustive));
        r
    }
}

impl CliqueRegistry {
    pub fn register(&mut self, e: Box<dyn CliqueEnumerator>) {
        self.entries.retain(|o| o.name() != e.name());
        self.entries.push(e);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CliqueEnumerator> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownStrategy(name.into(), self.names().join(", ")))
    }

    pub fn default_enumerator(&self) -> &dyn CliqueEnumerator {
        self.entries[0].as_ref()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocSubalgebra {
    /// Vertex indices of the orthogonal idempotent basis, sorted.
    pub basis: Vec<usize>,
    pub dim: usize,
    pub is_maximal: bool,
    /// Of the form `{x, id − x}` or smaller.
    pub is_trivial: bool,
    pub orbit_id: usize,
}

/// The trivial maximal subalgebras `⟨⟨y(λ), id − y(λ)⟩⟩` of the 4A family.
#[derive(Debug, Clone)]
pub struct FamilyClass {
    pub lambda_min: Scalar,
    pub lambda_max: Scalar,
    /// Parameters where `y(λ)` has a repeated eigenvalue 0 or 1, with `(d, mult1)`.
    pub excluded: Vec<(Scalar, usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct AssocReport {
    pub type_tag: NsType,
    pub enumerator: String,
    pub vertices: Vec<Vertex>,
    pub graph: Graph,
    pub maximal: Vec<AssocSubalgebra>,
    /// Sizes of the orbits of maximal subalgebras, indexed by `orbit_id`.
    pub orbit_sizes: Vec<usize>,
    pub family: Option<FamilyClass>,
    /// Largest clique in the full orthogonality graph (decomposable vertices included).
    pub max_clique: usize,
}

impl AssocReport {
    pub fn trivial_count(&self) -> usize {
        self.maximal.iter().filter(|s| s.is_trivial).count()
    }

    pub fn nontrivial_count(&self) -> usize {
        self.maximal.iter().filter(|s| !s.is_trivial).count()
    }

    pub fn nontrivial_orbit_sizes(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.maximal.iter().filter(|s| !s.is_trivial).map(|s| s.orbit_id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.iter().map(|&o| self.orbit_sizes[o]).collect()
    }

    pub fn vertex_index(&self, x: &Element) -> Option<usize> {
        self.vertices.iter().position(|v| same_point(&v.element, x))
    }

    pub fn basis_labels(&self, s: &AssocSubalgebra) -> Vec<String> {
        s.basis.iter().map(|&i| self.vertices[i].label()).collect()
    }

    /// Number of three-dimensional maximal subalgebras containing vertex `v`.
    pub fn n_x(&self, v: usize) -> usize {
        self.maximal.iter().filter(|s| s.dim == 3 && s.basis.contains(&v)).count()
    }
}

fn family_vertices(entry: &CatalogEntry) -> Result<Vec<Vertex>> {
    let mut lambdas: Vec<Scalar> = exceptional_lambdas(entry)?.into_iter().map(|(l, _, _)| l).collect();
    lambdas.push(Scalar::frac(-3, 5));
    lambdas.push(Scalar::one());
    let mut out: Vec<Vertex> = Vec::new();
    for l in lambdas {
        for y in [family_4a(entry, &l)?, family_4a_conjugate_branch(entry, &l)?] {
            if out.iter().any(|v| v.element == y) {
                continue;
            }
            let s = spectrum(&y)?;
            out.push(Vertex { length: y.length(), d: s.d, mult1: s.mult1, element: y, name: None, record: None, lambda: Some(l.clone()) });
        }
    }
    Ok(out)
}

/// Vertices: nonzero non-identity records, and for 4A the family members at
/// the exceptional parameters and the endpoints (every other member has
/// `d = 1`, so it lies only in its own trivial subalgebra).
pub fn vertices(entry: &CatalogEntry, set: &IdempotentSet) -> Result<Vec<Vertex>> {
    let id = entry.identity();
    let mut out: Vec<Vertex> = set
        .records
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.element.is_zero() && !same_point(&r.element, &id))
        .map(|(i, r)| Vertex {
            element: r.element.clone(),
            name: r.name.clone(),
            d: r.d,
            mult1: r.mult1,
            length: r.length.clone(),
            record: Some(i),
            lambda: None,
        })
        .collect();
    if set.family.is_some() {
        out.extend(family_vertices(entry)?);
    }
    Ok(out)
}

fn locate(vertices: &[Vertex], y: &Element) -> Result<usize> {
    vertices
        .iter()
        .position(|v| same_point(&v.element, y))
        .ok_or_else(|| Error::Contradiction(format!("image {y} is not a vertex")))
}

fn sum_is_identity(vertices: &[Vertex], c: &[usize], id: &Element) -> Result<bool> {
    let mut s = vertices[c[0]].element.clone();
    for &i in &c[1..] {
        s = s.try_add(&vertices[i].element)?;
    }
    let diff = s.try_sub(id)?;
    if diff.is_exact() {
        return Ok(diff.is_zero());
    }
    Ok(diff.coeffs().iter().all(|c| c.to_interval().contains(0.0)))
}

/// Assigns orbit ids to `subs` under `group`.
fn subalgebra_orbits(group: &[Automorphism], vertices: &[Vertex], subs: &mut [AssocSubalgebra]) -> Result<Vec<usize>> {
    let images: Vec<Vec<Vec<usize>>> = subs
        .par_iter()
        .map(|s| {
            group
                .iter()
                .map(|g| {
                    let mut b = s.basis.iter().map(|&i| locate(vertices, &g.apply(&vertices[i].element)?)).collect::<Result<Vec<_>>>()?;
                    b.sort_unstable();
                    Ok(b)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut sizes = Vec::new();
    let mut assigned = vec![usize::MAX; subs.len()];
    for i in 0..subs.len() {
        if assigned[i] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut count = 0;
        for img in &images[i] {
            let j = subs.iter().position(|s| &s.basis == img).ok_or_else(|| Error::Contradiction("image of a maximal subalgebra is not maximal".into()))?;
            if assigned[j] == usize::MAX {
                assigned[j] = id;
                count += 1;
            }
        }
        sizes.push(count);
    }
    for (s, a) in subs.iter_mut().zip(assigned) {
        s.orbit_id = a;
    }
    Ok(sizes)
}

/// All maximal associative subalgebras, with orbits under the automorphism group.
pub fn enumerate_maximal(entry: &CatalogEntry, set: &IdempotentSet, enumerator: &str) -> Result<AssocReport> {
    let registry = CliqueRegistry::default();
    let en = registry.get(enumerator)?;
    let id = entry.identity();
    let verts = vertices(entry, set)?;
    let graph = orthogonality_graph(&verts, &id)?;

    let indec: Vec<usize> = (0..verts.len()).filter(|&i| verts[i].indecomposable()).collect();
    let sub = graph.induced(&indec);
    let mut maximal = Vec::new();
    for c in en.maximal_cliques(&sub) {
        let c: Vec<usize> = c.iter().map(|&i| indec[i]).collect();
        if sum_is_identity(&verts, &c, &id)? {
            maximal.push(AssocSubalgebra { dim: c.len(), is_maximal: true, is_trivial: c.len() <= 2, basis: c, orbit_id: 0 });
        }
    }
    maximal.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.basis.cmp(&b.basis)));
    let orbit_sizes = subalgebra_orbits(&set.group, &verts, &mut maximal)?;

    let max_clique = Exhaustive::all_cliques(&graph).iter().map(Vec::len).max().unwrap_or(0);
    let family = set.family.as_ref().map(|f| FamilyClass { lambda_min: f.lambda_min.clone(), lambda_max: f.lambda_max.clone(), excluded: f.exceptional.clone() });
    Ok(AssocReport {
        type_tag: entry.tag,
        enumerator: en.name().into(),
        vertices: verts,
        graph,
        maximal,
        orbit_sizes,
        family,
        max_clique,
    })
}

/// Length route and clique route to "no associative subalgebra of dimension ≥ 4".
#[derive(Debug, Clone)]
pub struct DimensionBound {
    pub type_tag: NsType,
    pub identity_length: Scalar,
    /// Largest `d(x)` over the vertices (4A: the `d ≤ 2` route).
    pub max_d: usize,
    /// Smallest length different from 1 among the vertices.
    pub min_non_axis_length: Option<Scalar>,
    /// Two orthogonal vertices of length 1 exist.
    pub orthogonal_unit_pair: bool,
    /// `1 + 3·min_non_axis_length > l(id)` and no orthogonal pair of length-1 idempotents.
    pub length_route: bool,
    /// Largest clique in the orthogonality graph, by exhaustive search.
    pub max_clique: usize,
}

impl DimensionBound {
    pub fn holds(&self) -> bool {
        self.max_clique <= 3
    }
}

pub fn dimension_bound_check(entry: &CatalogEntry, report: &AssocReport) -> Result<DimensionBound> {
    let one = Scalar::one();
    let v = &report.vertices;
    let min_len = v
        .iter()
        .map(|x| &x.length)
        .filter(|l| !(l.is_exact() && l.is_one()))
        .min_by(|a, b| a.to_f64().total_cmp(&b.to_f64()))
        .cloned();
    let unit: Vec<usize> = (0..v.len()).filter(|&i| v[i].length.is_exact() && v[i].length.is_one()).collect();
    let pair = unit.iter().any(|&i| unit.iter().any(|&j| report.graph.adj[i][j]));
    let idl = entry.identity().length();
    let length_route = match &min_len {
        Some(m) => !pair && (&(&one + &(&Scalar::int(3) * m)) - &idl).certify_sign() == Sign::Positive,
        None => false,
    };
    Ok(DimensionBound {
        type_tag: entry.tag,
        identity_length: idl,
        max_d: v.iter().map(|x| x.d).max().unwrap_or(0),
        min_non_axis_length: min_len,
        orthogonal_unit_pair: pair,
        length_route,
        max_clique: report.max_clique,
    })
}

#[derive(Debug, Clone)]
pub struct CountingRow {
    pub vertex: usize,
    pub label: String,
    pub d: usize,
    pub n_x: usize,
    pub bound: usize,
}

impl CountingRow {
    pub fn saturated(&self) -> bool {
        self.n_x == self.bound
    }
}

/// `N_x ≤ 2^{d(x)−1} − 1` for every vertex with `d(x) ≥ 2`; vertices with
/// `d(x) = 1` must lie in no three-dimensional basis.
pub fn counting_lemma_check(report: &AssocReport) -> Result<Vec<CountingRow>> {
    let mut rows = Vec::new();
    for (i, v) in report.vertices.iter().enumerate() {
        let n = report.n_x(i);
        if v.d <= 1 {
            if n != 0 {
                return Err(Error::Contradiction(format!("{} has d = 1 but lies in {n} three-dimensional bases", v.label())));
            }
            continue;
        }
        let bound = (1usize << (v.d - 1)) - 1;
        if n > bound {
            return Err(Error::Contradiction(format!("N_x = {n} exceeds 2^(d−1) − 1 = {bound} at {}", v.label())));
        }
        rows.push(CountingRow { vertex: i, label: v.label(), d: v.d, n_x: n, bound });
    }
    Ok(rows)
}

/// `(u·v)·w = u·(v·w)` for random rational combinations of each basis.
pub fn check_associativity(report: &AssocReport, samples: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in &report.maximal {
        for _ in 0..samples {
            let mut comb = || -> Result<Element> {
                let mut acc: Option<Element> = None;
                for &i in &s.basis {
                    let c = Scalar::frac(rng.gen_range(-9..=9), rng.gen_range(1..=7));
                    let t = report.vertices[i].element.scale(&c);
                    acc = Some(match acc {
                        None => t,
                        Some(a) => a.try_add(&t)?,
                    });
                }
                Ok(acc.unwrap())
            };
            let (u, v, w) = (comb()?, comb()?, comb()?);
            let diff = u.product(&v)?.product(&w)?.try_sub(&u.product(&v.product(&w)?)?)?;
            let ok = if diff.is_exact() { diff.is_zero() } else { diff.coeffs().iter().all(|c| c.to_interval().contains(0.0)) };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// No vertex outside a maximal subalgebra is orthogonal to its whole basis.
pub fn check_maximality(report: &AssocReport) -> bool {
    report.maximal.iter().all(|s| {
        (0..report.vertices.len()).all(|v| s.basis.contains(&v) || !s.basis.iter().all(|&b| report.graph.adj[b][v]))
    })
}
