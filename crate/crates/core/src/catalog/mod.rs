//! The eight Norton–Sakuma algebras, built from their published structure
//! constants and completed by symmetry.

pub mod complete;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::expr::{canonical_label, parse, parse_vector, BasisContext};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub use complete::check_automorphism;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NsType {
    A2,
    B2,
    A3,
    C3,
    A4,
    B4,
    A5,
    A6,
}

impl NsType {
    pub const ALL: [NsType; 8] =
        [NsType::A2, NsType::B2, NsType::A3, NsType::C3, NsType::A4, NsType::B4, NsType::A5, NsType::A6];

    pub fn as_str(&self) -> &'static str {
        match self {
            NsType::A2 => "2A",
            NsType::B2 => "2B",
            NsType::A3 => "3A",
            NsType::C3 => "3C",
            NsType::A4 => "4A",
            NsType::B4 => "4B",
            NsType::A5 => "5A",
            NsType::A6 => "6A",
        }
    }

    /// Order `N` of the rotation `ρ = tg`.
    pub fn order(&self) -> usize {
        self.as_str()[..1].parse().unwrap()
    }
}

impl fmt::Display for NsType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NsType {
    type Err = Error;
    fn from_str(s: &str) -> Result<NsType> {
        NsType::ALL
            .iter()
            .copied()
            .find(|t| t.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownType(s.to_string()))
    }
}

/// How a generator acts on the permuted basis vectors.
enum GenData {
    /// `a_{g_i} ↦ a_{g_{m·i + c}}` on axes.
    Affine(i64, i64),
    /// Images of the support vectors, in support order.
    Images(&'static [&'static str]),
}

struct TypeData {
    extras: &'static [&'static str],
    /// Extras that are Majorana axes of a subalgebra (length 1 idempotents).
    axis_extras: &'static [&'static str],
    /// Extras whose images are given together with the axes.
    permuted_extras: &'static [&'static str],
    generators: &'static [(&'static str, GenData)],
    products: &'static [(&'static str, &'static str, &'static str)],
    inner: &'static [(&'static str, &'static str, &'static str)],
    embeddings: &'static [(NsType, &'static [&'static str])],
}

/// Corrections applied to the printed table, each one recorded with the reason.
pub const ERRATA: &[(&str, &str, &str)] = &[
    (
        "5A",
        "a_t·a_{g_2} contains the label a_{g_1}",
        "a_{g_1} is not a basis vector; read as a_g (the rotation of the a_t·a_g row)",
    ),
    ("6A", "a_{f^3}·u_{ρ²} = 0", "a_{f^3} is not a basis vector; read as a_{ρ³}"),
];

fn data(t: NsType) -> TypeData {
    const T: (&str, GenData) = ("φ(t)", GenData::Affine(-1, 0));
    const G: (&str, GenData) = ("φ(g)", GenData::Affine(-1, 2));
    match t {
        NsType::A2 => TypeData {
            extras: &["a_r"],
            axis_extras: &["a_r"],
            permuted_extras: &["a_r"],
            generators: &[
                ("(a_t,a_g)", GenData::Images(&["a_g", "a_t", "a_r"])),
                ("(a_t,a_ρ)", GenData::Images(&["a_r", "a_g", "a_t"])),
            ],
            products: &[("a_t", "a_g", "1/2^3*(a_t + a_g - a_r)"), ("a_t", "a_r", "1/2^3*(a_t + a_r - a_g)")],
            inner: &[("a_t", "a_g", "1/2^3"), ("a_t", "a_r", "1/2^3"), ("a_g", "a_r", "1/2^3")],
            embeddings: &[],
        },
        NsType::B2 => TypeData {
            extras: &[],
            axis_extras: &[],
            permuted_extras: &[],
            generators: &[("(a_t,a_g)", GenData::Affine(-1, 1))],
            products: &[("a_t", "a_g", "0")],
            inner: &[("a_t", "a_g", "0")],
            embeddings: &[],
        },
        NsType::A3 => TypeData {
            extras: &["u_r"],
            axis_extras: &[],
            permuted_extras: &[],
            generators: &[T, G],
            products: &[
                ("a_t", "a_g", "1/2^5*(2*a_t + 2*a_g + a_gm1) - 3^3*5/2^11*u_r"),
                ("a_t", "u_r", "1/3^2*(2*a_t - a_g - a_gm1) + 5/2^5*u_r"),
                ("u_r", "u_r", "u_r"),
            ],
            inner: &[("a_t", "a_g", "13/2^8"), ("a_t", "u_r", "1/2^2"), ("u_r", "u_r", "2^3/5")],
            embeddings: &[],
        },
        NsType::C3 => TypeData {
            extras: &[],
            axis_extras: &[],
            permuted_extras: &[],
            generators: &[T, G],
            products: &[("a_t", "a_g", "1/2^6*(a_t + a_g - a_gm1)")],
            inner: &[("a_t", "a_g", "1/2^6")],
            embeddings: &[],
        },
        NsType::A4 => TypeData {
            extras: &["v_r"],
            axis_extras: &[],
            permuted_extras: &[],
            generators: &[T, ("φ_4A", GenData::Affine(-1, 1))],
            products: &[
                ("a_t", "a_g", "1/2^6*(3*a_t + 3*a_g + a_g2 + a_gm1 - 3*v_r)"),
                ("a_t", "v_r", "1/2^4*(5*a_t - 2*a_g - a_g2 - 2*a_gm1 + 3*v_r)"),
                ("v_r", "v_r", "v_r"),
                ("a_t", "a_g2", "0"),
            ],
            inner: &[("a_t", "a_g", "1/2^5"), ("a_t", "a_g2", "0"), ("a_t", "v_r", "3/2^3"), ("v_r", "v_r", "2")],
            embeddings: &[(NsType::B2, &["a_t", "a_g2"])],
        },
        NsType::B4 => TypeData {
            extras: &["a_r2"],
            axis_extras: &["a_r2"],
            permuted_extras: &[],
            generators: &[T, ("φ_4B", GenData::Affine(-1, 1))],
            products: &[
                ("a_t", "a_g", "1/2^6*(a_t + a_g - a_gm1 - a_g2 + a_r2)"),
                ("a_t", "a_g2", "1/2^3*(a_t + a_g2 - a_r2)"),
            ],
            inner: &[("a_t", "a_g", "1/2^6"), ("a_t", "a_g2", "1/2^3"), ("a_t", "a_r2", "1/2^3")],
            embeddings: &[(NsType::A2, &["a_t", "a_g2", "a_r2"])],
        },
        NsType::A5 => TypeData {
            extras: &["w_r"],
            axis_extras: &[],
            permuted_extras: &[],
            generators: &[T, G, ("φ_5A", GenData::Affine(2, 0))],
            products: &[
                ("a_t", "a_g", "1/2^7*(3*a_t + 3*a_g - a_g2 - a_gm1 - a_gm2) + w_r"),
                // erratum: printed with a_{g_1}
                ("a_t", "a_g2", "1/2^7*(3*a_t + 3*a_g2 - a_g - a_gm1 - a_gm2) - w_r"),
                ("a_t", "w_r", "7/2^12*(a_g + a_gm1 - a_g2 - a_gm2) + 7/2^5*w_r"),
                ("w_r", "w_r", "5^2*7/2^19*(a_gm2 + a_gm1 + a_t + a_g + a_g2)"),
            ],
            inner: &[("a_t", "a_g", "3/2^7"), ("a_t", "w_r", "0"), ("w_r", "w_r", "5^3*7/2^19")],
            embeddings: &[],
        },
        NsType::A6 => TypeData {
            extras: &["a_r3", "u_r2"],
            axis_extras: &["a_r3"],
            permuted_extras: &[],
            generators: &[T, ("φ_6A", GenData::Affine(-1, 1))],
            products: &[
                ("a_t", "a_g", "1/2^6*(a_t + a_g - a_gm2 - a_gm1 - a_g2 - a_g3 + a_r3) + 3^2*5/2^11*u_r2"),
                ("a_t", "a_g2", "1/2^5*(2*a_t + 2*a_g2 + a_gm2) - 3^3*5/2^11*u_r2"),
                ("a_t", "u_r2", "1/3^2*(2*a_t - a_g2 - a_gm2) + 5/2^5*u_r2"),
                ("a_t", "a_g3", "1/2^3*(a_t + a_g3 - a_r3)"),
                // erratum: printed as a_{f^3}
                ("a_r3", "u_r2", "0"),
            ],
            inner: &[("a_t", "a_g", "5/2^8"), ("a_t", "a_g2", "13/2^8"), ("a_t", "a_g3", "1/2^3"), ("a_r3", "u_r2", "0")],
            embeddings: &[(NsType::A2, &["a_t", "a_g3", "a_r3"]), (NsType::A3, &["a_t", "a_g2", "a_gm2", "u_r2"])],
        },
    }
}

const AXIS_LABELS: [&str; 6] = ["a_t", "a_g", "a_{g_{-1}}", "a_{g_2}", "a_{g_{-2}}", "a_{g_3}"];

/// Residues `i mod N` of the axes `a_{g_i}` in basis order: 0, 1, −1, 2, −2, 3.
pub fn axis_residues(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for k in 0..6i64 {
        let i = if k == 0 { 0 } else if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) };
        let r = i.rem_euclid(n as i64) as usize;
        if !out.contains(&r) {
            out.push(r);
        }
        if out.len() == n {
            break;
        }
    }
    out
}

/// A reusable embedding of a smaller Norton–Sakuma algebra.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub subtype: NsType,
    /// `injection[k]` is the entry basis index of the `k`-th sub basis vector.
    pub injection: Vec<usize>,
}

/// A named automorphism generator together with its derived matrix.
#[derive(Debug, Clone)]
pub struct Generator {
    pub name: String,
    pub matrix: Matrix,
}

#[derive(Debug)]
pub struct CatalogEntry {
    pub tag: NsType,
    spec: Arc<AlgebraSpec>,
    /// Basis indices of the axes `a_{g_i}`.
    pub axes: Vec<usize>,
    /// `axis_residue[k]` is `i mod N` for `axes[k]`.
    pub axis_residue: Vec<usize>,
    /// Non-axis basis vectors.
    pub extra: Vec<usize>,
    /// Basis indices that are Majorana axes (the `a_{g_i}` and any `a_{ρ^k}`).
    pub majorana_axes: Vec<usize>,
    pub n_dihedral: usize,
    pub embeddings: Vec<Embedding>,
    pub generators: Vec<Generator>,
    /// Every automorphism produced by the completion (identity first).
    pub group: Vec<Matrix>,
    /// Basis vectors whose group images are prescribed as a permutation.
    pub support: Vec<usize>,
    pub branches_explored: usize,
}

impl CatalogEntry {
    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.dim()
    }

    pub fn basis(&self, label: &str) -> Result<Element> {
        let canon = canonical_label(label).unwrap_or(label);
        self.spec.basis_by_label(canon)
    }

    pub fn identity(&self) -> Element {
        self.spec.identity().expect("every Norton–Sakuma algebra has an identity")
    }

    /// Parses an expression in basis labels (ASCII aliases allowed).
    pub fn parse(&self, src: &str) -> Result<Element> {
        let ctx = SpecContext { spec: &self.spec };
        self.spec.element(parse_vector(src, &ctx)?)
    }

    /// Maps an element of the embedded subalgebra into this algebra.
    pub fn embed(&self, emb: &Embedding, x: &Element) -> Result<Element> {
        let mut v = vec![Scalar::zero(); self.n()];
        for (k, c) in x.coeffs().iter().enumerate() {
            v[emb.injection[k]] = c.clone();
        }
        self.spec.element(v)
    }
}

/// Expression context over a finished algebra: labels plus the product.
pub struct SpecContext<'a> {
    pub spec: &'a Arc<AlgebraSpec>,
}

impl crate::expr::Context for SpecContext<'_> {
    fn dim(&self) -> usize {
        self.spec.dim()
    }
    fn lookup(&self, name: &str) -> Result<crate::expr::Value> {
        if name == "id" {
            return Ok(crate::expr::Value::Vector(self.spec.identity()?.coeffs().to_vec()));
        }
        BasisContext { labels: self.spec.labels() }.lookup(name)
    }
    fn product(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        Ok(self.spec.product_coeffs(u, v))
    }
}


fn labels_for(t: NsType) -> (Vec<String>, Vec<usize>) {
    let n = t.order();
    let res = axis_residues(n);
    let mut labels: Vec<String> = AXIS_LABELS[..n].iter().map(|s| s.to_string()).collect();
    for e in data(t).extras {
        labels.push(canonical_label(e).expect("known alias").to_string());
    }
    (labels, res)
}

fn index(labels: &[String], alias: &str) -> usize {
    let canon = canonical_label(alias).unwrap_or(alias);
    labels.iter().position(|l| l == canon).unwrap_or_else(|| panic!("label {alias} missing"))
}

/// Builds the seeds (stated data, embeddings, axis facts) for a type.
fn seeds(t: NsType) -> Result<(complete::Seeds, Vec<Embedding>)> {
    let d = data(t);
    let n_dih = t.order();
    let (labels, res) = labels_for(t);
    let n = labels.len();
    let ctx = BasisContext { labels: &labels };
    let axes: Vec<usize> = (0..n_dih).collect();
    let pos_of_res = |r: i64| -> usize {
        let r = r.rem_euclid(n_dih as i64) as usize;
        res.iter().position(|&x| x == r).unwrap()
    };
    let mut support = axes.clone();
    support.extend(d.permuted_extras.iter().map(|e| index(&labels, e)));
    let extras: Vec<usize> = (n_dih..n).filter(|k| !support.contains(k)).collect();
    let mut generators = Vec::new();
    for (_, g) in d.generators {
        let mut p: Vec<usize> = (0..n).collect();
        match g {
            GenData::Affine(m, c) => {
                for (k, &r) in res.iter().enumerate() {
                    p[k] = pos_of_res(m * r as i64 + c);
                }
            }
            GenData::Images(imgs) => {
                for (s, im) in support.iter().zip(imgs.iter()) {
                    p[*s] = index(&labels, im);
                }
            }
        }
        generators.push(p);
    }
    let mut products = Vec::new();
    let mut inner = Vec::new();
    for (a, b, e) in d.products {
        products.push((index(&labels, a), index(&labels, b), parse_vector(e, &ctx)?));
    }
    for (a, b, e) in d.inner {
        inner.push((index(&labels, a), index(&labels, b), parse(e, &ctx)?.into_scalar()?));
    }
    let axis_like: Vec<usize> = axes.iter().copied().chain(d.axis_extras.iter().map(|e| index(&labels, e))).collect();
    for &a in &axis_like {
        let mut v = vec![Scalar::zero(); n];
        v[a] = Scalar::one();
        products.push((a, a, v));
        inner.push((a, a, Scalar::one()));
    }
    let mut embeddings = Vec::new();
    for (sub, imgs) in d.embeddings {
        let sub_entry = build(*sub)?;
        let injection: Vec<usize> = imgs.iter().map(|l| index(&labels, l)).collect();
        let ss = sub_entry.spec();
        let m = ss.dim();
        for p in 0..m {
            for q in p..m {
                let mut v = vec![Scalar::zero(); n];
                for (k, c) in ss.basis_product(p, q).iter().enumerate() {
                    v[injection[k]] = c.clone();
                }
                products.push((injection[p], injection[q], v));
                inner.push((injection[p], injection[q], ss.gram()[(p, q)].clone()));
            }
        }
        embeddings.push(Embedding { subtype: *sub, injection });
    }
    Ok((
        complete::Seeds { type_tag: t.to_string(), labels, support, extras, generators, products, inner },
        embeddings,
    ))
}

/// Builds and fully verifies a catalog entry without the cache.
pub fn build_uncached(t: NsType) -> Result<CatalogEntry> {
    let (seeds, embeddings) = seeds(t)?;
    let c = complete::complete(&seeds)?;
    let spec = Arc::new(AlgebraSpec::new(t.as_str(), seeds.labels.clone(), c.table, c.gram)?);
    let d = data(t);
    let n_dih = t.order();
    let gens: Vec<Generator> = d
        .generators
        .iter()
        .zip(&seeds.generators)
        .map(|((name, _), p)| {
            let g = c.perms.iter().position(|q| seeds.support.iter().all(|&s| q[s] == p[s])).unwrap();
            Generator { name: name.to_string(), matrix: c.matrices[g].clone() }
        })
        .collect();
    let mut majorana_axes: Vec<usize> = (0..n_dih).collect();
    majorana_axes.extend(d.axis_extras.iter().map(|e| index(&seeds.labels, e)));
    let entry = CatalogEntry {
        tag: t,
        axes: (0..n_dih).collect(),
        axis_residue: axis_residues(n_dih),
        extra: (n_dih..spec.dim()).collect(),
        majorana_axes,
        n_dihedral: n_dih,
        embeddings,
        generators: gens,
        group: c.matrices,
        support: seeds.support.clone(),
        branches_explored: c.branches_explored,
        spec,
    };
    for emb in &entry.embeddings {
        verify_embedding(&entry, emb.subtype, &emb.injection)?;
    }
    verify_stated(&entry)?;
    Ok(entry)
}

static CACHE: OnceLock<Mutex<HashMap<NsType, Arc<CatalogEntry>>>> = OnceLock::new();

/// The completed, verified entry for `t` (built once per process).
pub fn build(t: NsType) -> Result<Arc<CatalogEntry>> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().unwrap().get(&t) {
        return Ok(Arc::clone(e));
    }
    let e = Arc::new(build_uncached(t)?);
    Ok(Arc::clone(cache.lock().unwrap().entry(t).or_insert(e)))
}

/// Checks that every product and inner product printed in the table is
/// reproduced verbatim.
pub fn verify_stated(entry: &CatalogEntry) -> Result<()> {
    let d = data(entry.tag);
    let spec = entry.spec();
    let ctx = BasisContext { labels: spec.labels() };
    for (a, b, e) in d.products {
        let (i, j) = (index(spec.labels(), a), index(spec.labels(), b));
        if spec.basis_product(i, j) != parse_vector(e, &ctx)?.as_slice() {
            return Err(Error::Contradiction(format!("stated product {a}·{b} not reproduced")));
        }
    }
    for (a, b, e) in d.inner {
        let (i, j) = (index(spec.labels(), a), index(spec.labels(), b));
        if spec.gram()[(i, j)] != parse(e, &ctx)?.into_scalar()? {
            return Err(Error::Contradiction(format!("stated inner product ({a}, {b}) not reproduced")));
        }
    }
    Ok(())
}

/// Checks that `injection` carries the products and form of `subtype` into
/// the entry exactly.
pub fn verify_embedding(entry: &CatalogEntry, subtype: NsType, injection: &[usize]) -> Result<()> {
    let sub = build(subtype)?;
    let (ss, es) = (sub.spec(), entry.spec());
    if injection.len() != ss.dim() {
        return Err(Error::Dimension { expected: ss.dim(), got: injection.len() });
    }
    for p in 0..ss.dim() {
        for q in p..ss.dim() {
            let mut v = vec![Scalar::zero(); es.dim()];
            for (k, c) in ss.basis_product(p, q).iter().enumerate() {
                v[injection[k]] = c.clone();
            }
            let (i, j) = (injection[p], injection[q]);
            if es.basis_product(i, j) != v.as_slice() {
                return Err(Error::Contradiction(format!(
                    "embedding {subtype} fails on product {}·{} (image {}·{})",
                    ss.label(p),
                    ss.label(q),
                    es.label(i),
                    es.label(j)
                )));
            }
            if es.gram()[(i, j)] != ss.gram()[(p, q)] {
                return Err(Error::Contradiction(format!(
                    "embedding {subtype} fails on inner product ({}, {})",
                    ss.label(p),
                    ss.label(q)
                )));
            }
        }
    }
    Ok(())
}

/// Outcome of the axiom checks on a built entry.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AxiomReport {
    /// Basis triples on which M1 was checked exactly.
    pub frobenius_triples: usize,
    pub frobenius: bool,
    pub gram_positive_definite: bool,
    pub axes: Vec<AxisCheck>,
}

/// M3–M5 for one Majorana axis.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AxisCheck {
    pub label: String,
    pub length_one: bool,
    /// Spectrum contained in {0, 1, 1/4, 1/32}.
    pub spectrum_allowed: bool,
    pub one_simple: bool,
}

impl AxisCheck {
    pub fn passed(&self) -> bool {
        self.length_one && self.spectrum_allowed && self.one_simple
    }
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.frobenius && self.gram_positive_definite && self.axes.iter().all(AxisCheck::passed)
    }
}

/// M1 on every basis triple, positivity of the form, and M3–M5 on every axis.
pub fn check_axioms(entry: &CatalogEntry) -> Result<AxiomReport> {
    let spec = entry.spec();
    let fro = spec.check_frobenius();
    let allowed = [Scalar::zero(), Scalar::one(), Scalar::frac(1, 4), Scalar::frac(1, 32)];
    let mut axes = Vec::new();
    for &a in &entry.majorana_axes {
        let x = spec.basis(a);
        let s = crate::spectral::spectrum(&x)?;
        let in_set = s.eigenvalues.iter().all(|e| allowed.contains(&e.value));
        axes.push(AxisCheck { label: spec.label(a).to_string(), length_one: x.length() == Scalar::one(), spectrum_allowed: in_set, one_simple: s.mult1 == 1 });
    }
    Ok(AxiomReport {
        frobenius_triples: fro.triples_checked,
        frobenius: fro.passed(),
        gram_positive_definite: spec.gram_positive_definite()?,
        axes,
    })
}

/// Builds every type in catalog order.
pub fn build_all() -> Result<Vec<Arc<CatalogEntry>>> {
    NsType::ALL.iter().map(|&t| build(t)).collect()
}

/// Re-runs the completion seeded with the full table of `entry`.
pub fn recomplete(entry: &CatalogEntry) -> Result<(Vec<Vec<Scalar>>, Matrix)> {
    let (mut s, _) = seeds(entry.tag)?;
    let spec = entry.spec();
    let n = spec.dim();
    for i in 0..n {
        for j in i..n {
            s.products.push((i, j, spec.basis_product(i, j).to_vec()));
            s.inner.push((i, j, spec.gram()[(i, j)].clone()));
        }
    }
    let c = complete::complete(&s)?;
    Ok((c.table, c.gram))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        assert_eq!(axis_residues(2), vec![0, 1]);
        assert_eq!(axis_residues(4), vec![0, 1, 3, 2]);
        assert_eq!(axis_residues(6), vec![0, 1, 5, 2, 4, 3]);
    }

    #[test]
    fn all_types_complete_with_expected_groups() {
        let dims = [3, 2, 4, 3, 5, 5, 6, 8];
        let orders = [6, 2, 6, 6, 8, 8, 20, 12];
        for (k, t) in NsType::ALL.iter().enumerate() {
            let e = build(*t).unwrap_or_else(|err| panic!("{t}: {err}"));
            assert_eq!(e.n(), dims[k], "{t}");
            assert_eq!(e.group.len(), orders[k], "{t}");
            assert!(e.spec().check_frobenius().violation.is_none(), "{t}");
            for m in &e.group {
                check_automorphism(e.spec(), m).unwrap();
            }
        }
    }

    #[test]
    fn completion_is_stable() {
        for t in NsType::ALL {
            let e = build(t).unwrap();
            let (table, gram) = recomplete(&e).unwrap();
            let n = e.n();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(table[i * n + j].as_slice(), e.spec().basis_product(i, j), "{t}");
                }
            }
            assert_eq!(&gram, e.spec().gram(), "{t}");
        }
    }

    #[test]
    fn derived_entries() {
        let e = build(NsType::A5).unwrap();
        let (g, g2, w) = (e.basis("a_g").unwrap(), e.basis("a_g2").unwrap(), e.basis("w_r").unwrap());
        assert_eq!(g.inner(&g2).unwrap(), Scalar::frac(3, 128));
        let phi = &e.generators.iter().find(|g| g.name == "φ_5A").unwrap().matrix;
        let iw = e.spec().index_of("w_ρ").unwrap();
        assert_eq!(phi.column(iw), (-&w).coeffs().to_vec());
        let e = build(NsType::A3).unwrap();
        let lhs = e.basis("a_g").unwrap().product(&e.basis("a_gm1").unwrap()).unwrap();
        let rhs = e.parse("1/32*(2*a_g + 2*a_gm1 + a_t) - 135/2048*u_r").unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn type_tags() {
        assert_eq!("6a".parse::<NsType>().unwrap(), NsType::A6);
        assert!(matches!("9Z".parse::<NsType>(), Err(Error::UnknownType(_))));
    }
}
