//! Commutative algebras given by structure constants and a Gram matrix.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, Sign};

/// Structure constants `b_i·b_j = Σ_k C[i][j][k] b_k` and Gram matrix
/// `G[i][j] = (b_i, b_j)` over a fixed ordered basis.
#[derive(Debug)]
pub struct AlgebraSpec {
    type_tag: String,
    labels: Vec<String>,
    /// `table[i * n + j]` holds the coefficient vector of `b_i·b_j`.
    table: Vec<Vec<Scalar>>,
    gram: Matrix,
    table_f64: Vec<f64>,
    gram_f64: Vec<f64>,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, o: &AlgebraSpec) -> bool {
        self.type_tag == o.type_tag && self.labels == o.labels && self.table == o.table && self.gram == o.gram
    }
}

/// Outcome of a Frobenius (M1) check over basis triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub triples_checked: usize,
    pub violation: Option<(usize, usize, usize)>,
}

impl FrobeniusReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Outcome of the Norton inequality (M2′) test on one pair.
#[derive(Debug, Clone)]
pub struct NortonReport {
    /// `(u·u, v·v) − (u·v, u·v)`.
    pub defect: Scalar,
    pub holds: bool,
    pub equality: bool,
    pub adjoints_commute: bool,
}

impl NortonReport {
    /// The inequality holds and equality occurs exactly when the adjoints commute.
    pub fn consistent(&self) -> bool {
        self.holds && self.equality == self.adjoints_commute
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Idempotency {
    ExactTrue,
    ExactFalse,
    CertifiedTrue,
    Undecided,
}

impl AlgebraSpec {
    /// Validates shapes and commutativity; `table[i*n+j]` is `b_i·b_j`.
    pub fn new(type_tag: &str, labels: Vec<String>, table: Vec<Vec<Scalar>>, gram: Matrix) -> Result<AlgebraSpec> {
        let n = labels.len();
        if table.len() != n * n {
            return Err(Error::Dimension { expected: n * n, got: table.len() });
        }
        if let Some(bad) = table.iter().find(|v| v.len() != n) {
            return Err(Error::Dimension { expected: n, got: bad.len() });
        }
        if gram.rows() != n || gram.cols() != n {
            return Err(Error::Dimension { expected: n, got: gram.rows() });
        }
        for i in 0..n {
            for j in i + 1..n {
                if table[i * n + j] != table[j * n + i] {
                    return Err(Error::Contradiction(format!(
                        "product table is not commutative at ({}, {})",
                        labels[i], labels[j]
                    )));
                }
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::Contradiction(format!(
                        "Gram matrix is not symmetric at ({}, {})",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let table_f64 = table.iter().flat_map(|v| v.iter().map(Scalar::to_f64)).collect();
        let gram_f64 = (0..n * n).map(|k| gram[(k / n, k % n)].to_f64()).collect();
        Ok(AlgebraSpec { type_tag: type_tag.to_string(), labels, table, gram, table_f64, gram_f64 })
    }

    pub fn type_tag(&self) -> &str {
        &self.type_tag
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Coefficient vector of `b_i·b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i * self.dim() + j]
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// `C[i][j][k]` as `f64`, flattened as `(i*n + j)*n + k`.
    pub fn table_f64(&self) -> &[f64] {
        &self.table_f64
    }

    pub fn gram_f64(&self) -> &[f64] {
        &self.gram_f64
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Scalar>) -> Result<Element> {
        if coeffs.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: coeffs.len() });
        }
        Ok(Element { algebra: Arc::clone(self), coeffs })
    }

    pub fn zero(self: &Arc<Self>) -> Element {
        Element { algebra: Arc::clone(self), coeffs: vec![Scalar::zero(); self.dim()] }
    }

    pub fn basis(self: &Arc<Self>, i: usize) -> Element {
        let mut e = self.zero();
        e.coeffs[i] = Scalar::one();
        e
    }

    pub fn basis_by_label(self: &Arc<Self>, label: &str) -> Result<Element> {
        let i = self.index_of(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(self.basis(i))
    }

    /// Product of raw coefficient vectors.
    pub fn product_coeffs(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if u[i].is_exact() && u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_exact() && v[j].is_zero() {
                    continue;
                }
                let c = &u[i] * &v[j];
                for (k, t) in self.table[i * n + j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = &out[k] + &(&c * t);
                    }
                }
            }
        }
        out
    }

    /// Bilinear form of raw coefficient vectors.
    pub fn inner_coeffs(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let n = self.dim();
        let mut acc = Scalar::zero();
        for i in 0..n {
            if u[i].is_exact() && u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let g = &self.gram[(i, j)];
                if g.is_zero() || (v[j].is_exact() && v[j].is_zero()) {
                    continue;
                }
                acc = &acc + &(&(&u[i] * g) * &v[j]);
            }
        }
        acc
    }

    /// `f64` product, used by the numerical kernels.
    pub fn product_f64(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                let c = u[i] * v[j];
                if c == 0.0 {
                    continue;
                }
                let row = &self.table_f64[(i * n + j) * n..(i * n + j + 1) * n];
                for k in 0..n {
                    out[k] += c * row[k];
                }
            }
        }
        out
    }

    /// `f64` adjoint matrix (row-major), column `j` = `v·b_j`.
    pub fn adjoint_f64(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            if v[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let row = &self.table_f64[(i * n + j) * n..(i * n + j + 1) * n];
                for k in 0..n {
                    m[k * n + j] += v[i] * row[k];
                }
            }
        }
        m
    }

    pub fn inner_f64(&self, u: &[f64], v: &[f64]) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += u[i] * self.gram_f64[i * n + j] * v[j];
            }
        }
        acc
    }

    /// The unique two-sided identity, from the `n² × n` system `e·b_j = b_j`.
    pub fn identity(self: &Arc<Self>) -> Result<Element> {
        let n = self.dim();
        let mut a = Matrix::zeros(n * n, n);
        let mut rhs = vec![Scalar::zero(); n * n];
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    a[(j * n + k, i)] = self.table[i * n + j][k].clone();
                }
                if j == k {
                    rhs[j * n + k] = Scalar::one();
                }
            }
        }
        let e = a.solve_any(&rhs).map_err(|_| Error::NoIdentity)?;
        if a.rank()? < n {
            return Err(Error::NonUniqueIdentity);
        }
        self.element(e)
    }

    /// M1 on basis triples: the trilinear form `(b_i·b_j, b_k)` must be fully
    /// symmetric. Each multiset `i ≤ j ≤ k` is checked once.
    pub fn check_frobenius(&self) -> FrobeniusReport {
        let n = self.dim();
        let t = |i: usize, j: usize, k: usize| -> Scalar {
            self.table[i * n + j]
                .iter()
                .enumerate()
                .fold(Scalar::zero(), |acc, (l, c)| &acc + &(c * &self.gram[(l, k)]))
        };
        let mut checked = 0;
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    checked += 1;
                    let x = t(i, j, k);
                    if x != t(j, k, i) || x != t(i, k, j) {
                        return FrobeniusReport { triples_checked: checked, violation: Some((i, j, k)) };
                    }
                }
            }
        }
        FrobeniusReport { triples_checked: checked, violation: None }
    }

    pub fn gram_positive_definite(&self) -> Result<bool> {
        self.gram.is_positive_definite()
    }

    /// The adjoint matrices `ad_{b_i}` for every basis vector.
    pub fn basis_adjoints(self: &Arc<Self>) -> Vec<Matrix> {
        (0..self.dim()).map(|i| self.basis(i).adjoint_matrix()).collect()
    }
}

/// An element of a specific algebra.
#[derive(Clone)]
pub struct Element {
    algebra: Arc<AlgebraSpec>,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, l) in self.coeffs.iter().zip(self.algebra.labels()) {
            if c.is_zero() {
                continue;
            }
            // rational coefficients carry their sign into the separator
            let (neg, body) = match c {
                Scalar::Rat(q) if q.is_negative() => (true, Scalar::Rat(-q.clone())),
                _ => (false, c.clone()),
            };
            let term = match &body {
                Scalar::Rat(q) if q.is_one() => l.clone(),
                Scalar::Rat(_) => format!("{body}*{l}"),
                _ => format!("({body})*{l}"),
            };
            match (out.is_empty(), neg) {
                (true, false) => out.push_str(&term),
                (true, true) => out.push_str(&format!("-{term}")),
                (false, false) => out.push_str(&format!(" + {term}")),
                (false, true) => out.push_str(&format!(" - {term}")),
            }
        }
        if out.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{out}")
        }
    }
}

impl PartialEq for Element {
    fn eq(&self, o: &Element) -> bool {
        same_algebra(&self.algebra, &o.algebra) && self.coeffs == o.coeffs
    }
}

fn same_algebra(a: &Arc<AlgebraSpec>, b: &Arc<AlgebraSpec>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Element {
    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(Scalar::to_f64).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact() && c.is_zero())
    }

    fn check(&self, o: &Element) -> Result<()> {
        if same_algebra(&self.algebra, &o.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn with(&self, coeffs: Vec<Scalar>) -> Element {
        Element { algebra: Arc::clone(&self.algebra), coeffs }
    }

    pub fn try_add(&self, o: &Element) -> Result<Element> {
        self.check(o)?;
        Ok(self.with(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn try_sub(&self, o: &Element) -> Result<Element> {
        self.check(o)?;
        Ok(self.with(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        self.with(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn conjugate(&self) -> Element {
        self.with(self.coeffs.iter().map(Scalar::conjugate).collect())
    }

    pub fn product(&self, o: &Element) -> Result<Element> {
        self.check(o)?;
        Ok(self.with(self.algebra.product_coeffs(&self.coeffs, &o.coeffs)))
    }

    pub fn square(&self) -> Element {
        self.with(self.algebra.product_coeffs(&self.coeffs, &self.coeffs))
    }

    pub fn inner(&self, o: &Element) -> Result<Scalar> {
        self.check(o)?;
        Ok(self.algebra.inner_coeffs(&self.coeffs, &o.coeffs))
    }

    /// `l(v) = (v, v)`.
    pub fn length(&self) -> Scalar {
        self.algebra.inner_coeffs(&self.coeffs, &self.coeffs)
    }

    /// Matrix of `u ↦ self·u`; column `j` holds `self·b_j`.
    pub fn adjoint_matrix(&self) -> Matrix {
        let n = self.algebra.dim();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            let c = &self.coeffs[i];
            if c.is_exact() && c.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, t) in self.algebra.basis_product(i, j).iter().enumerate() {
                    if !t.is_zero() {
                        m[(k, j)] = &m[(k, j)] + &(c * t);
                    }
                }
            }
        }
        m
    }

    /// `x·x − x`.
    pub fn idempotency_residual(&self) -> Element {
        self.with(self.square().coeffs.iter().zip(&self.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn is_idempotent(&self) -> Idempotency {
        if self.is_exact() {
            return if self.idempotency_residual().is_zero() { Idempotency::ExactTrue } else { Idempotency::ExactFalse };
        }
        if self.idempotency_residual().coeffs.iter().any(|c| !c.to_interval().contains_zero()) {
            return Idempotency::ExactFalse;
        }
        if crate::idempotent::krawczyk::certify_ball(self).is_ok() {
            Idempotency::CertifiedTrue
        } else {
            Idempotency::Undecided
        }
    }

    /// M2′ for the pair `(self, o)`.
    pub fn check_norton(&self, o: &Element) -> Result<NortonReport> {
        self.check(o)?;
        if !self.is_exact() || !o.is_exact() {
            return Err(Error::Undecided("Norton inequality on interval input".into()));
        }
        let uu = self.square();
        let vv = o.square();
        let uv = self.product(o)?;
        let defect = &uu.inner(&vv)? - &uv.length();
        let sign = defect.certify_sign();
        let (a, b) = (self.adjoint_matrix(), o.adjoint_matrix());
        let adjoints_commute = a.mul(&b) == b.mul(&a);
        Ok(NortonReport {
            holds: matches!(sign, Sign::Positive | Sign::Zero),
            equality: sign == Sign::Zero,
            adjoints_commute,
            defect,
        })
    }

    /// Coefficients keyed by basis label, in basis order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (l, c) in self.algebra.labels().iter().zip(&self.coeffs) {
            m.insert(l.clone(), serde_json::to_value(c).expect("scalars serialize"));
        }
        serde_json::Value::Object(m)
    }

    /// Inverse of [`Element::to_json`]; missing labels read as zero.
    pub fn from_json(algebra: &Arc<AlgebraSpec>, v: &serde_json::Value) -> Result<Element> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("element must be a JSON object".into()))?;
        let mut coeffs = vec![Scalar::zero(); algebra.dim()];
        for (k, c) in obj {
            let i = algebra.index_of(k).ok_or_else(|| Error::UnknownLabel(k.clone()))?;
            coeffs[i] = Scalar::deserialize(c)?;
        }
        algebra.element(coeffs)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        self.try_add(o).expect("elements of different algebras")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        self.try_sub(o).expect("elements of different algebras")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.with(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    schema: u32,
    #[serde(rename = "type")]
    type_tag: String,
    n: usize,
    basis: Vec<String>,
    /// Sparse `[i, j, k, c]` with `i ≤ j`.
    products: Vec<(usize, usize, usize, Scalar)>,
    gram: Vec<Vec<Scalar>>,
}

pub const SCHEMA_VERSION: u32 = 1;

impl Serialize for AlgebraSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in i..n {
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        products.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        SpecRepr {
            schema: SCHEMA_VERSION,
            type_tag: self.type_tag.clone(),
            n,
            basis: self.labels.clone(),
            products,
            gram: (0..n).map(|i| self.gram.row(i).to_vec()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for AlgebraSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<AlgebraSpec, D::Error> {
        use serde::de::Error as _;
        let r = SpecRepr::deserialize(de)?;
        if r.schema != SCHEMA_VERSION {
            return Err(D::Error::custom(format!("unsupported schema {}", r.schema)));
        }
        if r.basis.len() != r.n || r.gram.len() != r.n {
            return Err(D::Error::custom("dimension does not match basis or Gram size"));
        }
        let n = r.n;
        let mut table = vec![vec![Scalar::zero(); n]; n * n];
        for (i, j, k, c) in r.products {
            if i >= n || j >= n || k >= n {
                return Err(D::Error::custom("product index out of range"));
            }
            table[i * n + j][k] = c.clone();
            table[j * n + i][k] = c;
        }
        if r.gram.iter().any(|row| row.len() != n) {
            return Err(D::Error::custom("Gram matrix is not square"));
        }
        AlgebraSpec::new(&r.type_tag, r.basis, table, Matrix::from_rows(r.gram)).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 2A table written out in full, independent of the catalog.
    fn two_a() -> Arc<AlgebraSpec> {
        let e = Scalar::frac(1, 8);
        let me = Scalar::frac(-1, 8);
        let (o, z) = (Scalar::one(), Scalar::zero());
        let p = |a: &Scalar, b: &Scalar, c: &Scalar| vec![a.clone(), b.clone(), c.clone()];
        let table = vec![
            p(&o, &z, &z),
            p(&e, &e, &me),
            p(&e, &me, &e),
            p(&e, &e, &me),
            p(&z, &o, &z),
            p(&me, &e, &e),
            p(&e, &me, &e),
            p(&me, &e, &e),
            p(&z, &z, &o),
        ];
        let gram = Matrix::from_rows(vec![p(&o, &e, &e), p(&e, &o, &e), p(&e, &e, &o)]);
        Arc::new(AlgebraSpec::new("2A", vec!["a_t".into(), "a_g".into(), "a_ρ".into()], table, gram).unwrap())
    }

    #[test]
    fn identity_of_2a() {
        let a = two_a();
        let id = a.identity().unwrap();
        assert_eq!(id.coeffs(), &[Scalar::frac(4, 5), Scalar::frac(4, 5), Scalar::frac(4, 5)]);
        assert_eq!(id.adjoint_matrix(), Matrix::identity(3));
        assert_eq!(id.is_idempotent(), Idempotency::ExactTrue);
    }

    #[test]
    fn frobenius_detects_wrong_gram() {
        let a = two_a();
        let r = a.check_frobenius();
        assert!(r.passed());
        assert_eq!(r.triples_checked, 10);
        let n = 3;
        let table: Vec<Vec<Scalar>> =
            (0..n * n).map(|k| a.basis_product(k / n, k % n).to_vec()).collect();
        let bad = AlgebraSpec::new("custom", a.labels().to_vec(), table, Matrix::identity(3)).unwrap();
        assert!(!bad.check_frobenius().passed());
    }

    #[test]
    fn norton_for_two_axes() {
        let a = two_a();
        let r = a.basis(0).check_norton(&a.basis(1)).unwrap();
        assert!(r.holds && !r.equality && !r.adjoints_commute && r.consistent());
        let s = a.basis(0).check_norton(&a.basis(0)).unwrap();
        assert!(s.equality && s.adjoints_commute);
    }

    #[test]
    fn scaling_breaks_idempotency() {
        let a = two_a();
        assert_eq!(a.basis(0).is_idempotent(), Idempotency::ExactTrue);
        assert_eq!(a.basis(0).scale(&Scalar::int(2)).is_idempotent(), Idempotency::ExactFalse);
    }

    #[test]
    fn json_round_trip() {
        let a = two_a();
        let s = serde_json::to_string(&*a).unwrap();
        let b: AlgebraSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(*a, b);
        let id = a.identity().unwrap();
        assert_eq!(Element::from_json(&a, &id.to_json()).unwrap(), id);
    }

    #[test]
    fn non_identity_algebra_reports_no_identity() {
        let z = Scalar::zero();
        let a = Arc::new(
            AlgebraSpec::new("custom", vec!["n".into()], vec![vec![z]], Matrix::identity(1)).unwrap(),
        );
        assert!(matches!(a.identity(), Err(Error::NoIdentity)));
    }
}
