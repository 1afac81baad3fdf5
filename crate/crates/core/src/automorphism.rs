//! Automorphism groups and orbits.
//!
//! An automorphism is determined by where it sends a generating set. Given
//! the images of the axes, products of axes are mapped to products of images
//! until the products span the algebra; the linear map is then solved and
//! checked against every basis product and inner product.

use std::sync::Arc;

use crate::algebra::{AlgebraSpec, Element};
use crate::catalog::{check_automorphism, CatalogEntry};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub const GROUP_LIMIT: usize = 1000;

#[derive(Debug, Clone)]
pub struct Automorphism {
    /// Column `k` is the image of `b_k`.
    pub matrix: Matrix,
    /// Images of the axes (basis indices) when built from a permutation.
    pub source_perm: Option<Vec<usize>>,
}

impl Automorphism {
    pub fn apply(&self, x: &Element) -> Result<Element> {
        x.algebra().element(self.matrix.mul_vec(x.coeffs()))
    }

    pub fn compose(&self, o: &Automorphism) -> Automorphism {
        Automorphism { matrix: self.matrix.mul(&o.matrix), source_perm: None }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.matrix.rows())
    }

    /// Smallest `k ≥ 1` with `self^k = 1`.
    pub fn order(&self) -> usize {
        let n = self.matrix.rows();
        let id = Matrix::identity(n);
        let mut p = self.matrix.clone();
        let mut k = 1;
        while p != id && k <= GROUP_LIMIT {
            p = p.mul(&self.matrix);
            k += 1;
        }
        k
    }
}

/// Extends `b_{domain[k]} ↦ b_{images[k]}` to an automorphism, provided the
/// domain generates the algebra.
pub fn extend_map(spec: &Arc<AlgebraSpec>, domain: &[usize], images: &[usize]) -> Result<Automorphism> {
    let n = spec.dim();
    if domain.len() != images.len() {
        return Err(Error::Dimension { expected: domain.len(), got: images.len() });
    }
    let unit = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    };
    let mut words: Vec<(Vec<Scalar>, Vec<Scalar>)> = domain.iter().zip(images).map(|(&d, &i)| (unit(d), unit(i))).collect();
    let gens = words.clone();
    let mut span: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    let mut rank = 0;
    let mut frontier = 0;
    // breadth-first products of generators until the span is full
    while rank < n {
        if frontier >= words.len() {
            return Err(Error::NotExtendable("the given vectors do not generate the algebra".into()));
        }
        let (w, wi) = words[frontier].clone();
        frontier += 1;
        let mut trial: Vec<Vec<Scalar>> = span.iter().map(|(v, _)| v.clone()).collect();
        trial.push(w.clone());
        let r = Matrix::from_columns(&trial).rank()?;
        if r > rank {
            rank = r;
            span.push((w.clone(), wi.clone()));
            for (g, gi) in &gens {
                words.push((spec.product_coeffs(&w, g), spec.product_coeffs(&wi, gi)));
            }
        }
        if words.len() > 64 * n {
            return Err(Error::NotExtendable("products of the generators do not span".into()));
        }
    }
    let src = Matrix::from_columns(&span.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>());
    let dst = Matrix::from_columns(&span.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
    // M·src = dst  ⇔  srcᵀ·Mᵀ = dstᵀ, solved column by column of Mᵀ
    let st = src.transpose();
    let dt = dst.transpose();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        rows.push(st.solve(&dt.column(i))?);
    }
    let matrix = Matrix::from_rows(rows);
    check_automorphism(spec, &matrix).map_err(|e| Error::NotExtendable(e.to_string()))?;
    Ok(Automorphism { matrix, source_perm: Some(images.to_vec()) })
}

/// Extends `a_{g_i} ↦ b_{images[i]}` (images are basis indices, normally axes).
pub fn extend_axis_permutation(entry: &CatalogEntry, images: &[usize]) -> Result<Automorphism> {
    extend_map(entry.spec(), &entry.axes, images)
}

/// The generators of the catalog entry, re-derived from their axis images.
pub fn generators(entry: &CatalogEntry) -> Result<Vec<(String, Automorphism)>> {
    entry
        .generators
        .iter()
        .map(|g| {
            let images: Vec<usize> = entry
                .axes
                .iter()
                .map(|&a| {
                    let col = g.matrix.column(a);
                    col.iter().position(|c| c.is_one()).filter(|_| col.iter().filter(|c| !c.is_zero()).count() == 1)
                })
                .collect::<Option<_>>()
                .ok_or_else(|| Error::NotExtendable(format!("{} does not permute the axes", g.name)))?;
            let a = extend_axis_permutation(entry, &images)?;
            if a.matrix != g.matrix {
                return Err(Error::Contradiction(format!("{} re-derived differently", g.name)));
            }
            Ok((g.name.clone(), a))
        })
        .collect()
}

/// Closure of the generators under composition (identity first).
pub fn group_elements(entry: &CatalogEntry) -> Result<Vec<Automorphism>> {
    let n = entry.n();
    let gens: Vec<Automorphism> = generators(entry)?.into_iter().map(|(_, a)| a).collect();
    let mut out = vec![Automorphism { matrix: Matrix::identity(n), source_perm: None }];
    let mut i = 0;
    while i < out.len() {
        for g in &gens {
            let c = g.compose(&out[i]);
            if !out.iter().any(|h| h.matrix == c.matrix) {
                if out.len() >= GROUP_LIMIT {
                    return Err(Error::GroupTooLarge(GROUP_LIMIT));
                }
                out.push(c);
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Same point: exact equality, or overlap in every coordinate if either is a ball.
pub fn same_point(a: &Element, b: &Element) -> bool {
    if a.is_exact() && b.is_exact() {
        a == b
    } else {
        a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| x.approx_eq(y))
    }
}

#[derive(Debug, Clone)]
pub struct OrbitPartition {
    /// Classes of record indices; the first index of each class is its representative.
    pub classes: Vec<Vec<usize>>,
    /// `class_of[i]` is the class index of record `i`.
    pub class_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Finds the unique record equal to `y`.
fn locate(records: &[Element], y: &Element) -> Result<usize> {
    let mut hits = records.iter().enumerate().filter(|(_, r)| same_point(r, y)).map(|(i, _)| i);
    let first = hits.next().ok_or_else(|| Error::Contradiction(format!("orbit image {y} is not among the records")))?;
    if hits.next().is_some() {
        return Err(Error::Undecided(format!("orbit image {y} matches several records")));
    }
    Ok(first)
}

/// Orbits of `group` on `records` (which must be closed under the group).
pub fn orbits(group: &[Automorphism], records: &[Element]) -> Result<OrbitPartition> {
    let images: Vec<Vec<usize>> = {
        use rayon::prelude::*;
        records
            .par_iter()
            .map(|x| group.iter().map(|g| locate(records, &g.apply(x)?)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?
    };
    let mut class_of = vec![usize::MAX; records.len()];
    let mut classes = Vec::new();
    for i in 0..records.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = images[i].clone();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    Ok(OrbitPartition { classes, class_of })
}

/// Orbit of a single element as a list of distinct images.
pub fn orbit_of(group: &[Automorphism], x: &Element) -> Result<Vec<Element>> {
    let mut out: Vec<Element> = Vec::new();
    for g in group {
        let y = g.apply(x)?;
        if !out.iter().any(|z| same_point(z, &y)) {
            out.push(y);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, NsType};

    #[test]
    fn group_orders_and_closure() {
        let orders = [6, 2, 6, 6, 8, 8, 20, 12];
        for (t, o) in NsType::ALL.iter().zip(orders) {
            let e = build(*t).unwrap();
            let g = group_elements(&e).unwrap();
            assert_eq!(g.len(), o, "{t}");
            assert!(g[0].is_identity());
            for a in &g {
                assert!(e.group.iter().any(|m| m == &a.matrix), "{t}");
                for b in &g {
                    let c = a.compose(b);
                    assert!(g.iter().any(|h| h.matrix == c.matrix));
                }
                assert_eq!(a.apply(&e.identity()).unwrap(), e.identity());
            }
        }
    }

    #[test]
    fn two_a_swap_fixes_a_rho() {
        let e = build(NsType::A2).unwrap();
        let a = extend_axis_permutation(&e, &[1, 0]).unwrap();
        assert_eq!(a.apply(&e.basis("a_r").unwrap()).unwrap(), e.basis("a_r").unwrap());
    }

    #[test]
    fn invalid_permutation_is_rejected() {
        // a_t ↦ a_t, a_g ↦ a_{ρ²} is not product-preserving in 4B
        let e = build(NsType::B4).unwrap();
        assert!(matches!(extend_axis_permutation(&e, &[0, 4, 2, 3]), Err(Error::NotExtendable(_))));
    }

    #[test]
    fn six_a_phi_has_order_two() {
        let e = build(NsType::A6).unwrap();
        let g = generators(&e).unwrap();
        let phi = &g.iter().find(|(n, _)| n == "φ_6A").unwrap().1;
        assert_eq!(phi.order(), 2);
        let v = e.basis("v_r");
        assert!(v.is_err());
        let e4 = build(NsType::A4).unwrap();
        let phi4 = &generators(&e4).unwrap().into_iter().find(|(n, _)| n == "φ_4A").unwrap().1;
        assert_eq!(phi4.apply(&e4.basis("v_r").unwrap()).unwrap(), e4.basis("v_r").unwrap());
    }

    #[test]
    fn axis_orbits() {
        let e = build(NsType::A6).unwrap();
        let g = group_elements(&e).unwrap();
        let recs: Vec<Element> = (0..e.n()).map(|i| e.spec().basis(i)).collect();
        let o = orbits(&g, &recs).unwrap();
        let mut s = o.sizes();
        s.sort();
        assert_eq!(s, vec![1, 1, 6]);
    }
}
