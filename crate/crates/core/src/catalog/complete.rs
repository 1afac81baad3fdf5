//! Completion of partial multiplication tables by symmetry.
//!
//! The group is given by its action on a *support* set of basis vectors (the
//! axes). The images of the remaining basis vectors are never assumed: each
//! one is derived by writing the vector in terms of support vectors and known
//! products, then applying the group element to that expression. Known
//! products and inner products are transported along group elements whose
//! images are signed basis vectors. Any two derivations that disagree raise a
//! contradiction. When the closure stalls, the image of one extra vector is
//! guessed among `±b_e` and the guess is kept only if it completes to a
//! consistent algebra; the completed algebra must be unique.

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Input of a completion run.
pub struct Seeds {
    pub type_tag: String,
    pub labels: Vec<String>,
    /// Basis indices whose group images are given by `group`.
    pub support: Vec<usize>,
    /// Basis indices whose images must be derived.
    pub extras: Vec<usize>,
    /// Generators as maps on basis indices (only support entries are used).
    pub generators: Vec<Vec<usize>>,
    pub products: Vec<(usize, usize, Vec<Scalar>)>,
    pub inner: Vec<(usize, usize, Scalar)>,
}

/// A completed algebra plus the derived matrices of every group element.
pub struct Completion {
    pub table: Vec<Vec<Scalar>>,
    pub gram: Matrix,
    /// Group elements as support permutations, the identity first.
    pub perms: Vec<Vec<usize>>,
    /// Column `k` of `matrices[g]` is the image of `b_k`.
    pub matrices: Vec<Matrix>,
    pub branches_explored: usize,
}

type Vector = Vec<Scalar>;

struct Group {
    perms: Vec<Vec<usize>>,
    /// `compose[a][b]` is the index of `a∘b`.
    compose: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

const GROUP_LIMIT: usize = 1000;

fn close_group(n: usize, support: &[usize], gens: &[Vec<usize>]) -> Result<Group> {
    let id: Vec<usize> = (0..n).collect();
    let restrict = |p: &Vec<usize>| -> Vec<usize> {
        let mut q = id.clone();
        for &s in support {
            q[s] = p[s];
        }
        q
    };
    let gens: Vec<Vec<usize>> = gens.iter().map(restrict).collect();
    let mut perms = vec![id.clone()];
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let q: Vec<usize> = (0..n).map(|k| g[p[k]]).collect();
            if !perms.contains(&q) {
                if perms.len() >= GROUP_LIMIT {
                    return Err(Error::GroupTooLarge(GROUP_LIMIT));
                }
                perms.push(q.clone());
                frontier.push(q);
            }
        }
    }
    let find = |q: &Vec<usize>| perms.iter().position(|p| p == q).expect("group is closed");
    let compose: Vec<Vec<usize>> = perms
        .iter()
        .map(|a| perms.iter().map(|b| find(&(0..n).map(|k| a[b[k]]).collect())).collect())
        .collect();
    let inverse = (0..perms.len()).map(|a| compose[a].iter().position(|&c| c == 0).unwrap()).collect();
    let generators = gens.iter().map(find).collect();
    Ok(Group { perms, compose, inverse, generators })
}

#[derive(Clone)]
struct State {
    n: usize,
    prods: Vec<Option<Vector>>,
    gram: Vec<Option<Scalar>>,
    img: Vec<Vec<Option<Vector>>>,
}

fn unit(n: usize, k: usize, s: Scalar) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[k] = s;
    v
}

fn signed_unit(v: &[Scalar]) -> Option<(usize, Scalar)> {
    let mut hit = None;
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if hit.is_some() || !(c.is_one() || (-c).is_one()) {
            return None;
        }
        hit = Some((k, c.clone()));
    }
    hit
}

impl State {
    fn set_prod(&mut self, i: usize, j: usize, v: Vector, labels: &[String]) -> Result<bool> {
        let n = self.n;
        match &self.prods[i * n + j] {
            Some(old) if *old == v => Ok(false),
            Some(_) => Err(Error::Contradiction(format!(
                "two derivations of {}·{} disagree",
                labels[i], labels[j]
            ))),
            None => {
                self.prods[i * n + j] = Some(v.clone());
                self.prods[j * n + i] = Some(v);
                Ok(true)
            }
        }
    }

    fn set_gram(&mut self, i: usize, j: usize, v: Scalar, labels: &[String]) -> Result<bool> {
        let n = self.n;
        match &self.gram[i * n + j] {
            Some(old) if *old == v => Ok(false),
            Some(_) => Err(Error::Contradiction(format!(
                "two derivations of ({}, {}) disagree",
                labels[i], labels[j]
            ))),
            None => {
                self.gram[i * n + j] = Some(v.clone());
                self.gram[j * n + i] = Some(v);
                Ok(true)
            }
        }
    }

    fn set_img(&mut self, g: usize, k: usize, v: Vector, labels: &[String]) -> Result<bool> {
        match &self.img[g][k] {
            Some(old) if *old == v => Ok(false),
            Some(_) => Err(Error::Contradiction(format!(
                "two derivations of the image of {} under group element {g} disagree",
                labels[k]
            ))),
            None => {
                self.img[g][k] = Some(v);
                Ok(true)
            }
        }
    }

    /// Image of `v` under group element `g`, if every needed image is known.
    fn apply(&self, g: usize, v: &[Scalar]) -> Option<Vector> {
        let mut out = vec![Scalar::zero(); self.n];
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let im = self.img[g][k].as_ref()?;
            for (o, x) in out.iter_mut().zip(im) {
                if !x.is_zero() {
                    *o = &*o + &(c * x);
                }
            }
        }
        Some(out)
    }

    fn complete(&self) -> bool {
        self.prods.iter().all(Option::is_some) && self.gram.iter().all(Option::is_some)
    }

    /// Forced-expression rule: write `b_e` through vectors with known images.
    fn forced_image(&self, g: usize, e: usize) -> Result<Option<Vector>> {
        let n = self.n;
        let mut cols: Vec<Vector> = Vec::new();
        let mut images: Vec<Vector> = Vec::new();
        for k in 0..n {
            if k == e {
                continue;
            }
            if let Some(im) = &self.img[g][k] {
                cols.push(unit(n, k, Scalar::one()));
                images.push(im.clone());
            }
        }
        for i in 0..n {
            for j in i..n {
                let Some(p) = &self.prods[i * n + j] else { continue };
                let (Some(ii), Some(jj)) = (&self.img[g][i], &self.img[g][j]) else { continue };
                let (Some((a, sa)), Some((b, sb))) = (signed_unit(ii), signed_unit(jj)) else { continue };
                let Some(q) = &self.prods[a * n + b] else { continue };
                let s = &sa * &sb;
                cols.push(p.clone());
                images.push(q.iter().map(|x| x * &s).collect());
            }
        }
        if cols.is_empty() {
            return Ok(None);
        }
        let a = Matrix::from_columns(&cols);
        let c = match a.solve_any(&unit(n, e, Scalar::one())) {
            Ok(c) => c,
            Err(Error::Linear(_)) => return Ok(None),
            Err(err) => return Err(err),
        };
        let mut out = vec![Scalar::zero(); n];
        for (ck, im) in c.iter().zip(&images) {
            if ck.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(im) {
                *o = &*o + &(ck * x);
            }
        }
        Ok(Some(out))
    }
}

struct Engine<'a> {
    seeds: &'a Seeds,
    group: Group,
    explored: usize,
}

impl Engine<'_> {
    fn closure(&self, st: &mut State) -> Result<()> {
        let n = st.n;
        let labels = &self.seeds.labels;
        let ng = self.group.perms.len();
        loop {
            let mut changed = false;
            for g in 0..ng {
                for &e in &self.seeds.extras {
                    if st.img[g][e].is_none() {
                        if let Some(v) = st.forced_image(g, e)? {
                            changed |= st.set_img(g, e, v, labels)?;
                        }
                    }
                }
            }
            for a in 0..ng {
                for b in 0..ng {
                    let c = self.group.compose[a][b];
                    for &k in &self.seeds.extras {
                        if st.img[c][k].is_some() {
                            continue;
                        }
                        if let Some(v) = st.img[b][k].clone().and_then(|v| st.apply(a, &v)) {
                            changed |= st.set_img(c, k, v, labels)?;
                        }
                    }
                }
            }
            for g in 0..ng {
                let inv = self.group.inverse[g];
                for &k in &self.seeds.extras {
                    if let Some((m, s)) = st.img[g][k].as_deref().and_then(signed_unit) {
                        changed |= st.set_img(inv, m, unit(n, k, s), labels)?;
                    }
                }
            }
            for g in 0..ng {
                for i in 0..n {
                    for j in i..n {
                        let (Some(ii), Some(jj)) = (&st.img[g][i], &st.img[g][j]) else { continue };
                        let (Some((p, sp)), Some((q, sq))) = (signed_unit(ii), signed_unit(jj)) else {
                            continue;
                        };
                        let s = &sp * &sq;
                        if let Some(gv) = st.gram[i * n + j].clone() {
                            changed |= st.set_gram(p, q, &gv * &s, labels)?;
                        }
                        let Some(pv) = st.prods[i * n + j].clone() else { continue };
                        if let Some(w) = st.apply(g, &pv) {
                            changed |= st.set_prod(p, q, w.iter().map(|x| x * &s).collect(), labels)?;
                        }
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Depth-first search over guessed images; returns every consistent leaf.
    fn search(&mut self, mut st: State, out: &mut Vec<Completion>, last_err: &mut Option<Error>) {
        self.explored += 1;
        if let Err(e) = self.closure(&mut st) {
            *last_err = Some(e);
            return;
        }
        if st.complete() {
            match self.finish(&st) {
                Ok(c) => out.push(c),
                Err(e) => *last_err = Some(e),
            }
            return;
        }
        let order = self.group.generators.iter().copied().chain(0..self.group.perms.len());
        let pick = order
            .flat_map(|g| self.seeds.extras.iter().map(move |&e| (g, e)))
            .find(|&(g, e)| st.img[g][e].is_none());
        let Some((g, e)) = pick else {
            *last_err = Some(Error::Contradiction("closure stalled with every image known".into()));
            return;
        };
        for &cand in &self.seeds.extras {
            for s in [Scalar::one(), Scalar::int(-1)] {
                let mut next = st.clone();
                next.img[g][e] = Some(unit(st.n, cand, s));
                self.search(next, out, last_err);
            }
        }
    }

    fn finish(&self, st: &State) -> Result<Completion> {
        let n = st.n;
        let table: Vec<Vector> = st.prods.iter().map(|p| p.clone().unwrap()).collect();
        let mut gram = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                gram[(i, j)] = st.gram[i * n + j].clone().unwrap();
            }
        }
        let spec = AlgebraSpec::new(&self.seeds.type_tag, self.seeds.labels.clone(), table.clone(), gram.clone())?;
        if let Some((i, j, k)) = spec.check_frobenius().violation {
            return Err(Error::Contradiction(format!(
                "completed table violates the Frobenius property at ({}, {}, {})",
                spec.label(i),
                spec.label(j),
                spec.label(k)
            )));
        }
        let mut st = st.clone();
        let labels = &self.seeds.labels;
        let mut matrices = Vec::new();
        for g in 0..self.group.perms.len() {
            for &e in &self.seeds.extras {
                if st.img[g][e].is_none() {
                    let v = st.forced_image(g, e)?.ok_or_else(|| {
                        Error::NotExtendable(format!("no forced expression for {}", labels[e]))
                    })?;
                    st.set_img(g, e, v, labels)?;
                }
            }
            let cols: Vec<Vector> = (0..n).map(|k| st.img[g][k].clone().unwrap()).collect();
            let m = Matrix::from_columns(&cols);
            check_automorphism(&spec, &m)?;
            matrices.push(m);
        }
        Ok(Completion {
            table,
            gram,
            perms: self.group.perms.clone(),
            matrices,
            branches_explored: 0,
        })
    }
}

/// Verifies that `m` preserves the product and the form on all basis pairs.
pub fn check_automorphism(spec: &AlgebraSpec, m: &Matrix) -> Result<()> {
    let n = spec.dim();
    let cols: Vec<Vector> = (0..n).map(|k| m.column(k)).collect();
    for i in 0..n {
        for j in i..n {
            let lhs = m.mul_vec(spec.basis_product(i, j));
            let rhs = spec.product_coeffs(&cols[i], &cols[j]);
            if lhs != rhs {
                return Err(Error::NotExtendable(format!(
                    "product of ({}, {}) is not preserved",
                    spec.label(i),
                    spec.label(j)
                )));
            }
            if spec.inner_coeffs(&cols[i], &cols[j]) != spec.gram()[(i, j)] {
                return Err(Error::NotExtendable(format!(
                    "inner product of ({}, {}) is not preserved",
                    spec.label(i),
                    spec.label(j)
                )));
            }
        }
    }
    Ok(())
}

/// Runs the completion; fails unless exactly one consistent algebra results.
pub fn complete(seeds: &Seeds) -> Result<Completion> {
    let n = seeds.labels.len();
    let group = close_group(n, &seeds.support, &seeds.generators)?;
    let ng = group.perms.len();
    let mut st = State {
        n,
        prods: vec![None; n * n],
        gram: vec![None; n * n],
        img: vec![vec![None; n]; ng],
    };
    for (g, p) in group.perms.iter().enumerate() {
        for &s in &seeds.support {
            st.img[g][s] = Some(unit(n, p[s], Scalar::one()));
        }
    }
    for &e in &seeds.extras {
        st.img[0][e] = Some(unit(n, e, Scalar::one()));
    }
    for (i, j, v) in &seeds.products {
        st.set_prod(*i, *j, v.clone(), &seeds.labels)?;
    }
    for (i, j, v) in &seeds.inner {
        st.set_gram(*i, *j, v.clone(), &seeds.labels)?;
    }
    let mut engine = Engine { seeds, group, explored: 0 };
    let mut found = Vec::new();
    let mut last_err = None;
    engine.search(st, &mut found, &mut last_err);
    let mut distinct: Vec<Completion> = Vec::new();
    for c in found {
        if !distinct.iter().any(|d| d.table == c.table && d.gram == c.gram) {
            distinct.push(c);
        }
    }
    match distinct.len() {
        0 => Err(last_err.unwrap_or_else(|| Error::Contradiction("no consistent completion".into()))),
        1 => {
            let mut c = distinct.pop().unwrap();
            c.branches_explored = engine.explored;
            Ok(c)
        }
        k => Err(Error::Contradiction(format!("{k} inequivalent completions; the data is ambiguous"))),
    }
}
