//! Numerical search strategies for the idempotents, registered by name.
//!
//! A strategy returns floating candidates (converged roots of `x·x = x`);
//! deduplication against the group, certification and exact recognition
//! happen afterwards and do not depend on the strategy.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::newton::{jacobian, max_norm, newton_search, sigma_min, NewtonOutcome, DEFAULT_MAX_ITER, DEFAULT_TOL, SINGULAR_TOL};
use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 20_240_601;
/// Max-norm distance under which two candidates are the same root.
pub const DEDUP_TOL: f64 = 1e-8;
/// Half-width of the start box, in Gram-orthonormal coordinates.
pub const START_BOX: f64 = 1.5;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub seed: u64,
    /// Number of random starts; `None` means `200·2ⁿ`.
    pub starts: Option<usize>,
    pub tol: f64,
    pub max_iter: usize,
    pub dedup_tol: f64,
    /// Extra deterministic starts (closed forms, axes) tried before the random ones.
    pub seeds: Vec<Vec<f64>>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: DEFAULT_SEED, starts: None, tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER, dedup_tol: DEDUP_TOL, seeds: Vec::new() }
    }
}

impl SearchConfig {
    pub fn start_count(&self, n: usize) -> usize {
        self.starts.unwrap_or(200 << n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub x: Vec<f64>,
    /// The Jacobian `2·ad_x − I` is numerically singular at `x`.
    pub singular: bool,
    pub sigma_min: f64,
}

pub trait IdempotentSearch: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn search(&self, spec: &AlgebraSpec, cfg: &SearchConfig) -> Result<Vec<Candidate>>;
}

/// Appends `x` unless a candidate within `tol` (max-norm) is already present.
pub fn push_unique(out: &mut Vec<Candidate>, c: Candidate, tol: f64) -> bool {
    let dup = out.iter().any(|o| o.x.iter().zip(&c.x).all(|(a, b)| (a - b).abs() <= tol));
    if !dup {
        out.push(c);
    }
    !dup
}

fn candidate_of(spec: &AlgebraSpec, outcome: NewtonOutcome) -> Option<Candidate> {
    match outcome {
        NewtonOutcome::Converged { x, .. } => {
            let s = sigma_min(&jacobian(spec, &x));
            Some(Candidate { x, singular: false, sigma_min: s })
        }
        NewtonOutcome::Singular { x, sigma_min, .. } => Some(Candidate { x, singular: true, sigma_min }),
        NewtonOutcome::Diverged { .. } => None,
    }
}

/// `L⁻ᵀ` for the Cholesky factor `G = L·Lᵀ`, mapping orthonormal coordinates to the basis.
fn orthonormal_frame(spec: &AlgebraSpec) -> Result<DMatrix<f64>> {
    let n = spec.dim();
    let g = DMatrix::from_row_slice(n, n, spec.gram_f64());
    let l = g.cholesky().ok_or_else(|| Error::Certification("Gram matrix is not positive definite".into()))?.l();
    l.transpose().try_inverse().ok_or_else(|| Error::Certification("singular Cholesky factor".into()))
}

/// Damped Newton from random starts in a box of Gram-orthonormal coordinates
/// (so that the box scale does not depend on how the basis vectors are normed).
pub struct MultistartNewton;

impl IdempotentSearch for MultistartNewton {
    fn name(&self) -> &'static str {
        "multistart-newton"
    }

    fn describe(&self) -> &'static str {
        "damped Newton from 200·2ⁿ seeded random starts plus the closed forms"
    }

    fn search(&self, spec: &AlgebraSpec, cfg: &SearchConfig) -> Result<Vec<Candidate>> {
        let n = spec.dim();
        let frame = orthonormal_frame(spec)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut starts: Vec<Vec<f64>> = cfg.seeds.clone();
        starts.extend((0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()));
        for _ in 0..cfg.start_count(n) {
            let y = DVector::from_fn(n, |_, _| rng.gen_range(-START_BOX..START_BOX));
            starts.push((&frame * y).iter().copied().collect());
        }
        let found: Vec<Option<Candidate>> =
            starts.par_iter().map(|s| candidate_of(spec, newton_search(spec, s, cfg.max_iter, cfg.tol))).collect();
        let mut out = Vec::new();
        for c in found.into_iter().flatten() {
            push_unique(&mut out, c, cfg.dedup_tol);
        }
        Ok(out)
    }
}

/// Total-degree homotopy `H(x, t) = (1 − t)·γ·G(x) + t·F(x)` with
/// `G_i = x_i² − 1`, tracked from the `2ⁿ` start points `{±1}ⁿ`; real
/// endpoints are polished by Newton.
pub struct Homotopy;

const GAMMA: Complex64 = Complex64::new(0.6, 0.8);

fn c_product(spec: &AlgebraSpec, u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let n = spec.dim();
    let t = spec.table_f64();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        for j in 0..n {
            let p = u[i] * v[j];
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..n {
                let c = t[(i * n + j) * n + k];
                if c != 0.0 {
                    out[k] += p * c;
                }
            }
        }
    }
    out
}

/// `(H, ∂H/∂x, ∂H/∂t)` at `(x, t)`.
fn h_eval(spec: &AlgebraSpec, x: &[Complex64], t: f64) -> (DVector<Complex64>, DMatrix<Complex64>, DVector<Complex64>) {
    let n = spec.dim();
    let tab = spec.table_f64();
    let one = Complex64::new(1.0, 0.0);
    let xx = c_product(spec, x, x);
    let f: Vec<Complex64> = (0..n).map(|k| xx[k] - x[k]).collect();
    let g: Vec<Complex64> = (0..n).map(|k| x[k] * x[k] - one).collect();
    let h = DVector::from_fn(n, |k, _| GAMMA * g[k] * (1.0 - t) + f[k] * t);
    let ht = DVector::from_fn(n, |k, _| f[k] - GAMMA * g[k]);
    let mut jf = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for i in 0..n {
        for b in 0..n {
            for k in 0..n {
                let c = tab[(i * n + b) * n + k];
                if c != 0.0 {
                    jf[(k, b)] += x[i] * (2.0 * c);
                }
            }
        }
    }
    let jx = DMatrix::from_fn(n, n, |a, b| {
        let jfa = jf[(a, b)] - if a == b { one } else { Complex64::new(0.0, 0.0) };
        let jga = if a == b { GAMMA * x[a] * 2.0 } else { Complex64::new(0.0, 0.0) };
        jga * (1.0 - t) + jfa * t
    });
    (h, jx, ht)
}

fn c_norm(v: &[Complex64]) -> f64 {
    v.iter().fold(0.0, |m, c| m.max(c.norm()))
}

/// Tracks one path from `t = 0` to `t = 1`; `None` if it diverges or stalls.
fn track(spec: &AlgebraSpec, start: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let mut x = start;
    let mut t = 0.0f64;
    let mut dt = 0.01f64;
    while t < 1.0 {
        let step = dt.min(1.0 - t);
        // Euler predictor: ẋ = −H_x⁻¹ H_t
        let (_, jx, ht) = h_eval(spec, &x, t);
        let v = jx.lu().solve(&ht)?;
        let mut y: Vec<Complex64> = x.iter().zip(v.iter()).map(|(a, b)| a - b * step).collect();
        let t1 = t + step;
        let mut ok = false;
        for _ in 0..6 {
            let (h, jx, _) = h_eval(spec, &y, t1);
            let Some(d) = jx.lu().solve(&h) else { break };
            for (a, b) in y.iter_mut().zip(d.iter()) {
                *a -= b;
            }
            if c_norm(d.as_slice()) < 1e-10 * (1.0 + c_norm(&y)) {
                ok = true;
                break;
            }
        }
        if ok && c_norm(&y) < 1e8 {
            x = y;
            t = t1;
            dt = (dt * 1.5).min(0.05);
        } else {
            dt *= 0.5;
            if dt < 1e-12 {
                return None;
            }
        }
        if c_norm(&x) > 1e7 {
            return None;
        }
    }
    Some(x)
}

impl IdempotentSearch for Homotopy {
    fn name(&self) -> &'static str {
        "homotopy"
    }

    fn describe(&self) -> &'static str {
        "total-degree homotopy over the 2ⁿ start points {±1}ⁿ, real endpoints polished by Newton"
    }

    fn search(&self, spec: &AlgebraSpec, cfg: &SearchConfig) -> Result<Vec<Candidate>> {
        let n = spec.dim();
        let ends: Vec<Option<Vec<Complex64>>> = (0u64..1 << n)
            .into_par_iter()
            .map(|mask| {
                let s = (0..n).map(|i| Complex64::new(if mask >> i & 1 == 1 { -1.0 } else { 1.0 }, 0.0)).collect();
                track(spec, s)
            })
            .collect();
        let mut out = Vec::new();
        for e in ends.into_iter().flatten() {
            let scale = 1.0 + c_norm(&e);
            if e.iter().any(|c| c.im.abs() > 1e-6 * scale) {
                continue;
            }
            let re: Vec<f64> = e.iter().map(|c| c.re).collect();
            if let Some(c) = candidate_of(spec, newton_search(spec, &re, cfg.max_iter, cfg.tol)) {
                push_unique(&mut out, c, cfg.dedup_tol);
            }
        }
        for s in &cfg.seeds {
            if let Some(c) = candidate_of(spec, newton_search(spec, s, cfg.max_iter, cfg.tol)) {
                push_unique(&mut out, c, cfg.dedup_tol);
            }
        }
        Ok(out)
    }
}

/// Named search strategies; the first registered is the default.
pub struct SearchRegistry {
    entries: Vec<Box<dyn IdempotentSearch>>,
}

impl Default for SearchRegistry {
    fn default() -> Self {
        let mut r = SearchRegistry { entries: Vec::new() };
        r.register(Box::new(MultistartNewton));
        r.register(Box::new(Homotopy));
        r
    }
}

impl SearchRegistry {
    pub fn register(&mut self, s: Box<dyn IdempotentSearch>) {
        self.entries.retain(|e| e.name() != s.name());
        self.entries.push(s);
    }

    pub fn get(&self, name: &str) -> Result<&dyn IdempotentSearch> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownStrategy(name.into(), self.names().join(", ")))
    }

    pub fn default_strategy(&self) -> &dyn IdempotentSearch {
        self.entries[0].as_ref()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn IdempotentSearch> {
        self.entries.iter().map(|e| e.as_ref())
    }
}

/// Whether a candidate's Jacobian drop is genuine (used by callers that
/// re-check candidates found by other means).
pub fn is_singular(spec: &AlgebraSpec, x: &[f64]) -> bool {
    sigma_min(&jacobian(spec, x)) < SINGULAR_TOL
}

/// Max-norm distance.
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    max_norm(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())
}
