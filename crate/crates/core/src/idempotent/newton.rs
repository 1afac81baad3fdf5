//! Damped Newton iteration for `F(x) = x·x − x = 0` in `f64`.

use nalgebra::{DMatrix, DVector};

use crate::algebra::AlgebraSpec;

pub const DEFAULT_TOL: f64 = 1e-13;
pub const DEFAULT_MAX_ITER: usize = 100;
/// Smallest singular value of the Jacobian below which a root is flagged singular.
pub const SINGULAR_TOL: f64 = 1e-7;
const DIVERGENCE_NORM: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub enum NewtonOutcome {
    Converged { x: Vec<f64>, iterations: usize },
    /// Converged to a root whose Jacobian is (numerically) singular.
    Singular { x: Vec<f64>, iterations: usize, sigma_min: f64 },
    Diverged { iterations: usize },
}

impl NewtonOutcome {
    pub fn root(&self) -> Option<&[f64]> {
        match self {
            NewtonOutcome::Converged { x, .. } | NewtonOutcome::Singular { x, .. } => Some(x),
            NewtonOutcome::Diverged { .. } => None,
        }
    }
}

pub fn residual(spec: &AlgebraSpec, x: &[f64]) -> Vec<f64> {
    spec.product_f64(x, x).iter().zip(x).map(|(a, b)| a - b).collect()
}

pub fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// `J(x) = 2·ad_x − I`.
pub fn jacobian(spec: &AlgebraSpec, x: &[f64]) -> DMatrix<f64> {
    let n = spec.dim();
    let ad = spec.adjoint_f64(x);
    DMatrix::from_fn(n, n, |i, j| 2.0 * ad[i * n + j] - if i == j { 1.0 } else { 0.0 })
}

pub fn sigma_min(j: &DMatrix<f64>) -> f64 {
    j.clone().svd(false, false).singular_values.iter().fold(f64::INFINITY, |m, &s| m.min(s))
}

/// Minimal-norm Newton step `J⁺·F`; works on solution curves where `J` drops rank.
fn step(j: &DMatrix<f64>, f: &[f64]) -> Option<DVector<f64>> {
    let svd = j.clone().svd(true, true);
    let smax = svd.singular_values.iter().fold(0.0f64, |m, &s| m.max(s));
    svd.solve(&DVector::from_column_slice(f), 1e-10 * smax.max(1.0)).ok()
}

/// Damped Newton with backtracking on the residual max-norm.
pub fn newton_search(spec: &AlgebraSpec, start: &[f64], max_iter: usize, tol: f64) -> NewtonOutcome {
    let mut x = start.to_vec();
    let mut f = residual(spec, &x);
    let mut fn_ = max_norm(&f);
    for it in 0..=max_iter {
        if fn_ < tol {
            // one polishing step past the tolerance where it still helps
            let j = jacobian(spec, &x);
            if let Some(dx) = step(&j, &f) {
                let y: Vec<f64> = x.iter().zip(dx.iter()).map(|(a, b)| a - b).collect();
                let fy = residual(spec, &y);
                if max_norm(&fy) < fn_ {
                    x = y;
                }
            }
            let s = sigma_min(&jacobian(spec, &x));
            return if s < SINGULAR_TOL {
                NewtonOutcome::Singular { x, iterations: it, sigma_min: s }
            } else {
                NewtonOutcome::Converged { x, iterations: it }
            };
        }
        if it == max_iter || max_norm(&x) > DIVERGENCE_NORM || !fn_.is_finite() {
            break;
        }
        let j = jacobian(spec, &x);
        let Some(dx) = step(&j, &f) else { break };
        let mut alpha = 1.0;
        loop {
            let y: Vec<f64> = x.iter().zip(dx.iter()).map(|(a, b)| a - alpha * b).collect();
            let fy = residual(spec, &y);
            let ny = max_norm(&fy);
            if ny < fn_ || alpha < 1.0 / 64.0 {
                x = y;
                f = fy;
                fn_ = ny;
                break;
            }
            alpha *= 0.5;
        }
    }
    NewtonOutcome::Diverged { iterations: max_iter }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, NsType};

    #[test]
    fn exact_root_takes_zero_iterations() {
        let e = build(NsType::A2).unwrap();
        match newton_search(e.spec(), &[1.0, 0.0, 0.0], 50, DEFAULT_TOL) {
            NewtonOutcome::Converged { x, iterations } => {
                assert_eq!(iterations, 0);
                assert_eq!(x, vec![1.0, 0.0, 0.0]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn basin_of_a_t() {
        let e = build(NsType::A2).unwrap();
        let o = newton_search(e.spec(), &[1.1, 0.0, 0.0], 50, DEFAULT_TOL);
        let x = o.root().unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && x[1].abs() < 1e-12 && x[2].abs() < 1e-12, "{o:?}");
    }
}
