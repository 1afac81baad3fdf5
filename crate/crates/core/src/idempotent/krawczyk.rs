//! Krawczyk certification of idempotents: a box `X` with `K(X) ⊂ int X`
//! contains exactly one solution of `x·x − x = 0`.

use nalgebra::DMatrix;

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::scalar::Interval;

/// A box proven to contain a unique idempotent.
#[derive(Debug, Clone)]
pub struct CertifiedBall {
    pub center: Vec<f64>,
    /// Tight enclosure of the idempotent (the Krawczyk image, inside the box).
    pub enclosure: Vec<Interval>,
    /// Max-norm radius of `enclosure` around `center`.
    pub radius: f64,
}

fn table_intervals(spec: &AlgebraSpec) -> Vec<Interval> {
    let n = spec.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            out.extend(spec.basis_product(i, j).iter().map(|c| c.to_interval()));
        }
    }
    out
}

/// Krawczyk test on the box `x` (midpoints are the expansion point).
pub fn krawczyk_box(spec: &AlgebraSpec, x: &[Interval]) -> Result<CertifiedBall> {
    let n = spec.dim();
    if x.len() != n {
        return Err(Error::Dimension { expected: n, got: x.len() });
    }
    let t = table_intervals(spec);
    let c: Vec<f64> = x.iter().map(|b| b.mid).collect();
    let cp: Vec<Interval> = c.iter().map(|&v| Interval::point(v)).collect();

    // F(c) enclosed
    let mut f = vec![Interval::ZERO; n];
    for i in 0..n {
        for j in 0..n {
            let p = cp[i] * cp[j];
            if p.mid == 0.0 && p.rad == 0.0 {
                continue;
            }
            for k in 0..n {
                let tk = t[(i * n + j) * n + k];
                if tk.mid != 0.0 || tk.rad != 0.0 {
                    f[k] = f[k] + p * tk;
                }
            }
        }
    }
    for k in 0..n {
        f[k] = f[k] - cp[k];
    }

    // preconditioner Y ≈ J(c)^{-1}
    let jc = spec.adjoint_f64(&c);
    let jm = DMatrix::from_fn(n, n, |a, b| 2.0 * jc[a * n + b] - if a == b { 1.0 } else { 0.0 });
    let y = jm.try_inverse().ok_or_else(|| Error::Certification("singular Jacobian at the center".into()))?;

    // J(X) = 2 ad_X − I, column b holds X·b_b
    let mut jx = vec![Interval::ZERO; n * n];
    for i in 0..n {
        for b in 0..n {
            for k in 0..n {
                let tk = t[(i * n + b) * n + k];
                if tk.mid != 0.0 || tk.rad != 0.0 {
                    jx[k * n + b] = jx[k * n + b] + x[i] * tk;
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let two = Interval::point(2.0);
            jx[a * n + b] = two * jx[a * n + b] - if a == b { Interval::point(1.0) } else { Interval::ZERO };
        }
    }

    let dx: Vec<Interval> = x.iter().map(|b| Interval::new(0.0, b.rad)).collect();
    let mut k_img = Vec::with_capacity(n);
    for a in 0..n {
        let mut acc = cp[a];
        for k in 0..n {
            acc = acc - Interval::point(y[(a, k)]) * f[k];
        }
        for b in 0..n {
            let mut m = if a == b { Interval::point(1.0) } else { Interval::ZERO };
            for k in 0..n {
                m = m - Interval::point(y[(a, k)]) * jx[k * n + b];
            }
            acc = acc + m * dx[b];
        }
        k_img.push(acc);
    }
    for a in 0..n {
        if !x[a].strictly_contains(&k_img[a]) {
            return Err(Error::Certification(format!(
                "no contraction in coordinate {a}: K = {} not inside X = {}",
                k_img[a], x[a]
            )));
        }
    }
    let radius = k_img
        .iter()
        .zip(&c)
        .map(|(k, &m)| (k.mid - m).abs() + k.rad)
        .fold(0.0, f64::max);
    Ok(CertifiedBall { center: c, enclosure: k_img, radius })
}

/// Certify the ball of max-norm radius `radius` around `approx`.
pub fn certify(spec: &AlgebraSpec, approx: &[f64], radius: f64) -> Result<CertifiedBall> {
    let x: Vec<Interval> = approx.iter().map(|&m| Interval::new(m, radius)).collect();
    krawczyk_box(spec, &x)
}

/// Certify an element whose coefficients are balls (exact coefficients are
/// widened slightly so that strict containment is possible).
pub fn certify_ball(x: &Element) -> Result<CertifiedBall> {
    let b: Vec<Interval> = x
        .coeffs()
        .iter()
        .map(|c| {
            let i = c.to_interval();
            Interval::new(i.mid, i.rad.max(1e-14))
        })
        .collect();
    krawczyk_box(x.algebra(), &b)
}
