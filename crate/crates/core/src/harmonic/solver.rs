//! Conjugate-gradient solves for the Dirichlet Laplacian `4I - A` of a site
//! set, where `A` is the interior adjacency matrix.

use crate::domain::{VertexId, WiredGraph, BOUNDARY};
use crate::error::{Error, Result};

/// Relative residual targeted by [`solve_laplacian`].
pub const CG_TOLERANCE: f64 = 1e-14;

/// `out = (4I - A) v`.
pub fn apply_laplacian(graph: &WiredGraph, v: &[f64], out: &mut [f64]) {
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 4.0 * v[i];
        for &w in graph.neighbors(i as VertexId) {
            if w != BOUNDARY {
                acc -= v[w as usize];
            }
        }
        *o = acc;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves `(4I - A) x = b` by conjugate gradients.
pub fn solve_laplacian(graph: &WiredGraph, b: &[f64]) -> Result<Vec<f64>> {
    let n = graph.len();
    assert_eq!(b.len(), n);
    let b_norm = dot(b, b).sqrt();
    let mut x = vec![0.0; n];
    if b_norm == 0.0 {
        return Ok(x);
    }
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut ap = vec![0.0; n];
    let mut rr = dot(&r, &r);
    let max_iter = 20 * n + 1000;
    for _ in 0..max_iter {
        if rr.sqrt() <= CG_TOLERANCE * b_norm {
            return Ok(x);
        }
        apply_laplacian(graph, &p, &mut ap);
        let alpha = rr / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rr_next = dot(&r, &r);
        let beta = rr_next / rr;
        rr = rr_next;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    // recompute the true residual; CG can stall at the rounding floor
    apply_laplacian(graph, &x, &mut ap);
    let residual = ap
        .iter()
        .zip(b)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
        / b_norm;
    if residual <= 1e3 * CG_TOLERANCE {
        Ok(x)
    } else {
        Err(Error::NoConvergence {
            iterations: max_iter,
            residual,
        })
    }
}
