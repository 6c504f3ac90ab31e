use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::domain::{Point, SiteSet, VertexId, WiredGraph, BOUNDARY};
use crate::error::{Error, Result};
use crate::parallel::{map_trials, Execution};

use super::solver::solve_laplacian;

/// Largest domain for which [`green`] builds the dense matrix.
pub const DEFAULT_DENSE_CAP: usize = 5000;

/// The Green function `G_U(x, y)` of the walk with edge rate `1/(2π)` killed
/// on leaving `U`: the expected local time at `y` started from `x`.
///
/// This is `π/2` times the inverse of the negative discrete Laplacian, i.e.
/// `G = 2π (4I - A)^{-1}`.
#[derive(Debug, Clone)]
pub struct GreenOperator {
    sites: SiteSet,
    matrix: DMatrix<f64>,
}

impl GreenOperator {
    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn sites(&self) -> &SiteSet {
        &self.sites
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.matrix[(x, y)]
    }

    /// `G(p, q)`, zero when either point lies outside the domain.
    pub fn value(&self, p: Point, q: Point) -> f64 {
        match (self.sites.index_of(p), self.sites.index_of(q)) {
            (Some(i), Some(j)) => self.matrix[(i, j)],
            _ => 0.0,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.matrix[(i, i)]).collect()
    }

    pub fn row(&self, x: usize) -> Vec<f64> {
        self.matrix.row(x).iter().copied().collect()
    }

    /// Largest violation of `(1/4) Σ_{w~y} G(x,w) - G(x,y) = -(π/2) 1{x=y}`
    /// relative to `π/2`, with `G(x, ·) = 0` off the domain.
    pub fn dirichlet_residual(&self, graph: &WiredGraph) -> f64 {
        let n = self.len();
        let mut worst: f64 = 0.0;
        for x in 0..n {
            for y in 0..n {
                let mut avg = 0.0;
                for &w in graph.neighbors(y as VertexId) {
                    if w != BOUNDARY {
                        avg += self.matrix[(x, w as usize)];
                    }
                }
                let lhs = 0.25 * avg - self.matrix[(x, y)];
                let rhs = if x == y { -PI / 2.0 } else { 0.0 };
                worst = worst.max((lhs - rhs).abs());
            }
        }
        worst / (PI / 2.0)
    }
}

fn laplacian_matrix(graph: &WiredGraph) -> DMatrix<f64> {
    let n = graph.len();
    let mut m = DMatrix::zeros(n, n);
    for v in 0..n {
        m[(v, v)] = 4.0;
        for &w in graph.neighbors(v as VertexId) {
            if w != BOUNDARY {
                m[(v, w as usize)] -= 1.0;
            }
        }
    }
    m
}

/// Dense Green matrix with the default size cap.
pub fn green(graph: &WiredGraph) -> Result<GreenOperator> {
    green_with_cap(graph, DEFAULT_DENSE_CAP)
}

pub fn green_with_cap(graph: &WiredGraph, cap: usize) -> Result<GreenOperator> {
    let n = graph.len();
    if n > cap {
        return Err(Error::DenseCapExceeded { size: n, cap });
    }
    let chol = laplacian_matrix(graph)
        .cholesky()
        .ok_or(Error::NotPositiveDefinite)?;
    let mut g = chol.inverse() * (2.0 * PI);
    // enforce exact symmetry
    for i in 0..n {
        for j in (i + 1)..n {
            let s = 0.5 * (g[(i, j)] + g[(j, i)]);
            g[(i, j)] = s;
            g[(j, i)] = s;
        }
    }
    Ok(GreenOperator {
        sites: graph.sites().clone(),
        matrix: g,
    })
}

/// Dense Green matrix of an arbitrary finite site set.
pub fn green_of_sites(sites: &SiteSet) -> Result<GreenOperator> {
    green(&WiredGraph::from_sites(sites.clone())?)
}

/// Column `G(·, y)` by an iterative solve; usable on domains above the dense
/// cap. By symmetry this is also the row `G(y, ·)`.
pub fn green_column(graph: &WiredGraph, y: VertexId) -> Result<Vec<f64>> {
    let mut rhs = vec![0.0; graph.len()];
    rhs[y as usize] = 2.0 * PI;
    solve_laplacian(graph, &rhs)
}

/// Several columns, solved independently and returned in input order.
pub fn green_columns(
    graph: &WiredGraph,
    columns: &[VertexId],
    exec: Execution,
) -> Result<Vec<Vec<f64>>> {
    map_trials(exec, columns.len(), |i| green_column(graph, columns[i]))
        .into_iter()
        .collect()
}

/// Diagonal entry `G(y, y)` by an iterative solve.
pub fn green_diagonal_entry(graph: &WiredGraph, y: VertexId) -> Result<f64> {
    Ok(green_column(graph, y)?[y as usize])
}
