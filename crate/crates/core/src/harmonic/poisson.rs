use std::f64::consts::PI;

use crate::domain::{ball, Point, SiteSet, WiredGraph};
use crate::error::{Error, Result};

use super::green::{green_column, GreenOperator};
use super::potential::PotentialKernel;

/// Exit distribution `Π_U(x, ·)` over the outer boundary of `U`.
#[derive(Debug, Clone)]
pub struct PoissonKernel {
    pub center: Point,
    pub targets: Vec<Point>,
    pub probs: Vec<f64>,
}

impl PoissonKernel {
    /// `Σ_z Π(x, z) f(z)`.
    pub fn average<F: Fn(Point) -> f64>(&self, f: F) -> f64 {
        self.targets
            .iter()
            .zip(&self.probs)
            .map(|(&z, &p)| p * f(z))
            .sum()
    }

    pub fn prob(&self, z: Point) -> f64 {
        self.targets
            .iter()
            .position(|&t| t == z)
            .map_or(0.0, |i| self.probs[i])
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// Builds `Π_U(x, ·)` from the Green row `G_U(x, ·)`: an exit through `z`
/// happens along an edge `y ~ z`, taken at rate `1/(2π)`, so
/// `Π_U(x, z) = (1/2π) Σ_{y ∈ U, y ~ z} G_U(x, y)`.
fn kernel_from_row(sites: &SiteSet, center: Point, row: &[f64]) -> PoissonKernel {
    let targets = sites.outer_boundary();
    let probs = targets
        .iter()
        .map(|z| {
            z.neighbors()
                .iter()
                .filter_map(|&y| sites.index_of(y))
                .map(|i| row[i])
                .sum::<f64>()
                / (2.0 * PI)
        })
        .collect();
    PoissonKernel {
        center,
        targets,
        probs,
    }
}

/// `Π_U(x, ·)` by one linear solve.
pub fn poisson_kernel(sites: &SiteSet, x: Point) -> Result<PoissonKernel> {
    let i = sites.index_of(x).ok_or(Error::NotInterior(x.x, x.y))?;
    let graph = WiredGraph::from_sites(sites.clone())?;
    let row = green_column(&graph, i as u32)?;
    Ok(kernel_from_row(sites, x, &row))
}

/// `Π_U(x, ·)` reusing a dense Green matrix of `U`.
pub fn poisson_kernel_from_green(green: &GreenOperator, x: Point) -> Result<PoissonKernel> {
    let i = green
        .sites()
        .index_of(x)
        .ok_or(Error::NotInterior(x.x, x.y))?;
    Ok(kernel_from_row(green.sites(), x, &green.row(i)))
}

/// Exit distribution of `B(x;k)` started from its centre.
pub fn ball_poisson_kernel(x: Point, k: f64) -> Result<PoissonKernel> {
    poisson_kernel(&ball(x, k), x)
}

/// Harmonic average `f̄(x;k) = Σ_z Π_{B(x;k)}(x, z) f(z)`.
pub fn harmonic_average<F: Fn(Point) -> f64>(f: F, x: Point, k: f64) -> Result<f64> {
    Ok(ball_poisson_kernel(x, k)?.average(f))
}

/// `|G_U(x,y) - Σ_{z ∈ ∂U} [a(z-x) - a(y-x)] Π_U(y,z)|`.
pub fn relation_check(
    green: &GreenOperator,
    kernel: &PotentialKernel,
    x: Point,
    y: Point,
) -> Result<f64> {
    if !green.sites().contains(x) {
        return Err(Error::NotInterior(x.x, x.y));
    }
    let exit = poisson_kernel_from_green(green, y)?;
    let a_yx = kernel.value(y - x);
    let sum = exit.average(|z| kernel.value(z - x) - a_yx);
    Ok((green.value(x, y) - sum).abs())
}

/// Probability that an excursion from `∂` hits `x` before returning:
/// `2π / (deg(∂) G(x, x))`.
pub fn hitting_prob_boundary(graph: &WiredGraph, green: &GreenOperator, x: Point) -> Result<f64> {
    let i = green
        .sites()
        .index_of(x)
        .ok_or(Error::NotInterior(x.x, x.y))?;
    Ok(2.0 * PI / (graph.deg_boundary() as f64 * green.get(i, i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{green, green_of_sites};

    fn sites(points: &[(i64, i64)]) -> SiteSet {
        points.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn block() -> SiteSet {
        let mut pts = Vec::new();
        for y in -1..=1 {
            for x in -1..=1 {
                pts.push((x, y));
            }
        }
        sites(&pts)
    }

    #[test]
    fn single_site_kernel_is_uniform() {
        let k = poisson_kernel(&sites(&[(0, 0)]), Point::ORIGIN).unwrap();
        assert_eq!(k.targets.len(), 4);
        for p in &k.probs {
            assert!((p - 0.25).abs() < 1e-14);
        }
    }

    #[test]
    fn two_site_kernel() {
        let k = poisson_kernel(&sites(&[(0, 0), (1, 0)]), Point::ORIGIN).unwrap();
        assert!((k.prob(Point::new(-1, 0)) - 4.0 / 15.0).abs() < 1e-13);
        assert!((k.total() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn block_kernels_are_probability_vectors() {
        let u = block();
        for x in u.iter() {
            let k = poisson_kernel(&u, x).unwrap();
            assert!(k.probs.iter().all(|&p| p >= 0.0));
            assert!((k.total() - 1.0).abs() < 1e-12);
        }
        assert_eq!(
            poisson_kernel(&u, Point::new(2, 0)).unwrap_err(),
            Error::NotInterior(2, 0)
        );
    }

    #[test]
    fn harmonic_average_of_constants_and_indicators() {
        let x = Point::new(2, -1);
        let c = harmonic_average(|_| 3.5, x, 1.5).unwrap();
        assert!((c - 3.5).abs() < 1e-12);
        let kernel = ball_poisson_kernel(x, 1.5).unwrap();
        let z0 = kernel.targets[3];
        let ind = harmonic_average(|z| (z == z0) as u8 as f64, x, 1.5).unwrap();
        assert!((ind - kernel.probs[3]).abs() < 1e-15);
    }

    #[test]
    fn harmonic_average_reproduces_harmonic_functions() {
        // harmonic extension of arbitrary boundary data by a direct solve
        let x = Point::new(0, 0);
        let k = 2.0;
        let u = ball(x, k);
        let boundary = u.outer_boundary();
        let data = |z: Point| ((z.x * 7 + z.y * 3) % 5) as f64 - 0.3 * z.y as f64;
        let graph = WiredGraph::from_sites(u.clone()).unwrap();
        let mut rhs = vec![0.0; u.len()];
        for (i, p) in u.iter().enumerate() {
            for q in p.neighbors() {
                if !u.contains(q) {
                    rhs[i] += data(q);
                }
            }
        }
        assert!(boundary.iter().all(|z| !u.contains(*z)));
        let f = crate::harmonic::solver::solve_laplacian(&graph, &rhs).unwrap();
        let centre = f[u.index_of(x).unwrap()];
        let avg = harmonic_average(data, x, k).unwrap();
        assert!((centre - avg).abs() < 1e-10);
    }

    #[test]
    fn relation_on_small_domains() {
        let a = PotentialKernel::new();
        let g = green_of_sites(&sites(&[(0, 0)])).unwrap();
        assert!(relation_check(&g, &a, Point::ORIGIN, Point::ORIGIN).unwrap() < 1e-8);
        let g = green_of_sites(&sites(&[(0, 0), (1, 0)])).unwrap();
        for x in g.sites().iter() {
            for y in g.sites().iter() {
                assert!(relation_check(&g, &a, x, y).unwrap() < 1e-6);
            }
        }
        let g = green_of_sites(&block()).unwrap();
        let r1 = relation_check(&g, &a, Point::new(1, 0), Point::new(0, 1)).unwrap();
        let r2 = relation_check(&g, &a, Point::new(0, 1), Point::new(-1, 0)).unwrap();
        assert!(r1 < 1e-8 && (r1 - r2).abs() < 1e-10);
    }

    #[test]
    fn hitting_probabilities() {
        let gr = WiredGraph::from_sites(sites(&[(0, 0)])).unwrap();
        let g = green(&gr).unwrap();
        assert!((hitting_prob_boundary(&gr, &g, Point::ORIGIN).unwrap() - 1.0).abs() < 1e-14);
        let gr = WiredGraph::from_sites(sites(&[(0, 0), (1, 0)])).unwrap();
        let g = green(&gr).unwrap();
        assert!((hitting_prob_boundary(&gr, &g, Point::ORIGIN).unwrap() - 5.0 / 8.0).abs() < 1e-12);
    }
}
