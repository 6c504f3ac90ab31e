//! Discrete Gaussian free field with covariance `½G`, sampled exactly from a
//! dense Cholesky factor.

use std::sync::Arc;

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::domain::{Point, SiteSet};
use crate::error::{Error, Result};
use crate::harmonic::{green_of_sites, poisson_kernel_from_green, GreenOperator};

/// `m_n = √2 n - (3 / (4√2)) log n`.
pub fn centering(n: f64) -> f64 {
    let s2 = std::f64::consts::SQRT_2;
    s2 * n - 3.0 / (4.0 * s2) * n.ln()
}

/// Lower-triangular `L` with `L Lᵀ = ½G`, rows in the site order of `G`.
#[derive(Debug, Clone)]
pub struct CovarianceFactorization {
    sites: Arc<SiteSet>,
    lower: DMatrix<f64>,
}

impl CovarianceFactorization {
    pub fn new(green: &GreenOperator) -> Result<Self> {
        let half = green.matrix() * 0.5;
        let chol = Cholesky::new(half).ok_or(Error::NotPositiveDefinite)?;
        Ok(CovarianceFactorization {
            sites: Arc::new(green.sites().clone()),
            lower: chol.l(),
        })
    }

    pub fn sites(&self) -> &SiteSet {
        &self.sites
    }

    pub fn lower(&self) -> &DMatrix<f64> {
        &self.lower
    }

    pub fn len(&self) -> usize {
        self.lower.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Largest entrywise difference between `L Lᵀ` and `½G`.
    pub fn roundtrip_residual(&self, green: &GreenOperator) -> f64 {
        let product = &self.lower * self.lower.transpose();
        (product - green.matrix() * 0.5).amax()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldSample {
        let z = DVector::from_fn(self.len(), |_, _| rng.sample::<f64, _>(StandardNormal));
        let h = &self.lower * z;
        FieldSample {
            sites: Arc::clone(&self.sites),
            values: h.as_slice().to_vec(),
            shift: 0.0,
        }
    }
}

/// One realisation of a field on the sites of a domain, plus a constant
/// shift (`m_n` for `f_n = h' + m_n`).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    sites: Arc<SiteSet>,
    pub values: Vec<f64>,
    pub shift: f64,
}

impl FieldSample {
    pub fn sites(&self) -> &SiteSet {
        &self.sites
    }

    #[inline]
    pub fn value(&self, v: usize) -> f64 {
        self.values[v] + self.shift
    }

    /// Value at `p`; the unshifted field vanishes off the domain.
    pub fn at(&self, p: Point) -> f64 {
        self.sites.index_of(p).map_or(0.0, |i| self.value(i))
    }

    pub fn shifted(mut self, shift: f64) -> Self {
        self.shift = shift;
        self
    }

    /// `{x ∈ bulk : f(x)² ≤ u}`.
    pub fn level_set(&self, u: f64, bulk: &SiteSet) -> SiteSet {
        bulk.iter()
            .filter(|&p| {
                self.sites
                    .index_of(p)
                    .is_some_and(|i| self.value(i).powi(2) <= u)
            })
            .collect()
    }
}

/// Exact sample with covariance `½G`; factorises `G` on every call.
pub fn sample_dgff<R: Rng + ?Sized>(green: &GreenOperator, rng: &mut R) -> Result<FieldSample> {
    Ok(CovarianceFactorization::new(green)?.sample(rng))
}

/// Covariance profile of the decomposition `h_U = φ_{U,V} + h_V` on `V`.
#[derive(Debug, Clone)]
pub struct BindingFieldStats {
    pub sites: Vec<Point>,
    pub var_u: Vec<f64>,
    pub var_v: Vec<f64>,
    pub var_binding: Vec<f64>,
    /// `Cov(φ_{U,V}(x), φ_{U,V}(y))` for `x, y ∈ V`.
    pub binding_covariance: DMatrix<f64>,
    /// Largest `|½G_U(x,x) - Var φ(x) - ½G_V(x,x)|`.
    pub variance_residual: f64,
    /// Largest `|½G_U(x,y) - Cov φ(x,y) - ½G_V(x,y)|` over `x, y ∈ V`.
    pub covariance_residual: f64,
    pub min_eigenvalue: f64,
}

/// Computes the three covariance profiles of the Gibbs–Markov decomposition
/// by covariance algebra: `φ_{U,V}(x) = Σ_z Π_V(x,z) h_U(z)`.
pub fn gibbs_markov_check(u: &SiteSet, v: &SiteSet) -> Result<BindingFieldStats> {
    if !v.is_subset(u) {
        return Err(Error::NotSubset);
    }
    let gu = green_of_sites(u)?;
    let gv = green_of_sites(v)?;
    let points = v.points().to_vec();
    let boundary = v.outer_boundary();
    let mut kernel = DMatrix::zeros(points.len(), boundary.len());
    for (i, &x) in points.iter().enumerate() {
        let pk = poisson_kernel_from_green(&gv, x)?;
        debug_assert_eq!(pk.targets, boundary);
        for (j, &p) in pk.probs.iter().enumerate() {
            kernel[(i, j)] = p;
        }
    }
    let cov_boundary = DMatrix::from_fn(boundary.len(), boundary.len(), |a, b| {
        0.5 * gu.value(boundary[a], boundary[b])
    });
    let binding = &kernel * cov_boundary * kernel.transpose();
    let binding = (&binding + binding.transpose()) * 0.5;

    let mut covariance_residual: f64 = 0.0;
    for (i, &x) in points.iter().enumerate() {
        for (j, &y) in points.iter().enumerate() {
            let r = 0.5 * gu.value(x, y) - binding[(i, j)] - 0.5 * gv.get(i, j);
            covariance_residual = covariance_residual.max(r.abs());
        }
    }
    let var_u: Vec<f64> = points.iter().map(|&x| 0.5 * gu.value(x, x)).collect();
    let var_v: Vec<f64> = (0..points.len()).map(|i| 0.5 * gv.get(i, i)).collect();
    let var_binding: Vec<f64> = (0..points.len()).map(|i| binding[(i, i)]).collect();
    let variance_residual = (0..points.len())
        .map(|i| (var_u[i] - var_binding[i] - var_v[i]).abs())
        .fold(0.0, f64::max);
    let min_eigenvalue = SymmetricEigen::new(binding.clone())
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok(BindingFieldStats {
        sites: points,
        var_u,
        var_v,
        var_binding,
        binding_covariance: binding,
        variance_residual,
        covariance_residual,
        min_eigenvalue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::WiredGraph;
    use crate::harmonic::green;
    use crate::rng;
    use crate::stats::{covariance_ci, mean_ci};
    use std::f64::consts::PI;

    fn sites(points: &[(i64, i64)]) -> SiteSet {
        points.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn block(r: i64) -> SiteSet {
        (-r..=r)
            .flat_map(|y| (-r..=r).map(move |x| Point::new(x, y)))
            .collect()
    }

    #[test]
    fn centering_values() {
        assert!((centering(1.0) - 2f64.sqrt()).abs() < 1e-15);
        let e = std::f64::consts::E;
        assert!((centering(e) - (2f64.sqrt() * e - 3.0 / (4.0 * 2f64.sqrt()))).abs() < 1e-14);
        assert!((centering(e) - 3.313_901).abs() < 1e-6);
        let mut prev = centering(1.0);
        for i in 1..100 {
            let m = centering(1.0 + i as f64 * 0.1);
            assert!(m > prev);
            prev = m;
        }
    }

    #[test]
    fn factor_roundtrip() {
        let g = green_of_sites(&block(3)).unwrap();
        let f = CovarianceFactorization::new(&g).unwrap();
        assert!(f.roundtrip_residual(&g) < 1e-12);
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                assert_eq!(f.lower()[(i, j)], 0.0);
            }
        }
    }

    #[test]
    fn single_site_marginal() {
        let g = green_of_sites(&sites(&[(0, 0)])).unwrap();
        let f = CovarianceFactorization::new(&g).unwrap();
        let mut rng = rng::stream(21, 0);
        let xs: Vec<f64> = (0..40_000).map(|_| f.sample(&mut rng).values[0]).collect();
        let m = mean_ci(&xs).unwrap();
        assert!(m.within(0.0, 4.0));
        let sq: Vec<f64> = xs.iter().map(|x| x * x).collect();
        assert!(mean_ci(&sq).unwrap().within(PI / 4.0, 4.0));
    }

    #[test]
    fn two_site_covariance() {
        let g = green_of_sites(&sites(&[(0, 0), (1, 0)])).unwrap();
        let f = CovarianceFactorization::new(&g).unwrap();
        let mut rng = rng::stream(22, 0);
        let samples: Vec<FieldSample> = (0..40_000).map(|_| f.sample(&mut rng)).collect();
        let a: Vec<f64> = samples.iter().map(|s| s.values[0]).collect();
        let b: Vec<f64> = samples.iter().map(|s| s.values[1]).collect();
        assert!(covariance_ci(&a, &b).unwrap().within(PI / 15.0, 4.0));
    }

    #[test]
    fn gibbs_markov_two_sites() {
        let u = sites(&[(0, 0), (1, 0)]);
        let v = sites(&[(0, 0)]);
        let s = gibbs_markov_check(&u, &v).unwrap();
        assert!((s.var_binding[0] - PI / 60.0).abs() < 1e-12);
        assert!((s.var_u[0] - 4.0 * PI / 15.0).abs() < 1e-12);
        assert!((s.var_v[0] - PI / 4.0).abs() < 1e-12);
        assert!(s.variance_residual < 1e-12);
    }

    #[test]
    fn gibbs_markov_nested_blocks() {
        let u = block(4);
        let v: SiteSet = block(4).iter().filter(|p| p.x <= 1 && p.y >= -2).collect();
        let s = gibbs_markov_check(&u, &v).unwrap();
        assert!(s.variance_residual < 1e-10);
        assert!(s.covariance_residual < 1e-10);
        assert!(s.min_eigenvalue >= -1e-10);
        let same = gibbs_markov_check(&u, &u).unwrap();
        assert!(same.var_binding.iter().all(|&x| x.abs() < 1e-12));
        assert_eq!(gibbs_markov_check(&v, &u).unwrap_err(), Error::NotSubset);
    }

    #[test]
    fn level_sets() {
        let sites = block(3);
        let graph = WiredGraph::from_sites(sites.clone()).unwrap();
        let g = green(&graph).unwrap();
        let f = CovarianceFactorization::new(&g).unwrap();
        let bulk: SiteSet = sites.iter().filter(|p| p.norm2() <= 2).collect();
        let h = f.sample(&mut rng::stream(23, 0)).shifted(0.3);
        assert!(h.level_set(0.0, &bulk).is_empty());
        let mut prev = 0;
        for i in 0..40 {
            let set = h.level_set(i as f64 * 0.25, &bulk);
            assert!(set.is_subset(&bulk));
            assert!(set.len() >= prev);
            prev = set.len();
        }
        assert_eq!(h.level_set(f64::INFINITY, &bulk), bulk);
        assert_eq!(h.at(Point::new(10, 10)), 0.0);
    }
}
