//! Goodness-of-fit tests and interval estimates for the Monte Carlo checks.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, DiscreteCDF, Poisson};

use crate::error::{Error, Result};

/// Level at which a single test is declared a rejection.
pub const ACCEPTANCE_LEVEL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub sizes: (usize, usize),
    pub level: f64,
    pub reject: bool,
}

impl TestResult {
    fn new(statistic: f64, p_value: f64, sizes: (usize, usize)) -> Self {
        let p_value = p_value.clamp(0.0, 1.0);
        TestResult {
            statistic,
            p_value,
            sizes,
            level: ACCEPTANCE_LEVEL,
            reject: p_value < ACCEPTANCE_LEVEL,
        }
    }
}

/// `Q(λ) = P(K > λ)` for the Kolmogorov distribution.
pub fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        let y = (-std::f64::consts::PI.powi(2) / (8.0 * lambda * lambda)).exp();
        let series: f64 = (0..6).map(|j| y.powi((2 * j + 1) * (2 * j + 1))).sum();
        (1.0 - (2.0 * std::f64::consts::PI).sqrt() / lambda * series).clamp(0.0, 1.0)
    } else {
        let x = (-2.0 * lambda * lambda).exp();
        let series: f64 = (1..=6)
            .map(|j| {
                let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
                sign * x.powi(j * j)
            })
            .sum();
        (2.0 * series).clamp(0.0, 1.0)
    }
}

fn sorted_finite(xs: &[f64], what: &str) -> Result<Vec<f64>> {
    if xs.is_empty() {
        return Err(Error::Statistics(format!("{what} is empty")));
    }
    if xs.iter().any(|x| x.is_nan()) {
        return Err(Error::Statistics(format!("{what} contains NaN")));
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Two-sample Kolmogorov–Smirnov test with the asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<TestResult> {
    let a = sorted_finite(a, "first sample")?;
    let b = sorted_finite(b, "second sample")?;
    let (n, m) = (a.len(), b.len());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        let v = a[i].min(b[j]);
        while i < n && a[i] == v {
            i += 1;
        }
        while j < m && b[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n * m) as f64 / (n + m) as f64;
    let root = ne.sqrt();
    let p = kolmogorov_tail((root + 0.12 + 0.11 / root) * d);
    Ok(TestResult::new(d, p, (n, m)))
}

/// A chi-square bin `[lo, hi]`; `hi = None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoissonBin {
    pub lo: u64,
    pub hi: Option<u64>,
    pub observed: u64,
    pub expected: f64,
}

/// Bins for a Poisson goodness-of-fit test, pooled so that every bin expects
/// at least five counts.
pub fn poisson_bins(counts: &[u64], rate: f64) -> Result<Vec<PoissonBin>> {
    if !(rate.is_finite() && rate > 0.0) {
        return Err(Error::Statistics(format!(
            "Poisson rate must be positive (got {rate})"
        )));
    }
    if counts.is_empty() {
        return Err(Error::Statistics("no counts".into()));
    }
    let law = Poisson::new(rate).map_err(|e| Error::Statistics(e.to_string()))?;
    let total = counts.len() as f64;
    let max = *counts.iter().max().unwrap();
    let mut hist = vec![0u64; max as usize + 1];
    for &c in counts {
        hist[c as usize] += 1;
    }
    let observed = |lo: u64, hi: Option<u64>| -> u64 {
        let end = hi.map_or(hist.len(), |h| (h as usize + 1).min(hist.len()));
        hist.get(lo as usize..end).map_or(0, |s| s.iter().sum())
    };

    let mut bins = Vec::new();
    let mut lo = 0u64;
    let mut acc = 0.0;
    let mut k = 0u64;
    loop {
        let tail = if k == 0 { 1.0 } else { law.sf(k - 1) };
        if total * tail < 5.0 {
            break;
        }
        acc += total * law.pmf(k);
        if acc >= 5.0 {
            bins.push(PoissonBin {
                lo,
                hi: Some(k),
                observed: 0,
                expected: acc,
            });
            lo = k + 1;
            acc = 0.0;
        }
        k += 1;
    }
    // remaining mass from `lo` on goes into the last bin
    let rest = if lo == 0 { 1.0 } else { law.sf(lo - 1) } * total;
    match bins.last_mut() {
        Some(last) if rest < 5.0 => {
            last.hi = None;
            last.expected += rest;
        }
        _ => bins.push(PoissonBin {
            lo,
            hi: None,
            observed: 0,
            expected: rest,
        }),
    }
    for b in &mut bins {
        b.observed = observed(b.lo, b.hi);
    }
    Ok(bins)
}

/// Chi-square goodness-of-fit of `counts` against `Poisson(rate)`.
pub fn poisson_gof(counts: &[u64], rate: f64) -> Result<TestResult> {
    let bins = poisson_bins(counts, rate)?;
    if bins.len() < 2 {
        return Err(Error::Statistics(format!(
            "only {} bin(s) with at least five expected counts",
            bins.len()
        )));
    }
    let stat: f64 = bins
        .iter()
        .map(|b| (b.observed as f64 - b.expected).powi(2) / b.expected)
        .sum();
    let df = (bins.len() - 1) as f64;
    let law = ChiSquared::new(df).map_err(|e| Error::Statistics(e.to_string()))?;
    Ok(TestResult::new(
        stat,
        law.sf(stat),
        (counts.len(), bins.len()),
    ))
}

/// A sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanCi {
    pub mean: f64,
    pub se: f64,
    pub n: usize,
}

impl MeanCi {
    /// Whether `target` lies within `k` standard errors of the mean.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.se
    }

    /// Deviation from `target` in units of the standard error.
    pub fn z(&self, target: f64) -> f64 {
        (self.mean - target) / self.se
    }
}

/// Sample mean and `sd / √n`.
pub fn mean_ci(samples: &[f64]) -> Result<MeanCi> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::Statistics(format!(
            "need at least two samples (got {n})"
        )));
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let ss: f64 = samples.iter().map(|x| (x - mean).powi(2)).sum();
    let sd = (ss / (n - 1) as f64).sqrt();
    Ok(MeanCi {
        mean,
        se: sd / (n as f64).sqrt(),
        n,
    })
}

/// Unbiased sample covariance with the standard error of the mean of the
/// centred products.
pub fn covariance_ci(a: &[f64], b: &[f64]) -> Result<MeanCi> {
    if a.len() != b.len() {
        return Err(Error::Statistics("samples differ in length".into()));
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::Statistics(format!(
            "need at least two samples (got {n})"
        )));
    }
    let ma = a.iter().sum::<f64>() / n as f64;
    let mb = b.iter().sum::<f64>() / n as f64;
    let products: Vec<f64> = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).collect();
    let ci = mean_ci(&products)?;
    let scale = n as f64 / (n - 1) as f64;
    Ok(MeanCi {
        mean: ci.mean * scale,
        se: ci.se * scale,
        n,
    })
}

/// Linearly interpolated quantile of sorted data.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
}

impl Summary {
    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

pub fn summary(samples: &[f64]) -> Result<Summary> {
    let v = sorted_finite(samples, "sample")?;
    Ok(Summary {
        n: v.len(),
        median: quantile_sorted(&v, 0.5),
        q1: quantile_sorted(&v, 0.25),
        q3: quantile_sorted(&v, 0.75),
    })
}

/// Rejection count across a family of tests, next to the count expected by
/// chance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RejectionTally {
    pub tests: usize,
    pub rejections: usize,
}

impl RejectionTally {
    pub fn record(&mut self, result: &TestResult) {
        self.tests += 1;
        self.rejections += result.reject as usize;
    }

    pub fn expected(&self) -> f64 {
        self.tests as f64 * ACCEPTANCE_LEVEL
    }
}
