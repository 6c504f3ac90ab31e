//! Monte Carlo checks of the second Ray–Knight identity
//! `L_t + h² = (h' + √t)²` and of the moment identities for local times.

use serde::Serialize;

use crate::domain::{Point, VertexId, WiredGraph};
use crate::error::{Error, Result};
use crate::gff::{centering, CovarianceFactorization};
use crate::harmonic::GreenOperator;
use crate::parallel::{map_trials, Execution};
use crate::rng::{stream, stream_index};
use crate::stats::{covariance_ci, ks_two_sample, mean_ci, MeanCi, TestResult};
use crate::walk::{NoObserver, WalkConfig, Walker};

const LEFT: u32 = 0;
const RIGHT: u32 = 1;

/// Shared inputs of the Monte Carlo checks.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarlo {
    pub samples: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl MonteCarlo {
    pub fn new(samples: usize, seed: u64) -> Self {
        MonteCarlo {
            samples,
            seed,
            execution: Execution::default(),
        }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub vertex: (i64, i64),
    pub ks: TestResult,
    pub lhs_mean: MeanCi,
    pub rhs_mean: MeanCi,
    /// `E[L_t(x)] + E[h(x)²] = t + ½G(x,x)`.
    pub lhs_exact_mean: f64,
    /// `Var h'(x) + t = ½G(x,x) + t`.
    pub rhs_exact_mean: f64,
    pub lhs_second: MeanCi,
    pub rhs_second: MeanCi,
    /// `3σ⁴ + 6tσ² + t²` with `σ² = ½G(x,x)`, shared by both sides.
    pub exact_second: f64,
}

impl ProbeReport {
    /// Difference of the two empirical second moments in units of its
    /// standard error.
    pub fn second_moment_z(&self) -> f64 {
        let se = self.lhs_second.se.hypot(self.rhs_second.se);
        if se == 0.0 {
            0.0
        } else {
            (self.lhs_second.mean - self.rhs_second.mean) / se
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoReport {
    pub t: f64,
    pub samples: usize,
    pub probes: Vec<ProbeReport>,
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "t must be finite and nonnegative (got {t})"
        )))
    }
}

fn check_probes(green: &GreenOperator, probes: &[VertexId]) -> Result<()> {
    match probes.iter().find(|&&v| v as usize >= green.len()) {
        Some(v) => Err(Error::Parameter(format!("probe vertex {v} out of range"))),
        None => Ok(()),
    }
}

fn column(rows: &[Vec<f64>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i]).collect()
}

/// Compares `L_t(x) + h(x)²` with `(h'(x) + √t)²` in law at each probe, with
/// `(L_t, h)` and `h'` drawn independently.
pub fn check_iso_marginal(
    graph: &WiredGraph,
    green: &GreenOperator,
    config: &WalkConfig,
    t: f64,
    probes: &[VertexId],
    mc: &MonteCarlo,
) -> Result<IsoReport> {
    check_time(t)?;
    check_probes(green, probes)?;
    if mc.samples < 2 {
        return Err(Error::Parameter("need at least two samples".into()));
    }
    let factor = CovarianceFactorization::new(green)?;
    let walker = Walker::new(graph, config);
    let root = t.sqrt();
    let lhs: Vec<Vec<f64>> = map_trials(mc.execution, mc.samples, |i| {
        let mut rng = stream(mc.seed, stream_index(LEFT, i as u32));
        let field = walker
            .sample_field(t, &mut rng, &mut NoObserver)
            .expect("time validated");
        let h = factor.sample(&mut rng);
        probes
            .iter()
            .map(|&v| field.get(v) + h.value(v as usize).powi(2))
            .collect()
    });
    let rhs: Vec<Vec<f64>> = map_trials(mc.execution, mc.samples, |i| {
        let mut rng = stream(mc.seed, stream_index(RIGHT, i as u32));
        let h = factor.sample(&mut rng);
        probes
            .iter()
            .map(|&v| (h.value(v as usize) + root).powi(2))
            .collect()
    });

    let mut reports = Vec::with_capacity(probes.len());
    for (i, &v) in probes.iter().enumerate() {
        let a = column(&lhs, i);
        let b = column(&rhs, i);
        let sigma2 = 0.5 * green.get(v as usize, v as usize);
        let a2: Vec<f64> = a.iter().map(|x| x * x).collect();
        let b2: Vec<f64> = b.iter().map(|x| x * x).collect();
        let p = graph.coord(v);
        reports.push(ProbeReport {
            vertex: (p.x, p.y),
            ks: ks_two_sample(&a, &b)?,
            lhs_mean: mean_ci(&a)?,
            rhs_mean: mean_ci(&b)?,
            lhs_exact_mean: t + sigma2,
            rhs_exact_mean: sigma2 + root * root,
            lhs_second: mean_ci(&a2)?,
            rhs_second: mean_ci(&b2)?,
            exact_second: 3.0 * sigma2 * sigma2 + 6.0 * t * sigma2 + t * t,
        });
    }
    Ok(IsoReport {
        t,
        samples: mc.samples,
        probes: reports,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MeanRow {
    pub vertex: (i64, i64),
    pub estimate: MeanCi,
    pub exact: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CovarianceRow {
    pub x: (i64, i64),
    pub y: (i64, i64),
    pub estimate: MeanCi,
    pub exact: f64,
}

/// `E L_t(x) = t` at every vertex and `Cov(L_t(x), L_t(y)) = 2t G(x,y)` at
/// the requested pairs.
#[derive(Debug, Clone, Serialize)]
pub struct MomentTable {
    pub t: f64,
    pub samples: usize,
    pub means: Vec<MeanRow>,
    pub covariances: Vec<CovarianceRow>,
}

impl MomentTable {
    /// Largest deviation from the closed forms in units of standard error;
    /// rows with zero standard error count only if they are off.
    pub fn worst_z(&self) -> f64 {
        let z = |e: &MeanCi, exact: f64| {
            let d = (e.mean - exact).abs();
            if e.se > 0.0 {
                d / e.se
            } else if d == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        };
        self.means
            .iter()
            .map(|r| z(&r.estimate, r.exact))
            .chain(self.covariances.iter().map(|r| z(&r.estimate, r.exact)))
            .fold(0.0, f64::max)
    }
}

pub fn moment_identities(
    graph: &WiredGraph,
    green: &GreenOperator,
    config: &WalkConfig,
    t: f64,
    pairs: &[(VertexId, VertexId)],
    mc: &MonteCarlo,
) -> Result<MomentTable> {
    check_time(t)?;
    let flat: Vec<VertexId> = pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
    check_probes(green, &flat)?;
    let walker = Walker::new(graph, config);
    let fields: Vec<Vec<f64>> = map_trials(mc.execution, mc.samples, |i| {
        let mut rng = stream(mc.seed, i as u64);
        walker
            .sample_field(t, &mut rng, &mut NoObserver)
            .expect("time validated")
            .local
    });
    let means = (0..graph.len())
        .map(|v| {
            let p = graph.coord(v as VertexId);
            Ok(MeanRow {
                vertex: (p.x, p.y),
                estimate: mean_ci(&column(&fields, v))?,
                exact: t,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let covariances = pairs
        .iter()
        .map(|&(x, y)| {
            let (px, py) = (graph.coord(x), graph.coord(y));
            let estimate =
                covariance_ci(&column(&fields, x as usize), &column(&fields, y as usize))?;
            Ok(CovarianceRow {
                x: (px.x, px.y),
                y: (py.x, py.y),
                estimate,
                exact: 2.0 * t * green.get(x as usize, y as usize),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentTable {
        t,
        samples: mc.samples,
        means,
        covariances,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct InclusionRow {
    pub vertex: (i64, i64),
    /// `P(f_n(x)² ≤ u)` with `f_n = h' + m_n`.
    pub field_prob: MeanCi,
    /// `P(L_t(x) ≤ u)` at `t = m_n²`.
    pub local_prob: MeanCi,
    pub violated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InclusionReport {
    pub n: f64,
    pub t: f64,
    pub u: f64,
    pub rows: Vec<InclusionRow>,
}

impl InclusionReport {
    pub fn any_violation(&self) -> bool {
        self.rows.iter().any(|r| r.violated)
    }
}

/// Tests `P(f_n(x)² ≤ u) ≤ P(L_t(x) ≤ u)` at `t = m_n²`, flagging an excess
/// beyond three standard errors.
pub fn marginal_inclusion_check(
    graph: &WiredGraph,
    green: &GreenOperator,
    config: &WalkConfig,
    n: f64,
    u: f64,
    probes: &[VertexId],
    mc: &MonteCarlo,
) -> Result<InclusionReport> {
    if u.is_nan() || u < 0.0 {
        return Err(Error::Parameter(format!("u must be nonnegative (got {u})")));
    }
    if n.is_nan() || n <= 0.0 {
        return Err(Error::Parameter(format!("n must be positive (got {n})")));
    }
    check_probes(green, probes)?;
    let m = centering(n);
    let t = m * m;
    let factor = CovarianceFactorization::new(green)?;
    let walker = Walker::new(graph, config);
    let rows: Vec<(Vec<f64>, Vec<f64>)> = map_trials(mc.execution, mc.samples, |i| {
        let mut rng = stream(mc.seed, stream_index(LEFT, i as u32));
        let field = walker
            .sample_field(t, &mut rng, &mut NoObserver)
            .expect("time validated");
        let mut rng = stream(mc.seed, stream_index(RIGHT, i as u32));
        let f = factor.sample(&mut rng).shifted(m);
        let ind = |b: bool| if b { 1.0 } else { 0.0 };
        (
            probes
                .iter()
                .map(|&v| ind(f.value(v as usize).powi(2) <= u))
                .collect(),
            probes.iter().map(|&v| ind(field.get(v) <= u)).collect(),
        )
    });
    let (fields, locals): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let rows = probes
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let field_prob = mean_ci(&column(&fields, i))?;
            let local_prob = mean_ci(&column(&locals, i))?;
            let se = field_prob.se.hypot(local_prob.se);
            let p: Point = graph.coord(v);
            Ok(InclusionRow {
                vertex: (p.x, p.y),
                violated: field_prob.mean - local_prob.mean > 3.0 * se,
                field_prob,
                local_prob,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InclusionReport { n, t, u, rows })
}
