use std::f64::consts::PI;

use latcover::clustering::{
    cluster_census, clustered_test, clustering_cover, low_set, phase_times, PhaseTimes,
};
use latcover::domain::{discretize_scale, LatticeDomain, WiredGraph};
use latcover::harmonic::green;
use latcover::isomorphism::{check_iso_marginal, MonteCarlo};
use latcover::parallel::{map_chunks, map_trials, Execution};
use latcover::rng::{stream, stream_index};
use latcover::stats::{mean_ci, summary, RejectionTally};
use latcover::walk::{run_to_cover, NoObserver, WalkConfig, Walker};

use crate::config::{Command, Level, RunConfig};
use crate::error::Result;
use crate::output::{flag, float, Table};

/// Tables written by a command plus free-form notes for the manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

const EXCURSION_CHUNK: usize = 10_000;

pub fn execute(config: &RunConfig) -> Result<Outcome> {
    match config.command {
        Command::GreenTable => green_table(config),
        Command::IsoCheck => iso_check(config),
        Command::CoverScaling => cover_scaling(config),
        Command::ClusterCensus => census(config),
        Command::ExcursionMoments => excursion_moments(config),
    }
}

fn domain(config: &RunConfig, level: Level) -> Result<LatticeDomain> {
    let mut domain = discretize_scale(&config.shape()?, level.big_n)?;
    domain.n = level.n;
    Ok(domain)
}

fn walk_config(config: &RunConfig) -> Result<WalkConfig> {
    Ok(WalkConfig::new(config.edge_rate, config.seed)?)
}

fn green_table(config: &RunConfig) -> Result<Outcome> {
    let mut table = Table::new(
        config.command.file_stem(),
        vec![
            "N",
            "x",
            "y",
            "bulk",
            "green_diag",
            "dist_to_complement",
            "gap",
        ],
    );
    for &level in &config.levels {
        let domain = domain(config, level)?;
        let graph = WiredGraph::new(&domain)?;
        let g = green(&graph)?;
        let bulk = domain.bulk();
        for (i, p) in domain.sites.iter().enumerate() {
            let d = domain.sites.distance_to_complement(p);
            let gii = g.get(i, i);
            table.push(vec![
                float(level.big_n),
                p.x.to_string(),
                p.y.to_string(),
                flag(bulk.contains(p)),
                float(gii),
                float(d),
                float(gii - d.ln()),
            ]);
        }
    }
    Ok(Outcome {
        tables: vec![table],
        notes: Vec::new(),
    })
}

fn iso_check(config: &RunConfig) -> Result<Outcome> {
    let mut table = Table::new(
        config.command.file_stem(),
        vec![
            "N",
            "t",
            "x",
            "y",
            "ks_statistic",
            "p_value",
            "reject",
            "lhs_mean",
            "rhs_mean",
            "exact_mean",
            "lhs_second",
            "rhs_second",
            "exact_second",
            "second_moment_z",
        ],
    );
    let walk = walk_config(config)?;
    let mut tally = RejectionTally::default();
    for (li, &level) in config.levels.iter().enumerate() {
        let domain = domain(config, level)?;
        let graph = WiredGraph::new(&domain)?;
        let g = green(&graph)?;
        let probes: Vec<u32> = (0..graph.len() as u32).collect();
        for (ti, &t) in config.t.iter().enumerate() {
            let seed = config
                .seed
                .wrapping_add(((li as u64) << 40) | ((ti as u64) << 20));
            let mc = MonteCarlo::new(config.trials, seed);
            let report = check_iso_marginal(&graph, &g, &walk, t, &probes, &mc)?;
            for p in &report.probes {
                tally.record(&p.ks);
                table.push(vec![
                    float(level.big_n),
                    float(t),
                    p.vertex.0.to_string(),
                    p.vertex.1.to_string(),
                    float(p.ks.statistic),
                    float(p.ks.p_value),
                    flag(p.ks.reject),
                    float(p.lhs_mean.mean),
                    float(p.rhs_mean.mean),
                    float(p.lhs_exact_mean),
                    float(p.lhs_second.mean),
                    float(p.rhs_second.mean),
                    float(p.exact_second),
                    float(p.second_moment_z()),
                ]);
            }
        }
    }
    let note = format!(
        "{} of {} KS tests rejected at level 0.001 (expected under the null {:.3})",
        tally.rejections,
        tally.tests,
        tally.expected()
    );
    Ok(Outcome {
        tables: vec![table],
        notes: vec![note],
    })
}

/// `(1/√π) log N - (1/(4√π)) log log N`, the centring of `√(T/|D_N|)` in real
/// time at unit edge rate.
fn real_time_centring(big_n: f64) -> f64 {
    let root_pi = PI.sqrt();
    big_n.ln() / root_pi - big_n.ln().ln() / (4.0 * root_pi)
}

fn cover_scaling(config: &RunConfig) -> Result<Outcome> {
    let mut trials = Table::new(
        "cover_trials",
        vec![
            "n",
            "N",
            "trial",
            "T_cover_real",
            "T_cover_boundary",
            "excursions",
        ],
    );
    let mut scaling = Table::new(
        config.command.file_stem(),
        vec![
            "n",
            "N",
            "sites",
            "median_sqrt_T",
            "predicted_sqrt_tC",
            "residual",
            "iqr_sqrt_T",
            "median_sqrt_real_per_site",
            "predicted_real",
            "residual_real",
        ],
    );
    let walk = walk_config(config)?;
    for (li, &level) in config.levels.iter().enumerate() {
        let domain = domain(config, level)?;
        let graph = WiredGraph::new(&domain)?;
        let sites = graph.len() as f64;
        let results = map_trials(Execution::default(), config.trials, |i| {
            let mut rng = stream(config.seed, stream_index(li as u32, i as u32));
            run_to_cover(&graph, &walk, &mut rng)
        });
        for (i, r) in results.iter().enumerate() {
            trials.push(vec![
                float(level.n),
                float(level.big_n),
                i.to_string(),
                float(r.real_time),
                float(r.boundary_time),
                r.excursions.to_string(),
            ]);
        }
        let roots: Vec<f64> = results.iter().map(|r| r.boundary_time.sqrt()).collect();
        // real time at unit edge rate, per site
        let real: Vec<f64> = results
            .iter()
            .map(|r| (r.real_time * config.edge_rate / sites).sqrt())
            .collect();
        let s = summary(&roots)?;
        let s_real = summary(&real)?;
        let phase = phase_times(level.n, config.eta0, config.gamma)?;
        let predicted = phase.t_c.sqrt();
        let predicted_real = real_time_centring(level.big_n);
        scaling.push(vec![
            float(level.n),
            float(level.big_n),
            graph.len().to_string(),
            float(s.median),
            float(predicted),
            float(s.median - predicted),
            float(s.iqr()),
            float(s_real.median),
            float(predicted_real),
            float(s_real.median - predicted_real),
        ]);
    }
    Ok(Outcome {
        tables: vec![scaling, trials],
        notes: Vec::new(),
    })
}

fn census_times(config: &RunConfig, phase: &PhaseTimes) -> Vec<f64> {
    if !config.t.is_empty() {
        config.t.clone()
    } else if let Some(s) = config.s {
        vec![phase.t(s)]
    } else {
        vec![phase.t_a]
    }
}

struct CensusRow {
    low: usize,
    clusters: Vec<(i64, i64, usize, u32)>,
    chi: usize,
    chi_exact: bool,
    clustered: bool,
    gap_condition: bool,
}

fn census(config: &RunConfig) -> Result<Outcome> {
    let mut summary_table = Table::new(
        config.command.file_stem(),
        vec![
            "n",
            "N",
            "t",
            "u",
            "trial",
            "low_size",
            "clusters",
            "chi",
            "chi_exact",
            "clustered",
            "gap_condition",
            "max_scale",
        ],
    );
    let mut clusters_table = Table::new(
        "clusters",
        vec!["n", "t", "trial", "center_x", "center_y", "size", "scale"],
    );
    let walk = walk_config(config)?;
    let mut group = 0u32;
    let mut clustered_total = 0;
    let mut trials_total = 0;
    for &level in &config.levels {
        let domain = domain(config, level)?;
        let graph = WiredGraph::new(&domain)?;
        let walker = Walker::new(&graph, &walk);
        let bulk = domain.bulk();
        let phase = phase_times(level.n, config.eta0, config.gamma)?;
        for t in census_times(config, &phase) {
            let rows = map_trials(Execution::default(), config.trials, |i| {
                let mut rng = stream(config.seed, stream_index(group, i as u32));
                let field = walker.sample_field(t, &mut rng, &mut NoObserver)?;
                let low = low_set(&graph, &field, config.u, &bulk);
                let census = cluster_census(&low, &phase)?;
                let cover = clustering_cover(&low, &phase)?;
                let verdict = clustered_test(&low, &phase)?;
                Ok::<_, latcover::Error>(CensusRow {
                    low: low.len(),
                    clusters: census
                        .clusters
                        .iter()
                        .map(|c| (c.center.x, c.center.y, c.sites.len(), c.scale))
                        .collect(),
                    chi: cover.len(),
                    chi_exact: cover.exact,
                    clustered: verdict.clustered,
                    gap_condition: verdict.gap_condition,
                })
            });
            for (i, row) in rows.into_iter().enumerate() {
                let row = row?;
                clustered_total += usize::from(row.clustered);
                trials_total += 1;
                let max_scale = row.clusters.iter().map(|c| c.3).max();
                summary_table.push(vec![
                    float(level.n),
                    float(level.big_n),
                    float(t),
                    float(config.u),
                    i.to_string(),
                    row.low.to_string(),
                    row.clusters.len().to_string(),
                    row.chi.to_string(),
                    flag(row.chi_exact),
                    flag(row.clustered),
                    flag(row.gap_condition),
                    max_scale.map_or_else(String::new, |k| k.to_string()),
                ]);
                for &(x, y, size, scale) in &row.clusters {
                    clusters_table.push(vec![
                        float(level.n),
                        float(t),
                        i.to_string(),
                        x.to_string(),
                        y.to_string(),
                        size.to_string(),
                        scale.to_string(),
                    ]);
                }
            }
            group += 1;
        }
    }
    Ok(Outcome {
        tables: vec![summary_table, clusters_table],
        notes: vec![format!(
            "{clustered_total} of {trials_total} low sets clustered"
        )],
    })
}

fn excursion_moments(config: &RunConfig) -> Result<Outcome> {
    let mut table = Table::new(
        config.command.file_stem(),
        vec![
            "N",
            "sites",
            "deg_boundary",
            "trials",
            "mean_theta",
            "se",
            "predicted_mean",
            "z",
        ],
    );
    let walk = walk_config(config)?;
    for (li, &level) in config.levels.iter().enumerate() {
        let domain = domain(config, level)?;
        let graph = WiredGraph::new(&domain)?;
        let walker = Walker::new(&graph, &walk);
        let lengths: Vec<f64> = map_chunks(
            Execution::default(),
            config.trials,
            EXCURSION_CHUNK,
            |range| {
                let chunk = (range.start / EXCURSION_CHUNK) as u32;
                let mut rng = stream(config.seed, stream_index(li as u32, chunk));
                range
                    .map(|_| walker.excursion(&mut rng).duration)
                    .collect::<Vec<_>>()
            },
        )
        .into_iter()
        .flatten()
        .collect();
        let ci = mean_ci(&lengths)?;
        // mean excursion length 2π|D| / deg ∂ at edge rate 1/(2π)
        let predicted = graph.len() as f64 / (graph.deg_boundary() as f64 * config.edge_rate);
        table.push(vec![
            float(level.big_n),
            graph.len().to_string(),
            graph.deg_boundary().to_string(),
            config.trials.to_string(),
            float(ci.mean),
            float(ci.se),
            float(predicted),
            float(ci.z(predicted)),
        ]);
    }
    Ok(Outcome {
        tables: vec![table],
        notes: Vec::new(),
    })
}
