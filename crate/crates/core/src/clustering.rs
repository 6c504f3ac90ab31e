//! Phase times, low sets, clusters of low-local-time vertices and the
//! clustering number.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::Serialize;

use crate::domain::{
    ball, in_open_ball, log_scale, log_scale_witness, scaled_lattice_spacing, Point, SiteSet,
    VertexId, WiredGraph,
};
use crate::error::{Error, Result};
use crate::gff::centering;
use crate::harmonic::ball_poisson_kernel;
use crate::walk::{DowncrossingCounter, LocalTimeField, Walker};

/// Default `η₀` in `r_n = n^{1/2 - η₀}`.
pub const DEFAULT_ETA0: f64 = 0.25;
/// Default `γ` of the downcrossing radii `k + ½k^γ`, `k + k^γ`.
pub const DEFAULT_GAMMA: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseTimes {
    pub n: f64,
    pub eta0: f64,
    pub gamma: f64,
    pub t_a: f64,
    pub t_b: f64,
    pub t_c: f64,
    pub r_n: f64,
    pub m_n: f64,
}

impl PhaseTimes {
    /// `t_n(s) = t_n^A + t_n^B + s n`.
    pub fn t(&self, s: f64) -> f64 {
        self.t_a + self.t_b + s * self.n
    }

    /// `√t_n^C + s / (2√2)`, the first-order expansion of `√t_n(s)`.
    pub fn sqrt_t_expansion(&self, s: f64) -> f64 {
        self.t_c.sqrt() + s / (2.0 * std::f64::consts::SQRT_2)
    }

    /// Cluster scale `⌊n - r_n⌋`.
    pub fn cluster_scale(&self) -> Result<u32> {
        let j = (self.n - self.r_n).floor();
        if j < 0.0 {
            return Err(Error::Parameter(format!(
                "cluster scale n - r_n = {} is negative",
                self.n - self.r_n
            )));
        }
        Ok(j as u32)
    }
}

pub fn phase_times(n: f64, eta0: f64, gamma: f64) -> Result<PhaseTimes> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::Parameter(format!("n must be positive (got {n})")));
    }
    if !(eta0 > 0.0 && eta0 < 0.5) {
        return Err(Error::Parameter(format!(
            "eta0 must lie in (0, 1/2) (got {eta0})"
        )));
    }
    if !(gamma > 0.0 && gamma < 0.5 - eta0) {
        return Err(Error::Parameter(format!(
            "gamma must lie in (0, 1/2 - eta0) = (0, {}) (got {gamma})",
            0.5 - eta0
        )));
    }
    let s2 = std::f64::consts::SQRT_2;
    let m_n = centering(n);
    let sqrt_c = s2 * n - n.ln() / (2.0 * s2);
    Ok(PhaseTimes {
        n,
        eta0,
        gamma,
        t_a: m_n * m_n,
        t_b: 0.5 * n * n.ln(),
        t_c: sqrt_c * sqrt_c,
        r_n: n.powf(0.5 - eta0),
        m_n,
    })
}

/// `W = {x ∈ bulk : L(x) ≤ u}`.
pub fn low_set(graph: &WiredGraph, field: &LocalTimeField, u: f64, bulk: &SiteSet) -> SiteSet {
    bulk.iter()
        .filter(|&p| graph.vertex(p).is_some_and(|v| field.get(v) <= u))
        .collect()
}

/// Centres `z ∈ X_j` with `p ∈ B(z;j)`.
fn centers_covering(p: Point, j: u32) -> impl Iterator<Item = Point> {
    let s = scaled_lattice_spacing(j);
    let radius = (j as f64).exp();
    let lo_x = ((p.x as f64 - radius) / s as f64).ceil() as i64;
    let hi_x = ((p.x as f64 + radius) / s as f64).floor() as i64;
    let lo_y = ((p.y as f64 - radius) / s as f64).ceil() as i64;
    let hi_y = ((p.y as f64 + radius) / s as f64).floor() as i64;
    (lo_y..=hi_y)
        .flat_map(move |b| (lo_x..=hi_x).map(move |a| Point::new(a * s, b * s)))
        .filter(move |&z| in_open_ball(p, z, radius))
}

/// Every centre of `X_j` whose ball meets `set`, sorted.
pub fn meeting_centers(set: &SiteSet, j: u32) -> Vec<Point> {
    let centers: BTreeSet<Point> = set.iter().flat_map(|p| centers_covering(p, j)).collect();
    centers.into_iter().collect()
}

fn ball_part(set: &SiteSet, z: Point, j: u32) -> SiteSet {
    let radius = (j as f64).exp();
    set.iter().filter(|&p| in_open_ball(p, z, radius)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub center: Point,
    pub sites: SiteSet,
    /// Log-scale `ρ` of the cluster.
    pub scale: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterCensus {
    /// Cluster scale `⌊n - r_n⌋`.
    pub j: u32,
    pub low: SiteSet,
    /// One entry per centre, sorted by centre.
    pub clusters: Vec<Cluster>,
}

impl ClusterCensus {
    pub fn centers(&self) -> Vec<Point> {
        self.clusters.iter().map(|c| c.center).collect()
    }

    /// Centres whose cluster has log-scale `k`.
    pub fn centers_at_scale(&self, k: u32) -> Vec<Point> {
        self.clusters
            .iter()
            .filter(|c| c.scale == k)
            .map(|c| c.center)
            .collect()
    }

    /// Union of the clusters of log-scale `k`.
    pub fn sites_at_scale(&self, k: u32) -> SiteSet {
        self.clusters
            .iter()
            .filter(|c| c.scale == k)
            .flat_map(|c| c.sites.iter())
            .collect()
    }

    /// Number of centres per log-scale.
    pub fn scale_counts(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for c in &self.clusters {
            *counts.entry(c.scale).or_insert(0) += 1;
        }
        counts
    }

    /// Union of all clusters.
    pub fn covered(&self) -> SiteSet {
        self.clusters.iter().flat_map(|c| c.sites.iter()).collect()
    }
}

pub fn cluster_census(low: &SiteSet, phase: &PhaseTimes) -> Result<ClusterCensus> {
    let j = phase.cluster_scale()?;
    let clusters = meeting_centers(low, j)
        .into_iter()
        .map(|center| {
            let sites = ball_part(low, center, j);
            let scale = log_scale(&sites);
            Cluster {
                center,
                sites,
                scale,
            }
        })
        .collect();
    Ok(ClusterCensus {
        j,
        low: low.clone(),
        clusters,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClusteredVerdict {
    pub clustered: bool,
    /// A centre whose cluster has log-scale above `r_n`.
    pub witness: Option<Point>,
    /// Whether every pairwise `log d(x,y)` avoids `[⌊r_n⌋ + 1, ⌊n - r_n⌋ - 2]`.
    pub gap_condition: bool,
}

/// Tests whether `ρ(B(z;⌊n-r_n⌋) ∩ A) ≤ r_n` for every `z ∈ X_{⌊n-r_n⌋}`.
pub fn clustered_test(set: &SiteSet, phase: &PhaseTimes) -> Result<ClusteredVerdict> {
    let j = phase.cluster_scale()?;
    let witness = meeting_centers(set, j)
        .into_iter()
        .find(|&z| log_scale(&ball_part(set, z, j)) as f64 > phase.r_n);
    let lo = phase.r_n.floor() + 1.0;
    let hi = j as f64 - 2.0;
    let points = set.points();
    let gap_condition = lo > hi
        || points.iter().enumerate().all(|(i, &x)| {
            points[i + 1..].iter().all(|&y| {
                let l = x.dist(y).ln();
                !(lo..=hi).contains(&l)
            })
        });
    Ok(ClusteredVerdict {
        clustered: witness.is_none(),
        witness,
        gap_condition,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverSolution {
    pub centers: Vec<Point>,
    /// A lower bound on the clustering number from pairwise disjoint
    /// candidate sets.
    pub lower_bound: usize,
    /// Whether `centers` is known to be a minimum cover.
    pub exact: bool,
}

impl CoverSolution {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }
}

/// Largest number of points no two of which share a covering centre.
fn packing_bound(covers: &[BTreeSet<Point>]) -> usize {
    let mut used: BTreeSet<Point> = BTreeSet::new();
    let mut count = 0;
    let mut order: Vec<usize> = (0..covers.len()).collect();
    order.sort_by_key(|&i| covers[i].len());
    for i in order {
        if covers[i].is_disjoint(&used) {
            used.extend(covers[i].iter().copied());
            count += 1;
        }
    }
    count
}

fn exact_cover(masks: &[u64], full: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..masks.len()).collect();
    // drop candidates whose points are a subset of another candidate's
    order.retain(|&i| {
        !(0..masks.len())
            .any(|k| k != i && masks[i] & !masks[k] == 0 && (masks[i] != masks[k] || k < i))
    });
    let widest = order
        .iter()
        .map(|&i| masks[i].count_ones())
        .max()
        .unwrap_or(1);

    let mut best = greedy_masks(masks, &order, full);
    let mut chosen = Vec::new();
    fn dfs(
        masks: &[u64],
        order: &[usize],
        widest: u32,
        uncovered: u64,
        chosen: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if uncovered == 0 {
            if chosen.len() < best.len() {
                *best = chosen.clone();
            }
            return;
        }
        let needed = uncovered.count_ones().div_ceil(widest) as usize;
        if chosen.len() + needed >= best.len() {
            return;
        }
        let bit = 1u64 << uncovered.trailing_zeros();
        let mut options: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&c| masks[c] & bit != 0)
            .collect();
        options.sort_by_key(|&c| std::cmp::Reverse((masks[c] & uncovered).count_ones()));
        for c in options {
            chosen.push(c);
            dfs(masks, order, widest, uncovered & !masks[c], chosen, best);
            chosen.pop();
        }
    }
    dfs(masks, &order, widest, full, &mut chosen, &mut best);
    best
}

fn greedy_masks(masks: &[u64], order: &[usize], full: u64) -> Vec<usize> {
    let mut uncovered = full;
    let mut picks = Vec::new();
    while uncovered != 0 {
        let &c = order
            .iter()
            .max_by_key(|&&c| ((masks[c] & uncovered).count_ones(), std::cmp::Reverse(c)))
            .expect("every point has a covering centre");
        picks.push(c);
        uncovered &= !masks[c];
    }
    picks
}

/// A cover of `set` by balls `B(z;⌊n-r_n⌋)`, `z ∈ X_{⌊n-r_n⌋}`, of minimal
/// size when `|set| ≤ 64`, greedy otherwise.
pub fn clustering_cover(set: &SiteSet, phase: &PhaseTimes) -> Result<CoverSolution> {
    let j = phase.cluster_scale()?;
    if set.is_empty() {
        return Ok(CoverSolution {
            centers: Vec::new(),
            lower_bound: 0,
            exact: true,
        });
    }
    let centers = meeting_centers(set, j);
    let points = set.points();
    let covers: Vec<BTreeSet<Point>> = points
        .iter()
        .map(|&p| centers_covering(p, j).collect())
        .collect();
    let lower_bound = packing_bound(&covers);
    let radius = (j as f64).exp();
    if points.len() <= 64 {
        let masks: Vec<u64> = centers
            .iter()
            .map(|&z| {
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| in_open_ball(p, z, radius))
                    .fold(0u64, |m, (i, _)| m | 1 << i)
            })
            .collect();
        let full = if points.len() == 64 {
            u64::MAX
        } else {
            (1u64 << points.len()) - 1
        };
        let picks = exact_cover(&masks, full);
        let mut chosen: Vec<Point> = picks.into_iter().map(|c| centers[c]).collect();
        chosen.sort();
        return Ok(CoverSolution {
            centers: chosen,
            lower_bound,
            exact: true,
        });
    }
    let mut uncovered: BTreeSet<usize> = (0..points.len()).collect();
    let members: Vec<Vec<usize>> = centers
        .iter()
        .map(|&z| {
            (0..points.len())
                .filter(|&i| in_open_ball(points[i], z, radius))
                .collect()
        })
        .collect();
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let (c, _) = members
            .iter()
            .enumerate()
            .map(|(c, m)| (c, m.iter().filter(|i| uncovered.contains(i)).count()))
            .max_by_key(|&(c, gain)| (gain, std::cmp::Reverse(c)))
            .expect("candidates cover every point");
        for i in &members[c] {
            uncovered.remove(i);
        }
        chosen.push(centers[c]);
    }
    chosen.sort();
    let exact = chosen.len() == lower_bound;
    Ok(CoverSolution {
        centers: chosen,
        lower_bound,
        exact,
    })
}

/// `χ_n(A)`, with `χ_n(∅) = 0`.
pub fn clustering_number(set: &SiteSet, phase: &PhaseTimes) -> Result<usize> {
    Ok(clustering_cover(set, phase)?.len())
}

/// A skeleton of a clustered set: `χ_n(A)` points whose balls `B(·;r_n)`
/// cover `A`, pairwise at log-distance above `⌊n - r_n⌋ - 3`.
///
/// Points of `A` closer than `e^{⌊r_n⌋+1}` are grouped (transitively) and
/// each group is represented by the centre of its log-scale ball. Returns
/// `Ok(None)` when this construction does not give a skeleton at this `n`.
pub fn skeleton(set: &SiteSet, phase: &PhaseTimes) -> Result<Option<Vec<Point>>> {
    if !clustered_test(set, phase)?.clustered {
        return Err(Error::NotClustered);
    }
    if set.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let j = phase.cluster_scale()?;
    let link = (phase.r_n.floor() + 1.0).exp();
    let points = set.points();
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut i = i;
        while parent[i] != r {
            let next = parent[i];
            parent[i] = r;
            i = next;
        }
        r
    }
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            if points[a].dist(points[b]) < link {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Point>> = BTreeMap::new();
    for (i, &p) in points.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(p);
    }
    let radius = phase.r_n.exp();
    let mut centers = Vec::with_capacity(groups.len());
    for group in groups.into_values() {
        let group: SiteSet = group.into_iter().collect();
        let (k, center) = log_scale_witness(&group).expect("groups are nonempty");
        if k as f64 > phase.r_n || !group.iter().all(|p| in_open_ball(p, center, radius)) {
            return Ok(None);
        }
        centers.push(center);
    }
    if centers.len() != clustering_number(set, phase)? {
        return Ok(None);
    }
    let separated = centers.iter().enumerate().all(|(i, &x)| {
        centers[i + 1..]
            .iter()
            .all(|&y| x != y && x.dist(y).ln() > j as f64 - 3.0)
    });
    Ok(separated.then(|| {
        centers.sort();
        centers
    }))
}

/// One row of a comparability profile at scale `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepulsionRow {
    pub k: u32,
    /// `√N̂_t(x;k)` at radii `k + ½k^γ`, `k + k^γ`.
    pub sqrt_nhat: f64,
    /// `√L̄_t(x;k+1)`.
    pub sqrt_lbar: f64,
}

impl RepulsionRow {
    /// `|√L̄ - √N̂| / √N̂`; zero when both vanish.
    pub fn relative_gap(&self) -> f64 {
        let d = (self.sqrt_lbar - self.sqrt_nhat).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.sqrt_nhat
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepulsionProfile {
    pub center: Point,
    pub rows: Vec<RepulsionRow>,
    /// Scales whose balls do not fit in the domain.
    pub skipped: Vec<u32>,
}

struct ProbeScale<'g> {
    k: u32,
    counter: DowncrossingCounter<'g>,
    exits: Vec<(VertexId, f64)>,
}

/// Precomputed downcrossing zones and exit distributions for repeated
/// comparability profiles around one centre.
pub struct RepulsionProbe<'g> {
    center: Point,
    scales: Vec<ProbeScale<'g>>,
    skipped: Vec<u32>,
}

impl<'g> RepulsionProbe<'g> {
    /// Keeps the scales `k` for which the closures of `B(x; k + k^γ)` and
    /// `B(x; k + 1)` lie in the domain.
    pub fn new(
        graph: &'g WiredGraph,
        center: Point,
        scales: impl IntoIterator<Item = u32>,
        gamma: f64,
    ) -> Result<Self> {
        let mut kept = Vec::new();
        let mut skipped = Vec::new();
        for k in scales {
            let counter = DowncrossingCounter::gamma_scale(graph, center, k as f64, gamma);
            let average_ball = ball(center, k as f64 + 1.0);
            let fits = average_ball.iter().all(|p| {
                graph.sites().contains(p)
                    && p.neighbors().iter().all(|&q| graph.sites().contains(q))
            });
            match counter {
                Ok(counter) if fits => {
                    let kernel = ball_poisson_kernel(center, k as f64 + 1.0)?;
                    let exits = kernel
                        .targets
                        .iter()
                        .zip(&kernel.probs)
                        .map(|(&z, &p)| (graph.vertex(z).expect("ball fits"), p))
                        .collect();
                    kept.push(ProbeScale { k, counter, exits });
                }
                Ok(_) | Err(Error::BallOutsideDomain { .. }) => skipped.push(k),
                Err(e) => return Err(e),
            }
        }
        Ok(RepulsionProbe {
            center,
            scales: kept,
            skipped,
        })
    }

    pub fn admissible(&self) -> Vec<u32> {
        self.scales.iter().map(|s| s.k).collect()
    }

    /// Samples `L_t` once and records both quantities at every kept scale.
    pub fn run<R: Rng + ?Sized>(
        &self,
        walker: &Walker<'g>,
        t: f64,
        rng: &mut R,
    ) -> Result<RepulsionProfile> {
        let mut counters: Vec<DowncrossingCounter<'g>> =
            self.scales.iter().map(|s| s.counter.clone()).collect();
        let field = walker.sample_field(t, rng, &mut counters)?;
        Ok(self.profile(&field, &counters))
    }

    fn profile(
        &self,
        field: &LocalTimeField,
        counters: &[DowncrossingCounter<'g>],
    ) -> RepulsionProfile {
        let rows = self
            .scales
            .iter()
            .zip(counters)
            .map(|(s, c)| {
                let lbar: f64 = s.exits.iter().map(|&(v, p)| p * field.get(v)).sum();
                RepulsionRow {
                    k: s.k,
                    sqrt_nhat: c.log().sqrt_normalized(),
                    sqrt_lbar: lbar.max(0.0).sqrt(),
                }
            })
            .collect();
        RepulsionProfile {
            center: self.center,
            rows,
            skipped: self.skipped.clone(),
        }
    }
}

/// Comparability profile at scales `k` for a fresh `L_t`.
pub fn repulsion_profile<R: Rng + ?Sized>(
    walker: &Walker<'_>,
    t: f64,
    center: Point,
    scales: impl IntoIterator<Item = u32>,
    gamma: f64,
    rng: &mut R,
) -> Result<RepulsionProfile> {
    RepulsionProbe::new(walker.graph(), center, scales, gamma)?.run(walker, t, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::ball_with_radius;
    use crate::rng;
    use crate::walk::WalkConfig;

    fn set(points: &[(i64, i64)]) -> SiteSet {
        points.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn phase(n: f64) -> PhaseTimes {
        phase_times(n, DEFAULT_ETA0, DEFAULT_GAMMA).unwrap()
    }

    #[test]
    fn phase_time_values() {
        let p = phase(1.0);
        assert!((p.t_a - 2.0).abs() < 1e-14);
        assert_eq!(p.t_b, 0.0);
        assert_eq!(p.r_n, 1.0);
        let p = phase(4.0);
        assert!((p.r_n - 2f64.sqrt()).abs() < 1e-15);
        let c = 4.0 * 2f64.sqrt() - 4f64.ln() / (2.0 * 2f64.sqrt());
        assert!((p.t_c.sqrt() - c).abs() < 1e-14);
        assert!((c - 5.16673).abs() < 1e-5);
        assert!((p.t(0.0) - p.t_a - p.t_b).abs() < 1e-14);
        assert!(phase_times(4.0, 0.25, 0.3).is_err());
        assert!(phase_times(4.0, 0.5, 0.1).is_err());
        assert!(phase_times(0.0, 0.25, 0.1).is_err());
    }

    #[test]
    fn expansion_tracks_sqrt_t() {
        let p = phase(400.0);
        for s in [-2.0, 0.0, 3.0] {
            assert!((p.t(s).sqrt() - p.sqrt_t_expansion(s)).abs() < 0.05);
        }
    }

    #[test]
    fn low_set_limits() {
        let sites = ball_with_radius(Point::ORIGIN, 8.0);
        let g = WiredGraph::from_sites(sites.clone()).unwrap();
        let w = Walker::new(&g, &WalkConfig::default());
        let bulk: SiteSet = sites.iter().filter(|p| p.norm() < 4.0).collect();
        let zero = w
            .sample_field(0.0, &mut rng::stream(1, 0), &mut crate::walk::NoObserver)
            .unwrap();
        assert_eq!(low_set(&g, &zero, 0.0, &bulk), bulk);
        let f = w
            .sample_field(3.0, &mut rng::stream(1, 1), &mut crate::walk::NoObserver)
            .unwrap();
        assert_eq!(low_set(&g, &f, f64::INFINITY, &bulk), bulk);
        let unvisited: SiteSet = bulk
            .iter()
            .filter(|&p| f.get(g.vertex(p).unwrap()) == 0.0)
            .collect();
        assert_eq!(low_set(&g, &f, 0.0, &bulk), unvisited);
    }

    #[test]
    fn census_of_small_sets() {
        let p = phase(5.0);
        let empty = cluster_census(&SiteSet::new(), &p).unwrap();
        assert!(empty.clusters.is_empty());
        let single = cluster_census(&set(&[(7, -3)]), &p).unwrap();
        assert!(!single.clusters.is_empty());
        assert!(single.clusters.iter().all(|c| c.scale == 0));
        assert_eq!(single.covered(), set(&[(7, -3)]));
    }

    #[test]
    fn clustered_examples() {
        let p = phase(8.0);
        assert!(clustered_test(&SiteSet::new(), &p).unwrap().clustered);
        assert!(clustered_test(&set(&[(3, 3)]), &p).unwrap().clustered);
        // distance 50 just below e^{n/2} = e^4: log-distance 3.91 lies in
        // [⌊r_n⌋ + 1, ⌊n - r_n⌋ - 2] = [2, 4]
        let pair = set(&[(0, 0), (50, 0)]);
        let v = clustered_test(&pair, &p).unwrap();
        assert!(!v.clustered);
        assert!(!v.gap_condition);
    }

    #[test]
    fn clustering_number_examples() {
        let p = phase(5.0);
        assert_eq!(clustering_number(&SiteSet::new(), &p).unwrap(), 0);
        assert_eq!(clustering_number(&set(&[(1, 2)]), &p).unwrap(), 1);
        let j = p.cluster_scale().unwrap();
        let far = 2.0 * (j as f64).exp();
        let d = far.ceil() as i64 + 1;
        assert_eq!(clustering_number(&set(&[(0, 0), (d, 0)]), &p).unwrap(), 2);
    }

    #[test]
    fn skeleton_examples() {
        let p = phase(8.0);
        assert_eq!(skeleton(&SiteSet::new(), &p).unwrap(), Some(vec![]));
        let one = skeleton(&set(&[(10, 4)]), &p).unwrap().unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].dist(Point::new(10, 4)) < p.r_n.exp());
        let two = set(&[(0, 0), (1, 1), (2000, 0), (2001, 0)]);
        let s = skeleton(&two, &p).unwrap().unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.len(), clustering_number(&two, &p).unwrap());
        assert!(s[0].dist(s[1]).ln() > p.cluster_scale().unwrap() as f64 - 3.0);
        assert_eq!(
            skeleton(&set(&[(0, 0), (50, 0)]), &p).unwrap_err(),
            Error::NotClustered
        );
    }

    #[test]
    fn repulsion_table_shapes() {
        let sites = ball_with_radius(Point::ORIGIN, 25.0);
        let g = WiredGraph::from_sites(sites).unwrap();
        let w = Walker::new(&g, &WalkConfig::default());
        let mut rng = rng::stream(3, 0);
        let prof = repulsion_profile(&w, 0.0, Point::ORIGIN, [1, 2, 3], 0.2, &mut rng).unwrap();
        assert_eq!(prof.rows.len(), 2);
        assert_eq!(prof.skipped, vec![3]);
        assert!(prof
            .rows
            .iter()
            .all(|r| r.sqrt_nhat == 0.0 && r.sqrt_lbar == 0.0));
        let prof = repulsion_profile(&w, 10.0, Point::ORIGIN, [1, 2], 0.2, &mut rng).unwrap();
        assert!(prof
            .rows
            .iter()
            .all(|r| r.sqrt_nhat > 0.0 && r.sqrt_lbar > 0.0));
    }
}
