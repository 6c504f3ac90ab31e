use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Poisson};

use crate::domain::{VertexId, WiredGraph, BOUNDARY};
use crate::error::{Error, Result};
use crate::rng::{self, TrialRng};

use super::observer::{NoObserver, WalkObserver};

/// Rate of every edge clock, so that each excursion has the normalisation
/// in which `E L_t(x) = t`.
pub const DEFAULT_EDGE_RATE: f64 = 1.0 / (2.0 * PI);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkConfig {
    edge_rate: f64,
    seed: u64,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            edge_rate: DEFAULT_EDGE_RATE,
            seed: 0,
        }
    }
}

impl WalkConfig {
    pub fn new(edge_rate: f64, seed: u64) -> Result<Self> {
        if !(edge_rate.is_finite() && edge_rate > 0.0) {
            return Err(Error::Parameter(format!(
                "edge rate must be positive and finite (got {edge_rate})"
            )));
        }
        Ok(WalkConfig { edge_rate, seed })
    }

    pub fn with_seed(seed: u64) -> Self {
        WalkConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn edge_rate(&self) -> f64 {
        self.edge_rate
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Random stream `index` of this configuration's seed.
    pub fn rng(&self, index: u64) -> TrialRng {
        rng::stream(self.seed, index)
    }
}

/// One excursion away from `∂`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcursionRecord {
    pub entry: VertexId,
    /// Real time of the return to `∂`, measured from the start of the excursion.
    pub exit_time: f64,
    /// Local time gained at each visited vertex, sorted by vertex.
    pub increments: Vec<(VertexId, f64)>,
    pub duration: f64,
}

impl ExcursionRecord {
    pub fn increment(&self, v: VertexId) -> f64 {
        self.increments
            .binary_search_by_key(&v, |&(w, _)| w)
            .map_or(0.0, |i| self.increments[i].1)
    }

    pub fn visits(&self, v: VertexId) -> bool {
        self.increment(v) > 0.0
    }
}

/// The excursions made before a given amount of `∂`-time.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoundaryTimeline {
    pub horizon: f64,
    /// `∂`-time at which each excursion starts, nondecreasing.
    pub starts: Vec<f64>,
    pub durations: Vec<f64>,
}

impl BoundaryTimeline {
    /// Real time at which the local time at `∂` first exceeds `t`.
    pub fn inverse(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0 && t <= self.horizon) {
            return Err(Error::BeyondHorizon {
                t,
                horizon: self.horizon,
            });
        }
        let done = self.starts.partition_point(|&s| s <= t);
        Ok(t + self.durations[..done].iter().sum::<f64>())
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }
}

/// Local times of a walk started at `∂`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalTimeField {
    pub local: Vec<f64>,
    pub boundary: f64,
    pub elapsed: f64,
    pub timeline: BoundaryTimeline,
}

impl LocalTimeField {
    fn zero(len: usize) -> Self {
        LocalTimeField {
            local: vec![0.0; len],
            boundary: 0.0,
            elapsed: 0.0,
            timeline: BoundaryTimeline::default(),
        }
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> f64 {
        self.local[v as usize]
    }

    pub fn excursions(&self) -> usize {
        self.timeline.len()
    }

    /// `S = Σ_x L(x)`.
    pub fn interior_total(&self) -> f64 {
        self.local.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.local.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Relative mismatch between `Σ_x L(x) + L(∂)` and the elapsed real time.
    pub fn conservation_error(&self) -> f64 {
        let total = self.interior_total() + self.boundary;
        (total - self.elapsed).abs() / self.elapsed.max(f64::MIN_POSITIVE)
    }

    pub fn inverse_boundary_time(&self, t: f64) -> Result<f64> {
        self.timeline.inverse(t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverResult {
    /// Real time at which the last vertex is first entered.
    pub real_time: f64,
    /// Local time at `∂` at that moment.
    pub boundary_time: f64,
    pub last_covered: VertexId,
    /// Excursions started up to and including the covering one.
    pub excursions: u64,
    /// Local times up to the first jump out of the last covered vertex.
    pub field: LocalTimeField,
}

trait Sink {
    fn hold(&mut self, v: VertexId, dt: f64);
    #[inline]
    fn enter(&mut self, _v: VertexId) -> bool {
        false
    }
}

impl Sink for [f64] {
    #[inline]
    fn hold(&mut self, v: VertexId, dt: f64) {
        self[v as usize] += dt;
    }
}

struct CoverSink<'a> {
    local: &'a mut [f64],
    seen: Vec<bool>,
    uncovered: usize,
}

impl Sink for CoverSink<'_> {
    #[inline]
    fn hold(&mut self, v: VertexId, dt: f64) {
        self.local[v as usize] += dt;
    }

    #[inline]
    fn enter(&mut self, v: VertexId) -> bool {
        let seen = &mut self.seen[v as usize];
        if !*seen {
            *seen = true;
            self.uncovered -= 1;
        }
        self.uncovered == 0
    }
}

enum Outcome {
    Returned {
        duration: f64,
    },
    Stopped {
        at: VertexId,
        time: f64,
        duration: f64,
    },
}

/// Simulation engine bound to one graph and edge rate.
#[derive(Debug, Clone, Copy)]
pub struct Walker<'g> {
    graph: &'g WiredGraph,
    edge_rate: f64,
    interior_mean: f64,
    boundary_mean: f64,
}

impl<'g> Walker<'g> {
    pub fn new(graph: &'g WiredGraph, config: &WalkConfig) -> Self {
        Walker {
            graph,
            edge_rate: config.edge_rate,
            interior_mean: 1.0 / (4.0 * config.edge_rate),
            boundary_mean: 1.0 / (graph.deg_boundary() as f64 * config.edge_rate),
        }
    }

    pub fn graph(&self) -> &'g WiredGraph {
        self.graph
    }

    /// Mean number of excursions per unit of `∂`-time.
    pub fn excursion_rate(&self) -> f64 {
        1.0 / self.boundary_mean
    }

    #[inline]
    fn run<R, O, S>(
        &self,
        rng: &mut R,
        start: f64,
        sink: &mut S,
        obs: &mut O,
    ) -> (VertexId, Outcome)
    where
        R: Rng + ?Sized,
        O: WalkObserver + ?Sized,
        S: Sink + ?Sized,
    {
        let slots = self.graph.boundary_slots();
        let entry = slots[rng.random_range(0..slots.len())];
        let mut t = start;
        let mut duration = 0.0;
        let mut v = entry;
        obs.on_jump(BOUNDARY, v, t);
        if sink.enter(v) {
            return (
                entry,
                Outcome::Stopped {
                    at: v,
                    time: t,
                    duration,
                },
            );
        }
        loop {
            let dt: f64 = Exp1.sample(rng);
            let dt = dt * self.interior_mean;
            sink.hold(v, dt);
            t += dt;
            duration += dt;
            let w = self.graph.neighbors(v)[(rng.next_u32() >> 30) as usize];
            obs.on_jump(v, w, t);
            if w == BOUNDARY {
                obs.on_boundary_return(t);
                return (entry, Outcome::Returned { duration });
            }
            v = w;
            if sink.enter(v) {
                return (
                    entry,
                    Outcome::Stopped {
                        at: v,
                        time: t,
                        duration,
                    },
                );
            }
        }
    }

    /// Runs one excursion starting at real time `start`, adding its local
    /// times to `local`. Returns the entry vertex and the duration.
    pub fn excursion_into<R, O>(
        &self,
        rng: &mut R,
        start: f64,
        local: &mut [f64],
        obs: &mut O,
    ) -> (VertexId, f64)
    where
        R: Rng + ?Sized,
        O: WalkObserver + ?Sized,
    {
        match self.run(rng, start, local, obs) {
            (entry, Outcome::Returned { duration }) => (entry, duration),
            (_, Outcome::Stopped { .. }) => unreachable!("plain sinks never stop"),
        }
    }

    pub fn excursion<R: Rng + ?Sized>(&self, rng: &mut R) -> ExcursionRecord {
        let mut local = vec![0.0; self.graph.len()];
        let (entry, duration) = self.excursion_into(rng, 0.0, &mut local, &mut NoObserver);
        let increments = local
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0.0)
            .map(|(v, &l)| (v as VertexId, l))
            .collect();
        ExcursionRecord {
            entry,
            exit_time: duration,
            increments,
            duration,
        }
    }

    /// Samples `L_t` by drawing the Poisson number of excursions made by
    /// `∂`-time `t` and placing their starts uniformly on `[0, t]`.
    pub fn sample_field<R, O>(&self, t: f64, rng: &mut R, obs: &mut O) -> Result<LocalTimeField>
    where
        R: Rng + ?Sized,
        O: WalkObserver + ?Sized,
    {
        check_time(t)?;
        let mut field = LocalTimeField::zero(self.graph.len());
        let lambda = self.excursion_rate() * t;
        let count = if lambda > 0.0 {
            let poisson = Poisson::new(lambda)
                .map_err(|e| Error::Parameter(format!("excursion intensity {lambda}: {e}")))?;
            poisson.sample(rng) as usize
        } else {
            0
        };
        let mut starts: Vec<f64> = (0..count).map(|_| rng.random::<f64>() * t).collect();
        starts.sort_by(f64::total_cmp);
        let mut durations = Vec::with_capacity(count);
        let mut spent = 0.0;
        for &s in &starts {
            let (_, d) = self.excursion_into(rng, s + spent, &mut field.local, obs);
            spent += d;
            durations.push(d);
        }
        field.boundary = t;
        field.elapsed = t + spent;
        field.timeline = BoundaryTimeline {
            horizon: t,
            starts,
            durations,
        };
        Ok(field)
    }

    /// Samples `L_t` by simulating the holding times at `∂` explicitly.
    pub fn run_until_boundary_time<R, O>(
        &self,
        t: f64,
        rng: &mut R,
        obs: &mut O,
    ) -> Result<LocalTimeField>
    where
        R: Rng + ?Sized,
        O: WalkObserver + ?Sized,
    {
        check_time(t)?;
        let mut field = LocalTimeField::zero(self.graph.len());
        let mut clock = 0.0;
        let mut at_boundary = 0.0;
        loop {
            let hold: f64 = Exp1.sample(rng);
            let hold = hold * self.boundary_mean;
            if at_boundary + hold > t {
                clock += t - at_boundary;
                break;
            }
            at_boundary += hold;
            clock += hold;
            let (_, d) = self.excursion_into(rng, clock, &mut field.local, obs);
            clock += d;
            field.timeline.starts.push(at_boundary);
            field.timeline.durations.push(d);
        }
        field.boundary = t;
        field.elapsed = clock;
        field.timeline.horizon = t;
        Ok(field)
    }

    /// Runs until every interior vertex has been visited.
    pub fn run_to_cover<R, O>(&self, rng: &mut R, obs: &mut O) -> CoverResult
    where
        R: Rng + ?Sized,
        O: WalkObserver + ?Sized,
    {
        let n = self.graph.len();
        let mut local = vec![0.0; n];
        let mut starts = Vec::new();
        let mut durations = Vec::new();
        let mut clock = 0.0;
        let mut at_boundary = 0.0;
        let mut sink = CoverSink {
            local: &mut local,
            seen: vec![false; n],
            uncovered: n,
        };
        loop {
            let hold: f64 = Exp1.sample(rng);
            at_boundary += hold * self.boundary_mean;
            clock += hold * self.boundary_mean;
            starts.push(at_boundary);
            match self.run(rng, clock, &mut sink, obs) {
                (_, Outcome::Returned { duration }) => {
                    clock += duration;
                    durations.push(duration);
                }
                (_, Outcome::Stopped { at, time, duration }) => {
                    let dt: f64 = Exp1.sample(rng);
                    let dt = dt * self.interior_mean;
                    sink.local[at as usize] += dt;
                    durations.push(duration + dt);
                    let excursions = starts.len() as u64;
                    return CoverResult {
                        real_time: time,
                        boundary_time: at_boundary,
                        last_covered: at,
                        excursions,
                        field: LocalTimeField {
                            local,
                            boundary: at_boundary,
                            elapsed: time + dt,
                            timeline: BoundaryTimeline {
                                horizon: at_boundary,
                                starts,
                                durations,
                            },
                        },
                    };
                }
            }
        }
    }

    pub fn edge_rate(&self) -> f64 {
        self.edge_rate
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "boundary time must be finite and nonnegative (got {t})"
        )))
    }
}

pub fn simulate_excursion<R: Rng + ?Sized>(
    graph: &WiredGraph,
    config: &WalkConfig,
    rng: &mut R,
) -> ExcursionRecord {
    Walker::new(graph, config).excursion(rng)
}

pub fn sample_local_time_field<R: Rng + ?Sized>(
    graph: &WiredGraph,
    config: &WalkConfig,
    t: f64,
    rng: &mut R,
) -> Result<LocalTimeField> {
    Walker::new(graph, config).sample_field(t, rng, &mut NoObserver)
}

pub fn run_to_cover<R: Rng + ?Sized>(
    graph: &WiredGraph,
    config: &WalkConfig,
    rng: &mut R,
) -> CoverResult {
    Walker::new(graph, config).run_to_cover(rng, &mut NoObserver)
}

/// `L_t^{-1}(∂) = t + S_t`: the real time at which `∂` has accumulated more
/// than `t` units of local time.
pub fn inverse_boundary_time(field: &LocalTimeField, t: f64) -> Result<f64> {
    field.inverse_boundary_time(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Point, SiteSet};

    fn graph_of(points: &[(i64, i64)]) -> WiredGraph {
        let sites: SiteSet = points.iter().map(|&(x, y)| Point::new(x, y)).collect();
        WiredGraph::from_sites(sites).unwrap()
    }

    fn block() -> WiredGraph {
        graph_of(&[
            (-1, -1),
            (0, -1),
            (1, -1),
            (-1, 0),
            (0, 0),
            (1, 0),
            (-1, 1),
            (0, 1),
            (1, 1),
        ])
    }

    #[test]
    fn rejects_bad_rates() {
        assert!(WalkConfig::new(0.0, 1).is_err());
        assert!(WalkConfig::new(f64::NAN, 1).is_err());
        assert!(WalkConfig::new(1.0, 1).is_ok());
    }

    #[test]
    fn excursion_duration_is_sum_of_increments() {
        let g = block();
        let mut rng = rng::stream(1, 0);
        for _ in 0..200 {
            let e = simulate_excursion(&g, &WalkConfig::default(), &mut rng);
            let sum: f64 = e.increments.iter().map(|&(_, l)| l).sum();
            assert!((sum - e.duration).abs() <= 1e-12 * e.duration.max(1.0));
            assert!(g.boundary_multiplicity(e.entry) > 0);
            assert!(e.visits(e.entry));
        }
    }

    #[test]
    fn zero_time_gives_zero_field() {
        let g = block();
        let f = sample_local_time_field(&g, &WalkConfig::default(), 0.0, &mut rng::stream(2, 0))
            .unwrap();
        assert!(f.local.iter().all(|&l| l == 0.0));
        assert_eq!(f.excursions(), 0);
        assert_eq!(f.inverse_boundary_time(0.0).unwrap(), 0.0);
        assert!(
            sample_local_time_field(&g, &WalkConfig::default(), -1.0, &mut rng::stream(2, 0))
                .is_err()
        );
    }

    #[test]
    fn fields_conserve_time_and_invert() {
        let g = block();
        let w = Walker::new(&g, &WalkConfig::default());
        let mut rng = rng::stream(3, 0);
        for &t in &[0.5, 3.0, 20.0] {
            for explicit in [false, true] {
                let f = if explicit {
                    w.run_until_boundary_time(t, &mut rng, &mut NoObserver)
                        .unwrap()
                } else {
                    w.sample_field(t, &mut rng, &mut NoObserver).unwrap()
                };
                assert!(f.conservation_error() < 1e-12);
                let total: f64 = f.timeline.durations.iter().sum();
                let inv = f.inverse_boundary_time(t).unwrap();
                assert!((inv - t - total).abs() < 1e-9);
                assert!((inv - f.elapsed).abs() < 1e-9);
                assert!(f.inverse_boundary_time(t * 1.01).is_err());
                let mut prev = 0.0;
                for i in 0..=50 {
                    let s = t * i as f64 / 50.0;
                    let v = f.inverse_boundary_time(s).unwrap();
                    assert!(v >= prev);
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn inverse_is_right_continuous_at_starts() {
        let timeline = BoundaryTimeline {
            horizon: 3.0,
            starts: vec![1.0, 2.0],
            durations: vec![5.0, 7.0],
        };
        assert_eq!(timeline.inverse(0.999).unwrap(), 0.999);
        assert_eq!(timeline.inverse(1.0).unwrap(), 6.0);
        assert_eq!(timeline.inverse(2.5).unwrap(), 14.5);
    }

    #[test]
    fn cover_visits_everything() {
        let g = block();
        let mut rng = rng::stream(4, 0);
        for _ in 0..100 {
            let c = run_to_cover(&g, &WalkConfig::default(), &mut rng);
            assert!(c.field.min() > 0.0);
            assert!(c.field.conservation_error() < 1e-12);
            assert!(c.boundary_time > 0.0 && c.real_time >= c.boundary_time);
            assert!(c.excursions >= 1);
        }
    }

    #[test]
    fn observers_see_consistent_times() {
        #[derive(Default)]
        struct Trace {
            last: f64,
            returns: usize,
            leaves: usize,
        }
        impl WalkObserver for Trace {
            fn on_jump(&mut self, from: VertexId, _to: VertexId, time: f64) {
                assert!(time >= self.last);
                self.last = time;
                if from == BOUNDARY {
                    self.leaves += 1;
                }
            }
            fn on_boundary_return(&mut self, _time: f64) {
                self.returns += 1;
            }
        }
        let g = block();
        let w = Walker::new(&g, &WalkConfig::default());
        let mut trace = Trace::default();
        let f = w
            .sample_field(10.0, &mut rng::stream(5, 0), &mut trace)
            .unwrap();
        assert_eq!(trace.leaves, f.excursions());
        assert_eq!(trace.returns, f.excursions());
        assert!(trace.last <= f.elapsed + 1e-9);
    }
}
