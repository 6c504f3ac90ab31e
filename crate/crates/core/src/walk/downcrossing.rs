use crate::domain::{ball, Point, VertexId, WiredGraph, BOUNDARY};
use crate::error::{Error, Result};

use super::observer::WalkObserver;

const INNER: u8 = 0;
const ANNULUS: u8 = 1;
const OUTER: u8 = 2;

/// Radii `(k + ½k^γ, k + k^γ)` of the downcrossings attached to scale `k`.
pub fn gamma_radii(k: f64, gamma: f64) -> (f64, f64) {
    let w = k.powf(gamma);
    (k + 0.5 * w, k + w)
}

/// One traversal from outside `B(x;l)` into `B(x;k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Downcrossing {
    /// First point outside `B(x;l)` reached before the traversal; `None`
    /// when it started at `∂`.
    pub start: Option<Point>,
    /// First point of `B(x;k)` reached.
    pub entry: Point,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DowncrossingLog {
    pub center: Point,
    pub inner: f64,
    pub outer: f64,
    pub crossings: Vec<Downcrossing>,
}

impl DowncrossingLog {
    pub fn count(&self) -> usize {
        self.crossings.len()
    }

    /// `N̂ = (l - k) N`.
    pub fn normalized(&self) -> f64 {
        (self.outer - self.inner) * self.count() as f64
    }

    pub fn sqrt_normalized(&self) -> f64 {
        self.normalized().sqrt()
    }

    /// Whether `√N̂` is of the form `√(½k^γ m)` with `m` a nonnegative integer.
    pub fn in_range_set(&self, k: f64, gamma: f64) -> bool {
        let m = self.normalized() / (0.5 * k.powf(gamma));
        (m - m.round()).abs() <= 1e-9 * m.max(1.0)
    }
}

/// Observer counting `(x;k,l)`-downcrossings. `∂` lies outside every ball.
#[derive(Debug, Clone)]
pub struct DowncrossingCounter<'g> {
    graph: &'g WiredGraph,
    zone: Vec<u8>,
    armed: bool,
    pending: Option<Point>,
    log: DowncrossingLog,
}

impl<'g> DowncrossingCounter<'g> {
    /// Requires the closure of `B(x;l)` to lie in the domain.
    pub fn new(graph: &'g WiredGraph, center: Point, k: f64, l: f64) -> Result<Self> {
        check_radii(k, l)?;
        let outer = ball(center, l);
        let sites = graph.sites();
        let inside = outer
            .iter()
            .all(|p| sites.contains(p) && p.neighbors().iter().all(|&q| sites.contains(q)));
        if !inside {
            return Err(Error::BallOutsideDomain {
                x: center.x,
                y: center.y,
                radius: l.exp(),
            });
        }
        Ok(Self::build(graph, center, k, l))
    }

    /// The `γ`-scale counter with radii from [`gamma_radii`].
    pub fn gamma_scale(graph: &'g WiredGraph, center: Point, k: f64, gamma: f64) -> Result<Self> {
        let (inner, outer) = gamma_radii(k, gamma);
        Self::new(graph, center, inner, outer)
    }

    /// Skips the containment check, e.g. for a domain inside `B(x;k)`.
    pub fn unchecked(graph: &'g WiredGraph, center: Point, k: f64, l: f64) -> Result<Self> {
        check_radii(k, l)?;
        Ok(Self::build(graph, center, k, l))
    }

    fn build(graph: &'g WiredGraph, center: Point, k: f64, l: f64) -> Self {
        let (rk, rl) = (k.exp(), l.exp());
        let zone = graph
            .sites()
            .iter()
            .map(|p| {
                let d = (p.dist2(center) as f64).sqrt();
                if d < rk {
                    INNER
                } else if d < rl {
                    ANNULUS
                } else {
                    OUTER
                }
            })
            .collect();
        DowncrossingCounter {
            graph,
            zone,
            armed: true,
            pending: None,
            log: DowncrossingLog {
                center,
                inner: k,
                outer: l,
                crossings: Vec::new(),
            },
        }
    }

    pub fn log(&self) -> &DowncrossingLog {
        &self.log
    }

    pub fn into_log(self) -> DowncrossingLog {
        self.log
    }

    pub fn count(&self) -> usize {
        self.log.count()
    }
}

fn check_radii(k: f64, l: f64) -> Result<()> {
    if k.is_finite() && l.is_finite() && k <= l {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "downcrossing radii need k <= l (got k = {k}, l = {l})"
        )))
    }
}

impl WalkObserver for DowncrossingCounter<'_> {
    #[inline]
    fn on_jump(&mut self, _from: VertexId, to: VertexId, _time: f64) {
        let zone = if to == BOUNDARY {
            OUTER
        } else {
            self.zone[to as usize]
        };
        if self.armed {
            if zone == INNER {
                self.log.crossings.push(Downcrossing {
                    start: self.pending.take(),
                    entry: self.graph.coord(to),
                });
                self.armed = false;
            }
        } else if zone == OUTER {
            self.armed = true;
            self.pending = (to != BOUNDARY).then(|| self.graph.coord(to));
        }
    }
}
