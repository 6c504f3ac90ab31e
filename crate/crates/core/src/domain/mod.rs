//! Lattice discretizations of planar shapes and the wired graph built on them.

mod geometry;
mod graph;
mod shape;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use geometry::in_open_ball;
pub use geometry::{
    ball, ball_with_radius, bulk, log_scale, log_scale_witness, partition, r_bulk,
    scaled_lattice_spacing, ScaledLatticePartition,
};
pub use graph::{VertexId, WiredGraph, BOUNDARY};
pub use shape::{Polygon, Shape};

/// A point of the square lattice. Ordered row-major: by `y`, then by `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn norm2(self) -> i64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(self) -> f64 {
        (self.norm2() as f64).sqrt()
    }

    pub fn dist2(self, other: Point) -> i64 {
        (self - other).norm2()
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.dist2(other) as f64).sqrt()
    }

    /// The four lattice neighbours in the order +x, -x, +y, -y.
    pub fn neighbors(self) -> [Point; 4] {
        [
            Point::new(self.x + 1, self.y),
            Point::new(self.x - 1, self.y),
            Point::new(self.x, self.y + 1),
            Point::new(self.x, self.y - 1),
        ]
    }

    pub fn as_f64(self) -> [f64; 2] {
        [self.x as f64, self.y as f64]
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A finite set of lattice points in canonical (row-major) order with an
/// index lookup.
#[derive(Debug, Clone, Default)]
pub struct SiteSet {
    points: Vec<Point>,
    index: HashMap<Point, usize>,
}

impl SiteSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.index.contains_key(&p)
    }

    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().copied()
    }

    pub fn is_subset(&self, other: &SiteSet) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    /// Sites outside the set that share a lattice edge with it, in canonical
    /// order.
    pub fn outer_boundary(&self) -> Vec<Point> {
        let mut out: Vec<Point> = self
            .iter()
            .flat_map(|p| p.neighbors())
            .filter(|q| !self.contains(*q))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Euclidean distance from `p` to the nearest lattice point outside the set.
    ///
    /// The nearest outside point is always adjacent to the set, so scanning the
    /// outer boundary is exact.
    pub fn distance_to_complement(&self, p: Point) -> f64 {
        if !self.contains(p) {
            return 0.0;
        }
        self.outer_boundary()
            .into_iter()
            .map(|z| z.dist2(p))
            .min()
            .map_or(f64::INFINITY, |d2| (d2 as f64).sqrt())
    }

    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let first = *self.points.first()?;
        Some(self.iter().fold((first, first), |(lo, hi), p| {
            (
                Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }
}

impl FromIterator<Point> for SiteSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        let mut points: Vec<Point> = iter.into_iter().collect();
        points.sort();
        points.dedup();
        let index = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        SiteSet { points, index }
    }
}

impl PartialEq for SiteSet {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for SiteSet {}

/// The sites `D_N = {x : d(x/N, D^c) > 1/N}` of a shape at scale `N = e^n`.
#[derive(Debug, Clone)]
pub struct LatticeDomain {
    pub shape: Shape,
    /// Linear scale `N`.
    pub scale: f64,
    /// Log-scale `n = log N`.
    pub n: f64,
    pub sites: SiteSet,
}

impl LatticeDomain {
    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// The bulk `D_n^{n - 2 log n}`.
    pub fn bulk(&self) -> SiteSet {
        bulk(&self.sites, self.n)
    }
}

/// Discretizes `shape` at log-scale `n`, i.e. at `N = e^n`.
pub fn discretize(shape: &Shape, n: f64) -> Result<LatticeDomain> {
    let mut domain = discretize_scale(shape, n.exp())?;
    domain.n = n;
    Ok(domain)
}

/// Discretizes `shape` at linear scale `N`.
pub fn discretize_scale(shape: &Shape, scale: f64) -> Result<LatticeDomain> {
    if !scale.is_finite() || scale <= 1.0 {
        return Err(Error::ScaleTooSmall(scale));
    }
    let reach = (scale * shape.enclosing_radius()).ceil() as i64 + 1;
    let mut points = Vec::new();
    for y in -reach..=reach {
        for x in -reach..=reach {
            // d(x/N, D^c) > 1/N  <=>  d(x, (N D)^c) > 1
            if shape.scaled_clearance([x as f64, y as f64], scale) > 1.0 {
                points.push(Point::new(x, y));
            }
        }
    }
    Ok(LatticeDomain {
        shape: shape.clone(),
        scale,
        n: scale.ln(),
        sites: points.into_iter().collect(),
    })
}
