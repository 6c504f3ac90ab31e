use crate::error::{Error, Result};

use super::{LatticeDomain, Point, SiteSet};

pub type VertexId = u32;

/// Id of the contracted boundary vertex `∂`.
pub const BOUNDARY: VertexId = VertexId::MAX;

/// A finite site set with its outer boundary contracted to a single vertex.
///
/// Every interior vertex keeps its four lattice edges; an edge that leaves the
/// set becomes one unit of multiplicity toward [`BOUNDARY`].
#[derive(Debug, Clone)]
pub struct WiredGraph {
    sites: SiteSet,
    neighbors: Vec<[VertexId; 4]>,
    /// One entry per boundary edge: the interior endpoint.
    boundary_slots: Vec<VertexId>,
    outer_boundary: Vec<Point>,
}

impl WiredGraph {
    pub fn new(domain: &LatticeDomain) -> Result<Self> {
        Self::from_sites(domain.sites.clone())
    }

    pub fn from_sites(sites: SiteSet) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let mut neighbors = Vec::with_capacity(sites.len());
        let mut boundary_slots = Vec::new();
        for (v, p) in sites.iter().enumerate() {
            let mut row = [BOUNDARY; 4];
            for (slot, q) in row.iter_mut().zip(p.neighbors()) {
                match sites.index_of(q) {
                    Some(w) => *slot = w as VertexId,
                    None => boundary_slots.push(v as VertexId),
                }
            }
            neighbors.push(row);
        }
        let outer_boundary = sites.outer_boundary();
        Ok(WiredGraph {
            sites,
            neighbors,
            boundary_slots,
            outer_boundary,
        })
    }

    /// Number of interior vertices `|D_N|`.
    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn sites(&self) -> &SiteSet {
        &self.sites
    }

    pub fn coord(&self, v: VertexId) -> Point {
        self.sites.points()[v as usize]
    }

    pub fn vertex(&self, p: Point) -> Option<VertexId> {
        self.sites.index_of(p).map(|i| i as VertexId)
    }

    /// Neighbours of an interior vertex in the order +x, -x, +y, -y, with
    /// [`BOUNDARY`] standing in for edges to `∂`.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId; 4] {
        &self.neighbors[v as usize]
    }

    /// Total edge multiplicity incident to `∂`.
    pub fn deg_boundary(&self) -> usize {
        self.boundary_slots.len()
    }

    /// Interior endpoints of the boundary edges, one entry per unit of
    /// multiplicity.
    pub fn boundary_slots(&self) -> &[VertexId] {
        &self.boundary_slots
    }

    /// Number of edges from `v` to `∂`.
    pub fn boundary_multiplicity(&self, v: VertexId) -> usize {
        self.neighbors(v).iter().filter(|&&w| w == BOUNDARY).count()
    }

    pub fn interior_edge_count(&self) -> usize {
        self.neighbors
            .iter()
            .map(|row| row.iter().filter(|&&w| w != BOUNDARY).count())
            .sum::<usize>()
            / 2
    }

    /// Lattice points of the outer boundary (before contraction).
    pub fn outer_boundary(&self) -> &[Point] {
        &self.outer_boundary
    }

    /// Number of vertices of the wired graph, `|D_N| + 1`.
    pub fn total_vertices(&self) -> usize {
        self.len() + 1
    }
}
