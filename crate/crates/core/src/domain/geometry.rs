use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{Point, SiteSet};

/// Spacing `⌊e^k⌋` of the scaled lattice `X_k`.
pub fn scaled_lattice_spacing(k: u32) -> i64 {
    (k as f64).exp().floor() as i64
}

#[inline]
pub(crate) fn in_open_ball(p: Point, center: Point, radius: f64) -> bool {
    (p.dist2(center) as f64).sqrt() < radius
}

/// Open Euclidean ball `{y : |y - x| < radius}`.
pub fn ball_with_radius(center: Point, radius: f64) -> SiteSet {
    if radius.is_nan() || radius <= 0.0 {
        return SiteSet::new();
    }
    let reach = radius.ceil() as i64;
    let mut points = Vec::new();
    for dy in -reach..=reach {
        for dx in -reach..=reach {
            let p = Point::new(center.x + dx, center.y + dy);
            if in_open_ball(p, center, radius) {
                points.push(p);
            }
        }
    }
    points.into_iter().collect()
}

/// The ball `B(x;k) = {y : |y - x| < e^k}` of exponential radius `k`.
pub fn ball(center: Point, k: f64) -> SiteSet {
    ball_with_radius(center, k.exp())
}

/// The `r`-bulk `{x : d(x, U^c) > e^r}`.
pub fn r_bulk(sites: &SiteSet, r: f64) -> SiteSet {
    let threshold = r.exp();
    if sites.is_empty() {
        return SiteSet::new();
    }
    let boundary = sites.outer_boundary();
    let reach = threshold.floor() as i64;
    let mut offsets = Vec::new();
    for dy in -reach..=reach {
        for dx in -reach..=reach {
            let v = Point::new(dx, dy);
            if v != Point::ORIGIN && v.norm() <= threshold {
                offsets.push(v);
            }
        }
    }
    if offsets.len() <= boundary.len() {
        sites
            .iter()
            .filter(|&p| offsets.iter().all(|&v| sites.contains(p + v)))
            .collect()
    } else {
        sites
            .iter()
            .filter(|&p| boundary.iter().all(|&z| z.dist(p) > threshold))
            .collect()
    }
}

/// The bulk `U^{n - 2 log n}` used for a domain of log-scale `n`.
pub fn bulk(sites: &SiteSet, n: f64) -> SiteSet {
    r_bulk(sites, n - 2.0 * n.ln())
}

/// Log-scale `ρ(U)`: the least `k` such that `U ⊆ B(y;k)` for some `y ∈ X_k`.
///
/// `ρ(∅) = 0`.
pub fn log_scale(set: &SiteSet) -> u32 {
    log_scale_witness(set).map_or(0, |(k, _)| k)
}

/// `ρ(U)` together with a centre `y ∈ X_{ρ(U)}` whose ball contains `U`;
/// `None` for the empty set.
pub fn log_scale_witness(set: &SiteSet) -> Option<(u32, Point)> {
    let (lo, hi) = set.bounding_box()?;
    let extent = (hi.x - lo.x).max(hi.y - lo.y) as f64;
    for k in 0u32.. {
        let radius = (k as f64).exp();
        // points of an open ball of radius R are closer than 2R to each other
        if extent >= 2.0 * radius {
            continue;
        }
        let s = scaled_lattice_spacing(k);
        let ix = div_ceil(lo.x as f64 - radius, s)..=div_floor(hi.x as f64 + radius, s);
        let iy = div_ceil(lo.y as f64 - radius, s)..=div_floor(hi.y as f64 + radius, s);
        for j in iy {
            for i in ix.clone() {
                let y = Point::new(i * s, j * s);
                if set.iter().all(|p| in_open_ball(p, y, radius)) {
                    return Some((k, y));
                }
            }
        }
    }
    unreachable!("some ball of large enough scale contains every finite set")
}

fn div_floor(v: f64, s: i64) -> i64 {
    (v / s as f64).floor() as i64
}

fn div_ceil(v: f64, s: i64) -> i64 {
    (v / s as f64).ceil() as i64
}

/// A partition of `X_k` into `J_{k,l}` residue classes such that the balls
/// `B(z;l)` around distinct centres of one class are disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledLatticePartition {
    pub k: u32,
    pub l: u32,
    /// Spacing `⌊e^k⌋` of `X_k`.
    pub spacing: i64,
    /// Residue modulus `⌊2⌊e^l⌋/⌊e^k⌋⌋ + 1` per coordinate.
    pub modulus: i64,
}

impl ScaledLatticePartition {
    /// `J_{k,l}`.
    pub fn class_count(&self) -> usize {
        (self.modulus * self.modulus) as usize
    }

    /// Class index of a centre, or `None` when `z ∉ X_k`.
    pub fn class_of(&self, z: Point) -> Option<usize> {
        if z.x.rem_euclid(self.spacing) != 0 || z.y.rem_euclid(self.spacing) != 0 {
            return None;
        }
        let i = (z.x / self.spacing).rem_euclid(self.modulus);
        let j = (z.y / self.spacing).rem_euclid(self.modulus);
        Some((i + self.modulus * j) as usize)
    }

    /// Centres of `X_k` inside the closed box `[lo, hi]`.
    pub fn centers_in(&self, lo: Point, hi: Point) -> Vec<Point> {
        let s = self.spacing;
        let mut out = Vec::new();
        for j in lo.y.div_euclid(s)..=hi.y.div_euclid(s) {
            for i in lo.x.div_euclid(s)..=hi.x.div_euclid(s) {
                let z = Point::new(i * s, j * s);
                if z.x >= lo.x && z.x <= hi.x && z.y >= lo.y && z.y <= hi.y {
                    out.push(z);
                }
            }
        }
        out
    }
}

pub fn partition(k: u32, l: u32) -> Result<ScaledLatticePartition> {
    if l < k {
        return Err(Error::PartitionOrder { k, l });
    }
    let spacing = scaled_lattice_spacing(k);
    let outer = scaled_lattice_spacing(l);
    Ok(ScaledLatticePartition {
        k,
        l,
        spacing,
        modulus: 2 * outer / spacing + 1,
    })
}
