//! Brute-force oracles for the cluster machinery, shared by the integration
//! tests and the acceptance gate.

#![allow(dead_code)]

use latcover::domain::{Point, SiteSet};
use rand::Rng;

fn within(p: Point, z: Point, radius: f64) -> bool {
    (((p.x - z.x).pow(2) + (p.y - z.y).pow(2)) as f64).sqrt() < radius
}

/// Every point of the scale-`k` lattice in a window around `set`.
fn lattice_window(set: &[Point], k: u32) -> Vec<Point> {
    let s = (k as f64).exp().floor() as i64;
    let pad = (k as f64).exp().ceil() as i64 + s;
    let lo_x = set.iter().map(|p| p.x).min().unwrap() - pad;
    let hi_x = set.iter().map(|p| p.x).max().unwrap() + pad;
    let lo_y = set.iter().map(|p| p.y).min().unwrap() - pad;
    let hi_y = set.iter().map(|p| p.y).max().unwrap() + pad;
    let mut out = Vec::new();
    for b in lo_y.div_euclid(s)..=hi_y.div_euclid(s) + 1 {
        for a in lo_x.div_euclid(s)..=hi_x.div_euclid(s) + 1 {
            out.push(Point::new(a * s, b * s));
        }
    }
    out
}

/// Least `k` with `set ⊆ B(y;k)` for some `y` on the scale-`k` lattice.
pub fn rho(set: &[Point]) -> u32 {
    if set.is_empty() {
        return 0;
    }
    (0u32..)
        .find(|&k| {
            let radius = (k as f64).exp();
            lattice_window(set, k)
                .into_iter()
                .any(|y| set.iter().all(|&p| within(p, y, radius)))
        })
        .unwrap()
}

/// `(centre, points of the ball, ρ)` for every scale-`j` centre whose ball
/// meets `set`, sorted by centre.
pub fn census(set: &[Point], j: u32) -> Vec<(Point, Vec<Point>, u32)> {
    if set.is_empty() {
        return Vec::new();
    }
    let radius = (j as f64).exp();
    let mut out: Vec<_> = lattice_window(set, j)
        .into_iter()
        .filter_map(|z| {
            let mut part: Vec<Point> = set
                .iter()
                .copied()
                .filter(|&p| within(p, z, radius))
                .collect();
            part.sort();
            (!part.is_empty()).then(|| {
                let r = rho(&part);
                (z, part, r)
            })
        })
        .collect();
    out.sort_by_key(|c| c.0);
    out
}

/// Minimum number of scale-`j` lattice balls covering `set`, by enumerating
/// candidate subsets in order of size.
pub fn chi(set: &[Point], j: u32) -> usize {
    if set.is_empty() {
        return 0;
    }
    assert!(set.len() <= 64);
    let radius = (j as f64).exp();
    let full: u64 = if set.len() == 64 {
        u64::MAX
    } else {
        (1u64 << set.len()) - 1
    };
    let masks: Vec<u64> = lattice_window(set, j)
        .into_iter()
        .map(|z| {
            set.iter()
                .enumerate()
                .filter(|&(_, &p)| within(p, z, radius))
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .filter(|&m| m != 0)
        .collect();
    fn search(masks: &[u64], from: usize, left: usize, acc: u64, full: u64) -> bool {
        if acc == full {
            return true;
        }
        if left == 0 {
            return false;
        }
        (from..masks.len()).any(|i| search(masks, i + 1, left - 1, acc | masks[i], full))
    }
    (1..=set.len())
        .find(|&k| search(&masks, 0, k, 0, full))
        .unwrap()
}

/// Whether every cluster has log-scale at most `r_n`.
pub fn clustered(set: &[Point], j: u32, r_n: f64) -> bool {
    census(set, j).iter().all(|c| c.2 as f64 <= r_n)
}

/// A random instance of at most `max` distinct points in a `side × side`
/// window: either uniform, or a few tight clumps.
pub fn instance<R: Rng + ?Sized>(rng: &mut R, max: usize, side: i64) -> Vec<Point> {
    let count = rng.random_range(1..=max);
    let mut points = Vec::with_capacity(count);
    if rng.random_bool(0.5) {
        for _ in 0..count {
            points.push(Point::new(
                rng.random_range(0..side),
                rng.random_range(0..side),
            ));
        }
    } else {
        let clumps: Vec<Point> = (0..rng.random_range(1..=3))
            .map(|_| Point::new(rng.random_range(0..side), rng.random_range(0..side)))
            .collect();
        for _ in 0..count {
            let c = clumps[rng.random_range(0..clumps.len())];
            points.push(Point::new(
                c.x + rng.random_range(-2..=2),
                c.y + rng.random_range(-2..=2),
            ));
        }
    }
    points.sort();
    points.dedup();
    points
}

pub fn to_set(points: &[Point]) -> SiteSet {
    points.iter().copied().collect()
}
