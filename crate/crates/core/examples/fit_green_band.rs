//! Measures `G(x,x) - log d(x, D_N^c)` over lattice domains of disc and
//! square shape, exhaustively for `N ≤ 30` and along a ray at `N = 150`.
//! The extreme values bound the on-diagonal band constant.
//!
//! Run with `cargo run --release --example fit_green_band`.

use latcover::domain::{discretize_scale, Point, Shape, WiredGraph};
use latcover::harmonic::{green, green_diagonal_entry};

fn main() {
    for shape in [Shape::Disc, Shape::Square] {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for scale in [5.0, 10.0, 15.0, 20.0, 25.0, 30.0] {
            let domain = discretize_scale(&shape, scale).unwrap();
            let graph = WiredGraph::new(&domain).unwrap();
            let g = green(&graph).unwrap();
            for (i, p) in domain.sites.iter().enumerate() {
                let gap = g.get(i, i) - domain.sites.distance_to_complement(p).ln();
                lo = lo.min(gap);
                hi = hi.max(gap);
            }
            println!("{shape} N = {scale}: gap in [{lo:.6}, {hi:.6}]");
        }
        let domain = discretize_scale(&shape, 150.0).unwrap();
        let graph = WiredGraph::new(&domain).unwrap();
        for x in (0..150).step_by(4).chain(140..150) {
            let p = Point::new(x, x / 3);
            let Some(v) = graph.vertex(p) else { continue };
            let gap = green_diagonal_entry(&graph, v).unwrap()
                - domain.sites.distance_to_complement(p).ln();
            lo = lo.min(gap);
            hi = hi.max(gap);
        }
        println!("{shape} N = 150 (ray): gap in [{lo:.6}, {hi:.6}]");
    }
}
