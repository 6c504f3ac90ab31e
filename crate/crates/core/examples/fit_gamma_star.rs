//! Fits the potential-kernel constant `γ*` from Green functions of large
//! lattice discs, independently of the quadrature used by `PotentialKernel`.
//!
//! `a(x) = lim_R [G_{B_R}(0,0) - G_{B_R}(0,x)]`; the disc is invariant under
//! the lattice symmetries, which cancels the leading finite-size terms.
//!
//! Run with `cargo run --release --example fit_gamma_star`.

use latcover::domain::{ball_with_radius, Point, WiredGraph};
use latcover::harmonic::green_column;

fn main() {
    let radii = [200.0, 400.0];
    let mut fits = Vec::new();
    for &radius in &radii {
        let sites = ball_with_radius(Point::ORIGIN, radius);
        let graph = WiredGraph::from_sites(sites).unwrap();
        let origin = graph.vertex(Point::ORIGIN).unwrap();
        let column = green_column(&graph, origin).unwrap();
        let g00 = column[origin as usize];
        let mut estimates = Vec::new();
        for y in 0..=24i64 {
            for x in y..=24i64 {
                let p = Point::new(x, y);
                let r = p.norm();
                if !(16.0..=24.0).contains(&r) {
                    continue;
                }
                let a = g00 - column[graph.vertex(p).unwrap() as usize];
                let phi = (y as f64).atan2(x as f64);
                estimates.push(a - r.ln() + (4.0 * phi).cos() / (12.0 * r * r));
            }
        }
        let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
        let spread = estimates
            .iter()
            .map(|e| (e - mean).abs())
            .fold(0.0, f64::max);
        let a1 = g00 - column[graph.vertex(Point::new(1, 0)).unwrap() as usize];
        println!(
            "R = {radius}: gamma* = {mean:.10} (max deviation {spread:.2e}, {} points), a(e1) = {a1:.12}",
            estimates.len()
        );
        fits.push(mean);
    }
    println!("change between radii: {:.2e}", (fits[1] - fits[0]).abs());
}
