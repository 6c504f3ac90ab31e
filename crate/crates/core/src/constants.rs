//! Frozen numerical constants, each fitted once by an independent oracle.

/// `γ*` in `a(x) = log|x| + γ* + O(|x|^{-2})`.
///
/// Fitted with `examples/fit_gamma_star.rs`: `a(x)` is computed as
/// `G_B(0,0) - G_B(0,x)` on lattice discs `B` of radius 200 and 400 (one
/// sparse solve each), for the 132 points `x` with `16 ≤ |x| ≤ 24` in one
/// octant, and `a(x) - log|x| + cos(4φ)/(12|x|²)` is averaged. The two radii
/// agree to `1.3e-10`; individual points deviate from the mean by at most
/// `2.7e-6`.
pub const GAMMA_STAR: f64 = 1.616_936_369_4;

/// Bracket for `G_{D_N}(x,x) - log d(x, D_N^c)` on disc domains, over every
/// site `x`.
///
/// Measured with `examples/fit_green_band.rs`: exhaustively for
/// `N ∈ {5, 10, ..., 30}` and along a ray at `N = 150` the gap stays in
/// `[1.6192, 2.3512]`, the lower end approaching `γ*` at the centre and the
/// upper end growing by less than `0.004` from `N = 25` to `N = 30`. The
/// bracket below widens the measured range by `0.01` below and `0.1` above.
pub const GREEN_BAND_DISC: (f64, f64) = (1.609, 2.452);

/// The same bracket for square domains, measured range `[1.6860, 2.3079]`.
pub const GREEN_BAND_SQUARE: (f64, f64) = (1.676, 2.408);
