use std::collections::HashMap;
use std::sync::Mutex;

use crate::constants::GAMMA_STAR;
use crate::domain::Point;

use super::quadrature::integrate;

/// Radius above which [`PotentialKernel::value`] switches to the asymptotic
/// expansion.
pub const DEFAULT_CROSSOVER: f64 = 64.0;

const QUAD_TOLERANCE: f64 = 1e-13;

/// Potential kernel `a(x)` of the planar walk, normalised like the Green
/// function (`π/2` times the usual kernel), so that `a(0) = 0`,
/// `a(e_1) = π/2` and `a(x) = log|x| + γ* + O(|x|^{-2})`.
///
/// Below the crossover radius values come from the one-dimensional integral
///
/// ```text
/// a(x) = ∫_0^π (1 - cos(x₂θ) e^{-|x₁| s(θ)}) / sinh s(θ) dθ,  cosh s = 2 - cos θ,
/// ```
///
/// with `|x₁| ≥ |x₂|`, obtained from the Fourier representation by doing the
/// inner integral in closed form. Above it the expansion
/// `log r + γ* - cos(4φ)/(12 r²)` is used.
#[derive(Debug)]
pub struct PotentialKernel {
    gamma_star: f64,
    crossover: f64,
    cache: Mutex<HashMap<(i64, i64), f64>>,
}

impl Default for PotentialKernel {
    fn default() -> Self {
        Self::new()
    }
}

impl PotentialKernel {
    pub fn new() -> Self {
        Self::with_crossover(DEFAULT_CROSSOVER)
    }

    pub fn with_crossover(crossover: f64) -> Self {
        PotentialKernel {
            gamma_star: GAMMA_STAR,
            crossover,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn gamma_star(&self) -> f64 {
        self.gamma_star
    }

    pub fn crossover(&self) -> f64 {
        self.crossover
    }

    pub fn value(&self, x: Point) -> f64 {
        if x.norm() >= self.crossover {
            self.asymptotic(x)
        } else {
            self.exact(x)
        }
    }

    /// Quadrature value, regardless of the crossover radius.
    pub fn exact(&self, x: Point) -> f64 {
        let (a, b) = (x.x.abs(), x.y.abs());
        let key = (a.max(b), a.min(b));
        if key == (0, 0) {
            return 0.0;
        }
        if let Some(&v) = self.cache.lock().unwrap().get(&key) {
            return v;
        }
        let v = integral(key.0 as f64, key.1 as f64);
        self.cache.lock().unwrap().insert(key, v);
        v
    }

    pub fn asymptotic(&self, x: Point) -> f64 {
        if x == Point::ORIGIN {
            return 0.0;
        }
        let r2 = x.norm2() as f64;
        let phi = (x.y as f64).atan2(x.x as f64);
        0.5 * r2.ln() + self.gamma_star - (4.0 * phi).cos() / (12.0 * r2)
    }
}

fn integral(major: f64, minor: f64) -> f64 {
    let f = |theta: f64| {
        let half = (0.5 * theta).sin();
        let y = 2.0 * half * half; // cosh s - 1
        let sinh_s = (y * (2.0 + y)).sqrt();
        let s = (y + sinh_s).ln_1p();
        let sin_minor = (0.5 * minor * theta).sin();
        let numerator = 2.0 * sin_minor * sin_minor - (minor * theta).cos() * (-major * s).exp_m1();
        numerator / sinh_s
    };
    integrate(f, 0.0, std::f64::consts::PI, QUAD_TOLERANCE)
}
