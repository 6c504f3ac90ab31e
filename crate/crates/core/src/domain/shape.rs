use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bounded open planar set containing the origin.
///
/// Membership questions for scaled lattices are answered through
/// [`Shape::scaled_clearance`], which evaluates the distance to the complement
/// of `scale * D` directly in lattice units. Dividing by the scale first would
/// round `d(x/N, D^c) > 1/N` the wrong way at exact ties (e.g. the disc at
/// `N = 3`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Shape {
    /// The open unit disc.
    Disc,
    /// The open square `(-1, 1)^2`.
    Square,
    Polygon(Polygon),
}

impl Shape {
    /// Parses the command-line spelling `disc`, `square` or `poly:<path>`.
    pub fn parse(spec: &str) -> Result<Self> {
        match spec {
            "disc" => Ok(Shape::Disc),
            "square" => Ok(Shape::Square),
            other => match other.strip_prefix("poly:") {
                Some(path) => Ok(Shape::Polygon(Polygon::from_file(path)?)),
                None => Err(Error::InvalidShape(format!("unknown shape '{other}'"))),
            },
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Shape::Disc => "disc",
            Shape::Square => "square",
            Shape::Polygon(p) => &p.name,
        }
    }

    /// Euclidean distance from `p` to the complement of `scale * D`; zero
    /// when `p` lies outside.
    pub fn scaled_clearance(&self, p: [f64; 2], scale: f64) -> f64 {
        match self {
            Shape::Disc => (scale - p[0].hypot(p[1])).max(0.0),
            Shape::Square => (scale - p[0].abs().max(p[1].abs())).max(0.0),
            Shape::Polygon(poly) => poly.scaled_clearance(p, scale),
        }
    }

    pub fn distance_to_complement(&self, p: [f64; 2]) -> f64 {
        self.scaled_clearance(p, 1.0)
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        self.distance_to_complement(p) > 0.0
    }

    /// Radius of a centred disc enclosing the shape.
    pub fn enclosing_radius(&self) -> f64 {
        match self {
            Shape::Disc => 1.0,
            Shape::Square => std::f64::consts::SQRT_2,
            Shape::Polygon(p) => p
                .vertices
                .iter()
                .map(|v| v[0].hypot(v[1]))
                .fold(0.0, f64::max),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A simple polygon, closed implicitly between the last and first vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    pub name: String,
    pub vertices: Vec<[f64; 2]>,
}

impl Polygon {
    pub fn new(name: impl Into<String>, vertices: Vec<[f64; 2]>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidShape(format!(
                "a polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidShape("non-finite vertex coordinate".into()));
        }
        let poly = Polygon {
            name: name.into(),
            vertices,
        };
        if poly.scaled_clearance([0.0, 0.0], 1.0) <= 0.0 {
            return Err(Error::InvalidShape(
                "polygon must contain the origin in its interior".into(),
            ));
        }
        Ok(poly)
    }

    /// Parses the plain-text format: one `x y` pair per line. Blank lines and
    /// lines starting with `#` are ignored.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
            match parsed.as_deref() {
                Some([x, y]) => vertices.push([*x, *y]),
                _ => {
                    return Err(Error::InvalidShape(format!(
                        "line {}: expected 'x y', got '{line}'",
                        lineno + 1
                    )))
                }
            }
        }
        Polygon::new(name, vertices)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidShape(format!("{}: {e}", path.display())))?;
        Polygon::parse(format!("poly:{}", path.display()), &text)
    }

    fn edges(&self) -> impl Iterator<Item = ([f64; 2], [f64; 2])> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    fn scaled_clearance(&self, p: [f64; 2], scale: f64) -> f64 {
        let mut inside = false;
        let mut best = f64::INFINITY;
        for (a, b) in self.edges() {
            let a = [a[0] * scale, a[1] * scale];
            let b = [b[0] * scale, b[1] * scale];
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x_cross = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                if p[0] < x_cross {
                    inside = !inside;
                }
            }
            best = best.min(segment_distance(p, a, b));
        }
        if inside {
            best
        } else {
            0.0
        }
    }
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    (p[0] - a[0] - t * dx).hypot(p[1] - a[1] - t * dy)
}
