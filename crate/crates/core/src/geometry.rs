//! Knot placement: boundary knots on an ellipse and symmetric 1D node sets.

use std::f64::consts::PI;

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum GeometryError {
    #[error("knot set must contain at least one point")]
    Empty,
    #[error("need at least {required} knots, got {given}")]
    TooFewKnots { required: usize, given: usize },
    #[error("knots {0} and {1} coincide")]
    DuplicateKnot(usize, usize),
    #[error("ellipse semi-axes must be positive, got a = {a}, b = {b}")]
    InvalidAxes { a: f64, b: f64 },
    #[error("interval is empty or inverted: [{0}, {1}]")]
    InvalidInterval(f64, f64),
    #[error("coordinate is not finite")]
    NonFinite,
}

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Euclidean distance to another point.
    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// An axis-aligned ellipse; `semi_major_a` runs along x, `semi_minor_b` along y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub center: Point2,
    pub semi_major_a: f64,
    pub semi_minor_b: f64,
}

impl Ellipse {
    pub fn new(
        center: Point2,
        semi_major_a: f64,
        semi_minor_b: f64,
    ) -> Result<Self, GeometryError> {
        if !semi_major_a.is_finite()
            || !semi_minor_b.is_finite()
            || semi_major_a <= 0.0
            || semi_minor_b <= 0.0
        {
            return Err(GeometryError::InvalidAxes {
                a: semi_major_a,
                b: semi_minor_b,
            });
        }
        Ok(Self {
            center,
            semi_major_a,
            semi_minor_b,
        })
    }

    /// Boundary point at parameter angle `theta`.
    pub fn at_angle(&self, theta: f64) -> Point2 {
        Point2::new(
            self.center.x + self.semi_major_a * theta.cos(),
            self.center.y + self.semi_minor_b * theta.sin(),
        )
    }

    /// True if `p` lies strictly inside the ellipse.
    pub fn contains_strict(&self, p: &Point2) -> bool {
        let dx = (p.x - self.center.x) / self.semi_major_a;
        let dy = (p.y - self.center.y) / self.semi_minor_b;
        dx * dx + dy * dy < 1.0
    }
}

/// An ordered collection of distinct collocation knots of a fixed dimension.
///
/// Knots are stored point-major, so knot `i` occupies
/// `coords[i*dim .. (i+1)*dim]`. Dimension 1 is used by the symmetric-grid
/// experiments and dimension 2 by the ellipse benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotSet {
    dim: usize,
    coords: Vec<f64>,
}

impl KnotSet {
    /// Builds a 2D knot set, rejecting empty input and coincident knots.
    pub fn from_points(points: &[Point2]) -> Result<Self, GeometryError> {
        let mut coords = Vec::with_capacity(points.len() * 2);
        for p in points {
            if !p.is_finite() {
                return Err(GeometryError::NonFinite);
            }
            coords.push(p.x);
            coords.push(p.y);
        }
        Self::from_flat(2, coords)
    }

    /// Builds a 1D knot set from scalar positions.
    pub fn from_scalars(values: &[f64]) -> Result<Self, GeometryError> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Self::from_flat(1, values.to_vec())
    }

    fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self, GeometryError> {
        let n = coords.len() / dim;
        if n == 0 {
            return Err(GeometryError::Empty);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if coords[i * dim..(i + 1) * dim] == coords[j * dim..(j + 1) * dim] {
                    return Err(GeometryError::DuplicateKnot(i, j));
                }
            }
        }
        Ok(Self { dim, coords })
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of knot `i`.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Knot `i` as a planar point. Panics unless `dim() == 2`.
    pub fn point2(&self, i: usize) -> Point2 {
        assert_eq!(self.dim, 2, "knot set is not planar");
        Point2::new(self.coords[2 * i], self.coords[2 * i + 1])
    }

    /// Knot `i` as a scalar. Panics unless `dim() == 1`.
    pub fn scalar(&self, i: usize) -> f64 {
        assert_eq!(self.dim, 1, "knot set is not one-dimensional");
        self.coords[i]
    }

    pub fn iter_points2(&self) -> impl Iterator<Item = Point2> + '_ {
        (0..self.len()).map(move |i| self.point2(i))
    }
}

/// Places `n` knots on the ellipse boundary at uniform parameter angles
/// `θ_j = 2πj/n`, starting from `θ = 0` (the point `(cx + a, cy)`).
pub fn ellipse_boundary_knots(e: &Ellipse, n: usize) -> Result<KnotSet, GeometryError> {
    if n == 0 {
        return Err(GeometryError::Empty);
    }
    let points: Vec<Point2> = (0..n)
        .map(|j| e.at_angle(2.0 * PI * j as f64 / n as f64))
        .collect();
    KnotSet::from_points(&points)
}

/// `n` uniformly spaced nodes on `[x0, x1]`, built as convex combinations so
/// that the mirror sums `x_i + x_{N+1-i}` are exact.
pub fn symmetric_grid_1d(n: usize, x0: f64, x1: f64) -> Result<KnotSet, GeometryError> {
    if n < 2 {
        return Err(GeometryError::TooFewKnots {
            required: 2,
            given: n,
        });
    }
    if !x0.is_finite() || !x1.is_finite() || x0 >= x1 {
        return Err(GeometryError::InvalidInterval(x0, x1));
    }
    let m = (n - 1) as f64;
    let values: Vec<f64> = (0..n)
        .map(|i| ((n - 1 - i) as f64 * x0 + i as f64 * x1) / m)
        .collect();
    KnotSet::from_scalars(&values)
}

/// Checks the symmetric-spacing identity: for every coordinate `k` there is a
/// constant `c_k` with `x_i^(k) + x_{N+1-i}^(k) = c_k` for all `i` (the
/// constant is taken from the outermost pair).
pub fn is_symmetric_spacing(ks: &KnotSet, tol: f64) -> bool {
    let n = ks.len();
    for k in 0..ks.dim() {
        let c = ks.point(0)[k] + ks.point(n - 1)[k];
        for i in 0..n {
            if (ks.point(i)[k] + ks.point(n - 1 - i)[k] - c).abs() > tol {
                return false;
            }
        }
    }
    true
}
