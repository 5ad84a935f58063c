//! Distance functions beyond the Euclidean norm: time-space distances that
//! treat time on the same footing as the space variables, and
//! variable-transform distances for operators with varying coefficients.
//!
//! The raw time-space combination `√(r_p² - c²Δt²)` can go complex; only its
//! safe real variants are exposed here (see [`TimeSpaceVariant`]). The
//! degenerate-operator distances for `y^m u_xx + u_yy = 0` come in a pair
//! `(r1, r2)` with ratio `r = r1/r2 ∈ [0, 1]`, all expressible in the
//! original variables.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::geometry::Point2;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum DistanceError {
    #[error("dimension mismatch: {0} vs {1}")]
    ShapeMismatch(usize, usize),
    #[error("wave speed must be positive, got {0}")]
    InvalidWaveSpeed(f64),
    #[error("transform exponent must satisfy m > -2, got {0}")]
    InvalidExponent(f64),
    #[error("map or input left the valid domain (non-finite value)")]
    Domain,
    #[error("distance ratio r1/r2 is singular (r2 = 0)")]
    SingularRatio,
}

/// Euclidean distance between two points of equal dimension.
pub fn euclidean(a: &[f64], b: &[f64]) -> Result<f64, DistanceError> {
    if a.len() != b.len() {
        return Err(DistanceError::ShapeMismatch(a.len(), b.len()));
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}

/// A point with spatial coordinates and a time coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimePoint {
    pub spatial: Vec<f64>,
    pub t: f64,
}

impl SpaceTimePoint {
    pub fn new(spatial: Vec<f64>, t: f64) -> Self {
        Self { spatial, t }
    }

    pub fn planar(p: Point2, t: f64) -> Self {
        Self::new(vec![p.x, p.y], t)
    }
}

/// The real-valued time-space distance variants.
///
/// With `Δt = t_a - t_b` and `r_p` the spatial Euclidean distance:
///
/// * `Plus`: `√(r_p² + c²Δt²)` — elliptic combination, always real.
/// * `Cone`: `√(c²Δt² - r_p²)` inside the light cone, 0 outside.
/// * `SplitMinus` / `SplitPlus`: the characteristic pair `r_p ∓ cΔt`.
///
/// Hyperbolic and elliptic problems have solution families whose arguments
/// are linear combinations of space and (possibly imaginary) time, which is
/// what justifies folding time into the distance at all; the variants above
/// are the real-valued combinations of that family. A single problem may
/// attach different variants to different kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeSpaceVariant {
    Plus,
    Cone,
    SplitMinus,
    SplitPlus,
}

/// A time-space distance variant together with its wave speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSpaceMode {
    pub variant: TimeSpaceVariant,
    pub wave_speed: f64,
}

impl TimeSpaceMode {
    pub fn new(variant: TimeSpaceVariant, wave_speed: f64) -> Result<Self, DistanceError> {
        if !wave_speed.is_finite() || wave_speed <= 0.0 {
            return Err(DistanceError::InvalidWaveSpeed(wave_speed));
        }
        Ok(Self {
            variant,
            wave_speed,
        })
    }
}

/// Time-space distance between two space-time points under `mode`.
pub fn time_space_distance(
    a: &SpaceTimePoint,
    b: &SpaceTimePoint,
    mode: &TimeSpaceMode,
) -> Result<f64, DistanceError> {
    let r_p = euclidean(&a.spatial, &b.spatial)?;
    let cdt = mode.wave_speed * (a.t - b.t);
    Ok(match mode.variant {
        TimeSpaceVariant::Plus => r_p.hypot(cdt),
        TimeSpaceVariant::Cone => {
            if cdt.abs() > r_p {
                (cdt * cdt - r_p * r_p).sqrt()
            } else {
                0.0
            }
        }
        TimeSpaceVariant::SplitMinus => r_p - cdt,
        TimeSpaceVariant::SplitPlus => r_p + cdt,
    })
}

type PlaneMap = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A change of independent variables `ξ = f1(x, y)`, `η = f2(x, y)` that
/// carries an operator to canonical Laplacian form; distances are then
/// measured in the transformed coordinates.
#[derive(Clone)]
pub struct PlaneTransform {
    f1: PlaneMap,
    f2: PlaneMap,
}

impl PlaneTransform {
    pub fn new(
        f1: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        f2: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            f1: Arc::new(f1),
            f2: Arc::new(f2),
        }
    }

    pub fn identity() -> Self {
        Self::new(|x, _| x, |_, y| y)
    }

    pub fn apply(&self, p: &Point2) -> (f64, f64) {
        ((self.f1)(p.x, p.y), (self.f2)(p.x, p.y))
    }
}

impl fmt::Debug for PlaneTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PlaneTransform {{ f1, f2 }}")
    }
}

/// Euclidean distance in the transformed coordinates,
/// `√([f1(a)-f1(b)]² + [f2(a)-f2(b)]²)`, expressed in the original variables.
pub fn transformed_distance(
    a: &Point2,
    b: &Point2,
    tr: &PlaneTransform,
) -> Result<f64, DistanceError> {
    let (xa, ya) = tr.apply(a);
    let (xb, yb) = tr.apply(b);
    let d = (xa - xb).hypot(ya - yb);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(DistanceError::Domain)
    }
}

/// The transform `ξ = x`, `η = 2/(m+2)·y^((m+2)/2)` that maps the degenerate
/// operator `y^m u_xx + u_yy` onto the Laplacian for `y >= 0`, `m > -2`.
/// Points with `y < 0` are outside the domain and poison downstream
/// distances with a domain error.
pub fn tricomi_transform(m: f64) -> Result<PlaneTransform, DistanceError> {
    if !m.is_finite() || m <= -2.0 {
        return Err(DistanceError::InvalidExponent(m));
    }
    let e = 0.5 * (m + 2.0);
    let scale = 2.0 / (m + 2.0);
    Ok(PlaneTransform::new(
        |x, _| x,
        move |_, y| if y < 0.0 { f64::NAN } else { scale * y.powf(e) },
    ))
}

/// The distance pair for the degenerate operator in original variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TricomiDistances {
    /// `√((x-x_j)² + 4/(m+2)²·(y^e - y_j^e)²)` with `e = (m+2)/2`.
    pub r1: f64,
    /// Same with the `y`-powers added instead of subtracted.
    pub r2: f64,
    /// `r1/r2`, always in `[0, 1]`.
    pub ratio: f64,
}

/// Evaluates `(r1, r2, r1/r2)` for the degenerate-operator distance family.
pub fn tricomi_distances(
    a: &Point2,
    b: &Point2,
    m: f64,
) -> Result<TricomiDistances, DistanceError> {
    if !m.is_finite() || m <= -2.0 {
        return Err(DistanceError::InvalidExponent(m));
    }
    if a.y < 0.0 || b.y < 0.0 || !a.is_finite() || !b.is_finite() {
        return Err(DistanceError::Domain);
    }
    let e = 0.5 * (m + 2.0);
    let s = 2.0 / (m + 2.0);
    let dx = a.x - b.x;
    let pa = a.y.powf(e);
    let pb = b.y.powf(e);
    let r1 = dx.hypot(s * (pa - pb));
    let r2 = dx.hypot(s * (pa + pb));
    if r2 == 0.0 {
        return Err(DistanceError::SingularRatio);
    }
    Ok(TricomiDistances {
        r1,
        r2,
        ratio: r1 / r2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn euclidean_basics() {
        assert_eq!(euclidean(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(euclidean(&[1.5, -2.0], &[1.5, -2.0]).unwrap(), 0.0);
        assert_eq!(euclidean(&[1.0, 2.0, 2.0], &[0.0, 0.0, 0.0]).unwrap(), 3.0);
        assert!(matches!(
            euclidean(&[1.0], &[1.0, 2.0]),
            Err(DistanceError::ShapeMismatch(1, 2))
        ));
    }

    fn st(x: f64, t: f64) -> SpaceTimePoint {
        SpaceTimePoint::new(vec![x, 0.0], t)
    }

    #[test]
    fn time_space_variants() {
        // r_p = 3, cΔt = 4
        let a = st(3.0, 4.0);
        let b = st(0.0, 0.0);
        let mode = |v| TimeSpaceMode::new(v, 1.0).unwrap();
        assert_abs_diff_eq!(
            time_space_distance(&a, &b, &mode(TimeSpaceVariant::Plus)).unwrap(),
            5.0
        );
        assert_abs_diff_eq!(
            time_space_distance(&a, &b, &mode(TimeSpaceVariant::Cone)).unwrap(),
            7.0_f64.sqrt(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            time_space_distance(&a, &b, &mode(TimeSpaceVariant::SplitMinus)).unwrap(),
            -1.0
        );
        // outside the cone: r_p = 4, cΔt = 3
        let a = st(4.0, 3.0);
        assert_eq!(
            time_space_distance(&a, &b, &mode(TimeSpaceVariant::Cone)).unwrap(),
            0.0
        );
        // every variant vanishes at coincident points
        let p = st(1.3, -0.8);
        for v in [
            TimeSpaceVariant::Plus,
            TimeSpaceVariant::Cone,
            TimeSpaceVariant::SplitMinus,
            TimeSpaceVariant::SplitPlus,
        ] {
            assert_eq!(time_space_distance(&p, &p, &mode(v)).unwrap(), 0.0);
        }
    }

    #[test]
    fn wave_speed_must_be_positive() {
        assert!(TimeSpaceMode::new(TimeSpaceVariant::Plus, 0.0).is_err());
        assert!(TimeSpaceMode::new(TimeSpaceVariant::Plus, -1.0).is_err());
    }

    #[test]
    fn identity_transform_recovers_euclidean() {
        let a = Point2::new(0.3, -1.2);
        let b = Point2::new(2.0, 0.7);
        let d = transformed_distance(&a, &b, &PlaneTransform::identity()).unwrap();
        assert_abs_diff_eq!(d, a.distance(&b), epsilon = 1e-15);
    }

    #[test]
    fn anisotropic_stretch() {
        let tr = PlaneTransform::new(|x, _| x, |_, y| 2.0 * y);
        let d = transformed_distance(&Point2::new(0.0, 0.0), &Point2::new(0.0, 1.0), &tr).unwrap();
        assert_abs_diff_eq!(d, 2.0);
    }

    #[test]
    fn tricomi_m0_is_euclidean() {
        let tr = tricomi_transform(0.0).unwrap();
        let a = Point2::new(0.4, 1.3);
        let b = Point2::new(-0.2, 0.1);
        assert_abs_diff_eq!(
            transformed_distance(&a, &b, &tr).unwrap(),
            a.distance(&b),
            epsilon = 1e-14
        );
    }

    #[test]
    fn tricomi_pinned_values() {
        // m = 1, (0,1) vs (0,0): r1 = r2 = 2/3, ratio 1
        let d = tricomi_distances(&Point2::new(0.0, 1.0), &Point2::new(0.0, 0.0), 1.0).unwrap();
        assert_abs_diff_eq!(d.r1, 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.r2, 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.ratio, 1.0, epsilon = 1e-15);

        // coincident points above the axis
        let p = Point2::new(0.7, 0.9);
        let d = tricomi_distances(&p, &p, 2.5).unwrap();
        assert_eq!(d.r1, 0.0);
        assert_eq!(d.ratio, 0.0);

        // both on the axis: y-terms vanish, ratio is exactly 1
        let d = tricomi_distances(&Point2::new(2.0, 0.0), &Point2::new(-1.0, 0.0), 1.0).unwrap();
        assert_eq!(d.r1, 3.0);
        assert_eq!(d.r2, 3.0);
        assert_eq!(d.ratio, 1.0);
    }

    #[test]
    fn tricomi_error_paths() {
        let p = Point2::new(0.0, 0.0);
        assert_eq!(
            tricomi_distances(&p, &p, 1.0),
            Err(DistanceError::SingularRatio)
        );
        assert_eq!(
            tricomi_distances(&Point2::new(0.0, -1.0), &p, 1.0),
            Err(DistanceError::Domain)
        );
        assert!(tricomi_transform(-2.0).is_err());
        let tr = tricomi_transform(1.0).unwrap();
        assert_eq!(
            transformed_distance(&Point2::new(0.0, -0.5), &p, &tr),
            Err(DistanceError::Domain)
        );
    }

    proptest! {
        #[test]
        fn distances_are_symmetric(
            ax in -5.0..5.0f64, ay in -5.0..5.0f64, at in -3.0..3.0f64,
            bx in -5.0..5.0f64, by in -5.0..5.0f64, bt in -3.0..3.0f64,
            c in 0.1..4.0f64,
        ) {
            let a = SpaceTimePoint::new(vec![ax, ay], at);
            let b = SpaceTimePoint::new(vec![bx, by], bt);
            for v in [TimeSpaceVariant::Plus, TimeSpaceVariant::Cone] {
                let mode = TimeSpaceMode::new(v, c).unwrap();
                let dab = time_space_distance(&a, &b, &mode).unwrap();
                let dba = time_space_distance(&b, &a, &mode).unwrap();
                prop_assert!((dab - dba).abs() <= 1e-12);
            }
            // SplitMinus(a,b) = SplitPlus(b,a)
            let minus = TimeSpaceMode::new(TimeSpaceVariant::SplitMinus, c).unwrap();
            let plus = TimeSpaceMode::new(TimeSpaceVariant::SplitPlus, c).unwrap();
            let dm = time_space_distance(&a, &b, &minus).unwrap();
            let dp = time_space_distance(&b, &a, &plus).unwrap();
            prop_assert!((dm - dp).abs() <= 1e-12);
        }

        #[test]
        fn transform_matches_closed_form(
            ax in -3.0..3.0f64, ay in 1e-3..4.0f64,
            bx in -3.0..3.0f64, by in 1e-3..4.0f64,
            mi in 0usize..3,
        ) {
            // the closed-form r1 and the transform route agree
            let m = [1.0, 2.0, 3.0][mi];
            let a = Point2::new(ax, ay);
            let b = Point2::new(bx, by);
            let via_transform =
                transformed_distance(&a, &b, &tricomi_transform(m).unwrap()).unwrap();
            let d = tricomi_distances(&a, &b, m).unwrap();
            prop_assert!((via_transform - d.r1).abs() <= 1e-12,
                "transform {via_transform} vs closed form {}", d.r1);
            prop_assert!((0.0..=1.0 + 1e-15).contains(&d.ratio));
            // symmetry of the pair
            let dr = tricomi_distances(&b, &a, m).unwrap();
            prop_assert!((d.r1 - dr.r1).abs() <= 1e-12);
            prop_assert!((d.r2 - dr.r2).abs() <= 1e-12);
        }
    }
}
