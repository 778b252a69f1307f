//! Planar primitives shared by the mobility, scenario and radio layers.
//!
//! Obstacles are axis-aligned rectangles. Containment and segment
//! intersection use the closed convention: a point on a rectangle's boundary
//! is blocked.

use std::ops::{Add, AddAssign, Mul, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default attempt budget for [`sample_outdoor_position`].
pub const DEFAULT_OUTDOOR_ATTEMPTS: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("degenerate rectangle [{x_min}, {x_max}] x [{y_min}, {y_max}]")]
    DegenerateRect {
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
    },
    #[error(
        "no outdoor position found in bounds {bounds:?} with {boxes} obstacles after {attempts} attempts"
    )]
    NoOutdoorPosition {
        bounds: Rect,
        boxes: usize,
        attempts: usize,
    },
}

/// A position in meters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Point2) -> f64 {
        (other - self).norm()
    }

    /// Point at fraction `t` of the way from `self` to `other`.
    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        self + (other - self) * t
    }
}

/// A displacement (meters) or a velocity (m/s).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(magnitude: f64, angle: f64) -> Self {
        Self::new(magnitude * angle.cos(), magnitude * angle.sin())
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl Add<Vec2> for Point2 {
    type Output = Point2;
    fn add(self, rhs: Vec2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign<Vec2> for Point2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Point2 {
    type Output = Vec2;
    fn sub(self, rhs: Point2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

#[derive(Deserialize)]
struct RawRect {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl TryFrom<RawRect> for Rect {
    type Error = GeometryError;
    fn try_from(raw: RawRect) -> Result<Self, Self::Error> {
        Rect::new(raw.x_min, raw.x_max, raw.y_min, raw.y_max)
    }
}

/// Axis-aligned rectangle footprint: a car, a plant building, a classroom.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRect")]
pub struct Rect {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Rect {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self, GeometryError> {
        let finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
        if !finite || x_min >= x_max || y_min >= y_max {
            return Err(GeometryError::DegenerateRect {
                x_min,
                x_max,
                y_min,
                y_max,
            });
        }
        Ok(Self {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// Rectangle with its lower-left corner at `origin`.
    pub fn from_origin(origin: Point2, width: f64, height: f64) -> Result<Self, GeometryError> {
        Self::new(origin.x, origin.x + width, origin.y, origin.y + height)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }
    pub fn x_max(&self) -> f64 {
        self.x_max
    }
    pub fn y_min(&self) -> f64 {
        self.y_min
    }
    pub fn y_max(&self) -> f64 {
        self.y_max
    }
    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }
    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }
    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }
    pub fn center(&self) -> Point2 {
        Point2::new(
            0.5 * (self.x_min + self.x_max),
            0.5 * (self.y_min + self.y_max),
        )
    }

    /// Closed containment.
    pub fn contains(&self, p: Point2) -> bool {
        self.x_min <= p.x && p.x <= self.x_max && self.y_min <= p.y && p.y <= self.y_max
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.x_min <= other.x_min
            && other.x_max <= self.x_max
            && self.y_min <= other.y_min
            && other.y_max <= self.y_max
    }

    /// Closed overlap: rectangles sharing only an edge overlap.
    pub fn overlaps(&self, other: &Rect) -> bool {
        self.x_min <= other.x_max
            && other.x_min <= self.x_max
            && self.y_min <= other.y_max
            && other.y_min <= self.y_max
    }

    /// Parameter interval `[t_enter, t_exit]` of the segment `a + t (b - a)`,
    /// `t` in `[0, 1]`, that lies inside the rectangle.
    fn clip(&self, a: Point2, b: Point2) -> Option<(f64, f64)> {
        let d = b - a;
        let mut t0 = 0.0_f64;
        let mut t1 = 1.0_f64;
        for (p, dp, lo, hi) in [
            (a.x, d.x, self.x_min, self.x_max),
            (a.y, d.y, self.y_min, self.y_max),
        ] {
            if dp == 0.0 {
                if p < lo || p > hi {
                    return None;
                }
            } else {
                let mut ta = (lo - p) / dp;
                let mut tb = (hi - p) / dp;
                if ta > tb {
                    std::mem::swap(&mut ta, &mut tb);
                }
                t0 = t0.max(ta);
                t1 = t1.min(tb);
                if t0 > t1 {
                    return None;
                }
            }
        }
        Some((t0, t1))
    }

    /// Whether the closed segment `ab` shares any point with this rectangle.
    pub fn intersects_segment(&self, a: Point2, b: Point2) -> bool {
        self.clip(a, b).is_some()
    }

    /// Smallest `t` in `[0, 1]` with `a + t (b - a)` on or inside the rectangle.
    pub fn first_hit(&self, a: Point2, b: Point2) -> Option<f64> {
        if self.contains(a) {
            return Some(0.0);
        }
        self.clip(a, b).map(|(t0, _)| t0)
    }

    /// Rectangle grown by `margin` on every side.
    pub fn expanded(&self, margin: f64) -> Result<Rect, GeometryError> {
        Rect::new(
            self.x_min - margin,
            self.x_max + margin,
            self.y_min - margin,
            self.y_max + margin,
        )
    }

    pub fn clamp(&self, p: Point2) -> Point2 {
        Point2::new(
            p.x.clamp(self.x_min, self.x_max),
            p.y.clamp(self.y_min, self.y_max),
        )
    }

    /// Uniform point in the rectangle.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2 {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        Point2::new(
            self.x_min + u * self.width(),
            self.y_min + v * self.height(),
        )
    }
}

/// Rectangle constraining a node's motion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Bounds(pub Rect);

impl Bounds {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self, GeometryError> {
        Rect::new(x_min, x_max, y_min, y_max).map(Bounds)
    }

    pub fn rect(&self) -> &Rect {
        &self.0
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.0.contains(p)
    }
}

/// The static world a node moves in: a bounding rectangle and the obstacles in it.
#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub bounds: Bounds,
    pub boxes: Vec<Rect>,
}

impl Layout {
    pub fn new(bounds: Bounds, boxes: Vec<Rect>) -> Self {
        Self { bounds, boxes }
    }

    /// Inside the bounds and outside every obstacle.
    pub fn is_outdoor(&self, p: Point2) -> bool {
        is_outdoor(p, &self.bounds, &self.boxes)
    }
}

pub fn is_outdoor(p: Point2, bounds: &Bounds, boxes: &[Rect]) -> bool {
    bounds.contains(p) && !boxes.iter().any(|b| b.contains(p))
}

pub fn contains(rect: &Rect, p: Point2) -> bool {
    rect.contains(p)
}

pub fn segment_intersects_box(a: Point2, b: Point2, rect: &Rect) -> bool {
    rect.intersects_segment(a, b)
}

/// True when the segment `ab` touches none of `boxes`.
pub fn is_line_clear(a: Point2, b: Point2, boxes: &[Rect]) -> bool {
    !boxes.iter().any(|r| r.intersects_segment(a, b))
}

pub fn first_hit_parameter(a: Point2, b: Point2, rect: &Rect) -> Option<f64> {
    rect.first_hit(a, b)
}

/// Earliest hit over several rectangles.
pub fn first_hit_any(a: Point2, b: Point2, boxes: &[Rect]) -> Option<f64> {
    boxes
        .iter()
        .filter_map(|r| r.first_hit(a, b))
        .min_by(f64::total_cmp)
}

/// Rejection-samples a uniform in-bounds point that is outside every box.
pub fn sample_outdoor_position<R: Rng + ?Sized>(
    bounds: &Bounds,
    boxes: &[Rect],
    rng: &mut R,
    max_attempts: usize,
) -> Result<Point2, GeometryError> {
    for _ in 0..max_attempts {
        let p = bounds.rect().sample(rng);
        if !boxes.iter().any(|b| b.contains(p)) {
            return Ok(p);
        }
    }
    Err(GeometryError::NoOutdoorPosition {
        bounds: *bounds.rect(),
        boxes: boxes.len(),
        attempts: max_attempts,
    })
}

/// Mirrors an overshooting position back into `bounds`, flipping the velocity
/// component of every violated edge. Points already inside are unchanged.
pub fn reflect_in_rectangle(p: Point2, v: Vec2, bounds: &Bounds) -> (Point2, Vec2) {
    let r = bounds.rect();
    let (x, vx) = reflect_axis(p.x, v.x, r.x_min(), r.x_max());
    let (y, vy) = reflect_axis(p.y, v.y, r.y_min(), r.y_max());
    (Point2::new(x, y), Vec2::new(vx, vy))
}

fn reflect_axis(mut p: f64, mut v: f64, lo: f64, hi: f64) -> (f64, f64) {
    // Each fold strictly shrinks the overshoot until it fits in the span.
    for _ in 0..1024 {
        if p < lo {
            p = 2.0 * lo - p;
        } else if p > hi {
            p = 2.0 * hi - p;
        } else {
            return (p, v);
        }
        v = -v;
    }
    (p.clamp(lo, hi), v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rect(x0: f64, x1: f64, y0: f64, y1: f64) -> Rect {
        Rect::new(x0, x1, y0, y1).unwrap()
    }

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn contains_closed_box() {
        let b = rect(0.0, 2.0, 0.0, 2.0);
        assert!(contains(&b, p(1.0, 1.0)));
        assert!(!contains(&b, p(3.0, 1.0)));
        assert!(contains(&b, p(2.0, 2.0)));
    }

    #[test]
    fn rejects_degenerate_rect() {
        assert!(Rect::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(Rect::new(0.0, 1.0, 2.0, 1.0).is_err());
        assert!(Rect::new(0.0, f64::NAN, 0.0, 1.0).is_err());
    }

    #[test]
    fn deserialize_enforces_invariant() {
        let bad: Result<Rect, _> = toml::from_str("x_min = 3.0\nx_max = 1.0\ny_min = 0.0\ny_max = 1.0");
        assert!(bad.is_err());
    }

    #[test]
    fn segment_crossing_and_parallel() {
        let b = rect(2.0, 4.0, -1.0, 1.0);
        assert!(segment_intersects_box(p(0.0, 0.0), p(10.0, 0.0), &b));
        assert!(!segment_intersects_box(p(0.0, 5.0), p(10.0, 5.0), &b));
    }

    #[test]
    fn degenerate_segment_is_containment() {
        let b = rect(2.0, 4.0, -1.0, 1.0);
        assert!(segment_intersects_box(p(3.0, 0.0), p(3.0, 0.0), &b));
        assert!(!segment_intersects_box(p(5.0, 0.0), p(5.0, 0.0), &b));
    }

    #[test]
    fn corner_touch_counts_as_intersection() {
        let b = rect(0.0, 1.0, 0.0, 1.0);
        assert!(segment_intersects_box(p(-1.0, 2.0), p(2.0, -1.0), &b));
    }

    #[test]
    fn line_clear_cases() {
        assert!(is_line_clear(p(0.0, 0.0), p(1.0, 1.0), &[]));
        let boxes = [rect(2.0, 4.0, -1.0, 1.0), rect(20.0, 21.0, 20.0, 21.0)];
        assert!(!is_line_clear(p(0.0, 0.0), p(10.0, 0.0), &boxes));
    }

    #[test]
    fn first_hit_examples() {
        let b = rect(2.0, 4.0, -1.0, 1.0);
        let t = first_hit_parameter(p(0.0, 0.0), p(10.0, 0.0), &b).unwrap();
        assert!((t - 0.2).abs() < 1e-12);
        assert_eq!(first_hit_parameter(p(0.0, 5.0), p(10.0, 5.0), &b), None);
        assert_eq!(first_hit_parameter(p(3.0, 0.0), p(10.0, 0.0), &b), Some(0.0));
    }

    #[test]
    fn first_hit_any_takes_nearest() {
        let boxes = [rect(6.0, 7.0, -1.0, 1.0), rect(2.0, 4.0, -1.0, 1.0)];
        let t = first_hit_any(p(0.0, 0.0), p(10.0, 0.0), &boxes).unwrap();
        assert!((t - 0.2).abs() < 1e-12);
    }

    #[test]
    fn reflect_examples() {
        let bounds = Bounds::new(0.0, 10.0, 0.0, 10.0).unwrap();
        let (q, v) = reflect_in_rectangle(p(-2.0, 5.0), Vec2::new(-1.0, 0.0), &bounds);
        assert_eq!((q, v), (p(2.0, 5.0), Vec2::new(1.0, 0.0)));
        let (q, v) = reflect_in_rectangle(p(5.0, 5.0), Vec2::new(-1.0, 3.0), &bounds);
        assert_eq!((q, v), (p(5.0, 5.0), Vec2::new(-1.0, 3.0)));
        let (q, v) = reflect_in_rectangle(p(-2.0, 12.0), Vec2::new(-1.0, 1.0), &bounds);
        assert_eq!((q, v), (p(2.0, 8.0), Vec2::new(1.0, -1.0)));
    }

    #[test]
    fn reflect_large_overshoot_lands_inside() {
        let bounds = Bounds::new(0.0, 10.0, 0.0, 10.0).unwrap();
        let (q, _) = reflect_in_rectangle(p(-25.0, 37.0), Vec2::new(-1.0, 1.0), &bounds);
        assert!(bounds.contains(q));
        assert_eq!(q, p(5.0, 3.0));
    }

    #[test]
    fn outdoor_sampling_no_feasible_point() {
        let bounds = Bounds::new(0.0, 10.0, 0.0, 10.0).unwrap();
        let boxes = [rect(-1.0, 11.0, -1.0, 11.0)];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let err = sample_outdoor_position(&bounds, &boxes, &mut rng, 50).unwrap_err();
        match err {
            GeometryError::NoOutdoorPosition { boxes, attempts, .. } => {
                assert_eq!(boxes, 1);
                assert_eq!(attempts, 50);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn outdoor_sampling_avoids_half_box() {
        let bounds = Bounds::new(0.0, 10.0, 0.0, 10.0).unwrap();
        let boxes = [rect(0.0, 5.0, 0.0, 10.0)];
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..2000 {
            let q =
                sample_outdoor_position(&bounds, &boxes, &mut rng, DEFAULT_OUTDOOR_ATTEMPTS).unwrap();
            assert!(q.x > 5.0 && bounds.contains(q));
        }
    }

    #[test]
    fn outdoor_sampling_is_uniform() {
        use statrs::distribution::{ChiSquared, ContinuousCDF};
        let bounds = Bounds::new(0.0, 10.0, 0.0, 10.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 100_000;
        let mut counts = [0usize; 100];
        for _ in 0..n {
            let q = sample_outdoor_position(&bounds, &[], &mut rng, 1).unwrap();
            let i = (q.x as usize).min(9);
            let j = (q.y as usize).min(9);
            counts[i * 10 + j] += 1;
        }
        let expected = n as f64 / 100.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        let p_value = 1.0 - ChiSquared::new(99.0).unwrap().cdf(chi2);
        assert!(p_value > 0.01, "chi2 {chi2} p {p_value}");
    }

    /// Test-only oracle: dense, evenly spaced samples on the segment,
    /// endpoints included.
    fn sampled_hit(a: Point2, b: Point2, r: &Rect, n: usize) -> Option<usize> {
        (0..=n).find(|&k| r.contains(a.lerp(b, k as f64 / n as f64)))
    }

    /// Bisection on containment between the last outside and first inside sample.
    fn bisected_first_hit(a: Point2, b: Point2, r: &Rect, n: usize) -> Option<f64> {
        let k = sampled_hit(a, b, r, n)?;
        if k == 0 {
            return Some(0.0);
        }
        let (mut lo, mut hi) = ((k - 1) as f64 / n as f64, k as f64 / n as f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if r.contains(a.lerp(b, mid)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }

    /// Cases where the sampling oracle is unambiguous: shrinking or growing
    /// the box by a few sample spacings does not change its verdict.
    fn robust_case(a: Point2, b: Point2, r: &Rect, n: usize) -> bool {
        let margin = 3.0 * a.distance(b) / n as f64 + 1e-9;
        let grown = r.expanded(margin).unwrap();
        let verdict_grown = sampled_hit(a, b, &grown, n).is_some();
        match r.expanded(-margin) {
            Ok(shrunk) => verdict_grown == sampled_hit(a, b, &shrunk, n).is_some(),
            Err(_) => !verdict_grown,
        }
    }

    fn random_case(rng: &mut ChaCha8Rng) -> (Point2, Point2, Rect) {
        let a = p(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let b = p(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let x0 = rng.random_range(-8.0..6.0);
        let y0 = rng.random_range(-8.0..6.0);
        let r = rect(
            x0,
            x0 + rng.random_range(0.5..6.0),
            y0,
            y0 + rng.random_range(0.5..6.0),
        );
        (a, b, r)
    }

    #[test]
    fn intersection_matches_sampling_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 10_000;
        let mut checked = 0;
        while checked < 1000 {
            let (a, b, r) = random_case(&mut rng);
            if !robust_case(a, b, &r, n) {
                continue;
            }
            let oracle = sampled_hit(a, b, &r, n).is_some();
            assert_eq!(segment_intersects_box(a, b, &r), oracle, "{a:?} {b:?} {r:?}");
            checked += 1;
        }
    }

    #[test]
    fn first_hit_matches_bisection_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let n = 10_000;
        let mut checked = 0;
        while checked < 500 {
            let (a, b, r) = random_case(&mut rng);
            if !robust_case(a, b, &r, n) || sampled_hit(a, b, &r, n).is_none() {
                continue;
            }
            let t = first_hit_parameter(a, b, &r).unwrap();
            let t_oracle = bisected_first_hit(a, b, &r, n).unwrap();
            assert!((t - t_oracle).abs() <= 1e-6, "{t} vs {t_oracle}");
            checked += 1;
        }
    }

    #[test]
    fn line_clear_is_conjunction() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..500 {
            let (a, b, _) = random_case(&mut rng);
            let boxes: Vec<Rect> = (0..rng.random_range(0..5))
                .map(|_| random_case(&mut rng).2)
                .collect();
            let per_box = boxes.iter().all(|r| !segment_intersects_box(a, b, r));
            assert_eq!(is_line_clear(a, b, &boxes), per_box);
        }
    }

    fn arb_point() -> impl Strategy<Value = Point2> {
        (-50.0..50.0f64, -50.0..50.0f64).prop_map(|(x, y)| p(x, y))
    }

    fn arb_rect() -> impl Strategy<Value = Rect> {
        (-40.0..40.0f64, -40.0..40.0f64, 0.1..20.0f64, 0.1..20.0f64)
            .prop_map(|(x, y, w, h)| rect(x, x + w, y, y + h))
    }

    proptest! {
        #[test]
        fn intersection_is_symmetric(a in arb_point(), b in arb_point(), r in arb_rect()) {
            prop_assert_eq!(segment_intersects_box(a, b, &r), segment_intersects_box(b, a, &r));
        }

        #[test]
        fn inside_start_always_intersects(r in arb_rect(), u in 0.0..1.0f64, v in 0.0..1.0f64, b in arb_point()) {
            let a = p(r.x_min() + u * r.width(), r.y_min() + v * r.height());
            prop_assert!(segment_intersects_box(a, b, &r));
        }

        #[test]
        fn first_hit_lies_on_boundary_and_prefix_is_clear(a in arb_point(), b in arb_point(), r in arb_rect()) {
            prop_assume!(!r.contains(a));
            if let Some(t) = first_hit_parameter(a, b, &r) {
                let q = a.lerp(b, t);
                let dx = (q.x - r.x_min()).abs().min((q.x - r.x_max()).abs());
                let dy = (q.y - r.y_min()).abs().min((q.y - r.y_max()).abs());
                let on_x_edge = dx <= 1e-9 && q.y >= r.y_min() - 1e-9 && q.y <= r.y_max() + 1e-9;
                let on_y_edge = dy <= 1e-9 && q.x >= r.x_min() - 1e-9 && q.x <= r.x_max() + 1e-9;
                prop_assert!(on_x_edge || on_y_edge, "{:?} not on boundary of {:?}", q, r);
                for k in 0..1000 {
                    let s = t * k as f64 / 1000.0;
                    prop_assert!(!r.contains(a.lerp(b, s)));
                }
            }
        }

        #[test]
        fn single_edge_reflection_is_involution(y in 0.0..10.0f64, over in 0.01..9.99f64, vx in -5.0..-0.1f64, vy in -5.0..5.0f64) {
            let bounds = Bounds::new(0.0, 10.0, 0.0, 10.0).unwrap();
            let v = Vec2::new(vx, vy);
            let (_, v1) = reflect_in_rectangle(p(-over, y), v, &bounds);
            let (_, v2) = reflect_in_rectangle(p(-over, y), v1, &bounds);
            prop_assert_eq!(v2, v);
        }

        #[test]
        fn outdoor_samples_are_outdoor(seed in any::<u64>(), r in arb_rect()) {
            let bounds = Bounds::new(-50.0, 50.0, -50.0, 50.0).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if let Ok(q) = sample_outdoor_position(&bounds, &[r], &mut rng, 1000) {
                prop_assert!(is_outdoor(q, &bounds, &[r]));
            }
        }
    }
}
