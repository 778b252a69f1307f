//! Time-stepped 2D random walk, optionally building-aware.
//!
//! A walker draws a speed and a heading, then advances in sub-steps of
//! `update_step` seconds until its leg ends. A building-aware walker clips
//! each sub-step at the first obstacle it would touch, stops a short standoff
//! before it, and draws a new course whose next sub-step is clear. Both kinds
//! rebound off the bounding rectangle.

use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::MobilityError;
use crate::geometry::{first_hit_any, is_line_clear, reflect_in_rectangle, Bounds, Point2, Rect, Vec2};

/// Distance kept from an obstacle boundary after a clipped sub-step.
pub const STANDOFF: f64 = 1e-3;
/// Default number of course redraws in [`avoid_building`].
pub const AVOID_RETRIES: usize = 50;

const TIME_EPS: f64 = 1e-12;
const STALL_LIMIT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpeedDist {
    Uniform { min: f64, max: f64 },
    Constant { value: f64 },
}

impl SpeedDist {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            SpeedDist::Uniform { min, max } => min + (max - min) * rng.random::<f64>(),
            SpeedDist::Constant { value } => value,
        }
    }

    fn is_valid(&self) -> bool {
        match *self {
            SpeedDist::Uniform { min, max } => min > 0.0 && max >= min && max.is_finite(),
            SpeedDist::Constant { value } => value > 0.0 && value.is_finite(),
        }
    }
}

/// Heading distribution, radians.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DirectionDist {
    Uniform { min: f64, max: f64 },
    /// Gauss-Markov-like memory: the new heading is `alpha * old + (1 - alpha) * fresh`,
    /// blended along the shorter arc, with `fresh` uniform on `[0, 2pi)`.
    Correlated { alpha: f64 },
}

impl DirectionDist {
    fn sample<R: Rng + ?Sized>(&self, previous: Vec2, rng: &mut R) -> f64 {
        match *self {
            DirectionDist::Uniform { min, max } => min + (max - min) * rng.random::<f64>(),
            DirectionDist::Correlated { alpha } => {
                let fresh = TAU * rng.random::<f64>();
                if previous == Vec2::ZERO {
                    return fresh;
                }
                let old = previous.angle();
                let mut diff = (fresh - old) % TAU;
                if diff > std::f64::consts::PI {
                    diff -= TAU;
                } else if diff <= -std::f64::consts::PI {
                    diff += TAU;
                }
                old + (1.0 - alpha) * diff
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LegMode {
    Time { seconds: f64 },
    Distance { meters: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkKind {
    Plain,
    BuildingAware,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkParams {
    pub bounds: Bounds,
    pub speed: SpeedDist,
    pub direction: DirectionDist,
    pub leg: LegMode,
    pub update_step: f64,
}

impl WalkParams {
    /// Walking defaults: 1 s legs, 0.1 s sub-steps, speed uniform in [2, 4] m/s.
    pub fn new(bounds: Bounds) -> Self {
        Self {
            bounds,
            speed: SpeedDist::Uniform { min: 2.0, max: 4.0 },
            direction: DirectionDist::Uniform { min: 0.0, max: TAU },
            leg: LegMode::Time { seconds: 1.0 },
            update_step: 0.1,
        }
    }

    pub fn with_speed(mut self, speed: SpeedDist) -> Self {
        self.speed = speed;
        self
    }

    pub fn with_direction(mut self, direction: DirectionDist) -> Self {
        self.direction = direction;
        self
    }

    pub fn validate(&self) -> Result<(), MobilityError> {
        let leg_ok = match self.leg {
            LegMode::Time { seconds } => seconds > 0.0,
            LegMode::Distance { meters } => meters > 0.0,
        };
        let dir_ok = match self.direction {
            DirectionDist::Uniform { min, max } => min.is_finite() && max.is_finite() && max >= min,
            DirectionDist::Correlated { alpha } => (0.0..=1.0).contains(&alpha),
        };
        if !self.speed.is_valid() {
            return Err(MobilityError::InvalidParams("speeds must be positive".into()));
        }
        if !leg_ok {
            return Err(MobilityError::InvalidParams("leg length must be positive".into()));
        }
        if !(self.update_step > 0.0) {
            return Err(MobilityError::InvalidParams("update_step must be positive".into()));
        }
        if !dir_ok {
            return Err(MobilityError::InvalidParams("invalid direction distribution".into()));
        }
        Ok(())
    }

    fn draw_velocity<R: Rng + ?Sized>(&self, previous: Vec2, rng: &mut R) -> Vec2 {
        let speed = self.speed.sample(rng);
        let heading = self.direction.sample(previous, rng);
        Vec2::from_polar(speed, heading)
    }

    fn leg_duration(&self, speed: f64) -> f64 {
        match self.leg {
            LegMode::Time { seconds } => seconds,
            LegMode::Distance { meters } => meters / speed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkState {
    pub position: Point2,
    pub velocity: Vec2,
    pub time: f64,
    pub leg_end_time: f64,
    pub kind: WalkKind,
}

/// Notifications emitted while a walk advances.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WalkEvent {
    /// The walker reached `position` at `time` along a straight move.
    Moved { time: f64, position: Point2 },
    /// A new velocity took effect (leg start, obstacle avoidance, rebound).
    CourseChange {
        time: f64,
        position: Point2,
        velocity: Vec2,
    },
}

pub fn init_walk<R: Rng + ?Sized>(
    params: &WalkParams,
    kind: WalkKind,
    start: Point2,
    boxes: &[Rect],
    time: f64,
    rng: &mut R,
) -> Result<WalkState, MobilityError> {
    params.validate()?;
    if !start.is_finite() || !params.bounds.contains(start) {
        return Err(MobilityError::StartOutOfBounds {
            x: start.x,
            y: start.y,
        });
    }
    if kind == WalkKind::BuildingAware && boxes.iter().any(|b| b.contains(start)) {
        return Err(MobilityError::StartIndoors {
            x: start.x,
            y: start.y,
        });
    }
    let velocity = params.draw_velocity(Vec2::ZERO, rng);
    Ok(WalkState {
        position: start,
        velocity,
        time,
        leg_end_time: time + params.leg_duration(velocity.norm()),
        kind,
    })
}

/// Draws courses until the next `update_step` of motion stays in bounds and
/// clear of every box.
pub fn avoid_building<R: Rng + ?Sized>(
    position: Point2,
    previous: Vec2,
    params: &WalkParams,
    boxes: &[Rect],
    rng: &mut R,
    retries: usize,
) -> Result<Vec2, MobilityError> {
    for _ in 0..retries {
        let v = params.draw_velocity(previous, rng);
        let next = position + v * params.update_step;
        if params.bounds.contains(next) && is_line_clear(position, next, boxes) {
            return Ok(v);
        }
    }
    Err(MobilityError::NoClearCourse {
        x: position.x,
        y: position.y,
        retries,
    })
}

/// Advances `state` to time `until`, reporting every move and course change.
pub fn advance_walk<R, F>(
    state: &mut WalkState,
    params: &WalkParams,
    boxes: &[Rect],
    until: f64,
    rng: &mut R,
    mut on_event: F,
) -> Result<(), MobilityError>
where
    R: Rng + ?Sized,
    F: FnMut(WalkEvent),
{
    if until < state.time - TIME_EPS {
        return Err(MobilityError::TimeReversed {
            now: state.time,
            requested: until,
        });
    }
    let aware = state.kind == WalkKind::BuildingAware;
    let bounds = &params.bounds;
    let mut stalled = 0usize;

    while until - state.time > TIME_EPS {
        if state.leg_end_time - state.time <= TIME_EPS {
            state.velocity = params.draw_velocity(state.velocity, rng);
            state.leg_end_time = state.time + params.leg_duration(state.velocity.norm());
            on_event(course_change(state));
            continue;
        }

        let dt = params
            .update_step
            .min(state.leg_end_time - state.time)
            .min(until - state.time);
        let speed = state.velocity.norm();
        let step_len = speed * dt;
        let start = state.position;
        let target = start + state.velocity * dt;

        let exit_dist = exit_fraction(start, target, bounds).map(|t| t * step_len);
        let hit_dist = if aware {
            first_hit_any(start, target, boxes).map(|t| t * step_len)
        } else {
            None
        };

        let blocked = match (hit_dist, exit_dist) {
            (Some(hit), exit) if exit.is_none_or(|e| hit - STANDOFF <= e) => Some(hit),
            _ => None,
        };
        let moved = match (blocked, exit_dist) {
            (Some(hit), _) => {
                let travel = (hit - STANDOFF).max(0.0);
                move_along(state, travel, speed, bounds, &mut on_event);
                state.velocity = avoid_building(
                    state.position,
                    state.velocity,
                    params,
                    boxes,
                    rng,
                    AVOID_RETRIES,
                )?;
                on_event(course_change(state));
                travel > 0.0
            }
            (None, Some(exit)) => {
                move_along(state, exit, speed, bounds, &mut on_event);
                let (_, rebound) = reflect_in_rectangle(target, state.velocity, bounds);
                state.velocity = rebound;
                on_event(course_change(state));
                exit > 0.0
            }
            (None, None) => {
                state.position = target;
                state.time += dt;
                on_event(WalkEvent::Moved {
                    time: state.time,
                    position: state.position,
                });
                true
            }
        };

        if moved {
            stalled = 0;
        } else {
            stalled += 1;
            if stalled > STALL_LIMIT {
                return Err(MobilityError::Stalled {
                    x: state.position.x,
                    y: state.position.y,
                });
            }
        }
    }
    state.time = state.time.max(until);
    Ok(())
}

fn course_change(state: &WalkState) -> WalkEvent {
    WalkEvent::CourseChange {
        time: state.time,
        position: state.position,
        velocity: state.velocity,
    }
}

/// Moves `distance` along the current velocity. Clamping absorbs the rounding
/// that would otherwise leave a walker stopped at a wall just outside it.
fn move_along<F: FnMut(WalkEvent)>(
    state: &mut WalkState,
    distance: f64,
    speed: f64,
    bounds: &Bounds,
    on_event: &mut F,
) {
    if distance <= 0.0 {
        return;
    }
    state.position = bounds.rect().clamp(state.position + state.velocity * (distance / speed));
    state.time += distance / speed;
    on_event(WalkEvent::Moved {
        time: state.time,
        position: state.position,
    });
}

/// Fraction of `start -> target` at which the segment leaves `bounds`,
/// or `None` when `target` is inside.
fn exit_fraction(start: Point2, target: Point2, bounds: &Bounds) -> Option<f64> {
    if bounds.contains(target) {
        return None;
    }
    let r = bounds.rect();
    let d = target - start;
    let mut t = 1.0_f64;
    if target.x < r.x_min() {
        t = t.min((r.x_min() - start.x) / d.x);
    } else if target.x > r.x_max() {
        t = t.min((r.x_max() - start.x) / d.x);
    }
    if target.y < r.y_min() {
        t = t.min((r.y_min() - start.y) / d.y);
    } else if target.y > r.y_max() {
        t = t.min((r.y_max() - start.y) / d.y);
    }
    Some(t.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::is_outdoor;
    use crate::rng::SimRng;
    use rand::SeedableRng;

    fn bounds(x0: f64, x1: f64, y0: f64, y1: f64) -> Bounds {
        Bounds::new(x0, x1, y0, y1).unwrap()
    }

    fn rect(x0: f64, x1: f64, y0: f64, y1: f64) -> Rect {
        Rect::new(x0, x1, y0, y1).unwrap()
    }

    fn trace(
        state: &mut WalkState,
        params: &WalkParams,
        boxes: &[Rect],
        until: f64,
        rng: &mut SimRng,
    ) -> Vec<Point2> {
        let mut points = vec![state.position];
        advance_walk(state, params, boxes, until, rng, |e| {
            if let WalkEvent::Moved { position, .. } = e {
                points.push(position);
            }
        })
        .unwrap();
        points
    }

    #[test]
    fn velocity_magnitude_equals_drawn_speed() {
        let params = WalkParams::new(bounds(0.0, 100.0, 0.0, 100.0))
            .with_speed(SpeedDist::Constant { value: 3.25 });
        let mut rng = SimRng::seed_from_u64(5);
        let s = init_walk(&params, WalkKind::Plain, Point2::new(50.0, 50.0), &[], 0.0, &mut rng).unwrap();
        assert!((s.velocity.norm() - 3.25).abs() < 1e-9);
        assert!((s.leg_end_time - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distance_leg_sets_end_time_from_speed() {
        let mut params = WalkParams::new(bounds(0.0, 100.0, 0.0, 100.0))
            .with_speed(SpeedDist::Constant { value: 2.0 });
        params.leg = LegMode::Distance { meters: 5.0 };
        let mut rng = SimRng::seed_from_u64(5);
        let s = init_walk(&params, WalkKind::Plain, Point2::new(50.0, 50.0), &[], 0.0, &mut rng).unwrap();
        assert!((s.leg_end_time - 2.5).abs() < 1e-12);
    }

    #[test]
    fn indoor_start_is_rejected() {
        let params = WalkParams::new(bounds(0.0, 100.0, 0.0, 100.0));
        let boxes = [rect(10.0, 20.0, 10.0, 20.0)];
        let mut rng = SimRng::seed_from_u64(5);
        let err = init_walk(&params, WalkKind::BuildingAware, Point2::new(15.0, 15.0), &boxes, 0.0, &mut rng);
        assert!(matches!(err, Err(MobilityError::StartIndoors { .. })));
        // A plain walker ignores obstacles.
        assert!(init_walk(&params, WalkKind::Plain, Point2::new(15.0, 15.0), &boxes, 0.0, &mut rng).is_ok());
    }

    #[test]
    fn equal_seeds_give_equal_states() {
        let params = WalkParams::new(bounds(0.0, 100.0, 0.0, 100.0));
        let a = init_walk(&params, WalkKind::BuildingAware, Point2::new(1.0, 2.0), &[], 0.0, &mut SimRng::seed_from_u64(9)).unwrap();
        let b = init_walk(&params, WalkKind::BuildingAware, Point2::new(1.0, 2.0), &[], 0.0, &mut SimRng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_params_are_rejected() {
        let mut params = WalkParams::new(bounds(0.0, 100.0, 0.0, 100.0));
        params.update_step = 0.0;
        assert!(params.validate().is_err());
        let params = WalkParams::new(bounds(0.0, 100.0, 0.0, 100.0))
            .with_speed(SpeedDist::Uniform { min: 0.0, max: 1.0 });
        assert!(params.validate().is_err());
    }

    #[test]
    fn straight_leg_without_obstacles() {
        let mut params = WalkParams::new(bounds(-1000.0, 1000.0, -1000.0, 1000.0));
        params.leg = LegMode::Time { seconds: 100.0 };
        let mut rng = SimRng::seed_from_u64(3);
        let mut s = init_walk(&params, WalkKind::BuildingAware, Point2::new(0.0, 0.0), &[], 0.0, &mut rng).unwrap();
        let v = s.velocity;
        advance_walk(&mut s, &params, &[], 7.3, &mut rng, |_| {}).unwrap();
        let expected = Point2::new(0.0, 0.0) + v * 7.3;
        assert!(s.position.distance(expected) < 1e-9, "{:?} vs {expected:?}", s.position);
        assert_eq!(s.time, 7.3);
    }

    #[test]
    fn box_directly_ahead_is_avoided() {
        let mut params = WalkParams::new(bounds(0.0, 100.0, 0.0, 100.0))
            .with_direction(DirectionDist::Uniform { min: 0.0, max: 0.0 })
            .with_speed(SpeedDist::Constant { value: 3.0 });
        params.leg = LegMode::Time { seconds: 50.0 };
        let boxes = [rect(20.0, 30.0, 40.0, 60.0)];
        let mut rng = SimRng::seed_from_u64(4);
        let mut s = init_walk(&params, WalkKind::BuildingAware, Point2::new(10.0, 50.0), &boxes, 0.0, &mut rng).unwrap();
        // With the heading locked east every redraw points back into the box.
        let err = advance_walk(&mut s, &params, &boxes, 10.0, &mut rng, |_| {});
        assert!(matches!(err, Err(MobilityError::NoClearCourse { .. })));
        assert!(s.position.x <= 20.0 - STANDOFF + 1e-9 && s.position.x > 19.0);

        let params = WalkParams::new(bounds(0.0, 100.0, 0.0, 100.0));
        let mut s = init_walk(&params, WalkKind::BuildingAware, Point2::new(10.0, 50.0), &boxes, 0.0, &mut rng).unwrap();
        s.velocity = Vec2::new(3.0, 0.0);
        s.leg_end_time = 50.0;
        let pts = trace(&mut s, &params, &boxes, 60.0, &mut rng);
        for w in pts.windows(2) {
            assert!(is_line_clear(w[0], w[1], &boxes), "{:?} -> {:?}", w[0], w[1]);
        }
        assert!(is_outdoor(s.position, &params.bounds, &boxes));
    }

    #[test]
    fn avoid_building_in_open_space_takes_first_draw() {
        let params = WalkParams::new(bounds(0.0, 100.0, 0.0, 100.0));
        let mut a = SimRng::seed_from_u64(8);
        let mut b = SimRng::seed_from_u64(8);
        let v = avoid_building(Point2::new(50.0, 50.0), Vec2::ZERO, &params, &[], &mut a, AVOID_RETRIES).unwrap();
        assert_eq!(v, params.draw_velocity(Vec2::ZERO, &mut b));
    }

    #[test]
    fn avoid_building_finds_narrow_exit() {
        // A U-shaped dead end: walls north, south and east; open to the west.
        let boxes = [
            rect(0.0, 10.0, 10.6, 11.0),
            rect(0.0, 10.0, 9.0, 9.4),
            rect(10.0, 11.0, 9.0, 11.0),
        ];
        let params = WalkParams::new(bounds(-20.0, 20.0, -20.0, 20.0));
        let pos = Point2::new(9.5, 10.0);
        for seed in 0..50 {
            let mut rng = SimRng::seed_from_u64(seed);
            if let Ok(v) = avoid_building(pos, Vec2::ZERO, &params, &boxes, &mut rng, 500) {
                assert!(is_line_clear(pos, pos + v * params.update_step, &boxes));
            }
        }
    }

    #[test]
    fn avoid_building_enclosed_position_fails() {
        // (10, 10) sits in a 0.1 m pocket: every 0.2-0.4 m step hits a wall.
        let boxes = [
            rect(9.0, 11.0, 10.05, 11.0),
            rect(9.0, 11.0, 9.0, 9.95),
            rect(10.05, 11.0, 9.0, 11.0),
            rect(9.0, 9.95, 9.0, 11.0),
        ];
        let params = WalkParams::new(bounds(-20.0, 20.0, -20.0, 20.0));
        let mut rng = SimRng::seed_from_u64(1);
        let err = avoid_building(Point2::new(10.0, 10.0), Vec2::ZERO, &params, &boxes, &mut rng, AVOID_RETRIES);
        assert!(matches!(err, Err(MobilityError::NoClearCourse { retries: 50, .. })));
    }

    #[test]
    fn rebounds_off_bounds() {
        let mut params = WalkParams::new(bounds(0.0, 10.0, 0.0, 10.0))
            .with_speed(SpeedDist::Constant { value: 2.0 });
        params.leg = LegMode::Time { seconds: 1000.0 };
        let mut rng = SimRng::seed_from_u64(1);
        let mut s = init_walk(&params, WalkKind::Plain, Point2::new(5.0, 5.0), &[], 0.0, &mut rng).unwrap();
        s.velocity = Vec2::new(2.0, 0.0);
        let mut changes = 0;
        advance_walk(&mut s, &params, &[], 4.0, &mut rng, |e| {
            if matches!(e, WalkEvent::CourseChange { .. }) {
                changes += 1;
            }
        })
        .unwrap();
        // 5 -> 10 takes 2.5 s, then 1.5 s back west.
        assert!((s.position.x - 7.0).abs() < 1e-9);
        assert_eq!(s.velocity, Vec2::new(-2.0, 0.0));
        assert_eq!(changes, 1);
    }

    #[test]
    fn rebound_positions_never_leave_bounds() {
        let b = bounds(0.0, 3.0, -0.7, 2.9);
        let params = WalkParams::new(b);
        for seed in 0..20 {
            let mut rng = SimRng::seed_from_u64(seed);
            let mut s = init_walk(&params, WalkKind::Plain, Point2::new(1.5, 1.1), &[], 0.0, &mut rng).unwrap();
            let points = trace(&mut s, &params, &[], 2000.0, &mut rng);
            assert!(points.iter().all(|&p| b.contains(p)), "seed {seed}");
        }
    }

    #[test]
    fn empty_layout_matches_plain_walk() {
        let params = WalkParams::new(bounds(0.0, 30.0, 0.0, 30.0));
        let run = |kind| {
            let mut rng = SimRng::seed_from_u64(21);
            let mut s = init_walk(&params, kind, Point2::new(15.0, 15.0), &[], 0.0, &mut rng).unwrap();
            trace(&mut s, &params, &[], 200.0, &mut rng)
        };
        assert_eq!(run(WalkKind::Plain), run(WalkKind::BuildingAware));
    }

    #[test]
    fn time_cannot_go_backwards() {
        let params = WalkParams::new(bounds(0.0, 30.0, 0.0, 30.0));
        let mut rng = SimRng::seed_from_u64(2);
        let mut s = init_walk(&params, WalkKind::Plain, Point2::new(15.0, 15.0), &[], 5.0, &mut rng).unwrap();
        assert!(matches!(
            advance_walk(&mut s, &params, &[], 4.0, &mut rng, |_| {}),
            Err(MobilityError::TimeReversed { .. })
        ));
    }

    #[test]
    fn correlated_heading_stays_close_to_previous() {
        let dist = DirectionDist::Correlated { alpha: 0.85 };
        let mut rng = SimRng::seed_from_u64(3);
        let prev = Vec2::from_polar(1.0, 1.0);
        for _ in 0..1000 {
            let h = dist.sample(prev, &mut rng);
            assert!((h - 1.0).abs() <= 0.15 * std::f64::consts::PI + 1e-12);
        }
    }
}
