use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{invalid, ScenarioError};
use crate::geometry::{Point2, Rect};

/// Obstacle orientation relative to a street running along x.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Length along the street.
    #[default]
    Aligned,
    /// Length across the street.
    Orthogonal,
}

/// Rejection-samples a `length x width` box uniformly inside `street` that
/// does not touch any box in `existing`.
pub fn place_random_obstacle<R: Rng + ?Sized>(
    street: &Rect,
    width: f64,
    length: f64,
    orientation: Orientation,
    existing: &[Rect],
    rng: &mut R,
    max_attempts: usize,
) -> Result<Rect, ScenarioError> {
    if !(width > 0.0 && length > 0.0) {
        return Err(invalid("obstacle sides must be positive"));
    }
    let (dx, dy) = match orientation {
        Orientation::Aligned => (length, width),
        Orientation::Orthogonal => (width, length),
    };
    let exhausted = ScenarioError::ObstaclePlacement {
        width,
        length,
        attempts: max_attempts,
    };
    if dx > street.width() || dy > street.height() {
        return Err(exhausted);
    }
    for _ in 0..max_attempts {
        let x = street.x_min() + rng.random::<f64>() * (street.width() - dx);
        let y = street.y_min() + rng.random::<f64>() * (street.height() - dy);
        let candidate = Rect::from_origin(Point2::new(x, y), dx, dy)?;
        if !existing.iter().any(|b| b.overlaps(&candidate)) {
            return Ok(candidate);
        }
    }
    Err(exhausted)
}

/// Places `count` boxes with sides uniform in `[side_min, side_max]` inside
/// `area`, each at least `min_gap` from every earlier box and from `keep_out`.
#[allow(clippy::too_many_arguments)]
pub fn place_random_buildings<R: Rng + ?Sized>(
    area: &Rect,
    count: usize,
    side_min: f64,
    side_max: f64,
    min_gap: f64,
    keep_out: &[Rect],
    rng: &mut R,
    max_attempts: usize,
) -> Result<Vec<Rect>, ScenarioError> {
    if !(side_min > 0.0 && side_max >= side_min && min_gap >= 0.0) {
        return Err(invalid("building sides must be positive and ordered, gap non-negative"));
    }
    let mut placed: Vec<Rect> = Vec::with_capacity(count);
    for _ in 0..count {
        let mut found = None;
        for _ in 0..max_attempts {
            let w = rng.random_range(side_min..=side_max);
            let h = rng.random_range(side_min..=side_max);
            if w > area.width() || h > area.height() {
                continue;
            }
            let x = area.x_min() + rng.random::<f64>() * (area.width() - w);
            let y = area.y_min() + rng.random::<f64>() * (area.height() - h);
            let candidate = Rect::from_origin(Point2::new(x, y), w, h)?;
            let padded = candidate.expanded(min_gap)?;
            if !placed.iter().chain(keep_out).any(|b| b.overlaps(&padded)) {
                found = Some(candidate);
                break;
            }
        }
        match found {
            Some(b) => placed.push(b),
            None => {
                return Err(ScenarioError::ObstaclePlacement {
                    width: side_min,
                    length: side_max,
                    attempts: max_attempts,
                })
            }
        }
    }
    Ok(placed)
}
