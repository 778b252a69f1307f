//! Master/slave group mobility in the spirit of reference-point group mobility.
//!
//! A slave holds an offset around its master's position. The offset is
//! resampled whenever the master changes course and held in between, so slave
//! trajectories stay continuous between master course changes.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{MobilityError, NodeId};
use crate::geometry::{Layout, Point2, Vec2};

/// Default cap on candidate offsets evaluated per resample.
pub const DEFAULT_MAX_ITERATIONS: u32 = 100;
/// Cap on per-axis redraws when enforcing the deviation bound.
pub const AXIS_REJECTION_LIMIT: u32 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviationFamily {
    Gaussian,
    /// Uniform with the configured mean and standard deviation.
    Uniform,
}

/// Per-axis distribution of a slave's offset from its master.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviationDist {
    pub family: DeviationFamily,
    pub mu: f64,
    pub sigma: f64,
    pub bound: f64,
}

impl Default for DeviationDist {
    fn default() -> Self {
        Self {
            family: DeviationFamily::Gaussian,
            mu: 0.0,
            sigma: 1.0,
            bound: 20.0,
        }
    }
}

impl DeviationDist {
    pub fn validate(&self) -> Result<(), MobilityError> {
        if !(self.sigma >= 0.0) || !(self.bound > 0.0) || !self.mu.is_finite() {
            return Err(MobilityError::InvalidParams(format!(
                "deviation needs sigma >= 0 and bound > 0, got {self:?}"
            )));
        }
        Ok(())
    }

    fn raw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.family {
            DeviationFamily::Gaussian => {
                let z: f64 = rng.sample(StandardNormal);
                self.mu + self.sigma * z
            }
            DeviationFamily::Uniform => {
                let half = self.sigma * 3f64.sqrt();
                self.mu + half * (2.0 * rng.random::<f64>() - 1.0)
            }
        }
    }

    /// One axis component, redrawn while it exceeds `bound` in magnitude.
    pub fn sample_axis<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64, MobilityError> {
        for _ in 0..AXIS_REJECTION_LIMIT {
            let v = self.raw(rng);
            if v.abs() <= self.bound {
                return Ok(v);
            }
        }
        Err(MobilityError::DeviationBoundUnreachable { dist: *self })
    }
}

/// Extra acceptance rule for slave positions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlaveConstraint {
    #[default]
    None,
    /// Inside the layout bounds and outside every obstacle.
    Outdoor,
}

impl SlaveConstraint {
    pub fn accepts(&self, p: Point2, layout: &Layout) -> bool {
        match self {
            SlaveConstraint::None => true,
            SlaveConstraint::Outdoor => layout.is_outdoor(p),
        }
    }
}

/// Draws offsets until both components are within the bound and `accept`
/// holds at `master_pos + offset`; evaluates at most `max_iterations` candidates.
pub fn sample_offset<R, F>(
    deviation: &DeviationDist,
    mut accept: F,
    master_pos: Point2,
    max_iterations: u32,
    rng: &mut R,
) -> Result<Vec2, MobilityError>
where
    R: Rng + ?Sized,
    F: FnMut(Point2) -> bool,
{
    deviation.validate()?;
    for _ in 0..max_iterations {
        let offset = Vec2::new(deviation.sample_axis(rng)?, deviation.sample_axis(rng)?);
        if accept(master_pos + offset) {
            return Ok(offset);
        }
    }
    Err(MobilityError::OffsetRejected {
        attempts: max_iterations,
        x: master_pos.x,
        y: master_pos.y,
    })
}

/// A slave's attachment to its master.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupBinding {
    pub master: NodeId,
    pub deviation: DeviationDist,
    pub offset: Vec2,
    pub constraint: SlaveConstraint,
    pub max_iterations: u32,
}

/// Emitted for the slave each time its offset is redrawn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlaveCourseChange {
    pub master: NodeId,
    pub offset: Vec2,
}

pub fn bind_group<R: Rng + ?Sized>(
    master: NodeId,
    deviation: DeviationDist,
    constraint: SlaveConstraint,
    max_iterations: u32,
    master_pos: Point2,
    layout: &Layout,
    rng: &mut R,
) -> Result<GroupBinding, MobilityError> {
    if max_iterations == 0 {
        return Err(MobilityError::InvalidParams("max_iterations must be at least 1".into()));
    }
    let offset = sample_offset(
        &deviation,
        |p| constraint.accepts(p, layout),
        master_pos,
        max_iterations,
        rng,
    )?;
    Ok(GroupBinding {
        master,
        deviation,
        offset,
        constraint,
        max_iterations,
    })
}

impl GroupBinding {
    pub fn slave_position(&self, master_pos: Point2) -> Point2 {
        master_pos + self.offset
    }

    pub fn on_master_course_change<R: Rng + ?Sized>(
        &mut self,
        master_pos: Point2,
        layout: &Layout,
        rng: &mut R,
    ) -> Result<SlaveCourseChange, MobilityError> {
        let constraint = self.constraint;
        self.offset = sample_offset(
            &self.deviation,
            |p| constraint.accepts(p, layout),
            master_pos,
            self.max_iterations,
            rng,
        )?;
        Ok(SlaveCourseChange {
            master: self.master,
            offset: self.offset,
        })
    }

    pub fn holds_at(&self, master_pos: Point2, layout: &Layout) -> bool {
        self.constraint.accepts(self.slave_position(master_pos), layout)
    }
}
