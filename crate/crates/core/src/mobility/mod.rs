//! Mobility models: random walks, scripted routes and master/slave groups.

mod fleet;
pub mod group;
pub mod walk;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Layout, Point2};

pub use fleet::Fleet;
pub use group::{
    bind_group, sample_offset, DeviationDist, DeviationFamily, GroupBinding, SlaveConstraint,
    SlaveCourseChange, DEFAULT_MAX_ITERATIONS,
};
pub use walk::{
    advance_walk, avoid_building, init_walk, DirectionDist, LegMode, SpeedDist, WalkEvent, WalkKind,
    WalkParams, WalkState,
};

pub type NodeId = u32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MobilityError {
    #[error("invalid mobility parameters: {0}")]
    InvalidParams(String),
    #[error("start position ({x}, {y}) is outside the walk bounds")]
    StartOutOfBounds { x: f64, y: f64 },
    #[error("building-aware walker starts indoors at ({x}, {y})")]
    StartIndoors { x: f64, y: f64 },
    #[error("no clear course from ({x}, {y}) after {retries} draws")]
    NoClearCourse { x: f64, y: f64, retries: usize },
    #[error("walker stalled at ({x}, {y})")]
    Stalled { x: f64, y: f64 },
    #[error("cannot move back in time from {now} s to {requested} s")]
    TimeReversed { now: f64, requested: f64 },
    #[error("no acceptable slave position around master at ({x}, {y}) after {attempts} iterations")]
    OffsetRejected { attempts: u32, x: f64, y: f64 },
    #[error("deviation {dist:?} never lands within its bound")]
    DeviationBoundUnreachable { dist: DeviationDist },
    #[error("node {0}: {1}")]
    Node(NodeId, Box<MobilityError>),
    #[error("slave {slave} references invalid master {master}")]
    BadMaster { slave: NodeId, master: NodeId },
    #[error("node ids must be 0..n in order; found {found} at index {index}")]
    NodeOrder { index: usize, found: NodeId },
}

impl MobilityError {
    pub(crate) fn at(self, node: NodeId) -> Self {
        MobilityError::Node(node, Box::new(self))
    }
}

/// Piecewise-linear path walked at constant speed, starting at its first
/// waypoint at time zero and stopping at the last one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Route {
    pub speed: f64,
    pub waypoints: Vec<Point2>,
}

impl Route {
    pub fn validate(&self) -> Result<(), MobilityError> {
        if self.waypoints.is_empty() || !(self.speed > 0.0) {
            return Err(MobilityError::InvalidParams(
                "route needs a waypoint and a positive speed".into(),
            ));
        }
        Ok(())
    }

    pub fn length(&self) -> f64 {
        self.waypoints.windows(2).map(|w| w[0].distance(w[1])).sum()
    }

    pub fn duration(&self) -> f64 {
        self.length() / self.speed
    }

    /// Arrival time at each waypoint after the first.
    pub fn arrival_times(&self) -> Vec<f64> {
        let mut elapsed = 0.0;
        self.waypoints
            .windows(2)
            .map(|w| {
                elapsed += w[0].distance(w[1]) / self.speed;
                elapsed
            })
            .collect()
    }

    pub fn position_at(&self, t: f64) -> Point2 {
        let mut remaining = (t.max(0.0)) * self.speed;
        for w in self.waypoints.windows(2) {
            let len = w[0].distance(w[1]);
            if remaining <= len {
                return if len > 0.0 { w[0].lerp(w[1], remaining / len) } else { w[1] };
            }
            remaining -= len;
        }
        *self.waypoints.last().expect("validated route")
    }
}

/// How one node moves.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum MobilitySpec {
    Static,
    Walk { kind: WalkKind, params: WalkParams },
    Route { route: Route },
    Slave { binding: GroupBinding },
}

impl MobilitySpec {
    pub fn master(&self) -> Option<NodeId> {
        match self {
            MobilitySpec::Slave { binding } => Some(binding.master),
            _ => None,
        }
    }
}

/// A node's id, initial position and mobility.
#[derive(Clone, Debug, PartialEq)]
pub struct MobileNode {
    pub id: NodeId,
    pub position: Point2,
    pub mobility: MobilitySpec,
}

/// Creates a master followed by `slave_count` bound slaves, ids assigned
/// consecutively from `first_id` (master first).
#[allow(clippy::too_many_arguments)]
pub fn build_group<R: Rng + ?Sized>(
    first_id: NodeId,
    master: MobilitySpec,
    master_start: Point2,
    slave_count: usize,
    deviation: DeviationDist,
    constraint: SlaveConstraint,
    max_iterations: u32,
    layout: &Layout,
    rng: &mut R,
) -> Result<Vec<MobileNode>, MobilityError> {
    if master.master().is_some() {
        return Err(MobilityError::InvalidParams("a master cannot itself be a slave".into()));
    }
    let mut nodes = Vec::with_capacity(slave_count + 1);
    nodes.push(MobileNode {
        id: first_id,
        position: master_start,
        mobility: master,
    });
    for k in 0..slave_count {
        let id = first_id + 1 + k as NodeId;
        let binding = bind_group(first_id, deviation, constraint, max_iterations, master_start, layout, rng)
            .map_err(|e| e.at(id))?;
        nodes.push(MobileNode {
            id,
            position: binding.slave_position(master_start),
            mobility: MobilitySpec::Slave { binding },
        });
    }
    Ok(nodes)
}
