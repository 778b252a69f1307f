//! Seeded generators for the incident scenarios and the document
//! format that snapshots a generated world.

mod chemical;
mod demo;
mod mva;
mod placement;
mod school;

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Bounds, GeometryError, Layout, Point2, Rect};
use crate::mobility::{MobileNode, MobilityError, MobilitySpec, NodeId};
use crate::radio::{LinkKind, LinkModelParams, RadioError, SelectionPolicy, StationId};

pub use chemical::{gen_chemical_plant, ChemConfig};
pub use demo::{gen_demo, DemoConfig, DemoWorld};
pub use mva::{gen_mva, MvaConfig};
pub use placement::{place_random_buildings, place_random_obstacle, Orientation};
pub use school::{corridor_centerlines, gen_school_building, gen_school_shooting, SchoolConfig};

/// Flow start times are drawn uniformly from `[0, FLOW_START_WINDOW)` seconds.
pub const FLOW_START_WINDOW: f64 = 0.1;
/// Size of one control packet in bytes.
pub const CONTROL_PACKET_BYTES: u32 = 1250;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("no room for a {width} x {length} obstacle after {attempts} attempts")]
    ObstaclePlacement { width: f64, length: f64, attempts: usize },
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Mobility(#[from] MobilityError),
    #[error(transparent)]
    Radio(#[from] RadioError),
    #[error("scenario document: {0}")]
    Document(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Mva,
    ChemicalPlant,
    SchoolShooting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeRole {
    Responder,
    Robot,
    TeamLeader,
    TeamMember,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeSpec {
    pub id: NodeId,
    pub role: NodeRole,
    pub position: Point2,
    pub mobility: MobilitySpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StationKind {
    Lte,
    MmwaveBs,
    MmwaveRelay,
}

impl StationKind {
    pub fn link_kind(self) -> LinkKind {
        match self {
            StationKind::Lte => LinkKind::Lte,
            StationKind::MmwaveBs | StationKind::MmwaveRelay => LinkKind::Mmwave,
        }
    }
}

/// Backhaul attachment and placement rule of a relay.
///
/// Every reposition interval the relay checks line of sight to `follows`; when
/// it is lost the relay moves to the site closest to that node that sees both
/// the donor and the node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelaySpec {
    pub donor: StationId,
    pub follows: NodeId,
    pub sites: Vec<Point2>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StationSpec {
    pub id: StationId,
    pub kind: StationKind,
    pub position: Point2,
    pub antennas: u32,
    /// Reserved for flows whose policy prefers LTE.
    #[serde(default)]
    pub dedicated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relay: Option<RelaySpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Uplink,
    Downlink,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowKind {
    Video,
    Control,
}

/// A constant-bitrate flow between `node` and the incident-command side of
/// whichever station serves it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowSpec {
    pub id: u32,
    pub node: NodeId,
    pub direction: Direction,
    pub kind: FlowKind,
    pub offered_rate: f64,
    pub start: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub packet_size: Option<u32>,
    #[serde(default)]
    pub policy: SelectionPolicy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub kind: ScenarioKind,
    pub seed: u64,
    pub horizon: f64,
    pub antennas_ue: u32,
    pub bounds: Bounds,
    pub boxes: Vec<Rect>,
    pub nodes: Vec<NodeSpec>,
    pub stations: Vec<StationSpec>,
    pub flows: Vec<FlowSpec>,
}

impl ScenarioSpec {
    pub fn layout(&self) -> Layout {
        Layout::new(self.bounds, self.boxes.clone())
    }

    pub fn mobile_nodes(&self) -> Vec<MobileNode> {
        self.nodes
            .iter()
            .map(|n| MobileNode {
                id: n.id,
                position: n.position,
                mobility: n.mobility.clone(),
            })
            .collect()
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let bad = |m: String| Err(ScenarioError::Invalid(m));
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return bad(format!("horizon must be positive, got {}", self.horizon));
        }
        if self.seed > i64::MAX as u64 {
            return bad("seed must fit in 63 bits".into());
        }
        for (i, a) in self.boxes.iter().enumerate() {
            if let Some(j) = self.boxes[i + 1..].iter().position(|b| a.overlaps(b)) {
                return bad(format!("boxes {i} and {} overlap", i + 1 + j));
            }
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if n.id as usize != i {
                return bad(format!("node ids must be 0..n in order, found {} at {i}", n.id));
            }
            if !n.position.is_finite() {
                return bad(format!("node {} has a non-finite position", n.id));
            }
            if let MobilitySpec::Walk { params, .. } = &n.mobility {
                params.validate()?;
            }
        }
        let layout = self.layout();
        for n in &self.nodes {
            let feasible = match &n.mobility {
                MobilitySpec::Walk { kind, params } => {
                    params.bounds.contains(n.position)
                        && (*kind == crate::mobility::WalkKind::Plain
                            || !self.boxes.iter().any(|b| b.contains(n.position)))
                }
                MobilitySpec::Slave { binding } => {
                    let master = self.nodes.get(binding.master as usize);
                    match master {
                        Some(m) if m.mobility.master().is_none() && m.id != n.id => {
                            binding.holds_at(m.position, &layout)
                                && binding.slave_position(m.position) == n.position
                        }
                        _ => return bad(format!("node {} follows invalid master {}", n.id, binding.master)),
                    }
                }
                MobilitySpec::Route { route } => {
                    route.validate()?;
                    route.waypoints[0] == n.position
                }
                MobilitySpec::Static => true,
            };
            if !feasible {
                return bad(format!("node {} starts at an infeasible position", n.id));
            }
        }
        for (i, s) in self.stations.iter().enumerate() {
            if s.id as usize != i {
                return bad(format!("station ids must be 0..n in order, found {} at {i}", s.id));
            }
            match (&s.relay, s.kind) {
                (Some(relay), StationKind::MmwaveRelay) => {
                    let donor_ok = self
                        .stations
                        .get(relay.donor as usize)
                        .is_some_and(|d| d.kind == StationKind::MmwaveBs);
                    if !donor_ok {
                        return bad(format!("relay {} must attach to an mmWave base station", s.id));
                    }
                    if relay.follows as usize >= self.nodes.len() {
                        return bad(format!("relay {} follows unknown node {}", s.id, relay.follows));
                    }
                }
                (None, StationKind::MmwaveRelay) => return bad(format!("relay {} has no attachment", s.id)),
                (Some(_), _) => return bad(format!("station {} is not a relay", s.id)),
                (None, _) => {}
            }
        }
        for (i, f) in self.flows.iter().enumerate() {
            if f.id as usize != i {
                return bad(format!("flow ids must be 0..n in order, found {} at {i}", f.id));
            }
            if f.node as usize >= self.nodes.len() {
                return bad(format!("flow {} references unknown node {}", f.id, f.node));
            }
            if !(f.offered_rate > 0.0) || !f.offered_rate.is_finite() || !(f.start >= 0.0) {
                return bad(format!("flow {} needs a positive rate and non-negative start", f.id));
            }
            if (f.kind == FlowKind::Control) != f.packet_size.is_some_and(|s| s > 0) {
                return bad(format!("flow {}: control flows, and only they, carry a packet size", f.id));
            }
        }
        Ok(())
    }
}

/// A scenario together with the link model it is evaluated under.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioDocument {
    pub scenario: ScenarioSpec,
    #[serde(default)]
    pub link: LinkModelParams,
}

impl ScenarioDocument {
    pub fn to_toml(&self) -> Result<String, ScenarioError> {
        toml::to_string(self).map_err(|e| ScenarioError::Document(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self, ScenarioError> {
        let doc: Self = toml::from_str(text).map_err(|e| ScenarioError::Document(e.to_string()))?;
        doc.scenario.validate()?;
        doc.link.validate()?;
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), ScenarioError> {
        std::fs::write(path, self.to_toml()?).map_err(|source| ScenarioError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::InvalidConfig(msg.into())
}
