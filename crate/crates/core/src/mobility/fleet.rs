use rand::Rng;

use super::{
    advance_walk, init_walk, GroupBinding, MobileNode, MobilityError, MobilitySpec, NodeId, Route,
    WalkEvent, WalkParams, WalkState,
};
use crate::geometry::{Layout, Point2};

enum Motion {
    Static(Point2),
    Walk {
        params: WalkParams,
        state: WalkState,
    },
    Route {
        route: Route,
        arrivals: Vec<f64>,
        position: Point2,
    },
    Slave {
        binding: GroupBinding,
        position: Point2,
        notifications: u64,
    },
}

impl Motion {
    fn position(&self) -> Point2 {
        match self {
            Motion::Static(p) => *p,
            Motion::Walk { state, .. } => state.position,
            Motion::Route { position, .. } => *position,
            Motion::Slave { position, .. } => *position,
        }
    }
}

/// Every node of a scenario, advanced together in time.
///
/// Masters move first; each master course change is then forwarded to its
/// slaves, which redraw their offsets. A slave whose held offset would put it
/// somewhere its constraint rejects is resampled at the query time.
pub struct Fleet {
    layout: Layout,
    motions: Vec<Motion>,
    time: f64,
}

impl Fleet {
    /// Nodes must be numbered `0..n` in order; slaves must follow a non-slave master.
    pub fn new<R: Rng + ?Sized>(
        layout: Layout,
        nodes: &[MobileNode],
        rng: &mut R,
    ) -> Result<Self, MobilityError> {
        let mut motions = Vec::with_capacity(nodes.len());
        for (index, node) in nodes.iter().enumerate() {
            if node.id as usize != index {
                return Err(MobilityError::NodeOrder {
                    index,
                    found: node.id,
                });
            }
            let motion = match &node.mobility {
                MobilitySpec::Static => Motion::Static(node.position),
                MobilitySpec::Walk { kind, params } => {
                    let state = init_walk(params, *kind, node.position, &layout.boxes, 0.0, rng)
                        .map_err(|e| e.at(node.id))?;
                    Motion::Walk {
                        params: params.clone(),
                        state,
                    }
                }
                MobilitySpec::Route { route } => {
                    route.validate().map_err(|e| e.at(node.id))?;
                    Motion::Route {
                        arrivals: route.arrival_times(),
                        position: route.position_at(0.0),
                        route: route.clone(),
                    }
                }
                MobilitySpec::Slave { binding } => {
                    let master = binding.master as usize;
                    let valid = master < nodes.len()
                        && master != index
                        && nodes[master].mobility.master().is_none();
                    if !valid {
                        return Err(MobilityError::BadMaster {
                            slave: node.id,
                            master: binding.master,
                        });
                    }
                    Motion::Slave {
                        binding: binding.clone(),
                        position: binding.slave_position(nodes[master].position),
                        notifications: 0,
                    }
                }
            };
            motions.push(motion);
        }
        Ok(Self {
            layout,
            motions,
            time: 0.0,
        })
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn len(&self) -> usize {
        self.motions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motions.is_empty()
    }

    pub fn position(&self, id: NodeId) -> Point2 {
        self.motions[id as usize].position()
    }

    pub fn positions(&self) -> Vec<Point2> {
        self.motions.iter().map(Motion::position).collect()
    }

    /// Master course changes forwarded to this slave so far (0 for non-slaves).
    pub fn notifications(&self, id: NodeId) -> u64 {
        match &self.motions[id as usize] {
            Motion::Slave { notifications, .. } => *notifications,
            _ => 0,
        }
    }

    pub fn advance_to<R: Rng + ?Sized>(&mut self, until: f64, rng: &mut R) -> Result<(), MobilityError> {
        self.advance_recording(until, rng, |_, _, _| {})
    }

    /// Advances every node to `until`, reporting each intermediate walk
    /// position and every node's final position as `(node, time, position)`.
    pub fn advance_recording<R, F>(&mut self, until: f64, rng: &mut R, mut record: F) -> Result<(), MobilityError>
    where
        R: Rng + ?Sized,
        F: FnMut(NodeId, f64, Point2),
    {
        if until < self.time {
            return Err(MobilityError::TimeReversed {
                now: self.time,
                requested: until,
            });
        }
        let from = self.time;
        let mut changes: Vec<Vec<Point2>> = vec![Vec::new(); self.motions.len()];

        for (index, motion) in self.motions.iter_mut().enumerate() {
            let id = index as NodeId;
            match motion {
                Motion::Static(_) | Motion::Slave { .. } => {}
                Motion::Walk { params, state } => {
                    let course = &mut changes[index];
                    advance_walk(state, params, &self.layout.boxes, until, rng, |e| match e {
                        WalkEvent::Moved { time, position } if time < until => record(id, time, position),
                        WalkEvent::CourseChange { position, .. } => course.push(position),
                        WalkEvent::Moved { .. } => {}
                    })
                    .map_err(|e| e.at(id))?;
                }
                Motion::Route {
                    route,
                    arrivals,
                    position,
                } => {
                    for &t in arrivals.iter() {
                        if t > from && t <= until {
                            changes[index].push(route.position_at(t));
                        }
                    }
                    *position = route.position_at(until);
                }
            }
        }

        for index in 0..self.motions.len() {
            let Some(master) = self.motions[index].master() else {
                continue;
            };
            let master_now = self.motions[master as usize].position();
            let master_changes = std::mem::take(&mut changes[master as usize]);
            let layout = &self.layout;
            if let Motion::Slave {
                binding,
                position,
                notifications,
            } = &mut self.motions[index]
            {
                for &at in &master_changes {
                    binding
                        .on_master_course_change(at, layout, rng)
                        .map_err(|e| e.at(index as NodeId))?;
                    *notifications += 1;
                }
                if !binding.holds_at(master_now, layout) {
                    binding
                        .on_master_course_change(master_now, layout, rng)
                        .map_err(|e| e.at(index as NodeId))?;
                }
                *position = binding.slave_position(master_now);
            }
            changes[master as usize] = master_changes;
        }

        self.time = until;
        for (index, motion) in self.motions.iter().enumerate() {
            record(index as NodeId, until, motion.position());
        }
        Ok(())
    }
}

impl Motion {
    fn master(&self) -> Option<NodeId> {
        match self {
            Motion::Slave { binding, .. } => Some(binding.master),
            _ => None,
        }
    }
}
