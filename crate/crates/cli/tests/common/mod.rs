//! Independent NS-2 movement-file parser and replayer.
#![allow(dead_code)]

use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct SetDest {
    pub time: f64,
    pub node: u32,
    pub x: f64,
    pub y: f64,
    pub speed: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Ns2File {
    pub initial: BTreeMap<u32, (f64, f64)>,
    pub moves: Vec<SetDest>,
}

fn node_of(token: &str) -> u32 {
    let inner = token
        .trim_start_matches('"')
        .strip_prefix("$node_(")
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or_else(|| panic!("bad node token {token}"));
    inner.parse().unwrap()
}

pub fn parse_ns2(text: &str) -> Ns2File {
    let mut file = Ns2File::default();
    let mut xs = BTreeMap::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[..] {
            [node, "set", axis, value] => {
                let v: f64 = value.parse().unwrap();
                let node = node_of(node);
                match axis {
                    "X_" => {
                        xs.insert(node, v);
                    }
                    "Y_" => {
                        file.initial.insert(node, (xs[&node], v));
                    }
                    _ => panic!("unexpected axis in {line}"),
                }
            }
            ["$ns_", "at", t, node, "setdest", x, y, speed] => file.moves.push(SetDest {
                time: t.parse().unwrap(),
                node: node_of(node),
                x: x.parse().unwrap(),
                y: y.parse().unwrap(),
                speed: speed.trim_end_matches('"').parse().unwrap(),
            }),
            _ => panic!("unrecognised line {line}"),
        }
    }
    file
}

/// Straight-line motion toward a destination, halting on arrival.
#[derive(Clone, Copy, Debug)]
struct Motion {
    t0: f64,
    from: (f64, f64),
    to: (f64, f64),
    speed: f64,
}

impl Motion {
    fn at(&self, t: f64) -> (f64, f64) {
        let (dx, dy) = (self.to.0 - self.from.0, self.to.1 - self.from.1);
        let dist = dx.hypot(dy);
        if dist == 0.0 || self.speed == 0.0 {
            return self.from;
        }
        let travelled = (self.speed * (t - self.t0).max(0.0)).min(dist);
        (self.from.0 + dx * travelled / dist, self.from.1 + dy * travelled / dist)
    }
}

/// Position of every node over time as an NS-2 mobility engine would move it.
pub struct Replay {
    motions: BTreeMap<u32, Vec<Motion>>,
}

impl Replay {
    pub fn new(file: &Ns2File) -> Self {
        let mut motions: BTreeMap<u32, Vec<Motion>> = file
            .initial
            .iter()
            .map(|(&n, &p)| {
                (
                    n,
                    vec![Motion {
                        t0: f64::NEG_INFINITY,
                        from: p,
                        to: p,
                        speed: 0.0,
                    }],
                )
            })
            .collect();
        let mut moves = file.moves.clone();
        moves.sort_by(|a, b| a.time.total_cmp(&b.time));
        for m in moves {
            let list = motions.get_mut(&m.node).expect("setdest for a node without initial position");
            let from = list.last().unwrap().at(m.time);
            list.push(Motion {
                t0: m.time,
                from,
                to: (m.x, m.y),
                speed: m.speed,
            });
        }
        Self { motions }
    }

    pub fn position(&self, node: u32, t: f64) -> (f64, f64) {
        let list = &self.motions[&node];
        let i = list.partition_point(|m| m.t0 <= t);
        list[i.saturating_sub(1)].at(t)
    }

    /// Start and arrival time of every setdest leg of `node`.
    pub fn leg_endpoints(&self, node: u32) -> Vec<(f64, f64)> {
        self.motions[&node]
            .iter()
            .filter(|m| m.t0.is_finite() && m.speed > 0.0)
            .map(|m| {
                let dist = (m.to.0 - m.from.0).hypot(m.to.1 - m.from.1);
                (m.t0, m.t0 + dist / m.speed)
            })
            .collect()
    }

    pub fn nodes(&self) -> impl Iterator<Item = u32> + '_ {
        self.motions.keys().copied()
    }
}
