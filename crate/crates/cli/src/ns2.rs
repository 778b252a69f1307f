//! NS-2 movement-file export.
//!
//! Each node gets `$node_(i) set X_/Y_` lines for its first sample, then one
//! `$ns_ at <t> "$node_(i) setdest <x> <y> <speed>"` per constant-velocity
//! leg. Consecutive trace segments with the same velocity are merged and
//! stationary segments emit nothing, since a node halts on reaching its
//! destination.

use std::collections::BTreeMap;
use std::io::Write;

use psc_core::trace::TraceRecord;
use thiserror::Error;

/// Velocity components closer than this (m/s) belong to the same leg.
const SAME_VELOCITY: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum Ns2Error {
    #[error("trace is not sorted by time at record {index}")]
    Unsorted { index: usize },
    #[error("node {node} has two samples at {time} s")]
    DuplicateTime { node: u32, time: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

struct Leg {
    start: f64,
    end: f64,
    from: (f64, f64),
    to: (f64, f64),
    /// Velocity of the leg's first segment; later segments must match it.
    velocity: (f64, f64),
}

impl Leg {
    fn speed(&self) -> f64 {
        (self.to.0 - self.from.0).hypot(self.to.1 - self.from.1) / (self.end - self.start)
    }
}

pub fn export_ns2_trace<W: Write>(records: &[TraceRecord], mut out: W) -> Result<(), Ns2Error> {
    for (index, pair) in records.windows(2).enumerate() {
        if pair[1].time_s < pair[0].time_s {
            return Err(Ns2Error::Unsorted { index: index + 1 });
        }
    }
    let mut per_node: BTreeMap<u32, Vec<&TraceRecord>> = BTreeMap::new();
    for r in records {
        let samples = per_node.entry(r.node_id).or_default();
        if samples.last().is_some_and(|last| last.time_s == r.time_s) {
            return Err(Ns2Error::DuplicateTime {
                node: r.node_id,
                time: r.time_s,
            });
        }
        samples.push(r);
    }

    let mut commands: Vec<(f64, u32, String)> = Vec::new();
    for (&node, samples) in &per_node {
        let first = samples[0];
        writeln!(out, "$node_({node}) set X_ {:.6}", first.x_m)?;
        writeln!(out, "$node_({node}) set Y_ {:.6}", first.y_m)?;
        for leg in legs(samples) {
            let speed = leg.speed();
            commands.push((
                leg.start,
                node,
                format!(
                    "$ns_ at {:.6} \"$node_({node}) setdest {:.6} {:.6} {:.6}\"",
                    leg.start, leg.to.0, leg.to.1, speed
                ),
            ));
        }
    }
    commands.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    for (_, _, line) in commands {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn legs(samples: &[&TraceRecord]) -> Vec<Leg> {
    let mut legs: Vec<Leg> = Vec::new();
    let mut open: Option<Leg> = None;
    for pair in samples.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let dt = b.time_s - a.time_s;
        let v = ((b.x_m - a.x_m) / dt, (b.y_m - a.y_m) / dt);
        let moving = v.0 != 0.0 || v.1 != 0.0;
        match open.as_mut() {
            Some(leg)
                if moving
                    && (leg.velocity.0 - v.0).abs() <= SAME_VELOCITY
                    && (leg.velocity.1 - v.1).abs() <= SAME_VELOCITY =>
            {
                leg.to = (b.x_m, b.y_m);
                leg.end = b.time_s;
            }
            _ => {
                legs.extend(open.take());
                if moving {
                    open = Some(Leg {
                        start: a.time_s,
                        end: b.time_s,
                        from: (a.x_m, a.y_m),
                        to: (b.x_m, b.y_m),
                        velocity: v,
                    });
                }
            }
        }
    }
    legs.extend(open);
    legs
}

pub fn write_ns2_file(records: &[TraceRecord], path: &std::path::Path) -> Result<(), Ns2Error> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    export_ns2_trace(records, &mut out)?;
    out.flush()?;
    Ok(())
}
