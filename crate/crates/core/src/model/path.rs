use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ConnectionSchedule, NodeId, Slot};
use crate::error::{OrnError, Result};

/// A vertex `(node, slot)` of the virtual topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VirtualNode {
    pub node: NodeId,
    pub slot: Slot,
}

impl VirtualNode {
    pub fn new(node: NodeId, slot: Slot) -> Self {
        Self { node, slot }
    }
}

impl fmt::Display for VirtualNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.node, self.slot)
    }
}

/// The physical edge leaving `(sender, slot)`. Each virtual node has exactly
/// one outgoing physical edge, so the receiver is implied by the schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    pub sender: NodeId,
    pub slot: Slot,
}

impl EdgeRef {
    pub fn new(sender: NodeId, slot: Slot) -> Self {
        Self { sender, slot }
    }

    pub fn receiver(&self, schedule: &ConnectionSchedule) -> NodeId {
        schedule.target(self.sender, self.slot)
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.sender, self.slot)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Physical,
    Virtual,
}

impl Step {
    pub fn symbol(self) -> char {
        match self {
            Step::Physical => 'P',
            Step::Virtual => 'V',
        }
    }
}

/// A timed walk through the virtual topology, stored as a start vertex plus
/// a sequence of step kinds. The endpoint is recovered by replaying the steps
/// against a schedule.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoutePath {
    origin: VirtualNode,
    steps: Vec<Step>,
}

impl RoutePath {
    pub fn new(origin: VirtualNode, steps: Vec<Step>) -> Self {
        Self { origin, steps }
    }

    pub fn empty(origin: VirtualNode) -> Self {
        Self::new(origin, Vec::new())
    }

    pub fn origin(&self) -> VirtualNode {
        self.origin
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn latency(&self) -> usize {
        self.steps.len()
    }

    pub fn hops(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::Physical).count()
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn push_virtual(&mut self, count: usize) {
        self.steps.extend(std::iter::repeat_n(Step::Virtual, count));
    }

    /// Appends `other`'s steps. The caller is responsible for `other` starting
    /// where `self` ends.
    pub fn extend_from(&mut self, other: &RoutePath) {
        self.steps.extend_from_slice(&other.steps);
    }

    /// Same walk started `delta` slots later.
    pub fn shifted(&self, delta: Slot) -> RoutePath {
        RoutePath {
            origin: VirtualNode::new(self.origin.node, self.origin.slot + delta),
            steps: self.steps.clone(),
        }
    }

    /// Slots (absolute) at which physical edges are taken.
    pub fn hop_slots(&self) -> impl Iterator<Item = Slot> + '_ {
        let start = self.origin.slot;
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Step::Physical)
            .map(move |(i, _)| start + i as Slot)
    }

    /// Calls `visit` for every physical edge on the walk, in order.
    pub fn for_each_edge(&self, schedule: &ConnectionSchedule, mut visit: impl FnMut(EdgeRef)) {
        let mut node = self.origin.node;
        let mut slot = self.origin.slot;
        for &step in &self.steps {
            if step == Step::Physical {
                visit(EdgeRef::new(node, slot));
                node = schedule.target(node, slot);
            }
            slot += 1;
        }
    }

    pub fn edges(&self, schedule: &ConnectionSchedule) -> Vec<EdgeRef> {
        let mut out = Vec::with_capacity(self.hops());
        self.for_each_edge(schedule, |e| out.push(e));
        out
    }

    pub fn endpoint(&self, schedule: &ConnectionSchedule) -> VirtualNode {
        walk_path(schedule, self)
    }

    /// `P`/`V` rendering of the steps.
    pub fn step_string(&self) -> String {
        self.steps.iter().map(|s| s.symbol()).collect()
    }

    pub fn parse_steps(origin: VirtualNode, text: &str) -> Result<Self> {
        let steps = text
            .chars()
            .map(|c| match c {
                'P' | 'p' => Ok(Step::Physical),
                'V' | 'v' => Ok(Step::Virtual),
                other => Err(OrnError::Parse(format!("unknown step symbol {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(origin, steps))
    }
}

impl fmt::Display for RoutePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.origin, self.step_string())
    }
}

/// Replays the steps of `path` and returns the vertex where it ends.
pub fn walk_path(schedule: &ConnectionSchedule, path: &RoutePath) -> VirtualNode {
    let mut node = path.origin.node;
    let mut slot = path.origin.slot;
    for &step in &path.steps {
        if step == Step::Physical {
            node = schedule.target(node, slot);
        }
        slot += 1;
    }
    VirtualNode::new(node, slot)
}
