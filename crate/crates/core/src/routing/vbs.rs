use itertools::Itertools;

use super::{SemiPath, SemiPathKind};
use crate::error::{OrnError, Result};
use crate::field::solve_mod;
use crate::model::{
    ConnectionSchedule, NodeId, PathDistribution, RoutePath, RoutingScheme, ScheduleFamily, Slot,
    Step, VirtualNode,
};
use crate::rational::Rational;
use crate::schedules::{vandermonde_vector, Coordinates, PhaseStructure, VbsParams};

/// Cached semi-path shape for one `(start phase, b - a)` pair.
#[derive(Debug, Clone)]
struct SemiPathShape {
    kind: SemiPathKind,
    steps: Vec<Step>,
}

/// VBS routing: semi-paths start on phase boundaries and are hop-efficient
/// whenever possible, single-basis otherwise.
///
/// A semi-path occupies `h + 1 + Q` logical phases. With a phase repeat of
/// `r`, logical phase `k` of a semi-path starting at absolute phase `P0` is
/// absolute phase `P0 + r*k`; the `r - 1` phases in between are waited out.
#[derive(Debug, Clone)]
pub struct VbsRouting {
    params: VbsParams,
    coords: Coordinates,
    phases: PhaseStructure,
    period: usize,
    /// Indexed by `[start phase mod phases per period][b - a]`.
    shapes: Vec<Vec<SemiPathShape>>,
}

impl VbsRouting {
    pub fn new(schedule: &ConnectionSchedule) -> Result<Self> {
        let ScheduleFamily::Vbs {
            params,
            phase_repeat,
        } = schedule.family()
        else {
            return Err(OrnError::InvalidParameter(format!(
                "VBS routing needs a VBS schedule, got {}",
                schedule.family().name()
            )));
        };
        let coords = params.coordinates();
        let phases = params.phase_structure(*phase_repeat);
        let mut router = Self {
            params: params.clone(),
            coords,
            phases,
            period: schedule.period(),
            shapes: Vec::new(),
        };
        router.shapes = (0..phases.phases_per_period() as i64)
            .map(|p| {
                (0..coords.node_count())
                    .map(|d| {
                        let dv = coords.decode(d);
                        match router.he_steps(p, &dv) {
                            Some(steps) => SemiPathShape {
                                kind: SemiPathKind::HopEfficient,
                                steps,
                            },
                            None => SemiPathShape {
                                kind: SemiPathKind::SingleBasis,
                                steps: router.sb_steps(p, &dv),
                            },
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(router)
    }

    pub fn params(&self) -> &VbsParams {
        &self.params
    }

    pub fn phase_structure(&self) -> PhaseStructure {
        self.phases
    }

    /// Slots spanned by one semi-path.
    pub fn semi_path_len(&self) -> usize {
        self.phases.repeat * self.params.semi_path_phases() * self.phases.phase_len
    }

    /// Absolute phase of logical phase `k` of a semi-path starting at `start`.
    pub fn logical_phase(&self, start: i64, k: usize) -> i64 {
        start + (self.phases.repeat * k) as i64
    }

    fn vector_at(&self, start: i64, k: usize) -> Vec<usize> {
        let p = self.phases.vector_index(self.logical_phase(start, k));
        vandermonde_vector(p, self.params.h as usize, self.params.base)
    }

    /// Expands per-logical-phase scales (0 = no hop) into slot steps.
    fn expand(&self, scales: &[usize]) -> Vec<Step> {
        let len = self.phases.phase_len;
        let mut steps = Vec::with_capacity(self.semi_path_len());
        for &scale in scales {
            for offset in 0..len {
                steps.push(if scale != 0 && offset + 1 == scale {
                    Step::Physical
                } else {
                    Step::Virtual
                });
            }
            steps.extend(std::iter::repeat_n(Step::Virtual, len * (self.phases.repeat - 1)));
        }
        steps
    }

    /// Solves `Y s = d` with `Y = (v(q), ..., v(q+h))` and hops at scale `s_j`
    /// in logical phase `j`, then waits out `Q` phases.
    fn sb_steps(&self, start: i64, d: &[usize]) -> Vec<Step> {
        let h = self.params.h as usize;
        let n = self.params.base as u64;
        let cols: Vec<Vec<usize>> = (0..=h).map(|j| self.vector_at(start, j)).collect();
        let matrix = column_matrix(&cols);
        let rhs: Vec<u64> = d.iter().map(|&x| x as u64).collect();
        let s = solve_mod(&matrix, &rhs, n).expect("h + 1 distinct Vandermonde vectors form a basis");
        let mut scales: Vec<usize> = s.iter().map(|&x| x as usize).collect();
        scales.resize(self.params.semi_path_phases(), 0);
        self.expand(&scales)
    }

    /// Canonical hop-efficient path: `h + 1` buffer phases, then `h` of the
    /// next `Q` phases (lexicographically first workable set). `None` when
    /// `d` is zero or outside every candidate span.
    fn he_steps(&self, start: i64, d: &[usize]) -> Option<Vec<Step>> {
        if d.iter().all(|&x| x == 0) {
            return None;
        }
        let h = self.params.h as usize;
        let q = self.params.q;
        let n = self.params.base as u64;
        let rhs: Vec<u64> = d.iter().map(|&x| x as u64).collect();
        for subset in (0..q).combinations(h) {
            let cols: Vec<Vec<usize>> = subset
                .iter()
                .map(|&i| self.vector_at(start, h + 1 + i))
                .collect();
            if let Some(s) = solve_mod(&column_matrix(&cols), &rhs, n) {
                let mut scales = vec![0; self.params.semi_path_phases()];
                for (&i, &coef) in subset.iter().zip(&s) {
                    scales[h + 1 + i] = coef as usize;
                }
                return Some(self.expand(&scales));
            }
        }
        None
    }

    fn shape(&self, start_phase: i64, a: NodeId, b: NodeId) -> &SemiPathShape {
        let d = self.coords.encode(&self.coords.difference(a, b));
        let res = start_phase.rem_euclid(self.phases.phases_per_period() as i64) as usize;
        &self.shapes[res][d]
    }

    fn origin(&self, start_phase: i64, a: NodeId) -> VirtualNode {
        VirtualNode::new(a, start_phase * self.phases.phase_len as Slot)
    }

    /// Single-basis semi-path starting at the first slot of `start_phase`.
    pub fn sb_semi_path(&self, start_phase: i64, a: NodeId, b: NodeId) -> SemiPath {
        let d = self.coords.difference(a, b);
        SemiPath {
            path: RoutePath::new(self.origin(start_phase, a), self.sb_steps(start_phase, &d)),
            kind: SemiPathKind::SingleBasis,
        }
    }

    /// Hop-efficient semi-path, if one exists.
    pub fn he_semi_path(&self, start_phase: i64, a: NodeId, b: NodeId) -> Option<SemiPath> {
        let d = self.coords.difference(a, b);
        self.he_steps(start_phase, &d).map(|steps| SemiPath {
            path: RoutePath::new(self.origin(start_phase, a), steps),
            kind: SemiPathKind::HopEfficient,
        })
    }

    /// The semi-path the scheme uses: hop-efficient when available.
    pub fn semi_path(&self, start_phase: i64, a: NodeId, b: NodeId) -> SemiPath {
        let shape = self.shape(start_phase, a, b);
        SemiPath {
            path: RoutePath::new(self.origin(start_phase, a), shape.steps.clone()),
            kind: shape.kind,
        }
    }

    /// Virtual edges up to the next phase boundary, then a semi-path to each
    /// intermediate `c` and a second semi-path from `c`, each weighted `1/N`.
    pub fn full_paths(&self, a: NodeId, b: NodeId, t: Slot) -> PathDistribution {
        let n = self.coords.node_count();
        let weight = Rational::new(1, n as i128);
        let boundary = self.phases.next_boundary(t);
        let lead = (boundary - t) as usize;
        let first_phase = self.phases.phase_of(boundary);
        let second_phase =
            first_phase + (self.phases.repeat * self.params.semi_path_phases()) as i64;
        (0..n)
            .map(|c| {
                let mut path = RoutePath::empty(VirtualNode::new(a, t));
                path.push_virtual(lead);
                path.extend_from(&self.semi_path(first_phase, a, c).path);
                path.extend_from(&self.semi_path(second_phase, c, b).path);
                (path, weight)
            })
            .collect()
    }
}

/// Matrix whose columns are `cols`, as `u64` rows.
fn column_matrix(cols: &[Vec<usize>]) -> Vec<Vec<u64>> {
    let rows = cols.first().map_or(0, Vec::len);
    (0..rows)
        .map(|r| cols.iter().map(|c| c[r] as u64).collect())
        .collect()
}

impl RoutingScheme for VbsRouting {
    fn node_count(&self) -> usize {
        self.coords.node_count()
    }

    fn period(&self) -> usize {
        self.period
    }

    fn max_latency(&self) -> usize {
        self.phases.phase_len - 1 + 2 * self.semi_path_len()
    }

    fn base_paths(&self, a: NodeId, b: NodeId, t: usize) -> PathDistribution {
        self.full_paths(a, b, t as Slot)
    }

    fn paths(&self, a: NodeId, b: NodeId, t: Slot) -> PathDistribution {
        self.full_paths(a, b, t)
    }
}
