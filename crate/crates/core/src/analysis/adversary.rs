use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::congestion::congestion_report;
use super::demand::permutation_demand;
use crate::error::Result;
use crate::model::{ConnectionSchedule, NodeId, RoutingScheme};
use crate::rational::Rational;

/// Parameters of the permutation-demand search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdversarySearch {
    /// Networks up to this size are searched exhaustively.
    pub exhaustive_up_to: usize,
    /// Hill-climbing restarts for larger networks.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for AdversarySearch {
    fn default() -> Self {
        Self {
            exhaustive_up_to: 6,
            restarts: 4,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdversaryResult {
    pub permutation: Vec<NodeId>,
    pub max_load: Rational,
    /// `false` when the result comes from the hill-climbing heuristic.
    pub exhaustive: bool,
}

/// Searches permutation demands at `rate` for the one with the largest
/// steady-state edge load.
pub fn worst_permutation_demand<S: RoutingScheme + ?Sized>(
    scheme: &S,
    schedule: &ConnectionSchedule,
    rate: Rational,
    search: AdversarySearch,
) -> Result<AdversaryResult> {
    let n = schedule.node_count();
    let load = |sigma: &[NodeId]| -> Result<Rational> {
        let demand = permutation_demand(sigma, rate, 1)?;
        Ok(congestion_report(scheme, &demand, schedule)?.max_load)
    };
    let mut best: Option<(Vec<NodeId>, Rational)> = None;
    let mut consider = |sigma: Vec<NodeId>, value: Rational| {
        if best.as_ref().is_none_or(|(_, v)| value > *v) {
            best = Some((sigma, value));
        }
    };
    if n <= search.exhaustive_up_to {
        for sigma in (0..n).permutations(n) {
            let value = load(&sigma)?;
            consider(sigma, value);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
        for _ in 0..search.restarts.max(1) {
            let mut sigma: Vec<NodeId> = (0..n).collect();
            sigma.shuffle(&mut rng);
            let mut value = load(&sigma)?;
            // steepest ascent over transpositions
            loop {
                let mut step = None;
                for (i, j) in (0..n).tuple_combinations() {
                    sigma.swap(i, j);
                    let v = load(&sigma)?;
                    sigma.swap(i, j);
                    if v > value && step.as_ref().is_none_or(|(_, _, bv)| v > *bv) {
                        step = Some((i, j, v));
                    }
                }
                match step {
                    Some((i, j, v)) => {
                        sigma.swap(i, j);
                        value = v;
                    }
                    None => break,
                }
            }
            consider(sigma, value);
        }
    }
    let (permutation, max_load) = best.expect("at least one permutation is evaluated");
    Ok(AdversaryResult {
        permutation,
        max_load,
        exhaustive: n <= search.exhaustive_up_to,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::routing::EbsRouting;
    use crate::schedules::{ebs_schedule, EbsParams};

    #[test]
    fn exhaustive_and_heuristic_agree_on_small_network() {
        let s = ebs_schedule(&EbsParams::new(1, 5).unwrap()).unwrap();
        let r = EbsRouting::new(&s).unwrap();
        let exact = worst_permutation_demand(&r, &s, ratio(1, 2), AdversarySearch::default()).unwrap();
        assert!(exact.exhaustive);
        let search = AdversarySearch {
            exhaustive_up_to: 0,
            restarts: 2,
            seed: 7,
        };
        let heur = worst_permutation_demand(&r, &s, ratio(1, 2), search).unwrap();
        assert!(!heur.exhaustive);
        assert!(heur.max_load <= exact.max_load);
    }
}
