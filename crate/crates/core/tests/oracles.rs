//! Frozen values cross-checked against brute-force oracles that share no code
//! with the verifier.

use itertools::Itertools;
use num_traits::Zero;
use orn_core::analysis::{all_edge_weights, edge_weights, guaranteed_throughput};
use orn_core::model::induce_flow;
use orn_core::routing::{EbsRouting, VbsRouting};
use orn_core::schedules::vandermonde_vector;
use orn_core::*;

/// Largest edge load over one steady-state period, from an explicit windowed
/// flow.
fn max_steady_load(scheme: &dyn RoutingScheme, s: &ConnectionSchedule, demand: &DemandFunction) -> Rational {
    let p = num_integer::lcm(scheme.period(), s.period()) as Slot;
    let l = scheme.max_latency() as Slot;
    let flow = induce_flow(scheme, demand, -l..p + l).unwrap();
    flow.edge_loads(s)
        .into_iter()
        .filter(|(e, _)| (0..p).contains(&e.slot))
        .map(|(_, load)| load)
        .max()
        .unwrap_or_else(Rational::zero)
}

/// For two-stage schemes whose stage start times do not depend on the other
/// endpoint, every permutation demand loads edges identically, so the uniform
/// demand at rate 1 exposes the worst case.
fn uniform_oracle(scheme: &dyn RoutingScheme, s: &ConnectionSchedule) -> Rational {
    let d = uniform_demand(s.node_count(), ratio(1, 1), 1).unwrap();
    max_steady_load(scheme, s, &d).recip()
}

/// Worst constant permutation demand, by enumeration.
fn permutation_oracle(scheme: &dyn RoutingScheme, s: &ConnectionSchedule) -> Rational {
    let n = s.node_count();
    (0..n)
        .permutations(n)
        .map(|sigma| {
            let d = permutation_demand(&sigma, ratio(1, 1), 1).unwrap();
            max_steady_load(scheme, s, &d)
        })
        .max()
        .unwrap()
        .recip()
}

fn ebs(order: u32, base: usize) -> ConnectionSchedule {
    ebs_schedule(&EbsParams::new(order, base).unwrap()).unwrap()
}

#[test]
fn ebs_guaranteed_rates() {
    let cases = [
        ((1, 4), ratio(2, 3)),
        ((1, 5), ratio(5, 8)),
        ((1, 8), ratio(4, 7)),
        ((3, 2), ratio(1, 3)),
        ((2, 3), ratio(3, 8)),
    ];
    for ((order, base), expected) in cases {
        let s = ebs(order, base);
        let r = EbsRouting::new(&s).unwrap();
        assert_eq!(uniform_oracle(&r, &s), expected, "oracle l={order} n={base}");
        assert_eq!(guaranteed_throughput(&r, &s).unwrap().rate, expected, "verifier l={order} n={base}");
    }
}

#[test]
fn ebs_exhaustive_permutations_match_uniform() {
    for (order, base) in [(1, 4), (1, 5), (1, 6)] {
        let s = ebs(order, base);
        let r = EbsRouting::new(&s).unwrap();
        assert_eq!(permutation_oracle(&r, &s), uniform_oracle(&r, &s));
    }
}

#[test]
fn vbs_guaranteed_rate() {
    let s = vbs_schedule(&VbsParams::new(1, 5, ratio(1, 18)).unwrap()).unwrap();
    let r = VbsRouting::new(&s).unwrap();
    assert_eq!(uniform_oracle(&r, &s), ratio(25, 72));
    assert_eq!(guaranteed_throughput(&r, &s).unwrap().rate, ratio(25, 72));
}

#[test]
fn primitive_root_rates_match_permutation_search() {
    for (n, expected) in [(4, ratio(4, 9)), (5, ratio(1, 3))] {
        let s = primitive_root_schedule(&PrimitiveRootParams::smallest(n).unwrap(), None).unwrap();
        let r = scheme_for_schedule(&s).unwrap();
        assert_eq!(permutation_oracle(r.as_ref(), &s), expected, "N={n}");
        assert_eq!(guaranteed_throughput(r.as_ref(), &s).unwrap().rate, expected, "N={n}");
    }
}

#[test]
fn ebs_round_robin_weight_symmetry() {
    let s = ebs(1, 4);
    let r = EbsRouting::new(&s).unwrap();
    let all = all_edge_weights(&r, &s).unwrap();
    assert_eq!(all.len(), 12);
    let col_sums = |w: &[Vec<Rational>]| -> Vec<Rational> {
        (0..4).map(|b| w.iter().map(|row| row[b]).sum()).sorted().collect()
    };
    // translation and slot symmetry permute columns, so the multiset of
    // column sums is the same on every edge
    let reference = col_sums(&all[0].weights);
    assert_eq!(reference, vec![ratio(3, 4), ratio(3, 4), ratio(3, 4), ratio(15, 4)]);
    for m in &all {
        assert_eq!(col_sums(&m.weights), reference, "edge {}", m.edge);
    }
}

#[test]
fn vlb_weights_split_into_row_and_column_terms() {
    // w[a][b] - w[a][0] - w[0][b] + w[0][0] = 0 exactly
    let s = ebs(2, 3);
    let r = EbsRouting::new(&s).unwrap();
    for m in all_edge_weights(&r, &s).unwrap() {
        let w = &m.weights;
        for a in 0..9 {
            for b in 0..9 {
                assert!((w[a][b] - w[a][0] - w[0][b] + w[0][0]).is_zero());
            }
        }
    }
}

#[test]
fn weight_rows_count_expected_hops() {
    let s = ebs(2, 3);
    let r = EbsRouting::new(&s).unwrap();
    let all = all_edge_weights(&r, &s).unwrap();
    for a in 0..9 {
        let from_weights: Rational = all.iter().flat_map(|m| m.weights[a].iter()).sum();
        let expected_hops: Rational = (0..r.period())
            .flat_map(|t| (0..9).map(move |b| (b, t)))
            .flat_map(|(b, t)| r.base_paths(a, b, t))
            .map(|(p, w)| w * Rational::from_integer(p.hops() as i128))
            .sum();
        assert_eq!(from_weights, expected_hops);
    }
}

#[test]
fn unused_edge_has_zero_weights() {
    // node 1 never sends on a schedule where only 0 <-> 1 swap and 2, 3 idle
    let s = ConnectionSchedule::explicit(4, vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2], vec![2, 3, 0, 1]]).unwrap();
    let r = scheme_for_schedule(&s).unwrap();
    let cap = r.max_latency();
    for sender in 0..4 {
        // slots where a node is its own target carry self-loops, never taken
        let m = edge_weights(r.as_ref(), &s, EdgeRef::new(sender, if sender < 2 { 1 } else { 0 }), cap).unwrap();
        assert!(m.weights.iter().flatten().all(|w| w.is_zero()));
    }
}

#[test]
fn he_destinations_n13() {
    let s = vbs_schedule(&VbsParams::new(1, 13, ratio(1, 18)).unwrap()).unwrap();
    let r = VbsRouting::new(&s).unwrap();
    assert_eq!(r.params().q, 1);
    let c = r.params().coordinates();
    for q in [0i64, 5, 12] {
        let a = c.encode(&[3, 7]);
        let reach: Vec<NodeId> = (0..169).filter(|&b| r.he_semi_path(q, a, b).is_some()).collect();
        let v = vandermonde_vector((q as usize + 2) % 13, 1, 13);
        let expected: Vec<NodeId> = (1..13)
            .map(|k| c.add_scaled(a, &v, k))
            .sorted()
            .collect();
        assert_eq!(reach, expected, "q={q}");
    }
}
