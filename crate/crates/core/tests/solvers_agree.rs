use fcc_core::decomp::{to_nice, tree_decomposition, TreeDecompositionMode};
use fcc_core::oracle::{brute_force_optimum, OracleConfig};
use fcc_core::solver::td::{solve_td, TdConfig};
use fcc_core::solver::tw::{solve_tw_fpt2, solve_tw_xp};
use fcc_core::solver::vc::solve_vc;
use fcc_core::{clustering_cost, is_fair, ColoredInstance, Graph};
use proptest::prelude::*;

fn instance(n: usize, edge_bits: u64, color_bits: u32, kappa: usize) -> ColoredInstance {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if edge_bits >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    // relabel by first appearance so that every color in 0..kappa' is used
    let mut seen = Vec::new();
    let colors: Vec<usize> = (0..n)
        .map(|v| {
            let raw = (color_bits >> (2 * v)) as usize % kappa;
            match seen.iter().position(|&c| c == raw) {
                Some(i) => i,
                None => {
                    seen.push(raw);
                    seen.len() - 1
                }
            }
        })
        .collect();
    ColoredInstance::new(Graph::new(n, edges).unwrap(), colors, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn every_solver_matches_the_oracle(
        n in 1usize..=8,
        edge_bits in any::<u64>(),
        color_bits in any::<u32>(),
        kappa in 1usize..=3,
    ) {
        let inst = instance(n, edge_bits, color_bits, kappa);
        let opt = brute_force_optimum(&inst, &OracleConfig::default()).unwrap().cost;
        let fairlet = inst.fairlet();

        let vc = solve_vc(&inst);
        prop_assert_eq!(vc.cost, opt);
        prop_assert_eq!(clustering_cost(&inst, &vc.clustering).unwrap(), opt);
        prop_assert!(is_fair(&vc.clustering, &fairlet, inst.colors()));

        let td = tree_decomposition(inst.graph(), TreeDecompositionMode::exact()).unwrap();
        let nice = to_nice(&td, inst.graph()).unwrap();
        let xp = solve_tw_xp(&inst, &nice).unwrap();
        prop_assert_eq!(xp.cost, opt);
        prop_assert_eq!(clustering_cost(&inst, &xp.clustering).unwrap(), opt);
        prop_assert!(is_fair(&xp.clustering, &fairlet, inst.colors()));

        let td = solve_td(&inst, &TdConfig::default()).unwrap();
        prop_assert_eq!(td.cost, opt);
        prop_assert!(is_fair(&td.clustering, &fairlet, inst.colors()));

        if fairlet.size() <= 2 {
            let small = solve_tw_fpt2(&inst, &nice).unwrap();
            prop_assert_eq!(small.cost, opt);
            prop_assert_eq!(clustering_cost(&inst, &small.clustering).unwrap(), opt);
        }
    }
}
