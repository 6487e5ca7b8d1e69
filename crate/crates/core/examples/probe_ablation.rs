//! Scratch probe: 3-view vs 4-view multi-SNE NMI gap across seeds and
//! perplexities (paired run seeds).

use mvmanifold::*;

fn main() {
    for ds_seed in [1u64, 2, 7, 11, 42] {
        let sc = SyntheticScenario::new(ScenarioKind::Nds, ds_seed);
        let ds = generate_synthetic(&sc).unwrap();
        let sub = ds.select_views(&[0, 1, 2]).unwrap();
        print!("seed {ds_seed:>2}:");
        for perp in [10.0, 20.0, 50.0, 80.0] {
            let mean_nmi = |d: &MultiViewDataset| {
                let mut total = 0.0;
                for s in 0..5u64 {
                    let cfg = MethodConfig {
                        parameter: perp,
                        seed: 300 + s,
                        ..MethodConfig::default()
                    };
                    let (sc, _) = run_and_score(d, MethodId::MultiSne, &cfg, 3, 10, s).unwrap();
                    total += sc.nmi;
                }
                total / 5.0
            };
            let n3 = mean_nmi(&sub);
            let n4 = mean_nmi(&ds);
            print!("  p{perp}: {:+.3} ({n3:.3}/{n4:.3})", n3 - n4);
        }
        println!();
    }
}
