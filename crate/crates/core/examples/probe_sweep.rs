//! Scratch probe: full tuning-protocol sweeps for all nine methods.

use mvmanifold::*;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "nds".into());
    let kind = match which.as_str() {
        "mmds" => ScenarioKind::Mmds,
        "mcs" => ScenarioKind::Mcs,
        _ => ScenarioKind::Nds,
    };
    let scenario = SyntheticScenario::new(kind, 42);
    let ds = generate_synthetic(&scenario).unwrap();
    let k = scenario.n_clusters;
    let n = ds.n_samples();
    let grid: Vec<f64> = default_grid().into_iter().filter(|&g| g < n as f64).collect();

    let methods = [
        MethodId::TsneConcat,
        MethodId::Msne,
        MethodId::MultiSne,
        MethodId::LleConcat,
        MethodId::Mlle,
        MethodId::MultiLle,
        MethodId::IsomapConcat,
        MethodId::Misomap,
        MethodId::MultiIsomap,
    ];
    for method in methods {
        let t = std::time::Instant::now();
        let spec = SweepSpec {
            method,
            grid: grid.clone(),
            repeats: if method.is_stochastic() { 3 } else { 2 },
            kmeans_k: k,
            kmeans_restarts: 10,
            seed: 7,
            select_metric: SelectMetric::Nmi,
            base: MethodConfig::default(),
        };
        match run_sweep(&ds, &spec) {
            Ok(report) => {
                print!("{:>14}:", method.name());
                for &p in &grid {
                    match (
                        report.mean_metric(p, SelectMetric::Acc),
                        report.mean_metric(p, SelectMetric::Nmi),
                    ) {
                        (Some(acc), Some(nmi)) => print!(" {p:>3}:a{acc:.2}/n{nmi:.2}"),
                        _ => print!(" {p:>3}:fail"),
                    }
                }
                println!(
                    "  opt={:?} ({:.1?})",
                    report.optimum.map(|(p, m)| (p, (m * 1000.0).round() / 1000.0)),
                    t.elapsed()
                );
            }
            Err(e) => println!("{:>14}: sweep error {e}", method.name()),
        }
    }

    // standardized multi-ISOMAP for comparison
    for nn in [20usize, 100, 200] {
        let emb = run_multiisomap_standardized(
            &ds,
            nn,
            &ViewWeights::uniform(ds.n_views()),
            2,
            EmbedStyle::DoubleCentered,
        )
        .unwrap();
        let clustering = kmeans(&emb.coords, k, 10, 3).unwrap();
        let truth = emb.align_labels(ds.labels().unwrap());
        let s = evaluate_clustering(&emb.coords, &clustering.labels, &truth).unwrap();
        println!("multiisomap-std nn{nn}: acc={:.3} nmi={:.3}", s.acc, s.nmi);
    }
}
