//! Scratch probe for the synthetic-scenario pipelines.

use std::time::Instant;

use mvmanifold::*;

fn main() {
    let scenario = SyntheticScenario::new(ScenarioKind::Nds, 42);
    let ds = generate_synthetic(&scenario).unwrap();
    println!(
        "NDS: N={}, M={}, p={}",
        ds.n_samples(),
        ds.n_views(),
        ds.view(0).ncols()
    );

    // PCA footprint
    let t0 = Instant::now();
    let pre = apply_pretrain(&ds, &PretrainConfig::default()).unwrap();
    println!(
        "PCA ({:.2?}): dims {:?}",
        t0.elapsed(),
        pre.views().iter().map(|v| v.ncols()).collect::<Vec<_>>()
    );

    for (name, method, param) in [
        ("multisne p80", MethodId::MultiSne, 80.0),
        ("msne p50", MethodId::Msne, 50.0),
        ("tsne-concat p80", MethodId::TsneConcat, 80.0),
    ] {
        let t = Instant::now();
        let cfg = MethodConfig {
            parameter: param,
            seed: 1,
            ..MethodConfig::default()
        };
        let (scores, _) = run_and_score(&ds, method, &cfg, 3, 10, 7).unwrap();
        println!(
            "{name}: acc={:.3} nmi={:.3} ri={:.3} ari={:.3} ({:.2?})",
            scores.acc,
            scores.nmi,
            scores.ri,
            scores.ari,
            t.elapsed()
        );
    }

    for (name, method, param) in [
        ("multille nn20", MethodId::MultiLle, 20.0),
        ("mlle nn20", MethodId::Mlle, 20.0),
        ("lle-concat nn5", MethodId::LleConcat, 5.0),
        ("multiisomap nn299", MethodId::MultiIsomap, 299.0),
        ("misomap nn5", MethodId::Misomap, 5.0),
        ("isomap-concat nn100", MethodId::IsomapConcat, 100.0),
    ] {
        let t = Instant::now();
        let cfg = MethodConfig {
            parameter: param,
            seed: 1,
            ..MethodConfig::default()
        };
        match run_and_score(&ds, method, &cfg, 3, 10, 7) {
            Ok((scores, run)) => println!(
                "{name}: acc={:.3} nmi={:.3} ri={:.3} ari={:.3} dropped={} ({:.2?})",
                scores.acc,
                scores.nmi,
                scores.ri,
                scores.ari,
                run.embedding.dropped.len(),
                t.elapsed()
            ),
            Err(e) => println!("{name}: ERROR {e}"),
        }
    }

    // auto weights: view 4 should sink to the bottom
    let t = Instant::now();
    let cfg = MethodConfig {
        parameter: 80.0,
        seed: 1,
        weights: WeightSpec::Auto,
        ..MethodConfig::default()
    };
    let run = run_method(&ds, MethodId::MultiSne, &cfg).unwrap();
    let weights = run.weight_trajectory.as_ref().unwrap().last().unwrap();
    println!("auto weights after {:?}: {weights:?}", t.elapsed());
}
