//! Scratch probe: evaluate generator mean designs against the NDS
//! acceptance clauses across seeds.

use mvmanifold::dataset::generate_with_deltas;
use mvmanifold::*;

struct Tuned {
    acc: f64,
    nmi: f64,
}

fn tuned(ds: &MultiViewDataset, method: MethodId, grid: &[f64], k: usize, seed: u64) -> Tuned {
    let spec = SweepSpec {
        method,
        grid: grid.to_vec(),
        repeats: if method.is_stochastic() { 2 } else { 1 },
        kmeans_k: k,
        kmeans_restarts: 10,
        seed,
        select_metric: SelectMetric::Nmi,
        base: MethodConfig::default(),
    };
    match run_sweep(ds, &spec) {
        Ok(report) => match report.optimum {
            Some((p, nmi)) => Tuned {
                acc: report.mean_metric(p, SelectMetric::Acc).unwrap_or(f64::NAN),
                nmi,
            },
            None => Tuned {
                acc: f64::NAN,
                nmi: f64::NAN,
            },
        },
        Err(_) => Tuned {
            acc: f64::NAN,
            nmi: f64::NAN,
        },
    }
}

fn main() {
    let designs: Vec<(&str, Vec<f64>)> = vec![
        ("flat3", vec![3.0, 3.0, 3.0, 0.0]),
        ("flat2", vec![2.0, 2.0, 2.0, 0.0]),
        ("flat1.5", vec![1.5, 1.5, 1.5, 0.0]),
        ("ramp", vec![1.5, 2.5, 4.0, 0.0]),
    ];
    let sne_grid = [20.0, 50.0, 80.0, 100.0, 200.0];
    let lle_grid = [2.0, 5.0, 10.0, 20.0, 50.0];
    let iso_grid = [5.0, 20.0, 50.0, 100.0, 200.0];

    for (name, deltas) in &designs {
        println!("=== design {name} {deltas:?}");
        for seed in [1u64, 2, 7] {
            let sc = SyntheticScenario::new(ScenarioKind::Nds, seed);
            let ds = generate_with_deltas(&sc, deltas).unwrap();
            let k = 3;

            let msne_t = tuned(&ds, MethodId::Msne, &sne_grid, k, 11);
            let multisne_t = tuned(&ds, MethodId::MultiSne, &sne_grid, k, 11);
            let conc_sne = tuned(&ds, MethodId::TsneConcat, &sne_grid, k, 11);
            let mlle_t = tuned(&ds, MethodId::Mlle, &lle_grid, k, 11);
            let multille_t = tuned(&ds, MethodId::MultiLle, &lle_grid, k, 11);
            let conc_lle = tuned(&ds, MethodId::LleConcat, &lle_grid, k, 11);
            let miso_t = tuned(&ds, MethodId::Misomap, &iso_grid, k, 11);
            let multiiso_t = tuned(&ds, MethodId::MultiIsomap, &iso_grid, k, 11);
            let conc_iso = tuned(&ds, MethodId::IsomapConcat, &iso_grid, k, 11);

            // auto-weight check
            let cfg = MethodConfig {
                parameter: 80.0,
                seed: 5,
                weights: WeightSpec::Auto,
                ..MethodConfig::default()
            };
            let run = run_method(&ds, MethodId::MultiSne, &cfg).unwrap();
            let w = run.weight_trajectory.as_ref().unwrap().last().unwrap().clone();
            let noise_min = w[3] < w[0] && w[3] < w[1] && w[3] < w[2];
            let spread = {
                let mut o = [w[0], w[1], w[2]];
                o.sort_by(f64::total_cmp);
                o[2] - o[0]
            };

            // ablation: 3 informative views vs all 4, NMI at Perp=80
            let sub = ds.select_views(&[0, 1, 2]).unwrap();
            let cfg80 = |s| MethodConfig {
                parameter: 80.0,
                seed: s,
                ..MethodConfig::default()
            };
            let mean_nmi = |d: &MultiViewDataset| {
                let mut total = 0.0;
                for s in 0..3u64 {
                    let (sc, _) = run_and_score(d, MethodId::MultiSne, &cfg80(s), k, 10, s).unwrap();
                    total += sc.nmi;
                }
                total / 3.0
            };
            let nmi3 = mean_nmi(&sub);
            let nmi4 = mean_nmi(&ds);

            let ok = |b: bool| if b { "Y" } else { "N" };
            println!(
                "seed {seed}: msne a{:.2} multisne a{:.2}/n{:.2} | chainACC {} (sne {:.2} > lle {:.2} > iso {:.2}) | lle: multi n{:.2} >= m){:.2}{} c){:.2}{} | iso: multi n{:.2} >= m){:.2}{} c){:.2}{} | snefam {} | w4min {} spread {:.3} | abl {:.3}>{:.3} {}",
                msne_t.acc, multisne_t.acc, multisne_t.nmi,
                ok(multisne_t.acc > multille_t.acc && multille_t.acc > multiiso_t.acc),
                multisne_t.acc, multille_t.acc, multiiso_t.acc,
                multille_t.nmi, mlle_t.nmi, ok(multille_t.nmi >= mlle_t.nmi),
                conc_lle.nmi, ok(multille_t.nmi >= conc_lle.nmi),
                multiiso_t.nmi, miso_t.nmi, ok(multiiso_t.nmi >= miso_t.nmi),
                conc_iso.nmi, ok(multiiso_t.nmi >= conc_iso.nmi),
                ok(multisne_t.nmi >= msne_t.nmi && multisne_t.nmi >= conc_sne.nmi),
                ok(noise_min), spread,
                nmi3, nmi4, ok(nmi3 > nmi4),
            );
        }
    }
}
