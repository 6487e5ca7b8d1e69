//! Scratch probe: per-view scale structure of the synthetic scenarios.

use mvmanifold::*;
use nalgebra::DMatrix;

fn view_stats(v: &DMatrix<f64>, labels: &[i64], k: usize) -> (f64, f64, f64) {
    // (between-centroid distance, mean within-cluster spread, mean |x|)
    let p = v.ncols();
    let mut centroids = vec![vec![0.0; p]; k];
    let mut counts = vec![0usize; k];
    for (i, &l) in labels.iter().enumerate() {
        counts[l as usize] += 1;
        for j in 0..p {
            centroids[l as usize][j] += v[(i, j)];
        }
    }
    for (c, count) in centroids.iter_mut().zip(&counts) {
        for x in c.iter_mut() {
            *x /= *count as f64;
        }
    }
    let mut between: f64 = 0.0;
    for a in 0..k {
        for b in (a + 1)..k {
            let d: f64 = (0..p)
                .map(|j| (centroids[a][j] - centroids[b][j]).powi(2))
                .sum::<f64>()
                .sqrt();
            between = between.max(d);
        }
    }
    let mut within = 0.0;
    for (i, &l) in labels.iter().enumerate() {
        within += (0..p)
            .map(|j| (v[(i, j)] - centroids[l as usize][j]).powi(2))
            .sum::<f64>()
            .sqrt();
    }
    within /= labels.len() as f64;
    let scale = v.iter().map(|x| x.abs()).sum::<f64>() / (v.nrows() * p) as f64;
    (between, within, scale)
}

fn main() {
    for seed in [1u64, 2, 3, 42, 7, 11] {
        let sc = SyntheticScenario::new(ScenarioKind::Nds, seed);
        let ds = generate_synthetic(&sc).unwrap();
        let labels = ds.labels().unwrap();
        println!("--- NDS seed {seed}");
        for (m, v) in ds.views().iter().enumerate() {
            let (between, within, scale) = view_stats(v, labels, 3);
            println!(
                "  view {m}: between={between:9.1} within={within:9.1} ratio={:5.2} scale={scale:8.1}",
                between / within
            );
        }
        // concat kNN label purity at nn=5
        let concat = ds.concat_views();
        let gamma = knn(&concat, 5).unwrap();
        let mut pure = 0usize;
        let mut total = 0usize;
        for (i, g) in gamma.iter().enumerate() {
            for &j in g {
                total += 1;
                if labels[j] == labels[i] {
                    pure += 1;
                }
            }
        }
        println!("  concat knn5 purity: {:.3}", pure as f64 / total as f64);
        for (name, method, param) in [
            ("lle-concat nn5", MethodId::LleConcat, 5.0),
            ("multille nn10", MethodId::MultiLle, 10.0),
        ] {
            let cfg = MethodConfig {
                parameter: param,
                seed: 1,
                ..MethodConfig::default()
            };
            match run_and_score(&ds, method, &cfg, 3, 10, 7) {
                Ok((s, _)) => println!("  {name}: acc={:.3} nmi={:.3}", s.acc, s.nmi),
                Err(e) => println!("  {name}: ERROR {e}"),
            }
        }
    }
}
