use std::time::Instant;

use reseed::cluster::{self, RunParams, StoppingRule};
use reseed::{generate_sbm, GrowConfig, SbmParams, SeedSchedule, Termination};

fn ceiling(mixing: f64, variant: reseed::GrowVariant, block: usize, termination: Termination) {
    // Plant the full true clusters and iterate: the fixed point's purity is
    // the best a saturated schedule can reach.
    let params = SbmParams {
        n_per_block: block,
        n_blocks: 10,
        avg_degree: 16.0,
        mixing,
    };
    for seed in 0..3u64 {
        let (g, gt) = generate_sbm(&params, seed).unwrap();
        let mut p = reseed::Partition::new(gt.labels().to_vec(), 10).unwrap();
        let cfg = GrowConfig {
            variant,
            termination,
            ..Default::default()
        };
        for it in 0..30 {
            let planted = reseed::plant(&p, block, seed, it).unwrap();
            let grown = reseed::grow(&planted.indicator, &g, &cfg).unwrap();
            p = reseed::harvest(&grown.indicator).unwrap();
        }
        println!(
            "ceiling mixing={mixing} variant={variant:?} termination={termination:?} seed={seed}: purity={:.4}",
            reseed::purity(&p, &gt).unwrap()
        );
    }
}

fn diag(mixing: f64, block: usize, variant: reseed::GrowVariant, termination: Termination, iters: usize) {
    let params = SbmParams {
        n_per_block: block,
        n_blocks: 10,
        avg_degree: 16.0,
        mixing,
    };
    let (g, gt) = generate_sbm(&params, 0).unwrap();
    let run_params = RunParams {
        n_clusters: 10,
        schedule: SeedSchedule::from_speed(5.0, g.n_vertices(), 10).unwrap(),
        grow: GrowConfig {
            variant,
            termination,
            ..Default::default()
        },
        stop: StoppingRule {
            max_iterations: iters,
            stable_iterations: Some(10),
        },
        seed: 0,
    };
    let out = cluster::run(&g, &run_params, Some(&gt)).unwrap();
    let cc = reseed::ConfusionCounts::new(&out.partition, &gt).unwrap();
    println!(
        "diag mixing={mixing} purity={:.4} cluster_sizes={:?}",
        cc.purity(),
        cc.cluster_sizes()
    );
    for (r, row) in cc.counts().iter().enumerate() {
        println!("  cluster {r}: {row:?}");
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.get(1).map(|s| s.as_str()) == Some("diag") {
        let mixing: f64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(0.45);
        let block: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(500);
        let iters: usize = args.get(4).map(|s| s.parse().unwrap()).unwrap_or(2500);
        diag(mixing, block, reseed::GrowVariant::Walk, Termination::FullCoverage, iters);
        return;
    }
    if args.get(1).map(|s| s.as_str()) == Some("ceiling") {
        let mixing: f64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(0.45);
        let block: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(500);
        for termination in [Termination::FullCoverage, Termination::RowCoverage] {
            ceiling(mixing, reseed::GrowVariant::Walk, block, termination);
            ceiling(mixing, reseed::GrowVariant::LazyWalk, block, termination);
            ceiling(mixing, reseed::GrowVariant::Ppr { alpha: 0.85 }, block, termination);
        }
        return;
    }
    let mixing: f64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(0.45);
    let speed: f64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(5.0);
    let max_iters: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(1500);
    let runs: u64 = args.get(4).map(|s| s.parse().unwrap()).unwrap_or(3);
    let block: usize = args.get(5).map(|s| s.parse().unwrap()).unwrap_or(500);
    let termination = match args.get(6).map(|s| s.as_str()) {
        Some("row") => Termination::RowCoverage,
        _ => Termination::FullCoverage,
    };
    let variant = match args.get(7).map(|s| s.as_str()) {
        Some("walk") => reseed::GrowVariant::Walk,
        Some("ppr") => reseed::GrowVariant::Ppr { alpha: 0.85 },
        Some("diffusion") => reseed::GrowVariant::Diffusion,
        _ => reseed::GrowVariant::LazyWalk,
    };

    let params = SbmParams {
        n_per_block: block,
        n_blocks: 10,
        avg_degree: 16.0,
        mixing,
    };
    for seed in 0..runs {
        let t0 = Instant::now();
        let (g, gt) = generate_sbm(&params, seed).unwrap();
        let gen_time = t0.elapsed().as_secs_f64();
        let run_params = RunParams {
            n_clusters: 10,
            schedule: SeedSchedule::from_speed(speed, g.n_vertices(), 10).unwrap(),
            grow: GrowConfig {
                variant,
                termination,
                ..GrowConfig::default()
            },
            stop: StoppingRule {
                max_iterations: max_iters,
                stable_iterations: Some(10),
            },
            seed,
        };
        let t1 = Instant::now();
        let out = cluster::run(&g, &run_params, Some(&gt)).unwrap();
        let run_time = t1.elapsed().as_secs_f64();
        let checkpoints: Vec<String> = [50, 100, 200, 400, 800, 1200]
            .iter()
            .filter(|&&i| i < out.trace.len())
            .map(|&i| {
                let r = &out.trace.records()[i];
                format!("p[{i}]={:.4}(m={})", r.purity.unwrap(), r.seeds)
            })
            .collect();
        println!(
            "mixing={mixing} speed={speed} seed={seed}: purity={:.4} iters={} grow_steps={} m_final={} converged={} gen={gen_time:.2}s run={run_time:.2}s | {}",
            out.trace.final_purity().unwrap(),
            out.trace.len(),
            out.total_grow_steps,
            out.final_seeds,
            out.converged,
            checkpoints.join(" "),
        );
    }
}
