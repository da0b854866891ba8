//! End-to-end acceptance checks. Each prints one PASS/FAIL line; the
//! process fails if any check fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use ratio_oed::design::{count_at_min, optimal_design_hetero, optimal_design_homo, rho_star, SearchOptions};
use ratio_oed::inference::{Method, NormalHalfWidth};
use ratio_oed::model::{
    criterion_hetero, criterion_homo, fit_least_squares, homo_variance_matrix, sandwich_with_omega, Dataset,
    ExperimentDomain, HFunction, ModelParams,
};
use ratio_oed::sim::CoverageSettings;
use ratio_oed::sim::{coverage_study, design_bakeoff, efficiency_loss, log_grid, prior_studies, robustness_curve};

type Check = Result<String, String>;

fn naphthalene_domain(n: usize) -> ExperimentDomain {
    ExperimentDomain::new(1.0 / 3.0, 19.0, n).unwrap()
}

fn naphthalene(theta: f64) -> ModelParams {
    ModelParams::homoskedastic(3.9e-9, theta, 3.2e-10).unwrap()
}

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(runtime: Duration, limit: Duration, detail: String) -> Check {
    ensure(runtime <= limit, format!("{detail}; {:.1}s of {}s", runtime.as_secs_f64(), limit.as_secs()))
}

fn allocation() -> Check {
    let alloc = optimal_design_homo(&naphthalene_domain(10), 0.053).map_err(|e| e.to_string())?;
    let (lo, hi) = (alloc.count_at(1.0 / 3.0), alloc.count_at(19.0));
    ensure((lo, hi) == (7, 3), format!("{lo} at x_min, {hi} at x_max"))
}

fn rho_star_analytics() -> Check {
    let domain = naphthalene_domain(10);
    let at_zero = rho_star(0.0, &domain).unwrap();
    if (at_zero - 0.5).abs() > 1e-12 {
        return Err(format!("rho*(0) = {at_zero}"));
    }
    let limit = domain.x_max() / (domain.x_min() + domain.x_max());
    let mut grid = vec![0.0];
    grid.extend(log_grid(1e-4, 1e4, 999).unwrap());
    let values: Vec<f64> = grid.iter().map(|&t| rho_star(t, &domain).unwrap()).collect();
    let monotone = values.windows(2).all(|w| w[1] > w[0]);
    let bounded = values.iter().all(|&v| v <= limit + 1e-12);
    ensure(
        monotone && bounded,
        format!("rho*(0)=0.5, strictly increasing on {} points, max {:.12} <= {:.12}", grid.len(), values[999], limit),
    )
}

fn brute_force_small_n() -> Check {
    let started = Instant::now();
    let grid: Vec<f64> = (0..21).map(|i| 1.0 + 9.0 * i as f64 / 20.0).collect();
    let domain = ExperimentDomain::new(1.0, 10.0, 4).unwrap();
    let mut notes = Vec::new();
    for theta0 in [0.1, 0.5, 2.0] {
        let mut best = (f64::INFINITY, [0.0; 4]);
        for a in 0..21 {
            for b in a..21 {
                for c in b..21 {
                    for d in c..21 {
                        let xs = [grid[a], grid[b], grid[c], grid[d]];
                        if let Ok(v) = criterion_homo(&xs, theta0) {
                            if v < best.0 {
                                best = (v, xs);
                            }
                        }
                    }
                }
            }
        }
        let endpoint_only = best.1.iter().all(|&x| x == 1.0 || x == 10.0);
        let at_min = best.1.iter().filter(|&&x| x == 1.0).count();
        let want = count_at_min(theta0, &domain).unwrap();
        if !endpoint_only || at_min != want {
            return Err(format!("theta0 {theta0}: best {:?}, closed form {want} at x_min", best.1));
        }
        notes.push(format!("{theta0}->{at_min}"));
    }
    within(started.elapsed(), Duration::from_secs(60), format!("endpoint-only minima, counts {}", notes.join(" ")))
}

fn bakeoff_bands() -> Check {
    let started = Instant::now();
    let domain = naphthalene_domain(10);
    let optimal = optimal_design_homo(&domain, 0.053).unwrap().points();
    let r = design_bakeoff(&domain.even_spacing(), &optimal, &naphthalene(0.053), 50_000, 20_240_601)
        .map_err(|e| e.to_string())?;
    let ok = (1.40..=1.85).contains(&r.intercentile_ratio) && (2.0..=3.3).contains(&r.variance_ratio);
    let detail = format!("intercentile ratio {:.3}, variance ratio {:.3}", r.intercentile_ratio, r.variance_ratio);
    ensure(ok, detail.clone())?;
    within(started.elapsed(), Duration::from_secs(30), detail)
}

fn coverage_bands() -> Check {
    let started = Instant::now();
    let optimal = optimal_design_homo(&naphthalene_domain(10), 0.053).unwrap().points();
    let settings = CoverageSettings {
        alpha: 0.05,
        n_sim: 1000,
        replicates: 1000,
        seed: 31_337,
        normal_half_width: NormalHalfWidth::Variance,
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for method in Method::ALL {
        let c = coverage_study(method, &optimal, &naphthalene(0.053), &settings).map_err(|e| e.to_string())?.coverage;
        let band = match method {
            Method::NormalHomo | Method::NormalHetero => c < 0.10,
            Method::ParametricBootstrap => (0.87..=0.96).contains(&c),
            _ => (0.80..=0.93).contains(&c),
        };
        ok &= band;
        parts.push(format!("{method} {c:.3}{}", if band { "" } else { " (out of band)" }));
    }
    let detail = parts.join(", ");
    ensure(ok, detail.clone())?;
    within(started.elapsed(), Duration::from_secs(600), detail)
}

fn robustness_bands() -> Check {
    let started = Instant::now();
    let domain = naphthalene_domain(10);
    let mut grid = log_grid(0.001, 1.0, 50).unwrap();
    grid.extend([0.012, 0.11]);
    let rows = robustness_curve(0.053, &grid, &domain, &naphthalene(0.053), 10_000, 777).map_err(|e| e.to_string())?;
    let worst = |lo: f64, hi: f64| {
        rows.iter().filter(|r| r.theta0 >= lo && r.theta0 <= hi).map(|r| r.error_pct).fold(f64::NEG_INFINITY, f64::max)
    };
    let mid = worst(0.012, 0.11);
    let low = worst(0.001, 0.012);
    let at_one = rows.iter().find(|r| r.theta0 == 1.0).unwrap().error_pct;
    let ok = mid <= 10.0 && (10.0..=40.0).contains(&at_one) && low <= 8.0;
    let detail = format!("max error {mid:.2}% on [0.012, 0.11], {low:.2}% on [0.001, 0.012], {at_one:.2}% at 1");
    ensure(ok, detail.clone())?;
    within(started.elapsed(), Duration::from_secs(300), detail)
}

fn efficiency_loss_bands() -> Check {
    let started = Instant::now();
    let params = naphthalene(1.0);
    let mut losses = Vec::new();
    for study in prior_studies() {
        losses.push(efficiency_loss(&study, &params, 1.0, 10_000, 4242).map_err(|e| e.to_string())?.loss_pct);
    }
    let mean = losses.iter().sum::<f64>() / losses.len() as f64;
    let ok = losses.iter().all(|&l| l > 0.0) && (20.0..=45.0).contains(&mean) && (35.0..=65.0).contains(&losses[0]);
    let detail = format!(
        "losses [{}], mean {mean:.1}%, study 1 {:.1}%",
        losses.iter().map(|l| format!("{l:.1}")).collect::<Vec<_>>().join(", "),
        losses[0]
    );
    ensure(ok, detail.clone())?;
    within(started.elapsed(), Duration::from_secs(180), detail)
}

fn oracle_equivalence() -> Check {
    let mut rng = StdRng::seed_from_u64(8);
    let mut worst_fit: f64 = 0.0;
    let mut worst_sandwich: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.random_range(3..=12);
        let mut xs: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..50.0)).collect();
        xs[0] = xs[1] + 1.0;
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let (b0, b1) = (rng.random_range(0.5..5.0), sign * rng.random_range(0.05..0.5));
        let ys: Vec<f64> = xs.iter().map(|x| b0 + b1 * x + rng.random_range(-0.1..0.1)).collect();

        // Textbook closed form: centred cross-products.
        let x_bar = xs.iter().sum::<f64>() / n as f64;
        let y_bar = ys.iter().sum::<f64>() / n as f64;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_bar) * (y - y_bar)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - x_bar) * (x - x_bar)).sum();
        let slope = sxy / sxx;
        let want = (y_bar - slope * x_bar, slope);

        let fit = fit_least_squares(&Dataset::new(xs.clone(), ys).unwrap()).map_err(|e| e.to_string())?;
        worst_fit = worst_fit.max((fit.b0 - want.0).abs() / want.0.abs()).max((fit.b1 - want.1).abs() / want.1.abs());

        let homo = homo_variance_matrix(&fit).unwrap().to_array();
        let sand = sandwich_with_omega(&xs, &vec![fit.s2_e; n]).unwrap().to_array();
        for i in 0..2 {
            for j in 0..2 {
                let scale = homo[0][0].abs().max(homo[1][1].abs());
                worst_sandwich = worst_sandwich.max((homo[i][j] - sand[i][j]).abs() / scale);
            }
        }
    }
    ensure(
        worst_fit <= 1e-10 && worst_sandwich <= 1e-12,
        format!("1000 datasets, max relative error {worst_fit:.1e} (fit), {worst_sandwich:.1e} (sandwich)"),
    )
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_ratio-oed");
    let dir = std::env::temp_dir().join(format!("ratio-oed-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let data = dir.join("d.csv");
    std::fs::write(
        &data,
        "x,y\n0.3333333,4.1e-9\n0.3333333,3.7e-9\n0.3333333,4.3e-9\n5,4.8e-9\n19,8.0e-9\n19,7.6e-9\n",
    )
    .map_err(|e| e.to_string())?;
    let data = data.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["design-hetero", "--theta0", "0.053", "--h", "power:1", "--seed", "3"],
        vec!["ci", "--data", data, "--method", "all", "--B", "2000", "--seed", "3"],
        vec!["bakeoff", "--nsim", "20000", "--seed", "3"],
        vec!["robustness", "--grid-points", "40", "--nsim", "5000", "--seed", "3"],
        vec!["coverage", "--nsim", "200", "--B", "500", "--seed", "3"],
        vec!["loss", "--nsim", "3000", "--seed", "3"],
    ];
    let run = |args: &[&str], threads: &str| {
        Command::new(bin).args(args).env("RATIO_OED_THREADS", threads).output().map_err(|e| e.to_string())
    };
    for args in &commands {
        let first = run(args, "1")?;
        if !first.status.success() {
            return Err(format!("{} failed: {}", args[0], String::from_utf8_lossy(&first.stderr)));
        }
        for threads in ["1", "4", "0"] {
            if run(args, threads)?.stdout != first.stdout {
                return Err(format!("{} differs with {threads} threads", args[0]));
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} stochastic subcommands byte-identical over repeats and 1/4/auto threads", commands.len()))
}

fn hetero_degeneration() -> Check {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [4, 8, 10] {
        let domain = naphthalene_domain(n);
        let closed = optimal_design_homo(&domain, 0.053).unwrap().points();
        let opts = SearchOptions { rng_seed: 2024, ..SearchOptions::default() };
        let found = optimal_design_hetero(&domain, 0.053, &HFunction::PowerLaw { gamma: 0.0 }, &opts)
            .map_err(|e| e.to_string())?;
        // Same scale on both sides: the search criterion against the same
        // criterion at the closed-form design, then the homoskedastic
        // criterion of both designs.
        let want = criterion_hetero(&closed, 0.053, &HFunction::constant()).unwrap();
        let rel = (found.criterion - want).abs() / want;
        let homo_found = criterion_homo(&found.xs, 0.053).unwrap();
        let homo_closed = criterion_homo(&closed, 0.053).unwrap();
        let rel_homo = (homo_found - homo_closed).abs() / homo_closed;
        ok &= rel <= 0.005 && rel_homo <= 0.005;
        parts.push(format!("n={n} {:.2e}/{:.2e}", rel, rel_homo));
    }
    ensure(ok, format!("relative gaps {}", parts.join(", ")))
}

fn main() {
    let checks: [(&str, fn() -> Check); 10] = [
        ("closed-form allocation 7/3", allocation),
        ("rho* analytics", rho_star_analytics),
        ("brute-force small-n optimum", brute_force_small_n),
        ("bake-off bands", bakeoff_bands),
        ("coverage bands", coverage_bands),
        ("robustness curve bands", robustness_bands),
        ("efficiency loss bands", efficiency_loss_bands),
        ("fit and covariance oracles", oracle_equivalence),
        ("determinism", determinism),
        ("constant-scale search degenerates to closed form", hetero_degeneration),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("acceptance {:>2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("acceptance {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("\n{} passed, {failed} failed", checks.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
