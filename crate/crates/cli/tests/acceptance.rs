//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use clt_bounds::barron::{barron_bound, sup_over_l1_sphere, v_norm, FourierAtomicSpec, L1SphereSearchConfig};
use clt_bounds::be_nonuniform::{relu_bound, relu_sq_bound, shevtsova_delta_bound, RidgeBoundInput};
use clt_bounds::be_uniform::{halfspace_perimeter_probe, isoperimetric_constant, raic_bound, FavorableClass};
use clt_bounds::dist::{VectorSequenceSpec, VectorSummand};
use clt_bounds::level_sets::{
    level_set_bound, pushforward_kolmogorov, quasiconcavity_check, Activation, FavorableSetInstance, FunctionSpec,
    GaussianPushforward, MonotoneTable, QuasiconcavityConfig, QuasiconcavityOutcome, RealLaw,
};
use clt_bounds::linalg::{norm1, SymMatrix};
use clt_bounds::rng::Stream;
use clt_bounds::verify::{exact_delta, exact_sum_law, mc_delta_univariate, ExactLaw};
use clt_bounds::{Function, Univariate};
use rand::Rng;
use tempfile::TempDir;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    ensure(start.elapsed() <= limit, || format!("took {:.2?}, limit {limit:?}", start.elapsed()))
}

/// Discrete mean-zero summands (n ≤ 6, support ≤ 5) with a half-line
/// indicator, capped ReLU or monotone-table test function.
struct Instance {
    summands: Vec<Univariate>,
    f: Function,
}

fn random_summand(rng: &mut impl Rng) -> Univariate {
    let k = rng.random_range(2..=5);
    let raw: Vec<(f64, f64)> = (0..k).map(|_| (rng.random_range(-2.0..2.0), rng.random_range(0.05..1.0))).collect();
    let total: f64 = raw.iter().map(|a| a.1).sum();
    let mean: f64 = raw.iter().map(|(v, p)| v * p).sum::<f64>() / total;
    Univariate::discrete(raw.iter().map(|(v, p)| (v - mean, p / total)).collect()).expect("non-degenerate")
}

fn random_function(rng: &mut impl Rng, kind: usize) -> Function {
    match kind % 3 {
        0 => {
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            FunctionSpec::indicator(FavorableSetInstance::HalfSpace { a: vec![sign], b: rng.random_range(-1.0..1.0) }).unwrap()
        }
        1 => {
            let table = MonotoneTable::capped_relu(rng.random_range(0.2..2.0)).unwrap();
            FunctionSpec::ridge(Activation::MonotoneTable(table), vec![1.0], rng.random_range(-0.5..0.5)).unwrap()
        }
        _ => {
            let (mut x, mut y) = (-1.5, -0.5);
            let pts = (0..rng.random_range(2..5))
                .map(|_| {
                    x += rng.random_range(0.05..1.0);
                    y += rng.random_range(0.0..1.0);
                    (x, y)
                })
                .collect();
            FunctionSpec::ridge(Activation::MonotoneTable(MonotoneTable::new(pts).unwrap()), vec![1.0], 0.0).unwrap()
        }
    }
}

fn instance_set() -> Vec<Instance> {
    let mut rng = Stream::new(20_240_601, 0).rng();
    (0..25)
        .map(|i| {
            let n = rng.random_range(1..=6);
            let summands = (0..n).map(|_| random_summand(&mut rng)).collect();
            Instance { summands, f: random_function(&mut rng, i) }
        })
        .collect()
}

fn level_set_rhs(inst: &Instance) -> f64 {
    let law = exact_sum_law(&inst.summands).unwrap();
    let fs = law.map(|u| inst.f.eval_projected(u)).unwrap();
    let fz = GaussianPushforward::univariate(inst.f.clone(), law.variance().sqrt()).unwrap();
    level_set_bound(inst.f.sup_norm().unwrap(), pushforward_kolmogorov(&fs, &fz).unwrap()).unwrap()
}

fn c1_level_set_exactness() -> Check {
    let start = Instant::now();
    let mut worst = f64::NEG_INFINITY;
    for (i, inst) in instance_set().iter().enumerate() {
        let delta = exact_delta(&inst.f, &inst.summands).map_err(|e| e.to_string())?;
        let rhs = level_set_rhs(inst);
        ensure(delta <= rhs + 1e-9, || format!("instance {i}: Δ = {delta} > {rhs}"))?;
        worst = worst.max(delta - rhs);
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("25 instances, max Δ − bound = {worst:.3e}"))
}

fn random_exact_law(rng: &mut impl Rng) -> ExactLaw<f64> {
    let mut pts: Vec<(f64, f64)> = (0..rng.random_range(1..7))
        .map(|_| (f64::from(rng.random_range(-6i32..6)) * 0.25, rng.random_range(0.05..1.0)))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.dedup_by(|b, a| {
        let same = a.0 == b.0;
        if same {
            a.1 += b.1;
        }
        same
    });
    let total: f64 = pts.iter().map(|p| p.1).sum();
    ExactLaw::new(pts.into_iter().map(|(v, p)| (v, p / total)).collect()).unwrap()
}

fn c2_kolmogorov_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = Stream::new(7, 2).rng();
    let mut worst: f64 = 0.0;
    for case in 0..100 {
        let (a, b) = (random_exact_law(&mut rng), random_exact_law(&mut rng));
        let k = pushforward_kolmogorov(&a, &b).unwrap();
        let mut brute: f64 = 0.0;
        for t in a.atoms().into_iter().chain(b.atoms()) {
            for s in [t - 1e-9, t, t + 1e-9] {
                brute = brute.max((a.prob_gt(s).unwrap() - b.prob_gt(s).unwrap()).abs());
            }
        }
        ensure((k - brute).abs() <= 1e-12, || format!("case {case}: {k} vs brute force {brute}"))?;
        worst = worst.max((k - brute).abs());
    }
    within(Duration::from_secs(5), start)?;
    Ok(format!("100 pairs, max difference {worst:.1e}"))
}

fn c3_quasiconcavity() -> Check {
    let start = Instant::now();
    let sq = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
    type F = Box<dyn Fn(&[f64]) -> f64>;
    let pass: Vec<(&str, F)> = vec![
        ("−‖x‖²", Box::new(move |x| -sq(x))),
        ("exp(−‖x‖²)", Box::new(move |x| (-sq(x)).exp())),
        ("min(1, 2 − ‖x‖₁)", Box::new(|x| 1.0f64.min(2.0 - norm1(x)))),
    ];
    let fail: Vec<(&str, F)> = vec![("‖x‖²", Box::new(move |x| sq(x))), ("cos(3x₁)", Box::new(|x| (3.0 * x[0]).cos()))];
    let cfg = QuasiconcavityConfig::default();
    let mut witnesses = 0;
    for d in 1..=3 {
        for (k, (name, f)) in pass.iter().enumerate() {
            let out = quasiconcavity_check(f, d, -2.0, 2.0, &cfg, Stream::new(3, (10 * d + k) as u64)).unwrap();
            ensure(out.passed(), || format!("{name} rejected in d = {d}"))?;
        }
        for (k, (name, f)) in fail.iter().enumerate() {
            let out = quasiconcavity_check(f, d, -2.0, 2.0, &cfg, Stream::new(4, (10 * d + k) as u64)).unwrap();
            let QuasiconcavityOutcome::Fail { witness } = out else {
                return Err(format!("{name} accepted in d = {d}"));
            };
            let v = witness.violation(f);
            ensure(v > 1e-9, || format!("{name} witness in d = {d} violates by only {v}"))?;
            witnesses += 1;
        }
    }
    within(Duration::from_secs(20), start)?;
    Ok(format!("9 passes, {witnesses} verified witnesses, 10^4 trials each"))
}

fn rademacher(scale: f64, n: usize) -> Vec<Univariate> {
    vec![Univariate::rademacher(scale).unwrap(); n]
}

fn c4_relu_scaling() -> Check {
    let start = Instant::now();
    let relu = FunctionSpec::ridge(Activation::Relu, vec![1.0], 0.0).unwrap();
    let mut scaled = Vec::new();
    let mut ratios = Vec::new();
    for n in [4usize, 16, 64, 256, 1024] {
        let ws = rademacher(1.0 / (n as f64).sqrt(), n);
        let c1 = relu_bound(&RidgeBoundInput::new(ws.clone(), 0.0).unwrap()).unwrap().c1;
        let delta = exact_delta(&relu, &ws).unwrap();
        scaled.push(c1 * (n as f64).sqrt());
        ratios.push(delta / c1);
        if n == 4 {
            ensure((delta - 0.0239423).abs() < 5e-8 && c1 == 0.25 && (delta / c1 - 0.0958).abs() < 5e-5, || {
                format!("n = 4: Δ = {delta}, c1 = {c1}")
            })?;
        }
    }
    ensure(scaled.iter().all(|s| (s - scaled[0]).abs() <= 1e-12), || format!("c1·√n = {scaled:?}"))?;
    ensure(ratios.iter().all(|r| *r <= 0.2), || format!("Δ/c1 = {ratios:?}"))?;
    within(Duration::from_secs(10), start)?;
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.4}")).collect();
    Ok(format!("c1·√n = {}, Δ/c1 = [{}]", scaled[0], shown.join(", ")))
}

fn c5_shevtsova() -> Check {
    let start = Instant::now();
    let c1 = shevtsova_delta_bound(0.0, &rademacher(1.0, 1)).unwrap().c1;
    ensure(c1 == 1.0, || format!("single Rademacher at x = 0 gives {c1}"))?;
    let skewed = Univariate::discrete(vec![(-0.5, 0.8), (2.0, 0.2)]).unwrap();
    let families: Vec<(&str, Vec<Univariate>)> = vec![
        ("rademacher", rademacher(0.5, 4)),
        ("skewed", vec![skewed.scaled(0.6).unwrap(); 3]),
        ("gaussian", vec![Univariate::gaussian(0.5).unwrap(); 2]),
    ];
    for (name, ws) in &families {
        let mut grid: Vec<f64> = (0..50).map(|i| -4.0 + 8.0 * f64::from(i) / 49.0).collect();
        grid.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        let vals: Vec<f64> = grid.iter().map(|&x| shevtsova_delta_bound(x, ws).unwrap().c1).collect();
        for k in 1..vals.len() {
            ensure(vals[k] <= vals[k - 1], || format!("{name}: c1 rises from {} to {} at x = {}", vals[k - 1], vals[k], grid[k]))?;
        }
    }
    within(Duration::from_secs(5), start)?;
    Ok("c1 = 1 at x = 0; non-increasing in |x| for 3 families on 50 points".into())
}

fn c6_relu_sq() -> Check {
    let start = Instant::now();
    let one = relu_sq_bound(&RidgeBoundInput::new(rademacher(1.0, 1), 0.0).unwrap()).unwrap().c1;
    let four = relu_sq_bound(&RidgeBoundInput::new(rademacher(0.5, 4), 0.0).unwrap()).unwrap().c1;
    ensure(one == 2.0 && four == 1.0, || format!("c1 = {one} and {four}"))?;
    within(Duration::from_secs(1), start)?;
    Ok("c1 = 2 (n = 1) and 1 (n = 4)".into())
}

fn c7_fourier_norms() -> Check {
    let start = Instant::now();
    let mut rng = Stream::new(9, 7).rng();
    for case in 0..20 {
        let d = rng.random_range(1..=5);
        let omega: Vec<f64> = (0..d).map(|_| rng.random_range(-3.0..3.0)).collect();
        let l1: f64 = omega.iter().map(|w| w.abs()).sum();
        let f = FourierAtomicSpec::cosine(omega).unwrap();
        let (v2, v3) = (v_norm(&f, 2).unwrap(), v_norm(&f, 3).unwrap());
        ensure(v2 == l1 * l1 && v3 == l1 * l1 * l1, || format!("case {case}: v2 = {v2}, v3 = {v3}, ‖ω‖₁ = {l1}"))?;
    }
    let seq = VectorSequenceSpec::iid(
        VectorSummand::Discrete { atoms: vec![(vec![-1.0], 0.5), (vec![1.0], 0.5)] },
        4,
    )
    .unwrap();
    let cos2 = FourierAtomicSpec::cosine(vec![2.0]).unwrap();
    let c1: f64 = barron_bound(&cos2, &seq, 2, &L1SphereSearchConfig::default()).unwrap().bound.c1;
    ensure((c1 - 2.0).abs() <= 1e-12, || format!("barron c1 = {c1}"))?;
    within(Duration::from_secs(5), start)?;
    Ok(format!("20 frequencies exact; barron c1 = {c1}"))
}

fn c8_sphere_search() -> Check {
    let start = Instant::now();
    let mut rng = Stream::new(11, 8).rng();
    let mut worst: f64 = 0.0;
    for case in 0..50 {
        let d = rng.random_range(1..=6);
        let k = rng.random_range(1..=d + 2);
        let mut sigma = SymMatrix::zeros(d);
        for _ in 0..k {
            let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            sigma.add_scaled(&SymMatrix::outer(&x), 1.0);
        }
        let exact = (0..d).map(|i| sigma.get(i, i)).fold(f64::NEG_INFINITY, f64::max);
        let cfg = L1SphereSearchConfig { stream: Stream::new(case, 0), ..Default::default() };
        let found = sup_over_l1_sphere(|a| sigma.quad_form(a), d, &cfg).unwrap().value;
        ensure((found - exact).abs() <= 1e-9, || format!("case {case}: {found} vs {exact}"))?;
        worst = worst.max((found - exact).abs());
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("50 cases, max error {worst:.1e}"))
}

fn c9_perimeter_probe() -> Check {
    let start = Instant::now();
    let cap = (2.0 * std::f64::consts::PI).sqrt().recip();
    let mut rng = Stream::new(13, 9).rng();
    let mut largest: f64 = 0.0;
    for _ in 0..1000 {
        let d = rng.random_range(1..=5);
        let a: Vec<f64> = (0..d).map(|_| rng.random_range(-2.0..2.0)).collect();
        let b = rng.random_range(-3.0..3.0);
        let eps = 10f64.powf(rng.random_range(-4.0..0.5));
        let r = halfspace_perimeter_probe(&a, b, &[eps]).unwrap();
        ensure(r <= cap + 1e-6, || format!("ratio {r} at a = {a:?}, b = {b}, ε = {eps}"))?;
        largest = largest.max(r);
    }
    let at_zero = halfspace_perimeter_probe(&[1.0], 0.0, &[1e-3]).unwrap();
    ensure(at_zero >= 0.398, || format!("b = 0, ε = 1e-3 gives {at_zero}"))?;
    within(Duration::from_secs(5), start)?;
    Ok(format!("max random ratio {largest:.6}, b = 0 ratio {at_zero:.6}"))
}

fn c10_constants() -> Check {
    let start = Instant::now();
    let half: f64 = isoperimetric_constant(&FavorableClass::HalfSpaces).unwrap();
    ensure((half - (2.0 * std::f64::consts::PI).sqrt().recip()).abs() < 1e-15, || format!("half-spaces: {half}"))?;
    for (d, want) in [(1, 4.0), (16, 8.0), (81, 12.0)] {
        let a: f64 = isoperimetric_constant(&FavorableClass::Convex { d }).unwrap();
        ensure((a - want).abs() < 1e-12, || format!("convex({d}) = {a}"))?;
    }
    let raic = |g: f64| raic_bound(g, 0.0, 1.0, false).unwrap();
    let cross = 26.0 / 53.0;
    ensure(raic(0.0) == 27.0 && raic(cross - 1e-9) == 27.0, || "flat branch is not 27".into())?;
    ensure((raic(cross) - 27.0).abs() < 1e-12, || format!("crossover value {}", raic(cross)))?;
    ensure(raic(cross + 1e-6) > 27.0 && raic(1.0) == 54.0, || format!("rising branch {}", raic(1.0)))?;
    within(Duration::from_secs(1), start)?;
    Ok("(2π)^{-1/2}; 4, 8, 12; crossover at 26/53".into())
}

fn c11_monte_carlo() -> Check {
    let start = Instant::now();
    let set = instance_set();
    let mut inside = 0;
    for trial in 0..100u64 {
        let inst = &set[trial as usize % set.len()];
        let exact = exact_delta(&inst.f, &inst.summands).unwrap();
        let est = mc_delta_univariate(&inst.f, &inst.summands, 100_000, 1000 + trial).unwrap();
        if (est.mean.abs() - exact).abs() <= 4.0 * est.std_error {
            inside += 1;
        }
    }
    ensure(inside >= 99, || format!("{inside}/100 within 4 standard errors"))?;
    within(Duration::from_secs(60), start)?;
    Ok(format!("{inside}/100 within 4 standard errors at 10^5 samples"))
}

fn c12_determinism() -> Check {
    let start = Instant::now();
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let config = dir.path().join("mixed.json");
    let bundled = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/rademacher_relu.json");
    std::fs::write(
        &config,
        r#"{"instances": [
          {"id": "ball", "sequence": {"d": 2, "n": 4, "coordinates": {"kind": "rademacher", "scale": 1}},
           "function": {"kind": "indicator", "set": {"kind": "ball", "center": [0, 0], "radius": 1.2}},
           "bound": "bentkus", "params": {"class": {"kind": "convex", "d": 2}},
           "verification": {"mode": "mc", "samples": 20000}, "seed": 5},
          {"id": "wave", "sequence": {"d": 2, "n": 3, "coordinates": {"kind": "rademacher", "scale": 1}},
           "function": {"kind": "fourier_atomic", "atoms": [{"omega": [1, 0.5], "re": 0.5, "im": 0}, {"omega": [-1, -0.5], "re": 0.5, "im": 0}]},
           "bound": "barron_s3"}
        ]}"#,
    )
    .map_err(|e| e.to_string())?;
    let run = |cfg: &str, out: &Path| {
        Command::new(env!("CARGO_BIN_EXE_cltb"))
            .args(["run", cfg, "--out", out.to_str().unwrap()])
            .status()
            .map(|s| s.code())
            .map_err(|e| e.to_string())
    };
    let mut files = 0;
    for cfg in [bundled, config.to_str().unwrap()] {
        let (a, b) = (dir.path().join("a"), dir.path().join("b"));
        let _ = std::fs::remove_dir_all(&a);
        let _ = std::fs::remove_dir_all(&b);
        ensure(run(cfg, &a)? == Some(0) && run(cfg, &b)? == Some(0), || format!("{cfg} did not exit 0"))?;
        let mut names: Vec<_> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        for name in names {
            let same = std::fs::read(a.join(&name)).unwrap() == std::fs::read(b.join(&name)).unwrap();
            ensure(same, || format!("{name:?} differs between runs"))?;
            files += 1;
        }
    }
    within(Duration::from_secs(5), start)?;
    Ok(format!("{files} output files byte-identical across repeated runs"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("level-set bound exactness", c1_level_set_exactness),
        ("Kolmogorov-distance equivalence", c2_kolmogorov_equivalence),
        ("quasiconcavity duality", c3_quasiconcavity),
        ("ReLU-bound scaling law", c4_relu_scaling),
        ("Shevtsova evaluation", c5_shevtsova),
        ("squared-ReLU instance", c6_relu_sq),
        ("Fourier norms", c7_fourier_norms),
        ("sphere-search correctness", c8_sphere_search),
        ("isoperimetric probe", c9_perimeter_probe),
        ("constants table", c10_constants),
        ("Monte Carlo consistency", c11_monte_carlo),
        ("determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
