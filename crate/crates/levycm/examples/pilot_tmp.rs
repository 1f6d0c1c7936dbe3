use levycm::criteria::testfn::TestFunction;
use levycm::levy::LevyModel;
use levycm::mc_lab::*;
use levycm::minorant::Horizon;

fn run(model: &LevyModel, f: &TestFunction, sampler: SlopeSampler, regime: Regime, extremum: Extremum, dich: bool, label: &str) {
    let cfg = FluctuationConfig {
        regime, extremum, sampler,
        horizon: Horizon::Fixed { t: 1.0 },
        k_min: 4, k_max: 14, n_paths: 300, seed: 2024,
        allow_unregistered_slope: false,
    };
    let stat = estimate_fluctuation(model, f, &cfg).unwrap();
    let opts = ClassifierOptions { dichotomy: dich, bootstrap: 100, ..Default::default() };
    let c = regime_classify(&stat, &opts);
    println!("{label}: {:?} slope={:.3} conf={:.2}", c.class, c.slope, c.confidence);
    println!("  medians: {:?}", stat.local_median.iter().map(|v| (v*1000.0).round()/1000.0).collect::<Vec<_>>());
}

fn main() {
    let cauchy = LevyModel::cauchy(1.0, 0.0);
    let f_sqrt = TestFunction::power(0.5);
    let f_invlog = TestFunction::inverse_log(1.0);
    // criterion 7: IS regime
    run(&cauchy, &f_sqrt, SlopeSampler::GridHull { n: 1 << 16 }, Regime::InfiniteSlope, Extremum::Sup, true, "IS grid sqrt");
    run(&cauchy, &f_invlog, SlopeSampler::GridHull { n: 1 << 16 }, Regime::InfiniteSlope, Extremum::Sup, true, "IS grid 1/log");
    let exp = Horizon::Exponential { rate: 1.0 };
    let cfg_exact = |f: &TestFunction, label: &str, dich: bool| {
        let cfg = FluctuationConfig {
            regime: Regime::InfiniteSlope, extremum: Extremum::Sup,
            sampler: SlopeSampler::CauchyExact, horizon: exp,
            k_min: 4, k_max: 14, n_paths: 300, seed: 2025,
            allow_unregistered_slope: false,
        };
        let stat = estimate_fluctuation(&LevyModel::cauchy(1.0, 0.0), f, &cfg).unwrap();
        let opts = ClassifierOptions { dichotomy: dich, bootstrap: 100, ..Default::default() };
        let c = regime_classify(&stat, &opts);
        println!("{label}: {:?} slope={:.3} conf={:.2}", c.class, c.slope, c.confidence);
        println!("  medians: {:?}", stat.local_median.iter().map(|v| (v*1000.0).round()/1000.0).collect::<Vec<_>>());
    };
    cfg_exact(&f_sqrt, "IS exact sqrt", true);
    cfg_exact(&f_invlog, "IS exact 1/log", true);
    // criterion 8: FS regime, exact sampler, f = log(1/t)^{rho p - 2}, rho = 1/2
    for p in [1.0, 3.0] {
        let q = 2.0 - 0.5 * p;
        let f = TestFunction::inverse_log(q);
        let cfg = FluctuationConfig {
            regime: Regime::FiniteSlope { s: 0.0 }, extremum: Extremum::Sup,
            sampler: SlopeSampler::CauchyExact, horizon: exp,
            k_min: 4, k_max: 14, n_paths: 300, seed: 2026,
            allow_unregistered_slope: false,
        };
        let stat = estimate_fluctuation(&LevyModel::cauchy(1.0, 0.0), &f, &cfg).unwrap();
        let opts = ClassifierOptions { bootstrap: 100, ..Default::default() };
        let c = regime_classify(&stat, &opts);
        println!("FS exact p={p} (q={q}): {:?} slope={:.3} conf={:.2}", c.class, c.slope, c.confidence);
        println!("  medians: {:?}", stat.local_median.iter().map(|v| (v*1000.0).round()/1000.0).collect::<Vec<_>>());
    }
}
