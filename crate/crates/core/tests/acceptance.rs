//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.
//!
//! Run with `cargo test -p ris-secrecy --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use ris_secrecy::channel::{dbm_to_watts, path_loss_linear, LinkBudget};
use ris_secrecy::cli::{self, Experiment, Preset, RunOptions, SeriesResult};
use ris_secrecy::geometry::link_distances;
use ris_secrecy::metrics::{outage_indicator, secrecy_rate};
use ris_secrecy::montecarlo::{
    argbest, run_scenario, run_scenario_with, sweep, trial_samples, Execution, MonteCarloEstimate,
    Objective, ScenarioConfig, SweepAxis,
};

type Verdict = Result<String, String>;

const SEED: u64 = 20240601;

fn run_preset(p: Preset, trials: Option<u64>) -> (Experiment, Vec<SeriesResult>) {
    let mut e = p.expand();
    cli::apply_overrides(&mut e, Some(SEED), trials, &[]).unwrap();
    let r = cli::run_experiment(&e, Execution::Parallel).unwrap();
    (e, r)
}

fn series<'a>(results: &'a [SeriesResult], f: impl Fn(&ScenarioConfig) -> bool) -> &'a SeriesResult {
    results.iter().find(|r| f(&r.config)).expect("series present")
}

fn deg(x: f64) -> f64 {
    (x.to_degrees() * 1e6).round() / 1e6
}

fn check(ok: bool, pass: String, fail: String) -> Verdict {
    if ok {
        Ok(pass)
    } else {
        Err(fail)
    }
}

/// With-RIS rate above direct-only at every angle, both path-loss exponents.
fn c1_ris_benefit(fig5b: &[SeriesResult]) -> Verdict {
    let mut bad = Vec::new();
    let mut min_gap = f64::INFINITY;
    for alpha in [2.5, 3.0] {
        let with = series(fig5b, |c| c.budget.alpha == alpha && c.include_ris);
        let without = series(fig5b, |c| c.budget.alpha == alpha && !c.include_ris);
        for ((x, a), b) in with.sweep.axis_values.iter().zip(with.sweep.rates()).zip(without.sweep.rates()) {
            min_gap = min_gap.min(a.ci_low - b.ci_high);
            if !a.above(b) {
                bad.push(format!("alpha={alpha} theta={}: {a} vs {b}", deg(*x)));
            }
        }
    }
    check(
        bad.is_empty(),
        format!("14/14 points separated, smallest CI gap {min_gap:.3} bits/s/Hz"),
        bad.join("; "),
    )
}

/// alpha = 3.0 below alpha = 2.5 at every angle, both link modes.
fn c2_alpha_ordering(fig5b: &[SeriesResult]) -> Verdict {
    let mut bad = Vec::new();
    for ris in [true, false] {
        let lo = series(fig5b, |c| c.budget.alpha == 2.5 && c.include_ris == ris);
        let hi = series(fig5b, |c| c.budget.alpha == 3.0 && c.include_ris == ris);
        for ((x, a), b) in lo.sweep.axis_values.iter().zip(lo.sweep.rates()).zip(hi.sweep.rates()) {
            if !a.above(b) {
                bad.push(format!("include_ris={ris} theta={}: {a} vs {b}", deg(*x)));
            }
        }
    }
    check(bad.is_empty(), "alpha=3.0 below alpha=2.5 at all 14 points".into(), bad.join("; "))
}

/// Rate at 60 degrees below rate at 0 degrees with the RIS.
fn c3_theta_degradation(fig5b: &[SeriesResult]) -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for alpha in [2.5, 3.0] {
        let s = series(fig5b, |c| c.budget.alpha == alpha && c.include_ris);
        let first = s.sweep.points.first().unwrap().rate;
        let last = s.sweep.points.last().unwrap().rate;
        ok &= first.above(&last);
        notes.push(format!("alpha={alpha}: 0deg {:.3} > 60deg {:.3}", first.mean, last.mean));
    }
    check(ok, notes.join(", "), notes.join(", "))
}

fn monotone_within_ci<'a>(
    xs: impl Iterator<Item = &'a MonteCarloEstimate>,
    increasing: bool,
) -> Result<(), String> {
    let v: Vec<_> = xs.collect();
    for (i, w) in v.windows(2).enumerate() {
        let wrong_way = if increasing { w[1].mean < w[0].mean } else { w[1].mean > w[0].mean };
        if wrong_way && !w[0].overlaps(w[1]) {
            return Err(format!("points {i}->{}: {} then {}", i + 1, w[0], w[1]));
        }
    }
    let (first, last) = (v[0], v[v.len() - 1]);
    let separated = if increasing { last.above(first) } else { first.above(last) };
    if !separated {
        return Err(format!("endpoints not separated: {first} vs {last}"));
    }
    Ok(())
}

/// Rate nondecreasing and outage nonincreasing in N for every bit depth.
fn c4_n_monotonicity(fig5d: &[SeriesResult]) -> Verdict {
    let mut bad = Vec::new();
    for s in fig5d {
        if let Err(e) = monotone_within_ci(s.sweep.rates(), true) {
            bad.push(format!("{} rate: {e}", s.label));
        }
        if let Err(e) = monotone_within_ci(s.sweep.outages(), false) {
            bad.push(format!("{} outage: {e}", s.label));
        }
    }
    check(
        bad.is_empty(),
        format!("{} series monotone over N=10..100 at {} trials", fig5d.len(), fig5d[0].config.trials),
        bad.join("; "),
    )
}

/// 3-bit phases within 0.1 bits/s/Hz of continuous at N = 50.
fn c5_three_bits_suffice() -> Verdict {
    let base = ScenarioConfig { seed: SEED, ..Preset::Fig5c.expand().base };
    let s = sweep(&base, SweepAxis::QuantizationBits, &[1.0, 2.0, 3.0, f64::INFINITY]).unwrap();
    let m: Vec<f64> = s.rates().map(|e| e.mean).collect();
    let gap = (m[2] - m[3]).abs();
    let ordered = m[3] >= m[2] && m[2] >= m[1] && m[1] >= m[0];
    let msg = format!(
        "means 1b {:.4}, 2b {:.4}, 3b {:.4}, cont {:.4}; |3b - cont| = {gap:.4}",
        m[0], m[1], m[2], m[3]
    );
    check(gap <= 0.1 && ordered, msg.clone(), msg)
}

/// Best angle for rate at 25 +- 5 degrees and for outage at 30 +- 5 degrees.
fn c6_optimal_placement(fig5f: &[SeriesResult]) -> Verdict {
    let s = series(fig5f, |c| c.budget.alpha == 2.5 && c.topology.d_te == 30.0);
    let best_rate = deg(argbest(&s.sweep, Objective::MaxRate).unwrap());
    let best_outage = deg(argbest(&s.sweep, Objective::MinOutage).unwrap());
    let profile: Vec<String> = s
        .sweep
        .axis_values
        .iter()
        .zip(&s.sweep.points)
        .map(|(x, p)| format!("{}:{:.3}/{:.3}", deg(*x), p.rate.mean, p.outage.mean))
        .collect();
    let ok = (best_rate - 25.0).abs() <= 5.0 && (best_outage - 30.0).abs() <= 5.0;
    let msg = format!(
        "argmax rate = {best_rate} deg (want 25+-5), argmin outage = {best_outage} deg (want 30+-5) at {} trials",
        s.config.trials
    );
    check(ok, msg.clone(), format!("{msg}; theta:rate/outage {}", profile.join(" ")))
}

/// A farther eavesdropper never lowers the rate beyond CI overlap.
fn c7_eavesdropper_distance(fig5e: &[SeriesResult]) -> Verdict {
    let mut bad = Vec::new();
    for alpha in [2.5, 3.0] {
        let near = series(fig5e, |c| c.budget.alpha == alpha && c.topology.d_te == 30.0);
        let far = series(fig5e, |c| c.budget.alpha == alpha && c.topology.d_te == 35.0);
        for ((x, n), f) in near.sweep.axis_values.iter().zip(near.sweep.rates()).zip(far.sweep.rates()) {
            if f.mean < n.mean && !f.overlaps(n) {
                bad.push(format!("alpha={alpha} theta={}: d_te=35 {f} < d_te=30 {n}", deg(*x)));
            }
        }
    }
    check(bad.is_empty(), "d_te=35 >= d_te=30 at all 26 points".into(), bad.join("; "))
}

fn ris_only(n: usize, bits: Option<u32>, trials: u64) -> ScenarioConfig {
    ScenarioConfig {
        n_elements: n,
        quantization_bits: bits,
        include_direct: false,
        trials,
        seed: SEED,
        ..ScenarioConfig::default()
    }
}

/// |cascade| / N from the received SNR of a RIS-only link.
fn normalized_amplitudes(cfg: &ScenarioConfig) -> Vec<f64> {
    let d = link_distances(&cfg.topology).unwrap();
    let b = &cfg.budget;
    let gain = b.p_tx_watts() / b.noise_watts()
        * path_loss_linear(d.d_tx_ris, b).unwrap()
        * path_loss_linear(d.d_ris_rx, b).unwrap();
    trial_samples(cfg, Execution::Parallel)
        .unwrap()
        .iter()
        .map(|s| (s.gamma_rx / gain).sqrt() / cfg.n_elements as f64)
        .collect()
}

/// Coherent combining: mean SNR grows as N^2 and the per-element amplitude
/// approaches E|h||g| = pi/4.
fn c8_coherent_combining() -> Verdict {
    let ns = [16usize, 32, 64, 128, 256, 512];
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .map(|&n| {
            let out = run_scenario(&ris_only(n, None, 2_000)).unwrap();
            ((n as f64).ln(), out.gamma_rx.mean.ln())
        })
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();

    let amps = normalized_amplitudes(&ris_only(50, None, 10_000));
    let mean = amps.iter().sum::<f64>() / amps.len() as f64;
    let rel = (mean / (PI / 4.0) - 1.0).abs();
    let msg = format!("log-log slope {slope:.4} (want [1.8, 2.1]); mean sum|hg|/N {mean:.5}, rel err vs pi/4 {rel:.4}");
    check((1.8..=2.1).contains(&slope) && rel <= 0.01, msg.clone(), msg)
}

/// Quantized to continuous amplitude ratio follows (2^b/pi) sin(pi/2^b).
fn c9_quantization_law() -> Verdict {
    let cont = normalized_amplitudes(&ris_only(256, None, 1_000));
    let cont_mean = cont.iter().sum::<f64>() / cont.len() as f64;
    let mut notes = Vec::new();
    let mut ok = true;
    for b in 1..=3u32 {
        let levels = f64::from(1u32 << b);
        let expected = levels / PI * (PI / levels).sin();
        let q = normalized_amplitudes(&ris_only(256, Some(b), 1_000));
        let ratio = q.iter().sum::<f64>() / q.len() as f64 / cont_mean;
        let rel = (ratio / expected - 1.0).abs();
        ok &= rel <= 0.01;
        notes.push(format!("b={b}: {ratio:.4} vs {expected:.4} ({:.2}%)", 100.0 * rel));
    }
    check(ok, notes.join(", "), notes.join(", "))
}

/// Byte-identical CSV across runs; serial and parallel agree bitwise.
fn c10_determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let mut bad = Vec::new();
    for p in Preset::ALL {
        let csv = |sub: &str, exec: Execution| {
            let mut o = RunOptions::new(p.name(), dir.path().join(format!("{}-{sub}", p.name())));
            o.seed = Some(42);
            o.trials = Some(300);
            o.execution = exec;
            cli::run(&o).unwrap();
            std::fs::read(o.out_dir.join(cli::RESULTS_CSV)).unwrap()
        };
        let a = csv("a", Execution::Parallel);
        if a != csv("b", Execution::Parallel) {
            bad.push(format!("{p}: repeated runs differ"));
        }
        if a != csv("serial", Execution::Serial) {
            bad.push(format!("{p}: serial and parallel differ"));
        }
    }

    // the shipped binary, twice
    let exe = env!("CARGO_BIN_EXE_ris-secrecy");
    let bin = |sub: &str| {
        let out = dir.path().join(sub);
        let status = std::process::Command::new(exe)
            .args(["run", "fig5e", "--seed", "42", "--trials", "500", "--out"])
            .arg(&out)
            .output()
            .unwrap();
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
        std::fs::read(out.join(cli::RESULTS_CSV)).unwrap()
    };
    if bin("bin-a") != bin("bin-b") {
        bad.push("binary: repeated runs differ".into());
    }

    let cfg = ScenarioConfig { trials: 20_000, seed: SEED, quantization_bits: Some(2), ..ScenarioConfig::default() };
    if run_scenario_with(&cfg, Execution::Serial).unwrap() != run_scenario_with(&cfg, Execution::Parallel).unwrap() {
        bad.push("run_scenario: serial and parallel differ".into());
    }
    check(
        bad.is_empty(),
        "5 presets x (repeat, serial vs parallel) identical; binary output identical".into(),
        bad.join("; "),
    )
}

fn c11_unit_checks() -> Verdict {
    let b = LinkBudget::default();
    let mut bad = Vec::new();
    if path_loss_linear(1.0, &b).unwrap() != 1e-3 {
        bad.push("path_loss_linear(1 m) != 1e-3");
    }
    if dbm_to_watts(20.0) != 0.1 {
        bad.push("dbm_to_watts(20) != 0.1");
    }
    if secrecy_rate(3.0, 1.0) != 1.0 || secrecy_rate(1.0, 3.0) != 0.0 || secrecy_rate(2.0, 2.0) != 0.0 {
        bad.push("secrecy_rate clamping");
    }
    if outage_indicator(3.0, 2.5) != 0 || outage_indicator(2.0, 2.5) != 1 || outage_indicator(0.0, 0.0) != 0 {
        bad.push("outage step");
    }
    check(bad.is_empty(), "path loss, dBm, secrecy rate and outage exact".into(), bad.join("; "))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results: Vec<(&str, Verdict, f64)> = Vec::new();
    let mut record = |name: &'static str, f: &mut dyn FnMut() -> Verdict| {
        let t = Instant::now();
        let v = f();
        let secs = t.elapsed().as_secs_f64();
        match &v {
            Ok(m) => println!("[PASS] {name}: {m} ({secs:.1}s)"),
            Err(m) => println!("[FAIL] {name}: {m} ({secs:.1}s)"),
        }
        results.push((name, v, secs));
    };

    let (_, fig5b) = run_preset(Preset::Fig5b, Some(10_000));
    record("C1 RIS benefit", &mut || c1_ris_benefit(&fig5b));
    record("C2 alpha ordering", &mut || c2_alpha_ordering(&fig5b));
    record("C3 theta degradation", &mut || c3_theta_degradation(&fig5b));
    let (_, fig5d) = run_preset(Preset::Fig5d, Some(100_000));
    record("C4 N monotonicity", &mut || c4_n_monotonicity(&fig5d));
    drop(fig5d);
    record("C5 3-bit sufficiency", &mut c5_three_bits_suffice);
    let (_, fig5f) = run_preset(Preset::Fig5f, Some(100_000));
    record("C6 optimal placement", &mut || c6_optimal_placement(&fig5f));
    let (_, fig5e) = run_preset(Preset::Fig5e, Some(10_000));
    record("C7 d_te effect", &mut || c7_eavesdropper_distance(&fig5e));
    record("C8 coherent combining", &mut c8_coherent_combining);
    record("C9 quantization law", &mut c9_quantization_law);
    record("C10 determinism", &mut c10_determinism);
    record("C11 unit checks", &mut c11_unit_checks);

    let failed: Vec<&str> = results.iter().filter(|r| r.1.is_err()).map(|r| r.0).collect();
    println!(
        "\nacceptance: {} passed, {} failed in {:.1}s",
        results.len() - failed.len(),
        failed.len(),
        start.elapsed().as_secs_f64()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
