//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use dampwave::decay::report::{series_csv, summary_csv};
use dampwave::decay::{alpha_sup, run_suite, theorem_scenarios, AlphaQuery, ScenarioOutcome};
use dampwave::oracle::{check_dissipation_inequality, kernel_oracle_check, rk4_mode, step_guard, OracleCheckConfig};
use dampwave::{builtin_catalog, SymbolSpec};

struct Gate {
    failures: usize,
}

impl Gate {
    fn report(&mut self, id: usize, pass: bool, detail: String) {
        if !pass {
            self.failures += 1;
        }
        println!("[AC{id}] {} {detail}", if pass { "PASS" } else { "FAIL" });
    }
}

fn outcome<'a>(all: &'a [ScenarioOutcome], name: &str) -> &'a ScenarioOutcome {
    all.iter().find(|o| o.name == name).unwrap_or_else(|| panic!("scenario {name} missing"))
}

fn describe(o: &ScenarioOutcome) -> String {
    let mut s = format!("{}: slope {:.4} (expected {}", o.name, o.slope, o.expected);
    if o.tolerance > 0.0 {
        s.push_str(&format!(" ± {}", o.tolerance));
    }
    s.push(')');
    if !o.note.is_empty() {
        s.push_str(&format!(" [{}]", o.note));
    }
    s
}

fn scenario_group(gate: &mut Gate, id: usize, all: &[ScenarioOutcome], names: &[&str]) {
    let picked: Vec<&ScenarioOutcome> = names.iter().map(|n| outcome(all, n)).collect();
    let pass = picked.iter().all(|o| o.pass);
    let detail: Vec<String> = picked.iter().map(|o| describe(o)).collect();
    gate.report(id, pass, detail.join("; "));
}

fn suite_csv(outcomes: &[ScenarioOutcome]) -> Vec<u8> {
    let mut bytes = Vec::new();
    for o in outcomes {
        bytes.extend(series_csv(o).expect("series csv").into_bytes());
    }
    bytes.extend(summary_csv(outcomes).expect("summary csv").into_bytes());
    bytes
}

fn main() -> ExitCode {
    let mut gate = Gate { failures: 0 };
    let catalog = builtin_catalog();

    // 1: closed-form kernels against RK4
    let start = Instant::now();
    let cfg = OracleCheckConfig { seed: 20240611, ..Default::default() };
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut missing_confluent = Vec::new();
    for sym in &catalog {
        let rep = kernel_oracle_check(sym, &cfg).expect("oracle check");
        ok &= rep.passed();
        worst = worst.max(rep.max_error());
        if !rep.has_confluent() {
            missing_confluent.push(sym.name().to_string());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    gate.report(
        1,
        ok && secs < 30.0,
        format!(
            "{} symbols x {} samples, max relative error {worst:.2e} (tol 1e-6), {secs:.1}s; no confluent radius in (0, 8]: {}",
            catalog.len(),
            cfg.samples,
            if missing_confluent.is_empty() { "none".to_string() } else { missing_confluent.join(", ") }
        ),
    );

    // 2: admissible exponent matrix for power laws
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut cases = 0;
    let mut ok = true;
    for beta in [-1.0, -0.5, 0.0, 0.5, 1.0, 2.0] {
        for n in 1..=3u32 {
            for s in [-1.0, 0.0, 1.0] {
                let order = 2.0 * s + n as f64;
                if order <= 0.0 {
                    continue;
                }
                cases += 1;
                let q = AlphaQuery::new(SymbolSpec::power_law(beta).unwrap(), n, s);
                match alpha_sup(&q).ok().and_then(|a| a.value()) {
                    Some(a) => worst = worst.max((a - order / (2.0 + beta)).abs()),
                    None => ok = false,
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    gate.report(2, ok && worst <= 1e-2 && secs < 10.0, format!("{cases} cases, max deviation {worst:.2e} (tol 1e-2), {secs:.2}s"));

    // Scenario suite, run once for the rate criteria and again for determinism.
    let specs = theorem_scenarios();
    let first: Vec<ScenarioOutcome> = run_suite(&specs).into_iter().map(|r| r.expect("scenario run")).collect();

    scenario_group(&mut gate, 3, &first, &["interior-multiplier-b0-n3-s0", "interior-multiplier-b1-n3-s0", "interior-multiplier-bm0.5-n2-s0.5"]);
    scenario_group(&mut gate, 4, &first, &["solution-u0-const-n3", "solution-u1-const-n3"]);
    scenario_group(
        &mut gate,
        5,
        &first,
        &["exterior-threshold-const", "exterior-threshold-power-m0.5", "exterior-threshold-power-1", "exterior-threshold-log"],
    );
    scenario_group(&mut gate, 6, &first, &["low-dim-u1-n1", "low-dim-u1-n2"]);
    scenario_group(&mut gate, 7, &first, &["profile-residual-const-n3", "profile-residual-power-1-n3"]);

    // 8: per-mode Lyapunov inequalities
    let mut ok = true;
    let mut worst_diss = f64::NEG_INFINITY;
    let mut worst_gron = f64::NEG_INFINITY;
    for sym in &catalog {
        for r in [0.1, 1.0, 4.0] {
            let mu = sym.eval(r).unwrap();
            let traj = rk4_mode(r, sym, 1.0, 0.5, 20.0, step_guard(r, mu) / 32.0).expect("trajectory");
            let rep = check_dissipation_inequality(r, sym, 0.5, &traj).expect("inequality check");
            ok &= rep.passed();
            worst_diss = worst_diss.max(rep.max_dissipation_residual / rep.slack.max(f64::MIN_POSITIVE));
            worst_gron = worst_gron.max(rep.max_gronwall_excess / rep.slack.max(f64::MIN_POSITIVE));
        }
    }
    gate.report(
        8,
        ok,
        format!(
            "{} symbols x 3 radii; worst dissipation residual {worst_diss:.2e} x slack, worst exponential-bound excess {worst_gron:.2e} x slack",
            catalog.len()
        ),
    );

    scenario_group(&mut gate, 9, &first, &["hypc-log-energy", "hypc-log-exterior"]);

    // 10: determinism
    let second: Vec<ScenarioOutcome> = run_suite(&specs).into_iter().map(|r| r.expect("scenario run")).collect();
    let (a, b) = (suite_csv(&first), suite_csv(&second));
    gate.report(10, a == b, format!("{} scenarios, {} CSV bytes per run", specs.len(), a.len()));

    println!("acceptance: {} of 10 criteria failed", gate.failures);
    if gate.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
