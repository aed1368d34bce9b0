//! Runs every row with all optional steps and prints one line per
//! acceptance criterion.

use fourfold_core::field::{DEFAULT_PRIME, PAPER_PRIME};
use fourfold_harness::pipeline::{run_rows, Options, RowPlan};
use fourfold_harness::properties;
use fourfold_harness::report::{to_json, to_table, RowReport, Status};
use fourfold_harness::ExpectedFile;
use std::time::Duration;

struct Criterion {
    id: u32,
    title: &'static str,
    /// (row, check) pairs that must pass.
    checks: Vec<(&'static str, &'static str)>,
    /// Timeouts count as skipped rather than failed.
    stretch: bool,
}

const ALL: [&str; 7] = ["dP5", "scroll4", "s14", "fv_scroll7", "s38", "dp7_proj", "octic_scroll8"];

fn every(name: &'static str) -> Vec<(&'static str, &'static str)> {
    ALL.iter().map(|r| (*r, name)).collect()
}

fn criteria() -> Vec<Criterion> {
    let mut table1 = every("degree");
    table1.extend(every("h0_cubics"));
    table1.extend(every("nodes"));
    table1.extend([("s14", "model_sectional_genus"), ("s14", "sectional_genus"), ("s38", "sectional_genus"), ("s38", "threefold")]);
    let mut degrees = every("multidegree");
    degrees.push(("s38", "unrestricted_multidegree"));
    let mut system = every("system_dimension");
    system.extend(every("system_dimension_saturation"));
    let mut inverse = every("birational");
    inverse.extend(every("delta"));
    inverse.push(("octic_scroll8", "inverse_multidegree"));
    let mut stretch = every("h0_normal");
    stretch.extend(every("h0_normal_rel"));
    stretch.extend(every("lines"));
    vec![
        Criterion { id: 1, title: "linear-system dimensions", checks: system, stretch: false },
        Criterion { id: 2, title: "surface invariants", checks: table1, stretch: false },
        Criterion { id: 3, title: "projective degrees", checks: degrees, stretch: false },
        Criterion { id: 4, title: "congruence certificates", checks: every("fiber"), stretch: false },
        Criterion {
            id: 5,
            title: "image signatures",
            checks: vec![
                ("scroll4", "image"),
                ("scroll4", "image_quadrics"),
                ("dp7_proj", "image"),
                ("octic_scroll8", "image"),
                ("octic_scroll8", "image_quadrics"),
            ],
            stretch: false,
        },
        Criterion { id: 6, title: "birationality and inverses", checks: inverse, stretch: false },
        Criterion {
            id: 7,
            title: "conormal consistency",
            checks: ["s14", "fv_scroll7", "s38"]
                .iter()
                .flat_map(|r| [(*r, "h0_quintics"), (*r, "conormal_difference")])
                .collect(),
            stretch: false,
        },
        Criterion {
            id: 8,
            title: "linkage",
            checks: vec![
                ("s38", "threefold"),
                ("s38", "threefold_cross_check"),
                ("s38", "linked_surface"),
                ("s38", "linkage_cross_check"),
            ],
            stretch: false,
        },
        Criterion { id: 9, title: "normal bundles and lines (stretch)", checks: stretch, stretch: true },
    ]
}

fn evaluate(c: &Criterion, reports: &[RowReport]) -> (bool, String) {
    let mut bad = Vec::new();
    let mut timeouts = 0;
    for (row, name) in &c.checks {
        let check = reports.iter().find(|r| r.row == *row).and_then(|r| r.check(name));
        match check.map(|k| k.status) {
            Some(Status::Pass) => {}
            Some(Status::Timeout) if c.stretch => timeouts += 1,
            Some(s) => bad.push(format!("{row}/{name}: {}", s.as_str())),
            None => bad.push(format!("{row}/{name}: missing")),
        }
    }
    let detail = if bad.is_empty() {
        format!("{} checks{}", c.checks.len(), if timeouts > 0 { format!(", {timeouts} timed out") } else { String::new() })
    } else {
        bad.join(", ")
    };
    (bad.is_empty(), detail)
}

fn main() {
    let file = ExpectedFile::builtin();
    let plans: Vec<RowPlan> = file.rows.iter().map(|r| RowPlan::new(r).unwrap()).collect();
    let opts = Options {
        prime: DEFAULT_PRIME,
        seed: 1,
        with_inverse: true,
        with_normal_bundle: true,
        with_line_counts: true,
        step_budget: Duration::from_secs(30 * 60),
        ..Options::default()
    };
    let reports = run_rows(&plans, &opts, std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::write(dir.join("acceptance.json"), to_json(&reports)).unwrap();
    eprint!("{}", to_table(&reports));

    let mut all_ok = true;
    for c in criteria() {
        let (ok, detail) = evaluate(&c, &reports);
        all_ok &= ok;
        println!("criterion {:>2} {} {}: {}", c.id, if ok { "PASS" } else { "FAIL" }, c.title, detail);
    }

    // Checks outside the numbered criteria are reported but do not gate.
    let covered: Vec<(&str, &str)> = criteria().into_iter().flat_map(|c| c.checks).collect();
    for r in &reports {
        for c in &r.checks {
            if matches!(c.status, Status::Fail | Status::Error) && !covered.contains(&(r.row.as_str(), c.name.as_str())) {
                println!(
                    "extra        {} {}/{}: expected {} computed {}",
                    c.status.as_str().to_uppercase(),
                    r.row,
                    c.name,
                    c.expected,
                    c.computed
                );
            }
        }
    }

    let (suites, elapsed) = properties::run_all();
    let failed: Vec<String> =
        suites.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    let ok = failed.is_empty() && elapsed < Duration::from_secs(300);
    all_ok &= ok;
    println!(
        "criterion 10 {} property suites: {} suites in {:.1}s{}",
        if ok { "PASS" } else { "FAIL" },
        suites.len(),
        elapsed.as_secs_f64(),
        if failed.is_empty() { String::new() } else { format!("; {}", failed.join("; ")) }
    );

    // The two smallest rows once more at the larger prime.
    let small: Vec<RowPlan> = plans.iter().filter(|p| ["dP5", "scroll4"].contains(&p.tag.as_str())).cloned().collect();
    let big = run_rows(&small, &Options { prime: PAPER_PRIME, seed: 1, ..opts.clone() }, 1);
    let big_ok = big.iter().all(|r| !r.failed());
    println!("extra        {} rows dP5, scroll4 at p = {PAPER_PRIME}", if big_ok { "PASS" } else { "FAIL" });
    all_ok &= big_ok;

    if !all_ok {
        std::process::exit(1);
    }
}
