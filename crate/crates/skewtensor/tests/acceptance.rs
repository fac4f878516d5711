//! One line per acceptance criterion, driven by the default check run.
//!
//! A criterion passes when every listed check passes. Some sub-checks cannot
//! pass as stated; they are listed in `KNOWN` with the reason, printed as
//! FAIL, and do not change the exit status. Anything else failing does.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use skewtensor::verify::{run, Report, RunConfig, Status};

/// (check id, why it cannot pass as stated)
const KNOWN: &[(&str, &str)] = &[
    ("models.igusa.printed_quartic", "printed quartic is not det(Q_h) up to a scalar; it is not even det of the printed matrix"),
    ("models.ozeki.pijk_containment_15_4_10_6", "plain containment gives (15_6, 10_9); (15_4, 10_6) holds only for the restricted incidence"),
    ("models.ozeki.lifts_literal", "with the table roots the cycle lift gives (13542); the conjugate reading gives k -> k+1"),
];

struct Criterion {
    name: &'static str,
    /// ids or id prefixes ending in '.'
    checks: Vec<String>,
    /// ids that must come out as paper_discrepancy
    discrepancies: Vec<&'static str>,
    /// (task id, limit)
    time_limits: Vec<(String, Duration)>,
    extra: Option<Box<dyn Fn(&Report) -> Result<(), String>>>,
}

fn ids(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn criteria(config: &RunConfig) -> Vec<Criterion> {
    let mut counts = Vec::new();
    let mut limits = Vec::new();
    for p in &config.primes {
        for m in ["probe", "x0", "x1", "x2", "x4", "x6", "x8", "x8p"] {
            counts.push(format!("count.p{p}.{m}"));
        }
        limits.push((format!("count.p{p}.sweeps"), Duration::from_secs(60)));
    }
    vec![
        Criterion { name: "point counts", checks: counts, discrepancies: vec![], time_limits: limits, extra: None },
        Criterion {
            name: "C4 class and degree",
            checks: ids(&["chow.c4.class", "chow.c4.degree", "chow.x4.h2_fourth"]),
            discrepancies: vec![],
            time_limits: vec![],
            extra: None,
        },
        Criterion {
            name: "H-numbers and anticanonical data",
            checks: ids(&[
                "chow.x4.h_numbers",
                "chow.x4.minus_k",
                "chow.x4.k4",
                "chow.x4.k4_from_h_numbers",
                "rep.koszul.h0_minus_k",
                "rep.koszul.chi_minus_k",
                "chow.x4.chi_top",
                "count.x4_fit.betti",
                "count.x4_fit.chi_top",
            ]),
            discrepancies: vec![],
            time_limits: vec![],
            extra: None,
        },
        Criterion {
            name: "rigidity",
            checks: ids(&["rep.koszul.rigidity", "rep.koszul.chi_tx", "rep.koszul.higher_terms_vanish", "rep.bott."]),
            discrepancies: vec![],
            time_limits: vec![("rep.koszul.rigidity".into(), Duration::from_secs(10))],
            extra: None,
        },
        Criterion {
            name: "explicit tensor data",
            checks: ids(&[
                "models.ozeki.tables",
                "models.ozeki.lifts",
                "models.ozeki.lifts_literal",
                "models.ozeki.pijk_points",
                "models.ozeki.pijk_restricted_15_4_10_6",
                "models.ozeki.pijk_containment_15_4_10_6",
            ]),
            discrepancies: vec![],
            time_limits: vec![],
            extra: None,
        },
        Criterion {
            name: "Igusa quartic",
            checks: ids(&["models.igusa.duality", "models.igusa.gram_matches_printed_matrix", "models.igusa.printed_quartic"]),
            discrepancies: vec![],
            time_limits: vec![],
            extra: Some(Box::new(|r| {
                let d = r.get("models.igusa.duality").ok_or("duality check missing")?;
                let n: usize = d.computed.parse().map_err(|_| format!("duality count {:?}", d.computed))?;
                if n >= 100 { Ok(()) } else { Err(format!("only {n} tangent covectors")) }
            })),
        },
        Criterion {
            name: "Segre cubic",
            checks: ids(&["models.cubic.corank", "models.cubic.singular_at_e", "models.cubic.planes", "models.theta.cubic_singular_at_e"]),
            discrepancies: vec![],
            time_limits: vec![],
            extra: None,
        },
        Criterion {
            name: "representation theory",
            checks: ids(&[
                "rep.sn.s2_u4",
                "rep.sn.a2_u5",
                "rep.sn.u4minus_in_s2_a2_u5",
                "rep.sn.pic_type",
                "rep.sn.a2_type",
                "rep.sn.a2_dim",
                "chow.square_map.printed.rank",
                "chow.square_map.printed.kernel",
                "chow.square_map.printed.image",
            ]),
            discrepancies: vec![],
            time_limits: vec![],
            extra: None,
        },
        Criterion {
            name: "configurations",
            checks: ids(&["config.", "rep.s6."]),
            discrepancies: vec![],
            time_limits: vec![("config.pentads.count".into(), Duration::from_secs(1)), ("rep.s6.bijective".into(), Duration::from_secs(1))],
            extra: None,
        },
        Criterion {
            name: "ledger and Grothendieck adjudication",
            checks: ids(&["chow.ledger.self_consistent", "chow.ledger.h_numbers", "chow.ledger.f4", "chow.ledger.normal_segre_routes", "audit.grothendieck.coefficient"]),
            discrepancies: vec!["audit.grothendieck.printed_relation", "chow.square_map.printed.h2_fourth"],
            time_limits: vec![],
            extra: Some(Box::new(|r| {
                if !r.checks.iter().any(|c| c.id.starts_with("chow.ledger.printed.") && c.status == Status::PaperDiscrepancy) {
                    return Err("no printed ledger value was flagged".into());
                }
                if r.exit_code() != 0 { Err("the run does not exit 0".into()) } else { Ok(()) }
            })),
        },
        Criterion {
            name: "property suites",
            checks: ids(&["prop.field_axioms", "prop.whitney", "prop.bott_serre", "prop.pencil_gl_invariance", "prop.thread_determinism"]),
            discrepancies: vec![],
            time_limits: vec![],
            extra: Some(Box::new(|r| {
                let v: serde_json::Value = serde_json::from_str(&r.to_json()).map_err(|e| e.to_string())?;
                if v["seed"].as_u64() == Some(r.seed) { Ok(()) } else { Err("seed missing from the report".into()) }
            })),
        },
    ]
}

fn main() -> ExitCode {
    let config = RunConfig::default();
    let start = Instant::now();
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL  run: {e}");
            return ExitCode::FAILURE;
        }
    };
    let elapsed = start.elapsed();
    let mut unexpected = 0;
    for (n, c) in criteria(&config).iter().enumerate() {
        let mut problems = Vec::new();
        let mut known = Vec::new();
        for id in &c.checks {
            let hits: Vec<_> = if id.ends_with('.') {
                report.checks.iter().filter(|r| r.id.starts_with(id.as_str())).collect()
            } else {
                report.checks.iter().filter(|r| &r.id == id).collect()
            };
            if hits.is_empty() {
                problems.push(format!("{id} missing"));
            }
            for r in hits {
                if r.status == Status::Pass {
                    continue;
                }
                match KNOWN.iter().find(|(k, _)| *k == r.id) {
                    Some((_, why)) => known.push(format!("{} ({why})", r.id)),
                    None => problems.push(format!("{} is {:?}: expected {}, computed {}", r.id, r.status, r.expected.value, r.computed)),
                }
            }
        }
        for id in &c.discrepancies {
            match report.get(id) {
                Some(r) if r.status == Status::PaperDiscrepancy => {}
                Some(r) => problems.push(format!("{id} should be paper_discrepancy, is {:?}", r.status)),
                None => problems.push(format!("{id} missing")),
            }
        }
        for (id, limit) in &c.time_limits {
            if let Some(r) = report.get(id) {
                if r.runtime > *limit {
                    problems.push(format!("{id} took {:.1?} (limit {limit:?})", r.runtime));
                }
            }
        }
        if let Some(f) = &c.extra {
            if let Err(e) = f(&report) {
                problems.push(e);
            }
        }
        let ok = problems.is_empty() && known.is_empty();
        println!("{}  criterion {:>2}: {}", if ok { "PASS" } else { "FAIL" }, n + 1, c.name);
        for p in &problems {
            println!("        {p}");
        }
        for k in &known {
            println!("        known: {k}");
        }
        unexpected += usize::from(!problems.is_empty());
    }
    println!("total run time {elapsed:.1?}; report exit code {}", report.exit_code());
    if unexpected == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
