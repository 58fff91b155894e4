//! One line per acceptance criterion. Every comparison is exact equality.

use sl4cube::polyspace::checks;
use sl4cube::report::VerificationReport;
use sl4cube::specialfn;
use sl4cube::suites::{self, Fault, Suite, SuiteConfig};
use std::process::ExitCode;
use std::time::{Duration, Instant};

fn cfg() -> SuiteConfig {
    SuiteConfig::default()
}

fn gather(
    ns: std::ops::RangeInclusive<u32>,
    f: impl Fn(u32) -> VerificationReport,
) -> VerificationReport {
    let mut rep = VerificationReport::new();
    for n in ns {
        rep.extend(f(n));
    }
    rep
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_report(rep: &VerificationReport) -> Outcome {
    let fails: Vec<String> = rep
        .failures()
        .map(|c| format!("{}: {}", c.id, c.witness.as_deref().unwrap_or("")))
        .collect();
    let skipped = rep
        .checks
        .iter()
        .filter(|c| c.status == sl4cube::report::Status::Skipped)
        .count();
    Outcome {
        ok: fails.is_empty() && !rep.checks.is_empty(),
        detail: if fails.is_empty() {
            format!("{} checks, {skipped} skipped", rep.checks.len())
        } else {
            format!("{} failures, first {}", fails.len(), fails[0])
        },
    }
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let rep = suites::run_sl4(&cfg());
    let mut out = from_report(&rep);
    let inverse = rep
        .checks
        .iter()
        .filter(|c| c.id.starts_with("sl4.inverse."))
        .count();
    let elapsed = start.elapsed();
    out.ok &= inverse == 15 && elapsed < Duration::from_secs(1);
    out.detail = format!("{}, {inverse} inverse formulas, {elapsed:.2?}", out.detail);
    out
}

fn criterion2() -> Outcome {
    from_report(&gather(0..=5, |n| {
        let mut rep = checks::check_operator_identities(n);
        rep.extend(checks::check_forms(n));
        rep.extend(checks::check_structure(n));
        rep
    }))
}

fn criterion3() -> Outcome {
    // genfunc at N ≤ 4, recurrences and the 𝒫∨ identities well past N = 3
    from_report(&gather(0..=4, |n| suites::run_special(n, &cfg())))
}

fn criterion4() -> Outcome {
    from_report(&gather(0..=6, |n| {
        let fam = specialfn::krawtchouk(n);
        let mut rep = specialfn::check_krawtchouk_family(&fam);
        for i in 1..=3 {
            rep.extend(checks::check_decomposition(i, n, &fam));
        }
        rep
    }))
}

fn criterion5() -> Outcome {
    from_report(&gather(0..=6, |n| suites::run_cube(n, &cfg())))
}

fn criterion6() -> Outcome {
    let rep = gather(0..=4, |n| suites::run_tensor(n, &cfg()));
    let mut out = from_report(&rep);
    // oracles must have run, not been skipped, through N = 3
    let oracle_ran = (0..=3).all(|n| {
        ["tensor.action_oracle", "tensor.orbits"].iter().all(|id| {
            rep.checks
                .iter()
                .any(|c| c.id == format!("{id}.N{n}") && c.status == sl4cube::report::Status::Pass)
        })
    });
    out.ok &= oracle_ran;
    out
}

fn criterion7() -> Outcome {
    from_report(&gather(0..=5, |n| suites::run_correspond(n, &cfg())))
}

fn criterion8() -> Outcome {
    let cases = [
        (Fault::CorruptGenerator, Suite::Sl4),
        (Fault::CorruptCalpSign, Suite::Special),
        (Fault::CorruptKrawtchouk, Suite::Special),
        (Fault::CorruptKrawtchouk, Suite::Poly),
        (Fault::CorruptKrawtchouk, Suite::Cube),
    ];
    let mut caught = Vec::new();
    let mut ok = true;
    for (fault, suite) in cases {
        let c = SuiteConfig {
            n_max: 3,
            suites: vec![suite],
            fault: Some(fault),
            ..cfg()
        };
        let rep = suites::run(&c);
        match rep.failures().next() {
            Some(f) if f.witness.is_some() => {
                caught.push(format!("{}/{suite} -> {}", fault.name(), f.id))
            }
            _ => {
                ok = false;
                caught.push(format!("{}/{suite} undetected", fault.name()));
            }
        };
    }
    Outcome {
        ok,
        detail: caught.join("; "),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("presentation", criterion1),
        ("polynomial module N=0..5", criterion2),
        ("transition coefficients", criterion3),
        ("decomposition N<=6", criterion4),
        ("hypercube and T N<=6", criterion5),
        ("fixed space N<=4", criterion6),
        ("correspondences N<=5", criterion7),
        ("negative controls", criterion8),
    ];
    let mut all = true;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        all &= out.ok;
        println!(
            "criterion {} [{name}]: {} (tolerance 0, {:.1?}) {}",
            k + 1,
            if out.ok { "PASS" } else { "FAIL" },
            start.elapsed(),
            out.detail
        );
    }
    let start = Instant::now();
    let rep = suites::run(&cfg());
    let elapsed = start.elapsed();
    let full_ok = rep.all_passed() && elapsed < Duration::from_secs(60);
    all &= full_ok;
    println!(
        "full default suite (n_max=5, oracle_n_max=3): {} ({} checks in {elapsed:.1?})",
        if full_ok { "PASS" } else { "FAIL" },
        rep.checks.len()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
