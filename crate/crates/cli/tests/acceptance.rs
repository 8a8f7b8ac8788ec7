//! Acceptance criteria 1-11. Runs without the libtest harness so that the
//! per-criterion lines always reach the output; exits nonzero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use cocycles_cli::suite::{self, Options};
use cocycles_core::algebra::s4_span;
use cocycles_core::constructors::{sl, zassenhaus_der, RootType};
use cocycles_core::forms::{cyclic_forms, invariant_forms, z2_comm};
use cocycles_core::verify::{self, CheckReport, Verdict};
use cocycles_core::FieldSpec;

type Outcome = Result<String, String>;

/// Number, title, time limit in seconds, body.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime_with_override(p, true).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn all_pass(reports: &[CheckReport]) -> Result<(), String> {
    match reports.iter().find(|r| r.verdict != Verdict::Pass) {
        None => Ok(()),
        Some(r) => Err(format!("\n{}", r.to_table())),
    }
}

/// Run `f` and fail it if it takes longer than `limit`.
fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let out = f();
    let elapsed = t.elapsed();
    let out = match out {
        Ok(s) if elapsed > limit => Err(format!("{s}; took {elapsed:?}, limit {limit:?}")),
        other => other,
    };
    (out, elapsed)
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn c1() -> Outcome {
    let d = z2_comm(&sl(2, FieldSpec::rationals()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?
        .dim();
    ensure(d == 5, format!("dim Z2comm(sl2) = {d}"))?;
    Ok("dim Z2comm(sl2/Q) = 5".into())
}

fn c2() -> Outcome {
    let mut parts = Vec::new();
    for (p, n) in [(5u64, 1u32), (7, 1), (5, 2)] {
        let (r, _) = timed(secs(5), || {
            let r = verify::check_lemma_ad(fp(p), n).map_err(|e| e.to_string())?;
            all_pass(std::slice::from_ref(&r))?;
            let d = r.measured["dim_z2comm"].as_u64().unwrap();
            ensure(d == p.pow(n), format!("p={p} n={n}: dim {d}"))?;
            Ok(format!("W1({n})/F{p}: {d}, onto"))
        });
        parts.push(r?);
    }
    Ok(parts.join("; "))
}

fn c3() -> Outcome {
    let q = FieldSpec::rationals();
    let mut parts = Vec::new();
    let cases = [
        ("sl2/Q", sl(2, q).unwrap()),
        ("sl3/Q", sl(3, q).unwrap()),
        ("W1(1)/F5", zassenhaus_der(fp(5), 1).unwrap().algebra),
    ];
    for (name, l) in cases {
        let (r, _) = timed(secs(5), || {
            let d = cyclic_forms(&l).map_err(|e| e.to_string())?.dim();
            ensure(d == 0, format!("dim C({name}) = {d}"))?;
            Ok(format!("C({name}) = 0"))
        });
        parts.push(r?);
    }
    Ok(parts.join("; "))
}

fn c4() -> Outcome {
    let q = FieldSpec::rationals();
    let sl3 = sl(3, q).unwrap();
    let z = z2_comm(&sl3).map_err(|e| e.to_string())?.dim();
    let s4 = s4_span(&sl3).map_err(|e| e.to_string())?;
    ensure(
        z == 0 && s4.span.is_whole(),
        format!("sl3: Z {z}, s4 {}", s4.span.dim()),
    )?;
    for (name, l) in [
        ("sl2", sl(2, q).unwrap()),
        ("W1(1)/F5", zassenhaus_der(fp(5), 1).unwrap().algebra),
    ] {
        let z = z2_comm(&l).map_err(|e| e.to_string())?.dim();
        let s4 = s4_span(&l).map_err(|e| e.to_string())?.span.dim();
        ensure(z > 0 && s4 == 0, format!("{name}: Z {z}, s4 {s4}"))?;
    }
    let out = suite::run("deg5", &Options::default()).map_err(|e| e.to_string())?;
    all_pass(&out.reports)?;
    Ok("sl3: Z=0, s4=sl3; sl2, W1(1): Z>0, s4=0".into())
}

fn c5() -> Outcome {
    let out = suite::run("exact-seq", &Options::default()).map_err(|e| e.to_string())?;
    ensure(out.reports.len() == 6, "six fixtures")?;
    all_pass(&out.reports)?;
    Ok("u injective, Im u = Ker v, v lands in C(L) on 6 fixtures".into())
}

fn c6() -> Outcome {
    let out = suite::run("cor-curr", &Options::default()).map_err(|e| e.to_string())?;
    all_pass(&out.reports)?;
    let derived = out
        .reports
        .iter()
        .find(|r| r.inputs["L"] == "sl2" && r.inputs["A"] == "O1(1)" && r.inputs["field"] == "Fp:5")
        .ok_or("sl2 x O1(1) over F5 missing")?;
    let e = &derived.expectations[0];
    ensure(
        e.expected == 25 && e.measured == 25,
        format!("sl2 x O1(1): formula {}, direct {}", e.expected, e.measured),
    )?;
    Ok(format!(
        "{} instances; sl2 x O1(1)/F5: 25 = 25",
        out.reports.len()
    ))
}

fn c7() -> Outcome {
    let out = suite::run("semisimple", &Options::default()).map_err(|e| e.to_string())?;
    all_pass(&out.reports)?;
    let got: Vec<u64> = out
        .reports
        .iter()
        .map(|r| r.measured["dim_z2comm_extension"].as_u64().unwrap())
        .collect();
    ensure(got == [5, 7, 5], format!("dims {got:?}"))?;
    Ok("sl2/F5: 5, sl2/F7: 7, sl3/F5: 5".into())
}

fn c8() -> Outcome {
    let out = suite::run("dichotomy", &Options::default()).map_err(|e| e.to_string())?;
    all_pass(&out.reports)?;
    for r in &out.reports {
        let char3 = r.inputs["shape"].ends_with("Fp:3");
        let branch = r.measured["branch"].as_str().unwrap();
        let want = if char3 {
            "invariant forms"
        } else {
            "trivial cocycles"
        };
        ensure(
            branch == want,
            format!("{}: branch {branch}", r.inputs["shape"]),
        )?;
    }
    let b = invariant_forms(&zassenhaus_der(fp(3), 1).unwrap().algebra)
        .map_err(|e| e.to_string())?
        .dim();
    ensure(b == 1, format!("dim B(W1(1)/F3) = {b}"))?;
    Ok(format!(
        "{} fixture/field pairs; dim B(W1(1)/F3) = 1",
        out.reports.len()
    ))
}

fn c9() -> Outcome {
    let mut parts = Vec::new();
    for t in [RootType::A2, RootType::B2, RootType::G2] {
        let r = verify::check_char3_rank2(t).map_err(|e| e.to_string())?;
        ensure(r.verdict != Verdict::Fail, r.to_table())?;
        let z = r
            .expectations
            .iter()
            .find(|e| e.name == "dim Z2comm over F3")
            .map(|e| e.measured.clone())
            .unwrap();
        parts.push(format!("{t}: Z={z} ({})", r.verdict));
    }
    Ok(parts.join("; "))
}

fn c10() -> Outcome {
    let opts = Options::default();
    let mut reports = Vec::new();
    for c in ["lemma6", "perfect", "yaya-yoyo"] {
        reports.extend(suite::run(c, &opts).map_err(|e| e.to_string())?.reports);
    }
    ensure(
        reports.iter().all(|r| r.verdict != Verdict::Fail),
        format!(
            "{:?}",
            reports.iter().map(|r| r.verdict).collect::<Vec<_>>()
        ),
    )?;
    let with_xi = reports
        .iter()
        .filter(|r| r.check == "yaya-yoyo" && r.measured.contains_key("dim_z2comm_with_z"))
        .count();
    ensure(with_xi > 0, "no yaya-yoyo instance with nonzero xi")?;
    ensure(
        reports
            .iter()
            .any(|r| r.check == "yaya-yoyo" && r.inputs["derivations"] == "0"),
        "D = 0 instance missing",
    )?;
    ensure(
        reports
            .iter()
            .any(|r| r.check == "yaya-yoyo" && r.inputs["derivations"] == "1"),
        "D = K partial instance missing",
    )?;
    Ok(format!(
        "{} reports, {} with nonzero xi",
        reports.len(),
        with_xi
    ))
}

fn c11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_cocycles");
    let run = || {
        Command::new(bin)
            .args(["verify", "all", "--json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(
        a.status.code() == Some(0),
        format!("exit {:?}", a.status.code()),
    )?;
    ensure(!a.stdout.is_empty(), "empty report")?;
    ensure(a.stdout == b.stdout, "reports differ")?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "Z2comm(sl2) = 5", 1, c1),
        (2, "Z2comm(W1(n)) = p^n, embedding onto", 15, c2),
        (3, "no cyclic forms on simple fixtures", 15, c3),
        (4, "degree-5 identity equivalence", 30, c4),
        (5, "exact sequence", 30, c5),
        (6, "current-algebra dimension identity", 60, c6),
        (7, "semisimple extension theorem", 120, c7),
        (8, "characteristic-3 dichotomy", 60, c8),
        (9, "rank-2 Chevalley algebras over F3", 300, c9),
        (10, "finite-scale extension lemmas", 120, c10),
        (11, "deterministic reports", 600, c11),
    ];
    let mut failed = 0;
    for (n, title, limit, f) in criteria {
        let (out, elapsed) = timed(secs(limit), f);
        match out {
            Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail} [{elapsed:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {title}: {why} [{elapsed:.2?}]");
            }
        }
    }
    println!("acceptance: {} of 11 criteria pass", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
