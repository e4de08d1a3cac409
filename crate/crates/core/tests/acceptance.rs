//! Acceptance run. Prints one PASS/FAIL line per criterion and exits
//! non-zero when a criterion outside `KNOWN_FAILURES` fails.

#![allow(clippy::absurd_extreme_comparisons)]

use std::process::ExitCode;

use gturan_core::constructions::{build, FamilySpec};
use gturan_core::harness::CellStatus;
use gturan_core::oracle::{
    inducibility_k, inducibility_k_quoted, star_count_bipartite, table, Kind, Validity,
};
use gturan_core::search::{enumerate_f_free, max_copies};
use gturan_core::{
    blowup_contains, contains_subgraph, count_copies, count_copies_fast, count_induced, lookup,
    run_preserving_independent_set, run_to_multipartite, verify_table, Graph, PatternId,
    VerificationReport,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use PatternId::*;

/// Largest `n` of the table sweep.
const SWEEP_N: usize = 9;
/// Allowed absolute difference between exact counts.
const EXACT_TOLERANCE: u128 = 0;
/// Allowed violations in the property sweeps.
const MAX_VIOLATIONS: usize = 0;
const RANDOM_GRAPHS: usize = 1000;
const RANDOM_MAX_N: usize = 12;
const DENSITIES: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
const SYMMETRIZATION_RUNS: usize = 500;
const SYMMETRIZATION_MAX_N: usize = 10;
const ENUMERATION_MAX_N: usize = 8;
const ARGMAX_RANGE: std::ops::RangeInclusive<usize> = 20..=200;
const SEED: u64 = 0x5eed_2024;

/// Criteria whose literal statement is false; reported as FAIL without
/// failing the run. See the message printed for each.
const KNOWN_FAILURES: &[u32] = &[10];

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
}

fn outcome(id: u32, pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        id,
        pass,
        detail: detail.into(),
    }
}

fn close(a: u128, b: u128) -> bool {
    a.abs_diff(b) <= EXACT_TOLERANCE
}

fn c(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn criterion_1(report: &VerificationReport) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for cell in &report.cells {
        if cell.kind != Kind::Exact || cell.validity != Validity::AllN {
            continue;
        }
        checked += 1;
        for row in &cell.rows {
            let o = row.oracle.exact().expect("exact cell");
            if !close(o, row.search) {
                bad.push(format!(
                    "{}/{} n={} oracle {o} search {}",
                    cell.h, cell.f, row.n, row.search
                ));
            }
        }
    }
    for (h, f, n, want) in [
        (K3, T1, 9, 3),
        (M2, S4, 9, 27),
        (S4, C4, 9, c(8, 3)),
        (M2, P3, 9, c(4, 2)),
    ] {
        let row = report
            .cell(h, f)
            .expect("cell")
            .rows
            .iter()
            .find(|r| r.n == n)
            .expect("row");
        if !close(row.search, want) {
            bad.push(format!(
                "{h}/{f} n={n} search {} expected {want}",
                row.search
            ));
        }
    }
    outcome(
        1,
        bad.is_empty() && report.passed(),
        format!(
            "{checked} exact all-n cells, n <= {SWEEP_N}, {:.1}s; {}",
            report.timing.total_seconds,
            if bad.is_empty() {
                "no mismatch".into()
            } else {
                bad.join("; ")
            }
        ),
    )
}

fn criterion_2(report: &VerificationReport) -> Outcome {
    let cell = report.cell(M2, P4).expect("cell");
    let row = cell.rows.iter().find(|r| r.n == 4).expect("n=4 row");
    let d34 = build(&FamilySpec::DGraph { k: 3, n: 4 }).unwrap();
    let in_d = count_copies(&M2.graph(), &d34).unwrap().get();
    let pass = row.oracle.exact() == Some(1)
        && close(row.search, 1)
        && in_d == 0
        && cell.status == CellStatus::Agree;
    outcome(
        2,
        pass,
        format!(
            "ex(4,M2,P4): oracle {}, search {}, N(M2,D(3,4)) = {in_d}",
            row.oracle, row.search
        ),
    )
}

fn criterion_3(report: &VerificationReport) -> Outcome {
    let mut bad = Vec::new();
    for n in 5..=SWEEP_N {
        let p3 = max_copies(P3, C4, n).unwrap().maximum.get();
        let want = c(n, 2) - (n % 2 == 0) as u128;
        if !close(p3, want) {
            bad.push(format!("P3/C4 n={n}: {p3} vs {want}"));
        }
        let t1 = max_copies(T1, C4, n).unwrap().maximum.get();
        let friendship = build(&FamilySpec::Friendship { n }).unwrap();
        let in_f = count_copies(&T1.graph(), &friendship).unwrap().get();
        if !close(t1, in_f) {
            bad.push(format!("T1/C4 n={n}: {t1} vs N(T1,F(n)) {in_f}"));
        }
    }
    let documented = report
        .cell(T1, C4)
        .expect("cell")
        .notes
        .iter()
        .any(|s| s.contains("C(n,2)-2n-3"));
    if !documented {
        bad.push("even-n display discrepancy missing from the report".into());
    }
    outcome(
        3,
        bad.is_empty(),
        if bad.is_empty() {
            "P3/C4 and T1/C4 reproduced for n = 5..9; even-n display note present".into()
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_4(report: &VerificationReport) -> Outcome {
    let mut bad = Vec::new();
    let mut found = Vec::new();
    let large: Vec<(PatternId, PatternId)> = report
        .cells
        .iter()
        .filter(|c| matches!(c.validity, Validity::NLargeEnough(_)))
        .map(|c| (c.h, c.f))
        .collect();
    for &(h, f) in &large {
        let cell = report.cell(h, f).unwrap();
        match cell.measured_threshold {
            Some(n0) if n0 <= SWEEP_N => found.push(format!("{h}/{f}:{n0}")),
            other => bad.push(format!("{h}/{f} threshold {other:?}")),
        }
        if cell.threshold_matches_recorded != Some(true) {
            bad.push(format!("{h}/{f} differs from the bundled threshold"));
        }
    }
    let pb = report.cell(P3, B2).unwrap();
    if !pb.disagreements.contains(&(5, 10, 9)) {
        bad.push(format!("P3/B2 disagreements {:?}", pb.disagreements));
    }
    let n0 = pb.measured_threshold.unwrap_or(usize::MAX);
    if pb.rows.iter().any(|r| r.n >= n0 && r.agrees != Some(true)) {
        bad.push("P3/B2 disagrees above its threshold".into());
    }
    let rerun = verify_table(SWEEP_N, Some(&large)).unwrap();
    if rerun.thresholds_json() != report.thresholds_json() {
        bad.push("thresholds changed on rerun".into());
    }
    outcome(
        4,
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "{} cells, stable on rerun: {}",
                large.len(),
                found.join(" ")
            )
        } else {
            bad.join("; ")
        },
    )
}

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    for i in 0..RANDOM_GRAPHS {
        let n = rng.gen_range(1..=RANDOM_MAX_N);
        let g = random_graph(n, DENSITIES[i % DENSITIES.len()], &mut rng);
        for p in PatternId::ALL {
            let slow = count_copies(&p.graph(), &g).unwrap().get();
            let fast = count_copies_fast(p, &g).get();
            if !close(slow, fast) {
                bad.push(format!("{p} in {g}: {fast} vs {slow}"));
            }
        }
    }
    outcome(
        5,
        bad.len() <= MAX_VIOLATIONS,
        format!(
            "{RANDOM_GRAPHS} graphs x 10 patterns, {} disagreements {}",
            bad.len(),
            bad.join("; ")
        ),
    )
}

/// Random `K_r`-free graph: edges offered in random order, each kept with
/// probability `p` unless it closes a clique of order `r` (3 or 4).
fn random_clique_free(n: usize, r: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let mut g = Graph::empty(n).unwrap();
    for (u, v) in pairs {
        if !rng.gen_bool(p) {
            continue;
        }
        let common: Vec<usize> = (0..n)
            .filter(|&w| g.has_edge(u, w) && g.has_edge(v, w))
            .collect();
        let closes = match r {
            3 => !common.is_empty(),
            _ => common
                .iter()
                .any(|&a| common.iter().any(|&b| g.has_edge(a, b))),
        };
        if !closes {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

fn random_independent_set(g: &Graph, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(rng);
    let mut a: Vec<usize> = Vec::new();
    for v in order {
        if a.iter().all(|&x| !g.has_edge(x, v)) {
            a.push(v);
        }
    }
    let keep = rng.gen_range(1..=a.len());
    a.truncate(keep);
    a.sort();
    a
}

fn criterion_6() -> Outcome {
    const TARGETS: [PatternId; 6] = [K2, P3, K3, C4, S4, B2];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut violations = Vec::new();
    let mut steps = 0;
    for i in 0..SYMMETRIZATION_RUNS {
        let r = if i % 2 == 0 { 3 } else { 4 };
        let clique = if r == 3 { K3.graph() } else { K4.graph() };
        let n = rng.gen_range(2..=SYMMETRIZATION_MAX_N);
        let p = DENSITIES[rng.gen_range(0..DENSITIES.len())];
        let g = random_clique_free(n, r, p, &mut rng);
        let h = TARGETS[i % TARGETS.len()];
        let a = random_independent_set(&g, &mut rng);
        let plain = run_to_multipartite(&g, h).unwrap();
        let kept = run_preserving_independent_set(&g, h, &a).unwrap();
        for (label, trace) in [("plain", &plain), ("preserving", &kept)] {
            let graphs = trace.replay();
            steps += trace.steps.len();
            let mut last = 0;
            for (k, x) in graphs.iter().enumerate() {
                if contains_subgraph(x, &clique) {
                    violations.push(format!("run {i} {label}: K{r} after step {k}"));
                }
                let cnt = count_copies(&h.graph(), x).unwrap().get();
                if k > 0 && cnt < last {
                    violations.push(format!("run {i} {label}: {h} count dropped at step {k}"));
                }
                last = cnt;
                if label == "preserving" && !x.is_independent(&a) {
                    violations.push(format!("run {i}: set {a:?} broken at step {k}"));
                }
            }
            if !trace.final_graph.is_complete_multipartite() {
                violations.push(format!(
                    "run {i} {label}: final graph not complete multipartite"
                ));
            }
        }
    }
    outcome(
        6,
        violations.len() <= MAX_VIOLATIONS,
        format!(
            "{SYMMETRIZATION_RUNS} starts, {steps} steps, {} violations {}",
            violations.len(),
            violations
                .iter()
                .take(5)
                .cloned()
                .collect::<Vec<_>>()
                .join("; ")
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut full = 0;
    for e in table() {
        let contained = blowup_contains(&e.h.graph(), &e.f.graph(), e.f.vertex_count()).unwrap();
        let full_growth = e.kind == Kind::Exact && e.witness.is_some_and(|w| w.full_order_growth());
        full += full_growth as usize;
        if contained == full_growth {
            bad.push(format!("{}/{}", e.h, e.f));
        }
    }
    for (h, f) in [(K3, B2), (T1, B2), (K3, T1), (K3, S4)] {
        if !blowup_contains(&h.graph(), &f.graph(), f.vertex_count()).unwrap() {
            bad.push(format!("{h}/{f} should contain"));
        }
    }
    outcome(
        7,
        bad.is_empty(),
        format!("100 cells, {full} with full-order growth, incoherent: {bad:?}"),
    )
}

fn criterion_8() -> Outcome {
    let mut graphs = 0;
    let mut bad = Vec::new();
    for n in 1..=ENUMERATION_MAX_N {
        for g in enumerate_f_free(n, Some(C4), false).unwrap() {
            graphs += 1;
            let e = g.edge_count() as u128;
            let p4 = count_copies(&P4.graph(), &g).unwrap().get();
            let k3 = count_copies(&K3.graph(), &g).unwrap().get();
            if 2 * p4 > n as u128 * e || 3 * k3 > e {
                bad.push(format!("{g}: P4 {p4}, K3 {k3}, e {e}"));
            }
        }
    }
    outcome(
        8,
        bad.len() <= MAX_VIOLATIONS,
        format!(
            "{graphs} C4-free graphs, n <= {ENUMERATION_MAX_N}, {} violations {}",
            bad.len(),
            bad.join("; ")
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut graphs = 0;
    let mut bad = Vec::new();
    let ind = |p: PatternId, g: &Graph| count_induced(&p.graph(), g).unwrap().get();
    for n in 1..=ENUMERATION_MAX_N {
        for g in enumerate_f_free(n, Some(K4), false).unwrap() {
            graphs += 1;
            let (a, b, c, d, e) = (
                ind(B2, &g),
                ind(C4, &g),
                ind(T1, &g),
                ind(P4, &g),
                ind(M2, &g),
            );
            let m2 = count_copies(&M2.graph(), &g).unwrap().get();
            let p4 = count_copies(&P4.graph(), &g).unwrap().get();
            if m2 != 2 * a + 2 * b + c + d + e || p4 != 6 * a + 4 * b + 2 * c + d {
                bad.push(format!("{g}"));
            }
        }
    }
    outcome(
        9,
        bad.len() <= MAX_VIOLATIONS,
        format!(
            "{graphs} K4-free graphs, n <= {ENUMERATION_MAX_N}, {} violations {}",
            bad.len(),
            bad.join("; ")
        ),
    )
}

fn argmax(n: usize) -> Vec<usize> {
    let best = (0..=n / 2)
        .map(|a| star_count_bipartite(a, n))
        .max()
        .unwrap();
    (0..=n / 2)
        .filter(|&a| star_count_bipartite(a, n) == best)
        .collect()
}

fn argmax_misses(k: impl Fn(usize) -> Option<usize>) -> Vec<usize> {
    ARGMAX_RANGE
        .filter(|&n| {
            let k = k(n).unwrap();
            argmax(n).iter().any(|&a| a != k && a != k + 1)
        })
        .collect()
}

/// Prints the literal statement's outcome and, alongside it, the outcome
/// with the square root taken of `3n-4` alone.
fn criterion_10() -> Outcome {
    let quoted = argmax_misses(inducibility_k_quoted);
    let corrected = argmax_misses(inducibility_k);
    let total = ARGMAX_RANGE.count();
    let example = quoted.first().map(|&n| {
        format!(
            "n={n}: k={} but argmax {:?}",
            inducibility_k_quoted(n).unwrap(),
            argmax(n)
        )
    });
    outcome(
        10,
        quoted.is_empty(),
        format!(
            "k = floor(n/2 - sqrt((3n-4)/2)) misses the maximizer for {}/{total} n ({}); \
             k = floor(n/2 - sqrt(3n-4)/2) misses it for {}/{total} n",
            quoted.len(),
            example.unwrap_or_default(),
            corrected.len()
        ),
    )
}

/// Asymptotic and bounds cells: ratio table plus the RS witness check.
fn ratio_cells(report: &VerificationReport) -> Outcome {
    let mut ok = true;
    for cell in report
        .cells
        .iter()
        .filter(|c| c.status == CellStatus::RatioOnly)
    {
        let ratios: Vec<String> = cell
            .rows
            .iter()
            .map(|r| match r.ratio {
                Some(x) if x.is_finite() && x > 0.0 => format!("{}:{x:.3}", r.n),
                _ => {
                    ok = false;
                    format!("{}:-", r.n)
                }
            })
            .collect();
        println!(
            "      {}/{} {}  {}",
            cell.h,
            cell.f,
            lookup(cell.h, cell.f).formula(),
            ratios.join(" ")
        );
    }
    let mut rs_bad = Vec::new();
    for m in 1..=12 {
        let g = build(&FamilySpec::RSTriangleGraph { m }).unwrap();
        if g.edges().any(|(u, v)| g.codegree(u, v) != 1) {
            rs_bad.push(m);
        }
    }
    outcome(
        0,
        ok && rs_bad.is_empty(),
        format!("ratios tabulated above; RS graphs m = 1..12 with an edge outside exactly one triangle: {rs_bad:?}"),
    )
}

fn report_line(o: &Outcome) -> bool {
    let name = if o.id == 0 {
        "ratio cells".to_string()
    } else {
        format!("criterion {}", o.id)
    };
    let known = KNOWN_FAILURES.contains(&o.id);
    println!(
        "{} {name}: {}{}",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail,
        if !o.pass && known {
            " [known failure of the statement as written]"
        } else {
            ""
        }
    );
    o.pass || known
}

fn main() -> ExitCode {
    let report = verify_table(SWEEP_N, None).expect("sweep within budget");
    let criteria: [&dyn Fn() -> Outcome; 11] = [
        &|| criterion_1(&report),
        &|| criterion_2(&report),
        &|| criterion_3(&report),
        &|| criterion_4(&report),
        &criterion_5,
        &criterion_6,
        &criterion_7,
        &criterion_8,
        &criterion_9,
        &criterion_10,
        &|| ratio_cells(&report),
    ];
    let mut ok = true;
    for run in criteria {
        ok &= report_line(&run());
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
