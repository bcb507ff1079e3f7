//! Acceptance criteria, run without the test harness so that every
//! criterion prints its `PASS`/`FAIL` line. Exits non-zero if any fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypertight::combin::binom;
use hypertight::constructions::{ck_closed_form, ck_witness, gen_split_kgraph, split_edge_count};
use hypertight::extremal::{connection_partition, emc_formula, emc_max_edges, mu_bruteforce, partition_profile};
use hypertight::hypergraph::distinguishable;
use hypertight::localstruct::fact::{five_eighths, rational_sigma_grid, FACT_TRIPLES};
use hypertight::localstruct::{
    check_fact, check_monotonicity, validate_config, verify_local_structure, SearchMode, VerifyOptions,
};
use hypertight::matchcycle::{has_tight_hamilton, max_matching, SearchLimits, Verdict};
use hypertight::shifting::{is_left_shifted, left_shift_closure, shift, shift_pair};
use hypertight::{ColouredPair, Hypergraph, Vertex};

fn report(name: &str, ok: bool, detail: String) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn fact_reproduction() -> bool {
    let start = Instant::now();
    let rep = check_fact(&FACT_TRIPLES, 1e-3, 1e-9).unwrap();
    let elapsed = start.elapsed();
    let attaining: Vec<_> = rep
        .rows
        .iter()
        .filter(|r| [(6, 10, 23), (6, 11, 22), (6, 12, 21)].contains(&r.spt))
        .collect();
    let attain_ok = attaining.len() == 3
        && attaining.iter().all(|r| {
            r.at_quarter == five_eighths()
                && (r.max.value - 0.625).abs() <= 1e-9
                && (r.max.argmax - 0.25).abs() <= 1e-9
        });
    let worst = rep.rows.iter().map(|r| r.max.value).fold(f64::NEG_INFINITY, f64::max);
    let ok = rep.all_pass() && attain_ok && elapsed < Duration::from_secs(1);
    report(
        "fact: max of f_{s,p,t} over the sigma range <= 5/8 for all 11 triples",
        ok,
        format!("worst={worst:.12} three_attain_5/8_at_1/4={attain_ok} elapsed={elapsed:?}"),
    );
    ok
}

fn monotonicity() -> bool {
    let start = Instant::now();
    let grid = rational_sigma_grid(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f6e6f);
    let mut rand_q = |hi: i64| q(rng.gen_range(0..=hi * 8), rng.gen_range(1..=8));
    let (mut checks, mut violations) = (0, 0);
    for _ in 0..100 {
        let (s, p, t, x) = (rand_q(12), rand_q(24), rand_q(27), rand_q(6));
        assert!(!x.is_negative());
        let r = check_monotonicity(&s, &p, &t, &[x], &grid).unwrap();
        checks += r.checks;
        violations += r.violations.len();
    }
    let elapsed = start.elapsed();
    let ok = violations == 0 && checks == 100_000 && elapsed < Duration::from_secs(1);
    report(
        "monotonicity: f_{s,p+x,t} <= f_{s+x,p,t} on a 1000-point grid, 100 random tuples",
        ok,
        format!("checks={checks} violations={violations} elapsed={elapsed:?}"),
    );
    ok
}

fn local_structure_verification() -> bool {
    let start = Instant::now();
    let opts = VerifyOptions { mode: SearchMode::Primary, sigma_step: 1e-3, tol: 1e-9, workers: 8 };
    let v = verify_local_structure(&opts).unwrap();
    let elapsed = start.elapsed();
    let in_range = v.max_value >= 0.625 - 1e-6 && v.max_value <= 0.625 + 1e-9;
    let witness_ok = validate_config(&v.witness).is_valid() && (v.max_value - 0.625).abs() <= 1e-6;
    let claim = |needle: &str| v.claims.iter().find(|c| c.name.contains(needle)).is_some_and(|c| c.passed);
    let pair = v.claims.iter().find(|c| c.name.contains("at most 6")).unwrap();
    let claims_ok = claim("at most 6")
        && pair.detail.contains("max=6 ")
        && claim("two largest k")
        && claim("at most 23 red triples");
    let ok = in_range
        && witness_ok
        && v.exceeding == 0
        && claims_ok
        && v.passed()
        && elapsed < Duration::from_secs(30 * 60);
    report(
        "local structure: every admissible configuration has value <= 5/8",
        ok,
        format!(
            "configurations={} max={:.12} exceeding={} witness=(q1={}, q2={}, t={}) exact_at_1/4={} claims_ok={} elapsed={:?}",
            v.configurations,
            v.max_value,
            v.exceeding,
            v.witness_point.0,
            v.witness_point.1,
            v.witness_point.2,
            v.witness_at_quarter,
            claims_ok,
            elapsed
        ),
    );
    for c in &v.claims {
        println!("    {} {} [{}]", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
    }
    ok
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Hypergraph {
    let mut edges = Vec::new();
    for a in 1..=n as Vertex {
        for b in a + 1..=n as Vertex {
            for c in b + 1..=n as Vertex {
                if rng.gen_bool(p) {
                    edges.push([a, b, c]);
                }
            }
        }
    }
    Hypergraph::new(3, n, edges).unwrap()
}

/// A red graph plus blue triples containing no pair of the red shadow.
fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> ColouredPair {
    let density = rng.gen_range(0.02..0.25);
    let red = random_graph(rng, n, density);
    let shadow = red.shadow().unwrap();
    let mut blue = Vec::new();
    for a in 1..=n as Vertex {
        for b in a + 1..=n as Vertex {
            for c in b + 1..=n as Vertex {
                let free = [[a, b], [a, c], [b, c]].iter().all(|p| !shadow.contains_vertices(p));
                if free && rng.gen_bool(0.5) {
                    blue.push([a, b, c]);
                }
            }
        }
    }
    ColouredPair::new(red, Hypergraph::new(3, n, blue).unwrap()).unwrap()
}

fn shifting_properties() -> bool {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5348);
    let none = SearchLimits::none();
    let (mut count_bad, mut matching_bad, mut shadow_bad, mut dist_bad) = (0, 0, 0, 0);
    for _ in 0..10_000 {
        let n = rng.gen_range(4..=12);
        let density = rng.gen_range(0.02..0.3);
        let g = random_graph(&mut rng, n, density);
        let i = rng.gen_range(1..=n as Vertex);
        let mut j = rng.gen_range(1..=n as Vertex);
        while j == i {
            j = rng.gen_range(1..=n as Vertex);
        }
        let h = shift(&g, i, j).unwrap();
        count_bad += usize::from(h.edge_count() != g.edge_count());
        let (mg, mh) = (max_matching(&g, &none), max_matching(&h, &none));
        matching_bad += usize::from(!(mg.optimal && mh.optimal) || mh.matching.len() > mg.matching.len());
        let c = left_shift_closure(&g).result;
        shadow_bad += usize::from(!is_left_shifted(&c) || !is_left_shifted(&c.shadow().unwrap()));
    }
    for _ in 0..10_000 {
        let n = rng.gen_range(4..=12);
        let p = random_pair(&mut rng, n);
        assert!(p.is_distinguishable());
        let i = rng.gen_range(1..n as Vertex);
        let j = rng.gen_range(i + 1..=n as Vertex);
        let s = shift_pair(&p, i, j).unwrap();
        dist_bad += usize::from(!distinguishable(&s.red, &s.blue).unwrap());
    }
    let elapsed = start.elapsed();
    let ok = count_bad + matching_bad + shadow_bad + dist_bad == 0 && elapsed < Duration::from_secs(300);
    report(
        "shifting: edge count, matching number, distinguishability, shifted shadows",
        ok,
        format!(
            "edge_count_violations={count_bad} matching_violations={matching_bad} \
             distinguishability_violations={dist_bad} shadow_violations={shadow_bad} elapsed={elapsed:?}"
        ),
    );
    ok
}

fn emc_desk_scale() -> bool {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut cases = 0;
    for n in 3..=9 {
        for s in 1..=n / 3 {
            cases += 1;
            let r = emc_max_edges(n, s, 0).unwrap();
            let formula = emc_formula(n, s);
            let m = max_matching(&r.witness, &SearchLimits::none()).matching.len();
            if r.value as u128 != formula || r.witness.edge_count() != r.value || m > s {
                mismatches.push((n, s, r.value, formula));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = mismatches.is_empty() && elapsed < Duration::from_secs(3600);
    report(
        "emc: largest 3-graph with matching number <= s equals the closed form, n <= 9",
        ok,
        format!("cases={cases} mismatches={mismatches:?} elapsed={elapsed:?}"),
    );
    ok
}

/// Matching number of a 3-graph given by triple masks, for n <= 8 (so at
/// most two disjoint triples).
fn matching_number_small(edges: &[u16]) -> usize {
    if edges.is_empty() {
        return 0;
    }
    for (x, &a) in edges.iter().enumerate() {
        if edges[x + 1..].iter().any(|&b| a & b == 0) {
            return 2;
        }
    }
    1
}

/// All red graphs on `{1..n}`; for each, the best blue graph is every triple
/// containing no pair of the red shadow. Returns `mu[s][t]`.
fn mu_oracle(n: usize) -> Vec<Vec<Option<u64>>> {
    let triples: Vec<[usize; 3]> = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
        .collect();
    let pair_id = |a: usize, b: usize| a * n + b;
    let pmask: Vec<u64> = triples
        .iter()
        .map(|&[a, b, c]| 1 << pair_id(a, b) | 1 << pair_id(a, c) | 1 << pair_id(b, c))
        .collect();
    let vmask: Vec<u16> = triples.iter().map(|t| t.iter().fold(0, |m, &v| m | 1 << v)).collect();
    let total = triples.len();
    let smax = n / 3;
    let mut best = vec![vec![None::<u64>; total + 1]; smax + 1];
    let mut red = Vec::with_capacity(total);
    for mask in 0u32..1 << total {
        red.clear();
        let mut shadow = 0u64;
        for x in 0..total {
            if mask >> x & 1 == 1 {
                red.push(vmask[x]);
                shadow |= pmask[x];
            }
        }
        let m = matching_number_small(&red);
        let e = red.len();
        let blue = (0..total).filter(|&x| pmask[x] & shadow == 0).count();
        let v = (e + blue) as u64;
        for s in m..=smax {
            for t in 0..e {
                let cell = &mut best[s][t];
                if cell.is_none_or(|c| v > c) {
                    *cell = Some(v);
                }
            }
        }
    }
    best
}

fn mu_oracle_equivalence() -> bool {
    let start = Instant::now();
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for n in [5, 6] {
        let oracle = mu_oracle(n);
        for s in 0..=n / 3 {
            for t in 0..=binom(n as u64, 3) as u64 {
                let got = mu_bruteforce(n, s, t, 0).unwrap().value;
                let want = if s == 0 { None } else { oracle[s][t as usize] };
                compared += 1;
                if got != want {
                    mismatches.push((n, s, t, got, want));
                }
            }
        }
    }
    let ok = mismatches.is_empty();
    report(
        "mu: shifted search equals unrestricted brute force at n = 5, 6",
        ok,
        format!("cases={compared} mismatches={mismatches:?} elapsed={:?}", start.elapsed()),
    );
    ok
}

fn constructions() -> bool {
    let start = Instant::now();
    let mut problems = Vec::new();
    for (k, a) in [(3, 1), (4, 2)] {
        for m in 3..=8 {
            let g = gen_split_kgraph(k, m, m, a).unwrap();
            let comps = g.tight_component_indices().len();
            if comps != 2 {
                problems.push(format!("k={k} m={m} components={comps}"));
            }
            if g.edge_count() as u128 != split_edge_count(k, m, m, a) {
                problems.push(format!("k={k} m={m} edge count"));
            }
            if m <= 4 {
                let h = has_tight_hamilton(&g, &SearchLimits::none()).unwrap();
                if h.verdict != Verdict::No {
                    problems.push(format!("k={k} m={m} hamilton={}", h.verdict.as_str()));
                }
            }
        }
    }
    for k in 3..=5 {
        for m in k..=9 {
            if ck_witness(k, m, m).unwrap() != ck_closed_form(k, m, m) {
                problems.push(format!("density witness k={k} m={m}"));
            }
        }
    }
    let gap = |m: usize| (ck_closed_form(3, m, m).edge_density - q(5, 8)).abs();
    let first_within = (3..=40).find(|&m| gap(m) < q(1, 100));
    if gap(40) >= q(1, 100) {
        problems.push(format!("density at m=40 is {}", ck_closed_form(3, 40, 40).edge_density));
    }
    let ok = problems.is_empty();
    report(
        "constructions: two tight components, no tight Hamilton cycle, exact densities",
        ok,
        format!(
            "problems={problems:?} density_m40={} first_m_within_0.01={first_within:?} elapsed={:?}",
            ck_closed_form(3, 40, 40).edge_density,
            start.elapsed()
        ),
    );
    ok
}

/// Random descending component sizes meeting the three hypotheses.
fn random_profile(rng: &mut ChaCha8Rng) -> Option<(usize, Vec<usize>, BigRational)> {
    let n = rng.gen_range(8..=80);
    let total = binom(n as u64, 3) as i64;
    let eps = q(rng.gen_range(1..=59), 960); // 0 < ε < 1/16
    let c = BigRational::from_integer(total.into());
    let lo = ((q(5, 8) + &eps) * &c).ceil().to_integer();
    let hi = ((q(5, 8) + &eps * BigInt::from(2)) * &c).floor().to_integer();
    if lo > hi {
        return None;
    }
    let e: i64 = rng.gen_range(lo.try_into().unwrap()..=hi.try_into().unwrap());
    // largest component strictly below (1/2+ε) C
    let cap_big = ((q(1, 2) + &eps) * &c).ceil().to_integer() - BigInt::one();
    let cap: i64 = cap_big.try_into().unwrap();
    let mut left = e;
    let mut sizes = Vec::new();
    while left > 0 {
        let s = rng.gen_range(1..=left.min(cap));
        sizes.push(s as usize);
        left -= s;
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Some((n, sizes, eps))
}

fn connection_partition_criterion() -> bool {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x636f6e6e);
    let (mut profiles, mut profile_failures) = (0, 0);
    while profiles < 1000 {
        let Some((n, sizes, eps)) = random_profile(&mut rng) else { continue };
        let c = partition_profile(n, &sizes, &eps).unwrap();
        assert!(c.hypotheses_hold(), "generator produced a profile outside the hypotheses");
        profiles += 1;
        profile_failures += usize::from(!c.conclusions_hold());
    }
    let (mut graphs, mut realized, mut graph_failures, mut undistinguishable) = (0, 0, 0, 0);
    for _ in 0..1000 {
        let n = rng.gen_range(6..=10);
        let density = rng.gen_range(0.05..0.95);
        let g = random_graph(&mut rng, n, density);
        let eps = q(rng.gen_range(1..=59), 960);
        let p = connection_partition(&g, &eps).unwrap();
        graphs += 1;
        undistinguishable += usize::from(!p.distinguishable);
        if p.check.hypotheses_hold() {
            realized += 1;
            graph_failures += usize::from(!p.check.conclusions_hold());
        }
    }
    let ok = profile_failures == 0 && graph_failures == 0 && undistinguishable == 0;
    report(
        "connection partition: hypotheses imply both size bounds; sides distinguishable",
        ok,
        format!(
            "profiles={profiles} profile_exceptions={profile_failures} graphs={graphs} \
             graphs_meeting_hypotheses={realized} graph_exceptions={graph_failures} \
             undistinguishable={undistinguishable} elapsed={:?}",
            start.elapsed()
        ),
    );
    ok
}

fn cli_report(args: &[&str]) -> (i32, Vec<u8>) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let mut argv = vec!["hypertight".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.extend(["--report-out".to_string(), path.display().to_string()]);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = hypertight::cli::run(argv, &mut out, &mut err);
    (code, std::fs::read(&path).unwrap_or_default())
}

fn determinism() -> bool {
    let start = Instant::now();
    let commands: [&[&str]; 6] = [
        &["mu", "--n", "6", "--s", "1", "--t", "4"],
        &["emc", "--n", "8", "--s", "2"],
        &["mono-triangles", "--n", "7", "--tmin", "5"],
        &["verify-fact"],
        &["verify-claims"],
        &["verify-local"],
    ];
    let mut differing = Vec::new();
    for cmd in commands {
        let (c1, r1) = cli_report(&[cmd, &["--workers", "1"]].concat());
        let (c8, r8) = cli_report(&[cmd, &["--workers", "8"]].concat());
        if c1 != c8 || r1 != r8 || r1.is_empty() {
            differing.push(cmd[0]);
        }
    }
    let ok = differing.is_empty();
    report(
        "determinism: reports identical at --workers 1 and --workers 8",
        ok,
        format!("commands={} differing={differing:?} elapsed={:?}", commands.len(), start.elapsed()),
    );
    ok
}

fn main() {
    let criteria: [(&str, fn() -> bool); 9] = [
        ("fact_reproduction", fact_reproduction),
        ("monotonicity", monotonicity),
        ("local_structure_verification", local_structure_verification),
        ("shifting_properties", shifting_properties),
        ("emc_desk_scale", emc_desk_scale),
        ("mu_oracle_equivalence", mu_oracle_equivalence),
        ("constructions", constructions),
        ("connection_partition_criterion", connection_partition_criterion),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let ok = std::panic::catch_unwind(run).unwrap_or_else(|_| {
            println!("FAIL {name}: panicked");
            false
        });
        if !ok {
            failed.push(name);
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
