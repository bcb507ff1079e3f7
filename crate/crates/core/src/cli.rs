//! Command-line front end. Exit status: 0 success, 1 verification failure,
//! 2 usage or input error, 3 time limit reached with a partial answer.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use crate::constructions::{gen_emc_clique, gen_emc_cover, gen_split_kgraph};
use crate::error::{Error, Result};
use crate::extremal::{connection_partition, emc_max_edges, mono_triangle_extremum, mu_bruteforce};
use crate::hypergraph::{ColouredPair, Hypergraph, Vertex};
use crate::io::{emit_hypergraph, emit_local_config, emit_pair, parse_hypergraph, parse_pair, parse_rational};
use crate::localstruct::fact::FACT_TRIPLES;
use crate::localstruct::{check_fact, verify_claims, verify_local_structure, SearchMode, VerifyOptions};
use crate::matchcycle::{
    has_matching_of_size, has_tight_hamilton, longest_tight_cycle, max_matching, CycleOptions,
    SearchLimits, Verdict,
};
use crate::report::Report;
use crate::shifting::{canonicalize_pair, left_shift_closure, right_shift_closure, shift, shift_pair};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hypertight", version, about = "Tight components, cycles and shifting in uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write key=value lines to this file.
    #[arg(long, global = true)]
    report_out: Option<PathBuf>,
    /// Worker threads for enumerations (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Seed for randomized drivers; the verifiers themselves are deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Time limit in seconds for exact searches (0 = none).
    #[arg(long, global = true, default_value_t = 60.0)]
    time_limit: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    Left,
    Right,
    Pair,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Split,
    EmcClique,
    EmcCover,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Tight components and their sizes.
    Components {
        #[arg(long)]
        input: PathBuf,
    },
    /// One (i,j)-shift, or the full closure when --i/--j are omitted.
    Shift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "left")]
        direction: Direction,
        #[arg(long)]
        i: Option<Vertex>,
        #[arg(long)]
        j: Option<Vertex>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Maximum matching, or a yes/no answer for --size.
    Matching {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        size: Option<usize>,
    },
    /// Tight Hamilton cycle search.
    Hamilton {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        certificate_out: Option<PathBuf>,
    },
    /// Longest tight cycle.
    LongestCycle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        certificate_out: Option<PathBuf>,
        /// Only count cycles on at least 2k vertices.
        #[arg(long)]
        min_length_2k: bool,
    },
    /// Generate a construction as a .hg file.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        nx: Option<usize>,
        #[arg(long)]
        ny: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Largest distinguishable pair with bounded red matching number.
    Mu {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: u64,
        /// Write the first extremal pair here (.hgp).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Largest 3-graph with matching number at most s, against the closed form.
    Emc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Most monochromatic triangles with at least tmin of each colour.
    MonoTriangles {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tmin: u64,
        #[arg(long)]
        uncertified: bool,
    },
    /// Split a 3-graph into two unions of tight components.
    ConnectPartition {
        #[arg(long)]
        input: PathBuf,
        /// Rational p/q.
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Maxima of f_{s,p,t} for the eleven listed triples.
    VerifyFact {
        #[arg(long, default_value = "1/1000")]
        sigma_grid: String,
        #[arg(long, default_value = "1/1000000000")]
        tol: String,
    },
    /// Enumerate every admissible local configuration.
    VerifyLocal {
        #[arg(long, default_value = "1/1000")]
        sigma_grid: String,
        #[arg(long, default_value = "1/1000000000")]
        tol: String,
        /// Arbitrary instead of left-shifted red triple sets.
        #[arg(long)]
        exhaustive: bool,
    },
    /// The intermediate bounds on their own.
    VerifyClaims,
}

struct Outcome {
    code: i32,
    /// Lines for standard output.
    summary: Vec<String>,
    report: Report,
}

impl Outcome {
    fn new(code: i32, report: Report) -> Self {
        let summary = report.render().lines().map(str::to_owned).collect();
        Outcome { code, summary, report }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse { line, message: format!("{}: {message}", path.display()) },
        other => other,
    }
}

fn load_graph(path: &Path) -> Result<Hypergraph> {
    parse_hypergraph(&read(path)?).map_err(|e| with_path(path, e))
}

fn load_pair(path: &Path) -> Result<ColouredPair> {
    parse_pair(&read(path)?).map_err(|e| with_path(path, e))
}

fn real(s: &str) -> Result<f64> {
    parse_rational(s)?.to_f64().ok_or_else(|| Error::invalid(format!("{s} is not representable")))
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn limits(cli: &Cli) -> SearchLimits {
    if cli.time_limit > 0.0 && cli.time_limit.is_finite() {
        SearchLimits::with_time_limit(Duration::from_secs_f64(cli.time_limit))
    } else {
        SearchLimits::none()
    }
}

fn is_pair_file(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "hgp")
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let mut r = Report::new();
    match &cli.cmd {
        Cmd::Components { input } => {
            let g = load_graph(input)?;
            let sizes: Vec<usize> = g.tight_component_indices().iter().map(Vec::len).collect();
            r.set("components", sizes.len()).set("sizes", join(&sizes, ","));
            let mut o = Outcome::new(EXIT_OK, r);
            o.summary = vec![format!("components={} sizes={}", sizes.len(), join(&sizes, ","))];
            Ok(o)
        }
        Cmd::Shift { input, direction, i, j, output } => {
            let pair_mode = matches!(direction, Direction::Pair);
            if pair_mode != is_pair_file(input) {
                return Err(Error::invalid("--direction pair goes with .hgp input, left/right with .hg"));
            }
            let text = match (i, j, direction) {
                (Some(i), Some(j), Direction::Pair) => {
                    let p = shift_pair(&load_pair(input)?, *i, *j)?;
                    r.set("red_edges", p.red.edge_count()).set("blue_edges", p.blue.edge_count());
                    emit_pair(&p)
                }
                (Some(i), Some(j), d) => {
                    let (from, to) = match d {
                        Direction::Left => ((*i).max(*j), (*i).min(*j)),
                        _ => ((*i).min(*j), (*i).max(*j)),
                    };
                    let g = shift(&load_graph(input)?, from, to)?;
                    r.set("edges", g.edge_count());
                    emit_hypergraph(&g)
                }
                (None, None, Direction::Pair) => {
                    let c = canonicalize_pair(&load_pair(input)?)?;
                    r.set("red_edges", c.result.red.edge_count())
                        .set("blue_edges", c.result.blue.edge_count())
                        .set("sweeps", c.sweeps);
                    emit_pair(&c.result)
                }
                (None, None, d) => {
                    let g = load_graph(input)?;
                    let c = if matches!(d, Direction::Left) { left_shift_closure(&g) } else { right_shift_closure(&g) };
                    r.set("edges", c.result.edge_count()).set("sweeps", c.sweeps);
                    emit_hypergraph(&c.result)
                }
                _ => return Err(Error::invalid("give both --i and --j, or neither")),
            };
            match output {
                Some(p) => write(p, &text)?,
                None => {
                    r.block("result", text);
                }
            }
            Ok(Outcome::new(EXIT_OK, r))
        }
        Cmd::Matching { input, size } => {
            let g = load_graph(input)?;
            let lim = limits(cli);
            if let Some(s) = size {
                let v = has_matching_of_size(&g, *s, &lim);
                r.set("size", s).set("has_matching", v.as_str());
                let code = if v == Verdict::Unknown { EXIT_PARTIAL } else { EXIT_OK };
                return Ok(Outcome::new(code, r));
            }
            let m = max_matching(&g, &lim);
            r.set("matching_number", m.matching.len()).set("optimal", m.optimal);
            let edges: Vec<String> = m.matching.edges().iter().map(|e| join(e.vertices(), " ")).collect();
            r.set("matching", edges.join(","));
            Ok(Outcome::new(if m.optimal { EXIT_OK } else { EXIT_PARTIAL }, r))
        }
        Cmd::Hamilton { input, certificate_out } => {
            let g = load_graph(input)?;
            let h = has_tight_hamilton(&g, &limits(cli))?;
            r.set("hamilton", h.verdict.as_str());
            if let Some(c) = &h.certificate {
                r.set("certificate", join(c, " "));
                if let Some(p) = certificate_out {
                    write(p, &format!("{}\n", join(c, " ")))?;
                }
            }
            if let Some(n) = &h.note {
                r.set("note", n);
            }
            let code = if h.verdict == Verdict::Unknown { EXIT_PARTIAL } else { EXIT_OK };
            let mut o = Outcome::new(code, r);
            o.summary = vec![match &h.certificate {
                Some(c) => format!("hamilton={} certificate={}", h.verdict.as_str(), join(c, " ")),
                None => format!("hamilton={}", h.verdict.as_str()),
            }];
            Ok(o)
        }
        Cmd::LongestCycle { input, certificate_out, min_length_2k } => {
            let g = load_graph(input)?;
            let opts = CycleOptions { min_length_2k: *min_length_2k };
            let c = longest_tight_cycle(&g, &opts, &limits(cli))?;
            r.set("longest_cycle", c.length().unwrap_or(0)).set("optimal", c.optimal);
            if let Some(seq) = &c.cycle {
                r.set("cycle", join(seq, " "));
                if let Some(p) = certificate_out {
                    write(p, &format!("{}\n", join(seq, " ")))?;
                }
            }
            Ok(Outcome::new(if c.optimal { EXIT_OK } else { EXIT_PARTIAL }, r))
        }
        Cmd::Construct { family, k, nx, ny, a, n, s, output } => {
            let need = |v: &Option<usize>, name: &str| v.ok_or_else(|| Error::invalid(format!("--{name} is required")));
            let g = match family {
                Family::Split => {
                    gen_split_kgraph(*k, need(nx, "nx")?, need(ny, "ny")?, a.unwrap_or(k / 2))?
                }
                Family::EmcClique => gen_emc_clique(need(n, "n")?, need(s, "s")?, *k)?,
                Family::EmcCover => gen_emc_cover(need(n, "n")?, need(s, "s")?, *k)?,
            };
            let sizes: Vec<usize> = g.tight_component_indices().iter().map(Vec::len).collect();
            r.set("k", g.k()).set("n", g.n()).set("edges", g.edge_count()).set("components", sizes.len());
            r.set("sizes", join(&sizes, ","));
            match output {
                Some(p) => write(p, &emit_hypergraph(&g))?,
                None => {
                    r.block("graph", emit_hypergraph(&g));
                }
            }
            Ok(Outcome::new(EXIT_OK, r))
        }
        Cmd::Mu { n, s, t, output } => {
            let m = mu_bruteforce(*n, *s, *t, cli.workers)?;
            r.set("n", n).set("s", s).set("t", t);
            match m.value {
                Some(v) => r.set("value", v),
                None => r.set("value", "empty"),
            };
            r.set("witnesses", m.witnesses.len()).set("nodes", m.nodes);
            if let Some(w) = m.witnesses.first() {
                r.set("witness_red_edges", w.red.edge_count()).set("witness_blue_edges", w.blue.edge_count());
                if let Some(p) = output {
                    write(p, &emit_pair(w))?;
                }
            }
            Ok(Outcome::new(EXIT_OK, r))
        }
        Cmd::Emc { n, s, output } => {
            let e = emc_max_edges(*n, *s, cli.workers)?;
            let ok = e.value as u128 == e.formula;
            r.set("n", n).set("s", s).set("value", e.value).set("formula", e.formula).set("match", ok);
            r.set("nodes", e.nodes);
            if let Some(p) = output {
                write(p, &emit_hypergraph(&e.witness))?;
            } else {
                r.block("witness", emit_hypergraph(&e.witness));
            }
            Ok(Outcome::new(if ok { EXIT_OK } else { EXIT_FAILED }, r))
        }
        Cmd::MonoTriangles { n, tmin, uncertified } => {
            let m = mono_triangle_extremum(*n, *tmin, *uncertified, cli.workers)?;
            r.set("n", n).set("tmin", tmin);
            match m.value {
                Some(v) => r.set("value", v),
                None => r.set("value", "none"),
            };
            if let (Some(w), Some((a, b))) = (&m.witness, m.witness_counts) {
                let pairs = |s: &std::collections::BTreeSet<(Vertex, Vertex)>| {
                    s.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
                };
                r.set("red_triangles", a).set("blue_triangles", b);
                r.set("witness_red", pairs(w.red())).set("witness_blue", pairs(w.blue()));
            }
            r.set("colourings_checked", m.colourings_checked);
            Ok(Outcome::new(EXIT_OK, r))
        }
        Cmd::ConnectPartition { input, epsilon, output } => {
            let g = load_graph(input)?;
            let eps = parse_rational(epsilon)?;
            let p = connection_partition(&g, &eps)?;
            let c = &p.check;
            r.set("epsilon", &eps).set("components", p.component_sizes.len());
            r.set("sizes", join(&p.component_sizes, ","));
            r.set("split_index", c.split_index.map_or("none".to_string(), |i| i.to_string()));
            r.set("red_edges", c.red_size).set("blue_edges", c.blue_size);
            r.set("dense", c.dense).set("no_giant", c.no_giant).set("not_too_dense", c.not_too_dense);
            r.set("small_epsilon", c.small_epsilon);
            r.set("hypotheses_hold", c.hypotheses_hold());
            r.set("max_side_ok", c.max_side_ok).set("min_side_ok", c.min_side_ok);
            r.set("distinguishable", p.distinguishable);
            if let Some(path) = output {
                write(path, &emit_pair(&ColouredPair::new(p.red.clone(), p.blue.clone())?))?;
            }
            let failed = !p.distinguishable || (c.hypotheses_hold() && !c.conclusions_hold());
            Ok(Outcome::new(if failed { EXIT_FAILED } else { EXIT_OK }, r))
        }
        Cmd::VerifyFact { sigma_grid, tol } => {
            let (step, tol) = (real(sigma_grid)?, real(tol)?);
            let rep = check_fact(&FACT_TRIPLES, step, tol)?;
            let mut lines = Vec::new();
            for row in &rep.rows {
                let (s, p, t) = row.spt;
                lines.push(format!(
                    "triple=({s},{p},{t}) max={:.12} sigma*={:.12} at_quarter={} {}",
                    row.max.value,
                    row.max.argmax,
                    row.at_quarter,
                    if row.pass { "pass" } else { "FAIL" }
                ));
            }
            r.set("triples", rep.rows.len());
            r.set("passed", rep.rows.iter().filter(|x| x.pass).count());
            r.set("max_refinement_error", format!("{:.3e}", rep.max_refinement_error()));
            r.set("verified", rep.all_pass());
            r.block("triples", lines.join("\n"));
            let code = if rep.all_pass() { EXIT_OK } else { EXIT_FAILED };
            let mut o = Outcome::new(code, r);
            o.summary = lines;
            o.summary.push(format!("verified={}", rep.all_pass()));
            Ok(o)
        }
        Cmd::VerifyLocal { sigma_grid, tol, exhaustive } => {
            let opts = VerifyOptions {
                mode: if *exhaustive { SearchMode::Exhaustive } else { SearchMode::Primary },
                sigma_step: real(sigma_grid)?,
                tol: real(tol)?,
                workers: cli.workers,
            };
            let v = verify_local_structure(&opts)?;
            r.set("mode", if *exhaustive { "exhaustive" } else { "primary" });
            r.set("red_choices", v.red_choices).set("unsteady_red_choices", v.unsteady_red_choices);
            r.set("configurations", v.configurations).set("frontier_points", v.frontier_points);
            r.set("max_value", format!("{:.12}", v.max_value));
            r.set("argmax_sigma", format!("{:.12}", v.argmax_sigma));
            let (q1, q2, t) = v.witness_point;
            r.set("witness_q1", q1).set("witness_q2", q2).set("witness_t", t);
            r.set("witness_value_at_quarter", v.witness_at_quarter);
            r.set("exceeding", v.exceeding);
            r.set("max_refinement_error", format!("{:.3e}", v.max_refinement_error));
            r.set("lp_crosschecks", v.lp_crosschecks).set("lp_mismatches", v.lp_mismatches);
            push_claims(&mut r, &v.claims);
            r.set("verified", v.passed());
            r.block("witness", emit_local_config(&v.witness));
            Ok(Outcome::new(if v.passed() { EXIT_OK } else { EXIT_FAILED }, r))
        }
        Cmd::VerifyClaims => {
            let claims = verify_claims()?;
            push_claims(&mut r, &claims);
            let ok = claims.iter().all(|c| c.passed);
            r.set("verified", ok);
            Ok(Outcome::new(if ok { EXIT_OK } else { EXIT_FAILED }, r))
        }
    }
}

fn push_claims(r: &mut Report, claims: &[crate::localstruct::ClaimReport]) {
    for (i, c) in claims.iter().enumerate() {
        let verdict = if c.passed { "pass" } else { "FAIL" };
        r.set(format!("claim.{}", i + 1), format!("{verdict} {} [{}]", c.name, c.detail));
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ContractViolation(_) | Error::Overflow => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Runs the command line `args` (including the program name), writing the
/// summary to `out` and diagnostics to `err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(o) => {
            for line in &o.summary {
                let _ = writeln!(out, "{line}");
            }
            if let Some(path) = &cli.report_out {
                if let Err(e) = write(path, &o.report.render()) {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_USAGE;
                }
            }
            let _ = writeln!(err, "elapsed={:.3}s", start.elapsed().as_secs_f64());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
