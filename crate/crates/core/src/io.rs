//! Text formats: `.hg` hypergraphs, `.hgp` red/blue pairs, and local
//! configurations with sections `R1:` … `B3:`.
//!
//! ```text
//! # comment
//! 3 4
//! 1 2 3
//! 2 3 4
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{ColouredPair, Hypergraph, Vertex};
use crate::localstruct::config::{
    pair_of, pair_vertices, triple_of, triple_vertices, vertex_name, LocalConfig, TripleSystem, ROLES,
};

/// Non-empty lines with comments stripped, tagged with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn numbers(line: usize, s: &str) -> Result<Vec<u64>> {
    s.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| Error::parse(line, format!("not a number: {t:?}"))))
        .collect()
}

fn header(line: usize, s: &str) -> Result<(usize, usize)> {
    match numbers(line, s)?.as_slice() {
        &[k, n] if k >= 1 && n >= k => Ok((k as usize, n as usize)),
        &[_, _] => Err(Error::parse(line, "header needs 1 <= k <= n")),
        _ => Err(Error::parse(line, "header must be \"k n\"")),
    }
}

fn edge(line: usize, s: &str, k: usize, n: usize) -> Result<Vec<Vertex>> {
    let v = numbers(line, s)?;
    let mut sorted = v.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if v.len() != k || sorted.len() != k {
        return Err(Error::parse(line, format!("arity: expected {k} distinct vertices, found {:?}", v)));
    }
    if let Some(x) = v.iter().find(|&&x| x == 0 || x as usize > n) {
        return Err(Error::parse(line, format!("vertex {x} out of range 1..{n}")));
    }
    Ok(sorted.into_iter().map(|x| x as Vertex).collect())
}

fn build(k: usize, n: usize, edges: Vec<(usize, Vec<Vertex>)>) -> Result<Hypergraph> {
    let mut seen = std::collections::HashMap::new();
    for (line, e) in &edges {
        if let Some(first) = seen.insert(e.clone(), *line) {
            return Err(Error::parse(*line, format!("duplicate edge {e:?} (first at line {first})")));
        }
    }
    Hypergraph::new(k, n, edges.into_iter().map(|(_, e)| e))
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (hl, h) = lines.next().ok_or_else(|| Error::parse(1, "missing header \"k n\""))?;
    let (k, n) = header(hl, h)?;
    let edges = lines.map(|(l, s)| edge(l, s, k, n).map(|e| (l, e))).collect::<Result<Vec<_>>>()?;
    build(k, n, edges)
}

fn emit_edges(out: &mut String, g: &Hypergraph) {
    for e in g.edges() {
        let v: Vec<String> = e.vertices().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", v.join(" "));
    }
}

/// Canonical form: header, then edges in lexicographic order.
pub fn emit_hypergraph(g: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", g.k(), g.n());
    emit_edges(&mut out, g);
    out
}

pub fn parse_pair(text: &str) -> Result<ColouredPair> {
    let mut lines = content_lines(text);
    let (hl, h) = lines.next().ok_or_else(|| Error::parse(1, "missing header \"k n\""))?;
    let (k, n) = header(hl, h)?;
    let (mut red, mut blue) = (Vec::new(), Vec::new());
    let mut side: Option<bool> = None;
    let mut seen = (false, false);
    for (l, s) in lines {
        match s {
            "R:" if !seen.0 => {
                side = Some(true);
                seen.0 = true;
            }
            "B:" if !seen.1 => {
                side = Some(false);
                seen.1 = true;
            }
            "R:" | "B:" => return Err(Error::parse(l, format!("repeated section {s}"))),
            _ => match side {
                None => return Err(Error::parse(l, "edge before an \"R:\" or \"B:\" line")),
                Some(true) => red.push((l, edge(l, s, k, n)?)),
                Some(false) => blue.push((l, edge(l, s, k, n)?)),
            },
        }
    }
    if !(seen.0 && seen.1) {
        return Err(Error::parse(hl, "expected both \"R:\" and \"B:\" sections"));
    }
    for (l, e) in &blue {
        if red.iter().any(|(_, r)| r == e) {
            return Err(Error::parse(*l, format!("edge {e:?} is both red and blue")));
        }
    }
    ColouredPair::new(build(k, n, red)?, build(k, n, blue)?)
}

pub fn emit_pair(p: &ColouredPair) -> String {
    let mut out = format!("{} {}\nR:\n", p.k(), p.n());
    emit_edges(&mut out, &p.red);
    out.push_str("B:\n");
    emit_edges(&mut out, &p.blue);
    out
}

fn parse_vertex(line: usize, s: &str) -> Result<usize> {
    let mut c = s.chars();
    let role = c.next().and_then(|r| ROLES.iter().position(|&x| x == r));
    let idx = c.as_str().parse::<usize>().ok().filter(|i| (1..=3).contains(i));
    match (role, idx) {
        (Some(r), Some(i)) => Ok(3 * (i - 1) + r),
        _ => Err(Error::parse(line, format!("unknown vertex {s:?} (expected i1..k3)"))),
    }
}

/// Splits `i1j2k3` into vertex indices.
fn parse_item(line: usize, s: &str) -> Result<Vec<usize>> {
    if s.len() % 2 != 0 || !s.is_ascii() {
        return Err(Error::parse(line, format!("malformed item {s:?}")));
    }
    let vs = (0..s.len() / 2).map(|i| parse_vertex(line, &s[2 * i..2 * i + 2])).collect::<Result<Vec<_>>>()?;
    let mut triples: Vec<usize> = vs.iter().map(|v| v / 3).collect();
    triples.sort_unstable();
    triples.dedup();
    if triples.len() != vs.len() {
        return Err(Error::parse(line, format!("{s} is not crossing: two vertices from one triple (d)")));
    }
    Ok(vs)
}

/// Parses the local-configuration format. An optional `K:` line lists the
/// `k` vertices in increasing order (default `k1 k2 k3`).
pub fn parse_local_config(text: &str) -> Result<LocalConfig> {
    let mut cfg = LocalConfig::default();
    let mut section: Option<&str> = None;
    let mut seen: Vec<&str> = Vec::new();
    for (l, s) in content_lines(text) {
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (Some(h.trim()), r),
            None => (None, s),
        };
        if let Some(h) = head {
            if !["R1", "R2", "R3", "B1", "B2", "B3", "K"].contains(&h) {
                return Err(Error::parse(l, format!("unknown section {h:?}")));
            }
            if seen.contains(&h) {
                return Err(Error::parse(l, format!("repeated section {h}")));
            }
            seen.push(h);
            section = Some(h);
        }
        let Some(sec) = section else {
            return Err(Error::parse(l, "item before any section"));
        };
        if sec == "K" {
            let ks = rest.split_whitespace().map(|t| parse_vertex(l, t)).collect::<Result<Vec<_>>>()?;
            if ks.len() != 3 || ks.iter().any(|v| v % 3 != 2) {
                return Err(Error::parse(l, "K: must list k1, k2, k3 in increasing order"));
            }
            cfg.system = TripleSystem::with_k_order([ks[0] / 3, ks[1] / 3, ks[2] / 3])
                .map_err(|e| Error::parse(l, e.to_string()))?;
            continue;
        }
        let arity = sec[1..].parse::<usize>().expect("section names end in a digit");
        for tok in rest.split_whitespace() {
            let vs = parse_item(l, tok)?;
            if vs.len() != arity {
                return Err(Error::parse(l, format!("{tok} does not have {arity} vertices")));
            }
            let red = sec.starts_with('R');
            match arity {
                1 => *if red { &mut cfg.r1 } else { &mut cfg.b1 } |= 1 << vs[0],
                2 => {
                    let p = pair_of(vs[0], vs[1]).expect("crossing checked");
                    *if red { &mut cfg.r2 } else { &mut cfg.b2 } |= 1 << p;
                }
                _ => {
                    let mut v = vs.clone();
                    v.sort_unstable();
                    let x = triple_of(v[0], v[1] - 3, v[2] - 6);
                    *if red { &mut cfg.r3 } else { &mut cfg.b3 } |= 1 << x;
                }
            }
        }
    }
    Ok(cfg)
}

pub fn emit_local_config(cfg: &LocalConfig) -> String {
    let mut out = String::new();
    if cfg.system != TripleSystem::standard() {
        let ks: Vec<String> = cfg.system.k_order().iter().map(|&l| vertex_name(3 * l + 2)).collect();
        let _ = writeln!(out, "K: {}", ks.join(" "));
    }
    let singles = |m: u16| (0..9).filter(|v| m >> v & 1 == 1).map(vertex_name).collect::<Vec<_>>();
    let pairs = |m: u32| {
        (0..27)
            .filter(|p| m >> p & 1 == 1)
            .map(|p| {
                let (a, b) = pair_vertices(p);
                vertex_name(a) + &vertex_name(b)
            })
            .collect::<Vec<_>>()
    };
    let triples = |m: u32| {
        (0..27)
            .filter(|x| m >> x & 1 == 1)
            .map(|x| triple_vertices(x).iter().map(|&v| vertex_name(v)).collect::<String>())
            .collect::<Vec<_>>()
    };
    for (name, items) in [
        ("R1", singles(cfg.r1)),
        ("R2", pairs(cfg.r2)),
        ("R3", triples(cfg.r3)),
        ("B1", singles(cfg.b1)),
        ("B2", pairs(cfg.b2)),
        ("B3", triples(cfg.b3)),
    ] {
        let _ = writeln!(out, "{name}:{}{}", if items.is_empty() { "" } else { " " }, items.join(" "));
    }
    out
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<num_rational::BigRational> {
    use num_bigint::BigInt;
    let bad = || Error::invalid(format!("not a rational p/q: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(bad());
    }
    Ok(num_rational::BigRational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergraph_examples() {
        let g = parse_hypergraph("3 4\n1 2 3\n2 3 4\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        match parse_hypergraph("3 4\n1 2 2\n") {
            Err(Error::Parse { line: 2, message }) => assert!(message.contains("arity")),
            other => panic!("{other:?}"),
        }
        let canon = emit_hypergraph(&parse_hypergraph("# c\n3 5\n\n3 4 5  # x\n3 2 1\n").unwrap());
        assert_eq!(canon, "3 5\n1 2 3\n3 4 5\n");
        assert!(matches!(parse_hypergraph("3 4\n1 2 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_hypergraph("3 4\n1 2 3\n\n3 2 1\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_hypergraph("3\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn pair_round_trip() {
        let p = parse_pair("3 5\nR:\n1 2 3\nB:\n3 4 5\n1 4 5\n").unwrap();
        assert_eq!(p.blue.edge_count(), 2);
        assert_eq!(parse_pair(&emit_pair(&p)).unwrap(), p);
        assert!(matches!(parse_pair("3 5\n1 2 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_pair("3 5\nR:\n1 2 3\nB:\n1 2 3\n"), Err(Error::Parse { line: 5, .. })));
    }

    #[test]
    fn local_config_round_trip() {
        let text = "R1: i1\nR2: i1i2 i1j2\n  j1i2 j1j2\nR3: i1i2i3\nB1: i1 j1 k1 i2 j2 k2 i3 j3 k3\nB2: k1k2\nB3:\n";
        let c = parse_local_config(text).unwrap();
        assert_eq!(c.r2.count_ones(), 4);
        assert_eq!(c.b1, 0x1ff);
        assert_eq!(parse_local_config(&emit_local_config(&c)).unwrap(), c);
        assert!(parse_local_config("R2: i1j1\n").is_err());
        assert!(parse_local_config("R2: i1\n").is_err());
        assert!(matches!(parse_local_config("R1: q1\n"), Err(Error::Parse { line: 1, .. })));
        let k = parse_local_config("K: k2 k1 k3\nB2: k1k2\n").unwrap();
        assert_eq!(k.system.k_order(), [1, 0, 2]);
        assert_eq!(parse_local_config(&emit_local_config(&k)).unwrap(), k);
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/20").unwrap().to_string(), "1/20");
        assert_eq!(parse_rational("3").unwrap().to_string(), "3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
