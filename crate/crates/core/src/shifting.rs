//! `(i,j)`-shifts, shiftedness predicates and shift closures, including the
//! simultaneous shifting of a distinguishable red/blue pair.

use crate::error::{Error, Result};
use crate::hypergraph::{distinguishable, ColouredPair, Edge, Hypergraph, Vertex};

fn check_vertex(g: &Hypergraph, v: Vertex) -> Result<()> {
    if v == 0 || v as usize > g.n() {
        return Err(Error::invalid(format!("vertex {v} outside 1..{}", g.n())));
    }
    Ok(())
}

/// Replaces every edge `e` with `i ∈ e`, `j ∉ e` by `(e \ {i}) ∪ {j}` unless
/// that set is already an edge.
pub fn shift(g: &Hypergraph, i: Vertex, j: Vertex) -> Result<Hypergraph> {
    if i == j {
        return Err(Error::invalid("shift needs i != j"));
    }
    check_vertex(g, i)?;
    check_vertex(g, j)?;
    Ok(shift_unchecked(g, i, j).0)
}

/// Returns the shifted graph and whether any edge moved.
fn shift_unchecked(g: &Hypergraph, i: Vertex, j: Vertex) -> (Hypergraph, bool) {
    let mut changed = false;
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| {
            if e.contains(i) && !e.contains(j) {
                let f = e.replace(i, j);
                if !g.contains(&f) {
                    changed = true;
                    return f;
                }
            }
            e.clone()
        })
        .collect();
    if !changed {
        return (g.clone(), false);
    }
    (g.with_edges(edges), true)
}

/// Fixed under every shift towards a smaller label.
pub fn is_left_shifted(g: &Hypergraph) -> bool {
    let n = g.n() as Vertex;
    (1..=n).all(|i| (i + 1..=n).all(|j| !would_change(g, j, i)))
}

/// Fixed under every shift towards a larger label.
pub fn is_right_shifted(g: &Hypergraph) -> bool {
    let n = g.n() as Vertex;
    (1..=n).all(|i| (i + 1..=n).all(|j| !would_change(g, i, j)))
}

fn would_change(g: &Hypergraph, from: Vertex, to: Vertex) -> bool {
    g.edges()
        .iter()
        .any(|e| e.contains(from) && !e.contains(to) && !g.contains(&e.replace(from, to)))
}

/// Result of a closure computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure<T> {
    pub result: T,
    /// Full sweeps performed, including the final sweep that changed nothing.
    pub sweeps: usize,
}

/// Iterates `(j -> i)` shifts, `i < j`, in lexicographic sweeps until a
/// sweep changes nothing.
pub fn left_shift_closure(g: &Hypergraph) -> Closure<Hypergraph> {
    directed_closure(g, true)
}

/// Iterates `(i -> j)` shifts, `i < j`, to a fixed point.
pub fn right_shift_closure(g: &Hypergraph) -> Closure<Hypergraph> {
    directed_closure(g, false)
}

fn directed_closure(g: &Hypergraph, left: bool) -> Closure<Hypergraph> {
    let n = g.n() as Vertex;
    let mut cur = g.clone();
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let mut any = false;
        for i in 1..=n {
            for j in i + 1..=n {
                let (from, to) = if left { (j, i) } else { (i, j) };
                let (next, changed) = shift_unchecked(&cur, from, to);
                if changed {
                    cur = next;
                    any = true;
                }
            }
        }
        if !any {
            return Closure { result: cur, sweeps };
        }
    }
}

/// For `i < j`: `(sh_{j->i}(R), sh_{i->j}(B))`. The input must be
/// distinguishable; the output then is as well.
pub fn shift_pair(p: &ColouredPair, i: Vertex, j: Vertex) -> Result<ColouredPair> {
    if !distinguishable(&p.red, &p.blue)? {
        return Err(Error::ContractViolation("shift_pair needs a distinguishable pair".into()));
    }
    if i == j {
        return Err(Error::invalid("shift needs i != j"));
    }
    check_vertex(&p.red, i)?;
    check_vertex(&p.red, j)?;
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    Ok(shift_pair_unchecked(p, lo, hi).0)
}

fn shift_pair_unchecked(p: &ColouredPair, lo: Vertex, hi: Vertex) -> (ColouredPair, bool) {
    let (red, cr) = shift_unchecked(&p.red, hi, lo);
    let (blue, cb) = shift_unchecked(&p.blue, lo, hi);
    (ColouredPair { red, blue }, cr || cb)
}

/// Simultaneous pair shifts over all `i < j`, swept until nothing moves.
/// The result has a left-shifted red side and a right-shifted blue side.
pub fn canonicalize_pair(p: &ColouredPair) -> Result<Closure<ColouredPair>> {
    if !distinguishable(&p.red, &p.blue)? {
        return Err(Error::ContractViolation(
            "canonicalize_pair needs a distinguishable pair".into(),
        ));
    }
    let n = p.n() as Vertex;
    let mut cur = p.clone();
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let mut any = false;
        for i in 1..=n {
            for j in i + 1..=n {
                let (next, changed) = shift_pair_unchecked(&cur, i, j);
                if changed {
                    cur = next;
                    any = true;
                }
            }
        }
        if !any {
            return Ok(Closure { result: cur, sweeps });
        }
    }
}
