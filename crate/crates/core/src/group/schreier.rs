use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use super::element::{Generator, GroupElement};
use super::params::GroupParams;
use crate::error::{Error, Result};

/// A right coset `Wg` of `W = ⟨t, s_1, …, s_{n−2}⟩`, named by where card `n`
/// sits in `g` and how far it is rotated. Positions are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    pub position: usize,
    pub rotation: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub label: Generator,
    pub to: usize,
}

/// Schreier coset graph of `(G(m,1,n), W; {t, s_1, …, s_{n−1}})`.
///
/// Edges come from right multiplication of coset representatives. Loops
/// (`Wgx = Wg`) are kept separately and left out of the drawn edge list.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    params: GroupParams,
    vertices: Vec<Coset>,
    edges: Vec<Edge>,
    loops: Vec<Edge>,
}

fn coset_of(g: &GroupElement) -> Coset {
    let n = g.n();
    let pos = g.position_of(n - 1);
    Coset {
        position: pos + 1,
        rotation: g.rotations()[pos] as usize,
    }
}

impl CosetGraph {
    pub fn new(params: GroupParams) -> Result<Self> {
        let n = params.n();
        if n == 0 {
            return Err(Error::InvalidParams("Schreier graph needs n ≥ 1".into()));
        }
        let mut generators = vec![Generator::T];
        generators.extend((1..n).map(Generator::S));
        let gen_elems: Vec<GroupElement> = generators
            .iter()
            .map(|&x| GroupElement::generator(params, x))
            .collect::<Result<_>>()?;

        // breadth-first coset enumeration from W·e
        let mut index: HashMap<Coset, usize> = HashMap::new();
        let mut reps: Vec<GroupElement> = Vec::new();
        let mut vertices = Vec::new();
        let mut queue = VecDeque::new();
        let identity = GroupElement::identity(params);
        index.insert(coset_of(&identity), 0);
        vertices.push(coset_of(&identity));
        reps.push(identity);
        queue.push_back(0);
        let mut edges = Vec::new();
        let mut loops = Vec::new();
        while let Some(v) = queue.pop_front() {
            for (&label, x) in generators.iter().zip(&gen_elems) {
                let gx = reps[v].compose(x);
                let c = coset_of(&gx);
                let w = *index.entry(c).or_insert_with(|| {
                    vertices.push(c);
                    reps.push(gx.clone());
                    queue.push_back(vertices.len() - 1);
                    vertices.len() - 1
                });
                let edge = Edge {
                    from: v,
                    label,
                    to: w,
                };
                if v == w {
                    loops.push(edge);
                } else {
                    edges.push(edge);
                }
            }
        }
        Ok(CosetGraph {
            params,
            vertices,
            edges,
            loops,
        })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn vertices(&self) -> &[Coset] {
        &self.vertices
    }

    /// Non-trivial directed edges; every `s`-edge appears with its reverse.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The trivial actions, kept for the coset-table view.
    pub fn loops(&self) -> &[Edge] {
        &self.loops
    }

    /// Coset table: `table[v][x]` is the coset reached from `v` by generator
    /// `x` (column 0 is `t`, column `i` is `s_i`).
    pub fn coset_table(&self) -> Vec<Vec<usize>> {
        let cols = self.params.n();
        let mut table = vec![vec![usize::MAX; cols]; self.vertices.len()];
        for e in self.edges.iter().chain(&self.loops) {
            let col = match e.label {
                Generator::T => 0,
                Generator::S(i) => i,
                Generator::TI(_) => unreachable!("graph uses t and s_i only"),
            };
            table[e.from][col] = e.to;
        }
        table
    }

    /// Checks the polygon-with-tails picture: the `t`-edges form one directed
    /// `m`-cycle (none when `m = 1`), and from every polygon vertex hangs a
    /// path of `n−1` edges labelled `s_1, …, s_{n−1}` in order.
    pub fn shape(&self) -> GraphShape {
        let m = self.params.m();
        let n = self.params.n();
        let t_edges: Vec<&Edge> = self.edges.iter().filter(|e| e.label == Generator::T).collect();

        let mut polygon = Vec::new();
        let t_cycle = if m == 1 {
            polygon.push(0);
            t_edges.is_empty()
        } else {
            let mut succ = HashMap::new();
            for e in &t_edges {
                succ.insert(e.from, e.to);
            }
            let mut v = t_edges.first().map(|e| e.from).unwrap_or(0);
            for _ in 0..m {
                polygon.push(v);
                v = succ.get(&v).copied().unwrap_or(usize::MAX);
            }
            let distinct: std::collections::HashSet<_> = polygon.iter().collect();
            t_edges.len() == m && v == polygon[0] && distinct.len() == m
        };

        let mut tails = Vec::new();
        for &start in &polygon {
            let mut labels = Vec::new();
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                let next: Vec<&Edge> = self
                    .edges
                    .iter()
                    .filter(|e| {
                        e.from == cur
                            && matches!(e.label, Generator::S(_))
                            && e.to != prev
                            && !polygon.contains(&e.to)
                    })
                    .collect();
                match next.as_slice() {
                    [] => break,
                    [e] => {
                        labels.push(e.label);
                        prev = cur;
                        cur = e.to;
                    }
                    _ => {
                        // branching: not a tail
                        labels.push(Generator::TI(0));
                        break;
                    }
                }
            }
            tails.push(labels);
        }
        let expected: Vec<Generator> = (1..n).map(Generator::S).collect();
        let tails_ok = tails.iter().all(|t| *t == expected);
        GraphShape {
            vertex_count: self.vertices.len(),
            polygon,
            t_cycle,
            tails,
            ok: self.vertices.len() == n * m && t_cycle && tails_ok,
        }
    }

    /// Graphviz rendering. `t`-edges are directed; each `s`-edge pair is
    /// emitted once with `dir=none`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph schreier {{");
        let _ = writeln!(out, "  label=\"{}\";", self.params);
        for (i, c) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                "  v{i} [label=\"({},{})\"];",
                c.position, c.rotation
            );
        }
        for e in &self.edges {
            match e.label {
                Generator::T => {
                    let _ = writeln!(out, "  v{} -> v{} [label=\"t\"];", e.from, e.to);
                }
                label => {
                    if e.from < e.to {
                        let _ = writeln!(
                            out,
                            "  v{} -> v{} [label=\"{label}\", dir=none];",
                            e.from, e.to
                        );
                    }
                }
            }
        }
        let _ = writeln!(out, "}}");
        out
    }
}

/// Result of [`CosetGraph::shape`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphShape {
    pub vertex_count: usize,
    pub polygon: Vec<usize>,
    pub t_cycle: bool,
    pub tails: Vec<Vec<Generator>>,
    pub ok: bool,
}

pub fn schreier_graph(params: GroupParams) -> Result<CosetGraph> {
    CosetGraph::new(params)
}
