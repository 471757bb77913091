//! Acyclic quivers: parsing, validation and basic graph queries.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

/// Dense index of a node in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub src: NodeId,
    pub dst: NodeId,
    pub mult: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown node `{name}`")]
    UnknownNode { line: usize, name: String },
    #[error("line {line}: duplicate node `{name}`")]
    DuplicateNode { line: usize, name: String },
    #[error("loop arrow at node `{0}`")]
    Loop(String),
    #[error("quiver has an oriented cycle through `{0}`")]
    Cycle(String),
    #[error("quiver is not connected (`{0}` unreachable from `{1}`)")]
    Disconnected(String, String),
    #[error("quiver has no nodes")]
    Empty,
    #[error("arrow multiplicity must be positive")]
    ZeroMultiplicity,
}

/// Finite, connected, acyclic quiver with merged arrow multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds and validates a quiver. Repeated `(src, dst)` pairs are merged.
    pub fn new<S: AsRef<str>>(nodes: &[S], arrows: &[(S, S, u32)]) -> Result<Quiver, QuiverError> {
        let mut b = Builder::default();
        for (i, n) in nodes.iter().enumerate() {
            b.node(n.as_ref(), i + 1)?;
        }
        for (i, (s, t, m)) in arrows.iter().enumerate() {
            b.arrow(s.as_ref(), t.as_ref(), *m, i + 1)?;
        }
        b.finish()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.names.len()).map(NodeId)
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Number of arrows `src -> dst`.
    pub fn mult(&self, src: NodeId, dst: NodeId) -> u32 {
        self.arrows
            .iter()
            .filter(|a| a.src == src && a.dst == dst)
            .map(|a| a.mult)
            .sum()
    }

    /// The opposite quiver, same node order.
    pub fn op(&self) -> Quiver {
        Quiver {
            names: self.names.clone(),
            index: self.index.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    src: a.dst,
                    dst: a.src,
                    mult: a.mult,
                })
                .collect(),
        }
    }

    /// Matrix of arrow counts, `m[i][j] = #(i -> j)`.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut m = vec![vec![0i64; n]; n];
        for a in &self.arrows {
            m[a.src.0][a.dst.0] += a.mult as i64;
        }
        m
    }

    /// Renders in the quiver file format; `parse_quiver(&q.render()) == Ok(q)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for n in &self.names {
            out.push_str("node ");
            out.push_str(n);
            out.push('\n');
        }
        for a in &self.arrows {
            out.push_str(&format!("arrow {} {}", self.name(a.src), self.name(a.dst)));
            if a.mult != 1 {
                out.push_str(&format!(" {}", a.mult));
            }
            out.push('\n');
        }
        out
    }

    /// Kahn's algorithm; ties broken by node-name order (numeric names compare numerically).
    pub fn topological_order(&self) -> Vec<NodeId> {
        topo(self).expect("validated quiver is acyclic")
    }

    /// Length of the longest path, in arrows.
    pub fn longest_path(&self) -> usize {
        let mut best = vec![0usize; self.len()];
        for v in self.topological_order() {
            for a in self.arrows.iter().filter(|a| a.src == v) {
                best[a.dst.0] = best[a.dst.0].max(best[v.0] + 1);
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// `paths[i][j]` = number of paths from i to j (including the trivial path).
    pub fn path_counts(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let adj = self.adjacency();
        let order = self.topological_order();
        let mut p = vec![vec![0i64; n]; n];
        for (i, row) in p.iter_mut().enumerate() {
            row[i] = 1;
            for &v in &order {
                let pv = row[v.0];
                if pv == 0 {
                    continue;
                }
                for (x, &a) in row.iter_mut().zip(&adj[v.0]) {
                    *x += pv * a;
                }
            }
        }
        p
    }

    /// Dynkin types A, D, E with all multiplicities one.
    pub fn is_dynkin(&self) -> bool {
        let n = self.len();
        let mut deg = vec![0u32; n];
        let mut edges = 0u32;
        for a in &self.arrows {
            if a.mult != 1 {
                return false;
            }
            deg[a.src.0] += 1;
            deg[a.dst.0] += 1;
            edges += 1;
        }
        // connected, so a tree iff edges = n - 1 (no antiparallel pairs in an acyclic quiver)
        if edges as usize != n - 1 {
            return false;
        }
        let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
        match branch.as_slice() {
            [] => true,
            [c] => {
                if deg[*c] != 3 {
                    return false;
                }
                let mut arms = self.arm_lengths(NodeId(*c));
                arms.sort_unstable();
                matches!(
                    arms.as_slice(),
                    [1, 1, _] | [1, 2, 2] | [1, 2, 3] | [1, 2, 4]
                )
            }
            _ => false,
        }
    }

    fn arm_lengths(&self, center: NodeId) -> Vec<usize> {
        let nb = self.neighbours();
        nb[center.0]
            .iter()
            .map(|&start| {
                let (mut prev, mut cur, mut len) = (center.0, start, 1);
                loop {
                    let next: Vec<usize> = nb[cur].iter().copied().filter(|&w| w != prev).collect();
                    match next.as_slice() {
                        [w] => {
                            prev = cur;
                            cur = *w;
                            len += 1;
                        }
                        _ => break len,
                    }
                }
            })
            .collect()
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.len()];
        for a in &self.arrows {
            nb[a.src.0].push(a.dst.0);
            nb[a.dst.0].push(a.src.0);
        }
        nb
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Compares node names numerically when both are integers, else lexicographically.
pub fn name_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.cmp(b),
    }
}

fn topo(q: &Quiver) -> Result<Vec<NodeId>, NodeId> {
    let n = q.len();
    let mut indeg = vec![0usize; n];
    for a in &q.arrows {
        indeg[a.dst.0] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while !ready.is_empty() {
        let (pos, _) = ready
            .iter()
            .enumerate()
            .min_by(|(_, &x), (_, &y)| name_cmp(&q.names[x], &q.names[y]).then(x.cmp(&y)))
            .unwrap();
        let v = ready.swap_remove(pos);
        order.push(NodeId(v));
        for a in q.arrows.iter().filter(|a| a.src.0 == v) {
            indeg[a.dst.0] -= 1;
            if indeg[a.dst.0] == 0 {
                ready.push(a.dst.0);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(NodeId((0..n).find(|&v| indeg[v] > 0).unwrap()))
    }
}

#[derive(Default)]
struct Builder {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    arrows: BTreeMap<(usize, usize), u32>,
    order: Vec<(usize, usize)>,
}

impl Builder {
    fn node(&mut self, name: &str, line: usize) -> Result<(), QuiverError> {
        if self.index.contains_key(name) {
            return Err(QuiverError::DuplicateNode {
                line,
                name: name.to_string(),
            });
        }
        self.index
            .insert(name.to_string(), NodeId(self.names.len()));
        self.names.push(name.to_string());
        Ok(())
    }

    fn lookup(&self, name: &str, line: usize) -> Result<NodeId, QuiverError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownNode {
                line,
                name: name.to_string(),
            })
    }

    fn arrow(&mut self, s: &str, t: &str, m: u32, line: usize) -> Result<(), QuiverError> {
        let (s, t) = (self.lookup(s, line)?, self.lookup(t, line)?);
        if m == 0 {
            return Err(QuiverError::ZeroMultiplicity);
        }
        if s == t {
            return Err(QuiverError::Loop(self.names[s.0].clone()));
        }
        let e = self.arrows.entry((s.0, t.0)).or_insert(0);
        if *e == 0 {
            self.order.push((s.0, t.0));
        }
        *e += m;
        Ok(())
    }

    fn finish(self) -> Result<Quiver, QuiverError> {
        if self.names.is_empty() {
            return Err(QuiverError::Empty);
        }
        let arrows = self
            .order
            .iter()
            .map(|&(s, t)| Arrow {
                src: NodeId(s),
                dst: NodeId(t),
                mult: self.arrows[&(s, t)],
            })
            .collect();
        let q = Quiver {
            names: self.names,
            index: self.index,
            arrows,
        };
        if let Err(v) = topo(&q) {
            return Err(QuiverError::Cycle(q.names[v.0].clone()));
        }
        let nb = q.neighbours();
        let mut seen = vec![false; q.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &nb[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(QuiverError::Disconnected(
                q.names[v].clone(),
                q.names[0].clone(),
            ));
        }
        Ok(q)
    }
}

/// Parses the line-based quiver format: `node <name>`, `arrow <src> <dst> [mult]`, `#` comments.
pub fn parse_quiver(text: &str) -> Result<Quiver, QuiverError> {
    parse_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
}

pub(crate) fn parse_lines<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Quiver, QuiverError> {
    let mut b = Builder::default();
    for (line, raw) in lines {
        let text = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = text.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["node", name] => b.node(name, line)?,
            ["arrow", s, t] => b.arrow(s, t, 1, line)?,
            ["arrow", s, t, m] => {
                let m = m.parse::<u32>().map_err(|_| QuiverError::Syntax {
                    line,
                    msg: format!("bad multiplicity `{m}`"),
                })?;
                b.arrow(s, t, m, line)?
            }
            _ => {
                return Err(QuiverError::Syntax {
                    line,
                    msg: format!("cannot parse `{}`", text.trim()),
                })
            }
        }
    }
    b.finish()
}
