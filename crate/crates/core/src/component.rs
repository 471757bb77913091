//! Finite windows of a transjective Auslander-Reiten component.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::quiver_io::Quiver;
use crate::zq::ZqVertex;

/// Dense vertex index inside one component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComponentError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown vertex `{id}`")]
    UnknownVertex { line: usize, id: String },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("tau is not injective: two vertices translate to `{0}`")]
    TauNotInjective(String),
    #[error("tau of `{0}` is itself")]
    TauFixedPoint(String),
    #[error("broken mesh ending at `{0}`")]
    BrokenMesh(String),
    #[error("mark {kind}={index} is out of range or used twice")]
    BadMark { kind: &'static str, index: usize },
    #[error("dimension vector of `{0}` has the wrong length")]
    BadDim(String),
    #[error("projective-injective pair {0} is not tau^2-related")]
    MarkPosition(usize),
    #[error("need 1 <= t <= n, got n={n} t={t}")]
    BadCounts { n: usize, t: usize },
    #[error("missing `{0}` line")]
    Missing(&'static str),
}

/// ZQ coordinates of a component derived from a tilting set.
#[derive(Clone, Debug)]
pub struct ZqFrame {
    pub base: Quiver,
    pub coords: Vec<ZqVertex>,
    /// levels of `tau^2 T` and `T` for the transjective summands
    pub span: (i64, i64),
}

#[derive(Clone, Debug)]
pub struct ARComponent {
    ids: Vec<String>,
    index: HashMap<String, VertexId>,
    labels: Vec<Option<String>>,
    out: Vec<Vec<(VertexId, u32)>>,
    inn: Vec<Vec<(VertexId, u32)>>,
    tau: Vec<Option<VertexId>>,
    tau_inv: Vec<Option<VertexId>>,
    proj: Vec<Option<usize>>,
    inj: Vec<Option<usize>>,
    proj_at: BTreeMap<usize, VertexId>,
    inj_at: BTreeMap<usize, VertexId>,
    dims: Vec<Option<Vec<i64>>>,
    safe: Vec<bool>,
    n: usize,
    t: usize,
    frame: Option<ZqFrame>,
}

/// Incremental constructor; `finish` checks every invariant.
#[derive(Default)]
pub struct ComponentBuilder {
    ids: Vec<String>,
    index: HashMap<String, VertexId>,
    labels: Vec<Option<String>>,
    arrows: BTreeMap<(VertexId, VertexId), u32>,
    tau: Vec<Option<VertexId>>,
    proj: Vec<Option<usize>>,
    inj: Vec<Option<usize>>,
    dims: Vec<Option<Vec<i64>>>,
    safe: Vec<bool>,
    n: Option<usize>,
    t: Option<usize>,
    frame: Option<ZqFrame>,
}

#[derive(Clone, Debug, Default)]
pub struct VertexSpec {
    pub label: Option<String>,
    pub proj: Option<usize>,
    pub inj: Option<usize>,
    pub dim: Option<Vec<i64>>,
    pub safe: bool,
}

impl ComponentBuilder {
    pub fn new(n: usize, t: usize) -> Self {
        ComponentBuilder {
            n: Some(n),
            t: Some(t),
            ..Default::default()
        }
    }

    pub fn vertex(&mut self, id: &str, spec: VertexSpec) -> Result<VertexId, ComponentError> {
        if self.index.contains_key(id) {
            return Err(ComponentError::DuplicateVertex(id.to_string()));
        }
        let v = VertexId(self.ids.len());
        self.index.insert(id.to_string(), v);
        self.ids.push(id.to_string());
        self.labels.push(spec.label);
        self.tau.push(None);
        self.proj.push(spec.proj);
        self.inj.push(spec.inj);
        self.dims.push(spec.dim);
        self.safe.push(spec.safe);
        Ok(v)
    }

    pub fn id(&self, id: &str) -> Option<VertexId> {
        self.index.get(id).copied()
    }

    pub fn arrow(&mut self, from: VertexId, to: VertexId, mult: u32) {
        *self.arrows.entry((from, to)).or_insert(0) += mult;
    }

    pub fn tau(&mut self, v: VertexId, tv: VertexId) {
        self.tau[v.0] = Some(tv);
    }

    pub fn frame(&mut self, frame: ZqFrame) {
        self.frame = Some(frame);
    }

    pub fn finish(self) -> Result<ARComponent, ComponentError> {
        let n = self.n.ok_or(ComponentError::Missing("n"))?;
        let t = self.t.ok_or(ComponentError::Missing("t"))?;
        if n == 0 || t == 0 || t > n {
            return Err(ComponentError::BadCounts { n, t });
        }
        let k = self.ids.len();
        let mut out = vec![Vec::new(); k];
        let mut inn = vec![Vec::new(); k];
        for (&(a, b), &m) in &self.arrows {
            out[a.0].push((b, m));
            inn[b.0].push((a, m));
        }
        let mut tau_inv = vec![None; k];
        for (v, tv) in self.tau.iter().enumerate() {
            if let Some(tv) = *tv {
                if tv.0 == v {
                    return Err(ComponentError::TauFixedPoint(self.ids[v].clone()));
                }
                if tau_inv[tv.0].replace(VertexId(v)).is_some() {
                    return Err(ComponentError::TauNotInjective(self.ids[tv.0].clone()));
                }
            }
        }
        let mut proj_at = BTreeMap::new();
        let mut inj_at = BTreeMap::new();
        for v in 0..k {
            for (mark, at, kind) in [
                (self.proj[v], &mut proj_at, "proj"),
                (self.inj[v], &mut inj_at, "inj"),
            ] {
                if let Some(j) = mark {
                    if j == 0 || j > n || at.insert(j, VertexId(v)).is_some() {
                        return Err(ComponentError::BadMark { kind, index: j });
                    }
                }
            }
            if let Some(d) = &self.dims[v] {
                if d.len() != n {
                    return Err(ComponentError::BadDim(self.ids[v].clone()));
                }
            }
        }
        let c = ARComponent {
            ids: self.ids,
            index: self.index,
            labels: self.labels,
            out,
            inn,
            tau: self.tau,
            tau_inv,
            proj: self.proj,
            inj: self.inj,
            proj_at,
            inj_at,
            dims: self.dims,
            safe: self.safe,
            n,
            t,
            frame: self.frame,
        };
        c.check_meshes()?;
        c.check_mark_positions()?;
        Ok(c)
    }
}

impl ARComponent {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.ids.len()).map(VertexId)
    }

    pub fn id(&self, v: VertexId) -> &str {
        &self.ids[v.0]
    }

    pub fn vertex(&self, id: &str) -> Option<VertexId> {
        self.index.get(id).copied()
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels[v.0].as_deref()
    }

    /// Label if present, else the id.
    pub fn display(&self, v: VertexId) -> &str {
        self.label(v).unwrap_or(self.id(v))
    }

    pub fn dim(&self, v: VertexId) -> Option<&[i64]> {
        self.dims[v.0].as_deref()
    }

    pub fn out(&self, v: VertexId) -> &[(VertexId, u32)] {
        &self.out[v.0]
    }

    pub fn inn(&self, v: VertexId) -> &[(VertexId, u32)] {
        &self.inn[v.0]
    }

    pub fn tau(&self, v: VertexId) -> Option<VertexId> {
        self.tau[v.0]
    }

    pub fn tau_inv(&self, v: VertexId) -> Option<VertexId> {
        self.tau_inv[v.0]
    }

    pub fn proj_mark(&self, v: VertexId) -> Option<usize> {
        self.proj[v.0]
    }

    pub fn inj_mark(&self, v: VertexId) -> Option<usize> {
        self.inj[v.0]
    }

    pub fn projective(&self, j: usize) -> Option<VertexId> {
        self.proj_at.get(&j).copied()
    }

    pub fn injective(&self, j: usize) -> Option<VertexId> {
        self.inj_at.get(&j).copied()
    }

    pub fn is_injective(&self, v: VertexId) -> bool {
        self.inj[v.0].is_some()
    }

    pub fn is_projective(&self, v: VertexId) -> bool {
        self.proj[v.0].is_some()
    }

    pub fn is_safe(&self, v: VertexId) -> bool {
        self.safe[v.0]
    }

    pub fn safe_zone(&self) -> VertexSet {
        self.vertices().filter(|&v| self.safe[v.0]).collect()
    }

    pub fn frame(&self) -> Option<&ZqFrame> {
        self.frame.as_ref()
    }

    pub fn has_arrow(&self, a: VertexId, b: VertexId) -> bool {
        self.out[a.0].iter().any(|&(w, _)| w == b)
    }

    fn check_meshes(&self) -> Result<(), ComponentError> {
        for v in self.vertices() {
            if !self.safe[v.0] || self.is_projective(v) {
                continue;
            }
            let Some(tv) = self.tau(v) else { continue };
            let mut into: Vec<(VertexId, u32)> = self.inn(v).to_vec();
            let mut from: Vec<(VertexId, u32)> = self.out(tv).to_vec();
            into.sort();
            from.sort();
            if into != from {
                return Err(ComponentError::BrokenMesh(self.ids[v.0].clone()));
            }
        }
        Ok(())
    }

    fn check_mark_positions(&self) -> Result<(), ComponentError> {
        let Some(frame) = &self.frame else {
            return Ok(());
        };
        for (&j, &p) in &self.proj_at {
            if let Some(&i) = self.inj_at.get(&j) {
                let (cp, ci) = (frame.coords[p.0], frame.coords[i.0]);
                if cp.node != ci.node || cp.level != ci.level + 2 {
                    return Err(ComponentError::MarkPosition(j));
                }
            }
        }
        Ok(())
    }

    /// Vertices of `region` reachable from `start` inside `region`, `start` included.
    pub fn successors_in(&self, start: VertexId, region: &VertexSet) -> VertexSet {
        self.reach(start, region, true)
    }

    /// Vertices of `region` from which `start` is reachable inside `region`, `start` included.
    pub fn predecessors_in(&self, start: VertexId, region: &VertexSet) -> VertexSet {
        self.reach(start, region, false)
    }

    fn reach(&self, start: VertexId, region: &VertexSet, forward: bool) -> VertexSet {
        let mut seen = VertexSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let next = if forward { self.out(v) } else { self.inn(v) };
            for &(w, _) in next {
                if region.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Vertices of `region` without an incoming arrow from `region`.
    pub fn sources_of(&self, region: &VertexSet) -> VertexSet {
        region
            .iter()
            .copied()
            .filter(|&v| !self.inn(v).iter().any(|(u, _)| region.contains(u)))
            .collect()
    }

    fn shortest_path(
        &self,
        from: VertexId,
        region: &VertexSet,
        goal: impl Fn(VertexId) -> bool,
    ) -> Option<Vec<VertexId>> {
        let mut prev: HashMap<VertexId, VertexId> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = VertexSet::from([from]);
        while let Some(v) = queue.pop_front() {
            if goal(v) {
                let mut path = vec![v];
                let mut cur = v;
                while let Some(&p) = prev.get(&cur) {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            let mut next: Vec<VertexId> = self.out(v).iter().map(|&(w, _)| w).collect();
            next.sort_by(|a, b| self.id(*a).cmp(self.id(*b)));
            for w in next {
                if region.contains(&w) && seen.insert(w) {
                    prev.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// A path `from -> ... -> through -> ... -> injective` inside `region`.
    pub fn find_path_in(
        &self,
        from: VertexId,
        through: VertexId,
        region: &VertexSet,
    ) -> Option<Vec<VertexId>> {
        if !region.contains(&from) || !region.contains(&through) {
            return None;
        }
        let mut head = self.shortest_path(from, region, |v| v == through)?;
        let tail = self.shortest_path(through, region, |v| self.is_injective(v))?;
        head.extend_from_slice(&tail[1..]);
        Some(head)
    }

    /// Sectional iff `tau path[i+1] != path[i-1]` at every interior index.
    pub fn is_sectional(&self, path: &[VertexId]) -> bool {
        (1..path.len().saturating_sub(1)).all(|i| self.tau(path[i + 1]) != Some(path[i - 1]))
    }

    /// Deterministic fixture text, vertices sorted by id.
    pub fn to_fixture(&self) -> String {
        let mut order: Vec<VertexId> = self.vertices().collect();
        order.sort_by(|a, b| self.id(*a).cmp(self.id(*b)));
        let mut s = String::new();
        let _ = writeln!(s, "component\nn {}\nt {}", self.n, self.t);
        for &v in &order {
            let _ = write!(s, "vertex {}", self.id(v));
            if let Some(j) = self.proj[v.0] {
                let _ = write!(s, " proj={j}");
            }
            if let Some(j) = self.inj[v.0] {
                let _ = write!(s, " inj={j}");
            }
            if let Some(l) = &self.labels[v.0] {
                let _ = write!(s, " label={l}");
            }
            if let Some(d) = &self.dims[v.0] {
                let d: Vec<String> = d.iter().map(i64::to_string).collect();
                let _ = write!(s, " dim={}", d.join(","));
            }
            if self.safe[v.0] {
                s.push_str(" safe");
            }
            s.push('\n');
        }
        for &v in &order {
            let mut targets: Vec<(VertexId, u32)> = self.out(v).to_vec();
            targets.sort_by(|a, b| self.id(a.0).cmp(self.id(b.0)));
            for (w, m) in targets {
                let _ = write!(s, "arrow {} {}", self.id(v), self.id(w));
                if m != 1 {
                    let _ = write!(s, " {m}");
                }
                s.push('\n');
            }
        }
        for &v in &order {
            if let Some(tv) = self.tau(v) {
                let _ = writeln!(s, "tau {} {}", self.id(v), self.id(tv));
            }
        }
        s
    }
}

impl PartialEq for ARComponent {
    fn eq(&self, other: &Self) -> bool {
        self.to_fixture() == other.to_fixture()
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> ComponentError {
    ComponentError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Parses the fixture format (`component`, `n`, `t`, `vertex`, `arrow`, `tau`).
pub fn load_component(text: &str) -> Result<ARComponent, ComponentError> {
    let mut header = false;
    let (mut n, mut t) = (None, None);
    let mut b = ComponentBuilder::default();
    let mut pending: Vec<(usize, Vec<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let words: Vec<&str> = raw
            .split('#')
            .next()
            .unwrap_or("")
            .split_whitespace()
            .collect();
        let Some(&head) = words.first() else { continue };
        let number = |w: Option<&&str>| -> Result<usize, ComponentError> {
            w.and_then(|x| x.parse().ok())
                .ok_or_else(|| syntax(line, "expected a positive integer"))
        };
        match head {
            "component" if words.len() == 1 => header = true,
            "n" if words.len() == 2 => n = Some(number(words.get(1))?),
            "t" if words.len() == 2 => t = Some(number(words.get(1))?),
            "vertex" if words.len() >= 2 => {
                let mut spec = VertexSpec::default();
                for w in &words[2..] {
                    if *w == "safe" {
                        spec.safe = true;
                    } else if let Some(x) = w.strip_prefix("proj=") {
                        spec.proj = Some(x.parse().map_err(|_| syntax(line, "bad proj mark"))?);
                    } else if let Some(x) = w.strip_prefix("inj=") {
                        spec.inj = Some(x.parse().map_err(|_| syntax(line, "bad inj mark"))?);
                    } else if let Some(x) = w.strip_prefix("label=") {
                        spec.label = Some(x.to_string());
                    } else if let Some(x) = w.strip_prefix("dim=") {
                        let d = x
                            .split(',')
                            .map(str::parse)
                            .collect::<Result<Vec<i64>, _>>()
                            .map_err(|_| syntax(line, "bad dimension vector"))?;
                        spec.dim = Some(d);
                    } else {
                        return Err(syntax(line, format!("unknown vertex attribute `{w}`")));
                    }
                }
                b.vertex(words[1], spec)?;
            }
            "arrow" if words.len() == 3 || words.len() == 4 => {
                pending.push((line, words.iter().map(|s| s.to_string()).collect()))
            }
            "tau" if words.len() == 3 => {
                pending.push((line, words.iter().map(|s| s.to_string()).collect()))
            }
            _ => return Err(syntax(line, format!("cannot parse `{}`", raw.trim()))),
        }
    }
    if !header {
        return Err(ComponentError::Missing("component"));
    }
    b.n = Some(n.ok_or(ComponentError::Missing("n"))?);
    b.t = Some(t.ok_or(ComponentError::Missing("t"))?);
    for (line, words) in pending {
        let look = |id: &str| {
            b.id(id).ok_or_else(|| ComponentError::UnknownVertex {
                line,
                id: id.to_string(),
            })
        };
        let (x, y) = (look(&words[1])?, look(&words[2])?);
        if words[0] == "arrow" {
            let m = match words.get(3) {
                Some(m) => m.parse().map_err(|_| syntax(line, "bad multiplicity"))?,
                None => 1,
            };
            b.arrow(x, y, m);
        } else {
            b.tau(x, y);
        }
    }
    b.finish()
}
