//! The stable translation quiver ZQ: arrows, translation, sectional paths and hammocks.
//!
//! Convention: an arrow `x -> y` of the base quiver gives `(i,x) -> (i,y)` and
//! `(i,y) -> (i+1,x)`; `tau (i,q) = (i-1,q)`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::quiver_io::{NodeId, Quiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZqVertex {
    pub level: i64,
    pub node: NodeId,
}

impl ZqVertex {
    pub fn new(level: i64, node: NodeId) -> Self {
        ZqVertex { level, node }
    }
}

/// `tau^k v`: shifts the level down by `k`.
pub fn tau_k(v: ZqVertex, k: i64) -> ZqVertex {
    ZqVertex::new(v.level - k, v.node)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    lo: i64,
    hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Window, ZqError> {
        if lo > hi {
            return Err(ZqError::BadWindow { lo, hi });
        }
        Ok(Window { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn contains(&self, v: ZqVertex) -> bool {
        (self.lo..=self.hi).contains(&v.level)
    }

    pub fn widen(&self, by: i64) -> Window {
        Window {
            lo: self.lo - by,
            hi: self.hi + by,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZqError {
    #[error("window [{lo}, {hi}] is empty")]
    BadWindow { lo: i64, hi: i64 },
    #[error("consecutive entries {0} and {1} of the path are not joined by an arrow")]
    NotAPath(usize, usize),
    #[error("vertex at level {level} lies outside the window")]
    OutsideWindow { level: i64 },
    #[error("window too small to certify the closure of the vertex at level {level}")]
    WindowTooSmall { level: i64 },
    #[error("hammock knitting produced a negative value at level {level}")]
    Negative { level: i64 },
    #[error("hammock value overflow")]
    Overflow,
}

#[derive(Clone, Debug)]
pub struct Zq {
    base: Quiver,
    // (target node, level shift, multiplicity)
    out: Vec<Vec<(NodeId, i64, u32)>>,
    inn: Vec<Vec<(NodeId, i64, u32)>>,
    order: Vec<NodeId>,
    clip: bool,
}

impl Zq {
    pub fn new(base: Quiver) -> Zq {
        let n = base.len();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for a in base.arrows() {
            out[a.src.0].push((a.dst, 0, a.mult));
            inn[a.dst.0].push((a.src, 0, a.mult));
            out[a.dst.0].push((a.src, 1, a.mult));
            inn[a.src.0].push((a.dst, -1, a.mult));
        }
        for v in out.iter_mut().chain(inn.iter_mut()) {
            v.sort();
        }
        let order = base.topological_order();
        let clip = base.is_dynkin();
        Zq {
            base,
            out,
            inn,
            order,
            clip,
        }
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    /// Whether hammocks are knitted with clipping (Dynkin base).
    pub fn clipped(&self) -> bool {
        self.clip
    }

    pub fn arrows_out(&self, v: ZqVertex) -> Vec<(ZqVertex, u32)> {
        self.out[v.node.0]
            .iter()
            .map(|&(w, d, m)| (ZqVertex::new(v.level + d, w), m))
            .collect()
    }

    pub fn arrows_in(&self, v: ZqVertex) -> Vec<(ZqVertex, u32)> {
        self.inn[v.node.0]
            .iter()
            .map(|&(w, d, m)| (ZqVertex::new(v.level + d, w), m))
            .collect()
    }

    pub fn arrow_mult(&self, u: ZqVertex, v: ZqVertex) -> u32 {
        self.arrows_out(u)
            .into_iter()
            .filter(|&(w, _)| w == v)
            .map(|(_, m)| m)
            .sum()
    }

    /// Sectional iff `tau path[i+1] != path[i-1]` at every interior index.
    pub fn is_sectional_path(&self, path: &[ZqVertex]) -> Result<bool, ZqError> {
        for i in 1..path.len() {
            if self.arrow_mult(path[i - 1], path[i]) == 0 {
                return Err(ZqError::NotAPath(i - 1, i));
            }
        }
        Ok((1..path.len().saturating_sub(1)).all(|i| tau_k(path[i + 1], 1) != path[i - 1]))
    }

    /// Levels needed behind (or ahead of) a vertex to certify its sectional closure.
    pub fn certification_margin(&self) -> i64 {
        (self.n() + self.base.longest_path()) as i64
    }

    fn cone(&self, from: ZqVertex, lo: i64, hi: i64, forward: bool) -> HashSet<ZqVertex> {
        let mut seen = HashSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let next = if forward {
                self.arrows_out(v)
            } else {
                self.arrows_in(v)
            };
            for (w, _) in next {
                if (lo..=hi).contains(&w.level) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// `Sigma(-> v)`: all `u` with a path to `v` such that every path `u -> ... -> v` is sectional.
    pub fn sectional_closure_backward(
        &self,
        v: ZqVertex,
        w: &Window,
    ) -> Result<BTreeSet<ZqVertex>, ZqError> {
        self.closure(v, w, false)
    }

    /// `Sigma(v ->)`: all `u` reachable from `v` such that every path `v -> ... -> u` is sectional.
    pub fn sectional_closure_forward(
        &self,
        v: ZqVertex,
        w: &Window,
    ) -> Result<BTreeSet<ZqVertex>, ZqError> {
        self.closure(v, w, true)
    }

    fn closure(
        &self,
        v: ZqVertex,
        w: &Window,
        forward: bool,
    ) -> Result<BTreeSet<ZqVertex>, ZqError> {
        if !w.contains(v) {
            return Err(ZqError::OutsideWindow { level: v.level });
        }
        let margin = self.certification_margin();
        let (lo, hi) = if forward {
            (v.level, w.hi)
        } else {
            (w.lo, v.level)
        };
        // a path u ~> v is non-sectional iff it passes some mesh tau z -> m -> z
        let far = self.cone(v, lo, hi, forward);
        let mut out = BTreeSet::new();
        for &u in &far {
            let near = self.cone(u, lo, hi, !forward);
            let broken = far.iter().any(|&z| {
                let tz = if forward { tau_k(z, -1) } else { tau_k(z, 1) };
                near.contains(&tz) && z != tz
            });
            if !broken {
                if (u.level - v.level).abs() >= margin
                    || (!forward && u.level == w.lo)
                    || (forward && u.level == w.hi)
                {
                    return Err(ZqError::WindowTooSmall { level: v.level });
                }
                out.insert(u);
            }
        }
        Ok(out)
    }

    /// Hom dimensions `u -> dim Hom(x, u)` for levels `x.level ..= w.hi`, by knitting.
    pub fn hammock(&self, x: ZqVertex, w: &Window) -> Result<Hammock, ZqError> {
        if !w.contains(x) {
            return Err(ZqError::OutsideWindow { level: x.level });
        }
        self.knit(x, w.hi, false)
    }

    // with `truncate`, stops before the first level whose values overflow
    fn knit(&self, x: ZqVertex, hi: i64, truncate: bool) -> Result<Hammock, ZqError> {
        let n = self.n();
        let depth = (hi - x.level) as usize;
        let mut val = vec![0u64; (depth + 1) * n];
        for d in 0..=depth {
            for &q in &self.order {
                let u = ZqVertex::new(x.level + d as i64, q);
                if u == x {
                    val[d * n + q.0] = 1;
                    continue;
                }
                let mut s: i128 = 0;
                for (p, m) in self.arrows_in(u) {
                    let pd = p.level - x.level;
                    if pd >= 0 {
                        s += m as i128 * val[pd as usize * n + p.node.0] as i128;
                    }
                }
                if d >= 1 {
                    s -= val[(d - 1) * n + q.0] as i128;
                }
                if s < 0 {
                    if self.clip {
                        s = 0;
                    } else {
                        return Err(ZqError::Negative { level: u.level });
                    }
                }
                match u64::try_from(s) {
                    Ok(s) if s < u64::MAX / 64 => val[d * n + q.0] = s,
                    _ if truncate && d > 0 => {
                        val.truncate(d * n);
                        return Ok(Hammock {
                            source: x,
                            n,
                            hi: x.level + d as i64 - 1,
                            val,
                        });
                    }
                    _ => return Err(ZqError::Overflow),
                }
            }
        }
        Ok(Hammock {
            source: x,
            n,
            hi,
            val,
        })
    }

    pub fn hom_mesh(&self, x: ZqVertex, y: ZqVertex, w: &Window) -> Result<u64, ZqError> {
        if !w.contains(y) {
            return Err(ZqError::OutsideWindow { level: y.level });
        }
        Ok(self.hammock(x, w)?.get(y).expect("y inside window"))
    }

    /// Hammocks from every `(0, q)` up to `depth` (less if values would overflow);
    /// by translation invariance these answer every query.
    pub fn hom_table(&self, depth: i64) -> Result<HomTable, ZqError> {
        let mut rows = self
            .base
            .nodes()
            .map(|q| self.knit(ZqVertex::new(0, q), depth.max(0), true))
            .collect::<Result<Vec<_>, _>>()?;
        let hi = rows.iter().map(|h| h.hi).min().unwrap_or(0);
        for h in rows.iter_mut() {
            h.hi = hi;
            h.val.truncate((hi + 1) as usize * h.n);
        }
        Ok(HomTable { rows })
    }
}

#[derive(Clone, Debug)]
pub struct Hammock {
    source: ZqVertex,
    n: usize,
    hi: i64,
    val: Vec<u64>,
}

impl Hammock {
    pub fn source(&self) -> ZqVertex {
        self.source
    }

    /// `None` above the computed range; zero below the source.
    pub fn get(&self, u: ZqVertex) -> Option<u64> {
        if u.level > self.hi {
            return None;
        }
        if u.level < self.source.level {
            return Some(0);
        }
        Some(self.val[(u.level - self.source.level) as usize * self.n + u.node.0])
    }
}

#[derive(Clone, Debug)]
pub struct HomTable {
    rows: Vec<Hammock>,
}

impl HomTable {
    pub fn depth(&self) -> i64 {
        self.rows.first().map_or(0, |h| h.hi)
    }

    /// `dim Hom(x, y)`, `None` if `y` is deeper than the table.
    pub fn hom(&self, x: ZqVertex, y: ZqVertex) -> Option<u64> {
        let d = y.level - x.level;
        self.rows[x.node.0].get(ZqVertex::new(d, y.node))
    }
}

impl fmt::Display for ZqVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.node.0 + 1)
    }
}
