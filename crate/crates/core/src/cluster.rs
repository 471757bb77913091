//! Cluster-category layer: Ext^1 between transjective objects, cluster-tilting sets and
//! their mutation, and the transjective component of `B = End(T)`.
//!
//! For a path-algebra quiver `Q` the transjective component of the cluster category is
//! `ZQ(Q^op)`, with `(0, q)` the projective `P(q)` (see [`crate::hereditary`]).
//! Summands may also be regular; those are carried by their dimension vector only.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::component::{ARComponent, ComponentBuilder, ComponentError, VertexSpec, ZqFrame};
use crate::hereditary::{Hereditary, Position};
use crate::linalg::{self, Mat};
use crate::quiver_io::{self, NodeId, Quiver, QuiverError};
use crate::zq::{tau_k, HomTable, Window, Zq, ZqError, ZqVertex};

const TABLE_DEPTH: i64 = 256;

#[derive(Debug, Error)]
pub enum ClusterError {
    #[error(
        "quiver is of Dynkin type: the cluster-tilted algebra is representation-finite and \
         every transjective module lies on a local slice, so there is nothing to classify"
    )]
    Dynkin,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Zq(#[from] ZqError),
    #[error(transparent)]
    Component(#[from] ComponentError),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("expected {expected} summands, found {found}")]
    Count { expected: usize, found: usize },
    #[error("summand index {0} out of range")]
    BadIndex(usize),
    #[error("summands {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("Ext^1 between summands {0} and {1} does not vanish")]
    NotRigid(usize, usize),
    #[error("regular summand {0} needs a nonnegative dimension vector of length n")]
    BadRegular(usize),
    #[error("tilting set has no transjective summand")]
    NoTransjective,
    #[error("window [{lo}, {hi}] must contain tau^2 T and T with {margin} levels to spare")]
    WindowTooSmall { lo: i64, hi: i64, margin: i64 },
    #[error("mutation at {k}: {msg}")]
    Inconsistent { k: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Summand {
    Transjective(ZqVertex),
    Regular(Vec<i64>),
}

impl Summand {
    pub fn vertex(&self) -> Option<ZqVertex> {
        match self {
            Summand::Transjective(v) => Some(*v),
            Summand::Regular(_) => None,
        }
    }
}

/// The transjective component of the cluster category of a non-Dynkin path algebra.
#[derive(Clone, Debug)]
pub struct ClusterCategory {
    algebra: Quiver,
    zq: Zq,
    her: Hereditary,
    table: Arc<HomTable>,
}

impl ClusterCategory {
    /// Category of the path algebra of `algebra`; its transjective component is `ZQ(algebra^op)`.
    pub fn new(algebra: &Quiver) -> Result<Self, ClusterError> {
        if algebra.is_dynkin() {
            return Err(ClusterError::Dynkin);
        }
        let zq = Zq::new(algebra.op());
        let table = Arc::new(zq.hom_table(TABLE_DEPTH)?);
        Ok(ClusterCategory {
            algebra: algebra.clone(),
            her: Hereditary::new(algebra),
            zq,
            table,
        })
    }

    /// Category whose transjective component is `ZQ(base)` literally.
    pub fn from_zq_base(base: &Quiver) -> Result<Self, ClusterError> {
        Self::new(&base.op())
    }

    pub fn algebra(&self) -> &Quiver {
        &self.algebra
    }

    pub fn zq(&self) -> &Zq {
        &self.zq
    }

    pub fn hereditary(&self) -> &Hereditary {
        &self.her
    }

    pub fn n(&self) -> usize {
        self.algebra.len()
    }

    /// `dim Hom(x, y)` in the mesh category. `u64::MAX` means nonzero but beyond the table.
    pub fn hom(&self, x: ZqVertex, y: ZqVertex) -> Result<u64, ClusterError> {
        if let Some(h) = self.table.hom(x, y) {
            return Ok(h);
        }
        // past a sincere level, a non-Dynkin hammock stays positive
        let last = self.table.depth();
        let row = ZqVertex::new(0, x.node);
        let sincere = self
            .algebra
            .nodes()
            .all(|q| self.table.hom(row, ZqVertex::new(last, q)).unwrap_or(0) > 0);
        if sincere {
            Ok(u64::MAX)
        } else {
            Err(ZqError::WindowTooSmall { level: y.level }.into())
        }
    }

    /// `dim Ext^1_C(x, y) = hom(x, tau y) + hom(y, tau x)`.
    pub fn ext1(&self, x: ZqVertex, y: ZqVertex) -> Result<u64, ClusterError> {
        Ok(self
            .hom(x, tau_k(y, 1))?
            .saturating_add(self.hom(y, tau_k(x, 1))?))
    }

    /// Ext^1 between two summands; `None` when both are regular.
    pub fn ext(&self, a: &Summand, b: &Summand) -> Result<Option<u64>, ClusterError> {
        use Summand::*;
        match (a, b) {
            (Transjective(x), Transjective(y)) => self.ext1(*x, *y).map(Some),
            (Transjective(y), Regular(r)) | (Regular(r), Transjective(y)) => {
                let e = self.her.hom_to_regular(*y, &self.her.coxeter(r));
                u64::try_from(e)
                    .map(Some)
                    .map_err(|_| ClusterError::Inconsistent {
                        k: 0,
                        msg: format!("negative Ext^1 {e} against regular {r:?}"),
                    })
            }
            (Regular(_), Regular(_)) => Ok(None),
        }
    }

    /// `dim Hom_C(s, m)` for a summand `s` and a transjective `m`.
    pub fn hom_c(&self, s: &Summand, m: ZqVertex) -> Result<u64, ClusterError> {
        match s {
            Summand::Transjective(x) => Ok(self
                .hom(*x, m)?
                .saturating_add(self.hom(tau_k(m, -1), tau_k(*x, 1))?)),
            Summand::Regular(r) => {
                let h = self.her.hom_regular_to(r, m);
                u64::try_from(h).map_err(|_| ClusterError::Inconsistent {
                    k: 0,
                    msg: format!("negative Hom from regular {r:?} to {m}"),
                })
            }
        }
    }

    fn g_vector(&self, s: &Summand) -> Vec<i64> {
        match s {
            Summand::Transjective(v) => match self.her.position(*v) {
                Position::ShiftedProjective(q) => {
                    (0..self.n()).map(|i| -i64::from(i == q.0)).collect()
                }
                Position::Module(d) => self.her.g_vector_of_dim(&d),
            },
            Summand::Regular(r) => self.her.g_vector_of_dim(r),
        }
    }

    fn object_of_g_vector(&self, g: &[i64]) -> Option<Summand> {
        let support: Vec<usize> = (0..g.len()).filter(|&i| g[i] != 0).collect();
        if let [q] = support[..] {
            if g[q] == -1 {
                return Some(Summand::Transjective(ZqVertex::new(-1, NodeId(q))));
            }
        }
        let d = self.her.dim_of_g_vector(g);
        if let Some(v) = self.her.locate(&d) {
            return Some(Summand::Transjective(v));
        }
        (d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x > 0)).then_some(Summand::Regular(d))
    }
}

/// `hom_mesh(x, tau y) + hom_mesh(y, tau x)` in `ZQ(base)`.
pub fn ext1_cluster(zq: &Zq, x: ZqVertex, y: ZqVertex, w: &Window) -> Result<u64, ZqError> {
    let w = w.widen(1);
    Ok(zq.hom_mesh(x, tau_k(y, 1), &w)? + zq.hom_mesh(y, tau_k(x, 1), &w)?)
}

/// Whether `s` is a cluster-tilting set of transjective vertices of `ZQ(base)`.
pub fn is_tilting_set(base: &Quiver, s: &[ZqVertex]) -> Result<bool, ClusterError> {
    if base.is_dynkin() {
        return Err(ClusterError::Dynkin);
    }
    let distinct: BTreeSet<_> = s.iter().collect();
    if s.len() != base.len() || distinct.len() != s.len() {
        return Ok(false);
    }
    let lo = s.iter().map(|v| v.level).min().unwrap_or(0);
    let hi = s.iter().map(|v| v.level).max().unwrap_or(0);
    let w = Window::new(lo, hi)?;
    let zq = Zq::new(base.clone());
    for (i, &x) in s.iter().enumerate() {
        for &y in &s[i..] {
            if ext1_cluster(&zq, x, y, &w)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ordered cluster-tilting set; summand `j` (1-based) is vertex `j` of `B = End(T)`.
#[derive(Clone, Debug)]
pub struct TiltingSet {
    cat: ClusterCategory,
    summands: Vec<Summand>,
}

impl PartialEq for TiltingSet {
    fn eq(&self, other: &Self) -> bool {
        self.cat.algebra == other.cat.algebra && self.summands == other.summands
    }
}

impl TiltingSet {
    /// The projectives `P(q)` at `(0, q)`.
    pub fn initial(cat: ClusterCategory) -> TiltingSet {
        let summands = cat
            .algebra
            .nodes()
            .map(|q| Summand::Transjective(ZqVertex::new(0, q)))
            .collect();
        TiltingSet { cat, summands }
    }

    pub fn for_path_algebra(q: &Quiver) -> Result<TiltingSet, ClusterError> {
        Ok(Self::initial(ClusterCategory::new(q)?))
    }

    pub fn new(cat: ClusterCategory, summands: Vec<Summand>) -> Result<TiltingSet, ClusterError> {
        let t = TiltingSet { cat, summands };
        t.validate()?;
        Ok(t)
    }

    /// Transjective summands given as vertices of `ZQ(base)`.
    pub fn from_zq_base(base: &Quiver, s: &[ZqVertex]) -> Result<TiltingSet, ClusterError> {
        let cat = ClusterCategory::from_zq_base(base)?;
        Self::new(cat, s.iter().map(|&v| Summand::Transjective(v)).collect())
    }

    pub fn validate(&self) -> Result<(), ClusterError> {
        let n = self.n();
        if self.summands.len() != n {
            return Err(ClusterError::Count {
                expected: n,
                found: self.summands.len(),
            });
        }
        for (i, a) in self.summands.iter().enumerate() {
            if let Summand::Regular(r) = a {
                if r.len() != n || r.iter().any(|&x| x < 0) || r.iter().all(|&x| x == 0) {
                    return Err(ClusterError::BadRegular(i + 1));
                }
            }
            for (j, b) in self.summands.iter().enumerate().skip(i) {
                if j > i && a == b {
                    return Err(ClusterError::Duplicate(i + 1, j + 1));
                }
                if self.cat.ext(a, b)?.is_some_and(|e| e != 0) {
                    return Err(ClusterError::NotRigid(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    pub fn category(&self) -> &ClusterCategory {
        &self.cat
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Summand `j`, 1-based.
    pub fn summand(&self, j: usize) -> Option<&Summand> {
        j.checked_sub(1).and_then(|i| self.summands.get(i))
    }

    pub fn n(&self) -> usize {
        self.cat.n()
    }

    /// Number of transjective summands, i.e. of transjective projective `B`-modules.
    pub fn transjective_count(&self) -> usize {
        self.summands
            .iter()
            .filter(|s| s.vertex().is_some())
            .count()
    }

    fn transjective(&self) -> impl Iterator<Item = (usize, ZqVertex)> + '_ {
        self.summands
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.vertex().map(|v| (i + 1, v)))
    }

    /// Replaces summand `k` (1-based) by its exchange partner.
    ///
    /// The partner comes from sign-coherent g-vector mutation and is cross-checked
    /// against an exhaustive search for transjective complements in a window.
    pub fn mutate(&self, k: usize) -> Result<TiltingSet, ClusterError> {
        let n = self.n();
        if k == 0 || k > n {
            return Err(ClusterError::BadIndex(k));
        }
        let bad = |msg: String| ClusterError::Inconsistent { k, msg };
        let idx = k - 1;
        let gs: Vec<Vec<i64>> = self.summands.iter().map(|s| self.cat.g_vector(s)).collect();
        let g: Mat = (0..n).map(|i| (0..n).map(|j| gs[j][i]).collect()).collect();
        let g_inv = linalg::inverse(&g).ok_or_else(|| bad("g-vectors are not a basis".into()))?;
        let c = linalg::inverse(&linalg::transpose(&g))
            .ok_or_else(|| bad("g-vectors are not a basis".into()))?;
        let b = linalg::mul(&linalg::mul(&g_inv, &self.cat.her.exchange_matrix()), &c);
        let ck = linalg::column(&c, idx);
        let eps = if ck.iter().all(|&x| x >= 0) {
            1
        } else if ck.iter().all(|&x| x <= 0) {
            -1
        } else {
            return Err(bad(format!("c-vector {ck:?} is not sign-coherent")));
        };
        let mut g_new: Vec<i64> = gs[idx].iter().map(|x| -x).collect();
        for (i, gi) in gs.iter().enumerate() {
            let m = (-eps * b[i][idx]).max(0);
            for (x, y) in g_new.iter_mut().zip(gi) {
                *x += m * y;
            }
        }
        let y = self
            .cat
            .object_of_g_vector(&g_new)
            .ok_or_else(|| bad(format!("g-vector {g_new:?} names no indecomposable")))?;

        let candidates = self.complement_candidates(idx)?;
        match &y {
            Summand::Transjective(v) if candidates != [*v] => {
                return Err(bad(if candidates.is_empty() {
                    "complement outside transjective component or window cap reached".into()
                } else {
                    format!("window search found {candidates:?}, exchange gives {v}")
                }));
            }
            Summand::Regular(r) if !candidates.is_empty() => {
                return Err(bad(format!(
                    "exchange gives regular {r:?}, window search found {candidates:?}"
                )));
            }
            _ => {}
        }
        if let Some(e) = self.cat.ext(&self.summands[idx], &y)? {
            if e != 1 {
                return Err(bad(format!("exchange pair has Ext^1 of dimension {e}")));
            }
        }
        let mut summands = self.summands.clone();
        summands[idx] = y;
        let t = TiltingSet {
            cat: self.cat.clone(),
            summands,
        };
        t.validate().map_err(|e| bad(e.to_string()))?;
        Ok(t)
    }

    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<TiltingSet, ClusterError> {
        ks.iter().try_fold(self.clone(), |t, &k| t.mutate(k))
    }

    /// Transjective `y` other than summand `idx` with Ext^1 vanishing against the rest,
    /// searched in the span of the set widened by `max(8 spread, 2n + 4)`.
    fn complement_candidates(&self, idx: usize) -> Result<Vec<ZqVertex>, ClusterError> {
        let levels: Vec<i64> = self.transjective().map(|(_, v)| v.level).collect();
        let lo = levels.iter().copied().min().unwrap_or(0);
        let hi = levels.iter().copied().max().unwrap_or(0);
        let reach = (8 * (hi - lo).max(1)).max(2 * self.n() as i64 + 4);
        let mut found = Vec::new();
        for l in lo - reach..=hi + reach {
            for q in self.cat.algebra.nodes() {
                let y = Summand::Transjective(ZqVertex::new(l, q));
                if self.summands.contains(&y) {
                    continue;
                }
                let mut ok = true;
                for (i, s) in self.summands.iter().enumerate() {
                    if i != idx && self.cat.ext(s, &y)?.is_some_and(|e| e != 0) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    found.push(ZqVertex::new(l, q));
                }
            }
        }
        Ok(found)
    }

    /// Entry `j` is `dim Hom_C(T_j, m)`.
    pub fn bmodule_dimension_vector(&self, m: ZqVertex) -> Result<Vec<i64>, ClusterError> {
        self.summands
            .iter()
            .map(|s| {
                let h = self.cat.hom_c(s, m)?;
                i64::try_from(h)
                    .ok()
                    .filter(|&h| h < i64::MAX)
                    .ok_or(ClusterError::Zq(ZqError::Overflow))
            })
            .collect()
    }

    fn span(&self) -> Result<(i64, i64), ClusterError> {
        let lo = self.transjective().map(|(_, v)| v.level - 2).min();
        let hi = self.transjective().map(|(_, v)| v.level).max();
        lo.zip(hi).ok_or(ClusterError::NoTransjective)
    }

    /// Levels of `tau^2 T .. T` widened by `2(n+1) + extra` on each side.
    pub fn default_window(&self, extra: i64) -> Result<Window, ClusterError> {
        let (lo, hi) = self.span()?;
        let m = 2 * (self.n() as i64 + 1) + extra;
        Ok(Window::new(lo - m, hi + m)?)
    }

    /// The transjective component of `B` on the window: `ZQ` minus `tau T_j`, with `T_j`
    /// marked `P(j)`, `tau^2 T_j` marked `I(j)` and the safe zone `n+1` levels inside.
    pub fn build_component(&self, w: Option<Window>) -> Result<ARComponent, ClusterError> {
        let n = self.n();
        let t = self.transjective_count();
        let (slo, shi) = self.span()?;
        let w = match w {
            Some(w) => w,
            None => self.default_window(0)?,
        };
        let margin = n as i64 + 1;
        if w.lo() > slo - margin || w.hi() < shi + margin {
            return Err(ClusterError::WindowTooSmall {
                lo: w.lo(),
                hi: w.hi(),
                margin,
            });
        }
        let zq = &self.cat.zq;
        let deleted: BTreeSet<ZqVertex> = self.transjective().map(|(_, v)| tau_k(v, 1)).collect();
        let proj: HashMap<ZqVertex, usize> = self.transjective().map(|(j, v)| (v, j)).collect();
        let inj: HashMap<ZqVertex, usize> =
            self.transjective().map(|(j, v)| (tau_k(v, 2), j)).collect();
        let mut b = ComponentBuilder::new(n, t);
        let mut ids = HashMap::new();
        let mut coords = Vec::new();
        for l in w.lo()..=w.hi() {
            for q in zq.base().nodes() {
                let v = ZqVertex::new(l, q);
                if deleted.contains(&v) {
                    continue;
                }
                let (p, i) = (proj.get(&v).copied(), inj.get(&v).copied());
                let label = match (p, i) {
                    (Some(p), Some(i)) => Some(format!("P({p})=I({i})")),
                    (Some(p), None) => Some(format!("P({p})")),
                    (None, Some(i)) => Some(format!("I({i})")),
                    (None, None) => None,
                };
                let dim = match self.bmodule_dimension_vector(v) {
                    Ok(d) => Some(d),
                    Err(ClusterError::Zq(ZqError::Overflow | ZqError::WindowTooSmall { .. })) => {
                        None
                    }
                    Err(e) => return Err(e),
                };
                let spec = VertexSpec {
                    label,
                    proj: p,
                    inj: i,
                    dim,
                    safe: (w.lo() + margin..=w.hi() - margin).contains(&l),
                };
                let id = b.vertex(&format!("{}@{}", zq.base().name(q), l), spec)?;
                ids.insert(v, id);
                coords.push(v);
            }
        }
        for &v in &coords {
            for (u, m) in zq.arrows_out(v) {
                if let Some(&u) = ids.get(&u) {
                    b.arrow(ids[&v], u, m);
                }
            }
            if let Some(&tv) = ids.get(&tau_k(v, 1)) {
                b.tau(ids[&v], tv);
            }
        }
        b.frame(ZqFrame {
            base: zq.base().clone(),
            coords,
            span: (slo, shi),
        });
        Ok(b.finish()?)
    }

    /// One line per summand in the input format.
    pub fn render(&self) -> String {
        let q = &self.cat.algebra;
        let mut s = String::new();
        for (i, x) in self.summands.iter().enumerate() {
            let _ = match x {
                Summand::Transjective(v) => {
                    writeln!(s, "summand {} {} {}", i + 1, q.name(v.node), v.level)
                }
                Summand::Regular(r) => {
                    let d: Vec<String> = r.iter().map(i64::to_string).collect();
                    writeln!(s, "regular {} {}", i + 1, d.join(","))
                }
            };
        }
        s
    }
}

/// A quiver file extended by `summand <index> <node> <level>`, `regular <index> <d1,...,dn>`
/// and `mutation <index>` lines.
#[derive(Clone, Debug)]
pub struct TiltingInput {
    pub quiver: Quiver,
    /// empty means the initial set
    pub summands: Vec<(usize, Summand)>,
    pub mutations: Vec<usize>,
}

impl TiltingInput {
    /// Builds the tilting set and applies the mutations in order.
    pub fn tilting_set(&self) -> Result<TiltingSet, ClusterError> {
        let cat = ClusterCategory::new(&self.quiver)?;
        let start = if self.summands.is_empty() {
            TiltingSet::initial(cat)
        } else {
            let n = cat.n();
            let mut slots: Vec<Option<Summand>> = vec![None; n];
            for (j, s) in &self.summands {
                match j.checked_sub(1).and_then(|i| slots.get_mut(i)) {
                    Some(slot @ None) => *slot = Some(s.clone()),
                    _ => return Err(ClusterError::BadIndex(*j)),
                }
            }
            let found = slots.iter().flatten().count();
            if found != n {
                return Err(ClusterError::Count { expected: n, found });
            }
            TiltingSet::new(cat, slots.into_iter().flatten().collect())?
        };
        start.mutate_sequence(&self.mutations)
    }
}

pub fn parse_tilting_input(text: &str) -> Result<TiltingInput, ClusterError> {
    let mut quiver_lines = Vec::new();
    let mut extra = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        match body.split_whitespace().next() {
            Some("summand" | "regular" | "mutation") => extra.push((i + 1, body)),
            _ => quiver_lines.push((i + 1, raw)),
        }
    }
    let quiver = quiver_io::parse_lines(quiver_lines.into_iter())?;
    let syntax = |line: usize, msg: &str| ClusterError::Syntax {
        line,
        msg: msg.to_string(),
    };
    let index = |line: usize, w: &str| {
        w.parse::<usize>()
            .map_err(|_| syntax(line, "summand index must be a positive integer"))
    };
    let mut summands = Vec::new();
    let mut mutations = Vec::new();
    for (line, body) in extra {
        let words: Vec<&str> = body.split_whitespace().collect();
        match words[..] {
            ["summand", j, node, level] => {
                let q = quiver.node(node).ok_or_else(|| QuiverError::UnknownNode {
                    line,
                    name: node.to_string(),
                })?;
                let level = level
                    .parse::<i64>()
                    .map_err(|_| syntax(line, "level must be an integer"))?;
                summands.push((
                    index(line, j)?,
                    Summand::Transjective(ZqVertex::new(level, q)),
                ));
            }
            ["regular", j, dims] => {
                let d = dims
                    .split(',')
                    .map(str::parse)
                    .collect::<Result<Vec<i64>, _>>()
                    .map_err(|_| syntax(line, "bad dimension vector"))?;
                summands.push((index(line, j)?, Summand::Regular(d)));
            }
            ["mutation", ref ks @ ..] if !ks.is_empty() => {
                for k in ks {
                    mutations.push(index(line, k)?);
                }
            }
            _ => return Err(syntax(line, &format!("cannot parse `{}`", body.trim()))),
        }
    }
    Ok(TiltingInput {
        quiver,
        summands,
        mutations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_io::parse_quiver;

    fn q(text: &str) -> Quiver {
        parse_quiver(text).unwrap()
    }

    fn v(level: i64, node: usize) -> ZqVertex {
        ZqVertex::new(level, NodeId(node - 1))
    }

    fn kronecker() -> Quiver {
        q("node 1\nnode 2\narrow 1 2 2")
    }

    const EX2: &str = "node 1\nnode 2\nnode 3\nnode 4\nnode 5\nnode 6\n\
        arrow 2 1\narrow 2 4\narrow 3 1\narrow 3 2\narrow 4 5\narrow 6 5\narrow 6 4\n";

    #[test]
    fn ext_examples() {
        let zq = Zq::new(kronecker());
        let w = Window::new(-2, 6).unwrap();
        assert_eq!(ext1_cluster(&zq, v(0, 1), v(0, 1), &w), Ok(0));
        assert_eq!(ext1_cluster(&zq, v(0, 1), v(1, 1), &w), Ok(1));
        assert_eq!(ext1_cluster(&zq, v(0, 2), v(1, 2), &w), Ok(1));
        for a in 0..4 {
            for b in 0..4 {
                for (x, y) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                    assert_eq!(
                        ext1_cluster(&zq, v(a, x), v(b, y), &w),
                        ext1_cluster(&zq, v(b, y), v(a, x), &w)
                    );
                }
            }
        }
    }

    #[test]
    fn tilting_examples() {
        let k = kronecker();
        assert!(is_tilting_set(&k, &[v(0, 1), v(0, 2)]).unwrap());
        assert!(!is_tilting_set(&k, &[v(0, 1), v(1, 1)]).unwrap());
        assert!(!is_tilting_set(&k, &[v(0, 1)]).unwrap());
        assert!(is_tilting_set(&k, &[v(5, 1), v(5, 2)]).unwrap());
        let a3 = q("node 1\nnode 2\nnode 3\narrow 1 2\narrow 2 3");
        assert!(matches!(
            is_tilting_set(&a3, &[]),
            Err(ClusterError::Dynkin)
        ));
        assert!(matches!(
            TiltingSet::for_path_algebra(&a3),
            Err(ClusterError::Dynkin)
        ));
    }

    #[test]
    fn kronecker_mutation() {
        let t = TiltingSet::from_zq_base(&kronecker(), &[v(0, 1), v(0, 2)]).unwrap();
        let m = t.mutate(1).unwrap();
        assert_eq!(
            m.summands(),
            &[
                Summand::Transjective(v(1, 1)),
                Summand::Transjective(v(0, 2))
            ]
        );
        assert_eq!(m.mutate(1).unwrap(), t);
        assert!(matches!(t.mutate(3), Err(ClusterError::BadIndex(3))));
    }

    #[test]
    fn mutation_is_an_involution() {
        let cat = ClusterCategory::new(&q(EX2)).unwrap();
        let t = TiltingSet::initial(cat)
            .mutate_sequence(&[2, 4, 6])
            .unwrap();
        for k in 1..=6 {
            let m = t.mutate(k).unwrap();
            let diff = (0..6)
                .filter(|&i| m.summands()[i] != t.summands()[i])
                .count();
            assert_eq!(diff, 1);
            assert_eq!(m.mutate(k).unwrap(), t);
        }
    }

    #[test]
    fn example_two_summands() {
        let input =
            parse_tilting_input(&format!("{EX2}mutation 2\nmutation 4\nmutation 6\n")).unwrap();
        let t = input.tilting_set().unwrap();
        assert_eq!(t.transjective_count(), 3);
        for k in [2, 4, 6] {
            assert!(matches!(t.summand(k), Some(Summand::Regular(_))));
        }
        let reparsed = parse_tilting_input(&format!("{EX2}{}", t.render()))
            .unwrap()
            .tilting_set()
            .unwrap();
        assert_eq!(reparsed, t);
    }

    #[test]
    fn example_two_fragment() {
        let cat = ClusterCategory::new(&q(EX2)).unwrap();
        let t = TiltingSet::initial(cat)
            .mutate_sequence(&[2, 4, 6])
            .unwrap();
        let c = t.build_component(None).unwrap();
        let find = |d: &[i64]| {
            let hits: Vec<_> = c.vertices().filter(|&x| c.dim(x) == Some(d)).collect();
            assert_eq!(hits.len(), 1, "{d:?}");
            hits[0]
        };
        let i5 = find(&[0, 0, 1, 2, 1, 0]);
        assert_eq!(Some(i5), c.injective(5));
        let m43 = find(&[0, 0, 1, 1, 0, 0]);
        assert!(c.has_arrow(i5, m43));
        let m264 = find(&[0, 1, 0, 1, 0, 1]);
        assert_eq!(c.tau(m264), Some(find(&[0, 0, 1, 1, 0, 1])));
        let p5 = c.projective(5).unwrap();
        assert_eq!(c.dim(p5), Some(&[0, 0, 0, 1, 1, 2][..]));
    }

    #[test]
    fn marks_follow_tau_squared() {
        let t = TiltingSet::for_path_algebra(&kronecker()).unwrap();
        let c = t.build_component(None).unwrap();
        let frame = c.frame().unwrap();
        for j in 1..=2 {
            let (p, i) = (c.projective(j).unwrap(), c.injective(j).unwrap());
            assert_eq!(frame.coords[i.0], tau_k(frame.coords[p.0], 2));
            assert!(c.dim(p).unwrap()[j - 1] >= 1);
            assert!(c.dim(i).unwrap()[j - 1] >= 1);
        }
        assert_eq!(c.t(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_tilting_input("node 1\nnode 2\narrow 1 2 2\nsummand 1 7 0"),
            Err(ClusterError::Quiver(QuiverError::UnknownNode {
                line: 4,
                ..
            }))
        ));
        assert!(matches!(
            parse_tilting_input("node 1\nnode 2\narrow 1 2 2\nmutation x"),
            Err(ClusterError::Syntax { line: 4, .. })
        ));
    }
}
