//! Local slices of a component window: the predicate, enumeration, rightmost slices,
//! completions `H_x = J ⊔ J⁻ ⊔ E`, reflections and the `d` function.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::component::{ARComponent, VertexId, VertexSet};
use crate::zq::ZqVertex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SliceError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` lies outside the safe zone")]
    OutsideSafeZone(String),
    #[error("not a local slice: {0}")]
    NotLocalSlice(String),
    #[error("`{0}` is not an injective source of the slice")]
    NotInjectiveSource(String),
    #[error("slice is not rightmost")]
    NotRightmost,
    #[error("the reflection needs the image of `{0}`, which is missing from the window")]
    MissingVertex(String),
    #[error("`{0}` is not in the slice")]
    NotInSlice(String),
    #[error("tau-orbit of `{0}` does not meet the target slice inside the window")]
    OrbitMisses(String),
    #[error("tau-orbit of `{0}` meets the target slice at shifts {1:?}")]
    OrbitAmbiguous(String, Vec<i64>),
    #[error("line {0}: expected `slice: <id> ...`")]
    Syntax(usize),
}

/// A vertex set that passed [`is_local_slice`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slice(VertexSet);

impl Slice {
    pub fn new(c: &ARComponent, s: VertexSet) -> Result<Slice, SliceError> {
        if is_local_slice(c, &s)? {
            Ok(Slice(s))
        } else {
            Err(SliceError::NotLocalSlice(render_set(c, &s)))
        }
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `slice: <ids>` with ids sorted.
    pub fn render(&self, c: &ARComponent) -> String {
        format!("slice: {}", sorted_ids(c, &self.0).join(" "))
    }
}

fn sorted_ids<'a>(c: &'a ARComponent, s: &VertexSet) -> Vec<&'a str> {
    let mut ids: Vec<&str> = s.iter().map(|&v| c.id(v)).collect();
    ids.sort();
    ids
}

fn render_set(c: &ARComponent, s: &VertexSet) -> String {
    format!("{{{}}}", sorted_ids(c, s).join(", "))
}

/// Parses `slice:` lines; other non-blank, non-comment lines are errors.
pub fn parse_slices(c: &ARComponent, text: &str) -> Result<Vec<VertexSet>, SliceError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let rest = line
            .strip_prefix("slice:")
            .ok_or(SliceError::Syntax(i + 1))?;
        let s = rest
            .split_whitespace()
            .map(|id| {
                c.vertex(id)
                    .ok_or_else(|| SliceError::UnknownVertex(id.to_string()))
            })
            .collect::<Result<VertexSet, _>>()?;
        out.push(s);
    }
    Ok(out)
}

fn connected(c: &ARComponent, s: &VertexSet) -> bool {
    let Some(&start) = s.iter().next() else {
        return false;
    };
    let mut seen = VertexSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &(w, _) in c.out(v).iter().chain(c.inn(v)) {
            if s.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == s.len()
}

fn is_presection(c: &ARComponent, s: &VertexSet) -> bool {
    s.iter().all(|&v| {
        c.out(v)
            .iter()
            .all(|&(y, _)| s.contains(&y) || c.tau(y).is_some_and(|ty| s.contains(&ty)))
            && c.inn(v)
                .iter()
                .all(|&(x, _)| s.contains(&x) || c.tau_inv(x).is_some_and(|tx| s.contains(&tx)))
    })
}

/// Whether some sectional path leaves `s` and comes back.
fn has_sectional_detour(c: &ARComponent, s: &VertexSet) -> bool {
    // state: (vertex, previous vertex, whether the path has left s)
    let mut seen: HashSet<(VertexId, VertexId, bool)> = HashSet::new();
    let mut queue = VecDeque::new();
    for &a in s {
        for &(b, _) in c.out(a) {
            if !s.contains(&b) && seen.insert((b, a, true)) {
                queue.push_back((b, a, true));
            }
        }
    }
    while let Some((v, prev, left)) = queue.pop_front() {
        if left && s.contains(&v) {
            return true;
        }
        for &(w, _) in c.out(v) {
            if c.tau(w) == Some(prev) {
                continue;
            }
            let st = (w, v, left || !s.contains(&w));
            if seen.insert(st) {
                queue.push_back(st);
            }
        }
    }
    false
}

/// Connected, presection, sectionally convex and of size `n`.
///
/// Sets touching vertices outside the safe zone are refused.
pub fn is_local_slice(c: &ARComponent, s: &VertexSet) -> Result<bool, SliceError> {
    if let Some(&v) = s.iter().find(|&&v| !c.is_safe(v)) {
        return Err(SliceError::OutsideSafeZone(c.id(v).to_string()));
    }
    Ok(s.len() == c.n() && connected(c, s) && is_presection(c, s) && !has_sectional_detour(c, s))
}

/// All local slices inside the safe zone, sorted.
///
/// Components derived from a tilting set are enumerated by one vertex per column;
/// fixtures by propagating the presection condition from every safe vertex.
pub fn enumerate_local_slices(c: &ARComponent) -> Vec<Slice> {
    if c.frame().is_some() {
        enumerate_by_columns(c)
    } else {
        enumerate_by_propagation(c)
    }
}

/// Offsets `f` with `f(x) - f(y) ∈ {0, 1}` along every arrow `x -> y` of the base quiver.
pub fn enumerate_by_columns(c: &ARComponent) -> Vec<Slice> {
    let Some(frame) = c.frame() else {
        return enumerate_by_propagation(c);
    };
    let base = &frame.base;
    let n = base.len();
    let at: HashMap<ZqVertex, VertexId> = frame
        .coords
        .iter()
        .enumerate()
        .map(|(i, &z)| (z, VertexId(i)))
        .collect();
    // visit columns so that each one after the first touches an earlier one
    let nb: Vec<Vec<(usize, i64)>> = {
        let mut nb = vec![Vec::new(); n];
        for a in base.arrows() {
            // f(src) - f(dst) in {0, 1}
            nb[a.src.0].push((a.dst.0, 1));
            nb[a.dst.0].push((a.src.0, -1));
        }
        nb
    };
    let mut order = vec![0];
    let mut placed = vec![false; n];
    placed[0] = true;
    let mut i = 0;
    while i < order.len() {
        for &(w, _) in &nb[order[i]] {
            if !placed[w] {
                placed[w] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    let safe_levels: BTreeSet<i64> = c
        .vertices()
        .filter(|&v| c.is_safe(v))
        .map(|v| frame.coords[v.0].level)
        .collect();
    let mut out = BTreeSet::new();
    let mut f: Vec<Option<i64>> = vec![None; n];
    for &l in &safe_levels {
        f[order[0]] = Some(l);
        columns(c, &at, &nb, &order, 1, &mut f, &mut out);
    }
    out.into_iter().collect()
}

fn columns(
    c: &ARComponent,
    at: &HashMap<ZqVertex, VertexId>,
    nb: &[Vec<(usize, i64)>],
    order: &[usize],
    depth: usize,
    f: &mut Vec<Option<i64>>,
    out: &mut BTreeSet<Slice>,
) {
    let vertex = |q: usize, l: i64| {
        at.get(&ZqVertex::new(l, crate::quiver_io::NodeId(q)))
            .copied()
            .filter(|&v| c.is_safe(v))
    };
    if depth == order.len() {
        let s: Option<VertexSet> = (0..f.len()).map(|q| vertex(q, f[q].unwrap())).collect();
        if let Some(s) = s {
            if is_local_slice(c, &s) == Ok(true) {
                out.insert(Slice(s));
            }
        }
        return;
    }
    let q = order[depth];
    let &(p, sign) = nb[q]
        .iter()
        .find(|(p, _)| f[*p].is_some())
        .expect("connected base");
    let fp = f[p].unwrap();
    // sign = +1: q -> p in the base, f(q) - f(p) in {0,1}; sign = -1: p -> q
    for d in [0, 1] {
        let l = fp + sign * d;
        let consistent = nb[q].iter().all(|&(r, s)| match f[r] {
            Some(fr) => (0..=1).contains(&(s * (l - fr))),
            None => true,
        });
        if consistent && vertex(q, l).is_some() {
            f[q] = Some(l);
            columns(c, at, nb, order, depth + 1, f, out);
            f[q] = None;
        }
    }
}

/// Grows sets from every safe vertex, branching on the first violated presection constraint.
pub fn enumerate_by_propagation(c: &ARComponent) -> Vec<Slice> {
    let mut out = BTreeSet::new();
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut stack: Vec<VertexSet> = c
        .vertices()
        .filter(|&v| c.is_safe(v))
        .map(|v| VertexSet::from([v]))
        .collect();
    while let Some(s) = stack.pop() {
        if s.len() > c.n() || !seen.insert(s.clone()) {
            continue;
        }
        match first_gap(c, &s) {
            Some(options) => {
                for o in options.into_iter().flatten() {
                    if c.is_safe(o) {
                        let mut t = s.clone();
                        t.insert(o);
                        stack.push(t);
                    }
                }
            }
            None => {
                if is_local_slice(c, &s) == Ok(true) {
                    out.insert(Slice(s));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// The two ways to repair the first violated presection constraint, if any.
fn first_gap(c: &ARComponent, s: &VertexSet) -> Option<[Option<VertexId>; 2]> {
    for &v in s {
        for &(y, _) in c.out(v) {
            let ty = c.tau(y);
            if !s.contains(&y) && !ty.is_some_and(|t| s.contains(&t)) {
                return Some([Some(y), ty]);
            }
        }
        for &(x, _) in c.inn(v) {
            let tx = c.tau_inv(x);
            if !s.contains(&x) && !tx.is_some_and(|t| s.contains(&t)) {
                return Some([Some(x), tx]);
            }
        }
    }
    None
}

/// All sources of the slice carry an injective mark.
pub fn is_rightmost(c: &ARComponent, s: &Slice) -> bool {
    c.sources_of(&s.0).iter().all(|&v| c.is_injective(v))
}

/// The injective sources of a slice.
pub fn injective_sources(c: &ARComponent, s: &Slice) -> VertexSet {
    c.sources_of(&s.0)
        .into_iter()
        .filter(|&v| c.is_injective(v))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub source: VertexId,
    pub members: VertexSet,
    /// `H_1, H_2', H_2, H_3', ...` up to the first repetition
    pub chain: Vec<VertexSet>,
    pub j: VertexSet,
    pub j_minus: VertexSet,
    pub e: VertexSet,
}

impl Completion {
    pub fn decompose(&self) -> (&VertexSet, &VertexSet, &VertexSet) {
        (&self.j, &self.j_minus, &self.e)
    }
}

/// Closure under: `L -> M` in `s`, `L ∈ h` with an injective (reflexive) successor in `h`.
fn close_c(c: &ARComponent, s: &VertexSet, h: &VertexSet) -> VertexSet {
    let mut h = h.clone();
    loop {
        let grow: Vec<VertexId> = h
            .iter()
            .filter(|&&l| c.successors_in(l, &h).iter().any(|&i| c.is_injective(i)))
            .flat_map(|&l| c.out(l).iter().map(|&(m, _)| m))
            .filter(|m| s.contains(m) && !h.contains(m))
            .collect();
        if grow.is_empty() {
            return h;
        }
        h.extend(grow);
    }
}

fn close_pred(c: &ARComponent, s: &VertexSet, h: &VertexSet) -> VertexSet {
    h.iter().flat_map(|&v| c.predecessors_in(v, s)).collect()
}

/// The completion `H_x` of an injective source `x` of `s`.
pub fn completion(c: &ARComponent, s: &Slice, x: VertexId) -> Result<Completion, SliceError> {
    if !c.is_injective(x) || !c.sources_of(&s.0).contains(&x) {
        return Err(SliceError::NotInjectiveSource(c.id(x).to_string()));
    }
    let mut h = VertexSet::from([x]);
    let mut chain = vec![h.clone()];
    loop {
        let hc = close_c(c, &s.0, &h);
        let hp = close_pred(c, &s.0, &hc);
        if hp == h {
            break;
        }
        chain.push(hc);
        chain.push(hp.clone());
        h = hp;
    }
    let j: VertexSet = h.iter().copied().filter(|&v| c.is_injective(v)).collect();
    let j_minus: VertexSet = h
        .iter()
        .copied()
        .filter(|&v| {
            !c.is_injective(v) && c.successors_in(v, &h).iter().any(|&i| c.is_injective(i))
        })
        .collect();
    let e = h
        .iter()
        .copied()
        .filter(|v| !j.contains(v) && !j_minus.contains(v))
        .collect();
    Ok(Completion {
        source: x,
        members: h,
        chain,
        j,
        j_minus,
        e,
    })
}

/// `σ_x⁺ s = τ⁻²(J ∪ J⁻) ∪ τ⁻¹E ∪ (s ∖ H_x)`, with `τ⁻² I(y)` read as `P(y)`.
pub fn reflect(c: &ARComponent, s: &Slice, x: VertexId) -> Result<Slice, SliceError> {
    if !is_rightmost(c, s) {
        return Err(SliceError::NotRightmost);
    }
    let h = completion(c, s, x)?;
    let missing = |v: VertexId| SliceError::MissingVertex(c.id(v).to_string());
    let mut out: VertexSet = s.0.difference(&h.members).copied().collect();
    for &v in &h.j {
        let y = c.inj_mark(v).expect("injective");
        out.insert(c.projective(y).ok_or_else(|| missing(v))?);
    }
    for &v in &h.j_minus {
        let w = c
            .tau_inv(v)
            .and_then(|w| c.tau_inv(w))
            .ok_or_else(|| missing(v))?;
        out.insert(w);
    }
    for &v in &h.e {
        out.insert(c.tau_inv(v).ok_or_else(|| missing(v))?);
    }
    Slice::new(c, out)
}

/// The unique `k` with `τ^{-k} v ∈ s2`, walking the τ-orbit of `v` through the window and
/// passing from an injective `I(y)` to `P(y)` (two steps) where `τ⁻¹` is undefined.
pub fn d_value(c: &ARComponent, v: VertexId, s1: &Slice, s2: &Slice) -> Result<i64, SliceError> {
    if !s1.contains(v) {
        return Err(SliceError::NotInSlice(c.id(v).to_string()));
    }
    let mut hits = Vec::new();
    if s2.contains(v) {
        hits.push(0);
    }
    let bound = c.len() as i64 + 2;
    for forward in [true, false] {
        let (mut cur, mut k) = (v, 0i64);
        while k.abs() <= bound {
            let step = if forward {
                match c.tau_inv(cur) {
                    Some(w) => Some((w, 1)),
                    None => c
                        .inj_mark(cur)
                        .and_then(|y| c.projective(y))
                        .map(|w| (w, 2)),
                }
            } else {
                match c.tau(cur) {
                    Some(w) => Some((w, -1)),
                    None => c
                        .proj_mark(cur)
                        .and_then(|y| c.injective(y))
                        .map(|w| (w, -2)),
                }
            };
            let Some((w, dk)) = step else { break };
            cur = w;
            k += dk;
            if s2.contains(cur) {
                hits.push(k);
            }
        }
    }
    match hits[..] {
        [k] => Ok(k),
        [] => Err(SliceError::OrbitMisses(c.id(v).to_string())),
        _ => {
            hits.sort();
            Err(SliceError::OrbitAmbiguous(c.id(v).to_string(), hits))
        }
    }
}
