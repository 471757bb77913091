//! Which transjective modules lie on no local slice: the path criterion through completions
//! of rightmost slices, checked against brute-force slice enumeration and the counting bound.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::component::{ARComponent, VertexId, VertexSet};
use crate::slices::{
    completion, d_value, enumerate_local_slices, injective_sources, is_rightmost, reflect,
    Completion, Slice, SliceError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Slice(#[from] SliceError),
    #[error("t = {t} exceeds n = {n}")]
    BadCounts { n: usize, t: usize },
    #[error("`{0}` is outside the classified zone (it or its translate leaves the safe zone)")]
    OutsideZone(String),
    #[error("criterion and brute force disagree at `{vertex}` (criterion says {criterion})")]
    Mismatch {
        vertex: String,
        criterion: &'static str,
    },
    #[error("witness path for `{0}` is not sectional")]
    NotSectional(String),
    #[error("{found} modules off local slices exceed the bound {bound}")]
    BoundExceeded { found: usize, bound: u64 },
    #[error("{found} rightmost slices exceed 2^(t-1) - 1 = {bound}")]
    TooManyRightmost { found: usize, bound: u64 },
    #[error("`{0}` lies on a local slice")]
    OnSlice(String),
    #[error("`{0}` is projective")]
    Projective(String),
    #[error("no local slice through tau `{0}` has a sectional path to an injective")]
    NoLemma5Witness(String),
}

/// `max(0, (2^(t-1) - 1)(n - 2))`.
pub fn upper_bound(n: usize, t: usize) -> Result<u64, ClassifyError> {
    if t == 0 || t > n {
        return Err(ClassifyError::BadCounts { n, t });
    }
    Ok(rightmost_bound(t).saturating_mul(n.saturating_sub(2) as u64))
}

/// `2^(t-1) - 1`.
pub fn rightmost_bound(t: usize) -> u64 {
    1u64.checked_shl(t.saturating_sub(1) as u32)
        .map_or(u64::MAX, |p| p - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub slice: Slice,
    pub source: VertexId,
    pub path: Vec<VertexId>,
}

/// Slices of a component, computed once: all local slices and the completions
/// of every injective source of every rightmost one.
pub struct SliceData<'a> {
    c: &'a ARComponent,
    slices: Vec<Slice>,
    rightmost: Vec<(usize, Completion)>,
    covered: VertexSet,
}

impl<'a> SliceData<'a> {
    pub fn new(c: &'a ARComponent) -> Result<SliceData<'a>, ClassifyError> {
        let slices = enumerate_local_slices(c);
        let mut rightmost = Vec::new();
        for (i, s) in slices.iter().enumerate() {
            if is_rightmost(c, s) {
                for x in injective_sources(c, s) {
                    rightmost.push((i, completion(c, s, x)?));
                }
            }
        }
        let covered = slices
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .collect();
        Ok(SliceData {
            c,
            slices,
            rightmost,
            covered,
        })
    }

    pub fn component(&self) -> &ARComponent {
        self.c
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn rightmost(&self) -> Vec<&Slice> {
        let mut idx: Vec<usize> = self.rightmost.iter().map(|(i, _)| *i).collect();
        idx.dedup();
        idx.into_iter().map(|i| &self.slices[i]).collect()
    }

    /// `(slice, completion)` for every injective source of every rightmost slice.
    pub fn completions(&self) -> impl Iterator<Item = (&Slice, &Completion)> {
        self.rightmost.iter().map(|(i, h)| (&self.slices[*i], h))
    }

    /// Safe vertices that are projective or whose translate is safe.
    pub fn zone(&self) -> VertexSet {
        let c = self.c;
        c.vertices()
            .filter(|&v| {
                c.is_safe(v) && (c.is_projective(v) || c.tau(v).is_some_and(|t| c.is_safe(t)))
            })
            .collect()
    }

    fn check_zone(&self, m: VertexId) -> Result<(), ClassifyError> {
        if self.zone().contains(&m) {
            Ok(())
        } else {
            Err(ClassifyError::OutsideZone(self.c.id(m).to_string()))
        }
    }

    /// A rightmost slice, injective source `x` and path `I(x) -> ... -> τm -> ... -> I(j)`
    /// inside `H_x`, if one exists.
    pub fn criterion_off_slice(&self, m: VertexId) -> Result<Option<Witness>, ClassifyError> {
        self.check_zone(m)?;
        let c = self.c;
        if c.is_projective(m) {
            return Ok(None);
        }
        let tm = c.tau(m).expect("zone vertices have a translate");
        for (s, h) in self.completions() {
            if !h.members.contains(&tm) {
                continue;
            }
            if let Some(path) = c.find_path_in(h.source, tm, &h.members) {
                if !c.is_sectional(&path) {
                    return Err(ClassifyError::NotSectional(c.id(m).to_string()));
                }
                return Ok(Some(Witness {
                    slice: s.clone(),
                    source: h.source,
                    path,
                }));
            }
        }
        Ok(None)
    }

    /// Some enumerated local slice through `m`.
    pub fn bruteforce_on_slice(&self, m: VertexId) -> Result<Option<&Slice>, ClassifyError> {
        self.check_zone(m)?;
        Ok(self.slices.iter().find(|s| s.contains(m)))
    }

    pub fn lies_on_slice(&self, m: VertexId) -> bool {
        self.covered.contains(&m)
    }

    /// A local slice through `τm` with a sectional path from `τm` to an injective.
    pub fn lemma5_witness(&self, m: VertexId) -> Result<(Slice, Vec<VertexId>), ClassifyError> {
        let c = self.c;
        self.check_zone(m)?;
        if c.is_projective(m) {
            return Err(ClassifyError::Projective(c.id(m).to_string()));
        }
        if self.lies_on_slice(m) {
            return Err(ClassifyError::OnSlice(c.id(m).to_string()));
        }
        let tm = c.tau(m).expect("zone vertices have a translate");
        for s in self.slices.iter().filter(|s| s.contains(tm)) {
            if let Some(path) = c.find_path_in(tm, tm, s.vertices()) {
                if c.is_sectional(&path) {
                    return Ok((s.clone(), path));
                }
            }
        }
        Err(ClassifyError::NoLemma5Witness(c.id(m).to_string()))
    }

    /// Reflections of every rightmost slice at every injective source, with their verdicts.
    pub fn reflections(&self) -> Vec<(Slice, VertexId, Result<Slice, SliceError>)> {
        self.completions()
            .map(|(s, h)| (s.clone(), h.source, reflect(self.c, s, h.source)))
            .collect()
    }

    /// Pairs `(Σ, x, Σ')` with `d_{I(x)}(Σ, Σ') ≥ 2` where some `Y ∈ H_x` has `d_Y < 1`,
    /// or an injective `Y ∈ H_x` has `d_Y < 2`; also returns the number of pairs checked.
    pub fn lemma4_violations(&self) -> Result<(usize, Vec<String>), ClassifyError> {
        let c = self.c;
        let mut checked = 0;
        let mut bad = Vec::new();
        for (s, h) in self.completions() {
            for s2 in &self.slices {
                if d_value(c, h.source, s, s2)? < 2 {
                    continue;
                }
                checked += 1;
                for &y in &h.members {
                    let d = d_value(c, y, s, s2)?;
                    let need = if c.is_injective(y) { 2 } else { 1 };
                    if d < need {
                        bad.push(format!(
                            "{} in H_{} of {}: d = {d} against {}",
                            c.display(y),
                            c.display(h.source),
                            s.render(c),
                            s2.render(c)
                        ));
                    }
                }
            }
        }
        Ok((checked, bad))
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub n: usize,
    pub t: usize,
    pub bound: u64,
    pub zone: VertexSet,
    pub off_slice: BTreeMap<VertexId, Witness>,
    /// sampled for vertices inside the span of the tilting set (all of them for fixtures)
    pub on_slice: BTreeMap<VertexId, Slice>,
    pub slice_count: usize,
    pub rightmost_count: usize,
    /// `2^(t-1) - 1`, asserted only for components derived from a tilting set
    pub rightmost_bound: Option<u64>,
}

pub fn criterion_off_slice(c: &ARComponent, m: VertexId) -> Result<Option<Witness>, ClassifyError> {
    SliceData::new(c)?.criterion_off_slice(m)
}

pub fn bruteforce_on_slice(c: &ARComponent, m: VertexId) -> Result<Option<Slice>, ClassifyError> {
    Ok(SliceData::new(c)?.bruteforce_on_slice(m)?.cloned())
}

pub fn lemma5_witness(
    c: &ARComponent,
    m: VertexId,
) -> Result<(Slice, Vec<VertexId>), ClassifyError> {
    SliceData::new(c)?.lemma5_witness(m)
}

pub fn off_slice_modules(c: &ARComponent) -> Result<ClassificationReport, ClassifyError> {
    classify_with(&SliceData::new(c)?)
}

/// Classifies the zone by the criterion, cross-checks each verdict by brute force and
/// checks the off-slice bound. The rightmost count is recorded; see
/// [`ClassificationReport::check_rightmost`].
pub fn classify_with(data: &SliceData<'_>) -> Result<ClassificationReport, ClassifyError> {
    let c = data.component();
    let bound = upper_bound(c.n(), c.t())?;
    let zone = data.zone();
    let sampled = |v: VertexId| match c.frame() {
        Some(f) => {
            let l = f.coords[v.0].level;
            (f.span.0..=f.span.1).contains(&l)
        }
        None => true,
    };
    let mut off_slice = BTreeMap::new();
    let mut on_slice = BTreeMap::new();
    for &m in &zone {
        let criterion = data.criterion_off_slice(m)?;
        let brute = data.bruteforce_on_slice(m)?;
        match (criterion, brute) {
            (Some(w), None) => {
                off_slice.insert(m, w);
            }
            (None, Some(s)) => {
                if sampled(m) {
                    on_slice.insert(m, s.clone());
                }
            }
            (w, _) => {
                return Err(ClassifyError::Mismatch {
                    vertex: c.id(m).to_string(),
                    criterion: if w.is_some() { "off-slice" } else { "on-slice" },
                })
            }
        }
    }
    if off_slice.len() as u64 > bound {
        return Err(ClassifyError::BoundExceeded {
            found: off_slice.len(),
            bound,
        });
    }
    let rightmost_count = data.rightmost().len();
    Ok(ClassificationReport {
        n: c.n(),
        t: c.t(),
        bound,
        zone,
        off_slice,
        on_slice,
        slice_count: data.slices().len(),
        rightmost_count,
        rightmost_bound: c.frame().map(|_| rightmost_bound(c.t())),
    })
}

impl ClassificationReport {
    pub fn check_rightmost(&self) -> Result<(), ClassifyError> {
        match self.rightmost_bound {
            Some(bound) if self.rightmost_count as u64 > bound => {
                Err(ClassifyError::TooManyRightmost {
                    found: self.rightmost_count,
                    bound,
                })
            }
            _ => Ok(()),
        }
    }

    /// Ids of the off-slice vertices, sorted.
    pub fn off_slice_ids<'c>(&self, c: &'c ARComponent) -> Vec<&'c str> {
        let mut ids: Vec<&str> = self.off_slice.keys().map(|&v| c.id(v)).collect();
        ids.sort();
        ids
    }

    /// One line per classified vertex, a summary, and a machine-readable block.
    pub fn render(&self, c: &ARComponent) -> String {
        let mut order: Vec<VertexId> = self.zone.iter().copied().collect();
        order.sort_by(|a, b| c.id(*a).cmp(c.id(*b)));
        let mut s = String::new();
        let _ = writeln!(s, "n={} t={}", self.n, self.t);
        let _ = writeln!(
            s,
            "slices={} rightmost={}",
            self.slice_count, self.rightmost_count
        );
        let dim = |v: VertexId| match c.dim(v) {
            Some(d) => d.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
            None => "-".to_string(),
        };
        let path = |p: &[VertexId]| {
            p.iter()
                .map(|&v| c.display(v))
                .collect::<Vec<_>>()
                .join(" -> ")
        };
        for v in order {
            match self.off_slice.get(&v) {
                Some(w) => {
                    let _ = writeln!(
                        s,
                        "{} dim={} off-slice source={} path={}",
                        c.display(v),
                        dim(v),
                        c.display(w.source),
                        path(&w.path)
                    );
                }
                None => {
                    let via = self
                        .on_slice
                        .get(&v)
                        .map(|sl| format!(" {}", sl.render(c)))
                        .unwrap_or_default();
                    let _ = writeln!(s, "{} dim={} on-slice{}", c.display(v), dim(v), via);
                }
            }
        }
        let _ = writeln!(s, "{} ≤ bound {}", self.off_slice.len(), self.bound);
        if let Some(b) = self.rightmost_bound {
            let rel = if self.rightmost_count as u64 <= b {
                "≤"
            } else {
                ">"
            };
            let _ = writeln!(s, "rightmost {} {rel} {b}", self.rightmost_count);
        }
        let _ = writeln!(
            s,
            "report\nn {}\nt {}\nbound {}",
            self.n, self.t, self.bound
        );
        let _ = writeln!(s, "rightmost {}", self.rightmost_count);
        for id in self.off_slice_ids(c) {
            let _ = writeln!(s, "off {id}");
        }
        s
    }
}
