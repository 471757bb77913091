//! Hom dimensions computed from actual representations over F_p.
//!
//! Modules over the path algebra of `R = base^op` are built as matrices, moved along
//! the translation with reflection functors, and Hom spaces are solved as linear
//! systems. Nothing here touches the mesh combinatorics under test.

#![allow(clippy::needless_range_loop)]

use localslice::{NodeId, Quiver};

const P: u64 = 1_000_003;

fn inv(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

#[derive(Clone, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    a: Vec<u64>,
}

impl Mat {
    fn zero(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.cols + j] = v % P;
    }

    fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    /// Basis of `{x : self x = 0}` as columns.
    fn kernel(&self) -> Mat {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| m.at(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                m.a.swap(r * m.cols + j, p * m.cols + j);
            }
            let iv = inv(m.at(r, c));
            for j in 0..m.cols {
                let v = m.at(r, j) * iv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let f = m.at(i, c);
                if i != r && f != 0 {
                    for j in 0..m.cols {
                        let v = m.at(i, j) + P * P - f * m.at(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zero(m.cols, free.len());
        for (f, &c) in free.iter().enumerate() {
            k.set(c, f, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, f, P - m.at(i, c));
            }
        }
        k
    }

    fn rank(&self) -> usize {
        self.cols - self.kernel().cols
    }

    fn rows_range(&self, from: usize, to: usize) -> Mat {
        Mat {
            rows: to - from,
            cols: self.cols,
            a: self.a[from * self.cols..to * self.cols].to_vec(),
        }
    }
}

/// A representation: one space per vertex and one matrix per arrow copy.
#[derive(Clone, Debug)]
pub struct Rep {
    pub dims: Vec<usize>,
    arrows: Vec<(usize, usize, Mat)>,
}

impl Rep {
    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }
}

/// Path algebra of an acyclic quiver, arrows expanded by multiplicity.
pub struct PathAlgebra {
    n: usize,
    arrows: Vec<(usize, usize)>,
    topo: Vec<usize>,
}

impl PathAlgebra {
    /// Modules over the path algebra of `base^op`.
    pub fn for_zq_base(base: &Quiver) -> PathAlgebra {
        let mut arrows = Vec::new();
        for a in base.arrows() {
            for _ in 0..a.mult {
                arrows.push((a.dst.0, a.src.0));
            }
        }
        let n = base.len();
        let topo: Vec<usize> = base.topological_order().iter().rev().map(|v| v.0).collect();
        PathAlgebra { n, arrows, topo }
    }

    // paths[i][j] = list of paths i ~> j, as arrow index sequences
    fn paths(&self) -> Vec<Vec<Vec<Vec<usize>>>> {
        let mut p = vec![vec![Vec::new(); self.n]; self.n];
        for &s in &self.topo {
            p[s][s].push(Vec::new());
        }
        for &v in &self.topo {
            for (k, &(a, b)) in self.arrows.iter().enumerate() {
                if a != v {
                    continue;
                }
                for s in 0..self.n {
                    let ext: Vec<Vec<usize>> = p[s][v]
                        .iter()
                        .map(|path| {
                            let mut q = path.clone();
                            q.push(k);
                            q
                        })
                        .collect();
                    p[s][b].extend(ext);
                }
            }
        }
        p
    }

    pub fn projective(&self, i: usize) -> Rep {
        let p = self.paths();
        let basis: Vec<&Vec<Vec<usize>>> = (0..self.n).map(|j| &p[i][j]).collect();
        let dims = basis.iter().map(|b| b.len()).collect();
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                let mut m = Mat::zero(basis[b].len(), basis[a].len());
                for (c, path) in basis[a].iter().enumerate() {
                    let mut q = path.to_vec();
                    q.push(k);
                    let r = basis[b].iter().position(|x| *x == q).expect("path extends");
                    m.set(r, c, 1);
                }
                (a, b, m)
            })
            .collect();
        Rep { dims, arrows }
    }

    pub fn injective(&self, i: usize) -> Rep {
        let p = self.paths();
        let basis: Vec<&Vec<Vec<usize>>> = (0..self.n).map(|j| &p[j][i]).collect();
        let dims = basis.iter().map(|b| b.len()).collect();
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                // dual of paths b ~> i  ->  paths a ~> i, q |-> k q
                let mut m = Mat::zero(basis[a].len(), basis[b].len());
                for (c, path) in basis[b].iter().enumerate() {
                    let mut q = vec![k];
                    q.extend(path.iter());
                    let r = basis[a].iter().position(|x| *x == q).expect("path extends");
                    m.set(r, c, 1);
                }
                (a, b, m.transpose())
            })
            .collect();
        Rep { dims, arrows }
    }

    fn reflect_source(&self, m: &Rep, k: usize) -> Rep {
        let out: Vec<usize> = (0..m.arrows.len())
            .filter(|&i| m.arrows[i].0 == k)
            .collect();
        let total: usize = out.iter().map(|&i| m.dims[m.arrows[i].1]).sum();
        let mut phi = Mat::zero(total, m.dims[k]);
        let mut off = 0;
        for &i in &out {
            let a = &m.arrows[i].2;
            for r in 0..a.rows {
                for c in 0..a.cols {
                    phi.set(off + r, c, a.at(r, c));
                }
            }
            off += a.rows;
        }
        // cokernel projection: rows spanning the left null space of phi
        let pi = phi.transpose().kernel().transpose();
        let mut r = m.clone();
        r.dims[k] = pi.rows;
        let mut off = 0;
        for &i in &out {
            let (_, j, ref a) = m.arrows[i];
            let mut block = Mat::zero(pi.rows, a.rows);
            for x in 0..pi.rows {
                for y in 0..a.rows {
                    block.set(x, y, pi.at(x, off + y));
                }
            }
            off += a.rows;
            r.arrows[i] = (j, k, block);
        }
        r
    }

    fn reflect_sink(&self, m: &Rep, k: usize) -> Rep {
        let inn: Vec<usize> = (0..m.arrows.len())
            .filter(|&i| m.arrows[i].1 == k)
            .collect();
        let total: usize = inn.iter().map(|&i| m.dims[m.arrows[i].0]).sum();
        let mut psi = Mat::zero(m.dims[k], total);
        let mut off = 0;
        for &i in &inn {
            let a = &m.arrows[i].2;
            for r in 0..a.rows {
                for c in 0..a.cols {
                    psi.set(r, off + c, a.at(r, c));
                }
            }
            off += a.cols;
        }
        let iota = psi.kernel();
        let mut r = m.clone();
        r.dims[k] = iota.cols;
        let mut off = 0;
        for &i in &inn {
            let (j, _, ref a) = m.arrows[i];
            r.arrows[i] = (k, j, iota.rows_range(off, off + a.cols));
            off += a.cols;
        }
        r
    }

    /// `tau^-1` of an indecomposable (zero on injectives).
    pub fn tau_inv(&self, m: &Rep) -> Rep {
        self.topo
            .iter()
            .fold(m.clone(), |r, &k| self.reflect_source(&r, k))
    }

    /// `tau` of an indecomposable (zero on projectives).
    pub fn tau(&self, m: &Rep) -> Rep {
        self.topo
            .iter()
            .rev()
            .fold(m.clone(), |r, &k| self.reflect_sink(&r, k))
    }

    pub fn hom(&self, m: &Rep, n: &Rep) -> usize {
        // unknowns f_v : M_v -> N_v, row-major, concatenated
        let mut start = vec![0; self.n + 1];
        for v in 0..self.n {
            start[v + 1] = start[v] + m.dims[v] * n.dims[v];
        }
        let unknowns = start[self.n];
        if unknowns == 0 {
            return 0;
        }
        let mut eqs: Vec<Vec<u64>> = Vec::new();
        for (k, &(a, b)) in self.arrows.iter().enumerate() {
            let (ma, na) = (&m.arrows[k].2, &n.arrows[k].2);
            // N_k f_a - f_b M_k = 0, entry (r, c) for r < dim N_b, c < dim M_a
            for r in 0..n.dims[b] {
                for c in 0..m.dims[a] {
                    let mut row = vec![0u64; unknowns];
                    for s in 0..n.dims[a] {
                        let i = start[a] + s * m.dims[a] + c;
                        row[i] = (row[i] + na.at(r, s)) % P;
                    }
                    for s in 0..m.dims[b] {
                        let i = start[b] + r * m.dims[b] + s;
                        row[i] = (row[i] + P - ma.at(s, c)) % P;
                    }
                    eqs.push(row);
                }
            }
        }
        let sys = Mat {
            rows: eqs.len(),
            cols: unknowns,
            a: eqs.concat(),
        };
        unknowns - sys.rank()
    }

    pub fn euler(&self, m: &Rep, n: &Rep) -> i64 {
        let d: i64 = (0..self.n).map(|v| (m.dims[v] * n.dims[v]) as i64).sum();
        let a: i64 = self
            .arrows
            .iter()
            .map(|&(a, b)| (m.dims[a] * n.dims[b]) as i64)
            .sum();
        d - a
    }

    pub fn ext1(&self, m: &Rep, n: &Rep) -> usize {
        let e = self.hom(m, n) as i64 - self.euler(m, n);
        assert!(e >= 0, "negative ext");
        e as usize
    }

    /// `Hom_D(M[a], N[b])` in the derived category.
    pub fn hom_derived(&self, m: &(Rep, i64), n: &(Rep, i64)) -> usize {
        match n.1 - m.1 {
            0 => self.hom(&m.0, &n.0),
            1 => self.ext1(&m.0, &n.0),
            _ => 0,
        }
    }

    pub fn which_injective(&self, m: &Rep) -> Option<usize> {
        (0..self.n).find(|&i| self.injective(i).dims == m.dims)
    }
}

/// Derived-category objects for a window of levels `lo..=hi` of `ZQ(base)`, indexed
/// `[level - lo][node]`. For representation-infinite `base` the window must lie in
/// `-inf..=-2` (preinjectives) joined with `-1..` (shifted preprojectives); for Dynkin
/// `base` any window with `lo >= 0` is walked from the projectives through shifts.
pub fn place(alg: &PathAlgebra, base: &Quiver, lo: i64, hi: i64) -> Vec<Vec<(Rep, i64)>> {
    let n = base.len();
    let mut out = vec![Vec::with_capacity(n); (hi - lo + 1) as usize];
    for q in 0..n {
        let col: Vec<(Rep, i64)> = if base.is_dynkin() {
            assert!(lo >= 0);
            let mut cur = (alg.projective(q), 0);
            let mut col = Vec::new();
            for level in 0..=hi {
                if level >= lo {
                    col.push(cur.clone());
                }
                let next = alg.tau_inv(&cur.0);
                cur = if next.is_zero() {
                    let j = alg
                        .which_injective(&cur.0)
                        .expect("zero tau^-1 means injective");
                    (alg.projective(j), cur.1 + 1)
                } else {
                    (next, cur.1)
                };
            }
            col
        } else {
            (lo..=hi)
                .map(|level| {
                    if level <= -2 {
                        let m = (0..-level - 2).fold(alg.injective(q), |m, _| alg.tau(&m));
                        (m, 0)
                    } else {
                        let m = (0..level + 1).fold(alg.projective(q), |m, _| alg.tau_inv(&m));
                        (m, 1)
                    }
                })
                .collect()
        };
        for (i, obj) in col.into_iter().enumerate() {
            out[i].push(obj);
        }
    }
    out
}

pub fn node(q: usize) -> NodeId {
    NodeId(q)
}

impl PathAlgebra {
    /// `F = tau^-1 [1]`, with `tau^-1 I(q) = P(q)[1]`.
    pub fn f_shift(&self, x: &(Rep, i64)) -> (Rep, i64) {
        let m = self.tau_inv(&x.0);
        if m.is_zero() {
            let q = self
                .which_injective(&x.0)
                .expect("zero tau^-1 means injective");
            (self.projective(q), x.1 + 2)
        } else {
            (m, x.1 + 1)
        }
    }

    /// `F^-1 = tau [-1]`, with `tau P(q) = I(q)[-1]`.
    pub fn f_unshift(&self, x: &(Rep, i64)) -> (Rep, i64) {
        let m = self.tau(&x.0);
        if m.is_zero() {
            let q = (0..self.n)
                .find(|&q| self.projective(q).dims == x.0.dims)
                .expect("zero tau means projective");
            (self.injective(q), x.1 - 2)
        } else {
            (m, x.1 - 1)
        }
    }

    /// `Hom` in the cluster category: the sum of `Hom_D(X, F^i Y)`, nonzero for few `i`.
    pub fn hom_cluster(&self, x: &(Rep, i64), y: &(Rep, i64)) -> usize {
        let mut total = self.hom_derived(x, y);
        let (mut up, mut down) = (y.clone(), y.clone());
        for _ in 0..3 {
            up = self.f_shift(&up);
            down = self.f_unshift(&down);
            total += self.hom_derived(x, &up) + self.hom_derived(x, &down);
        }
        total
    }
}
