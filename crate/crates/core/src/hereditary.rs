//! Dimension-vector data of a hereditary path algebra: projectives, injectives,
//! Coxeter matrix and Euler form, plus the positions of transjective objects in ZQ.
//!
//! Modules are right modules, so `dim P(i)_j` is the number of paths `i -> j`.
//! The transjective component is `ZQ(Q^op)`: level `l >= 0` holds `tau^-l P(q)`,
//! level `-1` holds `P(q)[1]`, level `l <= -2` holds `tau^(-l-2) I(q)`.

use crate::linalg::{self, Mat};
use crate::quiver_io::{NodeId, Quiver};
use crate::zq::ZqVertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Position {
    Module(Vec<i64>),
    ShiftedProjective(NodeId),
}

#[derive(Clone, Debug)]
pub struct Hereditary {
    n: usize,
    pm: Mat,
    pm_inv: Mat,
    im: Mat,
    phi: Mat,
    phi_inv: Mat,
    euler: Mat,
    arrows: Mat,
}

impl Hereditary {
    pub fn new(q: &Quiver) -> Hereditary {
        let n = q.len();
        let paths = q.path_counts();
        let pm: Mat = (0..n)
            .map(|j| (0..n).map(|i| paths[i][j]).collect())
            .collect();
        let im: Mat = (0..n)
            .map(|j| (0..n).map(|i| paths[j][i]).collect())
            .collect();
        let pm_inv = linalg::inverse(&pm).expect("path matrix is unitriangular");
        let phi: Mat = linalg::mul(&im, &pm_inv)
            .into_iter()
            .map(|r| r.into_iter().map(|x| -x).collect())
            .collect();
        let phi_inv = linalg::inverse(&phi).expect("Coxeter matrix is invertible over Z");
        let adj = q.adjacency();
        let euler: Mat = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j) - adj[i][j]).collect())
            .collect();
        Hereditary {
            n,
            pm,
            pm_inv,
            im,
            phi,
            phi_inv,
            euler,
            arrows: adj,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn projective(&self, q: NodeId) -> Vec<i64> {
        linalg::column(&self.pm, q.0)
    }

    pub fn injective(&self, q: NodeId) -> Vec<i64> {
        linalg::column(&self.im, q.0)
    }

    /// `dim tau M = Phi dim M` for non-projective indecomposable `M`.
    pub fn coxeter(&self, x: &[i64]) -> Vec<i64> {
        linalg::apply(&self.phi, x)
    }

    pub fn coxeter_inv(&self, x: &[i64]) -> Vec<i64> {
        linalg::apply(&self.phi_inv, x)
    }

    /// `<x, y> = dim Hom - dim Ext^1`.
    pub fn euler(&self, x: &[i64], y: &[i64]) -> i64 {
        (0..self.n)
            .map(|i| x[i] * (0..self.n).map(|j| self.euler[i][j] * y[j]).sum::<i64>())
            .sum()
    }

    /// Projective dimension data as a matrix whose columns are `dim P(i)`.
    pub fn projective_matrix(&self) -> &Mat {
        &self.pm
    }

    /// `g` with `dim M = P g` for a module, i.e. the index of its projective resolution.
    pub fn g_vector_of_dim(&self, d: &[i64]) -> Vec<i64> {
        linalg::apply(&self.pm_inv, d)
    }

    pub fn dim_of_g_vector(&self, g: &[i64]) -> Vec<i64> {
        linalg::apply(&self.pm, g)
    }

    /// Exchange matrix of the path algebra: `b_ij = #(j -> i) - #(i -> j)`.
    pub fn exchange_matrix(&self) -> Mat {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.arrows[j][i] - self.arrows[i][j])
                    .collect()
            })
            .collect()
    }

    pub fn position(&self, v: ZqVertex) -> Position {
        let q = v.node;
        if v.level >= 0 {
            let mut d = self.projective(q);
            for _ in 0..v.level {
                d = self.coxeter_inv(&d);
            }
            Position::Module(d)
        } else if v.level == -1 {
            Position::ShiftedProjective(q)
        } else {
            let mut d = self.injective(q);
            for _ in 0..(-v.level - 2) {
                d = self.coxeter(&d);
            }
            Position::Module(d)
        }
    }

    /// Transjective position of an indecomposable with dimension vector `d`, if any.
    ///
    /// Preprojectives are found by applying `Phi` until a projective appears,
    /// preinjectives dually; a regular vector stays positive and is never matched.
    pub fn locate(&self, d: &[i64]) -> Option<ZqVertex> {
        if d.iter().any(|&x| x < 0) || d.iter().all(|&x| x == 0) {
            return None;
        }
        let total = d.iter().sum::<i64>();
        let bound = 4 * total + 4 * self.n as i64;
        let slack: i64 = 8
            * (0..self.n)
                .map(|q| {
                    self.projective(NodeId(q)).iter().sum::<i64>()
                        + self.injective(NodeId(q)).iter().sum::<i64>()
                })
                .sum::<i64>();
        // trajectories towards a projective (injective) shrink up to bounded fluctuation
        let positive = |v: &[i64]| {
            v.iter().all(|&x| x >= 0)
                && v.iter().any(|&x| x > 0)
                && v.iter().sum::<i64>() <= 2 * total + slack
        };
        let mut v = d.to_vec();
        let mut l = 0;
        while positive(&v) && l <= bound {
            if let Some(q) = (0..self.n).find(|&q| self.projective(NodeId(q)) == v) {
                return Some(ZqVertex::new(l, NodeId(q)));
            }
            v = self.coxeter(&v);
            l += 1;
        }
        let mut v = d.to_vec();
        let mut k = 0;
        while positive(&v) && k <= bound {
            if let Some(q) = (0..self.n).find(|&q| self.injective(NodeId(q)) == v) {
                return Some(ZqVertex::new(-2 - k, NodeId(q)));
            }
            v = self.coxeter_inv(&v);
            k += 1;
        }
        None
    }

    /// `dim Hom_C(R, y)` for regular `R` (dimension `r`) and transjective `y`.
    pub fn hom_regular_to(&self, r: &[i64], y: ZqVertex) -> i64 {
        match self.position(y) {
            Position::ShiftedProjective(q) => -self.euler(r, &self.projective(q)),
            Position::Module(d) if y.level >= 0 => {
                self.euler(&self.coxeter_inv(&d), &self.coxeter(r))
            }
            Position::Module(d) => self.euler(r, &d),
        }
    }

    /// `dim Hom_C(y, R)` for transjective `y` and regular `R`.
    pub fn hom_to_regular(&self, y: ZqVertex, r: &[i64]) -> i64 {
        match self.position(y) {
            Position::ShiftedProjective(q) => self.coxeter_inv(r)[q.0],
            Position::Module(d) if y.level >= 0 => self.euler(&d, r),
            Position::Module(d) => self.euler(&self.coxeter_inv(r), &self.coxeter(&d)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_io::parse_quiver;

    fn kronecker() -> Hereditary {
        Hereditary::new(&parse_quiver("node 1\nnode 2\narrow 1 2 2").unwrap())
    }

    #[test]
    fn kronecker_data() {
        let h = kronecker();
        assert_eq!(h.projective(NodeId(0)), vec![1, 2]);
        assert_eq!(h.projective(NodeId(1)), vec![0, 1]);
        assert_eq!(h.injective(NodeId(0)), vec![1, 0]);
        assert_eq!(h.injective(NodeId(1)), vec![2, 1]);
        // tau^-1 P(2) has dimension (2,3)
        assert_eq!(h.coxeter_inv(&[0, 1]), vec![2, 3]);
        assert_eq!(h.coxeter(&h.coxeter_inv(&[1, 2])), vec![1, 2]);
        // Hom(P(2), P(1)) = 2, Ext vanishes
        assert_eq!(h.euler(&[0, 1], &[1, 2]), 2);
    }

    #[test]
    fn locate_round_trip() {
        let q = parse_quiver("node 1\nnode 2\nnode 3\narrow 1 2\narrow 2 3\narrow 1 3").unwrap();
        let h = Hereditary::new(&q);
        for l in -6..6 {
            if l == -1 {
                continue;
            }
            for n in 0..3 {
                let v = ZqVertex::new(l, NodeId(n));
                let Position::Module(d) = h.position(v) else {
                    unreachable!()
                };
                assert_eq!(h.locate(&d), Some(v));
            }
        }
        // the null root direction is regular
        assert_eq!(h.locate(&[1, 1, 1]), None);
    }

    #[test]
    fn exchange_matrix_sign() {
        let h = kronecker();
        assert_eq!(h.exchange_matrix(), vec![vec![0, -2], vec![2, 0]]);
    }
}
