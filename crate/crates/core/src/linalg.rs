//! Small exact integer matrix helpers.

use num_rational::Ratio;

pub type Mat = Vec<Vec<i64>>;

#[cfg(test)]
pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let (n, m, k) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut c = vec![vec![0i64; k]; n];
    for i in 0..n {
        for l in 0..m {
            if a[i][l] == 0 {
                continue;
            }
            for j in 0..k {
                c[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    c
}

pub fn apply(a: &Mat, x: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

pub fn transpose(a: &Mat) -> Mat {
    let k = a.first().map_or(0, Vec::len);
    (0..k).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn column(a: &Mat, j: usize) -> Vec<i64> {
    a.iter().map(|r| r[j]).collect()
}

/// Inverse of an integer matrix whose inverse is again integral.
pub fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut m: Vec<Vec<Ratio<i128>>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .map(|&x| Ratio::from_integer(x as i128))
                .chain((0..n).map(|j| Ratio::from_integer(i128::from(i == j))))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| m[r][c] != Ratio::from_integer(0))?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        let pivot = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c && row[c] != Ratio::from_integer(0) {
                let f = row[c];
                for (x, &pv) in row.iter_mut().zip(&pivot) {
                    *x -= pv * f;
                }
            }
        }
    }
    m.into_iter()
        .map(|r| {
            r[n..]
                .iter()
                .map(|x| x.is_integer().then(|| x.to_integer() as i64))
                .collect()
        })
        .collect()
}
