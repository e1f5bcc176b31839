//! Small integer linear algebra used to validate group specifications.

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(d: usize) -> IntMatrix {
    (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_vec(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Row-style Hermite reduction; returns the nonzero echelon rows.
pub fn hermite_rows(vectors: &[Vec<i64>], dim: usize) -> Vec<Vec<i128>> {
    let mut rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| {
            debug_assert_eq!(v.len(), dim);
            v.iter().map(|&x| i128::from(x)).collect()
        })
        .collect();
    let mut out = Vec::new();
    for col in 0..dim {
        // Euclid on column `col` across the remaining rows.
        loop {
            let mut nonzero: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&i| rows[i][col].abs());
            let p = nonzero[0];
            let pivot = rows[p].clone();
            for &i in &nonzero[1..] {
                let f = rows[i][col] / pivot[col];
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
            let mut r = rows.swap_remove(i);
            if r[col] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(r);
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
    }
    out
}

/// True iff the integer span of `vectors` is all of `Z^dim`.
pub fn spans_unit_lattice(vectors: &[Vec<i64>], dim: usize) -> bool {
    let h = hermite_rows(vectors, dim);
    if h.len() != dim {
        return false;
    }
    h.iter().enumerate().all(|(i, r)| r[i] == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(determinant(&identity(3)), 1);
        assert_eq!(determinant(&vec![vec![0, -1], vec![1, 0]]), 1);
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&vec![vec![2, 0], vec![0, 3]]), 6);
        assert_eq!(
            determinant(&vec![vec![0, 2, 1], vec![1, 0, 0], vec![0, 1, 0]]),
            1
        );
    }

    #[test]
    fn lattice_span() {
        assert!(spans_unit_lattice(&[vec![1, 0], vec![0, 1]], 2));
        assert!(!spans_unit_lattice(&[vec![2, 0], vec![0, 2]], 2));
        assert!(spans_unit_lattice(&[vec![2, 3], vec![1, 1]], 2));
        assert!(!spans_unit_lattice(&[vec![1, 1]], 2));
        assert!(spans_unit_lattice(&[vec![2], vec![3]], 1));
        assert!(spans_unit_lattice(&[], 0));
    }
}
