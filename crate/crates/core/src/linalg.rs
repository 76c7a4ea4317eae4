//! Exact nullspaces over `ℚ(√d)`.

use crate::scalar::FieldScalar;

/// Basis of `{x : M x = 0}` for a `rows × cols` matrix.
///
/// Row reduction to reduced echelon form; each kernel vector sets one free
/// column to `1` and the other free columns to `0`.
pub fn exact_kernel(matrix: &[Vec<FieldScalar>], cols: usize) -> Vec<Vec<FieldScalar>> {
    let mut m: Vec<Vec<FieldScalar>> = matrix.to_vec();
    debug_assert!(m.iter().all(|r| r.len() == cols));
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..cols {
                let delta = &factor * &m[row][c];
                m[r][c] -= &delta;
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![FieldScalar::zero(); cols];
            v[f] = FieldScalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[&str]]) -> Vec<Vec<FieldScalar>> {
        rows.iter().map(|r| r.iter().map(|x| x.parse().unwrap()).collect()).collect()
    }

    fn vecs(rows: &[&[&str]]) -> Vec<Vec<FieldScalar>> {
        mat(rows)
    }

    #[test]
    fn kernel_examples() {
        assert!(exact_kernel(&mat(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]), 3).is_empty());
        assert_eq!(exact_kernel(&mat(&[&["1", "2"], &["2", "4"]]), 2), vecs(&[&["-2", "1"]]));
        assert_eq!(exact_kernel(&mat(&[&["1", "√2"], &["√2", "2"]]), 2), vecs(&[&["-√2", "1"]]));
        assert_eq!(exact_kernel(&[], 2), vecs(&[&["1", "0"], &["0", "1"]]));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = mat(&[&["1", "2", "3", "4"], &["2", "4", "1/2", "0"], &["3", "6", "7/2", "4"]]);
        let k = exact_kernel(&m, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let dot = row.iter().zip(v).fold(FieldScalar::zero(), |acc, (a, b)| acc + a * b);
                assert!(dot.is_zero());
            }
        }
    }
}
