//! Exact nullspace by reduced row echelon form.

use crate::scalar::Field;

/// Returns a basis of `{x : A x = 0}` for the `rows x cols` matrix `a`.
///
/// Basis vectors are the standard ones attached to free columns: the free
/// coordinate is 1, the other free coordinates are 0.
pub fn nullspace<T: Field>(a: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    let mut m: Vec<Vec<T>> = a.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = T::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..cols {
                if !m[row][c].is_zero() {
                    m[r][c] = m[r][c].clone() - f.clone() * m[row][c].clone();
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![T::zero(); cols];
            v[free] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}
