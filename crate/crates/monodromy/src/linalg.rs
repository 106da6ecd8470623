//! Dense linear algebra over a number field.

use exactnum::NFElement;

/// Reduced row echelon form in place, pivoting on the first `cols` columns and carrying
/// any further columns along; returns the pivot columns.
pub(crate) fn rref(m: &mut [Vec<NFElement>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].inv().expect("nonzero pivot");
        for j in c..m[rank].len() {
            m[rank][j] = m[rank][j].mul(&inv);
        }
        let pr = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let fac = row[c].clone();
                for j in c..row.len() {
                    row[j] = row[j].sub(&fac.mul(&pr[j]));
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

pub(crate) fn rank(mut m: Vec<Vec<NFElement>>, cols: usize) -> usize {
    rref(&mut m, cols).len()
}
