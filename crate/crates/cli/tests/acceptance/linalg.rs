//! Small exact linear algebra over the rationals for the test oracles.

use num::rational::BigRational;
use num::Zero;

pub type Row = Vec<BigRational>;

/// Reduce `rows` to row echelon form in place and return the rank.
pub fn echelonize(rows: &mut Vec<Row>) -> usize {
    let width = rows.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            if !x.is_zero() {
                *x = &*x / &lead;
            }
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..width {
                    if !rows[rank][c].is_zero() {
                        let delta = &rows[rank][c] * &factor;
                        rows[r][c] = &rows[r][c] - &delta;
                    }
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rank
}

pub fn rank(mut rows: Vec<Row>) -> usize {
    echelonize(&mut rows)
}

/// Is `v` in the row space of the echelonized `basis`?
pub fn in_span(basis: &[Row], v: &Row) -> bool {
    let mut v = v.clone();
    for row in basis {
        let Some(lead) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if !v[lead].is_zero() {
            let factor = v[lead].clone();
            for c in lead..v.len() {
                if !row[c].is_zero() {
                    let delta = &row[c] * &factor;
                    v[c] = &v[c] - &delta;
                }
            }
        }
    }
    v.iter().all(BigRational::is_zero)
}

/// Basis of { y : sum_i y_i rows_i = 0 }, the left null space of `rows`.
pub fn left_nullspace(rows: &[Row], width: usize) -> Vec<Row> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    // transpose to an (width x m) system B y = 0
    let mut b: Vec<Row> = (0..width)
        .map(|j| (0..m).map(|i| rows[i][j].clone()).collect())
        .collect();
    let n = m;
    let mut pivots: Vec<Option<usize>> = vec![None; n];
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..b.len()).find(|&r| !b[r][col].is_zero()) else {
            continue;
        };
        b.swap(rank, p);
        let lead = b[rank][col].clone();
        for x in b[rank].iter_mut() {
            if !x.is_zero() {
                *x = &*x / &lead;
            }
        }
        for r in 0..b.len() {
            if r != rank && !b[r][col].is_zero() {
                let factor = b[r][col].clone();
                for c in 0..n {
                    if !b[rank][c].is_zero() {
                        let delta = &b[rank][c] * &factor;
                        b[r][c] = &b[r][c] - &delta;
                    }
                }
            }
        }
        pivots[col] = Some(rank);
        rank += 1;
        if rank == b.len() {
            break;
        }
    }
    b.truncate(rank);
    let mut kernel = Vec::new();
    for free in 0..n {
        if pivots[free].is_some() {
            continue;
        }
        let mut y: Row = vec![BigRational::zero(); n];
        y[free] = BigRational::from_integer(1.into());
        for col in 0..n {
            if let Some(prow) = pivots[col] {
                // pivot variable col: value = -B[prow][free]
                y[col] = -b[prow][free].clone();
            }
        }
        kernel.push(y);
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn r(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    #[test]
    fn rank_and_span() {
        let rows = vec![vec![r(1), r(2)], vec![r(2), r(4)], vec![r(0), r(1)]];
        assert_eq!(rank(rows.clone()), 2);
        let mut basis = rows;
        echelonize(&mut basis);
        assert!(in_span(&basis, &vec![r(3), r(7)]));
    }

    #[test]
    fn nullspace_finds_relations() {
        // rows: v1, v2, v1+v2 -> kernel contains (1,1,-1)
        let rows = vec![vec![r(1), r(0)], vec![r(0), r(1)], vec![r(1), r(1)]];
        let kernel = left_nullspace(&rows, 2);
        assert_eq!(kernel.len(), 1);
        let y = &kernel[0];
        // check sum y_i row_i = 0
        for j in 0..2 {
            let mut acc = BigRational::zero();
            for i in 0..3 {
                acc = &acc + &(&y[i] * &rows[i][j]);
            }
            assert!(acc.is_zero());
        }
    }
}
