//! Row reduction over the rationals.

use num_traits::Zero;

use super::Rat;

/// Reduced row echelon form of the span of `rows`; zero rows are dropped.
pub fn rref(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

/// Whether `v` lies in the row space of a matrix already in reduced row echelon form.
pub fn in_row_space(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    let mut rem = v.to_vec();
    for row in basis {
        let col = row
            .iter()
            .position(|x| !x.is_zero())
            .expect("rref rows are nonzero");
        if rem[col].is_zero() {
            continue;
        }
        let factor = rem[col].clone();
        for (x, r) in rem.iter_mut().zip(row) {
            *x -= &factor * r;
        }
    }
    rem.iter().all(Zero::is_zero)
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    rref(rows).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn reduces_dependent_rows() {
        let rows = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(4, 1), rat(6, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 1)],
        ];
        let r = rref(&rows);
        assert_eq!(
            r,
            vec![
                vec![rat(1, 1), rat(0, 1), rat(1, 1)],
                vec![rat(0, 1), rat(1, 1), rat(1, 1)],
            ]
        );
        assert!(in_row_space(&r, &[rat(3, 1), rat(5, 1), rat(8, 1)]));
        assert!(!in_row_space(&r, &[rat(0, 1), rat(0, 1), rat(1, 1)]));
        assert_eq!(rank(&[]), 0);
    }
}
