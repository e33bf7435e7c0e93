//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Determinant by Gaussian elimination; `rows` must be square.
pub fn det(mut rows: Vec<Vec<Rational>>) -> Rational {
    let n = rows.len();
    let mut acc = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            rows.swap(pivot, col);
            acc = -acc;
        }
        let (top, rest) = rows.split_at_mut(col + 1);
        let pivot_row = &top[col];
        acc *= &pivot_row[col];
        for row in rest {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot_row[col];
            for (cell, v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *cell -= &f * v;
            }
        }
    }
    acc
}

/// Unique solution of `matrix · x = rhs`, or `None` when singular.
pub fn solve(mut matrix: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = matrix.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !matrix[r][col].is_zero())?;
        matrix.swap(pivot, col);
        rhs.swap(pivot, col);
        let pivot_row = matrix[col].clone();
        let pivot_rhs = rhs[col].clone();
        for (r, row) in matrix.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot_row[col];
            for (cell, v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *cell -= &f * v;
            }
            rhs[r] -= &f * &pivot_rhs;
        }
    }
    Some((0..n).map(|i| &rhs[i] / &matrix[i][i]).collect())
}

/// Signed cofactors along an implicit extra row: for an `r × (r+1)` matrix,
/// `x_i = (-1)^i det(matrix without column i)` spans its kernel whenever the
/// rank is `r`.
pub fn kernel_by_cofactors(matrix: &[Vec<Rational>]) -> Vec<Rational> {
    let cols = matrix.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|skip| {
            let minor: Vec<Vec<Rational>> = matrix
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != skip).map(|(_, v)| v.clone()).collect())
                .collect();
            let d = det(minor);
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(det(m(&[&[2, 0], &[0, 3]])), int(6));
        assert_eq!(det(m(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(det(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), int(0));
        assert_eq!(det(m(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]])), int(-54));
    }

    #[test]
    fn solving() {
        let x = solve(m(&[&[1, 1], &[1, -1]]), vec![int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        assert!(solve(m(&[&[1, 2], &[2, 4]]), vec![int(1), int(2)]).is_none());
        let x = solve(m(&[&[0, 2], &[3, 0]]), vec![int(1), int(1)]).unwrap();
        assert_eq!(x, vec![rat(1, 3), rat(1, 2)]);
    }

    proptest! {
        #[test]
        fn cofactor_vector_is_in_kernel(entries in prop::collection::vec(-9i64..9, 12)) {
            let matrix: Vec<Vec<Rational>> = entries.chunks(4).map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            let x = kernel_by_cofactors(&matrix);
            for row in &matrix {
                let dot: Rational = row.iter().zip(&x).map(|(a, b)| a * b).sum();
                prop_assert!(dot.is_zero());
            }
        }
    }
}
