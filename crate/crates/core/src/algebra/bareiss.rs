//! Fraction-free (Bareiss) elimination for rational matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::Q;
use super::matrix::ExactMatrix;

/// Scales each row of a rational matrix by the lcm of its denominators.
pub fn integer_rows(m: &ExactMatrix<Q>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.inner().denom()));
            row.iter()
                .map(|x| x.inner().numer() * (&lcm / x.inner().denom()))
                .collect()
        })
        .collect()
}

/// Rank of an integer matrix by one-step Bareiss elimination. Every
/// intermediate entry is a minor of the input, so growth stays polynomial.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let pivot = a[rank][c].clone();
        for i in rank + 1..rows {
            let lead = a[i][c].clone();
            for j in c..cols {
                let v = &pivot * &a[i][j] - &lead * &a[rank][j];
                // exact by Sylvester's identity
                a[i][j] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

pub fn rational_rank(m: &ExactMatrix<Q>) -> usize {
    bareiss_rank(integer_rows(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::matrix::gaussian_rank;

    #[test]
    fn bareiss_matches_gaussian_on_small_cases() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![2, 4, 6], vec![1, 2, 3], vec![0, 0, 1]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8], vec![9, 10, 11, 12]],
            vec![vec![0, 3], vec![7, 0], vec![1, 1]],
        ];
        for c in cases {
            let m = ExactMatrix::<Q>::from_i64_rows((), &c).unwrap();
            assert_eq!(rational_rank(&m), gaussian_rank(&m), "{c:?}");
        }
    }

    #[test]
    fn rational_entries_handled() {
        let m = ExactMatrix::<Q>::from_rows(
            (),
            vec![vec![Q::new(1, 2), Q::new(1, 3)], vec![Q::new(3, 2), Q::int(1)]],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(Q::matrix_rank(&m), 1);
    }
}
