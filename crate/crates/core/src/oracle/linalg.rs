//! Dense exact linear algebra over [`Rational`], just enough for the oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactgeom::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form and the pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip().expect("nonzero pivot");
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in c..cols {
                    let delta = &f * &a[r][k];
                    a[i][k] -= &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Basis of `{w : m w = 0}`, one vector per free column.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    let (a, pivots) = rref(m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut w = vec![Rational::zero(); cols];
            w[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                w[p] = -&a[r][free];
            }
            w
        })
        .collect()
}

/// Some solution of `m x = b`, if the system is consistent.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    let augmented: Matrix = m.iter().zip(b).map(|(row, v)| row.iter().cloned().chain([v.clone()]).collect()).collect();
    let (a, pivots) = rref(&augmented);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][cols].clone();
    }
    Some(x)
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `row` times the least common denominator: integers with the same signs
/// and ratios.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(&r.denom()));
    row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
}

/// Sign of the determinant of a square integer matrix, by fraction-free
/// (Bareiss) elimination: every intermediate entry is itself a minor, so
/// the division is exact and no gcds are taken.
pub fn det_sign(mut a: Vec<Vec<BigInt>>) -> i32 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if a[n - 1][n - 1].is_negative() {
        -sign
    } else {
        sign
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| Rational::from_int(v)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&a, &k[0]).iter().all(Rational::is_zero));
    }

    #[test]
    fn solving() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[Rational::from_int(3), Rational::from_int(1)]).unwrap();
        assert_eq!(x, vec![Rational::from_int(2), Rational::from_int(1)]);
        let singular = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&singular, &[Rational::from_int(1), Rational::from_int(3)]).is_none());
    }

    #[test]
    fn determinant_signs() {
        let b = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> { rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect() };
        assert_eq!(det_sign(b(&[&[2, 0], &[0, 3]])), 1);
        assert_eq!(det_sign(b(&[&[0, 1], &[1, 0]])), -1);
        assert_eq!(det_sign(b(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 0);
        // det = 1*(5*10-6*8) - 2*(4*10-6*7) + 3*(4*8-5*7) = 2 + 4 - 9 = -3
        assert_eq!(det_sign(b(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), -1);
        assert_eq!(det_sign(b(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]])), -1);
    }

    #[test]
    fn integer_rows_keep_ratios() {
        let row = [Rational::new(1, 2), Rational::new(-2, 3), Rational::zero()];
        assert_eq!(integer_row(&row), vec![BigInt::from(3), BigInt::from(-4), BigInt::from(0)]);
    }
}
