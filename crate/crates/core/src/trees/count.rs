use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{GaleError, Result};
use crate::exactgeom::Rational;

/// The x-th Catalan number, C(2x, x) / (x + 1).
pub fn catalan(x: i64) -> Result<BigUint> {
    if x < 0 {
        return Err(GaleError::Precondition(format!("catalan index must be non-negative, got {x}")));
    }
    let x = x as u64;
    let mut binom = BigUint::one();
    for i in 0..x {
        binom = binom * BigUint::from(2 * x - i) / BigUint::from(i + 1);
    }
    Ok(binom / BigUint::from(x + 1))
}

/// Catalan number at a rational index; zero when the index is not an integer.
fn catalan_at(index: &Rational) -> Result<Rational> {
    if !index.is_integer() {
        return Ok(Rational::zero());
    }
    let x = index
        .numer()
        .to_i64()
        .ok_or_else(|| GaleError::Precondition("catalan index out of range".into()))?;
    let c = BigInt::from(catalan(x)?);
    Rational::from_bigints(c, BigInt::one())
}

/// Number of combinatorially distinct T-diagrams with parameter `d`, i.e.
/// 3-trees with `d + 3` leaves up to isomorphism and mirror.
pub fn count_t_diagrams(d: i64) -> Result<BigUint> {
    if d <= 0 {
        return Err(GaleError::Precondition(format!("d must be positive, got {d}")));
    }
    let r = |n: i64, m: i64| Rational::new(n, m);
    let one = Rational::one();
    let terms = [
        catalan_at(&Rational::from_int(d + 1))? * r(1, 2 * (d + 3)),
        catalan_at(&(r(d + 3, 2) - &one))? * r(3, 4),
        catalan_at(&(r(d + 3, 3) - &one))? * r(1, 3),
        catalan_at(&r(d, 2))? * r(1, 2),
    ];
    let total: Rational = terms.into_iter().sum();
    if !total.is_integer() || total.is_negative() {
        return Err(GaleError::Internal(format!("tree count for d={d} is not a natural number: {total}")));
    }
    Ok(total.numer().to_biguint().unwrap_or_else(BigUint::zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_values() {
        let got: Vec<u64> = (0..=6).map(|x| catalan(x).unwrap().to_u64().unwrap()).collect();
        assert_eq!(got, vec![1, 1, 2, 5, 14, 42, 132]);
        assert!(catalan(-1).is_err());
    }

    #[test]
    fn catalan_satisfies_its_recurrence() {
        // C_{n+1} = sum C_i C_{n-i}
        for n in 0..15i64 {
            let sum: BigUint = (0..=n).map(|i| catalan(i).unwrap() * catalan(n - i).unwrap()).sum();
            assert_eq!(sum, catalan(n + 1).unwrap());
        }
    }

    #[test]
    fn tree_counts() {
        let got: Vec<u64> = (1..=6).map(|d| count_t_diagrams(d).unwrap().to_u64().unwrap()).collect();
        assert_eq!(got, vec![1, 1, 3, 4, 12, 27]);
        assert!(count_t_diagrams(0).is_err());
        assert!(count_t_diagrams(-2).is_err());
    }

    #[test]
    fn tree_counts_stay_integral_further_out() {
        for d in 1..40 {
            count_t_diagrams(d).unwrap();
        }
    }
}
