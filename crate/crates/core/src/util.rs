use num_bigint::BigInt;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `base^exp` as a big integer.
pub fn big_pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `prod sizes` as `u128`, saturating.
pub(crate) fn product_u128<I: IntoIterator<Item = u128>>(sizes: I) -> u128 {
    sizes.into_iter().fold(1u128, |acc, s| acc.saturating_mul(s))
}

/// Gaussian binomial `[k choose r]_q`, the number of `r`-dimensional subspaces
/// of `F_q^k`.
pub fn gaussian_binomial(k: u32, r: u32, q: u64) -> BigInt {
    if r > k {
        return BigInt::from(0);
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..r {
        num *= big_pow(q, k - i) - 1;
        den *= big_pow(q, i + 1) - 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(6, 2, 2), BigInt::from(651));
        assert_eq!(gaussian_binomial(3, 1, 2), BigInt::from(7));
        assert_eq!(gaussian_binomial(4, 2, 3), BigInt::from(130));
        assert_eq!(gaussian_binomial(5, 0, 7), BigInt::from(1));
        assert_eq!(gaussian_binomial(2, 3, 2), BigInt::from(0));
    }
}
