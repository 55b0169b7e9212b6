use num_bigint::BigUint;
use num_traits::{One, Zero};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn central_binomial(n: u64) -> BigUint {
    binomial(n, n / 2)
}

/// `S(n, m)`: the sum of the `m` largest binomial coefficients `C(n, i)`.
pub fn largest_binomial_sum(n: u64, m: u64) -> BigUint {
    let mut row: Vec<BigUint> = (0..=n).map(|i| binomial(n, i)).collect();
    row.sort_unstable_by(|a, b| b.cmp(a));
    row.into_iter().take(m as usize).sum()
}
