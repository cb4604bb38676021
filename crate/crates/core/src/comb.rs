//! Small factorial and binomial helpers for the coefficient assembly.

/// n! as f64; exact through 22!.
pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// 1/n!, with 1/n! = 0 for negative n.
pub(crate) fn inv_factorial(n: i64) -> f64 {
    if n < 0 {
        0.0
    } else {
        1.0 / factorial(n as usize)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r.round()
}

/// (−1)^n.
pub(crate) fn sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}
