use std::fmt;

use crate::error::{Error, Result};
use crate::signature::Signature;

/// A reduced fraction with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        let s = if den < 0 { -1 } else { 1 };
        Rational {
            num: s * num / g,
            den: s * den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn need_two(sig: &Signature) -> Result<()> {
    if sig.r() < 2 {
        return Err(Error::InvalidSignature(format!(
            "signature {sig} has r = 1; F(n, (ℓ)) = min(n, ℓ−1)"
        )));
    }
    Ok(())
}

/// `(ℓᵣ−1)^{1/Π'} n^{1−1/Π'}` with `Π' = ℓ₁⋯ℓᵣ₋₁`.
pub fn upper_bound_leading(n: u64, sig: &Signature) -> Result<f64> {
    need_two(sig)?;
    let e = 1.0 / sig.prefix_product() as f64;
    Ok(((sig.largest() - 1) as f64).powf(e) * (n as f64).powf(1.0 - e))
}

/// `1 − (Σ−r)/(Π−1)`.
pub fn lower_bound_exponent(sig: &Signature) -> Result<Rational> {
    need_two(sig)?;
    let (s, r, p) = (sig.sum() as i64, sig.r() as i64, sig.product() as i64);
    Ok(Rational::new(p - 1 - (s - r), p - 1))
}

/// `(ℓᵣ−1)^{1/Π'}/r! · n^{r−1/Π'}`.
pub fn turan_upper_bound(n: u64, sig: &Signature) -> Result<f64> {
    need_two(sig)?;
    let e = 1.0 / sig.prefix_product() as f64;
    let fact: f64 = (1..=sig.r()).map(|i| i as f64).product();
    Ok(((sig.largest() - 1) as f64).powf(e) / fact * (n as f64).powf(sig.r() as f64 - e))
}

/// `(lhs, rhs)` where `lhs = |X|⁻¹ Σ |(A+x₁)∩⋯∩(A+x_r)|` over `r`-subsets of
/// `B` and `rhs = σ(σ−1)⋯(σ−r+1)/r!`, `σ = |A||B|/|X|`. Requires `A+B ⊆ X`.
///
/// `lhs ≥ rhs` is guaranteed when `σ ≥ r−1`. Below that the falling factorial
/// can be positive while `lhs` is zero.
pub fn overlap_check(a: &[i64], b: &[i64], x: &[i64], r: usize) -> Result<(f64, f64)> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    let dedup = |v: &[i64]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    let (a, b, x) = (dedup(a), dedup(b), dedup(x));
    if x.is_empty() {
        return Err(Error::Precondition("X is empty".into()));
    }
    for &p in &a {
        for &q in &b {
            if x.binary_search(&(p + q)).is_err() {
                return Err(Error::Precondition(format!("{p}+{q} = {} is not in X", p + q)));
            }
        }
    }
    let mut total = 0u64;
    let mut chosen = Vec::with_capacity(r);
    subsets(&b, r, 0, &mut chosen, &mut |shifts| {
        // count y with y − s ∈ A for every shift s
        total += a
            .iter()
            .map(|&p| p + shifts[0])
            .filter(|y| shifts[1..].iter().all(|s| a.binary_search(&(y - s)).is_ok()))
            .count() as u64;
    });
    let lhs = total as f64 / x.len() as f64;
    let sigma = (a.len() * b.len()) as f64 / x.len() as f64;
    let rhs = (0..r).fold(1.0, |acc, i| acc * (sigma - i as f64) / (i + 1) as f64);
    Ok((lhs, rhs))
}

fn subsets(items: &[i64], k: usize, from: usize, chosen: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for i in from..items.len() {
        if items.len() - i < k - chosen.len() {
            break;
        }
        chosen.push(items[i]);
        subsets(items, k, i + 1, chosen, f);
        chosen.pop();
    }
}
