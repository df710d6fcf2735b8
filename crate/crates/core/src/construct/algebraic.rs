use crate::ambient::{Ambient, Element};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::set::GroundSet;

/// Largest group order `(p−1)³` the cube construction will materialize.
pub const MAX_CUBE_ORDER: u64 = 1 << 30;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Smallest generator of `F_p^*`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    let qs = prime_factors(p - 1);
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .ok_or_else(|| Error::InvalidInput(format!("no primitive root mod {p}")))
}

/// `{(x₁,x₂,x₃) ∈ [1,p−2]³ : θ^{x₁}+θ^{x₂}+θ^{x₃} ≡ 1 (mod p)}` inside
/// `Z_{p−1}³`, with `θ` the smallest primitive root.
pub fn zp3_construction(p: u64) -> Result<GroundSet> {
    if p < 5 {
        return Err(Error::InvalidInput(format!("p = {p}: need an odd prime p ≥ 5")));
    }
    let theta = primitive_root(p)?;
    let m = p - 1;
    if m.checked_pow(3).is_none_or(|o| o > MAX_CUBE_ORDER) {
        return Err(Error::Resource(format!("(p−1)³ for p = {p} exceeds {MAX_CUBE_ORDER}")));
    }
    let mut power = vec![0u64; m as usize];
    let mut log = vec![0u64; p as usize];
    let mut acc = 1;
    for (e, slot) in power.iter_mut().enumerate() {
        *slot = acc;
        log[acc as usize] = e as u64;
        acc = acc * theta % p;
    }
    let ambient = Ambient::product(vec![m, m, m])?;
    let mut tuples = Vec::new();
    for x1 in 1..m {
        for x2 in 1..m {
            let v = (1 + 2 * p - power[x1 as usize] - power[x2 as usize]) % p;
            // v = θ^{x₃} with x₃ ≠ 0
            if v > 1 {
                tuples.push(Element::Tuple(vec![x1, x2, log[v as usize]]));
            }
        }
    }
    GroundSet::new(ambient, tuples)
}

/// `φ(x) = Σ xⱼ ∏_{i<j} 2nᵢ`.
pub fn mixed_radix_value(moduli: &[u64], tuple: &[u64]) -> u64 {
    let mut weight = 1u64;
    let mut total = 0u64;
    for (&x, &n) in tuple.iter().zip(moduli) {
        total += x * weight;
        weight *= 2 * n;
    }
    total
}

/// Image of a product-group set under `φ`, as a subset of
/// `[0, 2^{k−1} n₁⋯n_k)`.
pub fn mixed_radix_embed(set: &GroundSet) -> Result<GroundSet> {
    let Ambient::Product { moduli } = set.ambient() else {
        return Err(Error::Structural("mixed-radix embedding needs a product ambient".into()));
    };
    let k = moduli.len() as u32;
    let bound = moduli
        .iter()
        .try_fold(1u64 << (k - 1), |acc, &n| acc.checked_mul(n))
        .filter(|&b| b <= usize::MAX as u64 / 2)
        .ok_or_else(|| Error::Resource("embedding range overflows".into()))?;
    let ambient = Ambient::interval_from(0, bound)?;
    let values = set
        .iter()
        .map(|e| mixed_radix_value(moduli, e.as_tuple().expect("product element")) as usize);
    Ok(GroundSet::from_bits(ambient, Bits::from_indices(bound as usize, values)))
}

/// Largest prime `p` with `4(p−1)³ ≤ n`.
pub fn l222_prime(n: u64) -> Result<u64> {
    if n < 256 {
        return Err(Error::InvalidInput(format!("n = {n} < 256 = 4·4³")));
    }
    let mut p = 5;
    let mut q = 5;
    while 4 * (q - 1) * (q - 1) * (q - 1) <= n {
        if is_prime(q) {
            p = q;
        }
        q += 1;
    }
    Ok(p)
}

/// The cube construction for the largest admissible prime, embedded in
/// `[0, n)`.
pub fn integer_l222_construction(n: u64) -> Result<GroundSet> {
    let p = l222_prime(n)?;
    let image = mixed_radix_embed(&zp3_construction(p)?)?;
    image.reembed(Ambient::interval_from(0, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[u64]) -> Element {
        Element::Tuple(v.to_vec())
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(11).unwrap(), 2);
        assert_eq!(primitive_root(23).unwrap(), 5);
        for bad in [1, 2, 9, 15] {
            assert!(matches!(primitive_root(bad), Err(Error::InvalidInput(_))));
        }
    }

    #[test]
    fn zp3_for_five() {
        let a = zp3_construction(5).unwrap();
        let expect = [t(&[1, 1, 1]), t(&[3, 2, 2]), t(&[2, 3, 2]), t(&[2, 2, 3])];
        assert_eq!(a.len(), 4);
        assert!(expect.iter().all(|e| a.contains(e)));
        assert!(zp3_construction(3).is_err());
        assert!(zp3_construction(9).is_err());
    }

    #[test]
    fn embedding_values() {
        assert_eq!(mixed_radix_value(&[4, 4, 4], &[1, 1, 1]), 73);
        let e = mixed_radix_embed(&zp3_construction(5).unwrap()).unwrap();
        assert_eq!(e.ints().unwrap(), vec![73, 147, 154, 210]);
        assert_eq!(e.ambient().cardinality(), 256);
    }

    #[test]
    fn admissible_primes() {
        assert_eq!(l222_prime(256).unwrap(), 5);
        assert_eq!(l222_prime(863).unwrap(), 5);
        assert_eq!(l222_prime(864).unwrap(), 7);
        assert_eq!(l222_prime(3999).unwrap(), 7);
        assert_eq!(l222_prime(4000).unwrap(), 11);
        assert!(l222_prime(255).is_err());
        let g = integer_l222_construction(4000).unwrap();
        assert_eq!(g.len(), 64);
        assert_eq!(integer_l222_construction(256).unwrap().ints().unwrap(), vec![73, 147, 154, 210]);
    }
}
