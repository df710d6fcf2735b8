mod common;

use lfree::construct::{
    behrend_set, integer_l222_construction, l222_prime, mixed_radix_embed, mixed_radix_value, random_deletion,
    random_deletion_retry, zp3_construction,
};
use lfree::detect::{enumerate_sumsets, is_free, is_sidon};
use lfree::{Ambient, Element, GroundSet, Signature};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sig(s: &str) -> Signature {
    s.parse().unwrap()
}

#[test]
fn behrend_sets_have_no_progressions() {
    let mut ns: Vec<u64> = (1..=150).collect();
    ns.extend([199, 256, 300, 512, 729, 1000]);
    for n in ns {
        let b = behrend_set(n).unwrap().ints().unwrap();
        assert!(!common::has_ap3(&b), "n={n}");
        assert!(b.iter().all(|&v| (1..=n as i64).contains(&v)));
        assert!(!b.is_empty());
    }
    // the ternary digit set is a floor on the size
    assert_eq!(behrend_set(14).unwrap().ints().unwrap(), vec![1, 2, 4, 5, 10, 11, 13, 14]);
}

#[test]
fn deletion_results_are_free() {
    for s in ["2,2", "2,3", "2,2,2"] {
        let sg = sig(s);
        for seed in 0..6 {
            // small n keeps p large enough to produce obstructions
            for n in [30, 60, 100] {
                let r = random_deletion(n, &sg, seed).unwrap();
                assert!(is_free(&r.result, &sg));
                assert!(enumerate_sumsets(&r.result, &sg, 1).unwrap().is_empty());
                assert!(r.result.is_subset(&r.sampled));
                assert!(!common::has_ap3(&r.sampled.ints().unwrap()));
            }
        }
    }
    let r = random_deletion_retry(200, &sig("2,2"), 3, 20).unwrap();
    assert!(r.attempts >= 1 && r.attempts <= 20);
    assert_eq!(r.seed, 3 + r.attempts as u64 - 1);
}

fn tuple(v: &[u64]) -> Element {
    Element::Tuple(v.to_vec())
}

#[test]
fn cube_construction_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in [5u64, 7, 11, 13] {
        let a = zp3_construction(p).unwrap();
        assert_eq!(a.len() as u64, (p - 3) * (p - 3));
        let m = p - 1;
        let ys: Vec<Vec<u64>> = if p <= 7 {
            (0..m * m * m).map(|i| vec![i / (m * m), i / m % m, i % m]).filter(|y| y.iter().any(|&c| c != 0)).collect()
        } else {
            (0..200)
                .map(|_| loop {
                    let y: Vec<u64> = (0..3).map(|_| rng.gen_range(0..m)).collect();
                    if y.iter().any(|&c| c != 0) {
                        break y;
                    }
                })
                .collect()
        };
        for y in ys {
            let ay = a.intersection(&a.translate(&tuple(&y)).unwrap()).unwrap();
            assert!(is_sidon(&ay), "p={p} y={y:?}");
        }
    }
    for p in [5u64, 7] {
        assert!(is_free(&zp3_construction(p).unwrap(), &sig("2,2,2")));
    }
}

#[test]
fn embedding_is_injective_bounded_and_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let k = rng.gen_range(1..=4);
        let moduli: Vec<u64> = (0..k).map(|_| rng.gen_range(2..7)).collect();
        let bound: u64 = (1u64 << (k - 1)) * moduli.iter().product::<u64>();
        let pick = |rng: &mut ChaCha8Rng| -> Vec<u64> { moduli.iter().map(|&n| rng.gen_range(0..n)).collect() };
        let (x, y, u) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let fx = mixed_radix_value(&moduli, &x);
        assert!(fx < bound);
        if x != y {
            assert_ne!(fx, mixed_radix_value(&moduli, &y));
        }
        // v chosen so that φ(x)+φ(y) = φ(u)+φ(v) when such v exists in the box
        let target = fx as i64 + mixed_radix_value(&moduli, &y) as i64 - mixed_radix_value(&moduli, &u) as i64;
        if target >= 0 {
            if let Some(v) = unembed(&moduli, target as u64) {
                for i in 0..k {
                    assert_eq!((x[i] + y[i]) % moduli[i], (u[i] + v[i]) % moduli[i]);
                }
            }
        }
    }
}

/// Inverse of the mixed-radix map on its image.
fn unembed(moduli: &[u64], mut value: u64) -> Option<Vec<u64>> {
    let mut out = Vec::new();
    for &n in moduli {
        let d = value % (2 * n);
        if d >= n {
            return None;
        }
        out.push(d);
        value /= 2 * n;
    }
    (value == 0).then_some(out)
}

#[test]
fn freeness_transfers_from_image_to_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let amb = Ambient::product(vec![4, 4, 4]).unwrap();
    let sg = sig("2,2,2");
    let mut image_hits = 0;
    for _ in 0..1000 {
        let k = rng.gen_range(4..14);
        let elems: Vec<Element> =
            (0..k).map(|_| tuple(&[rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4)])).collect();
        let a = GroundSet::new(amb.clone(), elems).unwrap();
        let image = mixed_radix_embed(&a).unwrap();
        assert_eq!(image.len(), a.len());
        if !is_free(&image, &sg) {
            image_hits += 1;
            assert!(!is_free(&a, &sg));
        }
    }
    assert!(image_hits > 0);
}

#[test]
fn integer_cube_construction() {
    for n in [256u64, 300, 863, 864, 2000, 4000, 6000, 10_000] {
        let p = l222_prime(n).unwrap();
        assert!(4 * (p - 1).pow(3) <= n);
        let a = integer_l222_construction(n).unwrap();
        assert_eq!(a.len() as u64, (p - 3).pow(2));
        assert!(a.ints().unwrap().iter().all(|&v| v >= 0 && (v as u64) < n));
        assert!(is_free(&a, &sig("2,2,2")), "n={n}");
    }
    assert!(l222_prime(255).is_err());
}
