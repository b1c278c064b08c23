use incmat_core::combin::{binom, binomial};
use incmat_core::linalg::rank;
use incmat_core::sets::{
    all_subsets, build_w, find_sigma, full_rank_sets, is_full_rank, shadow, verify_set_resilience, wilson_rank,
    SetFamily, Subset,
};
use incmat_core::FieldCtx;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn full_rank_counts() {
    for n in 0..=12 {
        for j in 0..=n / 2 {
            let expect = binom(n, j) - if j == 0 { 0 } else { binom(n, j - 1) };
            assert_eq!(full_rank_sets(n, j).unwrap().len(), expect, "n={} j={}", n, j);
        }
    }
}

#[test]
fn wilson_small_grid() {
    for n in 2..=7 {
        for r in 0..=n / 2 {
            for s in 0..=r {
                if n < r + s {
                    continue;
                }
                for (fs, ch) in [("q0", 0u64), ("gf2", 2), ("gf3", 3)] {
                    let f = FieldCtx::parse(fs).unwrap();
                    let rk = rank(&build_w(n, r, s, &f, None).unwrap());
                    assert_eq!(BigUint::from(rk), wilson_rank(n, r, s, ch).unwrap(), "n={} r={} s={} {}", n, r, s, fs);
                }
            }
        }
    }
}

fn random_family(rng: &mut ChaCha8Rng, n: usize, r: usize, k: usize) -> SetFamily {
    let total = binom(n, r);
    let members = sample(rng, total, k.min(total)).into_vec();
    SetFamily::new(n, r, members).unwrap()
}

#[test]
fn sigma_samples_up_to_twelve() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let n = rng.random_range(2..=12);
        let r = rng.random_range(1..=n / 2);
        let bound = (n - 1) / r;
        let k = rng.random_range(0..=bound);
        let fam = random_family(&mut rng, n, r, k);
        let sigma = find_sigma(&fam).unwrap_or_else(|| panic!("no sigma for {:?}", fam));
        assert!(sigma.certifies(&fam));
        for a in fam.subsets() {
            assert!(is_full_rank(&sigma.apply(&a)));
        }
    }
}

#[test]
fn resilience_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let fields = [FieldCtx::parse("gf2").unwrap(), FieldCtx::parse("gf3").unwrap(), FieldCtx::rationals()];
    for t in 0..150 {
        let n = rng.random_range(4..=10);
        let r = rng.random_range(1..=n / 2);
        let s = rng.random_range(0..r);
        let k = rng.random_range(0..=(n - 1) / r);
        let fam = random_family(&mut rng, n, r, k);
        let rep = verify_set_resilience(n, r, s, &fam, &fields[t % 3]).unwrap();
        assert!(rep.in_hypothesis);
        assert!(rep.equal, "{:?}", rep);
    }
}

proptest! {
    #[test]
    fn rank_bounded_by_shadow(n in 3usize..8, seed in any::<u64>(), frac in 0.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rng.random_range(1..=n / 2);
        let s = rng.random_range(0..=r);
        let total = binom(n, r);
        let k = ((total as f64) * frac) as usize;
        let fam = random_family(&mut rng, n, r, k);
        let sh = shadow(&fam, s).unwrap();
        let rk = rank(&build_w(n, r, s, &FieldCtx::rationals(), Some(&fam)).unwrap());
        prop_assert!(rk <= sh.len());
    }

    #[test]
    fn frankl_condition_matches_walk(n in 0usize..14, mask in any::<u64>()) {
        let a = Subset::from_mask(n, mask & ((1u64 << n) - 1)).unwrap();
        let (rk, ell) = incmat_core::sets::frankl_rank(&a);
        prop_assert_eq!(rk + ell, a.len());
        prop_assert!(rk <= a.len().min(n - a.len()));
        if 2 * a.len() <= n {
            prop_assert_eq!(rk == a.len(), is_full_rank(&a));
        }
    }
}

#[test]
fn shadow_equality_case() {
    for x in 1..=7usize {
        for r in 1..=x.min(3) {
            let n = 8;
            let sets: Vec<Subset> = all_subsets(n, r).into_iter().filter(|a| a.elements().iter().all(|&e| e <= x)).collect();
            let fam = SetFamily::from_subsets(n, r, &sets).unwrap();
            for s in 0..=r {
                let size = shadow(&fam, s).unwrap().len();
                assert_eq!(BigUint::from(size), binomial(x as i64, s as i64));
            }
        }
    }
}
