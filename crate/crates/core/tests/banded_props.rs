mod common;

use num_bigint::{BigInt, BigUint};
use poplab::banded::{banded_count, banded_sequence, find_recurrence, kfib, BandedSpec};

use common::*;

#[test]
fn dp_matches_brute_force_filter() {
    for n in 0..=8 {
        let perms = all_perms(n);
        for a in 1..=4 {
            for b in 1..=4 {
                let want = perms.iter().filter(|p| in_window(p, a, b)).count();
                let spec = BandedSpec::new(a, b).unwrap();
                assert_eq!(banded_count(n, spec), BigUint::from(want), "n={n} ({a},{b})");
                assert!(perms.iter().all(|p| spec.admits(p) == in_window(p, a, b)));
            }
        }
    }
}

#[test]
fn window_is_symmetric() {
    for n in 0..=10 {
        for a in 1..=5 {
            for b in 1..=5 {
                let ab = banded_count(n, BandedSpec::new(a, b).unwrap());
                assert_eq!(ab, banded_count(n, BandedSpec::new(b, a).unwrap()));
            }
        }
    }
}

#[test]
fn flat_windows_give_kfib() {
    for j in 3..=6usize {
        let spec = BandedSpec::from_flat(j, 3).unwrap();
        for n in 0..=12 {
            assert_eq!(banded_count(n, spec), kfib(j as i64 - 1, n as i64 + 1).unwrap());
        }
    }
}

#[test]
fn three_three_window_from_brute_force() {
    let spec = BandedSpec::new(3, 3).unwrap();
    let want: Vec<BigUint> =
        (0..=6).map(|n| BigUint::from(all_perms(n).iter().filter(|p| in_window(p, 3, 3)).count())).collect();
    assert_eq!(banded_sequence(spec, 6), want);
    assert_eq!(banded_count(4, spec), want[4]);
}

#[test]
fn recurrence_is_stable_on_longer_prefixes() {
    for (a, b) in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)] {
        let seq: Vec<BigInt> =
            banded_sequence(BandedSpec::new(a, b).unwrap(), 39).into_iter().map(BigInt::from).collect();
        let short = find_recurrence(&seq[..32]).unwrap();
        let long = find_recurrence(&seq).unwrap();
        assert_eq!(short, long, "({a},{b})");
    }
}

#[test]
fn kfib_sequence_recurrence() {
    for k in 2..=6i64 {
        let seq: Vec<BigInt> = (1..=30).map(|n| BigInt::from(kfib(k, n).unwrap())).collect();
        let r = find_recurrence(&seq).unwrap();
        assert_eq!(r.integer_coeffs().unwrap(), vec![BigInt::from(1); k as usize]);
    }
    assert_eq!(
        inverse_series(&[1, -1, -1, -3, -11, -7, -1], 8),
        vec![1, 1, 2, 6, 22, 52, 122, 321]
    );
}

#[test]
fn five_five_counting_sequence_recurrence() {
    let o = poplab::enumerator::EnumOptions::default();
    let mut seq: Vec<BigInt> = (0..=9)
        .map(|n| {
            let q = poplab::enumerator::AvoiderQuery::flat_pair(n, 5, 5, true);
            BigInt::from(poplab::enumerator::count_avoiders(&q, &o).unwrap())
        })
        .collect();
    // the brute-force prefix agrees with the system; extend it from there to n = 16
    let sys = poplab::gfseries::solve_system(5, 5, 16).unwrap().eval_ones();
    assert_eq!(seq[..], sys[..=9]);
    seq = sys;
    let r = find_recurrence(&seq).unwrap();
    assert_eq!(r.to_string(), "1 - x - x^2 - 3x^3 - 11x^4 - 7x^5 - x^6");
}
