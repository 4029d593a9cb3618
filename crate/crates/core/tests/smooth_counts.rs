use sigma_bias::arith::primes_up_to;
use sigma_bias::smooth::{count_smooth, pair_stream, smooth_numbers};

fn is_smooth(mut n: u64, primes: &[u64]) -> bool {
    for &p in primes {
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    n == 1
}

#[test]
fn counts_match_trial_division() {
    let primes = primes_up_to(157).unwrap();
    let brute = (1..=1_000_000u64)
        .filter(|&n| is_smooth(n, &primes))
        .count() as u64;
    assert_eq!(count_smooth(157, 1_000_000).unwrap(), brute);
    assert_eq!(brute, 115_506);
}

#[test]
fn five_smooth_count_by_exponent_loops() {
    let limit = 1_000_000_000u64;
    let mut count = 0;
    let mut p2 = 1;
    while p2 <= limit {
        let mut p3 = p2;
        while p3 <= limit {
            let mut p5 = p3;
            while p5 <= limit {
                count += 1;
                p5 *= 5;
            }
            p3 *= 3;
        }
        p2 *= 2;
    }
    assert_eq!(count_smooth(5, limit).unwrap(), count);
}

#[test]
fn frozen_count_at_full_scale() {
    let n = count_smooth(157, 1_000_000_000).unwrap();
    assert_eq!(n, 6_980_291);
    let mut prev = 0;
    let mut streamed = 0;
    for f in smooth_numbers(157, 1_000_000_000).unwrap() {
        assert!(f.value() > prev);
        prev = f.value();
        streamed += 1;
    }
    assert_eq!(streamed, n);
}

#[test]
fn pair_count_by_definition() {
    // Pairs (a, b) with ab ≤ z, m | b, gcd(a, b) = 1, both y-smooth.
    let (m, y, z) = (30, 23, 200_000);
    let primes = primes_up_to(y).unwrap();
    let smooth: Vec<u64> = (1..=z).filter(|&n| is_smooth(n, &primes)).collect();
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut expected = 0;
    for &b in smooth.iter().filter(|&&b| b % m == 0) {
        expected += smooth
            .iter()
            .take_while(|&&a| a * b <= z)
            .filter(|&&a| gcd(a, b) == 1)
            .count();
    }
    assert_eq!(pair_stream(m, y, z).unwrap().count(), expected);
}
