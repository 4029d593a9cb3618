use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::arith::{primes_up_to, Factored};
use crate::Result;

/// Depth-first walk over every number `≤ limit` built from the primes in
/// `items`, including 1.
///
/// `prime_of` extracts the prime from an item. `extend(parent, item, e, p^e)`
/// derives the state of `parent · p^e` from the parent's state; `visit` sees
/// each number once, in no particular order. Items must be sorted by prime.
/// Recursion depth is bounded by `items.len()`.
pub(crate) fn walk_smooth<T, S>(
    items: &[T],
    prime_of: &impl Fn(&T) -> u64,
    limit: u64,
    root: S,
    extend: &impl Fn(&S, &T, u32, u64) -> S,
    visit: &mut impl FnMut(u64, &S),
) {
    #[allow(clippy::too_many_arguments)]
    fn rec<T, S>(
        items: &[T],
        prime_of: &impl Fn(&T) -> u64,
        limit: u64,
        value: u64,
        state: &S,
        extend: &impl Fn(&S, &T, u32, u64) -> S,
        visit: &mut impl FnMut(u64, &S),
    ) {
        for (i, item) in items.iter().enumerate() {
            let p = prime_of(item);
            let Some(mut v) = value.checked_mul(p).filter(|&v| v <= limit) else {
                // primes are ascending, so larger ones overflow the limit too
                break;
            };
            let mut pe = p;
            let mut e = 1;
            loop {
                let child = extend(state, item, e, pe);
                visit(v, &child);
                rec(&items[i + 1..], prime_of, limit, v, &child, extend, visit);
                match v.checked_mul(p).filter(|&w| w <= limit) {
                    Some(w) => {
                        v = w;
                        pe *= p;
                        e += 1;
                    }
                    None => break,
                }
            }
        }
    }
    if limit == 0 {
        return;
    }
    visit(1, &root);
    rec(items, prime_of, limit, 1, &root, extend, visit);
}

/// Number of y-smooth integers in `[1, limit]`.
pub fn count_smooth(y: u64, limit: u64) -> Result<u64> {
    let primes = primes_up_to(y)?;
    let mut count = 0u64;
    walk_smooth(
        &primes,
        &|p| *p,
        limit,
        (),
        &|_, _, _, _| (),
        &mut |_, _| count += 1,
    );
    Ok(count)
}

/// Ascending stream of the y-smooth integers in `[1, limit]`, each with its
/// factorization.
///
/// A min-heap holds the frontier; a popped `n` with largest prime index `i`
/// spawns `n · p_j` for `j ≥ i`, so every smooth number is produced exactly
/// once.
/// Value, index of its largest prime, factorization.
type Entry = (u64, usize, Vec<(u64, u32)>);

pub struct SmoothNumbers {
    primes: Vec<u64>,
    limit: u64,
    heap: BinaryHeap<Reverse<Entry>>,
}

pub fn smooth_numbers(y: u64, limit: u64) -> Result<SmoothNumbers> {
    let primes = primes_up_to(y)?;
    let mut heap = BinaryHeap::new();
    if limit >= 1 {
        heap.push(Reverse((1, 0, Vec::new())));
    }
    Ok(SmoothNumbers {
        primes,
        limit,
        heap,
    })
}

impl Iterator for SmoothNumbers {
    type Item = Factored;

    fn next(&mut self) -> Option<Factored> {
        let Reverse((value, first, factors)) = self.heap.pop()?;
        for (j, &p) in self.primes.iter().enumerate().skip(first) {
            let Some(child) = value.checked_mul(p).filter(|&c| c <= self.limit) else {
                break;
            };
            let mut child_factors = factors.clone();
            match child_factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => child_factors.push((p, 1)),
            }
            self.heap.push(Reverse((child, j, child_factors)));
        }
        Some(Factored::from_sorted_factors(value, factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    fn brute(y: u64, limit: u64) -> Vec<u64> {
        (1..=limit)
            .filter(|&n| factorize(n).unwrap().is_smooth(y))
            .collect()
    }

    #[test]
    fn small_examples() {
        let five: Vec<u64> = smooth_numbers(5, 10).unwrap().map(|f| f.value()).collect();
        assert_eq!(five, vec![1, 2, 3, 4, 5, 6, 8, 9, 10]);
        let two: Vec<u64> = smooth_numbers(2, 10).unwrap().map(|f| f.value()).collect();
        assert_eq!(two, vec![1, 2, 4, 8]);
    }

    #[test]
    fn heap_stream_matches_brute_force() {
        for (y, limit) in [(2, 1000), (5, 5000), (7, 10_000), (13, 10_000), (157, 3000)] {
            let got: Vec<Factored> = smooth_numbers(y, limit).unwrap().collect();
            let values: Vec<u64> = got.iter().map(Factored::value).collect();
            assert_eq!(values, brute(y, limit), "y = {y}");
            for f in &got {
                assert_eq!(*f, factorize(f.value()).unwrap());
            }
            assert_eq!(count_smooth(y, limit).unwrap(), values.len() as u64);
        }
    }

    #[test]
    fn walk_reports_factor_state() {
        let primes = [2, 3, 5];
        let mut seen = Vec::new();
        walk_smooth(
            &primes,
            &|p| *p,
            30,
            1u64,
            &|s, _, _, pe| s * pe,
            &mut |v, s| {
                assert_eq!(v, *s);
                seen.push(v);
            },
        );
        seen.sort_unstable();
        assert_eq!(seen, brute(5, 30));
    }

    #[test]
    fn limit_edge_cases() {
        assert_eq!(smooth_numbers(5, 0).unwrap().count(), 0);
        assert_eq!(count_smooth(5, 1).unwrap(), 1);
        // 2^i · 3^j ≤ u64::MAX, counted directly
        let mut expected = 0;
        for i in 0..64 {
            let mut v: u128 = 1 << i;
            while v <= u64::MAX as u128 {
                expected += 1;
                v *= 3;
            }
        }
        assert_eq!(count_smooth(3, u64::MAX).unwrap(), expected);
    }
}
