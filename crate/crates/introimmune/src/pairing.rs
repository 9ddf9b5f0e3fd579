//! Cantor pairing and canonical finite-set codes.
//!
//! Everything that flows through an index somewhere (requirement pairs,
//! axiom premises, register-machine instruction codes) funnels through
//! these two encodings, so they live in one place.

/// Cantor pairing: `(a, b) -> (a+b)(a+b+1)/2 + b`.
///
/// Bijective on pairs of naturals; inverse is [`unpair`].
pub fn pair(a: u64, b: u64) -> u64 {
    let s = a + b;
    s * (s + 1) / 2 + b
}

/// Inverse of [`pair`].
pub fn unpair(n: u64) -> (u64, u64) {
    // Largest t with t(t+1)/2 <= n, found from the integer square root.
    let mut t = (((8.0 * n as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
    // Float rounding can land one off in either direction.
    while t * (t + 1) / 2 > n {
        t -= 1;
    }
    while (t + 1) * (t + 2) / 2 <= n {
        t += 1;
    }
    let b = n - t * (t + 1) / 2;
    let a = t - b;
    (a, b)
}

/// Canonical code of a finite set of naturals, via its strictly
/// increasing listing: `code({}) = 0`, `code({a} ∪ R) = pair(a, code(R)) + 1`
/// with `a = min`.
pub fn encode_finite_set(elements: &std::collections::BTreeSet<u64>) -> u64 {
    let mut code = 0u64;
    for &a in elements.iter().rev() {
        code = pair(a, code) + 1;
    }
    code
}

/// Decode a finite-set code. Returns `None` when the code does not
/// decode to a strictly increasing listing (a malformed axiom).
pub fn decode_finite_set(mut code: u64) -> Option<std::collections::BTreeSet<u64>> {
    let mut out = std::collections::BTreeSet::new();
    let mut prev: Option<u64> = None;
    while code > 0 {
        let (a, rest) = unpair(code - 1);
        if let Some(p) = prev {
            if a <= p {
                return None;
            }
        }
        out.insert(a);
        prev = Some(a);
        code = rest;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn base_case() {
        assert_eq!(pair(0, 0), 0);
    }

    #[test]
    fn known_value() {
        // (1+2)(1+2+1)/2 + 2 = 8
        assert_eq!(pair(1, 2), 8);
    }

    #[test]
    fn round_trip_small() {
        assert_eq!(unpair(pair(3, 5)), (3, 5));
        for a in 0..1000u64 {
            for b in 0..50u64 {
                assert_eq!(unpair(pair(a, b)), (a, b));
            }
        }
    }

    #[test]
    fn surjective_prefix() {
        for n in 0..100_000u64 {
            let (a, b) = unpair(n);
            assert_eq!(pair(a, b), n);
        }
    }

    #[test]
    fn set_codes_round_trip() {
        let sets: Vec<BTreeSet<u64>> = vec![
            BTreeSet::new(),
            [3u64].into_iter().collect(),
            [0u64, 1, 2].into_iter().collect(),
            [5u64, 9, 40].into_iter().collect(),
        ];
        for s in sets {
            assert_eq!(decode_finite_set(encode_finite_set(&s)), Some(s));
        }
    }

    proptest! {
        #[test]
        fn bijective_on_large_square(a in 0u64..=10_000, b in 0u64..=10_000) {
            prop_assert_eq!(unpair(pair(a, b)), (a, b));
        }

        #[test]
        fn unpair_then_pair(n in 0u64..=100_000_000) {
            let (a, b) = unpair(n);
            prop_assert_eq!(pair(a, b), n);
        }

        #[test]
        fn set_code_round_trip(elems in proptest::collection::btree_set(0u64..200, 0..8)) {
            prop_assert_eq!(decode_finite_set(encode_finite_set(&elems)), Some(elems));
        }
    }
}
