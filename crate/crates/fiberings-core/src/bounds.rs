//! Exact evaluation of the bounds on the fibering-count function `N(d)`,
//! the maximum number of distinct surface-bundle structures over all
//! 4-manifolds with Euler characteristic at most `4d`.
//!
//! Everything is arbitrary precision: the upper bound `(d+1)^{2d+6}`
//! overflows machine words already at `d = 7`.

use num_bigint::BigUint;
use num_traits::One;

/// Number of positive divisors of `d`.
pub fn divisor_count(d: u64) -> u64 {
    assert!(d >= 1);
    let mut count = 0;
    let mut e = 1;
    while e * e <= d {
        if d % e == 0 {
            count += if e * e == d { 1 } else { 2 };
        }
        e += 1;
    }
    count
}

/// Upper bound `sigma_0(d) (d+1)^{2d+6}` on the number of fiberings of any
/// 4-manifold with Euler characteristic `4d`.
pub fn upper_bound(d: u64) -> BigUint {
    assert!(d >= 1);
    BigUint::from(divisor_count(d)) * hom_count(d)
}

/// The homomorphism-counting factor `(d+1)^{2d+6}`.
pub fn hom_count(d: u64) -> BigUint {
    BigUint::from(d + 1).pow(max_generators(d).0 as u32)
}

/// Sharper variant `sigma_0(d) d^{2d+6}` (a refinement of the same
/// counting argument); exposed behind a flag, default off.
pub fn upper_bound_sharper(d: u64) -> BigUint {
    assert!(d >= 1);
    BigUint::from(divisor_count(d)) * BigUint::from(d).pow((2 * d + 6) as u32)
}

/// Lower bound `2^{floor((d+2)/6)}`: the line-graph family realizes `2^n`
/// fiberings at `d = 6n - 2`, and `N` is monotone because its defining
/// condition is the inequality `chi(E) <= 4d`, so flooring between family
/// points is valid.
pub fn lower_bound(d: u64) -> BigUint {
    assert!(d >= 1);
    BigUint::one() << ((d + 2) / 6)
}

/// All ordered pairs `g, h >= 2` with `(g-1)(h-1) = d`, in increasing `g`.
/// There is one per divisor of `d`.
pub fn genus_pairs(d: u64) -> Vec<(u64, u64)> {
    assert!(d >= 1);
    let mut out = Vec::new();
    for e in 1..=d {
        if d % e == 0 {
            out.push((e + 1, d / e + 1));
        }
    }
    out
}

/// Maximum of `2g + 2h` over the genus pairs, verified by enumeration to
/// match the closed form `2d + 6`, together with the pair attaining it.
pub fn max_generators(d: u64) -> (u64, (u64, u64)) {
    let pairs = genus_pairs(d);
    let (best, pair) = pairs
        .iter()
        .map(|&(g, h)| (2 * g + 2 * h, (g, h)))
        .max()
        .expect("d >= 1 has at least one pair");
    assert_eq!(best, 2 * d + 6, "closed form must match the enumeration");
    (best, pair)
}

/// Genus `(h-1)d + h` of a `(d+1)`-sheeted cover of the genus-`h` surface.
/// Strictly exceeds every `g` compatible with `(g-1)(h-1) = d`, which is
/// what makes the fiber-vs-base comparison in the counting argument work.
pub fn cover_genus(h: u64, d: u64) -> u64 {
    assert!(h >= 2 && d >= 1);
    (h - 1) * d + h
}

/// The assembled bounds data for one `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub d: u64,
    pub lower: BigUint,
    pub upper: BigUint,
    pub genus_pairs: Vec<(u64, u64)>,
    pub max_generators: u64,
    pub argmax_pair: (u64, u64),
    pub hom_count: BigUint,
    /// True when the sharper homomorphism count was used for `upper`.
    pub sharper: bool,
}

pub fn bounds_report(d: u64) -> BoundsReport {
    bounds_report_with(d, false)
}

pub fn bounds_report_with(d: u64, sharper: bool) -> BoundsReport {
    let (maxgen, argmax) = max_generators(d);
    let upper = if sharper {
        upper_bound_sharper(d)
    } else {
        upper_bound(d)
    };
    let report = BoundsReport {
        d,
        lower: lower_bound(d),
        upper,
        genus_pairs: genus_pairs(d),
        max_generators: maxgen,
        argmax_pair: argmax,
        hom_count: hom_count(d),
        sharper,
    };
    assert!(report.lower <= report.upper, "bounds crossed at d = {d}");
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisor_count(12), 6);
        for p in [2u64, 3, 5, 7, 11, 13, 97] {
            assert_eq!(divisor_count(p), 2);
        }
        // Enumeration oracle.
        for d in 1..=200 {
            let brute = (1..=d).filter(|e| d % e == 0).count() as u64;
            assert_eq!(divisor_count(d), brute);
        }
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound(1), BigUint::from(256u32));
        assert_eq!(upper_bound(3), BigUint::from(33554432u64));
        assert_eq!(upper_bound(2), BigUint::from(118098u64));
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound(4), BigUint::from(2u32));
        assert_eq!(lower_bound(10), BigUint::from(4u32));
        assert_eq!(lower_bound(1), BigUint::one());
        // Monotone non-decreasing.
        let mut prev = lower_bound(1);
        for d in 2..=300 {
            let next = lower_bound(d);
            assert!(next >= prev);
            prev = next;
        }
    }

    #[test]
    fn genus_pairs_examples() {
        assert_eq!(genus_pairs(1), vec![(2, 2)]);
        assert_eq!(genus_pairs(4), vec![(2, 5), (3, 3), (5, 2)]);
        assert_eq!(genus_pairs(6).len(), 4);
        for d in 1..=300 {
            assert_eq!(genus_pairs(d).len() as u64, divisor_count(d));
            for (g, h) in genus_pairs(d) {
                assert!(g >= 2 && h >= 2);
                assert_eq!((g - 1) * (h - 1), d);
            }
        }
    }

    #[test]
    fn max_generators_examples() {
        assert_eq!(max_generators(3), (12, (4, 2)));
        assert_eq!(max_generators(1), (8, (2, 2)));
        assert_eq!(max_generators(12), (30, (13, 2)));
        for d in 1..=500 {
            let (m, (g, h)) = max_generators(d);
            assert_eq!(m, 2 * d + 6);
            assert_eq!((g, h), (d + 1, 2));
        }
    }

    #[test]
    fn cover_genus_examples() {
        assert_eq!(cover_genus(2, 3), 5);
        assert_eq!(cover_genus(2, 1), 3);
        // Strictness against every compatible fiber genus.
        for d in 1..=500 {
            for (g, h) in genus_pairs(d) {
                assert!(
                    cover_genus(h, d) > g,
                    "cover genus not strict at d={d}, pair ({g},{h})"
                );
            }
        }
    }

    #[test]
    fn report_assembles() {
        let r = bounds_report(4);
        assert_eq!(r.lower, BigUint::from(2u32));
        assert_eq!(r.upper, BigUint::from(3u32) * BigUint::from(5u32).pow(14));
        assert_eq!(r.max_generators, 14);
        assert_eq!(r.hom_count, BigUint::from(5u32).pow(14));

        let r1 = bounds_report(1);
        assert_eq!(r1.lower, BigUint::one());
        assert_eq!(r1.upper, BigUint::from(256u32));

        for d in 1..=200 {
            let r = bounds_report(d);
            assert!(r.lower <= r.upper);
        }
    }

    #[test]
    fn sharper_variant() {
        let r = bounds_report_with(3, true);
        assert_eq!(r.upper, BigUint::from(2u32) * BigUint::from(3u32).pow(12));
        assert!(r.sharper);
        // The footnoted bound is smaller for every d > 1.
        for d in 2..=50 {
            assert!(upper_bound_sharper(d) < upper_bound(d));
        }
    }

    #[test]
    fn hom_count_matches_structure() {
        for d in 1..=60 {
            assert_eq!(
                upper_bound(d),
                BigUint::from(divisor_count(d)) * hom_count(d)
            );
        }
    }
}
