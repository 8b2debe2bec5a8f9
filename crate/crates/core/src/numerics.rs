//! Scalar invariants of the compactified Picard variety of degree `d` over
//! curves of genus `g`.

use num_integer::Integer;

use crate::{Error, Result};

/// Genus and degree of a Picard variety; `g >= 3` is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PicardParams {
    g: i64,
    d: i64,
}

impl PicardParams {
    pub fn new(g: i64, d: i64) -> Result<Self> {
        if g < 3 {
            return Err(Error::GenusBelowThree(g));
        }
        Ok(PicardParams { g, d })
    }

    pub fn genus(&self) -> i64 {
        self.g
    }

    pub fn degree(&self) -> i64 {
        self.d
    }

    /// `2g - 2`, the degree of the canonical bundle.
    pub fn canonical_degree(&self) -> i64 {
        2 * self.g - 2
    }

    /// Smallest degree for which the boundary results apply, `20(g - 1)`.
    pub fn degree_floor(&self) -> i64 {
        20 * (self.g - 1)
    }

    pub fn with_degree(&self, d: i64) -> Self {
        PicardParams { g: self.g, d }
    }
}

/// `k_{d,g} = (2g - 2) / gcd(2g - 2, g + d - 1)`.
pub fn kouvidakis_class(p: PicardParams) -> i64 {
    let canonical = p.canonical_degree();
    let k = canonical / canonical.gcd(&(p.g + p.d - 1));
    debug_assert_eq!(k * canonical.gcd(&(p.g + p.d - 1)), canonical);
    k
}

/// Whether the Picard variety coarsely represents its moduli functor:
/// `gcd(d - g + 1, 2g - 2) = 1`.
pub fn coarse_moduli_predicate(p: PicardParams) -> bool {
    (p.d - p.g + 1).gcd(&p.canonical_degree()) == 1
}

/// Rank of the rational divisor class group: the universal class, the Hodge
/// class and the `⌊g/2⌋ + 1` boundary classes.
pub fn class_group_rank(g: i64) -> Result<i64> {
    Ok(boundary_divisor_count(g)? + 2)
}

/// Number of boundary divisors `Δ_0, ..., Δ_⌊g/2⌋` of the moduli of stable curves.
pub fn boundary_divisor_count(g: i64) -> Result<i64> {
    if g < 3 {
        return Err(Error::GenusBelowThree(g));
    }
    Ok(g / 2 + 1)
}

/// Smallest `d' >= 20(g - 1)` with `d' ≡ d (mod 2g - 2)`. The Picard
/// varieties of degrees `d` and `d'` are isomorphic.
pub fn normalize_degree(p: PicardParams) -> i64 {
    let modulus = p.canonical_degree();
    let floor = p.degree_floor();
    let normalized = floor + (p.d - floor).mod_floor(&modulus);
    debug_assert_eq!(kouvidakis_class(p), kouvidakis_class(p.with_degree(normalized)));
    debug_assert_eq!(
        coarse_moduli_predicate(p),
        coarse_moduli_predicate(p.with_degree(normalized))
    );
    normalized
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(g: i64, d: i64) -> PicardParams {
        PicardParams::new(g, d).unwrap()
    }

    #[test]
    fn kouvidakis_examples() {
        assert_eq!(kouvidakis_class(p(3, 42)), 1);
        assert_eq!(kouvidakis_class(p(4, 60)), 2);
        for g in 3..12 {
            assert_eq!(kouvidakis_class(p(g, g - 1)), 1);
        }
    }

    #[test]
    fn coarse_examples() {
        assert!(!coarse_moduli_predicate(p(3, 40)));
        assert!(!coarse_moduli_predicate(p(3, 38)));
        assert!(coarse_moduli_predicate(p(4, 80)));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(class_group_rank(3), Ok(4));
        assert_eq!(class_group_rank(4), Ok(5));
        assert_eq!(class_group_rank(5), Ok(5));
        assert_eq!(boundary_divisor_count(3), Ok(2));
        assert_eq!(class_group_rank(2), Err(Error::GenusBelowThree(2)));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_degree(p(3, 5)), 41);
        assert_eq!(normalize_degree(p(3, 40)), 40);
        assert_eq!(normalize_degree(p(4, 0)), 60);
        assert_eq!(normalize_degree(p(3, 100)), 40);
        assert_eq!(normalize_degree(p(3, -3)), 41);
    }

    #[test]
    fn params_reject_small_genus() {
        assert_eq!(PicardParams::new(2, 10), Err(Error::GenusBelowThree(2)));
    }
}
