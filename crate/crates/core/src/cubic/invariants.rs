use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Self-intersection `⟨S,S⟩_X` of a rational scroll of degree `D` with
/// `r_dp` double points inside a cubic fourfold: `2 r_dp + 3D − 2`.
pub fn selfint_from_double_points(degree: i64, double_points: i64) -> Result<i64> {
    if degree < 3 || double_points < 0 {
        return Err(Error::Domain(format!(
            "need D >= 3 and r >= 0, got D = {degree}, r = {double_points}"
        )));
    }
    Ok(2 * double_points + 3 * degree - 2)
}

/// Determinant of the intersection matrix of `h^2` and `S`.
pub fn discriminant(degree: i64, selfint: i64) -> i64 {
    3 * selfint - degree * degree
}

/// Degree `D(D−2)/2 + 2 − 2g − ⟨S,S⟩/2` of the associated unirational
/// parametrization, as an exact rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnirationalDegree {
    pub numer: i64,
    pub denom: i64,
}

impl UnirationalDegree {
    pub fn ratio(&self) -> Ratio<i64> {
        Ratio::new(self.numer, self.denom)
    }

    pub fn is_positive(&self) -> bool {
        self.numer > 0
    }

    pub fn as_integer(&self) -> Option<i64> {
        (self.denom == 1).then_some(self.numer)
    }

    pub fn is_odd(&self) -> bool {
        self.as_integer().is_some_and(|n| n % 2 != 0)
    }
}

pub fn unirational_degree(degree: i64, section_genus: i64, selfint: i64) -> UnirationalDegree {
    let r = Ratio::new(degree * (degree - 2), 2) + Ratio::from_integer(2 - 2 * section_genus) - Ratio::new(selfint, 2);
    UnirationalDegree {
        numer: *r.numer(),
        denom: *r.denom(),
    }
}

/// One row of the table of scrolls of degree `2n+1` with `n(n−2)` double
/// points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantRecord {
    pub n: i64,
    pub degree: i64,
    pub selfint: i64,
    pub singularities: i64,
    pub discriminant: i64,
    pub section_genus: i64,
    pub rho: UnirationalDegree,
}

pub fn discriminant_table(n: i64) -> Result<DiscriminantRecord> {
    if n < 2 {
        return Err(Error::Domain(format!("table rows start at n = 2, got {n}")));
    }
    let degree = 2 * n + 1;
    let singularities = n * (n - 2);
    let selfint = selfint_from_double_points(degree, singularities)?;
    if selfint != 2 * n * n + 2 * n + 1 {
        return Err(Error::InternalConsistency(format!(
            "self-intersection {selfint} differs from 2n^2+2n+1 at n = {n}"
        )));
    }
    let d = discriminant(degree, selfint);
    if d != 2 * (n * n + n + 1) {
        return Err(Error::InternalConsistency(format!(
            "discriminant {d} differs from 2(n^2+n+1) at n = {n}"
        )));
    }
    Ok(DiscriminantRecord {
        n,
        degree,
        selfint,
        singularities,
        discriminant: d,
        section_genus: 0,
        rho: unirational_degree(degree, 0, selfint),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn example_chain() {
        let s = selfint_from_double_points(9, 8).unwrap();
        assert_eq!(s, 41);
        assert_eq!(discriminant(9, s), 42);
        assert_eq!(unirational_degree(9, 0, s).as_integer(), Some(13));
        assert_eq!(unirational_degree(2, 0, 0).as_integer(), Some(2));
        assert_eq!(unirational_degree(3, 0, 2), UnirationalDegree { numer: 5, denom: 2 });
    }

    #[test]
    fn table_rows() {
        let r2 = discriminant_table(2).unwrap();
        assert_eq!((r2.degree, r2.selfint, r2.discriminant, r2.singularities), (5, 13, 14, 0));
        let r4 = discriminant_table(4).unwrap();
        assert_eq!((r4.discriminant, r4.rho.as_integer()), (42, Some(13)));
        assert!(discriminant_table(1).is_err());
        assert!(selfint_from_double_points(2, 0).is_err());
        assert!(selfint_from_double_points(5, -1).is_err());
    }

    #[test]
    fn cubic_scroll_oracle() {
        // ½(⟨S,S⟩ − 6D + 3(D+2) − 8 + 4) must return the double point count
        for d in 3..12i64 {
            for r in 0..10i64 {
                let s = selfint_from_double_points(d, r).unwrap();
                assert_eq!(s - 6 * d + 3 * (d + 2) - 8 + 4, 2 * r);
            }
        }
        assert_eq!(selfint_from_double_points(3, 0).unwrap(), 7);
    }

    #[test]
    fn rho_is_odd_when_four_does_not_divide_d() {
        for n in 2..=10 {
            let row = discriminant_table(n).unwrap();
            assert_eq!(row.rho.as_integer(), Some(n * n - n + 1));
            if row.discriminant % 4 != 0 {
                assert!(row.rho.is_odd(), "n = {n}");
            }
        }
    }

    proptest! {
        #![proptest_config(crate::proptest_config(256))]

        #[test]
        fn rho_matches_rational_evaluation(d in 1i64..40, g in 0i64..5, s in -50i64..200) {
            let rho = unirational_degree(d, g, s).ratio();
            prop_assert_eq!(rho * 2, Ratio::from_integer(d * (d - 2) + 4 - 4 * g - s));
        }
    }
}
