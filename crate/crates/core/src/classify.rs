//! The four prime classes behind the parity of A(2n+1), the mod-4
//! classification of R(m, 5x^2+2xy+11y^2) for square-free m = 11 (mod 24),
//! and the resulting fast parity indicator.
//!
//! Classes (all primes):
//!
//! * S1: p = 11 (mod 24) represented by 5x^2+2xy+11y^2
//! * S2: p =  5 (mod 24) represented by 5x^2+2xy+11y^2
//! * S3: p =  1 (mod 24) represented by 7x^2+6xy+9y^2
//! * S4: p =  7 (mod 24) represented by 7x^2+6xy+9y^2

use std::fmt;

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::qform::{is_represented, rep_count, QuadForm};

/// The form testing membership in S1 and S2.
pub const FORM_S12: QuadForm = QuadForm::new(5, 2, 11);
/// The form testing membership in S3 and S4.
pub const FORM_S34: QuadForm = QuadForm::new(7, 6, 9);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimeClass {
    S1,
    S2,
    S3,
    S4,
    None,
}

impl PrimeClass {
    /// Index 1..=4 for the four proper classes.
    pub fn index(self) -> Option<usize> {
        match self {
            PrimeClass::S1 => Some(1),
            PrimeClass::S2 => Some(2),
            PrimeClass::S3 => Some(3),
            PrimeClass::S4 => Some(4),
            PrimeClass::None => None,
        }
    }
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeClass::S1 => write!(f, "S1"),
            PrimeClass::S2 => write!(f, "S2"),
            PrimeClass::S3 => write!(f, "S3"),
            PrimeClass::S4 => write!(f, "S4"),
            PrimeClass::None => write!(f, "none"),
        }
    }
}

/// Class membership of a prime, decided by its residue mod 24 and a
/// representability test. Rejects non-prime input.
pub fn classify_prime(p: u64) -> Result<PrimeClass> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(classify_prime_unchecked(p))
}

/// Same as [`classify_prime`] but trusts the caller on primality.
pub(crate) fn classify_prime_unchecked(p: u64) -> PrimeClass {
    let n = p as i64;
    match p % 24 {
        11 if is_represented(n, &FORM_S12) => PrimeClass::S1,
        5 if is_represented(n, &FORM_S12) => PrimeClass::S2,
        1 if is_represented(n, &FORM_S34) => PrimeClass::S3,
        7 if is_represented(n, &FORM_S34) => PrimeClass::S4,
        _ => PrimeClass::None,
    }
}

/// How the prime factors of a square-free integer distribute over the four
/// classes. `all_in_s` holds exactly when n1 + n2 + n3 + n4 = t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormPattern {
    pub n1: u32,
    pub n2: u32,
    pub n3: u32,
    pub n4: u32,
    pub all_in_s: bool,
}

impl FormPattern {
    /// Odd count of S1 factors, even counts of S2 and S4 factors.
    pub fn matches_form_i(&self) -> bool {
        self.n1 % 2 == 1 && self.n2 % 2 == 0 && self.n4 % 2 == 0
    }

    /// Even count of S1 factors, odd counts of S2 and S4 factors.
    pub fn matches_form_ii(&self) -> bool {
        self.n1 % 2 == 0 && self.n2 % 2 == 1 && self.n4 % 2 == 1
    }
}

fn pattern_of(primes: &[u64]) -> FormPattern {
    let mut counts = [0u32; 4];
    let mut all_in_s = true;
    for &p in primes {
        match classify_prime_unchecked(p).index() {
            Some(i) => counts[i - 1] += 1,
            None => all_in_s = false,
        }
    }
    FormPattern {
        n1: counts[0],
        n2: counts[1],
        n3: counts[2],
        n4: counts[3],
        all_in_s,
    }
}

/// Factor breakdown used by the predictor: per-prime classes plus the
/// aggregate pattern. `m` must be square-free and 11 mod 24.
pub fn classification_breakdown(m: u64) -> Result<(Vec<(u64, PrimeClass)>, FormPattern)> {
    if m % 24 != 11 {
        return Err(Error::WrongResidue {
            m,
            expected: 11,
            modulus: 24,
        });
    }
    let f = factorize(m)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquareFree(m));
    }
    let primes: Vec<u64> = f.primes().collect();
    let classes = primes
        .iter()
        .map(|&p| (p, classify_prime_unchecked(p)))
        .collect();
    Ok((classes, pattern_of(&primes)))
}

/// Predicts R(m, 5x^2+2xy+11y^2) = 2 (mod 4) for square-free m = 11 (mod 24):
/// true iff every prime factor lands in one of the four classes and the
/// class counts match one of the two admissible parity patterns.
pub fn theorem1_predict(m: u64) -> Result<bool> {
    let (_, pattern) = classification_breakdown(m)?;
    Ok(pattern.all_in_s && (pattern.matches_form_i() || pattern.matches_form_ii()))
}

/// mu_i(m) = +1 when the number of S_i prime factors of m is even, -1 when
/// odd. Requires m square-free with every factor in one of the classes.
pub fn mu_signs(m: u64) -> Result<[i8; 4]> {
    let f = factorize(m)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquareFree(m));
    }
    let mut counts = [0u32; 4];
    for p in f.primes() {
        match classify_prime_unchecked(p).index() {
            Some(i) => counts[i - 1] += 1,
            None => return Err(Error::FactorOutsideS { m, p }),
        }
    }
    Ok(counts.map(|c| if c % 2 == 0 { 1 } else { -1 }))
}

/// True iff A(2n+1) is odd, decided through R(24n+11, 5x^2+2xy+11y^2):
/// the classifier route when 24n+11 is square-free, a direct representation
/// count otherwise, so the indicator is total over n.
pub fn odd_indicator(n: u64) -> bool {
    let m = 24 * n + 11;
    match theorem1_predict(m) {
        Ok(v) => v,
        Err(_) => rep_count(m as i64, &FORM_S12) % 4 == 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_fixtures() {
        assert_eq!(classify_prime(11).unwrap(), PrimeClass::S1);
        assert_eq!(classify_prime(5).unwrap(), PrimeClass::S2);
        assert_eq!(classify_prime(7).unwrap(), PrimeClass::S4);
        assert_eq!(classify_prime(73).unwrap(), PrimeClass::S3);
        assert_eq!(classify_prime(23).unwrap(), PrimeClass::None);
        // 59 = 11 (mod 24) but 59 = 2x^2 + 27y^2, not the S1 form.
        assert_eq!(classify_prime(59).unwrap(), PrimeClass::None);
        assert!(matches!(classify_prime(35), Err(Error::NotPrime(35))));
    }

    #[test]
    fn theorem1_fixtures() {
        assert!(theorem1_predict(11).unwrap());
        assert!(theorem1_predict(35).unwrap());
        assert!(!theorem1_predict(59).unwrap());
    }

    #[test]
    fn theorem1_error_codes_are_distinct() {
        // 275 = 5^2 * 11 = 11 (mod 24): square-free violation.
        assert!(matches!(theorem1_predict(275), Err(Error::NotSquareFree(275))));
        // 13 = 13 (mod 24): residue violation.
        assert!(matches!(
            theorem1_predict(13),
            Err(Error::WrongResidue { m: 13, .. })
        ));
    }

    #[test]
    fn mu_signs_fixtures() {
        assert_eq!(mu_signs(11).unwrap(), [-1, 1, 1, 1]);
        assert_eq!(mu_signs(35).unwrap(), [1, -1, 1, -1]);
        assert_eq!(mu_signs(1).unwrap(), [1, 1, 1, 1]);
        assert!(matches!(
            mu_signs(13),
            Err(Error::FactorOutsideS { m: 13, p: 13 })
        ));
        assert!(matches!(mu_signs(25), Err(Error::NotSquareFree(25))));
    }

    #[test]
    fn odd_indicator_fixtures() {
        // A(1) = 1, A(5) = 2, A(7) = 3
        assert!(odd_indicator(0));
        assert!(!odd_indicator(2));
        assert!(odd_indicator(3));
    }

    #[test]
    fn odd_indicator_total_on_non_squarefree() {
        // n = 11 gives m = 275 = 5^2 * 11, exercising the fallback path.
        let m = 275i64;
        let expected = rep_count(m, &FORM_S12) % 4 == 2;
        assert_eq!(odd_indicator(11), expected);
    }

    #[test]
    fn pattern_forms() {
        let (_, p35) = classification_breakdown(35).unwrap();
        assert!(p35.all_in_s && p35.matches_form_ii() && !p35.matches_form_i());
        let (_, p11) = classification_breakdown(11).unwrap();
        assert!(p11.all_in_s && p11.matches_form_i());
    }
}
