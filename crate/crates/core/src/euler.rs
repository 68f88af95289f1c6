//! p(n) modulo small integers via the pentagonal number recurrence, and the
//! residue census over an initial segment under both indexing conventions.

use crate::error::{Error, Result};

/// p(n) mod `modulus` for 0 <= n <= len - 1.
pub struct ResidueTable {
    modulus: u32,
    values: Vec<u32>,
}

impl ResidueTable {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn value(&self, n: usize) -> u32 {
        self.values[n]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// p(n) mod m for all n <= n_max, by Euler's recurrence over generalized
/// pentagonal numbers:
///
/// p(n) = sum_k (-1)^(k+1) [ p(n - k(3k-1)/2) + p(n - k(3k+1)/2) ]
pub fn partition_mod_table(n_max: usize, modulus: u32) -> Result<ResidueTable> {
    if modulus < 2 {
        return Err(Error::InvalidModulus(modulus));
    }
    let m = modulus as i64;
    let mut values = vec![0u32; n_max + 1];
    values[0] = 1 % modulus;
    for n in 1..=n_max {
        let mut acc = 0i64;
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1i64 } else { -1 };
            acc += sign * values[n - g1] as i64;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                acc += sign * values[n - g2] as i64;
            }
            k += 1;
        }
        values[n] = acc.rem_euclid(m) as u32;
    }
    Ok(ResidueTable { modulus, values })
}

/// Residue-class counts of p(n) over the first `n_values` values, computed
/// under both conventions since "first N values" is ambiguous: indices
/// 0..=N-1 and indices 1..=N.
pub struct EulerCensus {
    pub modulus: u32,
    /// counts[r] = #\{0 <= n <= N-1 : p(n) = r mod m\}
    pub zero_based: Vec<u64>,
    /// counts[r] = #\{1 <= n <= N : p(n) = r mod m\}
    pub one_based: Vec<u64>,
}

pub fn census(n_values: usize, modulus: u32) -> Result<EulerCensus> {
    if n_values == 0 {
        return Err(Error::NonPositive);
    }
    let table = partition_mod_table(n_values, modulus)?;
    let mut zero_based = vec![0u64; modulus as usize];
    let mut one_based = vec![0u64; modulus as usize];
    for n in 0..n_values {
        zero_based[table.value(n) as usize] += 1;
    }
    for n in 1..=n_values {
        one_based[table.value(n) as usize] += 1;
    }
    Ok(EulerCensus {
        modulus,
        zero_based,
        one_based,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_mod_2_and_3() {
        let t2 = partition_mod_table(10, 2).unwrap();
        // p: 1 1 2 3 5 7 11 15 22 30 42
        let expect = [1u32, 1, 0, 1, 1, 1, 1, 1, 0, 0, 0];
        assert_eq!(t2.values(), &expect);
        let t3 = partition_mod_table(10, 3).unwrap();
        assert_eq!(t3.value(4), 5 % 3);
        assert_eq!(t3.value(10), 0); // p(10) = 42
    }

    #[test]
    fn census_single_value() {
        let c = census(1, 2).unwrap();
        // Only n = 0 in the zero-based window; p(0) = 1 is odd.
        assert_eq!(c.zero_based, vec![0, 1]);
        assert_eq!(c.one_based, vec![0, 1]); // p(1) = 1
    }

    #[test]
    fn modulus_validation() {
        assert!(matches!(
            partition_mod_table(5, 1),
            Err(Error::InvalidModulus(1))
        ));
        assert!(matches!(census(0, 2), Err(Error::NonPositive)));
    }

    #[test]
    fn census_counts_sum_to_n() {
        let c = census(500, 7).unwrap();
        assert_eq!(c.zero_based.iter().sum::<u64>(), 500);
        assert_eq!(c.one_based.iter().sum::<u64>(), 500);
    }
}
