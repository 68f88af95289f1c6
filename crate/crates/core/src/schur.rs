//! Exact counters for Schur partitions and their two classical companions,
//! plus a bit-vector parity stream for large ranges.
//!
//! * `schur_a`: partitions into distinct parts congruent to 1 or 2 mod 3
//! * `schur_a1`: minimal gap 3 between parts, no two consecutive multiples
//!   of 3 among the parts
//! * `schur_a2`: gap below a part of at least 3, 2 or 5 according to the
//!   part being 1, 2 or 0 mod 3
//!
//! The three agree for every n; the equality is exercised by the
//! verification suites rather than assumed here.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Exact counting is capped here; beyond it the counts do not fit in u64
/// anyway (overflow surfaces as `CountOverflow` near n = 900).
pub const EXACT_COUNT_CAP: u32 = 5000;

/// Hard cap on the parity stream length (bits), which bounds memory.
pub const PARITY_STREAM_CAP: u64 = 1 << 27;

fn check_cap(n: u32) -> Result<()> {
    if n > EXACT_COUNT_CAP {
        return Err(Error::LimitExceeded {
            requested: n as u64,
            cap: EXACT_COUNT_CAP as u64,
        });
    }
    Ok(())
}

/// A(n) for every n <= n_max via the subset-sum dynamic program over parts
/// congruent to 1 or 2 mod 3.
pub fn schur_a_table(n_max: u32) -> Result<Vec<u64>> {
    check_cap(n_max)?;
    let n = n_max as usize;
    let mut dp = vec![0u64; n + 1];
    dp[0] = 1;
    for k in (1..=n).filter(|k| k % 3 != 0) {
        for i in (k..=n).rev() {
            dp[i] = dp[i]
                .checked_add(dp[i - k])
                .ok_or(Error::CountOverflow)?;
        }
    }
    Ok(dp)
}

/// A(n): the number of partitions of n into distinct parts congruent to
/// 1 or 2 mod 3.
pub fn schur_a(n: u32) -> Result<u64> {
    Ok(schur_a_table(n)?[n as usize])
}

/// Counter for A1 with a memo shared across queries, so sweeping a range
/// costs little more than the largest single query.
pub struct A1Counter {
    memo: HashMap<u64, u64>,
}

impl A1Counter {
    pub fn new() -> Self {
        A1Counter {
            memo: HashMap::new(),
        }
    }

    pub fn count(&mut self, n: u32) -> Result<u64> {
        check_cap(n)?;
        // Cheap pre-flight: the companion counts match A(n) in size, so bail
        // out before building an enormous memo when the result cannot fit.
        schur_a(n)?;
        self.rec(n, n, false)
    }

    /// Partitions of `rem` into parts <= `hi`, descending, where `skip_hi`
    /// forbids choosing exactly `hi` (the consecutive-multiple-of-3 rule).
    fn rec(&mut self, rem: u32, hi: u32, skip_hi: bool) -> Result<u64> {
        if rem == 0 {
            return Ok(1);
        }
        let (hi, skip_hi) = if hi > rem { (rem, false) } else { (hi, skip_hi) };
        if hi == 0 {
            return Ok(0);
        }
        let key = ((rem as u64) << 32) | ((hi as u64) << 1) | skip_hi as u64;
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let mut total = 0u64;
        for e in 1..=hi {
            if skip_hi && e == hi {
                continue;
            }
            // Next part must sit at least 3 below e; if e is a multiple of 3
            // then e - 3 is one too and is excluded.
            let sub = self.rec(rem - e, e.saturating_sub(3), e % 3 == 0)?;
            total = total.checked_add(sub).ok_or(Error::CountOverflow)?;
        }
        self.memo.insert(key, total);
        Ok(total)
    }
}

impl Default for A1Counter {
    fn default() -> Self {
        Self::new()
    }
}

/// A1(n): partitions with minimal difference 3 between parts and no two
/// consecutive multiples of 3 among the parts.
pub fn schur_a1(n: u32) -> Result<u64> {
    A1Counter::new().count(n)
}

fn a2_gap(part: u32) -> u32 {
    match part % 3 {
        1 => 3,
        2 => 2,
        _ => 5,
    }
}

/// Counter for A2, memoized like [`A1Counter`].
pub struct A2Counter {
    memo: HashMap<u64, u64>,
}

impl A2Counter {
    pub fn new() -> Self {
        A2Counter {
            memo: HashMap::new(),
        }
    }

    pub fn count(&mut self, n: u32) -> Result<u64> {
        check_cap(n)?;
        schur_a(n)?;
        self.rec(n, n)
    }

    fn rec(&mut self, rem: u32, hi: u32) -> Result<u64> {
        if rem == 0 {
            return Ok(1);
        }
        let hi = hi.min(rem);
        if hi == 0 {
            return Ok(0);
        }
        let key = ((rem as u64) << 32) | hi as u64;
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let mut total = 0u64;
        for e in 1..=hi {
            let sub = self.rec(rem - e, e.saturating_sub(a2_gap(e)))?;
            total = total.checked_add(sub).ok_or(Error::CountOverflow)?;
        }
        self.memo.insert(key, total);
        Ok(total)
    }
}

impl Default for A2Counter {
    fn default() -> Self {
        Self::new()
    }
}

/// A2(n): partitions e_1 + ... + e_v where the gap below e_l is at least
/// 3, 2 or 5 according to e_l = 1, 2 or 0 mod 3.
pub fn schur_a2(n: u32) -> Result<u64> {
    A2Counter::new().count(n)
}

/// Bit i holds A(i) mod 2.
pub struct ParityBits {
    words: Vec<u64>,
    len: usize,
}

impl ParityBits {
    /// Parity of A(i); panics if `i` exceeds the stream length.
    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} past stream length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Number of bits, i.e. N + 1 for a stream built with parity_stream(N).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// The GF(2) coefficient stream of the distinct-part generating product:
/// bit i of the result equals A(i) mod 2 for every i <= n.
///
/// Works in place over a packed bit vector: each admissible part k folds in
/// as an XOR of the stream shifted up by k.
pub fn parity_stream(n: u64) -> Result<ParityBits> {
    if n >= PARITY_STREAM_CAP {
        return Err(Error::LimitExceeded {
            requested: n,
            cap: PARITY_STREAM_CAP,
        });
    }
    let n = n as usize;
    let words_len = n / 64 + 1;
    let mut words = vec![0u64; words_len];
    words[0] = 1;
    for k in (1..=n).filter(|k| k % 3 != 0) {
        let s = k / 64;
        let r = k % 64;
        // Descending word order keeps every read below every write.
        for w in (s..words_len).rev() {
            let shifted = if r == 0 {
                words[w - s]
            } else {
                let carry = if w - s > 0 {
                    words[w - s - 1] >> (64 - r)
                } else {
                    0
                };
                (words[w - s] << r) | carry
            };
            words[w] ^= shifted;
        }
    }
    // Clear garbage above bit n in the top word.
    let top_bits = n % 64 + 1;
    if top_bits < 64 {
        words[words_len - 1] &= (1u64 << top_bits) - 1;
    }
    Ok(ParityBits {
        words,
        len: n + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_a_fixtures() {
        assert_eq!(schur_a(0).unwrap(), 1);
        assert_eq!(schur_a(5).unwrap(), 2);
        assert_eq!(schur_a(10).unwrap(), 4);
        assert_eq!(schur_a(4).unwrap(), 1);
        assert_eq!(schur_a(7).unwrap(), 3);
    }

    #[test]
    fn schur_a1_fixtures() {
        assert_eq!(schur_a1(0).unwrap(), 1);
        assert_eq!(schur_a1(5).unwrap(), 2);
        assert_eq!(schur_a1(10).unwrap(), 4);
        // {6, 3, 1} is excluded: 3 and 6 are consecutive multiples of 3.
        assert_eq!(schur_a1(9).unwrap(), schur_a(9).unwrap());
    }

    #[test]
    fn schur_a2_fixtures() {
        assert_eq!(schur_a2(0).unwrap(), 1);
        assert_eq!(schur_a2(5).unwrap(), 2);
        assert_eq!(schur_a2(7).unwrap(), 3);
        assert_eq!(schur_a2(10).unwrap(), 4);
    }

    #[test]
    fn counters_agree_small() {
        let mut a1 = A1Counter::new();
        let mut a2 = A2Counter::new();
        let table = schur_a_table(80).unwrap();
        for n in 0..=80u32 {
            assert_eq!(table[n as usize], a1.count(n).unwrap(), "A1 at n={n}");
            assert_eq!(table[n as usize], a2.count(n).unwrap(), "A2 at n={n}");
        }
    }

    #[test]
    fn parity_stream_fixtures() {
        let ps = parity_stream(0).unwrap();
        assert_eq!(ps.len(), 1);
        assert!(ps.bit(0));
        let ps = parity_stream(5).unwrap();
        let got: Vec<u32> = (0..=5).map(|i| ps.bit(i) as u32).collect();
        assert_eq!(got, vec![1, 1, 1, 1, 1, 0]);
    }

    #[test]
    fn parity_stream_matches_exact_counts() {
        let ps = parity_stream(300).unwrap();
        let table = schur_a_table(300).unwrap();
        for i in 0..=300usize {
            assert_eq!(ps.bit(i), table[i] % 2 == 1, "i={i}");
        }
    }

    #[test]
    fn parity_stream_word_boundaries() {
        // Lengths straddling the 64-bit word edges.
        let table = schur_a_table(130).unwrap();
        for n in [63u64, 64, 65, 127, 128, 129] {
            let ps = parity_stream(n).unwrap();
            for i in 0..=n as usize {
                assert_eq!(ps.bit(i), table[i] % 2 == 1, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            schur_a(EXACT_COUNT_CAP + 1),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(matches!(
            parity_stream(PARITY_STREAM_CAP),
            Err(Error::LimitExceeded { .. })
        ));
        // Exact counting overflows u64 long before the cap.
        assert!(matches!(schur_a(2000), Err(Error::CountOverflow)));
    }
}
