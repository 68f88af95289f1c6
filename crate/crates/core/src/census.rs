//! Large-range parity census of A(2n+1) and the counting functions over the
//! multiplicative set generated by the four prime classes.
//!
//! The sieve route never factors an integer one at a time. Two lattice
//! sweeps over the value sets of 5x^2+2xy+11y^2 and 7x^2+6xy+9y^2 yield
//! constant-time class lookups for every prime in range plus exact
//! representation counts mod 4 for the residue class 11 (mod 24); a
//! chunked sieve over the progression m = 24n + 11 then factors the whole
//! range at O(log m) per value.

use std::io::Write;

use rayon::prelude::*;

use crate::arith::{factorize, isqrt};
use crate::classify::{classify_prime_unchecked, PrimeClass, FORM_S12, FORM_S34};
use crate::error::{Error, Result};
use crate::qform::QuadForm;
use crate::schur::parity_stream;

/// Largest census range the sieve route accepts (bounds table memory).
pub const SIEVE_CENSUS_CAP: u64 = 200_000_000;
/// Largest range for the per-integer sweeps behind `h_counts`.
pub const H_COUNTS_CAP: u64 = 50_000_000;
/// Prime range for the empirical class-frequency table.
pub const FREQ_PRIME_LIMIT: u64 = 1_000_000;
/// Each class of primes is expected to hold 1/48 of all primes; frequencies
/// outside a 15% relative band around that are flagged.
pub const FREQ_EXPECTED: f64 = 1.0 / 48.0;
pub const FREQ_BAND: f64 = 0.15;

/// True iff m is square-free and every prime factor belongs to one of the
/// four classes. m = 1 qualifies (empty product).
pub fn c_membership(m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let f = match factorize(m) {
        Ok(f) => f,
        Err(_) => return false,
    };
    f.is_squarefree()
        && f.primes()
            .all(|p| classify_prime_unchecked(p) != PrimeClass::None)
}

/// Cumulative odd count at a checkpoint, with the two normalized ratios
/// that bracket the expected growth:
/// ratio_low = odd (log x)^(11/12) / x, ratio_high = odd (log x)^(1/2) / x.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityCensusRow {
    pub x: u64,
    pub odd_count: u64,
    pub ratio_low: f64,
    pub ratio_high: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMethod {
    /// Progression sieve plus the class-based parity indicator.
    Sieve,
    /// GF(2) coefficient stream of the partition generating product.
    Direct,
}

fn bit_get(words: &[u64], i: u64) -> bool {
    (words[(i / 64) as usize] >> (i % 64)) & 1 == 1
}

fn bit_set(words: &mut [u64], i: u64) {
    words[(i / 64) as usize] |= 1 << (i % 64);
}

/// Constant-time classification tables for every integer up to a limit,
/// built by sweeping the two class forms over their value lattices.
pub struct ClassifierTables {
    limit: u64,
    /// Wrapping representation counts of 24i+11 by 5x^2+2xy+11y^2. Exact
    /// mod 256, hence exact mod 4.
    hist11: Vec<u8>,
    /// Representability bitsets per residue class.
    rep5: Vec<u64>,
    rep1: Vec<u64>,
    rep7: Vec<u64>,
}

impl ClassifierTables {
    pub fn build(limit: u64) -> Result<Self> {
        if limit > 24 * SIEVE_CENSUS_CAP + 11 {
            return Err(Error::LimitExceeded {
                requested: limit,
                cap: 24 * SIEVE_CENSUS_CAP + 11,
            });
        }
        let slots = |r: u64| if limit >= r { (limit - r) / 24 + 1 } else { 0 };
        let words = |n: u64| (n / 64 + 1) as usize;
        let mut tables = ClassifierTables {
            limit,
            hist11: vec![0u8; slots(11) as usize],
            rep5: vec![0u64; words(slots(5))],
            rep1: vec![0u64; words(slots(1))],
            rep7: vec![0u64; words(slots(7))],
        };
        tables.sweep_s12();
        tables.sweep_s34();
        Ok(tables)
    }

    fn sweep_s12(&mut self) {
        let limit = self.limit;
        sweep_form(&FORM_S12, limit, |v| match v % 24 {
            11 => {
                let i = ((v - 11) / 24) as usize;
                self.hist11[i] = self.hist11[i].wrapping_add(1);
            }
            5 => bit_set(&mut self.rep5, (v - 5) / 24),
            _ => {}
        });
    }

    fn sweep_s34(&mut self) {
        let limit = self.limit;
        sweep_form(&FORM_S34, limit, |v| match v % 24 {
            1 => bit_set(&mut self.rep1, (v - 1) / 24),
            7 => bit_set(&mut self.rep7, (v - 7) / 24),
            _ => {}
        });
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Class of a prime p <= limit. The caller guarantees primality.
    pub fn classify(&self, p: u64) -> PrimeClass {
        debug_assert!(p <= self.limit);
        match p % 24 {
            11 if self.hist11[((p - 11) / 24) as usize] != 0 => PrimeClass::S1,
            5 if bit_get(&self.rep5, (p - 5) / 24) => PrimeClass::S2,
            1 if bit_get(&self.rep1, (p - 1) / 24) => PrimeClass::S3,
            7 if bit_get(&self.rep7, (p - 7) / 24) => PrimeClass::S4,
            _ => PrimeClass::None,
        }
    }

    /// R(m, 5x^2+2xy+11y^2) mod 4 for m = 11 (mod 24), m <= limit.
    pub fn rep_mod4_res11(&self, m: u64) -> u8 {
        debug_assert!(m % 24 == 11 && m <= self.limit);
        self.hist11[((m - 11) / 24) as usize] & 3
    }
}

/// Visit f(x, y) for every lattice point with 0 <= f(x, y) <= limit.
fn sweep_form<V: FnMut(u64)>(f: &QuadForm, limit: u64, mut visit: V) {
    let (b, c) = (f.b, f.c);
    let d_abs = f.discriminant().unsigned_abs() as i64;
    let n = limit as i64;
    let xb = isqrt((4 * c * n / d_abs) as u64) as i64;
    for x in -xb..=xb {
        let disc = 4 * c * n - d_abs * x * x;
        if disc < 0 {
            continue;
        }
        let s = isqrt(disc as u64) as i64;
        let y_lo = (-(b * x) - s).div_euclid(2 * c);
        let y_hi = (-(b * x) + s).div_euclid(2 * c);
        let mut v = f.eval(x, y_lo);
        let mut y = y_lo;
        loop {
            if (0..=n).contains(&v) {
                visit(v as u64);
            }
            if y == y_hi {
                break;
            }
            v += b * x + c * (2 * y + 1);
            y += 1;
        }
    }
}

fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

const SIEVE_CHUNK: u64 = 1 << 19;

/// Parity flags for A(2n+1), n in 0..=x, by the classification route, plus
/// the number of square-free values where the class prediction disagrees
/// with the exact representation count mod 4 (expected zero).
fn sieve_parity_flags(x: u64, tables: &ClassifierTables) -> (Vec<bool>, u64) {
    let m_max = 24 * x + 11;
    debug_assert!(tables.limit() >= m_max);
    let root = isqrt(m_max);
    // Primes 2 and 3 never divide 24n + 11.
    let primes: Vec<(u64, u64)> = primes_up_to(root)
        .into_iter()
        .filter(|&p| p > 3)
        .map(|p| {
            // Solve 24k + 11 = 0 (mod p).
            let inv24 = powmod_u64(24 % p, p - 2, p);
            let r = ((p - 11 % p) % p) as u128 * inv24 as u128 % p as u128;
            (p, r as u64)
        })
        .collect();

    let n_chunks = (x / SIEVE_CHUNK + 1) as usize;
    let mut out: Vec<(Vec<bool>, u64)> = Vec::with_capacity(n_chunks);
    (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci as u64 * SIEVE_CHUNK;
            let hi = (lo + SIEVE_CHUNK - 1).min(x);
            sieve_chunk(lo, hi, &primes, tables)
        })
        .collect_into_vec(&mut out);

    let mut flags = Vec::with_capacity(x as usize + 1);
    let mut mismatches = 0u64;
    for (chunk_flags, chunk_mism) in out {
        flags.extend_from_slice(&chunk_flags);
        mismatches += chunk_mism;
    }
    (flags, mismatches)
}

fn sieve_chunk(
    lo: u64,
    hi: u64,
    primes: &[(u64, u64)],
    tables: &ClassifierTables,
) -> (Vec<bool>, u64) {
    let len = (hi - lo + 1) as usize;
    let mut rem: Vec<u64> = (lo..=hi).map(|k| 24 * k + 11).collect();
    let mut squarefree = vec![true; len];
    let mut in_s = vec![true; len];
    let mut parities = vec![0u8; len];

    let apply = |i: usize,
                 p: u64,
                 e: u32,
                     squarefree: &mut [bool],
                     in_s: &mut [bool],
                     parities: &mut [u8]| {
        if e >= 2 {
            squarefree[i] = false;
        }
        match tables.classify(p).index() {
            Some(ci) => parities[i] ^= 1 << (ci - 1),
            None => in_s[i] = false,
        }
    };

    for &(p, r) in primes {
        let offset = (r + p - lo % p) % p;
        let mut k = lo + offset;
        while k <= hi {
            let i = (k - lo) as usize;
            let mut e = 0u32;
            while rem[i] % p == 0 {
                rem[i] /= p;
                e += 1;
            }
            debug_assert!(e >= 1);
            apply(i, p, e, &mut squarefree, &mut in_s, &mut parities);
            k += p;
        }
    }

    let mut flags = vec![false; len];
    let mut mismatches = 0u64;
    for i in 0..len {
        if rem[i] > 1 {
            // Cofactor above the sieving bound is prime with exponent 1.
            apply(i, rem[i], 1, &mut squarefree, &mut in_s, &mut parities);
        }
        let m = 24 * (lo + i as u64) + 11;
        if squarefree[i] {
            let n1_odd = parities[i] & 1 != 0;
            let n2_odd = parities[i] & 2 != 0;
            let n4_odd = parities[i] & 8 != 0;
            let predicted = in_s[i]
                && ((n1_odd && !n2_odd && !n4_odd) || (!n1_odd && n2_odd && n4_odd));
            flags[i] = predicted;
            if (tables.rep_mod4_res11(m) == 2) != predicted {
                mismatches += 1;
            }
        } else {
            flags[i] = tables.rep_mod4_res11(m) == 2;
        }
    }
    (flags, mismatches)
}

/// Logarithmic checkpoints 10, 30, 100, 300, ... up to and including x.
pub fn checkpoints(x: u64) -> Vec<u64> {
    let mut cps = Vec::new();
    let mut base = 10u64;
    while base <= x {
        cps.push(base);
        if 3 * base <= x {
            cps.push(3 * base);
        }
        base *= 10;
    }
    if cps.last() != Some(&x) {
        cps.push(x);
    }
    cps
}

fn census_rows(x: u64, flags: &[bool]) -> Vec<ParityCensusRow> {
    let cps = checkpoints(x);
    let mut rows = Vec::with_capacity(cps.len());
    let mut odd = 0u64;
    let mut next = 0usize;
    for (n, &f) in flags.iter().enumerate() {
        if f {
            odd += 1;
        }
        while next < cps.len() && cps[next] == n as u64 {
            rows.push(make_row(cps[next], odd));
            next += 1;
        }
    }
    rows
}

fn make_row(x: u64, odd_count: u64) -> ParityCensusRow {
    let xf = x as f64;
    let lg = xf.ln();
    ParityCensusRow {
        x,
        odd_count,
        ratio_low: odd_count as f64 * lg.powf(11.0 / 12.0) / xf,
        ratio_high: odd_count as f64 * lg.sqrt() / xf,
    }
}

/// Cumulative counts of odd A(2n+1) over n <= x at logarithmic checkpoints.
/// Both methods produce identical counts; they share no code path.
pub fn odd_census(x: u64, method: CensusMethod) -> Result<Vec<ParityCensusRow>> {
    let flags = match method {
        CensusMethod::Direct => {
            let ps = parity_stream(2 * x + 1)?;
            (0..=x).map(|n| ps.bit((2 * n + 1) as usize)).collect()
        }
        CensusMethod::Sieve => {
            if x > SIEVE_CENSUS_CAP {
                return Err(Error::LimitExceeded {
                    requested: x,
                    cap: SIEVE_CENSUS_CAP,
                });
            }
            let tables = ClassifierTables::build(24 * x + 11)?;
            sieve_parity_flags(x, &tables).0
        }
    };
    Ok(census_rows(x, &flags))
}

/// CSV emission: header `x,odd_count,ratio_low,ratio_high`, LF endings,
/// ratios with six significant digits.
pub fn write_census_csv<W: Write>(rows: &[ParityCensusRow], out: &mut W) -> Result<()> {
    out.write_all(b"x,odd_count,ratio_low,ratio_high\n")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{:.5e},{:.5e}",
            r.x, r.odd_count, r.ratio_low, r.ratio_high
        )?;
    }
    Ok(())
}

/// A sign condition on the mu functions: count of m with every `fixed`
/// sign matched, split by the sign of mu at `split`.
#[derive(Debug, Clone)]
pub struct MuCondition {
    /// Index 1..=4 of the mu function whose sign splits the count.
    pub split: usize,
    /// Signs that must match for m to be counted at all.
    pub fixed: Vec<(usize, i8)>,
}

impl MuCondition {
    pub fn split_on(split: usize) -> Self {
        assert!((1..=4).contains(&split));
        MuCondition {
            split,
            fixed: Vec::new(),
        }
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (i, sign) in &self.fixed {
            s.push_str(&format!("mu{}={:+} ", i, sign));
        }
        s.push_str(&format!("split mu{}", self.split));
        s
    }
}

/// Counts over the class-generated set up to x, split by a mu sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HCounts {
    pub x: u64,
    /// Members passing the fixed filter.
    pub h: u64,
    /// ... with mu_split = +1.
    pub h_plus: u64,
    /// ... with mu_split = -1.
    pub h_minus: u64,
    pub condition: String,
}

struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    fn build(n: u64) -> Result<Self> {
        if n > H_COUNTS_CAP {
            return Err(Error::LimitExceeded {
                requested: n,
                cap: H_COUNTS_CAP,
            });
        }
        let n = n as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Ok(SpfSieve { spf })
    }
}

/// h, h_plus, h_minus over m <= x for the given condition.
pub fn h_counts(x: u64, cond: &MuCondition) -> Result<HCounts> {
    assert!((1..=4).contains(&cond.split));
    assert!(cond.fixed.iter().all(|&(i, s)| (1..=4).contains(&i) && (s == 1 || s == -1)));
    let sieve = SpfSieve::build(x)?;
    let tables = ClassifierTables::build(x.max(11))?;
    let mut counts = HCounts {
        x,
        h: 0,
        h_plus: 0,
        h_minus: 0,
        condition: cond.describe(),
    };
    'next_m: for m in 1..=x {
        let mut v = m as usize;
        let mut parities = 0u8;
        while v > 1 {
            let p = sieve.spf[v] as u64;
            v /= p as usize;
            if v % p as usize == 0 {
                continue 'next_m; // not square-free
            }
            match tables.classify(p).index() {
                Some(ci) => parities ^= 1 << (ci - 1),
                None => continue 'next_m,
            }
        }
        let mu = |i: usize| if parities & (1 << (i - 1)) == 0 { 1i8 } else { -1 };
        if cond.fixed.iter().any(|&(i, s)| mu(i) != s) {
            continue;
        }
        counts.h += 1;
        if mu(cond.split) == 1 {
            counts.h_plus += 1;
        } else {
            counts.h_minus += 1;
        }
    }
    Ok(counts)
}

/// Empirical share of one prime class among all primes up to a limit.
#[derive(Debug, Clone)]
pub struct ClassFrequency {
    pub class: PrimeClass,
    pub count: u64,
    pub frequency: f64,
    /// Within the 15% relative band around the expected 1/48.
    pub within_band: bool,
}

fn class_frequencies(prime_limit: u64) -> Result<(u64, [ClassFrequency; 4])> {
    let tables = ClassifierTables::build(prime_limit)?;
    let mut counts = [0u64; 4];
    let mut total = 0u64;
    for p in primes_up_to(prime_limit) {
        total += 1;
        if let Some(i) = tables.classify(p).index() {
            counts[i - 1] += 1;
        }
    }
    let classes = [
        PrimeClass::S1,
        PrimeClass::S2,
        PrimeClass::S3,
        PrimeClass::S4,
    ];
    let freqs = std::array::from_fn(|i| {
        let frequency = counts[i] as f64 / total as f64;
        ClassFrequency {
            class: classes[i],
            count: counts[i],
            frequency,
            within_band: (frequency - FREQ_EXPECTED).abs() <= FREQ_BAND * FREQ_EXPECTED,
        }
    });
    Ok((total, freqs))
}

/// Full density report: checkpoint rows (also emitted as CSV to `out`),
/// empirical class frequencies over primes up to 10^6, and the count of
/// square-free census values where the class route and the exact count
/// disagree (zero unless something is broken).
#[derive(Debug)]
pub struct DensityReport {
    pub rows: Vec<ParityCensusRow>,
    pub prime_limit: u64,
    pub primes_counted: u64,
    pub class_frequencies: [ClassFrequency; 4],
    pub classifier_mismatches: u64,
}

pub fn density_report<W: Write>(x_max: u64, out: &mut W) -> Result<DensityReport> {
    if x_max > SIEVE_CENSUS_CAP {
        return Err(Error::LimitExceeded {
            requested: x_max,
            cap: SIEVE_CENSUS_CAP,
        });
    }
    let tables = ClassifierTables::build(24 * x_max + 11)?;
    let (flags, mismatches) = sieve_parity_flags(x_max, &tables);
    let rows = census_rows(x_max, &flags);
    write_census_csv(&rows, out)?;
    let (primes_counted, class_frequencies) = class_frequencies(FREQ_PRIME_LIMIT)?;
    Ok(DensityReport {
        rows,
        prime_limit: FREQ_PRIME_LIMIT,
        primes_counted,
        class_frequencies,
        classifier_mismatches: mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::odd_indicator;
    use crate::qform::rep_count;

    #[test]
    fn c_membership_fixtures() {
        assert!(c_membership(1));
        assert!(c_membership(11));
        assert!(!c_membership(13));
        assert!(c_membership(5));
        assert!(c_membership(7));
        assert!(!c_membership(25));
        assert!(c_membership(35));
        assert!(!c_membership(0));
    }

    #[test]
    fn classifier_tables_match_per_prime_route() {
        let tables = ClassifierTables::build(30_000).unwrap();
        for p in primes_up_to(30_000) {
            assert_eq!(
                tables.classify(p),
                classify_prime_unchecked(p),
                "prime {p}"
            );
        }
    }

    #[test]
    fn histogram_matches_rep_count_mod4() {
        let tables = ClassifierTables::build(20_011).unwrap();
        let mut m = 11i64;
        while m <= 20_011 {
            assert_eq!(
                tables.rep_mod4_res11(m as u64),
                (rep_count(m, &FORM_S12) % 4) as u8,
                "m = {m}"
            );
            m += 24;
        }
    }

    #[test]
    fn sieve_flags_match_odd_indicator() {
        let x = 800u64;
        let tables = ClassifierTables::build(24 * x + 11).unwrap();
        let (flags, mismatches) = sieve_parity_flags(x, &tables);
        assert_eq!(mismatches, 0);
        for n in 0..=x {
            assert_eq!(flags[n as usize], odd_indicator(n), "n = {n}");
        }
    }

    #[test]
    fn census_methods_agree_small() {
        let a = odd_census(100, CensusMethod::Sieve).unwrap();
        let b = odd_census(100, CensusMethod::Direct).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.last().unwrap().x, 100);
    }

    #[test]
    fn census_at_zero() {
        let rows = odd_census(0, CensusMethod::Direct).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].x, 0);
        assert_eq!(rows[0].odd_count, 1); // A(1) = 1
    }

    #[test]
    fn checkpoints_shape() {
        assert_eq!(checkpoints(1000), vec![10, 30, 100, 300, 1000]);
        assert_eq!(checkpoints(5), vec![5]);
        assert_eq!(checkpoints(10), vec![10]);
        assert_eq!(checkpoints(2000), vec![10, 30, 100, 300, 1000, 2000]);
    }

    #[test]
    fn h_counts_fixtures() {
        let cond = MuCondition::split_on(1);
        let h10 = h_counts(10, &cond).unwrap();
        assert_eq!((h10.h, h10.h_plus, h10.h_minus), (3, 3, 0));
        let h11 = h_counts(11, &cond).unwrap();
        assert_eq!((h11.h, h11.h_plus, h11.h_minus), (4, 3, 1));
        let h1 = h_counts(1, &cond).unwrap();
        assert_eq!((h1.h, h1.h_plus, h1.h_minus), (1, 1, 0));
    }

    #[test]
    fn h_counts_match_per_m_membership() {
        let cond = MuCondition::split_on(2);
        let hc = h_counts(3000, &cond).unwrap();
        let mut h = 0u64;
        for m in 1..=3000u64 {
            if c_membership(m) {
                h += 1;
            }
        }
        assert_eq!(hc.h, h);
        assert_eq!(hc.h, hc.h_plus + hc.h_minus);
    }

    #[test]
    fn csv_format() {
        let rows = vec![make_row(10, 4)];
        let mut buf = Vec::new();
        write_census_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "x,odd_count,ratio_low,ratio_high");
        let row = lines.next().unwrap();
        assert!(row.starts_with("10,4,"), "{row}");
        assert!(!text.contains('\r'));
    }
}
