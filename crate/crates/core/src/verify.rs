//! Executable verification suites for the identities, the classification
//! theorem, the composition lemma, the counting recurrence, and the parity
//! congruence. Every suite produces a machine-readable report; failures
//! carry full witness data so a reader can re-derive them by hand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisor_kronecker_sum, factorize, is_squarefree};
use crate::classify::{classification_breakdown, classify_prime_unchecked, PrimeClass, FORM_S12};
use crate::error::{Error, Result};
use crate::euler;
use crate::qform::{
    class_number, dirichlet_compose, rep_count, rep_count_table, rep_solutions, reduced_forms,
    ComposeKind, QuadForm, RepSolution, F, G,
};
use crate::schur::{parity_stream, schur_a_table, A1Counter, A2Counter};

/// Seed used when the caller does not pass one; keeps every report
/// byte-identical across runs.
pub const DEFAULT_SEED: u64 = 11;

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

impl Failure {
    fn new(
        input: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) -> Self {
        Failure {
            input: input.into(),
            expected: expected.into(),
            actual: actual.into(),
        }
    }
}

/// Outcome of one suite. `status` is "pass" exactly when `failures` is
/// empty; observations that do not gate the suite go into `notes`.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub range: String,
    pub status: String,
    pub checked: u64,
    pub failures: Vec<Failure>,
    pub notes: String,
}

impl VerificationReport {
    fn finish(
        name: &str,
        range: String,
        checked: u64,
        failures: Vec<Failure>,
        notes: String,
    ) -> Self {
        VerificationReport {
            name: name.to_string(),
            range,
            status: if failures.is_empty() { "pass" } else { "fail" }.to_string(),
            checked,
            failures,
            notes,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    /// Sweep bound; every suite has a sensible default.
    pub limit: Option<u64>,
    /// Seed for the sampled suites.
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            limit: None,
            seed: DEFAULT_SEED,
        }
    }
}

pub const SUITE_NAMES: [&str; 10] = [
    "forms216",
    "parkin_shanks",
    "schur_andrews",
    "disc24_identity",
    "disc24_power",
    "disc216_identity",
    "theorem1",
    "lemma1",
    "congruence8",
    "claim2",
];

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<VerificationReport> {
    let limit = |d: u64| opts.limit.unwrap_or(d);
    Ok(match name {
        "forms216" => suite_forms216(),
        "parkin_shanks" => suite_parkin_shanks()?,
        "schur_andrews" => suite_schur_andrews(limit(300) as u32)?,
        "disc24_identity" => suite_disc24_identity(limit(100_000)),
        "disc24_power" => suite_disc24_power(limit(100_000)),
        "disc216_identity" => suite_disc216_identity(limit(100_000)),
        "theorem1" => suite_theorem1(limit(100_000)),
        "lemma1" => suite_lemma1(limit(100_000), opts.seed),
        "congruence8" => suite_congruence8(limit(5000))?,
        "claim2" => suite_claim2()?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

pub fn run_all(opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    SUITE_NAMES
        .iter()
        .map(|name| run_suite(name, opts))
        .collect()
}

// ---------------------------------------------------------------------------
// forms216

/// The six reduced primitive forms of discriminant -216, ascending (a, b).
pub const DISC216_FORMS: [QuadForm; 6] = [
    QuadForm::new(1, 0, 54),
    QuadForm::new(2, 0, 27),
    QuadForm::new(5, -2, 11),
    QuadForm::new(5, 2, 11),
    QuadForm::new(7, -6, 9),
    QuadForm::new(7, 6, 9),
];

pub fn suite_forms216() -> VerificationReport {
    let mut failures = Vec::new();
    match reduced_forms(-216) {
        Ok(forms) if forms == DISC216_FORMS => {}
        Ok(forms) => failures.push(Failure::new(
            "reduced_forms(-216)",
            format!("{:?}", DISC216_FORMS.map(|f| f.to_string())),
            format!("{:?}", forms.iter().map(|f| f.to_string()).collect::<Vec<_>>()),
        )),
        Err(e) => failures.push(Failure::new("reduced_forms(-216)", "6 forms", e.to_string())),
    }
    for (d, h) in [(-216i64, 6u64), (-24, 2)] {
        match class_number(d) {
            Ok(got) if got == h => {}
            Ok(got) => failures.push(Failure::new(
                format!("class_number({d})"),
                h.to_string(),
                got.to_string(),
            )),
            Err(e) => failures.push(Failure::new(
                format!("class_number({d})"),
                h.to_string(),
                e.to_string(),
            )),
        }
    }
    VerificationReport::finish(
        "forms216",
        "discriminants -216 and -24".into(),
        3,
        failures,
        String::new(),
    )
}

// ---------------------------------------------------------------------------
// parkin_shanks

const EXPECT_MOD2: [u64; 2] = [4996, 5004]; // (even, odd)
const EXPECT_MOD3: [u64; 3] = [3313, 3325, 3362];

pub fn suite_parkin_shanks() -> Result<VerificationReport> {
    let n = 10_000usize;
    let c2 = euler::census(n, 2)?;
    let c3 = euler::census(n, 3)?;
    let mut failures = Vec::new();
    let mut notes = String::new();

    let conventions = ["n in 0..=9999", "n in 1..=10000"];
    let mod2 = [&c2.zero_based, &c2.one_based];
    let mod3 = [&c3.zero_based, &c3.one_based];
    let mut matched = None;
    for i in 0..2 {
        if mod2[i].as_slice() == EXPECT_MOD2 && mod3[i].as_slice() == EXPECT_MOD3 {
            matched = Some(i);
            break;
        }
    }
    match matched {
        Some(i) => {
            notes = format!("matched under the {} convention", conventions[i]);
        }
        None => {
            failures.push(Failure::new(
                "p(n) mod 2 over 10000 values",
                format!("(even, odd) = ({}, {})", EXPECT_MOD2[0], EXPECT_MOD2[1]),
                format!(
                    "zero-based {:?}, one-based {:?}",
                    c2.zero_based, c2.one_based
                ),
            ));
            failures.push(Failure::new(
                "p(n) mod 3 over 10000 values",
                format!("{:?}", EXPECT_MOD3),
                format!(
                    "zero-based {:?}, one-based {:?}",
                    c3.zero_based, c3.one_based
                ),
            ));
        }
    }
    Ok(VerificationReport::finish(
        "parkin_shanks",
        "first 10000 values of p(n), both indexing conventions".into(),
        2,
        failures,
        notes,
    ))
}

// ---------------------------------------------------------------------------
// schur_andrews

/// Independent oracle: count subsets of the admissible parts by descending
/// depth-first enumeration, no dynamic programming shared with the counters.
pub fn brute_force_schur(n: u32) -> u64 {
    fn dfs(remaining: u32, max_part: u32) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let mut total = 0;
        let mut part = max_part.min(remaining);
        while part >= 1 {
            if part % 3 != 0 {
                total += dfs(remaining - part, part.saturating_sub(1));
            }
            part -= 1;
        }
        total
    }
    dfs(n, n)
}

pub fn suite_schur_andrews(limit: u32) -> Result<VerificationReport> {
    let table = schur_a_table(limit)?;
    let mut a1 = A1Counter::new();
    let mut a2 = A2Counter::new();
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for n in 0..=limit {
        let a = table[n as usize];
        let v1 = a1.count(n)?;
        let v2 = a2.count(n)?;
        checked += 1;
        if a != v1 || a != v2 {
            failures.push(Failure::new(
                format!("n = {n}"),
                format!("A = A1 = A2 = {a}"),
                format!("A = {a}, A1 = {v1}, A2 = {v2}"),
            ));
        }
        if n <= 60 {
            let brute = brute_force_schur(n);
            checked += 1;
            if a != brute {
                failures.push(Failure::new(
                    format!("n = {n} (subset enumeration)"),
                    brute.to_string(),
                    a.to_string(),
                ));
            }
        }
    }
    Ok(VerificationReport::finish(
        "schur_andrews",
        format!("0 <= n <= {limit}, subset-enumeration cross-check for n <= 60"),
        checked,
        failures,
        String::new(),
    ))
}

// ---------------------------------------------------------------------------
// disc24_identity / disc24_power

/// R(n, 2x^2+3y^2) + R(n, x^2+6y^2) = 2 sum_(d|n) (-6/d) for every n >= 1.
/// Only square-free n coprime to 6 gate the suite; anomalies elsewhere are
/// recorded in the notes with their gcd profile.
pub fn suite_disc24_identity(limit: u64) -> VerificationReport {
    let table_g = rep_count_table(&G, limit as usize);
    let table_f = rep_count_table(&F, limit as usize);
    // (n, detail, gating): the identity gates on square-free n coprime to 6
    // and on any bulk-table/direct-search disagreement.
    let results: Vec<(u64, String, bool)> = (1..=limit)
        .into_par_iter()
        .filter_map(|n| {
            let lhs = table_g[n as usize] as i64 + table_f[n as usize] as i64;
            let rhs = 2 * divisor_kronecker_sum(n, -6);
            if lhs == rhs {
                // Spot-check the bulk table against the direct search.
                if n <= 300 || n % 9973 == 0 {
                    let direct =
                        rep_count(n as i64, &G) as i64 + rep_count(n as i64, &F) as i64;
                    if direct != lhs {
                        return Some((n, format!("table {lhs} vs direct search {direct}"), true));
                    }
                }
                None
            } else {
                let gating = is_squarefree(n) && crate::arith::gcd(n, 6) == 1;
                Some((
                    n,
                    format!(
                        "R_g = {}, R_f = {}, lhs = {lhs}, rhs = {rhs}, gcd(n,6) = {}, square-free = {}",
                        table_g[n as usize],
                        table_f[n as usize],
                        crate::arith::gcd(n, 6),
                        is_squarefree(n)
                    ),
                    gating,
                ))
            }
        })
        .collect();

    let mut failures = Vec::new();
    let mut anomalies = Vec::new();
    for (n, detail, gating) in results {
        let f = Failure::new(format!("n = {n}"), "identity holds".to_string(), detail);
        if gating {
            failures.push(f);
        } else {
            anomalies.push(f);
        }
    }
    let notes = if anomalies.is_empty() {
        "identity held verbatim for every n, including non-square-free n and n sharing a factor with 6".to_string()
    } else {
        format!(
            "non-gating anomalies (n not square-free or gcd(n,6) > 1): {:?}",
            anomalies
        )
    };
    VerificationReport::finish(
        "disc24_identity",
        format!("1 <= n <= {limit}"),
        limit,
        failures,
        notes,
    )
}

/// R(m, 2x^2+3y^2) = 2^(t+1) for square-free m = 11 (mod 24) with t
/// distinct prime factors, applicable when every prime factor p of m has
/// (-6/p) = 1; when some factor has symbol -1 the count is forced to zero
/// instead, and the suite checks that too.
pub fn suite_disc24_power(limit: u64) -> VerificationReport {
    let table_g = rep_count_table(&G, limit as usize);
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let mut applicable = 0u64;
    let mut m = 11u64;
    while m <= limit {
        let f = factorize(m).expect("m >= 11");
        if f.is_squarefree() {
            checked += 1;
            let got = table_g[m as usize] as u64;
            let all_split = f.primes().all(|p| crate::arith::kronecker(-6, p as i64) == 1);
            let expect = if all_split {
                applicable += 1;
                1u64 << (f.t() + 1)
            } else {
                0
            };
            if got != expect {
                failures.push(Failure::new(
                    format!("m = {m} = {:?}", f.factors()),
                    format!(
                        "{} (all factors split: {all_split})",
                        if all_split { "2^(t+1)" } else { "0" }
                    ),
                    got.to_string(),
                ));
            }
            if m <= 2000 && rep_count(m as i64, &G) != got {
                failures.push(Failure::new(
                    format!("m = {m}"),
                    "table matches direct search".to_string(),
                    format!("table {got} vs search {}", rep_count(m as i64, &G)),
                ));
            }
        }
        m += 24;
    }
    VerificationReport::finish(
        "disc24_power",
        format!("square-free m = 11 (mod 24), m <= {limit}"),
        checked,
        failures,
        format!("{applicable} of {checked} values have every prime factor with (-6/p) = 1; the rest are forced to count 0"),
    )
}

// ---------------------------------------------------------------------------
// disc216_identity

const FORM_2_27: QuadForm = QuadForm::new(2, 0, 27);

/// Per-m checks for square-free m = 11 (mod 24):
///
/// 1. R(m, 2x^2+27y^2) + 2 R(m, 5x^2+2xy+11y^2) = 2 sum_(d|m) (-6/d);
/// 2. when the right side is positive it equals 2^(t+1);
/// 3. for composite m: every prime factor has its essentially unique
///    discriminant -24 representation, y coordinate off the multiples of 3,
///    exactly when every factor lies in a class; in that case
///    R(m, 2x^2+27y^2) = 4 (mod 8).
pub fn suite_disc216_identity(limit: u64) -> VerificationReport {
    let ms: Vec<u64> = (11..=limit).step_by(24).collect();
    let results: Vec<Vec<Failure>> = ms
        .par_iter()
        .map(|&m| {
            let f = factorize(m).expect("m >= 11");
            if !f.is_squarefree() {
                return Vec::new();
            }
            let mut failures = Vec::new();
            let r27 = rep_count(m as i64, &FORM_2_27);
            let r511 = rep_count(m as i64, &FORM_S12);
            let lhs = r27 + 2 * r511;
            let rhs = 2 * divisor_kronecker_sum(m, -6);
            debug_assert!(rhs >= 0);
            if lhs as i64 != rhs {
                failures.push(Failure::new(
                    format!("m = {m} = {:?}", f.factors()),
                    format!("R27 + 2 R511 = {rhs}"),
                    format!(
                        "R27 = {r27} {:?}, R511 = {r511} {:?}",
                        rep_solutions(m as i64, &FORM_2_27),
                        rep_solutions(m as i64, &FORM_S12)
                    ),
                ));
            }
            if rhs > 0 {
                let expect = 1i64 << (f.t() + 1);
                if rhs != expect {
                    failures.push(Failure::new(
                        format!("m = {m} = {:?}", f.factors()),
                        format!("2 sum (-6/d) = 2^(t+1) = {expect}"),
                        rhs.to_string(),
                    ));
                }
            }
            if f.t() >= 2 {
                let mut cond_y = Some(true);
                let mut cond_s = true;
                for p in f.primes() {
                    let rep_form = match p % 24 {
                        5 | 11 => Some(G),
                        1 | 7 => Some(F),
                        _ => None,
                    };
                    match rep_form {
                        Some(form) => {
                            let sols = rep_solutions(p as i64, &form);
                            match sols.first() {
                                Some(s) => {
                                    if s.y % 3 == 0 {
                                        cond_y = Some(false);
                                    }
                                }
                                None => cond_y = None,
                            }
                        }
                        None => cond_y = None,
                    }
                    if classify_prime_unchecked(p) == PrimeClass::None {
                        cond_s = false;
                    }
                }
                let cond_y = cond_y.unwrap_or(false);
                if cond_y != cond_s {
                    failures.push(Failure::new(
                        format!("m = {m} = {:?}", f.factors()),
                        "factor y-coordinates off 3Z exactly when all factors classified"
                            .to_string(),
                        format!("cond_y = {cond_y}, cond_s = {cond_s}"),
                    ));
                }
                if cond_y && r27 % 8 != 4 {
                    failures.push(Failure::new(
                        format!("m = {m} = {:?}", f.factors()),
                        "R(m, 2x^2+27y^2) = 4 (mod 8)".to_string(),
                        format!("{r27} with solutions {:?}", rep_solutions(m as i64, &FORM_2_27)),
                    ));
                }
            }
            failures
        })
        .collect();

    let checked = ms
        .iter()
        .filter(|&&m| is_squarefree(m))
        .count() as u64;
    let failures: Vec<Failure> = results.into_iter().flatten().collect();
    VerificationReport::finish(
        "disc216_identity",
        format!("square-free m = 11 (mod 24), m <= {limit}"),
        checked,
        failures,
        String::new(),
    )
}

// ---------------------------------------------------------------------------
// theorem1

/// Bidirectional check of the mod-4 classification: the class-pattern
/// prediction must coincide with the exhaustive representation count, and
/// the count itself must be 0 or 2 mod 4.
pub fn suite_theorem1(limit: u64) -> VerificationReport {
    let ms: Vec<u64> = (11..=limit)
        .step_by(24)
        .filter(|&m| is_squarefree(m))
        .collect();
    let failures: Vec<Failure> = ms
        .par_iter()
        .flat_map_iter(|&m| {
            let mut failures = Vec::new();
            let rc = rep_count(m as i64, &FORM_S12);
            if rc % 4 != 0 && rc % 4 != 2 {
                failures.push(Failure::new(
                    format!("m = {m}"),
                    "R(m, 5x^2+2xy+11y^2) mod 4 in {0, 2}".to_string(),
                    format!(
                        "{rc} (solutions {:?})",
                        rep_solutions(m as i64, &FORM_S12)
                    ),
                ));
            }
            let (classes, pattern) = classification_breakdown(m).expect("validated m");
            let predicted =
                pattern.all_in_s && (pattern.matches_form_i() || pattern.matches_form_ii());
            let actual = rc % 4 == 2;
            if predicted != actual {
                failures.push(Failure::new(
                    format!("m = {m}, classes {classes:?}"),
                    format!("prediction {predicted}"),
                    format!(
                        "R = {rc}, solutions {:?}",
                        rep_solutions(m as i64, &FORM_S12)
                    ),
                ));
            }
            failures
        })
        .collect();
    VerificationReport::finish(
        "theorem1",
        format!("square-free m = 11 (mod 24), m <= {limit}"),
        ms.len() as u64,
        failures,
        String::new(),
    )
}

// ---------------------------------------------------------------------------
// lemma1

fn div3(v: i64) -> bool {
    v % 3 == 0
}

/// One composed instance satisfies the trichotomy iff the 3-divisibility
/// pattern of the two output y coordinates matches the input pattern class.
fn lemma1_instance_ok(kind: ComposeKind, s0: RepSolution, s1: RepSolution) -> bool {
    let (form0, form1) = kind.input_forms();
    let a = form0.eval(s0.x, s0.y);
    let b = form1.eval(s1.x, s1.y);
    let (out_kind, outs) = dirichlet_compose(kind, s0, s1);
    let out_form = out_kind.form();
    // Value identity first: both outputs must hit the product.
    if outs
        .iter()
        .any(|s| out_form.eval(s.x, s.y) != a * b)
    {
        return false;
    }
    let (y0, y1) = (div3(s0.y), div3(s1.y));
    let (o0, o1) = (div3(outs[0].y), div3(outs[1].y));
    if y0 && y1 {
        o0 && o1
    } else if !y0 && !y1 {
        o0 ^ o1
    } else {
        !o0 && !o1
    }
}

/// Samples composition inputs with x coordinates off the multiples of 3:
/// exhaustive over the box |x|, |y| <= 6, then seeded uniform draws from
/// |x|, |y| <= 50 until `samples` instances are checked.
pub fn suite_lemma1(samples: u64, seed: u64) -> VerificationReport {
    let kinds = [ComposeKind::FF, ComposeKind::FG, ComposeKind::GG];
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let small: Vec<i64> = (-6..=6).collect();
    'exhaustive: for &kind in &kinds {
        for &x0 in small.iter().filter(|&&v| v % 3 != 0) {
            for &y0 in &small {
                for &x1 in small.iter().filter(|&&v| v % 3 != 0) {
                    for &y1 in &small {
                        if checked == samples {
                            break 'exhaustive;
                        }
                        checked += 1;
                        let s0 = RepSolution::new(x0, y0);
                        let s1 = RepSolution::new(x1, y1);
                        if !lemma1_instance_ok(kind, s0, s1) {
                            failures.push(lemma1_failure(kind, s0, s1));
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw_x = |rng: &mut ChaCha8Rng| loop {
        let v = rng.gen_range(-50i64..=50);
        if v % 3 != 0 {
            return v;
        }
    };
    while checked < samples {
        checked += 1;
        let kind = kinds[rng.gen_range(0..3)];
        let s0 = RepSolution::new(draw_x(&mut rng), rng.gen_range(-50i64..=50));
        let s1 = RepSolution::new(draw_x(&mut rng), rng.gen_range(-50i64..=50));
        if !lemma1_instance_ok(kind, s0, s1) {
            failures.push(lemma1_failure(kind, s0, s1));
        }
    }
    VerificationReport::finish(
        "lemma1",
        format!("{samples} composition instances, 3 does not divide x, seed {seed}"),
        checked,
        failures,
        String::new(),
    )
}

fn lemma1_failure(kind: ComposeKind, s0: RepSolution, s1: RepSolution) -> Failure {
    let (out_kind, outs) = dirichlet_compose(kind, s0, s1);
    Failure::new(
        format!("kind {kind}, s0 = ({s0}), s1 = ({s1})"),
        "trichotomy and value identity".to_string(),
        format!("outputs {out_kind}: ({}), ({})", outs[0], outs[1]),
    )
}

// ---------------------------------------------------------------------------
// congruence8

/// Parity congruence sweep with a configurable modulus offset so the suite
/// can be fault-injected: the genuine law uses m = 24n + 11.
pub fn congruence_failures(limit: u64, offset: u64) -> Result<Vec<Failure>> {
    let ps = parity_stream(2 * limit + 1)?;
    let ns: Vec<u64> = (0..=limit).collect();
    let failures: Vec<Failure> = ns
        .par_iter()
        .filter_map(|&n| {
            let m = 24 * n + offset;
            let r = rep_count(m as i64, &FORM_S12);
            let a_odd = ps.bit((2 * n + 1) as usize);
            if ((r / 2) % 2 == 1) == a_odd {
                None
            } else {
                Some(Failure::new(
                    format!("n = {n}, m = {m}"),
                    format!("A(2n+1) odd = {a_odd}"),
                    format!("R(m, 5x^2+2xy+11y^2) = {r}, half-count parity {}", (r / 2) % 2),
                ))
            }
        })
        .collect();
    Ok(failures)
}

pub fn suite_congruence8(limit: u64) -> Result<VerificationReport> {
    let failures = congruence_failures(limit, 11)?;
    // The literal 24n + 1 reading is recorded, never gated on.
    let literal = congruence_failures(limit, 1)?;
    let mut notes = String::new();
    if literal.is_empty() {
        notes.push_str("the 24n+1 modulus reading also held on this range; ");
    } else {
        notes.push_str(&format!(
            "the 24n+1 modulus reading fails at {} of {} indices, first at {}; ",
            literal.len(),
            limit + 1,
            literal[0].input
        ));
    }
    // Stratify by square-freeness of the modulus.
    let mut sf = 0u64;
    let mut nsf = 0u64;
    for n in 0..=limit {
        if is_squarefree(24 * n + 11) {
            sf += 1;
        } else {
            nsf += 1;
        }
    }
    if failures.is_empty() {
        notes.push_str(&format!(
            "24n+11 reading held on all {sf} square-free and all {nsf} non-square-free moduli"
        ));
    } else {
        let failed_sf = failures
            .iter()
            .filter(|f| {
                f.input
                    .split("m = ")
                    .nth(1)
                    .and_then(|s| s.parse::<u64>().ok())
                    .map_or(false, is_squarefree)
            })
            .count();
        notes.push_str(&format!(
            "24n+11 reading failed at {} indices ({} on square-free moduli) out of {sf} square-free and {nsf} non-square-free",
            failures.len(),
            failed_sf
        ));
    }
    Ok(VerificationReport::finish(
        "congruence8",
        format!("0 <= n <= {limit}, modulus 24n+11"),
        limit + 1,
        failures,
        notes,
    ))
}

// ---------------------------------------------------------------------------
// claim2

/// Trace of the solution-counting recurrence
/// u(n) = v(n-1), v(n) = 2u(n-1) + v(n-1), u(0) = 2^(t0+1), v(0) = 0,
/// iterated through n = t - t0.
#[derive(Debug, Clone, Serialize)]
pub struct Claim2Sim {
    pub t0: u32,
    pub t: u32,
    pub u: Vec<u64>,
    pub v: Vec<u64>,
    /// The printed closed form: u(t-t0) = 2^(t0+1) (mod 2^(t0+3)).
    pub literal_ok: bool,
    /// The residue the recurrence actually forces:
    /// u(0) = 2^(t0+1), u(1) = 0, and u(n) = 2^(t0+2) (mod 2^(t0+3))
    /// for every n >= 2.
    pub forced_ok: bool,
}

pub const CLAIM2_MAX_T: u32 = 30;

pub fn claim2_recurrence_sim(t0: u32, t: u32) -> Result<Claim2Sim> {
    if t0 > t || t > CLAIM2_MAX_T {
        return Err(Error::RecurrenceBounds {
            t0,
            t,
            max: CLAIM2_MAX_T,
        });
    }
    let steps = (t - t0) as usize;
    let mut u = Vec::with_capacity(steps + 1);
    let mut v = Vec::with_capacity(steps + 1);
    u.push(1u64 << (t0 + 1));
    v.push(0u64);
    for n in 1..=steps {
        u.push(v[n - 1]);
        v.push(2 * u[n - 1] + v[n - 1]);
    }
    let last = u[steps];
    let modulus = 1u64 << (t0 + 3);
    let literal_ok = last % modulus == 1u64 << (t0 + 1);
    let forced_ok = match steps {
        0 => last == 1u64 << (t0 + 1),
        1 => last == 0,
        _ => last % modulus == 1u64 << (t0 + 2),
    };
    Ok(Claim2Sim {
        t0,
        t,
        u,
        v,
        literal_ok,
        forced_ok,
    })
}

/// Verifies the recurrence over a grid of (t0, t): the forced residue must
/// hold everywhere, the totals u + v must double each step, and the fate of
/// the printed closed form is recorded in the notes.
pub fn suite_claim2() -> Result<VerificationReport> {
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let mut literal_failures = 0u64;
    let mut first_literal: Option<String> = None;
    for t0 in 0..=4u32 {
        for t in t0..=t0 + 8 {
            checked += 1;
            let sim = claim2_recurrence_sim(t0, t)?;
            let steps = (t - t0) as usize;
            if !sim.forced_ok {
                failures.push(Failure::new(
                    format!("t0 = {t0}, t = {t}"),
                    format!("u({steps}) = 2^(t0+2) (mod 2^(t0+3)) for steps >= 2"),
                    format!("u = {:?}", sim.u),
                ));
            }
            let doubling = sim
                .u
                .iter()
                .zip(&sim.v)
                .enumerate()
                .all(|(n, (&un, &vn))| un + vn == 1u64 << (t0 + 1 + n as u32));
            if !doubling {
                failures.push(Failure::new(
                    format!("t0 = {t0}, t = {t}"),
                    "u(n) + v(n) doubles each step".to_string(),
                    format!("u = {:?}, v = {:?}", sim.u, sim.v),
                ));
            }
            if !sim.literal_ok && first_literal.is_none() {
                first_literal = Some(format!(
                    "t0 = {t0}, t = {t}: u = {:?}, u({steps}) mod 2^{} = {}",
                    sim.u,
                    t0 + 3,
                    sim.u[steps] % (1u64 << (t0 + 3))
                ));
            }
            if !sim.literal_ok {
                literal_failures += 1;
            }
        }
    }
    let notes = format!(
        "the printed closed form u(t-t0) = 2^(t0+1) (mod 2^(t0+3)) fails at {literal_failures} of {checked} grid points (first: {}); the recurrence forces u(t-t0) = 2^(t0+2) (mod 2^(t0+3)) once t - t0 >= 2, consistent with R(m, 2x^2+27y^2) = 4k for odd k exactly when t0 = 0",
        first_literal.unwrap_or_else(|| "none".to_string())
    );
    Ok(VerificationReport::finish(
        "claim2",
        "t0 <= 4, t <= t0 + 8".into(),
        checked,
        failures,
        notes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms216_passes() {
        let r = suite_forms216();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.checked, 3);
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(matches!(
            run_suite("nonsense", &SuiteOptions::default()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn congruence_fault_injection_detected() {
        // A wrong modulus offset must surface counterexamples immediately.
        let failures = congruence_failures(10, 7).unwrap();
        assert!(!failures.is_empty());
    }

    #[test]
    fn congruence_small_range_passes() {
        let r = suite_congruence8(50).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.notes.contains("24n+1"));
    }

    #[test]
    fn claim2_sim_fixtures() {
        let sim = claim2_recurrence_sim(0, 0).unwrap();
        assert_eq!(sim.u, vec![2]);
        assert!(sim.literal_ok && sim.forced_ok);

        // u doubles through v: u = 2, 0, 4, 4 for t0 = 0.
        let sim = claim2_recurrence_sim(0, 3).unwrap();
        assert_eq!(sim.u, vec![2, 0, 4, 4]);
        assert_eq!(sim.v, vec![0, 4, 4, 12]);
        assert!(sim.forced_ok);
        // 4 is 4 mod 8, not 2 mod 8: the printed closed form misses.
        assert!(!sim.literal_ok);

        let sim = claim2_recurrence_sim(2, 6).unwrap();
        assert_eq!(sim.u[4] % 32, 16);
        assert!(sim.forced_ok && !sim.literal_ok);

        assert!(claim2_recurrence_sim(3, 2).is_err());
        assert!(claim2_recurrence_sim(0, 31).is_err());
    }

    #[test]
    fn claim2_suite_verdict() {
        let r = suite_claim2().unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.checked, 45);
        assert!(r.notes.contains("2^(t0+2)"));
    }

    #[test]
    fn lemma1_small_run_passes() {
        let r = suite_lemma1(5000, DEFAULT_SEED);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.checked, 5000);
    }

    #[test]
    fn lemma1_deterministic_given_seed() {
        let a = suite_lemma1(40_000, 123);
        let b = suite_lemma1(40_000, 123);
        assert_eq!(
            serde_json::to_string(&a.failures).unwrap(),
            serde_json::to_string(&b.failures).unwrap()
        );
        assert_eq!(a.range, b.range);
    }

    #[test]
    fn theorem1_small_range() {
        let r = suite_theorem1(3000);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.checked > 0);
    }

    #[test]
    fn disc216_small_range() {
        let r = suite_disc216_identity(3000);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn disc24_small_ranges() {
        let r = suite_disc24_identity(2000);
        assert!(r.passed(), "{:?}", r.failures);
        let r = suite_disc24_power(3000);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn schur_andrews_small_range() {
        let r = suite_schur_andrews(80).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }
}
