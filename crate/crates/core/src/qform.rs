//! Positive-definite integral binary quadratic forms: Gauss reduction,
//! reduced-form enumeration, class numbers, representation counting, and the
//! three Dirichlet compositions between x^2 + 6y^2 and 2x^2 + 3y^2.

use std::fmt;
use std::str::FromStr;

use crate::arith::{gcd_i64, isqrt};
use crate::error::{Error, Result};

/// The form a x^2 + b x y + c y^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// x^2 + 6y^2, the principal form of discriminant -24.
pub const F: QuadForm = QuadForm::new(1, 0, 6);
/// 2x^2 + 3y^2, the other reduced class of discriminant -24.
pub const G: QuadForm = QuadForm::new(2, 0, 3);

impl QuadForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    /// b^2 - 4ac.
    pub fn discriminant(&self) -> i64 {
        let b2 = (self.b as i128) * (self.b as i128);
        let ac4 = 4 * (self.a as i128) * (self.c as i128);
        i64::try_from(b2 - ac4).expect("discriminant overflows i64")
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.discriminant() < 0
    }

    pub fn is_primitive(&self) -> bool {
        gcd_i64(gcd_i64(self.a, self.b), self.c) == 1
    }

    /// Gauss reduction to the equivalent form with |b| <= a <= c and b >= 0
    /// whenever |b| = a or a = c. Rejects non-positive-definite input.
    pub fn reduce(&self) -> Result<QuadForm> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite {
                a: self.a,
                b: self.b,
                c: self.c,
            });
        }
        let d = self.discriminant();
        let (mut a, mut b) = (self.a, self.b);
        let mut c;
        loop {
            // Translate b into (-a, a]; c follows from the fixed discriminant.
            let mut r = b.rem_euclid(2 * a);
            if r > a {
                r -= 2 * a;
            }
            b = r;
            c = (b as i128 * b as i128 - d as i128) as i64 / (4 * a);
            if a > c {
                // Swap the outer coefficients; b flips sign.
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            break;
        }
        if b < 0 && (-b == a || a == c) {
            b = -b;
        }
        debug_assert_eq!(QuadForm::new(a, b, c).discriminant(), d);
        Ok(QuadForm::new(a, b, c))
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for QuadForm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("expected a,b,c but got `{s}`"));
        }
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad coefficient `{t}`: {e}"))
        };
        Ok(QuadForm::new(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?))
    }
}

/// One integer solution (x, y) of f(x, y) = n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RepSolution {
    pub x: i64,
    pub y: i64,
}

impl RepSolution {
    pub const fn new(x: i64, y: i64) -> Self {
        RepSolution { x, y }
    }
}

impl fmt::Display for RepSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

impl FromStr for RepSolution {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            return Err(format!("expected x,y but got `{s}`"));
        }
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad coordinate `{t}`: {e}"))
        };
        Ok(RepSolution::new(parse(parts[0])?, parse(parts[1])?))
    }
}

/// All primitive reduced positive definite forms of discriminant `d`,
/// ascending by (a, b). `d` must be negative and congruent to 0 or 1 mod 4.
pub fn reduced_forms(d: i64) -> Result<Vec<QuadForm>> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidDiscriminant(d));
    }
    let abs_d = d.unsigned_abs();
    let mut forms = Vec::new();
    let mut b = if abs_d % 2 == 0 { 0i64 } else { 1 };
    while 3 * b * b <= abs_d as i64 {
        let ac = (b * b + abs_d as i64) / 4;
        let mut a = b.max(1);
        while a * a <= ac {
            if ac % a == 0 {
                let c = ac / a;
                let form = QuadForm::new(a, b, c);
                if form.is_primitive() {
                    forms.push(form);
                    // The sign twin is reduced only away from the boundary.
                    if b > 0 && b < a && a < c {
                        forms.push(QuadForm::new(a, -b, c));
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    forms.sort_unstable_by_key(|f| (f.a, f.b));
    Ok(forms)
}

/// h(d): the number of primitive reduced forms of discriminant d.
pub fn class_number(d: i64) -> Result<u64> {
    Ok(reduced_forms(d)?.len() as u64)
}

fn solution_bounds(n: i64, f: &QuadForm) -> (i64, i64) {
    let d_abs = f.discriminant().unsigned_abs();
    let xb = isqrt(4 * f.c as u64 * n as u64 / d_abs) as i64;
    let yb = isqrt(4 * f.a as u64 * n as u64 / d_abs) as i64;
    (xb, yb)
}

/// The complete solution set of f(x, y) = n in lexicographic (x, y) order.
/// `f` must be positive definite; negative n has no solutions.
pub fn rep_solutions(n: i64, f: &QuadForm) -> Vec<RepSolution> {
    assert!(f.is_positive_definite(), "representation search needs a positive definite form");
    if n < 0 {
        return Vec::new();
    }
    // 4a f(x,y) = (2ax + by)^2 + |D| y^2 bounds |y|; symmetrically for x.
    let (xb, yb) = solution_bounds(n, f);
    let mut out = Vec::new();
    for x in -xb..=xb {
        for y in -yb..=yb {
            if f.eval(x, y) == n {
                out.push(RepSolution::new(x, y));
            }
        }
    }
    out
}

/// R(n, f): the number of representations of n by f.
pub fn rep_count(n: i64, f: &QuadForm) -> u64 {
    rep_solutions(n, f).len() as u64
}

/// Early-exit representability test, equivalent to `rep_count(n, f) > 0`.
pub fn is_represented(n: i64, f: &QuadForm) -> bool {
    assert!(f.is_positive_definite());
    if n < 0 {
        return false;
    }
    let (_, yb) = solution_bounds(n, f);
    // For each y solve a x^2 + (b y) x + (c y^2 - n) = 0 exactly.
    for y in 0..=yb {
        let disc = (f.b * y) * (f.b * y) - 4 * f.a * (f.c * y * y - n);
        if disc < 0 {
            continue;
        }
        let s = isqrt(disc as u64) as i64;
        if s * s != disc {
            continue;
        }
        for num in [-f.b * y + s, -f.b * y - s] {
            if num.rem_euclid(2 * f.a) == 0 && f.eval(num / (2 * f.a), y) == n {
                return true;
            }
        }
        // y and -y cover the two half-planes
        let y = -y;
        let num0 = -f.b * y;
        for num in [num0 + s, num0 - s] {
            if num.rem_euclid(2 * f.a) == 0 && f.eval(num / (2 * f.a), y) == n {
                return true;
            }
        }
    }
    false
}

fn div_floor(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

/// R(n, f) for every 0 <= n <= n_max in one sweep over the value lattice.
pub fn rep_count_table(f: &QuadForm, n_max: usize) -> Vec<u32> {
    assert!(f.is_positive_definite());
    let n = n_max as i64;
    let d_abs = f.discriminant().unsigned_abs() as i64;
    let mut table = vec![0u32; n_max + 1];
    let xb = isqrt((4 * f.c * n / d_abs) as u64) as i64;
    for x in -xb..=xb {
        // c y^2 + (b x) y + (a x^2 - n) <= 0
        let disc = 4 * f.c * n - d_abs * x * x;
        if disc < 0 {
            continue;
        }
        let s = isqrt(disc as u64) as i64;
        let y_lo = div_ceil(-f.b * x - s, 2 * f.c);
        let y_hi = div_floor(-f.b * x + s, 2 * f.c);
        let mut v = f.eval(x, y_lo);
        let mut y = y_lo;
        loop {
            if (0..=n).contains(&v) {
                table[v as usize] += 1;
            }
            if y == y_hi {
                break;
            }
            v += f.b * x + f.c * (2 * y + 1);
            y += 1;
        }
    }
    table
}

/// Which of the two discriminant -24 forms a composed solution lands on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    F,
    G,
}

impl FormKind {
    pub fn form(self) -> QuadForm {
        match self {
            FormKind::F => F,
            FormKind::G => G,
        }
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormKind::F => write!(f, "f"),
            FormKind::G => write!(f, "g"),
        }
    }
}

/// Which pair of forms is being composed: s0 is read under the first letter,
/// s1 under the second (f = x^2 + 6y^2, g = 2x^2 + 3y^2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComposeKind {
    FF,
    FG,
    GG,
}

impl ComposeKind {
    pub fn input_forms(self) -> (QuadForm, QuadForm) {
        match self {
            ComposeKind::FF => (F, F),
            ComposeKind::FG => (F, G),
            ComposeKind::GG => (G, G),
        }
    }
}

impl fmt::Display for ComposeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComposeKind::FF => write!(f, "ff"),
            ComposeKind::FG => write!(f, "fg"),
            ComposeKind::GG => write!(f, "gg"),
        }
    }
}

impl FromStr for ComposeKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ff" => Ok(ComposeKind::FF),
            "fg" => Ok(ComposeKind::FG),
            "gg" => Ok(ComposeKind::GG),
            other => Err(format!("expected ff, fg or gg, got `{other}`")),
        }
    }
}

/// Dirichlet composition of two solutions. Both returned solutions evaluate,
/// under the returned form, to the product of the two input values:
///
/// * ff: f(x0,y0) f(x1,y1) = f(x0 x1 -+ 6 y0 y1, x0 y1 +- y0 x1)
/// * fg: f(x0,y0) g(x1,y1) = g(x0 x1 -+ 3 y0 y1, x0 y1 +- 2 y0 x1)
/// * gg: g(x0,y0) g(x1,y1) = f(2 x0 x1 -+ 3 y0 y1, x0 y1 +- y0 x1)
pub fn dirichlet_compose(
    kind: ComposeKind,
    s0: RepSolution,
    s1: RepSolution,
) -> (FormKind, [RepSolution; 2]) {
    let (x0, y0, x1, y1) = (s0.x, s0.y, s1.x, s1.y);
    match kind {
        ComposeKind::FF => (
            FormKind::F,
            [
                RepSolution::new(x0 * x1 - 6 * y0 * y1, x0 * y1 + y0 * x1),
                RepSolution::new(x0 * x1 + 6 * y0 * y1, x0 * y1 - y0 * x1),
            ],
        ),
        ComposeKind::FG => (
            FormKind::G,
            [
                RepSolution::new(x0 * x1 - 3 * y0 * y1, x0 * y1 + 2 * y0 * x1),
                RepSolution::new(x0 * x1 + 3 * y0 * y1, x0 * y1 - 2 * y0 * x1),
            ],
        ),
        ComposeKind::GG => (
            FormKind::F,
            [
                RepSolution::new(2 * x0 * x1 - 3 * y0 * y1, x0 * y1 + y0 * x1),
                RepSolution::new(2 * x0 * x1 + 3 * y0 * y1, x0 * y1 - y0 * x1),
            ],
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_fixtures() {
        assert_eq!(QuadForm::new(5, 2, 11).discriminant(), -216);
        assert_eq!(QuadForm::new(1, 0, 6).discriminant(), -24);
        assert_eq!(QuadForm::new(1, 0, 0).discriminant(), 0);
        assert_eq!(QuadForm::new(7, 6, 9).discriminant(), -216);
    }

    #[test]
    fn reduce_fixtures() {
        assert_eq!(
            QuadForm::new(1, 0, 6).reduce().unwrap(),
            QuadForm::new(1, 0, 6)
        );
        assert_eq!(
            QuadForm::new(11, -2, 5).reduce().unwrap(),
            QuadForm::new(5, 2, 11)
        );
        let r = QuadForm::new(7, 20, 21).reduce().unwrap();
        assert_eq!(r, QuadForm::new(7, 6, 8));
        assert_eq!(r.discriminant(), -188);
        assert!(r.b.abs() <= r.a && r.a <= r.c);
        assert!(matches!(
            QuadForm::new(-1, 0, 6).reduce(),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            QuadForm::new(1, 5, 1).reduce(),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn reduce_boundary_sign() {
        // |b| = a and a = c boundaries take the positive b representative.
        assert_eq!(
            QuadForm::new(2, -2, 3).reduce().unwrap(),
            QuadForm::new(2, 2, 3)
        );
        assert_eq!(
            QuadForm::new(3, -2, 3).reduce().unwrap(),
            QuadForm::new(3, 2, 3)
        );
    }

    #[test]
    fn reduced_forms_disc_216() {
        let forms = reduced_forms(-216).unwrap();
        assert_eq!(
            forms,
            vec![
                QuadForm::new(1, 0, 54),
                QuadForm::new(2, 0, 27),
                QuadForm::new(5, -2, 11),
                QuadForm::new(5, 2, 11),
                QuadForm::new(7, -6, 9),
                QuadForm::new(7, 6, 9),
            ]
        );
    }

    #[test]
    fn reduced_forms_small_discriminants() {
        assert_eq!(
            reduced_forms(-24).unwrap(),
            vec![QuadForm::new(1, 0, 6), QuadForm::new(2, 0, 3)]
        );
        assert_eq!(reduced_forms(-3).unwrap(), vec![QuadForm::new(1, 1, 1)]);
        assert_eq!(reduced_forms(-4).unwrap(), vec![QuadForm::new(1, 0, 1)]);
        assert!(matches!(
            reduced_forms(-6),
            Err(Error::InvalidDiscriminant(-6))
        ));
        assert!(matches!(reduced_forms(5), Err(Error::InvalidDiscriminant(5))));
    }

    #[test]
    fn class_number_fixtures() {
        assert_eq!(class_number(-216).unwrap(), 6);
        assert_eq!(class_number(-24).unwrap(), 2);
        assert_eq!(class_number(-4).unwrap(), 1);
        assert_eq!(class_number(-23).unwrap(), 3);
    }

    #[test]
    fn rep_solutions_fixtures() {
        let f511 = QuadForm::new(5, 2, 11);
        assert_eq!(rep_solutions(0, &f511), vec![RepSolution::new(0, 0)]);
        assert_eq!(
            rep_solutions(11, &f511),
            vec![RepSolution::new(0, -1), RepSolution::new(0, 1)]
        );
        assert_eq!(
            rep_solutions(35, &f511),
            vec![RepSolution::new(-2, -1), RepSolution::new(2, 1)]
        );
        assert_eq!(rep_count(59, &f511), 0);
        assert_eq!(rep_count(1, &F), 2);
        // 35 = 2*4 + 27 = 2*16 + 3, so g represents it at (+-2, +-3) and (+-4, +-1)
        assert_eq!(rep_count(35, &G), 8);
        assert_eq!(rep_count(-5, &F), 0);
    }

    #[test]
    fn rep_count_table_matches_search() {
        for form in [F, G, QuadForm::new(5, 2, 11), QuadForm::new(7, -6, 9)] {
            let table = rep_count_table(&form, 400);
            for n in 0..=400i64 {
                assert_eq!(
                    table[n as usize] as u64,
                    rep_count(n, &form),
                    "form {form} at n={n}"
                );
            }
        }
    }

    #[test]
    fn is_represented_matches_count() {
        let f511 = QuadForm::new(5, 2, 11);
        for n in 0..=600i64 {
            assert_eq!(is_represented(n, &f511), rep_count(n, &f511) > 0, "n={n}");
            assert_eq!(is_represented(n, &G), rep_count(n, &G) > 0, "n={n}");
        }
    }

    #[test]
    fn compose_fixtures() {
        let (kind, out) = dirichlet_compose(
            ComposeKind::FF,
            RepSolution::new(1, 0),
            RepSolution::new(1, 0),
        );
        assert_eq!(kind, FormKind::F);
        assert_eq!(out, [RepSolution::new(1, 0), RepSolution::new(1, 0)]);

        let (kind, out) = dirichlet_compose(
            ComposeKind::GG,
            RepSolution::new(1, 1),
            RepSolution::new(1, 1),
        );
        assert_eq!(kind, FormKind::F);
        assert_eq!(out, [RepSolution::new(-1, 2), RepSolution::new(5, 0)]);
        assert_eq!(F.eval(-1, 2), 25);
        assert_eq!(F.eval(5, 0), 25);

        let (kind, out) = dirichlet_compose(
            ComposeKind::FG,
            RepSolution::new(1, 1),
            RepSolution::new(1, 1),
        );
        assert_eq!(kind, FormKind::G);
        assert_eq!(out, [RepSolution::new(-2, 3), RepSolution::new(4, -1)]);
        assert_eq!(G.eval(-2, 3), 35);
        assert_eq!(G.eval(4, -1), 35);
    }

    #[test]
    fn form_roundtrip_parse() {
        let f: QuadForm = "5,-2,11".parse().unwrap();
        assert_eq!(f, QuadForm::new(5, -2, 11));
        assert_eq!(f.to_string(), "5,-2,11");
        assert!("5,11".parse::<QuadForm>().is_err());
        let s: RepSolution = "-4,1".parse().unwrap();
        assert_eq!(s, RepSolution::new(-4, 1));
    }
}
