//! Exact coefficient ledger over a fixed nine-term basis.
//!
//! Every region area is a rational combination of
//! `πa², πb², πc², πa²u, πb²u, πc²u, ab, a³b/c², ab³/c²` with `u = θ/360°`.
//! The symbols `a, b, c, θ` are independent here; `c = |AB|` only enters when
//! an expression is evaluated. Collecting the decomposition therefore shows
//! directly which terms cancel and what remains.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::region::RegionId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisTerm {
    /// πa²
    PA,
    /// πb²
    PB,
    /// πc²
    PC,
    /// πa²·u
    UPA,
    /// πb²·u
    UPB,
    /// πc²·u
    UPC,
    /// ab
    AB,
    /// a³b/c²
    A3B,
    /// ab³/c²
    AB3,
}

impl BasisTerm {
    /// Fixed column order used for tables.
    pub const ALL: [BasisTerm; 9] = [
        BasisTerm::PA,
        BasisTerm::PB,
        BasisTerm::PC,
        BasisTerm::UPA,
        BasisTerm::UPB,
        BasisTerm::UPC,
        BasisTerm::AB,
        BasisTerm::A3B,
        BasisTerm::AB3,
    ];

    pub const THETA_TERMS: [BasisTerm; 3] = [BasisTerm::UPA, BasisTerm::UPB, BasisTerm::UPC];

    pub fn name(self) -> &'static str {
        match self {
            BasisTerm::PA => "PA",
            BasisTerm::PB => "PB",
            BasisTerm::PC => "PC",
            BasisTerm::UPA => "UPA",
            BasisTerm::UPB => "UPB",
            BasisTerm::UPC => "UPC",
            BasisTerm::AB => "AB",
            BasisTerm::A3B => "A3B",
            BasisTerm::AB3 => "AB3",
        }
    }

    fn value(self, a: f64, b: f64, c: f64, u: f64) -> f64 {
        match self {
            BasisTerm::PA => PI * a * a,
            BasisTerm::PB => PI * b * b,
            BasisTerm::PC => PI * c * c,
            BasisTerm::UPA => PI * a * a * u,
            BasisTerm::UPB => PI * b * b * u,
            BasisTerm::UPC => PI * c * c * u,
            BasisTerm::AB => a * b,
            BasisTerm::A3B => a * a * a * b / (c * c),
            BasisTerm::AB3 => a * b * b * b / (c * c),
        }
    }
}

impl fmt::Display for BasisTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rational from a small numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational combination of basis terms. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicArea {
    coeffs: BTreeMap<BasisTerm, BigRational>,
}

impl SymbolicArea {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BasisTerm, BigRational)>,
    {
        let mut out = Self::zero();
        for (term, k) in terms {
            out.add_term(term, k);
        }
        out
    }

    pub fn add_term(&mut self, term: BasisTerm, k: BigRational) {
        let entry = self.coeffs.entry(term).or_insert_with(BigRational::zero);
        *entry += k;
        if entry.is_zero() {
            self.coeffs.remove(&term);
        }
    }

    pub fn coeff(&self, term: BasisTerm) -> BigRational {
        self.coeffs.get(&term).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (BasisTerm, &BigRational)> {
        self.coeffs.iter().map(|(t, k)| (*t, k))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_terms(self.terms().map(|(t, v)| (t, v * k)))
    }
}

impl Add for &SymbolicArea {
    type Output = SymbolicArea;
    fn add(self, rhs: &SymbolicArea) -> SymbolicArea {
        let mut out = self.clone();
        for (t, k) in rhs.terms() {
            out.add_term(t, k.clone());
        }
        out
    }
}

impl Sub for &SymbolicArea {
    type Output = SymbolicArea;
    fn sub(self, rhs: &SymbolicArea) -> SymbolicArea {
        self + &(-rhs)
    }
}

impl Neg for &SymbolicArea {
    type Output = SymbolicArea;
    fn neg(self) -> SymbolicArea {
        SymbolicArea::from_terms(self.terms().map(|(t, k)| (t, -k)))
    }
}

impl fmt::Display for SymbolicArea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("{}");
        }
        f.write_str("{")?;
        for (i, (t, k)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}: {k}")?;
        }
        f.write_str("}")
    }
}

/// Coefficients of one region in the basis.
pub fn region_symbolic(id: RegionId) -> SymbolicArea {
    use BasisTerm::*;
    let terms: Vec<(BasisTerm, BigRational)> = match id {
        // (πc²/4)(180 - 2θ)/360 - ab/4 = πc²/8 - πc²u/2 - ab/4
        RegionId::RA => vec![(PC, ratio(1, 8)), (UPC, ratio(-1, 2)), (AB, ratio(-1, 4))],
        // (πc²/4)(2θ/360) - ab/4
        RegionId::RB => vec![(UPC, ratio(1, 2)), (AB, ratio(-1, 4))],
        RegionId::RC => vec![(PB, ratio(1, 8)), (UPB, ratio(-1, 2)), (AB3, ratio(-1, 4))],
        RegionId::RD => vec![(UPB, ratio(1, 2)), (AB3, ratio(-1, 4))],
        RegionId::RE => vec![(PA, ratio(1, 8)), (UPA, ratio(-1, 2)), (A3B, ratio(-1, 4))],
        RegionId::RF => vec![(UPA, ratio(1, 2)), (A3B, ratio(-1, 4))],
        RegionId::SA => vec![(PA, ratio(1, 8))],
        RegionId::SB => vec![(PB, ratio(1, 8))],
        RegionId::SC => vec![(PC, ratio(1, 8))],
        RegionId::TRI_ABC => vec![(AB, ratio(1, 2))],
        RegionId::TRI_AGC => vec![(AB3, ratio(1, 2))],
        RegionId::TRI_CGB => vec![(A3B, ratio(1, 2))],
    };
    SymbolicArea::from_terms(terms)
}

/// Signs of the decomposition `SA + SB + RA + RB - RC - RD - RE - RF`.
pub const DECOMPOSITION: [(RegionId, i8); 8] = [
    (RegionId::SA, 1),
    (RegionId::SB, 1),
    (RegionId::RA, 1),
    (RegionId::RB, 1),
    (RegionId::RC, -1),
    (RegionId::RD, -1),
    (RegionId::RE, -1),
    (RegionId::RF, -1),
];

/// The decomposition collected by exact coefficient addition.
pub fn decomposition_ledger() -> SymbolicArea {
    DECOMPOSITION
        .iter()
        .fold(SymbolicArea::zero(), |acc, &(id, sign)| {
            let term = region_symbolic(id);
            if sign > 0 {
                &acc + &term
            } else {
                &acc - &term
            }
        })
}

/// Expected collected form: `πc²/8 - ab/2 + a³b/(2c²) + ab³/(2c²)`.
pub fn boxed_ledger() -> SymbolicArea {
    use BasisTerm::*;
    SymbolicArea::from_terms([
        (PC, ratio(1, 8)),
        (AB, ratio(-1, 2)),
        (A3B, ratio(1, 2)),
        (AB3, ratio(1, 2)),
    ])
}

/// Substitutes numeric values into `expr`. Coefficients become `f64` only here.
pub fn evaluate(expr: &SymbolicArea, a: f64, b: f64, c: f64, theta_deg: f64) -> Result<f64> {
    check_lengths(a, b, c)?;
    if !(theta_deg > 0.0 && theta_deg < 90.0) {
        return domain(format!("theta must lie in (0, 90) degrees (got {theta_deg})"));
    }
    let u = theta_deg / 360.0;
    Ok(expr
        .terms()
        .map(|(t, k)| k.to_f64().unwrap_or(f64::NAN) * t.value(a, b, c, u))
        .sum())
}

fn check_lengths(a: f64, b: f64, c: f64) -> Result<()> {
    if [a, b, c].iter().all(|v| v.is_finite() && *v > 0.0) {
        Ok(())
    } else {
        domain(format!("lengths must be positive and finite (got a={a}, b={b}, c={c})"))
    }
}

/// `evaluate(decomposition_ledger) - πc²/8`, with the `πc²/8` removed exactly
/// in the ledger before evaluation. Zero iff `a² + b² = c²`.
pub fn pythagoras_residual(a: f64, b: f64, c: f64) -> Result<f64> {
    check_lengths(a, b, c)?;
    let residual = &decomposition_ledger() - &region_symbolic(RegionId::SC);
    // No θ-terms survive, so any admissible angle gives the same value.
    evaluate(&residual, a, b, c, 45.0)
}

/// Root in `c` of [`pythagoras_residual`] by bisection on `[max(a,b), a+b]`.
pub fn pythagoras_root(a: f64, b: f64) -> Result<f64> {
    check_lengths(a, b, 1.0)?;
    let (mut lo, mut hi) = (a.max(b), a + b);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pythagoras_residual(a, b, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Monomial `a^i b^j c^k`.
type Monomial = (u32, u32, u32);

/// Polynomial in `a, b, c` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn monomial(k: BigRational, exps: Monomial) -> Self {
        let mut p = Self::default();
        p.add_monomial(exps, k);
        p
    }

    pub fn var_a() -> Self {
        Self::monomial(BigRational::one(), (1, 0, 0))
    }

    pub fn var_b() -> Self {
        Self::monomial(BigRational::one(), (0, 1, 0))
    }

    pub fn var_c() -> Self {
        Self::monomial(BigRational::one(), (0, 0, 1))
    }

    fn add_monomial(&mut self, exps: Monomial, k: BigRational) {
        let entry = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *entry += k;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::monomial(BigRational::one(), (0, 0, 0)), |acc, _| &acc * self)
    }

    /// Exact value at integer arguments.
    pub fn eval_int(&self, a: i64, b: i64, c: i64) -> BigRational {
        let pow = |x: i64, e: u32| BigRational::from_integer(BigInt::from(x).pow(e));
        self.terms
            .iter()
            .map(|(&(i, j, k), coef)| coef * pow(a, i) * pow(b, j) * pow(c, k))
            .fold(BigRational::zero(), |acc, v| acc + v)
    }

    pub fn eval_f64(&self, a: f64, b: f64, c: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j, k), coef)| {
                coef.to_f64().unwrap_or(f64::NAN)
                    * a.powi(i as i32)
                    * b.powi(j as i32)
                    * c.powi(k as i32)
            })
            .sum()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, k) in &rhs.terms {
            out.add_monomial(*e, k.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, k) in &rhs.terms {
            out.add_monomial(*e, -k.clone());
        }
        out
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (&(i1, j1, k1), c1) in &self.terms {
            for (&(i2, j2, k2), c2) in &rhs.terms {
                out.add_monomial((i1 + i2, j1 + j2, k1 + k2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&(i, j, k), coef)) in self.terms.iter().rev().enumerate() {
            let sign = if coef.is_negative() { "-" } else if n > 0 { "+" } else { "" };
            if n > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if n > 0 {
                f.write_str(" ")?;
            }
            let mag = coef.abs();
            let mut parts = Vec::new();
            if !mag.is_one() || (i, j, k) == (0, 0, 0) {
                parts.push(mag.to_string());
            }
            for (sym, e) in [("a", i), ("b", j), ("c", k)] {
                match e {
                    0 => {}
                    1 => parts.push(sym.to_string()),
                    _ => parts.push(format!("{sym}^{e}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// The non-π part of the collected ledger, cleared of the `c²` denominator:
/// `2c² · (AB·ab + A3B·a³b/c² + AB3·ab³/c²)`.
pub fn ledger_residual_numerator() -> Option<Polynomial> {
    let ledger = decomposition_ledger();
    if ledger.terms().any(|(t, _)| {
        !matches!(t, BasisTerm::AB | BasisTerm::A3B | BasisTerm::AB3 | BasisTerm::PC)
    }) {
        return None;
    }
    let (a, b, c) = (Polynomial::var_a(), Polynomial::var_b(), Polynomial::var_c());
    let two_c2 = &Polynomial::monomial(ratio(2, 1), (0, 0, 0)) * &c.pow(2);
    let ab = &a * &b;
    let coef = |t| Polynomial::monomial(ledger.coeff(t), (0, 0, 0));
    let ab_part = &(&coef(BasisTerm::AB) * &ab) * &two_c2;
    let a3b_part = &(&coef(BasisTerm::A3B) * &ratio_poly(2)) * &(&a.pow(3) * &b);
    let ab3_part = &(&coef(BasisTerm::AB3) * &ratio_poly(2)) * &(&a * &b.pow(3));
    Some(&(&ab_part + &a3b_part) + &ab3_part)
}

fn ratio_poly(k: i64) -> Polynomial {
    Polynomial::monomial(ratio(k, 1), (0, 0, 0))
}

/// Checks `a³b + ab³ - abc² = ab(a² + b² - c²)` by exact expansion, and that
/// the ledger's non-π remainder, cleared of `c²`, is that same polynomial.
pub fn residual_polynomial_identity() -> bool {
    let (a, b, c) = (Polynomial::var_a(), Polynomial::var_b(), Polynomial::var_c());
    let ab = &a * &b;
    let lhs = &(&(&a.pow(3) * &b) + &(&a * &b.pow(3))) - &(&ab * &c.pow(2));
    let rhs = &ab * &(&(&a.pow(2) + &b.pow(2)) - &c.pow(2));
    let factored = (&lhs - &rhs).is_zero();
    let from_ledger = ledger_residual_numerator().is_some_and(|p| (&p - &lhs).is_zero());
    factored && from_ledger
}

/// Ledger table rows: each region followed by the collected decomposition.
pub fn ledger_table() -> Vec<(String, SymbolicArea)> {
    let mut rows: Vec<(String, SymbolicArea)> = RegionId::ALL
        .into_iter()
        .map(|id| (id.name().to_string(), region_symbolic(id)))
        .collect();
    rows.push(("LEDGER".to_string(), decomposition_ledger()));
    rows
}
