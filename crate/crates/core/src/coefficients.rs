//! Exact scalar domains: the base field (rationals or a prime field) and the
//! commutative multivariate polynomial ring over it used for symbolic
//! computations.
//!
//! Coefficient domains plug into the reduction machinery through the
//! [`Coefficient`] trait: 0, 1, ring arithmetic, exact equality, and an
//! optional inverse. The polynomial domain deliberately has no inverse beyond
//! nonzero constants — symbolic reduction never divides because symbolic
//! generators are kept monic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Shared behavior of the scalar domains the reduction engine works over.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    /// Multiplicative inverse, when this value has one in its domain.
    fn inv(&self) -> Option<Self>;
    /// The 1 of the same domain as `self` (carrying modulus or variable
    /// table along).
    fn one_like(&self) -> Self;
}

/// A scalar in the base field: an exact rational or a prime-field residue.
///
/// Arithmetic between residues of different moduli, or between a rational
/// and a residue, is a logic error and panics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldValue {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

impl FieldValue {
    pub fn zero_rational() -> FieldValue {
        FieldValue::Rational(BigRational::zero())
    }

    pub fn one_rational() -> FieldValue {
        FieldValue::Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> FieldValue {
        FieldValue::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` in lowest terms; `den` must be nonzero.
    pub fn rational(num: i64, den: i64) -> FieldValue {
        assert!(den != 0, "zero denominator");
        FieldValue::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The residue of `n` modulo the prime `p`.
    pub fn prime(n: i64, p: u64) -> FieldValue {
        assert!(p >= 2, "modulus must be at least 2");
        FieldValue::Prime {
            residue: n.rem_euclid(p as i64) as u64,
            modulus: p,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldValue::Rational(r) => Some(r),
            FieldValue::Prime { .. } => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            FieldValue::Rational(r) => r.is_negative(),
            FieldValue::Prime { .. } => false,
        }
    }

    fn binop(
        &self,
        other: &FieldValue,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        res: impl Fn(u64, u64, u64) -> u64,
    ) -> FieldValue {
        match (self, other) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(rat(a, b)),
            (
                FieldValue::Prime {
                    residue: a,
                    modulus: p,
                },
                FieldValue::Prime {
                    residue: b,
                    modulus: q,
                },
            ) => {
                assert_eq!(p, q, "mixed prime-field moduli");
                FieldValue::Prime {
                    residue: res(*a, *b, *p),
                    modulus: *p,
                }
            }
            _ => panic!("mixed coefficient domains"),
        }
    }
}

fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

impl Coefficient for FieldValue {
    fn add(&self, other: &Self) -> Self {
        self.binop(
            other,
            |a, b| a + b,
            |a, b, p| ((a as u128 + b as u128) % p as u128) as u64,
        )
    }

    fn sub(&self, other: &Self) -> Self {
        self.binop(
            other,
            |a, b| a - b,
            |a, b, p| ((a as u128 + p as u128 - b as u128) % p as u128) as u64,
        )
    }

    fn mul(&self, other: &Self) -> Self {
        self.binop(
            other,
            |a, b| a * b,
            |a, b, p| ((a as u128 * b as u128) % p as u128) as u64,
        )
    }

    fn neg(&self) -> Self {
        match self {
            FieldValue::Rational(r) => FieldValue::Rational(-r),
            FieldValue::Prime { residue, modulus } => FieldValue::Prime {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            FieldValue::Rational(r) => r.is_zero(),
            FieldValue::Prime { residue, .. } => *residue == 0,
        }
    }

    fn is_one(&self) -> bool {
        match self {
            FieldValue::Rational(r) => r.is_one(),
            FieldValue::Prime { residue, .. } => *residue == 1,
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldValue::Rational(r) => FieldValue::Rational(r.recip()),
            // Fermat: residue^(p-2) mod p
            FieldValue::Prime { residue, modulus } => FieldValue::Prime {
                residue: mod_pow(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    fn one_like(&self) -> Self {
        match self {
            FieldValue::Rational(_) => FieldValue::one_rational(),
            FieldValue::Prime { modulus, .. } => FieldValue::Prime {
                residue: 1,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldValue::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

/// An ordered table of variable names shared by the polynomials built over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    pub fn new<I: IntoIterator<Item = String>>(names: I) -> Arc<VarTable> {
        Arc::new(VarTable {
            names: names.into_iter().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

type Exponents = Vec<u16>;

fn graded_lex(a: &[u16], b: &[u16]) -> std::cmp::Ordering {
    let ta: u32 = a.iter().map(|&e| e as u32).sum();
    let tb: u32 = b.iter().map(|&e| e as u32).sum();
    ta.cmp(&tb).then_with(|| a.cmp(b))
}

/// A sparse multivariate polynomial with [`FieldValue`] coefficients over a
/// shared variable table. No zero coefficients are stored; the zero
/// polynomial has no terms.
#[derive(Debug, Clone)]
pub struct Polynomial {
    vars: Arc<VarTable>,
    terms: BTreeMap<Exponents, FieldValue>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Polynomial {
    pub fn zero(vars: &Arc<VarTable>) -> Polynomial {
        Polynomial {
            vars: Arc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarTable>, c: FieldValue) -> Polynomial {
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Arc<VarTable>) -> Polynomial {
        Polynomial::constant(vars, FieldValue::one_rational())
    }

    /// The variable with index `i`.
    pub fn var(vars: &Arc<VarTable>, i: usize) -> Polynomial {
        assert!(i < vars.len());
        let mut exps = vec![0u16; vars.len()];
        exps[i] = 1;
        let mut p = Polynomial::zero(vars);
        p.terms.insert(exps, FieldValue::one_rational());
        p
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, exps: Exponents, c: FieldValue) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(exps, sum);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn check_same_vars(&self, other: &Polynomial) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable tables"
        );
    }

    pub fn scaled(&self, c: &FieldValue) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        let mut out = Polynomial::zero(&self.vars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.mul(c));
        }
        out
    }

    /// Substitute a constant for the given variable.
    pub fn substitute(&self, var: usize, value: &FieldValue) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (e, a) in &self.terms {
            let k = e[var];
            let mut exps = e.clone();
            exps[var] = 0;
            let mut c = a.clone();
            for _ in 0..k {
                c = c.mul(value);
            }
            out.add_term(exps, c);
        }
        out
    }

    /// Rebuild over a smaller table keeping only the listed variables, which
    /// must be the only ones occurring.
    pub fn project(&self, kept: &[usize], new_vars: &Arc<VarTable>) -> Polynomial {
        assert_eq!(kept.len(), new_vars.len());
        let mut out = Polynomial::zero(new_vars);
        for (e, a) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                assert!(
                    x == 0 || kept.contains(&i),
                    "projection drops a live variable"
                );
            }
            let exps: Exponents = kept.iter().map(|&i| e[i]).collect();
            out.add_term(exps, a.clone());
        }
        out
    }

    /// Exact evaluation at a full assignment, variable index -> value.
    pub fn evaluate(&self, point: &[FieldValue]) -> Result<FieldValue> {
        if point.len() != self.vars.len() {
            return Err(Error::MissingAssignment(format!(
                "expected {} values, got {}",
                self.vars.len(),
                point.len()
            )));
        }
        let mut acc: Option<FieldValue> = None;
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&point[i]);
                }
            }
            acc = Some(match acc {
                Some(a) => a.add(&term),
                None => term,
            });
        }
        Ok(acc.unwrap_or_else(FieldValue::zero_rational))
    }

    /// Terms sorted descending by graded lex on exponent vectors.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &FieldValue)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| graded_lex(b, a));
        terms
    }

    /// The coefficient of the graded-lex leading term.
    pub fn leading_coefficient(&self) -> Option<&FieldValue> {
        self.sorted_terms().first().map(|(_, c)| *c)
    }

    /// Flip the overall sign when the leading coefficient is a negative
    /// rational, so `f` and `-f` print identically.
    pub fn sign_normalized(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if c.is_negative() => self.negated(),
            _ => self.clone(),
        }
    }

    fn negated(&self) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (e, a) in &self.terms {
            out.terms.insert(e.clone(), a.neg());
        }
        out
    }

    /// Canonical text: terms in descending graded lex, `^` powers, `*`
    /// between factors. The zero polynomial prints as `0`.
    pub fn canonical_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (exps, coeff)) in self.sorted_terms().into_iter().enumerate() {
            let neg = coeff.is_negative();
            let mag = if neg { coeff.neg() } else { coeff.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !mag.is_one() || exps.iter().all(|&e| e == 0) {
                factors.push(format!("{mag}"));
            }
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl Coefficient for Polynomial {
    fn add(&self, other: &Self) -> Self {
        self.check_same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        self.check_same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        self.check_same_vars(other);
        let mut out = Polynomial::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Exponents = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                out.add_term(exps, ca.mul(cb));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        self.negated()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
                .unwrap_or(false)
    }

    fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if e.iter().any(|&x| x != 0) {
            return None;
        }
        c.inv().map(|ci| Polynomial::constant(&self.vars, ci))
    }

    fn one_like(&self) -> Self {
        Polynomial::one(&self.vars)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_text())
    }
}
