use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::Integer;

use crate::error::{KnotError, Result};

/// Which variable the exponents refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    /// Kauffman bracket variable A.
    A,
    /// Jones variable; exponent k means t^(k/2).
    HalfT,
}

/// Sparse Laurent polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    var: Variable,
    terms: BTreeMap<i64, Integer>,
}

impl LaurentPolynomial {
    pub fn zero(var: Variable) -> Self {
        LaurentPolynomial { var, terms: BTreeMap::new() }
    }

    pub fn one(var: Variable) -> Self {
        Self::monomial(var, 1, 0)
    }

    pub fn monomial(var: Variable, coeff: impl Into<Integer>, exp: i64) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds from (exponent, coefficient) pairs; repeated exponents are summed.
    pub fn from_terms(var: Variable, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, Integer::from(c));
        }
        p
    }

    pub fn variable(&self) -> Variable {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Integer)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> Integer {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: Integer) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by the monomial `coeff · x^shift`.
    pub fn scaled(&self, coeff: i64, shift: i64) -> Self {
        let terms = if coeff == 0 {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(&e, c)| (e + shift, Integer::from(c * coeff))).collect()
        };
        LaurentPolynomial { var: self.var, terms }
    }

    /// Substitutes x ↦ x^(-1).
    pub fn inverted(&self) -> Self {
        let terms = self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect();
        LaurentPolynomial { var: self.var, terms }
    }

    /// Re-tags the variable and maps each exponent e to e·num/den, which must be integral.
    pub(crate) fn substituted(&self, var: Variable, num: i64, den: i64) -> Result<Self> {
        let mut out = Self::zero(var);
        for (&e, c) in &self.terms {
            if (e * num) % den != 0 {
                return Err(KnotError::Domain(format!("exponent {e} not divisible under substitution")));
            }
            out.add_term(e * num / den, c.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient; errors when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (dlo, dhi) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(KnotError::Domain("division by zero polynomial".into())),
        };
        let lead = divisor.terms[&dhi].clone();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.var);
        while let Some(top) = rem.max_exp() {
            let c = rem.terms[&top].clone();
            if top - dhi < rem.min_exp().unwrap() - dlo || !c.is_divisible(&lead) {
                return Err(KnotError::Domain("polynomial division is not exact".into()));
            }
            let q = c / &lead;
            let shift = top - dhi;
            for (&e, dc) in &divisor.terms {
                rem.add_term(e + shift, -Integer::from(dc * &q));
            }
            quot.add_term(shift, q);
        }
        Ok(quot)
    }

    /// Σ |coefficients|.
    pub fn abs_coeff_sum(&self) -> Integer {
        self.terms.values().map(|c| c.clone().abs()).sum()
    }

    /// Value at x = i (the imaginary unit), as (real, imaginary).
    pub fn eval_at_i(&self) -> (Integer, Integer) {
        let mut re = Integer::new();
        let mut im = Integer::new();
        for (&e, c) in &self.terms {
            match e.rem_euclid(4) {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                _ => im -= c,
            }
        }
        (re, im)
    }

    /// Exact value at x = `at` (nonzero when negative exponents occur).
    pub fn eval_integer(&self, at: i64) -> rug::Rational {
        let mut acc = rug::Rational::new();
        for (&e, c) in &self.terms {
            let base = rug::Rational::from(at);
            let power = if e >= 0 {
                base.pow(e as u32)
            } else {
                base.recip().pow((-e) as u32)
            };
            acc += power * c;
        }
        acc
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        let terms = self.terms.iter().map(|(&e, c)| (e, Integer::from(-c))).collect();
        LaurentPolynomial { var: self.var, terms }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.var);
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, Integer::from(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Terms in increasing degree: `c*A^k`, or `c*t^(k/2)` for the Jones variable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match self.var {
                Variable::A => format!("{c}*A^{e}"),
                Variable::HalfT => format!("{c}*t^({e}/2)"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
