//! Exact multivariate polynomials over the rationals.
//!
//! A [`Poly`] stores its terms in a sorted map keyed by [`Monomial`], ordered
//! graded-lexicographically. The order only matters for printing and equality;
//! none of the algebra downstream depends on it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Exponent vector `(a_1, ..., a_n)` of `x_1^a_1 ... x_n^a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&a, &w)| a as u64 * w as u64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// True when `other` divides `self`.
    pub fn is_divisible_by(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// All monomials in `nvars` variables of total degree exactly `d`, in
    /// descending lexicographic order (`x^d` first).
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for a in (0..=left).rev() {
                cur[i] = a;
                rec(i + 1, left - a, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// All monomials of weighted degree exactly `d` under `weights`.
    pub fn all_of_weighted_degree(weights: &[u32], d: u64) -> Vec<Monomial> {
        let n = weights.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u64, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == w.len() {
                if left == 0 {
                    out.push(Monomial(cur.clone()));
                }
                return;
            }
            let wi = w[i] as u64;
            for a in (0..=left / wi).rev() {
                cur[i] = a as u32;
                rec(i + 1, left - a * wi, w, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, d, weights, &mut cur, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Positive integer weights `(w_1, ..., w_n)` together with an isobaric degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    weights: Vec<u32>,
    degree: u32,
}

impl WeightSystem {
    pub fn new(weights: Vec<u32>, degree: u32) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights given".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        if degree == 0 {
            return Err(Error::InvalidWeights("degree must be positive".into()));
        }
        Ok(WeightSystem { weights, degree })
    }

    pub fn unit(nvars: usize, degree: u32) -> Result<Self> {
        WeightSystem::new(vec![1; nvars], degree)
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn is_unit(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn max_weight(&self) -> u32 {
        *self.weights.iter().max().unwrap()
    }

    /// Weighted degree `n d - 2 sum w_j` of the Hessian, i.e. the socle degree
    /// of the Milnor algebra of a regular form of this type.
    pub fn socle_degree(&self) -> i64 {
        let n = self.weights.len() as i64;
        n * self.degree as i64 - 2 * self.weights.iter().map(|&w| w as i64).sum::<i64>()
    }
}

/// Polynomial in `nvars` variables with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Poly::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly::term(m, Rational::one())
    }

    /// Collects `(monomial, coefficient)` pairs, summing repeats and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Lowest total degree of a term (the order of `self` at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Highest total degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Minimum and maximum weighted degree over the terms; `None` for zero.
    pub fn degree_range(&self, weights: &[u32]) -> Result<Option<(u64, u64)>> {
        self.check_nvars(weights.len())?;
        let mut it = self.terms.keys().map(|m| m.weighted_degree(weights));
        Ok(it.next().map(|first| {
            it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d)))
        }))
    }

    /// Weighted degree range under `w`, or under unit weights when `w` is `None`.
    pub fn weighted_degree(&self, w: Option<&WeightSystem>) -> Result<Option<(u64, u64)>> {
        match w {
            Some(w) => self.degree_range(w.weights()),
            None => self.degree_range(&vec![1; self.nvars]),
        }
    }

    /// `Some(m)` if every term has total degree `m`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match (self.order(), self.degree()) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn is_quasihomogeneous(&self, w: &WeightSystem) -> bool {
        matches!(self.degree_range(w.weights()),
            Ok(Some((lo, hi))) if lo == hi && hi == w.degree() as u64)
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        self.filter(|m| m.degree() == d)
    }

    /// The `k`-jet: every term of total degree greater than `k` is dropped.
    pub fn truncate(&self, k: u32) -> Poly {
        self.filter(|m| m.degree() <= k)
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_nvars(&self, n: usize) -> Result<()> {
        if n != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: n,
            });
        }
        Ok(())
    }

    /// Formal partial derivative with respect to the variable at `i` (0-based).
    pub fn partial_derivative(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let a = m.0[i];
            if a == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.terms.insert(Monomial(e), c * BigInt::from(a));
        }
        Ok(out)
    }

    /// All first partials, in variable order.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// `d p - sum_i w_i x_i dp/dx_i`; zero iff `p` is quasihomogeneous of type `w`.
    pub fn euler_defect(&self, w: &WeightSystem) -> Result<Poly> {
        self.check_nvars(w.nvars())?;
        // x_i d/dx_i acts on a monomial by multiplying with its exponent a_i.
        let d = w.degree() as u64;
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let factor = BigInt::from(d) - BigInt::from(m.weighted_degree(w.weights()));
            out.add_term(m.clone(), c * factor);
        }
        Ok(out)
    }

    /// `sum_i w_i x_i dp/dx_i` (the Euler vector field applied to `p`).
    pub fn euler_field(&self, weights: &[u32]) -> Result<Poly> {
        self.check_nvars(weights.len())?;
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * BigInt::from(m.weighted_degree(weights)));
        }
        Ok(out)
    }

    /// Determinant of the matrix of second partials, expanded as a polynomial.
    pub fn hessian_det(&self) -> Poly {
        let n = self.nvars;
        let grad = self.gradient();
        let h: Vec<Vec<Poly>> = grad.iter().map(|g| g.gradient()).collect();
        // minors[mask]: determinant of rows (n - |mask|)..n against the columns in mask
        let mut minors: Vec<Option<Poly>> = vec![None; 1 << n];
        minors[0] = Some(Poly::constant(n, Rational::one()));
        let mut masks: Vec<usize> = (1..(1usize << n)).collect();
        masks.sort_by_key(|m| m.count_ones());
        for mask in masks {
            let row = n - mask.count_ones() as usize;
            let mut acc = Poly::zero(n);
            let mut below = 0;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let entry = &h[row][j];
                if !entry.is_zero() {
                    let minor = minors[mask & !(1 << j)].as_ref().unwrap();
                    let term = entry * minor;
                    acc = if below % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                below += 1;
            }
            minors[mask] = Some(acc);
        }
        minors[(1 << n) - 1].take().unwrap()
    }

    /// Scales to primitive integer coefficients with a positive leading
    /// (graded-lex largest) coefficient. Zero stays zero.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let gcd = self
            .terms
            .values()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .fold(BigInt::zero(), |acc, v| acc.gcd(&v));
        let mut factor = Rational::new(lcm, gcd);
        if self.terms.values().next_back().unwrap().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// `p(x_{perm[0]}, ...)`: variable `i` is renamed to `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<Poly> {
        self.check_nvars(perm.len())?;
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.nvars];
            for (i, &a) in m.0.iter().enumerate() {
                e[perm[i]] = a;
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Substitutes `x_i -> sum_j a[i][j] x_j`.
    pub fn linear_substitution(&self, a: &[Vec<Rational>]) -> Result<Poly> {
        self.check_nvars(a.len())?;
        let n = self.nvars;
        let images: Vec<Poly> = a
            .iter()
            .map(|row| {
                Poly::from_terms(
                    n,
                    row.iter()
                        .enumerate()
                        .map(|(j, c)| (Monomial::var(n, j), c.clone())),
                )
            })
            .collect::<Result<_>>()?;
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Formats with the given variable names.
    pub fn to_string_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        vars[i].clone()
                    } else {
                        format!("{}^{}", vars[i], a)
                    }
                })
                .collect();
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

/// Default variable names: `x, y, z, w` for up to four variables, else `x1..xn`.
pub fn default_vars(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_vars(self.nvars)))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// `sum_i c_i x_i^m` style helper used by tests and the sharpness module.
pub fn power_sum(nvars: usize, m: u32) -> Poly {
    let mut p = Poly::zero(nvars);
    for i in 0..nvars {
        let mut e = vec![0; nvars];
        e[i] = m;
        p.add_term(Monomial(e), Rational::one());
    }
    p
}
