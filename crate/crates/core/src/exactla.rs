//! Exact rational linear algebra.
//!
//! Everything is built on [`ColumnSpan`], an incremental fraction-free column
//! echelon. Columns are cleared of denominators, reduced against the basis in
//! insertion order, and made primitive after every elimination step. A new
//! basis vector pivots on its entry of smallest magnitude.
//!
//! Each basis vector keeps a short recipe expressing it through the inserted
//! columns. That makes witnesses and kernel vectors a back-substitution over
//! recipes rather than a second elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Rational;

/// Sparse integer vector, sorted by index, no zero entries.
type IntVec = Vec<(usize, BigInt)>;

/// Sparse rational vector, sorted by index, no zero entries.
pub type SparseVec = Vec<(usize, Rational)>;

/// Matrix over the rationals stored column by column, nonzeros only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Columns may be unsorted and contain zeros or repeated rows (summed).
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        let columns = columns.into_iter().map(normalize_sparse).collect::<Vec<_>>();
        for c in &columns {
            if let Some((i, _)) = c.last() {
                assert!(*i < rows, "row index {i} out of range for {rows} rows");
            }
        }
        RatMatrix { rows, columns }
    }

    pub fn from_dense(entries: &[Vec<Rational>]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        let mut columns = vec![Vec::new(); cols];
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    columns[j].push((i, v.clone()));
                }
            }
        }
        RatMatrix { rows, columns }
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix {
            rows: n,
            columns: (0..n).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        let c = &self.columns[j];
        match c.binary_search_by_key(&i, |e| e.0) {
            Ok(pos) => c[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols()]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                cols[*i].push((j, v.clone()));
            }
        }
        RatMatrix {
            rows: self.cols(),
            columns: cols,
        }
    }

    /// Dense matrix-vector product `self * x`.
    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols());
        let mut out = vec![Rational::zero(); self.rows];
        for (c, xj) in self.columns.iter().zip(x) {
            if xj.is_zero() {
                continue;
            }
            for (i, v) in c {
                out[*i] += v * xj;
            }
        }
        out
    }

    /// Column span as a reusable echelon basis.
    pub fn span(&self) -> ColumnSpan {
        let mut span = ColumnSpan::new(self.rows);
        for c in &self.columns {
            span.push(c);
        }
        span
    }

    /// Exact rank over the rationals.
    ///
    /// A modular rank is a lower bound for the rational rank, so when it is
    /// already maximal it is returned without running exact elimination.
    pub fn rank(&self) -> usize {
        let full = self.rows.min(self.cols());
        if full == 0 {
            return 0;
        }
        if let Some(r) = self.rank_mod_p(MOD_PRIMES[0]) {
            if r == full {
                return r;
            }
        }
        self.exact_rank()
    }

    /// Rank computed only by exact elimination.
    pub fn exact_rank(&self) -> usize {
        let mut span = ColumnSpan::new(self.rows);
        for c in &self.columns {
            span.push_untracked(c);
        }
        span.dim()
    }

    /// Rank of the column-wise denominator-cleared matrix modulo `p`; `None`
    /// when `p` divides a denominator.
    pub fn rank_mod_p(&self, p: u64) -> Option<usize> {
        let mut basis: Vec<(usize, Vec<(usize, u64)>)> = Vec::new();
        for c in &self.columns {
            let lcm = c.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            let pb = BigInt::from(p);
            if (&lcm % &pb).is_zero() {
                return None;
            }
            let mut v: Vec<(usize, u64)> = c
                .iter()
                .filter_map(|(i, r)| {
                    let x = (r.numer() * (&lcm / r.denom())).mod_floor(&pb);
                    let x = x.to_u64().unwrap();
                    (x != 0).then_some((*i, x))
                })
                .collect();
            for (piv, b) in &basis {
                let Ok(pos) = v.binary_search_by_key(piv, |e| e.0) else {
                    continue;
                };
                // b is normalized to 1 at its pivot
                let factor = p - v[pos].1;
                v = axpy_mod(&v, factor, b, p);
            }
            if let Some(&(piv, lead)) = v.first() {
                let inv = pow_mod(lead, p - 2, p);
                let v = v.into_iter().map(|(i, x)| (i, mul_mod(x, inv, p))).collect();
                basis.push((piv, v));
            }
        }
        Some(basis.len())
    }

    /// Decides whether `v` lies in the column span, returning a witness `x`
    /// with `self * x = v` when it does.
    pub fn in_span(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.rows, "vector length must equal row count");
        let span = self.span();
        let sparse = dense_to_sparse(v);
        span.witness(&sparse).map(|w| {
            let mut x = vec![Rational::zero(); self.cols()];
            for (j, c) in w {
                x[j] = c;
            }
            x
        })
    }

    /// `Ok(())` when every vector is in the column span, otherwise the index of
    /// the first one that is not.
    pub fn contains_all(&self, vs: &[Vec<Rational>]) -> std::result::Result<(), usize> {
        let span = self.span();
        for (idx, v) in vs.iter().enumerate() {
            assert_eq!(v.len(), self.rows, "vector length must equal row count");
            if !span.contains(&dense_to_sparse(v)) {
                return Err(idx);
            }
        }
        Ok(())
    }

    /// A basis of the right kernel, one vector per dependent column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut span = ColumnSpan::new(self.rows);
        let mut out = Vec::new();
        for (j, c) in self.columns.iter().enumerate() {
            if let Some(relation) = span.push_with_relation(c) {
                let mut x = vec![Rational::zero(); self.cols()];
                for (i, coef) in relation {
                    x[i] = coef;
                }
                x[j] -= Rational::one();
                out.push(x);
            }
        }
        out
    }
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn normalize_sparse(v: SparseVec) -> SparseVec {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, x) in v {
        *acc.entry(i).or_insert_with(Rational::zero) += x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

#[derive(Debug, Clone)]
struct BasisVector {
    pivot: usize,
    entries: IntVec,
    /// index of the inserted column this vector came from
    source: usize,
    /// `entries = scale * (column[source] - sum e_k basis[k])`
    scale: Rational,
    recipe: Vec<(usize, Rational)>,
}

/// Outcome of reducing a vector against the current basis.
struct Reduction {
    residual: IntVec,
    scale: Rational,
    /// `residual = scale * (x - sum e_k basis[k])`
    used: Vec<(usize, Rational)>,
}

/// Incrementally built echelon basis of a span of rational column vectors.
#[derive(Debug, Clone)]
pub struct ColumnSpan {
    dim_ambient: usize,
    basis: Vec<BasisVector>,
    pushed: usize,
}

impl ColumnSpan {
    pub fn new(dim_ambient: usize) -> Self {
        ColumnSpan {
            dim_ambient,
            basis: Vec::new(),
            pushed: 0,
        }
    }

    /// Dimension of the span.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    /// Number of columns inserted so far.
    pub fn columns_pushed(&self) -> usize {
        self.pushed
    }

    /// Inserts a column; returns true when it enlarged the span.
    pub fn push(&mut self, column: &[(usize, Rational)]) -> bool {
        self.push_with_relation(column).is_none()
    }

    fn push_untracked(&mut self, column: &[(usize, Rational)]) -> bool {
        let (ints, lcm) = clear_denominators(column);
        let red = self.reduce_ints(ints, lcm, false);
        self.pushed += 1;
        self.adopt(red, self.pushed - 1)
    }

    /// Inserts a column. When it is dependent on earlier columns, returns the
    /// relation `column = sum coef_i * column_i` over inserted column indices.
    pub fn push_with_relation(
        &mut self,
        column: &[(usize, Rational)],
    ) -> Option<Vec<(usize, Rational)>> {
        debug_assert!(column.iter().all(|(i, _)| *i < self.dim_ambient));
        let (ints, lcm) = clear_denominators(column);
        let red = self.reduce_ints(ints, lcm, true);
        let idx = self.pushed;
        self.pushed += 1;
        if red.residual.is_empty() {
            Some(self.expand(red.used))
        } else {
            self.adopt(red, idx);
            None
        }
    }

    fn adopt(&mut self, red: Reduction, source: usize) -> bool {
        if red.residual.is_empty() {
            return false;
        }
        let pivot = red
            .residual
            .iter()
            .min_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.cmp(&b.0)))
            .unwrap()
            .0;
        self.basis.push(BasisVector {
            pivot,
            entries: red.residual,
            source,
            scale: red.scale,
            recipe: red.used,
        });
        true
    }

    /// `v` is `lcm * x` for the rational vector `x` being reduced.
    fn reduce_ints(&self, mut v: IntVec, lcm: BigInt, track: bool) -> Reduction {
        let mut scale = Rational::from_integer(lcm);
        let mut used = Vec::new();
        let g = content(&v);
        if !g.is_zero() && !g.is_one() {
            for e in &mut v {
                e.1 /= &g;
            }
            scale /= Rational::from_integer(g);
        }
        for (k, b) in self.basis.iter().enumerate() {
            if v.is_empty() {
                break;
            }
            let Ok(pos) = v.binary_search_by_key(&b.pivot, |e| e.0) else {
                continue;
            };
            let alpha = v[pos].1.clone();
            let beta = pivot_value(b);
            let g = alpha.gcd(beta);
            let a = beta / &g;
            let c = &alpha / &g;
            v = combine(&v, &a, &c, &b.entries);
            if track {
                scale *= Rational::from_integer(a);
                used.push((k, Rational::from_integer(c) / &scale));
            }
            let g = content(&v);
            if !g.is_zero() && !g.is_one() {
                for e in &mut v {
                    e.1 /= &g;
                }
                if track {
                    scale /= Rational::from_integer(g);
                }
            }
        }
        Reduction {
            residual: v,
            scale,
            used,
        }
    }

    /// Turns `sum gamma_k basis[k]` into coefficients over inserted columns.
    fn expand(&self, gammas: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
        let mut gamma: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, g) in gammas {
            *gamma.entry(k).or_insert_with(Rational::zero) += g;
        }
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        while let Some((k, g)) = gamma.pop_last() {
            if g.is_zero() {
                continue;
            }
            let b = &self.basis[k];
            let gs = &g * &b.scale;
            *out.entry(b.source).or_insert_with(Rational::zero) += &gs;
            for (l, e) in &b.recipe {
                *gamma.entry(*l).or_insert_with(Rational::zero) -= &gs * e;
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        let (ints, lcm) = clear_denominators(v);
        self.reduce_ints(ints, lcm, false).residual.is_empty()
    }

    /// Coefficients over inserted columns reproducing `v`, if `v` is in the span.
    pub fn witness(&self, v: &[(usize, Rational)]) -> Option<Vec<(usize, Rational)>> {
        let (ints, lcm) = clear_denominators(v);
        let red = self.reduce_ints(ints, lcm, true);
        if !red.residual.is_empty() {
            return None;
        }
        Some(self.expand(red.used))
    }
}

fn pivot_value(b: &BasisVector) -> &BigInt {
    let pos = b
        .entries
        .binary_search_by_key(&b.pivot, |e| e.0)
        .expect("pivot present");
    &b.entries[pos].1
}

fn content(v: &IntVec) -> BigInt {
    let mut g = BigInt::zero();
    for (_, x) in v {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

fn clear_denominators(v: &[(usize, Rational)]) -> (IntVec, BigInt) {
    let lcm = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let ints = v
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (*i, x.numer() * (&lcm / x.denom())))
        .collect();
    (ints, lcm)
}

/// `a*v - c*w` on sorted sparse vectors.
fn combine(v: &IntVec, a: &BigInt, c: &BigInt, w: &IntVec) -> IntVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j >= w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i >= v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push((v[i].0, a * &v[i].1));
            i += 1;
        } else if take_w {
            out.push((w[j].0, -(c * &w[j].1)));
            j += 1;
        } else {
            let x = a * &v[i].1 - c * &w[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Primes for the modular lower bound on rank.
pub const MOD_PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 4_294_967_291];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// `v + f*w (mod p)` on sorted sparse vectors.
fn axpy_mod(v: &[(usize, u64)], f: u64, w: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        if j >= w.len() || (i < v.len() && v[i].0 < w[j].0) {
            out.push(v[i]);
            i += 1;
        } else if i >= v.len() || w[j].0 < v[i].0 {
            out.push((w[j].0, mul_mod(f, w[j].1, p)));
            j += 1;
        } else {
            let x = ((v[i].1 as u128 + mul_mod(f, w[j].1, p) as u128) % p as u128) as u64;
            if x != 0 {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
