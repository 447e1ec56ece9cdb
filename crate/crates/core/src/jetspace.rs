//! Truncated local rings `O_n / m^{N+1}` and the ideal images living in them.
//!
//! Ideal membership is always decided at a jet order `N` where `m^N` is
//! already known to sit inside the ideal. Containment itself is decided via
//! Nakayama: if every degree-`N` monomial lies in `I + m^{N+1}` then
//! `m^N ⊆ I + m * m^N`, hence `m^N ⊆ I` in the local ring.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::combinatorics::binomial_u128;
use crate::error::{Error, Result};
use crate::exactla::{ColumnSpan, RatMatrix, SparseVec};
use crate::poly::{Monomial, Poly, Rational};

/// Largest jet space built unless a caller asks for more.
pub const DEFAULT_JET_CAP: usize = 200_000;

/// Doublings of the starting jet order tried before giving up.
pub const DEFAULT_DOUBLINGS: u32 = 4;

/// `O_n / m^{N+1}` with its monomial basis, graded-lex ascending.
#[derive(Debug)]
pub struct JetSpace {
    nvars: usize,
    order: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `degree_start[d]` is the position of the first monomial of degree `d`
    degree_start: Vec<usize>,
}

/// Number of monomials of degree at most `order` in `nvars` variables.
pub fn jet_dimension(nvars: usize, order: u32) -> u128 {
    binomial_u128(order as u64 + nvars as u64, nvars as u64)
}

impl JetSpace {
    pub fn new(nvars: usize, order: u32) -> Result<Self> {
        JetSpace::with_cap(nvars, order, DEFAULT_JET_CAP)
    }

    pub fn with_cap(nvars: usize, order: u32, cap: usize) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::Hypothesis("a jet space needs at least one variable".into()));
        }
        let size = jet_dimension(nvars, order);
        if size > cap as u128 {
            return Err(Error::ResourceCap {
                nvars,
                order,
                size,
                cap,
            });
        }
        let mut basis = Vec::with_capacity(size as usize);
        let mut degree_start = Vec::with_capacity(order as usize + 2);
        for d in 0..=order {
            degree_start.push(basis.len());
            basis.extend(Monomial::all_of_degree(nvars, d));
        }
        degree_start.push(basis.len());
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(JetSpace {
            nvars,
            order,
            basis,
            index,
            degree_start,
        })
    }

    /// Process-wide memoized jet space for `(nvars, order)` under the default cap.
    pub fn shared(nvars: usize, order: u32) -> Result<Arc<JetSpace>> {
        type Cache = Mutex<HashMap<(usize, u32), Arc<JetSpace>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(js) = cache.lock().unwrap().get(&(nvars, order)) {
            return Ok(Arc::clone(js));
        }
        let js = Arc::new(JetSpace::new(nvars, order)?);
        let mut guard = cache.lock().unwrap();
        Ok(Arc::clone(guard.entry((nvars, order)).or_insert(js)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Basis positions holding monomials of total degree `d`.
    pub fn degree_positions(&self, d: u32) -> std::ops::Range<usize> {
        if d > self.order {
            return self.basis.len()..self.basis.len();
        }
        self.degree_start[d as usize]..self.degree_start[d as usize + 1]
    }

    /// Coordinates of the `N`-jet of `p`.
    pub fn coordinates(&self, p: &Poly) -> Result<SparseVec> {
        if p.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: p.nvars(),
            });
        }
        let mut v: SparseVec = p
            .terms()
            .filter_map(|(m, c)| self.index_of(m).map(|i| (i, c.clone())))
            .collect();
        v.sort_by_key(|e| e.0);
        Ok(v)
    }

    pub fn poly_from_coordinates(&self, v: &[(usize, Rational)]) -> Poly {
        Poly::from_terms(
            self.nvars,
            v.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())),
        )
        .expect("basis monomials have matching arity")
    }
}

/// Builds `O_n / m^{N+1}` (named for symmetry with the other operations).
pub fn build_jet_space(nvars: usize, order: u32) -> Result<JetSpace> {
    JetSpace::new(nvars, order)
}

/// One spanning column: the jet of `multiplier * generators[generator]`.
#[derive(Debug, Clone)]
pub struct ImageColumn {
    pub multiplier: Monomial,
    pub generator: usize,
}

/// Image of `m^c * (g_1, ..., g_r)` in a jet space.
#[derive(Debug, Clone)]
pub struct IdealImage {
    ambient: Arc<JetSpace>,
    generators: Vec<Poly>,
    multiplier_floor: u32,
    columns: Vec<ImageColumn>,
    vectors: Vec<SparseVec>,
    span: ColumnSpan,
}

/// Outcome of a jet membership query.
#[derive(Debug, Clone)]
pub struct Membership {
    pub member: bool,
    /// `a_j` with `sum a_j g_j ≡ g (mod m^{N+1})`; present iff `member`.
    pub witness: Option<Vec<Poly>>,
}

impl IdealImage {
    pub fn ambient(&self) -> &JetSpace {
        &self.ambient
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn multiplier_floor(&self) -> u32 {
        self.multiplier_floor
    }

    pub fn columns(&self) -> &[ImageColumn] {
        &self.columns
    }

    /// Dimension of the image.
    pub fn rank(&self) -> usize {
        self.span.dim()
    }

    /// Dimension of the quotient of the jet space by the image.
    pub fn codimension(&self) -> usize {
        self.ambient.dim() - self.rank()
    }

    /// Matrix whose columns are the jet coordinates of the products.
    pub fn span_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.ambient.dim(), self.vectors.clone())
    }

    pub fn contains_coordinates(&self, v: &[(usize, Rational)]) -> bool {
        self.span.contains(v)
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        match self.ambient.index_of(m) {
            Some(i) => self.span.contains(&[(i, Rational::one())]),
            // beyond the jet order the monomial is zero in the quotient
            None => true,
        }
    }

    /// Index of the first monomial of degree `d` outside the image, if any.
    pub fn first_missing_in_degree(&self, d: u32) -> Option<Monomial> {
        self.ambient
            .degree_positions(d)
            .find(|&i| !self.span.contains(&[(i, Rational::one())]))
            .map(|i| self.ambient.basis[i].clone())
    }
}

/// Spans the jets of `mono * g_j` for every generator and every monomial
/// multiplier of degree at least `multiplier_floor`.
pub fn ideal_image(
    generators: &[Poly],
    ambient: Arc<JetSpace>,
    multiplier_floor: u32,
) -> Result<IdealImage> {
    let n = ambient.nvars();
    let order = ambient.order();
    let mut columns = Vec::new();
    let mut vectors = Vec::new();
    let mut span = ColumnSpan::new(ambient.dim());
    for g in generators {
        if g.nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.nvars(),
            });
        }
    }
    let top = generators
        .iter()
        .filter_map(|g| g.order().map(|o| order.saturating_sub(o)))
        .max();
    let Some(top) = top else {
        return Ok(IdealImage {
            ambient,
            generators: generators.to_vec(),
            multiplier_floor,
            columns,
            vectors,
            span,
        });
    };
    for d in multiplier_floor..=top {
        for mono in Monomial::all_of_degree(n, d) {
            for (j, g) in generators.iter().enumerate() {
                let Some(o) = g.order() else { continue };
                if o + d > order {
                    continue;
                }
                let product = g.mul_monomial(&mono).truncate(order);
                let v = ambient.coordinates(&product)?;
                if v.is_empty() {
                    continue;
                }
                span.push(&v);
                vectors.push(v);
                columns.push(ImageColumn {
                    multiplier: mono.clone(),
                    generator: j,
                });
            }
        }
    }
    Ok(IdealImage {
        ambient,
        generators: generators.to_vec(),
        multiplier_floor,
        columns,
        vectors,
        span,
    })
}

/// Decides whether the jet of `g` lies in the image, with multipliers as witness.
pub fn jet_membership(g: &Poly, img: &IdealImage) -> Result<Membership> {
    let js = img.ambient();
    let v = js.coordinates(&g.truncate(js.order()))?;
    let Some(coeffs) = img.span.witness(&v) else {
        return Ok(Membership {
            member: false,
            witness: None,
        });
    };
    let mut multipliers = vec![Poly::zero(js.nvars()); img.generators.len()];
    for (col, c) in coeffs {
        let ImageColumn {
            multiplier,
            generator,
        } = &img.columns[col];
        multipliers[*generator] =
            &multipliers[*generator] + &Poly::term(multiplier.clone(), c);
    }
    Ok(Membership {
        member: true,
        witness: Some(multipliers),
    })
}

/// Expands a membership witness back to a polynomial truncated at `order`.
pub fn expand_witness(generators: &[Poly], witness: &[Poly], order: u32) -> Poly {
    let n = generators.first().map_or(0, Poly::nvars);
    generators
        .iter()
        .zip(witness)
        .fold(Poly::zero(n), |acc, (g, a)| &acc + &(g * a))
        .truncate(order)
}

/// True when `f` has no linear part yet some partial vanishes identically, in
/// which case `J(f)` never contains a power of `m`.
pub fn is_coordinate_degenerate(f: &Poly) -> bool {
    let grad = f.gradient();
    let has_unit = grad.iter().any(|g| !g.constant_term().is_zero());
    !has_unit && grad.iter().any(Poly::is_zero)
}

/// Decides `m^N ⊆ J(f)` in the local ring.
pub fn certify_power_containment(f: &Poly, order: u32) -> Result<bool> {
    Ok(power_containment_image(f, order)?.is_some())
}

/// Like [`certify_power_containment`], keeping the ideal image on success.
pub fn power_containment_image(f: &Poly, order: u32) -> Result<Option<IdealImage>> {
    if order == 0 {
        return Err(Error::Hypothesis("certification order must be at least 1".into()));
    }
    if is_coordinate_degenerate(f) {
        return Ok(None);
    }
    let js = JetSpace::shared(f.nvars(), order)?;
    let img = ideal_image(&f.gradient(), js, 0)?;
    Ok(img.first_missing_in_degree(order).is_none().then_some(img))
}

/// Knobs for the search over certification orders.
#[derive(Debug, Clone, Copy)]
pub struct CertifyOptions {
    /// starting jet order; defaults to `max(n(m-2)+1, D+1)`
    pub start: Option<u32>,
    pub doublings: u32,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            start: None,
            doublings: DEFAULT_DOUBLINGS,
        }
    }
}

/// Default starting order `max(n(m-2)+1, D+1)` for lowest degree `m` and top degree `D`.
pub fn default_start_order(f: &Poly) -> u32 {
    let n = f.nvars() as i64;
    let m = f.order().unwrap_or(0) as i64;
    let top = f.degree().unwrap_or(0) as i64;
    (n * (m - 2) + 1).max(top + 1).max(1) as u32
}

/// Jacobian image at an order `N` where `m^N ⊆ J(f)` has been certified.
#[derive(Debug, Clone)]
pub struct CertifiedJacobian {
    pub order: u32,
    pub image: IdealImage,
}

/// Searches doubling jet orders for one where `m^N ⊆ J(f)` certifies.
pub fn certify_jacobian(f: &Poly, opts: CertifyOptions) -> Result<CertifiedJacobian> {
    let mut order = opts.start.unwrap_or_else(|| default_start_order(f)).max(1);
    let mut last = order;
    if is_coordinate_degenerate(f) {
        return Err(Error::NotCertified { last_order: order });
    }
    for _ in 0..=opts.doublings {
        last = order;
        if let Some(image) = power_containment_image(f, order)? {
            return Ok(CertifiedJacobian { order, image });
        }
        order = order.saturating_mul(2);
    }
    Err(Error::NotCertified { last_order: last })
}
