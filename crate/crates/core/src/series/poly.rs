//! Sparse weight-truncated polynomials over packed monomials.
//!
//! Every series type in the crate shares one monomial layout for a given
//! dimension `n`:
//!
//! ```text
//! field 0..n      z^1 .. z^n        weight 1
//! field n..2n     zbar^1 .. zbar^n  weight 1
//! field 2n        t  (u or w)       weight 2
//! field 2n+1      v                 weight 2
//! ```
//!
//! Exponents are packed five bits per field into a `u64`, so monomial
//! multiplication is integer addition. Weight caps above 31 are rejected,
//! which keeps every exponent below the field width.

use rustc_hash::FxHashMap;

use super::scalar::{ProductSum, Scalar};
use crate::error::{Error, Result};

pub const MAX_DIM: usize = 5;
pub const MAX_CAP: u32 = 31;
const BITS: u32 = 5;
const MASK: u64 = (1 << BITS) - 1;

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Mono(pub(crate) u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    #[inline]
    pub fn get(self, field: usize) -> u32 {
        ((self.0 >> (BITS as usize * field)) & MASK) as u32
    }

    #[inline]
    pub fn with(self, field: usize, e: u32) -> Mono {
        let shift = BITS as usize * field;
        Mono((self.0 & !(MASK << shift)) | ((e as u64) << shift))
    }

    #[inline]
    pub fn times(self, other: Mono) -> Mono {
        Mono(self.0 + other.0)
    }

    pub fn var(field: usize, e: u32) -> Mono {
        Mono::ONE.with(field, e)
    }

    #[inline]
    pub fn weight(self, dim: usize) -> u32 {
        let mut w = 0;
        for f in 0..2 * dim {
            w += self.get(f);
        }
        w + 2 * (self.get(t_field(dim)) + self.get(v_field(dim)))
    }

    /// Total degree in the z fields.
    pub fn z_degree(self, dim: usize) -> u32 {
        (0..dim).map(|f| self.get(f)).sum()
    }

    /// Total degree in the zbar fields.
    pub fn zbar_degree(self, dim: usize) -> u32 {
        (dim..2 * dim).map(|f| self.get(f)).sum()
    }

    /// Swaps the z and zbar blocks.
    pub fn swap_bars(self, dim: usize) -> Mono {
        let mut m = self;
        for k in 0..dim {
            m = m.with(k, self.get(dim + k)).with(dim + k, self.get(k));
        }
        m
    }
}

#[inline]
pub fn t_field(dim: usize) -> usize {
    2 * dim
}

#[inline]
pub fn v_field(dim: usize) -> usize {
    2 * dim + 1
}

pub fn check_shape(dim: usize, cap: u32) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::UnsupportedDimension(dim));
    }
    if cap > MAX_CAP {
        return Err(Error::CapTooLarge { cap, max: MAX_CAP });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub weight: u32,
    pub mono: Mono,
    pub coef: Scalar,
}

/// Sparse polynomial truncated at a Chern-Moser weight cap. Terms are kept
/// sorted by `(weight, mono)` with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly {
    pub dim: usize,
    pub cap: u32,
    terms: Vec<Term>,
}

impl Poly {
    pub fn zero(dim: usize, cap: u32) -> Poly {
        Poly {
            dim,
            cap,
            terms: Vec::new(),
        }
    }

    pub fn constant(dim: usize, cap: u32, c: Scalar) -> Poly {
        Poly::monomial(dim, cap, Mono::ONE, c)
    }

    pub fn monomial(dim: usize, cap: u32, mono: Mono, c: Scalar) -> Poly {
        let weight = mono.weight(dim);
        let terms = if c.is_zero() || weight > cap {
            Vec::new()
        } else {
            vec![Term {
                weight,
                mono,
                coef: c,
            }]
        };
        Poly { dim, cap, terms }
    }

    pub fn var(dim: usize, cap: u32, field: usize) -> Poly {
        Poly::monomial(dim, cap, Mono::var(field, 1), Scalar::one())
    }

    pub fn from_pairs<I>(dim: usize, cap: u32, pairs: I) -> Poly
    where
        I: IntoIterator<Item = (Mono, Scalar)>,
    {
        let mut acc: FxHashMap<Mono, Scalar> = FxHashMap::default();
        for (m, c) in pairs {
            if m.weight(dim) > cap {
                continue;
            }
            *acc.entry(m).or_default() += &c;
        }
        Poly::from_map(dim, cap, acc)
    }

    fn from_map(dim: usize, cap: u32, map: FxHashMap<Mono, Scalar>) -> Poly {
        let mut terms: Vec<Term> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, coef)| Term {
                weight: mono.weight(dim),
                mono,
                coef,
            })
            .filter(|t| t.weight <= cap)
            .collect();
        terms.sort_unstable_by_key(|t| (t.weight, t.mono));
        Poly { dim, cap, terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, &Scalar)> {
        self.terms.iter().map(|t| (t.mono, &t.coef))
    }

    pub(crate) fn raw_terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_weight(&self) -> Option<u32> {
        self.terms.first().map(|t| t.weight)
    }

    pub fn coeff(&self, mono: Mono) -> Scalar {
        let key = (mono.weight(self.dim), mono);
        match self.terms.binary_search_by_key(&key, |t| (t.weight, t.mono)) {
            Ok(i) => self.terms[i].coef.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn truncate(&self, cap: u32) -> Poly {
        let cap = cap.min(self.cap);
        Poly {
            dim: self.dim,
            cap,
            terms: self
                .terms
                .iter()
                .take_while(|t| t.weight <= cap)
                .cloned()
                .collect(),
        }
    }

    /// Re-labels the cap. Raising it treats the stored polynomial as exact.
    pub fn with_cap(&self, cap: u32) -> Poly {
        let mut p = self.truncate(cap);
        p.cap = cap;
        p
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let cap = self.cap.min(other.cap);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let key = |t: &Term| (t.weight, t.mono);
        while i < a.len() || j < b.len() {
            let take = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => key(x).cmp(&key(y)),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match take {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let mut t = b[j].clone();
                    if negate_other {
                        t.coef = -t.coef;
                    }
                    out.push(t);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let coef = if negate_other {
                        &a[i].coef - &b[j].coef
                    } else {
                        &a[i].coef + &b[j].coef
                    };
                    if !coef.is_zero() {
                        out.push(Term {
                            weight: a[i].weight,
                            mono: a[i].mono,
                            coef,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.retain(|t| t.weight <= cap);
        Poly {
            dim: self.dim,
            cap,
            terms: out,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim, self.cap);
        }
        Poly {
            dim: self.dim,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    weight: t.weight,
                    mono: t.mono,
                    coef: &t.coef * c,
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Scalar::from_int(-1))
    }

    /// Truncated product; the result cap is the smaller of the operand caps
    /// and `cap`.
    pub fn mul_capped(&self, other: &Poly, cap: u32) -> Poly {
        let cap = cap.min(self.cap).min(other.cap);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.dim, cap);
        }
        // Fast path for constants.
        if self.terms.len() == 1 && self.terms[0].mono == Mono::ONE {
            return other.scale(&self.terms[0].coef).truncate(cap);
        }
        if other.terms.len() == 1 && other.terms[0].mono == Mono::ONE {
            return self.scale(&other.terms[0].coef).truncate(cap);
        }
        let mut acc: FxHashMap<Mono, ProductSum> = FxHashMap::default();
        let b_min = other.terms[0].weight;
        for x in &self.terms {
            if x.weight + b_min > cap {
                break;
            }
            for y in &other.terms {
                if x.weight + y.weight > cap {
                    break;
                }
                acc.entry(x.mono.times(y.mono))
                    .or_default()
                    .add_mul(&x.coef, &y.coef);
            }
        }
        let acc = acc.into_iter().map(|(m, s)| (m, s.finish())).collect();
        Poly::from_map(self.dim, cap, acc)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_capped(other, u32::MAX)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.dim, self.cap, Scalar::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies `f` to every term; returned monomials may collide and are summed.
    pub fn map_terms<F>(&self, mut f: F) -> Poly
    where
        F: FnMut(Mono, &Scalar) -> Option<(Mono, Scalar)>,
    {
        Poly::from_pairs(
            self.dim,
            self.cap,
            self.terms.iter().filter_map(|t| f(t.mono, &t.coef)),
        )
    }

    pub fn filter<F>(&self, mut keep: F) -> Poly
    where
        F: FnMut(Mono) -> bool,
    {
        Poly {
            dim: self.dim,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .filter(|t| keep(t.mono))
                .cloned()
                .collect(),
        }
    }

    /// Partial derivative in one field. The cap drops by the field weight.
    pub fn derivative(&self, field: usize) -> Poly {
        let fw = Mono::var(field, 1).weight(self.dim);
        let cap = self.cap.saturating_sub(fw);
        let mut p = self.map_terms(|m, c| {
            let e = m.get(field);
            (e > 0).then(|| (m.with(field, e - 1), c * &Scalar::from_int(e as i64)))
        });
        p.cap = cap;
        p
    }

    /// Largest exponent of `field` over all terms.
    pub fn max_exponent(&self, field: usize) -> u32 {
        self.terms.iter().map(|t| t.mono.get(field)).max().unwrap_or(0)
    }
}

/// Formal substitution `f(slot_0, slot_1, ...)` truncated at `cap`.
///
/// `slots[k]` replaces field `k`; a `None` slot is only legal for fields that
/// do not occur in `f`. Every used slot must have no constant term, otherwise
/// the composition is not weight-filtered.
pub(crate) fn compose(f: &Poly, slots: &[Option<&Poly>], out_dim: usize, cap: u32) -> Result<Poly> {
    let nfields = 2 * f.dim + 2;
    let mut minw = vec![u32::MAX; nfields];
    let mut used = vec![false; nfields];
    for t in f.raw_terms() {
        for (k, u) in used.iter_mut().enumerate() {
            if t.mono.get(k) > 0 {
                *u = true;
            }
        }
    }
    for k in 0..nfields {
        if !used[k] {
            continue;
        }
        let slot = slots
            .get(k)
            .copied()
            .flatten()
            .ok_or_else(|| Error::Precondition(format!("missing substitution for field {k}")))?;
        if slot.dim != out_dim {
            return Err(Error::DimensionMismatch {
                left: slot.dim,
                right: out_dim,
            });
        }
        minw[k] = match slot.min_weight() {
            Some(0) => return Err(Error::ConstantSlot { slot: k }),
            Some(w) => w,
            None => u32::MAX,
        };
    }
    // Outer-to-inner Horner order: weight-2 slots first, then zbar, then z.
    let mut order: Vec<usize> = vec![t_field(f.dim), v_field(f.dim)];
    order.extend(f.dim..2 * f.dim);
    order.extend(0..f.dim);
    order.retain(|&k| used[k]);

    let terms: Vec<(Mono, Scalar)> = f
        .raw_terms()
        .iter()
        .filter(|t| {
            let lw: u64 = (0..nfields)
                .map(|k| t.mono.get(k) as u64 * if used[k] { minw[k] as u64 } else { 0 })
                .sum();
            lw <= cap as u64
        })
        .map(|t| (t.mono, t.coef.clone()))
        .collect();

    let mut ctx = ComposeCtx {
        slots,
        minw,
        cap,
        out_dim,
        powers: vec![Vec::new(); nfields],
    };
    let one = Poly::constant(out_dim, cap, Scalar::one());
    let mut out = FxHashMap::default();
    ctx.eval(terms, &order, cap, &one, &mut out);
    Ok(Poly::from_map(out_dim, cap, out.into_iter().map(|(m, s)| (m, s.finish())).collect()))
}

struct ComposeCtx<'a> {
    slots: &'a [Option<&'a Poly>],
    minw: Vec<u32>,
    cap: u32,
    out_dim: usize,
    powers: Vec<Vec<Poly>>,
}

impl ComposeCtx<'_> {
    fn power(&mut self, field: usize, e: u32) -> &Poly {
        let slot = self.slots[field].expect("checked slot");
        let pw = &mut self.powers[field];
        if pw.is_empty() {
            pw.push(Poly::constant(self.out_dim, self.cap, Scalar::one()));
        }
        while pw.len() <= e as usize {
            let next = pw.last().unwrap().mul_capped(slot, self.cap);
            pw.push(next);
        }
        &self.powers[field][e as usize]
    }

    /// Adds `prefix * sum(terms evaluated on the remaining fields)` to `out`.
    /// `budget` bounds the weight still available after `prefix`'s lowest term.
    fn eval(
        &mut self,
        terms: Vec<(Mono, Scalar)>,
        order: &[usize],
        budget: u32,
        prefix: &Poly,
        out: &mut FxHashMap<Mono, ProductSum>,
    ) {
        let Some((&field, rest)) = order.split_first() else {
            let mut c = Scalar::zero();
            for (_, s) in &terms {
                c += s;
            }
            if !c.is_zero() {
                for t in &prefix.terms {
                    out.entry(t.mono).or_default().add_mul(&t.coef, &c);
                }
            }
            return;
        };
        let mut by_exp: FxHashMap<u32, Vec<(Mono, Scalar)>> = FxHashMap::default();
        for (m, c) in terms {
            by_exp.entry(m.get(field)).or_default().push((m.with(field, 0), c));
        }
        let mut groups: Vec<(u32, Vec<(Mono, Scalar)>)> = by_exp.into_iter().collect();
        groups.sort_by_key(|g| g.0);
        for (e, group) in groups {
            let lw = e as u64 * self.minw[field] as u64;
            if lw > budget as u64 {
                continue;
            }
            if e == 0 {
                self.eval(group, rest, budget, prefix, out);
            } else {
                let p = self.power(field, e).clone();
                let next = prefix.mul_capped(&p, self.cap);
                if !next.is_zero() {
                    self.eval(group, rest, budget - lw as u32, &next, out);
                }
            }
        }
    }
}
