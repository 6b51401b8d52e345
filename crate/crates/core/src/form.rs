//! Exact polynomial differential forms in canonical normal form.
//!
//! A form is a finite sum of terms `c · y^a · dy_J` where `y` ranges over the non-eliminated
//! coordinates of its [`VariableContext`] and `J` is a strictly increasing exterior word.
//! Every affine group's first coordinate is rewritten as `y_0 = 1 - Σ y_i`, `dy_0 = -Σ dy_i`,
//! so two forms are equal in the quotient algebra iff their term maps are identical.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::context::{GroupKind, VariableContext};
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// A strictly increasing word of exterior generators, as a bitmask over reduced indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Exterior(u64);

impl Exterior {
    pub const EMPTY: Exterior = Exterior(0);

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Exterior(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1u64 << i) != 0
    }

    /// Generator indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                i
            })
        })
    }

    /// `self ∧ other` as a sorted word with its Koszul sign, or `None` if a generator repeats.
    pub fn wedge(self, other: Exterior) -> Option<(Exterior, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for j in other.indices() {
            // generators of self that sit to the right of j after sorting
            swaps += (self.0 >> j).count_ones();
        }
        Some((Exterior(self.0 | other.0), swaps % 2 == 1))
    }

    /// Drops the lowest `count` generator slots (they must be absent) and renumbers.
    pub fn shift_down(self, count: usize) -> Exterior {
        Exterior(self.0 >> count)
    }

    /// Keeps only generators with index `< count`.
    pub fn truncate(self, count: usize) -> Exterior {
        if count >= 64 {
            self
        } else {
            Exterior(self.0 & ((1u64 << count) - 1))
        }
    }
}

impl Ord for Exterior {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Exterior {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exterior word together with an exponent vector over the reduced variables.
///
/// The derived order (exterior length, exterior word, exponents) is the canonical term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exterior: Exterior,
    pub exponents: Box<[u32]>,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exterior: Exterior::EMPTY,
            exponents: vec![0; num_vars].into_boxed_slice(),
        }
    }

    pub fn degree(&self) -> usize {
        self.exterior.len()
    }

    pub fn polynomial_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// A term before canonicalization; indices refer to full coordinates, eliminated ones allowed.
#[derive(Clone, Debug)]
pub struct RawTerm {
    pub coefficient: Rational,
    /// `(coordinate, exponent)` factors; repeats multiply.
    pub powers: Vec<(usize, u32)>,
    /// Exterior word in written order; need not be sorted.
    pub exterior: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DifferentialForm {
    context: Arc<VariableContext>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for DifferentialForm {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.context, &other.context) && self.terms == other.terms
    }
}

impl Eq for DifferentialForm {}

fn same_context(a: &Arc<VariableContext>, b: &Arc<VariableContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn accumulate(terms: &mut BTreeMap<Monomial, Rational>, mono: Monomial, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(mono) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl DifferentialForm {
    pub fn zero(context: &Arc<VariableContext>) -> Self {
        Self {
            context: context.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(context: &Arc<VariableContext>, c: Rational) -> Self {
        let mut out = Self::zero(context);
        accumulate(&mut out.terms, Monomial::one(context.num_reduced()), c);
        out
    }

    pub fn one(context: &Arc<VariableContext>) -> Self {
        Self::constant(context, Rational::one())
    }

    /// Builds a form from terms that are already over reduced variables.
    pub fn from_terms(
        context: &Arc<VariableContext>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut out = Self::zero(context);
        for (mono, coeff) in terms {
            debug_assert_eq!(mono.exponents.len(), context.num_reduced());
            accumulate(&mut out.terms, mono, coeff);
        }
        out
    }

    /// The reduced variable `y_r` as a 0-form.
    pub fn variable(context: &Arc<VariableContext>, r: usize) -> Self {
        let mut mono = Monomial::one(context.num_reduced());
        mono.exponents[r] = 1;
        Self::from_terms(context, [(mono, Rational::one())])
    }

    /// The reduced generator `dy_r` as a 1-form.
    pub fn differential_variable(context: &Arc<VariableContext>, r: usize) -> Self {
        let mut mono = Monomial::one(context.num_reduced());
        mono.exterior = Exterior::from_indices([r]);
        Self::from_terms(context, [(mono, Rational::one())])
    }

    /// Canonical form of the coordinate with full index `full` (eliminated ones expand).
    pub fn coordinate(context: &Arc<VariableContext>, full: usize) -> Self {
        let coord = &context.coordinates()[full];
        match coord.reduced {
            Some(r) => Self::variable(context, r),
            None => {
                let mut out = Self::one(context);
                for other in context.group_range(coord.group).skip(1) {
                    let r = context.coordinates()[other].reduced.expect("reduced");
                    out.add_scaled_in_place(&Self::variable(context, r), &-Rational::one());
                }
                out
            }
        }
    }

    /// Canonical form of `d(coordinate)`.
    pub fn coordinate_differential(context: &Arc<VariableContext>, full: usize) -> Self {
        let coord = &context.coordinates()[full];
        match coord.reduced {
            Some(r) => Self::differential_variable(context, r),
            None => {
                let mut out = Self::zero(context);
                for other in context.group_range(coord.group).skip(1) {
                    let r = context.coordinates()[other].reduced.expect("reduced");
                    out.add_scaled_in_place(
                        &Self::differential_variable(context, r),
                        &-Rational::one(),
                    );
                }
                out
            }
        }
    }

    /// Expands raw terms (which may mention eliminated coordinates) into canonical form.
    pub fn canonicalize(context: &Arc<VariableContext>, raw: &[RawTerm]) -> Result<Self> {
        let n = context.num_coordinates();
        let check = |i: usize| {
            if i < n {
                Ok(())
            } else {
                Err(Error::InvalidContext(format!(
                    "coordinate index {i} out of range for {context}"
                )))
            }
        };
        let mut out = Self::zero(context);
        for term in raw {
            let mut product = Self::constant(context, term.coefficient.clone());
            for &(i, e) in &term.powers {
                check(i)?;
                let x = Self::coordinate(context, i);
                for _ in 0..e {
                    product = product.wedge_unchecked(&x);
                }
            }
            for &i in &term.exterior {
                check(i)?;
                product = product.wedge_unchecked(&Self::coordinate_differential(context, i));
            }
            out.add_scaled_in_place(&product, &Rational::one());
        }
        Ok(out)
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.context
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The exterior degree if the form is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// The constant coefficient, if the form is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (mono, c) = self.terms.iter().next()?;
                (mono.exterior.is_empty() && mono.polynomial_degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn ensure_context(&self, other: &Arc<VariableContext>) -> Result<()> {
        if same_context(&self.context, other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                expected: other.to_string(),
                got: self.context.to_string(),
            })
        }
    }

    pub(crate) fn add_scaled_in_place(&mut self, other: &Self, scale: &Rational) {
        debug_assert!(same_context(&self.context, &other.context));
        if scale.is_zero() {
            return;
        }
        for (mono, c) in &other.terms {
            accumulate(&mut self.terms, mono.clone(), c * scale);
        }
    }

    pub(crate) fn add_in_place(&mut self, other: &Self) {
        debug_assert!(same_context(&self.context, &other.context));
        for (mono, c) in &other.terms {
            accumulate(&mut self.terms, mono.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        other.ensure_context(&self.context)?;
        let mut out = self.clone();
        out.add_in_place(other);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        other.ensure_context(&self.context)?;
        let mut out = self.clone();
        out.add_scaled_in_place(other, &-Rational::one());
        Ok(out)
    }

    pub fn negate(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.context);
        }
        Self {
            context: self.context.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        other.ensure_context(&self.context)?;
        Ok(self.wedge_unchecked(other))
    }

    pub(crate) fn wedge_unchecked(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some((exterior, odd)) = ma.exterior.wedge(mb.exterior) else {
                    continue;
                };
                let exponents = ma
                    .exponents
                    .iter()
                    .zip(mb.exponents.iter())
                    .map(|(a, b)| a + b)
                    .collect();
                let coeff = ca * cb;
                accumulate(
                    &mut terms,
                    Monomial {
                        exterior,
                        exponents,
                    },
                    if odd { -coeff } else { coeff },
                );
            }
        }
        Self {
            context: self.context.clone(),
            terms,
        }
    }

    /// The exterior derivative `Σ_v ∂_v(p) dv ∧ w`.
    pub fn differential(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (mono, c) in &self.terms {
            for (v, &e) in mono.exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let Some((exterior, odd)) = Exterior::from_indices([v]).wedge(mono.exterior) else {
                    continue;
                };
                let mut exponents = mono.exponents.clone();
                exponents[v] -= 1;
                let coeff = c * Rational::from_integer(BigInt::from(e));
                accumulate(
                    &mut terms,
                    Monomial {
                        exterior,
                        exponents,
                    },
                    if odd { -coeff } else { coeff },
                );
            }
        }
        Self {
            context: self.context.clone(),
            terms,
        }
    }

    /// Sum of the terms of exterior degree `p`; zero for negative `p`.
    pub fn degree_component(&self, p: i64) -> Self {
        Self {
            context: self.context.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| p >= 0 && m.degree() as i64 == p)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Algebra homomorphism commuting with `d`, given the image of every coordinate of this
    /// form's context as a 0-form over `target`. Images of each affine group must sum to 1.
    pub fn substitute(&self, target: &Arc<VariableContext>, images: &[Self]) -> Result<Self> {
        let ctx = &self.context;
        if images.len() != ctx.num_coordinates() {
            return Err(Error::Substitution(format!(
                "{} images given for {} coordinates",
                images.len(),
                ctx.num_coordinates()
            )));
        }
        for (i, image) in images.iter().enumerate() {
            image.ensure_context(target)?;
            if image.terms.keys().any(|m| !m.exterior.is_empty()) {
                return Err(Error::Substitution(format!(
                    "image of {} is not a 0-form",
                    ctx.coordinates()[i].name
                )));
            }
        }
        for (g, group) in ctx.groups().iter().enumerate() {
            if group.kind != GroupKind::Affine {
                continue;
            }
            let mut sum = Self::zero(target);
            for i in ctx.group_range(g) {
                sum.add_in_place(&images[i]);
            }
            if sum != Self::one(target) {
                return Err(Error::Substitution(format!(
                    "images of group ({}) do not sum to 1",
                    group.names.join(",")
                )));
            }
        }

        let nvars = ctx.num_reduced();
        let polys: Vec<&Self> = (0..nvars)
            .map(|r| &images[ctx.reduced_to_full(r)])
            .collect();
        let diffs: Vec<Self> = polys.iter().map(|p| p.differential()).collect();
        let mut powers: HashMap<(usize, u32), Self> = HashMap::new();
        let mut out = Self::zero(target);
        for (mono, c) in &self.terms {
            let mut product = Self::constant(target, c.clone());
            for (v, &e) in mono.exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let power = power_cached(&mut powers, polys[v], v, e);
                product = product.wedge_unchecked(power);
            }
            for v in mono.exterior.indices() {
                product = product.wedge_unchecked(&diffs[v]);
            }
            out.add_in_place(&product);
        }
        Ok(out)
    }
}

fn power_cached<'a>(
    cache: &'a mut HashMap<(usize, u32), DifferentialForm>,
    base: &DifferentialForm,
    v: usize,
    e: u32,
) -> &'a DifferentialForm {
    if !cache.contains_key(&(v, e)) {
        let value = if e == 1 {
            base.clone()
        } else {
            power_cached(cache, base, v, e - 1).wedge_unchecked(base)
        };
        cache.insert((v, e), value);
    }
    &cache[&(v, e)]
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in mono.exponents.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.context.reduced_name(v).to_string()),
                    _ => factors.push(format!("{}^{e}", self.context.reduced_name(v))),
                }
            }
            if !mono.exterior.is_empty() {
                let word: Vec<String> = mono
                    .exterior
                    .indices()
                    .map(|v| format!("d{}", self.context.reduced_name(v)))
                    .collect();
                factors.push(word.join("^"));
            }
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std(m: usize) -> Arc<VariableContext> {
        VariableContext::standard(m)
    }

    fn x(ctx: &Arc<VariableContext>, i: usize) -> DifferentialForm {
        DifferentialForm::coordinate(ctx, i)
    }

    fn dx(ctx: &Arc<VariableContext>, i: usize) -> DifferentialForm {
        DifferentialForm::coordinate_differential(ctx, i)
    }

    #[test]
    fn exterior_order_and_sign() {
        let a = Exterior::from_indices([2]);
        let b = Exterior::from_indices([0, 1]);
        assert_eq!(a.wedge(b), Some((Exterior::from_indices([0, 1, 2]), false)));
        let c = Exterior::from_indices([1]);
        assert_eq!(a.wedge(c), Some((Exterior::from_indices([1, 2]), true)));
        assert_eq!(a.wedge(a), None);
        assert!(Exterior::from_indices([3]) < Exterior::from_indices([0, 1]));
        assert!(Exterior::from_indices([0, 3]) < Exterior::from_indices([1, 2]));
    }

    #[test]
    fn add_examples() {
        let ctx = std(2);
        let x1 = x(&ctx, 1);
        assert_eq!(x1.add(&x1).unwrap(), x1.scale(&integer(2)));
        assert!(dx(&ctx, 1).add(&dx(&ctx, 1).negate()).unwrap().is_zero());
        let a = x(&ctx, 1).wedge(&dx(&ctx, 2)).unwrap();
        let b = x(&ctx, 2).wedge(&dx(&ctx, 1)).unwrap();
        assert_eq!(a.add(&b).unwrap().to_string(), "x2*dx1 + x1*dx2");
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let a = x(&std(1), 1);
        let b = x(&std(2), 1);
        assert!(matches!(a.add(&b), Err(Error::ContextMismatch { .. })));
        assert!(matches!(a.wedge(&b), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn wedge_examples() {
        let ctx = std(2);
        assert_eq!(
            dx(&ctx, 2).wedge(&dx(&ctx, 1)).unwrap(),
            dx(&ctx, 1).wedge(&dx(&ctx, 2)).unwrap().negate()
        );
        assert!(dx(&ctx, 1).wedge(&dx(&ctx, 1)).unwrap().is_zero());
        let a = x(&ctx, 1).wedge(&dx(&ctx, 1)).unwrap();
        let b = x(&ctx, 2).wedge(&dx(&ctx, 2)).unwrap();
        assert_eq!(a.wedge(&b).unwrap().to_string(), "x1*x2*dx1^dx2");
    }

    #[test]
    fn differential_examples() {
        let ctx = std(1);
        let x1 = x(&ctx, 1);
        let sq = x1.wedge(&x1).unwrap();
        assert_eq!(sq.differential().to_string(), "2*x1*dx1");
        assert_eq!(x(&ctx, 0).differential(), dx(&ctx, 1).negate());
    }

    #[test]
    fn canonicalize_examples() {
        let ctx = std(1);
        assert_eq!(x(&ctx, 0).to_string(), "1 - x1");
        let raw = [
            RawTerm {
                coefficient: integer(1),
                powers: vec![(0, 1)],
                exterior: vec![1],
            },
            RawTerm {
                coefficient: integer(-1),
                powers: vec![(1, 1)],
                exterior: vec![0],
            },
        ];
        assert_eq!(
            DifferentialForm::canonicalize(&ctx, &raw)
                .unwrap()
                .to_string(),
            "dx1"
        );
        let ctx = std(3);
        let raw: Vec<_> = (0..=3)
            .map(|i| RawTerm {
                coefficient: integer(1),
                powers: vec![],
                exterior: vec![i],
            })
            .collect();
        assert!(DifferentialForm::canonicalize(&ctx, &raw)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn degree_component_examples() {
        let ctx = std(1);
        let f = x(&ctx, 1).add(&dx(&ctx, 1)).unwrap();
        assert_eq!(f.degree_component(0), x(&ctx, 1));
        assert_eq!(f.degree_component(1), dx(&ctx, 1));
        assert!(f.degree_component(-1).is_zero());
    }

    #[test]
    fn substitute_examples() {
        let ctx = std(1);
        let id = [x(&ctx, 0), x(&ctx, 1)];
        assert_eq!(x(&ctx, 1).substitute(&ctx, &id).unwrap(), x(&ctx, 1));

        // x_1 -> s + (1-s) x_1, x_0 -> (1-s) x_0
        let target = VariableContext::interval(1);
        let s = DifferentialForm::variable(&target, 0);
        let one_minus_s = DifferentialForm::one(&target).sub(&s).unwrap();
        let images = [
            one_minus_s.wedge(&x(&target, 1)).unwrap(),
            s.add(&one_minus_s.wedge(&x(&target, 2)).unwrap()).unwrap(),
        ];
        let expected = s
            .add(&x(&target, 2))
            .unwrap()
            .sub(&s.wedge(&x(&target, 2)).unwrap())
            .unwrap();
        assert_eq!(x(&ctx, 1).substitute(&target, &images).unwrap(), expected);
        // lexicographic exponent order puts (0,1) before (1,0)
        assert_eq!(expected.to_string(), "x1 + s - s*x1");
        assert!(matches!(
            x(&ctx, 1).substitute(&target, &images[..1]),
            Err(Error::Substitution(_))
        ));
        let bad = [s.clone(), s.clone()];
        assert!(x(&ctx, 1).substitute(&target, &bad).is_err());
    }

    #[test]
    fn substitute_into_mixed() {
        // dx_1 on Std(2) under x_j -> s x_j + Σ_{f(i)=j} t_i with f = (0,1)
        let ctx = std(2);
        let mixed = VariableContext::mixed(1, 2);
        let s = DifferentialForm::coordinate(&mixed, 0);
        let images: Vec<_> = (0..3)
            .map(|j| {
                let mut img = s.wedge(&x(&mixed, 3 + j)).unwrap();
                if j < 2 {
                    img = img.add(&x(&mixed, 1 + j)).unwrap();
                }
                img
            })
            .collect();
        let got = dx(&ctx, 1).substitute(&mixed, &images).unwrap();
        let expected = s
            .wedge(&dx(&mixed, 4))
            .unwrap()
            .add(&x(&mixed, 4).wedge(&dx(&mixed, 0)).unwrap())
            .unwrap()
            .add(&dx(&mixed, 2))
            .unwrap();
        assert_eq!(got, expected);
    }
}
