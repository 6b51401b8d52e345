//! The two contracting homotopies of `Ω_m` onto the Whitney forms.
//!
//! * `h` iterates vertex homotopies: `h_j` pulls back along the cone map `(s, v) ↦ s e_j + (1-s) v`
//!   and integrates the `ds` component over `[0, 1]`; `h_f = h_{f(n)} ∘ ⋯ ∘ h_{f(0)}`.
//! * `k` pulls back once along `((s, t), v) ↦ s v + Σ t_i e_{f(i)}` into `Ω̂_n ⊗ Ω_m` and
//!   integrates out the hat simplex.
//!
//! Both assemble as `Σ_f ω_f ∧ P_f(η)` over injective `f`. The defect functions return the
//! residual of each identity as a form, zero exactly when the identity holds at that input.

use num_bigint::BigInt;
use num_traits::One;

use crate::context::VariableContext;
use crate::derham::{
    elementary_coordinates, elementary_projection, expect_standard, integrate, pullback,
    simplex_monomial_integral, standard_dimension, whitney_form,
};
use crate::error::{Error, Result};
use crate::form::{DifferentialForm, Monomial, Rational};
use crate::simplex::{compose, face_map, SimplicialMap};

/// Which homotopy family to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    DupontH,
    ManettiK,
}

impl Family {
    pub fn symbol(self) -> &'static str {
        match self {
            Family::DupontH => "h",
            Family::ManettiK => "k",
        }
    }
}

/// A linear map on forms, evaluated pointwise.
pub trait FormOperator: Sync {
    fn apply(&self, eta: &DifferentialForm) -> Result<DifferentialForm>;
}

impl<F> FormOperator for F
where
    F: Fn(&DifferentialForm) -> Result<DifferentialForm> + Sync,
{
    fn apply(&self, eta: &DifferentialForm) -> Result<DifferentialForm> {
        self(eta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    DupontH,
    ManettiK,
    Projection,
    /// `i_m : C_m -> Ω_m`; rejects inputs outside `C_m`.
    Inclusion,
}

/// One of the four maps of the contraction at level `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ContractionOperator {
    pub m: usize,
    pub kind: OperatorKind,
}

impl ContractionOperator {
    pub fn new(m: usize, kind: OperatorKind) -> Self {
        Self { m, kind }
    }

    pub fn homotopy(m: usize, family: Family) -> Self {
        let kind = match family {
            Family::DupontH => OperatorKind::DupontH,
            Family::ManettiK => OperatorKind::ManettiK,
        };
        Self { m, kind }
    }

    /// Change in exterior degree.
    pub fn degree(&self) -> i32 {
        match self.kind {
            OperatorKind::DupontH | OperatorKind::ManettiK => -1,
            OperatorKind::Projection | OperatorKind::Inclusion => 0,
        }
    }

    pub fn evaluate(&self, eta: &DifferentialForm) -> Result<DifferentialForm> {
        match self.kind {
            OperatorKind::DupontH => dupont_h(self.m, eta),
            OperatorKind::ManettiK => manetti_k(self.m, eta),
            OperatorKind::Projection => elementary_projection(self.m, eta),
            OperatorKind::Inclusion => {
                elementary_coordinates(self.m, eta)?;
                Ok(eta.clone())
            }
        }
    }
}

impl FormOperator for ContractionOperator {
    fn apply(&self, eta: &DifferentialForm) -> Result<DifferentialForm> {
        self.evaluate(eta)
    }
}

/// Splits a form over `Interval(m)` as `ds ∧ α + β` with `α`, `β` free of `ds`.
pub fn decompose_ds(eta: &DifferentialForm) -> Result<(DifferentialForm, DifferentialForm)> {
    if eta.context().interval_dimension().is_none() {
        return Err(Error::ContextMismatch {
            expected: "Interval(m)".into(),
            got: eta.context().to_string(),
        });
    }
    let ctx = eta.context();
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for (mono, c) in eta.terms() {
        // ds is generator 0, so it already sits leftmost in the sorted word
        if mono.exterior.contains(0) {
            let exterior = crate::form::Exterior::from_indices(mono.exterior.indices().skip(1));
            alpha.push((
                Monomial {
                    exterior,
                    exponents: mono.exponents.clone(),
                },
                c.clone(),
            ));
        } else {
            beta.push((mono.clone(), c.clone()));
        }
    }
    Ok((
        DifferentialForm::from_terms(ctx, alpha),
        DifferentialForm::from_terms(ctx, beta),
    ))
}

fn check_vertex(j: usize, m: usize) -> Result<()> {
    if j > m {
        return Err(Error::VertexOutOfRange { vertex: j, m });
    }
    Ok(())
}

/// The vertex homotopy `h_j` on `Ω_m`.
pub fn h_vertex(j: usize, eta: &DifferentialForm) -> Result<DifferentialForm> {
    let m = standard_dimension(eta)?;
    check_vertex(j, m)?;
    let std = eta.context().clone();
    if eta.is_zero() {
        return Ok(DifferentialForm::zero(&std));
    }
    let interval = VariableContext::interval(m);
    let s = DifferentialForm::variable(&interval, 0);
    let one_minus_s = DifferentialForm::one(&interval).sub(&s)?;
    let images: Vec<DifferentialForm> = (0..=m)
        .map(|i| {
            let mut image =
                one_minus_s.wedge_unchecked(&DifferentialForm::coordinate(&interval, 1 + i));
            if i == j {
                image.add_in_place(&s);
            }
            image
        })
        .collect();
    let (alpha, _) = decompose_ds(&eta.substitute(&interval, &images)?)?;
    // ∫_0^1 s^c ds = 1/(c+1); remaining variables renumber from Interval to Std
    let terms = alpha.terms().map(|(mono, c)| {
        let power = mono.exponents[0];
        let coeff = c / Rational::from_integer(BigInt::from(power + 1));
        (
            Monomial {
                exterior: mono.exterior.shift_down(1),
                exponents: mono.exponents[1..].into(),
            },
            coeff,
        )
    });
    Ok(DifferentialForm::from_terms(&std, terms))
}

fn check_injective_into(f: &SimplicialMap, eta: &DifferentialForm) -> Result<()> {
    if !f.is_injective() {
        return Err(Error::NotInjective(f.values().to_vec()));
    }
    expect_standard(eta, f.codomain())
}

/// `h_f = h_{f(n)} ∘ ⋯ ∘ h_{f(0)}` for injective `f`.
pub fn h_path(f: &SimplicialMap, eta: &DifferentialForm) -> Result<DifferentialForm> {
    check_injective_into(f, eta)?;
    let mut out = eta.clone();
    for &v in f.values() {
        if out.is_zero() {
            break;
        }
        out = h_vertex(v, &out)?;
    }
    Ok(out)
}

/// Sums `ω_f ∧ P_f(η)` over all injective `f`.
fn assemble(
    m: usize,
    eta: &DifferentialForm,
    path: impl Fn(&SimplicialMap, &DifferentialForm) -> Result<DifferentialForm>,
) -> Result<DifferentialForm> {
    let mut out = DifferentialForm::zero(eta.context());
    for n in 0..=m {
        for f in crate::simplex::injective_maps(n, m) {
            let value = path(&f, eta)?;
            if !value.is_zero() {
                out.add_in_place(&whitney_form(&f).wedge_unchecked(&value));
            }
        }
    }
    Ok(out)
}

/// Dupont's homotopy `h_m(η) = Σ_f ω_f ∧ h_f(η)`.
pub fn dupont_h(m: usize, eta: &DifferentialForm) -> Result<DifferentialForm> {
    expect_standard(eta, m)?;
    let mut out = DifferentialForm::zero(eta.context());
    // h_f(η) for f extending `prefix` reuses h_prefix(η)
    fn walk(
        m: usize,
        prefix: &mut Vec<usize>,
        value: &DifferentialForm,
        out: &mut DifferentialForm,
    ) -> Result<()> {
        let next = prefix.last().map_or(0, |&v| v + 1);
        for v in next..=m {
            let image = h_vertex(v, value)?;
            if image.is_zero() {
                continue;
            }
            prefix.push(v);
            let f = SimplicialMap::from_values(prefix, m)?;
            out.add_in_place(&whitney_form(&f).wedge_unchecked(&image));
            walk(m, prefix, &image, out)?;
            prefix.pop();
        }
        Ok(())
    }
    walk(m, &mut Vec::new(), eta, &mut out)?;
    Ok(out)
}

/// `f̂^* η ∈ Ω̂_n ⊗ Ω_m` for `f̂((s, t), v) = s v + Σ_i t_i e_{f(i)}`.
pub fn khat_pullback(f: &SimplicialMap, eta: &DifferentialForm) -> Result<DifferentialForm> {
    check_injective_into(f, eta)?;
    let (n, m) = (f.domain(), f.codomain());
    let mixed = VariableContext::mixed(n, m);
    let s = DifferentialForm::coordinate(&mixed, 0);
    let x_offset = mixed.coordinate_index(1, 0);
    let images: Vec<DifferentialForm> = (0..=m)
        .map(|j| {
            let mut image = s.wedge_unchecked(&DifferentialForm::coordinate(&mixed, x_offset + j));
            for i in f.preimage(j) {
                image.add_in_place(&DifferentialForm::coordinate(&mixed, 1 + i));
            }
            image
        })
        .collect();
    eta.substitute(&mixed, &images)
}

/// `(∫_{Δ̂^n} ⊗ Id)`: keeps terms of full hat degree `n + 1` and integrates their hat part.
pub fn fiber_integrate(n: usize, xi: &DifferentialForm) -> Result<DifferentialForm> {
    let Some(m) = xi.context().mixed_dimension(n) else {
        return Err(Error::ContextMismatch {
            expected: format!("Mixed({n}, m)"),
            got: xi.context().to_string(),
        });
    };
    let hat_vars = n + 1;
    let std = VariableContext::standard(m);
    let terms = xi.terms().filter_map(|(mono, c)| {
        if mono.exterior.truncate(hat_vars).len() != hat_vars {
            return None;
        }
        let weight = simplex_monomial_integral(&mono.exponents[..hat_vars]);
        Some((
            Monomial {
                exterior: mono.exterior.shift_down(hat_vars),
                exponents: mono.exponents[hat_vars..].into(),
            },
            c * weight,
        ))
    });
    Ok(DifferentialForm::from_terms(&std, terms))
}

/// `k_f = (∫_{Δ̂^n} ⊗ Id) ∘ f̂^*`.
pub fn k_path(f: &SimplicialMap, eta: &DifferentialForm) -> Result<DifferentialForm> {
    check_injective_into(f, eta)?;
    let degree_bound = eta.terms().map(|(m, _)| m.degree()).max().unwrap_or(0);
    if degree_bound <= f.domain() {
        return Ok(DifferentialForm::zero(eta.context()));
    }
    fiber_integrate(f.domain(), &khat_pullback(f, eta)?)
}

/// `k_m(η) = Σ_f ω_f ∧ k_f(η)`.
pub fn manetti_k(m: usize, eta: &DifferentialForm) -> Result<DifferentialForm> {
    expect_standard(eta, m)?;
    assemble(m, eta, k_path)
}

pub fn homotopy(family: Family, m: usize, eta: &DifferentialForm) -> Result<DifferentialForm> {
    match family {
        Family::DupontH => dupont_h(m, eta),
        Family::ManettiK => manetti_k(m, eta),
    }
}

pub fn path_operator(
    family: Family,
    f: &SimplicialMap,
    eta: &DifferentialForm,
) -> Result<DifferentialForm> {
    match family {
        Family::DupontH => h_path(f, eta),
        Family::ManettiK => k_path(f, eta),
    }
}

/// `K(dη) + d(Kη) − π(η) + η`.
pub fn contraction_defect(
    m: usize,
    eta: &DifferentialForm,
    family: Family,
) -> Result<DifferentialForm> {
    expect_standard(eta, m)?;
    let mut out = homotopy(family, m, &eta.differential())?;
    out.add_in_place(&homotopy(family, m, eta)?.differential());
    out.add_scaled_in_place(&elementary_projection(m, eta)?, &-Rational::one());
    out.add_in_place(eta);
    Ok(out)
}

/// How to read `P_{fδ_0}` in the commutator formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutatorReading {
    /// `P_{fδ_0} = Id` only when `f` has domain `[0]`; otherwise the genuine operator.
    Literal,
    /// `P_{fδ_0} = Id` for every `f`.
    IdentityAtFirstFace,
}

/// `P_f(dη) + (-1)^n d P_f(η) − ∫_{Δ^n} f^*η + Σ_i (-1)^i P_{fδ_i}(η)` for injective `f : [n] -> [m]`.
pub fn commutator_defect(
    family: Family,
    f: &SimplicialMap,
    eta: &DifferentialForm,
) -> Result<DifferentialForm> {
    commutator_defect_with(family, f, eta, CommutatorReading::Literal)
}

pub fn commutator_defect_with(
    family: Family,
    f: &SimplicialMap,
    eta: &DifferentialForm,
    reading: CommutatorReading,
) -> Result<DifferentialForm> {
    check_injective_into(f, eta)?;
    let n = f.domain();
    let ctx = eta.context().clone();
    let mut out = path_operator(family, f, &eta.differential())?;
    let sign = if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    out.add_scaled_in_place(&path_operator(family, f, eta)?.differential(), &sign);
    let integral = integrate(&pullback(f, eta)?)?;
    out.add_scaled_in_place(&DifferentialForm::one(&ctx), &-integral);
    if n == 0 {
        out.add_in_place(eta);
    } else {
        for i in 0..=n {
            let face = compose(f, &face_map(n, i)?)?;
            let value = if i == 0 && reading == CommutatorReading::IdentityAtFirstFace {
                eta.clone()
            } else {
                path_operator(family, &face, eta)?
            };
            let sign = if i % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            out.add_scaled_in_place(&value, &sign);
        }
    }
    Ok(out)
}

/// `K_p(g^*η) − g^*(K_m η)` for `g : [p] -> [m]`.
pub fn naturality_defect(
    g: &SimplicialMap,
    eta: &DifferentialForm,
    family: Family,
) -> Result<DifferentialForm> {
    let lhs = homotopy(family, g.domain(), &pullback(g, eta)?)?;
    let rhs = pullback(g, &homotopy(family, g.codomain(), eta)?)?;
    lhs.sub(&rhs)
}

/// Normalizes a contracting homotopy `K` so that the side conditions hold:
/// `H₁ = (dK + Kd) K (dK + Kd)`, then `H₂ = −H₁ d H₁`.
pub struct SideConditionTransform<'a> {
    inner: &'a dyn FormOperator,
}

pub fn side_condition_transform(inner: &dyn FormOperator) -> SideConditionTransform<'_> {
    SideConditionTransform { inner }
}

impl<'a> SideConditionTransform<'a> {
    fn bracket(&self, eta: &DifferentialForm) -> Result<DifferentialForm> {
        let mut out = self.inner.apply(eta)?.differential();
        out.add_in_place(&self.inner.apply(&eta.differential())?);
        Ok(out)
    }

    pub fn first(&self, eta: &DifferentialForm) -> Result<DifferentialForm> {
        let inner = self.inner.apply(&self.bracket(eta)?)?;
        self.bracket(&inner)
    }

    pub fn second(&self, eta: &DifferentialForm) -> Result<DifferentialForm> {
        let once = self.first(eta)?;
        Ok(self.first(&once.differential())?.negate())
    }

    pub fn first_stage(&self) -> impl FormOperator + '_ {
        move |eta: &DifferentialForm| self.first(eta)
    }

    pub fn second_stage(&self) -> impl FormOperator + '_ {
        move |eta: &DifferentialForm| self.second(eta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{integer, rational};
    use crate::text::{parse_form, parse_form_in};

    fn map(values: &[usize], codomain: usize) -> SimplicialMap {
        SimplicialMap::from_values(values, codomain).unwrap()
    }

    fn form(text: &str, m: usize) -> DifferentialForm {
        parse_form(text, m).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let ctx = VariableContext::interval(1);
        let eta = parse_form_in("(1 - x1)", &ctx);
        assert!(eta.is_err());
        let eta = parse_form_in("ds - x1*ds + dx1 - s*dx1", &ctx).unwrap();
        let (a, b) = decompose_ds(&eta).unwrap();
        assert_eq!(a, parse_form_in("1 - x1", &ctx).unwrap());
        assert_eq!(b, parse_form_in("dx1 - s*dx1", &ctx).unwrap());

        let (a, b) = decompose_ds(&parse_form_in("dx1", &ctx).unwrap()).unwrap();
        assert!(a.is_zero());
        assert_eq!(b, parse_form_in("dx1", &ctx).unwrap());

        let (a, b) = decompose_ds(&parse_form_in("ds", &ctx).unwrap()).unwrap();
        assert_eq!(a, DifferentialForm::one(&ctx));
        assert!(b.is_zero());

        assert!(decompose_ds(&form("dx1", 1)).is_err());
    }

    #[test]
    fn h_vertex_examples() {
        assert_eq!(h_vertex(0, &form("dx1", 1)).unwrap(), form("-x1", 1));
        assert_eq!(h_vertex(1, &form("dx1", 1)).unwrap(), form("1 - x1", 1));
        assert_eq!(
            h_vertex(0, &form("x1*dx1", 1)).unwrap(),
            form("-1/2*x1^2", 1)
        );
        assert!(h_vertex(0, &form("x1", 1)).unwrap().is_zero());
        assert!(matches!(
            h_vertex(2, &form("dx1", 1)),
            Err(Error::VertexOutOfRange { vertex: 2, m: 1 })
        ));
    }

    #[test]
    fn h_path_examples() {
        assert!(h_path(&map(&[0, 1], 1), &form("dx1", 1)).unwrap().is_zero());
        let eta = form("dx1^dx2", 2);
        assert_eq!(h_path(&map(&[0, 1], 2), &eta).unwrap(), form("1/2*x2", 2));
        assert!(h_path(&map(&[0], 2), &form("x1 + x2^2", 2))
            .unwrap()
            .is_zero());
        assert!(matches!(
            h_path(&map(&[0, 0], 2), &eta),
            Err(Error::NotInjective(_))
        ));
    }

    #[test]
    fn h_path_order_matters() {
        // h_0 then h_1 (as composed) versus h_1 then h_0
        let eta = form("dx1^dx2", 2);
        let reversed = h_vertex(0, &h_vertex(1, &eta).unwrap()).unwrap();
        assert_eq!(reversed, form("-1/2*x2", 2));
        assert_ne!(reversed, h_path(&map(&[0, 1], 2), &eta).unwrap());
    }

    #[test]
    fn dupont_h_examples() {
        assert!(dupont_h(1, &form("dx1", 1)).unwrap().is_zero());
        assert_eq!(
            dupont_h(1, &form("x1*dx1", 1)).unwrap(),
            form("1/2*x1 - 1/2*x1^2", 1)
        );
        for m in 0..=3 {
            assert!(dupont_h(m, &form("7/3", m)).unwrap().is_zero());
        }
    }

    #[test]
    fn khat_pullback_examples() {
        let mixed = VariableContext::mixed(1, 2);
        let got = khat_pullback(&map(&[0, 1], 2), &form("x2", 2)).unwrap();
        assert_eq!(got, parse_form_in("s*x2", &mixed).unwrap());
        let got = khat_pullback(&map(&[0, 1], 2), &form("dx1", 2)).unwrap();
        assert_eq!(got, parse_form_in("s*dx1 + x1*ds + dt1", &mixed).unwrap());
        let mixed = VariableContext::mixed(0, 1);
        let got = khat_pullback(&map(&[0], 1), &form("x0", 1)).unwrap();
        assert_eq!(got, parse_form_in("s*x0 + t0", &mixed).unwrap());
    }

    #[test]
    fn fiber_integrate_examples() {
        let mixed = VariableContext::mixed(1, 2);
        let xi = parse_form_in("-x2*ds^dt1", &mixed).unwrap();
        assert_eq!(fiber_integrate(1, &xi).unwrap(), form("1/2*x2", 2));
        let xi = parse_form_in("s*x1*dx1", &mixed).unwrap();
        assert!(fiber_integrate(1, &xi).unwrap().is_zero());
        // ∫ s^c ds over Δ̂^0 is -∫_0^1 (1-t)^c dt = -1/(c+1)
        let mixed = VariableContext::mixed(0, 1);
        for c in 0..5 {
            let xi = parse_form_in(&format!("s^{c}*x1^2*ds"), &mixed).unwrap();
            let expected = form("x1^2", 1).scale(&rational(-1, c + 1));
            assert_eq!(fiber_integrate(0, &xi).unwrap(), expected);
        }
        assert!(fiber_integrate(2, &xi_dummy()).is_err());
    }

    fn xi_dummy() -> DifferentialForm {
        parse_form_in("ds", &VariableContext::mixed(1, 1)).unwrap()
    }

    #[test]
    fn k_path_examples() {
        assert_eq!(
            k_path(&map(&[0], 1), &form("dx1", 1)).unwrap(),
            form("-x1", 1)
        );
        assert_eq!(
            k_path(&map(&[0, 1], 2), &form("dx1^dx2", 2)).unwrap(),
            form("1/2*x2", 2)
        );
        assert!(k_path(&map(&[0, 1], 1), &form("dx1", 1)).unwrap().is_zero());
    }

    #[test]
    fn manetti_k_examples() {
        assert!(manetti_k(1, &form("dx1", 1)).unwrap().is_zero());
        assert_eq!(
            manetti_k(1, &form("x1*dx1", 1)).unwrap(),
            form("1/2*x1 - 1/2*x1^2", 1)
        );
        assert!(manetti_k(1, &form("x1^2", 1)).unwrap().is_zero());
    }

    /// Closed form of `h_0` on `x_1^{k_1}⋯x_m^{k_m} dx_{c_1}∧⋯∧dx_{c_l}` (no `x_0`):
    /// `x^k/(Σk + l) · Σ_i (-1)^i x_{c_i} dx_{c_1}∧⋯\widehat{dx_{c_i}}⋯∧dx_{c_l}`.
    fn h0_closed_form(m: usize, exponents: &[u32], word: &[usize]) -> DifferentialForm {
        let ctx = VariableContext::standard(m);
        let l = word.len();
        let mut monomial = DifferentialForm::one(&ctx);
        for (v, &e) in exponents.iter().enumerate() {
            for _ in 0..e {
                monomial = monomial
                    .wedge(&DifferentialForm::coordinate(&ctx, v + 1))
                    .unwrap();
            }
        }
        let mut sum = DifferentialForm::zero(&ctx);
        for i in 0..l {
            let mut term = DifferentialForm::coordinate(&ctx, word[i]);
            for (q, &c) in word.iter().enumerate() {
                if q != i {
                    term = term
                        .wedge(&DifferentialForm::coordinate_differential(&ctx, c))
                        .unwrap();
                }
            }
            // (-1)^i with i counted from 1
            let sign = if (i + 1) % 2 == 0 {
                integer(1)
            } else {
                integer(-1)
            };
            sum = sum.add(&term.scale(&sign)).unwrap();
        }
        let total: u32 = exponents.iter().sum::<u32>() + l as u32;
        if total == 0 {
            return DifferentialForm::zero(&ctx);
        }
        monomial
            .wedge(&sum)
            .unwrap()
            .scale(&rational(1, total as i64))
    }

    #[test]
    fn h0_matches_closed_form() {
        for m in 1..=3usize {
            let ctx = VariableContext::standard(m);
            for mask in 0u32..(1 << m) {
                let word: Vec<usize> = (1..=m).filter(|&c| mask & (1 << (c - 1)) != 0).collect();
                for exps in exponent_vectors(m, 3) {
                    let mut eta = DifferentialForm::one(&ctx);
                    for (v, &e) in exps.iter().enumerate() {
                        for _ in 0..e {
                            eta = eta
                                .wedge(&DifferentialForm::coordinate(&ctx, v + 1))
                                .unwrap();
                        }
                    }
                    for &c in &word {
                        eta = eta
                            .wedge(&DifferentialForm::coordinate_differential(&ctx, c))
                            .unwrap();
                    }
                    let expected = h0_closed_form(m, &exps, &word);
                    assert_eq!(h_vertex(0, &eta).unwrap(), expected, "{eta}");
                    assert_eq!(k_path(&map(&[0], m), &eta).unwrap(), expected, "{eta}");
                }
            }
        }
    }

    fn exponent_vectors(vars: usize, max_total: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..vars {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    let used: u32 = v.iter().sum();
                    (0..=max_total - used).map(move |e| {
                        let mut v = v.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn contraction_defect_examples() {
        for family in [Family::DupontH, Family::ManettiK] {
            assert!(contraction_defect(1, &form("x1^2", 1), family)
                .unwrap()
                .is_zero());
            assert!(contraction_defect(1, &form("dx1", 1), family)
                .unwrap()
                .is_zero());
            for m in 0..=2 {
                for (_, w) in crate::derham::whitney_basis(m) {
                    assert!(contraction_defect(m, &w, family).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn commutator_examples() {
        for family in [Family::DupontH, Family::ManettiK] {
            assert!(commutator_defect(family, &map(&[0], 1), &form("x1", 1))
                .unwrap()
                .is_zero());
            assert!(commutator_defect(family, &map(&[0, 1], 1), &form("dx1", 1))
                .unwrap()
                .is_zero());
            assert!(commutator_defect(family, &map(&[1, 2], 2), &form("0", 2))
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn naturality_examples() {
        let d1 = face_map(1, 1).unwrap();
        assert!(naturality_defect(&d1, &form("dx1", 1), Family::ManettiK)
            .unwrap()
            .is_zero());
        let d0 = face_map(2, 0).unwrap();
        assert!(naturality_defect(&d0, &form("x2*dx2", 2), Family::ManettiK)
            .unwrap()
            .is_zero());
        let id = SimplicialMap::identity(2);
        assert!(
            naturality_defect(&id, &form("x1^2*dx1^dx2 + x2*dx1", 2), Family::DupontH)
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn side_condition_transform_examples() {
        let k = ContractionOperator::homotopy(1, Family::ManettiK);
        let gauge = side_condition_transform(&k);
        for text in ["x1^2", "x1*dx1", "x1^3*dx1", "dx1", "x1"] {
            let eta = form(text, 1);
            assert_eq!(gauge.first(&eta).unwrap(), k.evaluate(&eta).unwrap());
            let h2 = gauge.second(&eta).unwrap();
            assert!(gauge.second(&h2).unwrap().is_zero());
        }
        let zero = |eta: &DifferentialForm| Ok(DifferentialForm::zero(eta.context()));
        let gauge = side_condition_transform(&zero);
        assert!(gauge.second(&form("1", 0)).unwrap().is_zero());
    }

    #[test]
    fn operator_kinds() {
        let pi = ContractionOperator::new(1, OperatorKind::Projection);
        assert_eq!(pi.evaluate(&form("x1^2", 1)).unwrap(), form("x1", 1));
        let inc = ContractionOperator::new(1, OperatorKind::Inclusion);
        assert_eq!(inc.evaluate(&form("dx1", 1)).unwrap(), form("dx1", 1));
        assert!(inc.evaluate(&form("x1^2", 1)).is_err());
        assert_eq!(
            ContractionOperator::homotopy(2, Family::DupontH).degree(),
            -1
        );
        assert_eq!(pi.degree(), 0);
    }
}
