//! The simplicial DG algebra `Ω_•`: pullbacks, Whitney elementary forms, integration over the
//! standard simplex and the Whitney projection onto elementary forms.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::context::{GroupKind, VariableContext};
use crate::error::{Error, Result};
use crate::form::{DifferentialForm, Rational, RawTerm};
use crate::simplex::{injective_maps, SimplicialMap};

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `∫ y_1^{k_1} ⋯ y_r^{k_r} dy_1 ∧ ⋯ ∧ dy_r` over the standard `r`-simplex, `r = exponents.len()`.
pub fn simplex_monomial_integral(exponents: &[u32]) -> Rational {
    let total: u32 = exponents.iter().sum::<u32>() + exponents.len() as u32;
    let numer = exponents
        .iter()
        .fold(BigUint::one(), |acc, &k| acc * factorial(k));
    BigRational::new(numer.into(), factorial(total).into())
}

pub(crate) fn expect_standard(form: &DifferentialForm, m: usize) -> Result<()> {
    form.ensure_context(&VariableContext::standard(m))
}

pub(crate) fn standard_dimension(form: &DifferentialForm) -> Result<usize> {
    form.context()
        .standard_dimension()
        .ok_or_else(|| Error::ContextMismatch {
            expected: "Std(m)".into(),
            got: form.context().to_string(),
        })
}

/// `f^* η` for `f : [n] -> [m]`, via `x_j ↦ Σ_{f(i) = j} x_i`.
pub fn pullback(f: &SimplicialMap, eta: &DifferentialForm) -> Result<DifferentialForm> {
    expect_standard(eta, f.codomain())?;
    let target = VariableContext::standard(f.domain());
    let images: Vec<DifferentialForm> = (0..=f.codomain())
        .map(|j| {
            let mut image = DifferentialForm::zero(&target);
            for i in f.preimage(j) {
                image.add_in_place(&DifferentialForm::coordinate(&target, i));
            }
            image
        })
        .collect();
    eta.substitute(&target, &images)
}

/// `ω_{i_0 … i_k} = k! Σ_r (-1)^r x_{i_r} dx_{i_0} ∧ ⋯ \widehat{dx_{i_r}} ⋯ ∧ dx_{i_k}` on `Std(m)`
/// for an arbitrary index tuple (alternating in the indices).
pub fn whitney_form_indices(m: usize, indices: &[usize]) -> Result<DifferentialForm> {
    let ctx = VariableContext::standard(m);
    if let Some(&bad) = indices.iter().find(|&&i| i > m) {
        return Err(Error::ValueOutOfRange {
            value: bad,
            codomain: m,
        });
    }
    if indices.is_empty() {
        return Ok(DifferentialForm::zero(&ctx));
    }
    let k = indices.len() - 1;
    let scale = Rational::from_integer(factorial(k as u32).into());
    let raw: Vec<RawTerm> = (0..=k)
        .map(|r| RawTerm {
            coefficient: if r % 2 == 0 {
                scale.clone()
            } else {
                -scale.clone()
            },
            powers: vec![(indices[r], 1)],
            exterior: indices
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != r)
                .map(|(_, &i)| i)
                .collect(),
        })
        .collect();
    DifferentialForm::canonicalize(&ctx, &raw)
}

/// The Whitney elementary form `ω_f` of `f : [k] -> [m]`, a `k`-form on `Std(m)`.
pub fn whitney_form(f: &SimplicialMap) -> DifferentialForm {
    whitney_form_indices(f.codomain(), f.values()).expect("map values lie in the codomain")
}

fn integrate_top(form: &DifferentialForm, dim: usize) -> Rational {
    let mut total = Rational::zero();
    for (mono, c) in form.terms() {
        if mono.degree() == dim {
            total += c * simplex_monomial_integral(&mono.exponents);
        }
    }
    total
}

/// `∫_{Δ^n} η` for η over `Std(n)`: zero off the top degree.
pub fn integrate(eta: &DifferentialForm) -> Result<Rational> {
    let n = standard_dimension(eta)?;
    Ok(integrate_top(eta, n))
}

/// `∫_{Δ̂^n} η` for η over `Hat(n)` (coordinates `s, t_0, …, t_n`, dimension `n + 1`).
pub fn integrate_hat(eta: &DifferentialForm) -> Result<Rational> {
    let Some(n) = eta.context().hat_dimension() else {
        return Err(Error::ContextMismatch {
            expected: "Hat(n)".into(),
            got: eta.context().to_string(),
        });
    };
    debug_assert!(matches!(eta.context().groups(), [g] if g.kind == GroupKind::Affine));
    Ok(integrate_top(eta, n + 1))
}

/// `(f, ω_f)` for every injective `f : [k] -> [m]`, `k = 0..=m`.
pub fn whitney_basis(m: usize) -> Vec<(SimplicialMap, DifferentialForm)> {
    (0..=m)
        .flat_map(|k| injective_maps(k, m))
        .map(|f| {
            let w = whitney_form(&f);
            (f, w)
        })
        .collect()
}

/// `π_m(η) = Σ_f (∫_{Δ^k} f^*η) ω_f` over injective `f`.
pub fn elementary_projection(m: usize, eta: &DifferentialForm) -> Result<DifferentialForm> {
    expect_standard(eta, m)?;
    let mut out = DifferentialForm::zero(eta.context());
    for k in 0..=m {
        for f in injective_maps(k, m) {
            let c = integrate(&pullback(&f, eta)?)?;
            if !c.is_zero() {
                out.add_scaled_in_place(&whitney_form(&f), &c);
            }
        }
    }
    Ok(out)
}

/// Coefficients of a form of `C_m` in the Whitney basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryCoordinates {
    pub m: usize,
    pub entries: BTreeMap<SimplicialMap, Rational>,
}

impl ElementaryCoordinates {
    pub fn reconstruct(&self) -> DifferentialForm {
        let mut out = DifferentialForm::zero(&VariableContext::standard(self.m));
        for (f, c) in &self.entries {
            out.add_scaled_in_place(&whitney_form(f), c);
        }
        out
    }
}

/// Reads off Whitney coordinates through the integration pairing and checks the result.
pub fn elementary_coordinates(m: usize, eta: &DifferentialForm) -> Result<ElementaryCoordinates> {
    expect_standard(eta, m)?;
    let mut entries = BTreeMap::new();
    for k in 0..=m {
        for f in injective_maps(k, m) {
            let c = integrate(&pullback(&f, eta)?)?;
            if !c.is_zero() {
                entries.insert(f, c);
            }
        }
    }
    let coords = ElementaryCoordinates { m, entries };
    if coords.reconstruct() != *eta {
        return Err(Error::NotElementary { m });
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{integer, rational};
    use crate::simplex::face_map;
    use crate::text::{parse_form, parse_form_in};

    fn map(values: &[usize], codomain: usize) -> SimplicialMap {
        SimplicialMap::from_values(values, codomain).unwrap()
    }

    #[test]
    fn pullback_examples() {
        let w = whitney_form(&map(&[0, 1], 2));
        let got = pullback(&face_map(2, 2).unwrap(), &w).unwrap();
        assert_eq!(got, parse_form("dx1", 1).unwrap());
        assert_eq!(got, whitney_form(&SimplicialMap::identity(1)));

        let got = pullback(&map(&[1], 1), &parse_form("x1", 1).unwrap()).unwrap();
        assert_eq!(got.as_constant(), Some(integer(1)));

        let got = pullback(&map(&[0, 0], 0), &parse_form("x0", 0).unwrap()).unwrap();
        assert_eq!(got.as_constant(), Some(integer(1)));

        assert!(pullback(&map(&[0], 1), &parse_form("x1", 2).unwrap()).is_err());
    }

    #[test]
    fn whitney_examples() {
        assert_eq!(whitney_form(&SimplicialMap::identity(1)).to_string(), "dx1");
        assert!(whitney_form(&map(&[0, 0], 2)).is_zero());
        assert_eq!(
            whitney_form(&map(&[0, 2], 2)),
            parse_form("dx2 + x2*dx1 - x1*dx2", 2).unwrap()
        );
        assert_eq!(whitney_form(&map(&[1], 1)).to_string(), "x1");
        assert_eq!(
            whitney_form_indices(2, &[2, 0]).unwrap(),
            whitney_form(&map(&[0, 2], 2)).negate()
        );
        assert!(whitney_form_indices(2, &[3]).is_err());
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(
            integrate(&parse_form("dx1", 1).unwrap()).unwrap(),
            integer(1)
        );
        assert_eq!(
            integrate(&parse_form("x1*dx1", 1).unwrap()).unwrap(),
            rational(1, 2)
        );
        assert_eq!(
            integrate(&parse_form("x1", 2).unwrap()).unwrap(),
            integer(0)
        );
        assert_eq!(
            integrate(&parse_form("x1*x2*dx1^dx2", 2).unwrap()).unwrap(),
            rational(1, 24)
        );
        assert_eq!(integrate(&parse_form("3", 0).unwrap()).unwrap(), integer(3));
        let hat = VariableContext::hat(1);
        assert!(integrate(&parse_form_in("dt1", &hat).unwrap()).is_err());
    }

    #[test]
    fn integrate_hat_examples() {
        let hat = VariableContext::hat(1);
        let f = parse_form_in("ds^dt1", &hat).unwrap();
        assert_eq!(integrate_hat(&f).unwrap(), rational(-1, 2));
        let f = parse_form_in("dt0^dt1", &hat).unwrap();
        assert_eq!(integrate_hat(&f).unwrap(), rational(1, 2));
        let f = parse_form_in("s*dt0^dt1", &hat).unwrap();
        assert_eq!(integrate_hat(&f).unwrap(), rational(1, 6));
        assert!(integrate_hat(&parse_form("dx1", 1).unwrap()).is_err());
    }

    /// Full-coordinate presentation, independent of the canonical route:
    /// ∫ x_0^{k_0} ⋯ x_n^{k_n} dx_0 ∧ ⋯ \widehat{dx_i} ⋯ ∧ dx_n = (-1)^i Π k_j! / (Σ k_j + n)!.
    #[test]
    fn full_coordinate_formula_agrees() {
        for n in 1..=3usize {
            for i in 0..=n {
                for k0 in 0..=2u32 {
                    for k1 in 0..=2u32 {
                        let mut ks = vec![0u32; n + 1];
                        ks[0] = k0;
                        ks[n] += k1;
                        let raw = RawTerm {
                            coefficient: integer(1),
                            powers: ks.iter().enumerate().map(|(j, &k)| (j, k)).collect(),
                            exterior: (0..=n).filter(|&j| j != i).collect(),
                        };
                        let ctx = VariableContext::standard(n);
                        let form = DifferentialForm::canonicalize(&ctx, &[raw]).unwrap();
                        let numer: BigUint =
                            ks.iter().fold(BigUint::one(), |a, &k| a * factorial(k));
                        let total = ks.iter().sum::<u32>() + n as u32;
                        let mut expected = BigRational::new(numer.into(), factorial(total).into());
                        if i % 2 == 1 {
                            expected = -expected;
                        }
                        assert_eq!(integrate(&form).unwrap(), expected, "n={n} i={i} ks={ks:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn projection_examples() {
        let got = elementary_projection(1, &parse_form("x1^2", 1).unwrap()).unwrap();
        assert_eq!(got, parse_form("x1", 1).unwrap());
        let got = elementary_projection(1, &parse_form("dx1", 1).unwrap()).unwrap();
        assert_eq!(got, parse_form("dx1", 1).unwrap());
        for m in 0..=3 {
            for (_, w) in whitney_basis(m) {
                assert_eq!(elementary_projection(m, &w).unwrap(), w);
            }
        }
    }

    #[test]
    fn coordinates_examples() {
        let c = elementary_coordinates(1, &parse_form("dx1", 1).unwrap()).unwrap();
        assert_eq!(
            c.entries.into_iter().collect::<Vec<_>>(),
            vec![(SimplicialMap::identity(1), integer(1))]
        );
        let c = elementary_coordinates(1, &parse_form("x0 + 2*x1", 1).unwrap()).unwrap();
        assert_eq!(
            c.entries.into_iter().collect::<Vec<_>>(),
            vec![(map(&[0], 1), integer(1)), (map(&[1], 1), integer(2))]
        );
        assert_eq!(
            elementary_coordinates(1, &parse_form("x1^2", 1).unwrap()),
            Err(Error::NotElementary { m: 1 })
        );
    }
}
