//! Verification suites: every identity of the contraction, checked exactly on a monomial
//! spanning set of `Ω_m`, reported as a list of nonzero residuals.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::context::VariableContext;
use crate::contraction::{
    commutator_defect, commutator_defect_with, contraction_defect, h_path, homotopy, k_path,
    side_condition_transform, CommutatorReading, ContractionOperator, Family, FormOperator,
};
use crate::derham::{
    elementary_projection, factorial, integrate, pullback, whitney_basis, whitney_form,
    whitney_form_indices,
};
use crate::error::Result;
use crate::form::{DifferentialForm, Exterior, Monomial, Rational};
use crate::simplex::{
    coface_factorizations, factor_through, injective_maps, monotone_maps, SimplicialMap,
};

/// `S(m, D) = { x^a dx_J : |a| ≤ D, J ⊆ {1..m} }` in canonical term order.
pub fn spanning_set(m: usize, max_degree: u32) -> Vec<DifferentialForm> {
    let ctx = VariableContext::standard(m);
    let mut exponents: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..m {
        exponents = exponents
            .into_iter()
            .flat_map(|v| {
                let used: u32 = v.iter().sum();
                (0..=max_degree - used).map(move |e| {
                    let mut v = v.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    let mut monomials: Vec<Monomial> = (0u64..(1 << m))
        .flat_map(|mask| {
            exponents.iter().map(move |e| Monomial {
                exterior: Exterior::from_indices((0..m).filter(|i| mask & (1 << i) != 0)),
                exponents: e.clone().into_boxed_slice(),
            })
        })
        .collect();
    monomials.sort();
    monomials
        .into_iter()
        .map(|mono| DifferentialForm::from_terms(&ctx, [(mono, Rational::one())]))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Defect {
    pub input: String,
    pub identity: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContractionReport {
    pub suite: String,
    pub m: usize,
    pub max_degree: u32,
    pub inputs_tested: usize,
    pub defects: Vec<Defect>,
}

impl ContractionReport {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

impl fmt::Display for ContractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} (m = {}, max degree {}): {} inputs, {} defects: {}",
            self.suite,
            self.m,
            self.max_degree,
            self.inputs_tested,
            self.defects.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for d in &self.defects {
            writeln!(
                f,
                "  [{}] input {}: residual {}",
                d.identity, d.input, d.residual
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Wff,
    Projector,
    ContractionH,
    ContractionK,
    MainTheorem,
    Naturality,
    SideConditions,
    Commutator,
    Morphism,
    Gauge,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Wff,
        Suite::Projector,
        Suite::ContractionH,
        Suite::ContractionK,
        Suite::MainTheorem,
        Suite::Naturality,
        Suite::SideConditions,
        Suite::Commutator,
        Suite::Morphism,
        Suite::Gauge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Wff => "wff",
            Suite::Projector => "projector",
            Suite::ContractionH => "contraction-h",
            Suite::ContractionK => "contraction-k",
            Suite::MainTheorem => "main-theorem",
            Suite::Naturality => "naturality",
            Suite::SideConditions => "side-conditions",
            Suite::Commutator => "commutator",
            Suite::Morphism => "morphism",
            Suite::Gauge => "gauge",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Bounds of one suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub m: usize,
    pub max_degree: u32,
    /// Largest source ordinal `[p]` for suites that range over maps `[p] -> [m]`.
    pub max_source: usize,
}

impl SuiteConfig {
    pub fn new(m: usize, max_degree: u32) -> Self {
        Self {
            m,
            max_degree,
            max_source: m.max(3),
        }
    }

    pub fn with_max_source(mut self, max_source: usize) -> Self {
        self.max_source = max_source;
        self
    }
}

fn residual(input: impl fmt::Display, identity: &str, value: &DifferentialForm) -> Option<Defect> {
    (!value.is_zero()).then(|| Defect {
        input: input.to_string(),
        identity: identity.to_string(),
        residual: value.to_string(),
    })
}

fn difference(
    input: impl fmt::Display,
    identity: &str,
    lhs: &DifferentialForm,
    rhs: &DifferentialForm,
) -> Result<Option<Defect>> {
    Ok(residual(input, identity, &lhs.sub(rhs)?))
}

/// Runs `check` over `items` in parallel; defects keep item order.
fn run_checks<T: Sync>(
    items: &[T],
    check: impl Fn(&T) -> Result<Vec<Defect>> + Sync,
) -> Result<(usize, Vec<Defect>)> {
    let per_item: Vec<Vec<Defect>> = items.par_iter().map(&check).collect::<Result<_>>()?;
    Ok((items.len(), per_item.into_iter().flatten().collect()))
}

fn homogeneous_degree(eta: &DifferentialForm) -> usize {
    eta.terms().next().map_or(0, |(mono, _)| mono.degree())
}

fn volume_form(n: usize) -> DifferentialForm {
    let ctx = VariableContext::standard(n);
    let mut out = DifferentialForm::one(&ctx);
    for r in 0..n {
        out = out.wedge_unchecked(&DifferentialForm::differential_variable(&ctx, r));
    }
    out
}

fn wff(config: &SuiteConfig) -> Result<(usize, Vec<Defect>)> {
    let m = config.m;
    enum Item {
        Top(SimplicialMap),
        Pullback(SimplicialMap, SimplicialMap),
        Differential(SimplicialMap),
        Tuple(Vec<usize>),
    }
    let mut items = Vec::new();
    for n in 0..=config.max_source {
        for f in monotone_maps(n, m) {
            items.push(Item::Top(f.clone()));
            items.push(Item::Differential(f.clone()));
            if f.is_injective() {
                for p in 0..=config.max_source {
                    for g in monotone_maps(p, m) {
                        items.push(Item::Pullback(f.clone(), g));
                    }
                }
            }
        }
    }
    for n in 0..m.min(3) {
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..=n {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..=m).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        items.extend(tuples.into_iter().map(Item::Tuple));
    }
    run_checks(&items, |item| {
        let mut defects = Vec::new();
        match item {
            Item::Top(f) => {
                let w = whitney_form(f);
                if f.is_injective() {
                    let scaled = volume_form(f.domain())
                        .scale(&Rational::from_integer(factorial(f.domain() as u32).into()));
                    defects.extend(difference(f, "f*w_f=n!dx", &pullback(f, &w)?, &scaled)?);
                } else {
                    defects.extend(residual(f, "w_f=0", &w));
                }
            }
            Item::Pullback(f, g) => {
                let mut rhs = DifferentialForm::zero(&VariableContext::standard(g.domain()));
                for h in factor_through(f, g) {
                    rhs.add_in_place(&whitney_form(&h));
                }
                let lhs = pullback(g, &whitney_form(f))?;
                defects.extend(difference(
                    format!("f={f}, g={g}"),
                    "g*w_f=sum w_h",
                    &lhs,
                    &rhs,
                )?);
            }
            Item::Differential(f) => {
                let mut rhs = DifferentialForm::zero(&VariableContext::standard(m));
                for k in 0..=f.domain() + 1 {
                    let sign = if k % 2 == 0 {
                        Rational::one()
                    } else {
                        -Rational::one()
                    };
                    for g in coface_factorizations(f, k) {
                        rhs.add_scaled_in_place(&whitney_form(&g), &sign);
                    }
                }
                let lhs = whitney_form(f).differential();
                defects.extend(difference(f, "dw_f=sum(-1)^k w_g", &lhs, &rhs)?);
            }
            Item::Tuple(indices) => {
                let ctx = VariableContext::standard(m);
                let n = indices.len() - 1;
                let lhs = whitney_form_indices(m, indices)?.differential();
                let mut wedge = DifferentialForm::constant(
                    &ctx,
                    Rational::from_integer(factorial(n as u32 + 1).into()),
                );
                for &i in indices {
                    wedge =
                        wedge.wedge_unchecked(&DifferentialForm::coordinate_differential(&ctx, i));
                }
                let mut sum = DifferentialForm::zero(&ctx);
                for i in 0..=m {
                    let mut extended = vec![i];
                    extended.extend_from_slice(indices);
                    sum.add_in_place(&whitney_form_indices(m, &extended)?);
                }
                let label = format!("{indices:?}");
                defects.extend(difference(&label, "dw_I=(n+1)!dx_I", &lhs, &wedge)?);
                defects.extend(difference(&label, "(n+1)!dx_I=sum_i w_iI", &wedge, &sum)?);
            }
        }
        Ok(defects)
    })
}

fn projector(config: &SuiteConfig) -> Result<(usize, Vec<Defect>)> {
    let m = config.m;
    let basis = whitney_basis(m);
    enum Item<'a> {
        Form(DifferentialForm),
        Elementary(&'a SimplicialMap),
    }
    let mut items: Vec<Item> = spanning_set(m, config.max_degree)
        .into_iter()
        .map(Item::Form)
        .collect();
    items.extend(basis.iter().map(|(f, _)| Item::Elementary(f)));
    let basis_ref = &basis;
    run_checks(&items, |item| {
        let mut defects = Vec::new();
        match item {
            Item::Form(eta) => {
                let once = elementary_projection(m, eta)?;
                let twice = elementary_projection(m, &once)?;
                defects.extend(difference(eta, "pi^2=pi", &twice, &once)?);
            }
            Item::Elementary(f) => {
                let f = *f;
                let w = whitney_form(f);
                defects.extend(difference(
                    f,
                    "pi(w_f)=w_f",
                    &elementary_projection(m, &w)?,
                    &w,
                )?);
                for (g, wg) in basis_ref.iter().filter(|(g, _)| g.domain() == f.domain()) {
                    let value = integrate(&pullback(f, wg)?)?;
                    let expected = if g == f {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    if value != expected {
                        defects.push(Defect {
                            input: format!("f={f}, g={g}"),
                            identity: "int f*w_g=delta".into(),
                            residual: (value - expected).to_string(),
                        });
                    }
                }
            }
        }
        Ok(defects)
    })
}

fn contraction(config: &SuiteConfig, family: Family) -> Result<(usize, Vec<Defect>)> {
    let m = config.m;
    let mut items = spanning_set(m, config.max_degree);
    items.extend(whitney_basis(m).into_iter().map(|(_, w)| w));
    let identity = format!("{0}d+d{0}=i*pi-Id", family.symbol());
    run_checks(&items, |eta| {
        let mut defects = Vec::new();
        defects.extend(residual(
            eta,
            &identity,
            &contraction_defect(m, eta, family)?,
        ));
        let value = homotopy(family, m, eta)?;
        let degree = homogeneous_degree(eta);
        let wrong_degree = value
            .terms()
            .any(|(mono, _)| degree == 0 || mono.degree() + 1 != degree);
        if wrong_degree {
            defects.push(Defect {
                input: eta.to_string(),
                identity: format!("deg {} = deg - 1", family.symbol()),
                residual: value.to_string(),
            });
        }
        Ok(defects)
    })
}

fn main_theorem(config: &SuiteConfig) -> Result<(usize, Vec<Defect>)> {
    let m = config.m;
    let spanning = spanning_set(m, config.max_degree);
    let maps: Vec<SimplicialMap> = (0..=m).flat_map(|n| injective_maps(n, m)).collect();
    let mut items: Vec<(Option<&SimplicialMap>, &DifferentialForm)> =
        spanning.iter().map(|eta| (None, eta)).collect();
    for f in &maps {
        items.extend(spanning.iter().map(|eta| (Some(f), eta)));
    }
    run_checks(&items, |&(f, eta)| {
        Ok(match f {
            None => difference(
                eta,
                "h=k",
                &homotopy(Family::DupontH, m, eta)?,
                &homotopy(Family::ManettiK, m, eta)?,
            )?,
            Some(f) => difference(
                format!("f={f}, {eta}"),
                "h_f=k_f",
                &h_path(f, eta)?,
                &k_path(f, eta)?,
            )?,
        }
        .into_iter()
        .collect())
    })
}

/// Which inductive case of `h_f = k_f` a pair `(f, η)` with monomial η falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathCase {
    /// `f : [0] -> [m]`.
    Base,
    /// `f(n)` absent from η, `q > n`, `|C ∩ f([n-1])| = n - 1`.
    OneMissing,
    /// `f(n)` absent from η, `q > n`, `|C ∩ f([n-1])| = n`.
    AllPresent,
    /// Anything else (degree vanishing or not of the inductive shape).
    Other,
}

/// Classifies `(f, η)` for a monomial `η = x^a dx_C` of `S(m, D)`.
pub fn classify_path_case(f: &SimplicialMap, eta: &DifferentialForm) -> PathCase {
    let n = f.domain();
    if n == 0 {
        return PathCase::Base;
    }
    let Some((mono, _)) = eta.terms().next() else {
        return PathCase::Other;
    };
    // reduced variable r is x_{r+1}
    let uses = |j: usize| j > 0 && (mono.exponents[j - 1] > 0 || mono.exterior.contains(j - 1));
    let last = f.apply(n);
    let q = mono.degree();
    if uses(last) || q <= n {
        return PathCase::Other;
    }
    let hits = f.values()[..n]
        .iter()
        .filter(|&&j| j > 0 && mono.exterior.contains(j - 1))
        .count();
    match hits {
        h if h == n - 1 => PathCase::OneMissing,
        h if h == n => PathCase::AllPresent,
        _ => PathCase::Other,
    }
}

/// Counts of `(f, η)` pairs per [`PathCase`] over injective `f` into `[m]` and `η ∈ S(m, D)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PathCaseCounts {
    pub base: usize,
    pub one_missing: usize,
    pub all_present: usize,
    pub other: usize,
}

pub fn path_case_counts(m: usize, max_degree: u32) -> PathCaseCounts {
    let mut counts = PathCaseCounts::default();
    let spanning = spanning_set(m, max_degree);
    for n in 0..=m {
        for f in injective_maps(n, m) {
            for eta in &spanning {
                match classify_path_case(&f, eta) {
                    PathCase::Base => counts.base += 1,
                    PathCase::OneMissing => counts.one_missing += 1,
                    PathCase::AllPresent => counts.all_present += 1,
                    PathCase::Other => counts.other += 1,
                }
            }
        }
    }
    counts
}

fn naturality(config: &SuiteConfig) -> Result<(usize, Vec<Defect>)> {
    let m = config.m;
    let families = [Family::ManettiK, Family::DupontH];
    let spanning = spanning_set(m, config.max_degree);
    // K_m(η) does not depend on g
    let images: Vec<Vec<DifferentialForm>> = spanning
        .par_iter()
        .map(|eta| {
            families
                .iter()
                .map(|&family| homotopy(family, m, eta))
                .collect()
        })
        .collect::<Result<_>>()?;
    let maps: Vec<SimplicialMap> = (0..=config.max_source)
        .flat_map(|p| monotone_maps(p, m))
        .collect();
    let items: Vec<(&SimplicialMap, usize)> = maps
        .iter()
        .flat_map(|g| (0..spanning.len()).map(move |i| (g, i)))
        .collect();
    run_checks(&items, |&(g, i)| {
        let eta = &spanning[i];
        let pulled = pullback(g, eta)?;
        let mut defects = Vec::new();
        for (family, image) in families.iter().zip(&images[i]) {
            let identity = format!("{0}_p g* = g* {0}_m", family.symbol());
            let lhs = homotopy(*family, g.domain(), &pulled)?;
            defects.extend(difference(
                format!("g={g}, {eta}"),
                &identity,
                &lhs,
                &pullback(g, image)?,
            )?);
        }
        Ok(defects)
    })
}

fn side_conditions(config: &SuiteConfig) -> Result<(usize, Vec<Defect>)> {
    let m = config.m;
    let mut items: Vec<(bool, DifferentialForm)> = spanning_set(m, config.max_degree)
        .into_iter()
        .map(|eta| (false, eta))
        .collect();
    items.extend(whitney_basis(m).into_iter().map(|(_, w)| (true, w)));
    run_checks(&items, |(elementary, eta)| {
        let mut defects = Vec::new();
        for family in [Family::ManettiK, Family::DupontH] {
            let s = family.symbol();
            let once = homotopy(family, m, eta)?;
            if *elementary {
                defects.extend(residual(eta, &format!("{s}i=0"), &once));
            }
            defects.extend(residual(
                eta,
                &format!("{s}^2=0"),
                &homotopy(family, m, &once)?,
            ));
            defects.extend(residual(
                eta,
                &format!("pi {s}=0"),
                &elementary_projection(m, &once)?,
            ));
        }
        Ok(defects)
    })
}

fn commutator(config: &SuiteConfig) -> Result<(usize, Vec<Defect>)> {
    let m = config.m;
    let spanning = spanning_set(m, config.max_degree);
    let maps: Vec<SimplicialMap> = (0..=m).flat_map(|n| injective_maps(n, m)).collect();
    let items: Vec<(&SimplicialMap, &DifferentialForm)> = maps
        .iter()
        .flat_map(|f| spanning.iter().map(move |eta| (f, eta)))
        .collect();
    run_checks(&items, |&(f, eta)| {
        let mut defects = Vec::new();
        for family in [Family::ManettiK, Family::DupontH] {
            let value = commutator_defect(family, f, eta)?;
            if value.is_zero() {
                continue;
            }
            let alternative =
                commutator_defect_with(family, f, eta, CommutatorReading::IdentityAtFirstFace)?;
            let note = if alternative.is_zero() {
                " (vanishes when P_{f d_0} = Id for all n)"
            } else {
                ""
            };
            defects.extend(residual(
                format!("f={f}, {eta}"),
                &format!("[{}_f,d]{note}", family.symbol()),
                &value,
            ));
        }
        Ok(defects)
    })
}

fn morphism(config: &SuiteConfig) -> Result<(usize, Vec<Defect>)> {
    let m = config.m;
    let spanning = spanning_set(m, config.max_degree);
    let basis = whitney_basis(m);
    let maps: Vec<SimplicialMap> = (0..=config.max_source)
        .flat_map(|p| monotone_maps(p, m))
        .collect();
    let mut items: Vec<(&SimplicialMap, &DifferentialForm, bool)> = Vec::new();
    for g in &maps {
        items.extend(basis.iter().map(|(_, w)| (g, w, true)));
        items.extend(spanning.iter().map(|eta| (g, eta, false)));
    }
    run_checks(&items, |&(g, eta, elementary)| {
        let p = g.domain();
        let label = format!("g={g}, {eta}");
        Ok(if elementary {
            // i_p ĝ = g* i_m with ĝ = π_p g* i_m
            let pulled = pullback(g, eta)?;
            difference(
                &label,
                "i_p g^ = g* i_m",
                &elementary_projection(p, &pulled)?,
                &pulled,
            )?
        } else {
            // ĝ π_m = π_p g*
            let lhs = elementary_projection(p, &pullback(g, &elementary_projection(m, eta)?)?)?;
            let rhs = elementary_projection(p, &pullback(g, eta)?)?;
            difference(&label, "g^ pi_m = pi_p g*", &lhs, &rhs)?
        }
        .into_iter()
        .collect())
    })
}

fn gauge(config: &SuiteConfig) -> Result<(usize, Vec<Defect>)> {
    let m = config.m;
    let k = ContractionOperator::homotopy(m, Family::ManettiK);
    let transform = side_condition_transform(&k);
    let mut items: Vec<(bool, DifferentialForm)> = spanning_set(m, config.max_degree)
        .into_iter()
        .map(|eta| (false, eta))
        .collect();
    items.extend(whitney_basis(m).into_iter().map(|(_, w)| (true, w)));
    run_checks(&items, |(elementary, eta)| {
        let mut defects = Vec::new();
        let first = transform.first(eta)?;
        defects.extend(difference(eta, "h1=k", &first, &k.apply(eta)?)?);
        let second = transform.second(eta)?;
        if *elementary {
            defects.extend(residual(eta, "h2 i=0", &second));
        }
        defects.extend(residual(
            eta,
            "pi h2=0",
            &elementary_projection(m, &second)?,
        ));
        defects.extend(residual(eta, "h2^2=0", &transform.second(&second)?));
        // still a contraction: h2 d + d h2 = i pi - Id
        let mut bracket = transform.second(&eta.differential())?;
        bracket.add_in_place(&second.differential());
        let expected = elementary_projection(m, eta)?.sub(eta)?;
        defects.extend(difference(eta, "h2d+dh2=i*pi-Id", &bracket, &expected)?);
        Ok(defects)
    })
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<ContractionReport> {
    let (inputs_tested, defects) = match suite {
        Suite::Wff => wff(config)?,
        Suite::Projector => projector(config)?,
        Suite::ContractionH => contraction(config, Family::DupontH)?,
        Suite::ContractionK => contraction(config, Family::ManettiK)?,
        Suite::MainTheorem => main_theorem(config)?,
        Suite::Naturality => naturality(config)?,
        Suite::SideConditions => side_conditions(config)?,
        Suite::Commutator => commutator(config)?,
        Suite::Morphism => morphism(config)?,
        Suite::Gauge => gauge(config)?,
    };
    Ok(ContractionReport {
        suite: suite.name().to_string(),
        m: config.m,
        max_degree: config.max_degree,
        inputs_tested,
        defects,
    })
}
