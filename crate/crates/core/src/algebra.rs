//! Catalog of quadratic realizations of three-dimensional Lie algebras
//! inside the polynomial Moyal algebra, together with the machinery the
//! calculi are built on: structure-constant extraction, Casimir and
//! centralizer checks, outer-derivation actions, infeasibility certificates
//! for inner representatives, and localization by a central element.

use crate::linalg::{self, QMatrix, SolveOutcome};
use crate::scalar::{GaussianRational, Scalar};
use crate::weyl::{Mono, Var, WeylElement};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum AlgebraError {
    #[error("unknown algebra `{0}`")]
    UnknownName(String),
    #[error("parameter nu must be nonzero for h1")]
    ZeroNu,
    #[error("commutator of pair {pair} does not lie in the span of i*theta*(generators + 1)")]
    SpanFailure { pair: String },
    #[error("generators must have theta-free coefficients for the linear solve")]
    ThetaDependentBasis,
    #[error("localized elements belong to different algebras")]
    MixedAlgebras,
    #[error("{0}")]
    NotApplicable(String),
}

/// Identifies which localization a [`Localized`] element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraId {
    Su2,
    Sl2r,
    E2,
    Iso11,
    H1,
    Family,
}

/// Catalog name plus exact parameters where the family has any.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraName {
    Su2,
    Sl2r,
    E2,
    Iso11,
    H1 { mu: GaussianRational, nu: GaussianRational },
    /// No-Casimir family with bracket `[x1,x2] = c x3 + h x2`,
    /// `[x2,x3] = 0`, `[x3,x1] = b x2 - h x3`.
    Family {
        b: GaussianRational,
        c: GaussianRational,
        h: GaussianRational,
    },
}

impl AlgebraName {
    pub fn id(&self) -> AlgebraId {
        match self {
            AlgebraName::Su2 => AlgebraId::Su2,
            AlgebraName::Sl2r => AlgebraId::Sl2r,
            AlgebraName::E2 => AlgebraId::E2,
            AlgebraName::Iso11 => AlgebraId::Iso11,
            AlgebraName::H1 { .. } => AlgebraId::H1,
            AlgebraName::Family { .. } => AlgebraId::Family,
        }
    }
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraName::Su2 => write!(f, "su2"),
            AlgebraName::Sl2r => write!(f, "sl2r"),
            AlgebraName::E2 => write!(f, "e2"),
            AlgebraName::Iso11 => write!(f, "iso11"),
            AlgebraName::H1 { mu, nu } => write!(f, "h1(mu={},nu={})", mu, nu),
            AlgebraName::Family { b, c, h } => write!(f, "family(b={},c={},h={})", b, c, h),
        }
    }
}

/// Antisymmetric structure tensor `f_{ab}^c` over [`Scalar`] entries.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensor {
    pub dim: usize,
    entries: Vec<Scalar>,
}

impl StructureTensor {
    pub fn zeros(dim: usize) -> Self {
        StructureTensor {
            dim,
            entries: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    pub fn at(&self, a: usize, b: usize, c: usize) -> &Scalar {
        &self.entries[(a * self.dim + b) * self.dim + c]
    }

    /// Sets `f_{ab}^c = v` and `f_{ba}^c = -v`.
    pub fn set_antisymmetric(&mut self, a: usize, b: usize, c: usize, v: Scalar) {
        self.entries[(a * self.dim + b) * self.dim + c] = v.clone();
        self.entries[(b * self.dim + a) * self.dim + c] = -&v;
    }
}

/// A named realization: ordered generators, optional fourth basis element,
/// the expected structure tensor of the derivation basis, Casimir, and the
/// central element the calculus localizes by.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    pub name: AlgebraName,
    pub generators: Vec<WeylElement>,
    /// Fourth derivation-basis element (`u4` or the outer element), when the
    /// algebra carries a four-dimensional calculus.
    pub extension: Option<WeylElement>,
    /// Structure tensor of the full derivation basis (dim 3 or 4):
    /// `[u_a, u_b] = i theta f_{ab}^c u_c`.
    pub structure: StructureTensor,
    /// Quadratic Casimir as a pointwise polynomial, when one exists.
    pub casimir: Option<WeylElement>,
    /// Central element adjoined by localization (`u4`, `u_C`, or `u3`).
    pub central: Option<WeylElement>,
}

fn v(var: Var) -> WeylElement {
    WeylElement::var(var)
}

fn sum(parts: &[WeylElement]) -> WeylElement {
    parts.iter().fold(WeylElement::zero(), |acc, p| &acc + p)
}

impl AlgebraSpec {
    /// Basis of the derivation Lie algebra: the generators plus the fourth
    /// element when present.
    pub fn derivation_basis(&self) -> Vec<WeylElement> {
        let mut basis = self.generators.clone();
        if let Some(ext) = &self.extension {
            basis.push(ext.clone());
        }
        basis
    }

    /// Element whose star-centralizer defines the algebra the calculus
    /// lives on.
    pub fn centralizer_element(&self) -> Option<&WeylElement> {
        self.central.as_ref()
    }

    /// Name of the fourth basis element for display purposes.
    pub fn extension_label(&self) -> &'static str {
        match self.name.id() {
            AlgebraId::E2 => "uE",
            _ => "u4",
        }
    }

    /// Residuals `[u_a, u_b] - i theta f_{ab}^c u_c` for every pair of the
    /// derivation basis, labeled. All must be zero.
    pub fn structure_residuals(&self) -> Vec<(String, WeylElement)> {
        let basis = self.derivation_basis();
        let n = basis.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let bracket = basis[a].commutator(&basis[b]);
                let mut expected = WeylElement::zero();
                for (c, gen) in basis.iter().enumerate() {
                    expected = &expected + &gen.scale(self.structure.at(a, b, c));
                }
                let residual = &bracket - &expected.scale(&Scalar::i_theta());
                out.push((format!("[u{},u{}]", a + 1, b + 1), residual));
            }
        }
        out
    }

    /// `true` iff `f` star-commutes with the centralizer-defining element.
    pub fn centralizer_member(&self, f: &WeylElement) -> Result<bool, AlgebraError> {
        let c = self.central.as_ref().ok_or_else(|| {
            AlgebraError::NotApplicable(format!("{} has no centralizer element", self.name))
        })?;
        Ok(c.commutator(f).is_zero())
    }
}

/// Builds the named realization with generators exactly as cataloged.
pub fn jordan_schwinger(name: AlgebraName) -> Result<AlgebraSpec, AlgebraError> {
    match name {
        AlgebraName::Su2 => Ok(su2()),
        AlgebraName::Sl2r => Ok(sl2r()),
        AlgebraName::E2 => Ok(e2()),
        AlgebraName::Iso11 => Ok(iso11()),
        AlgebraName::H1 { mu, nu } => h1(mu, nu),
        AlgebraName::Family { b, c, h } => Ok(family(b, c, h)),
    }
}

fn su2() -> AlgebraSpec {
    let u1 = sum(&[
        v(Var::Q1).mul_pointwise(&v(Var::Q2)),
        v(Var::P1).mul_pointwise(&v(Var::P2)),
    ])
    .scale_ratio(1, 2);
    let u2 = sum(&[
        v(Var::Q1).mul_pointwise(&v(Var::P2)),
        -&v(Var::Q2).mul_pointwise(&v(Var::P1)),
    ])
    .scale_ratio(1, 2);
    let u3 = sum(&[
        v(Var::Q1).pow_pointwise(2),
        v(Var::P1).pow_pointwise(2),
        -&v(Var::Q2).pow_pointwise(2),
        -&v(Var::P2).pow_pointwise(2),
    ])
    .scale_ratio(1, 4);
    let u4 = sum(&[
        v(Var::Q1).pow_pointwise(2),
        v(Var::P1).pow_pointwise(2),
        v(Var::Q2).pow_pointwise(2),
        v(Var::P2).pow_pointwise(2),
    ])
    .scale_ratio(1, 4);

    let mut f = StructureTensor::zeros(4);
    f.set_antisymmetric(0, 1, 2, Scalar::one());
    f.set_antisymmetric(1, 2, 0, Scalar::one());
    f.set_antisymmetric(2, 0, 1, Scalar::one());

    let casimir = sum(&[
        u1.pow_pointwise(2),
        u2.pow_pointwise(2),
        u3.pow_pointwise(2),
    ]);
    AlgebraSpec {
        name: AlgebraName::Su2,
        generators: vec![u1, u2, u3],
        extension: Some(u4.clone()),
        structure: f,
        casimir: Some(casimir),
        central: Some(u4),
    }
}

fn sl2r() -> AlgebraSpec {
    let u1 = sum(&[
        v(Var::Q1).pow_pointwise(2),
        v(Var::P1).pow_pointwise(2),
        v(Var::Q2).pow_pointwise(2),
        v(Var::P2).pow_pointwise(2),
    ])
    .scale_ratio(1, 4);
    let u2 = sum(&[
        v(Var::Q1).pow_pointwise(2),
        v(Var::Q2).pow_pointwise(2),
        -&v(Var::P1).pow_pointwise(2),
        -&v(Var::P2).pow_pointwise(2),
    ])
    .scale_ratio(1, 4);
    let u3 = sum(&[
        v(Var::Q1).mul_pointwise(&v(Var::P1)),
        v(Var::Q2).mul_pointwise(&v(Var::P2)),
    ])
    .scale_ratio(1, 2);
    let u4 = sum(&[
        v(Var::Q1).mul_pointwise(&v(Var::P2)),
        -&v(Var::Q2).mul_pointwise(&v(Var::P1)),
    ])
    .scale_ratio(1, 2);

    let mut f = StructureTensor::zeros(4);
    f.set_antisymmetric(0, 1, 2, Scalar::from_int(-1));
    f.set_antisymmetric(1, 2, 0, Scalar::one());
    f.set_antisymmetric(2, 0, 1, Scalar::from_int(-1));

    let casimir = sum(&[
        u1.pow_pointwise(2),
        -&u2.pow_pointwise(2),
        -&u3.pow_pointwise(2),
    ]);
    AlgebraSpec {
        name: AlgebraName::Sl2r,
        generators: vec![u1, u2, u3],
        extension: Some(u4.clone()),
        structure: f,
        casimir: Some(casimir),
        central: Some(u4),
    }
}

fn e2() -> AlgebraSpec {
    let u1 = sum(&[
        v(Var::Q1).mul_pointwise(&v(Var::P2)),
        -&v(Var::Q2).mul_pointwise(&v(Var::P1)),
    ]);
    let u2 = v(Var::Q1);
    let u3 = v(Var::Q2);
    // Outer element: commutation with it scales u2, u3 by i*theta.
    let u_e = -&sum(&[
        v(Var::Q1).mul_pointwise(&v(Var::P1)),
        v(Var::Q2).mul_pointwise(&v(Var::P2)),
    ]);

    let mut f = StructureTensor::zeros(4);
    f.set_antisymmetric(0, 1, 2, Scalar::one());
    f.set_antisymmetric(2, 0, 1, Scalar::one());
    f.set_antisymmetric(1, 3, 1, Scalar::from_int(-1));
    f.set_antisymmetric(2, 3, 2, Scalar::from_int(-1));

    let casimir = sum(&[u2.pow_pointwise(2), u3.pow_pointwise(2)]).scale_ratio(1, 2);
    AlgebraSpec {
        name: AlgebraName::E2,
        generators: vec![u1, u2, u3],
        extension: Some(u_e),
        structure: f,
        casimir: Some(casimir.clone()),
        central: Some(casimir),
    }
}

fn iso11() -> AlgebraSpec {
    let u1 = sum(&[
        v(Var::P1).pow_pointwise(2),
        v(Var::P2).pow_pointwise(2),
        -&v(Var::Q1).pow_pointwise(2),
        -&v(Var::Q2).pow_pointwise(2),
    ])
    .scale_ratio(1, 2);
    let u2 = &v(Var::Q2) + &v(Var::P1);
    let u3 = -&(&v(Var::Q1) + &v(Var::P2));

    let mut f = StructureTensor::zeros(3);
    f.set_antisymmetric(0, 1, 2, Scalar::one());
    f.set_antisymmetric(2, 0, 1, Scalar::from_int(-1));

    let casimir = sum(&[u3.pow_pointwise(2), -&u2.pow_pointwise(2)]).scale_ratio(1, 2);
    AlgebraSpec {
        name: AlgebraName::Iso11,
        generators: vec![u1, u2, u3],
        extension: None,
        structure: f,
        casimir: Some(casimir),
        central: None,
    }
}

fn h1(mu: GaussianRational, nu: GaussianRational) -> Result<AlgebraSpec, AlgebraError> {
    if nu.is_zero() {
        return Err(AlgebraError::ZeroNu);
    }
    let u1 = v(Var::Q1);
    let u2 = v(Var::Q2).mul_pointwise(&v(Var::P1));
    let u3 = v(Var::Q2);
    // Parameter family of outer elements: u4 = -mu p1 q1 - nu p2 q2.
    let u4 = &v(Var::P1)
        .mul_pointwise(&v(Var::Q1))
        .scale(&Scalar::gaussian(-&mu))
        + &v(Var::P2)
            .mul_pointwise(&v(Var::Q2))
            .scale(&Scalar::gaussian(-&nu));

    let mut f = StructureTensor::zeros(4);
    f.set_antisymmetric(0, 1, 2, Scalar::one());
    f.set_antisymmetric(0, 3, 0, Scalar::gaussian(-&mu));
    f.set_antisymmetric(1, 3, 1, Scalar::gaussian(&mu - &nu));
    f.set_antisymmetric(2, 3, 2, Scalar::gaussian(-&nu));

    let casimir = u3.pow_pointwise(2);
    Ok(AlgebraSpec {
        name: AlgebraName::H1 { mu, nu },
        generators: vec![u1, u2, u3.clone()],
        extension: Some(u4),
        structure: f,
        casimir: Some(casimir),
        central: Some(u3),
    })
}

fn family(b: GaussianRational, c: GaussianRational, h: GaussianRational) -> AlgebraSpec {
    // u1 = -h (q1 p1 + q2 p2) - c q2 p1 + b q1 p2
    let u1 = sum(&[
        sum(&[
            v(Var::Q1).mul_pointwise(&v(Var::P1)),
            v(Var::Q2).mul_pointwise(&v(Var::P2)),
        ])
        .scale(&Scalar::gaussian(-&h)),
        v(Var::Q2)
            .mul_pointwise(&v(Var::P1))
            .scale(&Scalar::gaussian(-&c)),
        v(Var::Q1)
            .mul_pointwise(&v(Var::P2))
            .scale(&Scalar::gaussian(b.clone())),
    ]);
    let u2 = v(Var::Q1);
    let u3 = v(Var::Q2);

    let mut f = StructureTensor::zeros(3);
    f.set_antisymmetric(0, 1, 1, Scalar::gaussian(h.clone()));
    f.set_antisymmetric(0, 1, 2, Scalar::gaussian(c.clone()));
    f.set_antisymmetric(2, 0, 1, Scalar::gaussian(b.clone()));
    f.set_antisymmetric(2, 0, 2, Scalar::gaussian(-&h));

    AlgebraSpec {
        name: AlgebraName::Family { b, c, h },
        generators: vec![u1, u2, u3],
        extension: None,
        structure: f,
        casimir: None,
        central: None,
    }
}

/// All degree `<= 2` monomials in the four coordinates (dimension 15).
pub fn quadratic_monomials() -> Vec<Mono> {
    let mut out = Vec::new();
    for a in 0..=2u8 {
        for b in 0..=2u8 {
            for c in 0..=2u8 {
                for d in 0..=2u8 {
                    let m = Mono([a, b, c, d]);
                    if m.degree() <= 2 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Result of expressing pairwise commutators in `i theta * (span + 1)`.
#[derive(Debug, Clone)]
pub struct StructureSolve {
    /// `f_{ab}^c` with `[e_a, e_b] = i theta (f_{ab}^c e_c + k_{ab} 1)`.
    pub tensor: StructureTensor,
    /// Central constants `k_{ab}` (zero for every catalog algebra).
    pub constants: Vec<Vec<Scalar>>,
}

/// Expresses `target` as `sum_j x_j basis_j (+ x_const)` with Laurent-scalar
/// coefficients, requiring theta-free basis coefficients.
pub fn solve_in_span(
    target: &WeylElement,
    basis: &[WeylElement],
    include_unit: bool,
) -> Result<Option<(Vec<Scalar>, Scalar)>, AlgebraError> {
    for e in basis {
        if e.terms().any(|(_, c)| c.terms().any(|(t, _)| *t != 0)) {
            return Err(AlgebraError::ThetaDependentBasis);
        }
    }
    let mut columns: Vec<WeylElement> = basis.to_vec();
    if include_unit {
        columns.push(WeylElement::one());
    }
    let ncols = columns.len();

    // Group target rows by theta power; each power is an independent
    // rational solve because the basis is theta-free.
    let mut powers: Vec<i64> = target
        .terms()
        .flat_map(|(_, c)| c.terms().map(|(t, _)| *t))
        .collect();
    powers.sort_unstable();
    powers.dedup();
    if powers.is_empty() {
        return Ok(Some((vec![Scalar::zero(); basis.len()], Scalar::zero())));
    }

    let mut coeffs = vec![Scalar::zero(); ncols];
    for t in powers {
        // Monomial support of this slice plus all basis elements.
        let mut monos: Vec<Mono> = target
            .terms()
            .filter(|(_, c)| !c.coeff(t).is_zero())
            .map(|(m, _)| *m)
            .collect();
        for e in &columns {
            monos.extend(e.terms().map(|(m, _)| *m));
        }
        monos.sort();
        monos.dedup();

        let mut a = QMatrix::zeros(monos.len(), ncols);
        let mut b = Vec::with_capacity(monos.len());
        for (r, m) in monos.iter().enumerate() {
            for (j, e) in columns.iter().enumerate() {
                let entry = e
                    .terms()
                    .find(|(em, _)| *em == m)
                    .map(|(_, c)| c.coeff(0))
                    .unwrap_or_else(GaussianRational::zero);
                a.set(r, j, entry);
            }
            let rhs = target
                .terms()
                .find(|(em, _)| *em == m)
                .map(|(_, c)| c.coeff(t))
                .unwrap_or_else(GaussianRational::zero);
            b.push(rhs);
        }
        match linalg::solve(&a, &b) {
            SolveOutcome::Solution { particular, .. } => {
                for (j, x) in particular.into_iter().enumerate() {
                    coeffs[j] = &coeffs[j] + &Scalar::monomial(t, x);
                }
            }
            SolveOutcome::Infeasible { .. } => return Ok(None),
        }
    }

    let konst = if include_unit {
        coeffs.pop().unwrap()
    } else {
        Scalar::zero()
    };
    // Confirm the assembled combination reproduces the target exactly.
    let mut recon = WeylElement::zero();
    for (j, e) in basis.iter().enumerate() {
        recon = &recon + &e.scale(&coeffs[j]);
    }
    recon = &recon + &WeylElement::constant(konst.clone());
    if &recon - target != WeylElement::zero() {
        return Ok(None);
    }
    Ok(Some((coeffs, konst)))
}

/// Exact extraction of structure constants: every pairwise commutator is
/// expressed in the span of `i theta *` the elements plus constants.
pub fn structure_constants_solve(
    elements: &[WeylElement],
) -> Result<StructureSolve, AlgebraError> {
    let n = elements.len();
    let mut tensor = StructureTensor::zeros(n);
    let mut constants = vec![vec![Scalar::zero(); n]; n];
    for a in 0..n {
        for b in (a + 1)..n {
            let bracket = elements[a].commutator(&elements[b]);
            // Divide out i*theta before solving.
            let reduced = bracket.scale(&Scalar::i_theta().monomial_inverse().unwrap());
            let solution = solve_in_span(&reduced, elements, true)?;
            let Some((coeffs, konst)) = solution else {
                return Err(AlgebraError::SpanFailure {
                    pair: format!("(u{}, u{})", a + 1, b + 1),
                });
            };
            for (c, x) in coeffs.iter().enumerate() {
                tensor.set_antisymmetric(a, b, c, x.clone());
            }
            constants[a][b] = konst.clone();
            constants[b][a] = -&konst;
        }
    }
    Ok(StructureSolve { tensor, constants })
}

/// Casimir diagnostics: pointwise identity, star-centrality, and the exact
/// star-ordering defect.
#[derive(Debug, Clone)]
pub struct CasimirCheck {
    /// `ext^2 - casimir` under the pointwise product (su2/sl2r only).
    pub pointwise_residual: Option<WeylElement>,
    /// `[casimir, u_a]` for each generator; all must vanish.
    pub commutation_residuals: Vec<WeylElement>,
    /// `ext * ext - (signed sum of u_a * u_a)` under the star product.
    pub star_defect: Option<WeylElement>,
}

pub fn casimir_check(spec: &AlgebraSpec) -> Result<CasimirCheck, AlgebraError> {
    let casimir = spec.casimir.as_ref().ok_or_else(|| {
        AlgebraError::NotApplicable(format!("{} has no quadratic Casimir", spec.name))
    })?;
    let commutation_residuals = spec
        .generators
        .iter()
        .map(|u| casimir.commutator(u))
        .collect();

    let (pointwise_residual, star_defect) = match spec.name.id() {
        AlgebraId::Su2 => {
            let u4 = spec.extension.as_ref().unwrap();
            let pw = &u4.pow_pointwise(2) - casimir;
            let star_sum = sum(&[
                spec.generators[0].star_pow(2),
                spec.generators[1].star_pow(2),
                spec.generators[2].star_pow(2),
            ]);
            let defect = &u4.star_pow(2) - &star_sum;
            (Some(pw), Some(defect))
        }
        AlgebraId::Sl2r => {
            let u4 = spec.extension.as_ref().unwrap();
            let pw = &u4.pow_pointwise(2) - casimir;
            let star_sum = sum(&[
                spec.generators[0].star_pow(2),
                -&spec.generators[1].star_pow(2),
                -&spec.generators[2].star_pow(2),
            ]);
            let defect = &u4.star_pow(2) - &star_sum;
            (Some(pw), Some(defect))
        }
        _ => (None, None),
    };
    Ok(CasimirCheck {
        pointwise_residual,
        commutation_residuals,
        star_defect,
    })
}

/// The two fixed outer elements for h1 (independent of the mu/nu family).
pub fn h1_outer_elements() -> (WeylElement, WeylElement) {
    let e1 = -&sum(&[
        v(Var::P1).mul_pointwise(&v(Var::Q1)),
        v(Var::P2).mul_pointwise(&v(Var::Q2)),
    ]);
    let e2 = -&v(Var::P2).mul_pointwise(&v(Var::Q2));
    (e1, e2)
}

/// Residuals of the outer-derivation action tables.
///
/// e2: `[uE, u1] = 0`, `[uE, u2] = i theta u2`, `[uE, u3] = i theta u3`;
/// h1: the actions of both outer elements on the three generators.
pub fn outer_action_residuals(
    spec: &AlgebraSpec,
) -> Result<Vec<(String, WeylElement)>, AlgebraError> {
    let it = Scalar::i_theta();
    match spec.name.id() {
        AlgebraId::E2 => {
            let ue = spec.extension.as_ref().unwrap();
            let u = &spec.generators;
            Ok(vec![
                ("[uE,u1]".into(), ue.commutator(&u[0])),
                ("[uE,u2]-i*theta*u2".into(), &ue.commutator(&u[1]) - &u[1].scale(&it)),
                ("[uE,u3]-i*theta*u3".into(), &ue.commutator(&u[2]) - &u[2].scale(&it)),
            ])
        }
        AlgebraId::H1 => {
            let (e1, e2) = h1_outer_elements();
            let u = &spec.generators;
            Ok(vec![
                ("[uE1,u1]-i*theta*u1".into(), &e1.commutator(&u[0]) - &u[0].scale(&it)),
                ("[uE1,u2]".into(), e1.commutator(&u[1])),
                ("[uE1,u3]-i*theta*u3".into(), &e1.commutator(&u[2]) - &u[2].scale(&it)),
                ("[uE2,u1]".into(), e2.commutator(&u[0])),
                ("[uE2,u2]-i*theta*u2".into(), &e2.commutator(&u[1]) - &u[1].scale(&it)),
                ("[uE2,u3]-i*theta*u3".into(), &e2.commutator(&u[2]) - &u[2].scale(&it)),
            ])
        }
        _ => Err(AlgebraError::NotApplicable(format!(
            "outer action tables are defined for e2 and h1, not {}",
            spec.name
        ))),
    }
}

/// Derivation targets on the h1 generators for the inner-representative
/// search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H1Target {
    /// `u1 -> -i theta u2`, `u2 -> i theta u1`, `u3 -> 0` (rotation-type).
    Rotation,
    /// `u1 -> i theta u2`, `u2 -> i theta u1`, `u3 -> 0` (boost-type).
    Hyperbolic,
    /// Control column: the action realized by `-(p1 q1 + p2 q2)`.
    Scaling1,
}

impl H1Target {
    pub fn label(self) -> &'static str {
        match self {
            H1Target::Rotation => "D_R",
            H1Target::Hyperbolic => "D_H",
            H1Target::Scaling1 => "D_E1",
        }
    }
}

/// Outcome of the exact search for `u` in the degree `<= 2` sector with
/// `[u, u_k] = ` the target action on all three h1 generators.
#[derive(Debug, Clone)]
pub enum InnerSearch {
    Feasible {
        element: WeylElement,
        nullspace_dim: usize,
    },
    Infeasible {
        rank: usize,
        augmented_rank: usize,
        /// The row-combination certificate re-checked against the system.
        certificate_valid: bool,
        /// Scope statement recorded with the certificate.
        scope: String,
    },
}

pub fn no_inner_representative(
    spec: &AlgebraSpec,
    target: H1Target,
) -> Result<InnerSearch, AlgebraError> {
    if spec.name.id() != AlgebraId::H1 {
        return Err(AlgebraError::NotApplicable(
            "inner-representative search is defined for h1".into(),
        ));
    }
    let it = Scalar::i_theta();
    let u = &spec.generators;
    let targets: Vec<WeylElement> = match target {
        H1Target::Rotation => vec![-&u[1].scale(&it), u[0].scale(&it), WeylElement::zero()],
        H1Target::Hyperbolic => vec![u[1].scale(&it), u[0].scale(&it), WeylElement::zero()],
        H1Target::Scaling1 => vec![u[0].scale(&it), WeylElement::zero(), u[2].scale(&it)],
    };

    let monos = quadratic_monomials();
    let it_inv = Scalar::i_theta().monomial_inverse().unwrap();
    // Commutators with degree <= 2 elements are first-order exact, so after
    // dividing by i*theta every matrix entry is a plain rational.
    let cols: Vec<Vec<WeylElement>> = monos
        .iter()
        .map(|m| {
            let mono_el = WeylElement::monomial(*m, Scalar::one());
            u.iter()
                .map(|uk| mono_el.commutator(uk).scale(&it_inv))
                .collect()
        })
        .collect();
    let reduced_targets: Vec<WeylElement> = targets.iter().map(|t| t.scale(&it_inv)).collect();

    let mut row_keys = Vec::new();
    for (k, _) in u.iter().enumerate() {
        let mut support: Vec<Mono> = reduced_targets[k].terms().map(|(m, _)| *m).collect();
        for col in &cols {
            support.extend(col[k].terms().map(|(m, _)| *m));
        }
        support.sort();
        support.dedup();
        for m in support {
            row_keys.push((k, m));
        }
    }

    let mut a = QMatrix::zeros(row_keys.len(), monos.len());
    let mut b = Vec::with_capacity(row_keys.len());
    for (r, (k, m)) in row_keys.iter().enumerate() {
        for (j, col) in cols.iter().enumerate() {
            let entry = col[*k]
                .terms()
                .find(|(em, _)| *em == m)
                .map(|(_, c)| c.coeff(0))
                .unwrap_or_else(GaussianRational::zero);
            a.set(r, j, entry);
        }
        let rhs = reduced_targets[*k]
            .terms()
            .find(|(em, _)| *em == m)
            .map(|(_, c)| c.coeff(0))
            .unwrap_or_else(GaussianRational::zero);
        b.push(rhs);
    }

    match linalg::solve(&a, &b) {
        SolveOutcome::Solution { particular, nullspace } => {
            let mut element = WeylElement::zero();
            for (j, x) in particular.into_iter().enumerate() {
                element = &element + &WeylElement::monomial(monos[j], Scalar::gaussian(x));
            }
            Ok(InnerSearch::Feasible {
                element,
                nullspace_dim: nullspace.len(),
            })
        }
        SolveOutcome::Infeasible { certificate, rank, augmented_rank } => {
            let certificate_valid = linalg::certificate_is_valid(&a, &b, &certificate);
            Ok(InnerSearch::Infeasible {
                rank,
                augmented_rank,
                certificate_valid,
                scope: format!(
                    "search space restricted to the 15-dimensional degree<=2 sector; \
                     commutation with any higher-degree element cannot act \
                     degree-linearly on the generators ({} unknowns, {} equations)",
                    monos.len(),
                    row_keys.len()
                ),
            })
        }
    }
}

/// Residuals for the complexified realization built on the e2 generators:
/// `f1 = i u1`, `f2 = u2`, `f3 = i u3` satisfy the iso(1,1) table, and the
/// direct iso11 generators satisfy the same table.
pub fn complexify_iso11_residuals() -> Vec<(String, WeylElement)> {
    let e2 = e2();
    let i = Scalar::i();
    let it = Scalar::i_theta();
    let f1 = e2.generators[0].scale(&i);
    let f2 = e2.generators[1].clone();
    let f3 = e2.generators[2].scale(&i);

    let mut out = vec![
        ("[f1,f2]-i*theta*f3".to_string(), &f1.commutator(&f2) - &f3.scale(&it)),
        ("[f2,f3]".to_string(), f2.commutator(&f3)),
        ("[f3,f1]+i*theta*f2".to_string(), &f3.commutator(&f1) + &f2.scale(&it)),
    ];
    let direct = iso11();
    let u = &direct.generators;
    out.push((
        "direct [u1,u2]-i*theta*u3".to_string(),
        &u[0].commutator(&u[1]) - &u[2].scale(&it),
    ));
    out.push(("direct [u2,u3]".to_string(), u[1].commutator(&u[2])));
    out.push((
        "direct [u3,u1]+i*theta*u2".to_string(),
        &u[2].commutator(&u[0]) + &u[1].scale(&it),
    ));
    out
}

/// Formal quotient `numerator * central^{-kpow}`.
///
/// Powers are never cancelled automatically; equality is decided by
/// cross-multiplication, which is sound because the central element
/// star-commutes with everything in its centralizer algebra.
#[derive(Debug, Clone)]
pub struct Localized {
    pub num: WeylElement,
    pub kpow: u32,
    pub algebra: AlgebraId,
}

/// Context for localized arithmetic: the algebra tag and its central
/// element.
#[derive(Debug, Clone)]
pub struct Localization {
    pub id: AlgebraId,
    pub central: WeylElement,
}

impl Localization {
    pub fn new(spec: &AlgebraSpec) -> Result<Self, AlgebraError> {
        let central = spec.central.clone().ok_or_else(|| {
            AlgebraError::NotApplicable(format!("{} carries no localization", spec.name))
        })?;
        Ok(Localization { id: spec.name.id(), central })
    }

    pub fn zero(&self) -> Localized {
        self.embed(WeylElement::zero())
    }

    pub fn one(&self) -> Localized {
        self.embed(WeylElement::one())
    }

    pub fn embed(&self, num: WeylElement) -> Localized {
        Localized { num, kpow: 0, algebra: self.id }
    }

    pub fn with_power(&self, num: WeylElement, kpow: u32) -> Localized {
        Localized { num, kpow, algebra: self.id }
    }

    /// Star power of the central element.
    pub fn central_pow(&self, k: u32) -> WeylElement {
        self.central.star_pow(k)
    }

    fn guard(&self, x: &Localized) -> Result<(), AlgebraError> {
        if x.algebra != self.id {
            return Err(AlgebraError::MixedAlgebras);
        }
        Ok(())
    }

    pub fn add(&self, x: &Localized, y: &Localized) -> Result<Localized, AlgebraError> {
        self.guard(x)?;
        self.guard(y)?;
        let k = x.kpow.max(y.kpow);
        let xs = x.num.star(&self.central_pow(k - x.kpow));
        let ys = y.num.star(&self.central_pow(k - y.kpow));
        Ok(self.with_power(&xs + &ys, k))
    }

    pub fn sub(&self, x: &Localized, y: &Localized) -> Result<Localized, AlgebraError> {
        self.add(x, &y.neg())
    }

    pub fn star(&self, x: &Localized, y: &Localized) -> Result<Localized, AlgebraError> {
        self.guard(x)?;
        self.guard(y)?;
        Ok(self.with_power(x.num.star(&y.num), x.kpow + y.kpow))
    }

    pub fn eq(&self, x: &Localized, y: &Localized) -> Result<bool, AlgebraError> {
        self.guard(x)?;
        self.guard(y)?;
        let lhs = x.num.star(&self.central_pow(y.kpow));
        let rhs = y.num.star(&self.central_pow(x.kpow));
        Ok(lhs == rhs)
    }

    /// `Some(s)` when the element equals the scalar `s` (i.e. the numerator
    /// is `s * central^kpow`).
    pub fn extract_scalar(&self, x: &Localized) -> Option<Scalar> {
        if x.num.is_zero() {
            return Some(Scalar::zero());
        }
        if x.kpow == 0 {
            return x.num.as_scalar();
        }
        let ck = self.central_pow(x.kpow);
        let (lead, gamma) = ck.leading_term()?;
        let num_at_lead = x.num.terms().find(|(m, _)| *m == lead).map(|(_, c)| c.clone())?;
        let s = num_at_lead.divide_monomial(gamma).ok()?;
        if ck.scale(&s) == x.num {
            Some(s)
        } else {
            None
        }
    }

    /// Membership in the centralizer algebra (checked on the numerator).
    pub fn in_algebra(&self, x: &Localized) -> bool {
        self.central.commutator(&x.num).is_zero()
    }
}

impl Localized {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> Localized {
        Localized {
            num: -&self.num,
            kpow: self.kpow,
            algebra: self.algebra,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Localized {
        Localized {
            num: self.num.scale(s),
            kpow: self.kpow,
            algebra: self.algebra,
        }
    }

    /// Left star-multiplication of the numerator by a plain element.
    pub fn left_star(&self, f: &WeylElement) -> Localized {
        Localized {
            num: f.star(&self.num),
            kpow: self.kpow,
            algebra: self.algebra,
        }
    }

    pub fn right_star(&self, f: &WeylElement) -> Localized {
        Localized {
            num: self.num.star(f),
            kpow: self.kpow,
            algebra: self.algebra,
        }
    }
}

impl fmt::Display for Localized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kpow == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) * c^-{}", self.num, self.kpow)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn it() -> Scalar {
        Scalar::i_theta()
    }

    fn catalog() -> Vec<AlgebraSpec> {
        vec![
            su2(),
            sl2r(),
            e2(),
            iso11(),
            h1(GaussianRational::from_int(1), GaussianRational::from_int(2)).unwrap(),
            h1(
                GaussianRational::from_ratio(2, 3),
                GaussianRational::from_ratio(-1, 5),
            )
            .unwrap(),
            family(
                GaussianRational::from_int(1),
                GaussianRational::from_int(0),
                GaussianRational::from_int(0),
            ),
            family(
                GaussianRational::from_ratio(1, 2),
                GaussianRational::from_int(2),
                GaussianRational::from_int(-3),
            ),
        ]
    }

    #[test]
    fn printed_generators_match() {
        let su2 = su2();
        let mut expect_u1 = WeylElement::var(Var::Q1)
            .mul_pointwise(&WeylElement::var(Var::Q2))
            .scale_ratio(1, 2);
        expect_u1 = &expect_u1
            + &WeylElement::var(Var::P1)
                .mul_pointwise(&WeylElement::var(Var::P2))
                .scale_ratio(1, 2);
        assert_eq!(su2.generators[0], expect_u1);

        let e2 = e2();
        let q = WeylElement::var(Var::Q1);
        let q2 = WeylElement::var(Var::Q2);
        let expect_casimir = (&q.pow_pointwise(2) + &q2.pow_pointwise(2)).scale_ratio(1, 2);
        assert_eq!(e2.casimir.as_ref().unwrap(), &expect_casimir);

        let h1 = h1(GaussianRational::from_int(1), GaussianRational::from_int(1)).unwrap();
        assert_eq!(h1.generators[0], WeylElement::var(Var::Q1));
        assert_eq!(
            h1.generators[1],
            WeylElement::var(Var::Q2).mul_pointwise(&WeylElement::var(Var::P1))
        );
        assert_eq!(h1.generators[2], WeylElement::var(Var::Q2));
    }

    #[test]
    fn h1_rejects_zero_nu() {
        assert!(matches!(
            h1(GaussianRational::from_int(1), GaussianRational::from_int(0)),
            Err(AlgebraError::ZeroNu)
        ));
    }

    #[test]
    fn all_catalog_structures_verify_exactly() {
        for spec in catalog() {
            for (label, residual) in spec.structure_residuals() {
                assert!(
                    residual.is_zero(),
                    "{}: residual {} = {}",
                    spec.name,
                    label,
                    residual
                );
            }
        }
    }

    #[test]
    fn structure_solve_recovers_stored_tensor() {
        for spec in catalog() {
            let basis = spec.derivation_basis();
            let solved = structure_constants_solve(&basis).unwrap();
            let n = basis.len();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(
                            solved.tensor.at(a, b, c),
                            spec.structure.at(a, b, c),
                            "{}: f[{}][{}][{}]",
                            spec.name,
                            a,
                            b,
                            c
                        );
                    }
                    assert!(solved.constants[a][b].is_zero());
                }
            }
        }
    }

    #[test]
    fn abelian_pair_has_zero_tensor() {
        let solved =
            structure_constants_solve(&[WeylElement::var(Var::Q1), WeylElement::var(Var::Q2)])
                .unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    assert!(solved.tensor.at(a, b, c).is_zero());
                }
            }
        }
    }

    #[test]
    fn span_failure_is_reported() {
        // [q1^2, p1^2] has a q1*p1 term that the pair cannot span.
        let err = structure_constants_solve(&[
            WeylElement::var(Var::Q1).pow_pointwise(2),
            WeylElement::var(Var::P1).pow_pointwise(2),
        ]);
        assert!(matches!(err, Err(AlgebraError::SpanFailure { .. })));
    }

    #[test]
    fn su2_casimir_pointwise_and_star_defect() {
        let check = casimir_check(&su2()).unwrap();
        assert!(check.pointwise_residual.unwrap().is_zero());
        for r in &check.commutation_residuals {
            assert!(r.is_zero());
        }
        // Star-ordering defect is theta^2 / 4 exactly.
        let expect = WeylElement::constant(Scalar::monomial(2, GaussianRational::from_ratio(1, 4)));
        assert_eq!(check.star_defect.unwrap(), expect);
    }

    #[test]
    fn sl2r_casimir_pointwise_and_star_defect() {
        let check = casimir_check(&sl2r()).unwrap();
        assert!(check.pointwise_residual.unwrap().is_zero());
        for r in &check.commutation_residuals {
            assert!(r.is_zero());
        }
        let expect = WeylElement::constant(Scalar::monomial(2, GaussianRational::from_ratio(1, 4)));
        assert_eq!(check.star_defect.unwrap(), expect);
    }

    #[test]
    fn star_defect_agrees_with_recursive_route() {
        let spec = su2();
        let u4 = spec.extension.as_ref().unwrap();
        let via_recursive = &u4.star_recursive(u4)
            - &spec
                .generators
                .iter()
                .fold(WeylElement::zero(), |acc, u| &acc + &u.star_recursive(u));
        assert_eq!(
            via_recursive,
            casimir_check(&spec).unwrap().star_defect.unwrap()
        );
    }

    #[test]
    fn remaining_casimirs_star_commute() {
        for spec in [e2(), iso11()] {
            let check = casimir_check(&spec).unwrap();
            for r in &check.commutation_residuals {
                assert!(r.is_zero(), "{}", spec.name);
            }
        }
        let spec = h1(GaussianRational::from_int(3), GaussianRational::from_int(2)).unwrap();
        let check = casimir_check(&spec).unwrap();
        for r in &check.commutation_residuals {
            assert!(r.is_zero());
        }
        // [u3, u2] = 0 directly.
        assert!(spec.generators[2].commutator(&spec.generators[1]).is_zero());
    }

    #[test]
    fn centralizer_membership() {
        let spec = su2();
        assert!(spec.centralizer_member(&spec.generators[0]).unwrap());
        assert!(!spec.centralizer_member(&WeylElement::var(Var::Q1)).unwrap());
        assert!(spec.centralizer_member(&WeylElement::one()).unwrap());
    }

    #[test]
    fn outer_actions_match_tables() {
        for spec in [
            e2(),
            h1(GaussianRational::from_int(1), GaussianRational::from_int(1)).unwrap(),
        ] {
            for (label, residual) in outer_action_residuals(&spec).unwrap() {
                assert!(residual.is_zero(), "{}: {}", spec.name, label);
            }
        }
    }

    #[test]
    fn rotation_and_boost_have_no_inner_representative() {
        let spec = h1(GaussianRational::from_int(1), GaussianRational::from_int(2)).unwrap();
        for target in [H1Target::Rotation, H1Target::Hyperbolic] {
            match no_inner_representative(&spec, target).unwrap() {
                InnerSearch::Infeasible { certificate_valid, rank, augmented_rank, .. } => {
                    assert!(certificate_valid, "{}", target.label());
                    assert!(augmented_rank > rank);
                }
                InnerSearch::Feasible { .. } => panic!("{} must be infeasible", target.label()),
            }
        }
    }

    #[test]
    fn scaling_control_column_is_feasible() {
        let spec = h1(GaussianRational::from_int(1), GaussianRational::from_int(2)).unwrap();
        match no_inner_representative(&spec, H1Target::Scaling1).unwrap() {
            InnerSearch::Feasible { element, nullspace_dim } => {
                // The kernel is spanned by 1, q2, q2^2.
                assert_eq!(nullspace_dim, 3);
                let (e1, _) = h1_outer_elements();
                let it = it();
                assert_eq!(e1.commutator(&spec.generators[0]), spec.generators[0].scale(&it));
                assert!(e1.commutator(&spec.generators[1]).is_zero());
                assert_eq!(e1.commutator(&spec.generators[2]), spec.generators[2].scale(&it));
                // The particular solution realizes the same action, so it
                // differs from the canonical representative by the kernel.
                for (k, u) in spec.generators.iter().enumerate() {
                    assert_eq!(
                        element.commutator(u),
                        e1.commutator(u),
                        "action mismatch on generator {}",
                        k + 1
                    );
                }
            }
            InnerSearch::Infeasible { .. } => panic!("control column must be feasible"),
        }
    }

    #[test]
    fn complexification_table_holds() {
        for (label, residual) in complexify_iso11_residuals() {
            assert!(residual.is_zero(), "{}", label);
        }
    }

    #[test]
    fn derivations_preserve_degree_on_quadratic_elements() {
        // For u of degree 2 with theta-free coefficients, [u, f] has the
        // same total degree as f.
        let spec = su2();
        let f3 = WeylElement::var(Var::Q1)
            .pow_pointwise(2)
            .mul_pointwise(&WeylElement::var(Var::P2));
        for u in spec.derivation_basis() {
            let bracket = u.commutator(&f3);
            if !bracket.is_zero() {
                assert_eq!(bracket.total_degree(), f3.total_degree());
            }
        }
    }

    #[test]
    fn localized_arithmetic_and_equality() {
        let spec = su2();
        let loc = Localization::new(&spec).unwrap();
        let u1 = spec.generators[0].clone();
        let u4 = spec.central.as_ref().unwrap().clone();

        // (u1, 1) * (u4, 0) = (u1 * u4, 1) = (u1, 0).
        let a = loc.with_power(u1.clone(), 1);
        let b = loc.embed(u4.clone());
        let prod = loc.star(&a, &b).unwrap();
        assert_eq!(prod.kpow, 1);
        assert!(loc.eq(&prod, &loc.embed(u1.clone())).unwrap());

        // (f,0) + (g,0) = (f+g, 0).
        let s = loc.add(&loc.embed(u1.clone()), &loc.embed(u4.clone())).unwrap();
        assert!(loc.eq(&s, &loc.embed(&u1 + &u4)).unwrap());

        // (u4^{*2}, 1) = (u4, 0) by cross-multiplication.
        let sq = loc.with_power(u4.star_pow(2), 1);
        assert!(loc.eq(&sq, &loc.embed(u4.clone())).unwrap());

        // Equality is transitive across rescalings.
        let x0 = loc.embed(u1.clone());
        let x1 = loc.with_power(u1.star(&u4), 1);
        let x2 = loc.with_power(u1.star(&u4.star_pow(2)), 2);
        assert!(loc.eq(&x0, &x1).unwrap());
        assert!(loc.eq(&x1, &x2).unwrap());
        assert!(loc.eq(&x0, &x2).unwrap());
    }

    #[test]
    fn localized_mixing_is_rejected() {
        let su2 = su2();
        let e2 = e2();
        let loc_su2 = Localization::new(&su2).unwrap();
        let loc_e2 = Localization::new(&e2).unwrap();
        let a = loc_su2.embed(WeylElement::one());
        let b = loc_e2.embed(WeylElement::one());
        assert!(matches!(loc_su2.add(&a, &b), Err(AlgebraError::MixedAlgebras)));
    }

    #[test]
    fn localized_scalar_extraction() {
        let spec = e2();
        let loc = Localization::new(&spec).unwrap();
        let c = spec.central.clone().unwrap();
        let x = loc.with_power(c.star_pow(2).scale(&Scalar::from_int(3)), 2);
        assert_eq!(loc.extract_scalar(&x).unwrap(), Scalar::from_int(3));
        let y = loc.with_power(spec.generators[1].clone(), 1);
        assert!(loc.extract_scalar(&y).is_none());
    }
}
