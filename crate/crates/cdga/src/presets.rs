//! Built-in presentations: the 6-dimensional nilmanifold complex `N`, the
//! 8-dimensional product complex `M` with its order-3 action `rho`, flat tori
//! `T2`/`T6`, and the real Heisenberg form `heisenberg-real`.
//!
//! `M` ships with named bindings for the distinguished forms used by the
//! obstruction computations: the symplectic form `omega`, the 2-forms
//! `vartheta`, `tau1`, `tau2`, `tau3`, `sigma`, and the 3-form primitives
//! `xi`, `varsigma`, `kappa` with d(xi) = tau2∧vartheta,
//! d(varsigma) = vartheta∧tau3, d(kappa) = vartheta∧tau1.

use crate::dsl::{parse_presentation, ParseError, PresentationSource};
use crate::exterior::GradedElement;
use crate::scalar::ExactScalar;

pub const PRESET_NAMES: [&str; 5] = ["N", "M", "T2", "T6", "heisenberg-real"];

const N_SOURCE: &str = include_str!("../presets/N.cdga");
const M_SOURCE: &str = include_str!("../presets/M.cdga");

const T2_SOURCE: &str = "algebra T2\ngenerator a1 1\ngenerator a2 1\nd a1 = 0\nd a2 = 0\n";

const T6_SOURCE: &str = "\
algebra T6
generator a1 1
generator a2 1
generator b1 1
generator b2 1
generator c1 1
generator c2 1
";

// Structure equations in the basis {mu_i, nu_i, th_i} obtained from N by the
// change of basis over Q(√3) verified in `heisenberg_basis_change_checks`.
const HEISENBERG_REAL_SOURCE: &str = "\
algebra heisenberg_real
generator mu1 1
generator mu2 1
generator nu1 1
generator nu2 1
generator th1 1
generator th2 1
d th1 = mu1^nu1 - mu2^nu2
d th2 = mu1^nu2 + mu2^nu1
";

/// Look up a preset by name.
pub fn preset(name: &str) -> Result<PresentationSource, ParseError> {
    match name {
        "N" => Ok(preset_n()),
        "M" => Ok(preset_m()),
        "T2" => Ok(parse_presentation(T2_SOURCE).expect("T2 preset parses")),
        "T6" => Ok(parse_presentation(T6_SOURCE).expect("T6 preset parses")),
        "heisenberg-real" => {
            Ok(parse_presentation(HEISENBERG_REAL_SOURCE).expect("heisenberg preset parses"))
        }
        other => Err(ParseError {
            line: 1,
            col: 1,
            message: format!(
                "unknown preset `{other}`; available: {}",
                PRESET_NAMES.join(", ")
            ),
            token: other.to_string(),
        }),
    }
}

pub fn preset_n() -> PresentationSource {
    parse_presentation(N_SOURCE).expect("N preset parses")
}

pub fn preset_m() -> PresentationSource {
    let mut src = parse_presentation(M_SOURCE).expect("M preset parses");
    let bind = |src: &mut PresentationSource, name: &str, expr: &str| {
        let e = src.parse_element(expr).expect("binding expression parses");
        src.bind(name, e);
    };
    bind(&mut src, "vartheta", "b1^b2");
    bind(&mut src, "tau1", "2 a1^c2 - a2^c1 + a1^c1 + a2^c2");
    bind(&mut src, "tau2", "c1^c2");
    bind(&mut src, "tau3", "a1^c1 + a2^c1 + a2^c2");
    bind(&mut src, "sigma", "2 a1^c2 - a2^c1 + a1^c1 + a2^c2");
    bind(&mut src, "omega", "a1^a2 - b1^e2 + b2^e1 + c1^c2");
    bind(
        &mut src,
        "xi",
        "1/6*b1^c1^e2 + 1/6*b2^c1^e2 + 1/6*b2^c1^e1 + 1/6*b1^c2^e2 + 1/6*b1^c2^e1 + 1/6*b2^c2^e1",
    );
    bind(
        &mut src,
        "varsigma",
        "1/3*a1^b1^e2 + 1/3*a1^b1^e1 + 1/3*a1^b2^e1 - 1/3*a2^b2^e2 + 1/3*a2^b1^e1",
    );
    bind(
        &mut src,
        "kappa",
        "1/3*a1^b1^e1 - 1/3*a1^b1^e2 - 1/3*a1^b2^e1 - 2/3*a1^b2^e2 \
         - 1/3*a2^b1^e1 - 2/3*a2^b1^e2 - 2/3*a2^b2^e1 - 1/3*a2^b2^e2",
    );
    src
}

/// The thirteen invariant 2-forms whose classes form a basis of the quotient's
/// second cohomology.
pub fn quotient_h2_forms(src: &PresentationSource) -> Vec<GradedElement> {
    [
        "a1^a2",
        "a1^b2 - a2^b1",
        "a1^b1 + a1^b2 + a2^b2",
        "a1^c2 - a2^c1",
        "a1^c1 + a1^c2 + a2^c2",
        "b1^b2",
        "b1^c2 - b2^c1",
        "b1^c1 + b1^c2 + b2^c2",
        "b1^e2 - b2^e1",
        "b1^e1 + b1^e2 + b2^e2",
        "c1^c2",
        "c1^e2 - c2^e1",
        "c1^e1 + c1^e2 + c2^e2",
    ]
    .iter()
    .map(|s| src.parse_element(s).expect("listed form parses"))
    .collect()
}

/// The ten 3-forms whose classes form a basis of H³ of preset `N`.
pub fn n_h3_forms(src: &PresentationSource) -> Vec<GradedElement> {
    [
        "b1^b2^e1",
        "b1^b2^e2",
        "c1^c2^e1",
        "c1^c2^e2",
        "b1^c1^e1 + 2*b1^c1^e2",
        "b1^c1^e2 - b1^c2^e1",
        "b1^c2^e1 - b1^c2^e2",
        "b2^c2^e2 + 2*b2^c2^e1",
        "b2^c2^e1 - b2^c1^e2",
        "b2^c1^e2 - b2^c1^e1",
    ]
    .iter()
    .map(|s| src.parse_element(s).expect("listed form parses"))
    .collect()
}

/// The eight 2-forms whose classes form a basis of H² of preset `N`.
pub fn n_h2_forms(src: &PresentationSource) -> Vec<GradedElement> {
    [
        "b1^b2",
        "b1^c1",
        "b1^c2",
        "c1^c2",
        "b1^e2 - b2^e1",
        "c1^e2 - c2^e1",
        "b1^e1 + b1^e2 + b2^e2",
        "c1^e1 + c1^e2 + c2^e2",
    ]
    .iter()
    .map(|s| src.parse_element(s).expect("listed form parses"))
    .collect()
}

/// Verify the change of basis from preset `N` to the real Heisenberg form:
/// with μ₁ = β₁ + (1+√3)/2·β₂, μ₂ = β₁ + (1−√3)/2·β₂ (and ν_i likewise from
/// the γ_i), θ₁ = (2/√3)η₁ + (1/√3)η₂, θ₂ = η₂, the structure equations become
/// dθ₁ = μ₁∧ν₁ − μ₂∧ν₂ and dθ₂ = μ₁∧ν₂ + μ₂∧ν₁.
/// Returns (dθ₁ check, dθ₂ check).
pub fn heisenberg_basis_change_checks() -> (bool, bool) {
    let n = preset_n();
    let p = n.presentation().clone();
    let g = |name: &str| n.parse_element(name).expect("generator");
    let half = ExactScalar::ratio(1, 2);
    let s_plus = &(&ExactScalar::one() + &ExactScalar::sqrt3()) * &half;
    let s_minus = &(&ExactScalar::one() - &ExactScalar::sqrt3()) * &half;
    // 1/√3 = √3/3
    let inv_sqrt3 = &ExactScalar::sqrt3() * &ExactScalar::ratio(1, 3);

    let mu1 = g("b1").add(&g("b2").scale(&s_plus));
    let mu2 = g("b1").add(&g("b2").scale(&s_minus));
    let nu1 = g("c1").add(&g("c2").scale(&s_plus));
    let nu2 = g("c1").add(&g("c2").scale(&s_minus));
    let theta1 = g("e1")
        .scale(&(&inv_sqrt3 * &ExactScalar::from_int(2)))
        .add(&g("e2").scale(&inv_sqrt3));
    let theta2 = g("e2");

    let d_theta1 = p.d(&theta1);
    let d_theta2 = p.d(&theta2);
    let rhs1 = mu1.wedge(&nu1).sub(&mu2.wedge(&nu2));
    let rhs2 = mu1.wedge(&nu2).add(&mu2.wedge(&nu1));
    (d_theta1 == rhs1, d_theta2 == rhs2)
}
