//! Integration checks tying the modules together on the named computations:
//! explicit differential matrices, primitives on the invariant subcomplex,
//! cup products of the distinguished classes, and the value/sign bookkeeping
//! of the quadruple certificate.

use cdga::action::AlgebraAutomorphism;
use cdga::cohomology::CochainComplex;
use cdga::exterior::GradedElement;
use cdga::linalg::ExactMatrix;
use cdga::massey::{
    certify_quadruple_nontrivial, defining_system, find_primitive, gmassey, lemma_bridge_witness,
    quadruple_value, ObstructionVerdict,
};
use cdga::presets;
use cdga::scalar::ExactScalar;
use cdga::suite::Workspace;

#[test]
fn degree_one_differential_matrix_of_m_has_rank_two() {
    let m = presets::preset_m();
    let p = m.presentation().clone();
    let degree2 = p.basis_of_degree(2).unwrap();
    let mut rows = Vec::new();
    for i in 0..p.generator_count() {
        let img = p.d(&GradedElement::generator(p.table().clone(), i));
        rows.push(
            degree2
                .iter()
                .map(|mono| img.coefficient(mono))
                .collect::<Vec<_>>(),
        );
    }
    let mat = ExactMatrix::from_rows(rows);
    assert_eq!((mat.rows(), mat.cols()), (8, 28));
    assert_eq!(mat.rank(), 2);
}

#[test]
fn canonical_primitive_on_the_quotient_differs_from_the_listed_one_by_a_closed_form() {
    let ws = Workspace::new();
    let p = ws.m_src.presentation().clone();
    let vartheta = ws.m_src.binding("vartheta").unwrap().clone();
    let tau2 = ws.m_src.binding("tau2").unwrap().clone();
    let listed_xi = ws.m_src.binding("xi").unwrap().clone();
    let target = vartheta.wedge(&tau2);
    let prim = find_primitive(&ws.quotient, &target)
        .unwrap()
        .expect("the product is exact on the quotient");
    assert_eq!(p.d(&prim), target);
    // same primitive equation as the listed 3-form, so the difference closes
    assert_eq!(p.d(&listed_xi), tau2.wedge(&vartheta));
    assert!(p.d(&prim.sub(&listed_xi)).is_zero());
}

#[test]
fn distinguished_cup_products_vanish_on_the_quotient() {
    let ws = Workspace::new();
    let theta = ws.class(&ws.quotient, "vartheta");
    assert!(ws.quotient.cup(&theta, &theta).unwrap().is_zero());
    for tau in ["tau1", "tau2", "tau3"] {
        let t = ws.class(&ws.quotient, tau);
        assert!(
            ws.quotient.cup(&theta, &t).unwrap().is_zero(),
            "[vartheta]∪[{tau}] must vanish"
        );
    }
}

#[test]
fn omega_squared_wedge_vartheta_is_the_zero_class_on_the_quotient() {
    let ws = Workspace::new();
    let omega = ws.m_src.binding("omega").unwrap().clone();
    let vartheta = ws.m_src.binding("vartheta").unwrap().clone();
    let z = omega.wedge(&omega).wedge(&vartheta);
    assert!(!z.is_zero());
    let cls = ws.quotient.class_of(&z).unwrap();
    assert!(cls.is_zero());
}

#[test]
fn quotient_poincare_pairing_in_degree_four_is_symmetric() {
    let ws = Workspace::new();
    let p = ws.quotient.poincare_pairing(4).unwrap();
    assert_eq!((p.rows(), p.cols()), (26, 26));
    assert_eq!(p.rank(), 26);
    for i in 0..26 {
        for j in 0..26 {
            assert_eq!(p.get(i, j), p.get(j, i));
        }
    }
}

#[test]
fn invariant_dimension_alternating_sum_matches_quotient_euler() {
    let ws = Workspace::new();
    let alt: i64 = ws
        .quotient
        .chain_dims()
        .iter()
        .enumerate()
        .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    assert_eq!(alt, ws.quotient.euler_characteristic());
    assert_eq!(alt, 54);
}

/// The raw defining-system value pairs with sigma to +1/3 of the top class;
/// the certificate's 6-form is its negative, giving the −1/3 value.
#[test]
fn quadruple_value_sign_convention() {
    let ws = Workspace::new();
    let classes = [
        ws.class(&ws.quotient, "tau2"),
        ws.class(&ws.quotient, "vartheta"),
        ws.class(&ws.quotient, "vartheta"),
        ws.class(&ws.quotient, "tau3"),
    ];
    let sigma = ws.class(&ws.quotient, "sigma");
    let sys = defining_system(&ws.quotient, &classes).unwrap();
    let value = quadruple_value(&ws.quotient, &sys).unwrap();
    let paired = ws.quotient.cup(&sigma, &value).unwrap();
    assert_eq!(
        ws.quotient.top_coefficient(&paired).unwrap(),
        ExactScalar::ratio(1, 3)
    );
    let cert = certify_quadruple_nontrivial(&ws.quotient, &classes, &sigma).unwrap();
    assert_eq!(cert.sigma_psi_top, Some(ExactScalar::ratio(-1, 3)));
}

/// The invariant defining system's certificate value is the same whether the
/// class arithmetic runs on the subcomplex or on the full complex, because
/// the value representative is one and the same form. With the full
/// complex's own (non-invariant) canonical system, however, the σ∧Ψ value is
/// choice-dependent — the intermediate degree-3 cohomology no longer
/// vanishes — and the canonical choice lands on zero: precisely why the
/// certificate demands the vanishing hypotheses and refuses to certify
/// there.
#[test]
fn sigma_psi_value_transfers_to_the_full_complex() {
    let ws = Workspace::new();
    let classes = [
        ws.class(&ws.quotient, "tau2"),
        ws.class(&ws.quotient, "vartheta"),
        ws.class(&ws.quotient, "vartheta"),
        ws.class(&ws.quotient, "tau3"),
    ];
    let sigma_form = ws.m_src.binding("sigma").unwrap().clone();
    let sys = defining_system(&ws.quotient, &classes).unwrap();
    let value = quadruple_value(&ws.quotient, &sys).unwrap();
    let psi = value.representative().neg();
    let on_full = ws.m_full.class_of(&sigma_form.wedge(&psi)).unwrap();
    assert_eq!(
        ws.m_full.top_coefficient(&on_full).unwrap(),
        ExactScalar::ratio(-1, 3)
    );

    let full_classes = [
        ws.class(&ws.m_full, "tau2"),
        ws.class(&ws.m_full, "vartheta"),
        ws.class(&ws.m_full, "vartheta"),
        ws.class(&ws.m_full, "tau3"),
    ];
    let sigma = ws.class(&ws.m_full, "sigma");
    let cert = certify_quadruple_nontrivial(&ws.m_full, &full_classes, &sigma).unwrap();
    assert_eq!(cert.verdict, ObstructionVerdict::Inconclusive);
    assert!(!cert.intermediate_h_vanish.iter().all(|&b| b));
    assert_eq!(cert.sigma_psi_top, Some(ExactScalar::zero()));
}

#[test]
fn certificate_with_zero_sigma_is_inconclusive() {
    let ws = Workspace::new();
    let classes = [
        ws.class(&ws.quotient, "tau2"),
        ws.class(&ws.quotient, "vartheta"),
        ws.class(&ws.quotient, "vartheta"),
        ws.class(&ws.quotient, "tau3"),
    ];
    let sigma = ws.quotient.zero_class(2);
    let cert = certify_quadruple_nontrivial(&ws.quotient, &classes, &sigma).unwrap();
    assert!(cert.sigma_psi.is_zero());
    assert_eq!(cert.verdict, ObstructionVerdict::Inconclusive);
}

#[test]
fn bridge_identity_with_all_zero_inputs() {
    let ws = Workspace::new();
    let zero = ws.quotient.zero_class(2);
    let w = lemma_bridge_witness(&ws.quotient, &zero, &zero, &zero, &zero).unwrap();
    assert!(w.chi.is_zero());
    assert!(w.identity_holds);
}

#[test]
fn gmassey_on_quotient_equals_reynolds_averaged_computation_on_m() {
    let ws = Workspace::new();
    let a = ws.class(&ws.quotient, "vartheta");
    let taus = ["tau1", "tau2", "tau3"];
    let xs: Vec<_> = taus.iter().map(|t| ws.class(&ws.quotient, t)).collect();
    let sub = gmassey(&ws.quotient, &a, &xs[0], &xs[1], &xs[2]).unwrap();
    assert_eq!(sub.value_top, Some(ExactScalar::ratio(-4, 3)));

    // full-complex classes and canonical primitives, then averaged
    let rho = AlgebraAutomorphism::from_source(&ws.m_src, "rho").unwrap();
    let fa = ws.class(&ws.m_full, "vartheta");
    let fxs: Vec<_> = taus.iter().map(|t| ws.class(&ws.m_full, t)).collect();
    let mut primitives = Vec::new();
    for x in &fxs {
        let w = fa.representative().wedge(x.representative());
        let p = find_primitive(&ws.m_full, &w).unwrap().unwrap();
        primitives.push(rho.reynolds(&p));
    }
    let rep = cdga::massey::gmassey_representative(
        [&primitives[0], &primitives[1], &primitives[2]],
        [
            fxs[0].representative(),
            fxs[1].representative(),
            fxs[2].representative(),
        ],
    );
    let cls = ws.m_full.class_of(&rep).unwrap();
    assert_eq!(
        ws.m_full.top_coefficient(&cls).unwrap(),
        ExactScalar::ratio(-4, 3)
    );
}

#[test]
fn volume_form_of_quotient_restricts_from_the_full_complex() {
    // the canonical top class representative on the quotient pairs to +1
    let ws = Workspace::new();
    let vol = ws.m_src.parse_element("a1^a2^b1^b2^c1^c2^e1^e2").unwrap();
    let sub_cls = ws.quotient.class_of(&vol).unwrap();
    assert_eq!(
        ws.quotient.top_coefficient(&sub_cls).unwrap(),
        ExactScalar::one()
    );
    let full_cls = ws.m_full.class_of(&vol).unwrap();
    assert_eq!(
        ws.m_full.top_coefficient(&full_cls).unwrap(),
        ExactScalar::one()
    );
}

#[test]
fn parse_reference_file_from_disk_matches_preset() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/presets/N.cdga"
    ))
    .unwrap();
    let parsed = cdga::dsl::parse_presentation(&text).unwrap();
    let preset = presets::preset_n();
    assert_eq!(parsed.serialize(), preset.serialize());
    let c = CochainComplex::full(parsed.presentation().clone());
    assert_eq!(c.betti_vector(), vec![1, 4, 8, 10, 8, 4, 1]);
}
