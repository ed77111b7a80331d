//! Finite cyclic group actions on presentations: chain-map verification,
//! Reynolds averaging, invariant subcomplexes, isotypic multiplicities, and
//! the lattice fixed-point / quotient Euler bookkeeping.

use crate::cohomology::{CochainComplex, CohomologyError};
use crate::dsl::{ActionSpec, PresentationSource};
use crate::exterior::{CdgaPresentation, GradedElement};
use crate::linalg::{smith_normal_form, ExactMatrix, IntMatrix};
use crate::scalar::ExactScalar;
use num::bigint::BigInt;
use num::rational::BigRational;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("automorphism verification failed: {0}")]
    NotAnAutomorphism(String),
    #[error("isotypic decomposition requires an order-3 action, got order {0}")]
    WrongOrder(u32),
    #[error("non-integral A-multiplicity in degree {degree}: total {total}, invariant {invariant}")]
    NonIntegralMultiplicity {
        degree: usize,
        total: usize,
        invariant: usize,
    },
    #[error("lattice is not stable under the action")]
    UnstableLattice,
    #[error("degenerate action: det(ρ − I) = 0")]
    DegenerateAction,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// An algebra automorphism of a presentation, given by degree-1 images of the
/// generators, extended multiplicatively.
#[derive(Clone)]
pub struct AlgebraAutomorphism {
    presentation: Arc<CdgaPresentation>,
    images: Vec<GradedElement>,
    order: u32,
}

/// Outcome of [`AlgebraAutomorphism::verify`].
#[derive(Debug, Clone)]
pub struct AutomorphismReport {
    /// Generators where ρ*∘d ≠ d∘ρ*, with both sides.
    pub chain_map_failures: Vec<(String, GradedElement, GradedElement)>,
    /// Generators where the n-th iterate is not the identity.
    pub order_failures: Vec<(String, GradedElement)>,
}

impl AutomorphismReport {
    pub fn pass(&self) -> bool {
        self.chain_map_failures.is_empty() && self.order_failures.is_empty()
    }
}

impl AlgebraAutomorphism {
    pub fn new(
        presentation: Arc<CdgaPresentation>,
        images: Vec<GradedElement>,
        order: u32,
    ) -> Self {
        assert_eq!(
            images.len(),
            presentation.generator_count(),
            "one image per generator"
        );
        assert!(order >= 1, "order must be positive");
        AlgebraAutomorphism {
            presentation,
            images,
            order,
        }
    }

    pub fn from_source(src: &PresentationSource, name: &str) -> Option<Self> {
        let ActionSpec { order, images } = src.action(name)?.clone();
        Some(Self::new(src.presentation().clone(), images, order))
    }

    pub fn identity(presentation: Arc<CdgaPresentation>) -> Self {
        let images = (0..presentation.generator_count())
            .map(|i| GradedElement::generator(presentation.table().clone(), i))
            .collect();
        Self::new(presentation, images, 1)
    }

    pub fn presentation(&self) -> &Arc<CdgaPresentation> {
        &self.presentation
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Apply the automorphism: each monomial maps to the wedge of its
    /// generator images.
    pub fn apply(&self, x: &GradedElement) -> GradedElement {
        let table = self.presentation.table();
        let mut out = GradedElement::zero(table.clone());
        for (m, c) in x.terms() {
            let mut term = GradedElement::unit(table.clone()).scale(c);
            for &g in m.indices() {
                term = term.wedge(&self.images[g as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Check ρ*∘d = d∘ρ* and ρ*ⁿ = id on the generators.
    pub fn verify(&self) -> AutomorphismReport {
        let p = &self.presentation;
        let mut chain_map_failures = Vec::new();
        let mut order_failures = Vec::new();
        for i in 0..p.generator_count() {
            let g = GradedElement::generator(p.table().clone(), i);
            let lhs = self.apply(&p.d(&g));
            let rhs = p.d(&self.apply(&g));
            if lhs != rhs {
                chain_map_failures.push((p.table().name(i).to_string(), lhs, rhs));
            }
            let mut it = g.clone();
            for _ in 0..self.order {
                it = self.apply(&it);
            }
            if it != g {
                order_failures.push((p.table().name(i).to_string(), it));
            }
        }
        AutomorphismReport {
            chain_map_failures,
            order_failures,
        }
    }

    /// The Reynolds projector (1/n)·Σ_k (ρ*)^k.
    pub fn reynolds(&self, x: &GradedElement) -> GradedElement {
        let mut acc = x.clone();
        let mut cur = x.clone();
        for _ in 1..self.order {
            cur = self.apply(&cur);
            acc = acc.add(&cur);
        }
        acc.scale(&ExactScalar::ratio(1, self.order as i64))
    }

    /// The invariant subcomplex: per-degree RREF basis of the image of the
    /// Reynolds projector, with the restricted differential.
    pub fn invariant_subcomplex(&self) -> Result<CochainComplex, ActionError> {
        let report = self.verify();
        if !report.pass() {
            let detail = report
                .chain_map_failures
                .first()
                .map(|(g, _, _)| format!("does not commute with d on `{g}`"))
                .or_else(|| {
                    report
                        .order_failures
                        .first()
                        .map(|(g, _)| format!("iterate is not the identity on `{g}`"))
                })
                .unwrap_or_default();
            return Err(ActionError::NotAnAutomorphism(detail));
        }
        let p = &self.presentation;
        let n = p.generator_count();
        let mut bases = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let monomials = p.basis_of_degree(k).expect("degree in range");
            let rows: Vec<Vec<ExactScalar>> = monomials
                .iter()
                .map(|m| {
                    let e = GradedElement::from_terms(
                        p.table().clone(),
                        vec![(m.clone(), ExactScalar::one())],
                    );
                    let avg = self.reynolds(&e);
                    monomials.iter().map(|mm| avg.coefficient(mm)).collect()
                })
                .collect();
            let rref = ExactMatrix::from_rows(rows).rref();
            let basis = ExactMatrix::from_fn(rref.rank, monomials.len(), |i, j| {
                rref.reduced.get(i, j).clone()
            });
            bases.push(basis);
        }
        Ok(CochainComplex::from_sub_bases(p.clone(), bases)?)
    }

    /// Isotypic multiplicities in degree k for an order-3 action over the
    /// reals: (trivial multiplicity, multiplicity of the 2-dimensional
    /// representation). Errors when (total − invariant) is odd, which signals
    /// an action that is not of this type.
    pub fn isotypic_multiplicities(&self, k: usize) -> Result<(usize, usize), ActionError> {
        if self.order != 3 {
            return Err(ActionError::WrongOrder(self.order));
        }
        let p = &self.presentation;
        let monomials = p.basis_of_degree(k).expect("degree in range");
        let total = monomials.len();
        // invariant dimension = rank of the Reynolds projector
        let rows: Vec<Vec<ExactScalar>> = monomials
            .iter()
            .map(|m| {
                let e = GradedElement::from_terms(
                    p.table().clone(),
                    vec![(m.clone(), ExactScalar::one())],
                );
                let avg = self.reynolds(&e);
                monomials.iter().map(|mm| avg.coefficient(mm)).collect()
            })
            .collect();
        let invariant = ExactMatrix::from_rows(rows).rank();
        if (total - invariant) % 2 != 0 {
            return Err(ActionError::NonIntegralMultiplicity {
                degree: k,
                total,
                invariant,
            });
        }
        Ok((invariant, (total - invariant) / 2))
    }
}

// ---------------------------------------------------------------------------
// Lattice actions on 2-tori
// ---------------------------------------------------------------------------

/// A linear action on R² stabilizing a full-rank lattice L, given by the
/// 2×2 integer matrix of the action in standard coordinates and a basis of L
/// (columns).
#[derive(Debug, Clone)]
pub struct LatticeAction {
    rho: [[i64; 2]; 2],
    basis: [[i64; 2]; 2],
}

impl LatticeAction {
    /// Standard lattice Z².
    pub fn standard(rho: [[i64; 2]; 2]) -> Result<Self, ActionError> {
        Self::with_basis(rho, [[1, 0], [0, 1]])
    }

    /// `basis[r][c]`: row r, column c; the columns generate L. Checks ρL ⊆ L.
    pub fn with_basis(rho: [[i64; 2]; 2], basis: [[i64; 2]; 2]) -> Result<Self, ActionError> {
        let l = LatticeAction { rho, basis };
        if l.conjugated(&rho).is_none() {
            return Err(ActionError::UnstableLattice);
        }
        Ok(l)
    }

    /// B⁻¹ · m · B as an integer matrix, or None when not integral.
    fn conjugated(&self, m: &[[i64; 2]; 2]) -> Option<[[i64; 2]; 2]> {
        let b = &self.basis;
        let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
        assert!(det != 0, "lattice basis must be nonsingular");
        // adj(B) · m · B, then divide by det
        let adj = [[b[1][1], -b[0][1]], [-b[1][0], b[0][0]]];
        let mut prod = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = 0i64;
                for s in 0..2 {
                    for t in 0..2 {
                        acc += adj[i][s] * m[s][t] * b[t][j];
                    }
                }
                prod[i][j] = acc;
            }
        }
        let mut out = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                if prod[i][j] % det != 0 {
                    return None;
                }
                out[i][j] = prod[i][j] / det;
            }
        }
        Some(out)
    }

    /// Number of fixed points of the induced torus map: the index
    /// [L : (ρ−I)L] = |det(ρ−I)|, computed via Smith normal form of the
    /// matrix of ρ−I on the lattice basis.
    pub fn fixed_point_count(&self) -> Result<u64, ActionError> {
        let mi = [
            [self.rho[0][0] - 1, self.rho[0][1]],
            [self.rho[1][0], self.rho[1][1] - 1],
        ];
        let conj = self.conjugated(&mi).ok_or(ActionError::UnstableLattice)?;
        let m = IntMatrix::from_rows(vec![conj[0].to_vec(), conj[1].to_vec()]);
        if m.det() == 0 {
            return Err(ActionError::DegenerateAction);
        }
        let smith = smith_normal_form(&m);
        let product: i128 = smith.diag.iter().map(|&d| d as i128).product();
        debug_assert_eq!(product.abs(), m.det().abs());
        Ok(product.unsigned_abs() as u64)
    }
}

/// χ(X/Π) = (1/n)·χ(X) + Σ_p (1 − 1/#Π_p) for a cyclic group of order n
/// acting almost freely with the given isotropy orders at the exceptional
/// points.
pub fn quotient_euler(chi: i64, n: u32, isotropy_orders: &[u32]) -> BigRational {
    assert!(n >= 1);
    let mut acc = BigRational::new(BigInt::from(chi), BigInt::from(n));
    for &ord in isotropy_orders {
        assert!(ord >= 1);
        acc += BigRational::from_integer(BigInt::from(1))
            - BigRational::new(BigInt::from(1), BigInt::from(ord));
    }
    acc
}

/// Second Betti number of the resolution: each resolved point contributes
/// three exceptional divisors.
pub fn resolution_betti2(b2_orbifold: u64, fixed_points: u64) -> u64 {
    b2_orbifold + 3 * fixed_points
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use proptest::prelude::*;

    fn rho_m() -> AlgebraAutomorphism {
        let m = presets::preset_m();
        AlgebraAutomorphism::from_source(&m, "rho").unwrap()
    }

    #[test]
    fn rho_is_a_verified_order_three_automorphism() {
        let rho = rho_m();
        assert_eq!(rho.order(), 3);
        assert!(rho.verify().pass());
    }

    #[test]
    fn rho_commutes_with_d_on_eta1_explicitly() {
        let m = presets::preset_m();
        let rho = rho_m();
        let p = m.presentation().clone();
        let e1 = m.parse_element("e1").unwrap();
        let lhs = rho.apply(&p.d(&e1));
        let rhs = p.d(&rho.apply(&e1));
        assert_eq!(lhs, rhs);
        let expected = m
            .parse_element("-1*b1^c1 - 2*b2^c1 - 2*b1^c2 - b2^c2")
            .unwrap();
        assert_eq!(lhs, expected);
    }

    #[test]
    fn identity_map_passes_with_order_one() {
        let n = presets::preset_n();
        let id = AlgebraAutomorphism::identity(n.presentation().clone());
        assert!(id.verify().pass());
        assert_eq!(id.order(), 1);
    }

    #[test]
    fn reynolds_kills_degree_one_and_fixes_invariants() {
        let m = presets::preset_m();
        let rho = rho_m();
        let a1 = m.parse_element("a1").unwrap();
        assert!(rho.reynolds(&a1).is_zero());
        let omega = m.binding("omega").unwrap().clone();
        assert_eq!(rho.apply(&omega), omega);
        assert_eq!(rho.reynolds(&omega), omega);
    }

    #[test]
    fn invariant_dimensions_match_isotypic_decomposition() {
        let rho = rho_m();
        let sub = rho.invariant_subcomplex().unwrap();
        assert_eq!(
            sub.chain_dims(),
            &[1, 0, 16, 8, 36, 8, 16, 0, 1],
            "invariant dimensions by degree"
        );
        let expected_a = [0usize, 4, 6, 24, 17, 24, 6, 4, 0];
        for k in 0..=8 {
            let (triv, a) = rho.isotypic_multiplicities(k).unwrap();
            assert_eq!(triv, sub.dim(k));
            assert_eq!(a, expected_a[k]);
            assert_eq!(triv + 2 * a, binomial(8, k));
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        let mut r = 1usize;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn invariant_subcomplex_cohomology_is_the_quotient_betti_vector() {
        let rho = rho_m();
        let sub = rho.invariant_subcomplex().unwrap();
        assert_eq!(sub.betti_vector(), vec![1, 0, 13, 0, 26, 0, 13, 0, 1]);
        assert_eq!(sub.euler_characteristic(), 54);
    }

    #[test]
    fn trivial_action_gives_the_full_complex() {
        let t2 = presets::preset("T2").unwrap();
        let id = AlgebraAutomorphism::identity(t2.presentation().clone());
        let sub = id.invariant_subcomplex().unwrap();
        assert_eq!(sub.chain_dims(), &[1, 2, 1]);
        assert_eq!(sub.betti_vector(), vec![1, 2, 1]);
    }

    #[test]
    fn isotypic_requires_order_three() {
        let n = presets::preset_n();
        let id = AlgebraAutomorphism::identity(n.presentation().clone());
        assert!(matches!(
            id.isotypic_multiplicities(1),
            Err(ActionError::WrongOrder(1))
        ));
    }

    #[test]
    fn base_torus_fixed_points() {
        let l = LatticeAction::standard([[-1, -1], [1, 0]]).unwrap();
        assert_eq!(l.fixed_point_count().unwrap(), 3);
    }

    #[test]
    fn fiber_lattice_fixed_points() {
        let l = LatticeAction::with_basis([[-1, -1], [1, 0]], [[1, 3], [1, 0]]).unwrap();
        assert_eq!(l.fixed_point_count().unwrap(), 3);
    }

    #[test]
    fn product_over_four_factors_is_eighty_one() {
        let base = LatticeAction::standard([[-1, -1], [1, 0]]).unwrap();
        let fiber = LatticeAction::with_basis([[-1, -1], [1, 0]], [[1, 3], [1, 0]]).unwrap();
        let count = base.fixed_point_count().unwrap().pow(3) * fiber.fixed_point_count().unwrap();
        assert_eq!(count, 81);
    }

    #[test]
    fn degenerate_action_is_an_error() {
        let l = LatticeAction::standard([[1, 0], [0, 1]]).unwrap();
        assert!(matches!(
            l.fixed_point_count(),
            Err(ActionError::DegenerateAction)
        ));
    }

    #[test]
    fn quotient_euler_values() {
        let chi = quotient_euler(0, 3, &[3; 81]);
        assert_eq!(chi, BigRational::from_integer(BigInt::from(54)));
        assert_eq!(
            quotient_euler(7, 1, &[]),
            BigRational::from_integer(BigInt::from(7))
        );
        assert_eq!(
            quotient_euler(6, 3, &[]),
            BigRational::from_integer(BigInt::from(2))
        );
    }

    #[test]
    fn resolution_betti_bookkeeping() {
        assert_eq!(resolution_betti2(13, 81), 256);
        assert_eq!(resolution_betti2(7, 0), 7);
        assert_eq!(resolution_betti2(0, 1), 3);
    }

    proptest! {
        #[test]
        fn reynolds_is_an_idempotent_chain_projector(coeffs in proptest::collection::vec(-4i64..4, 8)) {
            let m = presets::preset_m();
            let rho = rho_m();
            let p = m.presentation().clone();
            // random 2-form from products of generators
            let names = ["a1", "a2", "b1", "b2", "c1", "c2", "e1", "e2"];
            let mut x = GradedElement::zero(p.table().clone());
            for (i, &c) in coeffs.iter().enumerate() {
                let g1 = m.parse_element(names[i]).unwrap();
                let g2 = m.parse_element(names[(i + 3) % 8]).unwrap();
                x = x.add(&g1.wedge(&g2).scale(&ExactScalar::from_int(c)));
            }
            let r = rho.reynolds(&x);
            prop_assert_eq!(rho.reynolds(&r).clone(), r.clone());
            prop_assert_eq!(rho.apply(&r), r.clone());
            prop_assert_eq!(p.d(&rho.reynolds(&x)), rho.reynolds(&p.d(&x)));
        }

        #[test]
        fn fixed_point_count_is_basis_invariant(a in -3i64..4, b in -3i64..4, c in -3i64..4) {
            // random unimodular basis change U = L·R with small triangular factors
            let u = [[1, a], [0, 1]];
            let l = [[1, 0], [b, 1]];
            let mut prod = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    prod[i][j] = u[i][0] * l[0][j] + u[i][1] * l[1][j];
                }
            }
            let sign = if c % 2 == 0 { 1 } else { -1 };
            let basis = [[prod[0][0] * sign, prod[0][1]], [prod[1][0] * sign, prod[1][1]]];
            let standard = LatticeAction::standard([[-1, -1], [1, 0]]).unwrap();
            let changed = LatticeAction::with_basis([[-1, -1], [1, 0]], basis);
            // Z² is stable under any unimodular reparametrization
            let changed = changed.expect("unimodular basis spans the same lattice");
            prop_assert_eq!(standard.fixed_point_count().unwrap(), changed.fixed_point_count().unwrap());
        }
    }
}
