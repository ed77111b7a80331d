//! Cohomology of a cochain complex over Q: deterministic class bases, class
//! coordinates, cup products, the Poincaré pairing, and Lefschetz-map kernels.
//!
//! A complex is either the full exterior complex of a presentation or a
//! d-stable subcomplex given by explicit basis vectors per degree (the
//! invariant subcomplex of a group action). Per-degree results are computed
//! once and cached; the cache is race-free under concurrent readers.

use crate::exterior::{CdgaPresentation, Degree, GradedElement, Monomial};
use crate::linalg::{ExactMatrix, LinearSolver, RowSpace};
use crate::scalar::ExactScalar;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("element is not closed: d(z) = {dz}")]
    NotClosed { dz: String },
    #[error("element does not lie in the subcomplex")]
    NotInSubcomplex,
    #[error("operation requires a homogeneous element")]
    Inhomogeneous,
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("classes from different complexes")]
    MixedComplexes,
    #[error("top cohomology is not one-dimensional")]
    TopNotOneDimensional,
    #[error("class has degree {got}, expected {expected}")]
    WrongDegree { expected: usize, got: usize },
    #[error("subcomplex is not d-stable in degree {0}")]
    NotDStable(usize),
    #[error("subcomplex basis vectors in degree {0} are linearly dependent")]
    DependentBasis(usize),
}

static COMPLEX_IDS: AtomicUsize = AtomicUsize::new(0);

/// A cohomology class: coordinates with respect to the deterministic chosen
/// basis of H^k, plus a distinguished cocycle representative. The degree is
/// `None` only for the zero class obtained from the zero element, which is
/// compatible with every degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    complex_id: usize,
    degree: Option<usize>,
    coords: Vec<ExactScalar>,
    rep: GradedElement,
}

impl CohomologyClass {
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn coords(&self) -> &[ExactScalar] {
        &self.coords
    }

    pub fn representative(&self) -> &GradedElement {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

struct DegreeData {
    classes: Vec<CohomologyClass>,
    /// Solver for [rep columns | d_{k−1} columns] · [c; u] = z.
    class_solver: LinearSolver,
}

pub struct CochainComplex {
    presentation: Arc<CdgaPresentation>,
    id: usize,
    /// Ambient monomial basis per degree.
    monomials: Vec<Vec<Monomial>>,
    /// Chain basis as rows over the ambient monomials; `None` = full complex.
    sub: Option<Vec<ExactMatrix>>,
    dims: Vec<usize>,
    /// diffs[k]: dims[k+1] × dims[k] matrix of d in chain coordinates;
    /// diffs[n] is the zero map out of the top degree.
    diffs: Vec<ExactMatrix>,
    cache: Vec<OnceLock<DegreeData>>,
    /// Per-degree solver for the sub-basis change of coordinates.
    chain_solvers: Vec<OnceLock<LinearSolver>>,
    /// Per-degree solver for d_k · u = w (primitives of degree-(k+1) forms).
    primitive_solvers: Vec<OnceLock<LinearSolver>>,
}

impl CochainComplex {
    /// The full exterior complex Λ·(generators) of a presentation.
    pub fn full(presentation: Arc<CdgaPresentation>) -> Self {
        let n = presentation.generator_count();
        let monomials: Vec<Vec<Monomial>> = (0..=n)
            .map(|k| presentation.basis_of_degree(k).expect("degree in range"))
            .collect();
        let dims: Vec<usize> = monomials.iter().map(|b| b.len()).collect();
        let mut diffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let rows = if k + 1 <= n { dims[k + 1] } else { 0 };
            let mut m = ExactMatrix::zeros(rows, dims[k]);
            if k < n {
                let index: BTreeMap<&Monomial, usize> =
                    monomials[k + 1].iter().enumerate().map(|(i, mo)| (mo, i)).collect();
                for (j, mono) in monomials[k].iter().enumerate() {
                    let img = presentation.d(&GradedElement::from_terms(
                        presentation.table().clone(),
                        vec![(mono.clone(), ExactScalar::one())],
                    ));
                    for (mo, c) in img.terms() {
                        m.set(index[mo], j, c.clone());
                    }
                }
            }
            diffs.push(m);
        }
        let cache = (0..=n).map(|_| OnceLock::new()).collect();
        let chain_solvers = (0..=n).map(|_| OnceLock::new()).collect();
        let primitive_solvers = (0..=n).map(|_| OnceLock::new()).collect();
        CochainComplex {
            presentation,
            id: COMPLEX_IDS.fetch_add(1, Ordering::Relaxed),
            monomials,
            sub: None,
            dims,
            diffs,
            cache,
            chain_solvers,
            primitive_solvers,
        }
    }

    /// A subcomplex spanned, in each degree, by the rows of `bases[k]`
    /// (coordinates over the ambient monomial basis). The rows must be
    /// linearly independent and the span must be d-stable.
    pub fn from_sub_bases(
        presentation: Arc<CdgaPresentation>,
        bases: Vec<ExactMatrix>,
    ) -> Result<Self, CohomologyError> {
        let n = presentation.generator_count();
        assert_eq!(bases.len(), n + 1, "one basis per degree");
        let monomials: Vec<Vec<Monomial>> = (0..=n)
            .map(|k| presentation.basis_of_degree(k).expect("degree in range"))
            .collect();
        for (k, b) in bases.iter().enumerate() {
            assert_eq!(b.cols(), monomials[k].len(), "ambient dimension mismatch");
            if b.rank() != b.rows() {
                return Err(CohomologyError::DependentBasis(k));
            }
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.rows()).collect();
        let mut diffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let rows = if k + 1 <= n { dims[k + 1] } else { 0 };
            let mut m = ExactMatrix::zeros(rows, dims[k]);
            if k < n {
                // express d(basis vector) in the degree-(k+1) sub-basis
                let target = LinearSolver::new(&bases[k + 1].transpose());
                for j in 0..dims[k] {
                    let el = element_from_coords(
                        &presentation,
                        &monomials[k],
                        bases[k].row(j),
                    );
                    let img = presentation.d(&el);
                    let amb = ambient_coords(&monomials[k + 1], &img);
                    let sol = target
                        .solve(&amb)
                        .ok_or(CohomologyError::NotDStable(k))?;
                    for i in 0..rows {
                        m.set(i, j, sol[i].clone());
                    }
                }
            }
            diffs.push(m);
        }
        // consecutive differentials must compose to zero
        for k in 0..n {
            if diffs[k].rows() > 0 && diffs[k + 1].rows() > 0 {
                let comp = diffs[k + 1].mul(&diffs[k]);
                for i in 0..comp.rows() {
                    for j in 0..comp.cols() {
                        assert!(comp.get(i, j).is_zero(), "d² ≠ 0 on subcomplex");
                    }
                }
            }
        }
        let cache = (0..=n).map(|_| OnceLock::new()).collect();
        let chain_solvers = (0..=n).map(|_| OnceLock::new()).collect();
        let primitive_solvers = (0..=n).map(|_| OnceLock::new()).collect();
        Ok(CochainComplex {
            presentation,
            id: COMPLEX_IDS.fetch_add(1, Ordering::Relaxed),
            monomials,
            sub: Some(bases),
            dims,
            diffs,
            cache,
            chain_solvers,
            primitive_solvers,
        })
    }

    pub fn presentation(&self) -> &Arc<CdgaPresentation> {
        &self.presentation
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn chain_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_subcomplex(&self) -> bool {
        self.sub.is_some()
    }

    pub fn d_matrix(&self, k: usize) -> &ExactMatrix {
        &self.diffs[k]
    }

    /// Chain coordinates of a homogeneous element, or an error when the
    /// element does not lie in the subcomplex.
    pub fn element_to_chain(
        &self,
        k: usize,
        e: &GradedElement,
    ) -> Result<Vec<ExactScalar>, CohomologyError> {
        if k > self.top_degree() {
            return Err(CohomologyError::DegreeOutOfRange(k));
        }
        let amb = ambient_coords(&self.monomials[k], e);
        match &self.sub {
            None => Ok(amb),
            Some(bases) => self.chain_solvers[k]
                .get_or_init(|| LinearSolver::new(&bases[k].transpose()))
                .solve(&amb)
                .ok_or(CohomologyError::NotInSubcomplex),
        }
    }

    /// Deterministic solution of d_k · u = w (chain coordinates), or `None`
    /// when `w` is not a coboundary.
    pub fn solve_differential(&self, k: usize, w: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        self.primitive_solvers[k]
            .get_or_init(|| LinearSolver::new(&self.diffs[k]))
            .solve(w)
    }

    pub fn chain_to_element(&self, k: usize, coords: &[ExactScalar]) -> GradedElement {
        assert_eq!(coords.len(), self.dims[k], "chain coordinate length");
        match &self.sub {
            None => element_from_coords(&self.presentation, &self.monomials[k], coords),
            Some(bases) => {
                let mut acc = GradedElement::zero(self.presentation.table().clone());
                for (j, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let row = element_from_coords(
                        &self.presentation,
                        &self.monomials[k],
                        bases[k].row(j),
                    );
                    acc = acc.add(&row.scale(c));
                }
                acc
            }
        }
    }

    fn degree_data(&self, k: usize) -> &DegreeData {
        self.cache[k].get_or_init(|| self.compute_degree(k))
    }

    fn compute_degree(&self, k: usize) -> DegreeData {
        let dim = self.dims[k];
        // span of coboundaries, in echelon form
        let mut span = RowSpace::new(dim);
        if k > 0 {
            let dk1 = &self.diffs[k - 1];
            for j in 0..dk1.cols() {
                span.push(&dk1.col(j));
            }
        }
        // extend to the cocycle space by leftmost-pivot completion over the
        // free-variable kernel basis of d_k
        let kernel = if self.diffs[k].rows() == 0 {
            // d_k is the zero map; the whole chain space is closed
            (0..dim)
                .map(|j| {
                    let mut v = vec![ExactScalar::zero(); dim];
                    v[j] = ExactScalar::one();
                    v
                })
                .collect()
        } else {
            self.diffs[k].kernel_basis()
        };
        let mut classes = Vec::new();
        for v in kernel {
            if span.push(&v) {
                let rep = self.chain_to_element(k, &v);
                classes.push(CohomologyClass {
                    complex_id: self.id,
                    degree: Some(k),
                    coords: Vec::new(), // filled below, once the count is known
                    rep,
                });
            }
        }
        let count = classes.len();
        for (i, cl) in classes.iter_mut().enumerate() {
            let mut coords = vec![ExactScalar::zero(); count];
            coords[i] = ExactScalar::one();
            cl.coords = coords;
        }
        let reps: Vec<Vec<ExactScalar>> = classes
            .iter()
            .map(|c| {
                self.element_to_chain(k, &c.rep)
                    .expect("basis representative lies in the complex")
            })
            .collect();
        let cob_cols = if k > 0 { self.diffs[k - 1].cols() } else { 0 };
        let solver_matrix = ExactMatrix::from_fn(dim, reps.len() + cob_cols, |i, j| {
            if j < reps.len() {
                reps[j][i].clone()
            } else {
                self.diffs[k - 1].get(i, j - reps.len()).clone()
            }
        });
        DegreeData {
            classes,
            class_solver: LinearSolver::new(&solver_matrix),
        }
    }

    /// The deterministic basis of H^k.
    pub fn cohomology_basis(&self, k: usize) -> Result<&[CohomologyClass], CohomologyError> {
        if k > self.top_degree() {
            return Err(CohomologyError::DegreeOutOfRange(k));
        }
        Ok(&self.degree_data(k).classes)
    }

    pub fn betti(&self, k: usize) -> usize {
        if k > self.top_degree() {
            0
        } else {
            self.degree_data(k).classes.len()
        }
    }

    pub fn betti_vector(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|k| self.betti(k)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti_vector()
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// The zero class in degree `k` (empty coordinates when `k` exceeds the
    /// top degree).
    pub fn zero_class(&self, k: usize) -> CohomologyClass {
        let dim = if k > self.top_degree() { 0 } else { self.betti(k) };
        CohomologyClass {
            complex_id: self.id,
            degree: Some(k),
            coords: vec![ExactScalar::zero(); dim],
            rep: GradedElement::zero(self.presentation.table().clone()),
        }
    }

    pub fn class_from_coords(&self, k: usize, coords: Vec<ExactScalar>) -> CohomologyClass {
        let basis = self.cohomology_basis(k).expect("degree in range");
        assert_eq!(coords.len(), basis.len(), "coordinate length");
        let mut rep = GradedElement::zero(self.presentation.table().clone());
        for (c, b) in coords.iter().zip(basis) {
            rep = rep.add(&b.rep.scale(c));
        }
        CohomologyClass {
            complex_id: self.id,
            degree: Some(k),
            coords,
            rep,
        }
    }

    /// Coordinates of the class of a closed element: solves
    /// z = Σ cᵢ·repᵢ + d(u) and returns the cᵢ with `z` itself as the stored
    /// representative.
    pub fn class_of(&self, z: &GradedElement) -> Result<CohomologyClass, CohomologyError> {
        let k = match z.degree() {
            Degree::Zero => {
                return Ok(CohomologyClass {
                    complex_id: self.id,
                    degree: None,
                    coords: Vec::new(),
                    rep: z.clone(),
                })
            }
            Degree::Homogeneous(k) => k,
            Degree::Mixed => return Err(CohomologyError::Inhomogeneous),
        };
        if k > self.top_degree() {
            return Err(CohomologyError::DegreeOutOfRange(k));
        }
        let dz = self.presentation.d(z);
        if !dz.is_zero() {
            return Err(CohomologyError::NotClosed { dz: dz.to_string() });
        }
        let chain = self.element_to_chain(k, z)?;
        let data = self.degree_data(k);
        let count = data.classes.len();
        let sol = data
            .class_solver
            .solve(&chain)
            .expect("closed element decomposes over classes and coboundaries");
        Ok(CohomologyClass {
            complex_id: self.id,
            degree: Some(k),
            coords: sol[..count].to_vec(),
            rep: z.clone(),
        })
    }

    /// Cup product via representatives. Degrees beyond the top land in the
    /// zero class of an empty group.
    pub fn cup(
        &self,
        a: &CohomologyClass,
        b: &CohomologyClass,
    ) -> Result<CohomologyClass, CohomologyError> {
        if a.complex_id != self.id || b.complex_id != self.id {
            return Err(CohomologyError::MixedComplexes);
        }
        let (Some(da), Some(db)) = (a.degree, b.degree) else {
            // zero class of indeterminate degree
            return Ok(CohomologyClass {
                complex_id: self.id,
                degree: None,
                coords: Vec::new(),
                rep: GradedElement::zero(self.presentation.table().clone()),
            });
        };
        let deg = da + db;
        if deg > self.top_degree() {
            return Ok(CohomologyClass {
                complex_id: self.id,
                degree: Some(deg),
                coords: Vec::new(),
                rep: GradedElement::zero(self.presentation.table().clone()),
            });
        }
        self.class_of(&a.rep.wedge(&b.rep))
    }

    /// Coefficient of a top-degree class against the normalization in which
    /// the class of the positive full monomial (generator-table order)
    /// represents +1.
    pub fn top_coefficient(
        &self,
        a: &CohomologyClass,
    ) -> Result<ExactScalar, CohomologyError> {
        let n = self.top_degree();
        if self.betti(n) != 1 {
            return Err(CohomologyError::TopNotOneDimensional);
        }
        match a.degree {
            None => return Ok(ExactScalar::zero()),
            Some(d) if d == n => {}
            Some(d) => {
                return Err(CohomologyError::WrongDegree {
                    expected: n,
                    got: d,
                })
            }
        }
        if a.coords.is_empty() {
            return Ok(ExactScalar::zero());
        }
        let vol = GradedElement::from_terms(
            self.presentation.table().clone(),
            vec![(
                Monomial::new((0..self.presentation.generator_count() as u32).collect())
                    .expect("increasing"),
                ExactScalar::one(),
            )],
        );
        let vol_class = self.class_of(&vol)?;
        let t = &vol_class.coords[0];
        assert!(!t.is_zero(), "volume monomial must represent a nonzero class");
        Ok(&a.coords[0] / t)
    }

    /// Matrix of the pairing (a, b) ↦ coefficient of a∪b on the top class,
    /// over the chosen bases of H^k and H^{n−k}.
    pub fn poincare_pairing(&self, k: usize) -> Result<ExactMatrix, CohomologyError> {
        let n = self.top_degree();
        if self.betti(n) != 1 {
            return Err(CohomologyError::TopNotOneDimensional);
        }
        if k > n {
            return Err(CohomologyError::DegreeOutOfRange(k));
        }
        let left = self.cohomology_basis(k)?.to_vec();
        let right = self.cohomology_basis(n - k)?.to_vec();
        let mut m = ExactMatrix::zeros(left.len(), right.len());
        for (i, a) in left.iter().enumerate() {
            for (j, b) in right.iter().enumerate() {
                let prod = self.cup(a, b)?;
                m.set(i, j, self.top_coefficient(&prod)?);
            }
        }
        Ok(m)
    }

    /// Basis of ker(· ∪ ω^power : H^k → H^{k+2·power}), in H^k coordinates.
    pub fn lefschetz_kernel(
        &self,
        omega: &CohomologyClass,
        k: usize,
        power: usize,
    ) -> Result<Vec<Vec<ExactScalar>>, CohomologyError> {
        if omega.complex_id != self.id {
            return Err(CohomologyError::MixedComplexes);
        }
        if let Some(d) = omega.degree {
            if d != 2 {
                return Err(CohomologyError::WrongDegree { expected: 2, got: d });
            }
        }
        let basis = self.cohomology_basis(k)?.to_vec();
        let mut omega_pow = GradedElement::unit(self.presentation.table().clone());
        for _ in 0..power {
            omega_pow = omega_pow.wedge(&omega.rep);
        }
        let target = k + 2 * power;
        let target_dim = if target > self.top_degree() {
            0
        } else {
            self.betti(target)
        };
        let mut m = ExactMatrix::zeros(target_dim, basis.len());
        for (j, b) in basis.iter().enumerate() {
            if target > self.top_degree() {
                continue;
            }
            let img = self.class_of(&b.rep.wedge(&omega_pow))?;
            for i in 0..target_dim {
                m.set(i, j, img.coords[i].clone());
            }
        }
        if target_dim == 0 {
            // zero map: kernel is everything
            return Ok((0..basis.len())
                .map(|j| {
                    let mut v = vec![ExactScalar::zero(); basis.len()];
                    v[j] = ExactScalar::one();
                    v
                })
                .collect());
        }
        Ok(m.kernel_basis())
    }

    /// True when `v` (H^k coordinates) lies in the span of `vectors`.
    pub fn in_span(vectors: &[Vec<ExactScalar>], v: &[ExactScalar]) -> bool {
        if v.iter().all(|c| c.is_zero()) {
            return true;
        }
        let mut span = RowSpace::new(v.len());
        for w in vectors {
            span.push(w);
        }
        span.contains(v)
    }
}

fn ambient_coords(monomials: &[Monomial], e: &GradedElement) -> Vec<ExactScalar> {
    let index: BTreeMap<&Monomial, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut out = vec![ExactScalar::zero(); monomials.len()];
    for (m, c) in e.terms() {
        let i = *index
            .get(m)
            .expect("element degree matches the requested chain degree");
        out[i] = c.clone();
    }
    out
}

fn element_from_coords(
    p: &Arc<CdgaPresentation>,
    monomials: &[Monomial],
    coords: &[ExactScalar],
) -> GradedElement {
    GradedElement::from_terms(
        p.table().clone(),
        monomials
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}
