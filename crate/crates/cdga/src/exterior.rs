//! The free graded-commutative algebra on degree-1 generators: canonical
//! monomials, wedge product, and a differential extended by the Leibniz rule.

use crate::scalar::ExactScalar;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements over different generator tables")]
    MixedTables,
    #[error("operation requires a homogeneous element")]
    Inhomogeneous,
    #[error("d² ≠ 0 on generator `{generator}`: d(d {generator}) = {value}")]
    DSquared { generator: String, value: String },
    #[error("differential image of `{generator}` is not homogeneous of degree 2")]
    BadDifferentialDegree { generator: String },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
}

/// Ordered list of degree-1 generator names. The order is fixed at
/// construction and induces the canonical monomial order.
#[derive(Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    names: Vec<String>,
}

impl GeneratorTable {
    pub fn new(names: Vec<String>) -> Result<Arc<Self>, AlgebraError> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlgebraError::DuplicateGenerator(n.clone()));
            }
        }
        Ok(Arc::new(GeneratorTable { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn same_table(a: &Arc<GeneratorTable>, b: &Arc<GeneratorTable>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// A canonical exterior monomial: strictly increasing generator indices.
/// The empty monomial is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(indices: Vec<u32>) -> Option<Self> {
        if indices.windows(2).all(|w| w[0] < w[1]) {
            Some(Monomial(indices))
        } else {
            None
        }
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    /// Merge two increasing monomials; `None` when an index repeats,
    /// otherwise the merged monomial with the sign of the merging permutation.
    pub fn wedge(&self, other: &Monomial) -> Option<(i32, Monomial)> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut inversions = 0usize;
        while i < a.len() && j < b.len() {
            if a[i] == b[j] {
                return None;
            }
            if a[i] < b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                // b[j] jumps over the remaining a-entries
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial(out)))
    }
}

/// Degree of an element: zero elements have every degree, mixed elements none.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(usize),
    Mixed,
}

/// A finite linear combination of canonical monomials. No zero coefficients
/// are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedElement {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl GradedElement {
    pub fn zero(table: Arc<GeneratorTable>) -> Self {
        GradedElement {
            table,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(table: Arc<GeneratorTable>) -> Self {
        Self::from_terms(table, vec![(Monomial::unit(), ExactScalar::one())])
    }

    pub fn generator(table: Arc<GeneratorTable>, i: usize) -> Self {
        assert!(i < table.len(), "generator index out of range");
        Self::from_terms(
            table,
            vec![(Monomial(vec![i as u32]), ExactScalar::one())],
        )
    }

    pub fn from_terms(
        table: Arc<GeneratorTable>,
        terms: impl IntoIterator<Item = (Monomial, ExactScalar)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            assert!(
                m.indices().iter().all(|&i| (i as usize) < table.len()),
                "monomial index out of range"
            );
            let entry = map.entry(m).or_insert_with(ExactScalar::zero);
            *entry = &*entry + &c;
        }
        map.retain(|_, c| !c.is_zero());
        GradedElement { table, terms: map }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => Degree::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Degree::Homogeneous(d)
                } else {
                    Degree::Mixed
                }
            }
        }
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degree() {
            Degree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        assert!(same_table(&self.table, &other.table), "mixed generator tables");
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(ExactScalar::zero);
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !c.is_zero());
        GradedElement {
            table: self.table.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &GradedElement) -> GradedElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedElement {
        self.scale(&ExactScalar::from_int(-1))
    }

    pub fn scale(&self, c: &ExactScalar) -> GradedElement {
        if c.is_zero() {
            return GradedElement::zero(self.table.clone());
        }
        GradedElement {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Wedge product. Panics on mixed generator tables; use
    /// [`GradedElement::try_wedge`] at boundaries where that can occur.
    pub fn wedge(&self, other: &GradedElement) -> GradedElement {
        self.try_wedge(other).expect("mixed generator tables")
    }

    pub fn try_wedge(&self, other: &GradedElement) -> Result<GradedElement, AlgebraError> {
        if !same_table(&self.table, &other.table) {
            return Err(AlgebraError::MixedTables);
        }
        let mut terms: BTreeMap<Monomial, ExactScalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((sign, m)) = m1.wedge(m2) {
                    let mut c = c1 * c2;
                    if sign < 0 {
                        c = -c;
                    }
                    let entry = terms.entry(m).or_insert_with(ExactScalar::zero);
                    *entry = &*entry + &c;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(GradedElement {
            table: self.table.clone(),
            terms,
        })
    }

    /// The involution x ↦ (−1)^{deg x} · x on homogeneous elements.
    pub fn bar(&self) -> Result<GradedElement, AlgebraError> {
        match self.degree() {
            Degree::Zero => Ok(self.clone()),
            Degree::Homogeneous(d) => Ok(if d % 2 == 0 {
                self.clone()
            } else {
                self.neg()
            }),
            Degree::Mixed => Err(AlgebraError::Inhomogeneous),
        }
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mono = if m.degree() == 0 {
                "1".to_string()
            } else {
                m.indices()
                    .iter()
                    .map(|&i| self.table.name(i as usize).to_string())
                    .collect::<Vec<_>>()
                    .join("^")
            };
            let cs = c.to_string();
            let (sign, body) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if body == "1" && m.degree() > 0 {
                write!(f, "{mono}")?;
            } else if m.degree() == 0 {
                write!(f, "{body}")?;
            } else if body.contains(['+', '-']) || body.contains("sqrt") {
                write!(f, "({body})*{mono}")?;
            } else {
                write!(f, "{body}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A presentation: degree-1 generators plus the differential's value on each
/// generator. d² = 0 is enforced at construction.
#[derive(Debug)]
pub struct CdgaPresentation {
    table: Arc<GeneratorTable>,
    diffs: Vec<GradedElement>,
}

/// Per-generator result of the d² check.
#[derive(Debug, Clone)]
pub struct DSquaredReport {
    pub failures: Vec<(String, GradedElement)>,
}

impl DSquaredReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

impl CdgaPresentation {
    /// Checked construction: differentials must be homogeneous of degree 2
    /// (or zero) and must satisfy d² = 0 on every generator.
    pub fn new(
        table: Arc<GeneratorTable>,
        diffs: Vec<GradedElement>,
    ) -> Result<Arc<Self>, AlgebraError> {
        assert_eq!(diffs.len(), table.len(), "one differential per generator");
        for (i, dx) in diffs.iter().enumerate() {
            match dx.degree() {
                Degree::Zero | Degree::Homogeneous(2) => {}
                _ => {
                    return Err(AlgebraError::BadDifferentialDegree {
                        generator: table.name(i).to_string(),
                    })
                }
            }
        }
        let p = CdgaPresentation {
            table: table.clone(),
            diffs,
        };
        let report = p.check_d_squared();
        if let Some((g, v)) = report.failures.into_iter().next() {
            return Err(AlgebraError::DSquared {
                generator: g,
                value: v.to_string(),
            });
        }
        Ok(Arc::new(p))
    }

    /// Unchecked construction, for building deliberately broken presentations
    /// in diagnostics and tests.
    pub fn new_unchecked(table: Arc<GeneratorTable>, diffs: Vec<GradedElement>) -> Arc<Self> {
        assert_eq!(diffs.len(), table.len(), "one differential per generator");
        Arc::new(CdgaPresentation { table, diffs })
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn generator_count(&self) -> usize {
        self.table.len()
    }

    pub fn generator_differential(&self, i: usize) -> &GradedElement {
        &self.diffs[i]
    }

    /// d of a single monomial via the Leibniz rule:
    /// d(g_{i₁}∧…∧g_{i_k}) = Σ_j (−1)^{j−1} g_{i₁}∧…∧d(g_{i_j})∧…∧g_{i_k}.
    /// Each d(g) is degree 2 (even), so it commutes past the prefix for free.
    fn d_monomial(&self, m: &Monomial) -> GradedElement {
        let mut out = GradedElement::zero(self.table.clone());
        for (j, &g) in m.indices().iter().enumerate() {
            let dg = &self.diffs[g as usize];
            if dg.is_zero() {
                continue;
            }
            let rest: Vec<u32> = m
                .indices()
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != j)
                .map(|(_, &i)| i)
                .collect();
            let rest_el = GradedElement::from_terms(
                self.table.clone(),
                vec![(Monomial(rest), ExactScalar::one())],
            );
            let term = dg.wedge(&rest_el);
            out = if j % 2 == 0 {
                out.add(&term)
            } else {
                out.sub(&term)
            };
        }
        out
    }

    pub fn d(&self, x: &GradedElement) -> GradedElement {
        assert!(same_table(&self.table, x.table()), "mixed generator tables");
        let mut out = GradedElement::zero(self.table.clone());
        for (m, c) in x.terms() {
            out = out.add(&self.d_monomial(m).scale(c));
        }
        out
    }

    pub fn check_d_squared(&self) -> DSquaredReport {
        let mut failures = Vec::new();
        for i in 0..self.table.len() {
            let g = GradedElement::generator(self.table.clone(), i);
            let dd = self.d(&self.d(&g));
            if !dd.is_zero() {
                failures.push((self.table.name(i).to_string(), dd));
            }
        }
        DSquaredReport { failures }
    }

    /// All C(n, k) increasing monomials of degree k, in lexicographic order.
    pub fn basis_of_degree(&self, k: usize) -> Result<Vec<Monomial>, AlgebraError> {
        let n = self.table.len();
        if k > n {
            return Err(AlgebraError::DegreeOutOfRange(k));
        }
        let mut out = Vec::new();
        let mut current: Vec<u32> = (0..k as u32).collect();
        if k == 0 {
            return Ok(vec![Monomial::unit()]);
        }
        loop {
            out.push(Monomial(current.clone()));
            // next combination in lexicographic order
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if current[i] < (n - k + i) as u32 {
                    current[i] += 1;
                    for j in i + 1..k {
                        current[j] = current[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use proptest::prelude::*;

    fn table2() -> Arc<GeneratorTable> {
        GeneratorTable::new(vec!["x".into(), "y".into()]).unwrap()
    }

    #[test]
    fn generator_squares_to_zero() {
        let t = table2();
        let x = GradedElement::generator(t.clone(), 0);
        assert!(x.wedge(&x).is_zero());
        // any degree-1 element squares to zero, not just generators
        let y = GradedElement::generator(t, 1);
        let combo = x.scale(&ExactScalar::ratio(2, 3)).add(&y.neg());
        assert!(combo.wedge(&combo).is_zero());
    }

    #[test]
    fn degree_one_anticommutes() {
        let t = table2();
        let x = GradedElement::generator(t.clone(), 0);
        let y = GradedElement::generator(t, 1);
        assert_eq!(x.wedge(&y), y.wedge(&x).neg());
    }

    #[test]
    fn mixed_tables_rejected() {
        let t1 = table2();
        let t2 = GeneratorTable::new(vec!["u".into(), "v".into()]).unwrap();
        let x = GradedElement::generator(t1, 0);
        let u = GradedElement::generator(t2, 0);
        assert_eq!(x.try_wedge(&u), Err(AlgebraError::MixedTables));
    }

    #[test]
    fn bar_is_parity_sign_and_involution() {
        let m = presets::preset_m();
        let deg2 = m.parse_element("b1^c2 + 3*a1^a2").unwrap();
        let deg3 = m.parse_element("a1^b1^c1").unwrap();
        assert_eq!(deg2.bar().unwrap(), deg2);
        assert_eq!(deg3.bar().unwrap(), deg3.neg());
        assert_eq!(deg3.bar().unwrap().bar().unwrap(), deg3);
        let mixed = deg2.add(&deg3);
        assert_eq!(mixed.bar(), Err(AlgebraError::Inhomogeneous));
    }

    #[test]
    fn d_of_eta1_matches_structure_equations() {
        let n = presets::preset_n();
        let e1 = n.parse_element("e1").unwrap();
        let expected = n
            .parse_element("-1*b1^c1 + b2^c1 + b1^c2 + 2*b2^c2")
            .unwrap();
        assert_eq!(n.presentation().d(&e1), expected);
    }

    #[test]
    fn listed_degree_two_class_is_closed() {
        let n = presets::preset_n();
        let z = n.parse_element("b1^e2 - b2^e1").unwrap();
        assert!(n.presentation().d(&z).is_zero());
    }

    #[test]
    fn d_of_unit_is_zero() {
        let n = presets::preset_n();
        let unit = GradedElement::unit(n.presentation().table().clone());
        assert!(n.presentation().d(&unit).is_zero());
    }

    #[test]
    fn d_squared_check_passes_on_presets() {
        for name in ["N", "M", "T2", "T6", "heisenberg-real"] {
            let p = presets::preset(name).unwrap();
            assert!(p.presentation().check_d_squared().pass(), "{name}");
        }
    }

    #[test]
    fn d_squared_failure_names_generator() {
        // dw = u∧v is fine, but de = w∧e breaks the chain condition:
        // d²(e) = dw∧e − w∧de = u∧v∧e ≠ 0
        let t = GeneratorTable::new(vec!["u".into(), "v".into(), "w".into(), "e".into()])
            .unwrap();
        let g = |i: usize| GradedElement::generator(t.clone(), i);
        let diffs = vec![
            GradedElement::zero(t.clone()),
            GradedElement::zero(t.clone()),
            g(0).wedge(&g(1)),
            g(2).wedge(&g(3)),
        ];
        match CdgaPresentation::new(t.clone(), diffs.clone()) {
            Err(AlgebraError::DSquared { generator, value }) => {
                assert_eq!(generator, "e");
                assert_eq!(value, "u^v^e");
            }
            other => panic!("expected d² failure, got {other:?}"),
        }
        let unchecked = CdgaPresentation::new_unchecked(t, diffs);
        let report = unchecked.check_d_squared();
        assert!(!report.pass());
        assert_eq!(report.failures[0].0, "e");
    }

    #[test]
    fn basis_sizes() {
        let m = presets::preset_m();
        let p = m.presentation();
        assert_eq!(p.basis_of_degree(0).unwrap(), vec![Monomial::unit()]);
        assert_eq!(p.basis_of_degree(4).unwrap().len(), 70);
        let n = presets::preset_n();
        let top = n.presentation().basis_of_degree(6).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].indices(), &[0, 1, 2, 3, 4, 5]);
    }

    fn arb_monomial(n: u32) -> impl Strategy<Value = Monomial> {
        proptest::collection::btree_set(0..n, 0..=n as usize)
            .prop_map(|s| Monomial::new(s.into_iter().collect()).unwrap())
    }

    proptest! {
        #[test]
        fn wedge_associative_on_monomials(a in arb_monomial(8), b in arb_monomial(8), c in arb_monomial(8)) {
            let m = presets::preset_m();
            let t = m.presentation().table().clone();
            let ea = GradedElement::from_terms(t.clone(), vec![(a, ExactScalar::one())]);
            let eb = GradedElement::from_terms(t.clone(), vec![(b, ExactScalar::one())]);
            let ec = GradedElement::from_terms(t, vec![(c, ExactScalar::one())]);
            prop_assert_eq!(ea.wedge(&eb).wedge(&ec), ea.wedge(&eb.wedge(&ec)));
        }

        #[test]
        fn graded_leibniz(a in arb_monomial(8), b in arb_monomial(8)) {
            let m = presets::preset_m();
            let p = m.presentation().clone();
            let t = p.table().clone();
            let x = GradedElement::from_terms(t.clone(), vec![(a.clone(), ExactScalar::one())]);
            let y = GradedElement::from_terms(t, vec![(b, ExactScalar::one())]);
            let lhs = p.d(&x.wedge(&y));
            let sign = if a.degree() % 2 == 0 { 1 } else { -1 };
            let rhs = p.d(&x).wedge(&y).add(&x.wedge(&p.d(&y)).scale(&ExactScalar::from_int(sign)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn d_squared_zero_on_monomials(a in arb_monomial(8)) {
            let m = presets::preset_m();
            let p = m.presentation().clone();
            let x = GradedElement::from_terms(p.table().clone(), vec![(a, ExactScalar::one())]);
            prop_assert!(p.d(&p.d(&x)).is_zero());
        }

        #[test]
        fn graded_commutativity(a in arb_monomial(8), b in arb_monomial(8)) {
            let m = presets::preset_m();
            let t = m.presentation().table().clone();
            let ea = GradedElement::from_terms(t.clone(), vec![(a.clone(), ExactScalar::one())]);
            let eb = GradedElement::from_terms(t, vec![(b.clone(), ExactScalar::one())]);
            let sign = if (a.degree() * b.degree()) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(ea.wedge(&eb), eb.wedge(&ea).scale(&ExactScalar::from_int(sign)));
        }
    }
}
