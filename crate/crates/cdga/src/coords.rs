//! Differential forms with polynomial coefficients on coordinate space:
//! exterior derivative, pullback under polynomial maps, and the group-law
//! equivariance checks for the nilmanifold coordinates.
//!
//! A coordinate system distinguishes coordinates (which carry differentials
//! and are differentiated) from parameters (symbolic constants).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Named variables: `coords` carry differentials, `params` are constants.
#[derive(Debug, PartialEq, Eq)]
pub struct CoordSystem {
    coords: Vec<String>,
    params: Vec<String>,
}

impl CoordSystem {
    pub fn new(coords: Vec<&str>, params: Vec<&str>) -> Arc<Self> {
        let sys = CoordSystem {
            coords: coords.into_iter().map(String::from).collect(),
            params: params.into_iter().map(String::from).collect(),
        };
        let mut all: Vec<&String> = sys.coords.iter().chain(&sys.params).collect();
        all.sort();
        all.dedup();
        assert_eq!(
            all.len(),
            sys.coords.len() + sys.params.len(),
            "variable names must be unique"
        );
        Arc::new(sys)
    }

    pub fn coord_count(&self) -> usize {
        self.coords.len()
    }

    pub fn var_count(&self) -> usize {
        self.coords.len() + self.params.len()
    }

    pub fn coord_name(&self, i: usize) -> &str {
        &self.coords[i]
    }

    pub fn var_name(&self, i: usize) -> &str {
        if i < self.coords.len() {
            &self.coords[i]
        } else {
            &self.params[i - self.coords.len()]
        }
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.coords
            .iter()
            .chain(&self.params)
            .position(|c| c == name)
    }
}

/// Exact multivariate polynomial over a coordinate system; exponent vectors
/// run over coords then params.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    system: Arc<CoordSystem>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero(system: Arc<CoordSystem>) -> Self {
        Poly {
            system,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(system: Arc<CoordSystem>, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(
                vec![0; system.var_count()],
                BigRational::from_integer(BigInt::from(c)),
            );
        }
        Poly { system, terms }
    }

    pub fn var(system: Arc<CoordSystem>, name: &str) -> Self {
        let i = system
            .var_index(name)
            .unwrap_or_else(|| panic!("unknown variable `{name}`"));
        let mut exp = vec![0u32; system.var_count()];
        exp[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, BigRational::one());
        Poly { system, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(Arc::ptr_eq(&self.system, &other.system), "mixed systems");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            system: self.system.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            system: self.system.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(Arc::ptr_eq(&self.system, &other.system), "mixed systems");
        let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = terms.entry(e).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            system: self.system.clone(),
            terms,
        }
    }

    /// ∂/∂(variable i).
    pub fn partial(&self, i: usize) -> Poly {
        let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            let coeff = c * BigRational::from_integer(BigInt::from(e[i]));
            let entry = terms.entry(e2).or_insert_with(BigRational::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            system: self.system.clone(),
            terms,
        }
    }

    /// Substitute each variable of `self` by the polynomial `subs[i]` (over
    /// a possibly different system).
    pub fn substitute(&self, target: &Arc<CoordSystem>, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.system.var_count(), "one value per variable");
        let mut acc = Poly::zero(target.clone());
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target.clone(), 1);
            term = Poly {
                system: target.clone(),
                terms: term
                    .terms
                    .into_iter()
                    .map(|(k, v)| (k, v * c))
                    .collect(),
            };
            for (i, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    term = term.mul(&subs[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(i, &p)| {
                        if p == 1 {
                            self.system.var_name(i).to_string()
                        } else {
                            format!("{}^{}", self.system.var_name(i), p)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}·{}", vars.join("·"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A differential form with polynomial coefficients: map from increasing
/// lists of coordinate indices to polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm {
    system: Arc<CoordSystem>,
    terms: BTreeMap<Vec<u32>, Poly>,
}

impl PolyForm {
    pub fn zero(system: Arc<CoordSystem>) -> Self {
        PolyForm {
            system,
            terms: BTreeMap::new(),
        }
    }

    pub fn function(p: Poly) -> Self {
        let system = p.system.clone();
        let mut f = PolyForm::zero(system);
        f.add_term(&[], p);
        f
    }

    /// dx_i for a coordinate name.
    pub fn differential(system: Arc<CoordSystem>, coord: &str) -> Self {
        let i = system
            .coord_index(coord)
            .unwrap_or_else(|| panic!("unknown coordinate `{coord}`"));
        let mut f = PolyForm::zero(system.clone());
        f.add_term(&[i as u32], Poly::constant(system, 1));
        f
    }

    pub fn add_term(&mut self, wedge: &[u32], coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        assert!(
            wedge.windows(2).all(|w| w[0] < w[1]),
            "wedge indices must increase"
        );
        assert!(
            wedge
                .iter()
                .all(|&i| (i as usize) < self.system.coord_count()),
            "differential index out of range"
        );
        let entry = self
            .terms
            .entry(wedge.to_vec())
            .or_insert_with(|| Poly::zero(self.system.clone()));
        *entry = entry.add(&coeff);
        if self
            .terms
            .get(wedge)
            .map(|p| p.is_zero())
            .unwrap_or(false)
        {
            self.terms.remove(wedge);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(w, p.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyForm {
        PolyForm {
            system: self.system.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, p)| (w.clone(), p.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &PolyForm) -> PolyForm {
        self.add(&other.neg())
    }

    pub fn scale(&self, p: &Poly) -> PolyForm {
        let mut out = PolyForm::zero(self.system.clone());
        for (w, q) in &self.terms {
            out.add_term(w, q.mul(p));
        }
        out
    }

    pub fn wedge(&self, other: &PolyForm) -> PolyForm {
        let mut out = PolyForm::zero(self.system.clone());
        for (w1, p1) in &self.terms {
            for (w2, p2) in &other.terms {
                if let Some((sign, w)) = merge_wedge(w1, w2) {
                    let mut c = p1.mul(p2);
                    if sign < 0 {
                        c = c.neg();
                    }
                    out.add_term(&w, c);
                }
            }
        }
        out
    }

    /// Exterior derivative: term-wise ∂-expansion over the coordinates.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.system.clone());
        for (w, p) in &self.terms {
            for i in 0..self.system.coord_count() {
                let dp = p.partial(i);
                if dp.is_zero() {
                    continue;
                }
                if let Some((sign, wedge)) = merge_wedge(&[i as u32], w) {
                    out.add_term(&wedge, if sign < 0 { dp.neg() } else { dp });
                }
            }
        }
        out
    }

    /// Pullback along a polynomial map: substitute the coordinate
    /// expressions and push each differential through by the chain rule.
    pub fn pullback(&self, map: &PolyMap) -> PolyForm {
        assert!(
            Arc::ptr_eq(&map.target, &self.system),
            "form must live on the map's target"
        );
        let subs = map.substitutions();
        let mut out = PolyForm::zero(map.source.clone());
        for (w, p) in &self.terms {
            let coeff = p.substitute(&map.source, &subs);
            let mut acc = PolyForm::function(coeff);
            for &i in w {
                // d(component_i) expanded over the source coordinates
                let mut dcomp = PolyForm::zero(map.source.clone());
                for s in 0..map.source.coord_count() {
                    let partial = map.components[i as usize].partial(s);
                    if !partial.is_zero() {
                        let mut t = PolyForm::zero(map.source.clone());
                        t.add_term(&[s as u32], partial);
                        dcomp = dcomp.add(&t);
                    }
                }
                acc = acc.wedge(&dcomp);
            }
            out = out.add(&acc);
        }
        out
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, p)| {
                let dxs: Vec<String> = w
                    .iter()
                    .map(|&i| format!("d{}", self.system.coord_name(i as usize)))
                    .collect();
                if dxs.is_empty() {
                    format!("({p:?})")
                } else {
                    format!("({p:?})·{}", dxs.join("∧"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn merge_wedge(a: &[u32], b: &[u32]) -> Option<(i32, Vec<u32>)> {
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
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((if inversions % 2 == 0 { 1 } else { -1 }, out))
}

/// A polynomial map: one source-variable expression per target coordinate.
/// Target parameters pull back to themselves (they must also be source
/// parameters by name).
#[derive(Clone, Debug)]
pub struct PolyMap {
    pub source: Arc<CoordSystem>,
    pub target: Arc<CoordSystem>,
    pub components: Vec<Poly>,
}

impl PolyMap {
    pub fn new(source: Arc<CoordSystem>, target: Arc<CoordSystem>, components: Vec<Poly>) -> Self {
        assert_eq!(
            components.len(),
            target.coord_count(),
            "one component per target coordinate"
        );
        for c in &components {
            assert!(Arc::ptr_eq(&c.system, &source), "components over the source");
        }
        PolyMap {
            source,
            target,
            components,
        }
    }

    /// Substitution vector for target variables: coordinates map to their
    /// components, parameters map to the same-named source variable.
    fn substitutions(&self) -> Vec<Poly> {
        let mut subs = self.components.clone();
        for i in self.target.coord_count()..self.target.var_count() {
            let name = self.target.var_name(i);
            subs.push(Poly::var(self.source.clone(), name));
        }
        subs
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &PolyMap) -> PolyMap {
        assert!(
            Arc::ptr_eq(&self.source, &other.target),
            "composition mismatch"
        );
        let subs = other.substitutions();
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(&other.source, &subs))
            .collect();
        PolyMap::new(other.source.clone(), self.target.clone(), components)
    }
}

// ---------------------------------------------------------------------------
// The nilmanifold group law and its checks
// ---------------------------------------------------------------------------

pub const GROUP_COORDS: [&str; 8] = ["x1", "x2", "y1", "y2", "z1", "z2", "v1", "v2"];

/// The coordinate 1-forms η₁, η₂ on the 6-dimensional factor:
/// η₁ = dv₁ − y₁dz₁ + y₂dz₁ + y₁dz₂ + 2y₂dz₂,
/// η₂ = dv₂ + 2y₁dz₁ + y₂dz₁ + y₁dz₂ − y₂dz₂.
pub fn eta_form(system: &Arc<CoordSystem>, which: usize) -> PolyForm {
    let v = |n: &str| Poly::var(system.clone(), n);
    let dz1 = PolyForm::differential(system.clone(), "z1");
    let dz2 = PolyForm::differential(system.clone(), "z2");
    match which {
        1 => PolyForm::differential(system.clone(), "v1")
            .add(&dz1.scale(&v("y2").sub(&v("y1"))))
            .add(&dz2.scale(&v("y1").add(&v("y2")).add(&v("y2")))),
        2 => PolyForm::differential(system.clone(), "v2")
            .add(&dz1.scale(&v("y1").add(&v("y1")).add(&v("y2"))))
            .add(&dz2.scale(&v("y1").sub(&v("y2")))),
        _ => panic!("which must be 1 or 2"),
    }
}

/// The group multiplication on the 8 coordinates, with the left factor given
/// by the named prime variables (either coordinates or parameters of the
/// source system).
pub fn group_law(source: &Arc<CoordSystem>, target: &Arc<CoordSystem>) -> PolyMap {
    let v = |n: &str| Poly::var(source.clone(), n);
    let comps = vec![
        v("x1").add(&v("x1p")),
        v("x2").add(&v("x2p")),
        v("y1").add(&v("y1p")),
        v("y2").add(&v("y2p")),
        v("z1").add(&v("z1p")),
        v("z2").add(&v("z2p")),
        // v1 + v1' + (y1' − y2')z1 − (y1' + 2y2')z2
        v("v1")
            .add(&v("v1p"))
            .add(&v("y1p").sub(&v("y2p")).mul(&v("z1")))
            .sub(&v("y1p").add(&v("y2p")).add(&v("y2p")).mul(&v("z2"))),
        // v2 + v2' − (2y1' + y2')z1 + (y2' − y1')z2
        v("v2")
            .add(&v("v2p"))
            .sub(&v("y1p").add(&v("y1p")).add(&v("y2p")).mul(&v("z1")))
            .add(&v("y2p").sub(&v("y1p")).mul(&v("z2"))),
    ];
    PolyMap::new(source.clone(), target.clone(), comps)
}

/// The order-3 twist on the 8 coordinates: each pair (u₁,u₂) maps to
/// (−u₁−u₂, u₁).
pub fn twist_map(system: &Arc<CoordSystem>) -> PolyMap {
    let v = |n: &str| Poly::var(system.clone(), n);
    let mut comps = Vec::new();
    for pair in GROUP_COORDS.chunks(2) {
        comps.push(v(pair[0]).neg().sub(&v(pair[1])));
        comps.push(v(pair[0]));
    }
    PolyMap::new(system.clone(), system.clone(), comps)
}

#[derive(Debug, Clone)]
pub struct EquivarianceReport {
    /// Components where m∘(ρ×ρ) and ρ∘m differ (name, lhs, rhs as debug strings).
    pub mismatches: Vec<(String, String, String)>,
    /// All residue pairs (v₁,v₂) mod 3 with v₁ ≡ v₂ where the image fails
    /// −v₁−v₂ ≡ v₁ (mod 3); empty = stable.
    pub residue_failures: Vec<(i64, i64)>,
    pub residue_cases: usize,
}

impl EquivarianceReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty() && self.residue_failures.is_empty()
    }
}

/// Expand m(ρ(p′), ρ(p)) and ρ(m(p′, p)) as polynomial maps in the 16
/// variables (p′, p) and compare componentwise; then check the lattice
/// congruence v₁ ≡ v₂ (mod 3) ⟹ −v₁−v₂ ≡ v₁ (mod 3) over all residue pairs.
pub fn verify_equivariance() -> EquivarianceReport {
    let primes: Vec<String> = GROUP_COORDS.iter().map(|c| format!("{c}p")).collect();
    let mut both: Vec<&str> = primes.iter().map(String::as_str).collect();
    both.extend(GROUP_COORDS);
    // all 16 variables are coordinates of the doubled system
    let doubled = CoordSystem::new(both, vec![]);
    let single = CoordSystem::new(GROUP_COORDS.to_vec(), vec![]);

    let m = group_law(&doubled, &single);
    let rho = twist_map(&single);
    // ρ×ρ on the doubled system
    let v = |n: &str| Poly::var(doubled.clone(), n);
    let mut comps = Vec::new();
    for half in [&primes.iter().map(String::as_str).collect::<Vec<_>>()[..], &GROUP_COORDS[..]] {
        for pair in half.chunks(2) {
            comps.push(v(pair[0]).neg().sub(&v(pair[1])));
            comps.push(v(pair[0]));
        }
    }
    let rho_x_rho = PolyMap::new(doubled.clone(), doubled.clone(), comps);

    let lhs = m.compose(&rho_x_rho);
    let rhs = rho.compose(&m);
    let mut mismatches = Vec::new();
    for (i, name) in GROUP_COORDS.iter().enumerate() {
        if lhs.components[i] != rhs.components[i] {
            mismatches.push((
                name.to_string(),
                format!("{:?}", lhs.components[i]),
                format!("{:?}", rhs.components[i]),
            ));
        }
    }

    let mut residue_failures = Vec::new();
    let mut residue_cases = 0;
    for v1 in 0..3i64 {
        for v2 in 0..3i64 {
            residue_cases += 1;
            if (v1 - v2).rem_euclid(3) != 0 {
                continue;
            }
            let image_v1 = (-v1 - v2).rem_euclid(3);
            let image_v2 = v1.rem_euclid(3);
            if (image_v1 - image_v2).rem_euclid(3) != 0 {
                residue_failures.push((v1, v2));
            }
        }
    }
    EquivarianceReport {
        mismatches,
        residue_failures,
        residue_cases,
    }
}

/// Same expansion with a deliberately wrong twist (swapping only the
/// y-coordinates), used to show the check is not vacuous: returns the first
/// differing component name.
pub fn equivariance_counterexample() -> Option<String> {
    let primes: Vec<String> = GROUP_COORDS.iter().map(|c| format!("{c}p")).collect();
    let mut both: Vec<&str> = primes.iter().map(String::as_str).collect();
    both.extend(GROUP_COORDS);
    let doubled = CoordSystem::new(both, vec![]);
    let single = CoordSystem::new(GROUP_COORDS.to_vec(), vec![]);
    let m = group_law(&doubled, &single);
    let v = |n: &str| Poly::var(single.clone(), n);
    // swap y1, y2 only; everything else fixed
    let bad = PolyMap::new(
        single.clone(),
        single.clone(),
        vec![
            v("x1"),
            v("x2"),
            v("y2"),
            v("y1"),
            v("z1"),
            v("z2"),
            v("v1"),
            v("v2"),
        ],
    );
    let vd = |n: &str| Poly::var(doubled.clone(), n);
    let order = [
        "x1p", "x2p", "y2p", "y1p", "z1p", "z2p", "v1p", "v2p", "x1", "x2", "y2", "y1", "z1",
        "z2", "v1", "v2",
    ];
    let comps: Vec<Poly> = order.iter().map(|n| vd(n)).collect();
    let bad_x_bad = PolyMap::new(doubled.clone(), doubled.clone(), comps);
    let lhs = m.compose(&bad_x_bad);
    let rhs = bad.compose(&m);
    GROUP_COORDS
        .iter()
        .enumerate()
        .find(|(i, _)| lhs.components[*i] != rhs.components[*i])
        .map(|(_, name)| name.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn six_system() -> Arc<CoordSystem> {
        CoordSystem::new(
            vec!["y1", "y2", "z1", "z2", "v1", "v2"],
            vec!["y1p", "y2p", "z1p", "z2p", "v1p", "v2p"],
        )
    }

    #[test]
    fn d_of_coordinate_eta_matches_structure_constants() {
        let sys = six_system();
        let eta1 = eta_form(&sys, 1);
        // −dy₁∧dz₁ + dy₂∧dz₁ + dy₁∧dz₂ + 2dy₂∧dz₂
        let dval = eta1.d();
        let dy1 = PolyForm::differential(sys.clone(), "y1");
        let dy2 = PolyForm::differential(sys.clone(), "y2");
        let dz1 = PolyForm::differential(sys.clone(), "z1");
        let dz2 = PolyForm::differential(sys.clone(), "z2");
        let two = Poly::constant(sys.clone(), 2);
        let expected = dy1
            .wedge(&dz1)
            .neg()
            .add(&dy2.wedge(&dz1))
            .add(&dy1.wedge(&dz2))
            .add(&dy2.wedge(&dz2).scale(&two));
        assert_eq!(dval, expected);
    }

    #[test]
    fn d_of_constant_and_d_squared() {
        let sys = six_system();
        let c = PolyForm::function(Poly::constant(sys.clone(), 7));
        assert!(c.d().is_zero());
        let v1dz1 = PolyForm::differential(sys.clone(), "z1")
            .scale(&Poly::var(sys.clone(), "v1"));
        assert!(v1dz1.d().d().is_zero());
    }

    /// Left translation on the 6 group coordinates with symbolic parameters.
    fn left_translation(sys: &Arc<CoordSystem>) -> PolyMap {
        let v = |n: &str| Poly::var(sys.clone(), n);
        PolyMap::new(
            sys.clone(),
            sys.clone(),
            vec![
                v("y1").add(&v("y1p")),
                v("y2").add(&v("y2p")),
                v("z1").add(&v("z1p")),
                v("z2").add(&v("z2p")),
                v("v1")
                    .add(&v("v1p"))
                    .add(&v("y1p").sub(&v("y2p")).mul(&v("z1")))
                    .sub(&v("y1p").add(&v("y2p")).add(&v("y2p")).mul(&v("z2"))),
                v("v2")
                    .add(&v("v2p"))
                    .sub(&v("y1p").add(&v("y1p")).add(&v("y2p")).mul(&v("z1")))
                    .add(&v("y2p").sub(&v("y1p")).mul(&v("z2"))),
            ],
        )
    }

    #[test]
    fn eta_forms_are_left_invariant() {
        let sys = six_system();
        let l = left_translation(&sys);
        for which in [1, 2] {
            let eta = eta_form(&sys, which);
            assert_eq!(eta.pullback(&l), eta, "η{which}");
        }
    }

    #[test]
    fn dy_pulls_back_to_dy() {
        let sys = six_system();
        let l = left_translation(&sys);
        let dy1 = PolyForm::differential(sys.clone(), "y1");
        assert_eq!(dy1.pullback(&l), dy1);
    }

    #[test]
    fn equivariance_of_the_group_law() {
        let report = verify_equivariance();
        assert!(report.pass(), "{:?}", report.mismatches);
        assert_eq!(report.residue_cases, 9);
    }

    #[test]
    fn broken_twist_is_detected() {
        let name = equivariance_counterexample();
        assert!(name.is_some());
    }

    fn poly_from_spec(sys: &Arc<CoordSystem>, spec: &[(i64, usize, u32)]) -> Poly {
        let mut acc = Poly::zero(sys.clone());
        for &(c, vi, p) in spec {
            let mut term = Poly::constant(sys.clone(), c);
            let name = sys.var_name(vi % sys.var_count()).to_string();
            for _ in 0..p {
                term = term.mul(&Poly::var(sys.clone(), &name));
            }
            acc = acc.add(&term);
        }
        acc
    }

    proptest! {
        #[test]
        fn d_squared_zero_on_random_forms(spec in proptest::collection::vec((0usize..6, 0usize..6), 1..4)) {
            let sys = six_system();
            let mut form = PolyForm::zero(sys.clone());
            for (i, j) in spec {
                let v = Poly::var(sys.clone(), sys.var_name(i));
                let mut t = PolyForm::differential(sys.clone(), sys.coord_name(j % 6));
                t = t.scale(&v.mul(&v));
                form = form.add(&t);
            }
            prop_assert!(form.d().d().is_zero());
        }

        #[test]
        fn pullback_commutes_with_d(coeff in 0usize..6, which in 0usize..6) {
            let sys = six_system();
            let l = left_translation(&sys);
            let v = Poly::var(sys.clone(), sys.var_name(coeff));
            let form = PolyForm::differential(sys.clone(), sys.coord_name(which))
                .scale(&v);
            prop_assert_eq!(form.pullback(&l).d(), form.d().pullback(&l));
        }

        #[test]
        fn pullback_is_functorial(spec in proptest::collection::vec((-3i64..4, 0usize..6, 0u32..3), 1..4)) {
            let sys = six_system();
            let c1 = poly_from_spec(&sys, &spec);
            let l = left_translation(&sys);
            let rho = {
                let v = |n: &str| Poly::var(sys.clone(), n);
                PolyMap::new(sys.clone(), sys.clone(), vec![
                    v("y1").neg().sub(&v("y2")), v("y1"),
                    v("z1").neg().sub(&v("z2")), v("z1"),
                    v("v1").neg().sub(&v("v2")), v("v1"),
                ])
            };
            // move the random polynomial onto a fixed 1-form
            let form = PolyForm::differential(sys.clone(), "z1").scale(&c1);
            let two_step = form.pullback(&l).pullback(&rho);
            let composed = form.pullback(&l.compose(&rho));
            prop_assert_eq!(two_step, composed);
        }
    }
}
