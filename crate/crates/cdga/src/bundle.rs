//! Principal 2-torus bundles over 4-tori from lattice data over the
//! Eisenstein or Gaussian integers: curvature-class matrices, the
//! intersection pairing on Λ²Z⁴, and the determinant invariant of the image
//! lattice that distinguishes inequivalent bundles.

use crate::linalg::{row_lattice_basis, IntMatrix};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("curvature matrix has rank {0}, need rank 2")]
    RankDeficient(usize),
}

/// Ring tag for a quadratic integer: Eisenstein (ζ² = −1 − ζ) or Gaussian
/// (i² = −1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadRing {
    Eisenstein,
    Gaussian,
}

/// m + n·ζ or m + n·i depending on the ring tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadInt {
    pub re: i64,
    pub im: i64,
}

impl QuadInt {
    pub fn new(re: i64, im: i64) -> Self {
        QuadInt { re, im }
    }

    pub fn zero() -> Self {
        QuadInt { re: 0, im: 0 }
    }

    pub fn mul(self, other: QuadInt, ring: QuadRing) -> QuadInt {
        match ring {
            // (a + bζ)(c + dζ) = ac + (ad + bc)ζ + bd·ζ², ζ² = −1 − ζ
            QuadRing::Eisenstein => QuadInt {
                re: self.re * other.re - self.im * other.im,
                im: self.re * other.im + self.im * other.re - self.im * other.im,
            },
            QuadRing::Gaussian => QuadInt {
                re: self.re * other.re - self.im * other.im,
                im: self.re * other.im + self.im * other.re,
            },
        }
    }

    pub fn sub(self, other: QuadInt) -> QuadInt {
        QuadInt {
            re: self.re - other.re,
            im: self.im - other.im,
        }
    }
}

/// Base lattice data for a principal 2-torus bundle: four basis vectors of
/// the rank-2 module over the ring (the fiber basis is {1, ζ} or {1, i}).
#[derive(Debug, Clone)]
pub struct BundleData {
    pub ring: QuadRing,
    pub base: [[QuadInt; 2]; 4],
}

impl BundleData {
    /// The standard data {(1,0), (ζ,0), (0,1), (0,ζ)}.
    pub fn standard(ring: QuadRing) -> Self {
        let one = QuadInt::new(1, 0);
        let zeta = QuadInt::new(0, 1);
        let zero = QuadInt::zero();
        BundleData {
            ring,
            base: [[one, zero], [zeta, zero], [zero, one], [zero, zeta]],
        }
    }
}

/// Column order for Λ²Z⁴: (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
pub const PAIR_ORDER: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The 2×6 curvature-class matrix: for each eᵢ∧eⱼ the ring element
/// a₁b₂ − a₂b₁ with eᵢ = (a₁,a₂), eⱼ = (b₁,b₂), written in the fiber
/// basis (rows: coefficient of 1, coefficient of ζ resp. i).
pub fn curvature_class_matrix(b: &BundleData) -> IntMatrix {
    let mut m = IntMatrix::zeros(2, 6);
    for (col, &(i, j)) in PAIR_ORDER.iter().enumerate() {
        let e = b.base[i];
        let f = b.base[j];
        let v = e[0].mul(f[1], b.ring).sub(e[1].mul(f[0], b.ring));
        m.set(0, col, v.re);
        m.set(1, col, v.im);
    }
    m
}

/// The intersection pairing on Λ²Z⁴, normalized so Q(e₁∧e₂, e₃∧e₄) = +1:
/// Q(eᵢ∧eⱼ, eₖ∧eₗ) is the sign of the permutation when {i,j,k,ℓ} = {1,2,3,4}
/// and 0 otherwise.
pub fn intersection_pairing_matrix() -> IntMatrix {
    let mut q = IntMatrix::zeros(6, 6);
    for (r, &(i, j)) in PAIR_ORDER.iter().enumerate() {
        for (c, &(k, l)) in PAIR_ORDER.iter().enumerate() {
            let mut seen = [false; 4];
            for idx in [i, j, k, l] {
                seen[idx] = true;
            }
            if seen != [true; 4] {
                continue;
            }
            let perm = [i, j, k, l];
            let mut inversions = 0;
            for s in 0..4 {
                for t in s + 1..4 {
                    if perm[s] > perm[t] {
                        inversions += 1;
                    }
                }
            }
            q.set(r, c, if inversions % 2 == 0 { 1 } else { -1 });
        }
    }
    q
}

/// |det| of the Gram matrix of the image lattice of a rank-2 curvature
/// matrix under the intersection pairing, computed on a reduced basis of the
/// row lattice so the result is basis-independent.
pub fn image_lattice_q_determinant(f: &IntMatrix) -> Result<i64, BundleError> {
    let rank = f.rank();
    if rank < 2 {
        return Err(BundleError::RankDeficient(rank));
    }
    let basis = row_lattice_basis(f);
    assert_eq!(basis.len(), 2, "rank-2 matrix has a 2-row lattice basis");
    let q = intersection_pairing_matrix();
    let pair = |u: &[i64], v: &[i64]| -> i64 {
        let mut acc = 0i64;
        for r in 0..6 {
            for c in 0..6 {
                acc += u[r] * q.get(r, c) * v[c];
            }
        }
        acc
    };
    let g00 = pair(&basis[0], &basis[0]);
    let g01 = pair(&basis[0], &basis[1]);
    let g10 = pair(&basis[1], &basis[0]);
    let g11 = pair(&basis[1], &basis[1]);
    Ok((g00 * g11 - g01 * g10).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BundleVerdict {
    /// The invariants differ; the bundles are inequivalent under any change
    /// of base and fiber bases.
    Distinct,
    /// Equal invariants decide nothing.
    Inconclusive,
}

pub fn bundles_equivalent(f1: &IntMatrix, f2: &IntMatrix) -> Result<BundleVerdict, BundleError> {
    let d1 = image_lattice_q_determinant(f1)?;
    let d2 = image_lattice_q_determinant(f2)?;
    Ok(if d1 != d2 {
        BundleVerdict::Distinct
    } else {
        BundleVerdict::Inconclusive
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use proptest::prelude::*;

    #[test]
    fn eisenstein_arithmetic() {
        let zeta = QuadInt::new(0, 1);
        let z2 = zeta.mul(zeta, QuadRing::Eisenstein);
        assert_eq!(z2, QuadInt::new(-1, -1));
        let z3 = z2.mul(zeta, QuadRing::Eisenstein);
        assert_eq!(z3, QuadInt::new(1, 0), "ζ³ = 1");
        // 1 + ζ + ζ² = 0
        let sum = QuadInt::new(1, 0).re + zeta.re + z2.re;
        let sum_im = QuadInt::new(1, 0).im + zeta.im + z2.im;
        assert_eq!((sum, sum_im), (0, 0));
        let i = QuadInt::new(0, 1);
        assert_eq!(i.mul(i, QuadRing::Gaussian), QuadInt::new(-1, 0));
    }

    #[test]
    fn eisenstein_curvature_rows() {
        let f = curvature_class_matrix(&BundleData::standard(QuadRing::Eisenstein));
        assert_eq!(f.row(0), &[0, 1, 0, 0, -1, 0]);
        assert_eq!(f.row(1), &[0, 0, 1, 1, -1, 0]);
    }

    #[test]
    fn gaussian_curvature_rows() {
        let f = curvature_class_matrix(&BundleData::standard(QuadRing::Gaussian));
        assert_eq!(f.row(0), &[0, 1, 0, 0, -1, 0]);
        assert_eq!(f.row(1), &[0, 0, 1, 1, 0, 0]);
    }

    #[test]
    fn degenerate_pair_gives_zero_entry() {
        let mut data = BundleData::standard(QuadRing::Eisenstein);
        data.base[1] = data.base[0];
        let f = curvature_class_matrix(&data);
        assert_eq!(f.get(0, 0), 0);
        assert_eq!(f.get(1, 0), 0);
    }

    #[test]
    fn pairing_is_symmetric_and_unimodular() {
        let q = intersection_pairing_matrix();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(q.get(i, j), q.get(j, i));
            }
        }
        assert_eq!(q.det().abs(), 1);
    }

    #[test]
    fn determinant_invariants() {
        let f = curvature_class_matrix(&BundleData::standard(QuadRing::Eisenstein));
        let fp = curvature_class_matrix(&BundleData::standard(QuadRing::Gaussian));
        assert_eq!(image_lattice_q_determinant(&f).unwrap(), 3);
        assert_eq!(image_lattice_q_determinant(&fp).unwrap(), 4);
        assert_eq!(bundles_equivalent(&f, &fp).unwrap(), BundleVerdict::Distinct);
        assert_eq!(bundles_equivalent(&f, &f).unwrap(), BundleVerdict::Inconclusive);
    }

    #[test]
    fn isotropic_rows_give_zero() {
        // rows e1∧e2 and e1∧e3: Q vanishes on the pair and on each square
        let f = IntMatrix::from_rows(vec![
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
        ]);
        assert_eq!(image_lattice_q_determinant(&f).unwrap(), 0);
    }

    #[test]
    fn rank_deficient_is_an_error() {
        let f = IntMatrix::from_rows(vec![vec![1, 0, 0, 0, 0, 0], vec![2, 0, 0, 0, 0, 0]]);
        assert!(matches!(
            image_lattice_q_determinant(&f),
            Err(BundleError::RankDeficient(1))
        ));
    }

    /// Λ² of a 4×4 integer matrix acting on the pair coordinates.
    pub(super) fn lambda2(p: &[[i64; 4]; 4]) -> IntMatrix {
        let mut m = IntMatrix::zeros(6, 6);
        for (r, &(k, l)) in PAIR_ORDER.iter().enumerate() {
            for (c, &(i, j)) in PAIR_ORDER.iter().enumerate() {
                m.set(r, c, p[k][i] * p[l][j] - p[k][j] * p[l][i]);
            }
        }
        m
    }

    fn unimodular4(seed: &[i64]) -> [[i64; 4]; 4] {
        // product of elementary shears is unimodular
        let mut p = [[0i64; 4]; 4];
        for (i, row) in p.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (step, &s) in seed.iter().enumerate() {
            let i = step % 4;
            let j = (step + 1 + (s.unsigned_abs() as usize % 3)) % 4;
            if i == j {
                continue;
            }
            for col in 0..4 {
                p[i][col] += (s % 3) * p[j][col];
            }
        }
        p
    }

    proptest! {
        #[test]
        fn invariant_under_basis_changes(
            seed in proptest::collection::vec(-4i64..4, 6),
            a in -3i64..4,
            b in -3i64..4,
        ) {
            let f = curvature_class_matrix(&BundleData::standard(QuadRing::Eisenstein));
            let p = unimodular4(&seed);
            let l2 = lambda2(&p);
            // fiber change: unimodular 2×2 shear combination
            let g = IntMatrix::from_rows(vec![vec![1, a], vec![b, 1 + a * b]]);
            assert_eq!(g.det(), 1);
            let changed = g.mul(&f).mul(&l2);
            prop_assert_eq!(
                image_lattice_q_determinant(&changed).unwrap(),
                image_lattice_q_determinant(&f).unwrap()
            );
            prop_assert_eq!(
                bundles_equivalent(&f, &changed).unwrap(),
                BundleVerdict::Inconclusive
            );
        }
    }
}
