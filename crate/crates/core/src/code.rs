//! Linear codes given by a generator matrix: dual, hull, Gram matrix and the
//! self-dual / self-orthogonal / LCD predicates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::geometry::Monomial;
use crate::linalg::{intersect_rowspaces, Matrix, SubspaceBasis};

/// A linear `[N, K]` code over F_q with a full-rank `K × N` generator.
///
/// The generator is kept exactly as supplied so that row `i` keeps meaning
/// "the evaluation of basis monomial `i`"; canonical forms are only computed
/// for comparisons.
#[derive(Clone, Debug)]
pub struct LinearCode {
    generator: Matrix,
    label: String,
}

/// `Hull(C) = C ∩ C^⊥`, computed two ways.
#[derive(Clone, Debug, Serialize)]
pub struct HullReport {
    #[serde(skip)]
    pub hull_basis: SubspaceBasis,
    pub hull_dim: usize,
    pub gram_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_monomials: Option<Vec<Monomial>>,
}

impl LinearCode {
    /// Wraps a generator matrix, rejecting rank-deficient input.
    pub fn new(generator: Matrix, label: impl Into<String>) -> Result<LinearCode> {
        let rank = generator.rank();
        if rank != generator.rows() {
            return Err(Error::OutOfRange(format!(
                "generator has {} rows but rank {rank}",
                generator.rows()
            )));
        }
        Ok(LinearCode {
            generator,
            label: label.into(),
        })
    }

    /// The code spanned by the rows of `m`, whatever their rank.
    pub fn from_spanning(m: &Matrix, label: impl Into<String>) -> LinearCode {
        LinearCode {
            generator: SubspaceBasis::from_matrix(m).into_matrix(),
            label: label.into(),
        }
    }

    pub(crate) fn new_unchecked(generator: Matrix, label: String) -> LinearCode {
        LinearCode { generator, label }
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn canonical_basis(&self) -> SubspaceBasis {
        SubspaceBasis::from_matrix(&self.generator)
    }

    pub fn gram(&self) -> Matrix {
        self.generator.gram()
    }

    pub fn dual(&self) -> Result<LinearCode> {
        let kernel = self.generator.nullspace().into_matrix();
        if kernel.rows() + self.dimension() != self.length() {
            return Err(Error::InternalInconsistency(format!(
                "dual of {} has dimension {}, expected {}",
                self.label,
                kernel.rows(),
                self.length() - self.dimension()
            )));
        }
        if !self.generator.mul_transpose(&kernel)?.is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "dual of {} is not orthogonal to it",
                self.label
            )));
        }
        Ok(LinearCode {
            generator: kernel,
            label: format!("dual({})", self.label),
        })
    }

    /// Hull by subspace intersection, checked against `K - rank(G·Gᵀ)`.
    pub fn hull(&self) -> Result<HullReport> {
        let dual = self.dual()?;
        let hull_basis = intersect_rowspaces(&self.generator, dual.generator())?;
        let gram_rank = self.gram().rank();
        let hull_dim = hull_basis.dim();
        if hull_dim + gram_rank != self.dimension() {
            return Err(Error::InternalInconsistency(format!(
                "{}: hull dimension {hull_dim} by intersection but K - rank(GGᵀ) = {} - {gram_rank}",
                self.label,
                self.dimension()
            )));
        }
        Ok(HullReport {
            hull_basis,
            hull_dim,
            gram_rank,
            basis_monomials: None,
        })
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.gram().is_zero()
    }

    pub fn is_lcd(&self) -> bool {
        self.gram().rank() == self.dimension()
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.length() && self.is_self_orthogonal()
    }

    pub fn contains_vector(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.length() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a code of length {}",
                v.len(),
                self.length()
            )));
        }
        let extended =
            self.generator
                .vstack(&Matrix::from_rows(self.field(), v.len(), &[v.to_vec()])?)?;
        Ok(extended.rank() == self.dimension())
    }

    /// Adds `v` to the code (the span of the generator rows and `v`).
    pub fn adjoin(&self, v: &[Elem], label: impl Into<String>) -> Result<LinearCode> {
        let extra = Matrix::from_rows(self.field(), self.length(), &[v.to_vec()])?;
        Ok(LinearCode::from_spanning(
            &self.generator.vstack(&extra)?,
            label,
        ))
    }
}

/// Row-space equality.
pub fn equal_codes(a: &LinearCode, b: &LinearCode) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            left: a.field().q(),
            right: b.field().q(),
        });
    }
    if a.length() != b.length() {
        return Err(Error::DimensionMismatch(format!(
            "lengths {} and {}",
            a.length(),
            b.length()
        )));
    }
    Ok(a.dimension() == b.dimension() && a.canonical_basis() == b.canonical_basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn code(q: u64, rows: &[&[Elem]]) -> LinearCode {
        let f = Field::new(q).unwrap();
        let v: Vec<Vec<Elem>> = rows.iter().map(|r| r.to_vec()).collect();
        LinearCode::new(Matrix::from_rows(&f, rows[0].len(), &v).unwrap(), "test").unwrap()
    }

    fn tetracode() -> LinearCode {
        code(3, &[&[1, 1, 1, 0], &[0, 1, 2, 1]])
    }

    /// Predicates straight from the definitions, via explicit subspaces.
    fn by_definition(c: &LinearCode) -> (bool, bool, bool) {
        let d = c.dual().unwrap();
        let hull = intersect_rowspaces(c.generator(), d.generator()).unwrap();
        let so = hull.dim() == c.dimension();
        let sd = equal_codes(c, &d).unwrap();
        let lcd = hull.dim() == 0;
        (sd, so, lcd)
    }

    #[test]
    fn rejects_rank_deficient_generators() {
        let f = Field::new(3).unwrap();
        let m = Matrix::from_rows(&f, 2, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert!(LinearCode::new(m.clone(), "x").is_err());
        assert_eq!(LinearCode::from_spanning(&m, "x").dimension(), 1);
    }

    #[test]
    fn tetracode_is_self_dual() {
        let t = tetracode();
        assert!(t.is_self_dual());
        assert!(equal_codes(&t, &t.dual().unwrap()).unwrap());
        let h = t.hull().unwrap();
        assert_eq!(h.hull_dim, 2);
        assert_eq!(h.gram_rank, 0);
        assert_eq!(t.generator().nullspace(), t.canonical_basis());
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        let f = Field::new(5).unwrap();
        let full = LinearCode::new(Matrix::identity(&f, 4), "F_5^4").unwrap();
        let d = full.dual().unwrap();
        assert_eq!(d.dimension(), 0);
        assert_eq!(d.dual().unwrap().dimension(), 4);
        assert!(full.is_lcd());
    }

    #[test]
    fn contains_vector_and_errors() {
        let t = tetracode();
        for r in t.generator().row_vectors() {
            assert!(t.contains_vector(r).unwrap());
        }
        assert!(!t.contains_vector(&[1, 0, 0, 0]).unwrap());
        assert!(matches!(
            t.contains_vector(&[1, 0]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn equality_errors() {
        let t = tetracode();
        let other = code(5, &[&[1, 1, 1, 0]]);
        assert!(matches!(
            equal_codes(&t, &other),
            Err(Error::FieldMismatch { .. })
        ));
        let short = code(3, &[&[1, 1, 1]]);
        assert!(matches!(
            equal_codes(&t, &short),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn hull_serializes() {
        let h = tetracode().hull().unwrap();
        assert_eq!(
            serde_json::to_string(&h).unwrap(),
            r#"{"hull_dim":2,"gram_rank":0}"#
        );
    }

    fn arb_code() -> impl Strategy<Value = LinearCode> {
        (
            prop_oneof![Just(2u64), Just(3), Just(4), Just(5), Just(7)],
            1usize..8,
            0usize..6,
        )
            .prop_flat_map(|(q, n, k)| {
                prop::collection::vec(0..q as Elem, k * n).prop_map(move |data| {
                    let f = Field::new(q).unwrap();
                    LinearCode::from_spanning(&Matrix::new(&f, k, n, data).unwrap(), "random")
                })
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn dual_is_an_involution(c in arb_code()) {
            let d = c.dual().unwrap();
            prop_assert_eq!(d.dimension(), c.length() - c.dimension());
            prop_assert!(equal_codes(&d.dual().unwrap(), &c).unwrap());
        }

        #[test]
        fn hull_invariants(c in arb_code()) {
            let h = c.hull().unwrap();
            let hd = c.dual().unwrap().hull().unwrap();
            prop_assert_eq!(h.hull_dim, hd.hull_dim);
            prop_assert_eq!(h.hull_basis, hd.hull_basis);
            prop_assert_eq!(c.is_self_orthogonal(), h.hull_dim == c.dimension());
            prop_assert_eq!(c.is_lcd(), h.hull_dim == 0);
            if c.is_self_dual() {
                prop_assert_eq!(c.length() % 2, 0);
            }
            prop_assert_eq!((c.is_self_dual(), c.is_self_orthogonal(), c.is_lcd()), by_definition(&c));
        }
    }
}
