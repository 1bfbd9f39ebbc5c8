//! Dense exact linear algebra over F_q.
//!
//! Row reduction is the single primitive: rank, nullspace, subspace
//! intersection and subspace equality all go through [`Matrix::rref`].
//! A [`SubspaceBasis`] is always stored in reduced row-echelon form without
//! zero rows, which makes it a canonical representative of its row space.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    /// Same shape as the input; zero rows at the bottom.
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x as u32 >= field.q()) {
            return Err(Error::OutOfRange(format!("entry {bad} in F_{}", field.q())));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {cols}-column matrix",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Elem]> {
        // chunks_exact panics on a zero chunk size
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.q(),
                right: other.field.q(),
            });
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // row-times-row against the transpose keeps both operands contiguous
        self.mul_transpose(&other.transpose())
    }

    /// `self · otherᵀ`, i.e. the matrix of pairwise row inner products.
    pub fn mul_transpose(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times transpose of {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                out.data[i * other.rows + j] = self.field.dot(self.row(i), other.row(j));
            }
        }
        Ok(out)
    }

    /// The Gram matrix `G·Gᵀ`.
    pub fn gram(&self) -> Matrix {
        let n = self.rows;
        let mut out = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.field.dot(self.row(i), self.row(j));
                out.data[i * n + j] = v;
                out.data[j * n + i] = v;
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Row-reduced echelon form. The pivot in each column is the first
    /// nonzero entry at or below the current pivot row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let f = &self.field;
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..cols {
            if prow == m.rows {
                break;
            }
            let Some(r) = (prow..m.rows).find(|&r| m.data[r * cols + col] != 0) else {
                continue;
            };
            if r != prow {
                for j in col..cols {
                    m.data.swap(r * cols + j, prow * cols + j);
                }
            }
            let inv = f.inv(m.data[prow * cols + col]).expect("pivot is nonzero");
            f.scale(&mut m.data[prow * cols + col..(prow + 1) * cols], inv);
            let (before, rest) = m.data.split_at_mut(prow * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let pivot_tail = &pivot_row[col..];
            for other in before
                .chunks_exact_mut(cols)
                .chain(after.chunks_exact_mut(cols))
            {
                let c = other[col];
                if c != 0 {
                    f.axpy(&mut other[col..], f.neg(c), pivot_tail);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref {
            rank: pivots.len(),
            pivots,
            matrix: m,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel `{x : M·xᵀ = 0}`.
    pub fn nullspace(&self) -> SubspaceBasis {
        let Rref {
            matrix: r,
            pivots,
            rank,
        } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Matrix::zeros(f, free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            basis.data[b * self.cols + fc] = 1;
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                basis.data[b * self.cols + pc] = f.neg(r.get(i, fc));
            }
        }
        SubspaceBasis::from_matrix(&basis)
    }

    /// Text form: a header line `q rows cols`, then one line of
    /// space-separated element indices per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.field.q(), self.rows, self.cols);
        for r in self.row_vectors() {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Matrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let nums: Vec<u64> = parse_ints(header)?;
        let [q, rows, cols] = nums[..] else {
            return Err(Error::Parse(format!(
                "header must be `q rows cols`, got `{header}`"
            )));
        };
        let field = Field::new(q)?;
        let mut data = Vec::with_capacity((rows * cols) as usize);
        for (i, line) in lines.enumerate() {
            let row = parse_ints(line)?;
            if row.len() as u64 != cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for x in row {
                if x >= q {
                    return Err(Error::Parse(format!("entry {x} out of range for F_{q}")));
                }
                data.push(x as Elem);
            }
        }
        if data.len() as u64 != rows * cols {
            return Err(Error::Parse(format!(
                "expected {rows} rows, got {}",
                data.len() as u64 / cols.max(1)
            )));
        }
        Matrix::new(&field, rows as usize, cols as usize, data)
    }
}

fn parse_ints(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|e| Error::Parse(format!("`{t}`: {e}")))
        })
        .collect()
}

/// A subspace of F_q^n in canonical form (RREF, no zero rows). Two bases
/// compare equal iff they span the same space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    matrix: Matrix,
}

impl SubspaceBasis {
    pub fn from_matrix(m: &Matrix) -> SubspaceBasis {
        let Rref {
            mut matrix, rank, ..
        } = m.rref();
        matrix.data.truncate(rank * matrix.cols);
        matrix.rows = rank;
        SubspaceBasis { matrix }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.cols
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.matrix.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in F_q^{}",
                v.len(),
                self.matrix.cols
            )));
        }
        // reduce v against the RREF rows; v is in the span iff it reduces to zero
        let f = &self.matrix.field;
        let mut w = v.to_vec();
        for r in 0..self.dim() {
            let row = self.matrix.row(r);
            let lead = row.iter().position(|&x| x != 0).expect("no zero rows");
            let c = w[lead];
            if c != 0 {
                f.axpy(&mut w, f.neg(c), row);
            }
        }
        Ok(w.iter().all(|&x| x == 0))
    }
}

/// `rowspace(a) ∩ rowspace(b)` by the Zassenhaus block method: row reduce
/// `[a a; b 0]`; rows whose left half vanishes carry the intersection on the
/// right.
pub fn intersect_rowspaces(a: &Matrix, b: &Matrix) -> Result<SubspaceBasis> {
    a.same_field(b)?;
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} columns",
            a.cols, b.cols
        )));
    }
    let n = a.cols;
    let mut block = Matrix::zeros(&a.field, a.rows + b.rows, 2 * n);
    for i in 0..a.rows {
        block.data[i * 2 * n..i * 2 * n + n].copy_from_slice(a.row(i));
        block.data[i * 2 * n + n..(i + 1) * 2 * n].copy_from_slice(a.row(i));
    }
    for i in 0..b.rows {
        let r = a.rows + i;
        block.data[r * 2 * n..r * 2 * n + n].copy_from_slice(b.row(i));
    }
    let red = block.rref();
    let first = red.pivots.iter().position(|&p| p >= n).unwrap_or(red.rank);
    let mut out = Matrix::zeros(&a.field, red.rank - first, n);
    for (k, i) in (first..red.rank).enumerate() {
        out.data[k * n..(k + 1) * n].copy_from_slice(&red.matrix.row(i)[n..]);
    }
    Ok(SubspaceBasis::from_matrix(&out))
}

/// Dimension of `rowspace(a) + rowspace(b)`.
pub fn sum_dim(a: &Matrix, b: &Matrix) -> Result<usize> {
    Ok(a.vstack(b)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn mat(q: u64, rows: &[&[Elem]]) -> Matrix {
        let f = Field::new(q).unwrap();
        let v: Vec<Vec<Elem>> = rows.iter().map(|r| r.to_vec()).collect();
        Matrix::from_rows(&f, rows[0].len(), &v).unwrap()
    }

    /// All vectors in the row space, by enumerating coefficient tuples.
    fn span_set(m: &Matrix) -> BTreeSet<Vec<Elem>> {
        let f = m.field();
        let q = f.q() as usize;
        let mut out = BTreeSet::new();
        let total = q.pow(m.rows() as u32);
        for t in 0..total {
            let mut v = vec![0; m.cols()];
            let mut t = t;
            for i in 0..m.rows() {
                f.axpy(&mut v, (t % q) as Elem, m.row(i));
                t /= q;
            }
            out.insert(v);
        }
        out
    }

    #[test]
    fn rref_examples() {
        let f3 = Field::new(3).unwrap();
        let id = Matrix::identity(&f3, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);

        let z = Matrix::zeros(&f3, 2, 4);
        assert_eq!(z.rref().rank, 0);
        assert!(z.rref().matrix.is_zero());

        let m = mat(5, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, mat(5, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(mat(3, &[&[1, 1, 1, 1]]).nullspace().dim(), 3);
        let f = Field::new(7).unwrap();
        assert_eq!(Matrix::identity(&f, 5).nullspace().dim(), 0);
    }

    #[test]
    fn intersection_examples() {
        let a = mat(3, &[&[1, 2, 0, 1], &[0, 1, 1, 1]]);
        assert_eq!(
            intersect_rowspaces(&a, &a).unwrap(),
            SubspaceBasis::from_matrix(&a)
        );
        let e1 = mat(5, &[&[1, 0, 0]]);
        let e2 = mat(5, &[&[0, 1, 0]]);
        assert_eq!(intersect_rowspaces(&e1, &e2).unwrap().dim(), 0);
        let bad = mat(5, &[&[0, 1]]);
        assert!(matches!(
            intersect_rowspaces(&e1, &bad),
            Err(Error::DimensionMismatch(_))
        ));
        let other = mat(7, &[&[0, 1, 0]]);
        assert!(matches!(
            intersect_rowspaces(&e1, &other),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn mul_and_transpose_basics() {
        let a = mat(7, &[&[1, 2, 3], &[4, 5, 6]]);
        let f = a.field().clone();
        assert_eq!(a.mul(&Matrix::identity(&f, 3)).unwrap(), a);
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.mul(&a).is_err());
        assert_eq!(a.gram(), a.mul(&a.transpose()).unwrap());
    }

    #[test]
    fn text_format_round_trip_and_errors() {
        let a = mat(4, &[&[0, 1, 2, 3], &[3, 2, 1, 0]]);
        let text = a.to_text();
        assert!(text.starts_with("4 2 4\n0 1 2 3\n"));
        assert_eq!(Matrix::from_text(&text).unwrap(), a);
        assert!(Matrix::from_text("4 1 2\n0 4\n").is_err());
        assert!(Matrix::from_text("6 1 1\n0\n").is_err());
        assert!(Matrix::from_text("4 2 2\n0 1\n").is_err());
        assert!(Matrix::from_text("").is_err());
    }

    fn arb_matrix(q: u64, max_rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        (0..=max_rows).prop_flat_map(move |rows| {
            prop::collection::vec(0..q as Elem, rows * cols).prop_map(move |data| {
                Matrix::new(&Field::new(q).unwrap(), rows, cols, data).unwrap()
            })
        })
    }

    fn arb_pair() -> impl Strategy<Value = (Matrix, Matrix)> {
        prop_oneof![Just(2u64), Just(3), Just(4), Just(5)].prop_flat_map(|q| {
            let cols = match q {
                2 => 6,
                3 | 4 => 4,
                _ => 3,
            };
            (arb_matrix(q, 4, cols), arb_matrix(q, 4, cols))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_transpose((a, _b) in arb_pair()) {
            let r = a.rank();
            prop_assert_eq!(r, a.transpose().rank());
            prop_assert_eq!(a.nullspace().dim() + r, a.cols());
            // kernel vectors really are annihilated
            let k = a.nullspace();
            prop_assert!(a.mul_transpose(k.matrix()).unwrap().is_zero());
        }

        #[test]
        fn intersection_matches_brute_force((a, b) in arb_pair()) {
            let sa = span_set(&a);
            let sb = span_set(&b);
            let common: BTreeSet<_> = sa.intersection(&sb).cloned().collect();
            let ib = intersect_rowspaces(&a, &b).unwrap();
            prop_assert_eq!(span_set(ib.matrix()), common);
            let da = a.rank();
            let db = b.rank();
            prop_assert_eq!(ib.dim() + sum_dim(&a, &b).unwrap(), da + db);
        }

        #[test]
        fn canonical_form_decides_equality((a, b) in arb_pair()) {
            let same = span_set(&a) == span_set(&b);
            prop_assert_eq!(SubspaceBasis::from_matrix(&a) == SubspaceBasis::from_matrix(&b), same);
            let basis = SubspaceBasis::from_matrix(&a);
            for v in span_set(&b) {
                prop_assert_eq!(basis.contains(&v).unwrap(), span_set(&a).contains(&v));
            }
        }
    }
}
