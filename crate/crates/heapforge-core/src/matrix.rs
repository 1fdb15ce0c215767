//! Sparse exact matrices between tensor powers of a based vector space.
//!
//! Matrices are stored as maps `(row, col) -> nonzero scalar`, so equality of
//! canonical forms is plain structural equality. All linear maps in this
//! crate (multiplication, comultiplication, antipode, ternary cooperation,
//! module actions) are such matrices, and every axiom check reduces to an
//! exact matrix equality.
//!
//! Flattening convention, used everywhere including the file format: the flat
//! index of a multi-index `(i_0, ..., i_{k-1})` with factor dimensions
//! `(d_0, ..., d_{k-1})` is `sum_j i_j * prod_{l > j} d_l` — the leftmost
//! tensor factor is the most significant digit.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::exec;
use crate::field::{FieldSpec, Scalar};
use crate::{Error, Result};

/// A multi-index over a list of tensor-factor dimensions, with the crate-wide
/// row-major flattening convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIndex {
    dims: Vec<usize>,
}

impl MultiIndex {
    pub fn new(dims: &[usize]) -> MultiIndex {
        MultiIndex {
            dims: dims.to_vec(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Product of all factor dimensions.
    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Flat index of `indices`; panics if any component is out of range.
    pub fn flatten(&self, indices: &[usize]) -> usize {
        assert_eq!(indices.len(), self.dims.len());
        let mut flat = 0;
        for (i, d) in indices.iter().zip(&self.dims) {
            assert!(i < d, "index {i} out of range for factor of dimension {d}");
            flat = flat * d + i;
        }
        flat
    }

    /// Inverse of [`MultiIndex::flatten`].
    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        assert!(flat < self.total().max(1));
        let mut out = vec![0; self.dims.len()];
        for (slot, d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
        out
    }
}

/// Sparse exact matrix. No zero entries are ever stored, so `==` compares
/// canonical forms.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.entries.insert((i, i), Scalar::one(field));
        }
        m
    }

    /// Builds a matrix from `(row, col, scalar)` triplets, accumulating
    /// duplicates by addition and dropping zeros.
    pub fn from_triplets<I>(field: FieldSpec, rows: usize, cols: usize, triplets: I) -> Result<Matrix>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut m = Matrix::zero(field, rows, cols);
        for (r, c, s) in triplets {
            m.add_entry(r, c, s)?;
        }
        Ok(m)
    }

    /// Adds `s` into entry `(r, c)`, keeping the canonical form.
    pub fn add_entry(&mut self, r: usize, c: usize, s: Scalar) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: vec![r, c],
                bound: vec![self.rows, self.cols],
            });
        }
        if s.field() != self.field {
            return Err(Error::FieldMismatch(self.field, s.field()));
        }
        if s.is_zero() {
            return Ok(());
        }
        match self.entries.remove(&(r, c)) {
            None => {
                self.entries.insert((r, c), s);
            }
            Some(old) => {
                let sum = &old + &s;
                if !sum.is_zero() {
                    self.entries.insert((r, c), sum);
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at `(r, c)`, materializing zero for absent positions.
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// Iterates nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), s)| (r, c, s))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// Matrix product `self * rhs`, i.e. `self` composed after `rhs`.
    pub fn compose(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                op: "compose",
                lhs: (self.rows, self.cols),
                rhs: (rhs.rows, rhs.cols),
            });
        }
        // Group both operands so each output column is an independent task.
        let mut lhs_by_col: HashMap<usize, Vec<(usize, &Scalar)>> = HashMap::new();
        for (&(r, c), s) in &self.entries {
            lhs_by_col.entry(c).or_default().push((r, s));
        }
        let mut rhs_cols: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&(r, c), s) in &rhs.entries {
            rhs_cols.entry(c).or_default().push((r, s));
        }
        let rhs_cols: Vec<(usize, Vec<(usize, &Scalar)>)> = rhs_cols.into_iter().collect();
        let entries = exec::flat_map_vec(&rhs_cols, |(k, col)| {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (j, b) in col {
                if let Some(lhs_col) = lhs_by_col.get(j) {
                    for (i, a) in lhs_col {
                        let term = *a * *b;
                        match acc.remove(i) {
                            None => {
                                acc.insert(*i, term);
                            }
                            Some(old) => {
                                let sum = &old + &term;
                                if !sum.is_zero() {
                                    acc.insert(*i, sum);
                                }
                            }
                        }
                    }
                }
            }
            acc.into_iter()
                .filter(|(_, s)| !s.is_zero())
                .map(|(i, s)| ((i, *k), s))
                .collect()
        });
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: rhs.cols,
            entries: entries.into_iter().collect(),
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch {
                op: "add",
                lhs: (self.rows, self.cols),
                rhs: (rhs.rows, rhs.cols),
            });
        }
        let mut out = self.clone();
        for (&(r, c), s) in &rhs.entries {
            out.add_entry(r, c, s.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Result<Matrix> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch(self.field, s.field()));
        }
        if s.is_zero() {
            return Ok(Matrix::zero(self.field, self.rows, self.cols));
        }
        let entries = self
            .entries
            .iter()
            .map(|(&rc, v)| (rc, v * s))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|(&rc, v)| (rc, -v)).collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.add(&rhs.neg())
    }

    pub fn transpose(&self) -> Matrix {
        let entries = self
            .entries
            .iter()
            .map(|(&(r, c), v)| ((c, r), v.clone()))
            .collect();
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Shape- and field-checked equality, per the operation contract.
    pub fn equal(&self, rhs: &Matrix) -> Result<bool> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch {
                op: "equal",
                lhs: (self.rows, self.cols),
                rhs: (rhs.rows, rhs.cols),
            });
        }
        Ok(self == rhs)
    }

    /// First differing coordinate against `rhs` in row-major order, if any.
    /// Shapes must already agree.
    pub fn first_difference(&self, rhs: &Matrix) -> Option<(usize, usize)> {
        let mut a = self.entries.iter();
        let mut b = rhs.entries.iter();
        let (mut na, mut nb) = (a.next(), b.next());
        loop {
            match (na, nb) {
                (None, None) => return None,
                (Some((&k, _)), None) => return Some(k),
                (None, Some((&k, _))) => return Some(k),
                (Some((&ka, va)), Some((&kb, vb))) => {
                    if ka < kb {
                        return Some(ka);
                    }
                    if kb < ka {
                        return Some(kb);
                    }
                    if va != vb {
                        return Some(ka);
                    }
                    na = a.next();
                    nb = b.next();
                }
            }
        }
    }

    /// Dense copy of the entries; used by the elimination routines.
    fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![Scalar::zero(self.field); self.cols]; self.rows];
        for (&(r, c), s) in &self.entries {
            rows[r][c] = s.clone();
        }
        rows
    }

    /// Basis of the right null space `{x : M x = 0}` by exact Gaussian
    /// elimination. Each basis vector is returned dense, length `cols`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut a = self.to_dense();
        let (m, n) = (self.rows, self.cols);
        let mut pivot_col_of_row = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let pivot = (row..m).find(|&r| !a[r][col].is_zero());
            let Some(p) = pivot else { continue };
            a.swap(row, p);
            let inv = a[row][col].inverse().expect("nonzero pivot");
            for x in a[row].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..m {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..n {
                        let t = &a[row][c] * &f;
                        a[r][c] = &a[r][c] - &t;
                    }
                }
            }
            pivot_col_of_row.push(col);
            row += 1;
            if row == m {
                break;
            }
        }
        let pivot_cols: std::collections::BTreeSet<usize> =
            pivot_col_of_row.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(self.field); n];
            v[free] = Scalar::one(self.field);
            for (r, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = -&a[r][free];
            }
            basis.push(v);
        }
        basis
    }

    /// Exact determinant by elimination; errors on non-square input.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch {
                op: "det",
                lhs: (self.rows, self.cols),
                rhs: (self.cols, self.rows),
            });
        }
        let n = self.rows;
        let mut a = self.to_dense();
        let mut det = Scalar::one(self.field);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Scalar::zero(self.field));
            };
            if p != col {
                a.swap(col, p);
                det = -&det;
            }
            det = &det * &a[col][col];
            let inv = a[col][col].inverse().expect("nonzero pivot");
            for r in col + 1..n {
                if !a[r][col].is_zero() {
                    let f = &a[r][col] * &inv;
                    for c in col..n {
                        let t = &a[col][c] * &f;
                        a[r][c] = &a[r][c] - &t;
                    }
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix({}, {}x{}, {} nnz)",
            self.field,
            self.rows,
            self.cols,
            self.entries.len()
        )?;
        if self.rows <= 16 && self.cols <= 16 {
            for r in 0..self.rows {
                write!(f, "\n  [")?;
                for c in 0..self.cols {
                    if c > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", self.get(r, c))?;
                }
                write!(f, "]")?;
            }
        }
        Ok(())
    }
}

/// Kronecker product realizing the tensor product of linear maps under the
/// crate flattening convention: entry at flat `((i,k),(j,l))` equals
/// `a[i,j] * b[k,l]`.
pub fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field, b.field));
    }
    let a_entries: Vec<(usize, usize, &Scalar)> = a.iter().collect();
    let entries = exec::flat_map_vec(&a_entries, |&(ia, ja, va)| {
        b.iter()
            .map(|(ib, jb, vb)| (((ia * b.rows + ib), (ja * b.cols + jb)), va * vb))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    });
    Ok(Matrix {
        field: a.field,
        rows: a.rows * b.rows,
        cols: a.cols * b.cols,
        entries: entries.into_iter().collect(),
    })
}

/// Kronecker product of a sequence of matrices, left to right.
pub fn kron_all(ms: &[&Matrix]) -> Result<Matrix> {
    let (first, rest) = ms.split_first().expect("kron_all of empty list");
    let mut acc = (*first).clone();
    for m in rest {
        acc = kron(&acc, m)?;
    }
    Ok(acc)
}

/// Permutation matrix on a tensor product: output factor `j` is input factor
/// `perm[j]`. The matrix is square of size `prod(dims)`; its column for the
/// input multi-index `i` has a single 1 in the row of the output multi-index
/// `o` with `o[j] = i[perm[j]]`.
pub fn tensor_permutation(field: FieldSpec, dims: &[usize], perm: &[usize]) -> Result<Matrix> {
    if perm.len() != dims.len() {
        return Err(Error::InvalidPermutation(perm.to_vec()));
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::InvalidPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    let src = MultiIndex::new(dims);
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let dst = MultiIndex::new(&out_dims);
    let total = src.total();
    let one = Scalar::one(field);
    let entries: Vec<((usize, usize), Scalar)> = exec::map_indices_chunked(total, |flat_in| {
        let i = src.unflatten(flat_in);
        let o: Vec<usize> = perm.iter().map(|&p| i[p]).collect();
        ((dst.flatten(&o), flat_in), one.clone())
    });
    Ok(Matrix {
        field,
        rows: total,
        cols: total,
        entries: entries.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn mat(rows: usize, cols: usize, vals: &[(usize, usize, i64)]) -> Matrix {
        Matrix::from_triplets(
            q(),
            rows,
            cols,
            vals.iter().map(|&(r, c, v)| (r, c, Scalar::from_integer(q(), v))),
        )
        .unwrap()
    }

    #[test]
    fn multi_index_flatten_convention() {
        let mi = MultiIndex::new(&[2, 3, 4]);
        // Leftmost factor most significant: (1, 2, 3) -> 1*12 + 2*4 + 3.
        assert_eq!(mi.flatten(&[1, 2, 3]), 23);
        assert_eq!(mi.unflatten(23), vec![1, 2, 3]);
        for flat in 0..mi.total() {
            assert_eq!(mi.flatten(&mi.unflatten(flat)), flat);
        }
    }

    #[test]
    fn compose_identity_law() {
        let m = mat(3, 2, &[(0, 0, 5), (1, 1, -2), (2, 0, 7)]);
        let i3 = Matrix::identity(q(), 3);
        assert_eq!(i3.compose(&m).unwrap(), m);
        let i2 = Matrix::identity(q(), 2);
        assert_eq!(m.compose(&i2).unwrap(), m);
    }

    #[test]
    fn additive_inverse_is_canonical_zero() {
        let m = mat(2, 2, &[(0, 1, 3), (1, 0, -4)]);
        let minus_one = Scalar::from_integer(q(), -1);
        let z = m.add(&m.scale(&minus_one).unwrap()).unwrap();
        assert!(z.is_zero_matrix());
        assert_eq!(z, Matrix::zero(q(), 2, 2));
    }

    #[test]
    fn scale_in_prime_field() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let m = Matrix::from_triplets(f7, 1, 1, [(0, 0, Scalar::from_integer(f7, 3))]).unwrap();
        let scaled = m.scale(&Scalar::from_integer(f7, 5)).unwrap();
        assert_eq!(scaled.get(0, 0), Scalar::from_integer(f7, 1)); // 15 mod 7
    }

    #[test]
    fn shape_and_field_errors() {
        let m = mat(3, 2, &[(0, 0, 1)]);
        let n = mat(3, 2, &[(0, 0, 1)]);
        assert!(matches!(
            m.compose(&n),
            Err(Error::ShapeMismatch { op: "compose", .. })
        ));
        let f7 = FieldSpec::prime_field(7).unwrap();
        let k = Matrix::identity(f7, 2);
        assert!(matches!(m.compose(&k), Err(Error::FieldMismatch(..))));

        assert!(m.equal(&n).unwrap());
        assert!(!m.equal(&mat(3, 2, &[(0, 0, 2)])).unwrap());
        assert!(matches!(
            m.equal(&mat(2, 3, &[])),
            Err(Error::ShapeMismatch { op: "equal", .. })
        ));
        assert!(matches!(m.equal(&k), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn kron_identities() {
        let i2 = Matrix::identity(q(), 2);
        let i3 = Matrix::identity(q(), 3);
        assert_eq!(kron(&i2, &i3).unwrap(), Matrix::identity(q(), 6));
        let a = mat(1, 1, &[(0, 0, 2)]);
        let b = mat(1, 1, &[(0, 0, 3)]);
        assert_eq!(kron(&a, &b).unwrap(), mat(1, 1, &[(0, 0, 6)]));
    }

    #[test]
    fn kron_columns_against_double_loop() {
        // A 2x1, B 3x1; flat row (i,k) = i*3 + k must hold A[i]*B[k].
        let a = mat(2, 1, &[(0, 0, 2), (1, 0, -3)]);
        let b = mat(3, 1, &[(0, 0, 1), (1, 0, 4), (2, 0, 5)]);
        let k = kron(&a, &b).unwrap();
        assert_eq!(k.rows(), 6);
        assert_eq!(k.cols(), 1);
        for i in 0..2 {
            for j in 0..3 {
                let expect = &a.get(i, 0) * &b.get(j, 0);
                assert_eq!(k.get(i * 3 + j, 0), expect);
            }
        }
    }

    #[test]
    fn tensor_permutation_identity_and_flip() {
        let id = tensor_permutation(q(), &[5], &[0]).unwrap();
        assert_eq!(id, Matrix::identity(q(), 5));

        let flip = tensor_permutation(q(), &[2, 2], &[1, 0]).unwrap();
        // Fixes (0,0) and (1,1), exchanges (0,1) <-> (1,0).
        assert_eq!(flip.get(0, 0), Scalar::one(q()));
        assert_eq!(flip.get(3, 3), Scalar::one(q()));
        assert_eq!(flip.get(2, 1), Scalar::one(q()));
        assert_eq!(flip.get(1, 2), Scalar::one(q()));
        assert_eq!(flip.nnz(), 4);
    }

    #[test]
    fn flip_squares_to_identity() {
        let f1 = tensor_permutation(q(), &[3, 5], &[1, 0]).unwrap();
        let f2 = tensor_permutation(q(), &[5, 3], &[1, 0]).unwrap();
        assert_eq!(f2.compose(&f1).unwrap(), Matrix::identity(q(), 15));
    }

    #[test]
    fn permutation_rejects_non_bijections() {
        assert!(tensor_permutation(q(), &[2, 2], &[0, 0]).is_err());
        assert!(tensor_permutation(q(), &[2, 2], &[0]).is_err());
        assert!(tensor_permutation(q(), &[2, 2], &[0, 2]).is_err());
    }

    #[test]
    fn nullspace_of_rank_one() {
        // x + 2y + 3z = 0 has a 2-dimensional solution space.
        let m = mat(1, 3, &[(0, 0, 1), (0, 1, 2), (0, 2, 3)]);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let mut acc = Scalar::zero(q());
            for (c, s) in v.iter().enumerate() {
                acc = &acc + &(&m.get(0, c) * s);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn determinant_exact() {
        let m = mat(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 4)]);
        assert_eq!(m.det().unwrap(), Scalar::from_integer(q(), -2));
        let singular = mat(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4)]);
        assert!(singular.det().unwrap().is_zero());
        let perm = tensor_permutation(q(), &[2, 2], &[1, 0]).unwrap();
        assert_eq!(perm.det().unwrap(), Scalar::from_integer(q(), -1));
    }
}
