//! Exact integer linear algebra: determinants, Smith normal form and the first
//! homology of a plumbed 3-manifold read off its linking matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::plumbing::{linking_matrix, PlumbingGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries for a {rows}x{cols} matrix, found {found}")]
    Shape { rows: usize, cols: usize, expected: usize, found: usize },
    #[error("dimension mismatch in product: {0}x{1} times {2}x{3}")]
    Mismatch(usize, usize, usize, usize),
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, HomologyError> {
        if entries.len() != rows * cols {
            return Err(HomologyError::Shape {
                rows,
                cols,
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(IntegerMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small-integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            entries.extend(r.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        IntegerMatrix { rows: rows.len(), cols, entries }
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = BigInt::from(d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Diagonal entries `D[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix, HomologyError> {
        if self.cols != other.rows {
            return Err(HomologyError::Mismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, HomologyError> {
        if v.len() != self.cols {
            return Err(HomologyError::Mismatch(self.rows, self.cols, v.len(), 1));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += factor * row[source]`
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j];
            if !s.is_zero() {
                let delta = factor * s;
                self.entries[target * self.cols + j] += delta;
            }
        }
    }

    /// `col[target] += factor * col[source]`
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + source];
            if !s.is_zero() {
                let delta = factor * s;
                self.entries[i * self.cols + target] += delta;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[i * self.cols + j];
            *e = -std::mem::take(e);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    #[serde(with = "crate::exact::bigint_vec_vec")]
    entries: Vec<Vec<BigInt>>,
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixDoc { rows: self.rows, cols: self.cols, entries: self.to_rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let doc = MatrixDoc::deserialize(d)?;
        if doc.entries.len() != doc.rows {
            return Err(D::Error::custom(format!(
                "entries: expected {} rows, found {}",
                doc.rows,
                doc.entries.len()
            )));
        }
        if let Some(i) = doc.entries.iter().position(|r| r.len() != doc.cols) {
            return Err(D::Error::custom(format!(
                "entries[{i}]: expected {} columns, found {}",
                doc.cols,
                doc.entries[i].len()
            )));
        }
        IntegerMatrix::new(doc.rows, doc.cols, doc.entries.into_iter().flatten().collect())
            .map_err(D::Error::custom)
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntegerMatrix) -> Result<BigInt, HomologyError> {
    if !m.is_square() {
        return Err(HomologyError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                // exact by Sylvester's identity
                a[(i, j)] = v / &prev;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if sign { -det } else { det })
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, non-negative,
/// each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal_entries()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let mut u = IntegerMatrix::identity(m.rows);
    let mut v = IntegerMatrix::identity(m.cols);
    let d = reduce(m.clone(), Some((&mut u, &mut v)));
    SmithDecomposition { d, u, v }
}

/// Diagonal of the Smith normal form without tracking the transforms.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    reduce(m.clone(), None).diagonal_entries()
}

/// Nonzero entry of least absolute value in the lower-right block starting at
/// `(t, t)`; ties go to the lowest row, then the lowest column.
fn min_pivot(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), &BigInt)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let e = &a[(i, j)];
            if e.is_zero() {
                continue;
            }
            if best.is_none_or(|(_, b)| e.magnitude() < b.magnitude()) {
                best = Some(((i, j), e));
            }
        }
    }
    best.map(|(ij, _)| ij)
}

fn reduce(mut a: IntegerMatrix, mut track: Option<(&mut IntegerMatrix, &mut IntegerMatrix)>) -> IntegerMatrix {
    let steps = a.rows.min(a.cols);
    for t in 0..steps {
        let Some((pi, pj)) = min_pivot(&a, t) else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some((u, v)) = track.as_mut() {
            u.swap_rows(t, pi);
            v.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..a.rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                if let Some((u, _)) = track.as_mut() {
                    u.add_row_multiple(i, t, &q);
                }
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..a.cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                if let Some((_, v)) = track.as_mut() {
                    v.add_col_multiple(j, t, &q);
                }
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                // a remainder smaller than the pivot survived; re-pivot on it
                let (pi, pj) = min_pivot(&a, t).expect("nonzero remainder");
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                if let Some((u, v)) = track.as_mut() {
                    u.swap_rows(t, pi);
                    v.swap_cols(t, pj);
                }
                continue;
            }
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..a.rows)
                .find(|&i| (t + 1..a.cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    if let Some((u, _)) = track.as_mut() {
                        u.add_row_multiple(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some((u, _)) = track.as_mut() {
                u.negate_row(t);
            }
        }
    }
    a
}

/// Finitely generated abelian group `Z^rank + Z/d_1 + ... + Z/d_s` with
/// `2 <= d_1 | d_2 | ... | d_s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    #[serde(with = "crate::exact::bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { rank: 0, torsion: Vec::new() }
    }

    /// Cokernel of an integer matrix, read off its invariant factors.
    pub fn cokernel(m: &IntegerMatrix) -> Self {
        let factors = invariant_factors(m);
        let zeros = factors.iter().filter(|d| d.is_zero()).count();
        let rank = zeros + m.rows.saturating_sub(m.cols);
        let torsion = factors.into_iter().filter(|d| *d > BigInt::one()).collect();
        AbelianGroup { rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of a finite group, `None` when the rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|d| *d >= BigInt::from(2))
            && self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// First homology of the boundary of the plumbing: the cokernel of the linking
/// matrix, plus `2g` free summands for every vertex of genus `g`.
pub fn first_homology(graph: &PlumbingGraph) -> AbelianGroup {
    let mut group = AbelianGroup::cokernel(&linking_matrix(graph));
    let genus: u64 = graph.vertices().iter().map(|v| u64::from(v.genus)).sum();
    group.rank += 2 * genus as usize;
    group
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn determinant_examples() {
        for n in 0..6 {
            assert_eq!(determinant(&IntegerMatrix::identity(n)).unwrap(), b(1));
        }
        for p in -5..20 {
            assert_eq!(determinant(&IntegerMatrix::from_rows(&[[0, 1], [1, p]])).unwrap(), b(-1));
        }
        let m = IntegerMatrix::from_rows(&[[-1, 1, 1], [1, 2, 0], [1, 0, 3]]);
        assert_eq!(determinant(&m).unwrap(), b(-11));
        assert_eq!(determinant(&IntegerMatrix::from_rows(&[[1, 2], [2, 4]])).unwrap(), b(0));
        assert_eq!(
            determinant(&IntegerMatrix::zeros(2, 3)),
            Err(HomologyError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn smith_examples() {
        let id = IntegerMatrix::identity(3);
        let s = smith_normal_form(&id);
        assert_eq!(s.d, id);
        assert_eq!(s.u, id);
        assert_eq!(s.v, id);

        let s = smith_normal_form(&IntegerMatrix::diagonal(&[2, 3]));
        assert_eq!(s.d, IntegerMatrix::diagonal(&[1, 6]));
        check(&IntegerMatrix::diagonal(&[2, 3]), &s);

        for p in 0..10 {
            let m = IntegerMatrix::from_rows(&[[0, 1], [1, p]]);
            let s = smith_normal_form(&m);
            assert_eq!(s.d, IntegerMatrix::identity(2));
            check(&m, &s);
        }
    }

    #[test]
    fn smith_rectangular_and_zero() {
        let m = IntegerMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, IntegerMatrix::diagonal(&[2, 6, 12]));
        check(&m, &s);

        let m = IntegerMatrix::from_rows(&[[0, 0, 0], [0, 4, 6]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d.diagonal_entries(), vec![b(2), b(0)]);
        check(&m, &s);

        let z = IntegerMatrix::zeros(0, 0);
        assert_eq!(smith_normal_form(&z).d, z);
        assert!(AbelianGroup::cokernel(&z).is_trivial());
    }

    fn check(m: &IntegerMatrix, s: &SmithDecomposition) {
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(determinant(&s.u).unwrap().magnitude(), b(1).magnitude());
        assert_eq!(determinant(&s.v).unwrap().magnitude(), b(1).magnitude());
        assert!(s.d.is_diagonal());
    }

    #[test]
    fn cokernel_display() {
        let g = AbelianGroup::cokernel(&IntegerMatrix::from_rows(&[[-1, 1, 1], [1, 2, 0], [1, 0, 3]]));
        assert_eq!(g, AbelianGroup { rank: 0, torsion: vec![b(11)] });
        assert_eq!(g.to_string(), "Z/11");
        assert_eq!(g.order(), Some(b(11)));
        let g = AbelianGroup { rank: 2, torsion: vec![b(2), b(4)] };
        assert_eq!(g.to_string(), "Z^2 ⊕ Z/2 ⊕ Z/4");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::cokernel(&IntegerMatrix::from_rows(&[[0]])).to_string(), "Z");
    }

    #[test]
    fn matrix_json() {
        let m = IntegerMatrix::from_rows(&[[1, 2, 3], [4, 5, 6]]);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"rows":2,"cols":3,"entries":[[1,2,3],[4,5,6]]}"#);
        assert_eq!(serde_json::from_str::<IntegerMatrix>(&text).unwrap(), m);
        assert!(serde_json::from_str::<IntegerMatrix>(r#"{"rows":2,"cols":2,"entries":[[1,2],[3]]}"#)
            .is_err());
        assert!(serde_json::from_str::<IntegerMatrix>(r#"{"rows":1,"cols":1,"entries":[]}"#).is_err());
    }
}
