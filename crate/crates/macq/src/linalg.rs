//! Sparse exact integer linear algebra: rank over ℚ and Smith normal form.
//!
//! The workhorse is a unit-pivot elimination: entries of absolute value one
//! are pivoted out with Markowitz-style fill control, which is an exact
//! unimodular reduction. Incidence-like matrices (cellular boundaries,
//! Koszul differentials) reduce almost entirely this way; whatever is left
//! goes through dense fraction-free (Bareiss) elimination for rank, or a
//! classical Smith reduction for torsion.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap, HashSet};

/// A sparse integer matrix. Absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64_rows(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Self::zero(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row data");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
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

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((r, c)).or_insert_with(BigInt::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            out.set(c, r, v.clone());
        }
        out
    }

    /// Exact matrix product; dimensions must be compatible.
    pub fn multiply(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in other.iter() {
            by_row[r].push((c, v));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for (r, k, v) in self.iter() {
            for &(c, w) in &by_row[k] {
                out.add_to(r, c, &(v * w));
            }
        }
        out
    }

    /// Rank over ℚ, exactly.
    pub fn rank(&self) -> usize {
        let mut elim = SparseElim::new(self);
        elim.eliminate_unit_pivots();
        elim.pivots + dense_rank(elim.residual())
    }

    /// Smith normal form. The diagonal satisfies `d_1 | d_2 | ... | d_r`
    /// with every `d_i > 0`; `rank = r`. With `with_transforms`, unimodular
    /// `U` (rows×rows) and `V` (cols×cols) with `U·M·V = D` are returned,
    /// computed by the dense classical reduction.
    pub fn smith_normal_form(&self, with_transforms: bool) -> SmithNormalForm {
        if with_transforms {
            return dense_smith(self.to_dense(), self.rows, self.cols, true);
        }
        let mut elim = SparseElim::new(self);
        elim.eliminate_unit_pivots();
        let unit_pivots = elim.pivots;
        let residual = elim.residual();
        let rows = residual.len();
        let cols = residual.first().map_or(0, |r| r.len());
        let tail = dense_smith(residual, rows, cols, false);
        let mut diagonal = vec![BigInt::one(); unit_pivots];
        diagonal.extend(tail.diagonal);
        SmithNormalForm {
            rank: unit_pivots + tail.rank,
            diagonal,
            transforms: None,
        }
    }

    /// Torsion coefficients: the diagonal entries larger than one.
    pub fn torsion_coefficients(&self) -> Vec<BigInt> {
        self.smith_normal_form(false)
            .diagonal
            .into_iter()
            .filter(|d| *d > BigInt::one())
            .collect()
    }

    fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut dense = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            dense[r][c] = v.clone();
        }
        dense
    }
}

#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    /// `(U, V)` with `U·M·V = diag`.
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

impl SmithNormalForm {
    /// The diagonal as an actual matrix of the original shape.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zero(rows, cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }
}

/// Working state of the sparse unit-pivot elimination.
struct SparseElim {
    row_data: Vec<HashMap<usize, BigInt>>,
    col_rows: Vec<HashSet<usize>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
    pivots: usize,
}

impl SparseElim {
    fn new(m: &IntMatrix) -> Self {
        let mut row_data = vec![HashMap::new(); m.rows];
        let mut col_rows = vec![HashSet::new(); m.cols];
        for (r, c, v) in m.iter() {
            row_data[r].insert(c, v.clone());
            col_rows[c].insert(r);
        }
        Self {
            row_data,
            col_rows,
            row_alive: vec![true; m.rows],
            col_alive: vec![true; m.cols],
            pivots: 0,
        }
    }

    /// Finds the cheapest live entry of absolute value one, if any.
    fn find_unit_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, (usize, usize))> = None;
        for (r, row) in self.row_data.iter().enumerate() {
            if !self.row_alive[r] {
                continue;
            }
            let rfill = row.len().saturating_sub(1);
            for (&c, v) in row {
                if !v.abs().is_one() {
                    continue;
                }
                let score = rfill * self.col_rows[c].len().saturating_sub(1);
                if best.as_ref().is_none_or(|&(s, _)| score < s) {
                    best = Some((score, (r, c)));
                    if score == 0 {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(_, rc)| rc)
    }

    fn eliminate_unit_pivots(&mut self) {
        while let Some((pr, pc)) = self.find_unit_pivot() {
            self.eliminate(pr, pc);
        }
    }

    /// Clears column `pc` using the ±1 pivot at `(pr, pc)` and retires the
    /// pivot row and column. This is a unimodular reduction: the Smith form
    /// of the matrix is `diag(1)` plus the Smith form of what remains.
    fn eliminate(&mut self, pr: usize, pc: usize) {
        let pivot = self.row_data[pr][&pc].clone();
        debug_assert!(pivot.abs().is_one());
        let pivot_row: Vec<(usize, BigInt)> = self.row_data[pr]
            .iter()
            .filter(|(&c, _)| c != pc)
            .map(|(&c, v)| (c, v.clone()))
            .collect();
        let targets: Vec<usize> = self
            .col_rows[pc]
            .iter()
            .copied()
            .filter(|&r| r != pr)
            .collect();
        for r in targets {
            // factor = entry/pivot; pivot is ±1 so this is entry*pivot
            let factor = self.row_data[r].remove(&pc).unwrap() * &pivot;
            self.col_rows[pc].remove(&r);
            for (c, v) in &pivot_row {
                let delta = -(&factor * v);
                match self.row_data[r].entry(*c) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += delta;
                        if e.get().is_zero() {
                            e.remove();
                            self.col_rows[*c].remove(&r);
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(delta);
                        self.col_rows[*c].insert(r);
                    }
                }
            }
        }
        // retire the pivot row and column
        for (c, _) in self.row_data[pr].drain() {
            self.col_rows[c].remove(&pr);
        }
        self.row_alive[pr] = false;
        self.col_alive[pc] = false;
        self.pivots += 1;
    }

    /// What remains after the unit pivots, densified.
    fn residual(&self) -> Vec<Vec<BigInt>> {
        let live_cols: Vec<usize> = (0..self.col_alive.len())
            .filter(|&c| self.col_alive[c] && !self.col_rows[c].is_empty())
            .collect();
        let col_pos: HashMap<usize, usize> = live_cols
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect();
        let mut out = Vec::new();
        for (r, row) in self.row_data.iter().enumerate() {
            if !self.row_alive[r] || row.is_empty() {
                continue;
            }
            let mut dense = vec![BigInt::zero(); live_cols.len()];
            for (&c, v) in row {
                dense[col_pos[&c]] = v.clone();
            }
            out.push(dense);
        }
        out
    }
}

/// Fraction-free (Bareiss) rank of a dense matrix.
fn dense_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    while rank < rows && rank < cols {
        // smallest nonzero pivot in the remaining block limits growth
        let mut pivot: Option<(usize, usize)> = None;
        for i in rank..rows {
            for j in rank..cols {
                if !m[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(rank, pi);
        for row in m.iter_mut() {
            row.swap(rank, pj);
        }
        for i in rank + 1..rows {
            for j in rank + 1..cols {
                let num = &m[i][j] * &m[rank][rank] - &m[i][rank] * &m[rank][j];
                m[i][j] = num / &prev; // exact by Sylvester's identity
            }
            m[i][rank] = BigInt::zero();
        }
        prev = m[rank][rank].clone();
        rank += 1;
    }
    rank
}

/// Classical Smith reduction of a dense matrix, optionally carrying the
/// unimodular transforms.
fn dense_smith(
    mut m: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    with_transforms: bool,
) -> SmithNormalForm {
    let mut u = with_transforms.then(|| IntMatrix::identity(rows));
    let mut v = with_transforms.then(|| IntMatrix::identity(cols));

    let mut k = 0;
    while k < rows && k < cols {
        let Some((pi, pj)) = smallest_nonzero(&m, k) else {
            break;
        };
        swap_rows(&mut m, u.as_mut(), k, pi);
        swap_cols(&mut m, v.as_mut(), k, pj);
        loop {
            // clear the pivot column
            let mut dirty = false;
            for i in k + 1..rows {
                if m[i][k].is_zero() {
                    continue;
                }
                let q = &m[i][k] / &m[k][k];
                if !q.is_zero() {
                    row_op(&mut m, u.as_mut(), i, k, &q);
                }
                if !m[i][k].is_zero() {
                    // remainder smaller than the pivot: promote it
                    swap_rows(&mut m, u.as_mut(), k, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // clear the pivot row
            for j in k + 1..cols {
                if m[k][j].is_zero() {
                    continue;
                }
                let q = &m[k][j] / &m[k][k];
                if !q.is_zero() {
                    col_op(&mut m, v.as_mut(), j, k, &q);
                }
                if !m[k][j].is_zero() {
                    swap_cols(&mut m, v.as_mut(), k, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&m[i][j] % &m[k][k]).is_zero());
            match offender {
                Some((i, _)) => {
                    // fold the offending row into the pivot row and restart
                    add_row(&mut m, u.as_mut(), k, i);
                }
                None => break,
            }
        }
        if m[k][k].is_negative() {
            negate_row(&mut m, u.as_mut(), k);
        }
        k += 1;
    }

    let diagonal: Vec<BigInt> = (0..k).map(|i| m[i][i].clone()).collect();
    SmithNormalForm {
        rank: k,
        diagonal,
        transforms: u.zip(v),
    }
}

fn smallest_nonzero(m: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..m.len() {
        for j in k..m[i].len() {
            if !m[i][j].is_zero()
                && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
            {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_rows(m: &mut [Vec<BigInt>], u: Option<&mut IntMatrix>, a: usize, b: usize) {
    if a == b {
        return;
    }
    m.swap(a, b);
    if let Some(u) = u {
        let n = u.cols();
        for j in 0..n {
            let (va, vb) = (u.get(a, j), u.get(b, j));
            u.set(a, j, vb);
            u.set(b, j, va);
        }
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], v: Option<&mut IntMatrix>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    if let Some(v) = v {
        let n = v.rows();
        for i in 0..n {
            let (va, vb) = (v.get(i, a), v.get(i, b));
            v.set(i, a, vb);
            v.set(i, b, va);
        }
    }
}

/// `R_i -= q · R_k`.
fn row_op(m: &mut [Vec<BigInt>], u: Option<&mut IntMatrix>, i: usize, k: usize, q: &BigInt) {
    let cols = m[i].len();
    for j in 0..cols {
        let delta = q * &m[k][j];
        m[i][j] -= delta;
    }
    if let Some(u) = u {
        let n = u.cols();
        for j in 0..n {
            let delta = q * u.get(k, j);
            u.add_to(i, j, &(-delta));
        }
    }
}

/// `C_j -= q · C_k`.
fn col_op(m: &mut [Vec<BigInt>], v: Option<&mut IntMatrix>, j: usize, k: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let delta = q * &row[k];
        row[j] -= delta;
    }
    if let Some(v) = v {
        let n = v.rows();
        for i in 0..n {
            let delta = q * v.get(i, k);
            v.add_to(i, j, &(-delta));
        }
    }
}

/// `R_k += R_i`.
fn add_row(m: &mut [Vec<BigInt>], u: Option<&mut IntMatrix>, k: usize, i: usize) {
    let cols = m[k].len();
    for j in 0..cols {
        let v = m[i][j].clone();
        m[k][j] += v;
    }
    if let Some(u) = u {
        let n = u.cols();
        for j in 0..n {
            let v = u.get(i, j);
            u.add_to(k, j, &v);
        }
    }
}

fn negate_row(m: &mut [Vec<BigInt>], u: Option<&mut IntMatrix>, k: usize) {
    for e in m[k].iter_mut() {
        *e = -std::mem::take(e);
    }
    if let Some(u) = u {
        let n = u.cols();
        for j in 0..n {
            let v = u.get(k, j);
            u.set(k, j, -v);
        }
    }
}

/// Divisibility-chain check used by the tests.
pub fn is_divisibility_chain(diag: &[BigInt]) -> bool {
    diag.iter().all(|d| d.is_positive())
        && diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
}

impl IntMatrix {
    /// Parses a row-major `i64` representation; used by the CLI for Λ echo.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        let mut out = vec![vec![0i64; self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            out[r][c] = i64::try_from(v.clone()).map_err(|_| {
                Error::InvalidParameter("matrix entry exceeds i64 range".into())
            })?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(3);
        let snf = m.smith_normal_form(false);
        assert_eq!(snf.rank, 3);
        assert_eq!(snf.diagonal, vec![1.into(), 1.into(), 1.into()]);
    }

    #[test]
    fn snf_hand_example() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = m.smith_normal_form(true);
        assert_eq!(snf.diagonal, vec![2.into(), 4.into()]);
        let (u, v) = snf.transforms.unwrap();
        assert_eq!(
            u.multiply(&m).multiply(&v),
            snf.diagonal_matrix(2, 2)
        );
    }

    #[test]
    fn snf_zero_matrix() {
        let m = IntMatrix::zero(3, 5);
        let snf = m.smith_normal_form(false);
        assert_eq!(snf.rank, 0);
        assert!(snf.diagonal.is_empty());
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn rank_examples() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let m = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn multiply_and_transpose() {
        let a = IntMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            a.multiply(&b),
            IntMatrix::from_i64_rows(&[vec![2, 1], vec![4, 3]])
        );
        assert_eq!(
            a.transpose(),
            IntMatrix::from_i64_rows(&[vec![1, 3], vec![2, 4]])
        );
    }

    fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, max_abs: i64) -> IntMatrix {
        let rows = rng.gen_range(1..=max_dim);
        let cols = rng.gen_range(1..=max_dim);
        let mut data = vec![vec![0i64; cols]; rows];
        for row in data.iter_mut() {
            for e in row.iter_mut() {
                if rng.gen_bool(0.6) {
                    *e = rng.gen_range(-max_abs..=max_abs);
                }
            }
        }
        IntMatrix::from_i64_rows(&data)
    }

    #[test]
    fn snf_transform_property() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for round in 0..100 {
            let m = random_matrix(&mut rng, 12, 9);
            let snf = m.smith_normal_form(true);
            let (u, v) = snf.transforms.as_ref().unwrap();
            assert_eq!(
                u.multiply(&m).multiply(v),
                snf.diagonal_matrix(m.rows(), m.cols()),
                "U·M·V = D failed in round {round}"
            );
            assert!(
                is_divisibility_chain(&snf.diagonal),
                "divisibility chain failed in round {round}: {:?}",
                snf.diagonal
            );
            assert_eq!(snf.rank, m.rank(), "rank disagreement in round {round}");
        }
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 10, 4);
            let fast = m.smith_normal_form(false);
            let slow = dense_smith(m.to_dense(), m.rows(), m.cols(), false);
            assert_eq!(fast.diagonal, slow.diagonal);
        }
    }
}
