//! Integer chain complexes and the homology oracles.
//!
//! `Z_K` carries a product cell structure: a cell is a pair `(σ, ω)` with
//! `σ ∈ K` and `ω ⊆ [m] ∖ σ`, one disk cell per vertex of `σ`, one circle
//! cell per vertex of `ω`, in dimension `2|σ| + |ω|`. The boundary moves a
//! disk down to its circle with Koszul signs over the factors in vertex
//! order. Homology of that complex is the exact cellular oracle; the
//! Hochster full-subcomplex decomposition is the independent cross-check.

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::poincare::PoincarePolynomial;
use crate::simplicial::{Face, SimplicialComplex};
use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Direction of the differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `d_n: C_n -> C_{n-1}` (chain complex).
    Lowering,
    /// `d_n: C_n -> C_{n+1}` (cochain complex).
    Raising,
}

/// A graded free abelian (co)chain complex with explicit integer
/// differentials.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    direction: Direction,
    labels: BTreeMap<i64, Vec<String>>,
    diffs: BTreeMap<i64, IntMatrix>,
}

impl ChainComplex {
    pub fn new(direction: Direction) -> Self {
        Self {
            direction,
            labels: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn add_degree(&mut self, degree: i64, labels: Vec<String>) {
        if !labels.is_empty() {
            self.labels.insert(degree, labels);
        }
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.labels.get(&degree).map_or(0, |l| l.len())
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.labels.get(&degree).map_or(&[], |l| l.as_slice())
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.labels.keys().copied().collect()
    }

    /// Installs the differential leaving degree `degree`. Shape must match
    /// the declared bases.
    pub fn set_diff(&mut self, degree: i64, matrix: IntMatrix) {
        let target = match self.direction {
            Direction::Lowering => degree - 1,
            Direction::Raising => degree + 1,
        };
        assert_eq!(matrix.cols(), self.dim(degree), "differential source dim");
        assert_eq!(matrix.rows(), self.dim(target), "differential target dim");
        if !matrix.is_zero() {
            self.diffs.insert(degree, matrix);
        }
    }

    /// The differential leaving `degree` (zero matrix if absent).
    pub fn diff(&self, degree: i64) -> IntMatrix {
        if let Some(m) = self.diffs.get(&degree) {
            return m.clone();
        }
        let target = match self.direction {
            Direction::Lowering => degree - 1,
            Direction::Raising => degree + 1,
        };
        IntMatrix::zero(self.dim(target), self.dim(degree))
    }

    /// Checks `d ∘ d = 0` by exact matrix products.
    pub fn check_composite_zero(&self) -> Result<()> {
        for (&n, d_n) in &self.diffs {
            let next = match self.direction {
                Direction::Lowering => n - 1,
                Direction::Raising => n + 1,
            };
            if let Some(d_next) = self.diffs.get(&next) {
                if !d_next.multiply(d_n).is_zero() {
                    return Err(Error::InconsistentComplex(format!(
                        "d∘d != 0 leaving degree {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Homology (or cohomology) of the complex. Betti numbers come from
    /// exact ranks over ℚ; torsion, when requested, from the Smith normal
    /// form of the incoming differential.
    pub fn homology(&self, with_torsion: bool) -> Result<HomologySummary> {
        self.check_composite_zero()?;
        let mut ranks: HashMap<i64, usize> = HashMap::new();
        let mut rank_of = |complex: &Self, degree: i64| -> usize {
            *ranks
                .entry(degree)
                .or_insert_with(|| complex.diff(degree).rank())
        };
        let mut summary = HomologySummary::default();
        for (&n, basis) in &self.labels {
            let incoming_degree = match self.direction {
                Direction::Lowering => n + 1,
                Direction::Raising => n - 1,
            };
            let outgoing_rank = rank_of(self, n);
            let incoming_rank = if self.labels.contains_key(&incoming_degree) {
                rank_of(self, incoming_degree)
            } else {
                0
            };
            let betti = basis.len() - outgoing_rank - incoming_rank;
            summary.set_betti(n, betti);
            if with_torsion {
                let torsion: Vec<u64> = self
                    .diff(incoming_degree)
                    .torsion_coefficients()
                    .into_iter()
                    .map(|d| {
                        u64::try_from(d).expect("torsion coefficient exceeds u64")
                    })
                    .collect();
                summary.set_torsion(n, torsion);
            }
        }
        Ok(summary)
    }

    /// Alternating sum of the basis dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        self.labels
            .iter()
            .map(|(&n, basis)| {
                let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
                sign * basis.len() as i64
            })
            .sum()
    }

    /// Total basis size across degrees.
    pub fn total_cells(&self) -> usize {
        self.labels.values().map(|l| l.len()).sum()
    }
}

/// Per-degree Betti ranks over ℚ and torsion coefficients over ℤ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologySummary {
    betti: BTreeMap<i64, usize>,
    torsion: BTreeMap<i64, Vec<u64>>,
}

impl HomologySummary {
    pub fn set_betti(&mut self, degree: i64, rank: usize) {
        if rank != 0 {
            self.betti.insert(degree, rank);
        }
    }

    pub fn add_betti(&mut self, degree: i64, rank: usize) {
        if rank != 0 {
            *self.betti.entry(degree).or_insert(0) += rank;
        }
    }

    pub fn set_torsion(&mut self, degree: i64, torsion: Vec<u64>) {
        if !torsion.is_empty() {
            self.torsion.insert(degree, torsion);
        }
    }

    pub fn betti(&self, degree: i64) -> usize {
        self.betti.get(&degree).copied().unwrap_or(0)
    }

    pub fn betti_map(&self) -> &BTreeMap<i64, usize> {
        &self.betti
    }

    pub fn torsion_map(&self) -> &BTreeMap<i64, Vec<u64>> {
        &self.torsion
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn max_nonzero_degree(&self) -> Option<i64> {
        self.betti.keys().next_back().copied()
    }

    pub fn total_rank(&self) -> usize {
        self.betti.values().sum()
    }

    /// Alternating sum `Σ (-1)^n b_n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .map(|(&n, &b)| if n.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// The ranks in degrees >= 1 as a reduced Poincaré polynomial.
    /// Degrees 0 and -1 are reported separately by [`Self::betti`].
    pub fn reduced_polynomial(&self) -> PoincarePolynomial {
        let mut p = PoincarePolynomial::zero();
        for (&d, &b) in &self.betti {
            if d >= 1 {
                p.add_term(d as usize, b as u64);
            }
        }
        p
    }

    /// Compares ranks only (torsion ignored).
    pub fn same_betti(&self, other: &HomologySummary) -> bool {
        self.betti == other.betti
    }
}

impl Serialize for HomologySummary {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Rendered<'a> {
            betti: BTreeMap<String, usize>,
            #[serde(skip_serializing_if = "BTreeMap::is_empty")]
            torsion: BTreeMap<String, &'a Vec<u64>>,
        }
        let betti = self
            .betti
            .iter()
            .map(|(d, b)| (d.to_string(), *b))
            .collect();
        let torsion = self
            .torsion
            .iter()
            .map(|(d, t)| (d.to_string(), t))
            .collect();
        Rendered { betti, torsion }.serialize(serializer)
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.betti.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, &b) in &self.betti {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "b_{d}={b}")?;
            if let Some(t) = self.torsion.get(&d) {
                write!(f, " + torsion {t:?}")?;
            }
        }
        for (&d, t) in &self.torsion {
            if !self.betti.contains_key(&d) {
                write!(f, ", b_{d}=0 + torsion {t:?}")?;
            }
        }
        Ok(())
    }
}

/// Cap on the total number of cells any oracle will materialize; the
/// `MACQ_MAX_CELLS` environment variable overrides the default.
pub fn max_cells() -> usize {
    std::env::var("MACQ_MAX_CELLS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(2_000_000)
}

/// Builds the cellular chain complex of the moment-angle complex `Z_K`.
///
/// Basis in degree `2|σ| + |ω|`: pairs `(σ, ω)` with `σ ∈ K`,
/// `ω ⊆ [m] ∖ σ`. Boundary:
/// `∂(σ, ω) = Σ_{i ∈ σ} ε(i) · (σ∖{i}, ω∪{i})` with
/// `ε(i) = (-1)^{#{j ∈ ω : j < i}}` (circle factors are the odd ones).
pub fn zk_chain_complex(k: &SimplicialComplex) -> Result<ChainComplex> {
    let m = k.ambient();
    if m > 32 {
        return Err(Error::ResourceLimit(format!(
            "cell enumeration supports ambient <= 32, got {m}"
        )));
    }
    let faces = k.faces();
    let total: u128 = faces
        .iter()
        .map(|f| 1u128 << (m - f.len()))
        .sum();
    let cap = max_cells();
    if total > cap as u128 {
        return Err(Error::ResourceLimit(format!(
            "Z_K has {total} cells, above the cap of {cap} (raise MACQ_MAX_CELLS)"
        )));
    }

    let full_mask: u64 = if m == 64 { !0 } else { (1u64 << m) - 1 };
    let mut cells: BTreeMap<i64, Vec<(u64, u64)>> = BTreeMap::new();
    for face in &faces {
        let sigma = face.mask();
        let comp = full_mask & !sigma;
        // all subsets of the complement, the empty one included
        let mut omega = comp;
        loop {
            let degree = 2 * sigma.count_ones() as i64 + omega.count_ones() as i64;
            cells.entry(degree).or_default().push((sigma, omega));
            if omega == 0 {
                break;
            }
            omega = (omega - 1) & comp;
        }
    }

    let mut complex = ChainComplex::new(Direction::Lowering);
    let mut index: HashMap<(u64, u64), (i64, usize)> = HashMap::new();
    for (&degree, list) in cells.iter_mut() {
        list.sort_unstable();
        let labels = list
            .iter()
            .map(|&(s, o)| format!("({}|{})", Face::from_mask(s), Face::from_mask(o)))
            .collect();
        for (i, &cell) in list.iter().enumerate() {
            index.insert(cell, (degree, i));
        }
        complex.add_degree(degree, labels);
    }

    for (&degree, list) in &cells {
        if degree == 0 {
            continue;
        }
        let target_dim = complex.dim(degree - 1);
        let mut d = IntMatrix::zero(target_dim, list.len());
        for (col, &(sigma, omega)) in list.iter().enumerate() {
            let mut rest = sigma;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                let below = bit - 1;
                let sign = if (omega & below).count_ones() % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                let target = (sigma & !bit, omega | bit);
                let (tdeg, row) = index[&target];
                debug_assert_eq!(tdeg, degree - 1);
                d.add_to(row, col, &sign);
            }
        }
        complex.set_diff(degree, d);
    }
    Ok(complex)
}

/// Reduced simplicial homology with integer coefficients, computed from the
/// augmented chain complex (the empty face generates degree -1, so the
/// complex `{∅}` has its unit of homology there).
pub fn simplicial_homology(k: &SimplicialComplex) -> Result<HomologySummary> {
    simplicial_chain_complex(k).homology(true)
}

/// The augmented simplicial chain complex of `K`.
pub fn simplicial_chain_complex(k: &SimplicialComplex) -> ChainComplex {
    let mut by_degree: BTreeMap<i64, Vec<Face>> = BTreeMap::new();
    for face in k.faces() {
        by_degree.entry(face.dim()).or_default().push(face);
    }
    let mut complex = ChainComplex::new(Direction::Lowering);
    let mut index: HashMap<Face, usize> = HashMap::new();
    for (&degree, faces) in &by_degree {
        complex.add_degree(degree, faces.iter().map(|f| f.to_string()).collect());
        for (i, f) in faces.iter().enumerate() {
            index.insert(f.clone(), i);
        }
    }
    for (&degree, faces) in &by_degree {
        if degree < 0 {
            continue;
        }
        let target_dim = complex.dim(degree - 1);
        let mut d = IntMatrix::zero(target_dim, faces.len());
        for (col, face) in faces.iter().enumerate() {
            for (i, &v) in face.vertices().iter().enumerate() {
                let sign = if i % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                let row = index[&face.without_vertex(v)];
                d.add_to(row, col, &sign);
            }
        }
        complex.set_diff(degree, d);
    }
    complex
}

/// Default ambient bound for the Hochster decomposition (2^m subcomplexes).
pub const HOCHSTER_VERTEX_BOUND: usize = 12;

/// Betti numbers of `Z_K` through the Hochster decomposition:
/// `b_n(Z_K) = Σ_{W ⊆ [m]} rank H̃_{n-|W|-1}(K_W)`.
/// Independent of the cellular route; torsion of the full subcomplexes is
/// carried along at the shifted degrees.
pub fn hochster_betti(k: &SimplicialComplex) -> Result<HomologySummary> {
    hochster_betti_bounded(k, HOCHSTER_VERTEX_BOUND)
}

pub fn hochster_betti_bounded(
    k: &SimplicialComplex,
    vertex_bound: usize,
) -> Result<HomologySummary> {
    let m = k.ambient();
    if m > vertex_bound {
        return Err(Error::ResourceLimit(format!(
            "Hochster decomposition enumerates 2^m subcomplexes; m={m} exceeds bound {vertex_bound}"
        )));
    }
    let mut summary = HomologySummary::default();
    let mut torsion: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
    for w_mask in 0..(1u64 << m) {
        let w = Face::from_mask(w_mask);
        let shift = w.len() as i64 + 1;
        let sub = k.full_subcomplex(w.vertices())?;
        let h = simplicial_homology(&sub)?;
        for (&d, &b) in h.betti_map() {
            summary.add_betti(d + shift, b);
        }
        for (&d, t) in h.torsion_map() {
            torsion.entry(d + shift).or_default().extend(t.iter().copied());
        }
    }
    for (d, mut t) in torsion {
        t.sort_unstable();
        summary.set_torsion(d, t);
    }
    Ok(summary)
}

/// `Σ_{σ∈K} Σ_{ω⊆[m]∖σ} (-1)^{2|σ|+|ω|}`, the cell-count route to the
/// Euler characteristic of `Z_K`.
pub fn zk_euler_characteristic_by_cells(k: &SimplicialComplex) -> i64 {
    let m = k.ambient();
    k.faces()
        .iter()
        .map(|f| {
            let c = m - f.len();
            // Σ_t C(c,t) (-1)^t = 0 unless the complement is empty
            if c == 0 {
                1
            } else {
                0
            }
        })
        .sum()
}
